//! Binary linear codes.
//!
//! A [`BinaryCode`] is stored by the reduced row echelon form of its
//! generator matrix, so two codes compare equal exactly when their row
//! spaces coincide.

mod construct;
mod gleason;
mod io;
mod registry;

use std::fmt;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

pub use construct::{extended_qr, reed_muller, reed_muller_2_5};
pub use gleason::{extremal_bound, extremal_type2_enumerator};
pub use io::{load_code, write_code};
pub use registry::{registry, registry_entries, RegistryEntry};

/// Default dimension cap for exhaustive enumeration.
pub const DEFAULT_DIM_CAP: usize = 28;

/// Below this dimension enumeration stays on one thread.
const PARALLEL_DIM: usize = 16;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryCode {
    length: usize,
    generator: BitMatrix,
    pivots: Vec<usize>,
}

impl BinaryCode {
    /// The code spanned by the rows of `m` (rows may be dependent).
    pub fn from_generator(m: &BitMatrix) -> Self {
        let r = m.rref();
        BinaryCode {
            length: m.ncols(),
            generator: r.basis(),
            pivots: r.pivots,
        }
    }

    pub fn from_rows(length: usize, rows: Vec<BitVector>) -> Result<Self> {
        Ok(Self::from_generator(&BitMatrix::from_rows(length, rows)?))
    }

    /// The zero code of the given length.
    pub fn zero(length: usize) -> Self {
        BinaryCode {
            length,
            generator: BitMatrix::empty(length),
            pivots: Vec::new(),
        }
    }

    #[inline]
    pub fn length(&self) -> usize {
        self.length
    }

    #[inline]
    pub fn dimension(&self) -> usize {
        self.generator.nrows()
    }

    /// Canonical (RREF) generator matrix.
    #[inline]
    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    #[inline]
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residue of `v` modulo the code; zero iff `v` is a codeword.
    pub fn reduce(&self, v: &BitVector) -> BitVector {
        let mut r = v.clone();
        for (row, &p) in self.generator.rows().iter().zip(&self.pivots) {
            if r.get(p) {
                r.xor_assign(row);
            }
        }
        r
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        v.len() == self.length && self.reduce(v).is_zero()
    }

    /// `self ⊆ other`.
    pub fn is_subcode_of(&self, other: &BinaryCode) -> bool {
        self.generator.rows().iter().all(|r| other.contains(r))
    }

    /// The sum `self + other` of two codes of equal length.
    pub fn sum(&self, other: &BinaryCode) -> Result<BinaryCode> {
        if self.length != other.length {
            return Err(Error::DimensionMismatch(format!(
                "sum of codes of length {} and {}",
                self.length, other.length
            )));
        }
        let rows = self
            .generator
            .rows()
            .iter()
            .chain(other.generator.rows())
            .cloned()
            .collect();
        BinaryCode::from_rows(self.length, rows)
    }

    /// Dual code under the standard inner product.
    pub fn dual(&self) -> BinaryCode {
        BinaryCode::from_generator(&self.generator.kernel_basis())
    }

    pub fn is_self_orthogonal(&self) -> bool {
        let rows = self.generator.rows();
        rows.iter()
            .enumerate()
            .all(|(i, a)| rows[i..].iter().all(|b| !a.dot(b)))
    }

    pub fn is_self_dual(&self) -> bool {
        2 * self.dimension() == self.length && self.is_self_orthogonal()
    }

    /// Every codeword has weight divisible by 4.
    ///
    /// Doubly even codes are self-orthogonal, so a code that is not
    /// self-orthogonal is rejected outright; otherwise the generator weights
    /// decide it.
    pub fn is_doubly_even(&self) -> bool {
        self.is_self_orthogonal() && self.generator.rows().iter().all(|r| r.weight() % 4 == 0)
    }

    /// Every codeword has even weight.
    pub fn is_even(&self) -> bool {
        self.generator.rows().iter().all(|r| r.weight() % 2 == 0)
    }

    /// Applies a coordinate map: coordinate `i` of each codeword moves to `images[i]`.
    pub fn permute(&self, images: &[usize]) -> Result<BinaryCode> {
        if images.len() != self.length {
            return Err(Error::DimensionMismatch(format!(
                "permutation on {} points applied to a code of length {}",
                images.len(),
                self.length
            )));
        }
        let rows = self
            .generator
            .rows()
            .iter()
            .map(|r| BitVector::from_indices(self.length, r.ones_iter().map(|i| images[i])))
            .collect();
        BinaryCode::from_rows(self.length, rows)
    }

    /// Keeps the listed coordinates (puncturing the rest).
    pub fn puncture_to(&self, coords: &[usize]) -> BinaryCode {
        BinaryCode::from_generator(&self.generator.select_columns(coords))
    }

    /// Codewords whose support lies inside `coords`, restricted to `coords`.
    pub fn shorten_to(&self, coords: &[usize]) -> BinaryCode {
        let mut keep = vec![false; self.length];
        for &c in coords {
            keep[c] = true;
        }
        let outside: Vec<usize> = (0..self.length).filter(|&i| !keep[i]).collect();
        let sub = self.subcode_killing(&outside);
        sub.puncture_to(coords)
    }

    /// Subcode of codewords vanishing on every coordinate in `coords`.
    pub fn subcode_killing(&self, coords: &[usize]) -> BinaryCode {
        // x · G restricted to coords = 0
        let restricted = self.generator.select_columns(coords);
        let left_kernel = restricted.transpose().kernel_basis();
        let rows = left_kernel
            .rows()
            .iter()
            .map(|x| self.generator.left_mul(x).expect("shape"))
            .collect();
        BinaryCode::from_rows(self.length, rows).expect("shape")
    }

    fn check_cap(&self, dim_cap: usize) -> Result<()> {
        if self.dimension() > dim_cap {
            return Err(Error::DimensionTooLarge {
                dim: self.dimension(),
                cap: dim_cap,
            });
        }
        Ok(())
    }

    /// Calls `visit` on every codeword (Gray-code order within each block).
    ///
    /// The visiting order is deterministic but blocks may run on different
    /// threads, so `visit` must be order-insensitive; per-block results are
    /// combined with `merge`.
    pub fn fold_codewords<T, F, M>(&self, dim_cap: usize, init: T, visit: F, merge: M) -> Result<T>
    where
        T: Send + Clone + Sync,
        F: Fn(&mut T, &BitVector) + Send + Sync,
        M: Fn(T, T) -> T + Send + Sync,
    {
        self.check_cap(dim_cap)?;
        let k = self.dimension();
        let rows = self.generator.rows();
        let high = if k >= PARALLEL_DIM { (k - 12).min(8) } else { 0 };
        let low = k - high;
        let blocks: Vec<u64> = (0..1u64 << high).collect();
        let run_block = |b: u64| {
            let mut acc = init.clone();
            let mut v = BitVector::zeros(self.length);
            for j in 0..high {
                if (b >> j) & 1 == 1 {
                    v.xor_assign(&rows[low + j]);
                }
            }
            visit(&mut acc, &v);
            for i in 1u64..(1u64 << low) {
                v.xor_assign(&rows[i.trailing_zeros() as usize]);
                visit(&mut acc, &v);
            }
            acc
        };
        let result = if high == 0 {
            run_block(0)
        } else {
            blocks
                .par_iter()
                .map(|&b| run_block(b))
                .collect::<Vec<_>>()
                .into_iter()
                .fold(init.clone(), &merge)
        };
        Ok(result)
    }

    /// Exact weight distribution by enumerating all `2^k` codewords.
    pub fn weight_distribution(&self, dim_cap: usize) -> Result<WeightDistribution> {
        let n = self.length;
        let counts = self.fold_codewords(
            dim_cap,
            vec![0u64; n + 1],
            |acc, v| acc[v.weight()] += 1,
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )?;
        Ok(WeightDistribution {
            counts: counts.into_iter().map(BigUint::from).collect(),
        })
    }

    /// Minimum nonzero weight by exhaustive enumeration; `None` for the zero code.
    pub fn min_weight(&self, dim_cap: usize) -> Result<Option<usize>> {
        let wd = self.weight_distribution(dim_cap)?;
        Ok(wd.min_nonzero_weight())
    }

    /// All codewords as `u64` masks, for codes of length at most 64.
    pub fn codewords_u64(&self, dim_cap: usize) -> Result<Vec<u64>> {
        if self.length > 64 {
            return Err(Error::InvalidArgument(format!(
                "length {} does not fit a machine word",
                self.length
            )));
        }
        self.check_cap(dim_cap)?;
        let rows: Vec<u64> = self.generator.rows().iter().map(|r| r.words()[0]).collect();
        let mut out = Vec::with_capacity(1 << rows.len());
        let mut v = 0u64;
        out.push(v);
        for i in 1u64..(1u64 << rows.len()) {
            v ^= rows[i.trailing_zeros() as usize];
            out.push(v);
        }
        Ok(out)
    }

    /// The neighbor `(C ∩ v⊥) + ⟨v⟩`; self-dual whenever `C` is and `v` has even weight.
    ///
    /// Returns `None` when `v` is already orthogonal to all of `C`.
    pub fn neighbor(&self, v: &BitVector) -> Option<BinaryCode> {
        let rows = self.generator.rows();
        let pos = rows.iter().position(|r| r.dot(v))?;
        let pivot = rows[pos].clone();
        let mut kept: Vec<BitVector> = rows
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != pos)
            .map(|(_, r)| if r.dot(v) { r.xor(&pivot) } else { r.clone() })
            .collect();
        kept.push(v.clone());
        BinaryCode::from_rows(self.length, kept).ok()
    }

    /// A pseudo-random self-dual code of even length `n`, reached by a walk of
    /// `steps` random neighbors from a permuted `{(x, x)}` code.
    pub fn random_self_dual<R: Rng>(n: usize, steps: usize, rng: &mut R) -> Result<BinaryCode> {
        if n == 0 || n % 2 == 1 {
            return Err(Error::InvalidArgument(format!(
                "self-dual codes need even positive length, got {n}"
            )));
        }
        let h = n / 2;
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let rows = (0..h)
            .map(|i| BitVector::from_indices(n, [perm[i], perm[i + h]]))
            .collect();
        let mut code = BinaryCode::from_rows(n, rows)?;
        for _ in 0..steps {
            let mut v = BitVector::zeros(n);
            for i in 0..n {
                if rng.gen::<bool>() {
                    v.set(i, true);
                }
            }
            if v.weight() % 2 == 1 {
                v.flip(rng.gen_range(0..n));
            }
            if code.contains(&v) {
                continue;
            }
            if let Some(next) = code.neighbor(&v) {
                code = next;
            }
        }
        Ok(code)
    }
}

impl fmt::Debug for BinaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryCode [{}, {}]", self.length, self.dimension())
    }
}

/// Counts `A_0, ..., A_n` of codewords by weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    counts: Vec<BigUint>,
}

impl WeightDistribution {
    pub fn from_counts(counts: Vec<BigUint>) -> Self {
        WeightDistribution { counts }
    }

    /// Code length `n` (the distribution has `n + 1` entries).
    pub fn length(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// `A_i`, zero beyond the length.
    pub fn get(&self, i: usize) -> BigUint {
        self.counts.get(i).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    pub fn min_nonzero_weight(&self) -> Option<usize> {
        self.counts
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, c)| **c != BigUint::default())
            .map(|(i, _)| i)
    }

    /// Nonzero `(weight, count)` pairs.
    pub fn support(&self) -> Vec<(usize, BigUint)> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != BigUint::default())
            .map(|(i, c)| (i, c.clone()))
            .collect()
    }
}

impl fmt::Display for WeightDistribution {
    /// Renders `1 + 759y^8 + ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .support()
            .into_iter()
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}y"),
                _ => format!("{c}y^{i}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}
