use super::BinaryCode;
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::util::is_prime;

/// Extended binary quadratic residue code of prime length `q`, as a code of length `q + 1`.
///
/// The cyclic part is spanned by the shifts of one of the four candidate
/// idempotents built from the residue set `Q` and non-residue set `N`
/// (`Σ_Q x^r`, `Σ_N x^r`, `1 + Σ_Q x^r`, `1 + Σ_N x^r`), taking the first
/// of dimension `(q + 1) / 2`. An overall parity coordinate is appended last.
/// For `q ≡ -1 (mod 8)` the result is self-dual and doubly even.
pub fn extended_qr(q: usize) -> Result<BinaryCode> {
    if q < 7 || !is_prime(q as u64) || !(q % 8 == 1 || q % 8 == 7) {
        return Err(Error::InvalidArgument(format!(
            "extended QR code needs a prime q ≡ ±1 mod 8, got {q}"
        )));
    }
    let mut is_residue = vec![false; q];
    for i in 1..q {
        is_residue[i * i % q] = true;
    }
    let residues: Vec<usize> = (1..q).filter(|&i| is_residue[i]).collect();
    let non_residues: Vec<usize> = (1..q).filter(|&i| !is_residue[i]).collect();
    let target = q.div_ceil(2);
    for set in [&residues, &non_residues] {
        for with_one in [false, true] {
            let mut base = BitVector::from_indices(q, set.iter().copied());
            if with_one {
                base.set(0, true);
            }
            let shifts = (0..q).map(|s| base.rotate(s)).collect();
            let cyclic = BinaryCode::from_rows(q, shifts)?;
            if cyclic.dimension() != target {
                continue;
            }
            let rows = cyclic
                .generator()
                .rows()
                .iter()
                .map(|r| {
                    let mut ext = BitVector::zeros(q + 1);
                    for i in r.ones_iter() {
                        ext.set(i, true);
                    }
                    ext.set(q, r.weight() % 2 == 1);
                    ext
                })
                .collect();
            return BinaryCode::from_rows(q + 1, rows);
        }
    }
    unreachable!("one of the QR idempotents spans a code of dimension (q+1)/2")
}

/// Reed–Muller code `RM(r, m)` of length `2^m`.
///
/// Coordinate `j` is the point of `GF(2)^m` whose `i`-th coordinate is bit
/// `i` of `j`; rows are the evaluations of monomials of degree at most `r`.
pub fn reed_muller(r: usize, m: usize) -> Result<BinaryCode> {
    if m > 16 || r > m {
        return Err(Error::InvalidArgument(format!("RM({r},{m}) out of range")));
    }
    let n = 1usize << m;
    let rows = (0u32..1 << m)
        .filter(|mask| mask.count_ones() as usize <= r)
        .map(|mask| {
            BitVector::from_indices(n, (0..n).filter(|&pt| (pt as u32) & mask == mask))
        })
        .collect();
    BinaryCode::from_rows(n, rows)
}

/// The second-order Reed–Muller code, a doubly-even self-dual `[32, 16, 8]` code.
pub fn reed_muller_2_5() -> BinaryCode {
    reed_muller(2, 5).expect("RM(2,5) parameters are valid")
}
