//! Randomized low-weight codeword search by information-set decoding.
//!
//! Each iteration reduces the generator to systematic form on a fresh random
//! information set and inspects sums of at most `window_size` rows
//! (Lee–Brickell), or collides half-windows on `ℓ` redundancy columns
//! (Stern). A returned witness is always a verified codeword; running out of
//! budget proves nothing.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::code::BinaryCode;
use crate::gf2::BitVector;
use crate::util::task_seed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsdVariant {
    LeeBrickell,
    Stern,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_iterations: u64,
    /// Information-set weight examined per iteration (per half for Stern).
    pub window_size: usize,
    pub seed: u64,
    pub variant: IsdVariant,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_iterations: 20_000,
            window_size: 2,
            seed: 0,
            variant: IsdVariant::LeeBrickell,
        }
    }
}

impl SearchBudget {
    pub fn with_seed(self, seed: u64) -> Self {
        SearchBudget { seed, ..self }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub codeword: BitVector,
    pub weight: usize,
    pub iterations_used: u64,
}

/// Row-major packed copy of a generator, re-pivoted in place each iteration.
struct Systematic {
    n: usize,
    k: usize,
    wpr: usize,
    data: Vec<u64>,
    /// Pivot column of each row after the last [`Systematic::pivot`].
    info: Vec<usize>,
}

impl Systematic {
    fn new(code: &BinaryCode) -> Self {
        let n = code.length();
        let k = code.dimension();
        let wpr = n.div_ceil(64).max(1);
        let mut data = Vec::with_capacity(k * wpr);
        for row in code.generator().rows() {
            data.extend_from_slice(row.words());
        }
        Systematic {
            n,
            k,
            wpr,
            data,
            info: vec![0; k],
        }
    }

    #[inline]
    fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.wpr..(r + 1) * self.wpr]
    }

    #[inline]
    fn bit(&self, r: usize, c: usize) -> bool {
        self.data[r * self.wpr + c / 64] >> (c % 64) & 1 == 1
    }

    fn xor_rows(&mut self, src: usize, dst: usize) {
        let w = self.wpr;
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * w);
            (&lo[src * w..src * w + w], &mut hi[..w])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * w);
            (&hi[..w] as &[u64], &mut lo[dst * w..dst * w + w])
        };
        for (x, y) in b.iter_mut().zip(a) {
            *x ^= *y;
        }
    }

    /// Gauss–Jordan elimination taking pivots in the given column order.
    fn pivot(&mut self, order: &[usize]) {
        let mut used = vec![false; self.k];
        let mut found = 0;
        for &col in order {
            if found == self.k {
                break;
            }
            let Some(r) = (0..self.k).find(|&r| !used[r] && self.bit(r, col)) else {
                continue;
            };
            used[r] = true;
            self.info[r] = col;
            found += 1;
            for other in 0..self.k {
                if other != r && self.bit(other, col) {
                    self.xor_rows(r, other);
                }
            }
        }
        debug_assert_eq!(found, self.k);
    }

    fn to_vector(&self, words: &[u64]) -> BitVector {
        BitVector::from_words(self.n, words.to_vec())
    }
}

fn weight(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// Calls `visit` on the xor of every subset of `rows` of size `1..=p`, stopping
/// once it returns true.
fn for_each_sum(
    sys: &Systematic,
    rows: &[usize],
    p: usize,
    visit: &mut dyn FnMut(&[u64]) -> bool,
) -> bool {
    fn rec(
        sys: &Systematic,
        rows: &[usize],
        start: usize,
        left: usize,
        acc: &mut Vec<u64>,
        visit: &mut dyn FnMut(&[u64]) -> bool,
    ) -> bool {
        for i in start..rows.len() {
            for (a, b) in acc.iter_mut().zip(sys.row(rows[i])) {
                *a ^= *b;
            }
            if visit(acc) || (left > 1 && rec(sys, rows, i + 1, left - 1, acc, visit)) {
                return true;
            }
            for (a, b) in acc.iter_mut().zip(sys.row(rows[i])) {
                *a ^= *b;
            }
        }
        false
    }
    let mut acc = vec![0u64; sys.wpr];
    p > 0 && rec(sys, rows, 0, p, &mut acc, visit)
}

fn lee_brickell_round(sys: &Systematic, target: usize, p: usize) -> Option<Vec<u64>> {
    let rows: Vec<usize> = (0..sys.k).collect();
    let mut hit = None;
    for_each_sum(sys, &rows, p, &mut |v| {
        let w = weight(v);
        if w > 0 && w < target {
            hit = Some(v.to_vec());
            true
        } else {
            false
        }
    });
    hit
}

fn stern_round(sys: &Systematic, target: usize, p: usize, order: &[usize]) -> Option<Vec<u64>> {
    // Light words are found directly by small patterns first.
    if let Some(v) = lee_brickell_round(sys, target, p.min(2)) {
        return Some(v);
    }
    let mut is_info = vec![false; sys.n];
    for &c in &sys.info {
        is_info[c] = true;
    }
    let z: Vec<usize> = order
        .iter()
        .copied()
        .filter(|&c| !is_info[c])
        .take(16)
        .collect();
    let proj = |v: &[u64]| -> u64 {
        z.iter()
            .enumerate()
            .fold(0, |m, (j, &c)| m | ((v[c / 64] >> (c % 64) & 1) << j))
    };
    let half = sys.k / 2;
    let left: Vec<usize> = (0..half).collect();
    let right: Vec<usize> = (half..sys.k).collect();
    let mut table: HashMap<u64, Vec<Vec<u64>>> = HashMap::new();
    for_each_sum(sys, &left, p, &mut |v| {
        table.entry(proj(v)).or_default().push(v.to_vec());
        false
    });
    let mut hit = None;
    for_each_sum(sys, &right, p, &mut |v| {
        if let Some(bucket) = table.get(&proj(v)) {
            for u in bucket {
                let s: Vec<u64> = u.iter().zip(v).map(|(a, b)| a ^ b).collect();
                let w = weight(&s);
                if w > 0 && w < target {
                    hit = Some(s);
                    return true;
                }
            }
        }
        false
    });
    hit
}

/// Searches for a nonzero codeword of weight `< target`.
pub fn find_below(code: &BinaryCode, target: usize, budget: &SearchBudget) -> Option<Witness> {
    if code.dimension() == 0 || target <= 1 {
        return None;
    }
    let mut sys = Systematic::new(code);
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut order: Vec<usize> = (0..sys.n).collect();
    let p = budget.window_size.clamp(1, sys.k);
    for iteration in 1..=budget.max_iterations.max(1) {
        order.shuffle(&mut rng);
        sys.pivot(&order);
        let found = match budget.variant {
            IsdVariant::LeeBrickell => lee_brickell_round(&sys, target, p),
            IsdVariant::Stern => stern_round(&sys, target, p, &order),
        };
        if let Some(words) = found {
            let codeword = sys.to_vector(&words);
            let weight = codeword.weight();
            if weight < target && code.contains(&codeword) {
                return Some(Witness {
                    codeword,
                    weight,
                    iterations_used: iteration,
                });
            }
        }
    }
    None
}

/// Lightest codeword found by repeatedly lowering the target.
///
/// Stops at the first target for which the budget finds nothing; the result is
/// an upper bound on the minimum distance, exact with high probability.
pub fn find_min_weight_word(
    code: &BinaryCode,
    upper_hint: usize,
    budget: &SearchBudget,
) -> Option<Witness> {
    let mut target = upper_hint.min(code.length()) + 1;
    let mut best: Option<Witness> = None;
    let mut spent = 0;
    for round in 0.. {
        let b = budget.with_seed(task_seed(budget.seed, round));
        match find_below(code, target, &b) {
            Some(w) => {
                spent += w.iterations_used;
                target = w.weight;
                best = Some(Witness {
                    iterations_used: spent,
                    ..w
                });
            }
            None => break,
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{extended_qr, DEFAULT_DIM_CAP};
    use crate::gf2::BitMatrix;

    #[test]
    fn repetition_code() {
        let c = BinaryCode::from_generator(&BitMatrix::from_strs(&["11"]).unwrap());
        let w = find_min_weight_word(&c, 2, &SearchBudget::default()).unwrap();
        assert_eq!(w.weight, 2);
    }

    #[test]
    fn golay_light_words() {
        let g = extended_qr(23).unwrap();
        let w = find_below(&g, 9, &SearchBudget::default()).unwrap();
        assert_eq!(w.weight, 8);
        assert!(g.contains(&w.codeword));
        assert!(find_below(&g, 8, &SearchBudget { max_iterations: 300, ..Default::default() }).is_none());
        assert_eq!(find_min_weight_word(&g, 24, &SearchBudget::default()).unwrap().weight, 8);
    }

    #[test]
    fn stern_agrees() {
        let g = extended_qr(31).unwrap();
        let budget = SearchBudget {
            variant: IsdVariant::Stern,
            window_size: 1,
            ..Default::default()
        };
        let w = find_min_weight_word(&g, 32, &budget).unwrap();
        assert_eq!(Some(w.weight), g.min_weight(DEFAULT_DIM_CAP).unwrap());
    }

    #[test]
    fn deterministic_given_seed() {
        let g = extended_qr(47).unwrap();
        let b = SearchBudget { seed: 99, ..Default::default() };
        assert_eq!(find_below(&g, 13, &b), find_below(&g, 13, &b));
    }

    #[test]
    fn zero_code_has_no_witness() {
        assert!(find_below(&BinaryCode::zero(10), 5, &SearchBudget::default()).is_none());
    }
}
