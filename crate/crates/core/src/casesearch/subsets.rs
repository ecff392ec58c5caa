//! Sweeps over the placement of fixed points.
//!
//! Given a candidate `π(F)` of length `c + f` and a choice `S` of `f` fixed
//! coordinates, a word with `x` ones on the cycle coordinates and `y` on `S`
//! expands to weight `p·x + y`. The placement is refuted when some word
//! expands to weight below the target, or (optionally) to a weight that is
//! not a multiple of 4.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{SweepReport, SweepRunner, TaskRecord, TaskStatus};
use crate::code::{BinaryCode, DEFAULT_DIM_CAP};
use crate::decomp::{expand_pi_inverse, expand_vector};
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::util::{binomial, is_prime, next_subset, task_seed, unrank_subset};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubsetPlan {
    /// `count` uniformly random `f`-subsets, one per task.
    Sample { count: u64 },
    /// Every `f`-subset in colexicographic order, `block` per task.
    All { block: u64 },
    /// Explicit subsets given as coordinate masks, one per task.
    List { masks: Vec<u64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetSweepOptions {
    pub plan: SubsetPlan,
    /// Also refute on an expanded weight not divisible by 4.
    pub mod4: bool,
    /// Count placements in which this expanded weight occurs.
    pub track_weight: Option<usize>,
}

impl SubsetSweepOptions {
    pub fn sample(count: u64) -> Self {
        SubsetSweepOptions {
            plan: SubsetPlan::Sample { count },
            mod4: false,
            track_weight: None,
        }
    }
}

/// Nonzero codewords as masks, sorted by weight then value.
pub(crate) fn sorted_words(code: &BinaryCode) -> Result<Vec<u64>> {
    if code.length() > 64 {
        return Err(Error::InvalidArgument(format!(
            "subset sweeps need length <= 64, got {}",
            code.length()
        )));
    }
    let mut words: Vec<u64> = code
        .codewords_u64(DEFAULT_DIM_CAP)?
        .into_iter()
        .filter(|&w| w != 0)
        .collect();
    words.sort_unstable_by_key(|&w| (w.count_ones(), w));
    Ok(words)
}

#[inline]
pub(crate) fn expanded_weight(word: u64, fixed: u64, p: usize) -> usize {
    let y = (word & fixed).count_ones() as usize;
    let x = word.count_ones() as usize - y;
    p * x + y
}

/// Outcome for a single placement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Placement {
    /// First refuting word (in weight order) and its expanded weight.
    pub witness: Option<(u64, usize)>,
    pub tracked: bool,
}

pub(crate) struct Sweeper {
    pub n: usize,
    pub p: usize,
    pub f: usize,
    pub d_target: usize,
    pub mod4: bool,
    pub track: Option<usize>,
    pub words: Vec<u64>,
}

impl Sweeper {
    pub fn new(code0: &BinaryCode, p: usize, f: usize, d_target: usize, opts: &SubsetSweepOptions) -> Result<Self> {
        if !is_prime(p as u64) || p == 2 {
            return Err(Error::InvalidArgument(format!("{p} is not an odd prime")));
        }
        if f > code0.length() {
            return Err(Error::DimensionMismatch(format!(
                "{f} fixed points in a code of length {}",
                code0.length()
            )));
        }
        let mut words = sorted_words(code0)?;
        if !opts.mod4 && opts.track_weight.is_none() {
            // p·x + y < d forces x + y < d, so lighter words suffice
            words.retain(|w| (w.count_ones() as usize) < d_target);
        }
        Ok(Sweeper {
            n: code0.length(),
            p,
            f,
            d_target,
            mod4: opts.mod4,
            track: opts.track_weight,
            words,
        })
    }

    pub fn place(&self, fixed: u64) -> Placement {
        let mut out = Placement {
            witness: None,
            tracked: false,
        };
        for &w in &self.words {
            let e = expanded_weight(w, fixed, self.p);
            if out.witness.is_none() && (e < self.d_target || (self.mod4 && !e.is_multiple_of(4))) {
                out.witness = Some((w, e));
            }
            if Some(e) == self.track {
                out.tracked = true;
            }
            if out.witness.is_some() && (out.tracked || self.track.is_none()) {
                break;
            }
        }
        out
    }

    fn cycle_coords(&self, fixed: u64) -> Vec<usize> {
        (0..self.n).filter(|&i| fixed >> i & 1 == 0).collect()
    }

    /// Rebuilds the expanded vector and checks it against `π^{-1}(code0)`.
    pub fn verify(&self, code0: &BinaryCode, fixed: u64, word: u64, weight: usize) -> Result<bool> {
        let cycles = self.cycle_coords(fixed);
        let v = BitVector::from_words(self.n, vec![word]);
        let expanded = expand_vector(&v, &cycles, self.p)?;
        let big = expand_pi_inverse(code0, &cycles, self.p)?;
        Ok(expanded.weight() == weight && big.contains(&expanded))
    }

    pub fn random_subset(&self, seed: u64) -> u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        sample(&mut rng, self.n, self.f)
            .into_iter()
            .fold(0u64, |m, i| m | 1 << i)
    }
}

pub(crate) fn mask_label(mask: u64) -> String {
    let pts: Vec<String> = (0..64)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("fixed={}", pts.join(","))
}

fn single_task(sw: &Sweeper, code0: &BinaryCode, id: u64, fixed: u64) -> TaskRecord {
    let pl = sw.place(fixed);
    let mut rec = TaskRecord {
        id,
        label: mask_label(fixed),
        status: TaskStatus::Unresolved,
        witness_weight: None,
        iterations: sw.words.len() as u64,
        attempts: 1,
        cases: 1,
        refuted_cases: 0,
        flagged_cases: pl.tracked as u64,
        detail: None,
    };
    if let Some((w, e)) = pl.witness {
        match sw.verify(code0, fixed, w, e) {
            Ok(true) => {
                rec.status = TaskStatus::Refuted;
                rec.witness_weight = Some(e);
                rec.refuted_cases = 1;
            }
            other => rec.detail = Some(format!("witness failed verification: {other:?}")),
        }
    }
    if pl.tracked {
        let note = format!("weight {} present", sw.track.unwrap_or(0));
        rec.detail = Some(match rec.detail.take() {
            Some(d) => format!("{d}; {note}"),
            None => note,
        });
    }
    rec
}

fn block_task(sw: &Sweeper, code0: &BinaryCode, id: u64, block: u64, total: u64) -> TaskRecord {
    let start = id * block;
    let end = (start + block).min(total);
    let mut mask = unrank_subset(sw.n as u32, sw.f as u32, start);
    let mut rec = TaskRecord {
        id,
        label: format!("ranks {start}..{end}"),
        status: TaskStatus::Refuted,
        witness_weight: None,
        iterations: 0,
        attempts: 1,
        cases: end - start,
        refuted_cases: 0,
        flagged_cases: 0,
        detail: None,
    };
    let mut tracked = 0u64;
    let mut first_unrefuted = None;
    let mut verified = false;
    for rank in start..end {
        let pl = sw.place(mask);
        if let Some((w, e)) = pl.witness {
            if !verified {
                verified = true;
                if !matches!(sw.verify(code0, mask, w, e), Ok(true)) {
                    rec.status = TaskStatus::Unresolved;
                    rec.detail = Some(format!("witness failed verification at rank {rank}"));
                    return rec;
                }
            }
            rec.refuted_cases += 1;
            rec.witness_weight = Some(rec.witness_weight.map_or(e, |x| x.min(e)));
        } else if first_unrefuted.is_none() {
            first_unrefuted = Some(mask);
        }
        tracked += pl.tracked as u64;
        if rank + 1 < end {
            mask = next_subset(mask);
        }
    }
    if let Some(m) = first_unrefuted {
        rec.status = TaskStatus::Unresolved;
        rec.detail = Some(format!("not refuted: {}", mask_label(m)));
    }
    rec.flagged_cases = tracked;
    if tracked > 0 {
        rec.detail = Some(format!(
            "{}weight {} present in {tracked} placements",
            rec.detail.map(|d| d + "; ").unwrap_or_default(),
            sw.track.unwrap_or(0)
        ));
    }
    rec
}

/// Refutes placements of `f` fixed points for `π(F) = code0` under order `p`.
#[allow(clippy::too_many_arguments)]
pub fn fixed_point_sweep(
    case: &str,
    code0: &BinaryCode,
    p: usize,
    f: usize,
    d_target: usize,
    opts: &SubsetSweepOptions,
    master_seed: u64,
    runner: &SweepRunner,
) -> Result<SweepReport> {
    let sw = Sweeper::new(code0, p, f, d_target, opts)?;
    let params = json!({
        "p": p,
        "f": f,
        "n": code0.length(),
        "d_target": d_target,
        "options": opts,
        "words_scanned": sw.words.len(),
    });
    match &opts.plan {
        SubsetPlan::Sample { count } => runner.run(case, params, master_seed, *count, |i| {
            single_task(&sw, code0, i, sw.random_subset(task_seed(master_seed, i)))
        }),
        SubsetPlan::List { masks } => {
            if let Some(bad) = masks
                .iter()
                .find(|m| m.count_ones() as usize != f || (sw.n < 64 && **m >> sw.n != 0))
            {
                return Err(Error::InvalidArgument(format!(
                    "mask {bad:#x} is not an {f}-subset of 0..{}",
                    sw.n
                )));
            }
            runner.run(case, params, master_seed, masks.len() as u64, |i| {
                single_task(&sw, code0, i, masks[i as usize])
            })
        }
        SubsetPlan::All { block } => {
            let total = binomial(sw.n as u64, f as u64);
            let block = (*block).max(1);
            runner.run(case, params, master_seed, total.div_ceil(block), |i| {
                block_task(&sw, code0, i, block, total)
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::extended_qr;

    #[test]
    fn expanded_weight_identity() {
        // x = 3 ones on cycles, y = 2 on fixed points
        assert_eq!(expanded_weight(0b11111, 0b11000, 7), 23);
        assert_eq!(expanded_weight(0b11111, 0, 5), 25);
    }

    #[test]
    fn golay_block_sweep_matches_single() {
        let g = extended_qr(23).unwrap();
        let opts = SubsetSweepOptions {
            plan: SubsetPlan::All { block: 1000 },
            mod4: true,
            track_weight: None,
        };
        let sw = Sweeper::new(&g, 7, 8, 24, &opts).unwrap();
        let mut mask = unrank_subset(24, 8, 0);
        for _ in 0..50 {
            let pl = sw.place(mask);
            let (w, e) = pl.witness.expect("golay placements are refuted");
            assert!(sw.verify(&g, mask, w, e).unwrap());
            mask = next_subset(mask);
        }
    }

    #[test]
    fn rejects_bad_prime() {
        let g = extended_qr(23).unwrap();
        assert!(Sweeper::new(&g, 9, 8, 24, &SubsetSweepOptions::sample(1)).is_err());
        assert!(Sweeper::new(&g, 7, 30, 24, &SubsetSweepOptions::sample(1)).is_err());
    }
}
