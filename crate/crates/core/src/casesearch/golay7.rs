//! The extended Golay code as `π(F)` for an automorphism of type `7-(16;8)`.
//!
//! A weight-28 word of the expanded code needs `7x + y = 28` with `y ≤ 8`, so
//! `(x, y) ∈ {(4, 0), (3, 7)}`: a Golay word of weight 4 or 10. There are
//! none, hence `A'_28 = 0` for every placement, while the extremal `[120, 60,
//! 24]` enumerator has `A_28 ≡ 3 (mod 7)`.

use num_bigint::BigUint;
use serde_json::json;

use super::subsets::{expanded_weight, mask_label, sorted_words};
use super::{SubsetPlan, SweepReport, SweepRunner, TaskRecord, TaskStatus};
use crate::code::{extended_qr, extremal_type2_enumerator, DEFAULT_DIM_CAP};
use crate::decomp::expand_pi_inverse;
use crate::error::{Error, Result};
use crate::exclusion::mod_p_weight_test;
use crate::util::{binomial, next_subset, task_seed, unrank_subset};

const P: usize = 7;
const F: usize = 8;
const WEIGHT: usize = 28;

/// `A'_28` for one placement, by two independent routes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubsetA28 {
    pub fixed: u64,
    /// Counted from the Golay words via `7x + y`.
    pub by_masks: u64,
    /// Counted on the expanded `[120, 12]` code by full enumeration.
    pub by_enumeration: u64,
}

pub fn a28_for_subset(words: &[u64], fixed: u64) -> u64 {
    words
        .iter()
        .filter(|&&w| expanded_weight(w, fixed, P) == WEIGHT)
        .count() as u64
}

pub fn a28_both_routes(fixed: u64) -> Result<SubsetA28> {
    let g = extended_qr(23)?;
    let words = sorted_words(&g)?;
    let cycles: Vec<usize> = (0..24).filter(|&i| fixed >> i & 1 == 0).collect();
    let big = expand_pi_inverse(&g, &cycles, P)?;
    let wd = big.weight_distribution(DEFAULT_DIM_CAP)?;
    let by_enumeration = u64::try_from(wd.get(WEIGHT)).expect("at most 2^12");
    Ok(SubsetA28 {
        fixed,
        by_masks: a28_for_subset(&words, fixed),
        by_enumeration,
    })
}

/// Summary of the congruence test over the swept placements.
#[derive(Clone, Debug, PartialEq)]
pub struct Golay7Report {
    pub extremal_a28: BigUint,
    pub sweep: SweepReport,
}

impl Golay7Report {
    /// Every placement contradicts `A_28 ≡ A'_28 (mod 7)`.
    pub fn universally_inconsistent(&self) -> bool {
        self.sweep.all_refuted() && self.sweep.refuted_cases == self.sweep.cases
    }
}

/// Runs the congruence test; `extremal_a28` defaults to the extremal enumerator's value.
pub fn golay_mod7_test(
    plan: &SubsetPlan,
    extremal_a28: Option<BigUint>,
    master_seed: u64,
    runner: &SweepRunner,
) -> Result<Golay7Report> {
    let a28 = match extremal_a28 {
        Some(a) => a,
        None => extremal_type2_enumerator(120)?.get(WEIGHT),
    };
    let g = extended_qr(23)?;
    let words = sorted_words(&g)?;
    let params = json!({
        "p": P,
        "f": F,
        "weight": WEIGHT,
        "extremal_a28": a28.to_string(),
        "plan": plan,
    });
    let judge = |id: u64, label: String, counts: &[u64], cases: u64, note: Option<String>| {
        let consistent = counts
            .iter()
            .filter(|&&c| mod_p_weight_test(&a28, &BigUint::from(c), P as u64))
            .count() as u64;
        let distinct: std::collections::BTreeSet<u64> = counts.iter().copied().collect();
        TaskRecord {
            id,
            label,
            status: if consistent == 0 && note.is_none() {
                TaskStatus::Refuted
            } else {
                TaskStatus::Unresolved
            },
            witness_weight: None,
            iterations: cases,
            attempts: 1,
            cases,
            refuted_cases: cases - consistent,
            flagged_cases: 0,
            detail: Some(match note {
                Some(n) => n,
                None => format!("A'_28 in {distinct:?}"),
            }),
        }
    };
    let sample_task = |id: u64, fixed: u64| {
        let note = match a28_both_routes(fixed) {
            Ok(r) if r.by_masks == r.by_enumeration => None,
            Ok(r) => Some(format!("routes disagree: {r:?}")),
            Err(e) => Some(format!("enumeration failed: {e}")),
        };
        judge(id, mask_label(fixed), &[a28_for_subset(&words, fixed)], 1, note)
    };
    let sweep = match plan {
        SubsetPlan::Sample { count } => {
            let sw = super::subsets::Sweeper::new(&g, P, F, 24, &super::SubsetSweepOptions::sample(0))?;
            runner.run("golay-mod7", params, master_seed, *count, |i| {
                sample_task(i, sw.random_subset(task_seed(master_seed, i)))
            })?
        }
        SubsetPlan::List { masks } => {
            if masks.iter().any(|m| m.count_ones() as usize != F || m >> 24 != 0) {
                return Err(Error::InvalidArgument("masks must be 8-subsets of 0..24".into()));
            }
            runner.run("golay-mod7", params, master_seed, masks.len() as u64, |i| {
                sample_task(i, masks[i as usize])
            })?
        }
        SubsetPlan::All { block } => {
            let total = binomial(24, F as u64);
            let block = (*block).max(1);
            runner.run("golay-mod7", params, master_seed, total.div_ceil(block), |i| {
                let start = i * block;
                let end = (start + block).min(total);
                let mut mask = unrank_subset(24, F as u32, start);
                let mut counts = Vec::with_capacity((end - start) as usize);
                for r in start..end {
                    counts.push(a28_for_subset(&words, mask));
                    if r + 1 < end {
                        mask = next_subset(mask);
                    }
                }
                judge(i, format!("ranks {start}..{end}"), &counts, end - start, None)
            })?
        }
    };
    Ok(Golay7Report {
        extremal_a28: a28,
        sweep,
    })
}
