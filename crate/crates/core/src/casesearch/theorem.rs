//! Combines the lemma table with the case computations.

use serde::{Deserialize, Serialize};

use super::{
    fixed_point_sweep, golay_mod7_test, p59_orbit_representatives, p59_sweep, Golay7Report,
    P59Family, SubsetPlan, SubsetSweepOptions, SweepReport, SweepRunner,
};
use crate::code::{registry, BinaryCode, DEFAULT_DIM_CAP};
use crate::error::Result;
use crate::exclusion::{theorem_table, CaseRefutation, TypeCandidate, TypeVerdict};
use crate::lowweight::SearchBudget;
use crate::util::task_seed;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const FIVE_CODES: [&str; 5] = ["c81", "c82", "c83", "c84", "c85"];

/// Sizes of the sampled case runs.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CaseSampling {
    pub p59_reps: usize,
    pub subsets: u64,
    pub golay_subsets: u64,
    pub budget: SearchBudget,
    pub attempts: u32,
}

impl Default for CaseSampling {
    fn default() -> Self {
        CaseSampling {
            p59_reps: 20,
            subsets: 1000,
            golay_subsets: 1000,
            budget: SearchBudget::default(),
            attempts: 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CaseEvidence {
    pub p59: SweepReport,
    pub five: Vec<(String, SweepReport)>,
    pub golay7: Golay7Report,
    /// `z24` and `y24` with the mod-4 obstruction.
    pub seven: Vec<(String, SweepReport)>,
    /// `x24` on random placements, tracking weight 30.
    pub x24_sampled: SweepReport,
    /// `x24` with the fixed points on the coordinates missed by its weight-4 words.
    pub x24_admissible: SweepReport,
}

/// Coordinates not covered by any weight-4 word.
pub fn uncovered_by_tetrads(code: &BinaryCode) -> Result<u64> {
    let cover = code
        .codewords_u64(DEFAULT_DIM_CAP)?
        .into_iter()
        .filter(|w| w.count_ones() == 4)
        .fold(0u64, |a, w| a | w);
    Ok(!cover & ((1u64 << code.length()) - 1))
}

/// Uniform sample of `count` representatives (without replacement).
pub fn sample_reps(reps: &[u64], count: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked: Vec<u64> = reps.choose_multiple(&mut rng, count).copied().collect();
    picked.sort_unstable();
    picked
}

pub fn run_case_modules(s: &CaseSampling, seed: u64) -> Result<CaseEvidence> {
    let runner = SweepRunner::default();
    let family = P59Family::default_family();
    let reps = sample_reps(&p59_orbit_representatives(), s.p59_reps, task_seed(seed, 59));
    let p59 = p59_sweep(&family, &reps, &s.budget, s.attempts, seed, &runner)?;

    let mut five = Vec::new();
    for name in FIVE_CODES {
        let code = registry(name)?;
        let rep = fixed_point_sweep(
            &format!("5-(22;10) {name}"),
            &code,
            5,
            10,
            24,
            &SubsetSweepOptions::sample(s.subsets),
            task_seed(seed, 5),
            &runner,
        )?;
        five.push((name.to_string(), rep));
    }

    let golay7 = golay_mod7_test(
        &SubsetPlan::Sample {
            count: s.golay_subsets,
        },
        None,
        task_seed(seed, 7),
        &runner,
    )?;

    let with_mod4 = |plan: SubsetPlan, track: Option<usize>| SubsetSweepOptions {
        plan,
        mod4: true,
        track_weight: track,
    };
    let mut seven = Vec::new();
    for name in ["z24", "y24"] {
        let rep = fixed_point_sweep(
            &format!("7-(16;8) {name}"),
            &registry(name)?,
            7,
            8,
            24,
            &with_mod4(SubsetPlan::Sample { count: s.subsets }, None),
            task_seed(seed, 8),
            &runner,
        )?;
        seven.push((name.to_string(), rep));
    }
    let x24 = registry("x24")?;
    let x24_sampled = fixed_point_sweep(
        "7-(16;8) x24",
        &x24,
        7,
        8,
        24,
        &with_mod4(SubsetPlan::Sample { count: s.subsets }, Some(30)),
        task_seed(seed, 8),
        &runner,
    )?;
    let x24_admissible = fixed_point_sweep(
        "7-(16;8) x24 admissible",
        &x24,
        7,
        8,
        24,
        &with_mod4(
            SubsetPlan::List {
                masks: vec![uncovered_by_tetrads(&x24)?],
            },
            Some(30),
        ),
        seed,
        &runner,
    )?;
    Ok(CaseEvidence {
        p59,
        five,
        golay7,
        seven,
        x24_sampled,
        x24_admissible,
    })
}

fn sampled(r: &SweepReport) -> String {
    format!("{}/{} sampled tasks refuted", r.refuted, r.total)
}

/// Refutations backed by the evidence, plus the types settled by the
/// hand arguments that are cited rather than recomputed.
pub fn case_refutations(ev: &CaseEvidence) -> Vec<CaseRefutation> {
    let mut out = vec![
        CaseRefutation {
            candidate: TypeCandidate::new(3, 30, 30),
            source: "cited".into(),
            detail: "balance-principle argument on π(F) = (I | E) with rows of weight 21".into(),
        },
        CaseRefutation {
            candidate: TypeCandidate::new(5, 20, 20),
            source: "cited".into(),
            detail: "two rows of (I | E') with wt(e_i) = 19 sum to weight at most 12".into(),
        },
    ];
    if ev.p59.all_refuted() {
        out.push(CaseRefutation {
            candidate: TypeCandidate::new(59, 2, 2),
            source: "p59-sweep".into(),
            detail: format!("{}; lightest witness weights {:?}", sampled(&ev.p59), ev.p59.weight_histogram()),
        });
    }
    if ev.five.iter().all(|(_, r)| r.all_refuted()) && ev.five.len() == 5 {
        let parts: Vec<String> = ev.five.iter().map(|(n, r)| format!("{n}: {}", sampled(r))).collect();
        out.push(CaseRefutation {
            candidate: TypeCandidate::new(5, 22, 10),
            source: "subset-sweep".into(),
            detail: parts.join("; "),
        });
    }
    let x24_ok = ev.x24_admissible.all_refuted()
        && ev.x24_admissible.flagged() > 0;
    if ev.golay7.universally_inconsistent()
        && ev.seven.iter().all(|(_, r)| r.all_refuted())
        && x24_ok
    {
        let mut parts = vec![format!(
            "golay: A'_28 ≢ A_28 (mod 7) on {} placements",
            ev.golay7.sweep.refuted_cases
        )];
        parts.extend(ev.seven.iter().map(|(n, r)| format!("{n}: {}", sampled(r))));
        parts.push("x24: weight 30 on the admissible placement".into());
        parts.push("other d = 4 codes: cited component argument".into());
        out.push(CaseRefutation {
            candidate: TypeCandidate::new(7, 16, 8),
            source: "subset-sweep".into(),
            detail: parts.join("; "),
        });
    }
    out
}

pub fn final_table(ev: &CaseEvidence) -> Vec<(u64, Vec<TypeVerdict>)> {
    theorem_table(120, 24, &case_refutations(ev))
}
