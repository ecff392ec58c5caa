//! Self-dual `[120, 60]` codes with an automorphism of type `59-(2;2)`.
//!
//! Such a code is generated by
//!
//! ```text
//! 1…1 0…0 | 1 0
//! 0…0 1…1 | 0 1
//! [e(x)] [b(x)] | 0 0
//! ```
//!
//! where the circulant rows are `(x^i e(x), x^i b(x))` for `i < 58` and
//! `b = δ^k` with `δ = α^{2^29 - 1}`, `α` primitive in `P ≅ GF(2^58)`.
//! Multiplying `b` by a power of `x` or substituting `x -> x^2` gives an
//! equivalent code, so `k` only matters up to the doubling orbits on
//! `Z_{9099507}`, where `2^29 + 1 = 59 · 9099507`.

use num_bigint::BigUint;
use num_traits::One;
use serde_json::json;

use super::{SweepReport, SweepRunner, TaskRecord, TaskStatus};
use crate::code::BinaryCode;
use crate::decomp::{check_selfdual_conditions, CycleStructure, Permutation};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::lowweight::{find_below, SearchBudget};
use crate::modfield::{PElement, PField};
use crate::util::task_seed;

pub const P: usize = 59;
/// `(2^29 + 1) / 59`.
pub const P59_MODULUS: u64 = 9_099_507;
pub const DEFAULT_ALPHA_SEED: u64 = 59;
pub const TARGET: usize = 24;

/// Least representative of every orbit of `i -> 2i` on `Z_m`, ascending (0 included).
pub fn doubling_orbits(m: u64) -> Vec<u64> {
    let mut seen = vec![false; m as usize];
    let mut reps = Vec::new();
    for i in 0..m {
        if seen[i as usize] {
            continue;
        }
        reps.push(i);
        let mut j = i;
        while !seen[j as usize] {
            seen[j as usize] = true;
            j = j * 2 % m;
        }
    }
    reps
}

/// Orbit of `i` under doubling mod `m`, in generation order.
pub fn orbit(m: u64, i: u64) -> Vec<u64> {
    let start = i % m;
    let mut out = vec![start];
    let mut j = start * 2 % m;
    while j != start {
        out.push(j);
        j = j * 2 % m;
    }
    out
}

/// Orbit representatives on `Z_{9099507}`, the class of 0 first.
pub fn p59_orbit_representatives() -> Vec<u64> {
    doubling_orbits(P59_MODULUS)
}

/// `(x -> x^t)` then `x^{t_j}` on coordinate `j`.
pub fn equivalence_moves(tuple: &[PElement], t: usize, shifts: &[usize]) -> Result<Vec<PElement>> {
    if tuple.len() != shifts.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} coordinates but {} shifts",
            tuple.len(),
            shifts.len()
        )));
    }
    let Some(p) = tuple.first().map(PElement::p) else {
        return Ok(Vec::new());
    };
    if t == 0 || t >= p {
        return Err(Error::InvalidArgument(format!("substitution exponent {t} not in 1..{p}")));
    }
    if let Some(&s) = shifts.iter().find(|&&s| s >= p) {
        return Err(Error::InvalidArgument(format!("shift {s} not in 0..{p}")));
    }
    tuple
        .iter()
        .zip(shifts)
        .map(|(a, &s)| Ok(a.substitute(t)?.shift(s)))
        .collect()
}

#[derive(Clone, Debug)]
pub struct P59Candidate {
    pub k: u64,
    /// `b = δ^k`.
    pub b: PElement,
    pub generator: BitMatrix,
    pub code: BinaryCode,
}

impl P59Candidate {
    /// Cycles on `0..59` and `59..118`, fixed points 118 and 119.
    pub fn structure() -> CycleStructure {
        CycleStructure::standard(P, 2, 2)
    }

    pub fn sigma() -> Permutation {
        Self::structure().permutation()
    }

    /// The construction gate: `[120, 60]`, self-dual, both decomposition
    /// conditions, and `b^{2^29+1} = e`.
    pub fn passes_gate(&self) -> Result<bool> {
        let r = check_selfdual_conditions(&self.code, &Self::sigma())?;
        let norm = self.b.pow(&((BigUint::one() << 29) + 1u32));
        Ok(self.code.dimension() == 60
            && self.code.is_self_dual()
            && r.both()
            && r.q_form_agrees == Some(true)
            && norm.is_identity())
    }
}

/// A fixed primitive `α` and the derived `δ`.
#[derive(Clone, Debug)]
pub struct P59Family {
    pub field: PField,
    pub alpha: PElement,
    pub delta: PElement,
}

impl P59Family {
    pub fn new(alpha: PElement) -> Result<Self> {
        let field = PField::new(P as u64)?;
        if alpha.p() != P || !field.is_primitive(&alpha) {
            return Err(Error::NotPrimitive);
        }
        let delta = alpha.pow(&((BigUint::one() << 29) - 1u32));
        Ok(P59Family {
            field,
            alpha,
            delta,
        })
    }

    pub fn with_seed(seed: u64) -> Result<Self> {
        let field = PField::new(P as u64)?;
        Self::new(field.find_primitive(seed))
    }

    pub fn default_family() -> Self {
        Self::with_seed(DEFAULT_ALPHA_SEED).expect("59 is tabulated")
    }

    pub fn delta_power(&self, k: u64) -> PElement {
        self.delta.pow_u64(k)
    }

    pub fn build(&self, k: u64) -> P59Candidate {
        let b = self.delta_power(k);
        let e = PElement::identity(P);
        let n = 2 * P + 2;
        let mut rows = vec![
            BitVector::from_indices(n, (0..P).chain([2 * P])),
            BitVector::from_indices(n, (P..2 * P).chain([2 * P + 1])),
        ];
        for i in 0..P - 1 {
            let left = e.shift(i);
            let right = b.shift(i);
            let word = left
                .coeffs()
                .concat(right.coeffs())
                .concat(&BitVector::zeros(2));
            rows.push(word);
        }
        let generator = BitMatrix::from_rows(n, rows).expect("row lengths agree");
        let code = BinaryCode::from_generator(&generator);
        P59Candidate {
            k,
            b,
            generator,
            code,
        }
    }

    /// `k' = 2k mod 9099507` and `t` with `δ^{2k} = x^t δ^{k'}`.
    pub fn orbit_mate(&self, k: u64) -> (u64, usize) {
        let k2 = 2 * k % P59_MODULUS;
        let target = self.delta_power(2 * k);
        let base = self.delta_power(k2);
        let t = (0..P)
            .find(|&t| base.shift(t) == target)
            .expect("δ^{2k} and δ^{2k mod m} differ by a power of x");
        (k2, t)
    }

    /// Coordinate map carrying the code for `k` onto the code for its orbit mate:
    /// `x -> x^2` on both blocks, then `x^{-t}` on the second block.
    pub fn orbit_mate_permutation(t: usize) -> Permutation {
        let mut images: Vec<usize> = (0..2 * P)
            .map(|i| {
                let (block, j) = (i / P, i % P);
                let shift = if block == 1 { P - t % P } else { 0 };
                block * P + (2 * j + shift) % P
            })
            .collect();
        images.extend([2 * P, 2 * P + 1]);
        Permutation::new(images).expect("bijection")
    }

    pub fn params(&self) -> serde_json::Value {
        let exps: Vec<usize> = self.alpha.coeffs().ones_iter().collect();
        json!({
            "p": P,
            "modulus": P59_MODULUS,
            "alpha_exponents": exps,
            "alpha_hex": format!("{:#x}", self.alpha.coeffs().words()[0]),
        })
    }
}

pub fn build_p59_candidate(k: u64, alpha: &PElement) -> Result<P59Candidate> {
    Ok(P59Family::new(alpha.clone())?.build(k))
}

/// Runs the search for one representative with up to `attempts` seeds.
pub fn p59_task(
    family: &P59Family,
    id: u64,
    k: u64,
    budget: &SearchBudget,
    master_seed: u64,
    attempts: u32,
) -> TaskRecord {
    let cand = family.build(k);
    let mut rec = TaskRecord {
        id,
        label: format!("k={k}"),
        status: TaskStatus::Unresolved,
        witness_weight: None,
        iterations: 0,
        attempts: 0,
        cases: 1,
        refuted_cases: 0,
        flagged_cases: 0,
        detail: None,
    };
    match cand.passes_gate() {
        Ok(true) => {}
        other => {
            rec.detail = Some(format!("construction gate failed: {other:?}"));
            return rec;
        }
    }
    let base = task_seed(master_seed, id);
    for attempt in 0..attempts.max(1) {
        rec.attempts = attempt + 1;
        let b = budget.with_seed(task_seed(base, attempt as u64));
        if let Some(w) = find_below(&cand.code, TARGET, &b) {
            rec.iterations += w.iterations_used;
            rec.status = TaskStatus::Refuted;
            rec.witness_weight = Some(w.weight);
            rec.refuted_cases = 1;
            return rec;
        }
        rec.iterations += b.max_iterations;
    }
    rec
}

/// Builds and searches the candidate for every listed representative.
pub fn p59_sweep(
    family: &P59Family,
    reps: &[u64],
    budget: &SearchBudget,
    attempts: u32,
    master_seed: u64,
    runner: &SweepRunner,
) -> Result<SweepReport> {
    let mut params = family.params();
    params["budget"] = serde_json::to_value(budget)?;
    params["attempts"] = json!(attempts);
    params["representatives"] = json!(reps.len());
    params["first_rep"] = json!(reps.first());
    params["last_rep"] = json!(reps.last());
    runner.run("59-(2;2)", params, master_seed, reps.len() as u64, |i| {
        p59_task(family, i, reps[i as usize], budget, master_seed, attempts)
    })
}
