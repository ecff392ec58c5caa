//! Arithmetic filters on the cycle type `p-(c;f)` of an automorphism of odd
//! prime order of a self-dual `[n, n/2, d]` code.
//!
//! | lemma            | condition that must hold                                           |
//! |------------------|--------------------------------------------------------------------|
//! | `cycle-weight`   | `pc ≥ g((p-1)c/2)`                                                 |
//! | `fixed-weight`   | `f ≥ g((f-c)/2)` whenever `f > c`                                  |
//! | `c-ge-f`         | `c ≥ f` for extremal codes of length `24m+2r`, `m ≥ 2`, `0 ≤ r ≤ 11`, `p ≥ 5` |
//! | `even-c`         | `c` even whenever `ord_p(2)` is even                               |
//! | `balanced-short` | not (`c = f` and `p + c < d`)                                      |
//!
//! where `g(s) = Σ_{i<s} ⌈d/2^i⌉`. A type with `c = 0` is the identity and is
//! never of order `p`; it is excluded before any lemma runs.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::code::extremal_bound;
use crate::modfield::mult_order_of_2;
use crate::util::{is_prime, primes_up_to};

/// `g(d, s) = Σ_{i=0}^{s-1} ⌈d / 2^i⌉`.
pub fn g(d: u64, s: u64) -> u64 {
    let mut total = 0u64;
    for i in 0..s {
        if i >= 64 {
            // every further term is 1
            total += s - i;
            break;
        }
        total += d.div_ceil(1u64 << i);
    }
    total
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lemma {
    CycleWeight,
    FixedWeight,
    CGeF,
    EvenC,
    BalancedShort,
}

impl Lemma {
    pub const ALL: [Lemma; 5] = [
        Lemma::CycleWeight,
        Lemma::FixedWeight,
        Lemma::CGeF,
        Lemma::EvenC,
        Lemma::BalancedShort,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Lemma::CycleWeight => "cycle-weight",
            Lemma::FixedWeight => "fixed-weight",
            Lemma::CGeF => "c-ge-f",
            Lemma::EvenC => "even-c",
            Lemma::BalancedShort => "balanced-short",
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Lemma {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Lemma::ALL
            .into_iter()
            .find(|l| l.tag() == s)
            .ok_or_else(|| format!("unknown lemma {s:?}"))
    }
}

/// A selection of lemmas.
///
/// With `defer_even_c`, the `even-c` condition is skipped for a prime when it
/// would exclude every candidate that survives the other lemmas; such rows
/// stay in the table and are left to a later argument.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaSet {
    pub lemmas: BTreeSet<Lemma>,
    pub defer_even_c: bool,
}

impl LemmaSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The table of possible types before individual primes are discussed.
    pub fn tabulated() -> Self {
        LemmaSet {
            lemmas: [Lemma::CycleWeight, Lemma::FixedWeight, Lemma::CGeF, Lemma::EvenC]
                .into_iter()
                .collect(),
            defer_even_c: true,
        }
    }

    pub fn full() -> Self {
        LemmaSet {
            lemmas: Lemma::ALL.into_iter().collect(),
            defer_even_c: false,
        }
    }

    /// Looks up `tabulated` (alias `paper-table`), `full` or `none`.
    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "tabulated" | "paper-table" => Some(Self::tabulated()),
            "full" => Some(Self::full()),
            "none" | "empty" => Some(Self::empty()),
            _ => None,
        }
    }

    pub fn from_lemmas<I: IntoIterator<Item = Lemma>>(lemmas: I) -> Self {
        LemmaSet {
            lemmas: lemmas.into_iter().collect(),
            defer_even_c: false,
        }
    }

    pub fn contains(&self, l: Lemma) -> bool {
        self.lemmas.contains(&l)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TypeCandidate {
    pub p: u64,
    pub c: u64,
    pub f: u64,
}

impl TypeCandidate {
    pub fn new(p: u64, c: u64, f: u64) -> Self {
        TypeCandidate { p, c, f }
    }

    pub fn n(&self) -> u64 {
        self.p * self.c + self.f
    }
}

impl fmt::Display for TypeCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-({};{})", self.p, self.c, self.f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Survives,
    Excluded,
}

/// Why a type fails; the numbers suffice to re-check the claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum Reason {
    /// `c = 0`: the permutation is the identity.
    Trivial,
    CycleWeight { pc: u64, s: u64, g: u64 },
    FixedWeight { f: u64, s: u64, g: u64 },
    CGeF { c: u64, f: u64 },
    EvenC { order_of_2: u64, c: u64 },
    BalancedShort { p: u64, c: u64, d: u64 },
    /// Excluded by a computation or argument outside the lemma table.
    Case { source: String, detail: String },
}

impl Reason {
    pub fn tag(&self) -> &str {
        match self {
            Reason::Trivial => "trivial",
            Reason::CycleWeight { .. } => Lemma::CycleWeight.tag(),
            Reason::FixedWeight { .. } => Lemma::FixedWeight.tag(),
            Reason::CGeF { .. } => Lemma::CGeF.tag(),
            Reason::EvenC { .. } => Lemma::EvenC.tag(),
            Reason::BalancedShort { .. } => Lemma::BalancedShort.tag(),
            Reason::Case { source, .. } => source,
        }
    }

    /// Re-evaluates the violated inequality from the stored numbers.
    pub fn holds(&self, d: u64) -> bool {
        match *self {
            Reason::Trivial | Reason::Case { .. } => true,
            Reason::CycleWeight { pc, s, g: gv } => gv == g(d, s) && pc < gv,
            Reason::FixedWeight { f, s, g: gv } => gv == g(d, s) && f < gv,
            Reason::CGeF { c, f } => c < f,
            Reason::EvenC { order_of_2, c } => order_of_2 % 2 == 0 && c % 2 == 1,
            Reason::BalancedShort { p, c, d: dd } => dd == d && p + c < d,
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::Trivial => write!(f, "trivial: c = 0 means the identity"),
            Reason::CycleWeight { pc, s, g } => {
                write!(f, "cycle-weight: pc = {pc} < g({s}) = {g}")
            }
            Reason::FixedWeight { f: ff, s, g } => {
                write!(f, "fixed-weight: f = {ff} < g({s}) = {g}")
            }
            Reason::CGeF { c, f: ff } => write!(f, "c-ge-f: c = {c} < f = {ff}"),
            Reason::EvenC { order_of_2, c } => {
                write!(f, "even-c: ord_p(2) = {order_of_2} is even but c = {c} is odd")
            }
            Reason::BalancedShort { p, c, d } => {
                write!(f, "balanced-short: c = f and p + c = {} < d = {d}", p + c)
            }
            Reason::Case { source, detail } => write!(f, "{source}: {detail}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeVerdict {
    pub candidate: TypeCandidate,
    pub status: Status,
    pub reasons: Vec<Reason>,
    /// Lemmas that were selected but did not apply, with the reason.
    pub notes: Vec<String>,
}

impl TypeVerdict {
    pub fn survives(&self) -> bool {
        self.status == Status::Survives
    }

    fn push(&mut self, r: Reason) {
        self.reasons.push(r);
        self.status = Status::Excluded;
    }
}

/// Whether the `c-ge-f` hypothesis holds for `(n, d, p)`.
pub fn c_ge_f_applies(n: u64, d: u64, p: u64) -> bool {
    let extremal = extremal_bound(n as usize).map(|b| b as u64 == d).unwrap_or(false);
    let m = n / 24;
    let rest = n % 24;
    extremal && p >= 5 && m >= 2 && rest.is_multiple_of(2) && rest / 2 <= 11
}

pub fn filter_type(t: TypeCandidate, n: u64, d: u64, lemmas: &LemmaSet) -> TypeVerdict {
    let TypeCandidate { p, c, f } = t;
    let mut v = TypeVerdict {
        candidate: t,
        status: Status::Survives,
        reasons: Vec::new(),
        notes: Vec::new(),
    };
    if c == 0 {
        v.push(Reason::Trivial);
    }
    if lemmas.contains(Lemma::CycleWeight) {
        let s = (p - 1) * c / 2;
        let gv = g(d, s);
        if p * c < gv {
            v.push(Reason::CycleWeight { pc: p * c, s, g: gv });
        }
    }
    if lemmas.contains(Lemma::FixedWeight) && f > c {
        let s = (f - c) / 2;
        let gv = g(d, s);
        if f < gv {
            v.push(Reason::FixedWeight { f, s, g: gv });
        }
    }
    if lemmas.contains(Lemma::CGeF) {
        if c_ge_f_applies(n, d, p) {
            if c < f {
                v.push(Reason::CGeF { c, f });
            }
        } else {
            v.notes
                .push(format!("c-ge-f not applicable to n = {n}, d = {d}, p = {p}"));
        }
    }
    if lemmas.contains(Lemma::EvenC) {
        if let Ok(s) = mult_order_of_2(p) {
            if s % 2 == 0 && c % 2 == 1 {
                v.push(Reason::EvenC { order_of_2: s, c });
            }
        }
    }
    if lemmas.contains(Lemma::BalancedShort) && c == f && p + c < d {
        v.push(Reason::BalancedShort { p, c, d });
    }
    v
}

/// Every `(c, f)` with `pc + f = n`, ordered by `c`.
pub fn feasible_types(n: u64, d: u64, p: u64, lemmas: &LemmaSet) -> Vec<TypeVerdict> {
    let candidates = (0..=n / p).map(|c| TypeCandidate::new(p, c, n - p * c));
    let verdicts: Vec<TypeVerdict> = candidates
        .clone()
        .map(|t| filter_type(t, n, d, lemmas))
        .collect();
    if !(lemmas.defer_even_c && lemmas.contains(Lemma::EvenC)) {
        return verdicts;
    }
    let mut without = lemmas.clone();
    without.lemmas.remove(&Lemma::EvenC);
    without.defer_even_c = false;
    let relaxed: Vec<TypeVerdict> = candidates.map(|t| filter_type(t, n, d, &without)).collect();
    if verdicts.iter().any(TypeVerdict::survives) || !relaxed.iter().any(TypeVerdict::survives) {
        return verdicts;
    }
    relaxed
        .into_iter()
        .map(|mut v| {
            if v.survives() {
                v.notes
                    .push("even-c deferred: it would exclude every type for this prime".into());
            }
            v
        })
        .collect()
}

/// Odd primes `p ≤ n` with at least one surviving type, for each prime its survivors.
pub fn type_table(n: u64, d: u64, lemmas: &LemmaSet) -> Vec<(u64, Vec<TypeVerdict>)> {
    primes_up_to(n)
        .into_iter()
        .filter(|&p| p > 2)
        .filter_map(|p| {
            let rows: Vec<TypeVerdict> = feasible_types(n, d, p, lemmas)
                .into_iter()
                .filter(TypeVerdict::survives)
                .collect();
            (!rows.is_empty()).then_some((p, rows))
        })
        .collect()
}

/// Odd primes that survive the full lemma set.
pub fn surviving_primes(n: u64, d: u64) -> Vec<u64> {
    type_table(n, d, &LemmaSet::full())
        .into_iter()
        .map(|(p, _)| p)
        .collect()
}

/// `A ≡ A' (mod p)`, the necessary relation between the weight counts of a
/// code and of its fixed subcode under an automorphism of order `p`.
pub fn mod_p_weight_test(extremal_a: &BigUint, observed_a_prime: &BigUint, p: u64) -> bool {
    let p = BigUint::from(p);
    extremal_a % &p == observed_a_prime % &p
}

/// A type ruled out by a case computation or a cited argument.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRefutation {
    pub candidate: TypeCandidate,
    pub source: String,
    pub detail: String,
}

/// The full-lemma survivors minus the given case refutations.
pub fn theorem_table(n: u64, d: u64, refutations: &[CaseRefutation]) -> Vec<(u64, Vec<TypeVerdict>)> {
    type_table(n, d, &LemmaSet::full())
        .into_iter()
        .filter_map(|(p, rows)| {
            let rows: Vec<TypeVerdict> = rows
                .into_iter()
                .filter(|v| !refutations.iter().any(|r| r.candidate == v.candidate))
                .collect();
            (!rows.is_empty()).then_some((p, rows))
        })
        .collect()
}

/// Marks the refuted candidates in a list of verdicts as excluded.
pub fn apply_refutations(verdicts: &mut [TypeVerdict], refutations: &[CaseRefutation]) {
    for v in verdicts {
        let candidate = v.candidate;
        for r in refutations.iter().filter(|r| r.candidate == candidate) {
            v.push(Reason::Case {
                source: r.source.clone(),
                detail: r.detail.clone(),
            });
        }
    }
}

/// Checks that `p` is an odd prime; types are only defined for those.
pub fn is_odd_prime(p: u64) -> bool {
    p > 2 && is_prime(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn survivors(n: u64, d: u64, p: u64, set: &LemmaSet) -> Vec<(u64, u64)> {
        feasible_types(n, d, p, set)
            .into_iter()
            .filter(TypeVerdict::survives)
            .map(|v| (v.candidate.c, v.candidate.f))
            .collect()
    }

    #[test]
    fn g_values() {
        assert_eq!(g(24, 0), 0);
        assert_eq!(g(24, 1), 24);
        assert_eq!(g(24, 2), 36);
        assert_eq!(g(24, 4), 45);
        assert_eq!(g(24, 50), 92);
        assert_eq!(g(24, 200), 242);
    }

    #[test]
    fn named_exclusions() {
        let full = LemmaSet::full();
        let v = filter_type(TypeCandidate::new(11, 10, 10), 120, 24, &full);
        assert_eq!(v.reasons, vec![Reason::BalancedShort { p: 11, c: 10, d: 24 }]);
        let v = filter_type(TypeCandidate::new(13, 9, 3), 120, 24, &full);
        assert_eq!(v.reasons, vec![Reason::EvenC { order_of_2: 12, c: 9 }]);
        let v = filter_type(TypeCandidate::new(17, 7, 1), 120, 24, &full);
        assert_eq!(v.reasons, vec![Reason::EvenC { order_of_2: 8, c: 7 }]);
        assert!(filter_type(TypeCandidate::new(59, 2, 2), 120, 24, &full).survives());
    }

    #[test]
    fn rows_for_small_primes() {
        let t = LemmaSet::tabulated();
        assert_eq!(survivors(120, 24, 5, &t), vec![(20, 20), (22, 10), (24, 0)]);
        let threes: Vec<u64> = survivors(120, 24, 3, &t).iter().map(|x| x.0).collect();
        assert_eq!(threes, vec![30, 32, 34, 36, 38, 40]);
        assert!(survivors(120, 24, 31, &t).is_empty());
        assert_eq!(survivors(120, 24, 13, &t), vec![(9, 3)]);
        assert_eq!(survivors(120, 24, 17, &t), vec![(7, 1)]);
        assert_eq!(survivors(120, 24, 7, &LemmaSet::full()), vec![(16, 8), (17, 1)]);
    }

    #[test]
    fn lengths_24_and_48() {
        assert_eq!(
            survivors(24, 8, 23, &LemmaSet::full()),
            vec![(1, 1)]
        );
        assert!(surviving_primes(24, 8).contains(&23));
        assert_eq!(survivors(48, 12, 47, &LemmaSet::full()), vec![(1, 1)]);
        assert_eq!(surviving_primes(120, 24), vec![3, 5, 7, 19, 23, 29, 59]);
    }

    #[test]
    fn weight_congruence() {
        let a28 = BigUint::from(6_101_289_120u64);
        assert!(!mod_p_weight_test(&a28, &BigUint::from(0u32), 7));
        assert!(mod_p_weight_test(&a28, &a28, 7));
        assert_eq!(&a28 % 7u32, BigUint::from(3u32));
        assert!(mod_p_weight_test(&BigUint::from(21u32), &BigUint::from(0u32), 7));
    }

    #[test]
    fn lemma_tags_round_trip() {
        for l in Lemma::ALL {
            assert_eq!(l.tag().parse::<Lemma>().unwrap(), l);
        }
        assert!(LemmaSet::preset("paper-table").is_some());
    }
}
