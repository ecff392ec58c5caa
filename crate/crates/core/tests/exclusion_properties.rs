use proptest::prelude::*;

use sdaut::exclusion::{feasible_types, filter_type, Lemma, LemmaSet, Reason, TypeCandidate};
use sdaut::util::primes_up_to;

const ALL: [Lemma; 5] = [
    Lemma::CycleWeight,
    Lemma::FixedWeight,
    Lemma::CGeF,
    Lemma::EvenC,
    Lemma::BalancedShort,
];

fn subset(mask: u8) -> LemmaSet {
    LemmaSet::from_lemmas(ALL.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, l)| *l))
}

fn odd_primes(n: u64) -> Vec<u64> {
    primes_up_to(n).into_iter().filter(|&p| p > 2).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn more_lemmas_never_revive_a_type(m in 1u64..=12, small in any::<u8>(), extra in any::<u8>()) {
        let n = 24 * m;
        let d = 4 * m + 4;
        let a = subset(small & 0x1f);
        let b = subset((small | extra) & 0x1f);
        for p in odd_primes(n) {
            for (va, vb) in feasible_types(n, d, p, &a).iter().zip(feasible_types(n, d, p, &b)) {
                prop_assert!(va.survives() || !vb.survives(), "{}", vb.candidate);
            }
        }
    }

    #[test]
    fn recorded_reasons_recheck(n in (4u64..=120).prop_map(|h| 2 * h), d in 4u64..=28, mask in any::<u8>()) {
        let set = subset(mask & 0x1f);
        for p in odd_primes(n) {
            for v in feasible_types(n, d, p, &set) {
                prop_assert_eq!(v.survives(), v.reasons.is_empty());
                for r in &v.reasons {
                    prop_assert!(r.holds(d), "{} {r}", v.candidate);
                    let lemma_ok = match r {
                        Reason::Trivial | Reason::Case { .. } => true,
                        other => set.lemmas.iter().any(|l| l.tag() == other.tag()),
                    };
                    prop_assert!(lemma_ok, "{} cites an unselected lemma: {r}", v.candidate);
                }
                prop_assert_eq!(v.candidate.n(), n);
            }
        }
    }
}

#[test]
fn empty_set_only_drops_the_identity() {
    for p in odd_primes(120) {
        for c in 0..=120 / p {
            let v = filter_type(TypeCandidate::new(p, c, 120 - p * c), 120, 24, &LemmaSet::empty());
            assert_eq!(v.survives(), c > 0);
        }
    }
}
