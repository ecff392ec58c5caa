//! The randomized search against exhaustive enumeration.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sdaut::code::{BinaryCode, DEFAULT_DIM_CAP};
use sdaut::lowweight::{find_below, find_min_weight_word, IsdVariant, SearchBudget};
use sdaut::BitVector;

fn random_code(seed: u64) -> BinaryCode {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(12..=64);
    let k = rng.gen_range(1..=20.min(n - 1));
    let density = rng.gen_range(0.1..0.5);
    let rows = (0..k)
        .map(|_| BitVector::from_bools(&(0..n).map(|_| rng.gen_bool(density)).collect::<Vec<_>>()))
        .collect();
    BinaryCode::from_rows(n, rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn search_matches_exhaustive_minimum(seed in any::<u64>(), stern in any::<bool>()) {
        let code = random_code(seed);
        let d = code.min_weight(DEFAULT_DIM_CAP).unwrap();
        let budget = SearchBudget {
            seed,
            variant: if stern { IsdVariant::Stern } else { IsdVariant::LeeBrickell },
            ..SearchBudget::default()
        };
        match d {
            None => prop_assert!(find_min_weight_word(&code, code.length(), &budget).is_none()),
            Some(d) => {
                // never below the true minimum
                prop_assert!(find_below(&code, d, &budget).is_none());
                let w = find_below(&code, d + 1, &budget).expect("budget suffices at this size");
                prop_assert_eq!(w.weight, d);
                prop_assert_eq!(w.codeword.weight(), d);
                prop_assert!(code.contains(&w.codeword));
                let m = find_min_weight_word(&code, code.length(), &budget).unwrap();
                prop_assert_eq!(m.weight, d);
            }
        }
    }
}
