//! Decomposition identities checked on codes with known automorphisms.

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sdaut::code::{extended_qr, BinaryCode, DEFAULT_DIM_CAP};
use sdaut::decomp::{
    balance_blocks, check_selfdual_conditions, cycle_structure, decompose, is_automorphism,
    Permutation,
};

/// `i -> i + 1` on `Z_q`, infinity fixed.
fn translation(q: usize) -> Permutation {
    let mut images: Vec<usize> = (0..q).map(|i| (i + 1) % q).collect();
    images.push(q);
    Permutation::new(images).unwrap()
}

/// `i -> 2i` on `Z_q`, 0 and infinity fixed.
fn doubling(q: usize) -> Permutation {
    let mut images: Vec<usize> = (0..q).map(|i| 2 * i % q).collect();
    images.push(q);
    Permutation::new(images).unwrap()
}

fn pairs() -> Vec<(&'static str, BinaryCode, Permutation)> {
    let golay = extended_qr(23).unwrap();
    let qr48 = extended_qr(47).unwrap();
    vec![
        ("golay 23-(1;1)", golay.clone(), translation(23)),
        ("golay 11-(2;2)", golay, doubling(23)),
        ("qr48 23-(2;2)", qr48.clone(), doubling(47)),
        ("qr48 47-(1;1)", qr48, translation(47)),
    ]
}

#[test]
fn types_of_the_known_automorphisms() {
    let labels: Vec<String> = pairs()
        .iter()
        .map(|(_, code, s)| {
            assert!(is_automorphism(code, s));
            cycle_structure(s).unwrap().type_label()
        })
        .collect();
    assert_eq!(labels, ["23-(1;1)", "11-(2;2)", "23-(2;2)", "47-(1;1)"]);
}

#[test]
fn code_is_direct_sum_of_fixed_and_even_subcodes() {
    for (name, code, sigma) in pairs() {
        let d = decompose(&code, &sigma).unwrap();
        assert!(d.is_direct_sum_of(&code), "{name}");
        let s = &d.structure;
        assert_eq!(d.fixed.dimension(), (s.c() + s.f()) / 2, "{name}");
        assert_eq!(d.even.dimension(), (s.p - 1) * s.c() / 2, "{name}");
        for row in d.fixed.generator().rows() {
            assert_eq!(sigma.apply(row), *row, "{name}");
        }
    }
}

#[test]
fn weight_counts_agree_mod_p_with_the_fixed_subcode() {
    for (name, code, sigma) in pairs() {
        let p = cycle_structure(&sigma).unwrap().p as u32;
        let d = decompose(&code, &sigma).unwrap();
        let full = code.weight_distribution(DEFAULT_DIM_CAP).unwrap();
        let fixed = d.fixed.weight_distribution(DEFAULT_DIM_CAP).unwrap();
        for i in 0..=code.length() {
            assert_eq!(
                full.get(i) % BigUint::from(p),
                fixed.get(i) % BigUint::from(p),
                "{name}: weight {i}"
            );
        }
    }
}

#[test]
fn pi_and_phi_images_are_self_dual() {
    for (name, code, sigma) in pairs() {
        let r = check_selfdual_conditions(&code, &sigma).unwrap();
        assert!(r.code_self_dual && r.pi_self_dual && r.phi_self_dual, "{name}: {r:?}");
        // 2 has order p - 1 only for p = 11 among these
        assert_eq!(r.field_mode, name.contains("11-"), "{name}");
        if r.field_mode {
            assert_eq!(r.q_form_agrees, Some(true), "{name}");
        }
    }
}

#[test]
fn non_automorphism_is_rejected() {
    let golay = extended_qr(23).unwrap();
    let swap = Permutation::from_cycles(24, &[vec![0, 1]]).unwrap();
    assert!(!is_automorphism(&golay, &swap));
    assert!(decompose(&golay, &swap).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn balance_principle_on_random_splits(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 2 * rng.gen_range(2..=20);
        let code = BinaryCode::random_self_dual(n, 3 * n, &mut rng).unwrap();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let code = code.permute(&perm).unwrap();
        let c = rng.gen_range(0..=n);
        let b = balance_blocks(&code, c, n - c).unwrap();
        // k1 - c/2 = k2 - f/2, doubled to stay in integers
        prop_assert_eq!(2 * b.k1 + (n - c), 2 * b.k2 + c);
        prop_assert!(b.all_hold());
    }
}
