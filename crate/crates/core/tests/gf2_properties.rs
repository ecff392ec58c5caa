use proptest::prelude::*;

use sdaut::code::{extremal_type2_enumerator, BinaryCode, DEFAULT_DIM_CAP};
use sdaut::{BitMatrix, BitVector};

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BitMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r).prop_map(move |rows| {
            BitMatrix::from_rows(c, rows.iter().map(|b| BitVector::from_bools(b)).collect()).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rref_is_canonical_and_rank_plus_nullity(m in matrix(12, 90)) {
        let r = m.rref();
        prop_assert!(r.matrix.is_rref());
        prop_assert_eq!(r.rank, m.transpose().rank());
        let k = m.kernel_basis();
        prop_assert_eq!(r.rank + k.nrows(), m.ncols());
        for x in k.rows() {
            prop_assert!(m.rows().iter().all(|row| !row.dot(x)));
        }
        // same row space, same canonical form
        let again = BitMatrix::from_rows(m.ncols(), r.basis().into_rows()).unwrap().rref();
        prop_assert_eq!(again.basis(), r.basis());
    }

    #[test]
    fn xor_and_weight(a in proptest::collection::vec(any::<bool>(), 1..150), seed in any::<u64>()) {
        let u = BitVector::from_bools(&a);
        let mut w = u.clone();
        for i in 0..a.len() {
            if (seed >> (i % 64)) & 1 == 1 {
                w.flip(i);
            }
        }
        let sum = u.xor(&w);
        prop_assert_eq!(sum.weight(), u.weight() + w.weight() - 2 * u.intersection_weight(&w));
        prop_assert_eq!(u.dot(&w), u.intersection_weight(&w) % 2 == 1);
        prop_assert_eq!(sum.xor(&w), u);
    }

    #[test]
    fn dual_dimensions_add_up(m in matrix(10, 40)) {
        let c = BinaryCode::from_generator(&m);
        let d = c.dual();
        prop_assert_eq!(c.dimension() + d.dimension(), c.length());
        prop_assert!(d.dual() == c);
        for row in c.generator().rows() {
            prop_assert!(d.generator().rows().iter().all(|x| !x.dot(row)));
        }
    }

    #[test]
    fn weight_distribution_sums_to_size(m in matrix(10, 30)) {
        let c = BinaryCode::from_generator(&m);
        let wd = c.weight_distribution(DEFAULT_DIM_CAP).unwrap();
        prop_assert_eq!(wd.total(), num_bigint::BigUint::from(1u64 << c.dimension()));
    }
}

#[test]
fn extremal_enumerators_are_consistent() {
    for n in (8..=200).step_by(8) {
        let Ok(wd) = extremal_type2_enumerator(n) else {
            continue;
        };
        let d = 4 * (n / 24) + 4;
        assert_eq!(wd.total(), num_bigint::BigUint::from(1u32) << (n / 2), "n = {n}");
        for i in 0..=n {
            assert_eq!(wd.get(i), wd.get(n - i), "n = {n}, i = {i}");
            if i % 4 != 0 || (0 < i && i < d) {
                assert_eq!(wd.get(i), num_bigint::BigUint::from(0u32), "n = {n}, i = {i}");
            }
        }
    }
}
