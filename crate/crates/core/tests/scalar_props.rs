use a22::scalar::{ExactMatrix, Q, GR};
use proptest::prelude::*;

fn gr() -> impl Strategy<Value = GR> {
    (-20i64..20, 1i64..9, -20i64..20, 1i64..9).prop_map(|(a, b, c, d)| GR::new(Q::new(a, b), Q::new(c, d)))
}

fn matrix(max: usize) -> impl Strategy<Value = ExactMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        // small entries and frequent zeros make rank deficiency likely
        proptest::collection::vec(proptest::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..4], c), r)
            .prop_map(|rows| ExactMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| GR::int(x)).collect()).collect::<Vec<_>>()))
    })
}

proptest! {
    #[test]
    fn field_axioms(a in gr(), b in gr(), c in gr()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
            prop_assert_eq!(&(&b / &a) * &a, b.clone());
        } else {
            prop_assert!(a.inverse().is_err());
        }
    }

    #[test]
    fn rational_normal_form(n in -1000i64..1000, d in 1i64..200, k in 1i64..50) {
        prop_assert_eq!(Q::new(n * k, d * k), Q::new(n, d));
        prop_assert_eq!(Q::new(n, d).to_string(), Q::from_bigrational(&Q::new(n, d).to_big()).to_string());
    }

    #[test]
    fn rank_of_transpose(m in matrix(6)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rank_nullity(m in matrix(6)) {
        let cols = m.dense_rows()[0].len();
        let ker = m.kernel();
        prop_assert_eq!(m.rank() + ker.len(), cols);
        for v in ker {
            prop_assert!(m.apply(&v).iter().all(GR::is_zero));
        }
    }
}
