use a22::envelope::{ideal_bucket, psi_map, tau_inverse, tau_shift, u_bracket, EnvElement, ModeGen};
use a22::fock::{bracket_coefficient, Root};
use a22::scalar::GR;
use proptest::prelude::*;

fn gen() -> impl Strategy<Value = ModeGen> {
    prop_oneof![
        3 => (-6i64..4).prop_map(|k| ModeGen::u(2 * k + 1)),
        1 => (-3i64..2).prop_map(|k| ModeGen::z(4 * k)),
    ]
}

fn word() -> impl Strategy<Value = EnvElement> {
    (proptest::collection::vec(gen(), 0..4), -3i64..4).prop_map(|(g, c)| EnvElement::word(&g, GR::int(c)))
}

proptest! {
    #[test]
    fn bracket_antisymmetry(a in -9i64..9, b in -9i64..9) {
        let (a, b) = (2 * a + 1, 2 * b + 1);
        prop_assert_eq!(u_bracket(a, b).map(|x| -x), u_bracket(b, a));
    }

    // the envelope table agrees with the operator-side table for u = x_{α1}
    #[test]
    fn bracket_matches_operator_table(a in -9i64..9, b in -9i64..9) {
        let (a, b) = (2 * a + 1, 2 * b + 1);
        prop_assume!((a + b) % 4 == 0);
        prop_assert_eq!(u_bracket(a, b).unwrap(), bracket_coefficient(Root::A1, a, Root::A1, b));
    }

    #[test]
    fn product_is_associative(x in word(), y in word(), z in word()) {
        prop_assert_eq!(x.multiply(&y).multiply(&z), x.multiply(&y.multiply(&z)));
    }

    #[test]
    fn commutator_of_generators(a in gen(), b in gen()) {
        let (x, y) = (EnvElement::gen(a), EnvElement::gen(b));
        let comm = x.multiply(&y).minus(&y.multiply(&x));
        prop_assert_eq!(comm, a22::envelope::bracket(a, b));
    }

    #[test]
    fn tau_is_an_automorphism(x in word(), y in word()) {
        prop_assert_eq!(tau_shift(&x.multiply(&y)), tau_shift(&x).multiply(&tau_shift(&y)));
        prop_assert_eq!(tau_inverse(&tau_shift(&x)), x.clone());
        prop_assert_eq!(psi_map(&x), tau_inverse(&x).multiply(&EnvElement::gen(ModeGen::u(-1))));
    }
}

// wider nonnegative factors add nothing to the ideal span
#[test]
fn ideal_span_stable_under_widening() {
    for l in 0..=12 {
        for k in 0..=l {
            assert_eq!(ideal_bucket(k, l, 0).len(), ideal_bucket(k, l, 4).len(), "bucket ({k},{l})");
        }
    }
}
