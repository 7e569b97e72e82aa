use cuntz_crossed::crossed::{from_cuntz, mul_crossed, to_cuntz};
use cuntz_crossed::expr::{parse_ast, parse_expression_with_d};
use cuntz_crossed::json::{element_from_json, element_to_json};
use cuntz_crossed::maps::{apply_delta, apply_delta_star, apply_zeta};
use cuntz_crossed::uhf::to_matrix_level;
use cuntz_crossed::{Element, Monomial, Scalar};
use proptest::prelude::*;

fn word(max_len: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(1u8..=2, 0..=max_len)
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3, -2i64..=2, -2i64..=2)
        .prop_filter("non-zero", |(a, _, b, c)| *a != 0 || *b != 0 || *c != 0)
        .prop_map(|(a, den, b, c)| {
            Scalar::from_fraction(a, den) + &Scalar::from_int(b) * &Scalar::sqrt2() + &Scalar::from_int(c) * &Scalar::i()
        })
}

fn element(max_len: usize) -> impl Strategy<Value = Element> {
    prop::collection::vec((word(max_len), word(max_len), scalar()), 1..=4).prop_map(|terms| {
        Element::from_terms(2, terms.into_iter().map(|(i, j, c)| (Monomial::new(i, j), c))).unwrap()
    })
}

fn balanced(level: usize) -> impl Strategy<Value = Element> {
    prop::collection::vec(
        (0..=level).prop_flat_map(|k| (prop::collection::vec(1u8..=2, k), prop::collection::vec(1u8..=2, k), scalar())),
        1..=4,
    )
    .prop_map(|terms| Element::from_terms(2, terms.into_iter().map(|(i, j, c)| (Monomial::new(i, j), c))).unwrap())
}

fn unit() -> impl Strategy<Value = Scalar> {
    (0u32..8).prop_map(|k| {
        let mut z = Scalar::from_int(1);
        for _ in 0..k {
            z = &z * &Scalar::eighth_root_of_unity();
        }
        z
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative(x in element(2), y in element(2), z in element(2)) {
        prop_assert!((&(&x * &y) * &z).equals(&(&x * &(&y * &z))));
    }

    #[test]
    fn adjoint_reverses_products(x in element(3), y in element(3)) {
        prop_assert!((&x * &y).adjoint().equals(&(&y.adjoint() * &x.adjoint())));
        prop_assert_eq!(x.adjoint().adjoint(), x);
    }

    #[test]
    fn distributive(x in element(2), y in element(2), z in element(2)) {
        prop_assert!((&x * &(&y + &z)).equals(&(&(&x * &y) + &(&x * &z))));
    }

    #[test]
    fn expansion_preserves_value(x in element(3), extra in 0usize..3) {
        let level = x.min_level() + extra;
        let expanded = x.expand_to_level(level).unwrap();
        prop_assert!(expanded.equals(&x));
        prop_assert_eq!(expanded.expand_to_level(level).unwrap(), expanded.clone());
        let n = x.normalize();
        prop_assert_eq!(n.normalize(), n.clone());
        prop_assert_eq!(expanded.normalize(), n);
    }

    #[test]
    fn gauge_action_composes(x in element(3), z in unit(), w in unit()) {
        let lhs = x.gauge_rotate(&z).unwrap().gauge_rotate(&w).unwrap();
        let rhs = x.gauge_rotate(&(&z * &w)).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(x.grade().sum(), x.clone());
    }

    #[test]
    fn display_parses_back(x in element(3)) {
        let parsed = parse_expression_with_d(&x.to_string(), 2).unwrap();
        prop_assert_eq!(parsed, x);
    }

    #[test]
    fn ast_printer_round_trip(x in element(2), y in element(2)) {
        let text = format!("({})* . (-({})) - ({}) / (2 + sqrt2)", x, y, x);
        let ast = parse_ast(&text).unwrap();
        prop_assert_eq!(parse_ast(&ast.to_string()).unwrap(), ast);
    }

    #[test]
    fn json_round_trip(x in element(3)) {
        let back = element_from_json(&element_to_json(&x)).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn crossed_round_trip(x in element(3)) {
        let ce = from_cuntz(&x).unwrap();
        prop_assert!(to_cuntz(&ce).unwrap().equals(&x));
        prop_assert_eq!(from_cuntz(&to_cuntz(&ce).unwrap()).unwrap(), ce);
        prop_assert!(to_cuntz(&from_cuntz(&x.adjoint()).unwrap()).unwrap().equals(&x.adjoint()));
    }

    #[test]
    fn crossed_multiplication_is_a_homomorphism(x in element(3), y in element(3)) {
        let p = mul_crossed(&from_cuntz(&x).unwrap(), &from_cuntz(&y).unwrap()).unwrap();
        prop_assert!(to_cuntz(&p).unwrap().equals(&(&x * &y)));
    }

    #[test]
    fn matrix_realisation_is_functorial(x in balanced(3), y in balanced(3)) {
        let mx = to_matrix_level(&x, 3).unwrap();
        let my = to_matrix_level(&y, 3).unwrap();
        prop_assert_eq!(to_matrix_level(&(&x * &y), 3).unwrap(), &mx * &my);
        prop_assert_eq!(to_matrix_level(&x.adjoint(), 3).unwrap(), mx.conjugate_transpose());
        prop_assert_eq!(to_matrix_level(&x, 4).unwrap(), mx.embed().unwrap());
    }

    #[test]
    fn shift_and_transfer(x in balanced(3), y in balanced(3)) {
        prop_assert!((&apply_delta(&x).unwrap() * &apply_delta(&y).unwrap()).equals(&apply_delta(&(&x * &y)).unwrap()));
        let lhs = apply_delta_star(&(&apply_delta(&x).unwrap() * &y)).unwrap();
        prop_assert!(lhs.equals(&(&x * &apply_delta_star(&y).unwrap())));
        prop_assert!(apply_delta_star(&apply_zeta(&x).unwrap()).unwrap().equals(&x));
    }
}
