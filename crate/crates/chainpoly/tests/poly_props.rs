use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use chainpoly::poly::{is_log_concave, is_unimodal, MultiPoly, VarSet};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn rat2(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn tvars(k: usize) -> VarSet {
    VarSet::indexed("t", k)
}

fn p(text: &str, vars: &VarSet) -> MultiPoly {
    MultiPoly::parse(text, vars).expect("test polynomial parses")
}

#[test]
fn add_mul_scale_examples() {
    let v = tvars(2);
    let t1_minus_1 = p("t1 - 1", &v);
    assert_eq!(t1_minus_1.add(&MultiPoly::one(v.clone())), p("t1", &v));
    let t2_minus_1 = p("t2 - 1", &v);
    assert_eq!(
        t1_minus_1.mul(&t2_minus_1),
        p("t1*t2 - t1 - t2 + 1", &v)
    );
    let zero = MultiPoly::var(v.clone(), "t1").unwrap().scale(&rat(0));
    assert!(zero.is_zero());
    assert_eq!(zero.num_terms(), 0);
}

#[test]
fn substitute_examples() {
    // x1^2 at x1 -> 1 - t1
    let xv = VarSet::indexed("x", 1);
    let tv = tvars(1);
    let x1sq = p("x1^2", &xv);
    let binding = MultiPoly::int(tv.clone(), 1).sub(&MultiPoly::var(tv.clone(), "t1").unwrap());
    let got = x1sq.substitute(&[("x1", binding)]).unwrap();
    assert_eq!(got, p("t1^2 - 2*t1 + 1", &tv));

    // y1 -> y1/2 + 1/2 stays exact
    let yv = VarSet::indexed("y", 1);
    let y1 = p("y1", &yv);
    let half = MultiPoly::var(yv.clone(), "y1")
        .unwrap()
        .scale(&rat2(1, 2))
        .add(&MultiPoly::constant(yv.clone(), rat2(1, 2)));
    let got = y1.substitute(&[("y1", half.clone())]).unwrap();
    assert_eq!(got, half);
    assert!(!got.is_integral());

    // simultaneous swap t1 <-> t2 fixes t1*t2
    let v = tvars(2);
    let prod = p("t1*t2", &v);
    let got = prod
        .substitute(&[
            ("t1", MultiPoly::var(v.clone(), "t2").unwrap()),
            ("t2", MultiPoly::var(v.clone(), "t1").unwrap()),
        ])
        .unwrap();
    assert_eq!(got, prod);
    // and moves an asymmetric polynomial
    let asym = p("t1^2*t2", &v);
    let swapped = asym
        .substitute(&[
            ("t1", MultiPoly::var(v.clone(), "t2").unwrap()),
            ("t2", MultiPoly::var(v.clone(), "t1").unwrap()),
        ])
        .unwrap();
    assert_eq!(swapped, p("t1*t2^2", &v));
}

#[test]
fn evaluate_examples() {
    let v = tvars(2);
    let chi_k3 = p(
        "t1^2*t2^2 - 3*t1^2*t2 + 2*t1^2 + 3*t1*t2 - 3*t1 + 1",
        &v,
    );
    let at = |a: i64, b: i64| {
        chi_k3
            .evaluate(&[("t1", rat(a)), ("t2", rat(b))])
            .unwrap()
    };
    assert_eq!(at(-1, -1), rat(13));
    // the all-ones value is 1, not 0 (frozen from the oracle)
    assert_eq!(at(1, 1), rat(1));
    assert!(MultiPoly::zero(v.clone())
        .evaluate(&[("t1", rat(5)), ("t2", rat(7))])
        .unwrap()
        .is_zero());
}

#[test]
fn evaluate_unbound_variable_is_contract_violation() {
    let v = tvars(2);
    let poly = p("t1*t2", &v);
    let err = poly.evaluate(&[("t1", rat(1))]).unwrap_err();
    assert!(matches!(err, chainpoly::Error::Contract(_)));
}

#[test]
fn reverse_in_var_examples() {
    let v = tvars(1);
    let poly = p("t1^2 + 3*t1", &v);
    assert_eq!(poly.reverse_in_var("t1", 2).unwrap(), p("3*t1 + 1", &v));
    assert_eq!(
        MultiPoly::one(v.clone()).reverse_in_var("t1", 2).unwrap(),
        p("t1^2", &v)
    );
    let twice = poly
        .reverse_in_var("t1", 2)
        .unwrap()
        .reverse_in_var("t1", 2)
        .unwrap();
    assert_eq!(twice, poly);
    // degree above the reversal bound would need negative exponents
    assert!(poly.reverse_in_var("t1", 1).is_err());
}

#[test]
fn total_degree_coefficients_and_shape_tests() {
    let v = tvars(1);
    assert!(is_log_concave(&[rat(1), rat(2), rat(1)]));
    assert!(!is_unimodal(&[rat(1), rat(3), rat(2), rat(4)]));
    let poly = p("t1^2 - 2*t1 + 1", &v);
    assert_eq!(
        poly.coefficients_by_total_degree(),
        vec![rat(1), rat(-2), rat(1)]
    );
    // gaps appear as zeros
    let gappy = p("t1^3 + 1", &v);
    assert_eq!(
        gappy.coefficients_by_total_degree(),
        vec![rat(1), rat(0), rat(0), rat(1)]
    );
}

#[test]
fn display_uses_graded_lex_descending() {
    let v = tvars(2);
    let poly = p("1 + 3*t1*t2 + 2*t1^2 - 3*t1 - 3*t1^2*t2 + t1^2*t2^2", &v);
    assert_eq!(
        poly.to_string(),
        "t1^2*t2^2 - 3*t1^2*t2 + 2*t1^2 + 3*t1*t2 - 3*t1 + 1"
    );
    assert_eq!(MultiPoly::zero(v).to_string(), "0");
}

#[test]
fn json_round_trip_matches_schema() {
    let v = tvars(2);
    let poly = p("t1^2*t2 - 1/2*t1 + 3", &v);
    let json = serde_json::to_string(&poly).unwrap();
    assert_eq!(
        json,
        r#"{"vars":["t1","t2"],"terms":[{"exp":[2,1],"coef":"1"},{"exp":[1,0],"coef":"-1/2"},{"exp":[0,0],"coef":"3"}]}"#
    );
    let back: MultiPoly = serde_json::from_str(&json).unwrap();
    assert_eq!(back, poly);
}

// --- randomized properties ---

fn arb_poly(vars: usize, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    let term = (
        proptest::collection::vec(0u16..4, vars),
        -6i64..=6,
        1i64..=3,
    );
    proptest::collection::vec(term, 0..=max_terms).prop_map(move |terms| {
        MultiPoly::from_terms(
            VarSet::indexed("t", vars),
            terms
                .into_iter()
                .map(|(exps, num, den)| (exps, BigRational::new(BigInt::from(num), BigInt::from(den)))),
        )
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in arb_poly(2, 5), b in arb_poly(2, 5), c in arb_poly(2, 5)) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), MultiPoly::zero(a.vars().clone()));
        prop_assert_eq!(a.mul(&MultiPoly::one(a.vars().clone())), a.clone());
    }

    #[test]
    fn print_parse_round_trip(a in arb_poly(3, 6)) {
        let text = a.to_string();
        let back = MultiPoly::parse(&text, a.vars()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn json_round_trip(a in arb_poly(3, 6)) {
        let json = serde_json::to_string(&a).unwrap();
        let back: MultiPoly = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn substitution_composes(a in arb_poly(2, 4), b in arb_poly(2, 3)) {
        // substitute then evaluate == evaluate the binding first
        let composed = a.substitute(&[("t1", b.clone())]).unwrap();
        let point = [("t1", rat(2)), ("t2", rat(-3))];
        let lhs = composed.evaluate(&point).unwrap();
        let b_val = b.evaluate(&point).unwrap();
        let rhs = a.evaluate(&[("t1", b_val), ("t2", rat(-3))]).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluate_is_ring_homomorphism(a in arb_poly(2, 5), b in arb_poly(2, 5)) {
        let point = [("t1", rat2(3, 2)), ("t2", rat(-2))];
        let sum = a.add(&b).evaluate(&point).unwrap();
        prop_assert_eq!(sum, a.evaluate(&point).unwrap() + b.evaluate(&point).unwrap());
        let prod = a.mul(&b).evaluate(&point).unwrap();
        prop_assert_eq!(prod, a.evaluate(&point).unwrap() * b.evaluate(&point).unwrap());
    }
}

#[test]
fn one_is_one() {
    let v = tvars(1);
    assert!(MultiPoly::one(v.clone())
        .evaluate(&[("t1", rat(42))])
        .unwrap()
        .is_one());
}
