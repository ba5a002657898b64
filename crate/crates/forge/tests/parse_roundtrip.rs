use constraint_forge::parse::{parse_expr, ParseError};
use constraint_forge_core::bft::closed_form_fields;
use constraint_forge_core::covariant::dot;
use constraint_forge_core::{GaussRational, ScalarExpr, Var};
use proptest::prelude::*;

const VARS: [Var; 13] = Var::ALL;

fn coeff() -> impl Strategy<Value = GaussRational> {
    (-6i64..=6, 1i64..=5, -2i64..=2).prop_map(|(n, d, im)| {
        &GaussRational::from_ratio(n, d) + &(&GaussRational::i() * &GaussRational::from_int(im))
    })
}

fn poly() -> impl Strategy<Value = ScalarExpr> {
    proptest::collection::vec((coeff(), proptest::collection::vec((0..VARS.len(), 1u32..=3), 0..=3)), 1..=4)
        .prop_map(|terms| {
            terms.into_iter().fold(ScalarExpr::zero(), |acc, (c, vs)| {
                let t = vs
                    .into_iter()
                    .fold(ScalarExpr::constant(c), |t, (v, e)| &t * &ScalarExpr::var(VARS[v]).pow(e));
                &acc + &t
            })
        })
}

fn expr() -> impl Strategy<Value = ScalarExpr> {
    (poly(), poly(), poly(), any::<bool>()).prop_map(|(a, b, den, root)| {
        let num = if root { &a + &(&b * &ScalarExpr::root()) } else { a };
        num.checked_div(&den).unwrap_or(num)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn print_then_parse_is_identity(e in expr()) {
        let text = e.to_string();
        let back = parse_expr(&text).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
        prop_assert_eq!(back, e, "{}", text);
    }
}

#[test]
fn hamiltonian_integrand() {
    let e = parse_expr("(K - 2*P*pi_theta + S*pi_theta^2) * S / (S + 2*theta)").unwrap();
    let (_, pi_t) = closed_form_fields();
    assert_eq!(e, dot(&pi_t, &pi_t));
}

#[test]
fn rejects_bad_input() {
    assert!(matches!(parse_expr("1/0"), Err(ParseError::Algebra { .. })));
    assert!(matches!(parse_expr("x"), Err(ParseError::UnknownIdentifier { pos: 0, .. })));
    assert!(matches!(parse_expr(""), Err(ParseError::UnexpectedEnd { pos: 0 })));
    assert!(matches!(parse_expr("S^99999999999"), Err(ParseError::BadExponent { pos: 2 })));
    assert!(parse_expr("((S)").is_err());
    assert!(parse_expr("S)").is_err());
}
