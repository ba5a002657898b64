mod common;

use common::*;
use constraint_forge_core::brackets::{poisson_scalar, reduce_on_shell, BracketTable, ConstraintSet, Sector};
use constraint_forge_core::{PhaseExpr, ScalarExpr, VectorExpr};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn antisymmetry_and_leibniz(f in scalar(), g in scalar(), h in scalar()) {
        prop_assert_eq!(poisson_scalar(&f, &g), -poisson_scalar(&g, &f));
        let lhs = poisson_scalar(&f, &(&g * &h));
        let rhs = &(&poisson_scalar(&f, &g) * &h) + &(&g * &poisson_scalar(&f, &h));
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn jacobi(f in scalar(), g in scalar(), h in scalar()) {
        let j = &(&poisson_scalar(&f, &poisson_scalar(&g, &h)) + &poisson_scalar(&g, &poisson_scalar(&h, &f)))
            + &poisson_scalar(&h, &poisson_scalar(&f, &g));
        prop_assert!(j.is_zero(), "Jacobi residual {}", j);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn constraints_are_dirac_casimirs(x in scalar(), a in poly(PHASE), b in poly(PHASE)) {
        let cs = ConstraintSet::sphere();
        let v = VectorExpr::new(a, b);
        for om in cs.constraints() {
            let om: PhaseExpr = om.clone().into();
            prop_assert!(cs.dirac(&om, &x.clone().into()).unwrap().is_zero());
            prop_assert!(cs.dirac(&om, &v.clone().into()).unwrap().is_zero());
        }
    }
}

#[test]
fn generator_table_entries() {
    let t = BracketTable::full();
    assert_eq!(t.check_jacobi(), None);
    assert_eq!(BracketTable::new(Sector::Particle).check_jacobi(), None);
    let s = ScalarExpr::s();
    let k = ScalarExpr::k();
    assert_eq!(poisson_scalar(&s, &k), &ScalarExpr::int(4) * &ScalarExpr::p());
    let aux = BracketTable::new(Sector::Auxiliary);
    assert!(aux.scalar(&s, &k).is_zero());
    assert_eq!(aux.scalar(&ScalarExpr::theta(), &ScalarExpr::pi_theta()), ScalarExpr::one());
}

#[test]
fn dirac_bracket_matrix() {
    let cs = ConstraintSet::sphere();
    let s = ScalarExpr::s();
    let d = cs.delta();
    assert!(d[0][0].is_zero() && d[1][1].is_zero());
    assert_eq!(d[0][1], &ScalarExpr::int(2) * &s);
    assert_eq!(d[1][0], &ScalarExpr::int(-2) * &s);
    assert!(cs.inverse_residual().iter().flatten().all(|x| x.is_zero()));
    // a single-constraint-like degenerate pair is rejected
    assert!(ConstraintSet::new(s.clone(), &s * &s).is_err());
}

#[test]
fn on_shell_after_bracket() {
    let cs = ConstraintSet::sphere();
    let r = reduce_on_shell(&cs.delta()[0][1]).unwrap();
    assert_eq!(r.value(), &ScalarExpr::int(2));
}
