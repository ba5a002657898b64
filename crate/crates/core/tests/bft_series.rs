use constraint_forge_core::bft::*;
use constraint_forge_core::brackets::{BracketTable, ConstraintSet};
use constraint_forge_core::covariant::dot;
use constraint_forge_core::{PhaseExpr, ScalarExpr, Var, VectorExpr};

fn at_zero_aux(e: &ScalarExpr) -> ScalarExpr {
    e.substitute(Var::Theta, &ScalarExpr::zero())
        .unwrap()
        .substitute(Var::PiTheta, &ScalarExpr::zero())
        .unwrap()
}

#[test]
fn series_matches_closed_form_and_coefficients() {
    let cfg = BftConfig::default();
    let (q_closed, pi_closed) = closed_form_fields();
    let q_series = iterate_field(&VectorExpr::coord(), &cfg).unwrap();
    let pi_series = iterate_field(&VectorExpr::momentum(), &cfg).unwrap();
    assert_eq!(q_series.order(), 6);
    assert!(q_series.degrees_consistent());
    assert!(pi_series.degrees_consistent());
    for n in 0..=6u32 {
        let qt = q_series.term(n as usize).unwrap();
        assert_eq!(qt, &aux_homogeneous_vector(&q_closed, n).unwrap(), "q~ order {}", n);
        assert_eq!(qt, &coord_series_term(n), "q~ coefficient {}", n);
        let pt = pi_series.term(n as usize).unwrap();
        assert_eq!(pt, &aux_homogeneous_vector(&pi_closed, n).unwrap(), "pi~ order {}", n);
        assert_eq!(pt, &momentum_series_term(n), "pi~ coefficient {}", n);
    }
}

#[test]
fn truncated_series_is_involutive_below_order() {
    let cfg = BftConfig::new(4);
    for seed in [VectorExpr::coord(), VectorExpr::momentum()] {
        let s = iterate_field(&seed, &cfg).unwrap();
        assert!(s.involution_defects().unwrap().is_empty());
    }
}

#[test]
fn closed_forms_commute_with_constraints() {
    let (o1, o2) = first_class_constraints();
    let (q, p) = closed_form_fields();
    let t = BracketTable::full();
    for om in [&o1, &o2] {
        assert!(t.scalar_vector(om, &q).is_zero());
        assert!(t.scalar_vector(om, &p).is_zero());
    }
}

#[test]
fn closed_form_contractions() {
    let (q, p) = closed_form_fields();
    let s = ScalarExpr::s();
    let th = ScalarExpr::theta();
    let pt = ScalarExpr::pi_theta();
    let s2t = &s + &(&ScalarExpr::int(2) * &th);
    assert_eq!(dot(&q, &q), s2t);
    let integrand = &(&ScalarExpr::k() - &(&(&ScalarExpr::int(2) * &ScalarExpr::p()) * &pt)) + &(&s * &pt.pow(2));
    assert_eq!(dot(&p, &p), (&integrand * &s).checked_div(&s2t).unwrap());
}

#[test]
fn limits_recover_second_class_system() {
    let (o1, o2) = first_class_constraints();
    let [w1, w2] = original_constraints();
    assert_eq!(at_zero_aux(&o1), w1);
    assert_eq!(at_zero_aux(&o2), w2);
    let h = &ScalarExpr::ratio(1, 2) * &ScalarExpr::k();
    let (ht, htp) = first_class_hamiltonians();
    assert_eq!(at_zero_aux(&ht), h);
    assert_eq!(at_zero_aux(&htp), h);
    let (q, p) = closed_form_fields();
    assert_eq!(VectorExpr::new(at_zero_aux(&q.q), at_zero_aux(&q.pi)), VectorExpr::coord());
    assert_eq!(VectorExpr::new(at_zero_aux(&p.q), at_zero_aux(&p.pi)), VectorExpr::momentum());
}

#[test]
fn gauss_law_generation() {
    let (_, o2) = first_class_constraints();
    let (h, hp) = first_class_hamiltonians();
    let [a, b] = involution_with(&h);
    assert!(a.is_zero() && b.is_zero());
    let [a, b] = involution_with(&hp);
    assert_eq!(a, &ScalarExpr::int(2) * &o2);
    assert!(b.is_zero());
}

#[test]
fn zeroth_order_condition_and_gauge_rules() {
    let cfg = BftConfig::default();
    assert!(cfg
        .zeroth_order_residual(ConstraintSet::sphere().delta())
        .iter()
        .flatten()
        .all(|x| x.is_zero()));
    let eps = ScalarExpr::var(Var::Eps);
    let pt = gauge_transform(&ScalarExpr::pi_theta().into()).unwrap();
    // reported, not a stated rule: eps * {pi_theta, P - S pi_theta} = 0
    assert_eq!(pt, PhaseExpr::Scalar(ScalarExpr::zero()));
    let th = gauge_transform(&ScalarExpr::theta().into()).unwrap();
    assert_eq!(th, PhaseExpr::Scalar(-&(&eps * &ScalarExpr::s())));
}

#[test]
fn singular_structure_matrix_rejected() {
    let mut cfg = BftConfig::default();
    cfg.x[1][1] = ScalarExpr::zero();
    assert!(iterate_field(&VectorExpr::coord(), &cfg).is_err());
}
