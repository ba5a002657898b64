mod common;

use common::poly;
use constraint_forge_core::graded::*;
use constraint_forge_core::{ScalarExpr, Var};
use proptest::prelude::*;

const VARS: &[Var] = &[Var::S, Var::P, Var::K, Var::Theta, Var::PiTheta, Var::N1, Var::B1, Var::N2, Var::B2];

/// Ghost monomial with the given parity; `Lambda` fixes the parity up.
fn monomial(parity: u32) -> impl Strategy<Value = Vec<Ghost>> {
    proptest::sample::subsequence(Ghost::ALL[1..].to_vec(), 0..=4).prop_map(move |mut gs| {
        if gs.len() as u32 % 2 != parity {
            gs.insert(0, Ghost::Lambda);
        }
        gs
    })
}

fn graded(parity: u32) -> impl Strategy<Value = GradedExpr> {
    proptest::collection::vec((monomial(parity), poly(VARS)), 1..=3).prop_map(|ts| {
        ts.iter()
            .fold(GradedExpr::zero(), |acc, (gs, c)| &acc + &GradedExpr::product(gs, c.clone()))
    })
}

fn any_graded() -> impl Strategy<Value = GradedExpr> {
    (0u32..2).prop_flat_map(graded)
}

fn sign(odd: bool) -> ScalarExpr {
    ScalarExpr::int(if odd { -1 } else { 1 })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graded_antisymmetry(a in any_graded(), b in any_graded()) {
        let (pa, pb) = (a.parity().unwrap(), b.parity().unwrap());
        let ab = super_poisson(&a, &b).unwrap();
        let ba = super_poisson(&b, &a).unwrap();
        prop_assert!((&ab + &ba.scale(&sign(pa * pb == 1))).is_zero());
    }

    #[test]
    fn ghost_number_adds(
        (ga, ca) in (monomial(0), poly(VARS)),
        (gb, cb) in ((0u32..2).prop_flat_map(monomial), poly(VARS)),
    ) {
        let a = GradedExpr::product(&ga, ca);
        let b = GradedExpr::product(&gb, cb);
        let ab = super_poisson(&a, &b).unwrap();
        if let (Some(na), Some(nb)) = (a.ghost_number(), b.ghost_number()) {
            if !ab.is_zero() {
                prop_assert_eq!(ab.ghost_number(), Some(na + nb));
            }
        }
    }

    #[test]
    fn leibniz_in_second_slot(a in any_graded(), b in any_graded(), c in any_graded()) {
        let (pa, pb) = (a.parity().unwrap(), b.parity().unwrap());
        let lhs = super_poisson(&a, &b.mul(&c)).unwrap();
        let rhs = &super_poisson(&a, &b).unwrap().mul(&c)
            + &b.mul(&super_poisson(&a, &c).unwrap()).scale(&sign(pa * pb == 1));
        prop_assert!((&lhs - &rhs).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn graded_jacobi(a in any_graded(), b in any_graded(), c in any_graded()) {
        let (pa, pb, pc) = (a.parity().unwrap(), b.parity().unwrap(), c.parity().unwrap());
        let j = |x: &GradedExpr, y: &GradedExpr, z: &GradedExpr, s: bool| {
            super_poisson(x, &super_poisson(y, z).unwrap()).unwrap().scale(&sign(s))
        };
        let total = &(&j(&a, &b, &c, pa * pc == 1) + &j(&b, &c, &a, pb * pa == 1)) + &j(&c, &a, &b, pc * pb == 1);
        prop_assert!(total.is_zero(), "{}", total);
    }
}

#[test]
fn charge_ghost_numbers() {
    let (q, psi, h) = build_charges();
    assert_eq!(q.ghost_number(), Some(1));
    assert_eq!(psi.ghost_number(), Some(-1));
    assert_eq!(h.ghost_number(), Some(0));
    assert_eq!(q.parity(), Some(1));
}

#[test]
fn charge_is_nilpotent_and_conserved() {
    let (q, psi, h) = build_charges();
    assert!(super_poisson(&q, &q).unwrap().is_zero());
    assert!(super_poisson(&q, &h).unwrap().is_zero());
    // {Psi, Q} is even, ghost number zero
    let pq = super_poisson(&psi, &q).unwrap();
    assert_eq!(pq.parity(), Some(0));
    assert_eq!(pq.ghost_number(), Some(0));
}

#[test]
fn other_orderings_and_charges_fail() {
    let (q, _, _) = build_charges();
    assert!(!super_poisson(&q, &minimal_hamiltonian_swapped()).unwrap().is_zero());
    let bad = second_class_charge();
    assert!(!super_poisson(&bad, &bad).unwrap().is_zero());
}

#[test]
fn every_relation_passes() {
    let findings = verify_brst_relations().unwrap();
    assert!(findings.iter().all(|f| f.passed() || f.status == constraint_forge_core::Status::Info));
    assert!(findings.len() >= 8);
}
