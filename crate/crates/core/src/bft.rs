//! Conversion of the second-class pair into first-class constraints by adding
//! the auxiliary pair `(theta, pi_theta)`, and the matching physical fields
//! and Hamiltonians.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::brackets::{poisson, poisson_scalar, BracketTable, Sector};
use crate::coeff::GaussRational;
use crate::covariant::{dot, PhaseExpr, VectorExpr};
use crate::error::{AlgebraError, Result};
use crate::poly::{Poly, Var};
use crate::scalar::ScalarExpr;

pub const DEFAULT_ORDER: usize = 6;

/// `Phi^1 = theta`, `Phi^2 = pi_theta`.
pub fn aux_fields() -> [ScalarExpr; 2] {
    [ScalarExpr::theta(), ScalarExpr::pi_theta()]
}

/// Symplectic form `omega^ab = eps^ab`, structure matrix `X_ab` and the
/// truncation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BftConfig {
    pub x: [[ScalarExpr; 2]; 2],
    pub order: usize,
}

impl Default for BftConfig {
    fn default() -> Self {
        Self::new(DEFAULT_ORDER)
    }
}

impl BftConfig {
    /// `X = diag(2, -S)`.
    pub fn new(order: usize) -> Self {
        Self {
            x: [
                [ScalarExpr::int(2), ScalarExpr::zero()],
                [ScalarExpr::zero(), -ScalarExpr::s()],
            ],
            order,
        }
    }

    /// `omega^ab`, with `omega^12 = +1`.
    pub fn omega_upper() -> [[ScalarExpr; 2]; 2] {
        [
            [ScalarExpr::zero(), ScalarExpr::one()],
            [ScalarExpr::int(-1), ScalarExpr::zero()],
        ]
    }

    /// `omega_ab`, the matrix inverse of `omega^ab`.
    pub fn omega_lower() -> [[ScalarExpr; 2]; 2] {
        [
            [ScalarExpr::zero(), ScalarExpr::int(-1)],
            [ScalarExpr::one(), ScalarExpr::zero()],
        ]
    }

    /// `X^ab`, the matrix inverse of `X_ab`.
    pub fn x_inverse(&self) -> Result<[[ScalarExpr; 2]; 2]> {
        let x = &self.x;
        let det = &(&x[0][0] * &x[1][1]) - &(&x[0][1] * &x[1][0]);
        let inv = det.inv().map_err(|_| AlgebraError::SingularStructureMatrix)?;
        Ok([
            [&x[1][1] * &inv, &(-&x[0][1]) * &inv],
            [&(-&x[1][0]) * &inv, &x[0][0] * &inv],
        ])
    }

    /// `X omega X^T + Delta`, which must vanish for the zeroth-order
    /// condition to hold.
    pub fn zeroth_order_residual(&self, delta: &[[ScalarExpr; 2]; 2]) -> [[ScalarExpr; 2]; 2] {
        let w = Self::omega_upper();
        [0, 1].map(|a| {
            [0, 1].map(|b| {
                let mut acc = delta[a][b].clone();
                for c in 0..2 {
                    for d in 0..2 {
                        acc = &acc + &(&(&self.x[a][c] * &w[c][d]) * &self.x[b][d]);
                    }
                }
                acc
            })
        })
    }

    /// Constraint terms `Omega_a^(k)`: the original constraint at `k = 0`,
    /// `X_ab Phi^b` at `k = 1`, zero beyond.
    fn constraint_term(&self, a: usize, k: usize) -> ScalarExpr {
        match k {
            0 => original_constraints()[a].clone(),
            1 => {
                let phi = aux_fields();
                &(&self.x[a][0] * &phi[0]) + &(&self.x[a][1] * &phi[1])
            }
            _ => ScalarExpr::zero(),
        }
    }
}

/// `Omega_1 = S - 1`, `Omega_2 = P`.
pub fn original_constraints() -> [ScalarExpr; 2] {
    [&ScalarExpr::s() - &ScalarExpr::one(), ScalarExpr::p()]
}

/// `Omega~_1 = Omega_1 + 2 theta`, `Omega~_2 = Omega_2 - S pi_theta`.
pub fn first_class_constraints() -> (ScalarExpr, ScalarExpr) {
    let [o1, o2] = original_constraints();
    (
        &o1 + &(&ScalarExpr::int(2) * &ScalarExpr::theta()),
        &o2 - &(&ScalarExpr::s() * &ScalarExpr::pi_theta()),
    )
}

/// Split an `R`-free expression by total degree in `(theta, pi_theta)`.
/// Denominators must not involve the auxiliary pair.
pub fn aux_degree_parts(e: &ScalarExpr) -> Result<BTreeMap<u32, ScalarExpr>> {
    if e.has_root() {
        return Err(AlgebraError::Unsupported("auxiliary degree of an expression with R".into()));
    }
    let r = e.rational_part();
    if r.denominator_factors()
        .any(|(a, _)| a.contains_var(Var::Theta) || a.contains_var(Var::PiTheta))
    {
        return Err(AlgebraError::Unsupported("auxiliary field in a denominator".into()));
    }
    let mut split: BTreeMap<u32, Vec<_>> = BTreeMap::new();
    for (m, c) in r.numerator().terms() {
        let deg = m.exponent(Var::Theta) as u32 + m.exponent(Var::PiTheta) as u32;
        split.entry(deg).or_default().push((*m, c.clone()));
    }
    Ok(split
        .into_iter()
        .map(|(k, terms)| (k, ScalarExpr::from(r.with_numerator(Poly::from_terms(terms)))))
        .collect())
}

/// `(theta, pi_theta)` degree of an expression homogeneous in them.
pub fn aux_degree(e: &ScalarExpr) -> Option<u32> {
    let parts = aux_degree_parts(e).ok()?;
    match parts.len() {
        1 => parts.keys().next().copied(),
        _ => None,
    }
}

/// Terms `F^(0) .. F^(N)` of a first-class field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSeries {
    terms: Vec<VectorExpr>,
}

impl FieldSeries {
    pub fn terms(&self) -> &[VectorExpr] {
        &self.terms
    }

    pub fn order(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn term(&self, n: usize) -> Option<&VectorExpr> {
        self.terms.get(n)
    }

    /// Every term `n` is zero or of auxiliary degree exactly `n`.
    pub fn degrees_consistent(&self) -> bool {
        self.terms.iter().enumerate().all(|(n, t)| {
            [&t.q, &t.pi]
                .into_iter()
                .all(|c| c.is_zero() || aux_degree(c) == Some(n as u32))
        })
    }

    pub fn partial_sum(&self) -> VectorExpr {
        self.terms
            .iter()
            .fold(VectorExpr::zero(), |acc, t| &acc + t)
    }

    /// Parts of `{Omega~_a, partial sum}` of auxiliary degree below the
    /// truncation order, keyed by `(a, degree)`. Empty when the truncated
    /// field is involutive to that order.
    pub fn involution_defects(&self) -> Result<Vec<((usize, u32), VectorExpr)>> {
        let (t1, t2) = first_class_constraints();
        let sum = self.partial_sum();
        let mut out = Vec::new();
        for (a, om) in [t1, t2].iter().enumerate() {
            let b = BracketTable::full().scalar_vector(om, &sum);
            let qs = aux_degree_parts(&b.q)?;
            let ps = aux_degree_parts(&b.pi)?;
            for k in 0..self.order() as u32 {
                let v = VectorExpr::new(
                    qs.get(&k).cloned().unwrap_or_default(),
                    ps.get(&k).cloned().unwrap_or_default(),
                );
                if !v.is_zero() {
                    out.push(((a, k), v));
                }
            }
        }
        Ok(out)
    }
}

/// Run the order-by-order construction
/// `F^(n+1) = -1/(n+1) Phi^a omega_ab X^bc G_c^(n)` from `seed`.
///
/// `G_a^(n)` collects particle-sector brackets of `Omega_a^(n-m)` with
/// `F^(m)`, auxiliary-sector brackets with `F^(m+2)`, and for `n >= 1` the
/// term `{Omega_a^(n+1), F^(1)}`. At `n = 0` that last term is the very
/// unknown being solved for, so it is left out.
pub fn iterate_field(seed: &VectorExpr, cfg: &BftConfig) -> Result<FieldSeries> {
    let xinv = cfg.x_inverse()?;
    let w = BftConfig::omega_lower();
    let phi = aux_fields();
    let part = BracketTable::new(Sector::Particle);
    let aux = BracketTable::new(Sector::Auxiliary);
    let mut terms = alloc::vec![seed.clone()];
    for n in 0..cfg.order {
        let g: Vec<VectorExpr> = (0..2)
            .map(|a| {
                let mut acc = VectorExpr::zero();
                for m in 0..=n {
                    acc = &acc + &part.scalar_vector(&cfg.constraint_term(a, n - m), &terms[m]);
                }
                for m in 0..(n.saturating_sub(1)) {
                    acc = &acc + &aux.scalar_vector(&cfg.constraint_term(a, n - m), &terms[m + 2]);
                }
                if n >= 1 {
                    acc = &acc + &aux.scalar_vector(&cfg.constraint_term(a, n + 1), &terms[1]);
                }
                acc
            })
            .collect();
        let mut next = VectorExpr::zero();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    let f = &(&phi[a] * &w[a][b]) * &xinv[b][c];
                    if !f.is_zero() {
                        next = &next + &g[c].scale(&f);
                    }
                }
            }
        }
        let k = ScalarExpr::ratio(-1, n as i64 + 1);
        terms.push(next.scale(&k));
    }
    Ok(FieldSeries { terms })
}

/// Resummed fields `q~ = R q` and `pi~ = (pi - q pi_theta) S R / (S + 2 theta)`.
pub fn closed_form_fields() -> (VectorExpr, VectorExpr) {
    let r = ScalarExpr::root();
    let q = VectorExpr::coord().scale(&r);
    let s = ScalarExpr::s();
    let s2t = &s + &(&ScalarExpr::int(2) * &ScalarExpr::theta());
    let factor = (&s * &r).checked_div(&s2t).expect("S + 2 theta is nonzero");
    let shifted = VectorExpr::new(-ScalarExpr::pi_theta(), ScalarExpr::one());
    (q, shifted.scale(&factor))
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn inv_factorial(n: u32) -> ScalarExpr {
    ScalarExpr::constant(GaussRational::real(BigRational::new(BigInt::one(), factorial(n))))
}

/// Homogeneous part of degree `n` in `(theta, pi_theta)` of any expression,
/// including ones with `R`, by Taylor expansion at `theta = pi_theta = 0`.
pub fn aux_homogeneous_part(e: &ScalarExpr, n: u32) -> Result<ScalarExpr> {
    let mut out = ScalarExpr::zero();
    let mut dj = e.clone();
    for j in 0..=n {
        let mut djk = dj.clone();
        for _ in 0..(n - j) {
            djk = djk.derivative(Var::PiTheta);
        }
        let at0 = djk
            .substitute(Var::Theta, &ScalarExpr::zero())?
            .substitute(Var::PiTheta, &ScalarExpr::zero())?;
        if !at0.is_zero() {
            let mono = &ScalarExpr::theta().pow(j) * &ScalarExpr::pi_theta().pow(n - j);
            let w = &inv_factorial(j) * &inv_factorial(n - j);
            out = &out + &(&(&at0 * &mono) * &w);
        }
        dj = dj.derivative(Var::Theta);
    }
    Ok(out)
}

/// Degree-`n` part of a vector field.
pub fn aux_homogeneous_vector(v: &VectorExpr, n: u32) -> Result<VectorExpr> {
    Ok(VectorExpr::new(
        aux_homogeneous_part(&v.q, n)?,
        aux_homogeneous_part(&v.pi, n)?,
    ))
}

/// `k!!` with `(-1)!! = 0!! = 1`.
pub fn double_factorial(k: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut j = k;
    while j > 1 {
        acc *= j;
        j -= 2;
    }
    acc
}

fn ratio(num: BigInt, den: BigInt) -> ScalarExpr {
    ScalarExpr::constant(GaussRational::real(BigRational::new(num, den)))
}

/// Coefficient `a_n` in `q~ = q (1 + sum a_n (theta/S)^n)`:
/// `-(-1)^n (2n-3)!!/n!` for `n >= 1`, and `1` at `n = 0`.
pub fn coord_series_coefficient(n: u32) -> ScalarExpr {
    if n == 0 {
        return ScalarExpr::one();
    }
    let sign = if n.is_multiple_of(2) { -1 } else { 1 };
    ratio(double_factorial(2 * n as i64 - 3) * sign, factorial(n))
}

/// Coefficient `b_n` in `pi~ = (pi - q pi_theta)(1 + sum b_n (theta/S)^n)`:
/// `(-1)^n (2n-1)!!/n!`.
pub fn momentum_series_coefficient(n: u32) -> ScalarExpr {
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    ratio(double_factorial(2 * n as i64 - 1) * sign, factorial(n))
}

fn theta_over_s(n: u32) -> ScalarExpr {
    (ScalarExpr::theta().pow(n))
        .checked_div(&ScalarExpr::s().pow(n))
        .expect("S is nonzero")
}

/// Degree-`n` term predicted by the double-factorial series for `q~`.
pub fn coord_series_term(n: u32) -> VectorExpr {
    VectorExpr::coord().scale(&(&coord_series_coefficient(n) * &theta_over_s(n)))
}

/// Degree-`n` term predicted by the double-factorial series for `pi~`.
pub fn momentum_series_term(n: u32) -> VectorExpr {
    let pi_part = &momentum_series_coefficient(n) * &theta_over_s(n);
    let q_part = if n == 0 {
        ScalarExpr::zero()
    } else {
        -&(&(&momentum_series_coefficient(n - 1) * &theta_over_s(n - 1)) * &ScalarExpr::pi_theta())
    };
    VectorExpr::new(q_part, pi_part)
}

/// `H~ = pi~.pi~ / 2` and `H~' = H~ + pi_theta Omega~_2`.
pub fn first_class_hamiltonians() -> (ScalarExpr, ScalarExpr) {
    let (_, pi_t) = closed_form_fields();
    let h = &ScalarExpr::ratio(1, 2) * &dot(&pi_t, &pi_t);
    let (_, o2) = first_class_constraints();
    let hp = &h + &(&ScalarExpr::pi_theta() * &o2);
    (h, hp)
}

/// `eps * {field, Omega~_2}` with the gauge parameter symbol `eps`.
pub fn gauge_transform(field: &PhaseExpr) -> Result<PhaseExpr> {
    let (_, o2) = first_class_constraints();
    Ok(poisson(field, &o2.into())?.scale(&ScalarExpr::var(Var::Eps)))
}

/// `{Omega~_a, H}` for both constraints.
pub fn involution_with(h: &ScalarExpr) -> [ScalarExpr; 2] {
    let (o1, o2) = first_class_constraints();
    [poisson_scalar(&o1, h), poisson_scalar(&o2, h)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brackets::ConstraintSet;

    #[test]
    fn constraints_are_involutive() {
        let (o1, o2) = first_class_constraints();
        assert!(poisson_scalar(&o1, &o2).is_zero());
    }

    #[test]
    fn zeroth_order_condition() {
        let cfg = BftConfig::default();
        let cs = ConstraintSet::sphere();
        let res = cfg.zeroth_order_residual(cs.delta());
        assert!(res.iter().flatten().all(|x| x.is_zero()));
    }

    #[test]
    fn first_terms_of_coord_series() {
        let s = iterate_field(&VectorExpr::coord(), &BftConfig::new(3)).unwrap();
        let t1 = ScalarExpr::theta().checked_div(&ScalarExpr::s()).unwrap();
        assert_eq!(s.term(1).unwrap(), &VectorExpr::coord().scale(&t1));
        let t2 = &ScalarExpr::ratio(-1, 2) * &t1.pow(2);
        assert_eq!(s.term(2).unwrap(), &VectorExpr::coord().scale(&t2));
        assert!(s.degrees_consistent());
    }

    #[test]
    fn momentum_series_starts_with_shift() {
        let s = iterate_field(&VectorExpr::momentum(), &BftConfig::new(2)).unwrap();
        assert_eq!(s.term(1).unwrap(), &momentum_series_term(1));
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(-1), BigInt::one());
        assert_eq!(double_factorial(5), BigInt::from(15));
        assert_eq!(coord_series_coefficient(2), ScalarExpr::ratio(-1, 2));
        assert_eq!(momentum_series_coefficient(2), ScalarExpr::ratio(3, 2));
    }

    #[test]
    fn closed_forms() {
        let (q, p) = closed_form_fields();
        let (o1, _) = first_class_constraints();
        assert_eq!(dot(&q, &q), &o1 + &ScalarExpr::one());
        let (h, hp) = first_class_hamiltonians();
        let [a, b] = involution_with(&h);
        assert!(a.is_zero() && b.is_zero());
        let [a, b] = involution_with(&hp);
        let (_, o2) = first_class_constraints();
        assert_eq!(a, &ScalarExpr::int(2) * &o2);
        assert!(b.is_zero());
        assert_eq!(aux_homogeneous_vector(&p, 0).unwrap(), VectorExpr::momentum());
    }

    #[test]
    fn gauge_rules() {
        let eps = ScalarExpr::var(Var::Eps);
        let q = gauge_transform(&VectorExpr::coord().into()).unwrap();
        assert_eq!(q, PhaseExpr::Vector(VectorExpr::coord().scale(&eps)));
        let t = gauge_transform(&ScalarExpr::theta().into()).unwrap();
        assert_eq!(t, PhaseExpr::Scalar(-&(&eps * &ScalarExpr::s())));
    }
}
