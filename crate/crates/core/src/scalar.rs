//! O(d)-invariant phase-space functions.
//!
//! A [`ScalarExpr`] is `A + B*R` where `A`, `B` are rational functions of the
//! generators `S = q.q`, `P = q.pi`, `K = pi.pi`, the auxiliary pair
//! `theta, pi_theta`, the BFV pairs `N1, B1, N2, B2` and the parameter
//! symbols, and `R = sqrt((S + 2 theta)/S)`. Products reduce `R^2` to its
//! radicand, so every value stays linear in `R` and the representation is
//! unique.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::coeff::GaussRational;
use crate::error::{AlgebraError, Result};
use crate::poly::Var;
use crate::ratfun::RatFun;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScalarExpr {
    rat: RatFun,
    root: RatFun,
}

/// `R^2 = (S + 2 theta) / S`.
pub fn root_radicand() -> RatFun {
    let s = RatFun::var(Var::S);
    let num = &s + &(&RatFun::int(2) * &RatFun::var(Var::Theta));
    num.checked_div(&s).expect("S is nonzero")
}

/// `dR/dv = R * factor`; `None` when `R` does not depend on `v`.
fn root_log_derivative(v: Var) -> Option<RatFun> {
    let s = RatFun::var(Var::S);
    let th = RatFun::var(Var::Theta);
    let s2t = &s + &(&RatFun::int(2) * &th);
    match v {
        Var::S => Some((-&th).checked_div(&(&s * &s2t)).expect("nonzero")),
        Var::Theta => Some(RatFun::one().checked_div(&s2t).expect("nonzero")),
        _ => None,
    }
}

impl ScalarExpr {
    pub fn new(rational: RatFun, root_coeff: RatFun) -> Self {
        Self {
            rat: rational,
            root: root_coeff,
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn int(n: i64) -> Self {
        Self::from(RatFun::int(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::constant(GaussRational::from_ratio(num, den))
    }

    pub fn constant(c: GaussRational) -> Self {
        Self::from(RatFun::constant(c))
    }

    pub fn i() -> Self {
        Self::constant(GaussRational::i())
    }

    pub fn var(v: Var) -> Self {
        Self::from(RatFun::var(v))
    }

    pub fn s() -> Self {
        Self::var(Var::S)
    }
    pub fn p() -> Self {
        Self::var(Var::P)
    }
    pub fn k() -> Self {
        Self::var(Var::K)
    }
    pub fn theta() -> Self {
        Self::var(Var::Theta)
    }
    pub fn pi_theta() -> Self {
        Self::var(Var::PiTheta)
    }
    pub fn d() -> Self {
        Self::var(Var::D)
    }
    pub fn c() -> Self {
        Self::var(Var::C)
    }

    /// The algebraic root `R`.
    pub fn root() -> Self {
        Self::new(RatFun::zero(), RatFun::one())
    }

    pub fn rational_part(&self) -> &RatFun {
        &self.rat
    }

    /// Coefficient of `R`.
    pub fn root_part(&self) -> &RatFun {
        &self.root
    }

    pub fn has_root(&self) -> bool {
        !self.root.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.root.is_zero()
    }

    pub fn as_constant(&self) -> Option<GaussRational> {
        if self.has_root() {
            return None;
        }
        self.rat.as_constant()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.rat.contains_var(v)
            || self.root.contains_var(v)
            || (self.has_root() && matches!(v, Var::S | Var::Theta))
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        Self::new(self.rat.scale(c), self.root.scale(c))
    }

    /// Canonical form. Every constructor already normalizes, so this is a
    /// rebuild of the same value and is idempotent.
    pub fn normalize(&self) -> Self {
        let rebuild = |r: &RatFun| {
            RatFun::from_fraction(r.numerator().clone(), r.denominator()).expect("nonzero denominator")
        };
        Self::new(rebuild(&self.rat), rebuild(&self.root))
    }

    pub fn inv(&self) -> Result<Self> {
        if !self.has_root() {
            return self.rat.inv().map(Self::from).ok_or(AlgebraError::DivisionByZero);
        }
        // 1/(a + bR) = (a - bR) / (a^2 - b^2 rho)
        let norm = &(&self.rat * &self.rat) - &(&(&self.root * &self.root) * &root_radicand());
        let inv = norm.inv().ok_or(AlgebraError::DivisionByZero)?;
        Ok(Self::new(&self.rat * &inv, &(-&self.root) * &inv))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn powi(&self, e: i32) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Partial derivative with respect to a generator or parameter, treating
    /// `R` as the function of `S` and `theta` it stands for.
    pub fn derivative(&self, v: Var) -> Self {
        let da = self.rat.derivative(v);
        let mut db = self.root.derivative(v);
        if self.has_root() {
            if let Some(r) = root_log_derivative(v) {
                db = &db + &(&self.root * &r);
            }
        }
        Self::new(da, db)
    }

    /// Replace `v` by an `R`-free expression.
    pub fn substitute(&self, v: Var, value: &ScalarExpr) -> Result<Self> {
        if value.has_root() {
            return Err(AlgebraError::Unsupported("substituting an expression containing R".into()));
        }
        let val = &value.rat;
        let a = self.rat.substitute(v, val).ok_or(AlgebraError::DivisionByZero)?;
        let b = self.root.substitute(v, val).ok_or(AlgebraError::DivisionByZero)?;
        if b.is_zero() || !matches!(v, Var::S | Var::Theta) {
            return Ok(Self::new(a, b));
        }
        let rho = root_radicand();
        let rho_new = rho.substitute(v, val).ok_or(AlgebraError::DivisionByZero)?;
        if rho_new == rho {
            return Ok(Self::new(a, b));
        }
        let root_value = rho_new
            .as_constant()
            .and_then(|c| c.rational_sqrt())
            .ok_or(AlgebraError::RootNotRepresentable(v))?;
        let b = b.scale(&GaussRational::real(root_value));
        Ok(Self::from(&a + &b))
    }

    /// Substitute several variables in turn.
    pub fn substitute_all(&self, subs: &[(Var, ScalarExpr)]) -> Result<Self> {
        subs.iter()
            .try_fold(self.clone(), |acc, (v, val)| acc.substitute(*v, val))
    }

    /// Substitute while keeping the symbol `R` untouched. Only meaningful when
    /// the caller maps the radicand consistently (see on-shell reduction).
    pub(crate) fn substitute_keep_root(&self, v: Var, value: &ScalarExpr) -> Result<Self> {
        if value.has_root() {
            return Err(AlgebraError::Unsupported("substituting an expression containing R".into()));
        }
        let a = self.rat.substitute(v, &value.rat).ok_or(AlgebraError::DivisionByZero)?;
        let b = self.root.substitute(v, &value.rat).ok_or(AlgebraError::DivisionByZero)?;
        Ok(Self::new(a, b))
    }
}

impl From<RatFun> for ScalarExpr {
    fn from(rat: RatFun) -> Self {
        Self {
            rat,
            root: RatFun::zero(),
        }
    }
}

impl From<i64> for ScalarExpr {
    fn from(n: i64) -> Self {
        Self::int(n)
    }
}

impl<'a> Add<&'a ScalarExpr> for &'a ScalarExpr {
    type Output = ScalarExpr;
    fn add(self, rhs: &ScalarExpr) -> ScalarExpr {
        ScalarExpr::new(&self.rat + &rhs.rat, &self.root + &rhs.root)
    }
}

impl<'a> Sub<&'a ScalarExpr> for &'a ScalarExpr {
    type Output = ScalarExpr;
    fn sub(self, rhs: &ScalarExpr) -> ScalarExpr {
        ScalarExpr::new(&self.rat - &rhs.rat, &self.root - &rhs.root)
    }
}

impl<'a> Mul<&'a ScalarExpr> for &'a ScalarExpr {
    type Output = ScalarExpr;
    fn mul(self, rhs: &ScalarExpr) -> ScalarExpr {
        if !self.has_root() && !rhs.has_root() {
            return ScalarExpr::from(&self.rat * &rhs.rat);
        }
        let mut rat = &self.rat * &rhs.rat;
        let bd = &self.root * &rhs.root;
        if !bd.is_zero() {
            rat = &rat + &(&bd * &root_radicand());
        }
        let root = &(&self.rat * &rhs.root) + &(&self.root * &rhs.rat);
        ScalarExpr::new(rat, root)
    }
}

impl Neg for &ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        ScalarExpr::new(-&self.rat, -&self.root)
    }
}

impl Neg for ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ScalarExpr> for ScalarExpr {
            type Output = ScalarExpr;
            fn $m(self, rhs: ScalarExpr) -> ScalarExpr {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Printed in the expression grammar so the parser can read it back.
impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.has_root() {
            return write!(f, "{}", self.rat);
        }
        if !self.rat.is_zero() {
            write!(f, "{} + ", self.rat)?;
        }
        if self.root == RatFun::one() {
            f.write_str("R")
        } else {
            write!(f, "({})*R", self.root)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn root_squares_to_radicand() {
        let r = ScalarExpr::root();
        let expect = (&ScalarExpr::s() + &(&ScalarExpr::int(2) * &ScalarExpr::theta()))
            .checked_div(&ScalarExpr::s())
            .unwrap();
        assert_eq!(&r * &r, expect);
        assert!(!(&r * &r).has_root());
    }

    #[test]
    fn inverse_through_conjugate() {
        let e = &ScalarExpr::one() + &(&ScalarExpr::p() * &ScalarExpr::root());
        let inv = e.inv().unwrap();
        assert_eq!(&e * &inv, ScalarExpr::one());
    }

    #[test]
    fn zero_division_is_an_error() {
        let z = &ScalarExpr::s() - &ScalarExpr::s();
        assert!(z.is_zero());
        assert_eq!(ScalarExpr::one().checked_div(&z), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn root_derivatives() {
        // dR/dtheta = 1/(S R)
        let r = ScalarExpr::root();
        let expect = (&ScalarExpr::s() * &r).inv().unwrap();
        assert_eq!(r.derivative(Var::Theta), expect);
        // dR/dS = -theta/(S^2 R)
        let expect = (-ScalarExpr::theta())
            .checked_div(&(&ScalarExpr::s().pow(2) * &r))
            .unwrap();
        assert_eq!(r.derivative(Var::S), expect);
    }

    #[test]
    fn theta_zero_collapses_root() {
        let e = &ScalarExpr::p() * &ScalarExpr::root();
        assert_eq!(e.substitute(Var::Theta, &ScalarExpr::zero()).unwrap(), ScalarExpr::p());
        assert_eq!(
            e.substitute(Var::Theta, &ScalarExpr::one()),
            Err(AlgebraError::RootNotRepresentable(Var::Theta))
        );
    }

    #[test]
    fn display_with_root() {
        let e = &ScalarExpr::s() + &(&ScalarExpr::int(2) * &ScalarExpr::root());
        assert_eq!(e.to_string(), "S + (2)*R");
        assert_eq!(ScalarExpr::root().to_string(), "R");
    }

    #[test]
    fn normalize_is_idempotent() {
        let e = (&ScalarExpr::s().pow(2) * &ScalarExpr::p())
            .checked_div(&ScalarExpr::s())
            .unwrap();
        assert_eq!(e.normalize(), e);
        assert_eq!(e.normalize().normalize().to_string(), e.normalize().to_string());
        assert_eq!(e.to_string(), "S*P");
    }
}
