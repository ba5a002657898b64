//! Exact evaluation of invariant expressions at concrete component points.
//!
//! This is the bridge to componentwise oracles: a point fixes an integer
//! dimension `d0` and rational values for every coordinate, so `S`, `P`, `K`
//! and `R` become numbers.

use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::coeff::GaussRational;
use crate::covariant::{Tensor2Expr, VectorExpr};
use crate::error::{AlgebraError, Result};
use crate::poly::{Poly, Var};
use crate::ratfun::RatFun;
use crate::scalar::{root_radicand, ScalarExpr};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointAssignment {
    pub q: Vec<BigRational>,
    pub pi: Vec<BigRational>,
    pub theta: BigRational,
    pub pi_theta: BigRational,
    pub n1: BigRational,
    pub b1: BigRational,
    pub n2: BigRational,
    pub b2: BigRational,
    pub c: Option<BigRational>,
    pub l: Option<BigRational>,
    pub eps: Option<BigRational>,
}

fn sum_products(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

impl PointAssignment {
    /// Point with the given coordinates and momenta; the rest start at zero.
    pub fn new(q: Vec<BigRational>, pi: Vec<BigRational>) -> Self {
        assert_eq!(q.len(), pi.len(), "q and pi must have the same length");
        Self {
            q,
            pi,
            theta: BigRational::zero(),
            pi_theta: BigRational::zero(),
            n1: BigRational::zero(),
            b1: BigRational::zero(),
            n2: BigRational::zero(),
            b2: BigRational::zero(),
            c: None,
            l: None,
            eps: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.q.len()
    }

    pub fn s(&self) -> BigRational {
        sum_products(&self.q, &self.q)
    }

    pub fn p(&self) -> BigRational {
        sum_products(&self.q, &self.pi)
    }

    pub fn k(&self) -> BigRational {
        sum_products(&self.pi, &self.pi)
    }

    /// Value of a generator or parameter symbol.
    pub fn value(&self, v: Var) -> Result<BigRational> {
        Ok(match v {
            Var::S => self.s(),
            Var::P => self.p(),
            Var::K => self.k(),
            Var::Theta => self.theta.clone(),
            Var::PiTheta => self.pi_theta.clone(),
            Var::N1 => self.n1.clone(),
            Var::B1 => self.b1.clone(),
            Var::N2 => self.n2.clone(),
            Var::B2 => self.b2.clone(),
            Var::D => BigRational::from_integer((self.dim() as i64).into()),
            Var::C => self.c.clone().ok_or(AlgebraError::UnboundParameter(v))?,
            Var::L => self.l.clone().ok_or(AlgebraError::UnboundParameter(v))?,
            Var::Eps => self.eps.clone().ok_or(AlgebraError::UnboundParameter(v))?,
        })
    }

    /// `S != 0`, and when `needs_root`, `(S + 2 theta)/S` is the square of a
    /// positive rational.
    pub fn is_admissible(&self, needs_root: bool) -> bool {
        if self.s().is_zero() {
            return false;
        }
        !needs_root || self.root_value().is_ok()
    }

    /// The positive value of `R`.
    pub fn root_value(&self) -> Result<BigRational> {
        let s = self.s();
        if s.is_zero() {
            return Err(AlgebraError::SingularPoint);
        }
        let rho = (&s + &self.theta * BigRational::from_integer(2.into())) / s;
        if !rho.is_positive() {
            return Err(AlgebraError::IrrationalRoot);
        }
        GaussRational::real(rho)
            .rational_sqrt()
            .ok_or(AlgebraError::IrrationalRoot)
    }

    fn eval_poly(&self, p: &Poly) -> Result<GaussRational> {
        for v in Var::ALL {
            if p.contains_var(v) {
                self.value(v)?;
            }
        }
        Ok(p.evaluate(
            GaussRational::one(),
            |c| c.clone(),
            |v| GaussRational::real(self.value(v).expect("bound above")),
        ))
    }

    fn eval_ratfun(&self, r: &RatFun) -> Result<GaussRational> {
        let num = self.eval_poly(r.numerator())?;
        let den = self.eval_poly(&r.denominator())?;
        if den.is_zero() {
            return Err(AlgebraError::SingularPoint);
        }
        Ok(&num / &den)
    }

    pub fn eval_scalar(&self, e: &ScalarExpr) -> Result<GaussRational> {
        let a = self.eval_ratfun(e.rational_part())?;
        if !e.has_root() {
            return Ok(a);
        }
        let b = self.eval_ratfun(e.root_part())?;
        let r = GaussRational::real(self.root_value()?);
        Ok(&a + &(&b * &r))
    }

    /// The `d0` components of a vector expression.
    pub fn eval_vector(&self, v: &VectorExpr) -> Result<Vec<GaussRational>> {
        let a = self.eval_scalar(&v.q)?;
        let b = self.eval_scalar(&v.pi)?;
        Ok((0..self.dim())
            .map(|i| {
                &(&a * &GaussRational::real(self.q[i].clone()))
                    + &(&b * &GaussRational::real(self.pi[i].clone()))
            })
            .collect())
    }

    /// Components `T[i][j]`.
    pub fn eval_tensor(&self, t: &Tensor2Expr) -> Result<Vec<Vec<GaussRational>>> {
        let c: Vec<GaussRational> = t
            .parts()
            .iter()
            .map(|p| self.eval_scalar(p))
            .collect::<Result<_>>()?;
        let n = self.dim();
        let re = |x: &BigRational| GaussRational::real(x.clone());
        Ok((0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut x = if i == j { c[0].clone() } else { GaussRational::zero() };
                        x += &(&c[1] * &re(&(&self.q[i] * &self.q[j])));
                        x += &(&c[2] * &re(&(&self.q[i] * &self.pi[j])));
                        x += &(&c[3] * &re(&(&self.pi[i] * &self.q[j])));
                        x += &(&c[4] * &re(&(&self.pi[i] * &self.pi[j])));
                        x
                    })
                    .collect()
            })
            .collect())
    }
}

/// Radicand of `R` evaluated at the point, for consistency checks.
pub fn radicand_at(pt: &PointAssignment) -> Result<GaussRational> {
    pt.eval_scalar(&ScalarExpr::from(root_radicand()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn s_at_point() {
        let pt = PointAssignment::new(vec![r(1, 1), r(2, 1), r(2, 1)], vec![r(0, 1); 3]);
        assert_eq!(pt.eval_scalar(&ScalarExpr::s()).unwrap(), GaussRational::from_int(9));
    }

    #[test]
    fn p_at_point() {
        let pt = PointAssignment::new(vec![r(1, 1), r(0, 1), r(0, 1)], vec![r(3, 1), r(5, 1), r(7, 1)]);
        assert_eq!(pt.eval_scalar(&ScalarExpr::p()).unwrap(), GaussRational::from_int(3));
    }

    #[test]
    fn root_rational_case() {
        let mut pt = PointAssignment::new(vec![r(1, 1), r(0, 1), r(0, 1)], vec![r(0, 1); 3]);
        pt.theta = r(3, 2);
        assert_eq!(pt.eval_scalar(&ScalarExpr::root()).unwrap(), GaussRational::from_int(2));
        pt.theta = r(1, 1);
        assert_eq!(pt.eval_scalar(&ScalarExpr::root()), Err(AlgebraError::IrrationalRoot));
    }

    #[test]
    fn singular_point_rejected() {
        let pt = PointAssignment::new(vec![r(0, 1); 2], vec![r(1, 1); 2]);
        let inv_s = ScalarExpr::s().inv().unwrap();
        assert_eq!(pt.eval_scalar(&inv_s), Err(AlgebraError::SingularPoint));
    }

    #[test]
    fn dimension_symbol_is_d0() {
        let pt = PointAssignment::new(vec![r(1, 1); 4], vec![r(0, 1); 4]);
        assert_eq!(pt.eval_scalar(&ScalarExpr::d()).unwrap(), GaussRational::from_int(4));
        assert_eq!(pt.eval_scalar(&ScalarExpr::c()), Err(AlgebraError::UnboundParameter(Var::C)));
    }
}
