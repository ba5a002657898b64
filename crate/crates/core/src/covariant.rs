//! One- and two-index O(d)-covariant objects with scalar coefficients.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{AlgebraError, Result};
use crate::poly::Var;
use crate::scalar::ScalarExpr;

/// Index-carrying basis vectors.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Basis {
    Q,
    Pi,
}

/// `a * q_i + b * pi_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VectorExpr {
    pub q: ScalarExpr,
    pub pi: ScalarExpr,
}

impl VectorExpr {
    pub fn new(q: ScalarExpr, pi: ScalarExpr) -> Self {
        Self { q, pi }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `q_i`
    pub fn coord() -> Self {
        Self::new(ScalarExpr::one(), ScalarExpr::zero())
    }

    /// `pi_i`
    pub fn momentum() -> Self {
        Self::new(ScalarExpr::zero(), ScalarExpr::one())
    }

    pub fn basis(b: Basis) -> Self {
        match b {
            Basis::Q => Self::coord(),
            Basis::Pi => Self::momentum(),
        }
    }

    pub fn component(&self, b: Basis) -> &ScalarExpr {
        match b {
            Basis::Q => &self.q,
            Basis::Pi => &self.pi,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero() && self.pi.is_zero()
    }

    pub fn scale(&self, s: &ScalarExpr) -> Self {
        Self::new(s * &self.q, s * &self.pi)
    }

    pub fn map<F: FnMut(&ScalarExpr) -> Result<ScalarExpr>>(&self, mut f: F) -> Result<Self> {
        Ok(Self::new(f(&self.q)?, f(&self.pi)?))
    }

    pub fn substitute(&self, v: Var, value: &ScalarExpr) -> Result<Self> {
        self.map(|c| c.substitute(v, value))
    }

    /// Outer product `self_i * other_j`.
    pub fn outer(&self, other: &VectorExpr) -> Tensor2Expr {
        Tensor2Expr {
            delta: ScalarExpr::zero(),
            qq: &self.q * &other.q,
            qpi: &self.q * &other.pi,
            piq: &self.pi * &other.q,
            pipi: &self.pi * &other.pi,
        }
    }
}

/// Contraction using `q.q = S`, `q.pi = P`, `pi.pi = K`.
pub fn dot(v: &VectorExpr, w: &VectorExpr) -> ScalarExpr {
    let qq = &v.q * &w.q;
    let qp = &(&v.q * &w.pi) + &(&v.pi * &w.q);
    let pp = &v.pi * &w.pi;
    &(&(&qq * &ScalarExpr::s()) + &(&qp * &ScalarExpr::p())) + &(&pp * &ScalarExpr::k())
}

impl<'a> Add<&'a VectorExpr> for &'a VectorExpr {
    type Output = VectorExpr;
    fn add(self, rhs: &VectorExpr) -> VectorExpr {
        VectorExpr::new(&self.q + &rhs.q, &self.pi + &rhs.pi)
    }
}

impl<'a> Sub<&'a VectorExpr> for &'a VectorExpr {
    type Output = VectorExpr;
    fn sub(self, rhs: &VectorExpr) -> VectorExpr {
        VectorExpr::new(&self.q - &rhs.q, &self.pi - &rhs.pi)
    }
}

impl Neg for &VectorExpr {
    type Output = VectorExpr;
    fn neg(self) -> VectorExpr {
        VectorExpr::new(-&self.q, -&self.pi)
    }
}

impl<'a> Mul<&'a VectorExpr> for &'a ScalarExpr {
    type Output = VectorExpr;
    fn mul(self, rhs: &VectorExpr) -> VectorExpr {
        rhs.scale(self)
    }
}

impl fmt::Display for VectorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.q.is_zero(), self.pi.is_zero()) {
            (true, true) => f.write_str("0"),
            (false, true) => write!(f, "({})*q_i", self.q),
            (true, false) => write!(f, "({})*pi_i", self.pi),
            (false, false) => write!(f, "({})*q_i + ({})*pi_i", self.q, self.pi),
        }
    }
}

/// Coefficients over `{delta_ij, q_i q_j, q_i pi_j, pi_i q_j, pi_i pi_j}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tensor2Expr {
    pub delta: ScalarExpr,
    pub qq: ScalarExpr,
    pub qpi: ScalarExpr,
    pub piq: ScalarExpr,
    pub pipi: ScalarExpr,
}

impl Tensor2Expr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn delta(s: ScalarExpr) -> Self {
        Self {
            delta: s,
            ..Self::default()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.parts().iter().all(|p| p.is_zero())
    }

    pub fn parts(&self) -> [&ScalarExpr; 5] {
        [&self.delta, &self.qq, &self.qpi, &self.piq, &self.pipi]
    }

    pub fn scale(&self, s: &ScalarExpr) -> Self {
        Self {
            delta: s * &self.delta,
            qq: s * &self.qq,
            qpi: s * &self.qpi,
            piq: s * &self.piq,
            pipi: s * &self.pipi,
        }
    }

    /// `T_ii`, with `delta_ii = d`.
    pub fn trace(&self) -> ScalarExpr {
        let terms = [
            &self.delta * &ScalarExpr::d(),
            &self.qq * &ScalarExpr::s(),
            &self.qpi * &ScalarExpr::p(),
            &self.piq * &ScalarExpr::p(),
            &self.pipi * &ScalarExpr::k(),
        ];
        terms.iter().fold(ScalarExpr::zero(), |acc, t| &acc + t)
    }

    /// Swap the two indices.
    pub fn transpose(&self) -> Self {
        Self {
            delta: self.delta.clone(),
            qq: self.qq.clone(),
            qpi: self.piq.clone(),
            piq: self.qpi.clone(),
            pipi: self.pipi.clone(),
        }
    }
}

impl<'a> Add<&'a Tensor2Expr> for &'a Tensor2Expr {
    type Output = Tensor2Expr;
    fn add(self, rhs: &Tensor2Expr) -> Tensor2Expr {
        Tensor2Expr {
            delta: &self.delta + &rhs.delta,
            qq: &self.qq + &rhs.qq,
            qpi: &self.qpi + &rhs.qpi,
            piq: &self.piq + &rhs.piq,
            pipi: &self.pipi + &rhs.pipi,
        }
    }
}

impl<'a> Sub<&'a Tensor2Expr> for &'a Tensor2Expr {
    type Output = Tensor2Expr;
    fn sub(self, rhs: &Tensor2Expr) -> Tensor2Expr {
        self + &rhs.scale(&ScalarExpr::int(-1))
    }
}

impl fmt::Display for Tensor2Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["delta_ij", "q_i*q_j", "q_i*pi_j", "pi_i*q_j", "pi_i*pi_j"];
        let mut first = true;
        for (c, name) in self.parts().iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({})*{}", c, name)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Any of the three covariant shapes. Vector values carry the index `i`
/// (left slot) or `j` (right slot) depending on where they appear.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PhaseExpr {
    Scalar(ScalarExpr),
    Vector(VectorExpr),
    Tensor(Tensor2Expr),
}

impl PhaseExpr {
    pub fn is_zero(&self) -> bool {
        match self {
            PhaseExpr::Scalar(s) => s.is_zero(),
            PhaseExpr::Vector(v) => v.is_zero(),
            PhaseExpr::Tensor(t) => t.is_zero(),
        }
    }

    pub fn scale(&self, s: &ScalarExpr) -> Self {
        match self {
            PhaseExpr::Scalar(x) => PhaseExpr::Scalar(s * x),
            PhaseExpr::Vector(v) => PhaseExpr::Vector(v.scale(s)),
            PhaseExpr::Tensor(t) => PhaseExpr::Tensor(t.scale(s)),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        Ok(match (self, other) {
            (PhaseExpr::Scalar(a), PhaseExpr::Scalar(b)) => PhaseExpr::Scalar(a + b),
            (PhaseExpr::Vector(a), PhaseExpr::Vector(b)) => PhaseExpr::Vector(a + b),
            (PhaseExpr::Tensor(a), PhaseExpr::Tensor(b)) => PhaseExpr::Tensor(a + b),
            _ => return Err(AlgebraError::Unsupported("adding values of different rank".into())),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&ScalarExpr::int(-1)))
    }

    /// Product where a vector on the left carries `i` and one on the right
    /// carries `j`; two vectors form a tensor.
    pub fn indexed_product(&self, other: &Self) -> Result<Self> {
        Ok(match (self, other) {
            (PhaseExpr::Scalar(a), x) => x.scale(a),
            (x, PhaseExpr::Scalar(b)) => x.scale(b),
            (PhaseExpr::Vector(a), PhaseExpr::Vector(b)) => PhaseExpr::Tensor(a.outer(b)),
            _ => return Err(AlgebraError::Unsupported("product exceeding rank 2".into())),
        })
    }

    pub fn as_scalar(&self) -> Option<&ScalarExpr> {
        match self {
            PhaseExpr::Scalar(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_vector(&self) -> Option<&VectorExpr> {
        match self {
            PhaseExpr::Vector(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_tensor(&self) -> Option<&Tensor2Expr> {
        match self {
            PhaseExpr::Tensor(t) => Some(t),
            _ => None,
        }
    }
}

impl From<ScalarExpr> for PhaseExpr {
    fn from(s: ScalarExpr) -> Self {
        PhaseExpr::Scalar(s)
    }
}

impl From<VectorExpr> for PhaseExpr {
    fn from(v: VectorExpr) -> Self {
        PhaseExpr::Vector(v)
    }
}

impl From<Tensor2Expr> for PhaseExpr {
    fn from(t: Tensor2Expr) -> Self {
        PhaseExpr::Tensor(t)
    }
}

impl fmt::Display for PhaseExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhaseExpr::Scalar(s) => write!(f, "{}", s),
            PhaseExpr::Vector(v) => write!(f, "{}", v),
            PhaseExpr::Tensor(t) => write!(f, "{}", t),
        }
    }
}
