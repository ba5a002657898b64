//! Poisson brackets by the chain rule over invariant generators, Dirac
//! brackets for a pair of second-class constraints, and on-shell reduction.

use core::fmt;

use crate::covariant::{Basis, PhaseExpr, Tensor2Expr, VectorExpr};
use crate::error::{AlgebraError, Result};
use crate::poly::Var;
use crate::scalar::ScalarExpr;

/// Which canonical pairs take part in a bracket.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sector {
    /// Every canonical pair.
    Full,
    /// Only `(q_i, pi_i)`, i.e. the `S, P, K` generators and index entries.
    Particle,
    /// Only the auxiliary pair `(theta, pi_theta)`.
    Auxiliary,
}

/// `{x, y} = coeff * target` (target `None` means the constant `coeff`).
type ScalarEntry = (Var, Var, i64, Option<Var>);
/// `{x, e_i} = coeff * target_i`.
type VectorEntry = (Var, Basis, i64, Basis);

const SCALAR_TABLE: &[ScalarEntry] = &[
    (Var::S, Var::P, 2, Some(Var::S)),
    (Var::S, Var::K, 4, Some(Var::P)),
    (Var::P, Var::K, 2, Some(Var::K)),
    (Var::Theta, Var::PiTheta, 1, None),
    (Var::N1, Var::B1, 1, None),
    (Var::N2, Var::B2, 1, None),
];

const VECTOR_TABLE: &[VectorEntry] = &[
    (Var::S, Basis::Pi, 2, Basis::Q),
    (Var::P, Basis::Q, -1, Basis::Q),
    (Var::P, Basis::Pi, 1, Basis::Pi),
    (Var::K, Basis::Q, -2, Basis::Pi),
];

/// Phase-space generators the chain rule runs over.
pub const GENERATORS: [Var; 9] = [
    Var::S,
    Var::P,
    Var::K,
    Var::Theta,
    Var::PiTheta,
    Var::N1,
    Var::B1,
    Var::N2,
    Var::B2,
];

fn in_sector(v: Var, sector: Sector) -> bool {
    match sector {
        Sector::Full => true,
        Sector::Particle => matches!(v, Var::S | Var::P | Var::K),
        Sector::Auxiliary => matches!(v, Var::Theta | Var::PiTheta),
    }
}

/// Constant bracket table restricted to a sector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BracketTable {
    sector: Sector,
}

impl Default for BracketTable {
    fn default() -> Self {
        Self::full()
    }
}

impl BracketTable {
    pub const fn new(sector: Sector) -> Self {
        Self { sector }
    }

    pub const fn full() -> Self {
        Self::new(Sector::Full)
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    /// `{x, y}` for two scalar generators.
    pub fn generator_bracket(&self, x: Var, y: Var) -> ScalarExpr {
        if !in_sector(x, self.sector) || !in_sector(y, self.sector) {
            return ScalarExpr::zero();
        }
        for &(a, b, c, t) in SCALAR_TABLE {
            let sign = if (a, b) == (x, y) {
                1
            } else if (a, b) == (y, x) {
                -1
            } else {
                continue;
            };
            let base = t.map_or_else(ScalarExpr::one, ScalarExpr::var);
            return &ScalarExpr::int(sign * c) * &base;
        }
        ScalarExpr::zero()
    }

    /// `{x, e_i}` for a scalar generator and a basis vector.
    pub fn generator_vector_bracket(&self, x: Var, e: Basis) -> VectorExpr {
        if self.sector == Sector::Auxiliary || !in_sector(x, self.sector) {
            return VectorExpr::zero();
        }
        VECTOR_TABLE
            .iter()
            .find(|&&(a, b, _, _)| a == x && b == e)
            .map(|&(_, _, c, t)| VectorExpr::basis(t).scale(&ScalarExpr::int(c)))
            .unwrap_or_default()
    }

    /// `{e_i, f_j}` as a multiple of `delta_ij`.
    pub fn basis_bracket(&self, e: Basis, f: Basis) -> ScalarExpr {
        if self.sector == Sector::Auxiliary {
            return ScalarExpr::zero();
        }
        match (e, f) {
            (Basis::Q, Basis::Pi) => ScalarExpr::one(),
            (Basis::Pi, Basis::Q) => ScalarExpr::int(-1),
            _ => ScalarExpr::zero(),
        }
    }

    fn partials(&self, f: &ScalarExpr) -> impl Iterator<Item = (Var, ScalarExpr)> + '_ {
        let f = f.clone();
        GENERATORS
            .into_iter()
            .filter(move |&v| in_sector(v, self.sector))
            .filter_map(move |v| {
                let d = f.derivative(v);
                (!d.is_zero()).then_some((v, d))
            })
    }

    /// `{f, g}` for scalars.
    pub fn scalar(&self, f: &ScalarExpr, g: &ScalarExpr) -> ScalarExpr {
        let dg: alloc::vec::Vec<_> = self.partials(g).collect();
        let mut acc = ScalarExpr::zero();
        for (x, fx) in self.partials(f) {
            for (y, gy) in &dg {
                let xy = self.generator_bracket(x, *y);
                if !xy.is_zero() {
                    acc = &acc + &(&(&fx * gy) * &xy);
                }
            }
        }
        acc
    }

    /// `{f, e_i}` for a scalar and a basis vector.
    fn scalar_basis(&self, f: &ScalarExpr, e: Basis) -> VectorExpr {
        let mut acc = VectorExpr::zero();
        for (x, fx) in self.partials(f) {
            let xe = self.generator_vector_bracket(x, e);
            if !xe.is_zero() {
                acc = &acc + &xe.scale(&fx);
            }
        }
        acc
    }

    /// `{f, v_i}` for a scalar and a vector.
    pub fn scalar_vector(&self, f: &ScalarExpr, v: &VectorExpr) -> VectorExpr {
        let mut acc = VectorExpr::zero();
        for b in [Basis::Q, Basis::Pi] {
            let coeff = v.component(b);
            if coeff.is_zero() {
                continue;
            }
            let own = VectorExpr::basis(b).scale(&self.scalar(f, coeff));
            let moved = self.scalar_basis(f, b).scale(coeff);
            acc = &(&acc + &own) + &moved;
        }
        acc
    }

    /// `{v_i, f}`.
    pub fn vector_scalar(&self, v: &VectorExpr, f: &ScalarExpr) -> VectorExpr {
        -&self.scalar_vector(f, v)
    }

    /// `{v_i, w_j}` as a two-index tensor.
    pub fn vector_vector(&self, v: &VectorExpr, w: &VectorExpr) -> Tensor2Expr {
        let mut acc = Tensor2Expr::zero();
        for e in [Basis::Q, Basis::Pi] {
            let a = v.component(e);
            if a.is_zero() {
                continue;
            }
            for f in [Basis::Q, Basis::Pi] {
                let b = w.component(f);
                if b.is_zero() {
                    continue;
                }
                let ei = VectorExpr::basis(e);
                let fj = VectorExpr::basis(f);
                // {a e_i, b f_j} = {a,b} e_i f_j + a {e_i,b} f_j + b e_i {a,f_j} + a b {e_i,f_j}
                let t1 = ei.outer(&fj).scale(&self.scalar(a, b));
                let t2 = self.scalar_basis(b, e).outer(&fj).scale(&-a);
                let t3 = ei.outer(&self.scalar_basis(a, f)).scale(b);
                let t4 = Tensor2Expr::delta(&(a * b) * &self.basis_bracket(e, f));
                acc = &(&(&(&acc + &t1) + &t2) + &t3) + &t4;
            }
        }
        acc
    }

    /// Dispatch on shapes; tensors are not accepted as inputs.
    pub fn bracket(&self, a: &PhaseExpr, b: &PhaseExpr) -> Result<PhaseExpr> {
        Ok(match (a, b) {
            (PhaseExpr::Scalar(f), PhaseExpr::Scalar(g)) => self.scalar(f, g).into(),
            (PhaseExpr::Scalar(f), PhaseExpr::Vector(v)) => self.scalar_vector(f, v).into(),
            (PhaseExpr::Vector(v), PhaseExpr::Scalar(f)) => self.vector_scalar(v, f).into(),
            (PhaseExpr::Vector(v), PhaseExpr::Vector(w)) => self.vector_vector(v, w).into(),
            _ => return Err(AlgebraError::Unsupported("bracket of a rank-2 tensor".into())),
        })
    }

    /// Jacobi identity on every triple of scalar generators; returns the
    /// first violating triple.
    pub fn check_jacobi(&self) -> Option<(Var, Var, Var)> {
        let gens: alloc::vec::Vec<Var> =
            GENERATORS.into_iter().filter(|&v| in_sector(v, self.sector)).collect();
        for &x in &gens {
            for &y in &gens {
                for &z in &gens {
                    let (a, b, c) = (ScalarExpr::var(x), ScalarExpr::var(y), ScalarExpr::var(z));
                    let j = &(&self.scalar(&a, &self.scalar(&b, &c)) + &self.scalar(&b, &self.scalar(&c, &a)))
                        + &self.scalar(&c, &self.scalar(&a, &b));
                    if !j.is_zero() {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }
}

/// Full Poisson bracket of two covariant values.
pub fn poisson(a: &PhaseExpr, b: &PhaseExpr) -> Result<PhaseExpr> {
    BracketTable::full().bracket(a, b)
}

/// Full Poisson bracket of two scalars.
pub fn poisson_scalar(f: &ScalarExpr, g: &ScalarExpr) -> ScalarExpr {
    BracketTable::full().scalar(f, g)
}

/// Two constraints with their bracket matrix and its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSet {
    omega: [ScalarExpr; 2],
    delta: [[ScalarExpr; 2]; 2],
    delta_inv: [[ScalarExpr; 2]; 2],
}

impl ConstraintSet {
    pub fn new(omega1: ScalarExpr, omega2: ScalarExpr) -> Result<Self> {
        let omega = [omega1, omega2];
        let delta = [0, 1].map(|a| [0, 1].map(|b| poisson_scalar(&omega[a], &omega[b])));
        let det = &(&delta[0][0] * &delta[1][1]) - &(&delta[0][1] * &delta[1][0]);
        let inv_det = det.inv().map_err(|_| AlgebraError::NotSecondClass)?;
        let delta_inv = [
            [&delta[1][1] * &inv_det, &(-&delta[0][1]) * &inv_det],
            [&(-&delta[1][0]) * &inv_det, &delta[0][0] * &inv_det],
        ];
        Ok(Self {
            omega,
            delta,
            delta_inv,
        })
    }

    /// `Omega_1 = S - 1`, `Omega_2 = P`.
    pub fn sphere() -> Self {
        Self::new(&ScalarExpr::s() - &ScalarExpr::one(), ScalarExpr::p())
            .expect("sphere constraints are second class")
    }

    pub fn constraints(&self) -> &[ScalarExpr; 2] {
        &self.omega
    }

    pub fn delta(&self) -> &[[ScalarExpr; 2]; 2] {
        &self.delta
    }

    pub fn delta_inv(&self) -> &[[ScalarExpr; 2]; 2] {
        &self.delta_inv
    }

    /// `Delta * Delta^-1 - 1`, which must vanish entrywise.
    pub fn inverse_residual(&self) -> [[ScalarExpr; 2]; 2] {
        [0, 1].map(|a| {
            [0, 1].map(|b| {
                let sum = &(&self.delta[a][0] * &self.delta_inv[0][b])
                    + &(&self.delta[a][1] * &self.delta_inv[1][b]);
                if a == b {
                    &sum - &ScalarExpr::one()
                } else {
                    sum
                }
            })
        })
    }

    /// `{A,B}_D = {A,B} - {A,Omega_a} Delta^ab {Omega_b,B}`.
    pub fn dirac(&self, a: &PhaseExpr, b: &PhaseExpr) -> Result<PhaseExpr> {
        let mut out = poisson(a, b)?;
        let a_om: alloc::vec::Vec<PhaseExpr> = self
            .omega
            .iter()
            .map(|o| poisson(a, &o.clone().into()))
            .collect::<Result<_>>()?;
        let om_b: alloc::vec::Vec<PhaseExpr> = self
            .omega
            .iter()
            .map(|o| poisson(&o.clone().into(), b))
            .collect::<Result<_>>()?;
        for (i, left) in a_om.iter().enumerate() {
            for (j, right) in om_b.iter().enumerate() {
                let w = &self.delta_inv[i][j];
                if w.is_zero() || left.is_zero() || right.is_zero() {
                    continue;
                }
                out = out.try_sub(&left.indexed_product(right)?.scale(w))?;
            }
        }
        Ok(out)
    }
}

/// A value restricted to the constraint surface `S = 1`, `P = 0`. It is a
/// separate type so it cannot be fed back into a bracket. Any `R` left in it
/// stands for `sqrt(1 + 2 theta)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedExpr(ScalarExpr);

impl ReducedExpr {
    pub fn value(&self) -> &ScalarExpr {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for ReducedExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Weak equality: substitute `S -> 1`, `P -> 0`. Fails when a denominator
/// vanishes on the surface.
pub fn reduce_on_shell(e: &ScalarExpr) -> Result<ReducedExpr> {
    let e = e.substitute_keep_root(Var::S, &ScalarExpr::one())?;
    let e = e.substitute_keep_root(Var::P, &ScalarExpr::zero())?;
    Ok(ReducedExpr(e))
}
