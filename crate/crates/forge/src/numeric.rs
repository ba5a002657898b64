//! Checks that do not go through the symbolic bracket engine: a
//! componentwise bracket oracle using dual numbers over the rationals, and
//! finite-difference eigenvalues of the circle Laplacian.

use std::f64::consts::PI;

use constraint_forge_core::bft::{closed_form_fields, first_class_constraints, first_class_hamiltonians, original_constraints};
use constraint_forge_core::brackets::{poisson, ConstraintSet};
use constraint_forge_core::{Finding, GaussRational, PhaseExpr, PointAssignment, ScalarExpr, VectorExpr};
use log::debug;
use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Eigenvalues must match the circulant formula to this relative error.
pub const CIRCULANT_RTOL: f64 = 1e-12;
/// Grid levels must match `l^2` to this relative error for `l <= 5`.
pub const DISPERSION_RTOL: f64 = 1e-2;
/// The two `l = 1` levels must be within this of 1.
pub const FIRST_LEVEL_ATOL: f64 = 1e-4;

pub const ORACLE_DIMS: [usize; 3] = [3, 4, 5];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("grid needs at least 16 points, got {0}")]
    GridTooSmall(usize),
    #[error("asked for {k} eigenvalues of a {n}-point grid")]
    TooManyEigenvalues { n: usize, k: usize },
    #[error("oracle dimension must be 3, 4 or 5, got {0}")]
    BadDimension(usize),
}

/// `N` points on `[0, 2 pi)` with periodic second differences.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircleGrid {
    n: usize,
    h: f64,
}

impl CircleGrid {
    pub fn new(n: usize) -> Result<Self, NumericError> {
        if n < 16 {
            return Err(NumericError::GridTooSmall(n));
        }
        Ok(Self { n, h: 2.0 * PI / n as f64 })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    /// `-(1/h^2)` times the periodic second-difference matrix.
    pub fn matrix(&self) -> DMatrix<f64> {
        let n = self.n;
        let w = 1.0 / (self.h * self.h);
        DMatrix::from_fn(n, n, |i, j| {
            let gap = (i + n - j) % n;
            if gap == 0 {
                2.0 * w
            } else if gap == 1 || gap == n - 1 {
                -w
            } else {
                0.0
            }
        })
    }

    /// `(4/h^2) sin^2(pi m / N)`, ascending.
    pub fn analytic(&self) -> Vec<f64> {
        let mut out: Vec<f64> = (0..self.n)
            .map(|m| 4.0 / (self.h * self.h) * (PI * m as f64 / self.n as f64).sin().powi(2))
            .collect();
        out.sort_by(f64::total_cmp);
        out
    }

    /// `|D x|^2 / |x|^2` with `D` the forward difference; equal to the
    /// Rayleigh quotient of [`CircleGrid::matrix`] but free of cancellation.
    fn rayleigh(&self, x: &[f64]) -> f64 {
        let n = self.n;
        let num: f64 = (0..n).map(|i| (x[i] - x[(i + 1) % n]).powi(2)).sum();
        let den: f64 = x.iter().map(|t| t * t).sum();
        num / den / (self.h * self.h)
    }
}

/// Output of the dense solve.
#[derive(Clone, Debug, PartialEq)]
pub struct CircleSpectrum {
    /// Eigenvalues from the solver, ascending.
    pub raw: Vec<f64>,
    /// Each raw eigenvalue replaced by the Rayleigh quotient of its vector.
    pub refined: Vec<f64>,
}

/// The `k` smallest eigenvalues of the grid operator.
pub fn circle_spectrum(n: usize, k: usize) -> Result<CircleSpectrum, NumericError> {
    let grid = CircleGrid::new(n)?;
    if k > n {
        return Err(NumericError::TooManyEigenvalues { n, k });
    }
    let eig = grid.matrix().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    order.truncate(k);
    let raw = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let refined = order
        .iter()
        .map(|&i| grid.rayleigh(eig.eigenvectors.column(i).as_slice()))
        .collect();
    Ok(CircleSpectrum { raw, refined })
}

pub fn circle_eigenvalues(n: usize, k: usize) -> Result<Vec<f64>, NumericError> {
    Ok(circle_spectrum(n, k)?.refined)
}

fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1.0)
}

/// Structure, solver accuracy and discretization accuracy on an `n`-point grid.
pub fn circle_findings(n: usize) -> Result<Vec<Finding>, NumericError> {
    let grid = CircleGrid::new(n)?;
    let mut out = Vec::new();
    let a = grid.matrix();
    let symmetric = a == a.transpose();
    let max_row = a.row_iter().map(|r| r.sum().abs()).fold(0.0, f64::max);
    let name = format!("circle grid N={n}: symmetric, zero row sums");
    let cite = "second-difference operator with periodic wraparound";
    out.push(if symmetric && max_row <= CIRCULANT_RTOL {
        Finding::pass(name, cite)
    } else {
        Finding::fail(name, format!("symmetric={symmetric} max|row sum|={max_row:e}"), cite)
    });

    let spec = circle_spectrum(n, n)?;
    let analytic = grid.analytic();
    let worst = |vals: &[f64]| {
        vals.iter()
            .zip(&analytic)
            .map(|(g, w)| rel_err(*g, *w))
            .fold(0.0, f64::max)
    };
    let (raw_err, refined_err) = (worst(&spec.raw), worst(&spec.refined));
    debug!("circle N={n}: raw {raw_err:e}, refined {refined_err:e}");
    let name = format!("circle grid N={n}: eigenvalues match (4/h^2) sin^2(pi m/N)");
    let cite = "circulant spectrum of the periodic second difference";
    out.push(if refined_err <= CIRCULANT_RTOL {
        Finding::pass(name, cite)
    } else {
        Finding::fail(name, format!("max relative error {refined_err:e}"), cite)
    });
    out.push(Finding::info(
        format!("circle grid N={n}: unrefined solver error"),
        format!("max relative error {raw_err:e}"),
        "dense symmetric eigensolver before Rayleigh refinement",
    ));

    let zero = spec.refined[0].abs();
    let name = format!("circle grid N={n}: constant mode");
    out.push(if zero <= CIRCULANT_RTOL {
        Finding::pass(name, "eigenvalue 0")
    } else {
        Finding::fail(name, format!("{zero:e}"), "eigenvalue 0")
    });

    let mut bad = Vec::new();
    for l in 1..=5usize {
        let want = (l * l) as f64;
        for v in [spec.refined[2 * l - 1], spec.refined[2 * l]] {
            if rel_err(v, want) > DISPERSION_RTOL || (l == 1 && (v - 1.0).abs() > FIRST_LEVEL_ATOL) {
                bad.push(format!("l={l}: {v}"));
            }
        }
    }
    let name = format!("circle grid N={n}: levels l^2 for l <= 5");
    let cite = "sphere Laplacian eigenvalues l(l+d-2) at d=2, doubly degenerate";
    out.push(if bad.is_empty() {
        Finding::pass(name, cite)
    } else {
        Finding::fail(name, bad.join("; "), cite)
    });
    Ok(out)
}

/// `value + slope * eps` with `eps^2 = 0`.
#[derive(Clone, Debug, PartialEq)]
struct Dual {
    v: BigRational,
    d: BigRational,
}

impl Dual {
    fn constant(v: BigRational) -> Self {
        Self { v, d: BigRational::zero() }
    }

    fn int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(n.into()))
    }

    fn add(&self, o: &Self) -> Self {
        Self { v: &self.v + &o.v, d: &self.d + &o.d }
    }

    fn sub(&self, o: &Self) -> Self {
        Self { v: &self.v - &o.v, d: &self.d - &o.d }
    }

    fn mul(&self, o: &Self) -> Self {
        Self { v: &self.v * &o.v, d: &self.v * &o.d + &self.d * &o.v }
    }

    fn div(&self, o: &Self) -> Option<Self> {
        if o.v.is_zero() {
            return None;
        }
        let v = &self.v / &o.v;
        let d = (&self.d - &v * &o.d) / &o.v;
        Some(Self { v, d })
    }

    /// Needs a positive rational square.
    fn sqrt(&self) -> Option<Self> {
        if !self.v.is_positive() {
            return None;
        }
        let r = GaussRational::real(self.v.clone()).rational_sqrt()?;
        let d = &self.d / (&r * BigRational::from_integer(2.into()));
        Some(Self { v: r, d })
    }
}

/// Phase-space coordinates `q_1..q_d0, pi_1..pi_d0, theta, pi_theta, N1, B1, N2, B2`.
struct Comp<'a> {
    z: &'a [Dual],
    d0: usize,
}

impl Comp<'_> {
    fn q(&self, i: usize) -> Dual {
        self.z[i].clone()
    }
    fn pi(&self, i: usize) -> Dual {
        self.z[self.d0 + i].clone()
    }
    fn theta(&self) -> Dual {
        self.z[2 * self.d0].clone()
    }
    fn pi_theta(&self) -> Dual {
        self.z[2 * self.d0 + 1].clone()
    }
    fn dot(&self, a: impl Fn(usize) -> Dual, b: impl Fn(usize) -> Dual) -> Dual {
        (0..self.d0).fold(Dual::int(0), |acc, i| acc.add(&a(i).mul(&b(i))))
    }
    fn s(&self) -> Dual {
        self.dot(|i| self.q(i), |i| self.q(i))
    }
    fn p(&self) -> Dual {
        self.dot(|i| self.q(i), |i| self.pi(i))
    }
    fn k(&self) -> Dual {
        self.dot(|i| self.pi(i), |i| self.pi(i))
    }
    fn omega1(&self) -> Dual {
        self.s().sub(&Dual::int(1))
    }
    fn omega1_t(&self) -> Dual {
        self.omega1().add(&Dual::int(2).mul(&self.theta()))
    }
    fn omega2_t(&self) -> Dual {
        self.p().sub(&self.s().mul(&self.pi_theta()))
    }
    fn root(&self) -> Option<Dual> {
        let s = self.s();
        s.add(&Dual::int(2).mul(&self.theta())).div(&s)?.sqrt()
    }
    fn q_t(&self, i: usize) -> Option<Dual> {
        Some(self.root()?.mul(&self.q(i)))
    }
    fn pi_t(&self, i: usize) -> Option<Dual> {
        let s = self.s();
        let shifted = self.pi(i).sub(&self.q(i).mul(&self.pi_theta()));
        let den = s.add(&Dual::int(2).mul(&self.theta()));
        shifted.mul(&s).mul(&self.root()?).div(&den)
    }
    fn h_t(&self) -> Option<Dual> {
        let mut acc = Dual::int(0);
        for i in 0..self.d0 {
            let p = self.pi_t(i)?;
            acc = acc.add(&p.mul(&p));
        }
        acc.div(&Dual::int(2))
    }
    fn h_t_prime(&self) -> Option<Dual> {
        Some(self.h_t()?.add(&self.pi_theta().mul(&self.omega2_t())))
    }
}

type Scalar = fn(&Comp) -> Option<Dual>;
type Indexed = fn(&Comp, usize) -> Option<Dual>;

/// Value and all first partials of `f` at `z`, one dual evaluation each.
fn gradient(f: &dyn Fn(&Comp) -> Option<Dual>, z: &[BigRational], d0: usize) -> Option<Vec<BigRational>> {
    let mut out = Vec::with_capacity(z.len());
    for k in 0..z.len() {
        let seeded: Vec<Dual> = z
            .iter()
            .enumerate()
            .map(|(j, v)| Dual { v: v.clone(), d: if j == k { BigRational::one() } else { BigRational::zero() } })
            .collect();
        out.push(f(&Comp { z: &seeded, d0 })?.d);
    }
    Some(out)
}

fn canonical_pairs(d0: usize) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = (0..d0).map(|i| (i, d0 + i)).collect();
    let base = 2 * d0;
    pairs.extend([(base, base + 1), (base + 2, base + 3), (base + 4, base + 5)]);
    pairs
}

fn pb_grad(a: &[BigRational], b: &[BigRational], d0: usize) -> BigRational {
    canonical_pairs(d0)
        .into_iter()
        .fold(BigRational::zero(), |acc, (x, p)| acc + &a[x] * &b[p] - &a[p] * &b[x])
}

fn bracket(f: &dyn Fn(&Comp) -> Option<Dual>, g: &dyn Fn(&Comp) -> Option<Dual>, z: &[BigRational], d0: usize) -> Option<BigRational> {
    Some(pb_grad(&gradient(f, z, d0)?, &gradient(g, z, d0)?, d0))
}

enum OracleSide {
    Scalars(Scalar, Scalar),
    /// Component `i` of a vector against a scalar.
    VectorScalar(Indexed, Scalar),
    /// Dirac bracket of components `i`, `j` of two vectors.
    Dirac(Indexed, Indexed),
}

impl OracleSide {
    fn evaluate(&self, z: &[BigRational], d0: usize) -> Option<Vec<BigRational>> {
        match self {
            OracleSide::Scalars(f, g) => Some(vec![bracket(f, g, z, d0)?]),
            OracleSide::VectorScalar(v, g) => (0..d0)
                .map(|i| bracket(&|c: &Comp| v(c, i), g, z, d0))
                .collect(),
            OracleSide::Dirac(a, b) => {
                let omegas: [Scalar; 2] = [|c| Some(c.omega1()), |c| Some(c.p())];
                let grads: Vec<Vec<BigRational>> =
                    omegas.iter().map(|o| gradient(o, z, d0)).collect::<Option<_>>()?;
                let delta = |x: usize, y: usize| pb_grad(&grads[x], &grads[y], d0);
                let det = delta(0, 0) * delta(1, 1) - delta(0, 1) * delta(1, 0);
                if det.is_zero() {
                    return None;
                }
                let inv = [[delta(1, 1) / &det, -delta(0, 1) / &det], [-delta(1, 0) / &det, delta(0, 0) / &det]];
                let ga: Vec<Vec<BigRational>> = (0..d0).map(|i| gradient(&|c: &Comp| a(c, i), z, d0)).collect::<Option<_>>()?;
                let gb: Vec<Vec<BigRational>> = (0..d0).map(|j| gradient(&|c: &Comp| b(c, j), z, d0)).collect::<Option<_>>()?;
                let mut out = Vec::with_capacity(d0 * d0);
                for gi in &ga {
                    for gj in &gb {
                        let mut v = pb_grad(gi, gj, d0);
                        for (x, row) in inv.iter().enumerate() {
                            for (y, w) in row.iter().enumerate() {
                                v -= pb_grad(gi, &grads[x], d0) * w * pb_grad(&grads[y], gj, d0);
                            }
                        }
                        out.push(v);
                    }
                }
                Some(out)
            }
        }
    }
}

struct OraclePair {
    name: &'static str,
    citation: &'static str,
    engine: PhaseExpr,
    oracle: OracleSide,
}

fn engine_pairs() -> Result<Vec<OraclePair>, constraint_forge_core::AlgebraError> {
    let (s, p, k) = (ScalarExpr::s(), ScalarExpr::p(), ScalarExpr::k());
    let [o1, o2] = original_constraints();
    let (t1, t2) = first_class_constraints();
    let (h, hp) = first_class_hamiltonians();
    let (qt, pt) = closed_form_fields();
    let half_k = &ScalarExpr::ratio(1, 2) * &k;
    let sc = |a: &ScalarExpr, b: &ScalarExpr| poisson(&a.clone().into(), &b.clone().into());
    let vs = |a: &VectorExpr, b: &ScalarExpr| poisson(&a.clone().into(), &b.clone().into());
    let dirac = ConstraintSet::sphere();
    let (q, pi) = (PhaseExpr::from(VectorExpr::coord()), PhaseExpr::from(VectorExpr::momentum()));
    use OracleSide::*;
    Ok(vec![
        OraclePair { name: "{S, P}", citation: "{S, P} = 2S", engine: sc(&s, &p)?, oracle: Scalars(|c| Some(c.s()), |c| Some(c.p())) },
        OraclePair { name: "{S, K}", citation: "{S, K} = 4P", engine: sc(&s, &k)?, oracle: Scalars(|c| Some(c.s()), |c| Some(c.k())) },
        OraclePair { name: "{P, K}", citation: "{P, K} = 2K", engine: sc(&p, &k)?, oracle: Scalars(|c| Some(c.p()), |c| Some(c.k())) },
        OraclePair {
            name: "{Omega1, Omega2}",
            citation: "Delta_12 = 2 q.q",
            engine: sc(&o1, &o2)?,
            oracle: Scalars(|c| Some(c.omega1()), |c| Some(c.p())),
        },
        OraclePair {
            name: "{Omega1, H}",
            citation: "{Omega1, H} = 2 Omega2",
            engine: sc(&o1, &half_k)?,
            oracle: Scalars(|c| Some(c.omega1()), |c| c.k().div(&Dual::int(2))),
        },
        OraclePair {
            name: "{Omega~1, Omega~2}",
            citation: "{Omega~1, Omega~2} = 0",
            engine: sc(&t1, &t2)?,
            oracle: Scalars(|c| Some(c.omega1_t()), |c| Some(c.omega2_t())),
        },
        OraclePair { name: "{Omega~1, H~}", citation: "{Omega~1, H~} = 0", engine: sc(&t1, &h)?, oracle: Scalars(|c| Some(c.omega1_t()), |c| c.h_t()) },
        OraclePair { name: "{Omega~2, H~}", citation: "{Omega~2, H~} = 0", engine: sc(&t2, &h)?, oracle: Scalars(|c| Some(c.omega2_t()), |c| c.h_t()) },
        OraclePair {
            name: "{Omega~1, H~'}",
            citation: "{Omega~1, H~'} = 2 Omega~2",
            engine: sc(&t1, &hp)?,
            oracle: Scalars(|c| Some(c.omega1_t()), |c| c.h_t_prime()),
        },
        OraclePair {
            name: "{Omega~2, H~'}",
            citation: "{Omega~2, H~'} = 0",
            engine: sc(&t2, &hp)?,
            oracle: Scalars(|c| Some(c.omega2_t()), |c| c.h_t_prime()),
        },
        OraclePair { name: "{q~_i, Omega~1}", citation: "{q~_i, Omega~_a} = 0", engine: vs(&qt, &t1)?, oracle: VectorScalar(|c, i| c.q_t(i), |c| Some(c.omega1_t())) },
        OraclePair { name: "{q~_i, Omega~2}", citation: "{q~_i, Omega~_a} = 0", engine: vs(&qt, &t2)?, oracle: VectorScalar(|c, i| c.q_t(i), |c| Some(c.omega2_t())) },
        OraclePair { name: "{pi~_i, Omega~1}", citation: "{pi~_i, Omega~_a} = 0", engine: vs(&pt, &t1)?, oracle: VectorScalar(|c, i| c.pi_t(i), |c| Some(c.omega1_t())) },
        OraclePair { name: "{pi~_i, Omega~2}", citation: "{pi~_i, Omega~_a} = 0", engine: vs(&pt, &t2)?, oracle: VectorScalar(|c, i| c.pi_t(i), |c| Some(c.omega2_t())) },
        OraclePair {
            name: "Dirac {q_i, q_j}",
            citation: "{q_i, q_j}_D = 0",
            engine: dirac.dirac(&q, &q)?,
            oracle: Dirac(|c, i| Some(c.q(i)), |c, j| Some(c.q(j))),
        },
        OraclePair {
            name: "Dirac {q_i, pi_j}",
            citation: "{q_i, pi_j}_D = delta_ij - q_i q_j / q.q",
            engine: dirac.dirac(&q, &pi)?,
            oracle: Dirac(|c, i| Some(c.q(i)), |c, j| Some(c.pi(j))),
        },
        OraclePair {
            name: "Dirac {pi_i, pi_j}",
            citation: "{pi_i, pi_j}_D = (q_j pi_i - q_i pi_j) / q.q",
            engine: dirac.dirac(&pi, &pi)?,
            oracle: Dirac(|c, i| Some(c.pi(i)), |c, j| Some(c.pi(j))),
        },
    ])
}

fn engine_value(e: &PhaseExpr, pt: &PointAssignment) -> Option<Vec<GaussRational>> {
    match e {
        PhaseExpr::Scalar(s) => pt.eval_scalar(s).ok().map(|v| vec![v]),
        PhaseExpr::Vector(v) => pt.eval_vector(v).ok(),
        PhaseExpr::Tensor(t) => pt.eval_tensor(t).ok().map(|m| m.into_iter().flatten().collect()),
    }
}

fn small_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(BigInt::from(rng.random_range(-20i64..=20)), BigInt::from(rng.random_range(1i64..=20)))
}

/// Random point with `S != 0` and rational `R`: `theta` is chosen as
/// `S (r^2 - 1)/2` for a random positive rational `r`. Returns the number
/// of rejected draws along with the point.
fn sample_point(rng: &mut ChaCha8Rng, d0: usize) -> (PointAssignment, usize) {
    let mut rejected = 0;
    loop {
        let q: Vec<BigRational> = (0..d0).map(|_| small_rational(rng)).collect();
        let pi: Vec<BigRational> = (0..d0).map(|_| small_rational(rng)).collect();
        let mut pt = PointAssignment::new(q, pi);
        let s = pt.s();
        let r = BigRational::new(BigInt::from(rng.random_range(1i64..=20)), BigInt::from(rng.random_range(1i64..=20)));
        pt.theta = &s * (&r * &r - BigRational::one()) / BigRational::from_integer(2.into());
        pt.pi_theta = small_rational(rng);
        pt.n1 = small_rational(rng);
        pt.b1 = small_rational(rng);
        pt.n2 = small_rational(rng);
        pt.b2 = small_rational(rng);
        if s.is_zero() || pt.root_value().is_err() {
            rejected += 1;
            continue;
        }
        return (pt, rejected);
    }
}

fn coordinates(pt: &PointAssignment) -> Vec<BigRational> {
    let mut z = pt.q.clone();
    z.extend(pt.pi.iter().cloned());
    z.extend([&pt.theta, &pt.pi_theta, &pt.n1, &pt.b1, &pt.n2, &pt.b2].into_iter().cloned());
    z
}

fn show_point(pt: &PointAssignment) -> String {
    let join = |v: &[BigRational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
    format!("q = [{}], pi = [{}], theta = {}, pi_theta = {}", join(&pt.q), join(&pt.pi), pt.theta, pt.pi_theta)
}

/// Compare every engine bracket with the componentwise oracle at `trials`
/// random points in each dimension of `dims`.
pub fn run_bracket_oracle(trials: usize, dims: &[usize], seed: u64) -> Result<Vec<Finding>, NumericError> {
    if let Some(&d) = dims.iter().find(|d| !ORACLE_DIMS.contains(d)) {
        return Err(NumericError::BadDimension(d));
    }
    let pairs = engine_pairs().expect("engine brackets of built-in pairs");
    let mut out = Vec::new();
    for &d0 in dims {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (d0 as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let mut rejected = 0;
        let points: Vec<PointAssignment> = (0..trials)
            .map(|_| {
                let (pt, r) = sample_point(&mut rng, d0);
                rejected += r;
                pt
            })
            .collect();
        for pair in &pairs {
            let mut mismatch = None;
            for (t, pt) in points.iter().enumerate() {
                let z = coordinates(pt);
                let want = pair.oracle.evaluate(&z, d0).map(|v| v.into_iter().map(GaussRational::real).collect::<Vec<_>>());
                let got = engine_value(&pair.engine, pt);
                if want.is_none() || want != got {
                    let show = |v: &Option<Vec<GaussRational>>| match v {
                        Some(v) => v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "),
                        None => "undefined".into(),
                    };
                    mismatch = Some(format!("trial {t}: {}: oracle [{}], engine [{}]", show_point(pt), show(&want), show(&got)));
                    break;
                }
            }
            let name = format!("oracle d0={d0}, {} points: {}", trials, pair.name);
            out.push(match mismatch {
                None => Finding::pass(name, pair.citation),
                Some(m) => Finding::fail(name, m, pair.citation),
            });
        }
        out.push(Finding::info(
            format!("oracle d0={d0}: resampled points"),
            rejected,
            "draws with q.q = 0 are replaced",
        ));
    }
    Ok(out)
}
