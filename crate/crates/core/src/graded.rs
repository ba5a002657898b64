//! Ghost-extended phase space: Grassmann-graded polynomials in the ghost
//! generators with [`ScalarExpr`] coefficients, the super-Poisson bracket,
//! and the BFV charges.
//!
//! Monomials are bitmasks over [`Ghost`] in declaration order; a product is
//! reordered into that order with the sign of the permutation, and a
//! repeated generator kills the term.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::bft::{first_class_constraints, first_class_hamiltonians, original_constraints};
use crate::brackets::BracketTable;
use crate::check::Finding;
use crate::covariant::VectorExpr;
use crate::error::{AlgebraError, Result};
use crate::poly::Var;
use crate::scalar::ScalarExpr;

/// Odd generators. `Lambda` is the odd parameter of BRST transformations;
/// it has no conjugate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ghost {
    Lambda,
    C1,
    C2,
    Pbar1,
    Pbar2,
    P1,
    P2,
    Cbar1,
    Cbar2,
}

impl Ghost {
    pub const ALL: [Ghost; 9] = [
        Ghost::Lambda,
        Ghost::C1,
        Ghost::C2,
        Ghost::Pbar1,
        Ghost::Pbar2,
        Ghost::P1,
        Ghost::P2,
        Ghost::Cbar1,
        Ghost::Cbar2,
    ];

    /// Canonical pairs `(coordinate, momentum)` with bracket `+1`.
    pub const PAIRS: [(Ghost, Ghost); 4] = [
        (Ghost::C1, Ghost::Pbar1),
        (Ghost::C2, Ghost::Pbar2),
        (Ghost::P1, Ghost::Cbar1),
        (Ghost::P2, Ghost::Cbar2),
    ];

    pub fn index(self) -> u32 {
        self as u32
    }

    pub fn bit(self) -> u16 {
        1 << self.index()
    }

    pub fn ghost_number(self) -> i32 {
        match self {
            Ghost::C1 | Ghost::C2 | Ghost::P1 | Ghost::P2 => 1,
            Ghost::Pbar1 | Ghost::Pbar2 | Ghost::Cbar1 | Ghost::Cbar2 | Ghost::Lambda => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Ghost::Lambda => "lambda",
            Ghost::C1 => "C1",
            Ghost::C2 => "C2",
            Ghost::Pbar1 => "Pbar1",
            Ghost::Pbar2 => "Pbar2",
            Ghost::P1 => "P1",
            Ghost::P2 => "P2",
            Ghost::Cbar1 => "Cbar1",
            Ghost::Cbar2 => "Cbar2",
        }
    }

    /// Generators of the first BFV sector, eliminated in the unitary gauge.
    pub fn is_first_sector(self) -> bool {
        matches!(self, Ghost::C1 | Ghost::Pbar1 | Ghost::P1 | Ghost::Cbar1)
    }
}

impl fmt::Display for Ghost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn sign(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

/// `a * b` reordered canonically: `(mask, sign)`, or `None` if they overlap.
fn mono_mul(a: u16, b: u16) -> Option<(u16, i64)> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    for g in Ghost::ALL {
        if b & g.bit() != 0 {
            // factors of `a` standing after `g` in canonical order must be passed
            swaps += (a & !((g.bit() << 1) - 1)).count_ones();
        }
    }
    Some((a | b, sign(swaps % 2 == 1)))
}

/// Remove `g` from the right: sign counts odd factors right of `g`.
fn right_derivative(m: u16, g: Ghost) -> Option<(u16, i64)> {
    if m & g.bit() == 0 {
        return None;
    }
    let right = (m & !((g.bit() << 1) - 1)).count_ones();
    Some((m & !g.bit(), sign(right % 2 == 1)))
}

/// Remove `g` from the left: sign counts odd factors left of `g`.
fn left_derivative(m: u16, g: Ghost) -> Option<(u16, i64)> {
    if m & g.bit() == 0 {
        return None;
    }
    let left = (m & (g.bit() - 1)).count_ones();
    Some((m & !g.bit(), sign(left % 2 == 1)))
}

fn mask_ghost_number(m: u16) -> i32 {
    Ghost::ALL
        .iter()
        .filter(|g| m & g.bit() != 0)
        .map(|g| g.ghost_number())
        .sum()
}

fn write_mask(f: &mut fmt::Formatter<'_>, m: u16) -> fmt::Result {
    for g in Ghost::ALL {
        if m & g.bit() != 0 {
            write!(f, "*{}", g)?;
        }
    }
    Ok(())
}

/// Sum of `coefficient * ghost monomial`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedExpr {
    terms: BTreeMap<u16, ScalarExpr>,
}

impl GradedExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(f: ScalarExpr) -> Self {
        Self::term(0, f)
    }

    pub fn ghost(g: Ghost) -> Self {
        Self::term(g.bit(), ScalarExpr::one())
    }

    /// Product of generators in the given order, times `coeff`.
    pub fn product(ghosts: &[Ghost], coeff: ScalarExpr) -> Self {
        ghosts
            .iter()
            .fold(Self::scalar(coeff), |acc, g| acc.mul(&Self::ghost(*g)))
    }

    fn term(m: u16, f: ScalarExpr) -> Self {
        let mut out = Self::zero();
        out.add_term(m, f);
        out
    }

    fn add_term(&mut self, m: u16, f: ScalarExpr) {
        if f.is_zero() {
            return;
        }
        let sum = match self.terms.get(&m) {
            Some(old) => old + &f,
            None => f,
        };
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u16, &ScalarExpr)> {
        self.terms.iter().map(|(m, f)| (*m, f))
    }

    /// Coefficient of the canonically ordered product of `ghosts`.
    pub fn coefficient(&self, ghosts: &[Ghost]) -> ScalarExpr {
        let m = ghosts.iter().fold(0u16, |acc, g| acc | g.bit());
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    /// Common Grassmann parity, `None` if mixed. Zero counts as even.
    pub fn parity(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.count_ones() % 2);
        let first = it.next().unwrap_or(0);
        it.all(|p| p == first).then_some(first)
    }

    /// Common ghost number, `None` if mixed or zero.
    pub fn ghost_number(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(|&m| mask_ghost_number(m));
        let first = it.next()?;
        it.all(|g| g == first).then_some(first)
    }

    /// Part without ghosts.
    pub fn bosonic_part(&self) -> ScalarExpr {
        self.terms.get(&0).cloned().unwrap_or_default()
    }

    pub fn scale(&self, s: &ScalarExpr) -> Self {
        let mut out = Self::zero();
        for (m, f) in &self.terms {
            out.add_term(*m, s * f);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, fa) in &self.terms {
            for (mb, fb) in &other.terms {
                if let Some((m, s)) = mono_mul(*ma, *mb) {
                    out.add_term(m, &(fa * fb) * &ScalarExpr::int(s));
                }
            }
        }
        out
    }

    /// Drop terms with first-sector ghosts and set `N1 = B1 = 0`.
    pub fn restrict_to_second_sector(&self) -> Result<Self> {
        let first: u16 = Ghost::ALL
            .iter()
            .filter(|g| g.is_first_sector())
            .fold(0, |acc, g| acc | g.bit());
        let mut out = Self::zero();
        for (m, f) in &self.terms {
            if m & first != 0 {
                continue;
            }
            let f = f
                .substitute(Var::N1, &ScalarExpr::zero())?
                .substitute(Var::B1, &ScalarExpr::zero())?;
            out.add_term(*m, f);
        }
        Ok(out)
    }
}

impl<'a> core::ops::Add<&'a GradedExpr> for &'a GradedExpr {
    type Output = GradedExpr;
    fn add(self, rhs: &GradedExpr) -> GradedExpr {
        let mut out = self.clone();
        for (m, f) in &rhs.terms {
            out.add_term(*m, f.clone());
        }
        out
    }
}

impl<'a> core::ops::Sub<&'a GradedExpr> for &'a GradedExpr {
    type Output = GradedExpr;
    fn sub(self, rhs: &GradedExpr) -> GradedExpr {
        self + &rhs.scale(&ScalarExpr::int(-1))
    }
}

impl From<ScalarExpr> for GradedExpr {
    fn from(f: ScalarExpr) -> Self {
        Self::scalar(f)
    }
}

impl fmt::Display for GradedExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})", c)?;
            write_mask(f, *m)?;
        }
        Ok(())
    }
}

/// `{A, B} = dA/dq|_r dB/dp|_l - (-1)^(eta_A eta_B) dB/dq|_r dA/dp|_l`,
/// summed over bosonic and ghost canonical pairs.
pub fn super_poisson(a: &GradedExpr, b: &GradedExpr) -> Result<GradedExpr> {
    let pa = a.parity().ok_or(AlgebraError::InhomogeneousParity)?;
    let pb = b.parity().ok_or(AlgebraError::InhomogeneousParity)?;
    let graded = sign(pa * pb == 1);
    let table = BracketTable::full();
    let mut out = GradedExpr::zero();
    for (&ma, fa) in &a.terms {
        for (&mb, fb) in &b.terms {
            if let Some((m, s)) = mono_mul(ma, mb) {
                let bos = table.scalar(fa, fb);
                if !bos.is_zero() {
                    out.add_term(m, &bos * &ScalarExpr::int(s));
                }
            }
            let fab = fa * fb;
            for (c, p) in Ghost::PAIRS {
                if let (Some((x, s1)), Some((y, s2))) = (right_derivative(ma, c), left_derivative(mb, p)) {
                    if let Some((m, s3)) = mono_mul(x, y) {
                        out.add_term(m, &fab * &ScalarExpr::int(s1 * s2 * s3));
                    }
                }
                if let (Some((x, s1)), Some((y, s2))) = (right_derivative(mb, c), left_derivative(ma, p)) {
                    if let Some((m, s3)) = mono_mul(x, y) {
                        out.add_term(m, &fab * &ScalarExpr::int(-graded * s1 * s2 * s3));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Graded bracket of the vector `v_i` (even, ghost-free) with `b`.
pub fn vector_super_poisson(v: &VectorExpr, b: &GradedExpr) -> BTreeMap<u16, VectorExpr> {
    let table = BracketTable::full();
    let mut out = BTreeMap::new();
    for (&m, f) in &b.terms {
        let w = table.vector_scalar(v, f);
        if !w.is_zero() {
            out.insert(m, w);
        }
    }
    out
}

/// `Q = C^a Omega~_a + P^a B_a`.
pub fn brst_charge() -> GradedExpr {
    let (o1, o2) = first_class_constraints();
    charge_from(&o1, &o2)
}

fn charge_from(o1: &ScalarExpr, o2: &ScalarExpr) -> GradedExpr {
    let parts = [
        GradedExpr::product(&[Ghost::C1], o1.clone()),
        GradedExpr::product(&[Ghost::C2], o2.clone()),
        GradedExpr::product(&[Ghost::P1], ScalarExpr::var(Var::B1)),
        GradedExpr::product(&[Ghost::P2], ScalarExpr::var(Var::B2)),
    ];
    parts.iter().fold(GradedExpr::zero(), |acc, p| &acc + p)
}

/// The same charge built from the second-class pair; it is not nilpotent.
pub fn second_class_charge() -> GradedExpr {
    let [o1, o2] = original_constraints();
    charge_from(&o1, &o2)
}

/// `Psi = Cbar_a chi^a + Pbar_a N^a` with `chi^a = Omega_a`.
pub fn gauge_fermion() -> GradedExpr {
    let [o1, o2] = original_constraints();
    let parts = [
        GradedExpr::product(&[Ghost::Cbar1], o1),
        GradedExpr::product(&[Ghost::Cbar2], o2),
        GradedExpr::product(&[Ghost::Pbar1], ScalarExpr::var(Var::N1)),
        GradedExpr::product(&[Ghost::Pbar2], ScalarExpr::var(Var::N2)),
    ];
    parts.iter().fold(GradedExpr::zero(), |acc, p| &acc + p)
}

/// `H~' - 2 Pbar_2 C^1`, the ghost term ordered so that `{Q, H_m} = 0`.
pub fn minimal_hamiltonian() -> GradedExpr {
    let (_, hp) = first_class_hamiltonians();
    &GradedExpr::scalar(hp) + &GradedExpr::product(&[Ghost::Pbar2, Ghost::C1], ScalarExpr::int(-2))
}

/// `H~' - 2 C^1 Pbar_2` with the ghost factors in the other order.
pub fn minimal_hamiltonian_swapped() -> GradedExpr {
    let (_, hp) = first_class_hamiltonians();
    &GradedExpr::scalar(hp) + &GradedExpr::product(&[Ghost::C1, Ghost::Pbar2], ScalarExpr::int(-2))
}

/// `(Q, Psi, H_m)`.
pub fn build_charges() -> (GradedExpr, GradedExpr, GradedExpr) {
    (brst_charge(), gauge_fermion(), minimal_hamiltonian())
}

/// Fields whose BRST variation is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BrstField {
    Q,
    Pi,
    Theta,
    PiTheta,
    C,
    Cbar,
    B,
}

impl BrstField {
    pub const ALL: [BrstField; 7] = [
        BrstField::Q,
        BrstField::Pi,
        BrstField::Theta,
        BrstField::PiTheta,
        BrstField::C,
        BrstField::Cbar,
        BrstField::B,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BrstField::Q => "q_i",
            BrstField::Pi => "pi_i",
            BrstField::Theta => "theta",
            BrstField::PiTheta => "pi_theta",
            BrstField::C => "C",
            BrstField::Cbar => "Cbar",
            BrstField::B => "B",
        }
    }
}

/// Variation of a field: scalar-valued or carrying the index `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BrstVariation {
    Scalar(GradedExpr),
    Vector(BTreeMap<u16, VectorExpr>),
}

impl BrstVariation {
    pub fn is_zero(&self) -> bool {
        match self {
            BrstVariation::Scalar(g) => g.is_zero(),
            BrstVariation::Vector(m) => m.is_empty(),
        }
    }
}

impl fmt::Display for BrstVariation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BrstVariation::Scalar(g) => write!(f, "{}", g),
            BrstVariation::Vector(m) if m.is_empty() => f.write_str("0"),
            BrstVariation::Vector(m) => {
                for (idx, (mask, v)) in m.iter().enumerate() {
                    if idx > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "[{}]", v)?;
                    write_mask(f, *mask)?;
                }
                Ok(())
            }
        }
    }
}

/// `{field, lambda Q}` in the second BFV sector (`C = C^2`, `Cbar = Cbar_2`,
/// `B = B_2`).
pub fn brst_transform(field: BrstField) -> Result<BrstVariation> {
    let lq = GradedExpr::ghost(Ghost::Lambda).mul(&brst_charge());
    let scalar = |g: GradedExpr| -> Result<BrstVariation> {
        Ok(BrstVariation::Scalar(super_poisson(&g, &lq)?.restrict_to_second_sector()?))
    };
    let vector = |v: VectorExpr| -> Result<BrstVariation> {
        let mut out = BTreeMap::new();
        let first: u16 = Ghost::ALL
            .iter()
            .filter(|g| g.is_first_sector())
            .fold(0, |acc, g| acc | g.bit());
        for (m, w) in vector_super_poisson(&v, &lq) {
            if m & first == 0 {
                out.insert(m, w);
            }
        }
        Ok(BrstVariation::Vector(out))
    };
    match field {
        BrstField::Q => vector(VectorExpr::coord()),
        BrstField::Pi => vector(VectorExpr::momentum()),
        BrstField::Theta => scalar(ScalarExpr::theta().into()),
        BrstField::PiTheta => scalar(ScalarExpr::pi_theta().into()),
        BrstField::C => scalar(GradedExpr::ghost(Ghost::C2)),
        BrstField::Cbar => scalar(GradedExpr::ghost(Ghost::Cbar2)),
        BrstField::B => scalar(ScalarExpr::var(Var::B2).into()),
    }
}

/// Expected variations for the four fields with a stated rule.
pub fn expected_brst_rule(field: BrstField) -> Option<BrstVariation> {
    let lc = Ghost::Lambda.bit() | Ghost::C2.bit();
    match field {
        BrstField::Q => Some(BrstVariation::Vector(BTreeMap::from([(lc, VectorExpr::coord())]))),
        BrstField::Theta => Some(BrstVariation::Scalar(GradedExpr::product(
            &[Ghost::Lambda, Ghost::C2],
            -ScalarExpr::s(),
        ))),
        BrstField::Cbar => Some(BrstVariation::Scalar(GradedExpr::product(
            &[Ghost::Lambda],
            -ScalarExpr::var(Var::B2),
        ))),
        BrstField::C | BrstField::B => Some(BrstVariation::Scalar(GradedExpr::zero())),
        BrstField::Pi | BrstField::PiTheta => None,
    }
}

/// `{Q,Q}`, `{Q,H_m}`, `{{Psi,Q},Q}`, ghost numbers, and the second-class
/// negative control.
pub fn verify_brst_relations() -> Result<Vec<Finding>> {
    let (q, psi, hm) = build_charges();
    let mut out = Vec::new();
    for (name, g, want) in [("Q", &q, 1), ("Psi", &psi, -1), ("H_m", &hm, 0)] {
        let got = g.ghost_number();
        out.push(if got == Some(want) {
            Finding::pass(alloc::format!("ghost number of {}", name), "gh(Q) = 1, gh(Psi) = -1, gh(H_m) = 0")
        } else {
            Finding::fail(
                alloc::format!("ghost number of {}", name),
                alloc::format!("{:?}", got),
                "gh(Q) = 1, gh(Psi) = -1, gh(H_m) = 0",
            )
        });
    }
    let qq = super_poisson(&q, &q)?;
    out.push(Finding::zero_check("BRST {Q, Q} = 0", &qq, qq.is_zero(), "Q^2 = {Q, Q} = 0"));
    let qh = super_poisson(&q, &hm)?;
    out.push(Finding::zero_check("BRST {Q, H_m} = 0", &qh, qh.is_zero(), "{Q, H_m} = 0"));
    let pqq = super_poisson(&super_poisson(&psi, &q)?, &q)?;
    out.push(Finding::zero_check("BRST {{Psi, Q}, Q} = 0", &pqq, pqq.is_zero(), "{{Psi, Q}, Q} = 0"));
    let swapped = super_poisson(&q, &minimal_hamiltonian_swapped())?;
    out.push(Finding::info(
        "BRST {Q, H~' - 2 C1 Pbar2}",
        &swapped,
        "ghost term with C1 to the left of Pbar2",
    ));
    let bad = second_class_charge();
    let bad_qq = super_poisson(&bad, &bad)?;
    out.push(if bad_qq.is_zero() {
        Finding::fail("negative control: second-class charge is not nilpotent", &bad_qq, "{Q, Q} != 0 without first-class constraints")
    } else {
        Finding::pass("negative control: second-class charge is not nilpotent", "{Q, Q} != 0 without first-class constraints")
    });
    Ok(out)
}
