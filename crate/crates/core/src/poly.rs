//! Sparse multivariate polynomials over Gaussian rationals.
//!
//! The variable set is fixed: the nine bosonic generators of the extended
//! phase space plus four parameter symbols (dimension `d`, shift parameter
//! `c`, harmonic degree `l`, gauge parameter `eps`).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::coeff::GaussRational;

pub const NUM_VARS: usize = 13;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    /// `q_i q_i`
    S,
    /// `q_i pi_i`
    P,
    /// `pi_i pi_i`
    K,
    Theta,
    PiTheta,
    N1,
    B1,
    N2,
    B2,
    /// Dimension of the embedding space.
    D,
    /// Momentum shift parameter.
    C,
    /// Harmonic degree.
    L,
    /// Local gauge parameter.
    Eps,
}

impl Var {
    pub const ALL: [Var; NUM_VARS] = [
        Var::S,
        Var::P,
        Var::K,
        Var::Theta,
        Var::PiTheta,
        Var::N1,
        Var::B1,
        Var::N2,
        Var::B2,
        Var::D,
        Var::C,
        Var::L,
        Var::Eps,
    ];

    /// Phase-space generators (those that take part in brackets).
    pub const BOSONIC: [Var; 9] = [
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

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::S => "S",
            Var::P => "P",
            Var::K => "K",
            Var::Theta => "theta",
            Var::PiTheta => "pi_theta",
            Var::N1 => "N1",
            Var::B1 => "B1",
            Var::N2 => "N2",
            Var::B2 => "B2",
            Var::D => "d",
            Var::C => "c",
            Var::L => "l",
            Var::Eps => "eps",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.iter().copied().find(|v| v.name() == name)
    }

    pub fn is_parameter(self) -> bool {
        matches!(self, Var::D | Var::C | Var::L | Var::Eps)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Dense exponent vector, ordered lexicographically in [`Var`] order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial([u16; NUM_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u16) -> Self {
        let mut m = Self::default();
        m.0[v.index()] = e;
        m
    }

    pub fn exponent(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    pub fn exponents(&self) -> &[u16; NUM_VARS] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(*b).expect("monomial exponent overflow");
        }
        out
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Self {
        let mut out = *other;
        for (a, b) in out.0.iter_mut().zip(self.0.iter()) {
            *a -= *b;
        }
        out
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a = (*a).min(*b);
        }
        out
    }

    pub fn with_exponent(&self, v: Var, e: u16) -> Self {
        let mut out = *self;
        out.0[v.index()] = e;
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::ALL {
            let e = self.exponent(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v)?;
            } else {
                write!(f, "{}^{}", v, e)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, GaussRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussRational::one())
    }

    pub fn constant(c: GaussRational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn term(c: GaussRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn var(v: Var) -> Self {
        Self::term(GaussRational::one(), Monomial::var(v))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, GaussRational)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in iter {
            p.add_term(m, &c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&Monomial::one()))
    }

    /// Constant term (zero if absent).
    pub fn constant_term(&self) -> GaussRational {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_default()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<(&Monomial, &GaussRational)> {
        self.terms.iter().next_back()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: &GaussRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            out.add_term(
                m.with_exponent(v, e - 1),
                &(c * &GaussRational::from_int(e as i64)),
            );
        }
        out
    }

    /// Greatest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(*first, |g, m| g.gcd(m)),
        }
    }

    pub fn div_monomial(&self, m: &Monomial) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, a)| (m.quotient_of(k), a.clone())).collect(),
        }
    }

    /// Scale so the leading coefficient is one; returns the scale removed.
    pub fn make_monic(&self) -> (GaussRational, Poly) {
        match self.leading() {
            None => (GaussRational::one(), Self::zero()),
            Some((_, lc)) => {
                let lc = lc.clone();
                let inv = lc.inv().expect("nonzero leading coefficient");
                (lc, self.scale(&inv))
            }
        }
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (dm, dc) = divisor.leading()?;
        let dm = *dm;
        let dinv = dc.inv()?;
        if divisor.terms.len() == 1 {
            if !self.terms.keys().all(|m| dm.divides(m)) {
                return None;
            }
            return Some(self.div_monomial(&dm).scale(&dinv));
        }
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading() {
            if !dm.divides(rm) {
                return None;
            }
            let qm = dm.quotient_of(rm);
            let qc = rc * &dinv;
            rem = &rem - &divisor.mul_monomial(&qm).scale(&qc);
            quot.add_term(qm, &qc);
        }
        Some(quot)
    }

    /// Evaluate by mapping each variable into a commutative ring `T`.
    pub fn evaluate<T, L, V>(&self, one: T, lift: L, var: V) -> T
    where
        T: Clone + Add<Output = T> + Mul<Output = T>,
        L: Fn(&GaussRational) -> T,
        V: Fn(Var) -> T,
    {
        let mut powers: [Vec<T>; NUM_VARS] = Default::default();
        let mut acc: Option<T> = None;
        for (m, c) in &self.terms {
            let mut t = lift(c);
            for v in Var::ALL {
                let e = m.exponent(v) as usize;
                if e == 0 {
                    continue;
                }
                let table = &mut powers[v.index()];
                if table.is_empty() {
                    table.push(one.clone());
                }
                while table.len() <= e {
                    let next = table.last().unwrap().clone() * var(v);
                    table.push(next);
                }
                t = t * table[e].clone();
            }
            acc = Some(match acc {
                None => t,
                Some(a) => a + t,
            });
        }
        acc.unwrap_or_else(|| lift(&GaussRational::zero()))
    }

    /// Split by powers of `v`: returns `(k, coefficient of v^k)` pairs.
    pub fn coefficients_in(&self, v: Var) -> BTreeMap<u16, Poly> {
        let mut out: BTreeMap<u16, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            out.entry(e).or_default().add_term(m.with_exponent(v, 0), c);
        }
        out
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&GaussRational::from_int(-1))
    }
}

/// Terms are printed from the leading monomial down.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.prints_negative();
            let mag = if negative { -c } else { c.clone() };
            if idx == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else if negative {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", mag, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn s() -> Poly {
        Poly::var(Var::S)
    }
    fn th() -> Poly {
        Poly::var(Var::Theta)
    }

    #[test]
    fn exact_division_detects_remainders() {
        let two = Poly::constant(GaussRational::from_int(2));
        let a = &s() + &(&two * &th());
        let prod = &a * &(&s() * &s());
        assert_eq!(prod.exact_div(&a), Some(&s() * &s()));
        assert_eq!(prod.exact_div(&(&s() + &th())), None);
        assert_eq!((&a + &Poly::one()).exact_div(&s()), None);
    }

    #[test]
    fn derivative_and_content() {
        let p = &(&s() * &s()) * &th();
        assert_eq!(p.derivative(Var::S), &(&s() * &th()).scale(&GaussRational::from_int(2)) + &Poly::zero());
        assert_eq!(p.monomial_content(), Monomial::var_pow(Var::S, 2).mul(&Monomial::var(Var::Theta)));
    }

    #[test]
    fn display_is_leading_first() {
        let p = &(&s() * &s()) - &th().scale(&GaussRational::from_ratio(3, 2));
        assert_eq!(p.to_string(), "S^2 - 3/2*theta");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!((-&s().scale(&GaussRational::i())).to_string(), "-i*S");
    }

    #[test]
    fn evaluate_into_integers() {
        let p = &(&s() * &s()) + &th();
        let v = p.evaluate(
            GaussRational::one(),
            |c| c.clone(),
            |v| match v {
                Var::S => GaussRational::from_int(3),
                _ => GaussRational::from_int(5),
            },
        );
        assert_eq!(v, GaussRational::from_int(14));
    }
}
