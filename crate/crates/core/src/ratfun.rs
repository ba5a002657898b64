//! Rational functions with a factored denominator.
//!
//! The denominator is kept as a product of monic "atoms" raised to positive
//! powers. Single variables are always split off as their own atoms, so the
//! common denominators `S`, `S + 2 theta` stay small. No multivariate GCD is
//! computed: after every operation each atom is trial-divided out of the
//! numerator as often as it goes. Two values are compared by subtracting,
//! which is exact regardless of how the atoms happen to be split.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::coeff::GaussRational;
use crate::poly::{Monomial, Poly, Var};

#[derive(Clone, Debug, Default)]
pub struct RatFun {
    num: Poly,
    den: BTreeMap<Poly, u32>,
}

impl RatFun {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn from_poly(num: Poly) -> Self {
        Self {
            num,
            den: BTreeMap::new(),
        }
    }

    pub fn constant(c: GaussRational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Self::constant(GaussRational::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Poly::var(v))
    }

    /// `num / den`; `None` when `den` is the zero polynomial.
    pub fn from_fraction(num: Poly, den: Poly) -> Option<Self> {
        Self::from_poly(den).inv().map(|inv| &Self::from_poly(num) * &inv)
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    /// Denominator atoms with their multiplicities.
    pub fn denominator_factors(&self) -> impl Iterator<Item = (&Poly, u32)> {
        self.den.iter().map(|(a, e)| (a, *e))
    }

    pub fn denominator(&self) -> Poly {
        self.den
            .iter()
            .fold(Poly::one(), |acc, (a, e)| &acc * &a.pow(*e))
    }

    /// Same denominator, different numerator.
    pub fn with_numerator(&self, num: Poly) -> Self {
        Self::normalized(num, self.den.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    /// The value if this is a constant.
    pub fn as_constant(&self) -> Option<GaussRational> {
        if self.den.is_empty() && self.num.is_constant() {
            Some(self.num.constant_term())
        } else {
            None
        }
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.keys().any(|a| a.contains_var(v))
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    fn normalized(mut num: Poly, mut den: BTreeMap<Poly, u32>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        for (atom, e) in den.iter_mut() {
            while *e > 0 {
                match num.exact_div(atom) {
                    Some(q) => {
                        num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        den.retain(|_, e| *e > 0);
        Self { num, den }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        let mut num = Poly::one();
        for (a, e) in &self.den {
            num = &num * &a.pow(*e);
        }
        let mut den = BTreeMap::new();
        let c = insert_atom(&mut den, self.num.clone(), 1);
        let num = num.scale(&c.inv().expect("nonzero content"));
        Some(Self::normalized(num, den))
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|inv| self * &inv)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> Self {
        let mut out = Self {
            num: self.num.derivative(v),
            den: self.den.clone(),
        };
        out = Self::normalized(out.num, out.den);
        for (atom, e) in &self.den {
            let da = atom.derivative(v);
            if da.is_zero() {
                continue;
            }
            // d(a^-e) = -e a' a^(-e-1)
            let mut den = self.den.clone();
            *den.get_mut(atom).unwrap() += 1;
            let num = (&self.num * &da).scale(&GaussRational::from_int(-(*e as i64)));
            out = &out + &Self::normalized(num, den);
        }
        out
    }

    /// Replace `v` by `value`; `None` if a denominator vanishes.
    pub fn substitute(&self, v: Var, value: &RatFun) -> Option<Self> {
        if !self.contains_var(v) {
            return Some(self.clone());
        }
        if value.is_polynomial() {
            let num = Self::from_poly(self.num.substitute(v, &value.num));
            let mut den = Self::one();
            for (a, e) in &self.den {
                den = &den * &Self::from_poly(a.substitute(v, &value.num)).pow(*e);
            }
            return num.checked_div(&den);
        }
        let eval = |p: &Poly| -> Self {
            p.evaluate(Self::one(), |c| Self::constant(c.clone()), |x| {
                if x == v {
                    value.clone()
                } else {
                    Self::var(x)
                }
            })
        };
        let num = eval(&self.num);
        let mut den = Self::one();
        for (a, e) in &self.den {
            den = &den * &eval(a).pow(*e);
        }
        num.checked_div(&den)
    }

    /// Structural identity (same numerator and atoms). Implies equality.
    pub fn same_form(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

/// Factor `p^e` into `den` and return the constant `c` with
/// `p^e = c * (inserted atoms)`.
fn insert_atom(den: &mut BTreeMap<Poly, u32>, p: Poly, e: u32) -> GaussRational {
    let m = p.monomial_content();
    for v in Var::ALL {
        let k = m.exponent(v) as u32;
        if k > 0 {
            *den.entry(Poly::var(v)).or_insert(0) += k * e;
        }
    }
    let mut rest = p.div_monomial(&m);
    if !rest.is_constant() {
        let existing: Vec<Poly> = den.keys().filter(|a| a.num_terms() > 1).cloned().collect();
        for atom in existing {
            while let Some(q) = rest.exact_div(&atom) {
                rest = q;
                *den.get_mut(&atom).unwrap() += e;
            }
        }
    }
    if rest.is_constant() {
        return rest.constant_term().pow(e as i32).expect("integer power");
    }
    let (lc, monic) = rest.make_monic();
    *den.entry(monic).or_insert(0) += e;
    lc.pow(e as i32).expect("integer power")
}

impl Poly {
    /// Replace `v` by the polynomial `value`.
    pub fn substitute(&self, v: Var, value: &Poly) -> Poly {
        if !self.contains_var(v) {
            return self.clone();
        }
        let mut powers: Vec<Poly> = alloc::vec![Poly::one()];
        let mut out = Poly::zero();
        for (m, c) in self.terms() {
            let e = m.exponent(v) as usize;
            while powers.len() <= e {
                let next = &powers[powers.len() - 1] * value;
                powers.push(next);
            }
            let rest = Poly::term(c.clone(), m.with_exponent(v, 0));
            out = &out + &(&rest * &powers[e]);
        }
        out
    }
}

impl PartialEq for RatFun {
    fn eq(&self, other: &Self) -> bool {
        self.same_form(other) || (self - other).is_zero()
    }
}

impl Eq for RatFun {}

impl<'a> Add<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFun::normalized(&self.num + &rhs.num, self.den.clone());
        }
        let mut lcm = self.den.clone();
        for (a, e) in &rhs.den {
            let slot = lcm.entry(a.clone()).or_insert(0);
            *slot = (*slot).max(*e);
        }
        let lift = |r: &RatFun| -> Poly {
            let mut n = r.num.clone();
            for (a, e) in &lcm {
                let have = r.den.get(a).copied().unwrap_or(0);
                if *e > have {
                    n = &n * &a.pow(*e - have);
                }
            }
            n
        };
        RatFun::normalized(&lift(self) + &lift(rhs), lcm)
    }
}

impl<'a> Sub<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &-rhs
    }
}

impl<'a> Mul<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        let mut den = self.den.clone();
        for (a, e) in &rhs.den {
            *den.entry(a.clone()).or_insert(0) += e;
        }
        RatFun::normalized(&self.num * &rhs.num, den)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for RatFun {
    type Output = RatFun;
    fn add(self, rhs: RatFun) -> RatFun {
        &self + &rhs
    }
}

impl Mul for RatFun {
    type Output = RatFun;
    fn mul(self, rhs: RatFun) -> RatFun {
        &self * &rhs
    }
}

fn needs_parens(p: &Poly) -> bool {
    p.num_terms() > 1
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        if needs_parens(&self.num) {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        f.write_str("/")?;
        let multi = self.den.len() > 1 || self.den.values().any(|&e| e > 1);
        if multi {
            f.write_str("(")?;
        }
        // Single-variable atoms first.
        let mut atoms: Vec<(&Poly, &u32)> = self.den.iter().collect();
        atoms.sort_by_key(|(a, _)| a.num_terms() > 1);
        for (idx, (a, e)) in atoms.into_iter().enumerate() {
            if idx > 0 {
                f.write_str("*")?;
            }
            if needs_parens(a) {
                write!(f, "({})", a)?;
            } else {
                write!(f, "{}", a)?;
            }
            if *e > 1 {
                write!(f, "^{}", e)?;
            }
        }
        if multi {
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Convenience: `x^e` as a monomial rational function.
pub fn var_pow(v: Var, e: u16) -> RatFun {
    RatFun::from_poly(Poly::term(GaussRational::one(), Monomial::var_pow(v, e)))
}
