//! Covariant differential operators in `q_i`, `D_i = d/dq_i`, the Euler
//! operator `E = q.D` and the flat Laplacian `L = D.D`, brought to the
//! normal form `f(S) * q.. * D.. * delta.. * E^a * L^b`.
//!
//! Index labels are formal. A label that occurs twice in a word is summed
//! over and disappears during normal ordering; a label that occurs once is
//! free and survives in every term.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::check::Finding;
use crate::coeff::GaussRational;
use crate::error::{AlgebraError, Result};
use crate::poly::Var;
use crate::scalar::ScalarExpr;

/// Formal index label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(pub u8);

impl Label {
    pub const I: Label = Label(0);
    pub const J: Label = Label(1);
    pub const K: Label = Label(2);
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [char; 6] = ['i', 'j', 'k', 'm', 'n', 'r'];
        match NAMES.get(self.0 as usize) {
            Some(c) => write!(f, "{}", c),
            None => write!(f, "a{}", self.0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpFactor {
    /// Multiplication by a function of `S` (and `d`, `c`).
    Scalar(ScalarExpr),
    Q(Label),
    D(Label),
    Delta(Label, Label),
    Euler,
    Laplacian,
}

/// Product of factors, read left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OpWord {
    factors: Vec<OpFactor>,
}

impl OpWord {
    pub fn new(factors: Vec<OpFactor>) -> Self {
        Self { factors }
    }

    pub fn factors(&self) -> &[OpFactor] {
        &self.factors
    }

    pub fn then(mut self, f: OpFactor) -> Self {
        self.factors.push(f);
        self
    }

    fn label_counts(&self) -> BTreeMap<Label, usize> {
        let mut counts = BTreeMap::new();
        for f in &self.factors {
            match f {
                OpFactor::Q(a) | OpFactor::D(a) => *counts.entry(*a).or_insert(0) += 1,
                OpFactor::Delta(a, b) => {
                    *counts.entry(*a).or_insert(0) += 1;
                    *counts.entry(*b).or_insert(0) += 1;
                }
                _ => {}
            }
        }
        counts
    }

    /// Labels occurring exactly once.
    pub fn free_labels(&self) -> Vec<Label> {
        self.label_counts()
            .into_iter()
            .filter(|&(_, n)| n == 1)
            .map(|(a, _)| a)
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        let counts = self.label_counts();
        if let Some((a, _)) = counts.iter().find(|&(_, &n)| n > 2) {
            return Err(AlgebraError::Unsupported(alloc::format!("label {} occurs more than twice", a)));
        }
        let free = counts.values().filter(|&&n| n == 1).count();
        if free > 2 {
            return Err(AlgebraError::TooManyFreeIndices(free));
        }
        Ok(())
    }
}

/// Index structure and powers of one normal-form term.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpKey {
    pub q: Vec<Label>,
    pub d: Vec<Label>,
    pub delta: Vec<(Label, Label)>,
    pub e: u32,
    pub l: u32,
}

impl OpKey {
    fn canonical(mut self) -> Self {
        self.q.sort();
        self.d.sort();
        for p in &mut self.delta {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
        }
        self.delta.sort();
        self
    }

    fn occurrences(&self, a: Label) -> usize {
        self.q.iter().filter(|&&x| x == a).count()
            + self.d.iter().filter(|&&x| x == a).count()
            + self.delta.iter().map(|&(x, y)| (x == a) as usize + (y == a) as usize).sum::<usize>()
    }

    fn replace_one(&mut self, from: Label, to: Label) {
        for slot in self.q.iter_mut().chain(self.d.iter_mut()) {
            if *slot == from {
                *slot = to;
                return;
            }
        }
        for (x, y) in self.delta.iter_mut() {
            if *x == from {
                *x = to;
                return;
            }
            if *y == from {
                *y = to;
                return;
            }
        }
    }

    pub fn labels(&self) -> Vec<Label> {
        let mut out: Vec<Label> = self.q.iter().chain(self.d.iter()).copied().collect();
        for &(a, b) in &self.delta {
            out.push(a);
            out.push(b);
        }
        out.sort();
        out
    }

    pub fn is_contracted(&self) -> bool {
        self.q.is_empty() && self.d.is_empty() && self.delta.is_empty()
    }

    fn with_e(&self, e: u32) -> Self {
        Self { e, ..self.clone() }
    }
}

fn remove_one(v: &mut Vec<Label>, a: Label) {
    let pos = v.iter().position(|&x| x == a).expect("label present");
    v.remove(pos);
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::from(1);
    for t in 0..k {
        acc = acc * (n - t) / (t + 1);
    }
    acc
}

fn big(n: BigInt) -> ScalarExpr {
    ScalarExpr::constant(GaussRational::real(n.into()))
}

/// Finite sum of normal-form terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NormalOp {
    terms: BTreeMap<OpKey, ScalarExpr>,
}

impl NormalOp {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::scalar(ScalarExpr::one())
    }

    pub fn scalar(f: ScalarExpr) -> Self {
        let mut out = Self::zero();
        out.add_term(OpKey::default(), f);
        out
    }

    pub fn factor(f: OpFactor) -> Self {
        Self::identity().apply(&f)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OpKey, &ScalarExpr)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, key: &OpKey) -> ScalarExpr {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Free labels, taken from any term (all terms share them).
    pub fn free_labels(&self) -> Vec<Label> {
        self.terms.keys().next().map(OpKey::labels).unwrap_or_default()
    }

    fn add_term(&mut self, key: OpKey, c: ScalarExpr) {
        if c.is_zero() {
            return;
        }
        let key = key.canonical();
        let sum = match self.terms.get(&key) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    fn add_op(&mut self, other: &NormalOp) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn scale(&self, s: &ScalarExpr) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), s * c);
        }
        out
    }

    /// Eliminate every label occurring twice in `key`.
    fn resolve(&mut self, coeff: ScalarExpr, key: OpKey) {
        if coeff.is_zero() {
            return;
        }
        let mut key = key.canonical();
        if let Some(pos) = key.delta.iter().position(|(a, b)| a == b) {
            key.delta.remove(pos);
            return self.resolve(&coeff * &ScalarExpr::d(), key);
        }
        for idx in 0..key.delta.len() {
            let (a, b) = key.delta[idx];
            for (x, y) in [(a, b), (b, a)] {
                if key.occurrences(x) > 1 {
                    key.delta.remove(idx);
                    key.replace_one(x, y);
                    return self.resolve(coeff, key);
                }
            }
        }
        if let Some(a) = key.q.windows(2).find(|w| w[0] == w[1]).map(|w| w[0]) {
            remove_one(&mut key.q, a);
            remove_one(&mut key.q, a);
            return self.resolve(&coeff * &ScalarExpr::s(), key);
        }
        if let Some(a) = key.d.windows(2).find(|w| w[0] == w[1]).map(|w| w[0]) {
            // D_a D_a = L, and L E^e = (E + 2)^e L
            remove_one(&mut key.d, a);
            remove_one(&mut key.d, a);
            let e = key.e;
            for k in 0..=e {
                let w = big(binomial(e, k) * BigInt::from(2).pow(e - k));
                let mut nk = key.with_e(k);
                nk.l += 1;
                self.resolve(&coeff * &w, nk);
            }
            return;
        }
        if let Some(a) = key.q.iter().copied().find(|a| key.d.contains(a)) {
            // q_a D_a D'' = E D'' = D'' (E - |D''|)
            remove_one(&mut key.q, a);
            remove_one(&mut key.d, a);
            let n = key.d.len() as i64;
            let up = key.with_e(key.e + 1);
            self.resolve(coeff.clone(), up);
            self.resolve(&coeff * &ScalarExpr::int(-n), key);
            return;
        }
        self.add_term(key, coeff);
    }

    /// `L * M` for a single term `M` with unit coefficient.
    fn laplacian_on(key: &OpKey) -> NormalOp {
        let mut out = NormalOp::zero();
        if let Some((&b, rest)) = key.q.split_first() {
            let tail = OpKey {
                q: rest.to_vec(),
                ..key.clone()
            };
            let tail_op = NormalOp {
                terms: BTreeMap::from([(tail.clone(), ScalarExpr::one())]),
            };
            // L q_b M' = q_b (L M') + 2 D_b M'
            out.add_op(&Self::laplacian_on(&tail).apply(&OpFactor::Q(b)));
            out.add_op(&tail_op.apply(&OpFactor::D(b)).scale(&ScalarExpr::int(2)));
            return out;
        }
        let e = key.e;
        for k in 0..=e {
            let w = big(binomial(e, k) * BigInt::from(2).pow(e - k));
            let mut nk = key.with_e(k);
            nk.l += 1;
            out.add_term(nk, w);
        }
        out
    }

    /// `factor * self`, normal ordered.
    pub fn apply(&self, factor: &OpFactor) -> NormalOp {
        let mut out = NormalOp::zero();
        for (key, f) in &self.terms {
            match factor {
                OpFactor::Scalar(g) => out.add_term(key.clone(), g * f),
                OpFactor::Q(a) => {
                    let mut k = key.clone();
                    k.q.push(*a);
                    out.resolve(f.clone(), k);
                }
                OpFactor::Delta(a, b) => {
                    let mut k = key.clone();
                    k.delta.push((*a, *b));
                    out.resolve(f.clone(), k);
                }
                OpFactor::Euler => {
                    // E f M = f E M + 2 S f' M,  E q = q (E + 1),  E D = D (E - 1)
                    let shift = key.q.len() as i64 - key.d.len() as i64;
                    out.add_term(key.with_e(key.e + 1), f.clone());
                    out.add_term(key.clone(), f * &ScalarExpr::int(shift));
                    let df = f.derivative(Var::S);
                    out.add_term(key.clone(), &(&ScalarExpr::int(2) * &ScalarExpr::s()) * &df);
                }
                OpFactor::D(a) => {
                    // D_a f M = f D_a M + 2 f' q_a M
                    let df = f.derivative(Var::S);
                    let mut k = key.clone();
                    k.q.push(*a);
                    out.resolve(&ScalarExpr::int(2) * &df, k);
                    let mut k = key.clone();
                    k.d.push(*a);
                    out.resolve(f.clone(), k);
                    for (j, &b) in key.q.iter().enumerate() {
                        let mut k = key.clone();
                        k.q.remove(j);
                        k.delta.push((*a, b));
                        out.resolve(f.clone(), k);
                    }
                }
                OpFactor::Laplacian => {
                    // L f M = f L M + (2 d f' + 4 S f'') M + 4 f' E M
                    let df = f.derivative(Var::S);
                    let ddf = df.derivative(Var::S);
                    out.add_op(&Self::laplacian_on(key).scale(f));
                    let c0 = &(&(&ScalarExpr::int(2) * &ScalarExpr::d()) * &df)
                        + &(&(&ScalarExpr::int(4) * &ScalarExpr::s()) * &ddf);
                    out.add_term(key.clone(), c0);
                    let unit = NormalOp {
                        terms: BTreeMap::from([(key.clone(), ScalarExpr::one())]),
                    };
                    out.add_op(&unit.apply(&OpFactor::Euler).scale(&(&ScalarExpr::int(4) * &df)));
                }
            }
        }
        out
    }

    /// `self * other`.
    pub fn compose(&self, other: &NormalOp) -> Result<NormalOp> {
        let mut out = NormalOp::zero();
        for (key, f) in &self.terms {
            let mut acc = other.clone();
            for _ in 0..key.l {
                acc = acc.apply(&OpFactor::Laplacian);
            }
            for _ in 0..key.e {
                acc = acc.apply(&OpFactor::Euler);
            }
            for &(a, b) in key.delta.iter().rev() {
                acc = acc.apply(&OpFactor::Delta(a, b));
            }
            for &a in key.d.iter().rev() {
                acc = acc.apply(&OpFactor::D(a));
            }
            for &a in key.q.iter().rev() {
                acc = acc.apply(&OpFactor::Q(a));
            }
            out.add_op(&acc.scale(f));
        }
        if let Some(n) = out.terms.keys().map(|k| k.labels().len()).max() {
            if n > 2 {
                return Err(AlgebraError::TooManyFreeIndices(n));
            }
        }
        Ok(out)
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &NormalOp) -> Result<NormalOp> {
        Ok(&self.compose(other)? - &other.compose(self)?)
    }

    /// Rename a free label.
    pub fn relabel(&self, from: Label, to: Label) -> NormalOp {
        let mut out = NormalOp::zero();
        for (k, c) in &self.terms {
            let mut k = k.clone();
            for slot in k.q.iter_mut().chain(k.d.iter_mut()) {
                if *slot == from {
                    *slot = to;
                }
            }
            for (x, y) in k.delta.iter_mut() {
                if *x == from {
                    *x = to;
                }
                if *y == from {
                    *y = to;
                }
            }
            out.resolve(c.clone(), k);
        }
        out
    }

    /// Coefficient of `E^e L^l` in a fully contracted operator.
    pub fn scalar_coefficient(&self, e: u32, l: u32) -> ScalarExpr {
        self.coefficient(&OpKey {
            e,
            l,
            ..OpKey::default()
        })
    }

    /// Substitute a parameter (such as `c`) in every coefficient.
    pub fn substitute(&self, v: Var, value: &ScalarExpr) -> Result<NormalOp> {
        let mut out = NormalOp::zero();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c.substitute(v, value)?);
        }
        Ok(out)
    }
}

impl<'a> core::ops::Add<&'a NormalOp> for &'a NormalOp {
    type Output = NormalOp;
    fn add(self, rhs: &NormalOp) -> NormalOp {
        let mut out = self.clone();
        out.add_op(rhs);
        out
    }
}

impl<'a> core::ops::Sub<&'a NormalOp> for &'a NormalOp {
    type Output = NormalOp;
    fn sub(self, rhs: &NormalOp) -> NormalOp {
        let mut out = self.clone();
        out.add_op(&rhs.scale(&ScalarExpr::int(-1)));
        out
    }
}

impl fmt::Display for NormalOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (k, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})", c)?;
            for a in &k.q {
                write!(f, "*q_{}", a)?;
            }
            for a in &k.d {
                write!(f, "*D_{}", a)?;
            }
            for (a, b) in &k.delta {
                write!(f, "*delta_{}{}", a, b)?;
            }
            match k.e {
                0 => {}
                1 => f.write_str("*E")?,
                e => write!(f, "*E^{}", e)?,
            }
            match k.l {
                0 => {}
                1 => f.write_str("*L")?,
                l => write!(f, "*L^{}", l)?,
            }
        }
        Ok(())
    }
}

/// Normal-order a word.
pub fn normal_order(w: &OpWord) -> Result<NormalOp> {
    w.validate()?;
    let mut acc = NormalOp::identity();
    for f in w.factors().iter().rev() {
        acc = acc.apply(f);
    }
    Ok(acc)
}

/// Evaluate on a harmonic polynomial `h` of degree `l` (`L h = 0`,
/// `E h = l h`) at `S = 1`. The result is a polynomial in `l`, `d`, `c`.
pub fn apply_to_harmonic(op: &NormalOp) -> Result<ScalarExpr> {
    let l = ScalarExpr::var(Var::L);
    let mut out = ScalarExpr::zero();
    for (k, c) in op.terms() {
        if !k.is_contracted() {
            return Err(AlgebraError::FreeIndicesRemain);
        }
        if k.l > 0 {
            continue;
        }
        out = &out + &(&c.substitute(Var::S, &ScalarExpr::one())? * &l.pow(k.e));
    }
    Ok(out)
}

fn inv_s() -> ScalarExpr {
    ScalarExpr::s().inv().expect("S is nonzero")
}

const DUMMY: Label = Label(9);

/// `(delta_ij - q_i q_j/S) D_j` with free label `i`.
pub fn projected_gradient(i: Label) -> Result<NormalOp> {
    let a = normal_order(&OpWord::new(alloc::vec![OpFactor::Delta(i, DUMMY), OpFactor::D(DUMMY)]))?;
    let b = normal_order(&OpWord::new(alloc::vec![
        OpFactor::Scalar(inv_s()),
        OpFactor::Q(i),
        OpFactor::Q(DUMMY),
        OpFactor::D(DUMMY),
    ]))?;
    Ok(&a - &b)
}

/// `pi_i = -i (delta_ij - q_i q_j/S) D_j`.
pub fn momentum_operator(i: Label) -> Result<NormalOp> {
    Ok(projected_gradient(i)?.scale(&-ScalarExpr::i()))
}

/// `Pi_i = pi_i - i c q_i / S`.
pub fn generalized_momentum(i: Label, c: &ScalarExpr) -> Result<NormalOp> {
    let shift = NormalOp::factor(OpFactor::Q(i)).scale(&(&(&-ScalarExpr::i() * c) * &inv_s()));
    Ok(&momentum_operator(i)? + &shift)
}

/// Symmetric form
/// `Pi^N_i = -(i/2)[P_ij D_j + D_j P_ij + 2 c q_i / S]`.
pub fn weyl_momentum(i: Label, c: &ScalarExpr) -> Result<NormalOp> {
    let left = projected_gradient(i)?;
    let right_a = normal_order(&OpWord::new(alloc::vec![OpFactor::D(DUMMY), OpFactor::Delta(i, DUMMY)]))?;
    let right_b = normal_order(&OpWord::new(alloc::vec![
        OpFactor::D(DUMMY),
        OpFactor::Scalar(inv_s()),
        OpFactor::Q(i),
        OpFactor::Q(DUMMY),
    ]))?;
    let shift = NormalOp::factor(OpFactor::Q(i)).scale(&(&(&ScalarExpr::int(2) * c) * &inv_s()));
    let sum = &(&(&left + &right_a) - &right_b) + &shift;
    Ok(sum.scale(&(&ScalarExpr::i() * &ScalarExpr::ratio(-1, 2))))
}

/// `Pi^N_k Pi^N_k`, normal ordered.
pub fn build_weyl_product(c: &ScalarExpr) -> Result<NormalOp> {
    let p = weyl_momentum(Label::K, c)?;
    p.compose(&p)
}

/// `-L + ((d-1)/S) E + (E^2 - E)/S + ((d-1)^2/4 - c^2)/S`.
pub fn expected_weyl_product(c: &ScalarExpr) -> NormalOp {
    let d1 = &ScalarExpr::d() - &ScalarExpr::one();
    let mut out = NormalOp::scalar(&(&(&d1 * &d1) * &ScalarExpr::ratio(1, 4)) - &(c * c)).scale(&inv_s());
    let key = |e, l| OpKey {
        e,
        l,
        ..OpKey::default()
    };
    out.add_term(key(0, 1), ScalarExpr::int(-1));
    out.add_term(key(1, 0), &d1 * &inv_s());
    out.add_term(key(2, 0), inv_s());
    out.add_term(key(1, 0), -inv_s());
    out
}

/// `i (delta_ij - q_i q_j / S)` as a zeroth-order operator.
pub fn projector_op(i: Label, j: Label) -> NormalOp {
    let mut out = NormalOp::zero();
    out.add_term(
        OpKey {
            delta: alloc::vec![(i, j)],
            ..OpKey::default()
        },
        ScalarExpr::i(),
    );
    out.add_term(
        OpKey {
            q: alloc::vec![i, j],
            ..OpKey::default()
        },
        &-ScalarExpr::i() * &inv_s(),
    );
    out
}

/// `(i/S)(q_j X_i - q_i X_j)` for a vector operator family `X`.
fn rotation_rhs(x_i: &NormalOp, x_j: &NormalOp) -> Result<NormalOp> {
    let qi = NormalOp::factor(OpFactor::Q(Label::I));
    let qj = NormalOp::factor(OpFactor::Q(Label::J));
    let diff = &qj.compose(x_i)? - &qi.compose(x_j)?;
    Ok(diff.scale(&(&ScalarExpr::i() * &inv_s())))
}

/// The three commutators for `pi_i` and for `Pi_i` with symbolic `c`.
pub fn verify_quantum_commutators() -> Result<Vec<Finding>> {
    let qi = NormalOp::factor(OpFactor::Q(Label::I));
    let qj = NormalOp::factor(OpFactor::Q(Label::J));
    let mut out = Vec::new();
    let zero = qi.commutator(&qj)?;
    out.push(Finding::zero_check("quantum [q_i, q_j] = 0", &zero, zero.is_zero(), "[q_i, q_j] = 0"));
    let c = ScalarExpr::c();
    for (tag, pi_i, pi_j) in [
        ("pi", momentum_operator(Label::I)?, momentum_operator(Label::J)?),
        (
            "Pi",
            generalized_momentum(Label::I, &c)?,
            generalized_momentum(Label::J, &c)?,
        ),
    ] {
        let r = &qi.commutator(&pi_j)? - &projector_op(Label::I, Label::J);
        out.push(Finding::zero_check(
            alloc::format!("quantum [q_i, {}_j]", tag),
            &r,
            r.is_zero(),
            "[q_i, pi_j] = i (delta_ij - q_i q_j / q.q)",
        ));
        let r = &pi_i.commutator(&pi_j)? - &rotation_rhs(&pi_i, &pi_j)?;
        out.push(Finding::zero_check(
            alloc::format!("quantum [{0}_i, {0}_j]", tag),
            &r,
            r.is_zero(),
            "[pi_i, pi_j] = (i / q.q)(q_j pi_i - q_i pi_j)",
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    const A: Label = Label(5);
    const B: Label = Label(6);

    #[test]
    fn derivative_past_s() {
        let got = normal_order(&OpWord::new(vec![OpFactor::D(Label::I), OpFactor::Scalar(ScalarExpr::s())])).unwrap();
        let mut expect = NormalOp::factor(OpFactor::D(Label::I)).scale(&ScalarExpr::s());
        expect = &expect + &NormalOp::factor(OpFactor::Q(Label::I)).scale(&ScalarExpr::int(2));
        assert_eq!(got, expect);
    }

    #[test]
    fn laplacian_past_s() {
        let got = normal_order(&OpWord::new(vec![OpFactor::Laplacian, OpFactor::Scalar(ScalarExpr::s())])).unwrap();
        let mut expect = NormalOp::factor(OpFactor::Laplacian).scale(&ScalarExpr::s());
        expect = &expect + &NormalOp::factor(OpFactor::Euler).scale(&ScalarExpr::int(4));
        expect = &expect + &NormalOp::scalar(&ScalarExpr::int(2) * &ScalarExpr::d());
        assert_eq!(got, expect);
    }

    #[test]
    fn double_contraction_is_e_squared_minus_e() {
        let w = OpWord::new(vec![OpFactor::Q(A), OpFactor::Q(B), OpFactor::D(A), OpFactor::D(B)]);
        let got = normal_order(&w).unwrap();
        let e = NormalOp::factor(OpFactor::Euler);
        let expect = &e.compose(&e).unwrap() - &e;
        assert_eq!(got, expect);
    }

    #[test]
    fn contractions() {
        let w = OpWord::new(vec![OpFactor::D(A), OpFactor::Q(A)]);
        let expect = &NormalOp::factor(OpFactor::Euler) + &NormalOp::scalar(ScalarExpr::d());
        assert_eq!(normal_order(&w).unwrap(), expect);
        let w = OpWord::new(vec![OpFactor::D(A), OpFactor::D(A)]);
        assert_eq!(normal_order(&w).unwrap(), NormalOp::factor(OpFactor::Laplacian));
    }

    #[test]
    fn too_many_free_labels() {
        let w = OpWord::new(vec![OpFactor::Q(Label(0)), OpFactor::Q(Label(1)), OpFactor::D(Label(2))]);
        assert_eq!(normal_order(&w), Err(AlgebraError::TooManyFreeIndices(3)));
    }

    #[test]
    fn commutators_hold() {
        for f in verify_quantum_commutators().unwrap() {
            assert!(f.passed(), "{:?}", f);
        }
    }

    #[test]
    fn weyl_product_matches() {
        let c = ScalarExpr::c();
        assert_eq!(build_weyl_product(&c).unwrap(), expected_weyl_product(&c));
    }

    #[test]
    fn harmonic_eigenvalue() {
        let c = ScalarExpr::c();
        let got = apply_to_harmonic(&build_weyl_product(&c).unwrap()).unwrap();
        let l = ScalarExpr::var(Var::L);
        let d = ScalarExpr::d();
        let d1 = &d - &ScalarExpr::one();
        let expect = &(&(&l * &(&(&l + &d) - &ScalarExpr::int(2))) + &(&(&d1 * &d1) * &ScalarExpr::ratio(1, 4)))
            - &(&c * &c);
        assert_eq!(got, expect);
        assert_eq!(apply_to_harmonic(&NormalOp::identity()).unwrap(), ScalarExpr::one());
    }
}
