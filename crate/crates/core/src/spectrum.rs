//! Energy levels on the sphere and the value of the shift parameter `c`
//! that makes the two quantization schemes agree.

use alloc::vec::Vec;

use num_rational::BigRational;

use crate::error::{AlgebraError, Result};
use crate::poly::{Poly, Var};
use crate::ratfun::RatFun;
use crate::scalar::ScalarExpr;

fn half() -> ScalarExpr {
    ScalarExpr::ratio(1, 2)
}

/// `l (l + d - 2)`
fn casimir(l: &ScalarExpr, d: &ScalarExpr) -> ScalarExpr {
    l * &(&(l + d) - &ScalarExpr::int(2))
}

/// `(1/2)[l(l+d-2) + (d-1)^2/4 - c2]` with `c2 = c^2`.
pub fn energy_dirac_c2(l: &ScalarExpr, d: &ScalarExpr, c2: &ScalarExpr) -> ScalarExpr {
    let d1 = d - &ScalarExpr::one();
    let shift = &(&(&d1 * &d1) * &ScalarExpr::ratio(1, 4)) - c2;
    &half() * &(&casimir(l, d) + &shift)
}

/// `(1/2)[l(l+d-2) + (d-1)^2/4 - c^2]`
pub fn energy_dirac(l: &ScalarExpr, d: &ScalarExpr, c: &ScalarExpr) -> ScalarExpr {
    energy_dirac_c2(l, d, &(c * c))
}

/// `(1/2)[l(l+d-2) + d(d-3)/4]`
pub fn energy_bft(l: &ScalarExpr, d: &ScalarExpr) -> ScalarExpr {
    let shift = &(d * &(d - &ScalarExpr::int(3))) * &ScalarExpr::ratio(1, 4);
    &half() * &(&casimir(l, d) + &shift)
}

/// Solve `dirac(l, d, c) = bft(l, d)` for `c^2` as an identity in `l`.
pub fn fix_c_with<F, G>(dirac: F, bft: G, d: &ScalarExpr) -> Result<ScalarExpr>
where
    F: Fn(&ScalarExpr, &ScalarExpr, &ScalarExpr) -> ScalarExpr,
    G: Fn(&ScalarExpr, &ScalarExpr) -> ScalarExpr,
{
    let l = ScalarExpr::var(Var::L);
    let c = ScalarExpr::c();
    let diff = &dirac(&l, d, &c) - &bft(&l, d);
    if diff.has_root() {
        return Err(AlgebraError::NoSolution("energy difference involves R".into()));
    }
    let r = diff.rational_part();
    if r.denominator_factors().any(|(a, _)| a.contains_var(Var::L) || a.contains_var(Var::C)) {
        return Err(AlgebraError::NoSolution("energy difference is not polynomial in l and c".into()));
    }
    let by_l = r.numerator().coefficients_in(Var::L);
    if by_l.keys().any(|&k| k > 0) {
        return Err(AlgebraError::NoSolution("the difference depends on l".into()));
    }
    let constant = by_l.get(&0).cloned().unwrap_or_default();
    let by_c = constant.coefficients_in(Var::C);
    if by_c.keys().any(|&k| k != 0 && k != 2) {
        return Err(AlgebraError::NoSolution("the difference is not of the form a + b c^2".into()));
    }
    let b = by_c.get(&2).cloned().unwrap_or_default();
    if b.is_zero() {
        return Err(AlgebraError::NoSolution("the difference does not depend on c".into()));
    }
    let a = by_c.get(&0).cloned().unwrap_or_default();
    let den = r.with_numerator(Poly::one());
    let a = ScalarExpr::from(&RatFun::from_poly(a) * &den);
    let b = ScalarExpr::from(&RatFun::from_poly(b) * &den);
    (-a).checked_div(&b)
}

/// `c^2` for which the two spectra coincide.
pub fn fix_c(d: &ScalarExpr) -> Result<ScalarExpr> {
    fix_c_with(energy_dirac, energy_bft, d)
}

/// How `c` is chosen in a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CMode {
    /// `c^2` from [`fix_c`].
    Fixed,
    /// An explicit value of `c`.
    Value(BigRational),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumRow {
    pub l: u32,
    pub dirac: BigRational,
    pub bft: BigRational,
    /// `E_dirac(l) - E_dirac(l-1)`, absent for `l = 0`.
    pub gap: Option<BigRational>,
}

fn as_rational(e: &ScalarExpr) -> Result<BigRational> {
    let c = e
        .as_constant()
        .ok_or_else(|| AlgebraError::Unsupported("energy is not a number".into()))?;
    if !c.is_real() {
        return Err(AlgebraError::Unsupported("energy is not real".into()));
    }
    Ok(c.re().clone())
}

/// Exact energies for `l = 0..=l_max` in dimension `d`.
pub fn spectrum_table(d: i64, l_max: u32, mode: &CMode) -> Result<Vec<SpectrumRow>> {
    let ds = ScalarExpr::int(d);
    let c2 = match mode {
        CMode::Fixed => fix_c(&ds)?,
        CMode::Value(c) => {
            let c = ScalarExpr::constant(c.clone().into());
            &c * &c
        }
    };
    let mut rows: Vec<SpectrumRow> = Vec::new();
    for l in 0..=l_max {
        let ls = ScalarExpr::int(l as i64);
        let dirac = as_rational(&energy_dirac_c2(&ls, &ds, &c2))?;
        let bft = as_rational(&energy_bft(&ls, &ds))?;
        let gap = rows.last().map(|prev| &dirac - &prev.dirac);
        rows.push(SpectrumRow { l, dirac, bft, gap });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn fixed_c_squared() {
        let d = ScalarExpr::d();
        let expect = &(&d + &ScalarExpr::one()) * &ScalarExpr::ratio(1, 4);
        assert_eq!(fix_c(&d).unwrap(), expect);
        assert_eq!(fix_c(&ScalarExpr::int(3)).unwrap(), ScalarExpr::one());
    }

    #[test]
    fn l_dependent_mismatch_has_no_solution() {
        let bad = |l: &ScalarExpr, d: &ScalarExpr| &energy_bft(l, d) + l;
        assert!(matches!(fix_c_with(energy_dirac, bad, &ScalarExpr::d()), Err(AlgebraError::NoSolution(_))));
    }

    #[test]
    fn d3_table() {
        let rows = spectrum_table(3, 2, &CMode::Fixed).unwrap();
        let got: Vec<_> = rows.iter().map(|r| (r.l, r.dirac.clone(), r.bft.clone(), r.gap.clone())).collect();
        assert_eq!(
            got,
            [
                (0, q(0, 1), q(0, 1), None),
                (1, q(1, 1), q(1, 1), Some(q(1, 1))),
                (2, q(3, 1), q(3, 1), Some(q(2, 1))),
            ]
        );
    }

    #[test]
    fn bft_values() {
        let e = energy_bft(&ScalarExpr::int(1), &ScalarExpr::int(4));
        assert_eq!(e, ScalarExpr::int(2));
        let e = energy_bft(&ScalarExpr::int(1), &ScalarExpr::int(2));
        assert_eq!(e, ScalarExpr::ratio(1, 4));
        let e = energy_dirac(&ScalarExpr::int(0), &ScalarExpr::int(3), &ScalarExpr::int(1));
        assert!(e.is_zero());
    }
}
