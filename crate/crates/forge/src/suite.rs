//! The verification suite: every identity the engine can check, in a fixed
//! order, plus the negative controls that must fail.

use std::fmt::Display;
use std::str::FromStr;
use std::time::Instant;

use constraint_forge_core::bft::{
    aux_homogeneous_vector, closed_form_fields, coord_series_term, first_class_constraints, first_class_hamiltonians,
    iterate_field, momentum_series_term, original_constraints, BftConfig, DEFAULT_ORDER,
};
use constraint_forge_core::brackets::{poisson, poisson_scalar, reduce_on_shell, BracketTable, ConstraintSet};
use constraint_forge_core::covariant::{dot, Basis};
use constraint_forge_core::graded::{
    brst_charge, brst_transform, expected_brst_rule, second_class_charge, super_poisson, verify_brst_relations, BrstField,
};
use constraint_forge_core::operator::{apply_to_harmonic, build_weyl_product, expected_weyl_product, verify_quantum_commutators};
use constraint_forge_core::spectrum::{energy_bft, energy_dirac, energy_dirac_c2, fix_c_with, spectrum_table, CMode};
use constraint_forge_core::{AlgebraError, Finding, PhaseExpr, ScalarExpr, Tensor2Expr, Var, VectorExpr};
use log::{debug, info};

use crate::numeric::{circle_findings, run_bracket_oracle};
use crate::report::CheckReport;

pub const DEFAULT_SEED: u64 = 1729;
pub const DEFAULT_TRIALS: usize = 100;
pub const DEFAULT_GRID: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, clap::ValueEnum)]
pub enum Group {
    All,
    Brackets,
    Bft,
    Weyl,
    Brst,
    Numeric,
}

/// Deliberately broken inputs. Under each one the suite must fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, clap::ValueEnum)]
pub enum Mutation {
    /// `Omega~_2 = P` without the `-S pi_theta` shift.
    DropOmegaShift,
    /// BRST charge built from the second-class constraints.
    SecondClassCharge,
    /// Weyl momentum without its `c q_i / S` term.
    WeylNoC,
    /// A BFT energy with an extra `l` term.
    LDependentBft,
}

impl Mutation {
    pub const ALL: [Mutation; 4] = [
        Mutation::DropOmegaShift,
        Mutation::SecondClassCharge,
        Mutation::WeylNoC,
        Mutation::LDependentBft,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::DropOmegaShift => "drop-omega-shift",
            Mutation::SecondClassCharge => "second-class-charge",
            Mutation::WeylNoC => "weyl-no-c",
            Mutation::LDependentBft => "l-dependent-bft",
        }
    }
}

impl FromStr for Mutation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Mutation::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown mutation {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub group: Group,
    pub trials: usize,
    pub grid: usize,
    pub seed: u64,
    pub order: usize,
    pub mutation: Option<Mutation>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            group: Group::All,
            trials: DEFAULT_TRIALS,
            grid: DEFAULT_GRID,
            seed: DEFAULT_SEED,
            order: DEFAULT_ORDER,
            mutation: None,
        }
    }
}

impl SuiteConfig {
    fn mutated(&self, m: Mutation) -> bool {
        self.mutation == Some(m)
    }
}

type StepResult = Result<Vec<Finding>, String>;

struct Step {
    name: &'static str,
    group: Group,
    run: fn(&SuiteConfig) -> StepResult,
}

fn alg(e: AlgebraError) -> String {
    e.to_string()
}

fn scalar_eq(name: impl Into<String>, got: &ScalarExpr, want: &ScalarExpr, cite: &str) -> Finding {
    let diff = got - want;
    Finding::zero_check(name, &diff, diff.is_zero(), cite)
}

fn phase_eq(name: impl Into<String>, got: &PhaseExpr, want: &PhaseExpr, cite: &str) -> Result<Finding, String> {
    let diff = got.try_sub(want).map_err(alg)?;
    Ok(Finding::zero_check(name, &diff, diff.is_zero(), cite))
}

fn equal<T: PartialEq + Display>(name: impl Into<String>, got: &T, want: &T, cite: &str) -> Finding {
    if got == want {
        Finding::pass(name, cite)
    } else {
        Finding::fail(name, format!("got {got}, want {want}"), cite)
    }
}

/// A check that must come out nonzero.
fn control(name: &str, value: &impl Display, nonzero: bool, cite: &str) -> Finding {
    let name = format!("negative control: {name}");
    if nonzero {
        Finding::pass(name, cite)
    } else {
        Finding::fail(name, value, cite)
    }
}

fn conventions(cfg: &SuiteConfig) -> StepResult {
    Ok(vec![Finding::info(
        "conventions",
        format!(
            "eps^{{12}} = +1; omega_ab = -eps_ab; seed = {}; order = {}; trials = {}; grid = {}",
            cfg.seed, cfg.order, cfg.trials, cfg.grid
        ),
        "index placement of the antisymmetric symbol",
    )])
}

fn bracket_axioms(_: &SuiteConfig) -> StepResult {
    let t = BracketTable::full();
    let (s, p, k) = (ScalarExpr::s(), ScalarExpr::p(), ScalarExpr::k());
    let two = ScalarExpr::int(2);
    let mut out = Vec::new();
    for (x, y, want) in [
        (Var::S, Var::P, &two * &s),
        (Var::S, Var::K, &ScalarExpr::int(4) * &p),
        (Var::P, Var::K, &two * &k),
        (Var::Theta, Var::PiTheta, ScalarExpr::one()),
        (Var::N1, Var::B1, ScalarExpr::one()),
        (Var::N2, Var::B2, ScalarExpr::one()),
    ] {
        let cite = format!("{{{x}, {y}}} = {want}");
        out.push(scalar_eq(format!("generator bracket {{{x}, {y}}}"), &t.generator_bracket(x, y), &want, &cite));
    }
    let mut asym = Vec::new();
    for x in Var::BOSONIC {
        for y in Var::BOSONIC {
            if !(&t.generator_bracket(x, y) + &t.generator_bracket(y, x)).is_zero() {
                asym.push(format!("{{{x}, {y}}}"));
            }
        }
    }
    out.push(if asym.is_empty() {
        Finding::pass("generator table antisymmetric", "{A, B} = -{B, A}")
    } else {
        Finding::fail("generator table antisymmetric", asym.join(", "), "{A, B} = -{B, A}")
    });
    out.push(match t.check_jacobi() {
        None => Finding::pass("Jacobi identity on generators", "cyclic sum of {A, {B, C}} = 0"),
        Some((a, b, c)) => Finding::fail("Jacobi identity on generators", format!("{a}, {b}, {c}"), "cyclic sum of {A, {B, C}} = 0"),
    });
    let (q, pi) = (VectorExpr::coord(), VectorExpr::momentum());
    for (x, e, want, cite) in [
        (Var::S, Basis::Pi, q.scale(&two), "{S, pi_i} = 2 q_i"),
        (Var::P, Basis::Q, q.scale(&ScalarExpr::int(-1)), "{P, q_i} = -q_i"),
        (Var::P, Basis::Pi, pi.clone(), "{P, pi_i} = pi_i"),
        (Var::K, Basis::Q, pi.scale(&ScalarExpr::int(-2)), "{K, q_i} = -2 pi_i"),
    ] {
        out.push(equal(format!("generator bracket {cite}"), &t.generator_vector_bracket(x, e), &want, cite));
    }
    Ok(out)
}

fn constraint_algebra(_: &SuiteConfig) -> StepResult {
    let [o1, o2] = original_constraints();
    let h = &ScalarExpr::ratio(1, 2) * &ScalarExpr::k();
    let two = ScalarExpr::int(2);
    Ok(vec![
        scalar_eq("{Omega1, Omega2} = 2S", &poisson_scalar(&o1, &o2), &(&two * &ScalarExpr::s()), "{Omega1, Omega2} = 2 q.q"),
        scalar_eq("{Omega1, H} = 2 Omega2", &poisson_scalar(&o1, &h), &(&two * &o2), "{Omega1, H} = 2 Omega2"),
        Finding::info("{Omega2, H}", poisson_scalar(&o2, &h), "second constraint evolved by H = pi.pi/2"),
    ])
}

fn dirac_identities(_: &SuiteConfig) -> StepResult {
    let cs = ConstraintSet::sphere();
    let s = ScalarExpr::s();
    let inv_s = s.inv().map_err(alg)?;
    let mut out = Vec::new();
    let d = cs.delta();
    let delta_ok = d[0][0].is_zero() && d[1][1].is_zero() && d[0][1] == &ScalarExpr::int(2) * &s && d[1][0] == &ScalarExpr::int(-2) * &s;
    let cite = "Delta_ab = 2 eps^ab q.q";
    out.push(if delta_ok {
        Finding::pass("constraint matrix Delta", cite)
    } else {
        Finding::fail("constraint matrix Delta", format!("[[{}, {}], [{}, {}]]", d[0][0], d[0][1], d[1][0], d[1][1]), cite)
    });
    let res = cs.inverse_residual();
    let bad: Vec<String> = res.iter().flatten().filter(|x| !x.is_zero()).map(|x| x.to_string()).collect();
    out.push(if bad.is_empty() {
        Finding::pass("Delta times its inverse is the identity", "Delta^ab Delta_bc = delta^a_c")
    } else {
        Finding::fail("Delta times its inverse is the identity", bad.join(", "), "Delta^ab Delta_bc = delta^a_c")
    });
    let (q, pi) = (PhaseExpr::from(VectorExpr::coord()), PhaseExpr::from(VectorExpr::momentum()));
    let qpi = Tensor2Expr { delta: ScalarExpr::one(), qq: -inv_s.clone(), ..Tensor2Expr::zero() };
    let pipi = Tensor2Expr { qpi: -inv_s.clone(), piq: inv_s.clone(), ..Tensor2Expr::zero() };
    for (name, a, b, want, cite) in [
        ("Dirac {q_i, q_j}", &q, &q, Tensor2Expr::zero(), "{q_i, q_j}_D = 0"),
        ("Dirac {q_i, pi_j}", &q, &pi, qpi, "{q_i, pi_j}_D = delta_ij - q_i q_j / q.q"),
        ("Dirac {pi_i, pi_j}", &pi, &pi, pipi, "{pi_i, pi_j}_D = (q_j pi_i - q_i pi_j) / q.q"),
    ] {
        out.push(phase_eq(name, &cs.dirac(a, b).map_err(alg)?, &want.into(), cite)?);
    }
    let h: PhaseExpr = (&ScalarExpr::ratio(1, 2) * &ScalarExpr::k()).into();
    for (i, om) in cs.constraints().iter().enumerate() {
        let om: PhaseExpr = om.clone().into();
        for (tag, x) in [("q_i", &q), ("pi_i", &pi), ("H", &h)] {
            let r = cs.dirac(&om, x).map_err(alg)?;
            out.push(Finding::zero_check(
                format!("Dirac {{Omega{}, {tag}}} = 0", i + 1),
                &r,
                r.is_zero(),
                "constraints are Casimirs of the Dirac bracket",
            ));
        }
    }
    let weak = reduce_on_shell(&d[0][1]).map_err(alg)?;
    out.push(scalar_eq("Delta_12 on the constraint surface", weak.value(), &ScalarExpr::int(2), "Delta_12 = 2 at q.q = 1"));
    Ok(out)
}

/// `(Omega~_1, Omega~_2)`, with the mutation applied.
fn tilde_constraints(cfg: &SuiteConfig) -> (ScalarExpr, ScalarExpr) {
    let (o1, o2) = first_class_constraints();
    if cfg.mutated(Mutation::DropOmegaShift) {
        (o1, ScalarExpr::p())
    } else {
        (o1, o2)
    }
}

fn bft_involution(cfg: &SuiteConfig) -> StepResult {
    let mut out = Vec::new();
    let bft = BftConfig::new(cfg.order);
    let res = bft.zeroth_order_residual(ConstraintSet::sphere().delta());
    let bad: Vec<String> = res.iter().flatten().filter(|x| !x.is_zero()).map(|x| x.to_string()).collect();
    out.push(if bad.is_empty() {
        Finding::pass("BFT zeroth-order condition", "Delta_ab + X_ac omega^cd X_bd = 0")
    } else {
        Finding::fail("BFT zeroth-order condition", bad.join(", "), "Delta_ab + X_ac omega^cd X_bd = 0")
    });
    let (t1, t2) = tilde_constraints(cfg);
    let r = poisson_scalar(&t1, &t2);
    out.push(Finding::zero_check("{Omega~1, Omega~2} = 0", &r, r.is_zero(), "strongly involutive constraints"));
    let unshifted = poisson_scalar(&t1, &ScalarExpr::p());
    out.push(control(
        "Omega~2 without -S pi_theta is not involutive",
        &unshifted,
        !unshifted.is_zero(),
        "{Omega~1, P} != 0",
    ));
    Ok(out)
}

fn bft_series(cfg: &SuiteConfig) -> StepResult {
    let bft = BftConfig::new(cfg.order);
    let (q_closed, pi_closed) = closed_form_fields();
    let mut out = Vec::new();
    type Term = fn(u32) -> VectorExpr;
    let fields: [(&str, VectorExpr, &VectorExpr, Term, &str); 2] = [
        ("q~", VectorExpr::coord(), &q_closed, coord_series_term, "q~ coefficients -(-1)^n (2n-3)!!/n! (theta/q.q)^n"),
        ("pi~", VectorExpr::momentum(), &pi_closed, momentum_series_term, "pi~ coefficients (-1)^n (2n-1)!!/n! (theta/q.q)^n"),
    ];
    for (tag, seed, closed, coeff, cite) in fields {
        let series = iterate_field(&seed, &bft).map_err(alg)?;
        out.push(if series.degrees_consistent() {
            Finding::pass(format!("{tag} series term n has degree n in the auxiliary pair"), "homogeneity of the iteration")
        } else {
            Finding::fail(format!("{tag} series term n has degree n in the auxiliary pair"), "inconsistent", "homogeneity of the iteration")
        });
        let mut vs_closed = None;
        let mut vs_coeff = None;
        for n in 0..=cfg.order as u32 {
            let term = series.term(n as usize).expect("term within order");
            let want = aux_homogeneous_vector(closed, n).map_err(alg)?;
            if vs_closed.is_none() && term != &want {
                vs_closed = Some(format!("n = {n}: series {term}, resummed {want}"));
            }
            let want = coeff(n);
            if vs_coeff.is_none() && term != &want {
                vs_coeff = Some(format!("n = {n}: series {term}, formula {want}"));
            }
        }
        let name = format!("{tag} series matches the resummed field, n <= {}", cfg.order);
        out.push(match vs_closed {
            None => Finding::pass(name, "Taylor expansion in theta, pi_theta of the closed form"),
            Some(r) => Finding::fail(name, r, "Taylor expansion in theta, pi_theta of the closed form"),
        });
        let name = format!("{tag} series matches the coefficient formula, n <= {}", cfg.order);
        out.push(match vs_coeff {
            None => Finding::pass(name, cite),
            Some(r) => Finding::fail(name, r, cite),
        });
        let defects = series.involution_defects().map_err(alg)?;
        let name = format!("{tag} truncated series commutes with Omega~ below order {}", cfg.order);
        out.push(if defects.is_empty() {
            Finding::pass(name, "{Omega~_a, F~} = 0 order by order")
        } else {
            let ((a, n), v) = &defects[0];
            Finding::fail(name, format!("Omega~{a}, degree {n}: {v}"), "{Omega~_a, F~} = 0 order by order")
        });
    }
    let (t1, t2) = tilde_constraints(cfg);
    for (tag, field) in [("q~", &q_closed), ("pi~", &pi_closed)] {
        for (a, om) in [(1, &t1), (2, &t2)] {
            let r = poisson(&PhaseExpr::from(om.clone()), &PhaseExpr::from(field.clone())).map_err(alg)?;
            out.push(Finding::zero_check(
                format!("{{Omega~{a}, {tag}}} = 0"),
                &r,
                r.is_zero(),
                "physical fields commute with the first-class constraints",
            ));
        }
    }
    let s2t = &ScalarExpr::s() + &(&ScalarExpr::int(2) * &ScalarExpr::theta());
    out.push(scalar_eq("q~.q~ = q.q + 2 theta", &dot(&q_closed, &q_closed), &s2t, "q~ q~ = q.q + 2 Phi^1"));
    Ok(out)
}

fn at_zero_aux(e: &ScalarExpr) -> Result<ScalarExpr, String> {
    e.substitute(Var::Theta, &ScalarExpr::zero())
        .and_then(|e| e.substitute(Var::PiTheta, &ScalarExpr::zero()))
        .map_err(alg)
}

fn vector_at_zero_aux(v: &VectorExpr) -> Result<VectorExpr, String> {
    v.substitute(Var::Theta, &ScalarExpr::zero())
        .and_then(|v| v.substitute(Var::PiTheta, &ScalarExpr::zero()))
        .map_err(alg)
}

fn hamiltonians(cfg: &SuiteConfig) -> StepResult {
    let (t1, t2) = tilde_constraints(cfg);
    let (h, hp) = first_class_hamiltonians();
    let two = ScalarExpr::int(2);
    let mut out = vec![
        scalar_eq("{Omega~1, H~} = 0", &poisson_scalar(&t1, &h), &ScalarExpr::zero(), "{Omega~_a, H~} = 0"),
        scalar_eq("{Omega~2, H~} = 0", &poisson_scalar(&t2, &h), &ScalarExpr::zero(), "{Omega~_a, H~} = 0"),
        scalar_eq("{Omega~1, H~'} = 2 Omega~2", &poisson_scalar(&t1, &hp), &(&two * &t2), "H~' generates the Gauss law"),
        scalar_eq("{Omega~2, H~'} = 0", &poisson_scalar(&t2, &hp), &ScalarExpr::zero(), "{Omega~2, H~'} = 0"),
    ];
    let h0 = &ScalarExpr::ratio(1, 2) * &ScalarExpr::k();
    let [o1, o2] = original_constraints();
    let (q_closed, pi_closed) = closed_form_fields();
    let lim_ok = at_zero_aux(&h)? == h0
        && at_zero_aux(&hp)? == h0
        && at_zero_aux(&t1)? == o1
        && at_zero_aux(&t2)? == o2
        && vector_at_zero_aux(&q_closed)? == VectorExpr::coord()
        && vector_at_zero_aux(&pi_closed)? == VectorExpr::momentum();
    out.push(if lim_ok {
        Finding::pass("theta = pi_theta = 0 recovers the original system", "Omega~ -> Omega, H~ -> H, F~ -> F")
    } else {
        Finding::fail("theta = pi_theta = 0 recovers the original system", "mismatch", "Omega~ -> Omega, H~ -> H, F~ -> F")
    });
    let eps = ScalarExpr::var(Var::Eps);
    let gauge = |f: PhaseExpr| poisson(&f, &t2.clone().into()).map(|r| r.scale(&eps)).map_err(alg);
    let q = PhaseExpr::from(VectorExpr::coord());
    out.push(phase_eq("gauge rule q_i -> eps q_i", &gauge(q.clone())?, &q.scale(&eps), "delta q_i = eps q_i")?);
    out.push(phase_eq(
        "gauge rule theta -> -eps S",
        &gauge(ScalarExpr::theta().into())?,
        &PhaseExpr::from(-&(&eps * &ScalarExpr::s())),
        "delta theta = -eps q.q",
    )?);
    out.push(Finding::info("gauge variation of pi_i", gauge(VectorExpr::momentum().into())?, "eps {pi_i, Omega~2}"));
    out.push(Finding::info("gauge variation of pi_theta", gauge(ScalarExpr::pi_theta().into())?, "eps {pi_theta, Omega~2}"));
    Ok(out)
}

fn quantum(_: &SuiteConfig) -> StepResult {
    verify_quantum_commutators().map_err(alg)
}

fn weyl_c(cfg: &SuiteConfig) -> ScalarExpr {
    if cfg.mutated(Mutation::WeylNoC) {
        ScalarExpr::zero()
    } else {
        ScalarExpr::c()
    }
}

fn weyl_product(cfg: &SuiteConfig) -> StepResult {
    let c = ScalarExpr::c();
    let built = build_weyl_product(&weyl_c(cfg)).map_err(alg)?;
    let want = expected_weyl_product(&c);
    let diff = &built - &want;
    let cite = "Pi_i Pi_i = -L + (d-1)E/q.q + (E^2 - E)/q.q + ((d-1)^2/4 - c^2)/q.q";
    let mut out = vec![Finding::zero_check("Weyl-ordered Pi_i Pi_i normal form", &diff, diff.is_zero(), cite)];
    let no_c = &build_weyl_product(&ScalarExpr::zero()).map_err(alg)? - &want;
    out.push(control("Weyl product without the c term differs", &no_c, !no_c.is_zero(), cite));
    Ok(out)
}

fn harmonic(cfg: &SuiteConfig) -> StepResult {
    let c = ScalarExpr::c();
    let got = apply_to_harmonic(&build_weyl_product(&weyl_c(cfg)).map_err(alg)?).map_err(alg)?;
    let want = &ScalarExpr::int(2) * &energy_dirac(&ScalarExpr::var(Var::L), &ScalarExpr::d(), &c);
    Ok(vec![scalar_eq(
        "Weyl product on degree-l harmonics",
        &got,
        &want,
        "eigenvalue l(l+d-2) + (d-1)^2/4 - c^2",
    )])
}

fn c_fix(cfg: &SuiteConfig) -> StepResult {
    let d = ScalarExpr::d();
    let l = ScalarExpr::var(Var::L);
    let mutated = cfg.mutated(Mutation::LDependentBft);
    let shifted_bft = |l: &ScalarExpr, d: &ScalarExpr| &energy_bft(l, d) + l;
    let fixed = if mutated {
        fix_c_with(energy_dirac, shifted_bft, &d)
    } else {
        fix_c_with(energy_dirac, energy_bft, &d)
    };
    let cite = "c^2 = (d+1)/4 matches the BFT spectrum";
    let want = &(&d + &ScalarExpr::one()) * &ScalarExpr::ratio(1, 4);
    let mut out = vec![match fixed {
        Ok(c2) => scalar_eq("c^2 that equates the spectra", &c2, &want, cite),
        Err(e) => Finding::fail("c^2 that equates the spectra", e, cite),
    }];
    let diff = &energy_dirac_c2(&l, &d, &want) - &energy_bft(&l, &d);
    out.push(Finding::zero_check(
        "E_dirac(c^2 = (d+1)/4) - E_bft = 0 in l and d",
        &diff,
        diff.is_zero(),
        "E = l(l+d-2)/2 + d(d-3)/8",
    ));
    let rows = spectrum_table(3, 10, &CMode::Fixed).map_err(alg)?;
    let mut bad = Vec::new();
    for r in &rows {
        let half_ll1 = num_rational::BigRational::new((r.l * (r.l + 1)).into(), 2.into());
        if r.dirac != half_ll1 || r.bft != half_ll1 {
            bad.push(format!("l={}: {} / {}", r.l, r.dirac, r.bft));
        }
        if let Some(g) = &r.gap {
            if g != &num_rational::BigRational::from_integer(r.l.into()) {
                bad.push(format!("gap at l={}: {g}", r.l));
            }
        }
    }
    let name = "d = 3 levels l(l+1)/2 with gaps l, l <= 10";
    out.push(if bad.is_empty() {
        Finding::pass(name, "E(l) - E(l-1) = l")
    } else {
        Finding::fail(name, bad.join("; "), "E(l) - E(l-1) = l")
    });
    let broken = fix_c_with(energy_dirac, shifted_bft, &d);
    let shown = match &broken {
        Ok(v) => v.to_string(),
        Err(e) => e.to_string(),
    };
    out.push(control("l-dependent BFT energy admits no c", &shown, broken.is_err(), "no constant c^2 absorbs an l term"));
    Ok(out)
}

fn brst(cfg: &SuiteConfig) -> StepResult {
    let mut out = verify_brst_relations().map_err(alg)?;
    if cfg.mutated(Mutation::SecondClassCharge) {
        let q = second_class_charge();
        let qq = super_poisson(&q, &q).map_err(alg)?;
        for f in out.iter_mut().filter(|f| f.name == "BRST {Q, Q} = 0") {
            *f = Finding::zero_check(f.name.clone(), &qq, qq.is_zero(), &f.citation);
        }
    }
    debug!("BRST charge {}", brst_charge());
    for field in BrstField::ALL {
        let got = brst_transform(field).map_err(alg)?;
        let name = format!("BRST variation of {}", field.name());
        out.push(match expected_brst_rule(field) {
            Some(want) => equal(name, &got, &want, "delta_B F = {F, lambda Q}"),
            None => Finding::info(name, &got, "{F, lambda Q}, no stated rule"),
        });
    }
    Ok(out)
}

fn oracle_d3(cfg: &SuiteConfig) -> StepResult {
    run_bracket_oracle(cfg.trials, &[3], cfg.seed).map_err(|e| e.to_string())
}

fn oracle_d4(cfg: &SuiteConfig) -> StepResult {
    run_bracket_oracle(cfg.trials, &[4], cfg.seed).map_err(|e| e.to_string())
}

fn oracle_d5(cfg: &SuiteConfig) -> StepResult {
    run_bracket_oracle(cfg.trials, &[5], cfg.seed).map_err(|e| e.to_string())
}

fn circle(cfg: &SuiteConfig) -> StepResult {
    circle_findings(cfg.grid).map_err(|e| e.to_string())
}

const STEPS: &[Step] = &[
    Step { name: "conventions", group: Group::All, run: conventions },
    Step { name: "bracket axioms", group: Group::Brackets, run: bracket_axioms },
    Step { name: "constraint algebra", group: Group::Brackets, run: constraint_algebra },
    Step { name: "Dirac identities", group: Group::Brackets, run: dirac_identities },
    Step { name: "BFT involution", group: Group::Bft, run: bft_involution },
    Step { name: "BFT series", group: Group::Bft, run: bft_series },
    Step { name: "Hamiltonians and Gauss law", group: Group::Bft, run: hamiltonians },
    Step { name: "quantum commutators", group: Group::Weyl, run: quantum },
    Step { name: "Weyl product", group: Group::Weyl, run: weyl_product },
    Step { name: "harmonic eigenvalue", group: Group::Weyl, run: harmonic },
    Step { name: "c-fix identity", group: Group::Weyl, run: c_fix },
    Step { name: "BRST relations", group: Group::Brst, run: brst },
    Step { name: "bracket oracle d0=3", group: Group::Numeric, run: oracle_d3 },
    Step { name: "bracket oracle d0=4", group: Group::Numeric, run: oracle_d4 },
    Step { name: "bracket oracle d0=5", group: Group::Numeric, run: oracle_d5 },
    Step { name: "circle grid", group: Group::Numeric, run: circle },
];

/// Run the selected steps concurrently; the report keeps declaration order.
/// Each entry's `elapsed_ms` is the wall time of the step that produced it.
pub fn run_suite(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let selected: Vec<&Step> = STEPS
        .iter()
        .filter(|s| cfg.group == Group::All || s.group == Group::All || s.group == cfg.group)
        .collect();
    if let Some(m) = cfg.mutation {
        info!("mutation {} active", m.name());
    }
    let results: Vec<(StepResult, std::time::Duration)> = std::thread::scope(|scope| {
        let handles: Vec<_> = selected
            .iter()
            .map(|step| {
                scope.spawn(move || {
                    let start = Instant::now();
                    let r = (step.run)(cfg);
                    (r, start.elapsed())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite step panicked")).collect()
    });
    let mut out = Vec::new();
    for (step, (result, elapsed)) in selected.iter().zip(results) {
        debug!("{}: {:?}", step.name, elapsed);
        let findings = result.unwrap_or_else(|e| vec![Finding::fail(step.name, e, "engine error")]);
        out.extend(findings.into_iter().map(|f| CheckReport::from_finding(f, elapsed)));
    }
    out
}
