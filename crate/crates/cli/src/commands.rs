//! One function per subcommand. Each returns its table plus the structured
//! numbers behind it, so callers other than `main` can inspect results.

use hsign_core::dirichlet::{self, ConvolutionCheck, GammaFactor, Lambda};
use hsign_core::forms::{build_eigen_system, kill_multiples, validate_ramanujan, RamanujanReport, WeightData};
use hsign_core::oracle;
use hsign_core::satotate::{self, AngleClass, DensityReport, FormulaCount};
use hsign_core::zeta::{self, PartialSum, ZetaCoefficients};
use hsign_core::{Field, Ideal, PrimeIdeal, Rational, SplitType};
use num_traits::{Signed, Zero};

use crate::error::CliError;
use crate::fixture::Fixture;
use crate::report::{rational, real, Table};

fn same_field(f: &Fixture, g: &Fixture) -> Result<Field, CliError> {
    let (a, b) = (*f.table.field(), *g.table.field());
    if a != b {
        return Err(CliError::Input(format!("fixtures live over different fields ({a} and {b})")));
    }
    Ok(a)
}

fn weights_text(w: &WeightData) -> String {
    let parts: Vec<String> = w.weights().iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

pub struct ZetaOutcome {
    pub table: Table,
    pub partial: Option<PartialSum>,
}

/// Ideal counts a_n (and a_n restricted to ideals coprime to `coprime_to`)
/// for n up to `max_norm`, optionally with the truncated sum at `s`.
pub fn cmd_zeta(disc: i64, max_norm: u64, coprime_to: Option<&str>, s: Option<f64>) -> Result<ZetaOutcome, CliError> {
    if max_norm == 0 {
        return Err(CliError::Input("--max-norm must be at least 1".into()));
    }
    let field = Field::from_disc(disc)?;
    let restriction = coprime_to.map(|spec| Ideal::parse(&field, spec)).transpose()?;
    let mut full = ZetaCoefficients::new(field, None)?;
    full.extend_to(max_norm);
    let mut restricted = match &restriction {
        Some(c) => {
            let mut t = ZetaCoefficients::new(field, Some(c.clone()))?;
            t.extend_to(max_norm);
            Some(t)
        }
        None => None,
    };
    let mut table = if restricted.is_some() {
        Table::new(&["n", "a_n", "a_n_coprime"])
    } else {
        Table::new(&["n", "a_n"])
    };
    for n in 1..=max_norm {
        let mut row = vec![n.to_string(), full.get(n).unwrap().to_string()];
        if let Some(t) = &restricted {
            row.push(t.get(n).unwrap().to_string());
        }
        table.push(row);
    }
    let partial = match s {
        Some(s) => Some(zeta::partial_from_table(restricted.as_mut().unwrap_or(&mut full), s)?),
        None => None,
    };
    Ok(ZetaOutcome { table, partial })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignsReport {
    pub table: Table,
    pub positive: u64,
    pub negative: u64,
    pub zero: u64,
    pub first_positive: Option<Ideal>,
    pub first_negative: Option<Ideal>,
    pub first_zero: Option<Ideal>,
    /// Ideals sharing a prime with a level, where coefficients are not available.
    pub skipped: u64,
    pub warnings: Vec<String>,
}

/// Signs of C(m, f) C(m, g) over all ideals of norm up to `max_norm`.
pub fn cmd_signs(f: &Fixture, g: &Fixture, max_norm: u64) -> Result<SignsReport, CliError> {
    let field = same_field(f, g)?;
    let (wf, wg) = (f.table.weight(), g.table.weight());
    if wf == wg {
        return Err(CliError::Hypothesis(format!(
            "both forms have weight {}; the sign comparison needs different weights",
            weights_text(wf)
        )));
    }
    let mut warnings = Vec::new();
    if f.table.level() != g.table.level() {
        warnings.push(format!(
            "levels differ ({} and {}); comparing anyway",
            f.table.level(),
            g.table.level()
        ));
    }
    let sf = build_eigen_system(&f.table, max_norm)?;
    let sg = build_eigen_system(&g.table, max_norm)?;

    let mut table = Table::new(&["norm", "ideal", "c_f", "c_g", "product", "sign"]);
    let mut report = SignsReport {
        table: Table::default(),
        positive: 0,
        negative: 0,
        zero: 0,
        first_positive: None,
        first_negative: None,
        first_zero: None,
        skipped: 0,
        warnings,
    };
    for m in field.ideals_up_to(max_norm) {
        if !sf.is_covered(&m) || !sg.is_covered(&m) {
            report.skipped += 1;
            continue;
        }
        let (cf, cg) = (sf.coeff(&m)?, sg.coeff(&m)?);
        let product = &cf * &cg;
        let (sign, count, first) = if product.is_positive() {
            ("+", &mut report.positive, &mut report.first_positive)
        } else if product.is_negative() {
            ("-", &mut report.negative, &mut report.first_negative)
        } else {
            ("0", &mut report.zero, &mut report.first_zero)
        };
        *count += 1;
        first.get_or_insert_with(|| m.clone());
        table.push(vec![
            m.norm().to_string(),
            m.to_string(),
            rational(&cf),
            rational(&cg),
            rational(&product),
            sign.to_string(),
        ]);
    }
    report.table = table;
    Ok(report)
}

pub struct DensityOutcome {
    pub table: Table,
    pub prime: PrimeIdeal,
    pub angle_f: AngleClass,
    pub angle_g: AngleClass,
    pub report: DensityReport,
    pub warnings: Vec<String>,
}

fn single_prime(field: &Field, spec: &str) -> Result<PrimeIdeal, CliError> {
    let ideal = Ideal::parse(field, spec)?;
    match ideal.factors().iter().next() {
        Some((p, 1)) if ideal.factors().len() == 1 => Ok(*p),
        _ => Err(CliError::Input(format!("{spec:?} is not a prime ideal"))),
    }
}

/// Joint non-vanishing of C(P^m, f) C(P^m, g) for m <= x at one prime P.
pub fn cmd_density(f: &Fixture, g: &Fixture, prime_spec: &str, x: u64) -> Result<DensityOutcome, CliError> {
    let field = same_field(f, g)?;
    if x == 0 {
        return Err(CliError::Input("x must be at least 1".into()));
    }
    let prime = single_prime(&field, prime_spec)?;
    if !field.is_rational() && prime.split == SplitType::Ramified {
        return Err(CliError::Hypothesis(format!(
            "prime {prime} is ramified in {field}, so it divides the different"
        )));
    }
    for (name, fx) in [("f", f), ("g", g)] {
        if fx.table.level().valuation(&prime) > 0 {
            return Err(CliError::Hypothesis(format!(
                "prime {prime} divides the level {} of {name}",
                fx.table.level()
            )));
        }
    }
    let mut warnings = Vec::new();
    for (name, fx) in [("f", f), ("g", g)] {
        let w = fx.table.weight();
        if w.weights().iter().any(|&k| k < 2 || k % 2 == 1) {
            warnings.push(format!("weight {} of {name} is not even and >= 2", weights_text(w)));
        }
    }
    let angle = |fx: &Fixture| -> Result<(AngleClass, f64), CliError> {
        let c = fx
            .table
            .get(&prime)
            .ok_or_else(|| CliError::Input(format!("fixture {:?} has no eigenvalue at {prime}", fx.label)))?;
        let k0 = fx.table.weight().k0();
        let class = satotate::classify_eigenvalue(c, prime.norm, k0)?;
        Ok((class, hsign_core::forms::normalize(c, prime.norm, k0)))
    };
    let (angle_f, beta_f) = angle(f)?;
    let (angle_g, beta_g) = angle(g)?;
    let report = satotate::simultaneous_density(&angle_f, &angle_g, x);

    let (lo, hi) = match report.formula_count {
        FormulaCount::Point(v) => (v, v),
        FormulaCount::Interval { lo, hi } => (lo, hi),
    };
    let mut table = Table::new(&[
        "prime",
        "beta_f",
        "beta_g",
        "angle_f",
        "angle_g",
        "exact_f",
        "exact_g",
        "case_id",
        "x",
        "nonzero_count",
        "formula_lo",
        "formula_hi",
        "lower_bound_density",
        "exact_density",
    ]);
    table.push(vec![
        prime.to_string(),
        real(beta_f),
        real(beta_g),
        angle_f.kind.to_string(),
        angle_g.kind.to_string(),
        angle_f.exact.to_string(),
        angle_g.exact.to_string(),
        report.case_id.to_string(),
        x.to_string(),
        report.nonzero_count.to_string(),
        lo.to_string(),
        hi.to_string(),
        report.lower_bound_density.to_string(),
        report.exact_density.to_string(),
    ]);
    Ok(DensityOutcome {
        table,
        prime,
        angle_f,
        angle_g,
        report,
        warnings,
    })
}

/// Coefficients before and after removing the multiples of q.
pub fn cmd_kill(f: &Fixture, q_spec: &str, max_norm: u64) -> Result<Table, CliError> {
    let field = *f.table.field();
    let q = Ideal::parse(&field, q_spec)?;
    let sys = build_eigen_system(&f.table, max_norm)?;
    let killed = kill_multiples(&sys, &q)?;
    let mut table = Table::new(&["norm", "ideal", "before", "after"]);
    for m in field.ideals_up_to(max_norm) {
        if !sys.is_covered(&m) {
            continue;
        }
        table.push(vec![
            m.norm().to_string(),
            m.to_string(),
            rational(&sys.coeff(&m)?),
            rational(&killed.coeff(&m)?),
        ]);
    }
    Ok(table)
}

pub struct RankinOutcome {
    pub table: Table,
    pub raw: f64,
    pub b1: Rational,
    /// Absent when 2s - K + 2 <= 1 and the zeta factor diverges.
    pub check: Option<ConvolutionCheck>,
    pub lambda: Option<Lambda>,
}

/// Truncated Rankin-Selberg values at real s over ideals of norm <= terms.
pub fn cmd_rankin(
    f: &Fixture,
    g: &Fixture,
    s: f64,
    terms: u64,
    completed: bool,
    restrict: Option<&str>,
) -> Result<RankinOutcome, CliError> {
    let field = same_field(f, g)?;
    if terms == 0 {
        return Err(CliError::Input("--terms must be at least 1".into()));
    }
    let (wf, wg) = (f.table.weight(), g.table.weight());
    if completed && wf == wg {
        return Err(CliError::Hypothesis(format!(
            "both forms have weight {}; the completed function needs different weights",
            weights_text(wf)
        )));
    }
    let sf = build_eigen_system(&f.table, terms)?;
    let sg = build_eigen_system(&g.table, terms)?;
    let mut c = f.table.level().lcm(g.table.level())?;
    if let Some(spec) = restrict {
        c = c.mul(&Ideal::parse(&field, spec)?)?;
    }
    let n_restrict = c.radical();
    let series = dirichlet::rs_coefficients(&sf, &sg, &c, &n_restrict, terms)?;
    let raw = dirichlet::rs_raw(&sf, &sg, &n_restrict, s, terms)?;
    let k_sum = series.k0_plus_l0() as f64;
    let check = if 2.0 * s - k_sum + 2.0 > 1.0 {
        Some(dirichlet::rs_convolution_check(&series, &sf, &sg, s)?)
    } else {
        None
    };
    let b1 = series.coeff(1).cloned().unwrap_or_else(Rational::zero);

    let mut table = Table::new(&["quantity", "value"]);
    let mut row = |k: &str, v: String| table.push(vec![k.to_string(), v]);
    row("s", real(s));
    row("terms", terms.to_string());
    row("c", c.to_string());
    row("b_1", rational(&b1));
    row("R", real(raw));
    match &check {
        Some(chk) => {
            row("L_direct", real(chk.path_a));
            row("L_zeta_times_R", real(chk.path_b));
            row("residual", real(chk.residual));
            row("truncation_bound", real(chk.truncation_bound));
            row("float_allowance", real(chk.float_allowance));
            row("paths_agree", chk.pass.to_string());
        }
        None => {
            row("L_direct", real(series.eval(s)));
            row("L_zeta_times_R", "divergent".into());
        }
    }
    let lambda = if completed {
        let value = dirichlet::completed_lambda(wf, wg, &series, s)?;
        match value {
            Lambda::Value {
                log_abs_gamma,
                gamma_sign,
                value,
                ..
            } => {
                row("log_abs_gamma", real(log_abs_gamma));
                row("gamma_sign", real(gamma_sign));
                row("lambda", real(value));
            }
            Lambda::PoleAt {
                component,
                factor,
                argument,
            } => {
                let which = match factor {
                    GammaFactor::First => "first",
                    GammaFactor::Second => "second",
                };
                row("pole_component", component.to_string());
                row("pole_factor", which.to_string());
                row("pole_argument", real(argument));
            }
        }
        Some(value)
    } else {
        None
    };
    Ok(RankinOutcome {
        table,
        raw,
        b1,
        check,
        lambda,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleForm {
    Delta,
    Weight16,
    Synthetic {
        disc: i64,
        weights: Vec<u32>,
        level: String,
        seed: u64,
    },
}

/// Eigenvalue fixture for a bundled or synthetic form.
pub fn cmd_oracle(form: &OracleForm, prime_bound: u64) -> Result<Fixture, CliError> {
    let precision = prime_bound.max(1) as usize;
    Ok(match form {
        OracleForm::Delta => Fixture::new(
            "delta",
            oracle::export_fixture(&oracle::delta_series(precision), 12, prime_bound)?,
        ),
        OracleForm::Weight16 => Fixture::new(
            "e4-delta",
            oracle::export_fixture(&oracle::weight16_series(precision), 16, prime_bound)?,
        ),
        OracleForm::Synthetic {
            disc,
            weights,
            level,
            seed,
        } => {
            let field = Field::from_disc(*disc)?;
            let level = Ideal::parse(&field, level)?;
            let table = oracle::synthetic_table(field, WeightData::new(weights.clone())?, level, prime_bound, *seed)?;
            Fixture::new(format!("synthetic-{seed}"), table)
        }
    })
}

pub struct ValidateOutcome {
    pub table: Table,
    pub report: RamanujanReport,
}

impl ValidateOutcome {
    pub fn failing_primes(&self) -> Vec<String> {
        self.report.failures().map(|r| r.prime.to_string()).collect()
    }
}

/// Ramanujan bound at every prime of a fixture.
pub fn cmd_validate(f: &Fixture) -> ValidateOutcome {
    let report = validate_ramanujan(&f.table);
    let mut table = Table::new(&["prime", "norm", "eigenvalue", "beta", "bound", "pass"]);
    for r in &report.rows {
        table.push(vec![
            r.prime.to_string(),
            r.prime.norm.to_string(),
            rational(&r.coeff),
            real(r.beta),
            real(r.bound),
            r.pass.to_string(),
        ]);
    }
    ValidateOutcome { table, report }
}
