//! Dirichlet polynomials and the Rankin-Selberg series of two coefficient
//! systems: coefficient assembly, the zeta convolution, the Gamma-completed
//! value, real-zero scanning and the nonnegative-coefficient check.
//!
//! Everything analytic here is a truncated series evaluated in f64; exact
//! data comes in from `forms` and `zeta`.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use statrs::function::gamma::ln_gamma;
use thiserror::Error;

use crate::forms::{CoefficientSystem, FormsError, Rational, WeightData};
use crate::quadfield::{Field, Ideal, QuadError};
use crate::zeta::{self, ZetaCoefficients, ZetaError};

pub const DEFAULT_ZERO_TOL: f64 = 1e-10;
pub const DEFAULT_GRID: usize = 10_000;

/// A Gamma argument within this distance of a non-positive integer is a pole.
pub const POLE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DirichletError {
    #[error("coefficient systems or ideals live over different fields")]
    FieldMismatch,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Forms(#[from] FormsError),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error(transparent)]
    Ideal(#[from] QuadError),
}

/// A finite sum `sum a(n) n^{-s}` with strictly increasing indices and no zero
/// coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DirichletPolynomial {
    terms: Vec<(u64, f64)>,
}

impl DirichletPolynomial {
    /// Sorts, merges repeated indices and drops zero coefficients.
    pub fn new(terms: impl IntoIterator<Item = (u64, f64)>) -> Result<Self, DirichletError> {
        let mut raw: Vec<(u64, f64)> = terms.into_iter().collect();
        if let Some(&(n, a)) = raw.iter().find(|(n, a)| *n == 0 || !a.is_finite()) {
            return Err(DirichletError::InvalidParameter(format!("bad term ({n}, {a})")));
        }
        raw.sort_by_key(|t| t.0);
        let mut merged: Vec<(u64, f64)> = Vec::with_capacity(raw.len());
        for (n, a) in raw {
            match merged.last_mut() {
                Some((m, b)) if *m == n => *b += a,
                _ => merged.push((n, a)),
            }
        }
        merged.retain(|t| t.1 != 0.0);
        Ok(DirichletPolynomial { terms: merged })
    }

    pub fn terms(&self) -> &[(u64, f64)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, s: f64) -> f64 {
        self.terms.iter().rev().map(|&(n, a)| a * (n as f64).powf(-s)).sum()
    }

    /// The value rescaled by its largest term; same sign as `eval` but immune
    /// to overflow and underflow of n^{-s}.
    pub fn eval_scaled(&self, s: f64) -> f64 {
        let logs: Vec<f64> = self
            .terms
            .iter()
            .map(|&(n, a)| a.abs().ln() - s * (n as f64).ln())
            .collect();
        let top = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        self.terms
            .iter()
            .zip(&logs)
            .map(|(&(_, a), l)| a.signum() * (l - top).exp())
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ZeroScan {
    IdenticallyZero,
    /// Isolated sign-change zeros in increasing order. Zeros of even order
    /// that do not change sign between grid points are not detected.
    Zeros(Vec<f64>),
}

/// Real zeros of `p` on `[lo, hi]` by sign changes on a uniform grid of
/// `grid` points, refined by bisection to width `tol`.
pub fn real_zero_scan(
    p: &DirichletPolynomial,
    lo: f64,
    hi: f64,
    grid: usize,
    tol: f64,
) -> Result<ZeroScan, DirichletError> {
    if !(lo < hi) || grid < 2 || !(tol > 0.0) {
        return Err(DirichletError::InvalidParameter(format!(
            "need lo < hi, grid >= 2, tol > 0 (got [{lo}, {hi}], {grid}, {tol})"
        )));
    }
    if p.is_empty() {
        return Ok(ZeroScan::IdenticallyZero);
    }
    let step = (hi - lo) / (grid - 1) as f64;
    let xs: Vec<f64> = (0..grid).map(|i| if i + 1 == grid { hi } else { lo + i as f64 * step }).collect();
    let vs: Vec<f64> = xs.iter().map(|&x| p.eval_scaled(x)).collect();

    let mut zeros: Vec<f64> = Vec::new();
    for i in 0..grid {
        if vs[i] == 0.0 {
            zeros.push(xs[i]);
            continue;
        }
        if i + 1 < grid && vs[i + 1] != 0.0 && (vs[i] < 0.0) != (vs[i + 1] < 0.0) {
            zeros.push(bisect(p, xs[i], xs[i + 1], vs[i], tol));
        }
    }
    Ok(ZeroScan::Zeros(zeros))
}

fn bisect(p: &DirichletPolynomial, mut a: f64, mut b: f64, fa: f64, tol: f64) -> f64 {
    let left_negative = fa < 0.0;
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        let mid = 0.5 * (a + b);
        let fm = p.eval_scaled(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == left_negative {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LandauReport {
    /// +1 for nonnegative input, -1 for nonpositive input (flipped before summing).
    pub sign: i8,
    pub partial_sums: Vec<f64>,
    pub monotone: bool,
    pub total: f64,
    pub identically_zero: bool,
}

/// Partial sums of `sum_{n <= i} |a(n)| n^{-alpha}` for a coefficient list
/// a(1), a(2), ... of constant sign.
pub fn landau_positivity_check(coeffs: &[f64], alpha: f64) -> Result<LandauReport, DirichletError> {
    if coeffs.iter().any(|a| a.is_nan()) {
        return Err(DirichletError::NotApplicable("NaN coefficient".into()));
    }
    let has_pos = coeffs.iter().any(|&a| a > 0.0);
    let has_neg = coeffs.iter().any(|&a| a < 0.0);
    if has_pos && has_neg {
        return Err(DirichletError::NotApplicable("coefficients of both signs".into()));
    }
    let sign: i8 = if has_neg { -1 } else { 1 };
    let mut partial_sums = Vec::with_capacity(coeffs.len());
    let mut acc = 0.0;
    for (i, &a) in coeffs.iter().enumerate() {
        acc += sign as f64 * a * ((i + 1) as f64).powf(-alpha);
        partial_sums.push(acc);
    }
    let monotone = partial_sums.windows(2).all(|w| w[1] >= w[0]);
    Ok(LandauReport {
        sign,
        monotone,
        total: acc,
        identically_zero: !has_pos && !has_neg,
        partial_sums,
    })
}

fn check_coverage(sys: &CoefficientSystem, n_restrict: &Ideal, m: u64) -> Result<(), DirichletError> {
    if sys.bound() < m {
        return Err(FormsError::OutOfBound { norm: m, bound: sys.bound() }.into());
    }
    if let Some(p) = sys.uncovered().factors().keys().find(|p| n_restrict.valuation(p) == 0) {
        return Err(FormsError::NotCovered(p.to_string()).into());
    }
    Ok(())
}

/// Per-norm sums `sum_{N(m) = k, (m, n) = 1} C(m, f) C(m, g)` for k <= m_max.
pub fn pair_products(
    f: &CoefficientSystem,
    g: &CoefficientSystem,
    n_restrict: &Ideal,
    m_max: u64,
) -> Result<Vec<Rational>, DirichletError> {
    if f.field() != g.field() || n_restrict.field() != *f.field() {
        return Err(DirichletError::FieldMismatch);
    }
    check_coverage(f, n_restrict, m_max)?;
    check_coverage(g, n_restrict, m_max)?;
    let mut out = vec![Rational::zero(); m_max as usize + 1];
    for (ideal, cf) in f.nonzero() {
        if ideal.norm() > m_max {
            break;
        }
        if !ideal.coprime(n_restrict)? {
            continue;
        }
        let cg = g.coeff(ideal)?;
        if !cg.is_zero() {
            out[ideal.norm() as usize] += cf * cg;
        }
    }
    Ok(out)
}

/// `sum_{N(m) <= M, (m, n) = 1} C(m, f) C(m, g) N(m)^{-s}`.
pub fn rs_raw(
    f: &CoefficientSystem,
    g: &CoefficientSystem,
    n_restrict: &Ideal,
    s: f64,
    m_max: u64,
) -> Result<f64, DirichletError> {
    let pp = pair_products(f, g, n_restrict, m_max)?;
    Ok(sum_over_norms(&pp, s))
}

fn sum_over_norms(coeffs: &[Rational], s: f64) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| c.to_f64().unwrap_or(f64::NAN) * (k as f64).powf(-s))
        .sum()
}

/// Exact coefficients of `zeta_F^c(2s - K + 2) R(s)` for m up to the truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct RankinSeries {
    field: Field,
    c_level: Ideal,
    n_restrict: Ideal,
    k0_plus_l0: u32,
    b: Vec<Rational>,
}

impl RankinSeries {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn c_level(&self) -> &Ideal {
        &self.c_level
    }

    pub fn n_restrict(&self) -> &Ideal {
        &self.n_restrict
    }

    pub fn k0_plus_l0(&self) -> u32 {
        self.k0_plus_l0
    }

    pub fn truncation(&self) -> u64 {
        (self.b.len() - 1) as u64
    }

    /// Coefficient b_m for 1 <= m <= truncation.
    pub fn coeff(&self, m: u64) -> Option<&Rational> {
        if m == 0 {
            return None;
        }
        self.b.get(m as usize)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.b
    }

    /// The same series cut at a smaller truncation.
    pub fn truncate(&self, m_max: u64) -> RankinSeries {
        let mut out = self.clone();
        out.b.truncate(m_max.min(self.truncation()) as usize + 1);
        out
    }

    /// `sum_{m <= M} b_m m^{-s}`.
    pub fn eval(&self, s: f64) -> f64 {
        sum_over_norms(&self.b, s)
    }

    fn abs_mass(&self, s: f64) -> f64 {
        self.b
            .iter()
            .enumerate()
            .skip(1)
            .map(|(m, c)| c.abs().to_f64().unwrap_or(f64::NAN) * (m as f64).powf(-s))
            .sum()
    }
}

/// `b_m = sum_{n^2 | m} a_n(c) n^{K-2} sum_{N(m') = m/n^2, (m', n) = 1} C(m', f) C(m', g)`
/// with K = k0 + l0.
pub fn rs_coefficients(
    f: &CoefficientSystem,
    g: &CoefficientSystem,
    c: &Ideal,
    n_restrict: &Ideal,
    m_max: u64,
) -> Result<RankinSeries, DirichletError> {
    if c.field() != *f.field() {
        return Err(DirichletError::FieldMismatch);
    }
    let pp = pair_products(f, g, n_restrict, m_max)?;
    let k_sum = f.weight().k0() + g.weight().k0();
    let root = m_max.isqrt();
    let mut zeta_c = ZetaCoefficients::new(*f.field(), Some(c.clone()))?;
    zeta_c.extend_to(root);

    let mut b = vec![Rational::zero(); m_max as usize + 1];
    for n in 1..=root {
        let a_n = zeta_c.get(n).unwrap();
        if a_n == 0 {
            continue;
        }
        let weight = Rational::from_integer(BigInt::from(a_n) * num_traits::pow(BigInt::from(n), (k_sum - 2) as usize));
        let sq = n * n;
        for k in 1..=m_max / sq {
            if !pp[k as usize].is_zero() {
                b[(k * sq) as usize] += &weight * &pp[k as usize];
            }
        }
    }
    Ok(RankinSeries {
        field: *f.field(),
        c_level: c.clone(),
        n_restrict: n_restrict.clone(),
        k0_plus_l0: k_sum,
        b,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvolutionCheck {
    /// `sum_{m <= M} b_m m^{-s}`
    pub path_a: f64,
    /// `zeta^c_partial(2s - K + 2, floor(sqrt M)) * rs_raw(s, M)`
    pub path_b: f64,
    pub residual: f64,
    /// Bound on the pairs (n, m) with n^2 N(m) > M that only path B contains.
    pub truncation_bound: f64,
    /// Allowance for f64 rounding in both sums.
    pub float_allowance: f64,
    pub pass: bool,
}

/// Compare the two ways of summing the convolution.
///
/// For eigen systems the cross terms are bounded with the envelope
/// |C(m, f) C(m, g)| <= d(m)^2 N(m)^{(K-2)/2}, d(m) the number of ideal
/// divisors; otherwise with the actual absolute values.
pub fn rs_convolution_check(
    series: &RankinSeries,
    f: &CoefficientSystem,
    g: &CoefficientSystem,
    s: f64,
) -> Result<ConvolutionCheck, DirichletError> {
    let k_sum = series.k0_plus_l0;
    if k_sum != f.weight().k0() + g.weight().k0() {
        return Err(DirichletError::InvalidParameter("series built from other weights".into()));
    }
    let m_max = series.truncation();
    let root = m_max.isqrt();
    let s_zeta = 2.0 * s - k_sum as f64 + 2.0;

    let mut zeta_c = ZetaCoefficients::new(series.field, Some(series.c_level.clone()))?;
    zeta_c.extend_to(root);
    let zeta_part = zeta::partial_from_table(&zeta_c, s_zeta)?;

    let pp = pair_products(f, g, &series.n_restrict, m_max)?;
    let raw = sum_over_norms(&pp, s);
    let path_a = series.eval(s);
    let path_b = zeta_part.value * raw;

    // envelope per norm, then suffix sums of envelope(k) k^{-s}
    let mut envelope = vec![0.0f64; m_max as usize + 1];
    if f.is_eigen() && g.is_eigen() {
        let half = (k_sum as f64 - 2.0) / 2.0;
        for ideal in series.field.ideals_up_to(m_max) {
            if ideal.coprime(&series.n_restrict)? {
                let d = ideal.divisor_count() as f64;
                envelope[ideal.norm() as usize] += d * d * (ideal.norm() as f64).powf(half);
            }
        }
    } else {
        for (k, c) in pp.iter().enumerate() {
            envelope[k] = c.abs().to_f64().unwrap_or(f64::INFINITY);
        }
    }
    let mut suffix = vec![0.0f64; m_max as usize + 2];
    for k in (1..=m_max as usize).rev() {
        suffix[k] = suffix[k + 1] + envelope[k] * (k as f64).powf(-s);
    }
    let mut truncation_bound = 0.0;
    for n in 1..=root {
        let a_n = zeta_c.get(n).unwrap();
        if a_n == 0 {
            continue;
        }
        let start = (m_max / (n * n) + 1) as usize;
        if start <= m_max as usize {
            truncation_bound += a_n as f64 * (n as f64).powf(-s_zeta) * suffix[start];
        }
    }

    let raw_mass: f64 = pp
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.abs().to_f64().unwrap_or(f64::NAN) * (k as f64).powf(-s))
        .sum();
    let mass = series.abs_mass(s) + zeta_part.value * raw_mass;
    let float_allowance = 8.0 * f64::EPSILON * (m_max as f64 + 1.0) * mass;

    let residual = (path_a - path_b).abs();
    Ok(ConvolutionCheck {
        path_a,
        path_b,
        residual,
        truncation_bound,
        float_allowance,
        pass: residual <= truncation_bound + float_allowance,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaFactor {
    /// Gamma(s + 1 + (k_j - l_j - k0 - l0)/2)
    First,
    /// Gamma(s - (k'_j + l'_j)/2)
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Lambda {
    Value {
        log_abs_gamma: f64,
        gamma_sign: f64,
        l_truncated: f64,
        value: f64,
    },
    PoleAt {
        component: usize,
        factor: GammaFactor,
        argument: f64,
    },
}

/// The Gamma arguments `(first, second)` for each component j.
pub fn gamma_arguments(wf: &WeightData, wg: &WeightData, s: f64) -> Result<Vec<(f64, f64)>, DirichletError> {
    if wf.len() != wg.len() {
        return Err(DirichletError::InvalidParameter("weight vectors of different length".into()));
    }
    let (k0, l0) = (wf.k0() as f64, wg.k0() as f64);
    Ok((0..wf.len())
        .map(|j| {
            let (k, l) = (wf.weights()[j] as f64, wg.weights()[j] as f64);
            let (kp, lp) = (wf.kprime()[j] as f64, wg.kprime()[j] as f64);
            (s + 1.0 + (k - l - k0 - l0) / 2.0, s - (kp + lp) / 2.0)
        })
        .collect())
}

fn is_pole(x: f64) -> bool {
    x < POLE_TOL && (x - x.round()).abs() < POLE_TOL
}

/// ln|Gamma(x)| and the sign of Gamma(x) for x off the poles.
pub fn ln_abs_gamma(x: f64) -> (f64, f64) {
    if x >= 0.5 {
        (ln_gamma(x), 1.0)
    } else {
        // Gamma(x) Gamma(1 - x) = pi / sin(pi x)
        let sin = (PI * x).sin();
        (PI.ln() - sin.abs().ln() - ln_gamma(1.0 - x), sin.signum())
    }
}

/// The Gamma product times the truncated L-value, or the first pole met.
pub fn completed_lambda(
    wf: &WeightData,
    wg: &WeightData,
    series: &RankinSeries,
    s: f64,
) -> Result<Lambda, DirichletError> {
    let args = gamma_arguments(wf, wg, s)?;
    let mut log_abs_gamma = 0.0;
    let mut gamma_sign = 1.0;
    for (j, &(a, b)) in args.iter().enumerate() {
        for (factor, x) in [(GammaFactor::First, a), (GammaFactor::Second, b)] {
            if is_pole(x) {
                return Ok(Lambda::PoleAt {
                    component: j,
                    factor,
                    argument: x,
                });
            }
            let (l, sg) = ln_abs_gamma(x);
            log_abs_gamma += l;
            gamma_sign *= sg;
        }
    }
    let l_truncated = series.eval(s);
    Ok(Lambda::Value {
        log_abs_gamma,
        gamma_sign,
        l_truncated,
        value: gamma_sign * log_abs_gamma.exp() * l_truncated,
    })
}
