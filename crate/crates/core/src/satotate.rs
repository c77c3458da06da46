//! Sato-Tate angles of normalized eigenvalues and the density of
//! simultaneous non-vanishing along prime powers.
//!
//! With beta(P) = 2 cos(alpha), the normalized coefficients satisfy
//! beta(P^m) = sin((m+1) alpha) / sin(alpha) away from the boundary angles.
//! For angles that are rational multiples of pi the zero set is decided in
//! exact arithmetic, never by comparing floats against zero.

use std::f64::consts::PI;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use crate::forms::Rational;

/// Angles this close to 0 or pi are treated as exactly 0 or pi.
pub const BOUNDARY_SNAP: f64 = 1e-12;

/// Relative zero tolerance for float values of beta(P^m): |v| < ZERO_TOL (m+1).
pub const ZERO_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SatoTateError {
    #[error("normalized eigenvalue {0} lies outside [-2, 2]")]
    RamanujanViolation(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AngleKind {
    Zero,
    Pi,
    /// alpha = r pi / s with gcd(r, s) = 1 and 0 < r < s.
    RationalMultiple { r: u32, s: u32 },
    IrrationalMultiple,
}

impl AngleKind {
    pub fn is_boundary(&self) -> bool {
        matches!(self, AngleKind::Zero | AngleKind::Pi)
    }

    /// Denominator s for rational interior angles.
    pub fn period(&self) -> Option<u32> {
        match self {
            AngleKind::RationalMultiple { s, .. } => Some(*s),
            _ => None,
        }
    }
}

impl std::fmt::Display for AngleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AngleKind::Zero => write!(f, "zero"),
            AngleKind::Pi => write!(f, "pi"),
            AngleKind::RationalMultiple { r, s } => write!(f, "{r}/{s}"),
            AngleKind::IrrationalMultiple => write!(f, "irrational"),
        }
    }
}

/// A classified Sato-Tate angle.
///
/// `exact` records whether the classification was proved from exact data or
/// only matched numerically within `residual`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleClass {
    pub alpha: f64,
    pub kind: AngleKind,
    pub residual: f64,
    pub exact: bool,
}

impl AngleClass {
    fn exact(kind: AngleKind, alpha: f64) -> Self {
        AngleClass {
            alpha,
            kind,
            residual: 0.0,
            exact: true,
        }
    }

    fn same_angle(&self, other: &AngleClass) -> bool {
        match (self.kind, other.kind) {
            (AngleKind::IrrationalMultiple, AngleKind::IrrationalMultiple) => {
                (self.alpha - other.alpha).abs() <= BOUNDARY_SNAP
            }
            (a, b) => a == b,
        }
    }
}

/// alpha in [0, pi] with beta = 2 cos(alpha).
pub fn angle_of(beta: f64) -> Result<f64, SatoTateError> {
    if !(beta.abs() <= 2.0) {
        return Err(SatoTateError::RamanujanViolation(beta));
    }
    Ok((beta / 2.0).acos())
}

/// beta(P^m) from the angle: (m+1) at 0, (-1)^m (m+1) at pi,
/// sin((m+1) alpha)/sin(alpha) in between.
pub fn beta_power_closed(alpha: f64, m: u64) -> f64 {
    let m1 = (m + 1) as f64;
    if alpha <= BOUNDARY_SNAP {
        m1
    } else if PI - alpha <= BOUNDARY_SNAP {
        if m % 2 == 0 {
            m1
        } else {
            -m1
        }
    } else {
        (m1 * alpha).sin() / alpha.sin()
    }
}

/// beta(P^m) by the three-term recurrence b_{m+1} = beta b_m - b_{m-1}.
pub fn beta_power_recurrence(beta: f64, m: u64) -> f64 {
    beta_powers_recurrence(beta, m)[m as usize]
}

/// `[beta(P^0), ..., beta(P^max_m)]` by the recurrence.
pub fn beta_powers_recurrence(beta: f64, max_m: u64) -> Vec<f64> {
    let mut out = Vec::with_capacity(max_m as usize + 1);
    out.push(1.0);
    if max_m >= 1 {
        out.push(beta);
    }
    for m in 1..max_m as usize {
        out.push(beta * out[m] - out[m - 1]);
    }
    out
}

/// Classify an exactly known beta.
///
/// A rational beta comes from a rational multiple of pi only for
/// beta in {0, +-1, +-2}.
pub fn classify_exact(beta: &Rational) -> Result<AngleClass, SatoTateError> {
    classify_exact_squared(&(beta * beta), beta.is_negative())
}

/// Classify from beta^2 (exact) and the sign of beta.
///
/// This covers eigenvalue data, where beta = C(P)/N(P)^{(k0-1)/2} is usually
/// irrational but beta^2 is rational. Since beta^2 = 2 + 2cos(2 alpha), a
/// rational multiple of pi forces beta^2 in {0, 1, 2, 3, 4}.
pub fn classify_exact_squared(beta_sq: &Rational, negative: bool) -> Result<AngleClass, SatoTateError> {
    let approx = beta_sq.to_f64().unwrap_or(f64::INFINITY).sqrt();
    let signed = if negative { -approx } else { approx };
    let four = Rational::from_integer(4.into());
    if beta_sq > &four {
        return Err(SatoTateError::RamanujanViolation(signed));
    }
    let rational_angle = |r_pos: u32, r_neg: u32, s: u32| {
        let r = if negative { r_neg } else { r_pos };
        AngleClass::exact(AngleKind::RationalMultiple { r, s }, r as f64 * PI / s as f64)
    };
    if !beta_sq.is_integer() {
        return Ok(AngleClass::exact(AngleKind::IrrationalMultiple, angle_of(signed)?));
    }
    Ok(match beta_sq.to_integer().to_u8() {
        Some(0) => rational_angle(1, 1, 2),
        Some(1) => rational_angle(1, 2, 3),
        Some(2) => rational_angle(1, 3, 4),
        Some(3) => rational_angle(1, 5, 6),
        Some(4) if negative => AngleClass::exact(AngleKind::Pi, PI),
        Some(4) => AngleClass::exact(AngleKind::Zero, 0.0),
        _ => unreachable!("beta^2 <= 4"),
    })
}

/// beta(P) = C(P) / N(P)^{(k0-1)/2}, classified exactly.
pub fn classify_eigenvalue(c_p: &Rational, norm: u64, k0: u32) -> Result<AngleClass, SatoTateError> {
    let denom = num_traits::pow(num_bigint::BigInt::from(norm), k0.saturating_sub(1) as usize);
    let sq = c_p * c_p / Rational::from_integer(denom);
    classify_exact_squared(&sq, c_p.is_negative())
}

/// Numerical classification of a measured beta.
///
/// Scans r/s with s <= s_max for |beta - 2cos(r pi/s)| < tol; the smallest s
/// wins and ties go to the smaller r. Only a heuristic: the result is not
/// marked exact.
pub fn classify_real(beta: f64, tol: f64, s_max: u32) -> Result<AngleClass, SatoTateError> {
    if !(tol > 0.0) || s_max < 2 {
        return Err(SatoTateError::InvalidParameter(format!(
            "need tol > 0 and s_max >= 2 (got {tol}, {s_max})"
        )));
    }
    let alpha = angle_of(beta)?;
    let inexact = |kind, alpha, residual| AngleClass {
        alpha,
        kind,
        residual,
        exact: false,
    };
    if (beta - 2.0).abs() < tol {
        return Ok(inexact(AngleKind::Zero, 0.0, (beta - 2.0).abs()));
    }
    if (beta + 2.0).abs() < tol {
        return Ok(inexact(AngleKind::Pi, PI, (beta + 2.0).abs()));
    }
    for s in 2..=s_max {
        for r in (1..s).filter(|r| r.gcd(&s) == 1) {
            let angle = r as f64 * PI / s as f64;
            let residual = (beta - 2.0 * angle.cos()).abs();
            if residual < tol {
                return Ok(inexact(AngleKind::RationalMultiple { r, s }, alpha, residual));
            }
        }
    }
    Ok(inexact(AngleKind::IrrationalMultiple, alpha, f64::NAN))
}

/// Integer polynomial helpers for the cyclotomic evaluator (low degree first).
fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_div_exact(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dl = den.len();
    let lead = *den.last().unwrap();
    let mut q = vec![0; num.len() + 1 - dl];
    for i in (0..q.len()).rev() {
        let c = rem[i + dl - 1] / lead;
        q[i] = c;
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}

fn mobius(n: u32) -> i8 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// The n-th cyclotomic polynomial as `prod_{d | n} (x^d - 1)^{mu(n/d)}`.
pub fn cyclotomic_poly(n: u32) -> Vec<i128> {
    let mut num = vec![1i128];
    let mut den = vec![1i128];
    for d in (1..=n).filter(|d| n % d == 0) {
        let mut factor = vec![0i128; d as usize + 1];
        factor[0] = -1;
        factor[d as usize] = 1;
        match mobius(n / d) {
            1 => num = poly_mul(&num, &factor),
            -1 => den = poly_mul(&den, &factor),
            _ => {}
        }
    }
    poly_div_exact(&num, &den)
}

/// Exact beta(P^m) for alpha = r pi / s, computed in Z[zeta] with
/// zeta = exp(i pi / s), i.e. modulo the 2s-th cyclotomic polynomial.
///
/// Returns the indices m in 1..=x where beta(P^m) = 0 exactly.
pub fn exact_zero_indices(r: u32, s: u32, x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for_each_exact_zero(r, s, x, |m| out.push(m));
    out
}

fn for_each_exact_zero(r: u32, s: u32, x: u64, mut hit: impl FnMut(u64)) {
    assert!(s >= 2 && r >= 1 && r < s, "need 0 < r < s");
    let n = 2 * s;
    let phi = cyclotomic_poly(n);
    let d = phi.len() - 1;

    // reduce a polynomial of any degree modulo the monic phi
    let reduce = |mut v: Vec<i128>| -> Vec<i128> {
        for i in (d..v.len()).rev() {
            let c = v[i];
            if c != 0 {
                for j in 0..=d {
                    v[i - d + j] -= c * phi[j];
                }
            }
        }
        v.truncate(d);
        v.resize(d, 0);
        v
    };

    // beta = zeta^r + zeta^{2s - r}
    let mut beta = vec![0i128; n as usize];
    beta[r as usize] += 1;
    beta[(n - r) as usize] += 1;
    // columns of multiplication-by-beta in the power basis
    let columns: Vec<Vec<i128>> = (0..d)
        .map(|i| {
            let mut shifted = vec![0i128; i];
            shifted.extend_from_slice(&beta);
            reduce(shifted)
        })
        .collect();
    let times_beta = |v: &[i128]| -> Vec<i128> {
        let mut out = vec![0i128; d];
        for (i, &c) in v.iter().enumerate() {
            if c != 0 {
                for (o, col) in out.iter_mut().zip(&columns[i]) {
                    *o += c * col;
                }
            }
        }
        out
    };

    let mut prev = {
        let mut one = vec![0i128; d];
        one[0] = 1;
        one
    };
    let mut cur = times_beta(&prev);
    let start = (prev.clone(), cur.clone());
    // beta has finite order on the pair (prev, cur), so the zeros repeat once
    // the pair comes back to its starting value
    let mut zeros = Vec::new();
    for m in 1..=x {
        if m > 1 && prev == start.0 && cur == start.1 {
            let period = m - 1;
            let mut base = m - 1;
            while base < x {
                for &z in &zeros {
                    if base + z > x {
                        return;
                    }
                    hit(base + z);
                }
                base += period;
            }
            return;
        }
        if cur.iter().all(|&c| c == 0) {
            zeros.push(m);
            hit(m);
        }
        let next: Vec<i128> = times_beta(&cur).iter().zip(&prev).map(|(a, b)| a - b).collect();
        prev = std::mem::replace(&mut cur, next);
    }
}

/// `mask[m]` is true iff beta(P^m) != 0, for m in 0..=x.
fn nonzero_mask(angle: &AngleClass, x: u64) -> Vec<bool> {
    let mut mask = vec![true; x as usize + 1];
    match angle.kind {
        AngleKind::Zero | AngleKind::Pi => {}
        AngleKind::RationalMultiple { r, s } => {
            for_each_exact_zero(r, s, x, |m| mask[m as usize] = false);
        }
        // sin((m+1) alpha) never vanishes when alpha/pi is provably irrational
        AngleKind::IrrationalMultiple if angle.exact => {}
        AngleKind::IrrationalMultiple => {
            for (m, slot) in mask.iter_mut().enumerate().skip(1) {
                let v = beta_power_closed(angle.alpha, m as u64);
                *slot = v.abs() >= ZERO_TOL * (m as f64 + 1.0);
            }
        }
    }
    mask
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NonvanishingCount {
    pub empirical: u64,
    pub formula: u64,
}

/// `#{1 <= m <= x : beta(P^m) != 0}` against `x - floor(x/s)`.
pub fn nonvanishing_count(angle: &AngleClass, x: u64) -> NonvanishingCount {
    let mask = nonzero_mask(angle, x);
    let empirical = mask[1..].iter().filter(|&&b| b).count() as u64;
    let formula = match angle.kind.period() {
        Some(s) => x - x / s as u64,
        None => x,
    };
    NonvanishingCount { empirical, formula }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaCount {
    Point(u64),
    /// Only bracketed: the union bound below, x above.
    Interval { lo: u64, hi: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityReport {
    pub case_id: u8,
    pub x: u64,
    pub nonzero_count: u64,
    pub formula_count: FormulaCount,
    pub lower_bound_density: Ratio<i64>,
    /// Asymptotic density of the nonvanishing set (inclusion-exclusion in case 4).
    pub exact_density: Ratio<i64>,
}

impl DensityReport {
    /// Count agrees with the formula up to the off-by-one between zeros at
    /// s | m+1 (closed form) and at s | m (as the counting formula is stated).
    pub fn consistent(&self) -> bool {
        match self.formula_count {
            FormulaCount::Point(f) => self.nonzero_count.abs_diff(f) <= 1,
            FormulaCount::Interval { lo, hi } => self.nonzero_count + 2 >= lo && self.nonzero_count <= hi,
        }
    }
}

fn one_minus_inv(s: u32) -> Ratio<i64> {
    Ratio::new(s as i64 - 1, s as i64)
}

/// Joint non-vanishing of beta_f(P^m) beta_g(P^m) for m <= x, classified into
/// the four cases: both angles at the boundary; exactly one at the boundary;
/// equal interior angles; distinct interior angles.
pub fn simultaneous_density(f: &AngleClass, g: &AngleClass, x: u64) -> DensityReport {
    let mask_f = nonzero_mask(f, x);
    let mask_g = nonzero_mask(g, x);
    let nonzero_count = (1..=x as usize).filter(|&m| mask_f[m] && mask_g[m]).count() as u64;

    let single = |k: AngleKind| match k.period() {
        Some(s) => (FormulaCount::Point(x - x / s as u64), one_minus_inv(s)),
        None => (FormulaCount::Point(x), Ratio::from_integer(1)),
    };

    let (case_id, formula_count, lower, exact) = match (f.kind.is_boundary(), g.kind.is_boundary()) {
        (true, true) => (1, FormulaCount::Point(x), Ratio::from_integer(1), Ratio::from_integer(1)),
        (true, false) | (false, true) => {
            let interior = if f.kind.is_boundary() { g.kind } else { f.kind };
            let (fc, d) = single(interior);
            (2, fc, d, d)
        }
        _ if f.same_angle(g) => {
            let (fc, d) = single(f.kind);
            (3, fc, d, d)
        }
        _ => match (f.kind.period(), g.kind.period()) {
            (Some(s1), Some(s2)) => {
                let (a, b) = (s1 as u64, s2 as u64);
                let lo = x.saturating_sub(x / a + x / b);
                let lower = Ratio::from_integer(1) - Ratio::new(1, a as i64) - Ratio::new(1, b as i64);
                let exact = lower + Ratio::new(1, a.lcm(&b) as i64);
                (4, FormulaCount::Interval { lo, hi: x }, lower, exact)
            }
            (Some(_), None) => {
                let (fc, d) = single(f.kind);
                (4, fc, d, d)
            }
            (None, Some(_)) => {
                let (fc, d) = single(g.kind);
                (4, fc, d, d)
            }
            (None, None) => (4, FormulaCount::Point(x), Ratio::from_integer(1), Ratio::from_integer(1)),
        },
    };

    DensityReport {
        case_id,
        x,
        nonzero_count,
        formula_count,
        lower_bound_density: lower,
        exact_density: exact,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn rational(r: u32, s: u32) -> AngleClass {
        AngleClass::exact(AngleKind::RationalMultiple { r, s }, r as f64 * PI / s as f64)
    }

    #[test]
    fn angle_examples() {
        assert_eq!(angle_of(2.0).unwrap(), 0.0);
        assert_eq!(angle_of(-2.0).unwrap(), PI);
        assert!((angle_of(0.0).unwrap() - PI / 2.0).abs() < 1e-15);
        assert!(matches!(angle_of(2.0001), Err(SatoTateError::RamanujanViolation(_))));
        assert!(angle_of(f64::NAN).is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(beta_power_closed(0.0, 5), 6.0);
        assert_eq!(beta_power_closed(PI, 5), -6.0);
        assert_eq!(beta_power_closed(PI, 4), 5.0);
        assert!(beta_power_closed(PI / 3.0, 2).abs() < 1e-15);
        assert_eq!(beta_power_closed(1e-13, 3), 4.0);
    }

    #[test]
    fn recurrence_boundary_cases_are_integers() {
        let up = beta_powers_recurrence(2.0, 50);
        let down = beta_powers_recurrence(-2.0, 50);
        for m in 0..=50u64 {
            assert_eq!(up[m as usize], (m + 1) as f64);
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(down[m as usize], sign * (m + 1) as f64);
        }
    }

    #[test]
    fn classify_exact_examples() {
        let one = classify_exact(&q(1, 1)).unwrap();
        assert_eq!(one.kind, AngleKind::RationalMultiple { r: 1, s: 3 });
        assert!((2.0 * one.alpha.cos() - 1.0).abs() < 1e-15);
        assert_eq!(classify_exact(&q(1, 2)).unwrap().kind, AngleKind::IrrationalMultiple);
        assert_eq!(classify_exact(&q(0, 1)).unwrap().kind, AngleKind::RationalMultiple { r: 1, s: 2 });
        assert_eq!(classify_exact(&q(-1, 1)).unwrap().kind, AngleKind::RationalMultiple { r: 2, s: 3 });
        assert_eq!(classify_exact(&q(2, 1)).unwrap().kind, AngleKind::Zero);
        assert_eq!(classify_exact(&q(-2, 1)).unwrap().kind, AngleKind::Pi);
        assert!(classify_exact(&q(5, 2)).is_err());
    }

    #[test]
    fn classify_squared_covers_quadratic_irrationals() {
        assert_eq!(
            classify_exact_squared(&q(2, 1), false).unwrap().kind,
            AngleKind::RationalMultiple { r: 1, s: 4 }
        );
        assert_eq!(
            classify_exact_squared(&q(3, 1), true).unwrap().kind,
            AngleKind::RationalMultiple { r: 5, s: 6 }
        );
        assert_eq!(classify_exact_squared(&q(5, 2), false).unwrap().kind, AngleKind::IrrationalMultiple);
        // every listed class reproduces its beta^2
        for (bsq, neg) in [(0, false), (1, false), (1, true), (2, false), (2, true), (3, false), (3, true)] {
            let c = classify_exact_squared(&q(bsq, 1), neg).unwrap();
            let b = 2.0 * c.alpha.cos();
            assert!((b * b - bsq as f64).abs() < 1e-12);
            assert_eq!(b < 0.0, neg && bsq != 0);
        }
    }

    #[test]
    fn classify_eigenvalue_of_inert_prime() {
        // N(P) = 4, k0 = 2: beta = C/2, so C = 2 gives beta = 1.
        let c = classify_eigenvalue(&q(2, 1), 4, 2).unwrap();
        assert_eq!(c.kind, AngleKind::RationalMultiple { r: 1, s: 3 });
        // tau(2): beta^2 = 576/2^11, irrational angle
        let c = classify_eigenvalue(&q(-24, 1), 2, 12).unwrap();
        assert_eq!(c.kind, AngleKind::IrrationalMultiple);
        assert!((2.0 * c.alpha.cos() + 24.0 / 2f64.powf(5.5)).abs() < 1e-12);
    }

    #[test]
    fn classify_real_examples() {
        let c = classify_real(1.4142136, 1e-5, 16).unwrap();
        assert_eq!(c.kind, AngleKind::RationalMultiple { r: 1, s: 4 });
        assert!(!c.exact && c.residual < 1e-5);
        assert_eq!(classify_real(1.0, 1e-9, 16).unwrap().kind, AngleKind::RationalMultiple { r: 1, s: 3 });
        assert_eq!(classify_real(-2.0, 1e-9, 16).unwrap().kind, AngleKind::Pi);
        assert_eq!(classify_real(0.123456789, 1e-9, 16).unwrap().kind, AngleKind::IrrationalMultiple);
        assert!(classify_real(0.5, 0.0, 16).is_err());
        assert!(classify_real(0.5, 1e-9, 1).is_err());
        assert!(classify_real(3.0, 1e-9, 16).is_err());
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(24).len() - 1, 8);
    }

    #[test]
    fn exact_zero_sets() {
        assert_eq!(exact_zero_indices(1, 3, 10), vec![2, 5, 8]);
        assert_eq!(exact_zero_indices(1, 2, 10), vec![1, 3, 5, 7, 9]);
        assert_eq!(exact_zero_indices(2, 5, 20), vec![4, 9, 14, 19]);
    }

    #[test]
    fn nonvanishing_examples() {
        assert_eq!(
            nonvanishing_count(&rational(1, 3), 10),
            NonvanishingCount { empirical: 7, formula: 7 }
        );
        assert_eq!(
            nonvanishing_count(&rational(1, 2), 10),
            NonvanishingCount { empirical: 5, formula: 5 }
        );
        let irr = classify_exact(&q(1, 2)).unwrap();
        assert_eq!(
            nonvanishing_count(&irr, 100),
            NonvanishingCount { empirical: 100, formula: 100 }
        );
    }

    #[test]
    fn density_examples() {
        let zero = classify_exact(&q(2, 1)).unwrap();
        let pi = classify_exact(&q(-2, 1)).unwrap();
        let r = simultaneous_density(&zero, &pi, 37);
        assert_eq!((r.case_id, r.nonzero_count), (1, 37));
        assert_eq!(r.lower_bound_density, Ratio::from_integer(1));

        let r = simultaneous_density(&zero, &rational(1, 3), 12);
        assert_eq!(r.case_id, 2);
        assert_eq!(r.formula_count, FormulaCount::Point(8));
        assert_eq!(r.nonzero_count, 8);
        assert_eq!(r.lower_bound_density, Ratio::new(2, 3));

        let r = simultaneous_density(&rational(1, 3), &rational(1, 4), 12);
        assert_eq!(r.case_id, 4);
        assert_eq!(r.nonzero_count, 6);
        assert_eq!(r.formula_count, FormulaCount::Interval { lo: 5, hi: 12 });
        assert_eq!(r.exact_density, Ratio::new(1, 2));
        assert!(r.consistent());

        let r = simultaneous_density(&rational(1, 4), &rational(1, 4), 12);
        assert_eq!((r.case_id, r.nonzero_count), (3, 9));

        let irr = classify_exact(&q(1, 2)).unwrap();
        let r = simultaneous_density(&rational(1, 3), &irr, 30);
        assert_eq!(r.case_id, 4);
        assert_eq!(r.formula_count, FormulaCount::Point(20));
        assert_eq!(r.nonzero_count, 20);
    }
}
