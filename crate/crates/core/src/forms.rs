//! Ideal-indexed Fourier coefficient systems and the operators acting on them.
//!
//! Coefficients are exact rationals. A system stores its nonzero coefficients
//! for every ideal up to `bound`; anything absent is zero, except at ideals
//! sharing a prime with `uncovered` (the bad primes of an eigen system), which
//! are reported as not covered instead.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::quadfield::{Field, Ideal, PrimeIdeal, QuadError};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormsError {
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("weight has {got} components but the field has degree {want}")]
    DegreeMismatch { got: usize, want: usize },
    #[error("coefficient systems or ideals live over different fields")]
    FieldMismatch,
    #[error("ideal of norm {norm} exceeds the system bound {bound}")]
    OutOfBound { norm: u64, bound: u64 },
    #[error("ideal {0} shares a prime with the level; coefficient not covered")]
    NotCovered(String),
    #[error("eigenvalue table is missing prime {0}")]
    IncompleteTable(String),
    #[error("prime {0} divides the level; bad primes are excluded from eigen tables")]
    PrimeDividesLevel(String),
    #[error("prime {0} does not belong to the field")]
    ForeignPrime(String),
    #[error("operation needs an eigen system")]
    NotEigen,
    #[error(transparent)]
    Ideal(#[from] QuadError),
}

/// Weight vector with k0 = max and the defects k0 - k_j.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightData {
    weights: Vec<u32>,
    k0: u32,
    kprime: Vec<u32>,
}

impl WeightData {
    pub fn new(weights: Vec<u32>) -> Result<Self, FormsError> {
        if weights.is_empty() {
            return Err(FormsError::InvalidWeight("empty weight vector".into()));
        }
        if weights.contains(&0) {
            return Err(FormsError::InvalidWeight("weights must be positive".into()));
        }
        let k0 = *weights.iter().max().unwrap();
        let kprime = weights.iter().map(|k| k0 - k).collect();
        Ok(WeightData { weights, k0, kprime })
    }

    /// Parallel weight (k, ..., k) for a field of the given degree.
    pub fn parallel(k: u32, degree: u8) -> Result<Self, FormsError> {
        WeightData::new(vec![k; degree as usize])
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn k0(&self) -> u32 {
        self.k0
    }

    pub fn kprime(&self) -> &[u32] {
        &self.kprime
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    fn check_field(&self, field: &Field) -> Result<(), FormsError> {
        if self.len() != field.degree() as usize {
            return Err(FormsError::DegreeMismatch {
                got: self.len(),
                want: field.degree() as usize,
            });
        }
        Ok(())
    }
}

/// Hecke eigenvalues C(P, f) at good primes, plus the form's metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPrimeTable {
    field: Field,
    weight: WeightData,
    level: Ideal,
    cm_flag: bool,
    entries: BTreeMap<PrimeIdeal, Rational>,
}

impl EigenPrimeTable {
    pub fn new(field: Field, weight: WeightData, level: Ideal, cm_flag: bool) -> Result<Self, FormsError> {
        weight.check_field(&field)?;
        if level.field() != field {
            return Err(FormsError::FieldMismatch);
        }
        Ok(EigenPrimeTable {
            field,
            weight,
            level,
            cm_flag,
            entries: BTreeMap::new(),
        })
    }

    pub fn insert(&mut self, prime: PrimeIdeal, value: Rational) -> Result<(), FormsError> {
        let above = self
            .field
            .split_prime(prime.p)
            .map_err(|_| FormsError::ForeignPrime(prime.to_string()))?;
        if !above.contains(&prime) {
            return Err(FormsError::ForeignPrime(prime.to_string()));
        }
        if self.level.valuation(&prime) > 0 {
            return Err(FormsError::PrimeDividesLevel(prime.to_string()));
        }
        self.entries.insert(prime, value);
        Ok(())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn weight(&self) -> &WeightData {
        &self.weight
    }

    pub fn level(&self) -> &Ideal {
        &self.level
    }

    pub fn cm_flag(&self) -> bool {
        self.cm_flag
    }

    pub fn entries(&self) -> &BTreeMap<PrimeIdeal, Rational> {
        &self.entries
    }

    pub fn get(&self, prime: &PrimeIdeal) -> Option<&Rational> {
        self.entries.get(prime)
    }
}

fn norm_power(norm: u64, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(norm), exp as usize)
}

/// C(P^m) from C(P) through
/// `C(P^{m+1}) = C(P) C(P^m) - N(P)^{k0-1} C(P^{m-1})`.
pub fn prime_power_coeff(c_p: &Rational, norm_p: u64, k0: u32, m: u32) -> Rational {
    prime_power_coeffs(c_p, norm_p, k0, m).pop().unwrap()
}

/// `[C(P^0), ..., C(P^max_m)]`.
pub fn prime_power_coeffs(c_p: &Rational, norm_p: u64, k0: u32, max_m: u32) -> Vec<Rational> {
    let step = Rational::from_integer(norm_power(norm_p, k0.saturating_sub(1)));
    let mut out = Vec::with_capacity(max_m as usize + 1);
    out.push(Rational::one());
    if max_m >= 1 {
        out.push(c_p.clone());
    }
    for m in 1..max_m as usize {
        let next = c_p * &out[m] - &step * &out[m - 1];
        out.push(next);
    }
    out
}

/// Coefficients C(m, f) for all integral ideals of norm at most `bound`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSystem {
    field: Field,
    weight: WeightData,
    level: Ideal,
    is_eigen: bool,
    cm_flag: bool,
    coeffs: BTreeMap<Ideal, Rational>,
    uncovered: Ideal,
    bound: u64,
}

impl CoefficientSystem {
    /// A plain coefficient table; ideals not listed have coefficient zero.
    pub fn from_table(
        field: Field,
        weight: WeightData,
        level: Ideal,
        bound: u64,
        entries: impl IntoIterator<Item = (Ideal, Rational)>,
    ) -> Result<Self, FormsError> {
        weight.check_field(&field)?;
        if level.field() != field {
            return Err(FormsError::FieldMismatch);
        }
        let mut coeffs = BTreeMap::new();
        for (ideal, value) in entries {
            if ideal.field() != field {
                return Err(FormsError::FieldMismatch);
            }
            if ideal.norm() > bound {
                return Err(FormsError::OutOfBound {
                    norm: ideal.norm(),
                    bound,
                });
            }
            if !value.is_zero() {
                coeffs.insert(ideal, value);
            }
        }
        Ok(CoefficientSystem {
            field,
            weight,
            level,
            is_eigen: false,
            cm_flag: false,
            uncovered: field.unit_ideal(),
            coeffs,
            bound,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn weight(&self) -> &WeightData {
        &self.weight
    }

    pub fn level(&self) -> &Ideal {
        &self.level
    }

    pub fn is_eigen(&self) -> bool {
        self.is_eigen
    }

    pub fn cm_flag(&self) -> bool {
        self.cm_flag
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Ideals whose prime support makes a coefficient unavailable.
    pub fn uncovered(&self) -> &Ideal {
        &self.uncovered
    }

    /// Nonzero coefficients, ordered by norm.
    pub fn nonzero(&self) -> impl Iterator<Item = (&Ideal, &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_covered(&self, m: &Ideal) -> bool {
        m.norm() <= self.bound && m.is_coprime_to(&self.uncovered)
    }

    pub fn coeff(&self, m: &Ideal) -> Result<Rational, FormsError> {
        if m.field() != self.field {
            return Err(FormsError::FieldMismatch);
        }
        if m.norm() > self.bound {
            return Err(FormsError::OutOfBound {
                norm: m.norm(),
                bound: self.bound,
            });
        }
        if !m.is_coprime_to(&self.uncovered) {
            return Err(FormsError::NotCovered(m.to_string()));
        }
        Ok(self.coeffs.get(m).cloned().unwrap_or_else(Rational::zero))
    }

    /// C(q^{-1} m); zero when the quotient is not integral.
    pub fn coeff_of_quotient(&self, m: &Ideal, q: &Ideal) -> Result<Rational, FormsError> {
        match m.divide_exact(q) {
            Ok(quotient) => self.coeff(&quotient),
            Err(QuadError::NotIntegral) => Ok(Rational::zero()),
            Err(e) => Err(e.into()),
        }
    }

    fn same_field(&self, q: &Ideal) -> Result<(), FormsError> {
        if q.field() != self.field {
            Err(FormsError::FieldMismatch)
        } else {
            Ok(())
        }
    }
}

/// Multiplicative coefficient system of a normalized eigenform.
///
/// Built from C(P) at every good prime P of norm at most `bound` via the
/// prime-power recurrence and multiplicativity on coprime ideals. Ideals that
/// share a prime with the level are left uncovered.
pub fn build_eigen_system(table: &EigenPrimeTable, bound: u64) -> Result<CoefficientSystem, FormsError> {
    let field = table.field;
    let k0 = table.weight.k0;
    let level = &table.level;

    let mut powers: BTreeMap<PrimeIdeal, Vec<Rational>> = BTreeMap::new();
    for prime in field.primes_up_to(bound) {
        if level.valuation(&prime) > 0 {
            continue;
        }
        let c_p = table
            .entries
            .get(&prime)
            .ok_or_else(|| FormsError::IncompleteTable(prime.to_string()))?;
        let mut max_e = 1u32;
        while prime.norm.checked_pow(max_e + 1).is_some_and(|n| n <= bound) {
            max_e += 1;
        }
        powers.insert(prime, prime_power_coeffs(c_p, prime.norm, k0, max_e));
    }

    let mut coeffs = BTreeMap::new();
    for ideal in field.ideals_up_to(bound) {
        if !ideal.is_coprime_to(level) {
            continue;
        }
        let mut value = Rational::one();
        for (prime, &e) in ideal.factors() {
            value *= &powers[prime][e as usize];
            if value.is_zero() {
                break;
            }
        }
        if !value.is_zero() {
            coeffs.insert(ideal, value);
        }
    }

    Ok(CoefficientSystem {
        field,
        weight: table.weight.clone(),
        level: level.clone(),
        is_eigen: true,
        cm_flag: table.cm_flag,
        coeffs,
        uncovered: level.radical(),
        bound,
    })
}

/// `C(m)C(n) - sum_{a | m + n} N(a)^{k0-1} C(a^{-2} m n)`; zero for eigen systems.
pub fn hecke_product_check(sys: &CoefficientSystem, m: &Ideal, n: &Ideal) -> Result<Rational, FormsError> {
    if !sys.is_eigen {
        return Err(FormsError::NotEigen);
    }
    let lhs = sys.coeff(m)? * sys.coeff(n)?;
    let mn = m.mul(n)?;
    let k0 = sys.weight.k0;
    let mut rhs = Rational::zero();
    for a in m.gcd(n)?.divisors() {
        let inner = mn.divide_exact(&a.pow(2)?)?;
        let weight = Rational::from_integer(norm_power(a.norm(), k0 - 1));
        rhs += weight * sys.coeff(&inner)?;
    }
    Ok(lhs - rhs)
}

/// `f | q`: C(m, f|q) = C(q^{-1} m, f), zero off multiples of q. Level times q.
pub fn shift_by(sys: &CoefficientSystem, q: &Ideal) -> Result<CoefficientSystem, FormsError> {
    sys.same_field(q)?;
    // every multiple of q below (bound+1) N(q) has its quotient inside the old bound
    let bound = (sys.bound + 1)
        .checked_mul(q.norm())
        .map(|b| b - 1)
        .ok_or(QuadError::NormOverflow)?;
    let mut coeffs = BTreeMap::new();
    for (m, c) in &sys.coeffs {
        coeffs.insert(m.mul(q)?, c.clone());
    }
    Ok(CoefficientSystem {
        field: sys.field,
        weight: sys.weight.clone(),
        level: sys.level.mul(q)?,
        is_eigen: false,
        cm_flag: sys.cm_flag,
        coeffs,
        uncovered: sys.uncovered.clone(),
        bound,
    })
}

/// `f | U(q)`: C(m, f|U(q)) = C(q m, f). Level times q.
pub fn u_operator(sys: &CoefficientSystem, q: &Ideal) -> Result<CoefficientSystem, FormsError> {
    sys.same_field(q)?;
    if !q.is_coprime_to(&sys.uncovered) {
        return Err(FormsError::NotCovered(q.to_string()));
    }
    let bound = sys.bound / q.norm();
    let mut coeffs = BTreeMap::new();
    for (n, c) in &sys.coeffs {
        if n.norm() > bound * q.norm() {
            break;
        }
        if let Ok(m) = n.divide_exact(q) {
            coeffs.insert(m, c.clone());
        }
    }
    Ok(CoefficientSystem {
        field: sys.field,
        weight: sys.weight.clone(),
        level: sys.level.mul(q)?,
        is_eigen: false,
        cm_flag: sys.cm_flag,
        coeffs,
        uncovered: sys.uncovered.clone(),
        bound,
    })
}

/// `g = f - (f | U(q)) | q`, of level q^2 times the level of f.
///
/// C(q m, g) = 0 for every m, and C(m, g) = C(m, f) whenever (m, q) = 1.
pub fn kill_multiples(sys: &CoefficientSystem, q: &Ideal) -> Result<CoefficientSystem, FormsError> {
    let lifted = shift_by(&u_operator(sys, q)?, q)?;
    let bound = sys.bound.min(lifted.bound);
    let mut coeffs = sys.coeffs.clone();
    for (m, c) in lifted.coeffs {
        if m.norm() > bound {
            break;
        }
        let slot = coeffs.entry(m).or_insert_with(Rational::zero);
        *slot -= c;
    }
    coeffs.retain(|m, c| m.norm() <= bound && !c.is_zero());
    Ok(CoefficientSystem {
        field: sys.field,
        weight: sys.weight.clone(),
        level: lifted.level,
        is_eigen: false,
        cm_flag: sys.cm_flag,
        coeffs,
        uncovered: sys.uncovered.clone(),
        bound,
    })
}

/// `c / N^{(k0-1)/2}` as a float, computed from the exact square so that
/// huge coefficients do not overflow on the way.
pub fn normalize(c: &Rational, norm: u64, k0: u32) -> f64 {
    if c.is_zero() {
        return 0.0;
    }
    let denom = Rational::from_integer(norm_power(norm, k0.saturating_sub(1)));
    let sq = (c * c / denom).to_f64().unwrap_or(f64::INFINITY);
    let v = sq.sqrt();
    if c.is_negative() {
        -v
    } else {
        v
    }
}

/// beta(a, f) = C(a, f) / N(a)^{(k0-1)/2}.
pub fn beta(sys: &CoefficientSystem, a: &Ideal) -> Result<f64, FormsError> {
    Ok(normalize(&sys.coeff(a)?, a.norm(), sys.weight.k0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RamanujanRow {
    pub prime: PrimeIdeal,
    pub coeff: Rational,
    pub beta: f64,
    pub bound: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RamanujanReport {
    pub rows: Vec<RamanujanRow>,
    pub pass: bool,
    /// Set when the table is empty and the pass is vacuous.
    pub vacuous: bool,
}

impl RamanujanReport {
    pub fn failures(&self) -> impl Iterator<Item = &RamanujanRow> {
        self.rows.iter().filter(|r| !r.pass)
    }
}

/// Check `|C(P)| <= 2 N(P)^{(k0-1)/2}` exactly, as `C(P)^2 <= 4 N(P)^{k0-1}`.
pub fn validate_ramanujan(table: &EigenPrimeTable) -> RamanujanReport {
    let k0 = table.weight.k0;
    let rows: Vec<RamanujanRow> = table
        .entries
        .iter()
        .map(|(prime, c)| {
            let limit = Rational::from_integer(norm_power(prime.norm, k0.saturating_sub(1)) * 4);
            RamanujanRow {
                prime: *prime,
                coeff: c.clone(),
                beta: normalize(c, prime.norm, k0),
                bound: 2.0 * (prime.norm as f64).powf((k0 as f64 - 1.0) / 2.0),
                pass: c * c <= limit,
            }
        })
        .collect();
    RamanujanReport {
        pass: rows.iter().all(|r| r.pass),
        vacuous: rows.is_empty(),
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Rational {
        Rational::from_integer(BigInt::from(v))
    }

    // tau(n) for n <= 12, from the q-expansion of Delta.
    const TAU: [i64; 13] = [0, 1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612, -370944];

    fn delta_table(primes: &[(u64, i64)]) -> EigenPrimeTable {
        let q = Field::rational();
        let mut t = EigenPrimeTable::new(q, WeightData::new(vec![12]).unwrap(), q.unit_ideal(), false).unwrap();
        for &(p, v) in primes {
            t.insert(q.split_prime(p).unwrap()[0], int(v)).unwrap();
        }
        t
    }

    fn small_delta() -> CoefficientSystem {
        let t = delta_table(&[(2, -24), (3, 252), (5, 4830), (7, -16744), (11, 534612)]);
        build_eigen_system(&t, 12).unwrap()
    }

    fn rat_ideal(n: u64) -> Ideal {
        let q = Field::rational();
        let mut i = q.unit_ideal();
        for (p, e) in crate::arith::factor(n) {
            i = i.mul(&q.prime_ideal(q.split_prime(p).unwrap()[0]).pow(e).unwrap()).unwrap();
        }
        i
    }

    #[test]
    fn weight_data() {
        let w = WeightData::new(vec![4, 6]).unwrap();
        assert_eq!(w.k0(), 6);
        assert_eq!(w.kprime(), &[2, 0]);
        assert!(WeightData::new(vec![]).is_err());
        assert!(WeightData::new(vec![0, 2]).is_err());
    }

    #[test]
    fn prime_power_examples() {
        assert_eq!(prime_power_coeff(&int(-24), 2, 12, 2), int(-1472));
        assert_eq!(prime_power_coeff(&int(-24), 2, 12, 3), int(TAU[8]));
        assert_eq!(prime_power_coeff(&int(7), 5, 12, 0), int(1));
        assert_eq!(prime_power_coeff(&int(7), 5, 12, 1), int(7));
    }

    #[test]
    fn build_small_delta() {
        let sys = small_delta();
        for n in 1..=12 {
            assert_eq!(sys.coeff(&rat_ideal(n)).unwrap(), int(TAU[n as usize]), "tau({n})");
        }
        assert_eq!(sys.coeff(&rat_ideal(6)).unwrap(), int(-6048));
        assert!(matches!(sys.coeff(&rat_ideal(13)), Err(FormsError::OutOfBound { .. })));
    }

    #[test]
    fn build_trivial_and_incomplete() {
        let sys = build_eigen_system(&delta_table(&[]), 1).unwrap();
        assert_eq!(sys.nonzero().count(), 1);
        assert_eq!(sys.coeff(&Field::rational().unit_ideal()).unwrap(), int(1));

        let err = build_eigen_system(&delta_table(&[(2, -24), (5, 4830), (7, -16744)]), 9).unwrap_err();
        assert_eq!(err, FormsError::IncompleteTable("3".into()));
    }

    #[test]
    fn level_primes_are_excluded_and_uncovered() {
        let q = Field::rational();
        let level = rat_ideal(3);
        let mut t = EigenPrimeTable::new(q, WeightData::new(vec![2]).unwrap(), level.clone(), false).unwrap();
        let p3 = q.split_prime(3).unwrap()[0];
        assert!(matches!(t.insert(p3, int(1)), Err(FormsError::PrimeDividesLevel(_))));
        t.insert(q.split_prime(2).unwrap()[0], int(-1)).unwrap();
        t.insert(q.split_prime(5).unwrap()[0], int(1)).unwrap();
        let sys = build_eigen_system(&t, 5).unwrap();
        assert_eq!(sys.coeff(&rat_ideal(4)).unwrap(), int(1 - 2));
        assert!(matches!(sys.coeff(&rat_ideal(3)), Err(FormsError::NotCovered(_))));
        assert!(u_operator(&sys, &rat_ideal(3)).is_err());
    }

    #[test]
    fn foreign_primes_rejected() {
        let f = Field::quadratic(5).unwrap();
        let mut t = EigenPrimeTable::new(f, WeightData::parallel(2, 2).unwrap(), f.unit_ideal(), false).unwrap();
        let wrong = Field::rational().split_prime(11).unwrap()[0];
        assert!(matches!(t.insert(wrong, int(1)), Err(FormsError::ForeignPrime(_))));
    }

    #[test]
    fn hecke_product_examples() {
        let sys = small_delta();
        // coprime pair: single term
        assert!(hecke_product_check(&sys, &rat_ideal(2), &rat_ideal(5)).unwrap().is_zero());
        // (2)(2): tau(2)^2 = tau(4) + 2^11
        assert!(hecke_product_check(&sys, &rat_ideal(2), &rat_ideal(2)).unwrap().is_zero());
        assert!(hecke_product_check(&sys, &rat_ideal(3), &rat_ideal(3)).unwrap().is_zero());
        assert!(hecke_product_check(&sys, &rat_ideal(2), &rat_ideal(6)).unwrap().is_zero());
        assert!(matches!(
            hecke_product_check(&sys, &rat_ideal(3), &rat_ideal(5)),
            Err(FormsError::OutOfBound { .. })
        ));
        let plain = shift_by(&sys, &rat_ideal(1)).unwrap();
        assert_eq!(hecke_product_check(&plain, &rat_ideal(1), &rat_ideal(1)), Err(FormsError::NotEigen));
    }

    #[test]
    fn shift_examples() {
        let sys = small_delta();
        let q = rat_ideal(2);
        let shifted = shift_by(&sys, &q).unwrap();
        assert_eq!(shifted.coeff(&q).unwrap(), int(1));
        assert_eq!(shifted.coeff(&rat_ideal(1)).unwrap(), int(0));
        assert_eq!(shifted.coeff(&rat_ideal(3)).unwrap(), int(0));
        assert_eq!(shifted.coeff(&rat_ideal(6)).unwrap(), int(TAU[3]));
        assert_eq!(shifted.bound(), 25);
        assert_eq!(shifted.coeff(&rat_ideal(24)).unwrap(), int(TAU[12]));
        assert_eq!(shifted.level(), &q);
        assert!(!shifted.is_eigen());
    }

    #[test]
    fn u_operator_examples() {
        let sys = small_delta();
        let u = u_operator(&sys, &rat_ideal(2)).unwrap();
        assert_eq!(u.bound(), 6);
        assert_eq!(u.coeff(&rat_ideal(1)).unwrap(), int(-24));
        assert_eq!(u.coeff(&rat_ideal(3)).unwrap(), int(TAU[6]));
        assert!(u.coeff(&rat_ideal(7)).is_err());
        let same = u_operator(&sys, &rat_ideal(1)).unwrap();
        assert_eq!(same.nonzero().collect::<Vec<_>>(), sys.nonzero().collect::<Vec<_>>());
    }

    #[test]
    fn kill_examples() {
        let sys = small_delta();
        let g = kill_multiples(&sys, &rat_ideal(2)).unwrap();
        assert_eq!(g.bound(), 12);
        assert_eq!(g.coeff(&rat_ideal(3)).unwrap(), int(252));
        for n in [2, 4, 6, 8, 10, 12] {
            assert!(g.coeff(&rat_ideal(n)).unwrap().is_zero());
        }
        for n in [1, 5, 7, 9, 11] {
            assert_eq!(g.coeff(&rat_ideal(n)).unwrap(), int(TAU[n as usize]));
        }
        assert_eq!(g.level(), &rat_ideal(4));

        let zero = kill_multiples(&sys, &rat_ideal(1)).unwrap();
        assert_eq!(zero.nonzero().count(), 0);
    }

    #[test]
    fn beta_examples() {
        let sys = small_delta();
        let b2 = beta(&sys, &rat_ideal(2)).unwrap();
        assert!((b2 - (-24.0 / 2f64.powf(5.5))).abs() < 1e-12);
        assert!((b2 + 0.5303301).abs() < 1e-7);
        assert_eq!(beta(&sys, &rat_ideal(1)).unwrap(), 1.0);
        let g = kill_multiples(&sys, &rat_ideal(2)).unwrap();
        assert_eq!(beta(&g, &rat_ideal(4)).unwrap(), 0.0);
    }

    #[test]
    fn ramanujan_examples() {
        let report = validate_ramanujan(&delta_table(&[(2, -24), (3, 252)]));
        assert!(report.pass && !report.vacuous);
        assert!((report.rows[0].bound - 90.50966799187809).abs() < 1e-9);

        let report = validate_ramanujan(&delta_table(&[(2, 1000)]));
        assert!(!report.pass);
        assert_eq!(report.failures().next().unwrap().prime.p, 2);

        let report = validate_ramanujan(&delta_table(&[]));
        assert!(report.pass && report.vacuous);
    }
}
