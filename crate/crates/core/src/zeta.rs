//! Dedekind zeta coefficients, optionally restricted to ideals coprime to a
//! fixed ideal, and truncated evaluation with an explicit tail bound.

use thiserror::Error;

use crate::arith;
use crate::quadfield::{Field, Ideal, PrimeIdeal, SplitType};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ZetaError {
    #[error("series diverges at s = {0}; need s > 1")]
    Divergent(f64),
    #[error("restriction ideal lives over a different field")]
    FieldMismatch,
}

/// Number of integral ideals of norm `n`.
pub fn zeta_coeff(field: &Field, n: u64) -> u64 {
    assert!(n >= 1);
    local_product(field, &arith::factor(n), None)
}

/// Number of integral ideals of norm `n` coprime to `c`.
pub fn zeta_coeff_coprime(field: &Field, n: u64, c: &Ideal) -> u64 {
    assert!(n >= 1);
    local_product(field, &arith::factor(n), Some(c))
}

/// `sum_{d | n} (disc | d)`; the divisor-character route to `zeta_coeff`.
pub fn kronecker_divisor_sum(field: &Field, n: u64) -> i64 {
    arith::divisors(n).into_iter().map(|d| field.kronecker(d) as i64).sum()
}

fn local_product(field: &Field, fac: &[(u64, u32)], c: Option<&Ideal>) -> u64 {
    let excluded = |q: &PrimeIdeal| c.is_some_and(|c| c.valuation(q) > 0);
    let mut count = 1u64;
    for &(p, e) in fac {
        let primes = field
            .split_prime(p)
            .expect("factorisation yields primes");
        let local = match primes[0].split {
            SplitType::Split => match (excluded(&primes[0]), excluded(&primes[1])) {
                (false, false) => e as u64 + 1,
                (true, true) => 0,
                _ => 1,
            },
            SplitType::Inert if e % 2 == 1 || excluded(&primes[0]) => 0,
            SplitType::Inert => 1,
            SplitType::Ramified if excluded(&primes[0]) => 0,
            SplitType::Ramified => 1,
        };
        count *= local;
        if count == 0 {
            break;
        }
    }
    count
}

/// `prod_{P | c} (1 - N(P)^{-s})`.
pub fn euler_factor(c: &Ideal, s: f64) -> f64 {
    c.factors()
        .keys()
        .map(|q| 1.0 - (q.norm as f64).powf(-s))
        .product()
}

/// Coefficient table a_n (or a_n(c)) for n up to a bound.
///
/// The table only grows; extending it computes just the new range.
#[derive(Debug, Clone)]
pub struct ZetaCoefficients {
    field: Field,
    restriction: Option<Ideal>,
    values: Vec<u64>,
}

impl ZetaCoefficients {
    pub fn new(field: Field, restriction: Option<Ideal>) -> Result<Self, ZetaError> {
        if restriction.as_ref().is_some_and(|c| c.field() != field) {
            return Err(ZetaError::FieldMismatch);
        }
        Ok(ZetaCoefficients {
            field,
            restriction,
            values: vec![0],
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn restriction(&self) -> Option<&Ideal> {
        self.restriction.as_ref()
    }

    pub fn bound(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    pub fn extend_to(&mut self, bound: u64) {
        let old = self.bound();
        if bound <= old {
            return;
        }
        let sieve = arith::SpfSieve::new(bound);
        for n in old + 1..=bound {
            let a = local_product(&self.field, &sieve.factor(n), self.restriction.as_ref());
            self.values.push(a);
        }
    }

    pub fn get(&self, n: u64) -> Option<u64> {
        if n == 0 {
            return None;
        }
        self.values.get(n as usize).copied()
    }

    /// Slice indexed by n; entry 0 is unused and zero.
    pub fn as_slice(&self) -> &[u64] {
        &self.values
    }
}

/// A truncated Dirichlet series value together with a bound on the omitted tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialSum {
    pub value: f64,
    pub tail_bound: f64,
    pub terms: u64,
}

/// Upper bound on `sum_{n > N} a_n n^{-s}` for the zeta coefficients of a
/// field of degree at most two.
///
/// Over Q a_n = 1. For quadratic fields a_n <= d(n) and
/// `sum_{n <= x} d(n) <= x (ln x + 1)`; partial summation then gives
/// `s N^{1-s} ((ln N + 1)/(s-1) + 1/(s-1)^2)`.
pub fn zeta_tail_bound(field: &Field, s: f64, n: u64) -> f64 {
    let nf = n.max(1) as f64;
    let head = nf.powf(1.0 - s);
    if field.is_rational() {
        head / (s - 1.0)
    } else {
        s * head * ((nf.ln() + 1.0) / (s - 1.0) + 1.0 / ((s - 1.0) * (s - 1.0)))
    }
}

/// `sum_{n <= N} a_n / n^s` for real s > 1.
pub fn zeta_partial(field: &Field, s: f64, n: u64) -> Result<PartialSum, ZetaError> {
    let mut table = ZetaCoefficients::new(*field, None)?;
    table.extend_to(n);
    partial_from_table(&table, s)
}

/// `sum_{n <= N} a_n(c) / n^s` for real s > 1.
pub fn zeta_partial_coprime(
    field: &Field,
    s: f64,
    n: u64,
    c: &Ideal,
) -> Result<PartialSum, ZetaError> {
    let mut table = ZetaCoefficients::new(*field, Some(c.clone()))?;
    table.extend_to(n);
    partial_from_table(&table, s)
}

/// Truncated evaluation over an existing coefficient table (all of it).
pub fn partial_from_table(table: &ZetaCoefficients, s: f64) -> Result<PartialSum, ZetaError> {
    if !(s > 1.0) {
        return Err(ZetaError::Divergent(s));
    }
    let n = table.bound();
    // smallest terms first
    let value = (1..=n)
        .rev()
        .map(|k| table.values[k as usize] as f64 * (k as f64).powf(-s))
        .sum();
    Ok(PartialSum {
        value,
        tail_bound: zeta_tail_bound(&table.field, s, n),
        terms: n,
    })
}
