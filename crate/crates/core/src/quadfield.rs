//! Base fields of degree at most two and their integral ideals.
//!
//! Ideals are stored purely by prime factorisation. That is enough for every
//! coefficient computation in this crate and never needs the class group.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::arith;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadError {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("ideals live over different fields (disc {0} vs {1})")]
    FieldMismatch(i64, i64),
    #[error("quotient is not an integral ideal")]
    NotIntegral,
    #[error("ideal norm overflows u64")]
    NormOverflow,
    #[error("invalid ideal spec {spec:?}: {reason}")]
    InvalidIdealSpec { spec: String, reason: String },
}

/// A totally real base field: the rationals or a real quadratic field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Field {
    degree: u8,
    disc: i64,
}

impl Field {
    pub fn rational() -> Self {
        Field { degree: 1, disc: 1 }
    }

    /// Q(sqrt d) for squarefree d > 1.
    pub fn quadratic(d: i64) -> Result<Self, QuadError> {
        if d <= 1 {
            return Err(QuadError::InvalidField(format!(
                "d = {d}; need squarefree d > 1 (use Field::rational for Q)"
            )));
        }
        if !arith::is_squarefree(d as u64) {
            return Err(QuadError::InvalidField(format!("d = {d} is not squarefree")));
        }
        let disc = if d % 4 == 1 { d } else { 4 * d };
        Ok(Field { degree: 2, disc })
    }

    /// Field with the given fundamental discriminant; 1 gives Q.
    pub fn from_disc(disc: i64) -> Result<Self, QuadError> {
        if disc == 1 {
            return Ok(Field::rational());
        }
        if disc <= 1 {
            return Err(QuadError::InvalidField(format!(
                "disc {disc} is not a positive fundamental discriminant"
            )));
        }
        let d = match disc.rem_euclid(16) {
            r if r % 4 == 1 => disc,
            8 | 12 => disc / 4,
            _ => {
                return Err(QuadError::InvalidField(format!(
                    "disc {disc} is not a fundamental discriminant"
                )))
            }
        };
        let field = Field::quadratic(d)?;
        if field.disc != disc {
            return Err(QuadError::InvalidField(format!(
                "disc {disc} is not a fundamental discriminant"
            )));
        }
        Ok(field)
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn disc(&self) -> i64 {
        self.disc
    }

    pub fn is_rational(&self) -> bool {
        self.degree == 1
    }

    /// Kronecker symbol (disc | n); identically 1 over Q.
    pub fn kronecker(&self, n: u64) -> i8 {
        if self.is_rational() {
            1
        } else {
            arith::kronecker(self.disc, n)
        }
    }

    fn split_type_unchecked(&self, p: u64) -> SplitType {
        if self.is_rational() {
            return SplitType::Ramified;
        }
        match self.kronecker(p) {
            1 => SplitType::Split,
            -1 => SplitType::Inert,
            _ => SplitType::Ramified,
        }
    }

    /// Primes of the ring of integers lying above the rational prime `p`.
    ///
    /// Over Q the single prime is tagged `Ramified` (norm p, one prime); only
    /// the norm and multiplicity matter downstream.
    pub fn split_prime(&self, p: u64) -> Result<Vec<PrimeIdeal>, QuadError> {
        if !arith::is_prime(p) {
            return Err(QuadError::NotPrime(p));
        }
        Ok(self.primes_above(p))
    }

    fn primes_above(&self, p: u64) -> Vec<PrimeIdeal> {
        match self.split_type_unchecked(p) {
            SplitType::Split => vec![
                PrimeIdeal::new(p, 0, SplitType::Split),
                PrimeIdeal::new(p, 1, SplitType::Split),
            ],
            t => vec![PrimeIdeal::new(p, 0, t)],
        }
    }

    pub fn unit_ideal(&self) -> Ideal {
        Ideal {
            norm: 1,
            field: *self,
            factors: BTreeMap::new(),
        }
    }

    pub fn prime_ideal(&self, prime: PrimeIdeal) -> Ideal {
        let mut factors = BTreeMap::new();
        let norm = prime.norm;
        factors.insert(prime, 1);
        Ideal {
            norm,
            field: *self,
            factors,
        }
    }

    /// All integral ideals of norm exactly `n`, in canonical order.
    pub fn ideals_of_norm(&self, n: u64) -> Vec<Ideal> {
        assert!(n >= 1, "ideal norms are positive");
        self.ideals_from_factorisation(n, &arith::factor(n))
    }

    fn ideals_from_factorisation(&self, n: u64, fac: &[(u64, u32)]) -> Vec<Ideal> {
        let mut partial: Vec<BTreeMap<PrimeIdeal, u32>> = vec![BTreeMap::new()];
        for &(p, e) in fac {
            let options = self.local_options(p, e);
            if options.is_empty() {
                return Vec::new();
            }
            let mut next = Vec::with_capacity(partial.len() * options.len());
            for base in &partial {
                for opt in &options {
                    let mut m = base.clone();
                    for &(prime, k) in opt {
                        m.insert(prime, k);
                    }
                    next.push(m);
                }
            }
            partial = next;
        }
        let mut out: Vec<Ideal> = partial
            .into_iter()
            .map(|factors| Ideal {
                norm: n,
                field: *self,
                factors,
            })
            .collect();
        out.sort();
        out
    }

    /// Ways to realise norm p^e from the primes above p.
    fn local_options(&self, p: u64, e: u32) -> Vec<Vec<(PrimeIdeal, u32)>> {
        let primes = self.primes_above(p);
        match primes[0].split {
            SplitType::Split => (0..=e)
                .map(|a| {
                    let mut v = Vec::new();
                    if a > 0 {
                        v.push((primes[0], a));
                    }
                    if e - a > 0 {
                        v.push((primes[1], e - a));
                    }
                    v
                })
                .collect(),
            SplitType::Inert if e % 2 == 1 => Vec::new(),
            SplitType::Inert => vec![vec![(primes[0], e / 2)]],
            SplitType::Ramified => vec![vec![(primes[0], e)]],
        }
    }

    /// All integral ideals of norm at most `bound`, ordered by norm.
    pub fn ideals_up_to(&self, bound: u64) -> Vec<Ideal> {
        let sieve = arith::SpfSieve::new(bound.max(1));
        let mut out = Vec::new();
        for n in 1..=bound {
            out.extend(self.ideals_from_factorisation(n, &sieve.factor(n)));
        }
        out
    }

    /// Prime ideals of norm at most `bound`, ordered by norm.
    pub fn primes_up_to(&self, bound: u64) -> Vec<PrimeIdeal> {
        let mut out: Vec<PrimeIdeal> = (2..=bound)
            .filter(|&p| arith::is_prime(p))
            .flat_map(|p| self.primes_above(p))
            .filter(|q| q.norm <= bound)
            .collect();
        out.sort_by_key(|q| (q.norm, q.p, q.index));
        out
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "Q")
        } else {
            let d = if self.disc % 4 == 0 { self.disc / 4 } else { self.disc };
            write!(f, "Q(sqrt {d})")
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SplitType {
    Split,
    Inert,
    Ramified,
}

/// A prime ideal, identified by its residue characteristic and an index.
///
/// The index only separates the two primes above a split p. It is a stable
/// label, not tied to any embedding of the field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeIdeal {
    pub p: u64,
    pub index: u8,
    pub norm: u64,
    pub split: SplitType,
}

impl PrimeIdeal {
    fn new(p: u64, index: u8, split: SplitType) -> Self {
        let norm = if split == SplitType::Inert { p * p } else { p };
        PrimeIdeal {
            p,
            index,
            norm,
            split,
        }
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.split == SplitType::Split {
            write!(f, "{}.{}", self.p, self.index)
        } else {
            write!(f, "{}", self.p)
        }
    }
}

/// An integral ideal in factored form. Ordered by norm first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal {
    norm: u64,
    field: Field,
    factors: BTreeMap<PrimeIdeal, u32>,
}

impl Ideal {
    pub fn norm(&self) -> u64 {
        self.norm
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn factors(&self) -> &BTreeMap<PrimeIdeal, u32> {
        &self.factors
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn valuation(&self, prime: &PrimeIdeal) -> u32 {
        self.factors.get(prime).copied().unwrap_or(0)
    }

    fn same_field(&self, other: &Ideal) -> Result<(), QuadError> {
        if self.field != other.field {
            Err(QuadError::FieldMismatch(self.field.disc, other.field.disc))
        } else {
            Ok(())
        }
    }

    fn from_factors(field: Field, factors: BTreeMap<PrimeIdeal, u32>) -> Result<Self, QuadError> {
        let mut norm: u64 = 1;
        for (q, &e) in &factors {
            let pe = q.norm.checked_pow(e).ok_or(QuadError::NormOverflow)?;
            norm = norm.checked_mul(pe).ok_or(QuadError::NormOverflow)?;
        }
        Ok(Ideal {
            norm,
            field,
            factors,
        })
    }

    pub fn mul(&self, other: &Ideal) -> Result<Ideal, QuadError> {
        self.same_field(other)?;
        let mut factors = self.factors.clone();
        for (q, e) in &other.factors {
            *factors.entry(*q).or_insert(0) += e;
        }
        Ideal::from_factors(self.field, factors)
    }

    pub fn pow(&self, k: u32) -> Result<Ideal, QuadError> {
        let factors = self.factors.iter().map(|(q, e)| (*q, e * k)).filter(|(_, e)| *e > 0).collect();
        Ideal::from_factors(self.field, factors)
    }

    /// `self / other`, or `NotIntegral` when `other` does not divide `self`.
    pub fn divide_exact(&self, other: &Ideal) -> Result<Ideal, QuadError> {
        self.same_field(other)?;
        let mut factors = self.factors.clone();
        for (q, e) in &other.factors {
            match factors.get_mut(q) {
                Some(have) if *have > *e => *have -= e,
                Some(have) if *have == *e => {
                    factors.remove(q);
                }
                _ => return Err(QuadError::NotIntegral),
            }
        }
        let norm = self.norm / other.norm;
        Ok(Ideal {
            norm,
            field: self.field,
            factors,
        })
    }

    pub fn divides(&self, other: &Ideal) -> bool {
        self.field == other.field
            && self.factors.iter().all(|(q, e)| other.valuation(q) >= *e)
    }

    pub fn gcd(&self, other: &Ideal) -> Result<Ideal, QuadError> {
        self.same_field(other)?;
        let factors = self
            .factors
            .iter()
            .filter_map(|(q, e)| {
                let m = (*e).min(other.valuation(q));
                (m > 0).then_some((*q, m))
            })
            .collect();
        Ideal::from_factors(self.field, factors)
    }

    pub fn lcm(&self, other: &Ideal) -> Result<Ideal, QuadError> {
        self.same_field(other)?;
        let mut factors = self.factors.clone();
        for (q, e) in &other.factors {
            let slot = factors.entry(*q).or_insert(0);
            *slot = (*slot).max(*e);
        }
        Ideal::from_factors(self.field, factors)
    }

    pub fn coprime(&self, other: &Ideal) -> Result<bool, QuadError> {
        self.same_field(other)?;
        Ok(self.is_coprime_to(other))
    }

    /// Coprimality without the field check; for internal hot loops.
    pub(crate) fn is_coprime_to(&self, other: &Ideal) -> bool {
        let (small, large) = if self.factors.len() <= other.factors.len() {
            (self, other)
        } else {
            (other, self)
        };
        small.factors.keys().all(|q| !large.factors.contains_key(q))
    }

    /// Product of the distinct primes dividing this ideal.
    pub fn radical(&self) -> Ideal {
        let factors = self.factors.keys().map(|q| (*q, 1)).collect();
        Ideal::from_factors(self.field, factors).expect("radical norm divides the norm")
    }

    /// Number of integral ideals dividing this one.
    pub fn divisor_count(&self) -> u64 {
        self.factors.values().map(|&e| e as u64 + 1).product()
    }

    /// Every integral divisor, ordered by norm.
    pub fn divisors(&self) -> Vec<Ideal> {
        let mut out = vec![self.field.unit_ideal()];
        for (q, &e) in &self.factors {
            let len = out.len();
            for k in 1..=e {
                for i in 0..len {
                    let mut factors = out[i].factors.clone();
                    factors.insert(*q, k);
                    let norm = out[i].norm * q.norm.pow(k);
                    out.push(Ideal {
                        norm,
                        field: self.field,
                        factors,
                    });
                }
            }
        }
        out.sort();
        out
    }

    /// Parse `1`, `p`, `p.i`, `p^e` and `*`-joined products of those.
    ///
    /// A bare `p` must name the unique prime above p.
    pub fn parse(field: &Field, spec: &str) -> Result<Ideal, QuadError> {
        let bad = |reason: String| QuadError::InvalidIdealSpec {
            spec: spec.to_string(),
            reason,
        };
        let trimmed = spec.trim();
        if trimmed == "1" {
            return Ok(field.unit_ideal());
        }
        let mut ideal = field.unit_ideal();
        for token in trimmed.split('*') {
            let token = token.trim();
            let (base, exp) = match token.split_once('^') {
                Some((b, e)) => (
                    b,
                    e.parse::<u32>().map_err(|_| bad(format!("bad exponent in {token:?}")))?,
                ),
                None => (token, 1),
            };
            let (p_str, idx) = match base.split_once('.') {
                Some((p, i)) => (
                    p,
                    Some(i.parse::<u8>().map_err(|_| bad(format!("bad index in {token:?}")))?),
                ),
                None => (base, None),
            };
            let p: u64 = p_str.parse().map_err(|_| bad(format!("bad prime in {token:?}")))?;
            let primes = field.split_prime(p).map_err(|e| bad(e.to_string()))?;
            let prime = match idx {
                None if primes.len() == 1 => primes[0],
                None => {
                    return Err(bad(format!(
                        "{p} splits; select a prime with {p}.0 or {p}.1"
                    )))
                }
                Some(i) => *primes
                    .iter()
                    .find(|q| q.index == i)
                    .ok_or_else(|| bad(format!("no prime with index {i} above {p}")))?,
            };
            ideal = ideal.mul(&field.prime_ideal(prime).pow(exp)?)?;
        }
        Ok(ideal)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (q, e) in &self.factors {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{q}")?;
            } else {
                write!(f, "{q}^{e}")?;
            }
        }
        Ok(())
    }
}
