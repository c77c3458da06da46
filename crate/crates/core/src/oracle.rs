//! Level-one modular forms over Q as exact q-expansions: Delta from the eta
//! product, the Eisenstein series E4 and their product, the weight 16 cusp
//! eigenform. Also random eigenvalue tables that respect the Ramanujan bound.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arith;
use crate::forms::{EigenPrimeTable, FormsError, Rational, WeightData};
use crate::quadfield::{Field, Ideal};

/// Default truncation for bundled series.
pub const DEFAULT_PRECISION: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("series known to q^{have}, need q^{need}")]
    Precision { have: usize, need: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Forms(#[from] FormsError),
}

/// Exact integer power series `c(0) + c(1) q + ... + c(N) q^N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigInt>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least c(0)");
        PowerSeries { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        PowerSeries::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Option<&BigInt> {
        self.coeffs.get(n)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn truncate(&self, n: usize) -> PowerSeries {
        PowerSeries::new(self.coeffs[..=n.min(self.precision())].to_vec())
    }

    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.precision().min(other.precision());
        PowerSeries::new((0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect())
    }

    /// Multiply by q^k, dropping what falls past the precision.
    pub fn shift(&self, k: usize) -> PowerSeries {
        let n = self.precision();
        let mut coeffs = vec![BigInt::zero(); k.min(n + 1)];
        coeffs.extend(self.coeffs.iter().take(n + 1 - coeffs.len()).cloned());
        PowerSeries::new(coeffs)
    }

    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.precision().min(other.precision());
        if let Some(out) = mul_limb_planes(&self.coeffs[..=n], &other.coeffs[..=n])
            .or_else(|| mul_limb_planes(&other.coeffs[..=n], &self.coeffs[..=n]))
        {
            return PowerSeries::new(out);
        }
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PowerSeries::new(out)
    }

    /// `self^e` by the J.C.P. Miller recurrence, which needs c(0) = +-1 and
    /// costs one pass over the nonzero coefficients per output term.
    pub fn pow(&self, e: u32) -> PowerSeries {
        let n = self.precision();
        let a0 = &self.coeffs[0];
        if e == 0 {
            let mut one = vec![BigInt::zero(); n + 1];
            one[0] = BigInt::one();
            return PowerSeries::new(one);
        }
        if !a0.abs().is_one() {
            let mut acc = self.clone();
            for _ in 1..e {
                acc = acc.mul(self);
            }
            return acc;
        }
        let support: Vec<(usize, &BigInt)> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let e = e as i64;
        let mut b: Vec<BigInt> = Vec::with_capacity(n + 1);
        b.push(num_traits::pow(a0.clone(), e as usize));
        for m in 1..=n {
            let mut acc = BigInt::zero();
            for &(k, a_k) in &support {
                if k > m {
                    break;
                }
                let w = (e + 1) * k as i64 - m as i64;
                if w != 0 {
                    acc += a_k * &b[m - k] * w;
                }
            }
            // exact: b has integer coefficients and a0 = +-1
            b.push(acc / (a0 * BigInt::from(m)));
        }
        PowerSeries::new(b)
    }
}

/// Schoolbook product with `a` in i128 and `b` split into two 50-bit planes,
/// used when |a| < 2^50 and |b| < 2^100 so no partial sum can overflow.
fn mul_limb_planes(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    const BITS: u32 = 50;
    let n = a.len() - 1;
    if n >= 1 << 20 {
        return None;
    }
    let small: Vec<i128> = a
        .iter()
        .map(|c| c.to_i128().filter(|v| v.unsigned_abs() < 1 << BITS))
        .collect::<Option<_>>()?;
    let mask = (1i128 << BITS) - 1;
    let mut lo = Vec::with_capacity(n + 1);
    let mut hi = Vec::with_capacity(n + 1);
    for c in b {
        let v = c.to_i128().filter(|v| v.unsigned_abs() < 1 << (2 * BITS))?;
        lo.push(v & mask);
        hi.push(v >> BITS);
    }
    let mut out = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let (mut s_lo, mut s_hi) = (0i128, 0i128);
        for i in 0..=m {
            let x = small[i];
            if x != 0 {
                s_lo += x * lo[m - i];
                s_hi += x * hi[m - i];
            }
        }
        out.push((BigInt::from(s_hi) << BITS) + BigInt::from(s_lo));
    }
    Some(out)
}

/// `prod_{n >= 1} (1 - q^n)` from Euler's pentagonal number theorem.
pub fn euler_product(n: usize) -> PowerSeries {
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[0] = BigInt::one();
    for k in 1i64.. {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let p1 = (k * (3 * k - 1) / 2) as usize;
        let p2 = (k * (3 * k + 1) / 2) as usize;
        if p1 > n {
            break;
        }
        coeffs[p1] += sign;
        if p2 <= n {
            coeffs[p2] += sign;
        }
    }
    PowerSeries::new(coeffs)
}

/// `q prod (1 - q^n)^24` to q^N; the coefficients are Ramanujan's tau(n).
pub fn delta_series(n: usize) -> PowerSeries {
    assert!(n >= 1);
    euler_product(n).pow(24).shift(1)
}

/// `1 + 240 sum sigma_3(n) q^n` to q^N.
pub fn e4_series(n: usize) -> PowerSeries {
    assert!(n >= 1);
    let mut sigma = vec![0u64; n + 1];
    for d in 1..=n {
        let cube = (d as u64).pow(3);
        for m in (d..=n).step_by(d) {
            sigma[m] += cube;
        }
    }
    let mut coeffs: Vec<BigInt> = sigma.iter().map(|&s| BigInt::from(s) * 240).collect();
    coeffs[0] = BigInt::one();
    PowerSeries::new(coeffs)
}

/// E4 Delta, the normalized level one cusp eigenform of weight 16.
pub fn weight16_series(n: usize) -> PowerSeries {
    e4_series(n).mul(&delta_series(n))
}

/// Eigenvalues at the primes p <= prime_bound read off a level-one
/// eigenform's q-expansion.
pub fn export_fixture(series: &PowerSeries, weight: u32, prime_bound: u64) -> Result<EigenPrimeTable, OracleError> {
    if (series.precision() as u64) < prime_bound {
        return Err(OracleError::Precision {
            have: series.precision(),
            need: prime_bound as usize,
        });
    }
    let field = Field::rational();
    let mut table = EigenPrimeTable::new(field, WeightData::new(vec![weight])?, field.unit_ideal(), false)?;
    for prime in field.primes_up_to(prime_bound) {
        let c = series.coeffs[prime.p as usize].clone();
        table.insert(prime, Rational::from_integer(c))?;
    }
    Ok(table)
}

/// Random eigenvalues C(P) at the good primes of norm <= prime_bound,
/// integers with |C(P)| <= 2 N(P)^{(k0-1)/2}. Deterministic in `seed`.
pub fn synthetic_table(
    field: Field,
    weight: WeightData,
    level: Ideal,
    prime_bound: u64,
    seed: u64,
) -> Result<EigenPrimeTable, OracleError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k0 = weight.k0();
    let mut table = EigenPrimeTable::new(field, weight, level.clone(), false)?;
    for prime in field.primes_up_to(prime_bound) {
        if level.valuation(&prime) > 0 {
            continue;
        }
        // B = floor(sqrt(4 N^{k0-1})), then C = floor-ish(u B) for u in (-1, 1)
        let bound: BigInt = (num_traits::pow(BigInt::from(prime.norm), (k0 - 1) as usize) * 4u32).sqrt();
        let u: i64 = rng.random_range(-(1i64 << 53)..=(1i64 << 53));
        let c = bound * u / (BigInt::one() << 53);
        table.insert(prime, Rational::from_integer(c))?;
    }
    Ok(table)
}

/// Primes up to `bound`, for callers that only need the rational field.
pub fn rational_primes(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&p| arith::is_prime(p)).collect()
}
