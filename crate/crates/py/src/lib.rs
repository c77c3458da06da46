//! Python bindings. Rationals cross the boundary as `fractions.Fraction`,
//! ideals as `Ideal` objects or their string specs (`"11.1^2*2"`).

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use hsign_core::dirichlet::{self, DirichletPolynomial, Lambda, ZeroScan};
use hsign_core::forms::{self, CoefficientSystem, EigenPrimeTable, WeightData};
use hsign_core::satotate::{self, AngleClass, FormulaCount};
use hsign_core::{oracle, zeta, Field as CoreField, Ideal as CoreIdeal, Rational};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((r.to_string(),))
}

/// Accepts an int, a Fraction or a string such as "-3/7".
fn to_rational(value: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let text = value.str()?.to_string();
    Rational::from_str(text.trim()).map_err(|_| PyValueError::new_err(format!("not a rational: {text}")))
}

fn field_of(disc: i64) -> PyResult<CoreField> {
    CoreField::from_disc(disc).map_err(err)
}

#[pyclass(frozen, skip_from_py_object, module = "hsign")]
#[derive(Clone, Copy)]
struct Field {
    inner: CoreField,
}

#[pymethods]
impl Field {
    /// Fundamental discriminant of a real quadratic field, or 1 for Q.
    #[new]
    fn new(disc: i64) -> PyResult<Self> {
        Ok(Field { inner: field_of(disc)? })
    }

    #[getter]
    fn disc(&self) -> i64 {
        self.inner.disc()
    }

    #[getter]
    fn degree(&self) -> u8 {
        self.inner.degree()
    }

    fn ideal(&self, spec: &str) -> PyResult<Ideal> {
        Ok(Ideal {
            inner: CoreIdeal::parse(&self.inner, spec).map_err(err)?,
        })
    }

    fn unit_ideal(&self) -> Ideal {
        Ideal {
            inner: self.inner.unit_ideal(),
        }
    }

    /// Prime ideals of norm <= bound, as ideals.
    fn primes_up_to(&self, bound: u64) -> Vec<Ideal> {
        self.inner
            .primes_up_to(bound)
            .into_iter()
            .map(|p| Ideal {
                inner: self.inner.prime_ideal(p),
            })
            .collect()
    }

    fn ideals_up_to(&self, bound: u64) -> Vec<Ideal> {
        self.inner.ideals_up_to(bound).into_iter().map(|inner| Ideal { inner }).collect()
    }

    fn ideals_of_norm(&self, n: u64) -> Vec<Ideal> {
        self.inner.ideals_of_norm(n).into_iter().map(|inner| Ideal { inner }).collect()
    }

    fn __repr__(&self) -> String {
        format!("Field({})", self.inner.disc())
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

#[pyclass(frozen, from_py_object, module = "hsign")]
#[derive(Clone)]
struct Ideal {
    inner: CoreIdeal,
}

#[pymethods]
impl Ideal {
    #[getter]
    fn norm(&self) -> u64 {
        self.inner.norm()
    }

    fn is_unit(&self) -> bool {
        self.inner.is_unit()
    }

    fn divides(&self, other: &Ideal) -> bool {
        self.inner.divides(&other.inner)
    }

    fn coprime(&self, other: &Ideal) -> PyResult<bool> {
        self.inner.coprime(&other.inner).map_err(err)
    }

    fn gcd(&self, other: &Ideal) -> PyResult<Ideal> {
        Ok(Ideal {
            inner: self.inner.gcd(&other.inner).map_err(err)?,
        })
    }

    fn lcm(&self, other: &Ideal) -> PyResult<Ideal> {
        Ok(Ideal {
            inner: self.inner.lcm(&other.inner).map_err(err)?,
        })
    }

    fn __mul__(&self, other: &Ideal) -> PyResult<Ideal> {
        Ok(Ideal {
            inner: self.inner.mul(&other.inner).map_err(err)?,
        })
    }

    fn __pow__(&self, e: u32, _modulo: Option<u32>) -> PyResult<Ideal> {
        Ok(Ideal {
            inner: self.inner.pow(e).map_err(err)?,
        })
    }

    /// `[(prime, exponent), ...]` with primes as strings.
    fn factors(&self) -> Vec<(String, u32)> {
        self.inner.factors().iter().map(|(p, e)| (p.to_string(), *e)).collect()
    }

    fn divisors(&self) -> Vec<Ideal> {
        self.inner.divisors().into_iter().map(|inner| Ideal { inner }).collect()
    }

    fn __eq__(&self, other: &Ideal) -> bool {
        self.inner == other.inner
    }

    fn __lt__(&self, other: &Ideal) -> bool {
        self.inner < other.inner
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.inner.hash(&mut h);
        h.finish()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Ideal('{}')", self.inner)
    }
}

/// Eigenvalues C(P) at the good primes of one form.
#[pyclass(frozen, skip_from_py_object, module = "hsign")]
#[derive(Clone)]
struct EigenTable {
    inner: EigenPrimeTable,
}

#[pymethods]
impl EigenTable {
    #[new]
    #[pyo3(signature = (field, weights, level, eigenvalues, cm_flag=false))]
    fn new(
        field: &Field,
        weights: Vec<u32>,
        level: &Ideal,
        eigenvalues: Vec<(Ideal, Bound<'_, PyAny>)>,
        cm_flag: bool,
    ) -> PyResult<Self> {
        let weight = WeightData::new(weights).map_err(err)?;
        let mut table = EigenPrimeTable::new(field.inner, weight, level.inner.clone(), cm_flag).map_err(err)?;
        for (ideal, value) in eigenvalues {
            let fac = ideal.inner.factors();
            let prime = match fac.iter().next() {
                Some((p, 1)) if fac.len() == 1 => *p,
                _ => return Err(PyValueError::new_err(format!("{} is not a prime ideal", ideal.inner))),
            };
            table.insert(prime, to_rational(&value)?).map_err(err)?;
        }
        Ok(EigenTable { inner: table })
    }

    #[getter]
    fn field(&self) -> Field {
        Field {
            inner: *self.inner.field(),
        }
    }

    #[getter]
    fn weights(&self) -> Vec<u32> {
        self.inner.weight().weights().to_vec()
    }

    #[getter]
    fn level(&self) -> Ideal {
        Ideal {
            inner: self.inner.level().clone(),
        }
    }

    fn eigenvalues<'py>(&self, py: Python<'py>) -> PyResult<Vec<(String, Bound<'py, PyAny>)>> {
        self.inner
            .entries()
            .iter()
            .map(|(p, c)| Ok((p.to_string(), fraction(py, c)?)))
            .collect()
    }

    /// Primes where |beta(P)| > 2; empty when the Ramanujan bound holds.
    fn ramanujan_failures(&self) -> Vec<String> {
        forms::validate_ramanujan(&self.inner)
            .failures()
            .map(|r| r.prime.to_string())
            .collect()
    }

    /// Coefficients for every ideal of norm <= bound.
    fn system(&self, bound: u64) -> PyResult<System> {
        Ok(System {
            inner: forms::build_eigen_system(&self.inner, bound).map_err(err)?,
        })
    }

    fn __len__(&self) -> usize {
        self.inner.entries().len()
    }
}

/// Fourier coefficients C(m) for all ideals m of norm up to a bound.
#[pyclass(frozen, skip_from_py_object, module = "hsign")]
#[derive(Clone)]
struct System {
    inner: CoefficientSystem,
}

#[pymethods]
impl System {
    #[getter]
    fn bound(&self) -> u64 {
        self.inner.bound()
    }

    #[getter]
    fn weights(&self) -> Vec<u32> {
        self.inner.weight().weights().to_vec()
    }

    #[getter]
    fn level(&self) -> Ideal {
        Ideal {
            inner: self.inner.level().clone(),
        }
    }

    fn coeff<'py>(&self, py: Python<'py>, m: &Ideal) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.coeff(&m.inner).map_err(err)?)
    }

    /// Normalized coefficient C(m) / N(m)^{(k0-1)/2}.
    fn beta(&self, m: &Ideal) -> PyResult<f64> {
        forms::beta(&self.inner, &m.inner).map_err(err)
    }

    fn shift(&self, q: &Ideal) -> PyResult<System> {
        Ok(System {
            inner: forms::shift_by(&self.inner, &q.inner).map_err(err)?,
        })
    }

    fn u(&self, q: &Ideal) -> PyResult<System> {
        Ok(System {
            inner: forms::u_operator(&self.inner, &q.inner).map_err(err)?,
        })
    }

    /// f - shift(U(f)): zero at every multiple of q.
    fn kill(&self, q: &Ideal) -> PyResult<System> {
        Ok(System {
            inner: forms::kill_multiples(&self.inner, &q.inner).map_err(err)?,
        })
    }

    fn hecke_defect<'py>(&self, py: Python<'py>, m: &Ideal, n: &Ideal) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &forms::hecke_product_check(&self.inner, &m.inner, &n.inner).map_err(err)?)
    }
}

#[pyfunction]
fn delta_table(prime_bound: u64) -> PyResult<EigenTable> {
    let series = oracle::delta_series(prime_bound.max(1) as usize);
    Ok(EigenTable {
        inner: oracle::export_fixture(&series, 12, prime_bound).map_err(err)?,
    })
}

#[pyfunction]
fn weight16_table(prime_bound: u64) -> PyResult<EigenTable> {
    let series = oracle::weight16_series(prime_bound.max(1) as usize);
    Ok(EigenTable {
        inner: oracle::export_fixture(&series, 16, prime_bound).map_err(err)?,
    })
}

#[pyfunction]
#[pyo3(signature = (disc, weights, prime_bound, seed, level="1"))]
fn synthetic_table(disc: i64, weights: Vec<u32>, prime_bound: u64, seed: u64, level: &str) -> PyResult<EigenTable> {
    let field = field_of(disc)?;
    let level = CoreIdeal::parse(&field, level).map_err(err)?;
    let weight = WeightData::new(weights).map_err(err)?;
    Ok(EigenTable {
        inner: oracle::synthetic_table(field, weight, level, prime_bound, seed).map_err(err)?,
    })
}

/// q-expansion coefficients of Delta, n = 1..=n_max.
#[pyfunction]
fn delta_coefficients(n_max: usize) -> Vec<String> {
    oracle::delta_series(n_max + 1).coeffs()[1..=n_max].iter().map(|c| c.to_string()).collect()
}

#[pyfunction]
#[pyo3(signature = (disc, n, coprime_to=None))]
fn zeta_coeff(disc: i64, n: u64, coprime_to: Option<&str>) -> PyResult<u64> {
    let field = field_of(disc)?;
    Ok(match coprime_to {
        None => zeta::zeta_coeff(&field, n),
        Some(spec) => zeta::zeta_coeff_coprime(&field, n, &CoreIdeal::parse(&field, spec).map_err(err)?),
    })
}

#[pyfunction]
fn kronecker_divisor_sum(disc: i64, n: u64) -> PyResult<i64> {
    Ok(zeta::kronecker_divisor_sum(&field_of(disc)?, n))
}

/// `(value, tail_bound)` of the truncated zeta sum at real s > 1.
#[pyfunction]
#[pyo3(signature = (disc, s, terms, coprime_to=None))]
fn zeta_partial(disc: i64, s: f64, terms: u64, coprime_to: Option<&str>) -> PyResult<(f64, f64)> {
    let field = field_of(disc)?;
    let p = match coprime_to {
        None => zeta::zeta_partial(&field, s, terms),
        Some(spec) => zeta::zeta_partial_coprime(&field, s, terms, &CoreIdeal::parse(&field, spec).map_err(err)?),
    }
    .map_err(err)?;
    Ok((p.value, p.tail_bound))
}

#[pyfunction]
fn euler_factor(c: &Ideal, s: f64) -> f64 {
    zeta::euler_factor(&c.inner, s)
}

#[pyclass(frozen, skip_from_py_object, module = "hsign")]
#[derive(Clone, Copy)]
struct Angle {
    inner: AngleClass,
}

#[pymethods]
impl Angle {
    #[getter]
    fn alpha(&self) -> f64 {
        self.inner.alpha
    }

    /// "zero", "pi", "r/s" or "irrational".
    #[getter]
    fn kind(&self) -> String {
        self.inner.kind.to_string()
    }

    #[getter]
    fn period(&self) -> Option<u32> {
        self.inner.kind.period()
    }

    #[getter]
    fn exact(&self) -> bool {
        self.inner.exact
    }

    #[getter]
    fn residual(&self) -> f64 {
        self.inner.residual
    }

    fn __repr__(&self) -> String {
        format!("Angle({}, alpha={}, exact={})", self.inner.kind, self.inner.alpha, self.inner.exact)
    }
}

/// Exact class of a rational beta.
#[pyfunction]
fn classify(beta: &Bound<'_, PyAny>) -> PyResult<Angle> {
    Ok(Angle {
        inner: satotate::classify_exact(&to_rational(beta)?).map_err(err)?,
    })
}

/// Exact class of beta = C(P) / N(P)^{(k0-1)/2}.
#[pyfunction]
fn classify_eigenvalue(c_p: &Bound<'_, PyAny>, norm: u64, k0: u32) -> PyResult<Angle> {
    Ok(Angle {
        inner: satotate::classify_eigenvalue(&to_rational(c_p)?, norm, k0).map_err(err)?,
    })
}

#[pyfunction]
#[pyo3(signature = (beta, tol=1e-9, s_max=24))]
fn classify_real(beta: f64, tol: f64, s_max: u32) -> PyResult<Angle> {
    Ok(Angle {
        inner: satotate::classify_real(beta, tol, s_max).map_err(err)?,
    })
}

#[pyfunction]
fn beta_power_closed(alpha: f64, m: u64) -> f64 {
    satotate::beta_power_closed(alpha, m)
}

#[pyfunction]
fn beta_powers_recurrence(beta: f64, max_m: u64) -> Vec<f64> {
    satotate::beta_powers_recurrence(beta, max_m)
}

/// `(empirical, formula)` counts of m <= x with beta(P^m) != 0.
#[pyfunction]
fn nonvanishing_count(angle: &Angle, x: u64) -> (u64, u64) {
    let c = satotate::nonvanishing_count(&angle.inner, x);
    (c.empirical, c.formula)
}

#[pyfunction]
fn simultaneous_density<'py>(py: Python<'py>, f: &Angle, g: &Angle, x: u64) -> PyResult<Bound<'py, PyDict>> {
    let r = satotate::simultaneous_density(&f.inner, &g.inner, x);
    let (lo, hi) = match r.formula_count {
        FormulaCount::Point(v) => (v, v),
        FormulaCount::Interval { lo, hi } => (lo, hi),
    };
    let d = PyDict::new(py);
    d.set_item("case_id", r.case_id)?;
    d.set_item("x", r.x)?;
    d.set_item("nonzero_count", r.nonzero_count)?;
    d.set_item("formula_lo", lo)?;
    d.set_item("formula_hi", hi)?;
    d.set_item("lower_bound_density", (*r.lower_bound_density.numer(), *r.lower_bound_density.denom()))?;
    d.set_item("exact_density", (*r.exact_density.numer(), *r.exact_density.denom()))?;
    d.set_item("consistent", r.consistent())?;
    Ok(d)
}

/// Real zeros of `sum a_n n^{-s}` on [lo, hi]; None for the empty polynomial.
#[pyfunction]
#[pyo3(signature = (terms, lo, hi, grid=dirichlet::DEFAULT_GRID, tol=dirichlet::DEFAULT_ZERO_TOL))]
fn real_zero_scan(terms: Vec<(u64, f64)>, lo: f64, hi: f64, grid: usize, tol: f64) -> PyResult<Option<Vec<f64>>> {
    let p = DirichletPolynomial::new(terms).map_err(err)?;
    Ok(match dirichlet::real_zero_scan(&p, lo, hi, grid, tol).map_err(err)? {
        ZeroScan::IdenticallyZero => None,
        ZeroScan::Zeros(z) => Some(z),
    })
}

/// `(partial_sums, monotone)` for a constant-sign coefficient list a(1), a(2), ...
#[pyfunction]
fn landau_positivity_check(coeffs: Vec<f64>, alpha: f64) -> PyResult<(Vec<f64>, bool)> {
    let r = dirichlet::landau_positivity_check(&coeffs, alpha).map_err(err)?;
    Ok((r.partial_sums, r.monotone))
}

/// Truncated Rankin-Selberg series `sum_m b_m m^{-s}`.
#[pyclass(frozen, module = "hsign")]
struct RankinSeries {
    inner: dirichlet::RankinSeries,
    wf: WeightData,
    wg: WeightData,
}

#[pymethods]
impl RankinSeries {
    #[new]
    #[pyo3(signature = (f, g, terms, c=None))]
    fn new(f: &System, g: &System, terms: u64, c: Option<&Ideal>) -> PyResult<Self> {
        let c = match c {
            Some(c) => c.inner.clone(),
            None => f.inner.level().lcm(g.inner.level()).map_err(err)?,
        };
        let n = c.radical();
        Ok(RankinSeries {
            inner: dirichlet::rs_coefficients(&f.inner, &g.inner, &c, &n, terms).map_err(err)?,
            wf: f.inner.weight().clone(),
            wg: g.inner.weight().clone(),
        })
    }

    #[getter]
    fn terms(&self) -> u64 {
        self.inner.truncation()
    }

    fn coeff<'py>(&self, py: Python<'py>, m: u64) -> PyResult<Option<Bound<'py, PyAny>>> {
        self.inner.coeff(m).map(|b| fraction(py, b)).transpose()
    }

    fn eval(&self, s: f64) -> f64 {
        self.inner.eval(s)
    }

    /// Direct sum against the zeta-convolution path.
    fn convolution_check<'py>(&self, py: Python<'py>, f: &System, g: &System, s: f64) -> PyResult<Bound<'py, PyDict>> {
        let c = dirichlet::rs_convolution_check(&self.inner, &f.inner, &g.inner, s).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("direct", c.path_a)?;
        d.set_item("convolution", c.path_b)?;
        d.set_item("residual", c.residual)?;
        d.set_item("truncation_bound", c.truncation_bound)?;
        d.set_item("float_allowance", c.float_allowance)?;
        d.set_item("pass", c.pass)?;
        Ok(d)
    }

    /// Gamma factors times the truncated value; None at a pole.
    fn completed(&self, s: f64) -> PyResult<Option<f64>> {
        Ok(match dirichlet::completed_lambda(&self.wf, &self.wg, &self.inner, s).map_err(err)? {
            Lambda::Value { value, .. } => Some(value),
            Lambda::PoleAt { .. } => None,
        })
    }
}

#[pymodule]
fn hsign(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Field>()?;
    m.add_class::<Ideal>()?;
    m.add_class::<EigenTable>()?;
    m.add_class::<System>()?;
    m.add_class::<Angle>()?;
    m.add_class::<RankinSeries>()?;
    m.add_function(wrap_pyfunction!(delta_table, m)?)?;
    m.add_function(wrap_pyfunction!(weight16_table, m)?)?;
    m.add_function(wrap_pyfunction!(synthetic_table, m)?)?;
    m.add_function(wrap_pyfunction!(delta_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_coeff, m)?)?;
    m.add_function(wrap_pyfunction!(kronecker_divisor_sum, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_partial, m)?)?;
    m.add_function(wrap_pyfunction!(euler_factor, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(classify_eigenvalue, m)?)?;
    m.add_function(wrap_pyfunction!(classify_real, m)?)?;
    m.add_function(wrap_pyfunction!(beta_power_closed, m)?)?;
    m.add_function(wrap_pyfunction!(beta_powers_recurrence, m)?)?;
    m.add_function(wrap_pyfunction!(nonvanishing_count, m)?)?;
    m.add_function(wrap_pyfunction!(simultaneous_density, m)?)?;
    m.add_function(wrap_pyfunction!(real_zero_scan, m)?)?;
    m.add_function(wrap_pyfunction!(landau_positivity_check, m)?)?;
    Ok(())
}
