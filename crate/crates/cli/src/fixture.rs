//! The `hml-fixture/1` eigenvalue file.
//!
//! ```text
//! # format: hml-fixture/1
//! # field_disc: 5
//! # weights: 2,2
//! # level_norm: 11
//! # level: 11.0
//! # label: example
//! # cm_flag: false
//! residue_char	index	prime_norm	eigenvalue
//! 2	0	4	-3
//! ```
//!
//! Header keys are `#`-prefixed, the first plain line names the columns and
//! each further line is one good prime. Eigenvalues are exact rationals.

use std::fmt::Write as _;
use std::str::FromStr;

use hsign_core::forms::{validate_ramanujan, EigenPrimeTable, WeightData};
use hsign_core::{Field, Ideal, Rational};

use crate::error::CliError;

pub const FORMAT_VERSION: &str = "hml-fixture/1";
const COLUMNS: [&str; 4] = ["residue_char", "index", "prime_norm", "eigenvalue"];

#[derive(Debug, Clone, PartialEq)]
pub struct Fixture {
    pub label: String,
    pub table: EigenPrimeTable,
}

impl Fixture {
    pub fn new(label: impl Into<String>, table: EigenPrimeTable) -> Self {
        Fixture {
            label: label.into(),
            table,
        }
    }

    /// Parse without the Ramanujan gate.
    pub fn parse_unchecked(text: &str) -> Result<Fixture, CliError> {
        let mut keys: Vec<(String, String)> = Vec::new();
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let mut column_line = None;
        for (no, line) in lines.by_ref() {
            if let Some(rest) = line.strip_prefix('#') {
                let (k, v) = rest
                    .split_once(':')
                    .ok_or_else(|| bad(no, format!("header line without ':': {line:?}")))?;
                keys.push((k.trim().to_string(), v.trim().to_string()));
            } else {
                column_line = Some((no, line));
                break;
            }
        }
        let key = |name: &str| -> Result<&str, CliError> {
            keys.iter()
                .find(|(k, _)| k == name)
                .map(|(_, v)| v.as_str())
                .ok_or_else(|| CliError::Input(format!("fixture header is missing `{name}`")))
        };

        let format = key("format")?;
        if format != FORMAT_VERSION {
            return Err(CliError::Input(format!("unsupported fixture format {format:?}")));
        }
        let disc: i64 = parse_value(key("field_disc")?, "field_disc")?;
        let field = Field::from_disc(disc)?;
        let weights: Vec<u32> = key("weights")?
            .split(',')
            .map(|w| parse_value(w.trim(), "weights"))
            .collect::<Result<_, _>>()?;
        let level = Ideal::parse(&field, key("level")?)?;
        let level_norm: u64 = parse_value(key("level_norm")?, "level_norm")?;
        if level.norm() != level_norm {
            return Err(CliError::Input(format!(
                "level {level} has norm {}, header says {level_norm}",
                level.norm()
            )));
        }
        let label = key("label")?.to_string();
        let cm_flag = match key("cm_flag")? {
            "true" => true,
            "false" => false,
            other => return Err(CliError::Input(format!("cm_flag must be true or false, got {other:?}"))),
        };
        let mut table = EigenPrimeTable::new(field, WeightData::new(weights)?, level, cm_flag)?;

        let Some((no, header)) = column_line else {
            return Ok(Fixture { label, table });
        };
        let names: Vec<&str> = header.split('\t').map(str::trim).collect();
        if names != COLUMNS {
            return Err(bad(no, format!("expected columns {COLUMNS:?}, got {names:?}")));
        }
        for (no, line) in lines {
            if line.starts_with('#') {
                continue;
            }
            let cells: Vec<&str> = line.split('\t').map(str::trim).collect();
            if cells.len() != 4 {
                return Err(bad(no, format!("expected 4 tab-separated cells, got {}", cells.len())));
            }
            let p: u64 = parse_value(cells[0], "residue_char")?;
            let index: u8 = parse_value(cells[1], "index")?;
            let norm: u64 = parse_value(cells[2], "prime_norm")?;
            let value = Rational::from_str(cells[3])
                .map_err(|_| bad(no, format!("eigenvalue {:?} is not a rational", cells[3])))?;
            let prime = field
                .split_prime(p)
                .map_err(|e| bad(no, e.to_string()))?
                .into_iter()
                .find(|q| q.index == index)
                .ok_or_else(|| bad(no, format!("no prime with index {index} above {p} in {field}")))?;
            if prime.norm != norm {
                return Err(bad(no, format!("prime {prime} has norm {}, row says {norm}", prime.norm)));
            }
            if table.get(&prime).is_some() {
                return Err(bad(no, format!("prime {prime} listed twice")));
            }
            table.insert(prime, value).map_err(|e| bad(no, e.to_string()))?;
        }
        Ok(Fixture { label, table })
    }

    /// Parse and, unless `allow_unchecked`, require |beta(P)| <= 2 everywhere.
    pub fn parse(text: &str, allow_unchecked: bool) -> Result<Fixture, CliError> {
        let fixture = Fixture::parse_unchecked(text)?;
        if !allow_unchecked {
            let report = validate_ramanujan(&fixture.table);
            let first = report.failures().next().cloned();
            if let Some(row) = first {
                return Err(CliError::Hypothesis(format!(
                    "fixture {:?}: eigenvalue {} at prime {} exceeds the Ramanujan bound (|beta| = {:.6} > 2)",
                    fixture.label,
                    row.coeff,
                    row.prime,
                    row.beta.abs()
                )));
            }
        }
        Ok(fixture)
    }

    pub fn load(path: &std::path::Path, allow_unchecked: bool) -> Result<Fixture, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        Fixture::parse(&text, allow_unchecked)
    }

    pub fn to_text(&self) -> String {
        let t = &self.table;
        let weights: Vec<String> = t.weight().weights().iter().map(u32::to_string).collect();
        let mut out = String::new();
        writeln!(out, "# format: {FORMAT_VERSION}").unwrap();
        writeln!(out, "# field_disc: {}", t.field().disc()).unwrap();
        writeln!(out, "# weights: {}", weights.join(",")).unwrap();
        writeln!(out, "# level_norm: {}", t.level().norm()).unwrap();
        writeln!(out, "# level: {}", t.level()).unwrap();
        writeln!(out, "# label: {}", self.label).unwrap();
        writeln!(out, "# cm_flag: {}", t.cm_flag()).unwrap();
        writeln!(out, "{}", COLUMNS.join("\t")).unwrap();
        for (prime, value) in t.entries() {
            writeln!(out, "{}\t{}\t{}\t{}", prime.p, prime.index, prime.norm, value).unwrap();
        }
        out
    }
}

fn bad(line: usize, msg: String) -> CliError {
    CliError::Input(format!("fixture line {}: {msg}", line + 1))
}

fn parse_value<T: FromStr>(s: &str, what: &str) -> Result<T, CliError> {
    s.parse()
        .map_err(|_| CliError::Input(format!("bad value {s:?} for {what}")))
}
