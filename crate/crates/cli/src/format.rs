//! Series documents and their JSON, CSV and text encodings.
//!
//! JSON:
//!
//! ```json
//! {"kind":"im1","surface":"k3","genus":1,"q_max":2,"euler":false,
//!  "coefficients":[{"q":0,"terms":[]},
//!                  {"q":1,"m":0,"terms":[{"i":0,"j":0,"c":"1"}, ...]}, ...]}
//! ```
//!
//! With `euler` set, each coefficient carries `"value": "<decimal>"` in place
//! of `terms`. Coefficients are decimal strings since they outgrow 64 bits.
//!
//! CSV has the header `q,m,i,j,c` (Hodge) or `q,m,value` (Euler); `m` is
//! empty where there is no moduli label. A zero Hodge coefficient is written
//! as the single row `q,m,0,0,0` so the truncation order survives.

use std::fmt::Write as _;
use std::str::FromStr;

use clap::ValueEnum;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use dtseries::formulas::moduli_index;
use dtseries::{BivariatePolynomial, TruncatedSeries};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    /// Hilbert schemes of points S^[m] (= I_{m,0}).
    Hilb,
    /// Incidence varieties S_{m,m+1}.
    Incidence,
    /// Moduli spaces I_{m,1} of the fibered 3-fold.
    Im1,
}

impl SeriesKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SeriesKind::Hilb => "hilb",
            SeriesKind::Incidence => "incidence",
            SeriesKind::Im1 => "im1",
        }
    }

    /// Moduli label of the coefficient of `q^index`.
    pub fn label(self, index: usize) -> Option<usize> {
        match self {
            SeriesKind::Hilb => Some(index),
            SeriesKind::Incidence | SeriesKind::Im1 => moduli_index(index),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Hodge(TruncatedSeries),
    Euler(Vec<BigInt>),
}

impl Coefficients {
    pub fn q_max(&self) -> usize {
        match self {
            Coefficients::Hodge(s) => s.q_max(),
            Coefficients::Euler(v) => v.len() - 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub i: u32,
    pub j: u32,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientEntry {
    pub q: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<Term>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDocument {
    pub kind: SeriesKind,
    pub surface: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<u64>,
    pub q_max: usize,
    pub euler: bool,
    pub coefficients: Vec<CoefficientEntry>,
}

fn terms_of(p: &BivariatePolynomial) -> Vec<Term> {
    p.terms()
        .map(|((i, j), c)| Term { i, j, c: c.to_string() })
        .collect()
}

fn parse_int(text: &str) -> Result<BigInt, CliError> {
    BigInt::from_str(text.trim()).map_err(|_| CliError::Validation(format!("`{text}` is not an integer")))
}

impl SeriesDocument {
    pub fn new(kind: SeriesKind, surface: &str, genus: Option<u64>, coefficients: &Coefficients) -> Self {
        let entries = match coefficients {
            Coefficients::Hodge(series) => series
                .coeffs()
                .iter()
                .enumerate()
                .map(|(q, p)| CoefficientEntry {
                    q,
                    m: kind.label(q),
                    terms: Some(terms_of(p)),
                    value: None,
                })
                .collect(),
            Coefficients::Euler(values) => values
                .iter()
                .enumerate()
                .map(|(q, v)| CoefficientEntry {
                    q,
                    m: kind.label(q),
                    terms: None,
                    value: Some(v.to_string()),
                })
                .collect(),
        };
        Self {
            kind,
            surface: surface.to_string(),
            genus,
            q_max: coefficients.q_max(),
            euler: matches!(coefficients, Coefficients::Euler(_)),
            coefficients: entries,
        }
    }

    pub fn coefficients(&self) -> Result<Coefficients, CliError> {
        if self.coefficients.len() != self.q_max + 1 {
            return Err(CliError::Validation(format!(
                "expected {} coefficients, found {}",
                self.q_max + 1,
                self.coefficients.len()
            )));
        }
        for (expected, entry) in self.coefficients.iter().enumerate() {
            if entry.q != expected {
                return Err(CliError::Validation(format!("coefficient {expected} is labelled q = {}", entry.q)));
            }
        }
        if self.euler {
            let values = self
                .coefficients
                .iter()
                .map(|e| {
                    let v = e.value.as_deref().ok_or_else(|| {
                        CliError::Validation(format!("coefficient q = {} has no value", e.q))
                    })?;
                    parse_int(v)
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Coefficients::Euler(values))
        } else {
            let polys = self
                .coefficients
                .iter()
                .map(|e| {
                    let terms = e.terms.as_ref().ok_or_else(|| {
                        CliError::Validation(format!("coefficient q = {} has no terms", e.q))
                    })?;
                    let mut p = BivariatePolynomial::zero();
                    for t in terms {
                        p.add_term((t.i, t.j), parse_int(&t.c)?);
                    }
                    Ok(p)
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(Coefficients::Hodge(TruncatedSeries::from_coeffs(polys, self.q_max)))
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("series document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Validation(format!("invalid series document: {e}")))
    }
}

pub fn to_csv(kind: SeriesKind, coefficients: &Coefficients) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let label = |q: usize| kind.label(q).map(|m| m.to_string()).unwrap_or_default();
    match coefficients {
        Coefficients::Hodge(series) => {
            writer.write_record(["q", "m", "i", "j", "c"]).expect("in-memory write");
            for (q, p) in series.coeffs().iter().enumerate() {
                if p.is_zero() {
                    writer
                        .write_record([q.to_string(), label(q), "0".into(), "0".into(), "0".into()])
                        .expect("in-memory write");
                }
                for ((i, j), c) in p.terms() {
                    writer
                        .write_record([q.to_string(), label(q), i.to_string(), j.to_string(), c.to_string()])
                        .expect("in-memory write");
                }
            }
        }
        Coefficients::Euler(values) => {
            writer.write_record(["q", "m", "value"]).expect("in-memory write");
            for (q, v) in values.iter().enumerate() {
                writer
                    .write_record([q.to_string(), label(q), v.to_string()])
                    .expect("in-memory write");
            }
        }
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

pub fn from_csv(text: &str) -> Result<Coefficients, CliError> {
    let invalid = |msg: String| CliError::Validation(format!("invalid series csv: {msg}"));
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| invalid(e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    let field = |record: &csv::StringRecord, k: usize| -> Result<String, CliError> {
        record
            .get(k)
            .map(str::to_string)
            .ok_or_else(|| invalid(format!("missing column {k}")))
    };
    let index = |text: String| -> Result<usize, CliError> {
        text.trim().parse().map_err(|_| invalid(format!("`{text}` is not an index")))
    };
    match headers.iter().map(String::as_str).collect::<Vec<_>>().as_slice() {
        ["q", "m", "i", "j", "c"] => {
            let mut polys: Vec<BivariatePolynomial> = Vec::new();
            for record in reader.records() {
                let record = record.map_err(|e| invalid(e.to_string()))?;
                let q = index(field(&record, 0)?)?;
                if q >= polys.len() {
                    polys.resize(q + 1, BivariatePolynomial::zero());
                }
                let i = index(field(&record, 2)?)? as u32;
                let j = index(field(&record, 3)?)? as u32;
                polys[q].add_term((i, j), parse_int(&field(&record, 4)?)?);
            }
            if polys.is_empty() {
                return Err(invalid("no coefficients".into()));
            }
            let q_max = polys.len() - 1;
            Ok(Coefficients::Hodge(TruncatedSeries::from_coeffs(polys, q_max)))
        }
        ["q", "m", "value"] => {
            let mut values = Vec::new();
            for record in reader.records() {
                let record = record.map_err(|e| invalid(e.to_string()))?;
                let q = index(field(&record, 0)?)?;
                if q != values.len() {
                    return Err(invalid(format!("expected q = {}, found {q}", values.len())));
                }
                values.push(parse_int(&field(&record, 2)?)?);
            }
            if values.is_empty() {
                return Err(invalid("no coefficients".into()));
            }
            Ok(Coefficients::Euler(values))
        }
        other => Err(invalid(format!("unrecognized header {other:?}"))),
    }
}

pub fn to_text(kind: SeriesKind, surface: &str, genus: Option<u64>, coefficients: &Coefficients) -> String {
    let mut out = String::new();
    let genus_note = genus.map(|g| format!(", genus {g}")).unwrap_or_default();
    let level = match coefficients {
        Coefficients::Hodge(_) => "hodge",
        Coefficients::Euler(_) => "euler",
    };
    writeln!(out, "# {} series ({level}) for {surface}{genus_note}", kind.as_str()).unwrap();
    let label = |q: usize| match kind.label(q) {
        Some(m) => format!("m={m}"),
        None => "-".to_string(),
    };
    match coefficients {
        Coefficients::Hodge(series) => {
            for (q, p) in series.coeffs().iter().enumerate() {
                writeln!(out, "q^{q}\t[{}]\t{p}", label(q)).unwrap();
            }
        }
        Coefficients::Euler(values) => {
            for (q, v) in values.iter().enumerate() {
                writeln!(out, "q^{q}\t[{}]\t{v}", label(q)).unwrap();
            }
        }
    }
    out
}
