//! Bit-exact JSON forms for polynomials, configurations, decompositions
//! and identity reports.
//!
//! Serialization is byte-deterministic: terms appear in canonical order,
//! coefficients are reduced `"p/q"` strings with the denominator omitted
//! when it is one, and no optional whitespace is emitted. Deserialization
//! is strict; a document must already be canonical (ordered terms, no
//! zero coefficients, increasing blade indices) and violations are
//! reported with a JSON-pointer-style path.

use serde::{Deserialize, Serialize};

use crate::almansi::AlmansiResult;
use crate::clifford::{Blade, MAX_DIM};
use crate::error::Error;
use crate::poly::{CliffordPolynomial, MultiIndex};
use crate::rational::{format_rational, parse_rational};
use crate::umbral::{CalculusConfig, Family, RaisingVariant};
use crate::verify::{Counterexample, IdentityReport};

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct TermJson {
    pub coef: String,
    pub monomial: Vec<u32>,
    pub blade: Vec<usize>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct PolyJson {
    pub n: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ConfigJson {
    pub n: usize,
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<String>,
    pub variant: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct AlmansiJson {
    pub k: u32,
    pub config: ConfigJson,
    pub components: Vec<PolyJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct CounterexampleJson {
    pub input: PolyJson,
    pub lhs: PolyJson,
    pub rhs: PolyJson,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ReportJson {
    pub identity_name: String,
    pub config: ConfigJson,
    pub trials: u32,
    pub max_degree: u32,
    pub seed: u64,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CounterexampleJson>,
}

pub fn poly_to_json(poly: &CliffordPolynomial) -> PolyJson {
    PolyJson {
        n: poly.n(),
        terms: poly
            .terms()
            .map(|(alpha, blade, coefficient)| TermJson {
                coef: format_rational(coefficient),
                monomial: alpha.exponents().to_vec(),
                blade: blade.indices().collect(),
            })
            .collect(),
    }
}

pub fn poly_from_json(doc: &PolyJson) -> Result<CliffordPolynomial, Error> {
    poly_from_json_at(doc, "")
}

fn poly_from_json_at(doc: &PolyJson, base: &str) -> Result<CliffordPolynomial, Error> {
    if doc.n == 0 || doc.n > MAX_DIM {
        return Err(Error::schema(
            format!("{base}/n"),
            format!("dimension must be in 1..={MAX_DIM}"),
        ));
    }
    let mut poly = CliffordPolynomial::zero(doc.n);
    let mut previous_key: Option<(MultiIndex, Blade)> = None;
    for (index, term) in doc.terms.iter().enumerate() {
        let path = format!("{base}/terms/{index}");
        let coefficient = parse_rational(&term.coef)
            .map_err(|_| Error::schema(format!("{path}/coef"), "not a rational \"p/q\""))?;
        if num_traits::Zero::is_zero(&coefficient) {
            return Err(Error::schema(
                format!("{path}/coef"),
                "zero coefficients are forbidden",
            ));
        }
        if term.monomial.len() != doc.n {
            return Err(Error::schema(
                format!("{path}/monomial"),
                format!("expected {} exponents", doc.n),
            ));
        }
        let blade = Blade::from_indices(&term.blade, doc.n)
            .map_err(|error| Error::schema(format!("{path}/blade"), error.to_string()))?;
        let alpha = MultiIndex::new(term.monomial.clone());
        let key = (alpha, blade);
        if let Some(previous) = &previous_key {
            if *previous >= key {
                return Err(Error::schema(
                    path,
                    "terms must be strictly increasing in canonical order",
                ));
            }
        }
        previous_key = Some(key.clone());
        poly.add_term(key.0, key.1, coefficient);
    }
    Ok(poly)
}

pub fn config_to_json(cfg: &CalculusConfig) -> ConfigJson {
    ConfigJson {
        n: cfg.n(),
        family: cfg.family().name().to_owned(),
        h: cfg.h().map(format_rational),
        variant: cfg.variant().name().to_owned(),
    }
}

pub fn config_from_json(doc: &ConfigJson) -> Result<CalculusConfig, Error> {
    config_from_json_at(doc, "")
}

fn config_from_json_at(doc: &ConfigJson, base: &str) -> Result<CalculusConfig, Error> {
    let family = Family::from_name(&doc.family).ok_or_else(|| {
        Error::schema(
            format!("{base}/family"),
            "expected continuum, forward or central",
        )
    })?;
    let variant = RaisingVariant::from_name(&doc.variant)
        .ok_or_else(|| Error::schema(format!("{base}/variant"), "expected plain or symmetrized"))?;
    let h = match &doc.h {
        None => None,
        Some(text) => Some(
            parse_rational(text)
                .map_err(|_| Error::schema(format!("{base}/h"), "not a rational \"p/q\""))?,
        ),
    };
    CalculusConfig::new(doc.n, family, h, variant)
        .map_err(|error| Error::schema(base.to_owned(), error.to_string()))
}

pub fn almansi_to_json(result: &AlmansiResult) -> AlmansiJson {
    AlmansiJson {
        k: result.k(),
        config: config_to_json(&result.cfg),
        components: result.components.iter().map(poly_to_json).collect(),
    }
}

pub fn almansi_from_json(doc: &AlmansiJson) -> Result<AlmansiResult, Error> {
    let cfg = config_from_json_at(&doc.config, "/config")?;
    if doc.k as usize != doc.components.len() || doc.k == 0 {
        return Err(Error::schema(
            "/k",
            "k must be positive and equal the number of components",
        ));
    }
    let mut components = Vec::with_capacity(doc.components.len());
    for (index, component) in doc.components.iter().enumerate() {
        let poly = poly_from_json_at(component, &format!("/components/{index}"))?;
        if poly.n() != cfg.n() {
            return Err(Error::schema(
                format!("/components/{index}/n"),
                format!("expected dimension {}", cfg.n()),
            ));
        }
        components.push(poly);
    }
    Ok(AlmansiResult { cfg, components })
}

pub fn report_to_json(report: &IdentityReport) -> ReportJson {
    ReportJson {
        identity_name: report.identity_name.clone(),
        config: config_to_json(&report.config),
        trials: report.trials,
        max_degree: report.max_degree,
        seed: report.seed,
        passed: report.passed,
        counterexample: report
            .counterexample
            .as_ref()
            .map(|witness| CounterexampleJson {
                input: poly_to_json(&witness.input),
                lhs: poly_to_json(&witness.lhs),
                rhs: poly_to_json(&witness.rhs),
            }),
    }
}

pub fn report_from_json(doc: &ReportJson) -> Result<IdentityReport, Error> {
    let config = config_from_json_at(&doc.config, "/config")?;
    if doc.passed != doc.counterexample.is_none() {
        return Err(Error::schema(
            "/passed",
            "passed must hold exactly when no counterexample is present",
        ));
    }
    let counterexample = match &doc.counterexample {
        None => None,
        Some(witness) => Some(Counterexample {
            input: poly_from_json_at(&witness.input, "/counterexample/input")?,
            lhs: poly_from_json_at(&witness.lhs, "/counterexample/lhs")?,
            rhs: poly_from_json_at(&witness.rhs, "/counterexample/rhs")?,
        }),
    };
    Ok(IdentityReport {
        identity_name: doc.identity_name.clone(),
        config,
        trials: doc.trials,
        max_degree: doc.max_degree,
        seed: doc.seed,
        passed: doc.passed,
        counterexample,
    })
}

/// Parses a JSON document into a DTO, mapping structural failures to
/// pointer-style paths.
pub fn from_json_str<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T, Error> {
    let deserializer = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(deserializer).map_err(|error| {
        let mut pointer = String::new();
        for segment in error.path().iter() {
            match segment {
                serde_path_to_error::Segment::Seq { index } => {
                    pointer.push('/');
                    pointer.push_str(&index.to_string());
                }
                serde_path_to_error::Segment::Map { key } => {
                    pointer.push('/');
                    pointer.push_str(key);
                }
                serde_path_to_error::Segment::Enum { variant } => {
                    pointer.push('/');
                    pointer.push_str(variant);
                }
                serde_path_to_error::Segment::Unknown => pointer.push_str("/?"),
            }
        }
        Error::schema(pointer, error.inner().to_string())
    })
}

/// Compact deterministic serialization of any DTO.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("DTO serialization cannot fail")
}
