//! Report and row formats.
//!
//! JSON reports are versioned by `schema_version`; field order is fixed by
//! the struct definitions, so serialization is deterministic.

use std::fmt::Write as _;
use std::str::FromStr;

use charclass_core::classify::{self, Classification, DerivationStep};
use charclass_core::StiefelError;
use serde::{Deserialize, Serialize};
use serde_json::Number;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub rule: String,
    pub expression: String,
    pub class: String,
}

impl From<DerivationStep> for TraceStep {
    fn from(s: DerivationStep) -> Self {
        TraceStep {
            rule: s.rule.to_string(),
            expression: s.expression,
            class: s.class,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub n: u32,
    pub k: u32,
    pub l: Vec<i64>,
    pub dimension: u64,
    pub orientable: bool,
    pub parallelizable: bool,
    pub stably_parallelizable: bool,
    /// Arbitrary-precision integer.
    pub p1_coefficient: Number,
    pub w2_coefficient: u8,
    pub w2_possibly_nonzero: bool,
    pub span_cases: Vec<u8>,
    pub cohomology_applicable: bool,
    pub caveats: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derivation: Option<Vec<TraceStep>>,
}

fn big_number(x: &num_bigint::BigInt) -> Number {
    Number::from_str(&x.to_string()).expect("integers are valid JSON numbers")
}

impl ReportDocument {
    pub fn new(c: &Classification, explain: bool) -> Self {
        let p = &c.params;
        ReportDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            n: p.n(),
            k: p.k(),
            l: p.weights().to_vec(),
            dimension: c.dimension,
            orientable: c.orientable,
            parallelizable: c.parallelizable,
            stably_parallelizable: c.stably_parallelizable,
            p1_coefficient: big_number(&c.p1_coefficient),
            w2_coefficient: u8::from(c.w2_coefficient),
            w2_possibly_nonzero: c.w2_possibly_nonzero,
            span_cases: c.span_cases.iter().collect(),
            cohomology_applicable: c.cohomology_applicable,
            caveats: c.caveats().into_iter().map(String::from).collect(),
            derivation: explain.then(|| {
                classify::derivation(p)
                    .into_iter()
                    .map(TraceStep::from)
                    .collect()
            }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let l = join(&self.l);
        let span = if self.span_cases.is_empty() {
            "none".to_string()
        } else {
            join(&self.span_cases)
        };
        let _ = writeln!(out, "W_{{{},{};({l})}}", self.n, self.k);
        let _ = writeln!(out, "dimension: {}", self.dimension);
        let _ = writeln!(out, "orientable: {}", self.orientable);
        let _ = writeln!(out, "parallelizable: {}", self.parallelizable);
        let _ = writeln!(out, "stably_parallelizable: {}", self.stably_parallelizable);
        let _ = writeln!(out, "p1_coefficient: {}", self.p1_coefficient);
        let _ = writeln!(out, "w2_coefficient: {}", self.w2_coefficient);
        let _ = writeln!(out, "w2_possibly_nonzero: {}", self.w2_possibly_nonzero);
        let _ = writeln!(out, "span_cases: {span}");
        let _ = writeln!(out, "cohomology_applicable: {}", self.cohomology_applicable);
        for c in &self.caveats {
            let _ = writeln!(out, "caveat: {c}");
        }
        if let Some(steps) = &self.derivation {
            let _ = writeln!(out, "derivation:");
            for (i, s) in steps.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "  {}. [{}] {} => {}",
                    i + 1,
                    s.rule,
                    s.expression,
                    s.class
                );
            }
        }
        out
    }
}

/// Structured rejection for `classify --format json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorDocument {
    pub schema_version: String,
    pub error: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gcd: Option<u64>,
}

impl From<&StiefelError> for ErrorDocument {
    fn from(e: &StiefelError) -> Self {
        let (kind, gcd) = match e {
            StiefelError::InvalidParameters(_) => ("invalid_parameters", None),
            StiefelError::NotAManifold { gcd } => ("not_a_manifold", Some(*gcd)),
        };
        ErrorDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            error: kind.to_string(),
            message: e.to_string(),
            gcd,
        }
    }
}

/// One enumeration row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridRow {
    pub n: u32,
    pub k: u32,
    pub l: Vec<i64>,
    pub dim: u64,
    pub parallelizable: bool,
    pub stably: bool,
    pub p1: Number,
    pub w2: u8,
    pub span_cases: Vec<u8>,
}

pub const TSV_HEADER: &str = "n\tk\tl\tdim\tparallelizable\tstably\tp1\tw2\tspan_cases";

impl GridRow {
    pub fn new(c: &Classification) -> Self {
        GridRow {
            n: c.params.n(),
            k: c.params.k(),
            l: c.params.weights().to_vec(),
            dim: c.dimension,
            parallelizable: c.parallelizable,
            stably: c.stably_parallelizable,
            p1: big_number(&c.p1_coefficient),
            w2: u8::from(c.w2_coefficient),
            span_cases: c.span_cases.iter().collect(),
        }
    }

    /// Tab-separated; `l` and `span_cases` are comma-joined, an empty span
    /// set is written `-`.
    pub fn to_tsv(&self) -> String {
        let span = if self.span_cases.is_empty() {
            "-".to_string()
        } else {
            join(&self.span_cases)
        };
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.n,
            self.k,
            join(&self.l),
            self.dim,
            self.parallelizable,
            self.stably,
            self.p1,
            self.w2,
            span
        )
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("row serializes")
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}
