//! Time series of entanglement measures and their CSV/JSON encodings.

use serde::{Deserialize, Serialize};
use triqubit::analysis::time_grid;
use triqubit::{
    concurrence, density_homogeneous, density_inhomogeneous, mutual_information, probabilities,
    reduce_pair, Pair, SystemDensityMatrix,
};

use crate::config::{Engine, Format, Measures, ScenarioConfig};
use crate::number::{format_g, rounded};

pub const HEADER: [&str; 10] = [
    "t", "S_ab", "S_ac", "S_bc", "C_ab", "C_ac", "C_bc", "P_a", "P_b", "P_c",
];

/// One grid time. NaN marks a measure that was not selected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    pub t: f64,
    pub entropy: [f64; 3],
    pub concurrence: [f64; 3],
    pub probability: [f64; 3],
}

impl Row {
    pub fn values(&self) -> [f64; 10] {
        let mut v = [self.t; 10];
        v[1..4].copy_from_slice(&self.entropy);
        v[4..7].copy_from_slice(&self.concurrence);
        v[7..10].copy_from_slice(&self.probability);
        v
    }

    pub fn from_values(v: [f64; 10]) -> Self {
        Self {
            t: v[0],
            entropy: [v[1], v[2], v[3]],
            concurrence: [v[4], v[5], v[6]],
            probability: [v[7], v[8], v[9]],
        }
    }
}

pub fn density(engine: &Engine, t: f64) -> triqubit::Result<SystemDensityMatrix> {
    match engine {
        Engine::Inhomogeneous(cfg) => density_inhomogeneous(cfg, t),
        Engine::Homogeneous { j } => density_homogeneous(*j, t),
    }
}

pub fn row_at(engine: &Engine, t: f64, measures: Measures) -> triqubit::Result<Row> {
    let rho = density(engine, t)?;
    let mut row = Row {
        t,
        entropy: [f64::NAN; 3],
        concurrence: [f64::NAN; 3],
        probability: [f64::NAN; 3],
    };
    for (k, pair) in Pair::ALL.into_iter().enumerate() {
        if measures.entropy {
            row.entropy[k] = mutual_information(&rho, pair)?;
        }
        if measures.concurrence {
            row.concurrence[k] = concurrence(&reduce_pair(&rho, pair)?)?;
        }
    }
    if measures.probability {
        row.probability = probabilities(&rho)?.as_array();
    }
    Ok(row)
}

pub fn compute(cfg: &ScenarioConfig) -> triqubit::Result<Vec<Row>> {
    time_grid(cfg.t_start, cfg.t_end, cfg.points)
        .into_iter()
        .map(|t| row_at(&cfg.engine, t, cfg.measures))
        .collect()
}

pub fn to_csv(rows: &[Row]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(HEADER).expect("in-memory write");
    for row in rows {
        w.write_record(row.values().map(format_g))
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
struct JsonRow {
    t: Option<f64>,
    S_ab: Option<f64>,
    S_ac: Option<f64>,
    S_bc: Option<f64>,
    C_ab: Option<f64>,
    C_ac: Option<f64>,
    C_bc: Option<f64>,
    P_a: Option<f64>,
    P_b: Option<f64>,
    P_c: Option<f64>,
}

impl From<&Row> for JsonRow {
    fn from(row: &Row) -> Self {
        let v = row
            .values()
            .map(|x| if x.is_nan() { None } else { Some(rounded(x)) });
        Self {
            t: v[0],
            S_ab: v[1],
            S_ac: v[2],
            S_bc: v[3],
            C_ab: v[4],
            C_ac: v[5],
            C_bc: v[6],
            P_a: v[7],
            P_b: v[8],
            P_c: v[9],
        }
    }
}

impl From<JsonRow> for Row {
    fn from(r: JsonRow) -> Self {
        let v = [
            r.t, r.S_ab, r.S_ac, r.S_bc, r.C_ab, r.C_ac, r.C_bc, r.P_a, r.P_b, r.P_c,
        ];
        Row::from_values(v.map(|x| x.unwrap_or(f64::NAN)))
    }
}

pub fn to_json(rows: &[Row]) -> String {
    let rows: Vec<JsonRow> = rows.iter().map(JsonRow::from).collect();
    let mut s = serde_json::to_string_pretty(&rows).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn render(rows: &[Row], format: Format) -> String {
    match format {
        Format::Csv => to_csv(rows),
        Format::Json => to_json(rows),
    }
}

#[derive(Debug)]
pub enum ParseError {
    Csv(csv::Error),
    Header(Vec<String>),
    Value {
        line: usize,
        column: &'static str,
        text: String,
    },
    Json(serde_json::Error),
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Csv(e) => write!(f, "csv: {e}"),
            Self::Header(h) => write!(f, "unexpected header {h:?}"),
            Self::Value { line, column, text } => {
                write!(f, "line {line}, column {column}: cannot parse `{text}`")
            }
            Self::Json(e) => write!(f, "json: {e}"),
        }
    }
}

impl std::error::Error for ParseError {}

pub fn parse_csv(text: &str) -> Result<Vec<Row>, ParseError> {
    let mut r = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let header: Vec<String> = r
        .headers()
        .map_err(ParseError::Csv)?
        .iter()
        .map(String::from)
        .collect();
    if header != HEADER {
        return Err(ParseError::Header(header));
    }
    let mut rows = Vec::new();
    for (n, record) in r.records().enumerate() {
        let record = record.map_err(ParseError::Csv)?;
        let mut v = [0.0; 10];
        for (k, field) in record.iter().enumerate() {
            v[k] = field.parse().map_err(|_| ParseError::Value {
                line: n + 2,
                column: HEADER[k],
                text: field.to_string(),
            })?;
        }
        rows.push(Row::from_values(v));
    }
    Ok(rows)
}

pub fn parse_json(text: &str) -> Result<Vec<Row>, ParseError> {
    let rows: Vec<JsonRow> = serde_json::from_str(text).map_err(ParseError::Json)?;
    Ok(rows.into_iter().map(Row::from).collect())
}
