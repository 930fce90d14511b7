//! Output records and their CSV / JSON-lines encodings.

use std::io::Write;

use num_bigint::BigInt;
use rosenthal::tables::Provenance;
use rosenthal::{LogReal, Scalar};
use serde_json::{Map, Number, Value};

/// One cell. Numbers are kept as decimal text so that double-double and
/// big-integer values survive both encodings unchanged.
#[derive(Clone, Debug, PartialEq)]
pub enum Field {
    Num(String),
    Text(String),
    Bool(bool),
    Empty,
}

const SCI_FROM: f64 = 1e6;
const SCI_BELOW: f64 = 1e-4;

impl Field {
    pub fn real<S: Scalar>(x: S) -> Field {
        if !x.is_finite() {
            return Field::Text(x.to_string());
        }
        let m = x.abs().as_f64();
        if m >= SCI_FROM || (m != 0.0 && m < SCI_BELOW) {
            Field::Num(format!("{x:e}"))
        } else {
            Field::Num(x.to_string())
        }
    }

    pub fn int(n: &BigInt) -> Field {
        let s = n.to_string();
        let digits = s.trim_start_matches('-');
        if digits.len() <= 6 {
            return Field::Num(s);
        }
        let sign = if n.sign() == num_bigint::Sign::Minus { "-" } else { "" };
        let (lead, rest) = digits.split_at(1);
        let rest = rest.trim_end_matches('0');
        let exp = digits.len() - 1;
        if rest.is_empty() {
            Field::Num(format!("{sign}{lead}e{exp}"))
        } else {
            Field::Num(format!("{sign}{lead}.{rest}e{exp}"))
        }
    }

    /// A value that may overflow the scalar range; written from its logarithm
    /// when it does.
    pub fn log_real<S: Scalar>(x: LogReal<S>) -> Field {
        let v = x.value();
        if v.is_finite() && (x.is_zero() || v != S::zero()) {
            return Field::real(v);
        }
        let l10 = x.ln_abs() / S::LN_10();
        let mut e = l10.floor().as_f64() as i64;
        let mut m = format!("{:.14}", 10f64.powf((l10 - l10.floor()).as_f64()));
        if m.starts_with("10") {
            m = format!("{:.14}", 1.0);
            e += 1;
        }
        let sign = if x.sign() < 0 { "-" } else { "" };
        Field::Num(format!("{sign}{m}e{e}"))
    }

    pub fn u64(n: u64) -> Field {
        Field::int(&BigInt::from(n))
    }

    pub fn text(s: impl Into<String>) -> Field {
        Field::Text(s.into())
    }

    pub fn opt_real(x: Option<f64>) -> Field {
        x.map_or(Field::Empty, Field::real)
    }

    fn csv_cell(&self) -> String {
        match self {
            Field::Num(s) | Field::Text(s) => s.clone(),
            Field::Bool(b) => b.to_string(),
            Field::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Field::Num(s) => serde_json::from_str::<Number>(s).map_or_else(|_| Value::String(s.clone()), Value::Number),
            Field::Text(s) => Value::String(s.clone()),
            Field::Bool(b) => Value::Bool(*b),
            Field::Empty => Value::Null,
        }
    }
}

/// Every emitted number carries where it came from and an error estimate.
#[derive(Clone, Debug, PartialEq)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Vec<(String, Field)>,
    pub values: Vec<(String, Field)>,
    pub provenance: Provenance,
    pub error_estimate: Field,
}

impl OutputRecord {
    pub fn new(command: &str, provenance: Provenance) -> Self {
        OutputRecord {
            command: command.to_string(),
            inputs: Vec::new(),
            values: Vec::new(),
            provenance,
            error_estimate: Field::Num("0".into()),
        }
    }

    pub fn input(mut self, k: &str, v: Field) -> Self {
        self.inputs.push((k.to_string(), v));
        self
    }

    pub fn value(mut self, k: &str, v: Field) -> Self {
        self.values.push((k.to_string(), v));
        self
    }

    pub fn error(mut self, e: f64) -> Self {
        self.error_estimate = Field::real(e);
        self
    }

    pub fn to_json(&self) -> Value {
        let map = |kv: &[(String, Field)]| Value::Object(kv.iter().map(|(k, v)| (k.clone(), v.json())).collect::<Map<_, _>>());
        let mut o = Map::new();
        o.insert("command".into(), Value::String(self.command.clone()));
        o.insert("inputs".into(), map(&self.inputs));
        o.insert("values".into(), map(&self.values));
        o.insert("provenance".into(), Value::String(self.provenance.as_str().into()));
        o.insert("error_estimate".into(), self.error_estimate.json());
        Value::Object(o)
    }

    fn header(&self) -> Vec<String> {
        let mut h = vec!["command".to_string()];
        h.extend(self.inputs.iter().map(|(k, _)| k.clone()));
        h.extend(self.values.iter().map(|(k, _)| k.clone()));
        h.push("provenance".into());
        h.push("error_estimate".into());
        h
    }

    fn row(&self) -> Vec<String> {
        let mut r = vec![self.command.clone()];
        r.extend(self.inputs.iter().map(|(_, v)| v.csv_cell()));
        r.extend(self.values.iter().map(|(_, v)| v.csv_cell()));
        r.push(self.provenance.as_str().into());
        r.push(self.error_estimate.csv_cell());
        r
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Writes records; CSV takes its header from the first record.
pub fn emit(records: &[OutputRecord], format: Format, out: impl Write) -> std::io::Result<()> {
    match format {
        Format::Json => {
            let mut out = out;
            for r in records {
                serde_json::to_writer(&mut out, &r.to_json())?;
                out.write_all(b"\n")?;
            }
            out.flush()
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if let Some(first) = records.first() {
                w.write_record(first.header())?;
            }
            for r in records {
                w.write_record(r.row())?;
            }
            w.flush()
        }
    }
}
