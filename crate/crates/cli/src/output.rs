use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use qnorm_core::exact::{HighComplex, HighFloat};

pub const SCHEMA_VERSION: &str = "1";

/// Significant digits for high-precision renderings.
pub const FLOAT_DIGITS: usize = 25;

/// What a command produced: a JSON payload, or CSV text when asked for.
#[derive(Debug)]
pub enum Rendered {
    Json {
        params: Map<String, Value>,
        results: Value,
    },
    Csv(String),
}

/// A command result together with a failure to report after printing it.
#[derive(Debug)]
pub struct Outcome {
    pub command: &'static str,
    pub rendered: Rendered,
    pub failure: Option<crate::CliError>,
}

impl Outcome {
    pub fn ok(command: &'static str, rendered: Rendered) -> Self {
        Outcome {
            command,
            rendered,
            failure: None,
        }
    }

    /// Text written to stdout; JSON is pretty-printed with sorted keys.
    pub fn to_text(&self, timing_ms: u128) -> String {
        match &self.rendered {
            Rendered::Csv(s) => s.clone(),
            Rendered::Json { params, results } => {
                let envelope = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": self.command,
                    "params": params,
                    "results": results,
                    "timing_ms": timing_ms as u64,
                });
                let mut s = serde_json::to_string_pretty(&envelope).expect("serializable");
                s.push('\n');
                s
            }
        }
    }
}

pub fn big(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

pub fn bigs<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> Value {
    Value::Array(xs.into_iter().map(big).collect())
}

pub fn rational(x: &BigRational) -> Value {
    Value::String(x.to_string())
}

pub fn float(x: &HighFloat) -> Value {
    Value::String(x.to_sci_string(FLOAT_DIGITS))
}

pub fn complex(z: &HighComplex) -> Value {
    json!({ "re": float(&z.re), "im": float(&z.im) })
}

/// `f64` at 15 significant digits.
pub fn f64_text(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.14e}")
}

pub fn params(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

pub fn csv_text<I, R>(header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_come_out_sorted() {
        let o = Outcome::ok(
            "x",
            Rendered::Json {
                params: params(&[("zeta", json!(1)), ("alpha", json!(2))]),
                results: json!({"b": 1, "a": 2}),
            },
        );
        let text = o.to_text(7);
        let order: Vec<usize> = [
            "\"command\"",
            "\"params\"",
            "\"results\"",
            "\"schema_version\"",
            "\"timing_ms\"",
        ]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
        assert!(order.windows(2).all(|w| w[0] < w[1]));
        assert!(text.find("\"alpha\"").unwrap() < text.find("\"zeta\"").unwrap());
    }

    #[test]
    fn number_renderings() {
        assert_eq!(f64_text(1.5), "1.50000000000000e0");
        assert_eq!(f64_text(-0.0), "0.00000000000000e0");
        assert_eq!(big(&BigInt::from(12)), json!("12"));
        let csv = csv_text(
            &["n", "k", "count"],
            [vec!["3".to_string(), "0".into(), "5".into()]],
        );
        assert_eq!(csv, "n,k,count\n3,0,5\n");
    }
}
