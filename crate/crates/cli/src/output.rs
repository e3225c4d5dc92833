//! JSON, CSV and text rendering.

use num_complex::Complex64;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

pub const SCHEMA: &str = "omega-sums/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A float serialized with 17 significant digits; non-finite becomes `null`.
#[derive(Clone, Copy, Debug)]
pub struct Float(pub f64);

impl Float {
    pub fn text(self) -> String {
        if self.0.is_finite() {
            format!("{:.16e}", self.0)
        } else {
            self.0.to_string()
        }
    }
}

impl Serialize for Float {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        RawValue::from_string(format!("{:.16e}", self.0))
            .map_err(serde::ser::Error::custom)?
            .serialize(s)
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Cplx {
    pub re: Float,
    pub im: Float,
}

impl From<Complex64> for Cplx {
    fn from(z: Complex64) -> Self {
        Self { re: Float(z.re), im: Float(z.im) }
    }
}

impl Cplx {
    pub fn text(self) -> String {
        if self.im.0 == 0.0 {
            self.re.text()
        } else {
            format!("{}{}{}i", self.re.text(), if self.im.0 < 0.0 { "-" } else { "+" }, Float(self.im.0.abs()).text())
        }
    }
}

/// An exact value: a JSON integer when it fits in `i64`, otherwise its
/// exact string form.
#[derive(Clone, Debug)]
pub struct Exact(pub String);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.parse::<i64>() {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&self.0),
        }
    }
}

pub fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("output types serialize")
}

pub fn csv_row<I: IntoIterator<Item = String>>(cells: I) -> String {
    cells
        .into_iter()
        .map(|c| if c.contains([',', '"', '\n']) { format!("\"{}\"", c.replace('"', "\"\"")) } else { c })
        .collect::<Vec<_>>()
        .join(",")
}
