//! CSV and JSON reports with a provenance header.

use std::io::{self, Write};

use serde_json::{Map, Value};
use sptwo_core::numerics::Half;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// `x` rounded to 15 significant digits, positional when the exponent is
/// in `[-5, 15)`, scientific otherwise. Trailing zeros are dropped.
pub fn fmt15(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "NaN".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let sci = format!("{:.14e}", x);
    let (mant, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    let neg = mant.starts_with('-');
    let digits: String = mant.chars().filter(char::is_ascii_digit).collect();
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if (-5..15).contains(&exp) {
        if exp < 0 {
            out.push_str("0.");
            out.extend(std::iter::repeat('0').take((-exp - 1) as usize));
            out.push_str(digits);
        } else {
            let int_len = exp as usize + 1;
            if digits.len() <= int_len {
                out.push_str(digits);
                out.extend(std::iter::repeat('0').take(int_len - digits.len()));
            } else {
                out.push_str(&digits[..int_len]);
                out.push('.');
                out.push_str(&digits[int_len..]);
            }
        }
    } else {
        out.push_str(&digits[..1]);
        if digits.len() > 1 {
            out.push('.');
            out.push_str(&digits[1..]);
        }
        out.push('e');
        out.push_str(&exp.to_string());
    }
    out
}

/// One table cell.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Half(Half),
    Int(u64),
    Bool(bool),
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Num(x) => fmt15(*x),
            Cell::Half(h) => h.to_string(),
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => {
                let rounded: f64 = fmt15(*x).parse().unwrap_or(*x);
                serde_json::Number::from_f64(rounded)
                    .map_or_else(|| Value::String(fmt15(*x)), Value::Number)
            }
            Cell::Half(h) => {
                serde_json::Number::from_f64(h.to_f64()).map_or(Value::Null, Value::Number)
            }
            Cell::Int(n) => Value::from(*n),
            Cell::Bool(b) => Value::Bool(*b),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<Half> for Cell {
    fn from(h: Half) -> Self {
        Cell::Half(h)
    }
}

impl From<u64> for Cell {
    fn from(n: u64) -> Self {
        Cell::Int(n)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Version, seed and an echo of the effective configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct Provenance {
    pub tool: &'static str,
    pub version: &'static str,
    pub seed: u64,
    pub config: Vec<(String, String)>,
}

impl Provenance {
    pub fn new(seed: u64, config: Vec<(String, String)>) -> Self {
        Provenance {
            tool: "sptwo",
            version: VERSION,
            seed,
            config,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub provenance: Provenance,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(String, Cell)>,
}

impl Report {
    pub fn new(provenance: Provenance, columns: &[&'static str]) -> Self {
        Report {
            provenance,
            columns: columns.to_vec(),
            rows: Vec::new(),
            summary: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, key: &str, value: impl Into<Cell>) {
        self.summary.push((key.to_string(), value.into()));
    }

    /// `key=value` lines for the summary.
    pub fn summary_lines(&self) -> Vec<String> {
        self.summary
            .iter()
            .map(|(k, v)| format!("{k}={}", v.text()))
            .collect()
    }

    pub fn write<W: Write>(&self, format: Format, out: W) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        let p = &self.provenance;
        writeln!(out, "# {} {}", p.tool, p.version)?;
        writeln!(out, "# seed={}", p.seed)?;
        for (k, v) in &p.config {
            writeln!(out, "# {k}={v}")?;
        }
        {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(&self.columns)?;
            for row in &self.rows {
                w.write_record(row.iter().map(Cell::text))?;
            }
            w.flush()?;
        }
        for line in self.summary_lines() {
            writeln!(out, "# {line}")?;
        }
        Ok(())
    }

    fn write_json<W: Write>(&self, mut out: W) -> io::Result<()> {
        let p = &self.provenance;
        let mut config = Map::new();
        for (k, v) in &p.config {
            config.insert(k.clone(), Value::String(v.clone()));
        }
        let mut prov = Map::new();
        prov.insert("tool".into(), p.tool.into());
        prov.insert("version".into(), p.version.into());
        prov.insert("seed".into(), p.seed.into());
        prov.insert("config".into(), Value::Object(config));
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut m = Map::new();
                for (c, v) in self.columns.iter().zip(row) {
                    m.insert((*c).to_string(), v.json());
                }
                Value::Object(m)
            })
            .collect();
        let mut summary = Map::new();
        for (k, v) in &self.summary {
            summary.insert(k.clone(), v.json());
        }
        let mut top = Map::new();
        top.insert("provenance".into(), Value::Object(prov));
        top.insert(
            "columns".into(),
            self.columns.iter().map(|c| Value::from(*c)).collect(),
        );
        top.insert("rows".into(), Value::Array(rows));
        top.insert("summary".into(), Value::Object(summary));
        serde_json::to_writer_pretty(&mut out, &Value::Object(top))?;
        writeln!(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_digits() {
        assert_eq!(fmt15(std::f64::consts::FRAC_1_SQRT_2), "0.707106781186548");
        assert_eq!(fmt15(1.0), "1");
        assert_eq!(fmt15(-2.5), "-2.5");
        assert_eq!(fmt15(1234.0), "1234");
        assert_eq!(fmt15(1e-3), "0.001");
        assert_eq!(fmt15(1.5e-7), "1.5e-7");
        assert_eq!(fmt15(6.02214076e23), "6.02214076e23");
        assert_eq!(fmt15(0.1 + 0.2), "0.3");
        assert_eq!(fmt15(f64::INFINITY), "inf");
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn csv_layout() {
        let mut r = Report::new(
            Provenance::new(7, vec![("lmax".into(), "1".into())]),
            &["ell", "p", "c"],
        );
        r.push(vec![
            Half::ONE_HALF.into(),
            Half::ONE_HALF.into(),
            std::f64::consts::FRAC_1_SQRT_2.into(),
        ]);
        r.note("rows", 1u64);
        let mut buf = Vec::new();
        r.write(Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            format!("# sptwo {VERSION}\n# seed=7\n# lmax=1\nell,p,c\n0.5,0.5,0.707106781186548\n# rows=1\n")
        );
        let mut buf = Vec::new();
        r.write(Format::Json, &mut buf).unwrap();
        let v: Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["rows"][0]["c"], Value::from(0.707106781186548));
        assert_eq!(v["provenance"]["seed"], Value::from(7));
    }
}
