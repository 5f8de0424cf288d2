//! Tabular output: one rectangular table, emitted as CSV or JSON.
//!
//! Both encodings carry the same values and the same provenance (tool version,
//! configuration hash, seed), so a result file is self-describing and
//! regression-diffable:
//!
//! * CSV — `#`-prefixed provenance comments, a header row, a units row, then
//!   data rows. Numbers are printed with 17 significant digits (`{:.16e}`),
//!   which round-trips every finite `f64` exactly. Fields are quoted
//!   RFC-4180-style when they contain a comma, quote or newline. Line endings
//!   are always `\n` and the decimal separator is always `.` (Rust's float
//!   formatting is locale-independent), so output is byte-deterministic.
//! * JSON — a flat object with one array per column plus a `meta` object
//!   holding provenance and the per-column units. Numbers use the shortest
//!   representation that round-trips exactly; non-finite values become `null`
//!   (JSON has no NaN/inf).

use std::io::Write;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};

/// 64-bit FNV-1a hash, used to fingerprint the configuration text that
/// produced a table.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut hash = OFFSET;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(PRIME);
    }
    hash
}

/// Provenance recorded in every emitted table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Provenance {
    /// Crate version string.
    pub version: &'static str,
    /// [`fnv1a64`] of the configuration text in effect.
    pub config_hash: u64,
    /// Master seed, when the table came from a stochastic computation.
    pub seed: Option<u64>,
}

impl Provenance {
    pub fn new(config_text: &str, seed: Option<u64>) -> Self {
        Provenance {
            version: env!("CARGO_PKG_VERSION"),
            config_hash: fnv1a64(config_text.as_bytes()),
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ColumnData {
    Num(Vec<f64>),
    Text(Vec<String>),
}

impl ColumnData {
    fn len(&self) -> usize {
        match self {
            ColumnData::Num(v) => v.len(),
            ColumnData::Text(v) => v.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    /// Unit string shown in the units row; `-` for dimensionless/text columns.
    pub unit: String,
    pub data: ColumnData,
}

/// A rectangular, ordered set of named columns with units and provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputTable {
    pub provenance: Provenance,
    pub columns: Vec<Column>,
}

impl OutputTable {
    pub fn new(provenance: Provenance) -> Self {
        OutputTable { provenance, columns: Vec::new() }
    }

    pub fn push_num(&mut self, name: &str, unit: &str, values: Vec<f64>) {
        self.columns.push(Column {
            name: name.to_string(),
            unit: unit.to_string(),
            data: ColumnData::Num(values),
        });
    }

    pub fn push_text(&mut self, name: &str, unit: &str, values: Vec<String>) {
        self.columns.push(Column {
            name: name.to_string(),
            unit: unit.to_string(),
            data: ColumnData::Text(values),
        });
    }

    pub fn n_rows(&self) -> usize {
        self.columns.first().map_or(0, |c| c.data.len())
    }

    fn validate(&self) -> Result<()> {
        if self.columns.is_empty() {
            return Err(Error::Config("output table has no columns".into()));
        }
        let rows = self.n_rows();
        for c in &self.columns {
            if c.data.len() != rows {
                return Err(Error::Config(format!(
                    "output table is not rectangular: column `{}` has {} rows, expected {rows}",
                    c.name,
                    c.data.len(),
                )));
            }
            if c.name == "meta" {
                return Err(Error::Config(
                    "`meta` is reserved for the JSON metadata object and cannot name a column"
                        .into(),
                ));
            }
        }
        Ok(())
    }

    /// Write the CSV encoding.
    pub fn write_csv(&self, w: &mut impl Write) -> Result<()> {
        self.validate()?;
        write!(w, "# tool: {} {}\n", env!("CARGO_PKG_NAME"), self.provenance.version)?;
        write!(w, "# config-hash: {:#018x}\n", self.provenance.config_hash)?;
        if let Some(seed) = self.provenance.seed {
            write!(w, "# seed: {seed}\n")?;
        }
        let header: Vec<String> = self.columns.iter().map(|c| csv_field(&c.name)).collect();
        write!(w, "{}\n", header.join(","))?;
        let units: Vec<String> = self.columns.iter().map(|c| csv_field(&c.unit)).collect();
        write!(w, "{}\n", units.join(","))?;
        let mut row = Vec::with_capacity(self.columns.len());
        for i in 0..self.n_rows() {
            row.clear();
            for c in &self.columns {
                row.push(match &c.data {
                    ColumnData::Num(v) => format_num(v[i]),
                    ColumnData::Text(v) => csv_field(&v[i]),
                });
            }
            write!(w, "{}\n", row.join(","))?;
        }
        Ok(())
    }

    /// The CSV encoding as a string.
    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("CSV output is UTF-8"))
    }

    /// The JSON encoding: `meta` object plus one array per column, in column
    /// order.
    pub fn to_json_value(&self) -> Result<Value> {
        self.validate()?;
        let mut units = Map::new();
        for c in &self.columns {
            units.insert(c.name.clone(), Value::String(c.unit.clone()));
        }
        let mut meta = Map::new();
        meta.insert("tool".into(), json!(env!("CARGO_PKG_NAME")));
        meta.insert("version".into(), json!(self.provenance.version));
        meta.insert(
            "config_hash".into(),
            json!(format!("{:#018x}", self.provenance.config_hash)),
        );
        if let Some(seed) = self.provenance.seed {
            meta.insert("seed".into(), json!(seed));
        }
        meta.insert("units".into(), Value::Object(units));

        let mut root = Map::new();
        root.insert("meta".into(), Value::Object(meta));
        for c in &self.columns {
            let values: Vec<Value> = match &c.data {
                ColumnData::Num(v) => v
                    .iter()
                    .map(|x| serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number))
                    .collect(),
                ColumnData::Text(v) => v.iter().map(|s| Value::String(s.clone())).collect(),
            };
            root.insert(c.name.clone(), Value::Array(values));
        }
        Ok(Value::Object(root))
    }

    /// Write the JSON encoding (pretty-printed, `\n` line endings, trailing
    /// newline).
    pub fn write_json(&self, w: &mut impl Write) -> Result<()> {
        let value = self.to_json_value()?;
        serde_json::to_writer_pretty(&mut *w, &value)
            .map_err(|e| Error::Config(format!("JSON encoding failed: {e}")))?;
        w.write_all(b"\n")?;
        Ok(())
    }
}

/// 17-significant-digit decimal text; round-trips any finite `f64` exactly.
pub fn format_num(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') || s.contains('\r') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_table() -> OutputTable {
        let mut t = OutputTable::new(Provenance {
            version: "9.9.9",
            config_hash: 0x0123_4567_89ab_cdef,
            seed: Some(42),
        });
        t.push_num("x", "m", vec![0.1, 1.57e-33]);
        t.push_text("note", "-", vec!["plain".into(), "a,b \"q\"".into()]);
        t
    }

    #[test]
    fn fnv1a64_matches_published_vectors() {
        assert_eq!(fnv1a64(b""), 0xcbf2_9ce4_8422_2325);
        assert_eq!(fnv1a64(b"a"), 0xaf63_dc4c_8601_ec8c);
        assert_eq!(fnv1a64(b"foobar"), 0x8594_4171_f739_67e8);
    }

    #[test]
    fn csv_is_exactly_as_specified() {
        let csv = sample_table().to_csv_string().unwrap();
        let expected = concat!(
            "# tool: csl-trap 9.9.9\n",
            "# config-hash: 0x0123456789abcdef\n",
            "# seed: 42\n",
            "x,note\n",
            "m,-\n",
            "1.0000000000000001e-1,plain\n",
            "1.5699999999999999e-33,\"a,b \"\"q\"\"\"\n",
        );
        assert_eq!(csv, expected);
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn csv_numbers_round_trip_exactly() {
        for &x in &[0.1, 1.57e-33, std::f64::consts::PI, 6.626_272_536e-34, -3.0, 0.0, 1e300] {
            let text = format_num(x);
            assert_eq!(text.parse::<f64>().unwrap(), x, "text was {text}");
        }
    }

    #[test]
    fn json_mirrors_columns_with_meta() {
        let v = sample_table().to_json_value().unwrap();
        assert_eq!(v["meta"]["tool"], "csl-trap");
        assert_eq!(v["meta"]["version"], "9.9.9");
        assert_eq!(v["meta"]["config_hash"], "0x0123456789abcdef");
        assert_eq!(v["meta"]["seed"], 42);
        assert_eq!(v["meta"]["units"]["x"], "m");
        assert_eq!(v["x"][0], 0.1);
        assert_eq!(v["x"][1], 1.57e-33);
        assert_eq!(v["note"][1], "a,b \"q\"");
        // Column order is preserved after the leading meta object.
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["meta", "x", "note"]);
    }

    #[test]
    fn non_finite_numbers_become_null_in_json() {
        let mut t = OutputTable::new(Provenance::new("", None));
        t.push_num("r", "-", vec![f64::NAN, f64::INFINITY, 1.0]);
        let v = t.to_json_value().unwrap();
        assert!(v["r"][0].is_null());
        assert!(v["r"][1].is_null());
        assert_eq!(v["r"][2], 1.0);
        // And no seed line in CSV when the seed is absent.
        let csv = t.to_csv_string().unwrap();
        assert!(!csv.contains("# seed"));
        assert!(csv.contains("NaN"));
    }

    #[test]
    fn ragged_tables_and_reserved_names_are_rejected() {
        let mut t = sample_table();
        t.push_num("bad", "-", vec![1.0]);
        assert!(t.write_csv(&mut Vec::new()).is_err());

        let mut t = OutputTable::new(Provenance::new("", None));
        t.push_num("meta", "-", vec![1.0]);
        assert!(t.to_json_value().is_err());

        let t = OutputTable::new(Provenance::new("", None));
        assert!(t.to_csv_string().is_err());
    }

    #[test]
    fn provenance_hash_comes_from_config_text() {
        let p = Provenance::new("trap.d = 0.01\n", Some(7));
        assert_eq!(p.config_hash, fnv1a64(b"trap.d = 0.01\n"));
        assert_eq!(p.version, env!("CARGO_PKG_VERSION"));
    }
}
