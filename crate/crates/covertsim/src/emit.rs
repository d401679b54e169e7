//! CSV and JSON result emission.
//!
//! Files are byte-stable for fixed inputs: structs serialize in declaration
//! order, collections are pre-sorted, and every floating-point value is
//! written with 17 significant digits so it round-trips exactly.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use crate::config::NetworkConfig;
use crate::error::{Error, Result};
use crate::sweep::{SweepResult, SweepSpec};

/// Output format of `emit`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Deserialize, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
}

/// Full JSON result document.
#[derive(Debug, Serialize)]
pub struct ResultDocument<'a> {
    pub config: &'a NetworkConfig,
    pub sweep: &'a SweepSpec,
    pub fits: &'a [crate::sweep::ScalingFit],
    pub points: &'a [crate::sweep::PointRecord],
}

/// `{:.16e}` gives one leading digit plus 16 decimals: 17 significant
/// digits, enough to reconstruct any f64 exactly.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// JSON formatter that widens all floats to 17 significant digits.
struct SigDigitFormatter;

impl serde_json::ser::Formatter for SigDigitFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.write_f64(writer, value as f64)
    }
}

/// Serialize any document as deterministic JSON with wide floats.
pub fn to_json_bytes<T: Serialize>(doc: &T) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigDigitFormatter);
    doc.serialize(&mut ser)
        .map_err(|e| Error::Domain(format!("json serialization failed: {e}")))?;
    buf.push(b'\n');
    Ok(buf)
}

/// Render sweep points as CSV with the fixed header `n,trial,seed,metric,value`.
pub fn to_csv_bytes(result: &SweepResult) -> Result<Vec<u8>> {
    if result.points.is_empty() {
        return Err(Error::EmptyResults);
    }
    let mut out = String::from("n,trial,seed,metric,value\n");
    for p in &result.points {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            p.n,
            p.trial,
            p.seed,
            p.metric.name(),
            format_float(p.value)
        ));
    }
    Ok(out.into_bytes())
}

/// Write the sweep result to `path` in the requested format.
pub fn emit(
    result: &SweepResult,
    config: &NetworkConfig,
    spec: &SweepSpec,
    format: Format,
    path: &Path,
) -> Result<()> {
    if result.points.is_empty() {
        return Err(Error::EmptyResults);
    }
    let bytes = match format {
        Format::Csv => to_csv_bytes(result)?,
        Format::Json => to_json_bytes(&ResultDocument {
            config,
            sweep: spec,
            fits: &result.fits,
            points: &result.points,
        })?,
    };
    let mut file = fs::File::create(path)?;
    file.write_all(&bytes)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_round_trips() {
        for v in [0.0, 1.0, -1.5, 1.0 / 3.0, 1e-30, 123456.789e12] {
            let s = format_float(v);
            let back: f64 = s.parse().unwrap();
            assert_eq!(v.to_bits(), back.to_bits(), "{s}");
        }
    }

    #[test]
    fn empty_results_rejected() {
        let result = SweepResult {
            fits: vec![],
            points: vec![],
        };
        assert!(matches!(to_csv_bytes(&result), Err(Error::EmptyResults)));
    }

    #[test]
    fn json_floats_are_wide() {
        #[derive(Serialize)]
        struct Doc {
            x: f64,
        }
        let bytes = to_json_bytes(&Doc { x: 0.1 }).unwrap();
        let text = String::from_utf8(bytes).unwrap();
        assert!(text.contains("1.0000000000000001e-1"), "{text}");
    }
}
