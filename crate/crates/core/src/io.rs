//! Sequence files and number formatting.
//!
//! JSON: `{"offset": k_min, "re": [...], "im": [...]}`.
//! CSV: rows `k,re,im` in any order, optional `k,re,im` header; indices
//! missing between the smallest and largest row are zero.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufRead, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequence::TwoSidedSequence;

/// Shortest-free fixed form with 17 significant digits.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Serialize, Deserialize)]
struct SequenceJson {
    offset: i64,
    re: Vec<f64>,
    im: Vec<f64>,
}

pub fn sequence_from_json(text: &str) -> Result<TwoSidedSequence> {
    let raw: SequenceJson = serde_json::from_str(text)?;
    if raw.re.len() != raw.im.len() {
        return Err(Error::LengthMismatch {
            re: raw.re.len(),
            im: raw.im.len(),
        });
    }
    let values = raw
        .re
        .iter()
        .zip(&raw.im)
        .map(|(r, i)| Complex64::new(*r, *i))
        .collect();
    TwoSidedSequence::new(raw.offset, values)
}

pub fn sequence_to_json(a: &TwoSidedSequence) -> Result<String> {
    let raw = SequenceJson {
        offset: a.offset(),
        re: a.values().iter().map(|v| v.re).collect(),
        im: a.values().iter().map(|v| v.im).collect(),
    };
    Ok(serde_json::to_string(&raw)?)
}

pub fn sequence_from_csv<R: BufRead>(reader: R) -> Result<TwoSidedSequence> {
    let mut rows = BTreeMap::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if i == 0 && fields.first() == Some(&"k") {
            continue;
        }
        let bad = || Error::Parse(format!("line {}: expected `k,re,im`, got `{line}`", i + 1));
        if fields.len() != 3 {
            return Err(bad());
        }
        let k: i64 = fields[0].parse().map_err(|_| bad())?;
        let re: f64 = fields[1].parse().map_err(|_| bad())?;
        let im: f64 = fields[2].parse().map_err(|_| bad())?;
        if !(re.is_finite() && im.is_finite()) {
            return Err(Error::NonFinite { index: k });
        }
        if rows.insert(k, Complex64::new(re, im)).is_some() {
            return Err(Error::Parse(format!("index {k} appears twice")));
        }
    }
    let (&lo, _) = rows.first_key_value().ok_or(Error::EmptySequence)?;
    let (&hi, _) = rows.last_key_value().ok_or(Error::EmptySequence)?;
    TwoSidedSequence::from_fn(lo, hi, |k| rows.get(&k).copied().unwrap_or_default())
}

pub fn write_sequence_csv<W: Write>(mut w: W, a: &TwoSidedSequence) -> Result<()> {
    writeln!(w, "k,re,im")?;
    for (k, v) in a.iter() {
        writeln!(w, "{k},{},{}", fmt_real(v.re), fmt_real(v.im))?;
    }
    Ok(())
}

fn extension(path: &Path) -> String {
    path.extension()
        .and_then(|e| e.to_str())
        .unwrap_or("")
        .to_ascii_lowercase()
}

/// Reads a `.json` or `.csv` sequence file.
pub fn read_sequence(path: &Path) -> Result<TwoSidedSequence> {
    match extension(path).as_str() {
        "json" => sequence_from_json(&fs::read_to_string(path)?),
        "csv" => sequence_from_csv(std::io::BufReader::new(fs::File::open(path)?)),
        other => Err(Error::Parse(format!(
            "unsupported sequence file extension `{other}` (use .json or .csv)"
        ))),
    }
}

pub fn write_sequence(path: &Path, a: &TwoSidedSequence) -> Result<()> {
    match extension(path).as_str() {
        "json" => Ok(fs::write(path, sequence_to_json(a)? + "\n")?),
        "csv" => {
            let mut out = Vec::new();
            write_sequence_csv(&mut out, a)?;
            Ok(fs::write(path, out)?)
        }
        other => Err(Error::Parse(format!(
            "unsupported sequence file extension `{other}` (use .json or .csv)"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let a = TwoSidedSequence::new(
            -2,
            vec![Complex64::new(1.0, -0.5), Complex64::new(0.1, 0.0)],
        )
        .unwrap();
        let back = sequence_from_json(&sequence_to_json(&a).unwrap()).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn json_rejects_mismatch() {
        let e = sequence_from_json(r#"{"offset":0,"re":[1,2],"im":[0]}"#).unwrap_err();
        assert!(matches!(e, Error::LengthMismatch { re: 2, im: 1 }));
        assert!(sequence_from_json(r#"{"offset":0,"re":[],"im":[]}"#).is_err());
    }

    #[test]
    fn csv_round_trip_and_gaps() {
        let text = "k,re,im\n3,1.5,0\n-1,2,1\n";
        let a = sequence_from_csv(text.as_bytes()).unwrap();
        assert_eq!(a.k_min(), -1);
        assert_eq!(a.k_max(), 3);
        assert_eq!(a.get(1), Complex64::new(0.0, 0.0));
        let mut out = Vec::new();
        write_sequence_csv(&mut out, &a).unwrap();
        assert_eq!(sequence_from_csv(out.as_slice()).unwrap(), a);
    }

    #[test]
    fn csv_rejections() {
        assert!(sequence_from_csv("0,1,0\n0,2,0\n".as_bytes()).is_err());
        assert!(matches!(
            sequence_from_csv("0,NaN,0\n".as_bytes()).unwrap_err(),
            Error::NonFinite { index: 0 }
        ));
        assert!(sequence_from_csv("0,inf,0\n".as_bytes()).is_err());
        assert!(sequence_from_csv("0,1\n".as_bytes()).is_err());
        assert!(sequence_from_csv("k,re,im\n".as_bytes()).is_err());
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt_real(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_real(0.1).parse::<f64>().unwrap(), 0.1);
    }
}
