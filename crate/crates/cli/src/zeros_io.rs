//! Zero-list files: CSV with header `re,im,multiplicity` or a JSON array
//! of `{re, im, mult}` objects. Reading normalizes (sorts by modulus,
//! merges duplicates, folds near-origin points), so write-after-read is
//! idempotent.

use std::fmt::Write as _;
use std::path::Path;

use growthlab_core::points::PointDistribution;
use growthlab_core::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum ZeroListError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {msg}")]
    Csv { line: usize, msg: String },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Serialize, Deserialize)]
struct ZeroRow {
    re: f64,
    im: f64,
    mult: u32,
}

/// Read a zero list; the format is chosen by extension (`.json` vs CSV).
pub fn read_zero_list(path: &Path) -> Result<PointDistribution, ZeroListError> {
    let text = std::fs::read_to_string(path)?;
    if path.extension().and_then(|e| e.to_str()) == Some("json") {
        let rows: Vec<ZeroRow> = serde_json::from_str(&text)?;
        return Ok(PointDistribution::from_points(
            rows.iter().map(|r| (Complex64::new(r.re, r.im), r.mult)),
        ));
    }
    parse_zero_csv(&text)
}

pub fn parse_zero_csv(text: &str) -> Result<PointDistribution, ZeroListError> {
    let mut pts = Vec::new();
    let mut lines = text.lines().enumerate();
    let Some((_, header)) = lines.next() else {
        return Err(ZeroListError::Csv {
            line: 1,
            msg: "empty file".to_string(),
        });
    };
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    if cols != ["re", "im", "multiplicity"] {
        return Err(ZeroListError::Csv {
            line: 1,
            msg: format!("expected header re,im,multiplicity, got {header:?}"),
        });
    }
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(ZeroListError::Csv {
                line: idx + 1,
                msg: format!("expected 3 fields, got {}", fields.len()),
            });
        }
        let parse = |s: &str| -> Result<f64, ZeroListError> {
            s.parse().map_err(|_| ZeroListError::Csv {
                line: idx + 1,
                msg: format!("bad number {s:?}"),
            })
        };
        let re = parse(fields[0])?;
        let im = parse(fields[1])?;
        let mult: u32 = fields[2].parse().map_err(|_| ZeroListError::Csv {
            line: idx + 1,
            msg: format!("bad multiplicity {:?}", fields[2]),
        })?;
        pts.push((Complex64::new(re, im), mult));
    }
    Ok(PointDistribution::from_points(pts))
}

/// Serialize back to the CSV format; origin mass becomes an explicit
/// (0, 0) row.
pub fn zero_list_to_csv(z: &PointDistribution) -> String {
    let mut out = String::from("re,im,multiplicity\n");
    if z.origin_multiplicity() > 0 {
        let _ = writeln!(out, "0,0,{}", z.origin_multiplicity());
    }
    for (a, m) in z.entries() {
        let _ = writeln!(out, "{},{},{}", a.re, a.im, m);
    }
    out
}

/// Serialize to the JSON alternative.
pub fn zero_list_to_json(z: &PointDistribution) -> serde_json::Value {
    let mut rows = Vec::new();
    if z.origin_multiplicity() > 0 {
        rows.push(ZeroRow {
            re: 0.0,
            im: 0.0,
            mult: z.origin_multiplicity(),
        });
    }
    for (a, m) in z.entries() {
        rows.push(ZeroRow {
            re: a.re,
            im: a.im,
            mult: *m,
        });
    }
    serde_json::to_value(rows).expect("zero rows serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_roundtrip_is_idempotent_after_normalization() {
        let raw = "re,im,multiplicity\n3,0,1\n1,0,2\n1,0,1\n1e-15,0,1\n";
        let z = parse_zero_csv(raw).unwrap();
        // sorted by modulus, duplicates merged, tiny point folded to origin
        assert_eq!(z.origin_multiplicity(), 1);
        assert_eq!(z.entries().len(), 2);
        assert_eq!(z.entries()[0].1, 3);
        let once = zero_list_to_csv(&z);
        let twice = zero_list_to_csv(&parse_zero_csv(&once).unwrap());
        assert_eq!(once, twice);
    }

    #[test]
    fn header_and_field_errors_carry_line_numbers() {
        assert!(matches!(
            parse_zero_csv("x,y,m\n"),
            Err(ZeroListError::Csv { line: 1, .. })
        ));
        assert!(matches!(
            parse_zero_csv("re,im,multiplicity\n1,2\n"),
            Err(ZeroListError::Csv { line: 2, .. })
        ));
        assert!(matches!(
            parse_zero_csv("re,im,multiplicity\n1,2,duck\n"),
            Err(ZeroListError::Csv { line: 2, .. })
        ));
    }
}
