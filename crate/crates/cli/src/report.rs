//! Per-radius report table and its two serializations.
//!
//! The CSV schema is fixed: the radius column is `r` and the
//! characteristic columns are named exactly `lnM,C,B,T,NZ,bound_ln`, in
//! that order, with empty fields (never NaN) where a quantity is not
//! computed; any extra series a command adds (residuals, margins) follow
//! in sorted order. JSON mirrors the whole report one-to-one under
//! `schema_version` 1.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::config::RunConfig;

pub const SCHEMA_VERSION: u32 = 1;

/// The six schema-pinned column names in their fixed order.
pub const PINNED_COLUMNS: [&str; 6] = ["lnM", "C", "B", "T", "NZ", "bound_ln"];

#[derive(Clone, Debug, Serialize)]
pub struct Metadata {
    pub tool_version: String,
    /// Unix seconds; honors SOURCE_DATE_EPOCH so runs can be reproduced
    /// byte for byte.
    pub timestamp_unix: u64,
    pub config: RunConfig,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    pub schema_version: u32,
    pub descriptor: String,
    pub radii: Vec<f64>,
    pub columns: BTreeMap<String, Vec<Option<f64>>>,
    pub metadata: Metadata,
}

fn now_unix() -> u64 {
    if let Ok(v) = std::env::var("SOURCE_DATE_EPOCH") {
        if let Ok(t) = v.parse() {
            return t;
        }
    }
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

impl GrowthReport {
    pub fn new(descriptor: impl Into<String>, radii: Vec<f64>, config: &RunConfig) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            descriptor: descriptor.into(),
            radii,
            columns: BTreeMap::new(),
            metadata: Metadata {
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
                timestamp_unix: now_unix(),
                config: config.clone(),
            },
        }
    }

    /// Add a series; its length must match the radii.
    pub fn set_column(&mut self, name: &str, values: Vec<Option<f64>>) {
        assert_eq!(
            values.len(),
            self.radii.len(),
            "column {name} length mismatch"
        );
        self.columns.insert(name.to_string(), values);
    }

    /// Column order for serialization: the pinned six, then extras sorted.
    fn ordered_names(&self) -> Vec<&str> {
        let mut names: Vec<&str> = PINNED_COLUMNS.to_vec();
        for k in self.columns.keys() {
            if !PINNED_COLUMNS.contains(&k.as_str()) {
                names.push(k);
            }
        }
        names
    }

    pub fn to_csv(&self) -> String {
        let names = self.ordered_names();
        let mut out = String::from("r");
        for n in &names {
            out.push(',');
            out.push_str(n);
        }
        out.push('\n');
        for (i, r) in self.radii.iter().enumerate() {
            out.push_str(&format_number(*r));
            for n in &names {
                out.push(',');
                if let Some(Some(v)) = self.columns.get(*n).map(|col| col[i]) {
                    out.push_str(&format_number(v));
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Shortest round-trip form: positional notation in the human range,
/// exponent notation outside it. The serializer never emits NaN or
/// infinities (they would have been left as empty fields upstream).
pub fn format_number(v: f64) -> String {
    debug_assert!(v.is_finite(), "non-finite value reached serialization");
    if v == 0.0 {
        // covers -0.0, which Display would print with its sign
        return "0".to_string();
    }
    let a = v.abs();
    if (1e-4..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config() -> RunConfig {
        RunConfig::default()
    }

    #[test]
    fn csv_has_pinned_header_and_empty_fields() {
        let mut rep = GrowthReport::new("exp", vec![1.0, 10.0], &config());
        rep.set_column("lnM", vec![Some(1.0), Some(10.0)]);
        rep.set_column("C", vec![Some(0.0), None]);
        let csv = rep.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "r,lnM,C,B,T,NZ,bound_ln");
        assert_eq!(lines.next().unwrap(), "1,1,0,,,,");
        assert_eq!(lines.next().unwrap(), "10,10,,,,,");
    }

    #[test]
    fn extra_columns_follow_the_pinned_ones() {
        let mut rep = GrowthReport::new("exp", vec![2.0], &config());
        rep.set_column("residual", vec![Some(3e-9)]);
        rep.set_column("NZ", vec![Some(0.5)]);
        let csv = rep.to_csv();
        assert!(csv.starts_with("r,lnM,C,B,T,NZ,bound_ln,residual\n"));
        assert!(csv.contains("2,,,,,0.5,,3e-9\n"));
    }

    #[test]
    fn json_mirror_has_schema_version() {
        let rep = GrowthReport::new("exp", vec![1.0], &config());
        let v: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["descriptor"], "exp");
        assert!(v["metadata"]["config"]["rel_tol"].is_number());
    }
}
