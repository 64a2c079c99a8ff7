//! CSV rows read and written by the tool.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// Header of a gauge trace file.
pub const TRACE_HEADER: [&str; 4] = ["load_kN", "location", "eps_h", "eps_v"];
/// Header of a load-displacement file.
pub const CURVE_HEADER: [&str; 2] = ["displacement_mm", "load_kN"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    #[serde(rename = "load_kN")]
    pub load_kn: f64,
    pub location: String,
    pub eps_h: f64,
    pub eps_v: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub displacement_mm: f64,
    #[serde(rename = "load_kN")]
    pub load_kn: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StressRow {
    #[serde(rename = "load_kN")]
    pub load_kn: f64,
    pub location: String,
    pub sigma_h: f64,
    pub sigma_v: f64,
    pub sigma_mises: f64,
    pub stage: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CapacityRow {
    pub specimen: String,
    pub model: String,
    #[serde(rename = "sigma_h_MPa")]
    pub sigma_h: f64,
    pub sigma_h_source: String,
    #[serde(rename = "f_r_MPa")]
    pub f_r: f64,
    #[serde(rename = "f_c_damaged_MPa")]
    pub f_c_damaged: f64,
    #[serde(rename = "f_cc_MPa")]
    pub f_cc: f64,
    #[serde(rename = "f_cc_grout_MPa")]
    pub f_cc_grout: f64,
    #[serde(rename = "A1_mm2")]
    pub a1: f64,
    #[serde(rename = "A2_mm2")]
    pub a2: f64,
    #[serde(rename = "A3_mm2")]
    pub a3: f64,
    #[serde(rename = "A4_mm2")]
    pub a4: f64,
    #[serde(rename = "A_corner_mm2")]
    pub a_corner: f64,
    #[serde(rename = "confined_core_kN")]
    pub confined_core: f64,
    #[serde(rename = "unconfined_core_kN")]
    pub unconfined_core: f64,
    #[serde(rename = "confined_grout_kN")]
    pub confined_grout: f64,
    #[serde(rename = "unconfined_grout_kN")]
    pub unconfined_grout: f64,
    #[serde(rename = "angle_kN")]
    pub angle: f64,
    #[serde(rename = "rebar_kN")]
    pub rebar: f64,
    #[serde(rename = "N_u_pred_kN")]
    pub n_u_pred: f64,
    #[serde(rename = "N_0_kN")]
    pub nominal: f64,
    #[serde(rename = "SI")]
    pub strength_index: f64,
    pub zeta: f64,
    #[serde(rename = "measured_Nu_kN")]
    pub measured_nu: Option<f64>,
    pub error_vs_measured: Option<f64>,
    pub fit_clamp: Option<String>,
    pub warnings: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationRow {
    pub specimen: String,
    #[serde(rename = "sigma_h_MPa")]
    pub sigma_h: f64,
    pub sigma_h_source: String,
    pub fit_clamp: Option<String>,
    #[serde(rename = "N_u_pred_kN")]
    pub predicted: f64,
    #[serde(rename = "N_u_measured_kN")]
    pub measured: f64,
    #[serde(rename = "residual_kN")]
    pub residual: f64,
    pub rel_error: f64,
    #[serde(rename = "f_r_MPa")]
    pub f_r: f64,
    #[serde(rename = "f_cc_MPa")]
    pub f_cc: f64,
    #[serde(rename = "N_0_kN")]
    pub nominal: f64,
    pub zeta: f64,
    pub xi: f64,
    pub warnings: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub key: String,
    pub value: f64,
    #[serde(rename = "N_u_pred_kN")]
    pub n_u_pred: f64,
    #[serde(rename = "f_r_MPa")]
    pub f_r: f64,
    #[serde(rename = "f_cc_MPa")]
    pub f_cc: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndicesRow {
    pub specimen: String,
    #[serde(rename = "N_u_kN")]
    pub n_u: f64,
    pub n_u_source: String,
    #[serde(rename = "N_0_kN")]
    pub nominal: f64,
    #[serde(rename = "SI")]
    pub strength_index: f64,
    pub zeta: f64,
    pub yield_displacement_mm: Option<f64>,
    #[serde(rename = "yield_load_kN")]
    pub yield_load: Option<f64>,
    #[serde(rename = "peak_load_kN")]
    pub peak_load: Option<f64>,
    pub d85_mm: Option<f64>,
    #[serde(rename = "DI")]
    pub ductility_index: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelRow {
    pub id: String,
    pub kind: String,
    pub formula: String,
    pub description: String,
    pub validity: String,
}

/// Serializes rows with a header line. Floats use shortest round-trip form.
pub fn write_csv<T: Serialize>(rows: &[T]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Output(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}

/// Reads rows from CSV text, checking the header when `expected` is given.
/// Line numbers in errors are 1-based and count the header.
pub fn read_csv_str<T: DeserializeOwned>(path: &Path, text: &str, expected: Option<&[&str]>) -> CliResult<Vec<T>> {
    let mut r = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = r
        .headers()
        .map_err(|e| CliError::parse(path, 1, e.to_string()))?
        .clone();
    if let Some(expected) = expected {
        if headers.iter().ne(expected.iter().copied()) {
            return Err(CliError::parse(
                path,
                1,
                format!(
                    "expected header `{}`, found `{}`",
                    expected.join(","),
                    headers.iter().collect::<Vec<_>>().join(",")
                ),
            ));
        }
    }
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            CliError::parse(path, line, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let row = rec
            .deserialize(Some(&headers))
            .map_err(|e| CliError::parse(path, line, e.to_string()))?;
        out.push((line, row));
    }
    Ok(out.into_iter().map(|(_, r)| r).collect())
}

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

pub fn read_csv<T: DeserializeOwned>(path: &Path, expected: Option<&[&str]>) -> CliResult<Vec<T>> {
    read_csv_str(path, &read_file(path)?, expected)
}

fn check_finite(path: &Path, row: usize, fields: &[(&str, f64)]) -> CliResult<()> {
    for (name, v) in fields {
        if !v.is_finite() {
            // header is line 1
            return Err(CliError::parse(
                path,
                row + 2,
                format!("`{name}` must be finite, found {v}"),
            ));
        }
    }
    Ok(())
}

pub fn read_trace_str(path: &Path, text: &str) -> CliResult<Vec<TraceRow>> {
    let rows: Vec<TraceRow> = read_csv_str(path, text, Some(&TRACE_HEADER))?;
    for (i, r) in rows.iter().enumerate() {
        check_finite(
            path,
            i,
            &[("load_kN", r.load_kn), ("eps_h", r.eps_h), ("eps_v", r.eps_v)],
        )?;
    }
    Ok(rows)
}

pub fn read_trace(path: &Path) -> CliResult<Vec<TraceRow>> {
    read_trace_str(path, &read_file(path)?)
}

pub fn read_curve_str(path: &Path, text: &str) -> CliResult<Vec<CurveRow>> {
    let rows: Vec<CurveRow> = read_csv_str(path, text, Some(&CURVE_HEADER))?;
    for (i, r) in rows.iter().enumerate() {
        check_finite(
            path,
            i,
            &[("displacement_mm", r.displacement_mm), ("load_kN", r.load_kn)],
        )?;
    }
    Ok(rows)
}

pub fn read_curve(path: &Path) -> CliResult<Vec<CurveRow>> {
    read_curve_str(path, &read_file(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_header_is_checked() {
        let err = read_trace_str(Path::new("t.csv"), "load,location,eps_h,eps_v\n").unwrap_err();
        assert!(err.to_string().starts_with("t.csv:1:"), "{err}");
    }

    #[test]
    fn bad_value_cites_line() {
        let text = "load_kN,location,eps_h,eps_v\n1,crest,0,0\n2,crest,abc,0\n";
        let err = read_trace_str(Path::new("t.csv"), text).unwrap_err();
        assert!(err.to_string().starts_with("t.csv:3:"), "{err}");
        let text = "load_kN,location,eps_h,eps_v\n1,crest,0,0\n2,crest,NaN,0\n";
        let err = read_trace_str(Path::new("t.csv"), text).unwrap_err();
        assert!(err.to_string().starts_with("t.csv:3:"), "{err}");
    }

    #[test]
    fn empty_trace_has_no_rows() {
        assert!(read_trace_str(Path::new("t.csv"), "load_kN,location,eps_h,eps_v\n")
            .unwrap()
            .is_empty());
    }

    #[test]
    fn optional_fields_round_trip() {
        let rows = vec![IndicesRow {
            specimen: "x".into(),
            n_u: 1.0 / 3.0,
            n_u_source: "measured".into(),
            nominal: 2.0,
            strength_index: 0.1 + 0.2,
            zeta: 1e-300,
            yield_displacement_mm: None,
            yield_load: Some(5.0),
            peak_load: None,
            d85_mm: Some(f64::MIN_POSITIVE),
            ductility_index: None,
        }];
        let text = write_csv(&rows).unwrap();
        let back: Vec<IndicesRow> = read_csv_str(Path::new("x"), &text, None).unwrap();
        assert_eq!(back, rows);
    }
}
