//! `key = value` specimen files with `[section]` headers.
//!
//! Units live in the key names; no unit inference is done. Unknown
//! sections and keys are rejected, and every diagnostic names its line.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use csjacket_core::materials::{CouponClass, DEFAULT_K_D};
use csjacket_core::{ConcreteState, CorrugationProfile, GroutProperties, JacketedSection, Specimen, SteelProperties};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Number,
    Text,
    Bool,
}

struct KeySpec {
    section: &'static str,
    key: &'static str,
    kind: Kind,
    required: bool,
}

const fn k(section: &'static str, key: &'static str, kind: Kind, required: bool) -> KeySpec {
    KeySpec {
        section,
        key,
        kind,
        required,
    }
}

use Kind::{Bool, Number, Text};

const STEEL_SECTIONS: [&str; 3] = ["jacket_steel", "angle_steel", "rebar_steel"];

static SCHEMA: &[KeySpec] = &[
    k("section", "B_mm", Number, true),
    k("section", "b_mm", Number, true),
    k("section", "b_rc_mm", Number, true),
    k("section", "t_g_mm", Number, true),
    k("section", "corner_span_mm", Number, true),
    k("section", "eta_cs", Number, false),
    k("section", "corrugation_wavelength_mm", Number, true),
    k("section", "corrugation_depth_mm", Number, true),
    k("section", "corrugation_radius_mm", Number, false),
    k("section", "t_cs_mm", Number, true),
    k("concrete", "f_c_MPa", Number, true),
    k("concrete", "sigma0_ratio", Number, true),
    k("concrete", "k_d", Number, false),
    k("grout", "f_cg_MPa", Number, true),
    k("jacket_steel", "f_y_MPa", Number, true),
    k("jacket_steel", "f_u_MPa", Number, true),
    k("jacket_steel", "E_s_MPa", Number, false),
    k("jacket_steel", "mu_s", Number, false),
    k("jacket_steel", "f_p_MPa", Number, false),
    k("angle_steel", "f_y_MPa", Number, true),
    k("angle_steel", "f_u_MPa", Number, true),
    k("angle_steel", "E_s_MPa", Number, false),
    k("angle_steel", "mu_s", Number, false),
    k("angle_steel", "f_p_MPa", Number, false),
    k("angle_steel", "t_mm", Number, true),
    k("angle_steel", "A_L_mm2", Number, true),
    k("rebar_steel", "f_y_MPa", Number, true),
    k("rebar_steel", "f_u_MPa", Number, true),
    k("rebar_steel", "E_s_MPa", Number, false),
    k("rebar_steel", "mu_s", Number, false),
    k("rebar_steel", "f_p_MPa", Number, false),
    k("rebar_steel", "d_mm", Number, true),
    k("rebar_steel", "A_b_mm2", Number, true),
    k("analysis", "name", Text, true),
    k("analysis", "measured_Nu_kN", Number, false),
    k("analysis", "sigma_h_MPa", Number, false),
    k("analysis", "deduct_rebar_area", Bool, false),
    k("analysis", "A_cs_mm2", Number, false),
];

fn lookup(section: &str, key: &str) -> Option<&'static KeySpec> {
    SCHEMA.iter().find(|s| s.section == section && s.key == key)
}

#[derive(Debug, Clone, PartialEq)]
struct Entry {
    value: String,
    line: usize,
}

/// Parsed but not yet interpreted specimen file.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecDocument {
    path: PathBuf,
    entries: BTreeMap<(String, String), Entry>,
}

fn unit_suffix(s: &str) -> bool {
    matches!(s, "mm" | "mm2" | "MPa" | "kN")
}

impl SpecDocument {
    pub fn parse(path: impl Into<PathBuf>, text: &str) -> CliResult<Self> {
        let path = path.into();
        let mut entries = BTreeMap::new();
        let mut section: Option<String> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split(['#', ';']).next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(rest) = content.strip_prefix('[') {
                let name = rest
                    .strip_suffix(']')
                    .ok_or_else(|| CliError::parse(&path, line, format!("malformed section header `{content}`")))?
                    .trim();
                if !SCHEMA.iter().any(|s| s.section == name) {
                    return Err(CliError::parse(&path, line, format!("unknown section [{name}]")));
                }
                section = Some(name.to_string());
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| CliError::parse(&path, line, format!("expected `key = value`, found `{content}`")))?;
            let (key, value) = (key.trim(), value.trim());
            let sec = section
                .as_deref()
                .ok_or_else(|| CliError::parse(&path, line, format!("key `{key}` appears before any [section]")))?;
            let spec = lookup(sec, key)
                .ok_or_else(|| CliError::parse(&path, line, format!("unknown key `{key}` in [{sec}]")))?;
            if value.is_empty() {
                return Err(CliError::parse(&path, line, format!("key `{key}` has no value")));
            }
            match spec.kind {
                Kind::Number => {
                    let v: f64 = value
                        .parse()
                        .map_err(|_| CliError::parse(&path, line, format!("key `{key}`: `{value}` is not a number")))?;
                    if !v.is_finite() {
                        return Err(CliError::parse(
                            &path,
                            line,
                            format!("key `{key}`: value must be finite"),
                        ));
                    }
                }
                Kind::Bool => {
                    if value != "true" && value != "false" {
                        return Err(CliError::parse(
                            &path,
                            line,
                            format!("key `{key}`: expected true or false"),
                        ));
                    }
                }
                Kind::Text => {}
            }
            let slot = (sec.to_string(), key.to_string());
            if let Some(prev) = entries.get(&slot) {
                let prev: &Entry = prev;
                return Err(CliError::parse(
                    &path,
                    line,
                    format!("key `{key}` in [{sec}] already set on line {}", prev.line),
                ));
            }
            entries.insert(
                slot,
                Entry {
                    value: value.to_string(),
                    line,
                },
            );
        }
        let doc = Self { path, entries };
        for s in SCHEMA.iter().filter(|s| s.required) {
            if !doc.entries.contains_key(&(s.section.to_string(), s.key.to_string())) {
                let last = text.lines().count().max(1);
                return Err(CliError::parse(
                    &doc.path,
                    last,
                    format!("missing required key `{}` in [{}]", s.key, s.section),
                ));
            }
        }
        Ok(doc)
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        Self::parse(path, &text)
    }

    fn entry(&self, section: &str, key: &str) -> Option<&Entry> {
        self.entries.get(&(section.to_string(), key.to_string()))
    }

    fn number(&self, section: &str, key: &str) -> Option<f64> {
        // values were checked while parsing
        self.entry(section, key)
            .map(|e| e.value.parse().expect("validated number"))
    }

    fn required(&self, section: &str, key: &str) -> f64 {
        self.number(section, key).expect("validated required key")
    }

    fn line_of(&self, section: &str) -> usize {
        self.entries
            .iter()
            .filter(|((s, _), _)| s == section)
            .map(|(_, e)| e.line)
            .min()
            .unwrap_or(1)
    }

    /// Resolves `section.key`, or a bare key (unit suffix optional) when it
    /// names exactly one numeric schema entry.
    pub fn resolve_key(&self, name: &str) -> CliResult<(&'static str, &'static str)> {
        let candidates: Vec<&KeySpec> = match name.split_once('.') {
            Some((sec, key)) => SCHEMA
                .iter()
                .filter(|s| s.section == sec && key_matches(s.key, key))
                .collect(),
            None => SCHEMA.iter().filter(|s| key_matches(s.key, name)).collect(),
        };
        match candidates.as_slice() {
            [one] if one.kind == Kind::Number => Ok((one.section, one.key)),
            [one] => Err(CliError::Usage(format!(
                "key `{}.{}` is not numeric",
                one.section, one.key
            ))),
            [] => Err(CliError::Usage(format!("unknown key `{name}`"))),
            many => Err(CliError::Usage(format!(
                "key `{name}` is ambiguous: {}",
                many.iter()
                    .map(|s| format!("{}.{}", s.section, s.key))
                    .collect::<Vec<_>>()
                    .join(", ")
            ))),
        }
    }

    /// Overrides a numeric value.
    pub fn set_number(&mut self, section: &str, key: &str, value: f64) {
        let line = self.entry(section, key).map_or(0, |e| e.line);
        self.entries.insert(
            (section.to_string(), key.to_string()),
            Entry {
                value: format!("{value:?}"),
                line,
            },
        );
    }

    fn steel(&self, section: &str, class: CouponClass, size: f64) -> CliResult<SteelProperties> {
        let f_y = self.required(section, "f_y_MPa");
        let f_u = self.required(section, "f_u_MPa");
        let e_s = self
            .number(section, "E_s_MPa")
            .unwrap_or(csjacket_core::materials::DEFAULT_E_S);
        let mu_s = self
            .number(section, "mu_s")
            .unwrap_or(csjacket_core::materials::DEFAULT_MU_S);
        let f_p = self
            .number(section, "f_p_MPa")
            .unwrap_or(f_y * csjacket_core::materials::DEFAULT_FP_RATIO);
        SteelProperties::new(class, size, f_y, f_u, e_s, mu_s, f_p).map_err(|e| self.domain_error(section, e))
    }

    fn domain_error(&self, section: &str, e: csjacket_core::Error) -> CliError {
        CliError::Domain {
            path: self.path.clone(),
            line: self.line_of(section),
            message: format!("[{section}]: {e}"),
        }
    }

    /// Builds the specimen. Out-of-domain values are reported against the
    /// section they came from.
    pub fn specimen(&self) -> CliResult<Specimen> {
        let s = "section";
        let t_cs = self.required(s, "t_cs_mm");
        let wavelength = self.required(s, "corrugation_wavelength_mm");
        let depth = self.required(s, "corrugation_depth_mm");
        let profile = match self.number(s, "corrugation_radius_mm") {
            Some(r) => CorrugationProfile::with_bend_radius(wavelength, depth, t_cs, r),
            None => CorrugationProfile::new(wavelength, depth, t_cs),
        }
        .map_err(|e| self.domain_error(s, e))?;
        let section = JacketedSection {
            outer_width: self.required(s, "B_mm"),
            chord_span: self.required(s, "b_mm"),
            core_width: self.required(s, "b_rc_mm"),
            grout_thickness: self.required(s, "t_g_mm"),
            corrugation: profile,
            corner_span: self.required(s, "corner_span_mm"),
            angle_area: self.required("angle_steel", "A_L_mm2"),
            rebar_area: self.required("rebar_steel", "A_b_mm2"),
            eta_cs: self.number(s, "eta_cs").unwrap_or(2.0),
            deduct_rebar_area: self
                .entry("analysis", "deduct_rebar_area")
                .is_none_or(|e| e.value == "true"),
        };
        section.validate().map_err(|e| self.domain_error(s, e))?;
        let concrete = ConcreteState::from_stress_ratio(
            self.required("concrete", "f_c_MPa"),
            self.required("concrete", "sigma0_ratio"),
            self.number("concrete", "k_d").unwrap_or(DEFAULT_K_D),
        )
        .map_err(|e| self.domain_error("concrete", e))?;
        let grout =
            GroutProperties::new(self.required("grout", "f_cg_MPa")).map_err(|e| self.domain_error("grout", e))?;
        let specimen = Specimen {
            name: self
                .entry("analysis", "name")
                .map(|e| e.value.clone())
                .unwrap_or_default(),
            section,
            concrete,
            grout,
            jacket_steel: self.steel("jacket_steel", CouponClass::CorrugatedSegment, t_cs)?,
            angle_steel: self.steel("angle_steel", CouponClass::Angle, self.required("angle_steel", "t_mm"))?,
            rebar_steel: self.steel(
                "rebar_steel",
                CouponClass::LongitudinalBar,
                self.required("rebar_steel", "d_mm"),
            )?,
            jacket_area_override: self.number("analysis", "A_cs_mm2"),
            measured_nu: self.number("analysis", "measured_Nu_kN"),
            sigma_h_ultimate: self.number("analysis", "sigma_h_MPa"),
        };
        specimen.validate().map_err(|e| self.domain_error("analysis", e))?;
        Ok(specimen)
    }
}

fn key_matches(schema_key: &str, wanted: &str) -> bool {
    schema_key == wanted
        || schema_key
            .strip_prefix(wanted)
            .and_then(|rest| rest.strip_prefix('_'))
            .is_some_and(unit_suffix)
}

/// Writes a specimen in the file format read by [`SpecDocument`].
pub fn write_specimen(s: &Specimen) -> String {
    let mut out = String::new();
    let sec = &s.section;
    let p = &sec.corrugation;
    let _ = writeln!(out, "[section]");
    let _ = writeln!(out, "B_mm = {:?}", sec.outer_width);
    let _ = writeln!(out, "b_mm = {:?}", sec.chord_span);
    let _ = writeln!(out, "b_rc_mm = {:?}", sec.core_width);
    let _ = writeln!(out, "t_g_mm = {:?}", sec.grout_thickness);
    let _ = writeln!(out, "corner_span_mm = {:?}", sec.corner_span);
    let _ = writeln!(out, "eta_cs = {:?}", sec.eta_cs);
    let _ = writeln!(out, "corrugation_wavelength_mm = {:?}", p.wavelength);
    let _ = writeln!(out, "corrugation_depth_mm = {:?}", p.depth);
    let _ = writeln!(out, "corrugation_radius_mm = {:?}", p.bend_radius);
    let _ = writeln!(out, "t_cs_mm = {:?}", p.thickness);
    let _ = writeln!(out, "\n[concrete]");
    let _ = writeln!(out, "f_c_MPa = {:?}", s.concrete.f_c);
    let _ = writeln!(out, "sigma0_ratio = {:?}", s.concrete.sigma0_ratio);
    let _ = writeln!(out, "k_d = {:?}", s.concrete.k_d);
    let _ = writeln!(out, "\n[grout]");
    let _ = writeln!(out, "f_cg_MPa = {:?}", s.grout.f_cg);
    for (name, steel) in STEEL_SECTIONS
        .iter()
        .zip([&s.jacket_steel, &s.angle_steel, &s.rebar_steel])
    {
        let _ = writeln!(out, "\n[{name}]");
        let _ = writeln!(out, "f_y_MPa = {:?}", steel.f_y);
        let _ = writeln!(out, "f_u_MPa = {:?}", steel.f_u);
        let _ = writeln!(out, "E_s_MPa = {:?}", steel.e_s);
        let _ = writeln!(out, "mu_s = {:?}", steel.mu_s);
        let _ = writeln!(out, "f_p_MPa = {:?}", steel.f_p);
        match *name {
            "angle_steel" => {
                let _ = writeln!(out, "t_mm = {:?}", steel.thickness_or_diameter);
                let _ = writeln!(out, "A_L_mm2 = {:?}", sec.angle_area);
            }
            "rebar_steel" => {
                let _ = writeln!(out, "d_mm = {:?}", steel.thickness_or_diameter);
                let _ = writeln!(out, "A_b_mm2 = {:?}", sec.rebar_area);
            }
            _ => {}
        }
    }
    let _ = writeln!(out, "\n[analysis]");
    let _ = writeln!(out, "name = {}", s.name);
    if let Some(v) = s.measured_nu {
        let _ = writeln!(out, "measured_Nu_kN = {v:?}");
    }
    if let Some(v) = s.sigma_h_ultimate {
        let _ = writeln!(out, "sigma_h_MPa = {v:?}");
    }
    let _ = writeln!(out, "deduct_rebar_area = {}", sec.deduct_rebar_area);
    if let Some(v) = s.jacket_area_override {
        let _ = writeln!(out, "A_cs_mm2 = {v:?}");
    }
    out
}
