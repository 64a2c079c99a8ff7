//! The ten tested specimens, their steel coupons, and the harness that
//! checks the capacity model against them.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::capacity::{
    confinement_factor, fit_hoop_stress, nominal_capacity, ultimate_capacity, ultimate_capacity_at, FitClamp,
    HoopStressSource, Specimen,
};
use crate::error::{Error, Result};
use crate::geometry::{CorrugationProfile, JacketedSection};
use crate::materials::{ConcreteState, CouponClass, GroutProperties, SteelProperties, DEFAULT_K_D};
use crate::scalar::{lit, Real};
use crate::strength_models::StrengthModel;

/// Ultimate load of the unstrengthened column, kN.
pub const RC_BASELINE_NU: f64 = 2117.7;
/// Grout prism strength, MPa.
pub const GROUT_STRENGTH: f64 = 37.1;
/// Width of the original RC column, mm.
pub const CORE_WIDTH: f64 = 200.0;
pub const CORRUGATION_WAVELENGTH: f64 = 68.0;
pub const CORRUGATION_DEPTH: f64 = 13.0;
/// Leg of the corner angle, mm.
pub const ANGLE_LEG: f64 = 30.0;
pub const REBAR_COUNT: f64 = 4.0;
pub const REBAR_DIAMETER: f64 = 12.0;
/// Hoop stresses of the fixed-policy sweep, MPa.
pub const SWEEP_HOOP_STRESSES: [f64; 7] = [0.0, 25.0, 50.0, 75.0, 100.0, 150.0, 200.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Connection {
    A,
    B,
    C,
    D,
}

impl Connection {
    pub const ALL: [Connection; 4] = [Connection::A, Connection::B, Connection::C, Connection::D];

    pub fn as_str(self) -> &'static str {
        match self {
            Connection::A => "A",
            Connection::B => "B",
            Connection::C => "C",
            Connection::D => "D",
        }
    }

    /// Specimen whose tabulated ξ fixes the corner steel area of this type.
    pub fn reference_specimen(self) -> &'static str {
        match self {
            Connection::A => "CS-A-2-0.4",
            Connection::B => "CS-B-2-0.4",
            Connection::C => "CS-C-2-0.4",
            Connection::D => "CS-D-2-0.4",
        }
    }
}

/// One specimen row: the parameter table joined with the index table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpecimenRecord {
    pub no: u32,
    pub name: &'static str,
    /// Plate thickness, mm.
    pub t_cs: Option<f64>,
    /// Grout gap, mm.
    pub t_g: Option<f64>,
    /// Outer width, mm.
    pub b_outer: f64,
    /// Height, mm.
    pub length: f64,
    /// Pre-load as a fraction of `f_c`.
    pub sigma0_ratio: Option<f64>,
    /// Prism strength, MPa.
    pub f_c: f64,
    /// Measured ultimate load, kN.
    pub n_u: f64,
    pub connection: Option<Connection>,
    /// Steel ratio α, percent.
    pub alpha_percent: f64,
    pub xi: f64,
    /// Nominal capacity, kN.
    pub n_0: Option<f64>,
    /// Ultimate load as repeated in the index table, kN.
    pub n_u_index: f64,
    pub si: f64,
    pub di: f64,
}

#[allow(clippy::too_many_arguments)]
const fn row(
    no: u32,
    name: &'static str,
    t_cs: f64,
    t_g: f64,
    b_outer: f64,
    sigma0_ratio: f64,
    f_c: f64,
    n_u: f64,
    connection: Connection,
    alpha_percent: f64,
    xi: f64,
    n_0: f64,
    si: f64,
    di: f64,
) -> SpecimenRecord {
    SpecimenRecord {
        no,
        name,
        t_cs: Some(t_cs),
        t_g: Some(t_g),
        b_outer,
        length: 748.0,
        sigma0_ratio: Some(sigma0_ratio),
        f_c,
        n_u,
        connection: Some(connection),
        alpha_percent,
        xi,
        n_0: Some(n_0),
        n_u_index: n_u,
        si,
        di,
    }
}

use Connection::{A, B, C, D};

pub static SPECIMENS: [SpecimenRecord; 10] = [
    SpecimenRecord {
        no: 1,
        name: "RC",
        t_cs: None,
        t_g: None,
        b_outer: 200.0,
        length: 748.0,
        sigma0_ratio: None,
        f_c: 44.5,
        n_u: 2117.7,
        connection: None,
        alpha_percent: 0.0,
        xi: 0.0,
        n_0: None,
        n_u_index: 2117.7,
        si: 1.0,
        di: 1.86,
    },
    row(
        2,
        "CS-A-2-0.4",
        2.0,
        14.0,
        241.0,
        0.4,
        44.5,
        2957.4,
        A,
        5.45,
        0.45,
        2733.5,
        1.082,
        2.95,
    ),
    row(
        3,
        "CS-B-2-0.4",
        2.0,
        21.5,
        256.0,
        0.4,
        44.5,
        3101.1,
        B,
        4.25,
        0.38,
        2845.2,
        1.090,
        2.21,
    ),
    row(
        4,
        "CS-C-2-0.4",
        2.0,
        17.0,
        247.0,
        0.4,
        44.5,
        3125.6,
        C,
        4.88,
        0.43,
        2767.1,
        1.130,
        1.70,
    ),
    row(
        5,
        "CS-D-1.6-0.4",
        1.6,
        22.0,
        257.0,
        0.4,
        54.9,
        3361.3,
        D,
        3.64,
        0.24,
        3264.2,
        1.030,
        2.59,
    ),
    row(
        6,
        "CS-D-2.7-0.4",
        2.7,
        22.0,
        257.0,
        0.4,
        54.9,
        3314.0,
        D,
        5.23,
        0.42,
        3264.2,
        1.015,
        2.43,
    ),
    row(
        7,
        "CS-D-2-0.4",
        2.0,
        22.0,
        257.0,
        0.4,
        54.9,
        3543.4,
        D,
        4.22,
        0.32,
        3264.2,
        1.086,
        2.25,
    ),
    row(
        8,
        "CS-D-2-0.6a",
        2.0,
        22.0,
        257.0,
        0.6,
        54.9,
        3365.8,
        D,
        4.22,
        0.32,
        3249.4,
        1.036,
        1.91,
    ),
    row(
        9,
        "CS-D-2-0.6b",
        2.0,
        22.0,
        257.0,
        0.6,
        54.9,
        3412.9,
        D,
        4.22,
        0.32,
        3249.4,
        1.050,
        2.14,
    ),
    row(
        10,
        "CS-D-2-1.0",
        2.0,
        22.0,
        257.0,
        1.0,
        44.5,
        2850.9,
        D,
        4.22,
        0.39,
        2821.7,
        1.010,
        3.51,
    ),
];

/// Measured coupon strengths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CouponRecord {
    pub class: CouponClass,
    /// Thickness or diameter, mm.
    pub size: f64,
    pub f_y: f64,
    pub f_u: f64,
}

const fn coupon_row(class: CouponClass, size: f64, f_y: f64, f_u: f64) -> CouponRecord {
    CouponRecord { class, size, f_y, f_u }
}

pub static COUPONS: [CouponRecord; 9] = [
    coupon_row(CouponClass::CorrugatedSegment, 1.6, 332.81, 356.97),
    coupon_row(CouponClass::FlatSegment, 1.6, 281.34, 375.36),
    coupon_row(CouponClass::CorrugatedSegment, 2.0, 389.42, 437.31),
    coupon_row(CouponClass::FlatSegment, 2.0, 382.35, 438.60),
    coupon_row(CouponClass::CorrugatedSegment, 2.7, 413.99, 464.85),
    coupon_row(CouponClass::FlatSegment, 2.7, 401.71, 477.30),
    coupon_row(CouponClass::Angle, 4.0, 346.56, 523.27),
    coupon_row(CouponClass::LongitudinalBar, 12.0, 443.20, 589.46),
    coupon_row(CouponClass::Stirrup, 6.0, 355.20, 422.68),
];

pub fn load_dataset() -> &'static [SpecimenRecord] {
    &SPECIMENS
}

pub fn record(name: &str) -> Option<&'static SpecimenRecord> {
    SPECIMENS.iter().find(|r| r.name == name)
}

pub fn coupon(class: CouponClass, size: f64) -> Option<&'static CouponRecord> {
    COUPONS.iter().find(|c| c.class == class && c.size == size)
}

/// Strengthened rows only.
pub fn strengthened() -> impl Iterator<Item = &'static SpecimenRecord> {
    SPECIMENS.iter().filter(|r| r.connection.is_some())
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:?}"))
}

/// Line-per-record text form used for the checksum.
pub fn canonical_text() -> String {
    let mut out = String::new();
    for r in &SPECIMENS {
        let _ = writeln!(
            out,
            "{}|{}|{}|{}|{:?}|{:?}|{}|{:?}|{:?}|{}|{:?}|{:?}|{}|{:?}|{:?}|{:?}",
            r.no,
            r.name,
            opt(r.t_cs),
            opt(r.t_g),
            r.b_outer,
            r.length,
            opt(r.sigma0_ratio),
            r.f_c,
            r.n_u,
            r.connection.map_or("-", Connection::as_str),
            r.alpha_percent,
            r.xi,
            opt(r.n_0),
            r.n_u_index,
            r.si,
            r.di
        );
    }
    for c in &COUPONS {
        let _ = writeln!(out, "{}|{:?}|{:?}|{:?}", c.class.as_str(), c.size, c.f_y, c.f_u);
    }
    out
}

/// SHA-256 of [`canonical_text`], hex encoded.
pub fn dataset_checksum() -> String {
    hex::encode(Sha256::digest(canonical_text().as_bytes()))
}

fn steel<T: Real>(class: CouponClass, size: f64) -> Result<SteelProperties<T>> {
    let c =
        coupon(class, size).ok_or_else(|| Error::Config(format!("no {} coupon of size {size} mm", class.as_str())))?;
    SteelProperties::from_strengths(class, lit(c.size), lit(c.f_y), lit(c.f_u))
}

/// `A_b` of the four longitudinal bars, mm².
pub fn rebar_area() -> f64 {
    REBAR_COUNT * std::f64::consts::PI * REBAR_DIAMETER * REBAR_DIAMETER / 4.0
}

fn build_with_angle_area<T: Real>(rec: &SpecimenRecord, angle_area: T) -> Result<Specimen<T>> {
    let t_cs = rec.t_cs.unwrap_or(2.0);
    let profile = CorrugationProfile::new(lit(CORRUGATION_WAVELENGTH), lit(CORRUGATION_DEPTH), lit(t_cs))?;
    let jacketed = rec.connection.is_some();
    let section = JacketedSection {
        outer_width: lit(rec.b_outer),
        chord_span: lit(CORE_WIDTH),
        core_width: lit(CORE_WIDTH),
        grout_thickness: lit(rec.t_g.unwrap_or(0.0)),
        corrugation: profile,
        corner_span: if jacketed {
            JacketedSection::corner_span_from_angle_leg(lit(ANGLE_LEG), &profile)
        } else {
            T::zero()
        },
        angle_area,
        rebar_area: lit(rebar_area()),
        eta_cs: lit(2.0),
        deduct_rebar_area: true,
    };
    let concrete =
        ConcreteState::from_stress_ratio(lit(rec.f_c), lit(rec.sigma0_ratio.unwrap_or(0.0)), lit(DEFAULT_K_D))?;
    Ok(Specimen {
        name: rec.name.to_string(),
        section,
        concrete,
        grout: GroutProperties::new(lit(GROUT_STRENGTH))?,
        jacket_steel: steel(CouponClass::CorrugatedSegment, t_cs)?,
        angle_steel: steel(CouponClass::Angle, 4.0)?,
        rebar_steel: steel(CouponClass::LongitudinalBar, REBAR_DIAMETER)?,
        jacket_area_override: if jacketed { None } else { Some(T::zero()) },
        measured_nu: Some(lit(rec.n_u)),
        sigma_h_ultimate: None,
    })
}

/// Corner steel area of a connection type, back-calculated from the ξ of
/// its reference specimen, mm².
pub fn connection_angle_area<T: Real>(connection: Connection) -> Result<T> {
    let rec = record(connection.reference_specimen()).expect("reference specimen present");
    let s = build_with_angle_area::<T>(rec, T::zero())?;
    let den = s.concrete.f_c_damaged * s.concrete_area() + s.grout.f_cg * s.grout_area();
    let a_l = (lit::<T>(rec.xi) * den - s.jacket_steel.f_y * s.jacket_area()) / s.angle_steel.f_y;
    if !(a_l >= T::zero()) {
        return Err(Error::NotComputable(format!(
            "tabulated ξ of {} leaves a negative corner steel area",
            rec.name
        )));
    }
    Ok(a_l)
}

/// Full specimen description for a dataset row.
pub fn build_specimen<T: Real>(rec: &SpecimenRecord) -> Result<Specimen<T>> {
    let a_l = match rec.connection {
        Some(c) => connection_angle_area(c)?,
        None => T::zero(),
    };
    build_with_angle_area(rec, a_l)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrengtheningGain {
    pub name: &'static str,
    /// `N_u / N_u,RC - 1`.
    pub gain: f64,
}

/// Capacity gain of every row over the unstrengthened column.
pub fn strengthening_ratios() -> Vec<StrengtheningGain> {
    SPECIMENS
        .iter()
        .map(|r| StrengtheningGain {
            name: r.name,
            gain: r.n_u / RC_BASELINE_NU - 1.0,
        })
        .collect()
}

/// Smallest and largest gain among strengthened rows.
pub fn gain_range() -> (StrengtheningGain, StrengtheningGain) {
    let gains: Vec<StrengtheningGain> = strengthening_ratios().into_iter().filter(|g| g.name != "RC").collect();
    let min = gains
        .iter()
        .min_by(|a, b| a.gain.total_cmp(&b.gain))
        .cloned()
        .expect("rows");
    let max = gains
        .iter()
        .max_by(|a, b| a.gain.total_cmp(&b.gain))
        .cloned()
        .expect("rows");
    (min, max)
}

/// Largest admissible `|N_u/N_0 - SI|`.
pub const SI_TOLERANCE: f64 = 0.005;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsistencyRow {
    pub name: &'static str,
    pub ratio: f64,
    pub si: f64,
    pub delta: f64,
    pub ok: bool,
}

/// Recomputed `N_u/N_0` against the tabulated SI for strengthened rows.
pub fn si_consistency() -> Vec<ConsistencyRow> {
    strengthened()
        .filter_map(|r| {
            let n0 = r.n_0?;
            let ratio = r.n_u_index / n0;
            let delta = ratio - r.si;
            Some(ConsistencyRow {
                name: r.name,
                ratio,
                si: r.si,
                delta,
                ok: delta.abs() <= SI_TOLERANCE,
            })
        })
        .collect()
}

/// How the hoop stress at ultimate is chosen for each specimen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HoopStressPolicy {
    /// Back-calculated from the measured load.
    Fitted,
    /// One value for every specimen, MPa.
    Fixed(f64),
    /// The specimen's own value, or the documented default.
    PerSpecimen,
}

impl HoopStressPolicy {
    /// Parses `fitted`, `per_specimen` or `fixed:<MPa>`.
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "fitted" => Some(Self::Fitted),
            "per_specimen" | "per-specimen" => Some(Self::PerSpecimen),
            _ => {
                let v: f64 = s.strip_prefix("fixed:")?.parse().ok()?;
                (v.is_finite() && v >= 0.0).then_some(Self::Fixed(v))
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            Self::Fitted => "fitted".into(),
            Self::Fixed(v) => format!("fixed:{v}"),
            Self::PerSpecimen => "per_specimen".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpecimenValidation {
    pub name: String,
    pub sigma_h: f64,
    pub sigma_h_source: HoopStressSource,
    pub clamped: Option<FitClamp>,
    /// kN.
    pub predicted: f64,
    /// kN.
    pub measured: f64,
    /// `predicted - measured`, kN.
    pub residual: f64,
    /// `predicted / measured - 1`.
    pub rel_error: f64,
    pub f_r: f64,
    pub f_cc: f64,
    /// Recomputed nominal capacity, kN.
    pub nominal: f64,
    pub zeta: f64,
    pub xi: f64,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationSummary {
    pub model: StrengthModel,
    pub policy: HoopStressPolicy,
    pub rows: Vec<SpecimenValidation>,
    /// Mean of `|rel_error|` over the rows.
    pub mean_abs_error: f64,
    /// Fitted policy: mean of the fitted hoop stresses, MPa.
    pub mean_fitted_sigma_h: Option<f64>,
    /// Fitted policy: mean error when that mean is applied to every specimen.
    pub uniform_mean_error: Option<f64>,
    /// Fitted policy: mean error when each specimen uses the mean fitted
    /// hoop stress of the others.
    pub leave_one_out_error: Option<f64>,
    pub gain_min: StrengtheningGain,
    pub gain_max: StrengtheningGain,
    pub consistency: Vec<ConsistencyRow>,
}

fn row_for(
    spec: &Specimen<f64>,
    rec: &SpecimenRecord,
    model: StrengthModel,
    policy: HoopStressPolicy,
) -> Result<SpecimenValidation> {
    let (report, clamped) = match policy {
        HoopStressPolicy::Fitted => {
            let fit = fit_hoop_stress(spec, model)?;
            let mut r = ultimate_capacity_at(spec, model, fit.sigma_h)?;
            r.sigma_h_source = HoopStressSource::Fitted;
            (r, fit.clamped)
        }
        HoopStressPolicy::Fixed(v) => (ultimate_capacity_at(spec, model, v)?, None),
        HoopStressPolicy::PerSpecimen => (ultimate_capacity(spec, model)?, None),
    };
    let measured = rec.n_u;
    Ok(SpecimenValidation {
        name: rec.name.to_string(),
        sigma_h: report.sigma_h,
        sigma_h_source: report.sigma_h_source,
        clamped,
        predicted: report.n_u_pred,
        measured,
        residual: report.n_u_pred - measured,
        rel_error: report.n_u_pred / measured - 1.0,
        f_r: report.f_r,
        f_cc: report.f_cc,
        nominal: report.nominal,
        zeta: report.zeta,
        xi: rec.xi,
        warnings: report.warnings,
    })
}

fn mean_abs(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v.abs(), n + 1));
    sum / n as f64
}

fn strengthened_specimens() -> Result<Vec<(Specimen<f64>, &'static SpecimenRecord)>> {
    strengthened().map(|r| Ok((build_specimen::<f64>(r)?, r))).collect()
}

fn mean_error_at(
    specs: &[(Specimen<f64>, &'static SpecimenRecord)],
    model: StrengthModel,
    sigma_h: f64,
) -> Result<f64> {
    let errs = specs
        .par_iter()
        .map(|(s, r)| Ok(ultimate_capacity_at(s, model, sigma_h)?.n_u_pred / r.n_u - 1.0))
        .collect::<Result<Vec<f64>>>()?;
    Ok(mean_abs(errs.into_iter()))
}

/// Runs the capacity model over the nine strengthened specimens.
pub fn validate_capacity_model(model: StrengthModel, policy: HoopStressPolicy) -> Result<ValidationSummary> {
    let specs = strengthened_specimens()?;
    let rows = specs
        .par_iter()
        .map(|(s, r)| row_for(s, r, model, policy))
        .collect::<Result<Vec<_>>>()?;
    let mean_abs_error = mean_abs(rows.iter().map(|r| r.rel_error));
    let (mut mean_fitted_sigma_h, mut uniform_mean_error, mut leave_one_out_error) = (None, None, None);
    if policy == HoopStressPolicy::Fitted {
        let fitted: Vec<f64> = rows.iter().map(|r| r.sigma_h).collect();
        let n = fitted.len() as f64;
        let total: f64 = fitted.iter().sum();
        let mean = total / n;
        mean_fitted_sigma_h = Some(mean);
        uniform_mean_error = Some(mean_error_at(&specs, model, mean)?);
        let loo = specs
            .par_iter()
            .zip(fitted.par_iter())
            .map(|((s, r), own)| {
                let others = (total - own) / (n - 1.0);
                Ok(ultimate_capacity_at(s, model, others)?.n_u_pred / r.n_u - 1.0)
            })
            .collect::<Result<Vec<f64>>>()?;
        leave_one_out_error = Some(mean_abs(loo.into_iter()));
    }
    let (gain_min, gain_max) = gain_range();
    Ok(ValidationSummary {
        model,
        policy,
        rows,
        mean_abs_error,
        mean_fitted_sigma_h,
        uniform_mean_error,
        leave_one_out_error,
        gain_min,
        gain_max,
        consistency: si_consistency(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepPoint {
    pub sigma_h: f64,
    pub mean_abs_error: f64,
}

/// Mean error at each fixed hoop stress.
pub fn sweep_fixed_hoop_stress(model: StrengthModel, values: &[f64]) -> Result<Vec<SweepPoint>> {
    let specs = strengthened_specimens()?;
    values
        .iter()
        .map(|&v| {
            Ok(SweepPoint {
                sigma_h: v,
                mean_abs_error: mean_error_at(&specs, model, v)?,
            })
        })
        .collect()
}

/// Sweep point with the smallest mean error; ties go to the lower stress.
pub fn best_fixed_hoop_stress(model: StrengthModel, values: &[f64]) -> Result<SweepPoint> {
    let sweep = sweep_fixed_hoop_stress(model, values)?;
    sweep
        .into_iter()
        .reduce(|best, p| {
            if p.mean_abs_error < best.mean_abs_error {
                p
            } else {
                best
            }
        })
        .ok_or_else(|| Error::Config("empty hoop stress sweep".into()))
}

/// Nominal capacity of every row recomputed from the dataset, kN.
pub fn recomputed_nominal() -> Result<Vec<(&'static str, f64)>> {
    SPECIMENS
        .iter()
        .map(|r| Ok((r.name, nominal_capacity(&build_specimen::<f64>(r)?)?)))
        .collect()
}

/// ζ of every strengthened row next to the tabulated ξ.
pub fn confinement_factors() -> Result<Vec<(&'static str, f64, f64)>> {
    strengthened()
        .map(|r| Ok((r.name, confinement_factor(&build_specimen::<f64>(r)?)?, r.xi)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_rows_with_baseline() {
        assert_eq!(load_dataset().len(), 10);
        let rc = record("RC").unwrap();
        assert_eq!((rc.n_u, rc.b_outer, rc.f_c), (2117.7, 200.0, 44.5));
        let d = record("CS-D-2-1.0").unwrap();
        assert_eq!((d.sigma0_ratio, d.f_c, d.n_u), (Some(1.0), 44.5, 2850.9));
        let mut names: Vec<&str> = SPECIMENS.iter().map(|r| r.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), 10);
        assert!(SPECIMENS.iter().all(|r| r.n_u == r.n_u_index));
    }

    #[test]
    fn checksum_is_pinned() {
        assert_eq!(
            dataset_checksum(),
            "823f511f968acf8beb464c505d2e40032d7bef7f3f89663bfbdf13961293305a"
        );
    }

    #[test]
    fn gains() {
        let g = strengthening_ratios();
        assert_eq!(g[0].gain, 0.0);
        let (min, max) = gain_range();
        assert_eq!((min.name, max.name), ("CS-D-2-1.0", "CS-D-2-0.4"));
        assert!((min.gain - 0.34622).abs() < 1e-5);
        assert!((max.gain - 0.67323).abs() < 1e-5);
    }

    #[test]
    fn index_table_consistency() {
        let rows = si_consistency();
        assert_eq!(rows.len(), 9);
        assert!(rows.iter().all(|r| r.ok), "{rows:?}");
        let b = rows.iter().find(|r| r.name == "CS-B-2-0.4").unwrap();
        assert!((b.ratio - 1.0899).abs() < 5e-5);
        let d = rows.iter().find(|r| r.name == "CS-D-1.6-0.4").unwrap();
        assert!((d.ratio - 1.0297).abs() < 5e-5);
    }

    #[test]
    fn coupons() {
        assert_eq!(coupon(CouponClass::CorrugatedSegment, 2.0).unwrap().f_y, 389.42);
        assert_eq!(coupon(CouponClass::LongitudinalBar, 12.0).unwrap().f_y, 443.2);
        assert!(coupon(CouponClass::Angle, 5.0).is_none());
        assert!((rebar_area() - 452.389).abs() < 1e-3);
    }

    #[test]
    fn reference_specimens_reproduce_their_xi() {
        for c in Connection::ALL {
            let rec = record(c.reference_specimen()).unwrap();
            let z = confinement_factor(&build_specimen::<f64>(rec).unwrap()).unwrap();
            assert!((z - rec.xi).abs() < 1e-12);
            assert!(connection_angle_area::<f64>(c).unwrap() > 0.0);
        }
    }

    #[test]
    fn zeta_tracks_xi() {
        for (name, z, xi) in confinement_factors().unwrap() {
            assert!((z - xi).abs() <= 0.02, "{name}: {z} vs {xi}");
        }
    }

    #[test]
    fn nominal_near_tabulated() {
        let n = nominal_capacity(&build_specimen::<f64>(record("CS-D-2-0.4").unwrap()).unwrap()).unwrap();
        assert!((n / 3264.2 - 1.0).abs() <= 0.03, "{n}");
    }

    #[test]
    fn rc_row_has_no_jacket() {
        let s = build_specimen::<f64>(record("RC").unwrap()).unwrap();
        assert_eq!(s.jacket_area(), 0.0);
        assert_eq!(s.angle_area(), 0.0);
        assert_eq!(confinement_factor(&s).unwrap(), 0.0);
    }

    #[test]
    fn policy_parsing() {
        assert_eq!(HoopStressPolicy::parse("fitted"), Some(HoopStressPolicy::Fitted));
        assert_eq!(HoopStressPolicy::parse("fixed:50"), Some(HoopStressPolicy::Fixed(50.0)));
        assert_eq!(
            HoopStressPolicy::parse("per_specimen"),
            Some(HoopStressPolicy::PerSpecimen)
        );
        assert_eq!(HoopStressPolicy::parse("fixed:-1"), None);
        assert_eq!(HoopStressPolicy::parse("fixed"), None);
        assert_eq!(HoopStressPolicy::Fixed(50.0).label(), "fixed:50");
    }

    #[test]
    fn per_specimen_policy_uses_labelled_default() {
        let v = validate_capacity_model(StrengthModel::Lim2014, HoopStressPolicy::PerSpecimen).unwrap();
        assert!(v
            .rows
            .iter()
            .all(|r| r.sigma_h_source == HoopStressSource::Default && r.sigma_h == 50.0));
    }

    #[test]
    fn fitted_policy_stays_in_range() {
        let v = validate_capacity_model(StrengthModel::Lim2014, HoopStressPolicy::Fitted).unwrap();
        for r in &v.rows {
            assert!(r.sigma_h >= 0.0 && r.sigma_h <= 413.99);
            if r.clamped.is_none() {
                assert!(r.residual.abs() <= 0.1);
            }
        }
        assert!(v.leave_one_out_error.is_some() && v.uniform_mean_error.is_some());
    }

    #[test]
    fn sweep_is_ordered_and_best_is_minimum() {
        let sweep = sweep_fixed_hoop_stress(StrengthModel::Lim2014, &SWEEP_HOOP_STRESSES).unwrap();
        assert_eq!(sweep.len(), 7);
        let best = best_fixed_hoop_stress(StrengthModel::Lim2014, &SWEEP_HOOP_STRESSES).unwrap();
        assert!(sweep.iter().all(|p| p.mean_abs_error >= best.mean_abs_error));
    }
}
