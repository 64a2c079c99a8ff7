//! Nominal and ultimate axial capacity of a jacketed column, plus the
//! strength, confinement and ductility indices.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::geometry::{partition, JacketedSection, SectionPartition};
use crate::materials::{ConcreteState, GroutProperties, SteelProperties};
use crate::numerics::bisect;
use crate::scalar::{lit, Real};
use crate::strength_models::{
    confined_grout_strength, confined_strength, confining_stress, default_tensile_strength, ConfinementInput,
    StrengthModel,
};

/// Hoop stress assumed at ultimate when none is supplied, MPa.
pub const DEFAULT_HOOP_STRESS: f64 = 50.0;
/// Load tolerance of [`fit_hoop_stress`], kN.
pub const FIT_TOLERANCE_KN: f64 = 0.1;

/// Where a hoop stress value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HoopStressSource {
    /// Supplied with the specimen.
    Specimen,
    /// Given explicitly for this run.
    Override,
    /// Back-calculated from the measured capacity.
    Fitted,
    /// Fallback of [`DEFAULT_HOOP_STRESS`].
    Default,
}

impl HoopStressSource {
    pub fn as_str(self) -> &'static str {
        match self {
            HoopStressSource::Specimen => "specimen",
            HoopStressSource::Override => "override",
            HoopStressSource::Fitted => "fitted",
            HoopStressSource::Default => "default",
        }
    }
}

/// A strengthened (or plain) column with everything needed for capacity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Specimen<T> {
    pub name: String,
    pub section: JacketedSection<T>,
    pub concrete: ConcreteState<T>,
    pub grout: GroutProperties<T>,
    pub jacket_steel: SteelProperties<T>,
    /// Corner angle steel (`f_L`).
    pub angle_steel: SteelProperties<T>,
    /// Longitudinal bars (`f_yb`).
    pub rebar_steel: SteelProperties<T>,
    /// Corrugated plate area `A_cs`, mm²; derived from the section when absent.
    pub jacket_area_override: Option<T>,
    /// Measured ultimate load, kN.
    pub measured_nu: Option<T>,
    /// Jacket hoop stress at ultimate, MPa.
    pub sigma_h_ultimate: Option<T>,
}

impl<T: Real> Specimen<T> {
    pub fn validate(&self) -> Result<()> {
        self.section.validate()?;
        if !(self.jacket_area() >= T::zero()) {
            return domain("A_cs", self.jacket_area().as_f64(), "A_cs >= 0");
        }
        if let Some(n) = self.measured_nu {
            if !(n > T::zero()) {
                return domain("measured N_u", n.as_f64(), "N_u > 0");
            }
        }
        if let Some(s) = self.sigma_h_ultimate {
            if !(s >= T::zero()) {
                return domain("sigma_h", s.as_f64(), "sigma_h >= 0");
            }
        }
        Ok(())
    }

    /// `A_L`, mm².
    pub fn angle_area(&self) -> T {
        self.section.angle_area
    }

    /// `A_b`, mm².
    pub fn rebar_area(&self) -> T {
        self.section.rebar_area
    }

    /// `A_cs`, mm².
    pub fn jacket_area(&self) -> T {
        self.jacket_area_override.unwrap_or_else(|| self.section.jacket_area())
    }

    /// Net concrete area of the RC core `b_rc^2 - A_b`, mm².
    pub fn concrete_area(&self) -> T {
        self.section.core_width.powi(2) - self.section.rebar_area
    }

    /// Grout area, mm².
    pub fn grout_area(&self) -> T {
        self.section.grout_area()
    }

    /// Hoop stress at ultimate and its provenance.
    pub fn hoop_stress(&self) -> (T, HoopStressSource) {
        match self.sigma_h_ultimate {
            Some(s) => (s, HoopStressSource::Specimen),
            None => (lit(DEFAULT_HOOP_STRESS), HoopStressSource::Default),
        }
    }
}

/// Load carried by each region of the section, kN.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CapacityBreakdown<T> {
    /// `A1 f'cc`
    pub confined_core: T,
    /// `A2 f'c`
    pub unconfined_core: T,
    /// `A3 fcc,g`
    pub confined_grout: T,
    /// `A4 fc,g`
    pub unconfined_grout: T,
    /// `A_L f_L`
    pub angle: T,
    /// `A_b f_yb`
    pub rebar: T,
}

impl<T: Real> CapacityBreakdown<T> {
    pub fn terms(&self) -> [(&'static str, T); 6] {
        [
            ("confined_core", self.confined_core),
            ("unconfined_core", self.unconfined_core),
            ("confined_grout", self.confined_grout),
            ("unconfined_grout", self.unconfined_grout),
            ("angle", self.angle),
            ("rebar", self.rebar),
        ]
    }

    pub fn total(&self) -> T {
        self.terms().iter().fold(T::zero(), |acc, (_, v)| acc + *v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CapacityReport<T> {
    pub specimen: String,
    pub model: StrengthModel,
    pub sigma_h: T,
    pub sigma_h_source: HoopStressSource,
    /// Lateral confining stress, MPa.
    pub f_r: T,
    /// Damaged core strength `f'c`, MPa.
    pub f_c_damaged: T,
    /// Confined core strength `f'cc`, MPa.
    pub f_cc: T,
    /// Confined grout strength, MPa.
    pub f_cc_grout: T,
    pub partition: SectionPartition<T>,
    pub breakdown: CapacityBreakdown<T>,
    /// Predicted ultimate load, kN.
    pub n_u_pred: T,
    /// Nominal capacity `N_0`, kN.
    pub nominal: T,
    /// `n_u_pred / nominal`.
    pub strength_index: T,
    pub zeta: T,
    pub measured_nu: Option<T>,
    /// `n_u_pred / measured - 1`.
    pub error_vs_measured: Option<T>,
    pub warnings: Vec<String>,
}

/// Unconfined capacity `f'c A_c + f_cg A_g + f_yb A_b`, kN.
pub fn nominal_capacity<T: Real>(s: &Specimen<T>) -> Result<T> {
    s.section.validate()?;
    let kn: T = lit(1e-3);
    Ok((s.concrete.f_c_damaged * s.concrete_area()
        + s.grout.f_cg * s.grout_area()
        + s.rebar_steel.f_y * s.rebar_area())
        * kn)
}

/// Ultimate capacity at the specimen's own hoop stress.
pub fn ultimate_capacity<T: Real>(s: &Specimen<T>, model: StrengthModel) -> Result<CapacityReport<T>> {
    let (sigma_h, source) = s.hoop_stress();
    capacity_at(s, model, sigma_h, source)
}

/// Ultimate capacity at an explicit hoop stress.
pub fn ultimate_capacity_at<T: Real>(s: &Specimen<T>, model: StrengthModel, sigma_h: T) -> Result<CapacityReport<T>> {
    capacity_at(s, model, sigma_h, HoopStressSource::Override)
}

pub(crate) fn capacity_at<T: Real>(
    s: &Specimen<T>,
    model: StrengthModel,
    sigma_h: T,
    sigma_h_source: HoopStressSource,
) -> Result<CapacityReport<T>> {
    s.validate()?;
    let p = partition(&s.section)?;
    let f_r = confining_stress(&s.section, sigma_h)?;
    let f_c = s.concrete.f_c_damaged;
    let input = ConfinementInput::new(f_c, f_r).with_tensile(default_tensile_strength(f_c));
    let confined = confined_strength(model, input)?;
    let f_cc_grout = confined_grout_strength(s.grout.f_cg, f_r)?;
    let kn: T = lit(1e-3);
    let breakdown = CapacityBreakdown {
        confined_core: p.a1 * confined.f_cc * kn,
        unconfined_core: p.a2 * f_c * kn,
        confined_grout: p.a3 * f_cc_grout * kn,
        unconfined_grout: p.a4 * s.grout.f_cg * kn,
        angle: s.angle_area() * s.angle_steel.f_y * kn,
        rebar: s.rebar_area() * s.rebar_steel.f_y * kn,
    };
    let n_u_pred = breakdown.total();
    let nominal = nominal_capacity(s)?;
    let mut warnings = Vec::new();
    warnings.extend(confined.warning);
    Ok(CapacityReport {
        specimen: s.name.clone(),
        model,
        sigma_h,
        sigma_h_source,
        f_r,
        f_c_damaged: f_c,
        f_cc: confined.f_cc,
        f_cc_grout,
        partition: p,
        breakdown,
        n_u_pred,
        nominal,
        strength_index: n_u_pred / nominal,
        zeta: confinement_factor(s)?,
        measured_nu: s.measured_nu,
        error_vs_measured: s.measured_nu.map(|m| n_u_pred / m - T::one()),
        warnings,
    })
}

/// Which end of `[0, f_y,cs]` a fit was clamped to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitClamp {
    /// Measured load is below the zero-confinement prediction.
    Lower,
    /// Measured load exceeds the prediction at hoop yield.
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HoopStressFit<T> {
    pub sigma_h: T,
    /// `N_pred(sigma_h) - N_meas`, kN.
    pub residual: T,
    /// Set when no root lies inside the bracket.
    pub clamped: Option<FitClamp>,
}

/// Hoop stress at which the predicted capacity equals the measured one.
pub fn fit_hoop_stress<T: Real>(s: &Specimen<T>, model: StrengthModel) -> Result<HoopStressFit<T>> {
    let measured = s
        .measured_nu
        .ok_or_else(|| Error::Config(format!("specimen {} has no measured N_u", s.name)))?;
    let tol: T = lit(FIT_TOLERANCE_KN);
    let upper = s.jacket_steel.f_y;
    let g = |sigma: T| -> Result<T> { Ok(capacity_at(s, model, sigma, HoopStressSource::Fitted)?.n_u_pred - measured) };
    let g_lo = g(T::zero())?;
    if g_lo >= -tol {
        return Ok(HoopStressFit {
            sigma_h: T::zero(),
            residual: g_lo,
            clamped: (g_lo > tol).then_some(FitClamp::Lower),
        });
    }
    let g_hi = g(upper)?;
    if g_hi <= tol {
        return Ok(HoopStressFit {
            sigma_h: upper,
            residual: g_hi,
            clamped: (g_hi < -tol).then_some(FitClamp::Upper),
        });
    }
    // the closure cannot fail inside the bracket once both ends evaluated
    let sigma_h = bisect(
        |x| g(x).unwrap_or_else(|_| T::nan()),
        T::zero(),
        upper,
        lit(1e-12),
        tol * lit(0.5),
        200,
    )?;
    Ok(HoopStressFit {
        sigma_h,
        residual: g(sigma_h)?,
        clamped: None,
    })
}

/// `N_u / N_0`.
pub fn strength_index<T: Real>(n_u: T, s: &Specimen<T>) -> Result<T> {
    let n0 = nominal_capacity(s)?;
    if !(n0 > T::zero()) {
        return Err(Error::NotComputable(format!(
            "nominal capacity {} kN is not positive",
            n0
        )));
    }
    Ok(n_u / n0)
}

/// `(f_y,cs A_cs + f_L A_L) / (f'c A_c + f_cg A_g)`.
pub fn confinement_factor<T: Real>(s: &Specimen<T>) -> Result<T> {
    let den = s.concrete.f_c_damaged * s.concrete_area() + s.grout.f_cg * s.grout_area();
    if !(den > T::zero()) {
        return Err(Error::NotComputable(format!(
            "concrete and grout capacity {} N is not positive",
            den
        )));
    }
    Ok((s.jacket_steel.f_y * s.jacket_area() + s.angle_steel.f_y * s.angle_area()) / den)
}

/// Load-displacement record, displacement in mm and load in kN.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoadDisplacementCurve<T> {
    points: Vec<(T, T)>,
}

impl<T: Real> LoadDisplacementCurve<T> {
    /// Requires strictly increasing finite displacements and non-negative
    /// finite loads.
    pub fn new(points: Vec<(T, T)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::NotComputable("a curve needs at least two points".into()));
        }
        for (i, &(d, n)) in points.iter().enumerate() {
            if !(d.is_finite() && n.is_finite()) {
                return Err(Error::NotComputable(format!("non-finite value at point {i}")));
            }
            if n < T::zero() {
                return Err(Error::NotComputable(format!("negative load at point {i}")));
            }
            if i > 0 && !(d > points[i - 1].0) {
                return Err(Error::NotComputable(format!(
                    "displacement not increasing at point {i}"
                )));
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[(T, T)] {
        &self.points
    }

    /// Index of the peak load; on a plateau, its last sample.
    pub fn peak_index(&self) -> usize {
        let mut best = 0;
        for (i, p) in self.points.iter().enumerate() {
            if p.1 >= self.points[best].1 {
                best = i;
            }
        }
        best
    }
}

/// Farthest-point yield: the sample up to the peak lying farthest above
/// the chord from the origin to the peak.
pub fn yield_point<T: Real>(curve: &LoadDisplacementCurve<T>) -> Result<(T, T)> {
    let pts = curve.points();
    let k = curve.peak_index();
    let (xp, yp) = pts[k];
    let norm = (xp * xp + yp * yp).sqrt();
    if k == 0 || !(norm > T::zero()) {
        return Err(Error::NotComputable(
            "curve has no rising branch before the peak".into(),
        ));
    }
    let mut best: Option<(usize, T)> = None;
    for (i, &(x, y)) in pts[..=k].iter().enumerate() {
        let dist = (y * xp - x * yp) / norm;
        if best.is_none_or(|(_, d)| dist > d) {
            best = Some((i, dist));
        }
    }
    match best {
        Some((i, d)) if d > norm * lit(1e-12) => Ok(pts[i]),
        _ => Err(Error::NotComputable(
            "no point lies above the origin-to-peak chord; the rising branch is linear or convex".into(),
        )),
    }
}

/// Displacement at the first post-peak crossing of `fraction * peak`,
/// interpolated linearly between samples.
pub fn post_peak_crossing<T: Real>(curve: &LoadDisplacementCurve<T>, fraction: T) -> Result<T> {
    let pts = curve.points();
    let k = curve.peak_index();
    let target = fraction * pts[k].1;
    for i in (k + 1)..pts.len() {
        let (x1, y1) = pts[i];
        if y1 <= target {
            let (x0, y0) = pts[i - 1];
            return Ok(x0 + (target - y0) * (x1 - x0) / (y1 - y0));
        }
    }
    Err(Error::NotComputable(format!(
        "load never drops to {}% of the peak after the peak",
        (fraction * lit(100.0)).as_f64()
    )))
}

/// `DI = Δ_85% / Δ_y`.
pub fn ductility_index<T: Real>(curve: &LoadDisplacementCurve<T>) -> Result<T> {
    let (dy, _) = yield_point(curve)?;
    let d85 = post_peak_crossing(curve, lit(0.85))?;
    Ok(d85 / dy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::CorrugationProfile;
    use crate::materials::CouponClass;
    use proptest::prelude::*;

    fn bar() -> SteelProperties<f64> {
        SteelProperties::from_strengths(CouponClass::LongitudinalBar, 12.0, 443.2, 589.46).unwrap()
    }

    fn rc_only() -> Specimen<f64> {
        let profile = CorrugationProfile::new(68.0, 13.0, 2.0).unwrap();
        Specimen {
            name: "rc".into(),
            section: JacketedSection {
                outer_width: 200.0,
                chord_span: 200.0,
                core_width: 200.0,
                grout_thickness: 0.0,
                corrugation: profile,
                corner_span: 0.0,
                angle_area: 0.0,
                rebar_area: 440.0,
                eta_cs: 2.0,
                deduct_rebar_area: true,
            },
            concrete: ConcreteState::undamaged(44.5).unwrap(),
            grout: GroutProperties::new(37.1).unwrap(),
            jacket_steel: SteelProperties::from_strengths(CouponClass::CorrugatedSegment, 2.0, 389.42, 437.31).unwrap(),
            angle_steel: SteelProperties::from_strengths(CouponClass::Angle, 4.0, 346.56, 523.27).unwrap(),
            rebar_steel: bar(),
            jacket_area_override: Some(0.0),
            measured_nu: None,
            sigma_h_ultimate: None,
        }
    }

    fn jacketed(t: f64) -> Specimen<f64> {
        let profile = CorrugationProfile::new(68.0, 13.0, t).unwrap();
        let c = JacketedSection::corner_span_from_angle_leg(30.0, &profile);
        Specimen {
            name: "cs".into(),
            section: JacketedSection {
                outer_width: 257.0,
                chord_span: 200.0,
                core_width: 200.0,
                grout_thickness: 22.0,
                corrugation: profile,
                corner_span: c,
                angle_area: 850.0,
                rebar_area: 452.389,
                eta_cs: 2.0,
                deduct_rebar_area: true,
            },
            concrete: ConcreteState::from_stress_ratio(54.9, 0.4, 0.1).unwrap(),
            jacket_area_override: None,
            measured_nu: Some(3543.4),
            ..rc_only()
        }
    }

    #[test]
    fn nominal_rc_arithmetic() {
        let s = rc_only();
        // 44.5 * 39560 + 443.2 * 440 = 1760420 + 195008 N
        let n = nominal_capacity(&s).unwrap();
        assert!((n - 1955.428).abs() < 1e-9, "{n}");
        let mut bare = s.clone();
        bare.section.rebar_area = 0.0;
        assert_eq!(nominal_capacity(&bare).unwrap(), 44.5 * 40000.0 * 1e-3);
    }

    #[test]
    fn zero_confinement_reduces_to_nominal() {
        let mut s = jacketed(2.0);
        s.concrete = ConcreteState::undamaged(54.9).unwrap();
        let r = ultimate_capacity_at(&s, StrengthModel::Lim2014, 0.0).unwrap();
        let nominal_plus = nominal_capacity(&s).unwrap() + 850.0 * 346.56 * 1e-3;
        assert!(
            (r.n_u_pred - nominal_plus).abs() < 1e-9,
            "{} vs {}",
            r.n_u_pred,
            nominal_plus
        );
        assert_eq!(r.f_r, 0.0);
        assert_eq!(r.f_cc, s.concrete.f_c_damaged);
    }

    #[test]
    fn breakdown_sums_exactly() {
        let s = jacketed(2.0);
        for m in StrengthModel::ALL {
            let r = ultimate_capacity_at(&s, m, 80.0).unwrap();
            let sum = r.breakdown.confined_core
                + r.breakdown.unconfined_core
                + r.breakdown.confined_grout
                + r.breakdown.unconfined_grout
                + r.breakdown.angle
                + r.breakdown.rebar;
            assert_eq!(sum, r.n_u_pred);
        }
    }

    #[test]
    fn higher_hoop_stress_gives_more_capacity() {
        let s = jacketed(2.0);
        let a = ultimate_capacity_at(&s, StrengthModel::Lim2014, 50.0).unwrap().n_u_pred;
        let b = ultimate_capacity_at(&s, StrengthModel::Lim2014, 100.0)
            .unwrap()
            .n_u_pred;
        assert!(b > a);
    }

    #[test]
    fn default_hoop_stress_is_labelled() {
        let s = jacketed(2.0);
        let r = ultimate_capacity(&s, StrengthModel::Lim2014).unwrap();
        assert_eq!(r.sigma_h, DEFAULT_HOOP_STRESS);
        assert_eq!(r.sigma_h_source, HoopStressSource::Default);
        let mut given = s.clone();
        given.sigma_h_ultimate = Some(120.0);
        assert_eq!(
            ultimate_capacity(&given, StrengthModel::Lim2014)
                .unwrap()
                .sigma_h_source,
            HoopStressSource::Specimen
        );
    }

    #[test]
    fn fit_round_trip_and_clamps() {
        let mut s = jacketed(2.0);
        let at_60 = ultimate_capacity_at(&s, StrengthModel::Lim2014, 60.0).unwrap().n_u_pred;
        s.measured_nu = Some(at_60);
        let fit = fit_hoop_stress(&s, StrengthModel::Lim2014).unwrap();
        assert!(fit.clamped.is_none());
        assert!(fit.residual.abs() <= FIT_TOLERANCE_KN);
        let again = ultimate_capacity_at(&s, StrengthModel::Lim2014, fit.sigma_h)
            .unwrap()
            .n_u_pred;
        assert!((again - at_60).abs() <= FIT_TOLERANCE_KN);

        let at_0 = ultimate_capacity_at(&s, StrengthModel::Lim2014, 0.0).unwrap().n_u_pred;
        s.measured_nu = Some(at_0);
        let zero = fit_hoop_stress(&s, StrengthModel::Lim2014).unwrap();
        assert_eq!((zero.sigma_h, zero.clamped), (0.0, None));

        s.measured_nu = Some(at_0 - 100.0);
        assert_eq!(
            fit_hoop_stress(&s, StrengthModel::Lim2014).unwrap().clamped,
            Some(FitClamp::Lower)
        );

        s.measured_nu = Some(1e5);
        let hi = fit_hoop_stress(&s, StrengthModel::Lim2014).unwrap();
        assert_eq!(hi.clamped, Some(FitClamp::Upper));
        assert_eq!(hi.sigma_h, s.jacket_steel.f_y);

        s.measured_nu = None;
        assert!(matches!(
            fit_hoop_stress(&s, StrengthModel::Lim2014),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn strength_index_values() {
        let s = jacketed(2.0);
        let n0 = nominal_capacity(&s).unwrap();
        assert_eq!(strength_index(n0, &s).unwrap(), 1.0);
        assert!((3543.4f64 / 3264.2 - 1.0855).abs() < 5e-5);
    }

    #[test]
    fn confinement_factor_limits() {
        let mut s = jacketed(2.0);
        s.section.angle_area = 0.0;
        s.jacket_area_override = Some(0.0);
        assert_eq!(confinement_factor(&s).unwrap(), 0.0);
        let thin = confinement_factor(&jacketed(1.6)).unwrap();
        let thick = confinement_factor(&jacketed(2.7)).unwrap();
        assert!(thick > thin);
    }

    fn curve(points: &[(f64, f64)]) -> LoadDisplacementCurve<f64> {
        LoadDisplacementCurve::new(points.to_vec()).unwrap()
    }

    #[test]
    fn yield_point_cases() {
        let bilinear = curve(&[(0.0, 0.0), (0.5, 50.0), (1.0, 100.0), (3.0, 100.0), (5.0, 100.0)]);
        assert_eq!(yield_point(&bilinear).unwrap(), (1.0, 100.0));
        let hardening = curve(&[(0.0, 0.0), (0.5, 50.0), (1.0, 100.0), (3.0, 100.5), (5.0, 101.0)]);
        assert_eq!(yield_point(&hardening).unwrap(), (1.0, 100.0));
        let linear = curve(&[(0.0, 0.0), (1.0, 10.0), (2.0, 20.0)]);
        assert!(yield_point(&linear).is_err());
        let falling = curve(&[(0.0, 10.0), (1.0, 5.0)]);
        assert!(yield_point(&falling).is_err());
    }

    #[test]
    fn ductility_by_construction() {
        let c = curve(&[(0.0, 0.0), (1.0, 90.0), (1.5, 100.0), (2.0, 95.0), (3.0, 75.0)]);
        // 85 is reached a quarter of the way from 2.0 to 3.0
        assert_eq!(post_peak_crossing(&c, 0.85).unwrap(), 2.5);
        assert_eq!(yield_point(&c).unwrap(), (1.0, 90.0));
        assert_eq!(ductility_index(&c).unwrap(), 2.5);
        let truncated = curve(&[(0.0, 0.0), (1.0, 90.0), (1.5, 100.0), (2.0, 95.0)]);
        assert!(matches!(ductility_index(&truncated), Err(Error::NotComputable(_))));
    }

    #[test]
    fn curve_invariants() {
        assert!(LoadDisplacementCurve::new(vec![(0.0, 0.0), (0.0, 1.0)]).is_err());
        assert!(LoadDisplacementCurve::new(vec![(0.0, 0.0), (1.0, -1.0)]).is_err());
        assert!(LoadDisplacementCurve::new(vec![(0.0, 0.0)]).is_err());
    }

    proptest! {
        #[test]
        fn monotone_in_hoop_stress(a in 0.0f64..389.0, b in 0.0f64..389.0) {
            let s = jacketed(2.0);
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            let n_lo = ultimate_capacity_at(&s, StrengthModel::Lim2014, lo).unwrap().n_u_pred;
            let n_hi = ultimate_capacity_at(&s, StrengthModel::Lim2014, hi).unwrap().n_u_pred;
            prop_assert!(n_hi >= n_lo);
        }

        #[test]
        fn monotone_in_grout_strength(f1 in 20.0f64..80.0, f2 in 20.0f64..80.0, sigma in 0.0f64..300.0) {
            let mut s = jacketed(2.0);
            let (lo, hi) = if f1 < f2 { (f1, f2) } else { (f2, f1) };
            s.grout = GroutProperties::new(lo).unwrap();
            let n_lo = ultimate_capacity_at(&s, StrengthModel::Lim2014, sigma).unwrap().n_u_pred;
            s.grout = GroutProperties::new(hi).unwrap();
            let n_hi = ultimate_capacity_at(&s, StrengthModel::Lim2014, sigma).unwrap().n_u_pred;
            prop_assert!(n_hi >= n_lo);
        }

        #[test]
        fn monotone_in_plate_thickness(t1 in 1.0f64..4.0, t2 in 1.0f64..4.0, sigma in 0.0f64..300.0) {
            let (lo, hi) = if t1 < t2 { (t1, t2) } else { (t2, t1) };
            let n = |t: f64| {
                let mut s = jacketed(2.0);
                s.section.corrugation.thickness = t;
                ultimate_capacity_at(&s, StrengthModel::Lim2014, sigma).unwrap().n_u_pred
            };
            prop_assert!(n(hi) >= n(lo));
        }
    }

    #[test]
    fn single_precision_tracks_double() {
        use crate::dataset_validation::{build_specimen, record, strengthened};
        for rec in strengthened() {
            let s64 = build_specimen::<f64>(rec).unwrap();
            let s32 = build_specimen::<f32>(rec).unwrap();
            for sigma in [0.0, 50.0, 200.0] {
                let a = ultimate_capacity_at(&s64, StrengthModel::Lim2014, sigma)
                    .unwrap()
                    .n_u_pred;
                let b = ultimate_capacity_at(&s32, StrengthModel::Lim2014, sigma as f32)
                    .unwrap()
                    .n_u_pred;
                assert!(
                    ((b as f64) / a - 1.0).abs() < 1e-5,
                    "{} at {sigma}: {a} vs {b}",
                    rec.name
                );
            }
        }
        let rec = record("CS-D-2-0.4").unwrap();
        let a = fit_hoop_stress(&build_specimen::<f64>(rec).unwrap(), StrengthModel::Lim2014).unwrap();
        let b = fit_hoop_stress(&build_specimen::<f32>(rec).unwrap(), StrengthModel::Lim2014).unwrap();
        assert!(
            (a.sigma_h - b.sigma_h as f64).abs() < 0.5,
            "{} vs {}",
            a.sigma_h,
            b.sigma_h
        );
    }
}
