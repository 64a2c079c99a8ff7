//! Jacket stresses from biaxial strain-gauge histories.
//!
//! The steel follows a three-stage plane-stress law driven by the current
//! Mises stress `sigma_z`:
//!
//! * elastic below the proportional limit `f_p` (generalized Hooke's law);
//! * elastoplastic between `f_p` and `f_y`, with the tangent modulus
//!   `E_t = (f_y - s) s E / ((f_y - f_p) f_p)` and Poisson ratio
//!   `mu_sp = 0.283 + 0.167 (s - f_p)/(f_y - f_p)`;
//! * plastic on the isotropic hardening surface `f_y + H' eps_p`, using the
//!   Prandtl-Reuss plane-stress tangent written in deviatoric stresses.
//!
//! Shear is neglected. Histories are integrated incrementally, sample to
//! sample, with explicit substeps. Unloading (and reloading below the
//! highest Mises stress reached) is elastic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::CorrugationProfile;
use crate::materials::SteelProperties;
use crate::scalar::{lit, Real};

/// Hardening modulus as a fraction of `E_s`.
pub const HARDENING_RATIO: f64 = 3.0e-3;
/// Largest admissible gauge strain.
pub const STRAIN_SANITY_BOUND: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GaugeLocation {
    Crest,
    Flat,
    Trough,
}

impl GaugeLocation {
    pub const ALL: [GaugeLocation; 3] = [GaugeLocation::Crest, GaugeLocation::Flat, GaugeLocation::Trough];

    pub fn as_str(self) -> &'static str {
        match self {
            GaugeLocation::Crest => "crest",
            GaugeLocation::Flat => "flat",
            GaugeLocation::Trough => "trough",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|l| l.as_str() == s)
    }
}

/// One reading of a hoop/vertical gauge pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrainSample<T> {
    /// Applied load, kN.
    pub load: T,
    /// Hoop strain.
    pub eps_h: T,
    /// Vertical strain.
    pub eps_v: T,
    pub location: GaugeLocation,
    /// Gauge identifier.
    pub side: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Elastic,
    Elastoplastic,
    Plastic,
}

impl Stage {
    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Elastic => "elastic",
            Stage::Elastoplastic => "elastoplastic",
            Stage::Plastic => "plastic",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Stage::Elastic, Stage::Elastoplastic, Stage::Plastic]
            .into_iter()
            .find(|x| x.as_str() == s)
    }
}

/// Plane stress state of the jacket, MPa.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StressState<T> {
    pub sigma_h: T,
    pub sigma_v: T,
    /// Mises equivalent stress.
    pub sigma_z: T,
    pub stage: Stage,
    pub sigma_h_dev: T,
    pub sigma_v_dev: T,
    /// Mean stress `(sigma_h + sigma_v)/3`.
    pub sigma_cp: T,
    /// Accumulated equivalent plastic strain.
    pub eq_plastic_strain: T,
}

impl<T: Real> StressState<T> {
    pub fn new(sigma_h: T, sigma_v: T, stage: Stage, eq_plastic_strain: T) -> Self {
        let sigma_cp = (sigma_h + sigma_v) / lit(3.0);
        Self {
            sigma_h,
            sigma_v,
            sigma_z: mises(sigma_h, sigma_v),
            stage,
            sigma_h_dev: sigma_h - sigma_cp,
            sigma_v_dev: sigma_v - sigma_cp,
            sigma_cp,
            eq_plastic_strain,
        }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), Stage::Elastic, T::zero())
    }
}

/// Material and integration settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalysisConfig<T> {
    pub steel: SteelProperties<T>,
    /// Plastic hardening modulus `H'`, MPa.
    pub hardening: T,
    /// Shear modulus `G`, MPa.
    pub shear_modulus: T,
    /// Mises band below `f_y` in which the plastic law takes over, MPa.
    pub stage_tolerance: T,
    /// Explicit substeps per sample increment.
    pub substeps: usize,
}

impl<T: Real> AnalysisConfig<T> {
    pub fn new(steel: SteelProperties<T>) -> Self {
        Self {
            steel,
            hardening: steel.e_s * lit(HARDENING_RATIO),
            shear_modulus: steel.shear_modulus(),
            stage_tolerance: lit(0.1),
            substeps: 10,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.hardening > T::zero()) {
            return Err(Error::Config("hardening modulus must be positive".into()));
        }
        if !(self.shear_modulus > T::zero()) {
            return Err(Error::Config("shear modulus must be positive".into()));
        }
        if !(self.stage_tolerance >= T::zero()) {
            return Err(Error::Config("stage tolerance must be non-negative".into()));
        }
        if self.substeps == 0 {
            return Err(Error::Config("at least one substep is required".into()));
        }
        Ok(())
    }
}

/// Stress increment, MPa.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StressIncrement<T> {
    pub d_sigma_h: T,
    pub d_sigma_v: T,
}

/// Stress increment on the hardening surface together with the equivalent
/// plastic strain it implies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlasticIncrement<T> {
    pub stress: StressIncrement<T>,
    /// Equivalent plastic strain increment; negative means elastic unloading.
    pub d_eps_p: T,
}

/// Mises equivalent stress of a plane stress state.
pub fn mises<T: Real>(sigma_h: T, sigma_v: T) -> T {
    (sigma_h * sigma_h + sigma_v * sigma_v - sigma_h * sigma_v)
        .max(T::zero())
        .sqrt()
}

fn hooke<T: Real>(e: T, mu: T, deps_h: T, deps_v: T) -> StressIncrement<T> {
    let k = e / (T::one() - mu * mu);
    StressIncrement {
        d_sigma_h: k * (deps_h + mu * deps_v),
        d_sigma_v: k * (mu * deps_h + deps_v),
    }
}

/// Generalized Hooke's law in plane stress.
pub fn elastic_step<T: Real>(deps_h: T, deps_v: T, cfg: &AnalysisConfig<T>) -> StressIncrement<T> {
    hooke(cfg.steel.e_s, cfg.steel.mu_s, deps_h, deps_v)
}

/// Tangent modulus of the elastoplastic stage at Mises stress `sigma`.
pub fn tangent_modulus<T: Real>(sigma: T, steel: &SteelProperties<T>) -> T {
    let SteelProperties { f_y, f_p, e_s, .. } = *steel;
    ((f_y - sigma) * sigma * e_s / ((f_y - f_p) * f_p)).max(T::zero())
}

/// Poisson ratio of the elastoplastic stage at Mises stress `sigma`.
pub fn elastoplastic_poisson<T: Real>(sigma: T, steel: &SteelProperties<T>) -> T {
    let SteelProperties { f_y, f_p, .. } = *steel;
    lit::<T>(0.283) + lit::<T>(0.167) * (sigma - f_p) / (f_y - f_p)
}

/// Elastoplastic increment: Hooke's law with the tangent modulus and
/// Poisson ratio evaluated at the current Mises stress.
pub fn elastoplastic_step<T: Real>(
    deps_h: T,
    deps_v: T,
    current: &StressState<T>,
    cfg: &AnalysisConfig<T>,
) -> Result<StressIncrement<T>> {
    let s = &cfg.steel;
    let slack = lit::<T>(1e-9) * s.f_y;
    if current.sigma_z < s.f_p - slack || current.sigma_z > s.f_y + slack {
        return Err(Error::Stage {
            stage: "elastoplastic",
            mises: current.sigma_z.as_f64(),
            lower: s.f_p.as_f64(),
            upper: s.f_y.as_f64(),
        });
    }
    let sigma = current.sigma_z.max(s.f_p).min(s.f_y);
    let e_t = tangent_modulus(sigma, s);
    let mu_sp = elastoplastic_poisson(sigma, s);
    Ok(hooke(e_t, mu_sp, deps_h, deps_v))
}

/// `p = H' sigma_z^2 / (9 G (1 + mu))`, i.e. `2 H' sigma_z^2 / (9 E)`.
fn hardening_term<T: Real>(sigma_z: T, cfg: &AnalysisConfig<T>) -> T {
    cfg.hardening * sigma_z * sigma_z / (lit::<T>(9.0) * cfg.shear_modulus * (T::one() + cfg.steel.mu_s))
}

/// Plastic increment from the plane-stress Prandtl-Reuss tangent.
///
/// ```text
/// dσ = E/Q [ s_v² + 2p          2 mu p - s_h s_v ] dε
///          [ 2 mu p - s_h s_v   s_h² + 2p        ]
/// Q  = s_h² + s_v² + 2 mu s_h s_v + 2 H' (1 - mu) sigma_z² / (9 G)
/// ```
pub fn plastic_step<T: Real>(
    deps_h: T,
    deps_v: T,
    current: &StressState<T>,
    cfg: &AnalysisConfig<T>,
) -> Result<PlasticIncrement<T>> {
    let s = &cfg.steel;
    if current.sigma_z < s.f_y - cfg.stage_tolerance - lit::<T>(1e-9) * s.f_y {
        return Err(Error::Stage {
            stage: "plastic",
            mises: current.sigma_z.as_f64(),
            lower: (s.f_y - cfg.stage_tolerance).as_f64(),
            upper: f64::INFINITY,
        });
    }
    let (sh, sv) = (current.sigma_h_dev, current.sigma_v_dev);
    let mu = s.mu_s;
    let two: T = lit(2.0);
    let sz = current.sigma_z;
    let q = sh * sh
        + sv * sv
        + two * mu * sh * sv
        + two * cfg.hardening * (T::one() - mu) * sz * sz / (lit::<T>(9.0) * cfg.shear_modulus);
    if !(q > T::zero()) {
        return Err(Error::SingularPlastic {
            q: q.as_f64(),
            sigma_h: current.sigma_h.as_f64(),
            sigma_v: current.sigma_v.as_f64(),
        });
    }
    let p = hardening_term(sz, cfg);
    let k = s.e_s / q;
    let off = two * mu * p - sh * sv;
    let stress = StressIncrement {
        d_sigma_h: k * ((sv * sv + two * p) * deps_h + off * deps_v),
        d_sigma_v: k * (off * deps_h + (sh * sh + two * p) * deps_v),
    };
    // plastic multiplier (s_h + mu s_v, mu s_h + s_v)·dε / Q
    let d_lambda = ((sh + mu * sv) * deps_h + (mu * sh + sv) * deps_v) / q;
    Ok(PlasticIncrement {
        stress,
        d_eps_p: lit::<T>(2.0 / 3.0) * sz * d_lambda,
    })
}

/// Incremental integrator for one gauge's history.
#[derive(Debug, Clone)]
pub struct PlaneStressIntegrator<T> {
    cfg: AnalysisConfig<T>,
    sigma_h: T,
    sigma_v: T,
    eps_p: T,
    /// Highest Mises stress reached on the loading curve.
    elastic_limit: T,
}

impl<T: Real> PlaneStressIntegrator<T> {
    pub fn new(cfg: AnalysisConfig<T>) -> Result<Self> {
        cfg.validate()?;
        Ok(Self {
            elastic_limit: cfg.steel.f_p,
            cfg,
            sigma_h: T::zero(),
            sigma_v: T::zero(),
            eps_p: T::zero(),
        })
    }

    pub fn yield_stress(&self) -> T {
        self.cfg.steel.f_y + self.cfg.hardening * self.eps_p
    }

    fn on_plastic_branch(&self, sigma_z: T) -> bool {
        let s = &self.cfg.steel;
        sigma_z >= s.f_y - self.cfg.stage_tolerance
            || (self.eps_p > T::zero() && sigma_z >= self.yield_stress() - self.cfg.stage_tolerance)
    }

    pub fn state(&self) -> StressState<T> {
        let sz = mises(self.sigma_h, self.sigma_v);
        let stage = if self.on_plastic_branch(sz) {
            Stage::Plastic
        } else if sz >= self.cfg.steel.f_p {
            Stage::Elastoplastic
        } else {
            Stage::Elastic
        };
        StressState::new(self.sigma_h, self.sigma_v, stage, self.eps_p)
    }

    /// Applies a total strain increment.
    pub fn apply(&mut self, deps_h: T, deps_v: T) -> Result<()> {
        let n = lit::<T>(self.cfg.substeps as f64);
        for _ in 0..self.cfg.substeps {
            self.substep(deps_h / n, deps_v / n)?;
        }
        Ok(())
    }

    fn substep(&mut self, deps_h: T, deps_v: T) -> Result<()> {
        let d = elastic_step(deps_h, deps_v, &self.cfg);
        let (th, tv) = (self.sigma_h + d.d_sigma_h, self.sigma_v + d.d_sigma_v);
        if mises(th, tv) <= self.elastic_limit {
            self.sigma_h = th;
            self.sigma_v = tv;
            return Ok(());
        }
        // elastic up to the limit, then the loading law for the rest
        let alpha = self.fraction_to_limit(d);
        self.sigma_h = self.sigma_h + alpha * d.d_sigma_h;
        self.sigma_v = self.sigma_v + alpha * d.d_sigma_v;
        let rest = T::one() - alpha;
        let (rh, rv) = (deps_h * rest, deps_v * rest);
        let current = self.state();
        if self.on_plastic_branch(current.sigma_z) {
            let inc = plastic_step(rh, rv, &current, &self.cfg)?;
            if inc.d_eps_p <= T::zero() {
                self.sigma_h = self.sigma_h + rest * d.d_sigma_h;
                self.sigma_v = self.sigma_v + rest * d.d_sigma_v;
                return Ok(());
            }
            self.sigma_h = self.sigma_h + inc.stress.d_sigma_h;
            self.sigma_v = self.sigma_v + inc.stress.d_sigma_v;
            self.eps_p = self.eps_p + inc.d_eps_p;
            self.project_to(self.yield_stress());
        } else {
            let inc = elastoplastic_step(rh, rv, &current, &self.cfg)?;
            self.sigma_h = self.sigma_h + inc.d_sigma_h;
            self.sigma_v = self.sigma_v + inc.d_sigma_v;
            if mises(self.sigma_h, self.sigma_v) > self.cfg.steel.f_y {
                self.project_to(self.cfg.steel.f_y);
            }
        }
        self.elastic_limit = self.elastic_limit.max(mises(self.sigma_h, self.sigma_v));
        Ok(())
    }

    /// Radial return onto the Mises circle of radius `target`.
    fn project_to(&mut self, target: T) {
        let sz = mises(self.sigma_h, self.sigma_v);
        if sz > T::zero() {
            let k = target / sz;
            self.sigma_h = self.sigma_h * k;
            self.sigma_v = self.sigma_v * k;
        }
    }

    /// Fraction of an elastic increment that brings the Mises stress to the
    /// current elastic limit.
    fn fraction_to_limit(&self, d: StressIncrement<T>) -> T {
        let (sh, sv) = (self.sigma_h, self.sigma_v);
        let (dh, dv) = (d.d_sigma_h, d.d_sigma_v);
        let half: T = lit(0.5);
        let qa = dh * dh + dv * dv - dh * dv;
        let qb = sh * dh + sv * dv - half * (sh * dv + sv * dh);
        let qc = sh * sh + sv * sv - sh * sv - self.elastic_limit * self.elastic_limit;
        if qa <= T::zero() || qc >= T::zero() {
            return T::zero();
        }
        let disc = (qb * qb - qa * qc).max(T::zero());
        ((-qb + disc.sqrt()) / qa).max(T::zero()).min(T::one())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TracePoint<T> {
    /// Position of the sample in the input.
    pub index: usize,
    pub load: T,
    pub state: StressState<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RejectedSample {
    pub index: usize,
    pub reason: String,
}

/// Result of integrating one history.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceAnalysis<T> {
    pub points: Vec<TracePoint<T>>,
    pub rejected: Vec<RejectedSample>,
    /// Set when integration stopped early; holds the failing sample index.
    pub truncated: Option<(usize, Error)>,
}

/// Integrates an ordered strain history from the zero-stress datum set by
/// its first accepted sample.
pub fn analyze_trace<T: Real>(samples: &[StrainSample<T>], cfg: &AnalysisConfig<T>) -> Result<TraceAnalysis<T>> {
    let mut integrator = PlaneStressIntegrator::new(*cfg)?;
    let mut out = TraceAnalysis {
        points: Vec::with_capacity(samples.len()),
        rejected: Vec::new(),
        truncated: None,
    };
    let bound: T = lit(STRAIN_SANITY_BOUND);
    let mut previous: Option<(T, T)> = None;
    for (index, s) in samples.iter().enumerate() {
        if !(s.eps_h.is_finite() && s.eps_v.is_finite() && s.load.is_finite()) {
            out.rejected.push(RejectedSample {
                index,
                reason: "non-finite value".into(),
            });
            continue;
        }
        if s.eps_h.abs() >= bound || s.eps_v.abs() >= bound {
            out.rejected.push(RejectedSample {
                index,
                reason: format!("strain magnitude exceeds {STRAIN_SANITY_BOUND}"),
            });
            continue;
        }
        if let Some((h0, v0)) = previous {
            if let Err(e) = integrator.apply(s.eps_h - h0, s.eps_v - v0) {
                out.truncated = Some((index, e));
                break;
            }
        }
        previous = Some((s.eps_h, s.eps_v));
        out.points.push(TracePoint {
            index,
            load: s.load,
            state: integrator.state(),
        });
    }
    Ok(out)
}

/// Developed-length weighted mean of the vertical stress over one
/// corrugation period.
pub fn weighted_longitudinal_stress<T: Real>(
    states: &[(GaugeLocation, StressState<T>)],
    profile: &CorrugationProfile<T>,
) -> Result<T> {
    let (w_crest, w_flat, w_trough) = profile.segment_weights();
    let mut total = T::zero();
    for (loc, w) in [
        (GaugeLocation::Crest, w_crest),
        (GaugeLocation::Flat, w_flat),
        (GaugeLocation::Trough, w_trough),
    ] {
        let vals: Vec<T> = states
            .iter()
            .filter(|(l, _)| *l == loc)
            .map(|(_, s)| s.sigma_v)
            .collect();
        if vals.is_empty() {
            return Err(Error::Config(format!(
                "no stress state at the {} location",
                loc.as_str()
            )));
        }
        let mean = vals.iter().copied().sum::<T>() / lit(vals.len() as f64);
        total = total + w * mean;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::CouponClass;
    use proptest::prelude::*;

    fn steel() -> SteelProperties<f64> {
        SteelProperties::from_strengths(CouponClass::CorrugatedSegment, 2.0, 389.42, 437.31).unwrap()
    }

    fn cfg() -> AnalysisConfig<f64> {
        AnalysisConfig::new(steel())
    }

    fn ramp(dir_h: f64, dir_v: f64, max: f64, n: usize) -> Vec<StrainSample<f64>> {
        (0..=n)
            .map(|i| {
                let t = max * i as f64 / n as f64;
                StrainSample {
                    load: 1000.0 * i as f64 / n as f64,
                    eps_h: dir_h * t,
                    eps_v: dir_v * t,
                    location: GaugeLocation::Trough,
                    side: "1".into(),
                }
            })
            .collect()
    }

    #[test]
    fn hooke_values() {
        let d = elastic_step(0.0, -5e-4, &cfg());
        // 206000/(1 - 0.283^2) * (0.283 * -5e-4), * (-5e-4)
        let k = 206_000.0 / (1.0 - 0.283f64 * 0.283);
        assert!((d.d_sigma_h - k * 0.283 * -5e-4).abs() < 1e-9);
        assert!((d.d_sigma_h + 31.69).abs() < 0.01);
        assert!((d.d_sigma_v + 111.97).abs() < 0.01);
        let z = elastic_step(0.0, 0.0, &cfg());
        assert_eq!((z.d_sigma_h, z.d_sigma_v), (0.0, 0.0));
        let u = elastic_step(0.283 * 1e-4, -1e-4, &cfg());
        assert!(u.d_sigma_h.abs() < 1e-9);
    }

    #[test]
    fn elastoplastic_end_points() {
        let s = steel();
        assert!((tangent_modulus(s.f_p, &s) - s.e_s).abs() < 1e-6);
        assert!((elastoplastic_poisson(s.f_p, &s) - 0.283).abs() < 1e-12);
        assert_eq!(tangent_modulus(s.f_y, &s), 0.0);
        assert!((elastoplastic_poisson(s.f_y, &s) - 0.45).abs() < 1e-12);
        // midpoint: 0.5 * 350.478 / 311.536 * E = 0.5625 E
        let mid = 0.5 * (s.f_p + s.f_y);
        let oracle = (389.42 - mid) * mid / ((389.42 - 311.536) * 311.536) * 206_000.0;
        assert!((tangent_modulus(mid, &s) - oracle).abs() < 1e-6);
        assert!(
            (tangent_modulus(mid, &s) - 115_875.0).abs() < 1e-6,
            "{}",
            tangent_modulus(mid, &s)
        );
    }

    #[test]
    fn stage_guards() {
        let c = cfg();
        let low = StressState::new(0.0, -100.0, Stage::Elastic, 0.0);
        assert!(matches!(
            elastoplastic_step(0.0, -1e-5, &low, &c),
            Err(Error::Stage { .. })
        ));
        assert!(matches!(plastic_step(0.0, -1e-5, &low, &c), Err(Error::Stage { .. })));
        let high = StressState::new(0.0, -450.0, Stage::Plastic, 0.0);
        assert!(elastoplastic_step(0.0, -1e-5, &high, &c).is_err());
    }

    #[test]
    fn plastic_step_basics() {
        let c = cfg();
        let at_yield = StressState::new(0.0, -389.42, Stage::Plastic, 0.0);
        let z = plastic_step(0.0, 0.0, &at_yield, &c).unwrap();
        assert_eq!((z.stress.d_sigma_h, z.stress.d_sigma_v), (0.0, 0.0));
        // equibiaxial: symmetric operator, equal increments
        let sym = StressState::new(389.42, 389.42, Stage::Plastic, 0.0);
        let inc = plastic_step(1e-5, 1e-5, &sym, &c).unwrap();
        assert!((inc.stress.d_sigma_h - inc.stress.d_sigma_v).abs() < 1e-9);
        // zero stress cannot be on the surface
        let mut c0 = c;
        c0.stage_tolerance = 1e9;
        assert!(matches!(
            plastic_step(1e-5, 0.0, &StressState::zero(), &c0),
            Err(Error::SingularPlastic { .. })
        ));
    }

    #[test]
    fn plastic_increment_stays_on_surface() {
        // tangent consistency: d(sigma_z) = H' d(eps_p) to first order
        let c = cfg();
        let st = StressState::new(-120.0, -300.0, Stage::Plastic, 0.0);
        let st = StressState::new(
            st.sigma_h * 389.42 / st.sigma_z,
            st.sigma_v * 389.42 / st.sigma_z,
            Stage::Plastic,
            0.0,
        );
        let inc = plastic_step(-1e-7, -1e-6, &st, &c).unwrap();
        // linearized d(sigma_z) = 3/(2 sigma_z) s . d(sigma)
        let dz = 1.5 / st.sigma_z * (st.sigma_h_dev * inc.stress.d_sigma_h + st.sigma_v_dev * inc.stress.d_sigma_v);
        let expected = c.hardening * inc.d_eps_p;
        assert!(inc.d_eps_p > 0.0);
        assert!((dz - expected).abs() < 1e-9 * dz.abs(), "{dz} vs {expected}");
    }

    #[test]
    fn mises_values() {
        assert_eq!(mises(0.0, 0.0), 0.0);
        assert_eq!(mises(100.0, 0.0), 100.0);
        assert_eq!(mises(100.0, 100.0), 100.0);
    }

    #[test]
    fn elastic_ramp_is_path_independent() {
        let c = cfg();
        let trace = analyze_trace(&ramp(0.3, -1.0, 8e-4, 40), &c).unwrap();
        let last = trace.points.last().unwrap().state;
        let d = elastic_step(0.3 * 8e-4, -8e-4, &c);
        assert!((last.sigma_h - d.d_sigma_h).abs() <= 1e-10 * d.d_sigma_h.abs().max(1.0));
        assert!((last.sigma_v - d.d_sigma_v).abs() <= 1e-10 * d.d_sigma_v.abs());
        assert!(trace.points.iter().all(|p| p.state.stage == Stage::Elastic));
    }

    #[test]
    fn ramp_through_all_stages() {
        let c = cfg();
        let trace = analyze_trace(&ramp(0.35, -1.0, 8e-3, 800), &c).unwrap();
        assert!(trace.truncated.is_none());
        let stages: Vec<Stage> = trace.points.iter().map(|p| p.state.stage).collect();
        let first_ep = stages.iter().position(|s| *s == Stage::Elastoplastic).unwrap();
        let first_pl = stages.iter().position(|s| *s == Stage::Plastic).unwrap();
        assert!(0 < first_ep && first_ep < first_pl);
        assert!(stages[..first_ep].iter().all(|s| *s == Stage::Elastic));
        assert!(stages[first_pl..].iter().all(|s| *s == Stage::Plastic));
        let z: Vec<f64> = trace.points.iter().map(|p| p.state.sigma_z).collect();
        assert!(z.windows(2).all(|w| w[1] >= w[0] - 1e-9));
        for p in &trace.points {
            let s = p.state;
            assert!((s.sigma_z - mises(s.sigma_h, s.sigma_v)).abs() < 1e-9);
            if s.stage == Stage::Plastic {
                let surface = c.steel.f_y + c.hardening * s.eq_plastic_strain;
                assert!((s.sigma_z - surface).abs() <= c.stage_tolerance + 1e-9);
            }
            if s.stage == Stage::Elastic {
                assert!(s.sigma_z <= c.steel.f_p + 1e-9);
            }
        }
    }

    #[test]
    fn matches_ten_times_finer_reference() {
        let c = cfg();
        let coarse = analyze_trace(&ramp(0.35, -1.0, 8e-3, 80), &c).unwrap();
        let fine = analyze_trace(&ramp(0.35, -1.0, 8e-3, 800), &c).unwrap();
        for (i, p) in coarse.points.iter().enumerate() {
            let q = &fine.points[i * 10];
            assert!((p.state.sigma_z - q.state.sigma_z).abs() < 0.5, "sample {i}");
        }
    }

    #[test]
    fn unloading_is_elastic() {
        let c = cfg();
        let mut samples = ramp(0.35, -1.0, 6e-3, 300);
        let peak = samples.last().unwrap().clone();
        for i in 1..=10 {
            let mut s = peak.clone();
            s.eps_v = peak.eps_v + 1e-4 * i as f64;
            s.eps_h = peak.eps_h - 0.35 * 1e-4 * i as f64;
            samples.push(s);
        }
        let trace = analyze_trace(&samples, &c).unwrap();
        let at_peak = trace.points[300].state;
        let end = trace.points.last().unwrap().state;
        let d = elastic_step(-0.35 * 1e-3, 1e-3, &c);
        assert!((end.sigma_h - (at_peak.sigma_h + d.d_sigma_h)).abs() < 1e-6);
        assert!((end.sigma_v - (at_peak.sigma_v + d.d_sigma_v)).abs() < 1e-6);
        assert_eq!(end.eq_plastic_strain, at_peak.eq_plastic_strain);
    }

    #[test]
    fn empty_and_rejected_samples() {
        let c = cfg();
        let empty: Vec<StrainSample<f64>> = Vec::new();
        assert!(analyze_trace(&empty, &c).unwrap().points.is_empty());
        let mut samples = ramp(0.0, -1.0, 4e-4, 4);
        samples[2].eps_v = f64::NAN;
        samples[3].eps_h = 0.2;
        let t = analyze_trace(&samples, &c).unwrap();
        assert_eq!(t.points.len(), 3);
        assert_eq!(t.rejected.iter().map(|r| r.index).collect::<Vec<_>>(), vec![2, 3]);
    }

    #[test]
    fn weighted_mean() {
        let profile = CorrugationProfile::with_bend_radius(68.0, 13.0, 2.0, 17.5).unwrap();
        let (_, _, w_trough) = profile.segment_weights();
        let st = |v: f64| StressState::new(0.0, v, Stage::Elastic, 0.0);
        let same = [
            (GaugeLocation::Crest, st(-7.0)),
            (GaugeLocation::Flat, st(-7.0)),
            (GaugeLocation::Trough, st(-7.0)),
        ];
        assert!((weighted_longitudinal_stress(&same, &profile).unwrap() + 7.0).abs() < 1e-12);
        let trough_only = [
            (GaugeLocation::Crest, st(0.0)),
            (GaugeLocation::Flat, st(0.0)),
            (GaugeLocation::Trough, st(-40.0)),
        ];
        assert!((weighted_longitudinal_stress(&trough_only, &profile).unwrap() + w_trough * 40.0).abs() < 1e-12);
        // tensile crest and flat, compressive trough: small negative mean
        let mixed = [
            (GaugeLocation::Crest, st(12.0)),
            (GaugeLocation::Flat, st(1.0)),
            (GaugeLocation::Trough, st(-30.0)),
        ];
        let m = weighted_longitudinal_stress(&mixed, &profile).unwrap();
        assert!(m < 0.0 && m.abs() < 30.0 * 0.5, "{m}");
        assert!(weighted_longitudinal_stress(&same[..2], &profile).is_err());
    }

    proptest! {
        #[test]
        fn mises_symmetry(a in -500.0f64..500.0, b in -500.0f64..500.0) {
            prop_assert_eq!(mises(a, b), mises(b, a));
            prop_assert!((mises(a, a) - a.abs()).abs() < 1e-9);
            prop_assert!(mises(a, b) >= 0.0);
        }

        #[test]
        fn elastic_round_trip(eh in -1e-3f64..1e-3, ev in -1e-3f64..1e-3) {
            let c = cfg();
            let d = elastic_step(eh, ev, &c);
            prop_assume!(mises(d.d_sigma_h, d.d_sigma_v) < c.steel.f_p);
            let trace = analyze_trace(&[
                StrainSample { load: 0.0, eps_h: 0.0, eps_v: 0.0, location: GaugeLocation::Flat, side: "1".into() },
                StrainSample { load: 1.0, eps_h: eh, eps_v: ev, location: GaugeLocation::Flat, side: "1".into() },
            ], &c).unwrap();
            let s = trace.points[1].state;
            let (e, mu) = (c.steel.e_s, c.steel.mu_s);
            let back_h = (s.sigma_h - mu * s.sigma_v) / e;
            let back_v = (s.sigma_v - mu * s.sigma_h) / e;
            prop_assert!((back_h - eh).abs() <= 1e-10 * eh.abs().max(1e-9));
            prop_assert!((back_v - ev).abs() <= 1e-10 * ev.abs().max(1e-9));
        }
    }

    #[test]
    fn single_precision_integration() {
        let s64 = SteelProperties::<f64>::from_strengths(CouponClass::CorrugatedSegment, 2.0, 389.42, 437.31).unwrap();
        let s32 = SteelProperties::<f32>::from_strengths(CouponClass::CorrugatedSegment, 2.0, 389.42, 437.31).unwrap();
        let mut a = PlaneStressIntegrator::new(AnalysisConfig::new(s64)).unwrap();
        let mut b = PlaneStressIntegrator::new(AnalysisConfig::new(s32)).unwrap();
        for _ in 0..40 {
            a.apply(4e-5, -1e-4).unwrap();
            b.apply(4e-5f32, -1e-4f32).unwrap();
        }
        let (x, y) = (a.state(), b.state());
        assert_eq!(x.stage, y.stage);
        assert!(
            (x.sigma_z - y.sigma_z as f64).abs() < 0.05,
            "{} vs {}",
            x.sigma_z,
            y.sigma_z
        );
        assert!(
            (x.sigma_v - y.sigma_v as f64).abs() < 0.5,
            "{} vs {}",
            x.sigma_v,
            y.sigma_v
        );
    }
}
