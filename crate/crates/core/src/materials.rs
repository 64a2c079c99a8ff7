//! Steel, concrete and grout properties, including the damage-reduced
//! residual strength of pre-loaded concrete.
//!
//! All strains stored here are dimensionless. The peak-strain relation is
//! stated in per-mil and converted on the way in.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::scalar::{lit, Real};

/// Default elastic modulus of the jacket steel, MPa.
pub const DEFAULT_E_S: f64 = 206_000.0;
/// Default elastic Poisson ratio of steel; the elastoplastic Poisson law
/// starts from this value at the proportional limit.
pub const DEFAULT_MU_S: f64 = 0.283;
/// Default proportional limit as a fraction of the yield strength.
pub const DEFAULT_FP_RATIO: f64 = 0.8;
/// Default strength loss factor for pre-damaged concrete.
pub const DEFAULT_K_D: f64 = 0.10;
/// Admissible range of the strength loss factor.
pub const K_D_RANGE: (f64, f64) = (0.04, 0.10);

/// Which tensile coupon a steel property set was measured on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CouponClass {
    CorrugatedSegment,
    FlatSegment,
    Angle,
    LongitudinalBar,
    Stirrup,
}

impl CouponClass {
    pub const ALL: [CouponClass; 5] = [
        CouponClass::CorrugatedSegment,
        CouponClass::FlatSegment,
        CouponClass::Angle,
        CouponClass::LongitudinalBar,
        CouponClass::Stirrup,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CouponClass::CorrugatedSegment => "corrugated_segment",
            CouponClass::FlatSegment => "flat_segment",
            CouponClass::Angle => "angle",
            CouponClass::LongitudinalBar => "longitudinal_bar",
            CouponClass::Stirrup => "stirrup",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.as_str() == s)
    }
}

/// Strength and elastic constants of one steel coupon class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SteelProperties<T> {
    /// Yield strength, MPa.
    pub f_y: T,
    /// Ultimate strength, MPa.
    pub f_u: T,
    /// Elastic modulus, MPa.
    pub e_s: T,
    /// Elastic Poisson ratio.
    pub mu_s: T,
    /// Proportional limit, MPa.
    pub f_p: T,
    /// Plate thickness or bar diameter, mm.
    pub thickness_or_diameter: T,
    pub coupon_class: CouponClass,
}

impl<T: Real> SteelProperties<T> {
    /// Builds a property set and checks `0 < f_p < f_y < f_u`,
    /// `0 < mu_s < 0.5` and `E_s > 0`.
    pub fn new(
        coupon_class: CouponClass,
        thickness_or_diameter: T,
        f_y: T,
        f_u: T,
        e_s: T,
        mu_s: T,
        f_p: T,
    ) -> Result<Self> {
        if !(e_s > T::zero()) {
            return domain("E_s", e_s.as_f64(), "E_s > 0");
        }
        if !(mu_s > T::zero() && mu_s < lit(0.5)) {
            return domain("mu_s", mu_s.as_f64(), "0 < mu_s < 0.5");
        }
        if !(f_p > T::zero() && f_p < f_y) {
            return domain("f_p", f_p.as_f64(), "0 < f_p < f_y");
        }
        if !(f_y < f_u) {
            return domain("f_y", f_y.as_f64(), "f_y < f_u");
        }
        if !(thickness_or_diameter > T::zero()) {
            return domain("thickness_or_diameter", thickness_or_diameter.as_f64(), "positive");
        }
        Ok(Self {
            f_y,
            f_u,
            e_s,
            mu_s,
            f_p,
            thickness_or_diameter,
            coupon_class,
        })
    }

    /// Property set from measured strengths with default elastic constants
    /// and `f_p = 0.8 f_y`.
    pub fn from_strengths(coupon_class: CouponClass, thickness_or_diameter: T, f_y: T, f_u: T) -> Result<Self> {
        Self::new(
            coupon_class,
            thickness_or_diameter,
            f_y,
            f_u,
            lit(DEFAULT_E_S),
            lit(DEFAULT_MU_S),
            f_y * lit(DEFAULT_FP_RATIO),
        )
    }

    /// Shear modulus `E / (2 (1 + mu))`.
    pub fn shear_modulus(&self) -> T {
        self.e_s / (lit::<T>(2.0) * (T::one() + self.mu_s))
    }
}

/// Grout fill properties.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroutProperties<T> {
    /// Prism compressive strength, MPa.
    pub f_cg: T,
}

impl<T: Real> GroutProperties<T> {
    pub fn new(f_cg: T) -> Result<Self> {
        if !(f_cg > T::zero()) {
            return domain("f_cg", f_cg.as_f64(), "f_cg > 0");
        }
        Ok(Self { f_cg })
    }
}

/// Compressive strain at peak stress, `0.7 f_c^0.31` per-mil, returned as a
/// dimensionless strain.
pub fn peak_strain<T: Real>(f_c: T) -> Result<T> {
    if !(f_c > T::zero()) {
        return domain("f_c", f_c.as_f64(), "f_c > 0");
    }
    Ok(lit::<T>(0.7) * f_c.powf(lit(0.31)) / lit(1000.0))
}

/// Initial damage ratio `eps0/eps_c` reached by pre-loading to stress
/// ratio `sigma0/f_c` on the parabolic ascending branch
/// `sigma/f_c = 2 x - x^2`.
pub fn damage_ratio_from_stress<T: Real>(sigma0_ratio: T) -> Result<T> {
    if !(sigma0_ratio >= T::zero() && sigma0_ratio <= T::one()) {
        return domain("sigma0_ratio", sigma0_ratio.as_f64(), "0 <= sigma0/f_c <= 1");
    }
    Ok(T::one() - (T::one() - sigma0_ratio).sqrt())
}

/// Residual strength of damaged concrete, `f_c (1 - k_d sqrt(eps0/eps_c))`.
pub fn damaged_strength<T: Real>(f_c: T, eps0_ratio: T, k_d: T) -> Result<T> {
    if !(f_c > T::zero()) {
        return domain("f_c", f_c.as_f64(), "f_c > 0");
    }
    if !(eps0_ratio >= T::zero() && eps0_ratio <= T::one()) {
        return domain("eps0_ratio", eps0_ratio.as_f64(), "0 <= eps0/eps_c <= 1");
    }
    check_k_d(k_d)?;
    Ok(f_c * (T::one() - k_d * eps0_ratio.sqrt()))
}

fn check_k_d<T: Real>(k_d: T) -> Result<()> {
    // Compare in f64 so that the decimal bounds are not rounded inward in f32.
    let k = k_d.as_f64();
    let eps = 1e-6;
    if !(k >= K_D_RANGE.0 - eps && k <= K_D_RANGE.1 + eps) {
        return domain("k_d", k, "0.04 <= k_d <= 0.10");
    }
    Ok(())
}

/// Pre-damage state of the original concrete core.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConcreteState<T> {
    /// Undamaged prism strength, MPa.
    pub f_c: T,
    /// Strain at peak stress.
    pub eps_c: T,
    /// Pre-load stress ratio `sigma0/f_c`.
    pub sigma0_ratio: T,
    /// Initial damage ratio `eps0/eps_c`.
    pub eps0_ratio: T,
    /// Strength loss factor.
    pub k_d: T,
    /// Residual damaged strength `f'_c`, MPa.
    pub f_c_damaged: T,
}

impl<T: Real> ConcreteState<T> {
    /// Concrete pre-loaded to `sigma0_ratio * f_c` and unloaded.
    pub fn from_stress_ratio(f_c: T, sigma0_ratio: T, k_d: T) -> Result<Self> {
        let eps_c = peak_strain(f_c)?;
        let eps0_ratio = damage_ratio_from_stress(sigma0_ratio)?;
        let f_c_damaged = damaged_strength(f_c, eps0_ratio, k_d)?;
        Ok(Self {
            f_c,
            eps_c,
            sigma0_ratio,
            eps0_ratio,
            k_d,
            f_c_damaged,
        })
    }

    pub fn undamaged(f_c: T) -> Result<Self> {
        Self::from_stress_ratio(f_c, T::zero(), lit(DEFAULT_K_D))
    }

    /// Pre-load strain `eps0`, dimensionless.
    pub fn eps0(&self) -> T {
        self.eps0_ratio * self.eps_c
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Inverts `2x - x^2 = s` on [0, 1] by bisection, independent of the
    /// closed form.
    fn parabola_inverse_oracle(s: f64) -> f64 {
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if 2.0 * mid - mid * mid < s {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn peak_strain_values() {
        // 0.7 * 44.5^0.31 = 2.27042.. per-mil
        let oracle = |f: f64| 0.7 * (0.31 * f.ln()).exp() / 1000.0;
        assert!((peak_strain::<f64>(44.5).unwrap() - 0.00227).abs() < 5e-6);
        assert!((peak_strain::<f64>(54.9).unwrap() - 0.00242).abs() < 5e-6);
        assert!((peak_strain::<f64>(44.5f64).unwrap() - oracle(44.5)).abs() < 1e-15);
        assert_eq!(peak_strain::<f64>(1.0).unwrap(), 0.0007);
        assert!(peak_strain::<f64>(0.0).is_err());
        assert!(peak_strain::<f64>(-3.0).is_err());
    }

    #[test]
    fn damage_ratio_values() {
        assert_eq!(damage_ratio_from_stress::<f64>(0.0).unwrap(), 0.0);
        assert_eq!(damage_ratio_from_stress::<f64>(1.0).unwrap(), 1.0);
        let x = damage_ratio_from_stress::<f64>(0.4).unwrap();
        assert!((x - 0.22540).abs() < 5e-6);
        assert!((x - parabola_inverse_oracle(0.4)).abs() < 1e-12);
        assert!(damage_ratio_from_stress::<f64>(1.01).is_err());
        assert!(damage_ratio_from_stress::<f64>(-0.01).is_err());
    }

    #[test]
    fn damaged_strength_values() {
        assert_eq!(damaged_strength::<f64>(54.9, 0.0, 0.1).unwrap(), 54.9);
        let f = damaged_strength::<f64>(54.9, 0.22540, 0.1).unwrap();
        assert!((f - 52.29).abs() < 0.005);
        let f = damaged_strength::<f64>(44.5, 1.0, 0.1).unwrap();
        assert!((f - 40.05).abs() < 1e-9);
        assert!(damaged_strength::<f64>(44.5, 0.5, 0.2).is_err());
        assert!(damaged_strength::<f64>(44.5, 0.5, 0.01).is_err());
        assert!(damaged_strength::<f64>(44.5, 1.5, 0.1).is_err());
        assert!(damaged_strength::<f64>(0.0, 0.5, 0.1).is_err());
    }

    #[test]
    fn concrete_state_from_stress_ratio() {
        let c = ConcreteState::<f64>::from_stress_ratio(54.9, 0.4, 0.1).unwrap();
        assert!((c.f_c_damaged / 54.9 - 0.95252).abs() < 5e-6);
        assert!(c.f_c_damaged <= c.f_c);
        assert!(c.f_c_damaged >= (1.0 - c.k_d) * c.f_c);
        assert!((c.eps0() - c.eps0_ratio * c.eps_c).abs() < 1e-18);
    }

    #[test]
    fn steel_invariants() {
        let s = SteelProperties::<f64>::from_strengths(CouponClass::CorrugatedSegment, 2.0, 389.42, 437.31).unwrap();
        assert!((s.f_p - 311.536).abs() < 1e-9);
        assert!((s.shear_modulus() - 206_000.0 / (2.0 * 1.283)).abs() < 1e-9);
        assert!(SteelProperties::<f64>::from_strengths(CouponClass::Angle, 4.0, 500.0, 400.0).is_err());
        assert!(SteelProperties::<f64>::new(CouponClass::Angle, 4.0, 300.0, 400.0, 2e5, 0.5, 200.0).is_err());
        assert!(SteelProperties::<f64>::new(CouponClass::Angle, 4.0, 300.0, 400.0, 2e5, 0.3, 300.0).is_err());
        assert!(SteelProperties::<f64>::new(CouponClass::Angle, 4.0, 300.0, 400.0, 0.0, 0.3, 200.0).is_err());
    }

    #[test]
    fn coupon_class_names_round_trip() {
        for c in CouponClass::ALL {
            assert_eq!(CouponClass::parse(c.as_str()), Some(c));
        }
        assert_eq!(CouponClass::parse("rebar"), None);
    }

    #[test]
    fn single_precision() {
        let c = ConcreteState::<f32>::from_stress_ratio(54.9, 0.4, 0.1).unwrap();
        assert!((c.f_c_damaged - 52.294).abs() < 1e-2);
    }

    proptest! {
        #[test]
        fn damaged_strength_monotone(f_c in 1.0f64..150.0, a in 0.0f64..=1.0, b in 0.0f64..=1.0,
                                     k1 in 0.04f64..=0.10, k2 in 0.04f64..=0.10) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(damaged_strength(f_c, hi, k1).unwrap() <= damaged_strength(f_c, lo, k1).unwrap());
            let (klo, khi) = if k1 <= k2 { (k1, k2) } else { (k2, k1) };
            prop_assert!(damaged_strength(f_c, a, khi).unwrap() <= damaged_strength(f_c, a, klo).unwrap());
            prop_assert_eq!(damaged_strength(f_c, 0.0, k1).unwrap(), f_c);
        }

        #[test]
        fn damage_ratio_is_monotone_bijection(a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let (x_lo, x_hi) = (damage_ratio_from_stress(lo).unwrap(), damage_ratio_from_stress(hi).unwrap());
            prop_assert!(x_lo <= x_hi);
            prop_assert!((0.0..=1.0).contains(&x_lo) && (0.0..=1.0).contains(&x_hi));
            // back through the parabola
            prop_assert!((2.0 * x_hi - x_hi * x_hi - hi).abs() < 1e-12);
        }

        #[test]
        fn peak_strain_monotone(a in 0.1f64..200.0, b in 0.1f64..200.0) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(peak_strain(lo).unwrap() <= peak_strain(hi).unwrap());
        }
    }
}
