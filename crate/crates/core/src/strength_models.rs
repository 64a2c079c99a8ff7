//! Peak strength of laterally confined concrete and grout.
//!
//! Two families are catalogued: additive models
//! `f_cc/f_co = a + k (f_r/f_co)^b` and multiplicative models `f_cc = k f_co`.
//! [`StrengthModel::Lim2014`] is the engine default and is also used for the
//! confined grout.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::geometry::JacketedSection;
use crate::scalar::{lit, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelKind {
    /// `f_cc = f_co + g(f_r, f_co)`
    Additive,
    /// `f_cc = k(f_r, f_co) f_co`
    Multiplicative,
}

/// Catalogue of confined strength models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
#[derive(Default)]
pub enum StrengthModel {
    Park1982,
    Hoang2017,
    Richart1928,
    Ec2,
    Zhou2021,
    Candappa2001,
    Saatcioglu1992,
    Hoshikuma1997,
    Fafitis1985,
    Mander1988,
    Attard1996,
    Setunge1993,
    Cusson1995,
    Legeron2003,
    Bousalem2007,
    Girgin2007,
    #[default]
    Lim2014,
}

impl StrengthModel {
    pub const ALL: [StrengthModel; 17] = [
        StrengthModel::Park1982,
        StrengthModel::Hoang2017,
        StrengthModel::Richart1928,
        StrengthModel::Ec2,
        StrengthModel::Zhou2021,
        StrengthModel::Candappa2001,
        StrengthModel::Saatcioglu1992,
        StrengthModel::Hoshikuma1997,
        StrengthModel::Fafitis1985,
        StrengthModel::Mander1988,
        StrengthModel::Attard1996,
        StrengthModel::Setunge1993,
        StrengthModel::Cusson1995,
        StrengthModel::Legeron2003,
        StrengthModel::Bousalem2007,
        StrengthModel::Girgin2007,
        StrengthModel::Lim2014,
    ];

    pub fn id(self) -> &'static str {
        match self {
            StrengthModel::Park1982 => "park1982",
            StrengthModel::Hoang2017 => "hoang2017",
            StrengthModel::Richart1928 => "richart1928",
            StrengthModel::Ec2 => "ec2",
            StrengthModel::Zhou2021 => "zhou2021",
            StrengthModel::Candappa2001 => "candappa2001",
            StrengthModel::Saatcioglu1992 => "saatcioglu1992",
            StrengthModel::Hoshikuma1997 => "hoshikuma1997",
            StrengthModel::Fafitis1985 => "fafitis1985",
            StrengthModel::Mander1988 => "mander1988",
            StrengthModel::Attard1996 => "attard1996",
            StrengthModel::Setunge1993 => "setunge1993",
            StrengthModel::Cusson1995 => "cusson1995",
            StrengthModel::Legeron2003 => "legeron2003",
            StrengthModel::Bousalem2007 => "bousalem2007",
            StrengthModel::Girgin2007 => "girgin2007",
            StrengthModel::Lim2014 => "lim2014",
        }
    }

    /// Looks a model up by id; `lim2014_default` is accepted as an alias.
    pub fn from_id(id: &str) -> Option<Self> {
        if id == "lim2014_default" {
            return Some(StrengthModel::Lim2014);
        }
        Self::ALL.into_iter().find(|m| m.id() == id)
    }

    pub fn kind(self) -> ModelKind {
        use StrengthModel::*;
        match self {
            Park1982 | Hoang2017 | Richart1928 | Ec2 | Zhou2021 | Candappa2001 | Saatcioglu1992 | Hoshikuma1997
            | Fafitis1985 | Lim2014 => ModelKind::Additive,
            Mander1988 | Attard1996 | Setunge1993 | Cusson1995 | Legeron2003 | Bousalem2007 | Girgin2007 => {
                ModelKind::Multiplicative
            }
        }
    }

    pub fn formula(self) -> &'static str {
        use StrengthModel::*;
        match self {
            Park1982 => "fcc = fco + 2 fr",
            Hoang2017 => "fcc = fco + 3.16 fr",
            Richart1928 => "fcc = fco + 4.1 fr",
            Ec2 => "fcc = fco + 5 fr",
            Zhou2021 => "fcc = fco + 5.1 fr",
            Candappa2001 => "fcc = fco + 5.3 fr",
            Saatcioglu1992 => "fcc = fco + 6.7 fr^0.83",
            Hoshikuma1997 => "fcc = fco + 7.6 fr",
            Fafitis1985 => "fcc = fco + (1.15 + 21/fco) fr",
            Mander1988 => "fcc = fco (-1.254 + 2.254 sqrt(1 + 7.94 fr/fco) - 2 fr/fco)",
            Attard1996 => "fcc = fco (fr/ft + 1)^(1.25 fco^-0.21 (1 + 0.062 fr/fco))",
            Setunge1993 => "fcc = fco (1 + 13.07 fr/fco)^0.63",
            Cusson1995 => "fcc = fco (1 + 2.1 (fr/fco)^0.7)",
            Legeron2003 => "fcc = fco (1 + 2.4 (fr/fco)^0.7)",
            Bousalem2007 => "fcc = fco (1 + 0.8 fr/sqrt(fco))",
            Girgin2007 => "fcc = fco (1 + 4.08 (fr/fco)^0.83)",
            Lim2014 => "fcc = fco + 5.2 fco^0.91 (fr/fco)^(fco^-0.06)",
        }
    }

    pub fn description(self) -> &'static str {
        use StrengthModel::*;
        match self {
            Park1982 => "square confined concrete",
            Hoang2017 => "circular steel tube confined concrete",
            Richart1928 => "combined compressed concrete",
            Ec2 => "concrete filled steel tube (Eurocode 2)",
            Zhou2021 => "square confined concrete",
            Candappa2001 => "concrete under triaxial compression",
            Saatcioglu1992 => "confined concrete",
            Hoshikuma1997 => "confined concrete",
            Fafitis1985 => "confined concrete",
            Mander1988 => "stirrup confined concrete",
            Attard1996 => "confined concrete",
            Setunge1993 => "confined high-strength concrete",
            Cusson1995 => "confined high-strength concrete",
            Legeron2003 => "confined normal and high-strength concrete",
            Bousalem2007 => "rectangular confined concrete",
            Girgin2007 => "confined ultra-high-strength concrete",
            Lim2014 => "CFST stub columns, rectangular and circular (default)",
        }
    }

    pub fn validity_note(self) -> &'static str {
        match self {
            StrengthModel::Ec2 => "valid for fr <= 0.05 fco",
            StrengthModel::Attard1996 => "needs tensile strength ft; defaults to 0.3 fco^(2/3) in capacity runs",
            StrengthModel::Mander1988 => "monotone for fr/fco <= 2.39",
            _ => "",
        }
    }

    /// Whether `f_cc - f_co` depends on `f_r` alone.
    pub fn increment_independent_of_fco(self) -> bool {
        use StrengthModel::*;
        matches!(
            self,
            Park1982 | Hoang2017 | Richart1928 | Ec2 | Zhou2021 | Candappa2001 | Saatcioglu1992 | Hoshikuma1997
        )
    }
}

impl std::fmt::Display for StrengthModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}

/// Inputs to a confined strength evaluation, MPa.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfinementInput<T> {
    pub f_co: T,
    pub f_r: T,
    /// Tensile strength; only read by the Attard model.
    pub f_t: Option<T>,
}

impl<T: Real> ConfinementInput<T> {
    pub fn new(f_co: T, f_r: T) -> Self {
        Self { f_co, f_r, f_t: None }
    }

    pub fn with_tensile(mut self, f_t: T) -> Self {
        self.f_t = Some(f_t);
        self
    }
}

/// Tensile strength estimate `0.3 f_co^(2/3)`, MPa.
pub fn default_tensile_strength<T: Real>(f_co: T) -> T {
    lit::<T>(0.3) * f_co.powf(lit(2.0 / 3.0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfinedStrength<T> {
    /// Confined peak strength, MPa.
    pub f_cc: T,
    /// Set when the input lies outside the model's stated validity range.
    pub warning: Option<String>,
}

/// Evaluates `model` at `input`.
pub fn confined_strength<T: Real>(model: StrengthModel, input: ConfinementInput<T>) -> Result<ConfinedStrength<T>> {
    let ConfinementInput { f_co, f_r, f_t } = input;
    if !(f_co > T::zero()) {
        return domain("f_co", f_co.as_f64(), "f_co > 0");
    }
    if !(f_r >= T::zero()) {
        return domain("f_r", f_r.as_f64(), "f_r >= 0");
    }
    let x = f_r / f_co;
    let one = T::one();
    let l = |v: f64| lit::<T>(v);
    let mut warning = None;
    use StrengthModel::*;
    let f_cc = match model {
        Park1982 => f_co + l(2.0) * f_r,
        Hoang2017 => f_co + l(3.16) * f_r,
        Richart1928 => f_co + l(4.1) * f_r,
        Ec2 => {
            if f_r > l(0.05) * f_co {
                warning = Some(format!(
                    "ec2: fr = {:.3} MPa exceeds 0.05 fco = {:.3} MPa",
                    f_r.as_f64(),
                    (l(0.05) * f_co).as_f64()
                ));
            }
            f_co + l(5.0) * f_r
        }
        Zhou2021 => f_co + l(5.1) * f_r,
        Candappa2001 => f_co + l(5.3) * f_r,
        Saatcioglu1992 => f_co + l(6.7) * f_r.powf(l(0.83)),
        Hoshikuma1997 => f_co + l(7.6) * f_r,
        Fafitis1985 => f_co + (l(1.15) + l(21.0) / f_co) * f_r,
        // -1.254 + 2.254 sqrt(1 + 7.94x) - 2x, regrouped so that x = 0 gives exactly 1
        Mander1988 => f_co * (one + l(2.254) * ((one + l(7.94) * x).sqrt() - one) - l(2.0) * x),
        Attard1996 => {
            let f_t = match f_t {
                Some(v) if v > T::zero() => v,
                Some(v) => return domain("f_t", v.as_f64(), "f_t > 0"),
                None => return Err(Error::Config("attard1996 requires the tensile strength f_t".into())),
            };
            let k = l(1.25) * f_co.powf(l(-0.21)) * (one + l(0.062) * x);
            f_co * (f_r / f_t + one).powf(k)
        }
        Setunge1993 => f_co * (one + l(13.07) * x).powf(l(0.63)),
        Cusson1995 => f_co * (one + l(2.1) * x.powf(l(0.7))),
        Legeron2003 => f_co * (one + l(2.4) * x.powf(l(0.7))),
        Bousalem2007 => f_co * (one + l(0.8) * f_r / f_co.sqrt()),
        Girgin2007 => f_co * (one + l(4.08) * x.powf(l(0.83))),
        Lim2014 => lim_ozbakkaloglu(f_co, f_r),
    };
    Ok(ConfinedStrength { f_cc, warning })
}

fn lim_ozbakkaloglu<T: Real>(f_co: T, f_r: T) -> T {
    if f_r == T::zero() {
        return f_co;
    }
    let exponent = f_co.powf(lit(-0.06));
    f_co + lit::<T>(5.2) * f_co.powf(lit(0.91)) * (f_r / f_co).powf(exponent)
}

/// Lateral confining stress from jacket hoop stress by equilibrium of
/// `eta_cs` plate walls over the effective width `B - (2 - √2) b`.
pub fn confining_stress<T: Real>(section: &JacketedSection<T>, sigma_h: T) -> Result<T> {
    if !(sigma_h >= T::zero()) {
        return domain("sigma_h", sigma_h.as_f64(), "sigma_h >= 0");
    }
    let width = section.outer_width - (lit::<T>(2.0) - T::SQRT_2()) * section.chord_span;
    if !(width > T::zero()) {
        return Err(Error::Geometry(format!(
            "effective confinement width B - (2 - √2) b = {} mm is not positive",
            width
        )));
    }
    Ok(section.eta_cs * section.corrugation.thickness * sigma_h / width)
}

/// Confined grout strength, same form as the default concrete model.
pub fn confined_grout_strength<T: Real>(f_cg: T, f_r: T) -> Result<T> {
    if !(f_cg > T::zero()) {
        return domain("f_cg", f_cg.as_f64(), "f_cg > 0");
    }
    if !(f_r >= T::zero()) {
        return domain("f_r", f_r.as_f64(), "f_r >= 0");
    }
    Ok(lim_ozbakkaloglu(f_cg, f_r))
}
