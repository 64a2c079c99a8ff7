//! Confined / unconfined partition of the jacketed square section.
//!
//! Each side of the jacket confines the section except for a circular
//! segment bounded by the jacket face (the chord, spanning `b` between the
//! corner connectors) and a quarter-circle arc bulging into the section.
//! The RC core sits `t_g` behind the chord, so part of every segment falls in
//! the grout layer and part in the core.
//!
//! ```text
//!   A1  confined core concrete      A2  unconfined core concrete
//!   A3  confined grout              A4  unconfined grout
//!   A_corner = 4 c^2 corner connector squares
//! ```
//!
//! [`oracle_partition`] integrates the same boundaries on a grid
//! and is the reference for the closed forms.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::numerics::bisect;
use crate::scalar::{lit, Real};

/// Crest/trough bend radius of the standard 68 x 13 profile, mm.
pub const STANDARD_BEND_RADIUS: f64 = 17.5;
/// Wavelength of the standard profile, mm.
pub const STANDARD_WAVELENGTH: f64 = 68.0;

/// Arc-and-tangent corrugation profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrugationProfile<T> {
    /// Pitch of one corrugation period, mm.
    pub wavelength: T,
    /// Crest-to-trough depth `h_c`, mm.
    pub depth: T,
    /// Plate thickness `t_cs`, mm.
    pub thickness: T,
    /// Radius of the crest and trough bends, mm.
    pub bend_radius: T,
}

/// Developed lengths of one corrugation period, split by segment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileLengths<T> {
    pub crest: T,
    pub flat: T,
    pub trough: T,
    /// Half-angle subtended by each bend, rad.
    pub bend_angle: T,
}

impl<T: Real> ProfileLengths<T> {
    pub fn developed(&self) -> T {
        self.crest + self.flat + self.trough
    }
}

impl<T: Real> CorrugationProfile<T> {
    /// Profile with the bend radius scaled from the standard 68 x 13 profile.
    pub fn new(wavelength: T, depth: T, thickness: T) -> Result<Self> {
        let bend_radius = wavelength * lit(STANDARD_BEND_RADIUS / STANDARD_WAVELENGTH);
        Self::with_bend_radius(wavelength, depth, thickness, bend_radius)
    }

    pub fn with_bend_radius(wavelength: T, depth: T, thickness: T, bend_radius: T) -> Result<Self> {
        for (what, v) in [
            ("corrugation wavelength", wavelength),
            ("corrugation depth", depth),
            ("plate thickness", thickness),
            ("bend radius", bend_radius),
        ] {
            if !(v > T::zero()) {
                return domain(what, v.as_f64(), "positive");
            }
        }
        if !(depth < wavelength) {
            return domain("corrugation depth", depth.as_f64(), "depth < wavelength");
        }
        let p = Self {
            wavelength,
            depth,
            thickness,
            bend_radius,
        };
        p.lengths()?;
        Ok(p)
    }

    /// Solves the bend angle so that two bends joined by straight tangents
    /// fit a quarter pitch horizontally and half the depth vertically.
    pub fn lengths(&self) -> Result<ProfileLengths<T>> {
        let r = self.bend_radius;
        let q = self.wavelength / lit(4.0);
        let half_depth = self.depth / lit(2.0);
        let rise = |theta: T| r * (T::one() - theta.cos()) + (q - r * theta.sin()) * theta.tan() - half_depth;
        let theta_max = if q < r {
            (q / r).asin()
        } else {
            T::FRAC_PI_2() - lit(1e-6)
        };
        if rise(theta_max) < T::zero() {
            return Err(Error::Geometry(format!(
                "bend radius {} mm too large for a {} x {} mm corrugation",
                r, self.wavelength, self.depth
            )));
        }
        let theta = bisect(rise, T::zero(), theta_max, lit(1e-12), T::zero(), 200)?;
        let tangent = (q - r * theta.sin()) / theta.cos() * lit(2.0);
        let bend = lit::<T>(2.0) * r * theta;
        Ok(ProfileLengths {
            crest: bend,
            flat: tangent * lit(2.0),
            trough: bend,
            bend_angle: theta,
        })
    }

    /// Developed length per unit projected length.
    pub fn developed_length_ratio(&self) -> T {
        let l = self.lengths().expect("profile validated at construction");
        l.developed() / self.wavelength
    }

    /// Developed-length fractions `(crest, flat, trough)` of one period.
    pub fn segment_weights(&self) -> (T, T, T) {
        let l = self.lengths().expect("profile validated at construction");
        let d = l.developed();
        (l.crest / d, l.flat / d, l.trough / d)
    }
}

/// Geometry of the strengthened section.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacketedSection<T> {
    /// Outer width of the enhanced section `B`, mm.
    pub outer_width: T,
    /// Clear span between corner connectors `b`, mm (chord of each arc).
    pub chord_span: T,
    /// Width of the original RC core, mm.
    pub core_width: T,
    /// Grout layer thickness `t_g` between core face and jacket face, mm.
    pub grout_thickness: T,
    pub corrugation: CorrugationProfile<T>,
    /// Side length `c` of each corner connector square, mm.
    pub corner_span: T,
    /// Total corner angle steel area `A_L`, mm².
    pub angle_area: T,
    /// Total longitudinal rebar area `A_b`, mm².
    pub rebar_area: T,
    /// Number of jacket walls resisting one confinement direction.
    pub eta_cs: T,
    /// Subtract `A_b` from the confined core area.
    pub deduct_rebar_area: bool,
}

impl<T: Real> JacketedSection<T> {
    /// Corner span as angle leg minus plate thickness minus corrugation depth.
    pub fn corner_span_from_angle_leg(angle_leg: T, profile: &CorrugationProfile<T>) -> T {
        (angle_leg - profile.thickness - profile.depth).max(T::zero())
    }

    pub fn validate(&self) -> Result<()> {
        let two: T = lit(2.0);
        let half_b = self.outer_width / two;
        if !(self.core_width > T::zero()) {
            return domain("core width", self.core_width.as_f64(), "b_rc > 0");
        }
        if !(self.outer_width >= self.core_width) {
            return domain("outer width", self.outer_width.as_f64(), "B >= b_rc");
        }
        if !(self.chord_span > T::zero()) {
            return domain("chord span", self.chord_span.as_f64(), "b > 0");
        }
        if !(self.grout_thickness >= T::zero()) {
            return domain("grout thickness", self.grout_thickness.as_f64(), "t_g >= 0");
        }
        if self.outer_width < self.core_width + two * self.grout_thickness {
            return Err(Error::Geometry(format!(
                "B = {} mm is smaller than b_rc + 2 t_g = {} mm",
                self.outer_width,
                self.core_width + two * self.grout_thickness
            )));
        }
        if !(self.corner_span >= T::zero()) || lit::<T>(4.0) * self.corner_span.powi(2) >= self.outer_width.powi(2) {
            return domain("corner span", self.corner_span.as_f64(), "0 <= c and 4 c^2 < B^2");
        }
        if self.chord_span / two > half_b - self.corner_span {
            return Err(Error::Geometry(format!(
                "chord span {} mm runs into the {} mm corner connectors",
                self.chord_span, self.corner_span
            )));
        }
        if self.core_width / two > half_b - self.corner_span {
            return Err(Error::Geometry("corner connectors overlap the RC core".into()));
        }
        if !(self.eta_cs >= T::one()) {
            return domain("eta_cs", self.eta_cs.as_f64(), "eta_cs >= 1");
        }
        if !(self.angle_area >= T::zero()) {
            return domain("A_L", self.angle_area.as_f64(), "A_L >= 0");
        }
        if !(self.rebar_area >= T::zero()) {
            return domain("A_b", self.rebar_area.as_f64(), "A_b >= 0");
        }
        // the unconfined sub-segment must fit across the core face
        let r = unconfined_radius(self.chord_span)?;
        let d = r * T::FRAC_1_SQRT_2() + self.grout_thickness;
        if d < r {
            let half_chord = (r * r - d * d).sqrt();
            if half_chord > self.core_width / two * (T::one() + lit(1e-12)) {
                return Err(Error::Geometry(format!(
                    "unconfined segment is wider ({} mm) than the RC core ({} mm)",
                    two * half_chord,
                    self.core_width
                )));
            }
        }
        Ok(())
    }

    /// Total corner connector area `4 c^2`.
    pub fn corner_area(&self) -> T {
        lit::<T>(4.0) * self.corner_span * self.corner_span
    }

    /// Gross grout area `B^2 - b_rc^2 - 4 c^2`.
    pub fn grout_area(&self) -> T {
        self.outer_width.powi(2) - self.core_width.powi(2) - self.corner_area()
    }

    /// Cross-section area of the corrugated plates on all four sides,
    /// developed length over the clear span times thickness.
    pub fn jacket_area(&self) -> T {
        lit::<T>(4.0) * self.chord_span * self.corrugation.developed_length_ratio() * self.corrugation.thickness
    }
}

/// Areas of the section partition, mm².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SectionPartition<T> {
    /// Arc radius, mm.
    pub r: T,
    /// Unconfined segment area per side.
    pub s1: T,
    /// Part of `s1` inside the RC core.
    pub s1_rc: T,
    pub a1: T,
    pub a2: T,
    pub a3: T,
    pub a4: T,
    pub a_corner: T,
}

impl<T: Real> SectionPartition<T> {
    pub fn areas(&self) -> [(&'static str, T); 5] {
        [
            ("A1", self.a1),
            ("A2", self.a2),
            ("A3", self.a3),
            ("A4", self.a4),
            ("A_corner", self.a_corner),
        ]
    }
}

/// Radius of a 90° arc whose chord has length `b`.
pub fn unconfined_radius<T: Real>(b: T) -> Result<T> {
    if !(b > T::zero()) {
        return domain("b", b.as_f64(), "b > 0");
    }
    Ok(b * T::FRAC_1_SQRT_2())
}

/// Area between a 90° arc of radius `r` and its chord.
pub fn segment_area<T: Real>(r: T) -> Result<T> {
    if !(r > T::zero()) {
        return domain("r", r.as_f64(), "r > 0");
    }
    Ok((T::PI() - lit(2.0)) * r * r / lit(4.0))
}

/// Part of the 90° segment lying more than `t_g` behind its chord.
///
/// Standard circular-segment area at chord distance `d = r/√2 + t_g`;
/// zero once `t_g` exceeds the sagitta.
pub fn segment_area_core<T: Real>(r: T, t_g: T) -> Result<T> {
    if !(r > T::zero()) {
        return domain("r", r.as_f64(), "r > 0");
    }
    if !(t_g >= T::zero()) {
        return domain("t_g", t_g.as_f64(), "t_g >= 0");
    }
    let d = r * T::FRAC_1_SQRT_2() + t_g;
    if d >= r {
        return Ok(T::zero());
    }
    let area = r * r * (d / r).acos() - d * (r * r - d * d).sqrt();
    Ok(area.max(T::zero()))
}

/// Closed-form partition.
pub fn partition<T: Real>(section: &JacketedSection<T>) -> Result<SectionPartition<T>> {
    section.validate()?;
    let four: T = lit(4.0);
    let r = unconfined_radius(section.chord_span)?;
    let s1 = segment_area(r)?;
    let s1_rc = segment_area_core(r, section.grout_thickness)?;
    let rebar = if section.deduct_rebar_area {
        section.rebar_area
    } else {
        T::zero()
    };
    let a2 = four * s1_rc;
    let a1 = section.core_width.powi(2) - a2 - rebar;
    let a4 = four * (s1 - s1_rc);
    let a_corner = section.corner_area();
    let a3 = section.outer_width.powi(2) - (a1 + a2 + a4 + a_corner + rebar);
    let p = SectionPartition {
        r,
        s1,
        s1_rc,
        a1,
        a2,
        a3,
        a4,
        a_corner,
    };
    check_non_negative(&p)?;
    Ok(p)
}

fn check_non_negative<T: Real>(p: &SectionPartition<T>) -> Result<()> {
    for (area, v) in p.areas() {
        if v < T::zero() {
            return Err(Error::NegativeArea {
                area,
                value: v.as_f64(),
            });
        }
    }
    Ok(())
}

#[derive(Default, Clone, Copy)]
struct Tally {
    a1: f64,
    a2: f64,
    a3: f64,
    a4: f64,
    corner: f64,
}

/// Length of `[a0, a1] ∩ [b0, b1]`.
fn overlap(a0: f64, a1: f64, b0: f64, b1: f64) -> f64 {
    (a1.min(b1) - a0.max(b0)).max(0.0)
}

/// Grid integration on `grid_n x grid_n` cells.
///
/// Straight boundaries (core square, corner squares, chord lines) are
/// integrated exactly per cell; the arcs are resolved by testing the cell
/// midpoint. Rows run in parallel and are summed in row order, so the result
/// does not depend on scheduling.
pub fn oracle_partition<T: Real>(section: &JacketedSection<T>, grid_n: usize) -> Result<SectionPartition<T>> {
    if grid_n < 100 {
        return domain("grid_n", grid_n as f64, "grid_n >= 100");
    }
    section.validate()?;
    // classification runs in f64 regardless of T
    let bw = section.outer_width.as_f64();
    let half = bw / 2.0;
    let core = section.core_width.as_f64() / 2.0;
    let c = section.corner_span.as_f64();
    let r = section.chord_span.as_f64() / 2f64.sqrt();
    let chord = core + section.grout_thickness.as_f64();
    let centre = chord + r / 2f64.sqrt();
    let h = bw / grid_n as f64;
    let cell = h * h;

    // (along, outward) midpoint inside the arc's circle
    let in_circle = |u: f64, v: f64| u * u + (v - centre) * (v - centre) <= r * r;

    let rows: Vec<Tally> = (0..grid_n)
        .into_par_iter()
        .map(|j| {
            let (y0, y1) = (-half + j as f64 * h, -half + (j + 1) as f64 * h);
            let ym = 0.5 * (y0 + y1);
            let mut t = Tally::default();
            for i in 0..grid_n {
                let (x0, x1) = (-half + i as f64 * h, -half + (i + 1) as f64 * h);
                let xm = 0.5 * (x0 + x1);
                let corner_x = overlap(x0, x1, -half, -half + c) + overlap(x0, x1, half - c, half);
                let corner_y = overlap(y0, y1, -half, -half + c) + overlap(y0, y1, half - c, half);
                let corner = corner_x * corner_y;
                let in_core = overlap(x0, x1, -core, core) * overlap(y0, y1, -core, core);
                // each side: (along, outward interval, along-extent) of the cell
                let sides = [
                    (xm, ym, (y0, y1), x1 - x0),
                    (xm, -ym, (-y1, -y0), x1 - x0),
                    (ym, xm, (x0, x1), y1 - y0),
                    (ym, -xm, (-x1, -x0), y1 - y0),
                ];
                let (mut seg_core, mut seg_grout) = (0.0, 0.0);
                for (u, v, (v0, v1), width) in sides {
                    if in_circle(u, v) {
                        seg_core += width * overlap(v0, v1, f64::NEG_INFINITY, core);
                        seg_grout += width * overlap(v0, v1, core, chord);
                    }
                }
                t.corner += corner;
                t.a2 += seg_core;
                t.a4 += seg_grout;
                t.a1 += in_core - seg_core;
                t.a3 += cell - corner - in_core - seg_grout;
            }
            t
        })
        .collect();
    let t = rows.iter().fold(Tally::default(), |acc, r| Tally {
        a1: acc.a1 + r.a1,
        a2: acc.a2 + r.a2,
        a3: acc.a3 + r.a3,
        a4: acc.a4 + r.a4,
        corner: acc.corner + r.corner,
    });

    let rebar = if section.deduct_rebar_area {
        section.rebar_area.as_f64()
    } else {
        0.0
    };
    let p = SectionPartition {
        r: lit(r),
        s1: lit((t.a2 + t.a4) / 4.0),
        s1_rc: lit(t.a2 / 4.0),
        a1: lit(t.a1 - rebar),
        a2: lit(t.a2),
        a3: lit(t.a3),
        a4: lit(t.a4),
        a_corner: lit(t.corner),
    };
    check_non_negative(&p)?;
    Ok(p)
}
