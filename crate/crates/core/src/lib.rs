//! Axial capacity and jacket stress analysis for square RC columns
//! strengthened with corrugated steel jackets and grout.
//!
//! All computations are generic over the scalar type (`f32` or `f64`).
//! The aliases at the crate root fix it to `f64`.

// `!(x > 0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod capacity;
pub mod dataset_validation;
pub mod error;
pub mod geometry;
pub mod materials;
pub mod numerics;
pub mod scalar;
pub mod strength_models;
pub mod stress_analysis;

pub use error::{Error, Result};
pub use scalar::Real;
pub use strength_models::StrengthModel;
pub use stress_analysis::{GaugeLocation, Stage};

pub type SteelProperties = materials::SteelProperties<f64>;
pub type GroutProperties = materials::GroutProperties<f64>;
pub type ConcreteState = materials::ConcreteState<f64>;
pub type CorrugationProfile = geometry::CorrugationProfile<f64>;
pub type JacketedSection = geometry::JacketedSection<f64>;
pub type SectionPartition = geometry::SectionPartition<f64>;
pub type ConfinementInput = strength_models::ConfinementInput<f64>;
pub type StrainSample = stress_analysis::StrainSample<f64>;
pub type StressState = stress_analysis::StressState<f64>;
pub type AnalysisConfig = stress_analysis::AnalysisConfig<f64>;
pub type Specimen = capacity::Specimen<f64>;
pub type CapacityReport = capacity::CapacityReport<f64>;
pub type LoadDisplacementCurve = capacity::LoadDisplacementCurve<f64>;
pub type SpecimenRecord = dataset_validation::SpecimenRecord;
pub type ValidationSummary = dataset_validation::ValidationSummary;
