//! Lines, conics and zero-dimensional schemes in PG(3, q^6), the secant
//! structure of the curve, and the h¹ machinery built on condition matrices.

use thiserror::Error;

use crate::curve::CurveError;

pub mod conic;
pub mod lemma;
pub mod line;
pub mod scheme;
pub mod secant;
pub mod section;

pub use conic::Conic;
pub use lemma::{
    classify_defect_cause, DefectClassification, Lemma, SearchBudget, Witness, WitnessKind,
};
pub use line::Line;
pub use scheme::{
    cohomology_defect, condition_matrix, residual_scheme, ConditionMatrix, Defect, SchemePoint,
    ZeroDimScheme,
};
pub use secant::{
    plane_section_bound_check, secant_classification, CurveLine, LineCensus, SecantAudit,
    SecantTable, SectionBoundReport,
};
pub use section::{curve_section_dimension, section_formula, SectionDimension};

pub use crate::poly::monomial_basis;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("the two linear forms are dependent")]
    DependentForms,
    #[error("a line needs two distinct points")]
    CoincidentPoints,
    #[error("scheme lists the same point twice")]
    DuplicatePoint,
    #[error("scheme multiplicities must be positive")]
    ZeroMultiplicity,
    #[error("a point of multiplicity above one needs a branch jet longer than its multiplicity")]
    MissingJet,
    #[error("{points} points exceed the census limit of {max}")]
    TooManyPoints { points: usize, max: usize },
    #[error("secant structure violated: {0}")]
    SecantStructure(String),
    #[error("section of size {found} exceeds the bound {bound}: points {witness:?}")]
    BoundViolation {
        bound: usize,
        found: usize,
        witness: Vec<usize>,
    },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
}
