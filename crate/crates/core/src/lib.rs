//! Evaluation codes on the GK curve: field arithmetic, point enumeration,
//! secant geometry, code construction and weight computations.

pub mod codes;
pub mod curve;
pub mod geometry;
pub mod gf;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod weights;

pub use codes::{CodeError, CodeFamilyTag, EvaluationCode};
pub use curve::{CurveError, CurveParams, PointClass, PointSet, ProjectivePoint};
pub use geometry::{Line, SecantTable, ZeroDimScheme};
pub use gf::{Elem, Field, FieldDescriptor};
pub use linalg::Matrix;
pub use report::{Level, Status, VerificationReport};
pub use weights::{DistanceCertificate, WeightError};
