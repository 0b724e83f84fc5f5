//! Exact construction, verification and classification of self-dual
//! convolutional codes over `F_q[z]`.

pub mod classify;
pub mod cli;
pub mod code;
pub mod constructions;
pub mod error;
pub mod field;
pub mod matrix;
pub mod poly;

pub use code::{ConvolutionalCode, DistanceReport, DistanceStatus};
pub use error::{Error, Result};
pub use field::{FieldElement, FieldOp, FieldSpec};
pub use matrix::{PolyMatrix, Side};
pub use poly::{vec_content, Poly};
