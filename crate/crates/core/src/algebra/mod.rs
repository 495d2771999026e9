//! Steinberg algebras of finite groupoids and crossed products of algebraic
//! partial actions, with the isomorphism between them checked exactly.

mod boolean;
mod crossed;
mod steinberg;
mod theorem;

pub use boolean::{boolean_rep_hom, tau_representation, BooleanHom, MatrixAlgebra, SteinbergAlgebra, TargetAlgebra};
pub use crossed::{CrossedProduct, CrossedProductElement, CrossedProductSummary};
pub use steinberg::{
    convolve, diagonal_subalgebra, indicator_representation_check, is_diagonal, IndicatorReport, SteinbergElement,
};
pub use theorem::{theorem_iso_verify, TheoremReport};

use crate::invsemi::TooLarge;
use crate::linalg::LinalgError;
use crate::paction::RecoverError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("elements belong to different groupoids")]
    GroupoidMismatch,
    #[error("elements belong to different crossed products")]
    StructureMismatch,
    #[error("{0} is not a field")]
    NotAField(String),
    #[error("D_{0} is not an ideal with local units containing the smaller ideals")]
    NotAnIdealWithLocalUnits(String),
    #[error("coefficient at point {x} lies outside D_{s}")]
    OutsideIdeal { s: String, x: usize },
    #[error("product of the {s} and {t} components leaves D_st")]
    ProductOutsideIdeal { s: String, t: String },
    #[error("L is not associative on ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("not a Boolean representation ({condition}) at U={u}, V={v}")]
    NotBooleanRep { condition: String, u: String, v: String },
    #[error("linear extension is not multiplicative on ({a}, {b})")]
    NotHomomorphism { a: String, b: String },
    #[error(transparent)]
    Action(#[from] RecoverError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    TooLarge(#[from] TooLarge),
}
