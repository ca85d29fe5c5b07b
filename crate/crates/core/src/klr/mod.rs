//! KLR algebras `R(ν)`: PBW normal forms, products, the involution `σ`,
//! graded dimensions and cyclotomic quotients `R^Λ(ν)`.

use thiserror::Error;

use crate::cartan::{CartanError, RootVector};

pub mod cyclotomic;
pub mod element;
pub mod engine;
pub mod graded;
pub mod linalg;
pub mod nilhecke;
pub mod perm;

pub use cyclotomic::{CyclotomicCaps, CyclotomicPresentation};
pub use element::{KlrElement, Mono};
pub use graded::{graded_dim_series, spanned_graded_dims};
pub use engine::Engine;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KlrError {
    #[error("content mismatch: {left} vs {right}")]
    ContentMismatch { left: RootVector, right: RootVector },
    #[error("word {0:?} has the wrong content")]
    BadWord(Vec<usize>),
    #[error("strand index {index} out of range for {strands} strands")]
    StrandOutOfRange { index: usize, strands: usize },
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("malformed element: {0}")]
    Format(String),
    #[error(transparent)]
    Cartan(#[from] CartanError),
}
