//! Oriented quantum algebras over finite-dimensional algebras and the
//! regular-isotopy invariants of oriented tangles, knots and links they define.

pub mod algebra;
pub mod cli;
pub mod automorphism;
pub mod coeff;
pub mod diagram;
pub mod error;
pub mod homfly;
pub mod invariant;
pub mod io;
pub mod oqa;
pub mod surd;

pub use oqa_scalar as scalar;
pub use oqa_scalar::{Scalar, SymbolTable};

pub use algebra::{AlgebraElement, AlgebraKind, AlgebraMap, AlgebraSpec, Element, TensorSquare, TensorSquareElement};
pub use automorphism::Automorphism;
pub use coeff::Coeff;
pub use diagram::{Boundary, MorseDiagram, Slice, SliceKind};
pub use invariant::{evaluate_knot, evaluate_link, evaluate_tangle, formal_word, Evaluator, FormalWord};
pub use error::{OqaError, Result};
pub use surd::{Surd, SurdField};
