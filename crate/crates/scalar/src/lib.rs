//! Exact arithmetic in the field of rational functions ℚ(x₁, …, xₖ).
//!
//! Values are [`Scalar`]s: fractions of sparse integer polynomials kept in a
//! unique canonical form. Symbols are identified by index; a [`SymbolTable`]
//! gives them names for parsing and printing.

mod error;
mod gcd;
mod monomial;
mod poly;
mod scalar;
mod symbols;

pub use error::ScalarError;
pub use gcd::{gcd, lcm};
pub use monomial::Monomial;
pub use poly::Poly;
pub use scalar::Scalar;
pub use symbols::{ScalarDisplay, SymbolTable};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
