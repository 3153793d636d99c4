//! Discrete Morse theory on finite simplicial complexes.

pub mod checks;
pub mod complex;
pub mod connectivity;
pub mod corpus;
mod f2;
pub mod format;
pub mod generate;
pub mod morse;
pub mod persistence;
pub mod value;

pub use complex::{Chain, ComplexError, Simplex, SimplexId, SimplicialComplex};
pub use morse::{GradientPath, GradientVectorField, MorseError, MorseFunction};
pub use value::MorseValue;

/// Exact rational values, as read from `.dmf` files.
pub type Rational = num_rational::BigRational;
pub type RationalMorseFunction = MorseFunction<Rational>;
/// Integer-valued functions, as produced by realizing a gradient field.
pub type IntMorseFunction = MorseFunction<i64>;
