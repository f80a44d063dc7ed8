//! Exact arithmetic toolkit for volume bounds of lattice simplices with
//! interior lattice points.

pub mod arith;
pub mod bounds;
pub mod corpus;
pub mod error;
pub mod prodsum;
pub mod simplex;
pub mod sylvester;
pub mod tau;
pub mod verify;

pub use arith::{ExactScalar, Matrix, Polynomial, RootEnclosure};
pub use error::{Error, Result};

pub type Rational = num_rational::BigRational;
pub type RationalMatrix = Matrix<Rational>;
pub type RationalPolynomial = Polynomial<Rational>;
