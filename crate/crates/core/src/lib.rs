//! Leibniz algebras, their universal algebras `A(h, g)` and the bialgebra
//! machinery around them: characters, automorphisms, gradings and actions.
//!
//! Everything is generic over [`Field`]; the aliases below fix the two
//! fields the crate ships.

pub mod commutative;
pub mod error;
pub mod field;
pub mod gradcoact;
pub mod groebner;
pub mod homspace;
pub mod leibniz;
pub mod linalg;
pub mod poly;
pub mod serial;
pub mod universal;

pub use commutative::{AlgebraElement, CommutativeAlgebra, FiniteQuotient};
pub use error::{Error, Result};
pub use field::{Field, FieldError, FieldKind, Fp, PrimeField, Scalar};
pub use gradcoact::{BialgebraHom, FiniteAbelianGroup, Grading, GroupAction, GroupAlgebraElement, GroupBialgebra};
pub use groebner::{buchberger, GroebnerBasis};
pub use homspace::{Budget, Character};
pub use leibniz::{LeibnizAlgebra, LinearMap};
pub use linalg::Matrix;
pub use poly::{Grid, Monomial, MonomialOrder, PolyRing, Polynomial};
pub use universal::Presentation;

pub use num_rational::BigRational;

pub type Rational = BigRational;
pub type RationalPoly = Polynomial<Rational>;
pub type FpPoly = Polynomial<Fp>;
pub type RationalAlgebra = LeibnizAlgebra<Rational>;
pub type FpAlgebra = LeibnizAlgebra<Fp>;
pub type RationalMatrix = Matrix<Rational>;
pub type FpMatrix = Matrix<Fp>;
