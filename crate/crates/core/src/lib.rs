//! Cohomology of finite Lie conformal algebras with trivial coefficients,
//! computed exactly over the rationals.

pub mod algebra;
pub mod cochain;
pub mod cohomology;
pub mod complex;
pub mod linalg;
pub mod poly;
pub mod textfmt;

pub use algebra::{builtin, Algebra, AlgebraError, Embedding, Generator};
pub use cochain::{Cochain, ComponentKey};
pub use poly::{Poly, Scalar, Var};
