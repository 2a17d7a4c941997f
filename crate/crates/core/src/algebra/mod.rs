//! Coefficient domains, sparse polynomials and UFD primitives.

pub mod elem;
pub mod error;
pub mod factor;
pub mod poly;
pub mod qpoly;
pub mod ratfunc;
pub mod render;
pub mod ring;

pub use elem::{extended_gcd, gcd, lcm, DomainElem};
pub use error::{AlgebraError, Result};
pub use factor::{clear_denominators, factor_irreducibles, radical, FactorConfig, Factorization};
pub use poly::{Degree, Monomial, MultiPoly};
pub use qpoly::QPoly;
pub use ratfunc::RatFunc;
pub use ring::{Ring, RingKind};
