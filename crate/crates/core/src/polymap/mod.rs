//! Polynomial maps and words in the tame generators.

pub mod map;
pub mod word;

pub use map::{determinant, MapError, MapResult, PolyMap};
pub use word::{inverse_matrix, BlockStatus, TameGenerator, TameWord};
