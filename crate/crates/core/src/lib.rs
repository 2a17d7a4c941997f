//! Exact computations with plane polynomial automorphisms: tameness
//! decisions, length over the fraction field, and stable-tameness
//! certificates for length-three maps.

pub mod algebra;
pub mod cli;
pub mod length3;
pub mod polymap;
pub mod stabilize;
pub mod tamecheck;
