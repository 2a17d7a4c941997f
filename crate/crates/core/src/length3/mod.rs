//! Length over the fraction field and the structure of length-three maps.

pub mod data;
pub mod lemmas;
pub mod peel;

pub use data::{extract_l3, L3Result, Length3Data, Length3Error, Length3Payload};
pub use lemmas::{compute_p1_p2, verify_lemma6, verify_lemma7, ConjugateData, Lemma6Report, PrimeReport, P1P2};
pub use peel::{length, peel_over_k, PeelError, PeelResult, Shear, ShearKind};
