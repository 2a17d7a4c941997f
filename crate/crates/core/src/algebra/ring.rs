use std::fmt;

use serde::{Deserialize, Serialize};

/// Which coefficient tower a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RingKind {
    Integers,
    Rationals,
    RatPolyT,
}

/// Coefficient domain descriptor.
///
/// `Z` and `QT` (= ℚ[t]) are the integral UFDs; `Q` and `QT_FRAC` (= ℚ(t))
/// are their fraction fields. The integers with the fraction flag set are
/// normalized to `Q`, so every descriptor has exactly one value
/// representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ring {
    kind: RingKind,
    fraction: bool,
}

impl Ring {
    pub const Z: Ring = Ring { kind: RingKind::Integers, fraction: false };
    pub const Q: Ring = Ring { kind: RingKind::Rationals, fraction: true };
    pub const QT: Ring = Ring { kind: RingKind::RatPolyT, fraction: false };
    pub const QT_FRAC: Ring = Ring { kind: RingKind::RatPolyT, fraction: true };

    pub fn new(kind: RingKind, fraction: bool) -> Ring {
        match (kind, fraction) {
            (RingKind::Integers, false) => Ring::Z,
            (RingKind::Integers, true) | (RingKind::Rationals, _) => Ring::Q,
            (RingKind::RatPolyT, f) => Ring { kind: RingKind::RatPolyT, fraction: f },
        }
    }

    pub fn kind(self) -> RingKind {
        self.kind
    }

    pub fn is_fraction_field(self) -> bool {
        self.fraction
    }

    pub fn is_field(self) -> bool {
        self.fraction
    }

    /// Every supported descriptor is a UFD (fields trivially so).
    pub fn is_ufd(self) -> bool {
        true
    }

    /// ℤ and ℚ[t] are Euclidean; fields are trivially Euclidean.
    pub fn is_euclidean(self) -> bool {
        true
    }

    /// Whether the parameter `t` is an element of this ring.
    pub fn has_parameter(self) -> bool {
        self.kind == RingKind::RatPolyT
    }

    pub fn fraction_field(self) -> Ring {
        match self.kind {
            RingKind::Integers | RingKind::Rationals => Ring::Q,
            RingKind::RatPolyT => Ring::QT_FRAC,
        }
    }

    /// Short tag used by the command line and the JSON payloads.
    pub fn tag(self) -> &'static str {
        match (self.kind, self.fraction) {
            (RingKind::Integers, _) => "Z",
            (RingKind::Rationals, _) => "Q",
            (RingKind::RatPolyT, false) => "Qt",
            (RingKind::RatPolyT, true) => "Q(t)",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Ring> {
        match tag {
            "Z" => Some(Ring::Z),
            "Q" => Some(Ring::Q),
            "Qt" => Some(Ring::QT),
            "Q(t)" | "Qtf" => Some(Ring::QT_FRAC),
            _ => None,
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}
