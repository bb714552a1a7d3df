//! Crate error type.

use std::fmt;

/// Errors raised across the field / polynomial / code / simulation layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The characteristic passed to a field constructor is not prime.
    NotPrime(u64),
    /// The supplied modulus polynomial is not irreducible over F_p.
    ReducibleModulus,
    /// Requested subfield degree does not divide the extension degree.
    NoSuchSubfield { s: usize, kprime: usize },
    /// Division (or inversion) by zero in a field or polynomial ring.
    DivisionByZero,
    /// Two operands belong to different field specs.
    FieldMismatch,
    /// Discrete logarithm of the zero element.
    LogOfZero,
    /// Vector length does not match the expected block length.
    LengthMismatch { expected: usize, got: usize },
    /// λ = 0 passed where a unit is required.
    ZeroLambda,
    /// No element of the requested multiplicative order exists.
    NoSuchRoot { order: usize },
    /// Operation requires a simple-root plan (n coprime to p).
    RepeatedRootPlan,
    /// Zero set is not closed under q-conjugacy, so the generator would
    /// not live over the requested subfield.
    NotConjugacyClosed,
    /// Enumeration would exceed the configured budget.
    BudgetExceeded { needed: u128, budget: u128 },
    /// The CSS containment precondition does not hold.
    ContainmentViolated,
    /// Message symbol outside the configured code alphabet.
    AlphabetViolation { index: usize },
    /// Error position outside 0..n.
    IndexOutOfRange { index: usize, n: usize },
    /// The X- and Z-ancilla index sets of a circuit layout overlap.
    OverlappingAncillaSets,
    /// Layout leaves no room for message qudits.
    MessageSpaceEmpty,
    /// Quantum state / operator dimensions do not match.
    DimensionMismatch { expected: usize, got: usize },
    /// Syndrome register is not in a basis product state, so measurement
    /// would not be deterministic.
    NotBasisError,
    /// Classical decoding failed (more errors than the code can locate).
    DecodeFailure,
    /// Malformed textual descriptor (field, element, or vector).
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::ReducibleModulus => write!(f, "modulus polynomial is reducible"),
            Error::NoSuchSubfield { s, kprime } => {
                write!(f, "no subfield of degree {s} in GF(p^{kprime})")
            }
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::FieldMismatch => write!(f, "operands belong to different fields"),
            Error::LogOfZero => write!(f, "discrete log of zero"),
            Error::LengthMismatch { expected, got } => {
                write!(f, "length mismatch: expected {expected}, got {got}")
            }
            Error::ZeroLambda => write!(f, "lambda must be a unit"),
            Error::NoSuchRoot { order } => {
                write!(f, "field has no element of multiplicative order {order}")
            }
            Error::RepeatedRootPlan => {
                write!(f, "block length shares a factor with the characteristic")
            }
            Error::NotConjugacyClosed => {
                write!(f, "zero set is not closed under q-conjugacy")
            }
            Error::BudgetExceeded { needed, budget } => {
                write!(f, "enumeration needs {needed} steps, budget is {budget}")
            }
            Error::ContainmentViolated => write!(f, "CSS containment precondition fails"),
            Error::AlphabetViolation { index } => {
                write!(f, "message symbol {index} lies outside the code alphabet")
            }
            Error::IndexOutOfRange { index, n } => {
                write!(f, "position {index} out of range for length {n}")
            }
            Error::OverlappingAncillaSets => {
                write!(f, "X- and Z-ancilla index sets overlap")
            }
            Error::MessageSpaceEmpty => write!(f, "layout has no message qudits"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::NotBasisError => {
                write!(f, "syndrome register is not in a basis product state")
            }
            Error::DecodeFailure => write!(f, "decoding failure"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
