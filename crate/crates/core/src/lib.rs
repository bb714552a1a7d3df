//! Constacyclic BCH codes in the spectral domain.
//!
//! The crate is organized around seven pieces:
//!
//! * [`field`] — exact arithmetic in GF(p^k') with a designated subfield
//!   GF(p^s), discrete logs, and the field trace.
//! * [`poly`] — dense univariate polynomials over a field spec, including
//!   the extended Euclidean solver for the decoder's key equation and
//!   minimal polynomials over subfields.
//! * [`transform`] — the β-twisted finite field Fourier transform for
//!   λ-constacyclic codes and its algebraic properties.
//! * [`codes`] — constacyclic (BCH) code construction, zero sets,
//!   cyclotomic cosets, duals, containment predicates, repeated-root
//!   analysis, and CSS quantum code derivation.
//! * [`decoder`] — the spectral-domain codec (encode / key-equation
//!   decode), a brute-force reference decoder, and the operation-count
//!   model.
//! * [`qsim`] — desk-scale dense simulation of qudit operators, the
//!   Q(FFFT) encoding circuit, and the syndrome-extraction circuit.
//! * [`rng`] — a tiny deterministic PRNG used by randomized searches and
//!   property tests.

pub mod codes;
pub mod decoder;
pub mod error;
pub mod field;
pub mod poly;
pub mod qsim;
pub mod rng;
pub mod transform;

pub use error::Error;
pub use field::{FieldElement, FieldSpec};
pub use poly::Polynomial;
pub use transform::TransformPlan;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
