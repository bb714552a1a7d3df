//! Desk-scale dense simulation of qudit registers.
//!
//! Qudits have p^k' levels labeled by field elements; the basis index of
//! an m-qudit register is Σ code(θ_g)·D^{m-g} with qudit 1 the most
//! significant factor. Operators are kept structured (permutations,
//! diagonals, small dense blocks) and expand to dense matrices only for
//! identity checks, capped at side 4096. State-only paths handle up to
//! 2^24 amplitudes.

mod circuit;
mod layout;
mod operator;
mod relations;
mod state;

pub use circuit::{
    apply_pauli, codespace_projector_trace, deduce_and_recover, encode_state, initial_state,
    is_stabilized, stabilizer_x, stabilizer_z, syndrome_extract, syndrome_oracle_x,
    syndrome_oracle_z, SyndromeOutcome,
};
pub use layout::CircuitLayout;
pub use operator::{op_add, op_dft, op_qfffft, op_x, op_z, QuditOperator};
pub use relations::{verify_all_relations, verify_relation, Relation};
pub use state::QuditState;

/// Comparison tolerance for all operator and state identities.
pub const TOLERANCE: f64 = 1e-9;

/// Largest dense matrix side expanded for identity checks.
pub const DENSE_SIDE_LIMIT: usize = 4096;

/// Largest register simulated on the state-only paths.
pub const STATE_AMPLITUDE_LIMIT: u128 = 1 << 24;
