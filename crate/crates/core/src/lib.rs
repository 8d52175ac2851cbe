//! Quantumness of small multipartite quantum states through entanglement
//! activation.
//!
//! * [`statecore`]: dense complex matrices, a Jacobi eigensolver, partial
//!   trace and transpose, entropies, seeded sampling and JSON state files.
//! * [`activation`]: CNOTs from every system onto a `|0>` ancilla, controlled
//!   in a chosen local basis, and the equivalent maximally correlated form.
//! * [`quantumness`]: the relative entropy of quantumness by multi-start
//!   simplex search over local bases, and bounds for classical-quantum states.
//! * [`swapping`]: filtering the ancillae onto a pure state to swap
//!   system–ancilla entanglement back into the systems.
//! * [`cli`]: command implementations behind the `qactivate` binary.

pub mod activation;
pub mod cli;
pub mod error;
pub mod optimize;
pub mod quantumness;
pub mod statecore;
pub mod swapping;

pub use error::{Error, Result};
