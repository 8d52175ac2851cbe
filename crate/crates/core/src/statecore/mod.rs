//! Dense complex linear algebra and entropy primitives for small quantum states.

pub mod basis;
pub mod eig;
pub mod entropy;
pub mod io;
pub mod matrix;
pub mod partial;
pub mod random;
pub mod state;

pub use basis::{angle_count, basis_from_angles, LocalBasisSet};
pub use eig::{hermitian_eig, hermitian_eigenvalues, HermitianEigen};
pub use entropy::{relative_entropy, shannon_bits, shannon_entropy, von_neumann_entropy};
pub use matrix::{hadamard_product, tensor, ComplexMatrix, C64};
pub use partial::{partial_trace, partial_transpose, Side};
pub use random::{random_pure, random_state, random_unitary};
pub use state::{ProbabilityVector, QuantumState};
