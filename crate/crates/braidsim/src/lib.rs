//! Simulation of non-Abelian braiding in the three-fold degenerate eigen
//! subspace of a four-level system.
//!
//! The crate is organized bottom-up:
//! - [`numerics`]: dense complex-matrix primitives (Hermitian eigendecomposition,
//!   spectral propagators, projectors).
//! - [`model`]: the four-level control Hamiltonian family, its analytic dressed
//!   frame, gauge potentials/fields, and the five-pod reduction.
//! - [`braiding`]: braid letters, timed pulse schedules, and pure/mixed state
//!   propagation.
//! - [`analysis`]: topological diagnostics (K function, writhe, phase scans,
//!   coherence scans, breaking-dynamics probe).
//! - [`qutrit`]: X3/Z3 gate synthesis from braid sequences.
//! - [`manybody`]: N-qubit composite-state braiding via Pauli-string Hamiltonians.
//! - [`scenario`]: config-driven experiment runner backing the CLI.

pub mod analysis;
pub mod braiding;
pub mod manybody;
pub mod model;
pub mod numerics;
pub mod qutrit;
pub mod scenario;
