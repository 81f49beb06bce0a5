//! Numerical simulator of quantum-Zeno logic gates for photonic qubits.
//!
//! Two optical-fiber modes are coupled by their evanescent fields and carry at
//! most two photons in total. A photon present in a fiber encodes logical 1,
//! an empty fiber logical 0. Evolving the pair through half of a full-transfer
//! coupling region implements a square-root-of-SWAP on 0- and 1-photon
//! inputs, but two simultaneous photons bunch into the same core
//! (Hong-Ou-Mandel interference) and leave the logical subspace. Repeated
//! double-occupancy measurements — or strong two-photon absorption — suppress
//! that bunching, and in the strong-Zeno limit the device acts as the
//! `√SWAP′` gate on all four logical inputs.
//!
//! The crate is organized around that experiment:
//!
//! - [`fock`]: occupation-number bases, state vectors, density matrices and
//!   ladder operators for bosonic or fermionic mode statistics.
//! - [`dynamics`]: the coupler Hamiltonian and its exact unitary evolution.
//! - [`zeno`]: piecewise evolution interleaved with projective
//!   double-occupancy measurements, error curves and the strong-measurement
//!   limit map.
//! - [`absorption`]: Lindblad density-matrix evolution with a two-photon
//!   absorption channel replacing the measurements.
//! - [`gates`]: extraction of 4×4 logical gates from physical maps, the
//!   `√SWAP′`/`SWAP′`/CZ/CNOT circuit algebra and process fidelity.
//! - [`fermion`]: the same coupler for non-interacting fermions, and the
//!   boson-to-fermion crossover as the Zeno effect is strengthened.
//!
//! All computations are deterministic dense linear algebra on spaces of
//! dimension at most 7 (49 for vectorized density matrices); there is no
//! randomness and no integrator error in the primary code paths.

pub mod absorption;
pub mod dynamics;
mod error;
pub mod fermion;
pub mod fock;
pub mod gates;
mod linalg;
pub mod zeno;

pub use error::{Error, Result};
pub use fock::{
    build_basis, build_ladder_ops, double_occupancy_projector, Basis, DensityMatrix, FockVector,
    LadderOps, Statistics,
};
