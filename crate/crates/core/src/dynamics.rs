//! The two-mode coupler Hamiltonian and its exact unitary evolution.
//!
//! One evolution segment is described entirely by the dimensionless coupling
//! angle `θ`: the physical parameters (coupling strength, segment duration,
//! photon frequency, interaction length) enter every observable only through
//! this product. `θ = π/2` transfers a single photon completely into the
//! other fiber (the SWAP setting); `θ = π/4` is the 50/50 coupler.
//!
//! By default the free-evolution term `ω(a₁†a₁ + a₂†a₂)` is dropped
//! (interaction picture). It contributes only a phase `exp(−i·ωΔt·n)` per
//! total-number-`n` sector and can be switched on through
//! [`CouplerSpec::with_omega_phase`] to verify exactly that.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{build_ladder_ops, FockVector, LadderOps, Statistics};
use crate::linalg;

/// One coupler segment: coupling angle, statistics and optional free-phase
/// term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplerSpec {
    /// Dimensionless coupling angle accumulated over the segment.
    pub theta: f64,
    pub statistics: Statistics,
    /// Include the free-evolution number term.
    pub include_omega_term: bool,
    /// Free phase `ωΔt` accumulated over the segment, used only when
    /// `include_omega_term` is set.
    pub omega_phase: f64,
}

impl CouplerSpec {
    /// Interaction-picture segment (`ω` term off).
    pub fn new(theta: f64, statistics: Statistics) -> Self {
        CouplerSpec {
            theta,
            statistics,
            include_omega_term: false,
            omega_phase: 0.0,
        }
    }

    /// Enable the free-evolution term with the given per-segment phase.
    pub fn with_omega_phase(mut self, omega_phase: f64) -> Self {
        self.include_omega_term = true;
        self.omega_phase = omega_phase;
        self
    }
}

/// Result of evolving a state through one segment.
#[derive(Debug, Clone)]
pub struct EvolutionResult {
    pub output: FockVector,
    /// The segment unitary that produced `output`.
    pub segment_unitary: DMatrix<Complex64>,
}

/// Segment Hamiltonian `ω̃·(a₁†a₁ + a₂†a₂) + θ·(a₁†a₂ + a₂†a₁)`, scaled so
/// that `exp(−iH)` advances the state by one segment.
pub fn build_hamiltonian(spec: &CouplerSpec, ops: &LadderOps) -> Result<DMatrix<Complex64>> {
    if ops.statistics() != spec.statistics {
        return Err(Error::StatisticsMismatch {
            left: spec.statistics,
            right: ops.statistics(),
        });
    }
    let mut h = ops.coupling_operator() * Complex64::new(spec.theta, 0.0);
    if spec.include_omega_term {
        h += ops.number_operator() * Complex64::new(spec.omega_phase, 0.0);
    }
    Ok(h)
}

/// The segment unitary `exp(−iH)`, computed by exact eigendecomposition.
pub fn segment_unitary(spec: &CouplerSpec) -> DMatrix<Complex64> {
    let ops = build_ladder_ops(spec.statistics);
    let h = build_hamiltonian(spec, &ops).expect("ops built from the same statistics");
    linalg::unitary_from_hermitian(&h)
}

/// Evolve a state through one coupler segment.
pub fn evolve(state: &FockVector, spec: &CouplerSpec) -> Result<EvolutionResult> {
    if state.statistics() != spec.statistics {
        return Err(Error::StatisticsMismatch {
            left: spec.statistics,
            right: state.statistics(),
        });
    }
    let u = segment_unitary(spec);
    let output = state.apply(&u);
    Ok(EvolutionResult {
        output,
        segment_unitary: u,
    })
}
