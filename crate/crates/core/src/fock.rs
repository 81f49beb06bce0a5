//! Occupation-number bases, state vectors, density matrices and ladder
//! operators for two modes under bosonic or fermionic statistics.
//!
//! The device never holds more than two excitations, and the coupler
//! Hamiltonian conserves total number, so the two-excitation sector is
//! exactly closed: truncating the bosonic ladder at total number 2 is not an
//! approximation for any state prepared inside the cutoff.
//!
//! Basis ordering is fixed once and for all: states are sorted by total
//! occupation, then by the occupation of mode 1 in descending order.
//!
//! - Boson (dim 6): `|0,0⟩, |1,0⟩, |0,1⟩, |2,0⟩, |1,1⟩, |0,2⟩`
//! - Fermion (dim 4): `|0,0⟩, |1,0⟩, |0,1⟩, |1,1⟩`
//!
//! Fermionic signs follow the mode ordering (1, 2): the doubly-occupied
//! state is defined as `|1,1⟩ = a₁†a₂†|0,0⟩`, so `a₂†` acting on `|1,0⟩`
//! produces `−|1,1⟩`.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Exchange statistics of the two modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistics {
    /// At most two photons in total; occupations up to 2 per mode.
    Boson,
    /// At most one particle per mode (Pauli exclusion).
    Fermion,
}

impl Statistics {
    /// Dimension of the two-mode basis under this statistics.
    pub fn dim(self) -> usize {
        match self {
            Statistics::Boson => 6,
            Statistics::Fermion => 4,
        }
    }

    /// Largest occupation a single mode can hold.
    pub fn max_per_mode(self) -> u32 {
        match self {
            Statistics::Boson => 2,
            Statistics::Fermion => 1,
        }
    }

    /// Total-occupation cutoff (2 for both kinds of statistics).
    pub fn max_total(self) -> u32 {
        2
    }
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statistics::Boson => write!(f, "boson"),
            Statistics::Fermion => write!(f, "fermion"),
        }
    }
}

/// Ordered two-mode occupation basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    statistics: Statistics,
    states: Vec<(u32, u32)>,
}

/// Enumerate the basis for the given statistics in the documented order.
pub fn build_basis(statistics: Statistics) -> Basis {
    let mut states = Vec::with_capacity(statistics.dim());
    for total in 0..=statistics.max_total() {
        let hi = total.min(statistics.max_per_mode());
        let lo = total.saturating_sub(statistics.max_per_mode());
        for n1 in (lo..=hi).rev() {
            states.push((n1, total - n1));
        }
    }
    debug_assert_eq!(states.len(), statistics.dim());
    Basis { statistics, states }
}

impl Basis {
    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    /// All basis occupations `(n1, n2)` in index order.
    pub fn states(&self) -> &[(u32, u32)] {
        &self.states
    }

    /// Index of the basis state `|n1, n2⟩`.
    pub fn index_of(&self, n1: u32, n2: u32) -> Result<usize> {
        self.states
            .iter()
            .position(|&s| s == (n1, n2))
            .ok_or(Error::OccupationOutOfRange {
                statistics: self.statistics,
                n1,
                n2,
            })
    }

    /// Occupation pair at a basis index. Panics on an out-of-range index.
    pub fn occupation(&self, index: usize) -> (u32, u32) {
        self.states[index]
    }

    /// Total occupation of the basis state at `index`.
    pub fn total_number(&self, index: usize) -> u32 {
        let (n1, n2) = self.states[index];
        n1 + n2
    }
}

/// Complex amplitudes over the two-mode occupation basis.
///
/// Freshly prepared states are normalized; sub-normalized vectors appear only
/// as conditional branches of a measurement protocol and are labelled as such
/// wherever they are produced.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    statistics: Statistics,
    amplitudes: DVector<Complex64>,
}

impl FockVector {
    /// The basis state `|n1, n2⟩`.
    pub fn basis_state(statistics: Statistics, n1: u32, n2: u32) -> Result<Self> {
        let basis = build_basis(statistics);
        let idx = basis.index_of(n1, n2)?;
        let mut amplitudes = DVector::zeros(basis.dim());
        amplitudes[idx] = Complex64::new(1.0, 0.0);
        Ok(FockVector {
            statistics,
            amplitudes,
        })
    }

    /// The vacuum `|0, 0⟩`.
    pub fn vacuum(statistics: Statistics) -> Self {
        Self::basis_state(statistics, 0, 0).expect("vacuum exists in every basis")
    }

    /// Build a state from raw amplitudes. Rejects wrong dimensions and
    /// norms exceeding 1 (sub-normalized inputs are accepted).
    pub fn from_amplitudes(statistics: Statistics, amplitudes: DVector<Complex64>) -> Result<Self> {
        if amplitudes.len() != statistics.dim() {
            return Err(Error::DimensionMismatch {
                expected: statistics.dim(),
                got: amplitudes.len(),
            });
        }
        let norm = amplitudes.norm();
        if norm > 1.0 + 1e-9 {
            return Err(Error::NotNormalizable { norm });
        }
        Ok(FockVector {
            statistics,
            amplitudes,
        })
    }

    /// The zero vector (an empty conditional branch).
    pub fn zero(statistics: Statistics) -> Self {
        FockVector {
            statistics,
            amplitudes: DVector::zeros(statistics.dim()),
        }
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    /// Amplitude on the basis state `|n1, n2⟩`.
    pub fn amplitude(&self, n1: u32, n2: u32) -> Result<Complex64> {
        let idx = build_basis(self.statistics).index_of(n1, n2)?;
        Ok(self.amplitudes[idx])
    }

    /// Population `|⟨n1, n2|ψ⟩|²`.
    pub fn population(&self, n1: u32, n2: u32) -> Result<f64> {
        Ok(self.amplitude(n1, n2)?.norm_sqr())
    }

    /// Combined population of the doubly-occupied states `|2,0⟩` and `|0,2⟩`.
    /// Identically zero for fermions, which have no such states.
    pub fn double_occupancy_population(&self) -> f64 {
        match self.statistics {
            Statistics::Fermion => 0.0,
            Statistics::Boson => {
                self.population(2, 0).unwrap() + self.population(0, 2).unwrap()
            }
        }
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn norm_squared(&self) -> f64 {
        self.amplitudes.norm_squared()
    }

    /// `⟨self|other⟩`. Panics if the two states use different statistics.
    pub fn inner(&self, other: &FockVector) -> Complex64 {
        assert_eq!(
            self.statistics, other.statistics,
            "inner product across statistics"
        );
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// Unit-norm copy; the zero vector is returned unchanged.
    pub fn normalized(&self) -> Self {
        let norm = self.norm();
        if norm == 0.0 {
            return self.clone();
        }
        FockVector {
            statistics: self.statistics,
            amplitudes: &self.amplitudes / Complex64::new(norm, 0.0),
        }
    }

    /// Apply a matrix in the basis of this state. The result may be
    /// sub-normalized (conditional branch semantics); callers renormalize
    /// where their protocol requires it.
    pub(crate) fn apply(&self, matrix: &DMatrix<Complex64>) -> FockVector {
        assert_eq!(matrix.ncols(), self.dim(), "matrix/state dimension");
        FockVector {
            statistics: self.statistics,
            amplitudes: matrix * &self.amplitudes,
        }
    }
}

/// Ladder-operator matrices in the chosen basis.
///
/// `annihilate_i` is constructed as the conjugate transpose of `create_i`.
/// Bosonic matrix elements carry the usual `√n` factors, truncated where the
/// image would leave the two-excitation cutoff; fermionic elements carry the
/// sign of the (1, 2) mode ordering.
#[derive(Debug, Clone)]
pub struct LadderOps {
    statistics: Statistics,
    pub create_1: DMatrix<Complex64>,
    pub create_2: DMatrix<Complex64>,
    pub annihilate_1: DMatrix<Complex64>,
    pub annihilate_2: DMatrix<Complex64>,
}

/// Build creation/annihilation matrices for both modes.
pub fn build_ladder_ops(statistics: Statistics) -> LadderOps {
    let basis = build_basis(statistics);
    let dim = basis.dim();
    let mut create_1 = DMatrix::zeros(dim, dim);
    let mut create_2 = DMatrix::zeros(dim, dim);

    for (col, &(n1, n2)) in basis.states().iter().enumerate() {
        // a₁† |n1, n2⟩
        if let Ok(row) = basis.index_of(n1 + 1, n2) {
            let factor = match statistics {
                Statistics::Boson => ((n1 + 1) as f64).sqrt(),
                Statistics::Fermion => 1.0, // a₁† precedes a₂† in the reference ordering
            };
            create_1[(row, col)] = Complex64::new(factor, 0.0);
        }
        // a₂† |n1, n2⟩
        if let Ok(row) = basis.index_of(n1, n2 + 1) {
            let factor = match statistics {
                Statistics::Boson => ((n2 + 1) as f64).sqrt(),
                // Jordan-Wigner sign from anticommuting past the n1 operators
                // of mode 1.
                Statistics::Fermion => {
                    if n1 % 2 == 0 {
                        1.0
                    } else {
                        -1.0
                    }
                }
            };
            create_2[(row, col)] = Complex64::new(factor, 0.0);
        }
    }

    let annihilate_1 = create_1.adjoint();
    let annihilate_2 = create_2.adjoint();
    LadderOps {
        statistics,
        create_1,
        create_2,
        annihilate_1,
        annihilate_2,
    }
}

impl LadderOps {
    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn dim(&self) -> usize {
        self.create_1.nrows()
    }

    /// Total number operator `a₁†a₁ + a₂†a₂`.
    pub fn number_operator(&self) -> DMatrix<Complex64> {
        &self.create_1 * &self.annihilate_1 + &self.create_2 * &self.annihilate_2
    }

    /// Coupling operator `a₁†a₂ + a₂†a₁`.
    pub fn coupling_operator(&self) -> DMatrix<Complex64> {
        &self.create_1 * &self.annihilate_2 + &self.create_2 * &self.annihilate_1
    }
}

/// Projector onto "no two photons share a core":
/// `P = I − |2,0⟩⟨2,0| − |0,2⟩⟨0,2|`.
///
/// Only bosons can doubly occupy a mode, so the fermionic case is rejected
/// rather than silently returning the identity.
pub fn double_occupancy_projector(statistics: Statistics) -> Result<DMatrix<Complex64>> {
    match statistics {
        Statistics::Fermion => Err(Error::UnsupportedStatistics {
            operation: "double-occupancy projector",
            statistics,
        }),
        Statistics::Boson => {
            let basis = build_basis(statistics);
            let mut p = DMatrix::identity(basis.dim(), basis.dim());
            for &(n1, n2) in &[(2, 0), (0, 2)] {
                let idx = basis.index_of(n1, n2)?;
                p[(idx, idx)] = Complex64::new(0.0, 0.0);
            }
            Ok(p)
        }
    }
}

/// Density matrix over the basis, optionally extended by one explicit sink
/// state that collects absorbed population.
///
/// The sink is kept distinct from the vacuum: `|0,0⟩` is a valid logical
/// state (logical 00), while the sink records heralded two-photon loss.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    statistics: Statistics,
    sink_included: bool,
    matrix: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// `|ψ⟩⟨ψ|`, optionally embedded in the sink-extended space.
    pub fn from_pure(state: &FockVector, sink_included: bool) -> Self {
        let sys = state.dim();
        let dim = if sink_included { sys + 1 } else { sys };
        let mut matrix = DMatrix::zeros(dim, dim);
        for i in 0..sys {
            for j in 0..sys {
                matrix[(i, j)] = state.amplitudes()[i] * state.amplitudes()[j].conj();
            }
        }
        DensityMatrix {
            statistics: state.statistics(),
            sink_included,
            matrix,
        }
    }

    /// Wrap a raw matrix, validating Hermiticity, unit trace and positivity.
    pub fn from_matrix(
        statistics: Statistics,
        sink_included: bool,
        matrix: DMatrix<Complex64>,
    ) -> Result<Self> {
        let expected = statistics.dim() + usize::from(sink_included);
        if matrix.nrows() != expected || matrix.ncols() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: matrix.nrows().max(matrix.ncols()),
            });
        }
        let herm_dev = (&matrix - matrix.adjoint()).camax();
        if herm_dev > 1e-12 {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("Hermiticity deviation {herm_dev:.3e}"),
            });
        }
        let trace_dev = (matrix.trace() - Complex64::new(1.0, 0.0)).norm();
        if trace_dev > 1e-10 {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("trace deviates from 1 by {trace_dev:.3e}"),
            });
        }
        let min_eig = matrix
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .fold(f64::INFINITY, |a, &b| a.min(b));
        if min_eig < -1e-10 {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("negative eigenvalue {min_eig:.3e}"),
            });
        }
        Ok(DensityMatrix {
            statistics,
            sink_included,
            matrix,
        })
    }

    /// Internal constructor for evolution outputs that are valid by
    /// construction.
    pub(crate) fn from_matrix_unchecked(
        statistics: Statistics,
        sink_included: bool,
        matrix: DMatrix<Complex64>,
    ) -> Self {
        DensityMatrix {
            statistics,
            sink_included,
            matrix,
        }
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn sink_included(&self) -> bool {
        self.sink_included
    }

    /// Full dimension including the sink when present.
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// Diagonal population of the basis state `|n1, n2⟩`.
    pub fn population(&self, n1: u32, n2: u32) -> Result<f64> {
        let idx = build_basis(self.statistics).index_of(n1, n2)?;
        Ok(self.matrix[(idx, idx)].re)
    }

    /// Population collected in the sink; zero when no sink is present.
    pub fn sink_population(&self) -> f64 {
        if self.sink_included {
            let s = self.dim() - 1;
            self.matrix[(s, s)].re
        } else {
            0.0
        }
    }

    /// `max |ρ − ρ†|`, for invariant checks.
    pub fn hermiticity_deviation(&self) -> f64 {
        (&self.matrix - self.matrix.adjoint()).camax()
    }

    /// `⟨ψ|ρ|ψ⟩` with `|ψ⟩` a system state (sink amplitude zero).
    pub fn expectation(&self, state: &FockVector) -> f64 {
        assert_eq!(self.statistics, state.statistics(), "statistics mismatch");
        let sys = state.dim();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..sys {
            for j in 0..sys {
                acc += state.amplitudes()[i].conj() * self.matrix[(i, j)] * state.amplitudes()[j];
            }
        }
        acc.re
    }
}
