//! Piecewise unitary evolution interleaved with projective double-occupancy
//! measurements.
//!
//! The protocol splits the total coupling angle into `N` equal segments and,
//! after each segment, asks whether two photons share a fiber core. Finding
//! them is a heralded failure; not finding them projects the state onto the
//! complement and the evolution continues. The error probability is the
//! chance that any of the `N` measurements fires:
//! `P_E = 1 − Π(per-step survivals)`.
//!
//! For a photon in each input the dynamics reduces to a two-level problem
//! between `|1,1⟩` and `(|2,0⟩+|0,2⟩)/√2` with coupling `2θ`, giving the
//! closed form `P_E(N) = 1 − cos^{2N}(2θ_total/N)`; at the 50/50 setting
//! `θ_total = π/4` this is `1 − cos^{2N}(π/(2N))`, which tends to
//! `π²/4N` for large `N`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::dynamics::{segment_unitary, CouplerSpec};
use crate::error::{Error, Result};
use crate::fock::{build_basis, double_occupancy_projector, FockVector, Statistics};
use crate::linalg;

/// One measurement experiment: `N` equally-spaced measurements over a total
/// coupling angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZenoProtocol {
    n_measurements: usize,
    total_theta: f64,
    statistics: Statistics,
}

impl ZenoProtocol {
    /// Protocol with `n_measurements ≥ 1` at the default 50/50 setting
    /// (`θ_total = π/4`, bosons).
    pub fn new(n_measurements: usize) -> Result<Self> {
        if n_measurements == 0 {
            return Err(Error::InvalidProtocol {
                reason: "n_measurements must be at least 1".into(),
            });
        }
        Ok(ZenoProtocol {
            n_measurements,
            total_theta: std::f64::consts::FRAC_PI_4,
            statistics: Statistics::Boson,
        })
    }

    pub fn with_total_theta(mut self, total_theta: f64) -> Result<Self> {
        if !total_theta.is_finite() {
            return Err(Error::InvalidProtocol {
                reason: format!("total_theta must be finite, got {total_theta}"),
            });
        }
        self.total_theta = total_theta;
        Ok(self)
    }

    /// Fermionic variant: the measurement can never find two particles in
    /// one core, so it never fires and the protocol is plain evolution.
    pub fn with_statistics(mut self, statistics: Statistics) -> Self {
        self.statistics = statistics;
        self
    }

    pub fn n_measurements(&self) -> usize {
        self.n_measurements
    }

    pub fn total_theta(&self) -> f64 {
        self.total_theta
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    /// Coupling angle of one segment.
    pub fn segment_theta(&self) -> f64 {
        self.total_theta / self.n_measurements as f64
    }

    fn segment_spec(&self) -> CouplerSpec {
        CouplerSpec::new(self.segment_theta(), self.statistics)
    }

    /// Projector applied after each segment: the double-occupancy projector
    /// for bosons, the identity for fermions (nothing to project out).
    fn measurement_projector(&self) -> DMatrix<Complex64> {
        match self.statistics {
            Statistics::Boson => {
                double_occupancy_projector(Statistics::Boson).expect("boson projector exists")
            }
            Statistics::Fermion => DMatrix::identity(4, 4),
        }
    }
}

/// Outcome of a measurement protocol run.
#[derive(Debug, Clone)]
pub struct ZenoOutcome {
    /// Probability that no measurement ever found a doubly-occupied core.
    pub success_probability: f64,
    /// `P_E = 1 − success_probability`: some measurement heralded a failure.
    pub error_probability: f64,
    /// Renormalized post-selected state. When the surviving branch has
    /// probability zero this is the zero vector — an explicitly empty
    /// conditional branch.
    pub conditional_state: FockVector,
    /// Survival probability recorded at each of the `N` measurements.
    pub branch_record: Vec<f64>,
}

/// Run the measurement protocol on an input state.
pub fn run_zeno(protocol: &ZenoProtocol, input: &FockVector) -> Result<ZenoOutcome> {
    if input.statistics() != protocol.statistics() {
        return Err(Error::StatisticsMismatch {
            left: protocol.statistics(),
            right: input.statistics(),
        });
    }
    let u = segment_unitary(&protocol.segment_spec());
    let p = protocol.measurement_projector();

    let mut state = input.clone();
    let mut branch_record = Vec::with_capacity(protocol.n_measurements());
    for _ in 0..protocol.n_measurements() {
        state = state.apply(&u).apply(&p);
        let survival = state.norm_squared();
        branch_record.push(survival);
        state = state.normalized();
    }
    let success_probability: f64 = branch_record.iter().product();
    Ok(ZenoOutcome {
        success_probability,
        error_probability: 1.0 - success_probability,
        conditional_state: state,
        branch_record,
    })
}

/// Error probability `P_E(N)` for a photon incident in both inputs, over a
/// list of measurement counts.
pub fn zeno_error_curve(n_list: &[usize], total_theta: f64) -> Result<Vec<(usize, f64)>> {
    if n_list.is_empty() {
        return Err(Error::InvalidProtocol {
            reason: "empty N list".into(),
        });
    }
    let input = FockVector::basis_state(Statistics::Boson, 1, 1)?;
    n_list
        .iter()
        .map(|&n| {
            let protocol = ZenoProtocol::new(n)?.with_total_theta(total_theta)?;
            Ok((n, run_zeno(&protocol, &input)?.error_probability))
        })
        .collect()
}

/// The unnormalized conditional map of a finite-`N` protocol,
/// `(P·U(θ/N))^N`, as a matrix on the full Fock space.
///
/// Column norms below 1 record the probability lost to heralded failures.
pub fn finite_n_conditional_map(protocol: &ZenoProtocol) -> DMatrix<Complex64> {
    let u = segment_unitary(&protocol.segment_spec());
    let p = protocol.measurement_projector();
    linalg::matrix_power(&(p * u), protocol.n_measurements() as u64)
}

/// The `N → ∞` conditional map at the given total angle.
///
/// Frequent measurement freezes the two-photon transition completely:
/// `|1,1⟩` survives with amplitude 1, doubly-occupied inputs are removed by
/// the first measurement, and the 0- and 1-photon sectors (which the
/// measurement never touches) evolve exactly as the bare coupler.
pub fn zeno_limit_conditional_map(total_theta: f64) -> DMatrix<Complex64> {
    let basis = build_basis(Statistics::Boson);
    let mut m = DMatrix::zeros(6, 6);
    let vac = basis.index_of(0, 0).unwrap();
    m[(vac, vac)] = Complex64::new(1.0, 0.0);

    let one = basis.index_of(1, 0).unwrap();
    let two = basis.index_of(0, 1).unwrap();
    let (cos, sin) = (total_theta.cos(), total_theta.sin());
    m[(one, one)] = Complex64::new(cos, 0.0);
    m[(two, two)] = Complex64::new(cos, 0.0);
    m[(one, two)] = Complex64::new(0.0, -sin);
    m[(two, one)] = Complex64::new(0.0, -sin);

    let coincidence = basis.index_of(1, 1).unwrap();
    m[(coincidence, coincidence)] = Complex64::new(1.0, 0.0);
    // Doubly-occupied columns stay zero: the first measurement removes them.
    m
}
