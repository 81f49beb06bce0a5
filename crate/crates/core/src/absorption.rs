//! Density-matrix evolution with two-photon absorption in place of
//! projective measurement.
//!
//! States with two photons in one core are absorbed at rate `1/τ_D`. The
//! master equation is
//!
//! ```text
//! dρ/dt = −i[H, ρ] + Σ_k γ (J_k ρ J_k† − ½{J_k†J_k, ρ}),   J_k ∝ a_k²
//! ```
//!
//! with `γ = 1/(2τ_D)`: the anticommutator term then makes the
//! double-occupancy *populations* decay at exactly `1/τ_D`, which is the
//! stated rate convention. Absorbed probability is routed into an explicit
//! sink state rather than the vacuum — the vacuum is the valid logical 00,
//! while the sink records heralded two-photon loss.
//!
//! The effective measurement count is `N = Δt/4τ_D`, putting the absorption
//! error curve on the same axis as the measurement curve.
//!
//! Primary backend: exponentiation of the vectorized Liouvillian (exact, no
//! step error). Cross-check backend: fixed-step RK4 with
//! `h ≤ min(τ_D, Δt)/200`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::dynamics::{build_hamiltonian, CouplerSpec};
use crate::error::{Error, Result};
use crate::fock::{build_ladder_ops, DensityMatrix, FockVector, Statistics};
use crate::linalg;
use crate::zeno::zeno_limit_conditional_map;

/// One absorption experiment: decay time, total interaction time, coupling
/// angle and sink handling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbsorptionModel {
    tau_d: f64,
    delta_t: f64,
    total_theta: f64,
    sink_enabled: bool,
}

impl AbsorptionModel {
    /// Model with the default 50/50 coupling (`θ_total = π/4`) and the sink
    /// enabled. `tau_d = ∞` is accepted and turns absorption off.
    pub fn new(tau_d: f64, delta_t: f64) -> Result<Self> {
        if tau_d.is_nan() || tau_d <= 0.0 {
            return Err(Error::InvalidModel {
                reason: format!("tau_d must be positive, got {tau_d}"),
            });
        }
        if !delta_t.is_finite() || delta_t <= 0.0 {
            return Err(Error::InvalidModel {
                reason: format!("delta_t must be positive and finite, got {delta_t}"),
            });
        }
        Ok(AbsorptionModel {
            tau_d,
            delta_t,
            total_theta: std::f64::consts::FRAC_PI_4,
            sink_enabled: true,
        })
    }

    /// Model with the decay time chosen so that `Δt/4τ_D = n`.
    pub fn from_zeno_n(n: f64, delta_t: f64) -> Result<Self> {
        if !n.is_finite() || n <= 0.0 {
            return Err(Error::InvalidModel {
                reason: format!("effective N must be positive and finite, got {n}"),
            });
        }
        Self::new(delta_t / (4.0 * n), delta_t)
    }

    pub fn with_total_theta(mut self, total_theta: f64) -> Result<Self> {
        if !total_theta.is_finite() {
            return Err(Error::InvalidModel {
                reason: format!("total_theta must be finite, got {total_theta}"),
            });
        }
        self.total_theta = total_theta;
        self
    }

    /// Disable the sink: absorbed population decays to the vacuum instead.
    /// Useful for rate checks; the default keeps losses heralded.
    pub fn with_sink_enabled(mut self, sink_enabled: bool) -> Self {
        self.sink_enabled = sink_enabled;
        self
    }

    pub fn tau_d(&self) -> f64 {
        self.tau_d
    }

    pub fn delta_t(&self) -> f64 {
        self.delta_t
    }

    pub fn total_theta(&self) -> f64 {
        self.total_theta
    }

    pub fn sink_enabled(&self) -> bool {
        self.sink_enabled
    }

    /// Effective measurement count `N = Δt/4τ_D`, recomputed on demand.
    pub fn zeno_n(&self) -> f64 {
        self.delta_t / (4.0 * self.tau_d)
    }

    /// Lindblad prefactor `γ = 1/(2τ_D)`.
    pub fn gamma(&self) -> f64 {
        0.5 / self.tau_d
    }

    fn dim(&self) -> usize {
        Statistics::Boson.dim() + usize::from(self.sink_enabled)
    }

    /// Hamiltonian per unit time, embedded in the (possibly sink-extended)
    /// space. The sink neither evolves nor couples.
    fn hamiltonian(&self) -> DMatrix<Complex64> {
        let epsilon = self.total_theta / self.delta_t;
        let spec = CouplerSpec::new(epsilon, Statistics::Boson);
        let ops = build_ladder_ops(Statistics::Boson);
        let h6 = build_hamiltonian(&spec, &ops).expect("matching statistics");
        let mut h = DMatrix::zeros(self.dim(), self.dim());
        h.view_mut((0, 0), (6, 6)).copy_from(&h6);
        h
    }

    /// Jump operators, one per mode: `a_k²` with the output redirected to
    /// the sink when it is enabled.
    fn jump_operators(&self) -> Vec<DMatrix<Complex64>> {
        let ops = build_ladder_ops(Statistics::Boson);
        let dim = self.dim();
        [&ops.annihilate_1, &ops.annihilate_2]
            .into_iter()
            .map(|a| {
                let two_photon = a * a; // maps |2,0⟩ or |0,2⟩ to √2·|0,0⟩
                let mut j = DMatrix::zeros(dim, dim);
                if self.sink_enabled {
                    // Send the pair to the sink with the same amplitude.
                    let sink = dim - 1;
                    for col in 0..6 {
                        j[(sink, col)] = two_photon[(0, col)];
                    }
                } else {
                    j.view_mut((0, 0), (6, 6)).copy_from(&two_photon);
                }
                j
            })
            .collect()
    }
}

/// Integration backend for the master equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    /// Exponentiate the vectorized Liouvillian (exact; the default).
    LiouvillianExpm,
    /// Fixed-step RK4 with `h ≤ min(τ_D, Δt)/200`; the independent
    /// cross-check route.
    Rk4,
}

impl Backend {
    pub fn label(&self) -> &'static str {
        match self {
            Backend::LiouvillianExpm => "liouvillian-expm",
            Backend::Rk4 => "rk4",
        }
    }
}

/// Outcome of an absorption run.
#[derive(Debug, Clone)]
pub struct ChannelOutcome {
    pub rho_out: DensityMatrix,
    /// Population of the intended logical output state.
    pub p_success: f64,
    /// Population absorbed into the sink (heralded loss).
    pub p_heralded: f64,
    /// `P_E = 1 − p_success`.
    pub p_error: f64,
}

/// Superoperator advancing the vectorized density matrix, per unit time.
///
/// Column-major vectorization: `vec(AρB) = (Bᵀ ⊗ A)·vec(ρ)`.
pub fn liouvillian_matrix(model: &AbsorptionModel) -> DMatrix<Complex64> {
    let dim = model.dim();
    let id = DMatrix::<Complex64>::identity(dim, dim);
    let h = model.hamiltonian();
    let minus_i = Complex64::new(0.0, -1.0);

    let mut l = (id.kronecker(&h) - h.transpose().kronecker(&id)) * minus_i;
    let gamma = Complex64::new(model.gamma(), 0.0);
    if gamma.re > 0.0 {
        for j in model.jump_operators() {
            let jj = j.adjoint() * &j;
            let half = Complex64::new(0.5, 0.0);
            l += (j.conjugate().kronecker(&j)
                - id.kronecker(&jj) * half
                - jj.transpose().kronecker(&id) * half)
                * gamma;
        }
    }
    l
}

fn vectorize(m: &DMatrix<Complex64>) -> DVector<Complex64> {
    DVector::from_column_slice(m.as_slice())
}

fn unvectorize(v: &DVector<Complex64>, dim: usize) -> DMatrix<Complex64> {
    DMatrix::from_column_slice(dim, dim, v.as_slice())
}

fn evolve_rho_expm(model: &AbsorptionModel, rho0: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let l = liouvillian_matrix(model) * Complex64::new(model.delta_t, 0.0);
    let propagator = linalg::expm(&l);
    unvectorize(&(propagator * vectorize(rho0)), model.dim())
}

fn evolve_rho_rk4(model: &AbsorptionModel, rho0: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let h = model.hamiltonian();
    let jumps = model.jump_operators();
    let jj: Vec<DMatrix<Complex64>> = jumps.iter().map(|j| j.adjoint() * j).collect();
    let gamma = model.gamma();
    let minus_i = Complex64::new(0.0, -1.0);
    let half = Complex64::new(0.5, 0.0);

    let rhs = |rho: &DMatrix<Complex64>| -> DMatrix<Complex64> {
        let mut d = (&h * rho - rho * &h) * minus_i;
        if gamma > 0.0 {
            for (j, jj) in jumps.iter().zip(&jj) {
                d += (j * rho * j.adjoint() - (jj * rho + rho * jj) * half)
                    * Complex64::new(gamma, 0.0);
            }
        }
        d
    };

    let h_max = if model.tau_d.is_finite() {
        model.tau_d.min(model.delta_t) / 200.0
    } else {
        model.delta_t / 200.0
    };
    let steps = (model.delta_t / h_max).ceil() as usize;
    let dt = Complex64::new(model.delta_t / steps as f64, 0.0);
    let sixth = dt / Complex64::new(6.0, 0.0);
    let half_dt = dt * half;

    let mut rho = rho0.clone();
    for _ in 0..steps {
        let k1 = rhs(&rho);
        let k2 = rhs(&(&rho + &k1 * half_dt));
        let k3 = rhs(&(&rho + &k2 * half_dt));
        let k4 = rhs(&(&rho + &k3 * dt));
        rho += (k1 + k2 * Complex64::new(2.0, 0.0) + k3 * Complex64::new(2.0, 0.0) + k4) * sixth;
    }
    rho
}

/// Run the absorption channel on a pure input with the default backend.
///
/// The intended output is derived from the strong-Zeno limit map at the
/// model's coupling angle: for `|1,1⟩` input the target is `|1,1⟩`, for 0-
/// and 1-photon inputs it is the bare coupler output.
pub fn run_absorption(model: &AbsorptionModel, input: &FockVector) -> Result<ChannelOutcome> {
    run_absorption_with_backend(model, input, Backend::LiouvillianExpm)
}

/// As [`run_absorption`], choosing the integration backend.
pub fn run_absorption_with_backend(
    model: &AbsorptionModel,
    input: &FockVector,
    backend: Backend,
) -> Result<ChannelOutcome> {
    if input.statistics() != Statistics::Boson {
        return Err(Error::UnsupportedStatistics {
            operation: "two-photon absorption",
            statistics: input.statistics(),
        });
    }
    let target = input
        .apply(&zeno_limit_conditional_map(model.total_theta))
        .normalized();
    let rho0 = DensityMatrix::from_pure(input, model.sink_enabled);
    run_absorption_density(model, &rho0, &target, backend)
}

/// Run the absorption channel on a density-matrix input against an explicit
/// target state. A zero-norm target declares that no logical output exists
/// (`p_success = 0`).
pub fn run_absorption_density(
    model: &AbsorptionModel,
    input: &DensityMatrix,
    target: &FockVector,
    backend: Backend,
) -> Result<ChannelOutcome> {
    if input.statistics() != Statistics::Boson {
        return Err(Error::UnsupportedStatistics {
            operation: "two-photon absorption",
            statistics: input.statistics(),
        });
    }
    if input.sink_included() != model.sink_enabled {
        return Err(Error::InvalidModel {
            reason: format!(
                "input density matrix sink flag ({}) does not match the model ({})",
                input.sink_included(),
                model.sink_enabled
            ),
        });
    }
    let rho_out = match backend {
        Backend::LiouvillianExpm => evolve_rho_expm(model, input.matrix()),
        Backend::Rk4 => evolve_rho_rk4(model, input.matrix()),
    };
    let rho_out =
        DensityMatrix::from_matrix_unchecked(Statistics::Boson, model.sink_enabled, rho_out);
    let p_success = if target.norm() > 0.0 {
        rho_out.expectation(&target.normalized())
    } else {
        0.0
    };
    Ok(ChannelOutcome {
        p_heralded: rho_out.sink_population(),
        p_success,
        p_error: 1.0 - p_success,
        rho_out,
    })
}

/// One point of the absorption error curve.
#[derive(Debug, Clone, Copy)]
pub struct AbsorptionCurvePoint {
    /// Effective measurement count `N = Δt/4τ_D`.
    pub n: f64,
    pub p_error: f64,
    pub p_heralded: f64,
}

/// Error probability for a photon in each input, swept over decay times.
pub fn absorption_error_curve(
    tau_d_list: &[f64],
    delta_t: f64,
    total_theta: f64,
) -> Result<Vec<AbsorptionCurvePoint>> {
    if tau_d_list.is_empty() {
        return Err(Error::InvalidModel {
            reason: "empty tau_d list".into(),
        });
    }
    let input = FockVector::basis_state(Statistics::Boson, 1, 1)?;
    tau_d_list
        .iter()
        .map(|&tau_d| {
            let model = AbsorptionModel::new(tau_d, delta_t)?.with_total_theta(total_theta)?;
            let outcome = run_absorption(&model, &input)?;
            Ok(AbsorptionCurvePoint {
                n: model.zeno_n(),
                p_error: outcome.p_error,
                p_heralded: outcome.p_heralded,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{evolve, segment_unitary};
    use crate::fock::build_basis;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_4;

    fn coincidence() -> FockVector {
        FockVector::basis_state(Statistics::Boson, 1, 1).unwrap()
    }

    #[test]
    fn model_validation() {
        assert!(AbsorptionModel::new(0.0, 1.0).is_err());
        assert!(AbsorptionModel::new(-1.0, 1.0).is_err());
        assert!(AbsorptionModel::new(f64::NAN, 1.0).is_err());
        assert!(AbsorptionModel::new(1.0, 0.0).is_err());
        assert!(AbsorptionModel::new(1.0, f64::INFINITY).is_err());
        assert!(AbsorptionModel::new(f64::INFINITY, 1.0).is_ok());

        let m = AbsorptionModel::from_zeno_n(100.0, 1.0).unwrap();
        assert_abs_diff_eq!(m.zeno_n(), 100.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m.tau_d(), 0.0025, epsilon = 1e-15);
    }

    #[test]
    fn no_absorption_reproduces_the_hong_ou_mandel_error() {
        // τ_D → ∞: pure unitary evolution, P_E = 1 at the 50/50 setting.
        let model = AbsorptionModel::new(f64::INFINITY, 1.0).unwrap();
        let outcome = run_absorption(&model, &coincidence()).unwrap();
        assert_abs_diff_eq!(outcome.p_error, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(outcome.p_heralded, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(outcome.rho_out.trace(), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn single_photons_are_never_absorbed() {
        let input = FockVector::basis_state(Statistics::Boson, 1, 0).unwrap();
        for n in [0.1, 1.0, 50.0] {
            let model = AbsorptionModel::from_zeno_n(n, 1.0).unwrap();
            let outcome = run_absorption(&model, &input).unwrap();
            assert_abs_diff_eq!(outcome.p_heralded, 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(outcome.p_error, 0.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn double_occupancy_decays_at_the_stated_rate() {
        // Coupling off, sink on and off: ⟨2,0|ρ(t)|2,0⟩ = exp(−t/τ_D).
        let input = FockVector::basis_state(Statistics::Boson, 2, 0).unwrap();
        for sink in [true, false] {
            let model = AbsorptionModel::new(0.5, 1.0)
                .unwrap()
                .with_total_theta(0.0)
                .unwrap()
                .with_sink_enabled(sink);
            let rho0 = DensityMatrix::from_pure(&input, sink);
            let target = FockVector::zero(Statistics::Boson);
            let outcome =
                run_absorption_density(&model, &rho0, &target, Backend::LiouvillianExpm).unwrap();
            let expected = (-model.delta_t() / model.tau_d()).exp();
            let population = outcome.rho_out.population(2, 0).unwrap();
            assert!(
                (population - expected).abs() / expected < 0.01,
                "sink={sink}: population {population} vs e^-2 = {expected}"
            );
            assert_abs_diff_eq!(outcome.rho_out.trace(), 1.0, epsilon = 1e-10);
            if sink {
                assert_abs_diff_eq!(outcome.p_heralded, 1.0 - expected, epsilon = 1e-10);
            } else {
                // Without a sink the pair decays into the vacuum.
                assert_abs_diff_eq!(
                    outcome.rho_out.population(0, 0).unwrap(),
                    1.0 - expected,
                    epsilon = 1e-10
                );
            }
        }
    }

    #[test]
    fn liouvillian_with_zero_rate_is_the_pure_commutator() {
        let model = AbsorptionModel::new(f64::INFINITY, 1.0).unwrap();
        let input = coincidence();
        let outcome = run_absorption(&model, &input).unwrap();

        let spec = CouplerSpec::new(FRAC_PI_4, Statistics::Boson);
        let unitary_out = evolve(&input, &spec).unwrap().output;
        let expected = DensityMatrix::from_pure(&unitary_out, true);
        assert!(
            linalg::max_abs_diff(outcome.rho_out.matrix(), expected.matrix()) < 1e-12,
            "unitary consistency violated"
        );
    }

    #[test]
    fn liouvillian_preserves_trace_and_hermiticity() {
        let model = AbsorptionModel::from_zeno_n(5.0, 1.0).unwrap();
        let l = liouvillian_matrix(&model);
        let dim = 7;

        // vec(I) is a left null vector: Tr(dρ/dt) = 0.
        let id_vec = vectorize(&DMatrix::<Complex64>::identity(dim, dim));
        let residual = l.adjoint() * &id_vec;
        assert!(residual.camax() < 1e-12, "trace not conserved");

        // A fixed full-rank Hermitian density matrix stays Hermitian.
        let mut m = DMatrix::<Complex64>::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = Complex64::new(
                    0.1 * ((i * 7 + j) as f64).sin(),
                    0.07 * (i as f64 - j as f64),
                );
            }
        }
        let herm = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        let mut rho = herm.clone() * herm.adjoint(); // positive semidefinite
        let tr = rho.trace();
        rho /= tr;
        let rho0 = DensityMatrix::from_matrix(Statistics::Boson, true, rho).unwrap();
        let target = FockVector::basis_state(Statistics::Boson, 1, 1).unwrap();
        let out = run_absorption_density(&model, &rho0, &target, Backend::LiouvillianExpm)
            .unwrap()
            .rho_out;
        assert!(out.hermiticity_deviation() < 1e-10);
        assert_abs_diff_eq!(out.trace(), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn backends_agree() {
        let input = coincidence();
        for n in [0.5, 10.0] {
            let model = AbsorptionModel::from_zeno_n(n, 1.0).unwrap();
            let expm = run_absorption_with_backend(&model, &input, Backend::LiouvillianExpm)
                .unwrap();
            let rk4 = run_absorption_with_backend(&model, &input, Backend::Rk4).unwrap();
            assert!(
                linalg::max_abs_diff(expm.rho_out.matrix(), rk4.rho_out.matrix()) < 1e-8,
                "backend disagreement at N={n}"
            );
            assert!((expm.p_error - rk4.p_error).abs() < 1e-8);
        }
    }

    #[test]
    fn outcome_bookkeeping_invariants() {
        let model = AbsorptionModel::from_zeno_n(7.0, 1.0).unwrap();
        let outcome = run_absorption(&model, &coincidence()).unwrap();
        assert_abs_diff_eq!(outcome.p_success + outcome.p_error, 1.0, epsilon = 1e-10);
        assert!(outcome.p_heralded <= outcome.p_error + 1e-10);
        assert_abs_diff_eq!(outcome.rho_out.trace(), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn error_curve_shape() {
        let delta_t = 1.0;
        // τ_D list giving N from small to large.
        let n_values = [0.001, 0.01, 0.1, 1.0, 5.0, 20.0, 100.0, 400.0];
        let tau_list: Vec<f64> = n_values.iter().map(|n| delta_t / (4.0 * n)).collect();
        let curve = absorption_error_curve(&tau_list, delta_t, FRAC_PI_4).unwrap();

        // Left edge: no Zeno effect, P_E → 1.
        assert!(curve[0].p_error > 0.99, "P_E(N→0) = {}", curve[0].p_error);
        // Monotone nonincreasing in N.
        for pair in curve.windows(2) {
            assert!(
                pair[1].p_error <= pair[0].p_error + 1e-12,
                "not monotone between N={} and N={}",
                pair[0].n,
                pair[1].n
            );
        }
        // Doubling N at large N halves P_E within 5%.
        let p200 = absorption_error_curve(&[delta_t / 800.0], delta_t, FRAC_PI_4).unwrap()[0]
            .p_error;
        let p400 = curve.last().unwrap().p_error;
        let ratio = p200 / p400;
        assert!(
            (ratio - 2.0).abs() < 0.1,
            "doubling ratio {ratio} not within 5% of 2"
        );
        assert!(absorption_error_curve(&[], 1.0, FRAC_PI_4).is_err());
    }

    #[test]
    fn curve_is_continuous_in_tau_d() {
        // Adjacent sweep points differ by less than a crude local slope
        // bound |ΔP_E| ≤ |Δln N| (the curve is ∝ 1/N at large N and flat at
        // small N, so d P_E / d ln N is bounded by 1).
        let delta_t = 1.0;
        let n_values: Vec<f64> = (0..30).map(|k| 10f64.powf(-1.0 + k as f64 * 0.1)).collect();
        let tau_list: Vec<f64> = n_values.iter().map(|n| delta_t / (4.0 * n)).collect();
        let curve = absorption_error_curve(&tau_list, delta_t, FRAC_PI_4).unwrap();
        for pair in curve.windows(2) {
            let dlog = (pair[1].n / pair[0].n).ln().abs();
            assert!(
                (pair[1].p_error - pair[0].p_error).abs() <= dlog,
                "jump between N={} and N={}",
                pair[0].n,
                pair[1].n
            );
        }
    }

    #[test]
    fn measurement_and_absorption_agree_in_order_of_magnitude() {
        use crate::zeno::zeno_error_curve;
        let delta_t = 1.0;
        for n in [10usize, 100, 1000] {
            let zeno_pe = zeno_error_curve(&[n], FRAC_PI_4).unwrap()[0].1;
            let tau = delta_t / (4.0 * n as f64);
            let abs_pe = absorption_error_curve(&[tau], delta_t, FRAC_PI_4).unwrap()[0].p_error;
            let ratio = zeno_pe / abs_pe;
            assert!(
                (0.2..=5.0).contains(&ratio),
                "crossover ratio {ratio} out of band at N={n}"
            );
        }
    }

    #[test]
    fn sink_flag_mismatch_is_rejected() {
        let model = AbsorptionModel::new(1.0, 1.0).unwrap(); // sink on
        let rho = DensityMatrix::from_pure(&coincidence(), false);
        let target = coincidence();
        assert!(matches!(
            run_absorption_density(&model, &rho, &target, Backend::LiouvillianExpm),
            Err(Error::InvalidModel { .. })
        ));
    }

    #[test]
    fn fermion_input_is_rejected() {
        let model = AbsorptionModel::new(1.0, 1.0).unwrap();
        let input = FockVector::basis_state(Statistics::Fermion, 1, 1).unwrap();
        assert!(matches!(
            run_absorption(&model, &input),
            Err(Error::UnsupportedStatistics { .. })
        ));
    }

    #[test]
    fn unitary_part_matches_segment_unitary_on_the_system_block() {
        // Sanity check of the time scaling: expm of the γ=0 Liouvillian over
        // Δt must reproduce U(θ_total) on the system block.
        let model = AbsorptionModel::new(f64::INFINITY, 2.5)
            .unwrap()
            .with_total_theta(1.1)
            .unwrap();
        let l = liouvillian_matrix(&model) * Complex64::new(model.delta_t(), 0.0);
        let propagator = linalg::expm(&l);
        let u = segment_unitary(&CouplerSpec::new(1.1, Statistics::Boson));
        let basis = build_basis(Statistics::Boson);
        // Compare the action on |1,0⟩⟨1,0|.
        let input = FockVector::basis_state(Statistics::Boson, 1, 0).unwrap();
        let rho0 = DensityMatrix::from_pure(&input, true);
        let rho_t = unvectorize(&(propagator * vectorize(rho0.matrix())), 7);
        let psi_t = input.apply(&u);
        for i in 0..6 {
            for j in 0..6 {
                let expected = psi_t.amplitudes()[i] * psi_t.amplitudes()[j].conj();
                assert!((rho_t[(i, j)] - expected).norm() < 1e-12);
            }
        }
        let _ = basis;
    }
}
