//! 4×4 logical gates extracted from physical maps, and the
//! `√SWAP′`/`SWAP′`/controlled-Z/CNOT circuit algebra.
//!
//! Logical encoding: qubit `i` is 1 when a photon occupies fiber `i`, so the
//! logical basis `{|00⟩, |01⟩, |10⟩, |11⟩}` maps onto the Fock states
//! `{|0,0⟩, |0,1⟩, |1,0⟩, |1,1⟩}`.
//!
//! The port-phase convention multiplies each *occupied output port* by
//! `exp(iπ/4)`, i.e. a basis state of total occupation `n` by
//! `exp(iπ/4·n)`. Under this convention the strong-Zeno coupler at
//! `θ = π/4` becomes exactly
//!
//! ```text
//!            ⎡ 1      0        0    0 ⎤
//! √SWAP′  =  ⎢ 0  (1+i)/2  (1−i)/2  0 ⎥
//!            ⎢ 0  (1−i)/2  (1+i)/2  0 ⎥
//!            ⎣ 0      0        0    i ⎦
//! ```
//!
//! whose square `SWAP′` differs from a conventional SWAP by the −1 in the
//! lowest diagonal element.
//!
//! Circuit order: `compose(&[a, b])` applies `a` first, i.e. returns `b·a`.

use nalgebra::{DMatrix, Matrix4};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{build_basis, build_ladder_ops, FockVector, Statistics};
use crate::zeno::zeno_limit_conditional_map;
use crate::{dynamics, linalg};

/// Fock occupations of the logical basis `{|00⟩, |01⟩, |10⟩, |11⟩}`, in
/// logical order.
pub const LOGICAL_OCCUPATIONS: [(u32, u32); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Phase convention applied when reading a physical map as a logical gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseConvention {
    /// Matrix elements taken as-is.
    Raw,
    /// `exp(iπ/4)` per occupied output port.
    PortPhasePiOver4,
}

/// A two-qubit gate over the logical basis `{|00⟩, |01⟩, |10⟩, |11⟩}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogicalGate {
    matrix: Matrix4<Complex64>,
    phase_convention: PhaseConvention,
}

impl LogicalGate {
    pub fn new(matrix: Matrix4<Complex64>, phase_convention: PhaseConvention) -> Self {
        LogicalGate {
            matrix,
            phase_convention,
        }
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.matrix
    }

    pub fn phase_convention(&self) -> PhaseConvention {
        self.phase_convention
    }

    /// `max |G†G − I|`: zero for a unitary, reported (not hidden) for the
    /// near-unitary gates extracted from finite-N protocols.
    pub fn unitarity_deviation(&self) -> f64 {
        (self.matrix.adjoint() * self.matrix - Matrix4::identity()).camax()
    }

    /// Rescale to the Frobenius norm of a 4×4 unitary (= 2), making
    /// sub-normalized finite-N gates comparable under process fidelity.
    pub fn renormalized(&self) -> LogicalGate {
        let norm = self.matrix.norm();
        if norm == 0.0 {
            return self.clone();
        }
        LogicalGate {
            matrix: self.matrix * c(2.0 / norm, 0.0),
            phase_convention: self.phase_convention,
        }
    }

    /// Largest entrywise deviation from another gate.
    pub fn max_abs_diff(&self, other: &LogicalGate) -> f64 {
        (self.matrix - other.matrix).camax()
    }

    /// Plain-text serialization: one row per line, row-major, entries as
    /// `re,im` pairs with 12 significant digits.
    pub fn to_plain_text(&self) -> String {
        let mut out = String::new();
        for r in 0..4 {
            let row: Vec<String> = (0..4)
                .map(|col| {
                    let e = self.matrix[(r, col)];
                    format!("{:.11e},{:.11e}", e.re, e.im)
                })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parse the plain-text matrix format (convention recorded as `Raw`).
    pub fn from_plain_text(text: &str) -> Result<LogicalGate> {
        let mut entries = Vec::with_capacity(16);
        for (lineno, line) in text.lines().filter(|l| !l.trim().is_empty()).enumerate() {
            for field in line.split_whitespace() {
                let (re, im) = field.split_once(',').ok_or_else(|| Error::MalformedGateText {
                    reason: format!("line {}: entry `{field}` is not a re,im pair", lineno + 1),
                })?;
                let parse = |s: &str| {
                    s.parse::<f64>().map_err(|_| Error::MalformedGateText {
                        reason: format!("line {}: `{s}` is not a number", lineno + 1),
                    })
                };
                entries.push(c(parse(re)?, parse(im)?));
            }
        }
        if entries.len() != 16 {
            return Err(Error::MalformedGateText {
                reason: format!("expected 16 entries, found {}", entries.len()),
            });
        }
        Ok(LogicalGate {
            matrix: Matrix4::from_row_slice(&entries),
            phase_convention: PhaseConvention::Raw,
        })
    }
}

/// A logical gate together with the per-input leakage of the physical map it
/// was extracted from.
#[derive(Debug, Clone)]
pub struct ExtractedGate {
    pub gate: LogicalGate,
    /// For each logical input, the probability missing from the logical
    /// subspace after the map (out-of-subspace amplitude plus heralded
    /// losses).
    pub leakage: [f64; 4],
}

impl ExtractedGate {
    pub fn max_leakage(&self) -> f64 {
        self.leakage.iter().fold(0.0, |a, &b| a.max(b))
    }
}

/// Restrict a physical map on the Fock space to the logical basis.
///
/// Fails with a leakage report when any logical input loses more than
/// `leakage_tolerance` of its probability to non-logical states; pass a
/// tolerance of 1.0 to accept any map (finite-N protocols leak by design).
pub fn extract_logical_gate(
    map: &DMatrix<Complex64>,
    statistics: Statistics,
    convention: PhaseConvention,
    leakage_tolerance: f64,
) -> Result<ExtractedGate> {
    let basis = build_basis(statistics);
    if map.nrows() != basis.dim() || map.ncols() != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.dim(),
            got: map.nrows().max(map.ncols()),
        });
    }
    let logical_idx: Vec<usize> = LOGICAL_OCCUPATIONS
        .iter()
        .map(|&(n1, n2)| basis.index_of(n1, n2))
        .collect::<Result<_>>()?;

    let mut matrix = Matrix4::zeros();
    let mut leakage = [0.0; 4];
    for (col, &src) in logical_idx.iter().enumerate() {
        let mut kept = 0.0;
        for (row, &dst) in logical_idx.iter().enumerate() {
            let element = map[(dst, src)];
            kept += element.norm_sqr();
            let phase = match convention {
                PhaseConvention::Raw => c(1.0, 0.0),
                PhaseConvention::PortPhasePiOver4 => {
                    let n = LOGICAL_OCCUPATIONS[row].0 + LOGICAL_OCCUPATIONS[row].1;
                    Complex64::new(0.0, std::f64::consts::FRAC_PI_4 * n as f64).exp()
                }
            };
            matrix[(row, col)] = phase * element;
        }
        leakage[col] = 1.0 - kept;
    }
    let max_leakage = leakage.iter().fold(0.0f64, |a, &b| a.max(b));
    if max_leakage > leakage_tolerance {
        return Err(Error::NonLogicalMap {
            leakage,
            max_leakage,
            tolerance: leakage_tolerance,
        });
    }
    Ok(ExtractedGate {
        gate: LogicalGate::new(matrix, convention),
        leakage,
    })
}

/// The `√SWAP′` reference matrix.
pub fn sqrt_swap_prime() -> LogicalGate {
    let h = 0.5;
    let matrix = Matrix4::from_row_slice(&[
        c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0),
        c(0.0, 0.0), c(h, h),     c(h, -h),    c(0.0, 0.0),
        c(0.0, 0.0), c(h, -h),    c(h, h),     c(0.0, 0.0),
        c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0),
    ]);
    LogicalGate::new(matrix, PhaseConvention::PortPhasePiOver4)
}

/// The `SWAP′` reference matrix: a SWAP with −1 on `|11⟩`.
pub fn swap_prime() -> LogicalGate {
    let matrix = Matrix4::from_row_slice(&[
        c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0),
        c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0),
        c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0),
        c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0),
    ]);
    LogicalGate::new(matrix, PhaseConvention::PortPhasePiOver4)
}

/// The conventional SWAP.
pub fn swap_gate() -> LogicalGate {
    let matrix = Matrix4::from_row_slice(&[
        c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0),
        c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0),
        c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0),
        c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0),
    ]);
    LogicalGate::new(matrix, PhaseConvention::Raw)
}

/// Controlled-Z: `diag(1, 1, 1, −1)`.
pub fn controlled_z() -> LogicalGate {
    let mut matrix = Matrix4::identity();
    matrix[(3, 3)] = c(-1.0, 0.0);
    LogicalGate::new(matrix, PhaseConvention::Raw)
}

/// Hadamard on the target (second) qubit, applied at the logical level.
pub fn hadamard_on_target() -> LogicalGate {
    let s = 1.0 / 2f64.sqrt();
    let matrix = Matrix4::from_row_slice(&[
        c(s, 0.0), c(s, 0.0),  c(0.0, 0.0), c(0.0, 0.0),
        c(s, 0.0), c(-s, 0.0), c(0.0, 0.0), c(0.0, 0.0),
        c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0), c(s, 0.0),
        c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0), c(-s, 0.0),
    ]);
    LogicalGate::new(matrix, PhaseConvention::Raw)
}

/// Physical mode-exchange map on the Fock space.
///
/// Built by re-creating each basis state with the two creation operators
/// interchanged, so the fermionic sign comes out of the anticommutation
/// relations rather than being written in by hand.
pub fn crossing_fock_matrix(statistics: Statistics) -> DMatrix<Complex64> {
    let basis = build_basis(statistics);
    let ops = build_ladder_ops(statistics);
    let mut m = DMatrix::zeros(basis.dim(), basis.dim());
    for (col, &(n1, n2)) in basis.states().iter().enumerate() {
        // |n1,n2⟩ = (a₁†)ⁿ¹(a₂†)ⁿ²|0,0⟩/√(n1!·n2!) maps to
        // (a₂†)ⁿ¹(a₁†)ⁿ²|0,0⟩/√(n1!·n2!) under the exchange.
        let mut image = FockVector::vacuum(statistics);
        for _ in 0..n2 {
            image = image.apply(&ops.create_1);
        }
        for _ in 0..n1 {
            image = image.apply(&ops.create_2);
        }
        let norm = (factorial(n1) * factorial(n2)).sqrt();
        for row in 0..basis.dim() {
            m[(row, col)] = image.amplitudes()[row] / c(norm, 0.0);
        }
    }
    m
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(|k| k as f64).product::<f64>().max(1.0)
}

/// The gate realized by physically crossing the two fibers: a SWAP for
/// bosons, a `SWAP′` for fermions (the −1 appears because exchanging the
/// creation operators of the doubly-occupied state anticommutes them).
pub fn crossing_gate(statistics: Statistics) -> LogicalGate {
    let map = crossing_fock_matrix(statistics);
    extract_logical_gate(&map, statistics, PhaseConvention::Raw, 1e-12)
        .expect("mode exchange is logical-subspace preserving")
        .gate
}

/// One element of a two-qubit circuit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CircuitStep {
    /// A coupling region of angle θ operated in the strong-Zeno regime
    /// (bosons) or with non-interacting fermions, port phases included.
    Coupler { theta: f64 },
    /// A physical fiber crossing.
    Crossing,
    /// A fixed phase on each output port.
    PortPhase { phi_1: f64, phi_2: f64 },
    /// A Hadamard on the target qubit.
    HadamardOnTarget,
}

impl CircuitStep {
    /// Lower the step to a logical gate for the given particle statistics.
    pub fn to_gate(&self, statistics: Statistics) -> LogicalGate {
        match *self {
            CircuitStep::Coupler { theta } => {
                let map = match statistics {
                    Statistics::Boson => zeno_limit_conditional_map(theta),
                    Statistics::Fermion => dynamics::segment_unitary(
                        &dynamics::CouplerSpec::new(theta, Statistics::Fermion),
                    ),
                };
                extract_logical_gate(
                    &map,
                    statistics,
                    PhaseConvention::PortPhasePiOver4,
                    1e-9,
                )
                .expect("strong-Zeno and fermion couplers preserve the logical subspace")
                .gate
            }
            CircuitStep::Crossing => crossing_gate(statistics),
            CircuitStep::PortPhase { phi_1, phi_2 } => {
                let mut matrix = Matrix4::zeros();
                for (k, &(n1, n2)) in LOGICAL_OCCUPATIONS.iter().enumerate() {
                    let phase = n1 as f64 * phi_1 + n2 as f64 * phi_2;
                    matrix[(k, k)] = Complex64::new(0.0, phase).exp();
                }
                LogicalGate::new(matrix, PhaseConvention::Raw)
            }
            CircuitStep::HadamardOnTarget => hadamard_on_target(),
        }
    }
}

/// Compose gates in circuit order: `compose(&[a, b]) = b·a` (`a` first).
pub fn compose(steps: &[LogicalGate]) -> LogicalGate {
    let matrix = steps
        .iter()
        .fold(Matrix4::identity(), |acc, gate| gate.matrix * acc);
    LogicalGate::new(matrix, PhaseConvention::Raw)
}

/// Process fidelity `|Tr(g1†·g2)|²/16`, invariant under a global phase on
/// either argument. Meaningful for unitary or renormalized near-unitary
/// gates; see [`LogicalGate::renormalized`].
pub fn process_fidelity(g1: &LogicalGate, g2: &LogicalGate) -> f64 {
    let trace = (g1.matrix.adjoint() * g2.matrix).trace();
    trace.norm_sqr() / 16.0
}
