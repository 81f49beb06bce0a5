//! Small dense-matrix helpers shared by the evolution backends.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// `exp(-i H)` for a Hermitian `H`, by exact eigendecomposition.
///
/// Exact up to eigensolver roundoff; there is no truncation or step error,
/// which keeps integrator error out of every unitary code path.
pub(crate) fn unitary_from_hermitian(h: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let eig = h.clone().symmetric_eigen();
    let dim = h.nrows();
    let mut phases = DMatrix::zeros(dim, dim);
    for (i, lambda) in eig.eigenvalues.iter().enumerate() {
        phases[(i, i)] = Complex64::new(0.0, -lambda).exp();
    }
    &eig.eigenvectors * phases * eig.eigenvectors.adjoint()
}

/// General matrix exponential by scaling-and-squaring with a Taylor core.
///
/// The argument is scaled until its 1-norm is below 1/2, where the Taylor
/// series converges to machine precision in ~25 terms, then squared back.
/// Suitable for the non-Hermitian Liouvillian; dimensions stay ≤ 49.
pub(crate) fn expm(a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let dim = a.nrows();
    assert_eq!(dim, a.ncols(), "expm needs a square matrix");
    let norm = one_norm(a);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a / Complex64::new(2f64.powi(squarings as i32), 0.0);

    let mut result = DMatrix::identity(dim, dim);
    let mut term = DMatrix::<Complex64>::identity(dim, dim);
    for k in 1..=40 {
        term = (&term * &scaled) / Complex64::new(k as f64, 0.0);
        result += &term;
        if one_norm(&term) < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// Matrix power by binary exponentiation.
pub(crate) fn matrix_power(m: &DMatrix<Complex64>, mut n: u64) -> DMatrix<Complex64> {
    let dim = m.nrows();
    let mut base = m.clone();
    let mut acc = DMatrix::identity(dim, dim);
    while n > 0 {
        if n & 1 == 1 {
            acc = &acc * &base;
        }
        base = &base * &base;
        n >>= 1;
    }
    acc
}

/// Maximum absolute column sum.
pub(crate) fn one_norm(m: &DMatrix<Complex64>) -> f64 {
    (0..m.ncols())
        .map(|j| m.column(j).iter().map(|e| e.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `max_ij |a_ij − b_ij|` over the complex modulus.
pub(crate) fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().map(|e| e.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn expm_of_zero_is_identity() {
        let z = DMatrix::<Complex64>::zeros(5, 5);
        assert!(max_abs_diff(&expm(&z), &DMatrix::identity(5, 5)) < 1e-15);
    }

    #[test]
    fn expm_matches_eigendecomposition_on_hermitian_input() {
        // exp(-iH) via the general route must agree with the exact
        // eigendecomposition route.
        let h = DMatrix::from_row_slice(
            3,
            3,
            &[
                c(1.0, 0.0),
                c(0.3, 0.2),
                c(0.0, -0.7),
                c(0.3, -0.2),
                c(-0.5, 0.0),
                c(1.1, 0.0),
                c(0.0, 0.7),
                c(1.1, 0.0),
                c(0.2, 0.0),
            ],
        );
        let minus_ih = &h * c(0.0, -1.0);
        assert!(max_abs_diff(&expm(&minus_ih), &unitary_from_hermitian(&h)) < 1e-13);
    }

    #[test]
    fn expm_handles_large_norms_by_squaring() {
        // exp(diag(-a)) with a large rate: compare against scalar exp.
        let mut m = DMatrix::<Complex64>::zeros(2, 2);
        m[(0, 0)] = c(-40000.0, 0.0);
        m[(1, 1)] = c(-2.0, 0.0);
        let e = expm(&m);
        assert!((e[(0, 0)].re - (-40000f64).exp()).abs() < 1e-12);
        assert!((e[(1, 1)].re - (-2f64).exp()).abs() < 1e-12);
        assert!(e[(0, 1)].norm() < 1e-15);
    }

    #[test]
    fn matrix_power_matches_repeated_multiplication() {
        let m = DMatrix::from_row_slice(2, 2, &[c(0.9, 0.1), c(0.0, 0.2), c(0.1, 0.0), c(0.8, 0.0)]);
        let mut slow = DMatrix::identity(2, 2);
        for _ in 0..13 {
            slow = &slow * &m;
        }
        assert!(max_abs_diff(&matrix_power(&m, 13), &slow) < 1e-13);
    }
}
