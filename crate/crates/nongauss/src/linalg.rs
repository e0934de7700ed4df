//! Thin wrappers around the dense solvers so the rest of the crate talks in
//! terms of sorted spectra and symmetry defects.
//!
//! Eigendecompositions and singular values go through faer (robust on
//! spectra with large exact degeneracies); determinants use the LU already
//! shipped with the matrix types.

use faer::{Mat, Side};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::sync::Once;

/// Solver calls stay single-threaded; parallelism belongs to the sweeps
/// over states, and letting the solver reach for the global rayon pool from
/// inside worker pools starves both.
fn sequential_solvers() {
    static ONCE: Once = Once::new();
    ONCE.call_once(|| faer::set_global_parallelism(faer::Par::Seq));
}

fn to_faer(m: &DMatrix<Complex64>) -> Mat<Complex64> {
    sequential_solvers();
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

fn to_faer_real(m: &DMatrix<f64>) -> Mat<f64> {
    sequential_solvers();
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Hermitian eigendecomposition with eigenvalues sorted ascending and the
/// eigenvector columns matching. The input is symmetrized first so that
/// defects at the validation tolerance cannot leak into the solver.
pub(crate) fn eigh(m: &DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let sym = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let n = sym.nrows();
    let eig = to_faer(&sym)
        .self_adjoint_eigen(Side::Lower)
        .expect("self-adjoint eigendecomposition of a finite matrix");
    let values: Vec<f64> = (0..n).map(|i| eig.S()[i].re).collect();
    let u = eig.U();
    let vectors = DMatrix::from_fn(n, n, |i, j| u[(i, j)]);
    (values, vectors)
}

/// Eigenvalues only, sorted ascending.
pub(crate) fn eigh_values(m: &DMatrix<Complex64>) -> Vec<f64> {
    let sym = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let f = to_faer(&sym);
    match f.self_adjoint_eigenvalues(Side::Lower) {
        Ok(values) => values,
        // the values-only sweep can stall on spectra with huge degenerate
        // clusters where the full decomposition still converges
        Err(_) => {
            let eig = f
                .self_adjoint_eigen(Side::Lower)
                .expect("self-adjoint eigendecomposition of a finite matrix");
            (0..sym.nrows()).map(|i| eig.S()[i].re).collect()
        }
    }
}

/// Largest singular value of a real matrix.
pub(crate) fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    to_faer_real(m)
        .singular_values()
        .expect("singular values of a finite matrix")
        .first()
        .copied()
        .unwrap_or(0.0)
}

/// Eigenvalues of a real (generally non-normal) matrix via the Schur form;
/// complex conjugate pairs come out as such.
pub(crate) fn real_matrix_eigenvalues(m: &DMatrix<f64>) -> Vec<Complex64> {
    to_faer_real(m)
        .eigenvalues()
        .expect("eigenvalues of a finite matrix")
}

pub(crate) fn determinant(m: &DMatrix<Complex64>) -> Complex64 {
    m.clone().lu().determinant()
}

/// max_ij |(M - M^dagger)_ij|
pub(crate) fn hermiticity_defect(m: &DMatrix<Complex64>) -> f64 {
    let d = m - m.adjoint();
    d.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// max_ij |(M + M^T)_ij|
pub(crate) fn antisymmetry_defect(m: &DMatrix<Complex64>) -> f64 {
    let d = m + m.transpose();
    d.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub(crate) fn antisymmetry_defect_real(m: &DMatrix<f64>) -> f64 {
    let d = m + m.transpose();
    d.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

#[cfg_attr(not(test), allow(dead_code))] // shared by the unit-test modules
pub(crate) fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// x ln x with the 0 ln 0 := 0 convention.
pub(crate) fn xlnx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// Binary entropy in nats, H2(x) = -x ln x - (1-x) ln(1-x).
pub(crate) fn binary_entropy(x: f64) -> f64 {
    // + 0.0 normalizes the -0.0 that the sum produces at the endpoints
    -xlnx(x) - xlnx(1.0 - x) + 0.0
}
