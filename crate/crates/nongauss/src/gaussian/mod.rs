//! Correlation-matrix calculus for Gaussian states at large mode number:
//! entropies, charge moments, Majorana covariance, thermal-state construction
//! and seeded random sampling.
//!
//! A state of `N` fermionic modes with annihilators `c_1..c_N` is summarized
//! by the blocks
//!
//! ```text
//! C_ij = <c_i^dag c_j>        (Hermitian)
//! F_ij = <c_i c_j>            (antisymmetric)
//! ```
//!
//! assembled into the `2N x 2N` matrix `Gamma = [[C, F^dag], [F, 1 - C^T]]`,
//! whose eigenvalues are real in `[0, 1]` and come in pairs `(nu, 1 - nu)`.
//! For a Gaussian state this is a complete description; for any other state it
//! describes the Gaussian state sharing its two-point functions.

pub mod io;

use crate::linalg;
use crate::{Error, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Symmetry tolerance applied when validating `C` and `F` on construction.
pub const SYMMETRY_TOL: f64 = 1e-10;
/// Eigenvalues of `Gamma` may stray this far outside `[0, 1]` before they are
/// treated as genuinely invalid rather than solver noise.
pub const EIGENVALUE_TOL: f64 = 1e-8;

/// Two-point data of an `N`-mode state: the blocks `C` and `F`.
#[derive(Debug, Clone)]
pub struct CorrelationMatrix {
    n_modes: usize,
    c: DMatrix<Complex64>,
    f: DMatrix<Complex64>,
}

impl CorrelationMatrix {
    /// Build from the two blocks, validating `C = C^dag` and `F = -F^T`
    /// within [`SYMMETRY_TOL`].
    pub fn new(c: DMatrix<Complex64>, f: DMatrix<Complex64>) -> Result<Self> {
        let n = c.nrows();
        if n == 0 || c.ncols() != n || f.nrows() != n || f.ncols() != n {
            return Err(Error::Argument(format!(
                "C and F must be square with matching size, got {}x{} and {}x{}",
                c.nrows(),
                c.ncols(),
                f.nrows(),
                f.ncols()
            )));
        }
        let herm = linalg::hermiticity_defect(&c);
        if herm > SYMMETRY_TOL {
            return Err(Error::Argument(format!(
                "C is not Hermitian (defect {herm:.3e})"
            )));
        }
        let anti = linalg::antisymmetry_defect(&f);
        if anti > SYMMETRY_TOL {
            return Err(Error::Argument(format!(
                "F is not antisymmetric (defect {anti:.3e})"
            )));
        }
        Ok(Self { n_modes: n, c, f })
    }

    /// The vacuum: `C = 0`, `F = 0`.
    pub fn vacuum(n_modes: usize) -> Self {
        Self {
            n_modes,
            c: DMatrix::zeros(n_modes, n_modes),
            f: DMatrix::zeros(n_modes, n_modes),
        }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn c(&self) -> &DMatrix<Complex64> {
        &self.c
    }

    pub fn f(&self) -> &DMatrix<Complex64> {
        &self.f
    }

    /// Assemble the full `2N x 2N` matrix `[[C, F^dag], [F, 1 - C^T]]`.
    pub fn full_matrix(&self) -> DMatrix<Complex64> {
        let n = self.n_modes;
        let mut g = DMatrix::zeros(2 * n, 2 * n);
        g.view_mut((0, 0), (n, n)).copy_from(&self.c);
        g.view_mut((0, n), (n, n)).copy_from(&self.f.adjoint());
        g.view_mut((n, 0), (n, n)).copy_from(&self.f);
        let lower = DMatrix::identity(n, n) - self.c.transpose();
        g.view_mut((n, n), (n, n)).copy_from(&lower);
        g
    }

    /// All `2N` eigenvalues, sorted ascending, unclipped.
    pub fn spectrum(&self) -> Vec<f64> {
        linalg::eigh_values(&self.full_matrix())
    }

    /// One occupation per `(nu, 1 - nu)` pair: the `N` smallest eigenvalues,
    /// clipped to `[0, 1]` (ties at 1/2 contribute once per pair).
    ///
    /// Eigenvalues outside `[-EIGENVALUE_TOL, 1 + EIGENVALUE_TOL]` are a
    /// numerical-validity error.
    pub fn occupations(&self) -> Result<Vec<f64>> {
        let spec = self.spectrum();
        for &v in &spec {
            if !(-EIGENVALUE_TOL..=1.0 + EIGENVALUE_TOL).contains(&v) {
                return Err(Error::Numerical(format!(
                    "correlation-matrix eigenvalue {v} outside [0, 1] beyond tolerance"
                )));
            }
        }
        Ok(spec
            .into_iter()
            .take(self.n_modes)
            .map(|v| v.clamp(0.0, 1.0))
            .collect())
    }

    /// Von Neumann entropy of the Gaussian state with these correlations,
    /// in nats: `sum_k H2(nu_k)` over one occupation per pair.
    pub fn gaussian_entropy(&self) -> Result<f64> {
        Ok(self
            .occupations()?
            .iter()
            .map(|&nu| linalg::binary_entropy(nu))
            .sum())
    }

    /// Mean total charge, `Tr C`.
    pub fn charge_mean(&self) -> f64 {
        self.trace_c()
    }

    /// Charge variance, `2 (Tr C - Tr C^2) + Tr(Gamma^2)/2 - N/2`.
    pub fn charge_variance(&self) -> f64 {
        let tr_gamma_sq = self.full_matrix().norm_squared();
        2.0 * (self.trace_c() - self.trace_c_squared()) + 0.5 * tr_gamma_sq
            - 0.5 * self.n_modes as f64
    }

    pub fn trace_c(&self) -> f64 {
        self.c.diagonal().iter().map(|z| z.re).sum()
    }

    pub fn trace_c_squared(&self) -> f64 {
        let n = self.n_modes;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                acc += self.c[(i, j)] * self.c[(j, i)];
            }
        }
        acc.re
    }

    /// `Tr(F^dag F)`.
    pub fn trace_ff(&self) -> f64 {
        self.f.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Short human-readable fingerprint used in result records.
    pub fn digest(&self) -> String {
        format!(
            "gamma[n={}, trC={:.6}, trFF={:.6}]",
            self.n_modes,
            self.trace_c(),
            self.trace_ff()
        )
    }
}

/// The fixed `2N x 2N` symplectic form: `Omega[2j, 2j+1] = -1`,
/// `Omega[2j+1, 2j] = +1` (0-based row pairs per mode).
pub fn omega(n_modes: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(2 * n_modes, 2 * n_modes);
    for j in 0..n_modes {
        m[(2 * j, 2 * j + 1)] = -1.0;
        m[(2 * j + 1, 2 * j)] = 1.0;
    }
    m
}

/// Real antisymmetric covariance of the `2N` Majorana operators
/// `gamma_{2j-1} = c_j^dag + c_j`, `gamma_{2j} = i (c_j^dag - c_j)`:
/// `(Gamma_M)_ab = (i/2) < [gamma_a, gamma_b] >`.
#[derive(Debug, Clone)]
pub struct MajoranaCovariance {
    n_modes: usize,
    gamma_m: DMatrix<f64>,
}

impl MajoranaCovariance {
    /// Validate antisymmetry and the physicality bound
    /// `||Gamma_M Omega||_2 <= 1` (within tolerance).
    pub fn new(gamma_m: DMatrix<f64>) -> Result<Self> {
        let rows = gamma_m.nrows();
        if rows == 0 || rows % 2 != 0 || gamma_m.ncols() != rows {
            return Err(Error::Argument(format!(
                "Majorana covariance must be 2N x 2N, got {}x{}",
                rows,
                gamma_m.ncols()
            )));
        }
        let n_modes = rows / 2;
        let anti = linalg::antisymmetry_defect_real(&gamma_m);
        if anti > SYMMETRY_TOL {
            return Err(Error::Argument(format!(
                "Majorana covariance is not antisymmetric (defect {anti:.3e})"
            )));
        }
        let norm = linalg::spectral_norm(&(&gamma_m * omega(n_modes)));
        if norm > 1.0 + EIGENVALUE_TOL {
            return Err(Error::Numerical(format!(
                "||Gamma_M Omega|| = {norm} exceeds 1 beyond tolerance"
            )));
        }
        Ok(Self { n_modes, gamma_m })
    }

    /// Linear change of basis from the Dirac blocks. Round-trips with
    /// [`MajoranaCovariance::to_dirac`] to machine precision.
    pub fn from_dirac(gamma: &CorrelationMatrix) -> Result<Self> {
        let n = gamma.n_modes();
        let (c, f) = (gamma.c(), gamma.f());
        let mut m = DMatrix::zeros(2 * n, 2 * n);
        for j in 0..n {
            for k in 0..n {
                let cjk = c[(j, k)];
                let fjk = f[(j, k)];
                let delta = if j == k { 1.0 } else { 0.0 };
                m[(2 * j, 2 * k)] = -2.0 * cjk.im - 2.0 * fjk.im;
                m[(2 * j + 1, 2 * k + 1)] = -2.0 * cjk.im + 2.0 * fjk.im;
                m[(2 * j, 2 * k + 1)] = 2.0 * cjk.re + 2.0 * fjk.re - delta;
                m[(2 * j + 1, 2 * k)] = -2.0 * cjk.re + 2.0 * fjk.re + delta;
            }
        }
        Self::new(m)
    }

    /// Inverse of [`MajoranaCovariance::from_dirac`].
    pub fn to_dirac(&self) -> Result<CorrelationMatrix> {
        let n = self.n_modes;
        let m = &self.gamma_m;
        let mut c = DMatrix::zeros(n, n);
        let mut f = DMatrix::zeros(n, n);
        for j in 0..n {
            for k in 0..n {
                let delta = if j == k { 1.0 } else { 0.0 };
                let re_c = 0.25 * (m[(2 * j, 2 * k + 1)] - m[(2 * j + 1, 2 * k)]) + 0.5 * delta;
                let im_c = -0.25 * (m[(2 * j, 2 * k)] + m[(2 * j + 1, 2 * k + 1)]);
                let re_f = 0.25 * (m[(2 * j, 2 * k + 1)] + m[(2 * j + 1, 2 * k)]);
                let im_f = 0.25 * (m[(2 * j + 1, 2 * k + 1)] - m[(2 * j, 2 * k)]);
                c[(j, k)] = Complex64::new(re_c, im_c);
                f[(j, k)] = Complex64::new(re_f, im_f);
            }
        }
        CorrelationMatrix::new(c, f)
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.gamma_m
    }

    pub fn omega_matrix(&self) -> DMatrix<f64> {
        omega(self.n_modes)
    }

    /// The product `Gamma_M Omega` driving the counting-statistics formulas.
    pub fn gamma_omega(&self) -> DMatrix<f64> {
        &self.gamma_m * omega(self.n_modes)
    }
}

/// Coefficients of `N` fermionic mode operators
/// `d_k = sum_j (u_jk c_j + v_jk c_j^dag)`.
///
/// Columns index modes. Valid mode sets satisfy the canonical algebra
/// `{d_k, d_l^dag} = delta_kl`, `{d_k, d_l} = 0`.
#[derive(Debug, Clone)]
pub struct BogoliubovModes {
    pub u: DMatrix<Complex64>,
    pub v: DMatrix<Complex64>,
}

impl BogoliubovModes {
    pub fn n_modes(&self) -> usize {
        self.u.nrows()
    }
}

pub(crate) fn validate_quadratic_blocks(
    a: &DMatrix<Complex64>,
    b: &DMatrix<Complex64>,
) -> Result<usize> {
    let n = a.nrows();
    if n == 0 || a.ncols() != n || b.nrows() != n || b.ncols() != n {
        return Err(Error::Argument(
            "quadratic-form blocks must be square with matching size".into(),
        ));
    }
    let herm = linalg::hermiticity_defect(a);
    if herm > SYMMETRY_TOL {
        return Err(Error::Argument(format!(
            "A block is not Hermitian (defect {herm:.3e})"
        )));
    }
    let anti = linalg::antisymmetry_defect(b);
    if anti > SYMMETRY_TOL {
        return Err(Error::Argument(format!(
            "B block is not antisymmetric (defect {anti:.3e})"
        )));
    }
    Ok(n)
}

/// Single-particle form of the quadratic generator in the basis
/// `(c_1..c_N, c_1^dag..c_N^dag)`: `M = [[A, -B^*], [B, -A^*]]`.
fn single_particle_form(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = a.nrows();
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(a);
    m.view_mut((0, n), (n, n)).copy_from(&(-b.conjugate()));
    m.view_mut((n, 0), (n, n)).copy_from(b);
    m.view_mut((n, n), (n, n)).copy_from(&(-a.conjugate()));
    m
}

/// Fermi factor `1 / (1 + e^x)`, stable for large `|x|`.
fn fermi(x: f64) -> f64 {
    if x >= 0.0 {
        let e = (-x).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + x.exp())
    }
}

/// Correlation matrix of the normalized `exp(-beta K)` for the quadratic
/// generator with blocks `A` (Hermitian) and `B` (antisymmetric).
///
/// `beta = f64::INFINITY` selects the ground state; a degenerate ground
/// space (a single-particle level at zero energy) is rejected because the
/// limit is then ambiguous.
pub fn thermal_correlation(
    a: &DMatrix<Complex64>,
    b: &DMatrix<Complex64>,
    beta: f64,
) -> Result<CorrelationMatrix> {
    let n = validate_quadratic_blocks(a, b)?;
    let m = single_particle_form(a, b);
    let (levels, w) = linalg::eigh(&m);
    let occupations = level_occupations(&levels, beta)?;

    // Gamma = conj(W) diag(occ) W^T, so that <c_a^dag c_b> picks up the
    // occupation of each eigenmode.
    let u = w.conjugate();
    let diag = DMatrix::from_diagonal(&DVector::from_iterator(
        2 * n,
        occupations.iter().map(|&o| Complex64::new(o, 0.0)),
    ));
    let gamma = &u * diag * u.adjoint();

    let c = gamma.view((0, 0), (n, n)).into_owned();
    let f = gamma.view((n, 0), (n, n)).into_owned();
    CorrelationMatrix::new(c, f)
}

fn level_occupations(levels: &[f64], beta: f64) -> Result<Vec<f64>> {
    if beta.is_nan() {
        return Err(Error::Argument("beta must not be NaN".into()));
    }
    if beta.is_infinite() && beta > 0.0 {
        let scale = levels.iter().fold(0.0f64, |acc, &l| acc.max(l.abs()));
        let tol = 1e-10 * scale.max(1.0);
        for &l in levels {
            if l.abs() <= tol {
                return Err(Error::Argument(
                    "degenerate ground space: zero single-particle level in the beta -> inf limit"
                        .into(),
                ));
            }
        }
        return Ok(levels
            .iter()
            .map(|&l| if l > 0.0 { 0.0 } else { 1.0 })
            .collect());
    }
    if beta.is_infinite() {
        return Err(Error::Argument("beta = -infinity is not supported".into()));
    }
    Ok(levels.iter().map(|&l| fermi(2.0 * beta * l)).collect())
}

/// Modes annihilating the ground state of the quadratic generator `(A, B)`:
/// the eigenmodes with positive single-particle energy.
pub fn ground_modes(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> Result<BogoliubovModes> {
    let n = validate_quadratic_blocks(a, b)?;
    let m = single_particle_form(a, b);
    let (levels, w) = linalg::eigh(&m);
    let scale = levels.iter().fold(0.0f64, |acc, &l| acc.max(l.abs()));
    let tol = 1e-10 * scale.max(1.0);
    let mut u = DMatrix::zeros(n, n);
    let mut v = DMatrix::zeros(n, n);
    let mut k = 0;
    for (idx, &l) in levels.iter().enumerate() {
        if l.abs() <= tol {
            return Err(Error::Argument(
                "degenerate ground space: zero single-particle level".into(),
            ));
        }
        if l > 0.0 {
            if k == n {
                return Err(Error::SpectrumPairing(
                    "more than N positive single-particle levels".into(),
                ));
            }
            // d_k = sum_b conj(W_bk) c_b
            for j in 0..n {
                u[(j, k)] = w[(j, idx)].conj();
                v[(j, k)] = w[(n + j, idx)].conj();
            }
            k += 1;
        }
    }
    if k != n {
        return Err(Error::SpectrumPairing(format!(
            "expected N = {n} positive single-particle levels, found {k}"
        )));
    }
    Ok(BogoliubovModes { u, v })
}

/// Normal modes of an arbitrary correlation matrix: `N` mode operators and
/// their occupations `nu_k`, such that the Gaussian state with these
/// correlations is the product of single-mode mixtures
/// `nu_k n_k + (1 - nu_k)(1 - n_k)`.
pub fn normal_modes(gamma: &CorrelationMatrix) -> Result<(BogoliubovModes, Vec<f64>)> {
    let n = gamma.n_modes();
    let full = gamma.full_matrix();
    let (values, vectors) = linalg::eigh(&full);
    for &nu in &values {
        if !(-1e-10..=1.0 + 1e-10).contains(&nu) {
            return Err(Error::Argument(format!(
                "correlation-matrix eigenvalue {nu} outside [0, 1]"
            )));
        }
    }

    const HALF_TOL: f64 = 1e-8;
    let mut u = DMatrix::zeros(n, n);
    let mut v = DMatrix::zeros(n, n);
    let mut occupations = Vec::with_capacity(n);
    let mut k = 0;
    let mut push_mode = |col: &DVector<Complex64>, occ: f64, k: &mut usize| -> Result<()> {
        if *k == n {
            return Err(Error::SpectrumPairing(
                "selected more than N normal modes".into(),
            ));
        }
        for j in 0..n {
            u[(j, *k)] = col[j];
            v[(j, *k)] = col[n + j];
        }
        occupations.push(occ);
        *k += 1;
        Ok(())
    };

    // Eigenvectors strictly below 1/2 pair with orthogonal partners above 1/2,
    // so they are valid modes as-is.
    let mut half_cluster: Vec<DVector<Complex64>> = Vec::new();
    for (idx, &nu) in values.iter().enumerate() {
        if nu < 0.5 - HALF_TOL {
            let col = vectors.column(idx).into_owned();
            push_mode(&col, nu.clamp(0.0, 1.0), &mut k)?;
        } else if nu <= 0.5 + HALF_TOL {
            half_cluster.push(vectors.column(idx).into_owned());
        }
    }

    // Eigenvectors at nu = 1/2 pair within their own eigenspace. Build a
    // basis adapted to the antiunitary pairing x -> X conj(x) (X swaps the
    // two N-blocks): pick an orthonormal basis of its fixed subspace and
    // combine fixed vectors pairwise into valid modes.
    if !half_cluster.is_empty() {
        if half_cluster.len() % 2 != 0 {
            return Err(Error::SpectrumPairing(format!(
                "odd number ({}) of eigenvalues at 1/2",
                half_cluster.len()
            )));
        }
        let target = half_cluster.len();
        let mut fixed: Vec<DVector<Complex64>> = Vec::with_capacity(target);
        let swap_conj = |x: &DVector<Complex64>| -> DVector<Complex64> {
            DVector::from_fn(2 * n, |row, _| x[(row + n) % (2 * n)].conj())
        };
        'outer: for w in &half_cluster {
            let theta = swap_conj(w);
            let c1 = w + &theta;
            let c2 = (w - &theta).map(|z| z * Complex64::i());
            for cand in [c1, c2] {
                if fixed.len() == target {
                    break 'outer;
                }
                let mut r = cand;
                for e in &fixed {
                    let overlap = e.dotc(&r);
                    r -= e * overlap;
                }
                let norm = r.norm();
                if norm > 1e-6 {
                    fixed.push(r / Complex64::new(norm, 0.0));
                }
            }
        }
        if fixed.len() != target {
            return Err(Error::SpectrumPairing(
                "could not build a pairing-adapted basis for the 1/2 eigenspace".into(),
            ));
        }
        let inv_sqrt2 = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        for pair in fixed.chunks(2) {
            let col = (&pair[0] + pair[1].map(|z| z * Complex64::i())) * inv_sqrt2;
            let occ = {
                let gcol = &full * &col;
                col.dotc(&gcol).re.clamp(0.0, 1.0)
            };
            push_mode(&col, occ, &mut k)?;
        }
    }

    if k != n {
        return Err(Error::SpectrumPairing(format!(
            "selected {k} normal modes, expected {n}"
        )));
    }
    Ok((BogoliubovModes { u, v }, occupations))
}

/// Draw a quadratic generator `(A, B)` with independent normal entries
/// scaled by `1/sqrt(N)`. Deterministic in the seed.
pub fn random_hamiltonian(seed: u64, n_modes: usize) -> (DMatrix<Complex64>, DMatrix<Complex64>) {
    assert!(n_modes >= 1, "need at least one mode");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut normal = move || -> f64 {
        let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
        let u2: f64 = rng.gen();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    };
    let scale = 1.0 / (n_modes as f64).sqrt();
    let off = std::f64::consts::FRAC_1_SQRT_2;
    let mut a = DMatrix::zeros(n_modes, n_modes);
    for i in 0..n_modes {
        a[(i, i)] = Complex64::new(normal() * scale, 0.0);
    }
    for i in 0..n_modes {
        for j in (i + 1)..n_modes {
            let z = Complex64::new(normal() * off, normal() * off) * scale;
            a[(i, j)] = z;
            a[(j, i)] = z.conj();
        }
    }
    let mut b = DMatrix::zeros(n_modes, n_modes);
    for i in 0..n_modes {
        for j in (i + 1)..n_modes {
            let z = Complex64::new(normal() * off, normal() * off) * scale;
            b[(i, j)] = z;
            b[(j, i)] = -z;
        }
    }
    (a, b)
}

/// Seeded random Gaussian state: thermal at finite `beta`, ground state at
/// `beta = f64::INFINITY`.
pub fn random_gaussian(seed: u64, n_modes: usize, beta: f64) -> Result<CorrelationMatrix> {
    let (a, b) = random_hamiltonian(seed, n_modes);
    thermal_correlation(&a, &b, beta)
}
