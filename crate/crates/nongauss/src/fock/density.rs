//! Mixed states as dense density matrices, and the Gaussian-state builders
//! (thermal construction and Gaussianification) on the full Fock space.

use super::{check_n_modes, jw_sign, ChargeDistribution};
use crate::gaussian::{self, CorrelationMatrix};
use crate::linalg::{self, xlnx};
use crate::{Error, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Eigenvalues of a density matrix below this threshold count as kernel when
/// deciding the infinite branch of the relative entropy; matches the noise
/// floor of the double-precision eigensolver.
pub const KERNEL_TOL: f64 = 1e-12;
/// Support mass a state may place on the other state's kernel before the
/// relative entropy is declared infinite.
const SUPPORT_TOL: f64 = 1e-10;

/// A density matrix on the `2^N`-dimensional Fock space: Hermitian, positive
/// semidefinite, unit trace.
#[derive(Debug, Clone)]
pub struct FockDensity {
    n_modes: usize,
    matrix: DMatrix<Complex64>,
}

impl FockDensity {
    /// Validate and wrap a matrix: Hermitian within `1e-12`, trace 1 within
    /// `1e-12`, eigenvalues above `-1e-10`.
    pub fn from_matrix(n_modes: usize, matrix: DMatrix<Complex64>) -> Result<Self> {
        let dim = check_n_modes(n_modes)?;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::Argument(format!(
                "density matrix is {}x{}, expected {dim}x{dim}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let herm = linalg::hermiticity_defect(&matrix);
        if herm > 1e-12 {
            return Err(Error::Argument(format!(
                "density matrix is not Hermitian (defect {herm:.3e})"
            )));
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > 1e-12 || trace.im.abs() > 1e-12 {
            return Err(Error::Argument(format!(
                "density matrix has trace {trace}, expected 1"
            )));
        }
        let min_eig = linalg::eigh_values(&matrix).first().copied().unwrap_or(0.0);
        if min_eig < -1e-10 {
            return Err(Error::Argument(format!(
                "density matrix has negative eigenvalue {min_eig}"
            )));
        }
        Ok(Self { n_modes, matrix })
    }

    /// Internal constructor for matrices that are valid by construction.
    pub(crate) fn from_parts_unchecked(n_modes: usize, matrix: DMatrix<Complex64>) -> Self {
        Self { n_modes, matrix }
    }

    /// `I / 2^N`.
    pub fn maximally_mixed(n_modes: usize) -> Result<Self> {
        let dim = check_n_modes(n_modes)?;
        let m = DMatrix::identity(dim, dim) * Complex64::new(1.0 / dim as f64, 0.0);
        Ok(Self::from_parts_unchecked(n_modes, m))
    }

    /// Statistical mixture; weights must be a probability vector.
    pub fn mixture(parts: &[(f64, FockDensity)]) -> Result<Self> {
        let n_modes = parts
            .first()
            .ok_or_else(|| Error::Argument("empty mixture".into()))?
            .1
            .n_modes;
        let dim = 1usize << n_modes;
        let mut m = DMatrix::zeros(dim, dim);
        let mut total = 0.0;
        for (w, rho) in parts {
            if *w < 0.0 || rho.n_modes != n_modes {
                return Err(Error::Argument(
                    "mixture weights must be nonnegative over equal-sized states".into(),
                ));
            }
            m += &rho.matrix * Complex64::new(*w, 0.0);
            total += w;
        }
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::Argument(format!("mixture weights sum to {total}")));
        }
        Ok(Self::from_parts_unchecked(n_modes, m))
    }

    /// Random full-spectrum mixed state: `G G^dag / Tr` with `G` a complex
    /// Gaussian `2^N x rank` matrix. Deterministic in the seed.
    pub fn random_mixed(seed: u64, n_modes: usize, rank: usize) -> Result<Self> {
        let dim = check_n_modes(n_modes)?;
        if rank == 0 {
            return Err(Error::Argument("rank must be positive".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut normal = move || -> f64 {
            let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
            let u2: f64 = rng.gen();
            (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
        };
        let g = DMatrix::from_fn(dim, rank, |_, _| Complex64::new(normal(), normal()));
        let mut m = &g * g.adjoint();
        let tr = m.trace().re;
        m /= Complex64::new(tr, 0.0);
        let m = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        Ok(Self::from_parts_unchecked(n_modes, m))
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// `Tr rho^2`.
    pub fn purity(&self) -> f64 {
        self.matrix.norm_squared()
    }

    /// Spectrum sorted ascending (raw, possibly with `-1e-15`-level noise).
    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::eigh_values(&self.matrix)
    }

    /// `-Tr rho ln rho` in nats.
    pub fn von_neumann_entropy(&self) -> f64 {
        -self
            .eigenvalues()
            .iter()
            .map(|&p| xlnx(p.max(0.0)))
            .sum::<f64>()
    }

    /// Project onto charge sectors: `sum_q Pi_q rho Pi_q`. Kills coherences
    /// between different particle numbers, preserves the trace, idempotent.
    pub fn twirl(&self) -> FockDensity {
        let mut m = self.matrix.clone();
        let dim = self.dim();
        for row in 0..dim {
            for col in 0..dim {
                if row.count_ones() != col.count_ones() {
                    m[(row, col)] = Complex64::ZERO;
                }
            }
        }
        Self::from_parts_unchecked(self.n_modes, m)
    }

    /// Charge dephasing into two groups of sectors: those with
    /// `|q - center| <= radius` and the rest. Coherences within each group
    /// survive, cross-group coherences are projected out.
    pub fn dephase_by_charge_window(&self, center: f64, radius: f64) -> FockDensity {
        let inside = |mask: usize| (mask.count_ones() as f64 - center).abs() <= radius;
        let mut m = self.matrix.clone();
        let dim = self.dim();
        for row in 0..dim {
            for col in 0..dim {
                if inside(row) != inside(col) {
                    m[(row, col)] = Complex64::ZERO;
                }
            }
        }
        Self::from_parts_unchecked(self.n_modes, m)
    }

    /// `p_q = Tr(Pi_q rho)`: diagonal weight binned by popcount.
    pub fn charge_distribution(&self) -> Result<ChargeDistribution> {
        let mut probs = vec![0.0; self.n_modes + 1];
        for mask in 0..self.dim() {
            probs[mask.count_ones() as usize] += self.matrix[(mask, mask)].re;
        }
        ChargeDistribution::from_probs(probs)
    }

    /// Two-point blocks `C_ij = Tr[rho c_i^dag c_j]`, `F_ij = Tr[rho c_i c_j]`.
    pub fn correlation_matrix(&self) -> Result<CorrelationMatrix> {
        let n = self.n_modes;
        let dim = self.dim();
        let mut c = DMatrix::zeros(n, n);
        let mut f = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let (bi, bj) = (1usize << i, 1usize << j);
                let mut acc_c = Complex64::ZERO;
                let mut acc_f = Complex64::ZERO;
                for mask in 0..dim {
                    if mask & bj != 0 {
                        // c_i^dag c_j |mask>
                        let sign_j = jw_sign(mask, j);
                        let lowered = mask & !bj;
                        if lowered & bi == 0 {
                            let sign_i = jw_sign(lowered, i);
                            acc_c += Complex64::new(sign_i * sign_j, 0.0)
                                * self.matrix[(mask, lowered | bi)];
                        }
                        // c_i c_j |mask>  (i must be occupied after lowering j)
                        if lowered & bi != 0 {
                            let sign_i = jw_sign(lowered, i);
                            acc_f += Complex64::new(sign_i * sign_j, 0.0)
                                * self.matrix[(mask, lowered & !bi)];
                        }
                    }
                }
                c[(i, j)] = acc_c;
                f[(i, j)] = acc_f;
            }
        }
        let c = (&c + c.adjoint()) * Complex64::new(0.5, 0.0);
        let f = (&f - f.transpose()) * Complex64::new(0.5, 0.0);
        CorrelationMatrix::new(c, f)
    }

    /// Quantum relative entropy `S(rho || sigma)` in nats, with the
    /// convention that the result is `+inf` when the support of `rho` meets
    /// the kernel of `sigma` (kernel = eigenvalues below [`KERNEL_TOL`]).
    pub fn relative_entropy(&self, sigma: &FockDensity) -> Result<f64> {
        if sigma.n_modes != self.n_modes {
            return Err(Error::Argument("mode counts differ".into()));
        }
        let tr_rho_ln_rho: f64 = self.eigenvalues().iter().map(|&p| xlnx(p.max(0.0))).sum();
        let (s_vals, s_vecs) = linalg::eigh(&sigma.matrix);
        // <w_i| rho |w_i> for every eigenvector of sigma
        let m = &self.matrix * &s_vecs;
        let mut tr_rho_ln_sigma = 0.0;
        let mut kernel_mass = 0.0;
        for (i, &s) in s_vals.iter().enumerate() {
            let weight = s_vecs.column(i).dotc(&m.column(i)).re.max(0.0);
            if s < KERNEL_TOL {
                kernel_mass += weight;
            } else {
                tr_rho_ln_sigma += weight * s.ln();
            }
        }
        if kernel_mass > SUPPORT_TOL {
            return Ok(f64::INFINITY);
        }
        Ok(tr_rho_ln_rho - tr_rho_ln_sigma)
    }

    /// Trace distance `||rho - sigma||_1 = sum |eig(rho - sigma)|`, in `[0, 2]`.
    pub fn trace_distance(&self, sigma: &FockDensity) -> Result<f64> {
        if sigma.n_modes != self.n_modes {
            return Err(Error::Argument("mode counts differ".into()));
        }
        let diff = &self.matrix - &sigma.matrix;
        Ok(linalg::eigh_values(&diff).iter().map(|l| l.abs()).sum())
    }

    /// Short human-readable fingerprint used in result records.
    pub fn digest(&self) -> String {
        format!("rho[n={}, purity={:.6}]", self.n_modes, self.purity())
    }
}

/// Dense matrix of the quadratic generator
/// `K = sum_ij [A_ij c_i^dag c_j - A*_ij c_i c_j^dag + B_ij c_i c_j - B*_ij c_i^dag c_j^dag]`
/// on the Fock space.
fn quadratic_generator_matrix(
    a: &DMatrix<Complex64>,
    b: &DMatrix<Complex64>,
) -> Result<DMatrix<Complex64>> {
    let n = gaussian::validate_quadratic_blocks(a, b)?;
    let dim = check_n_modes(n)?;
    let mut k = DMatrix::<Complex64>::zeros(dim, dim);

    // apply annihilate(src_bit) then create(dst_bit) variants per term type
    for mask in 0..dim {
        for j in 0..n {
            let bj = 1usize << j;
            for i in 0..n {
                let bi = 1usize << i;
                // A_ij c_i^dag c_j
                if mask & bj != 0 {
                    let s1 = jw_sign(mask, j);
                    let m1 = mask & !bj;
                    if m1 & bi == 0 {
                        let s2 = jw_sign(m1, i);
                        k[(m1 | bi, mask)] += a[(i, j)] * Complex64::new(s1 * s2, 0.0);
                    }
                }
                // -A*_ij c_i c_j^dag
                if mask & bj == 0 {
                    let s1 = jw_sign(mask, j);
                    let m1 = mask | bj;
                    if m1 & bi != 0 {
                        let s2 = jw_sign(m1 & !bi, i);
                        k[(m1 & !bi, mask)] -= a[(i, j)].conj() * Complex64::new(s1 * s2, 0.0);
                    }
                }
                // B_ij c_i c_j
                if mask & bj != 0 {
                    let s1 = jw_sign(mask, j);
                    let m1 = mask & !bj;
                    if m1 & bi != 0 {
                        let s2 = jw_sign(m1 & !bi, i);
                        k[(m1 & !bi, mask)] += b[(i, j)] * Complex64::new(s1 * s2, 0.0);
                    }
                }
                // -B*_ij c_i^dag c_j^dag
                if mask & bj == 0 {
                    let s1 = jw_sign(mask, j);
                    let m1 = mask | bj;
                    if m1 & bi == 0 {
                        let s2 = jw_sign(m1, i);
                        k[(m1 | bi, mask)] -= b[(i, j)].conj() * Complex64::new(s1 * s2, 0.0);
                    }
                }
            }
        }
    }
    Ok(k)
}

/// Normalized `exp(-beta K)` on the Fock space for the quadratic generator
/// `(A, B)`; `beta = f64::INFINITY` projects onto the ground state and
/// rejects a degenerate ground space.
pub fn thermal_gaussian_density(
    a: &DMatrix<Complex64>,
    b: &DMatrix<Complex64>,
    beta: f64,
) -> Result<FockDensity> {
    if beta.is_nan() {
        return Err(Error::Argument("beta must not be NaN".into()));
    }
    let n = a.nrows();
    let k = quadratic_generator_matrix(a, b)?;
    let (levels, vectors) = linalg::eigh(&k);
    let dim = levels.len();

    if beta.is_infinite() && beta > 0.0 {
        let spread = levels[dim - 1] - levels[0];
        let gap = levels[1] - levels[0];
        if gap <= 1e-10 * spread.max(1.0) {
            return Err(Error::Argument(
                "degenerate Fock-space ground space in the beta -> inf limit".into(),
            ));
        }
        let ground = vectors.column(0);
        let m = ground * ground.adjoint();
        return Ok(FockDensity::from_parts_unchecked(n, m));
    }
    if beta.is_infinite() {
        return Err(Error::Argument("beta = -infinity is not supported".into()));
    }

    // shift the spectrum so the largest Boltzmann weight is exactly 1
    let pivot = if beta >= 0.0 {
        levels[0]
    } else {
        levels[dim - 1]
    };
    let weights: Vec<f64> = levels
        .iter()
        .map(|&l| (-beta * (l - pivot)).exp())
        .collect();
    let z: f64 = weights.iter().sum();
    let diag = DMatrix::from_diagonal(&DVector::from_iterator(
        dim,
        weights.iter().map(|&w| Complex64::new(w / z, 0.0)),
    ));
    let m = &vectors * diag * vectors.adjoint();
    let m = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
    Ok(FockDensity::from_parts_unchecked(n, m))
}

/// The Gaussian state with the prescribed correlation matrix, assembled as a
/// product of single-mode mixtures over its normal modes. Occupations at
/// exactly 0 or 1 become exact projections.
pub fn gaussianify_density(gamma: &CorrelationMatrix) -> Result<FockDensity> {
    let n = gamma.n_modes();
    let dim = check_n_modes(n)?;
    let (modes, occupations) = gaussian::normal_modes(gamma)?;

    let mut rho = DMatrix::<Complex64>::identity(dim, dim);
    for (k, &nu) in occupations.iter().enumerate() {
        let u: Vec<Complex64> = (0..n).map(|j| modes.u[(j, k)]).collect();
        let v: Vec<Complex64> = (0..n).map(|j| modes.v[(j, k)]).collect();
        let udag: Vec<Complex64> = v.iter().map(|z| z.conj()).collect();
        let vdag: Vec<Complex64> = u.iter().map(|z| z.conj()).collect();
        // rho <- (1 - nu) rho + (2 nu - 1) d^dag d rho
        let lowered = apply_mode_combination_columns(&rho, n, &u, &v);
        let raised = apply_mode_combination_columns(&lowered, n, &udag, &vdag);
        rho = rho * Complex64::new(1.0 - nu, 0.0) + raised * Complex64::new(2.0 * nu - 1.0, 0.0);
    }
    let trace = rho.trace().re;
    if !(0.5..=1.5).contains(&trace) {
        return Err(Error::Consistency(format!(
            "Gaussianification trace drifted to {trace}"
        )));
    }
    rho /= Complex64::new(trace, 0.0);
    let rho = (&rho + rho.adjoint()) * Complex64::new(0.5, 0.0);
    Ok(FockDensity::from_parts_unchecked(n, rho))
}

/// Apply `sum_j (u_j c_j + v_j c_j^dag)` to every column of a matrix.
fn apply_mode_combination_columns(
    m: &DMatrix<Complex64>,
    n_modes: usize,
    u: &[Complex64],
    v: &[Complex64],
) -> DMatrix<Complex64> {
    let dim = m.nrows();
    let mut out = DMatrix::zeros(dim, m.ncols());
    for j in 0..n_modes {
        let (uj, vj) = (u[j], v[j]);
        let flag = 1usize << j;
        if uj == Complex64::ZERO && vj == Complex64::ZERO {
            continue;
        }
        for col in 0..m.ncols() {
            for mask in 0..dim {
                let amp = m[(mask, col)];
                if amp == Complex64::ZERO {
                    continue;
                }
                let sign = Complex64::new(jw_sign(mask, j), 0.0);
                if mask & flag != 0 {
                    if uj != Complex64::ZERO {
                        out[(mask & !flag, col)] += uj * sign * amp;
                    }
                } else if vj != Complex64::ZERO {
                    out[(mask | flag, col)] += vj * sign * amp;
                }
            }
        }
    }
    out
}
