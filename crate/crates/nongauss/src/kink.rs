//! The kink-superposition family: uniform superpositions of the domain-wall
//! states `|k> = c_1^dag ... c_k^dag |0>` for `k = 1..R`.
//!
//! The family interpolates from a product state (`R = 1`) to a maximally
//! charge-spread state (`R = N`) while keeping every quantity of interest in
//! closed form: the correlation blocks are explicit, the charge distribution
//! is uniform over `R` sectors (so the asymmetry is exactly `log R`), and
//! the quadratic lower bound on the non-Gaussianity reduces to an explicit
//! function of `log R`. That makes it the scaling benchmark: exact
//! diagonalization of the `2N x 2N` correlation matrix is cheap for hundreds
//! of modes where the Fock oracle is hopeless.

use crate::fock::FockVector;
use crate::gaussian::CorrelationMatrix;
use crate::measures;
use crate::{Error, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::f64::consts::LN_2;

/// Parameters of the family: `N` modes, superposition width `1 <= R <= N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KinkParameters {
    n_modes: usize,
    r: usize,
}

impl KinkParameters {
    pub fn new(n_modes: usize, r: usize) -> Result<Self> {
        if n_modes == 0 || r == 0 || r > n_modes {
            return Err(Error::Argument(format!(
                "need 1 <= R <= N, got R = {r}, N = {n_modes}"
            )));
        }
        Ok(Self { n_modes, r })
    }

    /// Width from a scaling exponent: `R = floor(N^beta)`, `0 < beta <= 1`.
    pub fn with_exponent(n_modes: usize, beta: f64) -> Result<Self> {
        if !(0.0 < beta && beta <= 1.0) {
            return Err(Error::Argument(format!(
                "exponent beta = {beta} outside (0, 1]"
            )));
        }
        let r = (n_modes as f64).powf(beta).floor() as usize;
        Self::new(n_modes, r.max(1))
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// The superposition coefficients `alpha_0..alpha_N`: `1/sqrt(R)` on
    /// `1 <= k <= R`, zero elsewhere.
    pub fn coefficients(&self) -> Vec<f64> {
        let mut alpha = vec![0.0; self.n_modes + 1];
        let w = 1.0 / (self.r as f64).sqrt();
        for a in alpha.iter_mut().take(self.r + 1).skip(1) {
            *a = w;
        }
        alpha
    }
}

/// Coefficients of the parity-even variant: uniform weight on the even
/// widths `k = 2, 4, ..., 2R` (needs `2R <= N`). Same asymmetry `log R`.
pub fn even_kink_coefficients(n_modes: usize, r: usize) -> Result<Vec<f64>> {
    if r == 0 || 2 * r > n_modes {
        return Err(Error::Argument(format!(
            "need 1 <= 2R <= N, got R = {r}, N = {n_modes}"
        )));
    }
    let mut alpha = vec![0.0; n_modes + 1];
    let w = 1.0 / (r as f64).sqrt();
    for k in 1..=r {
        alpha[2 * k] = w;
    }
    Ok(alpha)
}

/// Correlation blocks of an arbitrary real-coefficient superposition of
/// domain-wall states `sum_k alpha_k |k>`:
/// `C_ij = delta_ij sum_{k >= i} alpha_k^2` and
/// `F` with `F_{j+1,j} = alpha_{j-1} alpha_{j+1} = -F_{j,j+1}`.
pub fn correlation_from_coefficients(alpha: &[f64]) -> Result<CorrelationMatrix> {
    let n = alpha
        .len()
        .checked_sub(1)
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Argument("need coefficients alpha_0..alpha_N for N >= 1".into()))?;
    let norm_sq: f64 = alpha.iter().map(|a| a * a).sum();
    if (norm_sq - 1.0).abs() > 1e-12 {
        return Err(Error::Argument(format!(
            "coefficients have squared norm {norm_sq}, expected 1"
        )));
    }
    let mut c = DMatrix::zeros(n, n);
    let mut suffix = 0.0;
    let mut diag = vec![0.0; n + 1];
    for k in (1..=n).rev() {
        suffix += alpha[k] * alpha[k];
        diag[k] = suffix;
    }
    for i in 1..=n {
        c[(i - 1, i - 1)] = Complex64::new(diag[i], 0.0);
    }
    let mut f = DMatrix::zeros(n, n);
    for j in 1..n {
        // modes j and j+1 (1-based): <c_{j+1} c_j> = alpha_{j-1} alpha_{j+1}
        let w = alpha[j - 1] * alpha[j + 1];
        if w != 0.0 {
            f[(j, j - 1)] = Complex64::new(w, 0.0);
            f[(j - 1, j)] = Complex64::new(-w, 0.0);
        }
    }
    CorrelationMatrix::new(c, f)
}

/// Correlation matrix of the uniform kink superposition.
pub fn kink_correlation(params: &KinkParameters) -> CorrelationMatrix {
    correlation_from_coefficients(&params.coefficients())
        .expect("kink coefficients are normalized by construction")
}

/// The explicit Fock-space state (oracle side, `N <= 14`).
pub fn kink_state(params: &KinkParameters) -> Result<FockVector> {
    state_from_coefficients(params.n_modes, &params.coefficients())
}

/// Fock-space superposition `sum_k alpha_k |k>` of domain-wall states.
pub fn state_from_coefficients(n_modes: usize, alpha: &[f64]) -> Result<FockVector> {
    if alpha.len() != n_modes + 1 {
        return Err(Error::Argument(format!(
            "got {} coefficients for {n_modes} modes",
            alpha.len()
        )));
    }
    let dim = 1usize
        .checked_shl(n_modes as u32)
        .ok_or_else(|| Error::Argument("mode count overflows the bitmask".into()))?;
    let mut amps = DVector::zeros(dim);
    for (k, &a) in alpha.iter().enumerate() {
        if a != 0.0 {
            let mask = (1usize << k) - 1;
            amps[mask] = Complex64::new(a, 0.0);
        }
    }
    FockVector::from_amplitudes(n_modes, amps)?.normalized()
}

/// Closed-form traces `(Tr C, Tr C^2, Tr F^dag F)`:
/// `(R+1)/2`, `R/3 + 1/2 + 1/(6R)`, `2(R-2)/R^2`.
///
/// The `Tr F^dag F` closed form is only meaningful for `R >= 2`; at `R = 1`
/// it would report `-2` where the true trace (no pair of occupied widths two
/// apart) is 0, so `R = 1` is a domain error here.
pub fn kink_traces(params: &KinkParameters) -> Result<(f64, f64, f64)> {
    let r = params.r as f64;
    if params.r < 2 {
        return Err(Error::Domain(
            "the F-block closed form needs R >= 2 (the direct trace is 0 at R = 1)".into(),
        ));
    }
    Ok((
        (r + 1.0) / 2.0,
        r / 3.0 + 0.5 + 1.0 / (6.0 * r),
        2.0 * (r - 2.0) / (r * r),
    ))
}

/// Exact non-Gaussianity of the (pure) kink superposition from the spectrum
/// of its correlation matrix; practical for `N` in the hundreds.
pub fn kink_ng(params: &KinkParameters) -> Result<f64> {
    measures::ng_pure(&kink_correlation(params))
}

/// Closed-form lower bound on the non-Gaussianity as a function of the
/// asymmetry `delta_s = log R`:
/// `4 ln 2 (4 e^{-2 dS} - (13/6) e^{-dS} + (1/6) e^{dS})`, valid for
/// `delta_s >= log 2` (i.e. `R >= 2`).
pub fn kink_lower_bound(delta_s: f64) -> Result<f64> {
    if delta_s < LN_2 - 1e-12 {
        return Err(Error::Domain(format!(
            "the closed form needs delta_s >= log 2, got {delta_s}"
        )));
    }
    let e = delta_s.exp();
    Ok(4.0 * LN_2 * (4.0 / (e * e) - 13.0 / (6.0 * e) + e / 6.0))
}

/// One row per superposition width of the benchmark sweep.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub r: usize,
    /// Asymmetry, exactly `log R`.
    pub delta_s: f64,
    /// Exact non-Gaussianity from the correlation spectrum.
    pub ng: f64,
    /// Closed-form lower bound; `None` at `R = 1` where it does not apply.
    pub lower_bound: Option<f64>,
}

/// Evaluate the whole family at fixed `N`: non-Gaussianity and its
/// closed-form lower bound against the asymmetry, for `R = 1..N`.
pub fn figure1_sweep(n_modes: usize) -> Result<Vec<SweepRow>> {
    if n_modes < 2 {
        return Err(Error::Argument("the sweep needs at least two modes".into()));
    }
    (1..=n_modes)
        .map(|r| {
            let params = KinkParameters::new(n_modes, r)?;
            let delta_s = (r as f64).ln();
            let ng = kink_ng(&params)?;
            let lower_bound = if r >= 2 {
                Some(kink_lower_bound(delta_s)?)
            } else {
                None
            };
            Ok(SweepRow {
                r,
                delta_s,
                ng,
                lower_bound,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;
    use crate::measures::{asymmetry, shannon_entropy};

    #[test]
    fn single_kink_is_a_product_state() {
        let params = KinkParameters::new(5, 1).unwrap();
        let gamma = kink_correlation(&params);
        assert!((gamma.c()[(0, 0)].re - 1.0).abs() < 1e-15);
        for i in 1..5 {
            assert!(gamma.c()[(i, i)].norm() < 1e-15);
        }
        assert!(gamma.f().norm() < 1e-15);
        assert!(kink_ng(&params).unwrap().abs() < 1e-12);
    }

    #[test]
    fn explicit_blocks_for_n6_r3() {
        let gamma = kink_correlation(&KinkParameters::new(6, 3).unwrap());
        let expected = [1.0, 2.0 / 3.0, 1.0 / 3.0, 0.0, 0.0, 0.0];
        for (i, &want) in expected.iter().enumerate() {
            assert!((gamma.c()[(i, i)].re - want).abs() < 1e-15);
        }
        // F carries +-1/3 between modes 2 and 3 (0-based (2,1) and (1,2))
        assert!((gamma.f()[(2, 1)].re - 1.0 / 3.0).abs() < 1e-15);
        assert!((gamma.f()[(1, 2)].re + 1.0 / 3.0).abs() < 1e-15);
        let nonzero = gamma.f().iter().filter(|z| z.norm() > 0.0).count();
        assert_eq!(nonzero, 2);
    }

    #[test]
    fn correlation_matches_the_fock_oracle() {
        for (n, r) in [(4usize, 2usize), (6, 3), (6, 6), (5, 1)] {
            let params = KinkParameters::new(n, r).unwrap();
            let closed = kink_correlation(&params);
            let oracle = kink_state(&params).unwrap().correlation_matrix().unwrap();
            assert!(
                max_abs_diff(closed.c(), oracle.c()) < 1e-12,
                "C at ({n},{r})"
            );
            assert!(
                max_abs_diff(closed.f(), oracle.f()) < 1e-12,
                "F at ({n},{r})"
            );
        }
    }

    #[test]
    fn closed_form_traces_match_direct_traces() {
        for r in 2..=12usize {
            let params = KinkParameters::new(12, r).unwrap();
            let gamma = kink_correlation(&params);
            let (tr_c, tr_c2, tr_ff) = kink_traces(&params).unwrap();
            assert!((tr_c - gamma.trace_c()).abs() < 1e-10);
            assert!((tr_c2 - gamma.trace_c_squared()).abs() < 1e-10);
            assert!((tr_ff - gamma.trace_ff()).abs() < 1e-10, "R = {r}");
        }
    }

    #[test]
    fn trace_reference_values() {
        let (tr_c, tr_c2, tr_ff) = kink_traces(&KinkParameters::new(8, 4).unwrap()).unwrap();
        assert!((tr_c - 2.5).abs() < 1e-15);
        assert!((tr_c2 - (4.0 / 3.0 + 0.5 + 1.0 / 24.0)).abs() < 1e-15);
        assert!((tr_ff - 0.25).abs() < 1e-15);

        // R = 2: no index pair two apart, so Tr F^dag F = 0 both ways
        let (_, _, tr_ff) = kink_traces(&KinkParameters::new(8, 2).unwrap()).unwrap();
        assert_eq!(tr_ff, 0.0);
        assert!(kink_correlation(&KinkParameters::new(8, 2).unwrap()).trace_ff() < 1e-15);

        // R = 3: exactly two entries of magnitude 1/3
        let (_, _, tr_ff) = kink_traces(&KinkParameters::new(8, 3).unwrap()).unwrap();
        assert!((tr_ff - 2.0 / 9.0).abs() < 1e-15);

        assert!(kink_traces(&KinkParameters::new(8, 1).unwrap()).is_err());
    }

    #[test]
    fn charge_distribution_is_uniform_over_r_sectors() {
        let params = KinkParameters::new(6, 4).unwrap();
        let dist = kink_state(&params).unwrap().charge_distribution().unwrap();
        for q in 1..=4 {
            assert!((dist.probs()[q] - 0.25).abs() < 1e-14);
        }
        assert!(dist.probs()[0].abs() < 1e-14);
        assert!((shannon_entropy(&dist) - 4f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn asymmetry_equals_log_r_through_the_pure_state_chain() {
        for (n, r) in [(5usize, 3usize), (6, 6), (7, 2)] {
            let params = KinkParameters::new(n, r).unwrap();
            let rho = kink_state(&params).unwrap().density().unwrap();
            let ds = asymmetry(&rho);
            assert!((ds - (r as f64).ln()).abs() < 1e-10, "({n},{r}): {ds}");
        }
    }

    #[test]
    fn ng_matches_the_oracle_at_small_size() {
        for (n, r) in [(6usize, 3usize), (8, 4), (8, 8)] {
            let params = KinkParameters::new(n, r).unwrap();
            let closed = kink_ng(&params).unwrap();
            let rho = kink_state(&params).unwrap().density().unwrap();
            let gamma = rho.correlation_matrix().unwrap();
            let rho_g = crate::fock::gaussianify_density(&gamma).unwrap();
            let oracle = rho.relative_entropy(&rho_g).unwrap();
            assert!(
                (closed - oracle).abs() < 1e-8,
                "({n},{r}): {closed} vs {oracle}"
            );
        }
    }

    #[test]
    fn lower_bound_reference_values() {
        // delta_s = log 2: 4 ln 2 (1 - 13/12 + 1/3) = ln 2
        let v = kink_lower_bound(LN_2).unwrap();
        assert!((v - LN_2).abs() < 1e-14);
        // delta_s = log 100
        let v = kink_lower_bound(100f64.ln()).unwrap();
        let expected = 4.0 * LN_2 * (4.0 / 1e4 - 13.0 / 600.0 + 100.0 / 6.0);
        assert!((v - expected).abs() < 1e-12);
        assert!((v - 46.150_848_317_170_06).abs() < 1e-10);
        assert!(kink_lower_bound(0.5).is_err());
    }

    #[test]
    fn lower_bound_equals_quadratic_bound_on_the_family() {
        for r in 2..=10usize {
            let params = KinkParameters::new(10, r).unwrap();
            let via_traces = crate::bounds::quadratic_ng_lb(&kink_correlation(&params));
            let via_closed_form = kink_lower_bound((r as f64).ln()).unwrap();
            assert!(
                (via_traces - via_closed_form).abs() < 1e-10,
                "R = {r}: {via_traces} vs {via_closed_form}"
            );
        }
    }

    #[test]
    fn sweep_rows_are_complete_and_sound() {
        let rows = figure1_sweep(12).unwrap();
        assert_eq!(rows.len(), 12);
        assert!(rows[0].lower_bound.is_none());
        for row in &rows {
            assert!((row.delta_s - (row.r as f64).ln()).abs() < 1e-15);
            if let Some(lb) = row.lower_bound {
                assert!(lb <= row.ng + 1e-9, "R = {}: {lb} > {}", row.r, row.ng);
            }
        }
    }

    #[test]
    fn with_exponent_takes_the_floor() {
        let p = KinkParameters::with_exponent(100, 0.5).unwrap();
        assert_eq!(p.r(), 10);
        let p = KinkParameters::with_exponent(100, 1.0).unwrap();
        assert_eq!(p.r(), 100);
        assert!(KinkParameters::with_exponent(100, 1.5).is_err());
    }

    #[test]
    fn even_variant_keeps_the_bound_ordering() {
        for r in 1..=5usize {
            let alpha = even_kink_coefficients(12, r).unwrap();
            let gamma = correlation_from_coefficients(&alpha).unwrap();
            let ng = crate::measures::ng_pure(&gamma).unwrap();
            let lb = crate::bounds::quadratic_ng_lb(&gamma);
            assert!(lb <= ng + 1e-9, "even R = {r}: {lb} > {ng}");
            // oracle agreement of the construction itself
            let psi = state_from_coefficients(12, &alpha).unwrap();
            let oracle = psi.correlation_matrix().unwrap();
            assert!(max_abs_diff(gamma.c(), oracle.c()) < 1e-12);
            assert!(max_abs_diff(gamma.f(), oracle.f()) < 1e-12);
            // pure state: the vector-side Shannon entropy is the asymmetry
            let h = shannon_entropy(&psi.charge_distribution().unwrap());
            assert!((h - (r as f64).ln()).abs() < 1e-12);
        }
        // the twirling route once, at a size where the dense oracle is cheap
        let alpha = even_kink_coefficients(8, 4).unwrap();
        let psi = state_from_coefficients(8, &alpha).unwrap();
        let ds = asymmetry(&psi.density().unwrap());
        assert!((ds - 4f64.ln()).abs() < 1e-10);
    }
}
