//! Full counting statistics of the total charge for Gaussian states.
//!
//! Everything is driven by the product `Gamma_M Omega` of the Majorana
//! covariance with the symplectic form. Its `2N` eigenvalues are doubly
//! degenerate; the `N` deduplicated values `mu_j` determine the moment
//! generating function of the charge through
//!
//! ```text
//! chi(t) = sqrt(det[cosh(t/2) 1 - sinh(t/2) Gamma_M Omega])
//!        = prod_j [cosh(t/2) - mu_j sinh(t/2)]
//! ```
//!
//! up to an affine calibration `q = s + eps y` relating the variable counted
//! by the determinant to the physical charge (see [`calibrate`]). Real
//! eigenvalues contribute two-point lattice variables, complex-conjugate
//! pairs three-point ones; their exact convolution and the inverse discrete
//! Fourier transform of `chi` give two independent routes to the charge
//! distribution. The same variables obey a Bernstein-type concentration
//! inequality, exposed as [`concentration_bound`].

use crate::fock::ChargeDistribution;
use crate::gaussian::MajoranaCovariance;
use crate::linalg;
use crate::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Greedy matching tolerance when collapsing the doubled spectrum; looser
/// than eigenvalue tolerances elsewhere because the matrix is non-normal.
const PAIR_TOL: f64 = 1e-6;
/// Imaginary parts below this count as real eigenvalues.
const REAL_TOL: f64 = 1e-8;

/// Deduplicated spectrum of `Gamma_M Omega`: real eigenvalues and one
/// representative per complex-conjugate pair, with
/// `reals.len() + 2 * pairs.len() = N`.
#[derive(Debug, Clone)]
pub struct MuSpectrum {
    n_modes: usize,
    reals: Vec<f64>,
    pairs: Vec<Complex64>,
}

impl MuSpectrum {
    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn reals(&self) -> &[f64] {
        &self.reals
    }

    /// One member per conjugate pair, imaginary part positive.
    pub fn pairs(&self) -> &[Complex64] {
        &self.pairs
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    /// Sum of all `N` deduplicated eigenvalues (pairs counted twice).
    pub fn sum(&self) -> f64 {
        self.reals.iter().sum::<f64>() + 2.0 * self.pairs.iter().map(|z| z.re).sum::<f64>()
    }

    /// `prod_j [cosh(z/2) - mu_j sinh(z/2)]` over all `N` values.
    pub fn product_form(&self, z: Complex64) -> Complex64 {
        let ch = (z / 2.0).cosh();
        let sh = (z / 2.0).sinh();
        let mut acc = Complex64::new(1.0, 0.0);
        for &xi in &self.reals {
            acc *= ch - sh * xi;
        }
        for &nu in &self.pairs {
            acc *= (ch - sh * nu) * (ch - sh * nu.conj());
        }
        acc
    }
}

/// Spectrum of `Gamma_M Omega` via the real Schur form (the matrix need not
/// be diagonalizable), with the double degeneracy collapsed by greedy
/// nearest-neighbour pairing and conjugate pairs matched explicitly.
pub fn mu_spectrum(gm: &MajoranaCovariance) -> Result<MuSpectrum> {
    let n = gm.n_modes();
    let eigs = linalg::real_matrix_eigenvalues(&gm.gamma_omega());

    // collapse the doubling; averaging the two copies cancels the leading
    // perturbation of defective pairs
    let mut order: Vec<usize> = (0..eigs.len()).collect();
    order.sort_by(|&a, &b| {
        (eigs[a].re, eigs[a].im)
            .partial_cmp(&(eigs[b].re, eigs[b].im))
            .expect("finite eigenvalues")
    });
    let mut used = vec![false; eigs.len()];
    let mut collapsed: Vec<Complex64> = Vec::with_capacity(n);
    for i in 0..order.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let zi = eigs[order[i]];
        let mut best: Option<(usize, f64)> = None;
        for (j, &flag) in used.iter().enumerate().skip(i + 1) {
            if flag {
                continue;
            }
            let d = (eigs[order[j]] - zi).norm();
            if best.map_or(true, |(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        match best {
            Some((j, d)) if d <= PAIR_TOL => {
                used[j] = true;
                collapsed.push((zi + eigs[order[j]]) / 2.0);
            }
            _ => {
                return Err(Error::SpectrumPairing(format!(
                    "eigenvalue {zi} has no degenerate partner within {PAIR_TOL:e}"
                )))
            }
        }
    }

    for z in &collapsed {
        if z.norm() > 1.0 + crate::gaussian::EIGENVALUE_TOL {
            return Err(Error::Numerical(format!(
                "eigenvalue {z} of Gamma_M Omega exceeds unit modulus"
            )));
        }
    }

    let mut reals = Vec::new();
    let mut leftovers: Vec<Complex64> = Vec::new();
    for z in collapsed {
        if z.im.abs() <= REAL_TOL {
            reals.push(z.re);
        } else {
            leftovers.push(z);
        }
    }
    let mut used = vec![false; leftovers.len()];
    let mut pairs = Vec::new();
    for i in 0..leftovers.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let target = leftovers[i].conj();
        let mut best: Option<(usize, f64)> = None;
        for (j, &flag) in used.iter().enumerate().skip(i + 1) {
            if flag {
                continue;
            }
            let d = (leftovers[j] - target).norm();
            if best.map_or(true, |(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        match best {
            Some((j, d)) if d <= PAIR_TOL => {
                used[j] = true;
                let avg = (leftovers[i] + leftovers[j].conj()) / 2.0;
                pairs.push(Complex64::new(avg.re, avg.im.abs()));
            }
            _ => {
                return Err(Error::SpectrumPairing(format!(
                    "complex eigenvalue {} lacks a conjugate partner",
                    leftovers[i]
                )))
            }
        }
    }

    if reals.len() + 2 * pairs.len() != n {
        return Err(Error::SpectrumPairing(format!(
            "collapsed to {} reals and {} pairs for {} modes",
            reals.len(),
            pairs.len(),
            n
        )));
    }
    reals.sort_by(f64::total_cmp);
    pairs.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).expect("finite"));
    Ok(MuSpectrum {
        n_modes: n,
        reals,
        pairs,
    })
}

/// Uncalibrated determinant generating function
/// `(2 cosh(t/2))^N sqrt(det[(1 - tanh(t/2) Gamma_M Omega)/2])`, evaluated as
/// `sqrt(det[cosh(t/2) 1 - sinh(t/2) Gamma_M Omega])` with the square-root
/// branch fixed by continuity along the path from `t = 0`.
pub fn chi_determinant(gm: &MajoranaCovariance, t: Complex64) -> Result<Complex64> {
    let go = gm.gamma_omega();
    let dim = go.nrows();
    let go_c = go.map(|x| Complex64::new(x, 0.0));
    let det_at = |z: Complex64| -> Complex64 {
        let ch = (z / 2.0).cosh();
        let sh = (z / 2.0).sinh();
        let m = DMatrix::from_fn(dim, dim, |r, c| {
            let diag = if r == c { ch } else { Complex64::ZERO };
            diag - sh * go_c[(r, c)]
        });
        linalg::determinant(&m)
    };

    if t == Complex64::ZERO {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if t.im == 0.0 {
        // chi is real and strictly positive on the real axis
        let d = det_at(t);
        if d.re <= 0.0 {
            return Err(Error::BranchTracking(format!(
                "determinant {d} not positive at real t = {}",
                t.re
            )));
        }
        return Ok(Complex64::new(d.re.sqrt(), 0.0));
    }

    // Walk s: 0 -> 1 along t*s, tracking the argument of the determinant.
    // The step is halved when the phase jumps by more than pi/2 *or* when
    // the magnitude swings hard: near a zero of the determinant the sampled
    // phase aliases (the true swing can exceed pi while the measured one
    // looks small), and the magnitude dip is the reliable tell.
    const MIN_STEP: f64 = 1e-9;
    const MAX_EVALS: usize = 100_000;
    let mut s = 0.0f64;
    let mut step = 0.125f64;
    let mut d_prev = Complex64::new(1.0, 0.0);
    let mut acc_arg = 0.0;
    let mut d_last = d_prev;
    let mut evals = 0usize;
    while s < 1.0 {
        evals += 1;
        if evals > MAX_EVALS {
            return Err(Error::BranchTracking(
                "path refinement did not settle".into(),
            ));
        }
        let s_next = (s + step).min(1.0);
        let d = det_at(t * s_next);
        if d.norm() < 1e-280 {
            if s_next >= 1.0 {
                return Ok(Complex64::ZERO);
            }
            step *= 0.5;
            if step < MIN_STEP {
                return Err(Error::BranchTracking(
                    "path passes through a zero of the determinant".into(),
                ));
            }
            continue;
        }
        let dphi = (d / d_prev).arg();
        let swing = d.norm() / d_prev.norm();
        if (dphi.abs() > std::f64::consts::FRAC_PI_2 || !(0.25..=4.0).contains(&swing))
            && step > MIN_STEP
        {
            step *= 0.5;
            continue;
        }
        if dphi.abs() > std::f64::consts::FRAC_PI_2 {
            return Err(Error::BranchTracking(format!(
                "phase jump {dphi:.3} rad persists at minimal step"
            )));
        }
        acc_arg += dphi;
        d_prev = d;
        d_last = d;
        s = s_next;
        step = (step * 1.6).min(0.25);
    }
    let modulus = d_last.norm().sqrt();
    Ok(Complex64::from_polar(modulus, 0.5 * acc_arg))
}

/// Calibrated moment generating function of the physical charge,
/// `chi_Q(t) = e^{t s} chi_det(eps t)` with `s = N/2` and the sign chosen so
/// that `chi_Q'(0)` equals `Tr C`.
#[derive(Debug, Clone)]
pub struct GeneratingFunction {
    spectrum: MuSpectrum,
    epsilon: f64,
    shift: f64,
    charge_mean: f64,
}

impl GeneratingFunction {
    /// `E[e^{t Q}]` for complex `t`; exactly 1 at `t = 0`.
    pub fn evaluate(&self, t: Complex64) -> Complex64 {
        (t * self.shift).exp() * self.spectrum.product_form(t * self.epsilon)
    }

    /// Calibration sign `eps`.
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Calibration shift `s = N/2`.
    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn n_modes(&self) -> usize {
        self.spectrum.n_modes
    }

    pub fn spectrum(&self) -> &MuSpectrum {
        &self.spectrum
    }

    /// The mean the calibration was matched against (`Tr C`).
    pub fn charge_mean(&self) -> f64 {
        self.charge_mean
    }
}

/// Resolve the affine map between the determinant variable and the physical
/// charge: try `eps` in `{-1, +1}` and keep the sign whose calibrated mean
/// `s + eps * (-Tr[Gamma_M Omega]/4)` reproduces `Tr C` within `1e-8`.
pub fn calibrate(gm: &MajoranaCovariance) -> Result<GeneratingFunction> {
    let n = gm.n_modes();
    let spectrum = mu_spectrum(gm)?;
    let shift = n as f64 / 2.0;
    // Tr C read off the Majorana diagonal blocks
    let charge_mean = shift + 0.5 * (0..n).map(|j| gm.matrix()[(2 * j, 2 * j + 1)]).sum::<f64>();
    let kappa1 = -gm.gamma_omega().trace() / 4.0;
    for eps in [-1.0, 1.0] {
        if (shift + eps * kappa1 - charge_mean).abs() <= 1e-8 {
            return Ok(GeneratingFunction {
                spectrum,
                epsilon: eps,
                shift,
                charge_mean,
            });
        }
    }
    Err(Error::Calibration(format!(
        "neither sign matches the mean: s = {shift}, kappa1 = {kappa1}, Tr C = {charge_mean}"
    )))
}

/// Truncated cumulant expansion of `log chi_det` at real `t`:
/// `N log cosh(t/2) - (1/2) sum_{n=1}^{n_max} tanh^n(t/2)/n Tr[(Gamma_M Omega)^n]`.
pub fn cumulant_series(gm: &MajoranaCovariance, t: f64, n_max: usize) -> f64 {
    assert!(n_max >= 1, "need at least one cumulant term");
    let go = gm.gamma_omega();
    let n = gm.n_modes() as f64;
    let th = (t / 2.0).tanh();
    let mut acc = n * (t / 2.0).cosh().ln();
    let mut power = go.clone();
    let mut th_pow = th;
    for order in 1..=n_max {
        acc -= 0.5 * th_pow / order as f64 * power.trace();
        if order < n_max {
            power *= &go;
            th_pow *= th;
        }
    }
    acc
}

/// A random variable supported on finitely many half-integers; values are
/// stored doubled so the lattice is integral.
#[derive(Debug, Clone)]
pub struct LatticeRandomVariable {
    support: Vec<(i64, f64)>,
}

impl LatticeRandomVariable {
    /// `support` pairs twice-the-value with its probability. Probabilities
    /// below `-1e-10` are a decomposition error; small negatives are clipped,
    /// and the total mass must be 1 within `1e-10`.
    pub fn new(support: Vec<(i64, f64)>) -> Result<Self> {
        for &(v, p) in &support {
            if p < -1e-10 {
                return Err(Error::Decomposition(format!(
                    "probability {p} at value {v}/2 is negative beyond tolerance"
                )));
            }
        }
        let support: Vec<(i64, f64)> = support.into_iter().map(|(v, p)| (v, p.max(0.0))).collect();
        let total: f64 = support.iter().map(|&(_, p)| p).sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::Decomposition(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Ok(Self { support })
    }

    /// `(twice_the_value, probability)` pairs.
    pub fn support(&self) -> &[(i64, f64)] {
        &self.support
    }

    /// Number of modes this variable accounts for: 1 for a real eigenvalue
    /// (support `{-1/2, +1/2}`), 2 for a conjugate pair (`{-1, 0, 1}`).
    pub fn modes_covered(&self) -> usize {
        match self.support.len() {
            2 => 1,
            3 => 2,
            _ => unreachable!("variables are built with 2- or 3-point support"),
        }
    }
}

/// One lattice variable per real eigenvalue (`P(Y = 1/2) = (1 - mu)/2`) and
/// one per conjugate pair (`P(Y = +-1) = |1 -+ nu|^2 / 4`,
/// `P(Y = 0) = (1 - |nu|^2)/2`).
pub fn variable_decomposition(spec: &MuSpectrum) -> Result<Vec<LatticeRandomVariable>> {
    let mut vars = Vec::with_capacity(spec.reals.len() + spec.pairs.len());
    for &xi in &spec.reals {
        vars.push(LatticeRandomVariable::new(vec![
            (1, (1.0 - xi) / 2.0),
            (-1, (1.0 + xi) / 2.0),
        ])?);
    }
    for &nu in &spec.pairs {
        let p_plus = (Complex64::new(1.0, 0.0) - nu).norm_sqr() / 4.0;
        let p_minus = (Complex64::new(1.0, 0.0) + nu).norm_sqr() / 4.0;
        let p_zero = (1.0 - nu.norm_sqr()) / 2.0;
        vars.push(LatticeRandomVariable::new(vec![
            (2, p_plus),
            (0, p_zero),
            (-2, p_minus),
        ])?);
    }
    Ok(vars)
}

/// Exact distribution of `q = s + eps * sum_j Y_j` by convolution over the
/// half-integer lattice. `calibration` is the `(eps, s)` pair from
/// [`calibrate`]; total mass is preserved exactly and any mass mapped
/// outside `0..=N` is a calibration error.
pub fn distribution_by_convolution(
    vars: &[LatticeRandomVariable],
    calibration: (f64, f64),
) -> Result<ChargeDistribution> {
    let (epsilon, shift) = calibration;
    if epsilon != 1.0 && epsilon != -1.0 {
        return Err(Error::Calibration(format!(
            "sign eps = {epsilon} is not +-1"
        )));
    }
    let n: usize = vars.iter().map(|v| v.modes_covered()).sum();
    if (2.0 * shift - n as f64).abs() > 1e-9 {
        return Err(Error::Calibration(format!(
            "shift {shift} does not equal N/2 = {}",
            n as f64 / 2.0
        )));
    }

    // dist[k] carries the mass at doubled value k - n, spanning [-N, N]
    let mut dist = vec![0.0f64; 2 * n + 1];
    dist[n] = 1.0;
    for var in vars {
        let mut next = vec![0.0f64; 2 * n + 1];
        for (idx, &mass) in dist.iter().enumerate() {
            if mass == 0.0 {
                continue;
            }
            for &(dv, p) in var.support() {
                if p == 0.0 {
                    continue;
                }
                let target = idx as i64 + dv;
                debug_assert!((0..=(2 * n) as i64).contains(&target));
                next[target as usize] += mass * p;
            }
        }
        dist = next;
    }

    let mut probs = vec![0.0f64; n + 1];
    let mut stray = 0.0;
    for (idx, &mass) in dist.iter().enumerate() {
        if mass == 0.0 {
            continue;
        }
        let doubled_y = idx as i64 - n as i64;
        let doubled_q = n as i64 + (epsilon as i64) * doubled_y;
        if doubled_q % 2 != 0 || !(0..=2 * n as i64).contains(&doubled_q) {
            stray += mass;
        } else {
            probs[(doubled_q / 2) as usize] += mass;
        }
    }
    if stray > 1e-10 {
        return Err(Error::Calibration(format!(
            "mass {stray:.3e} mapped outside the charge sectors"
        )));
    }
    ChargeDistribution::from_probs(probs)
}

/// Charge distribution by inverse discrete Fourier transform of the
/// calibrated generating function over the `N + 1` sectors.
pub fn distribution_by_dft(gf: &GeneratingFunction) -> Result<ChargeDistribution> {
    let n = gf.n_modes();
    let m = n + 1;
    let samples: Vec<Complex64> = (0..m)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / m as f64;
            gf.evaluate(Complex64::new(0.0, theta))
        })
        .collect();
    let mut probs = Vec::with_capacity(m);
    for q in 0..m {
        let mut acc = Complex64::ZERO;
        for (k, &z) in samples.iter().enumerate() {
            let phase = -std::f64::consts::TAU * ((q * k) % m) as f64 / m as f64;
            acc += z * Complex64::from_polar(1.0, phase);
        }
        acc /= m as f64;
        if acc.im.abs() > 1e-9 {
            return Err(Error::Inversion(format!(
                "imaginary residue {:.3e} at sector {q}",
                acc.im
            )));
        }
        if acc.re < -1e-9 {
            return Err(Error::Inversion(format!(
                "negative weight {:.3e} at sector {q}",
                acc.re
            )));
        }
        probs.push(acc.re.max(0.0));
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::Inversion(format!(
            "inverted distribution sums to {total}"
        )));
    }
    for p in probs.iter_mut() {
        *p /= total;
    }
    ChargeDistribution::from_probs(probs)
}

/// Bernstein-type tail bound for the charge of a Gaussian state with
/// variance `sigma_sq`: `P[|q - mean| >= a] <= 2 exp[-a^2 / (2 (sigma^2 + 2a/3))]`.
/// Vacuous (= 2) at `a = 0`.
pub fn concentration_bound(sigma_sq: f64, a: f64) -> Result<f64> {
    if sigma_sq < 0.0 || a < 0.0 {
        return Err(Error::Argument(format!(
            "need sigma^2 >= 0 and a >= 0, got {sigma_sq} and {a}"
        )));
    }
    if a == 0.0 {
        return Ok(2.0);
    }
    Ok(2.0 * (-a * a / (2.0 * (sigma_sq + 2.0 * a / 3.0))).exp())
}
