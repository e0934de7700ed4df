//! Pure states as dense amplitude vectors over occupation-number bitmasks.

use super::{check_mode, check_n_modes, jw_sign, ChargeDistribution, FockDensity, ModeOperator};
use crate::gaussian::{BogoliubovModes, CorrelationMatrix};
use crate::{Error, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A (not necessarily normalized) vector in the `2^N`-dimensional Fock space.
///
/// Amplitude `k` belongs to the basis state with occupation bitmask `k`.
#[derive(Debug, Clone)]
pub struct FockVector {
    n_modes: usize,
    amplitudes: DVector<Complex64>,
}

impl FockVector {
    /// The vacuum `|0...0>`.
    pub fn vacuum(n_modes: usize) -> Result<Self> {
        Self::basis_state(n_modes, 0)
    }

    /// The basis state with the given occupation bitmask.
    pub fn basis_state(n_modes: usize, mask: usize) -> Result<Self> {
        let dim = check_n_modes(n_modes)?;
        if mask >= dim {
            return Err(Error::Argument(format!(
                "bitmask {mask} outside the {n_modes}-mode Fock space"
            )));
        }
        let mut amplitudes = DVector::zeros(dim);
        amplitudes[mask] = Complex64::new(1.0, 0.0);
        Ok(Self {
            n_modes,
            amplitudes,
        })
    }

    /// Wrap an amplitude vector; its length must be exactly `2^n_modes`.
    pub fn from_amplitudes(n_modes: usize, amplitudes: DVector<Complex64>) -> Result<Self> {
        let dim = check_n_modes(n_modes)?;
        if amplitudes.len() != dim {
            return Err(Error::Argument(format!(
                "amplitude vector has length {}, expected {dim}",
                amplitudes.len()
            )));
        }
        Ok(Self {
            n_modes,
            amplitudes,
        })
    }

    /// Haar-like random pure state: i.i.d. complex normal amplitudes,
    /// normalized. Deterministic in the seed.
    pub fn random(seed: u64, n_modes: usize) -> Result<Self> {
        let dim = check_n_modes(n_modes)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut normal = move || -> f64 {
            let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
            let u2: f64 = rng.gen();
            (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
        };
        let amplitudes = DVector::from_fn(dim, |_, _| Complex64::new(normal(), normal()));
        Self::from_amplitudes(n_modes, amplitudes)?.normalized()
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, mask: usize) -> Complex64 {
        self.amplitudes[mask]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &FockVector) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// Rescale to unit norm; the zero vector cannot be normalized.
    pub fn normalized(mut self) -> Result<Self> {
        let n = self.norm();
        if n < 1e-300 {
            return Err(Error::Numerical("cannot normalize the zero vector".into()));
        }
        self.amplitudes /= Complex64::new(n, 0.0);
        Ok(self)
    }

    /// Apply `c_mode^dag` or `c_mode` (1-based mode index). The result is in
    /// general unnormalized and may be zero.
    pub fn apply_mode_operator(&self, mode: usize, op: ModeOperator) -> Result<FockVector> {
        let bit = check_mode(self.n_modes, mode)?;
        let mut out = DVector::zeros(self.dim());
        match op {
            ModeOperator::Creation => self.add_created(bit, Complex64::new(1.0, 0.0), &mut out),
            ModeOperator::Annihilation => {
                self.add_annihilated(bit, Complex64::new(1.0, 0.0), &mut out)
            }
        }
        Ok(FockVector {
            n_modes: self.n_modes,
            amplitudes: out,
        })
    }

    fn add_created(&self, bit: usize, coeff: Complex64, out: &mut DVector<Complex64>) {
        let flag = 1usize << bit;
        for mask in 0..self.dim() {
            if mask & flag == 0 {
                let amp = self.amplitudes[mask];
                if amp != Complex64::ZERO {
                    out[mask | flag] += coeff * Complex64::new(jw_sign(mask, bit), 0.0) * amp;
                }
            }
        }
    }

    fn add_annihilated(&self, bit: usize, coeff: Complex64, out: &mut DVector<Complex64>) {
        let flag = 1usize << bit;
        for mask in 0..self.dim() {
            if mask & flag != 0 {
                let amp = self.amplitudes[mask];
                if amp != Complex64::ZERO {
                    out[mask & !flag] += coeff * Complex64::new(jw_sign(mask, bit), 0.0) * amp;
                }
            }
        }
    }

    /// Apply `sum_j (u_j c_j + v_j c_j^dag)`.
    pub(crate) fn apply_mode_combination(&self, u: &[Complex64], v: &[Complex64]) -> FockVector {
        let mut out = DVector::zeros(self.dim());
        for (j, (&uj, &vj)) in u.iter().zip(v.iter()).enumerate() {
            if uj != Complex64::ZERO {
                self.add_annihilated(j, uj, &mut out);
            }
            if vj != Complex64::ZERO {
                self.add_created(j, vj, &mut out);
            }
        }
        FockVector {
            n_modes: self.n_modes,
            amplitudes: out,
        }
    }

    /// The joint vacuum of a complete set of Bogoliubov modes: the state
    /// annihilated by every `d_k`. Built by projecting a random reference
    /// through `prod_k (1 - d_k^dag d_k)`; the seed only picks the reference
    /// and does not affect the result beyond a global phase.
    pub fn bogoliubov_vacuum(modes: &BogoliubovModes, seed: u64) -> Result<Self> {
        let n = modes.n_modes();
        check_n_modes(n)?;
        for attempt in 0..8u64 {
            let mut state = FockVector::random(seed.wrapping_add(attempt), n)?;
            for k in 0..n {
                let u: Vec<Complex64> = (0..n).map(|j| modes.u[(j, k)]).collect();
                let v: Vec<Complex64> = (0..n).map(|j| modes.v[(j, k)]).collect();
                let udag: Vec<Complex64> = v.iter().map(|z| z.conj()).collect();
                let vdag: Vec<Complex64> = u.iter().map(|z| z.conj()).collect();
                // state <- state - d_k^dag d_k state
                let lowered = state.apply_mode_combination(&u, &v);
                let raised = lowered.apply_mode_combination(&udag, &vdag);
                state.amplitudes -= raised.amplitudes;
            }
            if state.norm() > 1e-8 {
                return state.normalized();
            }
        }
        Err(Error::Numerical(
            "reference state kept projecting to zero; could not build the mode vacuum".into(),
        ))
    }

    /// Exact charge distribution: `|amplitude|^2` binned by popcount.
    pub fn charge_distribution(&self) -> Result<ChargeDistribution> {
        let norm_sq = self.amplitudes.norm_squared();
        if norm_sq < 1e-300 {
            return Err(Error::Numerical(
                "zero vector has no charge distribution".into(),
            ));
        }
        let mut probs = vec![0.0; self.n_modes + 1];
        for mask in 0..self.dim() {
            probs[mask.count_ones() as usize] += self.amplitudes[mask].norm_sqr() / norm_sq;
        }
        ChargeDistribution::from_probs(probs)
    }

    /// Two-point blocks `C_ij = <c_i^dag c_j>`, `F_ij = <c_i c_j>` of the
    /// normalized state.
    pub fn correlation_matrix(&self) -> Result<CorrelationMatrix> {
        let state = self.clone().normalized()?;
        let n = state.n_modes;
        let zero = vec![Complex64::ZERO; n];
        let mut lowered = Vec::with_capacity(n);
        let mut raised = Vec::with_capacity(n);
        for j in 0..n {
            let mut u = zero.clone();
            u[j] = Complex64::new(1.0, 0.0);
            lowered.push(state.apply_mode_combination(&u, &zero));
            let mut v = zero.clone();
            v[j] = Complex64::new(1.0, 0.0);
            raised.push(state.apply_mode_combination(&zero, &v));
        }
        let mut c = DMatrix::zeros(n, n);
        let mut f = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                c[(i, j)] = lowered[i].inner(&lowered[j]);
                f[(i, j)] = raised[i].inner(&lowered[j]);
            }
        }
        // strip solver-level asymmetry noise before validating
        let c = (&c + c.adjoint()) * Complex64::new(0.5, 0.0);
        let f = (&f - f.transpose()) * Complex64::new(0.5, 0.0);
        CorrelationMatrix::new(c, f)
    }

    /// Density matrix `|psi><psi|` of the normalized state.
    pub fn density(&self) -> Result<FockDensity> {
        let state = self.clone().normalized()?;
        let m = &state.amplitudes * state.amplitudes.adjoint();
        Ok(FockDensity::from_parts_unchecked(state.n_modes, m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn creation_on_vacuum_populates_mode_one() {
        let vac = FockVector::vacuum(3).unwrap();
        let one = vac.apply_mode_operator(1, ModeOperator::Creation).unwrap();
        assert_eq!(one.amplitude(0b001), c64(1.0, 0.0));
        assert_eq!(one.norm(), 1.0);
    }

    #[test]
    fn annihilation_kills_the_vacuum() {
        let vac = FockVector::vacuum(3).unwrap();
        for mode in 1..=3 {
            let out = vac
                .apply_mode_operator(mode, ModeOperator::Annihilation)
                .unwrap();
            assert_eq!(out.norm(), 0.0);
        }
    }

    #[test]
    fn creation_operators_anticommute() {
        let vac = FockVector::vacuum(3).unwrap();
        let c1 = |s: &FockVector| s.apply_mode_operator(1, ModeOperator::Creation).unwrap();
        let c2 = |s: &FockVector| s.apply_mode_operator(2, ModeOperator::Creation).unwrap();
        let a = c2(&c1(&vac));
        let b = c1(&c2(&vac));
        // c_2^dag c_1^dag |0> = -c_1^dag c_2^dag |0>
        assert_eq!(a.amplitude(0b011), -b.amplitude(0b011));
        assert_eq!(a.amplitude(0b011).re.abs(), 1.0);
    }

    #[test]
    fn mode_out_of_range_is_an_error() {
        let vac = FockVector::vacuum(2).unwrap();
        assert!(vac.apply_mode_operator(0, ModeOperator::Creation).is_err());
        assert!(vac.apply_mode_operator(3, ModeOperator::Creation).is_err());
    }

    #[test]
    fn anticommutation_relations_hold_on_random_states() {
        // {c_i, c_j^dag} = delta_ij, {c_i, c_j} = 0, applied to random states
        let n = 4;
        for seed in 0..4u64 {
            let psi = FockVector::random(seed, n).unwrap();
            for i in 1..=n {
                for j in 1..=n {
                    let cr = ModeOperator::Creation;
                    let an = ModeOperator::Annihilation;
                    let ij = psi
                        .apply_mode_operator(j, cr)
                        .unwrap()
                        .apply_mode_operator(i, an)
                        .unwrap();
                    let ji = psi
                        .apply_mode_operator(i, an)
                        .unwrap()
                        .apply_mode_operator(j, cr)
                        .unwrap();
                    let mut anticomm = ij.amplitudes().clone() + ji.amplitudes();
                    if i == j {
                        anticomm -= psi.amplitudes();
                    }
                    assert!(anticomm.norm() < 1e-12, "{{c_{i}, c_{j}^dag}} defect");

                    let aa = psi
                        .apply_mode_operator(j, an)
                        .unwrap()
                        .apply_mode_operator(i, an)
                        .unwrap();
                    let bb = psi
                        .apply_mode_operator(i, an)
                        .unwrap()
                        .apply_mode_operator(j, an)
                        .unwrap();
                    assert!((aa.amplitudes() + bb.amplitudes()).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn vacuum_and_filled_correlations() {
        let vac = FockVector::vacuum(3).unwrap();
        let g = vac.correlation_matrix().unwrap();
        assert!(g.c().norm() < 1e-14);
        assert!(g.f().norm() < 1e-14);

        let filled = FockVector::basis_state(3, 0b111).unwrap();
        let g = filled.correlation_matrix().unwrap();
        assert!((g.c() - DMatrix::identity(3, 3)).norm() < 1e-14);
        assert!(g.f().norm() < 1e-14);
    }

    #[test]
    fn random_state_charge_matches_rebinned_amplitudes() {
        let psi = FockVector::random(9, 3).unwrap();
        let dist = psi.charge_distribution().unwrap();
        // independent re-binning over all 8 basis states
        let mut expected = vec![0.0; 4];
        for mask in 0..8usize {
            expected[mask.count_ones() as usize] += psi.amplitude(mask).norm_sqr();
        }
        for q in 0..=3 {
            assert!((dist.probs()[q] - expected[q]).abs() < 1e-12);
        }
    }
}
