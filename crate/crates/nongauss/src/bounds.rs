//! Evaluators for the inequalities tying non-Gaussianity to the
//! particle-number distribution, each reported as a [`BoundReport`]
//! comparing the bound against the exactly computed quantity.
//!
//! All bounds are phrased so that `lhs >= rhs` is the claimed inequality:
//! for lower bounds on non-Gaussianity the exact value sits on the left and
//! the bound on the right.

use crate::fock::FockDensity;
use crate::gaussian::CorrelationMatrix;
use crate::{Error, Result};
use std::f64::consts::{LN_2, PI};

/// Verdict tolerance: an inequality "holds" when its signed slack is above
/// `-1e-9`.
pub const SLACK_TOL: f64 = 1e-9;

/// Structured record of one inequality evaluation.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub bound_name: String,
    /// The side claimed to dominate.
    pub lhs: f64,
    /// The bound it is compared against.
    pub rhs: f64,
    /// `lhs - rhs`.
    pub slack: f64,
    /// `slack >= -SLACK_TOL`.
    pub holds: bool,
    pub parameters: Vec<(String, f64)>,
}

impl BoundReport {
    pub fn new(name: &str, lhs: f64, rhs: f64, parameters: Vec<(String, f64)>) -> Self {
        let slack = lhs - rhs;
        Self {
            bound_name: name.to_string(),
            lhs,
            rhs,
            slack,
            holds: slack >= -SLACK_TOL,
            parameters,
        }
    }

    /// CSV header matching [`BoundReport::csv_row`].
    pub fn csv_header() -> &'static str {
        "name,lhs,rhs,slack,holds,parameters"
    }

    /// One CSV row; parameters are flattened into a `;`-separated
    /// `key=value` list in the final column.
    pub fn csv_row(&self) -> String {
        let params: Vec<String> = self
            .parameters
            .iter()
            .map(|(k, v)| format!("{k}={}", crate::textfmt::fmt_g(*v, 12)))
            .collect();
        format!(
            "{},{},{},{},{},{}",
            self.bound_name,
            crate::textfmt::fmt_g(self.lhs, 12),
            crate::textfmt::fmt_g(self.rhs, 12),
            crate::textfmt::fmt_g(self.slack, 12),
            self.holds,
            params.join(";")
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        let params: serde_json::Map<String, serde_json::Value> = self
            .parameters
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::json!(v)))
            .collect();
        serde_json::json!({
            "name": self.bound_name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "holds": self.holds,
            "parameters": params,
        })
    }
}

/// Cap on the Shannon entropy of the charge distribution of any Gaussian
/// state: `(1/2) log[2 pi e (2N + 1/12)]` (variance-based maximum-entropy
/// bound evaluated at the Gaussian-state variance cap `2N`).
pub fn shannon_cap(n_modes: usize) -> f64 {
    assert!(n_modes >= 1, "need at least one mode");
    0.5 * (2.0 * PI * std::f64::consts::E * (2.0 * n_modes as f64 + 1.0 / 12.0)).ln()
}

/// Lower bound on the trace distance from the nearest Gaussian state,
/// given the particle-number Shannon entropy:
/// `max{0, 2 (H - shannon_cap(N) - log 2) / log N}`, clamped to the trace-norm
/// range at 2.
pub fn interaction_distance_lb(h_entropy: f64, n_modes: usize) -> f64 {
    assert!(n_modes >= 2, "the bound needs at least two modes");
    let raw = 2.0 * (h_entropy - shannon_cap(n_modes) - LN_2) / (n_modes as f64).ln();
    raw.clamp(0.0, 2.0)
}

/// Lower bound on non-Gaussianity obtained by squaring the trace-distance
/// bound: with the nats-convention two-sided Pinsker inequality
/// `||rho - sigma||_1^2 <= 2 S(rho || sigma)`, any trace-distance lower
/// bound `t` gives `NG >= t^2 / 2`.
pub fn pinsker_ng_lb(asym: f64, n_modes: usize) -> f64 {
    let t = interaction_distance_lb(asym, n_modes);
    0.5 * t * t
}

/// Quadratic lower bound on the non-Gaussianity of a pure state:
/// `4 ln 2 Tr[C - C^2 - F^dag F]`.
pub fn quadratic_ng_lb(gamma: &CorrelationMatrix) -> f64 {
    4.0 * LN_2 * (gamma.trace_c() - gamma.trace_c_squared() - gamma.trace_ff())
}

/// Anti-concentration lower bound on the tail mass `P[|q - mean| > a]` of
/// any distribution with Shannon entropy `h_entropy` over `N + 1` sectors:
/// `max{0, (H - log m_a - log 2) / log((N + 1 - m_a)/m_a)}` with
/// `m_a = 2 floor(a) + 1` central sectors.
pub fn tail_anticoncentration_lb(h_entropy: f64, n_modes: usize, a: f64) -> Result<f64> {
    if a < 0.0 {
        return Err(Error::Argument(format!("threshold a = {a} is negative")));
    }
    let m_a = 2.0 * a.floor() + 1.0;
    let sectors = (n_modes + 1) as f64;
    if m_a >= sectors {
        return Err(Error::Argument(format!(
            "m_a = {m_a} covers all {sectors} sectors; the bound is undefined"
        )));
    }
    let numerator = h_entropy - m_a.ln() - LN_2;
    let denominator = ((sectors - m_a) / m_a).ln();
    if denominator <= 0.0 {
        // more tail sectors than central ones is impossible here since
        // m_a < sectors, but the log can still vanish at m_a = sectors/2
        return Ok(0.0);
    }
    Ok((numerator / denominator).max(0.0))
}

/// Guaranteed tail mass `s_N(alpha)` outside the window `|q - mean| <= alpha h`
/// for any state with `e^H = h`:
/// `-log(4 alpha) / log[((N+1)/h - 2 alpha)/(2 alpha)]`, valid for
/// `0 < alpha < 1/4`; returns 0 in the degenerate regime where the log's
/// argument drops to 1 or below (the bound is then vacuous).
pub fn s_n_alpha(h: f64, n_modes: usize, alpha: f64) -> Result<f64> {
    if !(0.0 < alpha && alpha < 0.25) {
        return Err(Error::Argument(format!(
            "alpha = {alpha} outside the open interval (0, 1/4)"
        )));
    }
    if h < 1.0 {
        return Err(Error::Argument(format!("h = {h} below 1")));
    }
    let ratio = ((n_modes + 1) as f64 / h - 2.0 * alpha) / (2.0 * alpha);
    if ratio <= 1.0 {
        return Ok(0.0);
    }
    Ok(-(4.0 * alpha).ln() / ratio.ln())
}

/// Concentration-based lower bound on the relative entropy of
/// non-Gaussianity:
/// `s_N(alpha) [log(s_N(alpha)/2) + c^2 / (2 (sigma_G^2 + 2c/3))]` with
/// `c = alpha h`, clamped below at 0.
pub fn main_ng_lb(h: f64, n_modes: usize, sigma_sq_g: f64, alpha: f64) -> Result<f64> {
    if sigma_sq_g < 0.0 {
        return Err(Error::Argument(format!(
            "Gaussianification variance {sigma_sq_g} is negative"
        )));
    }
    let s = s_n_alpha(h, n_modes, alpha)?;
    if s <= 0.0 {
        return Ok(0.0);
    }
    let c = alpha * h;
    let value = s * ((s / 2.0).ln() + c * c / (2.0 * (sigma_sq_g + 2.0 * c / 3.0)));
    Ok(value.max(0.0))
}

/// [`main_ng_lb`] at the reference choice `alpha = 1/8`.
pub fn main_ng_lb_default(h: f64, n_modes: usize, sigma_sq_g: f64) -> Result<f64> {
    main_ng_lb(h, n_modes, sigma_sq_g, 0.125)
}

/// Single-sector contribution to a symmetry-resolved relative entropy:
/// `p log(p / p_G)`, with the conventions `0` at `p = 0` and `+inf` when
/// `p > 0` meets `p_G = 0`. May be negative when `p < p_G` (the bound is
/// then non-binding).
pub fn symmetry_resolved_lb(p_b_rho: f64, p_b_rho_g: f64) -> Result<f64> {
    for (name, p) in [("p_B(rho)", p_b_rho), ("p_B(rho_G)", p_b_rho_g)] {
        // probabilities built from float sums may overshoot by rounding
        if !(-1e-10..=1.0 + 1e-10).contains(&p) {
            return Err(Error::Argument(format!("{name} = {p} outside [0, 1]")));
        }
    }
    let p_b_rho = p_b_rho.clamp(0.0, 1.0);
    let p_b_rho_g = p_b_rho_g.clamp(0.0, 1.0);
    if p_b_rho == 0.0 {
        return Ok(0.0);
    }
    if p_b_rho_g == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(p_b_rho * (p_b_rho / p_b_rho_g).ln())
}

/// The two-block charge-dephasing channel: project onto the group of
/// sectors within `alpha * h` of the state's own mean charge and onto the
/// complementary tail group, discarding cross-group coherences. Trace
/// preserving and idempotent.
pub fn dephasing_channel(rho: &FockDensity, alpha: f64, h: f64) -> Result<FockDensity> {
    if alpha <= 0.0 || h < 1.0 {
        return Err(Error::Argument(format!(
            "need alpha > 0 and h >= 1, got {alpha} and {h}"
        )));
    }
    let mean = rho.charge_distribution()?.mean();
    Ok(rho.dephase_by_charge_window(mean, alpha * h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::concentration_bound;
    use crate::fock::FockVector;
    use crate::gaussian;
    use crate::measures::{asymmetry, ng_pure, shannon_entropy};

    #[test]
    fn shannon_cap_reference_values() {
        // (1/2) ln(2 pi e (2N + 1/12)) evaluated directly
        let n1 = 0.5 * (2.0 * PI * std::f64::consts::E * (2.0 + 1.0 / 12.0)).ln();
        assert!((shannon_cap(1) - n1).abs() < 1e-15);
        assert!((shannon_cap(1) - 1.785_923_120_744_773).abs() < 1e-12);
        assert!((shannon_cap(100) - 4.068_305_506_421_299).abs() < 1e-12);
    }

    #[test]
    fn gaussian_states_respect_the_shannon_cap() {
        for seed in 0..20u64 {
            let n = 4 + (seed as usize % 60);
            let gamma = gaussian::random_gaussian(seed, n, 0.5).unwrap();
            let gm = gaussian::MajoranaCovariance::from_dirac(&gamma).unwrap();
            let gf = crate::counting::calibrate(&gm).unwrap();
            let dist = crate::counting::distribution_by_dft(&gf).unwrap();
            let h = shannon_entropy(&dist);
            assert!(h <= shannon_cap(n) + 1e-10, "n = {n}: H = {h}");
        }
    }

    #[test]
    fn interaction_distance_reference_value() {
        // H = log(N+1) at N = 10^4, frozen from direct evaluation of the
        // stated formula
        let n = 10_000usize;
        let bound = interaction_distance_lb(((n + 1) as f64).ln(), n);
        assert!((bound - 0.466_130_176_935_961).abs() < 1e-12, "got {bound}");
        // Gaussian-achievable entropies clamp to zero
        assert_eq!(interaction_distance_lb(shannon_cap(50), 50), 0.0);
    }

    #[test]
    fn interaction_distance_bounds_the_oracle_trace_distance() {
        // the Gaussianification is one Gaussian state, so it upper-bounds
        // the infimum the bound addresses
        for (n, r) in [(5usize, 5usize), (6, 4), (6, 6)] {
            let params = crate::kink::KinkParameters::new(n, r).unwrap();
            let psi = crate::kink::kink_state(&params).unwrap();
            let rho = psi.density().unwrap();
            let gamma = psi.correlation_matrix().unwrap();
            let rho_g = crate::fock::gaussianify_density(&gamma).unwrap();
            let lb = interaction_distance_lb(asymmetry(&rho), n);
            let td = rho.trace_distance(&rho_g).unwrap();
            assert!(lb <= td + SLACK_TOL, "kink({n},{r}): lb {lb} > dist {td}");

            let twirled = rho.twirl();
            let lb = interaction_distance_lb(asymmetry(&twirled), n);
            let gamma_t = twirled.correlation_matrix().unwrap();
            let rho_gt = crate::fock::gaussianify_density(&gamma_t).unwrap();
            let td = twirled.trace_distance(&rho_gt).unwrap();
            assert!(lb <= td + SLACK_TOL, "twirled kink({n},{r})");
        }
    }

    #[test]
    fn pinsker_bound_is_sound_and_saturates_to_a_constant() {
        // bounded above by 2 for any entropy because the trace bound clamps
        let huge = pinsker_ng_lb(1e9, 1_000_000);
        assert!(huge <= 2.0 && huge > 0.0);

        for seed in 0..6u64 {
            let psi = FockVector::random(seed, 5).unwrap();
            let rho = psi.density().unwrap();
            let ng = ng_pure(&psi.correlation_matrix().unwrap()).unwrap();
            let lb = pinsker_ng_lb(asymmetry(&rho), 5);
            assert!(lb <= ng + SLACK_TOL, "seed {seed}: {lb} > {ng}");
        }
    }

    #[test]
    fn quadratic_bound_undershoots_pure_state_ng() {
        for seed in 0..8u64 {
            let psi = FockVector::random(seed + 3, 5).unwrap();
            let gamma = psi.correlation_matrix().unwrap();
            let lb = quadratic_ng_lb(&gamma);
            let ng = ng_pure(&gamma).unwrap();
            assert!(lb <= ng + SLACK_TOL, "seed {seed}: {lb} > {ng}");
        }
        // pure Gaussian states sit at zero on both sides
        let gamma = gaussian::random_gaussian(11, 5, f64::INFINITY).unwrap();
        assert!(quadratic_ng_lb(&gamma) <= ng_pure(&gamma).unwrap() + SLACK_TOL);
        assert!(ng_pure(&gamma).unwrap() < 1e-8);
    }

    #[test]
    fn tail_bound_reference_values() {
        // threshold case: H <= log(2 m_a) clamps to zero
        assert_eq!(tail_anticoncentration_lb(1.0986, 10, 1.0).unwrap(), 0.0);
        // N = 11, a = 1 (m_a = 3 = (N+1)/4), H = log 12: frozen arithmetic
        let b = tail_anticoncentration_lb(12f64.ln(), 11, 1.0).unwrap();
        assert!((b - 0.630_929_753_6).abs() < 1e-9, "got {b}");
        // m_a >= N + 1 is rejected
        assert!(tail_anticoncentration_lb(1.0, 4, 2.0).is_err());
    }

    #[test]
    fn jensen_tail_bound_never_exceeds_exact_tails() {
        for seed in 0..8u64 {
            let psi = FockVector::random(seed + 31, 5).unwrap();
            let dist = psi.charge_distribution().unwrap();
            let h = shannon_entropy(&dist);
            for a_int in 0..=2usize {
                let a = a_int as f64;
                let bound = tail_anticoncentration_lb(h, 5, a).unwrap();
                let tail = dist.tail_greater(a);
                assert!(
                    tail >= bound - SLACK_TOL,
                    "seed {seed} a {a}: tail {tail} < bound {bound}"
                );
            }
        }
    }

    #[test]
    fn s_n_alpha_reference_values() {
        // alpha = 1/8, h = N + 1: -log(1/2)/log 3
        let s = s_n_alpha(101.0, 100, 0.125).unwrap();
        assert!((s - LN_2 / 3f64.ln()).abs() < 1e-12);
        // alpha -> 1/4 from below sends the numerator to zero (for h away
        // from N + 1, where the denominator stays finite)
        let s = s_n_alpha(50.0, 100, 0.2499999).unwrap();
        assert!(s > 0.0 && s < 1e-5);
        // h = sqrt(N+1) at N = 10^4: frozen from direct evaluation
        let s = s_n_alpha(10_001f64.sqrt(), 10_000, 0.125).unwrap();
        assert!((s - 0.115_736_491_066_332).abs() < 1e-12, "got {s}");
        assert!(s_n_alpha(10.0, 10, 0.25).is_err());
        assert!(s_n_alpha(10.0, 10, 0.3).is_err());
        // degenerate regime: h too close to the sector count
        assert_eq!(s_n_alpha(100.0, 10, 0.125).unwrap(), 0.0);
    }

    #[test]
    fn s_n_alpha_is_decreasing_in_alpha() {
        let h = 40.0;
        let n = 100;
        let mut prev = f64::INFINITY;
        for k in 1..=20 {
            let alpha = 0.012 * k as f64;
            let s = s_n_alpha(h, n, alpha).unwrap();
            assert!(s <= prev + 1e-12, "s_N not decreasing at alpha = {alpha}");
            prev = s;
        }
    }

    #[test]
    fn main_bound_vacuous_and_linear_regimes() {
        // degenerate s_N(alpha) = 0 collapses the bound to zero
        assert_eq!(main_ng_lb(100.0, 10, 5.0, 0.125).unwrap(), 0.0);

        // maximal entropy, variance at the Gaussian cap: linear growth in N
        // (with the worst-case variance the bound only turns positive for
        // N in the several hundreds)
        let value_at = |n: usize| main_ng_lb((n + 1) as f64, n, 2.0 * n as f64, 0.125).unwrap();
        assert_eq!(value_at(200), 0.0);
        let (v2000, v4000) = (value_at(2000), value_at(4000));
        assert!(v2000 > 0.0);
        let ratio = v4000 / v2000;
        assert!(
            (1.6..=2.4).contains(&ratio),
            "expected roughly linear growth, got ratio {ratio}"
        );
        // leading coefficient e^{2H} / (256 N) within the log-corrected band
        let n = 4000usize;
        let h = (n + 1) as f64;
        let leading = h * h / (256.0 * n as f64);
        let v = value_at(n);
        assert!(
            v > 0.1 * leading && v < 3.0 * leading,
            "v = {v}, leading = {leading}"
        );
    }

    #[test]
    fn symmetry_resolved_reference_values() {
        assert_eq!(symmetry_resolved_lb(0.0, 0.0).unwrap(), 0.0);
        assert_eq!(symmetry_resolved_lb(0.5, 0.0).unwrap(), f64::INFINITY);
        assert!(symmetry_resolved_lb(0.3, 0.3).unwrap().abs() < 1e-15);
        let v = symmetry_resolved_lb(0.5, 0.01).unwrap();
        assert!((v - 0.5 * 50f64.ln()).abs() < 1e-12);
        assert!((v - 1.956_011_502_714_073).abs() < 1e-12);
        assert!(symmetry_resolved_lb(1.2, 0.5).is_err());
        // equal-ish tails give a non-binding (nonpositive) value
        assert!(symmetry_resolved_lb(0.2, 0.4).unwrap() <= 0.0);
    }

    #[test]
    fn one_term_sector_value_can_overshoot_on_block_diagonal_states() {
        // The single-tail expression drops the central-sector term of the
        // two-outcome relative entropy, which is negative whenever the state
        // holds less central mass than its Gaussianification. On the twirled
        // width-3 kink over three modes the overshoot is explicit: the state
        // and its Gaussianification are both charge-diagonal, so the exact
        // relative entropy is directly comparable.
        let params = crate::kink::KinkParameters::new(3, 3).unwrap();
        let rho = crate::kink::kink_state(&params)
            .unwrap()
            .density()
            .unwrap()
            .twirl();
        let gamma = rho.correlation_matrix().unwrap();
        let rho_g = crate::fock::gaussianify_density(&gamma).unwrap();
        let ng = rho.relative_entropy(&rho_g).unwrap();

        let dist = rho.charge_distribution().unwrap();
        let gdist = rho_g.charge_distribution().unwrap();
        let c = 0.125 * shannon_entropy(&dist).exp();
        let p_b = dist.tail_greater(c);
        let p_b_g = gdist.tail_greater_about(dist.mean(), c);

        let one_term = symmetry_resolved_lb(p_b, p_b_g).unwrap();
        assert!((one_term - 0.270_310_072_072).abs() < 1e-9);
        assert!((ng - 0.174_416_047_921).abs() < 1e-9);
        assert!(one_term > ng, "the dropped term matters here");

        // restoring the central term recovers a sound two-outcome bound
        let central = symmetry_resolved_lb(1.0 - p_b, 1.0 - p_b_g).unwrap();
        let two_term = one_term + central;
        assert!((two_term - 0.100_034_864_150).abs() < 1e-9);
        assert!(two_term <= ng + SLACK_TOL);
    }

    #[test]
    fn dephasing_channel_is_idempotent_and_trace_preserving() {
        let psi = FockVector::random(77, 4).unwrap();
        let rho = psi.density().unwrap();
        let h = shannon_entropy(&rho.charge_distribution().unwrap()).exp();
        let once = dephasing_channel(&rho, 0.125, h).unwrap();
        let twice = dephasing_channel(&once, 0.125, h).unwrap();
        assert!((once.trace() - 1.0).abs() < 1e-12);
        assert!(
            crate::linalg::max_abs_diff(once.matrix(), twice.matrix()) < 1e-12,
            "not idempotent"
        );

        // block-diagonal states pass through unchanged
        let twirled = rho.twirl();
        let fixed = dephasing_channel(&twirled, 0.125, h).unwrap();
        assert!(crate::linalg::max_abs_diff(twirled.matrix(), fixed.matrix()) < 1e-14);
    }

    #[test]
    fn dephasing_tail_mass_matches_excluded_sectors() {
        let params = crate::kink::KinkParameters::new(6, 4).unwrap();
        let psi = crate::kink::kink_state(&params).unwrap();
        let rho = psi.density().unwrap();
        let dist = rho.charge_distribution().unwrap();
        let h = shannon_entropy(&dist).exp();
        let alpha = 0.125;
        let dephased = dephasing_channel(&rho, alpha, h).unwrap();
        // the energy in the tail group equals the excluded sector mass
        let tail_mass = dist.tail_greater(alpha * h);
        let dephased_dist = dephased.charge_distribution().unwrap();
        let tail_mass_after = dephased_dist.tail_greater(alpha * h);
        assert!((tail_mass - tail_mass_after).abs() < 1e-12);
    }

    #[test]
    fn concentration_and_main_bound_fit_together() {
        // on an oracle-sized kink state the full chain is checkable
        let params = crate::kink::KinkParameters::new(8, 8).unwrap();
        let psi = crate::kink::kink_state(&params).unwrap();
        let gamma = psi.correlation_matrix().unwrap();
        let dist = psi.charge_distribution().unwrap();
        let h = shannon_entropy(&dist).exp();
        let ng = ng_pure(&gamma).unwrap();
        let lb = main_ng_lb_default(h, 8, gamma.charge_variance()).unwrap();
        assert!(lb <= ng + SLACK_TOL, "main bound {lb} > NG {ng}");
        // tail of the Gaussianification obeys its concentration bound
        let gm = gaussian::MajoranaCovariance::from_dirac(&gamma).unwrap();
        let gf = crate::counting::calibrate(&gm).unwrap();
        let gdist = crate::counting::distribution_by_dft(&gf).unwrap();
        let c = 0.125 * h;
        let tail = gdist.tail_greater(c);
        let cap = concentration_bound(gamma.charge_variance(), c).unwrap();
        assert!(tail <= cap + SLACK_TOL);
    }

    #[test]
    fn report_records_verdict_and_serializes() {
        let r = BoundReport::new("demo", 1.0, 0.5, vec![("alpha".into(), 0.125)]);
        assert!(r.holds);
        assert!((r.slack - 0.5).abs() < 1e-15);
        assert_eq!(r.csv_row(), "demo,1,0.5,0.5,true,alpha=0.125");
        let j = r.to_json();
        assert_eq!(j["name"], "demo");
        assert_eq!(j["holds"], true);

        let bad = BoundReport::new("demo", 0.5, 1.0, vec![]);
        assert!(!bad.holds);
    }
}
