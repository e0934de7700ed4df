//! The resource monotones: relative entropy of non-Gaussianity, the
//! particle-number Shannon entropy, and the U(1) asymmetry under charge
//! twirling. All values in nats.

use crate::fock::{gaussianify_density, ChargeDistribution, FockDensity};
use crate::gaussian::CorrelationMatrix;
use crate::linalg::xlnx;
use crate::{Error, Result};

/// How a value was obtained: brute force on the Fock space, or through the
/// correlation matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Oracle,
    Correlation,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::Oracle => write!(f, "oracle"),
            Method::Correlation => write!(f, "correlation"),
        }
    }
}

/// One evaluated measure with its provenance.
#[derive(Debug, Clone)]
pub struct MeasureResult {
    pub value: f64,
    pub method: Method,
    pub inputs: String,
}

impl MeasureResult {
    /// Measures are nonnegative; values below `-1e-10` indicate a bug.
    pub fn new(value: f64, method: Method, inputs: String) -> Result<Self> {
        if value < -1e-10 {
            return Err(Error::Consistency(format!(
                "measure value {value} is negative beyond tolerance ({inputs})"
            )));
        }
        Ok(Self {
            value,
            method,
            inputs,
        })
    }
}

/// Non-Gaussianity of a pure state from its correlation matrix alone:
/// `sum_k H2(nu_k)`.
///
/// The caller asserts purity; for a mixed state this is only an upper bound
/// on the non-Gaussianity. Purity is cheap to certify only through the
/// oracle (`N <= 14`), so it is not checked here.
pub fn ng_pure(gamma: &CorrelationMatrix) -> Result<f64> {
    gamma.gaussian_entropy()
}

/// Non-Gaussianity of an arbitrary oracle-sized state, computed as the
/// entropy gap `S(rho_G) - S(rho)` and cross-checked against the directly
/// evaluated relative entropy `S(rho || rho_G)`; disagreement beyond `1e-8`
/// is an internal-consistency error (it would indicate a broken
/// Gaussianification).
pub fn ng_mixed(rho: &FockDensity) -> Result<f64> {
    let gamma = rho.correlation_matrix()?;
    let gap = gamma.gaussian_entropy()? - rho.von_neumann_entropy();
    let rho_g = gaussianify_density(&gamma)?;
    let direct = rho.relative_entropy(&rho_g)?;
    if !direct.is_finite() {
        return Err(Error::Consistency(
            "relative entropy to the Gaussianification diverged".into(),
        ));
    }
    if (gap - direct).abs() > 1e-8 {
        return Err(Error::Consistency(format!(
            "entropy-gap route {gap} and relative-entropy route {direct} disagree"
        )));
    }
    Ok(gap)
}

/// Shannon entropy `-sum_q p_q ln p_q` of a charge distribution.
pub fn shannon_entropy(dist: &ChargeDistribution) -> f64 {
    -dist.probs().iter().map(|&p| xlnx(p)).sum::<f64>()
}

/// U(1) asymmetry: entropy gained by twirling over charge sectors,
/// `S(twirl(rho)) - S(rho)`. Lies in `[0, log(N+1)]`; equals the Shannon
/// entropy of the charge distribution exactly on pure states.
pub fn asymmetry(rho: &FockDensity) -> f64 {
    rho.twirl().von_neumann_entropy() - rho.von_neumann_entropy()
}
