//! Charge concentration of Gaussian states: exact tails against the
//! Bernstein-type cap, at a size far beyond the dense oracle.
//!
//! ```bash
//! cargo run --release --example concentration_tails
//! ```

use nongauss::counting;
use nongauss::gaussian::{self, MajoranaCovariance};

fn main() {
    let n = 60;
    let gamma = gaussian::random_gaussian(11, n, 0.5).expect("thermal state");
    let gm = MajoranaCovariance::from_dirac(&gamma).unwrap();
    let gf = counting::calibrate(&gm).unwrap();
    let dist = counting::distribution_by_dft(&gf).unwrap();
    let sigma_sq = gamma.charge_variance();

    println!(
        "thermal Gaussian state, N = {n}: <Q> = {:.4}, var = {:.4} (cap 2N = {})",
        dist.mean(),
        sigma_sq,
        2 * n
    );
    println!(
        "\n{:>4} {:>14} {:>14} {:>10}",
        "a", "P[|q - <Q>|>=a]", "2e^{-a^2/...}", "ratio"
    );
    for a in (0..=24).step_by(3) {
        let tail = dist.tail_at_least(a as f64);
        let cap = counting::concentration_bound(sigma_sq, a as f64).unwrap();
        let ratio = if tail > 0.0 {
            cap / tail
        } else {
            f64::INFINITY
        };
        println!("{a:>4} {tail:>14.3e} {cap:>14.3e} {ratio:>10.2}");
    }
    println!("\nfluctuations of order sqrt(N) are typical; deviations of order N");
    println!("are exponentially suppressed, which is what starves the tails of");
    println!("any Gaussian state and forces anti-concentrated states away from");
    println!("the Gaussian family.");
}
