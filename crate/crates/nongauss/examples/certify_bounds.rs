//! Certify every lower bound on one state, from the cheap trace-based
//! inequality to the concentration-based one.
//!
//! Uses the maximal kink state at N = 100 (asymmetry log N, non-Gaussianity
//! linear in N) and prints a bound report per inequality, then shows the
//! same machinery on an oracle-sized random pure state.
//!
//! ```bash
//! cargo run --release --example certify_bounds
//! ```

use nongauss::bounds::{self, BoundReport};
use nongauss::counting;
use nongauss::fock::FockVector;
use nongauss::gaussian::MajoranaCovariance;
use nongauss::kink::{self, KinkParameters};
use nongauss::measures;

fn show(report: &BoundReport) {
    println!(
        "  {:<26} lhs {:>12.6} rhs {:>12.6} slack {:>12.6} holds {}",
        report.bound_name, report.lhs, report.rhs, report.slack, report.holds
    );
}

fn main() {
    let n = 100;
    let params = KinkParameters::new(n, n).expect("kink parameters");
    let gamma = kink::kink_correlation(&params);
    let ng = kink::kink_ng(&params).expect("exact non-Gaussianity");
    let h_entropy = (n as f64).ln(); // uniform over N sectors
    let h = n as f64;
    let sigma_sq_g = gamma.charge_variance();
    let alpha = 0.125;

    println!("maximal kink state, N = R = {n}: NG = {ng:.4}, H = log {n}");
    show(&BoundReport::new(
        "quadratic-ng-lb",
        ng,
        bounds::quadratic_ng_lb(&gamma),
        vec![],
    ));
    show(&BoundReport::new(
        "kink-ng-lb",
        ng,
        kink::kink_lower_bound(h_entropy).unwrap(),
        vec![],
    ));
    show(&BoundReport::new(
        "pinsker-ng-lb",
        ng,
        bounds::pinsker_ng_lb(h_entropy, n),
        vec![],
    ));
    show(&BoundReport::new(
        "main-ng-lb",
        ng,
        bounds::main_ng_lb(h, n, sigma_sq_g, alpha).unwrap(),
        vec![("alpha".into(), alpha)],
    ));

    // the alpha-dependent ingredients of the concentration route
    let s = bounds::s_n_alpha(h, n, alpha).unwrap();
    let c = alpha * h;
    let gm = MajoranaCovariance::from_dirac(&gamma).unwrap();
    let gf = counting::calibrate(&gm).unwrap();
    let gauss_tail = counting::distribution_by_dft(&gf).unwrap().tail_greater(c);
    let gauss_cap = counting::concentration_bound(sigma_sq_g, c).unwrap();
    println!("\nconcentration ingredients at alpha = {alpha}:");
    println!("  guaranteed tail of the state      s_N = {s:.6}");
    println!("  Gaussianification tail            {gauss_tail:.3e}");
    println!("  Bernstein cap on that tail        {gauss_cap:.3e}");

    // the same reports on a state where the oracle can verify everything
    let n = 8;
    let psi = FockVector::random(3, n).unwrap();
    let gamma = psi.correlation_matrix().unwrap();
    let rho = psi.density().unwrap();
    let ng = measures::ng_pure(&gamma).unwrap();
    let dist = psi.charge_distribution().unwrap();
    let h_entropy = measures::shannon_entropy(&dist);
    println!("\nrandom pure state, N = {n}: NG = {ng:.6}, H = {h_entropy:.6}");
    show(&BoundReport::new(
        "quadratic-ng-lb",
        ng,
        bounds::quadratic_ng_lb(&gamma),
        vec![],
    ));
    show(&BoundReport::new(
        "pinsker-ng-lb",
        ng,
        bounds::pinsker_ng_lb(measures::asymmetry(&rho), n),
        vec![],
    ));
    show(&BoundReport::new(
        "main-ng-lb",
        ng,
        bounds::main_ng_lb_default(h_entropy.exp(), n, gamma.charge_variance()).unwrap(),
        vec![],
    ));
}
