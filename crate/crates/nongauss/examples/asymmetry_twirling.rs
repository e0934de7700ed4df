//! Charge twirling and the U(1) asymmetry.
//!
//! Shows the asymmetry of charge eigenstates (zero), of a maximally
//! asymmetric uniform superposition (log(N+1)), and the pure-state
//! saturation of the Shannon-entropy bound; then contrasts a mixed state
//! where the bound is strict.
//!
//! ```bash
//! cargo run --release --example asymmetry_twirling
//! ```

use nalgebra::DVector;
use nongauss::fock::{FockDensity, FockVector};
use nongauss::measures;
use num_complex::Complex64;

fn main() {
    let n = 6;

    let eigenstate = FockVector::basis_state(n, 0b010110).unwrap();
    let rho = eigenstate.density().unwrap();
    println!(
        "charge eigenstate |010110>:      asymmetry = {:.3e}",
        measures::asymmetry(&rho)
    );

    // one kink representative per sector, equal weights
    let mut amps = DVector::zeros(1 << n);
    let w = 1.0 / ((n + 1) as f64).sqrt();
    for q in 0..=n {
        amps[(1usize << q) - 1] = Complex64::new(w, 0.0);
    }
    let psi = FockVector::from_amplitudes(n, amps).unwrap();
    let rho = psi.density().unwrap();
    let ds = measures::asymmetry(&rho);
    println!(
        "uniform over all {} sectors:      asymmetry = {ds:.6} = log {} = {:.6}",
        n + 1,
        n + 1,
        ((n + 1) as f64).ln()
    );

    // pure states saturate the Shannon-entropy bound
    let psi = FockVector::random(9, n).unwrap();
    let rho = psi.density().unwrap();
    let h = measures::shannon_entropy(&psi.charge_distribution().unwrap());
    println!(
        "random pure state:               asymmetry = {:.6}, H = {h:.6} (saturated)",
        measures::asymmetry(&rho)
    );

    // mixed states sit strictly below it
    let rho = FockDensity::random_mixed(4, n, 8).unwrap();
    let h = measures::shannon_entropy(&rho.charge_distribution().unwrap());
    println!(
        "random mixed state:              asymmetry = {:.6} <  H = {h:.6}",
        measures::asymmetry(&rho)
    );

    // twirling is the projection onto charge-diagonal states
    let twirled = rho.twirl();
    println!(
        "twirl is idempotent:             second pass moves entropy by {:.2e}",
        (twirled.twirl().von_neumann_entropy() - twirled.von_neumann_entropy()).abs()
    );
}
