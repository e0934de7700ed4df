//! The dense Fock-space oracle against the correlation-matrix machinery on
//! a size where both are exact.
//!
//! Builds a random 6-mode pure state, computes its non-Gaussianity three
//! ways (correlation spectrum, entropy gap, direct relative entropy), and
//! checks the thermal construction between both representations.
//!
//! ```bash
//! cargo run --release --example oracle_crosscheck
//! ```

use nongauss::fock::{gaussianify_density, thermal_gaussian_density, FockVector};
use nongauss::gaussian;
use nongauss::measures;

fn main() {
    let n = 6;

    // a generic pure state is almost surely non-Gaussian
    let psi = FockVector::random(42, n).expect("random state");
    let gamma = psi.correlation_matrix().expect("two-point data");
    let rho = psi.density().expect("density");
    let rho_g = gaussianify_density(&gamma).expect("Gaussianification");

    let via_spectrum = measures::ng_pure(&gamma).expect("spectrum route");
    let via_gap = gamma.gaussian_entropy().unwrap() - rho.von_neumann_entropy();
    let via_relative = rho.relative_entropy(&rho_g).expect("relative entropy");
    println!("random pure state, N = {n}:");
    println!("  NG from the correlation spectrum  = {via_spectrum:.12}");
    println!("  NG as the entropy gap             = {via_gap:.12}");
    println!("  NG as S(rho || rho_G)             = {via_relative:.12}");
    println!(
        "  trace distance to rho_G           = {:.12}",
        rho.trace_distance(&rho_g).unwrap()
    );

    // the Gaussianification really does carry the same two-point data
    let back = rho_g.correlation_matrix().expect("recomputed blocks");
    let drift = (gamma.c() - back.c())
        .norm()
        .max((gamma.f() - back.f()).norm());
    println!("  correlation drift through rho_G   = {drift:.2e}");

    // thermal states built in Fock space and at matrix scale coincide
    println!("\nthermal construction at beta = 1.3:");
    let (a, b) = gaussian::random_hamiltonian(5, n);
    let from_modes = gaussian::thermal_correlation(&a, &b, 1.3).unwrap();
    let from_fock = thermal_gaussian_density(&a, &b, 1.3)
        .unwrap()
        .correlation_matrix()
        .unwrap();
    let dc = (from_modes.c() - from_fock.c()).norm();
    let df = (from_modes.f() - from_fock.f()).norm();
    println!("  |C_modes - C_fock| = {dc:.2e}");
    println!("  |F_modes - F_fock| = {df:.2e}");
    println!(
        "  entropy: {:.12} (modes) vs {:.12} (fock)",
        from_modes.gaussian_entropy().unwrap(),
        thermal_gaussian_density(&a, &b, 1.3)
            .unwrap()
            .von_neumann_entropy()
    );
}
