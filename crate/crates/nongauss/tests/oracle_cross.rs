//! Cross-representation agreement: the correlation-matrix machinery against
//! the dense Fock-space oracle on states where both are affordable.

use nalgebra::DMatrix;
use nongauss::counting;
use nongauss::fock::{thermal_gaussian_density, FockVector};
use nongauss::gaussian::{self, CorrelationMatrix, MajoranaCovariance};
use nongauss::measures;
use num_complex::Complex64;

fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

/// The thermal construction has no closed-form reference, so agreement with
/// the dense oracle is the contract: within 1e-8 for N <= 10.
#[test]
fn thermal_correlation_matches_the_dense_oracle_up_to_n10() {
    let cases: Vec<(u64, usize, f64)> = vec![
        (1, 4, 0.3),
        (2, 5, 1.0),
        (3, 6, 2.5),
        (4, 7, 0.7),
        (5, 8, 1.4),
        (6, 9, 0.5),
        (7, 10, 1.0),
        (8, 6, f64::INFINITY),
        (9, 8, f64::INFINITY),
        (10, 5, -0.6), // population inversion is still a quadratic state
    ];
    for (seed, n, beta) in cases {
        let (a, b) = gaussian::random_hamiltonian(seed, n);
        let from_modes = gaussian::thermal_correlation(&a, &b, beta).unwrap();
        let rho = thermal_gaussian_density(&a, &b, beta).unwrap();
        let from_oracle = rho.correlation_matrix().unwrap();
        let dc = max_abs_diff(from_modes.c(), from_oracle.c());
        let df = max_abs_diff(from_modes.f(), from_oracle.f());
        assert!(
            dc < 1e-8 && df < 1e-8,
            "N = {n}, beta = {beta}: C defect {dc:.2e}, F defect {df:.2e}"
        );
    }
}

#[test]
fn gaussian_entropy_matches_the_oracle_von_neumann_entropy() {
    for seed in 0..6u64 {
        let n = 4 + (seed as usize % 4);
        let beta = 0.4 + 0.3 * seed as f64;
        let (a, b) = gaussian::random_hamiltonian(seed + 60, n);
        let gamma = gaussian::thermal_correlation(&a, &b, beta).unwrap();
        let rho = thermal_gaussian_density(&a, &b, beta).unwrap();
        let via_gamma = gamma.gaussian_entropy().unwrap();
        let via_oracle = rho.von_neumann_entropy();
        assert!(
            (via_gamma - via_oracle).abs() < 1e-8,
            "N = {n}: {via_gamma} vs {via_oracle}"
        );
    }
}

#[test]
fn charge_moments_match_the_oracle_distribution() {
    for seed in 0..6u64 {
        let n = 4 + (seed as usize % 5);
        let beta = if seed % 2 == 0 { 0.8 } else { f64::INFINITY };
        let (a, b) = gaussian::random_hamiltonian(seed + 200, n);
        let gamma = gaussian::thermal_correlation(&a, &b, beta).unwrap();
        let dist = if beta.is_infinite() {
            let modes = gaussian::ground_modes(&a, &b).unwrap();
            FockVector::bogoliubov_vacuum(&modes, seed)
                .unwrap()
                .charge_distribution()
                .unwrap()
        } else {
            thermal_gaussian_density(&a, &b, beta)
                .unwrap()
                .charge_distribution()
                .unwrap()
        };
        assert!(
            (gamma.charge_mean() - dist.mean()).abs() < 1e-8,
            "mean at N = {n}"
        );
        assert!(
            (gamma.charge_variance() - dist.variance()).abs() < 1e-8,
            "variance at N = {n}"
        );
    }
}

/// The Majorana covariance of the vacuum makes the uncalibrated generating
/// function a pure exponential; the calibration must cancel it exactly.
#[test]
fn vacuum_generating_function_calibrates_to_unity() {
    let vac = CorrelationMatrix::vacuum(5);
    let gm = MajoranaCovariance::from_dirac(&vac).unwrap();
    let spec = counting::mu_spectrum(&gm).unwrap();
    assert_eq!(spec.reals().len(), 5);
    for &xi in spec.reals() {
        assert!((xi + 1.0).abs() < 1e-12);
    }
    let chi = counting::chi_determinant(&gm, Complex64::new(1.25, 0.0)).unwrap();
    assert!((chi.re - (1.25f64 * 2.5).exp()).abs() < 1e-9);

    let gf = counting::calibrate(&gm).unwrap();
    let oracle = FockVector::vacuum(5)
        .unwrap()
        .charge_distribution()
        .unwrap();
    assert_eq!(oracle.probs()[0], 1.0);
    for step in -4..=4 {
        let t = 0.5 * step as f64;
        let chi = gf.evaluate(Complex64::new(t, 0.0));
        assert!((chi.re - 1.0).abs() < 1e-12 && chi.im.abs() < 1e-14);
    }
}

/// Twirling an equal-weight superposition of one eigenstate per charge
/// sector produces the maximally mixed sector label, with entropy log(N+1).
#[test]
fn maximal_asymmetry_of_a_uniform_charge_superposition() {
    let n = 5;
    let psi = {
        let mut amps = nalgebra::DVector::zeros(1 << n);
        let w = 1.0 / ((n + 1) as f64).sqrt();
        for q in 0..=n {
            amps[(1usize << q) - 1] = Complex64::new(w, 0.0);
        }
        FockVector::from_amplitudes(n, amps).unwrap()
    };
    let rho = psi.density().unwrap();
    let asym = measures::asymmetry(&rho);
    assert!((asym - ((n + 1) as f64).ln()).abs() < 1e-10);
    // pure-state saturation: the Shannon entropy is also log(N+1)
    let h = measures::shannon_entropy(&psi.charge_distribution().unwrap());
    assert!((asym - h).abs() < 1e-10);
}
