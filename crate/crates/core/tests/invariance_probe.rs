// Temporary calibration probe for the invariance regression symbols.

use appdo_core::freq::{window_enumerate, Rational};
use appdo_core::grid::{GridSpec, HermiteBasis, HERMITE_WIDTH_DEFAULT};
use appdo_core::linalg::hausdorff;
use appdo_core::sample;
use appdo_core::spectral::{finite_section_spectrum, rayleigh_ritz_values};
use num_complex::Complex64;

#[test]
#[ignore]
fn probe_mu_window_sizes() {
    let gens = sample::default_gens();
    let basis = HermiteBasis::new(12, GridSpec::d1(16.0, 256), HERMITE_WIDTH_DEFAULT);
    let w16 = window_enumerate(&gens, Rational::from_integer(16), 1, 100_000).unwrap();
    let a = &sample::invariance_regression_symbols(&gens)[1];
    let k0: Vec<Complex64> = finite_section_spectrum(a, &w16, &[0.0])
        .unwrap()
        .complex_values();
    println!("kernel set size {}", k0.len());
    let _ = &basis;
    for width in [0.3f64, 0.35, 0.4, 0.5] {
        let b = HermiteBasis::new(12, GridSpec::d1(16.0, 256), width);
        for mu_radius in [1i64, 2] {
            let mu_window =
                window_enumerate(&gens, Rational::from_integer(mu_radius), 1, 1000).unwrap();
            let t = std::time::Instant::now();
            let rr = rayleigh_ritz_values(a, &b, &mu_window).unwrap();
            let rrc: Vec<Complex64> = rr.iter().map(|&v| Complex64::new(v, 0.0)).collect();
            println!(
                "width {width} mu radius {mu_radius} (dim {}): d(tensor)={:.5} rr[{:.4},{:.4}] ({:?})",
                mu_window.len() * b.count(),
                hausdorff(&k0, &rrc),
                rr.first().unwrap(),
                rr.last().unwrap(),
                t.elapsed()
            );
        }
    }
}
