//! The spectral densities checked against the kernel profiles by direct inversion, and the
//! Fourier representation of `a^T A a` against the matrix.

use kernstab_core::kernels::fourier_normalization_1d;
use kernstab_core::quadrature::Quadrature;
use kernstab_core::{equispaced, gram, KernelFamily, KernelSpec, QuadratureConfig};

/// `(2 pi)^{-1/2} int phi_hat(w) cos(w r) dw` by the composite midpoint rule after the
/// substitution `w = tan t`, which maps the half line to `[0, pi/2)`.
fn invert(spec: &KernelSpec, r: f64) -> f64 {
    let dens = spec.spectral_density_1d().unwrap();
    let steps = 400_000;
    let h = std::f64::consts::FRAC_PI_2 / steps as f64;
    let mut acc = 0.0;
    for i in 0..steps {
        let w = ((i as f64 + 0.5) * h).tan();
        acc += dens.eval(w) * (w * r).cos() * (1.0 + w * w);
    }
    2.0 * fourier_normalization_1d() * acc * h
}

#[test]
fn densities_invert_to_profiles() {
    for family in [
        KernelFamily::MaternBasic,
        KernelFamily::MaternLinear,
        KernelFamily::MaternQuadratic,
    ] {
        let k = KernelSpec::new(family, 1).unwrap();
        for r in [0.0, 0.3, 1.0, 2.5] {
            let want = k.phi(r).unwrap();
            let got = invert(&k, r);
            // the basic density oscillates slowly near t = pi/2; the others are smooth there
            let tol = if family == KernelFamily::MaternBasic && r > 0.0 { 2e-4 } else { 1e-7 };
            assert!((got - want).abs() <= tol, "{family} r={r}: {got} vs {want}");
        }
        let d = k.spectral_density_1d().unwrap();
        assert!((d.total_mass_normalized() - k.phi(0.0).unwrap()).abs() < 1e-15);
    }
}

#[test]
fn fourier_form_reproduces_the_matrix_form() {
    let cfg = QuadratureConfig::default();
    let quad = Quadrature::new(cfg).unwrap();
    for family in [KernelFamily::MaternBasic, KernelFamily::MaternLinear] {
        let k = KernelSpec::new(family, 1).unwrap();
        let x = equispaced(7, 0.0, 1.0, true).unwrap();
        let alpha = [1.0, -0.5, 0.25, 2.0, -1.0, 0.0, 0.75];
        let direct = gram(&k, &x).unwrap().data.quadratic_form(&alpha).unwrap();
        let r = quad
            .fourier_quadratic_form(&k.spectral_density_1d().unwrap(), &x, &alpha, 0.0)
            .unwrap();
        let via = fourier_normalization_1d() * r.full_integral;
        let tail = fourier_normalization_1d() * r.tail_bound;
        assert!(via <= direct + 1e-10);
        assert!(direct - via <= tail + 1e-10, "{family}: {direct} {via} {tail}");
    }
}
