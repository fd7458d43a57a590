//! Composite Gauss-Legendre quadrature.
//!
//! Two consumers: convolution integrals `int_a^b k(x, y) k(y, z) dy`, whose integrands have
//! kinks at `y = x` and `y = z`, and truncated Fourier-side quadratic forms
//! `int_{-L}^{L} phi_hat(w) |sum_j a_j e^{i w x_j}|^2 dw` with a certified tail bound.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::kernels::{KernelSpec, SpectralDensity};
use crate::linalg::norm1;

pub const MAX_ORDER: usize = 64;

/// Nodes and weights of an `m`-point Gauss-Legendre rule on `[-1, 1]`, nodes ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Applies the rule on `[lo, hi]`, summing left to right.
    #[inline]
    pub fn apply(&self, lo: f64, hi: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }
}

/// `P_m(x)` and `P_m'(x)` by the three-term recurrence.
fn legendre_with_derivative(m: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 2..=m {
        let k = k as f64;
        let next = ((2.0 * k - 1.0) * x * p - (k - 1.0) * p_prev) / k;
        p_prev = p;
        p = next;
    }
    let dp = m as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// Gauss-Legendre rule of order `1 <= m <= 64`.
///
/// Roots of `P_m` come from Newton iteration started at the Chebyshev-like guesses
/// `cos(pi (i + 3/4) / (m + 1/2))`; weights are `2 / ((1 - x^2) P_m'(x)^2)`.
pub fn gauss_legendre(m: usize) -> Result<QuadratureRule> {
    if m == 0 || m > MAX_ORDER {
        return Err(Error::Domain(format!(
            "Gauss-Legendre order must lie in 1..={MAX_ORDER}, got {m}"
        )));
    }
    if m == 1 {
        return Ok(QuadratureRule {
            nodes: vec![0.0],
            weights: vec![2.0],
        });
    }
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    let half = m / 2;
    for i in 0..half {
        let mut x = (PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut converged = false;
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(m, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= 1e-15 {
                converged = true;
                break;
            }
        }
        assert!(converged, "Newton iteration for Legendre root {i} of order {m} stalled");
        let (_, dp) = legendre_with_derivative(m, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[m - 1 - i] = x;
        nodes[i] = -x;
        weights[m - 1 - i] = w;
        weights[i] = w;
    }
    if m % 2 == 1 {
        let (_, dp) = legendre_with_derivative(m, 0.0);
        nodes[half] = 0.0;
        weights[half] = 2.0 / (dp * dp);
    }
    Ok(QuadratureRule { nodes, weights })
}

/// Panel and cutoff settings shared by every integral in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub order: usize,
    /// Panels per unit length on each kink-free piece (at least one panel per piece).
    pub panels_per_unit: f64,
    /// Truncation point `L` of Fourier-side integrals.
    pub fourier_cutoff: f64,
    pub target_rel_tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            order: 20,
            panels_per_unit: 4.0,
            fourier_cutoff: 1.0e3,
            target_rel_tol: 1e-10,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.order == 0 || self.order > MAX_ORDER {
            return Err(Error::Domain(format!(
                "quadrature order must lie in 1..={MAX_ORDER}, got {}",
                self.order
            )));
        }
        for (name, v) in [
            ("panels_per_unit", self.panels_per_unit),
            ("fourier_cutoff", self.fourier_cutoff),
            ("target_rel_tol", self.target_rel_tol),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    /// Same settings with twice the panel density.
    pub fn refined(&self) -> Self {
        Self {
            panels_per_unit: 2.0 * self.panels_per_unit,
            ..*self
        }
    }
}

/// Output of [`fourier_quadratic_form`].
///
/// With `S(w) = sum_j a_j e^{i w x_j}`:
/// `full_integral = int_{-L}^{L} phi_hat |S|^2`,
/// `damped_integral = int_{-L}^{L} phi_hat |S|^2 sin^2(w b / 2)`, and `tail_bound` bounds
/// what either integral misses outside `[-L, L]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierFormResult {
    pub full_integral: f64,
    pub damped_integral: f64,
    pub tail_bound: f64,
    pub cutoff: f64,
}

/// A configuration with its rule built once.
#[derive(Debug, Clone)]
pub struct Quadrature {
    config: QuadratureConfig,
    rule: QuadratureRule,
}

impl Quadrature {
    pub fn new(config: QuadratureConfig) -> Result<Self> {
        config.validate()?;
        Ok(Self {
            rule: gauss_legendre(config.order)?,
            config,
        })
    }

    pub fn config(&self) -> &QuadratureConfig {
        &self.config
    }

    pub fn rule(&self) -> &QuadratureRule {
        &self.rule
    }

    /// `int_a^b f`, splitting at `kinks` and panelizing each piece.
    pub fn integrate(
        &self,
        f: impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        kinks: &[f64],
    ) -> Result<f64> {
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(Error::Domain(format!("need finite a < b, got [{a}, {b}]")));
        }
        if let Some(k) = kinks.iter().find(|k| !(a <= **k && **k <= b)) {
            return Err(Error::Domain(format!("kink {k} outside [{a}, {b}]")));
        }
        let mut breaks: Vec<f64> = Vec::with_capacity(kinks.len() + 2);
        breaks.push(a);
        breaks.extend(kinks.iter().copied().filter(|k| a < *k && *k < b));
        breaks.push(b);
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();

        let mut panels = Vec::new();
        for piece in breaks.windows(2) {
            let (lo, hi) = (piece[0], piece[1]);
            let count = ((hi - lo) * self.config.panels_per_unit).ceil().max(1.0) as usize;
            let width = (hi - lo) / count as f64;
            for p in 0..count {
                let p_lo = lo + p as f64 * width;
                let p_hi = if p + 1 == count { hi } else { p_lo + width };
                panels.push(self.rule.apply(p_lo, p_hi, &f));
            }
        }
        Ok(pairwise_sum(&panels))
    }

    /// `k*(x, z) = int_a^b k(x, y) k(y, z) dy` for a one-dimensional kernel.
    pub fn conv_value(&self, spec: &KernelSpec, x: f64, z: f64, a: f64, b: f64) -> Result<f64> {
        spec.check_dim(1)?;
        let kinks: Vec<f64> = [x, z].into_iter().filter(|k| a <= *k && *k <= b).collect();
        self.integrate(
            |y| spec.phi_unchecked((x - y).abs()) * spec.phi_unchecked((y - z).abs()),
            a,
            b,
            &kinks,
        )
    }

    /// Truncated Fourier integrals of the quadratic form of `alpha` on a 1-D point set.
    pub fn fourier_quadratic_form(
        &self,
        density: &SpectralDensity,
        points: &PointSet,
        alpha: &[f64],
        shift: f64,
    ) -> Result<FourierFormResult> {
        let xs = points.coords_1d()?;
        if alpha.len() != xs.len() {
            return Err(Error::DimensionMismatch {
                expected: xs.len(),
                got: alpha.len(),
            });
        }
        let cutoff = self.config.fourier_cutoff;
        if cutoff < 1.0 {
            return Err(Error::Domain(format!("Fourier cutoff must be >= 1, got {cutoff}")));
        }
        if !shift.is_finite() {
            return Err(Error::Domain(format!("shift must be finite, got {shift}")));
        }

        // |S|^2 oscillates with frequency at most diam(X); sin^2(w b / 2) with |b|.
        let diameter = points.diameter();
        let scale = density.kernel().length_scale();
        let mut width = PI / (4.0 * scale);
        if diameter > 0.0 {
            width = width.min(PI / (4.0 * diameter));
        }
        if shift != 0.0 {
            width = width.min(PI / (2.0 * shift.abs()));
        }
        let count = (cutoff / width).ceil() as usize;
        let width = cutoff / count as f64;

        let integrand = |omega: f64| {
            let (mut re, mut im) = (0.0, 0.0);
            for (x, a) in xs.iter().zip(alpha) {
                let (s, c) = (omega * x).sin_cos();
                re += a * c;
                im += a * s;
            }
            density.eval(omega) * (re * re + im * im)
        };

        let mut full = Vec::with_capacity(count);
        let mut damped = Vec::with_capacity(count);
        for p in 0..count {
            let lo = p as f64 * width;
            let hi = if p + 1 == count { cutoff } else { lo + width };
            let half = 0.5 * (hi - lo);
            let mid = 0.5 * (hi + lo);
            let (mut f_acc, mut d_acc) = (0.0, 0.0);
            for (x, w) in self.rule.nodes.iter().zip(&self.rule.weights) {
                let omega = mid + half * x;
                let v = integrand(omega);
                let s = (0.5 * omega * shift).sin();
                f_acc += w * v;
                d_acc += w * v * s * s;
            }
            full.push(f_acc * half);
            damped.push(d_acc * half);
        }
        // the integrand is even in w
        let full_integral = 2.0 * pairwise_sum(&full);
        let damped_integral = 2.0 * pairwise_sum(&damped);
        let l1 = norm1(alpha);
        let tail_bound = l1 * l1 * density.tail_mass(cutoff);
        if tail_bound > full_integral {
            return Err(Error::CutoffTooSmall {
                cutoff,
                tail_bound,
                integral: full_integral,
            });
        }
        Ok(FourierFormResult {
            full_integral,
            damped_integral,
            tail_bound,
            cutoff,
        })
    }
}

/// Summation by recursive halving; deterministic for a fixed input order.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const BLOCK: usize = 8;
    if values.len() <= BLOCK {
        values.iter().sum()
    } else {
        let (l, r) = values.split_at(values.len() / 2);
        pairwise_sum(l) + pairwise_sum(r)
    }
}

pub fn integrate(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    config: &QuadratureConfig,
    kinks: &[f64],
) -> Result<f64> {
    Quadrature::new(*config)?.integrate(f, a, b, kinks)
}

pub fn conv_value(
    spec: &KernelSpec,
    x: f64,
    z: f64,
    domain: (f64, f64),
    config: &QuadratureConfig,
) -> Result<f64> {
    Quadrature::new(*config)?.conv_value(spec, x, z, domain.0, domain.1)
}

pub fn fourier_quadratic_form(
    density: &SpectralDensity,
    points: &PointSet,
    alpha: &[f64],
    shift: f64,
    config: &QuadratureConfig,
) -> Result<FourierFormResult> {
    Quadrature::new(*config)?.fourier_quadratic_form(density, points, alpha, shift)
}

/// Exact `int_a^b e^{-|x-y|} e^{-|y-z|} dy`.
///
/// Left of `min(x, z)` the integrand is `e^{2y - x - z}`, between the two points it is the
/// constant `e^{-|x - z|}`, and right of `max(x, z)` it is `e^{x + z - 2y}`.
pub fn closed_form_conv_exp(x: f64, z: f64, a: f64, b: f64) -> f64 {
    let (lo, hi) = if x <= z { (x, z) } else { (z, x) };
    let mut total = 0.0;
    let left_end = lo.min(b);
    if a < left_end {
        total += -0.5 * (2.0 * left_end - lo - hi).exp() * (2.0 * (a - left_end)).exp_m1();
    }
    let mid_lo = a.max(lo);
    let mid_hi = b.min(hi);
    if mid_lo < mid_hi {
        total += (mid_hi - mid_lo) * (lo - hi).exp();
    }
    let right_start = a.max(hi);
    if right_start < b {
        total += -0.5 * (lo + hi - 2.0 * right_start).exp() * (2.0 * (right_start - b)).exp_m1();
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::equispaced;
    use crate::kernels::KernelFamily;
    use approx::assert_relative_eq;

    #[test]
    fn low_order_rules() {
        let r1 = gauss_legendre(1).unwrap();
        assert_eq!(r1.nodes(), &[0.0]);
        assert_eq!(r1.weights(), &[2.0]);
        let r2 = gauss_legendre(2).unwrap();
        assert_relative_eq!(r2.nodes()[1], 1.0 / 3f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(r2.nodes()[0], -1.0 / 3f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(r2.weights()[0], 1.0, max_relative = 1e-15);
        assert_relative_eq!(r2.weights()[1], 1.0, max_relative = 1e-15);
        assert!(gauss_legendre(0).is_err());
        assert!(gauss_legendre(65).is_err());
    }

    #[test]
    fn weights_sum_to_two_and_nodes_inside() {
        for m in 1..=MAX_ORDER {
            let r = gauss_legendre(m).unwrap();
            let s: f64 = r.weights().iter().sum();
            assert!((s - 2.0).abs() <= 1e-14, "order {m}: weight sum {s}");
            assert!(r.nodes().iter().all(|x| x.abs() < 1.0));
            assert!(r.weights().iter().all(|w| *w > 0.0));
            assert!(r.nodes().windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn monomial_exactness() {
        for m in [1, 2, 3, 5, 8, 13, 20, 32, 64] {
            let r = gauss_legendre(m).unwrap();
            for deg in 0..2 * m {
                let got = r.apply(-1.0, 1.0, |x| x.powi(deg as i32));
                let want = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                assert!((got - want).abs() <= 1e-13, "m={m} deg={deg}: {got} vs {want}");
            }
        }
        let r20 = gauss_legendre(20).unwrap();
        assert!((r20.apply(-1.0, 1.0, |x| x.powi(38)) - 2.0 / 39.0).abs() <= 1e-13);
    }

    #[test]
    fn integrate_examples() {
        let cfg = QuadratureConfig::default();
        assert_relative_eq!(integrate(|_| 1.0, 0.0, 1.0, &cfg, &[]).unwrap(), 1.0, max_relative = 1e-15);
        let v = integrate(|y| (-2.0 * (0.5 - y).abs()).exp(), 0.0, 1.0, &cfg, &[0.5]).unwrap();
        assert_relative_eq!(v, 1.0 - (-1.0f64).exp(), max_relative = 1e-14);
    }

    #[test]
    fn kink_splitting_matters() {
        let cfg = QuadratureConfig::default();
        let with = integrate(f64::abs, -1.0, 1.0, &cfg, &[0.0]).unwrap();
        assert!((with - 1.0).abs() <= 1e-15);
        // Odd panel count per unit puts the kink inside a panel.
        let odd = QuadratureConfig {
            panels_per_unit: 1.5,
            ..cfg
        };
        let without = integrate(f64::abs, -1.0, 1.0, &odd, &[]).unwrap();
        let err = (without - 1.0).abs();
        assert!(err > 1e-12 && err < 1e-2, "error without kink {err}");
        assert!(integrate(f64::abs, -1.0, 1.0, &cfg, &[2.0]).is_err());
        assert!(integrate(f64::abs, 1.0, 1.0, &cfg, &[]).is_err());
    }

    #[test]
    fn closed_form_examples() {
        let e1 = (-1.0f64).exp();
        assert_relative_eq!(closed_form_conv_exp(0.5, 0.5, 0.0, 1.0), 1.0 - e1, max_relative = 1e-15);
        assert_relative_eq!(closed_form_conv_exp(0.0, 1.0, 0.0, 1.0), e1, max_relative = 1e-15);
        assert_eq!(
            closed_form_conv_exp(0.3, 0.7, 0.0, 1.0),
            closed_form_conv_exp(0.7, 0.3, 0.0, 1.0)
        );
    }

    #[test]
    fn conv_value_matches_closed_form() {
        let k = KernelSpec::new(KernelFamily::MaternBasic, 1).unwrap();
        let q = Quadrature::new(QuadratureConfig::default()).unwrap();
        for (x, z) in [(0.5, 0.5), (0.0, 1.0), (0.3, 0.7), (0.0, 0.0), (1.0, 1.0)] {
            let v = q.conv_value(&k, x, z, 0.0, 1.0).unwrap();
            assert!((v - closed_form_conv_exp(x, z, 0.0, 1.0)).abs() <= 1e-13);
            let sym = q.conv_value(&k, z, x, 0.0, 1.0).unwrap();
            assert!((v - sym).abs() <= 1e-14);
        }
        let k2 = KernelSpec::new(KernelFamily::MaternBasic, 2).unwrap();
        assert!(q.conv_value(&k2, 0.0, 0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn fourier_form_single_point_and_zero_shift() {
        let k = KernelSpec::new(KernelFamily::MaternLinear, 1).unwrap();
        let density = k.spectral_density_1d().unwrap();
        let q = Quadrature::new(QuadratureConfig::default()).unwrap();
        let x = PointSet::new(vec![vec![0.4]], crate::geometry::DomainBox::unit(1)).unwrap();
        let r = q.fourier_quadratic_form(&density, &x, &[1.0], 0.0).unwrap();
        assert_eq!(r.damped_integral, 0.0);
        let norm = crate::kernels::fourier_normalization_1d();
        assert!(norm * (r.full_integral + r.tail_bound) >= 1.0);
        assert!((norm * r.full_integral - 1.0).abs() <= norm * r.tail_bound + 1e-12);
    }

    #[test]
    fn fourier_form_rejects_tiny_cutoff() {
        let k = KernelSpec::new(KernelFamily::MaternBasic, 1).unwrap();
        let density = k.spectral_density_1d().unwrap();
        let x = equispaced(8, 0.0, 1.0, true).unwrap();
        let cfg = QuadratureConfig {
            fourier_cutoff: 1.0,
            ..Default::default()
        };
        let alpha = [1.0, -1.0, 1.0, -1.0, 1.0, -1.0, 1.0, -1.0];
        assert!(matches!(
            fourier_quadratic_form(&density, &x, &alpha, 0.0, &cfg),
            Err(Error::CutoffTooSmall { .. })
        ));
    }

    #[test]
    fn pairwise_sum_matches_naive_on_integers() {
        let v: Vec<f64> = (0..1000).map(f64::from).collect();
        assert_eq!(pairwise_sum(&v), 499500.0);
    }
}
