//! Stability bounds for kernel matrices and numerical verifiers for them.

use crate::assembly::{gram, shifted_gram, symmetric_part};
use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::kernels::{fourier_normalization_1d, KernelFamily, KernelSpec, SpectralDensity};
use crate::linalg::{dot, norm2, Matrix};
use crate::quadrature::{FourierFormResult, Quadrature, QuadratureConfig};
use crate::spectral::{self, sym_eigen};

/// Whether a check's numbers can be trusted as evidence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reliability {
    Reliable,
    /// The compared quantity is below the roundoff level of its matrix.
    BelowPrecisionFloor,
    /// The configuration sits on the boundary of the statement (e.g. zero shift).
    Degenerate,
}

impl Reliability {
    pub fn name(self) -> &'static str {
        match self {
            Reliability::Reliable => "reliable",
            Reliability::BelowPrecisionFloor => "below-precision-floor",
            Reliability::Degenerate => "degenerate",
        }
    }
}

/// One numeric inequality `lhs <= rhs + tolerance`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub tolerance: f64,
    pub satisfied: bool,
    /// `rhs - lhs`
    pub slack: f64,
    pub reliability: Reliability,
}

impl BoundCheck {
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            lhs,
            rhs,
            tolerance,
            satisfied: lhs <= rhs + tolerance,
            slack: rhs - lhs,
            reliability: Reliability::Reliable,
        }
    }

    pub fn with_reliability(mut self, reliability: Reliability) -> Self {
        self.reliability = reliability;
        self
    }

    /// A violated check that counts: unreliable or degenerate checks never fail a run.
    pub fn is_failure(&self) -> bool {
        !self.satisfied && self.reliability == Reliability::Reliable
    }

    pub const CSV_HEADER: &'static str = "name,lhs,rhs,slack,satisfied,reliability";

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.name,
            crate::io::format_g17(self.lhs),
            crate::io::format_g17(self.rhs),
            crate::io::format_g17(self.slack),
            self.satisfied,
            self.reliability.name()
        )
    }
}

/// Constants of the lower-bound curves, fitted against the published eigenvalue data
/// for equispaced points on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundConstants {
    /// `lambda_min(k(X, X)) >= c_min q^{2 tau - d}`
    pub c_min: f64,
    /// `lambda_min(k*(X, X)) >= c_conv q^{4 tau - d}`
    pub c_conv: f64,
}

impl BoundConstants {
    /// Shipped constants for `d = 1`; `None` where no data was available to fit them.
    pub fn for_family(family: KernelFamily) -> Option<Self> {
        match family {
            KernelFamily::MaternBasic => Some(Self { c_min: 0.4, c_conv: 0.24 }),
            KernelFamily::MaternLinear => Some(Self { c_min: 0.16, c_conv: 0.0896 }),
            _ => None,
        }
    }
}

fn check_bound_inputs(tau: f64, d: usize, q: f64, c: f64) -> Result<()> {
    if !(tau > d as f64 / 2.0) {
        return Err(Error::Hypothesis(format!("need tau > d/2, got tau = {tau}, d = {d}")));
    }
    if !(q > 0.0) || !q.is_finite() {
        return Err(Error::Domain(format!("separation must be positive, got {q}")));
    }
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::Domain(format!("constant must be positive, got {c}")));
    }
    Ok(())
}

/// `c_min q^{2 tau - d}`.
pub fn symmetric_lower_bound(tau: f64, d: usize, q: f64, c_min: f64) -> Result<f64> {
    check_bound_inputs(tau, d, q, c_min)?;
    Ok(c_min * q.powf(2.0 * tau - d as f64))
}

/// `c q^{4 tau - d}`.
pub fn conv_lower_bound(tau: f64, d: usize, q: f64, c: f64) -> Result<f64> {
    check_bound_inputs(tau, d, q, c)?;
    Ok(c * q.powf(4.0 * tau - d as f64))
}

/// `c q^d lambda_min(k(X, X))^2`.
pub fn conv_lower_bound_from_gram(d: usize, q: f64, c: f64, lambda_min_gram: f64) -> Result<f64> {
    if !(q > 0.0) || !(c > 0.0) {
        return Err(Error::Domain(format!("need q > 0 and c > 0, got q = {q}, c = {c}")));
    }
    Ok(c * q.powi(d as i32) * lambda_min_gram * lambda_min_gram)
}

/// `c q^{-4 tau}`.
pub fn cond_upper_bound(tau: f64, q: f64, c: f64) -> Result<f64> {
    if !(q > 0.0) || !q.is_finite() {
        return Err(Error::Domain(format!("separation must be positive, got {q}")));
    }
    Ok(c * q.powf(-4.0 * tau))
}

/// `|B_q(0)|`, the volume of a ball of radius `q` in `R^d`.
pub fn ball_volume(d: usize, q: f64) -> f64 {
    // V_d = V_{d-2} * 2 pi / d
    let unit = match d {
        0 => 1.0,
        _ => {
            let mut v = if d % 2 == 0 { 1.0 } else { 2.0 };
            let mut k = if d % 2 == 0 { 2 } else { 3 };
            while k <= d {
                v *= 2.0 * std::f64::consts::PI / k as f64;
                k += 2;
            }
            v
        }
    };
    unit * q.powi(d as i32)
}

/// Spectrum of `A^{-1/2} k(X + b, X)_+ A^{-1/2}` and its comparison with `[3/4, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport {
    pub lower: BoundCheck,
    pub upper: BoundCheck,
    pub whitened: Matrix,
    /// Ascending.
    pub spectrum: Vec<f64>,
}

/// Margin by which `lambda_max` of the whitened matrix must stay below 1.
pub const STRICT_UPPER_MARGIN: f64 = 1e-12;

pub fn verify_equivalence(spec: &KernelSpec, points: &PointSet, shift: &[f64]) -> Result<EquivalenceReport> {
    let a = gram(spec, points)?;
    let b = shifted_gram(spec, points, shift)?;
    let whitened = spectral::whiten(&a.data, &b.data)?;
    let spectrum = spectral::sym_eigenvalues(&whitened)?;
    let (lo, hi) = (spectrum[0], *spectrum.last().expect("nonempty"));
    let degenerate = shift.iter().all(|s| *s == 0.0);
    let lower = BoundCheck::new("equivalence-lower", 0.75, lo, 0.0);
    let mut upper = BoundCheck::new("equivalence-upper", hi, 1.0, -STRICT_UPPER_MARGIN);
    if degenerate {
        upper = upper.with_reliability(Reliability::Degenerate);
    }
    Ok(EquivalenceReport {
        lower,
        upper,
        whitened,
        spectrum,
    })
}

/// Two-sided comparison of Rayleigh quotients for one coefficient vector.
#[derive(Debug, Clone, PartialEq)]
pub struct SharpEquivalenceReport {
    /// `R - prefactor * R^{1 - 1/tau} q^{2 - d/tau} <= R_b`
    pub lower: BoundCheck,
    /// `R_b <= R`
    pub upper: BoundCheck,
    /// `(R - R_b) / (R^{1 - 1/tau} q^{2 - d/tau})`: the smallest prefactor making `lower` hold.
    pub required_prefactor: f64,
}

/// Checks the gap form of the Rayleigh-quotient equivalence, with `R = <A a, a>/|a|^2`
/// and `R_b = <k(X + b, X)_+ a, a>/|a|^2`.
pub fn verify_sharp_equivalence(
    spec: &KernelSpec,
    points: &PointSet,
    shift: &[f64],
    alpha: &[f64],
    prefactor: f64,
) -> Result<SharpEquivalenceReport> {
    let tau = spec.smoothness()?;
    if !(tau > 1.0) {
        return Err(Error::Hypothesis(format!("gap bound needs tau > 1, got {tau}")));
    }
    let d = spec.dim() as f64;
    let q = points.separation_distance()?;
    let a = gram(spec, points)?.data;
    let b = symmetric_part(&shifted_gram(spec, points, shift)?.data)?;
    let r = spectral::rayleigh(&a, alpha)?;
    let r_b = spectral::rayleigh(&b, alpha)?;
    let gap = r.powf(1.0 - 1.0 / tau) * q.powf(2.0 - d / tau);
    let tol = 1e-12 * r.abs();
    let mut lower = BoundCheck::new("sharp-equivalence-lower", r - prefactor * gap, r_b, tol);
    let mut upper = BoundCheck::new("sharp-equivalence-upper", r_b, r, tol);
    if shift.iter().all(|s| *s == 0.0) {
        lower = lower.with_reliability(Reliability::Degenerate);
        upper = upper.with_reliability(Reliability::Degenerate);
    }
    Ok(SharpEquivalenceReport {
        lower,
        upper,
        required_prefactor: (r - r_b) / gap,
    })
}

/// Both sides of the Fourier identity for the symmetric part of a shifted kernel matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub check: BoundCheck,
    /// `(2 pi)^{1/2} <k(X + b, X)_+ a, a>`
    pub matrix_side: f64,
    /// `I_1 - 2 I_2`
    pub fourier_side: f64,
    pub fourier: FourierFormResult,
}

fn scalar_shift(points: &PointSet, shift: f64) -> Result<()> {
    if points.dim() != 1 {
        return Err(Error::Unsupported(format!(
            "Fourier verifiers are one-dimensional, got d = {}",
            points.dim()
        )));
    }
    if !shift.is_finite() {
        return Err(Error::Domain(format!("shift must be finite, got {shift}")));
    }
    Ok(())
}

/// `(2 pi)^{1/2} <k(X+b, X)_+ a, a> = int phi_hat |S|^2 - 2 int phi_hat |S|^2 sin^2(w b / 2)`,
/// with `S(w) = sum_j a_j e^{i w x_j}`. The residual must stay within three certified tails
/// plus `1e-8` relative.
pub fn verify_identity_eq15(
    density: &SpectralDensity,
    points: &PointSet,
    alpha: &[f64],
    shift: f64,
    config: &QuadratureConfig,
) -> Result<IdentityReport> {
    scalar_shift(points, shift)?;
    let spec = density.kernel();
    let b = symmetric_part(&shifted_gram(spec, points, &[shift])?.data)?;
    let matrix_side = b.quadratic_form(alpha)? / fourier_normalization_1d();
    let fourier = Quadrature::new(*config)?.fourier_quadratic_form(density, points, alpha, shift)?;
    let fourier_side = fourier.full_integral - 2.0 * fourier.damped_integral;
    let residual = (matrix_side - fourier_side).abs();
    let allowed = 3.0 * fourier.tail_bound + 1e-8 * matrix_side.abs();
    Ok(IdentityReport {
        check: BoundCheck::new("fourier-identity", residual, allowed, 0.0),
        matrix_side,
        fourier_side,
        fourier,
    })
}

/// The damped-integral estimates, in the form weighted by the spectral density.
#[derive(Debug, Clone, PartialEq)]
pub struct Sin2Report {
    /// `(2 pi)^{-1/2} (I_2 + tail) <= 2 eps a^T A a`
    pub basic: BoundCheck,
    /// `... <= 2 eps c_min^{1/tau} R^{1 - 1/tau} q^{2 - d/tau} |a|^2`, only for `tau > 1`.
    pub improved: Option<BoundCheck>,
}

/// Checks the `sin^2` localisation estimate for `|b| <= eps^{1/2} q_X`.
///
/// The left side is certified: it adds the truncation tail, so a pass is a proof for this
/// instance. The improved form is evaluated when `tau > 1` and `c_min` is given.
pub fn verify_sin2_bound(
    density: &SpectralDensity,
    points: &PointSet,
    alpha: &[f64],
    shift: f64,
    eps: f64,
    c_min: Option<f64>,
    config: &QuadratureConfig,
) -> Result<Sin2Report> {
    scalar_shift(points, shift)?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Hypothesis(format!("need 0 < eps < 1, got {eps}")));
    }
    let q = points.separation_distance()?;
    if shift.abs() > eps.sqrt() * q * (1.0 + 1e-12) {
        return Err(Error::Hypothesis(format!(
            "shift {shift} exceeds eps^(1/2) q_X = {}",
            eps.sqrt() * q
        )));
    }
    let spec = density.kernel();
    let a = gram(spec, points)?.data;
    let form = a.quadratic_form(alpha)?;
    let fourier = Quadrature::new(*config)?.fourier_quadratic_form(density, points, alpha, shift)?;
    let lhs = (fourier.damped_integral + fourier.tail_bound) * fourier_normalization_1d();
    let mut basic = BoundCheck::new("sin2-basic", lhs, 2.0 * eps * form, 0.0);
    if shift == 0.0 {
        basic = basic.with_reliability(Reliability::Degenerate);
    }

    let tau = spec.smoothness()?;
    let improved = match c_min {
        Some(c) if tau > 1.0 => {
            let nn = dot(alpha, alpha);
            if nn == 0.0 {
                return Err(Error::ZeroVector);
            }
            let d = spec.dim() as f64;
            let rhs = 2.0 * eps * c.powf(1.0 / tau) * (form / nn).powf(1.0 - 1.0 / tau)
                * q.powf(2.0 - d / tau)
                * nn;
            let check = BoundCheck::new("sin2-improved", lhs, rhs, 0.0);
            Some(if shift == 0.0 {
                check.with_reliability(Reliability::Degenerate)
            } else {
                check
            })
        }
        _ => None,
    };
    Ok(Sin2Report { basic, improved })
}

/// Which `q` the convolutional lower bound uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QMode {
    /// `min(dist(X, boundary), q_X)`, or `q_X` when points touch the boundary.
    BoundaryAware,
    SeparationOnly,
}

pub fn effective_q(points: &PointSet, mode: QMode) -> Result<f64> {
    let q = points.separation_distance()?;
    Ok(match mode {
        QMode::SeparationOnly => q,
        QMode::BoundaryAware => {
            let bd = points.boundary_distance()?;
            if bd > 0.0 {
                bd.min(q)
            } else {
                q
            }
        }
    })
}

/// The inequalities behind the convolutional lower bound, evaluated for one `a` and `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvChainReport {
    pub q: f64,
    /// `a^T k* a >= |B_q|/2 |k(X + b, X) a|^2`
    pub discretization: BoundCheck,
    /// `|k(X + b, X) a| |a| >= |<k(X + b, X) a, a>|`
    pub symmetric_part: BoundCheck,
    /// `a^T k* a / |a|^2 >= c q^d (a^T k a / |a|^2)^2`
    pub end_to_end: BoundCheck,
}

pub fn verify_thm41_chain(
    spec: &KernelSpec,
    points: &PointSet,
    alpha: &[f64],
    shift: &[f64],
    c: f64,
    mode: QMode,
    config: &QuadratureConfig,
) -> Result<ConvChainReport> {
    let q = effective_q(points, mode)?;
    if norm2(shift) > q * (1.0 + 1e-12) {
        return Err(Error::Hypothesis(format!("shift norm {} exceeds q = {q}", norm2(shift))));
    }
    let nn = dot(alpha, alpha);
    if nn == 0.0 {
        return Err(Error::ZeroVector);
    }
    let d = spec.dim();
    let kstar = crate::assembly::conv_gram(spec, points, config)?.data;
    let a = gram(spec, points)?.data;
    let b = shifted_gram(spec, points, shift)?.data;

    let conv_form = kstar.quadratic_form(alpha)?;
    let b_alpha = b.matvec(alpha)?;
    let b_norm_sq = dot(&b_alpha, &b_alpha);
    let scale = conv_form.abs().max(f64::MIN_POSITIVE);
    let discretization = BoundCheck::new(
        "conv-discretization",
        0.5 * ball_volume(d, q) * b_norm_sq,
        conv_form,
        1e-12 * scale,
    );
    let sym_form = dot(&b_alpha, alpha);
    let symmetric_part = BoundCheck::new(
        "conv-symmetric-part",
        sym_form.abs(),
        b_norm_sq.sqrt() * nn.sqrt(),
        1e-12 * b_norm_sq.sqrt() * nn.sqrt(),
    );

    let r = a.quadratic_form(alpha)? / nn;
    let r_conv = conv_form / nn;
    let mut end_to_end = BoundCheck::new(
        "conv-end-to-end",
        c * q.powi(d as i32) * r * r,
        r_conv,
        0.0,
    );
    let lambda_max = spectral::lambda_max(&kstar)?;
    if spectral::below_precision_floor(r_conv, kstar.rows(), lambda_max) {
        end_to_end = end_to_end.with_reliability(Reliability::BelowPrecisionFloor);
    }
    Ok(ConvChainReport {
        q,
        discretization,
        symmetric_part,
        end_to_end,
    })
}

/// `value ~ exp(log_constant) q^exponent`, fitted by least squares in log-log space.
#[derive(Debug, Clone, PartialEq)]
pub struct FittedLaw {
    pub exponent: f64,
    pub log_constant: f64,
    pub r_squared: f64,
    pub support: Vec<(f64, f64)>,
}

impl FittedLaw {
    pub fn constant(&self) -> f64 {
        self.log_constant.exp()
    }

    pub fn eval(&self, q: f64) -> f64 {
        (self.log_constant + self.exponent * q.ln()).exp()
    }
}

/// Fits `log v = e log q + log c`. Nonpositive values are dropped; callers drop
/// unreliable samples before calling.
pub fn fit_power_law(samples: &[(f64, f64)]) -> Result<FittedLaw> {
    let support: Vec<(f64, f64)> = samples
        .iter()
        .copied()
        .filter(|(q, v)| *q > 0.0 && *v > 0.0 && q.is_finite() && v.is_finite())
        .collect();
    if support.len() < 3 {
        return Err(Error::InsufficientSamples {
            needed: 3,
            got: support.len(),
        });
    }
    let m = support.len() as f64;
    let xs: Vec<f64> = support.iter().map(|(q, _)| q.ln()).collect();
    let ys: Vec<f64> = support.iter().map(|(_, v)| v.ln()).collect();
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::Domain("power-law fit needs distinct q values".into()));
    }
    let exponent = sxy / sxx;
    let log_constant = my - exponent * mx;
    let sse: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let r = y - (log_constant + exponent * x);
            r * r
        })
        .sum();
    let r_squared = if syy == 0.0 { 1.0 } else { 1.0 - sse / syy };
    Ok(FittedLaw {
        exponent,
        log_constant,
        r_squared,
        support,
    })
}

/// Which side of the data a fitted bound curve must stay on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundSide {
    Lower,
    Upper,
}

/// Tightest `c` with `c q^exponent` below (or above) every sample.
pub fn fit_bound_constant(samples: &[(f64, f64)], exponent: f64, side: BoundSide) -> Result<f64> {
    let ratios = samples
        .iter()
        .filter(|(q, v)| *q > 0.0 && *v > 0.0)
        .map(|(q, v)| v / q.powf(exponent));
    let c = match side {
        BoundSide::Lower => ratios.fold(f64::INFINITY, f64::min),
        BoundSide::Upper => ratios.fold(f64::NEG_INFINITY, f64::max),
    };
    if !c.is_finite() {
        return Err(Error::InsufficientSamples { needed: 1, got: 0 });
    }
    Ok(c)
}

/// Smallest eigenvalue and its reliability, for reports over sample sizes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumSample {
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub reliable: bool,
}

impl SpectrumSample {
    pub fn of(a: &Matrix) -> Result<Self> {
        let ev = spectral::sym_eigenvalues(a)?;
        let (lambda_min, lambda_max) = (ev[0], *ev.last().expect("nonempty"));
        Ok(Self {
            lambda_min,
            lambda_max,
            reliable: !spectral::below_precision_floor(lambda_min, a.rows(), lambda_max),
        })
    }
}

/// Eigenvector of the smallest eigenvalue of `k(X, X)`: the tightest direction for the bounds.
pub fn weakest_direction(spec: &KernelSpec, points: &PointSet) -> Result<Vec<f64>> {
    Ok(sym_eigen(&gram(spec, points)?.data)?.eigenvector(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{equispaced, halton, DomainBox};
    use approx::assert_relative_eq;

    fn spec(f: KernelFamily, d: usize) -> KernelSpec {
        KernelSpec::new(f, d).unwrap()
    }

    #[test]
    fn bound_formulas() {
        let q = 1.0 / 18.0;
        assert_relative_eq!(symmetric_lower_bound(1.0, 1, q, 0.4).unwrap(), 0.4 / 18.0, max_relative = 1e-15);
        assert_relative_eq!(
            symmetric_lower_bound(2.0, 1, q, 0.16).unwrap(),
            0.16 / 18f64.powi(3),
            max_relative = 1e-14
        );
        assert_relative_eq!(conv_lower_bound(1.0, 1, q, 0.24).unwrap(), 4.11522633744856e-5, max_relative = 1e-13);
        assert_relative_eq!(
            conv_lower_bound(2.0, 1, q, 0.0896).unwrap(),
            0.0896 / 18f64.powi(7),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            symmetric_lower_bound(1.0, 1, 2.0 * q, 0.4).unwrap(),
            2.0 * symmetric_lower_bound(1.0, 1, q, 0.4).unwrap(),
            max_relative = 1e-15
        );
        assert_relative_eq!(cond_upper_bound(1.0, q, 1.0).unwrap(), 104976.0, max_relative = 1e-12);
        assert_relative_eq!(
            cond_upper_bound(1.0, q / 2.0, 1.0).unwrap(),
            16.0 * 104976.0,
            max_relative = 1e-12
        );
        assert!(matches!(symmetric_lower_bound(0.5, 1, q, 0.4), Err(Error::Hypothesis(_))));
        assert!(conv_lower_bound(1.0, 1, 0.0, 0.4).is_err());
        assert_relative_eq!(
            conv_lower_bound_from_gram(1, q, 0.24, 0.1).unwrap(),
            0.24 * q * 0.01,
            max_relative = 1e-15
        );
    }

    #[test]
    fn ball_volumes() {
        assert_eq!(ball_volume(1, 0.3), 0.6);
        assert_relative_eq!(ball_volume(2, 1.0), std::f64::consts::PI, max_relative = 1e-15);
        assert_relative_eq!(ball_volume(3, 1.0), 4.0 * std::f64::consts::PI / 3.0, max_relative = 1e-15);
    }

    #[test]
    fn check_semantics() {
        let c = BoundCheck::new("x", 1.0, 1.0, 0.0);
        assert!(c.satisfied);
        let c = BoundCheck::new("x", 1.0, 1.0, -1e-12);
        assert!(!c.satisfied && c.is_failure());
        assert!(!c.with_reliability(Reliability::Degenerate).is_failure());
        assert_eq!(
            BoundCheck::new("x", 0.5, 1.0, 0.0).to_csv_row(),
            "x,0.5,1,0.5,true,reliable"
        );
    }

    #[test]
    fn equivalence_zero_shift_is_identity() {
        let x = halton(20, 2, 0).unwrap();
        let r = verify_equivalence(&spec(KernelFamily::MaternLinear, 2), &x, &[0.0, 0.0]).unwrap();
        assert!(r.lower.satisfied);
        assert_eq!(r.upper.reliability, Reliability::Degenerate);
        assert!(!r.upper.is_failure());
        for v in &r.spectrum {
            assert!((v - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn equivalence_small_shift_2d() {
        let x = halton(50, 2, 0).unwrap();
        let q = x.separation_distance().unwrap();
        let b = vec![0.1 * q / 2f64.sqrt(); 2];
        let r = verify_equivalence(&spec(KernelFamily::MaternLinear, 2), &x, &b).unwrap();
        assert!(r.lower.satisfied && r.upper.satisfied, "{:?} {:?}", r.lower, r.upper);
    }

    #[test]
    fn sharp_equivalence_top_eigenvector() {
        let k = spec(KernelFamily::MaternLinear, 1);
        let x = equispaced(15, 0.0, 1.0, true).unwrap();
        let q = x.separation_distance().unwrap();
        let eig = sym_eigen(&gram(&k, &x).unwrap().data).unwrap();
        let top = eig.eigenvector(14);
        let r = verify_sharp_equivalence(&k, &x, &[0.1 * q], &top, 1.0).unwrap();
        assert!(r.lower.satisfied && r.upper.satisfied);
        assert!(r.required_prefactor < 1.0);
        let basic = spec(KernelFamily::MaternBasic, 1);
        assert!(matches!(
            verify_sharp_equivalence(&basic, &x, &[0.1 * q], &top, 1.0),
            Err(Error::Hypothesis(_))
        ));
        let zero = verify_sharp_equivalence(&k, &x, &[0.0], &top, 1.0).unwrap();
        assert_eq!(zero.upper.reliability, Reliability::Degenerate);
    }

    #[test]
    fn identity_holds_on_small_example() {
        let k = spec(KernelFamily::MaternBasic, 1);
        let x = PointSet::new(vec![vec![0.2], vec![0.5], vec![0.9]], DomainBox::unit(1)).unwrap();
        let r = verify_identity_eq15(
            &k.spectral_density_1d().unwrap(),
            &x,
            &[1.0, -2.0, 1.0],
            0.01,
            &QuadratureConfig::default(),
        )
        .unwrap();
        assert!(r.check.satisfied, "{:?}", r);
    }

    #[test]
    fn identity_zero_shift_has_no_damped_part() {
        let k = spec(KernelFamily::MaternLinear, 1);
        let x = equispaced(5, 0.0, 1.0, true).unwrap();
        let r = verify_identity_eq15(
            &k.spectral_density_1d().unwrap(),
            &x,
            &[1.0, 0.5, -1.0, 0.25, 2.0],
            0.0,
            &QuadratureConfig::default(),
        )
        .unwrap();
        assert_eq!(r.fourier.damped_integral, 0.0);
        assert!(r.check.satisfied);
    }

    #[test]
    fn sin2_bound_examples() {
        let x = equispaced(20, 0.0, 1.0, true).unwrap();
        let q = x.separation_distance().unwrap();
        let alpha: Vec<f64> = (0..20).map(|i| ((i * 7 % 5) as f64) - 2.0).collect();
        let cfg = QuadratureConfig::default();
        for family in [KernelFamily::MaternBasic, KernelFamily::MaternLinear] {
            let k = spec(family, 1);
            let dens = k.spectral_density_1d().unwrap();
            let c_min = BoundConstants::for_family(family).map(|c| c.c_min);
            let zero = verify_sin2_bound(&dens, &x, &alpha, 0.0, 0.25, c_min, &cfg).unwrap();
            assert_eq!(zero.basic.reliability, Reliability::Degenerate);
            let mut last_slack = f64::INFINITY;
            for kappa in [1.0, 0.5, 0.1] {
                let b = 0.5 * q * kappa;
                let r = verify_sin2_bound(&dens, &x, &alpha, b, 0.25, c_min, &cfg).unwrap();
                assert!(r.basic.satisfied, "{family:?} {kappa}: {:?}", r.basic);
                assert!(r.basic.slack >= last_slack || kappa == 1.0);
                last_slack = r.basic.slack;
                if let Some(imp) = r.improved {
                    assert!(imp.satisfied, "{family:?} {kappa}: {imp:?}");
                }
            }
        }
        let dens = spec(KernelFamily::MaternBasic, 1).spectral_density_1d().unwrap();
        assert!(matches!(
            verify_sin2_bound(&dens, &x, &alpha, q, 0.25, None, &cfg),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn conv_chain_weakest_direction() {
        let cfg = QuadratureConfig::default();
        for (family, c) in [(KernelFamily::MaternBasic, 0.24), (KernelFamily::MaternLinear, 0.0896)] {
            let k = spec(family, 1);
            let x = equispaced(10, 0.0, 1.0, true).unwrap();
            let alpha = weakest_direction(&k, &x).unwrap();
            let r = verify_thm41_chain(&k, &x, &alpha, &[0.0], c, QMode::BoundaryAware, &cfg).unwrap();
            assert_relative_eq!(r.q, 1.0 / 18.0, max_relative = 1e-14);
            assert!(r.symmetric_part.satisfied);
            assert!(r.end_to_end.satisfied, "{:?}", r.end_to_end);
        }
    }

    #[test]
    fn q_modes() {
        let x = equispaced(5, 0.1, 0.9, true).unwrap();
        let inner = PointSet::new(x.to_vecs(), DomainBox::unit(1)).unwrap();
        assert_relative_eq!(effective_q(&inner, QMode::SeparationOnly).unwrap(), 0.1, max_relative = 1e-14);
        assert_relative_eq!(effective_q(&inner, QMode::BoundaryAware).unwrap(), 0.1, max_relative = 1e-14);
        let y = PointSet::new(vec![vec![0.05], vec![0.5]], DomainBox::unit(1)).unwrap();
        assert_relative_eq!(effective_q(&y, QMode::BoundaryAware).unwrap(), 0.05, max_relative = 1e-14);
        assert_relative_eq!(effective_q(&y, QMode::SeparationOnly).unwrap(), 0.225, max_relative = 1e-14);
    }

    #[test]
    fn power_law_fit_exact() {
        let s: Vec<(f64, f64)> = [0.1, 0.05, 0.02, 0.01].iter().map(|q| (*q, 0.4 * q)).collect();
        let f = fit_power_law(&s).unwrap();
        assert!((f.exponent - 1.0).abs() < 1e-12);
        assert!((f.constant() - 0.4).abs() < 1e-12);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
        assert!((f.eval(0.5) - 0.2).abs() < 1e-12);
        let s = vec![(0.1, 1.0), (0.2, -1.0), (0.3, 0.0), (0.4, 2.0)];
        assert!(matches!(fit_power_law(&s), Err(Error::InsufficientSamples { got: 2, .. })));
    }

    #[test]
    fn bound_constant_fit() {
        let s = vec![(0.1, 0.05), (0.2, 0.09), (0.4, 0.2)];
        assert_relative_eq!(fit_bound_constant(&s, 1.0, BoundSide::Lower).unwrap(), 0.45, max_relative = 1e-14);
        assert_relative_eq!(fit_bound_constant(&s, 1.0, BoundSide::Upper).unwrap(), 0.5, max_relative = 1e-14);
    }
}
