//! Translation-invariant radial kernels `k(x, z) = phi(|x - z| / l)`.
//!
//! The Matérn members use half-integer smoothness `nu = 1/2, 3/2, 5/2` in the unnormalized
//! form `exp(-r)`, `(1 + r) exp(-r)` and `(3 + 3r + r^2) exp(-r)`. Their Fourier transforms
//! decay like `(1 + |w|^2)^(-tau)` with `tau = nu + d/2`.

use std::f64::consts::{FRAC_2_PI, PI};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelFamily {
    MaternBasic,
    MaternLinear,
    MaternQuadratic,
    Gaussian,
}

impl KernelFamily {
    pub const ALL: [KernelFamily; 4] = [
        KernelFamily::MaternBasic,
        KernelFamily::MaternLinear,
        KernelFamily::MaternQuadratic,
        KernelFamily::Gaussian,
    ];

    pub fn name(self) -> &'static str {
        match self {
            KernelFamily::MaternBasic => "matern-basic",
            KernelFamily::MaternLinear => "matern-linear",
            KernelFamily::MaternQuadratic => "matern-quadratic",
            KernelFamily::Gaussian => "gaussian",
        }
    }

    pub fn is_matern(self) -> bool {
        !matches!(self, KernelFamily::Gaussian)
    }

    /// Matérn order `nu`, `None` for the Gaussian.
    fn matern_order(self) -> Option<f64> {
        match self {
            KernelFamily::MaternBasic => Some(0.5),
            KernelFamily::MaternLinear => Some(1.5),
            KernelFamily::MaternQuadratic => Some(2.5),
            KernelFamily::Gaussian => None,
        }
    }

    /// Radial profile at the already scaled radius `r >= 0`.
    #[inline]
    pub fn profile(self, r: f64) -> f64 {
        match self {
            KernelFamily::MaternBasic => (-r).exp(),
            KernelFamily::MaternLinear => (1.0 + r) * (-r).exp(),
            KernelFamily::MaternQuadratic => (3.0 + r * (3.0 + r)) * (-r).exp(),
            KernelFamily::Gaussian => (-r * r).exp(),
        }
    }
}

impl fmt::Display for KernelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KernelFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        KernelFamily::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown kernel family '{s}'")))
    }
}

/// A kernel family together with its dimension and length scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    family: KernelFamily,
    dim: usize,
    length_scale: f64,
}

impl KernelSpec {
    pub fn new(family: KernelFamily, dim: usize) -> Result<Self> {
        Self::with_length_scale(family, dim, 1.0)
    }

    pub fn with_length_scale(family: KernelFamily, dim: usize, length_scale: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Domain("kernel dimension must be at least 1".into()));
        }
        if !(length_scale > 0.0 && length_scale.is_finite()) {
            return Err(Error::Domain(format!(
                "length scale must be positive and finite, got {length_scale}"
            )));
        }
        Ok(Self {
            family,
            dim,
            length_scale,
        })
    }

    pub fn family(&self) -> KernelFamily {
        self.family
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn length_scale(&self) -> f64 {
        self.length_scale
    }

    /// Radial profile `phi(r / l)`.
    pub fn phi(&self, r: f64) -> Result<f64> {
        if !r.is_finite() {
            return Err(Error::Domain(format!("radius must be finite, got {r}")));
        }
        if r < 0.0 {
            return Err(Error::Domain(format!("radius must be nonnegative, got {r}")));
        }
        Ok(self.phi_unchecked(r))
    }

    #[inline]
    pub(crate) fn phi_unchecked(&self, r: f64) -> f64 {
        self.family.profile(r / self.length_scale)
    }

    /// `k(x, z) = phi(|x - z|_2)`.
    pub fn eval(&self, x: &[f64], z: &[f64]) -> Result<f64> {
        self.check_dim(x.len())?;
        self.check_dim(z.len())?;
        Ok(self.phi_unchecked(distance(x, z)))
    }

    /// Kernel value at `x + shift` against `z`, without forming the shifted point.
    #[inline]
    pub(crate) fn eval_shifted_unchecked(&self, x: &[f64], shift: &[f64], z: &[f64]) -> f64 {
        let r2: f64 = x
            .iter()
            .zip(shift)
            .zip(z)
            .map(|((a, s), c)| {
                let d = a + s - c;
                d * d
            })
            .sum();
        self.phi_unchecked(r2.sqrt())
    }

    pub(crate) fn check_dim(&self, got: usize) -> Result<()> {
        if got == self.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                got,
            })
        }
    }

    /// Fourier decay exponent `tau` with `phi_hat(w) ~ (1 + |w|^2)^(-tau)`.
    ///
    /// In one dimension this is 1, 2 and 3 for the basic, linear and quadratic Matérn
    /// kernels. The Gaussian decays faster than any power and is rejected.
    pub fn smoothness(&self) -> Result<f64> {
        let nu = self
            .family
            .matern_order()
            .ok_or(Error::InfiniteSmoothness)?;
        Ok(nu + self.dim as f64 / 2.0)
    }

    /// Closed-form one-dimensional spectral density under the `(2 pi)^(-1/2)` convention.
    pub fn spectral_density_1d(&self) -> Result<SpectralDensity> {
        if self.dim != 1 {
            return Err(Error::Unsupported(format!(
                "closed-form spectral densities exist only for dim = 1 (got {})",
                self.dim
            )));
        }
        let (coefficient, exponent) = match self.family {
            KernelFamily::MaternBasic => (FRAC_2_PI.sqrt(), 1),
            KernelFamily::MaternLinear => (2.0 * FRAC_2_PI.sqrt(), 2),
            KernelFamily::MaternQuadratic => (8.0 * FRAC_2_PI.sqrt(), 3),
            KernelFamily::Gaussian => {
                return Err(Error::Unsupported(
                    "no algebraically decaying spectral density for the Gaussian kernel".into(),
                ))
            }
        };
        Ok(SpectralDensity {
            kernel: *self,
            coefficient,
            exponent,
        })
    }
}

/// `phi_hat(w) = l * c / (1 + (l w)^2)^p` for a one-dimensional Matérn kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralDensity {
    kernel: KernelSpec,
    coefficient: f64,
    exponent: i32,
}

impl SpectralDensity {
    pub fn kernel(&self) -> &KernelSpec {
        &self.kernel
    }

    /// Decay exponent `p` of `(1 + w^2)^(-p)`.
    pub fn decay_exponent(&self) -> i32 {
        self.exponent
    }

    /// Leading constant `c` at unit length scale.
    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    #[inline]
    pub fn eval(&self, omega: f64) -> f64 {
        let l = self.kernel.length_scale;
        let s = l * omega;
        l * self.coefficient / (1.0 + s * s).powi(self.exponent)
    }

    /// Upper bound on `int_{|w| > cutoff} phi_hat(w) dw` from the envelope
    /// `phi_hat(w) <= l c (l |w|)^(-2p)`.
    pub fn tail_mass(&self, cutoff: f64) -> f64 {
        let l = self.kernel.length_scale;
        let p = f64::from(self.exponent);
        let two_p = 2.0 * p;
        2.0 * self.coefficient * l.powf(1.0 - two_p) * cutoff.powf(1.0 - two_p) / (two_p - 1.0)
    }

    /// Exact value of `(2 pi)^(-1/2) int phi_hat`, which equals `phi(0)`.
    pub fn total_mass_normalized(&self) -> f64 {
        self.kernel.phi_unchecked(0.0)
    }
}

/// `(2 pi)^(-1/2)`, the normalisation of the one-dimensional Fourier transform.
pub fn fourier_normalization_1d() -> f64 {
    (2.0 * PI).sqrt().recip()
}

#[inline]
pub fn distance(x: &[f64], z: &[f64]) -> f64 {
    x.iter()
        .zip(z)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}
