//! Dense symmetric eigensolver and the quantities derived from it.
//!
//! Eigenpairs come from cyclic Jacobi rotations. An off-diagonal entry `a_pq` is rotated
//! away unless `|a_pq| <= eps * sqrt(|a_pp a_qq|)`. That threshold is relative to the
//! diagonal, so small eigenvalues of kernel matrices keep their relative accuracy; a
//! threshold relative to `|A|_F` would stop too early for `lambda_min / lambda_max ~ 1e-16`.

use crate::error::{Error, Result};
use crate::linalg::{dot, Matrix};

pub const MAX_SWEEPS: usize = 100;

/// `A = Q diag(eigenvalues) Q^T`, eigenvalues ascending, eigenvectors stored as columns.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Matrix,
}

impl EigenDecomposition {
    pub fn lambda_min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn lambda_max(&self) -> f64 {
        *self.eigenvalues.last().expect("nonempty spectrum")
    }

    pub fn eigenvector(&self, k: usize) -> Vec<f64> {
        self.eigenvectors.column(k)
    }

    /// `Q f(Lambda) Q^T`, assembled symmetrically.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> Matrix {
        let n = self.eigenvalues.len();
        let q = &self.eigenvectors;
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        Matrix::symmetric_from_fn(n, |i, j| {
            let mut acc = 0.0;
            for k in 0..n {
                acc += q[(i, k)] * fl[k] * q[(j, k)];
            }
            acc
        })
    }
}

fn check_symmetric(a: &Matrix) -> Result<()> {
    a.ensure_square()?;
    let asym = a.max_asymmetry();
    if asym > 1e-12 * a.max_abs() {
        return Err(Error::NotSymmetric(asym));
    }
    Ok(())
}

struct Jacobi {
    a: Matrix,
    v: Option<Matrix>,
}

impl Jacobi {
    fn run(mut self) -> Result<(Vec<f64>, Option<Matrix>)> {
        let n = self.a.rows();
        for _sweep in 0..MAX_SWEEPS {
            let mut rotated = false;
            for p in 0..n {
                for q in p + 1..n {
                    rotated |= self.rotate(p, q);
                }
            }
            if !rotated {
                return Ok((self.a.diagonal(), self.v));
            }
        }
        Err(Error::NoConvergence(MAX_SWEEPS))
    }

    /// Annihilates `a_pq` unless it is already negligible. Returns whether it rotated.
    fn rotate(&mut self, p: usize, q: usize) -> bool {
        let a = &mut self.a;
        let apq = a[(p, q)];
        let app = a[(p, p)];
        let aqq = a[(q, q)];
        if apq.abs() < f64::MIN_POSITIVE || apq.abs() <= f64::EPSILON * (app * aqq).abs().sqrt() {
            if apq != 0.0 {
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
            }
            return false;
        }
        let theta = (aqq - app) / (2.0 * apq);
        let t = if theta.abs() > 1e150 {
            0.5 / theta
        } else {
            theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
        };
        let c = 1.0 / (t * t + 1.0).sqrt();
        let s = t * c;
        let tau = s / (1.0 + c);
        let n = a.rows();
        a[(p, p)] = app - t * apq;
        a[(q, q)] = aqq + t * apq;
        a[(p, q)] = 0.0;
        a[(q, p)] = 0.0;
        for r in 0..n {
            if r == p || r == q {
                continue;
            }
            let g = a[(r, p)];
            let h = a[(r, q)];
            let new_rp = g - s * (h + g * tau);
            let new_rq = h + s * (g - h * tau);
            a[(r, p)] = new_rp;
            a[(p, r)] = new_rp;
            a[(r, q)] = new_rq;
            a[(q, r)] = new_rq;
        }
        if let Some(v) = self.v.as_mut() {
            for r in 0..n {
                let g = v[(r, p)];
                let h = v[(r, q)];
                v[(r, p)] = g - s * (h + g * tau);
                v[(r, q)] = h + s * (g - h * tau);
            }
        }
        true
    }
}

/// Full eigendecomposition of a symmetric matrix.
///
/// Each eigenvector is normalised so that its largest-magnitude component is positive.
pub fn sym_eigen(a: &Matrix) -> Result<EigenDecomposition> {
    check_symmetric(a)?;
    let n = a.rows();
    let (values, vectors) = Jacobi {
        a: a.clone(),
        v: Some(Matrix::identity(n)),
    }
    .run()?;
    let vectors = vectors.expect("vectors requested");
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let eigenvalues = order.iter().map(|&k| values[k]).collect();
    let mut eigenvectors = Matrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let col = vectors.column(src);
        let pivot = col
            .iter()
            .copied()
            .fold(0.0f64, |best, x| if x.abs() > best.abs() { x } else { best });
        let sign = if pivot < 0.0 { -1.0 } else { 1.0 };
        for (r, x) in col.iter().enumerate() {
            eigenvectors[(r, dst)] = sign * x;
        }
    }
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Ascending eigenvalues only; skips accumulating the rotations.
pub fn sym_eigenvalues(a: &Matrix) -> Result<Vec<f64>> {
    check_symmetric(a)?;
    let (mut values, _) = Jacobi {
        a: a.clone(),
        v: None,
    }
    .run()?;
    values.sort_by(f64::total_cmp);
    Ok(values)
}

pub fn lambda_min(a: &Matrix) -> Result<f64> {
    Ok(sym_eigenvalues(a)?[0])
}

pub fn lambda_max(a: &Matrix) -> Result<f64> {
    Ok(*sym_eigenvalues(a)?.last().expect("nonempty"))
}

/// `lambda_max / lambda_min`, an error carrying `lambda_min` unless it is positive.
pub fn cond(a: &Matrix) -> Result<f64> {
    let values = sym_eigenvalues(a)?;
    cond_from_spectrum(&values)
}

pub fn cond_from_spectrum(ascending: &[f64]) -> Result<f64> {
    let lo = ascending[0];
    let hi = *ascending.last().expect("nonempty");
    if lo <= 0.0 {
        return Err(Error::Indefinite(lo));
    }
    Ok(hi / lo)
}

/// Eigenvalues below this magnitude are roundoff-dominated for an `n x n` matrix.
pub fn precision_floor(n: usize, lambda_max: f64) -> f64 {
    n as f64 * f64::EPSILON * lambda_max.abs()
}

pub fn below_precision_floor(lambda: f64, n: usize, lambda_max: f64) -> bool {
    lambda.abs() < precision_floor(n, lambda_max)
}

/// Smallest admissible `lambda_min / lambda_max` for [`inv_sqrt`].
pub const SPD_RATIO_THRESHOLD: f64 = 1e3 * f64::EPSILON;

/// `A^{-1/2} = Q Lambda^{-1/2} Q^T` for numerically positive definite `A`.
pub fn inv_sqrt(a: &Matrix) -> Result<Matrix> {
    let eig = sym_eigen(a)?;
    inv_sqrt_from(&eig)
}

pub fn inv_sqrt_from(eig: &EigenDecomposition) -> Result<Matrix> {
    let (lo, hi) = (eig.lambda_min(), eig.lambda_max());
    if !(lo > SPD_RATIO_THRESHOLD * hi) {
        return Err(Error::NumericallySingular {
            lambda_min: lo,
            lambda_max: hi,
        });
    }
    Ok(eig.map_spectrum(|l| 1.0 / l.sqrt()))
}

/// `A^{-1/2} B_+ A^{-1/2}` with `B_+ = (B + B^T) / 2`, returned exactly symmetric.
pub fn whiten(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let s = inv_sqrt(a)?;
    whiten_with(&s, b)
}

/// [`whiten`] with a precomputed `A^{-1/2}`.
pub fn whiten_with(inv_sqrt_a: &Matrix, b: &Matrix) -> Result<Matrix> {
    b.ensure_square()?;
    if b.rows() != inv_sqrt_a.rows() {
        return Err(Error::DimensionMismatch {
            expected: inv_sqrt_a.rows(),
            got: b.rows(),
        });
    }
    let b_sym = crate::assembly::symmetric_part(b)?;
    let m = inv_sqrt_a.matmul(&b_sym)?.matmul(inv_sqrt_a)?;
    let n = m.rows();
    Ok(Matrix::symmetric_from_fn(n, |i, j| {
        if i == j {
            m[(i, i)]
        } else {
            0.5 * (m[(i, j)] + m[(j, i)])
        }
    }))
}

/// `<A v, v> / |v|^2`.
pub fn rayleigh(a: &Matrix, v: &[f64]) -> Result<f64> {
    let nn = dot(v, v);
    if nn == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(a.quadratic_form(v)? / nn)
}
