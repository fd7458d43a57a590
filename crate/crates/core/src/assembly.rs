//! Kernel matrices: `k(X, X)`, the shifted `k(X + b, X)`, and the convolutional `k*(X, X)`.

use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::kernels::KernelSpec;
use crate::linalg::{cholesky_solve, Matrix};
use crate::quadrature::{Quadrature, QuadratureConfig};
use crate::spectral;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GramKind {
    Symmetric,
    Shifted,
    SymmetricPart,
    ConvGram,
}

/// A kernel matrix together with what it was assembled from.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    pub data: Matrix,
    pub kind: GramKind,
    pub kernel: KernelSpec,
    pub points: PointSet,
    pub shift: Option<Vec<f64>>,
    pub quadrature: Option<QuadratureConfig>,
}

impl GramMatrix {
    pub fn n(&self) -> usize {
        self.data.rows()
    }

    /// `(B + B^T) / 2` of this matrix, keeping the metadata.
    pub fn symmetric_part(&self) -> GramMatrix {
        GramMatrix {
            data: symmetric_part(&self.data).expect("kernel matrices are square"),
            kind: GramKind::SymmetricPart,
            ..self.clone()
        }
    }
}

fn check_points(spec: &KernelSpec, points: &PointSet) -> Result<()> {
    spec.check_dim(points.dim())?;
    if points.is_empty() {
        return Err(Error::Domain("kernel matrix of an empty point set".into()));
    }
    Ok(())
}

/// `A_X = (k(x_i, x_j))`: upper triangle evaluated once, lower triangle mirrored.
pub fn gram(spec: &KernelSpec, points: &PointSet) -> Result<GramMatrix> {
    check_points(spec, points)?;
    let data = Matrix::symmetric_from_fn(points.len(), |i, j| {
        if i == j {
            spec.phi_unchecked(0.0)
        } else {
            spec.phi_unchecked(crate::kernels::distance(points.point(i), points.point(j)))
        }
    });
    Ok(GramMatrix {
        data,
        kind: GramKind::Symmetric,
        kernel: *spec,
        points: points.clone(),
        shift: None,
        quadrature: None,
    })
}

/// `k(X + b, X) = (k(x_i + b, x_j))`, generally unsymmetric.
pub fn shifted_gram(spec: &KernelSpec, points: &PointSet, shift: &[f64]) -> Result<GramMatrix> {
    check_points(spec, points)?;
    spec.check_dim(shift.len())?;
    let n = points.len();
    let data = if shift.iter().all(|s| *s == 0.0) {
        gram(spec, points)?.data
    } else {
        Matrix::from_fn(n, n, |i, j| {
            spec.eval_shifted_unchecked(points.point(i), shift, points.point(j))
        })
    };
    Ok(GramMatrix {
        data,
        kind: GramKind::Shifted,
        kernel: *spec,
        points: points.clone(),
        shift: Some(shift.to_vec()),
        quadrature: None,
    })
}

/// `A_+ = (A + A^T) / 2`.
pub fn symmetric_part(a: &Matrix) -> Result<Matrix> {
    a.ensure_square()?;
    Ok(Matrix::symmetric_from_fn(a.rows(), |i, j| {
        if i == j {
            a[(i, i)]
        } else {
            0.5 * (a[(i, j)] + a[(j, i)])
        }
    }))
}

/// `A_- = (A - A^T) / 2`.
pub fn antisymmetric_part(a: &Matrix) -> Result<Matrix> {
    a.ensure_square()?;
    Ok(Matrix::from_fn(a.rows(), a.cols(), |i, j| {
        0.5 * (a[(i, j)] - a[(j, i)])
    }))
}

/// `k*(X, X)` with `k*(x, z) = int_a^b k(x, y) k(y, z) dy` on the 1-D domain interval.
///
/// Entries `(i, j)` and `(j, i)` are integrated separately and averaged. Before assembly
/// the diagonal entry with the widest kink-free pieces is checked against a run with twice
/// the panel density; a relative change above `target_rel_tol` is reported as an error.
pub fn conv_gram(spec: &KernelSpec, points: &PointSet, config: &QuadratureConfig) -> Result<GramMatrix> {
    check_points(spec, points)?;
    let xs = points.coords_1d()?;
    let (a, b) = (points.domain().lower()[0], points.domain().upper()[0]);
    let quad = Quadrature::new(*config)?;

    let probe = xs[0];
    let coarse = quad.conv_value(spec, probe, probe, a, b)?;
    let fine = Quadrature::new(config.refined())?.conv_value(spec, probe, probe, a, b)?;
    let achieved = ((coarse - fine) / fine).abs();
    if achieved > config.target_rel_tol {
        return Err(Error::Quadrature {
            achieved,
            target: config.target_rel_tol,
        });
    }

    let n = xs.len();
    let mut upper = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let v = if i == j {
                quad.conv_value(spec, xs[i], xs[i], a, b)?
            } else {
                let ij = quad.conv_value(spec, xs[i], xs[j], a, b)?;
                let ji = quad.conv_value(spec, xs[j], xs[i], a, b)?;
                0.5 * (ij + ji)
            };
            upper[i * n + j] = v;
        }
    }
    let data = Matrix::symmetric_from_fn(n, |i, j| upper[i * n + j]);
    Ok(GramMatrix {
        data,
        kind: GramKind::ConvGram,
        kernel: *spec,
        points: points.clone(),
        shift: None,
        quadrature: Some(*config),
    })
}

/// Coefficients of the kernel interpolant: solves `A_X alpha = f` by Cholesky.
///
/// A Cholesky breakdown is reported as [`Error::NumericallySingular`] with the spectrum's
/// extremes; the system is never regularised.
pub fn interpolate(spec: &KernelSpec, points: &PointSet, values: &[f64]) -> Result<Vec<f64>> {
    if values.len() != points.len() {
        return Err(Error::DimensionMismatch {
            expected: points.len(),
            got: values.len(),
        });
    }
    let a = gram(spec, points)?.data;
    match a.cholesky() {
        Ok(l) => cholesky_solve(&l, values),
        Err(Error::Indefinite(_)) => {
            let spectrum = spectral::sym_eigenvalues(&a)?;
            Err(Error::NumericallySingular {
                lambda_min: spectrum[0],
                lambda_max: *spectrum.last().expect("nonempty"),
            })
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{equispaced, halton, DomainBox};
    use crate::kernels::KernelFamily;
    use crate::linalg::norm2;
    use approx::assert_relative_eq;

    fn basic() -> KernelSpec {
        KernelSpec::new(KernelFamily::MaternBasic, 1).unwrap()
    }

    fn pts(xs: &[f64]) -> PointSet {
        PointSet::new(xs.iter().map(|x| vec![*x]).collect(), DomainBox::unit(1)).unwrap()
    }

    #[test]
    fn gram_small_examples() {
        let g = gram(&basic(), &pts(&[0.0])).unwrap();
        assert_eq!(g.data.as_slice(), &[1.0]);
        let g = gram(&basic(), &pts(&[0.0, 1.0])).unwrap();
        let e = (-1.0f64).exp();
        assert_eq!(g.data.as_slice(), &[1.0, e, e, 1.0]);
        assert!(g.data.is_exactly_symmetric());
        assert_eq!(g.kind, GramKind::Symmetric);
    }

    #[test]
    fn gram_dimension_mismatch() {
        let k2 = KernelSpec::new(KernelFamily::MaternBasic, 2).unwrap();
        assert!(gram(&k2, &pts(&[0.0, 1.0])).is_err());
    }

    #[test]
    fn shifted_gram_examples() {
        let x = pts(&[0.0, 1.0]);
        assert_eq!(shifted_gram(&basic(), &x, &[0.0]).unwrap().data, gram(&basic(), &x).unwrap().data);
        let s = shifted_gram(&basic(), &x, &[0.1]).unwrap().data;
        let want = [(-0.1f64).exp(), (-0.9f64).exp(), (-1.1f64).exp(), (-0.1f64).exp()];
        for (g, w) in s.as_slice().iter().zip(want) {
            assert_relative_eq!(*g, w, max_relative = 1e-15);
        }
        assert!(shifted_gram(&basic(), &x, &[0.1, 0.0]).is_err());
    }

    #[test]
    fn split_parts() {
        let sym = Matrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 3.0]]).unwrap();
        assert_eq!(symmetric_part(&sym).unwrap(), sym);
        assert_eq!(antisymmetric_part(&sym).unwrap().max_abs(), 0.0);
        let a = Matrix::from_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert_eq!(symmetric_part(&a).unwrap().as_slice(), &[0.0, 0.5, 0.5, 0.0]);
        assert_eq!(antisymmetric_part(&a).unwrap().as_slice(), &[0.0, 0.5, -0.5, 0.0]);
        assert!(symmetric_part(&Matrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn conv_gram_single_midpoint() {
        let g = conv_gram(&basic(), &pts(&[0.5]), &QuadratureConfig::default()).unwrap();
        assert_relative_eq!(g.data[(0, 0)], 1.0 - (-1.0f64).exp(), max_relative = 1e-14);
    }

    #[test]
    fn conv_gram_is_symmetric_and_matches_closed_form() {
        let x = equispaced(12, 0.0, 1.0, true).unwrap();
        let g = conv_gram(&basic(), &x, &QuadratureConfig::default()).unwrap();
        assert!(g.data.is_exactly_symmetric());
        for i in 0..12 {
            for j in 0..12 {
                let xi = x.point(i)[0];
                let xj = x.point(j)[0];
                let exact = crate::quadrature::closed_form_conv_exp(xi, xj, 0.0, 1.0);
                assert!((g.data[(i, j)] - exact).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn conv_gram_requires_1d() {
        let k2 = KernelSpec::new(KernelFamily::MaternBasic, 2).unwrap();
        let h = halton(5, 2, 0).unwrap();
        assert!(conv_gram(&k2, &h, &QuadratureConfig::default()).is_err());
    }

    #[test]
    fn conv_gram_reports_unresolved_quadrature() {
        let coarse = QuadratureConfig {
            order: 2,
            panels_per_unit: 1.0,
            ..Default::default()
        };
        let x = equispaced(4, 0.0, 1.0, true).unwrap();
        let k = KernelSpec::new(KernelFamily::MaternQuadratic, 1).unwrap();
        assert!(matches!(conv_gram(&k, &x, &coarse), Err(Error::Quadrature { .. })));
    }

    #[test]
    fn interpolate_examples() {
        let x = pts(&[0.0, 1.0]);
        let alpha = interpolate(&basic(), &x, &[1.0, 1.0]).unwrap();
        let want = 1.0 / (1.0 + (-1.0f64).exp());
        assert_relative_eq!(alpha[0], want, max_relative = 1e-15);
        assert_relative_eq!(alpha[1], want, max_relative = 1e-15);
        assert_eq!(interpolate(&basic(), &x, &[0.0, 0.0]).unwrap(), vec![0.0, 0.0]);

        let h = equispaced(15, 0.0, 1.0, true).unwrap();
        let a = gram(&basic(), &h).unwrap().data;
        for j in [0, 7, 14] {
            let alpha = interpolate(&basic(), &h, &a.column(j)).unwrap();
            for (i, v) in alpha.iter().enumerate() {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((v - e).abs() < 1e-12);
            }
        }
        let f: Vec<f64> = (0..15).map(|i| (i as f64).sin()).collect();
        let alpha = interpolate(&basic(), &h, &f).unwrap();
        let r: Vec<f64> = a.matvec(&alpha).unwrap().iter().zip(&f).map(|(a, b)| a - b).collect();
        assert!(norm2(&r) <= 1e-10 * norm2(&f));
    }

    #[test]
    fn interpolate_reports_singularity() {
        let x = equispaced(60, 0.0, 1.0, true).unwrap();
        let g = KernelSpec::with_length_scale(KernelFamily::Gaussian, 1, 1.0).unwrap();
        match interpolate(&g, &x, &vec![1.0; 60]) {
            Err(Error::NumericallySingular { lambda_min, .. }) => assert!(lambda_min < 1e-12),
            other => panic!("expected singular report, got {other:?}"),
        }
    }
}
