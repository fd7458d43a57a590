//! Stability of kernel matrices: Matérn kernels, Gram and convolutional Gram matrices,
//! their extreme eigenvalues, and numerical checks of the lower bounds governing them.

pub mod analysis;
pub mod assembly;
pub mod error;
pub mod geometry;
pub mod io;
pub mod kernels;
pub mod linalg;
pub mod quadrature;
pub mod reference;
pub mod rng;
pub mod spectral;

pub use analysis::{BoundCheck, BoundConstants, FittedLaw, QMode, Reliability};
pub use assembly::{conv_gram, gram, shifted_gram, GramKind, GramMatrix};
pub use error::{Error, Result};
pub use geometry::{equispaced, halton, DomainBox, PointSet};
pub use kernels::{KernelFamily, KernelSpec, SpectralDensity};
pub use linalg::Matrix;
pub use quadrature::QuadratureConfig;
pub use rng::SplitMix64;
pub use spectral::EigenDecomposition;
