//! Eigenvalue location for A_alpha matrices of trees, the alpha-Shearer
//! caterpillar construction, and the threshold curves that bound the
//! A_alpha limit points of spectral radii.
//!
//! The building blocks:
//!
//! * [`tree`] builds rooted trees (caterpillars, starlike trees, edge lists)
//!   and their A_alpha weightings `alpha * D + (1 - alpha) * A`.
//! * [`diagonalize`] runs the bottom-up congruence diagonalization of
//!   `M + x I` on a weighted tree and reads off inertia, which turns into
//!   eigenvalue counting and a bisection spectral radius.
//! * [`oracle`] is a small dense Jacobi eigensolver used to check the above.
//! * [`alpha`] holds the closed-form analysis in (alpha, lambda): fixed points
//!   of the rational map, the functions F0..F3 and the curves tau0, tau1,
//!   tau1', tau2.
//! * [`shearer`] builds alpha-Shearer sequences and their convergence
//!   diagnostics.
//!
//! ```
//! use alpha_limit::{alpha, tree, diagonalize};
//!
//! let t0 = alpha::tau0(0.0).unwrap();
//! assert!((t0 - (2.0 + 5f64.sqrt()).sqrt()).abs() < 1e-12);
//!
//! let star = tree::make_caterpillar(&tree::CaterpillarSpec::new(vec![4]).unwrap());
//! let m = tree::a_alpha_weights(&star, 0.0).unwrap();
//! let rho = diagonalize::spectral_radius(&m, 1e-12).unwrap();
//! assert!((rho.value - 2.0).abs() < 1e-11);
//! ```

pub mod alpha;
pub mod diagonalize;
mod error;
pub mod oracle;
pub mod roots;
pub mod shearer;
pub mod starlike;
pub mod tree;

pub use alpha::{AlphaLambda, CurveKind, ThresholdCurvePoint};
pub use diagonalize::{DiagResult, SpectralRadiusResult};
pub use error::{Error, Result};
pub use shearer::{ConvergenceReport, ShearerSequence};
pub use tree::{CaterpillarSpec, RootedTree, WeightedTreeMatrix};

/// Header comment written at the top of every exported file.
pub const FORMAT_HEADER: &str = "# alpha-limit v1";
