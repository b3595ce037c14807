//! Curvature invariants of spacelike surfaces in the four-dimensional
//! Minkowski space `R^4_1`, with builders, Chen classification and profile
//! constructors for rotational surfaces of hyperbolic and elliptic type.
//!
//! The crate is organized bottom-up:
//!
//! - [`minkowski`]: indefinite linear algebra over 4-vectors (signature
//!   `+,+,+,-`), causal classification and orthonormal normal frames.
//! - [`numeric`]: local polynomial differentiation, high-order stencils,
//!   adaptive Simpson quadrature and a fixed-step RK4 integrator.
//! - [`curve`]: unit-speed profile curves `(x1, x2, r)` in a 3-dimensional
//!   subspace, their Frenet apparatus and the projection curvature `kappa1`.
//! - [`surface`]: the general pointwise pipeline for an arbitrary spacelike
//!   patch — fundamental forms, the invariants `k` and `varkappa`, Gauss
//!   curvature, mean curvature vector, `lambda` and the allied mean
//!   curvature vector.
//! - [`rotational`]: rotational-surface builders, closed-form invariants,
//!   derivative-formula residuals and the Chen classification.
//! - [`construct`]: profile constructors realizing each classification case
//!   by a pointwise quadratic solve plus RK4 angle integration.

// Negated comparisons like `!(r > 0.0)` are deliberate: they reject NaN
// along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod construct;
pub mod curve;
pub mod minkowski;
pub mod numeric;
pub mod rotational;
pub mod surface;

pub use curve::{Ambient, CurveJet, FrenetApparatus, ProfileCurve};
pub use minkowski::{CausalClass, NormalFrame, Vec4};
pub use rotational::{ChenClassification, ChenVerdict, RotationalSurface};
pub use surface::{InvariantSet, PointClass, SurfacePatch};
