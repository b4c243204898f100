//! Explicit Lagrangian self-similar solutions and translating solitons for
//! mean curvature flow in `C^n`, with numerical verification of every
//! identity they are claimed to satisfy.
//!
//! The numerical core is generic over [`scalar::Real`] (`f32` or `f64`).
//! The aliases below fix the scalar to `f64`, which is what the CLI and the
//! verification suites use.
//!
//! ```
//! use lmcf_solitons::{frame, symplectic_residual, ChartPoint, Curve, Params};
//!
//! let params: Params = serde_json::from_str(
//!     r#"{"family":"SphereSelfSimilar","n":2,"E":2.0,"a":[1.0,1.0],"alpha":0.5,"psi":[0.0,0.0]}"#,
//! )
//! .unwrap();
//! let curve = Curve::new(&params).unwrap();
//! let f = frame(&ChartPoint::new(vec![0.6], 1.2), &curve).unwrap();
//! assert!(symplectic_residual(&f) < 1e-12);
//! ```

#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod cli;
pub mod error;
pub mod geometry;
pub mod numerics;
pub mod params;
pub mod phimap;
pub mod profile;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use geometry::{
    classify, frame, immerse, lagrangian_angle, mean_curvature, normal_projection, soliton_residual,
    symplectic_residual, ChartPoint, Classification,
};
pub use params::{DomainInterval, Family, FamilyParams, Violation};
pub use phimap::{invert_phi, oscillation_bounds, phi_bar, OscillationBounds};
pub use profile::{ProfileCurve, ProfilePoint};
pub use verify::{run_suite, ResidualReport, SampleSpec};

pub type Params = FamilyParams<f64>;
pub type Curve = ProfileCurve<f64>;
pub type Point = ProfilePoint<f64>;
pub type Frame = geometry::GeometryFrame<f64>;
pub type Domain = DomainInterval<f64>;
pub type Chart = ChartPoint<f64>;

pub type Params32 = FamilyParams<f32>;
pub type Curve32 = ProfileCurve<f32>;
