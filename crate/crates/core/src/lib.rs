//! Radius problems for normalized Mercer functions
//! `N_ν(z) = a z² J_ν″(z) + b z J_ν′(z) + c J_ν(z)`.
//!
//! The three normalizations `f`, `g`, `h` of `N_ν` are solved for their
//! radii of spirallikeness, convex spirallikeness, and Ma-Minda
//! starlikeness and convexity with respect to a catalog of target functions.
//! Every radius can be checked by sampling the class expression on a circle.
//!
//! ```
//! use mercer_radii::mercer::{MercerParams, NormalizationKind};
//! use mercer_radii::radii::{solve, Problem, RadiusQuery};
//! use mercer_radii::targets::TargetFunction;
//!
//! let p = MercerParams::new(1.0, 2.0, 0.0, 0.5).unwrap();
//! let q = RadiusQuery::new(p, NormalizationKind::G, Problem::StarPhi(TargetFunction::exp())).unwrap();
//! let r = solve(&q).unwrap().radius;
//! assert!((r - 0.3571).abs() < 5e-4);
//! ```

// negated comparisons are how NaN inputs get rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bessel;
pub mod elliptic;
pub mod error;
pub mod mercer;
pub mod oracle;
pub mod radii;
pub mod tables;
pub mod targets;
pub mod zeros;
