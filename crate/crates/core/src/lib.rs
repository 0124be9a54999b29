//! Winding numbers of chord-closed planar curves and the winding area
//! measure of Brownian paths.
//!
//! * [`curves`]: paths, Brownian sampling and bridge refinement, p-variation
//! * [`winding`]: exact point queries, scanline winding fields, query index
//! * [`measure`]: winding measure `μ`, tail areas `D_N`, position and scale
//! * [`integrals`]: line integrals, Lévy area, shoelace area, Young sums
//! * [`cauchy`]: Cauchy laws, quantile fit, estimators, KS statistics
//! * [`poisson`]: Poisson clouds and normalized winding sums

// NaN-rejecting checks are written as negated comparisons on purpose
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cauchy;
pub mod curves;
pub mod error;
pub mod geometry;
pub mod integrals;
pub mod measure;
pub mod poisson;
pub mod seed;
pub mod sum;
pub mod winding;

pub use curves::{Dissection, PlanarPath};
pub use error::{Error, Result};
pub use geometry::{Point, Rect};
pub use seed::RngSeed;
