//! Geometry and consensus core for resilient vector consensus.
//!
//! Normal agents in a multi-agent network move toward a *safe point* of the
//! states they observe: a point guaranteed to lie inside the convex hull of
//! their non-adversarial neighbors. This crate computes such points three
//! ways and runs the resulting consensus protocol:
//!
//! * [`centerpoint`]: exact centerpoints in 1–3 dimensions (Tukey depth at
//!   least `⌈n/(d+1)⌉`) and iterated Radon approximations in higher ones;
//! * [`tverberg`]: the approximate Tverberg baseline built by recursive
//!   lifting;
//! * [`consensus`]: the synchronous update loop with stationary, oscillating,
//!   move-away and equivocating adversaries, plus safety monitors.
//!
//! [`oracle`] holds slow brute-force ground truth that shares no hull or LP
//! code with the fast paths. The crate is `no_std` and only needs `alloc`.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod centerpoint;
mod combin;
pub mod consensus;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod lp;
pub mod oracle;
mod point;
pub mod rng;
pub mod tolerance;
pub mod tverberg;

pub use centerpoint::{
    centerpoint_2d, centerpoint_3d, interior_centerpoint, iterated_radon_centerpoint,
    CenterpointConfig, CenterpointMethod, CenterpointResult, Jitter,
};
pub use error::GeometryError;
pub use geometry::{depth, in_convex_hull, is_general_position, radon_point, RadonPartition};
pub use point::{HalfSpace, Point, PointSet};
pub use tverberg::{approx_tverberg, tverberg_safe_point, TverbergPartition, TverbergSafePoint};
