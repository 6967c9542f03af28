//! Kinematic dynamo toolkit for twisted magnetic flux tubes and filaments.
//!
//! Frenet-frame geometry, the Riemannian geometry of a tube around a
//! curve, flow stretching, closed-form induction scenarios and a growth-rate
//! classifier, plus a batch front end in [`cli`].

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod classification;
pub mod cli;
pub mod error;
pub mod exec;
pub mod flows;
pub mod geometry;
pub mod grid;
pub mod induction;
pub mod numerics;
pub mod tube_metric;

pub use classification::{classify, DynamoClass, DynamoLabel, GrowthCurve};
pub use error::{DynamoError, Result};
pub use exec::Execution;
pub use geometry::{CurveProfile, FrenetFrame, Interval};
