#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Joint communication-motion planning for a three-node relay network: a
//! sensing robot streams data to a base station through a mobile router
//! robot, and the router's position, both transmit powers and both AMC modes
//! are chosen together to minimize total energy under an end-to-end PER
//! target.

pub mod channel;
pub mod cqm;
pub mod error;
pub mod geom;
pub mod motion;
pub mod planner;
pub mod simcore;

pub use error::{Error, Hop, Infeasible, Result};
pub use geom::Point;
