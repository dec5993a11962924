//! Exact computations for the algebraic model of rational equivariant
//! cohomology theories over a finite group `G`.

pub mod error;
pub mod exactq;
pub mod permgrp;
pub mod burnside;
pub mod dgmod;
pub mod ringoid;
pub mod ringoidmod;
pub mod skew;
pub mod random;
pub mod json;

pub use error::{Error, Result};
pub use exactq::{frac, rat, MatQ, Rational};
pub use permgrp::{group_from_spec, GroupRef, PermGroup, Subgroup, SubgroupClass};
