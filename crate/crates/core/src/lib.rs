//! Exact singularity counts for one-dimensional foliations and
//! codimension-one distributions on compact toric orbifolds and their
//! complete intersections.

pub mod catalog;
pub mod cli;
pub mod chow;
pub mod error;
pub mod exactalg;
pub mod formulas;
pub mod polyfield;
pub mod residue;

pub use error::{Error, Result};
