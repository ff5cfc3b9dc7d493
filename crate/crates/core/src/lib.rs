//! Finite simplicial sets, subdivision, Ex, lifting conditions and homology.

pub mod bisimp;
pub mod builders;
pub mod cover;
pub mod error;
pub mod expansion;
pub mod ex;
pub mod fixtures;
pub mod format;
pub mod homology;
pub mod intlin;
pub mod lifting;
pub mod map;
pub mod search;
pub mod simplex;
pub mod sset;
pub mod subdivide;

pub use error::{Error, Result};
pub use map::SimplicialMap;
pub use simplex::{Gen, SimplexRef};
pub use sset::{SimplicialSet, SimplicialSetBuilder};
