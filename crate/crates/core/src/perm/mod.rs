pub mod chain;
pub mod group;
pub mod ksets;
pub mod permutation;
pub mod pointset;

pub use chain::StabilizerChain;
pub use group::{OrbitalGraph, PermGroup};
pub use ksets::KSetOrbitIndex;
pub use permutation::{Permutation, Point};
pub use pointset::{mask_of, points_of, PointSet, SetPartition};
