//! Planar Euclidean Steiner-tree geometry.
//!
//! The crate models Steiner trees on a finite boundary set of terminals,
//! checks the local minimality conditions (120° meetings, degree rules,
//! planarity), decomposes trees into full components, constructs
//! characteristic areas (the walk-around polygon of a full tree, the union
//! of component areas, and the limit area of a degenerating family), and
//! computes minimal inner spanning trees restricted to those areas.
//!
//! The `scenario` module ships two frozen deformation scenes demonstrating
//! that the two characteristic-area rules implemented here cannot both be
//! continuous (in minimal-inner-spanning-tree length) and monotone (total
//! area containing each component's area): the union rule jumps, the limit
//! rule loses monotonicity.
//!
//! The crate is `no_std` (with `alloc`); all IO lives in the companion CLI
//! crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod area;
pub mod construct;
pub mod geom;
pub mod scenario;
pub mod spanning;
pub mod tree;

pub use area::{AreaSource, CharArea, ContainmentReport, Region};
pub use construct::{DeformationPath, Topology};
pub use geom::{Orientation, Point, Segment, Tolerance};
pub use spanning::MistResult;
pub use tree::{FullComponent, SteinerTree, ValidationReport};
