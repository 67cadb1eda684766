//! Singular grid diagrams and their images as singular braids, Legendrian
//! fronts, transverse closures and planar diagrams.

pub mod braid;
pub mod closure;
pub mod grid;
pub mod legendrian;
pub mod moves;
pub mod oracle;
pub mod random;
pub mod resolution;
pub mod search;
pub mod skeleton;

pub use grid::{Cell, Corner, Flow, GridDiagram, Orient, Side};
