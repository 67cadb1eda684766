//! Singular braid words and the map from grids to braids.

pub mod flip;
pub mod rectilinear;
pub mod rewrite;
pub mod word;

pub use flip::{classify_reversed, flip, grid_to_braid, singular_letter_cells, slant, DotForm, RectDiagram, RectEvent, ReversedSegment, SegmentKind};
pub use rectilinear::rectilinear_closure;
pub use rewrite::{rewrite_equivalent, RewriteOptions, Step, Verdict};
pub use word::{BraidError, Letter, SingularBraidWord};
