//! Simplicial complexes with free involutions and nice colorings.

mod census;
mod coloring;
mod complex;
mod labeled;
mod search;

pub use census::{alt_histogram, kyfan_parity, max_alt, AltHistogram, KyFanParity};
pub use coloring::{alt_number, NiceColoring, SignedIndexSet};
pub use complex::{Simplex, SimplicialComplex, VertexId};
pub use labeled::{validate, BundleMeta, Involution, LabeledComplex, ValidationReport, Violation};
pub use search::{search_nice_coloring, SearchOutcome};
