//! Distance and distance signless Laplacian spectra of connected graphs,
//! their spreads, and quotient-matrix lower bounds on those spreads.
//!
//! The entry points are [`Graph`] (parsed from graph6 or an edge list, or
//! generated), [`DistanceData`], [`spectral::spread`] and the `bound_*`
//! functions in [`bounds`]. [`search`] enumerates connected bipartite graphs
//! to test which one minimizes the signless Laplacian spread.

pub mod bounds;
pub mod distance;
pub mod edge_list;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod linalg;
pub mod par;
pub mod quotient;
pub mod search;
pub mod spectral;
pub mod structures;
pub mod tables;

pub use bounds::{BoundMethod, BoundReport};
pub use distance::DistanceData;
pub use error::{Error, Result};
pub use graph::{builtin, Bipartition, Family, Graph, BUILTIN_NAMES};
pub use linalg::{Spectrum, SymMatrix};
pub use par::Exec;
pub use quotient::{Partition, QuotientMatrix};
pub use search::{check_conjecture, ConjectureOptions, ConjectureReport};
pub use spectral::{spread, MatrixKind, SpreadReport};
