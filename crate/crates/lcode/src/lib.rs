//! GF(2) linear code analytics and prescribed-automorphism search.
//!
//! The crate covers the pipeline from packed GF(2) linear algebra up to
//! a feasibility search over orbit selections:
//!
//! - [`gf2`]: packed bit vectors and matrices, rank, products, order in
//!   GL(k,2), and the MAT text format.
//! - [`analytics`]: linear codes, exhaustive weight distributions by
//!   Gray-code enumeration, enumerator printing, the Griesmer bound.
//! - [`extension`]: the zero-pad + all-one-row construction and its
//!   min{d, n+p-d'} distance prediction.
//! - [`orbits`]: cyclic matrix groups, their orbits on nonzero vectors,
//!   Burnside counting, column-orbit decomposition.
//! - [`diosys`]: the per-orbit feasibility system with length and
//!   weight-window constraints, plus the DIOSYS file format.
//! - [`search`]: seeded local search for feasible orbit selections.
//! - [`fixtures`]: the embedded reference matrices and distributions.

pub mod analytics;
pub mod diosys;
pub mod extension;
pub mod fixtures;
pub mod gf2;
pub mod orbits;
pub mod search;

pub use analytics::{griesmer_bound, LinearCode, WeightDistribution};
pub use diosys::{DiophantineSystem, SelectionReport};
pub use extension::{extend_all_one, extension_report, predicted_min_distance, ExtensionReport};
pub use gf2::{BitMatrix, BitVector};
pub use orbits::{column_orbit_decomposition, MatrixGroup, OrbitPartition};
pub use search::{search, SearchConfig, SearchResult, SearchStatus};
