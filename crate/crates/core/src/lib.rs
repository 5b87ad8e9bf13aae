//! Exact q-series for quantum spin networks, the tetrahedron index, and the
//! 3D-index of ideal triangulations computed two ways: as the large-color
//! limit of a spin-network state sum and as a sum over normal surfaces.

pub mod blocks;
pub mod error;
pub mod lattice;
pub mod qseries;
pub mod statesum;
pub mod surfaces;
pub mod tetindex;
pub mod triangulation;

pub use blocks::{AdmissibleTriple, SixColors, StData};
pub use error::{Error, Result};
pub use qseries::{Monomial, QSeries, SeriesRecord};
pub use tetindex::{IndexLabel, QuadTriple};
pub use triangulation::{Perm4, Triangulation};
