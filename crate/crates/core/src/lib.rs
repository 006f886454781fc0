//! Combinatorial nonpositive curvature checks for flag simplicial complexes.
//!
//! The crate decides local and global curvature conditions (largeness, weak
//! modularity, `SD_n`, the extended 5-wheel condition) on concrete complexes,
//! computes minimal displacement sets of simplicial isometries, and checks
//! the structural statements about those sets (isometric embedding,
//! systolicity, invariant and thick geodesics) with explicit witnesses.
//!
//! Everything is built on [`FlagComplex`], a graph whose cliques are the
//! simplices. Finite windows of infinite periodic complexes carry a trust
//! region (see [`WindowView`]) and every global check on such a window is
//! quantified over that region only.

pub mod complex;
pub mod conditions;
pub mod cycles;
pub mod error;
pub mod format;
pub mod generators;
pub mod isometry;
pub mod mindisp;
pub mod topology;
pub mod validate;
pub mod verdict;

pub use complex::{
    FacetComplex, FlagComplex, Graph, PeriodicParent, Region, Simplex, VertexId, WindowView,
    DEFAULT_CACHE_THRESHOLD,
};
pub use error::{Error, Result};
pub use isometry::Automorphism;
pub use verdict::{Answer, Verdict, Witness};
