//! Exact and numeric computation engine for nu-projective superspaces:
//! Grassmann algebra over rational functions, supermatrices, bigraded
//! differential forms, chart atlases with their line-bundle cocycle, the
//! branch-resolved logarithm behind the nu-class, and curvature identities
//! for supermatrix-valued connections.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

#[macro_use]
mod macros;

pub mod atlas;
pub mod charclass;
pub mod coefficient;
pub mod error;
pub mod expr;
pub mod forms;
pub mod grassmann;
pub mod nuclass;
pub mod numeric;
pub mod poly;
pub mod properties;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod supermatrix;
pub mod symbol;

pub use atlas::{ChartAtlas, ChartLabel, LabelEntry, TransitionMap};
pub use charclass::{CurvatureInstance, MatrixForm, SyntheticCocycle};
pub use coefficient::Coefficient;
pub use error::{Error, Result};
pub use forms::{DiffWord, Form, PartitionFamily, TruncationPolicy};
pub use grassmann::{GrassmannElement, OddMonomial, Substitution};
pub use numeric::{BranchWindow, NumericGrassmann, Point};
pub use poly::{Monomial, Poly};
pub use report::{Check, Detail, Report, Status};
pub use scalar::GaussRat;
pub use supermatrix::{Block, Dims, Entry, SuperMatrix};
pub use symbol::{Registry, SymbolId, SymbolKind};
