//! Berenstein–Zelevinsky data and their Kashiwara crystal structure in
//! type A_m, type A_∞ (through windows) and affine type A_ℓ^(1) (through
//! σ-folding), with generators for the crystal graphs and independent
//! checks against Stembridge's axioms and multiplicity formulas.

pub mod affine_fold;
pub mod bz_finite;
pub mod bz_infinite;
pub mod crystal_finite;
pub mod error;
pub mod graph;
pub mod lazy;
pub mod roots;
pub mod verify;

pub use affine_fold::{AffineCrystal, FoldContext, LazyBZElement};
pub use bz_finite::{FiniteBZDatum, ValidationReport, Violation};
pub use bz_infinite::{WindowPolicy, WindowedBZ};
pub use crystal_finite::{DominantWeight, FiniteCrystal, GenError};
pub use error::{BzError, Result};
pub use graph::{CrystalGraph, GraphEdge, GraphNode};
pub use lazy::{Family, WordEval};
pub use roots::{CartanSpec, ChamberWeight, Interval, WeylElem};
pub use verify::{CharacterReport, RootSystemSpec, StembridgeReport};
