//! Weights, Weyl groups, atypical blocks, characters and primitive weight
//! graphs of the orthosymplectic Lie superalgebra osp(k|2), k >= 3.
//!
//! Coordinates are stored doubled so that half-integers are exact. The
//! entry point for character computations is [`Osp`], which owns a
//! [`RootSystem`] together with the caches used by the recursive routines.

pub mod atypicality;
pub mod charring;
pub mod cohomology;
pub mod dims;
pub mod error;
pub mod oracle;
mod par;
pub mod rootdata;
pub mod structure;
pub mod weight;
pub mod weyl;

pub use atypicality::{AtypType, AtypicalData, Branch, ChainCase, ChainPosition};
pub use charring::{
    FormalCharacter, IsotypicCharacter, NumeratorExpression, NumeratorTerm, Osp, SoCharacter,
    WeylSum, Window,
};
pub use cohomology::Coefficients;
pub use error::{Error, Result};
pub use oracle::{BlockReport, CheckKind, CheckRecord, Decomposition};
pub use par::Execution;
pub use rootdata::{AlgebraData, OddRoot, RootSystem, Series, WeightFlags};
pub use structure::{GraphNode, PrimitiveGraph, SmData};
pub use weight::{HalfInt, Weight};
pub use weyl::WeylElement;
