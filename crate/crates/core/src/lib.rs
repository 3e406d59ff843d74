//! Executable zero-divisor theory for finite semigroups with zero,
//! prenearsemirings and semirings.
//!
//! Structures are stored as Cayley tables over `{0, .., n-1}` with element
//! 0 the zero and element 1 the identity (when there is one). On top of the
//! tables sit property checkers with witnesses, the standard constructions
//! (products, matrices, triangular and expectation semirings, fractions),
//! the directed zero-divisor graph, and an exhaustive search harness that
//! checks implications between properties over every small structure.

pub mod canonical;
pub mod constructions;
pub mod error;
pub mod named;
pub mod properties;
pub mod rule;
pub mod search;
pub mod structure;
pub mod table;
pub mod validate;
pub mod zdgraph;

pub use error::{AlgebraError, Result};
pub use properties::{PropertyReport, Verdict};
pub use structure::{FiniteStructure, Kind, StructureFile};
pub use table::{ElementId, OpTable};
