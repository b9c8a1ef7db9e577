//! Operator residuation on finite bounded posets with a unary operation.
//!
//! * [`poset`]: carrier, order, the operation `'` and the cones `L`, `U`
//! * [`classify`]: complementation, distributivity, Boolean /
//!   pseudo-Boolean / pseudo-orthomodular posets, orthomodular lattices and
//!   the sufficient conditions (1), (2), (7), (8)
//! * [`residuation`]: the operator tables `M`, `R` and their checks
//! * [`generalized`]: subset-level operators and conditions
//! * [`enumerate`]: all small structures up to isomorphism
//! * [`report`]: JSON and text rendering used by the command line tool
//! * [`cli`]: argument parsing and command dispatch for the `residua` binary

pub mod classify;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod generalized;
pub mod poset;
pub mod report;
pub mod residuation;
pub mod subset;
pub mod witness;

pub use error::{Error, Result};
pub use poset::{image_prime, Poset, PosetDoc, StructuredPoset, UnaryOp};
pub use subset::Subset;
pub use witness::{Binding, Verdict, Witness};
