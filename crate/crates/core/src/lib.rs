//! CP and CPM constructions over finite-dimensional Hilbert spaces (complex
//! matrices) and finite relations (boolean matrices), with Choi/Kraus tooling
//! for quantum operations, checkers for environment structures and the
//! doubling axiom, and a small morphism language.

pub mod axioms;
pub mod channels;
pub mod cli;
pub mod compact;
pub mod cp;
pub mod cpm;
pub mod dsl;
pub mod eigen;
pub mod error;
pub mod laws;
pub mod mor;
pub mod object;
pub mod sample;
pub mod scalar;

pub use cp::KrausMor;
pub use cpm::CpmMor;
pub use error::{CatError, CatResult};
pub use mor::{CMor, Mor, RelMor};
pub use object::Object;
pub use scalar::Scalar;
