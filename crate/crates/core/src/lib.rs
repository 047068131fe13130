//! Projective line over lower triangular matrix rings T_n(q) and the
//! affine and projective planes carried by its non-free cyclic submodules.

pub mod cli;
pub mod error;
pub mod gf;
pub mod modspace;
pub mod planes;
pub mod projline;
pub mod trimat;

pub use error::{Error, Result};
pub use gf::FieldTable;
pub use modspace::{ModPair, Submodule, SubmoduleId, SubmoduleRegistry};
pub use projline::LineCensus;
pub use trimat::{RingContext, TriMatrix};
