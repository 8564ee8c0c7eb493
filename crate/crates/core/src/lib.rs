//! Finite algebraic structures given by Cayley tables: classification,
//! membership, rank searches and quasigroup isomorphism.

pub mod budget;
pub mod corpus;
pub mod error;
pub mod experiments;
pub mod format;
pub mod iso;
pub mod membership;
pub mod paren;
pub mod rank;
pub mod ring;
pub mod seed;
pub mod set;
pub mod table;
pub mod variants;

pub use budget::Budget;
pub use error::{Error, Result};
pub use paren::{CubeIndex, ElementSequence, Parenthesization};
pub use ring::RingTable;
pub use set::ElementSet;
pub use table::{CayleyTable, Kind, StructureKind};
