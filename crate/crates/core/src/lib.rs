//! Ordered partitions, partitioned multilinear maps and their composition,
//! homotopy Gerstenhaber (G∞) identities, and exact verification on small
//! graded algebras.
#![no_std]

extern crate alloc;

pub mod composition;
pub mod error;
pub mod identity;
pub mod models;
pub mod partition;
pub mod sign;
pub mod terms;
pub mod text;

pub use error::{Error, ParseError};
pub use partition::{Partition, PartitionVector};
pub use sign::{SignPoly, SignRule};
pub use terms::{Degree, Expr, FormalSum, Generator, MapSymbol, Q};
