//! Exact linear algebra linking Pawlak rough sets to vector matroids.
//!
//! An equivalence relation on a finite universe is encoded as its
//! block-incidence 0/1 matrix. The vector matroid of that matrix, over any
//! field, is the partition matroid whose circuits are the pairs inside a
//! block. Over GF(2) the circuits are the minimal nonempty supports of null
//! space vectors, the bases are the minimal supports of solutions to
//! `A x = 1`, and equivalence relations can be read back from null spaces.
//!
//! Modules:
//! - [`fields`]: GF(2), GF(p) and rational arithmetic.
//! - [`linalg`]: RREF, rank, determinant, null spaces, solution enumeration.
//! - [`sets`]: universes, subsets and canonical set families.
//! - [`roughsets`]: partitions, approximation operators, the incidence matrix.
//! - [`matroid`]: vector and partition matroids, circuits, bases, supports.
//! - [`binrel`]: relations recovered from null spaces, binary dependence
//!   matrices, and the meet-preserving map from partitions to circuit families.
//! - [`io`]: the text file formats for matrices and partitions.
//! - [`verify`]: exhaustive and seeded-random sweeps over the above.

pub mod binrel;
pub mod error;
pub mod fields;
pub mod io;
pub mod linalg;
pub mod matroid;
pub mod roughsets;
pub mod sets;
pub mod verify;

pub use error::{Error, Result};
pub use fields::{FieldElement, FieldSpec};
pub use linalg::{ExactMatrix, Rref, SolutionSet, Vector};
pub use matroid::VectorMatroid;
pub use roughsets::Partition;
pub use sets::{ElementSet, SetFamily, Universe};
