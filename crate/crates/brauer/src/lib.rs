//! Two-term tilting theory of Brauer graph algebras, computed from the
//! combinatorics of signed walks on ribbon graphs.
//!
//! * [`ribbon`]: graph files, validation, cycle analysis, flips.
//! * [`walks`]: signed walks, the sign and non-crossing conditions, enumeration.
//! * [`tilt`]: walks as complexes, Hom-vanishing, complete sets, the Hasse quiver.
//! * [`oracle`]: an independent check through string modules and linear algebra.

pub mod oracle;
pub mod ribbon;
pub mod tilt;
pub mod walks;

pub use ribbon::{BrauerGraph, GraphError};
pub use walks::{Sign, SignedWalk, WalkError};
