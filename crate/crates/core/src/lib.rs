//! Exact computation of the first Hochschild cohomology `HH^1(A)` of split basic
//! algebras `A = kQ/I` given by bound quiver presentations, as a Lie algebra with
//! explicit structure constants, together with the Lie-theoretic decision
//! procedures (solvability, nilpotency, `sl_2` and Witt algebra recognition) and a
//! harness that checks structural theorems about `HH^1(A)` on concrete algebras.
//!
//! All arithmetic is exact, over `Q` or a prime field `F_p`.

pub mod error;
pub mod generators;
pub mod harness;
pub mod hh1;
pub mod lie;
pub mod linalg;
pub mod quiver;

pub use error::{Error, Result};
