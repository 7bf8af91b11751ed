//! chowkit computes, exactly over the integers and rationals, the Chow rings
//! of the homogeneous spaces
//!
//! ```text
//! Y_n = SO(n) / (SO(n-4) x GL(2)) . P_u        (n >= 6)
//! X_n = SO(n) / (SO(n-4) x SL(2)) . P_u
//! ```
//!
//! where `P_u` is the unipotent radical of the relevant parabolic. `X_n` is a
//! `G_m`-bundle over `Y_n`, so `CH(X_n)` is the cokernel of multiplication by
//! `c1` on `CH(Y_n)`.
//!
//! The crate builds the rational ring of `Y_n` from its presentation, the
//! integral ring from an explicit divided-element basis, and mechanically
//! verifies the closed-form structure it implements: multiplicative closure,
//! sublattice indices, the full multiplication tables, mod-p module
//! structures, and the free/torsion decomposition of `CH(X_n)`.

pub mod arith;
pub mod chow_x;
pub mod chow_y;
pub mod classes;
pub mod identities;
pub mod lattice;
pub(crate) mod linalg;
pub mod quotient;
pub mod report;
pub mod tables;

pub use arith::{Int, Rat};
