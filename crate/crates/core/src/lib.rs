//! Exact computer algebra for the integral form of quantum sl2.
//!
//! The crate is layered bottom-up:
//!
//! * [`coeff`]: the Laurent ring `Z[v, v^-1]`, its fraction field and the
//!   q-symbols built from `{a} = v^a - v^-a`.
//! * [`torus`]: the Cartan part `Z[v, v^-1][K, K^-1]` with its shifted Hopf
//!   brackets and the kappa family of sums.
//! * [`pbw`]: elements in the basis `F^(a) K^b e^m` and a word rewriter.
//! * [`hopf`]: coproduct, counit, antipode, adjoint action and the truncated
//!   quasi-R-matrix.
//! * [`center`]: the Casimir, the Harish-Chandra projection and the sigma
//!   basis of the center.
//! * [`completion`]: filtrations, truncated representatives and power
//!   series in the completed centers.

pub mod center;
pub mod coeff;
pub mod completion;
pub mod error;
pub mod hopf;
pub mod pbw;
pub mod torus;

pub use error::{AlgebraError, Result};
