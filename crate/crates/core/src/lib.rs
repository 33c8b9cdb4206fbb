//! Growth characteristics of entire and meromorphic functions.
//!
//! The crate measures how fast a function grows: the maximum modulus `ln M(r)`,
//! the circle mean `C(r)` of `ln|f|`, the disk mean `B(r)`, the Nevanlinna
//! characteristic `T(r)`, and the zero-counting functions `Z^rad` and `N_Z`.
//! On top of those it provides canonical (genus-q) products built from a zero
//! set, and a positive-kernel transform that turns a growth profile into an
//! upper bound for the growth of a function after its modulus is lowered by a
//! zero-divisor or a multiplier.

pub mod error;
pub mod funcat;
pub mod kernel;
pub mod points;
pub mod products;
pub mod profile;
pub mod radial;
pub mod special;

pub use error::{Error, Result};
pub use funcat::{EvalResult, FunctionSpec};
pub use kernel::{KernelParams, PowerBudget};
pub use points::PointDistribution;
pub use profile::{RadialProfile, Tail};
pub use radial::{ChainReport, CircleQuadratureSettings};

/// Complex double, the scalar type used throughout.
pub type Complex64 = num_complex::Complex64;
