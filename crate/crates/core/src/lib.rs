//! Exact computations for instability stratifications in geometric
//! invariant theory: rational convex geometry, the stratification kernel for
//! torus weight systems, Harder-Narasimhan types, the blow-up bookkeeping for
//! non-reductive quotients, and the `SL(2)` action on binary forms as a
//! worked model.

pub mod blowup;
pub mod error;
pub mod hkkn;
pub mod hull;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod p1;
pub mod poly;
pub mod rational;
pub mod sheaf;

pub use error::{Error, Result};
pub use hkkn::{Cocharacter, EpsWeight, PointSupport, Semistability, WeightSystem};
pub use poly::{beta_of_type, BetaVector, HNType, HilbertPolynomial};
pub use rational::{InnerProduct, QMatrix, QVector, Rational};

pub const ENGINE_VERSION: &str = concat!("gitstrata-core ", env!("CARGO_PKG_VERSION"));
