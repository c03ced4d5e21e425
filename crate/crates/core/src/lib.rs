//! Exact linear algebra over the residue ring `Z_h` and the generalized
//! Grassmann graphs `G_r(m, n, Z_h)` built from its subspaces.

mod bigjson;
pub mod error;
pub mod extremal;
pub mod graph;
pub mod matrix;
pub mod oracle;
pub mod ring;
pub mod subspace;

pub use error::{Error, Result};
pub use graph::GraphSpec;
pub use matrix::MatrixZh;
pub use ring::{factorize, ExponentVector, RingContext, UnitDecomposition};
pub use subspace::Subspace;
