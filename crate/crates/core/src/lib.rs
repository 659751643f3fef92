//! Eigenmode analysis of a five-strategy cyclic game: eigensystem of the
//! replicator Jacobian, eigencycle sets, myopic-response prediction,
//! replicator and agent simulation, angular-momentum measurement, regression
//! decomposition onto the eigencycles, and reproduction against bundled
//! reference tables.

pub mod decompose;
pub mod eigen;
pub mod error;
pub mod figdata;
pub mod fixtures;
pub mod game;
pub mod io;
pub mod measure;
pub mod myopic;
pub mod reproduce;
pub mod sim;
pub mod stats;
pub mod subspace;

pub use error::{Error, Result};
pub use game::{GameSpec, SimplexPoint};
pub use subspace::SubspaceVector;
