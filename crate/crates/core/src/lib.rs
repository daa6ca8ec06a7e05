//! Surface group representations into SL(2,C)/PSL(2,C) built from
//! eigenvalue–twist coordinates on a pants decomposition with an oriented
//! dual fat graph.

pub mod error;
pub mod pants;
pub mod projective;

pub use error::{Error, Result};
pub use projective::{MoebiusMap, ProjectivePoint, C64};
pub mod fixtures;
pub mod surface;
pub mod coordinates;
pub mod builder;
pub mod symmetry;
pub mod moves;
pub mod fuchsian;
pub mod shearbend;
pub mod sampling;
pub mod cli;
