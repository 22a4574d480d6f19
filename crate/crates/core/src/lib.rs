//! Edge-isoperimetric profiles of small graphs and lower bounds for the edge
//! boundary of vertex sets in Cartesian products.
//!
//! The pieces, bottom up:
//!
//! * [`graph`]: simple graphs, the `K_m`/`P_m`/`C_m` families, the text format
//!   and explicit products.
//! * [`profile`]: exact `i_k(G)` for every `k`, with canonical witnesses.
//! * [`minorant`]: the convex minorant `psi_G` of `k -> i_k(G)` in log scale.
//! * [`bound`]: the product bound `min sum psi_i(h_i)` and sharpness certificates.
//! * [`closed_forms`]: Hamming, grid, torus and regular-product specializations.
//! * [`certify`]: brute-force verification and certificates for powers of
//!   regular graphs.
//! * [`cli`]: the `isobound` command line.

pub mod bound;
pub mod certify;
pub mod cli;
pub mod closed_forms;
pub mod error;
pub mod expr;
pub mod graph;
pub mod minorant;
pub mod profile;
pub mod vertex_set;

pub use error::{Error, Result};
pub use graph::{Family, Graph, ProductSpec};
pub use vertex_set::VertexSet;
