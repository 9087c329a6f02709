//! Factor theory for multigraphs of class M2: every pair of vertices joined
//! by at most two parallel edges, at most one loop per vertex, loops adding
//! two to the degree.
//!
//! The crate decides 2-factor existence constructively (Tutte's degree
//! gadget plus a general matching engine), produces verifiable
//! no-2-factor witnesses, characterizes edge-maximal 2-factor-free graphs,
//! analyzes (2k+1)-regular graphs through their bridge/leaf structure, and
//! generates the extremal families these results are sharp on.

#![forbid(unsafe_code)]

pub mod chains;
pub mod error;
pub mod factor;
pub mod flow;
pub mod format;
pub mod generators;
pub mod matching;
pub mod maximal;
pub mod multigraph;
pub mod regular;
pub mod witness;

pub use error::{Error, Result};
pub use factor::TwoFactor;
pub use multigraph::{AddCandidate, Edge, EdgeId, Multigraph, VertexId};
pub use witness::Witness;
