//! Geodesics on convex polyhedral surfaces: exact shortest paths, ridge
//! trees, star unfoldings, an event-driven edge sweep enumerating shortest
//! path edge sequences, and one-point / edge-edge query structures, all
//! cross-checked against independent brute-force oracles.

pub mod geom;
pub mod tol;

pub mod mesh;
pub mod shapes;
pub mod unfolding;

pub mod oracle;

pub mod chenhan;
pub mod star;
pub mod ridge;
pub mod edgelet;

pub mod seqtree;
pub mod sweep;
pub mod query;

pub mod svg;
