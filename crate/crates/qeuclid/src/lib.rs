//! Exact symbolic computation on the quantum Euclidean space R³_q.
//!
//! The crate is organised bottom-up:
//!
//! * [`qscalar`]: the coefficient field ℚ(√q) and expansions around q = 1;
//! * [`rmat`]: the braid matrix, the metric and the projectors;
//! * [`ncalg`]: the normal-ordering engine for coordinates, forms and Λ;
//! * [`omega`]: differentials, tensors, σ and the metric maps;
//! * [`geom`]: frames, connections, curvature and the reality checks;
//! * [`climit`]: the commutative limit;
//! * [`qcli`]: parser, renderer and the `verify` driver.

pub mod qscalar;
pub mod rmat;
pub mod ncalg;
pub mod omega;
pub mod geom;
pub mod climit;
pub mod qcli;
