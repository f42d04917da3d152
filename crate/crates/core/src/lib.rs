//! Numerical library for excited entangled coherent states of two bosonic
//! modes: construction in truncated Fock space, closed-form and oracle
//! concurrence, and simulation of the cavity-QED preparation protocol.
//!
//! Layering, bottom up:
//!
//! - [`laguerre`]: Laguerre polynomials and the overlap/normalization
//!   scalars every closed form reduces to.
//! - [`fock`]: dense truncated Fock-space states, creation operators, inner
//!   products, partial traces. This is the brute-force oracle everything
//!   else is checked against.
//! - [`states`]: constructors for the state families (entangled coherent
//!   states, their single- and two-mode photon-excited variants, and
//!   photon-added component states), each carrying both a numeric state and
//!   its closed-form normalization constant.
//! - [`entanglement`]: concurrence via closed forms and via the
//!   purity-based Schmidt oracle, weak-field asymptotics, and the combined
//!   analysis report.
//! - [`prep`]: resonant atom-field interaction, ground-state post-selection,
//!   and the atom-chain protocol that turns a single-mode-excited state into
//!   a two-mode-excited one.
//!
//! All values are immutable after construction and all functions are pure,
//! so parameter grids can be evaluated concurrently without coordination.

pub mod entanglement;
pub mod error;
pub mod fock;
pub mod laguerre;
pub mod prep;
pub mod states;

pub use entanglement::{analyze, concurrence_oracle, Asymptote, AsymptoteKind, ConcurrenceReport};
pub use error::{Error, Result};
pub use fock::{auto_truncation, coherent, fidelity, Mode, ModeVector, TruncationConfig, TwoModeState};
pub use laguerre::{laguerre, laguerre_neg, overlap_p, photon_added_norm, OverlapPair};
pub use prep::{run_chain, Backend, PrepOutcome};
pub use states::{BuiltState, Family, Sign, StateSpec};
