//! Finite rings, their commuting graphs, and the spectra and energies of the
//! minimum sum-neighbor and common-neighbor matrices of those graphs.

pub mod arith;
pub mod bitset;
pub mod cli;
pub mod closed_forms;
pub mod error;
pub mod graph;
pub mod limits;
pub mod ring;
pub mod ring_spec;
pub mod spectra;
pub mod verify;

pub use closed_forms::{predict, ClosedFormPrediction, Params, TheoremId};
pub use error::{Error, Result};
pub use graph::{commuting_graph, CliqueDecomposition, CliqueUnion, SimpleGraph};
pub use limits::Limits;
pub use ring::FiniteRing;
pub use ring_spec::parse_ring_spec;
pub use spectra::{classify, EnergyReport, IntSymMatrix, Spectrum};
pub use verify::{property_suite_clique_unions, sweep, verify_ring, Verdict, VerificationReport};
