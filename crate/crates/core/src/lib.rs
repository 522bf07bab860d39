//! Architecture fingerprinting for compact DNNs from GPU side channels.
//!
//! The crate has four layers:
//!
//! * [`arch`] and [`graph`]: analytic cost models (parameters, activations,
//!   MACs) over explicit layer graphs, plus the [`zoo`] of bundled networks.
//! * [`fingerprint`]: the observable evidence (kernel-time mix and
//!   batch-indexed metric series) and the trend detectors that read it.
//! * [`classifier`]: a rule cascade that maps a fingerprint to building
//!   blocks, a DNN group and finally a model, recording why at every step.
//! * [`synth`] and [`defense`]: a deterministic fingerprint generator for
//!   round-trip testing and the group-convolution countermeasure.

pub mod arch;
pub mod builder;
pub mod classifier;
pub mod cli;
pub mod defense;
pub mod error;
pub mod fingerprint;
pub mod graph;
pub mod recipes;
pub mod synth;
pub mod zoo;
