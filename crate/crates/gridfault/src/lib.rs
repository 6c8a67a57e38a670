//! Physics-informed line-failure localization for power grids, at desk scale.
//!
//! The crate covers the whole experimental pipeline:
//!
//! * [`grid`] — network topology, bus admittance matrix, line-neighborhood queries.
//! * [`casefile`] — a small text format for grid cases; ships 9-bus and 39-bus systems.
//! * [`powerflow`] — Newton–Raphson AC power flow (the pre-fault steady-state oracle).
//! * [`fault`] — shunt-admittance fault injection and quasi-static during-fault solves.
//! * [`noise`] — SNR-calibrated complex Gaussian measurement noise.
//! * [`scenario`] — seeded generation of labeled fault scenario sets, with a
//!   versioned on-disk record format.
//! * [`features`] — substitution-theory feature vectors (voltage deltas times the
//!   pre-fault admittance matrix), observability masking, one-hot and
//!   neighbor-smoothed targets, dataset assembly and export.
//! * [`nn`] — a small 1-D convolutional classifier with explicit forward/backward
//!   passes, a neighbor-blended cross-entropy loss, and an RMSProp optimizer.
//! * [`train`] — the training loop with windowed early stopping and k-fold
//!   cross-validation of hyperparameters.
//! * [`stats`] — rank statistics (Mann–Whitney U) used for model comparison.
//! * [`eval`] — accuracy metrics, candidate ranking, experiment sweeps
//!   (observability / train size / SNR) and variant significance comparison.
//! * [`report`] — delimited report tables, JSON summaries, and SVG curve plots.
//!
//! Every random draw in the crate flows from a root seed through named
//! substreams ([`rng`]), so any pipeline output is a pure function of its
//! inputs and seed.

pub mod casefile;
pub mod digest;
pub mod error;
pub mod eval;
pub mod fault;
pub mod features;
pub mod grid;
pub mod linalg;
pub mod nn;
pub mod noise;
pub mod powerflow;
pub mod report;
pub mod rng;
pub mod scenario;
pub mod stats;
pub mod train;

pub use error::Error;
