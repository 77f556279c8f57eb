//! Exact statevector simulation of deep alternating-operator circuits together
//! with classical diagnostics of the underlying optimization landscape.
//!
//! The crate is organized around a handful of small modules:
//!
//! - [`objective`]: pseudo-Boolean objectives `f: {0,1}^N -> R` stored as
//!   exhaustive value tables, plus generators for the problem families used in
//!   the experiments (uniform, bimodal, QUBO, MAXCUT).
//! - [`statevector`]: a `2^N`-amplitude state with matrix-free application of
//!   the two gate families (diagonal phase separator, transverse-field mixer)
//!   and all expectation/derivative evaluations.
//! - [`landscape`]: the neighbor-average statistic `mu`, valley-size bounds,
//!   trough membership, and the `(f, mu)` diagram with its summary statistics.
//! - [`search`]: a greedy grid-based local search over single-layer circuit
//!   parameters, iterated to arbitrary depth.
//! - [`metrics`]: success probability, approximation ratios, outcome
//!   distributions, and gradient traces extracted from search telemetry.
//! - [`universality`]: the severing conditions on an objective (distinct
//!   values, distinct value differences) and a small dense probe of the
//!   generated Lie-algebra dimension.
//! - [`io`]: CSV/JSON serialization of all run artifacts.

pub mod error;
pub mod io;
pub mod landscape;
pub mod metrics;
pub mod objective;
pub mod search;
pub mod statevector;
pub mod universality;

pub use error::{Error, Result};
