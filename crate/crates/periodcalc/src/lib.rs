//! Exact symbolic bookkeeping for critical values of Rankin–Selberg
//! L-functions over CM fields: spectral data, split indices, Hodge-type
//! dictionaries, discrete-series descent parameters, and a formal monomial
//! calculus over period symbols that replays the factorization of
//! automorphic periods and checks critical-value identities exactly.
//!
//! Everything is integer or half-integer arithmetic; there is no floating
//! point anywhere. The library surface is organized around the pipeline
//!
//! 1. [`spectral`] — highest weights, exponent lists, regularity;
//! 2. [`critical`] — critical sets and the motivic shift dictionary;
//! 3. [`hodge`] — split indices (both routes) and reflection identities;
//! 4. [`descent`] — the parameters and Hodge data of the descent;
//! 5. [`period`] — period monomials, rewrite normalization, axiom schemas,
//!    the factorization replay and the critical-value comparisons;
//! 6. [`instance`] / [`cli`] — the JSON instance format and command-line
//!    front end.
//!
//! The `examples/` directory contains one runnable example per capability;
//! the `periodcalc` binary exposes the same operations as subcommands.

pub mod cli;
pub mod corpus;
pub mod critical;
pub mod descent;
pub mod half;
pub mod hodge;
pub mod instance;
pub mod period;
pub mod shape;
pub mod spectral;

pub use half::HalfInt;
pub use shape::{CMShape, Embedding, PlaceId};
