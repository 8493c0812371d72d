//! A computational laboratory for the iterated monodromy group `IMG(z² + i)`.
//!
//! The group is generated by three involutions `a`, `b`, `c` acting on the
//! binary rooted tree through the wreath recursion
//!
//! ```text
//! a = (1, 1)σ,   b = (a, c),   c = (b, 1)
//! ```
//!
//! with products read left to right (`gh(w) = h(g(w))`). The crate covers
//!
//! * [`group`]: exact word arithmetic, sections, the tree action, the
//!   `C₂ ∗ D₄` normal form of the covering group and a contracting word problem;
//! * [`automaton`]: binary Mealy automata and the four-state generating automaton;
//! * [`presentation`]: the substitution `a → b, b → c, c → aba`, relator
//!   families, branch identities and HNN data, all checked by the word problem;
//! * [`schreier`]: level Schreier graphs and their exports;
//! * [`spectral`]: level operators, Markov spectra, the operator pencil, the
//!   Schur-complement renormalisation map and its varieties;
//! * [`measure`]: the self-affine measure fixed point and a random-walk oracle;
//! * [`cli`]: the `imglab` command line front end.

pub mod automaton;
pub mod cli;
mod error;
pub mod format;
pub mod group;
pub mod measure;
pub mod presentation;
pub mod schreier;
pub mod spectral;

pub use error::{Error, Result};
pub use group::{GammaNormalForm, GroupWord, Letter, TreeVertex};
