//! Exact piecewise-linear witnesses for right-angled Artin groups.
//!
//! Given a finite simplicial graph `Γ` and a nontrivial element `g` of the
//! right-angled Artin group `A(Γ)`, this crate builds a homomorphism
//! `ψ_g: A(Γ) → PL₊(ℝ)` out of translated copies of a single bump map and
//! produces an exact, re-checkable certificate that `ψ_g(g)` moves a point.
//!
//! The pipeline is:
//!
//! 1. [`word::reduce`] solves the word problem and returns the canonical
//!    lexicographically least geodesic.
//! 2. [`decomp::left_greedy_form`] factors the element into clique words so
//!    that no letter of a block commutes with the whole next block.
//! 3. [`witness::build_witness`] picks a spine through the blocks and maps
//!    each generator to a product of translated bumps.
//! 4. [`witness::verify_witness`] traces the test point `5/4` through the
//!    blocks and checks every stage interval exactly.
//! 5. [`verify::verify_certificate`] re-checks the emitted JSON without
//!    reusing the construction code.

pub mod cert;
pub mod cli;
pub mod decomp;
pub mod error;
pub mod graph;
pub mod parse;
pub mod pl;
pub mod rational;
pub mod sweep;
pub mod verify;
pub mod witness;
pub mod word;

pub use error::{Error, Result};
pub use graph::{Graph, VertexId};
pub use pl::PlMap;
pub use rational::Rational;
pub use word::{Letter, Word};
