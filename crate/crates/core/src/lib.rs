//! NL-flow and NL-coflow polynomials of digraphs and regular oriented
//! matroids, with brute-force oracles for every formula.
//!
//! The polynomials come from Möbius inversion over the lattice of unions of
//! directed cuts (flows) or directed cycles (coflows). [`oracles`] counts the
//! same objects by exhaustive enumeration; [`tournaments`] has closed forms
//! for complete digraphs; [`matroid`] repeats the flow side for totally
//! unimodular matrices.

pub mod arcset;
pub mod cut_lattice;
pub mod error;
pub mod graph;
pub mod matroid;
pub mod nl_poly;
pub mod oracles;
pub mod poly;
pub mod poset;
pub mod tournaments;

pub use arcset::ArcSet;
pub use error::{NlError, Result};
pub use graph::Digraph;
pub use nl_poly::{nl_coflow_polynomial, nl_flow_polynomial};
pub use poly::{IntPolynomial, RatPolynomial};
