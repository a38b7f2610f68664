//! NL-flow and NL-coflow polynomials by Möbius inversion over the dicut and
//! dicycle lattices.
//!
//! The flow side sums `mu(A, B) x^{|B| - rk(B)}` over the dicut lattice;
//! `|B| - rk(B)` is the dimension of the flow space of `(V, B)`.
//!
//! The coflow side sums `mu(A, B) x^{rk(A) - rk(A \ B)}` over the dicycle
//! lattice. With `C = A \ B` a union of directed cycles, the coflows that
//! vanish on `C` are exactly the coflows of `D/C`, whose dimension is
//! `rk(A) - rk(C)`.

use num_bigint::BigInt;

use crate::cut_lattice::{
    build_cut_lattice_with_limit, build_cycle_lattice_with_limit, DEFAULT_LATTICE_LIMIT,
};
use crate::error::Result;
use crate::graph::Digraph;
use crate::poly::IntPolynomial;

/// Evaluated at `k >= 1`, counts the NL-`G`-flows for any abelian group `G`
/// of order `k`.
pub fn nl_flow_polynomial(d: &Digraph) -> Result<IntPolynomial> {
    nl_flow_polynomial_with_limit(d, DEFAULT_LATTICE_LIMIT)
}

pub fn nl_flow_polynomial_with_limit(d: &Digraph, limit: usize) -> Result<IntPolynomial> {
    let lattice = build_cut_lattice_with_limit(d, limit)?;
    let mu = lattice.mobius_from_full();
    let mut poly = IntPolynomial::zero();
    for (b, mu_b) in lattice.elements().iter().zip(mu) {
        let exp = b.len() - d.rank(b);
        poly.add_term(mu_b, exp as u32);
    }
    Ok(poly)
}

/// For a loopless digraph with `c` weak components,
/// `k^c * nl_coflow_polynomial(k)` is the number of acyclic `k`-colorings.
pub fn nl_coflow_polynomial(d: &Digraph) -> Result<IntPolynomial> {
    nl_coflow_polynomial_with_limit(d, DEFAULT_LATTICE_LIMIT)
}

pub fn nl_coflow_polynomial_with_limit(d: &Digraph, limit: usize) -> Result<IntPolynomial> {
    let lattice = build_cycle_lattice_with_limit(d, limit)?;
    let mu = lattice.mobius_from_full();
    let full_rank = d.rank(&d.all_arcs());
    let mut poly = IntPolynomial::zero();
    for (b, mu_b) in lattice.elements().iter().zip(mu) {
        let exp = full_rank - d.rank(&b.complement());
        poly.add_term(mu_b, exp as u32);
    }
    Ok(poly)
}

/// `k^c * psi(k)`, the acyclic-coloring count predicted by the coflow
/// polynomial.
pub fn predicted_acyclic_colorings(d: &Digraph, coflow: &IntPolynomial, k: u64) -> BigInt {
    let k = BigInt::from(k);
    num_traits::pow(k.clone(), d.component_count()) * coflow.evaluate(&k)
}
