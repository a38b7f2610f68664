//! Closed forms for NL-flow polynomials of complete digraphs.
//!
//! A complete digraph whose strong components have sizes `k_1, ..., k_d` in
//! topological order has
//!
//! ```text
//! phi = sum over compositions (d_1..d_p) of d of (-1)^(p-1) prod_j x^C(n_j - 1, 2)
//! ```
//!
//! where `n_j` is the total size of the `j`-th block of consecutive
//! components. The complete acyclic digraph is the case `k_i = 1`.

use num_bigint::BigInt;

use crate::error::{NlError, Result};
use crate::graph::Digraph;
use crate::poly::IntPolynomial;

/// An ordered tuple of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(NlError::Domain(format!(
                "composition parts must be positive: {parts:?}"
            )));
        }
        Ok(Composition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// All compositions of `n` into `p` parts, in lexicographic order. Empty
/// unless `1 <= p <= n`.
pub fn compositions(n: usize, p: usize) -> Vec<Composition> {
    fn go(rest: usize, slots: usize, acc: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if slots == 1 {
            acc.push(rest);
            out.push(Composition { parts: acc.clone() });
            acc.pop();
            return;
        }
        for first in 1..=rest - (slots - 1) {
            acc.push(first);
            go(rest - first, slots - 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if p >= 1 && p <= n {
        go(n, p, &mut Vec::new(), &mut out);
    }
    out
}

fn binom2(n: usize) -> u32 {
    (n * n.saturating_sub(1) / 2) as u32
}

/// The exponent `C(size - 1, 2)` contributed by a block of `size` vertices.
fn block_exponent(size: usize) -> u32 {
    binom2(size.saturating_sub(1))
}

/// Sums over compositions by splitting off the first block: with `G(i)` the
/// polynomial of `sizes[i..]`,
/// `G(i) = x^e(i..d) - sum_{i<j<d} x^e(i..j) G(j)`.
fn block_sum(sizes: &[usize]) -> IntPolynomial {
    let d = sizes.len();
    let mut prefix = vec![0usize; d + 1];
    for (i, &k) in sizes.iter().enumerate() {
        prefix[i + 1] = prefix[i] + k;
    }
    let one = BigInt::from(1);
    let mut g = vec![IntPolynomial::zero(); d + 1];
    for i in (0..d).rev() {
        let mut acc = IntPolynomial::monomial(one.clone(), block_exponent(prefix[d] - prefix[i]));
        for j in i + 1..d {
            let e = block_exponent(prefix[j] - prefix[i]);
            acc = &acc - &g[j].mul_monomial(&one, e);
        }
        g[i] = acc;
    }
    g.swap_remove(0)
}

/// Closed form for the complete acyclic digraph on `n >= 1` vertices.
pub fn complete_acyclic_nl_poly(n: usize) -> Result<IntPolynomial> {
    if n == 0 {
        return Err(NlError::Domain("n must be at least 1".into()));
    }
    Ok(block_sum(&vec![1; n]))
}

/// Closed form for a complete digraph with strong components of the given
/// sizes, listed in topological order.
pub fn complete_digraph_nl_poly(sizes: &[usize]) -> Result<IntPolynomial> {
    if sizes.is_empty() {
        return Err(NlError::Domain("component size list is empty".into()));
    }
    if sizes.contains(&0) {
        return Err(NlError::Domain(format!(
            "component sizes must be positive: {sizes:?}"
        )));
    }
    Ok(block_sum(sizes))
}

/// The same sum evaluated term by term over every composition.
pub fn complete_digraph_nl_poly_by_compositions(sizes: &[usize]) -> Result<IntPolynomial> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(NlError::Domain(format!("bad component sizes {sizes:?}")));
    }
    let d = sizes.len();
    let mut total = IntPolynomial::zero();
    for p in 1..=d {
        let sign = if p % 2 == 1 { 1 } else { -1 };
        for comp in compositions(d, p) {
            let mut start = 0;
            let mut exp = 0;
            for &dj in comp.parts() {
                let nj: usize = sizes[start..start + dj].iter().sum();
                exp += block_exponent(nj);
                start += dj;
            }
            total.add_term(BigInt::from(sign), exp);
        }
    }
    Ok(total)
}

/// `phi(0)` for the complete acyclic digraph on `n >= 1` vertices.
pub fn constant_term(n: usize) -> Result<i64> {
    if n == 0 {
        return Err(NlError::Domain("constant_term needs n >= 1".into()));
    }
    Ok(match n % 3 {
        0 => -1,
        1 => 1,
        _ => 0,
    })
}

/// Coefficient of `x` for the complete acyclic digraph, `n >= 4`.
pub fn linear_term(n: usize) -> Result<i64> {
    if n < 4 {
        return Err(NlError::Domain("linear_term needs n >= 4".into()));
    }
    let n = n as i64;
    Ok(match n % 3 {
        0 => n / 3,
        1 => -2 * (n - 1) / 3,
        _ => (n - 2) / 3,
    })
}

/// The two highest-degree terms `(exponent, coefficient)`, `n >= 4`.
pub fn leading_terms(n: usize) -> Result<Vec<(u32, i64)>> {
    if n < 4 {
        return Err(NlError::Domain("leading_terms needs n >= 4".into()));
    }
    Ok(vec![(binom2(n - 1), 1), (binom2(n - 2), -2)])
}

/// Arcs `(u, v)` of a strong tournament on `k` vertices. `None` for `k = 2`.
///
/// Odd `k` is rotational: `i` beats `i+1, ..., i+(k-1)/2` mod `k`. Even `k`
/// uses the path `0 -> 1 -> ... -> k-1`, the arc `k-1 -> 0`, and `i -> j`
/// for every other pair `i < j`.
pub fn strong_tournament(k: usize) -> Option<Vec<(usize, usize)>> {
    match k {
        0 => Some(Vec::new()),
        1 => Some(Vec::new()),
        2 => None,
        _ => {
            let mut arcs = Vec::with_capacity(k * (k - 1) / 2);
            for i in 0..k {
                for j in i + 1..k {
                    let forward = if k % 2 == 1 {
                        j - i <= (k - 1) / 2
                    } else {
                        !(i == 0 && j == k - 1)
                    };
                    arcs.push(if forward { (i, j) } else { (j, i) });
                }
            }
            Some(arcs)
        }
    }
}

/// A tournament whose strong components have the given sizes, in order:
/// each component is [`strong_tournament`] on consecutive vertices and
/// every arc between components points forward.
pub fn tournament_with_condensation(sizes: &[usize]) -> Result<Digraph> {
    if sizes.is_empty() || sizes.iter().any(|&k| k == 0 || k == 2) {
        return Err(NlError::Domain(format!(
            "no tournament has strong components of sizes {sizes:?}"
        )));
    }
    let n: usize = sizes.iter().sum();
    let mut block = Vec::with_capacity(n);
    let mut offset = Vec::with_capacity(sizes.len());
    let mut local = vec![Vec::new(); sizes.len()];
    let mut start = 0;
    for (b, &k) in sizes.iter().enumerate() {
        block.extend(std::iter::repeat_n(b, k));
        offset.push(start);
        local[b] = strong_tournament(k).expect("size 2 excluded above");
        start += k;
    }
    let mut arcs = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            if block[u] != block[v] {
                arcs.push((u, v));
                continue;
            }
            let (b, s) = (block[u], offset[block[u]]);
            let (i, j) = (u - s, v - s);
            if local[b].contains(&(i, j)) {
                arcs.push((u, v));
            } else {
                arcs.push((v, u));
            }
        }
    }
    Digraph::new(n, arcs)
}
