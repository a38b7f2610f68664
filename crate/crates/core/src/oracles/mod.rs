//! Exhaustive ground truth for the formulas: NL group flows, integer
//! NL-k-flows, acyclic colorings, the equivalence theorem, and polynomiality
//! of integer flow counts.
//!
//! Nothing here uses the lattices or the Möbius function. Flows are found by
//! enumerating arc values in index order and checking conservation at each
//! vertex as soon as its last incident arc has been assigned; a flow is NL
//! when contracting its support leaves a totally cyclic digraph.

mod catalog;
mod group;
mod verify;

use std::collections::HashMap;

use num_bigint::BigInt;

pub use catalog::digraph_catalog;
pub use group::{AbelianGroup, GroupTables};
pub use verify::{describe, verify_catalog, Mismatch, VerifyConfig, VerifyReport};

use crate::arcset::ArcSet;
use crate::error::{NlError, Result};
use crate::graph::Digraph;
use crate::poly::{interpolate_exact, interpolate_rational, IntPolynomial, RatPolynomial};

/// Default cap on the number of candidate assignments an oracle may face.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Fails unless `base^exp <= budget`.
pub(crate) fn check_budget(base: u64, exp: usize, budget: u64) -> Result<()> {
    let mut total: u64 = 1;
    for _ in 0..exp {
        total = match total.checked_mul(base) {
            Some(t) if t <= budget => t,
            _ => {
                return Err(NlError::BudgetExceeded {
                    needed: format!("{base}^{exp}"),
                    budget,
                })
            }
        };
    }
    if total > budget {
        return Err(NlError::BudgetExceeded {
            needed: format!("{base}^{exp}"),
            budget,
        });
    }
    Ok(())
}

/// A set of arc values together with the arithmetic used to balance them.
/// The value `0` is the zero of the arithmetic.
pub(crate) trait FlowValues {
    fn values(&self) -> &[i64];
    fn add(&self, a: i64, b: i64) -> i64;
    fn sub(&self, a: i64, b: i64) -> i64;
}

pub(crate) struct GroupValues {
    tables: GroupTables,
    values: Vec<i64>,
}

impl GroupValues {
    pub(crate) fn new(g: &AbelianGroup) -> Self {
        let tables = g.tables();
        let values = (0..tables.order as i64).collect();
        GroupValues { tables, values }
    }
}

impl FlowValues for GroupValues {
    fn values(&self) -> &[i64] {
        &self.values
    }
    fn add(&self, a: i64, b: i64) -> i64 {
        self.tables.add(a as usize, b as usize) as i64
    }
    fn sub(&self, a: i64, b: i64) -> i64 {
        self.tables.sub(a as usize, b as usize) as i64
    }
}

/// `{0, ±1, ..., ±(k-1)}` with exact integer arithmetic.
pub(crate) struct BoundedIntegers {
    values: Vec<i64>,
}

impl BoundedIntegers {
    pub(crate) fn new(k: u64) -> Self {
        let t = k as i64 - 1;
        BoundedIntegers {
            values: (-t..=t).collect(),
        }
    }
}

impl FlowValues for BoundedIntegers {
    fn values(&self) -> &[i64] {
        &self.values
    }
    fn add(&self, a: i64, b: i64) -> i64 {
        a + b
    }
    fn sub(&self, a: i64, b: i64) -> i64 {
        a - b
    }
}

struct FlowSearch<'a, V: FlowValues> {
    d: &'a Digraph,
    values: &'a V,
    /// vertices whose last incident non-loop arc is `a`
    closes: Vec<Vec<usize>>,
    balance: Vec<i64>,
    support: ArcSet,
    counts: HashMap<ArcSet, u64>,
}

impl<V: FlowValues> FlowSearch<'_, V> {
    fn run(&mut self, a: usize) {
        if a == self.d.m() {
            match self.counts.get_mut(&self.support) {
                Some(c) => *c += 1,
                None => {
                    self.counts.insert(self.support.clone(), 1);
                }
            }
            return;
        }
        let (t, h) = self.d.arc(a);
        for &v in self.values.values() {
            let (bt, bh) = (self.balance[t], self.balance[h]);
            if t != h {
                self.balance[t] = self.values.add(bt, v);
                self.balance[h] = self.values.sub(self.balance[h], v);
            }
            if self.closes[a].iter().all(|&u| self.balance[u] == 0) {
                if v != 0 {
                    self.support.insert(a);
                }
                self.run(a + 1);
                self.support.remove(a);
            }
            self.balance[t] = bt;
            self.balance[h] = bh;
        }
    }
}

/// Number of flows per support, over every assignment from `values`.
fn flow_support_counts<V: FlowValues>(d: &Digraph, values: &V) -> Vec<(ArcSet, u64)> {
    let mut closes = vec![Vec::new(); d.m()];
    let mut last = vec![None; d.n()];
    for (a, &(t, h)) in d.arcs().iter().enumerate() {
        if t != h {
            last[t] = Some(a);
            last[h] = Some(a);
        }
    }
    for (v, l) in last.iter().enumerate() {
        if let Some(a) = l {
            closes[*a].push(v);
        }
    }
    let mut search = FlowSearch {
        d,
        values,
        closes,
        balance: vec![0; d.n()],
        support: d.no_arcs(),
        counts: HashMap::new(),
    };
    search.run(0);
    let mut out: Vec<(ArcSet, u64)> = search.counts.into_iter().collect();
    out.sort_by_key(|(s, _)| s.to_vec());
    out
}

fn is_nl_support(d: &Digraph, support: &ArcSet) -> bool {
    d.contract(support).is_totally_cyclic()
}

/// Kirchhoff conservation in `g` at every vertex; group elements are the
/// mixed-radix indices of [`AbelianGroup::encode`].
pub fn is_group_flow(d: &Digraph, g: &AbelianGroup, f: &[usize]) -> bool {
    assert_eq!(f.len(), d.m(), "flow must assign every arc");
    let t = g.tables();
    let mut balance = vec![0usize; d.n()];
    for (&(tail, head), &x) in d.arcs().iter().zip(f) {
        balance[tail] = t.add(balance[tail], x);
        balance[head] = t.sub(balance[head], x);
    }
    balance.iter().all(|&b| b == 0)
}

/// Exact conservation over the integers.
pub fn is_integer_flow(d: &Digraph, f: &[i64]) -> bool {
    assert_eq!(f.len(), d.m(), "flow must assign every arc");
    let mut balance = vec![0i64; d.n()];
    for (&(tail, head), &x) in d.arcs().iter().zip(f) {
        balance[tail] += x;
        balance[head] -= x;
    }
    balance.iter().all(|&b| b == 0)
}

/// Supports of all `G`-flows with their multiplicities.
pub fn group_flow_supports(
    d: &Digraph,
    g: &AbelianGroup,
    budget: u64,
) -> Result<Vec<(ArcSet, u64)>> {
    check_budget(g.order(), d.m(), budget)?;
    Ok(flow_support_counts(d, &GroupValues::new(g)))
}

pub fn count_nl_group_flows(d: &Digraph, g: &AbelianGroup, budget: u64) -> Result<u64> {
    Ok(group_flow_supports(d, g, budget)?
        .into_iter()
        .filter(|(s, _)| is_nl_support(d, s))
        .map(|(_, c)| c)
        .sum())
}

/// Supports of all integer flows with entries in `{0, ±1, ..., ±(k-1)}`.
pub fn integer_flow_supports(d: &Digraph, k: u64, budget: u64) -> Result<Vec<(ArcSet, u64)>> {
    if k == 0 {
        return Err(NlError::Domain("k must be positive".into()));
    }
    check_budget(2 * k - 1, d.m(), budget)?;
    Ok(flow_support_counts(d, &BoundedIntegers::new(k)))
}

pub fn count_nl_integer_kflows(d: &Digraph, k: u64, budget: u64) -> Result<u64> {
    Ok(integer_flow_supports(d, k, budget)?
        .into_iter()
        .filter(|(s, _)| is_nl_support(d, s))
        .map(|(_, c)| c)
        .sum())
}

/// Maps `V -> {0..k-1}` in which every color class induces an acyclic
/// subdigraph.
pub fn count_acyclic_colorings(d: &Digraph, k: u64, budget: u64) -> Result<u64> {
    if d.has_loops() {
        return Err(NlError::LoopPresent);
    }
    check_budget(k, d.n(), budget)?;
    let n = d.n();
    if k == 0 {
        return Ok(u64::from(n == 0));
    }
    let mut coloring = vec![0u64; n];
    let mut count = 0;
    loop {
        let bichromatic = ArcSet::from_indices(
            d.m(),
            d.arcs()
                .iter()
                .enumerate()
                .filter(|(_, &(t, h))| coloring[t] != coloring[h])
                .map(|(a, _)| a),
        );
        if d.delete(&bichromatic).is_acyclic() {
            count += 1;
        }
        // next coloring, odometer style
        let mut i = 0;
        loop {
            if i == n {
                return Ok(count);
            }
            coloring[i] += 1;
            if coloring[i] < k {
                break;
            }
            coloring[i] = 0;
            i += 1;
        }
    }
}

/// Existence of NL flows of each kind, for one `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub k: u64,
    pub cyclic: bool,
    pub groups: Vec<(AbelianGroup, bool)>,
    pub integer: bool,
}

impl EquivalenceReport {
    pub fn consistent(&self) -> bool {
        self.integer == self.cyclic && self.groups.iter().all(|(_, e)| *e == self.cyclic)
    }
}

pub fn equivalence_report(d: &Digraph, k: u64, budget: u64) -> Result<EquivalenceReport> {
    if k < 2 {
        return Err(NlError::Domain(
            "the equivalence theorem needs k >= 2".into(),
        ));
    }
    let cyclic = count_nl_group_flows(d, &AbelianGroup::cyclic(k), budget)? > 0;
    let groups = AbelianGroup::all_of_order(k)
        .into_iter()
        .map(|g| {
            let exists = count_nl_group_flows(d, &g, budget)? > 0;
            Ok((g, exists))
        })
        .collect::<Result<Vec<_>>>()?;
    let integer = count_nl_integer_kflows(d, k, budget)? > 0;
    Ok(EquivalenceReport {
        k,
        cyclic,
        groups,
        integer,
    })
}

/// Whether an NL-`Z_k`-flow, an NL-`G`-flow for every `G` of order `k`, and
/// an integer NL-`k`-flow either all exist or all fail to exist.
pub fn check_equivalence_theorem(d: &Digraph, k: u64, budget: u64) -> Result<bool> {
    Ok(equivalence_report(d, k, budget)?.consistent())
}

/// `m - rank(A)`, the dimension of the flow space.
pub fn flow_degree_bound(d: &Digraph) -> usize {
    d.m() - d.rank(&d.all_arcs())
}

/// The `k` values `2..=bound+3`: `bound + 1` interpolation nodes plus one
/// held-out witness.
pub fn default_k_range(degree_bound: usize) -> Vec<u64> {
    (2..=degree_bound as u64 + 3).collect()
}

fn integer_count_points(d: &Digraph, ks: &[u64], budget: u64) -> Result<Vec<(i64, BigInt)>> {
    let bound = flow_degree_bound(d);
    if ks.len() < bound + 2 {
        return Err(NlError::InsufficientPoints {
            needed: bound + 2,
            got: ks.len(),
        });
    }
    ks.iter()
        .map(|&k| {
            Ok((
                k as i64,
                BigInt::from(count_nl_integer_kflows(d, k, budget)?),
            ))
        })
        .collect()
}

/// Interpolates integer NL-k-flow counts with degree bound `m - rank(A)`,
/// checking every point past the first `bound + 1` as a witness. The
/// interpolant must have integer coefficients.
pub fn fit_integer_flow_polynomial(d: &Digraph, ks: &[u64], budget: u64) -> Result<IntPolynomial> {
    let points = integer_count_points(d, ks, budget)?;
    interpolate_exact(&points, flow_degree_bound(d))
}

/// As [`fit_integer_flow_polynomial`], allowing rational coefficients.
pub fn fit_integer_flow_rational(d: &Digraph, ks: &[u64], budget: u64) -> Result<RatPolynomial> {
    let points = integer_count_points(d, ks, budget)?;
    interpolate_rational(&points, flow_degree_bound(d))
}
