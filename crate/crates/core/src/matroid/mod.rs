//! Regular oriented matroids given by totally unimodular matrices.
//!
//! Flows are kernel vectors and coflows are row-space vectors. Everything is
//! exact: rational elimination for kernels and ranks, an exact simplex for
//! positivity questions.

mod farkas;
pub mod linalg;
mod simplex;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

pub use farkas::{
    contract_matroid, farkas_certificate, is_totally_cyclic_matroid, FarkasCertificate, FlowSpace,
};

use crate::arcset::ArcSet;
use crate::error::{NlError, Result};
use crate::graph::{content_lines, parse_fields, IncidenceMatrix};
use crate::oracles::{check_budget, AbelianGroup, BoundedIntegers, FlowValues, GroupValues};
use crate::poly::{interpolate_exact, interpolate_rational, IntPolynomial, RatPolynomial};
use linalg::{q, Q};

/// Default cap on `min(p, q)` for the exhaustive minor check.
pub const DEFAULT_TU_BOUND: usize = 8;

/// A `p x q` matrix with entries in `{-1, 0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TuMatrix {
    p: usize,
    q: usize,
    entries: Vec<Vec<i8>>,
}

impl TuMatrix {
    pub fn new(entries: Vec<Vec<i8>>, cols: usize) -> Result<Self> {
        for (i, row) in entries.iter().enumerate() {
            if row.len() != cols {
                return Err(NlError::InvalidMatrix(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            if let Some(x) = row.iter().find(|x| !(-1..=1).contains(*x)) {
                return Err(NlError::InvalidMatrix(format!(
                    "entry {x} in row {i} is not -1, 0 or 1"
                )));
            }
        }
        Ok(TuMatrix {
            p: entries.len(),
            q: cols,
            entries,
        })
    }

    pub fn from_incidence(inc: &IncidenceMatrix) -> Self {
        TuMatrix {
            p: inc.rows,
            q: inc.cols,
            entries: inc.entries.clone(),
        }
    }

    pub fn rows(&self) -> usize {
        self.p
    }

    pub fn cols(&self) -> usize {
        self.q
    }

    pub fn entry(&self, i: usize, j: usize) -> i8 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i8>] {
        &self.entries
    }

    pub fn to_rational(&self) -> Vec<Vec<Q>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|&x| q(x as i64)).collect())
            .collect()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.to_rational(), self.q)
    }

    /// A maximal linearly independent set of rows, in their original order.
    /// The kernel is unchanged and the result has full row rank.
    pub fn row_basis(&self) -> TuMatrix {
        let mut kept: Vec<Vec<Q>> = Vec::new();
        let mut rows = Vec::new();
        for (i, r) in self.to_rational().into_iter().enumerate() {
            kept.push(r);
            if linalg::rank(&kept, self.q) < kept.len() {
                kept.pop();
            } else {
                rows.push(self.entries[i].clone());
            }
        }
        TuMatrix {
            p: rows.len(),
            q: self.q,
            entries: rows,
        }
    }
}

impl fmt::Display for TuMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.p, self.q)?;
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for TuMatrix {
    type Err = NlError;

    /// `p q` on the first line, then `p` rows of `q` entries.
    fn from_str(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (line, header) = lines.next().ok_or(NlError::Parse {
            line: 1,
            msg: "missing `p q` header".into(),
        })?;
        let pq: Vec<usize> = parse_fields(line, header, 2)?;
        let (p, cols) = (pq[0], pq[1]);
        if cols == 0 {
            // rows without entries have nothing to write down
            if let Some((line, _)) = lines.next() {
                return Err(NlError::Parse {
                    line,
                    msg: "a matrix with 0 columns has no row lines".into(),
                });
            }
            return TuMatrix::new(vec![Vec::new(); p], 0);
        }
        let mut rows = Vec::with_capacity(p);
        for (line, body) in lines {
            let row: Vec<i8> = parse_fields(line, body, cols)?;
            if let Some(x) = row.iter().find(|x| !(-1..=1).contains(*x)) {
                return Err(NlError::Parse {
                    line,
                    msg: format!("entry {x} is not -1, 0 or 1"),
                });
            }
            rows.push(row);
        }
        if rows.len() != p {
            return Err(NlError::Parse {
                line: text.lines().count(),
                msg: format!("header declares {p} rows, found {}", rows.len()),
            });
        }
        TuMatrix::new(rows, cols)
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for i in start..n {
            if n - i < k - acc.len() {
                break;
            }
            acc.push(i);
            go(i + 1, n, k, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn is_totally_unimodular(m: &TuMatrix) -> Result<bool> {
    is_totally_unimodular_with_bound(m, DEFAULT_TU_BOUND)
}

/// Checks every square submatrix. Fails when `min(p, q) > bound`.
pub fn is_totally_unimodular_with_bound(m: &TuMatrix, bound: usize) -> Result<bool> {
    let s_max = m.p.min(m.q);
    if s_max > bound {
        return Err(NlError::ResourceLimit {
            what: "smaller matrix dimension for the minor check",
            limit: bound as u64,
        });
    }
    for s in 2..=s_max {
        let col_sets = subsets(m.q, s);
        for rows in subsets(m.p, s) {
            for cols in &col_sets {
                let minor: Vec<Vec<i64>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| m.entries[i][j] as i64).collect())
                    .collect();
                if linalg::det_integer(&minor).abs() > 1 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Depth-first search over kernel vectors with entries from `values`. A
/// row is checked once its last nonzero column is assigned.
fn kernel_search<V: FlowValues>(m: &TuMatrix, values: &V, visit: &mut dyn FnMut(&[i64])) {
    let mut closes = vec![Vec::new(); m.q];
    for (i, row) in m.entries.iter().enumerate() {
        if let Some(j) = row.iter().rposition(|&x| x != 0) {
            closes[j].push(i);
        }
    }
    let column_rows: Vec<Vec<(usize, i8)>> = (0..m.q)
        .map(|j| {
            (0..m.p)
                .filter(|&i| m.entries[i][j] != 0)
                .map(|i| (i, m.entries[i][j]))
                .collect()
        })
        .collect();

    struct State<'a, V> {
        values: &'a V,
        closes: Vec<Vec<usize>>,
        column_rows: Vec<Vec<(usize, i8)>>,
        balance: Vec<i64>,
        x: Vec<i64>,
    }

    fn go<V: FlowValues>(st: &mut State<'_, V>, j: usize, visit: &mut dyn FnMut(&[i64])) {
        if j == st.x.len() {
            visit(&st.x);
            return;
        }
        for vi in 0..st.values.values().len() {
            let v = st.values.values()[vi];
            let saved: Vec<i64> = st.column_rows[j]
                .iter()
                .map(|&(i, _)| st.balance[i])
                .collect();
            for &(i, sign) in &st.column_rows[j] {
                st.balance[i] = if sign > 0 {
                    st.values.add(st.balance[i], v)
                } else {
                    st.values.sub(st.balance[i], v)
                };
            }
            if st.closes[j].iter().all(|&i| st.balance[i] == 0) {
                st.x[j] = v;
                go(st, j + 1, visit);
                st.x[j] = 0;
            }
            for (&(i, _), b) in st.column_rows[j].iter().zip(saved) {
                st.balance[i] = b;
            }
        }
    }

    let mut st = State {
        values,
        closes,
        column_rows,
        balance: vec![0; m.p],
        x: vec![0; m.q],
    };
    go(&mut st, 0, visit);
}

fn support_counts<V: FlowValues>(m: &TuMatrix, values: &V) -> HashMap<ArcSet, u64> {
    let mut counts = HashMap::new();
    kernel_search(m, values, &mut |x| {
        let s = ArcSet::from_indices(
            m.q,
            x.iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(j, _)| j),
        );
        *counts.entry(s).or_insert(0) += 1;
    });
    counts
}

/// `|G|^(q - p)`, the number of solutions of `Mx = 0` over `G` when `M` has
/// full row rank.
pub fn count_group_kernel(m: &TuMatrix, g: &AbelianGroup) -> Result<BigInt> {
    let rank = m.rank();
    if rank < m.p {
        return Err(NlError::RankDeficient { rank, rows: m.p });
    }
    Ok(num_traits::pow(BigInt::from(g.order()), m.q - m.p))
}

/// Solutions of `Mx = 0` over `G`, counted one by one.
pub fn enumerate_group_kernel(m: &TuMatrix, g: &AbelianGroup, budget: u64) -> Result<u64> {
    check_budget(g.order(), m.q, budget)?;
    let mut count = 0u64;
    kernel_search(m, &GroupValues::new(g), &mut |_| count += 1);
    Ok(count)
}

fn count_nl<V: FlowValues>(m: &TuMatrix, values: &V) -> u64 {
    support_counts(m, values)
        .into_iter()
        .filter(|(s, _)| contract_matroid(m, s).is_totally_cyclic())
        .map(|(_, c)| c)
        .sum()
}

/// Kernel vectors over `G` whose support contracts to a totally cyclic
/// matroid.
pub fn count_nl_group_flows_matroid(m: &TuMatrix, g: &AbelianGroup, budget: u64) -> Result<u64> {
    check_budget(g.order(), m.q, budget)?;
    Ok(count_nl(m, &GroupValues::new(g)))
}

/// Integer kernel vectors with entries in `{0, ±1, ..., ±(k-1)}` whose
/// support contracts to a totally cyclic matroid.
pub fn count_nl_integer_kflows_matroid(m: &TuMatrix, k: u64, budget: u64) -> Result<u64> {
    if k == 0 {
        return Err(NlError::Domain("k must be positive".into()));
    }
    check_budget(2 * k - 1, m.q, budget)?;
    Ok(count_nl(m, &BoundedIntegers::new(k)))
}

/// Whether every kernel vector over `Z_k` is the reduction mod `k` of an
/// integer kernel vector with entries in `{0, ±1, ..., ±(k-1)}`.
pub fn check_lifting(m: &TuMatrix, k: u64, budget: u64) -> Result<bool> {
    if k == 0 {
        return Err(NlError::Domain("k must be positive".into()));
    }
    check_budget(2 * k - 1, m.q, budget)?;
    let z = AbelianGroup::cyclic(k);
    let modulus = k as i64;
    let mut residues: HashSet<Vec<i64>> = HashSet::new();
    kernel_search(m, &BoundedIntegers::new(k), &mut |y| {
        residues.insert(y.iter().map(|v| v.rem_euclid(modulus)).collect());
    });
    let mut lifted = true;
    kernel_search(m, &GroupValues::new(&z), &mut |x| {
        // for a cyclic group the element index is the residue
        if !residues.contains(x) {
            lifted = false;
        }
    });
    Ok(lifted)
}

/// `q - rank(M)`.
pub fn flow_degree_bound_matroid(m: &TuMatrix) -> usize {
    m.q - m.rank()
}

fn matroid_count_points(m: &TuMatrix, ks: &[u64], budget: u64) -> Result<Vec<(i64, BigInt)>> {
    let bound = flow_degree_bound_matroid(m);
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
                BigInt::from(count_nl_integer_kflows_matroid(m, k, budget)?),
            ))
        })
        .collect()
}

/// Integer NL-k-flow counts of the matroid interpolated with degree bound
/// `q - rank(M)`; points past the first `bound + 1` are witnesses.
pub fn fit_integer_flow_polynomial_matroid(
    m: &TuMatrix,
    ks: &[u64],
    budget: u64,
) -> Result<IntPolynomial> {
    interpolate_exact(
        &matroid_count_points(m, ks, budget)?,
        flow_degree_bound_matroid(m),
    )
}

pub fn fit_integer_flow_rational_matroid(
    m: &TuMatrix,
    ks: &[u64],
    budget: u64,
) -> Result<RatPolynomial> {
    interpolate_rational(
        &matroid_count_points(m, ks, budget)?,
        flow_degree_bound_matroid(m),
    )
}
