//! Digraphs with positional arc identity and the structural primitives the
//! rest of the crate is built on: weak components and graphic rank, strong
//! components in condensation order, contraction, deletion and total
//! cyclicity.
//!
//! Vertices are the dense indices `0..n`. Arcs are identified by their
//! position in the arc list, so parallel and antiparallel arcs stay distinct
//! and loops are representable.

use std::fmt;
use std::str::FromStr;

use crate::arcset::ArcSet;
use crate::error::{NlError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

/// Labelling of vertices by weak component of a spanning subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    /// `labels[v]` is the component of `v`, numbered by first appearance.
    pub labels: Vec<usize>,
    pub count: usize,
}

/// Strong components listed in a topological order of the condensation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condensation {
    pub components: Vec<Vec<usize>>,
    /// `label[v]` is the position of the component containing `v`; every arc
    /// `(u, v)` satisfies `label[u] <= label[v]`.
    pub label: Vec<usize>,
}

impl Condensation {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }
}

/// The `n x m` incidence matrix: column `a` is `+1` at the tail and `-1` at
/// the head of arc `a`, and zero for a loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<i8>>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl Digraph {
    pub fn new(n: usize, arcs: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(t, h)) = arcs.iter().find(|&&(t, h)| t >= n || h >= n) {
            return Err(NlError::InvalidDigraph(format!(
                "arc ({t}, {h}) has an endpoint outside 0..{n}"
            )));
        }
        Ok(Digraph { n, arcs })
    }

    /// The complete acyclic digraph on `n` vertices: `i -> j` for all `i < j`.
    pub fn complete_acyclic(n: usize) -> Self {
        let arcs = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        Digraph { n, arcs }
    }

    /// The directed cycle `0 -> 1 -> ... -> n-1 -> 0`.
    pub fn directed_cycle(n: usize) -> Self {
        let arcs = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Digraph { n, arcs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc(&self, a: usize) -> (usize, usize) {
        self.arcs[a]
    }

    pub fn has_loops(&self) -> bool {
        self.arcs.iter().any(|&(t, h)| t == h)
    }

    pub fn all_arcs(&self) -> ArcSet {
        ArcSet::full(self.m())
    }

    pub fn no_arcs(&self) -> ArcSet {
        ArcSet::empty(self.m())
    }

    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        let mut entries = vec![vec![0i8; self.m()]; self.n];
        for (a, &(t, h)) in self.arcs.iter().enumerate() {
            if t != h {
                entries[t][a] = 1;
                entries[h][a] = -1;
            }
        }
        IncidenceMatrix {
            rows: self.n,
            cols: self.m(),
            entries,
        }
    }

    /// Weak components of the spanning subgraph `(V, b)`.
    pub fn weak_components(&self, b: &ArcSet) -> Components {
        let mut uf = UnionFind::new(self.n);
        for a in b.iter() {
            let (t, h) = self.arcs[a];
            uf.union(t, h);
        }
        let mut labels = vec![usize::MAX; self.n];
        let mut root_label = vec![usize::MAX; self.n];
        let mut count = 0;
        for (v, label) in labels.iter_mut().enumerate() {
            let r = uf.find(v);
            if root_label[r] == usize::MAX {
                root_label[r] = count;
                count += 1;
            }
            *label = root_label[r];
        }
        Components { labels, count }
    }

    /// Graphic-matroid rank of `b`: `n` minus the number of weak components
    /// of `(V, b)`.
    pub fn rank(&self, b: &ArcSet) -> usize {
        self.n - self.weak_components(b).count
    }

    pub fn component_count(&self) -> usize {
        self.weak_components(&self.all_arcs()).count
    }

    fn out_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(t, h) in &self.arcs {
            adj[t].push(h);
        }
        adj
    }

    /// Strong components in a topological order of the condensation
    /// (iterative Tarjan; Tarjan emits components in reverse topological
    /// order, so the list is reversed at the end).
    pub fn strongly_connected_components(&self) -> Condensation {
        let adj = self.out_adjacency();
        let n = self.n;
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut found: Vec<Vec<usize>> = Vec::new();
        let mut next = 0;

        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            let mut call: Vec<(usize, usize)> = vec![(root, 0)];
            index[root] = next;
            low[root] = next;
            next += 1;
            stack.push(root);
            on_stack[root] = true;

            while let Some(top) = call.last_mut() {
                let v = top.0;
                if top.1 < adj[v].len() {
                    let w = adj[v][top.1];
                    top.1 += 1;
                    if index[w] == usize::MAX {
                        index[w] = next;
                        low[w] = next;
                        next += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    call.pop();
                    if let Some(&(parent, _)) = call.last() {
                        low[parent] = low[parent].min(low[v]);
                    }
                    if low[v] == index[v] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().expect("tarjan stack underflow");
                            on_stack[w] = false;
                            comp.push(w);
                            if w == v {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        found.push(comp);
                    }
                }
            }
        }

        found.reverse();
        let mut label = vec![0; n];
        for (i, comp) in found.iter().enumerate() {
            for &v in comp {
                label[v] = i;
            }
        }
        Condensation {
            components: found,
            label,
        }
    }

    /// True iff every weak component is strongly connected, i.e. every arc
    /// lies on a directed cycle. Loops and isolated vertices never break it.
    pub fn is_totally_cyclic(&self) -> bool {
        let cond = self.strongly_connected_components();
        self.arcs
            .iter()
            .all(|&(t, h)| cond.label[t] == cond.label[h])
    }

    /// `D/S`: identify the endpoints of every arc of `s`, keep the other arcs
    /// (in order) re-endpointed. Arcs outside `s` that become loops stay.
    pub fn contract(&self, s: &ArcSet) -> Digraph {
        let comps = self.weak_components(s);
        let arcs = self
            .arcs
            .iter()
            .enumerate()
            .filter(|(a, _)| !s.contains(*a))
            .map(|(_, &(t, h))| (comps.labels[t], comps.labels[h]))
            .collect();
        Digraph {
            n: comps.count,
            arcs,
        }
    }

    /// `D - S`: remove the arcs of `s`, keep every vertex.
    pub fn delete(&self, s: &ArcSet) -> Digraph {
        let arcs = self
            .arcs
            .iter()
            .enumerate()
            .filter(|(a, _)| !s.contains(*a))
            .map(|(_, &arc)| arc)
            .collect();
        Digraph { n: self.n, arcs }
    }

    /// Kahn's algorithm, smallest available vertex first. `None` if the
    /// digraph has a directed cycle (including a loop).
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg = vec![0usize; self.n];
        for &(_, h) in &self.arcs {
            indeg[h] += 1;
        }
        let adj = self.out_adjacency();
        let mut ready: std::collections::BTreeSet<usize> =
            (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &w in &adj[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.insert(w);
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Relabels vertices by `perm` (vertex `v` becomes `perm[v]`).
    pub fn relabel(&self, perm: &[usize]) -> Digraph {
        let arcs = self.arcs.iter().map(|&(t, h)| (perm[t], perm[h])).collect();
        Digraph { n: self.n, arcs }
    }
}

impl fmt::Display for Digraph {
    /// The text format: `n m`, then one `tail head` line per arc.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.arcs.len())?;
        for &(t, h) in &self.arcs {
            writeln!(f, "{t} {h}")?;
        }
        Ok(())
    }
}

/// Non-empty, non-comment lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_fields<T: FromStr>(line: usize, text: &str, want: usize) -> Result<Vec<T>> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != want {
        return Err(NlError::Parse {
            line,
            msg: format!("expected {want} fields, found {}", fields.len()),
        });
    }
    fields
        .iter()
        .map(|f| {
            f.parse().map_err(|_| NlError::Parse {
                line,
                msg: format!("cannot parse {f:?}"),
            })
        })
        .collect()
}

impl FromStr for Digraph {
    type Err = NlError;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (line, header) = lines.next().ok_or(NlError::Parse {
            line: 1,
            msg: "missing `n m` header".into(),
        })?;
        let nm: Vec<usize> = parse_fields(line, header, 2)?;
        let (n, m) = (nm[0], nm[1]);
        let mut arcs = Vec::with_capacity(m);
        for (line, body) in lines {
            let th: Vec<usize> = parse_fields(line, body, 2)?;
            if th[0] >= n || th[1] >= n {
                return Err(NlError::Parse {
                    line,
                    msg: format!("endpoint outside 0..{n}"),
                });
            }
            arcs.push((th[0], th[1]));
        }
        if arcs.len() != m {
            return Err(NlError::Parse {
                line: text.lines().count(),
                msg: format!("header declares {m} arcs, found {}", arcs.len()),
            });
        }
        Digraph::new(n, arcs)
    }
}
