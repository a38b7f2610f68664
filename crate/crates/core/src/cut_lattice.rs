//! Directed cuts, directed cycles, and the union-closed lattices they
//! generate.
//!
//! A lattice here is the family `{ A \ C : C a union of generators }`
//! ordered by reverse inclusion, where the generators are either the dicuts
//! or the directed cycles of a digraph. The empty union is admitted, so the
//! full arc set `A` is always an element, and it is the least element of the
//! order.

use std::collections::HashSet;

use num_bigint::BigInt;

use crate::arcset::ArcSet;
use crate::error::{NlError, Result};
use crate::graph::Digraph;
use crate::poset::FinitePoset;

pub const DEFAULT_LATTICE_LIMIT: usize = 1_000_000;

/// The distinct nonempty dicuts of a digraph, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DicutFamily {
    cuts: Vec<ArcSet>,
}

impl DicutFamily {
    pub fn cuts(&self) -> &[ArcSet] {
        &self.cuts
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    /// Whether `s` meets every member.
    pub fn is_transversal(&self, s: &ArcSet) -> bool {
        self.cuts.iter().all(|c| !c.is_disjoint(s))
    }
}

/// Complements of unions of a generating family, ordered by `⊇`.
///
/// `elements()[0]` is always the full arc set; the rest are sorted by
/// decreasing size, then by index content.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutLattice {
    universe: usize,
    elements: Vec<ArcSet>,
}

impl CutLattice {
    fn from_generators(universe: usize, generators: &[ArcSet], limit: usize) -> Result<Self> {
        let mut seen: HashSet<ArcSet> = HashSet::new();
        let empty = ArcSet::empty(universe);
        seen.insert(empty.clone());
        let mut frontier = vec![empty];
        while let Some(u) = frontier.pop() {
            for g in generators {
                let next = u.union(g);
                if !seen.contains(&next) {
                    if seen.len() >= limit {
                        return Err(NlError::ResourceLimit {
                            what: "lattice size",
                            limit: limit as u64,
                        });
                    }
                    seen.insert(next.clone());
                    frontier.push(next);
                }
            }
        }
        let mut elements: Vec<ArcSet> = seen.into_iter().map(|c| c.complement()).collect();
        elements.sort_by(|a, b| {
            b.len()
                .cmp(&a.len())
                .then_with(|| a.to_vec().cmp(&b.to_vec()))
        });
        Ok(CutLattice { universe, elements })
    }

    pub fn elements(&self) -> &[ArcSet] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// The lattice as a [`FinitePoset`] with `x <= y` iff `x ⊇ y`.
    pub fn poset(&self) -> FinitePoset<ArcSet, fn(&ArcSet, &ArcSet) -> bool> {
        fn superset(a: &ArcSet, b: &ArcSet) -> bool {
            b.is_subset(a)
        }
        FinitePoset::new(
            self.elements.clone(),
            superset as fn(&ArcSet, &ArcSet) -> bool,
        )
    }

    /// `mu(A, B)` for every element `B`, in element order.
    pub fn mobius_from_full(&self) -> Vec<BigInt> {
        self.poset().mobius_row(0)
    }
}

/// All nonempty `δ(U)` with no arc entering `U`, for `∅ ⊊ U ⊊ V`.
///
/// `U` ranges over the predecessor-closed unions of strong components, in
/// condensation order, so the work is bounded by the ideals of the
/// condensation rather than by `2^n`.
pub fn enumerate_dicuts(d: &Digraph) -> Result<DicutFamily> {
    enumerate_dicuts_with_limit(d, DEFAULT_LATTICE_LIMIT)
}

pub fn enumerate_dicuts_with_limit(d: &Digraph, limit: usize) -> Result<DicutFamily> {
    let cond = d.strongly_connected_components();
    let k = cond.len();
    let mut preds = vec![Vec::new(); k];
    for &(t, h) in d.arcs() {
        let (ct, ch) = (cond.label[t], cond.label[h]);
        if ct != ch && !preds[ch].contains(&ct) {
            preds[ch].push(ct);
        }
    }

    let mut cuts: HashSet<ArcSet> = HashSet::new();
    let mut chosen = vec![false; k];
    let mut visited = 0usize;
    let mut err = None;
    ideals(0, &preds, &mut chosen, &mut |ideal: &[bool]| {
        visited += 1;
        if visited > limit {
            err = Some(NlError::ResourceLimit {
                what: "condensation ideal count",
                limit: limit as u64,
            });
            return false;
        }
        let size = ideal.iter().filter(|&&b| b).count();
        if size == 0 || size == k {
            return true;
        }
        let cut = ArcSet::from_indices(
            d.m(),
            d.arcs()
                .iter()
                .enumerate()
                .filter(|(_, &(t, h))| ideal[cond.label[t]] && !ideal[cond.label[h]])
                .map(|(a, _)| a),
        );
        if !cut.is_empty() {
            cuts.insert(cut);
        }
        true
    });
    if let Some(e) = err {
        return Err(e);
    }
    let mut cuts: Vec<ArcSet> = cuts.into_iter().collect();
    cuts.sort_by_key(|c| c.to_vec());
    Ok(DicutFamily { cuts })
}

/// Visits every predecessor-closed subset of `0..preds.len()` (components in
/// topological order). Returns false once the visitor asks to stop.
fn ideals(
    i: usize,
    preds: &[Vec<usize>],
    chosen: &mut Vec<bool>,
    visit: &mut dyn FnMut(&[bool]) -> bool,
) -> bool {
    if i == preds.len() {
        return visit(chosen);
    }
    chosen[i] = false;
    if !ideals(i + 1, preds, chosen, visit) {
        return false;
    }
    if preds[i].iter().all(|&p| chosen[p]) {
        chosen[i] = true;
        let go_on = ideals(i + 1, preds, chosen, visit);
        chosen[i] = false;
        return go_on;
    }
    true
}

pub fn build_cut_lattice(d: &Digraph) -> Result<CutLattice> {
    build_cut_lattice_with_limit(d, DEFAULT_LATTICE_LIMIT)
}

pub fn build_cut_lattice_with_limit(d: &Digraph, limit: usize) -> Result<CutLattice> {
    let family = enumerate_dicuts_with_limit(d, limit)?;
    CutLattice::from_generators(d.m(), family.cuts(), limit)
}

/// `S` is a dijoin iff `D/S` is totally cyclic.
pub fn is_dijoin(d: &Digraph, s: &ArcSet) -> bool {
    d.contract(s).is_totally_cyclic()
}

/// Arc sets of all elementary directed cycles, including loops and the
/// 2-cycles of antiparallel pairs. Parallel arcs yield distinct cycles.
///
/// Each cycle is found once, rooted at its smallest vertex.
pub fn enumerate_directed_cycles(d: &Digraph) -> Result<Vec<ArcSet>> {
    enumerate_directed_cycles_with_limit(d, DEFAULT_LATTICE_LIMIT)
}

pub fn enumerate_directed_cycles_with_limit(d: &Digraph, limit: usize) -> Result<Vec<ArcSet>> {
    let mut out_arcs = vec![Vec::new(); d.n()];
    for (a, &(t, _)) in d.arcs().iter().enumerate() {
        out_arcs[t].push(a);
    }

    struct Search<'a> {
        d: &'a Digraph,
        out_arcs: Vec<Vec<usize>>,
        on_path: Vec<bool>,
        path: Vec<usize>,
        found: Vec<ArcSet>,
        limit: usize,
    }

    impl Search<'_> {
        fn walk(&mut self, root: usize, v: usize) -> Result<()> {
            for idx in 0..self.out_arcs[v].len() {
                let a = self.out_arcs[v][idx];
                let h = self.d.arc(a).1;
                if h == root {
                    if self.found.len() >= self.limit {
                        return Err(NlError::ResourceLimit {
                            what: "directed cycle count",
                            limit: self.limit as u64,
                        });
                    }
                    self.path.push(a);
                    self.found
                        .push(ArcSet::from_indices(self.d.m(), self.path.iter().copied()));
                    self.path.pop();
                } else if h > root && !self.on_path[h] {
                    self.on_path[h] = true;
                    self.path.push(a);
                    self.walk(root, h)?;
                    self.path.pop();
                    self.on_path[h] = false;
                }
            }
            Ok(())
        }
    }

    let mut search = Search {
        d,
        out_arcs,
        on_path: vec![false; d.n()],
        path: Vec::new(),
        found: Vec::new(),
        limit,
    };
    for root in 0..d.n() {
        search.on_path[root] = true;
        search.walk(root, root)?;
        search.on_path[root] = false;
    }
    let mut cycles = search.found;
    cycles.sort_by_key(|c| c.to_vec());
    Ok(cycles)
}

pub fn build_cycle_lattice(d: &Digraph) -> Result<CutLattice> {
    build_cycle_lattice_with_limit(d, DEFAULT_LATTICE_LIMIT)
}

pub fn build_cycle_lattice_with_limit(d: &Digraph, limit: usize) -> Result<CutLattice> {
    let cycles = enumerate_directed_cycles_with_limit(d, limit)?;
    CutLattice::from_generators(d.m(), &cycles, limit)
}

/// `S` is a feedback arc set iff `D - S` is acyclic.
pub fn is_feedback_arc_set(d: &Digraph, s: &ArcSet) -> bool {
    d.delete(s).is_acyclic()
}
