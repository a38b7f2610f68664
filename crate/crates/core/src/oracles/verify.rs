use num_bigint::BigInt;
use rayon::prelude::*;

use super::{
    count_acyclic_colorings, count_nl_group_flows, digraph_catalog, equivalence_report,
    AbelianGroup,
};
use crate::error::Result;
use crate::graph::Digraph;
use crate::nl_poly::{nl_coflow_polynomial, nl_flow_polynomial, predicted_acyclic_colorings};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub max_n: usize,
    pub max_m: usize,
    pub max_k: u64,
    pub budget: u64,
    pub loops: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_n: 4,
            max_m: 6,
            max_k: 4,
            budget: super::DEFAULT_BUDGET,
            loops: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub check: String,
    pub digraph: String,
    pub k: u64,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub digraphs: usize,
    pub checks: usize,
    pub mismatches: Vec<Mismatch>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// One-line rendering such as `3: 0>1 1>2 2>0`.
pub fn describe(d: &Digraph) -> String {
    let arcs: Vec<String> = d.arcs().iter().map(|(t, h)| format!("{t}>{h}")).collect();
    if arcs.is_empty() {
        format!("{}:", d.n())
    } else {
        format!("{}: {}", d.n(), arcs.join(" "))
    }
}

struct Checker<'a> {
    d: &'a Digraph,
    checks: usize,
    mismatches: Vec<Mismatch>,
}

impl Checker<'_> {
    fn expect(&mut self, check: &str, k: u64, expected: &BigInt, got: &BigInt) {
        self.checks += 1;
        if expected != got {
            self.mismatches.push(Mismatch {
                check: check.to_string(),
                digraph: describe(self.d),
                k,
                expected: expected.to_string(),
                got: got.to_string(),
            });
        }
    }
}

fn verify_one(d: &Digraph, cfg: &VerifyConfig) -> Result<(usize, Vec<Mismatch>)> {
    let mut c = Checker {
        d,
        checks: 0,
        mismatches: Vec::new(),
    };
    let phi = nl_flow_polynomial(d)?;
    let psi = if d.has_loops() {
        None
    } else {
        Some(nl_coflow_polynomial(d)?)
    };
    for k in 1..=cfg.max_k {
        let predicted = phi.evaluate_at(k as i64);
        let zk = BigInt::from(count_nl_group_flows(
            d,
            &AbelianGroup::cyclic(k),
            cfg.budget,
        )?);
        c.expect("flow-poly", k, &predicted, &zk);
        for g in AbelianGroup::all_of_order(k).into_iter().skip(1) {
            let n = BigInt::from(count_nl_group_flows(d, &g, cfg.budget)?);
            c.expect(&format!("group-{g}"), k, &predicted, &n);
        }
        if let Some(psi) = &psi {
            let colorings = BigInt::from(count_acyclic_colorings(d, k, cfg.budget)?);
            c.expect(
                "colorings",
                k,
                &predicted_acyclic_colorings(d, psi, k),
                &colorings,
            );
        }
        if k >= 2 {
            let r = equivalence_report(d, k, cfg.budget)?;
            let flag = |b: bool| BigInt::from(u8::from(b));
            c.expect("equiv-integer", k, &flag(r.cyclic), &flag(r.integer));
            for (g, exists) in &r.groups {
                c.expect(&format!("equiv-{g}"), k, &flag(r.cyclic), &flag(*exists));
            }
        }
    }
    Ok((c.checks, c.mismatches))
}

/// Compares every formula against its oracle over the digraph catalog.
/// Mismatches are reported in catalog order.
pub fn verify_catalog(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let catalog = digraph_catalog(cfg.max_n, cfg.max_m, cfg.loops);
    let results: Vec<(usize, Vec<Mismatch>)> = catalog
        .par_iter()
        .map(|d| verify_one(d, cfg))
        .collect::<Result<_>>()?;
    let mut report = VerifyReport {
        digraphs: catalog.len(),
        ..Default::default()
    };
    for (checks, mismatches) in results {
        report.checks += checks;
        report.mismatches.extend(mismatches);
    }
    Ok(report)
}
