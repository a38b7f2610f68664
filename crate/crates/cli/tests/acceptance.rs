//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rayon::prelude::*;

use nlflow::matroid::{
    count_nl_group_flows_matroid, count_nl_integer_kflows_matroid, farkas_certificate,
    FarkasCertificate, TuMatrix,
};
use nlflow::oracles::{
    count_acyclic_colorings, count_nl_group_flows, count_nl_integer_kflows, default_k_range,
    describe, digraph_catalog, equivalence_report, fit_integer_flow_rational, flow_degree_bound,
    AbelianGroup, DEFAULT_BUDGET,
};
use nlflow::poly::interpolate_rational;
use nlflow::tournaments::{
    complete_acyclic_nl_poly, complete_digraph_nl_poly, compositions, constant_term, leading_terms,
    linear_term, tournament_with_condensation,
};
use nlflow::{nl_coflow_polynomial, nl_flow_polynomial, ArcSet, Digraph, NlError};

const CATALOG_MAX_N: usize = 4;
const CATALOG_MAX_M: usize = 6;
const MAX_K: u64 = 4;
const BUDGET: u64 = DEFAULT_BUDGET;

const LIMIT_TABLE: Duration = Duration::from_secs(1);
const LIMIT_LATTICE: Duration = Duration::from_secs(30);
const LIMIT_SWEEP: Duration = Duration::from_secs(600);
const LIMIT_COLORING: Duration = Duration::from_secs(300);
const LIMIT_EQUIVALENCE: Duration = Duration::from_secs(600);
const LIMIT_POLYNOMIALITY: Duration = Duration::from_secs(600);
const LIMIT_TERMS: Duration = Duration::from_secs(1);
const LIMIT_CONDENSATION: Duration = Duration::from_secs(120);
const LIMIT_MATROID: Duration = Duration::from_secs(600);

type Verdict = Result<String, String>;

fn catalog() -> Vec<Digraph> {
    digraph_catalog(CATALOG_MAX_N, CATALOG_MAX_M, false)
}

/// First failure message across the catalog, in catalog order.
fn over_catalog(
    cat: &[Digraph],
    check: impl Fn(&Digraph) -> Result<Option<String>, NlError> + Sync,
) -> Result<(), String> {
    let failures: Vec<String> = cat
        .par_iter()
        .map(|d| match check(d) {
            Ok(None) => None,
            Ok(Some(msg)) => Some(format!("[{}] {msg}", describe(d))),
            Err(e) => Some(format!("[{}] error: {e}", describe(d))),
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    match failures.first() {
        None => Ok(()),
        Some(first) => Err(format!("{} failures, first: {first}", failures.len())),
    }
}

fn table_reproduction() -> Verdict {
    let golden = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden");
    for n in 1..=8 {
        let expected = std::fs::read(format!("{golden}/complete_acyclic_n{n}.txt"))
            .map_err(|e| e.to_string())?;
        let out = Command::new(env!("CARGO_BIN_EXE_nlflow"))
            .args(["complete-acyclic", "-n", &n.to_string()])
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() || out.stdout != expected {
            return Err(format!(
                "n={n}: got {:?}, golden {:?}",
                String::from_utf8_lossy(&out.stdout),
                String::from_utf8_lossy(&expected)
            ));
        }
    }
    Ok("n=1..8 byte-identical to golden files".into())
}

fn formula_vs_lattice() -> Verdict {
    for n in 1..=7 {
        let formula = complete_acyclic_nl_poly(n).map_err(|e| e.to_string())?;
        let lattice =
            nl_flow_polynomial(&Digraph::complete_acyclic(n)).map_err(|e| e.to_string())?;
        if formula != lattice {
            return Err(format!("n={n}: formula {formula}, lattice {lattice}"));
        }
    }
    Ok("n=1..7 equal".into())
}

fn oracle_sweep(cat: &[Digraph]) -> Verdict {
    let v4: AbelianGroup = "z2xz2".parse().unwrap();
    over_catalog(cat, |d| {
        let phi = nl_flow_polynomial(d)?;
        for k in 1..=MAX_K {
            let count = count_nl_group_flows(d, &AbelianGroup::cyclic(k), BUDGET)?;
            let predicted = phi.evaluate_at(k as i64);
            if predicted != BigInt::from(count) {
                return Ok(Some(format!("k={k}: phi={predicted}, oracle={count}")));
            }
        }
        let z4 = count_nl_group_flows(d, &AbelianGroup::cyclic(4), BUDGET)?;
        let klein = count_nl_group_flows(d, &v4, BUDGET)?;
        Ok((z4 != klein).then(|| format!("z4={z4}, z2xz2={klein}")))
    })?;
    Ok(format!("{} digraphs, k=1..{MAX_K}, z4 = z2xz2", cat.len()))
}

fn coloring_identity(cat: &[Digraph]) -> Verdict {
    over_catalog(cat, |d| {
        let psi = nl_coflow_polynomial(d)?;
        for k in 1..=MAX_K {
            let count = count_acyclic_colorings(d, k, BUDGET)?;
            let predicted =
                BigInt::from(k).pow(d.component_count() as u32) * psi.evaluate_at(k as i64);
            if predicted != BigInt::from(count) {
                return Ok(Some(format!("k={k}: k^c psi={predicted}, oracle={count}")));
            }
        }
        Ok(None)
    })?;
    Ok(format!("{} loopless digraphs, k=1..{MAX_K}", cat.len()))
}

fn equivalence(cat: &[Digraph]) -> Verdict {
    over_catalog(cat, |d| {
        for k in 2..=MAX_K {
            let r = equivalence_report(d, k, BUDGET)?;
            if !r.consistent() {
                return Ok(Some(format!("{r:?}")));
            }
        }
        Ok(None)
    })?;
    Ok(format!(
        "{} digraphs, k=2..{MAX_K}, every group of order k",
        cat.len()
    ))
}

type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Verdict + 'a>);
type Points = Vec<(i64, BigInt)>;

/// Integer NL-k-flow counts at `k = 2..=bound+3` for every catalog digraph.
fn integer_points(cat: &[Digraph]) -> Result<Vec<Points>, String> {
    cat.par_iter()
        .map(|d| {
            default_k_range(flow_degree_bound(d))
                .into_iter()
                .map(|k| {
                    Ok((
                        k as i64,
                        BigInt::from(count_nl_integer_kflows(d, k, BUDGET)?),
                    ))
                })
                .collect::<Result<Points, NlError>>()
                .map_err(|e| format!("[{}] {e}", describe(d)))
        })
        .collect()
}

/// The first `bound + 1` counts fix the interpolant; the last one is the
/// held-out witness.
fn polynomiality(cat: &[Digraph], points: &OnceLock<Result<Vec<Points>, String>>) -> Verdict {
    let points = points.get_or_init(|| integer_points(cat)).as_ref()?;
    for (d, pts) in cat.iter().zip(points) {
        if let Err(e) = interpolate_rational(pts, flow_degree_bound(d)) {
            return Err(format!("[{}] {e}", describe(d)));
        }
    }
    let c3 = fit_integer_flow_rational(&Digraph::directed_cycle(3), &[2, 3, 4], BUDGET)
        .map_err(|e| e.to_string())?;
    if c3.to_string() != "2x-1" {
        return Err(format!("directed 3-cycle fits {c3}"));
    }
    Ok(format!(
        "{} digraphs, held-out witness matches; 3-cycle fits 2x-1",
        cat.len()
    ))
}

/// The same fits, additionally requiring integer coefficients.
fn integer_coefficients(
    cat: &[Digraph],
    points: &OnceLock<Result<Vec<Points>, String>>,
) -> Verdict {
    let points = points.get_or_init(|| integer_points(cat)).as_ref()?;
    let mut offenders = Vec::new();
    for (d, pts) in cat.iter().zip(points) {
        let fit = interpolate_rational(pts, flow_degree_bound(d)).map_err(|e| e.to_string())?;
        if fit.to_integer().is_none() {
            offenders.push((describe(d), fit.to_string()));
        }
    }
    match offenders.first() {
        None => Ok(format!("{} digraphs, all interpolants integral", cat.len())),
        Some((d, p)) => Err(format!(
            "{}/{} interpolants have non-integer coefficients, first: [{d}] {p}",
            offenders.len(),
            cat.len()
        )),
    }
}

fn term_propositions() -> Verdict {
    let t = |r: Result<i64, NlError>| r.map_err(|e| e.to_string());
    for n in 4..=40 {
        let c = t(constant_term(n))?;
        let table = match n % 3 {
            0 => -1,
            1 => 1,
            _ => 0,
        };
        if c != table || c != -(t(constant_term(n - 1))? + t(constant_term(n - 2))?) {
            return Err(format!("constant_term({n}) = {c}"));
        }
        let l = t(linear_term(n))?;
        let n3 = n as i64;
        let closed = match n % 3 {
            0 => n3 / 3,
            1 => -2 * (n3 - 1) / 3,
            _ => (n3 - 2) / 3,
        };
        if l != closed {
            return Err(format!("linear_term({n}) = {l}, closed form {closed}"));
        }
    }
    for n in 4..=12 {
        let p = complete_acyclic_nl_poly(n).map_err(|e| e.to_string())?;
        if p.coeff(0) != BigInt::from(t(constant_term(n))?)
            || p.coeff(1) != BigInt::from(t(linear_term(n))?)
        {
            return Err(format!("n={n}: low terms of {p} disagree"));
        }
        let top: Vec<(u32, BigInt)> = p.terms().take(2).map(|(e, c)| (e, c.clone())).collect();
        let c2 = |k: usize| (k * (k - 1) / 2) as u32;
        let want = vec![(c2(n - 1), BigInt::from(1)), (c2(n - 2), BigInt::from(-2))];
        let stated: Vec<(u32, BigInt)> = leading_terms(n)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|(e, c)| (e, BigInt::from(c)))
            .collect();
        if top != want || stated != want {
            return Err(format!("n={n}: leading terms {top:?}"));
        }
    }
    Ok("constant n=4..40, linear n=4..40, extraction n=4..12".into())
}

fn condensation() -> Verdict {
    let fig = complete_digraph_nl_poly(&[1, 4, 1]).map_err(|e| e.to_string())?;
    if fig.to_string() != "x^10-2x^6+x^3" {
        return Err(format!("(1,4,1) gives {fig}"));
    }
    let mut tuples = 0;
    for total in 1..=7 {
        for p in 1..=total {
            for comp in compositions(total, p) {
                let sizes = comp.parts();
                if sizes.contains(&2) {
                    continue;
                }
                let d = tournament_with_condensation(sizes).map_err(|e| e.to_string())?;
                let formula = complete_digraph_nl_poly(sizes).map_err(|e| e.to_string())?;
                let lattice = nl_flow_polynomial(&d).map_err(|e| e.to_string())?;
                if formula != lattice {
                    return Err(format!(
                        "sizes {sizes:?}: formula {formula}, lattice {lattice}"
                    ));
                }
                tuples += 1;
            }
        }
    }
    Ok(format!(
        "(1,4,1) = x^10-2x^6+x^3; {tuples} size tuples agree"
    ))
}

fn matroid_agreement(cat: &[Digraph]) -> Verdict {
    over_catalog(cat, |d| {
        let m = TuMatrix::from_incidence(&d.incidence_matrix());
        for k in 1..=MAX_K {
            for g in AbelianGroup::all_of_order(k) {
                let (a, b) = (
                    count_nl_group_flows_matroid(&m, &g, BUDGET)?,
                    count_nl_group_flows(d, &g, BUDGET)?,
                );
                if a != b {
                    return Ok(Some(format!("{g}: matroid {a}, graph {b}")));
                }
            }
            let (a, b) = (
                count_nl_integer_kflows_matroid(&m, k, BUDGET)?,
                count_nl_integer_kflows(d, k, BUDGET)?,
            );
            if a != b {
                return Ok(Some(format!("integer k={k}: matroid {a}, graph {b}")));
            }
        }
        for mask in 0u32..1 << d.m() {
            let s = ArcSet::from_indices(d.m(), (0..d.m()).filter(|i| mask >> i & 1 == 1));
            // errors here are exactly the both/neither cases
            let cert = farkas_certificate(&m, &s)?;
            let positive = matches!(cert, FarkasCertificate::Positive(_));
            if positive != d.contract(&s).is_totally_cyclic() {
                return Ok(Some(format!(
                    "S={s:?}: certificate side disagrees with the graph"
                )));
            }
        }
        Ok(None)
    })?;
    Ok(format!(
        "{} digraphs; counts agree; one certificate per (D, S)",
        cat.len()
    ))
}

fn main() -> ExitCode {
    let cat = catalog();
    let points = OnceLock::new();
    let criteria: Vec<Criterion> = vec![
        (
            "1  table reproduction",
            LIMIT_TABLE,
            Box::new(table_reproduction),
        ),
        (
            "2  formula vs lattice",
            LIMIT_LATTICE,
            Box::new(formula_vs_lattice),
        ),
        (
            "3  oracle sweep",
            LIMIT_SWEEP,
            Box::new(|| oracle_sweep(&cat)),
        ),
        (
            "4  coflow/coloring identity",
            LIMIT_COLORING,
            Box::new(|| coloring_identity(&cat)),
        ),
        (
            "5  equivalence theorem",
            LIMIT_EQUIVALENCE,
            Box::new(|| equivalence(&cat)),
        ),
        (
            "6a integer polynomiality",
            LIMIT_POLYNOMIALITY,
            Box::new(|| polynomiality(&cat, &points)),
        ),
        (
            "6b integer coefficients",
            LIMIT_POLYNOMIALITY,
            Box::new(|| integer_coefficients(&cat, &points)),
        ),
        (
            "7  term propositions",
            LIMIT_TERMS,
            Box::new(term_propositions),
        ),
        (
            "8  condensation theorem",
            LIMIT_CONDENSATION,
            Box::new(condensation),
        ),
        (
            "9  matroid/graph agreement",
            LIMIT_MATROID,
            Box::new(|| matroid_agreement(&cat)),
        ),
    ];
    let mut failed = 0;
    for (name, limit, check) in &criteria {
        let start = Instant::now();
        let verdict = check();
        let elapsed = start.elapsed();
        let verdict = match verdict {
            Ok(msg) if elapsed > *limit => {
                Err(format!("{msg}; took {elapsed:.2?}, limit {limit:?}"))
            }
            v => v,
        };
        match verdict {
            Ok(msg) => println!("PASS  {name:<30} {elapsed:>10.2?}  {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {name:<30} {elapsed:>10.2?}  {msg}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
