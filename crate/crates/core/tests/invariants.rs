use num_bigint::BigInt;
use proptest::prelude::*;

use nlflow::cut_lattice::{
    build_cut_lattice, enumerate_dicuts, enumerate_directed_cycles, is_dijoin, is_feedback_arc_set,
};
use nlflow::oracles::{
    count_acyclic_colorings, count_nl_group_flows, AbelianGroup, DEFAULT_BUDGET,
};
use nlflow::{nl_coflow_polynomial, nl_flow_polynomial, ArcSet, Digraph, IntPolynomial};

fn digraph(max_n: usize, max_m: usize, loops: bool) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n), 0..=max_m).prop_map(move |arcs| {
            let arcs = arcs.into_iter().filter(|(t, h)| loops || t != h).collect();
            Digraph::new(n, arcs).unwrap()
        })
    })
}

fn with_subset(max_n: usize, max_m: usize) -> impl Strategy<Value = (Digraph, ArcSet)> {
    digraph(max_n, max_m, true).prop_flat_map(|d| {
        let m = d.m();
        (Just(d), prop::collection::vec(any::<bool>(), m)).prop_map(|(d, bits)| {
            let s = ArcSet::from_indices(
                bits.len(),
                bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
            );
            (d, s)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_is_monotone_and_submodular((d, s) in with_subset(6, 8), extra in 0usize..8) {
        let mut t = s.clone();
        if d.m() > 0 {
            t.insert(extra % d.m());
        }
        let (rs, rt) = (d.rank(&s), d.rank(&t));
        prop_assert!(rs <= rt && rt <= rs + 1);
        prop_assert!(rs <= s.len());
        prop_assert_eq!(d.rank(&d.all_arcs()) + d.component_count(), d.n());
    }

    #[test]
    fn contracting_more_keeps_total_cyclicity((d, s) in with_subset(5, 7), extra in 0usize..7) {
        let mut t = s.clone();
        if d.m() > 0 {
            t.insert(extra % d.m());
        }
        if d.contract(&s).is_totally_cyclic() {
            prop_assert!(d.contract(&t).is_totally_cyclic());
        }
    }

    #[test]
    fn dijoins_are_dicut_transversals((d, s) in with_subset(5, 7)) {
        let cuts = enumerate_dicuts(&d).unwrap();
        prop_assert_eq!(is_dijoin(&d, &s), cuts.is_transversal(&s));
    }

    #[test]
    fn feedback_sets_meet_every_cycle((d, s) in with_subset(5, 7)) {
        let cycles = enumerate_directed_cycles(&d).unwrap();
        let meets_all = cycles.iter().all(|c| !c.is_disjoint(&s));
        prop_assert_eq!(is_feedback_arc_set(&d, &s), meets_all);
    }

    #[test]
    fn dicut_lattice_is_closed_under_union(d in digraph(5, 7, false)) {
        let lattice = build_cut_lattice(&d).unwrap();
        let els = lattice.elements();
        prop_assert_eq!(&els[0], &d.all_arcs());
        let set: std::collections::HashSet<&ArcSet> = els.iter().collect();
        for a in els {
            for b in els {
                // complements of unions of dicuts: closed under intersection
                prop_assert!(set.contains(&a.intersection(b)));
            }
        }
    }

    #[test]
    fn flow_polynomial_at_one_detects_total_cyclicity(d in digraph(5, 7, true)) {
        let at_one = nl_flow_polynomial(&d).unwrap().evaluate_at(1);
        prop_assert_eq!(at_one, BigInt::from(u8::from(d.is_totally_cyclic())));
    }

    #[test]
    fn flow_polynomial_matches_z_k_count(d in digraph(4, 6, true), k in 1u64..5) {
        let phi = nl_flow_polynomial(&d).unwrap();
        let count = count_nl_group_flows(&d, &AbelianGroup::cyclic(k), DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(phi.evaluate_at(k as i64), BigInt::from(count));
    }

    #[test]
    fn coflow_polynomial_counts_acyclic_colorings(d in digraph(4, 6, false), k in 1u64..5) {
        let psi = nl_coflow_polynomial(&d).unwrap();
        let count = count_acyclic_colorings(&d, k, DEFAULT_BUDGET).unwrap();
        let predicted = BigInt::from(k).pow(d.component_count() as u32) * psi.evaluate_at(k as i64);
        prop_assert_eq!(predicted, BigInt::from(count));
    }

    #[test]
    fn polynomials_are_relabelling_invariant(d in digraph(5, 6, true), seed in any::<u64>()) {
        let n = d.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut x = seed;
        for i in (1..n).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (x >> 33) as usize % (i + 1));
        }
        let e = d.relabel(&perm);
        prop_assert_eq!(nl_flow_polynomial(&d).unwrap(), nl_flow_polynomial(&e).unwrap());
        if !d.has_loops() {
            prop_assert_eq!(nl_coflow_polynomial(&d).unwrap(), nl_coflow_polynomial(&e).unwrap());
        }
    }

    #[test]
    fn text_format_round_trips(d in digraph(6, 8, true)) {
        let back: Digraph = d.to_string().parse().unwrap();
        prop_assert_eq!(back, d);
    }
}

#[test]
fn disjoint_union_multiplies_flow_polynomials() {
    // C3 next to K3 acyclic: phi = x * (x - 1)
    let d = Digraph::new(6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (3, 5), (4, 5)]).unwrap();
    let expected: IntPolynomial = "x^2-x".parse().unwrap();
    assert_eq!(nl_flow_polynomial(&d).unwrap(), expected);
}
