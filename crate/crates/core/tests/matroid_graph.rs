use num_bigint::BigInt;
use proptest::prelude::*;

use nlflow::matroid::{
    check_lifting, contract_matroid, count_group_kernel, count_nl_group_flows_matroid,
    count_nl_integer_kflows_matroid, enumerate_group_kernel, farkas_certificate,
    fit_integer_flow_rational_matroid, is_totally_cyclic_matroid, is_totally_unimodular,
    FarkasCertificate, TuMatrix,
};
use nlflow::oracles::{
    count_nl_group_flows, count_nl_integer_kflows, default_k_range, digraph_catalog,
    fit_integer_flow_rational, flow_degree_bound, AbelianGroup, DEFAULT_BUDGET as B,
};
use nlflow::{ArcSet, Digraph};

fn inc(d: &Digraph) -> TuMatrix {
    TuMatrix::from_incidence(&d.incidence_matrix())
}

fn all_subsets(m: usize) -> impl Iterator<Item = ArcSet> {
    (0u32..1 << m).map(move |mask| ArcSet::from_indices(m, (0..m).filter(|i| mask >> i & 1 == 1)))
}

#[test]
fn contraction_matches_graph_contraction() {
    for d in digraph_catalog(3, 5, true) {
        let m = inc(&d);
        for s in all_subsets(d.m()) {
            assert_eq!(
                contract_matroid(&m, &s).is_totally_cyclic(),
                d.contract(&s).is_totally_cyclic(),
                "{d:?} S={s:?}"
            );
        }
        assert_eq!(is_totally_cyclic_matroid(&m), d.is_totally_cyclic());
    }
}

#[test]
fn farkas_gives_one_checked_certificate() {
    for d in digraph_catalog(3, 4, true) {
        let m = inc(&d);
        for s in all_subsets(d.m()) {
            let cert = farkas_certificate(&m, &s).unwrap();
            assert!(cert.check(&m, &s));
            let positive = matches!(cert, FarkasCertificate::Positive(_));
            assert_eq!(positive, d.contract(&s).is_totally_cyclic());
        }
    }
}

#[test]
fn matroid_counts_match_graph_counts() {
    for d in digraph_catalog(3, 5, true) {
        let m = inc(&d);
        for k in 1..=4u64 {
            for g in AbelianGroup::all_of_order(k) {
                assert_eq!(
                    count_nl_group_flows_matroid(&m, &g, B).unwrap(),
                    count_nl_group_flows(&d, &g, B).unwrap(),
                    "{d:?} {g}"
                );
            }
            assert_eq!(
                count_nl_integer_kflows_matroid(&m, k, B).unwrap(),
                count_nl_integer_kflows(&d, k, B).unwrap(),
                "{d:?} k={k}"
            );
        }
    }
}

#[test]
fn incidence_matrices_are_unimodular_and_lift() {
    for d in digraph_catalog(3, 4, true) {
        let m = inc(&d);
        assert!(is_totally_unimodular(&m).unwrap());
        for k in 1..=4 {
            assert!(check_lifting(&m, k, B).unwrap(), "{d:?} k={k}");
        }
    }
}

#[test]
fn existence_parity_over_the_catalog() {
    for d in digraph_catalog(3, 5, false) {
        let m = inc(&d);
        for k in 2..=4u64 {
            let cyclic = count_nl_group_flows_matroid(&m, &AbelianGroup::cyclic(k), B).unwrap() > 0;
            let integer = count_nl_integer_kflows_matroid(&m, k, B).unwrap() > 0;
            assert_eq!(cyclic, integer, "{d:?} k={k}");
        }
    }
}

#[test]
fn polynomial_fits_agree() {
    for d in digraph_catalog(3, 4, false) {
        let ks = default_k_range(flow_degree_bound(&d));
        assert_eq!(
            fit_integer_flow_rational_matroid(&inc(&d), &ks, B).unwrap(),
            fit_integer_flow_rational(&d, &ks, B).unwrap()
        );
    }
}

fn tu_matrix() -> impl Strategy<Value = TuMatrix> {
    // network matrices: reduced incidence matrices of random digraphs
    (2usize..5)
        .prop_flat_map(|n| {
            prop::collection::vec((0..n, 0..n), 1..6).prop_map(move |arcs| (n, arcs))
        })
        .prop_map(|(n, arcs)| inc(&Digraph::new(n, arcs).unwrap()).row_basis())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn kernel_count_formula(m in tu_matrix(), k in 1u64..5) {
        for g in AbelianGroup::all_of_order(k) {
            let formula = count_group_kernel(&m, &g).unwrap();
            prop_assert_eq!(formula, BigInt::from(enumerate_group_kernel(&m, &g, B).unwrap()));
        }
    }

    #[test]
    fn matrix_text_round_trips(m in tu_matrix()) {
        let back: TuMatrix = m.to_string().parse().unwrap();
        prop_assert_eq!(back, m);
    }
}
