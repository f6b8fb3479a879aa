mod common;

use common::*;
use hollow_iep::gencyc::{charpoly_direct, charpoly_via_gencyc};
use hollow_iep::graph::graph6;
use hollow_iep::target::Value;
use hollow_iep::{Graph, HollowMatrix, Oml, TargetSpectrum};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let all = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::new(n, all.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

fn bipartite_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        (1..n).prop_flat_map(move |a| {
            proptest::collection::vec(any::<bool>(), a * (n - a)).prop_map(move |bits| {
                let all = (0..a).flat_map(|u| (a..n).map(move |v| (u, v)));
                Graph::new(n, all.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
            })
        })
    })
}

fn weighted(g: Graph) -> impl Strategy<Value = HollowMatrix> {
    let m = g.edge_count();
    proptest::collection::vec((0.5f64..2.0, any::<bool>()), m).prop_map(move |w| {
        let w: Vec<f64> = w.into_iter().map(|(x, s)| if s { x } else { -x }).collect();
        HollowMatrix::from_edge_weights(&g, &w).unwrap()
    })
}

fn value() -> impl Strategy<Value = Value> {
    prop_oneof![
        (-50i64..50).prop_map(Value::int),
        (-40i64..40, 1i64..12).prop_map(|(p, q)| Value::exact(hollow_iep::target::Rational::new(p.into(), q.into()))),
        (-20.0f64..20.0).prop_map(Value::approx),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_round_trips(g in graph(8)) {
        let text = g.graph6();
        prop_assert!(text.bytes().all(|b| (63..=126).contains(&b)));
        prop_assert_eq!(graph6::decode(&text).unwrap(), g);
    }

    #[test]
    fn gencyc_matches_leverrier(a in graph(7).prop_flat_map(weighted)) {
        let via = charpoly_via_gencyc(&a).unwrap();
        let want = leverrier(&dense(&a));
        let scale = want.iter().fold(1.0f64, |m, x| m.max(x.abs()));
        prop_assert!(max_abs_diff(&via.s, &want) <= 1e-9 * scale, "{:?} vs {:?}", via.s, want);
        prop_assert!(via.max_difference(&charpoly_direct(&a)) <= 1e-9 * scale);
    }

    #[test]
    fn low_coefficients_of_hollow_matrices(a in graph(7).prop_flat_map(weighted)) {
        let c = charpoly_via_gencyc(&a).unwrap();
        let sq: f64 = a.edge_weights().iter().map(|w| w * w).sum();
        prop_assert!(c.get(1).abs() <= 1e-12);
        if a.order() >= 2 {
            prop_assert!((c.get(2) + sq).abs() <= 1e-9 * sq.max(1.0));
        }
    }

    #[test]
    fn bipartite_spectra_are_symmetric(a in bipartite_graph(8).prop_flat_map(weighted)) {
        let eigs = sorted(a.eigenvalues().unwrap());
        let neg: Vec<f64> = sorted(eigs.iter().map(|x| -x).collect());
        let scale = eigs.iter().fold(1.0f64, |m, x| m.max(x.abs()));
        prop_assert!(max_abs_diff(&eigs, &neg) <= 1e-9 * scale);
        let c = charpoly_via_gencyc(&a).unwrap();
        for k in (1..=a.order()).step_by(2) {
            prop_assert_eq!(c.get(k), 0.0, "odd S_{} on a bipartite pattern", k);
        }
    }

    #[test]
    fn spectrum_literal_round_trips(items in proptest::collection::vec((value(), 1usize..4), 1..6)) {
        let s = TargetSpectrum::new(items).unwrap();
        let back: TargetSpectrum = s.to_string().parse().unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(back.order(), s.order());
    }

    #[test]
    fn oml_round_trips(parts in proptest::collection::vec(1usize..5, 1..8)) {
        let o = Oml::new(parts).unwrap();
        let back: Oml = o.to_string().parse().unwrap();
        prop_assert_eq!(&back, &o);
        prop_assert_eq!(back.reversed().reversed(), o);
    }
}

#[test]
fn compositions_are_complete() {
    for n in 1..=9 {
        let all = Oml::compositions(n);
        assert_eq!(all.len(), 1 << (n - 1));
        assert!(all.iter().all(|o| o.order() == n));
    }
}
