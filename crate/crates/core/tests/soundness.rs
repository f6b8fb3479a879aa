mod common;

use std::collections::BTreeSet;

use common::*;
use hollow_iep::catalog::{verify_entry_up_to, Catalog, ClaimStatus, Param, Range};
use hollow_iep::gencyc::{max_hollow_rank, mr0_lower_bound};
use hollow_iep::graph::{build_family, connected_graphs, is_isomorphic, nonisomorphic_graphs};
use hollow_iep::obstructions::{check_oml, check_spectrum, q0_bounds, Checker, KnownBounds};
use hollow_iep::search::{brute_force_oracle, grid_spectra, search_oml, SearchConfig, SearchStatus, GRID_EDGE_LIMIT};
use hollow_iep::spectra::{cluster, default_tol};
use hollow_iep::{Graph, Oml, Target, TargetSpectrum};

fn fam(s: &str) -> Graph {
    build_family(&s.parse().unwrap()).unwrap()
}

fn oml(v: &[usize]) -> Oml {
    Oml(v.to_vec())
}

/// Spectra observed on `g`: the full grid when it is small enough,
/// otherwise random weightings.
fn observed_spectra(g: &Graph) -> Vec<Vec<f64>> {
    let cfg = SearchConfig::default();
    if g.edge_count() <= GRID_EDGE_LIMIT {
        return grid_spectra(g, &cfg).unwrap().into_iter().map(|(_, e)| e).collect();
    }
    let mut rng = rng(g.edge_count() as u64);
    (0..4000).map(|_| sorted(random_matrix(g, &mut rng).eigenvalues().unwrap())).collect()
}

#[test]
fn no_rule_refutes_an_observed_spectrum() {
    for n in 1..=5 {
        for g in nonisomorphic_graphs(n) {
            let mut seen = BTreeSet::new();
            for eigs in observed_spectra(&g) {
                let spec = cluster(&eigs, default_tol(&eigs));
                let list = spec.oml();
                if seen.insert(list.clone()) {
                    let v = check_oml(&g, &list).unwrap();
                    assert!(!v.is_refuted(), "{}: observed {list} refuted: {:?}", g.graph6(), v.certificate());
                }
                let s = TargetSpectrum::from_spectrum(&spec);
                let v = check_spectrum(&g, &s).unwrap();
                assert!(!v.is_refuted(), "{}: observed {s} refuted: {:?}", g.graph6(), v.certificate());
            }
        }
    }
}

#[test]
fn certificates_replay() {
    let mut count = 0;
    for n in 2..=5 {
        for g in connected_graphs(n) {
            let checker = Checker::new(&g);
            for l in Oml::compositions(n) {
                for cert in checker.all_certificates(&Target::Oml(l)).unwrap() {
                    cert.replay().unwrap();
                    let text = serde_json::to_string(&cert).unwrap();
                    let back: hollow_iep::obstructions::ObstructionCertificate = serde_json::from_str(&text).unwrap();
                    back.replay().unwrap();
                    assert_eq!(back.rule, cert.rule);
                    count += 1;
                }
            }
        }
    }
    assert!(count > 100);
}

/// Classified sets of every connected graph of order at most 4.
fn classified(g: &Graph) -> BTreeSet<Oml> {
    let named: [(&str, &[&[usize]]); 11] = [
        ("complete:1", &[&[1]]),
        ("complete:2", &[&[1, 1]]),
        ("path:3", &[&[1, 1, 1]]),
        ("complete:3", &[&[2, 1], &[1, 2], &[1, 1, 1]]),
        ("path:4", &[&[1, 1, 1, 1]]),
        ("star:3", &[&[1, 2, 1]]),
        ("cycle:4", &[&[1, 2, 1], &[1, 1, 1, 1], &[2, 2]]),
        ("complete:4", &[&[3, 1], &[1, 3], &[1, 2, 1], &[2, 1, 1], &[1, 1, 2], &[1, 1, 1, 1]]),
        ("complete_split:2,2", &[&[2, 1, 1], &[1, 1, 2], &[1, 1, 1, 1]]),
        ("empty:1", &[&[1]]),
        ("complete_split:1,1", &[&[1, 1]]),
    ];
    let paw = Graph::new(4, [(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap();
    if is_isomorphic(g, &paw) {
        return [oml(&[2, 1, 1]), oml(&[1, 1, 2]), oml(&[1, 1, 1, 1])].into();
    }
    for (name, lists) in named {
        let h = fam(name);
        if h.order() == g.order() && is_isomorphic(g, &h) {
            return lists.iter().map(|l| oml(l)).collect();
        }
    }
    panic!("no classification for {}", g.graph6());
}

#[test]
fn oracle_and_search_agree_with_small_classifications() {
    let cfg = SearchConfig::default();
    for n in 1..=4 {
        for g in connected_graphs(n) {
            let known = classified(&g);
            let grid = brute_force_oracle(&g, &cfg).unwrap();
            assert!(grid.is_subset(&known), "{}: grid {grid:?} vs {known:?}", g.graph6());
            for l in Oml::compositions(n) {
                let out = search_oml(&g, &l, &cfg).unwrap();
                if known.contains(&l) {
                    assert_eq!(out.status, SearchStatus::Realized, "{}: {l}", g.graph6());
                } else {
                    assert_eq!(out.status, SearchStatus::Refuted, "{}: {l}", g.graph6());
                }
            }
        }
    }
}

#[test]
fn catalog_agrees_with_computed_bounds() {
    let mut members = 0;
    for entry in Catalog::builtin().entries() {
        let inst = entry.instantiate(8).unwrap();
        assert!(!inst.is_empty(), "{} has no member of order <= 8", entry.id);
        for m in inst {
            let g = &m.graph;
            let n = g.order();
            let values = entry.values_for(&m).unwrap();
            let clash = |p: Param, computed: Range| {
                if let Some(stored) = values.get(&p) {
                    assert!(!stored.is_disjoint(&computed), "{} {}: {p} {stored} vs {computed}", entry.id, m.name);
                }
            };
            if let Some(stored) = values.get(&Param::MR0) {
                assert_eq!(stored.as_exact(), Some(max_hollow_rank(g).unwrap()), "{} {}", entry.id, m.name);
            }
            let (q_lo, q_hi) = q0_bounds(g, &KnownBounds::default()).unwrap();
            clash(Param::Q0, Range { lo: q_lo, hi: q_hi });
            let (mr0_lo, _) = mr0_lower_bound(g).unwrap();
            let mr = max_hollow_rank(g).unwrap();
            clash(Param::Mr0, Range { lo: mr0_lo, hi: mr });
            clash(Param::M0, Range { lo: n - mr, hi: n - mr0_lo });
            let mult = Checker::new(g).multiplicity_upper();
            clash(Param::MM0, Range { lo: 1, hi: mult });
            if let Some(set) = &entry.oml_set {
                for l in set {
                    assert!(!check_oml(g, l).unwrap().is_refuted(), "{}: listed {l} refuted", entry.id);
                }
            }
            members += 1;
        }
    }
    assert!(members > 50);
}

#[test]
fn every_entry_verifies_on_small_members() {
    let cfg = SearchConfig { restarts: 16, ..SearchConfig::default() };
    let mut confirmed = 0;
    for entry in Catalog::builtin().entries() {
        let report = verify_entry_up_to(entry, &cfg, 5).unwrap();
        for c in &report.claims {
            assert_ne!(c.status, ClaimStatus::Contradicted, "{}: {c:?}", entry.id);
        }
        confirmed += report.count(ClaimStatus::Confirmed);
    }
    assert!(confirmed > 50, "{confirmed}");
}
