//! Oracles and generators shared by the integration tests. Nothing here
//! calls the library's own polynomial or rank code.
#![allow(dead_code, clippy::needless_range_loop)]

use hollow_iep::graph::{connected_graphs, is_isomorphic};
use hollow_iep::{Graph, HollowMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Magnitude in [0.5, 2], random sign.
pub fn weight(rng: &mut impl Rng) -> f64 {
    let x: f64 = rng.random_range(0.5..2.0);
    if rng.random_bool(0.5) {
        x
    } else {
        -x
    }
}

pub fn random_matrix(g: &Graph, rng: &mut impl Rng) -> HollowMatrix {
    let w: Vec<f64> = (0..g.edge_count()).map(|_| weight(rng)).collect();
    HollowMatrix::from_edge_weights(g, &w).unwrap()
}

pub fn dense(a: &HollowMatrix) -> Vec<Vec<f64>> {
    let n = a.order();
    (0..n).map(|i| (0..n).map(|j| a.get(i, j)).collect()).collect()
}

/// `S_1..S_n` with `det(xI - A) = x^n - S_1 x^(n-1) + S_2 x^(n-2) - ...`,
/// by the Faddeev–LeVerrier recurrence.
pub fn leverrier(a: &[Vec<f64>]) -> Vec<f64> {
    let n = a.len();
    let mut m = vec![vec![0.0; n]; n];
    let mut c = vec![0.0; n + 1];
    c[n] = 1.0;
    for k in 1..=n {
        // M_k = A M_(k-1) + c_(n-k+1) I
        let mut next = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                next[i][j] = (0..n).map(|l| a[i][l] * m[l][j]).sum::<f64>();
            }
            next[i][i] += c[n - k + 1];
        }
        m = next;
        let tr: f64 = (0..n).map(|i| (0..n).map(|l| a[i][l] * m[l][i]).sum::<f64>()).sum();
        c[n - k] = -tr / k as f64;
    }
    (1..=n).map(|k| if k % 2 == 0 { c[n - k] } else { -c[n - k] }).collect()
}

/// Rank by Gaussian elimination with partial pivoting; pivots below
/// `rel * max|a_ij|` count as zero.
pub fn gauss_rank(a: &[Vec<f64>], rel: f64) -> usize {
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let scale = m.iter().flatten().fold(0.0f64, |s, x| s.max(x.abs()));
    if scale == 0.0 {
        return 0;
    }
    let cut = rel * scale;
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs())) else { break };
        if m[p][col].abs() <= cut {
            continue;
        }
        m.swap(rank, p);
        for i in rank + 1..rows {
            let f = m[i][col] / m[rank][col];
            for j in col..cols {
                m[i][j] -= f * m[rank][j];
            }
        }
        rank += 1;
    }
    rank
}

/// Connected bipartite graphs of order `n <= 7`, one per isomorphism class.
pub fn connected_bipartite_graphs(n: usize) -> Vec<Graph> {
    if n <= 6 {
        return connected_graphs(n).into_iter().filter(Graph::is_bipartite).collect();
    }
    let mut out: Vec<Graph> = Vec::new();
    for a in 1..=n / 2 {
        let pairs: Vec<(usize, usize)> = (0..a).flat_map(|u| (a..n).map(move |v| (u, v))).collect();
        for mask in 1u32..1 << pairs.len() {
            let edges = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e);
            let g = Graph::new(n, edges).unwrap();
            if !g.is_connected() {
                continue;
            }
            if !out.iter().any(|h| h.edge_count() == g.edge_count() && is_isomorphic(h, &g)) {
                out.push(g);
            }
        }
    }
    out
}

pub fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}
