//! Exhaustive generation of small graphs up to isomorphism.
//!
//! Brute force over all labelled graphs, keeping the one whose edge mask is
//! minimal among its relabellings. Only meant for orders up to 6.

use super::Graph;

const MAX_ORDER: usize = 6;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// One representative per isomorphism class of graphs of order `n`
/// (`1 <= n <= 6`), in increasing order of canonical edge mask.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    assert!((1..=MAX_ORDER).contains(&n), "exhaustive enumeration supports orders 1..=6");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut index = vec![vec![0usize; n]; n];
    for (k, &(u, v)) in pairs.iter().enumerate() {
        index[u][v] = k;
        index[v][u] = k;
    }
    let maps: Vec<Vec<usize>> = permutations(n)
        .into_iter()
        .map(|p| pairs.iter().map(|&(u, v)| index[p[u]][p[v]]).collect())
        .collect();

    let mut out = Vec::new();
    'mask: for mask in 0u32..(1u32 << pairs.len()) {
        for map in &maps {
            let mut image = 0u32;
            let mut bits = mask;
            while bits != 0 {
                let k = bits.trailing_zeros() as usize;
                image |= 1 << map[k];
                bits &= bits - 1;
            }
            if image < mask {
                continue 'mask;
            }
        }
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e);
        out.push(Graph::new(n, edges).expect("valid by construction"));
    }
    out
}

/// Connected graphs of order `n` up to isomorphism.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    nonisomorphic_graphs(n)
        .into_iter()
        .filter(Graph::is_connected)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts_match_known_values() {
        let counts: Vec<usize> = (1..=6).map(|n| nonisomorphic_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
        let connected: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(connected, vec![1, 1, 2, 6, 21, 112]);
    }
}
