//! Isomorphism testing by backtracking over colour-refined vertex classes.
//! Adequate for the family sizes the catalog deals with.

use super::Graph;

/// Stable colouring by iterated neighbour-colour refinement, starting from
/// degrees. Colours are comparable across the two graphs because both are
/// refined together.
fn refine(a: &Graph, b: &Graph) -> (Vec<usize>, Vec<usize>) {
    let mut ca: Vec<usize> = (0..a.order()).map(|v| a.degree(v)).collect();
    let mut cb: Vec<usize> = (0..b.order()).map(|v| b.degree(v)).collect();
    loop {
        let sig = |g: &Graph, c: &[usize], v: usize| {
            let mut ns: Vec<usize> = g.neighbors(v).iter().map(|&u| c[u]).collect();
            ns.sort_unstable();
            (c[v], ns)
        };
        let sa: Vec<_> = (0..a.order()).map(|v| sig(a, &ca, v)).collect();
        let sb: Vec<_> = (0..b.order()).map(|v| sig(b, &cb, v)).collect();
        let mut all: Vec<_> = sa.iter().chain(&sb).cloned().collect();
        all.sort();
        all.dedup();
        let id = |s: &(usize, Vec<usize>)| all.binary_search(s).expect("present");
        let na: Vec<usize> = sa.iter().map(id).collect();
        let nb: Vec<usize> = sb.iter().map(id).collect();
        let classes = |c: &[usize]| {
            let mut v = c.to_vec();
            v.sort_unstable();
            v.dedup();
            v.len()
        };
        let done = classes(&na) == classes(&ca) && classes(&nb) == classes(&cb);
        ca = na;
        cb = nb;
        if done {
            return (ca, cb);
        }
    }
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.order();
    if n != b.order() || a.edge_count() != b.edge_count() {
        return false;
    }
    let (ca, cb) = refine(a, b);
    let mut ha = ca.clone();
    let mut hb = cb.clone();
    ha.sort_unstable();
    hb.sort_unstable();
    if ha != hb {
        return false;
    }
    // map a-vertices in order of increasing class size
    let mut order: Vec<usize> = (0..n).collect();
    let size = |c: usize| ca.iter().filter(|&&x| x == c).count();
    order.sort_by_key(|&v| (size(ca[v]), ca[v], v));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(a, b, &ca, &cb, &order, 0, &mut map, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &Graph,
    b: &Graph,
    ca: &[usize],
    cb: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in 0..b.order() {
        if used[w] || cb[w] != ca[v] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| a.has_edge(u, v) == b.has_edge(map[u], w));
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(a, b, ca, cb, order, depth + 1, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}
