//! Generalized cycles: vertex-disjoint unions of edges and cycles.
//!
//! The principal-minor sums of a hollow symmetric matrix expand over these
//! covers: `S_k(A) = Σ (-1)^ne · 2^nc · Π entries`, summed over generalized
//! cycles of order `k`, where `ne` counts even components (edges included)
//! and `nc` counts cycles of length at least 3.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::Mat;
use crate::spectra::HollowMatrix;

/// Largest order accepted by the enumerators unless a limit is passed explicitly.
pub const DEFAULT_ORDER_LIMIT: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Component {
    Edge(usize, usize),
    /// Vertex sequence starting at its smallest vertex, with the second
    /// vertex smaller than the last.
    Cycle(Vec<usize>),
}

impl Component {
    pub fn len(&self) -> usize {
        match self {
            Component::Edge(..) => 2,
            Component::Cycle(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> Vec<usize> {
        match self {
            Component::Edge(u, v) => vec![*u, *v],
            Component::Cycle(c) => c.clone(),
        }
    }

    fn product(&self, a: &Mat) -> f64 {
        match self {
            Component::Edge(u, v) => a[(*u, *v)] * a[(*u, *v)],
            Component::Cycle(c) => (0..c.len())
                .map(|i| a[(c[i], c[(i + 1) % c.len()])])
                .product(),
        }
    }

    fn product_exact(&self, w: &[Vec<i128>]) -> Option<i128> {
        match self {
            Component::Edge(u, v) => w[*u][*v].checked_mul(w[*u][*v]),
            Component::Cycle(c) => (0..c.len()).try_fold(1i128, |acc, i| {
                acc.checked_mul(w[c[i]][c[(i + 1) % c.len()]])
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralizedCycle {
    pub components: Vec<Component>,
}

impl GeneralizedCycle {
    pub fn order(&self) -> usize {
        self.components.iter().map(Component::len).sum()
    }

    /// Cycles of length at least 3.
    pub fn nc(&self) -> usize {
        self.components
            .iter()
            .filter(|c| matches!(c, Component::Cycle(_)))
            .count()
    }

    /// Even components: edges and even cycles.
    pub fn ne(&self) -> usize {
        self.components.iter().filter(|c| c.len() % 2 == 0).count()
    }

    /// `(-1)^ne · 2^nc`.
    pub fn coefficient(&self) -> i128 {
        let sign = if self.ne().is_multiple_of(2) { 1 } else { -1 };
        sign << self.nc()
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.components.iter().flat_map(Component::vertices).collect();
        v.sort_unstable();
        v
    }

    /// Signed term of this cover in `S_k(A)`.
    pub fn term(&self, a: &Mat) -> f64 {
        let p: f64 = self.components.iter().map(|c| c.product(a)).product();
        self.coefficient() as f64 * p
    }
}

/// Calls `f` on every generalized cycle of order `k`, in a fixed order:
/// vertices are scanned upward and each component is anchored at its
/// smallest vertex. Stops early when `f` breaks.
pub fn for_each_generalized_cycle<F>(g: &Graph, k: usize, mut f: F) -> ControlFlow<()>
where
    F: FnMut(&GeneralizedCycle) -> ControlFlow<()>,
{
    let n = g.order();
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
        .collect();
    let mut walker = Walker {
        n,
        k,
        adj,
        covered: 0,
        count: 0,
        comps: Vec::new(),
    };
    walker.rec(0, &mut f)
}

struct Walker {
    n: usize,
    k: usize,
    adj: Vec<u64>,
    covered: u64,
    count: usize,
    comps: Vec<Component>,
}

impl Walker {
    fn rec<F>(&mut self, v: usize, f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&GeneralizedCycle) -> ControlFlow<()>,
    {
        if self.count == self.k {
            let gc = GeneralizedCycle { components: self.comps.clone() };
            return f(&gc);
        }
        if v >= self.n || self.n - v < self.k - self.count {
            return ControlFlow::Continue(());
        }
        if self.covered >> v & 1 == 1 {
            return self.rec(v + 1, f);
        }
        // v stays outside the cover
        self.rec(v + 1, f)?;

        let room = self.k - self.count;
        let free_above = self.adj[v] & !self.covered & !((2u64 << v) - 1);
        if room >= 2 {
            let mut bits = free_above;
            while bits != 0 {
                let u = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                self.push(Component::Edge(v, u), 1 << v | 1 << u);
                let r = self.rec(v + 1, f);
                self.pop(1 << v | 1 << u);
                r?;
            }
        }
        if room >= 3 {
            let mut path = vec![v];
            self.extend_cycle(&mut path, 1 << v, room, f)?;
        }
        ControlFlow::Continue(())
    }

    fn extend_cycle<F>(&mut self, path: &mut Vec<usize>, used: u64, room: usize, f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&GeneralizedCycle) -> ControlFlow<()>,
    {
        let v = path[0];
        let last = *path.last().unwrap();
        if path.len() >= 3 && self.adj[last] >> v & 1 == 1 && path[1] < last {
            self.push(Component::Cycle(path.clone()), used);
            let r = self.rec(v + 1, f);
            self.pop(used);
            r?;
        }
        if path.len() == room {
            return ControlFlow::Continue(());
        }
        let mut bits = self.adj[last] & !self.covered & !used & !((2u64 << v) - 1);
        while bits != 0 {
            let u = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            path.push(u);
            let r = self.extend_cycle(path, used | 1 << u, room, f);
            path.pop();
            r?;
        }
        ControlFlow::Continue(())
    }

    fn push(&mut self, c: Component, mask: u64) {
        self.count += c.len();
        self.covered |= mask;
        self.comps.push(c);
    }

    fn pop(&mut self, mask: u64) {
        let c = self.comps.pop().expect("push/pop balanced");
        self.count -= c.len();
        self.covered &= !mask;
    }
}

fn check_order(g: &Graph, limit: usize) -> Result<()> {
    if g.order() > limit.min(63) {
        return Err(Error::param(format!(
            "generalized-cycle enumeration is limited to order {limit}, graph has order {}",
            g.order()
        )));
    }
    Ok(())
}

pub fn enumerate_generalized_cycles(g: &Graph, k: usize) -> Result<Vec<GeneralizedCycle>> {
    enumerate_generalized_cycles_limited(g, k, DEFAULT_ORDER_LIMIT)
}

pub fn enumerate_generalized_cycles_limited(g: &Graph, k: usize, limit: usize) -> Result<Vec<GeneralizedCycle>> {
    check_order(g, limit)?;
    if k > g.order() {
        return Err(Error::param(format!("order {k} exceeds |V| = {}", g.order())));
    }
    let mut out = Vec::new();
    let _ = for_each_generalized_cycle(g, k, |c| {
        out.push(c.clone());
        ControlFlow::Continue(())
    });
    Ok(out)
}

pub fn has_generalized_cycle(g: &Graph, k: usize) -> bool {
    k == 0 || for_each_generalized_cycle(g, k, |_| ControlFlow::Break(())).is_break()
}

/// Number of generalized cycles of order `k`, counting at most `cap`.
pub fn count_generalized_cycles(g: &Graph, k: usize, cap: usize) -> usize {
    let mut count = 0;
    let _ = for_each_generalized_cycle(g, k, |_| {
        count += 1;
        if count >= cap {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    count
}

/// Maximum order of a generalized cycle, which is the largest rank of a
/// matrix in the hollow class of `g`.
pub fn max_hollow_rank(g: &Graph) -> Result<usize> {
    max_hollow_rank_limited(g, DEFAULT_ORDER_LIMIT)
}

pub fn max_hollow_rank_limited(g: &Graph, limit: usize) -> Result<usize> {
    check_order(g, limit)?;
    Ok((0..=g.order()).rev().find(|&k| has_generalized_cycle(g, k)).unwrap_or(0))
}

/// Lower bound on the minimum hollow rank: the largest vertex set `S` such
/// that `g[S]` has exactly one spanning generalized cycle. Every principal
/// submatrix on such an `S` has a single nonzero determinant term, so it is
/// nonsingular for every matrix in the class. Returns the bound and `S`.
pub fn mr0_lower_bound(g: &Graph) -> Result<(usize, Vec<usize>)> {
    check_order(g, DEFAULT_ORDER_LIMIT)?;
    let n = g.order();
    let mut masks: Vec<u32> = (1..1u32 << n).collect();
    masks.sort_by_key(|m| (std::cmp::Reverse(m.count_ones()), *m));
    for mask in masks {
        let verts: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let sub = g.induced_subgraph(&verts)?;
        if count_generalized_cycles(&sub, verts.len(), 2) == 1 {
            return Ok((verts.len(), verts));
        }
    }
    Ok((0, Vec::new()))
}

/// Coefficients `s[k-1] = S_k(A)` with
/// `p_A(x) = x^n - S_1 x^(n-1) + S_2 x^(n-2) - ...`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharPolyCoefficients {
    pub n: usize,
    pub s: Vec<f64>,
}

impl CharPolyCoefficients {
    /// `S_k`, with `S_0 = 1`.
    pub fn get(&self, k: usize) -> f64 {
        if k == 0 {
            1.0
        } else {
            self.s[k - 1]
        }
    }

    /// Monic coefficients, highest degree first.
    pub fn polynomial(&self) -> Vec<f64> {
        (0..=self.n)
            .map(|k| if k % 2 == 0 { self.get(k) } else { -self.get(k) })
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.s.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn max_difference(&self, other: &CharPolyCoefficients) -> f64 {
        self.s
            .iter()
            .zip(&other.s)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

/// All generalized cycles of a graph grouped by order, for evaluating many
/// weightings of one pattern.
#[derive(Clone, Debug)]
pub struct GenCycleTable {
    n: usize,
    by_order: Vec<Vec<GeneralizedCycle>>,
}

impl GenCycleTable {
    pub fn new(g: &Graph) -> Result<Self> {
        let by_order = (1..=g.order())
            .map(|k| enumerate_generalized_cycles(g, k))
            .collect::<Result<Vec<_>>>()?;
        Ok(GenCycleTable { n: g.order(), by_order })
    }

    pub fn cycles_of_order(&self, k: usize) -> &[GeneralizedCycle] {
        &self.by_order[k - 1]
    }

    pub fn evaluate(&self, a: &HollowMatrix) -> CharPolyCoefficients {
        if let Some(exact) = self.evaluate_exact(a) {
            return CharPolyCoefficients {
                n: self.n,
                s: exact.into_iter().map(|x| x as f64).collect(),
            };
        }
        let m = a.matrix();
        let s = self
            .by_order
            .iter()
            .map(|cs| cs.iter().map(|c| c.term(m)).sum())
            .collect();
        CharPolyCoefficients { n: self.n, s }
    }

    /// Integer evaluation when every entry is an integer and nothing overflows.
    pub fn evaluate_exact(&self, a: &HollowMatrix) -> Option<Vec<i128>> {
        let n = self.n;
        let m = a.matrix();
        let mut w = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in 0..n {
                let x = m[(i, j)];
                if x.fract() != 0.0 || x.abs() > 2f64.powi(40) {
                    return None;
                }
                w[i][j] = x as i128;
            }
        }
        self.by_order
            .iter()
            .map(|cs| {
                cs.iter().try_fold(0i128, |acc, c| {
                    let p = c
                        .components
                        .iter()
                        .try_fold(1i128, |p, comp| p.checked_mul(comp.product_exact(&w)?))?;
                    acc.checked_add(c.coefficient().checked_mul(p)?)
                })
            })
            .collect()
    }
}

pub fn charpoly_via_gencyc(a: &HollowMatrix) -> Result<CharPolyCoefficients> {
    Ok(GenCycleTable::new(a.pattern())?.evaluate(a))
}

/// Faddeev–LeVerrier recursion; independent of the cycle expansion and of
/// the eigensolver.
pub fn charpoly_direct(a: &HollowMatrix) -> CharPolyCoefficients {
    let n = a.order();
    let am = a.matrix();
    // c[j] is the coefficient of x^j in det(xI - A)
    let mut c = vec![0.0; n + 1];
    c[n] = 1.0;
    let mut m = Mat::zeros(n, n);
    for k in 1..=n {
        let mut next = am.matmul(&m);
        for i in 0..n {
            next[(i, i)] += c[n - k + 1];
        }
        m = next;
        c[n - k] = -am.matmul(&m).trace() / k as f64;
    }
    let s = (1..=n)
        .map(|k| if k % 2 == 0 { c[n - k] } else { -c[n - k] })
        .collect();
    CharPolyCoefficients { n, s }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, combine, nonisomorphic_graphs, CombineOp};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fam(s: &str) -> Graph {
        build_family(&s.parse().unwrap()).unwrap()
    }

    fn paw() -> Graph {
        Graph::new(4, [(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn triangle_has_one_cover_of_order_three() {
        let cs = enumerate_generalized_cycles(&fam("complete:3"), 3).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].components, vec![Component::Cycle(vec![0, 1, 2])]);
        assert_eq!((cs[0].nc(), cs[0].ne()), (1, 0));
    }

    #[test]
    fn star_and_paw_covers() {
        assert!(enumerate_generalized_cycles(&fam("star:3"), 4).unwrap().is_empty());
        let cs = enumerate_generalized_cycles(&paw(), 4).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].components, vec![Component::Edge(0, 3), Component::Edge(1, 2)]);
        assert!(enumerate_generalized_cycles(&paw(), 5).is_err());
    }

    #[test]
    fn k4_spanning_covers() {
        // three perfect matchings and three Hamiltonian cycles
        let cs = enumerate_generalized_cycles(&fam("complete:4"), 4).unwrap();
        assert_eq!(cs.len(), 6);
        assert_eq!(cs.iter().filter(|c| c.nc() == 1).count(), 3);
    }

    #[test]
    fn max_hollow_rank_examples() {
        for n in 1..=6 {
            let g = fam(&format!("path:{n}"));
            let corona = combine(CombineOp::CoronaK1, &g, None).unwrap();
            assert_eq!(max_hollow_rank(&corona).unwrap(), 2 * n);
        }
        assert_eq!(max_hollow_rank(&fam("star:3")).unwrap(), 2);
        for n in 5..=9 {
            let g = fam(&format!("complete_split:{},2", n - 2));
            assert_eq!(max_hollow_rank(&g).unwrap(), 4);
        }
        assert_eq!(max_hollow_rank(&fam("empty:4")).unwrap(), 0);
        assert_eq!(max_hollow_rank(&fam("complete:4")).unwrap(), 4);
    }

    /// Twice the fractional matching number: `n - max over independent X of (|X| - |N(X)|)`.
    fn fractional_oracle(g: &Graph) -> usize {
        let n = g.order();
        let mut best = 0i64;
        for mask in 0u32..1 << n {
            let xs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if xs.iter().any(|&u| xs.iter().any(|&v| g.has_edge(u, v))) {
                continue;
            }
            let nb = xs
                .iter()
                .flat_map(|&v| g.neighbors(v).iter().copied())
                .fold(0u32, |m, u| m | 1 << u);
            best = best.max(xs.len() as i64 - nb.count_ones() as i64);
        }
        n - best as usize
    }

    #[test]
    fn max_hollow_rank_matches_fractional_matching_oracle() {
        for n in 1..=6 {
            for g in nonisomorphic_graphs(n) {
                assert_eq!(max_hollow_rank(&g).unwrap(), fractional_oracle(&g), "{g}");
            }
        }
    }

    #[test]
    fn certified_mr0_bounds() {
        assert_eq!(mr0_lower_bound(&fam("complete:3")).unwrap().0, 3);
        assert_eq!(mr0_lower_bound(&paw()).unwrap().0, 4);
        assert_eq!(mr0_lower_bound(&fam("wheel:5")).unwrap().0, 3);
        assert_eq!(mr0_lower_bound(&fam("cycle:5")).unwrap().0, 5);
        assert_eq!(mr0_lower_bound(&fam("cycle:6")).unwrap().0, 4);
        assert_eq!(mr0_lower_bound(&fam("complete_split:2,2")).unwrap().0, 3);
    }

    #[test]
    fn triangle_charpoly() {
        let a = HollowMatrix::adjacency(&fam("complete:3"));
        let c = charpoly_via_gencyc(&a).unwrap();
        assert_eq!(c.s, vec![0.0, -3.0, 2.0]);
        assert_eq!(c.polynomial(), vec![1.0, 0.0, -3.0, -2.0]);
        let d = charpoly_direct(&a);
        assert!(c.max_difference(&d) < 1e-12);
    }

    #[test]
    fn single_edge_charpoly() {
        let a = HollowMatrix::from_edge_weights(&fam("complete:2"), &[1.5]).unwrap();
        assert_eq!(charpoly_via_gencyc(&a).unwrap().s, vec![0.0, -2.25]);
    }

    #[test]
    fn edgeless_charpoly_is_zero() {
        let a = HollowMatrix::adjacency(&fam("empty:4"));
        assert_eq!(charpoly_direct(&a).s, vec![0.0; 4]);
        assert_eq!(charpoly_via_gencyc(&a).unwrap().s, vec![0.0; 4]);
    }

    #[test]
    fn k4_charpoly_has_expected_roots() {
        // (x-3)(x+1)^3 = x^4 - 6x^2 - 8x - 3
        let c = charpoly_direct(&HollowMatrix::adjacency(&fam("complete:4")));
        let want = [1.0, 0.0, -6.0, -8.0, -3.0];
        for (x, y) in c.polynomial().iter().zip(want) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn random_c5_agrees_with_direct() {
        let g = fam("cycle:5");
        let table = GenCycleTable::new(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let w: Vec<f64> = (0..5)
                .map(|_| {
                    let x: f64 = rng.random_range(0.2..2.0);
                    if rng.random_bool(0.5) { x } else { -x }
                })
                .collect();
            let a = HollowMatrix::from_edge_weights(&g, &w).unwrap();
            let (x, y) = (table.evaluate(&a), charpoly_direct(&a));
            assert!(x.max_difference(&y) <= 1e-10 * (1.0 + x.max_abs()));
        }
    }

    #[test]
    fn integer_weights_use_exact_path() {
        let g = fam("wheel:5");
        let w: Vec<f64> = (0..g.edge_count()).map(|i| (i as f64) - 3.5).map(|x| x.ceil().max(1.0)).collect();
        let a = HollowMatrix::from_edge_weights(&g, &w).unwrap();
        let t = GenCycleTable::new(&g).unwrap();
        let exact = t.evaluate_exact(&a).unwrap();
        assert_eq!(exact[0], 0);
        let d = charpoly_direct(&a);
        for (k, e) in exact.iter().enumerate() {
            assert!((*e as f64 - d.s[k]).abs() < 1e-8 * (1.0 + d.max_abs()));
        }
    }
}
