//! Simple undirected graphs, the named families used throughout the crate,
//! and the compositions (join, union, corona, Cartesian product with `K2`)
//! that the lift constructions depend on.
//!
//! Vertex numbering is part of the contract: realizers build matrices block
//! by block and expect the layouts documented on [`build_family`] and
//! [`combine`].

mod enumerate;
mod family;
pub mod graph6;
mod iso;

pub use enumerate::{connected_graphs, nonisomorphic_graphs};
pub use family::{build_family, FamilyKind, FamilySpec};
pub use iso::is_isomorphic;

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// A finite simple graph on vertices `0..n`.
///
/// Edges are stored once each as `(u, v)` with `u < v`, sorted.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    label: Option<String>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::param("a graph needs at least one vertex"));
        }
        let mut canon = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::param(format!("self-loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::param(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        canon.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &canon {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: canon,
            adj,
            label: None,
        })
    }

    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        Graph::new(n, std::iter::empty())
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Position of edge `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn is_edgeless(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * (self.n - 1) / 2
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.iter().any(Vec::is_empty)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Subgraph induced by `vertices`, relabelled `0..k` in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= self.n {
                return Err(Error::param(format!("vertex {v} out of range")));
            }
            pos[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| (pos[u], pos[v]));
        Graph::new(vertices.len(), edges)
    }

    /// `G - v`, with the remaining vertices renumbered in increasing order.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        if self.n < 2 {
            return Err(Error::param("cannot delete the only vertex"));
        }
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced_subgraph(&keep)
    }

    pub fn complement(&self) -> Graph {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(self.n, edges).expect("complement of a valid graph")
    }

    /// Common neighbours of two distinct vertices.
    pub fn common_neighbors(&self, u: usize, v: usize) -> Vec<usize> {
        let (a, b) = (&self.adj[u], &self.adj[v]);
        let (mut i, mut j, mut out) = (0, 0, Vec::new());
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    pub fn is_bipartite(&self) -> bool {
        bipartition(self).is_some()
    }

    pub fn graph6(&self) -> String {
        graph6::encode(self)
    }
}

/// Serialized as its graph6 string.
impl serde::Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.graph6())
    }
}

impl<'de> serde::Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = <String as serde::Deserialize>::deserialize(d)?;
        graph6::decode(&s).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.label {
            Some(l) => write!(f, "{l} ({})", self.graph6()),
            None => write!(f, "{}", self.graph6()),
        }
    }
}

/// Binary graph compositions. The unary ones ignore the second operand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineOp {
    /// `G ⊔ H`: vertices of `G` first, then those of `H` shifted by `|G|`.
    DisjointUnion,
    /// `G ∨ H`: disjoint union plus every edge between the two parts.
    Join,
    /// `G ∘ K1`: vertex `i` gains a leaf numbered `n + i`.
    CoronaK1,
    /// `G □ K2`: copy 0 on `0..n`, copy 1 on `n..2n`, rungs `i, n + i`.
    CartesianK2,
}

pub fn combine(op: CombineOp, g: &Graph, h: Option<&Graph>) -> Result<Graph> {
    let n = g.order();
    match op {
        CombineOp::DisjointUnion | CombineOp::Join => {
            let h = h.ok_or_else(|| Error::param(format!("{op:?} needs a second graph")))?;
            let m = h.order();
            let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
            edges.extend(h.edges().iter().map(|&(u, v)| (u + n, v + n)));
            if op == CombineOp::Join {
                for u in 0..n {
                    for v in 0..m {
                        edges.push((u, n + v));
                    }
                }
            }
            Graph::new(n + m, edges)
        }
        CombineOp::CoronaK1 => {
            let mut edges = g.edges().to_vec();
            edges.extend((0..n).map(|i| (i, n + i)));
            Graph::new(2 * n, edges)
        }
        CombineOp::CartesianK2 => {
            let mut edges = g.edges().to_vec();
            edges.extend(g.edges().iter().map(|&(u, v)| (u + n, v + n)));
            edges.extend((0..n).map(|i| (i, n + i)));
            Graph::new(2 * n, edges)
        }
    }
}

/// Two-colouring by breadth-first search from the lowest uncoloured vertex
/// of each component; that vertex (and any isolated vertex) goes to the
/// first side. `None` when the graph has an odd cycle.
pub fn bipartition(g: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut color: Vec<Option<bool>> = vec![None; g.order()];
    for s in 0..g.order() {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].unwrap();
            for &w in g.neighbors(u) {
                match color[w] {
                    None => {
                        color[w] = Some(!cu);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let first = (0..g.order()).filter(|&v| color[v] == Some(false)).collect();
    let second = (0..g.order()).filter(|&v| color[v] == Some(true)).collect();
    Some((first, second))
}

/// Number of vertices of a longest induced path (exhaustive; small graphs only).
pub fn longest_induced_path(g: &Graph) -> usize {
    fn extend(g: &Graph, path: &mut Vec<usize>, on_path: &mut [bool], best: &mut usize) {
        *best = (*best).max(path.len());
        if *best == g.order() {
            return;
        }
        let last = *path.last().unwrap();
        for &w in g.neighbors(last) {
            if on_path[w] {
                continue;
            }
            // w may touch only `last` among path vertices
            let chordless = path[..path.len() - 1].iter().all(|&p| !g.has_edge(p, w));
            if chordless {
                path.push(w);
                on_path[w] = true;
                extend(g, path, on_path, best);
                on_path[w] = false;
                path.pop();
            }
        }
    }
    let mut best = 1;
    let mut on_path = vec![false; g.order()];
    for s in 0..g.order() {
        let mut path = vec![s];
        on_path[s] = true;
        extend(g, &mut path, &mut on_path, &mut best);
        on_path[s] = false;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Graph {
        build_family(&FamilySpec::new(FamilyKind::Complete, vec![n]).unwrap()).unwrap()
    }

    #[test]
    fn rejects_loops_and_out_of_range() {
        assert!(Graph::new(3, [(1, 1)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
        assert!(Graph::new(0, []).is_err());
    }

    #[test]
    fn edges_are_canonical() {
        let g = Graph::new(3, [(2, 0), (0, 2), (1, 0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2)]);
    }

    #[test]
    fn join_of_independent_pair_and_k2_is_diamond() {
        let g = combine(CombineOp::Join, &Graph::empty(2).unwrap(), Some(&k(2))).unwrap();
        assert_eq!(g.edge_count(), 5);
        assert!(!g.has_edge(0, 1));
    }

    #[test]
    fn corona_of_k2() {
        let g = combine(CombineOp::CoronaK1, &k(2), None).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 3)]);
    }

    #[test]
    fn cartesian_k2_of_k2_is_c4() {
        let g = combine(CombineOp::CartesianK2, &k(2), None).unwrap();
        let c4 = build_family(&"cycle:4".parse().unwrap()).unwrap();
        // K2 □ K2 is the 4-cycle 0-1-3-2
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(g.edge_count(), c4.edge_count());
        assert!(g.degree(0) == 2 && g.degree(3) == 2);
    }

    #[test]
    fn binary_ops_need_second_operand() {
        assert!(matches!(
            combine(CombineOp::Join, &k(2), None),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn bipartition_examples() {
        let c4 = build_family(&"cycle:4".parse().unwrap()).unwrap();
        assert_eq!(bipartition(&c4), Some((vec![0, 2], vec![1, 3])));
        let c5 = build_family(&"cycle:5".parse().unwrap()).unwrap();
        assert_eq!(bipartition(&c5), None);
        let k23 = build_family(&"kmn:2,3".parse().unwrap()).unwrap();
        let (a, b) = bipartition(&k23).unwrap();
        assert_eq!((a.len(), b.len()), (2, 3));
    }

    #[test]
    fn isolated_vertices_go_first() {
        let g = Graph::new(3, [(1, 2)]).unwrap();
        assert_eq!(bipartition(&g), Some((vec![0, 1], vec![2])));
    }

    #[test]
    fn induced_paths() {
        let c7 = build_family(&"cycle:7".parse().unwrap()).unwrap();
        assert_eq!(longest_induced_path(&c7), 6);
        assert_eq!(longest_induced_path(&k(4)), 2);
        let w5 = build_family(&"wheel:5".parse().unwrap()).unwrap();
        assert_eq!(longest_induced_path(&w5), 3);
    }

    #[test]
    fn delete_vertex_renumbers() {
        let w5 = build_family(&"wheel:5".parse().unwrap()).unwrap();
        let c4 = w5.delete_vertex(4).unwrap();
        assert_eq!(c4, build_family(&"cycle:4".parse().unwrap()).unwrap());
    }
}
