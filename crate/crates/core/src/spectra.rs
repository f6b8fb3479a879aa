//! Hollow matrices described by a graph, their spectra, and ordered
//! multiplicity lists.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{graph6, Graph};
use crate::linalg::{self, Mat, SymmetricEigen};

/// Clustering tolerance relative to `max(1, spectral radius)`.
pub const DEFAULT_RELATIVE_TOL: f64 = 1e-6;

/// A real symmetric matrix with zero diagonal whose off-diagonal support is
/// exactly the edge set of `pattern`. Zeros are structural: an entry is
/// nonzero iff the corresponding pair is an edge.
#[derive(Clone, Debug, PartialEq)]
pub struct HollowMatrix {
    entries: Mat,
    pattern: Graph,
}

impl HollowMatrix {
    /// Weighted adjacency matrix of `pattern`; every edge needs a nonzero
    /// weight and no other pair may carry one.
    pub fn from_weights(pattern: &Graph, weights: &BTreeMap<(usize, usize), f64>) -> Result<Self> {
        let n = pattern.order();
        let mut m = Mat::zeros(n, n);
        for (&(u, v), &w) in weights {
            if !pattern.has_edge(u, v) {
                return Err(Error::Pattern(format!("weight given for non-edge {{{u},{v}}}")));
            }
            m[(u, v)] = w;
            m[(v, u)] = w;
        }
        for &(u, v) in pattern.edges() {
            if !weights.contains_key(&(u, v)) && !weights.contains_key(&(v, u)) {
                return Err(Error::Pattern(format!("edge {{{u},{v}}} has no weight")));
            }
        }
        HollowMatrix::new(m, pattern.clone())
    }

    /// Weights listed in the order of `pattern.edges()`.
    pub fn from_edge_weights(pattern: &Graph, weights: &[f64]) -> Result<Self> {
        if weights.len() != pattern.edge_count() {
            return Err(Error::param(format!(
                "{} weights for {} edges",
                weights.len(),
                pattern.edge_count()
            )));
        }
        let n = pattern.order();
        let mut m = Mat::zeros(n, n);
        for (&(u, v), &w) in pattern.edges().iter().zip(weights) {
            m[(u, v)] = w;
            m[(v, u)] = w;
        }
        HollowMatrix::new(m, pattern.clone())
    }

    pub fn adjacency(pattern: &Graph) -> Self {
        let ones = vec![1.0; pattern.edge_count()];
        HollowMatrix::from_edge_weights(pattern, &ones).expect("adjacency is always valid")
    }

    /// Validates `entries` against `pattern`. Negative zeros are normalized.
    pub fn new(mut entries: Mat, pattern: Graph) -> Result<Self> {
        let n = pattern.order();
        if entries.rows() != n || entries.cols() != n {
            return Err(Error::param(format!(
                "matrix is {}x{}, pattern has order {n}",
                entries.rows(),
                entries.cols()
            )));
        }
        for i in 0..n {
            for j in 0..n {
                if entries[(i, j)] == 0.0 {
                    entries[(i, j)] = 0.0;
                }
            }
        }
        for i in 0..n {
            if entries[(i, i)] != 0.0 {
                return Err(Error::Pattern(format!("diagonal entry {i} is nonzero")));
            }
            for j in i + 1..n {
                let (a, b) = (entries[(i, j)], entries[(j, i)]);
                if a != b {
                    return Err(Error::Pattern(format!("entries ({i},{j}) and ({j},{i}) differ")));
                }
                if !a.is_finite() {
                    return Err(Error::Numeric(format!("entry ({i},{j}) is not finite")));
                }
                if (a != 0.0) != pattern.has_edge(i, j) {
                    return Err(Error::Pattern(if a == 0.0 {
                        format!("edge {{{i},{j}}} has weight zero")
                    } else {
                        format!("non-edge {{{i},{j}}} has weight {a}")
                    }));
                }
            }
        }
        Ok(HollowMatrix { entries, pattern })
    }

    /// Infers the pattern from the nonzero off-diagonal entries.
    pub fn from_dense(entries: Mat) -> Result<Self> {
        let n = entries.rows();
        if !entries.is_square() {
            return Err(Error::param("matrix must be square"));
        }
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if entries[(i, j)] != 0.0 {
                    edges.push((i, j));
                }
            }
        }
        let pattern = Graph::new(n, edges)?;
        HollowMatrix::new(entries, pattern)
    }

    pub fn order(&self) -> usize {
        self.pattern.order()
    }

    pub fn pattern(&self) -> &Graph {
        &self.pattern
    }

    pub fn matrix(&self) -> &Mat {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    /// Edge weights in the order of `pattern().edges()`.
    pub fn edge_weights(&self) -> Vec<f64> {
        self.pattern
            .edges()
            .iter()
            .map(|&(u, v)| self.entries[(u, v)])
            .collect()
    }

    pub fn scaled(&self, s: f64) -> Result<Self> {
        if s == 0.0 || !s.is_finite() {
            return Err(Error::param("scale factor must be finite and nonzero"));
        }
        HollowMatrix::new(self.entries.scale(s), self.pattern.clone())
    }

    pub fn frobenius(&self) -> f64 {
        self.entries.frobenius()
    }

    pub fn eigen(&self) -> Result<SymmetricEigen> {
        linalg::symmetric_eigen(&self.entries, linalg::DEFAULT_MAX_SWEEPS)
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        eigensolve(self)
    }

    /// Spectrum clustered with the default tolerance.
    pub fn spectrum(&self) -> Result<Spectrum> {
        let eigs = self.eigenvalues()?;
        let tol = default_tol(&eigs);
        Ok(cluster(&eigs, tol))
    }
}

/// Ascending eigenvalues.
pub fn eigensolve(a: &HollowMatrix) -> Result<Vec<f64>> {
    a.eigenvalues_checked()
}

impl HollowMatrix {
    fn eigenvalues_checked(&self) -> Result<Vec<f64>> {
        let values = linalg::symmetric_eigenvalues(&self.entries)?;
        let sum: f64 = values.iter().sum();
        let n = self.order() as f64;
        if sum.abs() > 1e-10 * n * self.frobenius().max(f64::MIN_POSITIVE) {
            return Err(Error::Numeric(format!("eigenvalue sum {sum:e} violates the trace constraint")));
        }
        Ok(values)
    }
}

/// `DEFAULT_RELATIVE_TOL * max(1, spectral radius)`.
pub fn default_tol(eigs: &[f64]) -> f64 {
    let rho = eigs.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    DEFAULT_RELATIVE_TOL * rho.max(1.0)
}

/// Distinct eigenvalues with multiplicities, ascending.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub values: Vec<(f64, usize)>,
    pub tol: f64,
}

impl Spectrum {
    pub fn order(&self) -> usize {
        self.values.iter().map(|&(_, m)| m).sum()
    }

    pub fn distinct(&self) -> usize {
        self.values.len()
    }

    pub fn oml(&self) -> Oml {
        Oml(self.values.iter().map(|&(_, m)| m).collect())
    }

    /// Eigenvalues repeated by multiplicity, ascending.
    pub fn expanded(&self) -> Vec<f64> {
        self.values
            .iter()
            .flat_map(|&(v, m)| std::iter::repeat_n(v, m))
            .collect()
    }

    pub fn multiplicity_of(&self, x: f64) -> usize {
        self.values
            .iter()
            .find(|(v, _)| (v - x).abs() <= self.tol)
            .map_or(0, |&(_, m)| m)
    }

    pub fn spectral_radius(&self) -> f64 {
        self.values.iter().fold(0.0, |m, (v, _)| m.max(v.abs()))
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .values
            .iter()
            .map(|&(v, m)| if m == 1 { format!("{v}") } else { format!("{v}^{m}") })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Greedy gap clustering of ascending eigenvalues: a new cluster starts
/// whenever the gap to the previous eigenvalue exceeds `tol`. Each cluster
/// is represented by its mean.
pub fn cluster(eigs: &[f64], tol: f64) -> Spectrum {
    let mut values = Vec::new();
    let mut start = 0;
    for i in 1..=eigs.len() {
        if i == eigs.len() || eigs[i] - eigs[i - 1] > tol {
            let block = &eigs[start..i];
            let mean = block.iter().sum::<f64>() / block.len() as f64;
            values.push((mean, block.len()));
            start = i;
        }
    }
    Spectrum { values, tol }
}

/// Number of eigenvalues with `|λ| > tol * max(1, ρ(A))`.
pub fn numeric_rank(a: &HollowMatrix, tol: f64) -> Result<usize> {
    let eigs = a.eigenvalues()?;
    Ok(rank_of_eigenvalues(&eigs, tol))
}

pub fn rank_of_eigenvalues(eigs: &[f64], tol: f64) -> usize {
    let rho = eigs.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let cut = tol * rho.max(1.0);
    eigs.iter().filter(|x| x.abs() > cut).count()
}

/// `‖AᵀA − I‖_max <= tol`.
pub fn is_orthogonal(a: &HollowMatrix, tol: f64) -> bool {
    let m = a.matrix();
    let p = m.transpose().matmul(m);
    let n = a.order();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let want = if i == j { 1.0 } else { 0.0 };
            (p[(i, j)] - want).abs() <= tol
        })
    })
}

/// Whether the multiset equals its negation, pairing the `k`-th smallest
/// value against the negated `k`-th largest.
pub fn spectrum_is_symmetric(s: &Spectrum, tol: f64) -> bool {
    values_symmetric(&s.expanded(), tol)
}

pub fn values_symmetric(sorted: &[f64], tol: f64) -> bool {
    let n = sorted.len();
    (0..n).all(|k| (sorted[k] + sorted[n - 1 - k]).abs() <= tol)
}

/// Ordered multiplicity list `(m_1, ..., m_q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Oml(pub Vec<usize>);

impl Oml {
    pub fn new(m: Vec<usize>) -> Result<Self> {
        if m.is_empty() || m.contains(&0) {
            return Err(Error::param("multiplicities must be positive and the list nonempty"));
        }
        Ok(Oml(m))
    }

    pub fn order(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Oml {
        Oml(self.0.iter().rev().copied().collect())
    }

    pub fn is_palindrome(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    /// All compositions of `n`, shortest lists first, lexicographic within a length.
    pub fn compositions(n: usize) -> Vec<Oml> {
        fn rec(left: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Oml>) {
            if parts == 0 {
                if left == 0 {
                    out.push(Oml(cur.clone()));
                }
                return;
            }
            for first in 1..=left.saturating_sub(parts - 1) {
                cur.push(first);
                rec(left - first, parts - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        for q in 1..=n {
            rec(n, q, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for Oml {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Oml {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut m = Vec::new();
        let mut offset = s.find(inner).unwrap_or(0);
        for part in inner.split(',') {
            let v = part
                .trim()
                .parse::<usize>()
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| Error::parse(offset, format!("expected a positive integer, got `{part}`")))?;
            m.push(v);
            offset += part.len() + 1;
        }
        Oml::new(m)
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    n: usize,
    pattern: String,
    entries: Vec<f64>,
}

impl Serialize for HollowMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            n: self.order(),
            pattern: self.pattern.graph6(),
            entries: self.entries.data().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HollowMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = MatrixJson::deserialize(d)?;
        let pattern = graph6::decode(&raw.pattern).map_err(D::Error::custom)?;
        if pattern.order() != raw.n {
            return Err(D::Error::custom(format!(
                "n = {} but pattern has order {}",
                raw.n,
                pattern.order()
            )));
        }
        let m = Mat::from_rows(raw.n, raw.n, raw.entries).map_err(D::Error::custom)?;
        HollowMatrix::new(m, pattern).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_family;

    fn fam(s: &str) -> Graph {
        build_family(&s.parse().unwrap()).unwrap()
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn make_hollow_examples() {
        let k2 = fam("complete:2");
        let a = HollowMatrix::from_weights(&k2, &BTreeMap::from([((0, 1), 3.0)])).unwrap();
        assert_eq!(a.matrix().data(), &[0.0, 3.0, 3.0, 0.0]);
        assert!(matches!(
            HollowMatrix::from_weights(&k2, &BTreeMap::from([((0, 1), 0.0)])),
            Err(Error::Pattern(_))
        ));
        let p3 = fam("path:3");
        assert!(HollowMatrix::from_weights(&p3, &BTreeMap::from([((0, 2), 1.0)])).is_err());
        let a = HollowMatrix::from_weights(&p3, &BTreeMap::from([((0, 1), 1.0), ((1, 2), 1.0)])).unwrap();
        assert_eq!(a, HollowMatrix::adjacency(&p3));
    }

    #[test]
    fn eigensolve_examples() {
        let k4 = eigensolve(&HollowMatrix::adjacency(&fam("complete:4"))).unwrap();
        assert!(close(&k4, &[-1.0, -1.0, -1.0, 3.0], 1e-12));
        let c4 = eigensolve(&HollowMatrix::adjacency(&fam("cycle:4"))).unwrap();
        assert!(close(&c4, &[-2.0, 0.0, 0.0, 2.0], 1e-12));
    }

    #[test]
    fn cluster_examples() {
        let s = cluster(&[-1.0000001, -0.9999999, 2.0], 1e-6);
        assert_eq!(s.oml(), Oml(vec![2, 1]));
        assert!((s.values[0].0 + 1.0).abs() < 1e-12);
        let s = cluster(&[-3.0, 3.0], 1e-8);
        assert_eq!(s.oml(), Oml(vec![1, 1]));
    }

    #[test]
    fn a221_of_wheel() {
        // weights: rim edges 1, spokes sqrt(2)
        let w5 = fam("wheel:5");
        let r2 = 2f64.sqrt();
        let weights: Vec<f64> = w5
            .edges()
            .iter()
            .map(|&(_, v)| if v == 4 { r2 } else { 1.0 })
            .collect();
        let a = HollowMatrix::from_edge_weights(&w5, &weights).unwrap();
        let s = a.spectrum().unwrap();
        assert_eq!(s.oml(), Oml(vec![2, 2, 1]));
        let reps: Vec<f64> = s.values.iter().map(|v| v.0).collect();
        assert!(close(&reps, &[-2.0, 0.0, 4.0], 1e-10));
    }

    #[test]
    fn rank_examples() {
        let star = HollowMatrix::adjacency(&fam("star:3"));
        assert_eq!(numeric_rank(&star, 1e-9).unwrap(), 2);
        assert_eq!(numeric_rank(&HollowMatrix::adjacency(&fam("complete:4")), 1e-9).unwrap(), 4);
        assert_eq!(numeric_rank(&HollowMatrix::adjacency(&fam("complete:1")), 1e-9).unwrap(), 0);
    }

    #[test]
    fn orthogonality_examples() {
        let c4 = fam("cycle:4");
        let s = 1.0 / 2f64.sqrt();
        // flipped 4-cycle: edge {0,3} negated
        let w: Vec<f64> = c4.edges().iter().map(|&e| if e == (0, 3) { -s } else { s }).collect();
        assert!(is_orthogonal(&HollowMatrix::from_edge_weights(&c4, &w).unwrap(), 1e-12));
        assert!(!is_orthogonal(&HollowMatrix::adjacency(&fam("complete:4")).scaled(0.5).unwrap(), 1e-6));
        assert!(is_orthogonal(&HollowMatrix::adjacency(&fam("complete:2")), 1e-12));
    }

    #[test]
    fn symmetry_examples() {
        let sp = |v: Vec<(f64, usize)>| Spectrum { values: v, tol: 1e-9 };
        assert!(spectrum_is_symmetric(&sp(vec![(-2.0, 1), (0.0, 2), (2.0, 1)]), 1e-9));
        assert!(!spectrum_is_symmetric(&sp(vec![(-2.0, 2), (1.0, 1), (3.0, 1)]), 1e-9));
        assert!(spectrum_is_symmetric(&sp(vec![(-2.0, 2), (0.0, 1), (2.0, 2)]), 1e-9));
    }

    #[test]
    fn json_round_trip_revalidates() {
        let a = HollowMatrix::adjacency(&fam("wheel:5"));
        let s = serde_json::to_string(&a).unwrap();
        let back: HollowMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        let bad = s.replace("[0.0,1.0", "[0.0,0.0");
        assert!(serde_json::from_str::<HollowMatrix>(&bad).is_err());
    }

    #[test]
    fn compositions_of_four() {
        let c = Oml::compositions(4);
        assert_eq!(c.len(), 8);
        assert_eq!(c[0], Oml(vec![4]));
        assert_eq!(c[7], Oml(vec![1, 1, 1, 1]));
    }

    #[test]
    fn oml_parse() {
        assert_eq!("1,3,1".parse::<Oml>().unwrap(), Oml(vec![1, 3, 1]));
        assert_eq!("(2,2)".parse::<Oml>().unwrap(), Oml(vec![2, 2]));
        assert!(matches!("1,0".parse::<Oml>(), Err(Error::Parse { offset: 2, .. })));
    }
}
