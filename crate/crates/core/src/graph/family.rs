use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{combine, CombineOp, Graph};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Path,
    Cycle,
    Complete,
    CompleteBipartite,
    CompleteTripartiteBalanced,
    Star,
    Wheel,
    Hypercube,
    CompleteSplit,
    Spider,
    Empty,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 11] = [
        FamilyKind::Path,
        FamilyKind::Cycle,
        FamilyKind::Complete,
        FamilyKind::CompleteBipartite,
        FamilyKind::CompleteTripartiteBalanced,
        FamilyKind::Star,
        FamilyKind::Wheel,
        FamilyKind::Hypercube,
        FamilyKind::CompleteSplit,
        FamilyKind::Spider,
        FamilyKind::Empty,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Path => "path",
            FamilyKind::Cycle => "cycle",
            FamilyKind::Complete => "complete",
            FamilyKind::CompleteBipartite => "complete_bipartite",
            FamilyKind::CompleteTripartiteBalanced => "complete_tripartite_balanced",
            FamilyKind::Star => "star",
            FamilyKind::Wheel => "wheel",
            FamilyKind::Hypercube => "hypercube",
            FamilyKind::CompleteSplit => "complete_split",
            FamilyKind::Spider => "spider",
            FamilyKind::Empty => "empty",
        }
    }

    pub(crate) fn from_name(s: &str) -> Option<FamilyKind> {
        let kind = match s {
            "path" | "P" => FamilyKind::Path,
            "cycle" | "C" => FamilyKind::Cycle,
            "complete" | "K" => FamilyKind::Complete,
            "complete_bipartite" | "kmn" => FamilyKind::CompleteBipartite,
            "complete_tripartite_balanced" | "krrr" => FamilyKind::CompleteTripartiteBalanced,
            "star" => FamilyKind::Star,
            "wheel" | "W" => FamilyKind::Wheel,
            "hypercube" | "Q" => FamilyKind::Hypercube,
            "complete_split" | "split" => FamilyKind::CompleteSplit,
            "spider" => FamilyKind::Spider,
            "empty" => FamilyKind::Empty,
            _ => return None,
        };
        Some(kind)
    }
}

/// A named family member such as `wheel:5` or `kmn:2,3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub params: Vec<usize>,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, params: Vec<usize>) -> Result<Self> {
        let spec = FamilySpec { kind, params };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        let p = &self.params;
        let bad = |why: &str| Err(Error::param(format!("{self}: {why}")));
        let arity = |k: usize| -> Result<()> {
            if p.len() != k {
                return Err(Error::param(format!(
                    "{} takes {k} parameter(s), got {}",
                    self.kind.name(),
                    p.len()
                )));
            }
            Ok(())
        };
        match self.kind {
            FamilyKind::Path | FamilyKind::Complete | FamilyKind::Empty => {
                arity(1)?;
                if p[0] < 1 {
                    return bad("order must be at least 1");
                }
            }
            FamilyKind::Cycle => {
                arity(1)?;
                if p[0] < 3 {
                    return bad("cycles need at least 3 vertices");
                }
            }
            FamilyKind::CompleteBipartite => {
                arity(2)?;
                if p[0] < 1 || p[1] < 1 {
                    return bad("both sides must be nonempty");
                }
            }
            FamilyKind::CompleteTripartiteBalanced | FamilyKind::Star => {
                arity(1)?;
                if p[0] < 1 {
                    return bad("parameter must be at least 1");
                }
            }
            FamilyKind::Wheel => {
                arity(1)?;
                if p[0] < 4 {
                    return bad("wheels need at least 4 vertices");
                }
            }
            FamilyKind::Hypercube => {
                arity(1)?;
                if p[0] < 1 || p[0] > 16 {
                    return bad("dimension must lie in 1..=16");
                }
            }
            FamilyKind::CompleteSplit => {
                arity(2)?;
                if p[0] < 1 || p[1] < 1 {
                    return bad("both parts must be nonempty");
                }
            }
            FamilyKind::Spider => {
                if p.len() < 3 || p.contains(&0) {
                    return bad("a spider needs at least three legs of positive length");
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        let p = &self.params;
        match self.kind {
            FamilyKind::Path
            | FamilyKind::Cycle
            | FamilyKind::Complete
            | FamilyKind::Empty
            | FamilyKind::Wheel => p[0],
            FamilyKind::CompleteBipartite | FamilyKind::CompleteSplit => p[0] + p[1],
            FamilyKind::CompleteTripartiteBalanced => 3 * p[0],
            FamilyKind::Star => p[0] + 1,
            FamilyKind::Hypercube => 1 << p[0],
            FamilyKind::Spider => 1 + p.iter().sum::<usize>(),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(usize::to_string).collect();
        write!(f, "{}:{}", self.kind.name(), params.join(","))
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::parse(0, format!("expected `kind:params`, got `{s}`")))?;
        let kind = FamilyKind::from_name(name.trim())
            .ok_or_else(|| Error::parse(0, format!("unknown family `{name}`")))?;
        let mut params = Vec::new();
        let mut offset = name.len() + 1;
        for part in rest.split(',') {
            let value = part.trim().parse::<usize>().map_err(|_| {
                Error::parse(offset, format!("expected a nonnegative integer, got `{part}`"))
            })?;
            params.push(value);
            offset += part.len() + 1;
        }
        FamilySpec::new(kind, params)
    }
}

/// Builds the canonical member of a family.
///
/// Numbering: paths and cycles run `0..n` in order; `kmn:m,n` puts the
/// `m`-side first; `krrr:r` uses parts `[0,r)`, `[r,2r)`, `[2r,3r)`;
/// `star:k` has centre 0; `wheel:n` is the cycle on `0..n-1` with the hub
/// last; `hypercube:d` joins labels differing in one bit; `complete_split:r,s`
/// puts the `r` independent vertices first and the clique after; spiders have
/// the centre at 0 and legs laid out one after another, each starting next
/// to the centre.
pub fn build_family(spec: &FamilySpec) -> Result<Graph> {
    spec.validate()?;
    let p = &spec.params;
    let n = spec.order();
    let mut edges = Vec::new();
    match spec.kind {
        FamilyKind::Path => edges.extend((1..n).map(|i| (i - 1, i))),
        FamilyKind::Cycle => {
            edges.extend((1..n).map(|i| (i - 1, i)));
            edges.push((0, n - 1));
        }
        FamilyKind::Complete => {
            for u in 0..n {
                edges.extend((u + 1..n).map(|v| (u, v)));
            }
        }
        FamilyKind::Empty => {}
        FamilyKind::CompleteBipartite => {
            for u in 0..p[0] {
                edges.extend((p[0]..n).map(|v| (u, v)));
            }
        }
        FamilyKind::CompleteTripartiteBalanced => {
            let r = p[0];
            for u in 0..n {
                for v in u + 1..n {
                    if u / r != v / r {
                        edges.push((u, v));
                    }
                }
            }
        }
        FamilyKind::Star => edges.extend((1..n).map(|i| (0, i))),
        FamilyKind::Wheel => {
            let rim = n - 1;
            edges.extend((1..rim).map(|i| (i - 1, i)));
            edges.push((0, rim - 1));
            edges.extend((0..rim).map(|i| (i, rim)));
        }
        FamilyKind::Hypercube => {
            for u in 0..n {
                for b in 0..p[0] {
                    let v = u ^ (1 << b);
                    if u < v {
                        edges.push((u, v));
                    }
                }
            }
        }
        FamilyKind::CompleteSplit => {
            let independent = Graph::empty(p[0])?;
            let clique = build_family(&FamilySpec::new(FamilyKind::Complete, vec![p[1]])?)?;
            let g = combine(CombineOp::Join, &independent, Some(&clique))?;
            return Ok(g.with_label(spec.to_string()));
        }
        FamilyKind::Spider => {
            let mut next = 1;
            for &len in p {
                edges.push((0, next));
                for i in 1..len {
                    edges.push((next + i - 1, next + i));
                }
                next += len;
            }
        }
    }
    Ok(Graph::new(n, edges)?.with_label(spec.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Graph {
        build_family(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn path_four() {
        assert_eq!(g("path:4").edges(), &[(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn wheel_five_has_hub_last() {
        let w = g("wheel:5");
        assert_eq!(w.order(), 5);
        assert_eq!(w.neighbors(4), &[0, 1, 2, 3]);
        for v in 0..4 {
            assert_eq!(w.degree(v), 3);
        }
        assert!(w.has_edge(0, 3) && !w.has_edge(0, 2));
    }

    #[test]
    fn complete_split_two_two_is_diamond() {
        let d = g("complete_split:2,2");
        assert_eq!(d.edge_count(), 5);
        assert!(!d.has_edge(0, 1));
        assert!(d.has_edge(2, 3));
    }

    #[test]
    fn small_wheel_is_rejected() {
        assert!(matches!("wheel:3".parse::<FamilySpec>(), Err(Error::Parameter(_))));
        assert!("hypercube:0".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn parse_reports_offsets() {
        match "kmn:2,x".parse::<FamilySpec>() {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn family_sizes() {
        assert_eq!(g("hypercube:3").edge_count(), 12);
        assert_eq!(g("krrr:2").edge_count(), 12);
        assert_eq!(g("spider:2,1,1").order(), 5);
        assert_eq!(g("spider:2,1,1").degree(0), 3);
        assert_eq!(g("star:3").edge_count(), 3);
        assert!(g("empty:3").is_edgeless());
        assert_eq!(g("kmn:2,3").to_string(), "complete_bipartite:2,3 (D]o)");
    }

    #[test]
    fn display_round_trips() {
        let spec: FamilySpec = "kmn:2,3".parse().unwrap();
        assert_eq!(spec.to_string().parse::<FamilySpec>().unwrap(), spec);
    }
}
