//! Necessary conditions for a spectrum or multiplicity list to occur in the
//! hollow class of a graph. A rule either refutes a target, producing a
//! certificate whose graph facts can be recomputed, or passes it. Passing
//! never means the target is realizable.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gencyc::{max_hollow_rank, mr0_lower_bound};
use crate::graph::{longest_induced_path, Graph};
use crate::spectra::Oml;
use crate::target::{Rational, Target, TargetSpectrum, Value};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FactValue {
    Bool(bool),
    Int(i64),
    Text(String),
}

impl fmt::Display for FactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactValue::Bool(b) => write!(f, "{b}"),
            FactValue::Int(i) => write!(f, "{i}"),
            FactValue::Text(s) => write!(f, "{s}"),
        }
    }
}

impl From<bool> for FactValue {
    fn from(b: bool) -> Self {
        FactValue::Bool(b)
    }
}

impl From<usize> for FactValue {
    fn from(i: usize) -> Self {
        FactValue::Int(i as i64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    Refuted,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObstructionCertificate {
    pub graph: Graph,
    pub target: Target,
    pub rule: String,
    pub facts: Vec<(String, FactValue)>,
    pub verdict: Conclusion,
}

impl ObstructionCertificate {
    /// Recomputes every fact from the graph and compares.
    pub fn replay(&self) -> Result<()> {
        let checker = Checker::new(&self.graph);
        for (name, value) in &self.facts {
            let fresh = checker.fact(name)?;
            if &fresh != value {
                return Err(Error::Consistency(format!(
                    "fact {name}: stored {value}, recomputed {fresh}"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for ObstructionCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} refuted on {} by {}", self.target, self.graph, self.rule)?;
        for (k, v) in &self.facts {
            write!(f, "; {k} = {v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    /// Inconclusive.
    Pass,
    Refuted(Box<ObstructionCertificate>),
}

impl Verdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted(_))
    }

    pub fn certificate(&self) -> Option<&ObstructionCertificate> {
        match self {
            Verdict::Refuted(c) => Some(c),
            Verdict::Pass => None,
        }
    }
}

/// Graph facts computed on demand and cached. Facts that are too expensive
/// for the graph's order read as unavailable and disable the rules that
/// need them.
pub struct Checker<'g> {
    g: &'g Graph,
    mr0_max: OnceLock<Option<usize>>,
    mr0_lower: OnceLock<Option<usize>>,
    induced_path: OnceLock<usize>,
    deletions: OnceLock<Vec<usize>>,
}

impl<'g> Checker<'g> {
    pub fn new(g: &'g Graph) -> Self {
        Checker {
            g,
            mr0_max: OnceLock::new(),
            mr0_lower: OnceLock::new(),
            induced_path: OnceLock::new(),
            deletions: OnceLock::new(),
        }
    }

    pub fn graph(&self) -> &Graph {
        self.g
    }

    pub fn max_rank(&self) -> Option<usize> {
        *self.mr0_max.get_or_init(|| max_hollow_rank(self.g).ok())
    }

    /// Certified lower bound on the minimum rank.
    pub fn min_rank_lower(&self) -> Option<usize> {
        *self.mr0_lower.get_or_init(|| mr0_lower_bound(self.g).ok().map(|(k, _)| k))
    }

    pub fn longest_induced_path(&self) -> usize {
        *self.induced_path.get_or_init(|| longest_induced_path(self.g))
    }

    /// Vertices whose deletion leaves a bipartite graph.
    pub fn bipartite_deletions(&self) -> &[usize] {
        self.deletions.get_or_init(|| {
            (0..self.g.order())
                .filter(|&v| self.g.delete_vertex(v).map(|h| h.is_bipartite()).unwrap_or(false))
                .collect()
        })
    }

    /// Upper bound on the multiplicity of any eigenvalue: an induced path on
    /// `L` vertices has a principal submatrix with simple eigenvalues, and
    /// interlacing loses at most one per deleted vertex.
    pub fn multiplicity_upper(&self) -> usize {
        let n = self.g.order();
        if self.g.is_edgeless() {
            return n;
        }
        n + 1 - self.longest_induced_path()
    }

    /// Recomputes a named fact.
    pub fn fact(&self, name: &str) -> Result<FactValue> {
        let g = self.g;
        let unavailable = || Error::Precondition(format!("fact {name} is not computable for this graph"));
        let (head, args) = match name.split_once('(') {
            Some((h, rest)) => {
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| Error::param(format!("malformed fact name {name}")))?;
                let args: Vec<usize> = inner
                    .split(',')
                    .map(|a| a.trim().parse::<usize>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| Error::param(format!("malformed fact arguments in {name}")))?;
                if args.iter().any(|&a| a >= g.order()) {
                    return Err(Error::param(format!("vertex out of range in {name}")));
                }
                (h, args)
            }
            None => (name, Vec::new()),
        };
        let arity = |k: usize| -> Result<()> {
            if args.len() == k {
                Ok(())
            } else {
                Err(Error::param(format!("fact {head} takes {k} argument(s)")))
            }
        };
        let value = match head {
            "order" => {
                arity(0)?;
                g.order().into()
            }
            "is_edgeless" => {
                arity(0)?;
                g.is_edgeless().into()
            }
            "is_complete" => {
                arity(0)?;
                g.is_complete().into()
            }
            "is_bipartite" => {
                arity(0)?;
                g.is_bipartite().into()
            }
            "MR0" => {
                arity(0)?;
                self.max_rank().ok_or_else(unavailable)?.into()
            }
            "mr0_lower" => {
                arity(0)?;
                self.min_rank_lower().ok_or_else(unavailable)?.into()
            }
            "longest_induced_path" => {
                arity(0)?;
                self.longest_induced_path().into()
            }
            "complete_components" => {
                arity(0)?;
                FactValue::Text(complete_component_orders(g).map_or_else(
                    || "none".to_string(),
                    |v| v.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(","),
                ))
            }
            "common_neighbors" => {
                arity(2)?;
                g.common_neighbors(args[0], args[1]).len().into()
            }
            "bipartite_without" => {
                arity(1)?;
                g.delete_vertex(args[0])?.is_bipartite().into()
            }
            "MR0_without" => {
                arity(1)?;
                max_hollow_rank(&g.delete_vertex(args[0])?)?.into()
            }
            "mr0_lower_without" => {
                arity(1)?;
                mr0_lower_bound(&g.delete_vertex(args[0])?)?.0.into()
            }
            _ => return Err(Error::param(format!("unknown fact {name}"))),
        };
        Ok(value)
    }

    fn refute(&self, target: &Target, rule: &str, facts: &[&str]) -> Verdict {
        let facts = facts
            .iter()
            .map(|&name| {
                let v = self.fact(name).expect("rules only cite computable facts");
                (name.to_string(), v)
            })
            .collect();
        Verdict::Refuted(Box::new(ObstructionCertificate {
            graph: self.g.clone(),
            target: target.clone(),
            rule: rule.to_string(),
            facts,
            verdict: Conclusion::Refuted,
        }))
    }

    fn check_order(&self, target: &Target) -> Result<()> {
        if target.order() != self.g.order() {
            return Err(Error::param(format!(
                "target has order {}, graph has {} vertices",
                target.order(),
                self.g.order()
            )));
        }
        Ok(())
    }

    /// Runs every rule and returns the first refutation.
    pub fn check(&self, target: &Target) -> Result<Verdict> {
        self.check_order(target)?;
        for rule in RULES {
            let v = rule(self, target);
            if v.is_refuted() {
                return Ok(v);
            }
        }
        Ok(Verdict::Pass)
    }

    /// Every rule that refutes the target.
    pub fn all_certificates(&self, target: &Target) -> Result<Vec<ObstructionCertificate>> {
        self.check_order(target)?;
        Ok(RULES
            .iter()
            .filter_map(|rule| match rule(self, target) {
                Verdict::Refuted(c) => Some(*c),
                Verdict::Pass => None,
            })
            .collect())
    }

    pub fn single_value(&self, target: &Target) -> Verdict {
        let oml = target.oml();
        if self.g.is_edgeless() {
            let nonzero = match target {
                Target::Spectrum(s) => s.nonzero_count() > 0,
                Target::Oml(_) => false,
            };
            if oml.len() > 1 || nonzero {
                return self.refute(target, "edgeless_zero_matrix", &["is_edgeless"]);
            }
        } else if oml.len() == 1 {
            return self.refute(target, "single_eigenvalue", &["is_edgeless"]);
        }
        Verdict::Pass
    }

    pub fn trace(&self, target: &Target) -> Verdict {
        match target {
            Target::Spectrum(s) if !s.satisfies_trace() => self.refute(target, "trace", &[]),
            _ => Verdict::Pass,
        }
    }

    pub fn bipartite_symmetry(&self, target: &Target) -> Verdict {
        if !self.g.is_bipartite() {
            return Verdict::Pass;
        }
        let broken = match target {
            Target::Spectrum(s) => !s.is_symmetric(),
            Target::Oml(m) => !m.is_palindrome(),
        };
        if broken {
            return self.refute(target, "bipartite_symmetry", &["is_bipartite", "order"]);
        }
        Verdict::Pass
    }

    pub fn zero_multiplicity(&self, target: &Target) -> Verdict {
        let n = self.g.order();
        if self.g.is_edgeless() {
            return Verdict::Pass;
        }
        let (Some(max), Some(min)) = (self.max_rank(), self.min_rank_lower()) else {
            return Verdict::Pass;
        };
        let oml = target.oml();
        let facts = ["order", "is_edgeless", "MR0", "mr0_lower"];
        match target {
            Target::Spectrum(s) => {
                let z = s.zero_multiplicity();
                if z < n - max || n - z < min {
                    return self.refute(target, "zero_multiplicity", &facts);
                }
            }
            Target::Oml(_) => {
                if max < n {
                    // 0 is an eigenvalue strictly between the extreme ones
                    let q = oml.len();
                    let fits = (1..q.saturating_sub(1)).any(|j| oml.0[j] >= n - max && oml.0[j] <= n - min);
                    if !fits {
                        return self.refute(target, "zero_multiplicity", &facts);
                    }
                }
            }
        }
        if oml.len() == 2 && max < n {
            return self.refute(target, "zero_multiplicity", &facts);
        }
        Verdict::Pass
    }

    pub fn induced_path(&self, target: &Target) -> Verdict {
        let bound = self.multiplicity_upper();
        if target.oml().0.iter().any(|&m| m > bound) {
            return self.refute(target, "induced_path_multiplicity", &["order", "longest_induced_path"]);
        }
        Verdict::Pass
    }

    pub fn rr_orthogonality(&self, target: &Target) -> Verdict {
        let n = self.g.order();
        let oml = target.oml();
        if oml.len() != 2 || oml.0[0] != oml.0[1] {
            return Verdict::Pass;
        }
        for u in 0..n {
            for v in u + 1..n {
                if self.g.common_neighbors(u, v).len() == 1 {
                    let fact = format!("common_neighbors({u},{v})");
                    return self.refute(target, "rr_unique_common_neighbor", &[fact.as_str()]);
                }
            }
        }
        if n == 4 && self.g.is_complete() {
            return self.refute(target, "rr_complete_four", &["order", "is_complete"]);
        }
        Verdict::Pass
    }

    pub fn middle_two(&self, target: &Target) -> Verdict {
        match self.min_rank_lower() {
            Some(lower) => middle_two_with(self, target, lower),
            None => Verdict::Pass,
        }
    }

    /// A repeated eigenvalue `β` at sorted positions `p+1..=p+m` forces `β`
    /// at positions `p+1..=p+m-1` of every vertex-deleted submatrix. If the
    /// deletion is bipartite and that range contains a pair `i, n-i`, then
    /// `β = -β`, so `0` has multiplicity `m` and the rank is `n - m`.
    pub fn central_deletion(&self, target: &Target) -> Verdict {
        let n = self.g.order();
        let Some(&v) = self.bipartite_deletions().first() else {
            return Verdict::Pass;
        };
        let oml = target.oml();
        let without = format!("bipartite_without({v})");
        let mut p = 0;
        for (j, &m) in oml.0.iter().enumerate() {
            let forced_zero = m >= 2 && (p + 1..p + m).any(|i| (p + 1..p + m).contains(&(n - i)));
            if forced_zero {
                if let Target::Spectrum(s) = target {
                    if !s.values()[j].0.is_zero() {
                        return self.refute(target, "central_deletion", &[without.as_str(), "order"]);
                    }
                }
                if let Some(lower) = self.min_rank_lower() {
                    if n - m < lower {
                        return self.refute(target, "central_deletion", &[without.as_str(), "order", "mr0_lower"]);
                    }
                }
                if let Some(max) = self.max_rank() {
                    if m < n - max {
                        return self.refute(target, "central_deletion", &[without.as_str(), "order", "MR0"]);
                    }
                }
            }
            p += m;
        }
        Verdict::Pass
    }

    pub fn two_eigenvalue_deletion(&self, target: &Target) -> Verdict {
        let n = self.g.order();
        let oml = target.oml();
        if oml.len() != 2 || oml.0[0] < 2 || oml.0[1] < 2 {
            return Verdict::Pass;
        }
        let forced = forced_deletion_spectrum(n, oml.0[0]).expect("shape checked");
        let z = forced.zero_multiplicity();
        for &v in self.bipartite_deletions() {
            let without = format!("bipartite_without({v})");
            if !forced.is_symmetric() {
                return self.refute(target, "two_eigenvalue_deletion", &[without.as_str(), "order"]);
            }
            let Ok(h) = self.g.delete_vertex(v) else { continue };
            let (Ok(max), Ok((min, _))) = (max_hollow_rank(&h), mr0_lower_bound(&h)) else {
                continue;
            };
            if z < (n - 1) - max || z > (n - 1) - min {
                let a = format!("MR0_without({v})");
                let b = format!("mr0_lower_without({v})");
                return self.refute(
                    target,
                    "two_eigenvalue_deletion",
                    &[without.as_str(), "order", a.as_str(), b.as_str()],
                );
            }
        }
        Verdict::Pass
    }

    /// Two-valued targets on disjoint unions of complete graphs: every
    /// component `K_r` carries both values, `μ₁` with some multiplicity
    /// `1 <= k < r`, and the trace fixes `μ₁/μ₂ = -(r-k)/k`. All
    /// components must agree on that ratio.
    pub fn union_alignment(&self, target: &Target) -> Verdict {
        let oml = target.oml();
        if oml.len() != 2 {
            return Verdict::Pass;
        }
        let Some(orders) = complete_component_orders(self.g) else {
            return Verdict::Pass;
        };
        if orders.len() < 2 || orders.contains(&1) {
            return Verdict::Pass;
        }
        let wanted_ratio: Option<Value> = match target {
            Target::Spectrum(s) => {
                let (a, b) = (s.values()[0].0, s.values()[1].0);
                match (a.as_exact(), b.as_exact()) {
                    (Some(x), Some(y)) if !y.is_zero() => Some(Value::exact(-x / y)),
                    _ => Some(Value::approx(-a.as_f64() / b.as_f64())),
                }
            }
            Target::Oml(_) => None,
        };
        let first = orders[0];
        let aligned = (1..first).any(|k0| {
            let ratio = Rational::new((first - k0) as i128, k0 as i128);
            if let Some(w) = wanted_ratio {
                let ok = match w.as_exact() {
                    Some(x) => x == ratio,
                    None => (w.as_f64() - ratio_f64(ratio)).abs() <= 1e-9 * ratio_f64(ratio).max(1.0),
                };
                if !ok {
                    return false;
                }
            }
            let mut total = 0;
            for &r in &orders {
                // (r-k)/k = ratio  <=>  k = r / (1 + ratio)
                let k = Rational::from_integer(r as i128) / (Rational::from_integer(1) + ratio);
                if !k.is_integer() || *k.numer() < 1 || *k.numer() >= r as i128 {
                    return false;
                }
                total += *k.numer() as usize;
            }
            total == oml.0[0]
        });
        if !aligned {
            return self.refute(target, "union_alignment", &["complete_components"]);
        }
        Verdict::Pass
    }
}

fn ratio_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

type Rule = fn(&Checker<'_>, &Target) -> Verdict;

const RULES: [Rule; 10] = [
    |c, t| c.single_value(t),
    |c, t| c.trace(t),
    |c, t| c.bipartite_symmetry(t),
    |c, t| c.zero_multiplicity(t),
    |c, t| c.induced_path(t),
    |c, t| c.rr_orthogonality(t),
    |c, t| c.middle_two(t),
    |c, t| c.central_deletion(t),
    |c, t| c.two_eigenvalue_deletion(t),
    |c, t| c.union_alignment(t),
];

fn middle_two_with(c: &Checker<'_>, target: &Target, mr0_lower: usize) -> Verdict {
    let n = c.g.order();
    if !n.is_multiple_of(2) || n < 2 || mr0_lower + 1 < n {
        return Verdict::Pass;
    }
    let Some(&v) = c.bipartite_deletions().first() else {
        return Verdict::Pass;
    };
    let oml = target.oml();
    let mut left = 0;
    for &m in &oml.0 {
        if m == 2 && left == (n - 2) / 2 {
            let without = format!("bipartite_without({v})");
            return c.refute(target, "middle_two", &[without.as_str(), "order", "mr0_lower"]);
        }
        left += m;
    }
    Verdict::Pass
}

/// Orders of the components when all of them are complete.
fn complete_component_orders(g: &Graph) -> Option<Vec<usize>> {
    let mut orders = Vec::new();
    for comp in g.components() {
        let k = comp.len();
        let edges: usize = comp.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
        if edges != k * (k - 1) / 2 {
            return None;
        }
        orders.push(k);
    }
    orders.sort_unstable();
    Some(orders)
}

/// Spectrum of `A(v)` forced when `A` has spectrum `{μ₁^(r), μ₂^(n-r)}`,
/// normalized to `μ₂ = 1`: `{(-(n-r)/r)^(r-1), (2r-n)/r, 1^(n-r-1)}`.
pub fn forced_deletion_spectrum(n: usize, r: usize) -> Result<TargetSpectrum> {
    if r < 2 || r + 2 > n {
        return Err(Error::param(format!("need 2 <= r <= n-2, got r = {r}, n = {n}")));
    }
    let (n, r) = (n as i128, r as i128);
    let mu1 = Rational::new(-(n - r), r);
    let extra = Rational::new(2 * r - n, r);
    TargetSpectrum::new(vec![
        (Value::exact(mu1), (r - 1) as usize),
        (Value::exact(extra), 1),
        (Value::int(1), (n - r - 1) as usize),
    ])
}

pub fn check_target(g: &Graph, target: &Target) -> Result<Verdict> {
    Checker::new(g).check(target)
}

pub fn check_oml(g: &Graph, oml: &Oml) -> Result<Verdict> {
    check_target(g, &Target::Oml(oml.clone()))
}

pub fn check_spectrum(g: &Graph, s: &TargetSpectrum) -> Result<Verdict> {
    check_target(g, &Target::Spectrum(s.clone()))
}

pub fn check_trace(g: &Graph, s: &TargetSpectrum) -> Verdict {
    Checker::new(g).trace(&Target::Spectrum(s.clone()))
}

pub fn check_bipartite_symmetry(g: &Graph, target: &Target) -> Verdict {
    Checker::new(g).bipartite_symmetry(target)
}

pub fn check_zero_multiplicity(g: &Graph, target: &Target) -> Verdict {
    Checker::new(g).zero_multiplicity(target)
}

pub fn check_rr_orthogonality(g: &Graph, oml: &Oml) -> Verdict {
    Checker::new(g).rr_orthogonality(&Target::Oml(oml.clone()))
}

/// `mr0_lower` must be a certified lower bound on the minimum rank. The
/// certificate records it as the `mr0_lower` fact, so it replays only when
/// it equals the bound this crate certifies.
pub fn check_middle_two(g: &Graph, oml: &Oml, mr0_lower: usize) -> Verdict {
    middle_two_with(&Checker::new(g), &Target::Oml(oml.clone()), mr0_lower)
}

pub fn check_central_deletion(g: &Graph, target: &Target) -> Verdict {
    Checker::new(g).central_deletion(target)
}

pub fn check_two_eigenvalue_deletion(g: &Graph, oml: &Oml) -> Result<Verdict> {
    let n = g.order();
    if oml.len() != 2 || oml.order() != n {
        return Err(Error::param(format!("{oml} is not a two-eigenvalue list of order {n}")));
    }
    forced_deletion_spectrum(n, oml.0[0])?;
    Ok(Checker::new(g).two_eigenvalue_deletion(&Target::Oml(oml.clone())))
}

pub fn check_union_alignment(g: &Graph, target: &Target) -> Verdict {
    Checker::new(g).union_alignment(target)
}

/// Externally certified values, for instance from the catalog.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct KnownBounds {
    pub q0: Option<(usize, usize)>,
    pub mm0_upper: Option<usize>,
    pub mr0_upper: Option<usize>,
}

/// Bracket `(lower, upper)` on the minimum number of distinct eigenvalues.
///
/// The lower bound climbs past `q` whenever every composition of `n` into
/// `q` parts is refuted (tried for `n <= 12`). The upper bound is
/// `min(n, MR0 + 1)` from the all-simple construction, improved by known
/// values.
pub fn q0_bounds(g: &Graph, known: &KnownBounds) -> Result<(usize, usize)> {
    let n = g.order();
    if g.is_edgeless() {
        return Ok((1, 1));
    }
    let c = Checker::new(g);
    let mm = match known.mm0_upper {
        Some(k) => k.min(c.multiplicity_upper()),
        None => c.multiplicity_upper(),
    };
    let mut lower = 2usize.max(n.div_ceil(mm));
    if c.max_rank().is_some_and(|m| m < n) {
        lower = lower.max(3);
    }
    if g.is_bipartite() && n % 2 == 1 {
        lower = lower.max(3);
    }
    if n <= 12 {
        let mut by_len: BTreeMap<usize, Vec<Oml>> = BTreeMap::new();
        for oml in Oml::compositions(n) {
            by_len.entry(oml.len()).or_default().push(oml);
        }
        for (&q, lists) in &by_len {
            if q < lower {
                continue;
            }
            let all_refuted = lists
                .iter()
                .all(|l| c.check(&Target::Oml(l.clone())).map(|v| v.is_refuted()).unwrap_or(false));
            if !all_refuted {
                break;
            }
            lower = q + 1;
        }
    }
    let mut upper = match c.max_rank() {
        Some(m) => n.min(m + 1),
        None => n,
    };
    if let Some(m) = known.mr0_upper {
        upper = upper.min(m + 1);
    }
    if let Some((lo, hi)) = known.q0 {
        upper = upper.min(hi);
        lower = lower.max(lo);
    }
    if lower > upper {
        return Err(Error::Consistency(format!("q0 bracket is empty: {lower} > {upper}")));
    }
    Ok((lower, upper))
}
