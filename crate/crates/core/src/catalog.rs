//! Closed-form parameter values for named graphs, loaded from
//! `data/catalog.toml`, matched against arbitrary graphs up to isomorphism,
//! and checked against the numerical and combinatorial machinery.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use evalexpr::{
    build_operator_tree, eval_boolean_with_context, eval_int_with_context, ContextWithMutableVariables,
    DefaultNumericTypes, HashMapContext,
};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gencyc::max_hollow_rank;
use crate::graph::{build_family, combine, is_isomorphic, CombineOp, FamilyKind, FamilySpec, Graph};
use crate::realizers::{realize_complete_bipartite, realize_m_plus, realize_path, seeded};
use crate::search::{estimate_extremes, search_oml, search_spectrum, KnownValues, SearchConfig, SearchStatus};
use crate::spectra::Oml;
use crate::target::TargetSpectrum;

const BUILTIN: &str = include_str!("../data/catalog.toml");

/// Members up to this order are instantiated by [`verify_entry`].
pub const DEFAULT_VERIFY_ORDER: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Param {
    #[serde(rename = "q0")]
    Q0,
    M0,
    MM0,
    MR0,
    #[serde(rename = "mr0")]
    Mr0,
    #[serde(rename = "M_plus")]
    MPlus,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::Q0 => "q0",
            Param::M0 => "M0",
            Param::MM0 => "MM0",
            Param::MR0 => "MR0",
            Param::Mr0 => "mr0",
            Param::MPlus => "M_plus",
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A stored value: one expression, or a bracket of two.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueExpr {
    Exact(String),
    Bracket { lo: String, hi: String },
}

impl ValueExpr {
    fn expressions(&self) -> Vec<&str> {
        match self {
            ValueExpr::Exact(e) => vec![e],
            ValueExpr::Bracket { lo, hi } => vec![lo, hi],
        }
    }
}

/// An instantiated value `lo <= x <= hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Range {
    pub lo: usize,
    pub hi: usize,
}

impl Range {
    pub fn exact(v: usize) -> Self {
        Range { lo: v, hi: v }
    }

    pub fn as_exact(&self) -> Option<usize> {
        (self.lo == self.hi).then_some(self.lo)
    }

    pub fn contains_range(&self, other: &Range) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn is_disjoint(&self, other: &Range) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub union: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<(usize, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub when: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<Param, ValueExpr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oml_set: Option<Vec<Oml>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectra_law: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub refs: Vec<String>,
}

/// One concrete graph described by an entry.
#[derive(Clone, Debug, PartialEq)]
pub struct Member {
    pub name: String,
    pub bindings: BTreeMap<String, i64>,
    pub family: Option<FamilySpec>,
    pub graph: Graph,
}

enum Source<'a> {
    Template(&'a str),
    Union(&'a [String]),
    Edges(&'a [(usize, usize)], usize),
}

impl CatalogEntry {
    fn source(&self) -> Result<Source<'_>> {
        let bad = |why: &str| Err(Error::param(format!("catalog entry `{}`: {why}", self.id)));
        match (&self.graph, &self.union, &self.edges) {
            (Some(t), None, None) => Ok(Source::Template(t)),
            (None, Some(u), None) if !u.is_empty() => Ok(Source::Union(u)),
            (None, None, Some(e)) => match self.order {
                Some(n) => Ok(Source::Edges(e, n)),
                None => bad("`edges` needs `order`"),
            },
            _ => bad("exactly one of `graph`, `union`, `edges` is required"),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |why: String| Err(Error::param(format!("catalog entry `{}`: {why}", self.id)));
        let source = self.source()?;
        if !self.values.is_empty() && self.refs.is_empty() {
            return bad("stored values need at least one reference".into());
        }
        let mut exprs: Vec<&str> = self.values.values().flat_map(ValueExpr::expressions).collect();
        exprs.extend(self.when.as_deref());
        let templates: Vec<&str> = match source {
            Source::Template(t) => vec![t],
            Source::Union(u) => u.iter().map(String::as_str).collect(),
            Source::Edges(e, n) => {
                Graph::new(n, e.iter().copied())?;
                Vec::new()
            }
        };
        for t in templates {
            let (kind, params) = split_template(t)?;
            if FamilyKind::from_name(kind).is_none() {
                return bad(format!("unknown family `{kind}`"));
            }
            exprs.extend(params);
        }
        for e in exprs {
            if let Err(err) = build_operator_tree::<DefaultNumericTypes>(e) {
                return bad(format!("bad expression `{e}`: {err}"));
            }
        }
        if let Some(set) = &self.oml_set {
            let orders: BTreeSet<usize> = set.iter().map(Oml::order).collect();
            if orders.len() > 1 || set.iter().any(|o| o.0.contains(&0)) {
                return bad("oml_set lists must be compositions of one order".into());
            }
        }
        Ok(())
    }

    /// Members of order at most `max_order`, with every variable ranging
    /// over `1..=max_order`.
    pub fn instantiate(&self, max_order: usize) -> Result<Vec<Member>> {
        let source = self.source()?;
        let mut out = Vec::new();
        let mut assignment = vec![1i64; self.vars.len()];
        loop {
            let bindings: BTreeMap<String, i64> =
                self.vars.iter().cloned().zip(assignment.iter().copied()).collect();
            if let Some(m) = self.member(&source, &bindings, max_order)? {
                out.push(m);
            }
            // odometer over 1..=max_order
            let mut i = 0;
            loop {
                if i == assignment.len() {
                    return Ok(out);
                }
                if assignment[i] < max_order as i64 {
                    assignment[i] += 1;
                    break;
                }
                assignment[i] = 1;
                i += 1;
            }
        }
    }

    fn member(&self, source: &Source<'_>, bindings: &BTreeMap<String, i64>, max_order: usize) -> Result<Option<Member>> {
        let ctx = context(bindings)?;
        let specs = match source {
            Source::Edges(e, n) => {
                if *n > max_order {
                    return Ok(None);
                }
                let g = Graph::new(*n, e.iter().copied())?.with_label(self.id.clone());
                return self.accept(bindings, None, g, self.id.clone());
            }
            Source::Template(t) => vec![*t],
            Source::Union(u) => u.iter().map(String::as_str).collect(),
        };
        let mut parsed = Vec::with_capacity(specs.len());
        for t in specs {
            match eval_template(t, &ctx)? {
                Some(s) => parsed.push(s),
                None => return Ok(None),
            }
        }
        if parsed.iter().map(FamilySpec::order).sum::<usize>() > max_order {
            return Ok(None);
        }
        let name: Vec<String> = parsed.iter().map(ToString::to_string).collect();
        let name = name.join(" + ");
        let mut graph = build_family(&parsed[0])?;
        for s in &parsed[1..] {
            graph = combine(CombineOp::DisjointUnion, &graph, Some(&build_family(s)?))?;
        }
        let family = (parsed.len() == 1).then(|| parsed[0].clone());
        self.accept(bindings, family, graph.with_label(name.clone()), name)
    }

    fn accept(
        &self,
        bindings: &BTreeMap<String, i64>,
        family: Option<FamilySpec>,
        graph: Graph,
        name: String,
    ) -> Result<Option<Member>> {
        if let Some(w) = &self.when {
            let mut ctx = context(bindings)?;
            set(&mut ctx, "order", graph.order() as i64)?;
            let ok = eval_boolean_with_context(w, &ctx)
                .map_err(|e| Error::param(format!("catalog entry `{}`: `{w}`: {e}", self.id)))?;
            if !ok {
                return Ok(None);
            }
        }
        Ok(Some(Member { name, bindings: bindings.clone(), family, graph }))
    }

    /// The member isomorphic to `g`, if any.
    pub fn matches(&self, g: &Graph) -> Result<Option<Member>> {
        let n = g.order();
        for m in self.instantiate(n)? {
            if m.graph.order() == n && m.graph.edge_count() == g.edge_count() && is_isomorphic(&m.graph, g) {
                return Ok(Some(m));
            }
        }
        Ok(None)
    }

    /// Stored values evaluated at a member.
    pub fn values_for(&self, member: &Member) -> Result<BTreeMap<Param, Range>> {
        let mut ctx = context(&member.bindings)?;
        set(&mut ctx, "order", member.graph.order() as i64)?;
        let eval = |e: &str| -> Result<usize> {
            let v = eval_int_with_context(e, &ctx)
                .map_err(|err| Error::param(format!("catalog entry `{}`: `{e}`: {err}", self.id)))?;
            usize::try_from(v)
                .map_err(|_| Error::Consistency(format!("catalog entry `{}`: `{e}` is negative", self.id)))
        };
        let mut out = BTreeMap::new();
        for (&p, v) in &self.values {
            let r = match v {
                ValueExpr::Exact(e) => Range::exact(eval(e)?),
                ValueExpr::Bracket { lo, hi } => Range { lo: eval(lo)?, hi: eval(hi)? },
            };
            if r.lo > r.hi {
                return Err(Error::Consistency(format!("catalog entry `{}`: {p} bracket {r:?} is empty", self.id)));
            }
            out.insert(p, r);
        }
        Ok(out)
    }
}

fn split_template(t: &str) -> Result<(&str, Vec<&str>)> {
    let (kind, rest) = t
        .split_once(':')
        .ok_or_else(|| Error::param(format!("family template `{t}` needs `kind:params`")))?;
    Ok((kind.trim(), rest.split(',').map(str::trim).collect()))
}

/// `None` when the parameters fall outside the family's domain.
fn eval_template(t: &str, ctx: &HashMapContext) -> Result<Option<FamilySpec>> {
    let (kind, params) = split_template(t)?;
    let kind = FamilyKind::from_name(kind).ok_or_else(|| Error::param(format!("unknown family `{kind}`")))?;
    let mut values = Vec::with_capacity(params.len());
    for p in params {
        let v = eval_int_with_context(p, ctx).map_err(|e| Error::param(format!("`{p}`: {e}")))?;
        match usize::try_from(v) {
            Ok(v) => values.push(v),
            Err(_) => return Ok(None),
        }
    }
    Ok(FamilySpec::new(kind, values).ok())
}

fn context(bindings: &BTreeMap<String, i64>) -> Result<HashMapContext> {
    let mut ctx = HashMapContext::new();
    for (k, &v) in bindings {
        set(&mut ctx, k, v)?;
    }
    Ok(ctx)
}

fn set(ctx: &mut HashMapContext, name: &str, v: i64) -> Result<()> {
    ctx.set_value(name.to_string(), evalexpr::Value::Int(v))
        .map_err(|e| Error::param(format!("cannot bind `{name}`: {e}")))
}

/// A catalog entry matched against a concrete graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CatalogHit {
    pub id: String,
    pub member: String,
    pub bindings: BTreeMap<String, i64>,
    pub values: BTreeMap<Param, Range>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oml_set: Option<Vec<Oml>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectra_law: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub refs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogFile {
    #[serde(default)]
    entry: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn from_toml(text: &str) -> Result<Self> {
        let file: CatalogFile = toml::from_str(text).map_err(|e| {
            let offset = e.span().map_or(0, |s| s.start);
            Error::parse(offset, e.message().to_string())
        })?;
        let mut ids = BTreeSet::new();
        for e in &file.entry {
            if !ids.insert(e.id.as_str()) {
                return Err(Error::param(format!("duplicate catalog id `{}`", e.id)));
            }
            e.validate()?;
        }
        Ok(Catalog { entries: file.entry })
    }

    /// The catalog shipped with the crate.
    pub fn builtin() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::from_toml(BUILTIN).expect("built-in catalog is well formed"))
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, id: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    /// All entries describing a graph isomorphic to `g`.
    pub fn lookup(&self, g: &Graph) -> Result<Vec<CatalogHit>> {
        let mut hits = Vec::new();
        for e in &self.entries {
            if let Some(m) = e.matches(g)? {
                hits.push(CatalogHit {
                    id: e.id.clone(),
                    values: e.values_for(&m)?,
                    member: m.name,
                    bindings: m.bindings,
                    oml_set: e.oml_set.clone(),
                    spectra_law: e.spectra_law.clone(),
                    notes: e.notes.clone(),
                    refs: e.refs.clone(),
                });
            }
        }
        Ok(hits)
    }

    /// Intersection of every bracket stored for `g`.
    pub fn ranges(&self, g: &Graph) -> Result<BTreeMap<Param, Range>> {
        let mut out: BTreeMap<Param, Range> = BTreeMap::new();
        for hit in self.lookup(g)? {
            for (p, r) in hit.values {
                let merged = match out.get(&p) {
                    Some(old) => Range { lo: old.lo.max(r.lo), hi: old.hi.min(r.hi) },
                    None => r,
                };
                if merged.lo > merged.hi {
                    return Err(Error::Consistency(format!("catalog entries disagree on {p} for this graph")));
                }
                out.insert(p, merged);
            }
        }
        Ok(out)
    }

    pub fn known_values(&self, g: &Graph) -> Result<KnownValues> {
        let r = self.ranges(g)?;
        let exact = |p| r.get(&p).and_then(Range::as_exact);
        let mr0 = exact(Param::Mr0).or_else(|| exact(Param::M0).map(|m| g.order() - m));
        Ok(KnownValues { q0: exact(Param::Q0), m0: exact(Param::M0), mm0: exact(Param::MM0), mr0 })
    }
}

pub fn lookup(g: &Graph) -> Result<Vec<CatalogHit>> {
    Catalog::builtin().lookup(g)
}

pub fn known_values(g: &Graph) -> Result<KnownValues> {
    Catalog::builtin().known_values(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimStatus {
    Confirmed,
    Contradicted,
    /// Consistent with computation, which was not sharp enough to decide.
    Unverified,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub member: String,
    pub claim: String,
    pub status: ClaimStatus,
    pub evidence: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub entry: String,
    pub claims: Vec<Claim>,
}

impl VerifyReport {
    pub fn count(&self, status: ClaimStatus) -> usize {
        self.claims.iter().filter(|c| c.status == status).count()
    }

    pub fn is_consistent(&self) -> bool {
        self.count(ClaimStatus::Contradicted) == 0
    }
}

pub fn verify_entry(entry: &CatalogEntry, cfg: &SearchConfig) -> Result<VerifyReport> {
    verify_entry_up_to(entry, cfg, DEFAULT_VERIFY_ORDER)
}

/// Checks every stored claim on each member of order at most `max_order`.
/// Upper bounds on `q0` and lower bounds on `M0`, `MM0`, `M_plus` come
/// from matrices found by construction or search; the opposite sides from
/// obstruction rules. Computed brackets are never seeded with catalog data.
pub fn verify_entry_up_to(entry: &CatalogEntry, cfg: &SearchConfig, max_order: usize) -> Result<VerifyReport> {
    cfg.validate()?;
    let mut claims = Vec::new();
    for member in entry.instantiate(max_order)? {
        verify_member(entry, &member, cfg, &mut claims)?;
    }
    Ok(VerifyReport { entry: entry.id.clone(), claims })
}

fn compare(stored: Range, computed: Range) -> ClaimStatus {
    if stored.is_disjoint(&computed) {
        ClaimStatus::Contradicted
    } else if stored.contains_range(&computed) {
        ClaimStatus::Confirmed
    } else {
        ClaimStatus::Unverified
    }
}

fn verify_member(entry: &CatalogEntry, member: &Member, cfg: &SearchConfig, claims: &mut Vec<Claim>) -> Result<()> {
    let g = &member.graph;
    let n = g.order();
    let values = entry.values_for(member)?;
    let mut push = |claim: String, status: ClaimStatus, evidence: String| {
        claims.push(Claim { member: member.name.clone(), claim, status, evidence });
    };

    if let Some(&stored) = values.get(&Param::MR0) {
        let mr = max_hollow_rank(g)?;
        push(format!("MR0 = {stored}"), compare(stored, Range::exact(mr)), format!("largest generalized cycle has order {mr}"));
    }

    let needs_extremes = [Param::Q0, Param::M0, Param::MM0, Param::Mr0, Param::MPlus]
        .iter()
        .any(|p| values.contains_key(p));
    if needs_extremes {
        let ext = estimate_extremes(g, cfg, &KnownValues::default())?;
        let m0 = Range { lo: ext.m0.lo, hi: ext.m0.hi };
        let mm0 = Range { lo: ext.mm0.lo, hi: ext.mm0.hi };
        let computed = [
            (Param::Q0, Range { lo: ext.q0.lo, hi: ext.q0.hi }),
            (Param::M0, m0),
            (Param::MM0, mm0),
            (Param::Mr0, Range { lo: n - m0.hi, hi: n - m0.lo }),
        ];
        for (p, c) in computed {
            if let Some(&stored) = values.get(&p) {
                push(format!("{p} = {stored}"), compare(stored, c), format!("computed bracket {c}"));
            }
        }
        if let Some(&stored) = values.get(&Param::MPlus) {
            // a psd matrix of nullity k rescales to unit diagonal, and
            // Gram - I is hollow with -1 of multiplicity k, so k <= MM0
            let mut lo = 0;
            for k in [stored.hi + 1, stored.lo] {
                if k >= 1 && k < n && realize_m_plus(g, k, cfg.seed).is_ok() {
                    lo = k;
                    break;
                }
            }
            let c = Range { lo: lo.min(mm0.hi), hi: mm0.hi };
            push(format!("M_plus = {stored}"), compare(stored, c), format!("computed bracket {c}"));
        }
    }

    if let Some(set) = &entry.oml_set {
        if set.first().is_some_and(|o| o.order() == n) {
            let listed: BTreeSet<&Oml> = set.iter().collect();
            for oml in Oml::compositions(n) {
                let out = search_oml(g, &oml, cfg)?;
                let inside = listed.contains(&oml);
                let status = match (inside, out.status) {
                    (true, SearchStatus::Realized) | (false, SearchStatus::Refuted) => ClaimStatus::Confirmed,
                    (true, SearchStatus::Refuted) | (false, SearchStatus::Realized) => ClaimStatus::Contradicted,
                    (_, SearchStatus::NotFound) => ClaimStatus::Unverified,
                };
                let evidence = match (&out.best, out.bound_certificates.first()) {
                    (Some(best), _) if out.status == SearchStatus::Realized => {
                        format!("realized, residual {:.2e}", best.residual)
                    }
                    (_, Some(cert)) => format!("refuted by {}", cert.rule),
                    _ => "search inconclusive".into(),
                };
                let verb = if inside { "occurs" } else { "does not occur" };
                push(format!("{oml:?} {verb}"), status, evidence);
            }
        }
    }

    if let Some(law) = &entry.spectra_law {
        verify_law(law, member, cfg, &mut push)?;
    }
    Ok(())
}

const LAW_SAMPLES: usize = 4;

fn distinct_positive(rng: &mut impl Rng, k: usize) -> Vec<f64> {
    // spaced so that no two values collide
    let mut x = 0.0;
    (0..k)
        .map(|_| {
            x += rng.random_range(0.25..1.5);
            x
        })
        .collect()
}

fn verify_law(
    law: &str,
    member: &Member,
    cfg: &SearchConfig,
    push: &mut impl FnMut(String, ClaimStatus, String),
) -> Result<()> {
    let g = &member.graph;
    let n = g.order();
    let mut rng = seeded(cfg.seed);
    let residual_ok = |r: f64, scale: f64| r <= cfg.tol * scale.max(1.0);
    match (law, &member.family) {
        ("symmetric_distinct", Some(spec)) if spec.kind == FamilyKind::Path => {
            for _ in 0..LAW_SAMPLES {
                let half = distinct_positive(&mut rng, n / 2);
                let mut eigs: Vec<f64> = half.iter().flat_map(|&x| [x, -x]).collect();
                if n % 2 == 1 {
                    eigs.push(0.0);
                }
                let s = TargetSpectrum::from_f64(&eigs)?;
                let r = realize_path(&s, n)?;
                let status = if residual_ok(r.residual, s.spectral_radius()) {
                    ClaimStatus::Confirmed
                } else {
                    ClaimStatus::Unverified
                };
                push(format!("{s} occurs"), status, format!("tridiagonal reconstruction, residual {:.2e}", r.residual));
            }
            if n >= 2 {
                let mut eigs = distinct_positive(&mut rng, n);
                let shift = eigs.iter().sum::<f64>() / n as f64;
                eigs.iter_mut().for_each(|x| *x -= shift);
                let s = TargetSpectrum::from_f64(&eigs)?;
                let v = crate::obstructions::check_spectrum(g, &s)?;
                let status = if v.is_refuted() { ClaimStatus::Confirmed } else { ClaimStatus::Unverified };
                let rule = v.certificate().map_or("no rule fired".to_string(), |c| c.rule.clone());
                push(format!("asymmetric {s} does not occur"), status, rule);
            }
        }
        ("complete_bipartite", Some(spec)) if spec.kind == FamilyKind::CompleteBipartite => {
            let (a, b) = (spec.params[0], spec.params[1]);
            let small = a.min(b);
            for k in 1..=small {
                let half = distinct_positive(&mut rng, k);
                let mut eigs: Vec<f64> = half.iter().flat_map(|&x| [x, -x]).collect();
                eigs.resize(n, 0.0);
                let s = TargetSpectrum::from_f64(&eigs)?;
                let status = match realize_complete_bipartite(a, b, &s, cfg.seed) {
                    Ok(r) if residual_ok(r.residual, s.spectral_radius()) => ClaimStatus::Confirmed,
                    Ok(_) => ClaimStatus::Unverified,
                    Err(Error::Infeasible { .. }) => ClaimStatus::Contradicted,
                    Err(e) => return Err(e),
                };
                push(format!("{s} occurs"), status, "orthogonal factor construction".into());
            }
            if 2 * (small + 1) <= n {
                let half = distinct_positive(&mut rng, small + 1);
                let mut eigs: Vec<f64> = half.iter().flat_map(|&x| [x, -x]).collect();
                eigs.resize(n, 0.0);
                let s = TargetSpectrum::from_f64(&eigs)?;
                let v = crate::obstructions::check_spectrum(g, &s)?;
                let status = if v.is_refuted() { ClaimStatus::Confirmed } else { ClaimStatus::Unverified };
                let rule = v.certificate().map_or("no rule fired".to_string(), |c| c.rule.clone());
                push(format!("{s} does not occur"), status, rule);
            }
        }
        ("complete_negative_part", Some(spec)) if spec.kind == FamilyKind::Complete => {
            let mut neg = distinct_positive(&mut rng, n - 1);
            neg.iter_mut().for_each(|x| *x = -*x);
            let top = -neg.iter().sum::<f64>();
            neg.push(top);
            let s = TargetSpectrum::from_f64(&neg)?;
            let out = search_spectrum(g, &s, cfg)?;
            let status = match out.status {
                SearchStatus::Realized => ClaimStatus::Confirmed,
                SearchStatus::Refuted => ClaimStatus::Contradicted,
                SearchStatus::NotFound => ClaimStatus::Unverified,
            };
            push(format!("{s} occurs"), status, format!("search {:?}", out.status));
        }
        _ => push(format!("spectra law `{law}`"), ClaimStatus::Unverified, "no automatic check".into()),
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(s: &str) -> Graph {
        build_family(&s.parse().unwrap()).unwrap()
    }

    fn ids(g: &Graph) -> Vec<String> {
        lookup(g).unwrap().into_iter().map(|h| h.id).collect()
    }

    #[test]
    fn builtin_loads() {
        let c = Catalog::builtin();
        assert!(c.entries().len() >= 20);
        for e in c.entries() {
            assert!(e.values.is_empty() || !e.refs.is_empty(), "{}", e.id);
        }
    }

    #[test]
    fn bad_catalogs_are_rejected() {
        let missing_refs = "[[entry]]\nid = \"x\"\ngraph = \"path:n\"\nvars = [\"n\"]\nvalues = { q0 = \"n\" }\n";
        assert!(Catalog::from_toml(missing_refs).is_err());
        let two_sources = "[[entry]]\nid = \"x\"\ngraph = \"path:3\"\nunion = [\"path:2\"]\n";
        assert!(Catalog::from_toml(two_sources).is_err());
        let bad_expr = "[[entry]]\nid = \"x\"\ngraph = \"path:(n\"\nvars = [\"n\"]\n";
        assert!(Catalog::from_toml(bad_expr).is_err());
        let dup = "[[entry]]\nid = \"x\"\ngraph = \"path:3\"\n[[entry]]\nid = \"x\"\ngraph = \"path:4\"\n";
        assert!(Catalog::from_toml(dup).is_err());
    }

    #[test]
    fn lookup_examples() {
        let p5 = lookup(&fam("path:5")).unwrap();
        assert_eq!(p5.len(), 1);
        assert_eq!(p5[0].values[&Param::Q0], Range::exact(5));
        assert_eq!(p5[0].values[&Param::MR0], Range::exact(4));

        let c6 = Catalog::builtin().known_values(&fam("cycle:6")).unwrap();
        assert_eq!((c6.q0, c6.mm0, c6.mr0), (Some(3), Some(2), Some(4)));
        let c7 = known_values(&fam("cycle:7")).unwrap();
        assert_eq!((c7.q0, c7.mr0), (Some(4), Some(7)));

        let w5 = lookup(&fam("wheel:5")).unwrap();
        assert_eq!(w5.len(), 1);
        assert_eq!(w5[0].oml_set.as_ref().unwrap().len(), 10);
        assert_eq!(w5[0].values[&Param::MPlus], Range::exact(3));

        assert!(ids(&fam("complete:4")).contains(&"K4".to_string()));
        assert!(ids(&fam("complete:4")).contains(&"complete".to_string()));
        // W4 = K4
        assert!(ids(&fam("wheel:4")).contains(&"wheel_even".to_string()));
        assert!(lookup(&fam("star:4")).unwrap().iter().any(|h| h.id == "complete_bipartite_unbalanced"));
        assert!(lookup(&fam("spider:3,1,1")).unwrap().is_empty());
    }

    #[test]
    fn lookup_is_up_to_isomorphism() {
        // C5 relabelled
        let g = Graph::new(5, [(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(ids(&g), ["cycle_odd"]);
        let diamond = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)]).unwrap();
        assert_eq!(ids(&diamond), ["diamond", "complete_split"]);
        let u = combine(CombineOp::DisjointUnion, &fam("complete:4"), Some(&fam("complete:3"))).unwrap();
        assert_eq!(ids(&u), ["triangle_plus_clique"]);
        let u = combine(CombineOp::DisjointUnion, &fam("complete:3"), Some(&fam("complete:6"))).unwrap();
        assert!(ids(&u).is_empty());
    }

    #[test]
    fn split_brackets_intersect() {
        let r = Catalog::builtin().ranges(&fam("complete_split:3,2")).unwrap();
        assert_eq!(r[&Param::Q0], Range::exact(3));
        let r = Catalog::builtin().ranges(&fam("complete_split:2,3")).unwrap();
        assert_eq!(r[&Param::Q0], Range { lo: 2, hi: 3 });
    }

    #[test]
    fn verify_small_entries() {
        let cfg = SearchConfig { restarts: 16, ..SearchConfig::default() };
        for id in ["cycle_even", "K4", "paw", "complete_bipartite_unbalanced"] {
            let e = Catalog::builtin().get(id).unwrap();
            let report = verify_entry_up_to(e, &cfg, 5).unwrap();
            assert!(!report.claims.is_empty(), "{id}");
            for c in &report.claims {
                assert_ne!(c.status, ClaimStatus::Contradicted, "{id}: {c:?}");
            }
        }
    }

    #[test]
    fn wrong_value_is_contradicted() {
        let text = "[[entry]]\nid = \"bad\"\ngraph = \"cycle:n\"\nvars = [\"n\"]\nwhen = \"n <= 5\"\nvalues = { MR0 = \"n - 1\" }\nrefs = [\"deliberately wrong\"]\n";
        let c = Catalog::from_toml(text).unwrap();
        let report = verify_entry(&c.entries()[0], &SearchConfig::default()).unwrap();
        assert_eq!(report.count(ClaimStatus::Contradicted), 3);
    }
}
