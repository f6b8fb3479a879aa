//! Numerical search for hollow matrices on a fixed pattern: multistart
//! Hooke–Jeeves pattern search over edge weights, a grid oracle for tiny
//! graphs, and brackets for the extremal parameters.
//!
//! Restart `i` draws from its own generator seeded by [`restart_seed`], and
//! results are merged by (residual, index), so running restarts in parallel
//! cannot change the outcome.

use std::collections::BTreeSet;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{gaussian_vector, symmetric_eigenvalues, Mat};
use crate::obstructions::{q0_bounds, Checker, KnownBounds, ObstructionCertificate, Verdict};
use crate::realizers::{block_spread, realize_all_simple, seeded, RealizationResult};
use crate::spectra::{cluster, default_tol, HollowMatrix, Oml};
use crate::target::{Target, TargetSpectrum};

/// Restarts run in batches of this size; the first batch containing a
/// success ends the search.
const BATCH: usize = 8;

/// Gap kept between consecutive block means of a normalized matrix, so that
/// blocks cannot merge into a longer one.
const BLOCK_GAP: f64 = 1e-3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub seed: u64,
    pub restarts: usize,
    pub max_iters: usize,
    pub initial_step: f64,
    pub min_step: f64,
    /// Weights below this (relative to the largest) are penalized.
    pub weight_floor: f64,
    /// Relative residual accepted as a realization.
    pub tol: f64,
    pub grid: Vec<f64>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 0,
            restarts: 64,
            max_iters: 2000,
            initial_step: 0.25,
            min_step: 1e-14,
            weight_floor: 1e-6,
            tol: 1e-7,
            grid: vec![-2.0, -1.0, -0.5, 0.5, 1.0, 2.0],
        }
    }
}

impl SearchConfig {
    pub fn with_seed(seed: u64) -> Self {
        SearchConfig { seed, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::param("restarts must be at least 1"));
        }
        if self.grid.is_empty() || self.grid.iter().any(|&x| x == 0.0 || !x.is_finite()) {
            return Err(Error::param("grid values must be finite and nonzero"));
        }
        if !(self.tol > 0.0 && self.initial_step > 0.0 && self.min_step > 0.0 && self.weight_floor >= 0.0) {
            return Err(Error::param("tolerances and steps must be positive"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Realized,
    NotFound,
    /// An obstruction rule fired; no optimization was run.
    Refuted,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub best: Option<RealizationResult>,
    pub bound_certificates: Vec<ObstructionCertificate>,
}

impl SearchOutcome {
    pub fn is_realized(&self) -> bool {
        self.status == SearchStatus::Realized
    }
}

/// What the optimizer drives towards.
#[derive(Clone, Debug, PartialEq)]
pub enum Goal {
    Spectrum(Vec<f64>),
    Oml(Oml),
    /// At least this many zero eigenvalues.
    Nullity(usize),
    /// Some eigenvalue of at least this multiplicity.
    Multiplicity(usize),
}

impl Goal {
    /// Scale-free goals are optimized over unit-norm weight vectors.
    fn normalized(&self) -> bool {
        !matches!(self, Goal::Spectrum(_))
    }

    /// Objective value for ascending eigenvalues of a matrix with
    /// `‖A‖_F = 1` (scale-free goals) or of the raw matrix.
    fn loss(&self, eigs: &[f64]) -> f64 {
        match self {
            Goal::Spectrum(target) => {
                let scale: f64 = target.iter().map(|x| x * x).sum::<f64>().max(1.0);
                eigs.iter().zip(target).map(|(a, b)| (a - b) * (a - b)).sum::<f64>() / scale
            }
            Goal::Oml(oml) => {
                let mut start = 0;
                let mut loss = 0.0;
                let mut prev_mean: Option<f64> = None;
                for &m in &oml.0 {
                    let block = &eigs[start..start + m];
                    let mean = block.iter().sum::<f64>() / m as f64;
                    loss += block.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>();
                    if let Some(p) = prev_mean {
                        let short = BLOCK_GAP - (mean - p);
                        if short > 0.0 {
                            loss += short * short;
                        }
                    }
                    prev_mean = Some(mean);
                    start += m;
                }
                loss
            }
            Goal::Nullity(k) => {
                let mut sq: Vec<f64> = eigs.iter().map(|x| x * x).collect();
                sq.sort_by(f64::total_cmp);
                sq[..*k].iter().sum()
            }
            Goal::Multiplicity(k) => eigs
                .windows(*k)
                .map(|w| {
                    let mean = w.iter().sum::<f64>() / *k as f64;
                    w.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>()
                })
                .fold(f64::INFINITY, f64::min),
        }
    }

    /// Relative residual of a candidate matrix, or `None` if it fails the
    /// qualitative shape of the goal.
    fn residual(&self, eigs: &[f64]) -> Option<f64> {
        let rho = eigs.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if rho == 0.0 {
            return None;
        }
        match self {
            Goal::Spectrum(target) => {
                let scale = target.iter().fold(1.0f64, |m, x| m.max(x.abs()));
                Some(eigs.iter().zip(target).fold(0.0f64, |r, (a, b)| r.max((a - b).abs())) / scale)
            }
            Goal::Oml(oml) => {
                let spectrum = cluster(eigs, default_tol(eigs));
                (spectrum.oml() == *oml).then(|| block_spread(eigs, oml) / rho)
            }
            Goal::Nullity(k) => {
                let mut abs: Vec<f64> = eigs.iter().map(|x| x.abs()).collect();
                abs.sort_by(f64::total_cmp);
                Some(abs[k - 1] / rho)
            }
            Goal::Multiplicity(k) => Some(
                eigs.windows(*k)
                    .map(|w| (w[k - 1] - w[0]) / 2.0)
                    .fold(f64::INFINITY, f64::min)
                    / rho,
            ),
        }
    }
}

/// Seed used by restart `index`, a SplitMix64 step away from the base seed.
pub fn restart_seed(seed: u64, index: usize) -> u64 {
    let mut z = seed.wrapping_add((index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

struct Problem<'a> {
    g: &'a Graph,
    goal: &'a Goal,
    cfg: &'a SearchConfig,
}

impl Problem<'_> {
    fn matrix(&self, w: &[f64]) -> Mat {
        let n = self.g.order();
        let s = if self.goal.normalized() {
            let len = (2.0 * w.iter().map(|x| x * x).sum::<f64>()).sqrt();
            if len == 0.0 {
                1.0
            } else {
                1.0 / len
            }
        } else {
            1.0
        };
        let mut m = Mat::zeros(n, n);
        for (&(u, v), &x) in self.g.edges().iter().zip(w) {
            m[(u, v)] = s * x;
            m[(v, u)] = s * x;
        }
        m
    }

    fn floor_penalty(&self, w: &[f64]) -> f64 {
        let big = w.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let floor = self.cfg.weight_floor * if self.goal.normalized() { big } else { 1.0 };
        w.iter()
            .map(|x| {
                let short = floor - x.abs();
                if short > 0.0 {
                    1.0 + short * short
                } else {
                    0.0
                }
            })
            .sum()
    }

    fn objective(&self, w: &[f64]) -> f64 {
        match symmetric_eigenvalues(&self.matrix(w)) {
            Ok(eigs) => self.goal.loss(&eigs) + self.floor_penalty(w),
            Err(_) => f64::INFINITY,
        }
    }

    /// One restart: returns (relative residual, weights). Residual is
    /// infinite when the end point does not have the goal's shape.
    fn run(&self, seed: u64) -> (f64, Vec<f64>) {
        let mut rng = seeded(seed);
        let mut w = gaussian_vector(&mut rng, self.g.edge_count());
        if !self.goal.normalized() {
            if let Goal::Spectrum(t) = self.goal {
                // start at roughly the right scale
                let target_norm = (t.iter().map(|x| x * x).sum::<f64>() / 2.0).sqrt();
                let len = w.iter().map(|x| x * x).sum::<f64>().sqrt();
                if len > 0.0 {
                    w.iter_mut().for_each(|x| *x *= target_norm / len);
                }
            }
        }
        for x in w.iter_mut() {
            if x.abs() < 0.05 {
                *x = if rng.random_bool(0.5) { 0.05 } else { -0.05 };
            }
        }
        let stop = (self.cfg.tol * 1e-3).powi(2);
        let scale = if self.goal.normalized() {
            w.iter().map(|x| x * x).sum::<f64>().sqrt()
        } else {
            w.iter().fold(1.0f64, |m, x| m.max(x.abs()))
        };
        let w = hooke_jeeves(
            |x| self.objective(x),
            w,
            self.cfg.initial_step * scale,
            self.cfg.min_step * scale,
            self.cfg.max_iters,
            stop,
        );
        let eigs = match symmetric_eigenvalues(&self.matrix(&w)) {
            Ok(e) => e,
            Err(_) => return (f64::INFINITY, w),
        };
        let floor_ok = self.floor_penalty(&w) == 0.0;
        let res = match self.goal.residual(&eigs) {
            Some(r) if floor_ok => r,
            _ => f64::INFINITY,
        };
        (res, w)
    }

    fn result(&self, w: &[f64], seed: u64) -> Result<RealizationResult> {
        let mut m = self.matrix(w);
        if self.goal.normalized() {
            // report with spectral radius 1
            let eigs = symmetric_eigenvalues(&m)?;
            let rho = eigs.iter().fold(0.0f64, |a, x| a.max(x.abs()));
            if rho > 0.0 {
                m = m.scale(1.0 / rho);
            }
        }
        let matrix = HollowMatrix::new(m, self.g.clone())?;
        let eigs = matrix.eigenvalues()?;
        let residual = self.goal.residual(&eigs).unwrap_or(f64::INFINITY);
        let achieved = cluster(&eigs, default_tol(&eigs));
        Ok(RealizationResult { matrix, achieved, residual, seed: Some(seed) })
    }
}

/// Hooke–Jeeves pattern search: exploratory coordinate moves, pattern
/// extrapolation on success, step halving on failure.
fn hooke_jeeves<F: Fn(&[f64]) -> f64>(
    f: F,
    x0: Vec<f64>,
    step0: f64,
    min_step: f64,
    max_iters: usize,
    stop: f64,
) -> Vec<f64> {
    let explore = |base: &[f64], fb: f64, step: f64| -> (Vec<f64>, f64) {
        let mut x = base.to_vec();
        let mut fx = fb;
        for i in 0..x.len() {
            let orig = x[i];
            x[i] = orig + step;
            let up = f(&x);
            if up < fx {
                fx = up;
                continue;
            }
            x[i] = orig - step;
            let down = f(&x);
            if down < fx {
                fx = down;
                continue;
            }
            x[i] = orig;
        }
        (x, fx)
    };
    let mut base = x0;
    let mut fb = f(&base);
    let mut step = step0;
    let mut iters = 0;
    while iters < max_iters && step > min_step && fb > stop {
        iters += 1;
        let (mut x, mut fx) = explore(&base, fb, step);
        if fx < fb {
            loop {
                let pattern: Vec<f64> = x.iter().zip(&base).map(|(a, b)| 2.0 * a - b).collect();
                base = x;
                fb = fx;
                iters += 1;
                let fp = f(&pattern);
                let (y, fy) = explore(&pattern, fp, step);
                if fy < fb && iters < max_iters {
                    x = y;
                    fx = fy;
                } else {
                    break;
                }
            }
        } else {
            step *= 0.5;
        }
    }
    base
}

/// Multistart search for `goal` on `g`, without consulting obstructions.
pub fn optimize(g: &Graph, goal: &Goal, cfg: &SearchConfig) -> Result<SearchOutcome> {
    cfg.validate()?;
    let n = g.order();
    let k_ok = match goal {
        Goal::Spectrum(t) => t.len() == n,
        Goal::Oml(o) => o.order() == n,
        Goal::Nullity(k) | Goal::Multiplicity(k) => *k >= 1 && *k <= n,
    };
    if !k_ok {
        return Err(Error::param("goal does not match the graph order"));
    }
    if g.is_edgeless() {
        // only the zero matrix
        let matrix = HollowMatrix::new(Mat::zeros(n, n), g.clone())?;
        let eigs = vec![0.0; n];
        let ok = match goal {
            Goal::Spectrum(t) => t.iter().all(|&x| x == 0.0),
            Goal::Oml(o) => o.len() == 1,
            _ => true,
        };
        let best = RealizationResult { matrix, achieved: cluster(&eigs, 1e-6), residual: 0.0, seed: None };
        return Ok(SearchOutcome {
            status: if ok { SearchStatus::Realized } else { SearchStatus::NotFound },
            best: Some(best),
            bound_certificates: Vec::new(),
        });
    }
    let problem = Problem { g, goal, cfg };
    let mut best: Option<(f64, usize, Vec<f64>)> = None;
    let mut start = 0;
    while start < cfg.restarts {
        let end = (start + BATCH).min(cfg.restarts);
        let batch: Vec<(f64, usize, Vec<f64>)> = (start..end)
            .into_par_iter()
            .map(|i| {
                let (r, w) = problem.run(restart_seed(cfg.seed, i));
                (r, i, w)
            })
            .collect();
        for cand in batch {
            let better = match &best {
                None => true,
                Some((r, i, _)) => cand.0 < *r || (cand.0 == *r && cand.1 < *i),
            };
            if better {
                best = Some(cand);
            }
        }
        if best.as_ref().is_some_and(|b| b.0 <= cfg.tol) {
            break;
        }
        start = end;
    }
    let (_, index, w) = best.expect("at least one restart");
    let result = problem.result(&w, restart_seed(cfg.seed, index))?;
    let status = if result.residual <= cfg.tol {
        SearchStatus::Realized
    } else {
        SearchStatus::NotFound
    };
    Ok(SearchOutcome { status, best: Some(result), bound_certificates: Vec::new() })
}

fn refuted(cert: ObstructionCertificate) -> SearchOutcome {
    SearchOutcome { status: SearchStatus::Refuted, best: None, bound_certificates: vec![cert] }
}

pub fn search_spectrum(g: &Graph, s: &TargetSpectrum, cfg: &SearchConfig) -> Result<SearchOutcome> {
    if s.order() != g.order() {
        return Err(Error::param(format!("spectrum has {} values, graph has {} vertices", s.order(), g.order())));
    }
    if let Verdict::Refuted(c) = Checker::new(g).check(&Target::Spectrum(s.clone()))? {
        return Ok(refuted(*c));
    }
    optimize(g, &Goal::Spectrum(s.expanded()), cfg)
}

pub fn search_oml(g: &Graph, oml: &Oml, cfg: &SearchConfig) -> Result<SearchOutcome> {
    if oml.order() != g.order() {
        return Err(Error::param(format!("list {oml} has order {}, graph has {} vertices", oml.order(), g.order())));
    }
    if let Verdict::Refuted(c) = Checker::new(g).check(&Target::Oml(oml.clone()))? {
        return Ok(refuted(*c));
    }
    optimize(g, &Goal::Oml(oml.clone()), cfg)
}

/// Largest number of edges the grid oracle accepts.
pub const GRID_EDGE_LIMIT: usize = 8;

/// Every multiplicity list seen over all weightings drawn from the grid.
/// A subset of the realizable lists; the grid may miss some.
pub fn brute_force_oracle(g: &Graph, cfg: &SearchConfig) -> Result<BTreeSet<Oml>> {
    cfg.validate()?;
    let e = g.edge_count();
    if e > GRID_EDGE_LIMIT {
        return Err(Error::param(format!("{e} edges exceeds the grid limit of {GRID_EDGE_LIMIT}")));
    }
    Ok(grid_spectra(g, cfg)?.into_iter().map(|s| s.0).collect())
}

/// Oml and ascending eigenvalues for every grid weighting, deduplicated by
/// oml (the eigenvalues kept are those of the first weighting found).
pub fn grid_spectra(g: &Graph, cfg: &SearchConfig) -> Result<Vec<(Oml, Vec<f64>)>> {
    let n = g.order();
    let e = g.edge_count();
    let grid = &cfg.grid;
    let symmetric = grid.iter().all(|x| grid.contains(&-x));
    if e == 0 {
        return Ok(vec![(Oml(vec![n]), vec![0.0; n])]);
    }
    let total = grid.len().pow(e as u32);
    let found: Vec<(Oml, Vec<f64>)> = (0..total)
        .into_par_iter()
        .filter_map(|mut code| {
            let mut m = Mat::zeros(n, n);
            for (i, &(u, v)) in g.edges().iter().enumerate() {
                let x = grid[code % grid.len()];
                code /= grid.len();
                if i == 0 && symmetric && x < 0.0 {
                    return None;
                }
                m[(u, v)] = x;
                m[(v, u)] = x;
            }
            let eigs = symmetric_eigenvalues(&m).ok()?;
            Some((cluster(&eigs, default_tol(&eigs)).oml(), eigs))
        })
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (oml, eigs) in found {
        if symmetric {
            let rev = oml.reversed();
            if seen.insert(rev.clone()) {
                out.push((rev, eigs.iter().rev().map(|x| -x).collect()));
            }
        }
        if seen.insert(oml.clone()) {
            out.push((oml, eigs));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bracket {
    pub lo: usize,
    pub hi: usize,
    pub witness: Option<RealizationResult>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Extremes {
    pub q0: Bracket,
    #[serde(rename = "M0")]
    pub m0: Bracket,
    #[serde(rename = "MM0")]
    pub mm0: Bracket,
}

/// Externally certified exact values used to tighten brackets.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct KnownValues {
    pub q0: Option<usize>,
    pub m0: Option<usize>,
    pub mm0: Option<usize>,
    pub mr0: Option<usize>,
}

/// Brackets for `q0`, `M0` and `MM0`. Upper bounds on `M0`/`MM0` and the
/// lower bound on `q0` come from obstructions and known values; the
/// opposite sides come from matrices found by search, kept as witnesses.
pub fn estimate_extremes(g: &Graph, cfg: &SearchConfig, known: &KnownValues) -> Result<Extremes> {
    cfg.validate()?;
    let n = g.order();
    let checker = Checker::new(g);
    let base = realize_all_simple(g, cfg.seed)?;
    let eigs = base.matrix.eigenvalues()?;
    let base_q = base.achieved.distinct();
    let base_null = base.achieved.multiplicity_of(0.0);
    let _ = eigs;

    // M0
    let mut m0_hi = match (checker.min_rank_lower(), known.mr0) {
        (_, Some(r)) => n - r,
        (Some(l), None) => n - l,
        (None, None) => n - 1,
    };
    if let Some(m) = known.m0 {
        m0_hi = m0_hi.min(m);
    }
    if g.is_edgeless() {
        m0_hi = n;
    }
    let mut m0 = Bracket { lo: base_null, hi: m0_hi, witness: Some(base.clone()) };
    for k in (m0.lo + 1..=m0.hi).rev() {
        let out = optimize(g, &Goal::Nullity(k), cfg)?;
        if out.is_realized() {
            m0.lo = k;
            m0.witness = out.best;
            break;
        }
    }

    // MM0
    let mut mm_hi = checker.multiplicity_upper();
    if let Some(m) = known.mm0 {
        mm_hi = mm_hi.min(m);
    }
    let base_mult = base.achieved.values.iter().map(|&(_, m)| m).max().unwrap_or(1);
    let mut mm0 = Bracket { lo: base_mult.max(m0.lo), hi: mm_hi, witness: None };
    mm0.witness = if mm0.lo == m0.lo { m0.witness.clone() } else { Some(base.clone()) };
    for k in (mm0.lo + 1..=mm0.hi).rev() {
        let out = optimize(g, &Goal::Multiplicity(k), cfg)?;
        if out.is_realized() {
            mm0.lo = k;
            mm0.witness = out.best;
            break;
        }
    }

    // q0
    let kb = KnownBounds {
        q0: known.q0.map(|q| (q, q)),
        mm0_upper: Some(mm0.hi),
        mr0_upper: known.mr0,
    };
    let (q_lo, q_hi) = q0_bounds(g, &kb)?;
    let mut q0 = Bracket { lo: q_lo, hi: q_hi.min(base_q), witness: Some(base) };
    'outer: for q in q0.lo..q0.hi {
        for oml in Oml::compositions(n).into_iter().filter(|o| o.len() == q) {
            let out = search_oml(g, &oml, cfg)?;
            if out.is_realized() {
                q0.hi = q;
                q0.witness = out.best;
                break 'outer;
            }
        }
    }
    if q0.witness.as_ref().is_some_and(|w| w.achieved.distinct() != q0.hi) {
        // the known value tightened the bound below what was witnessed
        q0.witness = None;
    }
    for b in [&q0, &m0, &mm0] {
        if b.lo > b.hi {
            return Err(Error::Consistency(format!("empty bracket [{}, {}]", b.lo, b.hi)));
        }
    }
    Ok(Extremes { q0, m0, mm0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_family;

    fn fam(s: &str) -> Graph {
        build_family(&s.parse().unwrap()).unwrap()
    }

    fn oml(s: &[usize]) -> Oml {
        Oml(s.to_vec())
    }

    #[test]
    fn spectrum_search_examples() {
        let cfg = SearchConfig::default();
        let out = search_spectrum(&fam("complete:3"), &"-3,1,2".parse().unwrap(), &cfg).unwrap();
        assert_eq!(out.status, SearchStatus::Realized);
        let out = search_spectrum(&fam("complete:3"), &"-1,0,1".parse().unwrap(), &cfg).unwrap();
        assert_eq!(out.status, SearchStatus::Refuted);
        assert_eq!(out.bound_certificates[0].rule, "zero_multiplicity");
        let out = search_spectrum(&fam("complete_split:2,3"), &"-3,-1,0,1,3".parse().unwrap(), &cfg);
        assert_eq!(out.unwrap().status, SearchStatus::Realized);
    }

    #[test]
    fn oml_search_examples() {
        let cfg = SearchConfig::default();
        let out = search_oml(&fam("wheel:5"), &oml(&[2, 1, 2]), &cfg).unwrap();
        assert_eq!(out.status, SearchStatus::Realized);
        assert!(out.best.unwrap().residual <= 1e-7);
        let out = search_oml(&fam("wheel:5"), &oml(&[1, 3, 1]), &cfg).unwrap();
        assert_eq!(out.status, SearchStatus::Refuted);
        let out = search_oml(&fam("complete:4"), &oml(&[1, 2, 1]), &cfg).unwrap();
        assert_eq!(out.status, SearchStatus::Realized);
    }

    #[test]
    fn search_is_deterministic() {
        let cfg = SearchConfig { restarts: 16, ..SearchConfig::with_seed(7) };
        let g = fam("complete:4");
        let a = search_oml(&g, &oml(&[2, 1, 1]), &cfg).unwrap();
        let b = search_oml(&g, &oml(&[2, 1, 1]), &cfg).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn grid_oracle_examples() {
        let cfg = SearchConfig::default();
        let p3 = brute_force_oracle(&fam("path:3"), &cfg).unwrap();
        assert_eq!(p3, BTreeSet::from([oml(&[1, 1, 1])]));
        for (_, eigs) in grid_spectra(&fam("path:3"), &cfg).unwrap() {
            assert!((eigs[0] + eigs[2]).abs() < 1e-12 && eigs[1].abs() < 1e-12);
        }
        let k3 = brute_force_oracle(&fam("complete:3"), &cfg).unwrap();
        let allowed = BTreeSet::from([oml(&[2, 1]), oml(&[1, 2]), oml(&[1, 1, 1])]);
        assert!(k3.is_subset(&allowed));
        for (_, eigs) in grid_spectra(&fam("complete:3"), &cfg).unwrap() {
            assert!(eigs.iter().all(|x| x.abs() > 1e-9));
        }
        assert_eq!(brute_force_oracle(&fam("complete:2"), &cfg).unwrap(), BTreeSet::from([oml(&[1, 1])]));
        assert!(brute_force_oracle(&fam("complete:5"), &cfg).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(SearchConfig { restarts: 0, ..Default::default() }.validate().is_err());
        assert!(SearchConfig { grid: vec![1.0, 0.0], ..Default::default() }.validate().is_err());
    }
}
