//! Explicit constructions of hollow matrices with prescribed spectra or
//! multiplicity lists.
//!
//! Randomized constructions take a seed and retry a bounded number of
//! times; running out of retries is reported, never papered over.

use std::ops::ControlFlow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gencyc::{for_each_generalized_cycle, max_hollow_rank, Component, GeneralizedCycle};
use crate::graph::{build_family, combine, CombineOp, FamilyKind, FamilySpec, Graph};
use crate::linalg::{self, dot, gaussian_vector, norm, random_orthogonal, Mat};
use crate::spectra::{cluster, default_tol, values_symmetric, HollowMatrix, Oml, Spectrum};
use crate::target::{TargetSpectrum, Value};

pub const DEFAULT_RETRIES: usize = 32;

/// Entries of random factors below this (times `max(1, ρ)`) count as zero.
pub const ENTRY_FLOOR: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealizationResult {
    pub matrix: HollowMatrix,
    pub achieved: Spectrum,
    /// Largest deviation between paired sorted eigenvalues and the target.
    pub residual: f64,
    pub seed: Option<u64>,
}

impl RealizationResult {
    /// Residual against a full target spectrum.
    pub fn against(matrix: HollowMatrix, target: &TargetSpectrum, seed: Option<u64>) -> Result<Self> {
        let eigs = matrix.eigenvalues()?;
        if target.order() != eigs.len() {
            return Err(Error::param("target order differs from matrix order"));
        }
        let residual = eigs
            .iter()
            .zip(target.expanded())
            .fold(0.0f64, |r, (a, b)| r.max((a - b).abs()));
        let achieved = cluster(&eigs, default_tol(&eigs));
        Ok(RealizationResult { matrix, achieved, residual, seed })
    }

    /// Residual against a multiplicity list: the largest distance of an
    /// eigenvalue from the mean of its block when sorted eigenvalues are
    /// cut into blocks of the listed sizes.
    pub fn against_oml(matrix: HollowMatrix, oml: &Oml, seed: Option<u64>) -> Result<Self> {
        let eigs = matrix.eigenvalues()?;
        if oml.order() != eigs.len() {
            return Err(Error::param("list order differs from matrix order"));
        }
        let residual = block_spread(&eigs, oml);
        let achieved = cluster(&eigs, default_tol(&eigs));
        Ok(RealizationResult { matrix, achieved, residual, seed })
    }

    pub fn order(&self) -> usize {
        self.matrix.order()
    }
}

pub(crate) fn block_spread(sorted: &[f64], oml: &Oml) -> f64 {
    let mut start = 0;
    let mut worst = 0.0f64;
    for &m in &oml.0 {
        let block = &sorted[start..start + m];
        let mean = block.iter().sum::<f64>() / m as f64;
        worst = block.iter().fold(worst, |w, x| w.max((x - mean).abs()));
        start += m;
    }
    worst
}

pub(crate) fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn family(kind: FamilyKind, params: Vec<usize>) -> Result<Graph> {
    build_family(&FamilySpec::new(kind, params)?)
}

/// A tridiagonal matrix on the path `0-1-...-(n-1)` with the given distinct
/// spectrum, which must equal its own negation.
///
/// Built by running Lanczos on `diag(S)` from the uniform unit vector, so
/// every normalizing number is `1/n`; the symmetric weights make all
/// diagonal recurrence coefficients vanish.
pub fn realize_path(s: &TargetSpectrum, n: usize) -> Result<RealizationResult> {
    if s.order() != n {
        return Err(Error::param(format!("spectrum has {} values, path has {n} vertices", s.order())));
    }
    if !s.is_simple() {
        return Err(Error::infeasible(
            "path_spectrum",
            "matrices on a path have distinct eigenvalues",
        ));
    }
    if !s.is_symmetric() {
        return Err(Error::infeasible(
            "path_spectrum",
            "a path is bipartite, so its spectrum must equal its negation",
        ));
    }
    let pattern = family(FamilyKind::Path, vec![n])?;
    let d = s.expanded();
    let beta = lanczos_offdiagonal(&d)?;
    let mut m = Mat::zeros(n, n);
    for (i, &b) in beta.iter().enumerate() {
        m[(i, i + 1)] = b;
        m[(i + 1, i)] = b;
    }
    RealizationResult::against(HollowMatrix::new(m, pattern)?, s, None)
}

fn lanczos_offdiagonal(d: &[f64]) -> Result<Vec<f64>> {
    let n = d.len();
    let scale = d.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(f64::MIN_POSITIVE);
    let mut basis: Vec<Vec<f64>> = vec![vec![1.0 / (n as f64).sqrt(); n]];
    let mut beta = Vec::with_capacity(n.saturating_sub(1));
    for j in 0..n.saturating_sub(1) {
        let mut w: Vec<f64> = basis[j].iter().zip(d).map(|(q, x)| q * x).collect();
        // full reorthogonalization, twice
        for _ in 0..2 {
            for q in &basis {
                let c = dot(&w, q);
                w.iter_mut().zip(q).for_each(|(x, y)| *x -= c * y);
            }
        }
        let b = norm(&w);
        if b <= 1e-13 * scale {
            return Err(Error::Numeric("Lanczos breakdown".into()));
        }
        w.iter_mut().for_each(|x| *x /= b);
        beta.push(b);
        basis.push(w);
    }
    Ok(beta)
}

/// A matrix `[[0, A], [Aᵀ, 0]]` on `K_{m,n}` (the `m` side first) with
/// spectrum `s`. `A = W·D·U` for random orthogonal `W`, `U`, where `D`
/// carries the positive half of `s` on its diagonal.
pub fn realize_complete_bipartite(m: usize, n: usize, s: &TargetSpectrum, seed: u64) -> Result<RealizationResult> {
    let pattern = family(FamilyKind::CompleteBipartite, vec![m, n])?;
    if s.order() != m + n {
        return Err(Error::param(format!("spectrum has {} values, graph has {} vertices", s.order(), m + n)));
    }
    if !s.is_symmetric() {
        return Err(Error::infeasible(
            "complete_bipartite_law",
            "the spectrum of a bipartite pattern equals its negation",
        ));
    }
    let k = s.nonzero_count();
    let small = m.min(n);
    if k < 2 || k > 2 * small {
        return Err(Error::infeasible(
            "complete_bipartite_law",
            format!("{k} nonzero eigenvalues; K_{{{m},{n}}} needs between 2 and {}", 2 * small),
        ));
    }
    let sigma: Vec<f64> = s.expanded().into_iter().filter(|&x| x > 0.0 && !Value::approx(x).is_zero()).collect();
    let floor = ENTRY_FLOOR * s.spectral_radius().max(1.0);
    let mut rng = seeded(seed);
    for _ in 0..DEFAULT_RETRIES {
        let w = random_orthogonal(&mut rng, m);
        let u = random_orthogonal(&mut rng, n);
        let mut a = Mat::zeros(m, n);
        for i in 0..m {
            for j in 0..n {
                a[(i, j)] = sigma.iter().enumerate().map(|(l, &x)| w[(i, l)] * x * u[(l, j)]).sum();
            }
        }
        if a.data().iter().any(|x| x.abs() <= floor) {
            continue;
        }
        let mut b = Mat::zeros(m + n, m + n);
        for i in 0..m {
            for j in 0..n {
                b[(i, m + j)] = a[(i, j)];
                b[(m + j, i)] = a[(i, j)];
            }
        }
        return RealizationResult::against(HollowMatrix::new(b, pattern)?, s, Some(seed));
    }
    Err(Error::Numeric(format!("no entrywise nonzero factor after {DEFAULT_RETRIES} attempts")))
}

/// `scale · M` on `K_{r,r,r}` with
/// `M = -[[0, V, VWᵀ], [Vᵀ, 0, Wᵀ], [WVᵀ, W, 0]]` for random orthogonal
/// `V`, `W`; the spectrum is `{(-2·scale)^r, scale^(2r)}`.
pub fn realize_tripartite_rrr(r: usize, scale: f64, seed: u64) -> Result<RealizationResult> {
    let pattern = family(FamilyKind::CompleteTripartiteBalanced, vec![r])?;
    if scale == 0.0 || !scale.is_finite() {
        return Err(Error::param("scale must be finite and nonzero"));
    }
    let floor = ENTRY_FLOOR;
    let mut rng = seeded(seed);
    for _ in 0..DEFAULT_RETRIES {
        let v = random_orthogonal(&mut rng, r);
        let w = random_orthogonal(&mut rng, r);
        let vwt = v.matmul(&w.transpose());
        if [&v, &w, &vwt].iter().any(|x| x.data().iter().any(|e| e.abs() <= floor)) {
            continue;
        }
        let mut m = Mat::zeros(3 * r, 3 * r);
        let mut put = |bi: usize, bj: usize, blk: &Mat, transpose: bool| {
            for i in 0..r {
                for j in 0..r {
                    let x = if transpose { blk[(j, i)] } else { blk[(i, j)] };
                    m[(bi * r + i, bj * r + j)] = -scale * x;
                }
            }
        };
        put(0, 1, &v, false);
        put(0, 2, &vwt, false);
        put(1, 0, &v, true);
        put(1, 2, &w, true);
        put(2, 0, &vwt, true);
        put(2, 1, &w, false);
        let target = TargetSpectrum::new(vec![
            (Value::approx(-2.0 * scale), r),
            (Value::approx(scale), 2 * r),
        ])?;
        return RealizationResult::against(HollowMatrix::new(m, pattern)?, &target, Some(seed));
    }
    Err(Error::Numeric(format!("no entrywise nonzero orthogonal pair after {DEFAULT_RETRIES} attempts")))
}

/// Rescales a matrix with two distinct eigenvalues so that the smaller one
/// becomes `target_mu1`; the other is then forced by the trace.
pub fn scale_two_eigenvalue(a: &HollowMatrix, target_mu1: f64) -> Result<HollowMatrix> {
    let s = a.spectrum()?;
    if s.distinct() != 2 {
        return Err(Error::Precondition(format!(
            "matrix has {} distinct eigenvalues, need exactly 2",
            s.distinct()
        )));
    }
    let mu1 = s.values[0].0;
    if target_mu1 == 0.0 || !target_mu1.is_finite() || target_mu1.signum() != mu1.signum() {
        return Err(Error::Precondition(format!(
            "target {target_mu1} must be nonzero with the sign of the smallest eigenvalue {mu1}"
        )));
    }
    a.scaled(target_mu1 / mu1)
}

/// `B = [[A, I], [I, -A]]` on `G □ K2` (copy 0 first). The spectrum of `A`
/// must equal its negation.
pub fn cartesian_k2_lift(a: &HollowMatrix) -> Result<HollowMatrix> {
    let eigs = a.eigenvalues()?;
    if !values_symmetric(&eigs, default_tol(&eigs)) {
        return Err(Error::Precondition("spectrum is not symmetric about the origin".into()));
    }
    let n = a.order();
    let pattern = combine(CombineOp::CartesianK2, a.pattern(), None)?;
    let mut b = Mat::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            b[(i, j)] = a.get(i, j);
            b[(n + i, n + j)] = -a.get(i, j);
        }
        b[(i, n + i)] = 1.0;
        b[(n + i, i)] = 1.0;
    }
    HollowMatrix::new(b, pattern)
}

/// Sorted `±sqrt(μ² + 1)` over the eigenvalues `μ`, the spectrum of
/// [`cartesian_k2_lift`].
pub fn lifted_spectrum(eigs: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = eigs
        .iter()
        .flat_map(|&m| {
            let r = (m * m + 1.0).sqrt();
            [-r, r]
        })
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

pub fn iterated_lift(a: &HollowMatrix, times: usize) -> Result<HollowMatrix> {
    let mut b = a.clone();
    for _ in 0..times {
        b = cartesian_k2_lift(&b)?;
    }
    Ok(b)
}

/// Adds a dominating vertex (last) while raising the multiplicity of the
/// smallest eigenvalue by one: factor `A - μ₁I = RᵀR` and append a column
/// of squared length `-μ₁` with nonzero inner products against all others.
pub fn dominating_vertex_lift(a: &HollowMatrix, seed: u64) -> Result<HollowMatrix> {
    let g = a.pattern();
    if g.has_isolated_vertex() {
        return Err(Error::Precondition("pattern has an isolated vertex".into()));
    }
    let n = a.order();
    let eig = a.eigen()?;
    let tol = default_tol(&eig.values);
    let mu1 = eig.values[0];
    let m1 = eig.values.iter().take_while(|&&x| x - mu1 <= tol).count();
    let mu1 = eig.values[..m1].iter().sum::<f64>() / m1 as f64;
    // rows of R: sqrt(λ - μ₁) qᵀ for the eigenvalues above the first block
    let rows: Vec<Vec<f64>> = (m1..n)
        .map(|i| {
            let s = (eig.values[i] - mu1).sqrt();
            eig.vectors.col(i).iter().map(|x| s * x).collect()
        })
        .collect();
    let d = rows.len();
    let mu = -mu1;
    let floor = ENTRY_FLOOR * mu.max(1.0);
    let pattern = combine(CombineOp::Join, g, Some(&Graph::empty(1)?))?;
    let mut rng = seeded(seed);
    for _ in 0..DEFAULT_RETRIES {
        let mut r = gaussian_vector(&mut rng, d);
        let len = norm(&r);
        if len == 0.0 {
            continue;
        }
        r.iter_mut().for_each(|x| *x *= mu.sqrt() / len);
        let ips: Vec<f64> = (0..n).map(|j| (0..d).map(|k| rows[k][j] * r[k]).sum()).collect();
        if ips.iter().any(|x| x.abs() <= floor) {
            continue;
        }
        let mut b = Mat::zeros(n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                b[(i, j)] = a.get(i, j);
            }
            b[(i, n)] = ips[i];
            b[(n, i)] = ips[i];
        }
        return HollowMatrix::new(b, pattern);
    }
    Err(Error::Numeric(format!("no admissible new column after {DEFAULT_RETRIES} attempts")))
}

/// Borders `A` by `Av` (last vertex dominating) with `vᵀAv = 0`, keeping the
/// rank. Needs a repeated nonzero eigenvalue whose eigenspace contains a
/// vector with no zero entry.
pub fn border_rank_preserving(a: &HollowMatrix, seed: u64) -> Result<HollowMatrix> {
    let n = a.order();
    let eig = a.eigen()?;
    let tol = default_tol(&eig.values);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        match groups.last_mut() {
            Some(gr) if eig.values[i] - eig.values[*gr.last().unwrap()] <= tol => gr.push(i),
            _ => groups.push(vec![i]),
        }
    }
    let repeated: Vec<&Vec<usize>> = groups
        .iter()
        .filter(|gr| gr.len() >= 2 && eig.values[gr[0]].abs() > tol)
        .collect();
    if repeated.is_empty() {
        return Err(Error::Precondition("no nonzero eigenvalue of multiplicity at least 2".into()));
    }
    let mut rng = seeded(seed);
    let entry_floor = ENTRY_FLOOR / (n as f64).sqrt();
    let mut chosen = None;
    'search: for gr in &repeated {
        for _ in 0..DEFAULT_RETRIES {
            let c = gaussian_vector(&mut rng, gr.len());
            let mut u = vec![0.0; n];
            for (k, &i) in gr.iter().enumerate() {
                let col = eig.vectors.col(i);
                u.iter_mut().zip(&col).for_each(|(x, y)| *x += c[k] * y);
            }
            let len = norm(&u);
            u.iter_mut().for_each(|x| *x /= len);
            if u.iter().all(|x| x.abs() > entry_floor) {
                chosen = Some((*gr, u));
                break 'search;
            }
        }
    }
    let (group, u) = chosen.ok_or_else(|| {
        Error::Precondition("no eigenvector with all entries nonzero for a repeated nonzero eigenvalue".into())
    })?;

    // orthonormal eigenbasis x1 = u, x2 in the same eigenspace, then the rest
    let mut xs: Vec<Vec<f64>> = vec![u];
    for &i in group {
        let mut col = eig.vectors.col(i);
        for x in &xs {
            let c = dot(&col, x);
            col.iter_mut().zip(x).for_each(|(y, z)| *y -= c * z);
        }
        let len = norm(&col);
        if len > 1e-6 {
            col.iter_mut().for_each(|y| *y /= len);
            xs.push(col);
        }
    }
    debug_assert_eq!(xs.len(), group.len());
    for i in (0..n).filter(|i| !group.contains(i)) {
        xs.push(eig.vectors.col(i));
    }

    let rho = eig.values.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let floor = ENTRY_FLOOR * rho.max(1.0);
    let pattern = combine(CombineOp::Join, a.pattern(), Some(&Graph::empty(1)?))?;
    let root2 = 2f64.sqrt();
    for _ in 0..DEFAULT_RETRIES {
        let t: f64 = rng.random_range(-root2..root2);
        let mut v: Vec<f64> = xs[0].iter().zip(&xs[1]).map(|(p, q)| t * p + (2.0 - t * t).sqrt() * q).collect();
        for x in &xs[2..] {
            v.iter_mut().zip(x).for_each(|(y, z)| *y += z);
        }
        let av: Vec<f64> = (0..n).map(|i| (0..n).map(|j| a.get(i, j) * v[j]).sum()).collect();
        if av.iter().any(|x| x.abs() <= floor) {
            continue;
        }
        let mut b = Mat::zeros(n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                b[(i, j)] = a.get(i, j);
            }
            b[(i, n)] = av[i];
            b[(n, i)] = av[i];
        }
        return HollowMatrix::new(b, pattern);
    }
    Err(Error::Numeric(format!("no admissible border vector after {DEFAULT_RETRIES} attempts")))
}

/// `B = Gram − I` for a unit-norm orthogonal representation of `g` in
/// dimension `n - psd_nullity`, so that `-1` is the smallest eigenvalue with
/// multiplicity `psd_nullity`. Vectors are drawn one vertex at a time,
/// uniformly from the complement of the earlier non-neighbours.
pub fn realize_m_plus(g: &Graph, psd_nullity: usize, seed: u64) -> Result<RealizationResult> {
    if g.has_isolated_vertex() {
        return Err(Error::Precondition("pattern has an isolated vertex".into()));
    }
    let n = g.order();
    if psd_nullity == 0 || psd_nullity >= n {
        return Err(Error::param(format!("nullity must lie in 1..{n}")));
    }
    let d = n - psd_nullity;
    let mut rng = seeded(seed);
    'attempt: for _ in 0..DEFAULT_RETRIES {
        let mut vecs: Vec<Vec<f64>> = Vec::with_capacity(n);
        for v in 0..n {
            let mut basis: Vec<Vec<f64>> = Vec::new();
            for u in (0..v).filter(|&u| !g.has_edge(u, v)) {
                let mut x = vecs[u].clone();
                for b in &basis {
                    let c = dot(&x, b);
                    x.iter_mut().zip(b).for_each(|(y, z)| *y -= c * z);
                }
                let len = norm(&x);
                if len > 1e-9 {
                    x.iter_mut().for_each(|y| *y /= len);
                    basis.push(x);
                }
            }
            if basis.len() >= d {
                continue 'attempt;
            }
            let mut x = gaussian_vector(&mut rng, d);
            for _ in 0..2 {
                for b in &basis {
                    let c = dot(&x, b);
                    x.iter_mut().zip(b).for_each(|(y, z)| *y -= c * z);
                }
            }
            let len = norm(&x);
            if len < 1e-9 {
                continue 'attempt;
            }
            x.iter_mut().for_each(|y| *y /= len);
            vecs.push(x);
        }
        let mut b = Mat::zeros(n, n);
        for &(u, v) in g.edges() {
            let ip = dot(&vecs[u], &vecs[v]);
            if ip.abs() <= 1e-6 {
                continue 'attempt;
            }
            b[(u, v)] = ip;
            b[(v, u)] = ip;
        }
        let matrix = HollowMatrix::new(b, g.clone())?;
        let eigs = matrix.eigenvalues()?;
        let tol = default_tol(&eigs);
        let at_minus_one = eigs.iter().filter(|x| (*x + 1.0).abs() <= tol).count();
        if at_minus_one != psd_nullity {
            continue;
        }
        let residual = eigs[..psd_nullity].iter().fold(0.0f64, |r, x| r.max((x + 1.0).abs()));
        let achieved = cluster(&eigs, tol);
        return Ok(RealizationResult { matrix, achieved, residual, seed: Some(seed) });
    }
    Err(Error::NotFound(format!(
        "no orthogonal representation of dimension {d} found in {DEFAULT_RETRIES} attempts"
    )))
}

fn primes(count: usize) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    let mut p = 2;
    while out.len() < count {
        if out.iter().all(|q| p % q != 0) {
            out.push(p);
        }
        p += 1;
    }
    out
}

/// Matrix on a cycle (vertices in cycle order) with distinct nonzero
/// eigenvalues: a path matrix with spectrum `{±1, ±2, ...}` (plus 0 for odd
/// length) and a small weight on the closing edge.
fn simple_cycle_block(len: usize) -> Result<Mat> {
    let half = len / 2;
    let mut values: Vec<f64> = (1..=half).flat_map(|k| [-(k as f64), k as f64]).collect();
    if len % 2 == 1 {
        values.push(0.0);
    }
    let path = realize_path(&TargetSpectrum::from_f64(&values)?, len)?;
    let mut eps = 0.25;
    while eps > 1e-6 {
        let mut m = path.matrix.matrix().clone();
        m[(0, len - 1)] = eps;
        m[(len - 1, 0)] = eps;
        let eigs = linalg::symmetric_eigenvalues(&m)?;
        let gap = eigs.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        let smallest = eigs.iter().fold(f64::INFINITY, |s, x| s.min(x.abs()));
        if gap > 1e-3 && smallest > 1e-4 {
            return Ok(m);
        }
        eps /= 2.0;
    }
    Err(Error::Numeric(format!("no simple nonzero cycle block of length {len}")))
}

/// A matrix with `MR₀(g)` simple nonzero eigenvalues (and `n - MR₀` zeros):
/// weight a maximum generalized cycle so its eigenvalues are distinct and
/// nonzero, then switch the remaining edges on with a small weight.
pub fn realize_all_simple(g: &Graph, seed: u64) -> Result<RealizationResult> {
    let n = g.order();
    let mr = max_hollow_rank(g)?;
    if mr == 0 {
        let matrix = HollowMatrix::new(Mat::zeros(n, n), g.clone())?;
        let eigs = vec![0.0; n];
        return Ok(RealizationResult { matrix, achieved: cluster(&eigs, 1e-6), residual: 0.0, seed: Some(seed) });
    }
    let mut cover: Option<GeneralizedCycle> = None;
    let _ = for_each_generalized_cycle(g, mr, |c| {
        cover = Some(c.clone());
        ControlFlow::Break(())
    });
    let cover = cover.expect("a cover of order MR0 exists");

    let mut blocks: Vec<(Vec<usize>, Mat)> = Vec::new();
    for comp in &cover.components {
        match comp {
            Component::Edge(u, v) => {
                let mut m = Mat::zeros(2, 2);
                m[(0, 1)] = 1.0;
                m[(1, 0)] = 1.0;
                blocks.push((vec![*u, *v], m));
            }
            Component::Cycle(vs) => blocks.push((vs.clone(), simple_cycle_block(vs.len())?)),
        }
    }

    let mut rng = seeded(seed);
    let mut scales: Vec<f64> = primes(blocks.len()).into_iter().map(|p| (p as f64).sqrt()).collect();
    let mut base = None;
    for _ in 0..DEFAULT_RETRIES {
        let mut m = Mat::zeros(n, n);
        for ((vs, blk), s) in blocks.iter().zip(&scales) {
            for i in 0..vs.len() {
                for j in 0..vs.len() {
                    m[(vs[i], vs[j])] = s * blk[(i, j)];
                }
            }
        }
        let mut nonzero: Vec<f64> = linalg::symmetric_eigenvalues(&m)?;
        nonzero.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
        let nonzero = &mut nonzero[n - mr..];
        nonzero.sort_by(f64::total_cmp);
        let mut gaps: Vec<f64> = nonzero.windows(2).map(|w| w[1] - w[0]).collect();
        gaps.extend(nonzero.iter().map(|x| x.abs()));
        let gap = gaps.into_iter().fold(f64::INFINITY, f64::min);
        if gap > 1e-4 {
            base = Some((m, gap));
            break;
        }
        for s in scales.iter_mut() {
            *s *= 1.0 + 0.1 * rng.random::<f64>();
        }
    }
    let (base, gap) = base.ok_or_else(|| Error::Numeric("could not separate component spectra".into()))?;

    let rest: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| base[(u, v)] == 0.0)
        .collect();
    let mut eps = 1e-2 * gap;
    while eps >= 1e-12 {
        let mut m = base.clone();
        for &(u, v) in &rest {
            m[(u, v)] = eps;
            m[(v, u)] = eps;
        }
        let matrix = HollowMatrix::new(m, g.clone())?;
        let eigs = matrix.eigenvalues()?;
        let tol = default_tol(&eigs);
        let zeros = eigs.iter().filter(|x| x.abs() <= tol).count();
        let spec = cluster(&eigs, tol);
        let simple_nonzero = spec.values.iter().filter(|(v, m)| *m == 1 && v.abs() > tol).count();
        if zeros == n - mr && simple_nonzero == mr {
            let residual = eigs.iter().map(|x| x.abs()).filter(|&x| x <= tol).fold(0.0, f64::max);
            return Ok(RealizationResult { matrix, achieved: spec, residual, seed: Some(seed) });
        }
        eps /= 2.0;
    }
    Err(Error::Numeric("perturbation weight underflow".into()))
}

/// Adjacency matrix of `C_n` with the pair `(0, n-1)` set to `-1`.
pub fn flipped_cycle(n: usize) -> Result<HollowMatrix> {
    if n < 3 {
        return Err(Error::param("cycles need at least 3 vertices"));
    }
    let g = family(FamilyKind::Cycle, vec![n])?;
    let w: Vec<f64> = g.edges().iter().map(|&e| if e == (0, n - 1) { -1.0 } else { 1.0 }).collect();
    HollowMatrix::from_edge_weights(&g, &w)
}

/// Multiplicity list `(2^k, ..., 2^k)` of length `2^(d-k)` on `Q_d`, by
/// lifting an all-simple matrix on `Q_(d-k)` `k` times.
pub fn realize_hypercube_uniform(d: usize, k: usize, seed: u64) -> Result<RealizationResult> {
    if k >= d {
        return Err(Error::param("need k < d"));
    }
    let oml = Oml(vec![1 << k; 1 << (d - k)]);
    let source = family(FamilyKind::Hypercube, vec![d - k])?;
    let target_graph = family(FamilyKind::Hypercube, vec![d])?;
    // lifted values collide when two base eigenvalues share a modulus
    for attempt in 0..DEFAULT_RETRIES as u64 {
        let s = seed.wrapping_add(attempt);
        let base = realize_all_simple(&source, s)?;
        let lifted = iterated_lift(&base.matrix, k)?;
        let matrix = HollowMatrix::new(lifted.matrix().clone(), target_graph.clone())?;
        let r = RealizationResult::against_oml(matrix, &oml, Some(s))?;
        if r.achieved.oml() == oml {
            return Ok(r);
        }
    }
    Err(Error::Numeric(format!("lifted eigenvalues collided in {DEFAULT_RETRIES} attempts")))
}

/// `T_n` with `(i, j)` entry `(i - j)²`, a rank-3 member of the class of `K_n`.
pub fn distance_square_matrix(n: usize) -> Result<HollowMatrix> {
    let g = family(FamilyKind::Complete, vec![n])?;
    let mut m = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let d = i as f64 - j as f64;
            m[(i, j)] = d * d;
        }
    }
    HollowMatrix::new(m, g)
}
