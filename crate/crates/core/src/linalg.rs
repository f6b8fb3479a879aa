//! Small dense linear algebra: a row-major matrix, a cyclic Jacobi
//! eigensolver for symmetric matrices, and seeded random orthogonal factors.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::param(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn from_diag(d: &[f64]) -> Self {
        let mut m = Mat::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    pub fn col(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matmul");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Eigen-decomposition `A = Q diag(values) Qᵀ` with ascending eigenvalues;
/// column `k` of `vectors` belongs to `values[k]`.
#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: Mat,
}

pub const DEFAULT_MAX_SWEEPS: usize = 64;

/// Cyclic Jacobi rotations until the off-diagonal mass stops shrinking.
///
/// Fails when the off-diagonal Frobenius norm is still above
/// `1e-12 * ‖A‖_F` after `max_sweeps` sweeps.
pub fn symmetric_eigen(a: &Mat, max_sweeps: usize) -> Result<SymmetricEigen> {
    jacobi(a, max_sweeps, true)
}

fn jacobi(a: &Mat, max_sweeps: usize, with_vectors: bool) -> Result<SymmetricEigen> {
    if !a.is_square() {
        return Err(Error::param("eigensolver needs a square matrix"));
    }
    let n = a.rows();
    let mut m = a.clone();
    let mut q = if with_vectors { Mat::identity(n) } else { Mat::zeros(0, 0) };
    let norm = a.frobenius();
    let off = |m: &Mat| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[(i, j)] * m[(i, j)];
                }
            }
        }
        s.sqrt()
    };

    let target = f64::EPSILON * norm;
    let mut sweeps = 0;
    while off(&m) > target {
        if sweeps == max_sweeps {
            break;
        }
        sweeps += 1;
        let mut rotated = false;
        for p in 0..n {
            for r in p + 1..n {
                let apr = m[(p, r)];
                if apr == 0.0 {
                    continue;
                }
                let app = m[(p, p)];
                let arr = m[(r, r)];
                // skip entries that can no longer change the diagonal
                if apr.abs() < f64::EPSILON * 1e-3 * (app.abs() + arr.abs()) {
                    m[(p, r)] = 0.0;
                    m[(r, p)] = 0.0;
                    continue;
                }
                rotated = true;
                let theta = (arr - app) / (2.0 * apr);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkr = m[(k, r)];
                    m[(k, p)] = c * mkp - s * mkr;
                    m[(k, r)] = s * mkp + c * mkr;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mrk = m[(r, k)];
                    m[(p, k)] = c * mpk - s * mrk;
                    m[(r, k)] = s * mpk + c * mrk;
                }
                m[(p, r)] = 0.0;
                m[(r, p)] = 0.0;
                for k in 0..q.rows() {
                    let qkp = q[(k, p)];
                    let qkr = q[(k, r)];
                    q[(k, p)] = c * qkp - s * qkr;
                    q[(k, r)] = s * qkp + c * qkr;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let residual = off(&m);
    if residual > 1e-12 * norm {
        return Err(Error::Numeric(format!(
            "Jacobi did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})"
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].total_cmp(&m[(j, j)]).then(i.cmp(&j)));
    let values = order.iter().map(|&i| m[(i, i)]).collect();
    let mut vectors = Mat::zeros(q.rows(), q.rows());
    for (new, &old) in order.iter().enumerate().filter(|_| with_vectors) {
        for k in 0..n {
            vectors[(k, new)] = q[(k, old)];
        }
    }
    Ok(SymmetricEigen { values, vectors })
}

/// Ascending eigenvalues of a symmetric matrix.
pub fn symmetric_eigenvalues(a: &Mat) -> Result<Vec<f64>> {
    jacobi(a, DEFAULT_MAX_SWEEPS, false).map(|e| e.values)
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Modified Gram–Schmidt on `vectors` in place; returns `false` if some
/// vector collapses below `1e-10` of its original length.
pub fn orthonormalize(vectors: &mut [Vec<f64>]) -> bool {
    for i in 0..vectors.len() {
        let original = norm(&vectors[i]);
        for j in 0..i {
            let (done, rest) = vectors.split_at_mut(i);
            let proj = dot(&done[j], &rest[0]);
            for (x, y) in rest[0].iter_mut().zip(&done[j]) {
                *x -= proj * y;
            }
        }
        let len = norm(&vectors[i]);
        if len.is_nan() || len <= 1e-10 * original {
            return false;
        }
        vectors[i].iter_mut().for_each(|x| *x /= len);
    }
    true
}

/// Gaussian random vector.
pub fn gaussian_vector<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
}

/// Random `n x n` orthogonal matrix from Gram–Schmidt on Gaussian columns.
pub fn random_orthogonal<R: Rng>(rng: &mut R, n: usize) -> Mat {
    loop {
        let mut cols: Vec<Vec<f64>> = (0..n).map(|_| gaussian_vector(rng, n)).collect();
        if !orthonormalize(&mut cols) {
            continue;
        }
        let mut q = Mat::zeros(n, n);
        for (j, c) in cols.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                q[(i, j)] = x;
            }
        }
        return q;
    }
}

/// Elementary symmetric polynomials `e_0..=e_n` of `xs`.
pub fn elementary_symmetric(xs: &[f64]) -> Vec<f64> {
    let mut e = vec![0.0; xs.len() + 1];
    e[0] = 1.0;
    for (k, &x) in xs.iter().enumerate() {
        for j in (1..=k + 1).rev() {
            e[j] += e[j - 1] * x;
        }
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sym_random(rng: &mut ChaCha8Rng, n: usize) -> Mat {
        let mut a = Mat::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let x: f64 = rng.random_range(-2.0..2.0);
                a[(i, j)] = x;
                a[(j, i)] = x;
            }
        }
        a
    }

    #[test]
    fn two_by_two() {
        let a = Mat::from_rows(2, 2, vec![0.0, 3.0, 3.0, 0.0]).unwrap();
        let v = symmetric_eigenvalues(&a).unwrap();
        assert!((v[0] + 3.0).abs() < 1e-14 && (v[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn reconstruction_and_orthogonality() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=12 {
            let a = sym_random(&mut rng, n);
            let e = symmetric_eigen(&a, DEFAULT_MAX_SWEEPS).unwrap();
            let lam = Mat::from_diag(&e.values);
            let back = e.vectors.matmul(&lam).matmul(&e.vectors.transpose());
            let mut worst: f64 = 0.0;
            for i in 0..n {
                for j in 0..n {
                    worst = worst.max((back[(i, j)] - a[(i, j)]).abs());
                }
            }
            assert!(worst <= 1e-9 * a.frobenius().max(1e-300), "n={n} residual {worst}");
            let qtq = e.vectors.transpose().matmul(&e.vectors);
            for i in 0..n {
                for j in 0..n {
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((qtq[(i, j)] - want).abs() < 1e-12);
                }
            }
            assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn random_orthogonal_is_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let q = random_orthogonal(&mut rng, 6);
        let qtq = q.transpose().matmul(&q);
        for i in 0..6 {
            for j in 0..6 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((qtq[(i, j)] - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn elementary_symmetric_of_roots() {
        // (x-1)(x-2)(x-3): e1 = 6, e2 = 11, e3 = 6
        assert_eq!(elementary_symmetric(&[1.0, 2.0, 3.0]), vec![1.0, 6.0, 11.0, 6.0]);
    }
}
