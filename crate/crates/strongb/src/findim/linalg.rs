//! Dense linear algebra over small real matrices.
//!
//! One-sided Jacobi SVD is the single factorization everything else
//! (rank, kernel bases, least squares) is built on. Jacobi converges
//! unconditionally for the tiny, well-scaled matrices in scope and is
//! deterministic: no pivot choices depend on floating-point ties in a
//! platform-dependent way.

use crate::scalar::Real;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<T>]) -> Self {
        let c = cols.len();
        let r = if c == 0 { 0 } else { cols[0].len() };
        assert!(cols.iter().all(|col| col.len() == r), "ragged columns");
        Mat::from_fn(r, c, |i, j| cols[j][i])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> T {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.at(i, j)).collect()
    }

    pub fn matvec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut s = T::zero();
                for j in 0..self.cols {
                    s += self.at(i, j) * x[j];
                }
                s
            })
            .collect()
    }

    pub fn transpose(&self) -> Mat<T> {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i))
    }

    pub fn matmul(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.at(i, k);
                if aik == T::zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += aik * other.at(k, j);
                }
            }
        }
        out
    }

    pub fn frobenius(&self) -> T {
        self.data.iter().map(|&x| x * x).fold(T::zero(), |a, b| a + b).sqrt()
    }
}

/// Thin SVD `A = U diag(sigma) V^T`.
///
/// `v` is a full `cols x cols` orthogonal matrix, so trailing columns of `v`
/// span the kernel even when `rows < cols`. `u` has `cols` columns; those
/// paired with a zero singular value are zero vectors.
#[derive(Clone, Debug)]
pub struct Svd<T> {
    pub sigma: Vec<T>,
    pub u: Mat<T>,
    pub v: Mat<T>,
}

/// One-sided Jacobi SVD (Hestenes). Deterministic cyclic pair order.
pub fn svd<T: Real>(a: &Mat<T>) -> Svd<T> {
    let m = a.rows();
    let n = a.cols();
    // Work on columns of A; accumulate rotations into V (starts as identity).
    let mut acols: Vec<Vec<T>> = (0..n).map(|j| a.col(j)).collect();
    let mut vcols: Vec<Vec<T>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { T::one() } else { T::zero() }).collect())
        .collect();

    let eps = T::epsilon();
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut alpha = T::zero();
                let mut beta = T::zero();
                let mut gamma = T::zero();
                for i in 0..m {
                    alpha += acols[p][i] * acols[p][i];
                    beta += acols[q][i] * acols[q][i];
                    gamma += acols[p][i] * acols[q][i];
                }
                if gamma.abs() <= eps * (alpha * beta).sqrt() || gamma == T::zero() {
                    continue;
                }
                rotated = true;
                // Rotation zeroing the (p,q) entry of the Gram matrix.
                let zeta = (beta - alpha) / ((T::one() + T::one()) * gamma);
                let sign = if zeta >= T::zero() { T::one() } else { -T::one() };
                let t = sign / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let xp = acols[p][i];
                    let xq = acols[q][i];
                    acols[p][i] = c * xp - s * xq;
                    acols[q][i] = s * xp + c * xq;
                }
                for i in 0..n {
                    let xp = vcols[p][i];
                    let xq = vcols[q][i];
                    vcols[p][i] = c * xp - s * xq;
                    vcols[q][i] = s * xp + c * xq;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<T> = acols
        .iter()
        .map(|c| c.iter().map(|&x| x * x).fold(T::zero(), |a, b| a + b).sqrt())
        .collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).expect("finite norms"));

    let mut sigma = Vec::with_capacity(n);
    let mut u = Mat::zeros(m, n);
    let mut v = Mat::zeros(n, n);
    for (k, &j) in order.iter().enumerate() {
        let s = norms[j];
        sigma.push(s);
        if s > T::zero() {
            for i in 0..m {
                u.set(i, k, acols[j][i] / s);
            }
        }
        for i in 0..n {
            v.set(i, k, vcols[j][i]);
        }
    }
    Svd { sigma, u, v }
}

/// Effective cutoff used for rank and kernel decisions: relative to the
/// largest singular value with a floor of 1, so all-tiny matrices count as
/// numerically zero rather than full rank.
fn cutoff<T: Real>(sigma: &[T], tol: T) -> T {
    let smax = sigma.first().copied().unwrap_or_else(T::zero);
    tol * smax.max(T::one())
}

/// Number of singular values above the tolerance cutoff.
pub fn rank<T: Real>(a: &Mat<T>, tol: T) -> usize {
    let s = svd(a);
    let c = cutoff(&s.sigma, tol);
    s.sigma.iter().filter(|&&x| x > c).count()
}

/// Orthonormal basis of the (numerical) kernel: right singular vectors whose
/// singular value falls at or below the cutoff.
pub fn kernel_basis<T: Real>(a: &Mat<T>, tol: T) -> Vec<Vec<T>> {
    let s = svd(a);
    let c = cutoff(&s.sigma, tol);
    (0..a.cols())
        .filter(|&k| s.sigma[k] <= c)
        .map(|k| s.v.col(k))
        .collect()
}

/// Minimum-norm least-squares solution of `A x ~ b` via the SVD
/// pseudo-inverse; modes at or below the cutoff are dropped.
pub fn least_squares<T: Real>(a: &Mat<T>, b: &[T], tol: T) -> Vec<T> {
    assert_eq!(b.len(), a.rows());
    let s = svd(a);
    let c = cutoff(&s.sigma, tol);
    let mut x = vec![T::zero(); a.cols()];
    for k in 0..a.cols() {
        if s.sigma[k] <= c {
            continue;
        }
        let mut coeff = T::zero();
        for i in 0..a.rows() {
            coeff += s.u.at(i, k) * b[i];
        }
        coeff /= s.sigma[k];
        for i in 0..a.cols() {
            x[i] += s.v.at(i, k) * coeff;
        }
    }
    x
}

/// Largest singular value.
pub fn spectral_norm<T: Real>(a: &Mat<T>) -> T {
    svd(a).sigma.first().copied().unwrap_or_else(T::zero)
}

pub fn dot<T: Real>(x: &[T], y: &[T]) -> T {
    assert_eq!(x.len(), y.len());
    let mut s = T::zero();
    for i in 0..x.len() {
        s += x[i] * y[i];
    }
    s
}

pub fn norm2<T: Real>(x: &[T]) -> T {
    dot(x, x).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn svd_matches_closed_form_2x2() {
        // A = [[3,0],[4,5]]: A^T A has eigenvalues 45 and 5.
        let a = Mat::from_rows(vec![vec![3.0, 0.0], vec![4.0, 5.0]]);
        let s = svd(&a);
        assert!(close(s.sigma[0], 45f64.sqrt(), 1e-12));
        assert!(close(s.sigma[1], 5f64.sqrt(), 1e-12));
    }

    #[test]
    fn svd_reconstructs_rectangular() {
        let a = Mat::from_rows(vec![
            vec![1.0, 2.0, 0.5],
            vec![-0.3, 0.0, 4.0],
            vec![2.0, -1.0, 1.0],
            vec![0.1, 0.1, 0.1],
        ]);
        let s = svd(&a);
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                let mut r = 0.0;
                for k in 0..a.cols() {
                    r += s.u.at(i, k) * s.sigma[k] * s.v.at(j, k);
                }
                assert!(close(r, a.at(i, j), 1e-12), "({i},{j}): {r} vs {}", a.at(i, j));
            }
        }
        // V orthogonal.
        for p in 0..a.cols() {
            for q in 0..a.cols() {
                let d = dot(&s.v.col(p), &s.v.col(q));
                let want = if p == q { 1.0 } else { 0.0 };
                assert!(close(d, want, 1e-12));
            }
        }
        // Descending.
        assert!(s.sigma.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let a = Mat::from_rows(vec![vec![1.0, 2.0, 3.0], vec![2.0, 4.0, 6.0]]);
        assert_eq!(rank(&a, 1e-9), 1);
        let k = kernel_basis(&a, 1e-9);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(close(norm2(v), 1.0, 1e-12));
            let av = a.matvec(v);
            assert!(norm2(&av) < 1e-10);
        }
        assert!(close(dot(&k[0], &k[1]), 0.0, 1e-12));
    }

    #[test]
    fn kernel_when_wider_than_tall() {
        // 2x3, rank 2: kernel is spanned by (1,1,-1)/sqrt(3).
        let a = Mat::from_rows(vec![vec![1.0, 0.0, 1.0], vec![0.0, 1.0, 1.0]]);
        let k = kernel_basis(&a, 1e-9);
        assert_eq!(k.len(), 1);
        let want = [1.0 / 3f64.sqrt(), 1.0 / 3f64.sqrt(), -1.0 / 3f64.sqrt()];
        let sign = if k[0][0] >= 0.0 { 1.0 } else { -1.0 };
        for i in 0..3 {
            assert!(close(sign * k[0][i], want[i], 1e-12));
        }
    }

    #[test]
    fn least_squares_matches_normal_equations() {
        // Columns (1,1,1) and (0,1,2); b = (1,2,4): normal equations
        // [[3,3],[3,5]] x = [7,10] give x = (5/6, 3/2).
        let a = Mat::from_rows(vec![vec![1.0, 0.0], vec![1.0, 1.0], vec![1.0, 2.0]]);
        let x = least_squares(&a, &[1.0, 2.0, 4.0], 1e-9);
        assert!(close(x[0], 5.0 / 6.0, 1e-12));
        assert!(close(x[1], 3.0 / 2.0, 1e-12));
    }

    #[test]
    fn least_squares_residual_is_orthogonal_to_columns() {
        let a = Mat::from_rows(vec![
            vec![1.0, 0.5, -0.2],
            vec![0.0, 1.5, 0.7],
            vec![2.0, -0.3, 0.4],
            vec![1.0, 1.0, 1.0],
        ]);
        let b = [1.0, -2.0, 0.5, 3.0];
        let x = least_squares(&a, &b, 1e-9);
        let ax = a.matvec(&x);
        let r: Vec<f64> = (0..4).map(|i| b[i] - ax[i]).collect();
        for j in 0..3 {
            assert!(close(dot(&a.col(j), &r), 0.0, 1e-10));
        }
    }

    #[test]
    fn spectral_norm_of_identityish() {
        let a = Mat::from_fn(3, 3, |i, j| if i == j { 2.0 } else { 0.0 });
        assert!(close(spectral_norm(&a), 2.0, 1e-12));
    }

    #[test]
    fn zero_matrix_is_rank_zero() {
        let a = Mat::<f64>::zeros(3, 2);
        assert_eq!(rank(&a, 1e-9), 0);
        assert_eq!(kernel_basis(&a, 1e-9).len(), 2);
    }
}
