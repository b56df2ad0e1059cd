//! Dense multilinear maps A^n → X between finite-dimensional spaces.
//!
//! The value tensor is stored with the output coordinate fastest:
//! `tensor[x + out_dim·(i1 + in_dim·(i2 + …))]` is the x-th coordinate of
//! the image of the basis tuple (e_{i1}, …, e_{in}).

use rand_chacha::ChaCha8Rng;

use super::linalg::{svd, Mat};
use super::norms::gaussian;
use super::{FindimError, RANK_TOLERANCE};
use crate::scalar::{real, Real};

/// Hard cap on tensor entry counts, to keep accidental blowups out of the
/// allocator.
const TENSOR_SIZE_LIMIT: usize = 10_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct MultilinearMap<T> {
    degree: usize,
    in_dim: usize,
    out_dim: usize,
    tensor: Vec<T>,
}

impl<T: Real> MultilinearMap<T> {
    pub fn new(
        degree: usize,
        in_dim: usize,
        out_dim: usize,
        tensor: Vec<T>,
    ) -> Result<Self, FindimError> {
        let len = tensor_len(degree, in_dim, out_dim)?;
        if tensor.len() != len {
            return Err(FindimError::Invalid(format!(
                "tensor has {} entries, expected {len}",
                tensor.len()
            )));
        }
        Ok(MultilinearMap { degree, in_dim, out_dim, tensor })
    }

    pub fn zero(degree: usize, in_dim: usize, out_dim: usize) -> Result<Self, FindimError> {
        let len = tensor_len(degree, in_dim, out_dim)?;
        Ok(MultilinearMap { degree, in_dim, out_dim, tensor: vec![T::zero(); len] })
    }

    pub fn random(
        degree: usize,
        in_dim: usize,
        out_dim: usize,
        rng: &mut ChaCha8Rng,
    ) -> Result<Self, FindimError> {
        let len = tensor_len(degree, in_dim, out_dim)?;
        let tensor = (0..len).map(|_| gaussian(rng)).collect();
        Ok(MultilinearMap { degree, in_dim, out_dim, tensor })
    }

    pub fn from_fn(
        degree: usize,
        in_dim: usize,
        out_dim: usize,
        mut f: impl FnMut(usize, &[usize]) -> T,
    ) -> Result<Self, FindimError> {
        let mut map = Self::zero(degree, in_dim, out_dim)?;
        let mut idx = vec![0usize; degree];
        loop {
            let base = map.flat_base(&idx);
            for x in 0..out_dim {
                map.tensor[base + x] = f(x, &idx);
            }
            if !advance(&mut idx, in_dim) {
                break;
            }
        }
        Ok(map)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn tensor(&self) -> &[T] {
        &self.tensor
    }

    /// Flat offset of the output block for a basis multi-index.
    fn flat_base(&self, indices: &[usize]) -> usize {
        debug_assert_eq!(indices.len(), self.degree);
        let mut flat = 0usize;
        for &i in indices.iter().rev() {
            debug_assert!(i < self.in_dim);
            flat = flat * self.in_dim + i;
        }
        flat * self.out_dim
    }

    /// Image of a basis tuple as a slice of length out_dim.
    pub fn basis_image(&self, indices: &[usize]) -> &[T] {
        let base = self.flat_base(indices);
        &self.tensor[base..base + self.out_dim]
    }

    pub fn entry(&self, x: usize, indices: &[usize]) -> T {
        self.tensor[self.flat_base(indices) + x]
    }

    pub fn set_entry(&mut self, x: usize, indices: &[usize], v: T) {
        let base = self.flat_base(indices);
        self.tensor[base + x] = v;
    }

    /// Evaluates the map on argument vectors by contracting one slot at a
    /// time, starting from the last (largest-stride) index.
    pub fn apply(&self, args: &[&[T]]) -> Vec<T> {
        assert_eq!(args.len(), self.degree, "argument count mismatch");
        for a in args {
            assert_eq!(a.len(), self.in_dim, "argument dimension mismatch");
        }
        let mut cur = self.tensor.clone();
        for arg in args.iter().rev() {
            let stride = cur.len() / self.in_dim;
            let mut next = vec![T::zero(); stride];
            for (k, &w) in arg.iter().enumerate() {
                if w == T::zero() {
                    continue;
                }
                let block = &cur[k * stride..(k + 1) * stride];
                for (n, &b) in next.iter_mut().zip(block.iter()) {
                    *n += w * b;
                }
            }
            cur = next;
        }
        cur
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, s: T) -> Self {
        let mut out = self.clone();
        for v in out.tensor.iter_mut() {
            *v = *v * s;
        }
        out
    }

    /// self + alpha·other, in place.
    pub fn axpy(&mut self, alpha: T, other: &Self) {
        assert_eq!(self.shape(), other.shape());
        for (a, &b) in self.tensor.iter_mut().zip(other.tensor.iter()) {
            *a += alpha * b;
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(T, T) -> T) -> Self {
        assert_eq!(self.shape(), other.shape(), "shape mismatch");
        let tensor = self
            .tensor
            .iter()
            .zip(other.tensor.iter())
            .map(|(&a, &b)| f(a, b))
            .collect();
        MultilinearMap { tensor, ..*self }
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.degree, self.in_dim, self.out_dim)
    }

    pub fn frob_dot(&self, other: &Self) -> T {
        assert_eq!(self.shape(), other.shape());
        let mut s = T::zero();
        for (&a, &b) in self.tensor.iter().zip(other.tensor.iter()) {
            s += a * b;
        }
        s
    }

    pub fn frob_norm(&self) -> T {
        self.frob_dot(self).sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.tensor.iter().fold(T::zero(), |acc, &x| acc.max(x.abs()))
    }
}

fn tensor_len(degree: usize, in_dim: usize, out_dim: usize) -> Result<usize, FindimError> {
    if degree == 0 {
        return Err(FindimError::Invalid("map degree must be at least 1".into()));
    }
    if in_dim == 0 || out_dim == 0 {
        return Err(FindimError::Invalid("dimensions must be positive".into()));
    }
    let mut len = out_dim;
    for _ in 0..degree {
        len = len
            .checked_mul(in_dim)
            .filter(|&l| l <= TENSOR_SIZE_LIMIT)
            .ok_or_else(|| {
                FindimError::Guard(format!(
                    "tensor of degree {degree} over dim {in_dim} exceeds size limit"
                ))
            })?;
    }
    Ok(len)
}

/// Advances a multi-index odometer; false once it wraps to all zeros.
pub fn advance(idx: &mut [usize], base: usize) -> bool {
    for digit in idx.iter_mut() {
        *digit += 1;
        if *digit < base {
            return true;
        }
        *digit = 0;
    }
    false
}

/// A list of same-shape maps verified to be linearly independent.
#[derive(Clone, Debug)]
pub struct SubspaceBasis<T> {
    maps: Vec<MultilinearMap<T>>,
}

impl<T: Real> SubspaceBasis<T> {
    pub fn new(maps: Vec<MultilinearMap<T>>) -> Result<Self, FindimError> {
        if let Some(first) = maps.first() {
            if maps.iter().any(|m| m.shape() != first.shape()) {
                return Err(FindimError::Invalid("basis maps have mixed shapes".into()));
            }
            // Rank via the Gram matrix: singular values of the stacked
            // coefficient matrix are square roots of the Gram eigenvalues,
            // so the rank cutoff is applied to those roots.
            let n = maps.len();
            let gram = Mat::from_fn(n, n, |i, j| maps[i].frob_dot(&maps[j]));
            let sig = svd(&gram).sigma;
            let roots: Vec<T> = sig.iter().map(|&s| s.max(T::zero()).sqrt()).collect();
            let tol = real::<T>(RANK_TOLERANCE);
            let cutoff = tol * roots.first().copied().unwrap_or_else(T::zero).max(T::one());
            let rank = roots.iter().filter(|&&r| r > cutoff).count();
            if rank != n {
                return Err(FindimError::Invalid(format!(
                    "basis is rank-deficient: {n} maps span only rank {rank}"
                )));
            }
        }
        Ok(SubspaceBasis { maps })
    }

    pub fn empty() -> Self {
        SubspaceBasis { maps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn maps(&self) -> &[MultilinearMap<T>] {
        &self.maps
    }

    pub fn get(&self, i: usize) -> &MultilinearMap<T> {
        &self.maps[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn apply_matches_direct_sum_degree_two() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let t = MultilinearMap::<f64>::random(2, 3, 2, &mut rng).unwrap();
        let a = [1.0, -0.5, 2.0];
        let b = [0.25, 4.0, -1.0];
        let got = t.apply(&[&a, &b]);
        let mut want = vec![0.0f64; 2];
        for i in 0..3 {
            for j in 0..3 {
                for x in 0..2 {
                    want[x] += a[i] * b[j] * t.entry(x, &[i, j]);
                }
            }
        }
        for x in 0..2 {
            assert!((got[x] - want[x]).abs() <= 1e-12);
        }
    }

    #[test]
    fn apply_matches_odometer_degree_three() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let t = MultilinearMap::<f64>::random(3, 2, 3, &mut rng).unwrap();
        let args: Vec<Vec<f64>> =
            (0..3).map(|_| (0..2).map(|_| gaussian::<f64>(&mut rng)).collect()).collect();
        let refs: Vec<&[f64]> = args.iter().map(|a| a.as_slice()).collect();
        let got = t.apply(&refs);
        let mut want = vec![0.0f64; 3];
        let mut idx = vec![0usize; 3];
        loop {
            let w: f64 = idx.iter().enumerate().map(|(slot, &i)| args[slot][i]).product();
            for x in 0..3 {
                want[x] += w * t.entry(x, &idx);
            }
            if !advance(&mut idx, 2) {
                break;
            }
        }
        for x in 0..3 {
            assert!((got[x] - want[x]).abs() <= 1e-12);
        }
    }

    #[test]
    fn basis_image_matches_apply_on_basis_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let t = MultilinearMap::<f64>::random(2, 4, 3, &mut rng).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let mut e_i = vec![0.0; 4];
                e_i[i] = 1.0;
                let mut e_j = vec![0.0; 4];
                e_j[j] = 1.0;
                let via_apply = t.apply(&[&e_i, &e_j]);
                assert_eq!(via_apply.as_slice(), t.basis_image(&[i, j]));
            }
        }
    }

    #[test]
    fn apply_is_linear_in_each_slot() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let t = MultilinearMap::<f64>::random(2, 3, 2, &mut rng).unwrap();
        let a = [1.0, 2.0, -1.0];
        let b = [0.5, -0.25, 3.0];
        let c = [2.0, 0.0, 1.0];
        let lam = 1.75;
        let bc: Vec<f64> = b.iter().zip(c.iter()).map(|(&x, &y)| lam * x + y).collect();
        let lhs = t.apply(&[&a, &bc]);
        let t_ab = t.apply(&[&a, &b]);
        let t_ac = t.apply(&[&a, &c]);
        for x in 0..2 {
            assert!((lhs[x] - (lam * t_ab[x] + t_ac[x])).abs() <= 1e-12);
        }
    }

    #[test]
    fn from_fn_round_trips_entries() {
        let t = MultilinearMap::<f64>::from_fn(2, 3, 2, |x, idx| {
            (x * 100 + idx[0] * 10 + idx[1]) as f64
        })
        .unwrap();
        assert_eq!(t.entry(1, &[2, 1]), 121.0);
        assert_eq!(t.entry(0, &[0, 2]), 2.0);
    }

    #[test]
    fn size_guard_rejects_huge_tensors() {
        assert!(matches!(
            MultilinearMap::<f64>::zero(8, 16, 16),
            Err(FindimError::Guard(_))
        ));
        assert!(MultilinearMap::<f64>::zero(0, 2, 2).is_err());
    }

    #[test]
    fn subspace_basis_rejects_dependent_maps() {
        let a = MultilinearMap::<f64>::from_fn(1, 2, 2, |x, idx| ((x + idx[0]) % 2) as f64).unwrap();
        let b = a.scale(2.0);
        assert!(SubspaceBasis::new(vec![a.clone(), b]).is_err());
        let c = MultilinearMap::<f64>::from_fn(1, 2, 2, |x, idx| (x * idx[0]) as f64).unwrap();
        let basis = SubspaceBasis::new(vec![a, c]).unwrap();
        assert_eq!(basis.len(), 2);
        assert!(SubspaceBasis::<f64>::empty().is_empty());
    }
}
