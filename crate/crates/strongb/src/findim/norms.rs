//! Norms on finite-dimensional coefficient spaces.
//!
//! Every finite-dimensional object in this crate is a plain coordinate
//! vector; its geometry comes from a [`NormKind`] attached to the owning
//! algebra or module. Besides evaluating the norm, each kind knows
//!
//! * an upper bound for the dual norm (powering certified lower bounds on
//!   distances, via ⟨r, a⟩ ≤ ‖r‖_dual·‖a‖),
//! * per-coordinate caps over its unit ball (powering crude upper bounds on
//!   operator norms),
//! * the vertices of its unit ball when that ball is a polytope (powering
//!   exact maximization of convex objectives).
//!
//! The dual bound is exact except for matrix 1/∞ operator norms, where a
//! √m·Frobenius estimate is used; callers treat it as one-sided.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::linalg::{svd, Mat};
use crate::scalar::{kahan_sum, real, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatP {
    One,
    Two,
    Inf,
}

#[derive(Clone, Debug, PartialEq)]
pub enum NormKind<T> {
    /// Largest coordinate magnitude (pointwise functions).
    Sup,
    /// Sum of coordinate magnitudes (group algebras).
    GroupL1,
    /// Euclidean norm (Hilbert-space coefficients).
    L2,
    /// Operator p-norm of the m×m matrix stored row-major.
    MatrixOp { p: MatP, m: usize },
    /// Weighted sup norm max_i w_i·|v_i| with positive weights.
    WeightedSup(Vec<T>),
    /// Norm ‖a‖ + |λ| on a space extended by one adjoined coordinate.
    Unitized(Box<NormKind<T>>),
}

/// Largest dimension for which a 2^d vertex enumeration is attempted.
pub const VERTEX_ENUM_LIMIT: usize = 16;

impl<T: Real> NormKind<T> {
    pub fn designator(&self) -> &'static str {
        match self {
            NormKind::Sup => "sup",
            NormKind::GroupL1 => "group_l1",
            NormKind::L2 => "l2",
            NormKind::MatrixOp { .. } => "matrix_p",
            NormKind::WeightedSup(_) => "grid_custom",
            NormKind::Unitized(_) => "unitized",
        }
    }

    /// Checks that the kind is compatible with vectors of length `dim`.
    pub fn validate(&self, dim: usize) -> Result<(), String> {
        match self {
            NormKind::Sup | NormKind::GroupL1 | NormKind::L2 => Ok(()),
            NormKind::MatrixOp { m, .. } => {
                if m * m == dim && *m >= 1 {
                    Ok(())
                } else {
                    Err(format!("matrix norm needs dim = m^2, got dim {dim} with m {m}"))
                }
            }
            NormKind::WeightedSup(w) => {
                if w.len() != dim {
                    Err(format!("weight count {} does not match dim {dim}", w.len()))
                } else if w.iter().any(|&x| !(x > T::zero())) {
                    Err("weights must be positive".into())
                } else {
                    Ok(())
                }
            }
            NormKind::Unitized(inner) => {
                if dim == 0 {
                    Err("unitized norm needs at least one coordinate".into())
                } else {
                    inner.validate(dim - 1)
                }
            }
        }
    }

    pub fn eval(&self, v: &[T]) -> T {
        match self {
            NormKind::Sup => v.iter().fold(T::zero(), |acc, &x| acc.max(x.abs())),
            NormKind::GroupL1 => kahan_sum(v.iter().map(|&x| x.abs())),
            NormKind::L2 => kahan_sum(v.iter().map(|&x| x * x)).sqrt(),
            NormKind::MatrixOp { p, m } => matrix_op_norm(*p, *m, v),
            NormKind::WeightedSup(w) => {
                v.iter().zip(w.iter()).fold(T::zero(), |acc, (&x, &wi)| acc.max(wi * x.abs()))
            }
            NormKind::Unitized(inner) => {
                let (body, last) = v.split_at(v.len() - 1);
                inner.eval(body) + last[0].abs()
            }
        }
    }

    /// Upper bound on the dual norm sup{⟨r, a⟩ : ‖a‖ ≤ 1}. Exact except for
    /// matrix 1/∞ operator norms.
    pub fn dual_norm_upper(&self, r: &[T]) -> T {
        match self {
            NormKind::Sup => kahan_sum(r.iter().map(|&x| x.abs())),
            NormKind::GroupL1 => r.iter().fold(T::zero(), |acc, &x| acc.max(x.abs())),
            NormKind::L2 => kahan_sum(r.iter().map(|&x| x * x)).sqrt(),
            NormKind::MatrixOp { p: MatP::Two, m } => {
                // Nuclear norm: exact dual of the spectral norm.
                let a = Mat::from_fn(*m, *m, |i, j| r[i * m + j]);
                kahan_sum(svd(&a).sigma.into_iter())
            }
            NormKind::MatrixOp { m, .. } => {
                // Unit balls of the 1/∞ operator norms sit inside the
                // Frobenius ball of radius √m.
                let frob = kahan_sum(r.iter().map(|&x| x * x)).sqrt();
                T::from_usize(*m).expect("matrix size fits scalar").sqrt() * frob
            }
            NormKind::WeightedSup(w) => kahan_sum(r.iter().zip(w.iter()).map(|(&x, &wi)| x.abs() / wi)),
            NormKind::Unitized(inner) => {
                let (body, last) = r.split_at(r.len() - 1);
                inner.dual_norm_upper(body).max(last[0].abs())
            }
        }
    }

    /// Largest magnitude coordinate i can take on the unit ball.
    pub fn coord_cap(&self, i: usize) -> T {
        match self {
            NormKind::Sup | NormKind::GroupL1 | NormKind::L2 | NormKind::MatrixOp { .. } => T::one(),
            NormKind::WeightedSup(w) => T::one() / w[i],
            // The adjoined coordinate is indexed past the inner ones.
            NormKind::Unitized(inner) => match inner.as_ref() {
                NormKind::WeightedSup(w) if i < w.len() => inner.coord_cap(i),
                _ => T::one(),
            },
        }
    }

    /// Vertices of the unit ball when it is a polytope small enough to
    /// enumerate; None means the caller must fall back to iterative bounds.
    pub fn ball_vertices(&self, dim: usize) -> Option<Vec<Vec<T>>> {
        match self {
            NormKind::Sup => sign_vertices(dim, |_| T::one()),
            NormKind::WeightedSup(w) => sign_vertices(dim, |i| T::one() / w[i]),
            NormKind::GroupL1 => {
                let mut out = Vec::with_capacity(2 * dim);
                for i in 0..dim {
                    for sgn in [T::one(), -T::one()] {
                        let mut v = vec![T::zero(); dim];
                        v[i] = sgn;
                        out.push(v);
                    }
                }
                Some(out)
            }
            NormKind::L2 | NormKind::MatrixOp { .. } => None,
            NormKind::Unitized(inner) => {
                let mut out = Vec::new();
                for mut v in inner.ball_vertices(dim - 1)? {
                    v.push(T::zero());
                    out.push(v);
                }
                for sgn in [T::one(), -T::one()] {
                    let mut v = vec![T::zero(); dim];
                    v[dim - 1] = sgn;
                    out.push(v);
                }
                Some(out)
            }
        }
    }

    /// Scales v to unit norm in place; false when v is numerically zero.
    pub fn normalize(&self, v: &mut [T]) -> bool {
        let n = self.eval(v);
        if n <= real::<T>(1e-300) {
            return false;
        }
        for x in v.iter_mut() {
            *x /= n;
        }
        true
    }

    /// Deterministic random unit vector (Gaussian direction, normalized).
    pub fn random_unit(&self, dim: usize, rng: &mut ChaCha8Rng) -> Vec<T> {
        loop {
            let mut v: Vec<T> = (0..dim).map(|_| gaussian(rng)).collect();
            if self.normalize(&mut v) {
                return v;
            }
        }
    }
}

/// Standard-normal sample drawn in f64 so every scalar type sees the same
/// random stream.
pub fn gaussian<T: Real>(rng: &mut ChaCha8Rng) -> T {
    let x: f64 = rng.sample(rand_distr::StandardNormal);
    real::<T>(x)
}

fn sign_vertices<T: Real>(dim: usize, scale: impl Fn(usize) -> T) -> Option<Vec<Vec<T>>> {
    if dim > VERTEX_ENUM_LIMIT {
        return None;
    }
    let count = 1usize << dim;
    let mut out = Vec::with_capacity(count);
    for mask in 0..count {
        let v: Vec<T> = (0..dim)
            .map(|i| if mask >> i & 1 == 1 { scale(i) } else { -scale(i) })
            .collect();
        out.push(v);
    }
    Some(out)
}

fn matrix_op_norm<T: Real>(p: MatP, m: usize, v: &[T]) -> T {
    match p {
        MatP::One => {
            // Largest absolute column sum.
            let mut best = T::zero();
            for j in 0..m {
                let s = kahan_sum((0..m).map(|i| v[i * m + j].abs()));
                best = best.max(s);
            }
            best
        }
        MatP::Inf => {
            let mut best = T::zero();
            for i in 0..m {
                let s = kahan_sum((0..m).map(|j| v[i * m + j].abs()));
                best = best.max(s);
            }
            best
        }
        MatP::Two => {
            let a = Mat::from_fn(m, m, |i, j| v[i * m + j]);
            svd(&a).sigma.first().copied().unwrap_or_else(T::zero)
        }
    }
}
