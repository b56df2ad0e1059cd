//! Finite-dimensional normed algebras and bimodules, described by dense
//! structure-constant tensors and validated against the defining axioms.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::linalg::Mat;
use super::norms::{gaussian, MatP, NormKind};
use super::{FindimError, AXIOM_TOLERANCE};
use crate::scalar::{kahan_sum, real, Real};

/// Basis-triple products are checked exhaustively up to this dimension;
/// beyond it validation uses seeded random vector triples.
const EXHAUSTIVE_DIM_LIMIT: usize = 16;
const RANDOM_PROBE_COUNT: usize = 128;
const PROBE_SEED: u64 = 0x5eed_a110;

/// An algebra on R^dim with multiplication e_i·e_j = Σ_k c[i,j,k]·e_k.
///
/// The structure tensor is stored row-major: index `(i*dim + j)*dim + k`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraSpec<T> {
    dim: usize,
    structure: Vec<T>,
    norm: NormKind<T>,
    unit: Option<Vec<T>>,
}

impl<T: Real> AlgebraSpec<T> {
    pub fn new(
        dim: usize,
        structure: Vec<T>,
        norm: NormKind<T>,
        unit: Option<Vec<T>>,
    ) -> Result<Self, FindimError> {
        if dim == 0 {
            return Err(FindimError::Invalid("algebra dimension must be positive".into()));
        }
        if structure.len() != dim * dim * dim {
            return Err(FindimError::Invalid(format!(
                "structure tensor has {} entries, expected {}",
                structure.len(),
                dim * dim * dim
            )));
        }
        norm.validate(dim).map_err(FindimError::Invalid)?;
        if let Some(u) = &unit {
            if u.len() != dim {
                return Err(FindimError::Invalid("unit vector length mismatch".into()));
            }
        }
        let alg = AlgebraSpec { dim, structure, norm, unit };
        alg.check_associativity()?;
        alg.check_unit()?;
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn norm(&self) -> &NormKind<T> {
        &self.norm
    }

    pub fn unit(&self) -> Option<&[T]> {
        self.unit.as_deref()
    }

    pub fn structure(&self) -> &[T] {
        &self.structure
    }

    #[inline]
    pub fn c(&self, i: usize, j: usize, k: usize) -> T {
        self.structure[(i * self.dim + j) * self.dim + k]
    }

    /// Product row c[i,j,·] as a slice.
    #[inline]
    pub fn basis_product(&self, i: usize, j: usize) -> &[T] {
        let d = self.dim;
        &self.structure[(i * d + j) * d..(i * d + j + 1) * d]
    }

    pub fn mul(&self, a: &[T], b: &[T]) -> Vec<T> {
        let d = self.dim;
        let mut out = vec![T::zero(); d];
        for i in 0..d {
            if a[i] == T::zero() {
                continue;
            }
            for j in 0..d {
                let w = a[i] * b[j];
                if w == T::zero() {
                    continue;
                }
                let row = self.basis_product(i, j);
                for k in 0..d {
                    out[k] += w * row[k];
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by e_i acting on column vectors.
    pub fn left_matrix(&self, i: usize) -> Mat<T> {
        Mat::from_fn(self.dim, self.dim, |k, j| self.c(i, j, k))
    }

    /// Matrix of right multiplication by e_i acting on column vectors.
    pub fn right_matrix(&self, i: usize) -> Mat<T> {
        Mat::from_fn(self.dim, self.dim, |k, j| self.c(j, i, k))
    }

    fn check_associativity(&self) -> Result<(), FindimError> {
        let d = self.dim;
        let tol = real::<T>(AXIOM_TOLERANCE);
        if d <= EXHAUSTIVE_DIM_LIMIT {
            for i in 0..d {
                for j in 0..d {
                    let ij = self.basis_product(i, j).to_vec();
                    for k in 0..d {
                        let mut e_k = vec![T::zero(); d];
                        e_k[k] = T::one();
                        let lhs = self.mul(&ij, &e_k);
                        let jk = self.basis_product(j, k).to_vec();
                        let mut e_i = vec![T::zero(); d];
                        e_i[i] = T::one();
                        let rhs = self.mul(&e_i, &jk);
                        let defect = max_abs_diff(&lhs, &rhs);
                        if defect > tol {
                            return Err(FindimError::Axiom(format!(
                                "associativity fails on basis triple ({i},{j},{k}) by {defect:e}"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
            for probe in 0..RANDOM_PROBE_COUNT {
                let a: Vec<T> = (0..d).map(|_| gaussian(&mut rng)).collect();
                let b: Vec<T> = (0..d).map(|_| gaussian(&mut rng)).collect();
                let c: Vec<T> = (0..d).map(|_| gaussian(&mut rng)).collect();
                let lhs = self.mul(&self.mul(&a, &b), &c);
                let rhs = self.mul(&a, &self.mul(&b, &c));
                // Random Gaussian triples have coordinates of unit scale, so
                // the axiom tolerance applies after normalizing by d^(3/2).
                let scale = real::<T>((d as f64).powf(1.5));
                let defect = max_abs_diff(&lhs, &rhs) / scale;
                if defect > tol {
                    return Err(FindimError::Axiom(format!(
                        "associativity fails on random probe {probe} by {defect:e}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self) -> Result<(), FindimError> {
        let Some(u) = self.unit.clone() else { return Ok(()) };
        let d = self.dim;
        let tol = real::<T>(AXIOM_TOLERANCE);
        for i in 0..d {
            let mut e_i = vec![T::zero(); d];
            e_i[i] = T::one();
            let left = self.mul(&u, &e_i);
            let right = self.mul(&e_i, &u);
            let defect = max_abs_diff(&left, &e_i).max(max_abs_diff(&right, &e_i));
            if defect > tol {
                return Err(FindimError::Axiom(format!(
                    "unit axiom fails on basis vector {i} by {defect:e}"
                )));
            }
        }
        Ok(())
    }

    /// Pointwise-product algebra C^k under the sup norm.
    pub fn ck(k: usize) -> Result<Self, FindimError> {
        let mut c = vec![T::zero(); k * k * k];
        for i in 0..k {
            c[(i * k + i) * k + i] = T::one();
        }
        Self::new(k, c, NormKind::Sup, Some(vec![T::one(); k]))
    }

    /// Convolution algebra on the cyclic group of order k with the l1 norm.
    pub fn l1_cyclic(k: usize) -> Result<Self, FindimError> {
        if k == 0 {
            return Err(FindimError::Invalid("cyclic order must be positive".into()));
        }
        let mut c = vec![T::zero(); k * k * k];
        for i in 0..k {
            for j in 0..k {
                c[(i * k + j) * k + (i + j) % k] = T::one();
            }
        }
        let mut unit = vec![T::zero(); k];
        unit[0] = T::one();
        Self::new(k, c, NormKind::GroupL1, Some(unit))
    }

    /// Full matrix algebra of m×m matrices with the spectral norm, stored
    /// row-major so index (a,b) maps to a*m+b.
    pub fn mat(m: usize) -> Result<Self, FindimError> {
        if m == 0 {
            return Err(FindimError::Invalid("matrix size must be positive".into()));
        }
        let d = m * m;
        let mut c = vec![T::zero(); d * d * d];
        for a in 0..m {
            for b in 0..m {
                for e in 0..m {
                    // E_{a,b}·E_{b,e} = E_{a,e}
                    let i = a * m + b;
                    let j = b * m + e;
                    let k = a * m + e;
                    c[(i * d + j) * d + k] = T::one();
                }
            }
        }
        let mut unit = vec![T::zero(); d];
        for a in 0..m {
            unit[a * m + a] = T::one();
        }
        Self::new(d, c, NormKind::MatrixOp { p: MatP::Two, m }, Some(unit))
    }

    pub fn m2() -> Result<Self, FindimError> {
        Self::mat(2)
    }

    pub fn scalars() -> Result<Self, FindimError> {
        Self::ck(1)
    }

    /// Builds a named algebra: "ck:K", "l1z:K", "m2", "mat:M", "scalars".
    pub fn from_designator(s: &str) -> Result<Self, FindimError> {
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        let parse_arg = |a: Option<&str>| -> Result<usize, FindimError> {
            let a = a.ok_or_else(|| FindimError::Parse(format!("designator {s} needs :K")))?;
            a.parse::<usize>()
                .map_err(|_| FindimError::Parse(format!("bad size in designator {s}")))
        };
        match head {
            "ck" => Self::ck(parse_arg(arg)?),
            "l1z" => Self::l1_cyclic(parse_arg(arg)?),
            "mat" => Self::mat(parse_arg(arg)?),
            "m2" if arg.is_none() => Self::m2(),
            "scalars" if arg.is_none() => Self::scalars(),
            _ => Err(FindimError::Parse(format!("unknown algebra designator {s}"))),
        }
    }

    /// Adjoins a unit as the last coordinate, with norm ‖a‖ + |λ|.
    pub fn unitize(&self) -> Result<Self, FindimError> {
        let d = self.dim;
        let dd = d + 1;
        let mut c = vec![T::zero(); dd * dd * dd];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    c[(i * dd + j) * dd + k] = self.c(i, j, k);
                }
            }
        }
        for i in 0..dd {
            // e_i·1 = e_i and 1·e_i = e_i (coincide at i = d).
            c[(i * dd + d) * dd + i] += T::one();
            if i < d {
                c[(d * dd + i) * dd + i] += T::one();
            }
        }
        let mut unit = vec![T::zero(); dd];
        unit[d] = T::one();
        Self::new(dd, c, NormKind::Unitized(Box::new(self.norm.clone())), Some(unit))
    }

    /// Norm of an approximate identity: exact ‖1‖ for unital algebras, and a
    /// searched upper estimate (flagged uncertified) otherwise.
    pub fn local_unit_bound(&self) -> LocalUnitEstimate<T> {
        if let Some(u) = &self.unit {
            return LocalUnitEstimate {
                bound: self.norm.eval(u),
                certified: true,
                residual: T::zero(),
            };
        }
        let d = self.dim;
        let mut best_bound = T::infinity();
        let mut best_residual = T::infinity();
        let mut consider = |u: &[T]| {
            let mut residual = T::zero();
            for i in 0..d {
                let mut e_i = vec![T::zero(); d];
                e_i[i] = T::one();
                let l = self.mul(u, &e_i);
                let r = self.mul(&e_i, u);
                residual = residual.max(max_abs_diff(&l, &e_i)).max(max_abs_diff(&r, &e_i));
            }
            if residual < best_residual {
                best_residual = residual;
                best_bound = self.norm.eval(u);
            }
        };
        let ones = vec![T::one(); d];
        consider(&ones);
        for i in 0..d {
            let mut e_i = vec![T::zero(); d];
            e_i[i] = T::one();
            consider(&e_i);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED ^ 1);
        for _ in 0..64 {
            let u: Vec<T> = (0..d).map(|_| gaussian(&mut rng)).collect();
            consider(&u);
        }
        LocalUnitEstimate { bound: best_bound, certified: false, residual: best_residual }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct LocalUnitEstimate<T> {
    pub bound: T,
    pub certified: bool,
    /// Worst deviation of the chosen candidate from acting as an identity.
    pub residual: T,
}

/// A normed bimodule over an algebra: action tensors are stored row-major,
/// `left[(i*xd + y)*xd + x]` giving the y-th coordinate of e_i·e_x.
#[derive(Clone, Debug, PartialEq)]
pub struct BimoduleSpec<T> {
    dim: usize,
    alg_dim: usize,
    left: Vec<T>,
    right: Vec<T>,
    norm: NormKind<T>,
}

impl<T: Real> BimoduleSpec<T> {
    pub fn new(
        dim: usize,
        left: Vec<T>,
        right: Vec<T>,
        norm: NormKind<T>,
        algebra: &AlgebraSpec<T>,
    ) -> Result<Self, FindimError> {
        let d = algebra.dim();
        if dim == 0 {
            return Err(FindimError::Invalid("module dimension must be positive".into()));
        }
        if left.len() != d * dim * dim || right.len() != d * dim * dim {
            return Err(FindimError::Invalid("action tensor size mismatch".into()));
        }
        norm.validate(dim).map_err(FindimError::Invalid)?;
        let module = BimoduleSpec { dim, alg_dim: d, left, right, norm };
        module.check_axioms(algebra)?;
        Ok(module)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn norm(&self) -> &NormKind<T> {
        &self.norm
    }

    #[inline]
    pub fn la(&self, i: usize, y: usize, x: usize) -> T {
        self.left[(i * self.dim + y) * self.dim + x]
    }

    #[inline]
    pub fn ra(&self, i: usize, y: usize, x: usize) -> T {
        self.right[(i * self.dim + y) * self.dim + x]
    }

    /// y ↦ a·y for an algebra element a.
    pub fn act_left(&self, a: &[T], v: &[T]) -> Vec<T> {
        let xd = self.dim;
        let mut out = vec![T::zero(); xd];
        for (i, &ai) in a.iter().enumerate() {
            if ai == T::zero() {
                continue;
            }
            for y in 0..xd {
                let row = &self.left[(i * xd + y) * xd..(i * xd + y + 1) * xd];
                out[y] += ai * kahan_sum(row.iter().zip(v.iter()).map(|(&m, &x)| m * x));
            }
        }
        out
    }

    /// y ↦ y·a for an algebra element a.
    pub fn act_right(&self, v: &[T], a: &[T]) -> Vec<T> {
        let xd = self.dim;
        let mut out = vec![T::zero(); xd];
        for (i, &ai) in a.iter().enumerate() {
            if ai == T::zero() {
                continue;
            }
            for y in 0..xd {
                let row = &self.right[(i * xd + y) * xd..(i * xd + y + 1) * xd];
                out[y] += ai * kahan_sum(row.iter().zip(v.iter()).map(|(&m, &x)| m * x));
            }
        }
        out
    }

    pub fn left_matrix(&self, i: usize) -> Mat<T> {
        let xd = self.dim;
        Mat::from_fn(xd, xd, |y, x| self.la(i, y, x))
    }

    pub fn right_matrix(&self, i: usize) -> Mat<T> {
        let xd = self.dim;
        Mat::from_fn(xd, xd, |y, x| self.ra(i, y, x))
    }

    fn check_axioms(&self, algebra: &AlgebraSpec<T>) -> Result<(), FindimError> {
        let d = self.alg_dim;
        let xd = self.dim;
        let tol = real::<T>(AXIOM_TOLERANCE);
        let cost = d * d * xd * xd * xd;
        if cost <= 50_000_000 {
            let la: Vec<Mat<T>> = (0..d).map(|i| self.left_matrix(i)).collect();
            let ra: Vec<Mat<T>> = (0..d).map(|i| self.right_matrix(i)).collect();
            for i in 0..d {
                for j in 0..d {
                    let cij = algebra.basis_product(i, j);
                    let la_prod = la[i].matmul(&la[j]);
                    let ra_prod = ra[j].matmul(&ra[i]);
                    let mix_lr = ra[j].matmul(&la[i]);
                    let mix_rl = la[i].matmul(&ra[j]);
                    let mut la_sum = Mat::zeros(xd, xd);
                    let mut ra_sum = Mat::zeros(xd, xd);
                    for (m, &w) in cij.iter().enumerate() {
                        if w == T::zero() {
                            continue;
                        }
                        for r in 0..xd {
                            for c in 0..xd {
                                la_sum.set(r, c, la_sum.at(r, c) + w * la[m].at(r, c));
                                ra_sum.set(r, c, ra_sum.at(r, c) + w * ra[m].at(r, c));
                            }
                        }
                    }
                    let e_left = mat_max_diff(&la_prod, &la_sum);
                    let e_right = mat_max_diff(&ra_prod, &ra_sum);
                    let e_mix = mat_max_diff(&mix_lr, &mix_rl);
                    let worst = e_left.max(e_right).max(e_mix);
                    if worst > tol {
                        return Err(FindimError::Axiom(format!(
                            "bimodule axioms fail on basis pair ({i},{j}) by {worst:e}"
                        )));
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED ^ 2);
            let scale = real::<T>((d as f64).max(xd as f64).powf(1.5));
            for probe in 0..RANDOM_PROBE_COUNT {
                let a: Vec<T> = (0..d).map(|_| gaussian(&mut rng)).collect();
                let b: Vec<T> = (0..d).map(|_| gaussian(&mut rng)).collect();
                let v: Vec<T> = (0..xd).map(|_| gaussian(&mut rng)).collect();
                let ab = algebra.mul(&a, &b);
                let e1 = max_abs_diff(&self.act_left(&a, &self.act_left(&b, &v)), &self.act_left(&ab, &v));
                let e2 =
                    max_abs_diff(&self.act_right(&self.act_right(&v, &a), &b), &self.act_right(&v, &ab));
                let e3 = max_abs_diff(
                    &self.act_right(&self.act_left(&a, &v), &b),
                    &self.act_left(&a, &self.act_right(&v, &b)),
                );
                let worst = e1.max(e2).max(e3) / scale;
                if worst > tol {
                    return Err(FindimError::Axiom(format!(
                        "bimodule axioms fail on random probe {probe} by {worst:e}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Checks that the algebra unit acts as the identity on both sides.
    /// Not part of the construction axioms: operator bimodules derived from
    /// cochain suspension use a twisted right action under which the unit is
    /// deliberately not neutral.
    pub fn check_unital(&self, algebra: &AlgebraSpec<T>) -> Result<(), FindimError> {
        let Some(u) = algebra.unit() else {
            return Err(FindimError::Invalid("algebra has no unit".into()));
        };
        let xd = self.dim;
        let tol = real::<T>(AXIOM_TOLERANCE);
        for y in 0..xd {
            let mut e_y = vec![T::zero(); xd];
            e_y[y] = T::one();
            let l = self.act_left(u, &e_y);
            let r = self.act_right(&e_y, u);
            let worst = max_abs_diff(&l, &e_y).max(max_abs_diff(&r, &e_y));
            if worst > tol {
                return Err(FindimError::Axiom(format!(
                    "unit fails to act as identity on module coordinate {y} by {worst:e}"
                )));
            }
        }
        Ok(())
    }

    /// The algebra as a bimodule over itself.
    pub fn over_self(algebra: &AlgebraSpec<T>) -> Result<Self, FindimError> {
        let d = algebra.dim();
        let mut left = vec![T::zero(); d * d * d];
        let mut right = vec![T::zero(); d * d * d];
        for i in 0..d {
            for y in 0..d {
                for x in 0..d {
                    left[(i * d + y) * d + x] = algebra.c(i, x, y);
                    right[(i * d + y) * d + x] = algebra.c(x, i, y);
                }
            }
        }
        let module = Self::new(d, left, right, algebra.norm().clone(), algebra)?;
        if algebra.unit().is_some() {
            module.check_unital(algebra)?;
        }
        Ok(module)
    }

    /// Reinterprets the module over the unitization of its algebra: the
    /// adjoined unit acts as the identity on both sides.
    pub fn unitize(&self, unitized_algebra: &AlgebraSpec<T>) -> Result<Self, FindimError> {
        let d = self.alg_dim;
        let xd = self.dim;
        if unitized_algebra.dim() != d + 1 {
            return Err(FindimError::Invalid("unitized algebra dimension mismatch".into()));
        }
        let mut left = vec![T::zero(); (d + 1) * xd * xd];
        let mut right = vec![T::zero(); (d + 1) * xd * xd];
        left[..d * xd * xd].copy_from_slice(&self.left);
        right[..d * xd * xd].copy_from_slice(&self.right);
        for y in 0..xd {
            left[(d * xd + y) * xd + y] = T::one();
            right[(d * xd + y) * xd + y] = T::one();
        }
        let module = Self::new(xd, left, right, self.norm.clone(), unitized_algebra)?;
        module.check_unital(unitized_algebra)?;
        Ok(module)
    }
}

pub fn max_abs_diff<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b.iter()).fold(T::zero(), |acc, (&x, &y)| acc.max((x - y).abs()))
}

fn mat_max_diff<T: Real>(a: &Mat<T>, b: &Mat<T>) -> T {
    let mut worst = T::zero();
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            worst = worst.max((a.at(r, c) - b.at(r, c)).abs());
        }
    }
    worst
}

/// Parses the plain-text algebra format:
///
/// ```text
/// # comment
/// dim 4
/// norm matrix_p 2
/// unit 1 0 0 1
/// 0 0 0 1.0
/// ```
///
/// Quadruple lines set structure constants c[i,j,k] = value; omitted entries
/// are zero and duplicates are rejected.
pub fn parse_algebra<T: Real>(text: &str) -> Result<AlgebraSpec<T>, FindimError> {
    let mut dim: Option<usize> = None;
    let mut norm: Option<NormKind<T>> = None;
    let mut unit: Option<Vec<T>> = None;
    let mut quads: Vec<(usize, usize, usize, T)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let err = |msg: String| FindimError::Parse(format!("line {}: {msg}", lineno + 1));
        match toks[0] {
            "dim" => {
                if toks.len() != 2 {
                    return Err(err("dim takes one value".into()));
                }
                dim = Some(
                    toks[1].parse::<usize>().map_err(|_| err("bad dim value".into()))?,
                );
            }
            "norm" => {
                let d = dim.ok_or_else(|| err("norm must come after dim".into()))?;
                norm = Some(parse_norm_tokens(&toks[1..], d).map_err(err)?);
            }
            "unit" => {
                let d = dim.ok_or_else(|| err("unit must come after dim".into()))?;
                if toks.len() != d + 1 {
                    return Err(err(format!("unit needs {d} values")));
                }
                let mut u = Vec::with_capacity(d);
                for t in &toks[1..] {
                    u.push(parse_scalar::<T>(t).map_err(err)?);
                }
                unit = Some(u);
            }
            _ => {
                if toks.len() != 4 {
                    return Err(err("expected `i j k value`".into()));
                }
                let i = toks[0].parse::<usize>().map_err(|_| err("bad index".into()))?;
                let j = toks[1].parse::<usize>().map_err(|_| err("bad index".into()))?;
                let k = toks[2].parse::<usize>().map_err(|_| err("bad index".into()))?;
                let v = parse_scalar::<T>(toks[3]).map_err(err)?;
                quads.push((i, j, k, v));
            }
        }
    }
    let d = dim.ok_or_else(|| FindimError::Parse("missing dim line".into()))?;
    let norm = norm.ok_or_else(|| FindimError::Parse("missing norm line".into()))?;
    let mut structure = vec![T::zero(); d * d * d];
    let mut seen = std::collections::BTreeSet::new();
    for (i, j, k, v) in quads {
        if i >= d || j >= d || k >= d {
            return Err(FindimError::Parse(format!("index ({i},{j},{k}) out of range for dim {d}")));
        }
        if !seen.insert((i, j, k)) {
            return Err(FindimError::Parse(format!("duplicate entry for ({i},{j},{k})")));
        }
        structure[(i * d + j) * d + k] = v;
    }
    AlgebraSpec::new(d, structure, norm, unit)
}

fn parse_norm_tokens<T: Real>(toks: &[&str], dim: usize) -> Result<NormKind<T>, String> {
    match toks.first().copied() {
        Some("sup") if toks.len() == 1 => Ok(NormKind::Sup),
        Some("group_l1") if toks.len() == 1 => Ok(NormKind::GroupL1),
        Some("l2") if toks.len() == 1 => Ok(NormKind::L2),
        Some("matrix_p") if toks.len() == 2 => {
            let p = match toks[1] {
                "1" => MatP::One,
                "2" => MatP::Two,
                "inf" => MatP::Inf,
                other => return Err(format!("bad matrix_p parameter {other}")),
            };
            let m = (dim as f64).sqrt().round() as usize;
            if m * m != dim {
                return Err(format!("matrix_p needs square dim, got {dim}"));
            }
            Ok(NormKind::MatrixOp { p, m })
        }
        Some("grid_custom") => {
            if toks.len() != dim + 1 {
                return Err(format!("grid_custom needs {dim} weights"));
            }
            let mut w = Vec::with_capacity(dim);
            for t in &toks[1..] {
                w.push(parse_scalar::<T>(t)?);
            }
            Ok(NormKind::WeightedSup(w))
        }
        Some(other) => Err(format!("unknown norm kind {other}")),
        None => Err("empty norm line".into()),
    }
}

fn parse_scalar<T: Real>(tok: &str) -> Result<T, String> {
    let v: f64 = tok.parse().map_err(|_| format!("bad number {tok}"))?;
    Ok(real::<T>(v))
}

/// Serializes an algebra in the format accepted by [`parse_algebra`].
pub fn serialize_algebra<T: Real>(a: &AlgebraSpec<T>) -> String {
    use std::fmt::Write;
    let d = a.dim();
    let mut out = String::new();
    let _ = writeln!(out, "dim {d}");
    let norm_line = match a.norm() {
        NormKind::Sup => "norm sup".to_string(),
        NormKind::GroupL1 => "norm group_l1".to_string(),
        NormKind::L2 => "norm l2".to_string(),
        NormKind::MatrixOp { p, .. } => {
            let ps = match p {
                MatP::One => "1",
                MatP::Two => "2",
                MatP::Inf => "inf",
            };
            format!("norm matrix_p {ps}")
        }
        NormKind::WeightedSup(w) => {
            let ws: Vec<String> = w.iter().map(|x| crate::report::fmt_float(*x)).collect();
            format!("norm grid_custom {}", ws.join(" "))
        }
        NormKind::Unitized(_) => "norm sup".to_string(),
    };
    let _ = writeln!(out, "{norm_line}");
    if let Some(u) = a.unit() {
        let us: Vec<String> = u.iter().map(|x| crate::report::fmt_float(*x)).collect();
        let _ = writeln!(out, "unit {}", us.join(" "));
    }
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let v = a.c(i, j, k);
                if v != T::zero() {
                    let _ = writeln!(out, "{i} {j} {k} {}", crate::report::fmt_float(v));
                }
            }
        }
    }
    out
}
