//! Operator norms of multilinear maps, distances to cocycle spaces, and the
//! hyperreflexivity-style ratio experiments built from them.
//!
//! Estimates are one-sided by construction:
//!
//! * `op_norm` with the exact method enumerates unit-ball vertices (or uses
//!   the singular value decomposition for Hilbert–Hilbert linear maps);
//!   the ascent method reports a certified lower bound.
//! * `dist_upper` minimizes a valid upper surrogate of the operator norm
//!   over the subspace, so its value dominates the true distance.
//! * `dist_r_lower` evaluates on unit tuples and divides least-squares
//!   residual pairings by a dual-norm upper bound, so its value is
//!   dominated by the true distance.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::algebra::{AlgebraSpec, BimoduleSpec};
use super::cocycle::{cocycle_space, delta_n, project_away_unit};
use super::linalg::{dot, least_squares, norm2, spectral_norm, Mat};
use super::multilinear::{advance, MultilinearMap, SubspaceBasis};
use super::norms::NormKind;
use super::zeroprod::{orbit_basis, zero_product_chains};
use super::FindimError;
use crate::constants;
use crate::report::Status;
use crate::scalar::{real, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormMethod {
    /// Exact when an exact path exists, otherwise ascent.
    Auto,
    /// Fail unless an exact path exists.
    Exact,
    /// Certified lower bound by projected coordinate ascent.
    Ascent,
}

#[derive(Clone, Copy, Debug)]
pub struct OpNorm<T> {
    pub value: T,
    pub exact: bool,
}

/// Largest number of vertex tuples enumerated by the exact path.
const VERTEX_TUPLE_LIMIT: usize = 1 << 18;
const ASCENT_RESTARTS: usize = 32;
const ASCENT_SEED: u64 = 0x09_0e_5eed;

/// Operator norm with domain norm applied to every input slot and the given
/// codomain norm.
pub fn op_norm_kinds<T: Real>(
    t: &MultilinearMap<T>,
    in_norm: &NormKind<T>,
    out_norm: &NormKind<T>,
    method: NormMethod,
) -> Result<OpNorm<T>, FindimError> {
    match method {
        NormMethod::Exact => {
            exact_norm(t, in_norm, out_norm)?.map(|v| OpNorm { value: v, exact: true }).ok_or_else(
                || FindimError::Unsupported("no exact operator-norm path for these norms".into()),
            )
        }
        NormMethod::Auto => {
            if let Some(v) = exact_norm(t, in_norm, out_norm)? {
                Ok(OpNorm { value: v, exact: true })
            } else {
                Ok(OpNorm { value: ascent_norm(t, in_norm, out_norm), exact: false })
            }
        }
        NormMethod::Ascent => Ok(OpNorm { value: ascent_norm(t, in_norm, out_norm), exact: false }),
    }
}

pub fn op_norm<T: Real>(
    t: &MultilinearMap<T>,
    a: &AlgebraSpec<T>,
    x: &BimoduleSpec<T>,
    method: NormMethod,
) -> Result<OpNorm<T>, FindimError> {
    if t.in_dim() != a.dim() || t.out_dim() != x.dim() {
        return Err(FindimError::Invalid("operator shape does not match algebra/module".into()));
    }
    op_norm_kinds(t, a.norm(), x.norm(), method)
}

/// Crude but always-valid upper bound: sum over basis tuples of the image
/// norm times the product of per-slot coordinate caps.
pub fn op_norm_upper_kinds<T: Real>(
    t: &MultilinearMap<T>,
    in_norm: &NormKind<T>,
    out_norm: &NormKind<T>,
) -> T {
    let d = t.in_dim();
    let n = t.degree();
    let mut idx = vec![0usize; n];
    let mut total = T::zero();
    loop {
        let img = t.basis_image(&idx);
        let mut cap = T::one();
        for &i in idx.iter() {
            cap = cap * in_norm.coord_cap(i);
        }
        total += out_norm.eval(img) * cap;
        if !advance(&mut idx, d) {
            break;
        }
    }
    // Hilbert-to-Hilbert linear maps have the exact value available; take
    // the smaller of the two bounds.
    if n == 1 {
        if let (NormKind::L2, NormKind::L2) = (in_norm, out_norm) {
            let m = Mat::from_fn(t.out_dim(), d, |y, i| t.entry(y, &[i]));
            total = total.min(spectral_norm(&m));
        }
    }
    total
}

pub fn op_norm_upper<T: Real>(
    t: &MultilinearMap<T>,
    a: &AlgebraSpec<T>,
    x: &BimoduleSpec<T>,
) -> T {
    op_norm_upper_kinds(t, a.norm(), x.norm())
}

fn exact_norm<T: Real>(
    t: &MultilinearMap<T>,
    in_norm: &NormKind<T>,
    out_norm: &NormKind<T>,
) -> Result<Option<T>, FindimError> {
    let d = t.in_dim();
    let n = t.degree();
    // Hilbert to Hilbert linear: largest singular value.
    if n == 1 {
        if let (NormKind::L2, NormKind::L2) = (in_norm, out_norm) {
            let m = Mat::from_fn(t.out_dim(), d, |y, i| t.entry(y, &[i]));
            return Ok(Some(spectral_norm(&m)));
        }
    }
    // Polytope domain: enumerate vertex tuples. The image norm is convex,
    // so the maximum over the product of balls is attained at vertices.
    let Some(vertices) = in_norm.ball_vertices(d) else {
        return Ok(None);
    };
    let count = vertices.len();
    let mut tuples = 1usize;
    for _ in 0..n {
        tuples = match tuples.checked_mul(count) {
            Some(v) if v <= VERTEX_TUPLE_LIMIT => v,
            _ => return Ok(None),
        };
    }
    let mut idx = vec![0usize; n];
    let mut best = T::zero();
    let mut args: Vec<&[T]> = Vec::with_capacity(n);
    loop {
        args.clear();
        for &vi in idx.iter() {
            args.push(&vertices[vi]);
        }
        let img = t.apply(&args);
        best = best.max(out_norm.eval(&img));
        if !advance(&mut idx, count) {
            break;
        }
    }
    Ok(Some(best))
}

/// Certified lower bound by coordinate ascent over unit tuples, from
/// structured and random starts. Deterministic: fixed restart count and a
/// fixed internal seed.
fn ascent_norm<T: Real>(
    t: &MultilinearMap<T>,
    in_norm: &NormKind<T>,
    out_norm: &NormKind<T>,
) -> T {
    let d = t.in_dim();
    let n = t.degree();
    let mut rng = ChaCha8Rng::seed_from_u64(ASCENT_SEED);
    let mut best = T::zero();
    let value = |args: &[Vec<T>]| -> T {
        let refs: Vec<&[T]> = args.iter().map(|a| a.as_slice()).collect();
        out_norm.eval(&t.apply(&refs))
    };
    let mut starts: Vec<Vec<Vec<T>>> = Vec::new();
    // Structured: cycled basis tuples (normalized).
    for shift in 0..d.min(4) {
        let mut tuple = Vec::with_capacity(n);
        let mut ok = true;
        for s in 0..n {
            let mut e = vec![T::zero(); d];
            e[(s + shift) % d] = T::one();
            if !in_norm.normalize(&mut e) {
                ok = false;
            }
            tuple.push(e);
        }
        if ok {
            starts.push(tuple);
        }
    }
    for _ in 0..ASCENT_RESTARTS {
        starts.push((0..n).map(|_| in_norm.random_unit(d, &mut rng)).collect());
    }
    for mut args in starts {
        let mut cur = value(&args);
        best = best.max(cur);
        for level in [0.5, 0.1, 0.02, 0.004] {
            let h = real::<T>(level);
            for _sweep in 0..4 {
                let mut improved = false;
                for slot in 0..n {
                    for coord in 0..d {
                        for delta in [h, -h] {
                            let mut cand = args[slot].clone();
                            cand[coord] += delta;
                            if !in_norm.normalize(&mut cand) {
                                continue;
                            }
                            let saved = std::mem::replace(&mut args[slot], cand);
                            let v = value(&args);
                            if v > cur {
                                cur = v;
                                improved = true;
                            } else {
                                args[slot] = saved;
                            }
                        }
                    }
                }
                if !improved {
                    break;
                }
            }
        }
        best = best.max(cur);
    }
    best
}

/// Upper surrogate used inside `dist_upper`: exact where enumeration is
/// cheap, otherwise the crude cap-sum bound. The branch depends only on
/// shapes, so the same surrogate is minimized throughout.
fn upper_surrogate<T: Real>(
    map: &MultilinearMap<T>,
    in_norm: &NormKind<T>,
    out_norm: &NormKind<T>,
) -> T {
    if let Ok(Some(v)) = exact_norm(map, in_norm, out_norm) {
        return v;
    }
    op_norm_upper_kinds(map, in_norm, out_norm)
}

/// Deterministic upper bound on the distance from `t` to the span of the
/// basis: least-squares initialization followed by multiscale coordinate
/// descent on a valid upper surrogate of the operator norm.
pub fn dist_upper<T: Real>(
    t: &MultilinearMap<T>,
    basis: &SubspaceBasis<T>,
    a: &AlgebraSpec<T>,
    x: &BimoduleSpec<T>,
) -> Result<T, FindimError> {
    if t.in_dim() != a.dim() || t.out_dim() != x.dim() {
        return Err(FindimError::Invalid("operator shape does not match algebra/module".into()));
    }
    dist_upper_kinds(t, basis, a.norm(), x.norm())
}

/// `dist_upper` against explicit domain/codomain norms, for operators that
/// live on a normed space without an ambient algebra/bimodule pair.
pub fn dist_upper_kinds<T: Real>(
    t: &MultilinearMap<T>,
    basis: &SubspaceBasis<T>,
    in_norm: &NormKind<T>,
    out_norm: &NormKind<T>,
) -> Result<T, FindimError> {
    if let Some(first) = basis.maps().first() {
        if first.shape() != t.shape() {
            return Err(FindimError::Invalid("basis shape does not match operator".into()));
        }
    }
    if basis.is_empty() {
        return Ok(upper_surrogate(t, in_norm, out_norm));
    }
    let k = basis.len();
    // Initial coefficients: Frobenius least squares via the Gram system.
    let gram = Mat::from_fn(k, k, |i, j| basis.get(i).frob_dot(basis.get(j)));
    let rhs: Vec<T> = (0..k).map(|i| basis.get(i).frob_dot(t)).collect();
    let ls = least_squares(&gram, &rhs, real::<T>(1e-12));
    let residual_of = |coeffs: &[T]| -> MultilinearMap<T> {
        let mut r = t.clone();
        for (i, &c) in coeffs.iter().enumerate() {
            if c != T::zero() {
                r.axpy(-c, basis.get(i));
            }
        }
        r
    };
    let eval = |coeffs: &[T]| upper_surrogate(&residual_of(coeffs), in_norm, out_norm);
    let mut best_coeffs = vec![T::zero(); k];
    let mut best = eval(&best_coeffs);
    let ls_val = eval(&ls);
    if ls_val < best {
        best = ls_val;
        best_coeffs = ls;
    }
    let radius = best.max(real::<T>(1e-6));
    for scale in [1.0, 0.3, 0.1, 0.03, 0.01] {
        let h = radius * real::<T>(scale);
        for _sweep in 0..8 {
            let mut improved = false;
            for i in 0..k {
                for delta in [h, -h] {
                    let mut cand = best_coeffs.clone();
                    cand[i] += delta;
                    let v = eval(&cand);
                    if v < best {
                        best = v;
                        best_coeffs = cand;
                        improved = true;
                    }
                }
            }
            if !improved {
                break;
            }
        }
    }
    Ok(best)
}

/// Structured evaluation tuples for lower bounds: basis tuples, sign
/// vectors, spectral-orbit vectors for cyclic convolution domains, matrix
/// units and random rank-ones for matrix domains, plus seeded random units.
fn tuple_pool<T: Real>(
    in_norm: &NormKind<T>,
    d: usize,
    n: usize,
    budget: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<Vec<T>>> {
    let mut slot_candidates: Vec<Vec<T>> = Vec::new();
    for i in 0..d {
        let mut e = vec![T::zero(); d];
        e[i] = T::one();
        if in_norm.normalize(&mut e) {
            slot_candidates.push(e);
        }
    }
    // Constant and difference vectors reach strata that generic vectors
    // miss (subspaces acting transitively on generic orbits leave zero
    // residuals there).
    let mut ones = vec![T::one(); d];
    if in_norm.normalize(&mut ones) {
        slot_candidates.push(ones);
    }
    for i in 0..d.saturating_sub(1).min(8) {
        let mut diff = vec![T::zero(); d];
        diff[i] = T::one();
        diff[i + 1] = -T::one();
        if in_norm.normalize(&mut diff) {
            slot_candidates.push(diff);
        }
    }
    match in_norm {
        NormKind::Sup | NormKind::WeightedSup(_) => {
            // A few deterministic sign patterns.
            for mask in [0usize, usize::MAX / 3, usize::MAX / 5, usize::MAX / 7] {
                let mut v: Vec<T> = (0..d)
                    .map(|i| if mask >> (i % 60) & 1 == 1 { T::one() } else { -T::one() })
                    .collect();
                if in_norm.normalize(&mut v) {
                    slot_candidates.push(v);
                }
            }
        }
        NormKind::GroupL1 | NormKind::L2 => {
            // Cyclic frequency vectors: exact annihilation strata for
            // convolution domains, useful unit probes elsewhere.
            for orbit in orbit_basis::<T>(d) {
                for mut v in orbit {
                    if in_norm.normalize(&mut v) {
                        slot_candidates.push(v);
                    }
                }
            }
        }
        NormKind::MatrixOp { m, .. } => {
            // Random rank-one matrices have unit spectral norm after
            // normalizing the factors.
            for _ in 0..4 {
                let u: Vec<T> = (0..*m).map(|_| super::norms::gaussian(rng)).collect();
                let w: Vec<T> = (0..*m).map(|_| super::norms::gaussian(rng)).collect();
                let mut v = vec![T::zero(); d];
                for r in 0..*m {
                    for c in 0..*m {
                        v[r * m + c] = u[r] * w[c];
                    }
                }
                if in_norm.normalize(&mut v) {
                    slot_candidates.push(v);
                }
            }
        }
        _ => {}
    }
    let mut pool: Vec<Vec<Vec<T>>> = Vec::new();
    // Full cartesian power when small; otherwise aligned/cycled tuples.
    let total = slot_candidates.len().checked_pow(n as u32).unwrap_or(usize::MAX);
    if total <= 512 {
        let mut idx = vec![0usize; n];
        loop {
            pool.push(idx.iter().map(|&i| slot_candidates[i].clone()).collect());
            if !advance(&mut idx, slot_candidates.len()) {
                break;
            }
        }
    } else {
        for (shift, _) in slot_candidates.iter().enumerate() {
            pool.push(
                (0..n)
                    .map(|s| slot_candidates[(shift + s) % slot_candidates.len()].clone())
                    .collect(),
            );
        }
    }
    for _ in 0..budget {
        pool.push((0..n).map(|_| in_norm.random_unit(d, rng)).collect());
    }
    pool
}

/// Certified lower bound on the distance from `t` to the span of the basis:
/// max over unit tuples of ⟨residual, value⟩ / ‖residual‖_dual, where the
/// residual is orthogonal to the basis values on that tuple.
pub fn dist_r_lower<T: Real>(
    t: &MultilinearMap<T>,
    basis: &SubspaceBasis<T>,
    a: &AlgebraSpec<T>,
    x: &BimoduleSpec<T>,
    budget: usize,
    seed: u64,
) -> Result<T, FindimError> {
    if t.in_dim() != a.dim() || t.out_dim() != x.dim() {
        return Err(FindimError::Invalid("operator shape does not match algebra/module".into()));
    }
    dist_r_lower_kinds(t, basis, a.norm(), x.norm(), budget, seed)
}

/// `dist_r_lower` against explicit domain/codomain norms.
pub fn dist_r_lower_kinds<T: Real>(
    t: &MultilinearMap<T>,
    basis: &SubspaceBasis<T>,
    in_norm: &NormKind<T>,
    out_norm: &NormKind<T>,
    budget: usize,
    seed: u64,
) -> Result<T, FindimError> {
    if let Some(first) = basis.maps().first() {
        if first.shape() != t.shape() {
            return Err(FindimError::Invalid("basis shape does not match operator".into()));
        }
    }
    let d = t.in_dim();
    let n = t.degree();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = tuple_pool(in_norm, d, n, budget, &mut rng);
    let mut best = T::zero();
    for tuple in &pool {
        let refs: Vec<&[T]> = tuple.iter().map(|v| v.as_slice()).collect();
        let v = t.apply(&refs);
        let residual: Vec<T> = if basis.is_empty() {
            v.clone()
        } else {
            let e = Mat::from_cols(
                &basis.maps().iter().map(|s| s.apply(&refs)).collect::<Vec<_>>(),
            );
            let coeffs = least_squares(&e, &v, real::<T>(1e-12));
            let ev = e.matvec(&coeffs);
            v.iter().zip(ev.iter()).map(|(&a, &b)| a - b).collect()
        };
        if basis.is_empty() {
            // Distance to the zero subspace on this tuple is the norm itself.
            best = best.max(out_norm.eval(&v));
            continue;
        }
        // Residuals at rounding-noise scale are projection error, not
        // signal; dividing two noise values would fabricate a bound.
        let rnorm = norm2(&residual);
        if rnorm <= real::<T>(1e-7) * norm2(&v).max(T::one()) {
            continue;
        }
        let num = dot(&residual, &v);
        let den = out_norm.dual_norm_upper(&residual);
        if den > T::zero() {
            best = best.max(num / den);
        }
    }
    Ok(best)
}

#[derive(Clone, Debug)]
pub struct HyperrefSample<T> {
    pub dist_upper: T,
    pub dist_lower: T,
    pub ratio: Option<T>,
    pub status: Status,
}

#[derive(Clone, Debug)]
pub struct HyperrefReport<T> {
    pub degree: usize,
    pub bound: T,
    pub cocycle_dim: usize,
    pub samples: Vec<HyperrefSample<T>>,
    pub max_conclusive_ratio: T,
    pub conclusive: usize,
    pub inconclusive: usize,
    pub skipped: usize,
}

/// Draws random cochains and compares their distance-to-cocycles bracket
/// against the closed-form hyperreflexivity bound. One-sided by design: a
/// ratio above the bound is reported as inconclusive, never as a violation,
/// because the lower estimate in the denominator may simply be loose.
pub fn hyperref_ratio<T: Real>(
    a: &AlgebraSpec<T>,
    x: &BimoduleSpec<T>,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<HyperrefReport<T>, FindimError> {
    let space = cocycle_space(a, x, n)?;
    let unit_bound = a.local_unit_bound();
    let m_const = if unit_bound.certified { unit_bound.bound } else { T::one() };
    let r_const = real::<T>(constants::cstar_group_constant::<f64>().value);
    let bound = constants::hyperref_bound(n as u32, m_const, r_const, T::one()).value;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = HyperrefReport {
        degree: n,
        bound,
        cocycle_dim: space.len(),
        samples: Vec::with_capacity(samples),
        max_conclusive_ratio: T::zero(),
        conclusive: 0,
        inconclusive: 0,
        skipped: 0,
    };
    for i in 0..samples {
        let t = MultilinearMap::random(n, a.dim(), x.dim(), &mut rng)?;
        let du = dist_upper(&t, &space, a, x)?;
        let dl = dist_r_lower(&t, &space, a, x, 64, seed ^ (i as u64).wrapping_mul(0x9e3779b97f4a7c15))?;
        let (ratio, status) = if dl < real::<T>(1e-9) {
            if du <= real::<T>(1e-6) {
                report.skipped += 1;
                (None, Status::Skipped)
            } else {
                report.inconclusive += 1;
                (None, Status::Inconclusive)
            }
        } else {
            let r = du / dl;
            if r <= bound * (T::one() + real::<T>(1e-9)) {
                report.conclusive += 1;
                report.max_conclusive_ratio = report.max_conclusive_ratio.max(r);
                (Some(r), Status::Pass)
            } else {
                report.inconclusive += 1;
                (Some(r), Status::Inconclusive)
            }
        };
        report.samples.push(HyperrefSample { dist_upper: du, dist_lower: dl, ratio, status });
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct CocycleBoundReport<T> {
    pub gamma_hat: T,
    pub delta_lower: T,
    pub bound: T,
    pub consistent: bool,
}

/// Checks the chain inequality ‖δT‖ ≤ 2^(n−1)·r^(n+1)·γ for the
/// unit-projected cochain, where γ is estimated from below over
/// zero-product chains. A lower γ estimate can only shrink the right side,
/// so `consistent = true` is trustworthy while `false` means inconclusive.
pub fn cocycle_bound_check<T: Real>(
    t: &MultilinearMap<T>,
    a: &AlgebraSpec<T>,
    x: &BimoduleSpec<T>,
    r: T,
    budget: usize,
    seed: u64,
) -> Result<CocycleBoundReport<T>, FindimError> {
    let n = t.degree();
    let projected = project_away_unit(t, a)?;
    let chains = zero_product_chains(a, n + 2, budget.max(8), seed)?;
    let mut gamma = T::zero();
    for chain in &chains {
        let mid_args: Vec<&[T]> = chain[1..=n].iter().map(|v| v.as_slice()).collect();
        let mid = projected.apply(&mid_args);
        let right = x.act_right(&mid, &chain[n + 1]);
        let val = x.norm().eval(&x.act_left(&chain[0], &right));
        gamma = gamma.max(val);
    }
    let ddt = delta_n(&projected, a, x)?;
    let delta_lower = op_norm(&ddt, a, x, NormMethod::Auto)?.value;
    let bound = constants::cocycle_norm_bound(n as u32, r, gamma).value;
    Ok(CocycleBoundReport {
        gamma_hat: gamma,
        delta_lower,
        bound,
        consistent: delta_lower <= bound * (T::one() + real::<T>(1e-9)) + real::<T>(1e-12),
    })
}

/// Chain-inequality checks over a batch of random cochains.
#[derive(Clone, Debug)]
pub struct CocycleBoundSuite<T> {
    pub reports: Vec<CocycleBoundReport<T>>,
    /// Number of reports whose inequality held.
    pub consistent: usize,
}

/// Runs [`cocycle_bound_check`] on `samples` random cochains of the given
/// degree, with per-sample seeds derived from `seed`.
pub fn cocycle_bound_suite<T: Real>(
    a: &AlgebraSpec<T>,
    x: &BimoduleSpec<T>,
    degree: usize,
    samples: usize,
    r: T,
    budget: usize,
    seed: u64,
) -> Result<CocycleBoundSuite<T>, FindimError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reports = Vec::with_capacity(samples);
    let mut consistent = 0;
    for i in 0..samples {
        let t = MultilinearMap::random(degree, a.dim(), x.dim(), &mut rng)?;
        let sub_seed = seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
        let report = cocycle_bound_check(&t, a, x, r, budget, sub_seed)?;
        if report.consistent {
            consistent += 1;
        }
        reports.push(report);
    }
    Ok(CocycleBoundSuite { reports, consistent })
}
