//! Hochschild cochain calculus: coboundary operators, module star actions,
//! the suspension reshape into operator-valued cochains, cocycle spaces, and
//! unitization of cochains.

use super::algebra::{AlgebraSpec, BimoduleSpec};
use super::linalg::{kernel_basis, Mat};
use super::multilinear::{advance, MultilinearMap, SubspaceBasis};
use super::norms::NormKind;
use super::{FindimError, COCHAIN_SIZE_LIMIT, RANK_TOLERANCE};
use crate::scalar::{real, Real};

fn sign_of<T: Real>(j: usize) -> T {
    if j % 2 == 1 {
        -T::one()
    } else {
        T::one()
    }
}

fn check_shapes<T: Real>(
    t: &MultilinearMap<T>,
    a: &AlgebraSpec<T>,
    x: &BimoduleSpec<T>,
) -> Result<(), FindimError> {
    if t.in_dim() != a.dim() {
        return Err(FindimError::Invalid(format!(
            "cochain input dim {} does not match algebra dim {}",
            t.in_dim(),
            a.dim()
        )));
    }
    if t.out_dim() != x.dim() {
        return Err(FindimError::Invalid(format!(
            "cochain output dim {} does not match module dim {}",
            t.out_dim(),
            x.dim()
        )));
    }
    Ok(())
}

/// Coboundary of a module element viewed as a 0-cochain:
/// (δ⁰v)(a) = a·v − v·a.
pub fn delta0<T: Real>(v: &[T], x: &BimoduleSpec<T>, a: &AlgebraSpec<T>) -> MultilinearMap<T> {
    let d = a.dim();
    let xd = x.dim();
    assert_eq!(v.len(), xd);
    let mut out = MultilinearMap::zero(1, d, xd).expect("degree-1 tensor fits");
    for i in 0..d {
        let mut e_i = vec![T::zero(); d];
        e_i[i] = T::one();
        let lv = x.act_left(&e_i, v);
        let rv = x.act_right(v, &e_i);
        for y in 0..xd {
            out.set_entry(y, &[i], lv[y] - rv[y]);
        }
    }
    out
}

/// Hochschild coboundary: for T of degree n,
///
/// (δT)(a₁,…,aₙ₊₁) = a₁·T(a₂,…,aₙ₊₁)
///                  + Σ_{j=1..n} (−1)^j T(a₁,…,aⱼaⱼ₊₁,…,aₙ₊₁)
///                  + (−1)^{n+1} T(a₁,…,aₙ)·aₙ₊₁.
pub fn delta_n<T: Real>(
    t: &MultilinearMap<T>,
    a: &AlgebraSpec<T>,
    x: &BimoduleSpec<T>,
) -> Result<MultilinearMap<T>, FindimError> {
    check_shapes(t, a, x)?;
    let n = t.degree();
    let d = a.dim();
    let xd = x.dim();
    let mut out = MultilinearMap::zero(n + 1, d, xd)?;
    let mut idx = vec![0usize; n + 1];
    let mut acc = vec![T::zero(); xd];
    let mut sub = vec![0usize; n];
    loop {
        for v in acc.iter_mut() {
            *v = T::zero();
        }
        // Left action on T(a₂,…,aₙ₊₁).
        let img = t.basis_image(&idx[1..]);
        let i1 = idx[0];
        for y in 0..xd {
            let mut s = T::zero();
            for (xx, &w) in img.iter().enumerate() {
                if w != T::zero() {
                    s += x.la(i1, y, xx) * w;
                }
            }
            acc[y] += s;
        }
        // Interior multiplications.
        for j in 1..=n {
            let sgn = sign_of::<T>(j);
            let row = a.basis_product(idx[j - 1], idx[j]);
            sub[..j - 1].copy_from_slice(&idx[..j - 1]);
            sub[j..].copy_from_slice(&idx[j + 1..]);
            for (m, &w) in row.iter().enumerate() {
                if w == T::zero() {
                    continue;
                }
                sub[j - 1] = m;
                let img = t.basis_image(&sub);
                for y in 0..xd {
                    acc[y] += sgn * w * img[y];
                }
            }
        }
        // Right action on T(a₁,…,aₙ).
        let sgn = sign_of::<T>(n + 1);
        let img = t.basis_image(&idx[..n]);
        let last = idx[n];
        for y in 0..xd {
            let mut s = T::zero();
            for (xx, &w) in img.iter().enumerate() {
                if w != T::zero() {
                    s += x.ra(last, y, xx) * w;
                }
            }
            acc[y] += sgn * s;
        }
        for (y, &v) in acc.iter().enumerate() {
            out.set_entry(y, &idx, v);
        }
        if !advance(&mut idx, d) {
            break;
        }
    }
    Ok(out)
}

/// Left star action (a⋆T)(a₁,…,aₙ) = a·T(a₁,…,aₙ).
pub fn star_left<T: Real>(
    a_vec: &[T],
    t: &MultilinearMap<T>,
    x: &BimoduleSpec<T>,
) -> MultilinearMap<T> {
    let xd = x.dim();
    let mut new_tensor = Vec::with_capacity(t.tensor().len());
    for block in t.tensor().chunks(xd) {
        new_tensor.extend(x.act_left(a_vec, block));
    }
    MultilinearMap::new(t.degree(), t.in_dim(), xd, new_tensor).expect("same shape")
}

/// Right star action:
///
/// (T⋆a)(a₁,…,aₙ) = T(a·a₁, a₂,…,aₙ)
///                 + Σ_{j=1..n−1} (−1)^j T(a, a₁,…,aⱼaⱼ₊₁,…,aₙ)
///                 + (−1)^n T(a, a₁,…,aₙ₋₁)·aₙ.
pub fn star_right<T: Real>(
    t: &MultilinearMap<T>,
    a_vec: &[T],
    a: &AlgebraSpec<T>,
    x: &BimoduleSpec<T>,
) -> MultilinearMap<T> {
    let n = t.degree();
    let d = a.dim();
    let xd = x.dim();
    let mut out = MultilinearMap::zero(n, d, xd).expect("same shape");
    let mut idx = vec![0usize; n];
    let mut acc = vec![T::zero(); xd];
    let mut sub = vec![0usize; n];
    loop {
        for v in acc.iter_mut() {
            *v = T::zero();
        }
        // T(a·a₁, rest): a·e_{i1} = Σ_m (Σ_p a_p c[p, i1, m]) e_m.
        let i1 = idx[0];
        for m in 0..d {
            let mut w = T::zero();
            for (p, &ap) in a_vec.iter().enumerate() {
                if ap != T::zero() {
                    w += ap * a.c(p, i1, m);
                }
            }
            if w == T::zero() {
                continue;
            }
            sub.copy_from_slice(&idx);
            sub[0] = m;
            let img = t.basis_image(&sub);
            for y in 0..xd {
                acc[y] += w * img[y];
            }
        }
        // Interior terms: first slot holds a, one interior product collapses.
        for j in 1..n {
            let sgn = sign_of::<T>(j);
            let row = a.basis_product(idx[j - 1], idx[j]);
            for (m, &cw) in row.iter().enumerate() {
                if cw == T::zero() {
                    continue;
                }
                for (p, &ap) in a_vec.iter().enumerate() {
                    if ap == T::zero() {
                        continue;
                    }
                    // tuple (a_p, i₁,…,i_{j−1}, m, i_{j+2},…)
                    sub[0] = p;
                    sub[1..j].copy_from_slice(&idx[..j - 1]);
                    sub[j] = m;
                    sub[j + 1..].copy_from_slice(&idx[j + 1..]);
                    let img = t.basis_image(&sub);
                    let w = sgn * cw * ap;
                    for y in 0..xd {
                        acc[y] += w * img[y];
                    }
                }
            }
        }
        // Trailing right action: (−1)^n T(a, a₁,…,aₙ₋₁)·aₙ.
        let sgn = sign_of::<T>(n);
        let last = idx[n - 1];
        for (p, &ap) in a_vec.iter().enumerate() {
            if ap == T::zero() {
                continue;
            }
            sub[0] = p;
            sub[1..n].copy_from_slice(&idx[..n - 1]);
            let img = t.basis_image(&sub[..n]);
            for y in 0..xd {
                let mut s = T::zero();
                for (xx, &w) in img.iter().enumerate() {
                    if w != T::zero() {
                        s += x.ra(last, y, xx) * w;
                    }
                }
                acc[y] += sgn * ap * s;
            }
        }
        for (y, &v) in acc.iter().enumerate() {
            out.set_entry(y, &idx, v);
        }
        if !advance(&mut idx, d) {
            break;
        }
    }
    out
}

/// The operator space B(A,X) of linear maps A → X as an A-bimodule under the
/// star actions. Coordinates are μ(x,k) = x + X.dim·k, so the k-th column of
/// the map sits in one contiguous block. The stored norm is a placeholder:
/// suspension identities compare tensors entrywise and never use it.
pub fn star_module<T: Real>(
    a: &AlgebraSpec<T>,
    x: &BimoduleSpec<T>,
) -> Result<BimoduleSpec<T>, FindimError> {
    let d = a.dim();
    let xd = x.dim();
    let md = xd * d;
    let mu = |xx: usize, k: usize| xx + xd * k;
    let mut left = vec![T::zero(); d * md * md];
    let mut right = vec![T::zero(); d * md * md];
    for i in 0..d {
        for k in 0..d {
            for y in 0..xd {
                for xx in 0..xd {
                    // (e_i ⋆ S)(e_k) = e_i·S(e_k)
                    left[(i * md + mu(y, k)) * md + mu(xx, k)] = x.la(i, y, xx);
                }
            }
            // (S ⋆ e_i)(e_k) = S(e_i e_k) − S(e_i)·e_k
            for l in 0..d {
                let c = a.c(i, k, l);
                if c != T::zero() {
                    for y in 0..xd {
                        right[(i * md + mu(y, k)) * md + mu(y, l)] += c;
                    }
                }
            }
            for y in 0..xd {
                for yy in 0..xd {
                    let w = x.ra(k, y, yy);
                    if w != T::zero() {
                        right[(i * md + mu(y, k)) * md + mu(yy, i)] -= w;
                    }
                }
            }
        }
    }
    BimoduleSpec::new(md, left, right, NormKind::L2, a)
}

/// Reshapes a degree-m cochain into a degree-(m−1) cochain valued in the
/// operator module B(A,X), by turning the last argument into the operator
/// slot: Λ(T)(a₁,…,a_{m−1})(a_m) = T(a₁,…,a_m). Requires m ≥ 2; for m = 1
/// the reshape is the identity on the flat tensor (layout μ(x,k) = x + xd·k).
pub fn lambda_reshape<T: Real>(t: &MultilinearMap<T>) -> Result<MultilinearMap<T>, FindimError> {
    let m = t.degree();
    if m < 2 {
        return Err(FindimError::Invalid("reshape needs degree at least 2".into()));
    }
    let d = t.in_dim();
    let xd = t.out_dim();
    let md = xd * d;
    let mut out = MultilinearMap::zero(m - 1, d, md)?;
    let mut idx = vec![0usize; m];
    loop {
        let img = t.basis_image(&idx);
        let k = idx[m - 1];
        for (xx, &v) in img.iter().enumerate() {
            if v != T::zero() {
                out.set_entry(xx + xd * k, &idx[..m - 1], v);
            }
        }
        if !advance(&mut idx, d) {
            break;
        }
    }
    Ok(out)
}

/// Largest entrywise deviation in the intertwining identity
/// Λ(δT) = Δ(ΛT), where Δ is the coboundary over the star module.
pub fn lambda_check<T: Real>(
    t: &MultilinearMap<T>,
    a: &AlgebraSpec<T>,
    x: &BimoduleSpec<T>,
) -> Result<T, FindimError> {
    check_shapes(t, a, x)?;
    let m = t.degree();
    let dt = delta_n(t, a, x)?;
    let lhs = lambda_reshape(&dt)?;
    let sm = star_module(a, x)?;
    let rhs = if m == 1 {
        // Λ₀T is the flat tensor itself; Δ⁰ is the star commutator.
        delta0(t.tensor(), &sm, a)
    } else {
        delta_n(&lambda_reshape(t)?, a, &sm)?
    };
    Ok(lhs.sub(&rhs).max_abs())
}

/// Orthonormal basis of the space of degree-n cocycles (kernel of δ).
pub fn cocycle_space<T: Real>(
    a: &AlgebraSpec<T>,
    x: &BimoduleSpec<T>,
    n: usize,
) -> Result<SubspaceBasis<T>, FindimError> {
    if n == 0 {
        return Err(FindimError::Invalid("cocycle degree must be at least 1".into()));
    }
    let d = a.dim();
    let xd = x.dim();
    let mut cols = xd;
    for _ in 0..n {
        cols = cols
            .checked_mul(d)
            .filter(|&c| c <= COCHAIN_SIZE_LIMIT)
            .ok_or_else(|| FindimError::Guard("cochain space too large".into()))?;
    }
    let rows = cols
        .checked_mul(d)
        .filter(|&r| r.checked_mul(cols).map(|p| p <= 10_000_000).unwrap_or(false))
        .ok_or_else(|| FindimError::Guard("coboundary matrix too large".into()))?;
    let mut dmat = Mat::zeros(rows, cols);
    for col in 0..cols {
        let mut basis_map = MultilinearMap::zero(n, d, xd)?;
        let mut tensor = basis_map.tensor().to_vec();
        tensor[col] = T::one();
        basis_map = MultilinearMap::new(n, d, xd, tensor)?;
        let image = delta_n(&basis_map, a, x)?;
        for (r, &v) in image.tensor().iter().enumerate() {
            if v != T::zero() {
                dmat.set(r, col, v);
            }
        }
    }
    let kernel = kernel_basis(&dmat, real::<T>(RANK_TOLERANCE));
    let maps = kernel
        .into_iter()
        .map(|v| MultilinearMap::new(n, d, xd, v))
        .collect::<Result<Vec<_>, _>>()?;
    SubspaceBasis::new(maps)
}

/// Extends a cochain over the unitization by zero on the adjoined
/// coordinate: the extension composes the original map with the projection
/// that forgets the unit component in every slot.
pub fn sigma_extend<T: Real>(t: &MultilinearMap<T>) -> Result<MultilinearMap<T>, FindimError> {
    let n = t.degree();
    let d = t.in_dim();
    let mut out = MultilinearMap::zero(n, d + 1, t.out_dim())?;
    let mut idx = vec![0usize; n];
    loop {
        let img = t.basis_image(&idx);
        for (xx, &v) in img.iter().enumerate() {
            if v != T::zero() {
                out.set_entry(xx, &idx, v);
            }
        }
        if !advance(&mut idx, d) {
            break;
        }
    }
    Ok(out)
}

/// Replaces slot `slot` by precomposition with the given matrix:
/// T'(…, a, …) = T(…, M·a, …).
pub fn contract_slot<T: Real>(
    t: &MultilinearMap<T>,
    slot: usize,
    mat: &Mat<T>,
) -> MultilinearMap<T> {
    let d = t.in_dim();
    assert!(slot < t.degree());
    assert_eq!(mat.rows(), d);
    assert_eq!(mat.cols(), d);
    let old = t.tensor();
    let block = t.out_dim() * d.pow(slot as u32);
    let super_block = block * d;
    let mut new_tensor = vec![T::zero(); old.len()];
    for sb in (0..old.len()).step_by(super_block) {
        for i in 0..d {
            for j in 0..d {
                let w = mat.at(j, i);
                if w == T::zero() {
                    continue;
                }
                let src = &old[sb + j * block..sb + (j + 1) * block];
                let dst = &mut new_tensor[sb + i * block..sb + (i + 1) * block];
                for (dv, &sv) in dst.iter_mut().zip(src.iter()) {
                    *dv += w * sv;
                }
            }
        }
    }
    MultilinearMap::new(t.degree(), d, t.out_dim(), new_tensor).expect("same shape")
}

/// Precomposes every slot with the orthogonal projection that removes the
/// unit direction, so the result vanishes whenever any argument is a
/// multiple of the unit.
pub fn project_away_unit<T: Real>(
    t: &MultilinearMap<T>,
    a: &AlgebraSpec<T>,
) -> Result<MultilinearMap<T>, FindimError> {
    let u = a
        .unit()
        .ok_or_else(|| FindimError::Unsupported("unit projection needs a unital algebra".into()))?;
    let d = a.dim();
    let uu: T = u.iter().map(|&x| x * x).fold(T::zero(), |s, v| s + v);
    let proj = Mat::from_fn(d, d, |i, j| {
        let kron = if i == j { T::one() } else { T::zero() };
        kron - u[i] * u[j] / uu
    });
    let mut out = t.clone();
    for slot in 0..t.degree() {
        out = contract_slot(&out, slot, &proj);
    }
    Ok(out)
}

/// Aggregate results of random-cochain coboundary checks.
#[derive(Clone, Debug)]
pub struct CochainCheckReport<T> {
    /// Largest entry of δ(δT) over all sampled cochains.
    pub max_coboundary_sq: T,
    /// Largest suspension-intertwining discrepancy over all sampled cochains.
    pub max_lambda_defect: T,
    /// Dimension of the cocycle space at the requested degree.
    pub cocycle_dim: usize,
    pub samples: usize,
}

/// Draws random cochains and measures how far δ∘δ and the suspension
/// intertwining identity are from holding exactly. Both should vanish up to
/// rounding for any bimodule, so the maxima act as a calculus self-test.
pub fn cochain_check<T: Real>(
    a: &AlgebraSpec<T>,
    x: &BimoduleSpec<T>,
    degree: usize,
    samples: usize,
    seed: u64,
) -> Result<CochainCheckReport<T>, FindimError> {
    use rand::SeedableRng;
    let cocycle_dim = cocycle_space(a, x, degree)?.len();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut max_dd = T::zero();
    let mut max_lambda = T::zero();
    for _ in 0..samples {
        let t = MultilinearMap::random(degree, a.dim(), x.dim(), &mut rng)?;
        let dt = delta_n(&t, a, x)?;
        let ddt = delta_n(&dt, a, x)?;
        max_dd = max_dd.max(ddt.max_abs());
        max_lambda = max_lambda.max(lambda_check(&t, a, x)?);
    }
    Ok(CochainCheckReport { max_coboundary_sq: max_dd, max_lambda_defect: max_lambda, cocycle_dim, samples })
}
