//! Zero-product pairs and the annihilation constant of a bilinear form.
//!
//! A pair (a, b) is a zero-product pair when ab = 0 in the algebra. For the
//! pointwise algebras these are elements with disjoint supports; for cyclic
//! convolution algebras they are elements with disjoint spectral orbits.
//! The annihilation constant of a bilinear form φ is
//!
//!   α(φ) = sup { ‖φ(a,b)‖ : ‖a‖ ≤ 1, ‖b‖ ≤ 1, ab = 0 },
//!
//! computed exactly by stratum enumeration for small sup-normed algebras and
//! reported as a certified lower estimate elsewhere.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebra::AlgebraSpec;
use super::multilinear::MultilinearMap;
use super::norms::{gaussian, NormKind};
use super::FindimError;
use crate::scalar::{kahan_sum, real, Real};

/// Products with norm at or below this are accepted as zero products.
pub const ZERO_PRODUCT_TOLERANCE: f64 = 1e-12;

/// Largest dimension for which the 3^d stratum enumeration runs.
const STRATA_ENUM_LIMIT: usize = 6;

/// Real spectral orbit bases for the cyclic convolution algebra of order k.
///
/// Orbit 0 is the constant vector; for 0 < j < k/2 the orbit {j, k−j} is
/// spanned by m ↦ cos(2πjm/k) and m ↦ sin(2πjm/k); for even k the orbit
/// {k/2} is the alternating vector. Distinct orbits convolve to zero.
pub fn orbit_basis<T: Real>(k: usize) -> Vec<Vec<Vec<T>>> {
    let mut orbits = Vec::new();
    let tau = real::<T>(std::f64::consts::PI * 2.0);
    for j in 0..=k / 2 {
        if j == 0 {
            orbits.push(vec![vec![T::one(); k]]);
        } else if 2 * j == k {
            let v: Vec<T> =
                (0..k).map(|m| if m % 2 == 0 { T::one() } else { -T::one() }).collect();
            orbits.push(vec![v]);
        } else {
            let jk = real::<T>(j as f64) / real::<T>(k as f64);
            let cos_v: Vec<T> =
                (0..k).map(|m| (tau * jk * real::<T>(m as f64)).cos()).collect();
            let sin_v: Vec<T> =
                (0..k).map(|m| (tau * jk * real::<T>(m as f64)).sin()).collect();
            orbits.push(vec![cos_v, sin_v]);
        }
    }
    orbits
}

fn validate_pair<T: Real>(a: &AlgebraSpec<T>, u: &[T], v: &[T]) -> bool {
    let prod = a.mul(u, v);
    a.norm().eval(&prod) <= real::<T>(ZERO_PRODUCT_TOLERANCE)
}

/// Structured descriptions of how to draw annihilating elements.
enum Strata<T> {
    /// Disjoint coordinate supports (pointwise algebras).
    Supports,
    /// Disjoint spectral orbit spans (cyclic convolution algebras).
    Orbits(Vec<Vec<Vec<T>>>),
}

fn strata_for<T: Real>(a: &AlgebraSpec<T>) -> Result<Strata<T>, FindimError> {
    match a.norm() {
        NormKind::Sup | NormKind::WeightedSup(_) => Ok(Strata::Supports),
        NormKind::GroupL1 => Ok(Strata::Orbits(orbit_basis(a.dim()))),
        _ => Err(FindimError::Unsupported(
            "zero-product sampling needs a sup-normed or group-l1 algebra".into(),
        )),
    }
}

fn span_sample<T: Real>(basis: &[&[T]], dim: usize, rng: &mut ChaCha8Rng) -> Vec<T> {
    let mut v = vec![T::zero(); dim];
    for b in basis {
        let w: T = gaussian(rng);
        for (vi, &bi) in v.iter_mut().zip(b.iter()) {
            *vi += w * bi;
        }
    }
    v
}

/// Unit-norm pairs (a, b) with ‖ab‖ ≤ 1e−12, deterministic in the seed.
/// Canonical pairs come first, then seeded random draws up to `budget`.
pub fn zero_product_pairs<T: Real>(
    a: &AlgebraSpec<T>,
    budget: usize,
    seed: u64,
) -> Result<Vec<(Vec<T>, Vec<T>)>, FindimError> {
    let d = a.dim();
    let strata = strata_for(a)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(Vec<T>, Vec<T>)> = Vec::new();
    let push = |u: Vec<T>, v: Vec<T>, pairs: &mut Vec<(Vec<T>, Vec<T>)>| {
        let mut u = u;
        let mut v = v;
        if a.norm().normalize(&mut u) && a.norm().normalize(&mut v) && validate_pair(a, &u, &v) {
            pairs.push((u, v));
        }
    };
    match &strata {
        Strata::Supports => {
            // Canonical: distinct basis pairs.
            for i in 0..d {
                for j in 0..d {
                    if i == j {
                        continue;
                    }
                    let mut e_i = vec![T::zero(); d];
                    e_i[i] = T::one();
                    let mut e_j = vec![T::zero(); d];
                    e_j[j] = T::one();
                    push(e_i, e_j, &mut pairs);
                }
            }
            // Random disjoint supports with random entries.
            for _ in 0..budget {
                let mut u = vec![T::zero(); d];
                let mut v = vec![T::zero(); d];
                let mut nonempty = (false, false);
                for i in 0..d {
                    match rng.gen_range(0..3u8) {
                        0 => {
                            u[i] = gaussian(&mut rng);
                            nonempty.0 = true;
                        }
                        1 => {
                            v[i] = gaussian(&mut rng);
                            nonempty.1 = true;
                        }
                        _ => {}
                    }
                }
                if nonempty.0 && nonempty.1 {
                    push(u, v, &mut pairs);
                }
            }
        }
        Strata::Orbits(orbits) => {
            // Canonical: one representative per ordered orbit pair.
            for (o1, b1) in orbits.iter().enumerate() {
                for (o2, b2) in orbits.iter().enumerate() {
                    if o1 == o2 {
                        continue;
                    }
                    push(b1[0].clone(), b2[0].clone(), &mut pairs);
                    if b2.len() > 1 {
                        push(b1[0].clone(), b2[1].clone(), &mut pairs);
                    }
                }
            }
            // Random draws from spans of disjoint orbit subsets.
            let n_orbits = orbits.len();
            for _ in 0..budget {
                if n_orbits < 2 {
                    break;
                }
                let mut first: Vec<&[T]> = Vec::new();
                let mut second: Vec<&[T]> = Vec::new();
                for orbit in orbits.iter() {
                    match rng.gen_range(0..3u8) {
                        0 => first.extend(orbit.iter().map(|v| v.as_slice())),
                        1 => second.extend(orbit.iter().map(|v| v.as_slice())),
                        _ => {}
                    }
                }
                if first.is_empty() || second.is_empty() {
                    continue;
                }
                let u = span_sample(&first, d, &mut rng);
                let v = span_sample(&second, d, &mut rng);
                push(u, v, &mut pairs);
            }
        }
    }
    Ok(pairs)
}

/// Group sequence for a chain: only consecutive links need disjoint strata.
/// A plain two-group alternation leaves the ends of an even-length chain
/// disjoint, which collapses any outer sandwich a₀·w·a_{len−1}; with a third
/// group available the tail is rerouted so the ends share a group.
fn chain_pattern(len: usize, groups: usize) -> Vec<usize> {
    let mut pattern: Vec<usize> = (0..len).map(|i| i % 2).collect();
    if len >= 4 && len % 2 == 0 && groups >= 3 {
        pattern[len - 2] = 2;
        pattern[len - 1] = 0;
    }
    pattern
}

/// Chains (a₀, …, a_{len−1}) in which every consecutive product vanishes:
/// links draw from annihilating strata assigned so that neighbors are
/// disjoint and, when the algebra has enough strata, the ends overlap.
pub fn zero_product_chains<T: Real>(
    a: &AlgebraSpec<T>,
    len: usize,
    budget: usize,
    seed: u64,
) -> Result<Vec<Vec<Vec<T>>>, FindimError> {
    if len < 2 {
        return Err(FindimError::Invalid("chain length must be at least 2".into()));
    }
    let d = a.dim();
    let strata = strata_for(a)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_c4a1);
    let mut chains = Vec::new();
    let tol = real::<T>(ZERO_PRODUCT_TOLERANCE);
    // Units are the atoms assigned to groups: coordinates for support
    // strata, whole orbits for spectral strata.
    let (units, orbits) = match &strata {
        Strata::Supports => (d, None),
        Strata::Orbits(orbits) => (orbits.len(), Some(orbits)),
    };
    if units < 2 {
        return Ok(chains);
    }
    let pattern = chain_pattern(len, units.min(3));
    let needed = pattern.iter().copied().max().unwrap_or(0) + 1;
    'outer: for trial in 0..budget.max(2) {
        // The first trials use round-robin assignments so at least one
        // valid chain exists whenever the algebra supports the pattern;
        // later trials randomize the grouping.
        let assignment: Vec<usize> = if trial < 2 {
            (0..units).map(|u| (u + trial) % needed).collect()
        } else {
            (0..units).map(|_| rng.gen_range(0..needed)).collect()
        };
        let mut seen = vec![false; needed];
        for &g in &assignment {
            seen[g] = true;
        }
        if seen.iter().any(|&s| !s) {
            continue;
        }
        let mut chain: Vec<Vec<T>> = Vec::with_capacity(len);
        for &group in &pattern {
            let link = match orbits {
                None => (0..d)
                    .map(|i| if assignment[i] == group { gaussian(&mut rng) } else { T::zero() })
                    .collect(),
                Some(orbits) => {
                    let basis: Vec<&[T]> = orbits
                        .iter()
                        .enumerate()
                        .filter(|(oi, _)| assignment[*oi] == group)
                        .flat_map(|(_, orbit)| orbit.iter().map(|v| v.as_slice()))
                        .collect();
                    span_sample(&basis, d, &mut rng)
                }
            };
            chain.push(link);
        }
        for link in chain.iter_mut() {
            if !a.norm().normalize(link) {
                continue 'outer;
            }
        }
        for w in chain.windows(2) {
            let prod = a.mul(&w[0], &w[1]);
            if a.norm().eval(&prod) > tol {
                continue 'outer;
            }
        }
        chains.push(chain);
    }
    Ok(chains)
}

#[derive(Clone, Copy, Debug)]
pub struct AlphaEstimate<T> {
    pub value: T,
    /// True when the value is the exact supremum rather than a lower bound.
    pub exact: bool,
}

/// Exact annihilation constant for a scalar bilinear form over a sup-normed
/// algebra with pointwise products, by enumerating disjoint support strata:
/// within a stratum (P, Q) the maximum is max_σ Σ_{j∈Q} |Σ_{i∈P} σ_i φ_ij|.
fn sup_alpha_exact<T: Real>(phi: &MultilinearMap<T>, d: usize) -> T {
    let mut best = T::zero();
    let total = 3usize.pow(d as u32);
    for assign in 0..total {
        let mut p = Vec::new();
        let mut q = Vec::new();
        let mut digits = assign;
        for i in 0..d {
            match digits % 3 {
                0 => p.push(i),
                1 => q.push(i),
                _ => {}
            }
            digits /= 3;
        }
        if p.is_empty() || q.is_empty() {
            continue;
        }
        for mask in 0..(1usize << p.len()) {
            let mut total_val = T::zero();
            for &j in &q {
                let mut inner = T::zero();
                for (bit, &i) in p.iter().enumerate() {
                    let sgn = if mask >> bit & 1 == 1 { T::one() } else { -T::one() };
                    inner += sgn * phi.entry(0, &[i, j]);
                }
                total_val += inner.abs();
            }
            best = best.max(total_val);
        }
    }
    best
}

fn pair_value<T: Real>(
    phi: &MultilinearMap<T>,
    out_norm: &NormKind<T>,
    a: &AlgebraSpec<T>,
    u: &[T],
    v: &[T],
) -> T {
    let nu = a.norm().eval(u);
    let nv = a.norm().eval(v);
    if nu <= T::zero() || nv <= T::zero() {
        return T::zero();
    }
    out_norm.eval(&phi.apply(&[u, v])) / (nu * nv)
}

/// Annihilation constant of a degree-2 form. Exact by stratum enumeration
/// for scalar forms over small sup-normed algebras; otherwise a certified
/// lower estimate from canonical pairs, seeded sampling, and local ascent
/// over spectral-orbit angles.
pub fn alpha_of_phi<T: Real>(
    phi: &MultilinearMap<T>,
    a: &AlgebraSpec<T>,
    out_norm: &NormKind<T>,
    budget: usize,
    seed: u64,
) -> Result<AlphaEstimate<T>, FindimError> {
    if phi.degree() != 2 {
        return Err(FindimError::Invalid("annihilation constant needs a degree-2 form".into()));
    }
    if phi.in_dim() != a.dim() {
        return Err(FindimError::Invalid("form dimension does not match algebra".into()));
    }
    let d = a.dim();
    let scalar_out = phi.out_dim() == 1;
    if scalar_out && matches!(a.norm(), NormKind::Sup) && d <= STRATA_ENUM_LIMIT {
        return Ok(AlphaEstimate { value: sup_alpha_exact(phi, d), exact: true });
    }
    // Lower estimate: evaluate on sampled pairs.
    let mut best = T::zero();
    for (u, v) in zero_product_pairs(a, budget, seed)? {
        best = best.max(pair_value(phi, out_norm, a, &u, &v));
    }
    // For cyclic convolution algebras, refine over orbit-pair angles.
    if let NormKind::GroupL1 = a.norm() {
        let orbits = orbit_basis::<T>(d);
        let line = |basis: &[Vec<T>], theta: T| -> Vec<T> {
            if basis.len() == 1 {
                basis[0].clone()
            } else {
                basis[0]
                    .iter()
                    .zip(basis[1].iter())
                    .map(|(&c, &s)| theta.cos() * c + theta.sin() * s)
                    .collect()
            }
        };
        for (o1, b1) in orbits.iter().enumerate() {
            for (o2, b2) in orbits.iter().enumerate() {
                if o1 == o2 {
                    continue;
                }
                let grid = 64usize;
                let tau = real::<T>(std::f64::consts::PI * 2.0);
                let step = tau / real::<T>(grid as f64);
                let mut local_best = (T::zero(), T::zero(), T::zero());
                for it in 0..grid {
                    for jt in 0..grid {
                        let th = step * real::<T>(it as f64);
                        let ps = step * real::<T>(jt as f64);
                        let val = pair_value(phi, out_norm, a, &line(b1, th), &line(b2, ps));
                        if val > local_best.0 {
                            local_best = (val, th, ps);
                        }
                    }
                }
                // Shrinking-step coordinate ascent around the best grid node.
                let (mut val, mut th, mut ps) = local_best;
                let mut h = step;
                for _ in 0..24 {
                    let mut improved = false;
                    for (dth, dps) in [(h, T::zero()), (-h, T::zero()), (T::zero(), h), (T::zero(), -h)]
                    {
                        let cand =
                            pair_value(phi, out_norm, a, &line(b1, th + dth), &line(b2, ps + dps));
                        if cand > val {
                            val = cand;
                            th += dth;
                            ps += dps;
                            improved = true;
                        }
                    }
                    if !improved {
                        h = h / real::<T>(4.0);
                        if h < real::<T>(1e-9) {
                            break;
                        }
                    }
                }
                best = best.max(val);
            }
        }
    }
    Ok(AlphaEstimate { value: best, exact: false })
}

/// Upper bound on the annihilation constant of a scalar bilinear form,
/// suitable as a denominator in certified lower bounds on ratios. Exact for
/// small sup-normed algebras; for group-l1 algebras the (exact) full
/// operator norm max_ij |φ_ij| is used, which dominates the supremum over
/// the zero-product subset.
pub fn alpha_upper_scalar<T: Real>(
    phi: &MultilinearMap<T>,
    a: &AlgebraSpec<T>,
) -> Result<AlphaEstimate<T>, FindimError> {
    if phi.degree() != 2 || phi.out_dim() != 1 {
        return Err(FindimError::Invalid("needs a scalar degree-2 form".into()));
    }
    let d = a.dim();
    match a.norm() {
        NormKind::Sup if d <= STRATA_ENUM_LIMIT => {
            Ok(AlphaEstimate { value: sup_alpha_exact(phi, d), exact: true })
        }
        NormKind::Sup => {
            // Crude but valid: |φ(a,b)| ≤ Σ_ij |φ_ij| on the unit sup balls.
            let value = kahan_sum(phi.tensor().iter().map(|&x| x.abs()));
            Ok(AlphaEstimate { value, exact: false })
        }
        NormKind::GroupL1 => {
            let value = phi.max_abs();
            Ok(AlphaEstimate { value, exact: false })
        }
        _ => Err(FindimError::Unsupported(
            "annihilation upper bound needs a sup-normed or group-l1 algebra".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_bases_span_and_annihilate() {
        for k in 2..=6usize {
            let orbits = orbit_basis::<f64>(k);
            let total: usize = orbits.iter().map(|o| o.len()).sum();
            assert_eq!(total, k, "orbit bases must span dimension {k}");
            let alg = AlgebraSpec::<f64>::l1_cyclic(k).unwrap();
            for (i, o1) in orbits.iter().enumerate() {
                for (j, o2) in orbits.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    for u in o1 {
                        for v in o2 {
                            let p = alg.mul(u, v);
                            assert!(
                                alg.norm().eval(&p) <= 1e-12,
                                "orbits {i},{j} of order {k} do not annihilate"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cyclic_two_has_the_sign_projection_pair() {
        let alg = AlgebraSpec::<f64>::l1_cyclic(2).unwrap();
        let pairs = zero_product_pairs(&alg, 0, 1).unwrap();
        // (δ0+δ1)/2 convolved with (δ0−δ1)/2 is zero; the canonical orbit
        // pair is exactly this up to normalization.
        assert!(!pairs.is_empty());
        let found = pairs.iter().any(|(u, v)| {
            (u[0] - 0.5).abs() <= 1e-12
                && (u[1] - 0.5).abs() <= 1e-12
                && (v[0] - 0.5).abs() <= 1e-12
                && (v[1] + 0.5).abs() <= 1e-12
        });
        assert!(found, "canonical sign-projection pair missing: {pairs:?}");
    }

    #[test]
    fn sampled_pairs_are_unit_and_annihilating() {
        for alg in [
            AlgebraSpec::<f64>::ck(4).unwrap(),
            AlgebraSpec::<f64>::l1_cyclic(4).unwrap(),
        ] {
            let pairs = zero_product_pairs(&alg, 50, 42).unwrap();
            assert!(pairs.len() >= 10);
            for (u, v) in &pairs {
                assert!((alg.norm().eval(u) - 1.0).abs() <= 1e-9);
                assert!((alg.norm().eval(v) - 1.0).abs() <= 1e-9);
                assert!(alg.norm().eval(&alg.mul(u, v)) <= 1e-12);
            }
        }
    }

    #[test]
    fn pairs_are_deterministic_in_the_seed() {
        let alg = AlgebraSpec::<f64>::l1_cyclic(3).unwrap();
        let p1 = zero_product_pairs(&alg, 30, 7).unwrap();
        let p2 = zero_product_pairs(&alg, 30, 7).unwrap();
        assert_eq!(p1, p2);
        let p3 = zero_product_pairs(&alg, 30, 8).unwrap();
        assert_ne!(p1, p3);
    }

    #[test]
    fn scalars_have_no_pairs() {
        let alg = AlgebraSpec::<f64>::scalars().unwrap();
        let pairs = zero_product_pairs(&alg, 100, 3).unwrap();
        assert!(pairs.is_empty());
    }

    #[test]
    fn matrix_algebra_is_not_supported() {
        let alg = AlgebraSpec::<f64>::m2().unwrap();
        assert!(matches!(
            zero_product_pairs(&alg, 10, 0),
            Err(FindimError::Unsupported(_))
        ));
    }

    #[test]
    fn chains_alternate_and_annihilate() {
        for alg in [
            AlgebraSpec::<f64>::ck(3).unwrap(),
            AlgebraSpec::<f64>::l1_cyclic(4).unwrap(),
        ] {
            let chains = zero_product_chains(&alg, 4, 40, 11).unwrap();
            assert!(!chains.is_empty());
            for chain in &chains {
                assert_eq!(chain.len(), 4);
                for link in chain {
                    assert!((alg.norm().eval(link) - 1.0).abs() <= 1e-9);
                }
                for w in chain.windows(2) {
                    assert!(alg.norm().eval(&alg.mul(&w[0], &w[1])) <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn projection_form_has_unit_annihilation_constant() {
        // φ((a1,a2),(b1,b2)) = a1·b2 on the pointwise pair algebra: the
        // only disjoint strata are ({0},{1}) and ({1},{0}), giving exactly 1.
        let alg = AlgebraSpec::<f64>::ck(2).unwrap();
        let mut phi = MultilinearMap::<f64>::zero(2, 2, 1).unwrap();
        phi.set_entry(0, &[0, 1], 1.0);
        let est = alpha_of_phi(&phi, &alg, &NormKind::Sup, 50, 0).unwrap();
        assert!(est.exact);
        assert!((est.value - 1.0).abs() <= 1e-12);
        // The upper-bound routine agrees exactly here.
        let up = alpha_upper_scalar(&phi, &alg).unwrap();
        assert!(up.exact);
        assert_eq!(up.value, est.value);
    }

    #[test]
    fn diagonal_forms_annihilate_nothing() {
        // φ(a,b) = Σ a_i b_i never sees disjoint supports.
        let alg = AlgebraSpec::<f64>::ck(3).unwrap();
        let mut phi = MultilinearMap::<f64>::zero(2, 3, 1).unwrap();
        for i in 0..3 {
            phi.set_entry(0, &[i, i], 1.0);
        }
        let est = alpha_of_phi(&phi, &alg, &NormKind::Sup, 50, 0).unwrap();
        assert!(est.exact);
        assert_eq!(est.value, 0.0);
    }

    #[test]
    fn alpha_estimate_is_below_alpha_upper() {
        let alg = AlgebraSpec::<f64>::l1_cyclic(4).unwrap();
        let mut phi = MultilinearMap::<f64>::zero(2, 4, 1).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                phi.set_entry(0, &[i, j], ((i * 7 + j * 3) as f64).sin());
            }
        }
        let lower = alpha_of_phi(&phi, &alg, &NormKind::Sup, 200, 5).unwrap();
        let upper = alpha_upper_scalar(&phi, &alg).unwrap();
        assert!(!lower.exact);
        assert!(lower.value <= upper.value + 1e-9);
        assert!(lower.value > 0.0);
    }

    #[test]
    fn alpha_scales_linearly() {
        let alg = AlgebraSpec::<f64>::ck(3).unwrap();
        let mut phi = MultilinearMap::<f64>::zero(2, 3, 1).unwrap();
        phi.set_entry(0, &[0, 1], 2.0);
        phi.set_entry(0, &[1, 2], -1.0);
        phi.set_entry(0, &[2, 2], 0.7);
        let a1 = alpha_of_phi(&phi, &alg, &NormKind::Sup, 10, 0).unwrap();
        let a3 = alpha_of_phi(&phi.scale(3.0), &alg, &NormKind::Sup, 10, 0).unwrap();
        assert!((a3.value - 3.0 * a1.value).abs() <= 1e-9);
    }
}
