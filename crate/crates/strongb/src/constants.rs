//! Closed-form constant pipeline.
//!
//! Every function returns the evaluated number together with the formula
//! it came from, so downstream reports can show where a bound originates.
//! The functions are deliberately thin: each one is a single arithmetic
//! expression, and the relationships between them (squares, doublings,
//! compositions) are pinned down by tests rather than shared code, so a
//! typo in one formula cannot silently propagate to another.

use crate::scalar::{real, Real};

/// A computed constant together with its defining formula.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstantValue<T> {
    pub value: T,
    pub formula: &'static str,
}

impl<T: Real> ConstantValue<T> {
    fn new(value: T, formula: &'static str) -> Self {
        ConstantValue { value, formula }
    }
}

fn one_plus_sqrt2<T: Real>() -> T {
    T::one() + real::<T>(2.0).sqrt()
}

/// Best approximation bound on the circle as a function of the
/// zero-product defect level alpha: 12·sqrt(pi·(1+sqrt(2)))·sqrt(alpha).
pub fn circle_lemma_bound<T: Real>(alpha: T) -> ConstantValue<T> {
    assert!(alpha >= T::zero(), "alpha must be nonnegative");
    let value = real::<T>(12.0) * (T::PI() * one_plus_sqrt2()).sqrt() * alpha.sqrt();
    ConstantValue::new(value, "12*sqrt(pi*(1+sqrt(2)))*sqrt(alpha)")
}

/// Restricted and general zero-product constants for the circle algebra:
/// (144·pi·(1+sqrt(2))·alpha, 288·pi·(1+sqrt(2))·alpha). The general value
/// is computed as exactly twice the restricted one.
pub fn circle_strong_b<T: Real>(alpha: T) -> (ConstantValue<T>, ConstantValue<T>) {
    assert!(alpha >= T::zero(), "alpha must be nonnegative");
    let restricted = real::<T>(144.0) * T::PI() * one_plus_sqrt2() * alpha;
    let general = real::<T>(2.0) * restricted;
    (
        ConstantValue::new(restricted, "144*pi*(1+sqrt(2))*alpha"),
        ConstantValue::new(general, "2*(144*pi*(1+sqrt(2))*alpha)"),
    )
}

/// Norm-control constant for the operator-algebra and group-algebra cases:
/// 288·pi·(1+sqrt(2)).
pub fn cstar_group_constant<T: Real>() -> ConstantValue<T> {
    let value = real::<T>(288.0) * T::PI() * one_plus_sqrt2();
    ConstantValue::new(value, "288*pi*(1+sqrt(2))")
}

/// Distance inflation when passing to the forced unitization:
/// M²·r + (M+1)².
pub fn unitization_constant<T: Real>(m: T, r: T) -> ConstantValue<T> {
    assert!(m >= T::zero() && r >= T::zero(), "arguments must be nonnegative");
    let value = m * m * r + (m + T::one()) * (m + T::one());
    ConstantValue::new(value, "M^2*r+(M+1)^2")
}

/// Norm control for degree-n cochains from the zero-product-chain level
/// gamma: 2^(n-1)·r^(n+1)·gamma.
pub fn cocycle_norm_bound<T: Real>(n: u32, r: T, gamma: T) -> ConstantValue<T> {
    assert!(n >= 1, "degree must be at least 1");
    assert!(r >= T::zero() && gamma >= T::zero(), "arguments must be nonnegative");
    let two = real::<T>(2.0);
    let value = two.powi(n as i32 - 1) * r.powi(n as i32 + 1) * gamma;
    ConstantValue::new(value, "2^(n-1)*r^(n+1)*gamma")
}

/// Reflexivity-style bound for degree-n cocycle spaces:
/// C·2^(n-1)·(M²·r+(M+1)²)^(n+1).
pub fn hyperref_bound<T: Real>(n: u32, m: T, r: T, c: T) -> ConstantValue<T> {
    assert!(n >= 1, "degree must be at least 1");
    assert!(m >= T::zero() && r >= T::zero() && c >= T::zero(), "arguments must be nonnegative");
    let two = real::<T>(2.0);
    let s = unitization_constant(m, r).value;
    let value = c * two.powi(n as i32 - 1) * s.powi(n as i32 + 1);
    ConstantValue::new(value, "C*2^(n-1)*(M^2*r+(M+1)^2)^(n+1)")
}

/// Bound for distances to a representation commutant:
/// M·C·K²·pi_norm².
pub fn commutant_bound<T: Real>(m: T, c: T, k: T, pi_norm: T) -> ConstantValue<T> {
    assert!(
        m >= T::zero() && c >= T::zero() && k >= T::zero() && pi_norm >= T::zero(),
        "arguments must be nonnegative"
    );
    let value = m * c * k * k * pi_norm * pi_norm;
    ConstantValue::new(value, "M*C*K^2*pi_norm^2")
}

/// Families whose approximate-identity constants are classical.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AmenablePreset {
    AmenableGroupAlgebra,
    AmenableCstar,
}

/// Preset (M, C) pair for the given family. Both classical families admit
/// contractive approximate identities, so both constants are 1; the pair
/// always satisfies the compatibility constraint C ≤ M.
pub fn amenability_presets<T: Real>(kind: AmenablePreset) -> (T, T) {
    match kind {
        AmenablePreset::AmenableGroupAlgebra | AmenablePreset::AmenableCstar => (T::one(), T::one()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn golden_values() {
        assert!((circle_lemma_bound(1.0f64).value - 33.047_911_964_475_68).abs() <= 1e-10);
        let (restricted, general) = circle_strong_b(1.0f64);
        assert!((restricted.value - 1_092.164_485_211_735).abs() <= 1e-9);
        assert!((general.value - 2_184.328_970_423_47).abs() <= 1e-9);
        assert!((cstar_group_constant::<f64>().value - 2_184.328_970_423_47).abs() <= 1e-9);
        assert_eq!(unitization_constant(1.0f64, 0.0).value, 4.0);
        assert_eq!(unitization_constant(2.0f64, 1.0).value, 13.0);
        assert_eq!(cocycle_norm_bound(2, 2.0f64, 1.0).value, 16.0);
        assert!((hyperref_bound(1, 1.0f64, 2184.329, 1.0).value - 4_788_783.812_241).abs() <= 1e-4);
        assert_eq!(hyperref_bound(1, 1.0f64, 0.0, 1.0).value, 16.0);
        assert_eq!(commutant_bound(1.0f64, 1.0, 1.0, 1.0).value, 1.0);
    }

    #[test]
    fn general_is_exactly_twice_restricted() {
        for alpha in [1e-6, 0.01, 0.5, 1.0, 3.0, 100.0] {
            let (restricted, general) = circle_strong_b(alpha);
            assert_eq!(restricted.value / general.value, 0.5);
        }
    }

    #[test]
    fn cstar_constant_normalizes_to_288() {
        let v = cstar_group_constant::<f64>().value;
        let base = std::f64::consts::PI * (1.0 + 2.0f64.sqrt());
        assert!((v / base - 288.0).abs() <= 1e-9);
    }

    #[test]
    fn formulas_are_attached_and_comma_free() {
        let all = [
            circle_lemma_bound(1.0f64).formula,
            circle_strong_b(1.0f64).0.formula,
            circle_strong_b(1.0f64).1.formula,
            cstar_group_constant::<f64>().formula,
            unitization_constant(1.0f64, 1.0).formula,
            cocycle_norm_bound(1, 1.0f64, 1.0).formula,
            hyperref_bound(1, 1.0f64, 1.0, 1.0).formula,
            commutant_bound(1.0f64, 1.0, 1.0, 1.0).formula,
        ];
        for f in all {
            assert!(!f.is_empty());
            assert!(!f.contains(','), "formula {f} must stay CSV-safe");
        }
    }

    #[test]
    fn presets_are_unit_and_compatible() {
        for kind in [AmenablePreset::AmenableGroupAlgebra, AmenablePreset::AmenableCstar] {
            let (m, c): (f64, f64) = amenability_presets(kind);
            assert_eq!((m, c), (1.0, 1.0));
            assert!(c <= m + 1e-12);
        }
    }

    #[test]
    fn cross_consistency_between_formulas() {
        // Squaring the approximation bound recovers the restricted constant.
        let lemma = circle_lemma_bound(1.0f64).value;
        let (restricted, general) = circle_strong_b(1.0f64);
        assert!(rel_close(lemma * lemma, restricted.value, 1e-9));
        // The general circle constant and the classical-family constant agree.
        assert!(rel_close(general.value, cstar_group_constant::<f64>().value, 1e-9));
        // The reflexivity bound factors through the unitization constant.
        for (n, m, r, c) in [(1u32, 1.0f64, 2.0, 1.0), (2, 0.5, 7.0, 3.0), (3, 2.0, 0.1, 0.25)] {
            let s = unitization_constant(m, r).value;
            let via_cocycle = c * cocycle_norm_bound(n, s, 1.0).value;
            assert!(rel_close(hyperref_bound(n, m, r, c).value, via_cocycle, 1e-9));
        }
    }

    proptest! {
        #[test]
        fn lemma_bound_is_monotone_and_half_homogeneous(a in 0.0f64..50.0, b in 0.0f64..50.0) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(circle_lemma_bound(lo).value <= circle_lemma_bound(hi).value + 1e-12);
            let scaled = circle_lemma_bound(4.0 * a).value;
            prop_assert!(rel_close(scaled, 2.0 * circle_lemma_bound(a).value, 1e-12));
        }

        #[test]
        fn strong_b_is_linear_in_alpha(a in 0.0f64..20.0) {
            let (r1, _) = circle_strong_b(a);
            let (r2, _) = circle_strong_b(2.0 * a);
            prop_assert!(rel_close(r2.value, 2.0 * r1.value, 1e-12));
        }

        #[test]
        fn unitization_monotone_in_both_arguments(m in 0.0f64..10.0, r in 0.0f64..10.0, dm in 0.0f64..1.0, dr in 0.0f64..1.0) {
            let base = unitization_constant(m, r).value;
            prop_assert!(unitization_constant(m + dm, r).value + 1e-12 >= base);
            prop_assert!(unitization_constant(m, r + dr).value + 1e-12 >= base);
        }

        #[test]
        fn cocycle_bound_monotone_in_r_and_gamma(n in 1u32..4, r in 0.0f64..5.0, g in 0.0f64..5.0, d in 0.0f64..1.0) {
            let base = cocycle_norm_bound(n, r, g).value;
            prop_assert!(cocycle_norm_bound(n, r + d, g).value + 1e-12 >= base);
            prop_assert!(cocycle_norm_bound(n, r, g + d).value + 1e-12 >= base);
            // Linearity in gamma.
            prop_assert!(rel_close(cocycle_norm_bound(n, r, 2.0 * g).value, 2.0 * base, 1e-12));
        }

        #[test]
        fn hyperref_bound_monotone(n in 1u32..4, m in 0.0f64..3.0, r in 0.0f64..10.0, c in 0.0f64..3.0, d in 0.0f64..1.0) {
            let base = hyperref_bound(n, m, r, c).value;
            prop_assert!(hyperref_bound(n, m + d, r, c).value + 1e-12 >= base);
            prop_assert!(hyperref_bound(n, m, r + d, c).value + 1e-12 >= base);
            prop_assert!(rel_close(hyperref_bound(n, m, r, 2.0 * c).value, 2.0 * base, 1e-12));
        }

        #[test]
        fn commutant_bound_is_quadratic_in_k_and_pi(m in 0.0f64..3.0, c in 0.0f64..3.0, k in 0.0f64..3.0, p in 0.0f64..3.0) {
            let base = commutant_bound(m, c, k, p).value;
            prop_assert!(rel_close(commutant_bound(m, c, 2.0 * k, p).value, 4.0 * base, 1e-12));
            prop_assert!(rel_close(commutant_bound(m, c, k, 2.0 * p).value, 4.0 * base, 1e-12));
        }
    }
}
