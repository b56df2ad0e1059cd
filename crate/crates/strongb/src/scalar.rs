//! Scalar abstraction shared by every numeric kernel in the crate.
//!
//! All algorithms are written against [`Real`], a bundle of the `num-traits`
//! capabilities they actually use, so the same code instantiates at `f32`
//! and `f64`. Concrete aliases for the common `f64` instantiation live at
//! the crate root.

use num_complex::Complex;

/// Floating-point scalar usable by every kernel in this crate.
///
/// `rank_tolerance` is the singular-value threshold below which a direction
/// is treated as belonging to the kernel; it scales with the precision of
/// the type.
pub trait Real:
    num_traits::Float
    + num_traits::FloatConst
    + num_traits::NumAssignOps
    + num_traits::FromPrimitive
    + std::iter::Sum
    + std::fmt::Debug
    + std::fmt::Display
    + std::fmt::LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
    fn rank_tolerance() -> Self;
}

impl Real for f64 {
    fn rank_tolerance() -> f64 {
        1e-9
    }
}

impl Real for f32 {
    fn rank_tolerance() -> f32 {
        1e-4
    }
}

/// Complex number over a crate scalar.
pub type Cx<T> = Complex<T>;

/// Converts an `f64` literal into the working scalar.
///
/// Panics only if the literal is not representable, which cannot happen for
/// the constants used in this crate (all are within f32 range).
pub fn real<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

/// Compensated (Kahan) summation.
///
/// The certified brackets in this crate carry slacks near 1e-9; naive
/// summation over ~1e5 terms loses exactly that much, so every norm and
/// tail accumulation goes through this.
pub fn kahan_sum<T: Real, I: IntoIterator<Item = T>>(items: I) -> T {
    let mut sum = T::zero();
    let mut comp = T::zero();
    for x in items {
        let y = x - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Multiplication with the convention `0 * inf = 0`.
///
/// Error budgets may be infinite (an indicator function has no absolutely
/// convergent tail bound) while the paired factor is exactly zero; the
/// product bound is then genuinely zero, not NaN.
pub fn mul0<T: Real>(x: T, y: T) -> T {
    if x == T::zero() || y == T::zero() {
        T::zero()
    } else {
        x * y
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kahan_beats_naive_on_adversarial_sum() {
        // 1 followed by 1e8 copies of 1e-8: exact sum is 2.
        let n = 100_000_000usize;
        let naive: f64 = {
            let mut s = 1.0f64;
            for _ in 0..n {
                s += 1e-8;
            }
            s
        };
        let kahan = kahan_sum(std::iter::once(1.0f64).chain(std::iter::repeat(1e-8).take(n)));
        assert!((kahan - 2.0).abs() < 1e-12, "kahan residual {}", kahan - 2.0);
        assert!((naive - 2.0).abs() > (kahan - 2.0).abs());
    }

    #[test]
    fn mul0_handles_infinite_budgets() {
        assert_eq!(mul0(0.0f64, f64::INFINITY), 0.0);
        assert_eq!(mul0(f64::INFINITY, 0.0f64), 0.0);
        assert_eq!(mul0(2.0f64, 3.0), 6.0);
        assert!(mul0(1.0f64, f64::INFINITY).is_infinite());
    }

    #[test]
    fn real_literal_roundtrip() {
        let x: f64 = real(0.125);
        assert_eq!(x, 0.125);
        let y: f32 = real(0.125);
        assert_eq!(y, 0.125f32);
    }

    #[test]
    fn rank_tolerances_scale_with_precision() {
        assert!(f64::rank_tolerance() < f32::rank_tolerance() as f64);
    }
}
