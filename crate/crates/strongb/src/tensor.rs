//! Exact trigonometric polynomials in two circle variables.
//!
//! Elements are finite coefficient maps on ℤ², combined with exact sparse
//! arithmetic: no truncation happens here, so identities between
//! polynomial expressions can be checked coefficient by coefficient. The
//! main constructions are elementary tensors x ⊗ y and the diagonal lift
//! k ↦ Σ k̂(n) e_n ⊗ e_{-n}, which turns convolution identities in one
//! variable into pointwise-product identities in two.

use std::collections::BTreeMap;

use crate::fourier::FourierElement;
use crate::scalar::{Cx, Real};

#[derive(Clone, Debug, Default)]
pub struct TensorElement<T: Real> {
    terms: BTreeMap<(i64, i64), Cx<T>>,
}

impl<T: Real> TensorElement<T> {
    pub fn zero() -> Self {
        TensorElement { terms: BTreeMap::new() }
    }

    pub fn from_terms(pairs: impl IntoIterator<Item = ((i64, i64), Cx<T>)>) -> Self {
        let mut t = TensorElement::zero();
        for (k, c) in pairs {
            t.insert(k, c);
        }
        t
    }

    fn insert(&mut self, key: (i64, i64), c: Cx<T>) {
        let e = self.terms.entry(key).or_insert_with(|| Cx::new(T::zero(), T::zero()));
        *e = *e + c;
        if e.re == T::zero() && e.im == T::zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coeff(&self, n: i64, m: i64) -> Cx<T> {
        self.terms.get(&(n, m)).copied().unwrap_or_else(|| Cx::new(T::zero(), T::zero()))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &Cx<T>)> {
        self.terms.iter()
    }

    /// Elementary tensor x ⊗ y built from the stored coefficients.
    pub fn elementary(x: &FourierElement<T>, y: &FourierElement<T>) -> Self {
        let mut t = TensorElement::zero();
        for &(n, c) in x.coeffs() {
            for &(m, d) in y.coeffs() {
                t.insert((n, m), c * d);
            }
        }
        t
    }

    /// Diagonal lift Σ_n k̂(n) e_n ⊗ e_{-n} of a one-variable element.
    pub fn diag_lift(k: &FourierElement<T>) -> Self {
        let mut t = TensorElement::zero();
        for &(n, c) in k.coeffs() {
            t.insert((n, -n), c);
        }
        t
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut t = self.clone();
        for (&k, &c) in &other.terms {
            t.insert(k, c);
        }
        t
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut t = self.clone();
        for (&k, &c) in &other.terms {
            t.insert(k, -c);
        }
        t
    }

    pub fn scale(&self, a: Cx<T>) -> Self {
        let mut t = TensorElement::zero();
        for (&k, &c) in &self.terms {
            t.insert(k, c * a);
        }
        t
    }

    /// Pointwise product on the two-torus: coefficients convolve in ℤ².
    pub fn mul(&self, other: &Self) -> Self {
        let mut t = TensorElement::zero();
        for (&(n1, m1), &c) in &self.terms {
            for (&(n2, m2), &d) in &other.terms {
                let key = (
                    n1.checked_add(n2).expect("tensor frequency overflows"),
                    m1.checked_add(m2).expect("tensor frequency overflows"),
                );
                t.insert(key, c * d);
            }
        }
        t
    }

    /// Largest coefficient magnitude; the coefficientwise distance to zero.
    pub fn max_coeff_norm(&self) -> T {
        self.terms.values().fold(T::zero(), |acc, c| acc.max(c.norm()))
    }

    /// Value at a point of the two-torus (test oracle; exact elements only).
    pub fn eval(&self, s: T, t: T) -> Cx<T> {
        let mut acc = Cx::new(T::zero(), T::zero());
        for (&(n, m), &c) in &self.terms {
            let angle = T::from_i64(n).expect("frequency fits scalar") * s
                + T::from_i64(m).expect("frequency fits scalar") * t;
            let (si, co) = angle.sin_cos();
            acc = acc + c * Cx::new(co, si);
        }
        acc
    }
}

/// Transporter tensor N(k) multiplied by f ⊗ e₁h: the two-variable carrier
/// of the one-variable convolution action of k against the pair (f, h).
pub fn transport<T: Real>(
    k: &FourierElement<T>,
    f: &FourierElement<T>,
    h: &FourierElement<T>,
) -> TensorElement<T> {
    let carrier = TensorElement::elementary(f, &h.mul_by_char(1));
    TensorElement::diag_lift(k).mul(&carrier)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::FourierElement;
    use proptest::prelude::*;

    type F = FourierElement<f64>;
    type Tn = TensorElement<f64>;

    fn cx(re: f64, im: f64) -> Cx<f64> {
        Cx::new(re, im)
    }

    fn shift_generator() -> F {
        F::from_pairs(vec![(0, cx(-1.0, 0.0)), (1, cx(1.0, 0.0))]).unwrap()
    }

    #[test]
    fn diag_lift_places_antidiagonal_terms() {
        let k = shift_generator();
        let n = Tn::diag_lift(&k);
        assert_eq!(n.coeff(1, -1), cx(1.0, 0.0));
        assert_eq!(n.coeff(0, 0), cx(-1.0, 0.0));
        assert_eq!(n.term_count(), 2);
    }

    #[test]
    fn elementary_tensor_coefficients_multiply() {
        let x = F::from_pairs(vec![(2, cx(3.0, 0.0))]).unwrap();
        let y = F::from_pairs(vec![(-1, cx(0.0, 2.0))]).unwrap();
        let t = Tn::elementary(&x, &y);
        assert_eq!(t.coeff(2, -1), cx(0.0, 6.0));
        assert_eq!(t.term_count(), 1);
    }

    #[test]
    fn transport_identity_for_shift_generator() {
        // transport(e₁ - 1, f, h) = fe₁ ⊗ h − f ⊗ e₁h, exactly.
        let k = shift_generator();
        let f = F::from_pairs(vec![(0, cx(0.5, 0.0)), (2, cx(-1.0, 1.0)), (-3, cx(0.25, 0.0))]).unwrap();
        let h = F::from_pairs(vec![(1, cx(1.0, 0.0)), (-2, cx(0.0, -0.5))]).unwrap();
        let lhs = transport(&k, &f, &h);
        let rhs = Tn::elementary(&f.mul_by_char(1), &h).sub(&Tn::elementary(&f, &h.mul_by_char(1)));
        assert_eq!(lhs.sub(&rhs).max_coeff_norm(), 0.0);
    }

    #[test]
    fn convolution_lifts_to_coefficient_products() {
        // diag_lift(x ∗ y̌) carries x̂(n)ŷ(-n) on the antidiagonal.
        let x = F::from_pairs(vec![(0, cx(1.0, 0.0)), (2, cx(-0.5, 0.25)), (5, cx(0.0, 1.0))]).unwrap();
        let y = F::from_pairs(vec![(-2, cx(2.0, 0.0)), (0, cx(0.5, -0.5)), (-5, cx(1.0, 1.0))]).unwrap();
        let lifted = Tn::diag_lift(&x.convolve(&y.reflect()));
        for n in -6..=6i64 {
            let want = x.coeff(n) * y.coeff(-n);
            assert_eq!(lifted.coeff(n, -n), want);
        }
    }

    #[test]
    fn mul_matches_pointwise_values() {
        let a = Tn::from_terms(vec![((1, 0), cx(1.0, 0.0)), ((0, 2), cx(0.0, 1.0))]);
        let b = Tn::from_terms(vec![((-1, 1), cx(2.0, 0.0)), ((0, 0), cx(-1.0, 0.0))]);
        let p = a.mul(&b);
        for &(s, t) in &[(0.3, -1.2), (2.0, 0.7), (-0.4, 0.9)] {
            let want = a.eval(s, t) * b.eval(s, t);
            assert!((p.eval(s, t) - want).norm() <= 1e-13);
        }
    }

    fn poly(max_deg: i64) -> impl Strategy<Value = F> {
        proptest::collection::vec(((-max_deg..=max_deg), (-2.0f64..2.0), (-2.0f64..2.0)), 1..6).prop_map(|terms| {
            let mut acc: BTreeMap<i64, Cx<f64>> = BTreeMap::new();
            for (n, re, im) in terms {
                let e = acc.entry(n).or_insert(cx(0.0, 0.0));
                *e = *e + cx(re, im);
            }
            F::from_pairs(acc.into_iter().collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn transport_identity_random_polynomials(f in poly(8), h in poly(8)) {
            let k = shift_generator();
            let lhs = transport(&k, &f, &h);
            let rhs = Tn::elementary(&f.mul_by_char(1), &h)
                .sub(&Tn::elementary(&f, &h.mul_by_char(1)));
            prop_assert!(lhs.sub(&rhs).max_coeff_norm() <= 1e-12);
        }

        #[test]
        fn diag_lift_of_reflected_convolution(x in poly(8), y in poly(8)) {
            let lifted = Tn::diag_lift(&x.convolve(&y.reflect()));
            for n in -8..=8i64 {
                let want = x.coeff(n) * y.coeff(-n);
                prop_assert!((lifted.coeff(n, -n) - want).norm() <= 1e-12);
            }
        }

        #[test]
        fn mul_is_commutative(f in poly(5), h in poly(5)) {
            // Accumulation order differs between the two products, so allow
            // rounding noise but nothing larger.
            let a = Tn::elementary(&f, &h);
            let b = Tn::diag_lift(&f);
            prop_assert!(a.mul(&b).sub(&b.mul(&a)).max_coeff_norm() <= 1e-12);
        }
    }
}
