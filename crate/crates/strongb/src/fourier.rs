//! Certified arithmetic for circle functions represented by sparse Fourier
//! coefficients.
//!
//! An element stores finitely many coefficients plus a certified error
//! budget for everything it does not store. Writing the true function as
//! g = p + e, where p is the stored trigonometric polynomial:
//!
//! * `tail_bound` bounds the absolutely-summed coefficient mass of e (the
//!   algebra norm of the defect); it is infinite for a raw interval
//!   indicator, whose coefficients are not absolutely summable.
//! * `tail_l2` bounds the L² norm of e under normalized Haar measure.
//! * `exact_stored` records that e has no mass on the stored frequencies,
//!   i.e. every stored coefficient is the true one. Operations that smear
//!   error onto stored frequencies clear it.
//!
//! All norm queries return certified brackets (lower, upper) that contain
//! the true value whatever e is, subject only to the stated budgets.
//! Conventions: normalized Haar measure dt/(2π), so an interval [-h, h] has
//! measure h/π, convolution multiplies coefficients with no extra factor,
//! and pointwise multiplication convolves coefficients.

use crate::scalar::{kahan_sum, mul0, Cx, Real};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum FourierError {
    #[error("duplicate frequency {0} in coefficient list")]
    DuplicateFrequency(i64),
    #[error("interval half-width must lie in (0, pi], got {0}")]
    InvalidHalfWidth(f64),
}

/// Symmetric arc [-h, h] of the circle, with its normalized Haar measure.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval<T> {
    half_width: T,
    measure: T,
}

impl<T: Real> Interval<T> {
    pub fn new(half_width: T) -> Result<Self, FourierError> {
        if !(half_width > T::zero() && half_width <= T::PI()) {
            return Err(FourierError::InvalidHalfWidth(
                half_width.to_f64().unwrap_or(f64::NAN),
            ));
        }
        Ok(Interval { half_width, measure: half_width / T::PI() })
    }

    pub fn half_width(&self) -> T {
        self.half_width
    }

    /// Normalized Haar measure of the arc: half_width / pi.
    pub fn measure(&self) -> T {
        self.measure
    }
}

/// Sparse Fourier-coefficient representation with certified error budgets.
#[derive(Clone, Debug)]
pub struct FourierElement<T: Real> {
    /// Sorted by frequency, duplicate-free, no exactly-zero entries.
    coeffs: Vec<(i64, Cx<T>)>,
    tail_bound: T,
    tail_l2: T,
    exact_stored: bool,
}

impl<T: Real> FourierElement<T> {
    // ─── construction ───

    fn normalized(mut coeffs: Vec<(i64, Cx<T>)>, tail_bound: T, tail_l2: T, exact_stored: bool) -> Self {
        coeffs.sort_by_key(|&(n, _)| n);
        coeffs.retain(|&(_, c)| c.re != T::zero() || c.im != T::zero());
        debug_assert!(coeffs.windows(2).all(|w| w[0].0 < w[1].0), "duplicate frequency");
        let tail_bound = if tail_bound < T::zero() { T::zero() } else { tail_bound };
        // The L² defect never exceeds the summed-coefficient defect.
        let tail_l2 = tail_l2.max(T::zero()).min(tail_bound);
        FourierElement { coeffs, tail_bound, tail_l2, exact_stored }
    }

    pub fn zero() -> Self {
        FourierElement::normalized(Vec::new(), T::zero(), T::zero(), true)
    }

    /// Exact trigonometric polynomial with the given coefficients.
    pub fn from_pairs(pairs: Vec<(i64, Cx<T>)>) -> Result<Self, FourierError> {
        let mut seen = pairs.iter().map(|&(n, _)| n).collect::<Vec<_>>();
        seen.sort_unstable();
        for w in seen.windows(2) {
            if w[0] == w[1] {
                return Err(FourierError::DuplicateFrequency(w[0]));
            }
        }
        Ok(FourierElement::normalized(pairs, T::zero(), T::zero(), true))
    }

    /// The character e_k (coefficient 1 at frequency k).
    pub fn character(k: i64) -> Self {
        FourierElement::normalized(vec![(k, Cx::new(T::one(), T::zero()))], T::zero(), T::zero(), true)
    }

    /// Indicator of the arc, truncated at |n| ≤ truncation.
    ///
    /// Stored coefficients are exact: c_0 = h/π, c_n = sin(nh)/(πn). The
    /// summed-coefficient budget is infinite (the full series is not
    /// absolutely convergent); the L² budget is exact by the Plancherel
    /// identity: ‖defect‖₂² = h/π − Σ_stored |c_n|².
    pub fn from_indicator(iv: Interval<T>, truncation: usize) -> Self {
        assert!(truncation >= 1, "truncation must be at least 1");
        let h = iv.half_width();
        let pi = T::PI();
        let mut coeffs = Vec::with_capacity(2 * truncation + 1);
        for n in 1..=truncation as i64 {
            let nf = T::from_i64(n).expect("frequency fits scalar");
            let c = (nf * h).sin() / (pi * nf);
            coeffs.push((n, Cx::new(c, T::zero())));
            coeffs.push((-n, Cx::new(c, T::zero())));
        }
        coeffs.push((0, Cx::new(iv.measure(), T::zero())));
        let stored_energy = kahan_sum(coeffs.iter().map(|&(_, c)| c.re * c.re));
        let tail_sq = (iv.measure() - stored_energy).max(T::zero());
        FourierElement::normalized(coeffs, T::infinity(), tail_sq.sqrt(), true)
    }

    // ─── accessors ───

    pub fn coeff(&self, n: i64) -> Cx<T> {
        match self.coeffs.binary_search_by_key(&n, |&(m, _)| m) {
            Ok(i) => self.coeffs[i].1,
            Err(_) => Cx::new(T::zero(), T::zero()),
        }
    }

    pub fn coeffs(&self) -> &[(i64, Cx<T>)] {
        &self.coeffs
    }

    pub fn tail_bound(&self) -> T {
        self.tail_bound
    }

    pub fn tail_l2(&self) -> T {
        self.tail_l2
    }

    pub fn is_exact_stored(&self) -> bool {
        self.exact_stored
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    fn stored_abs_sum(&self) -> T {
        kahan_sum(self.coeffs.iter().map(|&(_, c)| c.norm()))
    }

    fn stored_sq_sum(&self) -> T {
        kahan_sum(self.coeffs.iter().map(|&(_, c)| c.norm_sqr()))
    }

    fn defect_is_zero(&self) -> bool {
        self.tail_bound == T::zero()
    }

    // ─── norms ───

    /// Certified bracket for the summed-coefficient (algebra) norm.
    pub fn norm_a(&self) -> (T, T) {
        let s = self.stored_abs_sum();
        if self.exact_stored {
            // Defect lives off the stored support, so norms add.
            (s, s + self.tail_bound)
        } else {
            ((s - self.tail_bound).max(T::zero()), s + self.tail_bound)
        }
    }

    /// Certified bracket for the L² norm under normalized Haar measure.
    pub fn norm_l2(&self) -> (T, T) {
        let sq = self.stored_sq_sum();
        let s = sq.sqrt();
        if self.exact_stored {
            // Orthogonal defect: energies add exactly.
            let hi = if self.tail_l2.is_infinite() {
                T::infinity()
            } else {
                (sq + self.tail_l2 * self.tail_l2).sqrt()
            };
            (s, hi)
        } else {
            ((s - self.tail_l2).max(T::zero()), s + self.tail_l2)
        }
    }

    /// Value of the stored polynomial at t, plus a bound on how far the true
    /// function can be from it (its defect in sup norm is at most the
    /// summed-coefficient budget).
    pub fn eval(&self, t: T) -> (Cx<T>, T) {
        let mut re_terms = Vec::with_capacity(self.coeffs.len());
        let mut im_terms = Vec::with_capacity(self.coeffs.len());
        for &(n, c) in &self.coeffs {
            let angle = T::from_i64(n).expect("frequency fits scalar") * t;
            let (s, co) = angle.sin_cos();
            re_terms.push(c.re * co - c.im * s);
            im_terms.push(c.re * s + c.im * co);
        }
        (Cx::new(kahan_sum(re_terms), kahan_sum(im_terms)), self.tail_bound)
    }

    /// Certified lower bound on the sup norm of the true function: the best
    /// grid value of the stored polynomial minus the sup-norm defect budget.
    pub fn sup_norm_lower(&self, grid: usize) -> T {
        assert!(grid >= 1, "grid must be at least 1");
        let two_pi = T::PI() + T::PI();
        let g = T::from_usize(grid).expect("grid fits scalar");
        let mut best = T::zero();
        for k in 0..grid {
            let s = -T::PI() + two_pi * T::from_usize(k).expect("grid index") / g;
            let v = self.eval(s).0.norm();
            if v > best {
                best = v;
            }
        }
        (best - self.tail_bound).max(T::zero())
    }

    // ─── linear structure ───

    pub fn scale(&self, a: Cx<T>) -> Self {
        let m = a.norm();
        let coeffs = self.coeffs.iter().map(|&(n, c)| (n, c * a)).collect();
        FourierElement::normalized(coeffs, mul0(self.tail_bound, m), mul0(self.tail_l2, m), self.exact_stored)
    }

    pub fn scale_real(&self, a: T) -> Self {
        self.scale(Cx::new(a, T::zero()))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + other.coeffs.len());
        let (mut i, mut j) = (0, 0);
        while i < self.coeffs.len() || j < other.coeffs.len() {
            match (self.coeffs.get(i), other.coeffs.get(j)) {
                (Some(&(n, c)), Some(&(m, d))) if n == m => {
                    coeffs.push((n, c + d));
                    i += 1;
                    j += 1;
                }
                (Some(&(n, c)), Some(&(m, _))) if n < m => {
                    coeffs.push((n, c));
                    i += 1;
                }
                (Some(_), Some(&(m, d))) => {
                    coeffs.push((m, d));
                    j += 1;
                }
                (Some(&(n, c)), None) => {
                    coeffs.push((n, c));
                    i += 1;
                }
                (None, Some(&(m, d))) => {
                    coeffs.push((m, d));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        let exact = self.exact_stored
            && other.exact_stored
            && ((self.defect_is_zero() && other.defect_is_zero())
                || (self.defect_is_zero() && support_subset(&self.coeffs, &other.coeffs))
                || (other.defect_is_zero() && support_subset(&other.coeffs, &self.coeffs))
                || same_support(&self.coeffs, &other.coeffs));
        FourierElement::normalized(coeffs, self.tail_bound + other.tail_bound, self.tail_l2 + other.tail_l2, exact)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale_real(-T::one()))
    }

    // ─── rearrangements ───

    /// Shift of the function by t (coefficient at n gains the phase e^{int}).
    pub fn translate(&self, t: T) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&(n, c)| {
                let angle = T::from_i64(n).expect("frequency fits scalar") * t;
                let (s, co) = angle.sin_cos();
                (n, c * Cx::new(co, s))
            })
            .collect();
        FourierElement::normalized(coeffs, self.tail_bound, self.tail_l2, self.exact_stored)
    }

    /// Frequency dilation: the coefficient at k moves to k·n.
    pub fn dilate(&self, n: u32) -> Self {
        assert!(n >= 1, "dilation factor must be at least 1");
        let f = n as i64;
        let coeffs = self
            .coeffs
            .iter()
            .map(|&(k, c)| (k.checked_mul(f).expect("dilated frequency overflows"), c))
            .collect();
        FourierElement::normalized(coeffs, self.tail_bound, self.tail_l2, self.exact_stored)
    }

    /// Reflection s ↦ -s: the coefficient at n moves to -n.
    pub fn reflect(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|&(n, c)| (-n, c)).collect();
        FourierElement::normalized(coeffs, self.tail_bound, self.tail_l2, self.exact_stored)
    }

    /// Multiplication by the character e_k: every frequency shifts by k.
    pub fn mul_by_char(&self, k: i64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&(n, c)| (n.checked_add(k).expect("shifted frequency overflows"), c))
            .collect();
        FourierElement::normalized(coeffs, self.tail_bound, self.tail_l2, self.exact_stored)
    }

    // ─── multiplicative structure ───

    /// Convolution: coefficients multiply pointwise.
    ///
    /// The defect budget takes, independently for each of the three error
    /// sources (other's defect against own stored mass, own defect against
    /// other's stored mass, defect times defect), the better of a sup × ℓ¹
    /// bound and a Cauchy–Schwarz ℓ² × ℓ² bound. When one side is exact the
    /// opposing stored mass only counts outside the shared support, which is
    /// what lets an indicator's infinite summed budget collapse to its
    /// finite ℓ² tail.
    pub fn convolve(&self, other: &Self) -> Self {
        let mut coeffs = Vec::new();
        let mut x_excl_sup = T::zero();
        let mut x_excl_sq = Vec::new();
        let mut x_all_sup = T::zero();
        let mut y_excl_sup = T::zero();
        let mut y_excl_sq = Vec::new();
        let mut y_all_sup = T::zero();
        let (mut i, mut j) = (0, 0);
        while i < self.coeffs.len() || j < other.coeffs.len() {
            match (self.coeffs.get(i), other.coeffs.get(j)) {
                (Some(&(n, c)), Some(&(m, d))) if n == m => {
                    coeffs.push((n, c * d));
                    x_all_sup = x_all_sup.max(c.norm());
                    y_all_sup = y_all_sup.max(d.norm());
                    i += 1;
                    j += 1;
                }
                (Some(&(_, c)), Some(&(m, _))) if self.coeffs[i].0 < m => {
                    let a = c.norm();
                    x_excl_sup = x_excl_sup.max(a);
                    x_all_sup = x_all_sup.max(a);
                    x_excl_sq.push(a * a);
                    i += 1;
                }
                (Some(_), Some(&(_, d))) => {
                    let a = d.norm();
                    y_excl_sup = y_excl_sup.max(a);
                    y_all_sup = y_all_sup.max(a);
                    y_excl_sq.push(a * a);
                    j += 1;
                }
                (Some(&(_, c)), None) => {
                    let a = c.norm();
                    x_excl_sup = x_excl_sup.max(a);
                    x_all_sup = x_all_sup.max(a);
                    x_excl_sq.push(a * a);
                    i += 1;
                }
                (None, Some(&(_, d))) => {
                    let a = d.norm();
                    y_excl_sup = y_excl_sup.max(a);
                    y_all_sup = y_all_sup.max(a);
                    y_excl_sq.push(a * a);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        let x_excl_l2 = kahan_sum(x_excl_sq).sqrt();
        let y_excl_l2 = kahan_sum(y_excl_sq).sqrt();
        let x_all_l2 = self.stored_sq_sum().sqrt();
        let y_all_l2 = other.stored_sq_sum().sqrt();

        // Error from other's defect hitting own stored coefficients; if the
        // other side is exact its defect avoids the shared support.
        let (x_dom_sup, x_dom_l2) = if other.exact_stored { (x_excl_sup, x_excl_l2) } else { (x_all_sup, x_all_l2) };
        let (y_dom_sup, y_dom_l2) = if self.exact_stored { (y_excl_sup, y_excl_l2) } else { (y_all_sup, y_all_l2) };

        let t1 = mul0(other.tail_bound, x_dom_sup).min(mul0(other.tail_l2, x_dom_l2));
        let t2 = mul0(self.tail_bound, y_dom_sup).min(mul0(self.tail_l2, y_dom_l2));
        let cross = mul0(self.tail_bound, other.tail_bound).min(mul0(self.tail_l2, other.tail_l2));
        let err1 = t1 + t2 + cross;
        let err2_direct = mul0(x_dom_sup, other.tail_l2) + mul0(y_dom_sup, self.tail_l2) + mul0(self.tail_l2, other.tail_l2);
        let err2 = err1.min(err2_direct);
        let exact = self.exact_stored && other.exact_stored;
        FourierElement::normalized(coeffs, err1, err2, exact)
    }

    /// Pointwise product of the functions: coefficients convolve.
    ///
    /// Error smears across all frequencies, so exactness survives only when
    /// both defects are exactly zero.
    pub fn pointwise_mul(&self, other: &Self) -> Self {
        let mut acc: std::collections::BTreeMap<i64, Cx<T>> = std::collections::BTreeMap::new();
        for &(n, c) in &self.coeffs {
            for &(m, d) in &other.coeffs {
                let k = n.checked_add(m).expect("product frequency overflows");
                let e = acc.entry(k).or_insert_with(|| Cx::new(T::zero(), T::zero()));
                *e = *e + c * d;
            }
        }
        let coeffs: Vec<(i64, Cx<T>)> = acc.into_iter().collect();
        let sx = self.stored_abs_sum();
        let sy = other.stored_abs_sum();
        let err1 = mul0(sx + self.tail_bound, other.tail_bound) + mul0(self.tail_bound, sy);
        let err2 = mul0(sx + self.tail_bound, other.tail_l2) + mul0(self.tail_l2, sy);
        let exact = self.defect_is_zero() && other.defect_is_zero();
        FourierElement::normalized(coeffs, err1, err2, exact)
    }
}

fn support_subset<T: Real>(inner: &[(i64, Cx<T>)], outer: &[(i64, Cx<T>)]) -> bool {
    let mut j = 0;
    'outer: for &(n, _) in inner {
        while j < outer.len() {
            match outer[j].0.cmp(&n) {
                std::cmp::Ordering::Less => j += 1,
                std::cmp::Ordering::Equal => continue 'outer,
                std::cmp::Ordering::Greater => return false,
            }
        }
        return false;
    }
    true
}

fn same_support<T: Real>(a: &[(i64, Cx<T>)], b: &[(i64, Cx<T>)]) -> bool {
    a.len() == b.len() && a.iter().zip(b.iter()).all(|(&(n, _), &(m, _))| n == m)
}
