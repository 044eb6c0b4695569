//! Exact sums of roots of unity.
//!
//! Induction of one-dimensional characters needs sums of values of the form
//! `+/- zeta_M^e`. Such a sum is kept as a coefficient vector over
//! `1, zeta, ..., zeta^{M-1}` and reduced modulo the `M`-th cyclotomic
//! polynomial to decide rationality.

use num::Zero;

use crate::qnum::{q_one, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyclotomic {
    order: usize,
    coeffs: Vec<Q>,
}

impl Cyclotomic {
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1);
        Cyclotomic {
            order,
            coeffs: vec![Q::zero(); order],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Add `c * zeta^e`.
    pub fn add_root(&mut self, exponent: usize, c: Q) {
        let e = exponent % self.order;
        self.coeffs[e] += c;
    }

    pub fn add(&mut self, other: &Cyclotomic) {
        assert_eq!(self.order, other.order);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b.clone();
        }
    }

    pub fn scale(&mut self, c: &Q) {
        for a in self.coeffs.iter_mut() {
            *a *= c.clone();
        }
    }

    /// Reduce modulo the cyclotomic polynomial; `Some(value)` exactly when
    /// the sum is rational.
    pub fn to_rational(&self) -> Option<Q> {
        let phi = cyclotomic_polynomial(self.order);
        let rem = poly_rem(&self.coeffs, &phi);
        if rem.iter().skip(1).all(|c| c.is_zero()) {
            Some(rem.first().cloned().unwrap_or_else(Q::zero))
        } else {
            None
        }
    }
}

/// Coefficients of the `m`-th cyclotomic polynomial, ascending degree.
pub fn cyclotomic_polynomial(m: usize) -> Vec<Q> {
    // x^m - 1 over the product of the proper-divisor cyclotomics
    let mut num = vec![Q::zero(); m + 1];
    num[0] = -q_one();
    num[m] = q_one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            num = poly_div_exact(&num, &phi_d);
        }
    }
    while num.last().is_some_and(|c| c.is_zero()) {
        num.pop();
    }
    num
}

/// Exact quotient of polynomials (remainder must vanish).
fn poly_div_exact(num: &[Q], den: &[Q]) -> Vec<Q> {
    let (q, r) = poly_divmod(num, den);
    debug_assert!(r.iter().all(|c| c.is_zero()));
    q
}

fn poly_rem(num: &[Q], den: &[Q]) -> Vec<Q> {
    poly_divmod(num, den).1
}

fn poly_divmod(num: &[Q], den: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let deg = |p: &[Q]| p.iter().rposition(|c| !c.is_zero());
    let dd = deg(den).expect("division by zero polynomial");
    let lead = den[dd].clone();
    let mut rem: Vec<Q> = num.to_vec();
    let mut quot = vec![Q::zero(); num.len()];
    while let Some(dr) = deg(&rem) {
        if dr < dd {
            break;
        }
        let factor = rem[dr].clone() / lead.clone();
        let shift = dr - dd;
        quot[shift] += factor.clone();
        for (i, c) in den.iter().enumerate() {
            if !c.is_zero() {
                rem[i + shift] -= factor.clone() * c.clone();
            }
        }
    }
    (quot, rem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qnum::qi;

    fn as_i64(p: &[Q]) -> Vec<i64> {
        p.iter()
            .map(|c| {
                assert!(c.is_integer());
                c.numer().to_string().parse().unwrap()
            })
            .collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(as_i64(&cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(as_i64(&cyclotomic_polynomial(2)), vec![1, 1]);
        assert_eq!(as_i64(&cyclotomic_polynomial(3)), vec![1, 1, 1]);
        assert_eq!(as_i64(&cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(as_i64(&cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(as_i64(&cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn full_orbit_sums_are_rational() {
        // 1 + zeta + ... + zeta^{M-1} = 0 for M > 1
        for m in 2..=12 {
            let mut c = Cyclotomic::zero(m);
            for e in 0..m {
                c.add_root(e, qi(1));
            }
            assert_eq!(c.to_rational(), Some(qi(0)));
        }
        // zeta_3 + zeta_3^2 = -1
        let mut c = Cyclotomic::zero(3);
        c.add_root(1, qi(1));
        c.add_root(2, qi(1));
        assert_eq!(c.to_rational(), Some(qi(-1)));
    }

    #[test]
    fn irrational_sums_are_detected() {
        let mut c = Cyclotomic::zero(5);
        c.add_root(1, qi(1));
        assert_eq!(c.to_rational(), None);
        let mut c = Cyclotomic::zero(8);
        c.add_root(1, qi(1));
        c.add_root(7, qi(1)); // 2 cos(pi/4) = sqrt 2
        assert_eq!(c.to_rational(), None);
    }
}
