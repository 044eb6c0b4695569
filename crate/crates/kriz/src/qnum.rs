//! Exact rational scalars.
//!
//! Everything in this crate is computed over the rationals with
//! arbitrary-precision integers; there is no floating point anywhere.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q_zero() -> Q {
    Q::zero()
}

pub fn q_one() -> Q {
    Q::one()
}

/// Rational from an integer.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Rational from numerator and denominator.
pub fn qr(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Parse `p/q` or a plain integer.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Q::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().ok()?;
            Some(Q::from_integer(p))
        }
    }
}

/// Canonical text form: integers without denominator, otherwise `p/q`.
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `(-1)^e` as a rational.
pub fn sign_pow(e: usize) -> Q {
    if e.is_multiple_of(2) {
        q_one()
    } else {
        -q_one()
    }
}

/// True if `x` is a nonnegative integer.
pub fn is_nonneg_int(x: &Q) -> bool {
    x.denom().is_one() && !x.numer().is_negative()
}
