//! Exact rational helpers shared across the crate.
//!
//! Everything here is arbitrary precision; there is no floating point in
//! any computation path. Floats appear only in display rendering.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Shorthand used across the crate for exact rationals.
pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `"p/q"` (q always printed, so parsing is unambiguous).
pub fn rat_to_string(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn rat_from_string(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rat::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(Rat::from_integer(n))
    }
}

/// Decimal rendering for reports. The exact form stays authoritative;
/// this is only for human-facing columns.
pub fn rat_to_f64(x: &Rat) -> f64 {
    let f = x.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
    let g = x.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
    f / g
}

/// 2^k as a rational, k possibly negative.
pub fn pow2(k: i64) -> Rat {
    let one = BigInt::one();
    if k >= 0 {
        Rat::from_integer(one << (k as usize))
    } else {
        Rat::new(one.clone(), one << ((-k) as usize))
    }
}

/// Floor of the integer square root (input must be non-negative).
fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of negative integer");
    num_integer::Roots::sqrt(n)
}

/// Certified enclosure `[lo, hi]` of sqrt(q) with `hi - lo <= 2^-bits`.
///
/// lo and hi satisfy lo^2 <= q <= hi^2 exactly; both are non-negative.
pub fn sqrt_enclosure(q: &Rat, bits: u32) -> (Rat, Rat) {
    assert!(!q.is_negative(), "sqrt of negative rational");
    if q.is_zero() {
        return (Rat::zero(), Rat::zero());
    }
    // sqrt(n/d) = sqrt(n*d)/d; scale by 4^k so the integer sqrt carries
    // k extra correct bits.
    let n = q.numer();
    let d = q.denom();
    let t = n * d;
    let k = bits as usize + d.bits() as usize + 1;
    let scaled = &t << (2 * k);
    let r = isqrt(&scaled);
    let denom = d * (BigInt::one() << k);
    let lo = Rat::new(r.clone(), denom.clone());
    let hi = Rat::new(r + 1, denom);
    debug_assert!(&lo * &lo <= *q && *q <= &hi * &hi);
    (lo, hi)
}

/// Exact p-adic valuation of a nonzero rational (v_p(num) - v_p(den)).
pub fn padic_valuation(x: &Rat, p: &BigInt) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    fn vp(mut n: BigInt, p: &BigInt) -> i64 {
        let mut v = 0;
        n = n.abs();
        loop {
            let (q, r) = num_integer::Integer::div_rem(&n, p);
            if r.is_zero() {
                v += 1;
                n = q;
            } else {
                return v;
            }
        }
    }
    Some(vp(x.numer().clone(), p) - vp(x.denom().clone(), p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render_round_trip() {
        for s in ["3/4", "-7/2", "0/1", "12"] {
            let x = rat_from_string(s).unwrap();
            let y = rat_from_string(&rat_to_string(&x)).unwrap();
            assert_eq!(x, y);
        }
        assert!(rat_from_string("1/0").is_none());
        assert!(rat_from_string("x").is_none());
    }

    #[test]
    fn sqrt_enclosure_brackets_the_root() {
        let q = rat(2, 1);
        let (lo, hi) = sqrt_enclosure(&q, 80);
        assert!(&lo * &lo <= q && q <= &hi * &hi);
        assert!(&hi - &lo <= pow2(-80));

        let q = rat(9, 4);
        let (lo, hi) = sqrt_enclosure(&q, 40);
        assert!(lo <= rat(3, 2) && rat(3, 2) <= hi);
    }

    #[test]
    fn padic_valuations() {
        let two = BigInt::from(2);
        assert_eq!(padic_valuation(&rat_int(36), &BigInt::from(3)), Some(2));
        assert_eq!(padic_valuation(&rat(1, 8), &two), Some(-3));
        assert_eq!(padic_valuation(&rat_int(0), &two), None);
    }
}
