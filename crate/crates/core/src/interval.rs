//! Interval arithmetic with exact rational endpoints.
//!
//! Intervals never round: endpoints are exact rationals, so every computed
//! enclosure is rigorous by construction. Complex values are enclosed by
//! axis-aligned boxes (a rectangle interval for the real and imaginary part).

use crate::poly::Poly;
use crate::rat::{sqrt_enclosure, Rat};
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RatInterval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "inverted interval");
        RatInterval { lo, hi }
    }

    pub fn point(x: Rat) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn zero() -> Self {
        RatInterval::point(Rat::zero())
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains_interval(&self, other: &RatInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &RatInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn add(&self, rhs: &Self) -> Self {
        RatInterval::new(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        RatInterval::new(&self.lo - &rhs.hi, &self.hi - &rhs.lo)
    }

    pub fn neg(&self) -> Self {
        RatInterval::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let cands = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if *c < lo {
                lo = c.clone();
            }
            if *c > hi {
                hi = c.clone();
            }
        }
        RatInterval { lo, hi }
    }

    pub fn mul_scalar(&self, c: &Rat) -> Self {
        if c.is_negative() {
            RatInterval::new(&self.hi * c, &self.lo * c)
        } else {
            RatInterval::new(&self.lo * c, &self.hi * c)
        }
    }

    /// Reciprocal; requires the interval to exclude zero.
    pub fn recip(&self) -> Self {
        assert!(!self.contains_zero(), "reciprocal of interval containing 0");
        RatInterval::new(Rat::from_integer(1.into()) / self.hi.clone(),
                         Rat::from_integer(1.into()) / self.lo.clone())
    }

    pub fn square(&self) -> Self {
        if !self.lo.is_negative() {
            RatInterval::new(&self.lo * &self.lo, &self.hi * &self.hi)
        } else if !self.hi.is_positive() {
            RatInterval::new(&self.hi * &self.hi, &self.lo * &self.lo)
        } else {
            let a = &self.lo * &self.lo;
            let b = &self.hi * &self.hi;
            RatInterval::new(Rat::zero(), a.max(b))
        }
    }

    /// Enclosure of |x| for x in the interval.
    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            RatInterval::new(Rat::zero(), self.lo.abs().max(self.hi.abs()))
        }
    }

    /// Certified sqrt enclosure (requires lo >= 0).
    pub fn sqrt(&self, bits: u32) -> Self {
        let (lo, _) = sqrt_enclosure(&self.lo, bits);
        let (_, hi) = sqrt_enclosure(&self.hi, bits);
        RatInterval::new(lo, hi)
    }

    pub fn split(&self) -> (Self, Self) {
        let m = self.midpoint();
        (
            RatInterval::new(self.lo.clone(), m.clone()),
            RatInterval::new(m, self.hi.clone()),
        )
    }
}

/// Axis-aligned rectangle enclosing a complex value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBox {
    pub re: RatInterval,
    pub im: RatInterval,
}

impl ComplexBox {
    pub fn new(re: RatInterval, im: RatInterval) -> Self {
        ComplexBox { re, im }
    }

    pub fn point(re: Rat, im: Rat) -> Self {
        ComplexBox {
            re: RatInterval::point(re),
            im: RatInterval::point(im),
        }
    }

    pub fn real(iv: RatInterval) -> Self {
        ComplexBox {
            re: iv,
            im: RatInterval::zero(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_point() && self.im.lo.is_zero()
    }

    pub fn width(&self) -> Rat {
        self.re.width().max(self.im.width())
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        ComplexBox {
            re: self.re.add(&rhs.re),
            im: self.im.add(&rhs.im),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        ComplexBox {
            re: self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            im: self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        }
    }

    pub fn add_scalar(&self, c: &Rat) -> Self {
        ComplexBox {
            re: RatInterval::new(&self.re.lo + c, &self.re.hi + c),
            im: self.im.clone(),
        }
    }

    /// Enclosure of |z|^2 = re^2 + im^2.
    pub fn abs_squared(&self) -> RatInterval {
        self.re.square().add(&self.im.square())
    }

    /// Certified enclosure of |z|.
    pub fn abs(&self, bits: u32) -> RatInterval {
        self.abs_squared().sqrt(bits)
    }

    /// Conjugate box (mirror across the real axis).
    pub fn conj(&self) -> Self {
        ComplexBox {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }
}

/// Interval Horner evaluation of a polynomial on a real interval.
pub fn eval_poly_interval(f: &Poly, x: &RatInterval) -> RatInterval {
    let mut acc = RatInterval::zero();
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(x).add(&RatInterval::point(c.clone()));
    }
    acc
}

/// Interval Horner evaluation of a polynomial on a complex box.
pub fn eval_poly_box(f: &Poly, z: &ComplexBox) -> ComplexBox {
    let mut acc = ComplexBox::point(Rat::zero(), Rat::zero());
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(z).add_scalar(c);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    #[test]
    fn interval_mul_covers_products() {
        let a = RatInterval::new(rat_int(-2), rat_int(3));
        let b = RatInterval::new(rat_int(1), rat_int(4));
        let p = a.mul(&b);
        assert_eq!(p.lo, rat_int(-8));
        assert_eq!(p.hi, rat_int(12));
        assert!(a.square().lo.is_zero());
    }

    #[test]
    fn poly_eval_on_interval_encloses_point_values() {
        let f = Poly::from_int_coeffs(&[1, 1, 0, 1]); // x^3 + x + 1
        let x = RatInterval::new(rat(-3, 4), rat(-1, 2));
        let img = eval_poly_interval(&f, &x);
        for t in [rat(-3, 4), rat(-5, 8), rat(-1, 2)] {
            assert!(img.contains(&f.eval(&t)));
        }
    }

    #[test]
    fn complex_box_abs_of_i_contains_one() {
        // box around i
        let z = ComplexBox::new(
            RatInterval::new(rat(-1, 8), rat(1, 8)),
            RatInterval::new(rat(7, 8), rat(9, 8)),
        );
        let a = z.abs(32);
        assert!(a.contains(&rat_int(1)));
    }
}
