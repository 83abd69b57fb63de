//! Dense univariate polynomials over the exact rationals.
//!
//! Coefficients are stored in ascending order with no trailing zeros
//! (the zero polynomial is the empty vector). All arithmetic is exact.

use crate::rat::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{}", a)?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", a)?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{}", i)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly { coeffs: vec![c] }.normalized()
    }

    pub fn x() -> Self {
        Poly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        Poly { coeffs }.normalized()
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| crate::rat::rat_int(c)).collect())
    }

    pub fn from_bigint_coeffs(coeffs: &[BigInt]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect())
    }

    /// x^k - 1, used by the Kronecker test.
    pub fn x_pow_minus_one(k: usize) -> Self {
        let mut c = vec![Rat::zero(); k + 1];
        c[0] = -Rat::one();
        c[k] = Rat::one();
        Poly::from_coeffs(c)
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with zero treated as 0 (callers must know the input is nonzero).
    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        Poly::from_coeffs(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); k];
        out.extend(self.coeffs.iter().cloned());
        Poly { coeffs: out }
    }

    /// Euclidean division; rhs must be nonzero.
    pub fn divrem(&self, rhs: &Self) -> (Self, Self) {
        assert!(!rhs.is_zero(), "polynomial division by zero");
        let dlead = rhs.leading();
        let db = rhs.deg();
        let mut rem = self.clone();
        let mut quo = Poly::zero();
        while !rem.is_zero() && rem.deg() >= db {
            let k = rem.deg() - db;
            let c = rem.leading() / dlead.clone();
            let term = Poly::constant(c).shift_up(k);
            quo = quo.add(&term);
            rem = rem.sub(&term.mul(rhs));
        }
        (quo, rem)
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, rhs: &Self) -> Self {
        let (q, r) = self.divrem(rhs);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let lead = self.leading();
        self.scale(&(Rat::one() / lead))
    }

    /// Monic gcd over the rationals.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.primitive_signless();
        let mut b = rhs.primitive_signless();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.primitive_signless();
        }
        a.monic()
    }

    /// Divides by the content (positive rational), preserving signs.
    fn primitive_signless(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let content = Rat::new(num_gcd, den_lcm);
        self.scale(&(Rat::one() / content))
    }

    /// Clears denominators and divides out integer content; leading sign kept.
    pub fn primitive_integer(&self) -> Self {
        self.primitive_signless()
    }

    /// squarefree part f / gcd(f, f'), monic.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            self.monic()
        } else {
            self.div_exact(&g).monic()
        }
    }

    /// Yun's squarefree decomposition: returns monic factors with their
    /// multiplicities, so self = lc * prod f_i^{m_i}.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, usize)> {
        assert!(!self.is_zero());
        let f = self.monic();
        if f.deg() == 0 {
            return Vec::new();
        }
        let df = f.derivative();
        let g = f.gcd(&df);
        if g.degree() == Some(0) {
            return vec![(f, 1)];
        }
        let mut out = Vec::new();
        let mut c = f.div_exact(&g);
        let mut d = df.div_exact(&g).sub(&c.derivative());
        let mut i = 1usize;
        while c.deg() > 0 {
            let p = c.gcd(&d);
            if p.deg() > 0 {
                out.push((p.clone(), i));
            }
            c = c.div_exact(&p);
            d = d.div_exact(&p).sub(&c.derivative());
            i += 1;
        }
        out
    }

    /// Strictly positive bound M with all complex roots inside |z| < M.
    pub fn root_bound(&self) -> Rat {
        assert!(!self.is_zero());
        let lead = self.leading();
        let mut m = Rat::zero();
        for c in self.coeffs.iter().take(self.coeffs.len() - 1) {
            let q = (c / &lead).abs();
            if q > m {
                m = q;
            }
        }
        m + Rat::one()
    }

    /// Number of times (x - c) divides self.
    pub fn order_at(&self, c: &Rat) -> usize {
        assert!(!self.is_zero());
        let lin = Poly::from_coeffs(vec![-c.clone(), Rat::one()]);
        let mut f = self.clone();
        let mut k = 0;
        loop {
            let (q, r) = f.divrem(&lin);
            if r.is_zero() {
                k += 1;
                f = q;
                if f.is_zero() {
                    return k;
                }
            } else {
                return k;
            }
        }
    }
}

/// Sturm chain for exact real-root counting.
pub struct SturmChain {
    chain: Vec<Poly>,
}

impl SturmChain {
    pub fn new(f: &Poly) -> Self {
        let f = f.squarefree_part();
        let mut chain = vec![f.clone(), f.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[n - 2].divrem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.neg().primitive_integer());
        }
        SturmChain { chain }
    }

    fn variations(&self, x: &Rat) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.chain {
            let v = p.eval(x);
            let s = if v.is_zero() {
                continue;
            } else if v.is_positive() {
                1
            } else {
                -1
            };
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct real roots in the half-open interval (a, b].
    pub fn count_roots(&self, a: &Rat, b: &Rat) -> usize {
        assert!(a <= b);
        self.variations(a) - self.variations(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    #[test]
    fn divrem_and_gcd() {
        // (x^2 - 1) = (x - 1)(x + 1)
        let f = Poly::from_int_coeffs(&[-1, 0, 1]);
        let g = Poly::from_int_coeffs(&[-1, 1]);
        let (q, r) = f.divrem(&g);
        assert!(r.is_zero());
        assert_eq!(q, Poly::from_int_coeffs(&[1, 1]));

        let h = Poly::from_int_coeffs(&[1, 1]);
        assert_eq!(f.gcd(&h), h.monic());
        let coprime = Poly::from_int_coeffs(&[1, 0, 1]);
        assert!(f.gcd(&coprime).is_one());
    }

    #[test]
    fn squarefree_decomposition_recovers_multiplicities() {
        // (x-1)^2 (x+2)
        let f = Poly::from_int_coeffs(&[-1, 1])
            .mul(&Poly::from_int_coeffs(&[-1, 1]))
            .mul(&Poly::from_int_coeffs(&[2, 1]));
        let dec = f.squarefree_decomposition();
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[0], (Poly::from_int_coeffs(&[2, 1]), 1));
        assert_eq!(dec[1], (Poly::from_int_coeffs(&[-1, 1]), 2));
        let sf = f.squarefree_part();
        assert_eq!(sf, Poly::from_int_coeffs(&[-2, 1, 1]).monic());
    }

    #[test]
    fn sturm_counts_real_roots() {
        // x^2 - x - 1: roots at (1±sqrt5)/2
        let f = Poly::from_int_coeffs(&[-1, -1, 1]);
        let chain = SturmChain::new(&f);
        let bound = f.root_bound();
        assert_eq!(chain.count_roots(&-bound.clone(), &bound), 2);
        assert_eq!(chain.count_roots(&rat_int(0), &rat_int(2)), 1);
        assert_eq!(chain.count_roots(&rat_int(-1), &rat_int(0)), 1);

        // x^2 + 1 has no real roots
        let g = Poly::from_int_coeffs(&[1, 0, 1]);
        let chain = SturmChain::new(&g);
        let bound = g.root_bound();
        assert_eq!(chain.count_roots(&-bound.clone(), &bound), 0);

        // x^3 + x + 1 has one real root in (-1, 0)
        let h = Poly::from_int_coeffs(&[1, 1, 0, 1]);
        let chain = SturmChain::new(&h);
        assert_eq!(chain.count_roots(&rat_int(-1), &rat_int(0)), 1);
        assert_eq!(chain.count_roots(&rat_int(0), &rat_int(2)), 0);
    }

    #[test]
    fn order_at_detects_linear_factors() {
        let f = Poly::from_int_coeffs(&[0, 0, 1]); // x^2
        assert_eq!(f.order_at(&rat_int(0)), 2);
        assert_eq!(f.order_at(&rat_int(1)), 0);
        let g = Poly::from_int_coeffs(&[-1, -1, 1]);
        assert_eq!(g.order_at(&rat(1, 2)), 0);
    }
}
