//! Certified evaluation channels ("places") for ring elements.
//!
//! Archimedean places are isolated complex roots of the squarefree part of
//! the modulus; evaluating an element's lift over the root box gives a
//! rigorous enclosure of |sigma(alpha)|. Non-archimedean channels are p-adic
//! valuations read off Newton polygons of characteristic polynomials, and
//! the order of vanishing at a rational center (or at infinity) on Q(t).

use crate::error::{Error, Result};
use crate::field::{IrreducibleHint, Ring, RingElement, RingKind};
use crate::interval::{eval_poly_box, ComplexBox, RatInterval};
use crate::poly::Poly;
use crate::rat::{padic_valuation, pow2, rat_int, Rat};
use crate::roots::{self, RealRoot};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Certified enclosure of an absolute value: the true |sigma(alpha)| lies
/// in [lo, hi] with 0 <= lo <= hi.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbsEnclosure {
    pub lo: Rat,
    pub hi: Rat,
}

impl AbsEnclosure {
    fn from_interval(iv: RatInterval) -> Self {
        let lo = if iv.lo.is_negative() { Rat::zero() } else { iv.lo };
        AbsEnclosure { lo, hi: iv.hi }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// Enclosure of the k-th power (k may be negative if lo > 0).
    pub fn pow(&self, k: i64) -> AbsEnclosure {
        if k == 0 {
            return AbsEnclosure { lo: Rat::one(), hi: Rat::one() };
        }
        let e = k.unsigned_abs() as usize;
        let powed = |x: &Rat| -> Rat {
            let mut acc = Rat::one();
            for _ in 0..e {
                acc = acc * x;
            }
            acc
        };
        if k > 0 {
            AbsEnclosure { lo: powed(&self.lo), hi: powed(&self.hi) }
        } else {
            assert!(self.lo.is_positive(), "inverting an enclosure touching 0");
            AbsEnclosure {
                lo: Rat::one() / powed(&self.hi),
                hi: Rat::one() / powed(&self.lo),
            }
        }
    }
}

/// The outcome of an absolute-value evaluation: the enclosure is always
/// correct; the flag records that the requested width was not reached.
#[derive(Clone, Debug)]
pub struct AbsEval {
    pub enclosure: AbsEnclosure,
    pub budget_exhausted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArchRoot {
    Real(RealRoot),
    /// Upper-half-plane representative of a conjugate pair.
    Pair(ComplexBox),
}

/// An archimedean place: a certified isolating box for one root of the
/// squarefree part of the modulus (conjugate pairs share one place).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArchPlace {
    poly: Poly,
    index: usize,
    root: ArchRoot,
}

impl ArchPlace {
    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn root(&self) -> &ArchRoot {
        &self.root
    }

    pub fn is_pair(&self) -> bool {
        matches!(self.root, ArchRoot::Pair(_))
    }

    pub fn root_box(&self) -> ComplexBox {
        match &self.root {
            ArchRoot::Real(r) => r.to_box(),
            ArchRoot::Pair(b) => b.clone(),
        }
    }

    /// Rebuilds a place from parts (used by certificate re-validation).
    pub fn from_parts(poly: Poly, index: usize, root: ArchRoot) -> Self {
        ArchPlace { poly, index, root }
    }

    /// Same place with the root box narrowed to the target width. Returned
    /// boxes always nest inside previously returned ones.
    pub fn refine(&self, target_width: &Rat) -> Result<ArchPlace> {
        let root = match &self.root {
            ArchRoot::Real(r) => ArchRoot::Real(roots::refine_real(&self.poly, r, target_width)),
            ArchRoot::Pair(b) => {
                ArchRoot::Pair(roots::refine_complex(&self.poly, b, target_width)?)
            }
        };
        Ok(ArchPlace { poly: self.poly.clone(), index: self.index, root })
    }

    /// Interval image of a lift polynomial over the current root box.
    pub fn eval_box(&self, lift: &Poly) -> ComplexBox {
        eval_poly_box(lift, &self.root_box())
    }

    /// Certified |sigma(alpha)| enclosure, refining the root box until the
    /// enclosure width is at most 2^-precision_bits (or the budget runs
    /// out; the enclosure stays valid either way). Also returns the refined
    /// place so callers can keep the sharpened state.
    pub fn abs_of(&self, alpha: &RingElement, precision_bits: u32) -> Result<(AbsEval, ArchPlace)> {
        let lift = alpha.lift();
        let target = pow2(-(precision_bits as i64));
        let mut place = self.clone();
        let mut width = place.root_box().width();
        if width.is_zero() {
            width = Rat::one();
        }
        let max_rounds = precision_bits as usize + 72;
        for _ in 0..max_rounds {
            let enclosure = place.abs_now(&lift, precision_bits + 8);
            if enclosure.width() <= target {
                return Ok((AbsEval { enclosure, budget_exhausted: false }, place));
            }
            width = width / rat_int(4);
            place = place.refine(&width)?;
        }
        let enclosure = place.abs_now(&lift, precision_bits + 8);
        let exhausted = enclosure.width() > target;
        Ok((AbsEval { enclosure, budget_exhausted: exhausted }, place))
    }

    fn abs_now(&self, lift: &Poly, sqrt_bits: u32) -> AbsEnclosure {
        let val = self.eval_box(lift);
        match &self.root {
            ArchRoot::Real(_) => AbsEnclosure::from_interval(val.re.abs()),
            ArchRoot::Pair(_) => AbsEnclosure::from_interval(val.abs(sqrt_bits)),
        }
    }

    /// |sigma(alpha)|^2 enclosure without any square roots (used where the
    /// squared form suffices, e.g. products over conjugate pairs).
    pub fn abs_squared_now(&self, lift: &Poly) -> RatInterval {
        let val = self.eval_box(lift);
        match &self.root {
            ArchRoot::Real(_) => val.re.square(),
            ArchRoot::Pair(_) => val.abs_squared(),
        }
    }

    /// Tries to certify sigma(alpha) != 0 at this place by refining until
    /// the evaluation box excludes zero. Returns the refined place on
    /// success; None if the budget is exhausted (alpha may vanish here).
    pub fn certify_nonzero(
        &self,
        alpha: &RingElement,
        max_rounds: u32,
    ) -> Result<Option<ArchPlace>> {
        let lift = alpha.lift();
        if lift.is_zero() {
            return Ok(None);
        }
        let mut place = self.clone();
        let mut width = place.root_box().width();
        if width.is_zero() {
            // exact rational root: the evaluation is exact
            let v = place.eval_box(&lift);
            return Ok(if v.contains_zero() { None } else { Some(place) });
        }
        for _ in 0..max_rounds {
            if !place.eval_box(&lift).contains_zero() {
                return Ok(Some(place));
            }
            width = width / rat_int(4);
            place = place.refine(&width)?;
        }
        Ok(None)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TAdicCenter {
    Finite(Rat),
    Infinity,
}

impl std::fmt::Display for TAdicCenter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TAdicCenter::Finite(c) => write!(f, "{}", c),
            TAdicCenter::Infinity => write!(f, "inf"),
        }
    }
}

/// A certified evaluation channel for absolute values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    Archimedean(ArchPlace),
    /// The valuation is that of the chosen conjugate class (a Newton
    /// polygon slope of the relevant characteristic polynomial).
    PAdic { prime: u64, valuation: Rat },
    TAdic { center: TAdicCenter },
}

impl Place {
    pub fn describe(&self) -> String {
        match self {
            Place::Archimedean(p) => format!(
                "archimedean place #{} ({})",
                p.index(),
                if p.is_pair() { "conjugate pair" } else { "real" }
            ),
            Place::PAdic { prime, valuation } => {
                format!("{}-adic place (valuation {})", prime, valuation)
            }
            Place::TAdic { center } => format!("t-adic place at {}", center),
        }
    }
}

/// All archimedean places of a monic integer polynomial: real roots first
/// (ascending), then one place per conjugate pair, ordered by (re, im).
/// The squarefree part is taken internally.
pub fn archimedean_places(pi: &Poly, precision_bits: u32) -> Result<Vec<ArchPlace>> {
    let g = pi.squarefree_part().primitive_integer();
    let iso = roots::isolate(&g)?;
    let target = pow2(-(precision_bits as i64));
    let mut out = Vec::new();
    for r in &iso.real {
        out.push(ArchPlace {
            poly: g.clone(),
            index: out.len(),
            root: ArchRoot::Real(roots::refine_real(&g, r, &target)),
        });
    }
    for b in &iso.complex_upper {
        out.push(ArchPlace {
            poly: g.clone(),
            index: out.len(),
            root: ArchRoot::Pair(roots::refine_complex(&g, b, &target)?),
        });
    }
    Ok(out)
}

/// Archimedean places of a number ring's modulus.
pub fn ring_archimedean_places(ring: &Ring, precision_bits: u32) -> Result<Vec<ArchPlace>> {
    match ring.kind() {
        RingKind::NumberRing => archimedean_places(ring.modulus(), precision_bits),
        RingKind::FunctionField => Ok(Vec::new()),
    }
}

/// Certified |sigma(alpha)| at an archimedean place of alpha's own ring.
pub fn abs_arch(alpha: &RingElement, place: &Place, precision_bits: u32) -> Result<AbsEval> {
    let arch = match place {
        Place::Archimedean(p) => p,
        _ => return Err(Error::PlaceRingMismatch),
    };
    if alpha.parent().kind() != RingKind::NumberRing {
        return Err(Error::PlaceRingMismatch);
    }
    let expected = alpha.parent().modulus().squarefree_part().primitive_integer();
    if *arch.poly() != expected {
        return Err(Error::PlaceRingMismatch);
    }
    Ok(arch.abs_of(alpha, precision_bits)?.0)
}

/// The d valuations (with multiplicity) of the conjugates of alpha at the
/// places above p, as negated lower-hull slopes of charpoly(alpha) at p.
pub fn newton_polygon_valuations(alpha: &RingElement, p: u64) -> Result<Vec<Rat>> {
    if alpha.parent().kind() != RingKind::NumberRing {
        return Err(Error::FunctionFieldUnsupported);
    }
    if alpha.parent().irreducible_hint() != IrreducibleHint::Yes {
        return Err(Error::RequiresField);
    }
    if alpha.is_zero() {
        return Err(Error::ZeroInput);
    }
    let cp = alpha.charpoly()?;
    let prime = BigInt::from(p);
    // finite points (i, v_p(c_i)) of the polygon
    let mut pts: Vec<(i64, i64)> = Vec::new();
    for (i, c) in cp.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let v = padic_valuation(c, &prime).unwrap();
        pts.push((i as i64, v));
    }
    // lower convex hull, left to right
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for pt in pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // drop b if it lies on or above the segment from a to pt
            if (b.1 - a.1) * (pt.0 - a.0) >= (pt.1 - a.1) * (b.0 - a.0) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut vals = Vec::new();
    for w in hull.windows(2) {
        let (i0, v0) = w[0];
        let (i1, v1) = w[1];
        let slope_neg = Rat::new(BigInt::from(v0 - v1), BigInt::from(i1 - i0));
        for _ in 0..(i1 - i0) {
            vals.push(slope_neg.clone());
        }
    }
    debug_assert_eq!(vals.len(), alpha.parent().degree());
    vals.sort();
    Ok(vals)
}

/// Exact order of vanishing of a nonzero element of Q(t) at a finite
/// rational center, or at infinity.
pub fn tadic_valuation(alpha: &RingElement, center: &TAdicCenter) -> Result<i64> {
    if alpha.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (num, den) = alpha.function_parts().ok_or(Error::PlaceRingMismatch)?;
    Ok(match center {
        TAdicCenter::Finite(c) => num.order_at(c) as i64 - den.order_at(c) as i64,
        TAdicCenter::Infinity => den.deg() as i64 - num.deg() as i64,
    })
}

/// Primes dividing the numerator of the norm of alpha (constant term of its
/// characteristic polynomial), by trial division up to the bound. The flag
/// reports an unfactored remainder beyond the bound.
pub fn norm_primes(alpha: &RingElement, trial_bound: u64) -> Result<(Vec<u64>, bool)> {
    let cp = alpha.charpoly()?;
    let c0 = cp.coeff(0);
    if c0.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    let mut n = c0.numer().abs();
    let mut primes = Vec::new();
    let mut p = BigInt::from(2);
    let bound = BigInt::from(trial_bound);
    while &p * &p <= n && p <= bound {
        if num_integer::Integer::is_multiple_of(&n, &p) {
            primes.push(u64::try_from(&p).unwrap());
            while num_integer::Integer::is_multiple_of(&n, &p) {
                n = &n / &p;
            }
        }
        p += 1;
    }
    if n > BigInt::one() {
        if n <= &bound * &bound {
            // a remainder below the square of the bound is prime
            if let Ok(small) = u64::try_from(&n) {
                primes.push(small);
                return Ok((primes, false));
            }
        }
        return Ok((primes, true));
    }
    Ok((primes, false))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContractionMode {
    /// A non-archimedean place with v(alpha) > 0.
    StrictNonArch,
    /// An archimedean place with certified |sigma(alpha)| <= 1/3.
    ArchThird,
}

pub fn one_third() -> Rat {
    Rat::new(BigInt::one(), BigInt::from(3))
}

/// Searches for a contracting place for alpha in the requested mode.
pub fn find_contracting_place(
    alpha: &RingElement,
    mode: ContractionMode,
    trial_bound: u64,
    precision_bits: u32,
) -> Result<Option<Place>> {
    if alpha.is_zero() {
        return Err(Error::ZeroInput);
    }
    match (alpha.parent().kind(), mode) {
        (RingKind::NumberRing, ContractionMode::StrictNonArch) => {
            let (primes, incomplete) = norm_primes(alpha, trial_bound)?;
            for p in primes {
                let vals = newton_polygon_valuations(alpha, p)?;
                if let Some(v) = vals.iter().filter(|v| v.is_positive()).max() {
                    return Ok(Some(Place::PAdic { prime: p, valuation: v.clone() }));
                }
            }
            if incomplete {
                return Err(Error::NormFactorizationBudget);
            }
            Ok(None)
        }
        (RingKind::FunctionField, ContractionMode::StrictNonArch) => {
            for center in tadic_candidate_centers(alpha, trial_bound) {
                if tadic_valuation(alpha, &center)? > 0 {
                    return Ok(Some(Place::TAdic { center }));
                }
            }
            Ok(None)
        }
        (RingKind::NumberRing, ContractionMode::ArchThird) => {
            let third = one_third();
            for place in ring_archimedean_places(alpha.parent(), precision_bits)? {
                let (eval, refined) = place.abs_of(alpha, precision_bits)?;
                if eval.enclosure.hi <= third {
                    return Ok(Some(Place::Archimedean(refined)));
                }
            }
            Ok(None)
        }
        (RingKind::FunctionField, ContractionMode::ArchThird) => Ok(None),
    }
}

/// Candidate t-adic centers in deterministic order: 0, infinity, then the
/// rational roots of the numerator found within the divisor budget.
pub fn tadic_candidate_centers(alpha: &RingElement, trial_bound: u64) -> Vec<TAdicCenter> {
    let mut out = vec![TAdicCenter::Finite(Rat::zero()), TAdicCenter::Infinity];
    if let Some((num, _)) = alpha.function_parts() {
        for root in bounded_rational_roots(num, trial_bound) {
            if !root.is_zero() {
                out.push(TAdicCenter::Finite(root));
            }
        }
    }
    out
}

/// Rational roots of a nonzero rational polynomial, searched through the
/// divisors of the integer-cleared constant and leading coefficients, both
/// bounded by the trial budget.
fn bounded_rational_roots(f: &Poly, trial_bound: u64) -> Vec<Rat> {
    if f.is_zero() || f.deg() == 0 {
        return Vec::new();
    }
    // clear denominators: the roots are unchanged
    let mut den_lcm = BigInt::one();
    for c in f.coeffs() {
        den_lcm = num_integer::Integer::lcm(&den_lcm, c.denom());
    }
    let fi = f.scale(&Rat::from_integer(den_lcm));
    let mut fi_coeffs: Vec<BigInt> = fi.coeffs().iter().map(|c| c.numer().clone()).collect();
    while fi_coeffs.first().map_or(false, |c| c.is_zero()) {
        fi_coeffs.remove(0);
    }
    if fi_coeffs.len() <= 1 {
        return Vec::new();
    }
    let c0 = fi_coeffs[0].abs();
    let lead = fi_coeffs[fi_coeffs.len() - 1].abs();
    let p_divs = bounded_divisors(&c0, trial_bound);
    let q_divs = bounded_divisors(&lead, trial_bound);
    let mut out = Vec::new();
    for p in &p_divs {
        for q in &q_divs {
            for sign in [1i64, -1] {
                let cand = Rat::new(p * BigInt::from(sign), q.clone());
                if f.eval(&cand).is_zero() && !out.contains(&cand) {
                    out.push(cand);
                }
            }
        }
    }
    out.sort();
    out
}

fn bounded_divisors(n: &BigInt, bound: u64) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut k = BigInt::one();
    let cap = BigInt::from(bound);
    while &k * &k <= *n {
        if num_integer::Integer::is_multiple_of(n, &k) {
            out.push(k.clone());
            out.push(n / &k);
        }
        if k >= cap {
            break;
        }
        k += 1;
    }
    out.sort();
    out.dedup();
    out
}

/// Smallest n0 <= n_max and sign with a certified |sigma(alpha^{sign*n0})|
/// <= 1/3 at some archimedean place. Scan order: n ascending, sign -1 then
/// +1, places by index, so results are reproducible run to run.
pub fn contraction_exponent(
    alpha: &RingElement,
    n_max: u32,
    precision_bits: u32,
) -> Result<(u32, Place, i8)> {
    if alpha.parent().kind() != RingKind::NumberRing {
        return Err(Error::FunctionFieldUnsupported);
    }
    if alpha.parent().is_field_case() && alpha.is_root_of_unity()?.is_some() {
        return Err(Error::RootOfUnityInput);
    }
    let third = one_third();
    let places = ring_archimedean_places(alpha.parent(), precision_bits)?;
    // one sharp enclosure of |sigma(alpha)| per place, then exact powering
    let mut enclosures = Vec::new();
    for place in &places {
        let (eval, refined) = place.abs_of(alpha, precision_bits)?;
        if !eval.enclosure.lo.is_positive() {
            return Err(Error::BudgetExhausted);
        }
        enclosures.push((eval.enclosure, refined));
    }
    for n in 1..=n_max {
        for sign in [-1i8, 1] {
            let k = i64::from(sign) * i64::from(n);
            for (enc, place) in &enclosures {
                let powered = enc.pow(k);
                if powered.hi <= third {
                    return Ok((n, Place::Archimedean(place.clone()), sign));
                }
                if powered.lo <= third {
                    // the enclosure straddles the threshold, so neither
                    // accepting nor rejecting would be sound
                    return Err(Error::BudgetExhausted);
                }
            }
        }
    }
    Err(Error::NotFoundWithinBound)
}

/// Interval containing the product over all archimedean places of
/// |sigma(alpha)| with conjugate pairs squared; equals |norm(alpha)| =
/// |charpoly(alpha)(0)| when the modulus is irreducible.
pub fn archimedean_norm_product(alpha: &RingElement, places: &[ArchPlace]) -> RatInterval {
    let lift = alpha.lift();
    let mut acc = RatInterval::point(Rat::one());
    for place in places {
        let contrib = match place.root() {
            ArchRoot::Real(_) => place.eval_box(&lift).re.abs(),
            ArchRoot::Pair(_) => place.abs_squared_now(&lift),
        };
        acc = acc.mul(&contrib);
    }
    acc
}
