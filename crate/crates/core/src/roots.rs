//! Certified isolation of the complex roots of a squarefree integer
//! polynomial, with exact rational box endpoints throughout.
//!
//! Real roots are isolated by Sturm counts and sign-change bisection.
//! Non-real roots come in conjugate pairs; the upper-half-plane member of
//! each pair is isolated by rectangle subdivision with argument-principle
//! root counting: the boundary is subdivided until every piece has a
//! zero-free image box, and the winding number is accumulated from exact
//! sector transitions of the endpoint values. A global count conservation
//! check (real + 2 * pairs = degree) guards the whole procedure.

use crate::error::{Error, Result};
use crate::interval::{eval_poly_box, ComplexBox, RatInterval};
use crate::poly::{Poly, SturmChain};
use crate::rat::{pow2, Rat};
use num_traits::{One, Signed, Zero};

/// An isolated real root: either an exact rational or a bracket (lo, hi)
/// with a sign change and exactly one root inside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealRoot {
    Exact(Rat),
    Bracket { lo: Rat, hi: Rat },
}

impl RealRoot {
    pub fn to_interval(&self) -> RatInterval {
        match self {
            RealRoot::Exact(r) => RatInterval::point(r.clone()),
            RealRoot::Bracket { lo, hi } => RatInterval::new(lo.clone(), hi.clone()),
        }
    }

    pub fn to_box(&self) -> ComplexBox {
        ComplexBox::real(self.to_interval())
    }

    pub fn width(&self) -> Rat {
        self.to_interval().width()
    }

    fn sort_key(&self) -> Rat {
        match self {
            RealRoot::Exact(r) => r.clone(),
            RealRoot::Bracket { lo, .. } => lo.clone(),
        }
    }
}

/// All roots of a squarefree polynomial: real ones sorted ascending, one box
/// per conjugate pair (the upper-half-plane member), sorted by (re, im).
#[derive(Clone, Debug)]
pub struct IsolatedRoots {
    pub real: Vec<RealRoot>,
    pub complex_upper: Vec<ComplexBox>,
}

/// Isolates every complex root of a squarefree polynomial with rational
/// coefficients and degree >= 1.
pub fn isolate(g: &Poly) -> Result<IsolatedRoots> {
    assert!(!g.is_zero() && g.deg() >= 1, "isolate needs degree >= 1");
    debug_assert!(
        g.gcd(&g.derivative()).degree() == Some(0),
        "isolate requires a squarefree input"
    );
    let real = real_roots(g);
    let pairs = (g.deg() - real.len()) / 2;
    debug_assert_eq!(g.deg(), real.len() + 2 * pairs);
    let complex_upper = complex_roots_upper(g, pairs)?;
    Ok(IsolatedRoots { real, complex_upper })
}

/// Isolates the real roots of a squarefree polynomial, sorted ascending.
pub fn real_roots(g: &Poly) -> Vec<RealRoot> {
    if g.deg() == 1 {
        // exact rational root
        let r = -g.coeff(0) / g.coeff(1);
        return vec![RealRoot::Exact(r)];
    }
    let chain = SturmChain::new(g);
    let m = g.root_bound();
    let mut out = Vec::new();
    subdivide_real(g, &chain, -m.clone(), m, &mut out);
    out.sort_by_key(|r| r.sort_key());
    out
}

fn subdivide_real(g: &Poly, chain: &SturmChain, a: Rat, b: Rat, out: &mut Vec<RealRoot>) {
    let n = chain.count_roots(&a, &b);
    if n == 0 {
        return;
    }
    if n == 1 {
        if g.eval(&b).is_zero() {
            out.push(RealRoot::Exact(b));
            return;
        }
        // move the left endpoint off a previously split-out exact root
        let mut lo = a.clone();
        if g.eval(&lo).is_zero() {
            let mut step = (&b - &a) / Rat::from_integer(2.into());
            loop {
                let cand = &a + &step;
                if g.eval(&cand).is_zero() {
                    out.push(RealRoot::Exact(cand));
                    return;
                }
                if chain.count_roots(&cand, &b) == 1 {
                    lo = cand;
                    break;
                }
                step = step / Rat::from_integer(2.into());
            }
        }
        debug_assert!((g.eval(&lo) * g.eval(&b)).is_negative());
        out.push(RealRoot::Bracket { lo, hi: b });
        return;
    }
    let mid = (&a + &b) / Rat::from_integer(2.into());
    subdivide_real(g, chain, a, mid.clone(), out);
    subdivide_real(g, chain, mid, b, out);
}

/// Halves the bracket around a real root until its width is at most the
/// target (exact roots are already points).
pub fn refine_real(g: &Poly, root: &RealRoot, target_width: &Rat) -> RealRoot {
    let (mut lo, mut hi) = match root {
        RealRoot::Exact(_) => return root.clone(),
        RealRoot::Bracket { lo, hi } => (lo.clone(), hi.clone()),
    };
    let two = Rat::from_integer(2.into());
    let sign_lo = g.eval(&lo).is_positive();
    while &hi - &lo > *target_width {
        let mid = (&lo + &hi) / &two;
        let v = g.eval(&mid);
        if v.is_zero() {
            return RealRoot::Exact(mid);
        }
        if v.is_positive() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    RealRoot::Bracket { lo, hi }
}

const EDGE_DEPTH: u32 = 64;
const SPLIT_OFFSETS: [(i64, i64); 7] =
    [(0, 1), (1, 16), (-1, 16), (1, 8), (-1, 8), (3, 16), (-3, 16)];

struct Stall;

type EdgeResult<T> = std::result::Result<T, Stall>;

/// One boundary piece with the exact values of g at its endpoints. The
/// image of the whole piece lies in a zero-free box, hence in an open
/// half-plane bounded by an axis, so the argument moves by less than pi.
struct BoundaryPiece {
    v0: (Rat, Rat),
    v1: (Rat, Rat),
}

fn eval_at_point(g: &Poly, re: &Rat, im: &Rat) -> (Rat, Rat) {
    let mut ar = Rat::zero();
    let mut ai = Rat::zero();
    for c in g.coeffs().iter().rev() {
        // (ar + ai*i)(re + im*i) + c
        let nr = &ar * re - &ai * im + c;
        let ni = &ar * im + &ai * re;
        ar = nr;
        ai = ni;
    }
    (ar, ai)
}

/// Subdivides a single edge until each piece's image box excludes zero.
/// `fixed` is the constant coordinate; `horizontal` says which one moves.
fn edge_pieces(
    g: &Poly,
    fixed: &Rat,
    moving: RatInterval,
    horizontal: bool,
    depth: u32,
    out: &mut Vec<BoundaryPiece>,
) -> EdgeResult<()> {
    let z = if horizontal {
        ComplexBox::new(moving.clone(), RatInterval::point(fixed.clone()))
    } else {
        ComplexBox::new(RatInterval::point(fixed.clone()), moving.clone())
    };
    let image = eval_poly_box(g, &z);
    if !image.contains_zero() {
        let (v0, v1) = if horizontal {
            (
                eval_at_point(g, &moving.lo, fixed),
                eval_at_point(g, &moving.hi, fixed),
            )
        } else {
            (
                eval_at_point(g, fixed, &moving.lo),
                eval_at_point(g, fixed, &moving.hi),
            )
        };
        out.push(BoundaryPiece { v0, v1 });
        return Ok(());
    }
    if depth == 0 {
        return Err(Stall);
    }
    let (left, right) = moving.split();
    edge_pieces(g, fixed, left, horizontal, depth - 1, out)?;
    edge_pieces(g, fixed, right, horizontal, depth - 1, out)
}

/// Sector index of an exact nonzero complex rational: even values are the
/// four half-axes, odd values the open quadrants, counterclockwise from +x.
fn sector(v: &(Rat, Rat)) -> EdgeResult<u8> {
    let (x, y) = v;
    let sx = if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    };
    let sy = if y.is_positive() {
        1
    } else if y.is_negative() {
        -1
    } else {
        0
    };
    Ok(match (sx, sy) {
        (1, 0) => 0,
        (1, 1) => 1,
        (0, 1) => 2,
        (-1, 1) => 3,
        (-1, 0) => 4,
        (-1, -1) => 5,
        (0, -1) => 6,
        (1, -1) => 7,
        _ => return Err(Stall),
    })
}

/// Number of roots of g strictly inside the rectangle, by the argument
/// principle. Fails (for retry with a perturbed rectangle) when a root sits
/// on or too close to the boundary for the subdivision budget.
fn winding_count(g: &Poly, rect: &ComplexBox) -> EdgeResult<usize> {
    let mut pieces: Vec<BoundaryPiece> = Vec::new();
    // counterclockwise: bottom, right, top (reversed), left (reversed)
    let mut bottom = Vec::new();
    edge_pieces(g, &rect.im.lo, rect.re.clone(), true, EDGE_DEPTH, &mut bottom)?;
    pieces.extend(bottom);
    let mut right = Vec::new();
    edge_pieces(g, &rect.re.hi, rect.im.clone(), false, EDGE_DEPTH, &mut right)?;
    pieces.extend(right);
    let mut top = Vec::new();
    edge_pieces(g, &rect.im.hi, rect.re.clone(), true, EDGE_DEPTH, &mut top)?;
    top.reverse();
    pieces.extend(top.into_iter().map(|p| BoundaryPiece { v0: p.v1, v1: p.v0 }));
    let mut left = Vec::new();
    edge_pieces(g, &rect.re.lo, rect.im.clone(), false, EDGE_DEPTH, &mut left)?;
    left.reverse();
    pieces.extend(left.into_iter().map(|p| BoundaryPiece { v0: p.v1, v1: p.v0 }));

    let mut total: i64 = 0;
    for p in &pieces {
        let q0 = sector(&p.v0)? as i64;
        let q1 = sector(&p.v1)? as i64;
        let mut d = (q1 - q0).rem_euclid(8);
        if d > 4 {
            d -= 8;
        }
        // a piece confined to an open half-plane moves at most two sectors
        if d.abs() > 2 {
            return Err(Stall);
        }
        total += d;
    }
    if total.rem_euclid(8) != 0 || total < 0 {
        return Err(Stall);
    }
    Ok((total / 8) as usize)
}

/// Splits a rectangle into two children whose root counts add up to the
/// parent's, perturbing the split line away from roots when necessary.
fn split_counted(
    g: &Poly,
    rect: &ComplexBox,
    count: usize,
) -> Result<((ComplexBox, usize), (ComplexBox, usize))> {
    let vertical_first = rect.re.width() >= rect.im.width();
    for vertical_line in [vertical_first, !vertical_first] {
        let (axis, other) = if vertical_line {
            (&rect.re, &rect.im)
        } else {
            (&rect.im, &rect.re)
        };
        let w = axis.width();
        let mid = axis.midpoint();
        for (n, d) in SPLIT_OFFSETS {
            let cut = &mid + &w * crate::rat::rat(n, d) / Rat::from_integer(2.into());
            if cut <= axis.lo || cut >= axis.hi {
                continue;
            }
            let a_axis = RatInterval::new(axis.lo.clone(), cut.clone());
            let b_axis = RatInterval::new(cut, axis.hi.clone());
            let (ra, rb) = if vertical_line {
                (
                    ComplexBox::new(a_axis, other.clone()),
                    ComplexBox::new(b_axis, other.clone()),
                )
            } else {
                (
                    ComplexBox::new(other.clone(), a_axis),
                    ComplexBox::new(other.clone(), b_axis),
                )
            };
            let ca = match winding_count(g, &ra) {
                Ok(c) => c,
                Err(Stall) => continue,
            };
            if ca > count {
                continue;
            }
            if ca == count {
                return Ok(((ra, ca), (rb, 0)));
            }
            let cb = match winding_count(g, &rb) {
                Ok(c) => c,
                Err(Stall) => continue,
            };
            if ca + cb == count {
                return Ok(((ra, ca), (rb, cb)));
            }
        }
    }
    Err(Error::BudgetExhausted)
}

/// Isolates the `pairs` upper-half-plane roots of g (non-real roots come in
/// conjugate pairs; g must be squarefree).
fn complex_roots_upper(g: &Poly, pairs: usize) -> Result<Vec<ComplexBox>> {
    if pairs == 0 {
        return Ok(Vec::new());
    }
    let m = g.root_bound();
    // lower the bottom edge until every pair is above it
    let mut region = None;
    for j in 1..=60u32 {
        let c = &m * pow2(-(j as i64));
        let rect = ComplexBox::new(
            RatInterval::new(-m.clone(), m.clone()),
            RatInterval::new(c, m.clone()),
        );
        match winding_count(g, &rect) {
            Ok(n) if n == pairs => {
                region = Some((rect, n));
                break;
            }
            Ok(_) | Err(Stall) => continue,
        }
    }
    let region = region.ok_or(Error::BudgetExhausted)?;

    let mut stack = vec![region];
    let mut found = Vec::new();
    while let Some((rect, count)) = stack.pop() {
        match count {
            0 => {}
            1 => found.push(rect),
            _ => {
                let ((ra, ca), (rb, cb)) = split_counted(g, &rect, count)?;
                stack.push((ra, ca));
                stack.push((rb, cb));
            }
        }
    }
    debug_assert_eq!(found.len(), pairs);
    found.sort_by(|a, b| (&a.re.lo, &a.im.lo).cmp(&(&b.re.lo, &b.im.lo)));
    Ok(found)
}

/// Smallest k >= 0 with 2^-k <= w (w > 0).
fn bits_below(w: &Rat) -> i64 {
    let mut k = 0i64;
    let mut p = Rat::one();
    let two = Rat::from_integer(2.into());
    while p > *w {
        p = p / &two;
        k += 1;
    }
    k
}

/// Rounds the endpoints outward to denominator 2^k. Keeps every point of
/// the input, growing the width by at most 2^{1-k}.
fn dyadic_outward(iv: &RatInterval, k: i64) -> RatInterval {
    let scale = pow2(k);
    let lo = Rat::from_integer((&iv.lo * &scale).floor().to_integer()) / &scale;
    let hi = Rat::from_integer((&iv.hi * &scale).ceil().to_integer()) / &scale;
    RatInterval::new(lo, hi)
}

/// Certified number of roots strictly inside a rectangle, or None when a
/// root sits on (or numerically too close to) the boundary. Used by
/// certificate re-validation to confirm stored boxes still isolate.
pub fn count_roots_in_box(g: &Poly, rect: &ComplexBox) -> Option<usize> {
    winding_count(g, rect).ok()
}

/// Shrinks an isolating box below the target width. Tries the interval
/// Newton contraction first (quadratic once the box is small) and falls
/// back to counted bisection. Endpoints are re-rounded to dyadics after
/// every contraction so coordinate sizes grow linearly with precision.
pub fn refine_complex(g: &Poly, boxed: &ComplexBox, target_width: &Rat) -> Result<ComplexBox> {
    let dg = g.derivative();
    let mut cur = boxed.clone();
    let two = Rat::from_integer(2.into());
    while cur.width() > *target_width {
        // interval Newton: every root of g in cur lies in m - g(m)/g'(cur)
        let dbox = eval_poly_box(&dg, &cur);
        let mut newton_worked = false;
        if !dbox.contains_zero() {
            let mre = cur.re.midpoint();
            let mim = cur.im.midpoint();
            let (gr, gi) = eval_at_point(g, &mre, &mim);
            let gm = ComplexBox::point(gr, gi);
            // g(m) / g'(cur) = g(m) * conj(g'(cur)) / |g'(cur)|^2
            let numer = gm.mul(&dbox.conj());
            let den = dbox.abs_squared();
            let quot =
                ComplexBox::new(div_interval(&numer.re, &den), div_interval(&numer.im, &den));
            let n_re = RatInterval::new(&mre - &quot.re.hi, &mre - &quot.re.lo);
            let n_im = RatInterval::new(&mim - &quot.im.hi, &mim - &quot.im.lo);
            // outward dyadic rounding still contains the Newton image;
            // intersecting with cur preserves the isolation invariant
            let k = bits_below(&(cur.width() / Rat::from_integer(64.into()))) + 8;
            let rounded = ComplexBox::new(
                dyadic_outward(&n_re, k),
                dyadic_outward(&n_im, k),
            );
            if let Some(meet) = intersect_box(&rounded, &cur) {
                if meet.width() <= cur.width() / &two {
                    cur = meet;
                    newton_worked = true;
                }
            }
        }
        if !newton_worked {
            let ((ra, ca), (rb, _)) = split_counted(g, &cur, 1)?;
            cur = if ca == 1 { ra } else { rb };
        }
    }
    Ok(cur)
}

fn div_interval(a: &RatInterval, b: &RatInterval) -> RatInterval {
    // callers guarantee b is strictly positive (|g'|^2 with 0 excluded)
    assert!(b.lo.is_positive());
    let cands = [&a.lo / &b.lo, &a.lo / &b.hi, &a.hi / &b.lo, &a.hi / &b.hi];
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
    RatInterval::new(lo, hi)
}

fn intersect_box(a: &ComplexBox, b: &ComplexBox) -> Option<ComplexBox> {
    let re = intersect_interval(&a.re, &b.re)?;
    let im = intersect_interval(&a.im, &b.im)?;
    Some(ComplexBox::new(re, im))
}

fn intersect_interval(a: &RatInterval, b: &RatInterval) -> Option<RatInterval> {
    let lo = if a.lo >= b.lo { a.lo.clone() } else { b.lo.clone() };
    let hi = if a.hi <= b.hi { a.hi.clone() } else { b.hi.clone() };
    if lo <= hi {
        Some(RatInterval::new(lo, hi))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int, sqrt_enclosure};

    #[test]
    fn real_roots_of_golden_polynomial() {
        // x^2 - x - 1: roots (1 +- sqrt 5)/2
        let g = Poly::from_int_coeffs(&[-1, -1, 1]);
        let roots = real_roots(&g);
        assert_eq!(roots.len(), 2);
        let target = pow2(-40);
        let r0 = refine_real(&g, &roots[0], &target);
        let r1 = refine_real(&g, &roots[1], &target);
        // oracle: golden ratio from the integer square root of 5
        let (s_lo, s_hi) = sqrt_enclosure(&rat_int(5), 60);
        let phi_lo = (&s_lo + rat_int(1)) / rat_int(2);
        let phi_hi = (&s_hi + rat_int(1)) / rat_int(2);
        let iv = r1.to_interval();
        assert!(iv.lo <= phi_hi && phi_lo <= iv.hi);
        let neg = r0.to_interval();
        assert!(neg.hi < Rat::zero() && neg.lo > rat_int(-1));
    }

    #[test]
    fn degree_one_root_is_exact() {
        let g = Poly::from_int_coeffs(&[-2, 1]);
        let roots = real_roots(&g);
        assert_eq!(roots, vec![RealRoot::Exact(rat_int(2))]);
    }

    #[test]
    fn exact_root_at_zero_is_detected() {
        // x(x^2 - 2), squarefree with a rational root at 0
        let g = Poly::from_int_coeffs(&[0, -2, 0, 1]);
        let roots = real_roots(&g);
        assert_eq!(roots.len(), 3);
        assert!(roots
            .iter()
            .any(|r| matches!(r, RealRoot::Exact(c) if c.is_zero())));
    }

    #[test]
    fn winding_counts_around_known_roots() {
        // x^2 + 1: roots +-i
        let g = Poly::from_int_coeffs(&[1, 0, 1]);
        let around_i = ComplexBox::new(
            RatInterval::new(rat(-1, 2), rat(1, 2)),
            RatInterval::new(rat(1, 2), rat(3, 2)),
        );
        assert_eq!(winding_count(&g, &around_i).ok(), Some(1));
        let empty = ComplexBox::new(
            RatInterval::new(rat_int(2), rat_int(3)),
            RatInterval::new(rat(1, 2), rat(3, 2)),
        );
        assert_eq!(winding_count(&g, &empty).ok(), Some(0));
        let both = ComplexBox::new(
            RatInterval::new(rat_int(-2), rat_int(2)),
            RatInterval::new(rat_int(-2), rat_int(2)),
        );
        assert_eq!(winding_count(&g, &both).ok(), Some(2));
    }

    #[test]
    fn isolate_conjugate_pair_of_quadratic() {
        let g = Poly::from_int_coeffs(&[1, 0, 1]);
        let iso = isolate(&g).unwrap();
        assert!(iso.real.is_empty());
        assert_eq!(iso.complex_upper.len(), 1);
        let b = refine_complex(&g, &iso.complex_upper[0], &pow2(-30)).unwrap();
        assert!(b.re.contains(&Rat::zero()));
        assert!(b.im.contains(&Rat::one()));
        assert!(b.abs(40).contains(&Rat::one()));
    }

    #[test]
    fn isolate_cubic_with_one_real_root() {
        // x^3 + x + 1: one real root in (-1, 0), one conjugate pair
        let g = Poly::from_int_coeffs(&[1, 1, 0, 1]);
        let iso = isolate(&g).unwrap();
        assert_eq!(iso.real.len(), 1);
        assert_eq!(iso.complex_upper.len(), 1);
        // product of all root moduli = |constant term| = 1
        let real_abs = refine_real(&g, &iso.real[0], &pow2(-30))
            .to_interval()
            .abs();
        let pair = refine_complex(&g, &iso.complex_upper[0], &pow2(-30)).unwrap();
        let pair_sq = pair.abs_squared();
        let product = real_abs.mul(&pair_sq);
        assert!(product.contains(&Rat::one()));
    }

    #[test]
    fn isolate_cyclotomic_phi5() {
        // x^4 + x^3 + x^2 + x + 1: four roots on the unit circle
        let g = Poly::from_int_coeffs(&[1, 1, 1, 1, 1]);
        let iso = isolate(&g).unwrap();
        assert!(iso.real.is_empty());
        assert_eq!(iso.complex_upper.len(), 2);
        for b in &iso.complex_upper {
            let refined = refine_complex(&g, b, &pow2(-25)).unwrap();
            assert!(refined.abs(40).contains(&Rat::one()));
        }
    }

    #[test]
    fn refinement_nests() {
        let g = Poly::from_int_coeffs(&[-1, -1, 1]);
        let roots = real_roots(&g);
        let coarse = refine_real(&g, &roots[1], &pow2(-10)).to_interval();
        let fine = refine_real(&g, &roots[1], &pow2(-40)).to_interval();
        assert!(coarse.contains_interval(&fine));
    }
}
