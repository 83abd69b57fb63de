//! Mahler measure with certified enclosures, the exact Kronecker test, the
//! counterexample-family verifier over X^{3 n!} + X^{n!} + 1, and the
//! experiment relating log m(pi) to the finite-radius growth bounds.

use crate::affine::{gamma_generators, AffineMap, Word};
use crate::error::{Error, Result};
use crate::field::{IrreducibleHint, ModulusRing, RingKind};
use crate::freeness::{ct_relation_words, verify_relation, Budget, RelationWitness};
use crate::growth::{
    ball_sizes, dplus_lower, dplus_upper, entropy_bounds, DplusLower, DplusUpper, EntropyBounds,
    GeneratingSet, GrowthTable,
};
use crate::interval::{ComplexBox, RatInterval};
use crate::places::AbsEnclosure;
use crate::poly::Poly;
use crate::rat::{pow2, Rat};
use crate::roots;
use num_traits::{One, Signed, Zero};

/// One distinct root's contribution to the Mahler measure.
#[derive(Clone, Debug)]
pub struct PerRoot {
    pub root_box: ComplexBox,
    /// Enclosure of max(1, |root|).
    pub max_abs: AbsEnclosure,
    /// Multiplicity in pi, times two for a conjugate pair.
    pub multiplicity: usize,
    pub is_pair: bool,
}

#[derive(Clone, Debug)]
pub struct MahlerResult {
    /// Certified enclosure of m(pi) = prod max(1, |root|); lo >= 1.
    pub measure: AbsEnclosure,
    pub per_root: Vec<PerRoot>,
    pub is_kronecker: bool,
    /// Number of zero roots stripped before isolation (flagged, not fatal).
    pub stripped_zero_roots: usize,
}

impl MahlerResult {
    /// Enclosure of prod |root| over all roots of the stripped polynomial
    /// (with multiplicity); equals |constant term| exactly.
    pub fn abs_root_product(&self) -> RatInterval {
        let mut acc = RatInterval::point(Rat::one());
        for pr in &self.per_root {
            let base = if pr.is_pair {
                // |root|^2 per conjugate pair, computed without square roots
                pr.root_box.abs_squared()
            } else {
                pr.root_box.re.abs()
            };
            let mult = if pr.is_pair { pr.multiplicity / 2 } else { pr.multiplicity };
            for _ in 0..mult {
                acc = acc.mul(&base);
            }
        }
        acc
    }
}

/// Certified enclosure of the Mahler measure with width <= 2^-precision_bits.
/// Zero roots are stripped first (their factor contributes 1); repeated
/// roots are handled through the squarefree decomposition exponents.
pub fn mahler_measure(pi: &Poly, precision_bits: u32) -> Result<MahlerResult> {
    if pi.is_zero() || !pi.is_monic() || !pi.has_integer_coeffs() {
        return Err(Error::NonMonic);
    }
    let stripped_zero_roots = pi.order_at(&Rat::zero());
    let f = if stripped_zero_roots > 0 {
        let xk = Poly::x();
        let mut g = pi.clone();
        for _ in 0..stripped_zero_roots {
            g = g.div_exact(&xk);
        }
        g
    } else {
        pi.clone()
    };
    let target = pow2(-(precision_bits as i64));
    let kron = is_kronecker(pi)?;
    if f.deg() == 0 {
        return Ok(MahlerResult {
            measure: AbsEnclosure { lo: Rat::one(), hi: Rat::one() },
            per_root: Vec::new(),
            is_kronecker: kron,
            stripped_zero_roots,
        });
    }
    let factors = f.squarefree_decomposition();
    // locate once, then re-refine all roots until the product is sharp
    let mut located: Vec<(Poly, usize, roots::IsolatedRoots)> = Vec::new();
    for (g, mult) in &factors {
        located.push((g.clone(), *mult, roots::isolate(g)?));
    }
    let mut root_width = pow2(-(precision_bits as i64 + 8));
    for _attempt in 0..10 {
        let mut per_root = Vec::new();
        let mut product = RatInterval::point(Rat::one());
        for (g, mult, iso) in &located {
            for r in &iso.real {
                let refined = roots::refine_real(g, r, &root_width);
                let iv = refined.to_interval().abs();
                let contrib = RatInterval::new(max_one(&iv.lo), max_one(&iv.hi));
                for _ in 0..*mult {
                    product = product.mul(&contrib);
                }
                per_root.push(PerRoot {
                    root_box: refined.to_box(),
                    max_abs: AbsEnclosure { lo: contrib.lo, hi: contrib.hi },
                    multiplicity: *mult,
                    is_pair: false,
                });
            }
            for b in &iso.complex_upper {
                let refined = roots::refine_complex(g, b, &root_width)?;
                let sq = refined.abs_squared();
                // max(1, |root|)^2 = max(1, |root|^2): the pair contributes
                // this once, covering both conjugates, with no square root
                let pair_contrib = RatInterval::new(max_one(&sq.lo), max_one(&sq.hi));
                for _ in 0..*mult {
                    product = product.mul(&pair_contrib);
                }
                let abs = refined.abs(precision_bits + 16);
                per_root.push(PerRoot {
                    root_box: refined,
                    max_abs: AbsEnclosure {
                        lo: max_one(&abs.lo),
                        hi: max_one(&abs.hi),
                    },
                    multiplicity: 2 * mult,
                    is_pair: true,
                });
            }
        }
        if product.width() <= target {
            return Ok(MahlerResult {
                measure: AbsEnclosure { lo: product.lo, hi: product.hi },
                per_root,
                is_kronecker: kron,
                stripped_zero_roots,
            });
        }
        root_width = root_width * pow2(-16);
    }
    Err(Error::BudgetExhausted)
}

fn max_one(x: &Rat) -> Rat {
    if *x < Rat::one() {
        Rat::one()
    } else {
        x.clone()
    }
}

/// Exact Kronecker test: true iff every root of pi is zero or a root of
/// unity, i.e. pi is X^v times a product of cyclotomics. Implemented by
/// dividing out gcd(pi, X^k - 1) for every k up to max(2 d^2, 36); the
/// bound is exhaustive because phi(k) <= d forces k <= max(2 d^2, 36).
pub fn is_kronecker(pi: &Poly) -> Result<bool> {
    if pi.is_zero() || !pi.is_monic() || !pi.has_integer_coeffs() {
        return Err(Error::NonMonic);
    }
    let mut r = pi.monic();
    // strip zero roots
    let x = Poly::x();
    while r.coeff(0).is_zero() && r.deg() > 0 {
        r = r.div_exact(&x);
    }
    let d = pi.deg();
    let k_max = (2 * d * d).max(36);
    for k in 1..=k_max {
        if r.deg() == 0 {
            break;
        }
        let cyc = Poly::x_pow_minus_one(k);
        loop {
            let g = r.gcd(&cyc);
            if g.degree() == Some(0) {
                break;
            }
            r = r.div_exact(&g);
        }
    }
    Ok(r.is_one())
}

/// One verified instance of the power relation for exponents (p, q).
#[derive(Clone, Debug)]
pub struct CtRelationCheck {
    pub p: i64,
    pub q: i64,
    pub u: Word,
    pub v: Word,
    pub holds: bool,
}

/// Verification record for the counterexample family member at parameter n.
#[derive(Clone, Debug)]
pub struct CtReport {
    pub n: u32,
    pub modulus: Poly,
    /// A(y)^4 = B(y)^2 A(y) B(y) for y = x^{n!}, checked as matrices.
    pub base_relation_holds: bool,
    pub relations: Vec<CtRelationCheck>,
    /// The derived claim: no pair with ratios x^p, x^q (|p|, |q| <= n) is
    /// positively independent, hence the independence radius of the raw
    /// pair {A, B} is at least n (and likewise for the symmetrized set,
    /// whose radius-m elements have ratio exponents bounded by m).
    pub dplus_lower_claim: u32,
}

impl CtReport {
    pub fn all_hold(&self) -> bool {
        self.base_relation_holds && self.relations.iter().all(|r| r.holds)
    }
}

/// The modulus X^{3 n!} + X^{n!} + 1 of the family member at parameter n.
pub fn ct_modulus(n: u32) -> Poly {
    let fact: usize = (1..=n as usize).product();
    let mut coeffs = vec![Rat::zero(); 3 * fact + 1];
    coeffs[0] = Rat::one();
    coeffs[fact] = Rat::one();
    coeffs[3 * fact] = Rat::one();
    Poly::from_coeffs(coeffs)
}

/// Verifies every relation of the family member at parameter n in the
/// quotient ring (equality there implies equality at every root): the base
/// relation at y = x^{n!}, and the rearranged positive-word identity for
/// each pair of exponents 1 <= |p|, |q| <= n. Degrees above the budget are
/// refused rather than attempted.
pub fn ct_family_verify(n: u32, max_degree: usize) -> Result<CtReport> {
    if n == 0 {
        return Err(Error::Parse("family parameter must be >= 1".into()));
    }
    let fact: usize = (1..=n as usize).product();
    if 3 * fact > max_degree {
        return Err(Error::DegreeBudget);
    }
    let modulus = ct_modulus(n);
    let ring = ModulusRing::number_ring(modulus.clone())?;
    let x = ring.generator();
    let y = x.pow(fact as i64)?;

    let a_y = AffineMap::new(y.clone(), ring.zero())?;
    let b_y = AffineMap::new(y, ring.one())?;
    let lhs = a_y.map_pow(4);
    let rhs = b_y.map_pow(2).compose(&a_y)?.compose(&b_y)?;
    let base_relation_holds = lhs == rhs;

    let mut relations = Vec::new();
    let bound = n as i64;
    for p in -bound..=bound {
        if p == 0 {
            continue;
        }
        for q in -bound..=bound {
            if q == 0 {
                continue;
            }
            let (u, v) = ct_relation_words(n, p, q)?;
            let f = AffineMap::new(x.pow(q)?, ring.zero())?;
            let g = AffineMap::new(x.pow(p)?, ring.one())?;
            let w = RelationWitness { u: u.clone(), v: v.clone() };
            let holds = verify_relation(&w, &f, &g);
            relations.push(CtRelationCheck { p, q, u, v, holds });
        }
    }
    Ok(CtReport {
        n,
        modulus,
        base_relation_holds,
        relations,
        dplus_lower_claim: n,
    })
}

/// The growth-side evidence for the family member: ball refutation over the
/// symmetrized standard generators up to radius n - 1.
pub fn ct_growth_evidence(n: u32, budget: &Budget) -> Result<DplusLower> {
    let ring = ModulusRing::number_ring(ct_modulus(n))?;
    let (a, b) = gamma_generators(&ring);
    let sigma = GeneratingSet::new(vec![a, b])?;
    dplus_lower(&sigma, n as usize - 1, budget)
}

/// Everything the Lehmer-gap experiment reports for one polynomial.
#[derive(Clone, Debug)]
pub struct LehmerReport {
    pub mahler: MahlerResult,
    /// Smallest k with m^k >= 2, certified from the enclosure: combined
    /// with the entropy inequality it implies the independence radius is
    /// at least k. Zero in the Kronecker-degenerate case m = 1.
    pub implied_dplus_lower: u32,
    pub growth: GrowthTable,
    pub entropy: EntropyBounds,
    pub certificate_at: Option<DplusUpper>,
    pub refutation: DplusLower,
    /// (n, #Sigma^{2n} <= (#Sigma^n)^2) for each tabulated doubling.
    pub doubling_checks: Vec<(usize, bool)>,
    /// m = 1: polynomial growth expected, the gap claim degenerates.
    pub kronecker_degenerate: bool,
    /// An implied lower bound must never exceed a certified upper radius.
    pub claim_consistent: bool,
}

/// Smallest k with m(pi)^k >= 2, certified from both enclosure endpoints
/// (None while the enclosure is too wide to pin the ceiling down).
pub fn implied_dplus_from_measure(measure: &AbsEnclosure, k_cap: u32) -> Option<u32> {
    let two = Rat::from_integer(2.into());
    if measure.hi <= Rat::one() {
        return Some(0);
    }
    let first_k = |base: &Rat| -> Option<u32> {
        if *base <= Rat::one() {
            return None;
        }
        let mut acc = Rat::one();
        for k in 1..=k_cap {
            acc = acc * base;
            if acc >= two {
                return Some(k);
            }
        }
        None
    };
    match (first_k(&measure.lo), first_k(&measure.hi)) {
        (Some(a), Some(b)) if a == b => Some(a),
        _ => None,
    }
}

/// Runs the finite-radius experiment for an irreducible monic pi with
/// pi(0) = +-1: certified log m(pi), the implied lower bound on the
/// independence radius, the growth table of the standard pair, and the
/// certificate search, all under the given budgets. No asymptotic claim is
/// made beyond the tabulated inequalities.
///
/// Degrees up to 3 certify their own irreducibility; beyond that the
/// caller must assert it with `assume_irreducible` (the paper's reduction
/// presumes it, and the experiment is meaningless without the field case).
pub fn lehmer_experiment(
    pi: &Poly,
    n_max: usize,
    cert_radius: usize,
    budget: &Budget,
    assume_irreducible: bool,
) -> Result<LehmerReport> {
    if pi.is_zero() || !pi.is_monic() || !pi.has_integer_coeffs() {
        return Err(Error::NonMonic);
    }
    if !pi.coeff(0).abs().is_one() {
        return Err(Error::Parse("the reduction requires pi(0) = +-1".into()));
    }
    let ring = ModulusRing::number_ring(pi.clone())?;
    let ring = match ring.irreducible_hint() {
        IrreducibleHint::Yes => ring,
        IrreducibleHint::No => return Err(Error::RequiresField),
        IrreducibleHint::Unknown if assume_irreducible => ring.assert_irreducible(),
        IrreducibleHint::Unknown => return Err(Error::RequiresField),
    };
    debug_assert_eq!(ring.kind(), RingKind::NumberRing);

    let mut mahler = mahler_measure(pi, budget.precision_bits)?;
    let mut implied = implied_dplus_from_measure(&mahler.measure, 64);
    for extra in 1..=3u32 {
        if implied.is_some() {
            break;
        }
        mahler = mahler_measure(pi, budget.precision_bits + extra * 32)?;
        implied = implied_dplus_from_measure(&mahler.measure, 64);
    }
    let implied_dplus_lower = implied.ok_or(Error::BudgetExhausted)?;
    let kronecker_degenerate = mahler.is_kronecker;

    let (a, b) = gamma_generators(&ring);
    let sigma = GeneratingSet::new(vec![a, b])?;
    let growth = ball_sizes(&sigma, n_max, budget.memory_budget_elements)?;
    let certificate_at = dplus_upper(&sigma, cert_radius, budget)?;
    let refutation = dplus_lower(&sigma, 1, budget)?;
    let entropy = entropy_bounds(&growth, certificate_at.as_ref().map(|u| u.radius));
    let doubling_checks: Vec<(usize, bool)> = (1..=n_max / 2)
        .filter_map(|n| growth.check_doubling(n).map(|ok| (n, ok)))
        .collect();
    let claim_consistent = match &certificate_at {
        Some(upper) => implied_dplus_lower as usize <= upper.radius,
        None => true,
    };
    Ok(LehmerReport {
        mahler,
        implied_dplus_lower,
        growth,
        entropy,
        certificate_at,
        refutation,
        doubling_checks,
        kronecker_degenerate,
        claim_consistent,
    })
}

/// Lehmer's degree-10 polynomial, the smallest known Mahler measure > 1.
pub fn lehmer_polynomial() -> Poly {
    Poly::from_int_coeffs(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
}
