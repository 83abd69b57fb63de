//! Cayley-ball enumeration with exact dedup, entropy bounds, and the
//! two-sided search for the positive-independence radius: certificates
//! bound it from above, exhaustive refutation of every pair in a ball
//! bounds it from below.

use crate::affine::{AffineMap, MapClass};
use crate::error::{Error, Result};
use crate::field::{Ring, RingElement, RingKind};
use crate::freeness::{
    check_pingpong, ct_relation_words, find_relation, search_freeness_certificate,
    translation_relation, verify_relation, Budget, PingPongCertificate, RelationWitness,
};
use crate::places::{one_third, ring_archimedean_places, Place};
use crate::poly::Poly;
use crate::rat::Rat;
use num_bigint::BigUint;
use num_traits::{One, Signed};
use std::collections::{HashMap, HashSet};

/// A generating set with its canonical symmetrization: raw generators,
/// their inverses, and the identity, deduplicated and sorted. Ball counts
/// and scan orders all run over the symmetrized list, so results are
/// independent of the input order.
#[derive(Clone, Debug)]
pub struct GeneratingSet {
    raw: Vec<AffineMap>,
    symmetrized: Vec<AffineMap>,
}

impl GeneratingSet {
    pub fn new(raw: Vec<AffineMap>) -> Result<Self> {
        let ring = match raw.first() {
            Some(g) => g.ring().clone(),
            None => return Err(Error::Parse("empty generating set".into())),
        };
        for g in &raw {
            if *g.ring() != ring {
                return Err(Error::MixedParents);
            }
        }
        let mut symmetrized: Vec<AffineMap> = Vec::with_capacity(2 * raw.len() + 1);
        symmetrized.push(AffineMap::identity(&ring));
        for g in &raw {
            symmetrized.push(g.clone());
            symmetrized.push(g.invert());
        }
        symmetrized.sort();
        symmetrized.dedup();
        Ok(GeneratingSet { raw, symmetrized })
    }

    pub fn ring(&self) -> &Ring {
        self.raw[0].ring()
    }

    pub fn raw(&self) -> &[AffineMap] {
        &self.raw
    }

    pub fn symmetrized(&self) -> &[AffineMap] {
        &self.symmetrized
    }

    /// Non-identity elements of the symmetrized set, in canonical order.
    pub fn moving_elements(&self) -> impl Iterator<Item = &AffineMap> {
        self.symmetrized.iter().filter(|g| !g.is_identity())
    }

    /// The generating set whose raw elements are the full ball of radius k
    /// (used by the rescaling consistency harness).
    pub fn power(&self, k: usize, memory_budget: usize) -> Result<GeneratingSet> {
        let ball = self.ball_elements(k, memory_budget)?;
        GeneratingSet::new(ball)
    }

    /// All elements of the radius-n ball, in canonical order.
    pub fn ball_elements(&self, n: usize, memory_budget: usize) -> Result<Vec<AffineMap>> {
        let (ball, _, truncated) = self.expand(n, memory_budget)?;
        if truncated {
            return Err(Error::MemoryBudget);
        }
        let mut out: Vec<AffineMap> = ball.into_keys().collect();
        out.sort();
        Ok(out)
    }

    /// Frontier BFS up to radius n: returns the dedup map (element -> first
    /// radius), per-radius counts, and a truncation flag.
    fn expand(
        &self,
        n: usize,
        memory_budget: usize,
    ) -> Result<(HashMap<AffineMap, usize>, Vec<u64>, bool)> {
        let mut ball: HashMap<AffineMap, usize> = HashMap::new();
        let identity = AffineMap::identity(self.ring());
        ball.insert(identity.clone(), 0);
        let mut frontier = vec![identity];
        let mut counts = vec![1u64];
        let mut truncated = false;
        'radius: for radius in 1..=n {
            let mut next = Vec::new();
            for v in &frontier {
                for g in self.moving_elements() {
                    let w = v.compose(g)?;
                    if !ball.contains_key(&w) {
                        if ball.len() >= memory_budget {
                            truncated = true;
                            break 'radius;
                        }
                        ball.insert(w.clone(), radius);
                        next.push(w);
                    }
                }
            }
            counts.push(counts.last().unwrap() + next.len() as u64);
            frontier = next;
        }
        Ok((ball, counts, truncated))
    }
}

/// Status of the positive-independence search at one radius.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DplusStatus {
    CertFound,
    AllRefuted,
    Mixed,
    Unexplored,
}

impl std::fmt::Display for DplusStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            DplusStatus::CertFound => "cert-found",
            DplusStatus::AllRefuted => "all-refuted",
            DplusStatus::Mixed => "mixed",
            DplusStatus::Unexplored => "unexplored",
        };
        write!(f, "{}", s)
    }
}

#[derive(Clone, Debug)]
pub struct GrowthRow {
    pub n: usize,
    pub count: u64,
    pub dplus_status: DplusStatus,
}

/// Per-radius ball sizes #Sigma^n. Counts are exact; `truncated` flags a
/// memory-budget cut (partial rows, never silently wrong ones).
#[derive(Clone, Debug)]
pub struct GrowthTable {
    pub rows: Vec<GrowthRow>,
    pub truncated: bool,
}

impl GrowthTable {
    pub fn count(&self, n: usize) -> Option<u64> {
        self.rows.get(n).map(|r| r.count)
    }

    /// #Sigma^{n+m} <= #Sigma^n * #Sigma^m on all tabulated indices.
    pub fn check_submultiplicative(&self) -> bool {
        let counts: Vec<u128> = self.rows.iter().map(|r| r.count as u128).collect();
        for n in 0..counts.len() {
            for m in 0..counts.len() {
                if n + m < counts.len() && counts[n + m] > counts[n] * counts[m] {
                    return false;
                }
            }
        }
        true
    }

    /// The doubling inequality #Sigma^{2n} <= (#Sigma^n)^2, i.e. the
    /// per-radius upper bounds decrease along doubling.
    pub fn check_doubling(&self, n: usize) -> Option<bool> {
        let a = self.count(n)? as u128;
        let b = self.count(2 * n)? as u128;
        Some(b <= a * a)
    }
}

/// Exact ball sizes for n <= n_max.
pub fn ball_sizes(sigma: &GeneratingSet, n_max: usize, memory_budget: usize) -> Result<GrowthTable> {
    let (_, counts, truncated) = sigma.expand(n_max, memory_budget)?;
    let rows = counts
        .into_iter()
        .enumerate()
        .map(|(n, count)| GrowthRow { n, count, dplus_status: DplusStatus::Unexplored })
        .collect();
    Ok(GrowthTable { rows, truncated })
}

/// Log-free entropy bounds: the lower bound log(2)/d is represented by the
/// radius d of a certified pair, the upper bounds log(#Sigma^n)/n by the
/// exact pairs (count, n). All comparisons stay in integer arithmetic.
#[derive(Clone, Debug)]
pub struct EntropyBounds {
    /// Some(d): entropy >= log(2)/d; None: only the trivial bound 0.
    pub lower_dplus: Option<usize>,
    pub uppers: Vec<(u64, usize)>,
}

impl EntropyBounds {
    /// log(2)/d <= log(c)/n holds iff 2^n <= c^d.
    pub fn lower_leq_upper(d: usize, count: u64, n: usize) -> bool {
        let lhs = BigUint::one() << n;
        let rhs = BigUint::from(count).pow(d as u32);
        lhs <= rhs
    }

    /// Every tabulated upper bound dominates the lower bound, exactly.
    pub fn consistent(&self) -> bool {
        match self.lower_dplus {
            None => true,
            Some(d) => self
                .uppers
                .iter()
                .all(|&(count, n)| n == 0 || Self::lower_leq_upper(d, count, n)),
        }
    }

    pub fn lower_nats(&self) -> f64 {
        match self.lower_dplus {
            None => 0.0,
            Some(d) => std::f64::consts::LN_2 / d as f64,
        }
    }

    pub fn best_upper_nats(&self) -> Option<f64> {
        self.uppers
            .iter()
            .filter(|&&(_, n)| n > 0)
            .map(|&(c, n)| (c as f64).ln() / n as f64)
            .min_by(|a, b| a.partial_cmp(b).unwrap())
    }
}

pub fn entropy_bounds(table: &GrowthTable, dplus_upper: Option<usize>) -> EntropyBounds {
    EntropyBounds {
        lower_dplus: dplus_upper,
        uppers: table.rows.iter().map(|r| (r.count, r.n)).collect(),
    }
}

/// A certified positively independent pair found at some radius.
#[derive(Clone, Debug)]
pub struct DplusUpper {
    pub radius: usize,
    pub pair: (AffineMap, AffineMap),
    pub certificate: PingPongCertificate,
    /// True when the pair is the conjugate family (z, w z w^-1) with z in
    /// the radius ball and w a generator (the second element then lives in
    /// the radius+2 ball); false for a pair wholly inside the ball.
    pub via_conjugate_family: bool,
}

/// Smallest radius at which a certified pair is found. Within each radius
/// the scan first tries every pair inside the ball (canonical order), then
/// the conjugate family (z, w z w^-1) with z the most contracting
/// generator power available.
pub fn dplus_upper(
    sigma: &GeneratingSet,
    n_max: usize,
    budget: &Budget,
) -> Result<Option<DplusUpper>> {
    let (ball_map, _, truncated) = sigma.expand(n_max, budget.memory_budget_elements)?;
    if truncated {
        return Err(Error::MemoryBudget);
    }
    let mut elements: Vec<(AffineMap, usize)> = ball_map.into_iter().collect();
    elements.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));

    // cache the expensive place scan per unordered ratio pair
    let mut ratio_cache: HashMap<(RingElement, RingElement), Option<Place>> = HashMap::new();
    let mut tested: HashSet<(AffineMap, AffineMap)> = HashSet::new();

    for radius in 1..=n_max {
        // in-ball pairs with at least one element first seen at this radius
        let in_ball: Vec<&(AffineMap, usize)> =
            elements.iter().filter(|(_, r)| *r <= radius).collect();
        for i in 0..in_ball.len() {
            for j in (i + 1)..in_ball.len() {
                let (f, rf) = in_ball[i];
                let (g, rg) = in_ball[j];
                if (*rf).max(*rg) < radius {
                    continue; // already scanned at a smaller radius
                }
                if !f.is_homothety() || !g.is_homothety() {
                    continue;
                }
                let key = if f <= g { (f.clone(), g.clone()) } else { (g.clone(), f.clone()) };
                if !tested.insert(key) {
                    continue;
                }
                if let Some(cert) = try_pair(f, g, budget, &mut ratio_cache)? {
                    return Ok(Some(DplusUpper {
                        radius,
                        pair: (f.clone(), g.clone()),
                        certificate: cert,
                        via_conjugate_family: false,
                    }));
                }
            }
        }
        // conjugate family: z = g^k (k <= radius), w the first generator
        // moving z's fixed point
        if let Some(found) = conjugate_family_at(sigma, radius, budget)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

/// Certificate attempt for one pair, with the place scan cached by the
/// (unordered) ratio pair: verdicts depend only on the ratios, so a place
/// that certified one pair is re-checked cheaply on the next.
fn try_pair(
    f: &AffineMap,
    g: &AffineMap,
    budget: &Budget,
    ratio_cache: &mut HashMap<(RingElement, RingElement), Option<Place>>,
) -> Result<Option<PingPongCertificate>> {
    let (ra, rb) = (f.ratio().clone(), g.ratio().clone());
    let key = if ra <= rb { (ra, rb) } else { (rb, ra) };
    if let Some(cached) = ratio_cache.get(&key) {
        return match cached {
            Some(place) => check_pingpong(f, g, place, budget.precision_bits),
            None => Ok(None),
        };
    }
    let result = search_freeness_certificate(f, g, budget)?;
    let place = result.as_ref().map(|c| c.place.clone());
    ratio_cache.insert(key, place);
    Ok(result)
}

fn conjugate_family_at(
    sigma: &GeneratingSet,
    radius: usize,
    budget: &Budget,
) -> Result<Option<DplusUpper>> {
    // score each generator power by its best certified archimedean bound
    let arch = ring_archimedean_places(sigma.ring(), budget.precision_bits)?;
    let mut scored: Vec<(Rat, usize, AffineMap)> = Vec::new();
    for (order, gen) in sigma.moving_elements().enumerate() {
        if !gen.is_homothety() {
            continue;
        }
        let mut enclosures = Vec::new();
        let mut nonzero = true;
        for place in &arch {
            let (eval, _) = place.abs_of(gen.ratio(), budget.precision_bits)?;
            if !eval.enclosure.lo.is_positive() {
                nonzero = false;
                break;
            }
            enclosures.push(eval.enclosure);
        }
        if !nonzero {
            continue;
        }
        for k in 1..=radius {
            let best = enclosures
                .iter()
                .map(|e| e.pow(k as i64).hi)
                .min()
                .unwrap_or_else(|| one_third() + Rat::one());
            scored.push((best, order, gen.map_pow(k as i64)));
        }
    }
    scored.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    for (_, _, z) in scored {
        let pz = match z.classify() {
            Ok(MapClass::Homothety { fixed_point }) => fixed_point,
            _ => continue,
        };
        let w = sigma.moving_elements().find(|w| {
            w.apply(&pz).map(|img| img != pz).unwrap_or(false)
        });
        let w = match w {
            Some(w) => w.clone(),
            None => continue,
        };
        let y = z.conjugate_by(&w)?;
        if let Some(cert) = search_freeness_certificate(&z, &y, budget)? {
            return Ok(Some(DplusUpper {
                radius,
                pair: (z, y),
                certificate: cert,
                via_conjugate_family: true,
            }));
        }
    }
    Ok(None)
}

/// How a pair was refuted during the lower-bound climb.
#[derive(Clone, Debug, Default)]
pub struct RefutationCounts {
    pub equal: usize,
    pub commuting: usize,
    pub ct_table: usize,
    pub translation_homothety: usize,
    pub bfs: usize,
}

#[derive(Clone, Debug)]
pub struct DplusLower {
    /// Every unordered pair in Sigma^m x Sigma^m is refuted, so the
    /// positive-independence radius is at least m + 1.
    pub m: usize,
    pub refuted_pairs: usize,
    pub methods: RefutationCounts,
    /// Pairs at radius m + 1 that resisted refutation (empty when the
    /// climb ran out of probes rather than out of refutations).
    pub unresolved: Vec<(AffineMap, AffineMap)>,
}

/// Detects the modulus family X^{3 n!} + X^{n!} + 1 and returns n.
pub fn detect_ct_parameter(modulus: &Poly) -> Option<u32> {
    for n in 1..=8u32 {
        let fact: usize = (1..=n as usize).product();
        if 3 * fact > 512 {
            break;
        }
        let mut coeffs = vec![0i64; 3 * fact + 1];
        coeffs[0] = 1;
        coeffs[fact] = 1;
        coeffs[3 * fact] = 1;
        if *modulus == Poly::from_int_coeffs(&coeffs) {
            return Some(n);
        }
    }
    None
}

/// Largest m <= n_probe with every unordered pair from the radius-m ball
/// refuted: equal elements, commuting pairs, the verified ct-relation table
/// for power ratios, the homothety-translation relation, or a found BFS
/// witness. Every refutation is re-verified exactly before it counts.
pub fn dplus_lower(sigma: &GeneratingSet, n_probe: usize, budget: &Budget) -> Result<DplusLower> {
    let ring = sigma.ring().clone();
    let ct_n = match ring.kind() {
        RingKind::NumberRing => detect_ct_parameter(ring.modulus()),
        RingKind::FunctionField => None,
    };
    // powers of x seen as ring elements, for ratio-exponent detection
    let mut power_table: HashMap<RingElement, i64> = HashMap::new();
    if let Some(n) = ct_n {
        let x = ring.generator();
        for k in -(n as i64)..=(n as i64) {
            if k != 0 {
                power_table.insert(x.pow(k).unwrap(), k);
            }
        }
    }

    let mut counts = RefutationCounts::default();
    let mut refuted: HashSet<(AffineMap, AffineMap)> = HashSet::new();
    let mut m_reached = 0usize;
    let mut unresolved = Vec::new();

    'climb: for m in 1..=n_probe {
        let ball = sigma.ball_elements(m, budget.memory_budget_elements)?;
        for i in 0..ball.len() {
            for j in (i + 1)..ball.len() {
                let f = &ball[i];
                let g = &ball[j];
                let key = (f.clone(), g.clone());
                if refuted.contains(&key) {
                    continue;
                }
                if refute_pair(f, g, ct_n, &power_table, budget, &mut counts)? {
                    refuted.insert(key);
                } else {
                    unresolved.push(key);
                    if unresolved.len() >= 4 {
                        break 'climb;
                    }
                }
            }
        }
        if unresolved.is_empty() {
            m_reached = m;
        } else {
            break;
        }
    }
    Ok(DplusLower {
        m: m_reached,
        refuted_pairs: refuted.len(),
        methods: counts,
        unresolved,
    })
}

fn refute_pair(
    f: &AffineMap,
    g: &AffineMap,
    ct_n: Option<u32>,
    power_table: &HashMap<RingElement, i64>,
    budget: &Budget,
    counts: &mut RefutationCounts,
) -> Result<bool> {
    if f == g {
        counts.equal += 1;
        return Ok(true);
    }
    if f.compose(g)? == g.compose(f)? {
        counts.commuting += 1;
        return Ok(true);
    }
    let class_f = f.classify();
    let class_g = g.classify();
    // both homotheties with power ratios: the verified ct table
    if let (Some(n), Ok(MapClass::Homothety { .. }), Ok(MapClass::Homothety { .. })) =
        (ct_n, &class_f, &class_g)
    {
        if let (Some(&s), Some(&r)) = (power_table.get(f.ratio()), power_table.get(g.ratio())) {
            let (u, v) = ct_relation_words(n, r, s)?;
            let w = RelationWitness { u, v };
            if verify_relation(&w, f, g) {
                counts.ct_table += 1;
                return Ok(true);
            }
        }
    }
    // homothety-translation: the pi = P - Q relation for the ratio's
    // characteristic polynomial, evaluated directly on the pair
    let ht = match (&class_f, &class_g) {
        (Ok(MapClass::Homothety { .. }), Ok(MapClass::Translation)) => Some((f, g, false)),
        (Ok(MapClass::Translation), Ok(MapClass::Homothety { .. })) => Some((g, f, true)),
        _ => None,
    };
    if let Some((h, t, swapped)) = ht {
        if h.ring().kind() == RingKind::NumberRing {
            let cp = h.ratio().charpoly()?;
            if let Ok(w) = translation_relation(&cp) {
                let ok = if swapped {
                    // witness letters are (homothety, translation)
                    verify_relation(&w, h, t)
                } else {
                    verify_relation(&w, f, g)
                };
                if ok {
                    counts.translation_homothety += 1;
                    return Ok(true);
                }
            }
        }
    }
    // last resort: breadth-first witness search
    match find_relation(f, g, budget.relation_max_len, budget.memory_budget_elements) {
        Ok(Some(w)) => {
            debug_assert!(verify_relation(&w, f, g));
            counts.bfs += 1;
            Ok(true)
        }
        Ok(None) => Ok(false),
        Err(Error::MemoryBudget) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Exact count of distinct evaluations of positive words of each length
/// n = 1..=n_max. Only two consecutive levels are ever stored.
pub fn count_positive_words(
    f: &AffineMap,
    g: &AffineMap,
    n_max: usize,
    memory_budget: usize,
) -> Result<Vec<u64>> {
    if *f.ring() != *g.ring() {
        return Err(Error::MixedParents);
    }
    let mut counts = Vec::with_capacity(n_max);
    let mut level: Vec<AffineMap> = vec![AffineMap::identity(f.ring())];
    for _ in 1..=n_max {
        let mut next: HashSet<AffineMap> = HashSet::with_capacity(level.len() * 2);
        for v in &level {
            next.insert(v.compose(f)?);
            next.insert(v.compose(g)?);
            if next.len() + level.len() > memory_budget {
                return Err(Error::MemoryBudget);
            }
        }
        counts.push(next.len() as u64);
        level = next.into_iter().collect();
        level.sort();
    }
    Ok(counts)
}

/// Combined per-radius status column: certificates and refutations merged
/// into the growth table rows.
pub fn annotate_dplus_status(
    table: &mut GrowthTable,
    upper: &Option<DplusUpper>,
    lower: &DplusLower,
) {
    for row in table.rows.iter_mut() {
        if row.n == 0 {
            row.dplus_status = DplusStatus::AllRefuted;
            continue;
        }
        let certified_here = upper.as_ref().map_or(false, |u| u.radius == row.n);
        let refuted_through = row.n <= lower.m;
        row.dplus_status = match (certified_here, refuted_through) {
            (true, _) => DplusStatus::CertFound,
            (false, true) => DplusStatus::AllRefuted,
            (false, false) => {
                if upper.as_ref().map_or(false, |u| row.n > u.radius) {
                    DplusStatus::Unexplored
                } else if lower.unresolved.is_empty() {
                    DplusStatus::Unexplored
                } else {
                    DplusStatus::Mixed
                }
            }
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::gamma_generators;
    use crate::field::ModulusRing;

    fn budget() -> Budget {
        Budget {
            relation_max_len: 8,
            precision_bits: 48,
            trial_division_bound: 100_000,
            memory_budget_elements: 1 << 20,
        }
    }

    fn gamma_set(coeffs: &[i64]) -> GeneratingSet {
        let ring = ModulusRing::number_ring_from_ints(coeffs).unwrap();
        let (a, b) = gamma_generators(&ring);
        GeneratingSet::new(vec![a, b]).unwrap()
    }

    #[test]
    fn symmetrization_is_canonical() {
        let ring = ModulusRing::number_ring_from_ints(&[-2, 1]).unwrap();
        let (a, b) = gamma_generators(&ring);
        let s1 = GeneratingSet::new(vec![a.clone(), b.clone()]).unwrap();
        let s2 = GeneratingSet::new(vec![b, a]).unwrap();
        assert_eq!(s1.symmetrized(), s2.symmetrized());
        assert_eq!(s1.symmetrized().len(), 5); // 1, A, A^-1, B, B^-1
    }

    #[test]
    fn ball_sizes_for_gamma_two() {
        let sigma = gamma_set(&[-2, 1]);
        let table = ball_sizes(&sigma, 4, 1 << 20).unwrap();
        assert_eq!(table.count(0), Some(1));
        assert_eq!(table.count(1), Some(5));
        assert!(table.check_submultiplicative());
        // counts strictly grow for this pair
        assert!(table.count(2).unwrap() > 5);
    }

    #[test]
    fn cyclic_growth_is_linear() {
        // one homothety: #Sigma^n = 2n + 1
        let ring = ModulusRing::number_ring_from_ints(&[-2, 1]).unwrap();
        let a = AffineMap::new(ring.from_int(2), ring.zero()).unwrap();
        let sigma = GeneratingSet::new(vec![a]).unwrap();
        let table = ball_sizes(&sigma, 6, 1 << 16).unwrap();
        for n in 0..=6 {
            assert_eq!(table.count(n), Some(2 * n as u64 + 1));
        }
    }

    #[test]
    fn ball_two_matches_naive_pairwise_products() {
        // independent oracle: multiply all 25 pairs of Sigma^1 and dedup
        let sigma = gamma_set(&[1, 1, 0, 1]);
        let table = ball_sizes(&sigma, 2, 1 << 16).unwrap();
        let one_ball = sigma.ball_elements(1, 1 << 16).unwrap();
        let mut products = HashSet::new();
        for f in &one_ball {
            for g in &one_ball {
                products.insert(f.compose(g).unwrap());
            }
        }
        assert_eq!(table.count(2), Some(products.len() as u64));
    }

    #[test]
    fn ball_progression_independent_of_generator_order() {
        let ring = ModulusRing::number_ring_from_ints(&[1, 1, 0, 1]).unwrap();
        let (a, b) = gamma_generators(&ring);
        let t1 = ball_sizes(&GeneratingSet::new(vec![a.clone(), b.clone()]).unwrap(), 3, 1 << 16)
            .unwrap();
        let t2 = ball_sizes(&GeneratingSet::new(vec![b, a]).unwrap(), 3, 1 << 16).unwrap();
        let c1: Vec<u64> = t1.rows.iter().map(|r| r.count).collect();
        let c2: Vec<u64> = t2.rows.iter().map(|r| r.count).collect();
        assert_eq!(c1, c2);
    }

    #[test]
    fn dplus_upper_gamma_two_at_radius_one() {
        let sigma = gamma_set(&[-2, 1]);
        let found = dplus_upper(&sigma, 3, &budget()).unwrap().unwrap();
        assert_eq!(found.radius, 1);
        assert!(!found.via_conjugate_family);
        // the certified pair is (A, B) in canonical order
        let ring = sigma.ring();
        let (a, b) = gamma_generators(ring);
        let pair = found.pair;
        assert!(pair == (a.clone(), b.clone()) || pair == (b, a));
    }

    #[test]
    fn dplus_upper_golden_at_radius_three() {
        // no ratio available at radius <= 2 contracts below 1/3 at any
        // archimedean place, so the first certificate appears at radius 3
        let sigma = gamma_set(&[-1, -1, 1]);
        let found = dplus_upper(&sigma, 4, &budget()).unwrap().unwrap();
        assert_eq!(found.radius, 3);
        assert_eq!(found.pair.0.ratio(), found.pair.1.ratio());
    }

    #[test]
    fn dplus_upper_family_pair_when_ball_has_no_second_contraction() {
        // generators A = (x, 0) and the translation (1, 1): every ball
        // element with ratio x^k is a pure power of A, so no in-ball pair
        // has distinct fixed points; the conjugate family (z, w z w^-1)
        // with z = A^-3 succeeds at radius 3
        let ring = ModulusRing::number_ring_from_ints(&[-1, -1, 1]).unwrap();
        let (a, _) = gamma_generators(&ring);
        let t = AffineMap::new(ring.one(), ring.one()).unwrap();
        let sigma = GeneratingSet::new(vec![a.clone(), t]).unwrap();
        let found = dplus_upper(&sigma, 4, &budget()).unwrap().unwrap();
        assert_eq!(found.radius, 3);
        assert!(found.via_conjugate_family);
        assert_eq!(found.pair.0, a.map_pow(-3));
        assert_eq!(found.pair.1.ratio(), found.pair.0.ratio());
    }

    #[test]
    fn dplus_upper_none_for_virtually_nilpotent() {
        let sigma = gamma_set(&[1, 1, 1]);
        assert!(dplus_upper(&sigma, 4, &budget()).unwrap().is_none());
    }

    #[test]
    fn dplus_lower_ct_ring_refutes_radius_one() {
        // n = 2 member of the counterexample family: X^6 + X^2 + 1
        let sigma = gamma_set(&[1, 0, 1, 0, 0, 0, 1]);
        let lower = dplus_lower(&sigma, 1, &budget()).unwrap();
        assert_eq!(lower.m, 1);
        assert!(lower.unresolved.is_empty());
        assert!(lower.methods.ct_table > 0);
    }

    #[test]
    fn dplus_lower_abelian_climbs_to_probe() {
        let ring = ModulusRing::number_ring_from_ints(&[-2, 1]).unwrap();
        let a = AffineMap::new(ring.from_int(2), ring.zero()).unwrap();
        let sigma = GeneratingSet::new(vec![a]).unwrap();
        let lower = dplus_lower(&sigma, 3, &budget()).unwrap();
        assert_eq!(lower.m, 3);
        assert!(lower.methods.commuting > 0);
    }

    #[test]
    fn dplus_lower_gamma_two_stops_at_zero() {
        let sigma = gamma_set(&[-2, 1]);
        let lower = dplus_lower(&sigma, 2, &budget()).unwrap();
        assert_eq!(lower.m, 0);
        assert!(!lower.unresolved.is_empty());
    }

    #[test]
    fn lower_and_upper_never_contradict() {
        for coeffs in [[-2i64, 1].as_slice(), [-1, -1, 1].as_slice()] {
            let sigma = gamma_set(coeffs);
            let lower = dplus_lower(&sigma, 2, &budget()).unwrap();
            if let Some(upper) = dplus_upper(&sigma, 3, &budget()).unwrap() {
                assert!(lower.m + 1 <= upper.radius);
            }
        }
    }

    #[test]
    fn count_positive_words_examples() {
        let ring = ModulusRing::number_ring_from_ints(&[-2, 1]).unwrap();
        let (a, b) = gamma_generators(&ring);
        let counts = count_positive_words(&a, &b, 8, 1 << 16).unwrap();
        for (i, c) in counts.iter().enumerate() {
            assert_eq!(*c, 1u64 << (i + 1));
        }

        // the cubic relation A^4 = B^2 A B collapses length 4
        let cubic = ModulusRing::number_ring_from_ints(&[1, 1, 0, 1]).unwrap();
        let (a, b) = gamma_generators(&cubic);
        let counts = count_positive_words(&a, &b, 4, 1 << 16).unwrap();
        assert_eq!(counts[0], 2);
        assert_eq!(counts[1], 4);
        assert_eq!(counts[2], 8);
        assert!(counts[3] < 16);

        // a pair of equal elements has one value per length
        let counts = count_positive_words(&a, &a, 5, 1 << 16).unwrap();
        assert!(counts.iter().all(|&c| c == 1));
    }

    #[test]
    fn entropy_bounds_for_gamma_two() {
        let sigma = gamma_set(&[-2, 1]);
        let table = ball_sizes(&sigma, 6, 1 << 20).unwrap();
        let bounds = entropy_bounds(&table, Some(1));
        assert!(bounds.consistent());
        // lower = log 2, every upper >= log 2 means counts >= 2^n
        for r in &table.rows {
            assert!(r.count as u128 >= 1u128 << r.n);
        }
    }

    #[test]
    fn entropy_lower_zero_for_kronecker_case() {
        let sigma = gamma_set(&[1, 1, 1]);
        let table = ball_sizes(&sigma, 5, 1 << 20).unwrap();
        let bounds = entropy_bounds(&table, None);
        assert!(bounds.consistent());
        assert_eq!(bounds.lower_nats(), 0.0);
    }

    #[test]
    fn rescaled_generating_set_finds_pair_at_reduced_radius() {
        // pair found in Sigma^n appears in (Sigma^k)^{ceil(n/k)}
        let sigma = gamma_set(&[-2, 1]);
        let found = dplus_upper(&sigma, 2, &budget()).unwrap().unwrap();
        assert_eq!(found.radius, 1);
        let squared = sigma.power(2, 1 << 16).unwrap();
        let found2 = dplus_upper(&squared, 1, &budget()).unwrap().unwrap();
        assert_eq!(found2.radius, 1);
    }

    #[test]
    fn detect_ct_parameters() {
        assert_eq!(detect_ct_parameter(&Poly::from_int_coeffs(&[1, 1, 0, 1])), Some(1));
        let mut c = vec![0i64; 7];
        c[0] = 1;
        c[2] = 1;
        c[6] = 1;
        assert_eq!(detect_ct_parameter(&Poly::from_int_coeffs(&c)), Some(2));
        assert_eq!(detect_ct_parameter(&Poly::from_int_coeffs(&[-1, -1, 1])), None);
    }
}
