//! The group of affine maps z -> a z + b over an exact coefficient ring:
//! composition, inversion, fixed points, conjugation, word evaluation, the
//! canonical-pair reduction, and the polycyclic / virtually nilpotent
//! classifier driven by the algebraic type of the dilation ratios.

use crate::error::{Error, Result};
use crate::field::{IrreducibleHint, Ring, RingElement, RingKind};
use num_traits::One;
use std::fmt;

/// An affine map z -> a z + b with invertible ratio a, i.e. the matrix
/// (a b; 0 1). Equality is componentwise on canonical forms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AffineMap {
    ratio: RingElement,
    translation: RingElement,
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.ratio, self.translation)
    }
}

impl fmt::Debug for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl PartialOrd for AffineMap {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AffineMap {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.ratio
            .cmp(&other.ratio)
            .then_with(|| self.translation.cmp(&other.translation))
    }
}

/// Fixed-point structure of a single affine map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapClass {
    Identity,
    Translation,
    Homothety { fixed_point: RingElement },
}

/// Group-level structure read off the generator ratios.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupClass {
    VirtuallyNilpotent,
    PolycyclicNotVN,
    NotPolycyclic,
    Unknown,
}

impl fmt::Display for GroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupClass::VirtuallyNilpotent => "virtually-nilpotent",
            GroupClass::PolycyclicNotVN => "polycyclic-not-virtually-nilpotent",
            GroupClass::NotPolycyclic => "not-polycyclic",
            GroupClass::Unknown => "unknown",
        };
        write!(f, "{}", s)
    }
}

impl AffineMap {
    /// Builds z -> a z + b; the ratio must be invertible.
    pub fn new(ratio: RingElement, translation: RingElement) -> Result<Self> {
        if *ratio.parent() != *translation.parent() {
            return Err(Error::MixedParents);
        }
        if !ratio.is_invertible() {
            return Err(Error::NonInvertibleRatio);
        }
        Ok(AffineMap { ratio, translation })
    }

    pub fn identity(ring: &Ring) -> Self {
        AffineMap {
            ratio: ring.one(),
            translation: ring.zero(),
        }
    }

    pub fn ratio(&self) -> &RingElement {
        &self.ratio
    }

    pub fn translation(&self) -> &RingElement {
        &self.translation
    }

    pub fn ring(&self) -> &Ring {
        self.ratio.parent()
    }

    pub fn is_identity(&self) -> bool {
        self.ratio.is_one() && self.translation.is_zero()
    }

    /// Image of a point: a z + b.
    pub fn apply(&self, z: &RingElement) -> Result<RingElement> {
        self.ratio.mul(z)?.add(&self.translation)
    }

    /// (f o g)(z) = f(g(z)): the ratio multiplies and the translation part
    /// is f.a * g.b + f.b, i.e. the matrix product.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if *self.ring() != *g.ring() {
            return Err(Error::MixedParents);
        }
        Ok(AffineMap {
            ratio: self.ratio.mul(&g.ratio)?,
            translation: self.ratio.mul(&g.translation)?.add(&self.translation)?,
        })
    }

    /// Two-sided inverse: z -> (z - b)/a.
    pub fn invert(&self) -> Self {
        let inv_a = self.ratio.inv().expect("ratio invertible by construction");
        let minus_b = inv_a.mul(&self.translation).unwrap().neg();
        AffineMap {
            ratio: inv_a,
            translation: minus_b,
        }
    }

    /// k-th power by binary exponentiation; negative k goes through invert.
    pub fn map_pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = AffineMap::identity(self.ring());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq).unwrap();
            }
            e >>= 1;
            if e > 0 {
                sq = sq.compose(&sq).unwrap();
            }
        }
        acc
    }

    /// Identity, pure translation, or homothety with its exact fixed point
    /// p = b / (1 - a). In a reducible quotient 1 - a can be a zero divisor;
    /// that surfaces as `ZeroDivisor` rather than guessing a class.
    pub fn classify(&self) -> Result<MapClass> {
        if self.ratio.is_one() {
            if self.translation.is_zero() {
                return Ok(MapClass::Identity);
            }
            return Ok(MapClass::Translation);
        }
        let one_minus_a = self.ring().one().sub(&self.ratio)?;
        let p = self.translation.mul(&one_minus_a.inv()?)?;
        debug_assert_eq!(self.apply(&p).unwrap(), p);
        Ok(MapClass::Homothety { fixed_point: p })
    }

    pub fn is_homothety(&self) -> bool {
        !self.ratio.is_one()
    }

    /// The exact fixed point of a homothety, if 1 - a is invertible.
    pub fn fixed_point(&self) -> Result<RingElement> {
        match self.classify()? {
            MapClass::Homothety { fixed_point } => Ok(fixed_point),
            _ => Err(Error::NotHomothety),
        }
    }

    /// w o self o w^{-1}: the ratio is preserved and the fixed point maps
    /// by w.
    pub fn conjugate_by(&self, w: &Self) -> Result<Self> {
        w.compose(self)?.compose(&w.invert())
    }
}

/// A word over generator indices with exponents +-1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn push(&mut self, gen: usize, inverse: bool) {
        self.letters.push(Letter { gen, inverse });
    }

    /// Appends gen^count (count >= 0) as repeated positive letters.
    pub fn push_power(&mut self, gen: usize, count: usize) {
        for _ in 0..count {
            self.push(gen, false);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| !l.inverse)
    }

    /// Compact text form: generator i is the letter 'a' + i, uppercase for
    /// the inverse.
    pub fn to_compact(&self) -> String {
        self.letters
            .iter()
            .map(|l| {
                let c = (b'a' + l.gen as u8) as char;
                if l.inverse {
                    c.to_ascii_uppercase()
                } else {
                    c
                }
            })
            .collect()
    }

    pub fn from_compact(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for c in s.chars() {
            if c.is_whitespace() {
                continue;
            }
            if !c.is_ascii_alphabetic() {
                return Err(Error::Parse(format!("bad word letter {c:?}")));
            }
            let inverse = c.is_ascii_uppercase();
            let gen = (c.to_ascii_lowercase() as u8 - b'a') as usize;
            letters.push(Letter { gen, inverse });
        }
        Ok(Word { letters })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "e");
        }
        write!(f, "{}", self.to_compact())
    }
}

/// Left-to-right composition: the leftmost letter is applied last, matching
/// the reading of relations like A^4 = B^2 A B. Runs of one letter are
/// collapsed into a binary-exponentiation power, so words with long
/// generator blocks evaluate in logarithmic time per block.
pub fn eval_word(word: &Word, generators: &[AffineMap]) -> Result<AffineMap> {
    let ring = match generators.first() {
        Some(g) => g.ring().clone(),
        None => {
            let gen = word.letters().first().map_or(0, |l| l.gen);
            return Err(Error::IndexOutOfRange(gen, 0));
        }
    };
    let letters = word.letters();
    let mut acc = AffineMap::identity(&ring);
    let mut i = 0;
    while i < letters.len() {
        let l = letters[i];
        let mut j = i + 1;
        while j < letters.len() && letters[j] == l {
            j += 1;
        }
        let g = generators
            .get(l.gen)
            .ok_or(Error::IndexOutOfRange(l.gen, generators.len()))?;
        let count = (j - i) as i64;
        let exp = if l.inverse { -count } else { count };
        acc = acc.compose(&g.map_pow(exp))?;
        i = j;
    }
    Ok(acc)
}

/// Conjugates a pair of homotheties to the normal form with fixed points 0
/// and 1 and unchanged ratios. The conjugator is the unique affine map
/// sending (p_f, p_g) to (0, 1).
pub fn canonical_pair(f: &AffineMap, g: &AffineMap) -> Result<(AffineMap, AffineMap)> {
    let (cf, cg, _) = canonical_pair_with_conjugator(f, g)?;
    Ok((cf, cg))
}

pub fn canonical_pair_with_conjugator(
    f: &AffineMap,
    g: &AffineMap,
) -> Result<(AffineMap, AffineMap, AffineMap)> {
    let (pf, pg) = match (f.classify()?, g.classify()?) {
        (MapClass::Homothety { fixed_point: pf }, MapClass::Homothety { fixed_point: pg }) => {
            (pf, pg)
        }
        _ => return Err(Error::NotTwoHomotheties),
    };
    if pf == pg {
        return Err(Error::EqualFixedPoints);
    }
    let c = pg.sub(&pf)?.inv()?;
    let d = pf.mul(&c)?.neg();
    let gamma = AffineMap::new(c, d)?;
    debug_assert!(gamma.apply(&pf).unwrap().is_zero());
    debug_assert!(gamma.apply(&pg).unwrap().is_one());
    Ok((f.conjugate_by(&gamma)?, g.conjugate_by(&gamma)?, gamma))
}

/// Lemma-zoo classification from the generator ratios: all roots of unity
/// means virtually nilpotent, all units means polycyclic, a non-unit ratio
/// means not polycyclic. Over Q(t) only constant ratios are classified;
/// anything else reports Unknown rather than reaching for function-field
/// unit theory.
pub fn classify_group(generators: &[AffineMap]) -> Result<GroupClass> {
    if generators.is_empty() {
        return Ok(GroupClass::VirtuallyNilpotent);
    }
    let ring = generators[0].ring();
    match ring.kind() {
        RingKind::FunctionField => {
            let mut all_pm_one = true;
            for g in generators {
                match g.ratio().as_rational() {
                    Some(c) => {
                        if !(c.is_one() || (-c.clone()).is_one()) {
                            all_pm_one = false;
                        }
                    }
                    None => return Ok(GroupClass::Unknown),
                }
            }
            // constants: the units (and roots of unity) of Q are exactly +-1
            Ok(if all_pm_one {
                GroupClass::VirtuallyNilpotent
            } else {
                GroupClass::NotPolycyclic
            })
        }
        RingKind::NumberRing => {
            if ring.irreducible_hint() != IrreducibleHint::Yes {
                return Err(Error::RequiresField);
            }
            let mut all_roots_of_unity = true;
            for g in generators {
                if !g.ratio().is_unit()? {
                    return Ok(GroupClass::NotPolycyclic);
                }
                if g.ratio().is_root_of_unity()?.is_none() {
                    all_roots_of_unity = false;
                }
            }
            Ok(if all_roots_of_unity {
                GroupClass::VirtuallyNilpotent
            } else {
                GroupClass::PolycyclicNotVN
            })
        }
    }
}

/// The standard generator pair A = (x, 0), B = (x, 1) over a given ring,
/// where x is the ring generator (or the named value in a degree-1 ring).
pub fn gamma_generators(ring: &Ring) -> (AffineMap, AffineMap) {
    let x = match ring.kind() {
        RingKind::NumberRing if ring.degree() == 1 => {
            // the class of X in Q[X]/(X - c) is the rational c
            let c = -ring.modulus().coeff(0);
            ring.from_rat(c)
        }
        _ => ring.generator(),
    };
    let a = AffineMap::new(x.clone(), ring.zero()).expect("ring generator is invertible");
    let b = AffineMap::new(x, ring.one()).expect("ring generator is invertible");
    (a, b)
}

/// Parses a generator list "a|b; a|b; ..." where a and b are element texts.
pub fn parse_generators(ring: &Ring, s: &str) -> Result<Vec<AffineMap>> {
    let mut out = Vec::new();
    for part in s.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (a, b) = part
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("expected a|b in {part:?}")))?;
        let a = ring.parse_element(a)?;
        let b = ring.parse_element(b)?;
        out.push(AffineMap::new(a, b)?);
    }
    if out.is_empty() {
        return Err(Error::Parse("empty generator list".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ModulusRing;
    use crate::rat::rat;

    fn cubic_ring() -> Ring {
        ModulusRing::number_ring_from_ints(&[1, 1, 0, 1]).unwrap()
    }

    fn golden_ring() -> Ring {
        ModulusRing::number_ring_from_ints(&[-1, -1, 1]).unwrap()
    }

    #[test]
    fn section7_identity_in_cubic_ring() {
        // A = (x, 0), B = (x, 1): B^2 A B = A^4 exactly when x^3 + x + 1 = 0
        let ring = cubic_ring();
        let (a, b) = gamma_generators(&ring);
        let lhs = b.compose(&b).unwrap().compose(&a).unwrap().compose(&b).unwrap();
        let rhs = a.map_pow(4);
        assert_eq!(lhs, rhs);
        assert!(rhs.translation().is_zero());

        // negative control: x^3 + x + 2
        let ring = ModulusRing::number_ring_from_ints(&[2, 1, 0, 1]).unwrap();
        let (a, b) = gamma_generators(&ring);
        let lhs = b.compose(&b).unwrap().compose(&a).unwrap().compose(&b).unwrap();
        assert_ne!(lhs, a.map_pow(4));
    }

    #[test]
    fn compose_identity_and_inverse() {
        let ring = golden_ring();
        let (a, b) = gamma_generators(&ring);
        let id = AffineMap::identity(&ring);
        assert_eq!(a.compose(&id).unwrap(), a);
        assert!(b.compose(&b.invert()).unwrap().is_identity());
        assert!(b.invert().compose(&b).unwrap().is_identity());

        let d1 = ModulusRing::number_ring_from_ints(&[-2, 1]).unwrap();
        let f = AffineMap::new(d1.from_int(2), d1.from_int(1)).unwrap();
        let inv = f.invert();
        assert_eq!(inv.ratio().as_rational().unwrap(), rat(1, 2));
        assert_eq!(inv.translation().as_rational().unwrap(), rat(-1, 2));
    }

    #[test]
    fn map_pow_matches_composition() {
        let ring = cubic_ring();
        let (_, b) = gamma_generators(&ring);
        assert!(b.map_pow(0).is_identity());
        assert_eq!(b.map_pow(2), b.compose(&b).unwrap());
        assert_eq!(b.map_pow(-2), b.invert().compose(&b.invert()).unwrap());
        // (x, 1)^2 = (x^2, x + 1)
        let sq = b.map_pow(2);
        let x = ring.generator();
        assert_eq!(sq.ratio(), &x.pow(2).unwrap());
        assert_eq!(sq.translation(), &x.add(&ring.one()).unwrap());
    }

    #[test]
    fn classify_map_cases() {
        let ring = golden_ring();
        let x = ring.generator();
        let f = AffineMap::new(x.clone(), ring.one()).unwrap();
        match f.classify().unwrap() {
            MapClass::Homothety { fixed_point } => {
                assert_eq!(f.apply(&fixed_point).unwrap(), fixed_point);
            }
            other => panic!("expected homothety, got {other:?}"),
        }
        let t = AffineMap::new(ring.one(), ring.from_int(5)).unwrap();
        assert_eq!(t.classify().unwrap(), MapClass::Translation);
        let id = AffineMap::identity(&ring);
        assert_eq!(id.classify().unwrap(), MapClass::Identity);
    }

    #[test]
    fn classify_map_zero_divisor_in_reducible_ring() {
        // In Q[X]/((X-1)(X-2)), the map (x, 1) has 1 - x a zero divisor.
        let ring = ModulusRing::number_ring_from_ints(&[2, -3, 1]).unwrap();
        let f = AffineMap::new(ring.generator(), ring.one()).unwrap();
        assert_eq!(f.classify().unwrap_err(), Error::ZeroDivisor);
    }

    #[test]
    fn conjugation_transports_fixed_points() {
        let d1 = ModulusRing::number_ring_from_ints(&[-2, 1]).unwrap();
        let f = AffineMap::new(d1.from_int(2), d1.zero()).unwrap(); // fixes 0
        let w = AffineMap::new(d1.one(), d1.one()).unwrap(); // z + 1
        let c = f.conjugate_by(&w).unwrap();
        assert_eq!(c.ratio(), f.ratio());
        assert_eq!(c.fixed_point().unwrap(), w.apply(&d1.zero()).unwrap());
        assert_eq!(c.translation().as_rational().unwrap(), rat(-1, 1));

        let id = AffineMap::identity(&d1);
        assert_eq!(f.conjugate_by(&id).unwrap(), f);

        // over the golden ring with w = (x, 1)
        let ring = golden_ring();
        let (a, b) = gamma_generators(&ring);
        let c = a.conjugate_by(&b).unwrap();
        assert_eq!(c.ratio(), a.ratio());
        assert_eq!(c.fixed_point().unwrap(), b.apply(&ring.zero()).unwrap());
    }

    #[test]
    fn eval_word_examples() {
        let ring = cubic_ring();
        let (a, _) = gamma_generators(&ring);
        let t = AffineMap::new(ring.one(), ring.one()).unwrap(); // z + 1
        let gens = [a.clone(), t.clone()];
        // with a = (x, 0) and b = (1, 1):
        // b a b a a b evaluates to (x^3, pi(x)) = (x^3, 0) = eval of "a a a"
        let w = Word::from_compact("babaab").unwrap();
        let v = eval_word(&w, &gens).unwrap();
        assert_eq!(
            v,
            eval_word(&Word::from_compact("aaa").unwrap(), &gens).unwrap()
        );
        assert!(v.translation().is_zero());

        assert!(eval_word(&Word::empty(), &gens).unwrap().is_identity());
        let w = Word::from_compact("aA").unwrap();
        assert!(eval_word(&w, &gens).unwrap().is_identity());

        let w = Word::from_compact("c").unwrap();
        assert_eq!(
            eval_word(&w, &gens).unwrap_err(),
            Error::IndexOutOfRange(2, 2)
        );
    }

    #[test]
    fn canonical_pair_examples() {
        let d1 = ModulusRing::number_ring_from_ints(&[-2, 1]).unwrap();
        // already canonical: fixed points 0 and 1
        let f = AffineMap::new(d1.from_int(2), d1.zero()).unwrap();
        let g = AffineMap::new(d1.from_int(2), d1.from_int(-1)).unwrap();
        assert_eq!(g.fixed_point().unwrap().as_rational().unwrap(), rat(1, 1));
        let (cf, cg) = canonical_pair(&f, &g).unwrap();
        assert_eq!(cf, f);
        assert_eq!(cg, g);

        // f fixes -1, g fixes 0: conjugator is z + 1
        let f = AffineMap::new(d1.from_int(2), d1.from_int(1)).unwrap();
        let g = AffineMap::new(d1.from_int(3), d1.zero()).unwrap();
        let (cf, cg) = canonical_pair(&f, &g).unwrap();
        assert!(cf.fixed_point().unwrap().is_zero());
        assert!(cg.fixed_point().unwrap().is_one());
        assert_eq!(cf.ratio(), f.ratio());
        assert_eq!(cg.ratio(), g.ratio());

        let same = canonical_pair(&f, &f);
        assert_eq!(same.unwrap_err(), Error::EqualFixedPoints);
        let t = AffineMap::new(d1.one(), d1.one()).unwrap();
        assert_eq!(
            canonical_pair(&f, &t).unwrap_err(),
            Error::NotTwoHomotheties
        );
    }

    #[test]
    fn classify_group_triple() {
        // zeta_3: virtually nilpotent
        let ring = ModulusRing::number_ring_from_ints(&[1, 1, 1]).unwrap();
        let (a, b) = gamma_generators(&ring);
        assert_eq!(
            classify_group(&[a, b]).unwrap(),
            GroupClass::VirtuallyNilpotent
        );

        // golden ratio: unit, not a root of unity
        let ring = golden_ring();
        let (a, b) = gamma_generators(&ring);
        assert_eq!(classify_group(&[a, b]).unwrap(), GroupClass::PolycyclicNotVN);

        // x = 2: not a unit
        let ring = ModulusRing::number_ring_from_ints(&[-2, 1]).unwrap();
        let (a, b) = gamma_generators(&ring);
        assert_eq!(classify_group(&[a, b]).unwrap(), GroupClass::NotPolycyclic);
    }

    #[test]
    fn classify_group_invariance_under_inverses_and_conjugation() {
        let ring = golden_ring();
        let (a, b) = gamma_generators(&ring);
        let base = classify_group(&[a.clone(), b.clone()]).unwrap();
        let inverted = classify_group(&[a.invert(), b.invert()]).unwrap();
        assert_eq!(base, inverted);
        let w = AffineMap::new(ring.generator(), ring.from_int(3)).unwrap();
        let conj = classify_group(&[
            a.conjugate_by(&w).unwrap(),
            b.conjugate_by(&w).unwrap(),
        ])
        .unwrap();
        assert_eq!(base, conj);
    }

    #[test]
    fn classify_group_function_field() {
        let qt = ModulusRing::function_field();
        let (a, b) = gamma_generators(&qt);
        assert_eq!(classify_group(&[a, b]).unwrap(), GroupClass::Unknown);
        let c = AffineMap::new(qt.from_int(-1), qt.one()).unwrap();
        assert_eq!(
            classify_group(&[c]).unwrap(),
            GroupClass::VirtuallyNilpotent
        );
        let d = AffineMap::new(qt.from_int(2), qt.one()).unwrap();
        assert_eq!(classify_group(&[d]).unwrap(), GroupClass::NotPolycyclic);
    }

    #[test]
    fn gamma_generators_shapes() {
        let ring = cubic_ring();
        let (a, b) = gamma_generators(&ring);
        assert_eq!(a.ratio(), &ring.generator());
        assert!(a.translation().is_zero());
        assert!(b.translation().is_one());

        let d1 = ModulusRing::number_ring_from_ints(&[-2, 1]).unwrap();
        let (a, _) = gamma_generators(&d1);
        assert_eq!(a.ratio().as_rational().unwrap(), rat(2, 1));

        let qt = ModulusRing::function_field();
        let (a, _) = gamma_generators(&qt);
        assert_eq!(a.ratio(), &qt.generator());
    }

    #[test]
    fn parse_generator_lists() {
        let ring = cubic_ring();
        let gens = parse_generators(&ring, "x|0; x|1").unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[0], gamma_generators(&ring).0);
        assert!(parse_generators(&ring, "x").is_err());
        assert!(parse_generators(&ring, "0|1").is_err()); // non-invertible ratio
    }
}
