//! Exact arithmetic in Q[X]/(pi) for monic integer pi, and in the rational
//! function field Q(t), together with the algebraic predicates (integer,
//! unit, root of unity) used by the group classifiers.
//!
//! Reducible moduli are first class: operations that need field structure
//! report `ZeroDivisor` on non-invertible input instead of assuming anything
//! about the factorization of pi.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rat::{rat_from_string, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingKind {
    NumberRing,
    FunctionField,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IrreducibleHint {
    Yes,
    No,
    Unknown,
}

/// The coefficient domain handle: Q[X]/(pi) or Q(t).
#[derive(Debug)]
pub struct ModulusRing {
    kind: RingKind,
    /// Monic integer modulus (NumberRing only; zero polynomial otherwise).
    modulus: Poly,
    irreducible: IrreducibleHint,
}

pub type Ring = Arc<ModulusRing>;

impl PartialEq for ModulusRing {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.modulus == other.modulus
    }
}
impl Eq for ModulusRing {}

impl ModulusRing {
    /// Builds Q[X]/(pi). The modulus must be monic with integer
    /// coefficients and degree >= 1.
    pub fn number_ring(modulus: Poly) -> Result<Ring> {
        if modulus.is_zero() || modulus.deg() < 1 {
            return Err(Error::EmptyModulus);
        }
        if !modulus.has_integer_coeffs() {
            return Err(Error::NonIntegerModulus);
        }
        if !modulus.is_monic() {
            return Err(Error::NonMonic);
        }
        let irreducible = cheap_irreducibility(&modulus);
        Ok(Arc::new(ModulusRing {
            kind: RingKind::NumberRing,
            modulus,
            irreducible,
        }))
    }

    pub fn number_ring_from_ints(coeffs: &[i64]) -> Result<Ring> {
        ModulusRing::number_ring(Poly::from_int_coeffs(coeffs))
    }

    /// The rational function field Q(t).
    pub fn function_field() -> Ring {
        Arc::new(ModulusRing {
            kind: RingKind::FunctionField,
            modulus: Poly::zero(),
            irreducible: IrreducibleHint::Yes,
        })
    }

    /// Returns a copy of this ring with the irreducibility hint asserted by
    /// the caller. Field-gated predicates trust the assertion.
    pub fn assert_irreducible(self: &Ring) -> Ring {
        Arc::new(ModulusRing {
            kind: self.kind,
            modulus: self.modulus.clone(),
            irreducible: IrreducibleHint::Yes,
        })
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn irreducible_hint(&self) -> IrreducibleHint {
        self.irreducible
    }

    pub fn is_field_case(&self) -> bool {
        self.irreducible == IrreducibleHint::Yes
    }

    /// Extension degree d (NumberRing only).
    pub fn degree(&self) -> usize {
        match self.kind {
            RingKind::NumberRing => self.modulus.deg(),
            RingKind::FunctionField => 0,
        }
    }

    pub fn zero(self: &Ring) -> RingElement {
        match self.kind {
            RingKind::NumberRing => self.element_from_poly(Poly::zero()),
            RingKind::FunctionField => self.function_element(Poly::zero(), Poly::one()).unwrap(),
        }
    }

    pub fn one(self: &Ring) -> RingElement {
        self.from_rat(Rat::one())
    }

    pub fn from_rat(self: &Ring, c: Rat) -> RingElement {
        match self.kind {
            RingKind::NumberRing => self.element_from_poly(Poly::constant(c)),
            RingKind::FunctionField => {
                self.function_element(Poly::constant(c), Poly::one()).unwrap()
            }
        }
    }

    pub fn from_int(self: &Ring, n: i64) -> RingElement {
        self.from_rat(crate::rat::rat_int(n))
    }

    /// The class of X (NumberRing) or the variable t (FunctionField).
    pub fn generator(self: &Ring) -> RingElement {
        match self.kind {
            RingKind::NumberRing => self.element_from_poly(Poly::x()),
            RingKind::FunctionField => self.function_element(Poly::x(), Poly::one()).unwrap(),
        }
    }

    /// Reduces a rational polynomial to the canonical coefficient vector.
    pub fn element_from_poly(self: &Ring, f: Poly) -> RingElement {
        match self.kind {
            RingKind::NumberRing => {
                let d = self.degree();
                let reduced = if f.degree().map_or(false, |n| n >= d) {
                    f.divrem(&self.modulus).1
                } else {
                    f
                };
                let mut coeffs = reduced.coeffs().to_vec();
                coeffs.resize(d, Rat::zero());
                RingElement {
                    parent: Arc::clone(self),
                    repr: Repr::Number(coeffs),
                }
            }
            RingKind::FunctionField => self.function_element(f, Poly::one()).unwrap(),
        }
    }

    /// Builds num/den in Q(t), reduced to lowest terms with monic denominator.
    pub fn function_element(self: &Ring, num: Poly, den: Poly) -> Result<RingElement> {
        assert_eq!(self.kind, RingKind::FunctionField);
        if den.is_zero() {
            return Err(Error::ZeroInput);
        }
        if num.is_zero() {
            return Ok(RingElement {
                parent: Arc::clone(self),
                repr: Repr::Function {
                    num: Poly::zero(),
                    den: Poly::one(),
                },
            });
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        // monic denominator is the canonical form
        let lead = den.leading();
        let num = num.scale(&(Rat::one() / lead.clone()));
        let den = den.scale(&(Rat::one() / lead));
        Ok(RingElement {
            parent: Arc::clone(self),
            repr: Repr::Function { num, den },
        })
    }

    /// Parses an element in this ring from text: a polynomial in `x` (number
    /// ring) or in `t`, or a quotient `(num)/(den)` over Q(t). Coefficients
    /// may be rational.
    pub fn parse_element(self: &Ring, s: &str) -> Result<RingElement> {
        match self.kind {
            RingKind::NumberRing => {
                let f = parse_poly(s, 'x')?;
                Ok(self.element_from_poly(f))
            }
            RingKind::FunctionField => {
                let s = s.trim();
                if let Some(stripped) = s.strip_prefix('(') {
                    let close = matching_paren(stripped)
                        .ok_or_else(|| Error::Parse(format!("unbalanced parens in {s:?}")))?;
                    let num = parse_poly(&stripped[..close], 't')?;
                    let rest = stripped[close + 1..].trim();
                    let rest = rest
                        .strip_prefix('/')
                        .ok_or_else(|| Error::Parse(format!("expected / in {s:?}")))?
                        .trim();
                    let rest = rest
                        .strip_prefix('(')
                        .and_then(|r| r.strip_suffix(')'))
                        .ok_or_else(|| Error::Parse(format!("expected (den) in {s:?}")))?;
                    let den = parse_poly(rest, 't')?;
                    self.function_element(num, den)
                } else {
                    let f = parse_poly(s, 't')?;
                    Ok(self.element_from_poly(f))
                }
            }
        }
    }
}

fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 1usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

/// Degree-1 moduli are fields; degree 2 and 3 are irreducible over Q exactly
/// when they have no rational root, which the rational root theorem reduces
/// to a divisor scan of the constant term. Larger degrees stay Unknown
/// unless the caller asserts otherwise.
fn cheap_irreducibility(modulus: &Poly) -> IrreducibleHint {
    let d = modulus.deg();
    if d == 1 {
        return IrreducibleHint::Yes;
    }
    if d > 3 {
        return IrreducibleHint::Unknown;
    }
    let c0 = modulus.coeff(0);
    if c0.is_zero() {
        return IrreducibleHint::No; // root at 0
    }
    let c0 = c0.numer().abs();
    const DIVISOR_SCAN_LIMIT: u64 = 1_000_000;
    let mut divisors: Vec<BigInt> = Vec::new();
    let mut k = BigInt::one();
    let limit = BigInt::from(DIVISOR_SCAN_LIMIT);
    while &k * &k <= c0 {
        if c0.is_multiple_of(&k) {
            divisors.push(k.clone());
            divisors.push(&c0 / &k);
        }
        k += 1;
        if k > limit {
            return IrreducibleHint::Unknown;
        }
    }
    for div in divisors {
        for root in [Rat::from_integer(div.clone()), Rat::from_integer(-div)] {
            if modulus.eval(&root).is_zero() {
                return IrreducibleHint::No;
            }
        }
    }
    IrreducibleHint::Yes
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    /// Coefficients of 1, X, ..., X^{d-1}, always of length exactly d.
    Number(Vec<Rat>),
    /// num/den in lowest terms, den monic.
    Function { num: Poly, den: Poly },
}

/// An element of a `ModulusRing`, always in canonical form, so equality and
/// hashing are structural.
#[derive(Clone)]
pub struct RingElement {
    parent: Ring,
    repr: Repr,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        *self.parent == *other.parent && self.repr == other.repr
    }
}
impl Eq for RingElement {}

impl std::hash::Hash for RingElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        // parents agree whenever values are compared in practice; hashing
        // the representation alone keeps Eq/Hash consistent either way
        self.repr.hash(state);
    }
}

impl PartialOrd for RingElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Deterministic total order on canonical forms (used for stable scan
/// orders, not for any algebraic meaning).
impl Ord for RingElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (&self.repr, &other.repr) {
            (Repr::Number(a), Repr::Number(b)) => a.cmp(b),
            (Repr::Function { num: na, den: da }, Repr::Function { num: nb, den: db }) => na
                .coeffs()
                .cmp(nb.coeffs())
                .then_with(|| da.coeffs().cmp(db.coeffs())),
            (Repr::Number(_), Repr::Function { .. }) => std::cmp::Ordering::Less,
            (Repr::Function { .. }, Repr::Number(_)) => std::cmp::Ordering::Greater,
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Number(_) => write!(f, "{}", self.lift()),
            Repr::Function { num, den } => {
                if den.is_one() {
                    write!(f, "{}", num)
                } else {
                    write!(f, "({})/({})", num, den)
                }
            }
        }
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl RingElement {
    pub fn parent(&self) -> &Ring {
        &self.parent
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Number(c) => c.iter().all(Rat::is_zero),
            Repr::Function { num, .. } => num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Number(c) => c.first().map_or(false, Rat::is_one) && c[1..].iter().all(Rat::is_zero),
            Repr::Function { num, den } => num.is_one() && den.is_one(),
        }
    }

    /// The canonical lift to Q[X] of degree < d (NumberRing only).
    pub fn lift(&self) -> Poly {
        match &self.repr {
            Repr::Number(c) => Poly::from_coeffs(c.clone()),
            Repr::Function { .. } => panic!("lift() on a function-field element"),
        }
    }

    pub fn coeff_vector(&self) -> Option<&[Rat]> {
        match &self.repr {
            Repr::Number(c) => Some(c),
            Repr::Function { .. } => None,
        }
    }

    pub fn function_parts(&self) -> Option<(&Poly, &Poly)> {
        match &self.repr {
            Repr::Function { num, den } => Some((num, den)),
            Repr::Number(_) => None,
        }
    }

    /// The rational value of a constant element, if it is one.
    pub fn as_rational(&self) -> Option<Rat> {
        match &self.repr {
            Repr::Number(c) => {
                if c[1..].iter().all(Rat::is_zero) {
                    Some(c[0].clone())
                } else {
                    None
                }
            }
            Repr::Function { num, den } => {
                if den.is_one() && num.degree().map_or(true, |d| d == 0) {
                    Some(num.coeff(0))
                } else {
                    None
                }
            }
        }
    }

    fn check_parent(&self, other: &Self) -> Result<()> {
        if *self.parent == *other.parent {
            Ok(())
        } else {
            Err(Error::MixedParents)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_parent(other)?;
        match (&self.repr, &other.repr) {
            (Repr::Number(a), Repr::Number(b)) => {
                let coeffs = a.iter().zip(b).map(|(x, y)| x + y).collect();
                Ok(RingElement {
                    parent: Arc::clone(&self.parent),
                    repr: Repr::Number(coeffs),
                })
            }
            (Repr::Function { num: na, den: da }, Repr::Function { num: nb, den: db }) => {
                let num = na.mul(db).add(&nb.mul(da));
                let den = da.mul(db);
                self.parent.function_element(num, den)
            }
            _ => Err(Error::MixedParents),
        }
    }

    pub fn neg(&self) -> Self {
        match &self.repr {
            Repr::Number(a) => RingElement {
                parent: Arc::clone(&self.parent),
                repr: Repr::Number(a.iter().map(|x| -x.clone()).collect()),
            },
            Repr::Function { num, den } => RingElement {
                parent: Arc::clone(&self.parent),
                repr: Repr::Function {
                    num: num.neg(),
                    den: den.clone(),
                },
            },
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_parent(other)?;
        match (&self.repr, &other.repr) {
            (Repr::Number(_), Repr::Number(_)) => {
                let prod = self.lift().mul(&other.lift());
                Ok(self.parent.element_from_poly(prod))
            }
            (Repr::Function { num: na, den: da }, Repr::Function { num: nb, den: db }) => {
                self.parent.function_element(na.mul(nb), da.mul(db))
            }
            _ => Err(Error::MixedParents),
        }
    }

    /// Multiplicative inverse. In a reducible quotient, a nonzero element
    /// whose lift shares a factor with pi raises `ZeroDivisor`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        match &self.repr {
            Repr::Number(_) => {
                let (g, s, _) = ext_gcd(&self.lift(), self.parent.modulus());
                if g.is_one() {
                    Ok(self.parent.element_from_poly(s))
                } else {
                    Err(Error::ZeroDivisor)
                }
            }
            Repr::Function { num, den } => {
                self.parent.function_element(den.clone(), num.clone())
            }
        }
    }

    pub fn is_invertible(&self) -> bool {
        match &self.repr {
            Repr::Number(_) => {
                !self.is_zero() && self.lift().gcd(self.parent.modulus()).is_one()
            }
            Repr::Function { num, .. } => !num.is_zero(),
        }
    }

    /// Exact k-th power by binary exponentiation; negative k inverts first.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.parent.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Matrix of multiplication by self on the basis 1, X, ..., X^{d-1}.
    fn multiplication_matrix(&self) -> Vec<Vec<Rat>> {
        let d = self.parent.degree();
        let mut cols = Vec::with_capacity(d);
        let mut col = self.clone();
        let x = self.parent.generator();
        for j in 0..d {
            let v = col.coeff_vector().unwrap().to_vec();
            cols.push(v);
            if j + 1 < d {
                col = col.mul(&x).unwrap();
            }
        }
        // cols[j][i] = coefficient of X^i in a*X^j; transpose into rows
        let mut m = vec![vec![Rat::zero(); d]; d];
        for (j, cv) in cols.iter().enumerate() {
            for (i, c) in cv.iter().enumerate() {
                m[i][j] = c.clone();
            }
        }
        m
    }

    /// Characteristic polynomial of the multiplication-by-self map: monic of
    /// degree d, computed exactly (Faddeev-LeVerrier).
    pub fn charpoly(&self) -> Result<Poly> {
        if self.parent.kind() == RingKind::FunctionField {
            return Err(Error::FunctionFieldUnsupported);
        }
        let m = self.multiplication_matrix();
        let cp = charpoly_of_matrix(&m);
        debug_assert!(cp.is_monic() && cp.deg() == self.parent.degree());
        Ok(cp)
    }

    fn require_field(&self) -> Result<()> {
        if self.parent.kind() != RingKind::NumberRing || !self.parent.is_field_case() {
            return Err(Error::RequiresField);
        }
        Ok(())
    }

    /// Integrality test: the characteristic polynomial has integer
    /// coefficients. Valid in the field case, where charpoly is a power of
    /// the minimal polynomial (Gauss's lemma).
    pub fn is_algebraic_integer(&self) -> Result<bool> {
        self.require_field()?;
        Ok(self.charpoly()?.has_integer_coeffs())
    }

    /// Unit test: algebraic integer with norm of absolute value 1.
    pub fn is_unit(&self) -> Result<bool> {
        self.require_field()?;
        let cp = self.charpoly()?;
        Ok(cp.has_integer_coeffs() && cp.coeff(0).abs().is_one())
    }

    /// Smallest k <= max(2 d^2, 36) with self^k = 1, if any. The bound is
    /// exhaustive: a root of unity of order k and degree <= d satisfies
    /// phi(k) <= d, and phi(k) >= sqrt(k/2) for k >= 36.
    pub fn is_root_of_unity(&self) -> Result<Option<usize>> {
        self.require_field()?;
        let d = self.parent.degree();
        let k_max = (2 * d * d).max(36);
        if self.is_zero() {
            return Ok(None);
        }
        let mut p = self.clone();
        for k in 1..=k_max {
            if p.is_one() {
                return Ok(Some(k));
            }
            p = p.mul(self)?;
        }
        Ok(None)
    }
}

/// Extended Euclid over Q[X]: returns monic g with s*a + t*b = g.
fn ext_gcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(), Poly::zero());
    let (mut t0, mut t1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1);
        let s = s0.sub(&q.mul(&s1));
        let t = t0.sub(&q.mul(&t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    if r0.is_zero() {
        return (Poly::zero(), Poly::zero(), Poly::zero());
    }
    let lead = r0.leading();
    let inv = Rat::one() / lead;
    (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
}

/// Characteristic polynomial of a square rational matrix via
/// Faddeev-LeVerrier (exact; division only by 1..d).
pub fn charpoly_of_matrix(m: &[Vec<Rat>]) -> Poly {
    let d = m.len();
    if d == 0 {
        return Poly::one();
    }
    let identity = |c: &Rat| -> Vec<Vec<Rat>> {
        let mut out = vec![vec![Rat::zero(); d]; d];
        for (i, row) in out.iter_mut().enumerate() {
            row[i] = c.clone();
        }
        out
    };
    let mat_mul = |a: &[Vec<Rat>], b: &[Vec<Rat>]| -> Vec<Vec<Rat>> {
        let mut out = vec![vec![Rat::zero(); d]; d];
        for i in 0..d {
            for k in 0..d {
                if a[i][k].is_zero() {
                    continue;
                }
                for j in 0..d {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
        out
    };
    let mat_add = |a: &mut Vec<Vec<Rat>>, b: &[Vec<Rat>]| {
        for i in 0..d {
            for j in 0..d {
                a[i][j] += &b[i][j];
            }
        }
    };
    let trace = |a: &[Vec<Rat>]| -> Rat {
        let mut t = Rat::zero();
        for (i, row) in a.iter().enumerate() {
            t += &row[i];
        }
        t
    };

    let mut coeffs = vec![Rat::zero(); d + 1];
    coeffs[d] = Rat::one();
    let mut mk = identity(&Rat::one());
    for k in 1..=d {
        let am = mat_mul(m, &mk);
        let c = -trace(&am) / Rat::from_integer(BigInt::from(k));
        coeffs[d - k] = c.clone();
        mk = am;
        mat_add(&mut mk, &identity(&c));
    }
    Poly::from_coeffs(coeffs)
}

/// Parses either an ascending coefficient list "c0,c1,...,cd" or the human
/// form "x^3+x+1" (variable given by `var`). Coefficients may be rational;
/// modulus validation separately rejects non-integers.
pub fn parse_poly(s: &str, var: char) -> Result<Poly> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    if s.contains(',') {
        let coeffs: Option<Vec<Rat>> = s.split(',').map(rat_from_string).collect();
        return coeffs
            .map(Poly::from_coeffs)
            .ok_or_else(|| Error::Parse(format!("bad coefficient list {s:?}")));
    }
    parse_poly_human(s, var)
}

fn parse_poly_human(s: &str, var: char) -> Result<Poly> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let bad = |msg: &str| Error::Parse(format!("{msg} in {s:?}"));
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);

    let mut acc: Vec<Rat> = Vec::new();
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1i64, rest.to_string()),
            None => (1i64, term.strip_prefix('+').unwrap_or(&term).to_string()),
        };
        if body.is_empty() {
            return Err(bad("dangling sign"));
        }
        let (coeff_str, rest) = match body.find(var) {
            Some(pos) => (&body[..pos], &body[pos..]),
            None => (&body[..], ""),
        };
        let coeff_str = coeff_str.strip_suffix('*').unwrap_or(coeff_str);
        let coeff = if coeff_str.is_empty() {
            if rest.is_empty() {
                return Err(bad("missing coefficient"));
            }
            Rat::one()
        } else {
            rat_from_string(coeff_str).ok_or_else(|| bad("bad coefficient"))?
        };
        let exp: usize = if rest.is_empty() {
            0
        } else {
            let after_var = &rest[var.len_utf8()..];
            if after_var.is_empty() {
                1
            } else {
                let digits = after_var
                    .strip_prefix('^')
                    .ok_or_else(|| bad("expected ^exponent"))?;
                digits.parse().map_err(|_| bad("bad exponent"))?
            }
        };
        if acc.len() <= exp {
            acc.resize(exp + 1, Rat::zero());
        }
        acc[exp] += coeff * Rat::from_integer(BigInt::from(sign));
    }
    Ok(Poly::from_coeffs(acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn cubic_ring() -> Ring {
        // X^3 + X + 1
        ModulusRing::number_ring_from_ints(&[1, 1, 0, 1]).unwrap()
    }

    #[test]
    fn ring_new_validates_modulus() {
        assert!(ModulusRing::number_ring_from_ints(&[1, 1, 0, 1]).is_ok());
        let degree_one = ModulusRing::number_ring_from_ints(&[-1, 1]).unwrap();
        assert_eq!(degree_one.degree(), 1);
        assert_eq!(degree_one.irreducible_hint(), IrreducibleHint::Yes);
        assert_eq!(
            ModulusRing::number_ring_from_ints(&[1, 0, 2]).unwrap_err(),
            Error::NonMonic
        );
        assert_eq!(
            ModulusRing::number_ring(Poly::constant(Rat::one())).unwrap_err(),
            Error::EmptyModulus
        );
        assert_eq!(
            ModulusRing::number_ring(Poly::from_coeffs(vec![rat(1, 2), Rat::one()]))
                .unwrap_err(),
            Error::NonIntegerModulus
        );
    }

    #[test]
    fn irreducibility_hints() {
        // X^3+X+1 has no rational root
        assert_eq!(cubic_ring().irreducible_hint(), IrreducibleHint::Yes);
        // (X-1)(X-2) = X^2 - 3X + 2
        let r = ModulusRing::number_ring_from_ints(&[2, -3, 1]).unwrap();
        assert_eq!(r.irreducible_hint(), IrreducibleHint::No);
        // degree 4 stays unknown without an assertion
        let r = ModulusRing::number_ring_from_ints(&[1, 0, 0, 0, 1]).unwrap();
        assert_eq!(r.irreducible_hint(), IrreducibleHint::Unknown);
        assert_eq!(
            r.assert_irreducible().irreducible_hint(),
            IrreducibleHint::Yes
        );
    }

    #[test]
    fn cubic_arithmetic_reduces_mod_pi() {
        let ring = cubic_ring();
        let x = ring.generator();
        // x * x^2 = x^3 = -x - 1
        let x2 = x.mul(&x).unwrap();
        let x3 = x.mul(&x2).unwrap();
        let expected = ring.element_from_poly(Poly::from_int_coeffs(&[-1, -1]));
        assert_eq!(x3, expected);
        assert_eq!(x.pow(3).unwrap(), expected);
    }

    #[test]
    fn inverse_in_cubic_ring() {
        let ring = cubic_ring();
        let x = ring.generator();
        // x * (x^2 + 1) = x^3 + x = -1, so inv(x) = -x^2 - 1
        let inv = x.inv().unwrap();
        assert_eq!(
            inv,
            ring.element_from_poly(Poly::from_int_coeffs(&[-1, 0, -1]))
        );
        assert!(x.mul(&inv).unwrap().is_one());
        assert!(ring.one().inv().unwrap().is_one());
    }

    #[test]
    fn zero_divisor_in_reducible_quotient() {
        // (X-1)(X-2)
        let ring = ModulusRing::number_ring_from_ints(&[2, -3, 1]).unwrap();
        let x = ring.generator();
        let a = x.sub(&ring.one()).unwrap();
        assert_eq!(a.inv().unwrap_err(), Error::ZeroDivisor);
        assert!(!a.is_invertible());
        assert_eq!(ring.zero().inv().unwrap_err(), Error::ZeroInput);
    }

    #[test]
    fn pow_negative_exponent() {
        let ring = ModulusRing::number_ring_from_ints(&[-1, 1]).unwrap(); // X - 1
        let two = ring.from_int(2);
        assert_eq!(two.pow(-3).unwrap().as_rational().unwrap(), rat(1, 8));
        let cubic = cubic_ring();
        let x = cubic.generator();
        assert!(x.pow(0).unwrap().is_one());
        assert!(x.pow(-2).unwrap().mul(&x.pow(2).unwrap()).unwrap().is_one());
    }

    #[test]
    fn charpoly_of_generator_is_modulus() {
        let ring = cubic_ring();
        let x = ring.generator();
        assert_eq!(x.charpoly().unwrap(), Poly::from_int_coeffs(&[1, 1, 0, 1]));
        let d1 = ModulusRing::number_ring_from_ints(&[-1, 1]).unwrap();
        assert_eq!(
            d1.from_int(2).charpoly().unwrap(),
            Poly::from_int_coeffs(&[-2, 1])
        );
    }

    #[test]
    fn algebraic_predicates() {
        let ring = cubic_ring();
        let x = ring.generator();
        assert!(x.is_algebraic_integer().unwrap());
        assert!(x.is_unit().unwrap());

        let d1 = ModulusRing::number_ring_from_ints(&[-1, 1]).unwrap();
        let two = d1.from_int(2);
        assert!(two.is_algebraic_integer().unwrap());
        assert!(!two.is_unit().unwrap());
        let half = d1.from_rat(rat(1, 2));
        assert!(!half.is_algebraic_integer().unwrap());

        let reducible = ModulusRing::number_ring_from_ints(&[2, -3, 1]).unwrap();
        assert_eq!(
            reducible.generator().is_unit().unwrap_err(),
            Error::RequiresField
        );
    }

    #[test]
    fn roots_of_unity() {
        // X^2 + X + 1: x is a primitive cube root of unity
        let ring = ModulusRing::number_ring_from_ints(&[1, 1, 1]).unwrap();
        let x = ring.generator();
        assert_eq!(x.is_root_of_unity().unwrap(), Some(3));
        assert_eq!(ring.from_int(-1).is_root_of_unity().unwrap(), Some(2));
        assert_eq!(ring.one().is_root_of_unity().unwrap(), Some(1));

        // golden ratio: x^2 = x + 1, never a root of unity
        let golden = ModulusRing::number_ring_from_ints(&[-1, -1, 1]).unwrap();
        assert_eq!(golden.generator().is_root_of_unity().unwrap(), None);
    }

    #[test]
    fn function_field_canonical_form() {
        let qt = ModulusRing::function_field();
        let t = qt.generator();
        let inv = t.inv().unwrap();
        assert!(t.mul(&inv).unwrap().is_one());
        // (2t+2)/(t+1) reduces to the constant 2
        let e = qt
            .function_element(Poly::from_int_coeffs(&[2, 2]), Poly::from_int_coeffs(&[1, 1]))
            .unwrap();
        assert_eq!(e.as_rational().unwrap(), rat_int(2));
        // denominator is kept monic: 1/(2t) = (1/2)/t
        let e = qt
            .function_element(Poly::one(), Poly::from_int_coeffs(&[0, 2]))
            .unwrap();
        let (num, den) = e.function_parts().unwrap();
        assert_eq!(num, &Poly::constant(rat(1, 2)));
        assert_eq!(den, &Poly::x());
    }

    #[test]
    fn mixed_parents_rejected() {
        let a = cubic_ring().generator();
        let b = ModulusRing::number_ring_from_ints(&[2, 1, 0, 1])
            .unwrap()
            .generator();
        assert_eq!(a.add(&b).unwrap_err(), Error::MixedParents);
        assert_eq!(a.mul(&b).unwrap_err(), Error::MixedParents);
    }

    #[test]
    fn parse_poly_forms() {
        let f = parse_poly("x^3+x+1", 'x').unwrap();
        assert_eq!(f, Poly::from_int_coeffs(&[1, 1, 0, 1]));
        let f = parse_poly("1,1,0,1", 'x').unwrap();
        assert_eq!(f, Poly::from_int_coeffs(&[1, 1, 0, 1]));
        let f = parse_poly("-2x^2 + 1/2x - 3", 'x').unwrap();
        assert_eq!(
            f,
            Poly::from_coeffs(vec![rat_int(-3), rat(1, 2), rat_int(-2)])
        );
        let f = parse_poly("t", 't').unwrap();
        assert_eq!(f, Poly::x());
        assert!(parse_poly("x^", 'x').is_err());
        assert!(parse_poly("++1", 'x').is_err());
        assert!(parse_poly("y+1", 'x').is_err());
    }

    #[test]
    fn parse_function_field_elements() {
        let qt = ModulusRing::function_field();
        let e = qt.parse_element("(t^2-1)/(t-1)").unwrap();
        assert_eq!(e, qt.parse_element("t+1").unwrap());
        assert!(qt.parse_element("(t)/(0)").is_err());
    }
}
