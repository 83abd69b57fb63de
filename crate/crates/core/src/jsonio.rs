//! Versioned JSON artifacts with every rational carried as exact
//! numerator/denominator strings, so emitted certificates and witnesses can
//! be archived and re-validated bit for bit. Decimal renderings appear next
//! to exact values for human consumption; the exact form is authoritative.

use crate::affine::{AffineMap, Word};
use crate::error::{Error, Result};
use crate::field::{ModulusRing, Ring, RingElement, RingKind};
use crate::freeness::{
    verify_relation, FreenessVerdict, PingPongCertificate, RatioBounds, RelationWitness,
    UnknownReport,
};
use crate::growth::{DplusLower, DplusUpper, EntropyBounds, GrowthTable};
use crate::interval::{ComplexBox, RatInterval};
use crate::mahler::{CtReport, LehmerReport, MahlerResult};
use crate::places::{AbsEnclosure, ArchPlace, ArchRoot, Place, TAdicCenter};
use crate::poly::Poly;
use crate::rat::{rat_from_string, rat_to_f64, rat_to_string, Rat};
use crate::roots::{count_roots_in_box, RealRoot};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "v1";

// ---------------------------------------------------------------------------
// leaf encodings

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct RatJson {
    pub num: String,
    pub den: String,
}

fn rat_json(x: &Rat) -> RatJson {
    RatJson { num: x.numer().to_string(), den: x.denom().to_string() }
}

fn rat_parse(j: &RatJson) -> Result<Rat> {
    rat_from_string(&format!("{}/{}", j.num, j.den))
        .ok_or_else(|| Error::Parse(format!("bad rational {}/{}", j.num, j.den)))
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct IntervalJson {
    pub lo: RatJson,
    pub hi: RatJson,
}

fn interval_json(iv: &RatInterval) -> IntervalJson {
    IntervalJson { lo: rat_json(&iv.lo), hi: rat_json(&iv.hi) }
}

fn interval_parse(j: &IntervalJson) -> Result<RatInterval> {
    let lo = rat_parse(&j.lo)?;
    let hi = rat_parse(&j.hi)?;
    if lo > hi {
        return Err(Error::Parse("inverted interval".into()));
    }
    Ok(RatInterval::new(lo, hi))
}

fn enclosure_json(e: &AbsEnclosure) -> IntervalJson {
    IntervalJson { lo: rat_json(&e.lo), hi: rat_json(&e.hi) }
}

fn enclosure_parse(j: &IntervalJson) -> Result<AbsEnclosure> {
    let iv = interval_parse(j)?;
    if iv.lo.is_negative() {
        return Err(Error::Parse("negative absolute value".into()));
    }
    Ok(AbsEnclosure { lo: iv.lo, hi: iv.hi })
}

fn poly_json(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(rat_to_string).collect()
}

fn poly_parse(coeffs: &[String]) -> Result<Poly> {
    let parsed: Option<Vec<Rat>> = coeffs.iter().map(|s| rat_from_string(s)).collect();
    parsed
        .map(Poly::from_coeffs)
        .ok_or_else(|| Error::Parse("bad polynomial coefficients".into()))
}

// ---------------------------------------------------------------------------
// rings and elements

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct RingJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<String>>,
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub assume_irreducible: bool,
}

pub fn ring_json(ring: &Ring) -> RingJson {
    match ring.kind() {
        RingKind::NumberRing => RingJson {
            kind: "number".into(),
            modulus: Some(poly_json(ring.modulus())),
            assume_irreducible: ring.is_field_case() && ring.degree() > 3,
        },
        RingKind::FunctionField => RingJson {
            kind: "function_field".into(),
            modulus: None,
            assume_irreducible: false,
        },
    }
}

pub fn ring_parse(j: &RingJson) -> Result<Ring> {
    match j.kind.as_str() {
        "number" => {
            let coeffs = j
                .modulus
                .as_ref()
                .ok_or_else(|| Error::Parse("number ring needs a modulus".into()))?;
            let ring = ModulusRing::number_ring(poly_parse(coeffs)?)?;
            Ok(if j.assume_irreducible {
                ring.assert_irreducible()
            } else {
                ring
            })
        }
        "function_field" => Ok(ModulusRing::function_field()),
        other => Err(Error::Parse(format!("unknown ring kind {other:?}"))),
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(untagged)]
pub enum ElementJson {
    Number { coeffs: Vec<RatJson> },
    Function { num: Vec<RatJson>, den: Vec<RatJson> },
}

pub fn element_json(e: &RingElement) -> ElementJson {
    if let Some(coeffs) = e.coeff_vector() {
        ElementJson::Number { coeffs: coeffs.iter().map(rat_json).collect() }
    } else {
        let (num, den) = e.function_parts().unwrap();
        ElementJson::Function {
            num: num.coeffs().iter().map(rat_json).collect(),
            den: den.coeffs().iter().map(rat_json).collect(),
        }
    }
}

pub fn element_parse(ring: &Ring, j: &ElementJson) -> Result<RingElement> {
    match (ring.kind(), j) {
        (RingKind::NumberRing, ElementJson::Number { coeffs }) => {
            let parsed: Result<Vec<Rat>> = coeffs.iter().map(rat_parse).collect();
            Ok(ring.element_from_poly(Poly::from_coeffs(parsed?)))
        }
        (RingKind::FunctionField, ElementJson::Function { num, den }) => {
            let pn: Result<Vec<Rat>> = num.iter().map(rat_parse).collect();
            let pd: Result<Vec<Rat>> = den.iter().map(rat_parse).collect();
            ring.function_element(Poly::from_coeffs(pn?), Poly::from_coeffs(pd?))
        }
        _ => Err(Error::Parse("element does not match ring kind".into())),
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct MapJson {
    pub a: ElementJson,
    pub b: ElementJson,
}

pub fn map_json(m: &AffineMap) -> MapJson {
    MapJson { a: element_json(m.ratio()), b: element_json(m.translation()) }
}

pub fn map_parse(ring: &Ring, j: &MapJson) -> Result<AffineMap> {
    AffineMap::new(element_parse(ring, &j.a)?, element_parse(ring, &j.b)?)
}

// ---------------------------------------------------------------------------
// places

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(tag = "type")]
pub enum PlaceJson {
    #[serde(rename = "archimedean")]
    Archimedean {
        poly: Vec<String>,
        index: usize,
        pair: bool,
        re: IntervalJson,
        im: IntervalJson,
    },
    #[serde(rename = "p_adic")]
    PAdic { prime: u64, valuation: RatJson },
    #[serde(rename = "t_adic")]
    TAdic { center: String },
}

pub fn place_json(p: &Place) -> PlaceJson {
    match p {
        Place::Archimedean(a) => {
            let b = a.root_box();
            PlaceJson::Archimedean {
                poly: poly_json(a.poly()),
                index: a.index(),
                pair: a.is_pair(),
                re: interval_json(&b.re),
                im: interval_json(&b.im),
            }
        }
        Place::PAdic { prime, valuation } => PlaceJson::PAdic {
            prime: *prime,
            valuation: rat_json(valuation),
        },
        Place::TAdic { center } => PlaceJson::TAdic {
            center: match center {
                TAdicCenter::Finite(c) => rat_to_string(c),
                TAdicCenter::Infinity => "inf".into(),
            },
        },
    }
}

pub fn place_parse(j: &PlaceJson) -> Result<Place> {
    match j {
        PlaceJson::Archimedean { poly, index, pair, re, im } => {
            let g = poly_parse(poly)?;
            let re = interval_parse(re)?;
            let im = interval_parse(im)?;
            let root = if *pair {
                let boxed = ComplexBox::new(re, im);
                if count_roots_in_box(&g, &boxed) != Some(1) {
                    return Err(Error::Parse("stored box does not isolate a root".into()));
                }
                ArchRoot::Pair(boxed)
            } else {
                if !(im.lo.is_zero() && im.hi.is_zero()) {
                    return Err(Error::Parse("real place with nonreal box".into()));
                }
                if re.is_point() {
                    if !g.eval(&re.lo).is_zero() {
                        return Err(Error::Parse("stored point is not a root".into()));
                    }
                    ArchRoot::Real(RealRoot::Exact(re.lo))
                } else {
                    if !(g.eval(&re.lo) * g.eval(&re.hi)).is_negative() {
                        return Err(Error::Parse("stored bracket has no sign change".into()));
                    }
                    ArchRoot::Real(RealRoot::Bracket { lo: re.lo, hi: re.hi })
                }
            };
            Ok(Place::Archimedean(ArchPlace::from_parts(g, *index, root)))
        }
        PlaceJson::PAdic { prime, valuation } => Ok(Place::PAdic {
            prime: *prime,
            valuation: rat_parse(valuation)?,
        }),
        PlaceJson::TAdic { center } => {
            let center = if center == "inf" {
                TAdicCenter::Infinity
            } else {
                TAdicCenter::Finite(
                    rat_from_string(center)
                        .ok_or_else(|| Error::Parse("bad t-adic center".into()))?,
                )
            };
            Ok(Place::TAdic { center })
        }
    }
}

// ---------------------------------------------------------------------------
// certificates, witnesses, verdicts

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(tag = "type")]
pub enum RatioBoundsJson {
    #[serde(rename = "archimedean")]
    Archimedean { bounds: [IntervalJson; 2] },
    #[serde(rename = "non_archimedean")]
    NonArchimedean { valuations: [RatJson; 2] },
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct CertificateJson {
    pub place: PlaceJson,
    pub ratio_bounds: RatioBoundsJson,
    pub fixed_points: [ElementJson; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<RatJson>,
}

pub fn certificate_json(c: &PingPongCertificate) -> CertificateJson {
    CertificateJson {
        place: place_json(&c.place),
        ratio_bounds: match &c.ratio_bounds {
            RatioBounds::Archimedean(a, b) => RatioBoundsJson::Archimedean {
                bounds: [enclosure_json(a), enclosure_json(b)],
            },
            RatioBounds::NonArchimedean(a, b) => RatioBoundsJson::NonArchimedean {
                valuations: [rat_json(a), rat_json(b)],
            },
        },
        fixed_points: [element_json(&c.fixed_points.0), element_json(&c.fixed_points.1)],
        margin: c.margin.as_ref().map(rat_json),
    }
}

pub fn certificate_parse(ring: &Ring, j: &CertificateJson) -> Result<PingPongCertificate> {
    Ok(PingPongCertificate {
        place: place_parse(&j.place)?,
        ratio_bounds: match &j.ratio_bounds {
            RatioBoundsJson::Archimedean { bounds } => RatioBounds::Archimedean(
                enclosure_parse(&bounds[0])?,
                enclosure_parse(&bounds[1])?,
            ),
            RatioBoundsJson::NonArchimedean { valuations } => RatioBounds::NonArchimedean(
                rat_parse(&valuations[0])?,
                rat_parse(&valuations[1])?,
            ),
        },
        fixed_points: (
            element_parse(ring, &j.fixed_points[0])?,
            element_parse(ring, &j.fixed_points[1])?,
        ),
        margin: j.margin.as_ref().map(rat_parse).transpose()?,
    })
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct WitnessJson {
    pub u: String,
    pub v: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct BudgetReportJson {
    pub relation_len_searched: usize,
    pub places_tried: usize,
    pub memory_budget_hit: bool,
    pub factorization_incomplete: bool,
}

/// The complete decision artifact: enough to re-run the verification from
/// the file alone.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct DecisionJson {
    pub version: String,
    pub kind: String,
    pub ring: RingJson,
    pub pair: [MapJson; 2],
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budgets: Option<BudgetReportJson>,
}

pub fn decision_json(
    ring: &Ring,
    f: &AffineMap,
    g: &AffineMap,
    verdict: &FreenessVerdict,
) -> DecisionJson {
    let (cert, witness, budgets) = match verdict {
        FreenessVerdict::Free(c) => (Some(certificate_json(c)), None, None),
        FreenessVerdict::NotFree(w) => (
            None,
            Some(WitnessJson { u: w.u.to_compact(), v: w.v.to_compact() }),
            None,
        ),
        FreenessVerdict::Unknown(r) => (
            None,
            None,
            Some(BudgetReportJson {
                relation_len_searched: r.relation_len_searched,
                places_tried: r.places_tried,
                memory_budget_hit: r.memory_budget_hit,
                factorization_incomplete: r.factorization_incomplete,
            }),
        ),
    };
    DecisionJson {
        version: SCHEMA_VERSION.into(),
        kind: "decision".into(),
        ring: ring_json(ring),
        pair: [map_json(f), map_json(g)],
        verdict: verdict.tag().into(),
        certificate: cert,
        witness,
        budgets,
    }
}

/// Re-validates a decision artifact from its JSON text alone: parses every
/// exact value back, re-verifies the mathematical content (witness words
/// re-evaluate equal; certificate bounds re-certify at the stored place),
/// and finally re-serializes to confirm the bytes round-trip.
pub fn check_decision(text: &str) -> Result<DecisionJson> {
    let parsed: DecisionJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad JSON: {e}")))?;
    if parsed.version != SCHEMA_VERSION {
        return Err(Error::Parse(format!("unsupported version {:?}", parsed.version)));
    }
    let ring = ring_parse(&parsed.ring)?;
    let f = map_parse(&ring, &parsed.pair[0])?;
    let g = map_parse(&ring, &parsed.pair[1])?;
    match parsed.verdict.as_str() {
        "notfree" => {
            let w = parsed
                .witness
                .as_ref()
                .ok_or_else(|| Error::Parse("notfree verdict without witness".into()))?;
            let witness = RelationWitness {
                u: Word::from_compact(&w.u)?,
                v: Word::from_compact(&w.v)?,
            };
            if !witness.u.is_positive() || !witness.v.is_positive() {
                return Err(Error::Parse("witness words must be positive".into()));
            }
            if !verify_relation(&witness, &f, &g) {
                return Err(Error::Parse("witness failed re-verification".into()));
            }
        }
        "free" => {
            let cj = parsed
                .certificate
                .as_ref()
                .ok_or_else(|| Error::Parse("free verdict without certificate".into()))?;
            let cert = certificate_parse(&ring, cj)?;
            recheck_certificate(&ring, &f, &g, &cert)?;
        }
        "unknown" => {
            if parsed.budgets.is_none() {
                return Err(Error::Parse("unknown verdict without budget report".into()));
            }
        }
        other => return Err(Error::Parse(format!("unknown verdict {other:?}"))),
    }
    // byte-exact round trip through the canonical serializer
    let reserialized = serde_json::to_string_pretty(&parsed)
        .map_err(|e| Error::Parse(format!("serialize: {e}")))?;
    let reparsed: DecisionJson = serde_json::from_str(&reserialized)
        .map_err(|e| Error::Parse(format!("round trip: {e}")))?;
    if reparsed != parsed {
        return Err(Error::Parse("round trip changed the artifact".into()));
    }
    Ok(parsed)
}

/// Re-derives every certified claim of a certificate at its stored place.
fn recheck_certificate(
    ring: &Ring,
    f: &AffineMap,
    g: &AffineMap,
    cert: &PingPongCertificate,
) -> Result<()> {
    use crate::freeness::check_pingpong;
    // fixed points must reproduce exactly
    let pf = f.fixed_point()?;
    let pg = g.fixed_point()?;
    if pf != cert.fixed_points.0 || pg != cert.fixed_points.1 {
        return Err(Error::Parse("stored fixed points do not reproduce".into()));
    }
    if ring.kind() == RingKind::NumberRing {
        if let Place::Archimedean(a) = &cert.place {
            let expected = ring.modulus().squarefree_part().primitive_integer();
            if *a.poly() != expected {
                return Err(Error::PlaceRingMismatch);
            }
        }
    }
    // the stored place must still certify the pair
    match check_pingpong(f, g, &cert.place, 64)? {
        Some(_) => Ok(()),
        None => Err(Error::Parse("certificate failed re-verification".into())),
    }
}

// ---------------------------------------------------------------------------
// growth, mahler and ct reports

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct GrowthRowJson {
    pub n: usize,
    pub ball_size: u64,
    /// log2(#ball)/n, decimal rendering of the exact (count, n) pair.
    pub upper_bound_bits: Option<f64>,
    pub dplus_status: String,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct DplusBracketJson {
    /// Refutations cover radius `lower` - 1 entirely.
    pub lower: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper: Option<usize>,
    pub upper_via_conjugate_family: bool,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct GrowthSummaryJson {
    pub version: String,
    pub kind: String,
    pub ring: RingJson,
    pub effective_generators: Vec<MapJson>,
    pub rows: Vec<GrowthRowJson>,
    pub truncated: bool,
    /// Entropy lower bound as the exact form log(2)/d plus its decimal.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entropy_lower_log2_over: Option<usize>,
    pub entropy_lower_nats: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entropy_upper_best_nats: Option<f64>,
    pub dplus_bracket: DplusBracketJson,
    pub certificates: Vec<CertificateJson>,
}

pub fn growth_summary_json(
    ring: &Ring,
    sigma: &crate::growth::GeneratingSet,
    table: &GrowthTable,
    entropy: &EntropyBounds,
    upper: &Option<DplusUpper>,
    lower: &DplusLower,
) -> GrowthSummaryJson {
    GrowthSummaryJson {
        version: SCHEMA_VERSION.into(),
        kind: "growth".into(),
        ring: ring_json(ring),
        effective_generators: sigma.symmetrized().iter().map(map_json).collect(),
        rows: table
            .rows
            .iter()
            .map(|r| GrowthRowJson {
                n: r.n,
                ball_size: r.count,
                upper_bound_bits: if r.n > 0 {
                    Some((r.count as f64).log2() / r.n as f64)
                } else {
                    None
                },
                dplus_status: r.dplus_status.to_string(),
            })
            .collect(),
        truncated: table.truncated,
        entropy_lower_log2_over: entropy.lower_dplus,
        entropy_lower_nats: entropy.lower_nats(),
        entropy_upper_best_nats: entropy.best_upper_nats(),
        dplus_bracket: DplusBracketJson {
            lower: lower.m + 1,
            upper: upper.as_ref().map(|u| u.radius),
            upper_via_conjugate_family: upper
                .as_ref()
                .map_or(false, |u| u.via_conjugate_family),
        },
        certificates: upper
            .iter()
            .map(|u| certificate_json(&u.certificate))
            .collect(),
    }
}

/// CSV rows with the fixed columns n, ball_size, upper_bound_bits,
/// dplus_status.
pub fn growth_csv(table: &GrowthTable) -> String {
    let mut out = String::from("n,ball_size,upper_bound_bits,dplus_status\n");
    for r in &table.rows {
        let bits = if r.n > 0 {
            format!("{:.6}", (r.count as f64).log2() / r.n as f64)
        } else {
            String::new()
        };
        out.push_str(&format!("{},{},{},{}\n", r.n, r.count, bits, r.dplus_status));
    }
    out
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct MahlerRootJson {
    pub re: IntervalJson,
    pub im: IntervalJson,
    pub max_abs: IntervalJson,
    pub max_abs_decimal: f64,
    pub multiplicity: usize,
    pub pair: bool,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct MahlerJson {
    pub version: String,
    pub kind: String,
    pub poly: Vec<String>,
    pub measure: IntervalJson,
    pub measure_decimal: [f64; 2],
    pub log_measure_decimal: [f64; 2],
    pub is_kronecker: bool,
    pub stripped_zero_roots: usize,
    pub roots: Vec<MahlerRootJson>,
}

pub fn mahler_json(pi: &Poly, m: &MahlerResult) -> MahlerJson {
    MahlerJson {
        version: SCHEMA_VERSION.into(),
        kind: "mahler".into(),
        poly: poly_json(pi),
        measure: IntervalJson { lo: rat_json(&m.measure.lo), hi: rat_json(&m.measure.hi) },
        measure_decimal: [rat_to_f64(&m.measure.lo), rat_to_f64(&m.measure.hi)],
        log_measure_decimal: [
            rat_to_f64(&m.measure.lo).ln(),
            rat_to_f64(&m.measure.hi).ln(),
        ],
        is_kronecker: m.is_kronecker,
        stripped_zero_roots: m.stripped_zero_roots,
        roots: m
            .per_root
            .iter()
            .map(|r| MahlerRootJson {
                re: interval_json(&r.root_box.re),
                im: interval_json(&r.root_box.im),
                max_abs: IntervalJson {
                    lo: rat_json(&r.max_abs.lo),
                    hi: rat_json(&r.max_abs.hi),
                },
                max_abs_decimal: rat_to_f64(&r.max_abs.hi),
                multiplicity: r.multiplicity,
                pair: r.is_pair,
            })
            .collect(),
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct CtRelationJson {
    pub p: i64,
    pub q: i64,
    pub u: String,
    pub v: String,
    pub holds: bool,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct CtReportJson {
    pub version: String,
    pub kind: String,
    pub n: u32,
    pub modulus: Vec<String>,
    pub base_relation_holds: bool,
    pub relations: Vec<CtRelationJson>,
    pub dplus_lower_claim: u32,
    pub all_hold: bool,
    /// Exhaustive refutation radius over the symmetrized generators, when
    /// the growth probe was run (raw-pair and symmetrized readings agree on
    /// the claim; this is the verified symmetrized evidence).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refutation_radius: Option<usize>,
}

pub fn ct_report_json(report: &CtReport, refutation: Option<&DplusLower>) -> CtReportJson {
    CtReportJson {
        version: SCHEMA_VERSION.into(),
        kind: "verify-ct".into(),
        n: report.n,
        modulus: poly_json(&report.modulus),
        base_relation_holds: report.base_relation_holds,
        relations: report
            .relations
            .iter()
            .map(|r| CtRelationJson {
                p: r.p,
                q: r.q,
                u: r.u.to_compact(),
                v: r.v.to_compact(),
                holds: r.holds,
            })
            .collect(),
        dplus_lower_claim: report.dplus_lower_claim,
        all_hold: report.all_hold(),
        refutation_radius: refutation.map(|l| l.m),
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct LehmerJson {
    pub version: String,
    pub kind: String,
    pub poly: Vec<String>,
    pub mahler: MahlerJson,
    pub implied_dplus_lower: u32,
    pub kronecker_degenerate: bool,
    pub claim_consistent: bool,
    pub growth_rows: Vec<GrowthRowJson>,
    pub entropy_lower_nats: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entropy_upper_best_nats: Option<f64>,
    pub doubling_checks: Vec<(usize, bool)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate_radius: Option<usize>,
}

pub fn lehmer_json(pi: &Poly, report: &LehmerReport) -> LehmerJson {
    LehmerJson {
        version: SCHEMA_VERSION.into(),
        kind: "lehmer".into(),
        poly: poly_json(pi),
        mahler: mahler_json(pi, &report.mahler),
        implied_dplus_lower: report.implied_dplus_lower,
        kronecker_degenerate: report.kronecker_degenerate,
        claim_consistent: report.claim_consistent,
        growth_rows: report
            .growth
            .rows
            .iter()
            .map(|r| GrowthRowJson {
                n: r.n,
                ball_size: r.count,
                upper_bound_bits: if r.n > 0 {
                    Some((r.count as f64).log2() / r.n as f64)
                } else {
                    None
                },
                dplus_status: r.dplus_status.to_string(),
            })
            .collect(),
        entropy_lower_nats: report.entropy.lower_nats(),
        entropy_upper_best_nats: report.entropy.best_upper_nats(),
        doubling_checks: report.doubling_checks.clone(),
        certificate_radius: report.certificate_at.as_ref().map(|u| u.radius),
    }
}

/// Canonical pretty serialization used for every emitted artifact.
pub fn to_canonical_string<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Parse(format!("serialize: {e}")))
}

pub fn unknown_report_from_json(j: &BudgetReportJson) -> UnknownReport {
    UnknownReport {
        relation_len_searched: j.relation_len_searched,
        places_tried: j.places_tried,
        memory_budget_hit: j.memory_budget_hit,
        factorization_incomplete: j.factorization_incomplete,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::gamma_generators;
    use crate::freeness::{decide_pair, Budget};

    fn decision_for(coeffs: &[i64]) -> (Ring, AffineMap, AffineMap, FreenessVerdict) {
        let ring = ModulusRing::number_ring_from_ints(coeffs).unwrap();
        let (a, b) = gamma_generators(&ring);
        let verdict = decide_pair(&a, &b, &Budget::default()).unwrap();
        (ring, a, b, verdict)
    }

    #[test]
    fn free_decision_round_trips_through_check() {
        let (ring, a, b, verdict) = decision_for(&[-2, 1]);
        assert_eq!(verdict.tag(), "free");
        let artifact = decision_json(&ring, &a, &b, &verdict);
        let text = to_canonical_string(&artifact).unwrap();
        let rechecked = check_decision(&text).unwrap();
        assert_eq!(rechecked, artifact);
    }

    #[test]
    fn notfree_decision_round_trips_through_check() {
        let (ring, a, b, verdict) = decision_for(&[1, 1, 0, 1]);
        assert_eq!(verdict.tag(), "notfree");
        let artifact = decision_json(&ring, &a, &b, &verdict);
        let text = to_canonical_string(&artifact).unwrap();
        check_decision(&text).unwrap();
    }

    #[test]
    fn tampered_witness_is_rejected() {
        let (ring, a, b, verdict) = decision_for(&[1, 1, 0, 1]);
        let mut artifact = decision_json(&ring, &a, &b, &verdict);
        artifact.witness = Some(WitnessJson { u: "aaab".into(), v: "bbab".into() });
        let text = to_canonical_string(&artifact).unwrap();
        assert!(check_decision(&text).is_err());
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let (ring, a, b, verdict) = decision_for(&[-2, 1]);
        let mut artifact = decision_json(&ring, &a, &b, &verdict);
        // claim a 3-adic place instead of the true 2-adic one
        if let Some(c) = artifact.certificate.as_mut() {
            c.place = PlaceJson::PAdic {
                prime: 3,
                valuation: RatJson { num: "1".into(), den: "1".into() },
            };
        }
        let text = to_canonical_string(&artifact).unwrap();
        assert!(check_decision(&text).is_err());
    }

    #[test]
    fn archimedean_certificate_round_trips() {
        let ring = ModulusRing::number_ring_from_ints(&[-1, -1, 1]).unwrap();
        let (a, b) = gamma_generators(&ring);
        let z = a.map_pow(-3);
        let y = z.conjugate_by(&b).unwrap();
        let verdict = decide_pair(&z, &y, &Budget::default()).unwrap();
        assert_eq!(verdict.tag(), "free");
        let artifact = decision_json(&ring, &z, &y, &verdict);
        let text = to_canonical_string(&artifact).unwrap();
        check_decision(&text).unwrap();
    }

    #[test]
    fn growth_csv_shape() {
        use crate::growth::{ball_sizes, GeneratingSet};
        let ring = ModulusRing::number_ring_from_ints(&[-2, 1]).unwrap();
        let (a, b) = gamma_generators(&ring);
        let sigma = GeneratingSet::new(vec![a, b]).unwrap();
        let table = ball_sizes(&sigma, 3, 1 << 16).unwrap();
        let csv = growth_csv(&table);
        let lines: Vec<&str> = csv.trim().lines().collect();
        assert_eq!(lines[0], "n,ball_size,upper_bound_bits,dplus_status");
        assert_eq!(lines.len(), 5);
        assert!(lines[1].starts_with("0,1,,"));
    }
}
