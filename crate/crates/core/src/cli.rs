//! Command-line front door: parse rings and generator sets, dispatch to the
//! engines, and emit deterministic JSON/CSV artifacts.
//!
//! Exit codes: 0 on success, 1 on input or verification errors, 2 when the
//! dominant outcome is Unknown (budgets exhausted without a verdict), so
//! scripts can tell "refuted" from "gave up".

use crate::affine::{classify_group, gamma_generators, parse_generators, AffineMap, GroupClass};
use crate::error::{Error, Result};
use crate::field::{parse_poly, ModulusRing, Ring};
use crate::freeness::{decide_pair, Budget, FreenessVerdict};
use crate::growth::{
    annotate_dplus_status, ball_sizes, dplus_lower, dplus_upper, entropy_bounds, GeneratingSet,
};
use crate::jsonio;
use crate::mahler::{ct_family_verify, ct_growth_evidence, lehmer_experiment, mahler_measure};
use crate::rat::rat_to_f64;
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

/// Shared tuning knobs. Every engine is deterministic; outputs are
/// byte-identical across runs and worker counts for fixed inputs.
#[derive(Args, Clone, Debug)]
pub struct Config {
    /// Target bits for certified enclosures.
    #[arg(long, default_value_t = 64, global = true)]
    pub precision_bits: u32,
    /// Maximum positive-word length for relation searches.
    #[arg(long, default_value_t = 14, global = true)]
    pub relation_max_len: usize,
    /// Canonical-form memory budget for enumerations.
    #[arg(long, default_value_t = 10_000_000, global = true)]
    pub memory_budget: usize,
    /// Trial-division bound for norm factorizations.
    #[arg(long, default_value_t = 1_000_000, global = true)]
    pub trial_division_bound: u64,
    /// Worker pool size (reserved; the engines run deterministically and
    /// results never depend on this value).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
}

impl Config {
    pub fn budget(&self) -> Budget {
        Budget {
            relation_max_len: self.relation_max_len,
            precision_bits: self.precision_bits,
            trial_division_bound: self.trial_division_bound,
            memory_budget_elements: self.memory_budget,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "affine-growth",
    about = "Exact growth statistics and free-semigroup certificates for affine groups of a line"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub config: Config,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate exact ball sizes and entropy bounds for a generating set.
    Growth {
        /// Ring: a monic integer polynomial in x, or "Q(t)".
        #[arg(long)]
        ring: String,
        /// Generators "a|b; a|b; ..." or the preset "gamma".
        #[arg(long, default_value = "gamma")]
        generators: String,
        #[arg(long, default_value_t = 12)]
        nmax: usize,
        /// Refutation probe radius for the status column.
        #[arg(long, default_value_t = 1)]
        probe: usize,
        /// Certificate search radius for the status column.
        #[arg(long, default_value_t = 3)]
        cert_radius: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
        /// Assert that the modulus is irreducible.
        #[arg(long)]
        irreducible: bool,
    },
    /// Bracket the positive-independence radius of a generating set.
    Dplus {
        #[arg(long)]
        ring: String,
        #[arg(long, default_value = "gamma")]
        generators: String,
        /// Largest radius scanned for a certified pair.
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        /// Largest radius for exhaustive refutation.
        #[arg(long, default_value_t = 2)]
        probe: usize,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        irreducible: bool,
    },
    /// Decide positive independence of one pair.
    Decide {
        #[arg(long)]
        ring: String,
        /// "A,B" (the gamma preset) or an explicit pair "a|b; a|b".
        #[arg(long, default_value = "A,B")]
        pair: String,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        irreducible: bool,
    },
    /// Classify the generated group (virtually nilpotent / polycyclic /
    /// neither) from the algebraic type of its dilation ratios.
    Classify {
        #[arg(long)]
        ring: String,
        #[arg(long, default_value = "gamma")]
        generators: String,
        #[arg(long)]
        irreducible: bool,
    },
    /// Certified Mahler measure and the exact Kronecker test.
    Mahler {
        /// Monic integer polynomial, e.g. "x^3+x+1" or "1,1,0,1".
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 64)]
        bits: u32,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Verify every relation of the counterexample family member at n.
    #[command(name = "verify-ct")]
    VerifyCt {
        #[arg(long)]
        n: u32,
        /// Degree cap: 3 * n! must fit; raise explicitly for n = 4.
        #[arg(long, default_value_t = 18)]
        max_degree: usize,
        /// Skip the exhaustive ball refutation (relations only).
        #[arg(long)]
        skip_growth: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Re-validate an emitted decision artifact bit-exactly.
    Check {
        /// Path to a decision JSON file.
        file: PathBuf,
    },
    /// The Mahler-measure vs growth experiment for an irreducible monic
    /// polynomial with constant term +-1.
    Lehmer {
        #[arg(long, conflicts_with = "poly_file")]
        poly: Option<String>,
        #[arg(long)]
        poly_file: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        #[arg(long, default_value_t = 2)]
        cert_radius: usize,
        /// Assert irreducibility (required for degree > 3).
        #[arg(long)]
        irreducible: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

/// Parses the ring text: "Q(t)" / "t" for the function field, otherwise a
/// monic integer polynomial in x.
pub fn parse_ring(text: &str, assume_irreducible: bool) -> Result<Ring> {
    let trimmed = text.trim();
    if trimmed.eq_ignore_ascii_case("q(t)") || trimmed == "t" {
        return Ok(ModulusRing::function_field());
    }
    let pi = parse_poly(trimmed, 'x')?;
    let ring = ModulusRing::number_ring(pi)?;
    Ok(if assume_irreducible {
        ring.assert_irreducible()
    } else {
        ring
    })
}

/// Parses a generator specification against a ring: the "gamma" preset or
/// an explicit "a|b; a|b" list.
pub fn parse_generator_spec(ring: &Ring, spec: &str) -> Result<Vec<AffineMap>> {
    if spec.trim().eq_ignore_ascii_case("gamma") {
        let (a, b) = gamma_generators(ring);
        Ok(vec![a, b])
    } else {
        parse_generators(ring, spec)
    }
}

/// Parses a pair spec: "A,B" style names over the gamma preset, or an
/// explicit two-generator list.
pub fn parse_pair_spec(ring: &Ring, spec: &str) -> Result<(AffineMap, AffineMap)> {
    let trimmed = spec.trim();
    if trimmed.contains('|') {
        let gens = parse_generators(ring, trimmed)?;
        if gens.len() != 2 {
            return Err(Error::Parse("pair spec must name exactly two maps".into()));
        }
        return Ok((gens[0].clone(), gens[1].clone()));
    }
    let (a, b) = gamma_generators(ring);
    let mut out = Vec::new();
    for name in trimmed.split(',') {
        let m = match name.trim() {
            "A" | "a" => a.clone(),
            "B" | "b" => b.clone(),
            "A-" | "A^-1" => a.invert(),
            "B-" | "B^-1" => b.invert(),
            other => return Err(Error::Parse(format!("unknown pair name {other:?}"))),
        };
        out.push(m);
    }
    if out.len() != 2 {
        return Err(Error::Parse("pair spec must name exactly two maps".into()));
    }
    Ok((out[0].clone(), out[1].clone()))
}

fn write_artifact(path: &Option<PathBuf>, text: &str) -> Result<()> {
    if let Some(p) = path {
        std::fs::write(p, text).map_err(|e| Error::Parse(format!("write {p:?}: {e}")))?;
    }
    Ok(())
}

/// Runs one parsed command; returns the process exit code.
pub fn run(cli: Cli) -> Result<i32> {
    let budget = cli.config.budget();
    match cli.command {
        Command::Growth {
            ring,
            generators,
            nmax,
            probe,
            cert_radius,
            csv,
            json,
            irreducible,
        } => {
            let ring = parse_ring(&ring, irreducible)?;
            let gens = parse_generator_spec(&ring, &generators)?;
            let sigma = GeneratingSet::new(gens)?;
            let mut table = ball_sizes(&sigma, nmax, budget.memory_budget_elements)?;
            let upper = dplus_upper(&sigma, cert_radius, &budget)?;
            let lower = dplus_lower(&sigma, probe, &budget)?;
            annotate_dplus_status(&mut table, &upper, &lower);
            let entropy = entropy_bounds(&table, upper.as_ref().map(|u| u.radius));
            if !table.check_submultiplicative() {
                return Err(Error::Parse("submultiplicativity violated".into()));
            }
            let summary =
                jsonio::growth_summary_json(&ring, &sigma, &table, &entropy, &upper, &lower);
            println!("effective |Sigma| = {}", sigma.symmetrized().len());
            for row in &summary.rows {
                match row.upper_bound_bits {
                    Some(bits) => println!(
                        "n={:<3} #ball={:<12} log2/n={:.6}  {}",
                        row.n, row.ball_size, bits, row.dplus_status
                    ),
                    None => println!("n={:<3} #ball={}", row.n, row.ball_size),
                }
            }
            println!(
                "entropy lower {:.6} nats, best upper {} nats, bracket [{}, {}]",
                summary.entropy_lower_nats,
                summary
                    .entropy_upper_best_nats
                    .map_or("-".to_string(), |x| format!("{x:.6}")),
                summary.dplus_bracket.lower,
                summary
                    .dplus_bracket
                    .upper
                    .map_or("?".to_string(), |x| x.to_string()),
            );
            write_artifact(&csv, &jsonio::growth_csv(&table))?;
            write_artifact(&json, &jsonio::to_canonical_string(&summary)?)?;
            Ok(0)
        }
        Command::Dplus { ring, generators, nmax, probe, json, irreducible } => {
            let ring = parse_ring(&ring, irreducible)?;
            let gens = parse_generator_spec(&ring, &generators)?;
            let sigma = GeneratingSet::new(gens)?;
            let upper = dplus_upper(&sigma, nmax, &budget)?;
            let lower = dplus_lower(&sigma, probe, &budget)?;
            let mut table = ball_sizes(&sigma, nmax, budget.memory_budget_elements)?;
            annotate_dplus_status(&mut table, &upper, &lower);
            let entropy = entropy_bounds(&table, upper.as_ref().map(|u| u.radius));
            let summary =
                jsonio::growth_summary_json(&ring, &sigma, &table, &entropy, &upper, &lower);
            match &upper {
                Some(u) => println!(
                    "certificate at radius {} ({}) for pair ({}, {})",
                    u.radius,
                    u.certificate.place.describe(),
                    u.pair.0,
                    u.pair.1
                ),
                None => println!("no certificate up to radius {nmax}"),
            }
            println!(
                "all pairs refuted through radius {} ({} pairs)",
                lower.m, lower.refuted_pairs
            );
            write_artifact(&json, &jsonio::to_canonical_string(&summary)?)?;
            let decided = upper.is_some() || lower.m == probe;
            Ok(if decided { 0 } else { 2 })
        }
        Command::Decide { ring, pair, json, irreducible } => {
            let ring = parse_ring(&ring, irreducible)?;
            let (f, g) = parse_pair_spec(&ring, &pair)?;
            let verdict = decide_pair(&f, &g, &budget)?;
            let artifact = jsonio::decision_json(&ring, &f, &g, &verdict);
            let text = jsonio::to_canonical_string(&artifact)?;
            println!("{text}");
            write_artifact(&json, &text)?;
            Ok(match verdict {
                FreenessVerdict::Unknown(_) => 2,
                _ => 0,
            })
        }
        Command::Classify { ring, generators, irreducible } => {
            let ring = parse_ring(&ring, irreducible)?;
            let gens = parse_generator_spec(&ring, &generators)?;
            let class = classify_group(&gens)?;
            println!("{class}");
            Ok(if class == GroupClass::Unknown { 2 } else { 0 })
        }
        Command::Mahler { poly, bits, json } => {
            let pi = parse_poly(&poly, 'x')?;
            let result = mahler_measure(&pi, bits)?;
            let artifact = jsonio::mahler_json(&pi, &result);
            println!(
                "m({}) in [{}, {}] ~ [{:.12}, {:.12}]  kronecker: {}",
                pi,
                crate::rat::rat_to_string(&result.measure.lo),
                crate::rat::rat_to_string(&result.measure.hi),
                rat_to_f64(&result.measure.lo),
                rat_to_f64(&result.measure.hi),
                result.is_kronecker
            );
            write_artifact(&json, &jsonio::to_canonical_string(&artifact)?)?;
            Ok(0)
        }
        Command::VerifyCt { n, max_degree, skip_growth, json } => {
            let report = ct_family_verify(n, max_degree)?;
            let refutation = if skip_growth || n < 2 {
                None
            } else {
                Some(ct_growth_evidence(n, &budget)?)
            };
            let artifact = jsonio::ct_report_json(&report, refutation.as_ref());
            println!(
                "n={} modulus degree {}: base relation {}, {}/{} power relations hold",
                n,
                report.modulus.deg(),
                if report.base_relation_holds { "holds" } else { "FAILS" },
                report.relations.iter().filter(|r| r.holds).count(),
                report.relations.len()
            );
            if let Some(l) = &refutation {
                println!(
                    "ball refutation radius {} (claimed lower bound d+ >= {})",
                    l.m, report.dplus_lower_claim
                );
            }
            write_artifact(&json, &jsonio::to_canonical_string(&artifact)?)?;
            Ok(if artifact.all_hold { 0 } else { 1 })
        }
        Command::Check { file } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Error::Parse(format!("read {file:?}: {e}")))?;
            let artifact = jsonio::check_decision(&text)?;
            println!("ok: verdict {} re-verified", artifact.verdict);
            Ok(0)
        }
        Command::Lehmer { poly, poly_file, nmax, cert_radius, irreducible, json } => {
            let text = match (poly, poly_file) {
                (Some(p), _) => p,
                (None, Some(path)) => std::fs::read_to_string(&path)
                    .map_err(|e| Error::Parse(format!("read {path:?}: {e}")))?,
                (None, None) => return Err(Error::Parse("need --poly or --poly-file".into())),
            };
            let pi = parse_poly(text.trim(), 'x')?;
            let report = lehmer_experiment(&pi, nmax, cert_radius, &budget, irreducible)?;
            let artifact = jsonio::lehmer_json(&pi, &report);
            println!(
                "log m in [{:.6}, {:.6}], implied d+ >= {}, certificate at radius <= {}: {}",
                artifact.mahler.log_measure_decimal[0],
                artifact.mahler.log_measure_decimal[1],
                report.implied_dplus_lower,
                cert_radius,
                match &artifact.certificate_radius {
                    Some(r) => format!("found at {r}"),
                    None => "none".into(),
                }
            );
            write_artifact(&json, &jsonio::to_canonical_string(&artifact)?)?;
            Ok(0)
        }
    }
}

pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_and_pair_parsing() {
        let ring = parse_ring("x^3+x+1", false).unwrap();
        assert_eq!(ring.degree(), 3);
        let qt = parse_ring("Q(t)", false).unwrap();
        assert_eq!(qt.degree(), 0);

        let (f, g) = parse_pair_spec(&ring, "A,B").unwrap();
        let (a, b) = gamma_generators(&ring);
        assert_eq!((f, g), (a.clone(), b));
        let (f, g) = parse_pair_spec(&ring, "A,A^-1").unwrap();
        assert_eq!(g, f.invert());
        assert_eq!(f, a);
        assert!(parse_pair_spec(&ring, "A").is_err());
        assert!(parse_pair_spec(&ring, "C,D").is_err());

        let (f, _) = parse_pair_spec(&ring, "x|0; x|1").unwrap();
        assert_eq!(f, a);
    }

    #[test]
    fn cli_parses_documented_invocations() {
        for argv in [
            vec!["affine-growth", "decide", "--ring", "x^3+x+1", "--pair", "A,B"],
            vec!["affine-growth", "growth", "--ring", "x-2", "--nmax", "4"],
            vec!["affine-growth", "mahler", "--poly", "x^2-x-1", "--bits", "32"],
            vec!["affine-growth", "verify-ct", "--n", "2"],
            vec!["affine-growth", "lehmer", "--poly", "x^3+x+1", "--nmax", "4"],
            vec!["affine-growth", "classify", "--ring", "x^2+x+1"],
        ] {
            Cli::try_parse_from(argv).unwrap();
        }
    }
}
