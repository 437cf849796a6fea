//! Command-line front end: cohomology and class-group queries plus the
//! certificate pipelines.
//!
//! Exit codes: 0 = success / verdict true, 3 = certificate verdict false or
//! replay mismatch, 2 = usage or input errors.

use centex_core::arith;
use centex_core::certify::{
    self, certify_integral_hasse, certify_strong_approx, replay, verify_q8_proposition,
    Certificate, FieldSpec,
};
use centex_core::cohomology::{h2, h2_divisible, restriction};
use centex_core::extension::classify_extensions;
use centex_core::finab::FinAb;
use centex_core::group::{by_name, FiniteGroup, GroupInput};
use centex_core::represent::build_sl_representation;
use clap::{Parser, Subcommand};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "centex", version, about = "finite group cohomology, central extensions and arithmetic hypothesis certificates")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute H²(G, A) with trivial action (or H²(G, Q/Z) with --divisible).
    H2 {
        /// Catalog name (Q8, Z8, He3, ...) or path to a group JSON file.
        #[arg(long)]
        group: String,
        /// Coefficient moduli, e.g. 8 or 2,4.
        #[arg(long, value_delimiter = ',', required_unless_present = "divisible")]
        coeffs: Vec<i64>,
        /// Compute divisible coefficients (the Schur multiplier dual) instead.
        #[arg(long)]
        divisible: bool,
    },
    /// Classify the central extensions of a group by fixed coefficients.
    Extensions {
        #[arg(long)]
        group: String,
        #[arg(long, value_delimiter = ',')]
        coeffs: Vec<i64>,
    },
    /// The restriction map H²(G, A) -> H²(K, A) for a named subgroup.
    Restrict {
        #[arg(long)]
        group: String,
        #[arg(long, value_delimiter = ',')]
        coeffs: Vec<i64>,
        /// Subgroup: center, derived, central-derived, or element indices.
        #[arg(long)]
        to: String,
    },
    /// Induce a faithful character of the canonical central cyclic subgroup.
    Induce {
        #[arg(long)]
        group: String,
        /// Character exponent (must be coprime to |Z|).
        #[arg(short, default_value_t = 1)]
        k: u64,
    },
    /// Class group of a negative fundamental discriminant.
    Classgroup {
        #[arg(long, allow_negative_numbers = true)]
        disc: i64,
        /// Optional primes whose classes are quotiented out.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        s_primes: Vec<u64>,
    },
    /// Kummer irregularity of an odd prime.
    Irregular {
        #[arg(short)]
        p: u64,
    },
    /// Certify the strong-approximation hypotheses for a p-group.
    CertifyAf {
        #[arg(long)]
        group: String,
        #[arg(short)]
        p: u64,
        #[arg(short)]
        n: u32,
        /// Write the certificate JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Certify the integral local-global hypotheses (field data included).
    CertifyHasse {
        #[arg(long)]
        group: String,
        #[arg(short)]
        p: u64,
        #[arg(short)]
        n: u32,
        /// Imaginary quadratic field by fundamental discriminant.
        #[arg(long, allow_negative_numbers = true, conflicts_with = "cyclotomic")]
        quadratic: Option<i64>,
        /// Cyclotomic field by conductor.
        #[arg(long)]
        cyclotomic: Option<u64>,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        s_primes: Vec<u64>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Replay the full quaternion-group proposition.
    VerifyQ8 {
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Re-run all checks of a stored certificate and compare outcomes.
    Replay {
        #[arg(long)]
        json: PathBuf,
    },
}

fn resolve_group(spec: &str) -> Result<FiniteGroup, String> {
    if let Some(g) = by_name(spec) {
        return Ok(g);
    }
    let path = std::path::Path::new(spec);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| format!("reading {spec}: {e}"))?;
        let input: GroupInput =
            serde_json::from_str(&text).map_err(|e| format!("parsing {spec}: {e}"))?;
        return certify::resolve_group_input(&input).map_err(|e| e.to_string());
    }
    Err(format!("'{spec}' is neither a catalog group nor a readable file"))
}

fn coeffs_of(moduli: &[i64]) -> Result<FinAb, String> {
    FinAb::new(moduli.to_vec()).map_err(|e| e.to_string())
}

fn emit_certificate(cert: &Certificate, json_path: &Option<PathBuf>) -> Result<ExitCode, String> {
    for c in &cert.checks {
        let status = if c.pass { "PASS" } else { "FAIL" };
        let mode = match c.mode {
            certify::CheckMode::Computed => "computed",
            certify::CheckMode::Declared => "declared",
        };
        eprintln!("[{status}] ({mode}) {}: {}", c.name, c.statement);
    }
    eprintln!("verdict: {}", cert.verdict);
    let text = serde_json::to_string_pretty(cert).map_err(|e| e.to_string())?;
    match json_path {
        Some(p) => std::fs::write(p, &text).map_err(|e| format!("writing {}: {e}", p.display()))?,
        None => println!("{text}"),
    }
    Ok(if cert.verdict { ExitCode::SUCCESS } else { ExitCode::from(3) })
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::H2 { group, coeffs, divisible } => {
            let g = resolve_group(&group)?;
            if divisible {
                let factors = h2_divisible(&g);
                println!("{}", json!({ "invariant_factors": factors }));
            } else {
                let a = coeffs_of(&coeffs)?;
                let h = h2(&g, &a);
                let dump = h.to_dump(&g);
                println!("{}", serde_json::to_string(&dump).map_err(|e| e.to_string())?);
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Extensions { group, coeffs } => {
            let g = resolve_group(&group)?;
            let a = coeffs_of(&coeffs)?;
            let (h2g, types) = classify_extensions(&g, &a).map_err(|e| e.to_string())?;
            let out = json!({
                "h2_invariant_factors": h2g.invariant_factors(),
                "class_count": h2g.order().to_string(),
                "isomorphism_types": types
                    .iter()
                    .map(|t| json!({
                        "classes": t.classes,
                        "contains_split": t.contains_split,
                        "extension": t.representative.to_dump(Some(t.classes[0].clone())),
                    }))
                    .collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string(&out).map_err(|e| e.to_string())?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Restrict { group, coeffs, to } => {
            let g = resolve_group(&group)?;
            let a = coeffs_of(&coeffs)?;
            let sub = match to.as_str() {
                "center" => g.center(),
                "derived" => g.derived_subgroup(),
                "central-derived" => {
                    let (p, _) = g.p_group().ok_or("central-derived needs a p-group")?;
                    g.find_central_derived_cyclic(p).map_err(|e| e.to_string())?
                }
                list => {
                    let members: Vec<usize> = list
                        .split(',')
                        .map(|s| s.trim().parse().map_err(|e| format!("bad index: {e}")))
                        .collect::<Result<_, _>>()?;
                    g.subgroup(members).map_err(|e| e.to_string())?
                }
            };
            let h2g = h2(&g, &a);
            let (target, map) = restriction(&h2g, &g, &sub);
            let out = json!({
                "subgroup": sub.members,
                "source_factors": map.source_factors,
                "target_factors": target.invariant_factors(),
                "matrix": map.matrix,
            });
            println!("{}", serde_json::to_string(&out).map_err(|e| e.to_string())?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Induce { group, k } => {
            let g = resolve_group(&group)?;
            let (p, _) = g.p_group().ok_or("induce needs a p-group")?;
            let z = g.find_central_derived_cyclic(p).map_err(|e| e.to_string())?;
            let (rho, report) = build_sl_representation(&g, &z, k, p).map_err(|e| e.to_string())?;
            let out = json!({
                "subgroup": z.members,
                "report": report,
                "representation": rho.to_dump(),
            });
            println!("{}", serde_json::to_string(&out).map_err(|e| e.to_string())?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Classgroup { disc, s_primes } => {
            let cg = arith::class_group(disc).map_err(|e| e.to_string())?;
            let mut out = serde_json::to_value(cg.to_dump()).map_err(|e| e.to_string())?;
            if !s_primes.is_empty() {
                let scg = arith::s_class_group(&cg, &s_primes).map_err(|e| e.to_string())?;
                out["s_primes"] = json!(s_primes);
                out["s_class_group"] = json!(scg.structure);
            }
            println!("{}", serde_json::to_string(&out).map_err(|e| e.to_string())?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Irregular { p } => {
            let (irregular, indices) = arith::is_irregular(p).map_err(|e| e.to_string())?;
            println!(
                "{}",
                json!({ "p": p, "irregular": irregular, "indices": indices })
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::CertifyAf { group, p, n, json } => {
            let g = resolve_group(&group)?;
            let cert = certify_strong_approx(&g, p, n).map_err(|e| e.to_string())?;
            emit_certificate(&cert, &json)
        }
        Cmd::CertifyHasse { group, p, n, quadratic, cyclotomic, s_primes, json } => {
            let g = resolve_group(&group)?;
            let field = match (quadratic, cyclotomic) {
                (Some(d), None) => FieldSpec::Quadratic { discriminant: d },
                (None, Some(c)) => FieldSpec::Cyclotomic { conductor: c },
                _ => return Err("exactly one of --quadratic or --cyclotomic is required".into()),
            };
            let cert =
                certify_integral_hasse(&g, p, n, &field, &s_primes).map_err(|e| e.to_string())?;
            emit_certificate(&cert, &json)
        }
        Cmd::VerifyQ8 { json } => {
            let cert = verify_q8_proposition();
            emit_certificate(&cert, &json)
        }
        Cmd::Replay { json } => {
            let text = std::fs::read_to_string(&json)
                .map_err(|e| format!("reading {}: {e}", json.display()))?;
            let cert: Certificate =
                serde_json::from_str(&text).map_err(|e| format!("parsing certificate: {e}"))?;
            let report = replay(&cert).map_err(|e| e.to_string())?;
            for d in &report.details {
                let status = if d.recorded == d.replayed { "OK" } else { "MISMATCH" };
                eprintln!("[{status}] {}: recorded {}, replayed {}", d.name, d.recorded, d.replayed);
            }
            println!("{}", serde_json::to_string(&report).map_err(|e| e.to_string())?);
            Ok(if report.matches && report.verdict_consistent {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
