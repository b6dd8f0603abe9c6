use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use krk0::abgroup::FinAbGroup;
use krk0::fixedpoints::verify_fixed_point_prop;
use krk0::krmodel::{bell_f, bell_factorization, KrDescriptor, WeightVector};
use krk0::ktheory::{f_group_for, ActingGroup, EquivariantK0, ThreefoldParams};
use krk0::polyint::{cyclotomic, parse_poly, resultant, IntPoly};
use krk0::quotring::QuotientReport;
use krk0::verify::{run_all, Suite, VerifyConfig};

mod output;

use output::{render, Format};

/// Exact equivariant K₀ computations for Koras–Russell threefolds.
#[derive(Debug, Parser)]
#[command(name = "krk0", version)]
struct Cli {
    /// Output format written to stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Also write the output to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Worker threads for `verify` (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    parallelism: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The cyclotomic polynomial Φₙ.
    Cyclotomic { n: u64 },
    /// Resultant of two polynomials in t.
    Resultant { f: String, g: String },
    /// Additive structure of Z[t]/(g₁, …, g_k).
    Quotient {
        /// Generators such as "t^2 - t + 1"; at least one must be monic up to sign.
        #[arg(allow_hyphen_values = true, required_unless_present = "pair")]
        gens: Vec<String>,
        /// Use (Φ_m, Φ_n) instead of explicit generators.
        #[arg(long, num_args = 2, value_names = ["M", "N"], conflicts_with = "gens")]
        pair: Option<Vec<u64>>,
    },
    /// The polynomial f(t) and its cyclotomic factorization.
    BellF { alpha2: u64, alpha3: u64 },
    /// Equivariant K₀ for `torus`, `mu:n` or `mu:p^k`.
    K0 {
        #[arg(required_unless_present = "descriptor")]
        alpha2: Option<u64>,
        #[arg(required_unless_present = "descriptor")]
        alpha3: Option<u64>,
        #[arg(required_unless_present = "descriptor")]
        rho: Option<u64>,
        #[arg(required_unless_present = "descriptor")]
        group: Option<String>,
        /// JSON threefold descriptor; the group is then given with --group.
        #[arg(long, conflicts_with_all = ["alpha2", "alpha3", "rho"])]
        descriptor: Option<PathBuf>,
        #[arg(long = "group", id = "group_flag", requires = "descriptor")]
        group_flag: Option<String>,
    },
    /// Compare μₙ- and torus-fixed coordinates for 2 ≤ n ≤ N.
    FixedPoints {
        /// Comma-separated weights, e.g. 6,-6,3,2.
        #[arg(allow_hyphen_values = true)]
        weights: String,
        #[arg(long, default_value_t = 100)]
        max_n: u64,
    },
    /// Run every verification suite and report.
    Verify {
        /// Largest α₃ in the classification and kernel grids.
        #[arg(long)]
        max_alpha: Option<u64>,
        /// Largest prime p in the classification and kernel grids.
        #[arg(long)]
        max_prime: Option<u64>,
        /// Largest exponent k of p^k in the classification and kernel grids.
        #[arg(long)]
        max_n: Option<u32>,
        /// Bound on m < n for the cyclotomic pair suites.
        #[arg(long)]
        max_mn: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
    },
}

/// Marks errors that are bugs or I/O failures rather than bad input.
#[derive(Debug)]
struct Internal(String);

impl std::fmt::Display for Internal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Internal {}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let code = match std::panic::catch_unwind(|| run(&cli)) {
        Ok(Ok(true)) => 0,
        Ok(Ok(false)) => {
            eprintln!("verification failed");
            2
        }
        Ok(Err(e)) if e.downcast_ref::<Internal>().is_some() => {
            eprintln!("internal error: {e:#}");
            3
        }
        Ok(Err(e)) => {
            eprintln!("error: {e:#}");
            1
        }
        Err(_) => 3,
    };
    ExitCode::from(code)
}

/// `Ok(false)` when a check ran and failed.
fn run(cli: &Cli) -> anyhow::Result<bool> {
    let (value, text, verified) = match &cli.command {
        Command::Cyclotomic { n } => {
            let p = cyclotomic(*n)?;
            (poly_json(&p, json!({ "n": n })), p.to_string(), true)
        }
        Command::Resultant { f, g } => {
            let (pf, pg) = (parse_arg(f)?, parse_arg(g)?);
            let r = resultant(&pf, &pg)?;
            let v = json!({ "f": pf.to_string(), "g": pg.to_string(), "resultant": krk0::json::int_value(&r) });
            (v, r.to_string(), true)
        }
        Command::Quotient { gens, pair } => {
            let polys = match pair.as_deref() {
                Some(&[m, n]) => {
                    if m == 0 || m >= n {
                        bail!("--pair needs 1 <= m < n (got {m} {n})");
                    }
                    vec![cyclotomic(m)?, cyclotomic(n)?]
                }
                _ => gens.iter().map(|g| parse_arg(g)).collect::<anyhow::Result<_>>()?,
            };
            let report = QuotientReport::compute(&polys)?;
            let text = report.group.to_string();
            (report.to_json(), text, true)
        }
        Command::BellF { alpha2, alpha3 } => {
            let f = bell_f(*alpha2, *alpha3)?;
            let factors = bell_factorization(*alpha2, *alpha3)?;
            let extra = json!({ "alpha2": alpha2, "alpha3": alpha3, "cyclotomic_factors": factors });
            let labels: Vec<String> = factors.iter().map(|i| format!("Phi_{i}")).collect();
            (poly_json(&f, extra), format!("{f} = {}", labels.join(" * ")), true)
        }
        Command::K0 { alpha2, alpha3, rho, group, descriptor, group_flag } => {
            let (params, spec) = match descriptor {
                Some(path) => {
                    let raw = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                    let v: Value = serde_json::from_str(&raw).with_context(|| format!("parsing {}", path.display()))?;
                    let d = KrDescriptor::from_json(&v)?;
                    let spec = group_flag.as_deref().or(group.as_deref()).unwrap_or("torus");
                    (ThreefoldParams::from_descriptor(&d)?, spec.to_string())
                }
                None => {
                    let (a2, a3, r) = (alpha2.unwrap(), alpha3.unwrap(), rho.unwrap());
                    (ThreefoldParams::new(a2, a3, r)?, group.clone().unwrap())
                }
            };
            let acting: ActingGroup = spec.parse()?;
            let k0 = EquivariantK0::compute(&params, acting)?;
            if let Some((p, k)) = acting.prime_power() {
                let direct = f_group_for(&params, p, k)?;
                if direct.group != k0.f_structure {
                    let msg = format!("F computed two ways disagrees: {} vs {}", k0.f_structure, direct.group);
                    return Err(Internal(msg).into());
                }
            }
            (k0.to_json(), k0_text(&k0), true)
        }
        Command::FixedPoints { weights, max_n } => {
            if *max_n == 0 {
                bail!("--max-n must be >= 1");
            }
            let w = parse_weights(weights)?;
            let report = verify_fixed_point_prop(&w, *max_n);
            let text = format!(
                "{}: {} values of n checked, {}",
                w,
                report.checked,
                if report.passed() { "pass" } else { "fail" }
            );
            (report.to_json(), text, report.passed())
        }
        Command::Verify { max_alpha, max_prime, max_n, max_mn, seed, inject_fault } => {
            let mut cfg = VerifyConfig { parallelism: cli.parallelism, ..Default::default() };
            if let Some(a) = *max_alpha {
                if a < 3 {
                    bail!("--max-alpha must be >= 3");
                }
                cfg.max_alpha = a;
            }
            if let Some(p) = *max_prime {
                if p < 2 {
                    bail!("--max-prime must be >= 2");
                }
                cfg.max_prime = p;
            }
            if let Some(k) = *max_n {
                if k == 0 {
                    bail!("--max-n must be >= 1");
                }
                cfg.max_k = k;
            }
            if let Some(b) = *max_mn {
                if b < 2 {
                    bail!("--max-mn must be >= 2");
                }
                cfg.max_mn = b;
            }
            if let Some(s) = *seed {
                cfg.seed = s;
            }
            if let Some(name) = inject_fault {
                cfg.inject_fault = Some(name.parse::<Suite>()?);
            }
            let report = run_all(&cfg);
            for s in &report.suites {
                eprintln!("[{}] {:<30} {:>8.2?}", s.id, s.name.name(), s.elapsed);
            }
            eprintln!("total {:.2?}", report.elapsed());
            (report.to_json(), report.to_text(), report.passed)
        }
    };
    let rendered = render(cli.format, &value, &text).map_err(|e| Internal(format!("rendering output: {e:#}")))?;
    print!("{rendered}");
    if let Some(path) = &cli.report {
        fs::write(path, &rendered).map_err(|e| Internal(format!("writing report to {}: {e}", path.display())))?;
    }
    Ok(verified)
}

fn parse_arg(src: &str) -> anyhow::Result<IntPoly> {
    parse_poly(src).with_context(|| format!("cannot parse polynomial {src:?}"))
}

fn parse_weights(src: &str) -> anyhow::Result<WeightVector> {
    let weights = src
        .split(',')
        .map(|w| w.trim().parse::<i64>().with_context(|| format!("bad weight {w:?}")))
        .collect::<anyhow::Result<Vec<_>>>()?;
    if weights.is_empty() {
        bail!("no weights given");
    }
    Ok(WeightVector::new(weights)?)
}

fn poly_json(p: &IntPoly, extra: Value) -> Value {
    let mut v = extra;
    v["poly"] = json!(p.to_string());
    v["coeffs"] = p.to_json();
    v["degree"] = json!(p.degree());
    v
}

fn k0_text(k0: &EquivariantK0) -> String {
    let f_part = k0.f_part();
    let ring = match k0.group {
        ActingGroup::Torus => "Z[t,t^-1]".to_string(),
        ActingGroup::Mu(n) => format!("Z[t]/(t^{n} - 1)"),
    };
    let mut out = format!("K0 = {ring} + F^{}\nF = {}\n", k0.multiplicity, k0.f_structure);
    if let Some(whole) = k0.whole_group() {
        out += &format!("as an abelian group: {whole}\n");
    } else if f_part != FinAbGroup::trivial() {
        out += &format!("f-part: {f_part}\n");
    }
    out
}
