//! Command-line front end. `run` parses arguments, dispatches to the compute
//! modules and writes one report; the exit code is 0 on success, 2 when an
//! asserted inequality fails and 1 on usage or I/O errors.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::corpus::random_polynomials;
use crate::error::{Error, Result};
use crate::exponent::{ExtExponent, PQPair};
use crate::extremal::{
    c0_constant_checks, claim_check, default_claim_eps, default_claim_offsets, l1_copy_extraction, l1_copy_integral,
    lacunary_equiv, uk_phi, uk_phi_on_axis, C0KernelParams, L1CopyParams, UkParams, C0_DEPTH,
};
use crate::littlewood_paley::{converse_corpus, converse_ratio, lp_check, lp_corpus, lp_tail_check, TailMode};
use crate::luecking::{dump_csv, maximal_bound_experiment, MaximalOperator};
use crate::norm::{
    boundary_decay_profile, delta_norm_lower, delta_prime_norm_lower, rho_pq, rm_p0_verdict, tail_profile,
    DEFAULT_KERNEL_POWERS,
};
use crate::operators::{
    bcdelta_verify, bloch_seminorm, diagnose_symbol, second_derivative_bound_check, BcdeltaParams, Thresholds,
};
use crate::quadrature::{Closure, DiscGrid};
use crate::report;
use crate::series::{tg_apply, tg_closed_form, FunctionSpec};

#[derive(Parser, Debug)]
#[command(name = "rmspace", version, about = "Mixed-norm spaces RM(p,q) of analytic functions on the unit disc")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalArgs {
    /// Radial exponent p in [1, inf].
    #[arg(long = "p", global = true, default_value = "2", value_parser = parse_exponent)]
    p: ExtExponent,
    /// Angular exponent q in [1, inf].
    #[arg(long = "q", global = true, default_value = "2", value_parser = parse_exponent)]
    q: ExtExponent,
    /// Number of angular nodes M (power of two).
    #[arg(long, global = true, default_value_t = 256)]
    grid_angles: usize,
    /// Number of dyadic radial shells L.
    #[arg(long, global = true, default_value_t = 16)]
    grid_depth: usize,
    /// Gauss-Legendre nodes per shell m.
    #[arg(long, global = true, default_value_t = 8)]
    grid_order: usize,
    /// Cover [1 - 2^-L, 1) by a graded panel, or truncate radial integrals there.
    #[arg(long, global = true, value_enum, default_value_t = ClosureArg::Graded)]
    closure: ClosureArg,
    /// Function spec JSON file ("-" for stdin).
    #[arg(long, global = true)]
    spec: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Corpus seed, hexadecimal.
    #[arg(long, global = true, default_value = "5EED", value_parser = parse_hex)]
    seed: u64,
    /// Allow exponent ranges where no bound is known.
    #[arg(long, global = true)]
    experimental: bool,
    /// Absolute tolerance for asserted identities.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tolerance: f64,
    /// Emit CSV (profiles, geometry) instead of the JSON report.
    #[arg(long, global = true)]
    csv: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum ClosureArg {
    Graded,
    Truncate,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ProfileKind {
    Tail,
    Boundary,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mixed norm rho_{p,q}(f); optionally the RM(p,0) tail profile, the
    /// boundary decay (1-rho)^{1/p}|f(rho e^{it})|, or point-evaluation bounds.
    Norm {
        #[arg(long, value_enum)]
        profile: Option<ProfileKind>,
        /// Lower bounds for the norms of delta_z and delta'_z at z = R.
        #[arg(long)]
        delta_radius: Option<f64>,
        /// Threshold for the RM(p,0) verdict.
        #[arg(long, default_value_t = 1e-2)]
        eps: f64,
    },
    /// Integration operator T_g f(z) = int_0^z f(w) g'(w) dw: Taylor
    /// coefficients and the norm bound rho(T_g f) <= p ||g||_B rho(f).
    Tg {
        /// Symbol g as a function spec JSON file.
        #[arg(long)]
        symbol: PathBuf,
        #[arg(long, default_value_t = 32)]
        terms: usize,
    },
    /// Bloch seminorm sup (1-|z|^2)|g'(z)|, the bound |g''| <= 4B/(1-|z|)^2
    /// and the lower bound |g'| > c/eta on a box near (1-eta)e^{ia}.
    Bloch {
        /// Bloch-type bound B for the second-derivative and box checks.
        #[arg(long)]
        b: Option<f64>,
        #[arg(long)]
        c: Option<f64>,
        #[arg(long, default_value_t = 0.1)]
        eta: f64,
        #[arg(long, default_value_t = 0.0)]
        a: f64,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long, default_value_t = 33)]
        lattice: usize,
    },
    /// Classify a symbol as Bloch, little Bloch and weakly little Bloch,
    /// the conditions for boundedness and compactness of T_g.
    Diagnose {
        #[arg(long, default_value_t = 1e-2)]
        b0_eps: f64,
        #[arg(long, default_value_t = 1e-2)]
        b0w_eps: f64,
        #[arg(long, default_value_t = 0.1)]
        measure: f64,
    },
    /// Littlewood-Paley inequality rho_{p,q}(f) <= p rho_{p,q}(f'(z)(1-|z|)) + |f(0)|,
    /// on one spec or a seeded polynomial corpus; with --tail-rho, its radial tail form.
    LpCheck {
        #[arg(long)]
        corpus: Option<usize>,
        /// Check all (p,q) in {1,2,3} x {1,2,inf} on the corpus.
        #[arg(long)]
        all_pairs: bool,
        #[arg(long)]
        tail_rho: Option<f64>,
        /// Direction for the tail form; the sup over grid angles when absent.
        #[arg(long)]
        theta: Option<f64>,
    },
    /// Converse ratio rho_{p,q}(f'(z)(1-|z|)) / rho_{p,q}(f); open (p,q) cases need --experimental.
    Converse {
        #[arg(long)]
        corpus: Option<usize>,
    },
    /// Lacunary series: rho_{p,q}(sum a_k z^{n_k}) against (sum |a_k|^p / n_k)^{1/p}.
    Lacunary {
        /// Drop exponents above M/4 instead of failing.
        #[arg(long)]
        truncate: bool,
    },
    /// Luecking regions R_{n,j} and their neighbour counts.
    Luecking {
        #[command(subcommand)]
        action: LueckingAction,
    },
    /// Maximal operators M_R, M_R~, M_D: sup over a corpus of rho(Mf)/rho(f).
    Maximal {
        #[arg(long, default_value = "r", value_parser = parse_operator)]
        operator: MaximalOperator,
        #[arg(long, default_value_t = 10)]
        depth: u32,
        #[arg(long, default_value_t = 50)]
        corpus: usize,
    },
    /// Extremal constructions: the phi_k kernel claim, the l1-copy integrals
    /// for g = -log(1-z), and kernels equivalent to the c0 basis.
    Extremal {
        #[command(subcommand)]
        action: ExtremalAction,
    },
    /// The seeded random polynomial corpus as function specs.
    Corpus {
        #[arg(long, default_value_t = 200)]
        size: usize,
    },
}

#[derive(Subcommand, Debug)]
enum LueckingAction {
    /// CSV of n, j, r_lo, r_hi, theta_lo, theta_hi, area, nc_count.
    Dump {
        #[arg(long, default_value_t = 4)]
        depth: u32,
    },
}

#[derive(Subcommand, Debug)]
enum ExtremalAction {
    /// phi(eps, theta) <= min{1, 8 eps^2/theta^2} over eps = 2^-3..2^-10 and 64 angles.
    ClaimCheck,
    /// int_0^1 |T_g(beta^n z^{beta^n})| dr = beta^n/(1+beta^n) for g = -log(1-z).
    L1Copy {
        #[arg(long, default_value_t = 2)]
        beta: u64,
        #[arg(long, default_value_t = 1)]
        n: u32,
        /// Also run the interval extraction for this many terms.
        #[arg(long)]
        extract: Option<usize>,
    },
    /// Constants of the kernels f_n(z) = (1-r_n)(1 - r_n z)^{-(2+1/p)}.
    C0 {
        #[arg(long, default_value_t = 4)]
        terms: usize,
        #[arg(long, default_value_t = 0.1)]
        eps1: f64,
        #[arg(long, default_value_t = 0.02)]
        beta: f64,
        #[arg(long, default_value_t = C0_DEPTH)]
        depth: usize,
    },
}

fn parse_exponent(s: &str) -> std::result::Result<ExtExponent, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_hex(s: &str) -> std::result::Result<u64, String> {
    let t = s.trim_start_matches("0x").trim_start_matches("0X");
    u64::from_str_radix(t, 16).map_err(|e| format!("'{s}' is not hexadecimal: {e}"))
}

fn parse_operator(s: &str) -> std::result::Result<MaximalOperator, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Serialize)]
struct RunConfig {
    subcommand: String,
    p: ExtExponent,
    q: ExtExponent,
    grid_angles: usize,
    grid_depth: usize,
    grid_order: usize,
    closure: ClosureArg,
    tolerance: f64,
    seed: String,
    experimental: bool,
    spec: Option<String>,
}

/// What a subcommand produced: the report body, or CSV text, plus whether
/// its asserted check held.
enum Output {
    Json(Value),
    Csv(String),
}

struct Outcome {
    output: Output,
    passed: bool,
}

impl Outcome {
    fn json(result: impl Serialize, passed: bool) -> Result<Self> {
        Ok(Outcome { output: Output::Json(serde_json::to_value(result)?), passed })
    }
}

/// Parse `argv` (program name first), run, and return the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(passed) => {
            if passed {
                0
            } else {
                2
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn execute(cli: &Cli) -> Result<bool> {
    let g = &cli.global;
    let config = RunConfig {
        subcommand: subcommand_name(&cli.command),
        p: g.p,
        q: g.q,
        grid_angles: g.grid_angles,
        grid_depth: g.grid_depth,
        grid_order: g.grid_order,
        closure: g.closure,
        tolerance: g.tolerance,
        seed: format!("{:#X}", g.seed),
        experimental: g.experimental,
        spec: g.spec.as_ref().map(|p| p.display().to_string()),
    };
    let outcome = dispatch(cli)?;
    let text = match outcome.output {
        Output::Json(result) => report::render(&config, &result)?,
        Output::Csv(text) => text,
    };
    match &g.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(outcome.passed)
}

fn subcommand_name(c: &Command) -> String {
    match c {
        Command::Norm { .. } => "norm",
        Command::Tg { .. } => "tg",
        Command::Bloch { .. } => "bloch",
        Command::Diagnose { .. } => "diagnose",
        Command::LpCheck { .. } => "lp-check",
        Command::Converse { .. } => "converse",
        Command::Lacunary { .. } => "lacunary",
        Command::Luecking { .. } => "luecking dump",
        Command::Maximal { .. } => "maximal",
        Command::Extremal { action } => match action {
            ExtremalAction::ClaimCheck => "extremal claim-check",
            ExtremalAction::L1Copy { .. } => "extremal l1-copy",
            ExtremalAction::C0 { .. } => "extremal c0",
        },
        Command::Corpus { .. } => "corpus",
    }
    .to_string()
}

fn grid(g: &GlobalArgs) -> Result<DiscGrid> {
    let closure = match g.closure {
        ClosureArg::Graded => Closure::Graded,
        ClosureArg::Truncate => Closure::Truncate,
    };
    DiscGrid::with_closure(g.grid_angles, g.grid_depth, g.grid_order, closure)
}

fn read_spec_file(path: &PathBuf) -> Result<FunctionSpec> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())?
    } else {
        std::fs::read_to_string(path)?
    };
    FunctionSpec::from_json(&text)
}

fn spec(g: &GlobalArgs) -> Result<FunctionSpec> {
    let path = g.spec.as_ref().ok_or_else(|| Error::InvalidParameter("this subcommand needs --spec FILE".into()))?;
    read_spec_file(path)
}

fn finite_p(pq: PQPair) -> Result<f64> {
    pq.p.value().ok_or_else(|| Error::InvalidParameter("this subcommand needs a finite --p".into()))
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    let pq = PQPair::new(g.p, g.q);
    match &cli.command {
        Command::Norm { profile, delta_radius, eps } => {
            let grid = grid(g)?;
            let f = spec(g)?;
            if let Some(kind) = profile {
                let abscissae = grid.default_abscissae();
                let prof = match kind {
                    ProfileKind::Tail => tail_profile(&f, g.p, &grid, &abscissae)?,
                    ProfileKind::Boundary => boundary_decay_profile(&f, g.p, &grid, &abscissae)?,
                };
                if g.csv {
                    return Ok(Outcome { output: Output::Csv(prof.to_csv()), passed: true });
                }
                let verdict = match kind {
                    ProfileKind::Tail => Some(rm_p0_verdict(&prof, finite_p(pq)?, *eps)),
                    ProfileKind::Boundary => None,
                };
                return Outcome::json(json!({ "profile": prof, "rm_p0": verdict, "horizon": grid.r_max() }), true);
            }
            let rep = rho_pq(&f, pq, &grid);
            if let Some(r) = delta_radius {
                let z = Complex64::new(*r, 0.0);
                let lower = delta_norm_lower(pq, z, &DEFAULT_KERNEL_POWERS, &grid)?;
                let lower_prime = delta_prime_norm_lower(pq, z, &DEFAULT_KERNEL_POWERS, &grid)?;
                return Outcome::json(
                    json!({ "norm": rep, "delta_radius": r, "delta_norm_lower": lower,
                            "delta_prime_norm_lower": lower_prime, "kernel_powers": DEFAULT_KERNEL_POWERS }),
                    true,
                );
            }
            Outcome::json(
                json!({ "value": rep.value, "error_estimate": rep.error_estimate, "coarse_value": rep.coarse_value,
                        "grid": rep.grid, "truncation_note": rep.truncation_note }),
                true,
            )
        }
        Command::Tg { symbol, terms } => {
            let grid = grid(g)?;
            let f = spec(g)?;
            let sym = read_spec_file(symbol)?;
            let coeffs = tg_apply(&f, &sym, *terms);
            let (tg, exact) = match tg_closed_form(&f, &sym) {
                Ok(closed) => (closed, true),
                Err(_) => (coeffs.clone().into_spec(), false),
            };
            let norm_f = rho_pq(&f, pq, &grid);
            let norm_tg = rho_pq(&tg, pq, &grid);
            let bloch = bloch_seminorm(&sym, &grid);
            let (bound, holds) = match pq.p.value() {
                Some(p) => {
                    let bound = p * bloch.value * norm_f.value;
                    let tol = g.tolerance + 10.0 * norm_tg.error_estimate;
                    (Some(bound), norm_tg.value <= bound * (1.0 + 1e-6) + tol)
                }
                None => (None, true),
            };
            let coefficients: Vec<[f64; 2]> = coeffs.coeffs.iter().map(|c| [c.re, c.im]).collect();
            Outcome::json(
                json!({ "coefficients": coefficients, "closed_form": exact, "norm_f": norm_f, "norm_tg": norm_tg,
                        "bloch_seminorm": bloch.value, "bound": bound, "holds": holds }),
                holds,
            )
        }
        Command::Bloch { b, c, eta, a, delta, lattice } => {
            let grid = grid(g)?;
            let f = spec(g)?;
            let rep = bloch_seminorm(&f, &grid);
            let norm = f.eval(Complex64::new(0.0, 0.0)).norm() + rep.value;
            let mut passed = true;
            let mut second = None;
            let mut box_check = None;
            if let Some(b) = b {
                let s = second_derivative_bound_check(&f, *b, &grid)?;
                passed &= s.holds;
                second = Some(s);
                if let Some(c) = c {
                    let params = BcdeltaParams::new(*b, *c, *eta, *a, *delta)?;
                    let r = bcdelta_verify(&f, params, *lattice)?;
                    passed &= r.verified;
                    box_check = Some(json!({ "params": params, "result": r }));
                }
            } else if c.is_some() {
                return Err(Error::InvalidParameter("--c needs the Bloch bound --b".into()));
            }
            Outcome::json(
                json!({ "seminorm": rep, "bloch_norm": norm, "second_derivative": second, "bcdelta": box_check }),
                passed,
            )
        }
        Command::Diagnose { b0_eps, b0w_eps, measure } => {
            let grid = grid(g)?;
            let f = spec(g)?;
            let d =
                diagnose_symbol(&f, &grid, Thresholds { b0_eps: *b0_eps, b0w_eps: *b0w_eps, measure: *measure }, &[])?;
            if g.csv {
                return Ok(Outcome { output: Output::Csv(d.little_bloch_profile.to_csv()), passed: true });
            }
            Outcome::json(d, true)
        }
        Command::LpCheck { corpus, all_pairs, tail_rho, theta } => {
            let grid = grid(g)?;
            if let Some(rho) = tail_rho {
                let f = spec(g)?;
                let mode = theta.map_or(TailMode::SupOverGrid, TailMode::Ray);
                let r = lp_tail_check(&f, finite_p(pq)?, *rho, mode, &grid)?;
                return Outcome::json(json!({ "mode": mode, "rho": rho, "report": r }), r.holds);
            }
            match corpus {
                Some(n) => {
                    let funcs = random_polynomials(*n, g.seed);
                    let pairs = if *all_pairs { crate::littlewood_paley::default_pairs() } else { vec![pq] };
                    let s = lp_corpus(&funcs, &pairs, &grid)?;
                    let passed = s.failures == 0;
                    Outcome::json(s, passed)
                }
                None => {
                    let r = lp_check(&spec(g)?, pq, &grid)?;
                    Outcome::json(r, r.holds)
                }
            }
        }
        Command::Converse { corpus } => {
            let grid = grid(g)?;
            match corpus {
                Some(n) => {
                    Outcome::json(converse_corpus(&random_polynomials(*n, g.seed), pq, &grid, g.experimental)?, true)
                }
                None => Outcome::json(converse_ratio(&spec(g)?, pq, &grid, g.experimental)?, true),
            }
        }
        Command::Lacunary { truncate } => {
            let grid = grid(g)?;
            let FunctionSpec::Lacunary(lac) = spec(g)? else {
                return Err(Error::InvalidSpec("lacunary needs a spec of kind \"lacunary\"".into()));
            };
            Outcome::json(lacunary_equiv(lac.exponents(), lac.coeffs(), pq, &grid, *truncate)?, true)
        }
        Command::Luecking { action: LueckingAction::Dump { depth } } => {
            if *depth == 0 || *depth > 20 {
                return Err(Error::InvalidParameter(format!("dump depth {depth} must be in 1..=20")));
            }
            Ok(Outcome { output: Output::Csv(dump_csv(*depth)), passed: true })
        }
        Command::Maximal { operator, depth, corpus } => {
            let grid = grid(g)?;
            let funcs = random_polynomials(*corpus, g.seed);
            let e = maximal_bound_experiment(&funcs, *operator, pq, &grid, *depth, g.experimental)?;
            let passed = e.sup_ratio.is_finite();
            Outcome::json(e, passed)
        }
        Command::Extremal { action } => extremal(g, pq, action),
        Command::Corpus { size } => {
            let funcs = random_polynomials(*size, g.seed);
            let specs: Vec<Value> =
                funcs.iter().map(|f| serde_json::from_str(&f.to_json())).collect::<std::result::Result<_, _>>()?;
            Outcome::json(json!({ "size": size, "functions": specs }), true)
        }
    }
}

fn extremal(g: &GlobalArgs, pq: PQPair, action: &ExtremalAction) -> Result<Outcome> {
    match action {
        ExtremalAction::ClaimCheck => {
            let r = claim_check(&default_claim_eps(), &default_claim_offsets())?;
            let on_axis: Vec<Value> = default_claim_eps()
                .into_iter()
                .map(|eps| {
                    let v = uk_phi(UkParams::new(eps, 0.0)?, 0.0)?;
                    let exact = uk_phi_on_axis(eps);
                    Ok(json!({ "eps": eps, "phi": v, "closed_form": exact, "error": (v - exact).abs() }))
                })
                .collect::<Result<_>>()?;
            let axis_ok = on_axis.iter().all(|v| v["error"].as_f64().unwrap_or(f64::INFINITY) <= 1e-10);
            let passed = r.holds && axis_ok;
            Outcome::json(json!({ "claim": r, "on_axis": on_axis, "holds": passed }), passed)
        }
        ExtremalAction::L1Copy { beta, n, extract } => {
            let grid = grid(g)?;
            let params = L1CopyParams::new(*beta, *n)?;
            let r = l1_copy_integral(params, &grid)?;
            let error = (r.quadrature - r.closed_form).abs();
            let mut passed = error <= g.tolerance;
            let extraction = match extract {
                Some(k) => {
                    let e = l1_copy_extraction(*beta, *k, 16)?;
                    passed &= e.verified;
                    Some(e)
                }
                None => None,
            };
            Outcome::json(
                json!({ "beta": beta, "n": n, "closed_form": r.closed_form, "quadrature": r.quadrature,
                        "error": error, "holds": error <= g.tolerance, "extraction": extraction }),
                passed,
            )
        }
        ExtremalAction::C0 { terms, eps1, beta, depth } => {
            let params = C0KernelParams::from_decay(*eps1, *terms, pq.p, *beta)?;
            let r = c0_constant_checks(&params, *depth, g.grid_order)?;
            let passed = r.rho_bound_ok && r.diagonal_ok && r.offdiag_ok;
            Outcome::json(json!({ "radii": params.radii, "p": params.p, "beta": params.beta, "checks": r }), passed)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn help_and_usage_exit_codes() {
        assert_eq!(run(["rmspace", "--help"]), 0);
        assert_eq!(run(["rmspace", "extremal", "--help"]), 0);
        assert_eq!(run(["rmspace", "no-such-command"]), 1);
        assert_eq!(run(["rmspace", "norm", "--p", "0.5"]), 1);
        assert_eq!(run(["rmspace", "norm"]), 1);
    }

    #[test]
    fn hex_seeds() {
        assert_eq!(parse_hex("5EED").unwrap(), 0x5EED);
        assert_eq!(parse_hex("0x5eed").unwrap(), 0x5EED);
        assert!(parse_hex("xyz").is_err());
    }
}
