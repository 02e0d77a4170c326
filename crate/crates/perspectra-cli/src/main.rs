//! perspectra: exact-arithmetic workbench for common complements of
//! isomorphic direct summands.
//!
//! Exit codes: 0 success, 1 parse error, 2 precondition failure, 3 cap
//! refusal.

mod literal;

use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use literal::GroupLiteral;
use perspectra::localized::{LocalizedModule, LocalSubmodule};
use perspectra::padic::PadicModule;
use perspectra::pgroup::ComplementOptions;
use perspectra::qspace::{parse_rat_rows, RationalSubspace};
use perspectra::rank1::{Bounds, RationalGroupType};
use perspectra::sweep::SweepMode;
use perspectra::{Caps, Error};

#[derive(Parser)]
#[command(name = "perspectra", version, about = "workbench for common complements of isomorphic direct summands")]
struct Cli {
    /// Seed for randomized test-instance generation (never affects
    /// algorithm behavior).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Append one JSON run record per result to this file.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    /// Print the full run record as JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Finite abelian group operations.
    Group {
        #[command(subcommand)]
        cmd: GroupCmd,
    },
    /// Sweep all abelian groups up to an order bound.
    Verify(VerifyArgs),
    /// Rank-1 torsion-free types: decide perspectivity of G+G.
    Rank1 {
        #[command(subcommand)]
        cmd: Rank1Cmd,
    },
    /// Finite rings: the idempotent lifting condition.
    Ring {
        #[command(subcommand)]
        cmd: RingCmd,
    },
    /// Rational vector spaces.
    Vecspace {
        #[command(subcommand)]
        cmd: VecspaceCmd,
    },
    /// Localized and truncated p-adic modules.
    Localized {
        #[command(subcommand)]
        cmd: LocalizedCmd,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Construct a common complement of two isomorphic summands.
    Complement {
        group: String,
        a: String,
        c: String,
        /// Emit the recursion trace.
        #[arg(long)]
        trace: bool,
        /// Disable the brute-force safety net.
        #[arg(long)]
        no_fallback: bool,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 16)]
    max_order: i64,
    /// Skip the brute-force oracle and run the constructive pipeline only.
    #[arg(long)]
    constructive_only: bool,
}

#[derive(Subcommand)]
enum Rank1Cmd {
    /// Decide whether G+G is perspective for a rank-1 type.
    Check {
        r#type: String,
        /// Bounds as "param,witness,exponent".
        #[arg(long)]
        bounds: Option<String>,
        /// Primes asserted non-divisible; checked against the type.
        #[arg(long, value_delimiter = ',')]
        not_div: Vec<i64>,
    },
}

#[derive(Subcommand)]
enum RingCmd {
    /// Check the idempotent condition on a finite ring.
    Check { ring: String },
}

#[derive(Subcommand)]
enum VecspaceCmd {
    /// Common complement of two subspaces of Q^dim.
    Complement { dim: usize, a: String, c: String },
}

#[derive(Subcommand)]
enum LocalizedCmd {
    /// Common complement of two pure submodules ("Qp(5)^3") or summands at
    /// finite p-adic precision ("Zp(3,N=4)^2").
    Complement { module: String, a: String, c: String },
    /// Empirical rank-2 reduction report over random rank-1 summand pairs.
    Rank2Check {
        module: String,
        #[arg(long, default_value_t = 100)]
        samples: u32,
    },
}

#[derive(Serialize)]
struct RunRecord {
    command: Vec<String>,
    verdict: serde_json::Value,
    elapsed_ms: u64,
    version: &'static str,
    seed: u64,
}

fn caps_from_env() -> Result<Caps, Error> {
    match std::env::var("PERSPECTRA_CAPS") {
        Ok(spec) => Caps::default().with_overrides(&spec),
        Err(_) => Ok(Caps::default()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let argv: Vec<String> = std::env::args().collect();
    let caps = match caps_from_env() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(&cli, &caps) {
        Ok(verdict) => {
            let record = RunRecord {
                command: argv,
                verdict,
                elapsed_ms: started.elapsed().as_millis() as u64,
                version: env!("CARGO_PKG_VERSION"),
                seed: cli.seed,
            };
            if cli.json {
                println!("{}", serde_json::to_string(&record).expect("serializable record"));
            }
            if let Some(path) = &cli.out {
                if let Err(e) = append_record(path, &record) {
                    eprintln!("error: cannot write results file: {e}");
                    return ExitCode::from(2);
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn append_record(path: &std::path::Path, record: &RunRecord) -> std::io::Result<()> {
    let mut file = std::fs::OpenOptions::new().create(true).append(true).open(path)?;
    writeln!(file, "{}", serde_json::to_string(record).expect("serializable record"))
}

fn run(cli: &Cli, caps: &Caps) -> Result<serde_json::Value, Error> {
    match &cli.command {
        Command::Group { cmd } => match cmd {
            GroupCmd::Complement { group, a, c, trace, no_fallback } => {
                cmd_group_complement(group, a, c, *trace, *no_fallback, caps, cli.json)
            }
        },
        Command::Verify(args) => cmd_verify(args, caps, cli),
        Command::Rank1 { cmd } => match cmd {
            Rank1Cmd::Check { r#type, bounds, not_div } => {
                cmd_rank1_check(r#type, bounds.as_deref(), not_div, cli.json)
            }
        },
        Command::Ring { cmd } => match cmd {
            RingCmd::Check { ring } => cmd_ring_check(ring, caps, cli.json),
        },
        Command::Vecspace { cmd } => match cmd {
            VecspaceCmd::Complement { dim, a, c } => cmd_vecspace(*dim, a, c, cli.json),
        },
        Command::Localized { cmd } => match cmd {
            LocalizedCmd::Complement { module, a, c } => cmd_localized(module, a, c, cli.json),
            LocalizedCmd::Rank2Check { module, samples } => cmd_rank2_check(module, *samples, cli.seed, cli.json),
        },
    }
}

fn cmd_group_complement(
    group_s: &str,
    a_s: &str,
    c_s: &str,
    trace: bool,
    no_fallback: bool,
    caps: &Caps,
    json: bool,
) -> Result<serde_json::Value, Error> {
    let lit = GroupLiteral::parse(group_s)?;
    let a = lit.parse_subgroup(a_s)?;
    let c = lit.parse_subgroup(c_s)?;
    let opts = ComplementOptions { trace, fallback: !no_fallback, assume_preconditions: false, caps: *caps };
    let out = perspectra::pgroup::finite_common_complement(&lit.group, &a, &c, &opts)?;
    let u = lit.format_subgroup(&out.complement)?;
    if !json {
        println!("U = {u}");
        if trace {
            for step in &out.trace.steps {
                println!(
                    "  [{}] depth {} in {} (order {}): {}",
                    step.case, step.depth, step.group, step.order, step.detail
                );
            }
            if out.trace.used_fallback {
                println!("  (brute-force fallback used)");
            }
        }
    }
    Ok(serde_json::json!({
        "group": group_s.trim(),
        "a": a_s.trim(),
        "c": c_s.trim(),
        "complement": u,
        "used_fallback": out.trace.used_fallback,
        "trace": if trace { Some(&out.trace) } else { None },
    }))
}

fn cmd_verify(args: &VerifyArgs, caps: &Caps, cli: &Cli) -> Result<serde_json::Value, Error> {
    let mode = if args.constructive_only { SweepMode::Constructive } else { SweepMode::WithOracle };
    let groups = perspectra::sweep::groups_up_to(args.max_order)?;
    if args.max_order > caps.perspectivity_sweep {
        return Err(Error::CapExceeded {
            what: "perspectivity sweep max order",
            cap: caps.perspectivity_sweep,
            actual: args.max_order,
        });
    }
    let argv: Vec<String> = std::env::args().collect();
    let mut records = Vec::new();
    let mut anomalies = 0u64;
    for g in &groups {
        let group_started = Instant::now();
        let rec = perspectra::sweep::verify_group(g, mode, caps)?;
        if !rec.clean() {
            anomalies += 1;
        }
        if let Some(path) = &cli.out {
            let wrapped = RunRecord {
                command: argv.clone(),
                verdict: serde_json::to_value(&rec).expect("serializable record"),
                elapsed_ms: group_started.elapsed().as_millis() as u64,
                version: env!("CARGO_PKG_VERSION"),
                seed: cli.seed,
            };
            let line = serde_json::to_string(&wrapped).expect("serializable record");
            let mut file = std::fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(|e| Error::precondition(format!("cannot open results file: {e}")))?;
            writeln!(file, "{line}").map_err(|e| Error::precondition(format!("write failed: {e}")))?;
        }
        records.push(rec);
    }
    let summary = serde_json::json!({
        "max_order": args.max_order,
        "mode": mode,
        "groups_checked": records.len(),
        "anomalies": anomalies,
        "pairs_total": records.iter().map(|r| r.pairs_checked).sum::<u64>(),
        "fallbacks_total": records.iter().map(|r| r.fallbacks).sum::<u64>(),
    });
    if !cli.json {
        println!(
            "checked {} groups of order <= {}: {} anomalies, {} pairs, {} fallbacks",
            records.len(),
            args.max_order,
            anomalies,
            summary["pairs_total"],
            summary["fallbacks_total"]
        );
    }
    Ok(summary)
}

fn cmd_rank1_check(
    type_s: &str,
    bounds_s: Option<&str>,
    not_div: &[i64],
    json: bool,
) -> Result<serde_json::Value, Error> {
    let ty = RationalGroupType::from_str(type_s)?;
    for &p in not_div {
        if !perspectra::arith::is_prime(p) {
            return Err(Error::parse(0, format!("--not-div entry {p} is not prime")));
        }
        if ty.divisible_at(p) {
            return Err(Error::precondition(format!("precondition {p}G != G fails for this type")));
        }
    }
    let bounds = match bounds_s {
        Some(s) => {
            let parts: Vec<&str> = s.split(',').collect();
            if parts.len() != 3 {
                return Err(Error::parse(0, "expected --bounds param,witness,exponent"));
            }
            Bounds {
                param_bound: parts[0].trim().parse().map_err(|_| Error::parse(0, "bad param bound"))?,
                witness_bound: parts[1].trim().parse().map_err(|_| Error::parse(0, "bad witness bound"))?,
                exponent_bound: parts[2].trim().parse().map_err(|_| Error::parse(0, "bad exponent bound"))?,
            }
        }
        None => Bounds::default(),
    };
    let verdict = perspectra::rank1::gplusg_decide(&ty, &bounds)?;
    if !json {
        match &verdict {
            perspectra::rank1::GPlusGVerdict::Perspective { strategy } => {
                println!("Perspective: {strategy}");
            }
            perspectra::rank1::GPlusGVerdict::NotPerspective { certificate } => {
                println!(
                    "NotPerspective: quadruple (m,n,k,t) = {:?}",
                    certificate.quadruple
                );
            }
            perspectra::rank1::GPlusGVerdict::Unknown { quadruples_checked, .. } => {
                println!("Unknown after checking {quadruples_checked} quadruples");
            }
        }
    }
    Ok(serde_json::json!({ "type": ty.to_string(), "verdict": verdict }))
}

fn cmd_ring_check(ring_s: &str, caps: &Caps, json: bool) -> Result<serde_json::Value, Error> {
    let ring = perspectra::ring::parse_ring(ring_s, caps)?;
    let report = perspectra::ring::check_condition4(&ring, caps)?;
    if !json {
        println!("perspective={} ({} idempotents, {} elements)", report.holds, report.idempotents, report.size);
    }
    Ok(serde_json::json!({ "ring": report.ring, "perspective": report.holds, "report": report }))
}

fn cmd_vecspace(dim: usize, a_s: &str, c_s: &str, json: bool) -> Result<serde_json::Value, Error> {
    let a = RationalSubspace::from_generators(dim, parse_rat_rows(dim, a_s)?);
    let c = RationalSubspace::from_generators(dim, parse_rat_rows(dim, c_s)?);
    let h = perspectra::qspace::q_common_complement(dim, &a, &c)?;
    let out = h.to_string();
    if !json {
        println!("H = {out}");
    }
    Ok(serde_json::json!({ "dim": dim, "a": a.to_string(), "c": c.to_string(), "complement": out }))
}

enum ModuleLiteral {
    Localized(LocalizedModule),
    Padic(PadicModule),
}

fn parse_module(s: &str) -> Result<ModuleLiteral, Error> {
    let s = s.trim();
    let (head, rank_s) = s
        .rsplit_once('^')
        .ok_or_else(|| Error::parse(0, format!("expected <module>^<rank>, got {s:?}")))?;
    let rank: usize = rank_s.trim().parse().map_err(|_| Error::parse(0, format!("bad rank {rank_s:?}")))?;
    if let Some(rest) = head.trim().strip_prefix("Qp(") {
        let inner = rest.strip_suffix(')').ok_or_else(|| Error::parse(0, "unclosed Qp("))?;
        let p: i64 = inner.trim().parse().map_err(|_| Error::parse(0, format!("bad prime {inner:?}")))?;
        if !perspectra::arith::is_prime(p) {
            return Err(Error::parse(0, format!("{p} is not prime")));
        }
        return Ok(ModuleLiteral::Localized(LocalizedModule::new(p, rank)));
    }
    if let Some(rest) = head.trim().strip_prefix("Zp(") {
        let inner = rest.strip_suffix(')').ok_or_else(|| Error::parse(0, "unclosed Zp("))?;
        let (p_s, n_s) = inner
            .split_once(',')
            .ok_or_else(|| Error::parse(0, "expected Zp(p,N=..)"))?;
        let p: i64 = p_s.trim().parse().map_err(|_| Error::parse(0, format!("bad prime {p_s:?}")))?;
        let n_s = n_s.trim().strip_prefix("N=").ok_or_else(|| Error::parse(0, "expected N=<precision>"))?;
        let n: u32 = n_s.trim().parse().map_err(|_| Error::parse(0, format!("bad precision {n_s:?}")))?;
        return Ok(ModuleLiteral::Padic(PadicModule::new(p, n, rank)?));
    }
    Err(Error::parse(0, format!("unknown module literal {head:?}")))
}

fn cmd_localized(module_s: &str, a_s: &str, c_s: &str, json: bool) -> Result<serde_json::Value, Error> {
    match parse_module(module_s)? {
        ModuleLiteral::Localized(module) => {
            let a = LocalSubmodule::from_generators(&module, parse_rat_rows(module.rank, a_s)?)?;
            let c = LocalSubmodule::from_generators(&module, parse_rat_rows(module.rank, c_s)?)?;
            let u = perspectra::localized::localized_common_complement(&module, &a, &c)?;
            let out = u.to_string();
            if !json {
                println!("U = {out}");
            }
            Ok(serde_json::json!({
                "module": module.to_string(),
                "a": a.to_string(),
                "c": c.to_string(),
                "complement": out,
            }))
        }
        ModuleLiteral::Padic(module) => {
            let parse_int_rows = |s: &str| -> Result<Vec<Vec<i64>>, Error> {
                let rows = parse_rat_rows(module.rank, s)?;
                rows.into_iter()
                    .map(|row| {
                        row.into_iter()
                            .map(|x| {
                                if *x.denom() == 1 {
                                    Ok(*x.numer() as i64)
                                } else {
                                    Err(Error::parse(0, "p-adic rows take integer entries"))
                                }
                            })
                            .collect()
                    })
                    .collect()
            };
            let a_rows = parse_int_rows(a_s)?;
            let c_rows = parse_int_rows(c_s)?;
            let u = perspectra::padic::padic_common_complement(&module, &a_rows, &c_rows)?;
            let out: Vec<String> = u
                .iter()
                .map(|r| format!("({})", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
                .collect();
            let out = format!("[{}]", out.join(";"));
            if !json {
                println!("U = {out}");
            }
            Ok(serde_json::json!({
                "module": module.to_string(),
                "a": a_s.trim(),
                "c": c_s.trim(),
                "complement": out,
            }))
        }
    }
}

fn cmd_rank2_check(module_s: &str, samples: u32, seed: u64, json: bool) -> Result<serde_json::Value, Error> {
    let ModuleLiteral::Localized(module) = parse_module(module_s)? else {
        return Err(Error::precondition("rank2-check takes a Qp(..)^m module"));
    };
    let report = perspectra::localized::rank2_reduction_check(&module, samples, seed)?;
    if !json {
        println!(
            "{} samples: {} successes, {} reached rank 2",
            report.samples, report.successes, report.reached_rank2
        );
    }
    Ok(serde_json::to_value(&report).expect("serializable report"))
}
