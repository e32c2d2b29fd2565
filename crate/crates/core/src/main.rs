//! Command-line surface: classification, nearly-parallel solving, parameter
//! sweeps, Yang-Mills landscape grids and the reproduction suite.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 solver non-convergence.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use g2aw::connections::{self, Axis, ClassificationReport};
use g2aw::fmt::fmt_g9;
use g2aw::g2::G2Params;
use g2aw::np::{self, NpError};
use g2aw::topology;
use g2aw::verify::{self, VerifyStatus};
use g2aw::ym::{self, CoeffSlot};

#[derive(Parser)]
#[command(name = "g2aw", version, about = "Invariant gauge theory on Aloff-Wallach spaces")]
struct Cli {
    /// cap worker threads for sweeps and grids (default: machine parallelism)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify invariant instantons on one bundle for a fixed structure
    Classify(ClassifyArgs),
    /// Solve the nearly-parallel system on X_{k,l}
    NpSolve(NpSolveArgs),
    /// Sweep one structure parameter and emit the branch table as CSV
    Sweep(SweepArgs),
    /// Yang-Mills energy grid over a two-coefficient slice
    Landscape(LandscapeArgs),
    /// Run the reproduction suite
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Gauge {
    U1,
    So3,
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    k: i64,
    #[arg(long, allow_hyphen_values = true)]
    l: i64,
    #[arg(short = 'A', long = "A", allow_hyphen_values = true)]
    a: f64,
    #[arg(short = 'B', long = "B", allow_hyphen_values = true)]
    b: f64,
    #[arg(short = 'C', long = "C", allow_hyphen_values = true)]
    c: f64,
    #[arg(short = 'D', long = "D", allow_hyphen_values = true)]
    d: f64,
}

impl ParamArgs {
    fn build(&self) -> Result<G2Params, String> {
        G2Params::new(self.k, self.l, self.a, self.b, self.c, self.d).map_err(|e| e.to_string())
    }
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// bundle degree; omit to classify all three weight bundles
    #[arg(long, allow_hyphen_values = true)]
    n: Option<i64>,
    #[arg(long, value_enum, default_value = "so3")]
    gauge: Gauge,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct NpSolveArgs {
    #[arg(long, allow_hyphen_values = true)]
    k: i64,
    #[arg(long, allow_hyphen_values = true)]
    l: i64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    lambda: f64,
    /// multi-start grid density per axis
    #[arg(long, default_value_t = 8)]
    starts: usize,
    /// write solutions as CSV to this path
    #[arg(long)]
    csv: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, allow_hyphen_values = true)]
    k: i64,
    #[arg(long, allow_hyphen_values = true)]
    l: i64,
    #[arg(long, allow_hyphen_values = true)]
    n: i64,
    /// which of A, B, C, D varies
    #[arg(long)]
    vary: String,
    #[arg(long, allow_hyphen_values = true)]
    from: f64,
    #[arg(long, allow_hyphen_values = true)]
    to: f64,
    #[arg(long)]
    steps: usize,
    /// fixed values for the other axes, e.g. B=1,C=1,D=1
    #[arg(long)]
    fix: String,
    /// output CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct LandscapeArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, allow_hyphen_values = true)]
    n: i64,
    #[arg(long, default_value_t = -1.2, allow_hyphen_values = true)]
    a_min: f64,
    #[arg(long, default_value_t = 1.2, allow_hyphen_values = true)]
    a_max: f64,
    #[arg(long, default_value_t = -1.2, allow_hyphen_values = true)]
    b_min: f64,
    #[arg(long, default_value_t = 1.2, allow_hyphen_values = true)]
    b_max: f64,
    #[arg(long, default_value_t = 200)]
    res: usize,
    /// grid CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<String>,
    /// write the critical-point list as JSON to this path
    #[arg(long)]
    critical_json: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// keep only claim ids with this prefix
    #[arg(long)]
    filter: Option<String>,
    #[arg(long)]
    json: bool,
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn print_report(report: &ClassificationReport, gauge: Gauge, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(report).expect("serializable"));
        return;
    }
    println!(
        "X({},{})  A={} B={} C={} D={}  bundle n={}",
        report.params.k,
        report.params.l,
        fmt_g9(report.params.a),
        fmt_g9(report.params.b),
        fmt_g9(report.params.c),
        fmt_g9(report.params.d),
        report.n
    );
    println!(
        "Gamma={}  Delta={}  sigma1={}  sigma2={}  sigma3={}",
        fmt_g9(report.gamma),
        fmt_g9(report.delta),
        fmt_g9(report.sigma1),
        fmt_g9(report.sigma2),
        fmt_g9(report.sigma3)
    );
    let mut shown = 0;
    for sol in &report.solutions {
        if gauge == Gauge::U1 && !sol.reducible {
            continue;
        }
        shown += 1;
        let kind = if sol.reducible { "reducible" } else { "irreducible" };
        let family = if sol.family_dim > 0 {
            format!(
                "  ({}-parameter family in {:?})",
                sol.family_dim, sol.free_directions
            )
        } else {
            String::new()
        };
        println!(
            "  [{kind}] b={} a1={} a2={} a3={} a1_extra={} a5={}  residual={}{}",
            fmt_g9(sol.conn.b),
            fmt_g9(sol.conn.a1),
            fmt_g9(sol.conn.a2),
            fmt_g9(sol.conn.a3),
            fmt_g9(sol.conn.a1_extra),
            fmt_g9(sol.conn.a5),
            fmt_g9(sol.residual),
            family
        );
    }
    if shown == 0 {
        println!("  no invariant instantons on this bundle");
    }
    for note in &report.notes {
        println!("  note: {note}");
    }
}

fn cmd_classify(args: &ClassifyArgs) -> ExitCode {
    let p = match args.params.build() {
        Ok(p) => p,
        Err(e) => return usage_error(&e),
    };
    let bundles: Vec<i64> = match args.n {
        Some(n) => vec![n],
        None => {
            let spec = p.frame();
            let mut ws = spec.weights().to_vec();
            ws.dedup();
            ws
        }
    };
    for n in bundles {
        let report = match args.gauge {
            Gauge::U1 => connections::classify_abelian(&p, n),
            Gauge::So3 => connections::classify_so3(&p, n),
        };
        match report {
            Ok(report) => print_report(&report, args.gauge, args.json),
            Err(e) => return usage_error(&e.to_string()),
        }
    }
    ExitCode::SUCCESS
}

fn cmd_np_solve(args: &NpSolveArgs) -> ExitCode {
    let sols = match np::solve_np(args.k, args.l, args.lambda, args.starts) {
        Ok(s) => s,
        Err(NpError::NoConvergence { k, l, expected, partial }) => {
            eprintln!(
                "error: expected {expected} branches on X({k},{l}), found {}",
                partial.len()
            );
            return ExitCode::from(3);
        }
        Err(e) => return usage_error(&e.to_string()),
    };
    if let Some(path) = &args.csv {
        let file = match File::create(path) {
            Ok(f) => f,
            Err(e) => return usage_error(&format!("cannot write {path}: {e}")),
        };
        let mut w = BufWriter::new(file);
        let _ = writeln!(w, "k,l,branch,A,B,C,D,lambda,residual");
        for s in &sols {
            let _ = writeln!(
                w,
                "{},{},{},{},{},{},{},{},{}",
                s.params.k,
                s.params.l,
                match s.branch {
                    np::NpBranch::Plus => "plus",
                    np::NpBranch::Minus => "minus",
                },
                fmt_g9(s.params.a),
                fmt_g9(s.params.b),
                fmt_g9(s.params.c),
                fmt_g9(s.params.d),
                fmt_g9(s.lambda),
                fmt_g9(s.residual)
            );
        }
    }
    if args.json {
        println!("{}", serde_json::to_string_pretty(&sols).expect("serializable"));
        return ExitCode::SUCCESS;
    }
    for s in &sols {
        let (s1, s2, s3) = connections::sigmas(&s.params);
        println!(
            "branch {}  A={} B={} C={} D={}  residual={}",
            match s.branch {
                np::NpBranch::Plus => "phi+",
                np::NpBranch::Minus => "phi-",
            },
            fmt_g9(s.params.a),
            fmt_g9(s.params.b),
            fmt_g9(s.params.c),
            fmt_g9(s.params.d),
            fmt_g9(s.residual)
        );
        println!(
            "  sigma1={} sigma2={} sigma3={}",
            fmt_g9(s1),
            fmt_g9(s2),
            fmt_g9(s3)
        );
        let spec = s.params.frame();
        for (which, sig, n) in [
            (1, s1, spec.k - spec.l),
            (2, s2, spec.l - spec.m),
            (3, s3, spec.m - spec.k),
        ] {
            if sig > 0.0 {
                if let Ok(c) = topology::char_classes(s.params.k, s.params.l, n) {
                    println!(
                        "  sigma{which} > 0: irreducible instantons on P_{n}  \
                         (w2 = {} mod 2, p1 = {} mod {})",
                        c.w2, c.p1, c.modulus
                    );
                }
            }
        }
    }
    ExitCode::SUCCESS
}

fn parse_fixed(fix: &str, vary: Axis) -> Result<[(Axis, f64); 3], String> {
    let mut out: Vec<(Axis, f64)> = Vec::new();
    for part in fix.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| format!("malformed --fix entry '{part}' (want NAME=VALUE)"))?;
        let axis =
            Axis::parse(name.trim()).ok_or_else(|| format!("unknown axis '{name}' in --fix"))?;
        if axis == vary {
            return Err(format!("axis {name} both varies and is fixed"));
        }
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| format!("cannot parse value in '{part}'"))?;
        out.push((axis, value));
    }
    let arr: [(Axis, f64); 3] = out.try_into().map_err(|v: Vec<_>| {
        format!("--fix must pin exactly the 3 non-varying axes, got {}", v.len())
    })?;
    Ok(arr)
}

fn cmd_sweep(args: &SweepArgs) -> ExitCode {
    let Some(axis) = Axis::parse(&args.vary) else {
        return usage_error("--vary must be one of A, B, C, D");
    };
    let fixed = match parse_fixed(&args.fix, axis) {
        Ok(f) => f,
        Err(e) => return usage_error(&e),
    };
    // seed the varying axis with a placeholder; sweep overwrites it per row
    let mut seed = [1.0f64; 4];
    for (ax, v) in fixed {
        match ax {
            Axis::A => seed[0] = v,
            Axis::B => seed[1] = v,
            Axis::C => seed[2] = v,
            Axis::D => seed[3] = v,
        }
    }
    let base = match G2Params::new(args.k, args.l, seed[0], seed[1], seed[2], seed[3]) {
        Ok(p) => p,
        Err(e) => return usage_error(&e.to_string()),
    };
    let table = match connections::sweep(&base, args.n, axis, args.from, args.to, args.steps) {
        Ok(t) => t,
        Err(e) => return usage_error(&e.to_string()),
    };
    let write_rows = |w: &mut dyn Write| {
        let _ = writeln!(
            w,
            "param_value,sigma1,sigma2,sigma3,a_plus,a_minus,b_reducible,def_det"
        );
        for r in &table.rows {
            let _ = writeln!(
                w,
                "{},{},{},{},{},{},{},{}",
                fmt_g9(r.param_value),
                fmt_g9(r.sigma1),
                fmt_g9(r.sigma2),
                fmt_g9(r.sigma3),
                fmt_g9(r.a_plus),
                fmt_g9(r.a_minus),
                fmt_g9(r.b_reducible),
                fmt_g9(r.def_det)
            );
        }
    };
    match &args.out {
        Some(path) => match File::create(path) {
            Ok(f) => {
                let mut w = BufWriter::new(f);
                write_rows(&mut w);
            }
            Err(e) => return usage_error(&format!("cannot write {path}: {e}")),
        },
        None => write_rows(&mut std::io::stdout()),
    }
    ExitCode::SUCCESS
}

fn cmd_landscape(args: &LandscapeArgs) -> ExitCode {
    let p = match args.params.build() {
        Ok(p) => p,
        Err(e) => return usage_error(&e),
    };
    let template = match connections::ansatz(p.k, p.l, args.n) {
        Ok(t) => t,
        Err(e) => return usage_error(&e.to_string()),
    };
    let Some(a_slot) = ym::active_slot(template.case) else {
        return usage_error(
            "every invariant connection on this bundle is reducible; \
             the landscape needs a weight-matching bundle",
        );
    };
    let grid = match ym::landscape_grid(
        &p,
        args.n,
        (a_slot, CoeffSlot::B),
        (args.a_min, args.a_max),
        (args.b_min, args.b_max),
        (args.res, args.res),
    ) {
        Ok(g) => g,
        Err(e) => return usage_error(&e.to_string()),
    };
    let write_rows = |w: &mut dyn Write| {
        let _ = writeln!(w, "a,b,energy");
        for (a, b, e) in &grid.rows {
            let _ = writeln!(w, "{},{},{}", fmt_g9(*a), fmt_g9(*b), fmt_g9(*e));
        }
    };
    match &args.out {
        Some(path) => match File::create(path) {
            Ok(f) => {
                let mut w = BufWriter::new(f);
                write_rows(&mut w);
            }
            Err(e) => return usage_error(&format!("cannot write {path}: {e}")),
        },
        None => write_rows(&mut std::io::stdout()),
    }
    if let Some(path) = &args.critical_json {
        match File::create(path) {
            Ok(f) => {
                let mut w = BufWriter::new(f);
                let _ = write!(
                    w,
                    "{}",
                    serde_json::to_string_pretty(&grid.critical_points).expect("serializable")
                );
            }
            Err(e) => return usage_error(&format!("cannot write {path}: {e}")),
        }
    } else {
        for c in &grid.critical_points {
            eprintln!(
                "critical point a={} b={} energy={} index={} instanton={}",
                fmt_g9(c.a),
                fmt_g9(c.b),
                fmt_g9(c.energy),
                c.index,
                c.is_instanton
            );
        }
    }
    ExitCode::SUCCESS
}

fn cmd_verify(args: &VerifyArgs) -> ExitCode {
    let records = verify::run_verify(args.filter.as_deref());
    if args.json {
        println!("{}", serde_json::to_string_pretty(&records).expect("serializable"));
    } else {
        let mut flagged = Vec::new();
        for r in &records {
            let status = match r.status {
                VerifyStatus::Pass => "pass",
                VerifyStatus::Fail => "FAIL",
                VerifyStatus::Flagged => "flagged",
            };
            println!(
                "{status:<8} {:<48} expected={:<15} computed={:<15} tol={}",
                r.claim_id,
                fmt_g9(r.expected),
                fmt_g9(r.computed),
                fmt_g9(r.tolerance)
            );
            if r.status == VerifyStatus::Flagged {
                flagged.push(r);
            }
        }
        if !flagged.is_empty() {
            println!("\ndocumented discrepancies ({}):", flagged.len());
            for r in flagged {
                println!("  {}: {}", r.claim_id, r.note.as_deref().unwrap_or(""));
            }
        }
        let fails = records
            .iter()
            .filter(|r| r.status == VerifyStatus::Fail)
            .count();
        println!(
            "\n{} records: {} pass, {} flagged, {} fail",
            records.len(),
            records
                .iter()
                .filter(|r| r.status == VerifyStatus::Pass)
                .count(),
            records
                .iter()
                .filter(|r| r.status == VerifyStatus::Flagged)
                .count(),
            fails
        );
    }
    if verify::all_clear(&records) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global();
    }
    match &cli.command {
        Command::Classify(args) => cmd_classify(args),
        Command::NpSolve(args) => cmd_np_solve(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Landscape(args) => cmd_landscape(args),
        Command::Verify(args) => cmd_verify(args),
    }
}
