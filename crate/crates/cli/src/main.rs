use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use tabsieve::cache::{clear_cache, resolve_cache_dir, KostkaCache, CACHE_DIR_ENV};
use tabsieve::crystal::{c_op, e_op, f_op, s_op};
use tabsieve::promotion::{bender_knuth, hook_order_formula, order_report, promote, promotion_frames, render_frame};
use tabsieve::sieving::{
    principal_candidate, staircase_candidate, verify_bicsp_hook_on, verify_coxeter_csp, verify_csp_content_class,
};
use tabsieve::sweep::{run_sweep_with_cache, Check, ShapeFamily, SweepConfig};
use tabsieve::{Content, Error, Execution, LaurentPoly, Partition, Tableau, TableauSet};

#[derive(Parser)]
#[command(name = "tabsieve", version, about = "Crystal operators, promotion and cyclic sieving on tableaux")]
struct Cli {
    /// Directory of the Kostka-Foulkes cache.
    #[arg(long, global = true, env = CACHE_DIR_ENV)]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run checks over a grid of shapes and alphabet sizes, emitting JSON lines.
    Sweep(SweepArgs),
    /// Apply operators to a single tableau.
    Tableau(TableauArgs),
    /// Check cyclic sieving for the Coxeter action or a hook content class.
    Csp(CspArgs),
    /// Check bicyclic sieving on a hook.
    Bicsp(CaseArgs),
    /// Orders of promotion and of pr^n on each content class.
    Orders(CaseArgs),
    /// Inspect or clear the Kostka-Foulkes cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    /// Print the cache location, version and record count.
    Inspect,
    /// Delete the cache file.
    Clear,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    All,
    Hooks,
    TwoColumn,
}

#[derive(Args)]
struct SweepArgs {
    /// JSON sweep configuration; other flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Explicit shape such as 2,1,1,1 (repeatable).
    #[arg(long = "shape")]
    shapes: Vec<Partition>,
    /// Largest |λ| in the shape family.
    #[arg(long)]
    size_max: Option<usize>,
    /// Smallest |λ| in the shape family [default: 1].
    #[arg(long)]
    size_min: Option<usize>,
    /// Shape family used with --size-max.
    #[arg(long, value_enum, default_value = "all")]
    family: Family,
    /// A single alphabet size.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    /// Keep only cases with gcd(|λ|, n) = 1.
    #[arg(long)]
    coprime_only: bool,
    /// Comma-separated checks.
    #[arg(long, value_delimiter = ',')]
    checks: Vec<Check>,
    /// Largest tableau set enumerated per case [default: 10000000].
    #[arg(long)]
    cap: Option<usize>,
    /// Worker threads [default: all cores].
    #[arg(long)]
    jobs: Option<usize>,
    /// Run cases one after another on the calling thread.
    #[arg(long)]
    sequential: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TableauArgs {
    /// Rows separated by '/' or newlines, e.g. "1 1 2 / 3 3 4 / 4".
    tableau: String,
    /// Alphabet size.
    #[arg(long)]
    n: usize,
    /// promote, bk:i, s:i, e:i, f:i or c; applied in order (repeatable).
    #[arg(long = "op", required = true)]
    ops: Vec<String>,
    /// Print the dot-sliding frames of each promotion.
    #[arg(long)]
    frames: bool,
}

#[derive(Args)]
struct CaseArgs {
    /// Shape such as 3,1,1.
    #[arg(long)]
    shape: Partition,
    /// Alphabet size.
    #[arg(long)]
    n: usize,
    /// Largest tableau set to enumerate [default: 10000000].
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Args)]
struct CspArgs {
    #[command(flatten)]
    case: CaseArgs,
    /// principal, staircase, or an explicit polynomial such as "1 + 2*q".
    #[arg(long, default_value = "principal")]
    poly: String,
    /// Restrict to the content class of a hook, e.g. 1,1,1,0.
    #[arg(long)]
    content: Option<String>,
    /// Verdict the exit status is measured against.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    expect: bool,
}

enum Failure {
    Usage(String),
    Unexpected,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep(args) => sweep(args, cli.cache_dir.as_deref()),
        Command::Tableau(args) => tableau(args),
        Command::Csp(args) => csp(args),
        Command::Bicsp(args) => bicsp(args, cli.cache_dir.as_deref()),
        Command::Orders(args) => orders(args),
        Command::Cache { action } => cache(action, cli.cache_dir.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Unexpected) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn print_json(value: &impl serde::Serialize) -> Outcome {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn verdict(ok: bool) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(Failure::Unexpected)
    }
}

fn open_cache(dir: Option<&Path>) -> Result<KostkaCache, Failure> {
    match resolve_cache_dir(dir) {
        Some(d) => KostkaCache::open(&d)
            .map_err(|e| Failure::Usage(format!("{e} (run `tabsieve cache clear` to reset the cache)"))),
        None => Ok(KostkaCache::in_memory()),
    }
}

fn shape_override(args: &SweepArgs) -> Option<ShapeFamily> {
    if !args.shapes.is_empty() {
        return Some(ShapeFamily::Explicit { shapes: args.shapes.clone() });
    }
    let size_max = args.size_max?;
    let size_min = args.size_min.unwrap_or(1);
    Some(match args.family {
        Family::All => ShapeFamily::All { size_min, size_max },
        Family::Hooks => ShapeFamily::Hooks { size_min, size_max },
        Family::TwoColumn => ShapeFamily::TwoColumn { size_min, size_max },
    })
}

fn build_config(args: &SweepArgs) -> Result<SweepConfig, Failure> {
    let shapes = shape_override(args);
    let mut config = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
        }
        None => {
            let family = shapes.clone().ok_or_else(|| Failure::Usage("give --config, --shape or --size-max".into()))?;
            let n_max = args.n.or(args.n_max).ok_or_else(|| Failure::Usage("give --n or --n-max".into()))?;
            SweepConfig::new(family, 1, n_max)
        }
    };
    if let Some(family) = shapes {
        config.shapes = family;
    }
    if let Some(n) = args.n {
        config.n_min = n;
        config.n_max = n;
    }
    if let Some(n) = args.n_min {
        config.n_min = n;
    }
    if let Some(n) = args.n_max {
        config.n_max = n;
    }
    config.coprime_only |= args.coprime_only;
    if !args.checks.is_empty() {
        config.checks = args.checks.clone();
    }
    if let Some(cap) = args.cap {
        config.cap = cap;
    }
    if args.jobs.is_some() {
        config.jobs = args.jobs;
    }
    if args.sequential {
        config.execution = Some(Execution::Sequential);
    }
    config.validate()?;
    Ok(config)
}

fn sweep(args: SweepArgs, cache_dir: Option<&Path>) -> Outcome {
    let config = build_config(&args)?;
    let cache = open_cache(cache_dir)?;
    let report = run_sweep_with_cache(&config, &cache)?;
    let text = report.to_jsonl()?;
    match &args.out {
        Some(path) => fs::write(path, &text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    let s = &report.summary;
    eprintln!(
        "{} cases, {} checks run: {} true, {} false, {} hypothesis not met, {} errors, {} unexpected",
        s.cases, s.checks_run, s.verdicts_true, s.verdicts_false, s.hypothesis_not_met, s.errors, s.unexpected
    );
    verdict(report.all_as_expected())
}

fn parse_index(op: &str, arg: Option<&str>, lo: usize, hi: usize) -> Result<usize, Failure> {
    let i: usize = arg
        .ok_or_else(|| Failure::Usage(format!("operator {op} needs an index, e.g. {op}:1")))?
        .parse()
        .map_err(|_| Failure::Usage(format!("bad index in {op}")))?;
    if i < lo || i > hi {
        return Err(Error::IndexOutOfRange { index: i, max: hi }.into());
    }
    Ok(i)
}

fn tableau(args: TableauArgs) -> Outcome {
    let mut t = Tableau::parse_compact(&args.tableau, args.n)?;
    let n = args.n;
    for spec in &args.ops {
        let (name, index) = match spec.split_once(':') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (spec.trim(), None),
        };
        let next = match name {
            "promote" | "pr" => {
                if args.frames {
                    for frame in promotion_frames(&t) {
                        println!("{}\n", render_frame(&frame));
                    }
                }
                Some(promote(&t))
            }
            "c" => Some(c_op(&t)),
            "bk" => Some(bender_knuth(&t, parse_index(spec, index, 1, n.saturating_sub(1))?)),
            "s" => Some(s_op(&t, parse_index(spec, index, 1, n.saturating_sub(1))?)),
            "e" => e_op(&t, parse_index(spec, index, 1, n.saturating_sub(1))?),
            "f" => f_op(&t, parse_index(spec, index, 1, n.saturating_sub(1))?),
            _ => return Err(Failure::Usage(format!("unknown operator {spec:?}"))),
        };
        match next {
            Some(u) => t = u,
            None => {
                // the crystal's null element
                println!("0");
                return Ok(());
            }
        }
    }
    println!("{t}");
    Ok(())
}

fn carrier(case: &CaseArgs) -> Result<TableauSet, Failure> {
    Ok(TableauSet::with_options(&case.shape, case.n, case.cap.unwrap_or(tabsieve::DEFAULT_CAP), Execution::default())?)
}

fn parse_content(text: &str, n: usize) -> Result<Content, Failure> {
    let values = text
        .split(',')
        .map(|v| v.trim().parse::<u32>().map_err(|_| Failure::Usage(format!("bad content {text:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if values.len() != n {
        return Err(Failure::Usage(format!("content {text:?} must have {n} entries")));
    }
    Ok(Content(values))
}

fn csp(args: CspArgs) -> Outcome {
    if let Some(content) = &args.content {
        let alpha = parse_content(content, args.case.n)?;
        let r = verify_csp_content_class(&args.case.shape, args.case.n, &alpha)?;
        print_json(&r)?;
        return verdict(r.order_matches && r.csp.routes_agree() && r.csp.verdict == args.expect);
    }
    let set = carrier(&args.case)?;
    let f = match args.poly.as_str() {
        "principal" => principal_candidate(&set),
        "staircase" => staircase_candidate(&set),
        text => text.parse::<LaurentPoly>()?,
    };
    let r = verify_coxeter_csp(&set, &f)?;
    print_json(&json!({ "shape": args.case.shape, "n": args.case.n, "candidate": f, "report": r }))?;
    verdict(r.routes_agree() && r.verdict == args.expect)
}

fn bicsp(args: CaseArgs, cache_dir: Option<&Path>) -> Outcome {
    let cache = open_cache(cache_dir)?;
    let set = carrier(&args)?;
    let r = verify_bicsp_hook_on(&set, |l, m| cache.kostka_foulkes(l, m))?;
    print_json(&r)?;
    verdict(r.verdict && r.t_one_matches && r.off_identity_rows_vanish && r.generators_commute && r.orbit_sizes_match)
}

fn orders(args: CaseArgs) -> Outcome {
    let set = carrier(&args)?;
    let r = order_report(&set)?;
    let hook_formula =
        args.shape.hook_leg().filter(|&m| args.n > m).and_then(|m| hook_order_formula(args.shape.size(), m, args.n));
    print_json(&json!({ "shape": args.shape, "n": args.n, "orders": r, "hook_formula": hook_formula }))
}

fn cache(action: CacheAction, dir: Option<&Path>) -> Outcome {
    let dir = resolve_cache_dir(dir)
        .ok_or_else(|| Failure::Usage(format!("no cache directory; set --cache-dir or {CACHE_DIR_ENV}")))?;
    match action {
        CacheAction::Inspect => print_json(&KostkaCache::open(&dir)?.stats()?),
        CacheAction::Clear => {
            let removed = clear_cache(&dir)?;
            print_json(&json!({ "path": dir, "removed": removed }))
        }
    }
}
