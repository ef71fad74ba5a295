//! Command-line driver: thin wrappers around the library pipeline plus the
//! paper-verification harness. Exit codes: 0 success, 1 mathematical-domain
//! error, 2 usage or input error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use holonomy::census::{census, classify, Bounds};
use holonomy::dual::koszul_dual;
use holonomy::error::Error as MathError;
use holonomy::lie::nilpotent_quotient;
use holonomy::ncgb::presentation_basis;
use holonomy::presentation::Flavor;
use holonomy::resolution::{tor_table, tor_table_from_groebner};
use holonomy::word::DegLex;
use holonomy_cli::config::{parse_format, parse_permutation, Format, RunConfig};
use holonomy_cli::input::{dual_side, Input};
use holonomy_cli::verify;

#[derive(Parser)]
#[command(name = "holonomy", version, about = "Orlik–Solomon algebras, Koszul duals, and Tor tables of hyperplane arrangements", max_term_width = 100)]
struct Cli {
    /// Config file with `key = value` lines, merged under the flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Series / Gröbner truncation order.
    #[arg(long, global = true)]
    order: Option<usize>,
    /// Tor bounds as `i,j` (homological, internal).
    #[arg(long, global = true, value_name = "I,J")]
    tor_bounds: Option<String>,
    /// Emit JSON (shorthand for --format json).
    #[arg(long, global = true)]
    json: bool,
    /// Output format: text, json or csv.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Trailing-window width for finiteness verdicts.
    #[arg(long, global = true)]
    window: Option<usize>,
    /// Generator-order permutation for the monomial order, e.g. `2,1,3`.
    #[arg(long, global = true)]
    permutation: Option<String>,
    /// Worker threads for the census.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Directory for report files (env HOLONOMY_OUTPUT_DIR overrides the
    /// config file).
    #[arg(long, global = true)]
    output_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArg {
    /// Presentation, arrangement, or graph6 file.
    input: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Orlik–Solomon presentation, deconed quotient, and Hilbert polynomial.
    Os(InputArg),
    /// Quadratic dual presentation and its Hilbert series.
    Dual(InputArg),
    /// Truncated Gröbner basis of the dual (or of a free presentation).
    Gb(InputArg),
    /// Hilbert series of the input algebra.
    Hilbert(InputArg),
    /// Tor table of the input quotient.
    Tor(InputArg),
    /// Lower-central-series ranks of the holonomy Lie algebra.
    Lcs(InputArg),
    /// Full classification report for one graph.
    Classify(InputArg),
    /// Classify every connected graph of the given order.
    Census {
        order: usize,
    },
    /// Recompute the published values and report expected vs computed.
    VerifyPaper {
        /// Comma-separated scopes: s1..s5, all, none.
        #[arg(long, default_value = "all")]
        scope: String,
        /// Include the order-6 census and deeper rank extensions.
        #[arg(long)]
        long: bool,
        /// Include the stretch lower-central-series computation.
        #[arg(long)]
        stretch: bool,
    },
}

/// Usage problems exit with 2, mathematical-domain errors with 1.
enum CliError {
    Usage(String),
    Math(MathError),
}

impl From<MathError> for CliError {
    fn from(e: MathError) -> Self {
        match e {
            MathError::Parse { .. } | MathError::MalformedGraph6(_) => CliError::Usage(e.to_string()),
            other => CliError::Math(other),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match build_config(&cli) {
        Ok(c) => c,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };
    match run(cli.command, &config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Math(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn build_config(cli: &Cli) -> Result<RunConfig, String> {
    let defaults = RunConfig::default();
    let mut config = defaults.clone();
    if let Some(order) = cli.order {
        config.order = order;
    }
    if let Some(tb) = &cli.tor_bounds {
        let (i, j) = tb
            .split_once(',')
            .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
            .ok_or_else(|| format!("bad --tor-bounds `{tb}`, expected `i,j`"))?;
        config.tor_i = i;
        config.tor_j = j;
    }
    if let Some(w) = cli.window {
        config.window = w;
    }
    if let Some(p) = &cli.permutation {
        config.permutation =
            Some(parse_permutation(p).ok_or_else(|| format!("bad --permutation `{p}`"))?);
    }
    if let Some(w) = cli.workers {
        config.workers = w;
    }
    if cli.json {
        config.format = Format::Json;
    } else if let Some(f) = &cli.format {
        config.format = parse_format(f).ok_or_else(|| format!("bad --format `{f}`"))?;
    }
    if let Some(dir) = &cli.output_dir {
        config.output_dir = Some(dir.clone());
    } else if let Ok(dir) = std::env::var("HOLONOMY_OUTPUT_DIR") {
        config.output_dir = Some(PathBuf::from(dir));
    }
    if let Some(path) = &cli.config {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        config.merge_file(&text, &defaults)?;
    }
    config.validate()?;
    Ok(config)
}

fn load(path: &PathBuf) -> Result<Input, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    Ok(Input::parse(&text)?)
}

fn monomial_order(config: &RunConfig, num_gens: usize) -> Result<DegLex, CliError> {
    match &config.permutation {
        None => Ok(DegLex::natural(num_gens)),
        Some(p) if p.len() == num_gens => {
            let perm: Vec<usize> = p.iter().map(|&g| g as usize - 1).collect();
            Ok(DegLex::with_permutation(&perm))
        }
        Some(p) => Err(CliError::Usage(format!(
            "permutation lists {} generators, the algebra has {num_gens}",
            p.len()
        ))),
    }
}

fn census_bounds(config: &RunConfig) -> Bounds {
    let mut b = Bounds::default();
    b.series_degree = b.series_degree.min(config.order);
    b.tor_i = config.tor_i;
    b.window = config.window;
    b
}

fn run(command: Command, config: &RunConfig) -> Result<(), CliError> {
    match command {
        Command::Os(arg) => {
            let resolved = load(&arg.input)?.resolve()?;
            let poly = hilbert_polynomial(&resolved.algebra, config.order)?;
            if config.format == Format::Json {
                println!(
                    "{}",
                    serde_json::json!({
                        "os": resolved.os.as_ref().map(|p| p.to_string()),
                        "deconed": resolved.algebra.to_string(),
                        "split_factors": resolved.split_factors,
                        "hilbert": poly.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    })
                );
            } else {
                if let Some(os) = &resolved.os {
                    println!("arrangement algebra:\n{os}");
                    println!("split exterior factors: {}", resolved.split_factors + 1);
                }
                println!("deconed quotient:\n{}", resolved.algebra);
                println!("R(z) = {}", format!("{poly}").replace('t', "z"));
            }
            Ok(())
        }
        Command::Dual(arg) => {
            let resolved = load(&arg.input)?.resolve()?;
            let dual = koszul_dual(&resolved.algebra)?;
            let lie = nilpotent_quotient(&dual, config.order.max(2))?;
            let series = lie.enveloping_series(config.order)?;
            if config.format == Format::Json {
                println!(
                    "{}",
                    serde_json::json!({
                        "dual": dual.to_string(),
                        "series": series.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    })
                );
            } else {
                println!("quadratic dual:\n{dual}");
                println!("dual Hilbert series through degree {}:", config.order);
                println!("{series}");
            }
            Ok(())
        }
        Command::Gb(arg) => {
            let resolved = load(&arg.input)?.resolve()?;
            let p = dual_side(&resolved.algebra)?;
            let ord = monomial_order(config, p.num_gens)?;
            let gb = presentation_basis(&p, &ord, config.order);
            let elements = gb.elements_external();
            if config.format == Format::Json {
                println!(
                    "{}",
                    serde_json::json!({
                        "complete_to": gb.complete_to,
                        "elements": elements.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                    })
                );
            } else {
                println!(
                    "Groebner basis through degree {}: {} elements",
                    gb.complete_to,
                    elements.len()
                );
                for e in &elements {
                    println!("{e}");
                }
            }
            Ok(())
        }
        Command::Hilbert(arg) => {
            let resolved = load(&arg.input)?.resolve()?;
            let series = hilbert_polynomial(&resolved.algebra, config.order)?;
            if config.format == Format::Json {
                println!(
                    "{}",
                    serde_json::json!({
                        "series": series.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    })
                );
            } else {
                println!("{series}");
            }
            Ok(())
        }
        Command::Tor(arg) => {
            let resolved = load(&arg.input)?.resolve()?;
            let p = &resolved.algebra;
            let table = match p.flavor {
                Flavor::Exterior => tor_table(p, config.tor_i, config.tor_j)?,
                Flavor::Free => {
                    let ord = monomial_order(config, p.num_gens)?;
                    let gb = presentation_basis(p, &ord, config.tor_j);
                    tor_table_from_groebner(gb, config.tor_i, config.tor_j)?
                }
            };
            if config.format == Format::Json {
                println!("{}", table.to_json());
            } else {
                for i in 0..=table.i_max {
                    let row = table.row(i);
                    if row.iter().all(|&v| v == 0) && i > 0 {
                        continue;
                    }
                    let cells: Vec<String> = row.iter().map(usize::to_string).collect();
                    println!("Tor_{i}: {}", cells.join(" "));
                }
            }
            Ok(())
        }
        Command::Lcs(arg) => {
            let resolved = load(&arg.input)?.resolve()?;
            let dual = dual_side(&resolved.algebra)?;
            let lie = nilpotent_quotient(&dual, config.order.max(2))?;
            let dims = lie.dims();
            if config.format == Format::Json {
                println!("{}", serde_json::json!({ "lcs_ranks": dims }));
            } else {
                let cells: Vec<String> = dims.iter().map(usize::to_string).collect();
                println!("{}", cells.join(" "));
            }
            Ok(())
        }
        Command::Classify(arg) => {
            let g = load(&arg.input)?.graph()?;
            let report = classify(&g, &census_bounds(config))?;
            match config.format {
                Format::Json => println!("{}", report.to_json()),
                _ => print_report(&report),
            }
            Ok(())
        }
        Command::Census { order } => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(config.workers)
                .build()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let bounds = census_bounds(config);
            let summary = pool.install(|| census(order, &bounds)).map_err(MathError::from)?;
            match config.format {
                Format::Json => {
                    for r in &summary.reports {
                        println!("{}", r.to_json());
                    }
                }
                Format::Csv => print!("{}", summary.to_csv()),
                Format::Text => println!("{}", summary.one_line()),
            }
            if let Some(dir) = &config.output_dir {
                let io = |e: std::io::Error| CliError::Usage(format!("{}: {e}", dir.display()));
                fs::create_dir_all(dir).map_err(io)?;
                let path = dir.join(format!("census-{order}.csv"));
                fs::write(&path, summary.to_csv()).map_err(io)?;
                let path = dir.join(format!("census-{order}.jsonl"));
                let lines: Vec<String> = summary.reports.iter().map(|r| r.to_json()).collect();
                fs::write(&path, lines.join("\n") + "\n").map_err(io)?;
            }
            Ok(())
        }
        Command::VerifyPaper { scope, long, stretch } => {
            let opts = verify::Options { long, stretch, workers: config.workers };
            let mut criteria: Vec<usize> = Vec::new();
            for part in scope.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let mut list = verify::scope_criteria(part)
                    .ok_or_else(|| MathError::Invalid(format!("unknown scope `{part}`")))?;
                criteria.append(&mut list);
            }
            criteria.sort_unstable();
            criteria.dedup();
            let mut failures = 0usize;
            for n in criteria {
                let checks = verify::run_criterion(n, &opts)?;
                for c in &checks {
                    if c.pass() {
                        println!("PASS  [{n}] {}", c.name);
                    } else {
                        failures += 1;
                        println!("FAIL  [{n}] {}", c.name);
                        println!("      expected: {}", c.expected);
                        println!("      computed: {}", c.computed);
                    }
                }
            }
            if failures > 0 {
                return Err(MathError::Invalid(format!("{failures} checks failed")).into());
            }
            println!("all checks passed");
            Ok(())
        }
    }
}

/// Hilbert series of the working quotient: degreewise span counting for
/// exterior quotients, normal-word counting for free ones.
fn hilbert_polynomial(
    p: &holonomy::presentation::AlgebraPresentation,
    order: usize,
) -> Result<holonomy::series::Series1, MathError> {
    match p.flavor {
        Flavor::Exterior => Ok(holonomy::arrangement::hilbert_series(p, p.num_gens.min(order.max(2)))),
        Flavor::Free => {
            let gb = presentation_basis(p, &DegLex::natural(p.num_gens), order);
            gb.hilbert_function(order)
        }
    }
}

fn print_report(r: &holonomy::census::ClassificationReport) {
    println!("graph {} ({} vertices, {} edges)", r.id, r.vertices, r.edges);
    println!("arrangement Hilbert polynomial: {:?}", r.os_hilbert);
    println!("deconed Hilbert polynomial:     {:?}", r.r_hilbert);
    println!("dual series through degree {}: {:?}", r.series_bound, r.dual_series);
    println!("LCS ranks: {:?}", r.lcs_ranks);
    match r.koszul {
        holonomy::census::KoszulVerdict::ToDegree(d) => println!("Koszul to degree {d}"),
        holonomy::census::KoszulVerdict::FailsAt(d) => println!("not Koszul (defect at degree {d})"),
    }
    for (n, s) in &r.ln_status {
        println!("L_{n}: {s:?}");
    }
    println!(
        "finitely generated: {}; finitely presented: {}; one level higher: {} (through degree {})",
        r.finiteness.finitely_generated.as_str(),
        r.finiteness.finitely_presented.as_str(),
        r.finiteness.fp_plus_one.as_str(),
        r.finiteness_bound,
    );
}
