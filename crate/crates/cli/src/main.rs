use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use flowgcm::centrality::{centrality_report, CentralityOptions};
use flowgcm::figures::{run_figure_checks, FixtureSet};
use flowgcm::flow::max_flow;
use flowgcm::oracle::{cross_check, standard_batch, CrossCheckConfig, CrossCheckItem, CATEGORIES, GENERATOR};
use flowgcm::quantities::{pair_report, LambdaMode, PairOptions, DEFAULT_BUDGET};
use flowgcm::report::{format_centrality, format_pair, format_terms, Format};
use flowgcm::{fixtures, Error, Network, VertexSet};

#[derive(Parser)]
#[command(name = "flowgcm", version, about = "Flow-based group centrality on capacitated digraphs")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,
    /// Largest capacity accepted in network files.
    #[arg(long, default_value_t = 1_000_000_000, global = true)]
    max_capacity: u64,
    /// Step budget for exact enumeration.
    #[arg(long, default_value_t = DEFAULT_BUDGET, global = true)]
    budget: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Pair quantities for one source, sink and vertex set.
    Pair {
        file: String,
        y: String,
        z: String,
        /// Comma-separated vertex tokens; empty for the empty set.
        #[arg(long, default_value = "")]
        set: String,
        /// Enumerate maximum sequences even for sets of one vertex.
        #[arg(long, alias = "force-exact")]
        exact: bool,
        /// Print the least sequence attaining lambda (implies --exact).
        #[arg(long)]
        witness: bool,
        /// Print a maximum flow in flow file format.
        #[arg(long)]
        dump_flow: bool,
    },
    /// Full flow vitality and betweenness of vertex sets.
    Centrality {
        file: String,
        /// Comma-separated vertex tokens; repeat for several sets. Without
        /// any, every single vertex is reported.
        #[arg(long)]
        set: Vec<String>,
        #[arg(long, alias = "force-exact")]
        exact: bool,
        /// Print the per-pair terms after each record.
        #[arg(long)]
        explain: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Check the documented values of the bundled example networks.
    Examples,
    /// Compare the solvers with exhaustive enumeration on random networks.
    Selftest {
        #[arg(long, default_value_t = 500)]
        instances: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        random_sets: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

/// Exit codes: 2 bad input, 3 budget exhausted, 4 invariant violated.
struct Failure {
    code: u8,
    message: String,
    /// Failed check reports go to stdout like a successful run would.
    report: bool,
}

impl Failure {
    fn input(message: String) -> Self {
        Failure {
            code: 2,
            message,
            report: false,
        }
    }
}

fn fail(context: &str, e: Error) -> Failure {
    let code = match e {
        Error::BudgetExceeded { .. } => 3,
        Error::InvariantViolation(_) => 4,
        _ => 2,
    };
    Failure {
        code,
        message: format!("{context}: {e}"),
        report: false,
    }
}

fn load(file: &str, max_capacity: u64) -> Result<Network, Failure> {
    let text = fs::read_to_string(file).map_err(|e| Failure::input(format!("{file}: {e}")))?;
    Network::parse_with_cap(&text, Some(max_capacity)).map_err(|e| fail(file, e))
}

fn parse_set(net: &Network, text: &str) -> Result<VertexSet, Failure> {
    let tokens: Vec<&str> = text.split(',').map(str::trim).filter(|t| !t.is_empty()).collect();
    net.vertex_set(&tokens).map_err(|e| fail(&format!("--set {text}"), e))
}

fn vertex(net: &Network, token: &str) -> Result<usize, Failure> {
    net.index_of(token).map_err(|e| fail("vertex", e))
}

fn run(cli: Cli) -> Result<String, Failure> {
    let format = match cli.common.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Tsv => Format::Tsv,
    };
    let budget = cli.common.budget;
    match cli.command {
        Command::Pair {
            file,
            y,
            z,
            set,
            exact,
            witness,
            dump_flow,
        } => {
            let net = load(&file, cli.common.max_capacity)?;
            let (y, z) = (vertex(&net, &y)?, vertex(&net, &z)?);
            let set = parse_set(&net, &set)?;
            let options = PairOptions {
                mode: if exact || witness { LambdaMode::Exact } else { LambdaMode::Auto },
                budget,
                compute_lambda: true,
            };
            let q = pair_report(&net, y, z, &set, &options).map_err(|e| fail(&file, e))?;
            let mut out = format_pair(&net, &q, format);
            if dump_flow {
                let (_, flow) = max_flow(&net, y, z).map_err(|e| fail(&file, e))?;
                out.push_str(&flow.render(&net));
            }
            Ok(out)
        }
        Command::Centrality {
            file,
            set,
            exact,
            explain,
            jobs,
        } => {
            let net = load(&file, cli.common.max_capacity)?;
            let sets: Vec<VertexSet> = if set.is_empty() {
                (0..net.vertex_count()).map(VertexSet::singleton).collect()
            } else {
                set.iter().map(|s| parse_set(&net, s)).collect::<Result<_, _>>()?
            };
            let options = CentralityOptions {
                mode: if exact { LambdaMode::Exact } else { LambdaMode::Auto },
                budget,
                explain,
                jobs: jobs.max(1),
                betweenness: true,
            };
            let reports = centrality_report(&net, &sets, &options).map_err(|e| fail(&file, e))?;
            let mut out = format_centrality(&net, &reports, format);
            for r in &reports {
                out.push_str(&format_terms(&net, r, format));
            }
            Ok(out)
        }
        Command::Examples => {
            let checks = run_figure_checks(&FixtureSet::embedded());
            let mut out = String::new();
            for c in &checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                out.push_str(&match format {
                    Format::Text => format!(
                        "{status} {} {}: expected {} observed {}\n",
                        c.figure, c.assertion, c.expected, c.observed
                    ),
                    Format::Tsv => format!(
                        "{status}\t{}\t{}\t{}\t{}\n",
                        c.figure, c.assertion, c.expected, c.observed
                    ),
                });
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            out.push_str(&format!("{} checks, {failed} failed\n", checks.len()));
            if failed == 0 {
                Ok(out)
            } else {
                Err(Failure {
                    code: 1,
                    message: out,
                    report: true,
                })
            }
        }
        Command::Selftest {
            instances,
            seed,
            random_sets,
            jobs,
        } => {
            let mut items: Vec<CrossCheckItem> = standard_batch(instances, seed)
                .iter()
                .map(CrossCheckItem::from_spec)
                .collect::<Result<_, _>>()
                .map_err(|e| fail("selftest", e))?;
            for (name, tokens) in [("fig5", ["x1", "x2"]), ("fig6", ["x1", "x2"])] {
                let text = fixtures::NAMED.iter().find(|(n, _)| *n == name).expect("fixture").1;
                let net = Network::parse(text).expect("embedded fixture parses");
                let x = net.vertex_set(&tokens).expect("fixture vertices");
                items.push(CrossCheckItem {
                    label: name.into(),
                    network: net,
                    extra_sets: vec![x],
                });
            }
            let cfg = CrossCheckConfig {
                random_sets,
                seed,
                lambda_budget: budget,
                jobs: jobs.max(1),
                ..CrossCheckConfig::default()
            };
            let report = cross_check(&items, &cfg).map_err(|e| fail("selftest", e))?;
            let mut out = format!(
                "generator={GENERATOR} seed={seed} instances={} pairs={} oracle_skipped={}\n",
                report.instances, report.pairs, report.oracle_skipped
            );
            for c in CATEGORIES {
                out.push_str(&format!(
                    "{c:?} checks={} violations={}\n",
                    report.checks_of(c),
                    report.violations_of(c)
                ));
            }
            out.push_str(&format!(
                "strict phi_X<lambda_X: {}  strict lambda_X<delta_X: {}\n",
                report.strict_phi_lambda, report.strict_lambda_delta
            ));
            match report.violations.first() {
                None => Ok(out),
                Some(v) => Err(Failure {
                    code: 4,
                    message: format!("{out}first counterexample ({:?}): {}\n", v.category, v.detail),
                    report: true,
                }),
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            if f.report {
                print!("{}", f.message);
            } else {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
