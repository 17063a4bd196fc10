//! Command-line front end: parse matroid/graph descriptions, compute chain
//! invariants, run verification suites, emit canonical text or JSON.
//!
//! Exit codes: 0 success, 1 failed verification or internal error, 2 parse
//! error, 3 work-cap exceeded, 4 hypothesis violation.

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use chainpoly::budget::Budget;
use chainpoly::chain::verify::{
    verify_all_matroid, verify_axioms, verify_duality, verify_identities, verify_lemma21,
    verify_product, verify_recursion, verify_routes, verify_sign_alternation,
};
use chainpoly::chain::{
    chain_characteristic, chain_tutte, mobius_poly, whitney_rank_poly, CharRoute,
};
use chainpoly::graph::{
    count_coupled_colorings, count_coupled_flows, coupled_chromatic_poly, coupled_flow_poly,
    verify_coloring_oracle, verify_flow_oracle, AbelianGroup, Graph,
};
use chainpoly::matroid::{Matroid, MatroidSpec};
use chainpoly::{Error, Report};

#[derive(Parser)]
#[command(
    name = "chainpoly",
    about = "Chain Tutte, Whitney, characteristic and Mobius polynomials of matroids, \
             with coupled coloring/flow counting oracles",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Work cap on enumeration visits (overrides CHAINPOLY_MAX_VISITS).
    #[arg(long, global = true)]
    max_visits: Option<u64>,

    /// Worker threads; output is identical for any value.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Definition,
    #[value(alias = "tutte-eval")]
    Tutte,
    Mobius,
}

impl From<RouteArg> for CharRoute {
    fn from(r: RouteArg) -> CharRoute {
        match r {
            RouteArg::Definition => CharRoute::Definition,
            RouteArg::Tutte => CharRoute::TutteEval,
            RouteArg::Mobius => CharRoute::Mobius,
        }
    }
}

#[derive(clap::Args)]
struct InputArgs {
    /// Matroid description: inline JSON or a file path.
    #[arg(long)]
    matroid: Option<String>,

    /// Graph JSON file ("-" for stdin); used as its cycle matroid where a
    /// matroid is expected.
    #[arg(long)]
    graph: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Chain Tutte polynomial T^k in x1..xk, y1..yk.
    ChainTutte {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Chain Whitney rank generating polynomial W^k in a1..ak, b1..bk.
    Whitney {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Chain characteristic polynomial chi^k in t1..tk.
    ChainChar {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = RouteArg::Definition)]
        route: RouteArg,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Mobius polynomial M(s,t) over the lattice of flats.
    Mobius {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Coupled k-multicoloring polynomial of a graph.
    Chromatic {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        graph: String,
    },
    /// Coupled k-multicommodity flow polynomial of a graph.
    Flow {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        graph: String,
    },
    /// Count coupled multicolorings by brute force.
    CountColorings {
        #[arg(long)]
        graph: String,
        /// Palette sizes, e.g. "2,3".
        #[arg(long)]
        palette: String,
    },
    /// Count coupled multicommodity flows by spanning-forest enumeration.
    CountFlows {
        #[arg(long)]
        graph: String,
        /// Abelian groups, e.g. "Z2,Z2" or "Z2xZ2,Z4".
        #[arg(long)]
        groups: String,
    },
    /// Run a verification suite and report per-check status.
    Verify {
        /// One of: axioms, routes, duality, product, recursion, lemma21,
        /// signs, coloring-oracle, flow-oracle, all.
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[command(flatten)]
        input: InputArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = || -> Result<(String, bool), Error> {
        let mut budget = Budget::from_env()?;
        if let Some(cap) = cli.max_visits {
            budget.max_visits = cap;
        }
        dispatch(&cli.command, cli.format, &budget)
    };
    let outcome = match cli.jobs {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build();
            match pool {
                Ok(pool) => pool.install(run),
                Err(e) => Err(Error::InvalidParameters(format!("thread pool: {e}"))),
            }
        }
        None => run(),
    };
    match outcome {
        Ok((output, all_ok)) => {
            print!("{output}");
            if all_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Parse(_) => 2,
                Error::SizeCap { .. } => 3,
                Error::Hypothesis(_) => 4,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}

fn read_graph(arg: &str) -> Result<Graph, Error> {
    let text = if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Parse(format!("reading stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(arg)
            .map_err(|e| Error::Parse(format!("reading {arg}: {e}")))?
    };
    Graph::parse(&text)
}

fn read_matroid_arg(arg: &str) -> Result<Matroid, Error> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg)
            .map_err(|e| Error::Parse(format!("reading {arg}: {e}")))?
    };
    MatroidSpec::parse(&text)?.build()
}

enum Loaded {
    MatroidOnly(Matroid),
    FromGraph(Graph, Matroid),
}

impl Loaded {
    fn matroid(&self) -> &Matroid {
        match self {
            Loaded::MatroidOnly(m) => m,
            Loaded::FromGraph(_, m) => m,
        }
    }

    fn graph(&self) -> Option<&Graph> {
        match self {
            Loaded::MatroidOnly(_) => None,
            Loaded::FromGraph(g, _) => Some(g),
        }
    }
}

fn load_input(input: &InputArgs) -> Result<Loaded, Error> {
    match (&input.matroid, &input.graph) {
        (Some(_), Some(_)) => Err(Error::Parse(
            "give either --matroid or --graph, not both".into(),
        )),
        (Some(m), None) => Ok(Loaded::MatroidOnly(read_matroid_arg(m)?)),
        (None, Some(g)) => {
            let graph = read_graph(g)?;
            let matroid = Matroid::graphic(graph.clone());
            Ok(Loaded::FromGraph(graph, matroid))
        }
        (None, None) => Err(Error::Parse("an input (--matroid or --graph) is required".into())),
    }
}

fn parse_palette(text: &str) -> Result<Vec<u64>, Error> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|e| Error::Parse(format!("palette entry {part:?}: {e}")))
        })
        .collect()
}

fn parse_groups(text: &str) -> Result<Vec<AbelianGroup>, Error> {
    text.split(',').map(|part| AbelianGroup::parse(part.trim())).collect()
}

fn poly_output(poly: &chainpoly::MultiPoly, format: Format) -> String {
    match format {
        Format::Text => format!("{poly}\n"),
        Format::Json => format!("{}\n", serde_json::to_string(poly).expect("poly serializes")),
    }
}

fn count_output(count: u64, format: Format) -> String {
    match format {
        Format::Text => format!("{count}\n"),
        Format::Json => format!("{{\"count\":{count}}}\n"),
    }
}

fn report_output(report: &Report, format: Format) -> (String, bool) {
    let ok = report.all_passed();
    let text = match format {
        Format::Text => report.render_text(),
        Format::Json => format!("{}\n", serde_json::to_string(report).expect("report serializes")),
    };
    (text, ok)
}

fn dispatch(cmd: &Command, format: Format, budget: &Budget) -> Result<(String, bool), Error> {
    match cmd {
        Command::ChainTutte { k, input } => {
            let loaded = load_input(input)?;
            let poly = chain_tutte(loaded.matroid(), *k, budget)?;
            Ok((poly_output(&poly, format), true))
        }
        Command::Whitney { k, input } => {
            let loaded = load_input(input)?;
            let poly = whitney_rank_poly(loaded.matroid(), *k, budget)?;
            Ok((poly_output(&poly, format), true))
        }
        Command::ChainChar { k, route, input } => {
            let loaded = load_input(input)?;
            let poly = chain_characteristic(loaded.matroid(), *k, (*route).into(), budget)?;
            Ok((poly_output(&poly, format), true))
        }
        Command::Mobius { input } => {
            let loaded = load_input(input)?;
            let poly = mobius_poly(loaded.matroid(), budget)?;
            Ok((poly_output(&poly, format), true))
        }
        Command::Chromatic { k, graph } => {
            let g = read_graph(graph)?;
            let poly = coupled_chromatic_poly(&g, *k, budget)?;
            Ok((poly_output(&poly, format), true))
        }
        Command::Flow { k, graph } => {
            let g = read_graph(graph)?;
            let poly = coupled_flow_poly(&g, *k, budget)?;
            Ok((poly_output(&poly, format), true))
        }
        Command::CountColorings { graph, palette } => {
            let g = read_graph(graph)?;
            let palette = parse_palette(palette)?;
            let count = count_coupled_colorings(&g, &palette, budget)?;
            Ok((count_output(count, format), true))
        }
        Command::CountFlows { graph, groups } => {
            let g = read_graph(graph)?;
            let groups = parse_groups(groups)?;
            let count = count_coupled_flows(&g, &groups, budget)?;
            Ok((count_output(count, format), true))
        }
        Command::Verify { suite, k, input } => {
            let loaded = load_input(input)?;
            let report = run_suite(&loaded, suite, *k, budget)?;
            Ok(report_output(&report, format))
        }
    }
}

fn run_suite(loaded: &Loaded, suite: &str, k: usize, budget: &Budget) -> Result<Report, Error> {
    let m = loaded.matroid();
    match suite {
        "axioms" => verify_axioms(m, budget),
        "routes" => verify_routes(m, k, budget),
        "duality" => verify_duality(m, k, budget),
        "product" => verify_product(m, k, budget),
        "lemma21" => verify_lemma21(m, k, budget),
        "identities" => verify_identities(m, k, budget),
        "signs" => verify_sign_alternation(m, k, budget),
        "recursion" => {
            let mut report = Report::new();
            let mut any = false;
            for a in 0..m.ground_size() {
                if m.is_loop(a)? || m.is_coloop(a)? {
                    continue;
                }
                any = true;
                report.merge(verify_recursion(m, a, k, budget)?);
            }
            if !any {
                return Err(Error::Hypothesis(
                    "recursion needs an element that is neither a loop nor a coloop".into(),
                ));
            }
            Ok(report)
        }
        "coloring-oracle" => match loaded.graph() {
            Some(g) => verify_coloring_oracle(g, k, budget),
            None => Err(Error::Parse("coloring-oracle needs --graph input".into())),
        },
        "flow-oracle" => match loaded.graph() {
            Some(g) => verify_flow_oracle(g, k, budget),
            None => Err(Error::Parse("flow-oracle needs --graph input".into())),
        },
        "all" => {
            let mut report = verify_all_matroid(m, k, budget)?;
            if let Some(g) = loaded.graph() {
                if g.is_simple() {
                    report.merge(verify_coloring_oracle(g, k, budget)?);
                } else {
                    report.push(chainpoly::Check::skipped(
                        "coloring_oracle",
                        "graph is not simple".to_string(),
                    ));
                }
                report.merge(verify_flow_oracle(g, k, budget)?);
            }
            Ok(report)
        }
        other => Err(Error::Parse(format!(
            "unknown suite {other:?}; expected one of axioms, routes, duality, product, \
             recursion, lemma21, identities, signs, coloring-oracle, flow-oracle, all"
        ))),
    }
}
