//! `germkit`: validates and analyzes semigroup, action and graph documents.
//! Reports go to stdout as JSON and a one-line summary goes to stderr.
//! Exit codes: 0 pass, 1 mathematical failure, 2 input or usage error.

mod commands;
mod graph_cmds;
mod input;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use germkit::scalar::RingSpec;

use crate::input::load;
use crate::output::{Failure, Report};

#[derive(Parser)]
#[command(name = "germkit", version, about = "Inverse semigroups, partial actions, germ groupoids and graph algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// Coefficient ring: Q, Z or Zp:<p>.
    #[arg(long, global = true, default_value = "Q")]
    ring: String,
    /// Depth for graph computations; overrides the depth stored in a document.
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Seed for randomized sample checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Node budget for isomorphism searches.
    #[arg(long = "timeout-nodes", global = true, default_value_t = 1_000_000)]
    timeout_nodes: u64,
    /// Warn about unknown fields instead of rejecting them.
    #[arg(long, global = true)]
    lenient: bool,
}

/// Inputs are file paths, `-` for stdin, or `catalog:NAME`.
#[derive(Subcommand)]
enum Cmd {
    /// Parse and validate a document.
    Validate { input: String },
    /// Order structure of a semigroup, dynamics of an action, or a graph report.
    Analyze { input: String },
    /// Arrows of the groupoid of germs of an action.
    Germs { input: String },
    /// Maximal group image of a semigroup.
    Maxgroup { input: String },
    /// The semigroup S(G) of a group, checked against a word closure of length `--depth`.
    Exel { input: String },
    /// Crossed product against Steinberg algebra checks.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Continuous orbit equivalence of actions.
    #[command(subcommand)]
    Coe(CoeCmd),
    /// Directed graph commands.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Built-in catalog.
    #[command(subcommand)]
    Catalog(CatalogCmd),
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Compare the crossed product of the dual action with the Steinberg algebra of the germs.
    SteinbergCrossed { input: String },
}

#[derive(Subcommand)]
enum CoeCmd {
    /// Check a coe document between two actions.
    Verify { theta: String, gamma: String, coe: String },
    /// Build an orbit equivalence from a groupoid isomorphism.
    Extract { theta: String, gamma: String },
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Condition (L), periodic points, boundary and psi report.
    Analyze { graph: String },
    /// Evaluate a Leavitt path algebra expression, or check the defining relations.
    Leavitt {
        graph: String,
        /// Prefix expression, e.g. `(* e e*)`; `e*` is the ghost of `e`.
        #[arg(long)]
        expr: Option<String>,
        /// Second expression to compare with.
        #[arg(long)]
        equals: Option<String>,
        /// A leavitt document supplying both expressions.
        #[arg(long)]
        doc: Option<String>,
    },
    /// Check transducer-given orbit-equivalence data between two graphs.
    CoeVerify { e: String, f: String, data: String },
    /// Search for orbit-equivalence data between two acyclic graphs.
    CoeSearch {
        e: String,
        f: String,
        #[arg(long, default_value_t = 40_320)]
        max_bijections: usize,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// Run the acceptance suite over the catalog.
    Run,
    /// List catalog instances.
    List,
    /// Print a catalog document.
    Show { name: String },
}

fn run(cli: Cli) -> Result<Report, Failure> {
    let o = &cli.opts;
    let ld = |s: &str| load(s, o.lenient);
    let ring = || RingSpec::parse(&o.ring).map_err(Failure::Input);
    match cli.cmd {
        Cmd::Validate { input } => commands::validate(&ld(&input)?),
        Cmd::Analyze { input } => commands::analyze(&ld(&input)?),
        Cmd::Germs { input } => commands::germs(&ld(&input)?),
        Cmd::Maxgroup { input } => commands::maxgroup(&ld(&input)?),
        Cmd::Exel { input } => commands::exel(&ld(&input)?, o.depth),
        Cmd::Verify(VerifyCmd::SteinbergCrossed { input }) => commands::steinberg_crossed(&ld(&input)?, ring()?, o.seed),
        Cmd::Coe(CoeCmd::Verify { theta, gamma, coe }) => commands::coe_verify(&ld(&theta)?, &ld(&gamma)?, &ld(&coe)?),
        Cmd::Coe(CoeCmd::Extract { theta, gamma }) => commands::coe_extract(&ld(&theta)?, &ld(&gamma)?, o.timeout_nodes),
        Cmd::Graph(GraphCmd::Analyze { graph }) => graph_cmds::analyze(&ld(&graph)?),
        Cmd::Graph(GraphCmd::Leavitt { graph, expr, equals, doc }) => {
            let doc = doc.map(|d| ld(&d)).transpose()?;
            let args = graph_cmds::LeavittArgs { expr, equals, depth: o.depth, ring: ring()?, doc: doc.as_ref() };
            graph_cmds::leavitt(&ld(&graph)?, args)
        }
        Cmd::Graph(GraphCmd::CoeVerify { e, f, data }) => graph_cmds::coe_verify(&ld(&e)?, &ld(&f)?, &ld(&data)?, o.depth),
        Cmd::Graph(GraphCmd::CoeSearch { e, f, max_bijections }) => {
            graph_cmds::coe_search(&ld(&e)?, &ld(&f)?, max_bijections, o.timeout_nodes)
        }
        Cmd::Catalog(CatalogCmd::Run) => commands::catalog_run_cmd(o.seed),
        Cmd::Catalog(CatalogCmd::List) => commands::catalog_list(),
        Cmd::Catalog(CatalogCmd::Show { name }) => commands::catalog_show(&name),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(2);
        }
    };
    // A closed stdout (e.g. a pipe into `head`) is not an error of the command.
    let emit = |v: &serde_json::Value| {
        let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(v).expect("json"));
    };
    match run(cli) {
        Ok(r) => {
            emit(&r.json);
            eprintln!("{}: {}", if r.passed { "pass" } else { "FAIL" }, r.summary);
            ExitCode::from(if r.passed { 0 } else { 1 })
        }
        Err(Failure::Math(m)) => {
            emit(&serde_json::json!({"error": "math", "witness": m}));
            eprintln!("FAIL: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            emit(&serde_json::json!({"error": "input", "message": m}));
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
