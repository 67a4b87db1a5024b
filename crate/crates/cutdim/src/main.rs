use std::fs;
use std::io::Read as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use cutdim::approx::{perturbation_valid, PerturbationInstance};
use cutdim::constructors::{
    complete, cycle, cycle_plus_eps, explicit_from_family, fixture_fig2, fixture_fig8, k4_union,
    merge_construction,
};
use cutdim::enumeration::{
    alpha_near_cuts_with_cap, cut_dimension_with_cap, mincuts_with_cap,
};
use cutdim::graph::GraphJson;
use cutdim::laminar::{
    family_from_tree, random_maximal_cross_free, tree_representation, SetFamily,
};
use cutdim::lp::{find_fooling, query_matrix_from_json, QueryMatrixJson};
use cutdim::ops::{
    classify_mincut_structure, direct_union, merge, separation, MincutStructure,
};
use cutdim::rational::{parse_rat, rat_str, Rat};
use cutdim::{Error, Graph, Shore};

#[derive(Parser)]
#[command(name = "cutdim", about = "Exact cut dimension toolkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Enumeration cap on the vertex count.
    #[arg(long, global = true, env = "CUTDIM_CAP", default_value_t = 16)]
    cap: usize,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    out: Option<String>,
    /// Output format where both make sense.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Build one of the named graph families.
    Construct(ConstructArgs),
    /// Cut dimension of a graph.
    Cdim { input: String },
    /// Minimum cut weight and all mincut shores.
    Mincuts { input: String },
    /// Cuts within a factor of the minimum weight.
    NearCuts {
        input: String,
        #[arg(long)]
        alpha: String,
    },
    /// Arborescence representation of a laminar set family.
    TreeRepr { input: String },
    /// Separate a graph along a cut.
    Sep {
        input: String,
        /// Shore as comma-separated vertices.
        #[arg(long)]
        shore: String,
    },
    /// Merge two graphs at the given vertices.
    Mer {
        g0: String,
        g1: String,
        #[arg(long)]
        v1: usize,
        #[arg(long)]
        v0: usize,
    },
    /// Fuse two graphs by identifying one vertex of each.
    Union {
        g0: String,
        g1: String,
        #[arg(long)]
        v0: usize,
        #[arg(long)]
        v1: usize,
    },
    /// Classify the mincut structure of a graph.
    Classify { input: String },
    /// Hunt for a fooling pair against a query matrix.
    Adversary { graph: String, queries: String },
    /// Validate a perturbation instance and report its rank.
    PerturbCheck { input: String },
    /// Run the full acceptance suite.
    Verify,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(value_enum)]
    kind: Kind,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    weight: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Kind {
    Cycle,
    Complete,
    Explicit,
    Merge,
    K4Union,
    CycleEps,
    Fig8,
    Fig2,
}

enum CliError {
    /// Analysis refused (enumeration cap): exit 1.
    Refused(String),
    /// Malformed or invalid input: exit 2.
    Input(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => CliError::Refused(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(format!("bad JSON: {e}"))
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(format!("io error: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            match &cli.out {
                Some(path) => {
                    if fs::write(path, output).is_err() {
                        eprintln!("cannot write output file");
                        return ExitCode::from(2);
                    }
                }
                None => print!("{output}"),
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Refused(msg)) => {
            eprintln!("refused: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

fn read_graph(path: &str) -> Result<Graph, CliError> {
    let j: GraphJson = serde_json::from_str(&read_input(path)?)?;
    Ok(Graph::from_json(&j)?)
}

fn graph_output(g: &Graph, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&g.to_json()).unwrap();
            s.push('\n');
            s
        }
        Format::Dot => g.to_dot(),
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Construct(args) => run_construct(args, cli.format),
        Command::Cdim { input } => {
            let g = read_graph(input)?;
            let d = cut_dimension_with_cap(&g, cli.cap)?;
            Ok(format!("{}\n", json!({ "cdim": d })))
        }
        Command::Mincuts { input } => {
            let g = read_graph(input)?;
            let rep = mincuts_with_cap(&g, cli.cap)?;
            Ok(format!("{}\n", serde_json::to_string_pretty(&rep)?))
        }
        Command::NearCuts { input, alpha } => {
            let g = read_graph(input)?;
            let a = parse_rat(alpha)?;
            let rep = alpha_near_cuts_with_cap(&g, &a, cli.cap)?;
            Ok(format!("{}\n", serde_json::to_string_pretty(&rep)?))
        }
        Command::TreeRepr { input } => {
            let j: cutdim::laminar::FamilyJson = serde_json::from_str(&read_input(input)?)?;
            let f = SetFamily::from_json(&j)?;
            let rep = tree_representation(&f)?;
            match cli.format {
                Format::Dot => Ok(rep.to_dot()),
                Format::Json => {
                    let back = family_from_tree(&rep)?;
                    Ok(format!(
                        "{}\n",
                        json!({
                            "nodes": rep.node_count(),
                            "edges": rep.edge_count(),
                            "family": back.to_json(),
                        })
                    ))
                }
            }
        }
        Command::Sep { input, shore } => {
            let g = read_graph(input)?;
            let members = parse_shore_list(shore)?;
            let s = Shore::new(members, g.n())?;
            let pair = separation(&g, &s)?;
            Ok(format!(
                "{}\n",
                json!({
                    "g0": pair.g0.to_json(),
                    "g1": pair.g1.to_json(),
                    "v1": pair.v1,
                    "v0": pair.v0,
                    "mapping": pair.mapping,
                })
            ))
        }
        Command::Mer { g0, g1, v1, v0 } => {
            let a = read_graph(g0)?;
            let b = read_graph(g1)?;
            let m = merge(&a, *v1, &b, *v0)?;
            Ok(graph_output(&m, cli.format))
        }
        Command::Union { g0, g1, v0, v1 } => {
            let a = read_graph(g0)?;
            let b = read_graph(g1)?;
            let m = direct_union(&a, *v0, &b, *v1)?;
            Ok(graph_output(&m, cli.format))
        }
        Command::Classify { input } => {
            let g = read_graph(input)?;
            let s = match classify_mincut_structure(&g)? {
                MincutStructure::AllStar => "all-star",
                MincutStructure::CycleCase => "cycle-case",
                MincutStructure::HasCrosslessNonstar => "has-crossless-nonstar",
            };
            Ok(format!("{}\n", json!({ "structure": s })))
        }
        Command::Adversary { graph, queries } => {
            let g = read_graph(graph)?;
            let qj: QueryMatrixJson = serde_json::from_str(&read_input(queries)?)?;
            let a = query_matrix_from_json(&qj)?;
            match find_fooling(&g, &a)? {
                None => Ok(format!("{}\n", json!({ "found": false }))),
                Some(fp) => Ok(format!(
                    "{}\n",
                    json!({
                        "found": true,
                        "cut": fp.cut.members(),
                        "margin": rat_str(&fp.margin),
                        "z": fp.z.iter().map(rat_str).collect::<Vec<_>>(),
                        "g_prime": fp.g_prime.to_json(),
                    })
                )),
            }
        }
        Command::PerturbCheck { input } => {
            let j: PerturbationJson = serde_json::from_str(&read_input(input)?)?;
            let inst = j.build()?;
            let rep = perturbation_valid(&inst)?;
            let approx = cutdim::RationalMatrix::from_fn(
                inst.base.rows(),
                inst.base.cols(),
                |i, jx| inst.base.get(i, jx) - inst.p.get(i, jx),
            );
            Ok(format!(
                "{}\n",
                json!({
                    "valid": rep.valid,
                    "row_slack": rep.row_slack.iter().map(rat_str).collect::<Vec<_>>(),
                    "rank": approx.rank(),
                })
            ))
        }
        Command::Verify => {
            let mut out = String::new();
            let mut all_pass = true;
            for c in cutdim::verify::run_all() {
                all_pass &= c.pass;
                out.push_str(&format!(
                    "criterion {:2} {:24} {}  {}\n",
                    c.id,
                    c.name,
                    if c.pass { "pass" } else { "FAIL" },
                    c.details
                ));
            }
            if all_pass {
                Ok(out)
            } else {
                Err(CliError::Input(format!("{out}acceptance suite failed")))
            }
        }
    }
}

fn run_construct(args: &ConstructArgs, format: Format) -> Result<String, CliError> {
    let need_n = || {
        args.n
            .ok_or_else(|| CliError::Input("--n is required for this family".into()))
    };
    match args.kind {
        Kind::Cycle => Ok(graph_output(&cycle(need_n()?)?, format)),
        Kind::Complete => {
            let w = match &args.weight {
                Some(s) => parse_rat(s)?,
                None => Rat::from_integer(1.into()),
            };
            Ok(graph_output(&complete(need_n()?, &w)?, format))
        }
        Kind::Explicit => {
            let n = need_n()?;
            let l = random_maximal_cross_free(n, args.seed)?;
            let rep = explicit_from_family(&l)?;
            report_output(&rep, format)
        }
        Kind::Merge => {
            let rep = merge_construction(need_n()?)?;
            report_output(&rep, format)
        }
        Kind::K4Union => {
            let k = args
                .k
                .ok_or_else(|| CliError::Input("--k is required".into()))?;
            Ok(graph_output(&k4_union(k)?, format))
        }
        Kind::CycleEps => {
            let alpha = args
                .alpha
                .as_deref()
                .ok_or_else(|| CliError::Input("--alpha is required".into()))?;
            Ok(graph_output(&cycle_plus_eps(need_n()?, &parse_rat(alpha)?)?, format))
        }
        Kind::Fig8 => Ok(graph_output(&fixture_fig8(), format)),
        Kind::Fig2 => Ok(graph_output(&fixture_fig2(), format)),
    }
}

fn report_output(
    rep: &cutdim::constructors::ConstructionReport,
    format: Format,
) -> Result<String, CliError> {
    match format {
        Format::Dot => Ok(rep.graph.to_dot()),
        Format::Json => Ok(format!(
            "{}\n",
            json!({
                "graph": rep.graph.to_json(),
                "expected_lambda": rat_str(&rep.expected_lambda),
                "expected_cdim": rep.expected_cdim,
                "tag": rep.tag,
            })
        )),
    }
}

fn parse_shore_list(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Input(format!("bad vertex '{t}'")))
        })
        .collect()
}

#[derive(Debug, Serialize, Deserialize)]
struct PerturbationJson {
    base: Vec<Vec<String>>,
    w: Vec<String>,
    c: Vec<String>,
    p: Vec<Vec<String>>,
}

impl PerturbationJson {
    fn build(&self) -> Result<PerturbationInstance, CliError> {
        let parse_matrix = |rows: &Vec<Vec<String>>| -> Result<cutdim::RationalMatrix, Error> {
            let parsed = rows
                .iter()
                .map(|r| r.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            cutdim::RationalMatrix::from_rows(parsed)
        };
        let parse_vec = |v: &Vec<String>| -> Result<Vec<Rat>, Error> {
            v.iter().map(|s| parse_rat(s)).collect()
        };
        Ok(PerturbationInstance {
            base: parse_matrix(&self.base)?,
            w: parse_vec(&self.w)?,
            c: parse_vec(&self.c)?,
            p: parse_matrix(&self.p)?,
        })
    }
}
