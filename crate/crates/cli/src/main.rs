use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use latplan::classify::{classify_capped, truncate_capped, InfiniteFamilySpec, Truncation};
use latplan::graph::SimpleGraph;
use latplan::group::{
    parse_permutation_text, parse_table_text, table_text, FiniteGroup, GroupFile, CONSTRUCTION_CAP,
    LATTICE_CAP,
};
use latplan::lattice::all_subgroups_capped;
use latplan::planarity::{is_outerplanar, is_planar, planar, PlanarityVerdict};
use latplan::suite::{run_corpus, Corpus, GroupSpec};
use serde_json::{json, Value};

mod error;

use error::CliError;

#[derive(Parser)]
#[command(
    name = "latplan",
    version,
    about = "Subgroup lattices and the planarity of their subgroup graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a group and write it as a JSON group file
    Construct(ConstructArgs),
    /// Enumerate subgroups, classify, and test planarity
    Analyze(AnalyzeArgs),
    /// Run the check corpus and write a report
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Args)]
#[group(required = false, multiple = false)]
struct Source {
    /// Group spec such as `qd16`, `cyclic:n=30`, `abelian:4,2`, `symmetric:n=4`, `q8 x cyclic:n=3`
    #[arg(long)]
    family: Option<String>,
    /// Cyclic group of order N
    #[arg(long, value_name = "N")]
    cyclic: Option<usize>,
    /// Cayley table text file: the order, then one row per line
    #[arg(long, value_name = "FILE")]
    table: Option<PathBuf>,
    /// Permutation file: the degree, then one generator image list per line
    #[arg(long, value_name = "FILE")]
    perms: Option<PathBuf>,
    /// Truncation of an infinite family, e.g. `prufer:p=2,level=3` or `tarski:level=5`
    #[arg(long, value_name = "SPEC")]
    truncate: Option<String>,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    source: Source,
    /// Output file (stdout if omitted)
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// `json` writes a group file, `text` a Cayley table
    #[arg(long, value_enum, default_value = "json", env = "LATPLAN_FORMAT")]
    format: Format,
    #[arg(long, default_value_t = CONSTRUCTION_CAP, env = "LATPLAN_CONSTRUCT_CAP")]
    max_order: usize,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Group file written by `construct`
    file: Option<PathBuf>,
    #[command(flatten)]
    source: Source,
    /// Arbitrary graph in DOT form, tested for planarity and outer-planarity
    #[arg(long, value_name = "FILE", conflicts_with = "file")]
    graph: Option<PathBuf>,
    /// Also write the subgroup graph in DOT form to this file
    #[arg(long, value_name = "FILE")]
    dot: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json", env = "LATPLAN_FORMAT")]
    format: Format,
    /// Largest group order for subgroup enumeration
    #[arg(long, default_value_t = LATTICE_CAP, env = "LATPLAN_MAX_ORDER")]
    max_order: usize,
    /// Largest non-abelian order for the isomorphism search behind classification
    #[arg(long, default_value_t = LATTICE_CAP, env = "LATPLAN_ISO_CAP")]
    iso_cap: usize,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// `default`, `empty`, or a corpus JSON file
    #[arg(long, default_value = "default", env = "LATPLAN_CORPUS")]
    corpus: String,
    /// Largest group order in the default corpus
    #[arg(long, default_value_t = LATTICE_CAP, env = "LATPLAN_MAX_ORDER")]
    max_order: usize,
    /// Report file (stdout if omitted)
    #[arg(long, value_name = "FILE", env = "LATPLAN_REPORT")]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json", env = "LATPLAN_FORMAT")]
    format: Format,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        source: e,
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io {
            path: p.to_path_buf(),
            source: e,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

enum Input {
    Group(FiniteGroup),
    Shape(SimpleGraph, String),
}

fn load(source: &Source, file: Option<&Path>, cap: usize) -> Result<Input, CliError> {
    let group = if let Some(spec) = &source.family {
        let g = GroupSpec::parse(spec)?.build()?;
        check_cap(g.order(), cap)?;
        g
    } else if let Some(n) = source.cyclic {
        check_cap(n, cap)?;
        FiniteGroup::cyclic(n)?
    } else if let Some(path) = &source.table {
        let table = parse_table_text(&read(path)?)?;
        check_cap(table.len(), cap)?;
        FiniteGroup::from_cayley_table(&table, None)?
    } else if let Some(path) = &source.perms {
        let (degree, gens) = parse_permutation_text(&read(path)?)?;
        FiniteGroup::from_permutations(degree, &gens, cap)?
    } else if let Some(spec) = &source.truncate {
        let spec = InfiniteFamilySpec::parse(spec)?;
        return Ok(match truncate_capped(&spec, cap)? {
            Truncation::Group(g) => Input::Group(g),
            Truncation::Graph(graph) => Input::Shape(graph, spec.to_string()),
        });
    } else if let Some(path) = file {
        let gf: GroupFile = serde_json::from_str(&read(path)?).map_err(|e| CliError::Json {
            path: path.to_path_buf(),
            source: e,
        })?;
        check_cap(gf.order, cap)?;
        gf.into_group()?
    } else {
        return Err(CliError::Usage(
            "give a group file or one of --family, --cyclic, --table, --perms, --truncate".into(),
        ));
    };
    Ok(Input::Group(group))
}

fn check_cap(order: usize, cap: usize) -> Result<(), CliError> {
    if order > cap {
        return Err(latplan::Error::OrderCapExceeded { order, cap }.into());
    }
    Ok(())
}

fn construct(args: &ConstructArgs) -> Result<ExitCode, CliError> {
    let g = match load(&args.source, None, args.max_order)? {
        Input::Group(g) => g,
        Input::Shape(_, spec) => {
            return Err(CliError::Usage(format!(
                "{spec} is a lattice shape, not a group; use `analyze`"
            )))
        }
    };
    let text = match args.format {
        Format::Json => {
            serde_json::to_string_pretty(&GroupFile::from_group(&g)).expect("group file serializes")
                + "\n"
        }
        Format::Text => table_text(&g),
        Format::Dot => return Err(CliError::Usage("construct writes json or text".into())),
    };
    emit(args.out.as_deref(), &text)?;
    let shown: Vec<&str> = g.labels().iter().take(16).map(String::as_str).collect();
    let more = if g.order() > shown.len() { ", ..." } else { "" };
    eprintln!("order {}: {}{more}", g.order(), shown.join(", "));
    Ok(ExitCode::SUCCESS)
}

fn verdict_witness(v: &PlanarityVerdict) -> Option<Value> {
    v.witness
        .as_ref()
        .map(|w| serde_json::to_value(w).expect("witness serializes"))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn analyze(args: &AnalyzeArgs) -> Result<ExitCode, CliError> {
    if let Some(path) = &args.graph {
        let graph = SimpleGraph::from_dot(&read(path)?)?;
        return analyze_graph(args, &graph, &path.display().to_string());
    }
    let g = match load(&args.source, args.file.as_deref(), args.max_order)? {
        Input::Group(g) => g,
        Input::Shape(graph, spec) => return analyze_graph(args, &graph, &spec),
    };
    if !g.is_abelian() && g.order() > args.iso_cap {
        return Err(latplan::Error::OrderCapExceeded {
            order: g.order(),
            cap: args.iso_cap,
        }
        .into());
    }
    let lattice = all_subgroups_capped(&g, args.max_order)?;
    let tag = classify_capped(&g, args.max_order.max(g.order()))?;
    let graph = lattice.subgroup_graph();
    let p = is_planar(&graph);
    let o = is_outerplanar(&graph);
    let hasse = p.planar && planar(&lattice.bounded_graph().0);
    if let Some(path) = &args.dot {
        fs::write(path, lattice.to_dot()).map_err(|e| CliError::Io {
            path: path.clone(),
            source: e,
        })?;
    }
    let name = g.source_spec().unwrap_or("group").to_string();
    let text = match args.format {
        Format::Dot => lattice.to_dot(),
        Format::Json => {
            let mut v = json!({
                "group": name,
                "order": g.order(),
                "subgroup_count": lattice.len(),
                "planar": p.planar,
                "outerplanar": o.planar,
                "hasse_planar": hasse,
                "family_tag": tag,
            });
            if let Some(w) = verdict_witness(&p) {
                v["witness"] = w;
            }
            if let Some(w) = verdict_witness(&o) {
                v["outerplanar_witness"] = w;
            }
            serde_json::to_string_pretty(&v).expect("analysis serializes") + "\n"
        }
        Format::Text => {
            let mut s = format!(
                "group: {name}\norder: {}\nsubgroups: {}\nfamily: {tag}\nplanar: {}\nouter-planar: {}\nhasse-planar: {}\n",
                g.order(),
                lattice.len(),
                yes(p.planar),
                yes(o.planar),
                yes(hasse)
            );
            if let Some(w) = &p.witness {
                s.push_str(&format!(
                    "witness: {:?} on subgroups {:?}\n",
                    w.kind, w.branch_vertices
                ));
            }
            s
        }
    };
    emit(args.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn analyze_graph(
    args: &AnalyzeArgs,
    graph: &SimpleGraph,
    name: &str,
) -> Result<ExitCode, CliError> {
    let p = is_planar(graph);
    let o = is_outerplanar(graph);
    if let Some(path) = &args.dot {
        fs::write(path, graph.to_dot("lattice")).map_err(|e| CliError::Io {
            path: path.clone(),
            source: e,
        })?;
    }
    let text = match args.format {
        Format::Dot => graph.to_dot("lattice"),
        Format::Json => {
            let mut v = json!({
                "graph": name,
                "vertices": graph.vertex_count(),
                "edges": graph.edge_count(),
                "planar": p.planar,
                "outerplanar": o.planar,
            });
            if let Some(w) = verdict_witness(&p) {
                v["witness"] = w;
            }
            if let Some(w) = verdict_witness(&o) {
                v["outerplanar_witness"] = w;
            }
            serde_json::to_string_pretty(&v).expect("analysis serializes") + "\n"
        }
        Format::Text => format!(
            "graph: {name}\nvertices: {}\nedges: {}\nplanar: {}\nouter-planar: {}\n",
            graph.vertex_count(),
            graph.edge_count(),
            yes(p.planar),
            yes(o.planar)
        ),
    };
    emit(args.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn verify(args: &VerifyArgs) -> Result<ExitCode, CliError> {
    let corpus = match args.corpus.as_str() {
        "default" => Corpus::default_with_max_order(args.max_order),
        "empty" => Corpus::empty(),
        path => {
            let path = Path::new(path);
            Corpus::parse_json(&read(path)?, path.display().to_string())?
        }
    };
    let report = run_corpus(&corpus);
    let text = match args.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
        Format::Dot => return Err(CliError::Usage("verify writes json or text".into())),
    };
    emit(args.report.as_deref(), &text)?;
    let s = &report.summary;
    eprintln!(
        "{}: {} checks, {} passed, {} failed",
        report.corpus, s.total, s.passed, s.failed
    );
    for f in report.failures() {
        eprintln!("FAIL {} [{}] {}", f.check_id, f.group_label, f.details);
    }
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Construct(a) => construct(a),
        Command::Analyze(a) => analyze(a),
        Command::Verify(a) => verify(a),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(e.exit_code())
    })
}
