use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coherence::census::{run_census, smallest_incoherent, write_csv, CensusConfig, CensusError, CensusFlavor};
use coherence::decomposition::{dirac_split, enumerate_separator_splits, Split};
use coherence::engine::{classify_coherence, verify_verdict, EngineConfig, Rule, DEFAULT_SEARCH_CAP};
use coherence::graph::{is_chordal, parse_graph, LabeledGraph};
use coherence::group::{detect_flavor, emit_presentation, finiteness, is_slender};
use serde_json::json;

mod render;

#[derive(Parser)]
#[command(name = "coherence", version, about = "Coherence, slenderness and finiteness of graph-defined groups")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Largest graph the amalgam search will recurse into.
    #[arg(long, global = true, default_value_t = DEFAULT_SEARCH_CAP)]
    max_search_vertices: usize,
    /// Census worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    /// Seed for randomised utilities. The commands below are deterministic
    /// and draw no random numbers.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the group of a graph file (JSON or DOT).
    Classify { path: PathBuf },
    /// Classify every graph in a range and tabulate by (vertices, edges).
    Census(CensusArgs),
    /// Show clique-separator or slender-separator splits.
    Decompose { path: PathBuf },
    /// Print a group presentation.
    Present { path: PathBuf },
    /// Finiteness and Coxeter type.
    Finiteness { path: PathBuf },
}

#[derive(Args)]
struct CensusArgs {
    /// racg, raag, or coxeter:L1,L2,...
    #[arg(long)]
    flavor: String,
    #[arg(long, default_value_t = 1)]
    min_vertices: usize,
    #[arg(long)]
    max_vertices: usize,
    #[arg(long, default_value_t = 0)]
    min_edges: usize,
    #[arg(long)]
    max_edges: Option<usize>,
    /// Count isomorphism classes rather than labelled graphs.
    #[arg(long)]
    dedup: bool,
    /// Append one JSON record per isomorphism class; existing records are reused.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the per-cell table as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Write the full report as JSON.
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Rules to switch off (droms, wise_gordon, abelian, slender, mccammond_wise, free_product, amalgam).
    #[arg(long, value_delimiter = ',')]
    disable: Vec<String>,
}

/// Failure classes mapped to exit codes 1 and 2.
enum Fail {
    Input(String),
    Internal(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Fail::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Fail::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<String, Fail> {
    let engine = EngineConfig {
        max_search_vertices: cli.max_search_vertices,
        ..EngineConfig::default()
    };
    match &cli.command {
        Command::Classify { path } => classify(cli.format, &load(path)?, &engine),
        Command::Census(args) => census(cli, args, engine),
        Command::Decompose { path } => Ok(decompose(cli.format, &load(path)?)),
        Command::Present { path } => {
            let p = emit_presentation(&load(path)?).map_err(|e| Fail::Input(e.to_string()))?;
            Ok(match cli.format {
                Format::Text => format!("{p}\n"),
                Format::Json => json_line(&json!({ "presentation": p })),
            })
        }
        Command::Finiteness { path } => {
            let g = load(path)?;
            let f = finiteness(&g).map_err(|e| Fail::Input(e.to_string()))?;
            Ok(match cli.format {
                Format::Text => format!("{}\n", render::finiteness(&f)),
                Format::Json => json_line(&render::finiteness_json(&g, &f)),
            })
        }
    }
}

fn load(path: &Path) -> Result<LabeledGraph, Fail> {
    let text = fs::read_to_string(path).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))
}

fn json_line(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialise");
    s.push('\n');
    s
}

fn classify(format: Format, g: &LabeledGraph, config: &EngineConfig) -> Result<String, Fail> {
    let verdict = classify_coherence(g, config).map_err(|e| Fail::Input(e.to_string()))?;
    verify_verdict(g, &verdict).map_err(|e| Fail::Internal(format!("emitted verdict does not verify: {e}")))?;
    let slender = is_slender(g);
    let fin = finiteness(g).ok();
    let flavor = detect_flavor(g);
    Ok(match format {
        Format::Json => json_line(&json!({
            "flavor": render::flavor_name(&flavor),
            "coherence": verdict,
            "slenderness": slender,
            "finiteness": fin.as_ref().map(|f| render::finiteness_json(g, f)),
        })),
        Format::Text => {
            let mut out = String::new();
            out += &format!("{}\n", render::headline(&verdict, &slender, fin.as_ref()));
            out += &render::verdict_body(&verdict);
            out += &format!("flavor: {}\n", render::flavor_name(&flavor));
            out += &format!("slenderness: {}\n", render::slenderness(&slender));
            if let Some(f) = &fin {
                out += &format!("finiteness: {}\n", render::finiteness(f));
            }
            out
        }
    })
}

fn parse_rule(name: &str) -> Result<Rule, Fail> {
    use Rule::*;
    [Droms, WiseGordon, Abelian, Slender, McCammondWise, FreeProduct, Amalgam]
        .into_iter()
        .find(|r| r.name() == name)
        .ok_or_else(|| Fail::Input(format!("unknown rule `{name}`")))
}

fn census(cli: &Cli, args: &CensusArgs, engine: EngineConfig) -> Result<String, Fail> {
    let flavor: CensusFlavor = args.flavor.parse().map_err(|e: CensusError| Fail::Input(e.to_string()))?;
    let disabled = args.disable.iter().map(|s| parse_rule(s)).collect::<Result<Vec<_>, _>>()?;
    let mut config = CensusConfig::new(flavor, args.max_vertices);
    config.min_vertices = args.min_vertices;
    config.min_edges = args.min_edges;
    config.max_edges = args.max_edges;
    config.dedup = args.dedup;
    config.workers = cli.workers;
    config.out = args.out.clone();
    config.engine = engine.without(&disabled);
    let report = run_census(&config).map_err(|e| match e {
        CensusError::Engine(_) => Fail::Internal(e.to_string()),
        _ => Fail::Input(e.to_string()),
    })?;
    if let Some(path) = &args.csv {
        let file = fs::File::create(path).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))?;
        write_csv(&report, file).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))?;
    }
    if let Some(path) = &args.summary {
        let text = serde_json::to_string_pretty(&report).expect("report serialises");
        fs::write(path, text).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))?;
    }
    let smallest = smallest_incoherent(&report);
    let out = match cli.format {
        Format::Text => render::census_table(&report, &smallest),
        Format::Json => json_line(&json!({
            "report": report,
            "smallest_incoherent": smallest.as_ref().ok(),
            "coverage_error": smallest.as_ref().err().map(|e| e.to_string()),
        })),
    };
    if let Some(f) = report.verification_failures.first() {
        print!("{out}");
        return Err(Fail::Internal(format!(
            "{} record(s) failed re-verification; first: {} ({})",
            report.verification_failures.len(),
            f.key,
            f.failure
        )));
    }
    Ok(out)
}

const DECOMPOSE_LIMIT: usize = 5;

fn decompose(format: Format, g: &LabeledGraph) -> String {
    let (chordal, _) = is_chordal(g);
    let (kind, splits, note): (&str, Vec<Split>, Option<String>) = if chordal {
        match dirac_split(g) {
            Ok(s) => ("dirac", vec![s], None),
            Err(e) => ("dirac", Vec::new(), Some(e.to_string())),
        }
    } else {
        let n = g.vertex_count();
        let splits: Vec<Split> = enumerate_separator_splits(g, n.saturating_sub(2))
            .filter(|s| {
                g.induced_subgraph(&s.separator)
                    .map(|sep| is_slender(&sep).is_slender())
                    .unwrap_or(false)
            })
            .take(DECOMPOSE_LIMIT)
            .collect();
        let note = splits.is_empty().then(|| "no split along a slender separator".to_string());
        ("slender_separator", splits, note)
    };
    let ids = |set: &[usize]| g.ids(set);
    match format {
        Format::Json => json_line(&json!({
            "chordal": chordal,
            "kind": kind,
            "splits": splits.iter().map(|s| json!({
                "left": ids(&s.left),
                "right": ids(&s.right),
                "separator": ids(&s.separator),
            })).collect::<Vec<_>>(),
            "note": note,
        })),
        Format::Text => {
            let mut out = format!("chordal: {chordal}\n");
            for s in &splits {
                out += &format!(
                    "{kind} split: separator {} | left {} | right {}\n",
                    render::set(&ids(&s.separator)),
                    render::set(&ids(&s.left)),
                    render::set(&ids(&s.right))
                );
            }
            if let Some(n) = note {
                out += &format!("no split: {n}\n");
            }
            out
        }
    }
}
