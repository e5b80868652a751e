use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use orthograph::core::inversion::{build_blocks, invert_and_reconstruct};
use orthograph::core::polyspace::{expectation_graph, inner_product_within, orthopoly_within, Budget};
use orthograph::core::symnum::Style;
use orthograph::core::{Error, Graph, Setting};
use orthograph::format::{self, ParseError};
use orthograph::{fixtures, scan, tables, verify};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "orthograph", version, about = "Graph-indexed orthogonal polynomials for random vector inner products")]
struct Cli {
    /// Worker threads for the parallel enumerations.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expectation of the monomial m_G.
    Expect(Single),
    /// The orthogonal polynomial p_G.
    Orthopoly(Single),
    /// The inner product E[p_G p_H].
    Inner(Pair),
    /// Solve for p_G coefficients from target Fourier values.
    Invert(Invert),
    /// Regenerate a polynomial table.
    Table(Table),
    /// Run a verification suite, or `all`.
    Verify(Verify),
    /// Scan balanced pairs for the sign and planarity conjecture.
    Scan(Scan),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Latex,
}

#[derive(Clone, Copy, ValueEnum)]
enum SettingArg {
    Gaussian,
    Spherical,
    Boolean,
}

impl From<SettingArg> for Setting {
    fn from(s: SettingArg) -> Setting {
        match s {
            SettingArg::Gaussian => Setting::Gaussian,
            SettingArg::Spherical => Setting::Spherical,
            SettingArg::Boolean => Setting::Boolean,
        }
    }
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value = "spherical")]
    setting: SettingArg,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Edges per graph; unions may have twice as many.
    #[arg(long)]
    budget: Option<usize>,
    /// Also evaluate at this dimension.
    #[arg(long)]
    n: Option<i64>,
}

impl Common {
    fn budget(&self) -> Budget {
        self.budget.map_or_else(Budget::default, |b| Budget { max_edges: b, max_union_edges: 2 * b })
    }

    fn json(&self) -> bool {
        self.format == Some(Format::Json)
    }
}

#[derive(Args)]
struct Single {
    #[command(flatten)]
    common: Common,
    /// Inline JSON edge list, e.g. "[[1,2],[2,3]]".
    #[arg(long, conflicts_with = "g")]
    edges: Option<String>,
    /// Graph file (JSON) or built-in name.
    #[arg(long)]
    g: Option<String>,
}

#[derive(Args)]
struct Pair {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    g: String,
    #[arg(long)]
    h: String,
}

#[derive(Args)]
struct Invert {
    /// JSON file with `setting`, `n` and `targets`.
    #[arg(long)]
    targets: String,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct Table {
    #[arg(long, value_enum, default_value = "gaussian")]
    setting: SettingArg,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Edges (Gaussian, spherical) or degree (Boolean) of the largest row.
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Args)]
struct Verify {
    /// Suite name or `all`.
    suite: String,
    #[arg(long, env = "ORTHOGRAPH_SEED", default_value_t = verify::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct Scan {
    #[arg(long, value_enum, default_value = "spherical")]
    setting: SettingArg,
    /// Edges in the union.
    #[arg(long, default_value_t = 8)]
    budget: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

enum CliError {
    Usage(String),
    Failure(String),
    Budget(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Budget(_) | Error::SizeLimit { .. } => CliError::Budget(e.to_string()),
            Error::InvalidGraph(_) | Error::VertexSetMismatch | Error::SettingMismatch => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        match e {
            ParseError::Core(c) => c.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

type Out = Result<bool, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let out = match cli.command {
        Command::Expect(a) => expect(a),
        Command::Orthopoly(a) => orthopoly(a),
        Command::Inner(a) => inner(a),
        Command::Invert(a) => invert(a),
        Command::Table(a) => table(a),
        Command::Verify(a) => run_verify(a),
        Command::Scan(a) => run_scan(a),
    };
    match out {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Failure(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(CliError::Budget(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

/// Inline JSON, a built-in name, or a JSON file.
fn load_graph(spec: &str, setting: Setting) -> Result<Graph, CliError> {
    let t = spec.trim();
    if t.starts_with('[') || t.starts_with('{') {
        return Ok(format::graph_from_json(t, Some(setting))?);
    }
    if let Some(g) = fixtures::named(t, setting) {
        return Ok(g?);
    }
    let path = Path::new(t);
    if !path.exists() {
        let names: Vec<_> = fixtures::names().collect();
        return Err(CliError::Usage(format!("no file or built-in graph {t:?}; built-ins: {}", names.join(", "))));
    }
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{t}: {e}")))?;
    Ok(format::graph_from_json(&text, Some(setting))?)
}

fn single_graph(a: &Single) -> Result<Graph, CliError> {
    let setting = a.common.setting.into();
    match (&a.edges, &a.g) {
        (Some(e), _) => Ok(format::graph_from_json(e, Some(setting))?),
        (None, Some(g)) => load_graph(g, setting),
        (None, None) => Err(CliError::Usage("give --edges or --g".into())),
    }
}

fn emit(text: String, value: Value, json_out: bool) {
    if json_out {
        println!("{}", serde_json::to_string_pretty(&value).expect("JSON values serialize"));
    } else {
        println!("{text}");
    }
}

fn expect(a: Single) -> Out {
    let g = single_graph(&a)?;
    let e = expectation_graph(&g)?;
    let mut text = e.render(Style::Unicode);
    let mut value = json!({"graph": format::graph_to_json(&g), "expectation": format::ratfunc_to_json(&e)});
    if let Some(n) = a.common.n {
        let x = e.eval_int(n)?;
        text = format!("{text}\nn = {n}: {x}");
        value["n"] = json!(n);
        value["value"] = json!(x.to_string());
    }
    emit(text, value, a.common.json());
    Ok(true)
}

fn orthopoly(a: Single) -> Out {
    let g = single_graph(&a)?;
    let p = orthopoly_within(&g, &a.common.budget())?;
    let mut text = p.render(Style::Unicode);
    let mut value = json!({"graph": format::graph_to_json(&g), "poly": format::poly_to_json(&p)});
    if let Some(n) = a.common.n {
        let c = p.eval_at(n)?;
        text = format!("{text}\nn = {n}: {}", c.render(Style::Unicode));
        value["at_n"] = format::concrete_to_json(&c, n);
    }
    emit(text, value, a.common.json());
    Ok(true)
}

fn inner(a: Pair) -> Out {
    let setting = a.common.setting.into();
    let g = load_graph(&a.g, setting)?;
    let h = load_graph(&a.h, setting)?;
    let (g, h) = common_vertices(g, h)?;
    let v = inner_product_within(&g, &h, &a.common.budget())?;
    let mut text = v.render(Style::Unicode);
    let mut value = json!({
        "g": format::graph_to_json(&g),
        "h": format::graph_to_json(&h),
        "inner_product": format::ratfunc_to_json(&v),
    });
    if let Some(n) = a.common.n {
        let x = v.eval_int(n)?;
        text = format!("{text}\nn = {n}: {x}");
        value["n"] = json!(n);
        value["value"] = json!(x.to_string());
    }
    emit(text, value, a.common.json());
    Ok(true)
}

/// Both graphs over the union of their vertex sets.
fn common_vertices(g: Graph, h: Graph) -> Result<(Graph, Graph), CliError> {
    if g.vertices() == h.vertices() {
        return Ok((g, h));
    }
    let mut vs: Vec<_> = g.vertices().iter().chain(h.vertices()).copied().collect();
    vs.sort_unstable();
    vs.dedup();
    Ok((g.on_vertex_set(&vs)?, h.on_vertex_set(&vs)?))
}

fn invert(a: Invert) -> Out {
    let text = std::fs::read_to_string(&a.targets)
        .or_else(|_| if a.targets.trim_start().starts_with('{') { Ok(a.targets.clone()) } else { Err(()) })
        .map_err(|_| CliError::Usage(format!("cannot read {:?}", a.targets)))?;
    let (graphs, target) = format::fourier_target_from_json(&text)?;
    let blocks = build_blocks(&graphs)?;
    let r = invert_and_reconstruct(&blocks, &target)?;
    let exact = r.residual.iter().all(|(_, x)| x.is_zero());
    let coefficients: Vec<Value> = r
        .coefficients
        .iter()
        .map(|(g, c)| json!({"edges": format::edges_to_json(g.edges()), "coefficient": c.to_string()}))
        .collect();
    let residual: Vec<Value> = r
        .residual
        .iter()
        .map(|(g, c)| json!({"edges": format::edges_to_json(g.edges()), "residual": c.to_string()}))
        .collect();
    let mut lines: Vec<String> = r
        .coefficients
        .iter()
        .map(|(g, c)| format!("p[{}] {c}", g.monomial_string(Style::Unicode)))
        .collect();
    lines.push(format!("f = {}", r.poly.render(Style::Unicode)));
    lines.push(format!("residual zero: {exact}"));
    let value = json!({
        "n": target.n,
        "blocks": blocks.len(),
        "coefficients": coefficients,
        "poly": format::concrete_to_json(&r.poly, target.n),
        "residual": residual,
        "exact": exact,
    });
    emit(lines.join("\n"), value, a.format == Some(Format::Json));
    Ok(exact)
}

fn table(a: Table) -> Out {
    let setting = a.setting.into();
    let rows = tables::generate(setting, a.budget.unwrap_or_else(|| tables::default_extent(setting)))?;
    match a.format {
        Format::Text => print!("{}", tables::render_text(&rows, Style::Unicode)),
        Format::Csv => print!("{}", tables::render_csv(&rows)),
        Format::Latex => print!("{}", tables::render_latex(&rows)),
        Format::Json => println!("{}", serde_json::to_string_pretty(&tables::render_json(&rows)).expect("JSON values serialize")),
    }
    Ok(true)
}

fn run_verify(a: Verify) -> Out {
    let suites: Vec<&str> = if a.suite == "all" { verify::SUITES.to_vec() } else { vec![a.suite.as_str()] };
    let mut reports = Vec::new();
    for s in suites {
        match verify::run(s, a.seed) {
            None => return Err(CliError::Usage(format!("unknown suite {s:?}; known: all, {}", verify::SUITES.join(", ")))),
            Some(r) => reports.push(r?),
        }
    }
    let passed = reports.iter().all(verify::Report::passed);
    if a.format == Format::Json {
        let value = if reports.len() == 1 {
            reports[0].to_json()
        } else {
            json!({"passed": passed, "seed": a.seed, "suites": reports.iter().map(verify::Report::to_json).collect::<Vec<_>>()})
        };
        println!("{}", serde_json::to_string_pretty(&value).expect("JSON values serialize"));
    } else {
        for r in &reports {
            for c in &r.checks {
                let n = c.n.map(|n| format!(" [n = {n}]")).unwrap_or_default();
                println!("{:7} {}{n}: {} vs {}", c.status.name(), c.name, c.lhs, c.rhs);
            }
            println!(
                "{}: {} checks, {} failures, {} errata, {:.1}s",
                r.suite,
                r.checks.len(),
                r.failures().count(),
                r.errata().count(),
                r.seconds
            );
        }
    }
    Ok(passed)
}

fn run_scan(a: Scan) -> Out {
    if Setting::from(a.setting) != Setting::Spherical {
        return Err(CliError::Usage("the scan is defined for the spherical setting".into()));
    }
    let records = scan::scan(a.budget)?;
    let summary = scan::ScanSummary::of(&records);
    match a.format {
        Format::Json => {
            let value = json!({
                "budget": a.budget,
                "records": records.iter().map(scan::ScanRecord::to_json).collect::<Vec<_>>(),
                "summary": summary.to_json(),
            });
            println!("{}", serde_json::to_string_pretty(&value).expect("JSON values serialize"));
        }
        _ => {
            for r in &records {
                println!(
                    "{} | {} | {} | {:+} | {} | {}",
                    scan::edge_list(&r.g),
                    scan::edge_list(&r.h),
                    if r.union_planar { "planar" } else { "nonplanar" },
                    r.sign_at_large_n,
                    r.conjecture_status.name(),
                    r.inner_product.render(Style::Unicode)
                );
            }
            println!("{}", summary.to_json());
        }
    }
    Ok(true)
}
