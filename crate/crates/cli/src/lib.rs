//! The `hermite` command line: classification, witnesses, rank sampling,
//! interpolation spaces, interpolation solves and atlas tables.
//!
//! Every command builds one JSON value. `--format text` renders the same
//! data for reading; `--emit PATH` writes the JSON artifact to a file.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use hermite_core::functional::{
    build_matrix, random_nodes, sample_regularity, solve_interpolation, InterpolationData, SamplingReport,
};
use hermite_core::ideal::{border_basis, compute_quotient_basis, is_total_degree_space};
use hermite_core::linalg::exact_rank;
use hermite_core::poly::{monomials_up_to, parse_rational};
use hermite_core::scheme::{enumerate_and_classify, AtlasBounds};
use hermite_core::witness::{construct, WitnessProblem};
use hermite_core::{
    classify, ClassificationResult, Execution, MultiIndex, NodeSet, Polynomial, Scheme, Status,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

pub mod exit {
    pub const OK: u8 = 0;
    pub const USAGE: u8 = 1;
    pub const INFEASIBLE: u8 = 2;
    pub const UNKNOWN: u8 = 3;
    pub const VERIFICATION: u8 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Infeasible(String),
    #[error("{0}")]
    Undetermined(String),
    #[error(transparent)]
    Core(#[from] hermite_core::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Infeasible(_) => exit::INFEASIBLE,
            CliError::Undetermined(_) => exit::UNKNOWN,
            CliError::Core(hermite_core::Error::Verification(_)) => exit::VERIFICATION,
            _ => exit::USAGE,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "hermite", version, about = "Exact analysis of Hermite interpolation of total degree")]
pub struct RunConfig {
    /// Rendering of the result on stdout.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Also write the JSON artifact to this file.
    #[arg(long, global = true, value_name = "PATH")]
    pub emit: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide singularity or almost-regularity of a scheme.
    Classify(SchemeArgs),
    /// Build and verify a singularity witness.
    Witness {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[command(flatten)]
        nodes: NodeArgs,
    },
    /// Exact rank of the functional matrix on random or given nodes.
    Rank {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[command(flatten)]
        nodes: NodeArgs,
        #[arg(long, default_value_t = 20)]
        trials: u64,
    },
    /// Minimal interpolation space and border basis of a node configuration.
    Space(SpaceArgs),
    /// Solve a Hermite interpolation problem.
    Solve {
        #[command(flatten)]
        space: SpaceArgs,
        /// Interpolate the derivatives of this polynomial.
        #[arg(long, conflicts_with = "data", required_unless_present = "data")]
        target: Option<String>,
        /// Data file, one `node α_1 … α_d value` entry per line.
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = SolveBasis::Quotient)]
        basis: SolveBasis,
    },
    /// Classify every scheme in a range.
    Atlas {
        #[arg(long, default_value_t = 2)]
        d_min: u32,
        #[arg(long)]
        d_max: u32,
        #[arg(long)]
        m_max: usize,
        #[arg(long)]
        p_max: u32,
        /// Keep only rows with `m − d` at most this.
        #[arg(long)]
        extra_max: Option<u32>,
    },
}

#[derive(Args, Debug)]
pub struct SchemeArgs {
    #[arg(long, requires = "p", conflicts_with = "scheme")]
    pub d: Option<u32>,
    /// Comma-separated orders, e.g. `1,1,2`.
    #[arg(long, value_delimiter = ',', requires = "d")]
    pub p: Option<Vec<u32>>,
    /// `{"d": .., "p": [..]}` given inline or as a file path.
    #[arg(long, value_name = "JSON")]
    pub scheme: Option<String>,
}

#[derive(Args, Debug)]
pub struct NodeArgs {
    /// `random`, or a node file with one whitespace-separated node per line.
    #[arg(long, default_value = "random")]
    pub nodes: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 5)]
    pub bound: i64,
}

#[derive(Args, Debug)]
pub struct SpaceArgs {
    #[arg(long)]
    pub nodes: PathBuf,
    #[arg(long, value_delimiter = ',', required = true)]
    pub p: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SolveBasis {
    /// The minimal interpolation space of the nodes.
    Quotient,
    /// All polynomials of degree `≤ n`.
    Total,
}

#[derive(Deserialize)]
struct SchemeDescriptor {
    d: u32,
    p: Vec<u32>,
}

/// The printed result of a command together with its exit code.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub exit_code: u8,
}

/// Runs one command, writes its rendering to `out` and emits the artifact.
pub fn run(config: &RunConfig, out: &mut dyn Write) -> Result<u8> {
    let report = execute(&config.command)?;
    let rendered = match config.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&report.json)?),
        Format::Text => report.text,
    };
    out.write_all(rendered.as_bytes())?;
    if let Some(path) = &config.emit {
        let body = format!("{}\n", serde_json::to_string_pretty(&report.json)?);
        std::fs::write(path, body).map_err(|source| CliError::Io { path: path.clone(), source })?;
    }
    Ok(report.exit_code)
}

pub fn execute(command: &Command) -> Result<Report> {
    match command {
        Command::Classify(args) => classify_command(args),
        Command::Witness { scheme, nodes } => witness_command(scheme, nodes),
        Command::Rank { scheme, nodes, trials } => rank_command(scheme, nodes, *trials),
        Command::Space(args) => space_command(args),
        Command::Solve { space, target, data, basis } => {
            solve_command(space, target.as_deref(), data.as_deref(), *basis)
        }
        Command::Atlas { d_min, d_max, m_max, p_max, extra_max } => {
            let mut bounds = AtlasBounds::new(*d_max, *p_max, *m_max);
            bounds.d_min = *d_min;
            bounds.extra_nodes_max = *extra_max;
            atlas_command(&bounds)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn scheme_from(args: &SchemeArgs) -> Result<Scheme> {
    let (d, p) = match (&args.d, &args.p, &args.scheme) {
        (Some(d), Some(p), None) => (*d, p.clone()),
        (None, None, Some(json)) => {
            let text = if json.trim_start().starts_with('{') { json.clone() } else { read(Path::new(json))? };
            let desc: SchemeDescriptor = serde_json::from_str(&text)?;
            (desc.d, desc.p)
        }
        _ => return Err(CliError::Usage("give either --d and --p or --scheme".into())),
    };
    Ok(Scheme::new(d, p)?)
}

fn feasible_degree(scheme: &Scheme) -> Result<u32> {
    scheme.n().ok_or_else(|| {
        CliError::Infeasible(format!("{scheme}: no degree n with dim Π_n^d equal to the condition count"))
    })
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn opt<T: ToString>(value: Option<T>) -> String {
    value.map_or_else(|| "none".to_string(), |v| v.to_string())
}

fn classification_text(r: &ClassificationResult) -> String {
    let corroborating = if r.corroborating.is_empty() {
        "none".to_string()
    } else {
        r.corroborating.iter().map(|c| c.id()).collect::<Vec<_>>().join(", ")
    };
    format!(
        "d={} p=({}) m={} n={}\nstatus: {}\nrule: {}\ncorroborating: {}\nwitness recipe: {}\n",
        r.d,
        join(&r.p, ","),
        r.m,
        opt(r.n),
        r.status,
        r.rule.id(),
        corroborating,
        opt(r.witness_recipe)
    )
}

fn classify_command(args: &SchemeArgs) -> Result<Report> {
    let scheme = scheme_from(args)?;
    let result = classify(scheme.d(), scheme.p())?;
    let exit_code = match result.status {
        Status::Infeasible => exit::INFEASIBLE,
        Status::Unknown => exit::UNKNOWN,
        Status::Singular | Status::AlmostRegular => exit::OK,
    };
    Ok(Report { json: serde_json::to_value(&result)?, text: classification_text(&result), exit_code })
}

/// Nodes for a scheme: the given file, or trial `0` of the seeded sampler.
fn nodes_for(scheme: &Scheme, args: &NodeArgs) -> Result<NodeSet> {
    let d = scheme.d() as usize;
    let nodes = if args.nodes == "random" {
        random_nodes(scheme.m(), d, args.bound, args.seed, 0)?
    } else {
        NodeSet::parse(&read(Path::new(&args.nodes))?)?
    };
    if nodes.len() != scheme.m() || nodes.dim() != d {
        return Err(CliError::Usage(format!(
            "expected {} nodes in dimension {d}, the node file has {} in dimension {}",
            scheme.m(),
            nodes.len(),
            nodes.dim()
        )));
    }
    Ok(nodes)
}

#[derive(Serialize)]
struct TraceOut {
    factor: String,
    exponent: u32,
    through_nodes: Vec<usize>,
}

#[derive(Serialize)]
struct WitnessOut {
    d: u32,
    p: Vec<u32>,
    n: u32,
    recipe: String,
    nodes: NodeSet,
    degree: i64,
    polynomial: String,
    trace: Vec<TraceOut>,
    verified: bool,
}

fn witness_command(scheme_args: &SchemeArgs, node_args: &NodeArgs) -> Result<Report> {
    // Orders as given pair with the node file rows; the scheme keeps them sorted.
    let given = match (&scheme_args.p, &scheme_args.scheme) {
        (Some(p), _) => Some(p.clone()),
        _ => None,
    };
    let scheme = scheme_from(scheme_args)?;
    let n = feasible_degree(&scheme)?;
    let result = classify(scheme.d(), scheme.p())?;
    if result.status == Status::Unknown {
        return Err(CliError::Undetermined(format!("{scheme}: classification unknown, no witness")));
    }
    let Some(recipe) = result.witness_recipe else {
        return Err(CliError::Usage(format!(
            "{scheme}: {} ({}); no witness construction applies",
            result.status,
            result.rule.id()
        )));
    };
    let nodes = nodes_for(&scheme, node_args)?;
    let orders = given.filter(|_| node_args.nodes != "random").unwrap_or_else(|| scheme.p().to_vec());
    // sort nodes by order, remembering where each came from
    let mut perm: Vec<usize> = (0..orders.len()).collect();
    perm.sort_by_key(|&i| (orders[i], i));
    let sorted_nodes = nodes.subset(&perm)?;
    let problem = WitnessProblem::new(sorted_nodes, scheme.p().to_vec(), n)?;
    let witness = construct(recipe, &problem)?;
    let original = WitnessProblem::new(nodes.clone(), orders.clone(), n)?;
    if !hermite_core::witness::verify_witness(&witness, &original) {
        return Err(hermite_core::Error::Verification(format!(
            "{scheme}: witness failed on the input nodes"
        ))
        .into());
    }
    let trace: Vec<TraceOut> = witness
        .trace()
        .iter()
        .map(|e| {
            let mut through: Vec<usize> = e.through_nodes.iter().map(|&i| perm[i]).collect();
            through.sort_unstable();
            TraceOut {
                factor: e.factor.to_polynomial().to_string(),
                exponent: e.exponent,
                through_nodes: through,
            }
        })
        .collect();
    let out = WitnessOut {
        d: scheme.d(),
        p: orders,
        n,
        recipe: recipe.to_string(),
        nodes,
        degree: witness.degree(),
        polynomial: witness.polynomial().to_string(),
        trace,
        verified: true,
    };
    let mut text = format!("d={} p=({}) n={n}\nrecipe: {}\nnodes:\n", out.d, join(&out.p, ","), out.recipe);
    for (i, x) in out.nodes.points().iter().enumerate() {
        let _ = writeln!(text, "  {i}: {x}");
    }
    let _ = writeln!(text, "witness (degree {}): {}", out.degree, out.polynomial);
    text.push_str("trace:\n");
    for e in &out.trace {
        let _ = writeln!(text, "  ({})^{} through [{}]", e.factor, e.exponent, join(&e.through_nodes, ", "));
    }
    text.push_str("verified: true\n");
    Ok(Report { json: serde_json::to_value(&out)?, text, exit_code: exit::OK })
}

#[derive(Serialize)]
struct SingleRank {
    d: u32,
    p: Vec<u32>,
    n: u32,
    conditions: usize,
    rank: usize,
    full_rank: bool,
    nodes: NodeSet,
}

fn sampling_text(r: &SamplingReport) -> String {
    let mut text = format!(
        "d={} p=({}) n={}: full rank on {}/{} draws (N={}, bound {}, seed {})\nranks: [{}]\n",
        r.d,
        join(&r.p, ","),
        r.n,
        r.full_rank_count,
        r.trials,
        r.conditions,
        r.bound,
        r.seed,
        join(&r.ranks, ", ")
    );
    for f in &r.failing {
        let nodes: Vec<String> = f.nodes.points().iter().map(ToString::to_string).collect();
        let _ = writeln!(text, "trial {}: rank {} at [{}]", f.trial, f.rank, nodes.join("; "));
    }
    text
}

fn rank_command(scheme_args: &SchemeArgs, node_args: &NodeArgs, trials: u64) -> Result<Report> {
    let scheme = scheme_from(scheme_args)?;
    let n = feasible_degree(&scheme)?;
    if node_args.nodes == "random" {
        let report = sample_regularity(&scheme, trials, node_args.bound, node_args.seed)?;
        let text = sampling_text(&report);
        return Ok(Report { json: serde_json::to_value(&report)?, text, exit_code: exit::OK });
    }
    let nodes = nodes_for(&scheme, node_args)?;
    let p = scheme_args.p.clone().unwrap_or_else(|| scheme.p().to_vec());
    let basis = monomials_up_to(scheme.d() as usize, n);
    let rank = exact_rank(&build_matrix(&nodes, &p, &basis)?);
    let out = SingleRank {
        d: scheme.d(),
        p,
        n,
        conditions: basis.len(),
        rank,
        full_rank: rank == basis.len(),
        nodes,
    };
    let text = format!(
        "d={} p=({}) n={}: rank {}/{} ({})\n",
        out.d,
        join(&out.p, ","),
        n,
        rank,
        out.conditions,
        if out.full_rank { "full" } else { "deficient" }
    );
    Ok(Report { json: serde_json::to_value(&out)?, text, exit_code: exit::OK })
}

fn space_nodes(args: &SpaceArgs) -> Result<NodeSet> {
    let nodes = NodeSet::parse(&read(&args.nodes)?)?;
    if nodes.len() != args.p.len() {
        return Err(CliError::Usage(format!("{} nodes but {} orders", nodes.len(), args.p.len())));
    }
    Ok(nodes)
}

#[derive(Serialize)]
struct BorderOut {
    leading: MultiIndex,
    polynomial: String,
}

#[derive(Serialize)]
struct SpaceOut {
    d: usize,
    p: Vec<u32>,
    nodes: NodeSet,
    functionals: usize,
    max_degree: Option<u32>,
    /// `n` when the quotient monomials are exactly those of degree `≤ n`.
    total_degree: Option<u32>,
    quotient: Vec<MultiIndex>,
    border: Vec<BorderOut>,
}

fn space_command(args: &SpaceArgs) -> Result<Report> {
    let nodes = space_nodes(args)?;
    let quotient = compute_quotient_basis(&nodes, &args.p)?;
    let border = border_basis(&nodes, &args.p, &quotient)?;
    let d = nodes.dim();
    let total_degree = quotient.max_degree().filter(|&k| is_total_degree_space(&quotient, k, d));
    let out = SpaceOut {
        d,
        p: args.p.clone(),
        nodes,
        functionals: quotient.len(),
        max_degree: quotient.max_degree(),
        total_degree,
        quotient: quotient.monomials().to_vec(),
        border: border
            .elements
            .iter()
            .map(|e| BorderOut { leading: e.leading.clone(), polynomial: e.polynomial.to_string() })
            .collect(),
    };
    let mut text = format!(
        "d={} p=({}) N={}\nquotient (max degree {}, total degree {}):\n",
        d,
        join(&out.p, ","),
        out.functionals,
        opt(out.max_degree),
        opt(out.total_degree)
    );
    for a in &out.quotient {
        let _ = writeln!(text, "  x^{a}");
    }
    text.push_str("border:\n");
    for b in &out.border {
        let _ = writeln!(text, "  [{}] {}", b.leading, b.polynomial);
    }
    Ok(Report { json: serde_json::to_value(&out)?, text, exit_code: exit::OK })
}

fn parse_data(text: &str, dim: usize) -> Result<InterpolationData> {
    let mut data = InterpolationData::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad =
            || CliError::Usage(format!("data line {}: expected node, {dim} exponents, value", lineno + 1));
        if fields.len() != dim + 2 {
            return Err(bad());
        }
        let node: usize = fields[0].parse().map_err(|_| bad())?;
        let alpha =
            fields[1..=dim].iter().map(|f| f.parse::<u32>().map_err(|_| bad())).collect::<Result<_>>()?;
        data.insert(node, MultiIndex::new(alpha), parse_rational(fields[dim + 1])?);
    }
    Ok(data)
}

#[derive(Serialize)]
struct SolveOut {
    basis: &'static str,
    dimension: usize,
    polynomial: String,
}

fn solve_command(
    args: &SpaceArgs,
    target: Option<&str>,
    data_path: Option<&Path>,
    basis_kind: SolveBasis,
) -> Result<Report> {
    let nodes = space_nodes(args)?;
    let d = nodes.dim();
    let data = match (target, data_path) {
        (Some(t), None) => InterpolationData::of_polynomial(&nodes, &args.p, &Polynomial::parse(d, t)?)?,
        (None, Some(path)) => parse_data(&read(path)?, d)?,
        _ => return Err(CliError::Usage("give exactly one of --target and --data".into())),
    };
    let (name, basis) = match basis_kind {
        SolveBasis::Quotient => ("quotient", compute_quotient_basis(&nodes, &args.p)?.monomials().to_vec()),
        SolveBasis::Total => {
            let scheme = Scheme::new(d as u32, args.p.clone())?;
            ("total", monomials_up_to(d, feasible_degree(&scheme)?))
        }
    };
    let Some(f) = solve_interpolation(&nodes, &args.p, &data, &basis)? else {
        return Err(CliError::Undetermined("the interpolation matrix is singular on these nodes".into()));
    };
    let out = SolveOut { basis: name, dimension: basis.len(), polynomial: f.to_string() };
    let text = format!("{}\n", out.polynomial);
    Ok(Report { json: serde_json::to_value(&out)?, text, exit_code: exit::OK })
}

fn atlas_command(bounds: &AtlasBounds) -> Result<Report> {
    let rows = enumerate_and_classify(bounds, Execution::default())?;
    let results: Vec<&ClassificationResult> = rows.iter().map(|(_, r)| r).collect();
    let mut text = format!(
        "{:<3} {:<3} {:<24} {:<4} {:<14} {:<28} {}\n",
        "d", "m", "p", "n", "status", "rule", "recipe"
    );
    for r in &results {
        let _ = writeln!(
            text,
            "{:<3} {:<3} {:<24} {:<4} {:<14} {:<28} {}",
            r.d,
            r.m,
            format!("({})", join(&r.p, ",")),
            opt(r.n),
            r.status.to_string(),
            r.rule.id(),
            opt(r.witness_recipe)
        );
    }
    Ok(Report { json: serde_json::to_value(&results)?, text, exit_code: exit::OK })
}
