use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde::Serialize;

use scattered::decomp::{balance, depth_bound, heuristic_decomposition, make_nice, parse_td, validate_decomposition, write_td, TreeDecomposition};
use scattered::gadgets::{self, GadgetOutput};
use scattered::graph_core::{all_pairs_distances, parse_graph, parse_vertex_set, scatter_violation, write_graph, write_vertex_set};
use scattered::oracle::{brute_force_max, gen_random_graph, RandomSpec};
use scattered::tw_approx::{approx_max_scattered, parse_rational, satisfies_slack, Rational};
use scattered::tw_exact::{count_scattered, max_scattered};
use scattered::vc_fpt::max_scattered_vc;
use scattered::{Error, VertexSet, WeightedGraph};

#[derive(Parser)]
#[command(name = "dss", version, about = "d-Scattered Set solvers and instance generators")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the counting DP.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Maximum d-scattered set.
    Solve(SolveArgs),
    /// Number of d-scattered sets of each size 0..=k.
    Count(CountArgs),
    /// Generate instances.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Build a tree decomposition.
    Decompose(DecomposeArgs),
    /// Check a decomposition or a claimed scattered set.
    Validate(ValidateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Tw,
    Vc,
    Approx,
    Brute,
}

impl Algo {
    fn name(self) -> &'static str {
        match self {
            Algo::Tw => "tw",
            Algo::Vc => "vc",
            Algo::Approx => "approx",
            Algo::Brute => "brute",
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    d: u64,
    #[arg(long, value_enum, default_value = "tw")]
    algo: Algo,
    #[arg(long)]
    td: Option<PathBuf>,
    /// Slack for `--algo approx`, as `num/den`.
    #[arg(long)]
    epsilon: Option<String>,
    /// Also report whether the optimum reaches k.
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    d: u64,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    td: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Seeded random graph.
    Random {
        #[arg(long)]
        n: usize,
        /// Edge probability as `num/den`.
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 1)]
        max_weight: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weighted instance with a small vertex cover, from multicolored independent set.
    W1vc(McisArgs),
    /// Unit-weight instance with a small feedback vertex set, from multicolored independent set.
    Fvs(McisArgs),
    /// Treewidth instance from CNF.
    Seth {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        epsilon: String,
        #[arg(long)]
        assignment: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tree-depth instance from 3-CNF.
    Tdeth {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        assignment: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct McisArgs {
    #[arg(long)]
    mcis: PathBuf,
    /// One 1-based index per class.
    #[arg(long)]
    assignment: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DecomposeArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    balance: bool,
    #[arg(long)]
    nice: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, conflicts_with_all = ["set", "d"], required_unless_present = "set")]
    td: Option<PathBuf>,
    #[arg(long, requires = "d")]
    set: Option<PathBuf>,
    #[arg(long)]
    d: Option<u64>,
}

#[derive(Serialize, Default)]
struct Report {
    command: String,
    solver: Option<String>,
    size: Option<usize>,
    counts: Option<Vec<String>>,
    /// 1-based vertex ids.
    witness: Option<Vec<usize>>,
    valid: Option<bool>,
    elapsed_ms: u128,
    params: BTreeMap<String, String>,
    details: BTreeMap<String, String>,
}

enum Failure {
    Validation(Box<Report>),
    Usage(String),
    Precondition(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::Graph(_) => Failure::Usage(e.to_string()),
            _ => Failure::Precondition(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<Report, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<WeightedGraph, Failure> {
    Ok(parse_graph(&read(path)?)?)
}

fn load_td(path: Option<&PathBuf>, g: &WeightedGraph) -> Result<TreeDecomposition, Failure> {
    match path {
        Some(p) => {
            let td = parse_td(&read(p)?)?;
            validate_decomposition(g, &td).map_err(|v| Failure::Precondition(format!("invalid decomposition: {v}")))?;
            Ok(td)
        }
        None => Ok(heuristic_decomposition(g)),
    }
}

/// `num/den` or an integer; decimals are refused so the slack check stays exact.
fn cli_rational(text: &str) -> Result<Rational, Failure> {
    if text.contains('.') {
        return Err(Failure::Usage(format!("write `{text}` as num/den")));
    }
    Ok(parse_rational(text)?)
}

fn one_based(k: &VertexSet) -> Vec<usize> {
    k.members().iter().map(|v| v + 1).collect()
}

fn solve(a: &SolveArgs) -> Outcome {
    let g = load_graph(&a.graph)?;
    let mut r = Report { command: "solve".into(), solver: Some(a.algo.name().into()), ..Default::default() };
    r.params.insert("d".into(), a.d.to_string());
    let epsilon = match (&a.epsilon, a.algo) {
        (Some(e), Algo::Approx) => Some(cli_rational(e)?),
        (None, Algo::Approx) => return Err(Failure::Usage("--algo approx needs --epsilon".into())),
        (Some(_), _) => return Err(Failure::Usage("--epsilon only applies to --algo approx".into())),
        (None, _) => None,
    };
    let (size, witness) = match a.algo {
        Algo::Tw => {
            let td = load_td(a.td.as_ref(), &g)?;
            r.details.insert("width".into(), td.width().to_string());
            max_scattered(&g, &make_nice(&td)?, a.d)?
        }
        Algo::Vc => max_scattered_vc(&g, a.d, None)?,
        Algo::Approx => {
            let td = load_td(a.td.as_ref(), &g)?;
            approx_max_scattered(&g, &td, a.d, epsilon.as_ref().unwrap())?
        }
        Algo::Brute => brute_force_max(&g, a.d)?,
    };
    let ok = match &epsilon {
        Some(eps) => {
            r.params.insert("epsilon".into(), eps.to_string());
            satisfies_slack(&all_pairs_distances(&g)?, &witness, a.d, eps)
        }
        None => scatter_violation(&g, &witness, a.d).is_none(),
    };
    if !ok || witness.len() != size {
        return Err(Failure::Internal(format!("witness {:?} failed re-validation", one_based(&witness))));
    }
    if let Some(k) = a.k {
        r.params.insert("k".into(), k.to_string());
        r.details.insert("reaches_k".into(), (size >= k).to_string());
    }
    r.size = Some(size);
    r.witness = Some(one_based(&witness));
    r.valid = Some(true);
    Ok(r)
}

fn count(a: &CountArgs) -> Outcome {
    let g = load_graph(&a.graph)?;
    let td = load_td(a.td.as_ref(), &g)?;
    let counts = count_scattered(&g, &make_nice(&td)?, a.d, a.k)?;
    let mut r = Report { command: "count".into(), solver: Some("tw".into()), ..Default::default() };
    r.params.insert("d".into(), a.d.to_string());
    r.params.insert("k".into(), a.k.to_string());
    r.counts = Some(counts.iter().map(|c| c.to_string()).collect());
    Ok(r)
}

fn emit_graph(out: Option<&PathBuf>, g: &WeightedGraph, r: &mut Report) -> Result<(), Failure> {
    match out {
        Some(prefix) => {
            let path = prefix.with_extension("dss");
            write(&path, &write_graph(g))?;
            r.details.insert("graph_file".into(), path.display().to_string());
        }
        None => print!("{}", write_graph(g)),
    }
    Ok(())
}

fn emit_gadget(name: &str, out: Option<&PathBuf>, o: GadgetOutput) -> Outcome {
    let mut r = Report { command: format!("gen {name}"), solver: None, ..Default::default() };
    r.params = o.params.clone();
    r.params.insert("d".into(), o.d.to_string());
    r.params.insert("target_size".into(), o.target_size.to_string());
    r.details.insert("vertices".into(), o.graph.n().to_string());
    r.details.insert("edges".into(), o.graph.m().to_string());
    r.details.insert("certificate_kind".into(), o.certificate_kind.name().into());
    if !o.certificate_holds() {
        return Err(Failure::Internal("certificate failed its check".into()));
    }
    if let Some(w) = &o.witness {
        if w.len() != o.target_size || scatter_violation(&o.graph, w, o.d).is_some() {
            return Err(Failure::Internal("generated witness failed re-validation".into()));
        }
        r.size = Some(w.len());
        r.witness = Some(one_based(w));
        r.valid = Some(true);
    }
    if let Some(why) = &o.refusal {
        r.details.insert("witness_refused".into(), why.clone());
    }
    emit_graph(out, &o.graph, &mut r)?;
    if let Some(prefix) = out {
        if let Some(w) = &o.witness {
            write(&prefix.with_extension("witness"), &write_vertex_set(w))?;
        }
        if o.certificate_kind != gadgets::CertificateKind::None {
            write(&prefix.with_extension("certificate"), &write_vertex_set(&o.certificate))?;
        }
        let manifest = serde_json::to_string_pretty(&r.params).map_err(|e| Failure::Internal(e.to_string()))?;
        write(&prefix.with_extension("params.json"), &(manifest + "\n"))?;
    }
    Ok(r)
}

fn load_assignment(path: Option<&PathBuf>, num_vars: usize) -> Result<Option<Vec<bool>>, Failure> {
    path.map(|p| Ok(gadgets::parse_literals(&read(p)?, num_vars)?)).transpose()
}

fn gen(c: &GenCommand) -> Outcome {
    match c {
        GenCommand::Random { n, p, max_weight, seed, out } => {
            let prob = p
                .split_once('/')
                .and_then(|(a, b)| Some(Ratio::new(a.trim().parse().ok()?, b.trim().parse().ok().filter(|&x: &u64| x > 0)?)))
                .ok_or_else(|| Failure::Usage(format!("--p expects num/den, got `{p}`")))?;
            let g = gen_random_graph(&RandomSpec { n: *n, edge_probability: prob, max_weight: *max_weight, seed: *seed })?;
            let mut r = Report { command: "gen random".into(), ..Default::default() };
            r.params.insert("seed".into(), seed.to_string());
            r.params.insert("p".into(), prob.to_string());
            r.details.insert("vertices".into(), g.n().to_string());
            r.details.insert("edges".into(), g.m().to_string());
            emit_graph(out.as_ref(), &g, &mut r)?;
            Ok(r)
        }
        GenCommand::W1vc(a) | GenCommand::Fvs(a) => {
            let inst = gadgets::parse_mcis(&read(&a.mcis)?)?;
            let sel = a.assignment.as_ref().map(|p| Ok::<_, Failure>(gadgets::parse_selection(&read(p)?, &inst)?)).transpose()?;
            let (name, o) = match c {
                GenCommand::W1vc(_) => ("w1vc", gadgets::gen_w1_vc(&inst, sel.as_deref())?),
                _ => ("fvs", gadgets::gen_fvs_unweighted(&inst, sel.as_deref())?),
            };
            emit_gadget(name, a.out.as_ref(), o)
        }
        GenCommand::Seth { cnf, d, epsilon, assignment, out } => {
            let phi = gadgets::parse_cnf(&read(cnf)?)?;
            let eps = cli_rational(epsilon)?;
            let values = load_assignment(assignment.as_ref(), phi.num_vars)?;
            emit_gadget("seth", out.as_ref(), gadgets::gen_seth(&phi, *d, &eps, values.as_deref())?)
        }
        GenCommand::Tdeth { cnf, assignment, out } => {
            let phi = gadgets::parse_cnf(&read(cnf)?)?;
            let values = load_assignment(assignment.as_ref(), phi.num_vars)?;
            emit_gadget("tdeth", out.as_ref(), gadgets::gen_td_eth(&phi, values.as_deref())?)
        }
    }
}

fn decompose(a: &DecomposeArgs) -> Outcome {
    let g = load_graph(&a.graph)?;
    let base = heuristic_decomposition(&g);
    let w = base.width();
    let mut td = base;
    let mut r = Report { command: "decompose".into(), ..Default::default() };
    if a.balance {
        td = balance(&td, &g)?;
        let bound = depth_bound(g.n());
        if td.width() > 3 * w + 2 || td.depth() > bound {
            return Err(Failure::Internal(format!("balanced width {} / depth {} exceed bounds", td.width(), td.depth())));
        }
        r.details.insert("depth_bound".into(), bound.to_string());
    }
    if a.nice {
        let nd = make_nice(&td)?;
        nd.validate(&g).map_err(|v| Failure::Internal(format!("nice form invalid: {v}")))?;
        td = nd.as_tree_decomposition();
    }
    let width = validate_decomposition(&g, &td).map_err(|v| Failure::Internal(format!("output invalid: {v}")))?;
    let text = write_td(&td, g.n());
    let reparsed = parse_td(&text)?;
    validate_decomposition(&g, &reparsed).map_err(|v| Failure::Internal(format!("round trip invalid: {v}")))?;
    r.details.insert("width".into(), width.to_string());
    r.details.insert("depth".into(), td.depth().to_string());
    r.details.insert("bags".into(), td.bags.len().to_string());
    r.valid = Some(true);
    match &a.out {
        Some(p) => write(p, &text)?,
        None => print!("{text}"),
    }
    Ok(r)
}

fn validate(a: &ValidateArgs) -> Outcome {
    let g = load_graph(&a.graph)?;
    let mut r = Report { command: "validate".into(), ..Default::default() };
    if let Some(p) = &a.td {
        let td = parse_td(&read(p)?)?;
        match validate_decomposition(&g, &td) {
            Ok(w) => {
                r.details.insert("width".into(), w.to_string());
                r.valid = Some(true);
                Ok(r)
            }
            Err(v) => {
                r.details.insert("violation".into(), v.to_string());
                r.valid = Some(false);
                Err(Failure::Validation(Box::new(r)))
            }
        }
    } else {
        let d = a.d.unwrap();
        let set = parse_vertex_set(&read(a.set.as_ref().unwrap())?, g.n())?;
        r.params.insert("d".into(), d.to_string());
        r.size = Some(set.len());
        r.witness = Some(one_based(&set));
        match scatter_violation(&g, &set, d) {
            None => {
                r.valid = Some(true);
                Ok(r)
            }
            Some((u, v, dist)) => {
                r.details.insert("violation".into(), format!("{} {} dist {dist}", u + 1, v + 1));
                r.valid = Some(false);
                Err(Failure::Validation(Box::new(r)))
            }
        }
    }
}

fn print_report(r: &Report, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(r).expect("report serializes"));
        return;
    }
    let to_stderr = r.command.starts_with("gen") || r.command == "decompose";
    let mut lines = Vec::new();
    if let Some(s) = r.size {
        lines.push(format!("size {s}"));
    }
    if let Some(c) = &r.counts {
        lines.push(format!("counts {}", c.join(" ")));
    }
    if let Some(w) = &r.witness {
        lines.push(format!("witness {}", w.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")));
    }
    for (k, v) in r.params.iter().chain(&r.details) {
        lines.push(format!("{k} {v}"));
    }
    if let Some(v) = r.valid {
        lines.push(format!("valid {v}"));
    }
    for l in lines {
        if to_stderr {
            eprintln!("{l}");
        } else {
            println!("{l}");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let result = match &cli.cmd {
        Command::Solve(a) => solve(a),
        Command::Count(a) => count(a),
        Command::Gen(c) => gen(c),
        Command::Decompose(a) => decompose(a),
        Command::Validate(a) => validate(a),
    };
    match result {
        Ok(mut r) => {
            r.elapsed_ms = start.elapsed().as_millis();
            print_report(&r, cli.json);
            ExitCode::SUCCESS
        }
        Err(Failure::Validation(r)) => {
            let mut r = *r;
            r.elapsed_ms = start.elapsed().as_millis();
            print_report(&r, cli.json);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(4)
        }
    }
}
