//! The `hodos` command line.

pub mod checks;
pub mod graph_spec;
pub mod input;
pub mod output;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use hodos_core::expanders::power_iteration_lambda;
use hodos_core::instances::{random_graph, random_partite_complex};
use hodos_core::mixing::{compare_walks, DEFAULT_CAP_STATES, DEFAULT_EPSILON};
use hodos_core::operators::{
    down_up, expanderized_down_up, expanderized_up_down, run_trajectory, scan_sweep, up_down,
    ChainState, WalkKind, WalkSpec,
};
use hodos_core::report::Mode;
use hodos_core::spectral::{spectrum, REVERSIBILITY_TOL};
use hodos_core::subsets::binomial;
use hodos_core::{Complex, LabelledRegularGraph, WalkOperator};
use serde::{Deserialize, Serialize};

use checks::{summarize, verify_instance, Options, Row};
use graph_spec::parse_graph;
use input::{Instance, Kind};
use output::{json, Artifacts, Csv};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_ASSERTION: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "hodos",
    version,
    about = "Higher-order random walks on weighted simplicial complexes"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Directory for artifacts; without it results only go to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
    /// Largest state space handled by dense matrix routines.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP_STATES)]
    cap_states: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("input").required(true).args(["complex", "ising", "coloring"])))]
struct InputArgs {
    /// Weighted complex JSON.
    #[arg(long)]
    complex: Option<PathBuf>,
    /// Ising model JSON `{"J": [[…]], "h": […]}`.
    #[arg(long)]
    ising: Option<PathBuf>,
    /// List-coloring JSON `{"edges": [[u, v], …], "lists": [[…], …]}`.
    #[arg(long)]
    coloring: Option<PathBuf>,
}

impl InputArgs {
    fn load(&self) -> Result<Instance> {
        let (path, kind) = match (&self.complex, &self.ising, &self.coloring) {
            (Some(p), _, _) => (p, Kind::Complex),
            (_, Some(p), _) => (p, Kind::Ising),
            (_, _, Some(p)) => (p, Kind::Coloring),
            _ => bail!("one of --complex, --ising or --coloring is required"),
        };
        input::load(path, kind)
    }
}

#[derive(Args, Debug)]
struct LevelArgs {
    /// Level ℓ; defaults to n − 1.
    #[arg(long)]
    ell: Option<usize>,
    /// Auxiliary graph on the ℓ-subsets: `cycle`, `cycle:6`, `clique_loops`,
    /// `complete`, `self_loops`, `hypercube:d`, `rr:k=4,lam=0.9` or a file.
    #[arg(long)]
    graph: Option<String>,
}

impl LevelArgs {
    fn ell(&self, x: &Complex) -> Result<usize> {
        let n = x.rank();
        let ell = self.ell.unwrap_or(n.saturating_sub(1));
        if ell > n {
            bail!("--ell {ell} exceeds the rank {n}");
        }
        Ok(ell)
    }

    fn graph(&self, x: &Complex, ell: usize, seed: u64) -> Result<Option<LabelledRegularGraph>> {
        let m = binomial(x.rank(), ell) as usize;
        self.graph
            .as_deref()
            .map(|s| parse_graph(s, Some(m), seed))
            .transpose()
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Spectrum of one walk; writes spectra.json and eigenvalues.csv.
    Spectra {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long, default_value = "down-up")]
        walk: String,
    },
    /// Runs every check on one instance; writes verify.json and verify.csv.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        level: LevelArgs,
        /// Check every level 1 ≤ ℓ < n instead of a single one.
        #[arg(long, conflicts_with = "ell")]
        all_levels: bool,
    },
    /// Exact mixing times of every walk; writes mix.json and one tv_curve CSV per walk.
    Mix {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long, default_value_t = 1000)]
        t_max: usize,
    },
    /// Runs the sampler; writes trajectory.csv and walk_spec.json.
    Sample {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long, default_value = "down-up", conflicts_with = "walk_spec")]
        walk: String,
        /// Walk spec JSON `{"kind", "ell", "graph"}`, replacing --walk, --ell and --graph.
        #[arg(long)]
        walk_spec: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        steps: u64,
        /// Initial state index.
        #[arg(long, default_value_t = 0)]
        start: usize,
        /// Initial subset rank for the expanderized down-up walk.
        #[arg(long, default_value_t = 0)]
        subset: usize,
    },
    /// Builds a graph and reports its spectrum; writes expander.json and graph.txt.
    Expander {
        #[arg(long)]
        graph: String,
        /// Vertex count for shorthands that do not fix it.
        #[arg(long)]
        vertices: Option<usize>,
    },
    /// Writes the complex of an instance (or a random one) as complex JSON.
    #[command(group(ArgGroup::new("source").required(true).args(["ising", "coloring", "random_rank"])))]
    Build {
        #[arg(long)]
        ising: Option<PathBuf>,
        #[arg(long)]
        coloring: Option<PathBuf>,
        /// Rank of a random partite complex.
        #[arg(long)]
        random_rank: Option<usize>,
        #[arg(long, default_value_t = 60)]
        max_facets: usize,
    },
    /// Runs `verify` at every level over a corpus; writes suite.json and suite.csv.
    #[command(group(ArgGroup::new("corpus_source").required(true).args(["corpus", "random"])))]
    Suite {
        /// Directory of instance files; only `*.json` files are read.
        corpus: Option<PathBuf>,
        /// Generate this many random partite complexes instead.
        #[arg(long)]
        random: Option<usize>,
        /// Graph for the expanderized checks; random graphs when omitted.
        #[arg(long)]
        graph: Option<String>,
        /// Skip the expanderized checks.
        #[arg(long, conflicts_with = "graph")]
        no_graph: bool,
    },
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    init_threads();
    match execute(&cli) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_ASSERTION,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_INPUT
        }
    }
}

/// `HODOS_THREADS` caps the rayon pool.
fn init_threads() {
    if let Some(n) = std::env::var("HODOS_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        // Fails only if the pool already exists, e.g. when embedded in tests.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

fn validate(cli: &Cli) -> Result<()> {
    if !(cli.epsilon > 0.0 && cli.epsilon < 1.0) {
        bail!("--epsilon must lie in (0, 1), got {}", cli.epsilon);
    }
    if let Some(out) = &cli.out {
        if out.exists() && !out.is_dir() {
            bail!("--out {} is not a directory", out.display());
        }
    }
    Ok(())
}

/// Ok(true) when every assertion passed.
fn execute(cli: &Cli) -> Result<bool> {
    validate(cli)?;
    let art = Artifacts::new(cli.out.clone());
    match &cli.command {
        Command::Spectra { input, level, walk } => spectra(cli, &art, input, level, walk),
        Command::Verify {
            input,
            level,
            all_levels,
        } => verify(cli, &art, input, level, *all_levels),
        Command::Mix {
            input,
            level,
            t_max,
        } => mix(cli, &art, input, level, *t_max),
        Command::Sample {
            input,
            level,
            walk,
            walk_spec,
            steps,
            start,
            subset,
        } => sample(
            cli,
            &art,
            input,
            level,
            walk,
            walk_spec.as_deref(),
            *steps,
            *start,
            *subset,
        ),
        Command::Expander { graph, vertices } => expander(cli, &art, graph, *vertices),
        Command::Build {
            ising,
            coloring,
            random_rank,
            max_facets,
        } => build(
            cli,
            &art,
            ising.as_deref(),
            coloring.as_deref(),
            *random_rank,
            *max_facets,
        ),
        Command::Suite {
            corpus,
            random,
            graph,
            no_graph,
        } => suite(
            cli,
            &art,
            corpus.as_deref(),
            *random,
            graph.as_deref(),
            *no_graph,
        ),
    }
}

fn parse_walk(name: &str) -> Result<WalkKind> {
    WalkKind::parse(name).with_context(|| {
        format!("unknown walk {name:?}; expected down-up, up-down, scan, expanderized-down-up or expanderized-up-down")
    })
}

fn guard(states: usize, cap: usize) -> Result<()> {
    if states > cap {
        bail!("{states} states exceed --cap-states {cap}");
    }
    Ok(())
}

fn walk_operator(x: &Complex, spec: &WalkSpec, cap: usize) -> Result<WalkOperator> {
    spec.validate(x)?;
    let need_graph = || spec.graph.as_ref().context("this walk needs --graph");
    let m = binomial(x.rank(), spec.ell) as usize;
    let states = match spec.kind {
        WalkKind::UpDown | WalkKind::ExpanderizedUpDown => x.level_size(spec.ell)?,
        WalkKind::ExpanderizedDownUp => x.facets().len() * m,
        WalkKind::DownUp | WalkKind::Scan => x.facets().len(),
    };
    guard(states, cap)?;
    Ok(match spec.kind {
        WalkKind::DownUp => down_up(x, spec.ell)?,
        WalkKind::UpDown => up_down(x, spec.ell)?,
        WalkKind::Scan => scan_sweep(x)?,
        WalkKind::ExpanderizedUpDown => expanderized_up_down(x, spec.ell, need_graph()?)?,
        WalkKind::ExpanderizedDownUp => expanderized_down_up(x, spec.ell, need_graph()?)?,
    })
}

#[derive(Serialize)]
struct SpectraOut<'a> {
    walk: &'a str,
    ell: usize,
    states: usize,
    report: hodos_core::spectral::SpectralReport,
}

fn spectra(
    cli: &Cli,
    art: &Artifacts,
    input: &InputArgs,
    level: &LevelArgs,
    walk: &str,
) -> Result<bool> {
    let kind = parse_walk(walk)?;
    let inst = input.load()?;
    let x = inst.complex();
    let ell = level.ell(x)?;
    let spec = WalkSpec {
        kind,
        ell,
        graph: level.graph(x, ell, cli.seed)?,
    };
    let p = walk_operator(x, &spec, cli.cap_states)?;
    let reversible = p.detailed_balance_error() <= REVERSIBILITY_TOL;
    let report = spectrum(&p, reversible)?;
    let mut csv = Csv::new(&["index", "eigenvalue"]);
    for (i, v) in report.eigenvalues.iter().enumerate() {
        csv.row(&[&i, v]);
    }
    let csv = csv.finish();
    let doc = json(&SpectraOut {
        walk: kind.name(),
        ell,
        states: p.rows(),
        report,
    })?;
    art.write("spectra.json", &doc)?;
    art.write("eigenvalues.csv", &csv)?;
    emit(cli.format, &doc, &csv);
    Ok(true)
}

fn emit(format: Format, json_doc: &str, csv_doc: &str) {
    match format {
        Format::Json => print!("{json_doc}"),
        Format::Csv => print!("{csv_doc}"),
    }
}

fn mode_name(m: Option<Mode>) -> Option<String> {
    m.map(|m| {
        serde_json::to_value(m)
            .ok()
            .and_then(|v| v.as_str().map(String::from))
            .unwrap_or_default()
    })
}

fn rows_csv(rows: &[Row]) -> String {
    let mut csv = Csv::new(&[
        "instance",
        "ell",
        "check",
        "status",
        "mode",
        "value",
        "constant",
        "slack",
        "witness_id",
    ]);
    for r in rows {
        csv.row(&[
            &r.instance,
            &r.ell,
            &r.check,
            &r.status,
            &mode_name(r.mode),
            &r.value,
            &r.constant,
            &r.slack,
            &r.witness_id,
        ]);
    }
    csv.finish()
}

#[derive(Serialize)]
struct VerifyOut<'a> {
    kind: &'a str,
    seed: u64,
    summary: checks::Summary,
    passed: bool,
    rows: &'a [Row],
}

fn verify(
    cli: &Cli,
    art: &Artifacts,
    input: &InputArgs,
    level: &LevelArgs,
    all: bool,
) -> Result<bool> {
    let inst = input.load()?;
    let x = inst.complex();
    let ells: Vec<usize> = if all {
        (1..x.rank()).collect()
    } else {
        vec![level.ell(x)?]
    };
    // Resolve the graph up front so that a bad spec is an input error.
    for &ell in &ells {
        level.graph(x, ell, cli.seed)?;
    }
    let seed = cli.seed;
    let graphs = |m: usize, _ell: usize| -> Result<Option<LabelledRegularGraph>> {
        level
            .graph
            .as_deref()
            .map(|s| parse_graph(s, Some(m), seed))
            .transpose()
    };
    let opts = Options {
        seed,
        cap_states: cli.cap_states,
    };
    let rows = verify_instance("input", &inst, &ells, &graphs, &opts);
    let passed = !rows.iter().any(Row::is_failure);
    let doc = json(&VerifyOut {
        kind: inst.kind(),
        seed,
        summary: summarize(&rows),
        passed,
        rows: &rows,
    })?;
    let csv = rows_csv(&rows);
    art.write("verify.json", &doc)?;
    art.write("verify.csv", &csv)?;
    emit(cli.format, &doc, &csv);
    Ok(passed)
}

#[derive(Serialize)]
struct MixRow {
    walk: String,
    states: usize,
    tmix: Option<usize>,
    sites_per_step: usize,
    bound_from_gap: Option<f64>,
    gap: f64,
    two_sided_lambda: f64,
    index_bits_per_step: u32,
    total_index_bits: Option<u64>,
    within_bound: bool,
}

#[derive(Serialize)]
struct MixOut<'a> {
    epsilon: f64,
    ell: usize,
    t_max: usize,
    walks: &'a [MixRow],
}

fn mix(
    cli: &Cli,
    art: &Artifacts,
    input: &InputArgs,
    level: &LevelArgs,
    t_max: usize,
) -> Result<bool> {
    let inst = input.load()?;
    let x = inst.complex();
    let ell = level.ell(x)?;
    let h = level.graph(x, ell, cli.seed)?;
    let walks = compare_walks(x, ell, h.as_ref(), cli.epsilon, t_max, cli.cap_states)?;
    let mut rows = Vec::new();
    for w in &walks {
        let mut csv = Csv::new(&["t", "tv", "bits"]);
        for (t, tv) in w.curve.iter().enumerate() {
            csv.row(&[&t, tv, &(t as u64 * w.index_bits_per_step as u64)]);
        }
        art.write(
            &format!("tv_curve_{}.csv", w.walk.replace('/', "_")),
            &csv.finish(),
        )?;
        let within_bound = match (w.bound_from_gap, w.tmix) {
            (None, _) => true,
            (Some(b), Some(t)) => t as f64 <= b + 1e-9,
            (Some(b), None) => (t_max as f64) < b,
        };
        rows.push(MixRow {
            walk: w.walk.clone(),
            states: w.states,
            tmix: w.tmix,
            sites_per_step: w.sites_per_step,
            bound_from_gap: w.bound_from_gap,
            gap: w.gap,
            two_sided_lambda: w.two_sided_lambda,
            index_bits_per_step: w.index_bits_per_step,
            total_index_bits: w.total_index_bits,
            within_bound,
        });
    }
    let doc = json(&MixOut {
        epsilon: cli.epsilon,
        ell,
        t_max,
        walks: &rows,
    })?;
    let mut csv = Csv::new(&[
        "walk",
        "states",
        "tmix",
        "sites_per_step",
        "bound_from_gap",
        "gap",
        "two_sided_lambda",
        "index_bits_per_step",
        "total_index_bits",
        "within_bound",
    ]);
    for r in &rows {
        csv.row(&[
            &r.walk,
            &r.states,
            &r.tmix,
            &r.sites_per_step,
            &r.bound_from_gap,
            &r.gap,
            &r.two_sided_lambda,
            &r.index_bits_per_step,
            &r.total_index_bits,
            &r.within_bound,
        ]);
    }
    let csv = csv.finish();
    art.write("mix.json", &doc)?;
    art.write("mix.csv", &csv)?;
    emit(cli.format, &doc, &csv);
    Ok(rows.iter().all(|r| r.within_bound))
}

/// On-disk walk spec; `graph` is a graph shorthand or path.
#[derive(Serialize, Deserialize)]
struct WalkSpecFile {
    kind: WalkKind,
    ell: usize,
    #[serde(default)]
    graph: Option<String>,
}

#[derive(Serialize)]
struct SampleOut {
    walk: &'static str,
    ell: usize,
    steps: u64,
    final_state: usize,
    final_subset: Option<usize>,
    bits_used: u64,
    nominal_index_bits_per_step: u32,
}

#[allow(clippy::too_many_arguments)]
fn sample(
    cli: &Cli,
    art: &Artifacts,
    input: &InputArgs,
    level: &LevelArgs,
    walk: &str,
    walk_spec: Option<&Path>,
    steps: u64,
    start: usize,
    subset: usize,
) -> Result<bool> {
    let inst = input.load()?;
    let x = inst.complex();
    let file = match walk_spec {
        Some(p) => {
            let text =
                std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            serde_json::from_str(&text).with_context(|| format!("in {}", p.display()))?
        }
        None => WalkSpecFile {
            kind: parse_walk(walk)?,
            ell: level.ell(x)?,
            graph: level.graph.clone(),
        },
    };
    let m = binomial(x.rank(), file.ell) as usize;
    let graph = file
        .graph
        .as_deref()
        .map(|s| parse_graph(s, Some(m), cli.seed))
        .transpose()?;
    let spec = WalkSpec {
        kind: file.kind,
        ell: file.ell,
        graph,
    };
    spec.validate(x)?;
    if spec.kind.is_expanderized() && spec.graph.is_none() {
        bail!("walk {} needs --graph", spec.kind.name());
    }
    let states = if spec.kind.on_lower_level() {
        x.level_size(spec.ell)?
    } else {
        x.facets().len()
    };
    if start >= states {
        bail!("--start {start} is out of range for {states} states");
    }
    if subset >= m.max(1) {
        bail!("--subset {subset} is out of range for {m} subsets");
    }
    let init_subset = (spec.kind == WalkKind::ExpanderizedDownUp).then_some(subset);
    let rows = run_trajectory(
        x,
        &spec,
        ChainState::new(start, init_subset),
        steps,
        cli.seed,
    )?;
    let mut csv = Csv::new(&["step", "state_id", "subset_id", "bits_used"]);
    for r in &rows {
        csv.row(&[&r.step, &r.state_id, &r.subset_id, &r.bits_used]);
    }
    let csv = csv.finish();
    let last = rows.last().expect("initial row");
    let doc = json(&SampleOut {
        walk: spec.kind.name(),
        ell: spec.ell,
        steps,
        final_state: last.state_id,
        final_subset: last.subset_id,
        bits_used: last.bits_used,
        nominal_index_bits_per_step: spec.nominal_index_bits(x.rank()),
    })?;
    art.write("trajectory.csv", &csv)?;
    art.write("walk_spec.json", &json(&file)?)?;
    art.write("sample.json", &doc)?;
    emit(cli.format, &doc, &csv);
    Ok(true)
}

#[derive(Serialize)]
struct ExpanderOut {
    spectrum: hodos_core::expanders::GraphSpectrum,
    power_iteration_lambda: f64,
}

fn expander(cli: &Cli, art: &Artifacts, spec: &str, vertices: Option<usize>) -> Result<bool> {
    let g = parse_graph(spec, vertices, cli.seed)?;
    let out = ExpanderOut {
        spectrum: g.spectrum(),
        power_iteration_lambda: power_iteration_lambda(&g, 2000, cli.seed),
    };
    let doc = json(&out)?;
    let mut csv = Csv::new(&["index", "eigenvalue"]);
    for (i, v) in g.eigenvalues().iter().enumerate() {
        csv.row(&[&i, v]);
    }
    let csv = csv.finish();
    art.write("expander.json", &doc)?;
    art.write("graph.txt", &g.to_text())?;
    emit(cli.format, &doc, &csv);
    Ok(true)
}

fn build(
    cli: &Cli,
    art: &Artifacts,
    ising: Option<&Path>,
    coloring: Option<&Path>,
    random_rank: Option<usize>,
    max_facets: usize,
) -> Result<bool> {
    let x = match (ising, coloring, random_rank) {
        (Some(p), _, _) => input::load(p, Kind::Ising)?.complex().clone(),
        (_, Some(p), _) => input::load(p, Kind::Coloring)?.complex().clone(),
        (_, _, Some(n)) => {
            if n == 0 {
                bail!("--random-rank must be positive");
            }
            random_partite_complex(n, max_facets, cli.seed)?
        }
        _ => bail!("one of --ising, --coloring or --random-rank is required"),
    };
    let doc = json(&x.to_file())?;
    art.write("complex.json", &doc)?;
    if !art.enabled() || cli.format == Format::Json {
        print!("{doc}");
    }
    Ok(true)
}

#[derive(Serialize)]
struct SuiteOut<'a> {
    seed: u64,
    instances: Vec<String>,
    summary: checks::Summary,
    passed: bool,
    rows: &'a [Row],
}

fn suite(
    cli: &Cli,
    art: &Artifacts,
    corpus: Option<&Path>,
    random: Option<usize>,
    graph: Option<&str>,
    no_graph: bool,
) -> Result<bool> {
    let seed = cli.seed;
    let mut named: Vec<(String, Result<Instance>)> = Vec::new();
    if let Some(dir) = corpus {
        let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
            .with_context(|| format!("reading corpus {}", dir.display()))?
            .map(|e| e.map(|e| e.path()))
            .collect::<std::io::Result<_>>()?;
        paths.retain(|p| p.extension().is_some_and(|e| e == "json") && p.is_file());
        paths.sort();
        for p in paths {
            let name = p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            named.push((name, input::load_any(&p)));
        }
    }
    if let Some(count) = random {
        for i in 0..count {
            let x = random_partite_complex(2 + i % 3, 60, seed.wrapping_add(i as u64));
            if let Ok(x) = &x {
                art.write(&format!("corpus/random-{i:03}.json"), &json(&x.to_file())?)?;
            }
            named.push((
                format!("random-{i:03}"),
                x.map(Instance::Complex).map_err(Into::into),
            ));
        }
    }
    let opts = Options {
        seed,
        cap_states: cli.cap_states,
    };
    let mut rows = Vec::new();
    for (idx, (name, inst)) in named.iter().enumerate() {
        let inst = match inst {
            Ok(i) => i,
            Err(e) => {
                rows.push(Row {
                    instance: name.clone(),
                    ell: None,
                    check: "load".into(),
                    status: format!("error: {e:#}"),
                    mode: None,
                    value: None,
                    constant: None,
                    slack: None,
                    witness_id: None,
                });
                continue;
            }
        };
        let graphs = |m: usize, ell: usize| -> Result<Option<LabelledRegularGraph>> {
            if no_graph {
                return Ok(None);
            }
            match graph {
                Some(s) => parse_graph(s, Some(m), seed).map(Some),
                None => {
                    let gseed = seed
                        .wrapping_mul(1_000_003)
                        .wrapping_add((idx * 64 + ell) as u64);
                    Ok(Some(random_graph(m, gseed)?))
                }
            }
        };
        let ells: Vec<usize> = (1..inst.complex().rank()).collect();
        rows.extend(verify_instance(name, inst, &ells, &graphs, &opts));
    }
    let passed = !rows.iter().any(Row::is_failure);
    let doc = json(&SuiteOut {
        seed,
        instances: named.iter().map(|(n, _)| n.clone()).collect(),
        summary: summarize(&rows),
        passed,
        rows: &rows,
    })?;
    let csv = rows_csv(&rows);
    art.write("suite.json", &doc)?;
    art.write("suite.csv", &csv)?;
    emit(cli.format, &doc, &csv);
    Ok(passed)
}
