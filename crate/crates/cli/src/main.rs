use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lcs_core::baselines::EdgePick;
use lcs_core::bench::{self, ExperimentConfig};
use lcs_core::graph::io::{parse_edge_list, write_edge_list};
use lcs_core::graph::{
    classify_components, critical_vertices, gen_random_graph, ComponentKind, Graph,
};
use lcs_core::hybrid_ga::{GaParams, MutationMode};
use lcs_core::phylogeny::io::parse_matrix;
use lcs_core::phylogeny::{conflict_graph, largest_compatible_subset, BinaryCharacterMatrix};
use lcs_core::{Error, Solver, SolverKind};

#[derive(Parser)]
#[command(
    name = "lcs",
    version,
    about = "Largest compatible character subsets via vertex cover"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random G(n, m) graph with m = round(density * n(n-1)/2).
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        density: f64,
        #[arg(long, env = "LCS_SEED", default_value_t = 0)]
        seed: u64,
        /// Output path (stdout if omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run one solver on an edge list or on a matrix's conflict graph.
    Solve {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = InputKind::Graph)]
        input_kind: InputKind,
        #[command(flatten)]
        solver: SolverArgs,
        /// Also report wall-clock time (output is then not reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Report pairwise compatibility of a character matrix.
    Check { input: PathBuf },
    /// Drop a vertex cover of the conflict graph and print the phylogeny of the rest.
    Filter {
        input: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Paired solver comparison on random graphs, written as CSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum InputKind {
    Graph,
    Matrix,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    #[value(name = "2approx")]
    TwoApprox,
    Exact,
    HybridGa,
}

impl From<Algo> for SolverKind {
    fn from(a: Algo) -> Self {
        match a {
            Algo::TwoApprox => SolverKind::TwoApprox,
            Algo::Exact => SolverKind::Exact,
            Algo::HybridGa => SolverKind::HybridGa,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Pick {
    Random,
    First,
}

#[derive(Clone, Copy, ValueEnum)]
enum MutationArg {
    PerOffspring,
    PerBit,
}

#[derive(Args)]
struct GaArgs {
    #[arg(long, default_value_t = 1.0)]
    pop_mult: f64,
    #[arg(long, value_enum, default_value_t = MutationArg::PerOffspring)]
    mutation_mode: MutationArg,
    #[arg(long, default_value_t = 10)]
    stall: usize,
    #[arg(long, default_value_t = 1000)]
    max_gen: usize,
}

impl GaArgs {
    fn params(&self) -> GaParams {
        GaParams {
            population_multiplier: self.pop_mult,
            mutation_mode: match self.mutation_mode {
                MutationArg::PerOffspring => MutationMode::PerOffspring,
                MutationArg::PerBit => MutationMode::PerBit,
            },
            stall_generations: self.stall,
            max_generations: self.max_gen,
            ..GaParams::default()
        }
    }
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, value_enum, default_value_t = Algo::HybridGa)]
    algo: Algo,
    /// Edge choice for the 2-approximation.
    #[arg(long, value_enum, default_value_t = Pick::Random)]
    pick: Pick,
    #[arg(long, default_value_t = 0.5)]
    crossover: f64,
    #[arg(long, default_value_t = 0.5)]
    mutation: f64,
    #[command(flatten)]
    ga: GaArgs,
    /// Node budget for the exact solver.
    #[arg(long, default_value_t = lcs_core::baselines::DEFAULT_EXACT_BUDGET)]
    budget: u64,
    #[arg(long, env = "LCS_SEED", default_value_t = 0)]
    seed: u64,
}

impl SolverArgs {
    fn solver(&self) -> Solver {
        match self.algo {
            Algo::TwoApprox => Solver::TwoApprox {
                pick: edge_pick(self.pick),
                seed: self.seed,
            },
            Algo::Exact => Solver::Exact {
                budget: self.budget,
            },
            Algo::HybridGa => Solver::HybridGa(
                self.ga
                    .params()
                    .with_rates(self.crossover, self.mutation)
                    .with_seed(self.seed),
            ),
        }
    }
}

fn edge_pick(p: Pick) -> EdgePick {
    match p {
        Pick::Random => EdgePick::Random,
        Pick::First => EdgePick::First,
    }
}

#[derive(Args)]
struct BenchArgs {
    /// Graph sizes (default 20,30,40,50,60; 50..250 with --full-scale).
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',', default_value = "0.3,0.6,0.9")]
    densities: Vec<f64>,
    #[arg(long, default_value_t = 10)]
    runs: usize,
    /// Solvers to compare (default 2approx,exact,hybrid-ga; exact only where n <= --exact-max-n).
    #[arg(long, value_enum, value_delimiter = ',')]
    solvers: Option<Vec<Algo>>,
    /// GA `crossover:mutation` pairs.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0.3:0.5,0.3:0.8,0.5:0.5,0.5:0.8"
    )]
    ga_params: Vec<String>,
    #[command(flatten)]
    ga: GaArgs,
    #[arg(long, value_enum, default_value_t = Pick::Random)]
    pick: Pick,
    #[arg(long, default_value_t = 30)]
    exact_max_n: usize,
    #[arg(long, default_value_t = lcs_core::baselines::DEFAULT_EXACT_BUDGET)]
    budget: u64,
    #[arg(long, env = "LCS_SEED", default_value_t = 0)]
    seed: u64,
    /// Sizes 50..250 and solvers 2approx,hybrid-ga.
    #[arg(long)]
    full_scale: bool,
    /// CSV destination (stdout if omitted).
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Summary tables destination (printed to stdout when --out is given).
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Record elapsed_ms (output is then not reproducible).
    #[arg(long)]
    timing: bool,
}

impl BenchArgs {
    fn config(&self) -> Result<ExperimentConfig, Error> {
        let mut cfg = if self.full_scale {
            ExperimentConfig::full_scale()
        } else {
            ExperimentConfig::desk_scale()
        };
        if let Some(sizes) = &self.sizes {
            cfg.sizes = sizes.clone();
        }
        if let Some(solvers) = &self.solvers {
            cfg.solvers = solvers.iter().map(|&a| a.into()).collect();
        }
        cfg.densities = self.densities.clone();
        cfg.runs_per_cell = self.runs;
        cfg.ga_grid = self
            .ga_params
            .iter()
            .map(|p| parse_rate_pair(p))
            .collect::<Result<_, _>>()?;
        cfg.ga_base = self.ga.params();
        cfg.edge_pick = edge_pick(self.pick);
        cfg.exact_max_n = self.exact_max_n;
        cfg.exact_budget = self.budget;
        cfg.base_seed = self.seed;
        cfg.record_timing = self.timing;
        Ok(cfg)
    }
}

fn parse_rate_pair(s: &str) -> Result<(f64, f64), Error> {
    let bad = || Error::Usage(format!("`{s}` is not a crossover:mutation pair"));
    let (c, m) = s.split_once(':').ok_or_else(bad)?;
    Ok((
        c.trim().parse().map_err(|_| bad())?,
        m.trim().parse().map_err(|_| bad())?,
    ))
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| Error::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_matrix(path: &Path) -> Result<BinaryCharacterMatrix, Error> {
    parse_matrix(&read(path)?).map_err(|e| with_path(path, e))
}

fn with_path(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse {
            line,
            column,
            message,
        } => Error::Parse {
            line,
            column,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    }
}

fn join(items: impl IntoIterator<Item = usize>) -> String {
    items
        .into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Gen {
            n,
            density,
            seed,
            output,
        } => {
            if n == 0 || !(0.0..=1.0).contains(&density) {
                return Err(Error::Usage("need n >= 1 and density in [0, 1]".into()));
            }
            write_out(
                output.as_deref(),
                &write_edge_list(&gen_random_graph(n, density, seed)),
            )
        }
        Command::Solve {
            input,
            input_kind,
            solver,
            timing,
        } => {
            let g: Graph = match input_kind {
                InputKind::Graph => {
                    parse_edge_list(&read(&input)?).map_err(|e| with_path(&input, e))?
                }
                InputKind::Matrix => conflict_graph(&read_matrix(&input)?),
            };
            let solver = solver.solver();
            let start = Instant::now();
            let sol = solver.solve(&g)?;
            let elapsed = start.elapsed();
            let mut out = String::new();
            writeln!(out, "algo: {}", sol.solver).unwrap();
            writeln!(out, "cover: {}", join(sol.cover.iter().copied())).unwrap();
            writeln!(out, "cover_size: {}", sol.cover.len()).unwrap();
            writeln!(out, "fitness: {:.6}", sol.fitness).unwrap();
            writeln!(out, "critical_vertices: {}", critical_vertices(&g).len()).unwrap();
            writeln!(out, "generations: {}", sol.generations).unwrap();
            if timing {
                writeln!(out, "elapsed_ms: {:.3}", elapsed.as_secs_f64() * 1e3).unwrap();
            }
            write_out(None, &out)
        }
        Command::Check { input } => {
            let mtx = read_matrix(&input)?;
            let g = conflict_graph(&mtx);
            let comps = classify_components(&g);
            let count = |k| comps.iter().filter(|c| c.kind == k).count();
            let mut out = String::new();
            writeln!(out, "species: {}", mtx.species()).unwrap();
            writeln!(out, "characters: {}", mtx.characters()).unwrap();
            writeln!(
                out,
                "compatible: {}, conflicts: {}",
                if g.edge_count() == 0 { "yes" } else { "no" },
                g.edge_count()
            )
            .unwrap();
            if g.edge_count() > 0 {
                let pairs: Vec<String> = g.edges().map(|(a, b)| format!("{a}-{b}")).collect();
                writeln!(out, "conflicting pairs: {}", pairs.join(" ")).unwrap();
            }
            writeln!(out, "critical vertices: {}", critical_vertices(&g).len()).unwrap();
            writeln!(
                out,
                "components: {} trees, {} cycles, {} other",
                count(ComponentKind::Tree),
                count(ComponentKind::SimpleCycle),
                count(ComponentKind::Other)
            )
            .unwrap();
            write_out(None, &out)
        }
        Command::Filter { input, solver } => {
            let mtx = read_matrix(&input)?;
            let result = largest_compatible_subset(&mtx, &solver.solver())?;
            write_out(None, &result.render(&mtx))
        }
        Command::Bench(args) => {
            let cfg = args.config()?;
            let records = bench::run_experiment(&cfg)?;
            let mut csv = Vec::new();
            bench::write_csv(&records, &mut csv)?;
            let csv = String::from_utf8(csv).expect("csv output is utf-8");
            let summary = bench::render_summaries(&records);
            write_out(args.out.as_deref(), &csv)?;
            match (&args.summary, &args.out) {
                (Some(path), _) => write_out(Some(path), &summary),
                (None, Some(_)) => write_out(None, &summary),
                (None, None) => Ok(()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lcs: {e}");
            if e.is_input_error() || matches!(e, Error::Budget { .. }) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
