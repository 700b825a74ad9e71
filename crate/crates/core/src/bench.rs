//! Paired benchmark runs on random graphs.
//!
//! For every `(n, density, run)` one graph is drawn from a seed derived from
//! the base seed, and every configured solver is run on that same graph.
//! Records are sorted before they are returned, so output depends only on
//! the configuration.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use crate::baselines::{EdgePick, DEFAULT_EXACT_BUDGET};
use crate::error::{Error, Result};
use crate::graph::{critical_vertices, gen_random_graph};
use crate::hybrid_ga::GaParams;
use crate::rng::derive_seed;
use crate::solve::{Solver, SolverKind};

/// Crossover/mutation pairs swept by default.
pub const DEFAULT_GA_GRID: [(f64, f64); 4] = [(0.3, 0.5), (0.3, 0.8), (0.5, 0.5), (0.5, 0.8)];

pub const CSV_HEADER: [&str; 13] = [
    "n",
    "density",
    "solver",
    "pop_mult",
    "crossover",
    "mutation",
    "run",
    "seed",
    "cover_size",
    "cover_ratio_pct",
    "critical_count",
    "generations",
    "elapsed_ms",
];

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub sizes: Vec<usize>,
    pub densities: Vec<f64>,
    pub runs_per_cell: usize,
    pub solvers: Vec<SolverKind>,
    /// `(crossover_rate, mutation_rate)`; the GA runs once per pair.
    pub ga_grid: Vec<(f64, f64)>,
    /// Population multiplier, stall limit and the rest; rates and seed are
    /// overwritten per run.
    pub ga_base: GaParams,
    pub edge_pick: EdgePick,
    /// The exact solver is skipped on graphs larger than this.
    pub exact_max_n: usize,
    pub exact_budget: u64,
    pub base_seed: u64,
    /// Wall-clock measurement makes output non-reproducible, so it is opt-in.
    pub record_timing: bool,
}

impl ExperimentConfig {
    /// Sizes 50..=250, densities 0.3/0.6/0.9, ten runs per cell.
    pub fn full_scale() -> Self {
        ExperimentConfig {
            sizes: vec![50, 100, 150, 200, 250],
            densities: vec![0.3, 0.6, 0.9],
            runs_per_cell: 10,
            solvers: vec![SolverKind::TwoApprox, SolverKind::HybridGa],
            ga_grid: DEFAULT_GA_GRID.to_vec(),
            ga_base: GaParams::default(),
            edge_pick: EdgePick::Random,
            exact_max_n: 30,
            exact_budget: DEFAULT_EXACT_BUDGET,
            base_seed: 0,
            record_timing: false,
        }
    }

    /// Sizes 20..=60 with the exact solver included where `n <= 30`.
    pub fn desk_scale() -> Self {
        ExperimentConfig {
            sizes: vec![20, 30, 40, 50, 60],
            solvers: vec![
                SolverKind::TwoApprox,
                SolverKind::Exact,
                SolverKind::HybridGa,
            ],
            ..Self::full_scale()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sizes.is_empty() || self.densities.is_empty() || self.solvers.is_empty() {
            return Err(Error::usage(
                "sizes, densities and solvers must all be non-empty",
            ));
        }
        if self.runs_per_cell == 0 {
            return Err(Error::usage("runs per cell must be at least 1"));
        }
        if self.sizes.contains(&0) {
            return Err(Error::usage("graph sizes must be positive"));
        }
        if self.densities.iter().any(|d| !(0.0..=1.0).contains(d)) {
            return Err(Error::usage("densities must lie in [0, 1]"));
        }
        if self.solvers.contains(&SolverKind::HybridGa) {
            if self.ga_grid.is_empty() {
                return Err(Error::usage("the GA parameter grid is empty"));
            }
            for &(c, m) in &self.ga_grid {
                self.ga_base.clone().with_rates(c, m).validate()?;
            }
        }
        Ok(())
    }

    /// Seed of the graph for run `run` of cell `(n, density)`.
    pub fn graph_seed(&self, n: usize, density: f64, run: usize) -> u64 {
        derive_seed(&[self.base_seed, n as u64, density.to_bits(), run as u64])
    }
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self::full_scale()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentRecord {
    pub n: usize,
    pub density: f64,
    pub solver: SolverKind,
    /// GA rows only.
    pub pop_mult: Option<f64>,
    pub crossover: Option<f64>,
    pub mutation: Option<f64>,
    pub run: usize,
    pub seed: u64,
    pub cover_size: usize,
    pub cover_ratio_pct: f64,
    pub critical_count: usize,
    pub generations: usize,
    pub elapsed_ms: Option<f64>,
}

impl ExperimentRecord {
    fn sort_key(&self) -> (usize, f64, SolverKind, f64, f64, f64, usize) {
        (
            self.n,
            self.density,
            self.solver,
            self.pop_mult.unwrap_or(-1.0),
            self.crossover.unwrap_or(-1.0),
            self.mutation.unwrap_or(-1.0),
            self.run,
        )
    }
}

fn cmp_records(a: &ExperimentRecord, b: &ExperimentRecord) -> std::cmp::Ordering {
    let (ka, kb) = (a.sort_key(), b.sort_key());
    ka.0.cmp(&kb.0)
        .then(ka.1.total_cmp(&kb.1))
        .then(ka.2.cmp(&kb.2))
        .then(ka.3.total_cmp(&kb.3))
        .then(ka.4.total_cmp(&kb.4))
        .then(ka.5.total_cmp(&kb.5))
        .then(ka.6.cmp(&kb.6))
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRecord>> {
    cfg.validate()?;
    let mut jobs = Vec::new();
    for &n in &cfg.sizes {
        for &density in &cfg.densities {
            for run in 0..cfg.runs_per_cell {
                jobs.push((n, density, run));
            }
        }
    }

    let per_job: Vec<Vec<ExperimentRecord>> = jobs
        .par_iter()
        .map(|&(n, density, run)| run_cell(cfg, n, density, run))
        .collect::<Result<_>>()?;
    let mut records: Vec<ExperimentRecord> = per_job.into_iter().flatten().collect();
    records.sort_by(cmp_records);
    Ok(records)
}

fn run_cell(
    cfg: &ExperimentConfig,
    n: usize,
    density: f64,
    run: usize,
) -> Result<Vec<ExperimentRecord>> {
    let seed = cfg.graph_seed(n, density, run);
    let g = gen_random_graph(n, density, seed);
    let critical_count = critical_vertices(&g).len();

    let mut settings: Vec<(Solver, Option<GaTag>)> = Vec::new();
    for &kind in &cfg.solvers {
        match kind {
            SolverKind::TwoApprox => settings.push((
                Solver::TwoApprox {
                    pick: cfg.edge_pick,
                    seed,
                },
                None,
            )),
            SolverKind::Exact if n <= cfg.exact_max_n => settings.push((
                Solver::Exact {
                    budget: cfg.exact_budget,
                },
                None,
            )),
            SolverKind::Exact => {}
            SolverKind::HybridGa => {
                for &(c, m) in &cfg.ga_grid {
                    let params = cfg.ga_base.clone().with_rates(c, m).with_seed(seed);
                    let tag = (params.population_multiplier, c, m);
                    settings.push((Solver::HybridGa(params), Some(tag)));
                }
            }
        }
    }

    let mut out = Vec::with_capacity(settings.len());
    for (solver, ga) in settings {
        let start = Instant::now();
        let sol = solver.solve(&g)?;
        let elapsed = start.elapsed();
        out.push(ExperimentRecord {
            n,
            density,
            solver: solver.kind(),
            pop_mult: ga.map(|t| t.0),
            crossover: ga.map(|t| t.1),
            mutation: ga.map(|t| t.2),
            run,
            seed,
            cover_size: sol.cover.len(),
            cover_ratio_pct: 100.0 * sol.cover.len() as f64 / n as f64,
            critical_count,
            generations: sol.generations,
            elapsed_ms: cfg.record_timing.then_some(elapsed.as_secs_f64() * 1e3),
        });
    }
    Ok(out)
}

pub fn write_csv<W: Write>(records: &[ExperimentRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for r in records {
        w.write_record([
            r.n.to_string(),
            r.density.to_string(),
            r.solver.name().to_string(),
            opt(r.pop_mult),
            opt(r.crossover),
            opt(r.mutation),
            r.run.to_string(),
            r.seed.to_string(),
            r.cover_size.to_string(),
            format!("{:.4}", r.cover_ratio_pct),
            r.critical_count.to_string(),
            r.generations.to_string(),
            r.elapsed_ms.map(|x| format!("{x:.3}")).unwrap_or_default(),
        ])?;
    }
    w.flush().map_err(|e| Error::Csv(e.into()))?;
    Ok(())
}

pub fn write_csv_file(records: &[ExperimentRecord], path: &Path) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = std::fs::File::create(path).map_err(io_err)?;
    write_csv(records, std::io::BufWriter::new(file)).map_err(|e| match e {
        Error::Csv(c) if c.is_io_error() => match c.into_kind() {
            csv::ErrorKind::Io(source) => io_err(source),
            _ => unreachable!("checked by is_io_error"),
        },
        other => other,
    })
}

/// GA settings as recorded: `(pop_mult, crossover, mutation)`.
pub type GaTag = (f64, f64, f64);

#[derive(Clone, Debug, PartialEq)]
pub struct ImprovementRow {
    /// `None` when averaged over all sizes.
    pub n: Option<usize>,
    pub density: f64,
    pub ga: GaTag,
    /// Mean of `2approx ratio % - GA ratio %` over paired runs.
    pub mean_improvement_pts: f64,
    pub pairs: usize,
}

// non-negative floats order the same as their bit patterns
type FKey = u64;
type ImprovementKey = (usize, FKey, FKey, FKey, FKey);

fn ga_tag(r: &ExperimentRecord) -> Option<GaTag> {
    Some((r.pop_mult?, r.crossover?, r.mutation?))
}

fn improvements(records: &[ExperimentRecord], by_size: bool) -> Result<Vec<ImprovementRow>> {
    let baseline: BTreeMap<(usize, FKey, usize), f64> = records
        .iter()
        .filter(|r| r.solver == SolverKind::TwoApprox)
        .map(|r| ((r.n, r.density.to_bits(), r.run), r.cover_ratio_pct))
        .collect();
    let ga: Vec<&ExperimentRecord> = records
        .iter()
        .filter(|r| r.solver == SolverKind::HybridGa)
        .collect();
    if baseline.is_empty() || ga.is_empty() {
        return Err(Error::Domain(
            "improvement needs both 2approx and hybrid-ga records".to_string(),
        ));
    }

    let mut cells: BTreeMap<ImprovementKey, (f64, usize)> = BTreeMap::new();
    for r in ga {
        let base = baseline
            .get(&(r.n, r.density.to_bits(), r.run))
            .ok_or_else(|| {
                Error::Domain(format!(
                    "no 2approx record for n={}, density={}, run={}",
                    r.n, r.density, r.run
                ))
            })?;
        let tag = ga_tag(r)
            .ok_or_else(|| Error::Domain("hybrid-ga record without GA settings".into()))?;
        let n = if by_size { r.n } else { 0 };
        let e = cells
            .entry((
                n,
                r.density.to_bits(),
                tag.0.to_bits(),
                tag.1.to_bits(),
                tag.2.to_bits(),
            ))
            .or_default();
        e.0 += base - r.cover_ratio_pct;
        e.1 += 1;
    }
    Ok(cells
        .into_iter()
        .map(|((n, d, p, c, m), (sum, pairs))| ImprovementRow {
            n: by_size.then_some(n),
            density: f64::from_bits(d),
            ga: (f64::from_bits(p), f64::from_bits(c), f64::from_bits(m)),
            mean_improvement_pts: sum / pairs as f64,
            pairs,
        })
        .collect())
}

/// Mean percentage-point improvement of the GA over the 2-approximation,
/// per `(density, GA settings)`, pooled over sizes and paired by run.
pub fn improvement_summary(records: &[ExperimentRecord]) -> Result<Vec<ImprovementRow>> {
    improvements(records, false)
}

/// As [`improvement_summary`] but kept separate per graph size.
pub fn improvement_by_cell(records: &[ExperimentRecord]) -> Result<Vec<ImprovementRow>> {
    improvements(records, true)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalRow {
    pub n: usize,
    pub density: f64,
    pub mean_critical: f64,
    pub graphs: usize,
}

/// Mean number of critical vertices per `(n, density)`, one sample per graph.
pub fn critical_count_summary(records: &[ExperimentRecord]) -> Vec<CriticalRow> {
    let mut per_graph: BTreeMap<(usize, FKey, usize), usize> = BTreeMap::new();
    for r in records {
        per_graph.insert((r.n, r.density.to_bits(), r.run), r.critical_count);
    }
    let mut cells: BTreeMap<(usize, FKey), (usize, usize)> = BTreeMap::new();
    for ((n, d, _), c) in per_graph {
        let e = cells.entry((n, d)).or_default();
        e.0 += c;
        e.1 += 1;
    }
    cells
        .into_iter()
        .map(|((n, d), (sum, graphs))| CriticalRow {
            n,
            density: f64::from_bits(d),
            mean_critical: sum as f64 / graphs as f64,
            graphs,
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatioRow {
    pub n: usize,
    pub density: f64,
    pub solver: SolverKind,
    pub ga: Option<GaTag>,
    pub mean_ratio_pct: f64,
    pub runs: usize,
}

/// Mean cover ratio (percent) per `(n, density, solver setting)`.
pub fn ratio_summary(records: &[ExperimentRecord]) -> Vec<RatioRow> {
    let mut rows: Vec<RatioRow> = Vec::new();
    // records are sorted, so each setting's rows are contiguous
    for r in records {
        let ga = ga_tag(r);
        match rows.last_mut() {
            Some(last)
                if last.n == r.n
                    && last.density == r.density
                    && last.solver == r.solver
                    && last.ga == ga =>
            {
                last.mean_ratio_pct += r.cover_ratio_pct;
                last.runs += 1;
            }
            _ => rows.push(RatioRow {
                n: r.n,
                density: r.density,
                solver: r.solver,
                ga,
                mean_ratio_pct: r.cover_ratio_pct,
                runs: 1,
            }),
        }
    }
    for row in &mut rows {
        row.mean_ratio_pct /= row.runs as f64;
    }
    rows
}

/// Human-readable summary tables with notes on how they were computed.
pub fn render_summaries(records: &[ExperimentRecord]) -> String {
    let mut out = String::new();
    out.push_str("# graphs are regenerated for every run; all solvers in a run share one graph\n");
    out.push_str("# mean cover ratio (% of vertices)\n");
    out.push_str("n,density,solver,pop_mult,crossover,mutation,mean_ratio_pct,runs\n");
    let tag = |ga: Option<GaTag>| match ga {
        Some((p, c, m)) => format!("{p},{c},{m}"),
        None => ",,".to_string(),
    };
    for r in ratio_summary(records) {
        writeln!(
            out,
            "{},{},{},{},{:.4},{}",
            r.n,
            r.density,
            r.solver,
            tag(r.ga),
            r.mean_ratio_pct,
            r.runs
        )
        .unwrap();
    }

    out.push_str("\n# mean critical vertices per graph\n");
    out.push_str("n,density,mean_critical,graphs\n");
    for r in critical_count_summary(records) {
        writeln!(
            out,
            "{},{},{:.4},{}",
            r.n, r.density, r.mean_critical, r.graphs
        )
        .unwrap();
    }

    out.push_str("\n# improvement = mean(2approx ratio %) - mean(GA ratio %), percentage points, paired by run\n");
    match improvement_summary(records) {
        Ok(rows) => {
            out.push_str("density,pop_mult,crossover,mutation,mean_improvement_pts,pairs\n");
            for r in rows {
                writeln!(
                    out,
                    "{},{},{:.4},{}",
                    r.density,
                    tag(Some(r.ga)),
                    r.mean_improvement_pts,
                    r.pairs
                )
                .unwrap();
            }
        }
        Err(e) => writeln!(out, "# not available: {e}").unwrap(),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(n: usize, solver: SolverKind, run: usize, ratio: f64) -> ExperimentRecord {
        let ga = solver == SolverKind::HybridGa;
        ExperimentRecord {
            n,
            density: 0.3,
            solver,
            pop_mult: ga.then_some(1.0),
            crossover: ga.then_some(0.5),
            mutation: ga.then_some(0.5),
            run,
            seed: run as u64,
            cover_size: (ratio * n as f64 / 100.0).round() as usize,
            cover_ratio_pct: ratio,
            critical_count: 0,
            generations: 0,
            elapsed_ms: None,
        }
    }

    fn small(solvers: Vec<SolverKind>) -> ExperimentConfig {
        ExperimentConfig {
            sizes: vec![10],
            densities: vec![0.5],
            runs_per_cell: 2,
            solvers,
            ga_grid: vec![(0.5, 0.5)],
            ..ExperimentConfig::full_scale()
        }
    }

    #[test]
    fn one_record_per_cell_solver_run() {
        let recs =
            run_experiment(&small(vec![SolverKind::TwoApprox, SolverKind::HybridGa])).unwrap();
        assert_eq!(recs.len(), 4);
        // graphs are shared inside a run
        assert_eq!(recs[0].seed, recs[2].seed);
        assert_eq!(recs[0].critical_count, recs[2].critical_count);

        let mut cfg = small(vec![SolverKind::HybridGa]);
        cfg.ga_grid = DEFAULT_GA_GRID.to_vec();
        assert_eq!(run_experiment(&cfg).unwrap().len(), 8);
    }

    #[test]
    fn exact_is_capped_by_size() {
        let mut cfg = small(vec![SolverKind::Exact]);
        cfg.sizes = vec![10, 40];
        cfg.exact_max_n = 30;
        let recs = run_experiment(&cfg).unwrap();
        assert!(recs.iter().all(|r| r.n == 10));
        assert_eq!(recs.len(), 2);
    }

    #[test]
    fn csv_is_reproducible() {
        let cfg = small(vec![
            SolverKind::TwoApprox,
            SolverKind::Exact,
            SolverKind::HybridGa,
        ]);
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_csv(&run_experiment(&cfg).unwrap(), &mut a).unwrap();
        write_csv(&run_experiment(&cfg).unwrap(), &mut b).unwrap();
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        assert!(text.starts_with(&CSV_HEADER.join(",")));
        assert_eq!(text.lines().count(), 7);
    }

    #[test]
    fn csv_file_errors_name_the_path() {
        let recs = run_experiment(&small(vec![SolverKind::TwoApprox])).unwrap();
        let dir = std::env::temp_dir().join("lcs-no-such-dir/nested");
        match write_csv_file(&recs, &dir.join("out.csv")) {
            Err(Error::Io { path, .. }) => assert!(path.ends_with("out.csv")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_empty_config() {
        let mut cfg = small(vec![SolverKind::TwoApprox]);
        cfg.sizes.clear();
        assert!(matches!(run_experiment(&cfg), Err(Error::Usage(_))));
        let mut cfg = small(vec![SolverKind::TwoApprox]);
        cfg.runs_per_cell = 0;
        assert!(run_experiment(&cfg).is_err());
    }

    #[test]
    fn improvement_arithmetic() {
        let same = vec![
            record(10, SolverKind::TwoApprox, 0, 60.0),
            record(10, SolverKind::HybridGa, 0, 60.0),
        ];
        assert_eq!(
            improvement_summary(&same).unwrap()[0].mean_improvement_pts,
            0.0
        );

        let gap = vec![
            record(10, SolverKind::TwoApprox, 0, 60.0),
            record(10, SolverKind::HybridGa, 0, 50.0),
        ];
        let rows = improvement_summary(&gap).unwrap();
        assert_eq!(rows.len(), 1);
        assert!((rows[0].mean_improvement_pts - 10.0).abs() < 1e-12);

        let orphan = vec![
            record(10, SolverKind::TwoApprox, 0, 60.0),
            record(10, SolverKind::HybridGa, 1, 50.0),
        ];
        assert!(matches!(
            improvement_summary(&orphan),
            Err(Error::Domain(_))
        ));
        assert!(improvement_summary(&gap[..1]).is_err());
    }

    #[test]
    fn improvement_pools_sizes_but_cells_do_not() {
        let recs = vec![
            record(10, SolverKind::TwoApprox, 0, 80.0),
            record(10, SolverKind::HybridGa, 0, 70.0),
            record(20, SolverKind::TwoApprox, 0, 90.0),
            record(20, SolverKind::HybridGa, 0, 60.0),
        ];
        let pooled = improvement_summary(&recs).unwrap();
        assert_eq!(pooled.len(), 1);
        assert!((pooled[0].mean_improvement_pts - 20.0).abs() < 1e-12);
        let cells = improvement_by_cell(&recs).unwrap();
        assert_eq!(cells.len(), 2);
        assert_eq!(cells[1].n, Some(20));
        assert!((cells[1].mean_improvement_pts - 30.0).abs() < 1e-12);
    }

    #[test]
    fn critical_summary_extremes() {
        let mut cfg = small(vec![SolverKind::TwoApprox]);
        cfg.densities = vec![0.0, 1.0];
        cfg.sizes = vec![4, 9];
        let rows = critical_count_summary(&run_experiment(&cfg).unwrap());
        for r in rows {
            let want = if r.density == 0.0 { 0.0 } else { r.n as f64 };
            assert_eq!(r.mean_critical, want);
        }
    }

    #[test]
    fn summaries_render() {
        let recs =
            run_experiment(&small(vec![SolverKind::TwoApprox, SolverKind::HybridGa])).unwrap();
        let text = render_summaries(&recs);
        assert!(text.contains("mean_improvement_pts"));
        assert_eq!(ratio_summary(&recs).len(), 2);
    }
}
