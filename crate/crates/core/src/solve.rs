//! Uniform entry point over the available cover solvers.

use std::fmt;
use std::str::FromStr;

use crate::baselines::{exact_cover_with_budget, two_approx_cover_with, EdgePick};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hybrid_ga::{evolve, fitness, GaParams};
use crate::structured::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SolverKind {
    TwoApprox,
    Exact,
    HybridGa,
}

impl SolverKind {
    pub fn name(self) -> &'static str {
        match self {
            SolverKind::TwoApprox => "2approx",
            SolverKind::Exact => "exact",
            SolverKind::HybridGa => "hybrid-ga",
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "2approx" => Ok(SolverKind::TwoApprox),
            "exact" => Ok(SolverKind::Exact),
            "hybrid-ga" | "ga" => Ok(SolverKind::HybridGa),
            other => Err(Error::usage(format!(
                "unknown solver `{other}` (expected 2approx, exact or hybrid-ga)"
            ))),
        }
    }
}

/// A solver together with its settings.
#[derive(Clone, Debug, PartialEq)]
pub enum Solver {
    TwoApprox { pick: EdgePick, seed: u64 },
    Exact { budget: u64 },
    HybridGa(GaParams),
}

impl Solver {
    pub fn kind(&self) -> SolverKind {
        match self {
            Solver::TwoApprox { .. } => SolverKind::TwoApprox,
            Solver::Exact { .. } => SolverKind::Exact,
            Solver::HybridGa(_) => SolverKind::HybridGa,
        }
    }

    /// Default settings for `kind`, seeded with `seed` where it applies.
    pub fn default_for(kind: SolverKind, seed: u64) -> Self {
        match kind {
            SolverKind::TwoApprox => Solver::TwoApprox {
                pick: EdgePick::Random,
                seed,
            },
            SolverKind::Exact => Solver::Exact {
                budget: crate::baselines::DEFAULT_EXACT_BUDGET,
            },
            SolverKind::HybridGa => Solver::HybridGa(GaParams::default().with_seed(seed)),
        }
    }

    pub fn solve(&self, g: &Graph) -> Result<CoverSolution> {
        let (cover, seed, generations) = match self {
            Solver::TwoApprox { pick, seed } => (two_approx_cover_with(g, *pick, *seed), *seed, 0),
            Solver::Exact { budget } => (exact_cover_with_budget(g, *budget)?, 0, 0),
            Solver::HybridGa(params) => return evolve(g, params),
        };
        Ok(CoverSolution {
            fitness: fitness(g, &cover),
            cover,
            solver: self.kind(),
            seed,
            generations,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoverSolution {
    pub cover: VertexSet,
    /// `|cover| / n`.
    pub fitness: f64,
    pub solver: SolverKind,
    pub seed: u64,
    pub generations: usize,
}
