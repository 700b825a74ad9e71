//! Binary character matrices, pairwise compatibility and perfect phylogenies.
//!
//! Two characters are compatible when the sets of species exhibiting them
//! are disjoint or nested. A matrix admits a perfect phylogeny exactly when
//! its conflict graph (one vertex per character, one edge per incompatible
//! pair) has no edges, so the largest compatible subset of characters is
//! the complement of a minimum vertex cover of that graph.

pub mod io;
mod tree;

pub use tree::{
    build_perfect_phylogeny, verify_phylo_tree, verify_phylo_tree_on, PhyloNode, PhyloTree,
};

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::solve::{CoverSolution, Solver, SolverKind};

/// `m` species by `n` characters; `cell(i, j)` is true iff species `i`
/// exhibits character `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryCharacterMatrix {
    species: usize,
    characters: usize,
    cells: Vec<bool>,
    pub species_labels: Option<Vec<String>>,
    pub character_labels: Option<Vec<String>>,
}

impl BinaryCharacterMatrix {
    pub fn from_rows<R: AsRef<[bool]>>(rows: &[R]) -> Result<Self> {
        let species = rows.len();
        let characters = rows.first().map_or(0, |r| r.as_ref().len());
        if species == 0 || characters == 0 {
            return Err(Error::usage(
                "a character matrix needs at least one row and one column",
            ));
        }
        let mut cells = Vec::with_capacity(species * characters);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != characters {
                return Err(Error::usage(format!(
                    "row {i} has {} cells, expected {characters}",
                    r.len()
                )));
            }
            cells.extend_from_slice(r);
        }
        Ok(BinaryCharacterMatrix {
            species,
            characters,
            cells,
            species_labels: None,
            character_labels: None,
        })
    }

    /// Builds a matrix from per-character species sets.
    pub fn from_columns(species: usize, columns: &[BTreeSet<usize>]) -> Result<Self> {
        let rows: Vec<Vec<bool>> = (0..species)
            .map(|i| columns.iter().map(|c| c.contains(&i)).collect())
            .collect();
        if let Some(bad) = columns.iter().flatten().find(|&&i| i >= species) {
            return Err(Error::usage(format!("species {bad} out of range")));
        }
        Self::from_rows(&rows)
    }

    pub fn species(&self) -> usize {
        self.species
    }

    pub fn characters(&self) -> usize {
        self.characters
    }

    pub fn cell(&self, species: usize, character: usize) -> bool {
        self.cells[species * self.characters + character]
    }

    pub fn row(&self, species: usize) -> &[bool] {
        &self.cells[species * self.characters..(species + 1) * self.characters]
    }

    pub fn species_name(&self, i: usize) -> String {
        self.species_labels
            .as_ref()
            .and_then(|l| l.get(i).cloned())
            .unwrap_or_else(|| format!("s{i}"))
    }

    /// Column support, without bounds checking.
    pub(crate) fn column(&self, j: usize) -> BTreeSet<usize> {
        (0..self.species).filter(|&i| self.cell(i, j)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterSpeciesSet {
    pub character: usize,
    pub species: BTreeSet<usize>,
}

pub fn species_set(mtx: &BinaryCharacterMatrix, j: usize) -> Result<CharacterSpeciesSet> {
    if j >= mtx.characters() {
        return Err(Error::usage(format!(
            "character {j} out of range (matrix has {})",
            mtx.characters()
        )));
    }
    Ok(CharacterSpeciesSet {
        character: j,
        species: mtx.column(j),
    })
}

/// Disjoint or nested.
pub fn compatible(a: &CharacterSpeciesSet, b: &CharacterSpeciesSet) -> bool {
    sets_compatible(&a.species, &b.species)
}

pub(crate) fn sets_compatible(a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> bool {
    a.is_disjoint(b) || a.is_subset(b) || b.is_subset(a)
}

pub fn conflict_graph(mtx: &BinaryCharacterMatrix) -> Graph {
    let cols: Vec<BTreeSet<usize>> = (0..mtx.characters()).map(|j| mtx.column(j)).collect();
    let mut g = Graph::new(cols.len());
    for i in 0..cols.len() {
        for j in i + 1..cols.len() {
            if !sets_compatible(&cols[i], &cols[j]) {
                g.add_edge(i, j).expect("pairs are distinct");
            }
        }
    }
    g
}

pub fn is_perfect_phylogeny(mtx: &BinaryCharacterMatrix) -> bool {
    conflict_graph(mtx).edge_count() == 0
}

/// Whether the listed columns are pairwise compatible.
pub fn is_compatible_subset(mtx: &BinaryCharacterMatrix, columns: &[usize]) -> bool {
    first_conflict(mtx, columns).is_none()
}

pub(crate) fn first_conflict(
    mtx: &BinaryCharacterMatrix,
    columns: &[usize],
) -> Option<(usize, usize)> {
    let sets: Vec<BTreeSet<usize>> = columns.iter().map(|&j| mtx.column(j)).collect();
    for a in 0..sets.len() {
        for b in a + 1..sets.len() {
            if !sets_compatible(&sets[a], &sets[b]) {
                return Some((columns[a], columns[b]));
            }
        }
    }
    None
}

/// Result of reducing a matrix to a compatible set of characters.
#[derive(Clone, Debug)]
pub struct CompatibleSubset {
    /// Ascending column indices that survive.
    pub kept: Vec<usize>,
    /// Ascending column indices removed; a vertex cover of the conflict graph.
    pub dropped: Vec<usize>,
    /// Kept columns with no 1-cell; they label no tree edge.
    pub zero_columns: Vec<usize>,
    pub tree: PhyloTree,
    pub solution: CoverSolution,
}

impl CompatibleSubset {
    pub fn render(&self, mtx: &BinaryCharacterMatrix) -> String {
        let line = |out: &mut String, name: &str, v: &[usize]| {
            out.push_str(name);
            for j in v {
                write!(out, " {j}").unwrap();
            }
            out.push('\n');
        };
        let mut out = String::new();
        line(&mut out, "kept:", &self.kept);
        line(&mut out, "dropped:", &self.dropped);
        line(
            &mut out,
            "zero columns (kept, on no edge):",
            &self.zero_columns,
        );
        out.push_str(&self.tree.render(mtx));
        out
    }
}

/// Drops a vertex cover of the conflict graph found by `solver` and builds
/// the perfect phylogeny of what remains.
pub fn largest_compatible_subset(
    mtx: &BinaryCharacterMatrix,
    solver: &Solver,
) -> Result<CompatibleSubset> {
    let g = conflict_graph(mtx);
    let solution = solver.solve(&g)?;
    let dropped: Vec<usize> = solution.cover.iter().copied().collect();
    let kept: Vec<usize> = (0..mtx.characters())
        .filter(|j| !solution.cover.contains(j))
        .collect();
    let zero_columns = kept
        .iter()
        .copied()
        .filter(|&j| (0..mtx.species()).all(|i| !mtx.cell(i, j)))
        .collect();
    let tree = tree::build_on_columns(mtx, &kept)?;
    Ok(CompatibleSubset {
        kept,
        dropped,
        zero_columns,
        tree,
        solution,
    })
}

/// [`largest_compatible_subset`] with a solver chosen by name.
pub fn largest_compatible_subset_named(
    mtx: &BinaryCharacterMatrix,
    solver: &str,
    seed: u64,
) -> Result<CompatibleSubset> {
    let kind: SolverKind = solver.parse()?;
    largest_compatible_subset(mtx, &Solver::default_for(kind, seed))
}
