use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use super::{first_conflict, BinaryCharacterMatrix};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhyloNode {
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Characters labelling the edge from the parent into this node.
    pub edge_labels: Vec<usize>,
    /// Set on leaves only.
    pub species: Option<usize>,
}

/// Rooted tree stored as an arena; node 0 is the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhyloTree {
    pub nodes: Vec<PhyloNode>,
}

impl PhyloTree {
    fn with_root() -> Self {
        PhyloTree {
            nodes: vec![PhyloNode {
                parent: None,
                children: Vec::new(),
                edge_labels: Vec::new(),
                species: None,
            }],
        }
    }

    fn add_child(&mut self, parent: usize, labels: Vec<usize>) -> usize {
        let id = self.nodes.len();
        self.nodes.push(PhyloNode {
            parent: Some(parent),
            children: Vec::new(),
            edge_labels: labels,
            species: None,
        });
        self.nodes[parent].children.push(id);
        id
    }

    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].children.is_empty())
    }

    /// Indented parent-to-child listing, one node per line:
    /// `-[c,..]-> name` where `name` is a species or `*` for inner nodes.
    pub fn render(&self, mtx: &BinaryCharacterMatrix) -> String {
        let mut out = String::from("root\n");
        let mut stack: Vec<(usize, usize)> = self.nodes[0]
            .children
            .iter()
            .rev()
            .map(|&c| (c, 1))
            .collect();
        while let Some((id, depth)) = stack.pop() {
            let node = &self.nodes[id];
            let labels: Vec<String> = node.edge_labels.iter().map(ToString::to_string).collect();
            let name = node
                .species
                .map(|s| mtx.species_name(s))
                .unwrap_or_else(|| "*".to_string());
            writeln!(
                out,
                "{:indent$}-[{}]-> {name}",
                "",
                labels.join(","),
                indent = 2 * depth
            )
            .unwrap();
            stack.extend(node.children.iter().rev().map(|&c| (c, depth + 1)));
        }
        out
    }
}

pub fn build_perfect_phylogeny(mtx: &BinaryCharacterMatrix) -> Result<PhyloTree> {
    let all: Vec<usize> = (0..mtx.characters()).collect();
    build_on_columns(mtx, &all)
}

/// Characters are grouped by identical species sets and visited in order of
/// decreasing set size (ties by lowest column). Each species walks down
/// from the root through the groups it exhibits, creating edges on demand.
pub(crate) fn build_on_columns(
    mtx: &BinaryCharacterMatrix,
    columns: &[usize],
) -> Result<PhyloTree> {
    if let Some((a, b)) = first_conflict(mtx, columns) {
        return Err(Error::Domain(format!(
            "characters {a} and {b} are incompatible; no perfect phylogeny exists"
        )));
    }

    let mut groups: Vec<(BTreeSet<usize>, Vec<usize>)> = Vec::new();
    let mut by_set: HashMap<BTreeSet<usize>, usize> = HashMap::new();
    for &j in columns {
        let set = mtx.column(j);
        if set.is_empty() {
            continue;
        }
        match by_set.get(&set) {
            Some(&g) => groups[g].1.push(j),
            None => {
                by_set.insert(set.clone(), groups.len());
                groups.push((set, vec![j]));
            }
        }
    }
    for g in &mut groups {
        g.1.sort_unstable();
    }
    groups.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.1[0].cmp(&b.1[0])));

    let mut tree = PhyloTree::with_root();
    let mut child_for: HashMap<(usize, usize), usize> = HashMap::new();
    let mut ends: Vec<Vec<usize>> = vec![Vec::new()];
    for s in 0..mtx.species() {
        let mut node = 0;
        for (gi, (set, labels)) in groups.iter().enumerate() {
            if !set.contains(&s) {
                continue;
            }
            node = match child_for.get(&(node, gi)) {
                Some(&c) => c,
                None => {
                    let c = tree.add_child(node, labels.clone());
                    child_for.insert((node, gi), c);
                    ends.push(Vec::new());
                    c
                }
            };
        }
        ends[node].push(s);
    }

    for (node, species) in ends.into_iter().enumerate() {
        if node != 0 && species.len() == 1 && tree.nodes[node].children.is_empty() {
            tree.nodes[node].species = Some(species[0]);
            continue;
        }
        for s in species {
            let leaf = tree.add_child(node, Vec::new());
            tree.nodes[leaf].species = Some(s);
        }
    }
    Ok(tree)
}

pub fn verify_phylo_tree(mtx: &BinaryCharacterMatrix, t: &PhyloTree) -> bool {
    let all: Vec<usize> = (0..mtx.characters()).collect();
    verify_phylo_tree_on(mtx, &all, t)
}

/// Checks `t` against the matrix restricted to `columns`:
/// exactly `m` leaves, each species on exactly one leaf, each character
/// with a non-empty species set on exactly one edge (empty ones on none),
/// and every root-to-leaf path labelled with exactly that species'
/// characters.
pub fn verify_phylo_tree_on(mtx: &BinaryCharacterMatrix, columns: &[usize], t: &PhyloTree) -> bool {
    if !well_formed(t) {
        return false;
    }

    let leaves: Vec<usize> = t.leaves().collect();
    if leaves.len() != mtx.species() {
        return false;
    }

    let mut leaf_of = vec![None; mtx.species()];
    for (id, node) in t.nodes.iter().enumerate() {
        match (node.species, node.children.is_empty()) {
            (Some(s), true) if s < mtx.species() && leaf_of[s].is_none() => leaf_of[s] = Some(id),
            (None, false) => {}
            _ => return false,
        }
    }
    if leaf_of.iter().any(Option::is_none) {
        return false;
    }

    let wanted: BTreeSet<usize> = columns.iter().copied().collect();
    let mut uses: HashMap<usize, usize> = HashMap::new();
    for node in &t.nodes {
        for &c in &node.edge_labels {
            if !wanted.contains(&c) {
                return false;
            }
            *uses.entry(c).or_default() += 1;
        }
    }
    for &c in &wanted {
        let expected = usize::from((0..mtx.species()).any(|s| mtx.cell(s, c)));
        if uses.get(&c).copied().unwrap_or(0) != expected {
            return false;
        }
    }

    for (s, leaf) in leaf_of.into_iter().enumerate() {
        let mut on_path = BTreeSet::new();
        let mut cur = leaf.unwrap();
        while let Some(p) = t.nodes[cur].parent {
            on_path.extend(t.nodes[cur].edge_labels.iter().copied());
            cur = p;
        }
        let has: BTreeSet<usize> = wanted.iter().copied().filter(|&c| mtx.cell(s, c)).collect();
        if on_path != has {
            return false;
        }
    }
    true
}

// node 0 is the unique root, parent/child links agree, and every node is
// reached exactly once from the root
fn well_formed(t: &PhyloTree) -> bool {
    let n = t.nodes.len();
    if n == 0 || t.nodes[0].parent.is_some() || !t.nodes[0].edge_labels.is_empty() {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &c in &t.nodes[u].children {
            if c >= n || seen[c] || t.nodes[c].parent != Some(u) {
                return false;
            }
            seen[c] = true;
            count += 1;
            stack.push(c);
        }
    }
    count == n
}
