use super::{Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    /// Connected and acyclic. A lone vertex is a trivial tree.
    Tree,
    /// Connected, every vertex of degree two.
    SimpleCycle,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Ascending vertex ids.
    pub vertices: Vec<Vertex>,
    pub kind: ComponentKind,
}

/// Connected components ordered by their smallest vertex.
pub fn classify_components(g: &Graph) -> Vec<Component> {
    let mut seen = vec![false; g.order()];
    let mut out = Vec::new();
    let mut stack = Vec::new();

    for root in g.vertices() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        stack.push(root);
        let mut vertices = Vec::new();
        let mut degree_sum = 0;
        let mut all_degree_two = true;
        while let Some(u) = stack.pop() {
            vertices.push(u);
            let nbrs = g.neighbors(u);
            degree_sum += nbrs.len();
            all_degree_two &= nbrs.len() == 2;
            for &v in nbrs {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        vertices.sort_unstable();
        let edges = degree_sum / 2;
        let kind = if edges + 1 == vertices.len() {
            ComponentKind::Tree
        } else if all_degree_two {
            ComponentKind::SimpleCycle
        } else {
            ComponentKind::Other
        };
        out.push(Component { vertices, kind });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_and_path() {
        let g = Graph::cycle(4).disjoint_union(&Graph::path(3));
        let comps = classify_components(&g);
        assert_eq!(
            comps,
            vec![
                Component {
                    vertices: vec![0, 1, 2, 3],
                    kind: ComponentKind::SimpleCycle
                },
                Component {
                    vertices: vec![4, 5, 6],
                    kind: ComponentKind::Tree
                },
            ]
        );
    }

    #[test]
    fn clique_and_singleton() {
        let comps = classify_components(&Graph::complete(4));
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].kind, ComponentKind::Other);

        let comps = classify_components(&Graph::new(1));
        assert_eq!(
            comps,
            vec![Component {
                vertices: vec![0],
                kind: ComponentKind::Tree
            }]
        );
    }

    #[test]
    fn cycle_with_tail_is_other() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert_eq!(classify_components(&g)[0].kind, ComponentKind::Other);
    }
}
