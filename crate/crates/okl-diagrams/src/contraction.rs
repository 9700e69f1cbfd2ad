//! Contraction graphs: two tree realizations with a Wick pairing of their
//! noise leaves, and the reduction to a weighted multigraph.
//!
//! Taking the covariance of two tree realizations expands, by the Isserlis
//! theorem, into a sum over all perfect matchings of the combined set of
//! noise leaves — `(2n-1)!!` terms for `2n` leaves. Each matching yields an
//! integral whose singularity structure is captured by a simplified
//! multigraph on the non-leaf vertices:
//!
//! - potential leaves integrate out against a bounded kernel and are
//!   dropped;
//! - each contracted noise pair becomes a weight-1 edge between the two
//!   leaves' parent vertices (the contracted-pair kernel has a distance
//!   singularity of order 1);
//! - each remaining gradient-kernel edge between non-leaf vertices keeps
//!   weight 2 (the gradient heat kernel has a parabolic singularity of
//!   order 2).
//!
//! A pair contracted under a common parent becomes a loop; loops carry a
//! bounded kernel value and do not enter any two-vertex singularity count.

use crate::symbol::{Tree, TreeSymbol};

/// Role of a vertex in a contraction graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeLabel {
    /// Root of one of the two tree copies (carries the copy index).
    Root(usize),
    /// Internal integration vertex.
    Internal,
    /// Noise bullet.
    NoiseLeaf,
    /// Boundary-potential bullet.
    PotentialLeaf,
}

/// Two tree realizations with a perfect matching of their noise leaves.
#[derive(Debug, Clone)]
pub struct ContractionGraph {
    /// Vertex roles; vertices `0` and `1` are the two roots.
    pub labels: Vec<NodeLabel>,
    /// Which tree copy (0 or 1) each vertex belongs to.
    pub tree_of: Vec<usize>,
    /// Distance from the root within the tree copy.
    pub depth: Vec<usize>,
    /// Directed gradient-kernel edges, parent to child.
    pub iprime_edges: Vec<(usize, usize)>,
    /// The matching: unordered pairs of noise-leaf vertex ids.
    pub matching: Vec<(usize, usize)>,
}

impl ContractionGraph {
    /// Parent of a non-root vertex.
    fn parent(&self, v: usize) -> usize {
        self.iprime_edges
            .iter()
            .find(|&&(_, c)| c == v)
            .map(|&(p, _)| p)
            .expect("every non-root vertex has a parent")
    }

    /// Ids of the noise-leaf vertices.
    pub fn noise_leaf_ids(&self) -> Vec<usize> {
        (0..self.labels.len())
            .filter(|&v| self.labels[v] == NodeLabel::NoiseLeaf)
            .collect()
    }
}

/// Skeleton shared by all matchings of a symbol pair.
struct Skeleton {
    labels: Vec<NodeLabel>,
    tree_of: Vec<usize>,
    depth: Vec<usize>,
    iprime_edges: Vec<(usize, usize)>,
}

impl Skeleton {
    fn add_vertex(&mut self, label: NodeLabel, tree: usize, depth: usize) -> usize {
        self.labels.push(label);
        self.tree_of.push(tree);
        self.depth.push(depth);
        self.labels.len() - 1
    }

    /// Attach the body of an integration edge below `parent`.
    fn attach(&mut self, parent: usize, sub: &Tree, tree: usize, depth: usize) {
        let label = match sub {
            Tree::Noise => NodeLabel::NoiseLeaf,
            Tree::Potential => NodeLabel::PotentialLeaf,
            _ => NodeLabel::Internal,
        };
        let v = self.add_vertex(label, tree, depth);
        self.iprime_edges.push((parent, v));
        self.expand(v, sub, tree, depth);
    }

    /// Expand the factors sitting at the vertex `at`.
    fn expand(&mut self, at: usize, t: &Tree, tree: usize, depth: usize) {
        match t {
            Tree::Noise | Tree::Potential | Tree::One | Tree::X => {}
            Tree::I(sub) | Tree::Ip(sub) => self.attach(at, sub, tree, depth + 1),
            Tree::Prod(factors) => {
                for f in factors {
                    self.expand(at, f, tree, depth);
                }
            }
        }
    }
}

/// All perfect matchings of `leaves`, built by always pairing the first
/// unmatched element; yields `(2n-1)!!` matchings, or none for odd counts.
fn perfect_matchings(leaves: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if leaves.len() % 2 != 0 {
        return Vec::new();
    }
    if leaves.is_empty() {
        return vec![Vec::new()];
    }
    let first = leaves[0];
    let mut out = Vec::new();
    for i in 1..leaves.len() {
        let partner = leaves[i];
        let rest: Vec<usize> = leaves[1..]
            .iter()
            .copied()
            .filter(|&v| v != partner)
            .collect();
        for mut tail in perfect_matchings(&rest) {
            tail.insert(0, (first, partner));
            out.push(tail);
        }
    }
    out
}

/// All contraction graphs of a symbol pair: one per perfect matching of the
/// combined noise leaves. An odd combined leaf count has no matchings and
/// yields an empty list.
pub fn enumerate_contractions(t1: &TreeSymbol, t2: &TreeSymbol) -> Vec<ContractionGraph> {
    let mut skel = Skeleton {
        labels: Vec::new(),
        tree_of: Vec::new(),
        depth: Vec::new(),
        iprime_edges: Vec::new(),
    };
    // Both roots first so they get ids 0 and 1.
    for copy in 0..2 {
        skel.add_vertex(NodeLabel::Root(copy), copy, 0);
    }
    for (copy, sym) in [t1, t2].into_iter().enumerate() {
        skel.expand(copy, &sym.structure, copy, 0);
    }
    let leaves: Vec<usize> = (0..skel.labels.len())
        .filter(|&v| skel.labels[v] == NodeLabel::NoiseLeaf)
        .collect();
    perfect_matchings(&leaves)
        .into_iter()
        .map(|matching| ContractionGraph {
            labels: skel.labels.clone(),
            tree_of: skel.tree_of.clone(),
            depth: skel.depth.clone(),
            iprime_edges: skel.iprime_edges.clone(),
            matching,
        })
        .collect()
}

/// The weighted multigraph describing the singularity structure of one
/// contraction integral.
#[derive(Debug, Clone)]
pub struct SimplifiedMultigraph {
    /// Number of vertices; `0` and `1` are the two roots.
    pub n_vertices: usize,
    /// Which tree copy each vertex came from.
    pub tree_of: Vec<usize>,
    /// Depth of each vertex in its tree copy.
    pub depth: Vec<usize>,
    /// Weighted multi-edges; loops (`u == v`) may occur for pairs
    /// contracted under a common parent.
    pub edges: Vec<(usize, usize, u8)>,
}

impl SimplifiedMultigraph {
    /// Total singularity weight between two distinct vertices.
    pub fn q(&self, u: usize, v: usize) -> i64 {
        debug_assert!(u != v);
        self.edges
            .iter()
            .filter(|&&(a, b, _)| (a, b) == (u, v) || (a, b) == (v, u))
            .map(|&(_, _, w)| w as i64)
            .sum()
    }

    /// Sum of all edge weights, loops included.
    pub fn total_weight(&self) -> i64 {
        self.edges.iter().map(|&(_, _, w)| w as i64).sum()
    }

    /// Vertices of the given tree copy at the given depth, in id order.
    pub fn vertices_at(&self, tree: usize, depth: usize) -> Vec<usize> {
        (0..self.n_vertices)
            .filter(|&v| self.tree_of[v] == tree && self.depth[v] == depth)
            .collect()
    }
}

/// Reduce a contraction graph to its simplified multigraph.
pub fn simplify(g: &ContractionGraph) -> SimplifiedMultigraph {
    let keep: Vec<usize> = (0..g.labels.len())
        .filter(|&v| {
            matches!(g.labels[v], NodeLabel::Root(_) | NodeLabel::Internal)
        })
        .collect();
    let mut new_id = vec![usize::MAX; g.labels.len()];
    for (idx, &v) in keep.iter().enumerate() {
        new_id[v] = idx;
    }
    let mut edges = Vec::new();
    for &(p, c) in &g.iprime_edges {
        if g.labels[c] == NodeLabel::Internal {
            edges.push((new_id[p], new_id[c], 2));
        }
    }
    for &(a, b) in &g.matching {
        edges.push((new_id[g.parent(a)], new_id[g.parent(b)], 1));
    }
    SimplifiedMultigraph {
        n_vertices: keep.len(),
        tree_of: keep.iter().map(|&v| g.tree_of[v]).collect(),
        depth: keep.iter().map(|&v| g.depth[v]).collect(),
        edges,
    }
}
