//! Power counting on simplified multigraphs.
//!
//! For a vertex subset `S` the degree is
//!
//! ```text
//! deg(S) = 3 (|S| - 1) - sum_{{u,v} in S, u != v} Q(u, v),
//! ```
//!
//! where `Q` is the total singularity weight between two vertices and the
//! factor 3 is the parabolic dimension of space-time. The contraction
//! integral converges iff `deg(S) > 0` for every subset with at least two
//! vertices; the blow-up exponent of the resulting kernel is
//! `gamma = max { 3 - deg(S) : S contains both roots }`.
//!
//! The exhaustive subset check is cross-validated against a three-condition
//! shortcut: no pair with `Q >= 3`, no triangle with pair weight 6 or more,
//! and for each path of length three or star on four vertices in the
//! `Q >= 2` subgraph, total pair weight at most 8. For graphs whose total
//! weight is at most 12 (all graphs arising from the symbol table) the
//! shortcut is equivalent to the exhaustive check; a disagreement therefore
//! indicates a bug and is reported as an internal-consistency error.

use crate::contraction::SimplifiedMultigraph;
use crate::DiagramError;

/// Outcome of a convergence check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Every subset of two or more vertices has strictly positive degree.
    Pass,
    /// Some subset has non-positive degree; the witness attains the
    /// minimum degree.
    Fail {
        /// Offending vertex subset, sorted.
        witness: Vec<usize>,
        /// Its degree.
        degree: i64,
    },
}

fn validated_subset(g: &SimplifiedMultigraph, subset: &[usize]) -> Result<Vec<usize>, DiagramError> {
    if subset.is_empty() {
        return Err(DiagramError::EmptySubset);
    }
    let mut s = subset.to_vec();
    s.sort_unstable();
    s.dedup();
    if let Some(&v) = s.iter().find(|&&v| v >= g.n_vertices) {
        return Err(DiagramError::UnknownVertex(v));
    }
    Ok(s)
}

/// Degree of a vertex subset. Errors on an empty subset or an out-of-range
/// vertex id; duplicates are ignored.
pub fn degree(g: &SimplifiedMultigraph, subset: &[usize]) -> Result<i64, DiagramError> {
    let s = validated_subset(g, subset)?;
    let mut q_sum = 0i64;
    for (i, &u) in s.iter().enumerate() {
        for &v in &s[i + 1..] {
            q_sum += g.q(u, v);
        }
    }
    Ok(3 * (s.len() as i64 - 1) - q_sum)
}

/// The subset of minimal degree among all subsets with at least two
/// vertices (ties broken towards smaller subsets by enumeration order).
fn minimal_degree_subset(g: &SimplifiedMultigraph) -> (Vec<usize>, i64) {
    let n = g.n_vertices;
    assert!(n <= 24, "exhaustive subset check limited to small graphs");
    let mut best: Option<(Vec<usize>, i64)> = None;
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() < 2 {
            continue;
        }
        let subset: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        let d = degree(g, &subset).expect("valid subset");
        if best.as_ref().map_or(true, |&(_, b)| d < b) {
            best = Some((subset, d));
        }
    }
    best.expect("at least two vertices")
}

/// The three-condition shortcut: sufficient for convergence in general,
/// and equivalent to the exhaustive check when the total weight is at
/// most 12.
fn shortcut_passes(g: &SimplifiedMultigraph) -> bool {
    let n = g.n_vertices;
    // Condition 1: no pair with weight 3 or more.
    for u in 0..n {
        for v in (u + 1)..n {
            if g.q(u, v) >= 3 {
                return false;
            }
        }
    }
    // Condition 2: no triangle with total pair weight 6 or more.
    for u in 0..n {
        for v in (u + 1)..n {
            for w in (v + 1)..n {
                if g.q(u, v) + g.q(v, w) + g.q(u, w) >= 6 {
                    return false;
                }
            }
        }
    }
    // Condition 3: on four distinct vertices, a path or star carrying
    // total weight 6 forces the six pair weights to sum to at most 8.
    let quad_ok = |vs: [usize; 4]| {
        let total: i64 = (0..4)
            .flat_map(|i| ((i + 1)..4).map(move |j| (i, j)))
            .map(|(i, j)| g.q(vs[i], vs[j]))
            .sum();
        total <= 8
    };
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                for z in 0..n {
                    if u == v || u == w || u == z || v == w || v == z || w == z {
                        continue;
                    }
                    let path = g.q(u, v) + g.q(v, w) + g.q(w, z) == 6;
                    let star = g.q(u, v) + g.q(u, w) + g.q(u, z) == 6;
                    if (path || star) && !quad_ok([u, v, w, z]) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Check strict positivity of the degree on every subset of two or more
/// vertices, running both the exhaustive enumeration and the shortcut and
/// demanding that they agree.
pub fn check_convergent(g: &SimplifiedMultigraph) -> Result<Verdict, DiagramError> {
    if g.n_vertices < 2 {
        return Ok(Verdict::Pass);
    }
    let (witness, min_deg) = minimal_degree_subset(g);
    let exhaustive_pass = min_deg > 0;
    let shortcut_pass = shortcut_passes(g);
    if exhaustive_pass != shortcut_pass {
        return Err(DiagramError::InternalInconsistency(format!(
            "exhaustive check ({}) disagrees with shortcut ({}); minimal subset {:?} has degree {}",
            exhaustive_pass, shortcut_pass, witness, min_deg
        )));
    }
    if exhaustive_pass {
        Ok(Verdict::Pass)
    } else {
        Ok(Verdict::Fail {
            witness,
            degree: min_deg,
        })
    }
}

/// Blow-up exponent `gamma = max { 3 - deg(S) : both roots in S }`.
/// Requires a convergent graph.
pub fn gamma(g: &SimplifiedMultigraph) -> Result<i64, DiagramError> {
    match check_convergent(g)? {
        Verdict::Pass => {}
        Verdict::Fail { witness, degree } => {
            return Err(DiagramError::DivergentGraph { witness, degree })
        }
    }
    let n = g.n_vertices;
    let mut best = i64::MIN;
    for mask in 0u32..(1u32 << n) {
        if mask & 0b11 != 0b11 {
            continue; // both roots required
        }
        let subset: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        best = best.max(3 - degree(g, &subset)?);
    }
    Ok(best)
}

/// Degree table over subsets of non-root vertices: each entry is
/// `deg(subset + both roots) - 3`, the convention used when tabulating the
/// root-containing subdiagrams of a contraction. `gamma` equals minus the
/// minimum over the full table.
pub fn gamma_table(
    g: &SimplifiedMultigraph,
    subsets: &[Vec<usize>],
) -> Result<Vec<i64>, DiagramError> {
    subsets
        .iter()
        .map(|s| {
            if s.iter().any(|&v| v < 2) {
                return Err(DiagramError::UnknownVertex(*s.iter().find(|&&v| v < 2).unwrap()));
            }
            let mut full = vec![0, 1];
            full.extend_from_slice(s);
            Ok(degree(g, &full)? - 3)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: Vec<(usize, usize, u8)>) -> SimplifiedMultigraph {
        SimplifiedMultigraph {
            n_vertices: n,
            tree_of: vec![0; n],
            depth: vec![0; n],
            edges,
        }
    }

    #[test]
    fn singleton_subset_has_degree_zero() {
        let g = graph(3, vec![(0, 1, 2)]);
        assert_eq!(degree(&g, &[2]).unwrap(), 0);
    }

    #[test]
    fn two_vertices_two_unit_edges() {
        let g = graph(2, vec![(0, 1, 1), (0, 1, 1)]);
        assert_eq!(degree(&g, &[0, 1]).unwrap(), 1);
        assert_eq!(check_convergent(&g).unwrap(), Verdict::Pass);
        // Only root-containing subset is the full set: gamma = 3 - 1 = 2.
        assert_eq!(gamma(&g).unwrap(), 2);
    }

    #[test]
    fn empty_subset_is_a_domain_error() {
        let g = graph(2, vec![]);
        assert!(matches!(degree(&g, &[]), Err(DiagramError::EmptySubset)));
    }

    #[test]
    fn out_of_range_vertex_is_rejected() {
        let g = graph(2, vec![]);
        assert!(matches!(
            degree(&g, &[0, 7]),
            Err(DiagramError::UnknownVertex(7))
        ));
    }

    #[test]
    fn weight_three_pair_fails_with_two_vertex_witness() {
        // One unit edge atop a weight-2 edge: degree 3 - 3 = 0.
        let g = graph(2, vec![(0, 1, 2), (0, 1, 1)]);
        match check_convergent(&g).unwrap() {
            Verdict::Fail { witness, degree } => {
                assert_eq!(witness, vec![0, 1]);
                assert_eq!(degree, 0);
            }
            Verdict::Pass => panic!("expected failure"),
        }
        assert!(matches!(
            gamma(&g),
            Err(DiagramError::DivergentGraph { .. })
        ));
    }

    #[test]
    fn loops_do_not_affect_the_degree() {
        let g = graph(2, vec![(0, 0, 1), (1, 1, 1), (0, 1, 1)]);
        assert_eq!(degree(&g, &[0, 1]).unwrap(), 2);
        assert_eq!(check_convergent(&g).unwrap(), Verdict::Pass);
    }

    #[test]
    fn single_weight_one_edge_between_roots() {
        let g = graph(2, vec![(0, 1, 1)]);
        assert_eq!(degree(&g, &[0, 1]).unwrap(), 2);
        assert_eq!(gamma(&g).unwrap(), 1);
    }

    #[test]
    fn triangle_of_weight_two_edges_fails() {
        let g = graph(3, vec![(0, 1, 2), (1, 2, 2), (0, 2, 2)]);
        match check_convergent(&g).unwrap() {
            Verdict::Fail { witness, degree } => {
                assert_eq!(witness, vec![0, 1, 2]);
                assert_eq!(degree, 0);
            }
            Verdict::Pass => panic!("expected failure"),
        }
    }

    #[test]
    fn gamma_table_rejects_root_vertices_in_subsets() {
        let g = graph(3, vec![(0, 1, 1)]);
        assert!(gamma_table(&g, &[vec![0]]).is_err());
        // deg({0,1}) - 3 = 2 - 3 = -1; deg({0,1,2}) - 3 = 5 - 3 = 2.
        assert_eq!(gamma_table(&g, &[vec![], vec![2]]).unwrap(), vec![-1, 2]);
    }
}
