//! Explicit graphs: caterpillars, line graphs and H-joins, plus the dense
//! matrices attached to them.
//!
//! Vertices are numbered from 1. A caterpillar lists its spine first and then
//! the pendant vertices grouped by spine position; a line graph numbers its
//! vertices in the lexicographic order of the source edges.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::model::CaterpillarSpec;

/// Simple undirected graph on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from unordered pairs. Panics on loops, duplicates or
    /// endpoints outside `1..=n`.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut edges: Vec<_> = edges
            .into_iter()
            .map(|(u, v)| {
                assert!(u != v, "loop at vertex {u}");
                assert!((1..=n).contains(&u) && (1..=n).contains(&v), "endpoint out of range");
                (u.min(v), u.max(v))
            })
            .collect();
        edges.sort_unstable();
        let before = edges.len();
        edges.dedup();
        assert_eq!(before, edges.len(), "duplicate edge");
        Self { n, edges }
    }

    /// `K_0`, the graph without vertices.
    pub fn empty() -> Self {
        Self::new(0, [])
    }

    pub fn edgeless(n: usize) -> Self {
        Self::new(n, [])
    }

    pub fn complete(n: usize) -> Self {
        Self::new(n, (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))))
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|u| (u, u + 1)))
    }

    pub fn star(leaves: usize) -> Self {
        Self::new(leaves + 1, (2..=leaves + 1).map(|v| (1, v)))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u - 1] += 1;
            deg[v - 1] += 1;
        }
        deg
    }

    pub fn sorted_degrees(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable();
        d
    }

    pub fn adjacency(&self) -> DenseMatrix {
        let mut a = DenseMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            a[(u - 1, v - 1)] = 1.0;
            a[(v - 1, u - 1)] = 1.0;
        }
        a
    }

    /// Adjacency, degree, Laplacian and signless Laplacian matrices.
    pub fn matrices(&self) -> GraphMatrices {
        let a = self.adjacency();
        let d = DenseMatrix::from_diag(
            &self.degrees().iter().map(|&x| x as f64).collect::<Vec<_>>(),
        );
        let l = d.combine(1.0, &a, -1.0);
        let q = d.combine(1.0, &a, 1.0);
        GraphMatrices { a, d, l, q }
    }

    pub fn laplacian(&self) -> DenseMatrix {
        self.matrices().l
    }

    /// Vertex-edge incidence matrix (`n x m`), columns in edge order.
    pub fn incidence(&self) -> DenseMatrix {
        let mut inc = DenseMatrix::zeros(self.n, self.edges.len());
        for (j, &(u, v)) in self.edges.iter().enumerate() {
            inc[(u - 1, j)] = 1.0;
            inc[(v - 1, j)] = 1.0;
        }
        inc
    }

    /// Line graph. Vertex `j` of the result is the `j`-th edge of `self`.
    pub fn line_graph(&self) -> Result<Graph> {
        if self.edges.is_empty() {
            return Err(Error::NoEdges);
        }
        let m = self.edges.len();
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (j, &(u, v)) in self.edges.iter().enumerate() {
            incident[u - 1].push(j + 1);
            incident[v - 1].push(j + 1);
        }
        let mut out = Vec::new();
        for list in &incident {
            for (x, &e) in list.iter().enumerate() {
                for &f in &list[x + 1..] {
                    out.push((e, f));
                }
            }
        }
        // in a simple graph two edges share at most one endpoint
        Ok(Graph::new(m, out))
    }

    /// Induced subgraph on the listed vertices, renumbered in list order.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut pos = vec![0usize; self.n + 1];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i + 1;
        }
        Graph::new(
            keep.len(),
            self.edges
                .iter()
                .filter(|&&(u, v)| pos[u] > 0 && pos[v] > 0)
                .map(|&(u, v)| (pos[u], pos[v])),
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphMatrices {
    pub a: DenseMatrix,
    pub d: DenseMatrix,
    pub l: DenseMatrix,
    pub q: DenseMatrix,
}

/// Caterpillar `T(q_1, ..., q_k)`: spine `1..=k`, then the pendants of spine
/// vertex 1, those of vertex 2, and so on.
pub fn build_caterpillar(spec: &CaterpillarSpec) -> Graph {
    let k = spec.k();
    let mut edges: Vec<(usize, usize)> = (1..k).map(|i| (i, i + 1)).collect();
    let mut next = k + 1;
    for (i, &q) in spec.legs().iter().enumerate() {
        for _ in 0..q {
            edges.push((i + 1, next));
            next += 1;
        }
    }
    Graph::new(next - 1, edges)
}

/// H-join of `family` along `h`: the disjoint union of the family, plus every
/// edge between `V(G_r)` and `V(G_s)` for each edge `rs` of `h`.
pub fn h_join(h: &Graph, family: &[Graph]) -> Result<Graph> {
    if family.len() != h.order() {
        return Err(Error::FamilySizeMismatch {
            expected: h.order(),
            got: family.len(),
        });
    }
    let mut offset = Vec::with_capacity(family.len());
    let mut total = 0;
    for g in family {
        offset.push(total);
        total += g.order();
    }
    let mut edges = Vec::new();
    for (g, &off) in family.iter().zip(&offset) {
        edges.extend(g.edges().iter().map(|&(u, v)| (u + off, v + off)));
    }
    for &(r, s) in h.edges() {
        let (gr, gs) = (&family[r - 1], &family[s - 1]);
        for u in 1..=gr.order() {
            for v in 1..=gs.order() {
                edges.push((u + offset[r - 1], v + offset[s - 1]));
            }
        }
    }
    Ok(Graph::new(total, edges))
}

/// The template graph and family whose H-join is the line graph of the caterpillar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HJoinDecomposition {
    /// Vertices ordered `v_q1, v_12, v_q2, v_23, ..., v_qk`.
    pub h: Graph,
    /// `K_{q_i}` at the leg positions (including `K_0`), `K_1` at the joins.
    pub family: Vec<Graph>,
}

impl HJoinDecomposition {
    pub fn compose(&self) -> Result<Graph> {
        h_join(&self.h, &self.family)
    }

    /// `h` without the placeholder vertices that carry `K_0`.
    pub fn trimmed_template(&self) -> Graph {
        let keep: Vec<usize> = (1..=self.h.order())
            .filter(|&v| self.family[v - 1].order() > 0)
            .collect();
        self.h.induced(&keep)
    }
}

/// Expresses the line graph of `T(q)` as an H-join of complete graphs.
///
/// `h` has `2k - 1` vertices so it stays index-aligned with the family; the
/// vertex `v_qi` of a leg-free spine position is isolated and carries `K_0`.
/// Dropping those placeholders leaves the line graph of `T(delta(q))`.
pub fn linegraph_as_hjoin(spec: &CaterpillarSpec) -> Result<HJoinDecomposition> {
    let k = spec.k();
    if k < 2 {
        return Err(Error::SpecTooSmall { needed: 2, got: k });
    }
    let dim = 2 * k - 1;
    // leg vertex of spine i (0-based) sits at 1-based position 2i+1, the join
    // vertex between spines i and i+1 at 2i+2
    let leg = |i: usize| 2 * i + 1;
    let join = |i: usize| 2 * i + 2;
    let mut edges = Vec::new();
    for i in 0..k - 1 {
        if i + 1 < k - 1 {
            edges.push((join(i), join(i + 1)));
        }
    }
    let mut family = Vec::with_capacity(dim);
    for (i, &q) in spec.legs().iter().enumerate() {
        if q > 0 {
            if i > 0 {
                edges.push((join(i - 1), leg(i)));
            }
            if i + 1 < k {
                edges.push((leg(i), join(i)));
            }
        }
        family.push(Graph::complete(q as usize));
        if i + 1 < k {
            family.push(Graph::complete(1));
        }
    }
    Ok(HJoinDecomposition {
        h: Graph::new(dim, edges),
        family,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(q: &[i64]) -> CaterpillarSpec {
        CaterpillarSpec::new(q).unwrap()
    }

    #[test]
    fn caterpillar_shapes() {
        let g = build_caterpillar(&spec(&[1, 1]));
        assert_eq!(g.order(), 4);
        assert_eq!(g.edges(), &[(1, 2), (1, 3), (2, 4)]);

        assert_eq!(build_caterpillar(&spec(&[3])), Graph::star(3));

        let g = build_caterpillar(&spec(&[4, 9, 0, 1]));
        assert_eq!((g.order(), g.edge_count()), (18, 17));

        assert_eq!(build_caterpillar(&spec(&[0])).order(), 1);
    }

    #[test]
    fn small_matrices() {
        let m = Graph::complete(2).matrices();
        assert_eq!(m.l, DenseMatrix::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]));

        let m = Graph::path(3).matrices();
        assert_eq!(
            m.q,
            DenseMatrix::from_rows(&[
                vec![1.0, 1.0, 0.0],
                vec![1.0, 2.0, 1.0],
                vec![0.0, 1.0, 1.0]
            ])
        );
        assert!(m.a.is_symmetric() && m.l.is_symmetric());
        assert_eq!(m.a.trace(), 0.0);
    }

    #[test]
    fn incidence_examples() {
        assert_eq!(
            Graph::complete(2).incidence(),
            DenseMatrix::from_rows(&[vec![1.0], vec![1.0]])
        );
        assert_eq!(
            Graph::path(3).incidence(),
            DenseMatrix::from_rows(&[vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]])
        );
    }

    #[test]
    fn line_graph_examples() {
        assert_eq!(Graph::path(4).line_graph().unwrap(), Graph::path(3));
        assert_eq!(Graph::star(3).line_graph().unwrap(), Graph::complete(3));
        for q in 1..=6 {
            let lg = build_caterpillar(&spec(&[q, 0])).line_graph().unwrap();
            assert_eq!(lg, Graph::complete(q as usize + 1));
        }
        assert_eq!(Graph::edgeless(3).line_graph(), Err(Error::NoEdges));
    }

    #[test]
    fn h_join_examples() {
        let g = h_join(&Graph::complete(2), &[Graph::complete(1), Graph::complete(1)]).unwrap();
        assert_eq!(g, Graph::complete(2));

        let g = h_join(&Graph::complete(2), &[Graph::edgeless(2), Graph::complete(1)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.sorted_degrees(), vec![1, 1, 2]);

        let err = h_join(&Graph::complete(2), &[Graph::complete(1)]);
        assert_eq!(err, Err(Error::FamilySizeMismatch { expected: 2, got: 1 }));

        // K_0 members contribute nothing
        let g = h_join(&Graph::path(3), &[Graph::complete(2), Graph::empty(), Graph::complete(1)])
            .unwrap();
        assert_eq!(g, Graph::new(3, [(1, 2)]));
    }

    #[test]
    fn decomposition_family_matches_example() {
        let d = linegraph_as_hjoin(&spec(&[4, 9, 0, 1])).unwrap();
        let orders: Vec<usize> = d.family.iter().map(Graph::order).collect();
        assert_eq!(orders, vec![4, 1, 9, 1, 0, 1, 1]);
        assert!(d.family.iter().all(|g| g.edge_count() == g.order() * g.order().saturating_sub(1) / 2));

        let d = linegraph_as_hjoin(&spec(&[1, 1])).unwrap();
        assert_eq!(d.h, Graph::path(3));
        assert_eq!(d.family, vec![Graph::complete(1); 3]);

        assert_eq!(
            linegraph_as_hjoin(&spec(&[5])),
            Err(Error::SpecTooSmall { needed: 2, got: 1 })
        );
    }

    #[test]
    fn template_of_nine_spine_example() {
        // T(q1, q2, 0, 0, 0, q6, q7, q8, q9) with the listed legs positive
        let s = spec(&[2, 3, 0, 0, 0, 1, 4, 2, 5]);
        let d = linegraph_as_hjoin(&s).unwrap();
        let nonempty = d.family.iter().filter(|g| g.order() > 0).count();
        assert_eq!(nonempty, 14);
        let t = d.trimmed_template();
        assert_eq!(t.order(), 14);
        let reference = build_caterpillar(&spec(&[1, 1, 0, 0, 0, 1, 1, 1, 1]))
            .line_graph()
            .unwrap();
        assert_eq!(t.edge_count(), reference.edge_count());
        assert_eq!(t.sorted_degrees(), reference.sorted_degrees());
        let lg = build_caterpillar(&s).line_graph().unwrap();
        let composed = d.compose().unwrap();
        assert_eq!(composed.order(), lg.order());
        assert_eq!(composed.edge_count(), lg.edge_count());
        assert_eq!(composed.sorted_degrees(), lg.sorted_degrees());
    }
}
