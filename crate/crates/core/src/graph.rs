//! Directed multigraphs, spanning forests and the forest matrix `C`.
//!
//! A [`Graph`] keeps its edges in input order; that order is the canonical
//! edge order used by every downstream construction. Loops and parallel
//! edges are allowed and never merged.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = u32;

/// A directed edge, stored as indices into [`Graph::vertices`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
}

impl Graph {
    /// Builds a graph from an explicit vertex set and `(tail, head)` id pairs.
    ///
    /// Vertices are sorted and deduplicated; every endpoint must be listed.
    pub fn new(mut vertices: Vec<VertexId>, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.is_empty() {
            return Err(Error::InvalidGraph("a graph needs at least one vertex".into()));
        }
        let index = |id: VertexId| {
            vertices
                .binary_search(&id)
                .map_err(|_| Error::InvalidGraph(format!("edge endpoint {id} is not a vertex")))
        };
        let edges = edges
            .iter()
            .map(|&(t, h)| {
                Ok(Edge {
                    tail: index(t)?,
                    head: index(h)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { vertices, edges })
    }

    /// Builds a graph whose vertex set is the union of the edge endpoints.
    pub fn from_edges(edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let vertices = edges.iter().flat_map(|&(t, h)| [t, h]).collect();
        Self::new(vertices, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edges as `(tail id, head id)` pairs in canonical order.
    pub fn edge_ids(&self) -> Vec<(VertexId, VertexId)> {
        self.edges
            .iter()
            .map(|e| (self.vertices[e.tail], self.vertices[e.head]))
            .collect()
    }

    /// Vertex-edge incidence matrix: column `e` has +1 at the head, -1 at the
    /// tail, and is zero for a loop.
    pub fn incidence_matrix(&self) -> Vec<Vec<i64>> {
        let mut a = vec![vec![0i64; self.edges.len()]; self.vertices.len()];
        for (j, e) in self.edges.iter().enumerate() {
            if !e.is_loop() {
                a[e.head][j] += 1;
                a[e.tail][j] -= 1;
            }
        }
        a
    }

    /// The same graph with edge `e` reversed.
    pub fn with_reversed_edge(&self, e: usize) -> Self {
        let mut g = self.clone();
        let edge = &mut g.edges[e];
        std::mem::swap(&mut edge.tail, &mut edge.head);
        g
    }

    /// Vertex index sets of the connected components, ordered by smallest
    /// vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            uf.union(e.tail, e.head);
        }
        let mut by_root: Vec<Option<usize>> = vec![None; self.vertices.len()];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for v in 0..self.vertices.len() {
            let r = uf.find(v);
            let slot = *by_root[r].get_or_insert_with(|| {
                comps.push(Vec::new());
                comps.len() - 1
            });
            comps[slot].push(v);
        }
        comps
    }

    /// Each connected component as a graph of its own, keeping vertex ids
    /// and the relative edge order.
    pub fn component_subgraphs(&self) -> Vec<Graph> {
        self.components()
            .into_iter()
            .map(|comp| {
                let ids: Vec<VertexId> = comp.iter().map(|&v| self.vertices[v]).collect();
                let edges: Vec<_> = self
                    .edges
                    .iter()
                    .filter(|e| comp.binary_search(&e.tail).is_ok())
                    .map(|e| (self.vertices[e.tail], self.vertices[e.head]))
                    .collect();
                Graph::new(ids, &edges).expect("component of a valid graph")
            })
            .collect()
    }

    /// Disjoint union; vertex ids of `other` are shifted past this graph's
    /// largest id.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.vertices.iter().max().copied().unwrap_or(0) + 1;
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices.iter().map(|v| v + shift));
        let mut edges = self.edge_ids();
        edges.extend(other.edge_ids().into_iter().map(|(t, h)| (t + shift, h + shift)));
        Graph::new(vertices, &edges).expect("union of valid graphs")
    }

    /// Edge-list text accepted by [`parse_edge_list`]. Isolated vertices are
    /// not representable in that format.
    pub fn to_edge_list(&self) -> String {
        self.edge_ids()
            .into_iter()
            .map(|(t, h)| format!("{t} {h}\n"))
            .collect()
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edge_ids()
            .into_iter()
            .map(|(t, h)| format!("{t}->{h}"))
            .collect();
        write!(f, "V={:?} E=[{}]", self.vertices, edges.join(", "))
    }
}

/// Parses newline-separated `tail head` pairs; `#` starts a comment.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: n + 1,
                message: format!("expected `tail head`, found {} token(s)", tokens.len()),
            });
        }
        let id = |tok: &str| {
            tok.parse::<VertexId>().map_err(|_| Error::Parse {
                line: n + 1,
                message: format!("{tok:?} is not a vertex id"),
            })
        };
        edges.push((id(tokens[0])?, id(tokens[1])?));
    }
    if edges.is_empty() {
        return Err(Error::Parse {
            line: 0,
            message: "no edges".into(),
        });
    }
    Graph::from_edges(&edges)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphClassification {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub component_count: usize,
    pub cyclomatic_number: usize,
    pub has_bridge: bool,
    pub has_loop: bool,
}

impl GraphClassification {
    /// Dimension of the tension space, `|V| - c`.
    pub fn tension_rank(&self) -> usize {
        self.vertex_count - self.component_count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count == 1
    }
}

pub fn classify(g: &Graph) -> GraphClassification {
    let n = g.vertex_count();
    let c = g.components().len();
    let has_loop = g.edges.iter().any(Edge::is_loop);
    let has_bridge = (0..g.edge_count()).any(|skip| {
        let e = g.edges[skip];
        if e.is_loop() {
            return false;
        }
        let mut uf = UnionFind::new(n);
        for (j, other) in g.edges.iter().enumerate() {
            if j != skip {
                uf.union(other.tail, other.head);
            }
        }
        uf.find(e.tail) != uf.find(e.head)
    });
    GraphClassification {
        vertex_count: n,
        edge_count: g.edge_count(),
        component_count: c,
        cyclomatic_number: g.edge_count() + c - n,
        has_bridge,
        has_loop,
    }
}

/// A spanning forest `T` together with its fundamental cycles and the
/// `|T| x |E \ T|` matrix `C` whose column for a non-forest edge `e` is the
/// sign vector of the forest path from `head(e)` to `tail(e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningForest {
    edge_count: usize,
    forest_edges: Vec<usize>,
    non_forest_edges: Vec<usize>,
    cycle_vectors: Vec<Vec<i8>>,
    matrix: Vec<Vec<i64>>,
}

impl SpanningForest {
    /// Forest edges in increasing edge index; these index the rows of `C`.
    pub fn forest_edges(&self) -> &[usize] {
        &self.forest_edges
    }

    /// Non-forest edges in increasing edge index; these index the columns of `C`.
    pub fn non_forest_edges(&self) -> &[usize] {
        &self.non_forest_edges
    }

    /// Fundamental cycle of each non-forest edge as a vector on all of `E`:
    /// +1 on the edge itself, and the path signs on `T`. A loop's vector is
    /// the unit vector at the loop.
    pub fn cycle_vectors(&self) -> &[Vec<i8>] {
        &self.cycle_vectors
    }

    /// Rows of `C`, one per forest edge.
    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Number of flow parameters, `|E \ T|`.
    pub fn flow_dim(&self) -> usize {
        self.non_forest_edges.len()
    }

    /// Number of tension parameters, `|T|`.
    pub fn tension_dim(&self) -> usize {
        self.forest_edges.len()
    }

    /// Rows of `C^t`, one per non-forest edge.
    pub fn transpose(&self) -> Vec<Vec<i64>> {
        (0..self.flow_dim())
            .map(|j| self.matrix.iter().map(|row| row[j]).collect())
            .collect()
    }

    /// Full edge vector of the flow with the given values on `E \ T`.
    pub fn assemble_flow(&self, free: &[i64]) -> Vec<i64> {
        let mut f = vec![0i64; self.edge_count];
        for (&e, &x) in self.non_forest_edges.iter().zip(free) {
            f[e] = x;
        }
        for (&e, row) in self.forest_edges.iter().zip(&self.matrix) {
            f[e] = row.iter().zip(free).map(|(c, x)| c * x).sum();
        }
        f
    }

    /// Full edge vector of the tension with the given values on `T`.
    pub fn assemble_tension(&self, free: &[i64]) -> Vec<i64> {
        let mut t = vec![0i64; self.edge_count];
        for (&e, &x) in self.forest_edges.iter().zip(free) {
            t[e] = x;
        }
        for (j, &e) in self.non_forest_edges.iter().enumerate() {
            t[e] = -self
                .matrix
                .iter()
                .zip(free)
                .map(|(row, x)| row[j] * x)
                .sum::<i64>();
        }
        t
    }

    /// Builds forest data from an explicit set of forest edges. The set must
    /// be cycle-free, loop-free and maximal.
    pub fn from_forest_edges(g: &Graph, forest: &[usize]) -> Result<Self> {
        let mut in_forest = vec![false; g.edge_count()];
        let mut uf = UnionFind::new(g.vertex_count());
        for &e in forest {
            let edge = g
                .edges()
                .get(e)
                .ok_or_else(|| Error::InvalidArgument(format!("edge {e} does not exist")))?;
            if in_forest[e] || !uf.union(edge.tail, edge.head) {
                return Err(Error::InvalidArgument(format!(
                    "forest edge {e} closes a cycle"
                )));
            }
            in_forest[e] = true;
        }
        if let Some(e) = g
            .edges()
            .iter()
            .position(|edge| uf.find(edge.tail) != uf.find(edge.head))
        {
            return Err(Error::InvalidArgument(format!(
                "forest is not maximal: edge {e} joins two trees"
            )));
        }
        Ok(Self::build(g, in_forest))
    }

    /// Greedy forest that scans edges in the given priority order, keeping
    /// each edge that does not close a cycle.
    pub fn greedy(g: &Graph, order: &[usize]) -> Result<Self> {
        let mut uf = UnionFind::new(g.vertex_count());
        let mut chosen = Vec::new();
        for &e in order {
            let edge = g
                .edges()
                .get(e)
                .ok_or_else(|| Error::InvalidArgument(format!("edge {e} does not exist")))?;
            if uf.union(edge.tail, edge.head) {
                chosen.push(e);
            }
        }
        Self::from_forest_edges(g, &chosen)
    }

    fn build(g: &Graph, in_forest: Vec<bool>) -> Self {
        let m = g.edge_count();
        let forest_edges: Vec<usize> = (0..m).filter(|&e| in_forest[e]).collect();
        let non_forest_edges: Vec<usize> = (0..m).filter(|&e| !in_forest[e]).collect();

        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
        for &e in &forest_edges {
            let edge = g.edges()[e];
            adjacency[edge.tail].push(e);
            adjacency[edge.head].push(e);
        }

        let cycle_vectors: Vec<Vec<i8>> = non_forest_edges
            .iter()
            .map(|&e| {
                let edge = g.edges()[e];
                let mut sigma = forest_path_signs(g, &adjacency, edge.head, edge.tail);
                sigma[e] = 1;
                sigma
            })
            .collect();

        let matrix = forest_edges
            .iter()
            .map(|&t| cycle_vectors.iter().map(|s| i64::from(s[t])).collect())
            .collect();

        Self {
            edge_count: m,
            forest_edges,
            non_forest_edges,
            cycle_vectors,
            matrix,
        }
    }
}

/// Sign vector of the unique forest path from `from` to `to`.
fn forest_path_signs(g: &Graph, adjacency: &[Vec<usize>], from: usize, to: usize) -> Vec<i8> {
    let mut sigma = vec![0i8; g.edge_count()];
    let mut via: Vec<Option<usize>> = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &e in &adjacency[v] {
            let edge = g.edges()[e];
            let w = if edge.tail == v { edge.head } else { edge.tail };
            if !seen[w] {
                seen[w] = true;
                via[w] = Some(e);
                queue.push_back(w);
            }
        }
    }
    // walk back from `to`; each step enters `v` through edge `e`
    let mut v = to;
    while v != from {
        let e = via[v].expect("endpoints of a non-forest edge share a tree");
        let edge = g.edges()[e];
        let (prev, sign) = if edge.head == v {
            (edge.tail, 1)
        } else {
            (edge.head, -1)
        };
        sigma[e] = sign;
        v = prev;
    }
    sigma
}

/// Depth-first spanning forest: search starts at the smallest vertex id,
/// incident edges are explored in canonical edge order, and each further
/// component is entered at its smallest unvisited vertex.
pub fn spanning_forest(g: &Graph) -> SpanningForest {
    let n = g.vertex_count();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, edge) in g.edges().iter().enumerate() {
        if !edge.is_loop() {
            incident[edge.tail].push(e);
            incident[edge.head].push(e);
        }
    }
    let mut visited = vec![false; n];
    let mut in_forest = vec![false; g.edge_count()];
    for root in 0..n {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut stack = vec![(root, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, next) = *top;
            if next == incident[v].len() {
                stack.pop();
                continue;
            }
            top.1 += 1;
            let e = incident[v][next];
            let edge = g.edges()[e];
            let w = if edge.tail == v { edge.head } else { edge.tail };
            if !visited[w] {
                visited[w] = true;
                in_forest[e] = true;
                stack.push((w, 0));
            }
        }
    }
    SpanningForest::build(g, in_forest)
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}
