//! Named graph families and the small-graph corpus.
//!
//! Family specs:
//!
//! | spec            | graph                                              |
//! |-----------------|----------------------------------------------------|
//! | `complete:n`    | `K_n`, edges `(i, j)` for `i < j` in lex order     |
//! | `cycle:n`       | directed cycle `1 -> 2 -> ... -> n -> 1`           |
//! | `path:n`        | directed path on `n` vertices                      |
//! | `star:n`        | center `1` joined to leaves `2..=n`                |
//! | `bouquet:r`     | one vertex with `r` loops                          |
//! | `theta:a:b:c`   | vertices `1`, `2` joined by paths of lengths a,b,c |
//! | `edges:1-2,2-3` | explicit edge list                                 |
//! | `file:PATH`     | edge-list file                                     |

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{parse_edge_list, Graph, VertexId};

/// Largest `n` accepted by the parameterized families.
pub const MAX_FAMILY_SIZE: u32 = 64;

fn parse_size(spec: &str, token: &str, min: u32) -> Result<u32> {
    let n: u32 = token
        .parse()
        .map_err(|_| Error::UnknownGraphSpec(spec.to_string()))?;
    if n < min || n > MAX_FAMILY_SIZE {
        return Err(Error::InvalidArgument(format!(
            "{spec}: size {n} outside {min}..={MAX_FAMILY_SIZE}"
        )));
    }
    Ok(n)
}

pub fn generate_family(spec: &str) -> Result<Graph> {
    let unknown = || Error::UnknownGraphSpec(spec.to_string());
    let (name, args) = spec.split_once(':').ok_or_else(unknown)?;
    match name {
        "file" => parse_edge_list(&std::fs::read_to_string(args)?),
        "edges" => {
            let edges = args
                .split(',')
                .map(|pair| {
                    let (t, h) = pair.split_once('-').ok_or_else(unknown)?;
                    let id = |s: &str| s.trim().parse::<VertexId>().map_err(|_| unknown());
                    Ok((id(t)?, id(h)?))
                })
                .collect::<Result<Vec<_>>>()?;
            Graph::from_edges(&edges)
        }
        "complete" => {
            let n = parse_size(spec, args, 1)?;
            let edges: Vec<_> = (1..=n)
                .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
                .collect();
            Graph::new((1..=n).collect(), &edges)
        }
        "cycle" => {
            let n = parse_size(spec, args, 1)?;
            let edges: Vec<_> = (1..=n).map(|i| (i, i % n + 1)).collect();
            Graph::new((1..=n).collect(), &edges)
        }
        "path" => {
            let n = parse_size(spec, args, 1)?;
            let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
            Graph::new((1..=n).collect(), &edges)
        }
        "star" => {
            let n = parse_size(spec, args, 1)?;
            let edges: Vec<_> = (2..=n).map(|i| (1, i)).collect();
            Graph::new((1..=n).collect(), &edges)
        }
        "bouquet" => {
            let r = parse_size(spec, args, 0)?;
            Graph::new(vec![1], &vec![(1, 1); r as usize])
        }
        "theta" => {
            let lengths = args
                .split(':')
                .map(|t| parse_size(spec, t, 1))
                .collect::<Result<Vec<_>>>()?;
            if lengths.len() != 3 {
                return Err(unknown());
            }
            let mut next: VertexId = 3;
            let mut edges = Vec::new();
            for len in lengths {
                let mut at = 1;
                for step in 0..len {
                    let to = if step + 1 == len {
                        2
                    } else {
                        next += 1;
                        next - 1
                    };
                    edges.push((at, to));
                    at = to;
                }
            }
            Graph::new((1..next).collect(), &edges)
        }
        _ => Err(unknown()),
    }
}

/// `edges:` spec reproducing `g`, when `g` has no isolated vertices.
pub fn edges_spec(g: &Graph) -> String {
    let pairs: Vec<String> = g
        .edge_ids()
        .into_iter()
        .map(|(t, h)| format!("{t}-{h}"))
        .collect();
    format!("edges:{}", pairs.join(","))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub id: String,
    pub graph: Graph,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Largest vertex count the isomorphism-reduced sweep accepts.
pub const MAX_CORPUS_VERTICES: usize = 6;

/// All connected simple graphs with `1..=max_vertices` vertices and at most
/// `max_edges` edges, one per isomorphism class, oriented from the smaller
/// to the larger vertex. Ordered by vertex count, edge count, then edge list.
pub fn connected_simple_graphs(max_vertices: usize, max_edges: usize) -> Result<Vec<CorpusEntry>> {
    if max_vertices > MAX_CORPUS_VERTICES {
        return Err(Error::InvalidArgument(format!(
            "corpus sweep supports at most {MAX_CORPUS_VERTICES} vertices"
        )));
    }
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let index_of = |a: usize, b: usize| {
            let (a, b) = (a.min(b), a.max(b));
            pairs.iter().position(|&p| p == (a, b)).expect("pair")
        };
        let perms = permutations(n);
        // permuted pair index tables
        let maps: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| pairs.iter().map(|&(a, b)| index_of(p[a], p[b])).collect())
            .collect();
        let mut canon: BTreeSet<(u32, Vec<usize>)> = BTreeSet::new();
        for mask in 0u64..(1u64 << pairs.len()) {
            let m = mask.count_ones() as usize;
            if m > max_edges || m + 1 < n {
                continue;
            }
            let best = maps
                .iter()
                .map(|map| {
                    (0..pairs.len())
                        .filter(|&e| mask >> e & 1 == 1)
                        .fold(0u64, |acc, e| acc | 1 << map[e])
                })
                .min()
                .expect("at least one permutation");
            if best != mask {
                continue;
            }
            let edges: Vec<usize> = (0..pairs.len()).filter(|&e| mask >> e & 1 == 1).collect();
            let ids: Vec<(VertexId, VertexId)> = edges
                .iter()
                .map(|&e| (pairs[e].0 as VertexId + 1, pairs[e].1 as VertexId + 1))
                .collect();
            let g = Graph::new((1..=n as VertexId).collect(), &ids)?;
            if g.components().len() == 1 {
                canon.insert((m as u32, edges));
            }
        }
        for (_, edges) in canon {
            let ids: Vec<(VertexId, VertexId)> = edges
                .iter()
                .map(|&e| (pairs[e].0 as VertexId + 1, pairs[e].1 as VertexId + 1))
                .collect();
            let graph = Graph::new((1..=n as VertexId).collect(), &ids)?;
            let id = if ids.is_empty() {
                "path:1".to_string()
            } else {
                edges_spec(&graph)
            };
            out.push(CorpusEntry { id, graph });
        }
    }
    Ok(out)
}

/// Multigraph families beyond the simple-graph sweep: parallel edges,
/// loops and theta graphs.
pub const NAMED_FAMILIES: &[&str] = &[
    "cycle:1",
    "cycle:2",
    "bouquet:1",
    "bouquet:2",
    "bouquet:3",
    "theta:1:1:1",
    "theta:1:1:2",
    "theta:1:2:2",
    "theta:1:2:3",
    "theta:2:2:2",
    "edges:1-2,2-1,2-3,3-2",
    "edges:1-2,2-3,3-1,3-3",
];

/// Simple-graph sweep plus the named families that fit the same bounds.
pub fn default_corpus(max_vertices: usize, max_edges: usize) -> Result<Vec<CorpusEntry>> {
    let mut corpus = connected_simple_graphs(max_vertices, max_edges)?;
    for spec in NAMED_FAMILIES {
        let graph = generate_family(spec)?;
        if graph.vertex_count() <= max_vertices && graph.edge_count() <= max_edges {
            corpus.push(CorpusEntry {
                id: spec.to_string(),
                graph,
            });
        }
    }
    Ok(corpus)
}
