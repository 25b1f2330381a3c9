//! Brute-force oracles shared by the integration tests. None of them go
//! through spanning forests: flows are checked by conservation at every
//! vertex, tensions by the existence of a vertex potential.

#![allow(dead_code)]

use flowpoly_core::graph::Graph;

/// Values an edge may take: `1..k` modulo `k`, or `±1..±(k-1)` integrally.
fn edge_values(k: i64, modular: bool) -> Vec<i64> {
    if modular {
        (1..k).collect()
    } else {
        (1..k).flat_map(|v| [v, -v]).collect()
    }
}

fn reduce(x: i64, k: i64, modular: bool) -> i64 {
    if modular {
        x.rem_euclid(k)
    } else {
        x
    }
}

fn is_flow(g: &Graph, x: &[i64], k: i64, modular: bool) -> bool {
    let mut net = vec![0i64; g.vertex_count()];
    for (e, edge) in g.edges().iter().enumerate() {
        net[edge.head] += x[e];
        net[edge.tail] -= x[e];
    }
    net.iter().all(|&s| reduce(s, k, modular) == 0)
}

/// `x` is a tension iff `x_e = p(head) - p(tail)` for some potential `p`.
fn is_tension(g: &Graph, x: &[i64], k: i64, modular: bool) -> bool {
    let n = g.vertex_count();
    let mut potential: Vec<Option<i64>> = vec![None; n];
    for root in 0..n {
        if potential[root].is_some() {
            continue;
        }
        potential[root] = Some(0);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let pv = potential[v].unwrap();
            for (e, edge) in g.edges().iter().enumerate() {
                let (other, value) = if edge.tail == v {
                    (edge.head, pv + x[e])
                } else if edge.head == v {
                    (edge.tail, pv - x[e])
                } else {
                    continue;
                };
                match potential[other] {
                    None => {
                        potential[other] = Some(reduce(value, k, modular));
                        stack.push(other);
                    }
                    Some(p) => {
                        if reduce(p - value, k, modular) != 0 {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// Nowhere-zero flows (`flow = true`) or tensions by enumerating every
/// nowhere-zero edge vector.
pub fn brute_force(g: &Graph, k: i64, modular: bool, flow: bool) -> u64 {
    let values = edge_values(k, modular);
    let m = g.edge_count();
    if values.is_empty() {
        return u64::from(m == 0);
    }
    let mut digits = vec![0usize; m];
    let mut x = vec![values[0]; m];
    let mut count = 0;
    loop {
        let ok = if flow {
            is_flow(g, &x, k, modular)
        } else {
            is_tension(g, &x, k, modular)
        };
        count += u64::from(ok);
        let mut i = 0;
        loop {
            if i == m {
                return count;
            }
            digits[i] += 1;
            if digits[i] < values.len() {
                x[i] = values[digits[i]];
                break;
            }
            digits[i] = 0;
            x[i] = values[0];
            i += 1;
        }
    }
}

/// Seeded generator so random test cases are reproducible.
pub fn rng(seed: u64) -> rand::rngs::StdRng {
    use rand::SeedableRng;
    rand::rngs::StdRng::seed_from_u64(seed)
}
