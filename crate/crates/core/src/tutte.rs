//! Tutte polynomial by deletion-contraction, used as an independent route to
//! the modular flow and tension polynomials.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{classify, Graph, UnionFind};
use crate::poly::{sign_pow, Polynomial};

/// Deletion-contraction is exponential in `|E|`; refuse beyond this.
pub const TUTTE_EDGE_LIMIT: usize = 18;

/// `T(x, y) = sum c_{ij} x^i y^j` with nonnegative coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TuttePolynomial {
    coeffs: BTreeMap<(u32, u32), BigUint>,
}

impl TuttePolynomial {
    fn one() -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert((0, 0), BigUint::one());
        Self { coeffs }
    }

    fn shifted(mut self, dx: u32, dy: u32) -> Self {
        self.coeffs = self
            .coeffs
            .into_iter()
            .map(|((i, j), c)| ((i + dx, j + dy), c))
            .collect();
        self
    }

    fn add(mut self, other: Self) -> Self {
        for (key, c) in other.coeffs {
            *self.coeffs.entry(key).or_insert_with(BigUint::zero) += c;
        }
        self
    }

    pub fn coefficients(&self) -> &BTreeMap<(u32, u32), BigUint> {
        &self.coeffs
    }

    pub fn coefficient(&self, x_power: u32, y_power: u32) -> BigUint {
        self.coeffs
            .get(&(x_power, y_power))
            .cloned()
            .unwrap_or_default()
    }

    pub fn evaluate(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .map(|(&(i, j), c)| BigInt::from(c.clone()) * x.pow(i) * y.pow(j))
            .sum()
    }

    /// Substitutes polynomials in `k` for `x` and `y`.
    pub fn substitute(&self, x: &Polynomial, y: &Polynomial) -> Polynomial {
        self.coeffs
            .iter()
            .fold(Polynomial::zero(), |acc, (&(i, j), c)| {
                let term = (&x.pow(i) * &y.pow(j))
                    .scale(&BigRational::from_integer(BigInt::from(c.clone())));
                &acc + &term
            })
    }
}

impl Serialize for TuttePolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<(u32, u32, String)> = self
            .coeffs
            .iter()
            .map(|(&(i, j), c)| (i, j, c.to_string()))
            .collect();
        terms.serialize(s)
    }
}

impl fmt::Display for TuttePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(&(i, j), c)| {
                let mut t = if c.is_one() && (i, j) != (0, 0) {
                    String::new()
                } else {
                    c.to_string()
                };
                for (var, p) in [("x", i), ("y", j)] {
                    match p {
                        0 => {}
                        1 => t.push_str(var),
                        _ => t.push_str(&format!("{var}^{p}")),
                    }
                }
                t
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

pub fn tutte_polynomial(g: &Graph) -> Result<TuttePolynomial> {
    if g.edge_count() > TUTTE_EDGE_LIMIT {
        return Err(Error::GuardExceeded {
            what: "Tutte deletion-contraction".into(),
            candidates: 1u128 << g.edge_count(),
            limit: 1u128 << TUTTE_EDGE_LIMIT,
        });
    }
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.tail, e.head)).collect();
    Ok(deletion_contraction(g.vertex_count(), edges))
}

fn deletion_contraction(n: usize, mut edges: Vec<(usize, usize)>) -> TuttePolynomial {
    let before = edges.len();
    edges.retain(|&(u, v)| u != v);
    let loops = (before - edges.len()) as u32;
    let Some(&(u, v)) = edges.first() else {
        return TuttePolynomial::one().shifted(0, loops);
    };
    let rest: Vec<(usize, usize)> = edges[1..].to_vec();

    let mut uf = UnionFind::new(n);
    for &(a, b) in &rest {
        uf.union(a, b);
    }
    let is_bridge = uf.find(u) != uf.find(v);

    // contract v into u
    let contracted: Vec<(usize, usize)> = rest
        .iter()
        .map(|&(a, b)| (if a == v { u } else { a }, if b == v { u } else { b }))
        .collect();

    let result = if is_bridge {
        deletion_contraction(n, contracted).shifted(1, 0)
    } else {
        deletion_contraction(n, rest).add(deletion_contraction(n, contracted))
    };
    result.shifted(0, loops)
}

/// Modular flow, modular tension and chromatic polynomials as Tutte
/// evaluations:
/// `mFlow(k) = (-1)^{|E|-|V|+c} T(0, 1-k)`,
/// `mTension(k) = (-1)^{|V|-c} T(1-k, 0)`,
/// `chromatic(k) = k^c mTension(k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TutteEvaluations {
    pub modular_flow: Polynomial,
    pub modular_tension: Polynomial,
    pub chromatic: Polynomial,
}

pub fn modular_polys_from_tutte(g: &Graph) -> Result<TutteEvaluations> {
    let t = tutte_polynomial(g)?;
    let class = classify(g);
    let one_minus_k = Polynomial::linear(-1, 1);
    let zero = Polynomial::zero();
    let sign = |e: usize| Polynomial::constant(BigRational::from_integer(sign_pow(e)));
    let modular_flow = &sign(class.cyclomatic_number) * &t.substitute(&zero, &one_minus_k);
    let modular_tension = &sign(class.tension_rank()) * &t.substitute(&one_minus_k, &zero);
    let chromatic = &Polynomial::variable().pow(class.component_count as u32) * &modular_tension;
    Ok(TutteEvaluations {
        modular_flow,
        modular_tension,
        chromatic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_edge_list;

    fn tutte(text: &str) -> TuttePolynomial {
        tutte_polynomial(&parse_edge_list(text).unwrap()).unwrap()
    }

    #[test]
    fn base_cases() {
        assert_eq!(tutte("1 2").to_string(), "x");
        assert_eq!(tutte("1 1").to_string(), "y");
    }

    #[test]
    fn triangle() {
        let t = tutte("1 2\n2 3\n3 1");
        assert_eq!(t.to_string(), "x^2 + x + y");
    }

    #[test]
    fn k4_spanning_trees() {
        let t = tutte("1 2\n1 3\n1 4\n2 3\n2 4\n3 4");
        assert_eq!(t.evaluate(&BigInt::one(), &BigInt::one()), BigInt::from(16));
        assert_eq!(t.evaluate(&BigInt::from(2), &BigInt::from(2)), BigInt::from(64));
    }

    #[test]
    fn triangle_evaluations() {
        let e = modular_polys_from_tutte(&parse_edge_list("1 2\n2 3\n3 1").unwrap()).unwrap();
        assert_eq!(e.modular_flow, Polynomial::linear(1, -1));
        assert_eq!(e.modular_tension, Polynomial::from_ints(&[2, -3, 1]));
        assert_eq!(e.chromatic, Polynomial::from_ints(&[0, 2, -3, 1]));
    }

    #[test]
    fn bridge_kills_flows() {
        let e = modular_polys_from_tutte(&parse_edge_list("1 2").unwrap()).unwrap();
        assert!(e.modular_flow.is_zero());
        assert_eq!(e.modular_tension, Polynomial::linear(1, -1));
    }

    #[test]
    fn edge_guard() {
        let edges: String = (0..20).map(|_| "1 2\n").collect();
        assert!(matches!(
            tutte_polynomial(&parse_edge_list(&edges).unwrap()),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
