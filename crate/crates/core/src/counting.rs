//! Exact enumeration of nowhere-zero flows and tensions.
//!
//! Flows are parameterized by their values on the non-forest edges (the
//! forest values are `C f`), tensions by their values on the forest edges
//! (the non-forest values are `-C^t t`). Every counter walks the parameter
//! box in odometer order and checks the derived coordinates.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{classify, spanning_forest, Graph, GraphClassification, SpanningForest};
use crate::polytope::{dot, BoxEnumerator, HPolytope, Hyperplane, DEFAULT_BOX_GUARD};
use crate::poly::{interpolate, Polynomial};

/// Largest number of candidate vectors a counter may enumerate.
pub const DEFAULT_GUARD: u128 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountKind {
    ModularFlow,
    ModularTension,
    IntegralFlow,
    IntegralTension,
}

impl CountKind {
    pub const ALL: [CountKind; 4] = [
        CountKind::ModularFlow,
        CountKind::ModularTension,
        CountKind::IntegralFlow,
        CountKind::IntegralTension,
    ];

    pub fn is_flow(self) -> bool {
        matches!(self, CountKind::ModularFlow | CountKind::IntegralFlow)
    }

    pub fn is_modular(self) -> bool {
        matches!(self, CountKind::ModularFlow | CountKind::ModularTension)
    }

    /// Degree of the counting polynomial: `|E \ T|` for flows, `|T|` for tensions.
    pub fn degree(self, forest: &SpanningForest) -> usize {
        if self.is_flow() {
            forest.flow_dim()
        } else {
            forest.tension_dim()
        }
    }
}

/// Why a counting polynomial vanishes identically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Degeneracy {
    /// A bridge carries zero flow.
    Bridge,
    /// A loop carries zero tension.
    Loop,
}

impl Degeneracy {
    pub fn of(class: &GraphClassification, kind: CountKind) -> Option<Self> {
        if kind.is_flow() {
            class.has_bridge.then_some(Degeneracy::Bridge)
        } else {
            class.has_loop.then_some(Degeneracy::Loop)
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Degeneracy::Bridge => "bridge",
            Degeneracy::Loop => "loop",
        }
    }
}

fn check_k(k: i64) -> Result<u64> {
    u64::try_from(k)
        .ok()
        .filter(|&k| k >= 1)
        .ok_or_else(|| Error::InvalidArgument(format!("k must be at least 1, got {k}")))
}

/// Number of parameter vectors over `values` with every constraint row
/// accepted by `accept`, split across threads by the first coordinate.
fn count_parameters<F>(
    dim: usize,
    values: &[i64],
    rows: &[Vec<i64>],
    guard: u128,
    what: &str,
    accept: F,
) -> Result<u64>
where
    F: Fn(i64) -> bool + Sync,
{
    let candidates = (values.len() as u128)
        .checked_pow(dim as u32)
        .unwrap_or(u128::MAX);
    if candidates > guard {
        return Err(Error::GuardExceeded {
            what: what.to_string(),
            candidates,
            limit: guard,
        });
    }
    let ok = |x: &[i64]| rows.iter().all(|a| accept(dot(a, x)));
    if dim == 0 {
        return Ok(u64::from(ok(&[])));
    }
    let total = values
        .par_iter()
        .map(|&first| {
            let mut digits = vec![0usize; dim];
            let mut x = vec![values[0]; dim];
            x[0] = first;
            let mut found = 0u64;
            loop {
                if ok(&x) {
                    found += 1;
                }
                // odometer over coordinates 1..dim
                let mut t = dim - 1;
                loop {
                    if t == 0 {
                        return found;
                    }
                    digits[t] += 1;
                    if digits[t] < values.len() {
                        x[t] = values[digits[t]];
                        break;
                    }
                    digits[t] = 0;
                    x[t] = values[0];
                    t -= 1;
                }
            }
        })
        .sum();
    Ok(total)
}

/// Counts nowhere-zero flows or tensions of the given kind at `k` using the
/// forest parameterization.
pub fn count_with_forest(forest: &SpanningForest, kind: CountKind, k: u64, guard: u128) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let k = k as i64;
    let values: Vec<i64> = if kind.is_modular() {
        (1..k).collect()
    } else {
        (1..k).flat_map(|v| [-v, v]).collect()
    };
    let (dim, rows) = if kind.is_flow() {
        (forest.flow_dim(), forest.matrix().to_vec())
    } else {
        (forest.tension_dim(), forest.transpose())
    };
    let what = format!("{kind:?} count at k = {k}");
    if kind.is_modular() {
        count_parameters(dim, &values, &rows, guard, &what, |s| s.rem_euclid(k) != 0)
    } else {
        count_parameters(dim, &values, &rows, guard, &what, |s| s != 0 && s.abs() < k)
    }
}

pub fn count_nz_modular_flows(g: &Graph, k: i64) -> Result<u64> {
    count_with_forest(&spanning_forest(g), CountKind::ModularFlow, check_k(k)?, DEFAULT_GUARD)
}

pub fn count_nz_modular_tensions(g: &Graph, k: i64) -> Result<u64> {
    count_with_forest(&spanning_forest(g), CountKind::ModularTension, check_k(k)?, DEFAULT_GUARD)
}

pub fn count_nz_integral_flows(g: &Graph, k: i64) -> Result<u64> {
    count_with_forest(&spanning_forest(g), CountKind::IntegralFlow, check_k(k)?, DEFAULT_GUARD)
}

pub fn count_nz_integral_tensions(g: &Graph, k: i64) -> Result<u64> {
    count_with_forest(&spanning_forest(g), CountKind::IntegralTension, check_k(k)?, DEFAULT_GUARD)
}

/// A counting polynomial together with the reason it vanishes, if it does.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountPolynomial {
    pub kind: CountKind,
    pub polynomial: Polynomial,
    pub degeneracy: Option<Degeneracy>,
}

pub fn polynomial_of(g: &Graph, kind: CountKind) -> Result<CountPolynomial> {
    polynomial_with_forest(g, &spanning_forest(g), kind, DEFAULT_GUARD)
}

/// Interpolates the counter at `k = 1..=d+1` and confirms the fit at `d + 2`.
pub fn polynomial_with_forest(
    g: &Graph,
    forest: &SpanningForest,
    kind: CountKind,
    guard: u128,
) -> Result<CountPolynomial> {
    if let Some(degeneracy) = Degeneracy::of(&classify(g), kind) {
        return Ok(CountPolynomial {
            kind,
            polynomial: Polynomial::zero(),
            degeneracy: Some(degeneracy),
        });
    }
    let d = kind.degree(forest) as u64;
    let samples = (1..=d + 1)
        .map(|k| Ok((k as i64, BigInt::from(count_with_forest(forest, kind, k, guard)?))))
        .collect::<Result<Vec<_>>>()?;
    let polynomial = interpolate(&samples)?;
    let k = d as i64 + 2;
    let extra = count_with_forest(forest, kind, k as u64, guard)?;
    let predicted = polynomial.evaluate_int(k);
    if predicted != num_rational::BigRational::from_integer(extra.into()) {
        return Err(Error::ExtraSampleMismatch {
            k,
            expected: predicted.to_string(),
            counted: extra.to_string(),
        });
    }
    Ok(CountPolynomial {
        kind,
        polynomial,
        degeneracy: None,
    })
}

/// `|Z^n ∩ k·(int P \ ∪H)|`: lattice points strictly inside `kP` lying on
/// no dilated hyperplane `a.x = k b`.
pub fn count_iop_points(p: &HPolytope, hyperplanes: &[Hyperplane], k: i64) -> Result<u64> {
    count_iop_points_guarded(p, hyperplanes, k, DEFAULT_BOX_GUARD)
}

pub fn count_iop_points_guarded(
    p: &HPolytope,
    hyperplanes: &[Hyperplane],
    k: i64,
    guard: u128,
) -> Result<u64> {
    check_k(k)?;
    if let Some(h) = hyperplanes.iter().find(|h| h.normal.len() != p.dim()) {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            got: h.normal.len(),
        });
    }
    let rows: Vec<(Vec<i64>, i64)> = p
        .rows()
        .iter()
        .map(|(a, b)| (a.clone(), k * b - 1))
        .collect();
    let bound = k * p.box_bound();
    let e = BoxEnumerator::new(p.dim(), -bound, bound, &rows, guard, "inside-out count")?;
    Ok(e.count(|x| hyperplanes.iter().all(|h| dot(&h.normal, x) != k * h.offset)))
}

/// Proper vertex colorings with `k` colors, by brute force over all `k^n`
/// assignments. Loops admit no proper coloring.
pub fn count_proper_colorings(g: &Graph, k: u64, guard: u128) -> Result<u64> {
    let n = g.vertex_count();
    let candidates = u128::from(k).checked_pow(n as u32).unwrap_or(u128::MAX);
    if candidates > guard {
        return Err(Error::GuardExceeded {
            what: format!("{k}-colorings"),
            candidates,
            limit: guard,
        });
    }
    if k == 0 {
        return Ok(0);
    }
    let mut color = vec![0u64; n];
    let mut count = 0u64;
    loop {
        if g.edges().iter().all(|e| color[e.tail] != color[e.head]) {
            count += 1;
        }
        let mut t = 0;
        loop {
            if t == n {
                return Ok(count);
            }
            color[t] += 1;
            if color[t] < k {
                break;
            }
            color[t] = 0;
            t += 1;
        }
    }
}
