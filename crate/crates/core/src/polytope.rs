//! Lattice polytopes in H-representation: construction of the flow and
//! tension polytopes, their inside-out arrangements, lattice point counts,
//! Ehrhart polynomials and reflexivity checks.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::counting::{CountKind, Degeneracy};
use crate::error::{Error, Result};
use crate::graph::SpanningForest;
use crate::poly::{interpolate, Polynomial};

/// Largest number of box points any enumeration may visit.
pub const DEFAULT_BOX_GUARD: u128 = 100_000_000;

/// The hyperplane `{x : normal . x = offset}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Hyperplane {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Hyperplane {
    pub fn new(normal: Vec<i64>, offset: i64) -> Result<Self> {
        if normal.iter().all(|&a| a == 0) {
            return Err(Error::InvalidArgument("hyperplane normal must be nonzero".into()));
        }
        Ok(Self { normal, offset })
    }

    /// Same hyperplane with the first nonzero normal entry made positive.
    pub fn normalized(mut self) -> Self {
        if self.normal.iter().find(|&&a| a != 0).is_some_and(|&a| a < 0) {
            self.normal.iter_mut().for_each(|a| *a = -*a);
            self.offset = -self.offset;
        }
        self
    }

    pub fn coordinate(dim: usize, i: usize) -> Self {
        let mut normal = vec![0; dim];
        normal[i] = 1;
        Self { normal, offset: 0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    Closed,
    Interior,
}

/// `{x in R^dim : a . x <= b for every row}` with `P` inside `[-B, B]^dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HPolytopeRepr")]
pub struct HPolytope {
    dim: usize,
    rows: Vec<(Vec<i64>, i64)>,
    box_bound: i64,
}

#[derive(Deserialize)]
struct HPolytopeRepr {
    dim: usize,
    rows: Vec<(Vec<i64>, i64)>,
    box_bound: i64,
}

impl TryFrom<HPolytopeRepr> for HPolytope {
    type Error = Error;

    fn try_from(r: HPolytopeRepr) -> Result<Self> {
        HPolytope::new(r.dim, r.rows, r.box_bound)
    }
}

impl HPolytope {
    /// Validates row lengths and that every coordinate is bounded above and
    /// below by a pure coordinate row lying within `box_bound`.
    pub fn new(dim: usize, rows: Vec<(Vec<i64>, i64)>, box_bound: i64) -> Result<Self> {
        if let Some((a, _)) = rows.iter().find(|(a, _)| a.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: a.len(),
            });
        }
        if box_bound < 0 {
            return Err(Error::InvalidArgument("box bound must be nonnegative".into()));
        }
        for i in 0..dim {
            // tightest bound b/|c| on each side among pure coordinate rows
            let mut upper: Option<(i64, i64)> = None;
            let mut lower: Option<(i64, i64)> = None;
            for (a, b) in &rows {
                if a[i] == 0 || a.iter().enumerate().any(|(j, &x)| j != i && x != 0) {
                    continue;
                }
                let side = if a[i] > 0 { &mut upper } else { &mut lower };
                let c = a[i].abs();
                if side.is_none_or(|(b0, c0)| i128::from(*b) * i128::from(c0) < i128::from(b0) * i128::from(c)) {
                    *side = Some((*b, c));
                }
            }
            match (upper, lower) {
                (Some(u), Some(l)) => {
                    for (b, c) in [u, l] {
                        if i128::from(b) > i128::from(box_bound) * i128::from(c) {
                            return Err(Error::InvalidArgument(format!(
                                "coordinate {i} reaches outside the box bound {box_bound}"
                            )));
                        }
                    }
                }
                _ => return Err(Error::Unbounded(i)),
            }
        }
        Ok(Self {
            dim,
            rows,
            box_bound,
        })
    }

    /// `[lo, hi]^dim`.
    pub fn cube(dim: usize, lo: i64, hi: i64) -> Self {
        let mut rows = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            let mut up = vec![0; dim];
            up[i] = 1;
            let mut down = vec![0; dim];
            down[i] = -1;
            rows.push((up, hi));
            rows.push((down, -lo));
        }
        Self::new(dim, rows, lo.abs().max(hi.abs())).expect("cube is bounded")
    }

    /// `[0, 1]^dim`.
    pub fn unit_cube(dim: usize) -> Self {
        Self::cube(dim, 0, 1)
    }

    /// The cross-polytope `{x : sum |x_i| <= 1}`.
    pub fn cross_polytope(dim: usize) -> Self {
        let mut rows = Self::cube(dim, -1, 1).rows;
        for mask in 0u64..(1u64 << dim) {
            let a = (0..dim)
                .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                .collect();
            rows.push((a, 1));
        }
        Self::new(dim, rows, 1).expect("cross-polytope is bounded")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[(Vec<i64>, i64)] {
        &self.rows
    }

    pub fn box_bound(&self) -> i64 {
        self.box_bound
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.rows.iter().all(|(a, b)| dot(a, x) <= *b)
    }

    fn strictly_contains_origin(&self) -> bool {
        self.rows.iter().all(|(_, b)| *b > 0)
    }

    /// Rows of `k * P`, made strict for the interior (integer points only).
    fn dilated_rows(&self, k: i64, region: Region) -> Vec<(Vec<i64>, i64)> {
        self.rows
            .iter()
            .map(|(a, b)| {
                let rhs = k * b;
                (a.clone(), if region == Region::Interior { rhs - 1 } else { rhs })
            })
            .collect()
    }
}

pub(crate) fn dot(a: &[i64], x: &[i64]) -> i64 {
    a.iter().zip(x).map(|(p, q)| p * q).sum()
}

/// Depth-first enumeration of the lattice points of `[lo, hi]^dim` that
/// satisfy every `a . x <= rhs` row, pruning a partial assignment as soon as
/// some row cannot be met by any completion. `leaf` decides whether a
/// surviving point is counted.
pub(crate) struct BoxEnumerator<'a> {
    dim: usize,
    lo: i64,
    hi: i64,
    rows: &'a [(Vec<i64>, i64)],
    /// `suffix_min[t][r]`: least value of the row-`r` contribution from
    /// coordinates `t..dim`.
    suffix_min: Vec<Vec<i64>>,
}

impl<'a> BoxEnumerator<'a> {
    pub(crate) fn new(
        dim: usize,
        lo: i64,
        hi: i64,
        rows: &'a [(Vec<i64>, i64)],
        guard: u128,
        what: &str,
    ) -> Result<Self> {
        let side = (hi - lo + 1).max(0) as u128;
        let candidates = side.checked_pow(dim as u32).unwrap_or(u128::MAX);
        if candidates > guard {
            return Err(Error::GuardExceeded {
                what: what.to_string(),
                candidates,
                limit: guard,
            });
        }
        let mut suffix_min = vec![vec![0i64; rows.len()]; dim + 1];
        for t in (0..dim).rev() {
            for (r, (a, _)) in rows.iter().enumerate() {
                suffix_min[t][r] = suffix_min[t + 1][r] + (a[t] * lo).min(a[t] * hi);
            }
        }
        Ok(Self {
            dim,
            lo,
            hi,
            rows,
            suffix_min,
        })
    }

    pub(crate) fn count<F>(&self, leaf: F) -> u64
    where
        F: Fn(&[i64]) -> bool + Sync,
    {
        if self.dim == 0 {
            let feasible = self.rows.iter().all(|(_, b)| 0 <= *b);
            return u64::from(feasible && leaf(&[]));
        }
        (self.lo..=self.hi)
            .into_par_iter()
            .map(|first| {
                let mut x = vec![0i64; self.dim];
                let mut partial = vec![0i64; self.rows.len()];
                self.descend(0, first, &mut x, &mut partial, &leaf)
            })
            .sum()
    }

    fn descend<F>(&self, t: usize, value: i64, x: &mut [i64], partial: &mut [i64], leaf: &F) -> u64
    where
        F: Fn(&[i64]) -> bool,
    {
        x[t] = value;
        let mut feasible = true;
        for (r, (a, b)) in self.rows.iter().enumerate() {
            partial[r] += a[t] * value;
            if partial[r] + self.suffix_min[t + 1][r] > *b {
                feasible = false;
            }
        }
        let found = if !feasible {
            0
        } else if t + 1 == self.dim {
            u64::from(leaf(x))
        } else {
            (self.lo..=self.hi)
                .map(|v| self.descend(t + 1, v, x, partial, leaf))
                .sum()
        };
        for (r, (a, _)) in self.rows.iter().enumerate() {
            partial[r] -= a[t] * value;
        }
        found
    }
}

/// Lattice points in `k * P` (closed) or in its interior.
pub fn count_lattice_points(p: &HPolytope, k: i64, region: Region) -> Result<u64> {
    count_lattice_points_guarded(p, k, region, DEFAULT_BOX_GUARD)
}

pub fn count_lattice_points_guarded(
    p: &HPolytope,
    k: i64,
    region: Region,
    guard: u128,
) -> Result<u64> {
    if k < 0 || (region == Region::Interior && k == 0) {
        return Err(Error::InvalidArgument(format!(
            "dilation factor {k} not allowed for {region:?} counts"
        )));
    }
    let rows = p.dilated_rows(k, region);
    let bound = k * p.box_bound;
    let e = BoxEnumerator::new(p.dim, -bound, bound, &rows, guard, "lattice point count")?;
    Ok(e.count(|_| true))
}

/// Ehrhart polynomial of a lattice polytope, interpolated from the closed
/// counts at `k = 0..=dim` and confirmed at `k = dim + 1`.
pub fn ehrhart_polynomial(p: &HPolytope) -> Result<Polynomial> {
    ehrhart_polynomial_guarded(p, DEFAULT_BOX_GUARD)
}

pub fn ehrhart_polynomial_guarded(p: &HPolytope, guard: u128) -> Result<Polynomial> {
    let d = p.dim as i64;
    let samples = (0..=d)
        .map(|k| Ok((k, count_lattice_points_guarded(p, k, Region::Closed, guard)?.into())))
        .collect::<Result<Vec<_>>>()?;
    let poly = interpolate(&samples)?;
    let extra = count_lattice_points_guarded(p, d + 1, Region::Closed, guard)?;
    let predicted = poly.evaluate_int(d + 1);
    if predicted != num_rational::BigRational::from_integer(extra.into()) {
        return Err(Error::ExtraSampleMismatch {
            k: d + 1,
            expected: predicted.to_string(),
            counted: extra.to_string(),
        });
    }
    Ok(poly)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReflexivityReport {
    pub reflexive: bool,
    /// Lattice points in the interior of `P`.
    pub interior_points: u64,
    pub origin_interior: bool,
    /// Smallest `k` with `int((k+1)P) != kP` on lattice points.
    pub failing_k: Option<i64>,
    /// The dilation condition was checked for `1 <= k <= verified_up_to`.
    pub verified_up_to: i64,
}

/// Checks that the only interior lattice point is the origin and that
/// `int((k+1)P)` and `kP` have the same lattice points for `1 <= k <= k_max`.
pub fn reflexivity_check(p: &HPolytope, k_max: i64) -> Result<ReflexivityReport> {
    reflexivity_check_guarded(p, k_max, DEFAULT_BOX_GUARD)
}

pub fn reflexivity_check_guarded(p: &HPolytope, k_max: i64, guard: u128) -> Result<ReflexivityReport> {
    if k_max < 1 {
        return Err(Error::InvalidArgument("k_max must be at least 1".into()));
    }
    let origin_interior = p.strictly_contains_origin();
    if !origin_interior {
        let witness = p.dim as i64 + 1;
        if count_lattice_points_guarded(p, witness, Region::Interior, guard)? == 0 {
            return Err(Error::LowerDimensional);
        }
    }
    let interior_points = count_lattice_points_guarded(p, 1, Region::Interior, guard)?;
    let mut report = ReflexivityReport {
        reflexive: false,
        interior_points,
        origin_interior,
        failing_k: None,
        verified_up_to: 0,
    };
    if !(origin_interior && interior_points == 1) {
        return Ok(report);
    }
    for k in 1..=k_max {
        let outer = p.dilated_rows(k + 1, Region::Closed);
        let open = p.dilated_rows(k + 1, Region::Interior);
        let inner = p.dilated_rows(k, Region::Closed);
        let bound = (k + 1) * p.box_bound;
        let e = BoxEnumerator::new(p.dim, -bound, bound, &outer, guard, "reflexivity check")?;
        let satisfies = |rows: &[(Vec<i64>, i64)], x: &[i64]| rows.iter().all(|(a, b)| dot(a, x) <= *b);
        let mismatches = e.count(|x| satisfies(&open, x) != satisfies(&inner, x));
        if mismatches > 0 {
            report.failing_k = Some(k);
            return Ok(report);
        }
        report.verified_up_to = k;
    }
    report.reflexive = true;
    Ok(report)
}

pub fn contains_points(p: &HPolytope, points: &[Vec<i64>]) -> Result<bool> {
    if let Some(x) = points.iter().find(|x| x.len() != p.dim) {
        return Err(Error::DimensionMismatch {
            expected: p.dim,
            got: x.len(),
        });
    }
    Ok(points.iter().all(|x| p.contains(x)))
}

/// `+e_i` and `-e_i` for every coordinate.
pub fn signed_unit_vectors(dim: usize) -> Vec<Vec<i64>> {
    (0..dim)
        .flat_map(|i| {
            [1, -1].map(|s| {
                let mut v = vec![0; dim];
                v[i] = s;
                v
            })
        })
        .collect()
}

fn symmetric_rows(dim: usize, constraint_rows: &[Vec<i64>]) -> HPolytope {
    let mut rows = HPolytope::cube(dim, -1, 1).rows;
    for a in constraint_rows.iter().filter(|a| a.iter().any(|&x| x != 0)) {
        rows.push((a.clone(), 1));
        rows.push((a.iter().map(|x| -x).collect(), 1));
    }
    HPolytope::new(dim, rows, 1).expect("contained in the unit box")
}

/// `F_G = {f in R^{E\T} : -1 <= -Cf <= 1, -1 <= f <= 1}`. Zero rows of `C`
/// (bridges) impose nothing and are omitted.
pub fn flow_polytope(forest: &SpanningForest) -> HPolytope {
    symmetric_rows(forest.flow_dim(), forest.matrix())
}

/// `T_G = {t in R^T : -1 <= C^t t <= 1, -1 <= t <= 1}`. Zero rows of `C^t`
/// (loops) impose nothing and are omitted; loop graphs are flagged as
/// degenerate by [`Degeneracy::of`].
pub fn tension_polytope(forest: &SpanningForest) -> HPolytope {
    symmetric_rows(forest.tension_dim(), &forest.transpose())
}

/// Hyperplanes of an inside-out polytope. `degeneracy` is set when some
/// constraint row is identically zero, which puts every candidate point on a
/// hyperplane and makes the count zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrangement {
    pub hyperplanes: Vec<Hyperplane>,
    pub degeneracy: Option<Degeneracy>,
}

impl Arrangement {
    /// Inside-out count of `(P, self)` at dilation `k`.
    pub fn count_points(&self, p: &HPolytope, k: i64) -> Result<u64> {
        if self.degeneracy.is_some() {
            if k < 1 {
                return Err(Error::InvalidArgument(format!("dilation {k} must be >= 1")));
            }
            return Ok(0);
        }
        crate::counting::count_iop_points(p, &self.hyperplanes, k)
    }
}

/// Ambient polytope of the inside-out construction for `kind`: the unit cube
/// in the modular cases, `F_G` or `T_G` in the integral cases.
pub fn iop_polytope(forest: &SpanningForest, kind: CountKind) -> HPolytope {
    match kind {
        CountKind::ModularFlow => HPolytope::unit_cube(forest.flow_dim()),
        CountKind::ModularTension => HPolytope::unit_cube(forest.tension_dim()),
        CountKind::IntegralFlow => flow_polytope(forest),
        CountKind::IntegralTension => tension_polytope(forest),
    }
}

pub fn iop_arrangement(forest: &SpanningForest, kind: CountKind) -> Arrangement {
    let (dim, rows): (usize, Vec<Vec<i64>>) = match kind {
        CountKind::ModularFlow | CountKind::IntegralFlow => {
            (forest.flow_dim(), forest.matrix().to_vec())
        }
        CountKind::ModularTension | CountKind::IntegralTension => (
            forest.tension_dim(),
            forest
                .transpose()
                .into_iter()
                .map(|r| r.into_iter().map(|x| -x).collect())
                .collect(),
        ),
    };
    let degeneracy = rows
        .iter()
        .any(|a| a.iter().all(|&x| x == 0))
        .then(|| if kind.is_flow() { Degeneracy::Bridge } else { Degeneracy::Loop });

    let mut hyperplanes: Vec<Hyperplane> = Vec::new();
    for a in rows.iter().filter(|a| a.iter().any(|&x| x != 0)) {
        if kind.is_modular() {
            // offsets j with {a.x = j} meeting the open unit cube
            let lo: i64 = a.iter().filter(|&&x| x < 0).sum();
            let hi: i64 = a.iter().filter(|&&x| x > 0).sum();
            for j in lo + 1..hi {
                hyperplanes.push(Hyperplane::new(a.clone(), j).expect("nonzero").normalized());
            }
        } else {
            hyperplanes.push(Hyperplane::new(a.clone(), 0).expect("nonzero").normalized());
        }
    }
    if !kind.is_modular() {
        hyperplanes.extend((0..dim).map(|i| Hyperplane::coordinate(dim, i)));
    }
    hyperplanes.sort();
    hyperplanes.dedup();
    Arrangement {
        hyperplanes,
        degeneracy,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_edge_list, spanning_forest};
    use crate::poly::Polynomial;
    use num_rational::BigRational;

    fn hexagon() -> HPolytope {
        tension_polytope(&spanning_forest(&parse_edge_list("1 2\n2 3\n3 1").unwrap()))
    }

    #[test]
    fn hexagon_counts() {
        let p = hexagon();
        assert_eq!(count_lattice_points(&p, 1, Region::Closed).unwrap(), 7);
        assert_eq!(count_lattice_points(&p, 2, Region::Closed).unwrap(), 19);
        assert_eq!(count_lattice_points(&p, 0, Region::Closed).unwrap(), 1);
        assert!(count_lattice_points(&p, 0, Region::Interior).is_err());
    }

    #[test]
    fn cross_polytope_interior() {
        let p = HPolytope::cross_polytope(2);
        assert_eq!(count_lattice_points(&p, 1, Region::Interior).unwrap(), 1);
    }

    #[test]
    fn ehrhart_examples() {
        assert_eq!(ehrhart_polynomial(&hexagon()).unwrap(), Polynomial::from_ints(&[1, 3, 3]));
        assert_eq!(
            ehrhart_polynomial(&HPolytope::cube(2, -1, 1)).unwrap(),
            Polynomial::from_ints(&[1, 4, 4])
        );
        let third = |n: i64| BigRational::new(n.into(), 3.into());
        assert_eq!(
            ehrhart_polynomial(&HPolytope::cross_polytope(3)).unwrap(),
            Polynomial::from_coeffs(vec![third(3), third(8), third(6), third(4)])
        );
    }

    #[test]
    fn reflexivity_examples() {
        assert!(reflexivity_check(&hexagon(), 3).unwrap().reflexive);
        let cube = reflexivity_check(&HPolytope::cube(2, -1, 1), 3).unwrap();
        assert!(cube.reflexive);
        assert_eq!(cube.verified_up_to, 3);
        let unit = reflexivity_check(&HPolytope::unit_cube(2), 2).unwrap();
        assert!(!unit.reflexive);
        assert_eq!(unit.interior_points, 0);
        let wide = reflexivity_check(&HPolytope::cube(1, -2, 2), 2).unwrap();
        assert!(!wide.reflexive);
        assert_eq!(wide.interior_points, 3);
    }

    #[test]
    fn flat_polytope_is_rejected() {
        let rows = vec![(vec![1, 0], 0), (vec![-1, 0], 0), (vec![0, 1], 1), (vec![0, -1], 1)];
        let p = HPolytope::new(2, rows, 1).unwrap();
        assert!(matches!(reflexivity_check(&p, 2), Err(Error::LowerDimensional)));
    }

    #[test]
    fn containment() {
        let k4 = parse_edge_list("1 2\n1 3\n1 4\n2 3\n2 4\n3 4").unwrap();
        let f = flow_polytope(&spanning_forest(&k4));
        assert!(contains_points(&f, &signed_unit_vectors(3)).unwrap());
        assert!(!contains_points(&hexagon(), &[vec![1, 1]]).unwrap());
        assert!(contains_points(&hexagon(), &[]).unwrap());
        assert!(contains_points(&hexagon(), &[vec![1]]).is_err());
    }

    #[test]
    fn unbounded_input_is_rejected() {
        assert!(matches!(
            HPolytope::new(2, vec![(vec![1, 0], 1), (vec![-1, 0], 1), (vec![0, 1], 1)], 1),
            Err(Error::Unbounded(1))
        ));
        assert!(HPolytope::new(1, vec![(vec![1], 5), (vec![-1], 0)], 1).is_err());
    }

    #[test]
    fn polytope_constructions() {
        let c3 = spanning_forest(&parse_edge_list("1 2\n2 3\n3 1").unwrap());
        let f = flow_polytope(&c3);
        assert_eq!(f.dim(), 1);
        assert_eq!(ehrhart_polynomial(&f).unwrap(), Polynomial::linear(2, 1));

        let bouquet = spanning_forest(&parse_edge_list("1 1\n1 1\n1 1").unwrap());
        assert_eq!(flow_polytope(&bouquet), HPolytope::cube(3, -1, 1));

        let tree = spanning_forest(&parse_edge_list("1 2\n2 3\n2 4").unwrap());
        assert_eq!(flow_polytope(&tree).dim(), 0);
        assert_eq!(ehrhart_polynomial(&flow_polytope(&tree)).unwrap(), Polynomial::one());
        assert_eq!(tension_polytope(&tree), HPolytope::cube(3, -1, 1));
    }

    #[test]
    fn arrangement_examples() {
        let k3 = spanning_forest(&parse_edge_list("1 2\n2 3\n3 1").unwrap());
        let a = iop_arrangement(&k3, CountKind::ModularTension);
        assert_eq!(a.hyperplanes, vec![Hyperplane::new(vec![1, 1], 1).unwrap()]);
        assert!(a.degeneracy.is_none());

        let a = iop_arrangement(&k3, CountKind::IntegralFlow);
        assert_eq!(a.hyperplanes, vec![Hyperplane::new(vec![1], 0).unwrap()]);

        let tree = spanning_forest(&parse_edge_list("1 2\n2 3").unwrap());
        let a = iop_arrangement(&tree, CountKind::ModularTension);
        assert!(a.hyperplanes.is_empty() && a.degeneracy.is_none());
        let a = iop_arrangement(&tree, CountKind::ModularFlow);
        assert_eq!(a.degeneracy, Some(Degeneracy::Bridge));
    }

    #[test]
    fn serde_shape() {
        let p = HPolytope::cube(1, -1, 1);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"dim":1,"rows":[[[1],1],[[-1],1]],"box_bound":1}"#);
        assert_eq!(serde_json::from_str::<HPolytope>(&json).unwrap(), p);
        assert!(serde_json::from_str::<HPolytope>(r#"{"dim":1,"rows":[[[1],1]],"box_bound":1}"#).is_err());
    }

    #[test]
    fn guard_refuses_large_boxes() {
        let p = HPolytope::cube(6, -1, 1);
        assert!(matches!(
            count_lattice_points_guarded(&p, 10, Region::Closed, 1_000),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
