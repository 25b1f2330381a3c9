//! Per-graph theorem harness: computes the counting polynomials and
//! polytopes of a graph and checks every coefficient bound against them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::{json, Value};

use crate::constraints::{g_constraints, is_palindromic};
use crate::counting::{
    count_proper_colorings, polynomial_with_forest, CountKind, Degeneracy, DEFAULT_GUARD,
};
use crate::error::{Error, Result};
use crate::graph::{classify, spanning_forest, Graph, GraphClassification, SpanningForest, VertexId};
use crate::poly::{binomial, Polynomial};
use crate::polytope::{
    ehrhart_polynomial_guarded, flow_polytope, reflexivity_check_guarded, tension_polytope,
};
use crate::tutte::{modular_polys_from_tutte, TUTTE_EDGE_LIMIT};
use crate::vectors::{eulerian, h_vector, hstar_vector, macmahon, CoeffVector};

/// Brute-force colorings are only attempted up to this many vertices.
pub const CHROMATIC_VERTEX_LIMIT: usize = 6;
/// Colors tried by the chromatic check.
pub const CHROMATIC_MAX_K: u64 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    BoundsModularFlow,
    BoundsModularTension,
    BoundsIntegralFlow,
    BoundsIntegralTension,
    PalindromicFlow,
    PalindromicTension,
    ReflexiveFlow,
    ReflexiveTension,
    TensionSandwich,
    FlowSandwich,
    ChromaticIdentity,
    TutteConsistency,
}

impl CheckName {
    pub const ALL: [CheckName; 12] = [
        CheckName::BoundsModularFlow,
        CheckName::BoundsModularTension,
        CheckName::BoundsIntegralFlow,
        CheckName::BoundsIntegralTension,
        CheckName::PalindromicFlow,
        CheckName::PalindromicTension,
        CheckName::ReflexiveFlow,
        CheckName::ReflexiveTension,
        CheckName::TensionSandwich,
        CheckName::FlowSandwich,
        CheckName::ChromaticIdentity,
        CheckName::TutteConsistency,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::BoundsModularFlow => "bounds_modular_flow",
            CheckName::BoundsModularTension => "bounds_modular_tension",
            CheckName::BoundsIntegralFlow => "bounds_integral_flow",
            CheckName::BoundsIntegralTension => "bounds_integral_tension",
            CheckName::PalindromicFlow => "palindromic_flow",
            CheckName::PalindromicTension => "palindromic_tension",
            CheckName::ReflexiveFlow => "reflexive_flow",
            CheckName::ReflexiveTension => "reflexive_tension",
            CheckName::TensionSandwich => "tension_sandwich",
            CheckName::FlowSandwich => "flow_sandwich",
            CheckName::ChromaticIdentity => "chromatic_identity",
            CheckName::TutteConsistency => "tutte_consistency",
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown check {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Largest dilation for the finite reflexivity test.
    pub k_max: i64,
    pub guard: u128,
    /// Checks to run; `None` runs all of them.
    pub checks: Option<Vec<CheckName>>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            k_max: 3,
            guard: DEFAULT_GUARD,
            checks: None,
        }
    }
}

impl VerifyOptions {
    fn selected(&self, name: CheckName) -> bool {
        self.checks.as_ref().is_none_or(|c| c.contains(&name))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub details: Value,
}

impl CheckResult {
    fn verdict(ok: bool, details: Value) -> Self {
        Self {
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            reason: None,
            details,
        }
    }

    fn skipped(reason: impl Into<String>, details: Value) -> Self {
        Self {
            status: CheckStatus::Skipped,
            reason: Some(reason.into()),
            details,
        }
    }
}

/// Check results in canonical order, serialized as a JSON object.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Checks(pub Vec<(CheckName, CheckResult)>);

impl Checks {
    pub fn get(&self, name: CheckName) -> Option<&CheckResult> {
        self.0.iter().find(|(n, _)| *n == name).map(|(_, r)| r)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(CheckName, CheckResult)> {
        self.0.iter()
    }
}

impl Serialize for Checks {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (name, result) in &self.0 {
            map.serialize_entry(name.as_str(), result)?;
        }
        map.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphInfo {
    pub spec: String,
    pub vertices: Vec<VertexId>,
    pub edges: Vec<(VertexId, VertexId)>,
}

/// A computed value, or the guard message that prevented computing it.
pub type Outcome<T> = std::result::Result<T, String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Polynomials {
    pub mflow: Option<Polynomial>,
    pub mtension: Option<Polynomial>,
    pub iflow: Option<Polynomial>,
    pub itension: Option<Polynomial>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolytopePair<T> {
    pub flow: Option<T>,
    pub tension: Option<T>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Degeneracies {
    pub flow: Option<Degeneracy>,
    pub tension: Option<Degeneracy>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub graph: GraphInfo,
    pub classification: GraphClassification,
    pub degeneracy: Degeneracies,
    pub polynomials: Polynomials,
    pub ehrhart: PolytopePair<Polynomial>,
    pub hstar: PolytopePair<CoeffVector>,
    pub checks: Checks,
    pub conventions: Vec<&'static str>,
}

impl TheoremReport {
    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|(_, r)| r.status == CheckStatus::Fail)
    }
}

pub const CONVENTIONS: [&str; 5] = [
    "g-constraint vectors are h-vectors with reference degree d-1 (modular) or dim-1 (integral)",
    "mFlow(k) = (-1)^(|E|-|V|+c) T(0,1-k); mTension(k) = (-1)^(|V|-c) T(1-k,0)",
    "chromatic(k) = k^c mTension(k)",
    "sandwich bounds are applied per connected component; Ehrhart polynomials multiply over components",
    "reflexivity is verified for dilations 1..=k_max only",
];

fn guarded<T>(r: Result<T>) -> Result<Outcome<T>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(e @ Error::GuardExceeded { .. }) => Ok(Err(e.to_string())),
        Err(e) => Err(e),
    }
}

fn guard_skip(message: &str) -> CheckResult {
    CheckResult::skipped("guard", json!({ "message": message }))
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn q(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

fn poly_value(p: &Polynomial) -> Value {
    serde_json::to_value(p).expect("polynomials serialize")
}

/// `(k+1)^d - p(k)` expanded in the h-basis of degree `d - 1`, tested
/// against the g-constraints.
fn g_check(
    label: &str,
    bound: &Polynomial,
    p: &Polynomial,
    d: usize,
) -> Result<CheckResult> {
    if d == 0 {
        return Ok(CheckResult::skipped(
            "zero-dimensional",
            json!({ "polynomial": poly_value(p) }),
        ));
    }
    let difference = bound - p;
    let h = h_vector(&difference, d - 1)?;
    let report = g_constraints(h.entries());
    Ok(CheckResult::verdict(
        report.passes(),
        json!({
            "bound": label,
            "bound_polynomial": poly_value(bound),
            "polynomial": poly_value(p),
            "difference": poly_value(&difference),
            "h_vector": h,
            "g_constraints": report,
        }),
    ))
}

struct Component {
    vertices: usize,
    cyclomatic: usize,
    forest: SpanningForest,
}

/// Entrywise `lower_i <= h*_i <= upper_i` on every component.
fn sandwich(
    components: &[Component],
    flow: bool,
    whole: &Polynomial,
    guard: u128,
) -> Result<CheckResult> {
    let mut ok = true;
    let mut product = Polynomial::one();
    let mut parts = Vec::new();
    for c in components {
        let p = if flow {
            flow_polytope(&c.forest)
        } else {
            tension_polytope(&c.forest)
        };
        let ehrhart = match guarded(ehrhart_polynomial_guarded(&p, guard))? {
            Ok(e) => e,
            Err(m) => return Ok(guard_skip(&m)),
        };
        let dim = p.dim();
        let hstar = hstar_vector(&ehrhart, dim)?;
        let (lower, upper): (Vec<BigInt>, Vec<BigInt>) = if flow {
            let r = c.cyclomatic as u32;
            (0..=r)
                .map(|i| Ok((binomial(r as u64, i as u64), macmahon(r + 1, i + 1)?)))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .unzip()
        } else {
            let n = c.vertices as u32;
            (0..n)
                .map(|i| Ok((eulerian(n, i + 1)?, macmahon(n, i + 1)?)))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .unzip()
        };
        let entries = hstar.entries();
        let violation = (0..entries.len()).find(|&i| {
            entries[i] < q(lower[i].clone()) || entries[i] > q(upper[i].clone())
        });
        ok &= violation.is_none() && entries.len() == lower.len();
        let lower_tight = entries.iter().zip(&lower).all(|(h, l)| *h == q(l.clone()));
        let upper_tight = entries.iter().zip(&upper).all(|(h, u)| *h == q(u.clone()));
        let mut part = json!({
            "vertices": c.vertices,
            "cyclomatic_number": c.cyclomatic,
            "ehrhart": poly_value(&ehrhart),
            "hstar": hstar,
            "lower": strings(&lower),
            "upper": strings(&upper),
            "upper_tight": upper_tight,
            "violation_index": violation,
        });
        if !flow {
            part["lower_tight"] = json!(lower_tight);
        }
        parts.push(part);
        product = &product * &ehrhart;
    }
    let product_ok = &product == whole;
    Ok(CheckResult::verdict(
        ok && product_ok,
        json!({
            "per_component": components.len() > 1,
            "components": parts,
            "product_rule": product_ok,
        }),
    ))
}

fn palindromic_check(hstar: &Outcome<CoeffVector>) -> CheckResult {
    match hstar {
        Ok(h) => CheckResult::verdict(is_palindromic(h.entries()), json!({ "hstar": h })),
        Err(m) => guard_skip(m),
    }
}

pub fn verify_graph(spec: &str, g: &Graph, options: &VerifyOptions) -> Result<TheoremReport> {
    let guard = options.guard;
    let class = classify(g);
    let forest = spanning_forest(g);

    let count = |kind| -> Result<Outcome<Polynomial>> {
        Ok(guarded(polynomial_with_forest(g, &forest, kind, guard))?.map(|c| c.polynomial))
    };
    let mflow = count(CountKind::ModularFlow)?;
    let mtension = count(CountKind::ModularTension)?;
    let iflow = count(CountKind::IntegralFlow)?;
    let itension = count(CountKind::IntegralTension)?;

    let f_poly = flow_polytope(&forest);
    let t_poly = tension_polytope(&forest);
    let l_flow = guarded(ehrhart_polynomial_guarded(&f_poly, guard))?;
    let l_tension = guarded(ehrhart_polynomial_guarded(&t_poly, guard))?;
    let h_flow = match &l_flow {
        Ok(l) => Ok(hstar_vector(l, f_poly.dim())?),
        Err(m) => Err(m.clone()),
    };
    let h_tension = match &l_tension {
        Ok(l) => Ok(hstar_vector(l, t_poly.dim())?),
        Err(m) => Err(m.clone()),
    };

    let flow_degeneracy = Degeneracy::of(&class, CountKind::ModularFlow);
    let tension_degeneracy = Degeneracy::of(&class, CountKind::ModularTension);
    let r = forest.flow_dim();
    let t = forest.tension_dim();

    let components: Vec<Component> = g
        .component_subgraphs()
        .into_iter()
        .map(|sub| {
            let c = classify(&sub);
            Component {
                vertices: c.vertex_count,
                cyclomatic: c.cyclomatic_number,
                forest: spanning_forest(&sub),
            }
        })
        .collect();

    let mut checks = Vec::new();
    for name in CheckName::ALL {
        if !options.selected(name) {
            continue;
        }
        let degeneracy = match name {
            CheckName::BoundsModularFlow | CheckName::BoundsIntegralFlow | CheckName::FlowSandwich => {
                flow_degeneracy
            }
            CheckName::BoundsModularTension
            | CheckName::BoundsIntegralTension
            | CheckName::TensionSandwich => tension_degeneracy,
            _ => None,
        };
        if let Some(d) = degeneracy {
            checks.push((name, CheckResult::skipped(d.as_str(), json!({}))));
            continue;
        }
        let result = match name {
            CheckName::BoundsModularFlow | CheckName::BoundsModularTension => {
                let (p, d) = if name == CheckName::BoundsModularFlow {
                    (&mflow, r)
                } else {
                    (&mtension, t)
                };
                match p {
                    Ok(p) => {
                        let bound = Polynomial::linear(1, 1).pow(d as u32);
                        g_check("(k+1)^d", &bound, p, d)?
                    }
                    Err(m) => guard_skip(m),
                }
            }
            CheckName::BoundsIntegralFlow | CheckName::BoundsIntegralTension => {
                let (l, p, d) = if name == CheckName::BoundsIntegralFlow {
                    (&l_flow, &iflow, r)
                } else {
                    (&l_tension, &itension, t)
                };
                match (l, p) {
                    (Ok(l), Ok(p)) => g_check("ehrhart", l, p, d)?,
                    (Err(m), _) | (_, Err(m)) => guard_skip(m),
                }
            }
            CheckName::PalindromicFlow => palindromic_check(&h_flow),
            CheckName::PalindromicTension => palindromic_check(&h_tension),
            CheckName::ReflexiveFlow | CheckName::ReflexiveTension => {
                let p = if name == CheckName::ReflexiveFlow {
                    &f_poly
                } else {
                    &t_poly
                };
                match guarded(reflexivity_check_guarded(p, options.k_max, guard))? {
                    Ok(report) => CheckResult::verdict(
                        report.reflexive,
                        json!({ "polytope": p, "reflexivity": report }),
                    ),
                    Err(m) => guard_skip(&m),
                }
            }
            CheckName::TensionSandwich | CheckName::FlowSandwich => {
                let flow = name == CheckName::FlowSandwich;
                match if flow { &l_flow } else { &l_tension } {
                    Ok(whole) => sandwich(&components, flow, whole, guard)?,
                    Err(m) => guard_skip(m),
                }
            }
            CheckName::ChromaticIdentity => chromatic_check(g, &class, &mtension, guard)?,
            CheckName::TutteConsistency => tutte_check(g, &mflow, &mtension)?,
        };
        checks.push((name, result));
    }

    Ok(TheoremReport {
        graph: GraphInfo {
            spec: spec.to_string(),
            vertices: g.vertices().to_vec(),
            edges: g.edge_ids(),
        },
        classification: class,
        degeneracy: Degeneracies {
            flow: flow_degeneracy,
            tension: tension_degeneracy,
        },
        polynomials: Polynomials {
            mflow: mflow.ok(),
            mtension: mtension.ok(),
            iflow: iflow.ok(),
            itension: itension.ok(),
        },
        ehrhart: PolytopePair {
            flow: l_flow.ok(),
            tension: l_tension.ok(),
        },
        hstar: PolytopePair {
            flow: h_flow.ok(),
            tension: h_tension.ok(),
        },
        checks: Checks(checks),
        conventions: CONVENTIONS.to_vec(),
    })
}

fn chromatic_check(
    g: &Graph,
    class: &GraphClassification,
    mtension: &Outcome<Polynomial>,
    guard: u128,
) -> Result<CheckResult> {
    if class.vertex_count > CHROMATIC_VERTEX_LIMIT {
        return Ok(CheckResult::skipped(
            "vertex limit",
            json!({ "limit": CHROMATIC_VERTEX_LIMIT }),
        ));
    }
    let mtension = match mtension {
        Ok(p) => p,
        Err(m) => return Ok(guard_skip(m)),
    };
    let chromatic = &Polynomial::variable().pow(class.component_count as u32) * mtension;
    let mut rows = Vec::new();
    let mut ok = true;
    for k in 1..=CHROMATIC_MAX_K {
        let counted = match guarded(count_proper_colorings(g, k, guard))? {
            Ok(c) => c,
            Err(m) => return Ok(guard_skip(&m)),
        };
        let predicted = chromatic.evaluate_int(k as i64);
        ok &= predicted == q(BigInt::from(counted));
        rows.push(json!({ "k": k, "predicted": predicted.to_string(), "counted": counted.to_string() }));
    }
    Ok(CheckResult::verdict(
        ok,
        json!({ "chromatic": poly_value(&chromatic), "samples": rows }),
    ))
}

fn tutte_check(
    g: &Graph,
    mflow: &Outcome<Polynomial>,
    mtension: &Outcome<Polynomial>,
) -> Result<CheckResult> {
    if g.edge_count() > TUTTE_EDGE_LIMIT {
        return Ok(CheckResult::skipped(
            "guard",
            json!({ "message": format!("more than {TUTTE_EDGE_LIMIT} edges") }),
        ));
    }
    let (mflow, mtension) = match (mflow, mtension) {
        (Ok(f), Ok(t)) => (f, t),
        (Err(m), _) | (_, Err(m)) => return Ok(guard_skip(m)),
    };
    let tutte = modular_polys_from_tutte(g)?;
    Ok(CheckResult::verdict(
        &tutte.modular_flow == mflow && &tutte.modular_tension == mtension,
        json!({
            "tutte_flow": poly_value(&tutte.modular_flow),
            "tutte_tension": poly_value(&tutte.modular_tension),
            "counted_flow": poly_value(mflow),
            "counted_tension": poly_value(mtension),
        }),
    ))
}
