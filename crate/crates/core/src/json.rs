//! Stable JSON encodings. Rationals are `"num/den"` strings (denominator
//! omitted when 1); field order is fixed by struct order, and all lists are
//! canonically ordered upstream, so serialized output is byte-stable for a
//! given input and seed.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::horn::HornTriple;
use crate::oracle::SampleReport;
use crate::polyhedra::{HPolyhedron, LinearConstraint, VPolyhedron};
use crate::rational::{format_rat, parse_rat, rat_to_f64, Rat};
use crate::rootsys::{RealFormData, Spectrum};
use crate::sum::{OrbitSumResult, RecessionLawReport, VertexCriterionReport};

pub const SCHEMA_ORBIT_SUM: &str = "orbitsum/orbit-sum-result/1";
pub const SCHEMA_SAMPLE_REPORT: &str = "orbitsum/sample-report/1";
pub const SCHEMA_LATTICE: &str = "orbitsum/lattice-points/1";
pub const SCHEMA_HPOLY: &str = "orbitsum/h-polyhedron/1";
pub const SCHEMA_HORN: &str = "orbitsum/horn-triples/1";
pub const SCHEMA_PLOT: &str = "orbitsum/plot-data/1";

fn rats_to_strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(format_rat).collect()
}

fn strings_to_rats(v: &[String]) -> Result<Vec<Rat>, Error> {
    v.iter().map(|s| parse_rat(s)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintJson {
    pub normal: Vec<String>,
    pub offset: String,
}

impl From<&LinearConstraint> for ConstraintJson {
    fn from(c: &LinearConstraint) -> Self {
        Self { normal: rats_to_strings(&c.normal), offset: format_rat(&c.offset) }
    }
}

impl TryFrom<&ConstraintJson> for LinearConstraint {
    type Error = Error;
    fn try_from(c: &ConstraintJson) -> Result<Self, Error> {
        Ok(LinearConstraint::new(strings_to_rats(&c.normal)?, parse_rat(&c.offset)?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HPolyhedronJson {
    pub dim: usize,
    pub equalities: Vec<ConstraintJson>,
    pub inequalities: Vec<ConstraintJson>,
}

impl From<&HPolyhedron> for HPolyhedronJson {
    fn from(p: &HPolyhedron) -> Self {
        Self {
            dim: p.dim,
            equalities: p.equalities.iter().map(ConstraintJson::from).collect(),
            inequalities: p.inequalities.iter().map(ConstraintJson::from).collect(),
        }
    }
}

impl TryFrom<&HPolyhedronJson> for HPolyhedron {
    type Error = Error;
    fn try_from(p: &HPolyhedronJson) -> Result<Self, Error> {
        Ok(HPolyhedron::new(
            p.dim,
            p.inequalities
                .iter()
                .map(LinearConstraint::try_from)
                .collect::<Result<_, _>>()?,
            p.equalities
                .iter()
                .map(LinearConstraint::try_from)
                .collect::<Result<_, _>>()?,
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VPolyhedronJson {
    pub dim: usize,
    pub empty: bool,
    pub vertices: Vec<Vec<String>>,
    pub rays: Vec<Vec<String>>,
}

impl From<&VPolyhedron> for VPolyhedronJson {
    fn from(v: &VPolyhedron) -> Self {
        Self {
            dim: v.dim,
            empty: v.empty,
            vertices: v.vertices.iter().map(|x| rats_to_strings(x)).collect(),
            rays: v.rays.iter().map(|x| rats_to_strings(x)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealFormJson {
    pub algebra: String,
    pub series: String,
    pub rank: usize,
    pub painted: Option<usize>,
    pub ambient_dim: usize,
    pub positive_roots: Vec<Vec<i64>>,
    pub compact_positive: Vec<usize>,
    pub noncompact_positive: Vec<usize>,
    pub cmin_generators: Vec<Vec<i64>>,
    pub chamber: Vec<Vec<String>>,
    pub trace_functionals: Vec<Vec<String>>,
    pub block_sizes: Option<(usize, usize)>,
}

impl From<&RealFormData> for RealFormJson {
    fn from(f: &RealFormData) -> Self {
        Self {
            algebra: f.algebra_name(),
            series: f.diagram.series.to_string(),
            rank: f.diagram.rank,
            painted: f.diagram.painted,
            ambient_dim: f.ambient_dim,
            positive_roots: f.positive_roots.clone(),
            compact_positive: f.compact_positive.clone(),
            noncompact_positive: f.noncompact_positive.clone(),
            cmin_generators: f.cmin_generators.clone(),
            chamber: f.chamber.iter().map(|n| rats_to_strings(n)).collect(),
            trace_functionals: f.trace_functionals.iter().map(|n| rats_to_strings(n)).collect(),
            block_sizes: f.block_sizes,
        }
    }
}

/// Parses an algebra designator of the form `su(p,q)`.
pub fn parse_algebra(s: &str) -> Result<RealFormData, Error> {
    let trimmed = s.trim();
    let inner = trimmed
        .strip_prefix("su(")
        .and_then(|rest| rest.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("unsupported algebra designator `{s}`; expected su(p,q)")))?;
    let (p, q) = inner
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("malformed designator `{s}`")))?;
    let p: usize = p.trim().parse().map_err(|_| Error::Parse(format!("bad p in `{s}`")))?;
    let q: usize = q.trim().parse().map_err(|_| Error::Parse(format!("bad q in `{s}`")))?;
    RealFormData::su(p, q)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexEntryJson {
    pub vertex: Vec<String>,
    pub open_chamber: bool,
    pub is_weyl_sum: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexCriterionJson {
    pub holds: bool,
    pub entries: Vec<VertexEntryJson>,
}

impl From<&VertexCriterionReport> for VertexCriterionJson {
    fn from(r: &VertexCriterionReport) -> Self {
        Self {
            holds: r.holds,
            entries: r
                .entries
                .iter()
                .map(|e| VertexEntryJson {
                    vertex: rats_to_strings(&e.vertex),
                    open_chamber: e.open_chamber,
                    is_weyl_sum: e.is_weyl_sum,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecessionLawJson {
    pub holds: bool,
    pub computed_rays: Vec<Vec<String>>,
    pub expected_rays: Vec<Vec<String>>,
}

impl From<&RecessionLawReport> for RecessionLawJson {
    fn from(r: &RecessionLawReport) -> Self {
        Self {
            holds: r.holds,
            computed_rays: r.computed_rays.iter().map(|x| rats_to_strings(x)).collect(),
            expected_rays: r.expected_rays.iter().map(|x| rats_to_strings(x)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChecksJson {
    pub vertex_criterion: VertexCriterionJson,
    pub recession_law: RecessionLawJson,
}

/// The full `polytope` command payload.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitSumJson {
    pub schema: String,
    pub algebra: String,
    pub lambda_a: Vec<String>,
    pub lambda_b: Vec<String>,
    pub exact: bool,
    pub s_ab: HPolyhedronJson,
    pub pi: HPolyhedronJson,
    pub vrep: VPolyhedronJson,
    pub weyl_sums: Vec<Vec<String>>,
    pub checks: Option<ChecksJson>,
}

impl OrbitSumJson {
    pub fn new(result: &OrbitSumResult, checks: Option<ChecksJson>) -> Self {
        Self {
            schema: SCHEMA_ORBIT_SUM.to_string(),
            algebra: result.form.algebra_name(),
            lambda_a: rats_to_strings(&result.lambda_a.coords),
            lambda_b: rats_to_strings(&result.lambda_b.coords),
            exact: result.exactness,
            s_ab: HPolyhedronJson::from(&result.s_ab),
            pi: HPolyhedronJson::from(&result.pi.hrep.canonicalize()),
            vrep: VPolyhedronJson::from(&result.vertices),
            weyl_sums: result
                .weyl_sum_points
                .iter()
                .map(|s| rats_to_strings(&s.coords))
                .collect(),
            checks,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleReportJson {
    pub schema: String,
    pub algebra: String,
    pub lambda_a: Vec<String>,
    pub lambda_b: Vec<String>,
    #[serde(flatten)]
    pub report: SampleReport,
}

impl SampleReportJson {
    pub fn new(form: &RealFormData, a: &Spectrum, b: &Spectrum, report: SampleReport) -> Self {
        Self {
            schema: SCHEMA_SAMPLE_REPORT.to_string(),
            algebra: form.algebra_name(),
            lambda_a: rats_to_strings(&a.coords),
            lambda_b: rats_to_strings(&b.coords),
            report,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub schema: String,
    pub algebra: String,
    pub lambda_a: Vec<String>,
    pub lambda_b: Vec<String>,
    pub functional: Vec<String>,
    pub bound: String,
    pub points: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HornTripleJson {
    pub i: Vec<usize>,
    pub j: Vec<usize>,
    pub k: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HornTriplesJson {
    pub schema: String,
    pub n: usize,
    pub r: usize,
    pub triples: Vec<HornTripleJson>,
}

impl HornTriplesJson {
    pub fn new(n: usize, r: usize, triples: &[HornTriple]) -> Self {
        Self {
            schema: SCHEMA_HORN.to_string(),
            n,
            r,
            triples: triples
                .iter()
                .map(|t| HornTripleJson { i: t.i.clone(), j: t.j.clone(), k: t.k.clone() })
                .collect(),
        }
    }
}

/// Vertex/ray/sample data for external plotting, as floats.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotDataJson {
    pub schema: String,
    pub algebra: String,
    pub vertices: Vec<Vec<f64>>,
    pub rays: Vec<Vec<f64>>,
    pub weyl_sums: Vec<Vec<f64>>,
    pub samples: Vec<Vec<f64>>,
}

impl PlotDataJson {
    pub fn new(result: &OrbitSumResult, samples: Vec<Vec<f64>>) -> Self {
        let fl = |vs: &[Vec<Rat>]| -> Vec<Vec<f64>> {
            vs.iter()
                .map(|v| v.iter().map(rat_to_f64).collect())
                .collect()
        };
        Self {
            schema: SCHEMA_PLOT.to_string(),
            algebra: result.form.algebra_name(),
            vertices: fl(&result.vertices.vertices),
            rays: fl(&result.vertices.rays),
            weyl_sums: fl(&result
                .weyl_sum_points
                .iter()
                .map(|s| s.coords.clone())
                .collect::<Vec<_>>()),
            samples,
        }
    }
}

/// Lattice points as i64 rows (desk-scale values).
pub fn lattice_points_to_i64(points: &[Vec<num_bigint::BigInt>]) -> Result<Vec<Vec<i64>>, Error> {
    points
        .iter()
        .map(|row| {
            row.iter()
                .map(|z| {
                    z.to_i64()
                        .ok_or_else(|| Error::Numerical("lattice point exceeds i64".into()))
                })
                .collect()
        })
        .collect()
}
