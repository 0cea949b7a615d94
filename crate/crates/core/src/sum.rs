//! The orbit-sum pipeline: assemble the polyhedral set of possible spectra
//! of `A + B`, `(Π + Cone(nc)) ∩ chamber`, together with the single-orbit
//! torus image, the vertex criterion and the recession-cone law.

use num_traits::Signed;

use crate::error::Error;
use crate::horn::{self, CompactPolytope};
use crate::polyhedra::{HPolyhedron, LinearConstraint, VPolyhedron};
use crate::rational::{dot, format_rat, Rat};
use crate::rootsys::{RealFormData, Spectrum};

/// Everything computed for one pair of admissible spectra.
#[derive(Debug, Clone)]
pub struct OrbitSumResult {
    pub form: RealFormData,
    pub lambda_a: Spectrum,
    pub lambda_b: Spectrum,
    pub pi: CompactPolytope,
    /// Canonical H-representation of the possible sum spectra.
    pub s_ab: HPolyhedron,
    pub vertices: VPolyhedron,
    /// Chamber-sorted `w1·a + w2·b`, deduplicated.
    pub weyl_sum_points: Vec<Spectrum>,
    /// False when Π came from the sampling fallback.
    pub exactness: bool,
}

fn validate_input(form: &RealFormData, x: &Spectrum, which: &str) -> Result<(), Error> {
    form.check_trace(x)?;
    if let Some((gen, value)) = form.admissibility_violation(x) {
        return Err(Error::NotAdmissible {
            generator: gen.clone(),
            value: format!("{} (spectrum {which})", format_rat(&value)),
        });
    }
    if let Some(msg) = form.chamber_violation(x) {
        return Err(Error::NotInChamber { message: format!("{msg} (spectrum {which})") });
    }
    Ok(())
}

/// The headline computation: `S_AB = (Π + Cone(nc)) ∩ chamber`, canonical.
pub fn sum_spectra(
    form: &RealFormData,
    a: &Spectrum,
    b: &Spectrum,
) -> Result<OrbitSumResult, Error> {
    validate_input(form, a, "a")?;
    validate_input(form, b, "b")?;

    let pi = horn::compact_polytope(form, a, b)?;
    let cone = form.noncompact_cone();
    let mut swept = pi.hrep.minkowski_sum_with_cone(&cone)?;
    for n in &form.chamber {
        swept
            .inequalities
            .push(LinearConstraint::new(n.clone(), Rat::from_integer(0.into())));
    }
    for t in &form.trace_functionals {
        swept
            .equalities
            .push(LinearConstraint::new(t.clone(), Rat::from_integer(0.into())));
    }
    let s_ab = swept.canonicalize();
    let vertices = s_ab.vertices_and_rays()?;
    let weyl_sum_points = form.weyl_sums(a, b)?;

    Ok(OrbitSumResult {
        form: form.clone(),
        lambda_a: a.clone(),
        lambda_b: b.clone(),
        exactness: pi.exact,
        pi,
        s_ab,
        vertices,
        weyl_sum_points,
    })
}

/// Torus moment image of a single orbit: `conv(W_k·x) + Cone(nc)`, in the
/// full dual Cartan (no chamber intersection).
pub fn orbit_image(form: &RealFormData, x: &Spectrum) -> Result<HPolyhedron, Error> {
    form.check_trace(x)?;
    if let Some((gen, value)) = form.admissibility_violation(x) {
        return Err(Error::NotAdmissible {
            generator: gen.clone(),
            value: format_rat(&value),
        });
    }
    let orbit = form.weyl_orbit(x)?;
    let cone = form.noncompact_cone();
    let vpoly = VPolyhedron::new(
        form.ambient_dim,
        orbit.into_iter().map(|s| s.coords).collect(),
        cone.rays,
    );
    vpoly.to_hrep()
}

/// Per-vertex outcome of the extremal-point criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexEntry {
    pub vertex: Vec<Rat>,
    /// All chamber inequalities strict at this vertex.
    pub open_chamber: bool,
    pub is_weyl_sum: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VertexCriterionReport {
    /// Every open-chamber vertex is a chamber-sorted Weyl sum.
    pub holds: bool,
    pub entries: Vec<VertexEntry>,
}

/// Checks that the extreme points of `s_ab` inside the open chamber are
/// exactly Weyl sums of the inputs.
pub fn check_vertex_criterion(result: &OrbitSumResult) -> Result<VertexCriterionReport, Error> {
    if !result.exactness {
        return Err(Error::NotExact);
    }
    let form = &result.form;
    let entries: Vec<VertexEntry> = result
        .vertices
        .vertices
        .iter()
        .map(|v| {
            let open_chamber = form.chamber.iter().all(|n| dot(n, v).is_positive());
            let is_weyl_sum = result
                .weyl_sum_points
                .iter()
                .any(|w| &w.coords == v);
            VertexEntry { vertex: v.clone(), open_chamber, is_weyl_sum }
        })
        .collect();
    let holds = entries.iter().all(|e| !e.open_chamber || e.is_weyl_sum);
    Ok(VertexCriterionReport { holds, entries })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecessionLawReport {
    /// Recession cone of `s_ab` equals `Cone(nc) ∩ rec(chamber)`.
    pub holds: bool,
    pub computed_rays: Vec<Vec<Rat>>,
    pub expected_rays: Vec<Vec<Rat>>,
}

/// Checks `rec(s_ab) = Cone(nc) ∩ rec(t*₊)` by comparing canonical forms.
pub fn check_recession_law(result: &OrbitSumResult) -> Result<RecessionLawReport, Error> {
    if !result.exactness {
        return Err(Error::NotExact);
    }
    let form = &result.form;
    let computed_v = result.s_ab.recession_cone()?;
    let computed_h = computed_v.to_hrep()?;

    let mut expected_h = form.noncompact_cone().to_hrep()?;
    for n in &form.chamber {
        expected_h
            .inequalities
            .push(LinearConstraint::new(n.clone(), Rat::from_integer(0.into())));
    }
    for t in &form.trace_functionals {
        expected_h
            .equalities
            .push(LinearConstraint::new(t.clone(), Rat::from_integer(0.into())));
    }
    let expected_h = expected_h.canonicalize();
    let expected_v = expected_h.vertices_and_rays()?;

    let holds = computed_h.canonicalize() == expected_h;
    Ok(RecessionLawReport {
        holds,
        computed_rays: computed_v.rays,
        expected_rays: expected_v.rays,
    })
}

/// The W_k-fixed central direction for su(p,q): `(q,...,q, -p,...,-p)`.
pub fn central_direction(form: &RealFormData) -> Option<Vec<Rat>> {
    let (p, q) = form.block_sizes?;
    let mut z = Vec::with_capacity(p + q);
    for _ in 0..p {
        z.push(crate::rational::rat_int(q as i64));
    }
    for _ in 0..q {
        z.push(crate::rational::rat_int(-(p as i64)));
    }
    Some(z)
}
