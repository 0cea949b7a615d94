//! Exact rational convex polyhedra.
//!
//! `HPolyhedron` is an intersection of half-spaces `normal·x >= offset` and
//! hyperplanes `normal·x = offset`; `VPolyhedron` is a set of points plus
//! recession rays. All operations are exact; canonical forms are unique per
//! point set, so set equality is literal struct equality after
//! [`HPolyhedron::canonicalize`].

mod fm;
mod hull;
mod lattice;
mod vertex;

pub use hull::*;
pub use lattice::*;
pub use vertex::*;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg;
use crate::lp::{self, LpResult};
use crate::rational::{dot, format_rat, lex_cmp, primitive, rat_to_f64, Rat};

/// One affine condition `normal · x >= offset` (or `= offset` when used as an
/// equality).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearConstraint {
    pub normal: Vec<Rat>,
    pub offset: Rat,
}

impl LinearConstraint {
    pub fn new(normal: Vec<Rat>, offset: Rat) -> Self {
        Self { normal, offset }
    }

    pub fn from_i64(normal: &[i64], offset: i64) -> Self {
        Self {
            normal: crate::rational::i64_to_rat_vec(normal),
            offset: crate::rational::rat_int(offset),
        }
    }

    /// `normal·x - offset`; nonnegative means satisfied for inequalities.
    pub fn slack(&self, x: &[Rat]) -> Rat {
        dot(&self.normal, x) - &self.offset
    }

    /// Scales to a primitive integer normal. The inequality sense is
    /// preserved (positive factor only).
    pub fn to_primitive(&self) -> Self {
        if self.normal.iter().all(Zero::is_zero) {
            return self.clone();
        }
        let mut full = self.normal.clone();
        full.push(self.offset.clone());
        // Scale by the normal's content only, so the offset follows along.
        let prim_normal = primitive(&self.normal);
        let factor = prim_normal
            .iter()
            .zip(&self.normal)
            .find(|(_, orig)| !orig.is_zero())
            .map(|(p, orig)| p / orig)
            .expect("nonzero normal");
        debug_assert!(factor.is_positive());
        Self {
            normal: prim_normal,
            offset: &self.offset * &factor,
        }
    }
}

/// Verdict of a membership test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Membership {
    pub inside: bool,
    /// Largest amount (in primitive-integer constraint units) by which any
    /// constraint is violated; 0.0 when inside.
    pub worst_violation: f64,
    /// Number of constraints tight at the point (within tolerance).
    pub active: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolyhedron {
    pub dim: usize,
    pub inequalities: Vec<LinearConstraint>,
    pub equalities: Vec<LinearConstraint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VPolyhedron {
    pub dim: usize,
    pub vertices: Vec<Vec<Rat>>,
    /// Primitive integer direction vectors.
    pub rays: Vec<Vec<Rat>>,
    pub empty: bool,
}

impl VPolyhedron {
    pub fn empty(dim: usize) -> Self {
        Self { dim, vertices: vec![], rays: vec![], empty: true }
    }

    pub fn new(dim: usize, vertices: Vec<Vec<Rat>>, rays: Vec<Vec<Rat>>) -> Self {
        let empty = vertices.is_empty();
        Self { dim, vertices, rays, empty }
    }

    /// Cone through the origin spanned by the given ray directions.
    pub fn cone(dim: usize, rays: Vec<Vec<Rat>>) -> Self {
        let rays = rays.iter().map(|r| primitive(r)).collect();
        Self::new(dim, vec![crate::rational::zeros(dim)], rays)
    }

    /// True when the only vertex is the origin (or there are no vertices).
    pub fn is_cone(&self) -> bool {
        self.vertices.iter().all(|v| v.iter().all(Zero::is_zero))
    }
}

impl HPolyhedron {
    pub fn new(
        dim: usize,
        inequalities: Vec<LinearConstraint>,
        equalities: Vec<LinearConstraint>,
    ) -> Self {
        debug_assert!(inequalities.iter().chain(&equalities).all(|c| c.normal.len() == dim));
        Self { dim, inequalities, equalities }
    }

    /// The whole space.
    pub fn full(dim: usize) -> Self {
        Self::new(dim, vec![], vec![])
    }

    /// Canonical representation of the empty set.
    pub fn empty(dim: usize) -> Self {
        Self::new(
            dim,
            vec![LinearConstraint::new(crate::rational::zeros(dim), crate::rational::rat_int(1))],
            vec![],
        )
    }

    pub fn is_canonical_empty(&self) -> bool {
        self == &Self::empty(self.dim)
    }

    pub fn is_empty(&self) -> bool {
        if !self.zero_normals_consistent() {
            return true;
        }
        let (ineqs, eqs) = self.all_ineqs_scrubbed();
        !lp::is_feasible(&ineqs, &eqs)
    }

    fn zero_normals_consistent(&self) -> bool {
        self.inequalities
            .iter()
            .all(|c| !c.normal.iter().all(Zero::is_zero) || !c.offset.is_positive())
            && self
                .equalities
                .iter()
                .all(|c| !c.normal.iter().all(Zero::is_zero) || c.offset.is_zero())
    }

    fn all_ineqs_scrubbed(&self) -> (Vec<LinearConstraint>, Vec<LinearConstraint>) {
        let ineqs = self
            .inequalities
            .iter()
            .filter(|c| !c.normal.iter().all(Zero::is_zero))
            .cloned()
            .collect();
        let eqs = self
            .equalities
            .iter()
            .filter(|c| !c.normal.iter().all(Zero::is_zero))
            .cloned()
            .collect();
        (ineqs, eqs)
    }

    /// Intersection, without canonicalization.
    pub fn intersect(&self, other: &HPolyhedron) -> Result<HPolyhedron, Error> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let mut ineqs = self.inequalities.clone();
        ineqs.extend(other.inequalities.clone());
        let mut eqs = self.equalities.clone();
        eqs.extend(other.equalities.clone());
        Ok(HPolyhedron::new(self.dim, ineqs, eqs))
    }

    pub fn with_constraints(
        &self,
        ineqs: Vec<LinearConstraint>,
        eqs: Vec<LinearConstraint>,
    ) -> HPolyhedron {
        let mut out = self.clone();
        out.inequalities.extend(ineqs);
        out.equalities.extend(eqs);
        out
    }

    /// Unique canonical form: implicit equalities promoted, equalities in
    /// reduced echelon form with primitive integer rows, inequalities reduced
    /// modulo the equality space, primitive, irredundant, and sorted by
    /// (normal, offset). Idempotent; equal point sets yield equal structs.
    pub fn canonicalize(&self) -> HPolyhedron {
        self.canonicalize_impl(true)
    }

    /// Redundancy pruning without implicit-equality promotion: cheaper, used
    /// to control growth between elimination steps. Not a canonical form.
    pub(crate) fn prune(&self) -> HPolyhedron {
        self.canonicalize_impl(false)
    }

    fn canonicalize_impl(&self, promote_implicit: bool) -> HPolyhedron {
        let dim = self.dim;
        if !self.zero_normals_consistent() {
            return Self::empty(dim);
        }
        let (mut ineqs, mut eqs) = self.all_ineqs_scrubbed();

        if !lp::is_feasible(&ineqs, &eqs) {
            return Self::empty(dim);
        }

        // Implicit equalities: inequalities whose slack is identically zero.
        if promote_implicit {
            let mut kept = Vec::with_capacity(ineqs.len());
            for c in &ineqs {
                match lp::maximize(&c.normal, &ineqs, &eqs) {
                    LpResult::Optimal { value, .. } if value == c.offset => eqs.push(c.clone()),
                    _ => kept.push(c.clone()),
                }
            }
            ineqs = kept;
        }

        // Equalities: reduced row echelon form over [normal | offset].
        let eq_rows: Vec<Vec<Rat>> = eqs
            .iter()
            .map(|c| {
                let mut row = c.normal.clone();
                row.push(c.offset.clone());
                row
            })
            .collect();
        let (eq_rref, eq_pivots) = linalg::rref(&eq_rows);
        if eq_pivots.contains(&dim) {
            return Self::empty(dim); // 0 = nonzero; unreachable for feasible input
        }
        let eqs: Vec<LinearConstraint> = eq_rref
            .iter()
            .map(|row| {
                LinearConstraint::new(row[..dim].to_vec(), row[dim].clone()).to_primitive()
            })
            .collect();

        // Reduce inequality normals modulo the equality space.
        let mut reduced: Vec<LinearConstraint> = Vec::with_capacity(ineqs.len());
        for c in &ineqs {
            let mut normal = c.normal.clone();
            let mut offset = c.offset.clone();
            for (row, &p) in eq_rref.iter().zip(&eq_pivots) {
                if !normal[p].is_zero() {
                    let factor = &normal[p] / &row[p];
                    for (n, r) in normal.iter_mut().zip(row.iter()) {
                        *n -= &factor * r;
                    }
                    offset -= &factor * &row[dim];
                }
            }
            if normal.iter().all(Zero::is_zero) {
                continue; // feasibility guarantees offset <= 0
            }
            reduced.push(LinearConstraint::new(normal, offset).to_primitive());
        }

        // Same normal: keep the strongest offset.
        reduced.sort_by(|a, b| lex_cmp(&a.normal, &b.normal).then(a.offset.cmp(&b.offset)));
        reduced.dedup_by(|next, prev| {
            if next.normal == prev.normal {
                // sorted ascending by offset; the later (stronger) one wins
                prev.offset = next.offset.clone();
                true
            } else {
                false
            }
        });

        // Redundancy: drop any inequality implied by the rest.
        let mut keep = vec![true; reduced.len()];
        for i in 0..reduced.len() {
            let others: Vec<LinearConstraint> = reduced
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i && keep[*j])
                .map(|(_, c)| c.clone())
                .collect();
            match lp::minimize(&reduced[i].normal, &others, &eqs) {
                LpResult::Optimal { value, .. } if value >= reduced[i].offset => keep[i] = false,
                _ => {}
            }
        }
        let inequalities: Vec<LinearConstraint> = reduced
            .into_iter()
            .zip(keep)
            .filter_map(|(c, k)| k.then_some(c))
            .collect();

        HPolyhedron::new(dim, inequalities, eqs)
    }

    /// Exact membership for a rational point (tolerance zero).
    pub fn contains_rational(&self, x: &[Rat]) -> Result<Membership, Error> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        let mut inside = true;
        let mut worst = Rat::zero();
        let mut active = 0;
        for c in &self.inequalities {
            let slack = c.slack(x);
            if slack.is_zero() {
                active += 1;
            }
            if slack.is_negative() {
                inside = false;
                if -&slack > worst {
                    worst = -slack;
                }
            }
        }
        for c in &self.equalities {
            let resid = c.slack(x);
            if resid.is_zero() {
                active += 1;
            } else {
                inside = false;
                let abs = resid.abs();
                if abs > worst {
                    worst = abs;
                }
            }
        }
        Ok(Membership { inside, worst_violation: rat_to_f64(&worst), active })
    }

    /// Membership for a floating-point vector at the given tolerance.
    pub fn contains_float(&self, x: &[f64], tol: f64) -> Result<Membership, Error> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        Ok(FloatHRep::new(self).membership(x, tol))
    }

    /// A human-oriented rendering, one constraint per line.
    pub fn describe(&self) -> String {
        let mut out = String::new();
        for c in &self.equalities {
            out.push_str(&format!("{} = {}\n", fmt_normal(&c.normal), format_rat(&c.offset)));
        }
        for c in &self.inequalities {
            out.push_str(&format!("{} >= {}\n", fmt_normal(&c.normal), format_rat(&c.offset)));
        }
        out
    }
}

fn fmt_normal(normal: &[Rat]) -> String {
    let terms: Vec<String> = normal
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| format!("{}*x{}", format_rat(c), i + 1))
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// Float shadow of an H-representation, for hot membership loops.
pub struct FloatHRep {
    pub ineqs: Vec<(Vec<f64>, f64)>,
    pub eqs: Vec<(Vec<f64>, f64)>,
}

impl FloatHRep {
    pub fn new(p: &HPolyhedron) -> Self {
        let conv = |c: &LinearConstraint| {
            let c = c.to_primitive();
            (c.normal.iter().map(rat_to_f64).collect::<Vec<f64>>(), rat_to_f64(&c.offset))
        };
        Self {
            ineqs: p.inequalities.iter().map(conv).collect(),
            eqs: p.equalities.iter().map(conv).collect(),
        }
    }

    pub fn membership(&self, x: &[f64], tol: f64) -> Membership {
        let mut worst = 0.0f64;
        let mut active = 0;
        let dotf = |n: &[f64]| n.iter().zip(x).map(|(a, b)| a * b).sum::<f64>();
        for (n, c) in &self.ineqs {
            let slack = dotf(n) - c;
            if slack.abs() <= tol {
                active += 1;
            }
            if slack < 0.0 {
                worst = worst.max(-slack);
            }
        }
        for (n, c) in &self.eqs {
            let resid = (dotf(n) - c).abs();
            if resid <= tol {
                active += 1;
            }
            worst = worst.max(resid);
        }
        Membership { inside: worst <= tol, worst_violation: if worst <= tol { 0.0 } else { worst }, active }
    }
}
