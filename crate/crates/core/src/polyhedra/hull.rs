//! V-to-H conversion: small vertex/ray sets go through a lifted
//! Fourier–Motzkin projection; large sampled point clouds go through an
//! incremental hull with brute-force facet enumeration in the affine hull.

use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::linalg;
use crate::rational::{dot, lex_cmp, primitive, rat_to_f64, vec_sub, zeros, Rat};

use super::{HPolyhedron, LinearConstraint, VPolyhedron};

impl VPolyhedron {
    /// Exact H-representation of `conv(vertices) + cone(rays)`.
    ///
    /// Lifts to `x = Σ t_i v_i + Σ s_j r_j` with `Σ t_i = 1`, `t, s >= 0`,
    /// and eliminates the multipliers. Intended for small generator sets.
    pub fn to_hrep(&self) -> Result<HPolyhedron, Error> {
        if self.vertices.is_empty() {
            return Ok(HPolyhedron::empty(self.dim));
        }
        let d = self.dim;
        let nv = self.vertices.len();
        let nr = self.rays.len();
        let total = d + nv + nr;

        let mut eqs = Vec::with_capacity(d + 1);
        for coord in 0..d {
            // x_coord - Σ t_i v_i[coord] - Σ s_j r_j[coord] = 0
            let mut normal = zeros(total);
            normal[coord] = crate::rational::rat_int(1);
            for (i, v) in self.vertices.iter().enumerate() {
                normal[d + i] = -v[coord].clone();
            }
            for (j, r) in self.rays.iter().enumerate() {
                normal[d + nv + j] = -r[coord].clone();
            }
            eqs.push(LinearConstraint::new(normal, Rat::zero()));
        }
        let mut normal = zeros(total);
        for i in 0..nv {
            normal[d + i] = crate::rational::rat_int(1);
        }
        eqs.push(LinearConstraint::new(normal, crate::rational::rat_int(1)));

        let mut ineqs = Vec::with_capacity(nv + nr);
        for i in 0..nv + nr {
            let mut normal = zeros(total);
            normal[d + i] = crate::rational::rat_int(1);
            ineqs.push(LinearConstraint::new(normal, Rat::zero()));
        }

        let lifted = HPolyhedron::new(total, ineqs, eqs);
        lifted.fm_eliminate(&(d..total).collect::<Vec<_>>())
    }
}

/// Exact H-representation of the convex hull of a (possibly large) set of
/// rational points. Interior points are filtered with a float prescreen
/// before any exact arithmetic runs.
pub fn rational_hull(points: &[Vec<Rat>]) -> Result<HPolyhedron, Error> {
    let Some(first) = points.first() else {
        return Err(Error::InvalidParameter("hull of an empty point set".into()));
    };
    let d = first.len();
    if points.iter().any(|p| p.len() != d) {
        return Err(Error::DimensionMismatch { expected: d, got: 0 });
    }

    // Affine hull: grow a basis of difference vectors.
    let base = first.clone();
    let mut basis: Vec<Vec<Rat>> = Vec::new();
    for p in points {
        let diff = vec_sub(p, &base);
        if diff.iter().all(Zero::is_zero) {
            continue;
        }
        let mut trial = basis.clone();
        trial.push(diff);
        if linalg::rank(&trial) > basis.len() {
            basis = trial;
        }
    }
    let k = basis.len();

    // Equalities pinning the affine hull.
    let eq_normals = if k == 0 { identity(d) } else { linalg::nullspace(&basis) };
    let affine_eqs: Vec<LinearConstraint> = eq_normals
        .iter()
        .map(|n| LinearConstraint::new(n.clone(), dot(n, &base)).to_primitive())
        .collect();
    if k == 0 {
        return Ok(HPolyhedron::new(d, vec![], affine_eqs).canonicalize());
    }

    // Reduced coordinates: ξ solves (pivot rows of) Σ ξ_i basis_i = p - base.
    let basis_rows: Vec<Vec<Rat>> = basis.clone();
    let (_, pivot_cols) = linalg::rref(&basis_rows);
    let square: Vec<Vec<Rat>> = pivot_cols
        .iter()
        .map(|&c| basis.iter().map(|b| b[c].clone()).collect())
        .collect();
    let reduce = |p: &[Rat]| -> Vec<Rat> {
        let rhs: Vec<Rat> = pivot_cols.iter().map(|&c| &p[c] - &base[c]).collect();
        linalg::solve_unique(&square, &rhs).expect("point lies in the affine hull")
    };
    let reduced: Vec<Vec<Rat>> = points.iter().map(|p| reduce(p)).collect();

    let facets = incremental_hull_facets(&reduced, k);

    // Map facets back: n̂·ξ >= ĉ with ξ = A⁻¹ (x_S - base_S) becomes
    // w·x_S >= ĉ + w·base_S where Aᵀ w = n̂.
    let square_t: Vec<Vec<Rat>> = (0..k)
        .map(|i| (0..k).map(|j| square[j][i].clone()).collect())
        .collect();
    let mut ineqs = Vec::with_capacity(facets.len());
    for (n_hat, c_hat) in facets {
        let w = linalg::solve_unique(&square_t, &n_hat).expect("pivot matrix is invertible");
        let mut normal = zeros(d);
        for (wi, &col) in w.iter().zip(&pivot_cols) {
            normal[col] = wi.clone();
        }
        let offset = &c_hat + dot(&normal, &base);
        ineqs.push(LinearConstraint::new(normal, offset).to_primitive());
    }
    Ok(HPolyhedron::new(d, ineqs, affine_eqs).canonicalize())
}

fn identity(n: usize) -> Vec<Vec<Rat>> {
    (0..n)
        .map(|i| {
            let mut v = zeros(n);
            v[i] = crate::rational::rat_int(1);
            v
        })
        .collect()
}

/// Incremental hull in full-dimensional `R^k`: facets of the current vertex
/// set are recomputed whenever a point lands strictly outside.
fn incremental_hull_facets(points: &[Vec<Rat>], k: usize) -> Vec<(Vec<Rat>, Rat)> {
    // Seed with k+1 affinely independent points.
    let mut verts: Vec<Vec<Rat>> = vec![points[0].clone()];
    let mut dirs: Vec<Vec<Rat>> = Vec::new();
    for p in points.iter().skip(1) {
        if verts.len() == k + 1 {
            break;
        }
        let diff = vec_sub(p, &verts[0]);
        let mut trial = dirs.clone();
        trial.push(diff);
        if linalg::rank(&trial) > dirs.len() {
            dirs = trial;
            verts.push(p.clone());
        }
    }
    debug_assert_eq!(verts.len(), k + 1, "points must span R^k");

    let mut facets = facets_of(&verts, k);
    let mut float_facets = to_float(&facets);

    for p in points {
        let pf: Vec<f64> = p.iter().map(rat_to_f64).collect();
        // Conservative float prescreen: clearly-interior points skip the
        // exact test. Margins absorb conversion noise.
        let clearly_inside = float_facets.iter().all(|(n, c, scale)| {
            let v: f64 = n.iter().zip(&pf).map(|(a, b)| a * b).sum();
            v - c > 1e-9 * scale.max(1.0)
        });
        if clearly_inside {
            continue;
        }
        let exactly_inside = facets
            .iter()
            .all(|(n, c)| !(dot(n, p) - c).is_negative());
        if exactly_inside {
            continue;
        }
        verts.push(p.clone());
        facets = facets_of(&verts, k);
        float_facets = to_float(&facets);
        // Every vertex of a k-polytope lies on at least k facets, so this
        // prune only removes points that cannot be extreme.
        verts.retain(|v| {
            facets
                .iter()
                .filter(|(n, c)| (dot(n, v) - c).is_zero())
                .count()
                >= k
        });
    }
    facets
}

fn to_float(facets: &[(Vec<Rat>, Rat)]) -> Vec<(Vec<f64>, f64, f64)> {
    facets
        .iter()
        .map(|(n, c)| {
            let nf: Vec<f64> = n.iter().map(rat_to_f64).collect();
            let cf = rat_to_f64(c);
            let scale = nf.iter().fold(cf.abs(), |a, b| a.max(b.abs()));
            (nf, cf, scale)
        })
        .collect()
}

/// Brute-force facet enumeration for a full-dimensional point set in `R^k`:
/// every k-subset spanning a hyperplane with all points on one side.
fn facets_of(points: &[Vec<Rat>], k: usize) -> Vec<(Vec<Rat>, Rat)> {
    use itertools::Itertools;
    let mut facets: Vec<(Vec<Rat>, Rat)> = Vec::new();
    for subset in (0..points.len()).combinations(k) {
        let q0 = &points[subset[0]];
        let dirs: Vec<Vec<Rat>> = subset[1..]
            .iter()
            .map(|&i| vec_sub(&points[i], q0))
            .collect();
        let ns = if dirs.is_empty() { identity(k) } else { linalg::nullspace(&dirs) };
        if ns.len() != 1 {
            continue;
        }
        let n = primitive(&ns[0]);
        let c = dot(&n, q0);
        let mut any_above = false;
        let mut any_below = false;
        for p in points {
            let s = dot(&n, p) - &c;
            if s.is_positive() {
                any_above = true;
            } else if s.is_negative() {
                any_below = true;
            }
            if any_above && any_below {
                break;
            }
        }
        match (any_above, any_below) {
            (true, true) => {}
            (false, true) | (false, false) => {
                let neg: Vec<Rat> = n.iter().map(|x| -x.clone()).collect();
                let nc = -c.clone();
                facets.push((neg, nc));
                if !any_below && !any_above {
                    facets.push((n, c));
                }
            }
            (true, false) => facets.push((n, c)),
        }
    }
    facets.sort_by(|a, b| lex_cmp(&a.0, &b.0).then(a.1.cmp(&b.1)));
    facets.dedup();
    facets
}
