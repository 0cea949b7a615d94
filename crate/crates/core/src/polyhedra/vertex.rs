//! Vertex and extreme-ray enumeration, and recession cones.
//!
//! The polyhedron is first reduced modulo its equality space; any lineality
//! is split off as opposite ray pairs. In the resulting pointed system,
//! vertices come from maximal tight subsets and extreme rays from
//! rank-(k-1) tight subsets — brute force, which is fine at desk scale.

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::linalg;
use crate::par_map;
use crate::rational::{dot, lex_cmp, primitive, vec_add, Rat};

use super::{HPolyhedron, VPolyhedron};

/// Hard cap on the reduced dimension for enumeration.
const MAX_EFFECTIVE_DIM: usize = 8;

impl HPolyhedron {
    /// All extreme points and extreme rays. For polyhedra with lineality,
    /// one representative point per minimal face is returned and the
    /// lineality directions appear as opposite ray pairs, so that
    /// `conv(vertices) + cone(rays)` always reconstructs the set.
    pub fn vertices_and_rays(&self) -> Result<VPolyhedron, Error> {
        let can = self.canonicalize();
        if can.is_canonical_empty() {
            return Ok(VPolyhedron::empty(self.dim));
        }

        // Reduce modulo the equality space: x = x0 + N ξ.
        let eq_normals: Vec<Vec<Rat>> = can.equalities.iter().map(|e| e.normal.clone()).collect();
        let eq_offsets: Vec<Rat> = can.equalities.iter().map(|e| e.offset.clone()).collect();
        let x0 = if eq_normals.is_empty() {
            crate::rational::zeros(can.dim)
        } else {
            linalg::solve_any(&eq_normals, &eq_offsets).expect("canonical equalities are consistent")
        };
        let basis = if eq_normals.is_empty() {
            identity_basis(can.dim)
        } else {
            linalg::nullspace(&eq_normals)
        };
        let k = basis.len();
        if k > MAX_EFFECTIVE_DIM {
            return Err(Error::EffectiveDimTooLarge { dim: k, max: MAX_EFFECTIVE_DIM });
        }
        if k == 0 {
            return Ok(VPolyhedron::new(can.dim, vec![x0], vec![]));
        }

        let reduced: Vec<(Vec<Rat>, Rat)> = can
            .inequalities
            .iter()
            .map(|c| {
                let normal: Vec<Rat> = basis.iter().map(|b| dot(&c.normal, b)).collect();
                let offset = &c.offset - dot(&c.normal, &x0);
                (normal, offset)
            })
            .collect();

        // Split off lineality so the remaining system is pointed.
        let ineq_normals: Vec<Vec<Rat>> = reduced.iter().map(|(n, _)| n.clone()).collect();
        let lineality = if ineq_normals.is_empty() {
            identity_basis(k)
        } else {
            linalg::nullspace(&ineq_normals)
        };

        let (red_vertices, mut red_rays) = if lineality.is_empty() {
            enumerate_pointed(&reduced, k)
        } else {
            let mut pinned = HPolyhedron::new(
                k,
                reduced
                    .iter()
                    .map(|(n, o)| super::LinearConstraint::new(n.clone(), o.clone()))
                    .collect(),
                vec![],
            );
            for l in &lineality {
                pinned
                    .equalities
                    .push(super::LinearConstraint::new(l.clone(), Rat::zero()));
            }
            let sub = pinned.vertices_and_rays()?;
            let mut rays = sub.rays;
            for l in &lineality {
                rays.push(primitive(l));
                rays.push(primitive(&l.iter().map(|x| -x.clone()).collect::<Vec<_>>()));
            }
            (sub.vertices, rays)
        };
        red_rays.sort_by(|a, b| lex_cmp(a, b));
        red_rays.dedup();

        // Map back to ambient coordinates.
        let to_ambient = |xi: &[Rat], affine: bool| -> Vec<Rat> {
            let mut out = if affine { x0.clone() } else { crate::rational::zeros(can.dim) };
            for (coef, b) in xi.iter().zip(&basis) {
                for (o, bv) in out.iter_mut().zip(b) {
                    *o += coef * bv;
                }
            }
            out
        };
        let mut vertices: Vec<Vec<Rat>> = red_vertices.iter().map(|v| to_ambient(v, true)).collect();
        let mut rays: Vec<Vec<Rat>> = red_rays.iter().map(|r| primitive(&to_ambient(r, false))).collect();
        vertices.sort_by(|a, b| lex_cmp(a, b));
        vertices.dedup();
        rays.sort_by(|a, b| lex_cmp(a, b));
        rays.dedup();
        Ok(VPolyhedron::new(can.dim, vertices, rays))
    }

    /// The recession cone `{v : normal·v >= 0, eq·v = 0}` in V-form.
    pub fn recession_cone(&self) -> Result<VPolyhedron, Error> {
        if self.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        let cone = HPolyhedron::new(
            self.dim,
            self.inequalities
                .iter()
                .filter(|c| !c.normal.iter().all(Zero::is_zero))
                .map(|c| super::LinearConstraint::new(c.normal.clone(), Rat::zero()))
                .collect(),
            self.equalities
                .iter()
                .filter(|c| !c.normal.iter().all(Zero::is_zero))
                .map(|c| super::LinearConstraint::new(c.normal.clone(), Rat::zero()))
                .collect(),
        );
        cone.vertices_and_rays()
    }
}

fn identity_basis(n: usize) -> Vec<Vec<Rat>> {
    (0..n)
        .map(|i| {
            let mut v = crate::rational::zeros(n);
            v[i] = crate::rational::rat_int(1);
            v
        })
        .collect()
}

/// Enumeration in a pointed system of dimension `k`.
fn enumerate_pointed(ineqs: &[(Vec<Rat>, Rat)], k: usize) -> (Vec<Vec<Rat>>, Vec<Vec<Rat>>) {
    let m = ineqs.len();
    let satisfies_all = |x: &[Rat]| ineqs.iter().all(|(n, o)| !(dot(n, x) - o).is_negative());

    // Vertices: unique solutions of k tight constraints that satisfy the rest.
    let vertex_subsets: Vec<Vec<usize>> = (0..m).combinations(k).collect();
    let vertex_candidates = par_map(vertex_subsets.len(), |i| {
        let subset = &vertex_subsets[i];
        let a: Vec<Vec<Rat>> = subset.iter().map(|&j| ineqs[j].0.clone()).collect();
        let b: Vec<Rat> = subset.iter().map(|&j| ineqs[j].1.clone()).collect();
        linalg::solve_unique(&a, &b).filter(|x| satisfies_all(x))
    });
    let mut vertices: Vec<Vec<Rat>> = vertex_candidates.into_iter().flatten().collect();
    vertices.sort_by(|a, b| lex_cmp(a, b));
    vertices.dedup();

    // Extreme rays: one-dimensional tight sets of the recession system.
    let ray_subsets: Vec<Vec<usize>> = if k == 0 {
        vec![]
    } else {
        (0..m).combinations(k - 1).collect()
    };
    let ray_candidates = par_map(ray_subsets.len(), |i| {
        let subset = &ray_subsets[i];
        let a: Vec<Vec<Rat>> = subset.iter().map(|&j| ineqs[j].0.clone()).collect();
        let ns = if a.is_empty() { identity_basis(k) } else { linalg::nullspace(&a) };
        if ns.len() != 1 {
            return None;
        }
        let v = primitive(&ns[0]);
        let neg: Vec<Rat> = v.iter().map(|x| -x.clone()).collect();
        let recession_ok = |d: &[Rat]| ineqs.iter().all(|(n, _)| !dot(n, d).is_negative());
        if recession_ok(&v) {
            Some(v)
        } else if recession_ok(&neg) {
            Some(neg)
        } else {
            None
        }
    });
    let mut rays: Vec<Vec<Rat>> = ray_candidates.into_iter().flatten().collect();
    rays.sort_by(|a, b| lex_cmp(a, b));
    rays.dedup();

    (vertices, rays)
}

/// Sum of a V-polyhedron's parts evaluated at `t`: convenience for tests.
pub fn vpoly_point(v: &VPolyhedron, vertex_idx: usize, ray_coeffs: &[Rat]) -> Vec<Rat> {
    let mut out = v.vertices[vertex_idx].clone();
    for (c, r) in ray_coeffs.iter().zip(&v.rays) {
        out = vec_add(&out, &crate::rational::vec_scale(r, c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::LinearConstraint;
    use crate::rational::rat_int;

    fn ge(n: &[i64], o: i64) -> LinearConstraint {
        LinearConstraint::from_i64(n, o)
    }

    fn ivec(v: &[i64]) -> Vec<Rat> {
        crate::rational::i64_to_rat_vec(v)
    }

    #[test]
    fn unit_square() {
        let p = HPolyhedron::new(
            2,
            vec![ge(&[1, 0], 0), ge(&[-1, 0], -1), ge(&[0, 1], 0), ge(&[0, -1], -1)],
            vec![],
        );
        let v = p.vertices_and_rays().unwrap();
        assert_eq!(v.vertices.len(), 4);
        assert!(v.rays.is_empty());
        assert!(!v.empty);
    }

    #[test]
    fn half_line() {
        let p = HPolyhedron::new(1, vec![ge(&[1], 0)], vec![]);
        let v = p.vertices_and_rays().unwrap();
        assert_eq!(v.vertices, vec![ivec(&[0])]);
        assert_eq!(v.rays, vec![ivec(&[1])]);
    }

    #[test]
    fn example_one_reduced_shape() {
        // {l1 >= 5, l2 >= 2, l1 + l2 >= 8, l1 >= l2} in the plane.
        let p = HPolyhedron::new(
            2,
            vec![ge(&[1, 0], 5), ge(&[0, 1], 2), ge(&[1, 1], 8), ge(&[1, -1], 0)],
            vec![],
        );
        let v = p.vertices_and_rays().unwrap();
        assert_eq!(v.vertices, vec![ivec(&[5, 3]), ivec(&[5, 5]), ivec(&[6, 2])]);
        assert_eq!(v.rays, vec![ivec(&[1, 0]), ivec(&[1, 1])]);
    }

    #[test]
    fn line_has_representative_point_and_opposite_rays() {
        let p = HPolyhedron::new(2, vec![], vec![ge(&[1, 1], 0)]);
        let v = p.vertices_and_rays().unwrap();
        assert_eq!(v.vertices.len(), 1);
        let mut rays = v.rays.clone();
        rays.sort_by(|a, b| crate::rational::lex_cmp(a, b));
        assert_eq!(rays, vec![ivec(&[-1, 1]), ivec(&[1, -1])]);
    }

    #[test]
    fn empty_polyhedron_is_flagged() {
        let p = HPolyhedron::new(1, vec![ge(&[1], 1), ge(&[-1], 0)], vec![]);
        let v = p.vertices_and_rays().unwrap();
        assert!(v.empty);
        assert!(v.vertices.is_empty());
        assert!(matches!(p.recession_cone(), Err(Error::EmptyPolyhedron)));
    }

    #[test]
    fn recession_cone_of_bounded_polytope_is_origin() {
        let p = HPolyhedron::new(
            2,
            vec![ge(&[1, 0], 0), ge(&[-1, 0], -1), ge(&[0, 1], 0), ge(&[0, -1], -1)],
            vec![],
        );
        let c = p.recession_cone().unwrap();
        assert_eq!(c.vertices, vec![ivec(&[0, 0])]);
        assert!(c.rays.is_empty());
    }

    #[test]
    fn recession_cone_of_example_one() {
        // Full 3D system of Example 1 including the trace equality.
        let p = HPolyhedron::new(
            3,
            vec![
                ge(&[1, 0, 0], 5),
                ge(&[0, 1, 0], 2),
                ge(&[1, 1, 0], 8),
                ge(&[1, -1, 0], 0),
            ],
            vec![ge(&[1, 1, 1], 0)],
        );
        let c = p.recession_cone().unwrap();
        assert_eq!(c.rays, vec![ivec(&[1, 0, -1]), ivec(&[1, 1, -2])]);
        let _ = rat_int(0);
    }

    #[test]
    fn vertex_membership_has_enough_active_constraints() {
        let p = HPolyhedron::new(
            2,
            vec![ge(&[1, 0], 0), ge(&[0, 1], 0), ge(&[-1, -1], -2)],
            vec![],
        );
        let v = p.vertices_and_rays().unwrap();
        for vert in &v.vertices {
            let m = p.contains_rational(vert).unwrap();
            assert!(m.inside);
            assert!(m.active >= 2);
        }
    }
}
