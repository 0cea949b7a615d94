//! Truncated lattice-point enumeration: integer points of `P ∩ {f·x <= b}`,
//! via exact coordinate bounds and a bounding-box scan.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::Error;
use crate::lp::{self, LpResult};
use crate::rational::{format_rat, Rat};

use super::{HPolyhedron, LinearConstraint};

/// Cut-off for the truncated region: `functional · x <= bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Truncation {
    pub functional: Vec<Rat>,
    pub bound: Rat,
}

/// Refuse to scan boxes with more cells than this.
const MAX_BOX_CELLS: u64 = 4_000_000;

impl HPolyhedron {
    /// All integer points of the truncated region, in lexicographic order.
    /// The truncated region must be bounded.
    pub fn lattice_points(&self, truncation: &Truncation) -> Result<Vec<Vec<BigInt>>, Error> {
        if truncation.functional.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: truncation.functional.len(),
            });
        }
        let cut = LinearConstraint::new(
            truncation.functional.iter().map(|x| -x.clone()).collect(),
            -truncation.bound.clone(),
        );
        let mut region = self.clone();
        region.inequalities.push(cut);
        let region = region.canonicalize();
        if region.is_canonical_empty() {
            return Ok(vec![]);
        }

        let rec = region.recession_cone()?;
        if let Some(ray) = rec.rays.first() {
            return Err(Error::UnboundedTruncation {
                direction: ray.iter().map(format_rat).collect(),
            });
        }

        // Exact per-coordinate bounds.
        let mut lo = Vec::with_capacity(self.dim);
        let mut hi = Vec::with_capacity(self.dim);
        for coord in 0..self.dim {
            let mut obj = crate::rational::zeros(self.dim);
            obj[coord] = Rat::one();
            let min = match lp::minimize(&obj, &region.inequalities, &region.equalities) {
                LpResult::Optimal { value, .. } => value,
                _ => unreachable!("bounded nonempty region has coordinate bounds"),
            };
            let max = match lp::maximize(&obj, &region.inequalities, &region.equalities) {
                LpResult::Optimal { value, .. } => value,
                _ => unreachable!("bounded nonempty region has coordinate bounds"),
            };
            lo.push(min.ceil().to_integer());
            hi.push(max.floor().to_integer());
        }

        let mut cells: u64 = 1;
        for (l, h) in lo.iter().zip(&hi) {
            if h < l {
                return Ok(vec![]);
            }
            let width = (h - l + BigInt::one()).to_u64().unwrap_or(u64::MAX);
            cells = cells.saturating_mul(width);
        }
        if cells > MAX_BOX_CELLS {
            return Err(Error::InvalidParameter(format!(
                "truncated region spans {cells} lattice cells; tighten the truncation"
            )));
        }

        let mut out = Vec::new();
        let mut current: Vec<BigInt> = lo.clone();
        'scan: loop {
            let point: Vec<Rat> = current.iter().map(|z| Rat::from_integer(z.clone())).collect();
            if region.contains_rational(&point)?.inside {
                out.push(current.clone());
            }
            // Odometer increment, most significant digit first for lex order.
            for i in (0..self.dim).rev() {
                current[i] += BigInt::one();
                if current[i] <= hi[i] {
                    continue 'scan;
                }
                current[i] = lo[i].clone();
                if i == 0 {
                    break 'scan;
                }
            }
            if self.dim == 0 {
                break;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{i64_to_rat_vec, rat_int};

    fn ge(n: &[i64], o: i64) -> LinearConstraint {
        LinearConstraint::from_i64(n, o)
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn single_integer_point() {
        let p = HPolyhedron::new(1, vec![], vec![ge(&[1], -8)]);
        let t = Truncation { functional: i64_to_rat_vec(&[1]), bound: rat_int(0) };
        assert_eq!(p.lattice_points(&t).unwrap(), vec![big(&[-8])]);
    }

    #[test]
    fn empty_region_gives_empty_list() {
        let p = HPolyhedron::new(1, vec![ge(&[1], 3)], vec![]);
        let t = Truncation { functional: i64_to_rat_vec(&[1]), bound: rat_int(2) };
        assert_eq!(p.lattice_points(&t).unwrap(), Vec::<Vec<BigInt>>::new());
    }

    #[test]
    fn unbounded_truncation_is_rejected() {
        let p = HPolyhedron::new(2, vec![ge(&[1, 0], 0), ge(&[0, 1], 0)], vec![]);
        let t = Truncation { functional: i64_to_rat_vec(&[1, 0]), bound: rat_int(5) };
        assert!(matches!(p.lattice_points(&t), Err(Error::UnboundedTruncation { .. })));
    }

    #[test]
    fn triangle_interior_points_in_lex_order() {
        // x >= 0, y >= 0, truncated by x + y <= 2.
        let p = HPolyhedron::new(2, vec![ge(&[1, 0], 0), ge(&[0, 1], 0)], vec![]);
        let t = Truncation { functional: i64_to_rat_vec(&[1, 1]), bound: rat_int(2) };
        let pts = p.lattice_points(&t).unwrap();
        assert_eq!(
            pts,
            vec![
                big(&[0, 0]),
                big(&[0, 1]),
                big(&[0, 2]),
                big(&[1, 0]),
                big(&[1, 1]),
                big(&[2, 0]),
            ]
        );
    }

    #[test]
    fn fractional_bounds_round_inward() {
        // 1/2 <= x <= 5/2 has integer points {1, 2}.
        let p = HPolyhedron::new(
            1,
            vec![
                LinearConstraint::new(i64_to_rat_vec(&[2]), rat_int(1)),
                LinearConstraint::new(i64_to_rat_vec(&[-2]), rat_int(-5)),
            ],
            vec![],
        );
        let t = Truncation { functional: i64_to_rat_vec(&[1]), bound: rat_int(10) };
        assert_eq!(p.lattice_points(&t).unwrap(), vec![big(&[1]), big(&[2])]);
    }
}
