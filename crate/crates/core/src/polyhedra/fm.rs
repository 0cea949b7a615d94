//! Fourier–Motzkin variable elimination and the Minkowski sum with a cone.
//!
//! Elimination substitutes through equalities where possible and combines
//! opposite-sign inequality pairs otherwise. The system is re-canonicalized
//! after every eliminated variable to keep the row count under control.

use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::rational::{dot, lex_cmp, Rat};

use super::{HPolyhedron, LinearConstraint, VPolyhedron};

impl HPolyhedron {
    /// Exact projection onto the coordinates not in `vars`. Output dimension
    /// shrinks accordingly; surviving coordinates keep their relative order.
    pub fn fm_eliminate(&self, vars: &[usize]) -> Result<HPolyhedron, Error> {
        for &v in vars {
            if v >= self.dim {
                return Err(Error::VariableOutOfRange { index: v, dim: self.dim });
            }
        }
        let mut targets: Vec<usize> = vars.to_vec();
        targets.sort_unstable();
        targets.dedup();

        // Redundancy is pruned after every eliminated variable to control
        // growth; the full canonical form is produced once at the end.
        let mut current = self.prune();
        while let Some(pos) = pick_next(&current, &targets) {
            let var = targets[pos];
            current = if current.is_canonical_empty() {
                drop_column(&HPolyhedron::empty(current.dim), var)
            } else {
                eliminate_one(&current, var).prune()
            };
            targets.remove(pos);
            for t in targets.iter_mut() {
                if *t > var {
                    *t -= 1;
                }
            }
        }
        Ok(current.canonicalize())
    }

    /// Exact H-representation of `P + C` for a cone `C` given by rays:
    /// lift to `(x, t)` with `x - Σ t_k r_k ∈ P`, `t >= 0`, then project out
    /// the `t` block.
    pub fn minkowski_sum_with_cone(&self, cone: &VPolyhedron) -> Result<HPolyhedron, Error> {
        if cone.dim != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: cone.dim });
        }
        if !cone.is_cone() {
            return Err(Error::NotACone);
        }
        let rays = &cone.rays;
        if rays.is_empty() {
            return Ok(self.canonicalize());
        }
        let d = self.dim;
        let r = rays.len();
        let lift = |c: &LinearConstraint| {
            let mut normal = c.normal.clone();
            for ray in rays {
                normal.push(-dot(&c.normal, ray));
            }
            LinearConstraint::new(normal, c.offset.clone())
        };
        let mut ineqs: Vec<LinearConstraint> = self.inequalities.iter().map(lift).collect();
        for k in 0..r {
            let mut normal = crate::rational::zeros(d + r);
            normal[d + k] = crate::rational::rat_int(1);
            ineqs.push(LinearConstraint::new(normal, Rat::zero()));
        }
        let eqs: Vec<LinearConstraint> = self.equalities.iter().map(lift).collect();
        let lifted = HPolyhedron::new(d + r, ineqs, eqs);
        lifted.fm_eliminate(&(d..d + r).collect::<Vec<_>>())
    }
}

/// Chooses the next variable to eliminate: equality substitutions first,
/// then the smallest pos*neg inequality fan-out.
fn pick_next(p: &HPolyhedron, targets: &[usize]) -> Option<usize> {
    if targets.is_empty() {
        return None;
    }
    let mut best: Option<(usize, u64)> = None;
    for (pos, &var) in targets.iter().enumerate() {
        let cost = if p.equalities.iter().any(|e| !e.normal[var].is_zero()) {
            0
        } else {
            let pos_count = p.inequalities.iter().filter(|c| c.normal[var].is_positive()).count();
            let neg_count = p.inequalities.iter().filter(|c| c.normal[var].is_negative()).count();
            1 + (pos_count as u64) * (neg_count as u64)
        };
        if best.map_or(true, |(_, b)| cost < b) {
            best = Some((pos, cost));
        }
    }
    best.map(|(pos, _)| pos)
}

fn eliminate_one(p: &HPolyhedron, var: usize) -> HPolyhedron {
    // Substitution through an equality, when one mentions the variable.
    if let Some(idx) = p.equalities.iter().position(|e| !e.normal[var].is_zero()) {
        let pivot = p.equalities[idx].clone();
        let substitute = |c: &LinearConstraint| {
            if c.normal[var].is_zero() {
                return c.clone();
            }
            let factor = &c.normal[var] / &pivot.normal[var];
            let normal = c
                .normal
                .iter()
                .zip(&pivot.normal)
                .map(|(a, b)| a - &factor * b)
                .collect();
            LinearConstraint::new(normal, &c.offset - &factor * &pivot.offset)
        };
        let ineqs = p.inequalities.iter().map(substitute).collect();
        let eqs = p
            .equalities
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != idx)
            .map(|(_, e)| substitute(e))
            .collect();
        return drop_column(&HPolyhedron::new(p.dim, ineqs, eqs), var);
    }

    // Classic combination of opposite-sign pairs.
    let mut lower = Vec::new(); // coefficient > 0: gives lower bounds on var
    let mut upper = Vec::new(); // coefficient < 0
    let mut keep = Vec::new();
    for c in &p.inequalities {
        if c.normal[var].is_positive() {
            lower.push(c.clone());
        } else if c.normal[var].is_negative() {
            upper.push(c.clone());
        } else {
            keep.push(c.clone());
        }
    }
    for lo in &lower {
        for up in &upper {
            let a = lo.normal[var].clone(); // > 0
            let b = -up.normal[var].clone(); // > 0
            let normal: Vec<Rat> = lo
                .normal
                .iter()
                .zip(&up.normal)
                .map(|(l, u)| &b * l + &a * u)
                .collect();
            let offset = &b * &lo.offset + &a * &up.offset;
            debug_assert!(normal[var].is_zero());
            keep.push(LinearConstraint::new(normal, offset).to_primitive());
        }
    }
    // Light dedupe before the full canonicalization pass.
    keep.sort_by(|x, y| lex_cmp(&x.normal, &y.normal).then(x.offset.cmp(&y.offset)));
    keep.dedup();
    let eqs = p.equalities.clone();
    drop_column(&HPolyhedron::new(p.dim, keep, eqs), var)
}

fn drop_column(p: &HPolyhedron, var: usize) -> HPolyhedron {
    let strip = |c: &LinearConstraint| {
        let mut normal = c.normal.clone();
        normal.remove(var);
        LinearConstraint::new(normal, c.offset.clone())
    };
    HPolyhedron::new(
        p.dim - 1,
        p.inequalities.iter().map(strip).collect(),
        p.equalities.iter().map(strip).collect(),
    )
}
