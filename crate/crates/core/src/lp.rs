//! Exact rational linear programming via a dense two-phase simplex with
//! Bland's rule. Used for feasibility certificates, redundancy tests and
//! coordinate bounds; desk-scale only.

use num_traits::{One, Signed, Zero};

use crate::polyhedra::LinearConstraint;
use crate::rational::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpResult {
    Infeasible,
    Unbounded,
    Optimal { value: Rat, point: Vec<Rat> },
}

impl LpResult {
    pub fn value(&self) -> Option<&Rat> {
        match self {
            LpResult::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

/// Minimizes `objective · x` over `{x : n·x >= c for ineqs, n·x = c for eqs}`
/// with `x` free.
pub fn minimize(objective: &[Rat], ineqs: &[LinearConstraint], eqs: &[LinearConstraint]) -> LpResult {
    let dim = objective.len();

    // Degenerate systems with no variables reduce to sign checks.
    if dim == 0 {
        let ok = ineqs.iter().all(|c| !c.offset.is_positive())
            && eqs.iter().all(|c| c.offset.is_zero());
        return if ok {
            LpResult::Optimal { value: Rat::zero(), point: vec![] }
        } else {
            LpResult::Infeasible
        };
    }

    // Standard form: x = u - w with u, w >= 0; one slack per inequality.
    let m = ineqs.len() + eqs.len();
    let n_struct = 2 * dim + ineqs.len();
    let ncols = n_struct + m; // plus one artificial per row
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m + 1);
    let mut basis: Vec<usize> = Vec::with_capacity(m);

    for (i, con) in ineqs.iter().chain(eqs.iter()).enumerate() {
        let is_ineq = i < ineqs.len();
        let mut row = vec![Rat::zero(); ncols + 1];
        for (j, coeff) in con.normal.iter().enumerate() {
            row[j] = coeff.clone();
            row[dim + j] = -coeff.clone();
        }
        if is_ineq {
            // n·x - s = c, s >= 0
            row[2 * dim + i] = -Rat::one();
        }
        row[ncols] = con.offset.clone();
        if row[ncols].is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
        }
        row[n_struct + i] = Rat::one();
        basis.push(n_struct + i);
        rows.push(row);
    }

    // Phase 1: minimize the sum of artificials (reduced costs priced out).
    let mut obj = vec![Rat::zero(); ncols + 1];
    for row in &rows {
        for (o, x) in obj.iter_mut().zip(row.iter()) {
            *o -= x;
        }
    }
    for j in n_struct..ncols {
        obj[j] = Rat::zero();
    }
    let artificial_start = n_struct;
    if !simplex(&mut rows, &mut basis, &mut obj, ncols) {
        // Phase 1 objective is bounded below by 0, so this cannot happen.
        unreachable!("phase 1 cannot be unbounded");
    }
    if !obj[ncols].is_zero() {
        return LpResult::Infeasible;
    }

    // Drive leftover artificials out of the basis.
    let mut drop_rows = Vec::new();
    for r in 0..rows.len() {
        if basis[r] >= artificial_start {
            match (0..artificial_start).find(|&j| !rows[r][j].is_zero()) {
                Some(j) => pivot(&mut rows, &mut basis, &mut obj, r, j, ncols),
                None => drop_rows.push(r),
            }
        }
    }
    for &r in drop_rows.iter().rev() {
        rows.remove(r);
        basis.remove(r);
    }

    // Remove the artificial columns entirely; a mutating cost guard is not
    // enough to keep them from re-entering in phase 2.
    for row in rows.iter_mut() {
        let rhs = row[ncols].clone();
        row.truncate(n_struct);
        row.push(rhs);
    }
    let ncols = n_struct;
    debug_assert!(basis.iter().all(|&b| b < ncols));

    // Phase 2: the real objective on u - w.
    let mut obj2 = vec![Rat::zero(); ncols + 1];
    for (j, c) in objective.iter().enumerate() {
        obj2[j] = c.clone();
        obj2[dim + j] = -c.clone();
    }
    for (r, &b) in basis.iter().enumerate() {
        if !obj2[b].is_zero() {
            let factor = obj2[b].clone();
            for (o, x) in obj2.iter_mut().zip(rows[r].iter()) {
                *o -= &factor * x;
            }
        }
    }
    if !simplex(&mut rows, &mut basis, &mut obj2, ncols) {
        return LpResult::Unbounded;
    }

    let mut values = vec![Rat::zero(); ncols];
    for (r, &b) in basis.iter().enumerate() {
        values[b] = rows[r][ncols].clone();
    }
    let point: Vec<Rat> = (0..dim).map(|j| &values[j] - &values[dim + j]).collect();
    LpResult::Optimal { value: -obj2[ncols].clone(), point }
}

pub fn maximize(objective: &[Rat], ineqs: &[LinearConstraint], eqs: &[LinearConstraint]) -> LpResult {
    let neg: Vec<Rat> = objective.iter().map(|c| -c.clone()).collect();
    match minimize(&neg, ineqs, eqs) {
        LpResult::Optimal { value, point } => LpResult::Optimal { value: -value, point },
        other => other,
    }
}

pub fn is_feasible(ineqs: &[LinearConstraint], eqs: &[LinearConstraint]) -> bool {
    let dim = ineqs
        .iter()
        .chain(eqs.iter())
        .map(|c| c.normal.len())
        .next()
        .unwrap_or(0);
    !matches!(minimize(&vec![Rat::zero(); dim], ineqs, eqs), LpResult::Infeasible)
}

/// One run of the simplex on the current objective row. Minimization with
/// Bland's rule; returns false on unboundedness.
fn simplex(rows: &mut Vec<Vec<Rat>>, basis: &mut [usize], obj: &mut Vec<Rat>, ncols: usize) -> bool {
    loop {
        let Some(entering) = (0..ncols).find(|&j| obj[j].is_negative()) else {
            return true;
        };
        let mut leaving: Option<(usize, Rat)> = None;
        for (r, row) in rows.iter().enumerate() {
            if row[entering].is_positive() {
                let ratio = &row[ncols] / &row[entering];
                let better = match &leaving {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < *lratio || (ratio == *lratio && basis[r] < basis[*lr])
                    }
                };
                if better {
                    leaving = Some((r, ratio));
                }
            }
        }
        let Some((r, _)) = leaving else {
            return false;
        };
        pivot(rows, basis, obj, r, entering, ncols);
    }
}

fn pivot(
    rows: &mut [Vec<Rat>],
    basis: &mut [usize],
    obj: &mut [Rat],
    r: usize,
    c: usize,
    ncols: usize,
) {
    let inv = rows[r][c].recip();
    for x in rows[r].iter_mut() {
        *x *= &inv;
    }
    for rr in 0..rows.len() {
        if rr != r && !rows[rr][c].is_zero() {
            let factor = rows[rr][c].clone();
            for j in 0..=ncols {
                let delta = &factor * &rows[r][j];
                rows[rr][j] -= delta;
            }
        }
    }
    if !obj[c].is_zero() {
        let factor = obj[c].clone();
        for j in 0..=ncols {
            let delta = &factor * &rows[r][j];
            obj[j] -= delta;
        }
    }
    basis[r] = c;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat_int, zeros};

    fn ge(normal: &[i64], offset: i64) -> LinearConstraint {
        LinearConstraint::from_i64(normal, offset)
    }

    #[test]
    fn bounded_minimum() {
        // min x + y over the triangle x >= 0, y >= 0, x + y >= 2
        let ineqs = vec![ge(&[1, 0], 0), ge(&[0, 1], 0), ge(&[1, 1], 2)];
        let r = minimize(&[rat_int(1), rat_int(1)], &ineqs, &[]);
        assert_eq!(r.value(), Some(&rat_int(2)));
    }

    #[test]
    fn unbounded_direction() {
        let ineqs = vec![ge(&[1, 0], 0), ge(&[0, 1], 0)];
        let r = minimize(&[rat_int(-1), rat_int(0)], &ineqs, &[]);
        assert_eq!(r, LpResult::Unbounded);
    }

    #[test]
    fn infeasible_system() {
        let ineqs = vec![ge(&[1], 1), ge(&[-1], 0)];
        assert!(!is_feasible(&ineqs, &[]));
    }

    #[test]
    fn equality_constraint() {
        // min x subject to x + y = 4, x >= 1, y >= 1 -> x = 1
        let eqs = vec![ge(&[1, 1], 4)];
        let ineqs = vec![ge(&[1, 0], 1), ge(&[0, 1], 1)];
        let r = minimize(&[rat_int(1), rat_int(0)], &ineqs, &eqs);
        match r {
            LpResult::Optimal { value, point } => {
                assert_eq!(value, rat_int(1));
                assert_eq!(&point[0] + &point[1], rat_int(4));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn zero_dimension() {
        let r = minimize(&[], &[], &[]);
        assert!(matches!(r, LpResult::Optimal { .. }));
        let bad = vec![LinearConstraint { normal: vec![], offset: rat_int(1) }];
        assert!(!is_feasible(&bad, &[]));
        let _ = zeros(0);
    }

    #[test]
    fn negative_coordinates_reachable() {
        // min y subject to y >= -3 (free variables must go negative)
        let ineqs = vec![ge(&[1], -3)];
        let r = minimize(&[rat_int(1)], &ineqs, &[]);
        assert_eq!(r.value(), Some(&rat_int(-3)));
    }
}
