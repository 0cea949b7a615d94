//! Dense complex eigenvalues via Householder Hessenberg reduction followed
//! by an explicitly shifted QR iteration with Wilkinson shifts and
//! exceptional-shift restarts. Eigenvalue-only (no vectors), desk scale.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::Error;

const MAX_ITERS_PER_EIGENVALUE: usize = 120;
const EXCEPTIONAL_EVERY: usize = 12;

/// All eigenvalues of a square complex matrix.
pub fn complex_eigenvalues(m: &DMatrix<Complex64>) -> Result<Vec<Complex64>, Error> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(Error::InvalidParameter("eigenvalues of a non-square matrix".into()));
    }
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Numerical("non-finite matrix entry".into()));
    }
    match n {
        0 => return Ok(vec![]),
        1 => return Ok(vec![m[(0, 0)]]),
        _ => {}
    }

    let mut h = hessenberg(m);
    let mut eigs: Vec<Complex64> = Vec::with_capacity(n);
    let mut end = n; // active block is rows/cols 0..end
    let mut iters = 0usize;
    let mut budget = MAX_ITERS_PER_EIGENVALUE * n;

    while end > 0 {
        if end == 1 {
            eigs.push(h[(0, 0)]);
            break;
        }
        // Deflate negligible subdiagonals, then find the unreduced block
        // [start..end).
        let mut start = end - 1;
        while start > 0 {
            let scale = h[(start - 1, start - 1)].norm() + h[(start, start)].norm();
            let scale = if scale == 0.0 { h.norm().max(1.0) } else { scale };
            if h[(start, start - 1)].norm() <= f64::EPSILON * scale {
                h[(start, start - 1)] = Complex64::ZERO;
                break;
            }
            start -= 1;
        }
        if start == end - 1 && (end - 1 == 0 || h[(end - 1, end - 2)] == Complex64::ZERO) {
            // 1x1 block isolated at the bottom.
            eigs.push(h[(end - 1, end - 1)]);
            end -= 1;
            iters = 0;
            continue;
        }

        // Shift: Wilkinson from the trailing 2x2, with occasional
        // exceptional restarts to break symmetry cycles.
        let shift = if iters > 0 && iters % EXCEPTIONAL_EVERY == 0 {
            let mag = h[(end - 1, end - 2)].norm() + h[(end - 1, end - 1)].norm();
            Complex64::new(1.5 * mag, 0.5 * mag)
        } else {
            wilkinson_shift(
                h[(end - 2, end - 2)],
                h[(end - 2, end - 1)],
                h[(end - 1, end - 2)],
                h[(end - 1, end - 1)],
            )
        };
        qr_step(&mut h, start, end, shift);
        iters += 1;
        budget = budget.saturating_sub(1);
        if budget == 0 {
            return Err(Error::Numerical("QR iteration did not converge".into()));
        }
    }
    Ok(eigs)
}

/// Unitary similarity to upper Hessenberg form by Householder reflectors.
fn hessenberg(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = m.nrows();
    let mut h = m.clone();
    for k in 0..n.saturating_sub(2) {
        // Reflector annihilating h[k+2.., k].
        let col: Vec<Complex64> = (k + 1..n).map(|r| h[(r, k)]).collect();
        let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let phase = if col[0].norm() > 0.0 { col[0] / col[0].norm() } else { Complex64::ONE };
        let mut w = col.clone();
        w[0] += phase * norm;
        let wnorm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if wnorm == 0.0 {
            continue;
        }
        let v: Vec<Complex64> = w.iter().map(|z| z / wnorm).collect();

        // H <- P H with P = I - 2 v v^H acting on rows k+1..n.
        for c in 0..n {
            let dot: Complex64 = (0..v.len()).map(|i| v[i].conj() * h[(k + 1 + i, c)]).sum();
            for i in 0..v.len() {
                let delta = 2.0 * v[i] * dot;
                h[(k + 1 + i, c)] -= delta;
            }
        }
        // H <- H P on columns k+1..n.
        for r in 0..n {
            let dot: Complex64 = (0..v.len()).map(|i| h[(r, k + 1 + i)] * v[i]).sum();
            for i in 0..v.len() {
                let delta = 2.0 * dot * v[i].conj();
                h[(r, k + 1 + i)] -= delta;
            }
        }
        // Clean the annihilated entries.
        for r in k + 2..n {
            h[(r, k)] = Complex64::ZERO;
        }
    }
    h
}

/// Eigenvalue of the trailing 2x2 closest to `d`.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let tr = a + d;
    let det = a * d - b * c;
    let disc = (tr * tr - 4.0 * det).sqrt();
    let l1 = (tr + disc) / 2.0;
    let l2 = (tr - disc) / 2.0;
    if (l1 - d).norm() < (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Complex Givens rotation \[c s; -s̄ c\] with real c zeroing `b` in (a, b).
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    if b == Complex64::ZERO {
        return (1.0, Complex64::ZERO);
    }
    if a == Complex64::ZERO {
        return (0.0, b.conj() / b.norm());
    }
    let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let alpha = a / a.norm();
    (a.norm() / norm, alpha * b.conj() / norm)
}

/// One explicit single-shift QR sweep on the Hessenberg block [lo..hi).
fn qr_step(h: &mut DMatrix<Complex64>, lo: usize, hi: usize, shift: Complex64) {
    let m = hi - lo;
    if m < 2 {
        return;
    }
    for i in lo..hi {
        h[(i, i)] -= shift;
    }
    // Factor: chase the subdiagonal with Givens rotations (H -> R).
    let mut rotations: Vec<(f64, Complex64)> = Vec::with_capacity(m - 1);
    for k in lo..hi - 1 {
        let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
        for col in k..hi {
            let x = h[(k, col)];
            let y = h[(k + 1, col)];
            h[(k, col)] = c * x + s * y;
            h[(k + 1, col)] = -s.conj() * x + c * y;
        }
        h[(k + 1, k)] = Complex64::ZERO;
        rotations.push((c, s));
    }
    // Multiply back: R Q^H... R times the adjoints in order (columns).
    for (k, (c, s)) in rotations.iter().enumerate() {
        let k = lo + k;
        let top = (k + 2).min(hi);
        for row in lo..top {
            let x = h[(row, k)];
            let y = h[(row, k + 1)];
            h[(row, k)] = c * x + s.conj() * y;
            h[(row, k + 1)] = -s * x + c * y;
        }
    }
    for i in lo..hi {
        h[(i, i)] += shift;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;

    fn random_complex(n: usize, seed: u64) -> DMatrix<Complex64> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        DMatrix::from_fn(n, n, |_, _| {
            Complex64::new(rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0)
        })
    }

    fn assert_trace_det_consistent(m: &DMatrix<Complex64>, tol: f64) {
        let eig = complex_eigenvalues(m).unwrap();
        assert_eq!(eig.len(), m.nrows());
        let trace: Complex64 = m.diagonal().iter().sum();
        let sum: Complex64 = eig.iter().sum();
        let scale = m.norm().max(1.0);
        assert!((trace - sum).norm() <= tol * scale, "trace {trace} vs {sum}");
        let det = m.clone().determinant();
        let prod: Complex64 = eig.iter().product();
        assert!(
            (det - prod).norm() <= tol * det.norm().max(scale),
            "det {det} vs {prod}"
        );
    }

    #[test]
    fn rotation_matrix_has_imaginary_eigenvalues() {
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::ZERO,
                Complex64::new(-1.0, 0.0),
                Complex64::ONE,
                Complex64::ZERO,
            ],
        );
        let mut ims: Vec<f64> = complex_eigenvalues(&m).unwrap().iter().map(|z| z.im).collect();
        ims.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((ims[0] + 1.0).abs() < 1e-12);
        assert!((ims[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn triangular_matrix_returns_diagonal() {
        let mut m = random_complex(5, 3);
        for r in 1..5 {
            for c in 0..r {
                m[(r, c)] = Complex64::ZERO;
            }
        }
        let mut eig: Vec<Complex64> = complex_eigenvalues(&m).unwrap();
        let mut diag: Vec<Complex64> = m.diagonal().iter().copied().collect();
        let key = |z: &Complex64| (z.re, z.im);
        eig.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
        diag.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
        for (e, d) in eig.iter().zip(&diag) {
            assert!((e - d).norm() < 1e-10);
        }
    }

    #[test]
    fn random_matrices_trace_and_det() {
        for n in 2..=7usize {
            for seed in 0..6u64 {
                let m = random_complex(n, seed * 31 + n as u64);
                assert_trace_det_consistent(&m, 1e-9);
            }
        }
    }

    #[test]
    fn large_entry_boosted_case_stays_finite() {
        // Regression: a boosted su(2,1) orbit-sum matrix (norm ~2.4e3) made
        // the realified nalgebra path emit NaN; the direct complex solver
        // must handle it.
        let form = crate::rootsys::RealFormData::su(2, 1).unwrap();
        let a = crate::rootsys::Spectrum::from_i64(&[4, 1, -5]);
        let b = crate::rootsys::Spectrum::from_i64(&[2, 1, -3]);
        let g = crate::oracle::sample_group_element(2, 1, crate::oracle::derive_seed(7, 4366), 4.0);
        let h = crate::oracle::sample_group_element(2, 1, crate::oracle::derive_seed(7, 4367), 4.0);
        let ma = crate::oracle::realize_orbit_point(&form, &a, &g).unwrap();
        let mb = crate::oracle::realize_orbit_point(&form, &b, &h).unwrap();
        let sum = &ma.entries + &mb.entries;
        let eig = complex_eigenvalues(&sum).unwrap();
        assert!(eig.iter().all(|z| z.re.is_finite() && z.im.is_finite()));
        assert_trace_det_consistent(&sum, 1e-8);
        // Spectrum of a sum of admissible elements is real.
        let radius = eig.iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(eig.iter().all(|z| z.im.abs() < 1e-6 * radius));
    }

    #[test]
    fn repeated_eigenvalues_converge() {
        // Jordan-ish block: eigenvalue 2 with multiplicity 3.
        let mut m = DMatrix::from_element(3, 3, Complex64::ZERO);
        for i in 0..3 {
            m[(i, i)] = Complex64::new(2.0, 0.0);
            if i + 1 < 3 {
                m[(i, i + 1)] = Complex64::ONE;
            }
        }
        let eig = complex_eigenvalues(&m).unwrap();
        for z in eig {
            assert!((z - Complex64::new(2.0, 0.0)).norm() < 1e-5);
        }
    }
}
