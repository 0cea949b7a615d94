//! Floating-point Monte Carlo verification: sample pseudo-unitary conjugates
//! of admissible diagonal matrices, add them, extract the spectrum of the sum
//! and test membership in the exact polyhedron.
//!
//! All sampling is deterministic per seed; per-sample sub-seeds are derived
//! from the master seed so parallel and sequential runs agree bit-for-bit.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::par_map;
use crate::polyhedra::FloatHRep;
use crate::rational::rat_to_f64;
use crate::rootsys::{RealFormData, Spectrum};
use crate::sum::OrbitSumResult;

/// Residual tolerance for structural identities (group membership,
/// pseudo-Hermitian invariant).
pub const STRUCTURAL_TOL: f64 = 1e-8;
/// Relative tolerance for the imaginary parts of sum spectra.
pub const IMAG_REL_TOL: f64 = 1e-6;
/// Mixed boost scales swept during containment runs.
pub const SCALE_SWEEP: [f64; 3] = [0.25, 1.0, 4.0];
/// Frobenius-norm cap on sampled algebra elements, keeping `exp` residuals
/// well inside `STRUCTURAL_TOL`.
const MAX_ALGEBRA_NORM: f64 = 6.0;

/// A complex matrix satisfying `A J = J A*` for `J = diag(1_p, -1_q)`.
#[derive(Debug, Clone)]
pub struct PseudoHermitianMatrix {
    pub entries: DMatrix<Complex64>,
    pub signature: (usize, usize),
}

impl PseudoHermitianMatrix {
    /// Max-entry residual of the defining identity `A J - J A*`.
    pub fn residual(&self) -> f64 {
        let j = signature_matrix(self.signature.0, self.signature.1);
        let lhs = &self.entries * &j;
        let rhs = &j * self.entries.adjoint();
        (lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.diagonal().iter().sum()
    }

    /// Real parts of the diagonal: the torus moment coordinates.
    pub fn diagonal_projection(&self) -> Vec<f64> {
        self.entries.diagonal().iter().map(|z| z.re).collect()
    }
}

pub fn signature_matrix(p: usize, q: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(p + q, p + q, |r, c| {
        if r != c {
            Complex64::new(0.0, 0.0)
        } else if r < p {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(-1.0, 0.0)
        }
    })
}

/// SplitMix64 step; decorrelates per-sample sub-seeds.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master
        .wrapping_add(0x9e3779b97f4a7c15u64.wrapping_mul(index.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn complex_gaussian(n: usize, rng: &mut impl Rng, std: f64) -> DMatrix<Complex64> {
    DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re * std, im * std)
    })
}

/// A pseudo-unitary `g = exp(X)` for a Gaussian `X` in the algebra
/// (`X = -J X* J`, trace 0), deterministic per seed. `scale` sets the
/// Frobenius norm of `X`; scale 0 gives the identity.
pub fn sample_group_element(p: usize, q: usize, seed: u64, scale: f64) -> DMatrix<Complex64> {
    let n = p + q;
    if scale == 0.0 {
        return DMatrix::identity(n, n);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = complex_gaussian(n, &mut rng, scale / n as f64);
    let j = signature_matrix(p, q);
    let mut x = (&m - &j * m.adjoint() * &j) * Complex64::new(0.5, 0.0);
    let trace: Complex64 = x.diagonal().iter().sum();
    let shift = trace / n as f64;
    for i in 0..n {
        x[(i, i)] -= shift;
    }
    let fro = x.norm();
    if fro > MAX_ALGEBRA_NORM {
        x *= Complex64::new(MAX_ALGEBRA_NORM / fro, 0.0);
    }
    x.exp()
}

/// Residual of the group identity `g* J g = J`.
pub fn group_residual(g: &DMatrix<Complex64>, p: usize, q: usize) -> f64 {
    let j = signature_matrix(p, q);
    (g.adjoint() * &j * g - &j).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Haar-distributed unitary via QR of a Ginibre matrix with phase fixing.
pub fn sample_unitary(n: usize, rng: &mut impl Rng) -> DMatrix<Complex64> {
    let z = complex_gaussian(n, rng, 1.0);
    let qr = z.qr();
    let r = qr.r().clone_owned();
    let mut q = qr.q();
    for i in 0..n {
        let d = r[(i, i)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            for x in q.column_mut(i).iter_mut() {
                *x *= phase;
            }
        }
    }
    q
}

/// `u diag(d) u*`.
pub fn conjugated_diagonal(diag: &[f64], u: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = diag.len();
    let d = DMatrix::from_fn(n, n, |r, c| {
        if r == c {
            Complex64::new(diag[r], 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    u * d * u.adjoint()
}

/// One compact-case sample: spectrum (descending) of `U diag(a) U* + V diag(b) V*`
/// for independent Haar unitaries. Scalar blocks add exactly.
pub fn hermitian_sum_spectrum(a: &[f64], b: &[f64], rng: &mut impl Rng) -> Vec<f64> {
    let n = a.len();
    if n == 1 {
        return vec![a[0] + b[0]];
    }
    let u = sample_unitary(n, rng);
    let v = sample_unitary(n, rng);
    let m = conjugated_diagonal(a, &u) + conjugated_diagonal(b, &v);
    let mut eig: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    eig.sort_by(|x, y| y.partial_cmp(x).unwrap());
    eig
}

/// `g diag(x) g^{-1}` with the exact group inverse `g^{-1} = J g* J`.
pub fn realize_orbit_point(
    form: &RealFormData,
    x: &Spectrum,
    g: &DMatrix<Complex64>,
) -> Result<PseudoHermitianMatrix, Error> {
    let (p, q) = form
        .block_sizes
        .ok_or_else(|| Error::InvalidParameter("matrix realization needs su(p,q)".into()))?;
    form.check_trace(x)?;
    if let Some((gen, value)) = form.admissibility_violation(x) {
        return Err(Error::NotAdmissible {
            generator: gen.clone(),
            value: crate::rational::format_rat(&value),
        });
    }
    if let Some(msg) = form.chamber_violation(x) {
        return Err(Error::NotInChamber { message: msg });
    }
    let n = p + q;
    let j = signature_matrix(p, q);
    let diag = DMatrix::from_fn(n, n, |r, c| {
        if r == c {
            Complex64::new(rat_to_f64(&x.coords[r]), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let g_inv = &j * g.adjoint() * &j;
    let a = g * diag * g_inv;
    let m = PseudoHermitianMatrix { entries: a, signature: (p, q) };
    let resid = m.residual();
    if resid > STRUCTURAL_TOL * (1.0 + m.entries.norm()) {
        return Err(Error::Numerical(format!(
            "pseudo-Hermitian residual {resid:.3e} exceeds tolerance; group element too ill-conditioned"
        )));
    }
    Ok(m)
}

/// Spectrum of a sum of orbit points, split into blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct SumSpectrum {
    /// All eigenvalues (real parts), descending: λ-block then μ-block.
    pub values: Vec<f64>,
    /// Largest imaginary part relative to the spectral radius.
    pub max_imag_rel: f64,
    /// `λ_p - μ_1`, the admissible block gap.
    pub gap: f64,
}

/// Eigenvalues of `A + B`, asserted real, sorted descending and split
/// p-largest / q-smallest.
pub fn spectrum_of_sum(
    a: &PseudoHermitianMatrix,
    b: &PseudoHermitianMatrix,
) -> Result<SumSpectrum, Error> {
    if a.signature != b.signature {
        return Err(Error::InvalidParameter(format!(
            "signature mismatch: {:?} vs {:?}",
            a.signature, b.signature
        )));
    }
    let (p, _q) = a.signature;
    let s = &a.entries + &b.entries;
    let eig = crate::eig::complex_eigenvalues(&s)?;
    let radius = eig.iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let max_imag = eig.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    let max_imag_rel = max_imag / radius;
    if max_imag_rel > IMAG_REL_TOL {
        return Err(Error::Numerical(format!(
            "non-real spectrum: relative imaginary part {max_imag_rel:.3e} (inadmissible input or bug)"
        )));
    }
    let mut values: Vec<f64> = eig.iter().map(|z| z.re).collect();
    values.sort_by(|x, y| y.partial_cmp(x).unwrap());
    let gap = values[p - 1] - values[p.min(values.len() - 1)];
    Ok(SumSpectrum { values, max_imag_rel, gap })
}

/// Monte Carlo summary. `inside == total` certifies containment at `tol`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleReport {
    pub total: u64,
    pub inside: u64,
    pub worst_violation: f64,
    pub worst_sample_seed: u64,
    pub imag_residual_max: f64,
    pub gap_min: f64,
    pub master_seed: u64,
    pub scales: Vec<f64>,
    pub tol: f64,
}

/// Samples pseudo-unitary pairs, computes sum spectra and tests them against
/// the exact polyhedron of `result`.
pub fn verify_containment(
    result: &OrbitSumResult,
    samples: u64,
    seed: u64,
    tol: f64,
) -> Result<SampleReport, Error> {
    if !result.exactness {
        return Err(Error::NotExact);
    }
    verify_containment_against(
        &crate::polyhedra::FloatHRep::new(&result.s_ab),
        &result.form,
        &result.lambda_a,
        &result.lambda_b,
        samples,
        seed,
        tol,
    )
}

/// Same as [`verify_containment`] but against an arbitrary H-representation
/// (e.g. one loaded from a file as a negative control).
pub fn verify_containment_against(
    hrep: &FloatHRep,
    form: &RealFormData,
    a: &Spectrum,
    b: &Spectrum,
    samples: u64,
    seed: u64,
    tol: f64,
) -> Result<SampleReport, Error> {
    if samples == 0 {
        return Err(Error::InvalidParameter("sample count must be >= 1".into()));
    }
    form.block_sizes
        .ok_or_else(|| Error::InvalidParameter("containment oracle needs su(p,q)".into()))?;

    struct Draw {
        inside: bool,
        violation: f64,
        seed_g: u64,
        imag_rel: f64,
        gap: f64,
    }
    let rows: Vec<Result<Draw, Error>> = par_map(samples as usize, |i| {
        let (p, q) = form.block_sizes.expect("checked above");
        let scale = SCALE_SWEEP[i % SCALE_SWEEP.len()];
        let seed_g = derive_seed(seed, 2 * i as u64);
        let seed_h = derive_seed(seed, 2 * i as u64 + 1);
        let g = sample_group_element(p, q, seed_g, scale);
        let h = sample_group_element(p, q, seed_h, scale);
        let ma = realize_orbit_point(form, a, &g)?;
        let mb = realize_orbit_point(form, b, &h)?;
        let spec = spectrum_of_sum(&ma, &mb)?;
        let m = hrep.membership(&spec.values, tol);
        Ok(Draw {
            inside: m.inside,
            violation: m.worst_violation,
            seed_g,
            imag_rel: spec.max_imag_rel,
            gap: spec.gap,
        })
    });

    let mut report = SampleReport {
        total: samples,
        inside: 0,
        worst_violation: 0.0,
        worst_sample_seed: 0,
        imag_residual_max: 0.0,
        gap_min: f64::INFINITY,
        master_seed: seed,
        scales: SCALE_SWEEP.to_vec(),
        tol,
    };
    for row in rows {
        let d = row?;
        if d.inside {
            report.inside += 1;
        }
        if d.violation > report.worst_violation {
            report.worst_violation = d.violation;
            report.worst_sample_seed = d.seed_g;
        }
        report.imag_residual_max = report.imag_residual_max.max(d.imag_rel);
        report.gap_min = report.gap_min.min(d.gap);
    }
    Ok(report)
}

/// Float sum spectra of sampled orbit pairs; used for plot clouds.
pub fn sample_sum_spectra(
    form: &RealFormData,
    a: &Spectrum,
    b: &Spectrum,
    samples: u64,
    seed: u64,
) -> Result<Vec<Vec<f64>>, Error> {
    let (p, q) = form
        .block_sizes
        .ok_or_else(|| Error::InvalidParameter("sampling needs su(p,q)".into()))?;
    let rows: Vec<Result<Vec<f64>, Error>> = par_map(samples as usize, |i| {
        let scale = SCALE_SWEEP[i % SCALE_SWEEP.len()];
        let g = sample_group_element(p, q, derive_seed(seed, 2 * i as u64), scale);
        let h = sample_group_element(p, q, derive_seed(seed, 2 * i as u64 + 1), scale);
        let ma = realize_orbit_point(form, a, &g)?;
        let mb = realize_orbit_point(form, b, &h)?;
        Ok(spectrum_of_sum(&ma, &mb)?.values)
    });
    rows.into_iter().collect()
}
