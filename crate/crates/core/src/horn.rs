//! The compact-case polytope Π.
//!
//! For su(p,q) the maximal compact subgroup acts blockwise, so Π is cut out
//! by one unitary Horn problem per block: the block trace equality plus
//! `Σ_{k∈K} c_k <= Σ_{i∈I} a_i + Σ_{j∈J} b_j` for every Horn triple
//! (eigenvalues descending), intersected with the chamber. Redundant
//! inequalities are kept here and removed by polyhedral canonicalization.
//!
//! Forms without a wired exact solution fall back to a seeded sampling
//! approximation, flagged `exact = false`.

use std::collections::HashMap;

use itertools::Itertools;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::oracle;
use crate::polyhedra::{rational_hull, HPolyhedron, LinearConstraint};
use crate::rational::{rat_from_f64, rat_int, rat_to_f64, zeros, Rat};
use crate::rootsys::{RealFormData, Series, Spectrum};

/// One admissible index triple `(I, J, K)` of the Horn recursion.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HornTriple {
    pub n: usize,
    pub r: usize,
    pub i: Vec<usize>,
    pub j: Vec<usize>,
    pub k: Vec<usize>,
}

impl HornTriple {
    /// The defining sum condition `ΣI + ΣJ = ΣK + r(r+1)/2`.
    pub fn sum_condition_holds(&self) -> bool {
        let si: usize = self.i.iter().sum();
        let sj: usize = self.j.iter().sum();
        let sk: usize = self.k.iter().sum();
        si + sj == sk + self.r * (self.r + 1) / 2
    }
}

/// The complete triple set `T^n_r`, lexicographically ordered.
pub fn horn_triples(n: usize, r: usize) -> Result<Vec<HornTriple>, Error> {
    if r < 1 || r >= n {
        return Err(Error::InvalidHornRange { n, r });
    }
    let mut memo = HashMap::new();
    Ok(triples_memo(n, r, &mut memo))
}

type Memo = HashMap<(usize, usize), Vec<HornTriple>>;

fn triples_memo(n: usize, r: usize, memo: &mut Memo) -> Vec<HornTriple> {
    if let Some(hit) = memo.get(&(n, r)) {
        return hit.clone();
    }
    // Sub-conditions range over all smaller triple sets on {1..r}.
    let sub: Vec<Vec<HornTriple>> = (1..r).map(|rp| triples_memo(r, rp, memo)).collect();
    let mut out = Vec::new();
    let index_sets: Vec<Vec<usize>> = (1..=n).combinations(r).collect();
    for i_set in &index_sets {
        let si: usize = i_set.iter().sum();
        for j_set in &index_sets {
            let sj: usize = j_set.iter().sum();
            let need = si + sj;
            let base = r * (r + 1) / 2;
            if need < base {
                continue;
            }
            let target_k = need - base;
            for k_set in &index_sets {
                if k_set.iter().sum::<usize>() != target_k {
                    continue;
                }
                let ok = sub.iter().flatten().all(|t| {
                    let fi: usize = t.i.iter().map(|&f| i_set[f - 1]).sum();
                    let gj: usize = t.j.iter().map(|&g| j_set[g - 1]).sum();
                    let hk: usize = t.k.iter().map(|&h| k_set[h - 1]).sum();
                    fi + gj <= hk + t.r * (t.r + 1) / 2
                });
                if ok {
                    out.push(HornTriple {
                        n,
                        r,
                        i: i_set.clone(),
                        j: j_set.clone(),
                        k: k_set.clone(),
                    });
                }
            }
        }
    }
    memo.insert((n, r), out.clone());
    out
}

/// The compact-group polytope, with provenance flag.
#[derive(Debug, Clone, PartialEq)]
pub struct CompactPolytope {
    pub hrep: HPolyhedron,
    pub exact: bool,
}

const FALLBACK_SAMPLES: u64 = 4096;
const FALLBACK_SEED: u64 = 0;

/// Exact Π for block forms (su(p,q)); the sampling fallback otherwise —
/// callers must inspect `exact`.
pub fn compact_polytope(
    form: &RealFormData,
    a: &Spectrum,
    b: &Spectrum,
) -> Result<CompactPolytope, Error> {
    form.check_dim(a)?;
    form.check_dim(b)?;
    let Some(blocks) = form.blocks() else {
        return compact_polytope_sampled(form, a, b, FALLBACK_SAMPLES, FALLBACK_SEED);
    };
    let dim = form.ambient_dim;
    let mut ineqs: Vec<LinearConstraint> = Vec::new();
    let mut eqs: Vec<LinearConstraint> = Vec::new();
    for block in &blocks {
        let len = block.len();
        let a_block: Vec<Rat> = a.coords[block.clone()].to_vec();
        let b_block: Vec<Rat> = b.coords[block.clone()].to_vec();

        let mut trace_normal = zeros(dim);
        for idx in block.clone() {
            trace_normal[idx] = rat_int(1);
        }
        let trace_sum: Rat =
            a_block.iter().cloned().sum::<Rat>() + b_block.iter().cloned().sum::<Rat>();
        eqs.push(LinearConstraint::new(trace_normal, trace_sum));

        for r in 1..len {
            for triple in horn_triples(len, r)? {
                let mut normal = zeros(dim);
                for &k in &triple.k {
                    normal[block.start + k - 1] = rat_int(-1);
                }
                let bound: Rat = triple.i.iter().map(|&i| a_block[i - 1].clone()).sum::<Rat>()
                    + triple.j.iter().map(|&j| b_block[j - 1].clone()).sum::<Rat>();
                ineqs.push(LinearConstraint::new(normal, -bound));
            }
        }
    }
    for n in &form.chamber {
        ineqs.push(LinearConstraint::new(n.clone(), Rat::from_integer(0.into())));
    }
    Ok(CompactPolytope { hrep: HPolyhedron::new(dim, ineqs, eqs), exact: true })
}

/// Seeded sampling approximation of Π: the rational convex hull of
/// chamber-projected sampled sums over the compact group.
pub fn compact_polytope_sampled(
    form: &RealFormData,
    a: &Spectrum,
    b: &Spectrum,
    samples: u64,
    seed: u64,
) -> Result<CompactPolytope, Error> {
    if samples == 0 {
        return Err(Error::InvalidParameter("sample count must be >= 1".into()));
    }
    form.check_dim(a)?;
    form.check_dim(b)?;
    let dim = form.ambient_dim;

    // Unitary blocks exist for series A (painted: two blocks; unpainted: one).
    let blocks: Option<Vec<std::ops::Range<usize>>> = match (form.diagram.series, form.blocks()) {
        (_, Some(bs)) => Some(bs),
        (Series::A, None) => Some(vec![0..dim]),
        _ => None,
    };

    let sampled: Vec<Result<Vec<Rat>, Error>> = match blocks {
        Some(blocks) => {
            let af: Vec<f64> = a.coords.iter().map(rat_to_f64).collect();
            let bf: Vec<f64> = b.coords.iter().map(rat_to_f64).collect();
            // Block traces are conserved identically; any sampled defect is
            // eigensolver noise, so snap each block back onto its exact
            // trace plane before hulling. Without this the cloud thickens
            // into a full-dimensional sliver with enormous facet normals.
            let block_traces: Vec<Rat> = blocks
                .iter()
                .map(|blk| {
                    a.coords[blk.clone()].iter().cloned().sum::<Rat>()
                        + b.coords[blk.clone()].iter().cloned().sum::<Rat>()
                })
                .collect();
            crate::par_map(samples as usize, |i| {
                let mut rng = ChaCha8Rng::seed_from_u64(oracle::derive_seed(seed, i as u64));
                let mut point = Vec::with_capacity(dim);
                for (blk, expected) in blocks.iter().zip(&block_traces) {
                    let spec = oracle::hermitian_sum_spectrum(
                        &af[blk.clone()],
                        &bf[blk.clone()],
                        &mut rng,
                    );
                    let mut rats = spec
                        .iter()
                        .map(|&x| rat_from_f64(x))
                        .collect::<Result<Vec<Rat>, Error>>()?;
                    let defect =
                        expected - rats.iter().cloned().sum::<Rat>();
                    let share = defect / rat_int(blk.len() as i64);
                    for r in rats.iter_mut() {
                        *r += &share;
                    }
                    point.extend(rats);
                }
                Ok(point)
            })
        }
        // No matrix model: exact convex mixtures of the Weyl orbits instead
        // (coarse approximation, but honestly flagged).
        None => {
            let orbit_a = form.weyl_orbit(a)?;
            let orbit_b = form.weyl_orbit(b)?;
            crate::par_map(samples as usize, |i| {
                let mut rng = ChaCha8Rng::seed_from_u64(oracle::derive_seed(seed, i as u64));
                let pa = simplex_mixture(&orbit_a, &mut rng)?;
                let pb = simplex_mixture(&orbit_b, &mut rng)?;
                Ok(crate::rational::vec_add(&pa, &pb))
            })
        }
    };

    // Chamber-project; seed the cloud with the exact Weyl sums (they are
    // torus-achievable spectra, so the hull always carries the
    // identity-element points).
    let mut rational_points: Vec<Vec<Rat>> =
        form.weyl_sums(a, b)?.into_iter().map(|s| s.coords).collect();
    rational_points.reserve(sampled.len());
    for p in sampled {
        let dominant = form.dominant_representative(&Spectrum::new(p?))?;
        rational_points.push(dominant.coords);
    }
    let hrep = rational_hull(&rational_points)?;
    Ok(CompactPolytope { hrep, exact: false })
}

/// Uniform-ish point of the simplex spanned by the orbit: exponential
/// weights, rationalized and normalized exactly so the mixture stays in the
/// orbit's affine hull.
fn simplex_mixture(points: &[Spectrum], rng: &mut impl Rng) -> Result<Vec<Rat>, Error> {
    let weights: Vec<Rat> = points
        .iter()
        .map(|_| rat_from_f64(-(1.0 - rng.random::<f64>()).ln()))
        .collect::<Result<_, _>>()?;
    let total: Rat = weights.iter().cloned().sum();
    let dim = points[0].coords.len();
    let mut out = zeros(dim);
    for (w, p) in weights.iter().zip(points) {
        let share = w / &total;
        for (o, x) in out.iter_mut().zip(&p.coords) {
            *o += &share * x;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::i64_to_rat_vec;

    fn triple(n: usize, r: usize, i: &[usize], j: &[usize], k: &[usize]) -> HornTriple {
        HornTriple { n, r, i: i.to_vec(), j: j.to_vec(), k: k.to_vec() }
    }

    #[test]
    fn horn_triples_n2_r1() {
        let t = horn_triples(2, 1).unwrap();
        assert_eq!(
            t,
            vec![
                triple(2, 1, &[1], &[1], &[1]),
                triple(2, 1, &[1], &[2], &[2]),
                triple(2, 1, &[2], &[1], &[2]),
            ]
        );
    }

    #[test]
    fn horn_triples_n3_r1_has_six() {
        let t = horn_triples(3, 1).unwrap();
        assert_eq!(t.len(), 6);
        assert!(t.iter().all(|t| t.sum_condition_holds()));
    }

    #[test]
    fn invalid_ranges_are_rejected() {
        assert!(matches!(horn_triples(1, 1), Err(Error::InvalidHornRange { .. })));
        assert!(matches!(horn_triples(3, 3), Err(Error::InvalidHornRange { .. })));
        assert!(matches!(horn_triples(3, 0), Err(Error::InvalidHornRange { .. })));
    }

    #[test]
    fn compact_polytope_example_one_lambda_block() {
        // su(2,1), a = (4,1,-5), b = (2,1,-3): the λ-block is the segment
        // 5 <= c1 <= 6 on c1 + c2 = 8, and the μ-block is the point -8.
        let form = RealFormData::su(2, 1).unwrap();
        let a = Spectrum::from_i64(&[4, 1, -5]);
        let b = Spectrum::from_i64(&[2, 1, -3]);
        let pi = compact_polytope(&form, &a, &b).unwrap();
        assert!(pi.exact);
        let can = pi.hrep.canonicalize();
        let expected = HPolyhedron::new(
            3,
            vec![
                LinearConstraint::from_i64(&[1, 0, 0], 5),
                LinearConstraint::from_i64(&[-1, 0, 0], -6),
            ],
            vec![
                LinearConstraint::from_i64(&[1, 1, 0], 8),
                LinearConstraint::from_i64(&[0, 0, 1], -8),
            ],
        )
        .canonicalize();
        assert_eq!(can, expected);
    }

    #[test]
    fn compact_polytope_scalar_blocks_add() {
        // 1x1 blocks: Π is the single point (a+b, -(a+b)).
        let form = RealFormData::su(1, 1).unwrap();
        let a = Spectrum::from_i64(&[5, -5]);
        let b = Spectrum::from_i64(&[3, -3]);
        let pi = compact_polytope(&form, &a, &b).unwrap();
        let can = pi.hrep.canonicalize();
        assert!(can.inequalities.is_empty());
        let point = i64_to_rat_vec(&[8, -8]);
        assert!(can.contains_rational(&point).unwrap().inside);
        assert_eq!(can.equalities.len(), 2);
    }

    #[test]
    fn compact_polytope_example_two_mu_block() {
        // su(2,2) μ-blocks (1,-7) and (1,-6): -5 <= d1 <= 2 on d1 + d2 = -11.
        let form = RealFormData::su(2, 2).unwrap();
        let a = Spectrum::from_i64(&[4, 2, 1, -7]);
        let b = Spectrum::from_i64(&[3, 2, 1, -6]);
        let pi = compact_polytope(&form, &a, &b).unwrap();
        let mu_part = pi.hrep.fm_eliminate(&[0, 1]).unwrap();
        let expected = HPolyhedron::new(
            2,
            vec![
                LinearConstraint::from_i64(&[1, 0], -5),
                LinearConstraint::from_i64(&[-1, 0], -2),
            ],
            vec![LinearConstraint::from_i64(&[1, 1], -11)],
        )
        .canonicalize();
        assert_eq!(mu_part, expected);
    }

    #[test]
    fn sampled_su11_is_a_single_point() {
        let form = RealFormData::su(1, 1).unwrap();
        let a = Spectrum::from_i64(&[2, -2]);
        let b = Spectrum::from_i64(&[3, -3]);
        let pi = compact_polytope_sampled(&form, &a, &b, 32, 7).unwrap();
        assert!(!pi.exact);
        let point = i64_to_rat_vec(&[5, -5]);
        let m = pi.hrep.contains_float(&[5.0, -5.0], 1e-9).unwrap();
        assert!(m.inside);
        // Torus group: the hull collapses to the point (a+b, -a-b).
        assert_eq!(pi.hrep.canonicalize().inequalities.len(), 0);
        let _ = point;
    }

    #[test]
    fn sampled_equal_spectra_contain_doubled_point() {
        // Unpainted A2 (compact su(3)): identity elements give 2a.
        let diagram = crate::rootsys::VoganDiagram::new(Series::A, 2, None).unwrap();
        let form = crate::rootsys::build_real_form(diagram).unwrap();
        let a = Spectrum::from_i64(&[1, 0, -1]);
        let pi = compact_polytope_sampled(&form, &a, &a, 256, 11).unwrap();
        assert!(!pi.exact);
        let m = pi.hrep.contains_float(&[2.0, 0.0, -2.0], 1e-7).unwrap();
        assert!(m.inside, "violation {}", m.worst_violation);
    }

    #[test]
    fn sampled_is_deterministic_per_seed() {
        let form = RealFormData::su(2, 1).unwrap();
        let a = Spectrum::from_i64(&[4, 1, -5]);
        let b = Spectrum::from_i64(&[2, 1, -3]);
        let p1 = compact_polytope_sampled(&form, &a, &b, 64, 3).unwrap();
        let p2 = compact_polytope_sampled(&form, &a, &b, 64, 3).unwrap();
        assert_eq!(p1, p2);
        assert!(matches!(
            compact_polytope_sampled(&form, &a, &b, 0, 3),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn symmetry_in_the_inputs() {
        let form = RealFormData::su(2, 2).unwrap();
        let a = Spectrum::from_i64(&[4, 2, 1, -7]);
        let b = Spectrum::from_i64(&[3, 2, 1, -6]);
        let ab = compact_polytope(&form, &a, &b).unwrap().hrep.canonicalize();
        let ba = compact_polytope(&form, &b, &a).unwrap().hrep.canonicalize();
        assert_eq!(ab, ba);
    }
}
