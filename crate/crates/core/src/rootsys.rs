//! Root systems with a Vogan painting: compact/non-compact split of the
//! positive roots, the minimal-cone generators and the admissibility test,
//! the compact Weyl chamber and the compact Weyl group action.
//!
//! Everything is combinatorial: roots are integer vectors in the ambient
//! weight coordinates (`e_1..e_n`), spectra are exact rational vectors, and
//! no matrix realization of the Lie algebra is ever built.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg;
use crate::polyhedra::VPolyhedron;
use crate::rational::{dot, dot_i64, format_rat, i64_to_rat_vec, rat_int, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Series::A => write!(f, "A"),
            Series::B => write!(f, "B"),
            Series::C => write!(f, "C"),
            Series::D => write!(f, "D"),
        }
    }
}

/// A Dynkin diagram with at most one painted node. Construction verifies the
/// quasi-Hermitian condition: every positive root carries the painted simple
/// root with coefficient 0 or 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VoganDiagram {
    pub series: Series,
    pub rank: usize,
    /// 1-based index of the painted simple root, if any.
    pub painted: Option<usize>,
}

impl VoganDiagram {
    pub fn new(series: Series, rank: usize, painted: Option<usize>) -> Result<Self, Error> {
        if rank == 0 {
            return Err(Error::RankZero);
        }
        if series == Series::D && rank < 3 {
            return Err(Error::InvalidParameter("series D needs rank >= 3".into()));
        }
        if let Some(p) = painted {
            if p == 0 || p > rank {
                return Err(Error::PaintedOutOfRange { painted: p, rank });
            }
        }
        let diagram = Self { series, rank, painted };
        if let Some(p) = painted {
            let roots = positive_roots(series, rank);
            let simples = simple_roots(series, rank);
            for root in &roots {
                let coeff = expansion_coefficient(root, &simples, p - 1);
                if coeff.abs() > 1 {
                    return Err(Error::NotQuasiHermitian { root: root.clone(), coefficient: coeff });
                }
            }
        }
        Ok(diagram)
    }

    pub fn ambient_dim(&self) -> usize {
        match self.series {
            Series::A => self.rank + 1,
            _ => self.rank,
        }
    }
}

/// A point of the dual Cartan in ambient coordinates, exact.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Spectrum {
    pub coords: Vec<Rat>,
}

impl Spectrum {
    pub fn new(coords: Vec<Rat>) -> Self {
        Self { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self::new(i64_to_rat_vec(coords))
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// All Lie-theoretic data of a painted real form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealFormData {
    pub diagram: VoganDiagram,
    pub ambient_dim: usize,
    pub positive_roots: Vec<Vec<i64>>,
    /// Indices into `positive_roots`.
    pub compact_positive: Vec<usize>,
    pub noncompact_positive: Vec<usize>,
    /// Coroot directions of the non-compact positive roots; the admissible
    /// cone is where all pairings are strictly positive.
    pub cmin_generators: Vec<Vec<i64>>,
    /// Inequality normals of the compact Weyl chamber (offsets are zero).
    pub chamber: Vec<Vec<Rat>>,
    /// Equality normals satisfied by every spectrum (offsets are zero).
    pub trace_functionals: Vec<Vec<Rat>>,
    /// `(p, q)` for series A painted at node p.
    pub block_sizes: Option<(usize, usize)>,
}

pub fn positive_roots(series: Series, rank: usize) -> Vec<Vec<i64>> {
    let dim = if series == Series::A { rank + 1 } else { rank };
    let e = |i: usize, sign: i64| {
        let mut v = vec![0i64; dim];
        v[i] = sign;
        v
    };
    let pair = |i: usize, j: usize, sj: i64| {
        let mut v = vec![0i64; dim];
        v[i] = 1;
        v[j] = sj;
        v
    };
    let mut roots = Vec::new();
    match series {
        Series::A => {
            for i in 0..dim {
                for j in i + 1..dim {
                    roots.push(pair(i, j, -1));
                }
            }
        }
        Series::B => {
            for i in 0..rank {
                for j in i + 1..rank {
                    roots.push(pair(i, j, -1));
                    roots.push(pair(i, j, 1));
                }
                roots.push(e(i, 1));
            }
        }
        Series::C => {
            for i in 0..rank {
                for j in i + 1..rank {
                    roots.push(pair(i, j, -1));
                    roots.push(pair(i, j, 1));
                }
                let mut v = vec![0i64; rank];
                v[i] = 2;
                roots.push(v);
            }
        }
        Series::D => {
            for i in 0..rank {
                for j in i + 1..rank {
                    roots.push(pair(i, j, -1));
                    roots.push(pair(i, j, 1));
                }
            }
        }
    }
    roots.sort();
    roots
}

pub fn simple_roots(series: Series, rank: usize) -> Vec<Vec<i64>> {
    let dim = if series == Series::A { rank + 1 } else { rank };
    let mut simples = Vec::with_capacity(rank);
    for i in 0..rank.saturating_sub(1) {
        let mut v = vec![0i64; dim];
        v[i] = 1;
        v[i + 1] = -1;
        simples.push(v);
    }
    let mut last = vec![0i64; dim];
    match series {
        Series::A => {
            last[rank - 1] = 1;
            last[rank] = -1;
        }
        Series::B => last[rank - 1] = 1,
        Series::C => last[rank - 1] = 2,
        Series::D => {
            last[rank - 2] = 1;
            last[rank - 1] = 1;
        }
    }
    simples.push(last);
    simples
}

/// Coefficient of the `idx`-th simple root in the expansion of `root`.
fn expansion_coefficient(root: &[i64], simples: &[Vec<i64>], idx: usize) -> i64 {
    let a: Vec<Vec<Rat>> = (0..root.len())
        .map(|coord| simples.iter().map(|s| rat_int(s[coord])).collect())
        .collect();
    let b: Vec<Rat> = root.iter().map(|&x| rat_int(x)).collect();
    let coeffs = linalg::solve_any(&a, &b).expect("positive root lies in the simple-root span");
    let c = &coeffs[idx];
    debug_assert!(c.is_integer());
    c.to_integer().try_into().unwrap_or(i64::MAX)
}

fn coroot(root: &[i64]) -> Vec<i64> {
    let norm2: i64 = root.iter().map(|x| x * x).sum();
    // 2α/⟨α,α⟩ stays integral for norm² in {1, 2, 4}.
    root.iter().map(|&x| 2 * x / norm2).collect()
}

/// Builds the full combinatorial package for a painted diagram.
pub fn build_real_form(diagram: VoganDiagram) -> Result<RealFormData, Error> {
    let series = diagram.series;
    let rank = diagram.rank;
    let ambient_dim = diagram.ambient_dim();
    let roots = positive_roots(series, rank);
    let simples = simple_roots(series, rank);

    let mut compact = Vec::new();
    let mut noncompact = Vec::new();
    for (i, root) in roots.iter().enumerate() {
        let is_nc = match diagram.painted {
            None => false,
            Some(p) => expansion_coefficient(root, &simples, p - 1) == 1,
        };
        if is_nc {
            noncompact.push(i);
        } else {
            compact.push(i);
        }
    }

    let cmin_generators: Vec<Vec<i64>> = noncompact.iter().map(|&i| coroot(&roots[i])).collect();

    // Chamber: one normal per W_k-simple compact root (indecomposable among
    // the compact positives).
    let compact_set: BTreeSet<Vec<i64>> = compact.iter().map(|&i| roots[i].clone()).collect();
    let chamber: Vec<Vec<Rat>> = compact_set
        .iter()
        .filter(|root| {
            !compact_set.iter().any(|beta| {
                let gamma: Vec<i64> = root.iter().zip(beta).map(|(a, b)| a - b).collect();
                gamma != vec![0; ambient_dim] && compact_set.contains(&gamma)
            })
        })
        .map(|root| i64_to_rat_vec(root))
        .collect();

    let trace_functionals = match series {
        Series::A => vec![vec![rat_int(1); ambient_dim]],
        _ => vec![],
    };

    let block_sizes = match (series, diagram.painted) {
        (Series::A, Some(p)) => Some((p, ambient_dim - p)),
        _ => None,
    };

    Ok(RealFormData {
        diagram,
        ambient_dim,
        positive_roots: roots,
        compact_positive: compact,
        noncompact_positive: noncompact,
        cmin_generators,
        chamber,
        trace_functionals,
        block_sizes,
    })
}

impl RealFormData {
    /// `su(p, q)`: series A at rank p+q-1, painted at node p.
    pub fn su(p: usize, q: usize) -> Result<Self, Error> {
        if p == 0 || q == 0 {
            return Err(Error::InvalidParameter("su(p,q) needs p, q >= 1".into()));
        }
        build_real_form(VoganDiagram::new(Series::A, p + q - 1, Some(p))?)
    }

    pub fn algebra_name(&self) -> String {
        match self.block_sizes {
            Some((p, q)) => format!("su({p},{q})"),
            None => format!(
                "{}{}{}",
                self.diagram.series,
                self.diagram.rank,
                self.diagram
                    .painted
                    .map(|p| format!("#{p}"))
                    .unwrap_or_default()
            ),
        }
    }

    pub fn check_dim(&self, x: &Spectrum) -> Result<(), Error> {
        if x.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, got: x.dim() });
        }
        Ok(())
    }

    /// Verifies all trace functionals vanish on `x`.
    pub fn check_trace(&self, x: &Spectrum) -> Result<(), Error> {
        self.check_dim(x)?;
        for f in &self.trace_functionals {
            let value = dot(f, &x.coords);
            if !value.is_zero() {
                return Err(Error::TraceViolation {
                    functional: f.iter().map(format_rat).collect(),
                    value: format_rat(&value),
                });
            }
        }
        Ok(())
    }

    /// Strict positivity against every minimal-cone generator: membership in
    /// the open admissible cone. For su(p,q) this is `min(λ) > max(μ)`.
    pub fn is_admissible(&self, x: &Spectrum) -> Result<bool, Error> {
        self.check_dim(x)?;
        Ok(self.admissibility_violation(x).is_none())
    }

    /// The first non-strict pairing, if any.
    pub fn admissibility_violation(&self, x: &Spectrum) -> Option<(&Vec<i64>, Rat)> {
        self.cmin_generators.iter().find_map(|g| {
            let value = dot_i64(g, &x.coords);
            (!value.is_positive()).then_some((g, value))
        })
    }

    /// True when `x` is weakly dominant for the compact Weyl group.
    pub fn in_chamber(&self, x: &Spectrum) -> Result<bool, Error> {
        self.check_dim(x)?;
        Ok(self.chamber.iter().all(|n| !dot(n, &x.coords).is_negative()))
    }

    pub fn chamber_violation(&self, x: &Spectrum) -> Option<String> {
        self.chamber.iter().find_map(|n| {
            dot(n, &x.coords).is_negative().then(|| {
                format!(
                    "pairing with chamber normal [{}] is negative",
                    n.iter().map(format_rat).collect::<Vec<_>>().join(", ")
                )
            })
        })
    }

    fn reflect(root: &[i64], x: &[Rat]) -> Vec<Rat> {
        let norm2: i64 = root.iter().map(|r| r * r).sum();
        let factor = dot_i64(root, x) * crate::rational::rat(2, norm2);
        x.iter()
            .zip(root)
            .map(|(xi, &ri)| xi - &factor * rat_int(ri))
            .collect()
    }

    /// Full compact-Weyl-group orbit (reflection closure, deduplicated).
    pub fn weyl_orbit(&self, x: &Spectrum) -> Result<Vec<Spectrum>, Error> {
        self.check_dim(x)?;
        let generators: Vec<&Vec<i64>> = self
            .compact_positive
            .iter()
            .map(|&i| &self.positive_roots[i])
            .collect();
        let mut seen: BTreeSet<Vec<Rat>> = BTreeSet::new();
        let mut frontier = vec![x.coords.clone()];
        seen.insert(x.coords.clone());
        while let Some(point) = frontier.pop() {
            for g in &generators {
                let image = Self::reflect(g, &point);
                if seen.insert(image.clone()) {
                    frontier.push(image);
                }
            }
        }
        Ok(seen.into_iter().map(Spectrum::new).collect())
    }

    /// The dominant (chamber) representative of the W_k-orbit of `x`.
    pub fn dominant_representative(&self, x: &Spectrum) -> Result<Spectrum, Error> {
        self.check_dim(x)?;
        let generators: Vec<&Vec<i64>> = self
            .compact_positive
            .iter()
            .map(|&i| &self.positive_roots[i])
            .collect();
        let mut point = x.coords.clone();
        loop {
            let Some(g) = generators.iter().find(|g| dot_i64(g, &point).is_negative()) else {
                return Ok(Spectrum::new(point));
            };
            point = Self::reflect(g, &point);
        }
    }

    /// Chamber-sorted sums `w1·a + w2·b` over the compact Weyl group,
    /// deduplicated. These are always achievable spectra (torus elements).
    pub fn weyl_sums(&self, a: &Spectrum, b: &Spectrum) -> Result<Vec<Spectrum>, Error> {
        let orbit_a = self.weyl_orbit(a)?;
        let orbit_b = self.weyl_orbit(b)?;
        let mut out: BTreeSet<Vec<Rat>> = BTreeSet::new();
        for wa in &orbit_a {
            for wb in &orbit_b {
                let sum = crate::rational::vec_add(&wa.coords, &wb.coords);
                out.insert(self.dominant_representative(&Spectrum::new(sum))?.coords);
            }
        }
        Ok(out.into_iter().map(Spectrum::new).collect())
    }

    /// The cone spanned by the non-compact positive roots, in V-form.
    pub fn noncompact_cone(&self) -> VPolyhedron {
        let rays: Vec<Vec<Rat>> = self
            .noncompact_positive
            .iter()
            .map(|&i| i64_to_rat_vec(&self.positive_roots[i]))
            .collect();
        VPolyhedron::cone(self.ambient_dim, rays)
    }

    /// The su(p,q) blocks as coordinate ranges, when available.
    pub fn blocks(&self) -> Option<Vec<std::ops::Range<usize>>> {
        self.block_sizes.map(|(p, q)| vec![0..p, p..p + q])
    }
}
