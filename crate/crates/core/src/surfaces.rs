//! Closed generalized normal surfaces in quad coordinates and the index
//! computed as a sum over them.
//!
//! Quad `k` of a tetrahedron is the one disjoint from edges `k` and `5 - k`,
//! i.e. quad 0 separates `01 | 23`, quad 1 separates `02 | 13`, quad 2
//! separates `03 | 12`. Coordinates of a quad vector are indexed `3j + k`.
//!
//! The classes counted are the cosets of the tetrahedral solutions in the
//! lattice spanned by edge and tetrahedral solutions; each has a unique
//! representative with a zero coordinate in every tetrahedron.

use std::collections::BTreeMap;

use dashmap::DashMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::Hnf;
use crate::qseries::QSeries;
use crate::statesum::{fkb_limit, StabilizationReport};
use crate::tetindex::{j_delta, j_fkb, nu, weighted_product, QuadTriple};
use crate::triangulation::{Triangulation, EDGE_VERTICES};

/// Quad type disjoint from the edge `uv`.
pub fn quad_type(u: usize, v: usize) -> usize {
    let i = crate::triangulation::edge_index(u, v);
    std::cmp::min(i, 5 - i)
}

/// A quad vector as per-tetrahedron triples.
pub fn triples(quads: &[i64]) -> Vec<QuadTriple> {
    quads.chunks(3).map(|c| QuadTriple::new(c[0], c[1], c[2])).collect()
}

/// Normalized class: every tetrahedron has a zero quad coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalClass {
    pub quads: Vec<i64>,
    pub chi: i64,
    /// `-χ + Σ ν(a_j, b_j, c_j)`, the doubled lowest exponent of the weight.
    pub degree2: i64,
}

impl NormalClass {
    pub fn triples(&self) -> Vec<QuadTriple> {
        triples(&self.quads)
    }
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Quad matching data of a triangulation.
#[derive(Debug, Clone)]
pub struct MatchingData {
    pub tets: usize,
    /// Integer rows `r` with `r · q = 0` exactly for quad vectors that admit
    /// a rational triangle completion.
    pub quad_matrix: Vec<Vec<i64>>,
    pub edge_solutions: Vec<Vec<i64>>,
    pub tet_solutions: Vec<Vec<i64>>,
    /// Hermite basis of the lattice spanned by edge and tetrahedral solutions.
    pub lattice: Hnf,
    /// Euler characteristic of each basis row.
    pub basis_chi: Vec<i64>,
    /// One triangle completion `tri = completion · q` (free variables 0).
    completion: Vec<Vec<BigRational>>,
    arcs: Vec<ArcEquation>,
}

/// `tri(i, v) + Q(i, k) = tri(j, w) + Q(j, l)`: normal arcs around vertex
/// `v` in face `f` of tetrahedron `i` match those across the gluing.
#[derive(Debug, Clone, Copy)]
struct ArcEquation {
    tri_left: (usize, usize),
    tri_right: (usize, usize),
    quad_left: usize,
    quad_right: usize,
}

impl MatchingData {
    pub fn new(tri: &Triangulation) -> Result<Self> {
        let t = tri.num_tets();
        let mut arcs = Vec::new();
        for fc in tri.face_classes() {
            let (i, f) = (fc.tet, fc.face);
            let (j, f2, p) = tri.neighbor(i, f);
            for v in (0..4).filter(|&v| v != f) {
                let w = p.apply(v);
                arcs.push(ArcEquation {
                    tri_left: (i, v),
                    tri_right: (j, w),
                    quad_left: 3 * i + quad_type(v, f),
                    quad_right: 3 * j + quad_type(w, f2),
                });
            }
        }

        // Rows over [tri (4t) | quad (3t)]; eliminate on the triangle part.
        let ncols = 7 * t;
        let mut rows: Vec<Vec<BigRational>> = arcs
            .iter()
            .map(|a| {
                let mut r = vec![BigRational::zero(); ncols];
                r[4 * a.tri_left.0 + a.tri_left.1] += rat(1);
                r[4 * a.tri_right.0 + a.tri_right.1] -= rat(1);
                r[4 * t + a.quad_left] += rat(1);
                r[4 * t + a.quad_right] -= rat(1);
                r
            })
            .collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut top = 0;
        for col in 0..4 * t {
            let Some(r) = (top..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(top, r);
            let inv = rows[top][col].recip();
            for x in rows[top].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = rows[top].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != top && !row[col].is_zero() {
                    let k = row[col].clone();
                    for (x, p) in row.iter_mut().zip(&pivot_row) {
                        *x -= p * &k;
                    }
                }
            }
            pivots.push((top, col));
            top += 1;
        }
        let mut completion = vec![vec![BigRational::zero(); 3 * t]; 4 * t];
        for &(r, col) in &pivots {
            for k in 0..3 * t {
                completion[col][k] = -rows[r][4 * t + k].clone();
            }
        }
        let mut quad_matrix = Vec::new();
        for row in &rows[top..] {
            let q = &row[4 * t..];
            if q.iter().all(|x| x.is_zero()) {
                continue;
            }
            let lcm = q
                .iter()
                .fold(BigInt::one(), |l, x| num_integer::Integer::lcm(&l, x.denom()));
            let ints: Vec<i64> = q
                .iter()
                .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer().to_i64())
                .collect::<Option<Vec<i64>>>()
                .ok_or(Error::Overflow)?;
            quad_matrix.push(ints);
        }

        let mut edge_solutions = vec![vec![0i64; 3 * t]; tri.edge_classes().len()];
        for ec in tri.edge_classes() {
            for &(j, i) in &ec.incidences {
                edge_solutions[ec.id][3 * j + std::cmp::min(i, 5 - i)] += 1;
            }
        }
        let tet_solutions: Vec<Vec<i64>> = (0..t)
            .map(|j| {
                let mut v = vec![0i64; 3 * t];
                v[3 * j..3 * j + 3].fill(1);
                v
            })
            .collect();
        let mut gens = edge_solutions.clone();
        gens.extend(tet_solutions.iter().cloned());
        let lattice = Hnf::new(3 * t, &gens)?;

        let mut md = MatchingData {
            tets: t,
            quad_matrix,
            edge_solutions,
            tet_solutions,
            lattice,
            basis_chi: Vec::new(),
            completion,
            arcs,
        };
        md.basis_chi = md
            .lattice
            .rows()
            .iter()
            .map(|r| md.euler_char(tri, r))
            .collect::<Result<Vec<i64>>>()?;
        Ok(md)
    }

    /// True iff `q` admits a rational triangle completion.
    pub fn satisfies_matching(&self, q: &[i64]) -> bool {
        self.quad_matrix
            .iter()
            .all(|r| r.iter().zip(q).map(|(a, b)| a * b).sum::<i64>() == 0)
    }

    /// Membership in the lattice spanned by edge and tetrahedral solutions.
    pub fn in_lattice(&self, q: &[i64]) -> bool {
        self.lattice.contains(q)
    }

    /// Euler characteristic of the class with quad coordinates `q`, from a
    /// rational triangle completion: edge crossings minus arcs plus disks.
    pub fn euler_char(&self, tri: &Triangulation, q: &[i64]) -> Result<i64> {
        if !self.satisfies_matching(q) {
            return Err(Error::NoTriangleCompletion(q.to_vec()));
        }
        let t = self.tets;
        let qs: Vec<BigRational> = q.iter().map(|&x| rat(x)).collect();
        let tris: Vec<BigRational> = self
            .completion
            .iter()
            .map(|row| row.iter().zip(&qs).map(|(a, b)| a * b).sum())
            .collect();
        for a in &self.arcs {
            let l = &tris[4 * a.tri_left.0 + a.tri_left.1] + &qs[a.quad_left];
            let r = &tris[4 * a.tri_right.0 + a.tri_right.1] + &qs[a.quad_right];
            if l != r {
                return Err(Error::NoTriangleCompletion(q.to_vec()));
            }
        }
        let mut weights: Vec<Option<BigRational>> = vec![None; tri.edge_classes().len()];
        for j in 0..t {
            for (i, &(u, v)) in EDGE_VERTICES.iter().enumerate() {
                let k = std::cmp::min(i, 5 - i);
                let mut w = &tris[4 * j + u] + &tris[4 * j + v];
                for other in (0..3).filter(|&o| o != k) {
                    w += &qs[3 * j + other];
                }
                let class = tri.edge_class_of(j, i);
                match &weights[class] {
                    Some(old) if *old != w => return Err(Error::NoTriangleCompletion(q.to_vec())),
                    _ => weights[class] = Some(w),
                }
            }
        }
        let vertices: BigRational = weights.into_iter().flatten().sum();
        let mut arcs = BigRational::zero();
        for j in 0..t {
            for f in 0..4 {
                for v in (0..4).filter(|&v| v != f) {
                    arcs += &tris[4 * j + v] + &qs[3 * j + quad_type(v, f)];
                }
            }
        }
        let disks: BigRational = tris.iter().sum::<BigRational>() + qs.iter().sum::<BigRational>();
        let chi = vertices - arcs / rat(2) + disks;
        if !chi.is_integer() {
            return Err(Error::NonIntegralEuler(chi.to_string()));
        }
        chi.to_integer().to_i64().ok_or(Error::Overflow)
    }
}

/// Quad matching data of `tri`.
pub fn matching_data(tri: &Triangulation) -> Result<MatchingData> {
    MatchingData::new(tri)
}

/// Lattice points with coordinates in `[0, m]`, a zero in every
/// tetrahedron and some coordinate equal to `m`, with their HNF coefficients.
fn shell(md: &MatchingData, m: i64) -> Vec<(Vec<i64>, Vec<i64>)> {
    let h = &md.lattice;
    let n = h.ncols();
    let mut pivot_row = vec![None; n];
    for (i, &p) in h.pivots().iter().enumerate() {
        pivot_row[p] = Some(i);
    }

    struct Walk<'a> {
        h: &'a Hnf,
        pivot_row: &'a [Option<usize>],
        m: i64,
        out: Vec<(Vec<i64>, Vec<i64>)>,
    }

    impl Walk<'_> {
        fn go(&mut self, col: usize, acc: &mut Vec<i64>, coeffs: &mut Vec<i64>) {
            let n = acc.len();
            if col == n {
                if acc.contains(&self.m) {
                    self.out.push((acc.clone(), coeffs.clone()));
                }
                return;
            }
            let tet_done = |acc: &[i64]| col % 3 != 2 || acc[col - 2..=col].contains(&0);
            match self.pivot_row[col] {
                None => {
                    if (0..=self.m).contains(&acc[col]) && tet_done(acc) {
                        self.go(col + 1, acc, coeffs);
                    }
                }
                Some(i) => {
                    let row = &self.h.rows()[i];
                    let piv = row[col];
                    let base = acc[col];
                    // acc[col] + k * piv must lie in [0, m].
                    let k_lo = (-base).div_euclid(piv) + i64::from((-base).rem_euclid(piv) != 0);
                    let k_hi = (self.m - base).div_euclid(piv);
                    for k in k_lo..=k_hi {
                        for (a, &r) in acc.iter_mut().zip(row) {
                            *a += k * r;
                        }
                        coeffs.push(k);
                        if tet_done(acc) {
                            self.go(col + 1, acc, coeffs);
                        }
                        coeffs.pop();
                        for (a, &r) in acc.iter_mut().zip(row) {
                            *a -= k * r;
                        }
                    }
                }
            }
        }
    }

    let mut w = Walk {
        h,
        pivot_row: &pivot_row,
        m,
        out: Vec::new(),
    };
    w.go(0, &mut vec![0i64; n], &mut Vec::new());
    w.out
}

fn class_of(md: &MatchingData, quads: Vec<i64>, coeffs: &[i64]) -> NormalClass {
    let chi: i64 = coeffs.iter().zip(&md.basis_chi).map(|(k, c)| k * c).sum();
    let degree2 = -chi + triples(&quads).iter().map(nu).sum::<i64>();
    NormalClass { quads, chi, degree2 }
}

/// Outcome of the shell scan: the classes found and the shells examined.
#[derive(Debug, Clone, Serialize)]
pub struct Enumeration {
    pub classes: Vec<NormalClass>,
    /// Largest coordinate of any returned class.
    pub max_coord_used: i64,
    /// Last shell scanned; it and the one before contain no class of
    /// degree `<= max_degree2`.
    pub last_shell: i64,
    /// Minimum `degree2` seen on each shell `0..=last_shell`.
    pub shell_min_degree2: Vec<Option<i64>>,
}

/// Normalized classes with `degree2 <= max_degree2`, found by scanning
/// shells `max coordinate = M` for `M = 0, 1, ...` until two consecutive
/// shells contain nothing of degree `<= max_degree2`.
pub fn enumerate_classes(md: &MatchingData, max_degree2: i64, max_coord: u32) -> Result<Enumeration> {
    let mut classes = Vec::new();
    let mut mins = Vec::new();
    let mut quiet = 0;
    for m in 0..=max_coord as i64 {
        let found: Vec<NormalClass> = shell(md, m).into_par_iter().map(|(q, k)| class_of(md, q, &k)).collect();
        let min_deg = found.iter().map(|c| c.degree2).min();
        mins.push(min_deg);
        let before = classes.len();
        classes.extend(found.into_iter().filter(|c| c.degree2 <= max_degree2));
        if classes.len() == before && m > 0 {
            quiet += 1;
        } else {
            quiet = 0;
        }
        if quiet == 2 {
            classes.sort_by(|a: &NormalClass, b| (a.degree2, &a.quads).cmp(&(b.degree2, &b.quads)));
            let max_coord_used = classes.iter().flat_map(|c| c.quads.iter().copied()).max().unwrap_or(0);
            return Ok(Enumeration {
                classes,
                max_coord_used,
                last_shell: m,
                shell_min_degree2: mins,
            });
        }
    }
    Err(Error::CutoffNotCertified { max_coord })
}

/// `Σ_S (-q^(1/2))^(-χ) Π_j J_Δ(a_j, b_j, c_j)` over the classes of weight
/// degree below `prec2`.
pub fn index_series(tri: &Triangulation, prec2: i64, max_coord: u32) -> Result<QSeries> {
    let md = matching_data(tri)?;
    let en = enumerate_classes(&md, prec2 - 1, max_coord)?;
    Ok(sum_weights(&en.classes, prec2, false))
}

/// Sum of class weights, with `J^FKB` in place of `J_Δ` when `fkb` is set.
pub fn sum_weights(classes: &[NormalClass], prec2: i64, fkb: bool) -> QSeries {
    let cache: DashMap<(QuadTriple, i64), QSeries> = DashMap::new();
    let f = |t: &QuadTriple, p: i64| {
        if let Some(v) = cache.get(&(*t, p)) {
            return v.clone();
        }
        let v = if fkb { j_fkb(t, p) } else { j_delta(t, p) };
        cache.insert((*t, p), v.clone());
        v
    };
    classes
        .par_iter()
        .map(|c| class_weight(c, prec2, f))
        .reduce(|| QSeries::zero(Some(prec2)), |a, b| &a + &b)
}

/// `(-q^(1/2))^(-χ) Π_j f(a_j, b_j, c_j)` below `prec2`.
pub fn class_weight(c: &NormalClass, prec2: i64, f: impl Fn(&QuadTriple, i64) -> QSeries) -> QSeries {
    weighted_product(&c.triples(), c.chi, prec2, f)
}

/// Both computations of the index at `(m, e) = (0, 0)`.
#[derive(Debug, Clone)]
pub struct Thm1Report {
    pub normal_surfaces: QSeries,
    pub state_sum: StabilizationReport,
    pub first_mismatch: Option<i64>,
}

impl Thm1Report {
    pub fn agree(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Runs the state-sum limit and the normal-surface sum and compares them.
pub fn verify_thm1(tri: &Triangulation, prec2: i64, n_max: u32, max_coord: u32) -> Result<Thm1Report> {
    let normal = index_series(tri, prec2, max_coord)?;
    let state = fkb_limit(tri, prec2, n_max)?;
    let first_mismatch = normal.first_mismatch(&state.i_fkb);
    Ok(Thm1Report {
        normal_surfaces: normal,
        state_sum: state,
        first_mismatch,
    })
}

/// Counts of classes by `degree2`, for stability checks of the scan.
pub fn degree_histogram(classes: &[NormalClass]) -> BTreeMap<i64, usize> {
    let mut h = BTreeMap::new();
    for c in classes {
        *h.entry(c.degree2).or_insert(0) += 1;
    }
    h
}

/// Whether every coordinate triple has a zero entry.
pub fn is_normalized(quads: &[i64]) -> bool {
    quads.chunks(3).all(|c| c.contains(&0) && c.iter().all(|&x| x >= 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig8(name: &str) -> (Triangulation, MatchingData) {
        let tri = Triangulation::fixture(name).unwrap();
        let md = matching_data(&tri).unwrap();
        (tri, md)
    }

    #[test]
    fn edge_and_tet_solutions() {
        let (tri, md) = fig8("fig8-2tet");
        assert_eq!(md.edge_solutions.len(), 2);
        let mut e = md.edge_solutions.clone();
        e.sort();
        assert_eq!(e, vec![vec![0, 1, 2, 0, 1, 2], vec![2, 1, 0, 2, 1, 0]]);
        for v in md.edge_solutions.iter() {
            assert!(md.satisfies_matching(v));
            assert_eq!(md.euler_char(&tri, v).unwrap(), -2);
        }
        for v in md.tet_solutions.iter() {
            assert!(md.in_lattice(v));
            assert_eq!(md.euler_char(&tri, v).unwrap(), -1);
        }
        assert!(md.in_lattice(&[0; 6]));
        assert_eq!(md.euler_char(&tri, &[0; 6]).unwrap(), 0);
    }

    #[test]
    fn non_member_is_rejected() {
        let (tri, md) = fig8("fig8-2tet");
        assert!(!md.in_lattice(&[1, 0, 0, 0, 0, 0]));
        assert!(md.euler_char(&tri, &[1, 0, 0, 0, 0, 0]).is_err());
    }

    #[test]
    fn lattice_chi_matches_direct() {
        for name in crate::triangulation::FIXTURES {
            let (tri, md) = fig8(name);
            let en = enumerate_classes(&md, 14, 20).unwrap();
            for c in &en.classes {
                assert!(is_normalized(&c.quads));
                assert!(md.in_lattice(&c.quads));
                assert_eq!(md.euler_char(&tri, &c.quads).unwrap(), c.chi, "{:?}", c.quads);
            }
        }
    }

    #[test]
    fn zero_order_gives_empty_surface() {
        let (_, md) = fig8("fig8-2tet");
        let en = enumerate_classes(&md, 0, 20).unwrap();
        assert_eq!(en.classes.len(), 1);
        assert_eq!(en.classes[0].quads, vec![0; 6]);
        assert_eq!(en.classes[0].chi, 0);
    }

    #[test]
    fn classes_are_unique() {
        let (_, md) = fig8("fig8-3tet");
        let en = enumerate_classes(&md, 11, 20).unwrap();
        let mut q: Vec<&Vec<i64>> = en.classes.iter().map(|c| &c.quads).collect();
        q.sort();
        q.dedup();
        assert_eq!(q.len(), en.classes.len());
        assert_eq!(en.classes.len(), 12);
    }

    #[test]
    fn fig8_index() {
        let expect = QSeries::from_i64s(0, &[1, 0, -2, 0, -3, 0, 2, 0, 8, 0, 18], Some(12));
        for name in crate::triangulation::FIXTURES {
            let tri = Triangulation::fixture(name).unwrap();
            assert_eq!(index_series(&tri, 12, 20).unwrap(), expect, "{name}");
        }
    }

    #[test]
    fn weights_agree_termwise() {
        let (_, md) = fig8("fig8-3tet");
        let en = enumerate_classes(&md, 13, 20).unwrap();
        for c in &en.classes {
            let a = class_weight(c, 14, j_delta);
            let b = class_weight(c, 14, j_fkb);
            assert_eq!(a, b, "{:?}", c.quads);
        }
    }
}
