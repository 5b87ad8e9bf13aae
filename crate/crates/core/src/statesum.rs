//! The state sum `TV^(N)` over colorings of the edges of an ideal
//! triangulation with colors at most `N`, and extraction of its quasi-linear
//! growth `TV^(N) = (N/2) I + I0 + (N mod 2) I1`.
//!
//! A coloring's weight is `Π_tets Tet · Π_triangles Θ^-1 · Π_edges U`. It is
//! evaluated as its closed lowest monomial `±q^L` times the product of hat
//! factors, each computed only to relative precision `prec2 - L`.

use std::sync::Arc;

use dashmap::DashMap;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::blocks::{
    hat_tet_ell_sum_with, hat_theta_closed, tet_lowest_closed, theta_lowest, unknot_lowest, AdmissibleTriple,
};
use crate::error::{Error, Result};
use crate::qseries::{geometric, Monomial, PochhammerTable, QSeries};
use crate::triangulation::{TetEdgeLabels, Triangulation};

/// One color per edge class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Coloring(pub Vec<u64>);

impl Coloring {
    pub fn max_color(&self) -> u64 {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

type TetKey = ([u64; 3], [u64; 4]);

type ThetaKey = (u64, u64, u64);

/// Shared evaluation context for one triangulation and target precision.
/// Hat factors and Pochhammer tables are cached by relative precision.
pub struct StateSum<'a> {
    tri: &'a Triangulation,
    labels: TetEdgeLabels,
    prec2: i64,
    /// DFS order of edge classes and, for each position, the faces whose
    /// last class is assigned there.
    order: Vec<usize>,
    faces_at: Vec<Vec<usize>>,
    tables: DashMap<i64, Arc<PochhammerTable>>,
    tets: DashMap<(TetKey, i64), Arc<QSeries>>,
    thetas: DashMap<(ThetaKey, i64), Arc<QSeries>>,
}

impl<'a> StateSum<'a> {
    pub fn new(tri: &'a Triangulation, prec2: i64) -> Self {
        let ne = tri.edge_classes().len();
        // Classes meeting the most faces first, so faces complete early.
        let mut order: Vec<usize> = (0..ne).collect();
        let count = |k: usize| tri.face_classes().iter().filter(|fc| fc.edges.contains(&k)).count();
        order.sort_by_key(|&k| (std::cmp::Reverse(count(k)), k));
        let pos: Vec<usize> = {
            let mut p = vec![0; ne];
            for (i, &k) in order.iter().enumerate() {
                p[k] = i;
            }
            p
        };
        let mut faces_at = vec![Vec::new(); ne];
        for (f, fc) in tri.face_classes().iter().enumerate() {
            let last = fc.edges.iter().map(|&k| pos[k]).max().unwrap();
            faces_at[last].push(f);
        }
        StateSum {
            tri,
            labels: tri.tet_edge_labels(),
            prec2,
            order,
            faces_at,
            tables: DashMap::new(),
            tets: DashMap::new(),
            thetas: DashMap::new(),
        }
    }

    pub fn prec2(&self) -> i64 {
        self.prec2
    }

    fn table(&self, rel: i64) -> Arc<PochhammerTable> {
        self.tables
            .entry(rel)
            .or_insert_with(|| Arc::new(PochhammerTable::new(rel)))
            .clone()
    }

    fn face_triple(&self, f: usize, colors: &[u64]) -> (u64, u64, u64) {
        let [x, y, z] = self.tri.face_classes()[f].edges.map(|k| colors[k]);
        (x, y, z)
    }

    /// The closed lowest monomial of the weight, or `None` if the coloring
    /// is not admissible.
    pub fn lowest_monomial(&self, colors: &[u64]) -> Option<Monomial> {
        if !self.tri.coloring_admissible(colors) {
            return None;
        }
        let mut sign = 1i64;
        let mut exp2 = 0i64;
        let mut take = |m: Monomial, inverse: bool| {
            if m.coeff < BigInt::from(0) {
                sign = -sign;
            }
            exp2 += if inverse { -m.exp2 } else { m.exp2 };
        };
        for j in 0..self.tri.num_tets() {
            let s = self.labels.six_colors(j, colors);
            // Admissible faces make every vertex triple admissible, so the
            // sum is never empty here.
            take(tet_lowest_closed(&s).ok()?, false);
        }
        for f in 0..self.tri.face_classes().len() {
            let (x, y, z) = self.face_triple(f, colors);
            let t = AdmissibleTriple::new(x, y, z).ok()?;
            take(theta_lowest(&t), true);
        }
        for &c in colors {
            take(unknot_lowest(c), false);
        }
        Some(Monomial::new(sign, exp2))
    }

    fn hat_tet(&self, key: TetKey, rel: i64) -> Arc<QSeries> {
        if let Some(v) = self.tets.get(&(key, rel)) {
            return v.clone();
        }
        let (s, t) = key;
        let st = crate::blocks::StData {
            s,
            t,
            s_star: s[0],
            t_plus: t[3],
        };
        let v = Arc::new(hat_tet_ell_sum_with(&st, &self.table(rel), rel));
        self.tets.insert((key, rel), v.clone());
        v
    }

    fn inv_hat_theta(&self, t: AdmissibleTriple, rel: i64) -> Arc<QSeries> {
        let key = (t.sorted().colors(), rel);
        if let Some(v) = self.thetas.get(&key) {
            return v.clone();
        }
        let hat = hat_theta_closed(&t, &self.table(rel), rel);
        let v = Arc::new(hat.invert_unit(rel).expect("hat Θ has constant term 1"));
        self.thetas.insert(key, v.clone());
        v
    }

    /// The weight of a coloring below `prec2`, or `None` if it is not admissible.
    pub fn weight(&self, colors: &[u64]) -> Option<QSeries> {
        let lo = self.lowest_monomial(colors)?;
        let rel = self.prec2 - lo.exp2;
        if rel <= 0 {
            return Some(QSeries::zero(Some(self.prec2)));
        }
        let cap = Some(rel);
        let mut acc = QSeries::one().truncate(rel);
        for j in 0..self.tri.num_tets() {
            let st = self.labels.six_colors(j, colors).st();
            acc = acc.mul_to(&self.hat_tet(st.canonical(), rel), cap);
        }
        for f in 0..self.tri.face_classes().len() {
            let (x, y, z) = self.face_triple(f, colors);
            let t = AdmissibleTriple::new(x, y, z).expect("checked admissible");
            acc = acc.mul_to(&self.inv_hat_theta(t, rel), cap);
        }
        for &c in colors {
            acc = acc.mul_to(&geometric(c + 1), cap);
        }
        Some(acc.mul_monomial(&lo))
    }

    /// All admissible colorings with every color `<= n` and at least one
    /// equal to `n` (when `exact_max`), in a deterministic order.
    pub fn colorings(&self, n: u64, exact_max: bool) -> Vec<Coloring> {
        let ne = self.order.len();
        if ne == 0 {
            return vec![Coloring(Vec::new())];
        }
        let first = self.order[0];
        let mut out: Vec<Coloring> = (0..=n)
            .into_par_iter()
            .flat_map_iter(|c0| {
                let mut colors = vec![0u64; ne];
                colors[first] = c0;
                let mut found = Vec::new();
                if self.faces_ok(0, &colors) {
                    self.dfs(1, n, exact_max, &mut colors, &mut found);
                }
                found
            })
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    fn faces_ok(&self, pos: usize, colors: &[u64]) -> bool {
        self.faces_at[pos].iter().all(|&f| {
            let (x, y, z) = self.face_triple(f, colors);
            AdmissibleTriple::is_admissible(x, y, z)
        })
    }

    fn dfs(&self, pos: usize, n: u64, exact_max: bool, colors: &mut Vec<u64>, out: &mut Vec<Coloring>) {
        if pos == self.order.len() {
            if !exact_max || colors.contains(&n) {
                out.push(Coloring(colors.clone()));
            }
            return;
        }
        let k = self.order[pos];
        for c in 0..=n {
            colors[k] = c;
            if self.faces_ok(pos, colors) {
                self.dfs(pos + 1, n, exact_max, colors, out);
            }
        }
        colors[k] = 0;
    }

    fn sum_weights(&self, colorings: &[Coloring]) -> QSeries {
        colorings
            .par_iter()
            .map(|c| self.weight(&c.0).expect("enumerated colorings are admissible"))
            .reduce(|| QSeries::zero(Some(self.prec2)), |a, b| &a + &b)
    }

    /// `TV^(n)`: the sum of weights over admissible colorings with all colors `<= n`.
    pub fn tv_n(&self, n: u64) -> QSeries {
        self.sum_weights(&self.colorings(n, false))
    }

    /// `TV^(n) - TV^(n-1)`: colorings whose largest color is exactly `n`.
    pub fn layer(&self, n: u64) -> QSeries {
        self.sum_weights(&self.colorings(n, true))
    }
}

/// `TV^(n)` below `prec2`.
pub fn tv_n(tri: &Triangulation, n: u64, prec2: i64) -> QSeries {
    StateSum::new(tri, prec2).tv_n(n)
}

/// The limit `I = lim (2/N) TV^(N)` and the constant terms of the
/// quasi-linear growth, found from the first window where the differences
/// `TV^(N) - TV^(N-2)` stop changing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizationReport {
    pub i_fkb: QSeries,
    pub i0: QSeries,
    pub two_i1: QSeries,
    /// Largest `N` whose state sum was used.
    pub n_used: u64,
    /// Precision (doubled exponent) below which the reported series are exact.
    pub stabilized_order2: i64,
    /// `TV^(N)` for `N = 0..=n_used`.
    pub tv: Vec<QSeries>,
}

impl StabilizationReport {
    /// `2 TV^(N) - N I - 2 I0 - (N mod 2) 2 I1`, which vanishes below
    /// `stabilized_order2` once `N` is in the stable range.
    pub fn reconstruction_defect(&self, n: u64) -> QSeries {
        let two_tv = self.tv[n as usize].scale(&BigInt::from(2));
        let mut d = &two_tv - &self.i_fkb.scale(&BigInt::from(n));
        d = &d - &self.i0.scale(&BigInt::from(2));
        if n % 2 == 1 {
            d = &d - &self.two_i1;
        }
        d.truncate(self.stabilized_order2)
    }

    /// Whether the quasi-linear model reproduces `TV^(N)` on the window of
    /// four values of `N` used for detection.
    pub fn reconstruction_holds(&self) -> bool {
        let lo = self.n_used.saturating_sub(3);
        (lo..=self.n_used).all(|n| self.reconstruction_defect(n).is_zero())
    }
}

/// Computes `TV^(N)` for `N = 0, 1, ...` until the differences
/// `D(N) = TV^(N) - TV^(N-2)` agree below `prec2` for four consecutive `N`
/// (two steps in each parity class), then solves for `I`, `I0` and `2 I1`.
pub fn fkb_limit(tri: &Triangulation, prec2: i64, n_max: u32) -> Result<StabilizationReport> {
    let ss = StateSum::new(tri, prec2);
    let mut tv: Vec<QSeries> = Vec::new();
    let mut diffs: Vec<Option<QSeries>> = Vec::new();
    for n in 0..=n_max as u64 {
        let layer = ss.layer(n);
        let total = match tv.last() {
            Some(prev) => prev + &layer,
            None => layer,
        };
        tv.push(total);
        let d = (n >= 2).then(|| &tv[n as usize] - &tv[n as usize - 2]);
        diffs.push(d);
        if n < 5 {
            continue;
        }
        let window: Vec<&QSeries> = (n - 3..=n).map(|k| diffs[k as usize].as_ref().unwrap()).collect();
        if window.windows(2).all(|w| w[0].first_mismatch(w[1]).is_none()) {
            let i = window[3].clone();
            let (even, odd) = if n % 2 == 0 { (n, n - 1) } else { (n - 1, n) };
            let i0 = &tv[even as usize] - &i.scale(&BigInt::from(even / 2));
            let two_i1 = &(&tv[odd as usize].scale(&BigInt::from(2)) - &i.scale(&BigInt::from(odd)))
                - &i0.scale(&BigInt::from(2));
            let report = StabilizationReport {
                i_fkb: i,
                i0,
                two_i1,
                n_used: n,
                stabilized_order2: prec2,
                tv,
            };
            debug_assert!(report.reconstruction_holds());
            return Ok(report);
        }
    }
    Err(Error::NoStabilization { n_max })
}
