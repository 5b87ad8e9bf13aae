//! The tetrahedron index `I_Δ(m, e)`, its symmetric form `J_Δ(a, b, c)`, the
//! product form `J^FKB`, the degree `ν` and the large-color weight `S_∞`.
//!
//! Every sum here has a summand exponent that is eventually increasing and
//! quadratic in the summation index, and every denominator is a product of
//! `1/(q;q)_n` with nonnegative exponents. A sum is cut at the first index
//! past the vertex of the quadratic whose exponent reaches the target
//! precision; all later summands then lie entirely above it.

use std::cmp::{max, min};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::blocks::SixColors;
use crate::qseries::{Monomial, PochhammerTable, QSeries};

fn sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Angle labels `(m, e)` of one ideal tetrahedron.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexLabel {
    pub m: i64,
    pub e: i64,
}

/// Quad coordinates `(a, b, c)` of one tetrahedron.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadTriple {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadTriple {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        QuadTriple { a, b, c }
    }

    pub fn min(&self) -> i64 {
        min(self.a, min(self.b, self.c))
    }

    /// `(a - s, b - s, c - s)` for `s = min(a, b, c)`, together with `s`.
    pub fn normalized(&self) -> (QuadTriple, i64) {
        let s = self.min();
        (self.translated(-s), s)
    }

    pub fn translated(&self, s: i64) -> QuadTriple {
        QuadTriple::new(self.a + s, self.b + s, self.c + s)
    }

    pub fn as_array(&self) -> [i64; 3] {
        [self.a, self.b, self.c]
    }

    pub fn sorted(&self) -> QuadTriple {
        let mut v = self.as_array();
        v.sort_unstable();
        QuadTriple::new(v[0], v[1], v[2])
    }

    /// The six orderings of the coordinates.
    pub fn permutations(&self) -> [QuadTriple; 6] {
        let QuadTriple { a, b, c } = *self;
        [
            QuadTriple::new(a, b, c),
            QuadTriple::new(a, c, b),
            QuadTriple::new(b, a, c),
            QuadTriple::new(b, c, a),
            QuadTriple::new(c, a, b),
            QuadTriple::new(c, b, a),
        ]
    }
}

impl fmt::Display for QuadTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Sum `Σ_{n >= n0} sign(n) q^(E(n)/2) * denominator(n)` below `prec2`, where
/// `E` is a quadratic with positive leading coefficient given on doubled
/// exponents and `denominator(n)` multiplies `1/(q;q)_k` factors.
fn quadratic_sum(
    n0: i64,
    exp2: impl Fn(i64) -> i64,
    den: impl Fn(i64) -> Vec<i64>,
    sign_of: impl Fn(i64) -> i64,
    prec2: i64,
) -> QSeries {
    // The vertex of E is at the first n with E(n+1) >= E(n); from there on E
    // is nondecreasing, so once E(n) >= prec2 past the vertex every later
    // summand vanishes below prec2.
    let mut vertex = n0;
    while exp2(vertex + 1) < exp2(vertex) {
        vertex += 1;
    }
    let mut last = n0;
    while last < vertex || exp2(last) < prec2 {
        last += 1;
    }
    let lowest = (n0..last).map(&exp2).min().unwrap_or(prec2);
    let rel_max = prec2 - lowest;
    if rel_max <= 0 {
        return QSeries::zero(Some(prec2));
    }
    let table = PochhammerTable::new(rel_max);
    let mut acc = QSeries::zero(Some(prec2));
    for n in n0..last {
        let e = exp2(n);
        let rel = prec2 - e;
        if rel <= 0 {
            continue;
        }
        let mut term = QSeries::one().truncate(rel);
        for k in den(n) {
            debug_assert!(k >= 0);
            term = term.mul_to(table.inv_poch(k as u64), Some(rel));
        }
        acc += &term.mul_monomial(&Monomial::new(sign_of(n), e));
    }
    debug_assert!(exp2(last) >= prec2 && exp2(last + 1) >= exp2(last));
    acc
}

/// `I_Δ(m, e) = Σ_{n >= max(0,-e)} (-1)^n q^(n(n+1)/2 - (n + e/2) m) / ((q;q)_n (q;q)_(n+e))`.
pub fn i_delta(l: IndexLabel, prec2: i64) -> QSeries {
    let IndexLabel { m, e } = l;
    quadratic_sum(
        max(0, -e),
        |n| n * (n + 1) - (2 * n + e) * m,
        |n| vec![n, n + e],
        sign,
        prec2,
    )
}

/// `J_Δ(a, b, c)` through its first expression `(-q^(1/2))^(-b) I_Δ(b-c, a-b)`.
pub fn j_delta(t: &QuadTriple, prec2: i64) -> QSeries {
    j_delta_form(t, 0, prec2)
}

/// The three expressions for `J_Δ`:
/// form 0 is `(-q^(1/2))^(-b) I_Δ(b-c, a-b)`, form 1 is
/// `(-q^(1/2))^(-c) I_Δ(c-a, b-c)`, form 2 is `(-q^(1/2))^(-a) I_Δ(a-b, c-a)`.
pub fn j_delta_form(t: &QuadTriple, form: usize, prec2: i64) -> QSeries {
    let QuadTriple { a, b, c } = *t;
    let (k, m, e) = match form {
        0 => (b, b - c, a - b),
        1 => (c, c - a, b - c),
        2 => (a, a - b, c - a),
        _ => panic!("J_Δ has three forms, got {form}"),
    };
    // (-q^(1/2))^(-k) shifts exponents by -k, so I_Δ is needed to prec2 + k.
    i_delta(IndexLabel { m, e }, prec2 + k).mul_monomial(&Monomial::neg_sqrt_q_pow(-k))
}

/// `ν(a,b,c) = a*b* + a*c* + b*c* - min(a,b,c)` with starred values
/// measured from the minimum.
pub fn nu(t: &QuadTriple) -> i64 {
    let (s, m) = t.normalized();
    s.a * s.b + s.a * s.c + s.b * s.c - m
}

/// `J^FKB(a,b,c) = (q;q)_inf Σ_n (-1)^n q^(n(3n+1)/2 + n(a+b+c) + (ab+bc+ca)/2) / ((q;q)_(n+a) (q;q)_(n+b) (q;q)_(n+c))`
/// over `n >= -min(a,b,c)`.
pub fn j_fkb(t: &QuadTriple, prec2: i64) -> QSeries {
    let QuadTriple { a, b, c } = *t;
    let sigma = a + b + c;
    let pair = a * b + b * c + c * a;
    let sum = quadratic_sum(
        -t.min(),
        |n| n * (3 * n + 1) + 2 * n * sigma + pair,
        |n| vec![n + a, n + b, n + c],
        sign,
        prec2,
    );
    times_poch_inf(&sum, prec2)
}

/// `f * (q;q)_inf` below `prec2`.
fn times_poch_inf(f: &QSeries, prec2: i64) -> QSeries {
    let Some(lo) = f.min_exp2() else {
        return QSeries::zero(Some(prec2));
    };
    let rel = prec2 - lo;
    if rel <= 0 {
        return QSeries::zero(Some(prec2));
    }
    let inf = crate::qseries::pochhammer_inf(rel);
    f.mul_to(&inf, Some(prec2))
}

/// `S_∞` of a colored tetrahedron, from the `α, β` sum, checked against
/// `(1-q) J^FKB(S1*, S2*, S3*)`.
///
/// The second display of `S_∞` carries an extra factor `(q;q)_inf` next to
/// `J^FKB`, which already contains one; that version is
/// [`s_infty_second_display`] and does not agree with the first. The form
/// without the extra factor is the one for which `Π_f 1/(1-q) Π_v S_∞`
/// equals `Π J^FKB`.
pub fn s_infty(s: &SixColors, prec2: i64) -> QSeries {
    let first = s_infty_alpha_beta(s, prec2);
    let second = s_infty_fkb(s, prec2);
    assert!(
        first.agrees_to(&second, prec2),
        "S_inf forms disagree for {s:?}: {first} vs {second}"
    );
    first
}

/// `(α, β) = ((C1 - C3)/2, (C1 - C2)/2)` for opposite-edge sums `C1 >= C2 >= C3`.
pub fn alpha_beta(s: &SixColors) -> (i64, i64) {
    let mut c = s.opposite_sums().map(|x| x as i64);
    c.sort_unstable_by(|x, y| y.cmp(x));
    debug_assert!((c[0] - c[2]) % 2 == 0 && (c[0] - c[1]) % 2 == 0);
    ((c[0] - c[2]) / 2, (c[0] - c[1]) / 2)
}

/// First form: `(1-q)(q;q)_inf Σ_{n>=0} (-1)^n q^(3n²/2 + (α+β+1/2)n + αβ/2) / ((q;q)_n (q;q)_(n+α) (q;q)_(n+β))`.
pub fn s_infty_alpha_beta(s: &SixColors, prec2: i64) -> QSeries {
    let (al, be) = alpha_beta(s);
    let sum = quadratic_sum(
        0,
        |n| 3 * n * n + (2 * al + 2 * be + 1) * n + al * be,
        |n| vec![n, n + al, n + be],
        sign,
        prec2,
    );
    one_minus_q(&times_poch_inf(&sum, prec2), prec2)
}

/// `(1-q) J^FKB(S1*, S2*, S3*)`.
pub fn s_infty_fkb(s: &SixColors, prec2: i64) -> QSeries {
    let [x, y, z] = s.st().s_starred().map(|v| v as i64);
    one_minus_q(&j_fkb(&QuadTriple::new(x, y, z), prec2), prec2)
}

/// The second display read literally: `(1-q)(q;q)_inf J^FKB(S1*, S2*, S3*)`.
pub fn s_infty_second_display(s: &SixColors, prec2: i64) -> QSeries {
    times_poch_inf(&s_infty_fkb(s, prec2), prec2)
}

fn one_minus_q(f: &QSeries, prec2: i64) -> QSeries {
    f.mul_to(&QSeries::from_i64s(0, &[1, 0, -1], None), Some(prec2))
}

/// `(-q^(1/2))^(-χ) Π_j J^FKB(a_j, b_j, c_j)` below `prec2`.
pub fn e_infty(quads: &[QuadTriple], chi: i64, prec2: i64) -> QSeries {
    weighted_product(quads, chi, prec2, j_fkb)
}

/// `(-q^(1/2))^(-χ) Π_j f(t_j)` below `prec2`, where each factor's lowest
/// monomial is `±q^(ν/2)`; factors are computed only as far as the product
/// needs them.
pub(crate) fn weighted_product(
    quads: &[QuadTriple],
    chi: i64,
    prec2: i64,
    f: impl Fn(&QuadTriple, i64) -> QSeries,
) -> QSeries {
    let nus: Vec<i64> = quads.iter().map(nu).collect();
    let total: i64 = nus.iter().sum::<i64>() - chi;
    let mut acc = QSeries::monomial(1, 0);
    for (t, v) in quads.iter().zip(&nus) {
        // Other factors contribute at least total - v to the degree.
        let need = prec2 - (total - v);
        acc = acc.mul_to(&f(t, need), Some(prec2 + chi));
    }
    acc.mul_monomial(&Monomial::neg_sqrt_q_pow(-chi)).truncate(prec2)
}

/// One failed identity found by [`verify_prop1`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop1Mismatch {
    pub triple: QuadTriple,
    /// `"fkb"` when `J^FKB != J_Δ`, `"form1"`/`"form2"` when another
    /// expression for `J_Δ` differs from the first.
    pub check: String,
    pub first_exp2: i64,
}

/// Outcome of comparing `J^FKB` and `J_Δ` over a cube of triples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop1Report {
    pub range: i64,
    pub prec2: i64,
    pub checked: usize,
    pub mismatches: Vec<Prop1Mismatch>,
}

impl Prop1Report {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// All triples with `|a|, |b|, |c| <= range` in lexicographic order.
pub fn cube(range: i64) -> Vec<QuadTriple> {
    let r = -range..=range;
    let mut out = Vec::new();
    for a in r.clone() {
        for b in r.clone() {
            for c in r.clone() {
                out.push(QuadTriple::new(a, b, c));
            }
        }
    }
    out
}

/// Checks `J^FKB = J_Δ` (and the agreement of the three `J_Δ` expressions)
/// below `prec2` for every triple with entries in `[-range, range]`.
pub fn verify_prop1(range: i64, prec2: i64) -> Prop1Report {
    let triples = cube(range);
    let mismatches: Vec<Vec<Prop1Mismatch>> = triples
        .par_iter()
        .map(|t| {
            let mut out = Vec::new();
            let j = j_delta(t, prec2);
            let mut push = |check: &str, other: &QSeries| {
                if let Some(e) = j.first_mismatch(other) {
                    out.push(Prop1Mismatch {
                        triple: *t,
                        check: check.to_string(),
                        first_exp2: e,
                    });
                }
            };
            push("fkb", &j_fkb(t, prec2));
            push("form1", &j_delta_form(t, 1, prec2));
            push("form2", &j_delta_form(t, 2, prec2));
            out
        })
        .collect();
    Prop1Report {
        range,
        prec2,
        checked: triples.len(),
        mismatches: mismatches.into_iter().flatten().collect(),
    }
}
