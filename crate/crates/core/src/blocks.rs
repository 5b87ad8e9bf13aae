//! Spin-network building blocks: the unknot `U`, the theta graph `Θ` and the
//! tetrahedral network `Tet`, together with their extremal monomials,
//! hat-normalizations and large-color limits.
//!
//! Every block is a palindromic Laurent polynomial in `q^(1/2)`. Two
//! evaluation routes exist for each: the literal quantum-integer formulas
//! (exact, expensive for large colors) and the `(q;q)_n` forms, which give a
//! closed lowest monomial and a power series with constant term 1 that can be
//! truncated cheaply.

use std::cmp::{max, min};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::qseries::{
    exact_quotient, geometric, pochhammer, quantum_integer, quantum_multinomial, Monomial, PochhammerTable, QSeries,
};
use crate::tetindex::{j_fkb, nu, QuadTriple};

fn sign(k: u64) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Three colors meeting at a trivalent vertex: even sum and triangle inequalities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissibleTriple {
    a: u64,
    b: u64,
    c: u64,
}

impl AdmissibleTriple {
    pub fn new(a: u64, b: u64, c: u64) -> Result<Self> {
        if Self::is_admissible(a, b, c) {
            Ok(AdmissibleTriple { a, b, c })
        } else {
            Err(Error::InadmissibleTriple(a, b, c))
        }
    }

    pub fn is_admissible(a: u64, b: u64, c: u64) -> bool {
        (a + b + c).is_multiple_of(2) && a <= b + c && b <= a + c && c <= a + b
    }

    pub fn colors(&self) -> (u64, u64, u64) {
        (self.a, self.b, self.c)
    }

    /// `(a + b + c) / 2`.
    pub fn half_sum(&self) -> u64 {
        (self.a + self.b + self.c) / 2
    }

    /// The multinomial parts `((-a+b+c)/2, (a-b+c)/2, (a+b-c)/2)`.
    pub fn parts(&self) -> [u64; 3] {
        let s = self.half_sum();
        [s - self.a, s - self.b, s - self.c]
    }

    /// Same colors in nondecreasing order; `Θ` depends only on this.
    pub fn sorted(&self) -> Self {
        let mut v = [self.a, self.b, self.c];
        v.sort_unstable();
        AdmissibleTriple {
            a: v[0],
            b: v[1],
            c: v[2],
        }
    }

    pub fn shifted(&self, n: u64) -> Self {
        AdmissibleTriple {
            a: self.a + n,
            b: self.b + n,
            c: self.c + n,
        }
    }
}

/// Six colors laid out as the matrix `(a b e; d c f)`. Opposite pairs are
/// `(a, d)`, `(b, c)`, `(e, f)`; the vertex triples are `(a,b,e)`,
/// `(a,c,f)`, `(c,d,e)`, `(b,d,f)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SixColors {
    pub a: u64,
    pub b: u64,
    pub e: u64,
    pub d: u64,
    pub c: u64,
    pub f: u64,
}

impl SixColors {
    /// Arguments in matrix reading order `a b e d c f`.
    pub fn new(a: u64, b: u64, e: u64, d: u64, c: u64, f: u64) -> Result<Self> {
        let s = SixColors { a, b, e, d, c, f };
        for (which, (x, y, z)) in s.vertex_triples().into_iter().enumerate() {
            if !AdmissibleTriple::is_admissible(x, y, z) {
                return Err(Error::InadmissibleSix {
                    which: which + 1,
                    x,
                    y,
                    z,
                });
            }
        }
        Ok(s)
    }

    pub fn vertex_triples(&self) -> [(u64, u64, u64); 4] {
        let SixColors { a, b, e, d, c, f } = *self;
        [(a, b, e), (a, c, f), (c, d, e), (b, d, f)]
    }

    /// Sums of opposite colors `(a + d, b + c, e + f)`.
    pub fn opposite_sums(&self) -> [u64; 3] {
        [self.a + self.d, self.b + self.c, self.e + self.f]
    }

    pub fn shifted(&self, n: u64) -> Self {
        SixColors {
            a: self.a + n,
            b: self.b + n,
            e: self.e + n,
            d: self.d + n,
            c: self.c + n,
            f: self.f + n,
        }
    }

    pub fn st(&self) -> StData {
        StData::from_colors(self.a, self.b, self.e, self.d, self.c, self.f)
            .expect("admissible colors have integral S and T")
    }

    /// The 24 relabelings induced by symmetries of the tetrahedron.
    pub fn tetrahedral_images(&self) -> Vec<SixColors> {
        // Edge slots by vertex pair: a=01 b=02 f=03 e=12 c=13 d=23.
        let by_pair = |s: &SixColors, i: usize, j: usize| -> u64 {
            match (min(i, j), max(i, j)) {
                (0, 1) => s.a,
                (0, 2) => s.b,
                (0, 3) => s.f,
                (1, 2) => s.e,
                (1, 3) => s.c,
                (2, 3) => s.d,
                _ => unreachable!(),
            }
        };
        let mut out = Vec::with_capacity(24);
        for p in crate::triangulation::Perm4::all() {
            let g = |i: usize, j: usize| by_pair(self, p.apply(i), p.apply(j));
            out.push(SixColors {
                a: g(0, 1),
                b: g(0, 2),
                f: g(0, 3),
                e: g(1, 2),
                c: g(1, 3),
                d: g(2, 3),
            });
        }
        out
    }
}

/// `S_1, S_2, S_3` (half sums over pairs of opposite edges) and `T_1..T_4`
/// (half sums at the vertex triples), with `S* = min S_i`, `T+ = max T_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StData {
    pub s: [u64; 3],
    pub t: [u64; 4],
    pub s_star: u64,
    pub t_plus: u64,
}

impl StData {
    pub fn from_colors(a: u64, b: u64, e: u64, d: u64, c: u64, f: u64) -> Result<Self> {
        let sums = [a + d + b + c, a + d + e + f, b + c + e + f];
        let tsums = [a + b + e, a + c + f, c + d + e, b + d + f];
        if let Some(which) = tsums.iter().position(|x| x % 2 != 0) {
            let (x, y, z) = SixColors { a, b, e, d, c, f }.vertex_triples()[which];
            return Err(Error::InadmissibleSix {
                which: which + 1,
                x,
                y,
                z,
            });
        }
        // Each S_i is a sum of two vertex-triple sums minus twice a color, so
        // S_i is integral whenever every T_j is.
        let s = sums.map(|x| x / 2);
        let t = tsums.map(|x| x / 2);
        Ok(StData {
            s,
            t,
            s_star: *s.iter().min().unwrap(),
            t_plus: *t.iter().max().unwrap(),
        })
    }

    pub fn is_empty_sum(&self) -> bool {
        self.t_plus > self.s_star
    }

    /// `S_i* = S_i - S*`.
    pub fn s_starred(&self) -> [u64; 3] {
        self.s.map(|x| x - self.s_star)
    }

    /// `T_j* = S* - T_j` (only meaningful when the sum is nonempty).
    pub fn t_starred(&self) -> [u64; 4] {
        self.t.map(|x| self.s_star - x)
    }

    /// Key for caches: `Tet` depends only on the multisets `{S_i}`, `{T_j}`.
    pub fn canonical(&self) -> ([u64; 3], [u64; 4]) {
        let mut s = self.s;
        let mut t = self.t;
        s.sort_unstable();
        t.sort_unstable();
        (s, t)
    }

    /// Doubled exponent of the `k`-th summand's lowest term in the `Tet` sum.
    fn summand_low_exp2(&self, k: u64) -> i64 {
        let k = k as i64;
        let sq: i64 = self.s.iter().map(|&x| (x as i64 - k).pow(2)).sum::<i64>()
            + self.t.iter().map(|&x| (k - x as i64).pow(2)).sum::<i64>();
        let num = k * k - sq;
        debug_assert!(num % 2 == 0);
        -k - num / 2
    }
}

/// `U(a) = (-1)^a [a + 1]`.
pub fn unknot(a: u64) -> QSeries {
    quantum_integer(a + 1).scale(&BigInt::from(sign(a)))
}

/// `Θ(a,b,c) = (-1)^s [s+1] [s; s-a, s-b, s-c]` with `s = (a+b+c)/2`.
pub fn theta(t: &AdmissibleTriple) -> QSeries {
    let s = t.half_sum();
    let m = quantum_multinomial(s, &t.parts()).expect("parts sum to s");
    (&quantum_integer(s + 1) * &m).scale(&BigInt::from(sign(s)))
}

/// `Tet` from the quantum multinomial sum over `T+ <= k <= S*`. Returns
/// exactly zero when the range is empty.
pub fn tet(s: &SixColors) -> QSeries {
    let st = s.st();
    let mut acc = QSeries::zero(None);
    for k in st.t_plus..=st.s_star {
        let mut parts = Vec::with_capacity(7);
        parts.extend(st.s.iter().map(|&x| x - k));
        parts.extend(st.t.iter().map(|&x| k - x));
        let m = quantum_multinomial(k, &parts).expect("parts sum to k");
        let term = (&quantum_integer(k + 1) * &m).scale(&BigInt::from(sign(k)));
        acc += &term;
    }
    acc
}

/// `Tet` from the `(q;q)_n` form: summand `k` equals
/// `(-1)^k q^(d(k)) (1-q^(k+1))/(1-q) (q;q)_k / (prod (q;q)_(S_i-k) prod (q;q)_(k-T_j))`.
pub fn tet_pochhammer(s: &SixColors) -> QSeries {
    let st = s.st();
    let mut acc = QSeries::zero(None);
    for k in st.t_plus..=st.s_star {
        let num = &geometric(k + 1) * &pochhammer(k);
        let mut den = QSeries::one();
        for &x in &st.s {
            den = &den * &pochhammer(x - k);
        }
        for &x in &st.t {
            den = &den * &pochhammer(k - x);
        }
        let term = exact_quotient(&num, &den)
            .scale(&BigInt::from(sign(k)))
            .shift(st.summand_low_exp2(k));
        acc += &term;
    }
    acc
}

/// Which block an extremal-monomial query refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    Unknot(u64),
    Theta(AdmissibleTriple),
    Tet(SixColors),
}

/// The closed-form monomial `lt(f) q^δ(f)` for the blocks.
///
/// For `U` and `Θ` this is the highest monomial (the lowest one has `δ`
/// negated; the blocks are palindromic). For `Tet` the formula is evaluated
/// at `T+` and in general matches neither end; see [`tet_lowest_closed`].
pub fn closed_form_extremal(block: &Block) -> Monomial {
    match *block {
        Block::Unknot(a) => Monomial::new(sign(a), a as i64),
        Block::Theta(t) => {
            let (a, b, c) = t.colors();
            let (a, b, c) = (a as i64, b as i64, c as i64);
            // 8δ = -(a²+b²+c²) + 2(ab+ac+bc) + 2(a+b+c)
            let eight_delta = -(a * a + b * b + c * c) + 2 * (a * b + a * c + b * c) + 2 * (a + b + c);
            debug_assert!(eight_delta % 4 == 0);
            Monomial::new(sign(t.half_sum()), eight_delta / 4)
        }
        Block::Tet(s) => {
            let st = s.st();
            Monomial::new(sign(st.t_plus), tet_delta_exp2_at(&st, st.t_plus))
        }
    }
}

/// `2 * [ (-(x)^2 + Σ(S_i - x)^2 + Σ(x - T_j)^2)/4 - x/2 ]`.
fn tet_delta_exp2_at(st: &StData, x: u64) -> i64 {
    let x = x as i64;
    let sq: i64 = st.s.iter().map(|&v| (v as i64 - x).pow(2)).sum::<i64>()
        + st.t.iter().map(|&v| (x - v as i64).pow(2)).sum::<i64>();
    let num = -x * x + sq;
    debug_assert!(num % 2 == 0);
    num / 2 - x
}

/// Lowest monomial of `U(a)`: `(-1)^a q^(-a/2)`.
pub fn unknot_lowest(a: u64) -> Monomial {
    Monomial::new(sign(a), -(a as i64))
}

/// Lowest monomial of `Θ`: `(-1)^s q^(-(s + Σ_{i<j} x_i x_j)/2)`.
pub fn theta_lowest(t: &AdmissibleTriple) -> Monomial {
    let [x, y, z] = t.parts().map(|v| v as i64);
    Monomial::new(sign(t.half_sum()), -(t.half_sum() as i64) - (x * y + y * z + z * x))
}

/// Lowest monomial of a nonvanishing `Tet`: the `k = S*` summand, whose
/// lowest degree is strictly below every other summand's.
pub fn tet_lowest_closed(s: &SixColors) -> Result<Monomial> {
    let st = s.st();
    if st.is_empty_sum() {
        return Err(Error::EmptyTet {
            t_plus: st.t_plus,
            s_star: st.s_star,
        });
    }
    Ok(Monomial::new(sign(st.s_star), st.summand_low_exp2(st.s_star)))
}

/// `U(a)` truncated below `prec2`.
pub fn unknot_series(a: u64, prec2: i64) -> QSeries {
    let lo = unknot_lowest(a);
    geometric(a + 1).truncate(prec2 - lo.exp2).mul_monomial(&lo)
}

/// `hat Θ = (1-q^(s+1))/(1-q) (q;q)_s / prod (q;q)_(x_i)` to relative precision `rel2`.
pub fn hat_theta_closed(t: &AdmissibleTriple, table: &PochhammerTable, rel2: i64) -> QSeries {
    if rel2 <= 0 {
        return QSeries::zero(Some(rel2));
    }
    let cap = Some(rel2);
    let s = t.half_sum();
    let mut acc = geometric(s + 1).mul_to(table.poch(s), cap);
    for x in t.parts() {
        acc = acc.mul_to(table.inv_poch(x), cap);
    }
    acc
}

/// `Θ` truncated below `prec2`, through its `(q;q)_n` form.
pub fn theta_series(t: &AdmissibleTriple, prec2: i64) -> QSeries {
    let lo = theta_lowest(t);
    let rel = prec2 - lo.exp2;
    if rel <= 0 {
        return QSeries::zero(Some(prec2));
    }
    let table = PochhammerTable::new(rel);
    hat_theta_closed(t, &table, rel).mul_monomial(&lo)
}

/// `Tet` truncated below `prec2`, summing the `(q;q)_n` form over `k`.
/// Summands whose lowest degree is at or above `prec2` are skipped.
pub fn tet_series(s: &SixColors, prec2: i64) -> QSeries {
    let st = s.st();
    if st.is_empty_sum() {
        return QSeries::zero(None);
    }
    let lowest = st.summand_low_exp2(st.s_star);
    let rel_max = prec2 - lowest;
    if rel_max <= 0 {
        return QSeries::zero(Some(prec2));
    }
    let table = PochhammerTable::new(rel_max);
    tet_series_with(&st, &table, prec2)
}

fn tet_series_with(st: &StData, table: &PochhammerTable, prec2: i64) -> QSeries {
    let mut acc = QSeries::zero(Some(prec2));
    for k in (st.t_plus..=st.s_star).rev() {
        let low = st.summand_low_exp2(k);
        let rel = prec2 - low;
        if rel <= 0 {
            // Summand degrees increase as k moves down from S*.
            break;
        }
        let cap = Some(rel);
        let mut term = geometric(k + 1).mul_to(table.poch(k), cap);
        for &x in &st.s {
            term = term.mul_to(table.inv_poch(x - k), cap);
        }
        for &x in &st.t {
            term = term.mul_to(table.inv_poch(k - x), cap);
        }
        acc += &term.mul_monomial(&Monomial::new(sign(k), low));
    }
    acc
}

/// `hat Θ` to precision `prec2`, dividing by the lowest monomial of the
/// computed expansion.
pub fn hat_theta(t: &AdmissibleTriple, prec2: i64) -> Result<QSeries> {
    let lo = theta_lowest(t);
    theta_series(t, prec2 + lo.exp2).hat()
}

/// `hat Tet` to precision `prec2`, dividing by the lowest monomial of the
/// computed expansion.
pub fn hat_tet(s: &SixColors, prec2: i64) -> Result<QSeries> {
    let lo = tet_lowest_closed(s)?;
    let series = tet_series(s, prec2 + lo.exp2);
    let hat = series.hat()?;
    debug_assert_eq!(series.lowest()?, lo);
    Ok(hat)
}

/// `hat Tet` from the shifted sum over `l = S* - k`:
/// `1/(1-q) Σ_l (-1)^l (1-q^(S*-l+1)) q^(l(3l+1)/2 + l ΣS_i*) (q;q)_(S*-l) / (prod (q;q)_(S_i*+l) prod (q;q)_(T_j*-l))`.
pub fn hat_tet_ell_sum(s: &SixColors, prec2: i64) -> Result<QSeries> {
    let st = s.st();
    if st.is_empty_sum() {
        return Err(Error::EmptyTet {
            t_plus: st.t_plus,
            s_star: st.s_star,
        });
    }
    if prec2 <= 0 {
        return Ok(QSeries::zero(Some(prec2)));
    }
    let table = PochhammerTable::new(prec2);
    Ok(hat_tet_ell_sum_with(&st, &table, prec2))
}

pub(crate) fn hat_tet_ell_sum_with(st: &StData, table: &PochhammerTable, prec2: i64) -> QSeries {
    let ss = st.s_starred();
    let ts = st.t_starred();
    let sigma: u64 = ss.iter().sum();
    let mut acc = QSeries::zero(Some(prec2));
    for l in 0..=(st.s_star - st.t_plus) {
        let e2 = (l * (3 * l + 1) + 2 * l * sigma) as i64;
        let rel = prec2 - e2;
        if rel <= 0 {
            break;
        }
        let cap = Some(rel);
        let k = st.s_star - l;
        let mut term = geometric(k + 1).mul_to(table.poch(k), cap);
        for &x in &ss {
            term = term.mul_to(table.inv_poch(x + l), cap);
        }
        for &x in &ts {
            term = term.mul_to(table.inv_poch(x - l), cap);
        }
        acc += &term.mul_monomial(&Monomial::new(sign(l), e2));
    }
    acc
}

/// `1 / ((1-q) (q;q)_inf^2)`, the large-color limit of `hat Θ`.
pub fn theta_limit(prec2: i64) -> QSeries {
    if prec2 <= 0 {
        return QSeries::zero(Some(prec2));
    }
    let table = PochhammerTable::new(prec2);
    let inv = table.inv_poch_inf();
    table.inv_poch(1).mul_to(inv, Some(prec2)).mul_to(inv, Some(prec2))
}

/// `(-q^(-1/2))^ν(S*) J^FKB(S*) / ((1-q) (q;q)_inf^4)`, the stated large-color
/// limit of `hat Tet`. Arguments are the starred values, one of which is 0.
///
/// The constant term of this series is `(-1)^ν`, so for odd `ν` it is the
/// negative of the actual limit of `hat Tet`.
pub fn tet_limit(s1: u64, s2: u64, s3: u64, prec2: i64) -> Result<QSeries> {
    if min(s1, min(s2, s3)) != 0 {
        return Err(Error::UnnormalizedLimit(s1, s2, s3));
    }
    if prec2 <= 0 {
        return Ok(QSeries::zero(Some(prec2)));
    }
    let triple = QuadTriple::new(s1 as i64, s2 as i64, s3 as i64);
    let v = nu(&triple);
    // J^FKB starts at q^(ν/2), so it is needed to prec2 + ν.
    let j = j_fkb(&triple, prec2 + v);
    let table = PochhammerTable::new(prec2);
    let mut acc = j
        .mul_monomial(&Monomial::neg_sqrt_q_pow(-v))
        .mul_to(table.inv_poch(1), Some(prec2));
    for _ in 0..4 {
        acc = acc.mul_to(table.inv_poch_inf(), Some(prec2));
    }
    Ok(acc)
}

/// [`tet_limit`] multiplied by `(-1)^ν(S*)`: `q^(-ν/2) J^FKB(S*) / ((1-q) (q;q)_inf^4)`,
/// which has constant term 1 like `hat Tet`.
pub fn tet_limit_signed(s1: u64, s2: u64, s3: u64, prec2: i64) -> Result<QSeries> {
    let lim = tet_limit(s1, s2, s3, prec2)?;
    Ok(if nu(&QuadTriple::new(s1 as i64, s2 as i64, s3 as i64)) % 2 == 0 {
        lim
    } else {
        -&lim
    })
}

/// Result of scanning `N = 0..=shift_max` for stabilization of a hat block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabOutcome {
    /// Smallest `N` such that the shifts by `2N` and `2N + 2` both agree with
    /// the limit below the target order.
    pub first_n: Option<u64>,
    /// For each scanned `N`, the first exponent (doubled) of disagreement.
    pub mismatches: Vec<Option<i64>>,
}

impl StabOutcome {
    pub fn stabilized(&self) -> bool {
        self.first_n.is_some()
    }
}

fn scan_stabilization(
    limit: &QSeries,
    order2: i64,
    shift_max: u64,
    mut at: impl FnMut(u64) -> Result<QSeries>,
) -> Result<StabOutcome> {
    let mut mismatches = Vec::new();
    let mut first_n = None;
    for n in 0..=shift_max {
        let hat = at(n)?;
        let m = hat.truncate(order2).first_mismatch(&limit.truncate(order2));
        mismatches.push(m);
        if n > 0 && m.is_none() && mismatches[n as usize - 1].is_none() && first_n.is_none() {
            first_n = Some(n - 1);
        }
    }
    Ok(StabOutcome { first_n, mismatches })
}

/// Compare `hat Θ(a+2N, b+2N, c+2N)` with [`theta_limit`] below `order2`.
pub fn theta_stabilization(t: &AdmissibleTriple, order2: i64, shift_max: u64) -> Result<StabOutcome> {
    let limit = theta_limit(order2);
    scan_stabilization(&limit, order2, shift_max, |n| hat_theta(&t.shifted(2 * n), order2))
}

/// Compare `hat Tet(colors + 2N)` with [`tet_limit`] below `order2`.
pub fn tet_stabilization(s: &SixColors, order2: i64, shift_max: u64) -> Result<StabOutcome> {
    let [s1, s2, s3] = s.st().s_starred();
    let limit = tet_limit(s1, s2, s3, order2)?;
    scan_stabilization(&limit, order2, shift_max, |n| hat_tet(&s.shifted(2 * n), order2))
}

/// Compare `hat Tet(colors + 2N)` with [`tet_limit_signed`] below `order2`.
pub fn tet_stabilization_signed(s: &SixColors, order2: i64, shift_max: u64) -> Result<StabOutcome> {
    let [s1, s2, s3] = s.st().s_starred();
    let limit = tet_limit_signed(s1, s2, s3, order2)?;
    scan_stabilization(&limit, order2, shift_max, |n| hat_tet(&s.shifted(2 * n), order2))
}

/// All admissible triples with colors `<= max_color`.
pub fn admissible_triples(max_color: u64) -> Vec<AdmissibleTriple> {
    let mut out = Vec::new();
    for a in 0..=max_color {
        for b in 0..=max_color {
            for c in 0..=max_color {
                if let Ok(t) = AdmissibleTriple::new(a, b, c) {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// All six-tuples with colors `<= max_color` whose vertex triples are admissible.
pub fn admissible_six(max_color: u64) -> Vec<SixColors> {
    let r = 0..=max_color;
    let mut out = Vec::new();
    for a in r.clone() {
        for b in r.clone() {
            for e in r.clone() {
                if !AdmissibleTriple::is_admissible(a, b, e) {
                    continue;
                }
                for d in r.clone() {
                    for c in r.clone() {
                        if !AdmissibleTriple::is_admissible(c, d, e) {
                            continue;
                        }
                        for f in r.clone() {
                            if let Ok(s) = SixColors::new(a, b, e, d, c, f) {
                                out.push(s);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Whether the `Tet` sum is empty. Never the case for admissible colors,
/// since `S_i - T_j` is half of a triangle-inequality slack.
pub fn tet_vanishes(s: &SixColors) -> bool {
    s.st().is_empty_sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(terms: &[(i64, i64)], prec2: Option<i64>) -> QSeries {
        QSeries::from_terms(terms.iter().copied(), prec2)
    }

    fn t3(a: u64, b: u64, c: u64) -> AdmissibleTriple {
        AdmissibleTriple::new(a, b, c).unwrap()
    }

    fn six(v: [u64; 6]) -> SixColors {
        SixColors::new(v[0], v[1], v[2], v[3], v[4], v[5]).unwrap()
    }

    #[test]
    fn unknot_values() {
        assert_eq!(unknot(0), QSeries::one());
        assert_eq!(unknot(1), series(&[(-1, -1), (1, -1)], None));
        assert_eq!(unknot(2), series(&[(-2, 1), (0, 1), (2, 1)], None));
    }

    #[test]
    fn theta_values() {
        assert_eq!(theta(&t3(0, 0, 0)), QSeries::one());
        assert_eq!(theta(&t3(1, 1, 0)), series(&[(-1, -1), (1, -1)], None));
        assert!(matches!(
            AdmissibleTriple::new(2, 0, 0),
            Err(Error::InadmissibleTriple(2, 0, 0))
        ));
    }

    #[test]
    fn tet_values() {
        assert_eq!(tet(&six([0; 6])), QSeries::one());
        let s = six([1, 1, 0, 1, 1, 0]);
        assert_eq!(tet(&s), series(&[(-1, -1), (1, -1)], None));
        assert_eq!(tet_pochhammer(&s), tet(&s));
    }

    #[test]
    fn st_data_examples() {
        let z = six([0; 6]).st();
        assert_eq!((z.s, z.t), ([0; 3], [0; 4]));
        let s = six([1, 1, 0, 1, 1, 0]).st();
        assert_eq!((s.s, s.t, s.s_star, s.t_plus), ([2, 1, 1], [1, 1, 1, 1], 1, 1));
        let s = six([2; 6]).st();
        assert_eq!((s.s, s.t), ([4, 4, 4], [3, 3, 3, 3]));
        assert!(StData::from_colors(1, 0, 0, 0, 0, 0).is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_extremal(&Block::Unknot(1)), Monomial::new(-1, 1));
        assert_eq!(closed_form_extremal(&Block::Theta(t3(1, 1, 0))), Monomial::new(-1, 1));
        assert_eq!(closed_form_extremal(&Block::Tet(six([0; 6]))), Monomial::new(1, 0));
    }

    #[test]
    fn closed_form_tet_is_off_for_all_twos() {
        // Colors all 2: the k = T+ summand gives the closed form's -3, but the
        // actual extremes come from k = S* at -5 and +5.
        let s = six([2; 6]);
        let exact = tet(&s);
        assert_eq!(closed_form_extremal(&Block::Tet(s)), Monomial::new(-1, -6));
        assert_eq!(exact.lowest().unwrap(), Monomial::new(1, -10));
        assert_eq!(exact.highest().unwrap(), Monomial::new(1, 10));
        assert_eq!(tet_lowest_closed(&s).unwrap(), Monomial::new(1, -10));
    }

    #[test]
    fn hat_examples() {
        assert_eq!(
            hat_theta(&t3(1, 1, 0), 12).unwrap(),
            series(&[(0, 1), (2, 1)], Some(12))
        );
        assert_eq!(hat_theta(&t3(0, 0, 0), 12).unwrap(), QSeries::one().truncate(12));
        assert_eq!(hat_tet(&six([0; 6]), 12).unwrap(), QSeries::one().truncate(12));
    }

    #[test]
    fn admissible_colors_never_give_an_empty_sum() {
        assert!(!admissible_six(4).iter().any(tet_vanishes));
    }

    #[test]
    fn hat_tet_rejects_empty_sum() {
        // Even vertex sums but (a, b, e) = (2, 0, 0) violates the triangle
        // inequality: S = (1, 1, 0), T = (1, 1, 0, 0).
        let s = SixColors {
            a: 2,
            b: 0,
            e: 0,
            d: 0,
            c: 0,
            f: 0,
        };
        assert!(SixColors::new(2, 0, 0, 0, 0, 0).is_err());
        assert!(tet_vanishes(&s));
        assert_eq!(tet(&s), QSeries::zero(None));
        assert!(matches!(hat_tet(&s, 8), Err(Error::EmptyTet { t_plus: 1, s_star: 0 })));
    }

    #[test]
    fn truncated_routes_match_exact() {
        for s in admissible_six(3) {
            let exact = tet(&s);
            let Some(lo) = exact.min_exp2() else { continue };
            let p = lo + 9;
            assert_eq!(tet_series(&s, p), exact.truncate(p), "{s:?}");
        }
        for t in admissible_triples(5) {
            let exact = theta(&t);
            let p = exact.min_exp2().unwrap() + 11;
            assert_eq!(theta_series(&t, p), exact.truncate(p), "{t:?}");
        }
        for a in 0..6 {
            assert_eq!(unknot_series(a, 3), unknot(a).truncate(3));
        }
    }

    #[test]
    fn ell_sum_matches_hat() {
        for s in admissible_six(4).into_iter().filter(|s| !tet_vanishes(s)) {
            assert_eq!(hat_tet(&s, 14).unwrap(), hat_tet_ell_sum(&s, 14).unwrap(), "{s:?}");
        }
    }

    #[test]
    fn theta_limit_expansion() {
        // (1 + q + q^2 + q^3)(1 + 2q + 5q^2 + 10q^3) = 1 + 3q + 8q^2 + 18q^3 + ...
        let lim = theta_limit(8);
        assert_eq!(lim, series(&[(0, 1), (2, 3), (4, 8), (6, 18)], Some(8)));
        let direct = QSeries::from_i64s(0, &[1, 0, -1], None).invert_unit(8).unwrap();
        let inv = crate::qseries::pochhammer_inf(8).invert_unit(8).unwrap();
        let prod = direct.mul_to(&inv, Some(8)).mul_to(&inv, Some(8));
        assert_eq!(lim, prod);
    }

    #[test]
    fn tet_limit_requires_a_zero() {
        assert!(matches!(tet_limit(1, 1, 1, 8), Err(Error::UnnormalizedLimit(1, 1, 1))));
    }

    #[test]
    fn theta_stabilizes() {
        let out = theta_stabilization(&t3(1, 1, 0), 20, 14).unwrap();
        assert!(out.stabilized(), "{out:?}");
    }

    #[test]
    fn tet_stabilizes_for_even_nu() {
        let s = six([1, 1, 0, 1, 1, 0]);
        let out = tet_stabilization(&s, 20, 14).unwrap();
        assert!(out.stabilized(), "{out:?}");
    }

    #[test]
    fn tet_limit_sign_for_odd_nu() {
        // S* = (1,1,0), ν = 1: hat Tet tends to -tet_limit.
        let s = six([2, 1, 1, 2, 1, 1]);
        assert_eq!(s.st().s_starred(), [1, 1, 0]);
        let lim = tet_limit(1, 1, 0, 20).unwrap();
        assert_eq!(lim.lowest().unwrap(), Monomial::new(-1, 0));
        let far = hat_tet(&s.shifted(2 * 14), 20).unwrap();
        assert!(far.agrees_to(&-&lim, 20));
    }
}
