//! Truncated Laurent series in `q^(1/2)` with arbitrary-precision integer
//! coefficients.
//!
//! Exponents are stored doubled (`exp2 = 2 * exponent`), so `q^(1/2)` has
//! `exp2 = 1` and `q` has `exp2 = 2`. A series is either an exact Laurent
//! polynomial or is known only below a precision `prec2`: every coefficient
//! at `exp2 < prec2` is exact, everything at `exp2 >= prec2` is unknown.
//!
//! All arithmetic propagates precision so that a reported coefficient is
//! never contaminated by truncation. For a product,
//! `prec2(f * g) = min(prec2(f) + v(g), prec2(g) + v(f))`, where `v` is the
//! lowest exponent that can carry a nonzero coefficient.

use std::cmp::min;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A single term `coeff * q^(exp2/2)` with `coeff != 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coeff: BigInt,
    pub exp2: i64,
}

impl Monomial {
    pub fn new(coeff: impl Into<BigInt>, exp2: i64) -> Self {
        let coeff = coeff.into();
        assert!(!coeff.is_zero(), "monomial coefficient must be nonzero");
        Monomial { coeff, exp2 }
    }

    /// `(-q^(1/2))^k`, the unit that appears throughout the index formulas.
    pub fn neg_sqrt_q_pow(k: i64) -> Self {
        Monomial::new(if k.rem_euclid(2) == 0 { 1 } else { -1 }, k)
    }

    pub fn is_unit(&self) -> bool {
        self.coeff.abs().is_one()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", QSeries::from(self.clone()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QSeries {
    /// Exponent (doubled) of `coeffs[0]`. Meaningless for the zero series.
    min_exp2: i64,
    /// Dense coefficients; first and last entries are nonzero when present.
    coeffs: Vec<BigInt>,
    /// `None` for an exact Laurent polynomial.
    prec2: Option<i64>,
}

impl QSeries {
    /// The zero series known below `prec2` (`None` = exactly zero).
    pub fn zero(prec2: Option<i64>) -> Self {
        QSeries {
            min_exp2: 0,
            coeffs: Vec::new(),
            prec2,
        }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// Exact single term `c * q^(exp2/2)`.
    pub fn monomial(c: impl Into<BigInt>, exp2: i64) -> Self {
        Self::from_dense(exp2, vec![c.into()], None)
    }

    /// Builds a series from dense coefficients starting at `min_exp2`,
    /// dropping anything at or beyond `prec2` and normalizing.
    pub fn from_dense(min_exp2: i64, mut coeffs: Vec<BigInt>, prec2: Option<i64>) -> Self {
        if let Some(p) = prec2 {
            let keep = (p - min_exp2).clamp(0, coeffs.len() as i64) as usize;
            coeffs.truncate(keep);
        }
        let mut s = QSeries {
            min_exp2,
            coeffs,
            prec2,
        };
        s.normalize();
        s
    }

    /// Builds a series from sparse `(exp2, coeff)` terms; repeated exponents add.
    pub fn from_terms<I, C>(terms: I, prec2: Option<i64>) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let terms: Vec<(i64, BigInt)> = terms
            .into_iter()
            .map(|(e, c)| (e, c.into()))
            .filter(|(e, _)| prec2.is_none_or(|p| *e < p))
            .collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero(prec2);
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Self::from_dense(lo, coeffs, prec2)
    }

    /// Series with small integer coefficients `coeffs[i]` at `exp2 = min_exp2 + i`.
    pub fn from_i64s(min_exp2: i64, coeffs: &[i64], prec2: Option<i64>) -> Self {
        Self::from_dense(min_exp2, coeffs.iter().map(|&c| BigInt::from(c)).collect(), prec2)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.min_exp2 = 0;
            return;
        }
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.min_exp2 += lead as i64;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.prec2.is_none()
    }

    /// Precision in half-exponent units; `None` for exact polynomials.
    pub fn prec2(&self) -> Option<i64> {
        self.prec2
    }

    /// Exponent of the lowest nonzero term.
    pub fn min_exp2(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.min_exp2)
    }

    /// Exponent of the highest retained nonzero term.
    pub fn max_exp2(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.min_exp2 + self.coeffs.len() as i64 - 1)
    }

    /// Lowest exponent that may carry a nonzero coefficient; `None` means
    /// the series is exactly zero.
    fn valuation_bound(&self) -> Option<i64> {
        if self.is_zero() {
            self.prec2
        } else {
            Some(self.min_exp2)
        }
    }

    /// Coefficient at `exp2`, or `None` if that exponent is past the precision.
    pub fn coeff(&self, exp2: i64) -> Option<BigInt> {
        if self.prec2.is_some_and(|p| exp2 >= p) {
            return None;
        }
        let idx = exp2 - self.min_exp2;
        Some(if idx < 0 || idx >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        })
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min_exp2 + i as i64, c))
    }

    /// True iff every retained exponent is even, i.e. the series lies in `Z((q))`.
    pub fn is_integral_in_q(&self) -> bool {
        self.terms().all(|(e, _)| e % 2 == 0)
    }

    /// Drops everything at or beyond `prec2` (never raises precision).
    pub fn truncate(&self, prec2: i64) -> Self {
        let p = self.prec2.map_or(prec2, |q| min(q, prec2));
        Self::from_dense(self.min_exp2, self.coeffs.clone(), Some(p))
    }

    /// Multiplication by `q^(k/2)`.
    pub fn shift(&self, k: i64) -> Self {
        QSeries {
            min_exp2: if self.is_zero() { 0 } else { self.min_exp2 + k },
            coeffs: self.coeffs.clone(),
            prec2: self.prec2.map(|p| p + k),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_dense(self.min_exp2, self.coeffs.iter().map(|x| x * c).collect(), self.prec2)
    }

    /// Multiplication by a monomial; exact on the retained range.
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        self.scale(&m.coeff).shift(m.exp2)
    }

    /// Product computed only below `cap` (and below the propagated precision).
    pub fn mul_to(&self, other: &QSeries, cap: Option<i64>) -> QSeries {
        let natural = match (self.prec2, other.prec2) {
            (None, None) => None,
            (Some(p), None) => other.valuation_bound().map(|v| p + v),
            (None, Some(p)) => self.valuation_bound().map(|v| p + v),
            (Some(p), Some(q)) => {
                let a = other.valuation_bound().map(|v| p + v);
                let b = self.valuation_bound().map(|v| q + v);
                match (a, b) {
                    (Some(a), Some(b)) => Some(min(a, b)),
                    (a, b) => a.or(b),
                }
            }
        };
        let prec2 = match (natural, cap) {
            (Some(a), Some(b)) => Some(min(a, b)),
            (a, b) => a.or(b),
        };
        if self.is_zero() || other.is_zero() {
            return Self::zero(prec2);
        }
        let lo = self.min_exp2 + other.min_exp2;
        let full = self.coeffs.len() + other.coeffs.len() - 1;
        let len = match prec2 {
            Some(p) => (p - lo).clamp(0, full as i64) as usize,
            None => full,
        };
        Self::from_dense(lo, convolve(&self.coeffs, &other.coeffs, len), prec2)
    }

    /// Inverse of a series whose lowest coefficient is `±1`, computed to
    /// at most `prec2` (the precision is further capped by the input's own).
    pub fn invert_unit(&self, prec2: i64) -> Result<QSeries> {
        let Some(m) = self.min_exp2() else {
            return Err(Error::NotInvertible("0".into()));
        };
        let lead = &self.coeffs[0];
        if !lead.abs().is_one() {
            return Err(Error::NotInvertible(lead.to_string()));
        }
        let mut rel = prec2 + m;
        if let Some(p) = self.prec2 {
            rel = min(rel, p - m);
        }
        let out_prec = -m + rel;
        if rel <= 0 {
            return Ok(Self::zero(Some(out_prec)));
        }
        let rel = rel as usize;
        let r = &self.coeffs;
        let mut g: Vec<BigInt> = Vec::with_capacity(rel);
        g.push(lead.clone());
        for n in 1..rel {
            let mut acc = BigInt::zero();
            for k in 1..=min(n, r.len() - 1) {
                if !r[k].is_zero() {
                    acc += &r[k] * &g[n - k];
                }
            }
            // g[0] = lead, and lead^2 = 1.
            g.push(-(acc * lead));
        }
        Ok(Self::from_dense(-m, g, Some(out_prec)))
    }

    /// `f^n` for `n >= 0`.
    pub fn pow(&self, n: u32) -> QSeries {
        let mut acc = QSeries::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Lowest monomial and, for exact polynomials, the highest one.
    pub fn extremal(&self) -> Result<(Monomial, Option<Monomial>)> {
        if self.is_zero() {
            return Err(Error::ZeroSeries);
        }
        let lo = Monomial::new(self.coeffs[0].clone(), self.min_exp2);
        let hi = self
            .is_exact()
            .then(|| Monomial::new(self.coeffs.last().unwrap().clone(), self.max_exp2().unwrap()));
        Ok((lo, hi))
    }

    pub fn lowest(&self) -> Result<Monomial> {
        self.extremal().map(|(lo, _)| lo)
    }

    pub fn highest(&self) -> Result<Monomial> {
        self.extremal()?.1.ok_or(Error::NotPolynomial)
    }

    /// `f` divided by its lowest monomial; requires that monomial to be `±1 q^d`.
    pub fn hat(&self) -> Result<QSeries> {
        let lo = self.lowest()?;
        if !lo.is_unit() {
            return Err(Error::NotInvertible(lo.coeff.to_string()));
        }
        Ok(self.scale(&lo.coeff).shift(-lo.exp2))
    }

    /// Lowest exponent below the common precision where `self` and `other`
    /// differ, or `None` if they agree there.
    pub fn first_mismatch(&self, other: &QSeries) -> Option<i64> {
        let limit = match (self.prec2, other.prec2) {
            (Some(a), Some(b)) => Some(min(a, b)),
            (a, b) => a.or(b),
        };
        let d = self - other;
        let d = match limit {
            Some(p) => d.truncate(p),
            None => d,
        };
        d.min_exp2()
    }

    /// Coefficientwise equality below `prec2`; both sides must be known there.
    pub fn agrees_to(&self, other: &QSeries, prec2: i64) -> bool {
        let known = |s: &QSeries| s.prec2.is_none_or(|p| p >= prec2);
        known(self) && known(other) && (self - other).truncate(prec2).is_zero()
    }

    pub fn to_record(&self) -> SeriesRecord {
        SeriesRecord {
            variable: SeriesRecord::VARIABLE.to_string(),
            prec2: self.prec2,
            terms: self.terms().map(|(e, c)| (e, c.to_string())).collect(),
        }
    }

    pub fn from_record(rec: &SeriesRecord) -> Result<QSeries> {
        if rec.variable != SeriesRecord::VARIABLE {
            return Err(Error::Record(format!("unknown variable `{}`", rec.variable)));
        }
        let terms = rec
            .terms
            .iter()
            .map(|(e, c)| {
                c.parse::<BigInt>()
                    .map(|c| (*e, c))
                    .map_err(|_| Error::Record(format!("bad coefficient `{c}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(QSeries::from_terms(terms, rec.prec2))
    }
}

/// Line-oriented JSON form of a series. Coefficients are decimal strings so
/// consumers without big integers do not overflow.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub variable: String,
    /// `null` marks an exact Laurent polynomial.
    pub prec2: Option<i64>,
    pub terms: Vec<(i64, String)>,
}

impl SeriesRecord {
    pub const VARIABLE: &'static str = "q^(1/2)";
}

/// Truncated convolution of dense coefficient vectors, with an `i128`
/// fast path when the inputs are small.
fn convolve(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    if len == 0 {
        return Vec::new();
    }
    let small = |v: &[BigInt]| -> Option<(Vec<i64>, u128)> {
        let xs: Option<Vec<i64>> = v.iter().map(|c| c.to_i64()).collect();
        let xs = xs?;
        let m = xs.iter().map(|x| x.unsigned_abs() as u128).max().unwrap_or(0);
        Some((xs, m))
    };
    if let (Some((xa, ma)), Some((xb, mb))) = (small(a), small(b)) {
        let terms = min(xa.len(), xb.len()) as u128;
        if ma.saturating_mul(mb).saturating_mul(terms) < i128::MAX as u128 {
            let mut out = vec![0i128; len];
            for (i, &x) in xa.iter().enumerate().take(len) {
                if x == 0 {
                    continue;
                }
                let x = x as i128;
                for (j, &y) in xb.iter().enumerate().take(len - i) {
                    out[i + j] += x * y as i128;
                }
            }
            return out.into_iter().map(BigInt::from).collect();
        }
    }
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn add_impl(f: &QSeries, g: &QSeries, negate_g: bool) -> QSeries {
    let prec2 = match (f.prec2, g.prec2) {
        (Some(a), Some(b)) => Some(min(a, b)),
        (a, b) => a.or(b),
    };
    let lo = match (f.min_exp2(), g.min_exp2()) {
        (Some(a), Some(b)) => min(a, b),
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (None, None) => return QSeries::zero(prec2),
    };
    let hi = f.max_exp2().into_iter().chain(g.max_exp2()).max().unwrap();
    let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
    for (e, c) in f.terms() {
        coeffs[(e - lo) as usize] += c;
    }
    for (e, c) in g.terms() {
        if negate_g {
            coeffs[(e - lo) as usize] -= c;
        } else {
            coeffs[(e - lo) as usize] += c;
        }
    }
    QSeries::from_dense(lo, coeffs, prec2)
}

impl Add<&QSeries> for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        add_impl(self, rhs, false)
    }
}

impl Add for QSeries {
    type Output = QSeries;
    fn add(self, rhs: QSeries) -> QSeries {
        add_impl(&self, &rhs, false)
    }
}

impl AddAssign<&QSeries> for QSeries {
    fn add_assign(&mut self, rhs: &QSeries) {
        *self = add_impl(self, rhs, false);
    }
}

impl Sub<&QSeries> for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        add_impl(self, rhs, true)
    }
}

impl Sub for QSeries {
    type Output = QSeries;
    fn sub(self, rhs: QSeries) -> QSeries {
        add_impl(&self, &rhs, true)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries {
            min_exp2: self.min_exp2,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            prec2: self.prec2,
        }
    }
}

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        -&self
    }
}

impl Mul<&QSeries> for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        self.mul_to(rhs, None)
    }
}

impl Mul for QSeries {
    type Output = QSeries;
    fn mul(self, rhs: QSeries) -> QSeries {
        self.mul_to(&rhs, None)
    }
}

impl From<Monomial> for QSeries {
    fn from(m: Monomial) -> Self {
        QSeries::monomial(m.coeff, m.exp2)
    }
}

fn fmt_power(exp2: i64) -> String {
    match (exp2, exp2 % 2 == 0) {
        (0, _) => String::new(),
        (2, _) => "q".into(),
        (e, true) => format!("q^{}", e / 2),
        (e, false) => format!("q^({e}/2)"),
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            let sep = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let p = fmt_power(e);
            let body = match (mag.is_one(), p.is_empty()) {
                (true, false) => p,
                (_, true) => mag.to_string(),
                (false, false) => format!("{mag}{p}"),
            };
            write!(f, "{sep}{body}")?;
            first = false;
        }
        if let Some(p) = self.prec2 {
            let big_o = format!("O({})", if p == 0 { "1".into() } else { fmt_power(p) });
            if first {
                write!(f, "{big_o}")?;
            } else {
                write!(f, " + {big_o}")?;
            }
        } else if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `(1 - q^n) / (1 - q) = 1 + q + ... + q^(n-1)` as an exact polynomial.
pub fn geometric(n: u64) -> QSeries {
    QSeries::from_terms((0..n as i64).map(|i| (2 * i, 1)), None)
}

/// `(q;q)_n = prod_{j=1}^n (1 - q^j)`, exact.
pub fn pochhammer(n: u64) -> QSeries {
    pochhammer_impl(n, None)
}

/// `(q;q)_n` truncated below `prec2`.
pub fn pochhammer_to(n: u64, prec2: i64) -> QSeries {
    pochhammer_impl(n, Some(prec2))
}

fn pochhammer_impl(n: u64, prec2: Option<i64>) -> QSeries {
    let deg = (n * (n + 1)) as usize; // doubled degree
    let len = match prec2 {
        Some(p) if p <= 0 => return QSeries::zero(Some(p)),
        Some(p) => min(deg + 1, p as usize),
        None => deg + 1,
    };
    let mut c = vec![0i128; len];
    c[0] = 1;
    let mut top = 0usize;
    for j in 1..=n as usize {
        let s = 2 * j;
        if s >= len {
            break;
        }
        top = min(top + s, len - 1);
        for i in (s..=top).rev() {
            c[i] -= c[i - s];
        }
    }
    // (q;q)_n has coefficients bounded by the partition numbers, far below
    // i128 range for any precision used here.
    QSeries::from_dense(0, c.into_iter().map(BigInt::from).collect(), prec2)
}

/// Truncation of `(q;q)_inf` below `prec2`.
pub fn pochhammer_inf(prec2: i64) -> QSeries {
    // Factors (1 - q^j) with 2j >= prec2 do not affect the truncation.
    let n = if prec2 <= 2 { 0 } else { ((prec2 - 1) / 2) as u64 };
    pochhammer_to(n, prec2)
}

/// Quantum integer `[n] = (q^(n/2) - q^(-n/2)) / (q^(1/2) - q^(-1/2))`.
pub fn quantum_integer(n: u64) -> QSeries {
    let n = n as i64;
    QSeries::from_terms((0..n).map(|i| (-(n - 1) + 2 * i, 1)), None)
}

/// `[n]! = [1][2]...[n]`, with `[0]! = 1`.
pub fn quantum_factorial(n: u64) -> QSeries {
    (1..=n).fold(QSeries::one(), |acc, k| &acc * &quantum_integer(k))
}

/// Quantum multinomial `[a]! / ([a_1]! ... [a_r]!)`, evaluated through
/// `q^(-(a^2 - sum a_j^2)/4) (q;q)_a / prod (q;q)_{a_j}`.
pub fn quantum_multinomial(a: u64, parts: &[u64]) -> Result<QSeries> {
    let sum: u64 = parts.iter().sum();
    if sum != a {
        return Err(Error::MultinomialParts { total: a, sum });
    }
    // Exponent in quarter units; integral in half units because
    // a^2 - sum a_j^2 = 2 * sum_{i<j} a_i a_j.
    let quarter = -((a * a) as i64 - parts.iter().map(|&x| (x * x) as i64).sum::<i64>());
    assert!(quarter % 2 == 0, "q^(1/4) powers must cancel");
    let exp2 = quarter / 2;
    let num = pochhammer(a);
    let mut den = QSeries::one();
    for &x in parts {
        den = &den * &pochhammer(x);
    }
    Ok(exact_quotient(&num, &den).shift(exp2))
}

/// `num / den` where the quotient is known to be a polynomial and `den`
/// has constant term `±1`. Panics if the division is not exact.
pub(crate) fn exact_quotient(num: &QSeries, den: &QSeries) -> QSeries {
    let (Some(nlo), Some(nhi)) = (num.min_exp2(), num.max_exp2()) else {
        return QSeries::zero(None);
    };
    let dlo = den.min_exp2().expect("division by zero");
    let dhi = den.max_exp2().unwrap();
    let qlo = nlo - dlo;
    let qhi = nhi - dhi;
    let inv = den.invert_unit(qhi + 1 - nlo).expect("denominator must be a unit");
    let q = num.mul_to(&inv, Some(qhi + 1));
    let q = QSeries::from_dense(q.min_exp2().unwrap_or(qlo), q.coeffs.clone(), None);
    debug_assert_eq!(&q * den, *num, "inexact polynomial division");
    q
}

/// Both sides of `(q^(a+1); q)_inf = Σ_n (-1)^n q^(n(n+1)/2 + an) / (q;q)_n`
/// below `prec2`: the product first, the sum second.
pub fn euler_identity_sides(a: u64, prec2: i64) -> (QSeries, QSeries) {
    let a = a as i64;
    let mut prod = QSeries::one().truncate(prec2);
    let mut j = a + 1;
    while 2 * j < prec2 {
        prod = prod.mul_to(&QSeries::from_terms([(0, 1), (2 * j, -1)], None), Some(prec2));
        j += 1;
    }
    let mut sum = QSeries::zero(Some(prec2));
    if prec2 <= 0 {
        return (prod, sum);
    }
    let table = PochhammerTable::new(prec2);
    let mut n = 0i64;
    while n * (n + 1) + 2 * a * n < prec2 {
        let e = n * (n + 1) + 2 * a * n;
        let sign = if n % 2 == 0 { 1 } else { -1 };
        sum += &table
            .inv_poch(n as u64)
            .truncate(prec2 - e)
            .mul_monomial(&Monomial::new(sign, e));
        n += 1;
    }
    (prod, sum)
}

/// Both sides of `1/((q)_m (q)_n) = Σ_{r+s=m, s+t=n} q^(rt) / ((q)_r (q)_s (q)_t)`
/// below `prec2`.
pub fn splitting_identity_sides(m: u64, n: u64, prec2: i64) -> (QSeries, QSeries) {
    if prec2 <= 0 {
        return (QSeries::zero(Some(prec2)), QSeries::zero(Some(prec2)));
    }
    let table = PochhammerTable::new(prec2);
    let lhs = table.inv_poch(m).mul_to(table.inv_poch(n), Some(prec2));
    let mut rhs = QSeries::zero(Some(prec2));
    for s in 0..=m.min(n) {
        let (r, t) = (m - s, n - s);
        let e = 2 * (r * t) as i64;
        if e >= prec2 {
            continue;
        }
        let cap = Some(prec2 - e);
        let term = table
            .inv_poch(r)
            .mul_to(table.inv_poch(s), cap)
            .mul_to(table.inv_poch(t), cap);
        rhs += &term.shift(e);
    }
    (lhs, rhs)
}

/// Precomputed `(q;q)_n` and `1/(q;q)_n` truncated to `prec2` for series
/// starting at exponent 0. Beyond `n > (prec2 - 1)/2` both are constant in `n`.
#[derive(Debug, Clone)]
pub struct PochhammerTable {
    prec2: i64,
    poch: Vec<QSeries>,
    inv: Vec<QSeries>,
}

impl PochhammerTable {
    /// `prec2` must be positive.
    pub fn new(prec2: i64) -> Self {
        assert!(prec2 > 0, "Pochhammer table needs positive precision");
        let cap = if prec2 <= 2 { 1 } else { ((prec2 - 1) / 2) as usize + 1 };
        let poch: Vec<QSeries> = (0..cap as u64).map(|n| pochhammer_to(n, prec2)).collect();
        let inv = poch
            .iter()
            .map(|p| p.invert_unit(prec2).expect("(q;q)_n is a unit"))
            .collect();
        PochhammerTable { prec2, poch, inv }
    }

    pub fn prec2(&self) -> i64 {
        self.prec2
    }

    pub fn poch(&self, n: u64) -> &QSeries {
        &self.poch[min(n as usize, self.poch.len() - 1)]
    }

    pub fn inv_poch(&self, n: u64) -> &QSeries {
        &self.inv[min(n as usize, self.inv.len() - 1)]
    }

    pub fn poch_inf(&self) -> &QSeries {
        self.poch.last().unwrap()
    }

    pub fn inv_poch_inf(&self) -> &QSeries {
        self.inv.last().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(min_exp2: i64, c: &[i64]) -> QSeries {
        QSeries::from_i64s(min_exp2, c, None)
    }

    #[test]
    fn monomial_examples() {
        assert_eq!(QSeries::monomial(1, 0), QSeries::one());
        assert_eq!(QSeries::monomial(-1, 1).to_string(), "-q^(1/2)");
        assert_eq!(QSeries::monomial(2, -3).to_string(), "2q^(-3/2)");
    }

    #[test]
    fn ring_examples() {
        assert_eq!(&q(0, &[1, 0, -1]) * &q(0, &[1, 0, 1]), q(0, &[1, 0, 0, 0, -1]));
        assert_eq!(&q(1, &[1]) * &q(1, &[1]), q(2, &[1]));
        assert_eq!(&q(0, &[1, 0, 1]) + &q(0, &[-1]), q(2, &[1]));
    }

    #[test]
    fn precision_propagates() {
        let f = q(0, &[1, 0, 1]).truncate(6);
        let g = q(2, &[1, 1]).truncate(5);
        // min(6 + 2, 5 + 0)
        assert_eq!(f.mul_to(&g, None).prec2(), Some(5));
        assert_eq!((&f + &g).prec2(), Some(5));
    }

    #[test]
    fn invert_examples() {
        let inv = q(0, &[1, 0, -1]).invert_unit(8).unwrap();
        assert_eq!(inv, QSeries::from_i64s(0, &[1, 0, 1, 0, 1, 0, 1], Some(8)));
        // -q^(-1/2)(1 + q) -> -q^(1/2)(1 - q + q^2 - ...)
        let inv = q(-1, &[-1, 0, -1]).invert_unit(8).unwrap();
        assert_eq!(inv, QSeries::from_i64s(1, &[-1, 0, 1, 0, -1, 0, 1], Some(8)));
        assert_eq!(inv.min_exp2(), Some(1));
        assert!(matches!(q(0, &[2, 0, 1]).invert_unit(8), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(0), QSeries::one());
        assert_eq!(pochhammer(1), q(0, &[1, 0, -1]));
        assert_eq!(pochhammer(3), q(0, &[1, 0, -1, 0, -1, 0, 0, 0, 1, 0, 1, 0, -1]));
        // 1 - q - q^2 + q^5 + O(q^6)
        assert_eq!(
            pochhammer_inf(12),
            QSeries::from_i64s(0, &[1, 0, -1, 0, -1, 0, 0, 0, 0, 0, 1], Some(12))
        );
        assert_eq!(pochhammer_inf(1), QSeries::one().truncate(1));
        assert_eq!(pochhammer_inf(25), pochhammer(12).truncate(25));
    }

    #[test]
    fn pentagonal_numbers() {
        let p = pochhammer_inf(200);
        let mut expect = Vec::new();
        for k in -12i64..=12 {
            let e = k * (3 * k - 1) / 2;
            if 2 * e < 200 {
                expect.push((2 * e, if k % 2 == 0 { 1 } else { -1 }));
            }
        }
        assert_eq!(p, QSeries::from_terms(expect, Some(200)));
    }

    #[test]
    fn quantum_examples() {
        assert_eq!(quantum_integer(2), q(-1, &[1, 0, 1]));
        assert_eq!(quantum_factorial(0), QSeries::one());
        assert_eq!(quantum_multinomial(2, &[1, 1]).unwrap(), quantum_integer(2));
        assert!(matches!(
            quantum_multinomial(3, &[1, 1]),
            Err(Error::MultinomialParts { total: 3, sum: 2 })
        ));
        for a in 0..7u64 {
            for b in 0..=a {
                let via_fact = exact_quotient(
                    &quantum_factorial(a),
                    &(&quantum_factorial(b) * &quantum_factorial(a - b)),
                );
                assert_eq!(quantum_multinomial(a, &[b, a - b]).unwrap(), via_fact);
            }
        }
    }

    #[test]
    fn extremal_examples() {
        let (lo, hi) = q(0, &[1, 0, -1]).extremal().unwrap();
        assert_eq!(lo, Monomial::new(1, 0));
        assert_eq!(hi, Some(Monomial::new(-1, 2)));
        assert_eq!(q(-1, &[-1, 0, -1]).lowest().unwrap(), Monomial::new(-1, -1));
        assert_eq!(q(4, &[1, 0, 5]).lowest().unwrap(), Monomial::new(1, 4));
        assert!(matches!(QSeries::zero(None).extremal(), Err(Error::ZeroSeries)));
        assert!(matches!(q(0, &[1]).truncate(4).highest(), Err(Error::NotPolynomial)));
    }

    #[test]
    fn hat_examples() {
        assert_eq!(q(-1, &[-1, 0, -1]).hat().unwrap(), q(0, &[1, 0, 1]));
        assert_eq!(q(0, &[1, 0, -1]).hat().unwrap(), q(0, &[1, 0, -1]));
        assert_eq!(q(6, &[1, 0, -2]).hat().unwrap(), q(0, &[1, 0, -2]));
        assert!(q(0, &[3]).hat().is_err());
    }

    #[test]
    fn record_round_trip() {
        let f = QSeries::from_i64s(-3, &[2, 0, -7], Some(9));
        let rec = f.to_record();
        assert_eq!(rec.variable, "q^(1/2)");
        let json = serde_json::to_string(&rec).unwrap();
        let back: SeriesRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(QSeries::from_record(&back).unwrap(), f);
    }

    #[test]
    fn euler_identity() {
        for a in 0..=4 {
            let (lhs, rhs) = euler_identity_sides(a, 41);
            assert_eq!(lhs, rhs, "a = {a}");
        }
    }

    #[test]
    fn splitting_identity() {
        for m in 0..=6 {
            for n in 0..=6 {
                let (lhs, rhs) = splitting_identity_sides(m, n, 41);
                assert_eq!(lhs, rhs, "m = {m}, n = {n}");
            }
        }
    }

    #[test]
    fn multinomial_exponents_are_integral() {
        for a in 0..9u64 {
            for x in 0..=a {
                for y in 0..=a - x {
                    let m = quantum_multinomial(a, &[x, y, a - x - y]).unwrap();
                    // Palindromic about 0.
                    assert_eq!(m.min_exp2(), m.max_exp2().map(|e| -e));
                }
            }
        }
    }

    fn series_strategy() -> impl Strategy<Value = QSeries> {
        (
            -4i64..4,
            prop::collection::vec(-5i64..=5, 0..8),
            prop::option::of(6i64..20),
        )
            .prop_map(|(m, c, p)| QSeries::from_i64s(m, &c, p))
    }

    fn unit_strategy() -> impl Strategy<Value = QSeries> {
        (-4i64..4, prop::bool::ANY, prop::collection::vec(-5i64..=5, 0..8)).prop_map(|(m, neg, c)| {
            let mut v = vec![if neg { -1 } else { 1 }];
            v.extend(c);
            QSeries::from_i64s(m, &v, None)
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(f in series_strategy(), g in series_strategy(), h in series_strategy()) {
            prop_assert_eq!(&f + &g, &g + &f);
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            let lhs = &f * &(&g + &h);
            let rhs = &(&f * &g) + &(&f * &h);
            // Both sides are exact below the smaller of their precisions.
            let p = match (lhs.prec2(), rhs.prec2()) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
            match p {
                Some(p) => prop_assert!(lhs.agrees_to(&rhs, p)),
                None => prop_assert_eq!(lhs, rhs),
            }
        }

        #[test]
        fn inverse(f in unit_strategy(), p in 0i64..30) {
            let g = f.invert_unit(p).unwrap();
            let m = f.min_exp2().unwrap();
            prop_assert_eq!(g.prec2(), Some(p));
            if p > -m {
                prop_assert_eq!(g.min_exp2(), Some(-m));
            }
            let prod = f.mul_to(&g, None);
            prop_assert_eq!(prod.prec2(), Some(p + m));
            prop_assert!(prod.agrees_to(&QSeries::one(), p + m));
        }

        #[test]
        fn hat_has_constant_term_one(f in unit_strategy()) {
            let h = f.hat().unwrap();
            prop_assert_eq!(h.lowest().unwrap(), Monomial::new(1, 0));
        }
    }
}
