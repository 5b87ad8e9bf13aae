//! Integer lattices in row-style Hermite normal form.

use crate::error::{Error, Result};

/// A sublattice of `Z^n` given by a basis in Hermite normal form: row `i`
/// has its first nonzero entry (positive) in column `pivots[i]`, pivots
/// increase strictly, and entries above a pivot lie in `[0, pivot)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hnf {
    ncols: usize,
    rows: Vec<Vec<i64>>,
    pivots: Vec<usize>,
}

fn checked(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow)
}

/// `rows[dst] -= k * rows[src]`.
fn sub_row(rows: &mut [Vec<i64>], dst: usize, src: usize, k: i64) -> Result<()> {
    if k == 0 {
        return Ok(());
    }
    for c in 0..rows[dst].len() {
        let v = rows[dst][c] as i128 - k as i128 * rows[src][c] as i128;
        rows[dst][c] = checked(v)?;
    }
    Ok(())
}

impl Hnf {
    /// Hermite normal form of the lattice spanned by `generators`, each of
    /// length `ncols`.
    pub fn new(ncols: usize, generators: &[Vec<i64>]) -> Result<Self> {
        let mut rows: Vec<Vec<i64>> = generators.to_vec();
        assert!(rows.iter().all(|r| r.len() == ncols), "generator length");
        let mut pivots = Vec::new();
        let mut top = 0;
        for col in 0..ncols {
            // Euclid on column `col` among rows top.. until one nonzero remains.
            loop {
                let nonzero: Vec<usize> = (top..rows.len()).filter(|&r| rows[r][col] != 0).collect();
                if nonzero.len() <= 1 {
                    break;
                }
                let best = *nonzero.iter().min_by_key(|&&r| rows[r][col].unsigned_abs()).unwrap();
                for &r in &nonzero {
                    if r != best {
                        let k = rows[r][col].div_euclid(rows[best][col]);
                        sub_row(&mut rows, r, best, k)?;
                    }
                }
            }
            let Some(r) = (top..rows.len()).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(top, r);
            if rows[top][col] < 0 {
                for x in rows[top].iter_mut() {
                    *x = x.checked_neg().ok_or(Error::Overflow)?;
                }
            }
            let p = rows[top][col];
            for above in 0..top {
                let k = rows[above][col].div_euclid(p);
                sub_row(&mut rows, above, top, k)?;
            }
            pivots.push(col);
            top += 1;
        }
        rows.truncate(top);
        Ok(Hnf { ncols, rows, pivots })
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The unique integer coefficients of `v` in this basis, or `None` if
    /// `v` is not in the lattice.
    pub fn coefficients(&self, v: &[i64]) -> Option<Vec<i64>> {
        assert_eq!(v.len(), self.ncols);
        let mut rest: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        let mut coeffs = Vec::with_capacity(self.rank());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if rest[..p].iter().any(|&x| x != 0) {
                return None;
            }
            let piv = row[p] as i128;
            if rest[p] % piv != 0 {
                return None;
            }
            let k = rest[p] / piv;
            for (r, &x) in rest.iter_mut().zip(row) {
                *r -= k * x as i128;
            }
            coeffs.push(i64::try_from(k).ok()?);
        }
        rest.iter().all(|&x| x == 0).then_some(coeffs)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.coefficients(v).is_some()
    }

    /// `Σ c_i row_i`.
    pub fn combine(&self, coeffs: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.ncols];
        for (row, &c) in self.rows.iter().zip(coeffs) {
            for (o, &x) in out.iter_mut().zip(row) {
                *o += c * x;
            }
        }
        out
    }
}
