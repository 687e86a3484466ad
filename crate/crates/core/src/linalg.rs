//! Exact rank computations over the rationals.
//!
//! Every matrix is reduced to an integer matrix (each row is scaled by the
//! lcm of its denominators, which does not change the row space) and then
//! eliminated fraction-free. After each elimination step a row is divided by
//! the gcd of its entries, so entry sizes stay bounded by the size of the
//! minors involved. Rows whose pivot-column entry is already zero are left
//! untouched, which keeps sparse rigidity matrices cheap.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// A dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigRational>>) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "row length mismatch");
            entries.extend(row);
        }
        RationalMatrix {
            rows: n,
            cols,
            entries,
        }
    }

    pub fn from_i64_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigRational) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Appends a row; its length must equal `cols`.
    pub fn push_row(&mut self, row: Vec<BigRational>) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.entries.extend(row);
        self.rows += 1;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Exact rank over the rationals.
pub fn rank(m: &RationalMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let rows: Vec<Vec<BigInt>> = (0..m.rows).map(|r| clear_denominators(m.row(r))).collect();
    integer_rows_rank(rows, m.cols)
}

/// Rank over the rationals of an integer matrix given as rows.
///
/// For a generating set of a subgroup of Z^k this is the rank of the subgroup.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let Some(cols) = rows.first().map(Vec::len) else {
        return 0;
    };
    let rows = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols, "row length mismatch");
            r.iter().map(|&x| BigInt::from(x)).collect()
        })
        .collect();
    integer_rows_rank(rows, cols)
}

/// Rank of a big-integer matrix. Consumes the rows.
pub fn integer_rows_rank(rows: Vec<Vec<BigInt>>, cols: usize) -> usize {
    // Keep only nonzero rows, stored sparsely-aware as dense vectors with a
    // cached leading index.
    let mut active: Vec<Vec<BigInt>> = rows
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|mut r| {
            normalize_content(&mut r);
            r
        })
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        if active.is_empty() {
            break;
        }
        // Pivot: the row with a nonzero in this column, preferring few
        // nonzeros and small pivot magnitude to limit fill-in and growth.
        let pivot_idx = active
            .iter()
            .enumerate()
            .filter(|(_, r)| !r[col].is_zero())
            .min_by_key(|(_, r)| {
                let nnz = r[col..].iter().filter(|x| !x.is_zero()).count();
                (nnz, r[col].bits())
            })
            .map(|(i, _)| i);
        let Some(pivot_idx) = pivot_idx else {
            continue;
        };
        let pivot_row = active.swap_remove(pivot_idx);
        rank += 1;
        let pivot = &pivot_row[col];
        let nz_cols: Vec<usize> = (col + 1..cols).filter(|&c| !pivot_row[c].is_zero()).collect();
        let mut next = Vec::with_capacity(active.len());
        for mut row in active {
            if !row[col].is_zero() {
                let g = row[col].gcd(pivot);
                let row_mult = pivot / &g;
                let pivot_mult = &row[col] / &g;
                if !row_mult.is_one() {
                    for x in row[col + 1..].iter_mut() {
                        if !x.is_zero() {
                            *x *= &row_mult;
                        }
                    }
                }
                for &c in &nz_cols {
                    row[c] -= &pivot_mult * &pivot_row[c];
                }
                row[col] = BigInt::zero();
                if row[col + 1..].iter().all(Zero::is_zero) {
                    continue;
                }
                normalize_content(&mut row);
            }
            next.push(row);
        }
        active = next;
    }
    rank
}

/// Scales a rational row by the lcm of its denominators.
fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

fn normalize_content(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x /= &g;
        }
    }
}

/// Parses "num/den", "num" or a decimal-free integer string into a rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Formats a rational as "num/den", or "num" when the denominator is one.
pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub(crate) fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn sign(x: &BigRational) -> std::cmp::Ordering {
    if x.is_positive() {
        std::cmp::Ordering::Greater
    } else if x.is_negative() {
        std::cmp::Ordering::Less
    } else {
        std::cmp::Ordering::Equal
    }
}
