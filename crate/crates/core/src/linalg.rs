//! Exact dense linear algebra over the rationals.
//!
//! Rank is computed fraction-free (Bareiss) on an integer copy of the
//! matrix. Row reduction, nullspaces and solves use rational Gauss-Jordan.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Rational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch { expected: cols, found: bad.len() });
        }
        let n = rows.len();
        Ok(ExactMatrix { rows: n, cols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale_column(&mut self, j: usize, factor: &Rational) {
        for i in 0..self.rows {
            let v = self.get(i, j) * factor;
            self.set(i, j, v);
        }
    }

    /// The submatrix keeping the listed columns in the listed order.
    pub fn select_columns(&self, columns: &[usize]) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.rows, columns.len());
        for i in 0..self.rows {
            for (k, &j) in columns.iter().enumerate() {
                out.set(i, k, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul_vector(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect())
    }
}

/// Scales a rational vector to a primitive integer vector with the same span.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// Exact rank by fraction-free elimination.
///
/// Pivot: the first row at or below the current one with a nonzero entry in
/// the leftmost unresolved column.
pub fn exact_rank(m: &ExactMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows).map(|i| primitive_integer_vector(m.row(i))).collect();
    bareiss_rank(&mut a, m.cols)
}

fn bareiss_rank(a: &mut [Vec<BigInt>], cols: usize) -> usize {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = &pivot_row[c];
        for row in bottom.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let x = &mut row[j];
                if !x.is_zero() {
                    *x *= piv;
                }
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    *x -= &lead * &pivot_row[j];
                }
                if !prev.is_one() && !x.is_zero() {
                    *x /= &prev;
                }
            }
        }
        prev = piv.clone();
        r += 1;
    }
    r
}

/// Reduced row echelon form and the pivot columns.
pub fn rref(m: &ExactMatrix) -> (ExactMatrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..a.cols {
                a.entries.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let inv = a.get(r, c).recip();
        for j in c..a.cols {
            let v = a.get(r, j) * &inv;
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r || a.get(i, c).is_zero() {
                continue;
            }
            let f = a.get(i, c).clone();
            for j in c..a.cols {
                let v = a.get(i, j) - &f * a.get(r, j);
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// One basis vector per free column of the echelon form.
pub fn nullspace(m: &ExactMatrix) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); m.cols];
            v[f] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(i, f).clone();
            }
            v
        })
        .collect()
}

/// The nullspace basis vector with the earliest leading nonzero entry (ties
/// go to the earlier free column), scaled so that entry is 1.
pub fn canonical_null_vector(m: &ExactMatrix) -> Option<Vec<Rational>> {
    let lead = |v: &Vec<Rational>| v.iter().position(|x| !x.is_zero()).expect("basis vector is nonzero");
    let best = nullspace(m).into_iter().enumerate().min_by_key(|(k, v)| (lead(v), *k))?.1;
    let scale = best[lead(&best)].recip();
    Some(best.into_iter().map(|x| x * &scale).collect())
}

/// Solves `M X = B` for square nonsingular `M`; `None` if `M` is singular.
pub fn solve_many(m: &ExactMatrix, rhs: &[Vec<Rational>]) -> Result<Option<Vec<Vec<Rational>>>> {
    if m.rows != m.cols {
        return Err(Error::Contract(format!("solve needs a square matrix, got {}x{}", m.rows, m.cols)));
    }
    if let Some(bad) = rhs.iter().find(|b| b.len() != m.rows) {
        return Err(Error::DimensionMismatch { expected: m.rows, found: bad.len() });
    }
    let n = m.rows;
    let k = rhs.len();
    let mut aug = ExactMatrix::zeros(n, n + k);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        for (t, b) in rhs.iter().enumerate() {
            aug.set(i, n + t, b[i].clone());
        }
    }
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Ok(None);
    }
    Ok(Some((0..k).map(|t| r.column(n + t)).collect()))
}

pub fn solve(m: &ExactMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    Ok(solve_many(m, &[b.to_vec()])?.map(|mut xs| xs.remove(0)))
}

/// Echelon basis grown one vector at a time, used for independence tests.
#[derive(Clone, Debug, Default)]
pub struct IncrementalEchelon {
    /// Primitive integer rows, each with its pivot column.
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl IncrementalEchelon {
    pub fn new() -> Self {
        IncrementalEchelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is independent of the vectors added so far.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut w = primitive_integer_vector(v);
        for (pc, row) in &self.rows {
            if w[*pc].is_zero() {
                continue;
            }
            let a = &row[*pc];
            let b = w[*pc].clone();
            for (x, y) in w.iter_mut().zip(row) {
                *x = &*x * a - &b * y;
            }
            let g = w.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if !g.is_zero() && !g.is_one() {
                for x in w.iter_mut() {
                    *x /= &g;
                }
            }
        }
        match w.iter().position(|x| !x.is_zero()) {
            Some(pc) => {
                if w[pc].is_negative() {
                    for x in w.iter_mut() {
                        *x = -&*x;
                    }
                }
                self.rows.push((pc, w));
                true
            }
            None => false,
        }
    }
}
