//! Exact rational scalars and dense matrices over Q.
//!
//! Everything downstream (marks, chain complexes, composition tables) is
//! expressed through [`MatQ`]. Elimination always takes the first nonzero
//! pivot in column order, so every basis produced here is deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"`; the result is reduced and `q` must be positive.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    if den.starts_with('-') || den.starts_with('+') {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Lowest-terms `"p/q"`, or `"p"` for integers.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

/// Dense row-major matrix over Q.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatQ {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for MatQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatQ {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl MatQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatQ {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn scalar(c: Rational) -> Self {
        MatQ {
            rows: 1,
            cols: 1,
            data: vec![c],
        }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "MatQ::from_vec",
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(MatQ { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    context: "MatQ::from_rows",
                    expected: c,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(MatQ {
            rows: r,
            cols: c,
            data,
        })
    }

    /// Panics on ragged input; meant for literals in code and tests.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged integer matrix literal");
            data.extend(row.iter().map(|&x| rat(x)));
        }
        MatQ {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        MatQ { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let cols = columns.len();
        let mut m = Self::zeros(rows, cols);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, x) in col.iter().enumerate() {
                if !x.is_zero() {
                    m.data[i * cols + j] = x.clone();
                }
            }
        }
        m
    }

    /// Permutation matrix sending basis vector `j` to basis vector `perm[j]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Self::zeros(n, n);
        for (j, &i) in perm.iter().enumerate() {
            m.data[i * n + j] = Rational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Rational) {
        self.data[r * self.cols + c] = x;
    }

    pub fn add_at(&mut self, r: usize, c: usize, x: &Rational) {
        let e = &mut self.data[r * self.cols + c];
        *e += x;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        MatQ {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "MatQ::mul_vec dimension");
        let mut out = vec![Rational::zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = &self.data[r * self.cols + c];
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    pub fn try_mul(&self, other: &MatQ) -> Result<MatQ> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix product",
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = MatQ::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[r * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let orow = other.row(k);
                for (c, b) in orow.iter().enumerate() {
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product; basis vector `u_i ⊗ v_j` has index `i * dim(V) + j`.
    pub fn kronecker(&self, other: &MatQ) -> MatQ {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = MatQ::zeros(rows, cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        let b = other.get(r2, c2);
                        if !b.is_zero() {
                            out.set(r1 * other.rows + r2, c1 * other.cols + c2, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn hstack(blocks: &[&MatQ]) -> Result<MatQ> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = MatQ::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            if b.rows != rows {
                return Err(Error::DimensionMismatch {
                    context: "hstack",
                    expected: rows,
                    found: b.rows,
                });
            }
            out.set_block(0, off, b);
            off += b.cols;
        }
        Ok(out)
    }

    pub fn vstack(blocks: &[&MatQ]) -> Result<MatQ> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = MatQ::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(Error::DimensionMismatch {
                    context: "vstack",
                    expected: cols,
                    found: b.cols,
                });
            }
            out.set_block(off, 0, b);
            off += b.rows;
        }
        Ok(out)
    }

    pub fn block_diag(blocks: &[&MatQ]) -> MatQ {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = MatQ::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &MatQ) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                let x = block.get(r, c);
                if !x.is_zero() {
                    self.set(r0 + r, c0 + c, x.clone());
                }
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> MatQ {
        MatQ::from_fn(rows, cols, |r, c| self.get(r0 + r, c0 + c).clone())
    }

    pub fn select_columns(&self, idx: &[usize]) -> MatQ {
        MatQ::from_fn(self.rows, idx.len(), |r, c| self.get(r, idx[c]).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> MatQ {
        MatQ::from_fn(idx.len(), self.cols, |r, c| self.get(idx[r], c).clone())
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (MatQ, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..cols {
            if pr == rows {
                break;
            }
            let Some(p) = (pr..rows).find(|&r| !self.data[r * cols + c].is_zero()) else {
                continue;
            };
            if p != pr {
                for k in 0..cols {
                    self.data.swap(p * cols + k, pr * cols + k);
                }
            }
            let inv = self.data[pr * cols + c].recip();
            for k in c..cols {
                let x = &mut self.data[pr * cols + k];
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
            let pivot_row: Vec<(usize, Rational)> = (c..cols)
                .filter_map(|k| {
                    let x = &self.data[pr * cols + k];
                    (!x.is_zero()).then(|| (k, x.clone()))
                })
                .collect();
            for r in 0..rows {
                if r == pr {
                    continue;
                }
                let f = self.data[r * cols + c].clone();
                if f.is_zero() {
                    continue;
                }
                for (k, x) in &pivot_row {
                    self.data[r * cols + k] -= &f * x;
                }
            }
            pivots.push(c);
            pr += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns form a basis of `{x : A x = 0}`, one per free column.
    pub fn kernel_basis(&self) -> MatQ {
        let (r, pivots) = self.rref();
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut k = MatQ::zeros(n, free.len());
        for (j, &f) in free.iter().enumerate() {
            k.set(f, j, Rational::one());
            for (row, &p) in pivots.iter().enumerate() {
                let x = r.get(row, f);
                if !x.is_zero() {
                    k.set(p, j, -x.clone());
                }
            }
        }
        k
    }

    /// Columns of `self` at the pivot positions: a basis of the column space.
    pub fn column_space_basis(&self) -> MatQ {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }

    /// Solves `A x = b` exactly. `Ok(None)` when some column of `b` is not in
    /// the image of `A`; free variables are set to zero.
    pub fn solve_exact(&self, b: &MatQ) -> Result<Option<MatQ>> {
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch {
                context: "solve_exact",
                expected: self.rows,
                found: b.rows,
            });
        }
        let aug = MatQ::hstack(&[self, b])?;
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = MatQ::zeros(self.cols, b.cols);
        for (row, &p) in pivots.iter().enumerate() {
            for c in 0..b.cols {
                x.set(p, c, r.get(row, self.cols + c).clone());
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<MatQ> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve_exact(&MatQ::identity(self.rows)).ok()??;
        (self.rank() == self.rows).then_some(x)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(format_rational).collect())
            .collect()
    }

    pub fn from_strings(rows: usize, cols: usize, s: &[Vec<String>]) -> Result<MatQ> {
        if s.len() != rows {
            return Err(Error::DimensionMismatch {
                context: "matrix rows",
                expected: rows,
                found: s.len(),
            });
        }
        let mut m = MatQ::zeros(rows, cols);
        for (r, row) in s.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    context: "matrix columns",
                    expected: cols,
                    found: row.len(),
                });
            }
            for (c, x) in row.iter().enumerate() {
                m.set(r, c, parse_rational(x)?);
            }
        }
        Ok(m)
    }
}

impl Mul for &MatQ {
    type Output = MatQ;
    fn mul(self, rhs: &MatQ) -> MatQ {
        self.try_mul(rhs).expect("matrix product dimensions")
    }
}

impl Add for &MatQ {
    type Output = MatQ;
    fn add(self, rhs: &MatQ) -> MatQ {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum dimensions");
        MatQ {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &MatQ {
    type Output = MatQ;
    fn sub(self, rhs: &MatQ) -> MatQ {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference dimensions");
        MatQ {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &MatQ {
    type Output = MatQ;
    fn neg(self) -> MatQ {
        MatQ {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

/// Sorted sparse vector.
pub type SparseVec = Vec<(usize, Rational)>;

pub fn sparse_from_dense(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn dense_from_sparse(dim: usize, v: &SparseVec) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); dim];
    for (i, x) in v {
        out[*i] += x;
    }
    out
}

/// Incrementally built row echelon form of a subspace of Q^dim.
///
/// Rows are stored sparse with a leading 1. A vector is reduced by walking the
/// pivots in increasing column order; after reduction only non-pivot
/// coordinates remain, which makes the non-pivot standard basis vectors a
/// complement, i.e. a basis for the quotient `Q^dim / span`.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Reduces `v` in place against the stored rows.
    pub fn reduce(&self, v: &mut [Rational]) {
        for (&p, row) in &self.rows {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (k, x) in row {
                v[*k] -= &f * x;
            }
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Zero::is_zero)
    }

    /// Adds `v` to the span; returns `true` when it was independent.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        self.insert_owned(&mut w)
    }

    pub fn insert_sparse(&mut self, v: &SparseVec) -> bool {
        let mut w = dense_from_sparse(self.dim, v);
        self.insert_owned(&mut w)
    }

    fn insert_owned(&mut self, w: &mut [Rational]) -> bool {
        self.reduce(w);
        let Some(lead) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[lead].recip();
        let row: SparseVec = w[lead..]
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (lead + i, x * &inv))
            .collect();
        // Keep earlier rows free of the new pivot so the stored form stays reduced.
        let mut updates = Vec::new();
        for (&p, r) in self.rows.range(..lead) {
            if let Ok(pos) = r.binary_search_by_key(&lead, |(k, _)| *k) {
                let f = r[pos].1.clone();
                let mut dense = dense_from_sparse(self.dim, r);
                for (k, x) in &row {
                    dense[*k] -= &f * x;
                }
                updates.push((p, sparse_from_dense(&dense)));
            }
        }
        for (p, r) in updates {
            self.rows.insert(p, r);
        }
        self.rows.insert(lead, row);
        true
    }

    /// Non-pivot columns, in increasing order: the quotient basis.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.dim).filter(|c| !self.rows.contains_key(c)).collect()
    }

    /// Coordinates of `v` modulo the span, in the basis of [`Self::complement`].
    pub fn quotient_coords(&self, v: &[Rational], complement: &[usize]) -> Vec<Rational> {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        complement.iter().map(|&c| w[c].clone()).collect()
    }

    /// Basis of the span as dense vectors, in pivot order.
    pub fn basis(&self) -> Vec<Vec<Rational>> {
        self.rows
            .values()
            .map(|r| dense_from_sparse(self.dim, r))
            .collect()
    }

    /// Kernel of the linear functionals given by the rows: `{x : row · x = 0}`.
    pub fn null_space(&self) -> Vec<Vec<Rational>> {
        let free = self.complement();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.dim];
                v[f] = Rational::one();
                for (&p, row) in &self.rows {
                    if let Ok(pos) = row.binary_search_by_key(&f, |(k, _)| *k) {
                        v[p] = -row[pos].1.clone();
                    }
                }
                v
            })
            .collect()
    }
}

/// Left inverse of a full-column-rank matrix, for repeated coordinate solves.
///
/// For `v` in the column space of `A`, [`Coordinates::solve`] returns the
/// unique `x` with `A x = v`.
#[derive(Clone, Debug)]
pub struct Coordinates {
    basis: MatQ,
    pivot_rows: Vec<usize>,
    inverse: MatQ,
}

impl Coordinates {
    pub fn new(basis: MatQ) -> Result<Self> {
        let (_, pivot_rows) = basis.transpose().rref();
        if pivot_rows.len() != basis.cols() {
            return Err(Error::InvalidStructure(
                "coordinate basis is not linearly independent".into(),
            ));
        }
        let square = basis.select_rows(&pivot_rows);
        let inverse = square
            .inverse()
            .ok_or_else(|| Error::InvalidStructure("singular coordinate block".into()))?;
        Ok(Coordinates {
            basis,
            pivot_rows,
            inverse,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &MatQ {
        &self.basis
    }

    pub fn solve(&self, v: &[Rational]) -> Vec<Rational> {
        let sub: Vec<Rational> = self.pivot_rows.iter().map(|&r| v[r].clone()).collect();
        self.inverse.mul_vec(&sub)
    }

    /// Like [`Self::solve`] but verifies membership in the span.
    pub fn solve_checked(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let x = self.solve(v);
        (self.basis.mul_vec(&x) == v).then_some(x)
    }
}

pub fn gcd_is_one(x: &Rational) -> bool {
    use num_integer::Integer;
    x.numer().abs().gcd(x.denom()).is_one() && x.denom().is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_rank_one_symmetric() {
        let a = MatQ::from_i64(&[&[1, 1], &[1, 1]]);
        let k = a.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0), vec![rat(-1), rat(1)]);
        assert!((&a * &k).is_zero());
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        assert_eq!(MatQ::identity(4).kernel_basis().cols(), 0);
        let k = MatQ::zeros(2, 3).kernel_basis();
        assert_eq!(k.cols(), 3);
        assert!(k.is_identity());
    }

    #[test]
    fn solve_cases() {
        let b = MatQ::from_i64(&[&[3, 1], &[-2, 7]]);
        assert_eq!(MatQ::identity(2).solve_exact(&b).unwrap(), Some(b.clone()));
        let x = MatQ::from_i64(&[&[2]]).solve_exact(&MatQ::from_i64(&[&[1]])).unwrap();
        assert_eq!(x, Some(MatQ::scalar(frac(1, 2))));
        let none = MatQ::from_i64(&[&[1], &[1]])
            .solve_exact(&MatQ::from_i64(&[&[0], &[1]]))
            .unwrap();
        assert_eq!(none, None);
        assert!(MatQ::identity(2).solve_exact(&MatQ::zeros(3, 1)).is_err());
    }

    #[test]
    fn kronecker_identity_and_scalar() {
        assert_eq!(MatQ::identity(2).kronecker(&MatQ::identity(3)), MatQ::identity(6));
        let a = MatQ::from_i64(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.kronecker(&MatQ::scalar(rat(5))), a.scale(&rat(5)));
    }

    #[test]
    fn kronecker_index_convention() {
        // (A ⊗ B)(u_i ⊗ v_j) = A u_i ⊗ B v_j with index i*dimV + j
        let a = MatQ::from_i64(&[&[0, 1], &[1, 0]]);
        let b = MatQ::from_i64(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        let k = a.kronecker(&b);
        let mut e = vec![rat(0); 6];
        e[3 + 1] = rat(1); // u_1 ⊗ v_1
        let img = k.mul_vec(&e);
        let mut expect = vec![rat(0); 6];
        expect[2] = rat(1); // u_0 ⊗ v_2
        assert_eq!(img, expect);
    }

    #[test]
    fn rational_strings() {
        assert_eq!(format_rational(&frac(-6, 4)), "-3/2");
        assert_eq!(format_rational(&rat(7)), "7");
        assert_eq!(parse_rational("-3/2").unwrap(), frac(-3, 2));
        assert_eq!(parse_rational("4/2").unwrap(), rat(2));
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn echelon_quotient() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&[rat(1), rat(1), rat(0)]));
        assert!(!e.insert(&[rat(2), rat(2), rat(0)]));
        assert!(e.insert(&[rat(0), rat(1), rat(1)]));
        let comp = e.complement();
        assert_eq!(comp, vec![2]);
        // (1,0,0) ≡ -(0,1,0) ≡ (0,0,1) mod span
        assert_eq!(e.quotient_coords(&[rat(1), rat(0), rat(0)], &comp), vec![rat(1)]);
        let ns = e.null_space();
        assert_eq!(ns.len(), 1);
        assert!(e.basis().iter().all(|r| {
            r.iter().zip(&ns[0]).map(|(a, b)| a * b).sum::<Rational>().is_zero()
        }));
    }

    #[test]
    fn coordinates_roundtrip() {
        let basis = MatQ::from_i64(&[&[1, 0], &[1, 1], &[0, 2]]);
        let c = Coordinates::new(basis.clone()).unwrap();
        let v = basis.mul_vec(&[frac(1, 3), rat(-2)]);
        assert_eq!(c.solve(&v), vec![frac(1, 3), rat(-2)]);
        assert!(c.solve_checked(&[rat(1), rat(0), rat(0)]).is_none());
    }
}
