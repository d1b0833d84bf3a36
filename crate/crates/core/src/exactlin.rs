//! Exact integer and rational linear algebra.
//!
//! Everything here works over arbitrary-precision integers ([`BigInt`]) and
//! rationals ([`BigRational`]). Nothing is ever rounded.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul};

use crate::error::{dim_check, Error, Result};

pub type Rational = BigRational;
pub type IntVector = Vec<BigInt>;
pub type RatVector = Vec<Rational>;

/// Builds an [`IntVector`] from machine integers.
pub fn int_vec(entries: &[i64]) -> IntVector {
    entries.iter().map(|&x| BigInt::from(x)).collect()
}

/// Builds a [`RatVector`] from `(numerator, denominator)` pairs.
pub fn rat_vec(entries: &[(i64, i64)]) -> RatVector {
    entries
        .iter()
        .map(|&(p, q)| Rational::new(BigInt::from(p), BigInt::from(q)))
        .collect()
}

pub fn to_rat(v: &[BigInt]) -> RatVector {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

/// Dense integer matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from its rows. `cols` is needed when `rows` is empty.
    pub fn from_rows(cols: usize, rows: Vec<IntVector>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            dim_check(&format!("length of row {i}"), cols, row.len())?;
            data.extend(row);
        }
        Ok(IntMatrix { rows: n, cols, data })
    }

    /// Builds the `rows x columns.len()` matrix whose columns are `columns`.
    pub fn from_columns(rows: usize, columns: &[IntVector]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            dim_check(&format!("length of column {j}"), rows, c.len())?;
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn from_i64_rows(cols: usize, rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(cols, rows.iter().map(|r| int_vec(r)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> IntVector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> IntVector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<IntVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        dim_check("inner matrix dimension", self.cols, other.rows)?;
        let mut p = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    p.data[idx] += a * other.get(k, j);
                }
            }
        }
        Ok(p)
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Result<IntVector> {
        dim_check("vector length", self.cols, x.len())?;
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j) * &x[j])
                    .fold(BigInt::zero(), |acc, t| acc + t)
            })
            .collect())
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        dim_check("row count", self.rows, other.rows)?;
        dim_check("column count", self.cols, other.cols)?;
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    /// `col[a] <- p*col[a] + q*col[b]`, `col[b] <- r*col[a] + s*col[b]` (old values).
    fn combine_cols(&mut self, a: usize, b: usize, p: &BigInt, q: &BigInt, r: &BigInt, s: &BigInt) {
        for i in 0..self.rows {
            let x = self.get(i, a).clone();
            let y = self.get(i, b).clone();
            self.set(i, a, p * &x + q * &y);
            self.set(i, b, r * &x + s * &y);
        }
    }

    /// `col[dst] -= factor * col[src]`
    fn sub_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let t = self.get(i, src) * factor;
            self.data[i * self.cols + dst] -= t;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let x = -self.get(i, j);
            self.set(i, j, x);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Standard inner product.
pub fn inner<T>(u: &[T], v: &[T]) -> Result<T>
where
    T: Zero + Clone,
    for<'a> &'a T: Mul<&'a T, Output = T>,
    T: Add<T, Output = T>,
{
    dim_check("inner product", u.len(), v.len())?;
    Ok(u.iter()
        .zip(v)
        .fold(T::zero(), |acc, (a, b)| acc + a * b))
}

/// Inner product of a rational vector with an integer vector.
pub fn inner_mixed(u: &[Rational], v: &[BigInt]) -> Result<Rational> {
    dim_check("inner product", u.len(), v.len())?;
    let mut acc = Rational::zero();
    for (a, b) in u.iter().zip(v) {
        if !b.is_zero() && !a.is_zero() {
            acc += a * Rational::from_integer(b.clone());
        }
    }
    Ok(acc)
}

/// Rank over the rationals by fraction-free (Bareiss) elimination.
pub fn rank(m: &IntMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows()).map(|i| m.row(i)).collect();
    bareiss_rank(&mut a, m.cols())
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
        for i in r + 1..rows {
            for j in c + 1..cols {
                let t = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                // exact by Sylvester's identity
                a[i][j] = t / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Rank of a set of column vectors.
pub fn rank_of(vs: &[IntVector]) -> usize {
    let mut a: Vec<Vec<BigInt>> = vs.to_vec();
    let n = vs.first().map_or(0, |v| v.len());
    // rank of the transpose equals rank
    bareiss_rank(&mut a, n)
}

/// Reduced row echelon form over the rationals, returning the pivot columns.
pub(crate) fn rref(mut a: Vec<RatVector>, cols: usize) -> (Vec<RatVector>, Vec<usize>) {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

fn rat_rows(m: &IntMatrix) -> Vec<RatVector> {
    (0..m.rows()).map(|i| to_rat(&m.row(i))).collect()
}

/// Basis of the right kernel `{x : Mx = 0}` over the rationals.
pub fn kernel_basis(m: &IntMatrix) -> Vec<RatVector> {
    rat_kernel_basis(rat_rows(m), m.cols())
}

pub(crate) fn rat_kernel_basis(rows: Vec<RatVector>, cols: usize) -> Vec<RatVector> {
    let (r, pivots) = rref(rows, cols);
    let mut basis = Vec::new();
    let mut pivot_iter = pivots.iter().peekable();
    let mut free = Vec::new();
    for c in 0..cols {
        if pivot_iter.peek() == Some(&&c) {
            pivot_iter.next();
        } else {
            free.push(c);
        }
    }
    for &f in &free {
        let mut x = vec![Rational::zero(); cols];
        x[f] = Rational::one();
        for (row, &p) in r.iter().zip(&pivots) {
            x[p] = -row[f].clone();
        }
        basis.push(x);
    }
    basis
}

/// Column-style Hermite normal form `H = M U` with `U` unimodular.
///
/// `H` is in lower column echelon form: pivot `t` sits at `(pivots[t].0, t)`,
/// is positive, and entries left of it in its row lie in `[0, pivot)`.
#[derive(Debug, Clone)]
pub struct ColumnHnf {
    pub h: IntMatrix,
    pub transform: IntMatrix,
    /// `(row, column)` of each pivot, in increasing order.
    pub pivots: Vec<(usize, usize)>,
}

pub fn column_hnf(m: &IntMatrix) -> ColumnHnf {
    let (n, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(cols);
    let mut pivots = Vec::new();
    let mut k = 0;
    for i in 0..n {
        if k == cols {
            break;
        }
        for j in k + 1..cols {
            if h.get(i, j).is_zero() {
                continue;
            }
            let a = h.get(i, k).clone();
            let b = h.get(i, j).clone();
            let e = a.extended_gcd(&b);
            let (g, p, q) = (e.gcd, e.x, e.y);
            let r = -(&b / &g);
            let s = &a / &g;
            h.combine_cols(k, j, &p, &q, &r, &s);
            u.combine_cols(k, j, &p, &q, &r, &s);
        }
        if h.get(i, k).is_zero() {
            continue;
        }
        if h.get(i, k).is_negative() {
            h.negate_col(k);
            u.negate_col(k);
        }
        let pivot = h.get(i, k).clone();
        for j in 0..k {
            let q = h.get(i, j).div_floor(&pivot);
            if !q.is_zero() {
                h.sub_col_multiple(j, k, &q);
                u.sub_col_multiple(j, k, &q);
            }
        }
        pivots.push((i, k));
        k += 1;
    }
    ColumnHnf {
        h,
        transform: u,
        pivots,
    }
}

/// Result of integer solving with the reason for failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeSolution {
    Solution(IntVector),
    /// Row of the Hermite normal form at which back-substitution failed:
    /// either a non-divisible pivot or an unsatisfiable non-pivot row.
    Obstruction { row: usize },
}

/// Finds an integer `x` with `Mx = w`, reporting the obstructing row if none exists.
pub fn lattice_solve_detailed(m: &IntMatrix, w: &[BigInt]) -> Result<LatticeSolution> {
    dim_check("target length", m.rows(), w.len())?;
    let hnf = column_hnf(m);
    let h = &hnf.h;
    let mut y = vec![BigInt::zero(); m.cols()];
    let mut next = 0;
    for i in 0..m.rows() {
        let mut residual = w[i].clone();
        for (t, yt) in y.iter().enumerate().take(next) {
            residual -= h.get(i, t) * yt;
        }
        if next < hnf.pivots.len() && hnf.pivots[next].0 == i {
            let (q, rem) = residual.div_rem(h.get(i, next));
            if !rem.is_zero() {
                return Ok(LatticeSolution::Obstruction { row: i });
            }
            y[next] = q;
            next += 1;
        } else if !residual.is_zero() {
            return Ok(LatticeSolution::Obstruction { row: i });
        }
    }
    Ok(LatticeSolution::Solution(hnf.transform.mul_vec(&y)?))
}

/// Some integer `x` with `Mx = w`, or `None` if `w` is outside the column lattice.
pub fn lattice_solve(m: &IntMatrix, w: &[BigInt]) -> Result<Option<IntVector>> {
    Ok(match lattice_solve_detailed(m, w)? {
        LatticeSolution::Solution(x) => Some(x),
        LatticeSolution::Obstruction { .. } => None,
    })
}

/// Indices of a maximal independent subset of `vs`, chosen greedily in order.
pub fn independent_columns(vs: &[IntVector]) -> Vec<usize> {
    let Some(n) = vs.first().map(|v| v.len()) else {
        return Vec::new();
    };
    let rows: Vec<RatVector> = (0..n)
        .map(|i| vs.iter().map(|v| Rational::from_integer(v[i].clone())).collect())
        .collect();
    rref(rows, vs.len()).1
}

/// Whether `w` lies in the rational span of `vs`.
pub fn in_span(vs: &[IntVector], w: &[BigInt]) -> bool {
    if vs.is_empty() {
        return w.iter().all(Zero::is_zero);
    }
    let r = rank_of(vs);
    let mut ext = vs.to_vec();
    ext.push(w.to_vec());
    rank_of(&ext) == r
}

/// Whether a rational vector lies in the span of `vs`.
pub fn rat_in_span(vs: &[IntVector], u: &[Rational]) -> bool {
    in_span(vs, &clear_denominators(u))
}

/// Basis of `V(S) = { u in span(vs) : <u, v_i> = 0 for all i in S }`.
pub fn span_complement_basis(vs: &[IntVector], subset: &[usize]) -> Result<Vec<RatVector>> {
    let m = vs.len();
    if let Some(&bad) = subset.iter().find(|&&i| i >= m) {
        return Err(Error::Domain(format!("index {bad} out of range for {m} vectors")));
    }
    let basis: Vec<&IntVector> = independent_columns(vs).into_iter().map(|j| &vs[j]).collect();
    let r = basis.len();
    if r == 0 {
        return Ok(Vec::new());
    }
    // Gram rows <v_i, b_j> for i in the subset; kernel gives coordinates in the basis.
    let gram: Vec<RatVector> = subset
        .iter()
        .map(|&i| {
            basis
                .iter()
                .map(|b| Rational::from_integer(inner(&vs[i], b).expect("uniform length")))
                .collect()
        })
        .collect();
    let coords = rat_kernel_basis(gram, r);
    let n = basis[0].len();
    Ok(coords
        .into_iter()
        .map(|c| {
            let mut u = vec![Rational::zero(); n];
            for (cj, b) in c.iter().zip(&basis) {
                if cj.is_zero() {
                    continue;
                }
                for (ui, bi) in u.iter_mut().zip(b.iter()) {
                    *ui += cj * Rational::from_integer(bi.clone());
                }
            }
            u
        })
        .collect())
}

/// Multiplies by the least common denominator; the result is a positive multiple.
pub(crate) fn clear_denominators(v: &[Rational]) -> IntVector {
    let l = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter()
        .map(|x| x.numer() * (&l / x.denom()))
        .collect()
}

/// The positive multiple of `v` with coprime integer entries.
pub fn primitive(v: &[Rational]) -> Result<IntVector> {
    primitive_int(&clear_denominators(v))
}

/// The positive multiple of an integer vector with coprime entries.
pub fn primitive_int(v: &[BigInt]) -> Result<IntVector> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return Err(Error::Domain("the zero vector has no primitive representative".into()));
    }
    Ok(v.iter().map(|x| x / &g).collect())
}
