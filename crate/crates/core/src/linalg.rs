//! Exact integer matrices and the Smith normal form.
//!
//! Everything here is generic over [`Scalar`], any signed Euclidean integer
//! type (`i64`, `i128`, [`num_bigint::BigInt`], ...). The cohomology code uses
//! `BigInt` exclusively; fixed-width instantiations exist for tests and for
//! callers who can bound their entries.

use std::fmt;
use std::ops::Mul;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, Zero};

use crate::error::{Error, Result};

/// Signed integer scalar with Euclidean division.
pub trait Scalar:
    Clone + fmt::Debug + fmt::Display + Integer + Signed + FromPrimitive + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Clone + fmt::Debug + fmt::Display + Integer + Signed + FromPrimitive + Send + Sync + 'static
{
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> IntMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Builds a matrix from its rows; `cols` fixes the width when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(IntMatrix {
            rows: n,
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(columns: &[Vec<T>], rows: usize) -> Result<Self> {
        if let Some(bad) = columns.iter().position(|c| c.len() != rows) {
            return Err(Error::Dimension(format!(
                "column {bad} has {} entries, expected {rows}",
                columns[bad].len()
            )));
        }
        Ok(Self::from_fn(rows, columns.len(), |i, j| {
            columns[j][i].clone()
        }))
    }

    /// Convenience constructor from small literals.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(
            entries.len(),
            rows * cols,
            "entry count must be rows * cols"
        );
        IntMatrix {
            rows,
            cols,
            data: entries
                .iter()
                .map(|&x| T::from_i64(x).expect("i64 fits every scalar"))
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> impl Iterator<Item = Vec<T>> + '_ {
        (0..self.cols).map(move |j| self.column(j))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> IntMatrix<U> {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "cannot apply {}x{} matrix to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        // accumulate columns, touching only the nonzero entries of v
        let mut out = vec![T::zero(); self.rows];
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, acc) in out.iter_mut().enumerate() {
                let a = self.get(i, k);
                if !a.is_zero() {
                    *acc = acc.clone() + a.clone() * x.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension(format!(
                "cannot subtract {}x{} from {}x{}",
                other.rows, other.cols, self.rows, self.cols
            )));
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }

    pub fn scale(&self, k: &T) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * k.clone()).collect(),
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Dimension(format!(
                "cannot place {} rows beside {} rows",
                other.rows, self.rows
            )));
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    pub fn block_diagonal(blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Rows `start..end` as a new matrix.
    pub fn row_range(&self, start: usize, end: usize) -> Self {
        Self::from_fn(end - start, self.cols, |i, j| {
            self.get(start + i, j).clone()
        })
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                let b = block.get(i, j);
                if !b.is_zero() {
                    let idx = (r0 + i) * self.cols + c0 + j;
                    self.data[idx] = self.data[idx].clone() + b.clone();
                }
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &T) {
        for j in 0..self.cols {
            let s = self.get(src, j);
            if !s.is_zero() {
                let v = self.get(dst, j).clone() + k.clone() * s.clone();
                self.set(dst, j, v);
            }
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &T) {
        for i in 0..self.rows {
            let s = self.get(i, src);
            if !s.is_zero() {
                let v = self.get(i, dst).clone() + k.clone() * s.clone();
                self.set(i, dst, v);
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }
}

impl<T: Scalar> Mul for &IntMatrix<T> {
    type Output = IntMatrix<T>;

    fn mul(self, rhs: Self) -> IntMatrix<T> {
        self.checked_mul(rhs).expect("matrix dimensions agree")
    }
}

impl<T: Scalar> fmt::Display for IntMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal, `d₁ | d₂ | …`,
/// all diagonal entries nonnegative. The inverses of `U` and `V` are tracked
/// alongside so that callers can move between coordinate systems without
/// inverting anything.
#[derive(Clone, Debug)]
pub struct SmithDecomposition<T> {
    pub u: IntMatrix<T>,
    pub d: IntMatrix<T>,
    pub v: IntMatrix<T>,
    pub u_inv: IntMatrix<T>,
    pub v_inv: IntMatrix<T>,
    rank: usize,
}

impl<T: Scalar> SmithDecomposition<T> {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The nonzero diagonal entries, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<T> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Some `x` with `M x = b`, if one exists.
    pub fn solve(&self, b: &[T]) -> Result<Option<Vec<T>>> {
        solve_diagonal(&self.u, &self.invariant_factors(), &self.v, b)
    }

    /// Whether `b` lies in the column lattice of `M`.
    pub fn spans(&self, b: &[T]) -> Result<bool> {
        Ok(self.solve(b)?.is_some())
    }
}

/// The part of a Smith decomposition needed to solve `M x = b` repeatedly.
#[derive(Clone, Debug)]
pub struct SmithSolver<T> {
    u: IntMatrix<T>,
    v: IntMatrix<T>,
    factors: Vec<T>,
}

impl<T: Scalar> SmithSolver<T> {
    pub fn new(m: &IntMatrix<T>) -> Self {
        let r = reduce(
            m,
            Track {
                u: true,
                v: true,
                ..Track::NONE
            },
        );
        SmithSolver {
            factors: r.factors(),
            u: r.u.expect("tracked"),
            v: r.v.expect("tracked"),
        }
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn invariant_factors(&self) -> &[T] {
        &self.factors
    }

    /// Some `x` with `M x = b`, if one exists.
    pub fn solve(&self, b: &[T]) -> Result<Option<Vec<T>>> {
        solve_diagonal(&self.u, &self.factors, &self.v, b)
    }

    /// Whether `b` lies in the column lattice of `M`.
    pub fn spans(&self, b: &[T]) -> Result<bool> {
        if b.len() != self.u.cols {
            return Err(Error::Dimension(format!(
                "right-hand side has length {}, expected {}",
                b.len(),
                self.u.cols
            )));
        }
        let c = self.u.mul_vec(b)?;
        Ok(c.iter()
            .enumerate()
            .all(|(i, ci)| match self.factors.get(i) {
                Some(d) => ci.is_multiple_of(d),
                None => ci.is_zero(),
            }))
    }
}

// D (V⁻¹ x) = U b
fn solve_diagonal<T: Scalar>(
    u: &IntMatrix<T>,
    factors: &[T],
    v: &IntMatrix<T>,
    b: &[T],
) -> Result<Option<Vec<T>>> {
    if b.len() != u.cols {
        return Err(Error::Dimension(format!(
            "right-hand side has length {}, expected {}",
            b.len(),
            u.cols
        )));
    }
    let c = u.mul_vec(b)?;
    let mut y = vec![T::zero(); v.rows];
    for (i, ci) in c.iter().enumerate() {
        match factors.get(i) {
            Some(d) => {
                let (q, r) = ci.div_rem(d);
                if !r.is_zero() {
                    return Ok(None);
                }
                y[i] = q;
            }
            None if !ci.is_zero() => return Ok(None),
            None => {}
        }
    }
    Ok(Some(v.mul_vec(&y)?))
}

enum Op<T> {
    SwapRows(usize, usize),
    SwapCols(usize, usize),
    /// row[dst] += k * row[src]
    AddRow(usize, usize, T),
    /// col[dst] += k * col[src]
    AddCol(usize, usize, T),
    NegateRow(usize),
}

#[derive(Clone, Copy)]
struct Track {
    u: bool,
    u_inv: bool,
    v: bool,
    v_inv: bool,
}

impl Track {
    const NONE: Track = Track {
        u: false,
        u_inv: false,
        v: false,
        v_inv: false,
    };
    const ALL: Track = Track {
        u: true,
        u_inv: true,
        v: true,
        v_inv: true,
    };
}

/// Working state of the reduction. `row_nnz` and `col_nnz` count the nonzero
/// entries of `m` and are kept current by every operation.
struct Tracker<T> {
    m: IntMatrix<T>,
    u: Option<IntMatrix<T>>,
    u_inv: Option<IntMatrix<T>>,
    v: Option<IntMatrix<T>>,
    v_inv: Option<IntMatrix<T>>,
    row_nnz: Vec<usize>,
    col_nnz: Vec<usize>,
    rank: usize,
}

impl<T: Scalar> Tracker<T> {
    fn new(m: &IntMatrix<T>, track: Track) -> Self {
        let ident = |on: bool, n: usize| on.then(|| IntMatrix::identity(n));
        let row_nnz = (0..m.rows)
            .map(|i| m.row(i).iter().filter(|x| !x.is_zero()).count())
            .collect();
        let col_nnz = (0..m.cols)
            .map(|j| (0..m.rows).filter(|&i| !m.get(i, j).is_zero()).count())
            .collect();
        Tracker {
            m: m.clone(),
            u: ident(track.u, m.rows),
            u_inv: ident(track.u_inv, m.rows),
            v: ident(track.v, m.cols),
            v_inv: ident(track.v_inv, m.cols),
            row_nnz,
            col_nnz,
            rank: 0,
        }
    }

    fn factors(&self) -> Vec<T> {
        (0..self.rank).map(|i| self.m.get(i, i).clone()).collect()
    }

    fn apply(&mut self, op: Op<T>) {
        match op {
            Op::SwapRows(a, b) => {
                if a == b {
                    return;
                }
                self.m.swap_rows(a, b);
                self.row_nnz.swap(a, b);
                if let Some(u) = &mut self.u {
                    u.swap_rows(a, b);
                }
                if let Some(u_inv) = &mut self.u_inv {
                    u_inv.swap_cols(a, b);
                }
            }
            Op::SwapCols(a, b) => {
                if a == b {
                    return;
                }
                self.m.swap_cols(a, b);
                self.col_nnz.swap(a, b);
                if let Some(v) = &mut self.v {
                    v.swap_cols(a, b);
                }
                if let Some(v_inv) = &mut self.v_inv {
                    v_inv.swap_rows(a, b);
                }
            }
            Op::AddRow(dst, src, k) => {
                for j in 0..self.m.cols {
                    let s = self.m.get(src, j);
                    if s.is_zero() {
                        continue;
                    }
                    let before = self.m.get(dst, j).is_zero();
                    let value = self.m.get(dst, j).clone() + k.clone() * s.clone();
                    let after = value.is_zero();
                    self.m.set(dst, j, value);
                    match (before, after) {
                        (true, false) => {
                            self.row_nnz[dst] += 1;
                            self.col_nnz[j] += 1;
                        }
                        (false, true) => {
                            self.row_nnz[dst] -= 1;
                            self.col_nnz[j] -= 1;
                        }
                        _ => {}
                    }
                }
                if let Some(u) = &mut self.u {
                    u.add_row_multiple(dst, src, &k);
                }
                if let Some(u_inv) = &mut self.u_inv {
                    u_inv.add_col_multiple(src, dst, &-k);
                }
            }
            Op::AddCol(dst, src, k) => {
                for i in 0..self.m.rows {
                    let s = self.m.get(i, src);
                    if s.is_zero() {
                        continue;
                    }
                    let before = self.m.get(i, dst).is_zero();
                    let value = self.m.get(i, dst).clone() + k.clone() * s.clone();
                    let after = value.is_zero();
                    self.m.set(i, dst, value);
                    match (before, after) {
                        (true, false) => {
                            self.row_nnz[i] += 1;
                            self.col_nnz[dst] += 1;
                        }
                        (false, true) => {
                            self.row_nnz[i] -= 1;
                            self.col_nnz[dst] -= 1;
                        }
                        _ => {}
                    }
                }
                if let Some(v) = &mut self.v {
                    v.add_col_multiple(dst, src, &k);
                }
                if let Some(v_inv) = &mut self.v_inv {
                    v_inv.add_row_multiple(src, dst, &-k);
                }
            }
            Op::NegateRow(i) => {
                self.m.negate_row(i);
                if let Some(u) = &mut self.u {
                    u.negate_row(i);
                }
                if let Some(u_inv) = &mut self.u_inv {
                    for r in 0..u_inv.rows {
                        let v = -u_inv.get(r, i).clone();
                        u_inv.set(r, i, v);
                    }
                }
            }
        }
    }

    /// Position of a nonzero entry of minimal absolute value in the trailing
    /// submatrix starting at `(t, t)`; ties go to the sparsest row and column.
    ///
    /// Rows and columns before `t` hold only finished pivots, so the nonzero
    /// counts of later rows and columns already refer to the trailing block.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let m = &self.m;
        let cost = |i: usize, j: usize| (self.row_nnz[i] - 1) * (self.col_nnz[j] - 1);
        let mut rows: Vec<usize> = (t..m.rows).filter(|&i| self.row_nnz[i] > 0).collect();
        if rows.is_empty() {
            return None;
        }
        rows.sort_by_key(|&i| self.row_nnz[i]);
        let min_col = (t..m.cols)
            .map(|j| self.col_nnz[j])
            .filter(|&c| c > 0)
            .min()
            .expect("a nonzero row has a nonzero column");
        // units are by far the common case and need no magnitude comparison
        let (one, minus_one) = (T::one(), -T::one());
        let mut best: Option<(usize, (usize, usize))> = None;
        for &i in &rows {
            if let Some((c, _)) = best {
                if (self.row_nnz[i] - 1) * (min_col - 1) >= c {
                    break;
                }
            }
            for j in t..m.cols {
                let x = m.get(i, j);
                if (*x == one || *x == minus_one) && best.is_none_or(|(c, _)| cost(i, j) < c) {
                    best = Some((cost(i, j), (i, j)));
                }
            }
        }
        if let Some((_, pos)) = best {
            return Some(pos);
        }
        let mut best: Option<(T, usize, (usize, usize))> = None;
        for &i in &rows {
            for j in t..m.cols {
                let x = m.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let a = x.abs();
                let f = cost(i, j);
                let better = match &best {
                    None => true,
                    Some((b, g, _)) => a < *b || (a == *b && f < *g),
                };
                if better {
                    best = Some((a, f, (i, j)));
                }
            }
        }
        best.map(|(_, _, pos)| pos)
    }
}

/// Quotient of `x` by `p` rounded to the nearest integer.
fn nearest_quotient<T: Scalar>(x: &T, p: &T) -> T {
    let (q, r) = x.div_mod_floor(p);
    let two = T::one() + T::one();
    if (r.abs() * two) > p.abs() {
        q + T::one()
    } else {
        q
    }
}

/// Smallest nonzero entry in row `t` right of the pivot or column `t` below it.
fn min_in_cross<T: Scalar>(m: &IntMatrix<T>, t: usize) -> Option<(usize, usize)> {
    let below = (t + 1..m.rows).map(|i| (i, t));
    let right = (t + 1..m.cols).map(|j| (t, j));
    below
        .chain(right)
        .filter(|&(i, j)| !m.get(i, j).is_zero())
        .min_by(|&(a, b), &(c, d)| m.get(a, b).abs().cmp(&m.get(c, d).abs()))
}

/// Diagonalizes `m`, keeping the transforms selected by `track`.
///
/// Pivots are always a nonzero entry of minimal absolute value, which keeps
/// intermediate entries small on the matrices this crate produces.
fn reduce<T: Scalar>(m: &IntMatrix<T>, track: Track) -> Tracker<T> {
    let (rows, cols) = (m.rows, m.cols);
    let mut tr = Tracker::new(m, track);
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = tr.min_pivot(t) else {
            break;
        };
        tr.apply(Op::SwapRows(t, pi));
        tr.apply(Op::SwapCols(t, pj));
        loop {
            let pivot = tr.m.get(t, t).clone();
            for i in t + 1..rows {
                let x = tr.m.get(i, t);
                if !x.is_zero() {
                    let q = nearest_quotient(x, &pivot);
                    if !q.is_zero() {
                        tr.apply(Op::AddRow(i, t, -q));
                    }
                }
            }
            for j in t + 1..cols {
                let x = tr.m.get(t, j);
                if !x.is_zero() {
                    let q = nearest_quotient(x, &pivot);
                    if !q.is_zero() {
                        tr.apply(Op::AddCol(j, t, -q));
                    }
                }
            }
            if let Some((i, j)) = min_in_cross(&tr.m, t) {
                // remainders left behind; all strictly smaller than the pivot
                tr.apply(Op::SwapRows(t, i));
                tr.apply(Op::SwapCols(t, j));
                continue;
            }
            if pivot.abs().is_one() {
                break;
            }
            let offender = (t + 1..rows).find(|&i| {
                tr.row_nnz[i] > 0 && (t + 1..cols).any(|j| !tr.m.get(i, j).is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => tr.apply(Op::AddRow(t, i, T::one())),
                None => break,
            }
        }
        if tr.m.get(t, t).is_negative() {
            tr.apply(Op::NegateRow(t));
        }
        t += 1;
        tr.rank = t;
    }
    tr
}

/// Smith normal form with all four transformation matrices.
pub fn snf<T: Scalar>(m: &IntMatrix<T>) -> SmithDecomposition<T> {
    let tr = reduce(m, Track::ALL);
    SmithDecomposition {
        rank: tr.rank,
        u: tr.u.expect("tracked"),
        u_inv: tr.u_inv.expect("tracked"),
        v: tr.v.expect("tracked"),
        v_inv: tr.v_inv.expect("tracked"),
        d: tr.m,
    }
}

/// Invariant factors `d₁ | d₂ | … | d_r` of `M`, without transforms.
pub fn invariant_factors<T: Scalar>(m: &IntMatrix<T>) -> Vec<T> {
    reduce(m, Track::NONE).factors()
}

/// Some integer `x` with `M x = b`, or `None` when no integer solution exists.
pub fn solve<T: Scalar>(m: &IntMatrix<T>, b: &[T]) -> Result<Option<Vec<T>>> {
    if b.len() != m.rows {
        return Err(Error::Dimension(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            m.rows
        )));
    }
    SmithSolver::new(m).solve(b)
}

/// Columns form a basis of the lattice `{x : M x = 0}`.
pub fn kernel_basis<T: Scalar>(m: &IntMatrix<T>) -> IntMatrix<T> {
    let tr = reduce(
        m,
        Track {
            v: true,
            ..Track::NONE
        },
    );
    let (r, v) = (tr.rank, tr.v.expect("tracked"));
    IntMatrix::from_fn(m.cols, m.cols - r, |i, j| v.get(i, r + j).clone())
}

/// Linearly independent columns spanning the same lattice as the columns of `M`.
pub fn lattice_basis<T: Scalar>(m: &IntMatrix<T>) -> IntMatrix<T> {
    let tr = reduce(
        m,
        Track {
            u_inv: true,
            ..Track::NONE
        },
    );
    let u_inv = tr.u_inv.as_ref().expect("tracked");
    // M V = U⁻¹ D, and V is unimodular
    IntMatrix::from_fn(m.rows, tr.rank, |i, j| {
        u_inv.get(i, j).clone() * tr.m.get(j, j).clone()
    })
}

/// Fraction-free (Bareiss) determinant of a square matrix.
pub fn determinant<T: Scalar>(m: &IntMatrix<T>) -> Result<T> {
    if m.rows != m.cols {
        return Err(Error::Dimension(format!(
            "determinant of a non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n {
        if a.get(k, k).is_zero() {
            match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    sign = -sign;
                }
                None => return Ok(T::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.get(i, j).clone() * a.get(k, k).clone()
                    - a.get(i, k).clone() * a.get(k, j).clone())
                    / prev.clone();
                a.set(i, j, v);
            }
        }
        prev = a.get(k, k).clone();
    }
    Ok(if n == 0 { T::one() } else { sign * prev })
}
