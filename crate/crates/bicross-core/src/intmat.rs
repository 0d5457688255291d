//! Integer matrices and Smith normal form over arbitrary-precision integers.
//!
//! [`SmithForm::compute`] works on sparse rows: it first eliminates with
//! unit pivots (Markowitz order), then hands the remaining core to a dense
//! reduction. Both stages optionally record the unimodular transforms so
//! that `L·M·R = S`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Sparse row: `(column, value)` pairs sorted by column, no zeros stored.
pub type SparseRow = Vec<(usize, BigInt)>;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.data[i * c + j] = BigInt::from(v);
            }
        }
        m
    }

    pub fn from_sparse(rows: &[SparseRow], cols: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row {
                m.data[i * cols + j] = v.clone();
            }
        }
        m
    }

    pub fn to_sparse(&self) -> Vec<SparseRow> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| !self.get(i, j).is_zero())
                    .map(|j| (j, self.get(i, j).clone()))
                    .collect()
            })
            .collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Diagonal entries `S[i][i]` for `i < min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Determinant by fraction-free elimination (Bareiss).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Sparse matrix product `A·B` where both are given by sparse rows.
pub fn sparse_mul(a: &[SparseRow], b: &[SparseRow], b_cols: usize) -> Vec<SparseRow> {
    let mut acc = vec![BigInt::zero(); b_cols];
    a.iter()
        .map(|row| {
            let mut touched = BTreeSet::new();
            for (k, v) in row {
                for (j, w) in &b[*k] {
                    acc[*j] += v * w;
                    touched.insert(*j);
                }
            }
            touched
                .into_iter()
                .filter_map(|j| {
                    let x = core::mem::take(&mut acc[j]);
                    (!x.is_zero()).then_some((j, x))
                })
                .collect()
        })
        .collect()
}

/// `row += q·other` on sorted sparse rows.
fn axpy(row: &SparseRow, q: &BigInt, other: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        let ci = row.get(i).map_or(usize::MAX, |x| x.0);
        let cj = other.get(j).map_or(usize::MAX, |x| x.0);
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, q * &other[j].1));
            j += 1;
        } else {
            let v = &row[i].1 + q * &other[j].1;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn lookup(row: &SparseRow, c: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&c, |x| x.0).ok().map(|k| &row[k].1)
}

fn unit_sparse(n: usize) -> Vec<SparseRow> {
    (0..n).map(|i| vec![(i, BigInt::one())]).collect()
}

/// Which transforms to record.
#[derive(Clone, Copy, Debug, Default)]
pub struct Track {
    pub left: bool,
    pub right: bool,
}

/// Smith normal form `L·M·R = S` of an `rows × cols` matrix.
///
/// `diag` holds the nonzero diagonal entries of `S` (positive, each dividing
/// the next); the remaining diagonal entries are zero.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    pub diag: Vec<BigInt>,
    /// Rows of `L` (`rows × rows`) when tracked.
    pub left: Option<Vec<SparseRow>>,
    /// Columns of `R` (`cols × cols`) when tracked, each as a sparse vector.
    pub right_cols: Option<Vec<SparseRow>>,
    /// Number of unit pivots found by the sparse stage.
    pub sparse_pivots: usize,
    /// Shape of the dense core left after sparse elimination.
    pub core_shape: (usize, usize),
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// Diagonal entries greater than one.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        self.diag.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn s_matrix(&self) -> IntMatrix {
        let mut s = IntMatrix::zeros(self.rows, self.cols);
        for (i, d) in self.diag.iter().enumerate() {
            s.set(i, i, d.clone());
        }
        s
    }

    pub fn left_matrix(&self) -> Option<IntMatrix> {
        self.left.as_ref().map(|l| IntMatrix::from_sparse(l, self.rows))
    }

    pub fn right_matrix(&self) -> Option<IntMatrix> {
        self.right_cols.as_ref().map(|cols| {
            let mut r = IntMatrix::zeros(self.cols, self.cols);
            for (j, col) in cols.iter().enumerate() {
                for (i, v) in col {
                    r.set(*i, j, v.clone());
                }
            }
            r
        })
    }

    /// Sparse elimination followed by a dense core reduction.
    pub fn compute(m: &[SparseRow], cols: usize, track: Track) -> SmithForm {
        let rows = m.len();
        let mut a: Vec<SparseRow> = m.to_vec();
        let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); cols];
        for (i, row) in a.iter().enumerate() {
            for (j, _) in row {
                col_rows[*j].insert(i);
            }
        }
        let mut left = track.left.then(|| unit_sparse(rows));
        let mut right = track.right.then(|| unit_sparse(cols));
        let mut row_active = vec![true; rows];
        let mut col_active = vec![true; cols];
        let mut pivots: Vec<(usize, usize)> = Vec::new();

        loop {
            // Markowitz choice among unit entries, scanning sparse columns first.
            let mut order: Vec<usize> =
                (0..cols).filter(|&c| col_active[c] && !col_rows[c].is_empty()).collect();
            order.sort_by_key(|&c| (col_rows[c].len(), c));
            let mut best: Option<(usize, usize, usize)> = None;
            for &c in &order {
                let cc = col_rows[c].len() - 1;
                for &r in &col_rows[c] {
                    if lookup(&a[r], c).is_some_and(|v| v.abs().is_one()) {
                        let cost = (a[r].len() - 1) * cc;
                        if best.map_or(true, |(b, _, _)| cost < b) {
                            best = Some((cost, r, c));
                        }
                    }
                }
                if best.is_some() {
                    break;
                }
            }
            let Some((_, r, c)) = best else { break };
            let p = lookup(&a[r], c).unwrap().clone();
            let others: Vec<usize> = col_rows[c].iter().copied().filter(|&i| i != r).collect();
            let pivot_row = a[r].clone();
            let pivot_left = left.as_ref().map(|l| l[r].clone());
            for i in others {
                let q = -(lookup(&a[i], c).unwrap() * &p);
                let new_row = axpy(&a[i], &q, &pivot_row);
                for (j, _) in &a[i] {
                    col_rows[*j].remove(&i);
                }
                for (j, _) in &new_row {
                    col_rows[*j].insert(i);
                }
                a[i] = new_row;
                if let (Some(l), Some(pl)) = (left.as_mut(), pivot_left.as_ref()) {
                    l[i] = axpy(&l[i], &q, pl);
                }
            }
            // Column c now meets only row r; clear the rest of row r by column operations.
            if let Some(rc) = right.as_mut() {
                let rcol_c = rc[c].clone();
                for (j, v) in &pivot_row {
                    if *j != c {
                        let q = -(v * &p);
                        rc[*j] = axpy(&rc[*j], &q, &rcol_c);
                    }
                }
            }
            for (j, _) in &pivot_row {
                col_rows[*j].remove(&r);
            }
            a[r] = vec![(c, BigInt::one())];
            if p.is_negative() {
                if let Some(l) = left.as_mut() {
                    for (_, v) in l[r].iter_mut() {
                        *v = -core::mem::take(v);
                    }
                }
            }
            row_active[r] = false;
            col_active[c] = false;
            pivots.push((r, c));
        }

        let core_rows: Vec<usize> =
            (0..rows).filter(|&i| row_active[i] && !a[i].is_empty()).collect();
        let zero_rows: Vec<usize> =
            (0..rows).filter(|&i| row_active[i] && a[i].is_empty()).collect();
        let core_cols: Vec<usize> = (0..cols).filter(|&j| col_active[j]).collect();
        let mut col_pos = vec![usize::MAX; cols];
        for (k, &j) in core_cols.iter().enumerate() {
            col_pos[j] = k;
        }
        let mut dense: Vec<Vec<BigInt>> = core_rows
            .iter()
            .map(|&i| {
                let mut row = vec![BigInt::zero(); core_cols.len()];
                for (j, v) in &a[i] {
                    row[col_pos[*j]] = v.clone();
                }
                row
            })
            .collect();
        let core_shape = (core_rows.len(), core_cols.len());
        let (core_diag, core_l, core_r) =
            dense_snf(&mut dense, core_cols.len(), track.left, track.right);

        let mut diag: Vec<BigInt> = vec![BigInt::one(); pivots.len()];
        diag.extend(core_diag.into_iter().filter(|d| !d.is_zero()));

        let left = left.map(|l| {
            let mut out: Vec<SparseRow> = pivots.iter().map(|&(r, _)| l[r].clone()).collect();
            let core_l = core_l.expect("tracked");
            for row in &core_l {
                let mut acc: SparseRow = Vec::new();
                for (k, v) in row.iter().enumerate() {
                    if !v.is_zero() {
                        acc = axpy(&acc, v, &l[core_rows[k]]);
                    }
                }
                out.push(acc);
            }
            out.extend(zero_rows.iter().map(|&i| l[i].clone()));
            out
        });
        let right_cols = right.map(|rc| {
            let mut out: Vec<SparseRow> = pivots.iter().map(|&(_, c)| rc[c].clone()).collect();
            let core_r = core_r.expect("tracked");
            for k in 0..core_cols.len() {
                let mut acc: SparseRow = Vec::new();
                for (l, row) in core_r.iter().enumerate() {
                    let v = &row[k];
                    if !v.is_zero() {
                        acc = axpy(&acc, v, &rc[core_cols[l]]);
                    }
                }
                out.push(acc);
            }
            out
        });
        SmithForm {
            rows,
            cols,
            diag,
            left,
            right_cols,
            sparse_pivots: pivots.len(),
            core_shape,
        }
    }
}

/// Dense Smith reduction in place. Returns the diagonal (length `min(r,c)`)
/// and, when requested, `L` (rows × rows) and `R` (cols × cols) as dense rows.
#[allow(clippy::type_complexity)]
pub fn dense_snf(
    a: &mut [Vec<BigInt>],
    cols: usize,
    track_left: bool,
    track_right: bool,
) -> (Vec<BigInt>, Option<Vec<Vec<BigInt>>>, Option<Vec<Vec<BigInt>>>) {
    let rows = a.len();
    let ident = |n: usize| -> Vec<Vec<BigInt>> {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect()
    };
    let mut l = track_left.then(|| ident(rows));
    let mut r = track_right.then(|| ident(cols));

    fn row_axpy(m: &mut [Vec<BigInt>], dst: usize, q: &BigInt, src: usize) {
        if q.is_zero() {
            return;
        }
        let (d, s) = if dst < src {
            let (lo, hi) = m.split_at_mut(src);
            (&mut lo[dst], &hi[0])
        } else {
            let (lo, hi) = m.split_at_mut(dst);
            (&mut hi[0], &lo[src])
        };
        for (x, y) in d.iter_mut().zip(s.iter()) {
            if !y.is_zero() {
                *x += q * y;
            }
        }
    }
    fn col_axpy(m: &mut [Vec<BigInt>], dst: usize, q: &BigInt, src: usize) {
        if q.is_zero() {
            return;
        }
        for row in m.iter_mut() {
            if !row[src].is_zero() {
                let v = q * &row[src];
                row[dst] += v;
            }
        }
    }
    fn col_swap(m: &mut [Vec<BigInt>], i: usize, j: usize) {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
    }

    let n = rows.min(cols);
    let mut diag = Vec::with_capacity(n);
    for t in 0..n {
        // Smallest nonzero entry of the trailing block as the starting pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else {
            diag.extend((t..n).map(|_| BigInt::zero()));
            break;
        };
        a.swap(t, bi);
        if let Some(l) = l.as_mut() {
            l.swap(t, bi);
        }
        col_swap(a, t, bj);
        if let Some(r) = r.as_mut() {
            col_swap(r, t, bj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = -(&a[i][t] / &a[t][t]);
                row_axpy(a, i, &q, t);
                if let Some(l) = l.as_mut() {
                    row_axpy(l, i, &q, t);
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    if let Some(l) = l.as_mut() {
                        l.swap(t, i);
                    }
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = -(&a[t][j] / &a[t][t]);
                col_axpy(a, j, &q, t);
                if let Some(r) = r.as_mut() {
                    col_axpy(r, j, &q, t);
                }
                if !a[t][j].is_zero() {
                    col_swap(a, t, j);
                    if let Some(r) = r.as_mut() {
                        col_swap(r, t, j);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Enforce divisibility of the trailing block by the pivot.
            let p = a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    row_axpy(a, t, &one, i);
                    if let Some(l) = l.as_mut() {
                        row_axpy(l, t, &one, i);
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -core::mem::take(x);
            }
            if let Some(l) = l.as_mut() {
                for x in l[t].iter_mut() {
                    *x = -core::mem::take(x);
                }
            }
        }
        diag.push(a[t][t].clone());
    }
    (diag, l, r)
}

/// `L·M·R = S` with dense outputs.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let snf = SmithForm::compute(&m.to_sparse(), m.cols(), Track { left: true, right: true });
    let s = snf.s_matrix();
    (s, snf.left_matrix().unwrap(), snf.right_matrix().unwrap())
}
