//! Dense elimination: exact reduced row echelon forms over any [`ExactField`],
//! a fraction-free variant for integer matrices, and a full-pivoting kernel
//! for big complex floats.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bigfloat::{ComplexField, Real};
use crate::field::{ExactField, Field};

pub type Matrix<E> = Vec<Vec<E>>;

/// Reduces `m` in place to reduced row echelon form, dropping zero rows.
/// Pivots are the first nonzero entry in column order, so the result does not
/// depend on anything but the row space.
pub fn rref<F: ExactField>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| !f.is_zero(&m[r][c])) else {
            continue;
        };
        m.swap(rank, p);
        let inv = f.inv(&m[rank][c]).expect("nonzero pivot");
        for x in m[rank][c..].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let prow = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || f.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for j in c..ncols {
                if !f.is_zero(&prow[j]) {
                    row[j] = f.sub(&row[j], &f.mul(&factor, &prow[j]));
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    m.truncate(rank);
    pivots
}

pub fn rank<F: ExactField>(f: &F, m: &Matrix<F::Elem>) -> usize {
    let mut a = m.clone();
    rref(f, &mut a).len()
}

pub fn transpose<E: Clone>(m: &Matrix<E>, ncols: usize) -> Matrix<E> {
    (0..ncols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Basis of `{x : m x = 0}`, one vector per free column, each with a 1 in its
/// free coordinate.
pub fn right_kernel<F: ExactField>(f: &F, m: &Matrix<F::Elem>, ncols: usize) -> Matrix<F::Elem> {
    let mut a = m.clone();
    let pivots = rref(f, &mut a);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&j| !is_pivot[j])
        .map(|j| {
            let mut x = vec![f.zero(); ncols];
            x[j] = f.one();
            for (row, &p) in a.iter().zip(&pivots) {
                x[p] = f.neg(&row[j]);
            }
            x
        })
        .collect()
}

/// Basis of `{b : b^T m = 0}`.
pub fn left_kernel<F: ExactField>(f: &F, m: &Matrix<F::Elem>, ncols: usize) -> Matrix<F::Elem> {
    let t = transpose(m, ncols);
    right_kernel(f, &t, m.len())
}

/// One solution of `a x = b` (free variables set to zero) or `None` if the
/// system is inconsistent.
pub fn solve<F: ExactField>(f: &F, a: &Matrix<F::Elem>, b: &[F::Elem], ncols: usize) -> Option<Vec<F::Elem>> {
    let mut aug: Matrix<F::Elem> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![f.zero(); ncols];
    for (row, &p) in aug.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Reduced echelon basis of a row space, used for membership and equality tests.
#[derive(Clone, Debug)]
pub struct RowSpace<F: Field> {
    pub rows: Matrix<F::Elem>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl<F: ExactField> RowSpace<F> {
    pub fn new(f: &F, rows: &Matrix<F::Elem>, ncols: usize) -> Self {
        let mut a = rows.clone();
        let pivots = rref(f, &mut a);
        RowSpace { rows: a, pivots, ncols }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, f: &F, v: &[F::Elem]) -> bool {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for j in p..self.ncols {
                if !f.is_zero(&row[j]) {
                    v[j] = f.sub(&v[j], &f.mul(&c, &row[j]));
                }
            }
        }
        v.iter().all(|x| f.is_zero(x))
    }

    pub fn contains_space(&self, f: &F, other: &RowSpace<F>) -> bool {
        other.rows.iter().all(|r| self.contains(f, r))
    }

    pub fn same_as(&self, f: &F, other: &RowSpace<F>) -> bool {
        self.pivots == other.pivots
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(a, b)| a.iter().zip(b).all(|(x, y)| f.elem_eq(x, y)))
    }
}

fn row_content(row: &[BigInt]) -> BigInt {
    row.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row_content(row);
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Reduced row echelon form of an integer matrix over the rationals, computed
/// fraction-free: rows stay integral and primitive until the final division
/// by the pivots. Zero rows are dropped.
pub fn rref_integer(mut m: Matrix<BigInt>) -> (Matrix<BigRational>, Vec<usize>) {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    for row in m.iter_mut() {
        make_primitive(row);
    }
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..ncols {
        if rank == nrows {
            break;
        }
        // smallest nonzero entry keeps growth down
        let Some(p) = (rank..nrows)
            .filter(|&r| !m[r][c].is_zero())
            .min_by(|&a, &b| m[a][c].abs().cmp(&m[b][c].abs()).then(a.cmp(&b)))
        else {
            continue;
        };
        m.swap(rank, p);
        if m[rank][c].is_negative() {
            for x in m[rank].iter_mut() {
                *x = -&*x;
            }
        }
        let prow = m[rank].clone();
        let pv = prow[c].clone();
        for r in rank + 1..nrows {
            if m[r][c].is_zero() {
                continue;
            }
            let g = pv.gcd(&m[r][c]);
            let (a, b) = (&pv / &g, &m[r][c] / &g);
            let row = &mut m[r];
            for j in c..ncols {
                row[j] = &a * &row[j] - &b * &prow[j];
            }
            make_primitive(row);
        }
        pivots.push(c);
        rank += 1;
    }
    m.truncate(rank);
    // back substitution, still integral
    for k in (0..rank).rev() {
        let c = pivots[k];
        let prow = m[k].clone();
        let pv = prow[c].clone();
        for r in 0..k {
            if m[r][c].is_zero() {
                continue;
            }
            let g = pv.gcd(&m[r][c]);
            let (a, b) = (&pv / &g, &m[r][c] / &g);
            let row = &mut m[r];
            for j in 0..ncols {
                if !prow[j].is_zero() || !a.is_one() {
                    row[j] = &a * &row[j] - &b * &prow[j];
                }
            }
            make_primitive(row);
        }
    }
    let out = m
        .into_iter()
        .zip(&pivots)
        .map(|(row, &c)| {
            let pv = row[c].clone();
            row.into_iter().map(|x| BigRational::new(x, pv.clone())).collect()
        })
        .collect();
    (out, pivots)
}

/// [`rref`] over the rationals via [`rref_integer`], much faster when
/// entries are large.
pub fn rref_rational(m: &Matrix<BigRational>) -> (Matrix<BigRational>, Vec<usize>) {
    let ints = m
        .iter()
        .map(|row| {
            let den = crate::field::common_denominator(row.iter());
            row.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect()
        })
        .collect();
    rref_integer(ints)
}

pub fn rank_rational(m: &Matrix<BigRational>) -> usize {
    rref_rational(m).1.len()
}

/// [`right_kernel`] over the rationals, fraction-free.
pub fn right_kernel_rational(m: &Matrix<BigRational>, ncols: usize) -> Matrix<BigRational> {
    let (a, pivots) = rref_rational(m);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&j| !is_pivot[j])
        .map(|j| {
            let mut x = vec![BigRational::zero(); ncols];
            x[j] = BigRational::one();
            for (row, &p) in a.iter().zip(&pivots) {
                x[p] = -row[j].clone();
            }
            x
        })
        .collect()
}

/// Result of a numerical kernel computation.
#[derive(Clone, Debug)]
pub struct FloatKernel {
    pub basis: Matrix<crate::bigfloat::BigComplex>,
    /// Magnitudes of the accepted pivots, in elimination order.
    pub kept_pivots: Vec<Real>,
    /// Largest magnitude left when elimination stopped, zero if none.
    pub max_dropped: Real,
    /// The absolute zero threshold that was applied.
    pub threshold: Real,
}

impl FloatKernel {
    pub fn rank(&self) -> usize {
        self.kept_pivots.len()
    }

    /// `max_dropped / min_kept`, or zero when nothing was dropped.
    pub fn pivot_gap(&self, cf: &ComplexField) -> Real {
        match self.kept_pivots.iter().min() {
            Some(min) if !self.max_dropped.repr().is_zero() => cf.rdiv(&self.max_dropped, min),
            _ => Real::ZERO,
        }
    }
}

/// Right kernel of a complex matrix by Gauss-Jordan elimination with full
/// pivoting. Entries of magnitude at most `rel_tol * max|entry|` count as
/// zero. Ties in the pivot search are broken by position, so the result is
/// deterministic.
pub fn float_right_kernel(
    cf: &ComplexField,
    m: &Matrix<crate::bigfloat::BigComplex>,
    ncols: usize,
    rel_tol: &Real,
) -> FloatKernel {
    let mut a = m.clone();
    let nrows = a.len();
    let mut max_entry = Real::ZERO;
    for row in &a {
        for x in row {
            let v = cf.abs(x);
            if v > max_entry {
                max_entry = v;
            }
        }
    }
    let threshold = cf.rmul(rel_tol, &max_entry);
    let thr_sq = cf.rmul(&threshold, &threshold);
    let mut col_used = vec![false; ncols];
    let mut pivot_cols = Vec::new();
    let mut kept = Vec::new();
    let mut rank = 0;
    let mut max_dropped = Real::ZERO;
    loop {
        if rank == nrows || rank == ncols {
            break;
        }
        let mut best: Option<(usize, usize, Real)> = None;
        for (r, row) in a.iter().enumerate().skip(rank) {
            for (c, x) in row.iter().enumerate() {
                if col_used[c] {
                    continue;
                }
                let v = cf.abs_sq(x);
                if best.as_ref().map_or(true, |(_, _, b)| v > *b) {
                    best = Some((r, c, v));
                }
            }
        }
        let Some((pr, pc, pv)) = best else { break };
        if pv <= thr_sq || pv.repr().is_zero() {
            max_dropped = cf.rsqrt(&pv);
            break;
        }
        a.swap(rank, pr);
        let inv = cf.inv(&a[rank][pc]).expect("nonzero pivot");
        for x in a[rank].iter_mut() {
            *x = cf.mul(x, &inv);
        }
        let prow = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == rank || row[pc].is_zero() {
                continue;
            }
            let factor = row[pc].clone();
            for j in 0..ncols {
                if !col_used[j] || j == pc {
                    row[j] = cf.sub(&row[j], &cf.mul(&factor, &prow[j]));
                }
            }
            row[pc] = cf.zero();
        }
        col_used[pc] = true;
        pivot_cols.push(pc);
        kept.push(cf.rsqrt(&pv));
        rank += 1;
    }
    let basis = (0..ncols)
        .filter(|&j| !col_used[j])
        .map(|j| {
            let mut x = vec![cf.zero(); ncols];
            x[j] = cf.one();
            for (k, &p) in pivot_cols.iter().enumerate() {
                x[p] = cf.neg(&a[k][j]);
            }
            x
        })
        .collect();
    FloatKernel {
        basis,
        kept_pivots: kept,
        max_dropped,
        threshold,
    }
}

pub fn float_left_kernel(
    cf: &ComplexField,
    m: &Matrix<crate::bigfloat::BigComplex>,
    ncols: usize,
    rel_tol: &Real,
) -> FloatKernel {
    let t = transpose(m, ncols);
    float_right_kernel(cf, &t, m.len(), rel_tol)
}

/// Reduced row echelon form of a float row space over its columns in order,
/// with partial pivoting inside each column. Returns the rows (pivots scaled
/// to one) and their pivot columns.
pub fn float_rref(
    cf: &ComplexField,
    rows: &Matrix<crate::bigfloat::BigComplex>,
    ncols: usize,
    rel_tol: &Real,
) -> (Matrix<crate::bigfloat::BigComplex>, Vec<usize>) {
    let mut a = rows.clone();
    let nrows = a.len();
    let mut max_entry = Real::ZERO;
    for row in &a {
        for x in row {
            let v = cf.abs(x);
            if v > max_entry {
                max_entry = v;
            }
        }
    }
    let thr = cf.rmul(rel_tol, &max_entry);
    let thr_sq = cf.rmul(&thr, &thr);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..ncols {
        if rank == nrows {
            break;
        }
        let mut best: Option<(usize, Real)> = None;
        for (r, row) in a.iter().enumerate().skip(rank) {
            let v = cf.abs_sq(&row[c]);
            if best.as_ref().map_or(true, |(_, b)| v > *b) {
                best = Some((r, v));
            }
        }
        let Some((pr, pv)) = best else { break };
        if pv <= thr_sq || pv.repr().is_zero() {
            continue;
        }
        a.swap(rank, pr);
        let inv = cf.inv(&a[rank][c]).expect("nonzero pivot");
        for x in a[rank].iter_mut() {
            *x = cf.mul(x, &inv);
        }
        let prow = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == rank || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for j in 0..ncols {
                row[j] = cf.sub(&row[j], &cf.mul(&factor, &prow[j]));
            }
            row[c] = cf.zero();
        }
        pivots.push(c);
        rank += 1;
    }
    a.truncate(rank);
    (a, pivots)
}
