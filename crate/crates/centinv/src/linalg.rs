//! Exact dense linear algebra over a [`Field`]: reduced row echelon form,
//! rank, and kernel bases. Division happens inside the field, so every step
//! is exact; there is no floating point anywhere.

use crate::field::Field;

/// Dense matrix as a row-major list of rows. Rows may be empty (0 columns).
pub type Mat<F> = Vec<Vec<F>>;

/// Bring `m` into reduced row echelon form in place; returns pivot columns.
pub fn rref<F: Field>(m: &mut Mat<F>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        // find a pivot in column c at or below row r
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, pv) in m[i].iter_mut().zip(&pivot_row) {
                    let t = f.mul(pv);
                    *x = x.sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Rank of the row span.
pub fn rank<F: Field>(m: &Mat<F>) -> usize {
    let mut work = m.clone();
    rref(&mut work).len()
}

/// Basis of the right kernel `{x : m x = 0}` of an `rows x cols` matrix.
pub fn right_kernel<F: Field>(m: &Mat<F>, cols: usize, ctx: F::Ctx) -> Vec<Vec<F>> {
    let mut work = m.clone();
    let pivots = rref(&mut work);
    let piv_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if piv_set.contains(&free) {
            continue;
        }
        let mut v = vec![F::zero(ctx); cols];
        v[free] = F::one(ctx);
        for (row, &pc) in pivots.iter().enumerate() {
            // pivot row: x_pc = -sum_{j free} m[row][j] x_j
            v[pc] = work[row][free].neg();
        }
        basis.push(v);
    }
    basis
}

/// Basis of the left kernel `{c : c m = 0}`, i.e. linear relations among rows.
pub fn left_kernel<F: Field>(m: &Mat<F>, ctx: F::Ctx) -> Vec<Vec<F>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut t: Mat<F> = vec![vec![F::zero(ctx); rows]; cols];
    for i in 0..rows {
        for j in 0..cols {
            t[j][i] = m[i][j].clone();
        }
    }
    right_kernel(&t, rows, ctx)
}

/// Does `target` lie in the row span of `rows`?
pub fn in_row_span<F: Field>(rows: &Mat<F>, target: &[F]) -> bool {
    RowSpan::new(rows).contains(target)
}

/// A row space in reduced echelon form, for repeated membership tests.
pub struct RowSpan<F: Field> {
    rref: Mat<F>,
    pivots: Vec<usize>,
}

impl<F: Field> RowSpan<F> {
    pub fn new(rows: &Mat<F>) -> Self {
        let mut rref_rows = rows.clone();
        let pivots = rref(&mut rref_rows);
        rref_rows.truncate(pivots.len());
        RowSpan {
            rref: rref_rows,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce `v` against the pivots and test for zero.
    pub fn contains(&self, v: &[F]) -> bool {
        let mut work = v.to_vec();
        for (row, &pc) in self.rref.iter().zip(&self.pivots) {
            if work[pc].is_zero() {
                continue;
            }
            let f = work[pc].clone();
            for (w, r) in work.iter_mut().zip(row) {
                let t = f.mul(r);
                *w = w.sub(&t);
            }
        }
        work.iter().all(|x| x.is_zero())
    }
}

/// Square matrix product.
pub fn mat_mul<F: Field>(a: &Mat<F>, b: &Mat<F>, ctx: F::Ctx) -> Mat<F> {
    let n = a.len();
    let mut out = vec![vec![F::zero(ctx); n]; n];
    for r in 0..n {
        for k in 0..n {
            if a[r][k].is_zero() {
                continue;
            }
            for c in 0..n {
                if b[k][c].is_zero() {
                    continue;
                }
                let t = a[r][k].mul(&b[k][c]);
                out[r][c] = out[r][c].add(&t);
            }
        }
    }
    out
}

/// Entrywise `a + k·b`.
pub fn mat_axpy<F: Field>(a: &Mat<F>, k: &F, b: &Mat<F>) -> Mat<F> {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| {
            ra.iter()
                .zip(rb)
                .map(|(x, y)| x.add(&k.mul(y)))
                .collect()
        })
        .collect()
}

pub fn mat_transpose<F: Field>(a: &Mat<F>, ctx: F::Ctx) -> Mat<F> {
    let n = a.len();
    let mut out = vec![vec![F::zero(ctx); n]; n];
    for r in 0..n {
        for c in 0..n {
            out[c][r] = a[r][c].clone();
        }
    }
    out
}
