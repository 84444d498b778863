//! Hermite and Smith normal forms over the integers.
//!
//! Matrices are stored as `Vec<Vec<BigInt>>` in row-major order and lattices
//! are always row lattices: the lattice of a matrix is the Z-span of its rows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntVec = Vec<BigInt>;
pub type IntMatrix = Vec<IntVec>;

pub fn zero_vec(n: usize) -> IntVec {
    vec![BigInt::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> IntVec {
    let mut v = zero_vec(n);
    v[i] = BigInt::one();
    v
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| unit_vec(n, i)).collect()
}

pub fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `a += k * b`
pub fn axpy(a: &mut [BigInt], k: &BigInt, b: &[BigInt]) {
    if k.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x += k * y;
        }
    }
}

pub fn scale(v: &[BigInt], k: &BigInt) -> IntVec {
    v.iter().map(|x| x * k).collect()
}

/// Row vector times matrix.
pub fn vec_mat(v: &[BigInt], m: &[IntVec], cols: usize) -> IntVec {
    let mut out = zero_vec(cols);
    for (vi, row) in v.iter().zip(m) {
        axpy(&mut out, vi, row);
    }
    out
}

pub fn mat_mul(a: &[IntVec], b: &[IntVec], cols: usize) -> IntMatrix {
    a.iter().map(|row| vec_mat(row, b, cols)).collect()
}

/// Extended gcd with a non-negative gcd: returns `(g, s, t)` with `s*a + t*b = g`.
pub fn xgcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Replaces rows `i`, `j` by `s*ri + t*rj` and `(b/g)*ri - (a/g)*rj`, so row
/// `i` carries the gcd in column `c` and row `j` is zero there.
fn combine_rows(rows: &mut [IntVec], i: usize, j: usize, c: usize, companion: Option<&mut [IntVec]>) {
    let a = rows[i][c].clone();
    let b = rows[j][c].clone();
    let (g, s, t) = xgcd(&a, &b);
    let ag = &a / &g;
    let bg = &b / &g;
    let apply = |m: &mut [IntVec]| {
        let ri = m[i].clone();
        let rj = m[j].clone();
        m[i] = ri.iter().zip(&rj).map(|(x, y)| &s * x + &t * y).collect();
        m[j] = ri.iter().zip(&rj).map(|(x, y)| &bg * x - &ag * y).collect();
    };
    apply(rows);
    if let Some(u) = companion {
        apply(u);
    }
}

/// Row-style Hermite normal form with a transform.
///
/// Returns `(h, u)` where `u` is unimodular, `u * a = h`, the nonzero rows of
/// `h` come first in echelon form with positive pivots, entries above each
/// pivot reduced into `[0, pivot)`, and zero rows are at the bottom.
pub fn hnf_with_transform(a: &[IntVec], cols: usize) -> (IntMatrix, IntMatrix) {
    let k = a.len();
    let mut h: IntMatrix = a.to_vec();
    let mut u = identity(k);
    let mut r = 0;
    for c in 0..cols {
        if r == k {
            break;
        }
        let Some(p) = (r..k).find(|&i| !h[i][c].is_zero()) else {
            continue;
        };
        h.swap(r, p);
        u.swap(r, p);
        for i in r + 1..k {
            if !h[i][c].is_zero() {
                combine_rows(&mut h, r, i, c, Some(&mut u));
            }
        }
        if h[r][c].is_negative() {
            h[r].iter_mut().for_each(|x| *x = -&*x);
            u[r].iter_mut().for_each(|x| *x = -&*x);
        }
        let pivot = h[r][c].clone();
        for i in 0..r {
            let q = h[i][c].div_floor(&pivot);
            if !q.is_zero() {
                let neg = -q;
                let row = h[r].clone();
                axpy(&mut h[i], &neg, &row);
                let urow = u[r].clone();
                axpy(&mut u[i], &neg, &urow);
            }
        }
        r += 1;
    }
    (h, u)
}

/// Canonical row-style HNF basis (zero rows dropped).
pub fn hnf(a: &[IntVec], cols: usize) -> IntMatrix {
    let mut h: IntMatrix = a.iter().filter(|r| !is_zero_vec(r)).cloned().collect();
    let k = h.len();
    let mut r = 0;
    for c in 0..cols {
        if r == k {
            break;
        }
        let Some(p) = (r..k).find(|&i| !h[i][c].is_zero()) else {
            continue;
        };
        h.swap(r, p);
        for i in r + 1..k {
            if !h[i][c].is_zero() {
                combine_rows(&mut h, r, i, c, None);
            }
        }
        if h[r][c].is_negative() {
            h[r].iter_mut().for_each(|x| *x = -&*x);
        }
        let pivot = h[r][c].clone();
        for i in 0..r {
            let q = h[i][c].div_floor(&pivot);
            if !q.is_zero() {
                let row = h[r].clone();
                axpy(&mut h[i], &-q, &row);
            }
        }
        r += 1;
    }
    h.truncate(r);
    h
}

/// Basis of the integer left kernel `{x : x * a = 0}`. The basis spans a
/// saturated lattice.
pub fn left_kernel(a: &[IntVec], cols: usize) -> IntMatrix {
    let (h, u) = hnf_with_transform(a, cols);
    let kernel: IntMatrix = h.iter().zip(u).filter(|(row, _)| is_zero_vec(row)).map(|(_, urow)| urow).collect();
    hnf(&kernel, a.len())
}

/// Smith normal form data for a row lattice: `diag` holds the invariant
/// factors (one per column, zeros for free columns) and `q` is the unimodular
/// column transform with `q_inv` its inverse. Some unimodular `p` satisfies
/// `p * a * q = diag`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub diag: Vec<BigInt>,
    pub q: IntMatrix,
    pub q_inv: IntMatrix,
}

pub fn smith(a: &[IntVec], cols: usize) -> Smith {
    let mut m: IntMatrix = a.iter().filter(|r| !is_zero_vec(r)).cloned().collect();
    let rows = m.len();
    let mut q = identity(cols);
    let mut q_inv = identity(cols);

    // column op: col j += k * col i  (q: same; q_inv: row i -= k * row j)
    fn col_add(m: &mut [IntVec], q: &mut [IntVec], q_inv: &mut [IntVec], j: usize, i: usize, k: &BigInt) {
        for row in m.iter_mut() {
            let v = &row[i] * k;
            row[j] += v;
        }
        for row in q.iter_mut() {
            let v = &row[i] * k;
            row[j] += v;
        }
        let rj = q_inv[j].clone();
        axpy(&mut q_inv[i], &-k, &rj);
    }
    fn col_swap(m: &mut [IntVec], q: &mut [IntVec], q_inv: &mut [IntVec], i: usize, j: usize) {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
        for row in q.iter_mut() {
            row.swap(i, j);
        }
        q_inv.swap(i, j);
    }

    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        col_swap(&mut m, &mut q, &mut q_inv, t, bj);
        loop {
            let mut dirty = false;
            let pivot = m[t][t].clone();
            for i in t + 1..rows {
                if !m[i][t].is_zero() {
                    let k = m[i][t].div_floor(&pivot);
                    let row = m[t].clone();
                    axpy(&mut m[i], &-k, &row);
                    if !m[i][t].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !m[t][j].is_zero() {
                    let k = m[t][j].div_floor(&pivot);
                    col_add(&mut m, &mut q, &mut q_inv, j, t, &-k);
                    if !m[t][j].is_zero() {
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
            // move the new smallest entry of row/column t into the pivot slot
            let mut best = (t, t);
            for i in t..rows {
                if !m[i][t].is_zero() && (m[best.0][best.1].is_zero() || m[i][t].abs() < m[best.0][best.1].abs()) {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !m[t][j].is_zero() && (m[best.0][best.1].is_zero() || m[t][j].abs() < m[best.0][best.1].abs()) {
                    best = (t, j);
                }
            }
            m.swap(t, best.0);
            col_swap(&mut m, &mut q, &mut q_inv, t, best.1);
        }
        if m[t][t].is_negative() {
            m[t].iter_mut().for_each(|x| *x = -&*x);
        }
        t += 1;
    }
    let mut diag = vec![BigInt::zero(); cols];
    for (i, d) in diag.iter_mut().enumerate().take(t) {
        *d = m[i][i].clone();
    }
    Smith { diag, q, q_inv }
}

pub fn lcm_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn hnf_of_even_and_x() {
        // lattice spanned by (2,0),(0,1) and a redundant (2,1)
        let h = hnf(&m(&[&[2, 1], &[2, 0], &[0, 1]]), 2);
        assert_eq!(h, m(&[&[2, 0], &[0, 1]]));
    }

    #[test]
    fn hnf_reduces_above_pivot() {
        let h = hnf(&m(&[&[1, 5], &[0, 3]]), 2);
        assert_eq!(h, m(&[&[1, 2], &[0, 3]]));
    }

    #[test]
    fn left_kernel_of_rank_one() {
        let k = left_kernel(&m(&[&[1, 2], &[2, 4], &[0, 0]]), 2);
        for row in &k {
            let prod = vec_mat(row, &m(&[&[1, 2], &[2, 4], &[0, 0]]), 2);
            assert!(is_zero_vec(&prod));
        }
        assert_eq!(k.len(), 2);
    }

    #[test]
    fn smith_diagonal() {
        let s = smith(&m(&[&[2, 4], &[6, 8]]), 2);
        let mut d: Vec<BigInt> = s.diag.clone();
        d.sort();
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(4)]);
        let prod = mat_mul(&s.q, &s.q_inv, 2);
        assert_eq!(prod, identity(2));
    }
}
