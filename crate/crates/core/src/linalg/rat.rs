//! Dense linear algebra over Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::int::IntVec;

pub type QVec = Vec<BigRational>;
pub type QMatrix = Vec<QVec>;

pub fn q(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

pub fn qi(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn to_q(v: &[BigInt]) -> QVec {
    v.iter().map(q).collect()
}

pub fn is_zero(v: &[BigRational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Integer coordinates when every entry is integral.
pub fn to_int(v: &[BigRational]) -> Option<IntVec> {
    v.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
}

/// Scales `v` by the lcm of its denominators.
pub fn clear_denominators(v: &[BigRational]) -> IntVec {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter().map(|x| (x * q(&l)).to_integer()).collect()
}

pub fn transpose(a: &[QVec], cols: usize) -> QMatrix {
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(a: &mut QMatrix, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let k = a[i][c].clone();
                let row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&row) {
                    *x -= &k * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(a: &[QVec], cols: usize) -> usize {
    let mut m = a.to_vec();
    rref(&mut m, cols).len()
}

/// Basis of `{x : a x = 0}` for an `n x k` matrix `a`.
pub fn nullspace(a: &[QVec], k: usize) -> QMatrix {
    let mut m = a.to_vec();
    let pivots = rref(&mut m, k);
    let free: Vec<usize> = (0..k).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![BigRational::zero(); k];
            x[f] = BigRational::one();
            for (row, &p) in m.iter().zip(&pivots) {
                x[p] = -row[f].clone();
            }
            x
        })
        .collect()
}

/// Basis of `{x : x a = 0}` for a matrix with `rows` rows and `cols` columns.
pub fn left_nullspace(a: &[QVec], cols: usize) -> QMatrix {
    nullspace(&transpose(a, cols), a.len())
}

/// Some `x` with `x * rows = target`, if one exists.
pub fn solve_left(rows: &[QVec], target: &[BigRational]) -> Option<QVec> {
    let k = rows.len();
    let n = target.len();
    // augmented system rows^T x = target
    let mut aug: QMatrix = (0..n)
        .map(|j| {
            let mut r: QVec = rows.iter().map(|row| row[j].clone()).collect();
            r.push(target[j].clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![BigRational::zero(); k];
    for (row, &p) in aug.iter().zip(&pivots) {
        x[p] = row[k].clone();
    }
    Some(x)
}

pub fn vec_mat(v: &[BigRational], m: &[QVec], cols: usize) -> QVec {
    let mut out = vec![BigRational::zero(); cols];
    for (vi, row) in v.iter().zip(m) {
        if vi.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(row) {
            *o += vi * x;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qv(xs: &[i64]) -> QVec {
        xs.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn solve_and_nullspace() {
        let rows = vec![qv(&[1, 0, 1]), qv(&[0, 1, 1])];
        let x = solve_left(&rows, &qv(&[2, 3, 5])).unwrap();
        assert_eq!(x, qv(&[2, 3]));
        assert!(solve_left(&rows, &qv(&[1, 1, 0])).is_none());
        let ker = left_nullspace(&[qv(&[1, 2]), qv(&[2, 4])], 2);
        assert_eq!(ker.len(), 1);
        assert!(is_zero(&vec_mat(&ker[0], &[qv(&[1, 2]), qv(&[2, 4])], 2)));
    }
}
