use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::int::{axpy, hnf, is_zero_vec, left_kernel, vec_mat, IntMatrix, IntVec};

/// A sublattice of `Z^dim`, stored as its canonical row HNF basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    dim: usize,
    basis: IntMatrix,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice { dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        Self::from_rows(&super::int::identity(dim), dim)
    }

    pub fn from_rows(rows: &[IntVec], dim: usize) -> Self {
        let basis = hnf(rows, dim);
        let pivots = basis.iter().map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero hnf row")).collect();
        Lattice { dim, basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Canonical residue of `v` modulo the lattice.
    pub fn reduce(&self, v: &[BigInt]) -> IntVec {
        let mut v = v.to_vec();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            let q = v[c].div_floor(&row[c]);
            if !q.is_zero() {
                axpy(&mut v, &-q, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    pub fn leq(&self, other: &Lattice) -> bool {
        self.basis.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Lattice::from_rows(&rows, self.dim)
    }

    pub fn intersect(&self, other: &Lattice) -> Lattice {
        if self.is_zero() || other.is_zero() {
            return Lattice::zero(self.dim);
        }
        let mut stacked = self.basis.clone();
        stacked.extend(other.basis.iter().cloned());
        let k = left_kernel(&stacked, self.dim);
        let n1 = self.basis.len();
        let rows: IntMatrix = k.iter().map(|row| vec_mat(&row[..n1], &self.basis, self.dim)).collect();
        Lattice::from_rows(&rows, self.dim)
    }

    /// Index in `Z^dim` when the lattice has full rank.
    pub fn index(&self) -> Option<BigInt> {
        if self.rank() < self.dim {
            return None;
        }
        Some(self.basis.iter().zip(&self.pivots).fold(BigInt::one(), |acc, (r, &c)| acc * &r[c]))
    }

    pub fn is_full(&self) -> bool {
        self.index().is_some_and(|i| i.is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> IntVec {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn intersect_of_multiples() {
        let a = Lattice::from_rows(&[v(&[2])], 1);
        let b = Lattice::from_rows(&[v(&[3])], 1);
        assert_eq!(a.intersect(&b), Lattice::from_rows(&[v(&[6])], 1));
        assert_eq!(a.sum(&b), Lattice::full(1));
    }

    #[test]
    fn reduce_gives_canonical_residue() {
        let l = Lattice::from_rows(&[v(&[2, 0]), v(&[0, 3])], 2);
        assert_eq!(l.reduce(&v(&[5, -1])), v(&[1, 2]));
        assert!(l.contains(&v(&[4, 6])));
        assert!(!l.contains(&v(&[1, 0])));
    }

    fn small_rows() -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 0..4)
    }

    proptest! {
        #[test]
        fn generators_belong_and_hnf_is_canonical(rows in small_rows()) {
            let rows: IntMatrix = rows.iter().map(|r| v(r)).collect();
            let l = Lattice::from_rows(&rows, 3);
            for r in &rows {
                prop_assert!(l.contains(r));
            }
            let again = Lattice::from_rows(l.basis(), 3);
            prop_assert_eq!(&again, &l);
            let mut rev = rows.clone();
            rev.reverse();
            prop_assert_eq!(Lattice::from_rows(&rev, 3), l);
        }

        #[test]
        fn intersection_is_contained_in_both(a in small_rows(), b in small_rows()) {
            let a = Lattice::from_rows(&a.iter().map(|r| v(r)).collect::<Vec<_>>(), 3);
            let b = Lattice::from_rows(&b.iter().map(|r| v(r)).collect::<Vec<_>>(), 3);
            let i = a.intersect(&b);
            prop_assert!(i.leq(&a) && i.leq(&b));
            prop_assert!(a.leq(&a.sum(&b)) && b.leq(&a.sum(&b)));
        }
    }
}
