//! Sublattices of a common ambient Z^n, presented by generator matrices
//! (columns generate). Sum and intersection come from Hermite and kernel
//! computations; quotient invariants from the Smith form of the expression
//! of the sublattice in a basis of the ambient one.

use crate::arith::require_prime;
use crate::error::{Error, Result};
use crate::linalg::mat::{Mat, Scalar};
use crate::linalg::smith::{hnf_basis, kernel_basis, smith_form, solve_in_echelon_basis, val_l};
use crate::partition::Partition;

/// Canonical basis of the lattice generated by the columns of both inputs.
pub fn lattice_sum<T: Scalar>(a: &Mat<T>, b: &Mat<T>) -> Result<Mat<T>> {
    if a.rows() != b.rows() {
        return Err(Error::Dimension("lattice_sum: ambient ranks differ".into()));
    }
    Ok(hnf_basis(&a.hstack(b)?))
}

/// Canonical basis of the intersection of the two column lattices.
pub fn lattice_intersection<T: Scalar>(a: &Mat<T>, b: &Mat<T>) -> Result<Mat<T>> {
    if a.rows() != b.rows() {
        return Err(Error::Dimension(
            "lattice_intersection: ambient ranks differ".into(),
        ));
    }
    if a.cols() == 0 || b.cols() == 0 {
        return Ok(Mat::zero(a.rows(), 0));
    }
    // x ∈ A∩B iff x = A·u = B·v, i.e. (u, v) ∈ ker [A | −B].
    let stacked = a.hstack(&b.neg())?;
    let k = kernel_basis(&stacked);
    let u_part = Mat::from_fn(a.cols(), k.cols(), |i, j| k[(i, j)].clone());
    Ok(hnf_basis(&a.mul(&u_part)?))
}

/// Invariants of the quotient L/S for sublattices S ⊆ L of a common Z^n:
/// the l-primary part as a partition, and the free corank rank(L) − rank(S).
pub fn quotient_invariants<T: Scalar>(
    l_gens: &Mat<T>,
    s_gens: &Mat<T>,
    l: u64,
) -> Result<(Partition, usize)> {
    require_prime(l)?;
    if l_gens.rows() != s_gens.rows() {
        return Err(Error::Dimension(
            "quotient_invariants: ambient ranks differ".into(),
        ));
    }
    let basis = hnf_basis(l_gens);
    if s_gens.cols() == 0 {
        return Ok((Partition::empty(), basis.cols()));
    }
    let x = solve_in_echelon_basis(&basis, s_gens).ok_or(Error::NotSublattice)?;
    let d = smith_form(&x);
    let nonzero: Vec<u32> = d
        .iter()
        .filter(|v| !num_traits::Zero::is_zero(*v))
        .map(|v| val_l(v, l))
        .collect();
    let corank = basis.cols() - nonzero.len();
    Ok((Partition::from_unsorted(nonzero), corank))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn m(rows: Vec<Vec<i64>>) -> Mat<BigInt> {
        Mat::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn sum_and_intersection_in_z1() {
        let two = m(vec![vec![2]]);
        let three = m(vec![vec![3]]);
        assert_eq!(lattice_sum(&two, &three).unwrap(), m(vec![vec![1]]));
        assert_eq!(
            lattice_intersection(&two, &three).unwrap(),
            m(vec![vec![6]])
        );
    }

    #[test]
    fn quotient_example() {
        let ambient = Mat::<BigInt>::identity(2);
        let s = m(vec![vec![2, 0], vec![0, 3]]);
        let (part, corank) = quotient_invariants(&ambient, &s, 2).unwrap();
        assert_eq!(part.parts(), &[1]);
        assert_eq!(corank, 0);
        let (part, corank) = quotient_invariants(&ambient, &s, 3).unwrap();
        assert_eq!(part.parts(), &[1]);
        assert_eq!(corank, 0);
    }

    #[test]
    fn quotient_detects_non_sublattice() {
        let l = m(vec![vec![2], vec![0]]);
        let s = m(vec![vec![1], vec![0]]);
        assert_eq!(quotient_invariants(&l, &s, 2), Err(Error::NotSublattice));
        let s2 = m(vec![vec![0], vec![1]]);
        assert_eq!(quotient_invariants(&l, &s2, 2), Err(Error::NotSublattice));
    }

    #[test]
    fn quotient_with_corank() {
        let l = Mat::<BigInt>::identity(2);
        let s = m(vec![vec![2], vec![0]]);
        let (part, corank) = quotient_invariants(&l, &s, 2).unwrap();
        assert_eq!(part.parts(), &[1]);
        assert_eq!(corank, 1);
    }

    #[test]
    fn intersection_inside_z2() {
        // span{(2,0),(0,1)} ∩ span{(1,1)} = span{(2,2)}
        let a = m(vec![vec![2, 0], vec![0, 1]]);
        let b = m(vec![vec![1], vec![1]]);
        let i = lattice_intersection(&a, &b).unwrap();
        assert_eq!(i, m(vec![vec![2], vec![2]]));
    }
}
