//! Structure computations in finitely presented abelian l-groups
//! ⊕_k Z/l^{e_k}, given subgroups by integer generator columns. Everything
//! reduces to exact integer Smith/kernel computations on relation matrices,
//! so once a group has been resolved no modular precision is involved.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::linalg::mat::Mat;
use crate::linalg::smith::{kernel_basis, smith_form, smith_with_row_transform, val_l};
use crate::partition::Partition;
use crate::IntMatrix;

fn diag_powers(l: u64, exps: &[u32]) -> IntMatrix {
    Mat::from_fn(exps.len(), exps.len(), |i, j| {
        if i == j {
            BigInt::from(l).pow(exps[i])
        } else {
            BigInt::zero()
        }
    })
}

/// Invariant of the subgroup of ⊕_k Z/l^{e_k} generated by the columns of
/// `gens` (entries read mod l^{e_k} rowwise).
pub fn subgroup_invariants(l: u64, exps: &[u32], gens: &IntMatrix) -> Partition {
    assert_eq!(gens.rows(), exps.len());
    let m = gens.cols();
    if m == 0 || exps.is_empty() {
        return Partition::empty();
    }
    // <gens> ≅ Z^m / K with K = {x : gens·x ≡ 0}; K is the projection of
    // ker [gens | diag(l^e)] onto the first m coordinates.
    let stacked = gens.hstack(&diag_powers(l, exps)).unwrap();
    let ker = kernel_basis(&stacked);
    let k_basis = Mat::from_fn(m, ker.cols(), |i, j| ker[(i, j)].clone());
    let d = smith_form(&k_basis);
    debug_assert!(d.iter().all(|x| !x.is_zero()), "kernel must have full rank");
    Partition::from_unsorted(d.iter().map(|x| val_l(x, l)).collect::<Vec<_>>())
}

/// Quotient of ⊕_k Z/l^{e_k} by the subgroup generated by `gens`: the new
/// cyclic exponents together with the projection matrix mapping old
/// coordinates to new ones.
pub fn quotient_with_map(l: u64, exps: &[u32], gens: &IntMatrix) -> (Vec<u32>, IntMatrix) {
    assert_eq!(gens.rows(), exps.len());
    let n = exps.len();
    if n == 0 {
        return (Vec::new(), Mat::zero(0, 0));
    }
    let rel = diag_powers(l, exps).hstack(gens).unwrap();
    let (d, p) = smith_with_row_transform(&rel);
    let mut new_exps = Vec::new();
    let mut rows = Vec::new();
    for (k, dk) in d.iter().enumerate() {
        debug_assert!(!dk.is_zero());
        let e = val_l(dk, l);
        if e > 0 {
            new_exps.push(e);
            rows.push(k);
        }
    }
    let proj = Mat::from_fn(rows.len(), n, |i, j| p[(rows[i], j)].clone());
    (new_exps, proj)
}

/// Invariant of the quotient (⊕ Z/l^{e_k}) / <gens>.
pub fn quotient_invariants_presented(l: u64, exps: &[u32], gens: &IntMatrix) -> Partition {
    let (new_exps, _) = quotient_with_map(l, exps, gens);
    Partition::from_unsorted(new_exps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(rows: Vec<Vec<i64>>) -> IntMatrix {
        Mat::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn subgroup_of_z4_z2() {
        // ambient Z/4 ⊕ Z/2
        let exps = [2u32, 1];
        // <(2,1)> ≅ Z/2
        let s = subgroup_invariants(2, &exps, &gens(vec![vec![2], vec![1]]));
        assert_eq!(s.parts(), &[1]);
        // <(1,0)> ≅ Z/4
        let s = subgroup_invariants(2, &exps, &gens(vec![vec![1], vec![0]]));
        assert_eq!(s.parts(), &[2]);
        // <(1,0),(0,1)> = everything
        let s = subgroup_invariants(2, &exps, &gens(vec![vec![1, 0], vec![0, 1]]));
        assert_eq!(s.parts(), &[2, 1]);
        // trivial
        let s = subgroup_invariants(2, &exps, &gens(vec![vec![0], vec![0]]));
        assert!(s.is_empty());
    }

    #[test]
    fn quotient_of_z4_z2() {
        let exps = [2u32, 1];
        // mod <(2,1)>: order 8/2 = 4, and the quotient is Z/4
        let q = quotient_invariants_presented(2, &exps, &gens(vec![vec![2], vec![1]]));
        assert_eq!(q.parts(), &[2]);
        // mod <(2,0)>: Z/2 ⊕ Z/2
        let q = quotient_invariants_presented(2, &exps, &gens(vec![vec![2], vec![0]]));
        assert_eq!(q.parts(), &[1, 1]);
    }

    #[test]
    fn quotient_map_is_consistent() {
        let exps = [2u32, 1];
        let g = gens(vec![vec![2], vec![0]]);
        let (new_exps, proj) = quotient_with_map(2, &exps, &g);
        assert_eq!(new_exps.iter().map(|&e| 1u64 << e).product::<u64>(), 4);
        // the image of the killed generator must vanish in the quotient
        let img = proj.mul(&g).unwrap();
        for i in 0..img.rows() {
            let modulus = BigInt::from(2).pow(new_exps[i]);
            assert!(num_integer::Integer::mod_floor(&img[(i, 0)], &modulus).is_zero());
        }
        // subgroup generated by (0,1) maps onto the full quotient Z/2 ⊕ Z/2?
        // the image of the ambient generators spans the quotient
        let ambient = Mat::<BigInt>::identity(2);
        let span = subgroup_invariants(2, &new_exps, &proj.mul(&ambient).unwrap());
        assert_eq!(span.parts(), &[1, 1]);
    }
}
