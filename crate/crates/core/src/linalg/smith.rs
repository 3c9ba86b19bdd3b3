//! Smith normal form, column Hermite form, kernels, determinants and
//! characteristic polynomials over an exact integer scalar.
//!
//! Pivoting is deterministic (smallest nonzero absolute value with row/col
//! swaps) so golden outputs are reproducible.

use crate::error::{Error, Result};
use crate::linalg::mat::{Mat, Scalar};
use crate::partition::Partition;

/// Elementary divisors d_1 | d_2 | ... of `m`, non-negative, with zeros for
/// rank deficiency trailing. Length is min(rows, cols).
pub fn smith_form<T: Scalar>(m: &Mat<T>) -> Vec<T> {
    snf_impl(m, false).0
}

/// Smith form together with the unimodular row transform P such that
/// P·m·Q = diag(divisors) for some unimodular Q. P is what identifies the
/// cokernel: the coset of v in coker(m) corresponds to P·v in ⊕ Z/d_i.
pub fn smith_with_row_transform<T: Scalar>(m: &Mat<T>) -> (Vec<T>, Mat<T>) {
    let (d, p) = snf_impl(m, true);
    (d, p.expect("transform requested"))
}

fn snf_impl<T: Scalar>(m: &Mat<T>, track_p: bool) -> (Vec<T>, Option<Mat<T>>) {
    let mut w = m.clone();
    let mut p = track_p.then(|| Mat::<T>::identity(m.rows()));
    let (rows, cols) = (w.rows(), w.cols());
    let n = rows.min(cols);
    let mut k = 0;
    while k < n {
        // Bring the smallest nonzero entry of the active block to (k, k).
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if !w[(i, j)].is_zero()
                    && pivot.is_none_or(|(pi, pj)| w[(i, j)].abs() < w[(pi, pj)].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        w.swap_rows(k, pi);
        if let Some(p) = p.as_mut() {
            p.swap_rows(k, pi);
        }
        w.swap_cols(k, pj);

        'reduce: loop {
            for i in k + 1..rows {
                if !w[(i, k)].is_zero() {
                    let (q, r) = w[(i, k)].div_rem(&w[(k, k)]);
                    let c = T::zero() - q;
                    w.row_axpy(i, k, &c);
                    if let Some(p) = p.as_mut() {
                        p.row_axpy(i, k, &c);
                    }
                    if !r.is_zero() {
                        w.swap_rows(i, k);
                        if let Some(p) = p.as_mut() {
                            p.swap_rows(i, k);
                        }
                        continue 'reduce;
                    }
                }
            }
            for j in k + 1..cols {
                if !w[(k, j)].is_zero() {
                    let (q, r) = w[(k, j)].div_rem(&w[(k, k)]);
                    w.col_axpy(j, k, &(T::zero() - q));
                    if !r.is_zero() {
                        w.swap_cols(j, k);
                        continue 'reduce;
                    }
                }
            }
            // Enforce the divisibility chain: the pivot must divide the rest.
            for i in k + 1..rows {
                for j in k + 1..cols {
                    if !w[(i, j)].mod_floor(&w[(k, k)]).is_zero() {
                        w.row_axpy(k, i, &T::one());
                        if let Some(p) = p.as_mut() {
                            p.row_axpy(k, i, &T::one());
                        }
                        continue 'reduce;
                    }
                }
            }
            break;
        }
        if w[(k, k)].is_negative() {
            let neg = T::zero() - T::one();
            w.scale_row(k, &neg);
            if let Some(p) = p.as_mut() {
                p.scale_row(k, &neg);
            }
        }
        k += 1;
    }
    let d: Vec<T> = (0..n).map(|i| w[(i, i)].clone()).collect();
    debug_assert!(d
        .windows(2)
        .all(|x| x[1].is_zero() || (!x[0].is_zero() && x[1].mod_floor(&x[0]).is_zero())));
    (d, p)
}

/// l-adic valuation of a nonzero scalar.
pub fn val_l<T: Scalar>(x: &T, l: u64) -> u32 {
    debug_assert!(!x.is_zero());
    let lt = T::from_u64(l).expect("prime fits scalar");
    let mut x = x.abs();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&lt);
        if !r.is_zero() {
            return v;
        }
        x = q;
        v += 1;
    }
}

/// l-primary part of the cokernel of a square matrix, as a partition of
/// l-valuations (largest first), together with the free corank.
pub fn cokernel_l_part<T: Scalar>(m: &Mat<T>, l: u64) -> Result<(Partition, usize)> {
    if !m.is_square() {
        return Err(Error::Dimension(
            "cokernel_l_part: matrix not square".into(),
        ));
    }
    crate::arith::require_prime(l)?;
    let d = smith_form(m);
    let corank = d.iter().filter(|x| x.is_zero()).count();
    let vals = d.iter().filter(|x| !x.is_zero()).map(|x| val_l(x, l));
    Ok((Partition::from_unsorted(vals.collect::<Vec<_>>()), corank))
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det<T: Scalar>(m: &Mat<T>) -> Result<T> {
    if !m.is_square() {
        return Err(Error::Dimension("det: matrix not square".into()));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(T::one());
    }
    let mut w = m.clone();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n - 1 {
        if w[(k, k)].is_zero() {
            let Some(i) = (k + 1..n).find(|&i| !w[(i, k)].is_zero()) else {
                return Ok(T::zero());
            };
            w.swap_rows(k, i);
            sign = T::zero() - sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num =
                    w[(i, j)].clone() * w[(k, k)].clone() - w[(i, k)].clone() * w[(k, j)].clone();
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero());
                w[(i, j)] = q;
            }
            w[(i, k)] = T::zero();
        }
        prev = w[(k, k)].clone();
    }
    Ok(sign * w[(n - 1, n - 1)].clone())
}

/// Characteristic polynomial det(xI − m) by the Faddeev–LeVerrier
/// recurrence (all divisions exact over the integers). Coefficients are
/// returned lowest degree first; the result is monic of degree n.
pub fn charpoly<T: Scalar>(m: &Mat<T>) -> Result<Vec<T>> {
    if !m.is_square() {
        return Err(Error::Dimension("charpoly: matrix not square".into()));
    }
    let n = m.rows();
    let mut coeffs = vec![T::zero(); n + 1];
    coeffs[n] = T::one();
    if n == 0 {
        return Ok(coeffs);
    }
    let trace = |a: &Mat<T>| (0..n).fold(T::zero(), |acc, i| acc + a[(i, i)].clone());
    let mut mk = m.clone();
    let mut c = T::zero() - trace(&mk);
    coeffs[n - 1] = c.clone();
    for k in 2..=n {
        let mut shifted = mk;
        for i in 0..n {
            let cur = shifted[(i, i)].clone();
            shifted[(i, i)] = cur + c.clone();
        }
        mk = m.mul(&shifted)?;
        let (q, r) = (T::zero() - trace(&mk)).div_rem(&T::from_usize(k).unwrap());
        debug_assert!(r.is_zero());
        c = q;
        coeffs[n - k] = c.clone();
    }
    Ok(coeffs)
}

/// Column Hermite echelon form, processed row by row: H = m·U with U
/// unimodular; pivot columns carry positive pivots, entries to the left of
/// a pivot are reduced into [0, pivot).
pub struct ColEchelon<T> {
    pub h: Mat<T>,
    pub u: Option<Mat<T>>,
    /// (row, col) of each pivot, rows strictly increasing.
    pub pivots: Vec<(usize, usize)>,
}

pub fn column_echelon<T: Scalar>(m: &Mat<T>, track_u: bool) -> ColEchelon<T> {
    let mut h = m.clone();
    let mut u = track_u.then(|| Mat::<T>::identity(m.cols()));
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut k = 0;
    for r in 0..h.rows() {
        if k == h.cols() {
            break;
        }
        'gcd: loop {
            let mut best: Option<usize> = None;
            for j in k..h.cols() {
                if !h[(r, j)].is_zero() && best.is_none_or(|b| h[(r, j)].abs() < h[(r, b)].abs()) {
                    best = Some(j);
                }
            }
            let Some(j) = best else { break 'gcd };
            h.swap_cols(k, j);
            if let Some(u) = u.as_mut() {
                u.swap_cols(k, j);
            }
            let mut clean = true;
            for j in k + 1..h.cols() {
                if !h[(r, j)].is_zero() {
                    let (q, rem) = h[(r, j)].div_rem(&h[(r, k)]);
                    let c = T::zero() - q;
                    h.col_axpy(j, k, &c);
                    if let Some(u) = u.as_mut() {
                        u.col_axpy(j, k, &c);
                    }
                    if !rem.is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                break 'gcd;
            }
        }
        if h[(r, k)].is_zero() {
            continue;
        }
        if h[(r, k)].is_negative() {
            let neg = T::zero() - T::one();
            h.scale_col(k, &neg);
            if let Some(u) = u.as_mut() {
                u.scale_col(k, &neg);
            }
        }
        for j in 0..k {
            let q = h[(r, j)].div_floor(&h[(r, k)]);
            let c = T::zero() - q;
            h.col_axpy(j, k, &c);
            if let Some(u) = u.as_mut() {
                u.col_axpy(j, k, &c);
            }
        }
        pivots.push((r, k));
        k += 1;
    }
    ColEchelon { h, u, pivots }
}

/// Canonical basis of the column lattice of `m`: the nonzero columns of its
/// column Hermite form.
pub fn hnf_basis<T: Scalar>(m: &Mat<T>) -> Mat<T> {
    let e = column_echelon(m, false);
    e.h.col_slice(0, e.pivots.len())
}

pub fn rank<T: Scalar>(m: &Mat<T>) -> usize {
    column_echelon(m, false).pivots.len()
}

/// Basis of the integer kernel lattice {x : m·x = 0}, as matrix columns.
/// The basis is primitive (a direct summand of Z^cols).
pub fn kernel_basis<T: Scalar>(m: &Mat<T>) -> Mat<T> {
    let e = column_echelon(m, true);
    let u = e.u.expect("transform tracked");
    u.col_slice(e.pivots.len(), u.cols())
}

/// Solves basis·x = target exactly over the integers for each column of
/// `targets`, where `basis` is a column echelon matrix with full column rank
/// (as produced by [`hnf_basis`]). Returns None if any column has no
/// integral solution.
pub fn solve_in_echelon_basis<T: Scalar>(basis: &Mat<T>, targets: &Mat<T>) -> Option<Mat<T>> {
    if basis.rows() != targets.rows() {
        return None;
    }
    // Pivot of each column = its first nonzero row.
    let pivots: Vec<usize> = (0..basis.cols())
        .map(|j| (0..basis.rows()).find(|&i| !basis[(i, j)].is_zero()))
        .collect::<Option<Vec<_>>>()?;
    let mut x = Mat::<T>::zero(basis.cols(), targets.cols());
    for t in 0..targets.cols() {
        for k in 0..basis.cols() {
            let mut acc = targets[(pivots[k], t)].clone();
            for j in 0..k {
                acc = acc - basis[(pivots[k], j)].clone() * x[(j, t)].clone();
            }
            let (q, r) = acc.div_rem(&basis[(pivots[k], k)]);
            if !r.is_zero() {
                return None;
            }
            x[(k, t)] = q;
        }
    }
    // Verify rows outside the pivot set.
    let check = basis.mul(&x).ok()?;
    if &check == targets {
        Some(x)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::{Signed, Zero};
    use rand::{Rng, SeedableRng};

    fn m(rows: Vec<Vec<i64>>) -> Mat<BigInt> {
        Mat::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
        )
        .unwrap()
    }

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn smith_examples() {
        assert_eq!(
            smith_form(&m(vec![vec![2, 0], vec![0, 3]])),
            vec![b(1), b(6)]
        );
        assert_eq!(
            smith_form(&Mat::<BigInt>::identity(3)),
            vec![b(1), b(1), b(1)]
        );
        assert_eq!(smith_form(&m(vec![vec![-2]])), vec![b(2)]);
        assert_eq!(smith_form(&m(vec![vec![0]])), vec![b(0)]);
        // rank-deficient rectangular
        assert_eq!(
            smith_form(&m(vec![vec![1, 2, 3], vec![2, 4, 6]])),
            vec![b(1), b(0)]
        );
    }

    #[test]
    fn smith_chain_and_det_product() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(1..5);
            let a = Mat::from_fn(n, n, |_, _| b(rng.gen_range(-9..=9)));
            let d = smith_form(&a);
            for w in d.windows(2) {
                if !w[1].is_zero() {
                    assert!((&w[1] % &w[0]).is_zero(), "chain broken: {d:?}");
                }
            }
            let dd = det(&a).unwrap();
            if !dd.is_zero() {
                let prod = d.iter().fold(b(1), |acc, x| acc * x);
                assert_eq!(prod, dd.abs(), "∏d_i ≠ |det| for {a}");
            }
        }
    }

    #[test]
    fn smith_row_transform_consistency() {
        let a = m(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let (d, p) = smith_with_row_transform(&a);
        // P must be unimodular and P·a must have column span diag(d).
        assert_eq!(det(&p).unwrap().abs(), b(1));
        let pa = p.mul(&a).unwrap();
        let diag = Mat::from_fn(3, 3, |i, j| if i == j { d[i].clone() } else { b(0) });
        assert_eq!(hnf_basis(&pa), hnf_basis(&diag));
    }

    #[test]
    fn coker_examples() {
        let (part, corank) = cokernel_l_part(&m(vec![vec![-2]]), 2).unwrap();
        assert_eq!(part.parts(), &[1]);
        assert_eq!(corank, 0);
        let (part, corank) = cokernel_l_part(&m(vec![vec![2, 0], vec![0, 3]]), 3).unwrap();
        assert_eq!(part.parts(), &[1]);
        assert_eq!(corank, 0);
        let (part, corank) = cokernel_l_part(&m(vec![vec![0]]), 2).unwrap();
        assert!(part.is_empty());
        assert_eq!(corank, 1);
    }

    #[test]
    fn coker_invariant_under_unimodular_action() {
        use crate::linalg::cyclo::random_unimodular;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let a = m(vec![vec![4, 2, 0], vec![0, 6, 2], vec![0, 0, 10]]);
        let base = cokernel_l_part(&a, 2).unwrap();
        for _ in 0..20 {
            let (u, _) = random_unimodular(3, 12, &mut rng);
            let (v, _) = random_unimodular(3, 12, &mut rng);
            let conj = u.mul(&a).unwrap().mul(&v).unwrap();
            assert_eq!(cokernel_l_part(&conj, 2).unwrap(), base);
        }
    }

    #[test]
    fn det_and_charpoly() {
        let a = m(vec![vec![0, -1], vec![1, -1]]);
        assert_eq!(det(&a).unwrap(), b(1));
        // companion of x^2 + x + 1
        assert_eq!(charpoly(&a).unwrap(), vec![b(1), b(1), b(1)]);
        let id = Mat::<BigInt>::identity(3);
        assert_eq!(charpoly(&id).unwrap(), vec![b(-1), b(3), b(-3), b(1)]);
        assert_eq!(det(&m(vec![vec![2, 1], vec![7, 4]])).unwrap(), b(1));
    }

    #[test]
    fn kernel_and_solve() {
        let a = m(vec![vec![1, 2, 3], vec![2, 4, 6]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).unwrap().is_zero());
        let basis = hnf_basis(&m(vec![vec![2, 0], vec![0, 3]]));
        let sol = solve_in_echelon_basis(&basis, &m(vec![vec![4], vec![-3]])).unwrap();
        assert_eq!(basis.mul(&sol).unwrap(), m(vec![vec![4], vec![-3]]));
        assert!(solve_in_echelon_basis(&basis, &m(vec![vec![1], vec![0]])).is_none());
    }

    #[test]
    fn hnf_basis_is_canonical() {
        // Same lattice, different generators.
        let a = m(vec![vec![2, 0, 4], vec![0, 3, 3]]);
        let v = m(vec![vec![2, 4], vec![3, 3]]);
        assert_eq!(hnf_basis(&a), hnf_basis(&v.hstack(&a).unwrap()));
    }

    #[test]
    fn generic_small_scalar_agrees() {
        let big = m(vec![vec![6, 4], vec![2, 8]]);
        let small: Mat<i128> = big.map(|x| i128::try_from(x).unwrap());
        let db: Vec<i128> = smith_form(&big)
            .iter()
            .map(|x| i128::try_from(x).unwrap())
            .collect();
        assert_eq!(db, smith_form(&small));
    }
}
