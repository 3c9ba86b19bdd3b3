//! Dense polynomial arithmetic, lowest degree first. Integer polynomials are
//! generic over the matrix scalar; rational polynomials back the exact
//! Bezout identities used by the finite-precision model constructions.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linalg::mat::Scalar;
use crate::Rational;

pub fn trim<T: Zero>(mut v: Vec<T>) -> Vec<T> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

/// Degree, None for the zero polynomial.
pub fn deg<T: Zero>(p: &[T]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn add<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                a.get(i).cloned().unwrap_or_else(T::zero)
                    + b.get(i).cloned().unwrap_or_else(T::zero)
            })
            .collect(),
    )
}

pub fn sub<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                a.get(i).cloned().unwrap_or_else(T::zero)
                    - b.get(i).cloned().unwrap_or_else(T::zero)
            })
            .collect(),
    )
}

pub fn mul<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    if deg(a).is_none() || deg(b).is_none() {
        return Vec::new();
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let cur = out[i + j].clone();
            out[i + j] = cur + x.clone() * y.clone();
        }
    }
    trim(out)
}

/// Division with remainder by a monic divisor (exact over any ring).
pub fn divrem_monic<T: Scalar>(a: &[T], b: &[T]) -> (Vec<T>, Vec<T>) {
    let db = deg(b).expect("monic divisor is nonzero");
    assert!(b[db].is_one(), "divisor must be monic");
    let mut rem: Vec<T> = a.to_vec();
    let Some(da) = deg(&rem) else {
        return (Vec::new(), Vec::new());
    };
    if da < db {
        return (Vec::new(), trim(rem));
    }
    let mut quot = vec![T::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let c = rem[k + db].clone();
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for (j, bj) in b.iter().enumerate().take(db + 1) {
            let cur = rem[k + j].clone();
            rem[k + j] = cur - c.clone() * bj.clone();
        }
    }
    (trim(quot), trim(rem))
}

pub fn eval<T: Scalar>(p: &[T], x: &T) -> T {
    p.iter()
        .rev()
        .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
}

pub fn derivative<T: Scalar>(p: &[T]) -> Vec<T> {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * T::from_usize(i).unwrap())
            .collect(),
    )
}

// ---- rational polynomials ----

pub type RatPoly = Vec<Rational>;

pub fn rat_from_int(p: &[BigInt]) -> RatPoly {
    p.iter().map(|c| Rational::from(c.clone())).collect()
}

pub fn rat_trim(mut v: RatPoly) -> RatPoly {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

pub fn rat_mul(a: &[Rational], b: &[Rational]) -> RatPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    rat_trim(out)
}

pub fn rat_sub(a: &[Rational], b: &[Rational]) -> RatPoly {
    let n = a.len().max(b.len());
    rat_trim(
        (0..n)
            .map(|i| {
                a.get(i).cloned().unwrap_or_else(Rational::zero)
                    - b.get(i).cloned().unwrap_or_else(Rational::zero)
            })
            .collect(),
    )
}

pub fn rat_divrem(a: &[Rational], b: &[Rational]) -> (RatPoly, RatPoly) {
    let db = deg(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut rem: RatPoly = a.to_vec();
    let Some(da) = deg(&rem) else {
        return (Vec::new(), Vec::new());
    };
    if da < db {
        return (Vec::new(), rat_trim(rem));
    }
    let mut quot = vec![Rational::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let c = &rem[k + db] / &lead;
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for (j, bj) in b.iter().enumerate().take(db + 1) {
            let sub = &c * bj;
            rem[k + j] -= sub;
        }
    }
    (quot, rat_trim(rem))
}

/// Extended Euclid over Q[x]: returns (g, s, t) with s·a + t·b = g and g
/// monic (or zero when both inputs are zero).
pub fn rat_ext_gcd(a: &[Rational], b: &[Rational]) -> (RatPoly, RatPoly, RatPoly) {
    let mut r0: RatPoly = rat_trim(a.to_vec());
    let mut r1: RatPoly = rat_trim(b.to_vec());
    let mut s0: RatPoly = vec![Rational::one()];
    let mut s1: RatPoly = vec![];
    let mut t0: RatPoly = vec![];
    let mut t1: RatPoly = vec![Rational::one()];
    while !r1.is_empty() {
        let (q, r) = rat_divrem(&r0, &r1);
        let s2 = rat_sub(&s0, &rat_mul(&q, &s1));
        let t2 = rat_sub(&t0, &rat_mul(&q, &t1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s2);
        (t0, t1) = (t1, t2);
    }
    if let Some(d) = deg(&r0) {
        let lead = r0[d].clone();
        let scale = |p: RatPoly| p.into_iter().map(|c| c / lead.clone()).collect();
        (scale(r0.clone()), scale(s0), scale(t0))
    } else {
        (r0, s0, t0)
    }
}
