//! Integer partitions: weakly decreasing sequences of non-negative integers.
//!
//! A partition encodes a finite abelian l-group ⊕ Z/l^{a_i}, and everything
//! downstream (group invariants, cyclotomic multiplicities, filtration
//! quotients) is phrased in terms of the operators and invariants here:
//! conjugation, the lexicographic and componentwise (dominance) orderings,
//! the Young-diagram shifts d and d′, and the invariants
//!
//!   δ_l(a)  = Σ_i (l^{a_i} − 1)
//!   δ′_l(a) = l^{a_1} − 1 + (l−1)·Σ_{i≥2} a_i
//!   f_l(a)  = Σ_i ((l^{⌊a_i/2⌋} + l^{⌈a_i/2⌉})/2 − 1)
//!
//! f_l is half-integral exactly when l = 2 and some part is odd, so it is
//! returned as an exact rational throughout.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::require_prime;
use crate::error::{Error, Result};
use crate::Rational;

/// A partition, stored normalized: weakly decreasing, no trailing zeros.
/// The derived `Ord` coincides with the lexicographic ordering in which
/// missing parts read as 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.parts
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl Partition {
    /// Validating constructor: parts must be weakly decreasing; trailing
    /// zeros are stripped.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts not weakly decreasing: {parts:?}"
            )));
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    /// Builds a partition from parts in any order.
    pub fn from_unsorted(parts: impl IntoIterator<Item = u32>) -> Self {
        let mut parts: Vec<u32> = parts.into_iter().filter(|&p| p > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The i-th part (0-indexed), reading absent parts as 0.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Σ parts.
    pub fn sum(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// At most one part, i.e. the group ⊕ Z/l^{a_i} is cyclic.
    pub fn is_cyclic(&self) -> bool {
        self.parts.len() <= 1
    }

    /// Conjugate (transpose of the Young diagram): q_i = |{j : p_j ≥ i+1}|.
    pub fn conjugate(&self) -> Partition {
        let rows = self.part(0) as usize;
        let mut q = Vec::with_capacity(rows);
        for i in 0..rows {
            let count = self.parts.iter().take_while(|&&p| p as usize > i).count();
            q.push(count as u32);
        }
        Partition { parts: q }
    }

    /// Lexicographic comparison, part by part with missing parts read as 0.
    pub fn lex_cmp(&self, other: &Partition) -> Ordering {
        self.cmp(other)
    }

    /// Componentwise partial order: true iff other_i ≥ self_i for all i,
    /// i.e. `other` dominates `self`.
    pub fn dominated_by(&self, other: &Partition) -> bool {
        (0..self.parts.len()).all(|i| self.part(i) <= other.part(i))
    }

    /// d^t: drops the t largest parts (removes the t longest columns when
    /// parts are column lengths).
    pub fn shift_d(&self, t: usize) -> Partition {
        Partition {
            parts: self.parts.iter().skip(t).copied().collect(),
        }
    }

    /// d′: decrements every part, dropping the resulting zeros. Satisfies
    /// d′(p) = d(p′)′ and commutes with d.
    pub fn shift_dprime(&self) -> Partition {
        Partition {
            parts: self
                .parts
                .iter()
                .filter(|&&p| p > 1)
                .map(|&p| p - 1)
                .collect(),
        }
    }

    /// Merges the multisets of parts (invariant of the direct sum).
    pub fn merge(&self, other: &Partition) -> Partition {
        Partition::from_unsorted(self.parts.iter().chain(other.parts.iter()).copied())
    }

    /// Componentwise sum (still weakly decreasing).
    pub fn componentwise_sum(&self, other: &Partition) -> Partition {
        let n = self.len().max(other.len());
        Partition {
            parts: (0..n).map(|i| self.part(i) + other.part(i)).collect(),
        }
    }

    /// Per-part balanced split: r_i = ⌈p_i/2⌉, s_i = ⌊p_i/2⌋, with the
    /// ceiling halves deterministically in the first component. Satisfies
    /// r + s = p componentwise and δ_l(r) + δ_l(s) = 2·f_l(p).
    pub fn balanced_split(&self) -> (Partition, Partition) {
        let r = Partition {
            parts: self.parts.iter().map(|&p| p.div_ceil(2)).collect(),
        };
        let s = Partition {
            parts: self
                .parts
                .iter()
                .filter(|&&p| p >= 2)
                .map(|&p| p / 2)
                .collect(),
        };
        (r, s)
    }
}

/// δ_l(p) = Σ_i (l^{p_i} − 1).
pub fn delta_l(l: u64, p: &Partition) -> Result<BigUint> {
    require_prime(l)?;
    Ok(delta_l_unchecked(l, p))
}

pub(crate) fn delta_l_unchecked(l: u64, p: &Partition) -> BigUint {
    let l = BigUint::from(l);
    let mut acc = BigUint::zero();
    for &part in p.parts() {
        acc += l.pow(part) - BigUint::one();
    }
    acc
}

/// δ′_l(p) = l^{p_1} − 1 + (l−1)·Σ_{i≥2} p_i, the weaker variant that only
/// exponentiates the largest part.
pub fn delta_prime_l(l: u64, p: &Partition) -> Result<BigUint> {
    require_prime(l)?;
    if p.is_empty() {
        return Ok(BigUint::zero());
    }
    let lb = BigUint::from(l);
    let tail: u64 = p.parts()[1..].iter().map(|&x| x as u64).sum();
    Ok(lb.pow(p.part(0)) - BigUint::one() + BigUint::from(l - 1) * BigUint::from(tail))
}

/// f_l(p) = Σ_i ((l^{⌊p_i/2⌋} + l^{⌈p_i/2⌉})/2 − 1), as an exact rational.
pub fn f_l(l: u64, p: &Partition) -> Result<Rational> {
    require_prime(l)?;
    Ok(f_l_unchecked(l, p))
}

pub(crate) fn f_l_unchecked(l: u64, p: &Partition) -> Rational {
    let lb = BigInt::from(l);
    let two = BigInt::from(2);
    let mut acc = Rational::zero();
    for &part in p.parts() {
        let lo = lb.pow(part / 2);
        let hi = lb.pow(part.div_ceil(2));
        acc += Rational::new(lo + hi, two.clone()) - Rational::one();
    }
    acc
}

/// All partitions of exactly `n`, in decreasing lexicographic order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(remaining: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        let top = remaining.min(max_part);
        for part in (1..=top).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of every total 0..=n.
pub fn partitions_up_to(n: u32) -> Vec<Partition> {
    (0..=n).flat_map(partitions_of).collect()
}

/// Partition counts p(0), ..., p(n) by the Euler recurrence with
/// generalized pentagonal numbers.
pub fn partition_counts(n: u32) -> Vec<u64> {
    let n = n as usize;
    let mut table = vec![0u64; n + 1];
    table[0] = 1;
    for i in 1..=n {
        let mut acc: i128 = 0;
        let mut k = 1i64;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > i {
                break;
            }
            let sign: i128 = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * table[i - g1] as i128;
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= i {
                acc += sign * table[i - g2] as i128;
            }
            k += 1;
        }
        table[i] = u64::try_from(acc).expect("partition count is non-negative");
    }
    table
}

/// Brute-force minimum of δ_l(r) + δ_l(s) over all pairs of partitions
/// (r, s) with Σ(r_i + s_i) = Σ e_i and componentwise sum r + s ≥ e in the
/// lexicographic ordering. Hard budget of 10^7 candidate pairs, checked
/// from the partition counts before any enumeration.
pub fn min_split_delta_bruteforce(l: u64, e: &Partition) -> Result<BigUint> {
    require_prime(l)?;
    let n = u32::try_from(e.sum()).map_err(|_| Error::BudgetExceeded("total too large".into()))?;
    let counts = if n <= 1_000 {
        partition_counts(n)
    } else {
        return Err(Error::BudgetExceeded(format!(
            "total {n} too large to enumerate"
        )));
    };
    let pairs: u64 = (0..=n)
        .map(|k| counts[k as usize].saturating_mul(counts[(n - k) as usize]))
        .fold(0u64, u64::saturating_add);
    if pairs > 10_000_000 {
        return Err(Error::BudgetExceeded(format!(
            "{pairs} candidate pairs exceed the 10^7 budget"
        )));
    }
    let by_total: Vec<Vec<Partition>> = (0..=n).map(partitions_of).collect();
    let mut best: Option<BigUint> = None;
    for k in 0..=n {
        for r in &by_total[k as usize] {
            let dr = delta_l_unchecked(l, r);
            for s in &by_total[(n - k) as usize] {
                if r.componentwise_sum(s).lex_cmp(e) == Ordering::Less {
                    continue;
                }
                let value = dr.clone() + delta_l_unchecked(l, s);
                if best.as_ref().is_none_or(|b| value < *b) {
                    best = Some(value);
                }
            }
        }
    }
    Ok(best.expect("(e, empty) is always a candidate"))
}
