//! Cyclotomic polynomials of prime-power order, multiplication-by-x
//! companion matrices on the rings Z[x]/(f_{l,1}···f_{l,r}), cyclotomic
//! multiplicities of lattice automorphisms, and the coinvariant bound
//! δ_l(M/(σ−1)M) ≤ Σ (l^{p_i} − 1) ≤ rank(M) with its equality structure.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::arith::{phi_prime_power, require_prime};
use crate::error::{Error, Result};
use crate::linalg::mat::Mat;
use crate::linalg::poly;
use crate::linalg::smith::{charpoly, cokernel_l_part, det};
use crate::partition::{delta_l, Partition};
use crate::IntMatrix;

/// f_{l,i}(x) = Σ_{j=0}^{l-1} x^{j·l^{i-1}}, the cyclotomic polynomial whose
/// roots are the roots of unity of order l^i. Degree φ(l^i); f_{l,i}(1) = l.
pub fn cyclotomic_poly(l: u64, i: u32) -> Result<Vec<BigInt>> {
    require_prime(l)?;
    if i == 0 {
        return Err(Error::Malformed("cyclotomic index must be ≥ 1".into()));
    }
    let step = usize::try_from(l.pow(i - 1)).map_err(|_| Error::BudgetExceeded("degree".into()))?;
    let deg = step * usize::try_from(l - 1).unwrap();
    let mut c = vec![BigInt::zero(); deg + 1];
    for j in 0..l as usize {
        c[j * step] = BigInt::one();
    }
    Ok(c)
}

/// Π_{i=lo..=hi} f_{l,i}. With lo = 1 this is the modulus of
/// Λ_{l,hi} = Z[x]/(f_{l,1}···f_{l,hi}), equal to (x^{l^hi}−1)/(x−1).
pub fn cyclotomic_range_product(l: u64, lo: u32, hi: u32) -> Result<Vec<BigInt>> {
    if lo == 0 || hi < lo {
        return Err(Error::Malformed(format!(
            "bad cyclotomic range {lo}..={hi}"
        )));
    }
    let mut acc = vec![BigInt::one()];
    for i in lo..=hi {
        acc = poly::mul(&acc, &cyclotomic_poly(l, i)?);
    }
    Ok(acc)
}

/// Companion matrix of a monic polynomial: multiplication by x on the power
/// basis (1, x, ..., x^{n-1}) of Z[x]/(p).
pub fn companion(p: &[BigInt]) -> Result<IntMatrix> {
    let n = poly::deg(p).ok_or_else(|| Error::Malformed("zero polynomial".into()))?;
    if n == 0 || !p[n].is_one() {
        return Err(Error::Malformed(
            "companion needs a monic polynomial of degree ≥ 1".into(),
        ));
    }
    Ok(Mat::from_fn(n, n, |i, j| {
        if j + 1 == n {
            -p[i].clone()
        } else if i == j + 1 {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    }))
}

/// Multiplication by x on Z[x]/(f_{l,lo}···f_{l,hi}) in the power basis.
pub fn lambda_mult_matrix(l: u64, lo: u32, hi: u32) -> Result<IntMatrix> {
    companion(&cyclotomic_range_product(l, lo, hi)?)
}

/// A lattice automorphism: a square integer matrix of determinant ±1,
/// optionally with a declared (and verified) finite order.
#[derive(Clone, Debug)]
pub struct LatticeAuto {
    sigma: IntMatrix,
    declared_order: Option<u64>,
}

impl LatticeAuto {
    pub fn new(sigma: IntMatrix, declared_order: Option<u64>) -> Result<Self> {
        if !sigma.is_square() {
            return Err(Error::Dimension(
                "automorphism matrix must be square".into(),
            ));
        }
        let d = det(&sigma)?;
        if !d.abs().is_one() {
            return Err(Error::Malformed(format!(
                "det = {d}, not a lattice automorphism"
            )));
        }
        if let Some(n) = declared_order {
            if n == 0 || !sigma.pow(n)?.is_identity() {
                return Err(Error::Malformed(format!(
                    "declared order {n} does not hold"
                )));
            }
        }
        Ok(LatticeAuto {
            sigma,
            declared_order,
        })
    }

    pub fn sigma(&self) -> &IntMatrix {
        &self.sigma
    }

    pub fn dim(&self) -> usize {
        self.sigma.rows()
    }

    pub fn declared_order(&self) -> Option<u64> {
        self.declared_order
    }
}

/// Multiplicities m_i of f_{l,i} in a characteristic polynomial, indexed
/// from i = 1. Not necessarily monotone; trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloMultiplicities {
    m: Vec<u32>,
}

impl CycloMultiplicities {
    pub fn new(m: Vec<u32>) -> Self {
        let mut m = m;
        while m.last() == Some(&0) {
            m.pop();
        }
        CycloMultiplicities { m }
    }

    pub fn empty() -> Self {
        CycloMultiplicities { m: vec![] }
    }

    /// m_i for i ≥ 1.
    pub fn get(&self, i: u32) -> u32 {
        self.m.get(i as usize - 1).copied().unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.m
    }

    pub fn support_len(&self) -> u32 {
        self.m.len() as u32
    }

    pub fn add(&self, other: &CycloMultiplicities) -> CycloMultiplicities {
        let n = self.m.len().max(other.m.len());
        CycloMultiplicities::new((1..=n as u32).map(|i| self.get(i) + other.get(i)).collect())
    }

    /// Σ m_i · φ(l^i): the rank of the span of the f_{l,i}-eigenspaces.
    pub fn weighted_rank(&self, l: u64) -> u64 {
        self.m
            .iter()
            .enumerate()
            .map(|(idx, &m)| m as u64 * phi_prime_power(l, idx as u32 + 1))
            .sum()
    }
}

/// m_i = multiplicity of f_{l,i} in charpoly(σ), by exact trial division.
pub fn cyclotomic_multiplicities(auto: &LatticeAuto, l: u64) -> Result<CycloMultiplicities> {
    require_prime(l)?;
    let mut rem = charpoly(auto.sigma())?;
    let mut m = Vec::new();
    let mut i = 1u32;
    loop {
        let deg_left = poly::deg(&rem).unwrap_or(0) as u64;
        if phi_prime_power(l, i) > deg_left {
            break;
        }
        let f = cyclotomic_poly(l, i)?;
        let mut count = 0u32;
        loop {
            let (q, r) = poly::divrem_monic(&rem, &f);
            if !r.is_empty() {
                break;
            }
            rem = q;
            count += 1;
            if poly::deg(&rem).is_none() {
                break;
            }
        }
        m.push(count);
        i += 1;
    }
    Ok(CycloMultiplicities::new(m))
}

/// p_j = |{i ≥ 1 : m_i ≥ j}|: the conjugate of the sorted multiplicity
/// sequence. Σ p = Σ m.
pub fn conjugate_counts(m: &CycloMultiplicities) -> Partition {
    Partition::from_unsorted(m.as_slice().iter().copied()).conjugate()
}

/// Outcome of the coinvariant bound check for one automorphism.
#[derive(Clone, Debug)]
pub struct CoinvariantReport {
    /// Invariant of M/(σ−1)M (the l-part).
    pub coinv: Partition,
    pub multiplicities: CycloMultiplicities,
    pub conj_counts: Partition,
    /// δ_l(p), the middle bound.
    pub bound: BigUint,
    pub rank: usize,
    /// δ_l(coinv) ≤ δ_l(p)
    pub bound_ok: bool,
    /// δ_l(p) ≤ rank
    pub rank_bound_ok: bool,
    /// δ_l(coinv) = rank (the extremal case)
    pub equality: bool,
    /// In the extremal case: coinv = p exactly and the multiplicities are
    /// weakly decreasing on an initial segment. None when not extremal.
    pub structure_ok: Option<bool>,
}

impl CoinvariantReport {
    pub fn passed(&self) -> bool {
        self.bound_ok && self.rank_bound_ok && self.structure_ok.unwrap_or(true)
    }
}

/// Checks δ_l(M/(σ−1)M) ≤ δ_l(p) ≤ rank(M) for an automorphism of finite
/// order without eigenvalue 1, and the structure consequence in the
/// equality case.
pub fn check_coinvariant_bound(auto: &LatticeAuto, l: u64) -> Result<CoinvariantReport> {
    require_prime(l)?;
    let cp = charpoly(auto.sigma())?;
    if poly::eval(&cp, &BigInt::one()).is_zero() {
        return Err(Error::EigenvalueOne);
    }
    let shifted = auto.sigma().sub_identity()?;
    let (coinv, corank) = cokernel_l_part(&shifted, l)?;
    debug_assert_eq!(corank, 0);
    let mult = cyclotomic_multiplicities(auto, l)?;
    let p = conjugate_counts(&mult);
    let d_coinv = delta_l(l, &coinv)?;
    let d_p = delta_l(l, &p)?;
    let rank = auto.dim();
    let bound_ok = d_coinv <= d_p;
    let rank_bound_ok = d_p <= BigUint::from(rank);
    let equality = d_coinv == BigUint::from(rank);
    let structure_ok = equality.then(|| {
        let ms = mult.as_slice();
        let decreasing = ms.windows(2).all(|w| w[0] >= w[1]);
        let no_gaps = ms.iter().all(|&x| x > 0);
        coinv == p && decreasing && no_gaps
    });
    Ok(CoinvariantReport {
        coinv,
        multiplicities: mult,
        conj_counts: p,
        bound: d_p,
        rank,
        bound_ok,
        rank_bound_ok,
        equality,
        structure_ok,
    })
}

/// Random unimodular matrix as a product of `steps` bounded elementary
/// operations, together with its exact inverse.
pub fn random_unimodular<R: Rng>(dim: usize, steps: usize, rng: &mut R) -> (IntMatrix, IntMatrix) {
    let mut u = Mat::<BigInt>::identity(dim);
    let mut uinv = Mat::<BigInt>::identity(dim);
    if dim < 2 {
        return (u, uinv);
    }
    for _ in 0..steps {
        match rng.gen_range(0..3) {
            0 => {
                let i = rng.gen_range(0..dim);
                let mut j = rng.gen_range(0..dim);
                while j == i {
                    j = rng.gen_range(0..dim);
                }
                let c = BigInt::from(*[-2, -1, 1, 2].get(rng.gen_range(0..4)).unwrap());
                // U ← E·U, U⁻¹ ← U⁻¹·E⁻¹
                u.row_axpy(i, j, &c);
                uinv.col_axpy(j, i, &(-c));
            }
            1 => {
                let i = rng.gen_range(0..dim);
                let j = rng.gen_range(0..dim);
                u.swap_rows(i, j);
                uinv.swap_cols(i, j);
            }
            _ => {
                let i = rng.gen_range(0..dim);
                let neg = BigInt::from(-1);
                u.scale_row(i, &neg);
                uinv.scale_col(i, &neg);
            }
        }
    }
    debug_assert!(u.mul(&uinv).unwrap().is_identity());
    (u, uinv)
}
