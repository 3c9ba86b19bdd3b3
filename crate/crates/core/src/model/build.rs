//! Builders for the explicit lattice models: products of Tate curves, the
//! toric and abelian l-power twists, the two twisted-lattice constructions
//! with prescribed cyclic component group, the rank-2 unipotent elliptic
//! blocks, and the trivial padding models.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::require_prime;
use crate::error::{Error, Result};
use crate::linalg::cyclo::{
    companion, cyclotomic_multiplicities, cyclotomic_range_product, lambda_mult_matrix,
    CycloMultiplicities, LatticeAuto,
};
use crate::linalg::mat::Mat;
use crate::linalg::modular::{rank_mod_prime, ModMatrix, ModPoly, ModPolyRing, ScaledElem};
use crate::linalg::poly;
use crate::model::{GaloisLatticeModel, RankData, TauMatrix};
use crate::{IntMatrix, Rational};

fn coordinate_block(rank: usize, cols: std::ops::Range<usize>) -> IntMatrix {
    Mat::from_fn(rank, cols.len(), |i, j| {
        if i == cols.start + j {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    })
}

fn zero_lattice(rank: usize) -> IntMatrix {
    Mat::zero(rank, 0)
}

/// Product of Tate curves with multipliers q^{n_i}: block-diagonal
/// unipotent τ with blocks [[1, n_i],[0, 1]], completely toric reduction,
/// Φ = Φ³ = ⊕ Z/n_i.
pub fn model_example51(ns: &[u64], l: u64) -> Result<GaloisLatticeModel> {
    require_prime(l)?;
    if ns.contains(&0) {
        return Err(Error::Malformed("Tate parameters must be positive".into()));
    }
    let t = ns.len();
    let rank = 2 * t;
    let tau = Mat::from_fn(rank, rank, |i, j| {
        if i == j {
            BigInt::one()
        } else if i + 1 == j && i % 2 == 0 && j / 2 == i / 2 {
            BigInt::from(ns[i / 2])
        } else {
            BigInt::zero()
        }
    });
    let w = Mat::from_fn(rank, t, |i, j| {
        if i == 2 * j {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    });
    GaloisLatticeModel::new(
        l,
        TauMatrix::Exact(tau),
        [w.clone(), w.clone(), w.clone(), w],
        RankData {
            t: t as u32,
            a: 0,
            u: 0,
            t_tilde: t as u32,
            a_tilde: 0,
        },
        CycloMultiplicities::empty(),
        CycloMultiplicities::empty(),
        false,
    )
}

/// The trivial rank-0 model (empty product of Tate curves).
pub fn trivial_model(l: u64) -> Result<GaloisLatticeModel> {
    model_example51(&[], l)
}

/// Twist of a square product of toric curves by the order-l^i automorphism:
/// τ = [[X, X],[0, X]] with X multiplication-by-x on Λ_{l,i}. Completely
/// unipotent special fibre, completely toric semi-stable reduction.
pub fn model_example52(l: u64, i: u32) -> Result<GaloisLatticeModel> {
    require_prime(l)?;
    if i == 0 {
        return Err(Error::Malformed("twist order exponent must be ≥ 1".into()));
    }
    let x = lambda_mult_matrix(l, 1, i)?;
    let r = x.rows();
    let rank = 2 * r;
    let mut tau = Mat::zero(rank, rank);
    for a in 0..r {
        for b in 0..r {
            tau[(a, b)] = x[(a, b)].clone();
            tau[(a, r + b)] = x[(a, b)].clone();
            tau[(r + a, r + b)] = x[(a, b)].clone();
        }
    }
    GaloisLatticeModel::new(
        l,
        TauMatrix::Exact(tau),
        [
            Mat::identity(rank),
            coordinate_block(rank, 0..r),
            coordinate_block(rank, 0..r),
            zero_lattice(rank),
        ],
        RankData {
            t: 0,
            a: 0,
            u: r as u32,
            t_tilde: r as u32,
            a_tilde: 0,
        },
        CycloMultiplicities::new(vec![1; i as usize]),
        CycloMultiplicities::empty(),
        false,
    )
}

/// Twist of an abelian variety with Λ_{l,i}-action by multiplication by x:
/// τ = X itself, potentially good reduction, Φ = Φ¹ cyclic of order l^i.
/// For l = 2 the lattice computation is still meaningful but the abelian
/// multiplicity m_{a,2,1} of an actual abelian variety is forced even, so
/// the model is flagged nonstandard.
pub fn model_example53(l: u64, i: u32) -> Result<GaloisLatticeModel> {
    require_prime(l)?;
    if i == 0 {
        return Err(Error::Malformed("twist order exponent must be ≥ 1".into()));
    }
    let tau = lambda_mult_matrix(l, 1, i)?;
    let rank = tau.rows();
    let nonstandard = l == 2;
    let dim = (rank as u32).div_ceil(2);
    GaloisLatticeModel::new(
        l,
        TauMatrix::Exact(tau),
        [
            Mat::identity(rank),
            Mat::identity(rank),
            zero_lattice(rank),
            zero_lattice(rank),
        ],
        RankData {
            t: 0,
            a: 0,
            u: dim,
            t_tilde: 0,
            a_tilde: dim,
        },
        CycloMultiplicities::empty(),
        CycloMultiplicities::new(vec![1; i as usize]),
        nonstandard,
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnipotentEllipticKind {
    /// Component group Z/2 × Z/2: τ = −1, order 2.
    Klein,
    /// Component group Z/2: τ of order 4.
    Cyclic2,
}

/// Rank-2 elliptic blocks with unipotent reduction and potentially good
/// reduction; the declared abelian multiplicities are computed from the
/// characteristic polynomial of τ at the requested prime.
pub fn model_unipotent_elliptic(kind: UnipotentEllipticKind, l: u64) -> Result<GaloisLatticeModel> {
    require_prime(l)?;
    let tau: IntMatrix = match kind {
        UnipotentEllipticKind::Klein => Mat::from_rows(vec![
            vec![BigInt::from(-1), BigInt::zero()],
            vec![BigInt::zero(), BigInt::from(-1)],
        ])?,
        UnipotentEllipticKind::Cyclic2 => Mat::from_rows(vec![
            vec![BigInt::zero(), BigInt::from(-1)],
            vec![BigInt::one(), BigInt::zero()],
        ])?,
    };
    let order = match kind {
        UnipotentEllipticKind::Klein => 2,
        UnipotentEllipticKind::Cyclic2 => 4,
    };
    let m_a = cyclotomic_multiplicities(&LatticeAuto::new(tau.clone(), Some(order))?, l)?;
    GaloisLatticeModel::new(
        l,
        TauMatrix::Exact(tau),
        [
            Mat::identity(2),
            Mat::identity(2),
            zero_lattice(2),
            zero_lattice(2),
        ],
        RankData {
            t: 0,
            a: 0,
            u: 1,
            t_tilde: 0,
            a_tilde: 1,
        },
        CycloMultiplicities::empty(),
        m_a,
        false,
    )
}

/// Abelian variety with good reduction: Φ trivial, V′^⊥ = 0.
pub fn abelian_pad_model(l: u64, dim: u32) -> Result<GaloisLatticeModel> {
    require_prime(l)?;
    let rank = 2 * dim as usize;
    GaloisLatticeModel::new(
        l,
        TauMatrix::Exact(Mat::identity(rank)),
        std::array::from_fn(|_| zero_lattice(rank)),
        RankData {
            t: 0,
            a: dim,
            u: 0,
            t_tilde: 0,
            a_tilde: dim,
        },
        CycloMultiplicities::empty(),
        CycloMultiplicities::empty(),
        false,
    )
}

/// Unipotent reduction with trivial component group: blocks acting by a
/// primitive sixth root of unity, whose characteristic polynomial x²−x+1
/// takes the value 1 at 1, so coker(τ−1) is trivial at every prime.
pub fn unipotent_pad_model(l: u64, dim: u32) -> Result<GaloisLatticeModel> {
    require_prime(l)?;
    let block: IntMatrix = Mat::from_rows(vec![
        vec![BigInt::zero(), BigInt::from(-1)],
        vec![BigInt::one(), BigInt::one()],
    ])?;
    let blocks: Vec<&IntMatrix> = std::iter::repeat_n(&block, dim as usize).collect();
    let tau = Mat::block_diag(&blocks);
    let rank = 2 * dim as usize;
    GaloisLatticeModel::new(
        l,
        TauMatrix::Exact(tau),
        [
            Mat::identity(rank),
            Mat::identity(rank),
            zero_lattice(rank),
            zero_lattice(rank),
        ],
        RankData {
            t: 0,
            a: 0,
            u: dim,
            t_tilde: 0,
            a_tilde: dim,
        },
        CycloMultiplicities::empty(),
        CycloMultiplicities::empty(),
        false,
    )
}

/// Largest l-valuation among coefficient denominators: the scaling exponent
/// needed to make the rational polynomial l-integral.
fn denominator_shift(coeffs: &[Rational], l: u64) -> u32 {
    coeffs
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| crate::linalg::smith::val_l(c.denom(), l))
        .max()
        .unwrap_or(0)
}

/// Inverse of `elem` modulo the monic integer polynomial `modulus`, over Q.
fn rat_inverse_mod(elem: &[Rational], modulus: &[BigInt]) -> Result<Vec<Rational>> {
    let m = poly::rat_from_int(modulus);
    let (g, s, _) = poly::rat_ext_gcd(elem, &m);
    if g != vec![Rational::one()] {
        return Err(Error::Malformed(
            "element is not invertible mod the given polynomial".into(),
        ));
    }
    let (_, rem) = poly::rat_divrem(&s, &m);
    Ok(rem)
}

/// Twisted-lattice model with Φ cyclic of order l^{2r+s} (s ≥ 1) or l^{2r}
/// (s = 0). The construction follows the gluing recipe: a lattice with
/// integral part Λ_{l,r+s} (resp. Λ_{l,r}) in the first block, glued to a
/// second Λ_{l,r} block along the map φ̃(x^i) = x^i·y + i·x^i·(z, 0) with
/// y = (0, g_r(x)^{-1}) and z = (x·g_r'(x))^{-1}. Ring inverses with
/// l-denominators are carried as scaled residues at an enlarged working
/// precision and the assembled generator matrix is checked to be integral,
/// with only its last gluing column nonzero and with corank 1 mod l where
/// cyclicity requires it.
fn build_twisted(l: u64, r: u32, s: u32, declared_prec: u32) -> Result<GaloisLatticeModel> {
    require_prime(l)?;
    if r == 0 {
        return Err(Error::Malformed("toric twist depth r must be ≥ 1".into()));
    }
    if declared_prec == 0 {
        return Err(Error::Malformed("precision must be at least 1".into()));
    }
    let g_r = cyclotomic_range_product(l, 1, r)?;
    let n_b = poly::deg(&g_r).unwrap(); // l^r − 1
    let (h, big_g) = if s > 0 {
        let h = cyclotomic_range_product(l, r + 1, r + s)?;
        let big_g = poly::mul(&g_r, &h);
        (Some(h), big_g)
    } else {
        (None, g_r.clone())
    };
    let n_a = poly::deg(&big_g).unwrap();
    let rank = n_a + n_b;

    // Exact rational constants. z = (x·g_r')^{-1} in Q[x]/(g_r);
    // for s ≥ 1 also y_2 = g_r^{-1} in Q[x]/(h) and the CRT idempotents
    // ε_r ≡ (1, 0), ε_h ≡ (0, 1) of Q[x]/(G) ≅ Q[x]/(g_r) × Q[x]/(h).
    let xgp = {
        let mut v = poly::derivative(&g_r);
        v.insert(0, BigInt::zero()); // multiply by x
        let (_, rem) = poly::divrem_monic(&v, &g_r);
        rem
    };
    let z_rat = rat_inverse_mod(&poly::rat_from_int(&xgp), &g_r)?;
    let (y2_rat, eps_r_rat, eps_h_rat) = if let Some(h) = &h {
        let gr_q = poly::rat_from_int(&g_r);
        let h_q = poly::rat_from_int(h);
        let (g, sc, tc) = poly::rat_ext_gcd(&gr_q, &h_q);
        if g != vec![Rational::one()] {
            return Err(Error::Malformed(
                "cyclotomic factors are not coprime".into(),
            ));
        }
        // sc·g_r + tc·h = 1: y_2 = sc mod h, ε_r = tc·h, ε_h = sc·g_r.
        let (_, y2) = poly::rat_divrem(&sc, &h_q);
        let eps_r = poly::rat_mul(&tc, &h_q);
        let eps_h = poly::rat_mul(&sc, &gr_q);
        (y2, eps_r, eps_h)
    } else {
        (Vec::new(), vec![Rational::one()], Vec::new())
    };

    let ez = denominator_shift(&z_rat, l);
    let ey = denominator_shift(&y2_rat, l);
    let ev = denominator_shift(&eps_r_rat, l).max(denominator_shift(&eps_h_rat, l));
    let total_shift = ev + ez.max(ey);
    let prec_w = declared_prec + total_shift + 2;

    let ring_a = ModPolyRing::new(l, prec_w, big_g.clone())?;
    let ring_b = ModPolyRing::new(l, prec_w, g_r.clone())?;
    let ring_c = match &h {
        Some(h) => Some(ModPolyRing::new(l, prec_w, h.clone())?),
        None => None,
    };

    let z = ScaledElem::from_rational(&ring_b, &z_rat)?;
    // sanity: (x·g_r')·z = 1
    {
        let xgp_elem = ScaledElem::integral(ring_b.elem(&xgp));
        let prod = ScaledElem::mul(&ring_b, &xgp_elem, &z).resolve(&ring_b)?;
        if prod != ring_b.one() {
            return Err(Error::ModelInvariant(
                "z is not the inverse of x·g_r'".into(),
            ));
        }
    }
    let y2 = match &ring_c {
        Some(rc) => {
            let y2 = ScaledElem::from_rational(rc, &y2_rat)?;
            let gr_elem = ScaledElem::integral(rc.elem(&g_r));
            if ScaledElem::mul(rc, &gr_elem, &y2).resolve(rc)? != rc.one() {
                return Err(Error::ModelInvariant(
                    "y_2 is not the inverse of g_r".into(),
                ));
            }
            Some(y2)
        }
        None => None,
    };
    let eps_r = ScaledElem::from_rational(&ring_a, &eps_r_rat)?;
    let eps_h = ScaledElem::from_rational(&ring_a, &eps_h_rat)?;

    // φ̃ on the monomial basis of Λ_{l,r}: first component i·x^i·z, second
    // component x^i·y_2 (y_1 = 0).
    let phi_first: Vec<ScaledElem> = (0..n_b)
        .map(|i| {
            let xi = ScaledElem::integral(ring_b.x_power(i));
            let zi = ScaledElem::mul(&ring_b, &z, &xi);
            ScaledElem::scale_int(&ring_b, &zi, &BigInt::from(i))
        })
        .collect();
    let phi_second: Vec<ScaledElem> = match (&ring_c, &y2) {
        (Some(rc), Some(y2)) => (0..n_b)
            .map(|i| ScaledElem::mul(rc, y2, &ScaledElem::integral(rc.x_power(i))))
            .collect(),
        _ => Vec::new(),
    };

    // Correction column for each basis monomial b = x^i:
    //   (x·z·x^i, 0) + x·φ̃(x^i) − φ̃(x·x^i), pulled back through the CRT
    // idempotents into the first block's ring. All but the last column must
    // vanish and every entry must be integral.
    let mut corr_cols: Vec<ModPoly> = Vec::with_capacity(n_b);
    for i in 0..n_b {
        // coefficients of x^{i+1} reduced mod g_r (exact integers)
        let mut xb = vec![BigInt::zero(); i + 2];
        xb[i + 1] = BigInt::one();
        let (_, xb) = poly::divrem_monic(&xb, &g_r);
        let combine = |ring: &ModPolyRing, table: &[ScaledElem]| -> ScaledElem {
            let mut acc = ScaledElem::zero(ring);
            for (j, c) in xb.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                acc = ScaledElem::add(ring, &acc, &ScaledElem::scale_int(ring, &table[j], c));
            }
            acc
        };
        let x_b1 = ScaledElem::integral(ring_b.x_power(1));
        let first = {
            // x·z·x^i + x·φ̃(x^i)_1 − φ̃(x^{i+1})_1
            let xz = ScaledElem::mul(&ring_b, &z, &ScaledElem::integral(ring_b.x_power(i + 1)));
            let xphi = ScaledElem::mul(&ring_b, &x_b1, &phi_first[i]);
            ScaledElem::sub(
                &ring_b,
                &ScaledElem::add(&ring_b, &xz, &xphi),
                &combine(&ring_b, &phi_first),
            )
        };
        let pulled = match (&ring_c, &phi_second) {
            (Some(rc), table) if !table.is_empty() => {
                let x_c1 = ScaledElem::integral(rc.x_power(1));
                let second = ScaledElem::sub(
                    rc,
                    &ScaledElem::mul(rc, &x_c1, &table[i]),
                    &combine(rc, table),
                );
                // lift both components into the big ring and recombine
                let lift_first = ScaledElem {
                    shift: first.shift,
                    num: ring_a.elem(&first.num.coeffs),
                };
                let lift_second = ScaledElem {
                    shift: second.shift,
                    num: ring_a.elem(&second.num.coeffs),
                };
                ScaledElem::add(
                    &ring_a,
                    &ScaledElem::mul(&ring_a, &eps_r, &lift_first),
                    &ScaledElem::mul(&ring_a, &eps_h, &lift_second),
                )
            }
            _ => ScaledElem {
                shift: first.shift,
                num: ring_a.elem(&first.num.coeffs),
            },
        };
        let resolved = pulled.resolve(&ring_a)?;
        corr_cols.push(resolved);
    }

    // Reduce corrections to the declared precision and self-check the
    // cancellation: only the last gluing column may be nonzero.
    let modulus = BigInt::from(l).pow(declared_prec);
    let corr_reduced: Vec<Vec<BigInt>> = corr_cols
        .iter()
        .map(|c| {
            let mut v: Vec<BigInt> = c
                .coeffs
                .iter()
                .map(|x| num_integer::Integer::mod_floor(x, &modulus))
                .collect();
            v.resize(n_a, BigInt::zero());
            v
        })
        .collect();
    for (i, col) in corr_reduced.iter().enumerate() {
        let vanishes = col.iter().all(|x| x.is_zero());
        if i + 1 < n_b && !vanishes {
            return Err(Error::ModelInvariant(format!(
                "gluing correction column {i} does not cancel"
            )));
        }
        if i + 1 == n_b && vanishes && n_b > 0 {
            return Err(Error::ModelInvariant(
                "final gluing correction vanished; the twist degenerated".into(),
            ));
        }
    }

    // Assemble τ = [[companion(G), corr],[0, companion(g_r)]] mod l^N.
    let comp_g = companion(&big_g)?;
    let comp_gr = companion(&g_r)?;
    let tau_int = Mat::from_fn(rank, rank, |i, j| {
        if i < n_a && j < n_a {
            comp_g[(i, j)].clone()
        } else if i < n_a {
            corr_reduced[j - n_a][i].clone()
        } else if j >= n_a {
            comp_gr[(i - n_a, j - n_a)].clone()
        } else {
            BigInt::zero()
        }
    });
    let tau = ModMatrix::new(l, declared_prec, tau_int.clone())?;

    // Corank checks mod l: the full τ−1 must have corank exactly 1 (Φ_l is
    // cyclic), and for s ≥ 1 the same must hold for the induced action on
    // the two-block quotient M/M² (first block reduced mod h).
    let full_shifted = tau_int.sub_identity()?;
    if rank - rank_mod_prime(&full_shifted, l) != 1 {
        return Err(Error::ModelInvariant(
            "τ−1 does not have corank 1 mod l".into(),
        ));
    }
    if let Some(h) = &h {
        let s_dim = poly::deg(h).unwrap();
        let comp_h = companion(h)?;
        let dim = s_dim + n_b;
        let block = Mat::from_fn(dim, dim, |i, j| {
            if i < s_dim && j < s_dim {
                comp_h[(i, j)].clone()
            } else if i < s_dim && j >= s_dim {
                // correction column reduced mod h
                let col = &corr_reduced[j - s_dim];
                let (_, rem) = poly::divrem_monic(col, h);
                rem.get(i).cloned().unwrap_or_else(BigInt::zero)
            } else if i >= s_dim && j >= s_dim {
                comp_gr[(i - s_dim, j - s_dim)].clone()
            } else {
                BigInt::zero()
            }
        });
        let shifted = block.sub_identity()?;
        if dim - rank_mod_prime(&shifted, l) != 1 {
            return Err(Error::ModelInvariant(
                "τ−1 does not have corank 1 mod l on the two-block quotient".into(),
            ));
        }
    }

    // Filtration: V⁰ = U; V¹ = first block; V² = h·Λ inside the first block
    // for s ≥ 1 (= V¹ for s = 0); V³ = 0.
    let v1 = coordinate_block(rank, 0..n_a);
    let v2 = match &h {
        Some(h) => {
            let r_cols = n_b;
            Mat::from_fn(rank, r_cols, |i, j| {
                if i < n_a {
                    // coefficient of x^i in h(x)·x^j
                    if i >= j && i - j < h.len() {
                        h[i - j].clone()
                    } else {
                        BigInt::zero()
                    }
                } else {
                    BigInt::zero()
                }
            })
        }
        None => v1.clone(),
    };
    let t_tilde = n_b as u32; // l^r − 1
    let dim = (rank / 2) as u32;
    let ranks = RankData {
        t: 0,
        a: 0,
        u: dim,
        t_tilde,
        a_tilde: dim - t_tilde,
    };
    let m_t = CycloMultiplicities::new(vec![1; r as usize]);
    let m_a = if s > 0 {
        CycloMultiplicities::new((1..=r + s).map(|i| if i > r { 1 } else { 0 }).collect())
    } else {
        CycloMultiplicities::empty()
    };
    GaloisLatticeModel::new(
        l,
        TauMatrix::Finite(tau),
        [Mat::identity(rank), v1, v2, zero_lattice(rank)],
        ranks,
        m_t,
        m_a,
        false,
    )
}

/// Twisted model with t = a = 0, t̃ = l^r − 1, ã = (l^{r+s} − l^r)/2 and
/// Φ = Φ_l cyclic of order l^{2r+s}, at declared precision N. The recipe
/// succeeds at any N ≥ 1; resolving Φ requires N > 2r+s (N ≥ 2r+s+2 gives
/// the stability margin).
pub fn model_example54(l: u64, r: u32, s: u32, precision: u32) -> Result<GaloisLatticeModel> {
    if s == 0 {
        return Err(Error::Malformed("abelian twist depth s must be ≥ 1".into()));
    }
    build_twisted(l, r, s, precision)
}

/// Twisted model with t = ã = 0, t̃ = l^r − 1 and Φ = Φ_l cyclic of order
/// l^{2r}: the two-block adaptation in which the filtration has V¹ = V².
pub fn model_example55(l: u64, r: u32, precision: u32) -> Result<GaloisLatticeModel> {
    build_twisted(l, r, 0, precision)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{check_thm33, compute_phi, direct_sum};
    use crate::partition::Partition;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn tate_products() {
        let m = model_example51(&[6], 3).unwrap();
        let rep = compute_phi(&m).unwrap();
        assert_eq!(rep.phi, p(&[1]));
        assert_eq!(rep.graded, [p(&[]), p(&[]), p(&[]), p(&[1])]);
        let m = model_example51(&[2, 4], 2).unwrap();
        assert_eq!(compute_phi(&m).unwrap().phi, p(&[2, 1]));
        let m = model_example51(&[1], 2).unwrap();
        assert_eq!(compute_phi(&m).unwrap().phi, p(&[]));
    }

    #[test]
    fn toric_twists() {
        let rep = compute_phi(&model_example52(3, 1).unwrap()).unwrap();
        assert_eq!(rep.phi, p(&[1, 1]));
        assert_eq!(rep.graded, [p(&[1]), p(&[]), p(&[1]), p(&[])]);
        let rep = compute_phi(&model_example52(2, 1).unwrap()).unwrap();
        assert_eq!(rep.phi, p(&[2]));
        assert_eq!(rep.graded, [p(&[1]), p(&[]), p(&[1]), p(&[])]);
        let rep = compute_phi(&model_example52(2, 2).unwrap()).unwrap();
        assert_eq!(rep.phi, p(&[3, 1]));
    }

    #[test]
    fn abelian_twists() {
        let rep = compute_phi(&model_example53(3, 1).unwrap()).unwrap();
        assert_eq!(rep.phi, p(&[1]));
        assert_eq!(rep.graded, [p(&[]), p(&[1]), p(&[]), p(&[])]);
        assert_eq!(
            compute_phi(&model_example53(3, 2).unwrap()).unwrap().phi,
            p(&[2])
        );
        assert_eq!(
            compute_phi(&model_example53(5, 1).unwrap()).unwrap().phi,
            p(&[1])
        );
        assert!(model_example53(2, 1).unwrap().nonstandard);
    }

    #[test]
    fn unipotent_elliptic_blocks() {
        let m = model_unipotent_elliptic(UnipotentEllipticKind::Klein, 2).unwrap();
        assert_eq!(compute_phi(&m).unwrap().phi, p(&[1, 1]));
        assert_eq!(m.m_a.as_slice(), &[2]);
        let m = model_unipotent_elliptic(UnipotentEllipticKind::Cyclic2, 2).unwrap();
        assert_eq!(compute_phi(&m).unwrap().phi, p(&[1]));
        assert_eq!(m.m_a.as_slice(), &[0, 1]);
        // the Klein block has no 3-torsion in its component group
        let m = model_unipotent_elliptic(UnipotentEllipticKind::Klein, 3).unwrap();
        assert_eq!(compute_phi(&m).unwrap().phi, p(&[]));
        assert!(m.m_a.as_slice().is_empty());
    }

    #[test]
    fn pads_are_trivial() {
        for l in [2u64, 3, 5] {
            let m = abelian_pad_model(l, 2).unwrap();
            assert_eq!(compute_phi(&m).unwrap().phi, p(&[]));
            let m = unipotent_pad_model(l, 2).unwrap();
            assert_eq!(compute_phi(&m).unwrap().phi, p(&[]));
        }
    }

    #[test]
    fn twisted_models_small() {
        // (l, r, s) = (2,1,1): Φ = Z/8
        let m = model_example54(2, 1, 1, 8).unwrap();
        let rep = compute_phi(&m).unwrap();
        assert_eq!(rep.phi, p(&[3]));
        assert_eq!(rep.graded, [p(&[1]), p(&[1]), p(&[1]), p(&[])]);
        // (3,1,1): Φ = Z/27
        let m = model_example54(3, 1, 1, 8).unwrap();
        assert_eq!(compute_phi(&m).unwrap().phi, p(&[3]));
        // ex55 (2,1): Φ = Z/4
        let m = model_example55(2, 1, 8).unwrap();
        let rep = compute_phi(&m).unwrap();
        assert_eq!(rep.phi, p(&[2]));
        // (3,1): Φ = Z/9
        let m = model_example55(3, 1, 8).unwrap();
        assert_eq!(compute_phi(&m).unwrap().phi, p(&[2]));
    }

    #[test]
    fn twisted_model_precision_exhaustion() {
        // Φ = Z/8 cannot be resolved at precision 2^3
        let m = model_example54(2, 1, 1, 3).unwrap();
        assert_eq!(
            compute_phi(&m).err(),
            Some(crate::error::Error::PrecisionExhausted(3))
        );
    }

    #[test]
    fn direct_sums_merge_phi() {
        let a = model_example53(3, 1).unwrap();
        let b = model_example53(3, 1).unwrap();
        let sum = direct_sum(&[a, b]).unwrap();
        assert_eq!(compute_phi(&sum).unwrap().phi, p(&[1, 1]));

        let a = model_example51(&[2], 2).unwrap();
        let b = model_example52(2, 1).unwrap();
        let sum = direct_sum(&[a.clone(), b]).unwrap();
        let rep = compute_phi(&sum).unwrap();
        assert_eq!(rep.phi, p(&[2, 1]));

        // identity element
        let t = trivial_model(2).unwrap();
        let sum = direct_sum(&[a, t]).unwrap();
        assert_eq!(compute_phi(&sum).unwrap().phi, p(&[1]));
    }

    #[test]
    fn mixed_mode_direct_sum() {
        let a = model_example55(2, 1, 8).unwrap();
        let b = model_example51(&[4], 2).unwrap();
        let sum = direct_sum(&[a, b]).unwrap();
        assert_eq!(sum.precision(), Some(8));
        assert_eq!(compute_phi(&sum).unwrap().phi, p(&[2, 2]));
    }

    #[test]
    fn thm33_on_examples() {
        use num_bigint::BigUint;
        // ex52 (3,1): part 2 tight: δ(Φ²/Φ³) = 2 = δ(p_t) = t_l − t
        let m = model_example52(3, 1).unwrap();
        let rep = compute_phi(&m).unwrap();
        let v = check_thm33(&m, &rep).unwrap();
        assert!(v.all_ok());
        assert_eq!(v.lines[1].lhs, BigUint::from(2u32));
        assert_eq!(v.lines[1].rhs, BigUint::from(2u32));
        // ex53 (3,2): part 3 tight: δ(Φ¹/Φ²) = 8 = 2(a_l − a)
        let m = model_example53(3, 2).unwrap();
        let rep = compute_phi(&m).unwrap();
        let v = check_thm33(&m, &rep).unwrap();
        assert!(v.all_ok());
        assert_eq!(v.lines[2].lhs, BigUint::from(8u32));
        assert_eq!(v.lines[2].rhs, BigUint::from(8u32));
        // ex51: everything zero on parts 2–6
        let m = model_example51(&[2, 4], 2).unwrap();
        let rep = compute_phi(&m).unwrap();
        let v = check_thm33(&m, &rep).unwrap();
        assert!(v.all_ok());
        for line in &v.lines[1..] {
            assert_eq!(line.rhs, BigUint::from(0u32));
        }
    }
}
