//! Explicit lattice models of inertia acting on the Tate module: a prime l,
//! the matrix of a topological generator τ on a lattice U, a four-step
//! filtration of sublattices of U, declared reduction ranks and cyclotomic
//! multiplicities. The component group Φ is the torsion of the coinvariants,
//! computed as V⁰/((τ−1)U ∩ V⁰) with the filtration-induced graded pieces
//! Φ^i/Φ^{i+1} = V^i/(V^{i+1} + V^i ∩ (τ−1)U).
//!
//! Models come in two arithmetic modes: exact (integer τ, everything by
//! integer lattice kernels) and finite precision (τ known mod l^N, cokernel
//! by chain-ring diagonalization; a divisor hitting l^N raises a precision
//! error instead of returning a guess).

mod build;

pub use build::{
    abelian_pad_model, model_example51, model_example52, model_example53, model_example54,
    model_example55, model_unipotent_elliptic, trivial_model, unipotent_pad_model,
    UnipotentEllipticKind,
};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::arith::require_prime;
use crate::error::{Error, Result};
use crate::linalg::cyclo::{conjugate_counts, CycloMultiplicities};
use crate::linalg::finite::{quotient_with_map, subgroup_invariants};
use crate::linalg::lattice::{lattice_intersection, lattice_sum, quotient_invariants};
use crate::linalg::mat::Mat;
use crate::linalg::modular::{howell_form, mod_diagonalize_with_transform, ModMatrix};
use crate::linalg::smith::{hnf_basis, rank as lattice_rank, solve_in_echelon_basis};
use crate::partition::{delta_l_unchecked, Partition};
use crate::IntMatrix;

/// The inertia generator matrix, exact or at finite precision.
#[derive(Clone, Debug)]
pub enum TauMatrix {
    Exact(IntMatrix),
    Finite(ModMatrix),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RankData {
    pub t: u32,
    pub a: u32,
    pub u: u32,
    pub t_tilde: u32,
    pub a_tilde: u32,
}

/// Lattice model of the inertia action, with the filtration
/// V⁰ ⊇ V¹ ⊇ V² ⊇ V³ (generator matrices in U-coordinates) corresponding to
/// V′^⊥ ⊇ Ṽ∩V′^⊥ ⊇ W̃ ⊇ W.
#[derive(Clone, Debug)]
pub struct GaloisLatticeModel {
    pub l: u64,
    pub rank: usize,
    pub tau: TauMatrix,
    pub filtration: [IntMatrix; 4],
    pub ranks: RankData,
    pub m_t: CycloMultiplicities,
    pub m_a: CycloMultiplicities,
    /// Set when the construction is outside the geometric range (the l = 2
    /// variant of the purely abelian twist); rank bookkeeping checks are
    /// skipped for such models.
    pub nonstandard: bool,
}

/// Φ with its graded pieces. `corank` is always 0 in a successful report;
/// an infinite quotient is an error, not a report.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct PhiReport {
    pub phi: Partition,
    pub graded: [Partition; 4],
    pub corank: usize,
}

impl PhiReport {
    pub fn trivial() -> Self {
        PhiReport {
            phi: Partition::empty(),
            graded: [
                Partition::empty(),
                Partition::empty(),
                Partition::empty(),
                Partition::empty(),
            ],
            corank: 0,
        }
    }
}

/// The six filtration quotients needed by the bound checks:
/// graded pieces plus Φ/Φ² and Φ¹/Φ³.
#[derive(Clone, Debug)]
pub struct PhiDetail {
    pub report: PhiReport,
    pub phi_over_phi2: Partition,
    pub phi1_over_phi3: Partition,
}

impl GaloisLatticeModel {
    pub fn new(
        l: u64,
        tau: TauMatrix,
        filtration: [IntMatrix; 4],
        ranks: RankData,
        m_t: CycloMultiplicities,
        m_a: CycloMultiplicities,
        nonstandard: bool,
    ) -> Result<Self> {
        require_prime(l)?;
        let rank = match &tau {
            TauMatrix::Exact(m) => {
                if !m.is_square() {
                    return Err(Error::ModelInvariant("τ must be square".into()));
                }
                m.rows()
            }
            TauMatrix::Finite(m) => {
                if m.rows() != m.cols() {
                    return Err(Error::ModelInvariant("τ must be square".into()));
                }
                if m.l() != l {
                    return Err(Error::ModelInvariant(
                        "τ modulus prime differs from model prime".into(),
                    ));
                }
                m.rows()
            }
        };
        let model = GaloisLatticeModel {
            l,
            rank,
            tau,
            filtration,
            ranks,
            m_t,
            m_a,
            nonstandard,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn precision(&self) -> Option<u32> {
        match &self.tau {
            TauMatrix::Exact(_) => None,
            TauMatrix::Finite(m) => Some(m.prec()),
        }
    }

    fn validate(&self) -> Result<()> {
        for (i, gens) in self.filtration.iter().enumerate() {
            if gens.rows() != self.rank {
                return Err(Error::ModelInvariant(format!(
                    "filtration step {i} lives in the wrong ambient rank"
                )));
            }
        }
        // nesting V^{i+1} ⊆ V^i (the generator matrices are integral in both
        // arithmetic modes)
        for i in 0..3 {
            let basis = hnf_basis(&self.filtration[i]);
            if self.filtration[i + 1].cols() > 0
                && solve_in_echelon_basis(&basis, &self.filtration[i + 1]).is_none()
            {
                return Err(Error::ModelInvariant(format!(
                    "filtration step {} is not contained in step {}",
                    i + 1,
                    i
                )));
            }
        }
        // τ-stability of every step
        match &self.tau {
            TauMatrix::Exact(tau) => {
                for (i, gens) in self.filtration.iter().enumerate() {
                    if gens.cols() == 0 {
                        continue;
                    }
                    let image = tau.mul(gens)?;
                    if solve_in_echelon_basis(&hnf_basis(gens), &image).is_none() {
                        return Err(Error::ModelInvariant(format!(
                            "filtration step {i} is not τ-stable"
                        )));
                    }
                }
            }
            TauMatrix::Finite(tau) => {
                for (i, gens) in self.filtration.iter().enumerate() {
                    if gens.cols() == 0 {
                        continue;
                    }
                    let image = tau.mul_int(gens)?;
                    let span = howell_form(&ModMatrix::from_int_matrix(self.l, tau.prec(), gens)?);
                    for j in 0..image.cols() {
                        let col = image.to_int_matrix().col(j);
                        if !span.contains(&col) {
                            return Err(Error::ModelInvariant(format!(
                                "filtration step {i} is not τ-stable at this precision"
                            )));
                        }
                    }
                }
            }
        }
        if self.nonstandard {
            return Ok(());
        }
        // rank bookkeeping: t + a + u = t̃ + ã = rank/2, and the filtration
        // quotients have ranks t̃−t, 2(ã−a), t̃−t, t.
        let RankData {
            t,
            a,
            u,
            t_tilde,
            a_tilde,
        } = self.ranks;
        if !self.rank.is_multiple_of(2) || (t + a + u) as usize * 2 != self.rank {
            return Err(Error::ModelInvariant(format!(
                "t + a + u = {} does not match rank {} = 2·dim",
                t + a + u,
                self.rank
            )));
        }
        if t + a + u != t_tilde + a_tilde {
            return Err(Error::ModelInvariant("t + a + u and t̃ + ã disagree".into()));
        }
        if t_tilde < t || a_tilde < a {
            return Err(Error::ModelInvariant(
                "semi-stable ranks below special ranks".into(),
            ));
        }
        // rank V⁰ = 2d − (t + 2a); V¹ = V⁰ − (t̃−t); V² = V¹ − 2(ã−a) = t̃;
        // V³ = V² − (t̃−t) = t.
        let r: Vec<usize> = self.filtration.iter().map(lattice_rank).collect();
        let d = (t + a + u) as usize;
        let v0 = 2 * d - (t + 2 * a) as usize;
        let v1 = v0 - (t_tilde - t) as usize;
        let v2 = v1 - 2 * (a_tilde - a) as usize;
        let v3 = t as usize;
        debug_assert_eq!(v2, t_tilde as usize);
        for (i, (&actual, want)) in r.iter().zip([v0, v1, v2, v3]).enumerate() {
            if actual != want {
                return Err(Error::ModelInvariant(format!(
                    "filtration step {i} has rank {actual}, expected {want}"
                )));
            }
        }
        Ok(())
    }

    /// t_l − t, derived from the declared toric multiplicities.
    pub fn toric_rank_drop(&self) -> u64 {
        self.m_t.weighted_rank(self.l)
    }

    /// 2(a_l − a), derived from the declared abelian multiplicities.
    pub fn abelian_rank_drop(&self) -> u64 {
        self.m_a.weighted_rank(self.l)
    }
}

/// Φ and its graded pieces for the model's prime.
pub fn compute_phi(model: &GaloisLatticeModel) -> Result<PhiReport> {
    Ok(compute_phi_detail(model)?.report)
}

/// Quotient of the images of V^i and V^j in Φ, for all the (i, j) pairs the
/// bound checks need.
pub fn compute_phi_detail(model: &GaloisLatticeModel) -> Result<PhiDetail> {
    let quotients = match &model.tau {
        TauMatrix::Exact(tau) => exact_quotients(model, tau)?,
        TauMatrix::Finite(tau) => finite_quotients(model, tau)?,
    };
    // indices: (0,4),(0,1),(1,2),(2,3),(3,4),(0,2),(1,3)
    let [phi, g0, g1, g2, g3, p02, p13] = quotients;
    let report = PhiReport {
        phi,
        graded: [g0, g1, g2, g3],
        corank: 0,
    };
    let total: u64 = report.graded.iter().map(Partition::sum).sum();
    if total != report.phi.sum() {
        return Err(Error::ModelInvariant(format!(
            "graded pieces of total order l^{total} do not fill Φ of order l^{}",
            report.phi.sum()
        )));
    }
    Ok(PhiDetail {
        report,
        phi_over_phi2: p02,
        phi1_over_phi3: p13,
    })
}

const QUOTIENT_PAIRS: [(usize, usize); 7] =
    [(0, 4), (0, 1), (1, 2), (2, 3), (3, 4), (0, 2), (1, 3)];

fn exact_quotients(model: &GaloisLatticeModel, tau: &IntMatrix) -> Result<[Partition; 7]> {
    let n_mat = tau.sub_identity()?;
    let zero = Mat::zero(model.rank, 0);
    let step = |i: usize| -> &IntMatrix {
        if i >= 4 {
            &zero
        } else {
            &model.filtration[i]
        }
    };
    let mut out: Vec<Partition> = Vec::with_capacity(7);
    for (i, j) in QUOTIENT_PAIRS {
        let vi = step(i);
        let meet = lattice_intersection(vi, &n_mat)?;
        let denom = lattice_sum(step(j.min(4)), &meet)?;
        let (part, corank) = quotient_invariants(vi, &denom, model.l)?;
        if corank != 0 {
            return Err(Error::ModelInvariant(format!(
                "V^{i}/(V^{j} + V^{i}∩N) has free corank {corank}; Φ is not finite"
            )));
        }
        out.push(part);
    }
    Ok(out.try_into().expect("seven quotients"))
}

fn finite_quotients(model: &GaloisLatticeModel, tau: &ModMatrix) -> Result<[Partition; 7]> {
    let prec = tau.prec();
    let shifted = tau.sub_identity()?;
    let (exps, p) = mod_diagonalize_with_transform(&shifted);
    let p_int = p.to_int_matrix();
    // A divisor exponent equal to the precision means the direction is free
    // or its torsion is not resolved at l^N. That is only fatal when the
    // filtration actually meets it: V⁰'s image must vanish there mod l^N
    // (and the nested steps then vanish with it). Otherwise the true value
    // cannot be certified and the computation stops rather than guesses.
    let unresolved: Vec<usize> = (0..exps.len()).filter(|&k| exps[k] == prec).collect();
    if !unresolved.is_empty() && model.filtration[0].cols() > 0 {
        let rows = Mat::from_fn(unresolved.len(), model.rank, |i, j| {
            p_int[(unresolved[i], j)].clone()
        });
        let touched = ModMatrix::new(model.l, prec, rows.mul(&model.filtration[0])?)?;
        if !touched.to_int_matrix().is_zero() {
            return Err(Error::PrecisionExhausted(prec));
        }
    }
    // coordinates with resolved nonzero cyclic order, and the projection
    let kept: Vec<usize> = (0..exps.len())
        .filter(|&k| exps[k] > 0 && exps[k] < prec)
        .collect();
    let group_exps: Vec<u32> = kept.iter().map(|&k| exps[k]).collect();
    let proj = Mat::from_fn(kept.len(), model.rank, |i, j| p_int[(kept[i], j)].clone());
    let zero = Mat::zero(model.rank, 0);
    let step = |i: usize| -> &IntMatrix {
        if i >= 4 {
            &zero
        } else {
            &model.filtration[i]
        }
    };
    let image = |i: usize| -> Result<IntMatrix> { proj.mul(step(i)) };
    let mut out: Vec<Partition> = Vec::with_capacity(7);
    for (i, j) in QUOTIENT_PAIRS {
        let (q_exps, q_proj) = quotient_with_map(model.l, &group_exps, &image(j)?);
        let gens = q_proj.mul(&image(i)?)?;
        out.push(subgroup_invariants(model.l, &q_exps, &gens));
    }
    Ok(out.try_into().expect("seven quotients"))
}

/// Block-diagonal direct sum of models over the same prime. Arithmetic
/// modes are unified: if any summand is finite precision, exact summands
/// are reduced to the smallest precision present.
pub fn direct_sum(models: &[GaloisLatticeModel]) -> Result<GaloisLatticeModel> {
    let l = models.first().map_or(2, |m| m.l);
    if models.iter().any(|m| m.l != l) {
        return Err(Error::Malformed("direct_sum: mixed primes".into()));
    }
    let min_prec = models
        .iter()
        .filter_map(GaloisLatticeModel::precision)
        .min();
    let taus_int: Vec<IntMatrix> = models
        .iter()
        .map(|m| match &m.tau {
            TauMatrix::Exact(t) => t.clone(),
            TauMatrix::Finite(t) => t.to_int_matrix(),
        })
        .collect();
    let tau_int = Mat::block_diag(&taus_int.iter().collect::<Vec<_>>());
    let tau = match min_prec {
        None => TauMatrix::Exact(tau_int),
        Some(prec) => TauMatrix::Finite(ModMatrix::new(l, prec, tau_int)?),
    };
    let total_rank: usize = models.iter().map(|m| m.rank).sum();
    let mut filtration: [IntMatrix; 4] = std::array::from_fn(|_| Mat::zero(total_rank, 0));
    for (slot, filt) in filtration.iter_mut().enumerate() {
        let mut cols: Vec<Vec<num_bigint::BigInt>> = Vec::new();
        let mut row_offset = 0usize;
        for m in models {
            let gens = &m.filtration[slot];
            for j in 0..gens.cols() {
                let mut col = vec![num_bigint::BigInt::zero(); total_rank];
                for i in 0..gens.rows() {
                    col[row_offset + i] = gens[(i, j)].clone();
                }
                cols.push(col);
            }
            row_offset += m.rank;
        }
        *filt = Mat::from_fn(total_rank, cols.len(), |i, j| cols[j][i].clone());
    }
    let ranks = models.iter().fold(RankData::default(), |acc, m| RankData {
        t: acc.t + m.ranks.t,
        a: acc.a + m.ranks.a,
        u: acc.u + m.ranks.u,
        t_tilde: acc.t_tilde + m.ranks.t_tilde,
        a_tilde: acc.a_tilde + m.ranks.a_tilde,
    });
    let m_t = models
        .iter()
        .fold(CycloMultiplicities::empty(), |acc, m| acc.add(&m.m_t));
    let m_a = models
        .iter()
        .fold(CycloMultiplicities::empty(), |acc, m| acc.add(&m.m_a));
    GaloisLatticeModel::new(
        l,
        tau,
        filtration,
        ranks,
        m_t,
        m_a,
        models.iter().any(|m| m.nonstandard),
    )
}

/// One inequality line of the bound verdicts: lhs ≤ mid ≤ rhs (mid absent
/// for the generator-count statement).
#[derive(Clone, Debug)]
pub struct BoundLine {
    pub label: &'static str,
    pub lhs: BigUint,
    pub mid: Option<BigUint>,
    pub rhs: BigUint,
    pub ok: bool,
}

impl BoundLine {
    fn chain(label: &'static str, lhs: BigUint, mid: BigUint, rhs: BigUint) -> Self {
        let ok = lhs <= mid && mid <= rhs;
        BoundLine {
            label,
            lhs,
            mid: Some(mid),
            rhs,
            ok,
        }
    }

    fn pair(label: &'static str, lhs: BigUint, rhs: BigUint) -> Self {
        let ok = lhs <= rhs;
        BoundLine {
            label,
            lhs,
            mid: None,
            rhs,
            ok,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BoundVerdict {
    pub lines: Vec<BoundLine>,
}

impl BoundVerdict {
    pub fn all_ok(&self) -> bool {
        self.lines.iter().all(|l| l.ok)
    }
}

impl std::fmt::Display for BoundVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for line in &self.lines {
            match &line.mid {
                Some(mid) => writeln!(
                    f,
                    "{}: {} ≤ {} ≤ {} [{}]",
                    line.label,
                    line.lhs,
                    mid,
                    line.rhs,
                    if line.ok { "ok" } else { "VIOLATED" }
                )?,
                None => writeln!(
                    f,
                    "{}: {} ≤ {} [{}]",
                    line.label,
                    line.lhs,
                    line.rhs,
                    if line.ok { "ok" } else { "VIOLATED" }
                )?,
            }
        }
        Ok(())
    }
}

/// The six per-prime bound inequalities on the filtration quotients of Φ_l.
/// The supplied report must match a recomputation (defends against stale
/// report/model pairs).
pub fn check_thm33(model: &GaloisLatticeModel, report: &PhiReport) -> Result<BoundVerdict> {
    let detail = compute_phi_detail(model)?;
    if &detail.report != report {
        return Err(Error::Malformed(
            "supplied Φ report does not match the model".into(),
        ));
    }
    let l = model.l;
    let p_t = conjugate_counts(&model.m_t);
    let p_a = conjugate_counts(&model.m_a);
    let p_sum = conjugate_counts(&model.m_t.add(&model.m_a));
    let d = |p: &Partition| delta_l_unchecked(l, p);
    let tl = BigUint::from(model.toric_rank_drop());
    let al2 = BigUint::from(model.abelian_rank_drop());
    let lines = vec![
        BoundLine::pair(
            "Φ³ generated by t elements",
            BigUint::from(report.graded[3].len()),
            BigUint::from(model.ranks.t),
        ),
        BoundLine::chain(
            "δ(Φ²/Φ³) ≤ δ(p_t) ≤ t_l−t",
            d(&report.graded[2]),
            d(&p_t),
            tl.clone(),
        ),
        BoundLine::chain(
            "δ(Φ¹/Φ²) ≤ δ(p_a) ≤ 2(a_l−a)",
            d(&report.graded[1]),
            d(&p_a),
            al2.clone(),
        ),
        BoundLine::chain(
            "δ(Φ/Φ¹) ≤ δ(p_t) ≤ t_l−t",
            d(&report.graded[0]),
            d(&p_t),
            tl.clone(),
        ),
        BoundLine::chain(
            "δ(Φ/Φ²) ≤ δ(p) ≤ (t_l−t)+2(a_l−a)",
            d(&detail.phi_over_phi2),
            d(&p_sum),
            &tl + &al2,
        ),
        BoundLine::chain(
            "δ(Φ¹/Φ³) ≤ δ(p) ≤ (t_l−t)+2(a_l−a)",
            d(&detail.phi1_over_phi3),
            d(&p_sum),
            &tl + &al2,
        ),
    ];
    Ok(BoundVerdict { lines })
}

/// The aggregated (all primes at once) bound inequalities for a product of
/// per-prime models: δ sums over the entries, the rank drops add, and the
/// generator count for Φ³ is the maximum over primes of the merged lengths.
pub fn check_cor34(entries: &[(&GaloisLatticeModel, &PhiReport)]) -> Result<BoundVerdict> {
    let mut phi3_len_per_prime: std::collections::BTreeMap<u64, u64> = Default::default();
    let mut t_total = 0u64;
    let mut tl = BigUint::zero();
    let mut al2 = BigUint::zero();
    let mut lhs = vec![BigUint::zero(); 5]; // parts 2..6
    for (model, report) in entries {
        let detail = compute_phi_detail(model)?;
        if &&detail.report != report {
            return Err(Error::Malformed(
                "supplied Φ report does not match its model".into(),
            ));
        }
        let l = model.l;
        *phi3_len_per_prime.entry(l).or_default() += report.graded[3].len() as u64;
        t_total += model.ranks.t as u64;
        tl += BigUint::from(model.toric_rank_drop());
        al2 += BigUint::from(model.abelian_rank_drop());
        lhs[0] += delta_l_unchecked(l, &report.graded[2]);
        lhs[1] += delta_l_unchecked(l, &report.graded[1]);
        lhs[2] += delta_l_unchecked(l, &report.graded[0]);
        lhs[3] += delta_l_unchecked(l, &detail.phi_over_phi2);
        lhs[4] += delta_l_unchecked(l, &detail.phi1_over_phi3);
    }
    let gens_needed = phi3_len_per_prime.values().copied().max().unwrap_or(0);
    let lines = vec![
        BoundLine::pair(
            "Φ³ generated by t elements",
            BigUint::from(gens_needed),
            BigUint::from(t_total),
        ),
        BoundLine::pair("δ(Φ²/Φ³) ≤ t_t−t", lhs[0].clone(), tl.clone()),
        BoundLine::pair("δ(Φ¹/Φ²) ≤ 2(a_t−a)", lhs[1].clone(), al2.clone()),
        BoundLine::pair("δ(Φ/Φ¹) ≤ t_t−t", lhs[2].clone(), tl.clone()),
        BoundLine::pair("δ(Φ/Φ²) ≤ (t_t−t)+2(a_t−a)", lhs[3].clone(), &tl + &al2),
        BoundLine::pair("δ(Φ¹/Φ³) ≤ (t_t−t)+2(a_t−a)", lhs[4].clone(), &tl + &al2),
    ];
    Ok(BoundVerdict { lines })
}
