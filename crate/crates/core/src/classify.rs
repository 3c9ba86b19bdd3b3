//! Realizability of a finite abelian group as the prime-to-p component
//! group with prescribed toric/abelian/unipotent ranks (t, a, u):
//! the exact-rational inequality
//!
//!   u ≥ Σ_{l≠p} Σ_{i>t} ((l^{⌊m_{l,i}/2⌋} + l^{⌈m_{l,i}/2⌉})/2 − 1)
//!
//! together with an explicit construction plan of building blocks whose
//! component groups, dimensions and ranks add up to the query, and an
//! end-to-end check that rebuilds each block as a lattice model and
//! recomputes its component group.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::abgroup::AbGroup;
use crate::arith::{is_prime, pow_u64};
use crate::error::{Error, Result};
use crate::model::{
    abelian_pad_model, compute_phi, model_example51, model_example52, model_example53,
    model_example54, model_example55, model_unipotent_elliptic, unipotent_pad_model,
    UnipotentEllipticKind,
};
use crate::partition::{f_l_unchecked, Partition};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizabilityQuery {
    pub group: AbGroup,
    /// Residue characteristic: 0 or a prime not dividing the group order.
    pub p: u64,
    pub d: u32,
    pub t: u32,
    pub a: u32,
    pub u: u32,
}

impl RealizabilityQuery {
    pub fn new(group: AbGroup, p: u64, t: u32, a: u32, u: u32) -> Result<Self> {
        Self::with_dim(group, p, t + a + u, t, a, u)
    }

    pub fn with_dim(group: AbGroup, p: u64, d: u32, t: u32, a: u32, u: u32) -> Result<Self> {
        if d != t + a + u {
            return Err(Error::Malformed(format!(
                "d = {d} but t + a + u = {}",
                t + a + u
            )));
        }
        if p != 0 {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if !group.l_part(p).is_empty() {
                return Err(Error::Malformed(format!(
                    "group order is divisible by the residue characteristic {p}"
                )));
            }
        }
        Ok(RealizabilityQuery {
            group,
            p,
            d,
            t,
            a,
            u,
        })
    }
}

/// Σ_{l≠p} f_l(d^t(m_l)) as an exact rational (half-integral only when the
/// 2-part contributes an odd number of odd parts beyond index t).
pub fn rhs_bound(group: &AbGroup, t: u32, p: u64) -> Result<Rational> {
    if p != 0 && !group.l_part(p).is_empty() {
        return Err(Error::Malformed(format!(
            "group order is divisible by the residue characteristic {p}"
        )));
    }
    let mut acc = Rational::zero();
    for (l, m_l) in group.iter() {
        acc += f_l_unchecked(l, &m_l.shift_d(t as usize));
    }
    Ok(acc)
}

/// The classification predicate: u ≥ rhs_bound, compared exactly.
pub fn is_realizable(q: &RealizabilityQuery) -> bool {
    let rhs = rhs_bound(&q.group, q.t, q.p).expect("query invariants were validated");
    Rational::from(num_bigint::BigInt::from(q.u)) >= rhs
}

/// Building-block species; parameters are everything needed to reconstruct
/// the block's model.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BlockKind {
    /// Product of Tate curves: toric, Φ = ⊕ Z/n_i.
    TateProduct { ns: Vec<u64> },
    /// Toric twist: Φ = (Z/l^i)² for l > 2, Z/2^{i+1} ⊕ Z/2^{i−1} for l = 2.
    Ex52 { l: u64, i: u32 },
    /// Abelian twist (l > 2): Φ = Z/l^i, dimension (l^i − 1)/2.
    Ex53 { l: u64, i: u32 },
    /// Mixed twist: Φ = Z/l^{2r+s}, dimension (l^r + l^{r+s})/2 − 1.
    Ex54 { l: u64, r: u32, s: u32 },
    /// Toric-only twist: Φ = Z/l^{2r}, dimension l^r − 1.
    Ex55 { l: u64, r: u32 },
    /// One elliptic curve with unipotent reduction and Φ = Z/2 × Z/2.
    KleinPair,
    /// One elliptic curve with unipotent reduction and Φ = Z/2.
    Cyclic2Single,
    /// Abelian variety with good reduction, trivial Φ.
    AbelianPad {
        #[serde(rename = "pad")]
        dim: u32,
    },
    /// Unipotent reduction with trivial Φ.
    UnipotentPad {
        #[serde(rename = "pad")]
        dim: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSpec {
    #[serde(flatten)]
    pub kind: BlockKind,
    pub dim: u32,
    pub t: u32,
    pub a: u32,
    pub u: u32,
    pub predicted_phi: AbGroup,
}

impl BlockKind {
    /// Derives the block's dimension, ranks and predicted component group
    /// from its parameters.
    pub fn derive(self) -> Result<BlockSpec> {
        let (dim, t, a, u, predicted) = match &self {
            BlockKind::TateProduct { ns } => {
                let dim = ns.len() as u32;
                (dim, dim, 0, 0, AbGroup::from_invariant_factors(ns)?)
            }
            BlockKind::Ex52 { l, i } => {
                let dim = u32::try_from(pow_u64(*l, *i) - 1)
                    .map_err(|_| Error::BudgetExceeded("block dimension".into()))?;
                let phi = if *l == 2 {
                    Partition::from_unsorted([i + 1, i - 1])
                } else {
                    Partition::from_unsorted([*i, *i])
                };
                (dim, 0, 0, dim, AbGroup::single(*l, phi)?)
            }
            BlockKind::Ex53 { l, i } => {
                if *l == 2 {
                    return Err(Error::Malformed(
                        "the abelian twist block needs an odd prime".into(),
                    ));
                }
                let dim = u32::try_from((pow_u64(*l, *i) - 1) / 2)
                    .map_err(|_| Error::BudgetExceeded("block dimension".into()))?;
                (
                    dim,
                    0,
                    0,
                    dim,
                    AbGroup::single(*l, Partition::from_unsorted([*i]))?,
                )
            }
            BlockKind::Ex54 { l, r, s } => {
                if *r == 0 || *s == 0 {
                    return Err(Error::Malformed("mixed twist needs r ≥ 1 and s ≥ 1".into()));
                }
                let dim = u32::try_from((pow_u64(*l, *r) + pow_u64(*l, r + s)) / 2 - 1)
                    .map_err(|_| Error::BudgetExceeded("block dimension".into()))?;
                (
                    dim,
                    0,
                    0,
                    dim,
                    AbGroup::single(*l, Partition::from_unsorted([2 * r + s]))?,
                )
            }
            BlockKind::Ex55 { l, r } => {
                if *r == 0 {
                    return Err(Error::Malformed("toric-only twist needs r ≥ 1".into()));
                }
                let dim = u32::try_from(pow_u64(*l, *r) - 1)
                    .map_err(|_| Error::BudgetExceeded("block dimension".into()))?;
                (
                    dim,
                    0,
                    0,
                    dim,
                    AbGroup::single(*l, Partition::from_unsorted([2 * r]))?,
                )
            }
            BlockKind::KleinPair => (
                1,
                0,
                0,
                1,
                AbGroup::single(2, Partition::from_unsorted([1, 1]))?,
            ),
            BlockKind::Cyclic2Single => (
                1,
                0,
                0,
                1,
                AbGroup::single(2, Partition::from_unsorted([1]))?,
            ),
            BlockKind::AbelianPad { dim } => (*dim, 0, *dim, 0, AbGroup::trivial()),
            BlockKind::UnipotentPad { dim } => (*dim, 0, 0, *dim, AbGroup::trivial()),
        };
        Ok(BlockSpec {
            kind: self,
            dim,
            t,
            a,
            u,
            predicted_phi: predicted,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionPlan {
    pub blocks: Vec<BlockSpec>,
}

/// Emits the witness construction for a realizable query: a toric block
/// over the t largest invariant factors, one twist block per remaining
/// partition entry (the l = 2 singleton entries pooled into Klein pairs,
/// with one cyclic block when their number is odd), an abelian pad and a
/// unipotent pad absorbing the slack below u.
pub fn plan(q: &RealizabilityQuery) -> Result<ConstructionPlan> {
    if !is_realizable(q) {
        return Err(Error::NotRealizable);
    }
    let mut blocks: Vec<BlockSpec> = Vec::new();
    if q.t > 0 {
        let mut ns = q.group.to_invariant_factors();
        ns.truncate(q.t as usize);
        ns.resize(q.t as usize, 1);
        blocks.push(BlockKind::TateProduct { ns }.derive()?);
    }
    let mut odd_two_singles = 0u32;
    for (l, m_l) in q.group.iter() {
        for idx in (q.t as usize)..m_l.len() {
            let m = m_l.part(idx);
            let kind = if m % 2 == 0 {
                BlockKind::Ex55 { l, r: m / 2 }
            } else if m == 1 {
                if l == 2 {
                    odd_two_singles += 1;
                    continue;
                }
                BlockKind::Ex53 { l, i: 1 }
            } else {
                BlockKind::Ex54 {
                    l,
                    r: (m - 1) / 2,
                    s: 1,
                }
            };
            blocks.push(kind.derive()?);
        }
    }
    for _ in 0..odd_two_singles / 2 {
        blocks.push(BlockKind::KleinPair.derive()?);
    }
    if odd_two_singles % 2 == 1 {
        blocks.push(BlockKind::Cyclic2Single.derive()?);
    }
    if q.a > 0 {
        blocks.push(BlockKind::AbelianPad { dim: q.a }.derive()?);
    }
    let used_u: u32 = blocks.iter().map(|b| b.u).sum();
    if used_u > q.u {
        return Err(Error::Malformed(format!(
            "internal inconsistency: blocks need unipotent rank {used_u} > u = {}",
            q.u
        )));
    }
    if q.u > used_u {
        blocks.push(BlockKind::UnipotentPad { dim: q.u - used_u }.derive()?);
    }
    let plan = ConstructionPlan { blocks };
    let check = verify_plan(&plan, q);
    if !check.ok {
        return Err(Error::Malformed(format!(
            "internal inconsistency: emitted plan fails verification: {}",
            check.diagnostic.unwrap_or_default()
        )));
    }
    Ok(plan)
}

#[derive(Clone, Debug)]
pub struct PlanCheck {
    pub ok: bool,
    pub diagnostic: Option<String>,
}

impl PlanCheck {
    fn fail(msg: String) -> Self {
        PlanCheck {
            ok: false,
            diagnostic: Some(msg),
        }
    }

    fn pass() -> Self {
        PlanCheck {
            ok: true,
            diagnostic: None,
        }
    }
}

/// Checks the plan's bookkeeping against the query: per-block derived data,
/// dimension and rank sums, and the merged predicted component group.
pub fn verify_plan(plan: &ConstructionPlan, q: &RealizabilityQuery) -> PlanCheck {
    for (idx, block) in plan.blocks.iter().enumerate() {
        match block.kind.clone().derive() {
            Ok(derived) => {
                if &derived != block {
                    return PlanCheck::fail(format!(
                        "block {idx}: stored data does not match its parameters"
                    ));
                }
            }
            Err(e) => return PlanCheck::fail(format!("block {idx}: {e}")),
        }
        if block.dim != block.t + block.a + block.u {
            return PlanCheck::fail(format!("block {idx}: dim ≠ t + a + u"));
        }
    }
    let dim: u32 = plan.blocks.iter().map(|b| b.dim).sum();
    if dim != q.d {
        return PlanCheck::fail(format!("total dimension {dim} ≠ d = {}", q.d));
    }
    let (t, a, u) = plan
        .blocks
        .iter()
        .fold((0, 0, 0), |(t, a, u), b| (t + b.t, a + b.a, u + b.u));
    if (t, a, u) != (q.t, q.a, q.u) {
        return PlanCheck::fail(format!(
            "rank sums ({t},{a},{u}) ≠ query ({},{},{})",
            q.t, q.a, q.u
        ));
    }
    let merged = plan
        .blocks
        .iter()
        .fold(AbGroup::trivial(), |acc, b| acc.merge(&b.predicted_phi));
    if merged != q.group {
        return PlanCheck::fail(format!("merged component group {merged} ≠ {}", q.group));
    }
    PlanCheck::pass()
}

/// Rebuilds every block as a lattice model and compares the computed
/// component group with the prediction, at every prime dividing the
/// predicted order. Precision errors from the twisted blocks propagate.
pub fn end_to_end_check(plan: &ConstructionPlan) -> Result<bool> {
    for block in &plan.blocks {
        if !end_to_end_check_block(block)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// End-to-end verification of a single block (exposed so sweeps can cache
/// per distinct block).
pub fn end_to_end_check_block(block: &BlockSpec) -> Result<bool> {
    let primes: Vec<u64> = block.predicted_phi.primes().collect();
    match &block.kind {
        BlockKind::TateProduct { ns } => {
            for &q in &primes {
                let model = model_example51(ns, q)?;
                if compute_phi(&model)?.phi != block.predicted_phi.l_part(q) {
                    return Ok(false);
                }
            }
        }
        BlockKind::Ex52 { l, i } => {
            let model = model_example52(*l, *i)?;
            if compute_phi(&model)?.phi != block.predicted_phi.l_part(*l) {
                return Ok(false);
            }
        }
        BlockKind::Ex53 { l, i } => {
            let model = model_example53(*l, *i)?;
            if compute_phi(&model)?.phi != block.predicted_phi.l_part(*l) {
                return Ok(false);
            }
        }
        BlockKind::Ex54 { l, r, s } => {
            let model = model_example54(*l, *r, *s, 2 * r + s + 2)?;
            if compute_phi(&model)?.phi != block.predicted_phi.l_part(*l) {
                return Ok(false);
            }
        }
        BlockKind::Ex55 { l, r } => {
            let model = model_example55(*l, *r, 2 * r + 2)?;
            if compute_phi(&model)?.phi != block.predicted_phi.l_part(*l) {
                return Ok(false);
            }
        }
        BlockKind::KleinPair => {
            let model = model_unipotent_elliptic(UnipotentEllipticKind::Klein, 2)?;
            if compute_phi(&model)?.phi != block.predicted_phi.l_part(2) {
                return Ok(false);
            }
        }
        BlockKind::Cyclic2Single => {
            let model = model_unipotent_elliptic(UnipotentEllipticKind::Cyclic2, 2)?;
            if compute_phi(&model)?.phi != block.predicted_phi.l_part(2) {
                return Ok(false);
            }
        }
        BlockKind::AbelianPad { dim } => {
            let model = abelian_pad_model(2, *dim)?;
            if !compute_phi(&model)?.phi.is_empty() {
                return Ok(false);
            }
        }
        BlockKind::UnipotentPad { dim } => {
            let model = unipotent_pad_model(2, *dim)?;
            if !compute_phi(&model)?.phi.is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn grp(json: &str) -> AbGroup {
        serde_json::from_str(json).unwrap()
    }

    #[test]
    fn rhs_bound_examples() {
        assert_eq!(
            rhs_bound(&grp(r#"{"3":[2]}"#), 0, 0).unwrap(),
            Rational::from(BigInt::from(2))
        );
        assert_eq!(
            rhs_bound(&grp(r#"{"2":[1,1]}"#), 0, 0).unwrap(),
            Rational::from(BigInt::from(1))
        );
        assert_eq!(
            rhs_bound(&grp(r#"{"2":[2,1],"3":[1]}"#), 5, 0).unwrap(),
            Rational::zero()
        );
        assert!(rhs_bound(&grp(r#"{"5":[1]}"#), 0, 5).is_err());
    }

    #[test]
    fn realizability_spot_values() {
        // Z/4 with one unipotent dimension: yes
        let q = RealizabilityQuery::new(grp(r#"{"2":[2]}"#), 0, 0, 0, 1).unwrap();
        assert!(is_realizable(&q));
        // Z/9 needs two unipotent dimensions
        let q = RealizabilityQuery::new(grp(r#"{"3":[2]}"#), 0, 0, 0, 1).unwrap();
        assert!(!is_realizable(&q));
        let q = RealizabilityQuery::new(grp(r#"{"3":[2]}"#), 0, 0, 0, 2).unwrap();
        assert!(is_realizable(&q));
        // Z/2 as a Tate curve: toric rank pays for everything
        let q = RealizabilityQuery::new(grp(r#"{"2":[1]}"#), 0, 1, 0, 0).unwrap();
        assert!(is_realizable(&q));
    }

    #[test]
    fn plan_example_mixed() {
        // Z/12 ⊕ Z/2 with t=1, a=0, u=2
        let q = RealizabilityQuery::new(grp(r#"{"2":[2,1],"3":[1]}"#), 0, 1, 0, 2).unwrap();
        let the_plan = plan(&q).unwrap();
        let kinds: Vec<&BlockKind> = the_plan.blocks.iter().map(|b| &b.kind).collect();
        assert_eq!(
            kinds,
            vec![
                &BlockKind::TateProduct { ns: vec![12] },
                &BlockKind::Cyclic2Single,
                &BlockKind::UnipotentPad { dim: 1 },
            ]
        );
        assert!(verify_plan(&the_plan, &q).ok);
        assert!(end_to_end_check(&the_plan).unwrap());
    }

    #[test]
    fn plan_example_even_part() {
        let q = RealizabilityQuery::new(grp(r#"{"3":[2]}"#), 0, 0, 0, 2).unwrap();
        let the_plan = plan(&q).unwrap();
        assert_eq!(the_plan.blocks.len(), 1);
        assert_eq!(the_plan.blocks[0].kind, BlockKind::Ex55 { l: 3, r: 1 });
        assert_eq!(the_plan.blocks[0].dim, 2);
        assert!(end_to_end_check(&the_plan).unwrap());
    }

    #[test]
    fn plan_example_trivial_group() {
        let q = RealizabilityQuery::new(AbGroup::trivial(), 0, 0, 1, 1).unwrap();
        let the_plan = plan(&q).unwrap();
        let kinds: Vec<&BlockKind> = the_plan.blocks.iter().map(|b| &b.kind).collect();
        assert_eq!(
            kinds,
            vec![
                &BlockKind::AbelianPad { dim: 1 },
                &BlockKind::UnipotentPad { dim: 1 },
            ]
        );
    }

    #[test]
    fn tampered_plans_fail_verification() {
        let q = RealizabilityQuery::new(grp(r#"{"2":[2,1],"3":[1]}"#), 0, 1, 0, 2).unwrap();
        let good = plan(&q).unwrap();
        // delete a block: Φ mismatch
        let mut bad = good.clone();
        bad.blocks.remove(1);
        assert!(!verify_plan(&bad, &q).ok);
        // inflate the pad: dimension mismatch
        let mut bad = good.clone();
        if let BlockKind::UnipotentPad { dim } = &mut bad.blocks.last_mut().unwrap().kind {
            *dim += 1;
        }
        bad.blocks.last_mut().unwrap().dim += 1;
        bad.blocks.last_mut().unwrap().u += 1;
        assert!(!verify_plan(&bad, &q).ok);
    }

    #[test]
    fn odd_part_uses_mixed_twist() {
        // Z/8 = 2-part (3): odd exponent 3 → Ex54 with r=1, s=1 at l=2
        let q = RealizabilityQuery::new(grp(r#"{"2":[3]}"#), 0, 0, 0, 2).unwrap();
        let the_plan = plan(&q).unwrap();
        assert_eq!(
            the_plan.blocks[0].kind,
            BlockKind::Ex54 { l: 2, r: 1, s: 1 }
        );
        assert_eq!(the_plan.blocks[0].dim, 2);
        assert!(end_to_end_check(&the_plan).unwrap());
    }

    #[test]
    fn klein_pooling() {
        // (Z/2)^4 beyond t = 0: four singleton entries → two Klein pairs
        let q = RealizabilityQuery::new(grp(r#"{"2":[1,1,1,1]}"#), 0, 0, 0, 2).unwrap();
        let the_plan = plan(&q).unwrap();
        let kinds: Vec<&BlockKind> = the_plan.blocks.iter().map(|b| &b.kind).collect();
        assert_eq!(kinds, vec![&BlockKind::KleinPair, &BlockKind::KleinPair]);
        assert!(end_to_end_check(&the_plan).unwrap());
        // three entries → one pair + one cyclic single
        let q = RealizabilityQuery::new(grp(r#"{"2":[1,1,1]}"#), 0, 0, 0, 2).unwrap();
        let the_plan = plan(&q).unwrap();
        let kinds: Vec<&BlockKind> = the_plan.blocks.iter().map(|b| &b.kind).collect();
        assert_eq!(
            kinds,
            vec![&BlockKind::KleinPair, &BlockKind::Cyclic2Single]
        );
    }

    #[test]
    fn plan_refuses_unrealizable() {
        let q = RealizabilityQuery::new(grp(r#"{"3":[2]}"#), 0, 0, 0, 1).unwrap();
        assert_eq!(plan(&q).err(), Some(Error::NotRealizable));
    }

    #[test]
    fn json_round_trip() {
        let q = RealizabilityQuery::new(grp(r#"{"2":[3]}"#), 0, 0, 0, 2).unwrap();
        let the_plan = plan(&q).unwrap();
        let text = serde_json::to_string(&the_plan).unwrap();
        let back: ConstructionPlan = serde_json::from_str(&text).unwrap();
        assert_eq!(back, the_plan);
    }
}
