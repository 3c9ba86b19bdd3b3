//! Cross-validation between independent computation routes: the exact
//! integer-lattice pipeline against the finite-precision chain-ring
//! pipeline on the same models, and the aggregated multi-prime bounds.

use neron::linalg::cyclo::CycloMultiplicities;
use neron::linalg::modular::ModMatrix;
use neron::model::{
    check_cor34, check_thm33, compute_phi, direct_sum, model_example51, model_example52,
    model_example53, model_unipotent_elliptic, GaloisLatticeModel, TauMatrix,
    UnipotentEllipticKind,
};

/// Rebuild an exact model as a finite-precision one at precision N.
fn reduce_model(model: &GaloisLatticeModel, prec: u32) -> GaloisLatticeModel {
    let TauMatrix::Exact(tau) = &model.tau else {
        panic!("expected exact model");
    };
    GaloisLatticeModel::new(
        model.l,
        TauMatrix::Finite(ModMatrix::from_int_matrix(model.l, prec, tau).unwrap()),
        model.filtration.clone(),
        model.ranks,
        CycloMultiplicities::new(model.m_t.as_slice().to_vec()),
        CycloMultiplicities::new(model.m_a.as_slice().to_vec()),
        model.nonstandard,
    )
    .unwrap()
}

#[test]
fn exact_and_finite_routes_agree() {
    let models = vec![
        model_example51(&[2, 4, 6], 2).unwrap(),
        model_example51(&[2, 4, 6], 3).unwrap(),
        model_example52(2, 2).unwrap(),
        model_example52(3, 1).unwrap(),
        model_example53(3, 2).unwrap(),
        model_unipotent_elliptic(UnipotentEllipticKind::Klein, 2).unwrap(),
        model_unipotent_elliptic(UnipotentEllipticKind::Cyclic2, 2).unwrap(),
        direct_sum(&[
            model_example51(&[8], 2).unwrap(),
            model_example52(2, 1).unwrap(),
        ])
        .unwrap(),
    ];
    for model in &models {
        let exact = compute_phi(model).unwrap();
        let finite = compute_phi(&reduce_model(model, 10)).unwrap();
        assert_eq!(exact, finite, "routes disagree at l = {}", model.l);
    }
}

#[test]
fn aggregated_bounds_over_primes() {
    // a product with a 2-adic toric twist and a 3-adic abelian twist
    let m2 = model_example52(2, 1).unwrap();
    let m3 = model_example53(3, 1).unwrap();
    let r2 = compute_phi(&m2).unwrap();
    let r3 = compute_phi(&m3).unwrap();
    let verdict = check_cor34(&[(&m2, &r2), (&m3, &r3)]).unwrap();
    assert!(verdict.all_ok(), "{verdict}");

    // a single entry reduces to the per-prime bound check
    let single = check_cor34(&[(&m2, &r2)]).unwrap();
    let per_prime = check_thm33(&m2, &r2).unwrap();
    assert!(single.all_ok() && per_prime.all_ok());

    // empty aggregation: all inequalities are 0 ≤ 0
    let empty = check_cor34(&[]).unwrap();
    assert!(empty.all_ok());

    // a multi-prime Tate product contributes its graded pieces at each prime
    let tate2 = model_example51(&[12, 2], 2).unwrap();
    let tate3 = model_example51(&[12, 2], 3).unwrap();
    let rep2 = compute_phi(&tate2).unwrap();
    let rep3 = compute_phi(&tate3).unwrap();
    assert_eq!(rep2.phi.parts(), &[2, 1]);
    assert_eq!(rep3.phi.parts(), &[1]);
    let verdict = check_cor34(&[(&tate2, &rep2), (&tate3, &rep3)]).unwrap();
    assert!(verdict.all_ok(), "{verdict}");
}

// Full grid for the toric-twist shape: the outer graded pieces are both
// cyclic of order l^i even when the middle extension is non-split (l = 2).
#[test]
fn toric_twist_graded_pieces_full_grid() {
    use neron::partition::Partition;
    for l in [2u64, 3, 5] {
        for i in 1..=3u32 {
            let rep = compute_phi(&model_example52(l, i).unwrap()).unwrap();
            let cyc = Partition::from_unsorted([i]);
            assert_eq!(rep.graded[0], cyc, "Φ/Φ¹ at l={l} i={i}");
            assert_eq!(rep.graded[2], cyc, "Φ²/Φ³ at l={l} i={i}");
            assert!(rep.graded[1].is_empty() && rep.graded[3].is_empty());
            let total = if l == 2 {
                Partition::from_unsorted([i + 1, i - 1])
            } else {
                Partition::from_unsorted([i, i])
            };
            assert_eq!(rep.phi, total, "Φ at l={l} i={i}");
        }
    }
}

#[test]
fn stale_reports_are_rejected() {
    let m = model_example52(3, 1).unwrap();
    let other = compute_phi(&model_example53(3, 1).unwrap()).unwrap();
    assert!(check_thm33(&m, &other).is_err());
}
