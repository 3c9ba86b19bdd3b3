//! Exact linear algebra over integer scalars and over the chain rings Z/l^N.
//!
//! The kernels (Smith and Hermite forms, kernels, determinants,
//! characteristic polynomials) are generic over any [`Scalar`]; production
//! code instantiates them at `BigInt` while the small-group oracles use
//! `i128` for speed.

pub mod cyclo;
pub mod finite;
pub mod lattice;
pub mod mat;
pub mod modular;
pub mod poly;
pub mod smith;

pub use cyclo::{
    check_coinvariant_bound, companion, conjugate_counts, cyclotomic_multiplicities,
    cyclotomic_poly, lambda_mult_matrix, random_unimodular, CoinvariantReport, CycloMultiplicities,
    LatticeAuto,
};
pub use lattice::{lattice_intersection, lattice_sum, quotient_invariants};
pub use mat::{Mat, Scalar};
pub use modular::{mod_diagonalize, mod_invert, ModMatrix, ModPoly, ModPolyRing};
pub use smith::{charpoly, cokernel_l_part, det, kernel_basis, smith_form};
