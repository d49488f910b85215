//! Exact lattice-point counting and Ehrhart root analysis for the dual root
//! polytopes `A*_d` and `C*_d`.
//!
//! * [`polytope`]: H-representations and membership in `kP`.
//! * [`enumerate`]: brute-force counting of `kP` and `k∂P`.
//! * [`ehrhart`]: closed forms, interpolation, reflexivity and symmetry.
//! * [`bijection`]: the map between `k∂C*_d` and
//!   `k∂A*_{d-1} ⊔ (k-1)A*_{d-1} ⊔ (k-1)A*_{d-1}`.
//! * [`spectra`]: closed-form and numeric roots, canonical-line and
//!   interlacing checks.
//! * [`report`]: report rows and the cross-check sweep.

pub mod bijection;
pub mod ehrhart;
pub mod enumerate;
pub mod error;
pub mod poly;
pub mod polytope;
pub mod report;
pub mod spectra;

pub use bijection::{
    lift_g, project_f, verify_bijection, BijectionReport, CaseId, CopyTag, ReconstructionWitness,
    TaggedBoundaryElement,
};
pub use ehrhart::{EhrhartPolynomial, Family};
pub use enumerate::{count, count_boundary, count_points, CountResult, DEFAULT_BUDGET};
pub use error::{Error, Result};
pub use poly::Polynomial;
pub use polytope::{interval_sum, HPolytope, Inequality, LatticePoint, PolytopeLabel};
pub use spectra::{CanonicalRoot, ClVerdict, InterlacingReport};

pub use num_bigint::BigInt;
pub use num_complex::Complex64;
pub use num_rational::BigRational;
