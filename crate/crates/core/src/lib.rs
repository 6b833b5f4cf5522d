//! Exact computational algebra over prime fields for finite group schemes,
//! elliptic-curve cohomology, and torsor descent.
//!
//! The crate is organized bottom-up:
//!
//! - [`field`]: arithmetic in the prime fields `F_p`, `2 <= p <= 97`
//! - [`poly`]: multivariate polynomials with exact coefficients
//! - [`algebra`]: finite-dimensional commutative algebras by structure
//!   constants, algebra maps, tensor products, and monomial quotients
//! - [`hopf`]: finite group schemes (`alpha_p`, `mu_n`, constant groups) as
//!   Hopf algebras, coactions, and invariant subalgebras
//! - [`curve`]: Weierstrass curves, the Frobenius action on `H^1(E, O)`, and
//!   flat cohomology of `alpha_p`
//! - [`cech`]: an independent Cech-style computation of the Frobenius matrix
//!   on `H^1(E, O)`, used to cross-check the closed-form Hasse invariant
//! - [`torsor`]: `alpha_p`-torsors on a curve and on `A^1 x curve`, descent
//!   data, and symbolic cocycle / torsor-axiom verification
//! - [`criteria`]: base-change, Kunneth, maximal-trivial-subbundle,
//!   F-triviality, and Artin-Schreier saturation checkers
//!
//! All values are immutable after construction and all operations are pure,
//! so everything is safe to share between threads.

pub mod algebra;
pub mod cech;
pub mod criteria;
pub mod curve;
pub mod field;
pub mod hopf;
pub mod poly;
pub mod torsor;

pub use algebra::{
    algebra_tensor, check_algebra_map, quotient_algebra, AlgebraError, AlgebraMap, FiniteAlgebra,
    MapVerdict, MonomialQuotient,
};
pub use criteria::{
    base_change_check, f_triviality, kunneth_check, maximal_trivial_subbundle, saturation_check,
    BaseChangeReport, CriteriaError, EtaleCoverSpec, FTrivialityReport, KunnethVerdict,
    SaturationVerdict, TrivialSubbundle,
};
pub use curve::{
    h0_extension, h0_line_bundle, h1_fl_alpha_p, hasse_invariant, hasse_invariant_with,
    validate_curve, CohomologyClass, CurveError, FlatH1, FrobeniusAction, HasseFormula,
    StructureSheafH1, WeierstrassCurve,
};
pub use field::{Fp, FieldError};
pub use hopf::{
    check_coaction, constant_dual_table, hopf_of, invariants_subalgebra, Coaction, CoactionReport,
    GroupSchemeKind, GroupTable, HopfAlgebra, HopfAxiomReport, HopfError,
};
pub use poly::{Polynomial, PolynomialError};
pub use torsor::{
    build_family_torsor, check_cocycle, check_torsor_axiom, check_torsor_axiom_with,
    frobenius_torsor, pushforward_fiber_h0, restrict_fiber, AlphaTorsor, CocycleReport,
    DescentDatum, FamilyTorsor, TorsorError, TwistMap,
};
