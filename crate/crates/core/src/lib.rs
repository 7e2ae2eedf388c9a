//! Exact symbolic toolkit for symplectic dynamics on R^2n.
//!
//! Everything is computed over exact rational arithmetic: multivariate
//! polynomials in the 2n global phase-space coordinates, differential forms
//! and vector fields with the full Cartan calculus, the twisted operators
//! d_Gamma and del_Gamma of a dynamical system, classification of vector
//! fields and polynomial maps (Hamiltonian status, canonical valence,
//! canonoid verdicts, master-symmetry degrees), and polynomial gauge fixing
//! by exact linear elimination.
//!
//! Conventions are fixed once and printed in every report:
//! `omega = sum dq_i^dp_i`, `i(X_f)omega = df`, `{q,p} = +1`.

pub mod classify;
pub mod error;
pub mod exterior;
pub mod gauge;
pub mod gen;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod space;
pub mod suite;
pub mod symplectic;
pub mod twisted;

pub use classify::{
    bracket_hamiltonian, canonoid_finite, canonoid_infinitesimal, classify_field, com_degree,
    conserved_observable, decompose_symmetry, master_degree, CanonoidVerdict, Decomposition,
    DecompositionChecks, FieldClassification, MasterVerdict,
};
pub use error::{CoreError, Result};
pub use exterior::{constant_ratio, DiffForm, PolyMap, VectorField};
pub use gauge::{gauge_fix_strong, gauge_fix_weak, GaugeCondition, GaugeResult, GaugeStatus, LinearSystem};
pub use poly::{rat, rat_int, Monomial, Rational, ScalarPoly};
pub use space::PhaseSpace;
pub use suite::{run_identity_suite, IdentityReport, SuiteReport};
pub use symplectic::{
    homotopy_potential, liouville_field, validate_symplectic, Homotopy, Nondegeneracy, Point,
    SymplecticForm, Validity, CONVENTION, DOMAIN_NOTE,
};
pub use twisted::{LieTarget, TwistedContext, DEFAULT_ITERATION_BUDGET};
