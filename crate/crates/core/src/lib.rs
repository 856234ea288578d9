//! Exact verification that the normalized units of the integral group ring
//! of PSL(2, p^3) contain no Heisenberg subgroup of order p^3, for concrete
//! odd primes p.
//!
//! The crate is organized along the proof:
//!
//! * [`exactnum`] — exact arithmetic in the cyclotomic field Q(zeta_p),
//!   prime conductor only, over arbitrary-precision rationals.
//! * [`residue_f2`] — quadratic residues, Legendre symbols, Gaussian sums,
//!   and dense linear algebra over F_2.
//! * [`group_models`] — the Heisenberg group of order p^3 and exponent p,
//!   its full character table, the relevant character fragment of
//!   PSL(2, p^3), and Sylow-shape dispatch for other primes.
//! * [`help_engine`] — eigenvalue multiplicities forced on torsion units
//!   by the two exceptional characters, and the restriction constraints.
//! * [`theorem_engine`] — the step-by-step replay of the argument,
//!   producing machine-readable certificates, plus a literal brute-force
//!   oracle at desk scale.

pub mod error;
pub mod exactnum;
pub mod group_models;
pub mod help_engine;
pub mod residue_f2;
pub mod theorem_engine;

pub use error::{Error, Result};
pub use exactnum::{is_odd_prime, rat, rat_frac, CycNum, Rational};
pub use group_models::{
    char_table_for, char_table_heisenberg, class_count, heisenberg, prime_divisors, psl2_fragment,
    psl2_order, sylow_shape, CharTable, ConjClass, GroupModel, HeisenbergElement, PSLFragment,
    PslClass, RowSpec, SylowShape, SylowShapeKind,
};
pub use help_engine::{
    admissible_pa, eigenvalue_layout, is_nonnegative_integer, lp_multiplicity,
    restriction_constraint, unit_char_value, Branch, ClassAssignment, EigLayout, PAVector,
};
pub use residue_f2::{
    f2_nullspace, f2_rank, gauss_sum, gauss_sum_n, legendre, lemma_matrix, product_identities,
    residue_sets, F2Matrix, ResidueData,
};
pub use theorem_engine::{
    brute_force_oracle, constraint_m_and_mj, contribution_ledger, gamma_delta_bounds,
    noncentral_pa_dichotomy, power_flip_check, sign_system, verify_theorem, Certificate,
    Conclusion, DichotomyCase, DichotomyReport, LedgerRecord, SignAssignment, SignSystemReport,
    StepRecord, StepStatus, CERTIFICATE_SCHEMA,
};
