//! Multigraded Hilbert series and Hilbert numerators of monomial ideals,
//! in finitely or countably many variables.
//!
//! The numerator of an ideal is computed by four mutually cross-checking
//! routes — subset inclusion-exclusion, the Möbius function of the lcm
//! lattice, per-coefficient Koszul-complex Euler characteristics, and
//! truncated Möbius inversion of the staircase complement — together with
//! truncation/convergence experiments over degree-indexed generator
//! streams and a Macaulay-style classifier of which power series are valid
//! numerators.
//!
//! All arithmetic is exact: 64-bit integer coefficients with checked
//! operations, and series truncated by total degree so every result is
//! exact in all degrees up to its cap.

pub mod error;
pub mod grading;
pub mod hilbert;
pub mod ideal;
pub mod macaulay;
pub mod monomial;
pub mod series;
pub mod stream;

pub use error::Error;
pub use grading::{MultiDegree, Partition};
pub use hilbert::{
    build_lcm_lattice, convergence_run, intersect, koszul_coefficient, numerator_incl_excl,
    numerator_koszul, numerator_lcm_lattice, numerator_oracle, split_incl_excl, truncation_law,
    verify_23gen_recursion, ConvergenceRun, KoszulComplex, LcmLattice,
};
pub use ideal::{parse_ideal_text, Distance, DistanceKind, IdealFile, MonomialIdeal};
pub use macaulay::{
    bjorner_kalai_check, classify_numerator, is_o_sequence, macaulay_bound, macaulay_expand,
    numerator_degree_bound, pcond_check, Certificate, MacaulayExpansion, UnivariateSeries,
};
pub use monomial::Monomial;
pub use series::{mu, nu, CollapsedSeries, GradedSeries, VarBound};
pub use stream::{
    is_stream_name, parse_stream_name, realize_stream, EmptyStream, Example23Stream,
    GeneratorStream, PowersStream,
};
