//! Syzygy degrees `t_j`, projective dimension and Castelnuovo–Mumford
//! regularity of products of powers `I_1^{a_1} ⋯ I_m^{a_m}` of monomial
//! ideals, with tools to check their eventual shape as a maximum of linear
//! functions of `a`.
//!
//! - [`monomial`]: monomials, minimal generators, power products.
//! - [`resolution`]: multigraded Betti numbers through upper Koszul complexes.
//! - [`asymptotics`]: grid tables and envelope fitting.
//! - [`hilbert`]: partial-denominator decompositions of multigraded Hilbert series.
//! - [`cli`]: text formats and the command dispatcher behind the `reglab` binary.

pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod hilbert;
pub mod linalg;
pub mod monomial;
pub mod resolution;

pub use asymptotics::{
    candidate_slopes, check_corollary2, fit_envelope, pd_stability, tabulate, EnvelopeFit,
    GridTable, InvariantGrid, InvariantKind, LinearForm, PdStability,
};
pub use error::{Error, ParseError, Result};
pub use hilbert::{
    asymptotic_forms, coefficients_at, compare_series_to_betti, rho_of_sum, rho_of_term,
    RationalSeriesSum, RationalTerm, SeriesFactor, SeriesReport,
};
pub use monomial::{IdealFamily, Monomial, MonomialIdeal, MultiExponent, RingContext};
pub use resolution::{
    invariants, multigraded_betti, upper_koszul_complex, BettiTable, Invariants, SimplicialComplex,
};
