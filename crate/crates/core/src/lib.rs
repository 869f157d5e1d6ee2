//! Exact computations around the SL2 deformation theory of two-bridge knot
//! groups: Riley polynomials, character curves, trace reduction,
//! pseudo-representation axioms and the explicit universal deformation of a
//! residual Riley representation over truncated `O[[x - 2]]`.
//!
//! ```
//! use knotdeform::{riley_data, TwoBridgeKnot};
//!
//! let trefoil = TwoBridgeKnot::new(3, 1).unwrap();
//! let data = riley_data(trefoil).unwrap();
//! assert_eq!(data.big_phi.to_string(), "x^2 + u - 3");
//! assert_eq!(data.phi2.to_string(), "u + 1");
//! ```

pub mod algebra;
pub mod charvar;
pub mod deform;
pub mod fuzz;
pub mod knot;
pub mod matrix;
pub mod poly;
pub mod pseudo;
pub mod riley;
pub mod ring;
pub mod series;
pub mod word;

pub use algebra::CommRing;
pub use charvar::{curve_model, trace_reduce, CurveModel, TracePolynomial, TraceReducer};
pub use deform::{
    deformation_matrices, hensel_u, ramified_check, specialize, verify_deformation, DeformError, DeformationData,
    DeformationReport,
};
pub use knot::{InvalidKnot, TwoBridgeKnot};
pub use matrix::{evaluate_word, Mat2, MatrixError, SL2Matrix};
pub use poly::{BiPoly, LaurentBiPoly, PolyError, UniPoly, Var};
pub use pseudo::{
    check_axioms_c, check_axioms_p, equivalence_harness, relation_ideal_truncated, trace_table, AxiomReport,
    PseudoError, PseudoRepTable, WordSet,
};
pub use riley::{
    find_conjugator, is_abs_irreducible, riley_data, riley_rep, riley_roots, Representation, RileyData, RileyError,
};
pub use ring::{make_ring, teichmuller_lift, Ring, RingElement, RingError, RingSpec};
pub use series::{
    newton_iteration_bound, newton_root, newton_root_with, NewtonRun, NewtonSchedule, SeriesError, SeriesVar, SeriesWire,
    TruncSeries,
};
pub use word::{FreeWord, Gen, WordParseError};

/// Any error raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Knot(#[from] InvalidKnot),
    #[error(transparent)]
    Word(#[from] WordParseError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Riley(#[from] RileyError),
    #[error(transparent)]
    Pseudo(#[from] PseudoError),
    #[error(transparent)]
    Deform(#[from] DeformError),
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/rings.md")]
    mod rings {}
    #[doc = include_str!("../../../book/src/riley.md")]
    mod riley {}
    #[doc = include_str!("../../../book/src/charvar.md")]
    mod charvar {}
    #[doc = include_str!("../../../book/src/deform.md")]
    mod deform {}
    #[doc = include_str!("../../../book/src/pseudo.md")]
    mod pseudo {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
