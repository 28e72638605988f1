//! Exact-arithmetic machinery for finite-type knot invariants derived from
//! the Conway polynomial, and for mod-2 weight systems on chord and Jacobi
//! diagram spaces.
//!
//! The crate has five parts:
//!
//! * [`series`] — truncated integer power series with a discrete
//!   exponential/logarithm pair that turns products into sums.
//! * [`laurent`] — Laurent polynomials in `s = t^{1/2}`, exact determinants,
//!   and rewriting of symmetric polynomials in `z = s − s⁻¹`.
//! * [`seifert`] — Seifert matrices, Alexander and Conway polynomials, the
//!   primitive coefficients of the Conway logarithm, and a verified family of
//!   wheel knots.
//! * [`diagrams`] — chord diagrams, intersection graphs, the Hamiltonian-cycle
//!   weight system, four-term relators, and Jacobi diagrams with mod-2 STU
//!   reduction.
//! * [`ranks`] — GF(2) and exact-rational quotient ranks of diagram spaces
//!   modulo relator families.
//!
//! All values are immutable after construction and all operations are pure
//! and deterministic, so everything is safe to use concurrently.

pub mod diagrams;
pub mod error;
pub mod laurent;
pub mod oracle;
pub mod ranks;
pub mod seifert;
pub mod series;

pub use error::{Error, Result};

#[cfg(test)]
mod thread_safety {
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn core_types_are_send_and_sync() {
        assert_send_sync::<crate::series::IntSeries>();
        assert_send_sync::<crate::laurent::LaurentPoly>();
        assert_send_sync::<crate::laurent::ZPoly>();
        assert_send_sync::<crate::seifert::SeifertMatrix>();
        assert_send_sync::<crate::seifert::PcVector>();
        assert_send_sync::<crate::diagrams::ChordDiagram>();
        assert_send_sync::<crate::diagrams::JacobiDiagram>();
        assert_send_sync::<crate::diagrams::DiagramSumMod2>();
        assert_send_sync::<crate::ranks::RelatorSystem>();
    }
}
