//! Exact sl3 (A2 web) invariants of 2-bridge links and the stable tail
//! series of (2,2m) torus links.
//!
//! The crate is organized bottom-up:
//! - [`qexact`]: Laurent polynomials in u = q^{1/6}, rational functions,
//!   truncated series, quantum/q-combinatorial scalars. Everything exact.
//! - [`websym`]: closed-form colored-graph evaluations (loop, theta,
//!   tetrahedron, recoupling coefficients, twist eigenvalues) and the
//!   coefficient families of the clasp / bubble / full-twist expansions.
//! - [`jones`]: the colored invariant J_{(n,0)} of 2-bridge links via the
//!   recoupling sum, plus two specialized torus-link formulas.
//! - [`tails`]: normalized stabilized series, their limits, the q-series
//!   identity verifier, and the coefficient-pattern analyzer.
//! - [`skein`]: an independent evaluator for closed web diagrams working
//!   directly from the local rewriting relations; used to cross-check the
//!   formula modules at low color.
//!
//! All arithmetic is exact; any division that must leave no remainder is
//! checked and failures surface as errors rather than truncated values.

pub mod jones;
pub mod qexact;
pub mod skein;
pub mod tails;
pub mod websym;
