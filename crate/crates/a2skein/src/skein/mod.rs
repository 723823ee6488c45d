//! Direct skein evaluator for closed A2 web diagrams.
//!
//! Diagrams are combinatorial maps ([`diagram`]); crossings resolve and
//! faces reduce by the local relations ([`reduce`]); clasps expand into
//! sums of clasp-free fragments and torus-link diagrams are assembled from
//! cabled braids ([`clasp`]). The module exists as an independent route to
//! the same invariants the formula modules compute, so it shares no code
//! with them beyond exact scalar arithmetic.

pub mod clasp;
pub mod diagram;
pub mod reduce;

use crate::qexact::RationalQ;

pub use clasp::{
    braid_diagram, canonical_signature, clasp_fragments, clasp_insert, close_trace, compose,
    evaluate_clasped, flatten_and_merge, identity_fragment, insert_crossing, tensor,
    torus_invariant, torus_link_diagram, w_fragment, DEFAULT_COLOR_LIMIT,
};
pub use diagram::{DartId, SkeinError, VertexId, VertexKind, WebDiagram};
pub use reduce::{
    evaluate_closed, flatten_fragment, reduce_closed, resolve_crossings, resolve_one_crossing,
};

/// A formal sum of web diagrams with exact coefficients. Crossing
/// resolutions contribute monomial coefficients; clasp expansions
/// contribute rational ones.
#[derive(Clone, Debug)]
pub struct WebSum {
    pub terms: Vec<(RationalQ, WebDiagram)>,
}

/// A pending clasp insertion: color `n` and the 2n host ports it consumes,
/// the first n receiving the clasp's bottom row, the last n its top row.
#[derive(Clone, Debug)]
pub struct ClaspSpec {
    pub n: i64,
    pub slots: Vec<VertexId>,
}

/// An open diagram together with its pending clasp insertions.
#[derive(Clone, Debug)]
pub struct ClaspedDiagram {
    pub diagram: WebDiagram,
    pub clasps: Vec<ClaspSpec>,
}
