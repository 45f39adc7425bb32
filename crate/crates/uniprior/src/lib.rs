//! Optimal index codes for single-uniprior broadcast problems.
//!
//! The setting: a sender holds `n` one-bit messages; receiver `i` already
//! knows exactly its own message `x_i` and wants some set of the others.
//! The problem is drawn as an information-flow graph with an arc `(i, j)`
//! whenever receiver `j` wants `x_i`, and the question is the fewest bits
//! the sender can broadcast so that every receiver recovers everything it
//! wants. For this class the answer is exact and efficiently computable:
//!
//! 1. [`prune`](prune::prune) removes redundant arcs until every vertex
//!    with several outgoing arcs keeps only cycle-bound ones, then splits
//!    the survivor graph into non-trivial strongly connected components and
//!    residual arcs.
//! 2. [`optimal_length`](prune::optimal_length) reads the minimum length
//!    off that decomposition: `V − 1` bits per component plus one per
//!    residual arc.
//! 3. [`construct_code`](code::construct_code) realizes the bound with XOR
//!    chains inside each component and uncoded bits for residual arcs;
//!    [`derive_decoders`](code::derive_decoders) equips every receiver with
//!    an explicit GF(2) recipe.
//! 4. [`certificate_for`](certificate::certificate_for) emits a
//!    machine-checkable witness that no shorter code — linear or not — can
//!    exist, and the [`oracle`] module cross-checks both directions by
//!    brute force at small sizes.
//!
//! ```
//! use uniprior::{construct_code, derive_decoders, optimal_length, prune};
//! use uniprior::{InformationFlowGraph, TieBreak};
//!
//! // Receivers 1 and 2 swap messages; receiver 3 wants x1 too.
//! let g = InformationFlowGraph::new(3, [(1, 2), (2, 1), (1, 3)]).unwrap();
//! let pr = prune(&g, TieBreak::Deterministic);
//! assert_eq!(optimal_length(&pr), 2);
//!
//! let code = derive_decoders(&g, construct_code(&pr)).unwrap();
//! assert_eq!(code.row_labels(), vec!["x1", "x2"]);
//! let codeword = code.encode(&[true, false, true]);
//! // Receiver 3 reads x1 from the broadcast alone.
//! assert_eq!(code.decode(3, true, &codeword), vec![true]);
//! ```

pub mod certificate;
pub mod code;
pub mod generate;
pub mod gf2;
pub mod graph;
pub mod oracle;
pub mod prune;

pub use certificate::{
    certificate_for, ear_decomposition, ArcOrigin, CertificateError, Ear, EarDecomposition,
    LowerBoundCertificate,
};
pub use code::{construct_code, derive_decoders, xor_label, CodecError, Decoder, IndexCode, Recipe};
pub use generate::{generate, GraphKind};
pub use gf2::Gf2Matrix;
pub use graph::{
    Arc, GraphError, InformationFlowGraph, LabelMap, ParseError, SccDecomposition, Vertex,
    VertexOrdering,
};
pub use oracle::{
    is_decodable_any, is_decodable_linear, min_any_length, min_linear_length,
    DecodabilityInstance, OracleError,
};
pub use prune::{optimal_length, prune, PruneResult, RemovedArc, TieBreak};
