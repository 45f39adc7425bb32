//! Optimal XOR index codes and their per-receiver decoders.
//!
//! From a prune decomposition the sender's code falls out directly: each
//! non-trivial strongly connected component with vertices `k_1 < ... < k_V`
//! contributes the chained bits `x_{k_1}^x_{k_2}, ..., x_{k_{V-1}}^x_{k_V}`,
//! and each residual arc `(i, j)` contributes the uncoded bit `x_i`. The row
//! count then equals the decomposition's optimal length by construction.
//!
//! Decoders are not hand-derived per case: for receiver `i` wanting `x_j`,
//! we solve for a GF(2) combination of the broadcast rows and the unit
//! vector `e_i` (the receiver's own bit) that equals `e_j`. For codes built
//! here a solution always exists — chains telescope within a component, and
//! every request pruned away is covered by its message going out uncoded.

use thiserror::Error;

use crate::gf2::Gf2Matrix;
use crate::graph::{InformationFlowGraph, Vertex};
use crate::prune::{optimal_length, PruneResult};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodecError {
    #[error(
        "no decoder exists for receiver {receiver} to recover x{message}; \
         codes from construct_code always admit one, so this is a bug"
    )]
    UnsolvableDecoder { receiver: Vertex, message: Vertex },
}

/// A broadcast code: an encoder matrix over GF(2) whose rows are the
/// transmitted bits, plus (once derived) a decoding recipe for every
/// receiver and wanted message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexCode {
    n: usize,
    encoder: Gf2Matrix,
    rows: Vec<Vec<Vertex>>,
    decoders: Vec<Decoder>,
}

/// All decoding recipes of one receiver, in ascending wanted-message order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoder {
    receiver: Vertex,
    recipes: Vec<Recipe>,
}

/// How one receiver recovers one message: XOR the listed codeword bits,
/// plus its own bit when `own` is set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recipe {
    message: Vertex,
    codeword_bits: Vec<usize>,
    own: bool,
}

impl IndexCode {
    /// Number of transmitted bits.
    pub fn length(&self) -> usize {
        self.rows.len()
    }

    /// Number of messages (columns of the encoder).
    pub fn message_count(&self) -> usize {
        self.n
    }

    /// Per-row XOR supports as sorted vertex lists, e.g. `[1, 2]` for the
    /// bit `x1^x2`.
    pub fn rows(&self) -> &[Vec<Vertex>] {
        &self.rows
    }

    pub fn encoder(&self) -> &Gf2Matrix {
        &self.encoder
    }

    /// Human-readable row expressions such as `"x1+x2"`.
    pub fn row_labels(&self) -> Vec<String> {
        self.rows.iter().map(|r| xor_label(r)).collect()
    }

    pub fn decoders(&self) -> &[Decoder] {
        &self.decoders
    }

    pub fn decoder_for(&self, receiver: Vertex) -> Option<&Decoder> {
        self.decoders.iter().find(|d| d.receiver == receiver)
    }

    /// Encodes an `n`-bit message word into the broadcast codeword.
    ///
    /// # Panics
    ///
    /// Panics if `message.len()` differs from `message_count()`.
    pub fn encode(&self, message: &[bool]) -> Vec<bool> {
        assert_eq!(message.len(), self.n, "message length must be {}", self.n);
        self.encoder.mul_vector(message)
    }

    /// Recovers receiver `receiver`'s wanted bits, ascending by wanted
    /// message, from the broadcast codeword and its own bit. A receiver
    /// that wants nothing gets an empty vector.
    ///
    /// # Panics
    ///
    /// Panics if `codeword.len()` differs from `length()`, or decoders have
    /// not been derived for this receiver.
    pub fn decode(&self, receiver: Vertex, own_bit: bool, codeword: &[bool]) -> Vec<bool> {
        assert_eq!(codeword.len(), self.length(), "codeword length must be {}", self.length());
        let decoder = self
            .decoder_for(receiver)
            .expect("decoders must be derived before decoding");
        decoder
            .recipes
            .iter()
            .map(|r| {
                let mut bit = r.own && own_bit;
                for &b in &r.codeword_bits {
                    bit ^= codeword[b];
                }
                bit
            })
            .collect()
    }
}

impl Decoder {
    pub fn receiver(&self) -> Vertex {
        self.receiver
    }

    pub fn recipes(&self) -> &[Recipe] {
        &self.recipes
    }
}

impl Recipe {
    pub fn message(&self) -> Vertex {
        self.message
    }

    /// Indices (0-based) of the codeword bits to XOR.
    pub fn codeword_bits(&self) -> &[usize] {
        &self.codeword_bits
    }

    /// Whether the receiver's own bit joins the XOR.
    pub fn uses_own(&self) -> bool {
        self.own
    }
}

/// Formats an XOR support like `[1, 2]` as `"x1+x2"`.
pub fn xor_label(support: &[Vertex]) -> String {
    support
        .iter()
        .map(|v| format!("x{v}"))
        .collect::<Vec<_>>()
        .join("+")
}

/// Builds the optimal code for a prune decomposition: XOR chains over each
/// non-trivial component (ascending vertex order), then one uncoded bit per
/// residual arc. Decoders are left empty; see [`derive_decoders`].
pub fn construct_code(pr: &PruneResult) -> IndexCode {
    let n = pr.pruned().vertex_count();
    let mut rows: Vec<Vec<Vertex>> = Vec::new();
    for comp in pr.components() {
        for pair in comp.windows(2) {
            rows.push(vec![pair[0], pair[1]]);
        }
    }
    // Residual arcs are served by their tail's bare message. Distinct arcs
    // sharing a tail would need that bit only once, but a pruned fixed point
    // never produces them (the tail would still qualify for pruning); the
    // guard keeps hand-built decompositions from emitting duplicate rows.
    let mut seen_tails = Vec::new();
    for &(t, _) in pr.residual_arcs() {
        if seen_tails.contains(&t) {
            continue;
        }
        seen_tails.push(t);
        rows.push(vec![t]);
    }
    assert_eq!(
        rows.len(),
        optimal_length(pr),
        "row count must equal the decomposition length"
    );

    let mut encoder = Gf2Matrix::zeros(rows.len(), n);
    for (r, support) in rows.iter().enumerate() {
        for &v in support {
            encoder.set(r, v - 1, true);
        }
    }
    IndexCode {
        n,
        encoder,
        rows,
        decoders: Vec::new(),
    }
}

/// Derives every receiver's decoding recipes against the full problem `g` —
/// the graph as it stood before pruning, so requests whose arcs were pruned
/// away are still honored.
pub fn derive_decoders(
    g: &InformationFlowGraph,
    code: IndexCode,
) -> Result<IndexCode, CodecError> {
    assert_eq!(g.vertex_count(), code.n, "graph and code sizes must agree");
    let mut code = code;
    let ell = code.length();
    let mut decoders = Vec::with_capacity(code.n);
    for receiver in g.vertices() {
        // Augment the broadcast rows with the receiver's own bit e_i and
        // solve for each wanted unit vector in that row space.
        let mut augmented: Vec<Vec<bool>> =
            (0..ell).map(|r| code.encoder.row_bits(r)).collect();
        let mut own_row = vec![false; code.n];
        own_row[receiver - 1] = true;
        augmented.push(own_row);
        let matrix = Gf2Matrix::from_rows(&augmented);

        let mut recipes = Vec::new();
        for message in g.wants(receiver) {
            let mut target = vec![false; code.n];
            target[message - 1] = true;
            let coeffs = matrix
                .solve(&target)
                .ok_or(CodecError::UnsolvableDecoder { receiver, message })?;
            recipes.push(Recipe {
                message,
                codeword_bits: (0..ell).filter(|&b| coeffs[b]).collect(),
                own: coeffs[ell],
            });
        }
        decoders.push(Decoder { receiver, recipes });
    }
    code.decoders = decoders;
    Ok(code)
}
