//! Brute-force optimality oracles.
//!
//! Everything here is deliberately independent of the pruning pipeline: it
//! knows only the decodability requirement — every receiver must recover
//! its wanted bits from the broadcast plus the one bit it already holds —
//! and searches for the shortest code satisfying it. Linear search runs
//! over row spaces (reduced row echelon representatives, since decodability
//! depends only on the span); unrestricted search enumerates raw encoding
//! tables and is hard-capped to tiny sizes where that is feasible at all.

use std::collections::HashMap;

use thiserror::Error;

use crate::gf2::{Gf2Matrix, RowBasis};
use crate::graph::{Arc, InformationFlowGraph, Vertex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("encoding table has {found} entries but all {expected} message words need one")]
    IncompleteTable { expected: usize, found: usize },
    #[error(
        "unrestricted search over n={n}, max_l={max_l} refused: the table space \
         is 2^(l*2^n), only n <= 3 with max_l <= 2 is tractable"
    )]
    ScaleGuard { n: usize, max_l: usize },
}

/// A decodability problem stripped to its essentials: `n` single-bit
/// messages, receiver `i` holding exactly `x_i` and wanting the set
/// `wants(i)`. Built from a graph or from a bare arc list, so tests can pose
/// instances no valid graph produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodabilityInstance {
    n: usize,
    wants: Vec<Vec<Vertex>>, // index 0 unused; each sorted ascending
}

impl DecodabilityInstance {
    /// # Panics
    ///
    /// Panics if `n > 64` (message words would not fit machine words) or an
    /// arc endpoint is out of range.
    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = Arc>) -> Self {
        assert!(n <= 64, "oracle instances are capped at 64 messages");
        let mut wants = vec![Vec::new(); n + 1];
        for (t, h) in arcs {
            assert!(
                (1..=n).contains(&t) && (1..=n).contains(&h) && t != h,
                "arc ({t}, {h}) out of range for n={n}"
            );
            wants[h].push(t);
        }
        for w in &mut wants {
            w.sort_unstable();
            w.dedup();
        }
        Self { n, wants }
    }

    pub fn from_graph(g: &InformationFlowGraph) -> Self {
        Self::from_arcs(g.vertex_count(), g.arcs().iter().copied())
    }

    pub fn message_count(&self) -> usize {
        self.n
    }

    pub fn wants(&self, receiver: Vertex) -> &[Vertex] {
        &self.wants[receiver]
    }
}

/// True iff the linear code decodes: for every receiver `i` and wanted `j`,
/// the unit vector `e_j` lies in the span of the encoder rows and `e_i`.
///
/// # Panics
///
/// Panics if the encoder's column count differs from the instance's `n`.
pub fn is_decodable_linear(inst: &DecodabilityInstance, encoder: &Gf2Matrix) -> bool {
    assert_eq!(
        encoder.col_count(),
        inst.n,
        "encoder must have one column per message"
    );
    let rows: Vec<u64> = (0..encoder.row_count())
        .map(|r| encoder.row_words(r)[0])
        .collect();
    decodable_linear_rows(inst, &rows)
}

fn decodable_linear_rows(inst: &DecodabilityInstance, rows: &[u64]) -> bool {
    for i in 1..=inst.n {
        if inst.wants[i].is_empty() {
            continue;
        }
        let mut basis = RowBasis::new(inst.n, 0);
        for &row in rows {
            basis.insert(&[row], 0);
        }
        basis.insert(&[1u64 << (i - 1)], 0);
        for &j in &inst.wants[i] {
            if !basis.contains(&[1u64 << (j - 1)]) {
                return false;
            }
        }
    }
    true
}

/// True iff the arbitrary (possibly nonlinear) encoding decodes. The table
/// maps each message word `w` (bit `i-1` carrying `x_i`) to its codeword,
/// an `ell`-bit value. Decodability means no two words that agree on a
/// receiver's own bit share a codeword while differing on a wanted bit.
pub fn is_decodable_any(
    inst: &DecodabilityInstance,
    ell: usize,
    table: &[u64],
) -> Result<bool, OracleError> {
    let words = 1usize << inst.n;
    if table.len() != words {
        return Err(OracleError::IncompleteTable {
            expected: words,
            found: table.len(),
        });
    }
    assert!(
        ell >= 64 || table.iter().all(|&c| c < 1 << ell),
        "codewords must fit in {ell} bits"
    );
    Ok(decodable_any_table(inst, table))
}

fn decodable_any_table(inst: &DecodabilityInstance, table: &[u64]) -> bool {
    let words = 1u64 << inst.n;
    for i in 1..=inst.n {
        if inst.wants[i].is_empty() {
            continue;
        }
        let want_mask: u64 = inst.wants[i].iter().map(|&j| 1u64 << (j - 1)).sum();
        // Receiver i sees (own bit, codeword); all message words behind one
        // observation must agree on every wanted bit.
        let mut seen: HashMap<(u64, u64), u64> = HashMap::new();
        for w in 0..words {
            let key = (w >> (i - 1) & 1, table[w as usize]);
            match seen.insert(key, w & want_mask) {
                Some(prev) if prev != w & want_mask => return false,
                _ => {}
            }
        }
    }
    true
}

/// The shortest decodable linear code, or `None` if every length up to
/// `max_l` fails. Searches lengths in increasing order, enumerating one
/// reduced-row-echelon representative per row space, so the first hit is
/// exact. Lengths beyond `n` add no new row spaces and are skipped.
pub fn min_linear_length(inst: &DecodabilityInstance, max_l: usize) -> Option<usize> {
    (0..=max_l.min(inst.n))
        .find(|&ell| any_space_of_rank(inst.n, ell, |rows| decodable_linear_rows(inst, rows)))
}

/// The shortest decodable code of any kind, linear or not, by exhausting
/// every encoding table of each length. Refuses instances beyond `n <= 3`,
/// `max_l <= 2` — the space has `2^(l * 2^n)` tables.
pub fn min_any_length(
    inst: &DecodabilityInstance,
    max_l: usize,
) -> Result<Option<usize>, OracleError> {
    if inst.n > 3 || max_l > 2 {
        return Err(OracleError::ScaleGuard {
            n: inst.n,
            max_l,
        });
    }
    let words = 1usize << inst.n;
    let mut table = vec![0u64; words];
    for ell in 0..=max_l {
        let mask = (1u64 << ell) - 1;
        let table_bits = ell * words;
        for t in 0..1u64 << table_bits {
            for (w, slot) in table.iter_mut().enumerate() {
                *slot = t >> (ell * w) & mask;
            }
            if decodable_any_table(inst, &table) {
                return Ok(Some(ell));
            }
        }
    }
    Ok(None)
}

/// Calls `pred` with one reduced-row-echelon representative of every
/// rank-`r` row space of GF(2)^n, stopping early on the first `true`.
/// Rows are single machine words (bit `c` = column `c`).
fn any_space_of_rank(n: usize, r: usize, mut pred: impl FnMut(&[u64]) -> bool) -> bool {
    if r == 0 {
        return pred(&[]);
    }
    if r > n {
        return false;
    }
    let mut pivots: Vec<usize> = (0..r).collect();
    let mut rows = vec![0u64; r];
    loop {
        let pivot_mask: u64 = pivots.iter().map(|&c| 1u64 << c).sum();
        // Row i may carry arbitrary bits right of its pivot, outside pivot
        // columns; everything else is forced by the echelon shape.
        let free: Vec<(usize, usize)> = (0..r)
            .flat_map(|i| {
                (pivots[i] + 1..n)
                    .filter(|&c| pivot_mask >> c & 1 == 0)
                    .map(move |c| (i, c))
            })
            .collect();
        for assignment in 0u64..1 << free.len() {
            for (i, row) in rows.iter_mut().enumerate() {
                *row = 1u64 << pivots[i];
            }
            for (k, &(i, c)) in free.iter().enumerate() {
                if assignment >> k & 1 == 1 {
                    rows[i] |= 1u64 << c;
                }
            }
            if pred(&rows) {
                return true;
            }
        }
        if !next_combination(&mut pivots, n) {
            return false;
        }
    }
}

/// Advances `combo` to the next r-combination of `0..n` in lexicographic
/// order; false when exhausted.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let r = combo.len();
    let mut i = r;
    while i > 0 {
        i -= 1;
        if combo[i] < n - r + i {
            combo[i] += 1;
            for j in i + 1..r {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(n: usize, arcs: &[Arc]) -> DecodabilityInstance {
        DecodabilityInstance::from_arcs(n, arcs.iter().copied())
    }

    fn two_cycle() -> DecodabilityInstance {
        inst(2, &[(1, 2), (2, 1)])
    }

    #[test]
    fn xor_row_decodes_the_two_cycle() {
        let enc = Gf2Matrix::from_rows(&[vec![true, true]]);
        assert!(is_decodable_linear(&two_cycle(), &enc));
    }

    #[test]
    fn empty_code_fails_the_two_cycle() {
        let enc = Gf2Matrix::zeros(0, 2);
        assert!(!is_decodable_linear(&two_cycle(), &enc));
    }

    #[test]
    fn third_receiver_needs_more_than_the_pair_xor() {
        // Receiver 3 holds x3 and wants x1; span{x1^x2, x3} misses x1.
        let i = inst(3, &[(1, 2), (2, 1), (1, 3)]);
        let enc = Gf2Matrix::from_rows(&[vec![true, true, false]]);
        assert!(!is_decodable_linear(&i, &enc));
    }

    #[test]
    fn min_linear_known_values() {
        assert_eq!(min_linear_length(&two_cycle(), 2), Some(1));
        let three_cycle = inst(3, &[(1, 2), (2, 3), (3, 1)]);
        assert_eq!(min_linear_length(&three_cycle, 3), Some(2));
        let single = inst(2, &[(1, 2)]);
        assert_eq!(min_linear_length(&single, 2), Some(1));
        let five = inst(5, &[(1, 2), (2, 1), (3, 4), (4, 3), (5, 3)]);
        assert_eq!(min_linear_length(&five, 5), Some(3));
    }

    #[test]
    fn min_linear_reports_exhaustion() {
        let three_cycle = inst(3, &[(1, 2), (2, 3), (3, 1)]);
        assert_eq!(min_linear_length(&three_cycle, 1), None);
    }

    #[test]
    fn min_linear_handles_empty_wants() {
        let nothing = inst(2, &[]);
        assert_eq!(min_linear_length(&nothing, 2), Some(0));
    }

    #[test]
    fn table_decodability_matches_the_linear_case() {
        // table[w] = x1 ^ x2
        let xor_table: Vec<u64> = (0..4u64).map(|w| (w ^ (w >> 1)) & 1).collect();
        assert_eq!(is_decodable_any(&two_cycle(), 1, &xor_table), Ok(true));
        let constant = vec![0u64; 4];
        assert_eq!(is_decodable_any(&two_cycle(), 1, &constant), Ok(false));
    }

    #[test]
    fn incomplete_tables_are_rejected() {
        assert_eq!(
            is_decodable_any(&two_cycle(), 1, &[0, 1]),
            Err(OracleError::IncompleteTable {
                expected: 4,
                found: 2
            })
        );
    }

    #[test]
    fn min_any_known_values() {
        assert_eq!(min_any_length(&two_cycle(), 2), Ok(Some(1)));
        let single = inst(2, &[(1, 2)]);
        assert_eq!(min_any_length(&single, 2), Ok(Some(1)));
        // No length-1 table serves the 2-cycle plus a third receiver
        // wanting x1; 256 candidates all collide somewhere.
        let i = inst(3, &[(1, 2), (2, 1), (1, 3)]);
        assert_eq!(min_any_length(&i, 2), Ok(Some(2)));
    }

    #[test]
    fn scale_guard_refuses_big_instances() {
        let big = inst(4, &[(1, 2), (2, 1)]);
        assert_eq!(
            min_any_length(&big, 2),
            Err(OracleError::ScaleGuard { n: 4, max_l: 2 })
        );
        assert_eq!(
            min_any_length(&two_cycle(), 3),
            Err(OracleError::ScaleGuard { n: 2, max_l: 3 })
        );
    }

    #[test]
    fn space_enumeration_counts_match_gaussian_binomials() {
        // Subspace counts of GF(2)^4 by dimension: 1, 15, 35, 15, 1.
        for (r, expected) in [(0, 1u64), (1, 15), (2, 35), (3, 15), (4, 1)] {
            let mut count = 0;
            any_space_of_rank(4, r, |_| {
                count += 1;
                false
            });
            assert_eq!(count, expected, "rank {r}");
        }
    }

    #[test]
    fn enumerated_spaces_are_distinct_and_echelon() {
        let mut seen = std::collections::HashSet::new();
        any_space_of_rank(5, 2, |rows| {
            assert!(rows[0].trailing_zeros() < rows[1].trailing_zeros());
            assert!(seen.insert(rows.to_vec()), "duplicate space {rows:?}");
            false
        });
        assert_eq!(seen.len(), 155); // [5 choose 2] over GF(2)
    }
}
