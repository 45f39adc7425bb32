//! Dense linear algebra over GF(2).
//!
//! Rows are bit-packed into 64-bit words: column `c` lives in word `c / 64`
//! at bit `c % 64`. Solving is done on the row space: `solve(t)` returns row
//! coefficients whose XOR equals `t`, which is the form both encoder
//! construction and decoder derivation need.

const WORD_BITS: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

pub(crate) fn pack_bits(bits: &[bool]) -> Vec<u64> {
    let mut words = vec![0u64; words_for(bits.len())];
    for (i, &b) in bits.iter().enumerate() {
        if b {
            words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
        }
    }
    words
}

pub(crate) fn unpack_bits(words: &[u64], len: usize) -> Vec<bool> {
    (0..len)
        .map(|i| words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1)
        .collect()
}

fn xor_assign(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

fn first_set_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .position(|&w| w != 0)
        .map(|i| i * WORD_BITS + words[i].trailing_zeros() as usize)
}

/// A dense binary matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = words_for(cols);
        Self {
            rows,
            cols,
            words_per_row,
            bits: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from explicit row bit patterns.
    ///
    /// # Panics
    ///
    /// Panics if the rows do not all have the same length.
    pub fn from_rows(rows: &[Vec<bool>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == cols),
            "ragged rows: every row must have {cols} columns"
        );
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            for (j, &b) in row.iter().enumerate() {
                if b {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn row_count(&self) -> usize {
        self.rows
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(row < self.rows && col < self.cols, "index out of range");
        let w = self.bits[row * self.words_per_row + col / WORD_BITS];
        w >> (col % WORD_BITS) & 1 == 1
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        assert!(row < self.rows && col < self.cols, "index out of range");
        let w = &mut self.bits[row * self.words_per_row + col / WORD_BITS];
        if value {
            *w |= 1 << (col % WORD_BITS);
        } else {
            *w &= !(1 << (col % WORD_BITS));
        }
    }

    pub(crate) fn row_words(&self, row: usize) -> &[u64] {
        let start = row * self.words_per_row;
        &self.bits[start..start + self.words_per_row]
    }

    pub fn row_bits(&self, row: usize) -> Vec<bool> {
        unpack_bits(self.row_words(row), self.cols)
    }

    /// Number of linearly independent rows.
    pub fn rank(&self) -> usize {
        let mut basis = RowBasis::new(self.cols, 0);
        for r in 0..self.rows {
            basis.insert(self.row_words(r), r);
        }
        basis.rank()
    }

    /// Finds row coefficients `c` with `c · M = target`, if `target` lies in
    /// the row span. The returned vector has one entry per row.
    ///
    /// # Panics
    ///
    /// Panics if `target.len() != col_count()`.
    pub fn solve(&self, target: &[bool]) -> Option<Vec<bool>> {
        assert_eq!(target.len(), self.cols, "target length must match columns");
        let mut basis = RowBasis::new(self.cols, self.rows);
        for r in 0..self.rows {
            basis.insert(self.row_words(r), r);
        }
        let (residue, coeffs) = basis.reduce(&pack_bits(target));
        if residue.iter().all(|&w| w == 0) {
            Some(unpack_bits(&coeffs, self.rows))
        } else {
            None
        }
    }

    /// Matrix-vector product over GF(2): entry `r` of the result is the
    /// parity of `row_r AND v`.
    ///
    /// # Panics
    ///
    /// Panics if `v.len() != col_count()`.
    pub fn mul_vector(&self, v: &[bool]) -> Vec<bool> {
        assert_eq!(v.len(), self.cols, "vector length must match columns");
        let packed = pack_bits(v);
        (0..self.rows)
            .map(|r| {
                self.row_words(r)
                    .iter()
                    .zip(&packed)
                    .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
                    & 1
                    == 1
            })
            .collect()
    }

    /// The reduced row echelon form, with zero rows moved to the bottom.
    /// Applying it twice gives the same matrix.
    pub fn reduced_row_echelon(&self) -> Gf2Matrix {
        let mut basis = RowBasis::new(self.cols, 0);
        for r in 0..self.rows {
            basis.insert(self.row_words(r), r);
        }
        let mut pivot_rows = basis.into_pivot_rows();
        // Rows already have zeros below their pivot (the pivot is the first
        // set bit); back-substitution clears pivot columns above it.
        for i in (0..pivot_rows.len()).rev() {
            for j in i + 1..pivot_rows.len() {
                let (pivot_col, _) = pivot_rows[j].clone();
                let has = pivot_rows[i].1[pivot_col / WORD_BITS] >> (pivot_col % WORD_BITS) & 1 == 1;
                if has {
                    let (_, row_j) = pivot_rows[j].clone();
                    xor_assign(&mut pivot_rows[i].1, &row_j);
                }
            }
        }
        let mut out = Gf2Matrix::zeros(self.rows, self.cols);
        for (r, (_, words)) in pivot_rows.iter().enumerate() {
            let start = r * out.words_per_row;
            out.bits[start..start + out.words_per_row].copy_from_slice(words);
        }
        out
    }
}

impl std::fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", u8::from(self.get(r, c)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Incremental GF(2) row basis keyed by pivot column (the first set bit of
/// each stored row). Optionally tracks how each basis row combines the
/// inserted rows, so reductions can report coefficients.
pub(crate) struct RowBasis {
    words_per_row: usize,
    coeff_words: usize,
    // indexed by pivot column
    slots: Vec<Option<(Vec<u64>, Vec<u64>)>>,
    rank: usize,
}

impl RowBasis {
    /// `coeff_slots` is the number of rows that will be inserted when
    /// coefficient tracking is wanted, or 0 to skip tracking.
    pub(crate) fn new(cols: usize, coeff_slots: usize) -> Self {
        Self {
            words_per_row: words_for(cols),
            coeff_words: words_for(coeff_slots),
            slots: vec![None; cols],
            rank: 0,
        }
    }

    /// Inserts a row, reducing it against the basis first. `index` is the
    /// row's position for coefficient tracking. Returns true if the row was
    /// independent and grew the basis.
    pub(crate) fn insert(&mut self, row: &[u64], index: usize) -> bool {
        debug_assert_eq!(row.len(), self.words_per_row);
        let mut bits = row.to_vec();
        let mut coeffs = vec![0u64; self.coeff_words];
        if self.coeff_words > 0 {
            coeffs[index / WORD_BITS] |= 1 << (index % WORD_BITS);
        }
        while let Some(pivot) = first_set_bit(&bits) {
            match &self.slots[pivot] {
                Some((b, c)) => {
                    xor_assign(&mut bits, b);
                    xor_assign(&mut coeffs, c);
                }
                None => {
                    self.slots[pivot] = Some((bits, coeffs));
                    self.rank += 1;
                    return true;
                }
            }
        }
        false
    }

    /// Reduces `target` against the basis, returning the residue and the
    /// coefficient combination used. A zero residue means `target` is in the
    /// span.
    pub(crate) fn reduce(&self, target: &[u64]) -> (Vec<u64>, Vec<u64>) {
        debug_assert_eq!(target.len(), self.words_per_row);
        let mut bits = target.to_vec();
        let mut coeffs = vec![0u64; self.coeff_words];
        while let Some(pivot) = first_set_bit(&bits) {
            match &self.slots[pivot] {
                Some((b, c)) => {
                    xor_assign(&mut bits, b);
                    xor_assign(&mut coeffs, c);
                }
                None => break,
            }
        }
        (bits, coeffs)
    }

    pub(crate) fn contains(&self, target: &[u64]) -> bool {
        self.reduce(target).0.iter().all(|&w| w == 0)
    }

    pub(crate) fn rank(&self) -> usize {
        self.rank
    }

    /// Drains the basis into (pivot column, row) pairs in ascending pivot
    /// order.
    fn into_pivot_rows(self) -> Vec<(usize, Vec<u64>)> {
        self.slots
            .into_iter()
            .enumerate()
            .filter_map(|(col, slot)| slot.map(|(bits, _)| (col, bits)))
            .collect()
    }
}
