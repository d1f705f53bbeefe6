//! Dense bit-packed matrices over GF(2).
//!
//! Rows are stored as runs of `u64` words, least significant bit first, so a
//! row is also a codeword in packed form. All parity-check matrices in the
//! crate live in a [`BitMatrix`].
//!
//! The text format is a header line `m n` followed by `m` lines of exactly `n`
//! characters from `{0,1}`:
//!
//! ```
//! use avail_core::BitMatrix;
//!
//! let m: BitMatrix = "2 3\n101\n010".parse().unwrap();
//! assert_eq!(m.rank(), 2);
//! assert_eq!(m.to_string(), "2 3\n101\n010\n");
//! ```

use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;

const WORD: usize = 64;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// Hamming weight of a packed bit vector.
#[inline]
pub fn weight(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
pub(crate) fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

#[inline]
pub(crate) fn test_bit(words: &[u64], i: usize) -> bool {
    (words[i / WORD] >> (i % WORD)) & 1 == 1
}

/// Indices of set bits in a packed vector.
pub fn support(words: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    for (wi, &w) in words.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            let b = w.trailing_zeros() as usize;
            out.push(wi * WORD + b);
            w &= w - 1;
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BitMatrix {
            rows,
            cols,
            stride,
            words: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Builds a matrix whose rows have the given supports.
    pub fn from_supports<I, S>(cols: usize, supports: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[usize]>,
    {
        let mut m = Self::zeros(0, cols);
        for s in supports {
            let mut row = vec![0u64; m.stride];
            for &j in s.as_ref() {
                assert!(
                    j < cols,
                    "support index {j} out of range for {cols} columns"
                );
                row[j / WORD] |= 1 << (j % WORD);
            }
            m.push_row(&row);
        }
        m
    }

    /// Appends a packed row. The slice must have exactly `stride` words.
    pub fn push_row(&mut self, row: &[u64]) {
        assert_eq!(row.len(), self.stride);
        self.words.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of `u64` words per row.
    pub fn stride(&self) -> usize {
        self.stride
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        test_bit(self.row(i), j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        debug_assert!(i < self.rows && j < self.cols);
        let w = &mut self.words[i * self.stride + j / WORD];
        if value {
            *w |= 1 << (j % WORD);
        } else {
            *w &= !(1 << (j % WORD));
        }
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.words[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row_support(&self, i: usize) -> Vec<usize> {
        support(self.row(i))
    }

    pub fn row_weight(&self, i: usize) -> usize {
        weight(self.row(i))
    }

    pub fn column_weights(&self) -> Vec<usize> {
        let mut out = vec![0; self.cols];
        for i in 0..self.rows {
            for j in support(self.row(i)) {
                out[j] += 1;
            }
        }
        out
    }

    /// Rows whose support contains column `j`.
    pub fn rows_through(&self, j: usize) -> Vec<usize> {
        (0..self.rows).filter(|&i| self.get(i, j)).collect()
    }

    /// Size of the intersection of the supports of rows `a` and `b`.
    pub fn row_intersection(&self, a: usize, b: usize) -> usize {
        self.row(a)
            .iter()
            .zip(self.row(b))
            .map(|(x, y)| (x & y).count_ones() as usize)
            .sum()
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in support(self.row(i)) {
                t.set(j, i, true);
            }
        }
        t
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.words.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    fn xor_row(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        let s = self.stride;
        let (d, sr) = if dst < src {
            let (lo, hi) = self.words.split_at_mut(src * s);
            (&mut lo[dst * s..dst * s + s], &hi[..s])
        } else {
            let (lo, hi) = self.words.split_at_mut(dst * s);
            (&mut hi[..s], &lo[src * s..src * s + s])
        };
        xor_into(d, sr);
    }

    /// Reduced row echelon form. Returns the reduced matrix (zero rows
    /// trimmed) and the pivot column of each remaining row.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c)) else {
                continue;
            };
            m.swap_rows(r, p);
            for i in 0..m.rows {
                if i != r && m.get(i, c) {
                    m.xor_row(i, r);
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.words.truncate(r * m.stride);
        m.rows = r;
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rank together with a basis of the right null space `{v : M v^T = 0}`.
    pub fn rank_and_nullspace(&self) -> (usize, BitMatrix) {
        let (reduced, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = BitMatrix::zeros(0, self.cols);
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u64; self.stride];
            v[f / WORD] |= 1 << (f % WORD);
            for (row, &p) in pivots.iter().enumerate() {
                if reduced.get(row, f) {
                    v[p / WORD] |= 1 << (p % WORD);
                }
            }
            basis.push_row(&v);
        }
        (pivots.len(), basis)
    }

    pub fn nullspace(&self) -> BitMatrix {
        self.rank_and_nullspace().1
    }

    /// Syndrome `M v^T` of a packed vector of length `cols`.
    pub fn mul_vec(&self, v: &[u64]) -> Vec<bool> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| (a & b).count_ones())
                    .sum::<u32>()
                    % 2
                    == 1
            })
            .collect()
    }

    /// Row space basis in reduced echelon form.
    pub fn row_space_basis(&self) -> BitMatrix {
        self.rref().0
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Copy of the matrix with rows permuted by `perm` (new row `i` is old row
    /// `perm[i]`).
    pub fn permute_rows(&self, perm: &[usize]) -> BitMatrix {
        let mut m = BitMatrix::zeros(0, self.cols);
        for &p in perm {
            m.push_row(self.row(p));
        }
        m
    }

    /// Copy of the matrix with columns permuted (new column `j` is old column
    /// `perm[j]`).
    pub fn permute_cols(&self, perm: &[usize]) -> BitMatrix {
        BitMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, perm[j]))
    }

    fn sorted_rows(&self) -> Vec<Vec<u64>> {
        let mut rows: Vec<Vec<u64>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        rows.sort_unstable();
        rows
    }

    /// Whether `other` equals `self` up to a permutation of rows and a
    /// permutation of columns. Exhaustive over column permutations, so only
    /// intended for small matrices (at most 9 columns).
    pub fn is_permutation_equivalent(&self, other: &BitMatrix) -> bool {
        if self.rows != other.rows || self.cols != other.cols {
            return false;
        }
        assert!(self.cols <= 9, "permutation search limited to 9 columns");
        let mut cw_a = self.column_weights();
        let mut cw_b = other.column_weights();
        cw_a.sort_unstable();
        cw_b.sort_unstable();
        if cw_a != cw_b {
            return false;
        }
        let target = other.sorted_rows();
        let mut perm: Vec<usize> = (0..self.cols).collect();
        loop {
            if self.permute_cols(&perm).sorted_rows() == target {
                return true;
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let line: String = (0..self.cols)
                .map(|j| if self.get(i, j) { '1' } else { '0' })
                .collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

impl FromStr for BitMatrix {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
        let (hline, header) = lines.next().ok_or(ParseError::BadHeader { line: 1 })?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|s| s.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| ParseError::BadHeader { line: hline })?;
        let [rows, cols] = dims[..] else {
            return Err(ParseError::BadHeader { line: hline });
        };
        if rows == 0 || cols == 0 {
            return Err(ParseError::EmptyDimension {
                line: hline,
                rows,
                cols,
            });
        }
        let mut m = BitMatrix::zeros(rows, cols);
        let mut seen = 0;
        for (lineno, line) in lines {
            if seen == rows {
                if line.trim().is_empty() {
                    continue;
                }
                return Err(ParseError::RowCountMismatch {
                    expected: rows,
                    found: seen + 1,
                });
            }
            let chars: Vec<char> = line.chars().collect();
            if let Some(&ch) = chars.iter().find(|c| **c != '0' && **c != '1') {
                return Err(ParseError::BadChar { line: lineno, ch });
            }
            if chars.len() != cols {
                return Err(ParseError::RaggedRow {
                    line: lineno,
                    found: chars.len(),
                    expected: cols,
                });
            }
            for (j, c) in chars.into_iter().enumerate() {
                if c == '1' {
                    m.set(seen, j, true);
                }
            }
            seen += 1;
        }
        if seen != rows {
            return Err(ParseError::RowCountMismatch {
                expected: rows,
                found: seen,
            });
        }
        Ok(m)
    }
}
