//! Dense bit matrices over F_2.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Row-major bit matrix; each row occupies `stride` 64-bit words, column j of a row
/// is bit j % 64 of word j / 64. Padding bits are always zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(64);
        BitMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
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
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn stride(&self) -> usize {
        self.stride
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.data[r * self.stride + c / 64] >> (c % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.data[r * self.stride + c / 64];
        let bit = 1u64 << (c % 64);
        if v {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    /// Overwrites row r from packed words.
    pub fn set_row(&mut self, r: usize, words: &[u64]) {
        self.row_mut(r).copy_from_slice(words);
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn col_weights(&self) -> Vec<usize> {
        let mut out = vec![0; self.cols];
        for r in 0..self.rows {
            for (c, slot) in out.iter_mut().enumerate() {
                if self.get(r, c) {
                    *slot += 1;
                }
            }
        }
        out
    }

    pub fn row_support(&self, r: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (k, &w) in self.row(r).iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.push(k * 64 + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row_support(r) {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Rank over F_2 by Gaussian elimination on a copy.
    pub fn rank_gf2(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            let (w, bit) = (c / 64, 1u64 << (c % 64));
            let Some(p) = (rank..m.rows).find(|&r| m.data[r * m.stride + w] & bit != 0) else {
                continue;
            };
            m.swap_rows(rank, p);
            let pivot: Vec<u64> = m.row(rank).to_vec();
            for r in rank + 1..m.rows {
                if m.data[r * m.stride + w] & bit != 0 {
                    for (a, b) in m.row_mut(r).iter_mut().zip(&pivot) {
                        *a ^= b;
                    }
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.stride {
            self.data.swap(a * self.stride + k, b * self.stride + k);
        }
    }

    /// Matrix with row i equal to row `row_perm[i]` and column j equal to column `col_perm[j]` of self.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows, self.cols);
        for (i, &src) in row_perm.iter().enumerate() {
            for (j, &c) in col_perm.iter().enumerate() {
                if self.get(src, c) {
                    out.set(i, j, true);
                }
            }
        }
        out
    }

    /// Rows as packed words, sorted; equal results mean equal row multisets.
    pub fn sorted_rows(&self) -> Vec<Vec<u64>> {
        let mut rows: Vec<Vec<u64>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        rows.sort_unstable();
        rows
    }

    /// Serialized bytes: rows, cols as little-endian u64 then every row's words.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(16 + self.data.len() * 8);
        out.extend_from_slice(&(self.rows as u64).to_le_bytes());
        out.extend_from_slice(&(self.cols as u64).to_le_bytes());
        for w in &self.data {
            out.extend_from_slice(&w.to_le_bytes());
        }
        out
    }

    /// Text export: header "b v", then one '0'/'1' line per row.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.rows * (self.cols + 1) + 16);
        let _ = writeln!(s, "{} {}", self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                s.push(if self.get(r, c) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }

    /// Hex export: header "b v", then ceil(v/4) hex digits per row; column 4k is the
    /// most significant bit of digit k.
    pub fn to_hex(&self) -> String {
        let digits = self.cols.div_ceil(4);
        let mut s = String::with_capacity(self.rows * (digits + 1) + 16);
        let _ = writeln!(s, "{} {}", self.rows, self.cols);
        for r in 0..self.rows {
            for k in 0..digits {
                let mut d = 0u32;
                for b in 0..4 {
                    let c = 4 * k + b;
                    if c < self.cols && self.get(r, c) {
                        d |= 8 >> b;
                    }
                }
                s.push(char::from_digit(d, 16).expect("nibble"));
            }
            s.push('\n');
        }
        s
    }

    /// Parses either export format; the format is detected from the row width.
    pub fn parse(text: &str) -> Result<BitMatrix> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::parse("empty matrix file"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::parse(format!("bad matrix header {header:?}")))
            })
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else {
            return Err(Error::parse(format!(
                "matrix header must be \"b v\", got {header:?}"
            )));
        };
        let mut m = BitMatrix::zeros(rows, cols);
        let mut count = 0;
        for (r, line) in lines.enumerate() {
            if r >= rows {
                return Err(Error::parse("more matrix rows than declared"));
            }
            count += 1;
            if line.len() == cols && line.bytes().all(|b| b == b'0' || b == b'1') {
                for (c, b) in line.bytes().enumerate() {
                    m.set(r, c, b == b'1');
                }
            } else if line.len() == cols.div_ceil(4) {
                for (k, ch) in line.chars().enumerate() {
                    let d = ch
                        .to_digit(16)
                        .ok_or_else(|| Error::parse(format!("bad hex digit {ch:?} in row {r}")))?;
                    for b in 0..4 {
                        let c = 4 * k + b;
                        if d & (8 >> b) != 0 {
                            if c >= cols {
                                return Err(Error::parse(format!("padding bit set in row {r}")));
                            }
                            m.set(r, c, true);
                        }
                    }
                }
            } else {
                return Err(Error::parse(format!(
                    "row {r} has unexpected width {}",
                    line.len()
                )));
            }
        }
        if count != rows {
            return Err(Error::parse(format!("expected {rows} rows, found {count}")));
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_rank() {
        assert_eq!(BitMatrix::identity(64).rank_gf2(), 64);
        assert_eq!(BitMatrix::identity(130).rank_gf2(), 130);
        assert_eq!(BitMatrix::zeros(5, 7).rank_gf2(), 0);
    }

    #[test]
    fn rank_of_dependent_rows() {
        let m = BitMatrix::from_fn(3, 3, |r, c| [[1, 1, 0], [0, 1, 1], [1, 0, 1]][r][c] == 1);
        assert_eq!(m.rank_gf2(), 2);
    }

    #[test]
    fn text_and_hex_round_trip() {
        let m = BitMatrix::from_fn(5, 70, |r, c| (r * 7 + c * 3) % 5 == 1);
        assert_eq!(BitMatrix::parse(&m.to_text()).unwrap(), m);
        assert_eq!(BitMatrix::parse(&m.to_hex()).unwrap(), m);
        let small = BitMatrix::from_fn(1, 5, |_, c| c == 0 || c == 4);
        assert_eq!(small.to_hex(), "1 5\n88\n");
        assert!(BitMatrix::parse("2 2\n10\n").is_err());
    }

    #[test]
    fn transpose_twice() {
        let m = BitMatrix::from_fn(9, 130, |r, c| (r ^ c) % 3 == 0);
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.transpose().get(100, 4), m.get(4, 100));
    }
}
