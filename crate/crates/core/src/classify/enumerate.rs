//! Exhaustive enumeration of affine-free bent functions for n in {2, 4, 6}.
//!
//! A candidate is a high part (monomials of degree 3..=n/2, the bent degree
//! bound) plus a quadratic part. The outer loop runs over high parts in
//! ascending index order, the inner loop sweeps all quadratic parts in Gray
//! code order with the popcount bentness kernel; hits of one high part are
//! emitted sorted by quadratic index, so the stream order is
//! (high index, quadratic index) ascending.

use crate::function::{table_mask, BooleanFunction};
use crate::walsh::{bent_word_kernel, linear_words};
use crate::{Error, Result};
use rayon::prelude::*;

/// Truth table of the monomial with the given variable mask, n <= 6.
pub fn monomial_word(n: usize, mask: u32) -> u64 {
    let lin = linear_words();
    let mut w = table_mask(n);
    for i in 0..n {
        if mask >> i & 1 == 1 {
            w &= lin[1 << i];
        }
    }
    w
}

/// Variable masks of all monomials of degree d in n variables, ascending.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<u32> {
    (0..1u32 << n).filter(|m| m.count_ones() == d).collect()
}

/// The split of the candidate space into high and quadratic parts.
#[derive(Clone, Debug)]
pub struct SearchSpace {
    pub n: usize,
    pub high: Vec<u32>,
    pub quadratic: Vec<u32>,
    high_words: Vec<u64>,
    quadratic_words: Vec<u64>,
}

impl SearchSpace {
    pub fn new(n: usize) -> Result<SearchSpace> {
        if !matches!(n, 2 | 4 | 6) {
            return Err(Error::invalid(format!(
                "enumeration supports n in {{2, 4, 6}}, got {n}"
            )));
        }
        let high: Vec<u32> = (3..=(n / 2) as u32)
            .flat_map(|d| monomials_of_degree(n, d))
            .collect();
        let quadratic = monomials_of_degree(n, 2);
        Ok(SearchSpace {
            n,
            high_words: high.iter().map(|&m| monomial_word(n, m)).collect(),
            quadratic_words: quadratic.iter().map(|&m| monomial_word(n, m)).collect(),
            high,
            quadratic,
        })
    }

    /// Number of outer work units (high parts).
    pub fn units(&self) -> u64 {
        1 << self.high.len()
    }

    /// Total number of candidates examined.
    pub fn candidates(&self) -> u64 {
        1 << (self.high.len() + self.quadratic.len())
    }

    fn high_word(&self, index: u64) -> u64 {
        self.high_words
            .iter()
            .enumerate()
            .filter(|(k, _)| index >> k & 1 == 1)
            .fold(0, |acc, (_, &w)| acc ^ w)
    }

    /// Affine-free bent tables with the given high part, in quadratic index order.
    pub fn sweep(&self, index: u64, out: &mut Vec<u64>) {
        let base = self.high_word(index);
        let mut hits: Vec<(u32, u64)> = Vec::new();
        sweep_dispatch(self.n, base, &self.quadratic_words, &mut hits);
        hits.sort_unstable_by_key(|&(g, _)| g);
        out.extend(hits.into_iter().map(|(_, t)| t));
    }

    /// Sweeps a range of work units in parallel; the result is in stream order.
    pub fn sweep_range(&self, units: std::ops::Range<u64>) -> Vec<u64> {
        let parts: Vec<Vec<u64>> = units
            .into_par_iter()
            .map(|u| {
                let mut v = Vec::new();
                self.sweep(u, &mut v);
                v
            })
            .collect();
        parts.concat()
    }
}

#[inline(always)]
fn sweep_impl(n: usize, base: u64, quad: &[u64], hits: &mut Vec<(u32, u64)>) {
    let lin = linear_words();
    let mut t = base;
    let mut g = 0u32;
    if bent_word_kernel(n, t, lin) {
        hits.push((g, t));
    }
    for i in 1u32..1 << quad.len() {
        let bit = i.trailing_zeros();
        t ^= quad[bit as usize];
        g ^= 1 << bit;
        if bent_word_kernel(n, t, lin) {
            hits.push((g, t));
        }
    }
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "popcnt")]
unsafe fn sweep_popcnt(n: usize, base: u64, quad: &[u64], hits: &mut Vec<(u32, u64)>) {
    sweep_impl(n, base, quad, hits)
}

fn sweep_dispatch(n: usize, base: u64, quad: &[u64], hits: &mut Vec<(u32, u64)>) {
    #[cfg(target_arch = "x86_64")]
    if crate::walsh::has_popcnt() {
        // SAFETY: the popcnt feature was detected at runtime.
        return unsafe { sweep_popcnt(n, base, quad, hits) };
    }
    sweep_impl(n, base, quad, hits)
}

/// Stream of all affine-free bent functions of n variables (no monomial of degree <= 1).
pub struct AffineFreeBent {
    space: SearchSpace,
    next_unit: u64,
    buffer: std::vec::IntoIter<u64>,
}

impl Iterator for AffineFreeBent {
    type Item = BooleanFunction;

    fn next(&mut self) -> Option<BooleanFunction> {
        loop {
            if let Some(t) = self.buffer.next() {
                return Some(
                    BooleanFunction::from_u64(self.space.n, t).expect("table fits n variables"),
                );
            }
            if self.next_unit >= self.space.units() {
                return None;
            }
            let mut v = Vec::new();
            self.space.sweep(self.next_unit, &mut v);
            self.next_unit += 1;
            self.buffer = v.into_iter();
        }
    }
}

pub fn enumerate_affine_free_bent(n: usize) -> Result<AffineFreeBent> {
    Ok(AffineFreeBent {
        space: SearchSpace::new(n)?,
        next_unit: 0,
        buffer: Vec::new().into_iter(),
    })
}
