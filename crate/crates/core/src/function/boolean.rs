use std::fmt;
use std::ops::{BitXor, BitXorAssign, Not};

use crate::error::{Error, Result};

/// Largest supported number of variables.
pub const MAX_VARS: usize = 12;

// Within-word masks selecting the "lower" half of each pair for bit strides 1..32.
const LOW_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

/// Truth table of a map F_2^n -> F_2.
///
/// Entry `x` holds f(x) where x = sum x_i 2^(i-1), so x1 is the least significant
/// input bit. The table is bit-packed into 64-bit words, least significant bit first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BooleanFunction {
    n: usize,
    words: Vec<u64>,
}

pub(crate) fn word_count(n: usize) -> usize {
    if n <= 6 {
        1
    } else {
        1 << (n - 6)
    }
}

pub(crate) fn table_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1u32 << n)) - 1
    }
}

fn check_vars(n: usize) -> Result<()> {
    if n > MAX_VARS {
        return Err(Error::invalid(format!(
            "{n} variables requested, at most {MAX_VARS} are supported"
        )));
    }
    Ok(())
}

impl BooleanFunction {
    pub fn zero(n: usize) -> Result<Self> {
        check_vars(n)?;
        Ok(BooleanFunction {
            n,
            words: vec![0; word_count(n)],
        })
    }

    pub fn one(n: usize) -> Result<Self> {
        Ok(!Self::zero(n)?)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(u32) -> bool) -> Result<Self> {
        let mut out = Self::zero(n)?;
        for x in 0..(1u32 << n) {
            if f(x) {
                out.set(x, true);
            }
        }
        Ok(out)
    }

    /// Builds a function from packed words; bits beyond 2^n must be clear.
    pub fn from_words(n: usize, words: Vec<u64>) -> Result<Self> {
        check_vars(n)?;
        if words.len() != word_count(n) {
            return Err(Error::invalid(format!(
                "truth table for n={n} needs {} words, got {}",
                word_count(n),
                words.len()
            )));
        }
        if words[0] & !table_mask(n) != 0 {
            return Err(Error::invalid("truth table has bits set beyond 2^n"));
        }
        Ok(BooleanFunction { n, words })
    }

    /// Single-word constructor for n <= 6; higher bits are masked off.
    pub fn from_u64(n: usize, table: u64) -> Result<Self> {
        if n > 6 {
            return Err(Error::invalid("from_u64 needs n <= 6"));
        }
        Ok(BooleanFunction {
            n,
            words: vec![table & table_mask(n)],
        })
    }

    pub fn from_bits(n: usize, bits: &[bool]) -> Result<Self> {
        check_vars(n)?;
        if bits.len() != 1 << n {
            return Err(Error::invalid(format!(
                "truth table length {} is not 2^{n}",
                bits.len()
            )));
        }
        Self::from_fn(n, |x| bits[x as usize])
    }

    /// The coordinate function x -> x_i (1-based variable index).
    pub fn variable(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::invalid(format!(
                "variable x{i} out of range for n={n}"
            )));
        }
        Self::from_fn(n, |x| (x >> (i - 1)) & 1 == 1)
    }

    /// The linear function x -> <a, x>.
    pub fn linear(n: usize, a: u32) -> Result<Self> {
        Self::from_fn(n, |x| (a & x).count_ones() & 1 == 1)
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The packed table for n <= 6.
    pub fn as_u64(&self) -> Option<u64> {
        (self.n <= 6).then(|| self.words[0])
    }

    #[inline]
    pub fn get(&self, x: u32) -> bool {
        let x = x as usize;
        (self.words[x >> 6] >> (x & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, x: u32, value: bool) {
        let x = x as usize;
        let bit = 1u64 << (x & 63);
        if value {
            self.words[x >> 6] |= bit;
        } else {
            self.words[x >> 6] &= !bit;
        }
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.len() as u32).map(|x| self.get(x)).collect()
    }

    /// Hamming weight, i.e. the size of the support.
    pub fn weight(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn is_constant(&self) -> bool {
        let w = self.weight() as usize;
        w == 0 || w == self.len()
    }

    /// x -> f(x + a).
    pub fn translate(&self, a: u32) -> BooleanFunction {
        let mut out = BooleanFunction {
            n: self.n,
            words: vec![0; self.words.len()],
        };
        for x in 0..self.len() as u32 {
            if self.get(x ^ a) {
                out.set(x, true);
            }
        }
        out
    }

    /// x -> f(perm(x)) for an arbitrary map on F_2^n given pointwise.
    pub fn compose(&self, map: impl Fn(u32) -> u32) -> BooleanFunction {
        let mut out = BooleanFunction {
            n: self.n,
            words: vec![0; self.words.len()],
        };
        for x in 0..self.len() as u32 {
            if self.get(map(x)) {
                out.set(x, true);
            }
        }
        out
    }
}

/// In-place binary Moebius transform of a packed table. It is an involution and maps
/// a truth table to its ANF coefficient vector and back.
pub(crate) fn mobius_in_place(n: usize, words: &mut [u64]) {
    for (i, &mask) in LOW_MASKS.iter().enumerate().take(n.min(6)) {
        let shift = 1u32 << i;
        for w in words.iter_mut() {
            *w ^= (*w & mask) << shift;
        }
    }
    for i in 6..n {
        let stride = 1usize << (i - 6);
        let mut base = 0;
        while base < words.len() {
            for j in base..base + stride {
                words[j + stride] ^= words[j];
            }
            base += 2 * stride;
        }
    }
}

/// Moebius transform on a single-word table (n <= 6).
#[inline]
pub fn mobius_u64(n: usize, mut w: u64) -> u64 {
    for (i, &mask) in LOW_MASKS.iter().enumerate().take(n) {
        w ^= (w & mask) << (1u32 << i);
    }
    w
}

impl BitXor for &BooleanFunction {
    type Output = BooleanFunction;

    fn bitxor(self, rhs: &BooleanFunction) -> BooleanFunction {
        assert_eq!(
            self.n, rhs.n,
            "xor of functions with different variable counts"
        );
        BooleanFunction {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&rhs.words)
                .map(|(a, b)| a ^ b)
                .collect(),
        }
    }
}

impl BitXor for BooleanFunction {
    type Output = BooleanFunction;

    fn bitxor(self, rhs: BooleanFunction) -> BooleanFunction {
        &self ^ &rhs
    }
}

impl BitXorAssign<&BooleanFunction> for BooleanFunction {
    fn bitxor_assign(&mut self, rhs: &BooleanFunction) {
        assert_eq!(
            self.n, rhs.n,
            "xor of functions with different variable counts"
        );
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

impl Not for BooleanFunction {
    type Output = BooleanFunction;

    fn not(mut self) -> BooleanFunction {
        let mask = table_mask(self.n);
        for w in self.words.iter_mut() {
            *w = !*w & mask;
        }
        self
    }
}

impl Not for &BooleanFunction {
    type Output = BooleanFunction;

    fn not(self) -> BooleanFunction {
        !self.clone()
    }
}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BooleanFunction(n={}, 0x", self.n)?;
        for w in self.words.iter().rev() {
            if self.n >= 6 {
                write!(f, "{w:016x}")?;
            } else {
                write!(f, "{w:x}")?;
            }
        }
        write!(f, ")")
    }
}
