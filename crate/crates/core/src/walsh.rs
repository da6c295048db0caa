//! Walsh-Hadamard spectra, bentness, nonlinearity and duals.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::function::{table_mask, BooleanFunction, VectorialFunction};

/// W_f(a) = sum_x (-1)^(f(x) + <a,x>), indexed like truth tables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WalshSpectrum {
    pub n: usize,
    pub values: Vec<i32>,
}

impl WalshSpectrum {
    pub fn max_abs(&self) -> u32 {
        self.values
            .iter()
            .map(|v| v.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    pub fn parseval_sum(&self) -> i64 {
        self.values.iter().map(|&v| (v as i64) * (v as i64)).sum()
    }

    pub fn is_flat(&self) -> bool {
        if self.n % 2 == 1 {
            return false;
        }
        let r = 1u32 << (self.n / 2);
        self.values.iter().all(|v| v.unsigned_abs() == r)
    }
}

pub fn walsh_transform(f: &BooleanFunction) -> WalshSpectrum {
    let n = f.num_vars();
    let mut v: Vec<i32> = (0..f.len() as u32)
        .map(|x| if f.get(x) { -1 } else { 1 })
        .collect();
    let mut h = 1;
    while h < v.len() {
        for block in v.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (s, d) = (*a + *b, *a - *b);
                *a = s;
                *b = d;
            }
        }
        h *= 2;
    }
    WalshSpectrum { n, values: v }
}

/// W_F(a, b) for a fixed nonzero b, as the spectrum of the component F_b.
pub fn component_spectrum(f: &VectorialFunction, b: u32) -> Result<WalshSpectrum> {
    Ok(walsh_transform(&f.component(b)?))
}

/// 2^(n-1) - max_{a, b != 0} |W_F(a,b)| / 2.
pub fn nonlinearity(f: &VectorialFunction) -> u32 {
    let n = f.num_vars();
    let max = f
        .components()
        .iter()
        .map(|c| walsh_transform(c).max_abs())
        .max()
        .unwrap_or(0);
    (1u32 << n >> 1) - max / 2
}

pub fn nonlinearity_boolean(f: &BooleanFunction) -> u32 {
    (1u32 << f.num_vars() >> 1) - walsh_transform(f).max_abs() / 2
}

/// True iff every nonzero component has a flat spectrum.
pub fn is_bent(f: &VectorialFunction) -> bool {
    let n = f.num_vars();
    if n % 2 == 1 || n == 0 || f.num_outputs() > n / 2 {
        return false;
    }
    f.components().iter().all(is_bent_boolean)
}

pub fn is_bent_boolean(f: &BooleanFunction) -> bool {
    let n = f.num_vars();
    if n % 2 == 1 || n == 0 {
        return false;
    }
    is_bent_packed(n, f.words())
}

/// The dual: f~(a) = 0 iff W_f(a) = +2^(n/2).
pub fn dual(f: &BooleanFunction) -> Result<BooleanFunction> {
    let w = walsh_transform(f);
    if !w.is_flat() {
        return Err(Error::NotBent(Some(
            "dual requested for a non-bent function".into(),
        )));
    }
    BooleanFunction::from_fn(f.num_vars(), |a| w.values[a as usize] < 0)
}

/// deg(F) <= n/2, the degree bound every bent function satisfies.
pub fn degree_bound_check(f: &VectorialFunction) -> bool {
    f.degree() as usize <= f.num_vars() / 2
}

// Truth tables of x1..x6 within one 64-bit word.
const VAR_WORDS: [u64; 6] = [
    0xaaaa_aaaa_aaaa_aaaa,
    0xcccc_cccc_cccc_cccc,
    0xf0f0_f0f0_f0f0_f0f0,
    0xff00_ff00_ff00_ff00,
    0xffff_0000_ffff_0000,
    0xffff_ffff_0000_0000,
];

/// Truth tables of all 64 linear functions of x1..x6.
pub fn linear_words() -> &'static [u64; 64] {
    static TABLE: OnceLock<[u64; 64]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [0u64; 64];
        for (a, slot) in t.iter_mut().enumerate() {
            *slot = (0..6)
                .filter(|i| a >> i & 1 == 1)
                .fold(0, |acc, i| acc ^ VAR_WORDS[i]);
        }
        t
    })
}

/// Bentness of a single-word table (n even, 2 <= n <= 6) without a full spectrum:
/// f is bent iff wt(f + l_a) is 2^(n-1) +- 2^(n/2-1) for every linear l_a.
#[inline(always)]
pub fn bent_word_kernel(n: usize, table: u64, lin: &[u64; 64]) -> bool {
    let mask = table_mask(n);
    let lo = (1u32 << (n - 1)) - (1u32 << (n / 2 - 1));
    let hi = (1u32 << (n - 1)) + (1u32 << (n / 2 - 1));
    for &l in &lin[..1 << n] {
        let w = ((table ^ l) & mask).count_ones();
        if w != lo && w != hi {
            return false;
        }
    }
    true
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "popcnt")]
unsafe fn bent_word_popcnt(n: usize, table: u64, lin: &[u64; 64]) -> bool {
    bent_word_kernel(n, table, lin)
}

pub(crate) fn has_popcnt() -> bool {
    #[cfg(target_arch = "x86_64")]
    {
        static DETECTED: OnceLock<bool> = OnceLock::new();
        *DETECTED.get_or_init(|| std::arch::is_x86_feature_detected!("popcnt"))
    }
    #[cfg(not(target_arch = "x86_64"))]
    {
        false
    }
}

/// Single-word bentness test, dispatching to a hardware popcount when available.
pub fn is_bent_word(n: usize, table: u64) -> bool {
    if n % 2 == 1 || n == 0 || n > 6 {
        return false;
    }
    let lin = linear_words();
    #[cfg(target_arch = "x86_64")]
    if has_popcnt() {
        // SAFETY: the popcnt feature was detected at runtime.
        return unsafe { bent_word_popcnt(n, table, lin) };
    }
    bent_word_kernel(n, table, lin)
}

/// Bentness test on a packed truth table of any supported even n.
pub fn is_bent_packed(n: usize, words: &[u64]) -> bool {
    if n % 2 == 1 || n == 0 {
        return false;
    }
    if n <= 6 {
        return is_bent_word(n, words[0]);
    }
    let lin = linear_words();
    let lo = (1u32 << (n - 1)) - (1u32 << (n / 2 - 1));
    let hi = (1u32 << (n - 1)) + (1u32 << (n / 2 - 1));
    for a in 0..1usize << n {
        let low = lin[a & 63];
        let high = a >> 6;
        let w: u32 = words
            .iter()
            .enumerate()
            .map(|(j, &word)| {
                let flip = if (high & j).count_ones() & 1 == 1 {
                    !0
                } else {
                    0
                };
                (word ^ low ^ flip).count_ones()
            })
            .sum();
        if w != lo && w != hi {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::Anf;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn naive(f: &BooleanFunction) -> Vec<i32> {
        let len = f.len() as u32;
        (0..len)
            .map(|a| {
                (0..len)
                    .map(|x| {
                        if f.get(x) ^ ((a & x).count_ones() & 1 == 1) {
                            -1
                        } else {
                            1
                        }
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn small_hand_spectra() {
        let zero = BooleanFunction::zero(2).unwrap();
        assert_eq!(walsh_transform(&zero).values, vec![4, 0, 0, 0]);
        let and = Anf::parse(2, "x1*x2").unwrap().to_table();
        assert_eq!(walsh_transform(&and).values, vec![2, 2, 2, -2]);
    }

    #[test]
    fn butterfly_matches_naive_exhaustively_for_small_n() {
        for n in 1..=4usize {
            for t in 0..(1u64 << (1 << n)) {
                let f = BooleanFunction::from_u64(n, t).unwrap();
                let w = walsh_transform(&f);
                assert_eq!(w.values, naive(&f));
                assert_eq!(w.parseval_sum(), 1i64 << (2 * n));
                assert_eq!(is_bent_boolean(&f), w.is_flat(), "n={n} t={t:#x}");
            }
        }
    }

    #[test]
    fn butterfly_matches_naive_on_random_larger_tables() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 6..=10usize {
            for _ in 0..3 {
                let f = BooleanFunction::from_fn(n, |_| rng.gen()).unwrap();
                assert_eq!(walsh_transform(&f).values, naive(&f));
            }
        }
    }

    #[test]
    fn packed_kernel_agrees_on_wide_bent_functions() {
        let f = Anf::parse(8, "x1*x5 + x2*x6 + x3*x7 + x4*x8 + x1*x2*x3")
            .unwrap()
            .to_table();
        assert!(is_bent_boolean(&f));
        assert!(walsh_transform(&f).is_flat());
        let g = &f ^ &Anf::parse(8, "x1*x2*x3*x4").unwrap().to_table();
        assert_eq!(is_bent_boolean(&g), walsh_transform(&g).is_flat());
    }

    #[test]
    fn dual_of_quadratics() {
        let and = Anf::parse(2, "x1*x2").unwrap().to_table();
        assert_eq!(dual(&and).unwrap(), and);
        let q = Anf::parse(6, "x1*x4 + x2*x5 + x3*x6").unwrap().to_table();
        assert_eq!(dual(&q).unwrap(), q);
        assert!(matches!(
            dual(&BooleanFunction::zero(4).unwrap()),
            Err(Error::NotBent(_))
        ));
    }

    #[test]
    fn nonlinearity_values() {
        let zero = VectorialFunction::from_boolean(BooleanFunction::zero(4).unwrap());
        assert_eq!(nonlinearity(&zero), 0);
        let q = Anf::parse(6, "x1*x4 + x2*x5 + x3*x6").unwrap().to_table();
        assert_eq!(nonlinearity(&VectorialFunction::from_boolean(q)), 28);
    }

    #[test]
    fn too_many_outputs_is_not_bent() {
        let f = VectorialFunction::parse(
            4,
            &["x1*x3 + x2*x4", "x1*x4 + x2*x3 + x2*x4", "x1*x2"],
            false,
        )
        .unwrap();
        assert!(!is_bent(&f));
    }

    #[test]
    fn degree_bound() {
        let cubic = VectorialFunction::parse(6, &["x1*x2*x3 + x4*x5"], false).unwrap();
        assert!(degree_bound_check(&cubic));
        let quartic = VectorialFunction::parse(6, &["x1*x2*x3*x4"], false).unwrap();
        assert!(!degree_bound_check(&quartic));
    }
}
