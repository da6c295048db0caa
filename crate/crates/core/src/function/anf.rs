use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::boolean::{mobius_in_place, word_count, BooleanFunction, MAX_VARS};
use crate::error::{Error, Result};

/// Algebraic normal form: a set of monomials over F_2.
///
/// A monomial is a bit mask of variables (bit i-1 for x_i); the zero mask is the
/// constant 1. Monomials are kept sorted by mask value and never repeat.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Anf {
    n: usize,
    monomials: Vec<u32>,
}

impl Anf {
    /// Builds an ANF from a list of monomial masks. Repeated masks cancel in pairs.
    pub fn new(n: usize, masks: impl IntoIterator<Item = u32>) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::invalid(format!(
                "{n} variables requested, at most {MAX_VARS} are supported"
            )));
        }
        let mut monomials: Vec<u32> = masks.into_iter().collect();
        if let Some(bad) = monomials.iter().find(|&&m| m >> n != 0) {
            return Err(Error::invalid(format!(
                "monomial mask {bad:#x} uses variables beyond x{n}"
            )));
        }
        monomials.sort_unstable();
        let mut out: Vec<u32> = Vec::with_capacity(monomials.len());
        for m in monomials {
            if out.last() == Some(&m) {
                out.pop();
            } else {
                out.push(m);
            }
        }
        Ok(Anf { n, monomials: out })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn monomials(&self) -> &[u32] {
        &self.monomials
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.monomials
            .iter()
            .map(|m| m.count_ones())
            .max()
            .unwrap_or(0)
    }

    pub fn contains(&self, mask: u32) -> bool {
        self.monomials.binary_search(&mask).is_ok()
    }

    /// Evaluates the polynomial from its truth table.
    pub fn to_table(&self) -> BooleanFunction {
        let mut words = vec![0u64; word_count(self.n)];
        for &m in &self.monomials {
            words[(m >> 6) as usize] |= 1u64 << (m & 63);
        }
        mobius_in_place(self.n, &mut words);
        BooleanFunction::from_words(self.n, words).expect("Moebius transform keeps the table width")
    }

    pub fn from_table(f: &BooleanFunction) -> Anf {
        let n = f.num_vars();
        let mut words = f.words().to_vec();
        mobius_in_place(n, &mut words);
        let mut monomials = Vec::new();
        for (i, &w) in words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros();
                monomials.push((i as u32) << 6 | b);
                w &= w - 1;
            }
        }
        Anf { n, monomials }
    }

    /// Drops every monomial of degree at most one.
    pub fn strip_affine(&self) -> Anf {
        Anf {
            n: self.n,
            monomials: self
                .monomials
                .iter()
                .copied()
                .filter(|m| m.count_ones() >= 2)
                .collect(),
        }
    }

    /// Keeps only the monomials of exactly the given degree.
    pub fn homogeneous_part(&self, degree: u32) -> Anf {
        Anf {
            n: self.n,
            monomials: self
                .monomials
                .iter()
                .copied()
                .filter(|m| m.count_ones() == degree)
                .collect(),
        }
    }

    /// Parses the `x1*x2 + x3 + 1` grammar; `⊕` is accepted in place of `+`.
    pub fn parse(n: usize, text: &str) -> Result<Anf> {
        let mut masks = Vec::new();
        for term in split_terms(text)? {
            let compact: String = term.chars().filter(|c| !c.is_whitespace()).collect();
            match compact.as_str() {
                "1" => masks.push(0),
                "0" => {}
                _ => {
                    let mut mask = 0u32;
                    for factor in compact.split('*') {
                        let idx = factor
                            .strip_prefix('x')
                            .or_else(|| factor.strip_prefix('X'))
                            .ok_or_else(|| {
                                Error::parse(format!("bad factor {factor:?} in term {term:?}"))
                            })?;
                        let i: usize = idx.parse().map_err(|_| {
                            Error::parse(format!("bad variable index in {factor:?}"))
                        })?;
                        if i == 0 || i > n {
                            return Err(Error::parse(format!(
                                "variable x{i} out of range for n={n}"
                            )));
                        }
                        mask |= 1 << (i - 1);
                    }
                    masks.push(mask);
                }
            }
        }
        Anf::new(n, masks)
    }

    /// Parses the digit shorthand `14 ⊕ 25 ⊕ 3 6 ⊕ 123`, where every digit names a
    /// variable and `()` is the constant term. Only meaningful for n <= 9.
    pub fn parse_digits(n: usize, text: &str) -> Result<Anf> {
        if n > 9 {
            return Err(Error::invalid("digit shorthand only supports n <= 9"));
        }
        if text.trim() == "0" {
            return Anf::zero(n);
        }
        let mut masks = Vec::new();
        for term in split_terms(text)? {
            if term == "()" {
                masks.push(0);
                continue;
            }
            let mut mask = 0u32;
            for c in term.chars().filter(|c| !c.is_whitespace()) {
                let d = c
                    .to_digit(10)
                    .ok_or_else(|| Error::parse(format!("unexpected {c:?} in term {term:?}")))?
                    as usize;
                if d == 0 || d > n {
                    return Err(Error::parse(format!("variable {d} out of range for n={n}")));
                }
                if mask & (1 << (d - 1)) != 0 {
                    return Err(Error::parse(format!(
                        "variable {d} repeated in term {term:?}"
                    )));
                }
                mask |= 1 << (d - 1);
            }
            masks.push(mask);
        }
        Anf::new(n, masks)
    }

    fn graded_cmp(a: u32, b: u32) -> Ordering {
        a.count_ones()
            .cmp(&b.count_ones())
            .then_with(|| a.reverse_bits().cmp(&b.reverse_bits()).reverse())
    }

    /// Monomials in display order: by degree, then lexicographically by variable list.
    pub fn graded_monomials(&self) -> Vec<u32> {
        let mut out = self.monomials.clone();
        out.sort_by(|&a, &b| Self::graded_cmp(a, b));
        out
    }

    /// Digit shorthand rendering, e.g. `14 ⊕ 25 ⊕ 36`; the constant term is `()`.
    pub fn to_digit_string(&self) -> String {
        if self.monomials.is_empty() {
            return "0".into();
        }
        self.graded_monomials()
            .into_iter()
            .map(|m| {
                if m == 0 {
                    "()".to_string()
                } else {
                    (0..self.n)
                        .filter(|i| m >> i & 1 == 1)
                        .map(|i| char::from(b'1' + i as u8))
                        .collect()
                }
            })
            .collect::<Vec<_>>()
            .join(" ⊕ ")
    }
}

fn split_terms(text: &str) -> Result<Vec<&str>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::parse("empty ANF"));
    }
    let normalized: Vec<&str> = text
        .split(['+', '⊕'])
        .flat_map(|t| t.split("\\oplus"))
        .map(str::trim)
        .collect();
    if normalized.iter().any(|t| t.is_empty()) {
        return Err(Error::parse(format!("empty term in {text:?}")));
    }
    Ok(normalized)
}

impl fmt::Display for Anf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return write!(f, "0");
        }
        for (k, m) in self.graded_monomials().into_iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m == 0 {
                write!(f, "1")?;
                continue;
            }
            let mut first = true;
            for i in 0..self.n {
                if m >> i & 1 == 1 {
                    if !first {
                        write!(f, "*")?;
                    }
                    write!(f, "x{}", i + 1)?;
                    first = false;
                }
            }
        }
        Ok(())
    }
}

/// Parses with the variable count inferred from the highest variable index.
impl FromStr for Anf {
    type Err = Error;

    fn from_str(s: &str) -> Result<Anf> {
        let n = max_variable_index(s);
        Anf::parse(n, s)
    }
}

/// Highest `x<i>` index mentioned in a `x1*x2 + ...` string, or 0.
pub fn max_variable_index(s: &str) -> usize {
    let mut best = 0;
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'x' || bytes[i] == b'X' {
            let start = i + 1;
            let mut j = start;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if let Ok(v) = s[start..j].parse::<usize>() {
                best = best.max(v);
            }
            i = j;
        } else {
            i += 1;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_and_gate() {
        let a = Anf::new(2, [3]).unwrap();
        assert_eq!(a.to_table().to_bits(), vec![false, false, false, true]);
        assert_eq!(Anf::from_table(&a.to_table()), a);
    }

    #[test]
    fn constant_one_and_zero() {
        let one = BooleanFunction::one(2).unwrap();
        assert_eq!(Anf::from_table(&one).monomials(), &[0]);
        assert_eq!(Anf::zero(3).unwrap().to_table().weight(), 0);
    }

    #[test]
    fn duplicates_cancel_and_bad_masks_rejected() {
        assert!(Anf::new(3, [1, 1, 2]).unwrap().monomials() == [2]);
        assert!(Anf::new(2, [4]).is_err());
    }

    #[test]
    fn display_is_graded() {
        let a = Anf::parse_digits(6, "1 2 3 ⊕ 3 6 ⊕ 14 ⊕ 2 5").unwrap();
        assert_eq!(a.to_string(), "x1*x4 + x2*x5 + x3*x6 + x1*x2*x3");
        assert_eq!(a.to_digit_string(), "14 ⊕ 25 ⊕ 36 ⊕ 123");
        assert_eq!(Anf::parse(6, &a.to_string()).unwrap(), a);
        assert_eq!(a.degree(), 3);
    }

    #[test]
    fn parse_accepts_constants_and_oplus() {
        let a = Anf::parse(3, " x1 ⊕ 1 + x2 * x3 ").unwrap();
        assert_eq!(a.monomials(), &[0, 1, 6]);
        assert_eq!(a.to_string(), "1 + x1 + x2*x3");
        assert_eq!(Anf::parse(3, "0").unwrap().to_string(), "0");
        assert!(Anf::parse(3, "x4").is_err());
        assert!(Anf::parse(3, "x1 + ").is_err());
        assert!(Anf::parse(3, "y1").is_err());
        assert_eq!("x1*x7".parse::<Anf>().unwrap().num_vars(), 7);
    }

    #[test]
    fn digit_shorthand_accepts_latex_oplus() {
        let a = Anf::parse_digits(6, "1 4 \\oplus  2 5 \\oplus 3 6").unwrap();
        assert_eq!(a.monomials(), &[9, 18, 36]);
        assert!(Anf::parse_digits(10, "1").is_err());
        assert!(Anf::parse_digits(4, "15").is_err());
    }

    #[test]
    fn strip_affine_is_idempotent() {
        let a = Anf::parse(2, "x1 + x1*x2 + 1").unwrap();
        let s = a.strip_affine();
        assert_eq!(s.to_string(), "x1*x2");
        assert_eq!(s.strip_affine(), s);
    }
}
