//! Smith normal forms of 0/1 integer matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

/// Nonzero elementary divisors with multiplicities, in increasing divisor order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct SnfMultiset {
    entries: Vec<(BigUint, usize)>,
}

impl SnfMultiset {
    /// Builds the multiset from a list of nonzero divisors in any order.
    pub fn from_divisors(divisors: impl IntoIterator<Item = BigUint>) -> Result<Self> {
        let mut counts: BTreeMap<BigUint, usize> = BTreeMap::new();
        for d in divisors {
            if d.is_zero() {
                return Err(Error::invalid("elementary divisors must be nonzero"));
            }
            *counts.entry(d).or_default() += 1;
        }
        let entries: Vec<(BigUint, usize)> = counts.into_iter().collect();
        let s = SnfMultiset { entries };
        s.check_chain()?;
        Ok(s)
    }

    /// Builds the multiset from 2-adic valuations of the divisors.
    pub fn from_valuations(valuations: &[u32]) -> Self {
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for &v in valuations {
            *counts.entry(v).or_default() += 1;
        }
        SnfMultiset {
            entries: counts
                .into_iter()
                .map(|(v, c)| (BigUint::one() << v, c))
                .collect(),
        }
    }

    fn check_chain(&self) -> Result<()> {
        for w in self.entries.windows(2) {
            if !(&w[1].0 % &w[0].0).is_zero() {
                return Err(Error::invalid(format!(
                    "divisor {} does not divide {}",
                    w[0].0, w[1].0
                )));
            }
        }
        Ok(())
    }

    pub fn entries(&self) -> &[(BigUint, usize)] {
        &self.entries
    }

    /// Multiplicity of a divisor, zero if absent.
    pub fn multiplicity(&self, divisor: u64) -> usize {
        let d = BigUint::from(divisor);
        self.entries
            .iter()
            .find(|(x, _)| *x == d)
            .map_or(0, |(_, c)| *c)
    }

    /// Number of nonzero divisors, i.e. the rank over the rationals.
    pub fn rank(&self) -> usize {
        self.entries.iter().map(|(_, c)| c).sum()
    }

    pub fn all_powers_of_two(&self) -> bool {
        self.entries.iter().all(|(d, _)| d.count_ones() == 1)
    }
}

impl fmt::Display for SnfMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (d, c)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{d}^{c}")?;
        }
        Ok(())
    }
}

impl FromStr for SnfMultiset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut divisors = Vec::new();
        for tok in s.split_whitespace() {
            let (d, c) = tok
                .split_once('^')
                .ok_or_else(|| Error::parse(format!("bad SNF entry {tok:?}")))?;
            let d: BigUint = d
                .parse()
                .map_err(|_| Error::parse(format!("bad divisor in {tok:?}")))?;
            let c: usize = c
                .parse()
                .map_err(|_| Error::parse(format!("bad multiplicity in {tok:?}")))?;
            divisors.extend(std::iter::repeat_n(d, c));
        }
        SnfMultiset::from_divisors(divisors)
    }
}

impl Serialize for SnfMultiset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SnfMultiset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn inverse_mod_2_64(u: u64) -> u64 {
    debug_assert!(u & 1 == 1);
    let mut x = u;
    for _ in 0..6 {
        x = x.wrapping_mul(2u64.wrapping_sub(u.wrapping_mul(x)));
    }
    x
}

/// The 2-primary part of the Smith normal form, by elimination over Z/2^64.
///
/// Odd factors of the divisors are units 2-adically and are not seen; the result
/// equals the full Smith normal form whenever every divisor is a power of two below
/// 2^64, which holds for the incidence matrices of translation designs of bent
/// functions.
pub fn smith_normal_form(m: &BitMatrix) -> SnfMultiset {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<u64> = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            a.push(m.get(r, c) as u64);
        }
    }
    let mut valuations = Vec::new();
    let mut k = 0;
    while k < rows.min(cols) {
        // Pivot on the entry of least 2-adic valuation in the trailing submatrix.
        let mut best: Option<(u32, usize, usize)> = None;
        'scan: for r in k..rows {
            for c in k..cols {
                let x = a[r * cols + c];
                if x != 0 {
                    let v = x.trailing_zeros();
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, r, c));
                        if v == valuations.last().copied().unwrap_or(0) {
                            break 'scan;
                        }
                    }
                }
            }
        }
        let Some((v, pr, pc)) = best else { break };
        if pr != k {
            for c in 0..cols {
                a.swap(k * cols + c, pr * cols + c);
            }
        }
        if pc != k {
            for r in 0..rows {
                a.swap(r * cols + k, r * cols + pc);
            }
        }
        let pivot = a[k * cols + k];
        let unit_inv = inverse_mod_2_64(pivot >> v);
        let (head, tail) = a.split_at_mut((k + 1) * cols);
        let pivot_row = &head[k * cols..];
        for row in tail.chunks_mut(cols) {
            let x = row[k];
            if x == 0 {
                continue;
            }
            let factor = (x >> v).wrapping_mul(unit_inv);
            for c in k..cols {
                row[c] = row[c].wrapping_sub(factor.wrapping_mul(pivot_row[c]));
            }
        }
        valuations.push(v);
        k += 1;
    }
    SnfMultiset::from_valuations(&valuations)
}

/// Full Smith normal form over the integers with arbitrary-precision arithmetic.
/// Cubic with large constants; intended as a reference for small matrices.
pub fn smith_normal_form_exact(m: &BitMatrix) -> SnfMultiset {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|r| (0..cols).map(|c| BigInt::from(m.get(r, c) as u8)).collect())
        .collect();
    let mut divisors = Vec::new();
    for k in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry of the trailing submatrix becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for (r, row) in a.iter().enumerate().skip(k) {
                for (c, x) in row.iter().enumerate().skip(k) {
                    if !x.is_zero() && best.is_none_or(|(br, bc)| x.abs() < a[br][bc].abs()) {
                        best = Some((r, c));
                    }
                }
            }
            let Some((pr, pc)) = best else {
                return SnfMultiset::from_divisors(divisors).expect("Smith chain");
            };
            a.swap(k, pr);
            for row in a.iter_mut() {
                row.swap(k, pc);
            }
            let mut clean = true;
            for r in k + 1..rows {
                if a[r][k].is_zero() {
                    continue;
                }
                let q = &a[r][k] / &a[k][k];
                let (top, rest) = a.split_at_mut(r);
                for (x, y) in rest[0][k..].iter_mut().zip(&top[k][k..]) {
                    *x -= &q * y;
                }
                clean &= a[r][k].is_zero();
            }
            for c in k + 1..cols {
                if a[k][c].is_zero() {
                    continue;
                }
                let q = &a[k][c] / &a[k][k];
                for row in a.iter_mut().skip(k) {
                    let t = &q * &row[k];
                    row[c] -= t;
                }
                clean &= a[k][c].is_zero();
            }
            if !clean {
                continue;
            }
            // The pivot must divide the rest; otherwise fold an offending row in.
            let p = a[k][k].clone();
            let bad = (k + 1..rows).find(|&r| a[r][k + 1..].iter().any(|x| !(x % &p).is_zero()));
            match bad {
                Some(r) => {
                    let (top, rest) = a.split_at_mut(r);
                    for (x, y) in top[k][k..].iter_mut().zip(&rest[0][k..]) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        divisors.push(a[k][k].abs().to_biguint().expect("absolute value"));
    }
    SnfMultiset::from_divisors(divisors).expect("Smith chain")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_has_unit_divisors() {
        let s = smith_normal_form(&BitMatrix::identity(9));
        assert_eq!(s.to_string(), "1^9");
        assert_eq!(
            smith_normal_form_exact(&BitMatrix::identity(4)).to_string(),
            "1^4"
        );
    }

    #[test]
    fn text_round_trip() {
        let s: SnfMultiset = "1^8 2^15 4^20 8^15 16^6 32^1".parse().unwrap();
        assert_eq!(s.to_string(), "1^8 2^15 4^20 8^15 16^6 32^1");
        assert_eq!(s.rank(), 65);
        assert_eq!(s.multiplicity(4), 20);
        assert!("2^1 3^1".parse::<SnfMultiset>().is_err());
    }

    #[test]
    fn two_by_two_example() {
        // [[1,1],[1,0]] is unimodular; [[1,1],[1,1]] has rank one.
        let m = BitMatrix::from_fn(2, 2, |r, c| !(r == 1 && c == 1));
        assert_eq!(smith_normal_form(&m).to_string(), "1^2");
        let j = BitMatrix::from_fn(2, 2, |_, _| true);
        assert_eq!(smith_normal_form(&j).to_string(), "1^1");
        // Complement of the identity of size 3 has determinant 2.
        let c = BitMatrix::from_fn(3, 3, |r, c| r != c);
        assert_eq!(smith_normal_form(&c).to_string(), "1^2 2^1");
        assert_eq!(smith_normal_form_exact(&c).to_string(), "1^2 2^1");
    }

    #[test]
    fn exact_reports_odd_divisors() {
        // Complement of the 4x4 identity: determinant -3.
        let c = BitMatrix::from_fn(4, 4, |r, c| r != c);
        assert_eq!(smith_normal_form_exact(&c).to_string(), "1^3 3^1");
        assert_eq!(smith_normal_form(&c).to_string(), "1^4");
    }

    #[test]
    fn two_adic_agrees_on_random_matrices_up_to_odd_parts() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let r = rng.gen_range(1..12);
            let c = rng.gen_range(1..12);
            let m = BitMatrix::from_fn(r, c, |_, _| rng.gen_bool(0.4));
            let exact = smith_normal_form_exact(&m);
            let two_adic = smith_normal_form(&m);
            let expected: Vec<u32> = exact
                .entries()
                .iter()
                .flat_map(|(d, k)| std::iter::repeat_n(d.trailing_zeros().unwrap_or(0) as u32, *k))
                .collect();
            assert_eq!(two_adic, SnfMultiset::from_valuations(&expected));
        }
    }
}
