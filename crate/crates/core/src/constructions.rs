//! Maiorana-McFarland and partial-spread bent functions over GF(2^k), the
//! classification catalog for n = 6, and the worked example functions.

use num_bigint::BigUint;

use crate::affine::LinearMap;
use crate::error::{Error, Result};
use crate::function::{Anf, BooleanFunction, VectorialFunction};
use crate::invariants::SnfMultiset;

/// GF(2^k) in polynomial basis; coordinate i of F_2^k is the coefficient of z^(i-1).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Field {
    k: u32,
    modulus: u32,
}

impl Field {
    /// The field with the fixed defining polynomial for degree k (1 <= k <= 8).
    /// GF(8) is F_2[z]/(z^3 + z + 1).
    pub fn new(k: u32) -> Result<Field> {
        let modulus = match k {
            1 => 0b11,
            2 => 0b111,
            3 => 0b1011,
            4 => 0b10011,
            5 => 0b100101,
            6 => 0b1000011,
            7 => 0b10000011,
            8 => 0b100011011,
            _ => return Err(Error::invalid(format!("GF(2^{k}) is not supported"))),
        };
        Ok(Field { k, modulus })
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        1 << self.k
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let mut acc = 0u32;
        let mut a = a;
        let mut b = b;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a >> self.k & 1 == 1 {
                a ^= self.modulus;
            }
        }
        acc
    }

    pub fn pow(&self, a: u32, e: u32) -> u32 {
        let mut result = 1;
        let mut base = a;
        let mut e = e;
        while e != 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// a^(2^k - 2): the inverse for a != 0, and 0 for a = 0.
    pub fn inv0(&self, a: u32) -> u32 {
        self.pow(a, self.order() - 2)
    }

    /// Evaluates the univariate polynomial sum_e z^e given by its exponents.
    pub fn eval_monomials(&self, exponents: &[u32], z: u32) -> u32 {
        exponents.iter().fold(0, |acc, &e| acc ^ self.pow(z, e))
    }

    /// Value table of z -> sum_e z^e.
    pub fn polynomial_map(&self, exponents: &[u32]) -> Vec<u32> {
        (0..self.order())
            .map(|z| self.eval_monomials(exponents, z))
            .collect()
    }
}

pub fn is_permutation(values: &[u32]) -> bool {
    let mut seen = vec![false; values.len()];
    values.iter().all(|&v| {
        let v = v as usize;
        v < seen.len() && !std::mem::replace(&mut seen[v], true)
    })
}

/// Every value in F_2^m is hit exactly |domain| / 2^m times.
pub fn is_balanced(values: &[u32], m: usize) -> bool {
    let size = 1usize << m;
    if !values.len().is_multiple_of(size) {
        return false;
    }
    let mut counts = vec![0usize; size];
    for &v in values {
        if v as usize >= size {
            return false;
        }
        counts[v as usize] += 1;
    }
    counts.iter().all(|&c| c == values.len() / size)
}

/// F(x, y) = L(x * pi(y)) + G(y) on GF(2^k) x GF(2^k), x in the low k input bits.
pub fn mm_bent(field: &Field, pi: &[u32], l: &LinearMap, g: &[u32]) -> Result<VectorialFunction> {
    let k = field.degree() as usize;
    let q = field.order() as usize;
    if pi.len() != q || !is_permutation(pi) {
        return Err(Error::invalid("pi is not a permutation of the field"));
    }
    if l.inputs() != k || l.rank() != l.outputs() {
        return Err(Error::invalid(
            "L must be a surjective linear map from the field",
        ));
    }
    let m = l.outputs();
    if g.len() != q || g.iter().any(|&v| v >> m != 0) {
        return Err(Error::invalid("G must map the field into F_2^m"));
    }
    let mask = (1u32 << k) - 1;
    let values: Vec<u32> = (0..1u32 << (2 * k))
        .map(|z| {
            let (x, y) = (z & mask, z >> k);
            l.apply(field.mul(x, pi[y as usize])) ^ g[y as usize]
        })
        .collect();
    VectorialFunction::from_values(2 * k, m, &values)
}

/// F(x, y) = H(x / y) with x / 0 = 0; H maps GF(2^k) into F_2^m and must be balanced.
pub fn psap_bent(field: &Field, h: &[u32], m: usize) -> Result<VectorialFunction> {
    let k = field.degree() as usize;
    if h.len() != field.order() as usize || !is_balanced(h, m) {
        return Err(Error::invalid("H is not a balanced map of the field"));
    }
    let mask = (1u32 << k) - 1;
    let values: Vec<u32> = (0..1u32 << (2 * k))
        .map(|z| {
            let (x, y) = (z & mask, z >> k);
            h[field.mul(x, field.inv0(y)) as usize]
        })
        .collect();
    VectorialFunction::from_values(2 * k, m, &values)
}

/// The balanced maps pi_1..pi_4 of GF(8), as exponent lists.
pub const GF8_BALANCED: [&[u32]; 4] = [&[1], &[3], &[1, 3, 5], &[2, 3, 4, 5, 6]];

/// The two added terms G(y) used with pi_1 and pi_2.
pub const GF8_MM_SHIFT_A: &[u32] = &[1, 2, 3, 6];
pub const GF8_MM_SHIFT_B: &[u32] = &[3, 5, 6, 7];

/// A classical construction of a (6,3)-bent function and the catalog class it belongs to.
#[derive(Clone, Debug)]
pub struct ClassicalRow {
    pub label: &'static str,
    pub class: usize,
    pub function: VectorialFunction,
}

/// The Maiorana-McFarland and partial-spread (6,3)-bent functions over GF(8)
/// with the catalog class each is expected to fall into.
pub fn gf8_classical_rows() -> Result<Vec<ClassicalRow>> {
    let f = Field::new(3)?;
    let id = LinearMap::identity(3);
    let zero = vec![0u32; 8];
    let pi = |i: usize| f.polynomial_map(GF8_BALANCED[i - 1]);
    let shift_a = f.polynomial_map(GF8_MM_SHIFT_A);
    let shift_b = f.polynomial_map(GF8_MM_SHIFT_B);
    let mm = |label, class, p: Vec<u32>, g: &[u32]| -> Result<ClassicalRow> {
        Ok(ClassicalRow {
            label,
            class,
            function: mm_bent(&f, &p, &id, g)?,
        })
    };
    let ps = |label, class, h: Vec<u32>| -> Result<ClassicalRow> {
        Ok(ClassicalRow {
            label,
            class,
            function: psap_bent(&f, &h, 3)?,
        })
    };
    Ok(vec![
        mm("x*pi1(y)", 1, pi(1), &zero)?,
        mm("x*pi1(y) + (y + y^2 + y^3 + y^6)", 2, pi(1), &shift_a)?,
        mm("x*pi1(y) + (y^3 + y^5 + y^6 + y^7)", 4, pi(1), &shift_b)?,
        mm("x*pi4(y)", 5, pi(4), &zero)?,
        mm("x*pi3(y)", 8, pi(3), &zero)?,
        mm("x*pi2(y) + (y + y^2 + y^3 + y^6)", 10, pi(2), &shift_a)?,
        mm("x*pi2(y)", 11, pi(2), &zero)?,
        ps("pi1(x/y)", 11, pi(1))?,
        ps("pi3(x/y)", 12, pi(3))?,
        ps("pi4(x/y)", 13, pi(4))?,
    ])
}

/// Published data for one EA class of (6,m)-bent functions.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub m: usize,
    pub index: usize,
    /// Coordinate ANFs in digit shorthand.
    pub coords: &'static [&'static str],
    /// Smith normal form of the incidence matrix of the graph translation design.
    pub snf: &'static str,
    /// Prime factorization of the automorphism group order of the code C(F).
    pub code_aut: &'static [(u32, u32)],
    /// Factorization of |Aut(dev(G_F))| / |Aut(C(F))|.
    pub dev_aut_ratio: &'static [(u32, u32)],
}

impl CatalogEntry {
    pub fn id(&self) -> String {
        format!("C{}_{}", self.m, self.index)
    }

    pub fn function(&self) -> VectorialFunction {
        VectorialFunction::parse(6, self.coords, true).expect("catalog ANFs are well formed")
    }

    pub fn expected_snf(&self) -> SnfMultiset {
        self.snf.parse().expect("catalog SNFs are well formed")
    }

    pub fn code_aut_order(&self) -> BigUint {
        factored(self.code_aut)
    }

    /// |Aut(dev(G_F))|, derived from the code automorphism order and the ratio.
    pub fn dev_aut_order(&self) -> BigUint {
        self.code_aut_order() * factored(self.dev_aut_ratio)
    }
}

fn factored(factors: &[(u32, u32)]) -> BigUint {
    factors.iter().fold(BigUint::from(1u32), |acc, &(p, e)| {
        acc * BigUint::from(p).pow(e)
    })
}

const Q1: &str = "14 ⊕ 25 ⊕ 36";
const Q1C: &str = "14 ⊕ 25 ⊕ 36 ⊕ 123";
const Q2: &str = "15 ⊕ 16 ⊕ 24 ⊕ 25 ⊕ 34";
const B3: &str = "12 ⊕ 14 ⊕ 26 ⊕ 35 ⊕ 45 ⊕ 123 ⊕ 245";
const B4: &str = "14 ⊕ 26 ⊕ 34 ⊕ 35 ⊕ 36 ⊕ 45 ⊕ 46 ⊕ 123 ⊕ 245 ⊕ 346";
const S3: &str = "13 ⊕ 15 ⊕ 23 ⊕ 46 ⊕ 124";
const S5: &str = "13 ⊕ 23 ⊕ 24 ⊕ 35 ⊕ 56 ⊕ 126 ⊕ 235";
const S7: &str = "12 ⊕ 35 ⊕ 46 ⊕ 124 ⊕ 134 ⊕ 235 ⊕ 236 ⊕ 245";

const SNF1_12: &str = "1^8 2^15 4^20 8^15 16^6 32^1";
const SNF2_89: &str = "1^42 2^22 4^41 8^34 16^28 32^24 64^2";
const SNF3_8: &str = "1^100 2^36 4^36 8^169 16^36 32^36 64^36";
const SNF3_9: &str = "1^106 2^36 4^30 8^169 16^30 32^36 64^42";

/// Representatives of the EA classes of (6,m)-bent functions, m = 1, 2, 3, with
/// the invariants published for them. Representatives of consecutive layers are
/// nested: dropping the last coordinate of a (6,m+1) entry gives a (6,m) entry.
pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry { m: 1, index: 1, coords: &[Q1], snf: SNF1_12, code_aut: &[(2, 15), (3, 4), (5, 1), (7, 1)], dev_aut_ratio: &[(2, 13), (7, 1), (31, 1)] },
    CatalogEntry { m: 1, index: 2, coords: &[Q1C], snf: SNF1_12, code_aut: &[(2, 15), (3, 1), (7, 1)], dev_aut_ratio: &[(2, 13), (3, 3), (5, 1), (7, 1), (31, 1)] },
    CatalogEntry { m: 1, index: 3, coords: &[B3], snf: "1^12 2^9 4^24 8^9 16^10 32^1", code_aut: &[(2, 13), (3, 1), (5, 1)], dev_aut_ratio: &[(2, 11), (3, 1)] },
    CatalogEntry { m: 1, index: 4, coords: &[B4], snf: "1^14 2^7 4^24 8^7 16^12 32^1", code_aut: &[(2, 11), (3, 1), (7, 1)], dev_aut_ratio: &[(2, 7)] },
    CatalogEntry { m: 2, index: 1, coords: &[Q1, Q2], snf: "1^28 2^26 4^42 8^64 16^19 32^12 64^2", code_aut: &[(2, 9), (3, 3), (7, 1)], dev_aut_ratio: &[(2, 8), (7, 1)] },
    CatalogEntry { m: 2, index: 2, coords: &[Q1C, Q2], snf: "1^30 2^28 4^40 8^54 16^27 32^12 64^2", code_aut: &[(2, 9), (7, 1)], dev_aut_ratio: &[(2, 8)] },
    CatalogEntry { m: 2, index: 3, coords: &[Q1C, S3], snf: "1^36 2^22 4^39 8^50 16^32 32^12 64^2", code_aut: &[(2, 7), (3, 1)], dev_aut_ratio: &[(2, 8)] },
    CatalogEntry { m: 2, index: 4, coords: &[Q1C, "12 ⊕ 13 ⊕ 16 ⊕ 26 ⊕ 45 ⊕ 56 ⊕ 156 ⊕ 235"], snf: "1^38 2^24 4^33 8^56 16^20 32^20 64^2", code_aut: &[(2, 6)], dev_aut_ratio: &[(2, 8)] },
    CatalogEntry { m: 2, index: 5, coords: &[B3, S5], snf: "1^38 2^24 4^37 8^48 16^24 32^20 64^2", code_aut: &[(2, 6), (3, 1)], dev_aut_ratio: &[(2, 8)] },
    CatalogEntry { m: 2, index: 6, coords: &[B4, S5], snf: "1^42 2^20 4^37 8^48 16^20 32^24 64^2", code_aut: &[(2, 4)], dev_aut_ratio: &[(2, 8)] },
    CatalogEntry { m: 2, index: 7, coords: &[B4, S7], snf: "1^36 2^34 4^23 8^58 16^16 32^24 64^2", code_aut: &[(2, 4), (3, 1), (7, 1)], dev_aut_ratio: &[(2, 8)] },
    CatalogEntry { m: 2, index: 8, coords: &[B4, "12 ⊕ 16 ⊕ 23 ⊕ 35 ⊕ 46 ⊕ 56 ⊕ 124 ⊕ 134 ⊕ 156 ⊕ 235 ⊕ 236 ⊕ 245"], snf: SNF2_89, code_aut: &[(2, 1), (7, 1)], dev_aut_ratio: &[(2, 8)] },
    CatalogEntry { m: 2, index: 9, coords: &[B4, "12 ⊕ 15 ⊕ 16 ⊕ 25 ⊕ 36 ⊕ 45 ⊕ 46 ⊕ 125 ⊕ 126 ⊕ 135 ⊕ 136 ⊕ 145 ⊕ 256"], snf: SNF2_89, code_aut: &[(2, 1), (3, 1), (7, 1)], dev_aut_ratio: &[(2, 8)] },
    CatalogEntry { m: 3, index: 1, coords: &[Q1, Q2, "14 ⊕ 15 ⊕ 24 ⊕ 25 ⊕ 26 ⊕ 35"], snf: "1^64 2^48 4^72 8^163 16^54 32^30 64^18", code_aut: &[(2, 9), (3, 3), (7, 2)], dev_aut_ratio: &[(2, 9), (7, 1)] },
    CatalogEntry { m: 3, index: 2, coords: &[Q1, Q2, "12 ⊕ 14 ⊕ 15 ⊕ 24 ⊕ 25 ⊕ 26 ⊕ 35"], snf: "1^78 2^44 4^68 8^139 16^62 32^38 64^20", code_aut: &[(2, 9), (3, 1), (7, 1)], dev_aut_ratio: &[(2, 9)] },
    CatalogEntry { m: 3, index: 3, coords: &[Q1, Q2, "13 ⊕ 14 ⊕ 26 ⊕ 45"], snf: "1^88 2^32 4^68 8^137 16^68 32^32 64^24", code_aut: &[(2, 6), (3, 2), (7, 1)], dev_aut_ratio: &[(2, 9)] },
    CatalogEntry { m: 3, index: 4, coords: &[Q1, Q2, "14 ⊕ 15 ⊕ 24 ⊕ 25 ⊕ 26 ⊕ 35 ⊕ 123"], snf: "1^80 2^40 4^70 8^145 16^54 32^36 64^24", code_aut: &[(2, 6), (3, 1), (7, 1)], dev_aut_ratio: &[(2, 9)] },
    CatalogEntry { m: 3, index: 5, coords: &[Q1C, S3, "13 ⊕ 24 ⊕ 25 ⊕ 56 ⊕ 125"], snf: "1^88 2^48 4^48 8^145 16^48 32^48 64^24", code_aut: &[(2, 3), (3, 1), (7, 1)], dev_aut_ratio: &[(2, 9)] },
    CatalogEntry { m: 3, index: 6, coords: &[Q1C, S3, "12 ⊕ 14 ⊕ 16 ⊕ 34 ⊕ 46 ⊕ 56 ⊕ 126 ⊕ 136 ⊕ 246"], snf: "1^98 2^44 4^38 8^153 16^38 32^44 64^34", code_aut: &[(2, 4), (3, 1)], dev_aut_ratio: &[(2, 9)] },
    CatalogEntry { m: 3, index: 7, coords: &[Q1C, S3, "12 ⊕ 13 ⊕ 24 ⊕ 25 ⊕ 35 ⊕ 45 ⊕ 56 ⊕ 125 ⊕ 345"], snf: "1^98 2^40 4^46 8^145 16^46 32^40 64^34", code_aut: &[(2, 3), (3, 1)], dev_aut_ratio: &[(2, 9)] },
    CatalogEntry { m: 3, index: 8, coords: &[B3, S5, "16 ⊕ 23 ⊕ 26 ⊕ 35 ⊕ 45 ⊕ 56 ⊕ 123 ⊕ 124 ⊕ 256"], snf: SNF3_8, code_aut: &[(2, 2), (3, 1), (7, 1)], dev_aut_ratio: &[(2, 9)] },
    CatalogEntry { m: 3, index: 9, coords: &[B3, S5, "16 ⊕ 25 ⊕ 26 ⊕ 35 ⊕ 36 ⊕ 45 ⊕ 56 ⊕ 123 ⊕ 124 ⊕ 234 ⊕ 256 ⊕ 346"], snf: SNF3_9, code_aut: &[(2, 2), (3, 1)], dev_aut_ratio: &[(2, 9)] },
    CatalogEntry { m: 3, index: 10, coords: &[B4, S7, "12 ⊕ 13 ⊕ 25 ⊕ 35 ⊕ 36 ⊕ 45 ⊕ 123 ⊕ 134 ⊕ 236 ⊕ 246 ⊕ 345"], snf: SNF3_8, code_aut: &[(2, 3), (3, 1), (7, 1)], dev_aut_ratio: &[(2, 9)] },
    CatalogEntry { m: 3, index: 11, coords: &[B4, S7, "12 ⊕ 13 ⊕ 24 ⊕ 25 ⊕ 34 ⊕ 35 ⊕ 36 ⊕ 45 ⊕ 123 ⊕ 134 ⊕ 236 ⊕ 246 ⊕ 345"], snf: SNF3_8, code_aut: &[(2, 3), (3, 1), (7, 2)], dev_aut_ratio: &[(2, 9)] },
    CatalogEntry { m: 3, index: 12, coords: &[B4, S7, "14 ⊕ 15 ⊕ 16 ⊕ 23 ⊕ 26 ⊕ 35 ⊕ 56 ⊕ 124 ⊕ 125 ⊕ 126 ⊕ 136 ⊕ 145 ⊕ 156 ⊕ 236 ⊕ 246 ⊕ 345"], snf: "1^106 2^42 4^18 8^181 16^18 32^42 64^42", code_aut: &[(3, 1), (7, 1)], dev_aut_ratio: &[(2, 9)] },
    CatalogEntry { m: 3, index: 13, coords: &[B4, S7, "13 ⊕ 14 ⊕ 24 ⊕ 34 ⊕ 35 ⊕ 36 ⊕ 46 ⊕ 56 ⊕ 123 ⊕ 125 ⊕ 145 ⊕ 146 ⊕ 235 ⊕ 256 ⊕ 356 ⊕ 456"], snf: SNF3_9, code_aut: &[(3, 1), (7, 1)], dev_aut_ratio: &[(2, 9)] },
];

/// Number of catalog classes in layer m.
pub fn layer_size(m: usize) -> usize {
    CATALOG.iter().filter(|e| e.m == m).count()
}

pub fn catalog(m: usize, index: usize) -> Result<&'static CatalogEntry> {
    CATALOG
        .iter()
        .find(|e| e.m == m && e.index == index)
        .ok_or_else(|| Error::NotFound(format!("no catalog class C{m}_{index}")))
}

pub fn catalog_layer(m: usize) -> impl Iterator<Item = &'static CatalogEntry> {
    CATALOG.iter().filter(move |e| e.m == m)
}

/// A pair of EA-inequivalent bent functions on F_2^6 with isomorphic translation
/// designs: a quadratic function and its cubic perturbation.
pub fn isomorphic_inequivalent_pair_6() -> (BooleanFunction, BooleanFunction) {
    let f = Anf::parse(6, "x1*x2 + x3*x4 + x5*x6")
        .expect("valid ANF")
        .to_table();
    let g = Anf::parse(6, "x1*x2 + x3*x4 + x5*x6 + x1*x3*x5")
        .expect("valid ANF")
        .to_table();
    (f, g)
}

/// The pair of EA-inequivalent bent functions on F_2^10 with isomorphic
/// translation designs, and the maps (pi, sigma) with f(pi(x) + sigma(y)) = f'(x + y).
pub struct TenVariableWitness {
    pub f: BooleanFunction,
    pub f_prime: BooleanFunction,
    pub pi: VectorialFunction,
    pub sigma: VectorialFunction,
}

pub fn isomorphic_inequivalent_pair_10() -> TenVariableWitness {
    let parse = |s: &str| Anf::parse(10, s).expect("valid ANF").to_table();
    let f_anf = "x1*x6 + x2*x7 + x3*x8 + x4*x9 + x5*x10 + x1*x2*x3*x4*x5";
    let f = parse(f_anf);
    let f_prime = parse(&format!(
        "{f_anf} + x4 + x6 + x8 + x10 + x1*x2 + x2*x3 + x1*x2*x3 + x2*x4*x5 + x1*x2*x4*x5 + x2*x3*x4*x5"
    ));
    let pi = VectorialFunction::parse(
        10,
        &[
            "x1",
            "x2",
            "x3",
            "x4",
            "x1 + x5",
            "x1 + x10 + x2*x3 + x5 + x6",
            "x1*x3 + x7",
            "x1*x2 + x8",
            "x9",
            "x1 + x10",
        ],
        false,
    )
    .expect("valid map");
    let sigma = VectorialFunction::parse(
        10,
        &[
            "x1 + 1",
            "x2",
            "x3 + 1",
            "x4",
            "x5 + x1",
            "x6 + x1 + x10 + x2 + x2*x3 + x5",
            "x7 + x1 + x3 + x1*x3",
            "x8 + x2 + x1*x2",
            "x9 + 1",
            "x10 + 1 + x1",
        ],
        false,
    )
    .expect("valid map");
    TenVariableWitness {
        f,
        f_prime,
        pi,
        sigma,
    }
}
