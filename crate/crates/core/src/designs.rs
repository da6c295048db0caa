//! Translation designs, the code C(F), addition designs and parameter checks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::{BooleanFunction, VectorialFunction};
use crate::gf2::BitMatrix;
use crate::walsh::{dual, is_bent, walsh_transform};

/// Points 0..v and blocks given by the rows of a b x v incidence matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IncidenceStructure {
    matrix: BitMatrix,
}

impl IncidenceStructure {
    pub fn from_matrix(matrix: BitMatrix) -> Self {
        IncidenceStructure { matrix }
    }

    pub fn from_blocks(v: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut m = BitMatrix::zeros(blocks.len(), v);
        for (i, b) in blocks.iter().enumerate() {
            for &p in b {
                if p >= v {
                    return Err(Error::invalid(format!(
                        "block {i} contains point {p} >= {v}"
                    )));
                }
                m.set(i, p, true);
            }
        }
        Ok(IncidenceStructure { matrix: m })
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> BitMatrix {
        self.matrix
    }

    pub fn points(&self) -> usize {
        self.matrix.cols()
    }

    pub fn num_blocks(&self) -> usize {
        self.matrix.rows()
    }

    pub fn block(&self, i: usize) -> Vec<usize> {
        self.matrix.row_support(i)
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        (0..self.num_blocks()).map(|i| self.block(i)).collect()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        (0..self.num_blocks())
            .map(|i| self.matrix.row_weight(i))
            .collect()
    }

    /// Replication numbers: blocks through each point.
    pub fn point_degrees(&self) -> Vec<usize> {
        self.matrix.col_weights()
    }

    /// Blocks as sorted packed rows; equal for structures with the same block multiset.
    pub fn block_multiset(&self) -> Vec<Vec<u64>> {
        self.matrix.sorted_rows()
    }

    /// The structure with point p renamed point_map[p] and block i renamed block_map[i].
    pub fn relabel(&self, point_map: &[usize], block_map: &[usize]) -> Result<Self> {
        let (b, v) = (self.num_blocks(), self.points());
        if point_map.len() != v || block_map.len() != b {
            return Err(Error::invalid("relabeling maps have the wrong length"));
        }
        let mut m = BitMatrix::zeros(b, v);
        for (i, &bi) in block_map.iter().enumerate() {
            for p in self.matrix.row_support(i) {
                m.set(bi, point_map[p], true);
            }
        }
        Ok(IncidenceStructure { matrix: m })
    }

    /// Pairwise counts lambda(p, q) = number of blocks containing both points.
    fn pair_counts(&self) -> (usize, Vec<u32>) {
        let t = self.matrix.transpose();
        let v = self.points();
        let mut counts = vec![0u32; v * v];
        for p in 0..v {
            let rp = t.row(p);
            for q in p + 1..v {
                let c: u32 = rp
                    .iter()
                    .zip(t.row(q))
                    .map(|(a, b)| (a & b).count_ones())
                    .sum();
                counts[p * v + q] = c;
                counts[q * v + p] = c;
            }
        }
        (v, counts)
    }

    /// Parameters read off the structure, if it is a 2-design or a divisible design
    /// with constant block size.
    pub fn infer_parameters(&self) -> Option<DesignParameters> {
        let sizes = self.block_sizes();
        let k = *sizes.first()?;
        if sizes.iter().any(|&s| s != k) || self.points() < 2 {
            return None;
        }
        let (v, counts) = self.pair_counts();
        let lambda = counts[1];
        if (0..v).all(|p| (0..v).all(|q| p == q || counts[p * v + q] == lambda)) {
            return Some(DesignParameters::TwoDesign {
                v,
                k,
                lambda: lambda as usize,
            });
        }
        let classes = point_classes(v, &counts)?;
        let nu = classes[0].len();
        let lambda = (0..v)
            .flat_map(|q| Some(counts[q]).filter(|&c| c != 0))
            .next()? as usize;
        Some(DesignParameters::Divisible {
            mu: classes.len(),
            nu,
            k,
            lambda,
        })
    }
}

/// Partition of points by the relation "no block contains both".
fn point_classes(v: usize, counts: &[u32]) -> Option<Vec<Vec<usize>>> {
    let mut class_of = vec![usize::MAX; v];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for p in 0..v {
        if class_of[p] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (0..v)
            .filter(|&q| q == p || counts[p * v + q] == 0)
            .collect();
        for &q in &members {
            if class_of[q] != usize::MAX {
                return None;
            }
            class_of[q] = classes.len();
        }
        classes.push(members);
    }
    Some(classes)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DesignParameters {
    /// Every pair of points lies in exactly lambda blocks of size k.
    TwoDesign { v: usize, k: usize, lambda: usize },
    /// mu point classes of size nu; pairs in one class lie in no block, other pairs
    /// in lambda blocks of size k.
    Divisible {
        mu: usize,
        nu: usize,
        k: usize,
        lambda: usize,
    },
}

impl DesignParameters {
    pub fn points(&self) -> usize {
        match *self {
            DesignParameters::TwoDesign { v, .. } => v,
            DesignParameters::Divisible { mu, nu, .. } => mu * nu,
        }
    }

    pub fn block_size(&self) -> usize {
        match *self {
            DesignParameters::TwoDesign { k, .. } | DesignParameters::Divisible { k, .. } => k,
        }
    }
}

impl fmt::Display for DesignParameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            DesignParameters::TwoDesign { v, k, lambda } => write!(f, "2-({v},{k},{lambda})"),
            DesignParameters::Divisible { mu, nu, k, lambda } => {
                write!(f, "({mu},{nu},{k},{lambda})")
            }
        }
    }
}

/// Outcome of checking a structure against expected parameters.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ValidationReport {
    pub expected: DesignParameters,
    pub passed: bool,
    pub failure: Option<String>,
    /// A pair of points (or a point and a block) violating the parameters.
    pub witness: Option<(usize, usize)>,
}

impl ValidationReport {
    fn fail(expected: DesignParameters, msg: String, witness: Option<(usize, usize)>) -> Self {
        ValidationReport {
            expected,
            passed: false,
            failure: Some(msg),
            witness,
        }
    }
}

/// Exhaustively checks block sizes and the pair counts required by `expected`.
pub fn validate_parameters(d: &IncidenceStructure, expected: DesignParameters) -> ValidationReport {
    let v = d.points();
    if v != expected.points() {
        return ValidationReport::fail(
            expected,
            format!("structure has {v} points, expected {}", expected.points()),
            None,
        );
    }
    let k = expected.block_size();
    if let Some((i, s)) = d
        .block_sizes()
        .into_iter()
        .enumerate()
        .find(|&(_, s)| s != k)
    {
        return ValidationReport::fail(
            expected,
            format!("block {i} has size {s}, expected {k}"),
            Some((i, s)),
        );
    }
    let (_, counts) = d.pair_counts();
    match expected {
        DesignParameters::TwoDesign { lambda, .. } => {
            for p in 0..v {
                for q in p + 1..v {
                    let c = counts[p * v + q] as usize;
                    if c != lambda {
                        return ValidationReport::fail(
                            expected,
                            format!(
                                "points {p} and {q} lie in {c} common blocks, expected {lambda}"
                            ),
                            Some((p, q)),
                        );
                    }
                }
            }
        }
        DesignParameters::Divisible { mu, nu, lambda, .. } => {
            let Some(classes) = point_classes(v, &counts) else {
                return ValidationReport::fail(
                    expected,
                    "the zero-count relation is not an equivalence".into(),
                    None,
                );
            };
            if classes.len() != mu || classes.iter().any(|c| c.len() != nu) {
                return ValidationReport::fail(
                    expected,
                    format!(
                        "found {} point classes, expected {mu} classes of size {nu}",
                        classes.len()
                    ),
                    None,
                );
            }
            let mut class_of = vec![0; v];
            for (i, c) in classes.iter().enumerate() {
                for &p in c {
                    class_of[p] = i;
                }
            }
            for p in 0..v {
                for q in p + 1..v {
                    let c = counts[p * v + q] as usize;
                    if class_of[p] != class_of[q] && c != lambda {
                        return ValidationReport::fail(
                            expected,
                            format!("points {p} and {q} in different classes lie in {c} common blocks, expected {lambda}"),
                            Some((p, q)),
                        );
                    }
                }
            }
        }
    }
    ValidationReport {
        expected,
        passed: true,
        failure: None,
        witness: None,
    }
}

/// Blocks D_f + g for g = 0, 1, 2, ...; row g, column x holds f(x + g).
pub fn dev_support(f: &BooleanFunction) -> IncidenceStructure {
    let len = f.len();
    let mut m = BitMatrix::zeros(len, len);
    for g in 0..len as u32 {
        for x in 0..len as u32 {
            if f.get(x ^ g) {
                m.set(g as usize, x as usize, true);
            }
        }
    }
    IncidenceStructure { matrix: m }
}

/// Expected parameters of dev(D_f) for bent f: the block size is the weight of f.
pub fn dev_support_parameters(f: &BooleanFunction) -> Result<DesignParameters> {
    let n = f.num_vars();
    if !walsh_transform(f).is_flat() {
        return Err(Error::NotBent(Some(
            "dev(D_f) parameters need a bent f".into(),
        )));
    }
    let v = 1usize << n;
    let (half, quarter) = (v / 2, 1usize << (n / 2 - 1));
    let k = f.weight() as usize;
    let lambda = if k > half {
        v / 4 + quarter
    } else {
        v / 4 - quarter
    };
    Ok(DesignParameters::TwoDesign { v, k, lambda })
}

/// Blocks G_F + (g, h); point (x, y) is index x | y << n, block (g, h) is row g | h << n.
pub fn dev_graph(f: &VectorialFunction) -> IncidenceStructure {
    let n = f.num_vars();
    let m = f.num_outputs();
    let size = 1usize << (n + m);
    let values = f.values();
    let mut mat = BitMatrix::zeros(size, size);
    for h in 0..1u32 << m {
        for g in 0..1u32 << n {
            let row = (g | h << n) as usize;
            for x in 0..1u32 << n {
                let y = values[(x ^ g) as usize] ^ h;
                mat.set(row, (x | y << n) as usize, true);
            }
        }
    }
    IncidenceStructure { matrix: mat }
}

/// (2^n, 2^m, 2^n, 2^(n-m)) for the graph translation design of a bent F.
pub fn dev_graph_parameters(n: usize, m: usize) -> DesignParameters {
    DesignParameters::Divisible {
        mu: 1 << n,
        nu: 1 << m,
        k: 1 << n,
        lambda: 1 << (n - m),
    }
}

/// 2-(2^n, 2^(n-1) - 2^(n/2-1), (2^m - 1)(2^(n-2) - 2^(n/2-1))).
pub fn addition_parameters(n: usize, m: usize) -> DesignParameters {
    let v = 1usize << n;
    let q = 1usize << (n / 2 - 1);
    DesignParameters::TwoDesign {
        v,
        k: v / 2 - q,
        lambda: ((1 << m) - 1) * (v / 4 - q),
    }
}

/// Binary linear code given by generator rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearCode {
    generators: BitMatrix,
    dimension: usize,
}

impl LinearCode {
    pub fn new(generators: BitMatrix) -> Self {
        let dimension = generators.rank_gf2();
        LinearCode {
            generators,
            dimension,
        }
    }

    pub fn length(&self) -> usize {
        self.generators.cols()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn generators(&self) -> &BitMatrix {
        &self.generators
    }

    /// A basis of the row space, extracted by elimination.
    pub fn basis(&self) -> Vec<Vec<u64>> {
        let mut basis: Vec<Vec<u64>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        for r in 0..self.generators.rows() {
            let mut row = self.generators.row(r).to_vec();
            for (b, &p) in basis.iter().zip(&pivots) {
                if row[p / 64] >> (p % 64) & 1 == 1 {
                    for (x, y) in row.iter_mut().zip(b) {
                        *x ^= y;
                    }
                }
            }
            if let Some(p) = first_bit(&row) {
                // Keep the basis reduced at the new pivot column.
                for b in basis.iter_mut() {
                    if b[p / 64] >> (p % 64) & 1 == 1 {
                        for (x, y) in b.iter_mut().zip(&row) {
                            *x ^= y;
                        }
                    }
                }
                basis.push(row);
                pivots.push(p);
            }
        }
        basis
    }

    /// Minimum distance by walking the whole code; None for the zero code.
    pub fn minimum_distance(&self) -> Option<usize> {
        let mut best = None;
        self.for_each_word(|w| {
            let wt: usize = w.iter().map(|x| x.count_ones() as usize).sum();
            if wt > 0 && best.is_none_or(|b| wt < b) {
                best = Some(wt);
            }
        });
        best
    }

    /// Visits all 2^dimension codewords in Gray-code order, starting with zero.
    pub fn for_each_word(&self, mut visit: impl FnMut(&[u64])) {
        let basis = self.basis();
        let mut word = vec![0u64; self.generators.stride()];
        visit(&word);
        for i in 1u64..1 << basis.len() {
            let flip = i.trailing_zeros() as usize;
            for (x, y) in word.iter_mut().zip(&basis[flip]) {
                *x ^= y;
            }
            visit(&word);
        }
    }
}

fn first_bit(row: &[u64]) -> Option<usize> {
    row.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
}

/// C(F): rows are the all-one word, the n coordinate functions x_i and the m
/// coordinates of F, with columns indexed by x.
pub fn code_of(f: &VectorialFunction) -> LinearCode {
    let n = f.num_vars();
    let len = 1usize << n;
    let m = f.num_outputs();
    let mut g = BitMatrix::zeros(1 + n + m, len);
    for x in 0..len {
        g.set(0, x, true);
        for i in 0..n {
            g.set(1 + i, x, x >> i & 1 == 1);
        }
        for (j, c) in f.coords().iter().enumerate() {
            g.set(1 + n + j, x, c.get(x as u32));
        }
    }
    LinearCode::new(g)
}

/// All codewords of Hamming weight exactly w, as sorted rows of a matrix.
pub fn min_weight_words(code: &LinearCode, w: usize) -> BitMatrix {
    let mut words: Vec<Vec<u64>> = Vec::new();
    code.for_each_word(|word| {
        let wt: usize = word.iter().map(|x| x.count_ones() as usize).sum();
        if wt == w {
            words.push(word.to_vec());
        }
    });
    words.sort_unstable();
    let mut m = BitMatrix::zeros(words.len(), code.length());
    for (i, row) in words.iter().enumerate() {
        m.set_row(i, row);
    }
    m
}

fn require_bent(f: &VectorialFunction, what: &str) -> Result<()> {
    if !is_bent(f) {
        return Err(Error::NotBent(Some(format!(
            "{what} requires a bent function"
        ))));
    }
    Ok(())
}

fn sorted_structure(rows: Vec<Vec<u64>>, v: usize) -> IncidenceStructure {
    let mut rows = rows;
    rows.sort_unstable();
    let mut m = BitMatrix::zeros(rows.len(), v);
    for (i, row) in rows.iter().enumerate() {
        m.set_row(i, row);
    }
    IncidenceStructure { matrix: m }
}

/// Supports of the minimum-weight codewords of C(F); blocks in increasing row order.
pub fn addition_design(f: &VectorialFunction) -> Result<IncidenceStructure> {
    require_bent(f, "the addition design")?;
    let n = f.num_vars();
    let k = addition_parameters(n, f.num_outputs()).block_size();
    Ok(IncidenceStructure {
        matrix: min_weight_words(&code_of(f), k),
    })
}

/// Rows f~(x) + f(y) + <x, y> over x, for a bent f normalized so that f~(0) = 0.
fn dual_rows(f: &BooleanFunction) -> Result<Vec<Vec<u64>>> {
    let mut f = f.clone();
    let mut fd = dual(&f)?;
    if fd.get(0) {
        f = !f;
        fd = !fd;
    }
    let len = f.len();
    let mut rows = Vec::with_capacity(len);
    for x in 0..len as u32 {
        let mut row = vec![0u64; len.div_ceil(64)];
        for y in 0..len as u32 {
            let bit = fd.get(x) ^ f.get(y) ^ ((x & y).count_ones() & 1 == 1) ^ fd.get(0);
            if bit {
                row[(y / 64) as usize] |= 1 << (y % 64);
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// The addition design of a Boolean bent function from its dual, without the code.
/// Blocks are sorted like those of [`addition_design`].
pub fn addition_design_via_dual(f: &BooleanFunction) -> Result<IncidenceStructure> {
    Ok(sorted_structure(dual_rows(f)?, f.len()))
}

/// The addition design of F as the union of those of its nonzero components.
/// Blocks are sorted like those of [`addition_design`].
pub fn addition_design_concat(f: &VectorialFunction) -> Result<IncidenceStructure> {
    require_bent(f, "the addition design")?;
    let mut rows = Vec::new();
    for c in f.components() {
        rows.extend(dual_rows(&c)?);
    }
    Ok(sorted_structure(rows, 1 << f.num_vars()))
}
