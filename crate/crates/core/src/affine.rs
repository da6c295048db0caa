//! Linear and affine maps between small F_2 vector spaces, and EA transforms.

use rand::Rng;

use crate::error::{Error, Result};
use crate::function::{BooleanFunction, VectorialFunction};

/// Linear map F_2^inputs -> F_2^outputs given by the images of the unit vectors.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearMap {
    outputs: usize,
    columns: Vec<u32>,
}

impl LinearMap {
    pub fn new(outputs: usize, columns: Vec<u32>) -> Result<Self> {
        if outputs > 31 || columns.len() > 31 {
            return Err(Error::invalid("linear maps are limited to 31 dimensions"));
        }
        if columns.iter().any(|c| c >> outputs != 0) {
            return Err(Error::invalid("column image exceeds the output dimension"));
        }
        Ok(LinearMap { outputs, columns })
    }

    pub fn identity(n: usize) -> Self {
        LinearMap {
            outputs: n,
            columns: (0..n).map(|i| 1 << i).collect(),
        }
    }

    pub fn zero(inputs: usize, outputs: usize) -> Self {
        LinearMap {
            outputs,
            columns: vec![0; inputs],
        }
    }

    pub fn inputs(&self) -> usize {
        self.columns.len()
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn columns(&self) -> &[u32] {
        &self.columns
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        let mut acc = 0;
        let mut x = x;
        while x != 0 {
            let i = x.trailing_zeros() as usize;
            acc ^= self.columns[i];
            x &= x - 1;
        }
        acc
    }

    /// self after other.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        LinearMap {
            outputs: self.outputs,
            columns: other.columns.iter().map(|&c| self.apply(c)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        rank_of_vectors(&self.columns)
    }

    pub fn is_invertible(&self) -> bool {
        self.inputs() == self.outputs && self.rank() == self.outputs
    }

    pub fn inverse(&self) -> Result<LinearMap> {
        if !self.is_invertible() {
            return Err(Error::invalid("linear map is not invertible"));
        }
        let n = self.outputs;
        // Gauss-Jordan on rows [A | I], rows indexed by output coordinate.
        let mut rows: Vec<(u32, u32)> = (0..n)
            .map(|r| {
                let row = (0..n).fold(0u32, |acc, c| acc | ((self.columns[c] >> r) & 1) << c);
                (row, 1 << r)
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| rows[r].0 >> col & 1 == 1)
                .expect("invertible matrix has a pivot in every column");
            rows.swap(col, pivot);
            let (pr, pi) = rows[col];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != col && row.0 >> col & 1 == 1 {
                    row.0 ^= pr;
                    row.1 ^= pi;
                }
            }
        }
        // rows[r].1 is row r of the inverse; convert back to columns.
        let columns = (0..n)
            .map(|c| (0..n).fold(0u32, |acc, r| acc | ((rows[r].1 >> c) & 1) << r))
            .collect();
        Ok(LinearMap {
            outputs: n,
            columns,
        })
    }

    pub fn random<R: Rng + ?Sized>(inputs: usize, outputs: usize, rng: &mut R) -> LinearMap {
        let mask = if outputs == 0 {
            0
        } else {
            u32::MAX >> (32 - outputs)
        };
        LinearMap {
            outputs,
            columns: (0..inputs).map(|_| rng.gen::<u32>() & mask).collect(),
        }
    }

    pub fn random_invertible<R: Rng + ?Sized>(n: usize, rng: &mut R) -> LinearMap {
        loop {
            let m = Self::random(n, n, rng);
            if m.is_invertible() {
                return m;
            }
        }
    }
}

/// Rank of a set of vectors over F_2.
pub fn rank_of_vectors(vectors: &[u32]) -> usize {
    let mut basis = [0u32; 32];
    let mut rank = 0;
    for &v in vectors {
        let mut v = v;
        while v != 0 {
            let top = 31 - v.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = v;
                rank += 1;
                break;
            }
            v ^= basis[top];
        }
    }
    rank
}

/// x -> L(x) + c.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineMap {
    pub linear: LinearMap,
    pub shift: u32,
}

impl AffineMap {
    pub fn identity(n: usize) -> Self {
        AffineMap {
            linear: LinearMap::identity(n),
            shift: 0,
        }
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.linear.apply(x) ^ self.shift
    }

    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap {
            linear: self.linear.compose(&other.linear),
            shift: self.apply(other.shift),
        }
    }

    pub fn inverse(&self) -> Result<AffineMap> {
        let inv = self.linear.inverse()?;
        let shift = inv.apply(self.shift);
        Ok(AffineMap { linear: inv, shift })
    }

    pub fn random<R: Rng + ?Sized>(inputs: usize, outputs: usize, rng: &mut R) -> AffineMap {
        let linear = LinearMap::random(inputs, outputs, rng);
        let mask = if outputs == 0 {
            0
        } else {
            u32::MAX >> (32 - outputs)
        };
        AffineMap {
            linear,
            shift: rng.gen::<u32>() & mask,
        }
    }

    pub fn random_invertible<R: Rng + ?Sized>(n: usize, rng: &mut R) -> AffineMap {
        let linear = LinearMap::random_invertible(n, rng);
        let mask = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
        AffineMap {
            linear,
            shift: rng.gen::<u32>() & mask,
        }
    }
}

/// The maps of an EA transform F -> A1 . F . A2 + A3.
#[derive(Clone, Debug)]
pub struct EaTransform {
    pub outer: AffineMap,
    pub inner: AffineMap,
    pub added: AffineMap,
}

impl EaTransform {
    pub fn random<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Self {
        EaTransform {
            outer: AffineMap::random_invertible(m, rng),
            inner: AffineMap::random_invertible(n, rng),
            added: AffineMap::random(n, m, rng),
        }
    }

    pub fn apply(&self, f: &VectorialFunction) -> Result<VectorialFunction> {
        let n = f.num_vars();
        let m = f.num_outputs();
        if self.inner.linear.inputs() != n
            || self.outer.linear.outputs() != m
            || self.added.linear.outputs() != m
        {
            return Err(Error::invalid(
                "EA transform dimensions do not match the function",
            ));
        }
        let values: Vec<u32> = (0..1u32 << n)
            .map(|x| self.outer.apply(f.eval(self.inner.apply(x))) ^ self.added.apply(x))
            .collect();
        VectorialFunction::from_values(n, m, &values)
    }
}

/// x -> f(A(x)).
pub fn compose_boolean(f: &BooleanFunction, a: &AffineMap) -> BooleanFunction {
    f.compose(|x| a.apply(x))
}
