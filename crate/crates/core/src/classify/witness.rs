//! Explicit isomorphisms between translation designs of EA-inequivalent bent
//! functions.
//!
//! If f(pi(x) + sigma(y)) = f'(x + y) with pi, sigma permutations, then
//! M_f'[y][x] = M_f[sigma(y)][pi(x)], so (pi^-1, sigma^-1) maps dev_support(f)
//! onto dev_support(f'). An isomorphism (phi, psi) of support designs extends
//! to the direct sums with a fixed q by acting on the first block of
//! variables only (the +-1 matrices factor as a Kronecker product), and to
//! the graph designs by fixing the output coordinate, since
//! M(dev_graph(f)) = [[M, ~M], [~M, M]].

use crate::constructions::isomorphic_inequivalent_pair_6;
use crate::designs::{dev_graph, dev_support};
use crate::function::{direct_sum, BooleanFunction};
use crate::invariants::{are_isomorphic, canon::IsomorphismWitness};
use crate::{Anf, Error, Result, VectorialFunction};

fn permutation_values(p: &VectorialFunction, n: usize) -> Option<Vec<u32>> {
    if p.num_vars() != n || p.num_outputs() != n {
        return None;
    }
    let v = p.values();
    let mut seen = vec![false; v.len()];
    for &y in &v {
        if std::mem::replace(&mut seen[y as usize], true) {
            return None;
        }
    }
    Some(v)
}

/// True iff pi and sigma are permutations of F_2^n and f(pi(x) + sigma(y)) = f'(x + y)
/// for all x, y.
pub fn verify_example_witness(
    f: &BooleanFunction,
    f_prime: &BooleanFunction,
    pi: &VectorialFunction,
    sigma: &VectorialFunction,
) -> bool {
    let n = f.num_vars();
    if f_prime.num_vars() != n {
        return false;
    }
    let (Some(p), Some(s)) = (permutation_values(pi, n), permutation_values(sigma, n)) else {
        return false;
    };
    (0..1u32 << n)
        .all(|x| (0..1u32 << n).all(|y| f.get(p[x as usize] ^ s[y as usize]) == f_prime.get(x ^ y)))
}

/// The support-design isomorphism dev_support(f) -> dev_support(f') given by (pi, sigma).
pub fn example_witness_isomorphism(
    pi: &VectorialFunction,
    sigma: &VectorialFunction,
) -> Result<IsomorphismWitness> {
    let n = pi.num_vars();
    let inverse = |p: &VectorialFunction| -> Result<Vec<usize>> {
        let v = permutation_values(p, n)
            .ok_or_else(|| Error::invalid("the map is not a permutation of F_2^n"))?;
        let mut inv = vec![0usize; v.len()];
        for (x, &y) in v.iter().enumerate() {
            inv[y as usize] = x;
        }
        Ok(inv)
    };
    Ok(IsomorphismWitness {
        point_map: inverse(pi)?,
        block_map: inverse(sigma)?,
    })
}

/// Extends an isomorphism of support designs on n variables to the direct sums
/// with any function of k further variables.
pub fn lift_support_witness(w: &IsomorphismWitness, k: usize) -> IsomorphismWitness {
    let size = w.point_map.len();
    let lift = |map: &[usize]| -> Vec<usize> {
        (0..size << k)
            .map(|z| map[z % size] + z / size * size)
            .collect()
    };
    IsomorphismWitness {
        point_map: lift(&w.point_map),
        block_map: lift(&w.block_map),
    }
}

/// Turns an isomorphism of support designs into one of the graph designs of
/// the same Boolean functions.
pub fn graph_witness_from_support(w: &IsomorphismWitness) -> IsomorphismWitness {
    let size = w.point_map.len();
    let lift = |map: &[usize]| -> Vec<usize> {
        (0..2 * size)
            .map(|z| map[z % size] + z / size * size)
            .collect()
    };
    IsomorphismWitness {
        point_map: lift(&w.point_map),
        block_map: lift(&w.block_map),
    }
}

/// The quadratic bent function x1x2 + x3x4 + ... on k variables (k even).
fn quadratic_bent(k: usize) -> Result<BooleanFunction> {
    Anf::new(k, (0..k / 2).map(|i| 0b11u32 << (2 * i))).map(|a| a.to_table())
}

/// The pair (f + q, f' + q) on n = 6 + k variables, where (f, f') is the
/// six-variable quadratic/cubic pair and q is quadratic bent on k variables.
pub fn direct_sum_pair(n: usize) -> Result<(BooleanFunction, BooleanFunction)> {
    if n < 6 || n % 2 == 1 {
        return Err(Error::invalid(format!(
            "the direct-sum pairs exist for even n >= 6, got {n}"
        )));
    }
    let (f, g) = isomorphic_inequivalent_pair_6();
    if n == 6 {
        return Ok((f, g));
    }
    let q = quadratic_bent(n - 6)?;
    Ok((direct_sum(&f, &q)?, direct_sum(&g, &q)?))
}

pub struct DirectSumWitness {
    pub f: BooleanFunction,
    pub f_prime: BooleanFunction,
    /// Isomorphism dev_graph(f) -> dev_graph(f'), verified.
    pub graph: IsomorphismWitness,
}

/// Builds the pair on n variables and an explicit, checked isomorphism of
/// their graph designs, lifted from a search on six variables.
pub fn direct_sum_witness(n: usize, budget: u64) -> Result<DirectSumWitness> {
    let (f, f_prime) = direct_sum_pair(n)?;
    let (f6, g6) = isomorphic_inequivalent_pair_6();
    let base = are_isomorphic(&dev_support(&f6), &dev_support(&g6), budget)?.ok_or_else(|| {
        Error::Inconsistency("the six-variable support designs are not isomorphic".into())
    })?;
    let support = lift_support_witness(&base, n - 6);
    let graph = graph_witness_from_support(&support);
    let a = dev_graph(&VectorialFunction::from_boolean(f.clone()));
    let b = dev_graph(&VectorialFunction::from_boolean(f_prime.clone()));
    if !graph.verify(&a, &b) {
        return Err(Error::Inconsistency(
            "the lifted graph-design isomorphism does not verify".into(),
        ));
    }
    Ok(DirectSumWitness { f, f_prime, graph })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity(n: usize) -> VectorialFunction {
        let coords: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = coords.iter().map(|s| s.as_str()).collect();
        VectorialFunction::parse(n, &refs, false).unwrap()
    }

    #[test]
    fn identity_maps() {
        let (f, g) = isomorphic_inequivalent_pair_6();
        let id = identity(6);
        assert!(verify_example_witness(&f, &f, &id, &id));
        assert!(!verify_example_witness(&f, &g, &id, &id));
    }

    #[test]
    fn non_permutation_is_rejected() {
        let f = Anf::parse(4, "x1*x2 + x3*x4").unwrap().to_table();
        let p = VectorialFunction::parse(4, &["x1", "x1", "x3", "x4"], false).unwrap();
        assert!(!verify_example_witness(&f, &f, &p, &identity(4)));
        assert!(example_witness_isomorphism(&p, &identity(4)).is_err());
    }

    #[test]
    fn translation_witness_gives_support_isomorphism() {
        // f(x + a) = f'(x) with pi = x + a, sigma = identity.
        let f = Anf::parse(4, "x1*x2 + x3*x4 + x1*x3").unwrap().to_table();
        let g = f.translate(5);
        let pi = VectorialFunction::parse(4, &["x1 + 1", "x2", "x3 + 1", "x4"], false).unwrap();
        let id = identity(4);
        assert!(verify_example_witness(&f, &g, &pi, &id));
        let w = example_witness_isomorphism(&pi, &id).unwrap();
        assert!(w.verify(&dev_support(&f), &dev_support(&g)));
    }

    #[test]
    fn six_variable_witness_lifts() {
        let w = direct_sum_witness(8, 1_000_000).unwrap();
        assert_eq!(w.graph.point_map.len(), 512);
        assert!(direct_sum_pair(7).is_err());
    }
}
