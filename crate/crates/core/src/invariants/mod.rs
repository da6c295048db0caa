//! Invariants of designs and functions: ranks, Smith normal forms, fingerprints,
//! canonical forms, isomorphism and EA-equivalence decisions.

pub mod canon;
pub mod snf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use canon::{
    aut_group_order, canonical_form, canonical_form_with_budget, CanonicalForm, IsomorphismWitness,
    SearchResult, DEFAULT_NODE_BUDGET,
};
pub use snf::{smith_normal_form, smith_normal_form_exact, SnfMultiset};

use crate::designs::{addition_design, dev_graph, IncidenceStructure};
use crate::error::{Error, Result};
use crate::function::VectorialFunction;
use crate::gf2::BitMatrix;
use crate::walsh::is_bent;

/// Version tag of the fingerprint layout; bumped whenever fields or their order change.
pub const FINGERPRINT_VERSION: u32 = 1;

pub fn gf2_rank(m: &BitMatrix) -> usize {
    m.rank_gf2()
}

/// Multiplicity of 1 in the Smith normal form of the graph translation design,
/// which equals its 2-rank.
pub fn gamma_rank(f: &VectorialFunction) -> Result<usize> {
    if !is_bent(f) {
        return Err(Error::NotBent(Some(
            "the gamma-rank is defined for bent functions".into(),
        )));
    }
    Ok(dev_graph(f).matrix().rank_gf2())
}

/// Relabeling-invariant summary of an incidence structure.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Fingerprint {
    pub version: u32,
    pub points: usize,
    pub blocks: usize,
    /// Sorted block sizes.
    pub block_sizes: Vec<usize>,
    /// Sorted point replication numbers.
    pub point_degrees: Vec<usize>,
    pub gf2_rank: usize,
    pub snf: SnfMultiset,
}

impl Fingerprint {
    pub fn hash(&self) -> String {
        hex_digest(&serde_json::to_vec(self).expect("fingerprint serializes"))
    }
}

fn hex_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn fingerprint(d: &IncidenceStructure) -> Fingerprint {
    let mut block_sizes = d.block_sizes();
    block_sizes.sort_unstable();
    let mut point_degrees = d.point_degrees();
    point_degrees.sort_unstable();
    Fingerprint {
        version: FINGERPRINT_VERSION,
        points: d.points(),
        blocks: d.num_blocks(),
        block_sizes,
        point_degrees,
        gf2_rank: d.matrix().rank_gf2(),
        snf: smith_normal_form(d.matrix()),
    }
}

/// EA-invariant summary of a bent function: dimensions, algebraic degree and the
/// sorted 2-ranks of the graph translation designs of its nonzero components.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize, PartialOrd, Ord)]
pub struct FunctionFingerprint {
    pub version: u32,
    pub n: usize,
    pub m: usize,
    pub degree: u32,
    pub component_ranks: Vec<usize>,
}

impl FunctionFingerprint {
    pub fn hash(&self) -> String {
        hex_digest(&serde_json::to_vec(self).expect("fingerprint serializes"))
    }
}

pub fn function_fingerprint(f: &VectorialFunction) -> FunctionFingerprint {
    // The degree of F is the largest component degree, so both are EA-invariant.
    let mut component_ranks: Vec<usize> = f
        .components()
        .into_iter()
        .map(|c| {
            dev_graph(&VectorialFunction::from_boolean(c))
                .matrix()
                .rank_gf2()
        })
        .collect();
    component_ranks.sort_unstable();
    FunctionFingerprint {
        version: FINGERPRINT_VERSION,
        n: f.num_vars(),
        m: f.num_outputs(),
        degree: f.degree(),
        component_ranks,
    }
}

/// Decides isomorphism; on success returns a witness checked against both inputs.
pub fn are_isomorphic(
    a: &IncidenceStructure,
    b: &IncidenceStructure,
    budget: u64,
) -> Result<Option<IsomorphismWitness>> {
    if a.points() != b.points() || a.num_blocks() != b.num_blocks() {
        return Ok(None);
    }
    if fingerprint(a) != fingerprint(b) {
        return Ok(None);
    }
    let ca = canonical_form_with_budget(a, budget)?;
    let cb = canonical_form_with_budget(b, budget)?;
    if ca.matrix != cb.matrix {
        return Ok(None);
    }
    let w = IsomorphismWitness::from_forms(&ca, &cb);
    if !w.verify(a, b) {
        return Err(Error::Inconsistency(
            "canonical forms agree but the derived isomorphism does not verify".into(),
        ));
    }
    Ok(Some(w))
}

fn check_pair(a: &VectorialFunction, b: &VectorialFunction) -> Result<()> {
    if a.num_vars() != b.num_vars() || a.num_outputs() != b.num_outputs() {
        return Err(Error::invalid(format!(
            "functions have different dimensions ({},{}) and ({},{})",
            a.num_vars(),
            a.num_outputs(),
            b.num_vars(),
            b.num_outputs()
        )));
    }
    for (name, f) in [("first", a), ("second", b)] {
        if !is_bent(f) {
            return Err(Error::NotBent(Some(format!(
                "the {name} function is not bent; EA-equivalence is only decided for bent functions"
            ))));
        }
    }
    Ok(())
}

/// Canonical hash of the addition design, a complete EA invariant for bent functions.
pub fn ea_class_hash(f: &VectorialFunction, budget: u64) -> Result<String> {
    if !is_bent(f) {
        return Err(Error::NotBent(None));
    }
    Ok(canonical_form_with_budget(&addition_design(f)?, budget)?.hash())
}

/// EA-equivalence of two bent functions, decided by isomorphism of their addition designs.
pub fn ea_equivalent(a: &VectorialFunction, b: &VectorialFunction, budget: u64) -> Result<bool> {
    check_pair(a, b)?;
    if function_fingerprint(a) != function_fingerprint(b) {
        return Ok(false);
    }
    Ok(are_isomorphic(&addition_design(a)?, &addition_design(b)?, budget)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::EaTransform;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn vf(n: usize, coords: &[&str]) -> VectorialFunction {
        VectorialFunction::parse(n, coords, false).unwrap()
    }

    #[test]
    fn ea_transform_is_recognized() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = vf(4, &["x1*x3 + x2*x4"]);
        for _ in 0..5 {
            let g = EaTransform::random(4, 1, &mut rng).apply(&f).unwrap();
            assert!(ea_equivalent(&f, &g, DEFAULT_NODE_BUDGET).unwrap());
        }
    }

    #[test]
    fn non_bent_is_refused() {
        let f = vf(4, &["x1*x3 + x2*x4"]);
        let g = vf(4, &["x1*x2"]);
        assert!(matches!(ea_equivalent(&f, &g, 100), Err(Error::NotBent(_))));
        assert!(matches!(gamma_rank(&g), Err(Error::NotBent(_))));
    }

    #[test]
    fn fingerprint_ignores_relabeling() {
        let f = vf(4, &["x1*x3 + x2*x4"]);
        let d = dev_graph(&f);
        let pts: Vec<usize> = (0..32).map(|p| (p * 7 + 1) % 32).collect();
        let blks: Vec<usize> = (0..32).map(|p| (p * 11 + 5) % 32).collect();
        assert_eq!(
            fingerprint(&d),
            fingerprint(&d.relabel(&pts, &blks).unwrap())
        );
        let w = are_isomorphic(&d, &d.relabel(&pts, &blks).unwrap(), 10_000).unwrap();
        assert!(w.is_some());
    }
}
