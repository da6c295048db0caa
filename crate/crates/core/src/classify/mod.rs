//! Enumeration and classification of bent functions for small n: the layer-1
//! census, bent friends and extensions, bent spaces, the layer-by-layer
//! classification with exact class cardinalities, the consistency relations
//! between layers, and Hasse diagram output.

pub mod algorithm;
pub mod enumerate;
pub mod friends;
pub mod hasse;
pub mod layer1;
pub mod registry;
pub mod witness;

pub use algorithm::{
    class_cardinality, run_algorithm1, verify_relations, Classification, ClassifyOptions,
    Layer1Input, RelationCheck, RelationReport,
};
pub use enumerate::{enumerate_affine_free_bent, AffineFreeBent, SearchSpace};
pub use friends::{bent_friends, bent_friends_packed, bent_spaces, friend_orbit, BentSpace};
pub use hasse::{emit_hasse, records_jsonl, HasseFormat};
pub use layer1::{census, layer1_key, Census, CensusOptions, EnumerationCheckpoint, Layer1Key};
pub use registry::ClassRegistry;
pub use witness::{
    direct_sum_pair, direct_sum_witness, example_witness_isomorphism, graph_witness_from_support,
    lift_support_witness, verify_example_witness, DirectSumWitness,
};

use crate::{Error, Result, VectorialFunction};
use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// The index-th EA class (1-based) of (n, m)-bent functions, written C{m}_{index}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ClassId {
    pub m: usize,
    pub index: usize,
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}_{}", self.m, self.index)
    }
}

impl FromStr for ClassId {
    type Err = Error;

    fn from_str(s: &str) -> Result<ClassId> {
        let bad = || Error::parse(format!("class id must look like C2_5, got {s:?}"));
        let rest = s.strip_prefix('C').ok_or_else(bad)?;
        let (m, i) = rest.split_once('_').ok_or_else(bad)?;
        Ok(ClassId {
            m: m.parse().map_err(|_| bad())?,
            index: i.parse().map_err(|_| bad())?,
        })
    }
}

impl Serialize for ClassId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ClassId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug)]
pub struct ClassRecord {
    pub id: ClassId,
    pub representative: VectorialFunction,
    /// Number of all members, affine terms included.
    pub cardinality: BigUint,
    /// Number of affine-free members.
    pub affine_free: BigUint,
    /// Hash of the function fingerprint of the representative.
    pub fingerprint: String,
}

/// An edge between a class and a class one layer up, labeled with the number
/// of bent friends of the lower representative landing in the upper class and
/// the number of bent spaces of the upper representative in the lower class.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HasseEdge {
    pub lower: ClassId,
    pub upper: ClassId,
    pub friends: u64,
    pub spaces: u64,
}

/// |GL(m, 2)|.
pub fn gl_order(m: usize) -> BigUint {
    let q = BigUint::from(1u32) << m;
    (0..m).fold(BigUint::from(1u32), |acc, k| {
        acc * (&q - (BigUint::from(1u32) << k))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(1), BigUint::from(1u32));
        assert_eq!(gl_order(2), BigUint::from(6u32));
        assert_eq!(gl_order(3), BigUint::from(168u32));
        assert_eq!(gl_order(6), BigUint::from(20_158_709_760u64));
    }

    #[test]
    fn class_id_round_trip() {
        let id: ClassId = "C3_12".parse().unwrap();
        assert_eq!(id, ClassId { m: 3, index: 12 });
        assert_eq!(id.to_string(), "C3_12");
        assert!("D3_1".parse::<ClassId>().is_err());
        assert!("C3".parse::<ClassId>().is_err());
        let j = serde_json::to_string(&id).unwrap();
        assert_eq!(serde_json::from_str::<ClassId>(&j).unwrap(), id);
    }
}
