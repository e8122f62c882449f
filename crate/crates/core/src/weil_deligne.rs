//! The combinatorial Weil-Deligne skeleton: a multiset of twisted atoms (the
//! semisimple part) together with the Jordan partition of the nilpotent
//! operator. No matrices are stored; the partition is the nilpotent datum.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::cuspidal::{Multisegment, Segment, TwistedCuspidal};
use crate::partitions::Partition;

/// Raised when a skeleton's semisimple degree disagrees with its Jordan
/// partition total.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error(
    "semisimple degree {semisimple_degree} does not match Jordan partition total {jordan_total}"
)]
pub struct DimensionMismatch {
    pub semisimple_degree: u64,
    pub jordan_total: u64,
}

/// `(semisimple multiset, Jordan partition)` with matching dimensions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WDClass {
    semisimple: Vec<TwistedCuspidal>,
    jordan: Partition,
}

impl WDClass {
    /// The zero-dimensional skeleton.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a skeleton, enforcing dimension consistency. This constructor
    /// (together with deserialization, which routes through it) is the only
    /// way to introduce a skeleton from raw parts, so a corrupt value is
    /// reported here rather than propagating.
    pub fn new(
        mut semisimple: Vec<TwistedCuspidal>,
        jordan: Partition,
    ) -> Result<Self, DimensionMismatch> {
        let semisimple_degree: u64 = semisimple.iter().map(TwistedCuspidal::degree).sum();
        let jordan_total = jordan.total();
        if semisimple_degree != jordan_total {
            return Err(DimensionMismatch {
                semisimple_degree,
                jordan_total,
            });
        }
        semisimple.sort();
        Ok(Self { semisimple, jordan })
    }

    /// Multiset union of semisimple parts, sum of Jordan partitions.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut semisimple = self.semisimple.clone();
        semisimple.extend_from_slice(&other.semisimple);
        semisimple.sort();
        Self {
            semisimple,
            jordan: self.jordan.add(&other.jordan),
        }
    }

    /// Projection to the Jordan partition.
    pub fn partition_of(&self) -> &Partition {
        &self.jordan
    }

    /// Total dimension; equals the semisimple degree by the construction
    /// invariant.
    pub fn dimension(&self) -> u64 {
        self.jordan.total()
    }

    /// Semisimple multiset in canonical order.
    pub fn semisimple(&self) -> &[TwistedCuspidal] {
        &self.semisimple
    }
}

#[derive(Serialize, Deserialize)]
struct WDRepr {
    ss: Vec<TwistedCuspidal>,
    jordan: Partition,
}

impl Serialize for WDClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        WDRepr {
            ss: self.semisimple.clone(),
            jordan: self.jordan.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WDClass {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = WDRepr::deserialize(deserializer)?;
        WDClass::new(repr.ss, repr.jordan).map_err(D::Error::custom)
    }
}

/// Skeleton of a single segment: the semisimple part is the segment's
/// support and the Jordan partition has `degree(atom)` parts of size
/// `length`.
pub fn tau_segment(seg: &Segment) -> WDClass {
    let jordan = Partition::rect(seg.length(), seg.center().degree())
        .expect("segment length and atom degree are positive");
    WDClass::new(seg.support(), jordan).expect("support degree matches the rectangle total")
}

/// Skeleton of a multisegment: direct sum over its segments.
pub fn tau(a: &Multisegment) -> WDClass {
    a.iter().fold(WDClass::empty(), |acc, seg| {
        acc.direct_sum(&tau_segment(seg))
    })
}
