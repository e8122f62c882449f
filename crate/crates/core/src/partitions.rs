//! Integer partitions as finite multisets of positive integers.
//!
//! A [`Partition`] is kept in canonical non-increasing order, so structural
//! equality is multiset equality. The empty partition is allowed and acts as
//! the identity for [`Partition::add`].

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A finite multiset of positive integers in non-increasing order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("partition parts must be positive")]
    ZeroPart,
    #[error("rect({n}, {m}) is invalid: both arguments must be positive")]
    ZeroRect { n: u64, m: u64 },
}

impl Partition {
    /// The partition of 0.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a partition from arbitrary-order parts, rejecting zeros.
    pub fn new<I: IntoIterator<Item = u64>>(parts: I) -> Result<Self, PartitionError> {
        let mut parts: Vec<u64> = parts.into_iter().collect();
        if parts.contains(&0) {
            return Err(PartitionError::ZeroPart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    /// `m` parts of size `n`: the partition of `n * m`.
    pub fn rect(n: u64, m: u64) -> Result<Self, PartitionError> {
        if n == 0 || m == 0 {
            return Err(PartitionError::ZeroRect { n, m });
        }
        Ok(Self {
            parts: vec![n; m as usize],
        })
    }

    /// Multiset union.
    pub fn add(&self, other: &Self) -> Self {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    /// Sum of the parts.
    pub fn total(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// Number of odd parts, with multiplicity.
    pub fn odd_count(&self) -> u64 {
        self.parts.iter().filter(|&&p| p % 2 == 1).count() as u64
    }

    /// True iff no part is odd (vacuously true for the empty partition).
    pub fn all_even(&self) -> bool {
        self.odd_count() == 0
    }

    /// Parts in non-increasing order.
    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let parts = Vec::<u64>::deserialize(deserializer)?;
        Partition::new(parts).map_err(D::Error::custom)
    }
}
