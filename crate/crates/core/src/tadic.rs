//! Unitary forms `U(delta[sigma,n],r)` and their formal products.
//!
//! A [`UnitaryRep`] is a finite multiset of factors, each an atom together
//! with two positive integers `n` and `r`. Any such multiset is accepted:
//! the classification of the unitary dual guarantees that products of these
//! factors stay irreducible and unitarizable, so no side conditions apply.
//! The transpose swaps `n` and `r` factorwise; it is the only involution
//! needed here, so no general multisegment involution is implemented.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::cuspidal::{a_multisegment, half, CuspidalAtom, Multisegment, Segment, TwistedCuspidal};
use crate::partitions::Partition;
use crate::weil_deligne::{tau_segment, WDClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TadicError {
    #[error("factor parameter n must be positive")]
    ZeroN,
    #[error("factor parameter r must be positive")]
    ZeroR,
}

/// Raised by the symplectic-distinction predicate on odd-degree input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("symplectic distinction is defined for even degree, got {degree}")]
pub struct OddDegree {
    pub degree: u64,
}

/// One factor `U(delta[sigma,n],r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitaryFactor {
    atom: CuspidalAtom,
    n: u64,
    r: u64,
}

impl UnitaryFactor {
    pub fn new(atom: CuspidalAtom, n: u64, r: u64) -> Result<Self, TadicError> {
        if n == 0 {
            return Err(TadicError::ZeroN);
        }
        if r == 0 {
            return Err(TadicError::ZeroR);
        }
        Ok(Self { atom, n, r })
    }

    pub fn atom(&self) -> &CuspidalAtom {
        &self.atom
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn degree(&self) -> u64 {
        self.atom.degree() * self.n * self.r
    }

    /// Swaps the two integer parameters.
    pub fn transpose(&self) -> Self {
        Self {
            atom: self.atom.clone(),
            n: self.r,
            r: self.n,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct FactorRepr {
    sigma: CuspidalAtom,
    n: u64,
    r: u64,
}

impl Serialize for UnitaryFactor {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        FactorRepr {
            sigma: self.atom.clone(),
            n: self.n,
            r: self.r,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for UnitaryFactor {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = FactorRepr::deserialize(deserializer)?;
        UnitaryFactor::new(repr.sigma, repr.n, repr.r).map_err(D::Error::custom)
    }
}

/// A formal multiset of unitary factors in canonical `(id, degree, n, r)`
/// order. The empty multiset is the degree-0 unit; it is valid for every
/// operation here but is not producible from the surface syntax.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UnitaryRep {
    factors: Vec<UnitaryFactor>,
}

impl UnitaryRep {
    /// The degree-0 unit.
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn new<I: IntoIterator<Item = UnitaryFactor>>(factors: I) -> Self {
        let mut factors: Vec<UnitaryFactor> = factors.into_iter().collect();
        factors.sort();
        Self { factors }
    }

    pub fn factors(&self) -> &[UnitaryFactor] {
        &self.factors
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Total degree `sum(degree(sigma_i) * n_i * r_i)`.
    pub fn degree(&self) -> u64 {
        self.factors.iter().map(UnitaryFactor::degree).sum()
    }

    /// Factorwise swap of `n` and `r`; an involution.
    pub fn transpose(&self) -> Self {
        Self::new(self.factors.iter().map(UnitaryFactor::transpose))
    }

    /// The multisegment presenting this representation in Zelevinsky
    /// coordinates: for each factor, `n` segments of length `r` on a
    /// centered twist window. The representation is the transpose of the
    /// class attached to this multisegment.
    pub fn zelevinsky_data(&self) -> Multisegment {
        self.factors.iter().fold(Multisegment::empty(), |acc, f| {
            let a = a_multisegment(f.atom(), f.r, f.n).expect("factor parameters are positive");
            acc.msum(&a)
        })
    }

    /// The Weil-Deligne skeleton: for each factor, the direct sum over
    /// `j = 1..=r` of the skeleton of the length-`n` segment centered at
    /// the twist `(r+1)/2 - j`.
    pub fn rec(&self) -> WDClass {
        let mut acc = WDClass::empty();
        for f in &self.factors {
            let base = TwistedCuspidal::unitary(f.atom().clone());
            let r = f.r as i64;
            for j in 1..=r {
                let center = base.twist(&half(r + 1 - 2 * j));
                let seg = Segment::new(center, f.n).expect("n is positive");
                acc = acc.direct_sum(&tau_segment(&seg));
            }
        }
        acc
    }

    /// SL(2)-type: the Jordan partition of the skeleton of the transpose.
    pub fn sl2_type(&self) -> Partition {
        self.transpose().rec().partition_of().clone()
    }

    /// SL(2)-type computed directly from the factor parameters: for each
    /// factor, `n * degree(sigma)` parts of size `r`. Agrees with
    /// [`UnitaryRep::sl2_type`]; the two routes are kept independent so that
    /// the agreement can be machine-checked.
    pub fn sl2_type_direct(&self) -> Partition {
        self.factors.iter().fold(Partition::empty(), |acc, f| {
            let rect = Partition::rect(f.r, f.n * f.atom().degree())
                .expect("factor parameters are positive");
            acc.add(&rect)
        })
    }

    /// The pair `(r, 2k)` with `r` the number of odd parts of the
    /// SL(2)-type and `r + 2k` the degree.
    pub fn klyachko_type(&self) -> KlyachkoType {
        let v = self.sl2_type();
        let r = v.odd_count();
        let degree = self.degree();
        // The parity law (odd part count = total mod 2) makes this
        // decomposition exist for every input; a failure means a corrupt
        // value.
        assert!(
            degree >= r && (degree - r).is_multiple_of(2),
            "parity law violated: degree {degree}, odd parts {r}"
        );
        KlyachkoType {
            r,
            twok: degree - r,
        }
    }

    /// True iff the SL(2)-type consists entirely of even parts. Only
    /// defined for even degree.
    pub fn is_sp_distinguished(&self) -> Result<bool, OddDegree> {
        let degree = self.degree();
        if !degree.is_multiple_of(2) {
            return Err(OddDegree { degree });
        }
        Ok(self.sl2_type().all_even())
    }
}

impl Serialize for UnitaryRep {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.factors.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for UnitaryRep {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(UnitaryRep::new(Vec::<UnitaryFactor>::deserialize(
            deserializer,
        )?))
    }
}

/// SL(2)-type of the class attached to a multisegment: each segment of
/// length `r` over a degree-`t` atom contributes `t` parts of size `r`.
/// Equals the Jordan partition of the multisegment's skeleton.
pub fn sl2_type_zelevinsky(a: &Multisegment) -> Partition {
    a.iter().fold(Partition::empty(), |acc, seg| {
        let rect = Partition::rect(seg.length(), seg.center().degree())
            .expect("segment length and atom degree are positive");
        acc.add(&rect)
    })
}

/// A mixed Whittaker-symplectic model type: `r` is the Whittaker rank and
/// `twok` the symplectic rank, with `r + twok` the degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KlyachkoType {
    pub r: u64,
    pub twok: u64,
}

impl fmt::Display for KlyachkoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.r, self.twok)
    }
}
