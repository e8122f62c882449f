//! Opaque supercuspidal atoms with exact rational twists, segments and
//! multisegments.
//!
//! An atom stands for an irreducible supercuspidal class together with its
//! image on the Galois side; the identification is a pure relabeling, so one
//! token serves both. A segment `Delta[c, r]` is the set of `r` consecutive
//! half-integer twists of its center `c`; a multisegment is a finite multiset
//! of segments kept in canonical order.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Twist exponents are exact rationals; segment data only ever produces
/// denominators 1 and 2, but arbitrary values are accepted.
pub type Exponent = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CuspidalError {
    #[error("cuspidal atom id must be non-empty")]
    EmptyId,
    #[error("cuspidal atom {id:?} must have positive degree")]
    ZeroDegree { id: String },
    #[error("segment length must be positive")]
    ZeroLength,
    #[error("segment count must be positive")]
    ZeroCount,
    #[error("atom {id:?} registered with degree {have} but reused with degree {got}")]
    DegreeConflict { id: String, have: u64, got: u64 },
}

/// `k/2` as an exact rational.
pub(crate) fn half(k: i64) -> Exponent {
    BigRational::new(BigInt::from(k), BigInt::from(2))
}

/// Parses `p/q` or a plain integer, rejecting zero denominators.
pub fn parse_exponent(text: &str) -> Result<Exponent, String> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let num = BigInt::from_str(num.trim()).map_err(|e| format!("bad numerator: {e}"))?;
    let den = BigInt::from_str(den.trim()).map_err(|e| format!("bad denominator: {e}"))?;
    if den == BigInt::from(0) {
        return Err("denominator must be non-zero".to_string());
    }
    Ok(BigRational::new(num, den))
}

/// An opaque supercuspidal class; `degree` is the dimension of its
/// Galois-side image.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CuspidalAtom {
    id: String,
    degree: u64,
}

impl CuspidalAtom {
    pub fn new(id: impl Into<String>, degree: u64) -> Result<Self, CuspidalError> {
        let id = id.into();
        if id.is_empty() {
            return Err(CuspidalError::EmptyId);
        }
        if degree == 0 {
            return Err(CuspidalError::ZeroDegree { id });
        }
        Ok(Self { id, degree })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }
}

#[derive(Serialize, Deserialize)]
struct AtomRepr {
    id: String,
    deg: u64,
}

impl Serialize for CuspidalAtom {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        AtomRepr {
            id: self.id.clone(),
            deg: self.degree,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CuspidalAtom {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = AtomRepr::deserialize(deserializer)?;
        CuspidalAtom::new(repr.id, repr.deg).map_err(D::Error::custom)
    }
}

/// An atom twisted by an exact rational exponent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistedCuspidal {
    atom: CuspidalAtom,
    exponent: Exponent,
}

impl TwistedCuspidal {
    pub fn new(atom: CuspidalAtom, exponent: Exponent) -> Self {
        Self { atom, exponent }
    }

    /// The untwisted atom (exponent 0).
    pub fn unitary(atom: CuspidalAtom) -> Self {
        Self::new(atom, Exponent::from(BigInt::from(0)))
    }

    /// Shifts the exponent by `s`; `twist(0)` is the identity and twists
    /// compose additively.
    pub fn twist(&self, s: &Exponent) -> Self {
        Self {
            atom: self.atom.clone(),
            exponent: &self.exponent + s,
        }
    }

    pub fn atom(&self) -> &CuspidalAtom {
        &self.atom
    }

    pub fn exponent(&self) -> &Exponent {
        &self.exponent
    }

    pub fn degree(&self) -> u64 {
        self.atom.degree
    }
}

#[derive(Serialize, Deserialize)]
struct TwistedRepr {
    atom: CuspidalAtom,
    exp: String,
}

impl Serialize for TwistedCuspidal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        TwistedRepr {
            atom: self.atom.clone(),
            exp: self.exponent.to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TwistedCuspidal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = TwistedRepr::deserialize(deserializer)?;
        let exponent = parse_exponent(&repr.exp).map_err(D::Error::custom)?;
        Ok(TwistedCuspidal::new(repr.atom, exponent))
    }
}

/// `Delta[c, r]`: the `r` consecutive twists of `c` centered at its exponent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    center: TwistedCuspidal,
    length: u64,
}

impl Segment {
    pub fn new(center: TwistedCuspidal, length: u64) -> Result<Self, CuspidalError> {
        if length == 0 {
            return Err(CuspidalError::ZeroLength);
        }
        Ok(Self { center, length })
    }

    pub fn center(&self) -> &TwistedCuspidal {
        &self.center
    }

    pub fn length(&self) -> u64 {
        self.length
    }

    /// Degree of the induced object: `degree(atom) * length`.
    pub fn degree(&self) -> u64 {
        self.center.degree() * self.length
    }

    /// The twists `center + (1-r)/2 + i` for `i = 0..r`, in increasing
    /// exponent order.
    pub fn support(&self) -> Vec<TwistedCuspidal> {
        let r = self.length as i64;
        (0..r)
            .map(|i| self.center.twist(&half(1 - r + 2 * i)))
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct SegmentRepr {
    center: TwistedCuspidal,
    len: u64,
}

impl Serialize for Segment {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SegmentRepr {
            center: self.center.clone(),
            len: self.length,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Segment {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = SegmentRepr::deserialize(deserializer)?;
        Segment::new(repr.center, repr.len).map_err(D::Error::custom)
    }
}

/// A finite multiset of segments in canonical sorted order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Multisegment {
    segments: Vec<Segment>,
}

impl Multisegment {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(mut segments: Vec<Segment>) -> Self {
        segments.sort();
        Self { segments }
    }

    /// Multiset union.
    pub fn msum(&self, other: &Self) -> Self {
        let mut segments = self.segments.clone();
        segments.extend_from_slice(&other.segments);
        Self::new(segments)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn degree(&self) -> u64 {
        self.segments.iter().map(Segment::degree).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Segment> {
        self.segments.iter()
    }
}

impl FromIterator<Segment> for Multisegment {
    fn from_iter<I: IntoIterator<Item = Segment>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

impl Serialize for Multisegment {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.segments.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Multisegment {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(Multisegment::new(Vec::<Segment>::deserialize(
            deserializer,
        )?))
    }
}

/// The multiset of `r` segments of length `n` whose centers are the `r`
/// consecutive twists of `atom` centered at exponent 0.
pub fn a_multisegment(atom: &CuspidalAtom, n: u64, r: u64) -> Result<Multisegment, CuspidalError> {
    if n == 0 {
        return Err(CuspidalError::ZeroLength);
    }
    if r == 0 {
        return Err(CuspidalError::ZeroCount);
    }
    let base = TwistedCuspidal::unitary(atom.clone());
    let r_i = r as i64;
    let segments = (0..r_i)
        .map(|j| {
            let center = base.twist(&half(1 - r_i + 2 * j));
            Segment::new(center, n).expect("n is positive")
        })
        .collect();
    Ok(Multisegment::new(segments))
}

/// A consistent assignment of degrees to atom ids; rejects reusing an id
/// with a different degree.
#[derive(Clone, Debug, Default)]
pub struct Alphabet {
    degrees: BTreeMap<String, u64>,
}

impl Alphabet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, atom: &CuspidalAtom) -> Result<(), CuspidalError> {
        match self.degrees.get(atom.id()) {
            Some(&have) if have != atom.degree() => Err(CuspidalError::DegreeConflict {
                id: atom.id().to_string(),
                have,
                got: atom.degree(),
            }),
            Some(_) => Ok(()),
            None => {
                self.degrees.insert(atom.id().to_string(), atom.degree());
                Ok(())
            }
        }
    }

    pub fn degree_of(&self, id: &str) -> Option<u64> {
        self.degrees.get(id).copied()
    }

    pub fn atoms(&self) -> Vec<CuspidalAtom> {
        self.degrees
            .iter()
            .map(|(id, &deg)| {
                CuspidalAtom::new(id.clone(), deg).expect("registered atoms are valid")
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }
}
