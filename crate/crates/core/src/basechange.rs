//! Degree-preserving cuspidal splittings and the base-change operations
//! driven by them.
//!
//! A [`BcSpec`] names a field extension and maps every atom of a declared
//! source alphabet to a non-empty multiset of target atoms of the same total
//! degree. That is the only shape constraint the theory imposes, so
//! arbitrary degree-preserving maps are accepted; the equal-degree generator
//! mode mirrors the Galois case but is not enforced as a validation rule.
//! Twist exponents pass through unchanged.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::cuspidal::{CuspidalAtom, TwistedCuspidal};
use crate::tadic::{UnitaryFactor, UnitaryRep};
use crate::weil_deligne::{DimensionMismatch, WDClass};

/// A single validation failure of a splitting spec.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Error)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpecViolation {
    #[error("atom {id:?} has degree {expected} but its targets have total degree {got}")]
    DegreeMismatch { id: String, expected: u64, got: u64 },
    #[error("atom {id:?} maps to an empty multiset")]
    EmptyTargets { id: String },
}

/// All validation failures of a spec, in source-id order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Error)]
pub struct SpecViolations(pub Vec<SpecViolation>);

impl fmt::Display for SpecViolations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BcError {
    #[error("atom {id:?} is not in the domain of spec {label:?}")]
    UnknownAtom { label: String, id: String },
    #[error("atom {id:?} has degree {got} but spec {label:?} declares degree {expected}")]
    DegreeConflict {
        label: String,
        id: String,
        expected: u64,
        got: u64,
    },
    #[error("duplicate source atom {id:?} in spec {label:?}")]
    DuplicateSource { label: String, id: String },
    #[error(transparent)]
    Dimension(#[from] DimensionMismatch),
}

/// Generator shape for [`random_spec`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecMode {
    /// Any composition of each source degree into positive target degrees.
    Free,
    /// `g` fresh atoms of degree `d/g` for a divisor `g` of `d`.
    EqualDegree,
}

/// A labeled, degree-preserving map from source atoms to multisets of
/// target atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BcSpec {
    label: String,
    map: BTreeMap<String, (u64, Vec<CuspidalAtom>)>,
}

impl BcSpec {
    /// Builds a spec from `(source, targets)` entries; duplicate source ids
    /// are rejected.
    pub fn new<I>(label: impl Into<String>, entries: I) -> Result<Self, BcError>
    where
        I: IntoIterator<Item = (CuspidalAtom, Vec<CuspidalAtom>)>,
    {
        let label = label.into();
        let mut map = BTreeMap::new();
        for (from, to) in entries {
            let id = from.id().to_string();
            if map.insert(id.clone(), (from.degree(), to)).is_some() {
                return Err(BcError::DuplicateSource { label, id });
            }
        }
        Ok(Self { label, map })
    }

    /// The spec sending every atom of `alphabet` to itself; models the
    /// trivial extension.
    pub fn identity(label: impl Into<String>, alphabet: &[CuspidalAtom]) -> Self {
        Self::new(label, alphabet.iter().map(|a| (a.clone(), vec![a.clone()])))
            .expect("alphabet atoms have distinct ids")
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Source atoms, in id order.
    pub fn domain(&self) -> Vec<CuspidalAtom> {
        self.map
            .iter()
            .map(|(id, (deg, _))| {
                CuspidalAtom::new(id.clone(), *deg).expect("spec atoms are valid")
            })
            .collect()
    }

    /// Checks degree conservation and non-emptiness for every domain atom.
    pub fn validate(&self) -> Result<(), SpecViolations> {
        let mut violations = Vec::new();
        for (id, (deg, targets)) in &self.map {
            if targets.is_empty() {
                violations.push(SpecViolation::EmptyTargets { id: id.clone() });
                continue;
            }
            let got: u64 = targets.iter().map(CuspidalAtom::degree).sum();
            if got != *deg {
                violations.push(SpecViolation::DegreeMismatch {
                    id: id.clone(),
                    expected: *deg,
                    got,
                });
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(SpecViolations(violations))
        }
    }

    /// Targets of `atom`, requiring that `atom` matches the declared domain.
    pub fn targets(&self, atom: &CuspidalAtom) -> Result<&[CuspidalAtom], BcError> {
        match self.map.get(atom.id()) {
            None => Err(BcError::UnknownAtom {
                label: self.label.clone(),
                id: atom.id().to_string(),
            }),
            Some((deg, _)) if *deg != atom.degree() => Err(BcError::DegreeConflict {
                label: self.label.clone(),
                id: atom.id().to_string(),
                expected: *deg,
                got: atom.degree(),
            }),
            Some((_, targets)) => Ok(targets),
        }
    }

    /// Restriction of a skeleton: every twisted atom is replaced by its
    /// targets at the same exponent; the Jordan partition is unchanged.
    pub fn restrict_wd(&self, x: &WDClass) -> Result<WDClass, BcError> {
        let mut ss = Vec::new();
        for tc in x.semisimple() {
            for target in self.targets(tc.atom())? {
                ss.push(TwistedCuspidal::new(target.clone(), tc.exponent().clone()));
            }
        }
        Ok(WDClass::new(ss, x.partition_of().clone())?)
    }

    /// Base change of a unitary form: every factor is replaced by one
    /// factor per target atom, keeping `n` and `r`.
    pub fn bc_unitary(&self, pi: &UnitaryRep) -> Result<UnitaryRep, BcError> {
        let mut factors = Vec::new();
        for f in pi.factors() {
            for target in self.targets(f.atom())? {
                factors.push(
                    UnitaryFactor::new(target.clone(), f.n(), f.r())
                        .expect("factor parameters are positive"),
                );
            }
        }
        Ok(UnitaryRep::new(factors))
    }

    /// The spec applying `self` and then `second`; `second` must cover all
    /// of `self`'s targets.
    pub fn compose(&self, second: &BcSpec) -> Result<BcSpec, BcError> {
        let mut entries = Vec::new();
        for (id, (deg, targets)) in &self.map {
            let from = CuspidalAtom::new(id.clone(), *deg).expect("spec atoms are valid");
            let mut to = Vec::new();
            for t in targets {
                to.extend_from_slice(second.targets(t)?);
            }
            entries.push((from, to));
        }
        BcSpec::new(format!("{}->{}", self.label, second.label), entries)
    }
}

#[derive(Serialize, Deserialize)]
struct SpecEntryRepr {
    from: CuspidalAtom,
    to: Vec<CuspidalAtom>,
}

#[derive(Serialize, Deserialize)]
struct SpecRepr {
    label: String,
    map: Vec<SpecEntryRepr>,
}

impl Serialize for BcSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SpecRepr {
            label: self.label.clone(),
            map: self
                .domain()
                .into_iter()
                .map(|from| {
                    let to = self.map[from.id()].1.clone();
                    SpecEntryRepr { from, to }
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BcSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = SpecRepr::deserialize(deserializer)?;
        BcSpec::new(repr.label, repr.map.into_iter().map(|e| (e.from, e.to)))
            .map_err(D::Error::custom)
    }
}

/// True iff base change commutes with the skeleton map: the skeleton of the
/// base-changed form equals the restricted skeleton.
pub fn check_bc_rec_compat(pi: &UnitaryRep, spec: &BcSpec) -> Result<bool, BcError> {
    Ok(spec.bc_unitary(pi)?.rec() == spec.restrict_wd(&pi.rec())?)
}

/// True iff base change commutes with the transpose.
pub fn check_transpose_commutes(pi: &UnitaryRep, spec: &BcSpec) -> Result<bool, BcError> {
    Ok(spec.bc_unitary(&pi.transpose())? == spec.bc_unitary(pi)?.transpose())
}

/// True iff the SL(2)-type is preserved under base change.
pub fn check_theorem_main(pi: &UnitaryRep, spec: &BcSpec) -> Result<bool, BcError> {
    Ok(pi.sl2_type() == spec.bc_unitary(pi)?.sl2_type())
}

/// True iff the Klyachko type is preserved under base change, including the
/// symplectic-distinction special case for even degree.
pub fn check_corollary_main(pi: &UnitaryRep, spec: &BcSpec) -> Result<bool, BcError> {
    let image = spec.bc_unitary(pi)?;
    if pi.klyachko_type() != image.klyachko_type() {
        return Ok(false);
    }
    if pi.degree().is_multiple_of(2) {
        let lhs = pi.is_sp_distinguished().expect("degree is even");
        let rhs = image
            .is_sp_distinguished()
            .expect("base change preserves degree");
        return Ok(lhs == rhs);
    }
    Ok(true)
}

/// Deterministic degree-preserving spec over `alphabet`. Target atoms are
/// fresh and namespaced by the generated label so they cannot collide with
/// source-level ids.
pub fn random_spec(alphabet: &[CuspidalAtom], seed: u64, mode: SpecMode) -> BcSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let label = match mode {
        SpecMode::Free => format!("E{seed}f"),
        SpecMode::EqualDegree => format!("E{seed}g"),
    };
    let entries = alphabet.iter().map(|atom| {
        let degrees = match mode {
            SpecMode::Free => {
                let mut remaining = atom.degree();
                let mut degrees = Vec::new();
                while remaining > 0 {
                    let part = rng.gen_range(1..=remaining);
                    degrees.push(part);
                    remaining -= part;
                }
                degrees
            }
            SpecMode::EqualDegree => {
                let d = atom.degree();
                let divisors: Vec<u64> = (1..=d).filter(|g| d % g == 0).collect();
                let g = divisors[rng.gen_range(0..divisors.len())];
                vec![d / g; g as usize]
            }
        };
        let targets = degrees
            .iter()
            .enumerate()
            .map(|(k, &deg)| {
                CuspidalAtom::new(format!("{label}_{}_{}", atom.id(), k + 1), deg)
                    .expect("generated atoms are valid")
            })
            .collect();
        (atom.clone(), targets)
    });
    BcSpec::new(label.clone(), entries).expect("alphabet atoms have distinct ids")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuspidal::Exponent;
    use crate::partitions::Partition;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    impl BcSpec {
        /// All target atoms of all entries; test helper for building towers.
        fn domain_targets_for_test(&self) -> Vec<CuspidalAtom> {
            let mut out: Vec<CuspidalAtom> = self
                .map
                .values()
                .flat_map(|(_, targets)| targets.iter().cloned())
                .collect();
            out.sort();
            out.dedup();
            out
        }
    }

    fn atom(id: &str, deg: u64) -> CuspidalAtom {
        CuspidalAtom::new(id, deg).unwrap()
    }

    fn exp(num: i64, den: i64) -> Exponent {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn tw(id: &str, deg: u64, num: i64, den: i64) -> TwistedCuspidal {
        TwistedCuspidal::new(atom(id, deg), exp(num, den))
    }

    fn rep(factors: &[(&str, u64, u64, u64)]) -> UnitaryRep {
        UnitaryRep::new(
            factors
                .iter()
                .map(|&(id, deg, n, r)| UnitaryFactor::new(atom(id, deg), n, r).unwrap()),
        )
    }

    fn split_spec() -> BcSpec {
        BcSpec::new("E", [(atom("s", 2), vec![atom("t1", 1), atom("t2", 1)])]).unwrap()
    }

    #[test]
    fn validate_accepts_conserving_specs() {
        assert_eq!(split_spec().validate(), Ok(()));
        let id = BcSpec::identity("F", &[atom("s", 2), atom("t", 3)]);
        assert_eq!(id.validate(), Ok(()));
    }

    #[test]
    fn validate_reports_degree_mismatch() {
        let spec = BcSpec::new("E", [(atom("s", 2), vec![atom("t1", 1)])]).unwrap();
        assert_eq!(
            spec.validate(),
            Err(SpecViolations(vec![SpecViolation::DegreeMismatch {
                id: "s".into(),
                expected: 2,
                got: 1
            }]))
        );
    }

    #[test]
    fn validate_reports_empty_targets() {
        let spec = BcSpec::new("E", [(atom("s", 2), vec![])]).unwrap();
        assert_eq!(
            spec.validate(),
            Err(SpecViolations(vec![SpecViolation::EmptyTargets {
                id: "s".into()
            }]))
        );
    }

    #[test]
    fn duplicate_sources_are_rejected() {
        assert_eq!(
            BcSpec::new(
                "E",
                [
                    (atom("s", 1), vec![atom("a", 1)]),
                    (atom("s", 1), vec![atom("b", 1)])
                ]
            ),
            Err(BcError::DuplicateSource {
                label: "E".into(),
                id: "s".into()
            })
        );
    }

    #[test]
    fn restrict_wd_identity() {
        let alphabet = [atom("s", 1)];
        let spec = BcSpec::identity("F", &alphabet);
        let x = rep(&[("s", 1, 2, 2)]).rec();
        assert_eq!(spec.restrict_wd(&x).unwrap(), x);
    }

    #[test]
    fn restrict_wd_splits_atoms_in_place() {
        let x = WDClass::new(vec![tw("s", 2, 1, 2)], Partition::new([2]).unwrap()).unwrap();
        let got = split_spec().restrict_wd(&x).unwrap();
        let want = WDClass::new(
            vec![tw("t1", 1, 1, 2), tw("t2", 1, 1, 2)],
            Partition::new([2]).unwrap(),
        )
        .unwrap();
        assert_eq!(got, want);
        assert_eq!(got.partition_of(), x.partition_of());
        assert_eq!(got.dimension(), x.dimension());
    }

    #[test]
    fn bc_unitary_identity_and_split() {
        let alphabet = [atom("s", 1), atom("t", 2)];
        let spec = BcSpec::identity("F", &alphabet);
        let pi = rep(&[("s", 1, 2, 3), ("t", 2, 1, 1)]);
        assert_eq!(spec.bc_unitary(&pi).unwrap(), pi);

        let pi = rep(&[("s", 2, 2, 1)]);
        let got = split_spec().bc_unitary(&pi).unwrap();
        assert_eq!(got, rep(&[("t1", 1, 2, 1), ("t2", 1, 2, 1)]));
        assert_eq!(got.degree(), pi.degree());
    }

    #[test]
    fn bc_unitary_rejects_unknown_atoms() {
        let pi = rep(&[("u", 1, 1, 1)]);
        assert_eq!(
            split_spec().bc_unitary(&pi),
            Err(BcError::UnknownAtom {
                label: "E".into(),
                id: "u".into()
            })
        );
        let pi = rep(&[("s", 1, 1, 1)]);
        assert_eq!(
            split_spec().bc_unitary(&pi),
            Err(BcError::DegreeConflict {
                label: "E".into(),
                id: "s".into(),
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn compat_checks_on_the_split_example() {
        let pi = rep(&[("s", 2, 2, 2)]);
        let spec = split_spec();
        assert_eq!(check_bc_rec_compat(&pi, &spec), Ok(true));
        assert_eq!(check_transpose_commutes(&pi, &spec), Ok(true));
        assert_eq!(check_theorem_main(&pi, &spec), Ok(true));
        assert_eq!(check_corollary_main(&pi, &spec), Ok(true));
    }

    #[test]
    fn theorem_main_split_fixture() {
        // Both sides have SL(2)-type {1,1,1,1}.
        let pi = rep(&[("s", 2, 2, 1)]);
        let spec = split_spec();
        let image = spec.bc_unitary(&pi).unwrap();
        let quad = Partition::new([1, 1, 1, 1]).unwrap();
        assert_eq!(pi.sl2_type(), quad);
        assert_eq!(image.sl2_type(), quad);
    }

    #[test]
    fn corollary_main_on_degree_one_atoms() {
        let alphabet = [atom("s", 1)];
        let spec = random_spec(&alphabet, 11, SpecMode::Free);
        let pi = rep(&[("s", 1, 1, 2)]);
        let image = spec.bc_unitary(&pi).unwrap();
        assert_eq!(pi.klyachko_type(), image.klyachko_type());
        assert_eq!(pi.klyachko_type().twok, 2);
    }

    #[test]
    fn random_spec_is_deterministic_and_conserving() {
        let alphabet = [atom("a", 1), atom("b", 3), atom("c", 4)];
        for mode in [SpecMode::Free, SpecMode::EqualDegree] {
            let s1 = random_spec(&alphabet, 42, mode);
            let s2 = random_spec(&alphabet, 42, mode);
            assert_eq!(s1, s2);
            assert_eq!(s1.validate(), Ok(()));
        }
        let s3 = random_spec(&alphabet, 43, SpecMode::Free);
        assert_eq!(s3.validate(), Ok(()));
    }

    #[test]
    fn random_spec_degree_one_forces_single_target() {
        let alphabet = [atom("s", 1)];
        for seed in 0..10 {
            let spec = random_spec(&alphabet, seed, SpecMode::Free);
            assert_eq!(spec.targets(&atom("s", 1)).unwrap().len(), 1);
        }
    }

    #[test]
    fn random_spec_equal_degree_uses_divisors() {
        let alphabet = [atom("s", 3)];
        for seed in 0..20 {
            let spec = random_spec(&alphabet, seed, SpecMode::EqualDegree);
            let targets = spec.targets(&atom("s", 3)).unwrap();
            assert!(targets.len() == 1 || targets.len() == 3);
            assert!(targets
                .iter()
                .all(|t| t.degree() == 3 / targets.len() as u64));
        }
    }

    #[test]
    fn composition_matches_sequential_application() {
        let alphabet = [atom("a", 2), atom("b", 3)];
        let first = random_spec(&alphabet, 5, SpecMode::Free);
        let second = random_spec(&first.domain_targets_for_test(), 6, SpecMode::Free);
        let composed = first.compose(&second).unwrap();
        assert_eq!(composed.validate(), Ok(()));

        let pi = rep(&[("a", 2, 2, 1), ("b", 3, 1, 2)]);
        let sequential = second.bc_unitary(&first.bc_unitary(&pi).unwrap()).unwrap();
        assert_eq!(composed.bc_unitary(&pi).unwrap(), sequential);

        let wd = pi.rec();
        let seq_wd = second
            .restrict_wd(&first.restrict_wd(&wd).unwrap())
            .unwrap();
        assert_eq!(composed.restrict_wd(&wd).unwrap(), seq_wd);
    }
}
