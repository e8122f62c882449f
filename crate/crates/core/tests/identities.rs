//! Property tests for the structural identities of the calculus.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use sl2calc_core::basechange::{
    check_bc_rec_compat, check_corollary_main, check_theorem_main, check_transpose_commutes,
    random_spec, BcSpec, SpecMode,
};
use sl2calc_core::cuspidal::{
    a_multisegment, CuspidalAtom, Exponent, Multisegment, Segment, TwistedCuspidal,
};
use sl2calc_core::partitions::Partition;
use sl2calc_core::tadic::{sl2_type_zelevinsky, UnitaryFactor, UnitaryRep};
use sl2calc_core::weil_deligne::tau;

const IDS: [&str; 4] = ["a", "b", "c", "d"];

fn alphabet_strategy() -> impl Strategy<Value = Vec<CuspidalAtom>> {
    prop::collection::vec(1u64..=3, 1..=4).prop_map(|degrees| {
        degrees
            .iter()
            .enumerate()
            .map(|(i, &d)| CuspidalAtom::new(IDS[i], d).unwrap())
            .collect()
    })
}

fn rep_over(alphabet: Vec<CuspidalAtom>) -> impl Strategy<Value = UnitaryRep> {
    let len = alphabet.len();
    prop::collection::vec((0..len, 1u64..=4, 1u64..=4), 0..=4).prop_map(move |raw| {
        UnitaryRep::new(
            raw.into_iter()
                .map(|(i, n, r)| UnitaryFactor::new(alphabet[i].clone(), n, r).unwrap()),
        )
    })
}

fn rep_strategy() -> impl Strategy<Value = UnitaryRep> {
    alphabet_strategy().prop_flat_map(rep_over)
}

fn rep_and_spec_strategy() -> impl Strategy<Value = (UnitaryRep, BcSpec)> {
    (alphabet_strategy(), any::<u64>(), any::<bool>()).prop_flat_map(|(alphabet, seed, free)| {
        let mode = if free {
            SpecMode::Free
        } else {
            SpecMode::EqualDegree
        };
        let spec = random_spec(&alphabet, seed, mode);
        rep_over(alphabet).prop_map(move |pi| (pi, spec.clone()))
    })
}

/// The multisegment whose skeleton the rec pipeline must reproduce.
fn family_multisegment(pi: &UnitaryRep) -> Multisegment {
    pi.factors().iter().fold(Multisegment::empty(), |acc, f| {
        acc.msum(&a_multisegment(f.atom(), f.n(), f.r()).unwrap())
    })
}

proptest! {
    #[test]
    fn sl2_direct_equals_rec_path(pi in rep_strategy()) {
        prop_assert_eq!(pi.sl2_type_direct(), pi.sl2_type());
    }

    #[test]
    fn rec_equals_tau_of_the_families(pi in rep_strategy()) {
        prop_assert_eq!(pi.rec(), tau(&family_multisegment(&pi)));
    }

    #[test]
    fn sl2_total_is_the_degree(pi in rep_strategy()) {
        prop_assert_eq!(pi.sl2_type().total(), pi.degree());
    }

    #[test]
    fn transpose_is_an_involution(pi in rep_strategy()) {
        prop_assert_eq!(pi.transpose().transpose(), pi);
    }

    #[test]
    fn sl2_of_transpose_is_rec_partition(pi in rep_strategy()) {
        let skeleton = pi.rec();
        prop_assert_eq!(&pi.transpose().sl2_type(), skeleton.partition_of());
    }

    #[test]
    fn zelevinsky_presentation_recovers_sl2(pi in rep_strategy()) {
        prop_assert_eq!(sl2_type_zelevinsky(&pi.zelevinsky_data()), pi.sl2_type());
    }

    #[test]
    fn klyachko_parity(pi in rep_strategy()) {
        let kt = pi.klyachko_type();
        prop_assert_eq!(kt.r % 2, pi.degree() % 2);
        prop_assert_eq!(kt.twok % 2, 0);
        prop_assert_eq!(kt.r + kt.twok, pi.degree());
    }

    #[test]
    fn sl2_is_multiplicative_over_factor_unions(a in rep_strategy(), b in rep_strategy()) {
        // Rename b's atoms so the two alphabets cannot conflict.
        let renamed = UnitaryRep::new(b.factors().iter().map(|f| {
            let atom = CuspidalAtom::new(format!("z{}", f.atom().id()), f.atom().degree()).unwrap();
            UnitaryFactor::new(atom, f.n(), f.r()).unwrap()
        }));
        let union = UnitaryRep::new(
            a.factors().iter().cloned().chain(renamed.factors().iter().cloned()),
        );
        prop_assert_eq!(union.sl2_type(), a.sl2_type().add(&renamed.sl2_type()));
    }

    #[test]
    fn bc_checks_hold((pi, spec) in rep_and_spec_strategy()) {
        prop_assert_eq!(spec.validate(), Ok(()));
        prop_assert_eq!(check_bc_rec_compat(&pi, &spec), Ok(true));
        prop_assert_eq!(check_transpose_commutes(&pi, &spec), Ok(true));
        prop_assert_eq!(check_theorem_main(&pi, &spec), Ok(true));
        prop_assert_eq!(check_corollary_main(&pi, &spec), Ok(true));
    }

    #[test]
    fn bc_preserves_degree_and_restriction_preserves_partition(
        (pi, spec) in rep_and_spec_strategy()
    ) {
        prop_assert_eq!(spec.bc_unitary(&pi).unwrap().degree(), pi.degree());
        let skeleton = pi.rec();
        let restricted = spec.restrict_wd(&skeleton).unwrap();
        prop_assert_eq!(restricted.partition_of(), skeleton.partition_of());
        prop_assert_eq!(restricted.dimension(), skeleton.dimension());
    }

    #[test]
    fn towers_compose((pi, first) in rep_and_spec_strategy(), seed in any::<u64>()) {
        // Second stage over the whole first-stage codomain, so the
        // composition is total.
        let mut codomain: Vec<CuspidalAtom> = first
            .domain()
            .iter()
            .flat_map(|a| first.targets(a).unwrap().to_vec())
            .collect();
        codomain.sort();
        codomain.dedup();
        let second = random_spec(&codomain, seed, SpecMode::Free);
        let composed = first.compose(&second).unwrap();
        prop_assert_eq!(composed.validate(), Ok(()));
        let sequential = second.bc_unitary(&first.bc_unitary(&pi).unwrap()).unwrap();
        prop_assert_eq!(composed.bc_unitary(&pi).unwrap(), sequential);
    }

    #[test]
    fn partition_add_laws(
        a in prop::collection::vec(1u64..=12, 0..=8),
        b in prop::collection::vec(1u64..=12, 0..=8),
        c in prop::collection::vec(1u64..=12, 0..=8),
    ) {
        let (a, b, c) = (
            Partition::new(a).unwrap(),
            Partition::new(b).unwrap(),
            Partition::new(c).unwrap(),
        );
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.add(&Partition::empty()), a.clone());
        prop_assert_eq!(a.add(&b).total(), a.total() + b.total());
        prop_assert_eq!(a.add(&b).odd_count(), a.odd_count() + b.odd_count());
        // Parity law.
        prop_assert_eq!(a.odd_count() % 2, a.total() % 2);
    }

    #[test]
    fn partition_canonicalization_is_permutation_invariant(
        parts in prop::collection::vec(1u64..=12, 0..=8),
        seed in any::<u64>(),
    ) {
        let sorted = Partition::new(parts.clone()).unwrap();
        // Deterministic shuffle driven by the seed.
        let mut shuffled = parts;
        let mut state = seed;
        for i in (1..shuffled.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (state % (i as u64 + 1)) as usize);
        }
        prop_assert_eq!(Partition::new(shuffled).unwrap(), sorted);
    }

    #[test]
    fn segment_support_shape(num in -6i64..=6, den in 1i64..=3, len in 1u64..=6, deg in 1u64..=3) {
        let center = TwistedCuspidal::new(
            CuspidalAtom::new("s", deg).unwrap(),
            BigRational::new(BigInt::from(num), BigInt::from(den)),
        );
        let seg = Segment::new(center.clone(), len).unwrap();
        let sup = seg.support();
        prop_assert_eq!(sup.len() as u64, len);
        let one = BigRational::from(BigInt::from(1));
        for w in sup.windows(2) {
            prop_assert_eq!(w[1].exponent() - w[0].exponent(), one.clone());
        }
        // Symmetric about the center: first + last = 2 * center.
        let two_center = center.exponent() * BigRational::from(BigInt::from(2));
        prop_assert_eq!(
            sup.first().unwrap().exponent() + sup.last().unwrap().exponent(),
            two_center
        );
    }
}

#[test]
fn tau_is_injective_on_small_enumerated_multisegments() {
    // Fixed alphabet and pools small enough for pairwise comparison.
    let atoms = [
        CuspidalAtom::new("a", 1).unwrap(),
        CuspidalAtom::new("b", 2).unwrap(),
    ];
    let exponents: Vec<Exponent> = [(-1i64, 2i64), (0, 1), (1, 2)]
        .iter()
        .map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
        .collect();
    let mut pool = Vec::new();
    for atom in &atoms {
        for e in &exponents {
            for len in 1..=2u64 {
                pool.push(
                    Segment::new(TwistedCuspidal::new(atom.clone(), e.clone()), len).unwrap(),
                );
            }
        }
    }

    let mut multisegments = vec![Multisegment::empty()];
    for (i, s) in pool.iter().enumerate() {
        multisegments.push(Multisegment::new(vec![s.clone()]));
        for t in &pool[i..] {
            multisegments.push(Multisegment::new(vec![s.clone(), t.clone()]));
        }
    }
    multisegments.sort_by_key(|m| format!("{m:?}"));
    multisegments.dedup();

    let skeletons: Vec<_> = multisegments.iter().map(tau).collect();
    for i in 0..multisegments.len() {
        for j in (i + 1)..multisegments.len() {
            assert_ne!(
                skeletons[i], skeletons[j],
                "tau collision between {:?} and {:?}",
                multisegments[i], multisegments[j]
            );
        }
    }
}

#[test]
fn partition_of_tau_sums_rectangles() {
    let a = family_multisegment(&UnitaryRep::new([
        UnitaryFactor::new(CuspidalAtom::new("a", 2).unwrap(), 2, 3).unwrap(),
        UnitaryFactor::new(CuspidalAtom::new("b", 1).unwrap(), 4, 1).unwrap(),
    ]));
    let expected = a.iter().fold(Partition::empty(), |acc, seg| {
        acc.add(&Partition::rect(seg.length(), seg.center().degree()).unwrap())
    });
    assert_eq!(tau(&a).partition_of(), &expected);
}
