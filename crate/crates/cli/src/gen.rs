//! Seeded generators for the verification harness. Every value is a pure
//! function of the supplied RNG state, and each trial derives its own RNG
//! from `(master seed, trial index)`, so serial and parallel runs agree.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sl2calc_core::basechange::{random_spec, BcSpec, SpecMode};
use sl2calc_core::cuspidal::{CuspidalAtom, Multisegment, Segment, TwistedCuspidal};
use sl2calc_core::tadic::{UnitaryFactor, UnitaryRep};

/// Default generator bounds: up to 4 atoms of degree up to 3, up to 4
/// factors per representation with parameters up to 4. Keeps every instance
/// small while still exercising degree > 1 splitting.
#[derive(Clone, Copy, Debug)]
pub struct GenBounds {
    pub alphabet: u32,
    pub max_degree: u64,
    pub max_factors: u32,
    pub max_param: u64,
}

impl Default for GenBounds {
    fn default() -> Self {
        Self {
            alphabet: 4,
            max_degree: 3,
            max_factors: 4,
            max_param: 4,
        }
    }
}

/// Independent RNG for one trial of a seeded run.
pub fn trial_rng(master_seed: u64, trial: u64) -> ChaCha8Rng {
    let mut seed = [0u8; 32];
    seed[..8].copy_from_slice(&master_seed.to_le_bytes());
    seed[8..16].copy_from_slice(&trial.to_le_bytes());
    ChaCha8Rng::from_seed(seed)
}

fn atom_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("a{i}")
    }
}

/// A random alphabet of 1..=bounds.alphabet atoms with distinct ids.
pub fn gen_alphabet(rng: &mut impl Rng, bounds: &GenBounds) -> Vec<CuspidalAtom> {
    let count = rng.gen_range(1..=bounds.alphabet.max(1)) as usize;
    (0..count)
        .map(|i| {
            let degree = rng.gen_range(1..=bounds.max_degree.max(1));
            CuspidalAtom::new(atom_name(i), degree).expect("generated atoms are valid")
        })
        .collect()
}

/// A random non-unit representation over `alphabet`.
pub fn gen_rep(rng: &mut impl Rng, alphabet: &[CuspidalAtom], bounds: &GenBounds) -> UnitaryRep {
    let count = rng.gen_range(1..=bounds.max_factors.max(1));
    UnitaryRep::new((0..count).map(|_| {
        let atom = alphabet[rng.gen_range(0..alphabet.len())].clone();
        let n = rng.gen_range(1..=bounds.max_param);
        let r = rng.gen_range(1..=bounds.max_param);
        UnitaryFactor::new(atom, n, r).expect("parameters are positive")
    }))
}

/// A random multisegment over `alphabet`, possibly empty, with small
/// rational exponents (denominators 1..=3).
pub fn gen_multisegment(
    rng: &mut impl Rng,
    alphabet: &[CuspidalAtom],
    bounds: &GenBounds,
) -> Multisegment {
    let count = rng.gen_range(0..=bounds.max_factors);
    Multisegment::new(
        (0..count)
            .map(|_| {
                let atom = alphabet[rng.gen_range(0..alphabet.len())].clone();
                let num = rng.gen_range(-4i64..=4);
                let den = rng.gen_range(1i64..=3);
                let center = TwistedCuspidal::new(
                    atom,
                    BigRational::new(BigInt::from(num), BigInt::from(den)),
                );
                Segment::new(center, rng.gen_range(1..=bounds.max_param))
                    .expect("length is positive")
            })
            .collect(),
    )
}

/// A random validated degree-preserving spec over `alphabet`.
pub fn gen_spec(rng: &mut impl Rng, alphabet: &[CuspidalAtom]) -> BcSpec {
    let mode = if rng.gen_bool(0.5) {
        SpecMode::Free
    } else {
        SpecMode::EqualDegree
    };
    random_spec(alphabet, rng.gen(), mode)
}
