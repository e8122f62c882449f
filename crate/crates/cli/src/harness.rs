//! Randomized and exhaustive verification of the structural identities.
//!
//! `verify` runs seeded random trials; `enumerate` certifies every factor
//! multiset of bounded degree over a single degree-1 atom. Both run the same
//! per-instance check battery and stop at the first counterexample, which is
//! reported as a machine-readable record. A counterexample is always a
//! defect: the identities hold for all inputs.

use std::collections::HashSet;

use serde::Serialize;
use sl2calc_core::basechange::{
    check_bc_rec_compat, check_corollary_main, check_theorem_main, check_transpose_commutes, BcSpec,
};
use sl2calc_core::cuspidal::{a_multisegment, CuspidalAtom, Multisegment};
use sl2calc_core::tadic::{sl2_type_zelevinsky, UnitaryFactor, UnitaryRep};
use sl2calc_core::weil_deligne::tau;

use crate::gen::{gen_alphabet, gen_rep, gen_spec, trial_rng, GenBounds};
use crate::parse::parse_rep;
use crate::print::rep_string;

/// Names and order of the per-instance checks.
pub const CHECKS: &[&str] = &[
    "sl2_direct_equals_rec_path",
    "rec_cross_path",
    "zel_data_sl2_path",
    "transpose_involution",
    "sl2_total_equals_degree",
    "klyachko_parity",
    "roundtrip_print_parse",
    "spec_validates",
    "bc_preserves_degree",
    "bc_rec_compat",
    "bc_transpose_commutes",
    "theorem_main",
    "corollary_main",
    "restrict_preserves_partition",
];

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub trial: u64,
    pub check: String,
    pub rep: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<BcSpec>,
    pub details: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub command: &'static str,
    pub trials: u64,
    pub seed: u64,
    pub alphabet: u32,
    pub maxdeg: u64,
    pub checks_per_trial: usize,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumerateReport {
    pub command: &'static str,
    pub maxn: u64,
    pub count: u64,
    pub checks_per_instance: usize,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub trials: u64,
    pub seed: u64,
    pub alphabet: u32,
    pub maxdeg: u64,
}

/// Runs every check against one `(rep, spec)` instance.
pub fn check_instance(pi: &UnitaryRep, spec: &BcSpec) -> Result<(), (String, String)> {
    let fail = |check: &str, details: String| Err::<(), _>((check.to_string(), details));

    let direct = pi.sl2_type_direct();
    let via_rec = pi.sl2_type();
    if direct != via_rec {
        return fail(
            "sl2_direct_equals_rec_path",
            format!("direct {direct} vs rec path {via_rec}"),
        );
    }

    let families = pi.factors().iter().fold(Multisegment::empty(), |acc, f| {
        acc.msum(&a_multisegment(f.atom(), f.n(), f.r()).expect("positive parameters"))
    });
    if pi.rec() != tau(&families) {
        return fail(
            "rec_cross_path",
            "rec disagrees with tau of the multisegment route".into(),
        );
    }

    if sl2_type_zelevinsky(&pi.zelevinsky_data()) != via_rec {
        return fail(
            "zel_data_sl2_path",
            format!(
                "presentation route {} vs {via_rec}",
                sl2_type_zelevinsky(&pi.zelevinsky_data())
            ),
        );
    }

    if pi.transpose().transpose() != *pi {
        return fail(
            "transpose_involution",
            "double transpose changed the value".into(),
        );
    }

    if via_rec.total() != pi.degree() {
        return fail(
            "sl2_total_equals_degree",
            format!("total {} vs degree {}", via_rec.total(), pi.degree()),
        );
    }

    let kt = pi.klyachko_type();
    if kt.r % 2 != pi.degree() % 2 || !kt.twok.is_multiple_of(2) || kt.r + kt.twok != pi.degree() {
        return fail(
            "klyachko_parity",
            format!("got {kt} for degree {}", pi.degree()),
        );
    }

    if !pi.is_unit() {
        let printed = rep_string(pi);
        match parse_rep(&printed) {
            Ok(back) if back == *pi => {}
            Ok(_) => {
                return fail(
                    "roundtrip_print_parse",
                    format!("{printed:?} parsed differently"),
                )
            }
            Err(e) => return fail("roundtrip_print_parse", format!("{printed:?}: {e}")),
        }
    }

    if let Err(v) = spec.validate() {
        return fail("spec_validates", v.to_string());
    }

    let image = match spec.bc_unitary(pi) {
        Ok(image) => image,
        Err(e) => return fail("bc_preserves_degree", e.to_string()),
    };
    if image.degree() != pi.degree() {
        return fail(
            "bc_preserves_degree",
            format!("degree {} vs {}", image.degree(), pi.degree()),
        );
    }

    match check_bc_rec_compat(pi, spec) {
        Ok(true) => {}
        Ok(false) => {
            return fail(
                "bc_rec_compat",
                "skeleton of image differs from restricted skeleton".into(),
            )
        }
        Err(e) => return fail("bc_rec_compat", e.to_string()),
    }

    match check_transpose_commutes(pi, spec) {
        Ok(true) => {}
        Ok(false) => {
            return fail(
                "bc_transpose_commutes",
                "bc of transpose differs from transpose of bc".into(),
            )
        }
        Err(e) => return fail("bc_transpose_commutes", e.to_string()),
    }

    match check_theorem_main(pi, spec) {
        Ok(true) => {}
        Ok(false) => {
            return fail(
                "theorem_main",
                format!("{} vs {}", pi.sl2_type(), image.sl2_type()),
            )
        }
        Err(e) => return fail("theorem_main", e.to_string()),
    }

    match check_corollary_main(pi, spec) {
        Ok(true) => {}
        Ok(false) => {
            return fail(
                "corollary_main",
                format!("{} vs {}", pi.klyachko_type(), image.klyachko_type()),
            )
        }
        Err(e) => return fail("corollary_main", e.to_string()),
    }

    let skeleton = pi.rec();
    match spec.restrict_wd(&skeleton) {
        Ok(restricted) if restricted.partition_of() == skeleton.partition_of() => {}
        Ok(restricted) => {
            return fail(
                "restrict_preserves_partition",
                format!(
                    "{} vs {}",
                    restricted.partition_of(),
                    skeleton.partition_of()
                ),
            )
        }
        Err(e) => return fail("restrict_preserves_partition", e.to_string()),
    }

    Ok(())
}

/// Seeded random verification; stops at the first counterexample.
pub fn verify(cfg: &VerifyConfig) -> VerifyReport {
    let bounds = GenBounds {
        alphabet: cfg.alphabet,
        max_degree: cfg.maxdeg,
        ..GenBounds::default()
    };
    let mut counterexample = None;
    for trial in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, trial);
        let alphabet = gen_alphabet(&mut rng, &bounds);
        let pi = gen_rep(&mut rng, &alphabet, &bounds);
        let spec = gen_spec(&mut rng, &alphabet);
        if let Err((check, details)) = check_instance(&pi, &spec) {
            counterexample = Some(Counterexample {
                trial,
                check,
                rep: rep_string(&pi),
                spec: Some(spec),
                details,
            });
            break;
        }
    }
    VerifyReport {
        command: "verify",
        trials: cfg.trials,
        seed: cfg.seed,
        alphabet: cfg.alphabet,
        maxdeg: cfg.maxdeg,
        checks_per_trial: CHECKS.len(),
        status: if counterexample.is_none() {
            "ok"
        } else {
            "violation"
        },
        counterexample,
    }
}

/// All factor parameter pairs `(n, r)` with `n * r <= maxn`, in
/// lexicographic order.
fn factor_shapes(maxn: u64) -> Vec<(u64, u64)> {
    let mut shapes = Vec::new();
    for n in 1..=maxn {
        for r in 1..=maxn / n {
            shapes.push((n, r));
        }
    }
    shapes
}

/// Exhaustive certification: visits every non-empty factor multiset of
/// degree at most `maxn` over one degree-1 atom exactly once and runs the
/// full check battery on each, against both the identity spec and a
/// relabeling spec.
pub fn enumerate(maxn: u64) -> EnumerateReport {
    let atom = CuspidalAtom::new("s", 1).expect("valid atom");
    let identity = BcSpec::identity("F", std::slice::from_ref(&atom));
    let relabel = BcSpec::new(
        "E",
        [(
            atom.clone(),
            vec![CuspidalAtom::new("E_s_1", 1).expect("valid atom")],
        )],
    )
    .expect("single entry");

    let shapes = factor_shapes(maxn);
    let mut seen: HashSet<UnitaryRep> = HashSet::new();
    let mut count = 0u64;
    let mut counterexample = None;

    // Multisets of shapes in non-decreasing index order, pruned by degree.
    let mut stack: Vec<UnitaryFactor> = Vec::new();
    fn descend(
        atom: &CuspidalAtom,
        shapes: &[(u64, u64)],
        start: usize,
        remaining: u64,
        stack: &mut Vec<UnitaryFactor>,
        visit: &mut impl FnMut(&[UnitaryFactor]) -> Result<(), (String, String)>,
    ) -> Result<(), (String, String)> {
        if !stack.is_empty() {
            visit(stack)?;
        }
        for (i, &(n, r)) in shapes.iter().enumerate().skip(start) {
            let degree = n * r;
            if degree > remaining {
                continue;
            }
            stack.push(UnitaryFactor::new(atom.clone(), n, r).expect("positive parameters"));
            descend(atom, shapes, i, remaining - degree, stack, visit)?;
            stack.pop();
        }
        Ok(())
    }

    let result = descend(&atom, &shapes, 0, maxn, &mut stack, &mut |factors| {
        let pi = UnitaryRep::new(factors.iter().cloned());
        if !seen.insert(pi.clone()) {
            return Err((
                "enumeration_unique".to_string(),
                format!("{} visited twice", rep_string(&pi)),
            ));
        }
        count += 1;
        check_instance(&pi, &identity)?;
        check_instance(&pi, &relabel)?;
        Ok(())
    });

    if let Err((check, details)) = result {
        counterexample = Some(Counterexample {
            trial: count,
            check,
            rep: details.clone(),
            spec: None,
            details,
        });
    }

    EnumerateReport {
        command: "enumerate",
        maxn,
        count,
        checks_per_instance: 2 * CHECKS.len(),
        status: if counterexample.is_none() {
            "ok"
        } else {
            "violation"
        },
        counterexample,
    }
}
