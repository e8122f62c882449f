//! Canonical printers for the expression language. `parse(print(x)) == x`
//! for every value whose atom ids are valid identifiers.

use num_traits::Zero;
use sl2calc_core::cuspidal::{CuspidalAtom, Exponent, Multisegment};
use sl2calc_core::tadic::UnitaryRep;
use sl2calc_core::weil_deligne::WDClass;

fn cusp_string(atom: &CuspidalAtom, exponent: &Exponent) -> String {
    let mut out = atom.id().to_string();
    if atom.degree() != 1 {
        out.push(':');
        out.push_str(&atom.degree().to_string());
    }
    if !exponent.is_zero() {
        out.push('@');
        out.push_str(&exponent.to_string());
    }
    out
}

/// `U(delta[cusp,n],r)` factors joined by `" x "`; the degree-0 unit prints
/// as the empty string (it has no surface form).
pub fn rep_string(rep: &UnitaryRep) -> String {
    rep.factors()
        .iter()
        .map(|f| {
            format!(
                "U(delta[{},{}],{})",
                cusp_string(f.atom(), &Exponent::zero()),
                f.n(),
                f.r()
            )
        })
        .collect::<Vec<_>>()
        .join(" x ")
}

/// `<[cusp;len], ...>`.
pub fn multisegment_string(a: &Multisegment) -> String {
    let body = a
        .iter()
        .map(|seg| {
            format!(
                "[{};{}]",
                cusp_string(seg.center().atom(), seg.center().exponent()),
                seg.length()
            )
        })
        .collect::<Vec<_>>()
        .join(", ");
    format!("<{body}>")
}

/// `([cusp, ...], {jordan})`.
pub fn wd_string(wd: &WDClass) -> String {
    let ss = wd
        .semisimple()
        .iter()
        .map(|t| cusp_string(t.atom(), t.exponent()))
        .collect::<Vec<_>>()
        .join(", ");
    format!("([{ss}], {})", wd.partition_of())
}
