//! Oriented presentations, normal forms, compositions and completion.

mod complete;
mod compose;
mod presentation;
mod reduce;

pub use complete::{canonicalize, complete, Completion};
pub use compose::{compositions, is_groebner, Composition, CompositionKind, GsReport};
pub use presentation::{Presentation, RewriteRule};
pub use reduce::{
    apply_redex, normal_form, normal_form_traced, redexes, reduce_monomial, reduce_product,
    reduce_with, Redex, Reduction, RewriteStep,
};

use crate::algebra::NcPolynomial;

/// Answer of an ideal-membership query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    /// False when the presentation has unresolved compositions; a `false`
    /// answer is then inconclusive (a zero normal form is still a proof).
    pub verified_basis: bool,
    pub normal_form: NcPolynomial,
}

/// Whether `p` lies in the two-sided ideal generated by the relations,
/// decided by `normal_form(p) = 0`.
pub fn ideal_member(p: &NcPolynomial, pres: &Presentation) -> Membership {
    ideal_member_with(p, pres, is_groebner(pres).is_basis)
}

/// As [`ideal_member`] with the basis check already done by the caller.
pub fn ideal_member_with(
    p: &NcPolynomial,
    pres: &Presentation,
    verified_basis: bool,
) -> Membership {
    let nf = normal_form(p, pres);
    Membership {
        member: nf.is_zero(),
        verified_basis,
        normal_form: nf,
    }
}
