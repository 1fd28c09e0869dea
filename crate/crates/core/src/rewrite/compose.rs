use std::cmp::Ordering;

use rayon::prelude::*;

use crate::algebra::{NcPolynomial, Word};

use super::{normal_form, Presentation, RewriteRule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CompositionKind {
    Overlap,
    Inclusion,
}

/// An ambiguity between two rules and its s-element.
///
/// * Overlap: `lead_a = a·c`, `lead_b = c·b` with `c` nonempty and shorter
///   than both leads; witness `a·c·b`, s-element `f_a·b − a·f_b`.
/// * Inclusion: `lead_a = a·lead_b·b`; witness `lead_a`, s-element
///   `f_a − a·f_b·b`.
///
/// Here `f = lead − tail`, so the witness word cancels in the s-element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composition {
    pub kind: CompositionKind,
    pub rule_a: usize,
    pub rule_b: usize,
    /// Length of `a`, i.e. where `lead_b` starts inside the witness.
    pub offset: usize,
    pub witness_word: Word,
    pub s_element: NcPolynomial,
}

/// Outcome of checking whether a presentation is a Gröbner–Shirshov basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GsReport {
    pub is_basis: bool,
    /// Number of compositions examined.
    pub compositions: usize,
    /// Compositions whose s-element has a nonzero normal form, with
    /// `s_element` replaced by that normal form.
    pub unresolved: Vec<Composition>,
}

/// All compositions of rule `a` with rule `b` (in that order).
pub(crate) fn compositions_between(rules: &[RewriteRule], a: usize, b: usize) -> Vec<Composition> {
    let (ra, rb) = (&rules[a], &rules[b]);
    let (la, lb) = (&ra.lead[..], &rb.lead[..]);
    let mut out = Vec::new();
    let shortest = la.len().min(lb.len());
    // suffix of lead_a of length k equals prefix of lead_b
    for k in 1..shortest {
        if la[la.len() - k..] == lb[..k] {
            let offset = la.len() - k;
            let witness = Word::from([la, &lb[k..]].concat());
            let fa = ra.relation().wrap(&[], &lb[k..]);
            let fb = rb.relation().wrap(&la[..offset], &[]);
            out.push(Composition {
                kind: CompositionKind::Overlap,
                rule_a: a,
                rule_b: b,
                offset,
                witness_word: witness,
                s_element: fa.checked_sub(&fb).expect("same field"),
            });
        }
    }
    let proper = lb.len() < la.len();
    if proper || (lb.len() == la.len() && a < b) {
        for offset in crate::algebra::find_occurrences(lb, la) {
            let fb = rb.relation().wrap(&la[..offset], &la[offset + lb.len()..]);
            out.push(Composition {
                kind: CompositionKind::Inclusion,
                rule_a: a,
                rule_b: b,
                offset,
                witness_word: ra.lead.clone(),
                s_element: ra.relation().checked_sub(&fb).expect("same field"),
            });
        }
    }
    out
}

/// Every overlap and inclusion composition among the presentation's rules,
/// in `(rule_a, rule_b, kind, offset)` order.
pub fn compositions(pres: &Presentation) -> Vec<Composition> {
    let rules = pres.rules();
    let n = rules.len();
    (0..n)
        .into_par_iter()
        .flat_map_iter(|a| (0..n).flat_map(move |b| compositions_between(rules, a, b)))
        .collect()
}

/// Reduces every s-element; the presentation is a basis iff all vanish.
pub fn is_groebner(pres: &Presentation) -> GsReport {
    let all = compositions(pres);
    let count = all.len();
    let unresolved: Vec<Composition> = all
        .into_par_iter()
        .filter_map(|mut c| {
            let nf = normal_form(&c.s_element, pres);
            (!nf.is_zero()).then(|| {
                c.s_element = nf;
                c
            })
        })
        .collect();
    GsReport {
        is_basis: unresolved.is_empty(),
        compositions: count,
        unresolved,
    }
}

pub(crate) fn witness_order(pres: &Presentation, x: &Composition, y: &Composition) -> Ordering {
    pres.order()
        .cmp(&x.witness_word, &y.witness_word)
        .then(x.rule_a.cmp(&y.rule_a))
        .then(x.rule_b.cmp(&y.rule_b))
        .then((x.kind as u8).cmp(&(y.kind as u8)))
        .then(x.offset.cmp(&y.offset))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Alphabet, Field, MonomialOrder};

    fn pres(names: &[&str], rules: &[(&str, &str)]) -> Presentation {
        let a = Alphabet::new(names).unwrap();
        let ord = MonomialOrder::deglex(&a);
        let rels = rules
            .iter()
            .map(|(l, r)| {
                (
                    a.word(l).unwrap(),
                    crate::io::parse_polynomial(r, &a, Field::Rational).unwrap(),
                )
            })
            .collect();
        Presentation::from_relations("t", a, ord, Field::Rational, rels).unwrap()
    }

    #[test]
    fn textbook_overlap() {
        let p = pres(&["x", "y", "z", "u", "v"], &[("x y", "u"), ("y z", "v")]);
        let cs = compositions(&p);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].kind, CompositionKind::Overlap);
        assert_eq!(cs[0].witness_word, p.word("x y z").unwrap());
        assert_eq!(cs[0].s_element, p.poly("x v - u z").unwrap());
    }

    #[test]
    fn textbook_inclusion() {
        let p = pres(&["x", "y", "u", "v"], &[("x y x", "u"), ("y", "v")]);
        // the long rule also overlaps itself on x
        let cs: Vec<_> = compositions(&p)
            .into_iter()
            .filter(|c| c.kind == CompositionKind::Inclusion)
            .collect();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].offset, 1);
        assert_eq!(cs[0].s_element, p.poly("x v x - u").unwrap());
    }

    #[test]
    fn commutation_is_a_basis() {
        let p = pres(&["y", "x"], &[("y x", "x y")]);
        let report = is_groebner(&p);
        assert!(report.is_basis);
        assert_eq!(report.compositions, 0);
    }

    #[test]
    fn idempotent_square_is_a_basis() {
        // (x^2 - x)x - x(x^2 - x) = 0
        let p = pres(&["x"], &[("x x", "x")]);
        let report = is_groebner(&p);
        assert_eq!(report.compositions, 1);
        assert!(report.is_basis);
    }

    #[test]
    fn unresolved_overlap_reduces_to_xx_minus_x() {
        let p = pres(&["x", "y"], &[("x y", "x"), ("y x", "y")]);
        let report = is_groebner(&p);
        assert!(!report.is_basis);
        let xyx = report
            .unresolved
            .iter()
            .find(|c| c.witness_word == p.word("x y x").unwrap())
            .unwrap();
        // (xy - x)x - x(yx - y) = xy - xx, NF = x - xx
        assert_eq!(xyx.s_element, p.poly("x - x x").unwrap());
    }

    #[test]
    fn identical_leads_form_an_inclusion() {
        let p = pres(&["x", "y", "z"], &[("x x", "y"), ("x x", "z")]);
        let cs = compositions(&p);
        assert_eq!(
            cs.iter()
                .filter(|c| c.kind == CompositionKind::Inclusion)
                .count(),
            1
        );
        assert!(!is_groebner(&p).is_basis);
    }
}
