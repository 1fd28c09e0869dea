use std::collections::BTreeMap;

use crate::algebra::{NcPolynomial, Scalar, SortKey, SymbolId, Word};

use super::Presentation;

/// One rewrite `a·lead·b → a·tail·b` applied to a single monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteStep {
    pub rule: usize,
    pub position: usize,
    /// The monomial that was rewritten, before the step.
    pub word: Word,
    /// Number of terms in the whole polynomial after the step.
    pub terms_after: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub normal_form: NcPolynomial,
    pub steps: Vec<RewriteStep>,
}

/// A place where a rule applies: `rule`'s lead occurs in `word` at `position`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Redex {
    pub word: Word,
    pub position: usize,
    pub rule: usize,
}

fn check_input(p: &NcPolynomial, pres: &Presentation) {
    assert_eq!(
        p.field(),
        pres.field(),
        "polynomial field differs from presentation"
    );
    assert!(
        p.uses_alphabet(pres.alphabet()),
        "polynomial uses symbols outside the presentation alphabet"
    );
}

/// Normal form of `p`: no rule lead occurs in any of its monomials.
///
/// `p` must be over the presentation's alphabet and field.
pub fn normal_form(p: &NcPolynomial, pres: &Presentation) -> NcPolynomial {
    run(p, pres, false).normal_form
}

/// Like [`normal_form`], also recording every rewrite step.
pub fn normal_form_traced(p: &NcPolynomial, pres: &Presentation) -> Reduction {
    run(p, pres, true)
}

// Pops monomials from largest to smallest. A rewrite only produces words
// smaller than the one it replaces, so a popped irreducible word can never
// meet another term again and goes straight to the result.
fn run(p: &NcPolynomial, pres: &Presentation, trace: bool) -> Reduction {
    check_input(p, pres);
    let order = pres.order();
    let mut pending: BTreeMap<SortKey, (Word, Scalar)> = p
        .terms()
        .map(|(w, c)| (order.sort_key(w), (w.clone(), c.clone())))
        .collect();
    let mut done = NcPolynomial::zero(pres.field());
    let mut steps = Vec::new();

    while let Some((_, (word, coeff))) = pending.pop_last() {
        let Some((position, rule_idx)) = pres.index().first_match(&word) else {
            done.add_term(word, coeff);
            continue;
        };
        let rule = &pres.rules()[rule_idx];
        let (left, rest) = word.split_at(position);
        let right = &rest[rule.lead.len()..];
        for (tw, tc) in rule.tail.terms() {
            let w = tw.wrap(left, right);
            let c = coeff.mul(tc);
            add_pending(&mut pending, order.sort_key(&w), w, c);
        }
        if trace {
            steps.push(RewriteStep {
                rule: rule_idx,
                position,
                word,
                terms_after: pending.len() + done.len(),
            });
        }
    }
    Reduction {
        normal_form: done,
        steps,
    }
}

fn add_pending(pending: &mut BTreeMap<SortKey, (Word, Scalar)>, key: SortKey, w: Word, c: Scalar) {
    use std::collections::btree_map::Entry;
    match pending.entry(key) {
        Entry::Vacant(slot) => {
            slot.insert((w, c));
        }
        Entry::Occupied(mut slot) => {
            let sum = slot.get().1.add(&c);
            if sum.is_zero() {
                slot.remove();
            } else {
                slot.get_mut().1 = sum;
            }
        }
    }
}

/// Every redex in `p`, monomials in descending order, then by position and
/// rule.
pub fn redexes(p: &NcPolynomial, pres: &Presentation) -> Vec<Redex> {
    let order = pres.order();
    let mut words: Vec<&Word> = p.words().collect();
    words.sort_by(|u, v| order.cmp(v, u));
    words
        .into_iter()
        .flat_map(|w| {
            pres.index()
                .matches(w)
                .into_iter()
                .map(move |(position, rule)| Redex {
                    word: w.clone(),
                    position,
                    rule,
                })
        })
        .collect()
}

/// Applies a single rewrite to `p`.
pub fn apply_redex(p: &NcPolynomial, pres: &Presentation, redex: &Redex) -> NcPolynomial {
    let rule = &pres.rules()[redex.rule];
    let coeff = p
        .coeff(&redex.word)
        .expect("redex word is a term of the polynomial")
        .clone();
    debug_assert_eq!(
        &redex.word[redex.position..redex.position + rule.lead.len()],
        &rule.lead[..]
    );
    let (left, rest) = redex.word.split_at(redex.position);
    let right = &rest[rule.lead.len()..];
    let mut out = p.clone();
    out.add_term(redex.word.clone(), coeff.neg());
    for (tw, tc) in rule.tail.terms() {
        out.add_term(tw.wrap(left, right), coeff.mul(tc));
    }
    out
}

/// Reduces with a caller-chosen strategy: `choose` receives the current
/// redexes and returns the index of the one to rewrite.
pub fn reduce_with<F>(p: &NcPolynomial, pres: &Presentation, mut choose: F) -> Reduction
where
    F: FnMut(&[Redex]) -> usize,
{
    check_input(p, pres);
    let mut current = p.clone();
    let mut steps = Vec::new();
    loop {
        let candidates = redexes(&current, pres);
        if candidates.is_empty() {
            break;
        }
        let redex = candidates[choose(&candidates)].clone();
        current = apply_redex(&current, pres, &redex);
        steps.push(RewriteStep {
            rule: redex.rule,
            position: redex.position,
            word: redex.word,
            terms_after: current.len(),
        });
    }
    Reduction {
        normal_form: current,
        steps,
    }
}

/// Normal form of a single monomial.
///
/// On presentations where every tail has at most one term this runs a
/// stack-based rewriter: the processed prefix is kept irreducible, so after
/// each push only its suffixes need checking.
pub fn reduce_monomial(word: &Word, pres: &Presentation) -> NcPolynomial {
    if !pres.is_binomial() {
        return normal_form(&NcPolynomial::from_word(pres.field(), word.clone()), pres);
    }
    assert!(pres.alphabet().contains(word), "word outside the alphabet");
    match reduce_binomial(word, pres) {
        Some((c, w)) => NcPolynomial::monomial(w, c),
        None => NcPolynomial::zero(pres.field()),
    }
}

/// Normal form of `prefix·word` where `prefix` is already irreducible.
///
/// On binomial presentations the prefix is taken as-is, so the cost depends
/// only on the rewriting that `word` triggers.
pub fn reduce_product(prefix: &Word, word: &Word, pres: &Presentation) -> NcPolynomial {
    if !pres.is_binomial() {
        return reduce_monomial(&prefix.concat(word), pres);
    }
    assert!(
        pres.alphabet().contains(prefix) && pres.alphabet().contains(word),
        "word outside the alphabet"
    );
    debug_assert!(
        pres.index().matches(prefix).is_empty(),
        "prefix is reducible"
    );
    match reduce_binomial_from(prefix.to_vec(), word, pres) {
        Some((c, w)) => NcPolynomial::monomial(w, c),
        None => NcPolynomial::zero(pres.field()),
    }
}

fn reduce_binomial(word: &[SymbolId], pres: &Presentation) -> Option<(Scalar, Word)> {
    reduce_binomial_from(Vec::with_capacity(word.len() + 8), word, pres)
}

fn reduce_binomial_from(
    mut out: Vec<SymbolId>,
    word: &[SymbolId],
    pres: &Presentation,
) -> Option<(Scalar, Word)> {
    let index = pres.index();
    let max_len = index.max_len();
    let mut coeff = Scalar::one(pres.field());
    let mut input: Vec<SymbolId> = word.iter().rev().copied().collect();
    while let Some(x) = input.pop() {
        out.push(x);
        let n = out.len();
        let hit =
            (1..=max_len.min(n)).find_map(|len| index.rule_for(&out[n - len..]).map(|r| (len, r)));
        if let Some((len, r)) = hit {
            out.truncate(n - len);
            let (tw, tc) = pres.rules()[r].tail.terms().next()?;
            coeff = coeff.mul(tc);
            input.extend(tw.iter().rev());
        }
    }
    Some((coeff, Word::from(out)))
}
