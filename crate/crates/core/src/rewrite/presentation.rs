use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use aho_corasick::{AhoCorasick, AhoCorasickKind, MatchKind};

use crate::algebra::{Alphabet, Field, MonomialOrder, NcPolynomial, Scalar, SymbolId, Word};
use crate::{Error, Result};

/// An oriented relation `lead → tail`, read as `lead − tail = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub lead: Word,
    pub tail: NcPolynomial,
    /// Index of the relation this rule came from.
    pub source: usize,
}

impl RewriteRule {
    /// The relation as a single polynomial `lead − tail`.
    pub fn relation(&self) -> NcPolynomial {
        let mut f = self.tail.neg();
        f.add_term(self.lead.clone(), Scalar::one(self.tail.field()));
        f
    }

    /// Orients a nonzero polynomial: the leading word becomes the lead and
    /// the rest, divided by the leading coefficient and negated, the tail.
    pub fn from_polynomial(f: &NcPolynomial, ord: &MonomialOrder, source: usize) -> Result<Self> {
        let monic = f.monic(ord)?;
        let lead = monic.leading_term(ord)?.0.clone();
        let mut tail = monic.neg();
        tail.add_term(lead.clone(), Scalar::one(f.field()));
        Ok(RewriteRule { lead, tail, source })
    }

    fn is_oriented(&self, ord: &MonomialOrder) -> bool {
        self.tail
            .words()
            .all(|w| ord.cmp(&self.lead, w) == Ordering::Greater)
    }
}

/// Shared multi-pattern index over the leads of a rule list.
///
/// Symbol ids are encoded as two big-endian bytes; a match at an odd byte
/// offset straddles two symbols and is discarded.
#[derive(Clone)]
pub(crate) struct LeadIndex {
    automaton: Option<AhoCorasick>,
    by_lead: HashMap<Vec<SymbolId>, usize>,
    max_len: usize,
}

fn encode(w: &[SymbolId]) -> Vec<u8> {
    w.iter().flat_map(|x| x.to_be_bytes()).collect()
}

impl LeadIndex {
    fn build(rules: &[RewriteRule]) -> Self {
        let patterns: Vec<Vec<u8>> = rules.iter().map(|r| encode(&r.lead)).collect();
        let automaton = if patterns.is_empty() {
            None
        } else {
            Some(
                AhoCorasick::builder()
                    .match_kind(MatchKind::Standard)
                    .kind(Some(AhoCorasickKind::DFA))
                    .build(&patterns)
                    .expect("lead patterns are small"),
            )
        };
        let mut by_lead = HashMap::new();
        for (i, r) in rules.iter().enumerate() {
            by_lead.entry(r.lead.to_vec()).or_insert(i);
        }
        LeadIndex {
            automaton,
            by_lead,
            max_len: rules.iter().map(|r| r.lead.len()).max().unwrap_or(0),
        }
    }

    /// Every `(position, rule)` whose lead occurs in `w`, sorted.
    pub(crate) fn matches(&self, w: &[SymbolId]) -> Vec<(usize, usize)> {
        let Some(ac) = &self.automaton else {
            return Vec::new();
        };
        let bytes = encode(w);
        let mut out: Vec<(usize, usize)> = ac
            .find_overlapping_iter(&bytes)
            .filter(|m| m.start() % 2 == 0)
            .map(|m| (m.start() / 2, m.pattern().as_usize()))
            .collect();
        out.sort_unstable();
        out
    }

    /// Leftmost occurrence, lowest rule index on ties.
    pub(crate) fn first_match(&self, w: &[SymbolId]) -> Option<(usize, usize)> {
        self.matches(w).into_iter().next()
    }

    pub(crate) fn rule_for(&self, lead: &[SymbolId]) -> Option<usize> {
        self.by_lead.get(lead).copied()
    }

    pub(crate) fn max_len(&self) -> usize {
        self.max_len
    }
}

/// A finitely presented algebra: alphabet, monomial order, field and
/// oriented rules.
#[derive(Clone)]
pub struct Presentation {
    name: String,
    alphabet: Alphabet,
    order: MonomialOrder,
    field: Field,
    rules: Vec<RewriteRule>,
    index: LeadIndex,
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Presentation")
            .field("name", &self.name)
            .field("alphabet", &self.alphabet.names())
            .field("order", &self.order)
            .field("field", &self.field)
            .field("rules", &self.rules.len())
            .finish()
    }
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.alphabet == other.alphabet
            && self.order == other.order
            && self.field == other.field
            && self.rules == other.rules
    }
}

impl Presentation {
    /// Validates that every rule is over the alphabet and field and that its
    /// lead strictly dominates its tail.
    pub fn new(
        name: impl Into<String>,
        alphabet: Alphabet,
        order: MonomialOrder,
        field: Field,
        rules: Vec<RewriteRule>,
    ) -> Result<Self> {
        if order.alphabet_len() != alphabet.len() {
            return Err(Error::AlphabetMismatch(order.alphabet_len()));
        }
        for rule in &rules {
            if rule.tail.field() != field {
                return Err(Error::FieldMismatch);
            }
            if !alphabet.contains(&rule.lead) || !rule.tail.uses_alphabet(&alphabet) {
                let bad = rule
                    .lead
                    .iter()
                    .chain(rule.tail.words().flat_map(|w| w.iter()))
                    .find(|&&id| id as usize >= alphabet.len())
                    .copied()
                    .unwrap_or_default();
                return Err(Error::AlphabetMismatch(bad as usize));
            }
            if !rule.is_oriented(&order) {
                return Err(Error::Orientation {
                    relation: render_rule(&alphabet, rule),
                });
            }
        }
        let index = LeadIndex::build(&rules);
        Ok(Presentation {
            name: name.into(),
            alphabet,
            order,
            field,
            rules,
            index,
        })
    }

    /// Builds rules from `lhs = rhs` pairs where `lhs` is a single word that
    /// must be the leading word of the relation.
    pub fn from_relations(
        name: impl Into<String>,
        alphabet: Alphabet,
        order: MonomialOrder,
        field: Field,
        relations: Vec<(Word, NcPolynomial)>,
    ) -> Result<Self> {
        let rules = relations
            .into_iter()
            .enumerate()
            .map(|(i, (lead, tail))| RewriteRule {
                lead,
                tail,
                source: i,
            })
            .collect();
        Self::new(name, alphabet, order, field, rules)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub(crate) fn index(&self) -> &LeadIndex {
        &self.index
    }

    /// Same presentation with `rules` replaced (and re-validated).
    pub fn with_rules(&self, rules: Vec<RewriteRule>) -> Result<Self> {
        Self::new(
            self.name.clone(),
            self.alphabet.clone(),
            self.order.clone(),
            self.field,
            rules,
        )
    }

    /// True when every tail has at most one term, so a monomial stays a
    /// monomial (or becomes zero) under rewriting.
    pub fn is_binomial(&self) -> bool {
        self.rules.iter().all(|r| r.tail.len() <= 1)
    }

    /// Parses a polynomial over this presentation's alphabet and field.
    pub fn poly(&self, text: &str) -> Result<NcPolynomial> {
        crate::io::parse_polynomial(text, &self.alphabet, self.field)
    }

    pub fn word(&self, text: &str) -> Result<Word> {
        self.alphabet.word(text)
    }

    pub fn render(&self, p: &NcPolynomial) -> String {
        crate::io::format_polynomial(p, &self.alphabet, &self.order)
    }

    pub fn render_rule(&self, rule: &RewriteRule) -> String {
        render_rule(&self.alphabet, rule)
    }
}

fn render_rule(alphabet: &Alphabet, rule: &RewriteRule) -> String {
    let order = MonomialOrder::deglex(alphabet);
    format!(
        "{} = {}",
        alphabet.render(&rule.lead),
        crate::io::format_polynomial(&rule.tail, alphabet, &order)
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orientation_is_checked() {
        let a = Alphabet::new(&["y", "x"]).unwrap();
        let ord = MonomialOrder::deglex(&a);
        let x = a.word("x").unwrap();
        let bad = vec![(
            x.clone(),
            NcPolynomial::from_word(Field::Rational, x.clone()),
        )];
        let err = Presentation::from_relations("p", a.clone(), ord.clone(), Field::Rational, bad)
            .unwrap_err();
        assert!(matches!(err, Error::Orientation { .. }));

        let ok = vec![(
            a.word("y x").unwrap(),
            NcPolynomial::from_word(Field::Rational, a.word("x y").unwrap()),
        )];
        assert!(Presentation::from_relations("p", a, ord, Field::Rational, ok).is_ok());
    }

    #[test]
    fn index_reports_overlapping_matches_on_symbol_boundaries() {
        let names: Vec<String> = (0..300).map(|i| format!("s{i}")).collect();
        let a = Alphabet::new(&names).unwrap();
        let ord = MonomialOrder::deglex(&a);
        let rules = vec![
            RewriteRule {
                lead: Word::from(vec![1, 2]),
                tail: NcPolynomial::zero(Field::Rational),
                source: 0,
            },
            RewriteRule {
                lead: Word::from(vec![2, 1]),
                tail: NcPolynomial::zero(Field::Rational),
                source: 1,
            },
        ];
        let p = Presentation::new("p", a, ord, Field::Rational, rules).unwrap();
        assert_eq!(
            p.index().matches(&[1, 2, 1, 2]),
            vec![(0, 0), (1, 1), (2, 0)]
        );
        // 00 00 01 00 02 00 contains the bytes of [1, 2] at offset 1
        assert!(p.index().matches(&[0, 256, 512]).is_empty());
        assert_eq!(p.index().first_match(&[0, 2, 1]), Some((1, 1)));
    }

    #[test]
    fn from_polynomial_normalises() {
        let a = Alphabet::new(&["x", "y"]).unwrap();
        let ord = MonomialOrder::deglex(&a);
        let mut f = NcPolynomial::zero(Field::Rational);
        f.add_term(
            a.word("x x").unwrap(),
            Scalar::from_int(Field::Rational, -2),
        );
        f.add_term(a.word("x").unwrap(), Scalar::from_int(Field::Rational, 2));
        let r = RewriteRule::from_polynomial(&f, &ord, 0).unwrap();
        assert_eq!(r.lead, a.word("x x").unwrap());
        assert_eq!(
            r.tail,
            NcPolynomial::from_word(Field::Rational, a.word("x").unwrap())
        );
        assert_eq!(r.relation().monic(&ord).unwrap(), f.monic(&ord).unwrap());
    }
}
