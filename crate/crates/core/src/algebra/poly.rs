use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::{Error, Result};

use super::{Alphabet, Field, MonomialOrder, Scalar, Word};

/// An element of the free associative algebra: a finite map from words to
/// nonzero scalars. The zero polynomial is the empty map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcPolynomial {
    field: Field,
    terms: BTreeMap<Word, Scalar>,
}

impl NcPolynomial {
    pub fn zero(field: Field) -> Self {
        NcPolynomial {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::monomial(Word::empty(), Scalar::one(field))
    }

    pub fn monomial(word: Word, coeff: Scalar) -> Self {
        let mut p = Self::zero(coeff.field());
        p.add_term(word, coeff);
        p
    }

    pub fn from_word(field: Field, word: Word) -> Self {
        Self::monomial(word, Scalar::one(field))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for `c·w` with a single term.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, Scalar)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, w: &Word) -> Option<&Scalar> {
        self.terms.get(w)
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn uses_alphabet(&self, alphabet: &Alphabet) -> bool {
        self.terms.keys().all(|w| alphabet.contains(w))
    }

    /// Adds `coeff·word` in place, dropping the term if it cancels.
    ///
    /// # Panics
    ///
    /// Panics when `coeff` lives in a different field.
    pub fn add_term(&mut self, word: Word, coeff: Scalar) {
        assert_eq!(coeff.field(), self.field, "scalar field mismatch");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get().add(&coeff);
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn checked_add(&self, other: &NcPolynomial) -> Result<NcPolynomial> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &NcPolynomial) -> Result<NcPolynomial> {
        self.checked_add(&other.neg())
    }

    /// Product in the free algebra: the bilinear extension of concatenation.
    pub fn checked_mul(&self, other: &NcPolynomial) -> Result<NcPolynomial> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = NcPolynomial::zero(self.field);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a.mul(b));
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> NcPolynomial {
        self.scale(&Scalar::from_int(self.field, -1))
    }

    pub fn scale(&self, c: &Scalar) -> NcPolynomial {
        let mut out = NcPolynomial::zero(self.field);
        for (w, a) in &self.terms {
            out.add_term(w.clone(), a.mul(c));
        }
        out
    }

    /// `left · self · right` for words `left`, `right`.
    pub fn wrap(&self, left: &[u16], right: &[u16]) -> NcPolynomial {
        NcPolynomial {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.wrap(left, right), c.clone()))
                .collect(),
        }
    }

    /// The order-maximal word together with its coefficient.
    pub fn leading_term(&self, ord: &MonomialOrder) -> Result<(&Word, &Scalar)> {
        self.terms
            .iter()
            .max_by(|(u, _), (v, _)| ord.cmp(u, v))
            .ok_or(Error::ZeroPolynomial)
    }

    /// Rescales so the leading coefficient is 1.
    pub fn monic(&self, ord: &MonomialOrder) -> Result<NcPolynomial> {
        let (_, c) = self.leading_term(ord)?;
        Ok(self.scale(&c.inv()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn setup() -> (Alphabet, MonomialOrder) {
        let a = Alphabet::new(&["t", "x", "y", "R", "a1", "a0", "Q4", "P3"]).unwrap();
        let ord = MonomialOrder::deglex(&a);
        (a, ord)
    }

    fn poly(a: &Alphabet, terms: &[(i64, &str)]) -> NcPolynomial {
        let mut p = NcPolynomial::zero(Field::Rational);
        for &(c, w) in terms {
            p.add_term(a.word(w).unwrap(), Scalar::from_int(Field::Rational, c));
        }
        p
    }

    #[test]
    fn multiply_examples() {
        let (a, _) = setup();
        let prod = poly(&a, &[(1, "t")])
            .checked_mul(&poly(&a, &[(1, "R a1")]))
            .unwrap();
        assert_eq!(prod, poly(&a, &[(1, "t R a1")]));

        let xy = poly(&a, &[(1, "x"), (1, "y")]);
        let x_y = poly(&a, &[(1, "x"), (-1, "y")]);
        let expected = poly(&a, &[(1, "x x"), (-1, "x y"), (1, "y x"), (-1, "y y")]);
        assert_eq!(xy.checked_mul(&x_y).unwrap(), expected);

        let zero = NcPolynomial::zero(Field::Rational);
        assert!(zero.checked_mul(&xy).unwrap().is_zero());
    }

    #[test]
    fn field_mismatch_is_an_error() {
        let p = NcPolynomial::one(Field::Rational);
        let q = NcPolynomial::one(Field::Prime(5));
        assert_eq!(p.checked_mul(&q), Err(Error::FieldMismatch));
    }

    #[test]
    fn leading_term_examples() {
        let (a, _) = setup();
        let ord = MonomialOrder::deglex(&a);
        let p = poly(&a, &[(1, "t R a0"), (-1, "R t a0")]);
        let (w, c) = p.leading_term(&ord).unwrap();
        assert_eq!(w, &a.word("t R a0").unwrap());
        assert!(c.is_one());

        let q = poly(&a, &[(1, "Q4 P3")]);
        assert_eq!(q.leading_term(&ord).unwrap().0, &a.word("Q4 P3").unwrap());

        let one = NcPolynomial::one(Field::Rational);
        assert_eq!(one.leading_term(&ord).unwrap().0, &Word::empty());

        let zero = NcPolynomial::zero(Field::Rational);
        assert_eq!(zero.leading_term(&ord), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn cancellation_drops_terms() {
        let (a, _) = setup();
        let p = poly(&a, &[(2, "x"), (-2, "x")]);
        assert!(p.is_zero());
    }

    fn arb_poly() -> impl Strategy<Value = NcPolynomial> {
        prop::collection::vec((-3i64..=3, prop::collection::vec(0u16..3, 0..4)), 0..5).prop_map(
            |terms| {
                let mut p = NcPolynomial::zero(Field::Rational);
                for (c, w) in terms {
                    p.add_term(Word::from(w), Scalar::from_int(Field::Rational, c));
                }
                p
            },
        )
    }

    proptest! {
        #[test]
        fn associative_and_distributive(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            let pq_r = p.checked_mul(&q).unwrap().checked_mul(&r).unwrap();
            let p_qr = p.checked_mul(&q.checked_mul(&r).unwrap()).unwrap();
            prop_assert_eq!(pq_r, p_qr);
            let left = p.checked_mul(&q.checked_add(&r).unwrap()).unwrap();
            let right = p.checked_mul(&q).unwrap().checked_add(&p.checked_mul(&r).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn leading_term_is_multiplicative(p in arb_poly(), q in arb_poly()) {
            prop_assume!(!p.is_zero() && !q.is_zero());
            let (_, ord) = setup();
            let (lp, cp) = p.leading_term(&ord).unwrap();
            let (lq, cq) = q.leading_term(&ord).unwrap();
            let pq = p.checked_mul(&q).unwrap();
            let (l, c) = pq.leading_term(&ord).unwrap();
            prop_assert_eq!(l, &lp.concat(lq));
            prop_assert_eq!(c, &cp.mul(cq));
        }
    }
}
