use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Exponents by variable name; zero exponents are never stored.
pub type Monomial = BTreeMap<String, u32>;

/// A commutative polynomial over the rationals with named variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CommPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl CommPoly {
    pub fn zero() -> Self {
        CommPoly::default()
    }

    pub fn one() -> Self {
        CommPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = CommPoly::zero();
        p.add_term(Monomial::new(), c);
        p
    }

    pub fn int(n: i64) -> Self {
        CommPoly::constant(BigRational::from_integer(n.into()))
    }

    pub fn var(name: &str) -> Self {
        CommPoly::var_pow(name, 1)
    }

    pub fn var_pow(name: &str, exp: u32) -> Self {
        let mut m = Monomial::new();
        if exp > 0 {
            m.insert(name.to_string(), exp);
        }
        let mut p = CommPoly::zero();
        p.add_term(m, BigRational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Monomial::new()).cloned(),
            _ => None,
        }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.terms.keys().flat_map(|m| m.keys().cloned()).collect()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.values().sum()).max()
    }

    pub fn degree_in(&self, var: &str) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| m.get(var).copied().unwrap_or(0))
            .max()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return CommPoly::zero();
        }
        CommPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = CommPoly::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Replaces variables by polynomials; unlisted variables stay.
    pub fn substitute(&self, values: &BTreeMap<String, CommPoly>) -> CommPoly {
        let mut powers: BTreeMap<(&str, u32), CommPoly> = BTreeMap::new();
        let mut out = CommPoly::zero();
        for (m, c) in &self.terms {
            let mut term = CommPoly::constant(c.clone());
            for (v, &e) in m {
                let factor = match values.get(v) {
                    Some(p) => powers
                        .entry((v.as_str(), e))
                        .or_insert_with(|| p.pow(e))
                        .clone(),
                    None => CommPoly::var_pow(v, e),
                };
                term = &term * &factor;
            }
            for (m, c) in term.terms {
                out.add_term(m, c);
            }
        }
        out
    }

    /// Evaluates at a point covering every variable.
    pub fn eval(&self, point: &BTreeMap<String, BigRational>) -> Result<BigRational> {
        let mut sum = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, &e) in m {
                let x = point
                    .get(v)
                    .ok_or_else(|| Error::MissingVariable(v.clone()))?;
                term *= num_traits::pow(x.clone(), e as usize);
            }
            sum += term;
        }
        Ok(sum)
    }

    pub fn derivative(&self, var: &str) -> CommPoly {
        let mut out = CommPoly::zero();
        for (m, c) in &self.terms {
            let Some(&e) = m.get(var) else { continue };
            let mut m = m.clone();
            if e == 1 {
                m.remove(var);
            } else {
                m.insert(var.to_string(), e - 1);
            }
            out.add_term(m, c * BigRational::from_integer(e.into()));
        }
        out
    }

    /// Coefficients of `var⁰, var¹, …` as polynomials in the other variables.
    fn coefficients_in(&self, var: &str) -> Vec<CommPoly> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut coeffs = vec![CommPoly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let e = rest.remove(var).unwrap_or(0) as usize;
            coeffs[e].add_term(rest, c.clone());
        }
        coeffs
    }

    /// Exact quotient by `var − root`, or an error if the remainder is nonzero.
    pub fn div_linear(&self, var: &str, root: &BigRational) -> Result<CommPoly> {
        if self.is_zero() {
            return Ok(CommPoly::zero());
        }
        let coeffs = self.coefficients_in(var);
        let n = coeffs.len() - 1;
        // synthetic division from the top coefficient down
        let mut quotient = vec![CommPoly::zero(); n.max(1)];
        let mut carry = CommPoly::zero();
        for k in (0..=n).rev() {
            let value = &coeffs[k] + &carry;
            if k == 0 {
                if !value.is_zero() {
                    return Err(Error::InexactDivision(format!(
                        "remainder {value} dividing by {var} - {root}"
                    )));
                }
            } else {
                carry = value.scale(root);
                quotient[k - 1] = value;
            }
        }
        let x = CommPoly::var(var);
        let mut out = CommPoly::zero();
        for (k, q) in quotient.iter().enumerate() {
            out = &out + &(q * &x.pow(k as u32));
        }
        Ok(out)
    }

    /// Degree, then lexicographic with alphabetically earlier variables
    /// heavier; larger monomials print first.
    fn display_order(a: &Monomial, b: &Monomial) -> Ordering {
        let da: u32 = a.values().sum();
        let db: u32 = b.values().sum();
        db.cmp(&da).then_with(|| {
            let vars: BTreeSet<&String> = a.keys().chain(b.keys()).collect();
            vars.into_iter()
                .map(|v| {
                    let ea = a.get(v).copied().unwrap_or(0);
                    let eb = b.get(v).copied().unwrap_or(0);
                    eb.cmp(&ea)
                })
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

fn rational_text(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| CommPoly::display_order(a.0, b.0));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let vars: Vec<String> = m
                .iter()
                .map(|(v, &e)| {
                    if e == 1 {
                        v.clone()
                    } else {
                        format!("{v}^{e}")
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", rational_text(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", rational_text(&abs), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<'a> std::ops::Add<&'a CommPoly> for &'a CommPoly {
    type Output = CommPoly;
    fn add(self, rhs: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> std::ops::Sub<&'a CommPoly> for &'a CommPoly {
    type Output = CommPoly;
    fn sub(self, rhs: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> std::ops::Mul<&'a CommPoly> for &'a CommPoly {
    type Output = CommPoly;
    fn mul(self, rhs: &CommPoly) -> CommPoly {
        let mut out = CommPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut m = ma.clone();
                for (v, &e) in mb {
                    *m.entry(v.clone()).or_insert(0) += e;
                }
                out.add_term(m, ca * cb);
            }
        }
        out
    }
}

impl std::ops::Neg for &CommPoly {
    type Output = CommPoly;
    fn neg(self) -> CommPoly {
        CommPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

// Parsing: sums of products of powers; division only by nonzero constants.

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(1, self.pos + 1, message)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<CommPoly> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<CommPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.power()?;
                    match d.as_constant() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                        _ => {
                            return Err(Error::parse(
                                1,
                                at + 1,
                                "division by a non-constant or zero",
                            ))
                        }
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<CommPoly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let digits: String = self.chars[start..self.pos].iter().collect();
            let e: u32 = digits
                .parse()
                .map_err(|_| Error::parse(1, start + 1, "expected a nonnegative exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<CommPoly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                let n: BigInt = digits.parse().expect("digits");
                Ok(CommPoly::constant(BigRational::from_integer(n)))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self
                    .chars
                    .get(self.pos)
                    .is_some_and(|c| c.is_alphanumeric() || *c == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                Ok(CommPoly::var(&name))
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error(format!("unexpected end of `{}`", self.text))),
        }
    }
}

impl FromStr for CommPoly {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut p = Parser {
            chars: text.chars().collect(),
            pos: 0,
            text,
        };
        let out = p.expr()?;
        if let Some(c) = p.peek() {
            return Err(p.error(format!("unexpected `{c}`")));
        }
        Ok(out)
    }
}

impl Serialize for CommPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CommPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Small helper for tests and callers holding machine integers.
pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Converts an integral constant to `i64` if it fits.
pub fn to_i64(c: &BigRational) -> Option<i64> {
    if c.is_integer() {
        c.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> CommPoly {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(p("2*T^2 - 1").to_string(), "2*T^2 - 1");
        assert_eq!(
            p("X1^2 - (T^2-1)*Y1^2 - 1").to_string(),
            "-T^2*Y1^2 + X1^2 + Y1^2 - 1"
        );
        assert_eq!(p("1/2*U - 3/4").to_string(), "1/2*U - 3/4");
        assert_eq!(p("-(S+1)^2").to_string(), "-S^2 - 2*S - 1");
        assert_eq!(p("x - x").to_string(), "0");
        assert!(matches!(
            "T +".parse::<CommPoly>(),
            Err(Error::Parse { column: 4, .. })
        ));
        assert!("T / S".parse::<CommPoly>().is_err());
        assert!("(T".parse::<CommPoly>().is_err());
    }

    #[test]
    fn substitution_and_evaluation() {
        let pell = p("X^2 - (T^2-1)*Y^2 - 1");
        let mut vals = BTreeMap::new();
        vals.insert("X".to_string(), p("2*T^2 - 1"));
        vals.insert("Y".to_string(), p("2*T"));
        assert!(pell.substitute(&vals).is_zero());

        let mut point = BTreeMap::new();
        point.insert("T".to_string(), rational(1, 2));
        assert_eq!(p("2*T^2 - 1").eval(&point).unwrap(), rational(-1, 2));
        assert_eq!(p("S").eval(&point), Err(Error::MissingVariable("S".into())));
    }

    #[test]
    fn derivative_and_division() {
        assert_eq!(p("T^3 + 2*T*S").derivative("T"), p("3*T^2 + 2*S"));
        assert_eq!(
            p("4*T^2 - 1 - 3").div_linear("T", &rational(1, 1)).unwrap(),
            p("4*T + 4")
        );
        assert!(p("T^2").div_linear("T", &rational(1, 1)).is_err());
        assert_eq!(
            p("5").div_linear("T", &rational(1, 1)).map(|_| ()),
            Err(Error::InexactDivision(
                "remainder 5 dividing by T - 1".into()
            ))
        );
    }

    fn small_poly() -> impl Strategy<Value = CommPoly> {
        let term = (-3i64..=3, 0u32..3, 0u32..3);
        prop::collection::vec(term, 0..4).prop_map(|ts| {
            let mut out = CommPoly::zero();
            for (c, a, b) in ts {
                let mono = &CommPoly::var_pow("x", a) * &CommPoly::var_pow("y", b);
                out = &out + &mono.scale(&rational(c, 1));
            }
            out
        })
    }

    proptest! {
        #[test]
        fn display_parses_back(a in small_poly()) {
            prop_assert_eq!(a.to_string().parse::<CommPoly>().unwrap(), a);
        }

        #[test]
        fn ring_laws(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn division_inverts_multiplication(a in small_poly(), r in -3i64..=3) {
            let root = rational(r, 1);
            let factor = &CommPoly::var("x") - &CommPoly::constant(root.clone());
            prop_assert_eq!((&a * &factor).div_linear("x", &root).unwrap(), a);
        }

        #[test]
        fn eval_is_a_homomorphism(a in small_poly(), b in small_poly(), x in -5i64..5, y in -5i64..5) {
            let point: BTreeMap<String, BigRational> =
                [("x".to_string(), rational(x, 1)), ("y".to_string(), rational(y, 1))].into();
            let ev = |q: &CommPoly| q.eval(&point).unwrap();
            prop_assert_eq!(ev(&(&a * &b)), ev(&a) * ev(&b));
            prop_assert_eq!(ev(&(&a + &b)), ev(&a) + ev(&b));
        }
    }
}
