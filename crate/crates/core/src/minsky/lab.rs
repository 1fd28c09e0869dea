use serde::{Deserialize, Serialize};

use crate::algebra::{NcPolynomial, SymbolId, Word};
use crate::rewrite::{normal_form, reduce_monomial, reduce_product, Presentation};
use crate::{Error, Result};

use super::machine::{tm_step, utm_table, MachineConfig, MachineSpec, Step};
use super::relations::{build_presentation, ids, Mode, Sym};

/// Result of a bounded search for an algebraic halting certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Witness {
    /// Smallest exponent `n` at which the certificate reduces to zero.
    Found(usize),
    /// No certificate up to the bound. Never a proof of non-halting.
    NotWithinBound(usize),
    /// Zero-divisor mode only: the configuration already sits on the stop
    /// pair, so its main word is itself zero and is not a zero divisor.
    MainWordZero,
}

/// Outcome of checking one machine step against the algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepCheck {
    pub expected: NcPolynomial,
    pub actual: NcPolynomial,
}

impl StepCheck {
    pub fn holds(&self) -> bool {
        self.expected == self.actual
    }
}

/// The machine together with one of its algebra presentations.
#[derive(Debug, Clone)]
pub struct MinskyLab {
    mode: Mode,
    spec: MachineSpec,
    pres: Presentation,
    t: SymbolId,
    /// `t` in nilpotency mode, `s` in zero-divisor mode.
    trailer: SymbolId,
}

impl MinskyLab {
    pub fn new(mode: Mode) -> Self {
        let pres = build_presentation(mode);
        let t = pres.alphabet().id("t").unwrap();
        let trailer = match mode {
            Mode::Nilpotency => t,
            Mode::ZeroDivisor => pres.alphabet().id("s").unwrap(),
        };
        MinskyLab {
            mode,
            spec: utm_table(),
            pres,
            t,
            trailer,
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn spec(&self) -> &MachineSpec {
        &self.spec
    }

    /// The main word without its leading `t`: `R U Q_i P_j V R` in
    /// nilpotency mode, `L U Q_i P_j V R` in zero-divisor mode.
    pub fn encode(&self, c: &MachineConfig) -> Word {
        let edge = match self.mode {
            Mode::Nilpotency => Sym::R,
            Mode::ZeroDivisor => Sym::L,
        };
        let mut syms = Vec::with_capacity(c.tape_len() + 3);
        syms.push(edge);
        syms.extend(c.left.iter().map(|&k| Sym::A(k)));
        syms.push(Sym::Q(c.state));
        syms.push(Sym::P(c.current));
        syms.extend(c.right.iter().map(|&k| Sym::A(k)));
        syms.push(Sym::R);
        Word::from(ids(self.pres.alphabet(), &syms))
    }

    pub fn decode(&self, w: &Word) -> Result<MachineConfig> {
        if !self.pres.alphabet().contains(w) {
            return Err(Error::Decode(format!("{w:?}")));
        }
        let names: Vec<&str> = w.iter().map(|&id| self.pres.alphabet().name(id)).collect();
        let edge = match self.mode {
            Mode::Nilpotency => "R",
            Mode::ZeroDivisor => "L",
        };
        let bad = || Error::Decode(names.join(" "));
        if names.len() < 4 || names[0] != edge || names[names.len() - 1] != "R" {
            return Err(bad());
        }
        let inner = &names[1..names.len() - 1];
        let color = |n: &str| n.strip_prefix('a').and_then(|d| d.parse::<u8>().ok());
        let head = inner
            .iter()
            .position(|n| n.starts_with('Q'))
            .ok_or_else(bad)?;
        let state = inner[head][1..].parse::<u8>().map_err(|_| bad())?;
        let current = inner
            .get(head + 1)
            .and_then(|n| n.strip_prefix('P'))
            .and_then(|d| d.parse::<u8>().ok())
            .ok_or_else(bad)?;
        let left = inner[..head]
            .iter()
            .map(|n| color(n).ok_or_else(bad))
            .collect::<Result<Vec<_>>>()?;
        let right = inner[head + 2..]
            .iter()
            .map(|n| color(n).ok_or_else(bad))
            .collect::<Result<Vec<_>>>()?;
        MachineConfig::new(left, state, current, right)
    }

    fn poly(&self, w: Word) -> NcPolynomial {
        NcPolynomial::from_word(self.pres.field(), w)
    }

    fn prepend_t(&self, w: &Word) -> Word {
        w.wrap(&[self.t], &[])
    }

    /// Computes `NF(t·enc(c))` and what the machine step predicts for it:
    /// `enc(c′)·t` (or `·s`), or zero when the stop pair is reached.
    pub fn step_check(&self, c: &MachineConfig) -> StepCheck {
        let actual = normal_form(&self.poly(self.prepend_t(&self.encode(c))), &self.pres);
        let expected = match tm_step(&self.spec, c) {
            Step::Next(next) if !next.is_stop() && !c.is_stop() => {
                self.poly(self.encode(&next).wrap(&[], &[self.trailer]))
            }
            _ => NcPolynomial::zero(self.pres.field()),
        };
        StepCheck { expected, actual }
    }

    pub fn step_equivalence(&self, c: &MachineConfig) -> bool {
        self.step_check(c).holds()
    }

    /// Searches for the smallest `n ≤ bound` with `(t·enc(c))ⁿ = 0`
    /// (nilpotency) or `tⁿ·enc(c) = 0` (zero-divisor).
    ///
    /// Each power is obtained from the previous normal form, so the search
    /// costs one extra pass of `t` per exponent.
    pub fn halting_witness(&self, c: &MachineConfig, bound: usize) -> Witness {
        assert!(bound >= 1, "bound must be positive");
        let main = self.encode(c);
        let one = |p: NcPolynomial| -> Option<Word> {
            let (w, coeff) = p.into_terms().next()?;
            debug_assert!(coeff.is_one());
            Some(w)
        };
        match self.mode {
            Mode::Nilpotency => {
                let factor = self.prepend_t(&main);
                let mut acc = Word::empty();
                for n in 1..=bound {
                    match one(reduce_product(&acc, &factor, &self.pres)) {
                        None => return Witness::Found(n),
                        Some(w) => acc = w,
                    }
                }
            }
            Mode::ZeroDivisor => {
                let Some(mut acc) = one(reduce_monomial(&main, &self.pres)) else {
                    return Witness::MainWordZero;
                };
                for n in 1..=bound {
                    match one(reduce_monomial(&self.prepend_t(&acc), &self.pres)) {
                        None => return Witness::Found(n),
                        Some(w) => acc = w,
                    }
                }
            }
        }
        Witness::NotWithinBound(bound)
    }

    /// Checks the zero-divisor certificate pieces: `enc(c)` and `tⁿ` are both
    /// in normal form (hence nonzero).
    pub fn certificate_factors_nonzero(&self, c: &MachineConfig, n: usize) -> bool {
        let main = self.poly(self.encode(c));
        let tn = self.poly(Word::from(vec![self.t; n]));
        normal_form(&main, &self.pres) == main && normal_form(&tn, &self.pres) == tn
    }
}

/// Words in normal form under the machine presentation are exactly the
/// ones without any lead; exposed for callers that build words by hand.
pub fn is_irreducible(pres: &Presentation, w: &[SymbolId]) -> bool {
    pres.index().matches(w).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(left: &[u8], state: u8, current: u8, right: &[u8]) -> MachineConfig {
        MachineConfig::new(left.to_vec(), state, current, right.to_vec()).unwrap()
    }

    #[test]
    fn encodings() {
        let nil = MinskyLab::new(Mode::Nilpotency);
        let w = nil.encode(&cfg(&[3], 2, 3, &[]));
        assert_eq!(nil.presentation().alphabet().render(&w), "R a3 Q2 P3 R");
        let zd = MinskyLab::new(Mode::ZeroDivisor);
        let w = zd.encode(&cfg(&[], 0, 2, &[]));
        assert_eq!(zd.presentation().alphabet().render(&w), "L Q0 P2 R");
        let c = cfg(&[0, 1, 0], 5, 0, &[3, 0]);
        assert_eq!(nil.decode(&nil.encode(&c)).unwrap(), c);
        assert_eq!(zd.decode(&zd.encode(&c)).unwrap(), c);
        assert!(nil.decode(&zd.encode(&c)).is_err());
    }

    #[test]
    fn normal_form_examples() {
        let nil = MinskyLab::new(Mode::Nilpotency);
        let p = nil.presentation();
        let nf = normal_form(&p.poly("t R a3 Q2 P3 R").unwrap(), p);
        assert!(nf.is_zero());
        let nf = normal_form(&p.poly("t R Q0 P2 a1 R").unwrap(), p);
        assert_eq!(nf, p.poly("R a0 Q0 P1 R t").unwrap());
    }

    #[test]
    fn step_equivalence_examples() {
        let nil = MinskyLab::new(Mode::Nilpotency);
        assert!(nil.step_equivalence(&cfg(&[3], 2, 3, &[])));
        assert!(nil.step_equivalence(&cfg(&[], 0, 2, &[1])));
        let zd = MinskyLab::new(Mode::ZeroDivisor);
        let check = zd.step_check(&cfg(&[3], 2, 3, &[]));
        assert!(check.actual.is_zero());
        assert!(check.holds());
    }

    #[test]
    fn witness_examples() {
        let c = cfg(&[3], 2, 3, &[]);
        let nil = MinskyLab::new(Mode::Nilpotency);
        let zd = MinskyLab::new(Mode::ZeroDivisor);
        assert_eq!(nil.halting_witness(&c, 5), Witness::Found(1));
        assert_eq!(zd.halting_witness(&c, 5), Witness::Found(1));
        assert!(zd.certificate_factors_nonzero(&c, 1));
        let runaway = cfg(&[], 2, 0, &[]);
        assert_eq!(nil.halting_witness(&runaway, 7), Witness::NotWithinBound(7));
        assert_eq!(zd.halting_witness(&runaway, 7), Witness::NotWithinBound(7));
    }

    #[test]
    fn stop_pair_start() {
        let c = cfg(&[1], 4, 3, &[]);
        assert_eq!(
            MinskyLab::new(Mode::Nilpotency).halting_witness(&c, 3),
            Witness::Found(1)
        );
        assert_eq!(
            MinskyLab::new(Mode::ZeroDivisor).halting_witness(&c, 3),
            Witness::MainWordZero
        );
    }

    #[test]
    fn powers_have_the_product_shape() {
        // (t·e)^n = e_1 ... e_n t^n before halting
        let nil = MinskyLab::new(Mode::Nilpotency);
        let c = cfg(&[], 2, 0, &[]);
        let e = nil.prepend_t(&nil.encode(&c));
        let w = reduce_monomial(&e.pow(3), nil.presentation());
        let trace = super::super::simulate(nil.spec(), &c, 3);
        let mut expected = Word::empty();
        for next in &trace.configs[1..] {
            expected = expected.concat(&nil.encode(next));
        }
        let expected = expected.concat(&Word::from(vec![nil.t; 3]));
        assert_eq!(
            w,
            NcPolynomial::from_word(nil.presentation().field(), expected)
        );
    }
}
