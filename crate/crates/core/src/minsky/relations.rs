//! Instantiation of the defining relations of the two machine algebras.
//!
//! Every relation moves the marker `t` rightwards. In the nilpotency algebra
//! `t` walks across the tape, performs one instruction at the head and
//! leaves through the right edge `R`. In the zero-divisor algebra it
//! performs the instruction and turns into `s`, which then walks out.

use serde::{Deserialize, Serialize};

use crate::algebra::{Alphabet, Field, MonomialOrder, NcPolynomial, SymbolId, Word};
use crate::rewrite::{Presentation, RewriteRule};

use super::machine::{utm_table, MachineSpec, COLORS, STOP_PAIR};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// Halting ⇔ the main word `t·enc(c)` is nilpotent.
    Nilpotency,
    /// Halting ⇔ the main word `enc(c)` is a zero divisor.
    ZeroDivisor,
}

impl Mode {
    pub fn builtin_name(self) -> &'static str {
        match self {
            Mode::Nilpotency => "@minsky-nil",
            Mode::ZeroDivisor => "@minsky-zd",
        }
    }
}

/// Letters of the machine algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sym {
    T,
    S,
    A(u8),
    Q(u8),
    P(u8),
    R,
    L,
}

impl Sym {
    pub fn name(self) -> String {
        match self {
            Sym::T => "t".into(),
            Sym::S => "s".into(),
            Sym::A(k) => format!("a{k}"),
            Sym::Q(i) => format!("Q{i}"),
            Sym::P(j) => format!("P{j}"),
            Sym::R => "R".into(),
            Sym::L => "L".into(),
        }
    }
}

fn declared(mode: Mode) -> Vec<Sym> {
    let mut v = vec![Sym::T];
    if mode == Mode::ZeroDivisor {
        v.push(Sym::S);
    }
    v.extend((0..4).map(Sym::A));
    v.extend((0..7).map(Sym::Q));
    v.extend((0..4).map(Sym::P));
    if mode == Mode::ZeroDivisor {
        v.push(Sym::L);
    }
    v.push(Sym::R);
    v
}

// t > s > Q6 > ... > Q0 > P3 > ... > P0 > a3 > ... > a0 > R > L
fn precedence(mode: Mode) -> Vec<Sym> {
    let mut v = vec![Sym::T];
    if mode == Mode::ZeroDivisor {
        v.push(Sym::S);
    }
    v.extend((0..7).rev().map(Sym::Q));
    v.extend((0..4).rev().map(Sym::P));
    v.extend((0..4).rev().map(Sym::A));
    v.push(Sym::R);
    if mode == Mode::ZeroDivisor {
        v.push(Sym::L);
    }
    v
}

pub fn alphabet(mode: Mode) -> Alphabet {
    let names: Vec<String> = declared(mode).into_iter().map(Sym::name).collect();
    let prec: Vec<String> = precedence(mode).into_iter().map(Sym::name).collect();
    Alphabet::with_precedence(&names, &prec).expect("machine alphabet is well formed")
}

/// A relation `lhs = rhs` from one of the families; `rhs = None` is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub family: &'static str,
    pub lhs: Vec<Sym>,
    pub rhs: Option<Vec<Sym>>,
}

fn rel(out: &mut Vec<Relation>, family: &'static str, lhs: Vec<Sym>, rhs: Vec<Sym>) {
    out.push(Relation {
        family,
        lhs,
        rhs: Some(rhs),
    });
}

/// All instantiated relations, family by family, in a fixed order. Free
/// color indices range over 0..3.
pub fn relations(mode: Mode) -> Vec<Relation> {
    let m = utm_table();
    match mode {
        Mode::Nilpotency => nilpotency_relations(&m),
        Mode::ZeroDivisor => zero_divisor_relations(&m),
    }
}

fn colors() -> std::ops::Range<u8> {
    0..COLORS
}

fn nilpotency_relations(m: &MachineSpec) -> Vec<Relation> {
    use Sym::{A, P, Q, R, T};
    let mut out = Vec::new();
    for l in colors() {
        rel(&mut out, "tt1", vec![T, R, A(l)], vec![R, T, A(l)]);
    }
    for l in colors() {
        rel(&mut out, "tt1b", vec![T, A(l), R], vec![A(l), R, T]);
    }
    for k in colors() {
        for j in colors() {
            rel(&mut out, "tt2", vec![T, A(k), A(j)], vec![A(k), T, A(j)]);
        }
    }
    let left = m.left_pairs();
    let right = m.right_pairs();
    for &(i, j) in &left {
        let (q, p) = m.target(i, j).unwrap();
        for k in colors() {
            rel(
                &mut out,
                "tt3",
                vec![T, A(k), Q(i), P(j)],
                vec![Q(q), P(k), T, A(p)],
            );
        }
    }
    for &(i, j) in &left {
        let (q, p) = m.target(i, j).unwrap();
        rel(
            &mut out,
            "tt5",
            vec![T, R, Q(i), P(j)],
            vec![R, Q(q), P(0), T, A(p)],
        );
    }
    for &(i, j) in &right {
        let (q, p) = m.target(i, j).unwrap();
        for l in colors() {
            for k in colors() {
                for n in colors() {
                    rel(
                        &mut out,
                        "tt4",
                        vec![T, A(l), Q(i), P(j), A(k), A(n)],
                        vec![A(l), A(p), Q(q), P(k), T, A(n)],
                    );
                }
            }
        }
    }
    for &(i, j) in &right {
        let (q, p) = m.target(i, j).unwrap();
        for l in colors() {
            for k in colors() {
                rel(
                    &mut out,
                    "tt4r",
                    vec![T, A(l), Q(i), P(j), A(k), R],
                    vec![A(l), A(p), Q(q), P(k), R, T],
                );
            }
        }
    }
    for &(i, j) in &right {
        let (q, p) = m.target(i, j).unwrap();
        for k in colors() {
            for n in colors() {
                rel(
                    &mut out,
                    "tt4b",
                    vec![T, R, Q(i), P(j), A(k), A(n)],
                    vec![R, A(p), Q(q), P(k), T, A(n)],
                );
            }
        }
    }
    for &(i, j) in &right {
        let (q, p) = m.target(i, j).unwrap();
        for k in colors() {
            rel(
                &mut out,
                "tt4ar",
                vec![T, R, Q(i), P(j), A(k), R],
                vec![R, A(p), Q(q), P(k), R, T],
            );
        }
    }
    for &(i, j) in &right {
        let (q, p) = m.target(i, j).unwrap();
        for l in colors() {
            rel(
                &mut out,
                "tt6",
                vec![T, A(l), Q(i), P(j), R],
                vec![A(l), A(p), Q(q), P(0), R, T],
            );
        }
    }
    for &(i, j) in &right {
        let (q, p) = m.target(i, j).unwrap();
        rel(
            &mut out,
            "tt6b",
            vec![T, R, Q(i), P(j), R],
            vec![R, A(p), Q(q), P(0), R, T],
        );
    }
    out.push(stop_relation("tt7"));
    out
}

fn zero_divisor_relations(m: &MachineSpec) -> Vec<Relation> {
    use Sym::{A, L, P, Q, R, S, T};
    let mut out = Vec::new();
    for k in colors() {
        rel(&mut out, "td1", vec![T, L, A(k)], vec![L, T, A(k)]);
    }
    for k in colors() {
        for l in colors() {
            rel(&mut out, "td2", vec![T, A(k), A(l)], vec![A(k), T, A(l)]);
        }
    }
    rel(&mut out, "td9", vec![S, R], vec![R, S]);
    for k in colors() {
        rel(&mut out, "td8", vec![S, A(k)], vec![A(k), S]);
    }
    let left = m.left_pairs();
    let right = m.right_pairs();
    for &(i, j) in &left {
        let (q, p) = m.target(i, j).unwrap();
        for k in colors() {
            rel(
                &mut out,
                "td3",
                vec![T, A(k), Q(i), P(j)],
                vec![Q(q), P(k), A(p), S],
            );
        }
    }
    for &(i, j) in &left {
        let (q, p) = m.target(i, j).unwrap();
        rel(
            &mut out,
            "td5",
            vec![T, L, Q(i), P(j)],
            vec![L, Q(q), P(0), A(p), S],
        );
    }
    for &(i, j) in &right {
        let (q, p) = m.target(i, j).unwrap();
        for k in colors() {
            for l in colors() {
                rel(
                    &mut out,
                    "td4",
                    vec![T, A(l), Q(i), P(j), A(k)],
                    vec![A(l), A(p), Q(q), P(k), S],
                );
            }
        }
    }
    for &(i, j) in &right {
        let (q, p) = m.target(i, j).unwrap();
        for k in colors() {
            rel(
                &mut out,
                "td4b",
                vec![T, L, Q(i), P(j), A(k)],
                vec![L, A(p), Q(q), P(k), S],
            );
        }
    }
    for &(i, j) in &right {
        let (q, p) = m.target(i, j).unwrap();
        for l in colors() {
            rel(
                &mut out,
                "td6",
                vec![T, A(l), Q(i), P(j), R],
                vec![A(l), A(p), Q(q), P(0), R, S],
            );
        }
    }
    for &(i, j) in &right {
        let (q, p) = m.target(i, j).unwrap();
        rel(
            &mut out,
            "td6b",
            vec![T, L, Q(i), P(j), R],
            vec![L, A(p), Q(q), P(0), R, S],
        );
    }
    out.push(stop_relation("td7"));
    out
}

fn stop_relation(family: &'static str) -> Relation {
    Relation {
        family,
        lhs: vec![Sym::Q(STOP_PAIR.0), Sym::P(STOP_PAIR.1)],
        rhs: None,
    }
}

/// Relation counts per family, in generation order.
pub fn family_counts(mode: Mode) -> Vec<(&'static str, usize)> {
    let mut counts: Vec<(&'static str, usize)> = Vec::new();
    for r in relations(mode) {
        match counts.last_mut() {
            Some((f, n)) if *f == r.family => *n += 1,
            _ => counts.push((r.family, 1)),
        }
    }
    counts
}

pub(crate) fn ids(alphabet: &Alphabet, syms: &[Sym]) -> Vec<SymbolId> {
    syms.iter()
        .map(|s| {
            alphabet
                .id(&s.name())
                .expect("symbol belongs to the machine alphabet")
        })
        .collect()
}

/// The heavy letters of the wreath order: `t` (and `s`).
fn order(mode: Mode, alphabet: &Alphabet) -> MonomialOrder {
    let heavy: Vec<Sym> = match mode {
        Mode::Nilpotency => vec![Sym::T],
        Mode::ZeroDivisor => vec![Sym::T, Sym::S],
    };
    MonomialOrder::wreath(alphabet, &ids(alphabet, &heavy)).expect("heavy letters exist")
}

fn assemble(mode: Mode, keep: impl Fn(&Relation) -> bool, name: &str) -> Presentation {
    let alphabet = alphabet(mode);
    let order = order(mode, &alphabet);
    let field = Field::Rational;
    let rules: Vec<RewriteRule> = relations(mode)
        .into_iter()
        .enumerate()
        .filter(|(_, r)| keep(r))
        .map(|(source, r)| RewriteRule {
            lead: Word::from(ids(&alphabet, &r.lhs)),
            tail: match &r.rhs {
                Some(rhs) => NcPolynomial::from_word(field, Word::from(ids(&alphabet, rhs))),
                None => NcPolynomial::zero(field),
            },
            source,
        })
        .collect();
    Presentation::new(name, alphabet, order, field, rules)
        .expect("machine relations orient left-side-leading")
}

/// The presentation of the nilpotency or zero-divisor algebra, with every
/// relation oriented left side → right side.
pub fn build_presentation(mode: Mode) -> Presentation {
    assemble(mode, |_| true, mode.builtin_name())
}

/// The same relations without the stop relation `Q4 P3 = 0`: a monoid
/// presentation in which every rule maps a word to a word.
pub fn semigroup_presentation(mode: Mode) -> Presentation {
    assemble(
        mode,
        |r| r.rhs.is_some(),
        &format!("{}-semigroup", mode.builtin_name()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_sizes() {
        assert_eq!(alphabet(Mode::Nilpotency).len(), 17);
        assert_eq!(alphabet(Mode::ZeroDivisor).len(), 19);
        assert_eq!(
            alphabet(Mode::ZeroDivisor).precedence().join(" "),
            "t s Q6 Q5 Q4 Q3 Q2 Q1 Q0 P3 P2 P1 P0 a3 a2 a1 a0 R L"
        );
    }

    #[test]
    fn family_sizes() {
        let nil: Vec<usize> = family_counts(Mode::Nilpotency)
            .iter()
            .map(|f| f.1)
            .collect();
        assert_eq!(nil, vec![4, 4, 16, 52, 13, 896, 224, 224, 56, 56, 14, 1]);
        assert_eq!(nil.iter().sum::<usize>(), 1560);
        let zd: Vec<usize> = family_counts(Mode::ZeroDivisor)
            .iter()
            .map(|f| f.1)
            .collect();
        assert_eq!(zd, vec![4, 16, 1, 4, 52, 13, 224, 56, 56, 14, 1]);
        assert_eq!(zd.iter().sum::<usize>(), 441);
    }

    #[test]
    fn instantiated_tt3() {
        // k = 2, (i,j) = (0,1) -> (L,1,3): t a2 Q0 P1 = Q1 P2 t a3
        let expected = Relation {
            family: "tt3",
            lhs: vec![Sym::T, Sym::A(2), Sym::Q(0), Sym::P(1)],
            rhs: Some(vec![Sym::Q(1), Sym::P(2), Sym::T, Sym::A(3)]),
        };
        assert!(relations(Mode::Nilpotency).contains(&expected));
    }

    #[test]
    fn presentations_build_and_orient() {
        let nil = build_presentation(Mode::Nilpotency);
        assert_eq!(nil.rules().len(), 1560);
        let zd = build_presentation(Mode::ZeroDivisor);
        assert_eq!(zd.rules().len(), 441);
        let semi = semigroup_presentation(Mode::Nilpotency);
        assert_eq!(semi.rules().len(), 1559);
        assert!(semi.rules().iter().all(|r| r.tail.is_monomial()));
    }

    #[test]
    fn deglex_cannot_orient_the_edge_relations() {
        let a = alphabet(Mode::Nilpotency);
        let deglex = MonomialOrder::deglex(&a);
        let failing: Vec<&str> = relations(Mode::Nilpotency)
            .iter()
            .filter(|r| match &r.rhs {
                Some(rhs) => {
                    deglex.cmp(&ids(&a, &r.lhs), &ids(&a, rhs)) != std::cmp::Ordering::Greater
                }
                None => false,
            })
            .map(|r| r.family)
            .collect();
        assert!(failing.contains(&"tt5"));
        assert!(failing.contains(&"tt6"));
        assert!(failing.contains(&"tt6b"));
    }
}
