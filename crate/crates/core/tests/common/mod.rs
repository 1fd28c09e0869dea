//! Generators and independent oracles shared by the integration suites.
#![allow(dead_code)]

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shirshov::algebra::{Alphabet, Field, MonomialOrder, NcPolynomial, Scalar, Word};
use shirshov::minsky::{MachineConfig, COLORS, STATES};
use shirshov::rewrite::{complete, is_groebner, Completion, CompositionKind, Presentation};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn xyz() -> Alphabet {
    Alphabet::new(&["x", "y", "z"]).unwrap()
}

pub fn random_word(rng: &mut impl Rng, alphabet_len: usize, len: usize) -> Word {
    (0..len)
        .map(|_| rng.gen_range(0..alphabet_len) as u16)
        .collect()
}

pub fn random_poly(
    rng: &mut impl Rng,
    field: Field,
    alphabet_len: usize,
    max_terms: usize,
    max_len: usize,
) -> NcPolynomial {
    let mut p = NcPolynomial::zero(field);
    for _ in 0..rng.gen_range(0..=max_terms) {
        let len = rng.gen_range(0..=max_len);
        let w = random_word(rng, alphabet_len, len);
        p.add_term(w, Scalar::from_int(field, rng.gen_range(-3..=3)));
    }
    p
}

/// Random deglex presentation over `x > y > z` with up to `max_rules` rules.
/// Tails use words strictly below the lead.
pub fn random_presentation(rng: &mut impl Rng, max_rules: usize, max_lead: usize) -> Presentation {
    let a = xyz();
    let ord = MonomialOrder::deglex(&a);
    let field = Field::Rational;
    let n = rng.gen_range(1..=max_rules);
    let mut rels = Vec::with_capacity(n);
    for _ in 0..n {
        let lead_len = rng.gen_range(1..=max_lead);
        let lead = random_word(rng, 3, lead_len);
        let mut tail = NcPolynomial::zero(field);
        for _ in 0..rng.gen_range(0..=2) {
            let len = rng.gen_range(0..=lead_len);
            let w = random_word(rng, 3, len);
            if ord.cmp(&w, &lead) == Ordering::Less {
                tail.add_term(w, Scalar::from_int(field, rng.gen_range(-2..=2)));
            }
        }
        rels.push((lead, tail));
    }
    Presentation::from_relations("random", a, ord, field, rels).unwrap()
}

/// Small presentations whose completion finished and re-verified as bases.
pub fn verified_small_bases(count: usize, seed: u64) -> Vec<Presentation> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let p = random_presentation(&mut r, 3, 3);
        if let Completion::Complete(done) = complete(&p, 4) {
            if done.rules().len() <= 12 && is_groebner(&done).is_basis {
                out.push(done);
            }
        }
    }
    out
}

/// Every overlap and inclusion between two rule leads, found by placing
/// `lead_b` at each offset relative to `lead_a` and comparing letters.
/// Returns `(kind, a, b, offset, witness, s-element)`.
pub fn brute_compositions(
    pres: &Presentation,
) -> Vec<(CompositionKind, usize, usize, usize, Word, NcPolynomial)> {
    let rules = pres.rules();
    let field = pres.field();
    let mut out = Vec::new();
    let f = |i: usize| {
        let mut p = NcPolynomial::from_word(field, rules[i].lead.clone());
        p = p.checked_sub(&rules[i].tail).unwrap();
        p
    };
    let word_poly = |w: &[u16]| NcPolynomial::from_word(field, Word::from(w.to_vec()));
    for a in 0..rules.len() {
        for b in 0..rules.len() {
            let (la, lb) = (&rules[a].lead, &rules[b].lead);
            for offset in 0..la.len() {
                let fits_inside = offset + lb.len() <= la.len();
                let agree =
                    (offset..la.len().min(offset + lb.len())).all(|i| la[i] == lb[i - offset]);
                if !agree {
                    continue;
                }
                if fits_inside {
                    let allowed = lb.len() < la.len() || (lb.len() == la.len() && a < b);
                    if !allowed {
                        continue;
                    }
                    let left = word_poly(&la[..offset]);
                    let right = word_poly(&la[offset + lb.len()..]);
                    let inner = left
                        .checked_mul(&f(b))
                        .unwrap()
                        .checked_mul(&right)
                        .unwrap();
                    out.push((
                        CompositionKind::Inclusion,
                        a,
                        b,
                        offset,
                        la.clone(),
                        f(a).checked_sub(&inner).unwrap(),
                    ));
                } else if offset > 0 {
                    let k = la.len() - offset;
                    let witness: Word = la.iter().chain(&lb[k..]).copied().collect();
                    let s = f(a)
                        .checked_mul(&word_poly(&lb[k..]))
                        .unwrap()
                        .checked_sub(&word_poly(&la[..offset]).checked_mul(&f(b)).unwrap())
                        .unwrap();
                    out.push((CompositionKind::Overlap, a, b, offset, witness, s));
                }
            }
        }
    }
    out
}

pub fn random_config(rng: &mut impl Rng, max_cells: usize) -> MachineConfig {
    let others = rng.gen_range(0..max_cells);
    let left_len = rng.gen_range(0..=others);
    let color = |r: &mut dyn rand::RngCore| r.gen_range(0..COLORS);
    let left = (0..left_len).map(|_| color(rng)).collect();
    let right = (0..others - left_len).map(|_| color(rng)).collect();
    MachineConfig::new(left, rng.gen_range(0..STATES), color(rng), right).unwrap()
}

/// Every configuration with at most `max_cells` tape cells, head included.
pub fn all_configs(max_cells: usize) -> Vec<MachineConfig> {
    let mut out = Vec::new();
    for cells in 1..=max_cells {
        for head in 0..cells {
            let mut tape = vec![0u8; cells];
            loop {
                for state in 0..STATES {
                    out.push(
                        MachineConfig::new(
                            tape[..head].to_vec(),
                            state,
                            tape[head],
                            tape[head + 1..].to_vec(),
                        )
                        .unwrap(),
                    );
                }
                // odometer over colors
                let mut i = 0;
                while i < cells && tape[i] == COLORS - 1 {
                    tape[i] = 0;
                    i += 1;
                }
                if i == cells {
                    break;
                }
                tape[i] += 1;
            }
        }
    }
    out
}
