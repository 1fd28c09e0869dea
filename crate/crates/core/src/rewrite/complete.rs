use rayon::prelude::*;

use super::compose::{compositions_between, witness_order};
use super::{normal_form, Composition, Presentation, RewriteRule};
use crate::algebra::NcPolynomial;

/// Result of a bounded completion run.
#[derive(Debug, Clone)]
pub enum Completion {
    /// Every composition resolved; the rules form a Gröbner–Shirshov basis.
    Complete(Presentation),
    /// A new rule would have exceeded the lead-degree bound.
    Partial {
        presentation: Presentation,
        /// Compositions not yet resolved, starting with the one whose reduced
        /// s-element was too long.
        frontier: Vec<Composition>,
    },
}

impl Completion {
    pub fn presentation(&self) -> &Presentation {
        match self {
            Completion::Complete(p) => p,
            Completion::Partial { presentation, .. } => presentation,
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self, Completion::Complete(_))
    }
}

/// Knuth–Bendix style completion with a mandatory lead-length bound.
///
/// Pending compositions are processed smallest witness first (ties by rule
/// indices). Each nonzero reduced s-element becomes a new monic rule; its
/// compositions with every existing rule are queued. Reduction of a batch of
/// queued s-elements runs in parallel, but rules are adopted one at a time in
/// queue order, so the result equals the sequential run.
pub fn complete(pres: &Presentation, max_lead_degree: usize) -> Completion {
    let mut current = pres.clone();
    let mut queue: Vec<Composition> = super::compositions(&current);

    loop {
        sort_queue(&current, &mut queue);
        // Reduce the queue against the current rules, in parallel.
        let reduced: Vec<NcPolynomial> = queue
            .par_iter()
            .map(|c| normal_form(&c.s_element, &current))
            .collect();
        let Some(first) = reduced.iter().position(|nf| !nf.is_zero()) else {
            return Completion::Complete(current);
        };
        let nf = &reduced[first];
        let rule = RewriteRule::from_polynomial(nf, current.order(), current.rules().len())
            .expect("nonzero s-element");
        if rule.lead.len() > max_lead_degree {
            let mut frontier: Vec<Composition> = queue.drain(first..).collect();
            frontier[0].s_element = nf.clone();
            return Completion::Partial {
                presentation: current,
                frontier,
            };
        }
        // Everything before `first` reduced to zero and stays resolved.
        queue.drain(..=first);
        let mut rules = current.rules().to_vec();
        rules.push(rule);
        current = current
            .with_rules(rules)
            .expect("completion preserves orientation");
        let new = current.rules().len() - 1;
        for other in 0..=new {
            queue.extend(compositions_between(current.rules(), new, other));
            if other != new {
                queue.extend(compositions_between(current.rules(), other, new));
            }
        }
    }
}

fn sort_queue(pres: &Presentation, queue: &mut [Composition]) {
    queue.sort_by(|x, y| witness_order(pres, x, y));
}

/// Tail-reduces every rule against the others (an optional canonicalising
/// pass; built-in presentations are left as written).
pub fn canonicalize(pres: &Presentation) -> Presentation {
    let rules: Vec<RewriteRule> = pres
        .rules()
        .iter()
        .map(|r| RewriteRule {
            lead: r.lead.clone(),
            tail: normal_form(&r.tail, pres),
            source: r.source,
        })
        .collect();
    pres.with_rules(rules)
        .expect("tail reduction keeps orientation")
}
