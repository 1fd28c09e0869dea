use std::cmp::Ordering;

use crate::{Error, Result};

use super::{Alphabet, SymbolId, Word};

/// How words are compared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderKind {
    /// Length first, then lexicographic by precedence.
    DegLex,
    /// Two-level wreath-product order. Words are compared first by their
    /// subwords of `heavy` letters (under deglex), then by the heavy-free
    /// segments between those letters, last segment first, each under
    /// deglex.
    ///
    /// This is admissible (well-founded and compatible with multiplication
    /// on both sides) and, unlike deglex, lets a heavy letter travel right
    /// while the word around it grows.
    Wreath { heavy: Vec<SymbolId> },
}

/// A monomial order on the words of one alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    rank: Vec<u16>,
    heavy: Vec<bool>,
}

/// Lexicographically comparable key that agrees with the order it came from.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SortKey(Vec<u32>);

impl MonomialOrder {
    pub fn deglex(alphabet: &Alphabet) -> Self {
        MonomialOrder {
            kind: OrderKind::DegLex,
            rank: alphabet.ranks().to_vec(),
            heavy: vec![false; alphabet.len()],
        }
    }

    pub fn wreath(alphabet: &Alphabet, heavy: &[SymbolId]) -> Result<Self> {
        let mut mask = vec![false; alphabet.len()];
        for &id in heavy {
            *mask
                .get_mut(id as usize)
                .ok_or(Error::AlphabetMismatch(id as usize))? = true;
        }
        let mut heavy = heavy.to_vec();
        heavy.sort_unstable();
        heavy.dedup();
        Ok(MonomialOrder {
            kind: OrderKind::Wreath { heavy },
            rank: alphabet.ranks().to_vec(),
            heavy: mask,
        })
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    pub fn alphabet_len(&self) -> usize {
        self.rank.len()
    }

    fn check(&self, w: &[SymbolId]) -> Result<()> {
        match w.iter().find(|&&id| id as usize >= self.rank.len()) {
            Some(&id) => Err(Error::AlphabetMismatch(id as usize)),
            None => Ok(()),
        }
    }

    /// Compares two words, rejecting ids outside the alphabet.
    pub fn compare(&self, u: &[SymbolId], v: &[SymbolId]) -> Result<Ordering> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.cmp(u, v))
    }

    /// Compares two words already known to belong to the alphabet.
    pub fn cmp(&self, u: &[SymbolId], v: &[SymbolId]) -> Ordering {
        match self.kind {
            OrderKind::DegLex => self.deglex_cmp(u.iter().copied(), v.iter().copied()),
            OrderKind::Wreath { .. } => self.wreath_cmp(u, v),
        }
    }

    pub fn max<'a>(&self, u: &'a Word, v: &'a Word) -> &'a Word {
        if self.cmp(u, v) == Ordering::Less {
            v
        } else {
            u
        }
    }

    fn deglex_cmp<I, J>(&self, u: I, v: J) -> Ordering
    where
        I: ExactSizeIterator<Item = SymbolId>,
        J: ExactSizeIterator<Item = SymbolId>,
    {
        u.len().cmp(&v.len()).then_with(|| {
            u.zip(v)
                .map(|(a, b)| self.rank[a as usize].cmp(&self.rank[b as usize]))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }

    fn wreath_cmp(&self, u: &[SymbolId], v: &[SymbolId]) -> Ordering {
        let heavy_u: Vec<SymbolId> = u
            .iter()
            .copied()
            .filter(|&x| self.heavy[x as usize])
            .collect();
        let heavy_v: Vec<SymbolId> = v
            .iter()
            .copied()
            .filter(|&x| self.heavy[x as usize])
            .collect();
        let by_heavy = self.deglex_cmp(heavy_u.into_iter(), heavy_v.into_iter());
        if by_heavy.is_ne() {
            return by_heavy;
        }
        // Equal heavy subwords: same number of segments on both sides.
        let segs_u = u.rsplit(|&x| self.heavy[x as usize]);
        let segs_v = v.rsplit(|&x| self.heavy[x as usize]);
        segs_u
            .zip(segs_v)
            .map(|(a, b)| self.deglex_cmp(a.iter().copied(), b.iter().copied()))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }

    /// A key whose plain lexicographic order is this monomial order.
    pub fn sort_key(&self, w: &[SymbolId]) -> SortKey {
        let mut key = Vec::with_capacity(w.len() + 4);
        match self.kind {
            OrderKind::DegLex => {
                key.push(w.len() as u32);
                key.extend(w.iter().map(|&x| self.rank[x as usize] as u32));
            }
            OrderKind::Wreath { .. } => {
                let heavy: Vec<u32> = w
                    .iter()
                    .filter(|&&x| self.heavy[x as usize])
                    .map(|&x| self.rank[x as usize] as u32)
                    .collect();
                key.push(heavy.len() as u32);
                key.extend(heavy);
                for seg in w.rsplit(|&x| self.heavy[x as usize]) {
                    key.push(seg.len() as u32);
                    key.extend(seg.iter().map(|&x| self.rank[x as usize] as u32));
                }
            }
        }
        SortKey(key)
    }
}

/// Compares `u` and `v` under `ord`; fails when either uses a symbol outside
/// the order's alphabet.
pub fn compare_words(u: &Word, v: &Word, ord: &MonomialOrder) -> Result<Ordering> {
    ord.compare(u, v)
}
