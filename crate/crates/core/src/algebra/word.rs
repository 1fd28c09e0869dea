use std::ops::Deref;

use super::SymbolId;

/// A noncommutative monomial: a finite sequence of symbol ids. The empty
/// word is the unit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<SymbolId>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[SymbolId] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<SymbolId> {
        self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.0.len() + other.0.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// `prefix · self · suffix`
    pub fn wrap(&self, prefix: &[SymbolId], suffix: &[SymbolId]) -> Word {
        let mut letters = Vec::with_capacity(prefix.len() + self.0.len() + suffix.len());
        letters.extend_from_slice(prefix);
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(suffix);
        Word(letters)
    }

    pub fn pow(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    pub fn contains_subword(&self, u: &[SymbolId]) -> bool {
        u.is_empty() || self.0.windows(u.len()).any(|w| w == u)
    }
}

impl Deref for Word {
    type Target = [SymbolId];

    fn deref(&self) -> &[SymbolId] {
        &self.0
    }
}

impl From<Vec<SymbolId>> for Word {
    fn from(letters: Vec<SymbolId>) -> Self {
        Word(letters)
    }
}

impl From<&[SymbolId]> for Word {
    fn from(letters: &[SymbolId]) -> Self {
        Word(letters.to_vec())
    }
}

impl FromIterator<SymbolId> for Word {
    fn from_iter<I: IntoIterator<Item = SymbolId>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Start positions `i` (ascending) where `u` occurs in `w` as `w[i..i+|u|]`.
///
/// An empty `u` has no occurrences.
pub fn find_occurrences(u: &[SymbolId], w: &[SymbolId]) -> Vec<usize> {
    if u.is_empty() || u.len() > w.len() {
        return Vec::new();
    }
    w.windows(u.len())
        .enumerate()
        .filter(|(_, window)| *window == u)
        .map(|(i, _)| i)
        .collect()
}
