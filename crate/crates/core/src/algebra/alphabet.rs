use std::collections::HashMap;

use crate::{Error, Result};

use super::Word;

pub type SymbolId = u16;

/// A finite set of named symbols with a total precedence order.
///
/// Ids are assigned in declaration order. Precedence is independent of the
/// ids: `rank(id)` is larger for symbols that sort higher.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    rank: Vec<u16>,
    lookup: HashMap<String, SymbolId>,
}

impl Alphabet {
    /// Builds an alphabet whose precedence follows declaration order, first
    /// symbol highest.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let precedence: Vec<&str> = names.iter().map(|n| n.as_ref()).collect();
        Self::with_precedence(names, &precedence)
    }

    /// `precedence` lists every symbol name exactly once, highest first.
    pub fn with_precedence<S: AsRef<str>, P: AsRef<str>>(
        names: &[S],
        precedence: &[P],
    ) -> Result<Self> {
        if names.len() > SymbolId::MAX as usize {
            return Err(Error::InvalidAlphabet("too many symbols".into()));
        }
        let mut lookup = HashMap::with_capacity(names.len());
        for (id, name) in names.iter().enumerate() {
            let name = name.as_ref();
            if name.is_empty() || !is_symbol_name(name) {
                return Err(Error::InvalidAlphabet(format!("bad symbol name `{name}`")));
            }
            if lookup.insert(name.to_string(), id as SymbolId).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol `{name}`")));
            }
        }
        if precedence.len() != names.len() {
            return Err(Error::InvalidAlphabet(
                "precedence must list every symbol exactly once".into(),
            ));
        }
        let mut rank = vec![u16::MAX; names.len()];
        let top = names.len() as u16;
        for (pos, name) in precedence.iter().enumerate() {
            let name = name.as_ref();
            let id = *lookup
                .get(name)
                .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
            if rank[id as usize] != u16::MAX {
                return Err(Error::InvalidAlphabet(format!(
                    "`{name}` appears twice in the precedence"
                )));
            }
            rank[id as usize] = top - 1 - pos as u16;
        }
        Ok(Alphabet {
            names: names.iter().map(|n| n.as_ref().to_string()).collect(),
            rank,
            lookup,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn id(&self, name: &str) -> Result<SymbolId> {
        self.lookup
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn name(&self, id: SymbolId) -> &str {
        &self.names[id as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Precedence rank; a higher rank sorts higher.
    pub fn rank(&self, id: SymbolId) -> u16 {
        self.rank[id as usize]
    }

    pub fn ranks(&self) -> &[u16] {
        &self.rank
    }

    /// Symbol names from highest to lowest precedence.
    pub fn precedence(&self) -> Vec<&str> {
        let mut ids: Vec<usize> = (0..self.names.len()).collect();
        ids.sort_by_key(|&id| std::cmp::Reverse(self.rank[id]));
        ids.into_iter().map(|id| self.names[id].as_str()).collect()
    }

    pub fn contains(&self, word: &Word) -> bool {
        word.iter().all(|&id| (id as usize) < self.names.len())
    }

    /// Parses whitespace-separated symbol names.
    pub fn word(&self, text: &str) -> Result<Word> {
        text.split_whitespace()
            .map(|name| self.id(name))
            .collect::<Result<Vec<_>>>()
            .map(Word::from)
    }

    /// Renders a word as space-separated names; the empty word renders as `1`.
    pub fn render(&self, word: &Word) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        word.iter()
            .map(|&id| self.name(id))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub(crate) fn is_symbol_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}
