//! The free associative algebra over an exact field.

mod alphabet;
mod order;
mod poly;
mod scalar;
mod word;

pub use alphabet::{Alphabet, SymbolId};
pub use order::{compare_words, MonomialOrder, OrderKind, SortKey};
pub use poly::NcPolynomial;
pub use scalar::{Field, Scalar};
pub use word::{find_occurrences, Word};
