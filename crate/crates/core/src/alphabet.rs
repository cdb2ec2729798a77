//! Finite alphabets of textual symbols.
//!
//! Symbols are addressed by dense ids. For a weight alphabet the id is also
//! the rank in the total order: the symbol listed first is the smallest.

use std::collections::HashMap;

use crate::error::{Error, Result};

pub type SymbolId = usize;

/// A word over some alphabet, as a sequence of symbol ids.
pub type Word = Vec<SymbolId>;

/// A weight alphabet is an ordinary alphabet whose ids double as ranks.
pub type WeightAlphabet = Alphabet;

/// Checks the lexical rules shared by symbols and state names.
///
/// A token is nonempty, has no whitespace, is not the reserved `-`, and does
/// not contain `#` (comment marker) or `.` (output word joiner).
pub fn validate_token(token: &str) -> Result<()> {
    let bad = token.is_empty() || token == "-" || token.chars().any(|c| c.is_whitespace() || c == '#' || c == '.');
    if bad {
        Err(Error::InvalidToken(token.to_string()))
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, SymbolId>,
}

impl Alphabet {
    pub fn new<I, S>(tokens: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Alphabet::default();
        for token in tokens {
            alphabet.push(token.into())?;
        }
        Ok(alphabet)
    }

    /// Appends a symbol; it becomes the largest in rank order.
    pub fn push(&mut self, token: String) -> Result<SymbolId> {
        validate_token(&token)?;
        if self.index.contains_key(&token) {
            return Err(Error::DuplicateSymbol(token));
        }
        let id = self.symbols.len();
        self.index.insert(token.clone(), id);
        self.symbols.push(token);
        Ok(id)
    }

    /// Appends a symbol without the lexical check; used for the reserved
    /// separator of the single-tape encoding.
    pub(crate) fn push_reserved(&mut self, token: &str) -> Result<SymbolId> {
        if self.index.contains_key(token) {
            return Err(Error::DuplicateSymbol(token.to_string()));
        }
        let id = self.symbols.len();
        self.index.insert(token.to_string(), id);
        self.symbols.push(token.to_string());
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn id(&self, token: &str) -> Option<SymbolId> {
        self.index.get(token).copied()
    }

    /// Rank of a symbol in ascending order; identical to its id.
    pub fn rank(&self, token: &str) -> Option<usize> {
        self.id(token)
    }

    pub fn token(&self, id: SymbolId) -> &str {
        &self.symbols[id]
    }

    pub fn tokens(&self) -> &[String] {
        &self.symbols
    }

    pub fn contains(&self, token: &str) -> bool {
        self.index.contains_key(token)
    }

    pub fn check(&self, id: SymbolId, kind: &'static str) -> Result<()> {
        if id < self.len() {
            Ok(())
        } else {
            Err(Error::SymbolOutOfRange {
                kind,
                id,
                size: self.len(),
            })
        }
    }

    /// Resolves a whitespace-separated token list into a word.
    pub fn parse_word(&self, text: &str, kind: &'static str) -> Result<Word> {
        text.split_whitespace()
            .map(|t| {
                self.id(t).ok_or_else(|| Error::UnknownToken {
                    kind,
                    token: t.to_string(),
                })
            })
            .collect()
    }

    /// Renders a word with `sep` between symbols and `-` for the empty word.
    pub fn render(&self, word: &[SymbolId], sep: &str) -> String {
        if word.is_empty() {
            "-".to_string()
        } else {
            word.iter().map(|&s| self.token(s)).collect::<Vec<_>>().join(sep)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_follow_declaration_order() {
        let w = Alphabet::new(["a", "b"]).unwrap();
        assert_eq!(w.rank("a"), Some(0));
        assert_eq!(w.rank("b"), Some(1));
        assert_eq!(w.rank("c"), None);
    }

    #[test]
    fn rejects_bad_tokens() {
        for bad in ["", "-", "a b", "x#", "p.q"] {
            assert!(Alphabet::new([bad]).is_err(), "{bad:?} accepted");
        }
        assert_eq!(Alphabet::new(["a", "a"]), Err(Error::DuplicateSymbol("a".into())));
    }

    #[test]
    fn parse_and_render_words() {
        let g = Alphabet::new(["p", "q"]).unwrap();
        let w = g.parse_word("p q p", "output").unwrap();
        assert_eq!(w, vec![0, 1, 0]);
        assert_eq!(g.render(&w, "."), "p.q.p");
        assert_eq!(g.render(&[], "."), "-");
        assert!(g.parse_word("r", "output").is_err());
    }
}
