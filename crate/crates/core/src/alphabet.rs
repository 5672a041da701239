use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Text rendering of the blank symbol. Never a valid alphabet member.
pub const BLANK: &str = "□";
/// ASCII stand-in for [`BLANK`] accepted when parsing words.
pub const BLANK_ASCII: &str = "_";

/// Index of a symbol inside its [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Symbol(pub u16);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A cell of a partial word: `None` is the blank.
pub type Cell = Option<Symbol>;

/// Ordered finite set of symbol tokens.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        if symbols.len() > u16::MAX as usize {
            return Err(Error::Parse("alphabet too large".into()));
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s == BLANK || s == BLANK_ASCII || s.chars().any(char::is_whitespace) {
                return Err(Error::ReservedSymbol(s.clone()));
            }
            if symbols[..i].contains(s) {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// The alphabet `{0, 1}`.
    pub fn binary() -> Self {
        Alphabet { symbols: vec!["0".into(), "1".into()] }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.symbols.len()).map(|i| Symbol(i as u16))
    }

    pub fn tokens(&self) -> &[String] {
        &self.symbols
    }

    pub fn lookup(&self, token: &str) -> Result<Symbol> {
        self.symbols
            .iter()
            .position(|s| s == token)
            .map(|i| Symbol(i as u16))
            .ok_or_else(|| Error::UnknownSymbol(token.to_string()))
    }

    pub fn token(&self, sym: Symbol) -> &str {
        &self.symbols[sym.index()]
    }

    fn single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Renders cells with `□` for blanks. Multi-character alphabets are space separated.
    pub fn render(&self, cells: &[Cell]) -> String {
        let sep = if self.single_char() { "" } else { " " };
        cells
            .iter()
            .map(|c| match c {
                Some(s) => self.token(*s),
                None => BLANK,
            })
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Parses a rendered word. Single-character alphabets read one cell per character;
    /// otherwise cells are whitespace separated. `□` and `_` denote blanks.
    pub fn parse_cells(&self, text: &str) -> Result<Vec<Cell>> {
        let tokens: Vec<String> = if self.single_char() && !text.contains(char::is_whitespace) {
            text.chars().map(String::from).collect()
        } else {
            text.split_whitespace().map(String::from).collect()
        };
        tokens
            .iter()
            .map(|t| if t == BLANK || t == BLANK_ASCII { Ok(None) } else { self.lookup(t).map(Some) })
            .collect()
    }

    /// Parses a word that must not contain blanks.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Symbol>> {
        self.parse_cells(text)?
            .into_iter()
            .map(|c| c.ok_or_else(|| Error::Parse(format!("blank in word {text:?}"))))
            .collect()
    }

    pub fn render_word(&self, word: &[Symbol]) -> String {
        let cells: Vec<Cell> = word.iter().copied().map(Some).collect();
        self.render(&cells)
    }
}

impl TryFrom<Vec<String>> for Alphabet {
    type Error = Error;

    fn try_from(value: Vec<String>) -> Result<Self> {
        Alphabet::new(value)
    }
}

impl From<Alphabet> for Vec<String> {
    fn from(value: Alphabet) -> Self {
        value.symbols
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.symbols.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_reserved_and_duplicates() {
        assert_eq!(Alphabet::new(["0", "□"]), Err(Error::ReservedSymbol("□".into())));
        assert_eq!(Alphabet::new(["a", "a"]), Err(Error::DuplicateSymbol("a".into())));
        assert_eq!(Alphabet::new(Vec::<String>::new()), Err(Error::EmptyAlphabet));
    }

    #[test]
    fn render_and_parse() {
        let a = Alphabet::binary();
        let cells = a.parse_cells("□1_0").unwrap();
        assert_eq!(cells, vec![None, Some(Symbol(1)), None, Some(Symbol(0))]);
        assert_eq!(a.render(&cells), "□1□0");

        let b = Alphabet::new(["ab", "cd"]).unwrap();
        let cells = b.parse_cells("ab □ cd").unwrap();
        assert_eq!(b.render(&cells), "ab □ cd");
    }
}
