//! Shifted character tables.
//!
//! An [`Alphabet`] is an ordered list of distinct symbols. A [`CharTable`]
//! pairs it with a shift `n` so that the symbol at position `k` gets code
//! `(n + k) mod size`.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// A symbol code, always in `[0, alphabet size)`.
pub type Code = u32;

pub const DEFAULT_ALPHABET_ID: &str = "default";

const DEFAULT_SYMBOLS: &str = "ABCDEFGHIJKLMNOPQRSTUVWXYZ0!?.";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    id: String,
    symbols: Vec<char>,
    index: HashMap<char, usize>,
}

impl Alphabet {
    /// Builds an alphabet. Ids must be non-empty and free of `;` and
    /// whitespace since they travel in the payload header.
    pub fn new(id: impl Into<String>, symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let id = id.into();
        if id.is_empty() || id.chars().any(|c| c == ';' || c.is_whitespace()) {
            return Err(Error::InvalidAlphabet(format!("bad id {id:?}")));
        }
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.len() < 2 {
            return Err(Error::InvalidAlphabet("need at least two symbols".into()));
        }
        if u32::try_from(symbols.len()).is_err() {
            return Err(Error::InvalidAlphabet("too many symbols".into()));
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (k, &s) in symbols.iter().enumerate() {
            if index.insert(s, k).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {s:?}")));
            }
        }
        Ok(Self { id, symbols, index })
    }

    /// The 30-symbol table `A..Z 0 ! ? .`.
    pub fn standard() -> Self {
        Self::new(DEFAULT_ALPHABET_ID, DEFAULT_SYMBOLS.chars()).expect("default alphabet is valid")
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn size(&self) -> u32 {
        self.symbols.len() as u32
    }

    pub fn contains(&self, symbol: char) -> bool {
        self.index.contains_key(&symbol)
    }

    pub fn position(&self, symbol: char) -> Option<usize> {
        self.index.get(&symbol).copied()
    }
}

impl Default for Alphabet {
    fn default() -> Self {
        Self::standard()
    }
}

/// Alphabets known to both endpoints, keyed by id.
#[derive(Debug, Clone, Default)]
pub struct AlphabetRegistry {
    alphabets: HashMap<String, Alphabet>,
}

impl AlphabetRegistry {
    pub fn empty() -> Self {
        Self::default()
    }

    /// A registry holding only the default alphabet.
    pub fn with_default() -> Self {
        let mut r = Self::empty();
        r.register(Alphabet::standard());
        r
    }

    /// Adds or replaces the alphabet under its id.
    pub fn register(&mut self, alphabet: Alphabet) {
        self.alphabets.insert(alphabet.id.clone(), alphabet);
    }

    pub fn get(&self, id: &str) -> Result<&Alphabet> {
        self.alphabets
            .get(id)
            .ok_or_else(|| Error::UnknownAlphabet(id.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharTable {
    alphabet: Alphabet,
    shift: u64,
}

impl CharTable {
    pub fn new(alphabet: Alphabet, shift: u64) -> Self {
        Self { alphabet, shift }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn shift(&self) -> u64 {
        self.shift
    }

    pub fn size(&self) -> u32 {
        self.alphabet.size()
    }

    pub fn code_of(&self, symbol: char) -> Result<Code> {
        let k = self
            .alphabet
            .position(symbol)
            .ok_or(Error::UnknownSymbol(symbol))? as u64;
        let size = u64::from(self.size());
        Ok(((self.shift % size + k) % size) as Code)
    }

    pub fn symbol_of(&self, code: i64) -> Result<char> {
        let size = self.size();
        if code < 0 || code >= i64::from(size) {
            return Err(Error::CodeOutOfRange { code, size });
        }
        let size = u64::from(size);
        let k = (code as u64 + size - self.shift % size) % size;
        Ok(self.alphabet.symbols[k as usize])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn table(n: u64) -> CharTable {
        CharTable::new(Alphabet::standard(), n)
    }

    #[test]
    fn default_alphabet_order() {
        let a = Alphabet::standard();
        assert_eq!(a.size(), 30);
        assert_eq!(a.symbols()[0], 'A');
        assert_eq!(a.symbols()[25], 'Z');
        assert_eq!(&a.symbols()[26..], &['0', '!', '?', '.']);
        assert!(!a.contains(' '));
    }

    #[test]
    fn code_of_examples() {
        assert_eq!(table(2).code_of('H').unwrap(), 9);
        assert_eq!(table(2).code_of('?').unwrap(), 0);
        assert_eq!(table(2).code_of('!').unwrap(), 29);
        assert_eq!(table(2).code_of('0').unwrap(), 28);
        assert_eq!(table(4).code_of('M').unwrap(), 16);
        assert_eq!(table(4).code_of('0').unwrap(), 0);
    }

    #[test]
    fn symbol_of_examples() {
        assert_eq!(table(2).symbol_of(9).unwrap(), 'H');
        assert_eq!(table(4).symbol_of(0).unwrap(), '0');
        assert_eq!(table(1).symbol_of(1).unwrap(), 'A');
    }

    #[test]
    fn errors() {
        assert_eq!(table(2).code_of(' '), Err(Error::UnknownSymbol(' ')));
        assert_eq!(table(2).code_of('a'), Err(Error::UnknownSymbol('a')));
        assert_eq!(
            table(2).symbol_of(30),
            Err(Error::CodeOutOfRange { code: 30, size: 30 })
        );
        assert!(table(2).symbol_of(-1).is_err());
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::new("x", "AA".chars()).is_err());
        assert!(Alphabet::new("", "AB".chars()).is_err());
        assert!(Alphabet::new("a;b", "AB".chars()).is_err());
        assert!(Alphabet::new("x", "A".chars()).is_err());
        assert!(Alphabet::new("lower", "abc".chars()).is_ok());
    }

    #[test]
    fn registry_lookup() {
        let mut r = AlphabetRegistry::with_default();
        assert!(r.get("default").is_ok());
        assert_eq!(
            r.get("ext").unwrap_err(),
            Error::UnknownAlphabet("ext".into())
        );
        r.register(Alphabet::new("ext", "ABCDEFGHIJKLMNOPQRSTUVWXYZ0!?.,-".chars()).unwrap());
        assert_eq!(r.get("ext").unwrap().size(), 32);
    }

    #[test]
    fn extended_alphabet_wraps_at_its_size() {
        let a = Alphabet::new("ext", "ABCDEFGHIJKLMNOPQRSTUVWXYZ0!?.,-".chars()).unwrap();
        let t = CharTable::new(a, 3);
        assert_eq!(t.code_of('-').unwrap(), (3 + 31) % 32);
        assert_eq!(t.symbol_of(2).unwrap(), '-');
    }

    proptest! {
        #[test]
        fn bijection(n in 1u64..=60, c in 0i64..30) {
            let t = table(n);
            let s = t.symbol_of(c).unwrap();
            prop_assert_eq!(i64::from(t.code_of(s).unwrap()), c);
        }

        #[test]
        fn shift_periodic(n in 1u64..=60, k in 0usize..30) {
            let s = Alphabet::standard().symbols()[k];
            prop_assert_eq!(table(n).code_of(s).unwrap(), table(n + 30).code_of(s).unwrap());
        }
    }
}
