//! Alphabets and words.
//!
//! Letters are dense indices into an [`Alphabet`]; the alphabet owns the
//! textual tokens and is only consulted when words cross the text boundary.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a letter in its alphabet.
pub type Letter = usize;

/// An ordered set of symbol tokens.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    tokens: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(tokens: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let tokens: Vec<String> = tokens.into_iter().map(Into::into).collect();
        if tokens.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        for (i, t) in tokens.iter().enumerate() {
            if t.is_empty() || t.chars().any(|c| c.is_whitespace() || c == ':' || c == '#') {
                return Err(Error::InvalidAlphabet(format!("bad token `{t}`")));
            }
            if tokens[..i].contains(t) {
                return Err(Error::InvalidAlphabet(format!("duplicate token `{t}`")));
            }
        }
        Ok(Alphabet { tokens })
    }

    /// The alphabet `{a, b, ...}` of the first `k` lowercase letters.
    pub fn latin(k: usize) -> Self {
        assert!(
            (1..=26).contains(&k),
            "latin alphabet size must be in 1..=26"
        );
        Alphabet {
            tokens: (0..k)
                .map(|i| char::from(b'a' + i as u8).to_string())
                .collect(),
        }
    }

    /// Parses a comma-separated token list such as `a,b`.
    pub fn from_csv(spec: &str) -> Result<Self> {
        Self::new(spec.split(',').map(str::trim).filter(|t| !t.is_empty()))
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn token(&self, letter: Letter) -> &str {
        &self.tokens[letter]
    }

    pub fn index_of(&self, token: &str) -> Option<Letter> {
        self.tokens.iter().position(|t| t == token)
    }

    pub fn letters(&self) -> std::ops::Range<Letter> {
        0..self.tokens.len()
    }

    fn single_chars(&self) -> bool {
        self.tokens.iter().all(|t| t.chars().count() == 1)
    }

    /// Parses a word. With `tokenized` the input is whitespace-separated
    /// tokens, otherwise every character is one token.
    pub fn parse_word(&self, text: &str, tokenized: bool) -> Result<Word> {
        let lookup = |t: &str| {
            self.index_of(t)
                .ok_or_else(|| Error::UnknownSymbol(t.to_string()))
        };
        let letters = if tokenized {
            text.split_whitespace()
                .map(lookup)
                .collect::<Result<Vec<_>>>()?
        } else {
            text.chars()
                .map(|c| lookup(c.encode_utf8(&mut [0; 4])))
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Word(letters))
    }

    /// Renders a word; tokens are concatenated when they are all single
    /// characters and space-separated otherwise.
    pub fn format_word(&self, word: &Word) -> String {
        let sep = if self.single_chars() { "" } else { " " };
        word.0
            .iter()
            .map(|&l| self.tokens[l].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Checks that every letter of `word` belongs to this alphabet.
    pub fn check_word(&self, word: &Word) -> Result<()> {
        match word.0.iter().find(|&&l| l >= self.len()) {
            Some(l) => Err(Error::UnknownSymbol(format!("#{l}"))),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tokens.join(" "))
    }
}

/// A finite word over letter indices.
///
/// The derived ordering is plain lexicographic; use [`Word::shortlex_cmp`]
/// when length should dominate.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, exponent: usize) -> Word {
        Word(self.0.repeat(exponent))
    }

    /// The prefix `w[1..len]`.
    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    /// The suffix of length `len`.
    pub fn suffix(&self, len: usize) -> Word {
        Word(self.0[self.0.len() - len..].to_vec())
    }

    /// The factor `w[i..j]` (1-based, inclusive); empty when `i > j`.
    pub fn factor(&self, i: usize, j: usize) -> Word {
        if i > j {
            Word::empty()
        } else {
            Word(self.0[i - 1..j].to_vec())
        }
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_suffix_of(&self, other: &Word) -> bool {
        other.0.ends_with(&self.0)
    }

    pub fn is_factor_of(&self, other: &Word) -> bool {
        self.is_empty() || other.0.windows(self.len()).any(|w| w == self.0.as_slice())
    }

    pub fn shortlex_cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }

    /// All words of exactly `len` letters over `k` letters, in lexicographic order.
    pub fn all_of_length(k: usize, len: usize) -> impl Iterator<Item = Word> {
        let total = k
            .checked_pow(len as u32)
            .expect("word enumeration overflow");
        (0..total).map(move |mut idx| {
            let mut v = vec![0; len];
            for slot in v.iter_mut().rev() {
                *slot = idx % k;
                idx /= k;
            }
            Word(v)
        })
    }

    /// All words of length at most `max_len`, in shortlex order.
    pub fn all_up_to(k: usize, max_len: usize) -> impl Iterator<Item = Word> {
        (0..=max_len).flat_map(move |len| Word::all_of_length(k, len))
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Self {
        Word(v.to_vec())
    }
}
