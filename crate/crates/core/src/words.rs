//! Alphabets, finite words and finite windows of bi-infinite sequences.
//!
//! Symbols are interned: a [`Word`] stores indices into its [`Alphabet`], so
//! every scan in the crate works on plain `u32` slices.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a symbol inside its alphabet.
pub type Letter = u32;

#[derive(Debug)]
struct AlphabetInner {
    symbols: Vec<String>,
    index: HashMap<String, Letter>,
}

/// Ordered finite set of distinct symbols. Cheap to clone.
#[derive(Debug, Clone)]
pub struct Alphabet(Arc<AlphabetInner>);

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
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.contains(|c: char| c == ',' || c.is_whitespace()) {
                return Err(Error::InvalidSpec(format!("bad symbol `{s}`")));
            }
            if index.insert(s.clone(), i as Letter).is_some() {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Alphabet(Arc::new(AlphabetInner { symbols, index })))
    }

    /// One single-character symbol per char of `chars`, in order.
    pub fn from_chars(chars: &str) -> Result<Self> {
        Self::new(chars.chars().map(String::from))
    }

    /// The alphabet `{0, 1}`.
    pub fn binary() -> Self {
        Self::from_chars("01").expect("static alphabet")
    }

    /// Symbols `1..=n`, used for return-word indices.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.0.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.0.symbols
    }

    pub fn symbol(&self, letter: Letter) -> &str {
        &self.0.symbols[letter as usize]
    }

    pub fn letter(&self, symbol: &str) -> Result<Letter> {
        self.0
            .index
            .get(symbol)
            .copied()
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))
    }

    /// True when every symbol is a single character, so words print unseparated.
    pub fn is_single_char(&self) -> bool {
        self.0.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Render a letter slice as text.
    pub fn render(&self, letters: &[Letter]) -> String {
        let sep = if self.is_single_char() { "" } else { "," };
        letters
            .iter()
            .map(|&l| self.symbol(l))
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Parse symbol text: comma-separated if it contains a comma, otherwise one
    /// symbol per character (or a single symbol when the whole text is one).
    pub fn parse_letters(&self, text: &str) -> Result<Vec<Letter>> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::EmptyWord);
        }
        if text.contains(',') {
            return text.split(',').map(|s| self.letter(s.trim())).collect();
        }
        if let Ok(l) = self.letter(text) {
            return Ok(vec![l]);
        }
        let mut out = Vec::with_capacity(text.len());
        let mut buf = [0u8; 4];
        for c in text.chars() {
            out.push(self.letter(c.encode_utf8(&mut buf))?);
        }
        Ok(out)
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.symbols == other.0.symbols
    }
}

impl Eq for Alphabet {}

impl Hash for Alphabet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.symbols.hash(state)
    }
}

impl PartialOrd for Alphabet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Alphabet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.symbols.cmp(&other.0.symbols)
    }
}

/// A non-empty finite word over an alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(alphabet: Alphabet, letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        if let Some(&bad) = letters.iter().find(|&&l| l as usize >= alphabet.len()) {
            return Err(Error::UnknownSymbol(format!("#{bad}")));
        }
        Ok(Word { alphabet, letters })
    }

    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let letters = alphabet.parse_letters(text)?;
        Ok(Word { alphabet: alphabet.clone(), letters })
    }

    pub(crate) fn from_slice_unchecked(alphabet: &Alphabet, letters: &[Letter]) -> Self {
        debug_assert!(!letters.is_empty());
        Word { alphabet: alphabet.clone(), letters: letters.to_vec() }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.letters
            .cmp(&other.letters)
            .then_with(|| self.alphabet.cmp(&other.alphabet))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alphabet.render(&self.letters))
    }
}

/// Finite window of a bi-infinite sequence. Local index `i` corresponds to
/// ambient position `origin + i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSegment {
    word: Word,
    origin: i64,
}

impl OrbitSegment {
    pub fn new(word: Word, origin: i64) -> Self {
        OrbitSegment { word, origin }
    }

    pub fn from_word(word: Word) -> Self {
        Self::new(word, 0)
    }

    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        Ok(Self::from_word(Word::parse(alphabet, text)?))
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.word.alphabet()
    }

    pub fn letters(&self) -> &[Letter] {
        self.word.letters()
    }

    pub fn origin(&self) -> i64 {
        self.origin
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn out_of_window(&self, index: i64) -> Error {
        Error::OutOfWindow { index, start: 0, end: self.len() as i64 }
    }

    pub fn get(&self, index: usize) -> Result<Letter> {
        self.letters()
            .get(index)
            .copied()
            .ok_or_else(|| self.out_of_window(index as i64))
    }

    /// Letter at an ambient (absolute) position.
    pub fn at_position(&self, position: i64) -> Result<Letter> {
        let local = position - self.origin;
        if local < 0 || local >= self.len() as i64 {
            return Err(Error::OutOfWindow {
                index: position,
                start: self.origin,
                end: self.origin + self.len() as i64,
            });
        }
        Ok(self.letters()[local as usize])
    }

    pub fn slice(&self, start: usize, len: usize) -> Result<&[Letter]> {
        let end = start
            .checked_add(len)
            .filter(|&e| e <= self.len())
            .ok_or_else(|| self.out_of_window((start + len) as i64))?;
        Ok(&self.letters()[start..end])
    }

    pub fn subword(&self, start: usize, len: usize) -> Result<Word> {
        if len == 0 {
            return Err(Error::EmptyWord);
        }
        Ok(Word::from_slice_unchecked(self.alphabet(), self.slice(start, len)?))
    }

    /// First `len` letters, same origin.
    pub fn prefix(&self, len: usize) -> Result<OrbitSegment> {
        Ok(OrbitSegment::new(self.subword(0, len)?, self.origin))
    }
}

impl fmt::Display for OrbitSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

/// Every start index of `w` in the window, overlapping occurrences included.
pub fn occurrences(segment: &OrbitSegment, w: &Word) -> Result<Vec<usize>> {
    if segment.alphabet() != w.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    if w.len() > segment.len() {
        return Err(Error::LengthOutOfRange { n: w.len(), len: segment.len() });
    }
    Ok(occurrences_in(segment.letters(), w.letters()))
}

pub(crate) fn occurrences_in(haystack: &[Letter], needle: &[Letter]) -> Vec<usize> {
    if needle.is_empty() || needle.len() > haystack.len() {
        return Vec::new();
    }
    haystack
        .windows(needle.len())
        .enumerate()
        .filter_map(|(i, win)| (win == needle).then_some(i))
        .collect()
}

/// Distinct length-`n` factors fully inside the window.
pub fn subwords(segment: &OrbitSegment, n: usize) -> Result<BTreeSet<Word>> {
    if n == 0 || n > segment.len() {
        return Err(Error::LengthOutOfRange { n, len: segment.len() });
    }
    let distinct: BTreeSet<&[Letter]> = segment.letters().windows(n).collect();
    Ok(distinct
        .into_iter()
        .map(|l| Word::from_slice_unchecked(segment.alphabet(), l))
        .collect())
}

/// Number of distinct length-`n` factors of a letter slice.
pub(crate) fn factor_count(letters: &[Letter], n: usize) -> usize {
    if n == 0 || n > letters.len() {
        return 0;
    }
    letters.windows(n).collect::<std::collections::HashSet<_>>().len()
}
