//! Alphabets, words of the free semigroup, and the bounded universe `U_L`.
//!
//! A [`Universe`] is the finite window on `E⁺` holding every word of length
//! `1..=L`, listed in canonical order: shorter words first, words of equal
//! length lexicographically by the alphabet's declaration order. A word's
//! position in that list is its canonical index, and every relation or
//! partition downstream is keyed by these indices.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a symbol in its [`Alphabet`].
pub type Letter = u32;

/// Largest universe the library will materialize.
pub const MAX_UNIVERSE_WORDS: usize = 1 << 22;

/// The finite generating set `E`, with a fixed declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
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
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.chars().any(char::is_whitespace) || s.contains('.') {
                return Err(Error::InvalidSymbol(s.clone()));
            }
            if symbols[..i].contains(s) {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Alphabet { symbols })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, letter: Letter) -> &str {
        &self.symbols[letter as usize]
    }

    pub fn letter(&self, symbol: &str) -> Option<Letter> {
        self.symbols
            .iter()
            .position(|s| s == symbol)
            .map(|i| i as Letter)
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.symbols.len() as Letter
    }

    /// True when every symbol is a single character, so words render without separators.
    pub fn is_compact(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Renders a letter sequence: symbols juxtaposed when all are single
    /// characters, `.`-joined otherwise. The empty sequence renders as `ε`.
    pub fn render(&self, letters: &[Letter]) -> String {
        if letters.is_empty() {
            return "ε".to_string();
        }
        let sep = if self.is_compact() { "" } else { "." };
        letters
            .iter()
            .map(|&l| self.symbol(l))
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Tokenizes `text` into letters (possibly empty).
    pub fn tokenize(&self, text: &str) -> Result<Vec<Letter>> {
        if text.is_empty() {
            return Ok(Vec::new());
        }
        if self.is_compact() && !text.contains('.') {
            return text
                .chars()
                .map(|c| {
                    let mut buf = [0u8; 4];
                    let s = c.encode_utf8(&mut buf);
                    self.letter(s)
                        .ok_or_else(|| Error::UnknownSymbol(s.to_string()))
                })
                .collect();
        }
        text.split('.')
            .map(|s| {
                self.letter(s)
                    .ok_or_else(|| Error::UnknownSymbol(s.to_string()))
            })
            .collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbols.join(" "))
    }
}

/// A nonempty word over an alphabet; an element of `E⁺`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Arc<Alphabet>,
    letters: Box<[Letter]>,
}

impl Word {
    pub fn new(alphabet: Arc<Alphabet>, letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        if let Some(&bad) = letters.iter().find(|&&l| l as usize >= alphabet.len()) {
            return Err(Error::UnknownSymbol(format!("#{bad}")));
        }
        Ok(Word {
            alphabet,
            letters: letters.into_boxed_slice(),
        })
    }

    pub fn letter(alphabet: Arc<Alphabet>, letter: Letter) -> Result<Self> {
        Word::new(alphabet, vec![letter])
    }

    pub fn parse(text: &str, alphabet: &Arc<Alphabet>) -> Result<Self> {
        let letters = alphabet.tokenize(text)?;
        Word::new(alphabet.clone(), letters)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Always false: words of `E⁺` are nonempty.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> Letter {
        self.letters[0]
    }

    pub fn last(&self) -> Letter {
        self.letters[self.letters.len() - 1]
    }

    /// Juxtaposition `u ∗ v`.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        if !same_alphabet(&self.alphabet, &other.alphabet) {
            return Err(Error::AlphabetMismatch);
        }
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(Word {
            alphabet: self.alphabet.clone(),
            letters: letters.into_boxed_slice(),
        })
    }

    pub fn render(&self) -> String {
        self.alphabet.render(&self.letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub(crate) fn same_alphabet(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// All words of length `1..=bound`, canonically ordered.
#[derive(Debug, Clone)]
pub struct Universe {
    alphabet: Arc<Alphabet>,
    bound: usize,
    words: Vec<Word>,
    // offsets[n] = canonical index of the first word of length n
    offsets: Vec<usize>,
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        self.bound == other.bound && same_alphabet(&self.alphabet, &other.alphabet)
    }
}

impl Eq for Universe {}

/// `k + k² + … + k^L`, or `None` on overflow.
pub fn universe_size(k: usize, bound: usize) -> Option<u128> {
    let mut total: u128 = 0;
    let mut power: u128 = 1;
    for _ in 0..bound {
        power = power.checked_mul(k as u128)?;
        total = total.checked_add(power)?;
    }
    Some(total)
}

impl Universe {
    pub fn new(alphabet: Arc<Alphabet>, bound: usize) -> Result<Arc<Self>> {
        if bound < 1 {
            return Err(Error::InvalidBound(bound));
        }
        let k = alphabet.len();
        let size = universe_size(k, bound).unwrap_or(u128::MAX);
        if size > MAX_UNIVERSE_WORDS as u128 {
            return Err(Error::UniverseTooLarge {
                size,
                max: MAX_UNIVERSE_WORDS,
            });
        }
        let mut words = Vec::with_capacity(size as usize);
        let mut offsets = vec![0, 0];
        let mut current: Vec<Vec<Letter>> = alphabet.letters().map(|l| vec![l]).collect();
        for n in 1..=bound {
            if n > 1 {
                current = current
                    .iter()
                    .flat_map(|w| {
                        alphabet.letters().map(move |l| {
                            let mut next = w.clone();
                            next.push(l);
                            next
                        })
                    })
                    .collect();
            }
            for letters in &current {
                words.push(Word {
                    alphabet: alphabet.clone(),
                    letters: letters.clone().into_boxed_slice(),
                });
            }
            offsets.push(words.len());
        }
        Ok(Arc::new(Universe {
            alphabet,
            bound,
            words,
            offsets,
        }))
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word(&self, index: usize) -> &Word {
        &self.words[index]
    }

    /// Canonical index range of the words of length `n`.
    pub fn length_range(&self, n: usize) -> std::ops::Range<usize> {
        if n == 0 || n > self.bound {
            return 0..0;
        }
        self.offsets[n]..self.offsets[n + 1]
    }

    /// Canonical index of a letter sequence, or `None` when it is empty or longer than the bound.
    pub fn index_of_letters(&self, letters: &[Letter]) -> Option<usize> {
        let n = letters.len();
        if n == 0 || n > self.bound {
            return None;
        }
        let k = self.alphabet.len();
        let mut rank = 0usize;
        for &l in letters {
            if l as usize >= k {
                return None;
            }
            rank = rank * k + l as usize;
        }
        Some(self.offsets[n] + rank)
    }

    pub fn index_of(&self, word: &Word) -> Result<usize> {
        if !same_alphabet(&self.alphabet, &word.alphabet) {
            return Err(Error::AlphabetMismatch);
        }
        self.index_of_letters(&word.letters)
            .ok_or_else(|| Error::OutsideUniverse(word.render()))
    }

    /// Parses a word and resolves it to its canonical index.
    pub fn parse_index(&self, text: &str) -> Result<usize> {
        let word = Word::parse(text, &self.alphabet)?;
        self.index_of(&word)
    }

    /// Index of `letter · word[i]`, when it fits.
    pub fn extend_left(&self, i: usize, letter: Letter) -> Option<usize> {
        let w = &self.words[i];
        if w.len() + 1 > self.bound {
            return None;
        }
        let k = self.alphabet.len();
        let n = w.len();
        let rank = i - self.offsets[n];
        Some(self.offsets[n + 1] + letter as usize * k.pow(n as u32) + rank)
    }

    /// Index of `word[i] · letter`, when it fits.
    pub fn extend_right(&self, i: usize, letter: Letter) -> Option<usize> {
        let w = &self.words[i];
        if w.len() + 1 > self.bound {
            return None;
        }
        let k = self.alphabet.len();
        let n = w.len();
        let rank = i - self.offsets[n];
        Some(self.offsets[n + 1] + rank * k + letter as usize)
    }

    /// Index of `word[i] · word[j]`, when it fits.
    pub fn concat_index(&self, i: usize, j: usize) -> Option<usize> {
        let (u, v) = (&self.words[i], &self.words[j]);
        if u.len() + v.len() > self.bound {
            return None;
        }
        let mut letters = Vec::with_capacity(u.len() + v.len());
        letters.extend_from_slice(u.letters());
        letters.extend_from_slice(v.letters());
        self.index_of_letters(&letters)
    }
}

/// Builds `U_L` for the given alphabet and bound.
pub fn enumerate_universe(alphabet: Arc<Alphabet>, bound: usize) -> Result<Arc<Universe>> {
    Universe::new(alphabet, bound)
}

/// Parses a word; single-character symbols are juxtaposed, longer ones `.`-separated.
pub fn parse_word(text: &str, alphabet: &Arc<Alphabet>) -> Result<Word> {
    Word::parse(text, alphabet)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Arc<Alphabet> {
        Arc::new(Alphabet::new(["a", "b"]).unwrap())
    }

    fn rendered(u: &Universe) -> Vec<String> {
        u.words().iter().map(Word::render).collect()
    }

    #[test]
    fn concat_juxtaposes() {
        let e = ab();
        let w = |s| Word::parse(s, &e).unwrap();
        assert_eq!(w("a").concat(&w("b")).unwrap().render(), "ab");
        assert_eq!(w("ab").concat(&w("ba")).unwrap().render(), "abba");
        let left = w("a").concat(&w("b")).unwrap().concat(&w("a")).unwrap();
        let right = w("a").concat(&w("b").concat(&w("a")).unwrap()).unwrap();
        assert_eq!(left, right);
        assert_eq!(left.render(), "aba");
    }

    #[test]
    fn concat_rejects_foreign_alphabet() {
        let other = Arc::new(Alphabet::new(["x", "y"]).unwrap());
        let u = Word::parse("a", &ab()).unwrap();
        let v = Word::parse("x", &other).unwrap();
        assert_eq!(u.concat(&v), Err(Error::AlphabetMismatch));
    }

    #[test]
    fn universe_order() {
        assert_eq!(rendered(&Universe::new(ab(), 1).unwrap()), ["a", "b"]);
        assert_eq!(
            rendered(&Universe::new(ab(), 2).unwrap()),
            ["a", "b", "aa", "ab", "ba", "bb"]
        );
        let unary = Arc::new(Alphabet::new(["a"]).unwrap());
        let u = Universe::new(unary, 4).unwrap();
        assert_eq!(rendered(&u), ["a", "aa", "aaa", "aaaa"]);
    }

    #[test]
    fn universe_rejects_zero_bound() {
        assert_eq!(Universe::new(ab(), 0).unwrap_err(), Error::InvalidBound(0));
    }

    #[test]
    fn universe_rejects_huge_bound() {
        assert!(matches!(
            Universe::new(ab(), 200),
            Err(Error::UniverseTooLarge { .. })
        ));
    }

    #[test]
    fn parse_errors() {
        let e = ab();
        assert_eq!(Word::parse("ab", &e).unwrap().letters(), &[0, 1]);
        assert_eq!(Word::parse("", &e), Err(Error::EmptyWord));
        assert_eq!(
            Word::parse("abc", &e),
            Err(Error::UnknownSymbol("c".into()))
        );
    }

    #[test]
    fn multi_character_symbols_use_dots() {
        let e = Arc::new(Alphabet::new(["x1", "y"]).unwrap());
        let w = Word::parse("x1.y.x1", &e).unwrap();
        assert_eq!(w.letters(), &[0, 1, 0]);
        assert_eq!(w.render(), "x1.y.x1");
        assert!(Word::parse("x1y", &e).is_err());
    }

    #[test]
    fn alphabet_validation() {
        assert_eq!(
            Alphabet::new(Vec::<String>::new()),
            Err(Error::EmptyAlphabet)
        );
        assert_eq!(
            Alphabet::new(["a", "a"]),
            Err(Error::DuplicateSymbol("a".into()))
        );
        assert!(Alphabet::new(["a b"]).is_err());
    }

    #[test]
    fn extension_indices_match_concatenation() {
        let u = Universe::new(ab(), 3).unwrap();
        for i in 0..u.len() {
            for l in u.alphabet().letters() {
                let lw = Word::letter(u.alphabet().clone(), l).unwrap();
                let left = lw.concat(u.word(i)).unwrap();
                let right = u.word(i).concat(&lw).unwrap();
                assert_eq!(u.extend_left(i, l), u.index_of(&left).ok());
                assert_eq!(u.extend_right(i, l), u.index_of(&right).ok());
            }
        }
    }
}
