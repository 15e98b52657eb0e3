//! Free-group words over the fixed generator families.
//!
//! A [`Word`] stores signed generator numbers (`+n` for a generator, `-n` for
//! its inverse) tagged with the [`Alphabet`] it lives in. The surface alphabet
//! interleaves its two families: `a_i` is generator `2i - 1` and `b_i` is
//! generator `2i`. Handle (`x`) and free (`z`) alphabets number their
//! generators by index directly.
//!
//! Every constructor freely reduces, so a `Word` never contains an adjacent
//! pair `s s^-1`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// Largest generator index accepted by parsers and constructors.
pub const MAX_INDEX: u32 = 1 << 20;

/// Letter family of a generator symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    X,
    Z,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'a',
            Family::B => 'b',
            Family::X => 'x',
            Family::Z => 'z',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        match c {
            'a' => Some(Family::A),
            'b' => Some(Family::B),
            'x' => Some(Family::X),
            'z' => Some(Family::Z),
            _ => None,
        }
    }

    pub fn alphabet(self) -> Alphabet {
        match self {
            Family::A | Family::B => Alphabet::Surface,
            Family::X => Alphabet::Handle,
            Family::Z => Alphabet::Free,
        }
    }
}

/// The group a word is written in: `S_g` (a, b), `H_g` (x) or `Z_k` (z).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Alphabet {
    Surface,
    Handle,
    Free,
}

impl Alphabet {
    /// Generator number of `family`/`index` in this alphabet.
    pub fn generator(self, family: Family, index: u32) -> Option<u32> {
        if index == 0 || index > MAX_INDEX || family.alphabet() != self {
            return None;
        }
        Some(match family {
            Family::A => 2 * index - 1,
            Family::B => 2 * index,
            Family::X | Family::Z => index,
        })
    }

    /// Inverse of [`Alphabet::generator`].
    pub fn family_index(self, generator: u32) -> (Family, u32) {
        match self {
            Alphabet::Surface if generator % 2 == 1 => (Family::A, generator.div_ceil(2)),
            Alphabet::Surface => (Family::B, generator / 2),
            Alphabet::Handle => (Family::X, generator),
            Alphabet::Free => (Family::Z, generator),
        }
    }

    /// Number of generators per unit of "rank": two for surfaces (a_i, b_i).
    pub fn width(self) -> u32 {
        match self {
            Alphabet::Surface => 2,
            Alphabet::Handle | Alphabet::Free => 1,
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Alphabet::Surface => "surface (a, b)",
            Alphabet::Handle => "handlebody (x)",
            Alphabet::Free => "free (z)",
        })
    }
}

/// One signed generator letter, e.g. `b2^-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Symbol {
    pub family: Family,
    pub index: u32,
    pub inverse: bool,
}

impl Symbol {
    pub fn new(family: Family, index: u32) -> Symbol {
        Symbol { family, index, inverse: false }
    }

    pub fn inv(self) -> Symbol {
        Symbol { inverse: !self.inverse, ..self }
    }

    pub fn sign(self) -> i32 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    fn letter(self) -> Option<i32> {
        let alphabet = self.family.alphabet();
        let generator = alphabet.generator(self.family, self.index)?;
        Some(generator as i32 * self.sign())
    }

    fn from_letter(alphabet: Alphabet, letter: i32) -> Symbol {
        let (family, index) = alphabet.family_index(letter.unsigned_abs());
        Symbol { family, index, inverse: letter < 0 }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.index)?;
        if self.inverse {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordError {
    AlphabetMismatch { expected: Alphabet, found: Alphabet },
    /// Malformed token; `offset` is the byte offset of the token in the input.
    BadToken { offset: usize, token: String },
    IndexOutOfRange { generator: u32, rank: u32 },
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::AlphabetMismatch { expected, found } => {
                write!(f, "expected a word over the {expected} alphabet, found {found}")
            }
            WordError::BadToken { offset, token } => {
                write!(f, "malformed generator token `{token}` at offset {offset}")
            }
            WordError::IndexOutOfRange { generator, rank } => {
                write!(f, "generator number {generator} exceeds rank {rank}")
            }
        }
    }
}

/// Sort key giving the order `a1 < a1^-1 < b1 < b1^-1 < a2 < ...`.
#[inline]
pub fn letter_key(letter: i32) -> u32 {
    let g = letter.unsigned_abs();
    if letter > 0 {
        2 * g - 1
    } else {
        2 * g
    }
}

/// Lexicographic comparison of letter slices under [`letter_key`].
pub fn compare_letters(lhs: &[i32], rhs: &[i32]) -> Ordering {
    lhs.iter().map(|&l| letter_key(l)).cmp(rhs.iter().map(|&l| letter_key(l)))
}

/// Free reduction by a single stack scan.
pub fn reduce_letters(letters: impl IntoIterator<Item = i32>) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for l in letters {
        debug_assert!(l != 0);
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Inverse of a letter sequence: reversed and sign flipped.
pub fn invert_letters(letters: &[i32]) -> Vec<i32> {
    letters.iter().rev().map(|&l| -l).collect()
}

/// Least rotation of a cyclic letter sequence under [`compare_letters`].
pub fn least_rotation(letters: &[i32]) -> Vec<i32> {
    let n = letters.len();
    let mut best = letters.to_vec();
    let mut candidate = Vec::with_capacity(n);
    for shift in 1..n {
        candidate.clear();
        candidate.extend_from_slice(&letters[shift..]);
        candidate.extend_from_slice(&letters[..shift]);
        if compare_letters(&candidate, &best) == Ordering::Less {
            core::mem::swap(&mut best, &mut candidate);
        }
    }
    best
}

/// Strips matching inverse letters from both ends; returns the number
/// stripped from each end.
pub fn cyclic_core(letters: &[i32]) -> (usize, &[i32]) {
    let mut lo = 0;
    let mut hi = letters.len();
    while hi - lo >= 2 && letters[lo] == -letters[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    (lo, &letters[lo..hi])
}

/// A freely reduced element of `S_g`, `H_g` or `Z_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<i32>,
}

impl Word {
    pub fn identity(alphabet: Alphabet) -> Word {
        Word { alphabet, letters: Vec::new() }
    }

    /// Freely reduces `letters` into a word. Letters must be nonzero.
    pub fn reduce(alphabet: Alphabet, letters: impl IntoIterator<Item = i32>) -> Word {
        Word { alphabet, letters: reduce_letters(letters) }
    }

    /// A single generator (positive letter).
    pub fn generator(alphabet: Alphabet, generator: u32) -> Word {
        debug_assert!(generator >= 1);
        Word { alphabet, letters: alloc::vec![generator as i32] }
    }

    pub fn from_symbols(alphabet: Alphabet, symbols: &[Symbol]) -> Result<Word, WordError> {
        let mut letters = Vec::with_capacity(symbols.len());
        for (offset, s) in symbols.iter().enumerate() {
            if s.family.alphabet() != alphabet {
                return Err(WordError::AlphabetMismatch { expected: alphabet, found: s.family.alphabet() });
            }
            let letter = s.letter().ok_or_else(|| WordError::BadToken { offset, token: s.to_string() })?;
            letters.push(letter);
        }
        Ok(Word::reduce(alphabet, letters))
    }

    /// Parses whitespace-separated tokens such as `a1 b2^-1`; `1` is the
    /// identity.
    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Word, WordError> {
        let mut letters = Vec::new();
        for (offset, token) in tokens(text) {
            if token == "1" {
                continue;
            }
            let symbol = parse_symbol(token).ok_or_else(|| WordError::BadToken { offset, token: token.to_string() })?;
            if symbol.family.alphabet() != alphabet {
                return Err(WordError::AlphabetMismatch { expected: alphabet, found: symbol.family.alphabet() });
            }
            // parse_symbol has already range-checked the index
            letters.push(symbol.letter().expect("validated symbol"));
        }
        Ok(Word::reduce(alphabet, letters))
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<i32> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        let alphabet = self.alphabet;
        self.letters.iter().map(move |&l| Symbol::from_letter(alphabet, l))
    }

    /// Largest generator number used, or 0 for the identity.
    pub fn max_generator(&self) -> u32 {
        self.letters.iter().map(|l| l.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn exponent_sum(&self, generator: u32) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.unsigned_abs() == generator)
            .map(|&l| if l > 0 { 1 } else { -1 })
            .sum()
    }

    pub fn occurrences(&self, generator: u32) -> usize {
        self.letters.iter().filter(|l| l.unsigned_abs() == generator).count()
    }

    pub fn concat(&self, other: &Word) -> Result<Word, WordError> {
        if self.alphabet != other.alphabet {
            return Err(WordError::AlphabetMismatch { expected: self.alphabet, found: other.alphabet });
        }
        Ok(Word::reduce(self.alphabet, self.letters.iter().chain(other.letters.iter()).copied()))
    }

    pub fn inverse(&self) -> Word {
        Word { alphabet: self.alphabet, letters: invert_letters(&self.letters) }
    }

    /// Splits the word as `conjugator · core · conjugator⁻¹` with `core`
    /// cyclically reduced.
    pub fn cyclically_reduce(&self) -> (Word, Word) {
        let (stripped, core) = cyclic_core(&self.letters);
        (
            Word { alphabet: self.alphabet, letters: core.to_vec() },
            Word { alphabet: self.alphabet, letters: self.letters[..stripped].to_vec() },
        )
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(&f), Some(&l)) => self.letters.len() == 1 || f != -l,
            _ => true,
        }
    }

    /// Cyclic rotation starting at position `shift` (taken modulo length),
    /// freely reduced again in case the word was not cyclically reduced.
    pub fn rotate(&self, shift: usize) -> Word {
        if self.letters.is_empty() {
            return self.clone();
        }
        let s = shift % self.letters.len();
        Word::reduce(self.alphabet, self.letters[s..].iter().chain(self.letters[..s].iter()).copied())
    }

    /// Relabels generators by `f`, keeping signs. The result is reduced
    /// again since distinct generators may be identified.
    pub fn map_generators(&self, alphabet: Alphabet, mut f: impl FnMut(u32) -> u32) -> Word {
        Word::reduce(
            alphabet,
            self.letters.iter().map(|&l| {
                let g = f(l.unsigned_abs()) as i32;
                if l > 0 {
                    g
                } else {
                    -g
                }
            }),
        )
    }

    /// Shifts every index by `by` within its family (`a_m ↦ a_{m+by}` etc.).
    pub fn shift_indices(&self, by: u32) -> Word {
        let step = by * self.alphabet.width();
        self.map_generators(self.alphabet, |g| g + step)
    }

    /// Shortlex order using [`letter_key`] on letters.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| compare_letters(&self.letters, &other.letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, s) in self.symbols().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Whitespace tokens with their byte offsets.
pub fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = 0usize;
    core::iter::from_fn(move || {
        let tail = &text[rest..];
        let start = rest + tail.find(|c: char| !c.is_whitespace())?;
        let len = text[start..].find(char::is_whitespace).unwrap_or(text.len() - start);
        rest = start + len;
        Some((start, &text[start..start + len]))
    })
}

/// Parses a single token like `b12^-1`.
pub fn parse_symbol(token: &str) -> Option<Symbol> {
    let mut chars = token.chars();
    let family = Family::from_letter(chars.next()?)?;
    let rest = chars.as_str();
    let (digits, inverse) = match rest.strip_suffix("^-1") {
        Some(d) => (d, true),
        None => (rest, false),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.len() > 9 {
        return None;
    }
    if digits.len() > 1 && digits.starts_with('0') {
        return None;
    }
    let index: u32 = digits.parse().ok()?;
    if index == 0 || index > MAX_INDEX {
        return None;
    }
    Some(Symbol { family, index, inverse })
}

/// A homomorphism between free(-ish) groups given by generator images.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorMapping {
    domain: Alphabet,
    codomain: Alphabet,
    images: Vec<Word>,
}

impl GeneratorMapping {
    /// `images[i]` is the image of domain generator `i + 1`.
    pub fn new(domain: Alphabet, codomain: Alphabet, images: Vec<Word>) -> Result<GeneratorMapping, WordError> {
        for w in &images {
            if w.alphabet() != codomain {
                return Err(WordError::AlphabetMismatch { expected: codomain, found: w.alphabet() });
            }
        }
        Ok(GeneratorMapping { domain, codomain, images })
    }

    pub fn domain(&self) -> Alphabet {
        self.domain
    }

    pub fn codomain(&self) -> Alphabet {
        self.codomain
    }

    /// Number of domain generators.
    pub fn rank(&self) -> u32 {
        self.images.len() as u32
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, generator: u32) -> Option<&Word> {
        generator.checked_sub(1).and_then(|i| self.images.get(i as usize))
    }

    pub fn apply(&self, u: &Word) -> Result<Word, WordError> {
        if u.alphabet() != self.domain {
            return Err(WordError::AlphabetMismatch { expected: self.domain, found: u.alphabet() });
        }
        let mut out = Vec::new();
        for &l in u.letters() {
            let g = l.unsigned_abs();
            let img = self.image(g).ok_or(WordError::IndexOutOfRange { generator: g, rank: self.rank() })?;
            if l > 0 {
                out.extend_from_slice(img.letters());
            } else {
                out.extend(img.letters().iter().rev().map(|&m| -m));
            }
        }
        Ok(Word::reduce(self.codomain, out))
    }
}
