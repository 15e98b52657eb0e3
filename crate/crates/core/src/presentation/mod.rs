//! Finitely presented groups and the certificate machinery built on them.

mod certify;
mod coset;
mod finite;
mod matrix;
mod tietze;

pub use certify::{certify_free_of_rank, certify_trivial, Certificate, Evidence, Obstruction, Verdict};
pub use coset::{todd_coxeter_index, CosetOutcome};
pub use finite::{builtin_groups, count_homomorphisms, for_each_homomorphism, FiniteGroup, HomCount, HomSearchOverflow};
pub use matrix::{abelianization, smith_normal_form, AbelianInvariants, IntegerMatrix, SmithForm};
pub use tietze::{replay, tietze_simplify, TietzeError, TietzeMove, TietzeOutcome};

use alloc::vec::Vec;
use core::fmt;

use crate::word::{compare_letters, cyclic_core, invert_letters, least_rotation, Alphabet, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresentationError {
    AlphabetMismatch { expected: Alphabet, found: Alphabet },
    /// A relator or subgroup word uses a generator outside the presentation.
    UnknownGenerator { generator: u32 },
    /// Generator numbers must be positive and strictly increasing.
    BadGeneratorList,
}

impl fmt::Display for PresentationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresentationError::AlphabetMismatch { expected, found } => {
                write!(f, "expected words over the {expected} alphabet, found {found}")
            }
            PresentationError::UnknownGenerator { generator } => {
                write!(f, "generator number {generator} is not a generator of the presentation")
            }
            PresentationError::BadGeneratorList => f.write_str("generator list must be positive and strictly increasing"),
        }
    }
}

/// Canonical cyclic form of a relator: cyclically reduced, least rotation.
pub(crate) fn canonical_relator(letters: &[i32]) -> Vec<i32> {
    let (_, core) = cyclic_core(letters);
    least_rotation(core)
}

/// Canonical form of the pair `{r, r⁻¹}` up to rotation.
pub(crate) fn canonical_relator_up_to_inverse(letters: &[i32]) -> Vec<i32> {
    let forward = canonical_relator(letters);
    let backward = canonical_relator(&invert_letters(&forward));
    if compare_letters(&backward, &forward).is_lt() {
        backward
    } else {
        forward
    }
}

/// A group presentation `⟨generators | relators⟩`.
///
/// Generators are an explicit increasing list of generator numbers of the
/// alphabet, so simplification can drop generators without renaming the
/// survivors. Relators are nonempty, cyclically reduced and stored as their
/// least cyclic rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    alphabet: Alphabet,
    generators: Vec<u32>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Presentation on generators `1..=count`.
    pub fn new(
        alphabet: Alphabet,
        count: u32,
        relators: impl IntoIterator<Item = Word>,
    ) -> Result<Presentation, PresentationError> {
        Presentation::with_generators(alphabet, (1..=count).collect(), relators)
    }

    pub fn with_generators(
        alphabet: Alphabet,
        generators: Vec<u32>,
        relators: impl IntoIterator<Item = Word>,
    ) -> Result<Presentation, PresentationError> {
        if generators.first() == Some(&0) || generators.windows(2).any(|w| w[0] >= w[1]) {
            return Err(PresentationError::BadGeneratorList);
        }
        let mut out = Presentation { alphabet, generators, relators: Vec::new() };
        for r in relators {
            if r.alphabet() != alphabet {
                return Err(PresentationError::AlphabetMismatch { expected: alphabet, found: r.alphabet() });
            }
            out.check_word(&r)?;
            out.push_relator(r.letters());
        }
        Ok(out)
    }

    /// Free group on generators `1..=count`.
    pub fn free(alphabet: Alphabet, count: u32) -> Presentation {
        Presentation { alphabet, generators: (1..=count).collect(), relators: Vec::new() }
    }

    /// The trivial group with no generators.
    pub fn trivial(alphabet: Alphabet) -> Presentation {
        Presentation::free(alphabet, 0)
    }

    pub(crate) fn from_parts_unchecked(alphabet: Alphabet, generators: Vec<u32>, relators: Vec<Word>) -> Presentation {
        Presentation { alphabet, generators, relators }
    }

    pub(crate) fn push_relator(&mut self, letters: &[i32]) {
        let canon = canonical_relator(letters);
        if !canon.is_empty() {
            self.relators.push(Word::reduce(self.alphabet, canon));
        }
    }

    pub fn check_word(&self, w: &Word) -> Result<(), PresentationError> {
        if w.alphabet() != self.alphabet {
            return Err(PresentationError::AlphabetMismatch { expected: self.alphabet, found: w.alphabet() });
        }
        for &l in w.letters() {
            let g = l.unsigned_abs();
            if self.position(g).is_none() {
                return Err(PresentationError::UnknownGenerator { generator: g });
            }
        }
        Ok(())
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    pub fn max_generator(&self) -> u32 {
        self.generators.last().copied().unwrap_or(0)
    }

    /// Dense 0-based position of a generator number.
    pub fn position(&self, generator: u32) -> Option<usize> {
        self.generators.binary_search(&generator).ok()
    }

    /// Relators rewritten over dense signed generators `±1..=±n`.
    pub fn dense_relators(&self) -> Vec<Vec<i32>> {
        self.relators.iter().map(|r| self.dense_letters(r)).collect()
    }

    pub(crate) fn dense_letters(&self, w: &Word) -> Vec<i32> {
        w.letters()
            .iter()
            .map(|&l| {
                let p = self.position(l.unsigned_abs()).expect("letter checked against presentation") as i32 + 1;
                if l > 0 {
                    p
                } else {
                    -p
                }
            })
            .collect()
    }

    /// The same group with generators renamed to `1..=n` in order.
    pub fn densified(&self) -> Presentation {
        let relators = self.dense_relators().into_iter().map(|r| Word::reduce(self.alphabet, r)).collect();
        Presentation { alphabet: self.alphabet, generators: (1..=self.generators.len() as u32).collect(), relators }
    }

    /// Free product: `other`'s generators are shifted past this
    /// presentation's largest generator number.
    pub fn free_product(&self, other: &Presentation) -> Result<Presentation, PresentationError> {
        if self.alphabet != other.alphabet {
            return Err(PresentationError::AlphabetMismatch { expected: self.alphabet, found: other.alphabet });
        }
        let shift = self.max_generator();
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().map(|g| g + shift));
        let mut relators = self.relators.clone();
        relators.extend(other.relators.iter().map(|r| r.map_generators(self.alphabet, |g| g + shift)));
        Ok(Presentation { alphabet: self.alphabet, generators, relators })
    }

    /// Removes repeated relators (equal up to rotation and inversion),
    /// keeping first occurrences.
    pub fn deduplicated(&self) -> Presentation {
        let mut seen: Vec<Vec<i32>> = Vec::new();
        let mut relators = Vec::new();
        for r in &self.relators {
            let key = canonical_relator_up_to_inverse(r.letters());
            if !seen.contains(&key) {
                seen.push(key);
                relators.push(r.clone());
            }
        }
        Presentation { alphabet: self.alphabet, generators: self.generators.clone(), relators }
    }

    /// Dense form with relators sorted by their rotation/inversion class;
    /// equal keys mean the presentations agree up to relator order.
    pub fn comparison_key(&self) -> (usize, Vec<Vec<i32>>) {
        let mut rels: Vec<Vec<i32>> =
            self.dense_relators().iter().map(|r| canonical_relator_up_to_inverse(r)).collect();
        rels.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| compare_letters(a, b)));
        (self.generators.len(), rels)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("presentation { gens:")?;
        for &g in &self.generators {
            write!(f, " {}", Word::generator(self.alphabet, g))?;
        }
        f.write_str("  rels:")?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, " \"{r}\"")?;
        }
        f.write_str(" }")
    }
}

/// Resource limits for the semi-decision procedures.
///
/// `clock`, when set, returns monotonic milliseconds and enables the
/// wall-clock cap; without it only the counting limits apply.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_tietze_passes: u64,
    pub max_relator_length: usize,
    pub max_cosets: usize,
    pub max_hom_nodes: u64,
    pub wall_clock_secs: u64,
    pub clock: Option<fn() -> u64>,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            max_tietze_passes: 10_000,
            max_relator_length: 100_000,
            max_cosets: 1_000_000,
            max_hom_nodes: 10_000_000,
            wall_clock_secs: 30,
            clock: None,
        }
    }
}

impl Budget {
    pub fn with_clock(self, clock: fn() -> u64) -> Budget {
        Budget { clock: Some(clock), ..self }
    }

    pub fn is_valid(&self) -> bool {
        self.max_tietze_passes > 0
            && self.max_relator_length > 0
            && self.max_cosets > 0
            && self.max_hom_nodes > 0
            && self.wall_clock_secs > 0
    }

    pub(crate) fn deadline(&self) -> Deadline {
        Deadline { clock: self.clock.map(|c| (c, c())), limit_ms: self.wall_clock_secs.saturating_mul(1000) }
    }
}

pub(crate) struct Deadline {
    clock: Option<(fn() -> u64, u64)>,
    limit_ms: u64,
}

impl Deadline {
    pub(crate) fn expired(&self) -> bool {
        match self.clock {
            Some((now, start)) => now().saturating_sub(start) > self.limit_ms,
            None => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn x(text: &str) -> Word {
        Word::parse(text, Alphabet::Handle).unwrap()
    }

    #[test]
    fn relators_are_canonical() {
        let p = Presentation::new(Alphabet::Handle, 2, [x("x2 x1 x2^-1"), x("1"), x("x2 x1^-1 x2 x2")]).unwrap();
        assert_eq!(p.relators().len(), 2);
        assert_eq!(p.relators()[0].to_string(), "x1");
        assert_eq!(p.relators()[1].to_string(), "x1^-1 x2 x2 x2");
        assert_eq!(p.to_string(), "presentation { gens: x1 x2  rels: \"x1\", \"x1^-1 x2 x2 x2\" }");
    }

    #[test]
    fn rejects_foreign_letters() {
        assert_eq!(
            Presentation::new(Alphabet::Handle, 1, [x("x2")]),
            Err(PresentationError::UnknownGenerator { generator: 2 })
        );
        assert!(Presentation::with_generators(Alphabet::Handle, alloc::vec![2, 1], []).is_err());
    }

    #[test]
    fn free_product_shifts() {
        let p = Presentation::new(Alphabet::Handle, 1, [x("x1 x1")]).unwrap();
        let q = p.free_product(&p).unwrap();
        assert_eq!(q.to_string(), "presentation { gens: x1 x2  rels: \"x1 x1\", \"x2 x2\" }");
    }

    #[test]
    fn dedup_sees_inverses() {
        let p = Presentation::new(Alphabet::Handle, 2, [x("x1 x2"), x("x2^-1 x1^-1"), x("x2 x1")]).unwrap();
        assert_eq!(p.deduplicated().relators().len(), 1);
    }
}
