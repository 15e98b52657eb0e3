//! The surface group `S_g`, its word problem, and handlebody maps
//! `S_g → H_g`.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::presentation::{certify_free_of_rank, smith_normal_form, Budget, Certificate, IntegerMatrix, Presentation, Verdict};
use crate::stallings::SubgroupGraph;
use crate::word::{cyclic_core, invert_letters, reduce_letters, Alphabet, GeneratorMapping, Word, WordError};

/// `[a_1,b_1]…[a_g,b_g]`; the identity for `g = 0`.
pub fn surface_relator(genus: u32) -> Word {
    let letters = (1..=genus as i32).flat_map(|i| {
        let (a, b) = (2 * i - 1, 2 * i);
        [a, b, -a, -b]
    });
    Word::reduce(Alphabet::Surface, letters)
}

/// `S_g = ⟨a_1, b_1, …, a_g, b_g | [a_1,b_1]…[a_g,b_g]⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceGroup {
    genus: u32,
    relator: Word,
    /// All cyclic rotations of the relator and of its inverse.
    rotations: Vec<Vec<i32>>,
}

impl SurfaceGroup {
    pub fn new(genus: u32) -> SurfaceGroup {
        let relator = surface_relator(genus);
        let mut rotations = Vec::new();
        for base in [relator.letters().to_vec(), invert_letters(relator.letters())] {
            for s in 0..base.len() {
                rotations.push(base[s..].iter().chain(&base[..s]).copied().collect());
            }
        }
        SurfaceGroup { genus, relator, rotations }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn relator(&self) -> &Word {
        &self.relator
    }

    pub fn generator_count(&self) -> u32 {
        2 * self.genus
    }

    pub fn presentation(&self) -> Presentation {
        Presentation::new(Alphabet::Surface, self.generator_count(), [self.relator.clone()])
            .expect("relator uses the surface generators")
    }

    fn check(&self, u: &Word) -> Result<(), WordError> {
        if u.alphabet() != Alphabet::Surface {
            return Err(WordError::AlphabetMismatch { expected: Alphabet::Surface, found: u.alphabet() });
        }
        if u.max_generator() > self.generator_count() {
            return Err(WordError::IndexOutOfRange { generator: u.max_generator(), rank: self.generator_count() });
        }
        Ok(())
    }

    /// Decides whether `u` is the identity of `S_g`: Dehn's algorithm for
    /// `g ≥ 2`, exponent sums in `Z²` for `g = 1`.
    pub fn is_trivial(&self, u: &Word) -> Result<bool, WordError> {
        self.check(u)?;
        Ok(match self.genus {
            0 => true,
            1 => u.exponent_sum(1) == 0 && u.exponent_sum(2) == 0,
            _ => self.dehn_reduce(u.letters()).is_empty(),
        })
    }

    /// Repeatedly replaces a cyclic subword longer than half a relator
    /// rotation by the inverse of the rest of that rotation. The result is
    /// cyclically reduced and empty iff the input is trivial.
    pub fn dehn_reduce(&self, letters: &[i32]) -> Vec<i32> {
        let half = 2 * self.genus as usize;
        let mut w = cyclic_core(&reduce_letters(letters.iter().copied())).1.to_vec();
        'outer: loop {
            let n = w.len();
            for start in 0..n {
                for rot in &self.rotations {
                    let m = rot.iter().zip((0..n).map(|t| w[(start + t) % n])).take_while(|(a, b)| *a == b).count();
                    if m > half {
                        let rotated = (0..n).map(|t| w[(start + t) % n]).skip(m);
                        let complement = invert_letters(&rot[m..]);
                        let next = reduce_letters(complement.into_iter().chain(rotated));
                        w = cyclic_core(&next).1.to_vec();
                        continue 'outer;
                    }
                }
            }
            return w;
        }
    }
}

pub fn is_trivial_in_surface_group(genus: u32, u: &Word) -> Result<bool, WordError> {
    SurfaceGroup::new(genus).is_trivial(u)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapError {
    WrongImageCount { expected: usize, found: usize },
    ImageOutOfRange { generator: u32, genus: u32 },
    WrongCutCount { expected: usize, found: usize },
    CutOutOfRange { generator: u32, genus: u32 },
    Word(WordError),
}

impl fmt::Display for MapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapError::WrongImageCount { expected, found } => write!(f, "expected {expected} generator images, found {found}"),
            MapError::ImageOutOfRange { generator, genus } => {
                write!(f, "image uses x{generator} but the handlebody has genus {genus}")
            }
            MapError::WrongCutCount { expected, found } => write!(f, "expected {expected} cut words, found {found}"),
            MapError::CutOutOfRange { generator, genus } => {
                write!(f, "cut uses surface generator #{generator} beyond genus {genus}")
            }
            MapError::Word(e) => write!(f, "{e}"),
        }
    }
}

impl From<WordError> for MapError {
    fn from(e: WordError) -> Self {
        MapError::Word(e)
    }
}

/// One lower edge `S_g → H_g` of the cube, with an optional cut system
/// (words claimed to normally generate the kernel).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HandlebodyMap {
    genus: u32,
    images: GeneratorMapping,
    cuts: Option<Vec<Word>>,
}

impl HandlebodyMap {
    /// `images` lists the images of `a_1, b_1, …, a_g, b_g` in order. An
    /// empty cut list for genus 0 is normalized to `None`.
    pub fn new(genus: u32, images: Vec<Word>, cuts: Option<Vec<Word>>) -> Result<HandlebodyMap, MapError> {
        let expected = 2 * genus as usize;
        if images.len() != expected {
            return Err(MapError::WrongImageCount { expected, found: images.len() });
        }
        for w in &images {
            if w.max_generator() > genus {
                return Err(MapError::ImageOutOfRange { generator: w.max_generator(), genus });
            }
        }
        let images = GeneratorMapping::new(Alphabet::Surface, Alphabet::Handle, images)?;
        let cuts = match cuts {
            Some(c) if genus == 0 && c.is_empty() => None,
            Some(c) => {
                if c.len() != genus as usize {
                    return Err(MapError::WrongCutCount { expected: genus as usize, found: c.len() });
                }
                for w in &c {
                    if w.alphabet() != Alphabet::Surface {
                        return Err(WordError::AlphabetMismatch { expected: Alphabet::Surface, found: w.alphabet() }.into());
                    }
                    if w.max_generator() > 2 * genus {
                        return Err(MapError::CutOutOfRange { generator: w.max_generator(), genus });
                    }
                }
                Some(c)
            }
            None => None,
        };
        Ok(HandlebodyMap { genus, images, cuts })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn images(&self) -> &GeneratorMapping {
        &self.images
    }

    pub fn cuts(&self) -> Option<&[Word]> {
        self.cuts.as_deref()
    }

    pub fn apply(&self, u: &Word) -> Result<Word, WordError> {
        self.images.apply(u)
    }

    /// `2g × g` matrix of exponent sums of the generator images.
    pub fn abelianized_matrix(&self) -> IntegerMatrix {
        let g = self.genus as usize;
        let rows: Vec<Vec<i64>> =
            self.images.images().iter().map(|w| (1..=self.genus).map(|x| w.exponent_sum(x)).collect()).collect();
        IntegerMatrix::from_rows(&rows, g)
    }

    /// Juxtaposes two maps, shifting `other`'s indices past this one's.
    pub fn connected_sum(&self, other: &HandlebodyMap) -> HandlebodyMap {
        let shift = self.genus;
        let images = self
            .images
            .images()
            .iter()
            .cloned()
            .chain(other.images.images().iter().map(|w| w.shift_indices(shift)))
            .collect();
        let cuts = match (&self.cuts, &other.cuts) {
            _ if self.genus == 0 => other.cuts.clone(),
            _ if other.genus == 0 => self.cuts.clone(),
            (Some(a), Some(b)) => Some(a.iter().cloned().chain(b.iter().map(|w| w.shift_indices(shift))).collect()),
            _ => None,
        };
        HandlebodyMap::new(self.genus + other.genus, images, cuts).expect("sum of valid maps is valid")
    }
}

/// How much of a cut system's kernel claim is established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CutStatus {
    Absent,
    /// Some cut survives the map, or the quotient by the cuts is not free of
    /// rank g.
    Refuted,
    /// Cuts die and no obstruction was found, but freeness of the quotient
    /// was not established within budget.
    Consistent,
    /// The quotient by the cuts is free of rank g and maps onto `H_g`; free
    /// groups being Hopfian, the cuts normally generate the kernel exactly.
    ProvedExact,
}

impl CutStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CutStatus::Absent => "absent",
            CutStatus::Refuted => "refuted",
            CutStatus::Consistent => "consistent",
            CutStatus::ProvedExact => "proved exact",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapValidationReport {
    pub relator_killed: bool,
    pub surjective: bool,
    /// All invariant factors of the abelianized image matrix are 1.
    pub abelian_surjective: bool,
    pub cut_consistency: Vec<bool>,
    /// That `⟨a, b | R_g, cuts⟩` is free of rank g; present with cuts.
    pub kernel_certificate: Option<Certificate>,
    pub cut_status: CutStatus,
}

impl MapValidationReport {
    pub fn is_valid(&self) -> bool {
        self.relator_killed
            && self.surjective
            && self.abelian_surjective
            && self.cut_consistency.iter().all(|&c| c)
            && self.kernel_certificate.as_ref().is_none_or(|c| c.verdict != Verdict::Refuted)
    }

    pub fn verdict(&self) -> Verdict {
        if !self.is_valid() {
            Verdict::Refuted
        } else {
            self.kernel_certificate.as_ref().map_or(Verdict::Proved, |c| c.verdict)
        }
    }
}

pub fn validate_handlebody_map(m: &HandlebodyMap, budget: &Budget) -> MapValidationReport {
    let g = m.genus();
    let relator_killed = m.apply(&surface_relator(g)).expect("relator is over the surface alphabet").is_identity();
    let graph = SubgroupGraph::build(Alphabet::Handle, g, m.images().images()).expect("images range-checked on construction");
    let surjective = graph.is_whole_group();
    let snf = smith_normal_form(&m.abelianized_matrix());
    let diagonal = snf.d.diagonal();
    let abelian_surjective = diagonal.len() == g as usize && diagonal.iter().all(|d| *d == BigInt::one());

    let (cut_consistency, kernel_certificate, cut_status) = match m.cuts() {
        None => (Vec::new(), None, CutStatus::Absent),
        Some(cuts) => {
            let consistency: Vec<bool> =
                cuts.iter().map(|c| m.apply(c).expect("cuts range-checked on construction").is_identity()).collect();
            let quotient = Presentation::new(
                Alphabet::Surface,
                2 * g,
                core::iter::once(surface_relator(g)).chain(cuts.iter().cloned()),
            )
            .expect("cuts range-checked on construction");
            let cert = certify_free_of_rank(&quotient, g as usize, budget);
            let status = if !consistency.iter().all(|&c| c) || cert.verdict == Verdict::Refuted {
                CutStatus::Refuted
            } else if cert.verdict == Verdict::Proved && surjective {
                CutStatus::ProvedExact
            } else {
                CutStatus::Consistent
            };
            (consistency, Some(cert), status)
        }
    };
    MapValidationReport { relator_killed, surjective, abelian_surjective, cut_consistency, kernel_certificate, cut_status }
}
