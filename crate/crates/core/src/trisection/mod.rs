//! The trisection cube, stored by its three lower edges `f_1, f_2, f_3`.

mod catalogue;
mod fingerprint;
mod kernel;
mod verify;

use alloc::vec::Vec;
use core::fmt;

use crate::presentation::Presentation;
use crate::surface::HandlebodyMap;
use crate::word::{Alphabet, Word};

pub use catalogue::{builtin, standard_trivial_31, trivial_00, BUILTIN_NAMES};
pub use fingerprint::{fingerprint, Fingerprint};
pub use kernel::search_common_kernel;
pub use verify::{
    verify, FaceReport, RedundancyReport, TargetCheck, TargetReport, VerificationReport,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TrisectionError {
    RankExceedsGenus { genus: u32, k: u32 },
    GenusMismatch { sector: usize, expected: u32, found: u32 },
    TargetAlphabet(Alphabet),
    SameSector(usize),
    NoSuchSector(usize),
}

impl fmt::Display for TrisectionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TrisectionError::RankExceedsGenus { genus, k } => write!(f, "k = {k} exceeds genus {genus}"),
            TrisectionError::GenusMismatch { sector, expected, found } => {
                write!(f, "sector {sector} has genus {found}, expected {expected}")
            }
            TrisectionError::TargetAlphabet(a) => write!(f, "target must use x generators, found {a}"),
            TrisectionError::SameSector(i) => write!(f, "pushout needs two distinct sectors, got {i} twice"),
            TrisectionError::NoSuchSector(i) => write!(f, "sector {i} is not one of 1, 2, 3"),
        }
    }
}

/// A `(g, k)`-trisection given by three handlebody maps in cyclic order and
/// an optional claimed presentation of the group at the sink.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTrisection {
    genus: u32,
    k: u32,
    maps: [HandlebodyMap; 3],
    target: Option<Presentation>,
}

impl GroupTrisection {
    pub fn new(
        genus: u32,
        k: u32,
        maps: [HandlebodyMap; 3],
        target: Option<Presentation>,
    ) -> Result<GroupTrisection, TrisectionError> {
        if k > genus {
            return Err(TrisectionError::RankExceedsGenus { genus, k });
        }
        for (s, m) in maps.iter().enumerate() {
            if m.genus() != genus {
                return Err(TrisectionError::GenusMismatch { sector: s + 1, expected: genus, found: m.genus() });
            }
        }
        if let Some(t) = &target {
            if t.alphabet() != Alphabet::Handle {
                return Err(TrisectionError::TargetAlphabet(t.alphabet()));
            }
        }
        Ok(GroupTrisection { genus, k, maps, target })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn maps(&self) -> &[HandlebodyMap; 3] {
        &self.maps
    }

    /// Sector `1..=3`.
    pub fn map(&self, sector: usize) -> Result<&HandlebodyMap, TrisectionError> {
        sector.checked_sub(1).and_then(|s| self.maps.get(s)).ok_or(TrisectionError::NoSuchSector(sector))
    }

    pub fn target(&self) -> Option<&Presentation> {
        self.target.as_ref()
    }

    pub fn with_target(self, target: Option<Presentation>) -> Result<GroupTrisection, TrisectionError> {
        GroupTrisection::new(self.genus, self.k, self.maps, target)
    }

    pub fn with_map(self, sector: usize, map: HandlebodyMap) -> Result<GroupTrisection, TrisectionError> {
        let mut maps = self.maps;
        *sector.checked_sub(1).and_then(|s| maps.get_mut(s)).ok_or(TrisectionError::NoSuchSector(sector))? = map;
        GroupTrisection::new(self.genus, self.k, maps, self.target)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PushoutForm {
    /// `⟨x_1..x_g | f_i(c)⟩` over the cuts `c` of the other sector(s).
    Quotient,
    /// Generators of the other sector(s) kept as extra blocks of `g`
    /// generators, glued by `f_i(s) = f_j(s)` for every surface generator.
    Symmetric,
}

/// A pushout presentation together with the number of relators that
/// reduced to the identity and were dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pushout {
    pub presentation: Presentation,
    pub form: PushoutForm,
    pub discarded_empty: usize,
    pub duplicates_removed: usize,
}

/// Accumulates pushout relators on blocks of `g` handle generators.
struct PushoutBuilder<'a> {
    base: &'a HandlebodyMap,
    genus: u32,
    blocks: u32,
    relators: Vec<Word>,
    discarded_empty: usize,
    form: PushoutForm,
}

impl<'a> PushoutBuilder<'a> {
    fn new(base: &'a HandlebodyMap) -> Self {
        PushoutBuilder {
            base,
            genus: base.genus(),
            blocks: 1,
            relators: Vec::new(),
            discarded_empty: 0,
            form: PushoutForm::Quotient,
        }
    }

    fn push(&mut self, w: Word) {
        if w.is_identity() {
            self.discarded_empty += 1;
        } else {
            self.relators.push(w);
        }
    }

    fn glue(&mut self, other: &HandlebodyMap) {
        match other.cuts() {
            Some(cuts) => {
                for c in cuts {
                    self.push(self.base.apply(c).expect("cut over the surface alphabet"));
                }
            }
            None => {
                let shift = self.blocks * self.genus;
                self.blocks += 1;
                self.form = PushoutForm::Symmetric;
                for (lhs, rhs) in self.base.images().images().iter().zip(other.images().images()) {
                    let rel = lhs.concat(&rhs.shift_indices(shift).inverse()).expect("both over x");
                    self.push(rel);
                }
            }
        }
    }

    fn finish(self, dedup: bool) -> Pushout {
        let p = Presentation::new(Alphabet::Handle, self.blocks * self.genus, self.relators)
            .expect("relators lie in the generator blocks");
        let before = p.relators().len();
        let presentation = if dedup { p.deduplicated() } else { p };
        Pushout {
            duplicates_removed: before - presentation.relators().len(),
            presentation,
            form: self.form,
            discarded_empty: self.discarded_empty,
        }
    }
}

/// `H_i *_{S_g} H_j`, presented on sector `i`'s generators when sector `j`
/// has cuts and in symmetric form otherwise.
pub fn pairwise_pushout(t: &GroupTrisection, i: usize, j: usize) -> Result<Pushout, TrisectionError> {
    if i == j {
        return Err(TrisectionError::SameSector(i));
    }
    let mut b = PushoutBuilder::new(t.map(i)?);
    b.glue(t.map(j)?);
    Ok(b.finish(false))
}

/// The group at the sink, presented on sector 1's generators: sector 2 and
/// then sector 3 contribute their cut images (or symmetric blocks), and
/// repeated relators are removed.
pub fn triple_pushout(t: &GroupTrisection) -> Pushout {
    let mut b = PushoutBuilder::new(&t.maps[0]);
    b.glue(&t.maps[1]);
    b.glue(&t.maps[2]);
    b.finish(true)
}

/// All three handle groups glued along `S_g` with no cuts used:
/// `⟨x, y, z | f_1(s) = f_2(s), f_1(s) = f_3(s)⟩` on `3g` generators.
pub fn symmetric_triple_pushout(t: &GroupTrisection) -> Pushout {
    let g = t.genus;
    let mut relators = Vec::new();
    let mut discarded_empty = 0;
    for (block, other) in [(1, &t.maps[1]), (2, &t.maps[2])] {
        for (lhs, rhs) in t.maps[0].images().images().iter().zip(other.images().images()) {
            let rel = lhs.concat(&rhs.shift_indices(block * g).inverse()).expect("both over x");
            if rel.is_identity() {
                discarded_empty += 1;
            } else {
                relators.push(rel);
            }
        }
    }
    let presentation = Presentation::new(Alphabet::Handle, 3 * g, relators).expect("relators lie in the blocks");
    Pushout { presentation, form: PushoutForm::Symmetric, discarded_empty, duplicates_removed: 0 }
}

/// Juxtaposes the cubes sector by sector with indices of `b` shifted past
/// those of `a`. Targets combine by free product when both are present.
pub fn connected_sum(a: &GroupTrisection, b: &GroupTrisection) -> GroupTrisection {
    let maps = [0, 1, 2].map(|s| a.maps[s].connected_sum(&b.maps[s]));
    let target = match (&a.target, &b.target) {
        (Some(p), Some(q)) => Some(p.free_product(q).expect("targets share the x alphabet")),
        _ => None,
    };
    GroupTrisection::new(a.genus + b.genus, a.k + b.k, maps, target).expect("sum of valid trisections")
}

/// Connected sum with the standard trivial `(3,1)`-trisection.
pub fn stabilize(t: &GroupTrisection) -> GroupTrisection {
    connected_sum(t, &standard_trivial_31())
}

/// `2 + g - 3k`, by inclusion–exclusion over the three sectors, their
/// pairwise intersections and the central surface.
pub fn euler_characteristic(t: &GroupTrisection) -> i64 {
    2 + t.genus as i64 - 3 * t.k as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn standard_pushouts() {
        let t = standard_trivial_31();
        let p = pairwise_pushout(&t, 1, 2).unwrap();
        assert_eq!(p.presentation.to_string(), "presentation { gens: x1 x2 x3  rels: \"x1\", \"x2\" }");
        assert_eq!(p.discarded_empty, 1);
        assert_eq!(p.form, PushoutForm::Quotient);

        let tp = triple_pushout(&t);
        assert_eq!(tp.presentation.to_string(), "presentation { gens: x1 x2 x3  rels: \"x1\", \"x2\", \"x3\" }");
        assert_eq!(tp.duplicates_removed, 1);
        assert_eq!(pairwise_pushout(&t, 2, 2), Err(TrisectionError::SameSector(2)));
        assert_eq!(pairwise_pushout(&t, 0, 2), Err(TrisectionError::NoSuchSector(0)));
    }

    #[test]
    fn degenerate_pushouts() {
        let t = trivial_00();
        assert_eq!(pairwise_pushout(&t, 1, 2).unwrap().presentation, Presentation::trivial(Alphabet::Handle));
        assert_eq!(triple_pushout(&t).presentation, Presentation::trivial(Alphabet::Handle));
        let s = builtin("s1xs3_11").unwrap();
        assert_eq!(pairwise_pushout(&s, 1, 2).unwrap().presentation, Presentation::free(Alphabet::Handle, 1));
        assert_eq!(triple_pushout(&s).presentation, Presentation::free(Alphabet::Handle, 1));
    }

    #[test]
    fn symmetric_form_without_cuts() {
        let t = builtin("cp2_10").unwrap();
        let maps = t.maps().clone().map(|m| HandlebodyMap::new(1, m.images().images().to_vec(), None).unwrap());
        let bare = GroupTrisection::new(1, 0, maps, None).unwrap();
        let p = pairwise_pushout(&bare, 1, 2).unwrap();
        assert_eq!(p.form, PushoutForm::Symmetric);
        assert_eq!(p.presentation.generator_count(), 2);
        // a1: x1 = 1, b1: 1 = x2
        assert_eq!(p.presentation.to_string(), "presentation { gens: x1 x2  rels: \"x1\", \"x2^-1\" }");
        assert_eq!(triple_pushout(&bare).presentation.generator_count(), 3);
    }

    #[test]
    fn construction_checks() {
        let t = standard_trivial_31();
        let m = t.maps()[0].clone();
        let small = trivial_00().maps()[0].clone();
        assert_eq!(
            GroupTrisection::new(0, 1, [small.clone(), small.clone(), small], None),
            Err(TrisectionError::RankExceedsGenus { genus: 0, k: 1 })
        );
        let s = builtin("s1xs3_11").unwrap().maps()[0].clone();
        assert_eq!(
            GroupTrisection::new(3, 1, [m.clone(), s, m], None),
            Err(TrisectionError::GenusMismatch { sector: 2, expected: 3, found: 1 })
        );
    }

    #[test]
    fn sums_and_stabilization() {
        assert_eq!(connected_sum(&trivial_00(), &standard_trivial_31()), standard_trivial_31());
        assert_eq!(connected_sum(&standard_trivial_31(), &trivial_00()), standard_trivial_31());
        assert_eq!(stabilize(&trivial_00()), standard_trivial_31());
        let s = builtin("s1xs3_11").unwrap();
        let st = stabilize(&s);
        assert_eq!((st.genus(), st.k()), (4, 2));
        assert_eq!(st.target(), Some(&Presentation::free(Alphabet::Handle, 1)));
        let two = connected_sum(&s, &s);
        assert_eq!(two.maps()[0].images().images()[2].to_string(), "x2");
        assert_eq!(two.maps()[0].cuts().unwrap()[1].to_string(), "b2");
    }

    #[test]
    fn euler() {
        assert_eq!(euler_characteristic(&trivial_00()), 2);
        assert_eq!(euler_characteristic(&standard_trivial_31()), 2);
        assert_eq!(euler_characteristic(&builtin("cp2_10").unwrap()), 3);
        assert_eq!(euler_characteristic(&builtin("s1xs3_11").unwrap()), 0);
    }
}
