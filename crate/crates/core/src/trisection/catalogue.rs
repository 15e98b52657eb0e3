//! Built-in trisections.

use alloc::vec::Vec;

use super::GroupTrisection;
use crate::presentation::Presentation;
use crate::surface::HandlebodyMap;
use crate::word::{Alphabet, Word};

pub const BUILTIN_NAMES: [&str; 5] = ["trivial00", "standard31", "s1xs3_11", "cp2_10", "cp2bar_10"];

fn map(genus: u32, images: &[&str], cuts: &[&str]) -> HandlebodyMap {
    let images = images.iter().map(|w| Word::parse(w, Alphabet::Handle).expect("catalogue word")).collect();
    let cuts: Vec<Word> = cuts.iter().map(|w| Word::parse(w, Alphabet::Surface).expect("catalogue word")).collect();
    HandlebodyMap::new(genus, images, Some(cuts)).expect("catalogue map")
}

/// The unique `(0,0)`-trisection of the trivial group.
pub fn trivial_00() -> GroupTrisection {
    let m = map(0, &[], &[]);
    GroupTrisection::new(0, 0, [m.clone(), m.clone(), m], Some(Presentation::trivial(Alphabet::Handle)))
        .expect("catalogue entry")
}

/// The standard trivial `(3,1)`-trisection, built from three genus-one
/// blocks. In block `m` every sector sends one of `a_m`, `b_m` to `x_m` and
/// cuts the other; sector `m` is the odd one out.
pub fn standard_trivial_31() -> GroupTrisection {
    let f1 = map(3, &["1", "x1", "x2", "1", "x3", "1"], &["a1", "b2", "b3"]);
    let f2 = map(3, &["x1", "1", "1", "x2", "x3", "1"], &["b1", "a2", "b3"]);
    let f3 = map(3, &["x1", "1", "x2", "1", "1", "x3"], &["b1", "b2", "a3"]);
    GroupTrisection::new(3, 1, [f1, f2, f3], Some(Presentation::trivial(Alphabet::Handle))).expect("catalogue entry")
}

fn s1xs3_11() -> GroupTrisection {
    let m = map(1, &["x1", "1"], &["b1"]);
    GroupTrisection::new(1, 1, [m.clone(), m.clone(), m], Some(Presentation::free(Alphabet::Handle, 1)))
        .expect("catalogue entry")
}

fn cp2_maps() -> [HandlebodyMap; 3] {
    [map(1, &["x1", "1"], &["b1"]), map(1, &["1", "x1"], &["a1"]), map(1, &["x1", "x1^-1"], &["a1 b1"])]
}

fn cp2_10() -> GroupTrisection {
    GroupTrisection::new(1, 0, cp2_maps(), Some(Presentation::trivial(Alphabet::Handle))).expect("catalogue entry")
}

fn cp2bar_10() -> GroupTrisection {
    let [f1, f2, f3] = cp2_maps();
    GroupTrisection::new(1, 0, [f1, f3, f2], Some(Presentation::trivial(Alphabet::Handle))).expect("catalogue entry")
}

/// Looks up an entry of [`BUILTIN_NAMES`].
pub fn builtin(name: &str) -> Option<GroupTrisection> {
    Some(match name {
        "trivial00" => trivial_00(),
        "standard31" => standard_trivial_31(),
        "s1xs3_11" => s1xs3_11(),
        "cp2_10" => cp2_10(),
        "cp2bar_10" => cp2bar_10(),
        _ => return None,
    })
}
