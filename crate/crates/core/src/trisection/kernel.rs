//! Search for surface words killed by all three handlebody maps.

use alloc::vec::Vec;
use core::cmp::Ordering;

use super::GroupTrisection;
use crate::surface::SurfaceGroup;
use crate::word::{compare_letters, invert_letters, Alphabet, Word};

/// True when `w` is the least of its rotations and those of its inverse.
fn is_canonical(w: &[i32]) -> bool {
    let n = w.len();
    let inv = invert_letters(w);
    (0..n).all(|s| {
        let rot = w[s..].iter().chain(&w[..s]).copied().collect::<Vec<_>>();
        let irot = inv[s..].iter().chain(&inv[..s]).copied().collect::<Vec<_>>();
        compare_letters(w, &rot) != Ordering::Greater && compare_letters(w, &irot) != Ordering::Greater
    })
}

/// Nontrivial elements of `S_g` in the kernel of every `f_i`, one per
/// conjugacy-and-inversion class, among cyclically reduced words of length
/// at most `max_length`. Ordered by length, then lexicographically with
/// `a1 < a1^-1 < b1 < b1^-1 < a2 < …`.
pub fn search_common_kernel(t: &GroupTrisection, max_length: usize) -> Vec<Word> {
    let g = t.genus() as i32;
    let surface = SurfaceGroup::new(t.genus());
    // letters in lexicographic order
    let letters: Vec<i32> = (1..=2 * g).flat_map(|x| [x, -x]).collect();
    let mut found = Vec::new();
    let mut word = Vec::with_capacity(max_length);
    for len in 1..=max_length {
        extend(&letters, len, &mut word, &mut |w| {
            if w[0] == -w[len - 1] || !is_canonical(w) {
                return;
            }
            let u = Word::reduce(Alphabet::Surface, w.iter().copied());
            let killed = t.maps().iter().all(|m| m.apply(&u).expect("surface word").is_identity());
            if killed && !surface.is_trivial(&u).expect("surface word") {
                found.push(u);
            }
        });
    }
    found
}

/// Visits all freely reduced words of length `len` in lexicographic order.
fn extend(letters: &[i32], len: usize, word: &mut Vec<i32>, visit: &mut dyn FnMut(&[i32])) {
    if word.len() == len {
        visit(word);
        return;
    }
    for &l in letters {
        if word.last() == Some(&-l) {
            continue;
        }
        word.push(l);
        extend(letters, len, word, visit);
        word.pop();
    }
}
