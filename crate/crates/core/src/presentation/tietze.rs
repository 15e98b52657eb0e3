//! Greedy Tietze simplification with a replayable transcript.
//!
//! Empty relators never survive a move: every relator is re-canonicalized
//! after each step and dropped if it reduced to the identity, so deletion of
//! trivial relators happens implicitly as part of the move that produced them.

use alloc::vec::Vec;
use core::fmt;

use super::{canonical_relator, canonical_relator_up_to_inverse, Budget, Presentation};
use crate::word::{invert_letters, reduce_letters, Word};

/// One recorded elementary move. Relator indices refer to the presentation
/// the move is applied to.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TietzeMove {
    /// Remove `generator`, which occurs exactly once in relator `relator`,
    /// by solving that relator for it and substituting everywhere.
    EliminateGenerator { generator: u32, relator: usize },
    /// Remove relator `relator`, equal (up to rotation and inversion) to
    /// the earlier relator `duplicate_of`.
    DeleteDuplicate { relator: usize, duplicate_of: usize },
    /// Replace relator `target` by the reduced product of its rotation by
    /// `target_shift` with the rotation of relator `source` by
    /// `source_shift` (inverted first when `inverse` is set).
    Substitute { target: usize, source: usize, target_shift: usize, source_shift: usize, inverse: bool },
}

impl fmt::Display for TietzeMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TietzeMove::EliminateGenerator { generator, relator } => {
                write!(f, "eliminate generator #{generator} using relator {relator}")
            }
            TietzeMove::DeleteDuplicate { relator, duplicate_of } => {
                write!(f, "delete relator {relator} (duplicate of {duplicate_of})")
            }
            TietzeMove::Substitute { target, source, target_shift, source_shift, inverse } => write!(
                f,
                "replace relator {target}@{target_shift} by product with relator {source}@{source_shift}{}",
                if *inverse { " inverted" } else { "" }
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TietzeError {
    RelatorOutOfRange { relator: usize },
    NotEliminable { generator: u32, relator: usize },
    NotDuplicate { relator: usize, duplicate_of: usize },
}

impl fmt::Display for TietzeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TietzeError::RelatorOutOfRange { relator } => write!(f, "relator index {relator} out of range"),
            TietzeError::NotEliminable { generator, relator } => {
                write!(f, "generator #{generator} does not occur exactly once in relator {relator}")
            }
            TietzeError::NotDuplicate { relator, duplicate_of } => {
                write!(f, "relator {relator} is not a duplicate of relator {duplicate_of}")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct TietzeOutcome {
    pub presentation: Presentation,
    pub transcript: Vec<TietzeMove>,
    /// Image of each original generator (in input order) as a word in the
    /// surviving generators.
    pub images: Vec<Word>,
    /// Budget ran out before a fixed point was reached.
    pub exhausted: bool,
    pub passes: u64,
}

impl Presentation {
    /// Applies one move; used both by the simplifier and by replay.
    pub fn apply_move(&self, mv: &TietzeMove) -> Result<Presentation, TietzeError> {
        self.apply_tracked(mv, &mut Vec::new())
    }

    fn apply_tracked(&self, mv: &TietzeMove, images: &mut [Word]) -> Result<Presentation, TietzeError> {
        let alphabet = self.alphabet();
        let rel = |i: usize| self.relators().get(i).ok_or(TietzeError::RelatorOutOfRange { relator: i });
        match *mv {
            TietzeMove::EliminateGenerator { generator, relator } => {
                let r = rel(relator)?;
                let value = solve_for(r.letters(), generator)
                    .ok_or(TietzeError::NotEliminable { generator, relator })?;
                let generators = self.generators().iter().copied().filter(|&g| g != generator).collect();
                let mut out = Presentation::from_parts_unchecked(alphabet, generators, Vec::new());
                for (i, other) in self.relators().iter().enumerate() {
                    if i != relator {
                        out.push_relator(&substitute(other.letters(), generator, &value));
                    }
                }
                for img in images.iter_mut() {
                    *img = Word::reduce(alphabet, substitute(img.letters(), generator, &value));
                }
                Ok(out)
            }
            TietzeMove::DeleteDuplicate { relator, duplicate_of } => {
                let r = rel(relator)?;
                let d = rel(duplicate_of)?;
                if duplicate_of >= relator
                    || canonical_relator_up_to_inverse(r.letters()) != canonical_relator_up_to_inverse(d.letters())
                {
                    return Err(TietzeError::NotDuplicate { relator, duplicate_of });
                }
                let mut relators = self.relators().to_vec();
                relators.remove(relator);
                Ok(Presentation::from_parts_unchecked(alphabet, self.generators().to_vec(), relators))
            }
            TietzeMove::Substitute { target, source, target_shift, source_shift, inverse } => {
                let r = rel(target)?;
                let s = rel(source)?;
                if target == source {
                    return Err(TietzeError::RelatorOutOfRange { relator: source });
                }
                let product = substituted_relator(r.letters(), s.letters(), target_shift, source_shift, inverse);
                let mut out = Presentation::from_parts_unchecked(alphabet, self.generators().to_vec(), Vec::new());
                for (i, other) in self.relators().iter().enumerate() {
                    if i == target {
                        out.push_relator(&product);
                    } else {
                        out.push_relator(other.letters());
                    }
                }
                Ok(out)
            }
        }
    }
}

fn rotated(letters: &[i32], shift: usize) -> impl Iterator<Item = i32> + '_ {
    let s = if letters.is_empty() { 0 } else { shift % letters.len() };
    letters[s..].iter().chain(letters[..s].iter()).copied()
}

fn substituted_relator(r: &[i32], s: &[i32], r_shift: usize, s_shift: usize, inverse: bool) -> Vec<i32> {
    let s_rot: Vec<i32> = rotated(s, s_shift).collect();
    let s_rot = if inverse { invert_letters(&s_rot) } else { s_rot };
    canonical_relator(&reduce_letters(rotated(r, r_shift).chain(s_rot)))
}

/// Solves the cyclic relator `r` (containing `generator` exactly once) for
/// that generator.
fn solve_for(r: &[i32], generator: u32) -> Option<Vec<i32>> {
    let mut positions = r.iter().enumerate().filter(|(_, l)| l.unsigned_abs() == generator);
    let (pos, &letter) = positions.next()?;
    if positions.next().is_some() {
        return None;
    }
    // r ~ letter · rest, so letter = rest⁻¹
    let rest: Vec<i32> = r[pos + 1..].iter().chain(r[..pos].iter()).copied().collect();
    Some(if letter > 0 { invert_letters(&rest) } else { rest })
}

fn substitute(letters: &[i32], generator: u32, value: &[i32]) -> Vec<i32> {
    let mut out = Vec::with_capacity(letters.len());
    for &l in letters {
        if l.unsigned_abs() == generator {
            if l > 0 {
                out.extend_from_slice(value);
            } else {
                out.extend(value.iter().rev().map(|&v| -v));
            }
        } else {
            out.push(l);
        }
    }
    reduce_letters(out)
}

fn substituted_length(letters: &[i32], generator: u32, value: &[i32]) -> usize {
    canonical_relator(&substitute(letters, generator, value)).len()
}

/// Greedy descent on total relator length. Preference order: generator
/// elimination (least resulting length, then lowest generator, then lowest
/// relator), duplicate deletion, then the most shortening substitution.
pub fn tietze_simplify(p: &Presentation, budget: &Budget) -> TietzeOutcome {
    let deadline = budget.deadline();
    let alphabet = p.alphabet();
    let mut current = p.clone();
    let mut transcript = Vec::new();
    let mut images: Vec<Word> = p.generators().iter().map(|&g| Word::generator(alphabet, g)).collect();
    let mut passes = 0u64;
    let mut exhausted = false;

    loop {
        if passes >= budget.max_tietze_passes || deadline.expired() {
            exhausted = true;
            break;
        }
        passes += 1;
        let Some(mv) = next_move(&current, budget.max_relator_length) else {
            break;
        };
        current = current.apply_tracked(&mv, &mut images).expect("simplifier proposes valid moves");
        transcript.push(mv);
    }
    // a fixed point reached on the last allowed pass is not exhaustion
    if exhausted && next_move(&current, budget.max_relator_length).is_none() {
        exhausted = false;
    }
    TietzeOutcome { presentation: current, transcript, images, exhausted, passes }
}

fn next_move(p: &Presentation, cap: usize) -> Option<TietzeMove> {
    eliminate_candidate(p, cap)
        .or_else(|| duplicate_candidate(p))
        .or_else(|| substitution_candidate(p))
}

fn eliminate_candidate(p: &Presentation, cap: usize) -> Option<TietzeMove> {
    let rels = p.relators();
    let total = p.total_length();
    let mut best: Option<(usize, u32, usize)> = None;
    for &g in p.generators() {
        for (ri, r) in rels.iter().enumerate() {
            if r.occurrences(g) != 1 {
                continue;
            }
            let value = solve_for(r.letters(), g).expect("single occurrence");
            let mut new_total = total - r.len();
            for (oi, other) in rels.iter().enumerate() {
                if oi != ri && other.occurrences(g) > 0 {
                    new_total = new_total - other.len() + substituted_length(other.letters(), g, &value);
                }
            }
            if new_total > cap {
                continue;
            }
            if best.is_none_or(|(t, _, _)| new_total < t) {
                best = Some((new_total, g, ri));
            }
        }
    }
    best.map(|(_, generator, relator)| TietzeMove::EliminateGenerator { generator, relator })
}

fn duplicate_candidate(p: &Presentation) -> Option<TietzeMove> {
    let keys: Vec<Vec<i32>> = p.relators().iter().map(|r| canonical_relator_up_to_inverse(r.letters())).collect();
    for j in 1..keys.len() {
        if let Some(i) = (0..j).find(|&i| keys[i] == keys[j]) {
            return Some(TietzeMove::DeleteDuplicate { relator: j, duplicate_of: i });
        }
    }
    None
}

fn substitution_candidate(p: &Presentation) -> Option<TietzeMove> {
    let rels = p.relators();
    let mut best: Option<(usize, TietzeMove)> = None;
    for (ti, r) in rels.iter().enumerate() {
        for (si, s) in rels.iter().enumerate() {
            // a source more than twice as long cannot shorten the target
            if si == ti || s.len() > r.len() + r.len() {
                continue;
            }
            for inverse in [true, false] {
                for s_shift in 0..s.len() {
                    for t_shift in 0..r.len() {
                        let new_len =
                            substituted_relator(r.letters(), s.letters(), t_shift, s_shift, inverse).len();
                        if new_len < r.len() && best.as_ref().is_none_or(|(gain, _)| r.len() - new_len > *gain) {
                            best = Some((
                                r.len() - new_len,
                                TietzeMove::Substitute {
                                    target: ti,
                                    source: si,
                                    target_shift: t_shift,
                                    source_shift: s_shift,
                                    inverse,
                                },
                            ));
                        }
                    }
                }
            }
        }
    }
    best.map(|(_, mv)| mv)
}

/// Replays a transcript against `p`.
pub fn replay(p: &Presentation, transcript: &[TietzeMove]) -> Result<Presentation, TietzeError> {
    transcript.iter().try_fold(p.clone(), |acc, mv| acc.apply_move(mv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::abelianization;
    use crate::word::Alphabet;
    use alloc::string::ToString;

    fn x(text: &str) -> Word {
        Word::parse(text, Alphabet::Handle).unwrap()
    }

    fn pres(n: u32, rels: &[&str]) -> Presentation {
        Presentation::new(Alphabet::Handle, n, rels.iter().map(|r| x(r))).unwrap()
    }

    #[test]
    fn eliminates_two_generators() {
        let p = pres(3, &["x1", "x2"]);
        let out = tietze_simplify(&p, &Budget::default());
        assert_eq!(out.presentation.to_string(), "presentation { gens: x3  rels: }");
        assert_eq!(out.transcript.len(), 2);
        assert!(!out.exhausted);
        assert_eq!(out.images.iter().map(|w| w.to_string()).collect::<Vec<_>>(), ["1", "1", "x3"]);
        assert_eq!(abelianization(&out.presentation), abelianization(&p));
        assert_eq!(replay(&p, &out.transcript).unwrap(), out.presentation);
    }

    #[test]
    fn free_group_is_fixed_point() {
        let p = pres(1, &[]);
        let out = tietze_simplify(&p, &Budget::default());
        assert_eq!(out.presentation, p);
        assert!(out.transcript.is_empty());
    }

    #[test]
    fn one_elimination_prefers_lowest_generator() {
        let out = tietze_simplify(&pres(2, &["x1 x2^-1"]), &Budget::default());
        assert_eq!(out.presentation.to_string(), "presentation { gens: x2  rels: }");
        assert_eq!(out.images[0].to_string(), "x2");
    }

    #[test]
    fn substitution_shortens() {
        // x1^2 x2^3 and x1^2 x2^2: substitution leaves x2
        let p = pres(2, &["x1 x1 x2 x2 x2", "x1 x1 x2 x2"]);
        let out = tietze_simplify(&p, &Budget::default());
        assert_eq!(abelianization(&out.presentation), abelianization(&p));
        assert!(out.presentation.total_length() < p.total_length());
        assert_eq!(replay(&p, &out.transcript).unwrap(), out.presentation);
    }

    #[test]
    fn replay_rejects_bogus_moves() {
        let p = pres(2, &["x1 x1"]);
        assert_eq!(
            p.apply_move(&TietzeMove::EliminateGenerator { generator: 1, relator: 0 }),
            Err(TietzeError::NotEliminable { generator: 1, relator: 0 })
        );
        assert!(p.apply_move(&TietzeMove::DeleteDuplicate { relator: 3, duplicate_of: 0 }).is_err());
    }

    #[test]
    fn pass_budget_is_reported() {
        let p = pres(3, &["x1", "x2"]);
        let budget = Budget { max_tietze_passes: 1, ..Budget::default() };
        let out = tietze_simplify(&p, &budget);
        assert!(out.exhausted);
        assert_eq!(out.transcript.len(), 1);
    }
}
