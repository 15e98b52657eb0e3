//! Auditable verdicts on "free of rank k" and "trivial".

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{
    abelianization, builtin_groups, count_homomorphisms, replay, tietze_simplify, todd_coxeter_index,
    AbelianInvariants, Budget, CosetOutcome, HomCount, Presentation, TietzeMove,
};
use crate::word::{Alphabet, Word};
use num_bigint::BigInt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Proved,
    Inconclusive,
    Refuted,
}

impl Verdict {
    /// Refuted dominates Inconclusive, which dominates Proved.
    pub fn worst(self, other: Verdict) -> Verdict {
        self.max(other)
    }

    pub fn all(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        verdicts.into_iter().fold(Verdict::Proved, Verdict::worst)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Proved => "Proved",
            Verdict::Refuted => "Refuted",
            Verdict::Inconclusive => "Inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Recomputable reason a group property fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    AbelianRankMismatch { expected: usize, found: usize },
    Torsion(Vec<BigInt>),
    NontrivialAbelianization(AbelianInvariants),
    /// Coset enumeration over the trivial subgroup closed with this many
    /// cosets, i.e. the group has this order.
    CosetIndex(usize),
    /// A nontrivial homomorphism into a built-in finite group exists.
    FiniteQuotient { group: String, homomorphisms: u128 },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::AbelianRankMismatch { expected, found } => {
                write!(f, "abelian rank {found} ≠ {expected}")
            }
            Obstruction::Torsion(t) => {
                f.write_str("torsion present [")?;
                for (i, d) in t.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{d}")?;
                }
                f.write_str("]")
            }
            Obstruction::NontrivialAbelianization(ab) => write!(f, "abelianization {ab} is nontrivial"),
            Obstruction::CosetIndex(n) => write!(f, "coset enumeration closed with {n} cosets"),
            Obstruction::FiniteQuotient { group, homomorphisms } => {
                write!(f, "{homomorphisms} homomorphisms into {group} (more than the trivial one)")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// Tietze transcript from the input to `result`. For freeness proofs
    /// `images` sends each input generator to a word in `z1..zk`.
    Tietze { transcript: Vec<TietzeMove>, result: Presentation, images: Vec<Word> },
    /// Coset enumeration over the trivial subgroup closed with one coset.
    CosetEnumeration { cosets: usize },
    Obstruction(Obstruction),
    /// Budget ran out; the partially simplified presentation is attached.
    Exhausted { tietze_passes: u64, remaining: Presentation, coset_overflow: bool },
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evidence::Tietze { transcript, result, .. } => {
                write!(f, "Tietze transcript of {} moves reaching {result}", transcript.len())
            }
            Evidence::CosetEnumeration { cosets } => write!(f, "coset enumeration closed with {cosets} coset(s)"),
            Evidence::Obstruction(o) => write!(f, "obstruction: {o}"),
            Evidence::Exhausted { tietze_passes, remaining, coset_overflow } => write!(
                f,
                "budget exhausted after {tietze_passes} Tietze passes{}; best presentation {remaining}",
                if *coset_overflow { ", coset enumeration overflowed" } else { "" }
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub verdict: Verdict,
    pub evidence: Vec<Evidence>,
}

impl Certificate {
    fn refuted(o: Obstruction) -> Certificate {
        Certificate { verdict: Verdict::Refuted, evidence: alloc::vec![Evidence::Obstruction(o)] }
    }

    /// Re-derives every piece of evidence from `input`: transcripts must
    /// replay to their recorded result and obstructions must recompute.
    pub fn recheck(&self, input: &Presentation, budget: &Budget) -> bool {
        self.evidence.iter().all(|e| match e {
            Evidence::Tietze { transcript, result, .. } => replay(input, transcript).as_ref() == Ok(result),
            Evidence::CosetEnumeration { cosets } => {
                todd_coxeter_index(input, &[], budget) == Ok(CosetOutcome::Index(*cosets))
            }
            Evidence::Obstruction(o) => match o {
                Obstruction::AbelianRankMismatch { found, .. } => abelianization(input).free_rank == *found,
                Obstruction::Torsion(t) => abelianization(input).torsion == *t,
                Obstruction::NontrivialAbelianization(ab) => abelianization(input) == *ab,
                Obstruction::CosetIndex(n) => todd_coxeter_index(input, &[], budget) == Ok(CosetOutcome::Index(*n)),
                Obstruction::FiniteQuotient { group, homomorphisms } => builtin_groups()
                    .iter()
                    .find(|q| q.name() == group)
                    .is_some_and(|q| count_homomorphisms(input, q, budget) == HomCount::Exact(*homomorphisms)),
            },
            Evidence::Exhausted { .. } => true,
        })
    }
}

/// Certifies that `p` presents the free group of rank `k`.
pub fn certify_free_of_rank(p: &Presentation, k: usize, budget: &Budget) -> Certificate {
    let ab = abelianization(p);
    if !ab.torsion.is_empty() {
        return Certificate::refuted(Obstruction::Torsion(ab.torsion));
    }
    if ab.free_rank != k {
        return Certificate::refuted(Obstruction::AbelianRankMismatch { expected: k, found: ab.free_rank });
    }
    let out = tietze_simplify(p, budget);
    let result = &out.presentation;
    if result.generator_count() == k && result.relators().is_empty() {
        let survivors = result.generators().to_vec();
        let images = out
            .images
            .iter()
            .map(|w| w.map_generators(Alphabet::Free, |g| survivors.binary_search(&g).expect("survivor") as u32 + 1))
            .collect();
        return Certificate {
            verdict: Verdict::Proved,
            evidence: alloc::vec![Evidence::Tietze { transcript: out.transcript, result: out.presentation, images }],
        };
    }
    Certificate {
        verdict: Verdict::Inconclusive,
        evidence: alloc::vec![Evidence::Exhausted {
            tietze_passes: out.passes,
            remaining: out.presentation,
            coset_overflow: false,
        }],
    }
}

/// Certifies that `p` presents the trivial group. Coset enumeration and
/// Tietze simplification are both attempted and both recorded when they
/// succeed.
pub fn certify_trivial(p: &Presentation, budget: &Budget) -> Certificate {
    let ab = abelianization(p);
    if !ab.is_trivial() {
        return Certificate::refuted(Obstruction::NontrivialAbelianization(ab));
    }
    let mut evidence = Vec::new();
    let coset = todd_coxeter_index(p, &[], budget).expect("empty subgroup basis");
    match coset {
        CosetOutcome::Index(1) => evidence.push(Evidence::CosetEnumeration { cosets: 1 }),
        CosetOutcome::Index(n) => return Certificate::refuted(Obstruction::CosetIndex(n)),
        CosetOutcome::Overflow => {}
    }
    let out = tietze_simplify(p, budget);
    let tietze_trivial = out.presentation.generator_count() == 0;
    if tietze_trivial {
        evidence.push(Evidence::Tietze { transcript: out.transcript, result: out.presentation, images: Vec::new() });
        return Certificate { verdict: Verdict::Proved, evidence };
    }
    if !evidence.is_empty() {
        return Certificate { verdict: Verdict::Proved, evidence };
    }
    for q in builtin_groups() {
        if let HomCount::Exact(n) = count_homomorphisms(&out.presentation, &q, budget) {
            if n > 1 {
                return Certificate::refuted(Obstruction::FiniteQuotient { group: q.name().into(), homomorphisms: n });
            }
        }
    }
    Certificate {
        verdict: Verdict::Inconclusive,
        evidence: alloc::vec![Evidence::Exhausted {
            tietze_passes: out.passes,
            remaining: out.presentation,
            coset_overflow: coset == CosetOutcome::Overflow,
        }],
    }
}
