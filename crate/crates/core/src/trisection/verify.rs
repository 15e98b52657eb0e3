//! Checking the cube conditions.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{pairwise_pushout, symmetric_triple_pushout, triple_pushout, GroupTrisection, Pushout};
use crate::presentation::{
    abelianization, builtin_groups, certify_free_of_rank, certify_trivial, count_homomorphisms, tietze_simplify,
    AbelianInvariants, Budget, Certificate, HomCount, Presentation, Verdict,
};
use crate::surface::{validate_handlebody_map, MapValidationReport};

/// Both presentations of one face `H_i *_{S_g} H_j`, each certified free of
/// rank `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceReport {
    pub i: usize,
    pub j: usize,
    pub forward: Pushout,
    pub forward_certificate: Certificate,
    pub backward: Pushout,
    pub backward_certificate: Certificate,
}

impl FaceReport {
    pub fn verdict(&self) -> Verdict {
        self.forward_certificate.verdict.worst(self.backward_certificate.verdict)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TargetCheck {
    /// No target claimed; the sink is by definition the triple pushout.
    Absent,
    Trivial(Certificate),
    Free { rank: usize, certificate: Certificate },
    /// Invariant comparison against an arbitrary target.
    General {
        abelianization_agrees: bool,
        /// Per built-in group; `None` where either count overflowed.
        hom_counts_agree: Vec<(String, Option<bool>)>,
        /// Tietze simplifications of both sides agree up to relator order.
        tietze_agrees: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetReport {
    pub triple: Pushout,
    pub check: TargetCheck,
}

impl TargetReport {
    pub fn verdict(&self) -> Verdict {
        match &self.check {
            TargetCheck::Absent => Verdict::Proved,
            TargetCheck::Trivial(c) | TargetCheck::Free { certificate: c, .. } => c.verdict,
            TargetCheck::General { abelianization_agrees, hom_counts_agree, tietze_agrees } => {
                if !abelianization_agrees || hom_counts_agree.iter().any(|(_, a)| *a == Some(false)) {
                    Verdict::Refuted
                } else if *tietze_agrees {
                    Verdict::Proved
                } else {
                    Verdict::Inconclusive
                }
            }
        }
    }
}

/// Cross-check of the triple pushout against the presentation that glues all
/// three handle groups along the surface without using cuts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RedundancyReport {
    pub symmetric: Pushout,
    pub abelianization: (AbelianInvariants, AbelianInvariants),
    pub hom_counts: Vec<(String, HomCount, HomCount)>,
}

impl RedundancyReport {
    pub fn verdict(&self) -> Verdict {
        if self.abelianization.0 != self.abelianization.1
            || self.hom_counts.iter().any(|(_, a, b)| !a.compatible(*b))
        {
            Verdict::Refuted
        } else if self.hom_counts.iter().all(|(_, a, b)| a.exact().is_some() && b.exact().is_some()) {
            Verdict::Proved
        } else {
            Verdict::Inconclusive
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    /// C1: each lower edge is a relator-killing epimorphism.
    pub maps: [MapValidationReport; 3],
    /// C2: faces (1,2), (1,3), (2,3).
    pub faces: [FaceReport; 3],
    /// C3: the sink against the claimed target.
    pub target: TargetReport,
    /// C4: redundancy guard on the upper faces.
    pub redundancy: RedundancyReport,
}

impl VerificationReport {
    pub fn verdict(&self) -> Verdict {
        Verdict::all(
            self.maps
                .iter()
                .map(MapValidationReport::verdict)
                .chain(self.faces.iter().map(FaceReport::verdict))
                .chain([self.target.verdict(), self.redundancy.verdict()]),
        )
    }

    /// Labels of the conditions with verdict `v`, e.g. `C2 face (1,3)`.
    pub fn conditions_with(&self, v: Verdict) -> Vec<String> {
        let mut out = Vec::new();
        for (s, m) in self.maps.iter().enumerate() {
            if m.verdict() == v {
                out.push(format!("C1 sector {}", s + 1));
            }
        }
        for f in &self.faces {
            if f.verdict() == v {
                out.push(format!("C2 face ({},{})", f.i, f.j));
            }
        }
        if self.target.verdict() == v {
            out.push("C3 target".into());
        }
        if self.redundancy.verdict() == v {
            out.push("C4 redundancy".into());
        }
        out
    }

    pub fn refuted_conditions(&self) -> Vec<String> {
        self.conditions_with(Verdict::Refuted)
    }
}

fn hom_counts(p: &Presentation, budget: &Budget) -> Vec<(String, HomCount)> {
    let simplified = tietze_simplify(p, budget).presentation;
    builtin_groups().iter().map(|q| (q.name().into(), count_homomorphisms(&simplified, q, budget))).collect()
}

fn face(t: &GroupTrisection, i: usize, j: usize, budget: &Budget) -> FaceReport {
    let k = t.k() as usize;
    let forward = pairwise_pushout(t, i, j).expect("distinct sectors");
    let backward = pairwise_pushout(t, j, i).expect("distinct sectors");
    FaceReport {
        i,
        j,
        forward_certificate: certify_free_of_rank(&forward.presentation, k, budget),
        backward_certificate: certify_free_of_rank(&backward.presentation, k, budget),
        forward,
        backward,
    }
}

fn target(t: &GroupTrisection, triple: Pushout, budget: &Budget) -> TargetReport {
    let Some(claim) = t.target() else {
        return TargetReport { triple, check: TargetCheck::Absent };
    };
    let simplified = tietze_simplify(claim, budget).presentation;
    let check = if simplified.generator_count() == 0 {
        TargetCheck::Trivial(certify_trivial(&triple.presentation, budget))
    } else if simplified.relators().is_empty() {
        let rank = simplified.generator_count();
        TargetCheck::Free { rank, certificate: certify_free_of_rank(&triple.presentation, rank, budget) }
    } else {
        let ours = tietze_simplify(&triple.presentation, budget).presentation;
        let hom_counts_agree = hom_counts(&ours, budget)
            .into_iter()
            .zip(hom_counts(&simplified, budget))
            .map(|((name, a), (_, b))| {
                let agree = match (a.exact(), b.exact()) {
                    (Some(a), Some(b)) => Some(a == b),
                    _ => None,
                };
                (name, agree)
            })
            .collect();
        TargetCheck::General {
            abelianization_agrees: abelianization(&ours) == abelianization(&simplified),
            hom_counts_agree,
            tietze_agrees: ours.comparison_key() == simplified.comparison_key(),
        }
    };
    TargetReport { triple, check }
}

fn redundancy(t: &GroupTrisection, triple: &Pushout, budget: &Budget) -> RedundancyReport {
    let symmetric = symmetric_triple_pushout(t);
    let abelianization = (abelianization(&triple.presentation), abelianization(&symmetric.presentation));
    let hom_counts = hom_counts(&triple.presentation, budget)
        .into_iter()
        .zip(hom_counts(&symmetric.presentation, budget))
        .map(|((name, a), (_, b))| (name, a, b))
        .collect();
    RedundancyReport { symmetric, abelianization, hom_counts }
}

/// Runs every cube condition. Failures are verdicts, never errors.
pub fn verify(t: &GroupTrisection, budget: &Budget) -> VerificationReport {
    let maps = [0, 1, 2].map(|s| validate_handlebody_map(&t.maps()[s], budget));
    let faces = [(1, 2), (1, 3), (2, 3)].map(|(i, j)| face(t, i, j, budget));
    let triple = triple_pushout(t);
    let redundancy = redundancy(t, &triple, budget);
    let target = target(t, triple, budget);
    VerificationReport { maps, faces, target, redundancy }
}
