//! Computable invariants that can refute isomorphism of trisections.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{euler_characteristic, triple_pushout, GroupTrisection};
use crate::presentation::{
    abelianization, builtin_groups, count_homomorphisms, smith_normal_form, tietze_simplify, AbelianInvariants,
    Budget, HomCount,
};

/// Equal trisections give equal fingerprints; the converse fails (the
/// fingerprint cannot see orientation, for instance).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub genus: u32,
    pub k: u32,
    pub euler: i64,
    pub abelianization: AbelianInvariants,
    /// `|Hom(G, Q)|` for each built-in finite group `Q`.
    pub hom_counts: Vec<(String, HomCount)>,
    /// Invariant factors of each sector's abelianized `2g × g` image matrix.
    pub sectors: [Vec<BigInt>; 3],
}

impl Fingerprint {
    /// Equality with overflowed hom counts treated as wildcards.
    pub fn matches(&self, other: &Fingerprint) -> bool {
        self.genus == other.genus
            && self.k == other.k
            && self.euler == other.euler
            && self.abelianization == other.abelianization
            && self.sectors == other.sectors
            && self.hom_counts.len() == other.hom_counts.len()
            && self.hom_counts.iter().zip(&other.hom_counts).all(|((n, a), (m, b))| n == m && a.compatible(*b))
    }
}

pub fn fingerprint(t: &GroupTrisection, budget: &Budget) -> Fingerprint {
    let triple = triple_pushout(t).presentation;
    let simplified = tietze_simplify(&triple, budget).presentation;
    let hom_counts =
        builtin_groups().iter().map(|q| (q.name().into(), count_homomorphisms(&simplified, q, budget))).collect();
    Fingerprint {
        genus: t.genus(),
        k: t.k(),
        euler: euler_characteristic(t),
        abelianization: abelianization(&triple),
        hom_counts,
        sectors: [0, 1, 2].map(|s| smith_normal_form(&t.maps()[s].abelianized_matrix()).d.diagonal()),
    }
}
