//! Small finite groups as multiplication tables, and homomorphism search
//! from finitely presented groups into them.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{Budget, Presentation};

/// A finite group given by its multiplication table. Element 0 is the
/// identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u16>,
    inverse: Vec<u16>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableError {
    NotSquare,
    EntryOutOfRange,
    NoIdentity,
    NoInverse { element: usize },
    NotAssociative { a: usize, b: usize, c: usize },
}

impl fmt::Display for TableError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableError::NotSquare => f.write_str("multiplication table is not square"),
            TableError::EntryOutOfRange => f.write_str("table entry out of range"),
            TableError::NoIdentity => f.write_str("element 0 is not a two-sided identity"),
            TableError::NoInverse { element } => write!(f, "element {element} has no inverse"),
            TableError::NotAssociative { a, b, c } => write!(f, "({a}·{b})·{c} ≠ {a}·({b}·{c})"),
        }
    }
}

impl FiniteGroup {
    /// Validates a table whose row `a`, column `b` holds `a·b`.
    pub fn from_table(name: &str, rows: &[Vec<usize>]) -> Result<FiniteGroup, TableError> {
        let n = rows.len();
        if n == 0 || n > u16::MAX as usize || rows.iter().any(|r| r.len() != n) {
            return Err(TableError::NotSquare);
        }
        if rows.iter().flatten().any(|&e| e >= n) {
            return Err(TableError::EntryOutOfRange);
        }
        let table: Vec<u16> = rows.iter().flatten().map(|&e| e as u16).collect();
        let mul = |a: usize, b: usize| table[a * n + b] as usize;
        if (0..n).any(|a| mul(0, a) != a || mul(a, 0) != a) {
            return Err(TableError::NoIdentity);
        }
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n).find(|&b| mul(a, b) == 0 && mul(b, a) == 0).ok_or(TableError::NoInverse { element: a })?;
            inverse.push(inv as u16);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(TableError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(FiniteGroup { name: name.into(), order: n, table, inverse })
    }

    /// Closure of `generators` under `mul`, elements numbered in discovery
    /// order starting from `identity`.
    fn generated<T: Ord + Clone>(name: &str, identity: T, generators: &[T], mul: impl Fn(&T, &T) -> T) -> FiniteGroup {
        let mut elements = alloc::vec![identity.clone()];
        let mut index = BTreeMap::new();
        index.insert(identity, 0usize);
        let mut i = 0;
        while i < elements.len() {
            for g in generators {
                let e = mul(&elements[i], g);
                if !index.contains_key(&e) {
                    index.insert(e.clone(), elements.len());
                    elements.push(e);
                }
            }
            i += 1;
        }
        let rows: Vec<Vec<usize>> =
            elements.iter().map(|a| elements.iter().map(|b| index[&mul(a, b)]).collect()).collect();
        FiniteGroup::from_table(name, &rows).expect("closure of a group action is a group")
    }

    fn permutations(name: &str, degree: usize, generators: &[&[usize]]) -> FiniteGroup {
        let identity: Vec<usize> = (0..degree).collect();
        let gens: Vec<Vec<usize>> = generators.iter().map(|g| g.to_vec()).collect();
        // apply p, then q
        FiniteGroup::generated(name, identity, &gens, |p, q| p.iter().map(|&i| q[i]).collect())
    }

    fn quaternion() -> FiniteGroup {
        // (negated, unit) with units 1, i, j, k
        const UNIT: [[(bool, u8); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        FiniteGroup::generated("Q8", (false, 0u8), &[(false, 1), (false, 2)], |&(s, a), &(t, b)| {
            let (n, c) = UNIT[a as usize][b as usize];
            (s ^ t ^ n, c)
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Evaluates a dense signed letter sequence under `assignment`
    /// (generator `d` ↦ `assignment[d - 1]`).
    pub fn evaluate(&self, letters: &[i32], assignment: &[usize]) -> usize {
        letters.iter().fold(0, |acc, &l| {
            let e = assignment[l.unsigned_abs() as usize - 1];
            self.mul(acc, if l > 0 { e } else { self.inv(e) })
        })
    }

    /// The same group with elements renumbered by `perm` (old ↦ new);
    /// `perm[0]` must be 0.
    pub fn relabeled(&self, perm: &[usize]) -> FiniteGroup {
        assert!(perm.len() == self.order && perm[0] == 0);
        let mut back = alloc::vec![0; self.order];
        for (old, &new) in perm.iter().enumerate() {
            back[new] = old;
        }
        let rows: Vec<Vec<usize>> = (0..self.order)
            .map(|a| (0..self.order).map(|b| perm[self.mul(back[a], back[b])]).collect())
            .collect();
        FiniteGroup::from_table(&self.name, &rows).expect("relabeling preserves the group axioms")
    }
}

/// Z/2, Z/3, Z/4, Z/2×Z/2, S3, D4, Q8, A4, S4, A5, in that order.
pub fn builtin_groups() -> Vec<FiniteGroup> {
    alloc::vec![
        FiniteGroup::permutations("Z/2", 2, &[&[1, 0]]),
        FiniteGroup::permutations("Z/3", 3, &[&[1, 2, 0]]),
        FiniteGroup::permutations("Z/4", 4, &[&[1, 2, 3, 0]]),
        FiniteGroup::permutations("Z/2xZ/2", 4, &[&[1, 0, 3, 2], &[2, 3, 0, 1]]),
        FiniteGroup::permutations("S3", 3, &[&[1, 0, 2], &[1, 2, 0]]),
        FiniteGroup::permutations("D4", 4, &[&[1, 2, 3, 0], &[0, 3, 2, 1]]),
        FiniteGroup::quaternion(),
        FiniteGroup::permutations("A4", 4, &[&[1, 2, 0, 3], &[1, 0, 3, 2]]),
        FiniteGroup::permutations("S4", 4, &[&[1, 0, 2, 3], &[1, 2, 3, 0]]),
        FiniteGroup::permutations("A5", 5, &[&[1, 2, 0, 3, 4], &[1, 2, 3, 4, 0]]),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HomSearchOverflow;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HomCount {
    Exact(u128),
    /// Node budget exhausted; compared as a wildcard.
    Unknown,
}

impl HomCount {
    pub fn exact(self) -> Option<u128> {
        match self {
            HomCount::Exact(n) => Some(n),
            HomCount::Unknown => None,
        }
    }

    /// Equal, or either side unknown.
    pub fn compatible(self, other: HomCount) -> bool {
        match (self, other) {
            (HomCount::Exact(a), HomCount::Exact(b)) => a == b,
            _ => true,
        }
    }
}

impl fmt::Display for HomCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomCount::Exact(n) => write!(f, "{n}"),
            HomCount::Unknown => f.write_str("?"),
        }
    }
}

/// Backtracking over assignments of `generators` (dense 0-based) with
/// relators checked as soon as all their letters are assigned.
struct Search<'a> {
    group: &'a FiniteGroup,
    order: Vec<usize>,
    /// relators to check once `order[depth]` has been assigned
    checks: Vec<Vec<&'a [i32]>>,
    assignment: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
}

impl<'a> Search<'a> {
    fn new(group: &'a FiniteGroup, generators: usize, order: Vec<usize>, relators: &'a [Vec<i32>], max_nodes: u64) -> Self {
        let mut depth_of = alloc::vec![0usize; generators];
        for (depth, &g) in order.iter().enumerate() {
            depth_of[g] = depth;
        }
        let mut checks = alloc::vec![Vec::new(); order.len()];
        for r in relators {
            let last = r.iter().map(|l| depth_of[l.unsigned_abs() as usize - 1]).max().expect("relators are nonempty");
            checks[last].push(r.as_slice());
        }
        Search { group, order, checks, assignment: alloc::vec![0; generators], nodes: 0, max_nodes }
    }

    fn run(&mut self, depth: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> Result<bool, HomSearchOverflow> {
        if depth == self.order.len() {
            return Ok(visit(&self.assignment));
        }
        let g = self.order[depth];
        for e in 0..self.group.order() {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Err(HomSearchOverflow);
            }
            self.assignment[g] = e;
            if self.checks[depth].iter().all(|r| self.group.evaluate(r, &self.assignment) == 0) && !self.run(depth + 1, visit)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Visits every homomorphism `p → q` as an assignment of `q` elements to
/// `p`'s generators (dense order). The visitor returns `false` to stop.
pub fn for_each_homomorphism(
    p: &Presentation,
    q: &FiniteGroup,
    budget: &Budget,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<(), HomSearchOverflow> {
    let relators = p.dense_relators();
    let n = p.generator_count();
    let mut search = Search::new(q, n, (0..n).collect(), &relators, budget.max_hom_nodes);
    search.run(0, visit).map(|_| ())
}

/// Exact `|Hom(p, q)|`. Generators absent from every relator contribute a
/// factor `|q|` each without being enumerated.
pub fn count_homomorphisms(p: &Presentation, q: &FiniteGroup, budget: &Budget) -> HomCount {
    let relators = p.dense_relators();
    let n = p.generator_count();
    let mut used = alloc::vec![false; n];
    for r in &relators {
        for l in r {
            used[l.unsigned_abs() as usize - 1] = true;
        }
    }
    let constrained: Vec<usize> = (0..n).filter(|&g| used[g]).collect();
    let free = (n - constrained.len()) as u32;
    let mut count: u128 = 0;
    let mut search = Search::new(q, n, constrained, &relators, budget.max_hom_nodes);
    let outcome = search.run(0, &mut |_| {
        count += 1;
        true
    });
    match outcome {
        Ok(_) => (q.order() as u128)
            .checked_pow(free)
            .and_then(|f| f.checked_mul(count))
            .map_or(HomCount::Unknown, HomCount::Exact),
        Err(HomSearchOverflow) => HomCount::Unknown,
    }
}
