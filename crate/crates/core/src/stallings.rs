//! Stallings graphs of finitely generated subgroups of free groups.
//!
//! A [`SubgroupGraph`] is the folded core graph of a subgroup, relabeled
//! canonically (breadth-first from the basepoint, edges in letter order), so
//! two generating sets of the same subgroup give equal graphs.

use alloc::collections::VecDeque;
use alloc::vec::Vec;
use core::fmt;

use crate::word::{letter_key, Alphabet, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StallingsError {
    AlphabetMismatch { expected: Alphabet, found: Alphabet },
    IndexOutOfRange { generator: u32, rank: u32 },
}

impl fmt::Display for StallingsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StallingsError::AlphabetMismatch { expected, found } => {
                write!(f, "expected words over the {expected} alphabet, found {found}")
            }
            StallingsError::IndexOutOfRange { generator, rank } => {
                write!(f, "generator number {generator} exceeds ambient rank {rank}")
            }
        }
    }
}

/// Slot of a signed letter in a vertex's edge array: `x1, x1^-1, x2, ...`.
#[inline]
fn slot(letter: i32) -> usize {
    letter_key(letter) as usize - 1
}

#[inline]
fn slot_letter(slot: usize) -> i32 {
    let g = (slot / 2 + 1) as i32;
    if slot.is_multiple_of(2) {
        g
    } else {
        -g
    }
}

#[inline]
fn opposite(slot: usize) -> usize {
    slot ^ 1
}

/// Union-find folding over a growing vertex set.
struct Folder {
    width: usize,
    parent: Vec<usize>,
    out: Vec<Option<usize>>,
    pending: Vec<(usize, usize, usize)>,
}

impl Folder {
    fn new(rank: u32) -> Folder {
        let width = 2 * rank as usize;
        Folder { width, parent: alloc::vec![0], out: alloc::vec![None; width], pending: Vec::new() }
    }

    fn new_vertex(&mut self) -> usize {
        let v = self.parent.len();
        self.parent.push(v);
        self.out.extend(core::iter::repeat_n(None, self.width));
        v
    }

    fn find(&mut self, v: usize) -> usize {
        let mut root = v;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = v;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn target(&mut self, v: usize, s: usize) -> Option<usize> {
        let t = self.out[v * self.width + s]?;
        Some(self.find(t))
    }

    fn add_edge(&mut self, u: usize, letter: i32, v: usize) {
        let s = slot(letter);
        self.pending.push((u, s, v));
        self.pending.push((v, opposite(s), u));
        self.settle();
    }

    fn settle(&mut self) {
        while let Some((u, s, v)) = self.pending.pop() {
            let u = self.find(u);
            let v = self.find(v);
            match self.target(u, s) {
                None => self.out[u * self.width + s] = Some(v),
                Some(w) if w == v => {}
                Some(w) => self.union(w, v),
            }
        }
    }

    fn union(&mut self, a: usize, b: usize) {
        let (keep, drop) = if a < b { (a, b) } else { (b, a) };
        self.parent[drop] = keep;
        for s in 0..self.width {
            if let Some(t) = self.out[drop * self.width + s].take() {
                self.pending.push((keep, s, t));
            }
        }
    }

    fn read_word(&mut self, letters: &[i32]) {
        let mut cur = 0usize;
        let n = letters.len();
        for (i, &l) in letters.iter().enumerate() {
            let here = self.find(cur);
            if i + 1 == n {
                self.add_edge(here, l, 0);
            } else if let Some(next) = self.target(here, slot(l)) {
                cur = next;
            } else {
                let v = self.new_vertex();
                self.add_edge(here, l, v);
                cur = v;
            }
        }
    }
}

/// Folded, basepointed core graph of a subgroup of `F_rank`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubgroupGraph {
    alphabet: Alphabet,
    rank: u32,
    vertices: usize,
    /// `edges[v * 2·rank + slot]`; vertex 0 is the basepoint.
    edges: Vec<Option<u32>>,
}

impl SubgroupGraph {
    /// Folds the bouquet of `generators` into the Stallings graph of the
    /// subgroup they generate in the free group of the given rank.
    pub fn build(alphabet: Alphabet, rank: u32, generators: &[Word]) -> Result<SubgroupGraph, StallingsError> {
        for w in generators {
            if w.alphabet() != alphabet {
                return Err(StallingsError::AlphabetMismatch { expected: alphabet, found: w.alphabet() });
            }
            if w.max_generator() > rank {
                return Err(StallingsError::IndexOutOfRange { generator: w.max_generator(), rank });
            }
        }
        let mut folder = Folder::new(rank);
        for w in generators {
            folder.read_word(w.letters());
        }
        Ok(SubgroupGraph::from_folder(alphabet, rank, &mut folder))
    }

    fn from_folder(alphabet: Alphabet, rank: u32, folder: &mut Folder) -> SubgroupGraph {
        let width = folder.width;
        let count = folder.parent.len();
        // resolve edges between roots
        let mut adj: Vec<Option<usize>> = alloc::vec![None; count * width];
        let mut alive = alloc::vec![false; count];
        for v in 0..count {
            if folder.find(v) != v {
                continue;
            }
            alive[v] = true;
            for s in 0..width {
                adj[v * width + s] = folder.target(v, s);
            }
        }
        // prune hanging trees away from the basepoint
        let degree = |adj: &[Option<usize>], v: usize| (0..width).filter(|&s| adj[v * width + s].is_some()).count();
        let mut stack: Vec<usize> = (1..count).filter(|&v| alive[v] && degree(&adj, v) <= 1).collect();
        while let Some(v) = stack.pop() {
            if !alive[v] || degree(&adj, v) > 1 {
                continue;
            }
            alive[v] = false;
            for s in 0..width {
                if let Some(t) = adj[v * width + s].take() {
                    adj[t * width + opposite(s)] = None;
                    if t != 0 && alive[t] && degree(&adj, t) <= 1 {
                        stack.push(t);
                    }
                }
            }
        }
        // canonical breadth-first numbering
        let mut number = alloc::vec![usize::MAX; count];
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        number[0] = 0;
        order.push(0);
        queue.push_back(0);
        while let Some(v) = queue.pop_front() {
            for s in 0..width {
                if let Some(t) = adj[v * width + s] {
                    if number[t] == usize::MAX {
                        number[t] = order.len();
                        order.push(t);
                        queue.push_back(t);
                    }
                }
            }
        }
        let mut edges = alloc::vec![None; order.len() * width];
        for (new, &old) in order.iter().enumerate() {
            for s in 0..width {
                edges[new * width + s] = adj[old * width + s].map(|t| number[t] as u32);
            }
        }
        SubgroupGraph { alphabet, rank, vertices: order.len(), edges }
    }

    pub fn ambient_rank(&self) -> u32 {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    fn width(&self) -> usize {
        2 * self.rank as usize
    }

    fn step(&self, v: usize, letter: i32) -> Option<usize> {
        let g = letter.unsigned_abs();
        if g == 0 || g > self.rank {
            return None;
        }
        self.edges[v * self.width() + slot(letter)].map(|t| t as usize)
    }

    /// Positively labeled edges as `(from, generator, to)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, u32, usize)> + '_ {
        let width = self.width();
        (0..self.vertices).flat_map(move |v| {
            (0..width).step_by(2).filter_map(move |s| self.edges[v * width + s].map(|t| (v, slot_letter(s) as u32, t as usize)))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// Rank of the subgroup: `E − V + 1`.
    pub fn subgroup_rank(&self) -> usize {
        self.edge_count() + 1 - self.vertices
    }

    /// Whether `u` reads a closed path at the basepoint.
    pub fn member(&self, u: &Word) -> bool {
        if u.alphabet() != self.alphabet {
            return false;
        }
        let mut v = 0;
        for &l in u.letters() {
            match self.step(v, l) {
                Some(t) => v = t,
                None => return false,
            }
        }
        v == 0
    }

    /// Whether the subgroup is the whole ambient free group.
    pub fn is_whole_group(&self) -> bool {
        self.vertices == 1 && (1..=self.rank as i32).all(|g| self.step(0, g) == Some(0))
    }

    /// Every vertex has every label in and out: the graph is a finite cover.
    pub fn is_covering(&self) -> bool {
        self.edges.iter().all(Option::is_some)
    }

    /// Index of the subgroup when it is finite (the graph is a covering).
    pub fn index(&self) -> Option<usize> {
        self.is_covering().then_some(self.vertices)
    }
}

impl fmt::Display for SubgroupGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "graph(V={}, E={}:", self.vertices, self.edge_count())?;
        for (u, g, v) in self.edges() {
            write!(f, " {u}-{}->{v}", Word::generator(self.alphabet, g))?;
        }
        f.write_str(")")
    }
}
