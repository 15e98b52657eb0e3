//! HLT-style Todd–Coxeter coset enumeration.

use alloc::vec::Vec;

use super::{Budget, Deadline, Presentation, PresentationError};
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CosetOutcome {
    /// Enumeration closed; the subgroup has this index.
    Index(usize),
    /// Coset cap or wall clock hit before closing.
    Overflow,
}

impl CosetOutcome {
    pub fn index(self) -> Option<usize> {
        match self {
            CosetOutcome::Index(n) => Some(n),
            CosetOutcome::Overflow => None,
        }
    }
}

const UNDEF: u32 = 0;

struct Overflowed;

/// Coset table with 1-based coset numbers; 0 marks an undefined entry.
/// Column `2d` is dense generator `d` and column `2d + 1` its inverse.
struct Enumerator {
    width: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    queue: Vec<u32>,
    live: usize,
    cap: usize,
    deadline: Deadline,
}

impl Enumerator {
    fn new(generators: usize, cap: usize, deadline: Deadline) -> Enumerator {
        let width = 2 * generators;
        // row 0 is a sentinel, row 1 is the subgroup coset
        Enumerator {
            width,
            table: alloc::vec![UNDEF; 2 * width],
            parent: alloc::vec![0, 1],
            queue: Vec::new(),
            live: 1,
            cap,
            deadline,
        }
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.width + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.table[c as usize * self.width + x] = v;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> Result<(), Overflowed> {
        let d = self.parent.len();
        if d > self.cap || (d.is_multiple_of(1024) && self.deadline.expired()) {
            return Err(Overflowed);
        }
        let d = d as u32;
        self.parent.push(d);
        self.table.extend(core::iter::repeat_n(UNDEF, self.width));
        self.live += 1;
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = c;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi as usize] = lo;
            self.queue.push(hi);
            self.live -= 1;
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.width {
                let f = self.get(e, x);
                if f == UNDEF {
                    continue;
                }
                self.set(f, x ^ 1, UNDEF);
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let ex = self.get(e1, x);
                if ex != UNDEF {
                    self.merge(f1, ex);
                    continue;
                }
                let fx = self.get(f1, x ^ 1);
                if fx != UNDEF {
                    self.merge(e1, fx);
                } else {
                    self.set(e1, x, f1);
                    self.set(f1, x ^ 1, e1);
                }
            }
        }
    }

    /// Scans `word` (as columns) from coset `a`, defining cosets to close
    /// the gap and processing any deduction or coincidence found.
    fn scan_and_fill(&mut self, a: u32, word: &[usize]) -> Result<(), Overflowed> {
        if word.is_empty() {
            return Ok(());
        }
        let mut f = a;
        let mut b = a;
        let mut i = 0usize;
        let mut j = word.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.get(f, word[i]) != UNDEF {
                f = self.get(f, word[i]);
                i += 1;
            }
            if (i as isize) > j {
                if f != a {
                    self.coincidence(f, a);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, word[j as usize] ^ 1) != UNDEF {
                b = self.get(b, word[j as usize] ^ 1);
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.set(f, word[i], b);
                self.set(b, word[i] ^ 1, f);
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }
}

fn columns(letters: &[i32]) -> Vec<usize> {
    letters
        .iter()
        .map(|&l| {
            let d = l.unsigned_abs() as usize - 1;
            if l > 0 {
                2 * d
            } else {
                2 * d + 1
            }
        })
        .collect()
}

/// Index of the subgroup generated by `subgroup` in the group presented by
/// `p`, or `Overflow` if enumeration does not close within the coset cap.
pub fn todd_coxeter_index(
    p: &Presentation,
    subgroup: &[Word],
    budget: &Budget,
) -> Result<CosetOutcome, PresentationError> {
    for w in subgroup {
        p.check_word(w)?;
    }
    let relators: Vec<Vec<usize>> = p.dense_relators().iter().map(|r| columns(r)).collect();
    let subgroup: Vec<Vec<usize>> = subgroup.iter().map(|w| columns(&p.dense_letters(w))).collect();
    let mut en = Enumerator::new(p.generator_count(), budget.max_cosets, budget.deadline());

    let run = |en: &mut Enumerator| -> Result<(), Overflowed> {
        for w in &subgroup {
            en.scan_and_fill(1, w)?;
        }
        let mut c = 1u32;
        while (c as usize) < en.parent.len() {
            for r in &relators {
                if !en.is_live(c) {
                    break;
                }
                en.scan_and_fill(c, r)?;
            }
            for x in 0..en.width {
                if en.is_live(c) && en.get(c, x) == UNDEF {
                    en.define(c, x)?;
                }
            }
            c += 1;
        }
        Ok(())
    };
    Ok(match run(&mut en) {
        Ok(()) => CosetOutcome::Index(en.live),
        Err(Overflowed) => CosetOutcome::Overflow,
    })
}
