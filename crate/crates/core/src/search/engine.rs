//! Backtracking over partially filled Cayley tables.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

pub(crate) const EMPTY: u8 = u8::MAX;

/// A square table with some cells still unassigned.
#[derive(Clone, Debug)]
pub(crate) struct Partial {
    pub n: usize,
    pub cells: Vec<u8>,
}

impl Partial {
    pub fn new(n: usize) -> Self {
        Partial { n, cells: vec![EMPTY; n * n] }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Option<usize> {
        let v = self.cells[i * self.n + j];
        (v != EMPTY).then_some(v as usize)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Option<usize>) {
        self.cells[i * self.n + j] = v.map_or(EMPTY, |v| v as u8);
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.cells.iter().map(|&c| c as usize).collect()
    }
}

/// Zero row and column of a multiplication table.
pub(crate) fn absorbing_preset(n: usize, with_one: bool) -> Partial {
    let mut p = Partial::new(n);
    for x in 0..n {
        p.set(0, x, Some(0));
        p.set(x, 0, Some(0));
    }
    if with_one {
        for x in 0..n {
            p.set(1, x, Some(x));
            p.set(x, 1, Some(x));
        }
    }
    p
}

/// Zero as a two-sided neutral element of an addition table.
pub(crate) fn neutral_preset(n: usize) -> Partial {
    let mut p = Partial::new(n);
    for x in 0..n {
        p.set(0, x, Some(x));
        p.set(x, 0, Some(x));
    }
    p
}

/// Checks every associativity triple in which cell `(i, j)` takes part and
/// all four lookups are assigned.
pub(crate) fn associative_at(t: &Partial, i: usize, j: usize) -> bool {
    let n = t.n;
    let Some(v) = t.get(i, j) else { return true };
    let eq = |a: Option<usize>, b: Option<usize>| match (a, b) {
        (Some(a), Some(b)) => a == b,
        _ => true,
    };
    for z in 0..n {
        // (ij)z = i(jz)
        if !eq(t.get(v, z), t.get(j, z).and_then(|jz| t.get(i, jz))) {
            return false;
        }
        // (zi)j = z(ij)
        if !eq(t.get(z, i).and_then(|zi| t.get(zi, j)), t.get(z, v)) {
            return false;
        }
    }
    for x in 0..n {
        for y in 0..n {
            // (xy)j with xy = i
            if t.get(x, y) == Some(i) && !eq(Some(v), t.get(y, j).and_then(|yj| t.get(x, yj))) {
                return false;
            }
            // i(xy) with xy = j
            if t.get(x, y) == Some(j) && !eq(t.get(i, x).and_then(|ix| t.get(ix, y)), Some(v)) {
                return false;
            }
        }
    }
    true
}

/// Free cells in row-major order; with `symmetric`, only the upper triangle.
pub(crate) fn free_cells(p: &Partial, symmetric: bool) -> Vec<(usize, usize)> {
    let n = p.n;
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| p.get(i, j).is_none() && (!symmetric || i <= j))
        .collect()
}

/// A fill problem: assign values `0..n` to `free` so that `ok` accepts
/// every intermediate table. `ok(t, i, j)` is called right after `(i, j)`
/// (and its mirror, when symmetric) has been assigned.
pub(crate) struct Fill<'a> {
    pub start: Partial,
    pub free: Vec<(usize, usize)>,
    pub symmetric: bool,
    pub ok: &'a (dyn Fn(&Partial, usize, usize) -> bool + Sync),
}

impl Fill<'_> {
    fn assign(&self, t: &mut Partial, pos: usize, v: Option<usize>) -> bool {
        let (i, j) = self.free[pos];
        t.set(i, j, v);
        if self.symmetric {
            t.set(j, i, v);
        }
        v.is_none() || ((self.ok)(t, i, j) && (!self.symmetric || i == j || (self.ok)(t, j, i)))
    }

    fn run(&self, t: &mut Partial, pos: usize, out: &mut Vec<Vec<usize>>) {
        if pos == self.free.len() {
            out.push(t.to_vec());
            return;
        }
        for v in 0..t.n {
            if self.assign(t, pos, Some(v)) {
                self.run(t, pos + 1, out);
            }
        }
        self.assign(t, pos, None);
    }

    /// Every completion, in lexicographic order of the free-cell values.
    /// The first `split` cells are expanded serially and the resulting
    /// subtrees explored in parallel; concatenation keeps the order.
    pub fn all(&self) -> Vec<Vec<usize>> {
        let split = self.free.len().min(2);
        let mut prefixes = vec![self.start.clone()];
        for pos in 0..split {
            let mut next = Vec::new();
            for p in prefixes {
                for v in 0..p.n {
                    let mut q = p.clone();
                    if self.assign(&mut q, pos, Some(v)) {
                        next.push(q);
                    }
                }
            }
            prefixes = next;
        }
        prefixes
            .into_par_iter()
            .map(|mut p| {
                let mut out = Vec::new();
                self.run(&mut p, split, &mut out);
                out
            })
            .collect::<Vec<_>>()
            .concat()
    }

    /// One completion found by trying values in random order, or `None`
    /// once `budget` assignments have been tried.
    pub fn random(&self, rng: &mut impl Rng, budget: usize) -> Option<Vec<usize>> {
        let mut t = self.start.clone();
        let mut spent = 0;
        self.random_rec(&mut t, 0, rng, &mut spent, budget)
    }

    fn random_rec(
        &self,
        t: &mut Partial,
        pos: usize,
        rng: &mut impl Rng,
        spent: &mut usize,
        budget: usize,
    ) -> Option<Vec<usize>> {
        if pos == self.free.len() {
            return Some(t.to_vec());
        }
        let mut values: Vec<usize> = (0..t.n).collect();
        values.shuffle(rng);
        for v in values {
            *spent += 1;
            if *spent > budget {
                return None;
            }
            if self.assign(t, pos, Some(v)) {
                if let Some(done) = self.random_rec(t, pos + 1, rng, spent, budget) {
                    return Some(done);
                }
            }
        }
        self.assign(t, pos, None);
        None
    }
}
