//! Zero-divisors of triangular semirings `[[S, M], [0, T]]`: brute force
//! membership against the stated element-wise conditions.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::engine::{associative_at, free_cells, neutral_preset, Fill};
use crate::constructions::{triangular_semiring, Bisemimodule};
use crate::error::{AlgebraError, Result};
use crate::properties::{is_left_zero_divisor, is_right_zero_divisor};
use crate::structure::{FiniteStructure, Kind, ONE, ZERO};
use crate::table::OpTable;

/// Which set of conditions is compared with the oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conditions {
    /// The conditions exactly as printed.
    Printed,
    /// Conditions that each come with an explicit annihilating element,
    /// mirrored between the two sides.
    Corrected,
}

/// Which elements the comparison ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reading {
    /// Every element `(s, m, t)`.
    AllElements,
    /// Only elements whose module entry `m` is nonzero.
    NonzeroModuleEntry,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideTally {
    pub elements: usize,
    /// Stated condition holds and the element is a zero-divisor.
    pub both: usize,
    /// Stated condition holds but the element is not a zero-divisor.
    pub stated_only: usize,
    /// The element is a zero-divisor but no stated condition holds.
    pub oracle_only: usize,
    pub neither: usize,
}

impl SideTally {
    fn record(&mut self, stated: bool, member: bool) {
        self.elements += 1;
        match (stated, member) {
            (true, true) => self.both += 1,
            (true, false) => self.stated_only += 1,
            (false, true) => self.oracle_only += 1,
            (false, false) => self.neither += 1,
        }
    }

    pub fn merge(&mut self, other: &SideTally) {
        self.elements += other.elements;
        self.both += other.both;
        self.stated_only += other.stated_only;
        self.oracle_only += other.oracle_only;
        self.neither += other.neither;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangularMismatch {
    /// `left` or `right`.
    pub side: String,
    /// `(s, m, t)`.
    pub element: (usize, usize, usize),
    /// Whether the element is a zero-divisor on that side.
    pub member: bool,
    /// The stated clause that held (`a`, `b` or `c`), if any.
    pub clause: Option<char>,
    /// A nonzero annihilating element `(s', m', t')` when `member` holds.
    pub witness: Option<(usize, usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangularReport {
    pub conditions: Conditions,
    pub order: usize,
    pub left: [SideTally; 2],
    pub right: [SideTally; 2],
    /// Every disagreement, over all elements.
    pub mismatches: Vec<TriangularMismatch>,
}

impl TriangularReport {
    /// Disagreements where a stated condition holds for a non-member.
    pub fn sufficiency_failures(&self) -> impl Iterator<Item = &TriangularMismatch> {
        self.mismatches.iter().filter(|m| !m.member)
    }
}

struct Parts<'a> {
    s: &'a FiniteStructure,
    m: &'a Bisemimodule,
    t: &'a FiniteStructure,
}

impl Parts<'_> {
    fn exists_nonzero<F: Fn(usize) -> bool>(n: usize, f: F) -> bool {
        (1..n).any(f)
    }

    fn left_clause(&self, c: Conditions, (s, m, t): (usize, usize, usize)) -> Option<char> {
        let (ss, mm, tt) = (self.s, self.m, self.t);
        let s_zl = is_left_zero_divisor(ss, s);
        let t_zl = is_left_zero_divisor(tt, t);
        let b = Self::exists_nonzero(tt.order(), |t2| tt.mul(t, t2) == ZERO && mm.act_right(m, t2) == ZERO);
        let cc = Self::exists_nonzero(mm.order(), |m2| mm.act_left(s, m2) == ZERO);
        let (a, b, cc) = match c {
            Conditions::Printed => (
                s_zl,
                s_zl && s != ZERO && t_zl && b,
                s_zl && s != ZERO && t_zl && t != ZERO && cc,
            ),
            Conditions::Corrected => (s_zl, b, cc),
        };
        first_clause(a, b, cc)
    }

    fn right_clause(&self, c: Conditions, (s, m, t): (usize, usize, usize)) -> Option<char> {
        let (ss, mm, tt) = (self.s, self.m, self.t);
        match c {
            Conditions::Printed => {
                let s_zr = is_right_zero_divisor(ss, s);
                let t_zr = is_right_zero_divisor(tt, t);
                let b = Self::exists_nonzero(tt.order(), |t2| {
                    tt.mul(t2, t) == ZERO && mm.act_right(m, t2) == ZERO
                });
                let cc = Self::exists_nonzero(mm.order(), |m2| mm.act_left(s, m2) == ZERO);
                first_clause(
                    s_zr,
                    s_zr && s != ZERO && t_zr && b,
                    s_zr && s != ZERO && t_zr && t != ZERO && cc,
                )
            }
            Conditions::Corrected => {
                let a = Self::exists_nonzero(ss.order(), |s2| {
                    ss.mul(s2, s) == ZERO && mm.act_left(s2, m) == ZERO
                });
                let b = is_right_zero_divisor(tt, t);
                let cc = Self::exists_nonzero(mm.order(), |m2| mm.act_right(m2, t) == ZERO);
                first_clause(a, b, cc)
            }
        }
    }
}

fn first_clause(a: bool, b: bool, c: bool) -> Option<char> {
    [(a, 'a'), (b, 'b'), (c, 'c')].into_iter().find(|p| p.0).map(|p| p.1)
}

/// Compares brute-force left (right) zero-divisor membership of every
/// element of the triangular semiring with the stated conditions.
pub fn compare_triangular_characterization(
    s: &FiniteStructure,
    m: &Bisemimodule,
    t: &FiniteStructure,
    conditions: Conditions,
) -> Result<TriangularReport> {
    let tri = triangular_semiring(s, m, t)?;
    let parts = Parts { s, m, t };
    let ts = &tri.structure;
    let mut left = [SideTally::default(), SideTally::default()];
    let mut right = [SideTally::default(), SideTally::default()];
    let mut mismatches = Vec::new();
    for (x, &elem) in tri.elements.iter().enumerate() {
        let sides = [
            ("left", parts.left_clause(conditions, elem), &mut left),
            ("right", parts.right_clause(conditions, elem), &mut right),
        ];
        for (side, clause, tally) in sides {
            let witness = ts.nonzero().find(|&y| {
                if side == "left" { ts.mul(x, y) == ZERO } else { ts.mul(y, x) == ZERO }
            });
            let member = witness.is_some();
            tally[0].record(clause.is_some(), member);
            if elem.1 != ZERO {
                tally[1].record(clause.is_some(), member);
            }
            if clause.is_some() != member {
                mismatches.push(TriangularMismatch {
                    side: side.into(),
                    element: elem,
                    member,
                    clause,
                    witness: witness.map(|y| tri.elements[y]),
                });
            }
        }
    }
    Ok(TriangularReport { conditions, order: ts.order(), left, right, mismatches })
}

/// Addition tables of commutative monoids of order `n` with neutral 0, one
/// per isomorphism class.
pub fn commutative_monoids(n: usize) -> Vec<OpTable> {
    if n == 1 {
        return vec![OpTable::from_flat(1, &[0]).unwrap()];
    }
    let start = neutral_preset(n);
    let free = free_cells(&start, true);
    let all = Fill { start, free, symmetric: true, ok: &associative_at }.all();
    let mut seen = HashSet::new();
    all.into_iter()
        .filter(|flat| seen.insert(min_relabeling(n, flat)))
        .map(|flat| OpTable::from_flat(n, &flat).unwrap())
        .collect()
}

fn min_relabeling(n: usize, flat: &[usize]) -> Vec<usize> {
    let mut rest: Vec<usize> = (1..n).collect();
    let mut best: Option<Vec<usize>> = None;
    permute(&mut rest, 0, &mut |p| {
        let mut perm = vec![0];
        perm.extend_from_slice(p); // perm[old] = new
        let mut inv = vec![0; n];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let key: Vec<usize> = (0..n * n).map(|k| perm[flat[inv[k / n] * n + inv[k % n]]]).collect();
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    });
    best.unwrap()
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

/// Action tables `r x |M|` with row 0 and column 0 zero and row 1 the
/// identity; rows index scalars.
fn action_candidates(scalars: usize, module: usize) -> Vec<Vec<Vec<usize>>> {
    let free: Vec<(usize, usize)> =
        (2..scalars).flat_map(|r| (1..module).map(move |c| (r, c))).collect();
    let mut base = vec![vec![0; module]; scalars];
    if scalars > 1 {
        base[1] = (0..module).collect();
    }
    let total = module.pow(free.len() as u32);
    (0..total)
        .map(|mut k| {
            let mut t = base.clone();
            for &(r, c) in &free {
                t[r][c] = k % module;
                k /= module;
            }
            t
        })
        .collect()
}

fn transpose(t: &[Vec<usize>], rows: usize, cols: usize) -> Vec<Vec<usize>> {
    (0..cols).map(|c| (0..rows).map(|r| t[r][c]).collect()).collect()
}

/// Every `(S, T)`-bisemimodule structure on the commutative monoid `add`.
pub fn bisemimodules(s: &FiniteStructure, add: &OpTable, t: &FiniteStructure) -> Result<Vec<Bisemimodule>> {
    if s.kind() != Kind::Semiring || t.kind() != Kind::Semiring {
        return Err(AlgebraError::input("bisemimodules are taken over semirings"));
    }
    let n = add.order();
    if n > 4 || s.order() > 4 || t.order() > 4 {
        return Err(AlgebraError::resource("bisemimodule enumeration is limited to order 4"));
    }
    let lefts = action_candidates(s.order(), n);
    let rights: Vec<Vec<Vec<usize>>> = action_candidates(t.order(), n)
        .into_iter()
        .map(|r| transpose(&r, t.order(), n))
        .collect();
    let probe = |left: &[Vec<usize>], right: &[Vec<usize>]| -> Result<Option<Bisemimodule>> {
        let b = Bisemimodule::new(add.clone(), left, right)?;
        Ok(b.validate(s, t).valid.then_some(b))
    };
    // Filter each side against a trivially compatible partner first.
    let zero_right = vec![vec![0; t.order()]; n];
    let zero_left = vec![vec![0; n]; s.order()];
    let side_ok = |b: &Bisemimodule, prefix: &str| {
        b.validate(s, t).failures.iter().all(|f| !f.axiom.starts_with(prefix) && !f.axiom.starts_with("module"))
    };
    let lefts: Vec<_> = lefts
        .into_iter()
        .filter(|l| {
            Bisemimodule::new(add.clone(), l, &zero_right).is_ok_and(|b| side_ok(&b, "left"))
        })
        .collect();
    let rights: Vec<_> = rights
        .into_iter()
        .filter(|r| {
            Bisemimodule::new(add.clone(), &zero_left, r).is_ok_and(|b| side_ok(&b, "right"))
        })
        .collect();
    let mut out = Vec::new();
    for l in &lefts {
        for r in &rights {
            if let Some(b) = probe(l, r)? {
                out.push(b);
            }
        }
    }
    Ok(out)
}

/// The regular `(S, S)` action rows used as a sanity anchor in tests.
#[allow(dead_code)]
fn is_regular(b: &Bisemimodule, s: &FiniteStructure) -> bool {
    b.order() == s.order()
        && s.elements().all(|x| s.elements().all(|y| b.act_left(x, y) == s.mul(x, y)))
        && b.act_left(ONE, ONE) == ONE
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::regular_bisemimodule;
    use crate::named;

    #[test]
    fn monoid_classes_of_order_two() {
        // 1 + 1 = 0 or 1 + 1 = 1.
        assert_eq!(commutative_monoids(2).len(), 2);
    }

    #[test]
    fn regular_bisemimodule_is_found() {
        let b = named::boolean();
        let all = bisemimodules(&b, b.add_table().unwrap(), &b).unwrap();
        let reg = regular_bisemimodule(&b).unwrap();
        assert!(all.contains(&reg));
        assert!(all.iter().any(|m| is_regular(m, &b)));
    }

    #[test]
    fn boolean_triangular_comparison() {
        let b = named::boolean();
        let m = regular_bisemimodule(&b).unwrap();
        let r = compare_triangular_characterization(&b, &m, &b, Conditions::Printed).unwrap();
        assert_eq!(r.order, 8);
        assert_eq!(r.left[0].elements, 8);
        // Sufficiency on the left side.
        assert_eq!(r.left[0].stated_only, 0);
        // The zero matrix is a zero-divisor on both sides.
        assert!(r.mismatches.iter().all(|x| x.element != (0, 0, 0)));
    }

    #[test]
    fn printed_right_clause_a_misses_the_module_entry() {
        // X = [[0, 1], [0, 1]] over B: s = 0 is a right zero-divisor of B,
        // but X'X = (0, s'*1 + m', t') forces X' = 0.
        let b = named::boolean();
        let m = regular_bisemimodule(&b).unwrap();
        let r = compare_triangular_characterization(&b, &m, &b, Conditions::Printed).unwrap();
        let hit = r.sufficiency_failures().find(|x| x.element == (0, 1, 1)).unwrap();
        assert_eq!(hit.side, "right");
        assert_eq!(hit.clause, Some('a'));
        let fixed = compare_triangular_characterization(&b, &m, &b, Conditions::Corrected).unwrap();
        assert_eq!(fixed.sufficiency_failures().count(), 0);
    }
}
