//! Exhaustive and random generation of small structures, theorem suites
//! over the generated corpora, and counterexample hunting.

mod engine;
mod hunt;
mod suites;
mod triangular;

pub use hunt::{find_counterexample, parse_expression, Expr, HuntOutcome};
pub use suites::{
    default_order, evaluate_atom, find_suite, run_suite, standard_corpus, suite_names, Context,
    Suite, SuiteReport, Violation, EXTRA_ATOMS, SUITES,
};
pub use triangular::{
    bisemimodules, commutative_monoids, compare_triangular_characterization, Conditions, Reading,
    SideTally, TriangularMismatch, TriangularReport,
};

use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canonical::canonical_form;
use crate::constructions::{endomorphism_pn_semiring, EndoPnOutcome, Endomorphism};
use crate::error::{AlgebraError, Result};
use crate::properties::check_property;
use crate::structure::{FiniteStructure, Kind};
use crate::table::OpTable;
use engine::{absorbing_preset, associative_at, free_cells, neutral_preset, Fill, Partial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationSpec {
    pub kind: Kind,
    pub order: usize,
    #[serde(default)]
    pub up_to_iso: bool,
    /// Property names that must hold.
    #[serde(default)]
    pub filters: Vec<String>,
    /// Lifts the default order caps by one.
    #[serde(default)]
    pub big: bool,
}

impl EnumerationSpec {
    pub fn new(kind: Kind, order: usize) -> Self {
        EnumerationSpec { kind, order, up_to_iso: false, filters: Vec::new(), big: false }
    }

    pub fn up_to_iso(mut self) -> Self {
        self.up_to_iso = true;
        self
    }
}

/// Largest order enumerated without `big`.
pub fn enumeration_cap(kind: Kind) -> usize {
    match kind {
        Kind::SemigroupWithZero => 4,
        Kind::MonoidWithZero => 5,
        Kind::Semiring => 4,
        Kind::PnSemiringLeft | Kind::PnSemiringRight | Kind::PnSemiringDistributive => 3,
    }
}

/// Every structure of the given kind and order, in a fixed order
/// determined by the table entries.
pub fn enumerate_structures(spec: &EnumerationSpec) -> Result<Vec<FiniteStructure>> {
    let cap = enumeration_cap(spec.kind) + usize::from(spec.big);
    if spec.order < 2 {
        return Err(AlgebraError::input("structures have at least two elements"));
    }
    if spec.order > cap {
        return Err(AlgebraError::resource(format!(
            "exhaustive {} enumeration stops at order {cap}",
            spec.kind
        )));
    }
    let all = raw_enumeration(spec.kind, spec.order)?;
    let kept: Vec<FiniteStructure> = if spec.filters.is_empty() {
        all
    } else {
        let verdicts: Vec<Result<bool>> = all
            .par_iter()
            .map(|s| {
                for f in &spec.filters {
                    if !check_property(s, f, 2)?.is_holds() {
                        return Ok(false);
                    }
                }
                Ok(true)
            })
            .collect();
        let mut kept = Vec::new();
        for (s, v) in all.into_iter().zip(verdicts) {
            if v? {
                kept.push(s);
            }
        }
        kept
    };
    if !spec.up_to_iso {
        return Ok(kept);
    }
    let canon: Vec<FiniteStructure> =
        kept.par_iter().map(canonical_form).collect::<Result<Vec<_>>>()?;
    let mut seen = HashSet::new();
    Ok(canon.into_iter().filter(|c| seen.insert(c.clone())).collect())
}

fn raw_enumeration(kind: Kind, n: usize) -> Result<Vec<FiniteStructure>> {
    let muls = multiplication_tables(n, kind.has_one());
    if !kind.has_add() {
        return muls
            .into_iter()
            .map(|m| FiniteStructure::new(kind, OpTable::from_flat(n, &m)?, None))
            .collect();
    }
    let per_mul: Vec<Vec<Vec<usize>>> =
        muls.iter().map(|m| addition_tables(kind, n, m)).collect();
    let mut out = Vec::new();
    for (m, adds) in muls.iter().zip(per_mul) {
        let mul = OpTable::from_flat(n, m)?;
        for a in adds {
            out.push(FiniteStructure::new(kind, mul.clone(), Some(OpTable::from_flat(n, &a)?))?);
        }
    }
    Ok(out)
}

fn multiplication_tables(n: usize, with_one: bool) -> Vec<Vec<usize>> {
    let start = absorbing_preset(n, with_one);
    let free = free_cells(&start, false);
    Fill { start, free, symmetric: false, ok: &associative_at }.all()
}

fn addition_fill<'a>(
    kind: Kind,
    n: usize,
    ok: &'a (dyn Fn(&Partial, usize, usize) -> bool + Sync),
) -> Fill<'a> {
    let start = neutral_preset(n);
    let symmetric = kind == Kind::Semiring;
    let free = free_cells(&start, symmetric);
    Fill { start, free, symmetric, ok }
}

fn addition_check(kind: Kind, mul: &[usize]) -> impl Fn(&Partial, usize, usize) -> bool + Sync + '_ {
    let (left, right) = match kind {
        Kind::PnSemiringLeft => (true, false),
        Kind::PnSemiringRight => (false, true),
        _ => (true, true),
    };
    let semiring = kind == Kind::Semiring;
    move |t: &Partial, i: usize, j: usize| {
        (!semiring || associative_at(t, i, j)) && distributive_so_far(mul, t, left, right)
    }
}

fn addition_tables(kind: Kind, n: usize, mul: &[usize]) -> Vec<Vec<usize>> {
    let check = addition_check(kind, mul);
    addition_fill(kind, n, &check).all()
}

/// Distributive laws on every triple whose sums are already assigned.
fn distributive_so_far(mul: &[usize], add: &Partial, left: bool, right: bool) -> bool {
    let n = add.n;
    let m = |a: usize, b: usize| mul[a * n + b];
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                if left {
                    // u(v+w) = uv + uw
                    if let (Some(s), Some(r)) = (add.get(v, w), add.get(m(u, v), m(u, w))) {
                        if m(u, s) != r {
                            return false;
                        }
                    }
                }
                if right {
                    // (u+v)w = uw + vw
                    if let (Some(s), Some(r)) = (add.get(u, v), add.get(m(u, w), m(v, w))) {
                        if m(s, w) != r {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// Attempts per restart before a random fill gives up and reseeds.
const RANDOM_BUDGET: usize = 200_000;
const RANDOM_RESTARTS: usize = 32;

/// A random valid structure, deterministic in `seed`. Tables are filled in
/// row-major order trying values in a random order and backtracking on
/// axiom violations.
pub fn random_structure(kind: Kind, order: usize, seed: u64) -> Result<FiniteStructure> {
    let cap = if kind.has_add() { 6 } else { 16 };
    if order < 2 || order > cap {
        return Err(AlgebraError::input(format!(
            "random {kind} structures are drawn at orders 2..={cap}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_RESTARTS {
        let start = absorbing_preset(order, kind.has_one());
        let free = free_cells(&start, false);
        let fill = Fill { start, free, symmetric: false, ok: &associative_at };
        let Some(mul) = fill.random(&mut rng, RANDOM_BUDGET) else { continue };
        let mul_table = OpTable::from_flat(order, &mul)?;
        if !kind.has_add() {
            return FiniteStructure::new(kind, mul_table, None);
        }
        let check = addition_check(kind, &mul);
        if let Some(add) = addition_fill(kind, order, &check).random(&mut rng, RANDOM_BUDGET) {
            return FiniteStructure::new(kind, mul_table, Some(OpTable::from_flat(order, &add)?));
        }
    }
    Err(AlgebraError::resource(format!(
        "no random {kind} of order {order} found within the search budget; try a smaller order"
    )))
}

/// A unital magma on which pointwise sums of endomorphisms leave the
/// endomorphisms, with the failing pair.
#[derive(Clone, Debug)]
pub struct EndoClosureWitness {
    pub add: OpTable,
    pub commutative: bool,
    pub f: Endomorphism,
    pub g: Endomorphism,
    pub x: usize,
    pub y: usize,
}

/// Searches unital magmas `(M, +, 0)` of order `2..=max_order`, smallest
/// first and in table order, for one whose endomorphisms are not closed
/// under pointwise addition. With `noncommutative`, commutative magmas are
/// skipped.
pub fn find_endomorphism_closure_failure(
    max_order: usize,
    noncommutative: bool,
) -> Result<Option<EndoClosureWitness>> {
    if max_order > 4 {
        return Err(AlgebraError::resource("unital magmas are searched up to order 4"));
    }
    for n in 2..=max_order {
        let start = neutral_preset(n);
        let free = free_cells(&start, false);
        let tables = Fill { start, free, symmetric: false, ok: &|_, _, _| true }.all();
        let hit = tables.par_iter().find_map_first(|flat| {
            let add = OpTable::from_flat(n, flat).ok()?;
            if noncommutative && add.is_commutative() {
                return None;
            }
            match endomorphism_pn_semiring(&add) {
                Ok(EndoPnOutcome::ClosureFailure { f, g, x, y }) => {
                    let commutative = add.is_commutative();
                    Some(EndoClosureWitness { add, commutative, f, g, x, y })
                }
                _ => None,
            }
        });
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn endomorphism_sums_can_escape() {
        let w = find_endomorphism_closure_failure(3, false).unwrap().expect("a failing magma");
        let n = w.add.order();
        let h = |z: usize| w.add.get(w.f.apply(z), w.g.apply(z));
        let (x, y) = (w.x, w.y);
        assert_ne!(h(w.add.get(x, y)), w.add.get(h(x), h(y)));
        assert!(n <= 3);
        let nc = find_endomorphism_closure_failure(4, true).unwrap().expect("a noncommutative one");
        assert!(!nc.commutative);
    }

    #[test]
    fn order_two_semigroups() {
        let all = enumerate_structures(&EnumerationSpec::new(Kind::SemigroupWithZero, 2)).unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(all[0], named::null_semigroup(2));
    }

    #[test]
    fn order_two_monoid_is_forced() {
        let all = enumerate_structures(&EnumerationSpec::new(Kind::MonoidWithZero, 2)).unwrap();
        assert_eq!(all.len(), 1);
    }

    #[test]
    fn order_two_semirings() {
        let all = enumerate_structures(&EnumerationSpec::new(Kind::Semiring, 2)).unwrap();
        assert_eq!(all, vec![named::zn(2), named::boolean()]);
    }

    #[test]
    fn every_enumerated_structure_validates() {
        for kind in Kind::ALL {
            for n in 2..=3 {
                for s in enumerate_structures(&EnumerationSpec::new(kind, n)).unwrap() {
                    assert!(s.validate().valid, "{kind} {n}: {s:?}");
                }
            }
        }
    }

    #[test]
    fn caps_are_enforced() {
        let r = enumerate_structures(&EnumerationSpec::new(Kind::SemigroupWithZero, 5));
        assert!(r.unwrap_err().is_resource());
    }

    #[test]
    fn filters_apply() {
        let mut spec = EnumerationSpec::new(Kind::Semiring, 3);
        spec.filters = vec!["entire".into()];
        let entire = enumerate_structures(&spec).unwrap();
        assert!(entire.iter().all(|s| crate::properties::is_entire(s).is_holds()));
        assert!(!entire.is_empty());
    }

    #[test]
    fn random_is_deterministic_and_valid() {
        let a = random_structure(Kind::SemigroupWithZero, 6, 11).unwrap();
        let b = random_structure(Kind::SemigroupWithZero, 6, 11).unwrap();
        assert_eq!(a, b);
        assert!(a.validate().valid);
        let s = random_structure(Kind::Semiring, 4, 3).unwrap();
        assert!(s.validate().valid);
    }

    #[test]
    fn random_order_three_samples_vary() {
        let samples: Vec<_> =
            (0..100).map(|seed| random_structure(Kind::SemigroupWithZero, 3, seed).unwrap()).collect();
        assert!(samples.iter().all(|s| s.validate().valid));
        assert!(samples.iter().any(|s| *s != samples[0]));
    }
}
