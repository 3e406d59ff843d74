//! A handful of standard small structures.

use crate::structure::{FiniteStructure, Kind};
use crate::table::OpTable;

/// The Boolean semiring `({0,1}, or, and)`.
pub fn boolean() -> FiniteStructure {
    let add = OpTable::from_fn(2, |a, b| a | b).unwrap();
    let mul = OpTable::from_fn(2, |a, b| a & b).unwrap();
    FiniteStructure::new(Kind::Semiring, mul, Some(add)).unwrap()
}

/// Residues modulo `n` as a semiring.
pub fn zn(n: usize) -> FiniteStructure {
    assert!(n >= 2);
    let add = OpTable::from_fn(n, |a, b| (a + b) % n).unwrap();
    let mul = OpTable::from_fn(n, |a, b| (a * b) % n).unwrap();
    FiniteStructure::new(Kind::Semiring, mul, Some(add)).unwrap()
}

/// `{0, .., cap}` with sum and product truncated at `cap`.
pub fn capped_naturals(cap: usize) -> FiniteStructure {
    assert!(cap >= 1);
    let n = cap + 1;
    let add = OpTable::from_fn(n, |a, b| (a + b).min(cap)).unwrap();
    let mul = OpTable::from_fn(n, |a, b| (a * b).min(cap)).unwrap();
    FiniteStructure::new(Kind::Semiring, mul, Some(add)).unwrap()
}

/// Semigroup of the given order in which every product is zero.
pub fn null_semigroup(order: usize) -> FiniteStructure {
    let mul = OpTable::from_fn(order, |_, _| 0).unwrap();
    FiniteStructure::new(Kind::SemigroupWithZero, mul, None).unwrap()
}

/// Look up a structure by a short name (used by the CLI and the demo).
pub fn by_name(name: &str) -> Option<FiniteStructure> {
    let (base, arg) = match name.split_once(':') {
        Some((b, a)) => (b, a.parse::<usize>().ok()),
        None => (name, None),
    };
    Some(match (base, arg) {
        ("boolean", None) | ("B", None) => boolean(),
        ("z", Some(n)) if (2..=64).contains(&n) => zn(n),
        ("capped", Some(t)) if (1..=64).contains(&t) => capped_naturals(t),
        ("null", Some(n)) if (2..=64).contains(&n) => null_semigroup(n),
        _ => return None,
    })
}
