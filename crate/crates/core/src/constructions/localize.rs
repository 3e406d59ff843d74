use serde::{Deserialize, Serialize};

use super::{validated, Constructed};
use crate::error::{AlgebraError, Result};
use crate::structure::{from_elements, FiniteStructure, Kind, ONE, ZERO};
use crate::table::ElementId;

/// `u^-1 s`, stored as the least representative of its class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fraction {
    pub denominator: ElementId,
    pub numerator: ElementId,
}

#[derive(Clone, Debug)]
pub struct Localization {
    pub constructed: Constructed<Fraction>,
    /// `canonical_map[s]` is the class of `1^-1 s`.
    pub canonical_map: Vec<ElementId>,
}

fn is_central(s: &FiniteStructure, u: ElementId) -> bool {
    s.elements().all(|x| s.mul(u, x) == s.mul(x, u))
}

/// First pair `(x, y)` with `x != y` and `ux = uy` or `xu = yu`.
fn cancellation_failure(s: &FiniteStructure, u: ElementId) -> Option<(ElementId, ElementId)> {
    s.elements().find_map(|x| {
        (x + 1..s.order())
            .find(|&y| s.mul(u, x) == s.mul(u, y) || s.mul(x, u) == s.mul(y, u))
            .map(|y| (x, y))
    })
}

fn check_denominators(s: &FiniteStructure, o: &[ElementId]) -> Result<()> {
    if s.kind() != Kind::Semiring {
        return Err(AlgebraError::input("localization needs a semiring"));
    }
    if let Some(&bad) = o.iter().find(|&&u| u >= s.order()) {
        return Err(AlgebraError::input(format!("element {bad} out of range")));
    }
    if !o.contains(&ONE) {
        return Err(AlgebraError::input("the denominator set must contain 1"));
    }
    for &u in o {
        if !is_central(s, u) {
            let x = s.elements().find(|&x| s.mul(u, x) != s.mul(x, u)).unwrap();
            return Err(AlgebraError::input(format!("{u} is not central: {u}*{x} != {x}*{u}")));
        }
        if let Some((x, y)) = cancellation_failure(s, u) {
            return Err(AlgebraError::input(format!("{u} is not cancellable: it identifies {x} and {y}")));
        }
        for &v in o {
            if !o.contains(&s.mul(u, v)) {
                return Err(AlgebraError::Closure { op: "mul", left: u, right: v, result: s.mul(u, v) });
            }
        }
    }
    Ok(())
}

/// `O^-1 S` for a multiplicatively closed set `O` of central, two-sided
/// cancellable elements containing 1.
pub fn localize(s: &FiniteStructure, o: &[ElementId]) -> Result<Localization> {
    let mut o = o.to_vec();
    o.sort_unstable();
    o.dedup();
    check_denominators(s, &o)?;
    let n = s.order();
    let equivalent = |a: (usize, usize), b: (usize, usize)| s.mul(a.1, b.0) == s.mul(b.1, a.0);
    // rep[u][x] = least representative of the class of (u, x)
    let mut rep = vec![vec![None; n]; n];
    let mut reps: Vec<Fraction> = Vec::new();
    for &u in &o {
        for x in s.elements() {
            let found = reps
                .iter()
                .copied()
                .find(|f| equivalent((f.denominator, f.numerator), (u, x)));
            let f = found.unwrap_or_else(|| {
                let f = Fraction { denominator: u, numerator: x };
                reps.push(f);
                f
            });
            rep[u][x] = Some(f);
        }
    }
    let class = |u: usize, x: usize| rep[u][x].expect("denominator in O");
    let zero = reps.iter().position(|f| *f == class(ONE, ZERO)).unwrap();
    let one = reps.iter().position(|f| *f == class(ONE, ONE));
    let mul = |a: &Fraction, b: &Fraction| {
        class(s.mul(a.denominator, b.denominator), s.mul(a.numerator, b.numerator))
    };
    let add = |a: &Fraction, b: &Fraction| {
        class(
            s.mul(a.denominator, b.denominator),
            s.add(s.mul(a.numerator, b.denominator), s.mul(b.numerator, a.denominator)),
        )
    };
    let (structure, elements) = from_elements(Kind::Semiring, &reps, zero, one, mul, Some(&add))?;
    let labels = elements
        .iter()
        .map(|f| {
            if f.denominator == ONE {
                s.label(f.numerator)
            } else {
                format!("{}/{}", s.label(f.numerator), s.label(f.denominator))
            }
        })
        .collect();
    let constructed = validated(Constructed { structure: structure.with_labels(labels), elements })?;
    let canonical_map: Vec<usize> = s
        .elements()
        .map(|x| constructed.index_of(&class(ONE, x)).unwrap())
        .collect();
    check_canonical_map(s, &constructed.structure, &canonical_map)?;
    Ok(Localization { constructed, canonical_map })
}

fn check_canonical_map(s: &FiniteStructure, t: &FiniteStructure, phi: &[usize]) -> Result<()> {
    let broken = |what: String| Err(AlgebraError::input(format!("canonical map {what}")));
    for x in s.elements() {
        for y in s.elements() {
            if x < y && phi[x] == phi[y] {
                return broken(format!("identifies {x} and {y}"));
            }
            if phi[s.mul(x, y)] != t.mul(phi[x], phi[y]) {
                return broken(format!("does not preserve {x}*{y}"));
            }
            if phi[s.add(x, y)] != t.add(phi[x], phi[y]) {
                return broken(format!("does not preserve {x}+{y}"));
            }
        }
    }
    Ok(())
}

/// Every admissible denominator set of `s`: subsets of the central
/// cancellable elements that contain 1 and are closed under products.
pub fn central_cancellable_sets(s: &FiniteStructure) -> Vec<Vec<ElementId>> {
    let cc: Vec<usize> = s
        .nonzero()
        .filter(|&u| u != ONE && is_central(s, u) && cancellation_failure(s, u).is_none())
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << cc.len()) {
        let mut o = vec![ONE];
        o.extend(cc.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &u)| u));
        o.sort_unstable();
        if o.iter().all(|&u| o.iter().all(|&v| o.binary_search(&s.mul(u, v)).is_ok())) {
            out.push(o);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::is_isomorphic;
    use crate::named;

    #[test]
    fn trivial_denominators() {
        let s = named::zn(4);
        let l = localize(&s, &[1]).unwrap();
        assert!(is_isomorphic(&l.constructed.structure, &s).unwrap());
        assert_eq!(l.canonical_map, vec![0, 1, 2, 3]);
    }

    #[test]
    fn inverting_a_unit_changes_nothing() {
        let s = named::zn(4);
        let l = localize(&s, &[1, 3]).unwrap();
        assert_eq!(l.constructed.structure.order(), 4);
        assert!(is_isomorphic(&l.constructed.structure, &s).unwrap());
    }

    #[test]
    fn zero_divisors_are_rejected() {
        let s = named::zn(4);
        assert!(localize(&s, &[1, 2]).is_err());
    }

    #[test]
    fn admissible_sets_of_z4() {
        assert_eq!(central_cancellable_sets(&named::zn(4)), vec![vec![1], vec![1, 3]]);
    }

    #[test]
    fn capped_naturals_have_no_cancellable_elements_but_one() {
        let s = named::capped_naturals(3);
        assert_eq!(central_cancellable_sets(&s), vec![vec![1]]);
    }
}
