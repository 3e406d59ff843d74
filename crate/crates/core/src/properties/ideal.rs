use serde::{Deserialize, Serialize};

use super::{is_nilpotent, is_reversible, PropertyReport};
use crate::error::{AlgebraError, Result};
use crate::structure::{FiniteStructure, Kind, ZERO};
use crate::table::ElementId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sidedness {
    Left,
    Right,
    TwoSided,
}

impl Sidedness {
    fn left(self) -> bool {
        matches!(self, Sidedness::Left | Sidedness::TwoSided)
    }

    fn right(self) -> bool {
        matches!(self, Sidedness::Right | Sidedness::TwoSided)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealDescriptor {
    pub generators: Vec<ElementId>,
    pub closure: Vec<ElementId>,
    pub sidedness: Sidedness,
}

/// Least subset containing `generators` that absorbs multiplication on the
/// requested side(s) and, when the structure has an addition, is closed
/// under sums.
pub fn ideal_closure(
    s: &FiniteStructure,
    generators: &[ElementId],
    sidedness: Sidedness,
) -> IdealDescriptor {
    let n = s.order();
    let additive = s.add_table().is_some();
    let mut member = vec![false; n];
    let mut members = Vec::new();
    let mut queue: Vec<usize> = Vec::new();
    let push = |x: usize, member: &mut Vec<bool>, members: &mut Vec<usize>, q: &mut Vec<usize>| {
        if !member[x] {
            member[x] = true;
            members.push(x);
            q.push(x);
        }
    };
    if generators.is_empty() {
        push(ZERO, &mut member, &mut members, &mut queue);
    }
    for &g in generators {
        push(g, &mut member, &mut members, &mut queue);
    }
    while let Some(a) = queue.pop() {
        for x in 0..n {
            if sidedness.left() {
                push(s.mul(x, a), &mut member, &mut members, &mut queue);
            }
            if sidedness.right() {
                push(s.mul(a, x), &mut member, &mut members, &mut queue);
            }
        }
        if additive {
            let snapshot = members.clone();
            for b in snapshot {
                push(s.add(a, b), &mut member, &mut members, &mut queue);
                push(s.add(b, a), &mut member, &mut members, &mut queue);
            }
        }
    }
    let mut generators = generators.to_vec();
    generators.sort_unstable();
    generators.dedup();
    let mut closure = members;
    closure.sort_unstable();
    IdealDescriptor { generators, closure, sidedness }
}

/// First pair showing `set` is not an ideal of the given sidedness.
fn escaping_pair(
    s: &FiniteStructure,
    set: &[ElementId],
    sidedness: Sidedness,
) -> Option<AlgebraError> {
    let mut member = vec![false; s.order()];
    for &x in set {
        member[x] = true;
    }
    for &a in set {
        for x in s.elements() {
            if sidedness.left() && !member[s.mul(x, a)] {
                return Some(AlgebraError::Closure { op: "mul", left: x, right: a, result: s.mul(x, a) });
            }
            if sidedness.right() && !member[s.mul(a, x)] {
                return Some(AlgebraError::Closure { op: "mul", left: a, right: x, result: s.mul(a, x) });
            }
        }
        if s.add_table().is_some() {
            for &b in set {
                if !member[s.add(a, b)] {
                    return Some(AlgebraError::Closure { op: "add", left: a, right: b, result: s.add(a, b) });
                }
            }
        }
    }
    None
}

pub fn is_nil_ideal(s: &FiniteStructure, ideal: &IdealDescriptor) -> Result<PropertyReport> {
    if let Some(&bad) = ideal.closure.iter().find(|&&x| x >= s.order()) {
        return Err(AlgebraError::input(format!("element {bad} out of range")));
    }
    if ideal.closure.is_empty() {
        return Err(AlgebraError::input("an ideal is nonempty"));
    }
    if let Some(e) = escaping_pair(s, &ideal.closure, ideal.sidedness) {
        return Err(e);
    }
    let w = ideal.closure.iter().find(|&&x| !is_nilpotent(s, x)).map(|&x| vec![x]);
    Ok(PropertyReport::from_witness("nil_ideal", w))
}

/// Checks the conclusions of Cohn's theorem on a reversible structure:
/// the right ideal generated by any nilpotent is nil and two-sided, and
/// in a semiring the nilpotents are closed under sums and under `a_b`
/// sandwiching. Non-reversible structures hold vacuously.
///
/// Failure property names say which check broke:
/// `cohn/right_ideal_nil` `[a, x]`, `cohn/right_ideal_two_sided` `[a, s, r]`,
/// `cohn/nilpotent_sum` `[s, t]`, `cohn/nilpotent_sandwich` `[a, s, b]`.
pub fn verify_cohn(s: &FiniteStructure) -> PropertyReport {
    if !is_reversible(s).is_holds() {
        return PropertyReport::holds("cohn");
    }
    let nilpotent: Vec<bool> = s.elements().map(|x| is_nilpotent(s, x)).collect();
    let nil_list: Vec<usize> = s.elements().filter(|&x| nilpotent[x]).collect();
    for &a in &nil_list {
        let r = ideal_closure(s, &[a], Sidedness::Right);
        if let Some(&x) = r.closure.iter().find(|&&x| !nilpotent[x]) {
            return PropertyReport::fails("cohn/right_ideal_nil", vec![a, x]);
        }
        let mut member = vec![false; s.order()];
        for &x in &r.closure {
            member[x] = true;
        }
        for x in s.elements() {
            if let Some(&y) = r.closure.iter().find(|&&y| !member[s.mul(x, y)]) {
                return PropertyReport::fails("cohn/right_ideal_two_sided", vec![a, x, y]);
            }
        }
    }
    if s.kind() == Kind::Semiring {
        for &x in &nil_list {
            if let Some(&y) = nil_list.iter().find(|&&y| !nilpotent[s.add(x, y)]) {
                return PropertyReport::fails("cohn/nilpotent_sum", vec![x, y]);
            }
        }
        for a in s.elements() {
            for &x in &nil_list {
                let ax = s.mul(a, x);
                if let Some(b) = s.elements().find(|&b| !nilpotent[s.mul(ax, b)]) {
                    return PropertyReport::fails("cohn/nilpotent_sandwich", vec![a, x, b]);
                }
            }
        }
    }
    PropertyReport::holds("cohn")
}

/// On a reversible structure, the two-sided ideal generated by each
/// nilpotent element is nil. Witness `[a, x]`: `x` lies in the ideal
/// generated by `a` and is not nilpotent.
pub fn generated_two_sided_ideal_is_nil(s: &FiniteStructure) -> PropertyReport {
    if !is_reversible(s).is_holds() {
        return PropertyReport::holds("cohn_generated");
    }
    for a in s.elements().filter(|&a| is_nilpotent(s, a)) {
        let i = ideal_closure(s, &[a], Sidedness::TwoSided);
        if let Some(&x) = i.closure.iter().find(|&&x| !is_nilpotent(s, x)) {
            return PropertyReport::fails("cohn_generated", vec![a, x]);
        }
    }
    PropertyReport::holds("cohn_generated")
}

pub(super) fn recheck_cohn(s: &FiniteStructure, property: &str, w: &[ElementId]) -> bool {
    if !is_reversible(s).is_holds() {
        return false;
    }
    let nil = |x| is_nilpotent(s, x);
    match (property, w) {
        ("cohn/right_ideal_nil", &[a, x]) => {
            nil(a) && !nil(x) && ideal_closure(s, &[a], Sidedness::Right).closure.contains(&x)
        }
        ("cohn/right_ideal_two_sided", &[a, x, y]) => {
            let r = ideal_closure(s, &[a], Sidedness::Right).closure;
            nil(a) && r.contains(&y) && !r.contains(&s.mul(x, y))
        }
        ("cohn/nilpotent_sum", &[x, y]) => nil(x) && nil(y) && !nil(s.add(x, y)),
        ("cohn/nilpotent_sandwich", &[a, x, b]) => nil(x) && !nil(s.mul(s.mul(a, x), b)),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::matrix_semiring;
    use crate::named;
    use crate::table::OpTable;

    #[test]
    fn zero_generates_the_zero_ideal() {
        let z4 = named::zn(4);
        for side in [Sidedness::Left, Sidedness::Right, Sidedness::TwoSided] {
            assert_eq!(ideal_closure(&z4, &[0], side).closure, vec![0]);
        }
    }

    #[test]
    fn two_generates_the_even_residues() {
        let z4 = named::zn(4);
        let i = ideal_closure(&z4, &[2], Sidedness::Right);
        assert_eq!(i.closure, vec![0, 2]);
        assert!(is_nil_ideal(&z4, &i).unwrap().is_holds());
    }

    #[test]
    fn whole_boolean_semiring_is_not_nil() {
        let b = named::boolean();
        let i = IdealDescriptor { generators: vec![1], closure: vec![0, 1], sidedness: Sidedness::TwoSided };
        assert_eq!(is_nil_ideal(&b, &i).unwrap(), PropertyReport::fails("nil_ideal", vec![1]));
    }

    #[test]
    fn unclosed_set_is_rejected() {
        let z4 = named::zn(4);
        let i = IdealDescriptor { generators: vec![1], closure: vec![0, 1], sidedness: Sidedness::Right };
        assert!(matches!(is_nil_ideal(&z4, &i), Err(AlgebraError::Closure { .. })));
    }

    #[test]
    fn matrix_right_ideal_of_a_nilpotent() {
        let m2 = matrix_semiring(&named::boolean(), 2).unwrap();
        let e12 = m2.index_of_slice(&[0, 1, 0, 0]).unwrap();
        let i = ideal_closure(&m2.structure, &[e12], Sidedness::Right);
        // e12 * M2(B) is the set of matrices supported on the first row
        // whose entries come from the second row of the right factor.
        assert_eq!(i.closure.len(), 4);
        let report = is_nil_ideal(&m2.structure, &i).unwrap();
        assert!(report.is_fails(), "e12*e21 = e11 is idempotent");
    }

    #[test]
    fn cohn_on_small_semirings() {
        assert!(verify_cohn(&named::boolean()).is_holds());
        assert!(verify_cohn(&named::zn(4)).is_holds());
        assert!(verify_cohn(&named::zn(8)).is_holds());
        let m2 = matrix_semiring(&named::boolean(), 2).unwrap().structure;
        assert!(verify_cohn(&m2).is_holds(), "vacuous: M2(B) is not reversible");
    }

    #[test]
    fn reversible_semigroup_whose_nil_right_ideal_is_one_sided() {
        // 1 = a, 2 = b, 3 = c with a^2 = 0, ab = a, ba = c, b^2 = b,
        // bc = cb = c and every other product zero.
        let rows = vec![
            vec![0, 0, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 3, 2, 3],
            vec![0, 0, 3, 0],
        ];
        let s = FiniteStructure::new_validated(
            Kind::SemigroupWithZero,
            OpTable::from_rows(&rows).unwrap(),
            None,
        )
        .unwrap();
        assert!(is_reversible(&s).is_holds());
        let r = verify_cohn(&s);
        assert_eq!(r, PropertyReport::fails("cohn/right_ideal_two_sided", vec![1, 2, 1]));
        assert!(recheck_cohn(&s, &r.property, r.witness.as_ref().unwrap()));
        // The two-sided ideal generated by a is still nil.
        assert!(generated_two_sided_ideal_is_nil(&s).is_holds());
    }
}
