use serde::{Deserialize, Serialize};

use super::{check_product_order, validated, Constructed, Endomorphism};
use crate::error::{AlgebraError, Result};
use crate::structure::{from_elements, FiniteStructure, Kind, ONE, ZERO};
use crate::table::{ElementId, OpTable};
use crate::validate::{self, ValidationReport};

/// A commutative monoid `M` with a left `S`-action and a right `T`-action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bisemimodule {
    add: OpTable,
    /// `left[s * |M| + m] = s m`
    left: Vec<usize>,
    left_rows: usize,
    /// `right[m * |T| + t] = m t`
    right: Vec<usize>,
    right_cols: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BisemimoduleFile {
    pub module_order: usize,
    pub module_add: Vec<Vec<usize>>,
    pub left_action: Vec<Vec<usize>>,
    pub right_action: Vec<Vec<usize>>,
}

impl Bisemimodule {
    /// `left_action` is `|S|` rows of `|M|` entries; `right_action` is `|M|`
    /// rows of `|T|` entries. Zero of `M` is element 0.
    pub fn new(
        module_add: OpTable,
        left_action: &[Vec<usize>],
        right_action: &[Vec<usize>],
    ) -> Result<Self> {
        let m = module_add.order();
        if left_action.iter().any(|r| r.len() != m) {
            return Err(AlgebraError::input("left action rows must have |M| entries"));
        }
        if right_action.len() != m {
            return Err(AlgebraError::input("right action must have |M| rows"));
        }
        let right_cols = right_action.first().map_or(0, Vec::len);
        if right_action.iter().any(|r| r.len() != right_cols) {
            return Err(AlgebraError::input("right action rows differ in length"));
        }
        let left: Vec<usize> = left_action.iter().flatten().copied().collect();
        let right: Vec<usize> = right_action.iter().flatten().copied().collect();
        if let Some(&bad) = left.iter().chain(&right).find(|&&x| x >= m) {
            return Err(AlgebraError::input(format!("action value {bad} outside M")));
        }
        Ok(Bisemimodule { add: module_add, left, left_rows: left_action.len(), right, right_cols })
    }

    pub fn from_file(file: &BisemimoduleFile) -> Result<Self> {
        if file.module_add.len() != file.module_order {
            return Err(AlgebraError::input("module_add order differs from module_order"));
        }
        Self::new(OpTable::from_rows(&file.module_add)?, &file.left_action, &file.right_action)
    }

    pub fn to_file(&self) -> BisemimoduleFile {
        let m = self.order();
        BisemimoduleFile {
            module_order: m,
            module_add: self.add.rows(),
            left_action: self.left.chunks(m).map(<[usize]>::to_vec).collect(),
            right_action: self.right.chunks(self.right_cols.max(1)).map(<[usize]>::to_vec).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.add.order()
    }

    #[inline]
    pub fn add(&self, a: ElementId, b: ElementId) -> ElementId {
        self.add.get(a, b)
    }

    /// `s m`
    #[inline]
    pub fn act_left(&self, s: ElementId, m: ElementId) -> ElementId {
        self.left[s * self.order() + m]
    }

    /// `m t`
    #[inline]
    pub fn act_right(&self, m: ElementId, t: ElementId) -> ElementId {
        self.right[m * self.right_cols + t]
    }

    /// Checks the semimodule axioms for both actions and the compatibility
    /// `(s m) t = s (m t)`.
    pub fn validate(&self, s: &FiniteStructure, t: &FiniteStructure) -> ValidationReport {
        let mut failures = Vec::new();
        let mut fail = |axiom: &str, w: Option<Vec<usize>>| {
            if let Some(witness) = w {
                failures.push(validate::AxiomFailure { axiom: axiom.into(), witness });
            }
        };
        if self.left_rows != s.order() || self.right_cols != t.order() {
            fail("action_shape", Some(vec![self.left_rows, self.right_cols]));
            return ValidationReport { valid: false, failures };
        }
        let m_ = self.order();
        let ms = 0..m_;
        fail("module_neutral", validate::identity(&self.add, ZERO));
        fail("module_associativity", validate::associativity(&self.add));
        fail("module_commutativity", validate::commutativity(&self.add));

        let first3 = |a: usize, b: usize, c: usize, f: &dyn Fn(usize, usize, usize) -> bool| {
            (0..a).find_map(|x| {
                (0..b).find_map(|y| (0..c).find(|&z| !f(x, y, z)).map(|z| vec![x, y, z]))
            })
        };
        let (ns, nt) = (s.order(), t.order());
        fail(
            "left_action_additive",
            first3(ns, m_, m_, &|x, a, b| {
                self.act_left(x, self.add(a, b)) == self.add(self.act_left(x, a), self.act_left(x, b))
            }),
        );
        fail(
            "left_action_distributive",
            first3(ns, ns, m_, &|x, y, a| {
                self.act_left(s.add(x, y), a) == self.add(self.act_left(x, a), self.act_left(y, a))
            }),
        );
        fail(
            "left_action_associative",
            first3(ns, ns, m_, &|x, y, a| {
                self.act_left(s.mul(x, y), a) == self.act_left(x, self.act_left(y, a))
            }),
        );
        fail("left_action_zero_module", (0..ns).find(|&x| self.act_left(x, ZERO) != ZERO).map(|x| vec![x]));
        fail("left_action_zero_scalar", ms.clone().find(|&a| self.act_left(ZERO, a) != ZERO).map(|a| vec![a]));
        fail("left_action_unital", ms.clone().find(|&a| self.act_left(ONE, a) != a).map(|a| vec![a]));

        fail(
            "right_action_additive",
            first3(m_, m_, nt, &|a, b, x| {
                self.act_right(self.add(a, b), x) == self.add(self.act_right(a, x), self.act_right(b, x))
            }),
        );
        fail(
            "right_action_distributive",
            first3(m_, nt, nt, &|a, x, y| {
                self.act_right(a, t.add(x, y)) == self.add(self.act_right(a, x), self.act_right(a, y))
            }),
        );
        fail(
            "right_action_associative",
            first3(m_, nt, nt, &|a, x, y| {
                self.act_right(a, t.mul(x, y)) == self.act_right(self.act_right(a, x), y)
            }),
        );
        fail("right_action_zero_module", (0..nt).find(|&x| self.act_right(ZERO, x) != ZERO).map(|x| vec![x]));
        fail("right_action_zero_scalar", ms.clone().find(|&a| self.act_right(a, ZERO) != ZERO).map(|a| vec![a]));
        fail("right_action_unital", ms.clone().find(|&a| self.act_right(a, ONE) != a).map(|a| vec![a]));

        fail(
            "compatibility",
            first3(ns, m_, nt, &|x, a, y| {
                self.act_right(self.act_left(x, a), y) == self.act_left(x, self.act_right(a, y))
            }),
        );
        ValidationReport { valid: failures.is_empty(), failures }
    }

    /// `Z_S(M)`: scalars killing some nonzero module element.
    pub fn left_zero_divisors(&self, s: &FiniteStructure) -> Vec<ElementId> {
        s.elements().filter(|&x| (1..self.order()).any(|m| self.act_left(x, m) == ZERO)).collect()
    }

    /// `Z_T(M)`.
    pub fn right_zero_divisors(&self, t: &FiniteStructure) -> Vec<ElementId> {
        t.elements().filter(|&x| (1..self.order()).any(|m| self.act_right(m, x) == ZERO)).collect()
    }
}

/// `S` as an `(S, S)`-bisemimodule over itself.
pub fn regular_bisemimodule(s: &FiniteStructure) -> Result<Bisemimodule> {
    if s.kind() != Kind::Semiring {
        return Err(AlgebraError::input("regular bisemimodules need a semiring"));
    }
    let rows = s.mul_table().rows();
    Bisemimodule::new(s.add_table().unwrap().clone(), &rows, &rows)
}

fn require_semiring(s: &FiniteStructure, what: &str) -> Result<()> {
    if s.kind() != Kind::Semiring {
        return Err(AlgebraError::input(format!("{what} must be a semiring, got {}", s.kind())));
    }
    Ok(())
}

/// Upper triangular matrices `[[s, m], [0, t]]` with product
/// `(s1 s2, s1 m2 + m1 t2, t1 t2)`. Elements are `(s, m, t)`.
pub fn triangular_semiring(
    s: &FiniteStructure,
    m: &Bisemimodule,
    t: &FiniteStructure,
) -> Result<Constructed<(usize, usize, usize)>> {
    require_semiring(s, "S")?;
    require_semiring(t, "T")?;
    m.validate(s, t).into_result()?;
    check_product_order(&[s.order(), m.order(), t.order()])?;
    let mut elems = Vec::with_capacity(s.order() * m.order() * t.order());
    for x in s.elements() {
        for a in 0..m.order() {
            for y in t.elements() {
                elems.push((x, a, y));
            }
        }
    }
    let one = elems.iter().position(|&e| e == (ONE, ZERO, ONE));
    let mul = |&(s1, m1, t1): &(usize, usize, usize), &(s2, m2, t2): &(usize, usize, usize)| {
        (s.mul(s1, s2), m.add(m.act_left(s1, m2), m.act_right(m1, t2)), t.mul(t1, t2))
    };
    let add = |&(s1, m1, t1): &(usize, usize, usize), &(s2, m2, t2): &(usize, usize, usize)| {
        (s.add(s1, s2), m.add(m1, m2), t.add(t1, t2))
    };
    let (structure, elements) = from_elements(Kind::Semiring, &elems, 0, one, mul, Some(&add))?;
    let labels = elements
        .iter()
        .map(|&(x, a, y)| format!("[{} {}; 0 {}]", s.label(x), a, t.label(y)))
        .collect();
    validated(Constructed { structure: structure.with_labels(labels), elements })
}

/// `S ⊕̃ M` for an `(S, S)`-bisemimodule `M`: pairs with product
/// `(s1 s2, s1 m2 + m1 s2)`.
pub fn expectation_semiring(
    s: &FiniteStructure,
    m: &Bisemimodule,
) -> Result<Constructed<(usize, usize)>> {
    require_semiring(s, "S")?;
    m.validate(s, s).into_result()?;
    pair_semiring(s, m.order(), |s1, m2| m.act_left(s1, m2), |m1, s2| m.act_right(m1, s2), |a, b| {
        m.add(a, b)
    })
}

/// `(S ⊕̃ S)_σ` over a commutative semiring: product
/// `(s1 s2, σ(s1) m2 + m1 s2)`.
pub fn sigma_expectation(
    s: &FiniteStructure,
    sigma: &Endomorphism,
) -> Result<Constructed<(usize, usize)>> {
    require_semiring(s, "S")?;
    if let Some(w) = crate::validate::commutativity(s.mul_table()) {
        return Err(AlgebraError::Axiom { axiom: "commutative_multiplication".into(), witness: w });
    }
    if let Some(eq) = sigma.semiring_violation(s) {
        return Err(AlgebraError::input(format!("sigma is not a semiring endomorphism: {eq}")));
    }
    pair_semiring(
        s,
        s.order(),
        |s1, m2| s.mul(sigma.apply(s1), m2),
        |m1, s2| s.mul(m1, s2),
        |a, b| s.add(a, b),
    )
}

fn pair_semiring(
    s: &FiniteStructure,
    m_order: usize,
    left: impl Fn(usize, usize) -> usize + Sync,
    right: impl Fn(usize, usize) -> usize + Sync,
    madd: impl Fn(usize, usize) -> usize + Sync,
) -> Result<Constructed<(usize, usize)>> {
    check_product_order(&[s.order(), m_order])?;
    let elems: Vec<(usize, usize)> =
        s.elements().flat_map(|x| (0..m_order).map(move |a| (x, a))).collect();
    let one = elems.iter().position(|&e| e == (ONE, ZERO));
    let mul = |&(s1, m1): &(usize, usize), &(s2, m2): &(usize, usize)| {
        (s.mul(s1, s2), madd(left(s1, m2), right(m1, s2)))
    };
    let add = |&(s1, m1): &(usize, usize), &(s2, m2): &(usize, usize)| (s.add(s1, s2), madd(m1, m2));
    let (structure, elements) = from_elements(Kind::Semiring, &elems, 0, one, mul, Some(&add))?;
    let labels = elements.iter().map(|&(x, a)| format!("({},{})", s.label(x), a)).collect();
    validated(Constructed { structure: structure.with_labels(labels), elements })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{direct_product, endomorphisms};
    use crate::named;
    use crate::properties::{is_eversible, is_reversible};

    #[test]
    fn boolean_triangular_semiring() {
        let b = named::boolean();
        let m = regular_bisemimodule(&b).unwrap();
        let tri = triangular_semiring(&b, &m, &b).unwrap();
        assert_eq!(tri.structure.order(), 8);
        assert!(tri.structure.validate().valid);
        for x in tri.structure.elements() {
            assert_eq!(tri.structure.mul(0, x), 0);
            assert_eq!(tri.structure.mul(x, 0), 0);
        }
    }

    #[test]
    fn broken_compatibility_is_reported() {
        // M = B with a left action that ignores the scalar's value on 1.
        let b = named::boolean();
        let add = b.add_table().unwrap().clone();
        let left = vec![vec![0, 1], vec![0, 1]]; // 0*1 = 1 breaks the zero-scalar axiom
        let right = b.mul_table().rows();
        let m = Bisemimodule::new(add, &left, &right).unwrap();
        let err = triangular_semiring(&b, &m, &b).unwrap_err();
        assert!(matches!(err, AlgebraError::Axiom { .. }));
    }

    #[test]
    fn expectation_identity() {
        let z4 = named::zn(4);
        let e = expectation_semiring(&z4, &regular_bisemimodule(&z4).unwrap()).unwrap();
        let one = e.index_of(&(1, 0)).unwrap();
        assert_eq!(one, 1);
        for x in e.structure.elements() {
            assert_eq!(e.structure.mul(one, x), x);
        }
    }

    #[test]
    fn identity_twist_matches_plain_expectation() {
        let s = named::capped_naturals(2);
        let id = Endomorphism::identity(s.order());
        let a = sigma_expectation(&s, &id).unwrap();
        let b = expectation_semiring(&s, &regular_bisemimodule(&s).unwrap()).unwrap();
        assert_eq!(a.structure.without_labels(), b.structure.without_labels());
        assert_eq!(a.elements, b.elements);
    }

    #[test]
    fn swap_twisted_expectation_over_boolean_pairs() {
        let b = named::boolean();
        let s = direct_product(&[b.clone(), b]).unwrap();
        let swap_map: Vec<usize> = s
            .elements
            .iter()
            .map(|p| s.index_of(&vec![p[1], p[0]]).unwrap())
            .collect();
        let swap = Endomorphism { map: swap_map };
        assert!(endomorphisms(&s.structure).unwrap().contains(&swap));
        let e = sigma_expectation(&s.structure, &swap).unwrap();
        assert_eq!(e.structure.order(), 16);
        assert!(is_eversible(&e.structure).is_holds());
        assert!(is_reversible(&e.structure).is_fails());
    }
}
