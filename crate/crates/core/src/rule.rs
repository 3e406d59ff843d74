//! Structures on countable carriers given by rules instead of tables.
//!
//! A bounded enumerator lists a finite window of the carrier. Positive
//! zero-divisor claims are settled by exhibiting a witness inside the
//! window; negative claims are only conclusive when the structure supplies
//! an exact argument through one of its hooks, and are otherwise reported
//! as unknown at the bound.

use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::properties::{PropertyReport, Verdict};

pub trait RuleStructure {
    type Element: Clone + Eq + Hash + Debug;

    fn zero(&self) -> Self::Element;
    fn one(&self) -> Option<Self::Element>;
    fn mul(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn add(&self, _a: &Self::Element, _b: &Self::Element) -> Option<Self::Element> {
        None
    }
    /// Finite window of the carrier; must grow monotonically with `bound`
    /// and always contain the zero and the one.
    fn enumerate(&self, bound: usize) -> Vec<Self::Element>;
    /// Canonical byte encoding.
    fn encode(&self, e: &Self::Element) -> Vec<u8>;

    /// Returns true only when `a` provably has no nonzero `x` with `ax = 0`.
    fn certainly_not_left_zero_divisor(&self, _a: &Self::Element) -> bool {
        false
    }
    /// Returns true only when `a` provably has no nonzero `x` with `xa = 0`.
    fn certainly_not_right_zero_divisor(&self, _a: &Self::Element) -> bool {
        false
    }
}

/// Three-valued membership answer with the witness that settled it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership<E> {
    pub verdict: Verdict,
    pub witness: Option<E>,
}

impl<E> Membership<E> {
    pub fn is_member(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn is_non_member(&self) -> bool {
        self.verdict == Verdict::Fails
    }
}

fn membership<R: RuleStructure>(
    r: &R,
    a: &R::Element,
    window: &[R::Element],
    left: bool,
) -> Membership<R::Element> {
    let zero = r.zero();
    let witness = window.iter().find(|x| {
        **x != zero && if left { r.mul(a, x) == zero } else { r.mul(x, a) == zero }
    });
    if let Some(x) = witness {
        return Membership { verdict: Verdict::Holds, witness: Some(x.clone()) };
    }
    let certain = if left {
        r.certainly_not_left_zero_divisor(a)
    } else {
        r.certainly_not_right_zero_divisor(a)
    };
    Membership {
        verdict: if certain { Verdict::Fails } else { Verdict::UnknownAtBound },
        witness: None,
    }
}

pub fn rule_left_zero_divisor<R: RuleStructure>(
    r: &R,
    a: &R::Element,
    bound: usize,
) -> Membership<R::Element> {
    membership(r, a, &r.enumerate(bound), true)
}

pub fn rule_right_zero_divisor<R: RuleStructure>(
    r: &R,
    a: &R::Element,
    bound: usize,
) -> Membership<R::Element> {
    membership(r, a, &r.enumerate(bound), false)
}

/// Zero-divisor membership for every element of the window.
#[derive(Clone, Debug)]
pub struct RuleZeroDivisors<E> {
    pub elements: Vec<E>,
    pub left: Vec<Membership<E>>,
    pub right: Vec<Membership<E>>,
}

pub fn rule_zero_divisor_sets<R: RuleStructure>(r: &R, bound: usize) -> RuleZeroDivisors<R::Element> {
    let elements = r.enumerate(bound);
    let left = elements.iter().map(|a| membership(r, a, &elements, true)).collect();
    let right = elements.iter().map(|a| membership(r, a, &elements, false)).collect();
    RuleZeroDivisors { elements, left, right }
}

/// Eversibility on the window. A conclusive failure is an element proved
/// to be a zero-divisor on one side and proved not to be one on the other;
/// witness and bound refer to positions in `enumerate(bound)`. Without such
/// an element the verdict stays unknown: the window cannot confirm a
/// universal claim about the whole carrier.
pub fn rule_is_eversible<R: RuleStructure>(r: &R, bound: usize) -> PropertyReport {
    let z = rule_zero_divisor_sets(r, bound);
    let broken = (0..z.elements.len()).find(|&i| {
        (z.left[i].is_member() && z.right[i].is_non_member())
            || (z.right[i].is_member() && z.left[i].is_non_member())
    });
    match broken {
        Some(i) => PropertyReport::fails("eversible", vec![i]).with_bound(bound),
        None => unknown("eversible", bound),
    }
}

/// `Z_r ⊆ Z_l` on the window: every element with a right witness inside
/// the window also has a left witness inside it. A failure lists the
/// element's position; success is reported as unknown at the bound.
pub fn rule_right_within_left<R: RuleStructure>(r: &R, bound: usize) -> PropertyReport {
    let z = rule_zero_divisor_sets(r, bound);
    match (0..z.elements.len()).find(|&i| z.right[i].is_member() && !z.left[i].is_member()) {
        Some(i) => PropertyReport::fails("right_within_left", vec![i]).with_bound(bound),
        None => unknown("right_within_left", bound),
    }
}

fn unknown(property: &str, bound: usize) -> PropertyReport {
    PropertyReport {
        property: property.into(),
        verdict: Verdict::UnknownAtBound,
        witness: None,
        bound: Some(bound),
    }
}

/// Upper triangular `[[a, b], [0, c]]` with `a` a natural number and `b`,
/// `c` in the integers mod 2, under formal matrix multiplication.
#[derive(Clone, Copy, Debug, Default)]
pub struct NaturalTriangular;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tri {
    pub a: u64,
    pub b: u8,
    pub c: u8,
}

impl Tri {
    pub const fn new(a: u64, b: u8, c: u8) -> Tri {
        Tri { a, b: b & 1, c: c & 1 }
    }
}

impl std::fmt::Display for Tri {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[[{}, {}], [0, {}]]", self.a, self.b, self.c)
    }
}

impl RuleStructure for NaturalTriangular {
    type Element = Tri;

    fn zero(&self) -> Tri {
        Tri::new(0, 0, 0)
    }

    fn one(&self) -> Option<Tri> {
        Some(Tri::new(1, 0, 1))
    }

    fn mul(&self, x: &Tri, y: &Tri) -> Tri {
        let a = x.a.checked_mul(y.a).expect("entry overflow");
        let b = ((x.a & 1) as u8 * y.b + x.b * y.c) & 1;
        Tri::new(a, b, x.c * y.c)
    }

    /// `a` runs over `0..=max(bound, 1)`, `b` and `c` over both residues.
    fn enumerate(&self, bound: usize) -> Vec<Tri> {
        let mut out = Vec::with_capacity(4 * (bound + 1));
        for a in 0..=bound.max(1) as u64 {
            for b in 0..2 {
                for c in 0..2 {
                    out.push(Tri::new(a, b, c));
                }
            }
        }
        out
    }

    fn encode(&self, e: &Tri) -> Vec<u8> {
        let mut v = e.a.to_le_bytes().to_vec();
        v.push(e.b);
        v.push(e.c);
        v
    }

    /// `(x, y, z) * (a, b, c) = (xa, xb + yc, zc)`. With `a != 0`, `xa = 0`
    /// in the naturals forces `x = 0`; with `c = 1`, `yc = 0` and `zc = 0`
    /// force `y = z = 0`.
    fn certainly_not_right_zero_divisor(&self, d: &Tri) -> bool {
        d.a != 0 && d.c != 0
    }

    /// `(a, b, c) * (x, y, z) = (ax, ay + bz, cz)`. With `a` odd and
    /// `c = 1`: `x = 0`, `z = 0`, then `ay = y = 0`.
    fn certainly_not_left_zero_divisor(&self, d: &Tri) -> bool {
        d.a % 2 == 1 && d.c != 0
    }
}

/// Which of the four cases for a right witness `W = (x, y, z)` of `D`
/// (`WD = 0`) applies, by whether `x` and `z` vanish.
pub fn right_witness_case(w: &Tri) -> u8 {
    match (w.a == 0, w.c == 0) {
        (true, true) => 1,
        (true, false) => 2,
        (false, true) => 3,
        (false, false) => 4,
    }
}
