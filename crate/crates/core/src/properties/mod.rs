//! Decision procedures for the zero-divisor properties over table structures.
//!
//! Every checker scans the full carrier and, on failure, reports the
//! lexicographically smallest violating tuple as its witness.

pub(crate) mod criteria;
mod ideal;

pub use criteria::{eversible_condition2, is_armendariz_bounded, Condition2Report, Sampling};
pub use ideal::{
    generated_two_sided_ideal_is_nil, ideal_closure, is_nil_ideal, verify_cohn, IdealDescriptor,
    Sidedness,
};

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::structure::{FiniteStructure, ZERO};
use crate::table::ElementId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    UnknownAtBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: String,
    pub verdict: Verdict,
    pub witness: Option<Vec<ElementId>>,
    pub bound: Option<usize>,
}

impl PropertyReport {
    pub fn holds(property: impl Into<String>) -> Self {
        PropertyReport { property: property.into(), verdict: Verdict::Holds, witness: None, bound: None }
    }

    pub fn fails(property: impl Into<String>, witness: Vec<ElementId>) -> Self {
        PropertyReport {
            property: property.into(),
            verdict: Verdict::Fails,
            witness: Some(witness),
            bound: None,
        }
    }

    fn from_witness(property: &str, witness: Option<Vec<ElementId>>) -> Self {
        match witness {
            Some(w) => Self::fails(property, w),
            None => Self::holds(property),
        }
    }

    pub fn with_bound(mut self, bound: usize) -> Self {
        self.bound = Some(bound);
        self
    }

    pub fn is_holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.verdict == Verdict::Fails
    }
}

/// `Z_l`, `Z_r`, their union and the proper (nonzero) part, as sorted lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroDivisorSets {
    pub left: Vec<ElementId>,
    pub right: Vec<ElementId>,
    pub all: Vec<ElementId>,
    pub proper: Vec<ElementId>,
}

impl ZeroDivisorSets {
    pub fn is_left(&self, s: ElementId) -> bool {
        self.left.binary_search(&s).is_ok()
    }

    pub fn is_right(&self, s: ElementId) -> bool {
        self.right.binary_search(&s).is_ok()
    }
}

pub fn is_left_zero_divisor(s: &FiniteStructure, x: ElementId) -> bool {
    s.nonzero().any(|y| s.mul(x, y) == ZERO)
}

pub fn is_right_zero_divisor(s: &FiniteStructure, x: ElementId) -> bool {
    s.nonzero().any(|y| s.mul(y, x) == ZERO)
}

pub fn zero_divisor_sets(s: &FiniteStructure) -> ZeroDivisorSets {
    let left: Vec<_> = s.elements().filter(|&x| is_left_zero_divisor(s, x)).collect();
    let right: Vec<_> = s.elements().filter(|&x| is_right_zero_divisor(s, x)).collect();
    let all: Vec<_> = s
        .elements()
        .filter(|x| left.binary_search(x).is_ok() || right.binary_search(x).is_ok())
        .collect();
    let proper = all.iter().copied().filter(|&x| x != ZERO).collect();
    ZeroDivisorSets { left, right, all, proper }
}

/// `st = 0` implies `ts = 0`.
pub fn is_reversible(s: &FiniteStructure) -> PropertyReport {
    let w = s.elements().find_map(|a| {
        s.elements()
            .find(|&b| s.mul(a, b) == ZERO && s.mul(b, a) != ZERO)
            .map(|b| vec![a, b])
    });
    PropertyReport::from_witness("reversible", w)
}

/// `Z_l(S) = Z_r(S)`; the witness lies in the symmetric difference.
pub fn is_eversible(s: &FiniteStructure) -> PropertyReport {
    let w = s
        .elements()
        .find(|&x| is_left_zero_divisor(s, x) != is_right_zero_divisor(s, x))
        .map(|x| vec![x]);
    PropertyReport::from_witness("eversible", w)
}

/// No proper zero-divisors.
pub fn is_entire(s: &FiniteStructure) -> PropertyReport {
    let w = s
        .nonzero()
        .find_map(|a| s.nonzero().find(|&b| s.mul(a, b) == ZERO).map(|b| vec![a, b]));
    PropertyReport::from_witness("entire", w)
}

/// `asb = 0` for all `s` forces `a = 0` or `b = 0`.
pub fn is_prime(s: &FiniteStructure) -> PropertyReport {
    let w = s.nonzero().find_map(|a| {
        s.nonzero()
            .find(|&b| s.elements().all(|x| s.mul(s.mul(a, x), b) == ZERO))
            .map(|b| vec![a, b])
    });
    PropertyReport::from_witness("prime", w)
}

/// `asa = 0` for all `s` forces `a = 0`.
pub fn is_semiprime(s: &FiniteStructure) -> PropertyReport {
    let w = s
        .nonzero()
        .find(|&a| s.elements().all(|x| s.mul(s.mul(a, x), a) == ZERO))
        .map(|a| vec![a]);
    PropertyReport::from_witness("semiprime", w)
}

/// `s^2 = 0` implies `s = 0`.
pub fn is_nilpotent_free(s: &FiniteStructure) -> PropertyReport {
    let w = s.nonzero().find(|&a| s.mul(a, a) == ZERO).map(|a| vec![a]);
    PropertyReport::from_witness("nilpotent_free", w)
}

/// `rst = 0` implies `srt = 0`.
pub fn is_symmetric(s: &FiniteStructure) -> PropertyReport {
    let w = s.elements().find_map(|r| {
        s.elements().find_map(|x| {
            let rx = s.mul(r, x);
            let xr = s.mul(x, r);
            s.elements()
                .find(|&t| s.mul(rx, t) == ZERO && s.mul(xr, t) != ZERO)
                .map(|t| vec![r, x, t])
        })
    });
    PropertyReport::from_witness("symmetric", w)
}

pub fn is_commutative(s: &FiniteStructure) -> PropertyReport {
    let w = s.elements().find_map(|a| {
        s.elements().find(|&b| s.mul(a, b) != s.mul(b, a)).map(|b| vec![a, b])
    });
    PropertyReport::from_witness("commutative", w)
}

/// `s + t = 0` implies `s = t = 0`.
pub fn is_zerosumfree(s: &FiniteStructure) -> Result<PropertyReport> {
    require_add(s)?;
    let w = s.elements().find_map(|a| {
        s.elements()
            .find(|&b| (a, b) != (ZERO, ZERO) && s.add(a, b) == ZERO)
            .map(|b| vec![a, b])
    });
    Ok(PropertyReport::from_witness("zerosumfree", w))
}

pub(crate) fn require_add(s: &FiniteStructure) -> Result<()> {
    if s.add_table().is_none() {
        return Err(AlgebraError::input(format!("{} has no addition", s.kind())));
    }
    Ok(())
}

/// Minimal `k` with `x^k = 0`, if any.
pub fn nilpotency_index(s: &FiniteStructure, x: ElementId) -> Option<usize> {
    let mut p = x;
    for k in 1..=s.order() {
        if p == ZERO {
            return Some(k);
        }
        p = s.mul(p, x);
    }
    None
}

pub fn is_nilpotent(s: &FiniteStructure, x: ElementId) -> bool {
    nilpotency_index(s, x).is_some()
}

/// All nilpotent elements with their minimal index. The power sequence of
/// any element repeats within `order` steps, so `k <= order` is exhaustive.
pub fn nilpotent_elements(s: &FiniteStructure) -> Vec<(ElementId, usize)> {
    s.elements().filter_map(|x| nilpotency_index(s, x).map(|k| (x, k))).collect()
}

/// `(Ann_l(x), Ann_r(x))`: elements killing `x` from the left and the right.
pub fn annihilators(s: &FiniteStructure, x: ElementId) -> (Vec<ElementId>, Vec<ElementId>) {
    let left = s.elements().filter(|&y| s.mul(y, x) == ZERO).collect();
    let right = s.elements().filter(|&y| s.mul(x, y) == ZERO).collect();
    (left, right)
}

/// Names accepted by [`check_property`] and the counterexample search.
pub const PROPERTY_NAMES: &[&str] = &[
    "reversible",
    "eversible",
    "entire",
    "prime",
    "semiprime",
    "nilpotent_free",
    "symmetric",
    "commutative",
    "zerosumfree",
    "armendariz",
    "cohn",
    "eversible_condition2",
];

/// Evaluates a property by name. Properties needing additive structure
/// report an input error on multiplicative-only kinds.
pub fn check_property(s: &FiniteStructure, name: &str, degree: usize) -> Result<PropertyReport> {
    Ok(match name {
        "reversible" => is_reversible(s),
        "eversible" => is_eversible(s),
        "entire" => is_entire(s),
        "prime" => is_prime(s),
        "semiprime" => is_semiprime(s),
        "nilpotent_free" => is_nilpotent_free(s),
        "symmetric" => is_symmetric(s),
        "commutative" => is_commutative(s),
        "zerosumfree" => is_zerosumfree(s)?,
        "armendariz" => is_armendariz_bounded(s, degree, None)?,
        "cohn" => verify_cohn(s),
        "eversible_condition2" => eversible_condition2(s)?.restricted,
        other => return Err(AlgebraError::input(format!("unknown property `{other}`"))),
    })
}

/// Re-evaluates a failing report's witness against the defining formula.
/// Returns true when the witness really violates the property.
pub fn recheck_witness(s: &FiniteStructure, report: &PropertyReport) -> bool {
    let Some(w) = &report.witness else { return false };
    let m = |a, b| s.mul(a, b);
    let nz = |x: usize| x != ZERO;
    match (report.property.as_str(), w.as_slice()) {
        ("reversible", &[a, b]) => m(a, b) == ZERO && m(b, a) != ZERO,
        ("eversible", &[x]) => is_left_zero_divisor(s, x) != is_right_zero_divisor(s, x),
        ("entire", &[a, b]) => nz(a) && nz(b) && m(a, b) == ZERO,
        ("prime", &[a, b]) => nz(a) && nz(b) && s.elements().all(|x| m(m(a, x), b) == ZERO),
        ("semiprime", &[a]) => nz(a) && s.elements().all(|x| m(m(a, x), a) == ZERO),
        ("nilpotent_free", &[a]) => nz(a) && m(a, a) == ZERO,
        ("symmetric", &[r, x, t]) => m(m(r, x), t) == ZERO && m(m(x, r), t) != ZERO,
        ("commutative", &[a, b]) => m(a, b) != m(b, a),
        ("zerosumfree", &[a, b]) => (a, b) != (ZERO, ZERO) && s.add(a, b) == ZERO,
        ("armendariz", w) => criteria::recheck_armendariz(s, w),
        ("eversible_condition2" | "eversible_condition2_literal", &[a, b]) => {
            criteria::condition2_fails_at(s, a, b)
        }
        (p, w) if p.starts_with("cohn/") => ideal::recheck_cohn(s, p, w),
        _ => false,
    }
}
