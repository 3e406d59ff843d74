//! Axiom checks over operation tables. Every failure carries the
//! lexicographically smallest violating tuple.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::structure::{FiniteStructure, Kind, ONE, ZERO};
use crate::table::{ElementId, OpTable};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomFailure {
    pub axiom: String,
    pub witness: Vec<ElementId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub failures: Vec<AxiomFailure>,
}

impl ValidationReport {
    fn from_checks(checks: Vec<(&str, Option<Vec<ElementId>>)>) -> Self {
        let failures: Vec<AxiomFailure> = checks
            .into_iter()
            .filter_map(|(axiom, w)| {
                w.map(|witness| AxiomFailure { axiom: axiom.to_string(), witness })
            })
            .collect();
        ValidationReport { valid: failures.is_empty(), failures }
    }

    pub fn into_result(self) -> Result<()> {
        match self.failures.into_iter().next() {
            None => Ok(()),
            Some(f) => Err(AlgebraError::Axiom { axiom: f.axiom, witness: f.witness }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    Both,
}

const PAR_THRESHOLD: usize = 24;

/// Smallest `a` (scanning in order) for which `f(a)` yields a witness.
fn first_witness<F>(n: usize, f: F) -> Option<Vec<ElementId>>
where
    F: Fn(usize) -> Option<Vec<ElementId>> + Sync,
{
    if n >= PAR_THRESHOLD {
        (0..n).into_par_iter().find_map_first(&f)
    } else {
        (0..n).find_map(f)
    }
}

pub fn associativity(t: &OpTable) -> Option<Vec<ElementId>> {
    let n = t.order();
    first_witness(n, |a| {
        for b in 0..n {
            let ab = t.get(a, b);
            for c in 0..n {
                if t.get(ab, c) != t.get(a, t.get(b, c)) {
                    return Some(vec![a, b, c]);
                }
            }
        }
        None
    })
}

pub fn commutativity(t: &OpTable) -> Option<Vec<ElementId>> {
    let n = t.order();
    (0..n).find_map(|a| (0..n).find(|&b| t.get(a, b) != t.get(b, a)).map(|b| vec![a, b]))
}

pub fn absorbing(t: &OpTable, zero: ElementId) -> Option<Vec<ElementId>> {
    (0..t.order())
        .find(|&s| t.get(s, zero) != zero || t.get(zero, s) != zero)
        .map(|s| vec![s])
}

pub fn identity(t: &OpTable, e: ElementId) -> Option<Vec<ElementId>> {
    (0..t.order())
        .find(|&s| t.get(s, e) != s || t.get(e, s) != s)
        .map(|s| vec![s])
}

/// `u(v+w) = uv+uw`.
pub fn left_distributivity(add: &OpTable, mul: &OpTable) -> Option<Vec<ElementId>> {
    let n = mul.order();
    first_witness(n, |u| {
        for v in 0..n {
            for w in 0..n {
                if mul.get(u, add.get(v, w)) != add.get(mul.get(u, v), mul.get(u, w)) {
                    return Some(vec![u, v, w]);
                }
            }
        }
        None
    })
}

/// `(u+v)w = uw+vw`.
pub fn right_distributivity(add: &OpTable, mul: &OpTable) -> Option<Vec<ElementId>> {
    let n = mul.order();
    first_witness(n, |u| {
        for v in 0..n {
            let uv = add.get(u, v);
            for w in 0..n {
                if mul.get(uv, w) != add.get(mul.get(u, w), mul.get(v, w)) {
                    return Some(vec![u, v, w]);
                }
            }
        }
        None
    })
}

fn check_element(t: &OpTable, e: ElementId, what: &str) -> Result<()> {
    if e >= t.order() {
        return Err(AlgebraError::input(format!("{what} {e} out of range for order {}", t.order())));
    }
    Ok(())
}

fn order_check(t: &OpTable) -> Option<Vec<ElementId>> {
    (t.order() < 2).then(|| vec![t.order()])
}

pub fn validate_semigroup_with_zero(mul: &OpTable, zero: ElementId) -> Result<ValidationReport> {
    check_element(mul, zero, "zero")?;
    Ok(ValidationReport::from_checks(vec![
        ("order", order_check(mul)),
        ("associativity", associativity(mul)),
        ("zero_absorbing", absorbing(mul, zero)),
    ]))
}

pub fn validate_monoid_with_zero(
    mul: &OpTable,
    zero: ElementId,
    one: ElementId,
) -> Result<ValidationReport> {
    check_element(mul, one, "one")?;
    let mut report = validate_semigroup_with_zero(mul, zero)?;
    let extra = ValidationReport::from_checks(vec![
        ("identity", identity(mul, one)),
        ("one_ne_zero", (one == zero).then(|| vec![one])),
    ]);
    report.failures.extend(extra.failures);
    report.valid = report.failures.is_empty();
    Ok(report)
}

fn additive_parts(s: &FiniteStructure) -> Result<&OpTable> {
    s.add_table()
        .ok_or_else(|| AlgebraError::input(format!("{} has no addition", s.kind())))
}

/// Unital magma addition (zero two-sided neutral, nothing else), a monoid
/// for multiplication, the requested distributive law(s) and absorbing zero.
pub fn validate_pn_semiring(s: &FiniteStructure, side: Side) -> Result<ValidationReport> {
    let add = additive_parts(s)?;
    let mul = s.mul_table();
    let mut checks = vec![
        ("order", order_check(mul)),
        ("additive_neutral", identity(add, ZERO)),
        ("associativity", associativity(mul)),
        ("identity", identity(mul, ONE)),
    ];
    if matches!(side, Side::Left | Side::Both) {
        checks.push(("left_distributivity", left_distributivity(add, mul)));
    }
    if matches!(side, Side::Right | Side::Both) {
        checks.push(("right_distributivity", right_distributivity(add, mul)));
    }
    checks.push(("zero_absorbing", absorbing(mul, ZERO)));
    Ok(ValidationReport::from_checks(checks))
}

pub fn validate_semiring(s: &FiniteStructure) -> Result<ValidationReport> {
    let add = additive_parts(s)?;
    let mul = s.mul_table();
    Ok(ValidationReport::from_checks(vec![
        ("order", order_check(mul)),
        ("additive_neutral", identity(add, ZERO)),
        ("additive_associativity", associativity(add)),
        ("additive_commutativity", commutativity(add)),
        ("associativity", associativity(mul)),
        ("identity", identity(mul, ONE)),
        ("left_distributivity", left_distributivity(add, mul)),
        ("right_distributivity", right_distributivity(add, mul)),
        ("zero_absorbing", absorbing(mul, ZERO)),
    ]))
}

pub fn validate_structure(s: &FiniteStructure) -> ValidationReport {
    let r = match s.kind() {
        Kind::SemigroupWithZero => validate_semigroup_with_zero(s.mul_table(), ZERO),
        Kind::MonoidWithZero => validate_monoid_with_zero(s.mul_table(), ZERO, ONE),
        Kind::PnSemiringRight => validate_pn_semiring(s, Side::Right),
        Kind::PnSemiringLeft => validate_pn_semiring(s, Side::Left),
        Kind::PnSemiringDistributive => validate_pn_semiring(s, Side::Both),
        Kind::Semiring => validate_semiring(s),
    };
    r.expect("normal-form structures carry the tables their kind needs")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn t(rows: &[&[usize]]) -> OpTable {
        OpTable::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn null_semigroup_is_valid() {
        let r = validate_semigroup_with_zero(&t(&[&[0, 0], &[0, 0]]), 0).unwrap();
        assert!(r.valid);
    }

    /// Brute-force triple scan, written independently of `associativity`.
    fn associative_by_scan(rows: &[&[usize]]) -> bool {
        let n = rows.len();
        let mut ok = true;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    ok &= rows[rows[a][b]][c] == rows[a][rows[b][c]];
                }
            }
        }
        ok
    }

    #[test]
    fn left_zero_band_with_zero() {
        // ab = a, ba = b, aa = a, bb = b with 0 absorbing; a = 1, b = 2.
        let rows: &[&[usize]] = &[&[0, 0, 0], &[0, 1, 1], &[0, 2, 2]];
        let expected = associative_by_scan(rows);
        assert!(expected, "x*y = x on the nonzero part is associative");
        let r = validate_semigroup_with_zero(&t(rows), 0).unwrap();
        assert_eq!(r.valid, expected);
    }

    #[test]
    fn non_associative_table_reports_smallest_triple() {
        // 1*1 = 2, 1*2 = 0, 2*1 = 1, 2*2 = 0
        let rows: &[&[usize]] = &[&[0, 0, 0], &[0, 2, 0], &[0, 1, 0]];
        assert!(!associative_by_scan(rows));
        let r = validate_semigroup_with_zero(&t(rows), 0).unwrap();
        assert!(!r.valid);
        let f = &r.failures[0];
        assert_eq!(f.axiom, "associativity");
        let (a, b, c) = (f.witness[0], f.witness[1], f.witness[2]);
        assert_ne!(rows[rows[a][b]][c], rows[a][rows[b][c]]);
    }

    #[test]
    fn zero_out_of_range_is_an_input_error() {
        assert!(validate_semigroup_with_zero(&t(&[&[0, 0], &[0, 0]]), 5).is_err());
    }

    #[test]
    fn monoid_checks() {
        let b = named::boolean();
        assert!(validate_monoid_with_zero(b.mul_table(), 0, 1).unwrap().valid);
        let z4 = named::zn(4);
        assert!(validate_monoid_with_zero(z4.mul_table(), 0, 1).unwrap().valid);
        // 1 is not an identity here: 1*2 = 1.
        let bad = t(&[&[0, 0, 0], &[0, 1, 1], &[0, 2, 2]]);
        let r = validate_monoid_with_zero(&bad, 0, 1).unwrap();
        assert!(!r.valid);
        assert_eq!(r.failures[0].axiom, "identity");
        assert_eq!(r.failures[0].witness, vec![2]);
    }

    #[test]
    fn semirings_validate() {
        assert!(validate_semiring(&named::boolean()).unwrap().valid);
        assert!(validate_semiring(&named::capped_naturals(2)).unwrap().valid);
        assert!(validate_semiring(&named::zn(4)).unwrap().valid);
    }

    #[test]
    fn corrupted_boolean_addition_fails() {
        let b = named::boolean();
        // add[1][1] = 0 turns B into Z2, which is still a semiring.
        let add = OpTable::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        let s = FiniteStructure::new(Kind::Semiring, b.mul_table().clone(), Some(add)).unwrap();
        assert!(validate_semiring(&s).unwrap().valid);
        // 1+0 = 0 breaks neutrality.
        let add = OpTable::from_rows(&[vec![0, 1], vec![0, 1]]).unwrap();
        let s = FiniteStructure::new(Kind::Semiring, b.mul_table().clone(), Some(add)).unwrap();
        let r = validate_semiring(&s).unwrap();
        assert!(!r.valid);
        assert_eq!(r.failures[0].axiom, "additive_neutral");
    }

    #[test]
    fn planted_right_distributivity_defect() {
        let s = named::capped_naturals(2);
        let mut add = s.add_table().unwrap().rows();
        add[2][2] = 1; // 2+2 = 1 instead of 2
        let bad = FiniteStructure::new(
            Kind::PnSemiringRight,
            s.mul_table().clone(),
            Some(OpTable::from_rows(&add).unwrap()),
        )
        .unwrap();
        let r = validate_pn_semiring(&bad, Side::Right).unwrap();
        assert!(!r.valid);
        let f = r.failures.iter().find(|f| f.axiom == "right_distributivity").unwrap();
        let (u, v, w) = (f.witness[0], f.witness[1], f.witness[2]);
        assert_ne!(bad.mul(bad.add(u, v), w), bad.add(bad.mul(u, w), bad.mul(v, w)));
    }

    #[test]
    fn non_associative_addition_is_fine_for_pn_semirings() {
        // Order 3: 0 neutral, 1+1 = 2, 1+2 = 2+1 = 1, 2+2 = 2;
        // mul: 1 identity, 2*2 = 0.
        // Search for an order-3 unital magma addition that is non-associative
        // and right distributive over this multiplication.
        let mul = t(&[&[0, 0, 0], &[0, 1, 2], &[0, 2, 0]]);
        let mut found = None;
        for code in 0..81usize {
            let d = [code % 3, code / 3 % 3, code / 9 % 3, code / 27];
            let add = t(&[&[0, 1, 2], &[1, d[0], d[1]], &[2, d[2], d[3]]]);
            let s = FiniteStructure::new(Kind::PnSemiringRight, mul.clone(), Some(add.clone()))
                .unwrap();
            if associativity(&add).is_some() && validate_pn_semiring(&s, Side::Right).unwrap().valid
            {
                found = Some(s);
                break;
            }
        }
        let s = found.expect("a non-associative right PN-semiring of order 3 exists");
        assert!(!validate_semiring(&s).unwrap().valid);
    }

    #[test]
    fn semirings_are_distributive_pn_semirings() {
        for s in [named::boolean(), named::zn(4), named::capped_naturals(3)] {
            assert!(validate_pn_semiring(&s, Side::Both).unwrap().valid);
        }
    }
}
