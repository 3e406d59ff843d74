use serde::{Deserialize, Serialize};

use super::{check_product_order, tuples, validated, Constructed};
use crate::error::{AlgebraError, Result};
use crate::properties::criteria::{digits, ARMENDARIZ_EXHAUSTIVE_LIMIT};
use crate::properties::PropertyReport;
use crate::structure::{from_elements, FiniteStructure, Kind, ONE, ZERO};

/// A polynomial with coefficients in a finite semiring. For Laurent
/// polynomials, `shift = n` stands for an overall factor `X^(-n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundedPolynomial {
    pub coefficients: Vec<usize>,
    #[serde(default)]
    pub shift: usize,
}

impl BoundedPolynomial {
    pub fn is_zero(&self) -> bool {
        is_zero_poly(&self.coefficients)
    }
}

/// Exact product of coefficient vectors; the result has length
/// `f.len() + g.len() - 1`.
pub fn convolve(s: &FiniteStructure, f: &[usize], g: &[usize]) -> Vec<usize> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ZERO; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == ZERO {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = s.add(out[i + j], s.mul(a, b));
        }
    }
    out
}

pub fn is_zero_poly(p: &[usize]) -> bool {
    p.iter().all(|&c| c == ZERO)
}

fn polynomial_count(s: &FiniteStructure, degree: usize) -> Result<usize> {
    if s.kind() != Kind::Semiring {
        return Err(AlgebraError::input("polynomial checks need a semiring"));
    }
    let polys = (s.order() as u128).checked_pow(degree as u32 + 1).unwrap_or(u128::MAX);
    if polys.saturating_mul(polys) > ARMENDARIZ_EXHAUSTIVE_LIMIT {
        return Err(AlgebraError::resource(format!(
            "too many polynomial pairs over an order-{} semiring at degree {degree}",
            s.order()
        )));
    }
    Ok(polys as usize)
}

/// Every pair `(f, g)` of polynomials of degree at most `degree` whose exact
/// product vanishes, in lexicographic order of `(f, g)` by coefficient list
/// (constant term least significant).
pub fn poly_zero_product_pairs(
    s: &FiniteStructure,
    degree: usize,
) -> Result<impl Iterator<Item = (Vec<usize>, Vec<usize>)> + '_> {
    let count = polynomial_count(s, degree)?;
    let n = s.order();
    let all: Vec<Vec<usize>> = (0..count).map(|k| digits(k, n, degree + 1)).collect();
    Ok((0..count * count).filter_map(move |k| {
        let (f, g) = (&all[k / count], &all[k % count]);
        is_zero_poly(&convolve(s, f, g)).then(|| (f.clone(), g.clone()))
    }))
}

/// `S[X]` reversibility restricted to polynomials of degree at most
/// `degree`. Witness: `f` then `g`, with `fg = 0` and `gf != 0`.
pub fn poly_bounded_reversible(s: &FiniteStructure, degree: usize) -> Result<PropertyReport> {
    for (f, g) in poly_zero_product_pairs(s, degree)? {
        if !is_zero_poly(&convolve(s, &g, &f)) {
            let mut w = f;
            w.extend(g);
            return Ok(PropertyReport::fails("poly_reversible", w).with_bound(degree));
        }
    }
    Ok(PropertyReport::holds("poly_reversible").with_bound(degree))
}

/// `S[X] / (X^k)`: coefficient vectors of length `k` with convolution
/// truncated at degree `k - 1`.
pub fn power_series_truncated(s: &FiniteStructure, k: usize) -> Result<Constructed<Vec<usize>>> {
    if s.kind() != Kind::Semiring {
        return Err(AlgebraError::input("power series need a semiring"));
    }
    if k == 0 {
        return Err(AlgebraError::input("truncation length must be positive"));
    }
    check_product_order(&vec![s.order(); k])?;
    let elems = tuples(&vec![s.order(); k]);
    let mut unit = vec![ZERO; k];
    unit[0] = ONE;
    let one = elems.iter().position(|e| *e == unit);
    let mul = |a: &Vec<usize>, b: &Vec<usize>| {
        let mut c = convolve(s, a, b);
        c.truncate(k);
        c
    };
    let add = |a: &Vec<usize>, b: &Vec<usize>| -> Vec<usize> {
        a.iter().zip(b).map(|(&x, &y)| s.add(x, y)).collect()
    };
    let (structure, elements) = from_elements(Kind::Semiring, &elems, 0, one, mul, Some(&add))?;
    let labels = elements.iter().map(|e| series_label(s, e)).collect();
    validated(Constructed { structure: structure.with_labels(labels), elements })
}

fn series_label(s: &FiniteStructure, coeffs: &[usize]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != ZERO)
        .map(|(i, &c)| match i {
            0 => s.label(c),
            1 => format!("{}X", s.label(c)),
            _ => format!("{}X^{i}", s.label(c)),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentReport {
    pub laurent: PropertyReport,
    pub polynomial: PropertyReport,
    pub agree: bool,
}

/// Product of Laurent polynomials in exponent-offset form: the result's
/// lowest exponent is the sum of the factors' lowest exponents.
fn laurent_mul(s: &FiniteStructure, a: &BoundedPolynomial, b: &BoundedPolynomial) -> BoundedPolynomial {
    let low = -(a.shift as isize) - b.shift as isize;
    let len = a.coefficients.len() + b.coefficients.len() - 1;
    let mut coefficients = vec![ZERO; len];
    for (i, &x) in a.coefficients.iter().enumerate() {
        let ei = i as isize - a.shift as isize;
        for (j, &y) in b.coefficients.iter().enumerate() {
            let ej = j as isize - b.shift as isize;
            let slot = (ei + ej - low) as usize;
            coefficients[slot] = s.add(coefficients[slot], s.mul(x, y));
        }
    }
    BoundedPolynomial { coefficients, shift: (-low) as usize }
}

/// Bounded reversibility of `S[X; X^-1]` on elements `X^(-n) f` with
/// `n <= 1` and `deg f <= degree`, compared with bounded reversibility of
/// `S[X]` at the same degree. Laurent witness: `n1, f, n2, g`.
pub fn laurent_zero_product_check(s: &FiniteStructure, degree: usize) -> Result<LaurentReport> {
    let count = polynomial_count(s, degree)?;
    let n = s.order();
    let polys: Vec<Vec<usize>> = (0..count).map(|k| digits(k, n, degree + 1)).collect();
    let elems: Vec<BoundedPolynomial> = (0..=1)
        .flat_map(|shift| {
            polys.iter().map(move |c| BoundedPolynomial { coefficients: c.clone(), shift })
        })
        .collect();
    let mut laurent = PropertyReport::holds("laurent_reversible").with_bound(degree);
    'outer: for a in &elems {
        for b in &elems {
            if laurent_mul(s, a, b).is_zero() && !laurent_mul(s, b, a).is_zero() {
                let mut w = vec![a.shift];
                w.extend(&a.coefficients);
                w.push(b.shift);
                w.extend(&b.coefficients);
                laurent = PropertyReport::fails("laurent_reversible", w).with_bound(degree);
                break 'outer;
            }
        }
    }
    let polynomial = poly_bounded_reversible(s, degree)?;
    let agree = laurent.verdict == polynomial.verdict;
    Ok(LaurentReport { laurent, polynomial, agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::is_isomorphic;
    use crate::named;
    use crate::properties::is_reversible;

    #[test]
    fn boolean_degree_one_zero_products_are_trivial() {
        let b = named::boolean();
        let pairs: Vec<_> = poly_zero_product_pairs(&b, 1).unwrap().collect();
        assert!(pairs.iter().all(|(f, g)| is_zero_poly(f) || is_zero_poly(g)));
        // 4 pairs (0, g) plus 3 more (f, 0) with f nonzero.
        assert_eq!(pairs.len(), 7);
    }

    #[test]
    fn zero_times_anything() {
        let s = named::zn(3);
        let pairs: Vec<_> = poly_zero_product_pairs(&s, 1).unwrap().collect();
        for g in 0..9 {
            assert!(pairs.contains(&(vec![0, 0], digits(g, 3, 2))));
        }
    }

    #[test]
    fn series_of_length_one_is_the_base() {
        let s = named::zn(4);
        let p = power_series_truncated(&s, 1).unwrap();
        assert!(is_isomorphic(&p.structure, &s).unwrap());
    }

    #[test]
    fn one_plus_x_is_not_a_zero_divisor_over_boolean() {
        let b = named::boolean();
        let p = power_series_truncated(&b, 3).unwrap();
        let u = p.index_of_slice(&[1, 1, 0]).unwrap();
        for x in p.structure.nonzero() {
            assert_ne!(p.structure.mul(u, x), 0);
        }
        assert!(is_reversible(&p.structure).is_holds());
    }

    #[test]
    fn shifts_do_not_change_zero_ness() {
        let s = named::zn(4);
        let f = BoundedPolynomial { coefficients: vec![2, 0], shift: 1 };
        let g = BoundedPolynomial { coefficients: vec![0, 2], shift: 0 };
        let p = laurent_mul(&s, &f, &g);
        assert!(p.is_zero());
        assert_eq!(p.shift, 1);
        let h = BoundedPolynomial { coefficients: vec![1, 0], shift: 1 };
        assert!(!laurent_mul(&s, &h, &h).is_zero());
    }

    #[test]
    fn laurent_agrees_over_boolean() {
        let r = laurent_zero_product_check(&named::boolean(), 2).unwrap();
        assert!(r.agree);
        assert!(r.laurent.is_holds() && r.polynomial.is_holds());
    }

    #[test]
    fn matrices_are_not_polynomially_reversible() {
        let m = crate::constructions::matrix_semiring(&named::zn(2), 2).unwrap().structure;
        // 16^2 coefficient vectors at degree 1 would be fine; degree 0 is
        // the plain reversibility check.
        let r = poly_bounded_reversible(&m, 0).unwrap();
        assert!(r.is_fails());
    }
}
