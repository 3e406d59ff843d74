//! Derived structures: products, matrices, triangular and expectation
//! semirings, endomorphism PN-semirings, truncated polynomial rings and
//! localizations. Every output is validated before it is returned.

mod bisemimodule;
mod endo;
mod localize;
pub mod poly;
mod product;

pub use bisemimodule::{
    expectation_semiring, regular_bisemimodule, sigma_expectation, triangular_semiring,
    Bisemimodule, BisemimoduleFile,
};
pub use endo::{
    endomorphism_pn_semiring, endomorphisms, magma_endomorphisms, EndoPnOutcome, Endomorphism,
};
pub use localize::{central_cancellable_sets, localize, Fraction, Localization};
pub use poly::{
    laurent_zero_product_check, poly_bounded_reversible, poly_zero_product_pairs,
    power_series_truncated, BoundedPolynomial, LaurentReport,
};
pub use product::{direct_product, matrix_semiring};

use crate::error::{AlgebraError, Result};
use crate::structure::FiniteStructure;
use crate::table::{ElementId, MAX_ORDER};

/// A constructed structure together with the value each element stands for.
#[derive(Clone, Debug)]
pub struct Constructed<T> {
    pub structure: FiniteStructure,
    pub elements: Vec<T>,
}

impl<T: PartialEq> Constructed<T> {
    pub fn index_of(&self, value: &T) -> Option<ElementId> {
        self.elements.iter().position(|e| e == value)
    }
}

impl<T: PartialEq + Clone> Constructed<Vec<T>> {
    /// Convenience for vector-valued elements given as slices.
    pub fn index_of_slice(&self, value: &[T]) -> Option<ElementId> {
        self.elements.iter().position(|e| e.as_slice() == value)
    }
}

pub(crate) fn check_product_order(parts: &[usize]) -> Result<usize> {
    let mut total: usize = 1;
    for &p in parts {
        total = total.checked_mul(p).filter(|&t| t <= MAX_ORDER).ok_or_else(|| {
            AlgebraError::resource(format!("construction exceeds the order cap of {MAX_ORDER}"))
        })?;
    }
    Ok(total)
}

/// Validates a freshly built structure; a failure here is a construction bug
/// or a violated precondition, reported with its witness.
pub(crate) fn validated<T>(c: Constructed<T>) -> Result<Constructed<T>> {
    c.structure.validate().into_result()?;
    Ok(c)
}

/// All tuples over the given component orders, in lexicographic order.
pub(crate) fn tuples(orders: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &n in orders {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..n).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}
