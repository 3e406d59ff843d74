//! Canonical forms by brute-force minimization over relabelings.
//!
//! Only permutations fixing the designated zero (and one) are considered,
//! so two structures are isomorphic exactly when their canonical tables
//! coincide. The search is factorial in the number of free elements.

use crate::error::{AlgebraError, Result};
use crate::structure::FiniteStructure;

/// Largest order accepted by [`canonical_form`].
pub const CANONICAL_MAX_ORDER: usize = 9;

/// Lexicographically minimal relabeling of `s` (mul table first, then add).
pub fn canonical_form(s: &FiniteStructure) -> Result<FiniteStructure> {
    let n = s.order();
    if n > CANONICAL_MAX_ORDER {
        return Err(AlgebraError::resource(format!(
            "canonical form is brute force; order {n} exceeds {CANONICAL_MAX_ORDER}"
        )));
    }
    let fixed = if s.kind().has_one() { 2 } else { 1 };
    let mut inv: Vec<usize> = (0..n).collect(); // inv[new] = old
    let mut best_inv = inv.clone();
    let mut best_key = key(s, &inv, None).expect("first key always completes");
    while next_permutation(&mut inv[fixed..]) {
        if let Some(k) = key(s, &inv, Some(&best_key)) {
            best_key = k;
            best_inv.clone_from(&inv);
        }
    }
    let mut perm = vec![0; n];
    for (new, &old) in best_inv.iter().enumerate() {
        perm[old] = new;
    }
    Ok(s.relabeled(&perm).without_labels())
}

pub fn is_isomorphic(a: &FiniteStructure, b: &FiniteStructure) -> Result<bool> {
    if a.kind() != b.kind() || a.order() != b.order() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// Relabeled tables as a flat key. Returns `None` as soon as the key is
/// known to be no smaller than `bound`.
fn key(s: &FiniteStructure, inv: &[usize], bound: Option<&[u16]>) -> Option<Vec<u16>> {
    let n = s.order();
    let mut perm = vec![0usize; n];
    for (new, &old) in inv.iter().enumerate() {
        perm[old] = new;
    }
    let tables = std::iter::once(s.mul_table()).chain(s.add_table());
    let mut out = Vec::with_capacity(2 * n * n);
    let mut tied = bound.is_some();
    for t in tables {
        for i in 0..n {
            for j in 0..n {
                let v = perm[t.get(inv[i], inv[j])] as u16;
                if tied {
                    let b = bound.unwrap()[out.len()];
                    if v > b {
                        return None;
                    }
                    if v < b {
                        tied = false;
                    }
                }
                out.push(v);
            }
        }
    }
    if tied {
        // equal to the bound: not an improvement
        return None;
    }
    Some(out)
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
