use serde::{Deserialize, Serialize};

use super::{validated, Constructed};
use crate::error::{AlgebraError, Result};
use crate::structure::{from_elements, FiniteStructure, Kind, ONE, ZERO};
use crate::table::{ElementId, OpTable};
use crate::validate;

/// Largest carrier whose self-maps are enumerated.
const ENDO_MAX_ORDER: usize = 7;

/// A self-map of a finite carrier, given by its image table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Endomorphism {
    pub map: Vec<ElementId>,
}

impl Endomorphism {
    pub fn identity(order: usize) -> Self {
        Endomorphism { map: (0..order).collect() }
    }

    #[inline]
    pub fn apply(&self, x: ElementId) -> ElementId {
        self.map[x]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.map.len()];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    /// The first equation a semiring endomorphism must satisfy that this
    /// map breaks, or `None`.
    pub fn semiring_violation(&self, s: &FiniteStructure) -> Option<String> {
        if self.map.len() != s.order() || self.map.iter().any(|&y| y >= s.order()) {
            return Some("map does not fit the carrier".into());
        }
        let f = |x| self.apply(x);
        if f(ZERO) != ZERO {
            return Some(format!("f(0) = {} != 0", f(ZERO)));
        }
        if s.one().is_some_and(|one| f(one) != one) {
            return Some(format!("f(1) = {} != 1", f(ONE)));
        }
        for x in s.elements() {
            for y in s.elements() {
                if f(s.add(x, y)) != s.add(f(x), f(y)) {
                    return Some(format!("f({x}+{y}) != f({x})+f({y})"));
                }
                if f(s.mul(x, y)) != s.mul(f(x), f(y)) {
                    return Some(format!("f({x}*{y}) != f({x})*f({y})"));
                }
            }
        }
        None
    }
}

/// Maps `f` with `f(0) = 0` passing `keep` on every pair `(x, y)` once
/// both images are assigned, in lexicographic order of image tables.
fn enumerate_maps(n: usize, keep: impl Fn(&[usize], usize, usize) -> bool) -> Result<Vec<Endomorphism>> {
    if n > ENDO_MAX_ORDER {
        return Err(AlgebraError::resource(format!(
            "enumerating self-maps of an order-{n} carrier is too expensive (limit {ENDO_MAX_ORDER})"
        )));
    }
    let mut out = Vec::new();
    let mut map = vec![ZERO; n];
    fn rec(
        pos: usize,
        map: &mut Vec<usize>,
        keep: &dyn Fn(&[usize], usize, usize) -> bool,
        out: &mut Vec<Endomorphism>,
    ) {
        let n = map.len();
        if pos == n {
            out.push(Endomorphism { map: map.clone() });
            return;
        }
        for image in 0..n {
            map[pos] = image;
            let ok = (0..=pos).all(|x| keep(&map[..=pos], x, pos) && keep(&map[..=pos], pos, x));
            if ok {
                rec(pos + 1, map, keep, out);
            }
        }
    }
    if n == 0 {
        return Ok(out);
    }
    rec(1, &mut map, &keep, &mut out);
    Ok(out)
}

/// Endomorphisms of the unital magma `(M, +, 0)`.
pub fn magma_endomorphisms(add: &OpTable) -> Result<Vec<Endomorphism>> {
    if let Some(w) = validate::identity(add, ZERO) {
        return Err(AlgebraError::Axiom { axiom: "additive_neutral".into(), witness: w });
    }
    let additive = |f: &[usize], x: usize, y: usize| {
        let z = add.get(x, y);
        z >= f.len() || f[z] == add.get(f[x], f[y])
    };
    let n = add.order();
    let all = enumerate_maps(n, additive)?;
    Ok(all
        .into_iter()
        .filter(|e| (0..n).all(|x| (0..n).all(|y| additive(&e.map, x, y))))
        .collect())
}

/// Semiring endomorphisms of `s`: maps preserving `+`, `·`, 0 and 1.
pub fn endomorphisms(s: &FiniteStructure) -> Result<Vec<Endomorphism>> {
    if s.kind() != Kind::Semiring {
        return Err(AlgebraError::input("semiring endomorphisms need a semiring"));
    }
    let all = enumerate_maps(s.order(), |f, x, y| {
        if x == ONE && f[ONE] != ONE {
            return false;
        }
        let (a, m) = (s.add(x, y), s.mul(x, y));
        (a >= f.len() || f[a] == s.add(f[x], f[y])) && (m >= f.len() || f[m] == s.mul(f[x], f[y]))
    })?;
    Ok(all.into_iter().filter(|e| e.semiring_violation(s).is_none()).collect())
}

#[derive(Clone, Debug)]
pub enum EndoPnOutcome {
    /// `E_0(M)` with pointwise addition and composition `(fg)(x) = f(g(x))`.
    PnSemiring(Constructed<Endomorphism>),
    /// `f + g` is not additive: `(f+g)(x+y) != (f+g)(x) + (f+g)(y)`.
    ClosureFailure { f: Endomorphism, g: Endomorphism, x: ElementId, y: ElementId },
}

/// `E_0(M)` for a unital magma `(M, +, 0)` given by its addition table.
pub fn endomorphism_pn_semiring(add: &OpTable) -> Result<EndoPnOutcome> {
    let ends = magma_endomorphisms(add)?;
    let n = add.order();
    let sum = |f: &Endomorphism, g: &Endomorphism| Endomorphism {
        map: (0..n).map(|x| add.get(f.apply(x), g.apply(x))).collect(),
    };
    for f in &ends {
        for g in &ends {
            let h = sum(f, g);
            for x in 0..n {
                if let Some(y) = (0..n).find(|&y| h.apply(add.get(x, y)) != add.get(h.apply(x), h.apply(y))) {
                    return Ok(EndoPnOutcome::ClosureFailure { f: f.clone(), g: g.clone(), x, y });
                }
            }
        }
    }
    if ends.len() < 2 {
        return Err(AlgebraError::input("E_0(M) of a one-element magma has a single element"));
    }
    let one = ends.iter().position(|e| *e == Endomorphism::identity(n));
    let compose = |f: &Endomorphism, g: &Endomorphism| Endomorphism {
        map: (0..n).map(|x| f.apply(g.apply(x))).collect(),
    };
    let (structure, elements) =
        from_elements(Kind::PnSemiringRight, &ends, 0, one, compose, Some(&sum))?;
    let labels = elements.iter().map(|e| format!("{:?}", e.map)).collect();
    validated(Constructed { structure: structure.with_labels(labels), elements })
        .map(EndoPnOutcome::PnSemiring)
}
