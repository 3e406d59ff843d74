//! Finite structures given by operation tables.
//!
//! Every [`FiniteStructure`] is kept in normal form: element `0` is the
//! zero and, for kinds with an identity, element `1` is the one. Loaders
//! permute incoming tables into this form.

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::table::{check_order, ElementId, OpTable};
use crate::validate::{self, ValidationReport};

pub const ZERO: ElementId = 0;
pub const ONE: ElementId = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    SemigroupWithZero,
    MonoidWithZero,
    PnSemiringRight,
    PnSemiringLeft,
    PnSemiringDistributive,
    Semiring,
}

impl Kind {
    pub const ALL: [Kind; 6] = [
        Kind::SemigroupWithZero,
        Kind::MonoidWithZero,
        Kind::PnSemiringRight,
        Kind::PnSemiringLeft,
        Kind::PnSemiringDistributive,
        Kind::Semiring,
    ];

    pub fn has_one(self) -> bool {
        self != Kind::SemigroupWithZero
    }

    pub fn has_add(self) -> bool {
        !matches!(self, Kind::SemigroupWithZero | Kind::MonoidWithZero)
    }

    /// Kinds where both distributive laws hold.
    pub fn is_distributive(self) -> bool {
        matches!(self, Kind::PnSemiringDistributive | Kind::Semiring)
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::SemigroupWithZero => "semigroup_with_zero",
            Kind::MonoidWithZero => "monoid_with_zero",
            Kind::PnSemiringRight => "pn_semiring_right",
            Kind::PnSemiringLeft => "pn_semiring_left",
            Kind::PnSemiringDistributive => "pn_semiring_distributive",
            Kind::Semiring => "semiring",
        }
    }

    pub fn parse(s: &str) -> Result<Kind> {
        Kind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| AlgebraError::input(format!("unknown structure kind `{s}`")))
    }
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteStructure {
    kind: Kind,
    mul: OpTable,
    add: Option<OpTable>,
    labels: Option<Vec<String>>,
}

impl std::fmt::Debug for FiniteStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut d = f.debug_struct("FiniteStructure");
        d.field("kind", &self.kind).field("mul", &self.mul);
        if let Some(add) = &self.add {
            d.field("add", add);
        }
        d.finish()
    }
}

impl FiniteStructure {
    /// Assembles a structure already in normal form. Only the shape is
    /// checked here; axioms are checked by [`FiniteStructure::validate`].
    pub fn new(kind: Kind, mul: OpTable, add: Option<OpTable>) -> Result<Self> {
        let n = mul.order();
        if n < 2 {
            return Err(AlgebraError::input("a structure needs at least two elements"));
        }
        check_order(n)?;
        match (&add, kind.has_add()) {
            (Some(a), true) if a.order() != n => {
                return Err(AlgebraError::input("add and mul tables differ in order"))
            }
            (None, true) => {
                return Err(AlgebraError::input(format!("kind {kind} requires an add table")))
            }
            (Some(_), false) => {
                return Err(AlgebraError::input(format!("kind {kind} takes no add table")))
            }
            _ => {}
        }
        Ok(FiniteStructure { kind, mul, add, labels: None })
    }

    /// Like [`FiniteStructure::new`] but fails unless the axioms of `kind` hold.
    pub fn new_validated(kind: Kind, mul: OpTable, add: Option<OpTable>) -> Result<Self> {
        let s = Self::new(kind, mul, add)?;
        s.validate().into_result()?;
        Ok(s)
    }

    /// Builds from tables whose zero and one sit at arbitrary positions;
    /// the result is permuted into normal form.
    pub fn from_parts(
        kind: Kind,
        zero: ElementId,
        one: Option<ElementId>,
        mul: OpTable,
        add: Option<OpTable>,
    ) -> Result<Self> {
        let n = mul.order();
        if zero >= n {
            return Err(AlgebraError::input(format!("zero {zero} out of range")));
        }
        let one = match (kind.has_one(), one) {
            (true, Some(o)) if o >= n => {
                return Err(AlgebraError::input(format!("one {o} out of range")))
            }
            (true, Some(o)) if o == zero => {
                return Err(AlgebraError::input("one must differ from zero"))
            }
            (true, Some(o)) => Some(o),
            (true, None) => return Err(AlgebraError::input(format!("kind {kind} requires `one`"))),
            (false, _) => None,
        };
        let perm = normal_form_permutation(n, zero, one);
        let mul = mul.permuted(&perm);
        let add = add.map(|a| a.permuted(&perm));
        Self::new(kind, mul, add)
    }

    #[inline]
    pub fn kind(&self) -> Kind {
        self.kind
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.mul.order()
    }

    #[inline]
    pub fn zero(&self) -> ElementId {
        ZERO
    }

    pub fn one(&self) -> Option<ElementId> {
        self.kind.has_one().then_some(ONE)
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.mul.get(a, b)
    }

    /// Addition; panics on kinds without an additive table.
    #[inline]
    pub fn add(&self, a: ElementId, b: ElementId) -> ElementId {
        self.add.as_ref().expect("structure has no addition").get(a, b)
    }

    pub fn mul_table(&self) -> &OpTable {
        &self.mul
    }

    pub fn add_table(&self) -> Option<&OpTable> {
        self.add.as_ref()
    }

    pub fn elements(&self) -> std::ops::Range<ElementId> {
        0..self.order()
    }

    pub fn nonzero(&self) -> std::ops::Range<ElementId> {
        1..self.order()
    }

    pub fn is_commutative(&self) -> bool {
        self.mul.is_commutative()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, e: ElementId) -> String {
        match &self.labels {
            Some(l) => l[e].clone(),
            None => e.to_string(),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order());
        self.labels = Some(labels);
        self
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn validate(&self) -> ValidationReport {
        validate::validate_structure(self)
    }

    /// Forgets structure to reach a weaker kind (e.g. a semiring viewed as
    /// its multiplicative monoid with zero). The result is not re-validated
    /// when the weaker axioms are implied by the stronger ones.
    pub fn demote(&self, kind: Kind) -> Result<FiniteStructure> {
        let allowed = match (self.kind, kind) {
            (a, b) if a == b => true,
            (_, Kind::SemigroupWithZero) => true,
            (k, Kind::MonoidWithZero) => k.has_one(),
            (Kind::Semiring, _) => true,
            (Kind::PnSemiringDistributive, Kind::PnSemiringLeft | Kind::PnSemiringRight) => true,
            _ => false,
        };
        if !allowed {
            return Err(AlgebraError::input(format!("cannot view {} as {kind}", self.kind)));
        }
        let add = if kind.has_add() { self.add.clone() } else { None };
        let mut s = FiniteStructure::new(kind, self.mul.clone(), add)?;
        s.labels = self.labels.clone();
        Ok(s)
    }

    /// Induced structure on a subset containing zero (and one where the kind
    /// has it) that is closed under every operation.
    pub fn substructure(&self, subset: &[ElementId]) -> Result<FiniteStructure> {
        let mut sorted: Vec<usize> = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&bad) = sorted.iter().find(|&&e| e >= self.order()) {
            return Err(AlgebraError::input(format!("element {bad} out of range")));
        }
        if sorted.first() != Some(&ZERO) {
            return Err(AlgebraError::input("subset must contain zero"));
        }
        if self.kind.has_one() && !sorted.contains(&ONE) {
            return Err(AlgebraError::input("subset must contain one"));
        }
        let mul = self.mul.restrict(&sorted, "mul")?;
        let add = match &self.add {
            Some(a) => Some(a.restrict(&sorted, "add")?),
            None => None,
        };
        let mut s = FiniteStructure::new(self.kind, mul, add)?;
        if let Some(l) = &self.labels {
            s.labels = Some(sorted.iter().map(|&e| l[e].clone()).collect());
        }
        Ok(s)
    }

    /// Applies a relabeling `perm[old] = new` that fixes zero and one.
    pub fn relabeled(&self, perm: &[usize]) -> FiniteStructure {
        debug_assert_eq!(perm[ZERO], ZERO);
        if self.kind.has_one() {
            debug_assert_eq!(perm[ONE], ONE);
        }
        let mut labels = None;
        if let Some(l) = &self.labels {
            let mut out = vec![String::new(); l.len()];
            for (old, &new) in perm.iter().enumerate() {
                out[new] = l[old].clone();
            }
            labels = Some(out);
        }
        FiniteStructure {
            kind: self.kind,
            mul: self.mul.permuted(perm),
            add: self.add.as_ref().map(|a| a.permuted(perm)),
            labels,
        }
    }

    pub fn to_file(&self) -> StructureFile {
        StructureFile {
            kind: self.kind.name().to_string(),
            order: self.order(),
            zero: ZERO,
            one: self.one(),
            add: self.add.as_ref().map(|a| a.rows()),
            mul: self.mul.rows(),
            labels: self.labels.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("structure serializes")
    }

    /// Parses the structure JSON format, normalizing and (optionally) validating.
    pub fn from_json(text: &str, validate: bool) -> Result<FiniteStructure> {
        let file: StructureFile = serde_json::from_str(text)
            .map_err(|e| AlgebraError::input(format!("malformed structure file: {e}")))?;
        file.into_structure(validate)
    }
}

/// On-disk form of a structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureFile {
    pub kind: String,
    pub order: usize,
    pub zero: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub one: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub add: Option<Vec<Vec<usize>>>,
    pub mul: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl StructureFile {
    pub fn into_structure(self, validate: bool) -> Result<FiniteStructure> {
        let kind = Kind::parse(&self.kind)?;
        if self.mul.len() != self.order {
            return Err(AlgebraError::input(format!(
                "declared order {} but mul has {} rows",
                self.order,
                self.mul.len()
            )));
        }
        let mul = OpTable::from_rows(&self.mul)?;
        let add = match self.add {
            Some(rows) => {
                if rows.len() != self.order {
                    return Err(AlgebraError::input("add table order differs from declared order"));
                }
                Some(OpTable::from_rows(&rows)?)
            }
            None => None,
        };
        let one = if kind.has_one() { self.one } else { None };
        let mut s = FiniteStructure::from_parts(kind, self.zero, one, mul, add)?;
        if let Some(labels) = self.labels {
            if labels.len() != self.order {
                return Err(AlgebraError::input("labels length differs from order"));
            }
            let perm = normal_form_permutation(self.order, self.zero, one);
            let mut out = vec![String::new(); labels.len()];
            for (old, l) in labels.into_iter().enumerate() {
                out[perm[old]] = l;
            }
            s.labels = Some(out);
        }
        if validate {
            s.validate().into_result()?;
        }
        Ok(s)
    }
}

/// Permutation `perm[old] = new` moving `zero` to 0 and `one` to 1, keeping
/// the relative order of everything else.
pub fn normal_form_permutation(n: usize, zero: usize, one: Option<usize>) -> Vec<usize> {
    let mut order = vec![zero];
    order.extend(one);
    order.extend((0..n).filter(|&e| e != zero && Some(e) != one));
    let mut perm = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    perm
}

pub(crate) type BinOp<'a, T> = &'a (dyn Fn(&T, &T) -> T + Sync);

/// Builds a structure from an arbitrary list of element values and closures
/// computing the operations. `zero` and `one` name positions in `elems`.
pub(crate) fn from_elements<T>(
    kind: Kind,
    elems: &[T],
    zero: usize,
    one: Option<usize>,
    mul: impl Fn(&T, &T) -> T + Sync,
    add: Option<BinOp<'_, T>>,
) -> Result<(FiniteStructure, Vec<T>)>
where
    T: Clone + Eq + std::hash::Hash + Send + Sync,
{
    use rayon::prelude::*;
    use std::collections::HashMap;

    let n = elems.len();
    check_order(n)?;
    let perm = normal_form_permutation(n, zero, one);
    let mut ordered = vec![elems[0].clone(); n];
    for (old, e) in elems.iter().enumerate() {
        ordered[perm[old]] = e.clone();
    }
    let index: HashMap<&T, usize> = ordered.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let fill = |op: &(dyn Fn(&T, &T) -> T + Sync), name: &str| -> Result<OpTable> {
        let flat: Vec<Option<usize>> = (0..n * n)
            .into_par_iter()
            .map(|k| index.get(&op(&ordered[k / n], &ordered[k % n])).copied())
            .collect();
        if let Some(k) = flat.iter().position(Option::is_none) {
            return Err(AlgebraError::input(format!(
                "{name} of elements {} and {} leaves the carrier",
                k / n,
                k % n
            )));
        }
        let flat: Vec<usize> = flat.into_iter().map(Option::unwrap).collect();
        OpTable::from_flat(n, &flat)
    };
    let mul_table = fill(&mul, "product")?;
    let add_table = match add {
        Some(a) => Some(fill(a, "sum")?),
        None => None,
    };
    Ok((FiniteStructure::new(kind, mul_table, add_table)?, ordered))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn loader_moves_zero_and_one_into_place() {
        // Boolean semiring written with 1 at index 0 and 0 at index 1.
        let text = r#"{"kind":"semiring","order":2,"zero":1,"one":0,
            "add":[[0,0],[0,1]],"mul":[[0,1],[1,1]]}"#;
        let s = FiniteStructure::from_json(text, true).unwrap();
        assert_eq!(s, named::boolean());
    }

    #[test]
    fn loader_rejects_invalid_unless_asked_not_to() {
        let text = r#"{"kind":"monoid_with_zero","order":2,"zero":0,"one":1,
            "mul":[[0,0],[0,0]]}"#;
        assert!(FiniteStructure::from_json(text, true).is_err());
        assert!(FiniteStructure::from_json(text, false).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let s = named::zn(4);
        let back = FiniteStructure::from_json(&s.to_json(), true).unwrap();
        assert_eq!(s, back);
    }

    #[test]
    fn full_carrier_substructure_is_identity() {
        let s = named::capped_naturals(2);
        assert_eq!(s.substructure(&[0, 1, 2]).unwrap(), s);
    }

    #[test]
    fn units_of_z4_are_not_additively_closed() {
        let z4 = named::zn(4);
        let err = z4.substructure(&[0, 1]).unwrap_err();
        assert!(matches!(err, AlgebraError::Closure { op: "add", left: 1, right: 1, result: 2 }));
    }

    #[test]
    fn even_residues_form_a_subsemigroup() {
        let z4 = named::zn(4);
        let sg = z4.demote(Kind::SemigroupWithZero).unwrap();
        let sub = sg.substructure(&[0, 2]).unwrap();
        assert_eq!(sub.order(), 2);
        assert!(sub.validate().valid);
        assert_eq!(sub.mul(1, 1), 0);
    }
}
