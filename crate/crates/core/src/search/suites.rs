//! Theorem suites: each suite is a table of claims evaluated on every
//! member of a corpus, with derived structures built on the fly.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::triangular::{bisemimodules, commutative_monoids, compare_triangular_characterization, Conditions};
use super::{enumerate_structures, enumeration_cap, EnumerationSpec};
use crate::constructions::{
    central_cancellable_sets, direct_product, endomorphisms, expectation_semiring,
    laurent_zero_product_check, localize, matrix_semiring, poly_bounded_reversible,
    power_series_truncated, regular_bisemimodule, sigma_expectation, triangular_semiring,
    Endomorphism,
};
use crate::error::{AlgebraError, Result};
use crate::properties::{
    check_property, eversible_condition2, generated_two_sided_ideal_is_nil, is_eversible,
    is_nilpotent, is_reversible, PropertyReport, Verdict, PROPERTY_NAMES,
};
use crate::structure::{FiniteStructure, Kind, StructureFile, ZERO};
use crate::zdgraph::{build_graph, connectivity, diameter, Notion};

/// Parameters shared by every claim of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Context {
    /// Degree bound for polynomial and Armendariz checks.
    pub degree: usize,
    /// Number of coefficients kept in truncated power series.
    pub series_terms: usize,
    pub notion: Notion,
    /// Largest module order in triangular suites.
    pub module_order: usize,
}

impl Default for Context {
    fn default() -> Self {
        Context { degree: 2, series_terms: 3, notion: Notion::Strong, module_order: 3 }
    }
}

/// Atom names understood beyond [`PROPERTY_NAMES`].
pub const EXTRA_ATOMS: &[&str] = &[
    "cohn_generated",
    "nilpotents_closed",
    "eversible_condition2_literal",
    "poly_reversible",
    "series_reversible",
    "laurent_agrees",
    "graph_connected",
    "graph_diameter_le_3",
    "one_plus_one_nonzero",
];

pub(crate) fn is_known_atom(name: &str) -> bool {
    PROPERTY_NAMES.contains(&name) || EXTRA_ATOMS.contains(&name)
}

fn from_bool(name: &str, ok: bool) -> PropertyReport {
    if ok {
        PropertyReport::holds(name)
    } else {
        PropertyReport { property: name.into(), verdict: Verdict::Fails, witness: None, bound: None }
    }
}

/// On a reversible semiring, nilpotents are closed under sums and under
/// `a_b` sandwiching. Witnesses `[x, y]` or `[a, x, b]`.
fn nilpotents_closed(s: &FiniteStructure) -> PropertyReport {
    let name = "nilpotents_closed";
    if !is_reversible(s).is_holds() {
        return PropertyReport::holds(name);
    }
    let nil: Vec<usize> = s.elements().filter(|&x| is_nilpotent(s, x)).collect();
    if s.add_table().is_some() {
        for &x in &nil {
            if let Some(&y) = nil.iter().find(|&&y| !is_nilpotent(s, s.add(x, y))) {
                return PropertyReport::fails(name, vec![x, y]);
            }
        }
    }
    for a in s.elements() {
        for &x in &nil {
            if let Some(b) = s.elements().find(|&b| !is_nilpotent(s, s.mul(s.mul(a, x), b))) {
                return PropertyReport::fails(name, vec![a, x, b]);
            }
        }
    }
    PropertyReport::holds(name)
}

/// Evaluates a property or derived check by name. A leading `!` negates
/// the verdict; negated reports carry no witness.
pub fn evaluate_atom(s: &FiniteStructure, name: &str, ctx: &Context) -> Result<PropertyReport> {
    if let Some(inner) = name.strip_prefix('!') {
        let r = evaluate_atom(s, inner, ctx)?;
        let verdict = match r.verdict {
            Verdict::Holds => Verdict::Fails,
            Verdict::Fails => Verdict::Holds,
            Verdict::UnknownAtBound => Verdict::UnknownAtBound,
        };
        return Ok(PropertyReport { property: name.into(), verdict, witness: None, bound: r.bound });
    }
    if PROPERTY_NAMES.contains(&name) {
        return check_property(s, name, ctx.degree);
    }
    Ok(match name {
        "cohn_generated" => generated_two_sided_ideal_is_nil(s),
        "nilpotents_closed" => nilpotents_closed(s),
        "eversible_condition2_literal" => eversible_condition2(s)?.literal,
        "poly_reversible" => poly_bounded_reversible(s, ctx.degree)?,
        "series_reversible" => {
            let series = power_series_truncated(s, ctx.series_terms)?;
            let mut r = is_reversible(&series.structure);
            r.property = name.into();
            r.witness = None;
            r.with_bound(ctx.series_terms)
        }
        "laurent_agrees" => from_bool(name, laurent_zero_product_check(s, ctx.degree)?.agree),
        "graph_connected" => from_bool(name, connectivity(&build_graph(s), ctx.notion)),
        "graph_diameter_le_3" => {
            from_bool(name, diameter(&build_graph(s), ctx.notion).is_some_and(|d| d <= 3))
        }
        "one_plus_one_nonzero" => {
            if s.add_table().is_none() {
                return Err(AlgebraError::input("one_plus_one_nonzero needs an addition"));
            }
            let one = s.one().ok_or_else(|| AlgebraError::input("no multiplicative identity"))?;
            from_bool(name, s.add(one, one) != ZERO)
        }
        other => return Err(AlgebraError::input(format!("unknown property `{other}`"))),
    })
}

#[derive(Clone, Copy, Debug)]
enum Step {
    /// 2x2 matrices.
    Matrix,
    /// `S ⊕̃ S` over the regular bisemimodule.
    RegularExpectation,
    /// `(S ⊕̃ S)_σ` for every injective endomorphism σ.
    SigmaInjective,
    /// `(E ⊕ E ⊕̃ E ⊕ E)_σ` with σ swapping the factors.
    SwapTwist,
    /// `E ⊕ E`.
    Square,
    /// `O^-1 S` for every admissible denominator set.
    Localizations,
}

#[derive(Clone, Copy, Debug)]
enum Shape {
    /// All hypotheses hold ⟹ all conclusions hold.
    Implies(&'static [&'static str], &'static [&'static str]),
    /// Both conjunctions have the same truth value.
    Iff(&'static [&'static str], &'static [&'static str]),
    /// When the hypotheses hold on `S`, every derived structure satisfies
    /// the conclusions.
    Derived(&'static [&'static str], Step, &'static [&'static str]),
    /// Every derived structure agrees with `S` on each listed property.
    Preserved(Step, &'static [&'static str]),
    /// Counts agreement between two atoms without reporting violations.
    Agreement(&'static str, &'static str),
}

#[derive(Clone, Copy, Debug)]
struct Claim {
    label: &'static str,
    /// Kinds the claim applies to; empty means every kind of the suite.
    kinds: &'static [Kind],
    shape: Shape,
}

const fn claim(label: &'static str, shape: Shape) -> Claim {
    Claim { label, kinds: &[], shape }
}

#[derive(Clone, Copy, Debug)]
enum Body {
    Claims(&'static [Claim]),
    Triangular(Conditions),
}

/// A registered theorem suite.
#[derive(Clone, Copy, Debug)]
pub struct Suite {
    pub name: &'static str,
    pub kinds: &'static [Kind],
    /// Default corpus order for `--order`-less runs and the largest order
    /// accepted.
    pub default_order: usize,
    pub max_order: usize,
    body: Body,
}

use Kind::{MonoidWithZero as Monoid, PnSemiringDistributive as PnDist, SemigroupWithZero as Semigroup, Semiring};

pub const SUITES: &[Suite] = &[
    Suite {
        name: "reversible-equivalences",
        kinds: &[Semigroup, Monoid],
        default_order: 4,
        max_order: 5,
        body: Body::Claims(&[
            claim("entire iff prime and reversible", Shape::Iff(&["entire"], &["prime", "reversible"])),
            Claim {
                label: "nilpotent-free iff semiprime and reversible",
                kinds: &[Monoid],
                shape: Shape::Iff(&["nilpotent_free"], &["semiprime", "reversible"]),
            },
        ]),
    },
    Suite {
        name: "symmetric-chain",
        kinds: &[Semigroup, Monoid],
        default_order: 4,
        max_order: 5,
        body: Body::Claims(&[
            claim("nilpotent-free implies symmetric", Shape::Implies(&["nilpotent_free"], &["symmetric"])),
            Claim {
                label: "symmetric implies reversible",
                kinds: &[Monoid],
                shape: Shape::Implies(&["symmetric"], &["reversible"]),
            },
        ]),
    },
    Suite {
        name: "cohn",
        kinds: &[Semigroup, Monoid, Semiring],
        default_order: 4,
        max_order: 5,
        body: Body::Claims(&[claim(
            "nil right ideals of reversible structures are two-sided and nil",
            Shape::Implies(&[], &["cohn"]),
        )]),
    },
    Suite {
        name: "cohn-generated",
        kinds: &[Semigroup, Monoid, Semiring],
        default_order: 4,
        max_order: 5,
        body: Body::Claims(&[
            claim(
                "ideals generated by nilpotents of reversible structures are nil",
                Shape::Implies(&[], &["cohn_generated"]),
            ),
            Claim {
                label: "nilpotents of reversible semirings are closed",
                kinds: &[Semiring],
                shape: Shape::Implies(&[], &["nilpotents_closed"]),
            },
        ]),
    },
    Suite {
        name: "eversible-criterion",
        kinds: &[PnDist],
        default_order: 3,
        max_order: 4,
        body: Body::Claims(&[
            claim("eversible iff the zero-product criterion holds", Shape::Iff(&["eversible_condition2"], &["eversible"])),
            claim("literal reading", Shape::Agreement("eversible_condition2_literal", "eversible")),
        ]),
    },
    Suite {
        name: "eversible-criterion-literal",
        kinds: &[PnDist],
        default_order: 3,
        max_order: 4,
        body: Body::Claims(&[claim(
            "eversible iff the criterion holds for all pairs",
            Shape::Iff(&["eversible_condition2_literal"], &["eversible"]),
        )]),
    },
    Suite {
        name: "armendariz",
        kinds: &[Semiring],
        default_order: 3,
        max_order: 4,
        body: Body::Claims(&[claim("zerosumfree implies Armendariz", Shape::Implies(&["zerosumfree"], &["armendariz"]))]),
    },
    Suite {
        name: "poly-reversible",
        kinds: &[Semiring],
        default_order: 3,
        max_order: 4,
        body: Body::Claims(&[
            claim(
                "reversible Armendariz semirings have reversible polynomials",
                Shape::Implies(&["reversible", "armendariz"], &["poly_reversible"]),
            ),
            claim(
                "zerosumfree reversible semirings have reversible polynomials and series",
                Shape::Implies(&["zerosumfree", "reversible"], &["poly_reversible", "series_reversible"]),
            ),
        ]),
    },
    Suite {
        name: "laurent",
        kinds: &[Semiring],
        default_order: 3,
        max_order: 4,
        body: Body::Claims(&[claim(
            "Laurent polynomials are reversible iff polynomials are",
            Shape::Implies(&[], &["laurent_agrees"]),
        )]),
    },
    Suite {
        name: "matrix",
        kinds: &[Semiring],
        default_order: 3,
        max_order: 3,
        body: Body::Claims(&[claim("2x2 matrices are not reversible", Shape::Derived(&[], Step::Matrix, &["!reversible"]))]),
    },
    Suite {
        name: "expectation",
        kinds: &[Semiring],
        default_order: 3,
        max_order: 3,
        body: Body::Claims(&[
            claim(
                "nilpotent-free S gives a reversible expectation semiring",
                Shape::Derived(&["nilpotent_free"], Step::RegularExpectation, &["reversible"]),
            ),
            claim(
                "entire commutative S gives reversible twisted expectation semirings",
                Shape::Derived(&["entire", "commutative"], Step::SigmaInjective, &["reversible"]),
            ),
            claim(
                "E + E is nilpotent-free for entire commutative E",
                Shape::Derived(&["entire", "commutative"], Step::Square, &["nilpotent_free"]),
            ),
            claim(
                "the swap-twisted expectation semiring is eversible",
                Shape::Derived(&["entire", "commutative"], Step::SwapTwist, &["eversible"]),
            ),
            claim(
                "the swap-twisted expectation semiring is not reversible when 1 + 1 != 0",
                Shape::Derived(&["entire", "commutative", "one_plus_one_nonzero"], Step::SwapTwist, &["!reversible"]),
            ),
        ]),
    },
    Suite {
        name: "localization",
        kinds: &[Semiring],
        default_order: 4,
        max_order: 4,
        body: Body::Claims(&[claim(
            "fractions preserve reversibility and eversibility",
            Shape::Preserved(Step::Localizations, &["reversible", "eversible"]),
        )]),
    },
    Suite {
        name: "graph",
        kinds: &[Semigroup],
        default_order: 4,
        max_order: 5,
        body: Body::Claims(&[
            claim("the zero-divisor graph is connected iff eversible", Shape::Iff(&["graph_connected"], &["eversible"])),
            claim("connected zero-divisor graphs have diameter at most 3", Shape::Implies(&["graph_connected"], &["graph_diameter_le_3"])),
        ]),
    },
    Suite {
        name: "triangular",
        kinds: &[Semiring],
        default_order: 3,
        max_order: 3,
        body: Body::Triangular(Conditions::Printed),
    },
    Suite {
        name: "triangular-corrected",
        kinds: &[Semiring],
        default_order: 3,
        max_order: 3,
        body: Body::Triangular(Conditions::Corrected),
    },
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).collect()
}

pub fn find_suite(name: &str) -> Result<&'static Suite> {
    SUITES.iter().find(|s| s.name == name).ok_or_else(|| {
        AlgebraError::input(format!("unknown suite `{name}`; known: {}", suite_names().join(", ")))
    })
}

/// One claim broken on one structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// The structure the witness refers to.
    pub structure: StructureFile,
    /// The corpus member it was derived from, when different.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<StructureFile>,
    pub claim: String,
    /// Property whose failure the witness exhibits.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub property: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Violation {
    /// The failing report the witness stands for.
    pub fn report(&self) -> Option<PropertyReport> {
        Some(PropertyReport {
            property: self.property.clone()?,
            verdict: Verdict::Fails,
            witness: Some(self.witness.clone()?),
            bound: None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub structures_checked: usize,
    pub violations: Vec<Violation>,
    /// Named counters: how often each claim's hypothesis held, agreement
    /// counts and similar data.
    pub tallies: BTreeMap<String, usize>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Default)]
struct Outcome {
    violations: Vec<Violation>,
    tallies: BTreeMap<String, usize>,
}

impl Outcome {
    fn count(&mut self, key: String) {
        *self.tallies.entry(key).or_default() += 1;
    }

    fn merge(&mut self, other: Outcome) {
        self.violations.extend(other.violations);
        for (k, v) in other.tallies {
            *self.tallies.entry(k).or_default() += v;
        }
    }
}

fn all_hold(s: &FiniteStructure, names: &[&str], ctx: &Context) -> Result<std::result::Result<(), PropertyReport>> {
    for name in names {
        let r = evaluate_atom(s, name, ctx)?;
        if !r.is_holds() {
            return Ok(Err(r));
        }
    }
    Ok(Ok(()))
}

fn violation(s: &FiniteStructure, source: Option<&FiniteStructure>, claim: &str, r: Option<&PropertyReport>, detail: Option<String>) -> Violation {
    Violation {
        structure: s.to_file(),
        source: source.map(FiniteStructure::to_file),
        claim: claim.into(),
        property: r.filter(|r| r.witness.is_some()).map(|r| r.property.clone()),
        witness: r.and_then(|r| r.witness.clone()),
        detail,
    }
}

fn derive(s: &FiniteStructure, step: Step) -> Result<Vec<(String, FiniteStructure)>> {
    Ok(match step {
        Step::Matrix => vec![("M2(S)".into(), matrix_semiring(s, 2)?.structure)],
        Step::RegularExpectation => {
            vec![("S (+) S".into(), expectation_semiring(s, &regular_bisemimodule(s)?)?.structure)]
        }
        Step::SigmaInjective => endomorphisms(s)?
            .into_iter()
            .filter(Endomorphism::is_injective)
            .map(|e| Ok((format!("sigma = {:?}", e.map), sigma_expectation(s, &e)?.structure)))
            .collect::<Result<_>>()?,
        Step::Square => vec![("E + E".into(), direct_product(&[s.clone(), s.clone()])?.structure)],
        Step::SwapTwist => {
            let sq = direct_product(&[s.clone(), s.clone()])?;
            let map = sq
                .elements
                .iter()
                .map(|v| sq.index_of_slice(&[v[1], v[0]]).expect("swap stays in the square"))
                .collect();
            let swap = Endomorphism { map };
            vec![("swap".into(), sigma_expectation(&sq.structure, &swap)?.structure)]
        }
        Step::Localizations => central_cancellable_sets(s)
            .into_iter()
            .map(|o| Ok((format!("O = {o:?}"), localize(s, &o)?.constructed.structure)))
            .collect::<Result<_>>()?,
    })
}

fn applies(claim: &Claim, s: &FiniteStructure) -> bool {
    claim.kinds.is_empty() || claim.kinds.contains(&s.kind())
}

fn evaluate_claim(s: &FiniteStructure, claim: &Claim, ctx: &Context, out: &mut Outcome) -> Result<()> {
    let label = claim.label;
    match claim.shape {
        Shape::Implies(hyp, concl) => {
            if all_hold(s, hyp, ctx)?.is_ok() {
                out.count(format!("{label}/applicable"));
                if let Err(r) = all_hold(s, concl, ctx)? {
                    out.violations.push(violation(s, None, label, Some(&r), None));
                }
            }
        }
        Shape::Iff(lhs, rhs) => {
            let l = all_hold(s, lhs, ctx)?;
            let r = all_hold(s, rhs, ctx)?;
            match (&l, &r) {
                (Ok(()), Ok(())) => out.count(format!("{label}/both")),
                (Err(_), Err(_)) => out.count(format!("{label}/neither")),
                (Ok(()), Err(fail)) | (Err(fail), Ok(())) => {
                    let side = if l.is_ok() { "right side fails" } else { "left side fails" };
                    out.violations.push(violation(s, None, label, Some(fail), Some(side.into())));
                }
            }
        }
        Shape::Derived(hyp, step, concl) => {
            if all_hold(s, hyp, ctx)?.is_ok() {
                for (what, d) in derive(s, step)? {
                    out.count(format!("{label}/derived"));
                    if let Err(r) = all_hold(&d, concl, ctx)? {
                        out.violations.push(violation(&d, Some(s), label, Some(&r), Some(what)));
                    }
                }
            }
        }
        Shape::Preserved(step, props) => {
            for (what, d) in derive(s, step)? {
                out.count(format!("{label}/derived"));
                if !d.validate().valid {
                    out.violations.push(violation(&d, Some(s), label, None, Some(format!("{what}: invalid"))));
                    continue;
                }
                for p in props {
                    let base = evaluate_atom(s, p, ctx)?;
                    let derived = evaluate_atom(&d, p, ctx)?;
                    if base.verdict != derived.verdict {
                        let r = if derived.is_fails() { derived } else { base };
                        out.violations.push(violation(
                            &d,
                            Some(s),
                            label,
                            Some(&r),
                            Some(format!("{what}: {p} differs")),
                        ));
                    }
                }
            }
        }
        Shape::Agreement(a, b) => {
            let same = evaluate_atom(s, a, ctx)?.verdict == evaluate_atom(s, b, ctx)?.verdict;
            out.count(format!("{label}/{}", if same { "agree" } else { "disagree" }));
        }
    }
    Ok(())
}

fn check_kinds(suite: &Suite, corpus: &[FiniteStructure]) -> Result<()> {
    if let Some(s) = corpus.iter().find(|s| !suite.kinds.contains(&s.kind())) {
        return Err(AlgebraError::input(format!(
            "suite {} does not take {} structures",
            suite.name,
            s.kind()
        )));
    }
    Ok(())
}

/// Runs a suite over a corpus. Results are independent of the number of
/// worker threads.
pub fn run_suite(name: &str, corpus: &[FiniteStructure], ctx: &Context) -> Result<SuiteReport> {
    let suite = find_suite(name)?;
    check_kinds(suite, corpus)?;
    let start = Instant::now();
    let (checked, outcome) = match suite.body {
        Body::Claims(claims) => {
            let per: Vec<Result<Outcome>> = corpus
                .par_iter()
                .map(|s| {
                    let mut out = Outcome::default();
                    for c in claims.iter().filter(|c| applies(c, s)) {
                        evaluate_claim(s, c, ctx, &mut out)?;
                    }
                    Ok(out)
                })
                .collect();
            let mut all = Outcome::default();
            for o in per {
                all.merge(o?);
            }
            (corpus.len(), all)
        }
        Body::Triangular(conditions) => triangular_suite(corpus, conditions, ctx)?,
    };
    Ok(SuiteReport {
        suite: suite.name.into(),
        structures_checked: checked,
        violations: outcome.violations,
        tallies: outcome.tallies,
        elapsed: start.elapsed(),
    })
}

/// Every `(S, M, T)` with `S`, `T` from the corpus and `M` a bisemimodule
/// on a commutative monoid of order at most `ctx.module_order`. Violations
/// are stated conditions holding for non-zero-divisors, and failures of
/// the eversibility transfer for modules without zero-divisors.
fn triangular_suite(corpus: &[FiniteStructure], conditions: Conditions, ctx: &Context) -> Result<(usize, Outcome)> {
    let monoids: Vec<_> = (1..=ctx.module_order).flat_map(commutative_monoids).collect();
    let pairs: Vec<(&FiniteStructure, &FiniteStructure)> =
        corpus.iter().flat_map(|s| corpus.iter().map(move |t| (s, t))).collect();
    let per: Vec<Result<(usize, Outcome)>> = pairs
        .par_iter()
        .map(|&(s, t)| {
            let mut out = Outcome::default();
            let mut checked = 0;
            for add in &monoids {
                for m in bisemimodules(s, add, t)? {
                    checked += 1;
                    let report = compare_triangular_characterization(s, &m, t, conditions)?;
                    let tri = triangular_semiring(s, &m, t)?;
                    for (side, tallies) in [("left", &report.left), ("right", &report.right)] {
                        for (reading, tally) in ["all", "nonzero_m"].iter().zip(tallies) {
                            let key = |what: &str| format!("{side}/{reading}/{what}");
                            for (what, n) in [
                                ("elements", tally.elements),
                                ("both", tally.both),
                                ("stated_only", tally.stated_only),
                                ("oracle_only", tally.oracle_only),
                                ("neither", tally.neither),
                            ] {
                                *out.tallies.entry(key(what)).or_default() += n;
                            }
                        }
                    }
                    for mm in report.sufficiency_failures() {
                        let x = tri.index_of(&mm.element).expect("element of the triangular semiring");
                        out.violations.push(Violation {
                            structure: tri.structure.to_file(),
                            source: Some(s.to_file()),
                            claim: format!("stated condition implies {} zero-divisor", mm.side),
                            property: None,
                            witness: Some(vec![x]),
                            detail: Some(format!(
                                "clause ({}) holds at (s, m, t) = {:?} with S of order {}, M of order {}, T of order {}",
                                mm.clause.unwrap_or('?'),
                                mm.element,
                                s.order(),
                                m.order(),
                                t.order()
                            )),
                        });
                    }
                    let trivial = |z: Vec<usize>| z == [ZERO];
                    if trivial(m.left_zero_divisors(s)) && trivial(m.right_zero_divisors(t)) {
                        out.count("transfer/applicable".into());
                        if is_eversible(&tri.structure).is_holds() {
                            for (name, part) in [("S", s), ("T", t)] {
                                let r = is_eversible(part);
                                if !r.is_holds() {
                                    out.violations.push(Violation {
                                        structure: part.to_file(),
                                        source: Some(tri.structure.to_file()),
                                        claim: format!("eversible triangular semiring forces {name} eversible"),
                                        property: Some(r.property.clone()),
                                        witness: r.witness.clone(),
                                        detail: Some(format!("module order {}", m.order())),
                                    });
                                }
                            }
                        }
                    }
                }
            }
            Ok((checked, out))
        })
        .collect();
    let mut total = 0;
    let mut all = Outcome::default();
    for r in per {
        let (n, o) = r?;
        total += n;
        all.merge(o);
    }
    Ok((total, all))
}

/// The default corpus of a suite: every structure of each accepted kind
/// with order `2..=order`, up to isomorphism, in enumeration order.
pub fn standard_corpus(name: &str, order: usize) -> Result<Vec<FiniteStructure>> {
    let suite = find_suite(name)?;
    if order > suite.max_order {
        return Err(AlgebraError::resource(format!(
            "suite {} runs up to order {}",
            suite.name, suite.max_order
        )));
    }
    let mut corpus = Vec::new();
    for &kind in suite.kinds {
        if order > enumeration_cap(kind) + 1 {
            return Err(AlgebraError::resource(format!(
                "exhaustive {kind} enumeration stops at order {}",
                enumeration_cap(kind) + 1
            )));
        }
        for n in 2..=order {
            let mut spec = EnumerationSpec::new(kind, n).up_to_iso();
            spec.big = n > enumeration_cap(kind);
            corpus.extend(enumerate_structures(&spec)?);
        }
    }
    Ok(corpus)
}

/// The default suite order.
pub fn default_order(name: &str) -> Result<usize> {
    Ok(find_suite(name)?.default_order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::matrix_semiring;
    use crate::named;
    use crate::properties::recheck_witness;

    #[test]
    fn every_suite_name_resolves() {
        for name in suite_names() {
            assert!(find_suite(name).is_ok());
        }
        assert!(find_suite("nope").unwrap_err().to_string().contains("unknown suite"));
    }

    #[test]
    fn small_equivalence_runs_are_clean() {
        let ctx = Context::default();
        for name in ["reversible-equivalences", "symmetric-chain", "graph"] {
            let corpus = standard_corpus(name, 3).unwrap();
            let r = run_suite(name, &corpus, &ctx).unwrap();
            assert!(r.passed(), "{name}: {:?}", r.violations);
            assert_eq!(r.structures_checked, corpus.len());
        }
    }

    #[test]
    fn cohn_over_matrix_semiring_is_vacuous() {
        let m = matrix_semiring(&named::boolean(), 2).unwrap().structure;
        let r = run_suite("cohn", &[m], &Context::default()).unwrap();
        assert!(r.passed());
        assert!(r.tallies.contains_key("nil right ideals of reversible structures are two-sided and nil/applicable"));
    }

    #[test]
    fn kind_mismatch_is_rejected() {
        let err = run_suite("matrix", &[named::null_semigroup(2)], &Context::default()).unwrap_err();
        assert!(!err.is_resource());
    }

    #[test]
    fn negated_atoms() {
        let ctx = Context::default();
        let b = named::boolean();
        assert!(evaluate_atom(&b, "!reversible", &ctx).unwrap().is_fails());
        assert!(evaluate_atom(&b, "one_plus_one_nonzero", &ctx).unwrap().is_holds());
        assert!(evaluate_atom(&named::zn(2), "one_plus_one_nonzero", &ctx).unwrap().is_fails());
        assert!(evaluate_atom(&b, "bogus", &ctx).is_err());
    }

    #[test]
    fn violation_witnesses_recheck() {
        // A reversible semigroup whose right ideal generated by a nilpotent
        // is not closed under left multiplication.
        let mul = crate::table::OpTable::from_rows(&[
            vec![0, 0, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 3, 2, 3],
            vec![0, 0, 3, 0],
        ])
        .unwrap();
        let s = FiniteStructure::new(Kind::SemigroupWithZero, mul, None).unwrap();
        let r = run_suite("cohn", std::slice::from_ref(&s), &Context::default()).unwrap();
        assert_eq!(r.violations.len(), 1);
        let v = &r.violations[0];
        assert!(recheck_witness(&s, &v.report().unwrap()));
        let fixed = run_suite("cohn-generated", &[s], &Context::default()).unwrap();
        assert!(fixed.passed());
    }

    #[test]
    fn expectation_suite_on_the_boolean_semiring() {
        let r = run_suite("expectation", &[named::boolean()], &Context::default()).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert!(r.tallies["the swap-twisted expectation semiring is not reversible when 1 + 1 != 0/derived"] == 1);
    }
}
