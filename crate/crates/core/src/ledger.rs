//! Mechanical verification of the theorems about generalized groups, with
//! hypothesis tracking, vacuity detection, and exhaustive counterexample
//! search over generated structures.
//!
//! Every report evaluates the hypotheses first. When they fail the instance
//! is vacuous, the conclusion is not evaluated, and the hypothesis witness is
//! attached. Otherwise the conclusion is evaluated exhaustively.
//!
//! Several statements admit more than one reading. The primary reading
//! decides `conclusion_holds`; the others are evaluated as well and recorded
//! in `notes`, whose strings are kept free of indices so that
//! [`SearchOutcome::note_counts`] can aggregate them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::axioms::{certify, normality_violation, GGCertificate};
use crate::bol::{bol_product, classify_bol, BolReport};
use crate::construct::quotient_magma;
use crate::construct::{commutator_set, direct_product_magma, internal_dp, internal_dp_hypothesis_failure};
use crate::error::{Error, Result};
use crate::generators::enumerate_gg;
use crate::morphism::{
    for_each_homomorphism, image_subset, injectivity_violation, kernel_at, union_magma, Morphism, MAX_HOM_ORDER,
};
use crate::par::Exec;
use crate::subgroup::{
    enumerate_gsubgroups, is_abelian_subset, is_group_subset, local_conjugation_violation, quotient_violation,
    subgroup_test, Criterion, Subset,
};
use crate::table::{check_property, commutativity_violation, left_identities, two_sided_identities, Property};
use crate::witness::{Witness, WitnessContext, WitnessKind};

/// Largest `max_order` accepted by [`search_counterexample`].
pub const MAX_SEARCH_ORDER: usize = 12;
/// Largest `max_order` accepted for theorems quantifying over homomorphisms.
pub const MAX_HOM_SEARCH_ORDER: usize = 8;

#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    P2_1,
    T1_5,
    T1_6,
    T1_17,
    T1_18,
    T1_19,
    T1_20,
    T1_21i,
    T1_21ii,
    T1_21_1,
    T1_21_2,
    T1_22,
    T1_10i,
    T1_10ii,
    T1_10iii,
    T1_10iv,
    T1_24,
    C1_25,
    C1_26,
    C1_27,
}

/// Shape of the inputs a theorem takes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Signature {
    Structure,
    WithSubset,
    WithTwoSubsets,
    Pair,
    Hom,
    HomAtPoint,
    HomWithSubset,
}

impl TheoremId {
    pub const ALL: [TheoremId; 20] = [
        TheoremId::P2_1,
        TheoremId::T1_5,
        TheoremId::T1_6,
        TheoremId::T1_17,
        TheoremId::T1_18,
        TheoremId::T1_19,
        TheoremId::T1_20,
        TheoremId::T1_21i,
        TheoremId::T1_21ii,
        TheoremId::T1_21_1,
        TheoremId::T1_21_2,
        TheoremId::T1_22,
        TheoremId::T1_10i,
        TheoremId::T1_10ii,
        TheoremId::T1_10iii,
        TheoremId::T1_10iv,
        TheoremId::T1_24,
        TheoremId::C1_25,
        TheoremId::C1_26,
        TheoremId::C1_27,
    ];

    pub fn as_str(self) -> &'static str {
        use TheoremId::*;
        match self {
            P2_1 => "P2.1",
            T1_5 => "T1:5",
            T1_6 => "T1:6",
            T1_17 => "T1:17",
            T1_18 => "T1:18",
            T1_19 => "T1:19",
            T1_20 => "T1:20",
            T1_21i => "T1:21i",
            T1_21ii => "T1:21ii",
            T1_21_1 => "T1:21.1",
            T1_21_2 => "T1:21.2",
            T1_22 => "T1:22",
            T1_10i => "T1:10i",
            T1_10ii => "T1:10ii",
            T1_10iii => "T1:10iii",
            T1_10iv => "T1:10iv",
            T1_24 => "T1:24",
            C1_25 => "C1:25",
            C1_26 => "C1:26",
            C1_27 => "C1:27",
        }
    }

    /// One-line statement of what is checked.
    pub fn statement(self) -> &'static str {
        use TheoremId::*;
        match self {
            P2_1 => "e(e(x)) = e(x) and e(x^-1) = e(x)",
            T1_5 => "every x has exactly one inverse",
            T1_6 => "a commutative generalized group is a group",
            T1_17 => "(x^-1)^-1 = x",
            T1_18 => "with left cancellation and e(a) = e(ab^-1) <=> ab^-1 = a: idempotent <=> e(a)b^-1 = b^-1e(a)",
            T1_19 => "normal with e(a)b^-1 = b^-1e(a): (ab)^-1 = b^-1a^-1",
            T1_20 => "for nonempty S: ab^-1 in S <=> (ab in S and a^-1 in S)",
            T1_21i => "the kernel at a point of a homomorphism is a normal generalized subgroup",
            T1_21ii => "a homomorphism is injective iff its kernels are trivial",
            T1_21_1 => "the direct product of generalized groups is a generalized group",
            T1_21_2 => "G/H is a generalized group for every generalized subgroup H",
            T1_22 => "abelian N, H with G = NH and N commuting with H give G isomorphic to N x H",
            T1_10i => "f(e(a)) = e(f(a))",
            T1_10ii => "f(a^-1) = f(a)^-1",
            T1_10iii => "the image of a generalized subgroup is a generalized subgroup",
            T1_10iv => "for normal G, {(e(g), f(g))} is a generalized group",
            T1_24 => "H x G with (h1,g1)(h2,g2) = (h1h2, h2g1h2^-1g2) satisfies the right Bol identity",
            C1_25 => "as the Bol product, for an abelian generalized subgroup H",
            C1_26 => "for cancellative G the Bol product is a Bol quasigroup with a left identity",
            C1_27 => "as the previous, for an abelian generalized subgroup H",
        }
    }

    pub fn signature(self) -> Signature {
        use TheoremId::*;
        match self {
            P2_1 | T1_5 | T1_6 | T1_17 | T1_18 | T1_19 => Signature::Structure,
            T1_20 | T1_21_2 | T1_24 | C1_25 | C1_26 | C1_27 => Signature::WithSubset,
            T1_22 => Signature::WithTwoSubsets,
            T1_21_1 => Signature::Pair,
            T1_21ii | T1_10i | T1_10ii | T1_10iv => Signature::Hom,
            T1_21i => Signature::HomAtPoint,
            T1_10iii => Signature::HomWithSubset,
        }
    }

    pub fn quantifies_over_homomorphisms(self) -> bool {
        matches!(self.signature(), Signature::Hom | Signature::HomAtPoint | Signature::HomWithSubset)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::UnsupportedParameter(format!("unknown theorem id {s:?}")))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// The inputs of one theorem instance.
#[derive(Clone, Copy, Debug)]
pub enum Inputs<'a> {
    Structure(&'a GGCertificate),
    WithSubset(&'a GGCertificate, &'a Subset),
    WithTwoSubsets(&'a GGCertificate, &'a Subset, &'a Subset),
    Pair(&'a GGCertificate, &'a GGCertificate),
    Hom(&'a Morphism<'a>),
    HomAtPoint(&'a Morphism<'a>, usize),
    HomWithSubset(&'a Morphism<'a>, &'a Subset),
}

impl<'a> Inputs<'a> {
    pub fn signature(&self) -> Signature {
        match self {
            Inputs::Structure(_) => Signature::Structure,
            Inputs::WithSubset(..) => Signature::WithSubset,
            Inputs::WithTwoSubsets(..) => Signature::WithTwoSubsets,
            Inputs::Pair(..) => Signature::Pair,
            Inputs::Hom(_) => Signature::Hom,
            Inputs::HomAtPoint(..) => Signature::HomAtPoint,
            Inputs::HomWithSubset(..) => Signature::HomWithSubset,
        }
    }

    /// The structure `G` every theorem is about.
    pub fn primary(&self) -> &'a GGCertificate {
        match *self {
            Inputs::Structure(g) | Inputs::WithSubset(g, _) | Inputs::WithTwoSubsets(g, ..) | Inputs::Pair(g, _) => g,
            Inputs::Hom(f) | Inputs::HomAtPoint(f, _) | Inputs::HomWithSubset(f, _) => f.domain(),
        }
    }

    /// The second structure, if any: `H` of a pair or the codomain of a map.
    pub fn secondary(&self) -> Option<&'a GGCertificate> {
        match *self {
            Inputs::Pair(_, h) => Some(h),
            Inputs::Hom(f) | Inputs::HomAtPoint(f, _) | Inputs::HomWithSubset(f, _) => Some(f.codomain()),
            _ => None,
        }
    }

    pub fn morphism(&self) -> Option<&'a Morphism<'a>> {
        match *self {
            Inputs::Hom(f) | Inputs::HomAtPoint(f, _) | Inputs::HomWithSubset(f, _) => Some(f),
            _ => None,
        }
    }

    /// The (first) subset, if any.
    pub fn subset(&self) -> Option<&'a Subset> {
        match *self {
            Inputs::WithSubset(_, s) | Inputs::WithTwoSubsets(_, s, _) | Inputs::HomWithSubset(_, s) => Some(s),
            _ => None,
        }
    }

    pub fn describe(&self) -> Vec<String> {
        let map = |f: &Morphism<'_>| {
            let m: Vec<String> = f.map().iter().map(usize::to_string).collect();
            format!("f=[{}]", m.join(","))
        };
        match *self {
            Inputs::Structure(g) => vec![g.name().into()],
            Inputs::WithSubset(g, s) => vec![g.name().into(), s.to_string()],
            Inputs::WithTwoSubsets(g, n, h) => vec![g.name().into(), n.to_string(), h.to_string()],
            Inputs::Pair(g, h) => vec![g.name().into(), h.name().into()],
            Inputs::Hom(f) => vec![f.domain().name().into(), f.codomain().name().into(), map(f)],
            Inputs::HomAtPoint(f, a) => {
                vec![f.domain().name().into(), f.codomain().name().into(), map(f), format!("a={a}")]
            }
            Inputs::HomWithSubset(f, k) => {
                vec![f.domain().name().into(), f.codomain().name().into(), map(f), format!("K={k}")]
            }
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Inputs::WithSubset(g, s) => s.check_parent(g.order()),
            Inputs::WithTwoSubsets(g, n, h) => {
                n.check_parent(g.order())?;
                h.check_parent(g.order())
            }
            Inputs::HomAtPoint(f, a) if a >= f.domain().order() => {
                Err(Error::IndexOutOfRange { index: a as i64, order: f.domain().order() })
            }
            Inputs::HomWithSubset(f, k) => k.check_parent(f.domain().order()),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Hypothesis,
    Conclusion,
}

/// The structure a witness refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Role {
    /// The primary structure (with the map, for homomorphism theorems).
    G,
    /// The second structure of a pair, or the codomain of a map.
    H,
    #[serde(rename = "product")]
    Product,
    #[serde(rename = "quotient")]
    Quotient,
    #[serde(rename = "union")]
    Union,
    #[serde(rename = "bol")]
    Bol,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessRecord {
    pub stage: Stage,
    pub on: Role,
    pub witness: Witness,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subset: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub second: Option<Vec<usize>>,
}

impl WitnessRecord {
    fn new(stage: Stage, on: Role, witness: Witness) -> Self {
        WitnessRecord { stage, on, witness, subset: None, second: None }
    }

    fn with_subset(mut self, s: &Subset) -> Self {
        self.subset = Some(s.members().to_vec());
        self
    }

    fn with_second(mut self, s: &Subset) -> Self {
        self.second = Some(s.members().to_vec());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub theorem_id: TheoremId,
    pub inputs: Vec<String>,
    pub hypotheses_hold: bool,
    /// `None` when the instance is vacuous.
    pub conclusion_holds: Option<bool>,
    pub vacuous: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessRecord>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn to_document(&self) -> String {
        crate::table::to_document_string(self)
    }

    /// Non-vacuous with a failed conclusion.
    pub fn is_counterexample(&self) -> bool {
        self.conclusion_holds == Some(false)
    }

    /// Re-evaluates the attached witness against structures rebuilt from
    /// `inputs`. `None` when there is no witness.
    pub fn recheck(&self, inputs: &Inputs<'_>) -> Result<Option<bool>> {
        let Some(rec) = &self.witness else {
            return Ok(None);
        };
        let g = inputs.primary();
        let owned;
        let magma = match rec.on {
            Role::G => g.base(),
            Role::H => inputs
                .secondary()
                .ok_or_else(|| Error::SignatureMismatch("witness refers to a missing second structure".into()))?
                .base(),
            Role::Product => {
                let h = inputs
                    .secondary()
                    .ok_or_else(|| Error::SignatureMismatch("product witness without a pair".into()))?;
                owned = direct_product_magma(g, h)?;
                &owned
            }
            Role::Quotient => {
                let s = inputs.subset().ok_or_else(|| Error::SignatureMismatch("quotient without subset".into()))?;
                owned = quotient_magma(g, s)?.0;
                &owned
            }
            Role::Union => {
                let f = inputs.morphism().ok_or_else(|| Error::SignatureMismatch("union without map".into()))?;
                owned = union_magma(f)?;
                &owned
            }
            Role::Bol => {
                let s = inputs.subset().ok_or_else(|| Error::SignatureMismatch("Bol product without subset".into()))?;
                owned = bol_product(g, s)?;
                &owned
            }
        };
        let subset = rec.subset.as_ref().map(|m| Subset::with_order(magma.order(), m.iter().copied())).transpose()?;
        let second = rec.second.as_ref().map(|m| Subset::with_order(magma.order(), m.iter().copied())).transpose()?;
        let mut ctx = WitnessContext::new(magma);
        if let Some(s) = &subset {
            ctx = ctx.with_subset(s);
        }
        if let Some(s) = &second {
            ctx = ctx.with_second(s);
        }
        if let (Role::G, Some(f)) = (rec.on, inputs.morphism()) {
            ctx = ctx.with_map(f.map(), f.codomain().base());
        }
        Ok(Some(rec.witness.confirms(&ctx)))
    }
}

enum Verdict {
    Vacuous(WitnessRecord),
    Holds,
    Fails(WitnessRecord),
}

struct Evaluation {
    verdict: Verdict,
    notes: Vec<String>,
}

impl Evaluation {
    fn new(verdict: Verdict) -> Self {
        Evaluation { verdict, notes: Vec::new() }
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

fn hyp(on: Role, w: Witness) -> WitnessRecord {
    WitnessRecord::new(Stage::Hypothesis, on, w)
}

fn concl(on: Role, w: Witness) -> WitnessRecord {
    WitnessRecord::new(Stage::Conclusion, on, w)
}

fn vacuous(r: WitnessRecord) -> Evaluation {
    Evaluation::new(Verdict::Vacuous(r))
}

fn conclude(failure: Option<WitnessRecord>) -> Evaluation {
    Evaluation::new(failure.map_or(Verdict::Holds, Verdict::Fails))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Evaluates one theorem instance.
pub fn verify(theorem: TheoremId, inputs: &Inputs<'_>) -> Result<VerificationReport> {
    if theorem.signature() != inputs.signature() {
        return Err(Error::SignatureMismatch(format!(
            "{theorem} takes {:?} inputs, got {:?}",
            theorem.signature(),
            inputs.signature()
        )));
    }
    inputs.validate()?;
    let eval = match *inputs {
        Inputs::Structure(g) => eval_structure(theorem, g),
        Inputs::WithSubset(g, s) => eval_with_subset(theorem, g, s)?,
        Inputs::WithTwoSubsets(g, n, h) => eval_internal_dp(g, n, h)?,
        Inputs::Pair(g, h) => eval_direct_product(g, h)?,
        Inputs::Hom(f) | Inputs::HomAtPoint(f, _) | Inputs::HomWithSubset(f, _) => {
            if let Some(w) = f.homomorphism().witness.clone().filter(|_| !f.homomorphism().holds) {
                vacuous(hyp(Role::G, w))
            } else {
                eval_hom(theorem, inputs, f)?
            }
        }
    };
    let (hypotheses_hold, conclusion_holds, witness) = match eval.verdict {
        Verdict::Vacuous(r) => (false, None, Some(r)),
        Verdict::Holds => (true, Some(true), None),
        Verdict::Fails(r) => (true, Some(false), Some(r)),
    };
    Ok(VerificationReport {
        theorem_id: theorem,
        inputs: inputs.describe(),
        hypotheses_hold,
        conclusion_holds,
        vacuous: !hypotheses_hold,
        witness,
        notes: eval.notes,
    })
}

fn first_x(n: usize, bad: impl Fn(usize) -> bool) -> Option<usize> {
    (0..n).find(|&x| bad(x))
}

fn first_pair(n: usize, bad: impl Fn(usize, usize) -> bool) -> Option<(usize, usize)> {
    (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| bad(a, b))
}

/// First `(a, b)` with `e(a)b⁻¹ ≠ b⁻¹e(a)`.
fn central_identity_violation(g: &GGCertificate) -> Option<Witness> {
    first_pair(g.order(), |a, b| {
        let (ea, bi) = (g.e(a), g.inv(b));
        g.mul(ea, bi) != g.mul(bi, ea)
    })
    .map(|(a, b)| Witness::new(WitnessKind::CentralIdentity, [a, b]))
}

fn eval_structure(theorem: TheoremId, g: &GGCertificate) -> Evaluation {
    let n = g.order();
    let on_g = |kind: WitnessKind, idx: &[usize]| concl(Role::G, Witness::new(kind, idx.to_vec()));
    match theorem {
        TheoremId::P2_1 => conclude(
            first_x(n, |x| g.e(g.e(x)) != g.e(x)).map(|x| on_g(WitnessKind::IdentityOfIdentity, &[x])).or_else(|| {
                first_x(n, |x| g.e(g.inv(x)) != g.e(x)).map(|x| on_g(WitnessKind::IdentityOfInverse, &[x]))
            }),
        ),
        TheoremId::T1_5 => {
            let failure = (0..n).find_map(|x| {
                let ex = g.e(x);
                let inverses: Vec<usize> = (0..n).filter(|&y| g.mul(x, y) == ex && g.mul(y, x) == ex).collect();
                match inverses.as_slice() {
                    [] => Some(on_g(WitnessKind::NoInverse, &[x])),
                    [_] => None,
                    [y1, y2, ..] => Some(on_g(WitnessKind::NonUniqueInverse, &[x, *y1, *y2])),
                }
            });
            conclude(failure)
        }
        TheoremId::T1_6 => {
            if let Some(w) = commutativity_violation(g.base()) {
                return vacuous(hyp(Role::G, w));
            }
            let failure = first_x(n, |x| g.e(x) != g.e(0))
                .map(|x| on_g(WitnessKind::NonConstantIdentity, &[0, x]))
                .or_else(|| check_property(g.base(), Property::LatinSquare).witness.map(|w| concl(Role::G, w)));
            let identities = two_sided_identities(g.base());
            conclude(failure).note(format!("two-sided identities: {}", identities.len()))
        }
        TheoremId::T1_17 => {
            conclude(first_x(n, |x| g.inv(g.inv(x)) != x).map(|x| on_g(WitnessKind::DoubleInverse, &[x])))
        }
        TheoremId::T1_18 => eval_idempotency_criterion(g),
        TheoremId::T1_19 => {
            if let Some(w) = normality_violation(g.base(), g.e_map()) {
                return vacuous(hyp(Role::G, w));
            }
            if let Some(w) = central_identity_violation(g) {
                return vacuous(hyp(Role::G, w));
            }
            let failure = first_pair(n, |a, b| g.inv(g.mul(a, b)) != g.mul(g.inv(b), g.inv(a))).map(|(a, b)| {
                let (l, r) = (g.inv(g.mul(a, b)), g.mul(g.inv(b), g.inv(a)));
                concl(Role::G, Witness::new(WitnessKind::AntiAutomorphicInverse, [a, b]).with_detail(l, r))
            });
            conclude(failure)
        }
        _ => unreachable!("signature checked"),
    }
}

/// The idempotency criterion. The hypothesis `e(a) = e(ab⁻¹) ⇔ ab⁻¹ = a` is
/// the primary reading; the forward implication alone is recorded in notes.
/// (The reverse implication is trivially true, so the two readings select
/// the same instances; both are still computed.)
fn eval_idempotency_criterion(g: &GGCertificate) -> Evaluation {
    let n = g.order();
    let q = |a: usize, b: usize| g.mul(a, g.inv(b));
    let conclusion = || {
        let idempotent = first_x(n, |x| g.mul(x, x) != x);
        let central = central_identity_violation(g);
        match (idempotent, central) {
            (None, Some(w)) => Some(concl(Role::G, w)),
            (Some(x), None) => Some(concl(Role::G, Witness::new(WitnessKind::IdempotentTable, [x]))),
            _ => None,
        }
    };
    let cancellation = check_property(g.base(), Property::LeftCancellative).witness;
    let forward = first_pair(n, |a, b| g.e(a) == g.e(q(a, b)) && q(a, b) != a);
    let forward_note = match (&cancellation, forward) {
        (None, None) => match conclusion() {
            None => "forward-only hypothesis reading: conclusion holds",
            Some(_) => "forward-only hypothesis reading: conclusion fails",
        },
        _ => "forward-only hypothesis reading: vacuous",
    };
    let eval = if let Some(w) = cancellation {
        vacuous(hyp(Role::G, w))
    } else if let Some((a, b)) = first_pair(n, |a, b| (g.e(a) == g.e(q(a, b))) != (q(a, b) == a)) {
        vacuous(hyp(Role::G, Witness::new(WitnessKind::IdentityCriterion, [a, b])))
    } else {
        conclude(conclusion())
    };
    eval.note("hypothesis read as a biconditional").note(forward_note)
}

fn eval_with_subset(theorem: TheoremId, g: &GGCertificate, s: &Subset) -> Result<Evaluation> {
    let on_s = |stage: Stage, w: Witness| WitnessRecord::new(stage, Role::G, w).with_subset(s);
    Ok(match theorem {
        TheoremId::T1_20 => {
            let quotient = subgroup_test(g, s, Criterion::QuotientCriterion)?;
            let closure = subgroup_test(g, s, Criterion::ClosureAndInverse)?;
            if quotient.holds == closure.holds {
                conclude(None)
            } else {
                let w = quotient.witness.or(closure.witness).expect("the failing criterion has a witness");
                conclude(Some(on_s(Stage::Conclusion, w)))
            }
        }
        TheoremId::T1_21_2 => {
            if let Some(w) = quotient_violation(g, s) {
                return Ok(vacuous(on_s(Stage::Hypothesis, w)));
            }
            match quotient_magma(g, s) {
                Err(Error::IllDefined(w)) => {
                    conclude(Some(on_s(Stage::Conclusion, w))).note("quotient product ill-defined")
                }
                Err(e) => return Err(e),
                Ok((m, family)) => {
                    let partition = format!("cosets partition G: {}", yes_no(family.partition));
                    match certify(m) {
                        Ok(_) => conclude(None).note(partition),
                        Err(d) => conclude(Some(concl(Role::Quotient, d.witness))).note(partition),
                    }
                }
            }
        }
        TheoremId::T1_24 | TheoremId::C1_25 | TheoremId::C1_26 | TheoremId::C1_27 => eval_bol(theorem, g, s)?,
        _ => unreachable!("signature checked"),
    })
}

fn eval_bol(theorem: TheoremId, g: &GGCertificate, s: &Subset) -> Result<Evaluation> {
    let on_s = |stage: Stage, w: Witness| WitnessRecord::new(stage, Role::G, w).with_subset(s);
    let abelian_variant = matches!(theorem, TheoremId::C1_25 | TheoremId::C1_27);
    let cancellative_variant = matches!(theorem, TheoremId::C1_26 | TheoremId::C1_27);

    // hypotheses
    if abelian_variant {
        if let Some(w) = quotient_violation(g, s) {
            return Ok(vacuous(on_s(Stage::Hypothesis, w)));
        }
        if let Some(w) = is_abelian_subset(g.base(), s).witness {
            return Ok(vacuous(on_s(Stage::Hypothesis, w)));
        }
    } else if let Some(w) = is_group_subset(g, s)?.witness {
        return Ok(vacuous(on_s(Stage::Hypothesis, w)));
    }
    if commutativity_violation(g.base()).is_none() {
        return Ok(vacuous(hyp(Role::G, Witness::new(WitnessKind::AbelianTable, [0]))));
    }
    if cancellative_variant {
        if let Some(w) = check_property(g.base(), Property::Cancellative).witness {
            return Ok(vacuous(hyp(Role::G, w)));
        }
    }

    // conclusion
    if abelian_variant {
        if let Some(w) = is_group_subset(g, s)?.witness {
            return Ok(conclude(Some(on_s(Stage::Conclusion, w))).note("abelian generalized subgroup is not a group"));
        }
    }
    let a = bol_product(g, s)?;
    let report: BolReport = classify_bol(&a)?;
    let on_bol = |w: Witness| concl(Role::Bol, w);
    let mut failure = report.right_bol.witness.clone().map(on_bol);
    if cancellative_variant && failure.is_none() {
        failure =
            report.latin_square.witness.clone().map(on_bol).or_else(|| {
                left_identities(&a).is_empty().then(|| on_bol(Witness::new(WitnessKind::NoLeftIdentity, [0])))
            });
    }
    Ok(conclude(failure)
        .note(format!("G is a group: {}", yes_no(g.is_group())))
        .note(format!("associative: {}", yes_no(report.associative.holds)))
        .note(format!("classification: {}", report.classification)))
}

fn eval_internal_dp(g: &GGCertificate, n: &Subset, h: &Subset) -> Result<Evaluation> {
    let on_nh = |stage: Stage, w: Witness| WitnessRecord::new(stage, Role::G, w).with_subset(n).with_second(h);
    for s in [n, h] {
        if let Some(w) = quotient_violation(g, s) {
            return Ok(vacuous(WitnessRecord::new(Stage::Hypothesis, Role::G, w).with_subset(s)));
        }
    }
    let subset_of = |a: &Subset, b: &Subset| a.members().iter().all(|&x| b.contains(x));
    let commutator_reading = subset_of(n, &commutator_set(g, h)) || subset_of(h, &commutator_set(g, n));
    let commutator_note =
        format!("commutator reading of COM: hypothesis {}", if commutator_reading { "holds" } else { "fails" });
    if let Some(err) = internal_dp_hypothesis_failure(g, n, h) {
        let Error::HypothesisFailed { which, witness } = err else { unreachable!() };
        return Ok(vacuous(on_nh(Stage::Hypothesis, witness))
            .note("COM read as centralizer")
            .note(format!("failed hypothesis: {which}"))
            .note(commutator_note));
    }
    let eval = match internal_dp(g, n, h) {
        Ok(_) => conclude(None),
        Err(Error::ConclusionFailed(w)) => conclude(Some(on_nh(Stage::Conclusion, w))),
        Err(e) => return Err(e),
    };
    Ok(eval.note("COM read as centralizer").note(commutator_note))
}

fn eval_direct_product(g: &GGCertificate, h: &GGCertificate) -> Result<Evaluation> {
    let m = direct_product_magma(g, h)?;
    let p = match certify(m) {
        Ok(p) => p,
        Err(d) => return Ok(conclude(Some(concl(Role::Product, d.witness)))),
    };
    let k = h.order();
    let failure = (0..p.order()).find_map(|x| {
        let (a, b) = (x / k, x % k);
        let e = g.e(a) * k + h.e(b);
        let inv = g.inv(a) * k + h.inv(b);
        if p.e(x) != e {
            Some(concl(Role::Product, Witness::new(WitnessKind::IdentityMismatch, [x, e])))
        } else if p.inv(x) != inv {
            Some(concl(Role::Product, Witness::new(WitnessKind::InverseMismatch, [x, inv])))
        } else {
            None
        }
    });
    Ok(conclude(failure))
}

fn eval_hom(theorem: TheoremId, inputs: &Inputs<'_>, f: &Morphism<'_>) -> Result<Evaluation> {
    let (g, h) = (f.domain(), f.codomain());
    let n = g.order();
    let on_g = |stage: Stage, w: Witness| WitnessRecord::new(stage, Role::G, w);
    Ok(match (theorem, *inputs) {
        (TheoremId::T1_21i, Inputs::HomAtPoint(_, a)) => {
            let k = kernel_at(f, a)?;
            let normal = subgroup_test(g, &k, Criterion::Normal)?;
            let local = local_conjugation_violation(g, &k).is_none();
            conclude(normal.witness.map(|w| on_g(Stage::Conclusion, w).with_subset(&k)))
                .note("normality read as conjugation by all of G")
                .note(format!("conjugation within the identity class: {}", if local { "holds" } else { "fails" }))
        }
        (TheoremId::T1_21ii, _) => {
            let map = f.map();
            let injective = injectivity_violation(map);
            let first_in_kernel =
                |bad: &dyn Fn(usize, usize) -> bool| first_pair(n, |a, x| map[x] == map[g.e(a)] && bad(a, x));
            let nontrivial = first_in_kernel(&|a, x| x != g.e(a));
            let non_idempotent = first_in_kernel(&|_, x| g.e(x) != x);
            let per_point = injective.is_none() == nontrivial.is_none();
            let aggregated = injective.is_none() == non_idempotent.is_none();
            let witness = |kernel: Option<(usize, usize)>, kind: WitnessKind| match (&injective, kernel) {
                (None, Some((a, x))) => Witness::new(kind, [a, x]),
                (Some(w), _) => w.clone(),
                (None, None) => unreachable!("readings agree"),
            };
            let failure = (!per_point && !aggregated)
                .then(|| on_g(Stage::Conclusion, witness(nontrivial, WitnessKind::KernelNontrivial)));
            let verdict = |agrees: bool| if agrees { "agrees" } else { "disagrees" };
            conclude(failure)
                .note(format!("per-point kernel reading: {}", verdict(per_point)))
                .note(format!("aggregated kernel reading: {}", verdict(aggregated)))
        }
        (TheoremId::T1_10i, _) => conclude(
            first_x(n, |a| f.apply(g.e(a)) != h.e(f.apply(a)))
                .map(|a| on_g(Stage::Conclusion, Witness::new(WitnessKind::IdentityNotPreserved, [a]))),
        ),
        (TheoremId::T1_10ii, _) => conclude(
            first_x(n, |a| f.apply(g.inv(a)) != h.inv(f.apply(a)))
                .map(|a| on_g(Stage::Conclusion, Witness::new(WitnessKind::InverseNotPreserved, [a]))),
        ),
        (TheoremId::T1_10iii, Inputs::HomWithSubset(_, k)) => {
            if let Some(w) = quotient_violation(g, k) {
                return Ok(vacuous(on_g(Stage::Hypothesis, w).with_subset(k)));
            }
            let image = image_subset(f, k)?;
            conclude(
                quotient_violation(h, &image)
                    .map(|w| WitnessRecord::new(Stage::Conclusion, Role::H, w).with_subset(&image)),
            )
        }
        (TheoremId::T1_10iv, _) => {
            if let Some(w) = normality_violation(g.base(), g.e_map()) {
                return Ok(vacuous(on_g(Stage::Hypothesis, w)));
            }
            match union_magma(f) {
                Err(Error::IllDefined(w)) => conclude(Some(on_g(Stage::Conclusion, w))),
                Err(e) => return Err(e),
                Ok(m) => conclude(certify(m).err().map(|d| concl(Role::Union, d.witness))),
            }
        }
        _ => unreachable!("signature checked"),
    })
}

/// Aggregated outcome of a counterexample search.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchOutcome {
    pub theorem_id: TheoremId,
    pub max_order: usize,
    /// Structures were drawn from `enumerate_gg` up to this order.
    pub structure_order_bound: usize,
    pub structures: usize,
    pub instances: usize,
    pub non_vacuous: usize,
    pub non_vacuity_rate: f64,
    pub failures: usize,
    pub result: SearchResult,
    /// First failing non-vacuous instance in enumeration order.
    pub counterexample: Option<VerificationReport>,
    /// How many instances carried each note.
    pub note_counts: BTreeMap<String, usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchResult {
    NoneFound,
    Counterexample,
}

impl SearchOutcome {
    pub fn none_found(&self) -> bool {
        self.result == SearchResult::NoneFound
    }

    pub fn to_document(&self) -> String {
        crate::table::to_document_string(self)
    }
}

#[derive(Default)]
struct Tally {
    instances: usize,
    non_vacuous: usize,
    failures: usize,
    first: Option<VerificationReport>,
    notes: BTreeMap<String, usize>,
    reports: Vec<VerificationReport>,
}

impl Tally {
    fn add(&mut self, r: VerificationReport, collect: bool) {
        self.instances += 1;
        if !r.vacuous {
            self.non_vacuous += 1;
        }
        for note in &r.notes {
            *self.notes.entry(note.clone()).or_default() += 1;
        }
        if r.is_counterexample() {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(r.clone());
            }
        }
        if collect {
            self.reports.push(r);
        }
    }

    fn merge(&mut self, other: Tally) {
        self.instances += other.instances;
        self.non_vacuous += other.non_vacuous;
        self.failures += other.failures;
        if self.first.is_none() {
            self.first = other.first;
        }
        for (k, v) in other.notes {
            *self.notes.entry(k).or_default() += v;
        }
        self.reports.extend(other.reports);
    }
}

/// The unit of parallel work: one structure, or one ordered pair.
#[derive(Clone, Copy)]
enum Task {
    One(usize),
    Two(usize, usize),
}

fn tasks(theorem: TheoremId, pool: &[GGCertificate], pair_order_bound: Option<usize>) -> Vec<Task> {
    match theorem.signature() {
        Signature::Structure | Signature::WithSubset | Signature::WithTwoSubsets => {
            (0..pool.len()).map(Task::One).collect()
        }
        _ => {
            let fits = |a: usize, b: usize| {
                pair_order_bound.is_none_or(|m| pool[a].order() * pool[b].order() <= m)
                    || theorem.quantifies_over_homomorphisms()
            };
            (0..pool.len())
                .flat_map(|a| (0..pool.len()).map(move |b| (a, b)))
                .filter(|&(a, b)| fits(a, b))
                .map(|(a, b)| Task::Two(a, b))
                .collect()
        }
    }
}

fn all_nonempty_subsets(order: usize) -> Vec<Subset> {
    (1u32..(1u32 << order))
        .map(|mask| Subset::with_order(order, (0..order).filter(|&i| mask >> i & 1 == 1)).expect("nonempty"))
        .collect()
}

fn run_task(theorem: TheoremId, pool: &[GGCertificate], task: Task, collect: bool) -> Result<Tally> {
    let mut tally = Tally::default();
    let mut push = |inputs: Inputs<'_>| -> Result<()> {
        tally.add(verify(theorem, &inputs)?, collect);
        Ok(())
    };
    match (theorem.signature(), task) {
        (Signature::Structure, Task::One(i)) => push(Inputs::Structure(&pool[i]))?,
        (Signature::WithSubset, Task::One(i)) => {
            let g = &pool[i];
            let subsets = if theorem == TheoremId::T1_20 {
                all_nonempty_subsets(g.order())
            } else {
                enumerate_gsubgroups(g, None)?
            };
            for s in &subsets {
                push(Inputs::WithSubset(g, s))?;
            }
        }
        (Signature::WithTwoSubsets, Task::One(i)) => {
            let g = &pool[i];
            let subgroups = enumerate_gsubgroups(g, None)?;
            for n in &subgroups {
                for h in &subgroups {
                    push(Inputs::WithTwoSubsets(g, n, h))?;
                }
            }
        }
        (Signature::Pair, Task::Two(a, b)) => push(Inputs::Pair(&pool[a], &pool[b]))?,
        (_, Task::Two(a, b)) => {
            let (g, h) = (&pool[a], &pool[b]);
            let mut maps = Vec::new();
            for_each_homomorphism(g, h, |m| maps.push(m.to_vec()))?;
            let subgroups = if theorem == TheoremId::T1_10iii { enumerate_gsubgroups(g, None)? } else { Vec::new() };
            for map in maps {
                let f = Morphism::new(g, h, map)?;
                match theorem.signature() {
                    Signature::HomAtPoint => {
                        for a in 0..g.order() {
                            push(Inputs::HomAtPoint(&f, a))?;
                        }
                    }
                    Signature::HomWithSubset => {
                        for k in &subgroups {
                            push(Inputs::HomWithSubset(&f, k))?;
                        }
                    }
                    _ => push(Inputs::Hom(&f))?,
                }
            }
        }
        _ => unreachable!("tasks match signatures"),
    }
    Ok(tally)
}

fn run(
    theorem: TheoremId,
    pool: &[GGCertificate],
    pair_order_bound: Option<usize>,
    exec: Exec,
    collect: bool,
) -> Result<Tally> {
    let tasks = tasks(theorem, pool, pair_order_bound);
    let parts = exec.map(&tasks, |&t| run_task(theorem, pool, t, collect));
    let mut total = Tally::default();
    for part in parts {
        total.merge(part?);
    }
    Ok(total)
}

/// Order bound of the structure pool searched for `theorem`.
pub fn structure_order_bound(theorem: TheoremId, max_order: usize) -> Result<usize> {
    let limit = if theorem.quantifies_over_homomorphisms() { MAX_HOM_SEARCH_ORDER } else { MAX_SEARCH_ORDER };
    if max_order > limit {
        return Err(Error::TooLarge { what: "search order", size: max_order, limit });
    }
    Ok(if theorem.quantifies_over_homomorphisms() { max_order.min(MAX_HOM_ORDER) } else { max_order })
}

/// Exhaustive search over `enumerate_gg(max_order)` and, per theorem, every
/// subset, generalized subgroup, homomorphism and point. Direct-product
/// pairs are limited to `|G|·|H| ≤ max_order`; homomorphism theorems use
/// structures of order at most 6.
pub fn search_counterexample(theorem: TheoremId, max_order: usize) -> Result<SearchOutcome> {
    search_counterexample_with(theorem, max_order, Exec::default())
}

pub fn search_counterexample_with(theorem: TheoremId, max_order: usize, exec: Exec) -> Result<SearchOutcome> {
    let bound = structure_order_bound(theorem, max_order)?;
    let pool = enumerate_gg(bound)?;
    search_in_pool(theorem, &pool, max_order, exec)
}

/// As [`search_counterexample`], over a caller-supplied pool (which must
/// respect the homomorphism enumeration bound where relevant).
pub fn search_in_pool(
    theorem: TheoremId,
    pool: &[GGCertificate],
    max_order: usize,
    exec: Exec,
) -> Result<SearchOutcome> {
    let bound = structure_order_bound(theorem, max_order)?;
    let pool: Vec<GGCertificate> = pool.iter().filter(|c| c.order() <= bound).cloned().collect();
    let tally = run(theorem, &pool, Some(max_order), exec, false)?;
    let rate = if tally.instances == 0 { 0.0 } else { tally.non_vacuous as f64 / tally.instances as f64 };
    Ok(SearchOutcome {
        theorem_id: theorem,
        max_order,
        structure_order_bound: bound,
        structures: pool.len(),
        instances: tally.instances,
        non_vacuous: tally.non_vacuous,
        non_vacuity_rate: rate,
        failures: tally.failures,
        result: if tally.first.is_some() { SearchResult::Counterexample } else { SearchResult::NoneFound },
        counterexample: tally.first,
        note_counts: tally.notes,
    })
}

/// Every report for `theorem` over `enumerate_gg(max_order)`, in search
/// order.
pub fn verify_enumerate(theorem: TheoremId, max_order: usize) -> Result<Vec<VerificationReport>> {
    let bound = structure_order_bound(theorem, max_order)?;
    let pool = enumerate_gg(bound)?;
    Ok(run(theorem, &pool, Some(max_order), Exec::default(), true)?.reports)
}

/// Every report for `theorem` on the given structures: each one separately
/// for single-structure theorems (all subsets or generalized subgroups
/// where the theorem takes them), or the ordered pair `(G, H)` (all
/// homomorphisms `G → H` where the theorem takes maps).
pub fn verify_on(theorem: TheoremId, structures: &[GGCertificate]) -> Result<Vec<VerificationReport>> {
    let exec = Exec::default();
    let tally = match theorem.signature() {
        Signature::Structure | Signature::WithSubset | Signature::WithTwoSubsets => {
            run(theorem, structures, None, exec, true)?
        }
        _ => {
            if structures.len() != 2 {
                return Err(Error::SignatureMismatch(format!(
                    "{theorem} takes exactly two structures, got {}",
                    structures.len()
                )));
            }
            run_task(theorem, structures, Task::Two(0, 1), true)?
        }
    };
    Ok(tally.reports)
}
