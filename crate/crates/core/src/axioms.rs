//! Certification of the generalized-group axioms on a finite table.
//!
//! [`certify`] checks, in this order: associativity, existence of a local
//! identity for every element, its uniqueness, existence of an inverse, and
//! uniqueness of that inverse. The consequences `e(e(x)) = e(x)`,
//! `e(x⁻¹) = e(x)` and `(x⁻¹)⁻¹ = x` are then audited on the computed maps.
//! A certificate is only handed out when all of these pass.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::Exec;
use crate::table::{self, to_document_string, FiniteMagma, MagmaDocOut, Property};
use crate::witness::{Witness, WitnessKind};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Flags {
    /// `e(xy) = e(x)e(y)` for all `x, y`.
    pub normal: bool,
    pub idempotent: bool,
    pub abelian: bool,
    pub cancellative: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Associativity,
    IdentityExistence,
    IdentityUniqueness,
    InverseExistence,
    /// Audit only: implied by the other axioms in an associative table.
    InverseUniqueness,
    /// Audit of `e(e(x)) = e(x)`, `e(x⁻¹) = e(x)`, `(x⁻¹)⁻¹ = x`.
    DerivedIdentity,
}

impl Axiom {
    pub fn as_str(self) -> &'static str {
        match self {
            Axiom::Associativity => "associativity",
            Axiom::IdentityExistence => "identity-existence",
            Axiom::IdentityUniqueness => "identity-uniqueness",
            Axiom::InverseExistence => "inverse-existence",
            Axiom::InverseUniqueness => "inverse-uniqueness",
            Axiom::DerivedIdentity => "derived-identity",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Diagnostic {
    pub failed_axiom: Axiom,
    pub witness: Witness,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails: {}", self.failed_axiom.as_str(), self.witness)
    }
}

impl std::error::Error for Diagnostic {}

/// A magma together with verified local-identity and inverse maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GGCertificate {
    base: FiniteMagma,
    e_map: Vec<usize>,
    inv_map: Vec<usize>,
    flags: Flags,
}

impl GGCertificate {
    pub fn base(&self) -> &FiniteMagma {
        &self.base
    }

    pub fn into_base(self) -> FiniteMagma {
        self.base
    }

    pub fn name(&self) -> &str {
        self.base.name()
    }

    pub fn order(&self) -> usize {
        self.base.order()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.base.mul(a, b)
    }

    #[inline]
    pub fn e(&self, x: usize) -> usize {
        self.e_map[x]
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv_map[x]
    }

    pub fn e_map(&self) -> &[usize] {
        &self.e_map
    }

    pub fn inv_map(&self) -> &[usize] {
        &self.inv_map
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    /// A generalized group is a group iff all local identities coincide.
    pub fn is_group(&self) -> bool {
        self.e_map.iter().all(|&e| e == self.e_map[0])
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.base = self.base.renamed(name);
        self
    }

    /// Certified document: the base members followed by `maps` and `flags`.
    pub fn to_document(&self) -> String {
        #[derive(Serialize)]
        struct Maps<'a> {
            e: &'a [usize],
            inv: &'a [usize],
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            #[serde(flatten)]
            base: MagmaDocOut<'a>,
            maps: Maps<'a>,
            flags: Flags,
        }
        to_document_string(&Doc {
            base: MagmaDocOut::from(&self.base),
            maps: Maps { e: &self.e_map, inv: &self.inv_map },
            flags: self.flags,
        })
    }
}

fn identity_candidates(m: &FiniteMagma, x: usize) -> Vec<usize> {
    (0..m.order()).filter(|&c| m.mul(x, c) == x && m.mul(c, x) == x).collect()
}

/// The unique `e` with `x·e = e·x = x`.
pub fn local_identity(m: &FiniteMagma, x: usize) -> Result<usize> {
    let n = m.order();
    if x >= n {
        return Err(Error::IndexOutOfRange { index: x as i64, order: n });
    }
    match identity_candidates(m, x).as_slice() {
        [] => Err(Error::NoIdentity { x }),
        [e] => Ok(*e),
        [first, second, ..] => Err(Error::NonUniqueIdentity { x, first: *first, second: *second }),
    }
}

pub fn certify(m: FiniteMagma) -> Result<GGCertificate, Diagnostic> {
    certify_with(m, Exec::default())
}

pub fn certify_with(m: FiniteMagma, exec: Exec) -> Result<GGCertificate, Diagnostic> {
    let n = m.order();
    let fail = |failed_axiom, witness| Err(Diagnostic { failed_axiom, witness });

    if let Some(w) = table::associativity_violation(&m, exec) {
        return fail(Axiom::Associativity, w);
    }

    let candidates: Vec<Vec<usize>> = (0..n).map(|x| identity_candidates(&m, x)).collect();
    if let Some(x) = candidates.iter().position(|c| c.is_empty()) {
        return fail(Axiom::IdentityExistence, Witness::new(WitnessKind::NoIdentity, [x]));
    }
    if let Some(x) = candidates.iter().position(|c| c.len() > 1) {
        let c = &candidates[x];
        return fail(Axiom::IdentityUniqueness, Witness::new(WitnessKind::NonUniqueIdentity, [x, c[0], c[1]]));
    }
    let e_map: Vec<usize> = candidates.iter().map(|c| c[0]).collect();

    let inverses: Vec<Vec<usize>> =
        (0..n).map(|x| (0..n).filter(|&y| m.mul(x, y) == e_map[x] && m.mul(y, x) == e_map[x]).collect()).collect();
    if let Some(x) = inverses.iter().position(|c| c.is_empty()) {
        return fail(Axiom::InverseExistence, Witness::new(WitnessKind::NoInverse, [x]));
    }
    if let Some(x) = inverses.iter().position(|c| c.len() > 1) {
        let c = &inverses[x];
        return fail(Axiom::InverseUniqueness, Witness::new(WitnessKind::NonUniqueInverse, [x, c[0], c[1]]));
    }
    let inv_map: Vec<usize> = inverses.iter().map(|c| c[0]).collect();

    for x in 0..n {
        let (ex, xi) = (e_map[x], inv_map[x]);
        let derived = if e_map[ex] != ex {
            Some(Witness::new(WitnessKind::IdentityOfIdentity, [x]).with_detail(e_map[ex], ex))
        } else if e_map[xi] != ex {
            Some(Witness::new(WitnessKind::IdentityOfInverse, [x]).with_detail(e_map[xi], ex))
        } else if inv_map[xi] != x {
            Some(Witness::new(WitnessKind::DoubleInverse, [x]).with_detail(inv_map[xi], x))
        } else {
            None
        };
        if let Some(w) = derived {
            return fail(Axiom::DerivedIdentity, w);
        }
    }

    let flags = compute_flags(&m, &e_map);
    Ok(GGCertificate { base: m, e_map, inv_map, flags })
}

fn compute_flags(m: &FiniteMagma, e_map: &[usize]) -> Flags {
    Flags {
        normal: normality_violation(m, e_map).is_none(),
        idempotent: table::check_property(m, Property::IdempotentTable).holds,
        abelian: table::check_property(m, Property::Commutative).holds,
        cancellative: table::check_property(m, Property::Cancellative).holds,
    }
}

/// First pair with `e(xy) ≠ e(x)e(y)`.
pub(crate) fn normality_violation(m: &FiniteMagma, e_map: &[usize]) -> Option<Witness> {
    let n = m.order();
    (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find_map(|(x, y)| {
        let l = e_map[m.mul(x, y)];
        let r = m.mul(e_map[x], e_map[y]);
        (l != r).then(|| Witness::new(WitnessKind::NotNormal, [x, y]).with_detail(l, r))
    })
}

/// Flags recomputed from the table, ignoring the cached copy.
pub fn gg_flags(cert: &GGCertificate) -> Flags {
    compute_flags(&cert.base, &cert.e_map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::WitnessContext;

    fn cyclic(n: usize) -> FiniteMagma {
        FiniteMagma::from_fn(format!("Z{n}"), n, |a, b| (a + b) % n).unwrap()
    }

    fn left_zero(n: usize) -> FiniteMagma {
        FiniteMagma::from_fn(format!("L{n}"), n, |a, _| a).unwrap()
    }

    #[test]
    fn local_identities() {
        assert_eq!(local_identity(&cyclic(2), 1), Ok(0));
        assert_eq!(local_identity(&left_zero(2), 1), Ok(1));
        let right_zero3 = FiniteMagma::from_fn("R3", 3, |_, b| b).unwrap();
        assert_eq!(local_identity(&right_zero3, 2), Ok(2));
        assert!(matches!(local_identity(&cyclic(2), 2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn local_identity_errors() {
        // constant-0 table on two elements: 1 has no identity
        let zero = FiniteMagma::from_fn("c", 2, |_, _| 0).unwrap();
        assert_eq!(local_identity(&zero, 1), Err(Error::NoIdentity { x: 1 }));
        // two-element semilattice (min): 0 absorbs, both elements fix it
        let semilattice = FiniteMagma::from_fn("min", 2, |a, b| a.min(b)).unwrap();
        assert_eq!(local_identity(&semilattice, 0), Err(Error::NonUniqueIdentity { x: 0, first: 0, second: 1 }));
    }

    #[test]
    fn certifies_z2() {
        let c = certify(cyclic(2)).unwrap();
        assert_eq!(c.e_map(), &[0, 0]);
        assert_eq!(c.inv_map(), &[0, 1]);
        assert_eq!(c.flags(), Flags { normal: true, idempotent: false, abelian: true, cancellative: true });
        assert!(c.is_group());
    }

    #[test]
    fn certifies_left_zero() {
        let c = certify(left_zero(2)).unwrap();
        assert_eq!(c.e_map(), &[0, 1]);
        assert_eq!(c.inv_map(), &[0, 1]);
        assert_eq!(c.flags(), Flags { normal: true, idempotent: true, abelian: false, cancellative: false });
        assert!(!c.is_group());
        assert_eq!(
            gg_flags(&certify(left_zero(3)).unwrap()),
            Flags { normal: true, idempotent: true, abelian: false, cancellative: false }
        );
        assert_eq!(
            gg_flags(&certify(cyclic(4)).unwrap()),
            Flags { normal: true, idempotent: false, abelian: true, cancellative: true }
        );
    }

    #[test]
    fn two_local_identities_are_diagnosed() {
        // both elements act as identity for 0
        let m = FiniteMagma::from_fn("m", 2, |a, b| a.min(b)).unwrap();
        let d = certify(m.clone()).unwrap_err();
        assert_eq!(d.failed_axiom, Axiom::IdentityUniqueness);
        assert!(d.witness.confirms(&WitnessContext::new(&m)));
    }

    #[test]
    fn diagnostics_follow_axiom_order() {
        let nonassoc = FiniteMagma::from_fn("m", 3, |x, y| (x + 2 * y) % 3).unwrap();
        assert_eq!(certify(nonassoc).unwrap_err().failed_axiom, Axiom::Associativity);

        let zero = FiniteMagma::from_fn("c", 2, |_, _| 0).unwrap();
        let d = certify(zero.clone()).unwrap_err();
        assert_eq!(d.failed_axiom, Axiom::IdentityExistence);
        assert_eq!(d.witness.indices, vec![1]);
        assert!(d.witness.confirms(&WitnessContext::new(&zero)));

        // monoid {1, 0} under multiplication with 0 absorbing: 1 is the
        // identity of everything, but 0 also fixes 0
        let monoid = FiniteMagma::from_fn("mul", 2, |a, b| a * b).unwrap();
        assert_eq!(certify(monoid).unwrap_err().failed_axiom, Axiom::IdentityUniqueness);
    }

    #[test]
    fn certified_document_layout() {
        let doc = certify(cyclic(2)).unwrap().to_document();
        let pos = |k: &str| doc.find(&format!("\n  \"{k}\"")).unwrap();
        assert!(pos("name") < pos("elements") && pos("elements") < pos("table"));
        assert!(pos("table") < pos("maps") && pos("maps") < pos("flags"));
        let v: serde_json::Value = serde_json::from_str(&doc).unwrap();
        assert_eq!(v["maps"]["inv"], serde_json::json!([0, 1]));
        assert_eq!(v["flags"]["abelian"], serde_json::json!(true));
        let back = crate::table::parse_magma(&doc).unwrap();
        assert_eq!(certify(back).unwrap(), certify(cyclic(2)).unwrap());
    }
}
