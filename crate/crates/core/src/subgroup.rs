//! Subsets of a structure and the generalized-subgroup tests.

use std::fmt;
use std::str::FromStr;

use crate::axioms::{certify, GGCertificate};
use crate::error::{Error, Result};
use crate::table::{FiniteMagma, PropertyResult};
use crate::witness::{Witness, WitnessKind};

/// Largest order for which every subset is enumerated.
pub const MAX_SUBSET_ENUMERATION: usize = 16;

/// A nonempty set of element indices of a parent structure, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subset {
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl Subset {
    pub fn new(parent: &FiniteMagma, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::with_order(parent.order(), members)
    }

    pub fn with_order(order: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut mask = vec![false; order];
        for x in members {
            if x >= order {
                return Err(Error::ForeignIndices { index: x, order });
            }
            mask[x] = true;
        }
        let members: Vec<usize> = (0..order).filter(|&x| mask[x]).collect();
        if members.is_empty() {
            return Err(Error::EmptySubset);
        }
        Ok(Subset { members, mask })
    }

    pub fn full(parent: &FiniteMagma) -> Self {
        Self::with_order(parent.order(), 0..parent.order()).expect("structures are nonempty")
    }

    pub(crate) fn from_mask(mask: u32, order: usize) -> Self {
        Self::with_order(order, (0..order).filter(|&i| mask >> i & 1 == 1)).expect("nonzero mask")
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    pub fn parent_order(&self) -> usize {
        self.mask.len()
    }

    pub(crate) fn check_parent(&self, order: usize) -> Result<()> {
        if self.mask.len() != order {
            let index = *self.members.iter().find(|&&x| x >= order).unwrap_or(&self.members[0]);
            return Err(Error::ForeignIndices { index, order });
        }
        Ok(())
    }

    /// Labels in index order, e.g. `{0,2}`.
    pub fn describe(&self, m: &FiniteMagma) -> String {
        let labels: Vec<&str> = self.members.iter().map(|&i| m.label(i)).collect();
        format!("{{{}}}", labels.join(","))
    }

    /// Comma-separated indices, the command-line form.
    pub fn indices(&self) -> String {
        let parts: Vec<String> = self.members.iter().map(|i| i.to_string()).collect();
        parts.join(",")
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.indices())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Criterion {
    /// Closed under products and inverses.
    ClosureAndInverse,
    /// `a b⁻¹ ∈ S` for all `a, b ∈ S`.
    QuotientCriterion,
    /// Quotient criterion plus `x s x⁻¹ ∈ S` for every `x` in the parent.
    Normal,
}

impl FromStr for Criterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closure-and-inverse" => Ok(Criterion::ClosureAndInverse),
            "quotient-criterion" => Ok(Criterion::QuotientCriterion),
            "normal" => Ok(Criterion::Normal),
            other => Err(Error::UnknownProperty(other.to_string())),
        }
    }
}

fn pairs(s: &Subset) -> impl Iterator<Item = (usize, usize)> + '_ {
    s.members.iter().flat_map(move |&a| s.members.iter().map(move |&b| (a, b)))
}

pub(crate) fn closure_violation(m: &FiniteMagma, s: &Subset) -> Option<Witness> {
    pairs(s).find_map(|(a, b)| {
        let ab = m.mul(a, b);
        (!s.contains(ab)).then(|| Witness::new(WitnessKind::NotClosed, [a, b]))
    })
}

fn inverse_violation(cert: &GGCertificate, s: &Subset) -> Option<Witness> {
    s.members.iter().find(|&&a| !s.contains(cert.inv(a))).map(|&a| Witness::new(WitnessKind::InverseNotInSubset, [a]))
}

pub(crate) fn quotient_violation(cert: &GGCertificate, s: &Subset) -> Option<Witness> {
    pairs(s).find_map(|(a, b)| {
        let q = cert.mul(a, cert.inv(b));
        (!s.contains(q)).then(|| Witness::new(WitnessKind::QuotientCriterion, [a, b]))
    })
}

pub(crate) fn conjugation_violation(cert: &GGCertificate, s: &Subset) -> Option<Witness> {
    conjugation_scan(cert, s, |_, _| true)
}

/// Conjugation restricted to conjugators sharing the local identity of the
/// conjugated element: `x s x⁻¹ ∈ S` whenever `e(x) = e(s)`.
pub fn local_conjugation_violation(cert: &GGCertificate, s: &Subset) -> Option<Witness> {
    conjugation_scan(cert, s, |x, el| cert.e(x) == cert.e(el))
}

fn conjugation_scan(cert: &GGCertificate, s: &Subset, admit: impl Fn(usize, usize) -> bool) -> Option<Witness> {
    (0..cert.order()).find_map(|x| {
        s.members.iter().find_map(|&el| {
            let c = cert.mul(cert.mul(x, el), cert.inv(x));
            (admit(x, el) && !s.contains(c)).then(|| Witness::new(WitnessKind::NotConjugationStable, [x, el]))
        })
    })
}

pub fn subgroup_test(cert: &GGCertificate, s: &Subset, criterion: Criterion) -> Result<PropertyResult> {
    s.check_parent(cert.order())?;
    let violation = match criterion {
        Criterion::ClosureAndInverse => closure_violation(cert.base(), s).or_else(|| inverse_violation(cert, s)),
        Criterion::QuotientCriterion => quotient_violation(cert, s),
        Criterion::Normal => quotient_violation(cert, s).or_else(|| conjugation_violation(cert, s)),
    };
    Ok(PropertyResult::from_violation(violation))
}

pub fn is_abelian_subset(m: &FiniteMagma, s: &Subset) -> PropertyResult {
    let violation = s.members.iter().enumerate().find_map(|(k, &a)| {
        s.members[k + 1..].iter().find_map(|&b| {
            let (l, r) = (m.mul(a, b), m.mul(b, a));
            (l != r).then(|| Witness::new(WitnessKind::Commutative, [a, b]).with_detail(l, r))
        })
    });
    PropertyResult::from_violation(violation)
}

/// Whether `s` is a group under the restricted operation: a generalized
/// subgroup with a single two-sided identity that is cancellative on `s`.
pub fn is_group_subset(cert: &GGCertificate, s: &Subset) -> Result<PropertyResult> {
    s.check_parent(cert.order())?;
    if let Some(w) = quotient_violation(cert, s) {
        return Ok(PropertyResult::fails(w));
    }
    let has_identity = s.members.iter().any(|&c| s.members.iter().all(|&x| cert.mul(c, x) == x && cert.mul(x, c) == x));
    if !has_identity {
        return Ok(PropertyResult::fails(Witness::new(WitnessKind::SubsetNoIdentity, [s.members[0]])));
    }
    for &a in &s.members {
        for (k, &b) in s.members.iter().enumerate() {
            for &c in &s.members[k + 1..] {
                if cert.mul(a, b) == cert.mul(a, c) {
                    return Ok(PropertyResult::fails(Witness::new(WitnessKind::LeftCancellative, [a, b, c])));
                }
                if cert.mul(b, a) == cert.mul(c, a) {
                    return Ok(PropertyResult::fails(Witness::new(WitnessKind::RightCancellative, [a, b, c])));
                }
            }
        }
    }
    Ok(PropertyResult::holds())
}

/// The substructure on `s`, relabeled with the parent's labels and certified.
pub fn restrict(cert: &GGCertificate, s: &Subset) -> Result<GGCertificate> {
    s.check_parent(cert.order())?;
    if let Some(w) = closure_violation(cert.base(), s) {
        return Err(Error::NotSubgroup(w));
    }
    let position = |x: usize| s.members.binary_search(&x).expect("closed subset");
    let labels = s.members.iter().map(|&i| cert.base().label(i).to_string()).collect();
    let name = format!("{}|{}", cert.name(), s.describe(cert.base()));
    let magma = FiniteMagma::from_fn_labeled(name, labels, |i, j| position(cert.mul(s.members[i], s.members[j])))?;
    certify(magma).map_err(Error::CertificationFailed)
}

/// All nonempty subsets passing the quotient criterion, ordered by size and
/// then lexicographically.
pub fn enumerate_gsubgroups(cert: &GGCertificate, max_size: Option<usize>) -> Result<Vec<Subset>> {
    let n = cert.order();
    if n > MAX_SUBSET_ENUMERATION {
        return Err(Error::TooLarge { what: "subset enumeration", size: n, limit: MAX_SUBSET_ENUMERATION });
    }
    let max_size = max_size.unwrap_or(n);
    // quotients[a] = bitmask of { a b⁻¹ : b } indexed by b
    let quotient: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| cert.mul(a, cert.inv(b))).collect()).collect();
    let mut found: Vec<u32> = (1u32..(1u32 << n))
        .filter(|mask| (mask.count_ones() as usize) <= max_size)
        .filter(|&mask| {
            let bits = || (0..n).filter(move |&i| mask >> i & 1 == 1);
            bits().all(|a| bits().all(|b| mask >> quotient[a][b] & 1 == 1))
        })
        .collect();
    found.sort_by_key(|&mask| (mask.count_ones(), shortlex_key(mask, n)));
    Ok(found.into_iter().map(|mask| Subset::from_mask(mask, n)).collect())
}

fn shortlex_key(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::WitnessContext;

    fn cyclic(n: usize) -> GGCertificate {
        certify(FiniteMagma::from_fn(format!("Z{n}"), n, |a, b| (a + b) % n).unwrap()).unwrap()
    }

    fn left_zero(n: usize) -> GGCertificate {
        certify(FiniteMagma::from_fn(format!("L{n}"), n, |a, _| a).unwrap()).unwrap()
    }

    #[test]
    fn subset_validation() {
        let z4 = cyclic(4);
        assert_eq!(Subset::new(z4.base(), []), Err(Error::EmptySubset));
        assert_eq!(Subset::new(z4.base(), [0, 4]), Err(Error::ForeignIndices { index: 4, order: 4 }));
        let s = Subset::new(z4.base(), [2, 0, 2]).unwrap();
        assert_eq!(s.members(), &[0, 2]);
        let foreign = Subset::new(cyclic(6).base(), [0, 5]).unwrap();
        assert!(matches!(
            subgroup_test(&z4, &foreign, Criterion::QuotientCriterion),
            Err(Error::ForeignIndices { index: 5, order: 4 })
        ));
    }

    #[test]
    fn z4_subgroups() {
        let z4 = cyclic(4);
        let s = Subset::new(z4.base(), [0, 2]).unwrap();
        assert!(subgroup_test(&z4, &s, Criterion::QuotientCriterion).unwrap().holds);

        // brute force over pairs of {0,1}: first (a, b) with a - b ∉ S
        let members = [0usize, 1];
        let oracle = members
            .iter()
            .flat_map(|&a| members.iter().map(move |&b| (a, b)))
            .find(|&(a, b)| !members.contains(&((a + 4 - b) % 4)))
            .unwrap();
        assert_eq!(oracle, (0, 1));
        let s = Subset::new(z4.base(), members).unwrap();
        let r = subgroup_test(&z4, &s, Criterion::QuotientCriterion).unwrap();
        assert!(!r.holds);
        let w = r.witness.unwrap();
        assert_eq!(w.indices, vec![oracle.0, oracle.1]);
        assert!(w.confirms(&WitnessContext::new(z4.base()).with_subset(&s)));
    }

    #[test]
    fn left_zero_singleton_and_full_sets() {
        let l2 = left_zero(2);
        let s = Subset::new(l2.base(), [0]).unwrap();
        assert!(subgroup_test(&l2, &s, Criterion::ClosureAndInverse).unwrap().holds);
        for cert in [cyclic(4), left_zero(3), cyclic(1)] {
            let full = Subset::full(cert.base());
            for c in [Criterion::ClosureAndInverse, Criterion::QuotientCriterion, Criterion::Normal] {
                assert!(subgroup_test(&cert, &full, c).unwrap().holds);
            }
        }
    }

    #[test]
    fn left_zero_singleton_is_not_conjugation_stable() {
        let l2 = left_zero(2);
        let s = Subset::new(l2.base(), [0]).unwrap();
        let r = subgroup_test(&l2, &s, Criterion::Normal).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness.unwrap().indices, vec![1, 0]);
        assert!(local_conjugation_violation(&l2, &s).is_none());
    }

    fn brute_gsubgroups(n: usize, quotient: impl Fn(usize, usize) -> usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = (1u32..1 << n)
            .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|s| s.iter().all(|&a| s.iter().all(|&b| s.contains(&quotient(a, b)))))
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let z4 = enumerate_gsubgroups(&cyclic(4), None).unwrap();
        let got: Vec<&[usize]> = z4.iter().map(|s| s.members()).collect();
        assert_eq!(got, vec![&[0][..], &[0, 2], &[0, 1, 2, 3]]);
        assert_eq!(brute_gsubgroups(4, |a, b| (a + 4 - b) % 4), vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]);

        let l2 = enumerate_gsubgroups(&left_zero(2), None).unwrap();
        let got: Vec<&[usize]> = l2.iter().map(|s| s.members()).collect();
        assert_eq!(got, vec![&[0][..], &[1], &[0, 1]]);

        let trivial = enumerate_gsubgroups(&cyclic(1), None).unwrap();
        assert_eq!(trivial.len(), 1);

        let z6 = enumerate_gsubgroups(&cyclic(6), Some(3)).unwrap();
        let got: Vec<Vec<usize>> = z6.iter().map(|s| s.members().to_vec()).collect();
        let brute: Vec<Vec<usize>> =
            brute_gsubgroups(6, |a, b| (a + 6 - b) % 6).into_iter().filter(|s| s.len() <= 3).collect();
        assert_eq!(got, brute);
    }

    #[test]
    fn enumeration_limit() {
        let big = certify(FiniteMagma::from_fn("L17", 17, |a, _| a).unwrap()).unwrap();
        assert!(matches!(enumerate_gsubgroups(&big, None), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn group_subsets() {
        let l2 = left_zero(2);
        let full = Subset::full(l2.base());
        let r = is_group_subset(&l2, &full).unwrap();
        assert!(!r.holds);
        let z4 = cyclic(4);
        assert!(is_group_subset(&z4, &Subset::new(z4.base(), [0, 2]).unwrap()).unwrap().holds);
        let sub = restrict(&z4, &Subset::new(z4.base(), [0, 2]).unwrap()).unwrap();
        assert_eq!(sub.order(), 2);
        assert!(sub.is_group());
    }
}
