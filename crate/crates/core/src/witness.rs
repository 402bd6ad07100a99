//! Concrete counterexamples and the independent re-evaluation that confirms
//! them.
//!
//! A [`Witness`] names the violated property, the element indices involved,
//! and (for identities) the two unequal values. [`Witness::confirms`]
//! recomputes everything it needs from the raw table: local identities and
//! inverses are searched by brute force here rather than read from a
//! certificate, so a confirmed witness does not depend on the code path that
//! produced it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::subgroup::Subset;
use crate::table::FiniteMagma;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    // table properties
    Associative,
    Commutative,
    LeftCancellative,
    RightCancellative,
    LatinSquare,
    IdempotentTable,
    TwoSidedIdentity,
    LeftIdentity,
    NoLeftIdentity,
    AbelianTable,
    RightBol,
    // generalized-group axioms and their consequences
    NoIdentity,
    NonUniqueIdentity,
    NoInverse,
    NonUniqueInverse,
    IdentityOfIdentity,
    IdentityOfInverse,
    DoubleInverse,
    IdentityMismatch,
    InverseMismatch,
    NotNormal,
    NonConstantIdentity,
    AntiAutomorphicInverse,
    CentralIdentity,
    IdentityCriterion,
    // subsets
    NotClosed,
    InverseNotInSubset,
    QuotientCriterion,
    NotConjugationStable,
    SubsetNoIdentity,
    NotCovered,
    NonUniqueDecomposition,
    DecompositionNotHomomorphic,
    CosetIllDefined,
    CosetRepresentative,
    // maps
    HomViolation,
    IdentityNotPreserved,
    InverseNotPreserved,
    NonInjective,
    KernelNontrivial,
    KernelHasNonIdempotent,
    UnionIllDefined,
}

impl WitnessKind {
    pub fn as_str(self) -> &'static str {
        use WitnessKind::*;
        match self {
            Associative => "associative",
            Commutative => "commutative",
            LeftCancellative => "left-cancellative",
            RightCancellative => "right-cancellative",
            LatinSquare => "latin-square",
            IdempotentTable => "idempotent-table",
            TwoSidedIdentity => "two-sided-identity",
            LeftIdentity => "left-identity",
            NoLeftIdentity => "no-left-identity",
            AbelianTable => "abelian-table",
            RightBol => "right-bol",
            NoIdentity => "no-identity",
            NonUniqueIdentity => "non-unique-identity",
            NoInverse => "no-inverse",
            NonUniqueInverse => "non-unique-inverse",
            IdentityOfIdentity => "identity-of-identity",
            IdentityOfInverse => "identity-of-inverse",
            DoubleInverse => "double-inverse",
            IdentityMismatch => "identity-mismatch",
            InverseMismatch => "inverse-mismatch",
            NotNormal => "not-normal",
            NonConstantIdentity => "non-constant-identity",
            AntiAutomorphicInverse => "anti-automorphic-inverse",
            CentralIdentity => "central-identity",
            IdentityCriterion => "identity-criterion",
            NotClosed => "not-closed",
            InverseNotInSubset => "inverse-not-in-subset",
            QuotientCriterion => "quotient-criterion",
            NotConjugationStable => "not-conjugation-stable",
            SubsetNoIdentity => "subset-no-identity",
            NotCovered => "not-covered",
            NonUniqueDecomposition => "non-unique-decomposition",
            DecompositionNotHomomorphic => "decomposition-not-homomorphic",
            CosetIllDefined => "coset-ill-defined",
            CosetRepresentative => "coset-representative",
            HomViolation => "hom-violation",
            IdentityNotPreserved => "identity-not-preserved",
            InverseNotPreserved => "inverse-not-preserved",
            NonInjective => "non-injective",
            KernelNontrivial => "kernel-nontrivial",
            KernelHasNonIdempotent => "kernel-has-non-idempotent",
            UnionIllDefined => "union-ill-defined",
        }
    }
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub indices: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<[usize; 2]>,
}

impl Witness {
    pub fn new(kind: WitnessKind, indices: impl Into<Vec<usize>>) -> Self {
        let indices = indices.into();
        debug_assert!((1..=4).contains(&indices.len()));
        Witness { kind, indices, detail: None }
    }

    pub fn with_detail(mut self, lhs: usize, rhs: usize) -> Self {
        self.detail = Some([lhs, rhs]);
        self
    }

    fn idx(&self, k: usize) -> Option<usize> {
        self.indices.get(k).copied()
    }

    /// Re-evaluates the witness against the structures in `ctx`.
    ///
    /// Returns `false` when the context lacks what the kind needs (a subset,
    /// a map), when an index is out of range, or when the recomputed facts
    /// do not show the claimed violation.
    pub fn confirms(&self, ctx: &WitnessContext<'_>) -> bool {
        let n = ctx.magma.order();
        if self.indices.is_empty() || self.indices.len() > 4 {
            return false;
        }
        // map-level witnesses index the domain; everything else the magma
        if self.indices.iter().any(|&i| i >= n) {
            return false;
        }
        self.check(ctx).unwrap_or(false)
    }

    fn check(&self, ctx: &WitnessContext<'_>) -> Option<bool> {
        use WitnessKind::*;
        let m = ctx.magma;
        let n = m.order();
        let mul = |a: usize, b: usize| m.mul(a, b);
        let e = |x: usize| brute_identity(m, x);
        let inv = |x: usize| brute_inverse(m, x);
        let detail_ok = |l: usize, r: usize| self.detail.is_none_or(|d| d == [l, r]);
        let i0 = self.idx(0)?;

        let ok = match self.kind {
            Associative => {
                let (x, y, z) = (i0, self.idx(1)?, self.idx(2)?);
                let (l, r) = (mul(mul(x, y), z), mul(x, mul(y, z)));
                l != r && detail_ok(l, r)
            }
            Commutative => {
                let (x, y) = (i0, self.idx(1)?);
                let (l, r) = (mul(x, y), mul(y, x));
                l != r && detail_ok(l, r)
            }
            LeftCancellative => {
                let (a, b, c) = (i0, self.idx(1)?, self.idx(2)?);
                b != c && mul(a, b) == mul(a, c)
            }
            RightCancellative => {
                let (a, b, c) = (i0, self.idx(1)?, self.idx(2)?);
                b != c && mul(b, a) == mul(c, a)
            }
            LatinSquare => {
                let (axis, line, p, q) = (i0, self.idx(1)?, self.idx(2)?, self.idx(3)?);
                p != q
                    && match axis {
                        0 => mul(line, p) == mul(line, q),
                        1 => mul(p, line) == mul(q, line),
                        _ => false,
                    }
            }
            IdempotentTable => mul(i0, i0) != i0,
            TwoSidedIdentity => (0..n).all(|x| mul(i0, x) == x && mul(x, i0) == x),
            LeftIdentity => (0..n).all(|x| mul(i0, x) == x),
            NoLeftIdentity => !(0..n).any(|c| (0..n).all(|x| mul(c, x) == x)),
            AbelianTable => (0..n).all(|x| (0..n).all(|y| mul(x, y) == mul(y, x))),
            RightBol => {
                let (x, y, z) = (i0, self.idx(1)?, self.idx(2)?);
                let l = mul(mul(mul(x, y), z), y);
                let r = mul(x, mul(mul(y, z), y));
                l != r && detail_ok(l, r)
            }
            NoIdentity => identities(m, i0).is_empty(),
            NonUniqueIdentity => {
                let (e1, e2) = (self.idx(1)?, self.idx(2)?);
                let ids = identities(m, i0);
                e1 != e2 && ids.contains(&e1) && ids.contains(&e2)
            }
            NoInverse => {
                let ex = e(i0)?;
                !(0..n).any(|y| mul(i0, y) == ex && mul(y, i0) == ex)
            }
            NonUniqueInverse => {
                let ex = e(i0)?;
                let (y1, y2) = (self.idx(1)?, self.idx(2)?);
                let is_inv = |y: usize| mul(i0, y) == ex && mul(y, i0) == ex;
                y1 != y2 && is_inv(y1) && is_inv(y2)
            }
            IdentityOfIdentity => {
                let ex = e(i0)?;
                e(ex)? != ex
            }
            IdentityOfInverse => e(inv(i0)?)? != e(i0)?,
            DoubleInverse => inv(inv(i0)?)? != i0,
            IdentityMismatch => e(i0)? != self.idx(1)?,
            InverseMismatch => inv(i0)? != self.idx(1)?,
            NotNormal => {
                let y = self.idx(1)?;
                let (l, r) = (e(mul(i0, y))?, mul(e(i0)?, e(y)?));
                l != r && detail_ok(l, r)
            }
            NonConstantIdentity => e(i0)? != e(self.idx(1)?)?,
            AntiAutomorphicInverse => {
                let b = self.idx(1)?;
                let (l, r) = (inv(mul(i0, b))?, mul(inv(b)?, inv(i0)?));
                l != r && detail_ok(l, r)
            }
            CentralIdentity => {
                let b = self.idx(1)?;
                let (ea, bi) = (e(i0)?, inv(b)?);
                mul(ea, bi) != mul(bi, ea)
            }
            IdentityCriterion => {
                let b = self.idx(1)?;
                let q = mul(i0, inv(b)?);
                (e(i0)? == e(q)?) != (q == i0)
            }
            NotClosed => {
                let s = ctx.subset?;
                let b = self.idx(1)?;
                s.contains(i0) && s.contains(b) && !s.contains(mul(i0, b))
            }
            InverseNotInSubset => {
                let s = ctx.subset?;
                s.contains(i0) && !s.contains(inv(i0)?)
            }
            QuotientCriterion => {
                let s = ctx.subset?;
                let b = self.idx(1)?;
                s.contains(i0) && s.contains(b) && !s.contains(mul(i0, inv(b)?))
            }
            NotConjugationStable => {
                let s = ctx.subset?;
                let el = self.idx(1)?;
                s.contains(el) && !s.contains(mul(mul(i0, el), inv(i0)?))
            }
            SubsetNoIdentity => {
                let s = ctx.subset?;
                s.members().first() == Some(&i0)
                    && !s.members().iter().any(|&c| s.members().iter().all(|&x| mul(c, x) == x && mul(x, c) == x))
            }
            NotCovered => {
                let (nn, hh) = (ctx.subset?, ctx.second?);
                !nn.members().iter().any(|&a| hh.members().iter().any(|&b| mul(a, b) == i0))
            }
            NonUniqueDecomposition => {
                let (nn, hh) = (ctx.subset?, ctx.second?);
                let (h, n1, h1) = (self.idx(1)?, self.idx(2)?, self.idx(3)?);
                nn.contains(i0)
                    && nn.contains(n1)
                    && hh.contains(h)
                    && hh.contains(h1)
                    && (i0, h) != (n1, h1)
                    && mul(i0, h) == mul(n1, h1)
            }
            DecompositionNotHomomorphic => {
                let (nn, hh) = (ctx.subset?, ctx.second?);
                let b = self.idx(1)?;
                let dec = |x: usize| {
                    let mut found = None;
                    for &p in nn.members() {
                        for &q in hh.members() {
                            if mul(p, q) == x {
                                if found.is_some() {
                                    return None;
                                }
                                found = Some((p, q));
                            }
                        }
                    }
                    found
                };
                let (na, ha) = dec(i0)?;
                let (nb, hb) = dec(b)?;
                let (nab, hab) = dec(mul(i0, b))?;
                (mul(na, nb), mul(ha, hb)) != (nab, hab)
            }
            CosetIllDefined | CosetRepresentative => {
                let s = ctx.subset?;
                let (a2, b, b2) = (self.idx(1)?, self.idx(2)?, self.idx(3)?);
                let coset = |x: usize| {
                    let mut c: Vec<usize> = s.members().iter().map(|&h| mul(x, h)).collect();
                    c.sort_unstable();
                    c.dedup();
                    c
                };
                let related = |x: usize, y: usize| match self.kind {
                    CosetIllDefined => coset(x).contains(&y),
                    _ => coset(x) == coset(y),
                };
                related(i0, a2) && related(b, b2) && coset(mul(a2, b2)) != coset(mul(i0, b))
            }
            HomViolation => {
                let (f, c) = (ctx.map?, ctx.codomain?);
                let b = self.idx(1)?;
                let (l, r) = (f[mul(i0, b)], c.mul(f[i0], f[b]));
                l != r && detail_ok(l, r)
            }
            IdentityNotPreserved => {
                let (f, c) = (ctx.map?, ctx.codomain?);
                f[e(i0)?] != brute_identity(c, f[i0])?
            }
            InverseNotPreserved => {
                let (f, c) = (ctx.map?, ctx.codomain?);
                f[inv(i0)?] != brute_inverse(c, f[i0])?
            }
            NonInjective => {
                let f = ctx.map?;
                let y = self.idx(1)?;
                i0 != y && f[i0] == f[y]
            }
            KernelNontrivial => {
                let f = ctx.map?;
                let x = self.idx(1)?;
                let ea = e(i0)?;
                f[x] == f[ea] && x != ea
            }
            KernelHasNonIdempotent => {
                let f = ctx.map?;
                let x = self.idx(1)?;
                f[x] == f[e(i0)?] && e(x)? != x
            }
            UnionIllDefined => {
                let f = ctx.map?;
                let (a2, b, b2) = (self.idx(1)?, self.idx(2)?, self.idx(3)?);
                let pair = |x: usize| Some((e(x)?, f[x]));
                pair(i0)? == pair(a2)? && pair(b)? == pair(b2)? && pair(mul(i0, b))? != pair(mul(a2, b2))?
            }
        };
        Some(ok)
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?}", self.kind, self.indices)?;
        if let Some([l, r]) = self.detail {
            write!(f, ": {l} vs {r}")?;
        }
        Ok(())
    }
}

/// Structures a witness is evaluated against.
#[derive(Clone, Copy, Debug)]
pub struct WitnessContext<'a> {
    pub magma: &'a FiniteMagma,
    pub subset: Option<&'a Subset>,
    pub second: Option<&'a Subset>,
    pub map: Option<&'a [usize]>,
    pub codomain: Option<&'a FiniteMagma>,
}

impl<'a> WitnessContext<'a> {
    pub fn new(magma: &'a FiniteMagma) -> Self {
        WitnessContext { magma, subset: None, second: None, map: None, codomain: None }
    }

    pub fn with_subset(mut self, s: &'a Subset) -> Self {
        self.subset = Some(s);
        self
    }

    pub fn with_second(mut self, s: &'a Subset) -> Self {
        self.second = Some(s);
        self
    }

    pub fn with_map(mut self, map: &'a [usize], codomain: &'a FiniteMagma) -> Self {
        self.map = Some(map);
        self.codomain = Some(codomain);
        self
    }
}

fn identities(m: &FiniteMagma, x: usize) -> Vec<usize> {
    (0..m.order()).filter(|&c| m.mul(x, c) == x && m.mul(c, x) == x).collect()
}

fn brute_identity(m: &FiniteMagma, x: usize) -> Option<usize> {
    match identities(m, x).as_slice() {
        [only] => Some(*only),
        _ => None,
    }
}

fn brute_inverse(m: &FiniteMagma, x: usize) -> Option<usize> {
    let ex = brute_identity(m, x)?;
    let mut found = (0..m.order()).filter(|&y| m.mul(x, y) == ex && m.mul(y, x) == ex);
    let first = found.next()?;
    found.next().is_none().then_some(first)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn left_zero2() -> FiniteMagma {
        FiniteMagma::from_fn("L2", 2, |x, _| x).unwrap()
    }

    #[test]
    fn commutative_witness_confirms_on_left_zero() {
        let m = left_zero2();
        let w = Witness::new(WitnessKind::Commutative, vec![0, 1]).with_detail(0, 1);
        assert!(w.confirms(&WitnessContext::new(&m)));
        let wrong = Witness::new(WitnessKind::Commutative, vec![0, 1]).with_detail(1, 0);
        assert!(!wrong.confirms(&WitnessContext::new(&m)));
    }

    #[test]
    fn out_of_range_and_missing_context_are_rejected() {
        let m = left_zero2();
        let w = Witness::new(WitnessKind::IdempotentTable, vec![5]);
        assert!(!w.confirms(&WitnessContext::new(&m)));
        let needs_subset = Witness::new(WitnessKind::NotClosed, vec![0, 1]);
        assert!(!needs_subset.confirms(&WitnessContext::new(&m)));
    }

    #[test]
    fn conjugation_witness_on_left_zero_kernel() {
        let m = left_zero2();
        let s = Subset::new(&m, [0]).unwrap();
        // 1·0·1⁻¹ = 1 ∉ {0}
        let w = Witness::new(WitnessKind::NotConjugationStable, vec![1, 0]);
        assert!(w.confirms(&WitnessContext::new(&m).with_subset(&s)));
    }
}
