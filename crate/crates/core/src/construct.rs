//! Direct products, quotients by generalized subgroups, and internal direct
//! products.

use crate::axioms::{certify, GGCertificate};
use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::subgroup::{is_abelian_subset, quotient_violation, restrict, Subset};
use crate::table::FiniteMagma;
use crate::witness::{Witness, WitnessKind};

/// `G × H` on pairs `(g, h)` at index `g·|H| + h`, certified from scratch.
pub fn direct_product(g: &GGCertificate, h: &GGCertificate) -> Result<GGCertificate> {
    certify(direct_product_magma(g, h)?).map_err(Error::CertificationFailed)
}

/// The componentwise table of `G × H`, before certification.
pub fn direct_product_magma(g: &GGCertificate, h: &GGCertificate) -> Result<FiniteMagma> {
    let k = h.order();
    let labels = (0..g.order() * k).map(|x| format!("({},{})", g.base().label(x / k), h.base().label(x % k))).collect();
    let name = format!("{}x{}", g.name(), h.name());
    FiniteMagma::from_fn_labeled(name, labels, |x, y| g.mul(x / k, y / k) * k + h.mul(x % k, y % k))
}

/// Left cosets `aH` of a generalized subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetFamily {
    pub subgroup: Subset,
    /// Distinct cosets, ordered by their smallest representative.
    pub cosets: Vec<Vec<usize>>,
    /// Smallest `a` with `aH` equal to the coset.
    pub representatives: Vec<usize>,
    /// Whether the cosets are pairwise disjoint and cover the parent.
    pub partition: bool,
}

impl CosetFamily {
    pub fn new(cert: &GGCertificate, s: &Subset) -> Result<Self> {
        s.check_parent(cert.order())?;
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        let mut representatives = Vec::new();
        for a in 0..cert.order() {
            let c = left_coset(cert, s, a);
            if !cosets.contains(&c) {
                cosets.push(c);
                representatives.push(a);
            }
        }
        let mut seen = vec![0usize; cert.order()];
        for &x in cosets.iter().flatten() {
            seen[x] += 1;
        }
        let partition = seen.iter().all(|&c| c == 1);
        Ok(CosetFamily { subgroup: s.clone(), cosets, representatives, partition })
    }

    /// Position of `aH` in [`CosetFamily::cosets`].
    pub fn class_of(&self, cert: &GGCertificate, a: usize) -> usize {
        let c = left_coset(cert, &self.subgroup, a);
        self.cosets.iter().position(|d| *d == c).expect("every coset is listed")
    }
}

fn left_coset(cert: &GGCertificate, s: &Subset, a: usize) -> Vec<usize> {
    let mut c: Vec<usize> = s.members().iter().map(|&h| cert.mul(a, h)).collect();
    c.sort_unstable();
    c.dedup();
    c
}

/// `G/H` with `(aH)(bH) = (ab)H`.
///
/// Representative independence is checked in two forms before the induced
/// table is certified: for `a' ∈ aH, b' ∈ bH`, and for `a'H = aH, b'H = bH`.
pub fn quotient(cert: &GGCertificate, s: &Subset) -> Result<(GGCertificate, CosetFamily)> {
    let (m, family) = quotient_magma(cert, s)?;
    let q = certify(m).map_err(Error::CertificationFailed)?;
    Ok((q, family))
}

/// The induced coset table after the well-definedness checks, before
/// certification.
pub fn quotient_magma(cert: &GGCertificate, s: &Subset) -> Result<(FiniteMagma, CosetFamily)> {
    s.check_parent(cert.order())?;
    if let Some(w) = quotient_violation(cert, s) {
        return Err(Error::NotSubgroup(w));
    }
    let family = CosetFamily::new(cert, s)?;
    let n = cert.order();
    let class: Vec<usize> = (0..n).map(|a| family.class_of(cert, a)).collect();

    for a in 0..n {
        for b in 0..n {
            let target = class[cert.mul(a, b)];
            let ca = &family.cosets[class[a]];
            let cb = &family.cosets[class[b]];
            for &a2 in ca {
                for &b2 in cb {
                    if class[cert.mul(a2, b2)] != target {
                        let w = Witness::new(WitnessKind::CosetIllDefined, [a, a2, b, b2]);
                        return Err(Error::IllDefined(w));
                    }
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let target = class[cert.mul(a, b)];
            for a2 in (0..n).filter(|&x| class[x] == class[a]) {
                for b2 in (0..n).filter(|&x| class[x] == class[b]) {
                    if class[cert.mul(a2, b2)] != target {
                        let w = Witness::new(WitnessKind::CosetRepresentative, [a, a2, b, b2]);
                        return Err(Error::IllDefined(w));
                    }
                }
            }
        }
    }

    let labels = family
        .cosets
        .iter()
        .map(|c| {
            let names: Vec<&str> = c.iter().map(|&x| cert.base().label(x)).collect();
            format!("{{{}}}", names.join(","))
        })
        .collect();
    let name = format!("{}/{}", cert.name(), s.describe(cert.base()));
    let reps = &family.representatives;
    let m = FiniteMagma::from_fn_labeled(name, labels, |i, j| class[cert.mul(reps[i], reps[j])])?;
    Ok((m, family))
}

/// Outcome of a successful internal direct product decomposition `G ≅ N × H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InternalDirectProduct {
    pub n: Subset,
    pub h: Subset,
    /// `N × H` built from the restricted substructures.
    pub product: GGCertificate,
    /// `map[a]` is the index of `(n, h)` in `product`, where `a = nh`.
    pub map: Vec<usize>,
}

impl InternalDirectProduct {
    pub fn morphism<'a>(&'a self, g: &'a GGCertificate) -> Result<Morphism<'a>> {
        Morphism::new(g, &self.product, self.map.clone())
    }
}

/// Checks the hypotheses of the internal direct product in order (both
/// subsets abelian, `G = NH`, every element of `N` commuting with every
/// element of `H`), then the conclusion: unique decompositions `a = nh` and
/// `a ↦ (n, h)` a bijective homomorphism onto `N × H`.
pub fn internal_dp(cert: &GGCertificate, n: &Subset, h: &Subset) -> Result<InternalDirectProduct> {
    for s in [n, h] {
        s.check_parent(cert.order())?;
        if let Some(w) = quotient_violation(cert, s) {
            return Err(Error::NotSubgroup(w));
        }
    }
    if let Some(w) = internal_dp_hypothesis_failure(cert, n, h) {
        return Err(w);
    }

    let decompositions = decompositions(cert, n, h);
    for d in &decompositions {
        if d.len() > 1 {
            let ((n0, h0), (n1, h1)) = (d[0], d[1]);
            return Err(Error::ConclusionFailed(Witness::new(WitnessKind::NonUniqueDecomposition, [n0, h0, n1, h1])));
        }
    }

    let nn = restrict(cert, n)?;
    let hh = restrict(cert, h)?;
    let product = direct_product(&nn, &hh)?;
    let pos = |s: &Subset, x: usize| s.members().binary_search(&x).expect("member");
    let map: Vec<usize> = decompositions.iter().map(|d| pos(n, d[0].0) * h.len() + pos(h, d[0].1)).collect();

    for a in 0..cert.order() {
        for b in 0..cert.order() {
            if map[cert.mul(a, b)] != product.mul(map[a], map[b]) {
                return Err(Error::ConclusionFailed(Witness::new(WitnessKind::DecompositionNotHomomorphic, [a, b])));
            }
        }
    }
    Ok(InternalDirectProduct { n: n.clone(), h: h.clone(), product, map })
}

/// First failing hypothesis of the internal direct product, as an error.
pub fn internal_dp_hypothesis_failure(cert: &GGCertificate, n: &Subset, h: &Subset) -> Option<Error> {
    let m = cert.base();
    for (s, which) in [(n, "N abelian"), (h, "H abelian")] {
        if let Some(w) = is_abelian_subset(m, s).witness {
            return Some(Error::HypothesisFailed { which, witness: w });
        }
    }
    if let Some(a) =
        (0..cert.order()).find(|&a| !n.members().iter().any(|&x| h.members().iter().any(|&y| cert.mul(x, y) == a)))
    {
        return Some(Error::HypothesisFailed { which: "G = NH", witness: Witness::new(WitnessKind::NotCovered, [a]) });
    }
    if let Some(w) = commuting_violation(cert, n, h) {
        return Some(Error::HypothesisFailed { which: "N centralizes H", witness: w });
    }
    None
}

/// First `(x, y) ∈ N × H` with `xy ≠ yx`.
pub fn commuting_violation(cert: &GGCertificate, n: &Subset, h: &Subset) -> Option<Witness> {
    n.members().iter().find_map(|&x| {
        h.members().iter().find_map(|&y| {
            let (l, r) = (cert.mul(x, y), cert.mul(y, x));
            (l != r).then(|| Witness::new(WitnessKind::Commutative, [x, y]).with_detail(l, r))
        })
    })
}

/// `{ h₁h₂h₁⁻¹h₂⁻¹ : h₁, h₂ ∈ H }`, the commutator reading of `COM(H)`.
pub fn commutator_set(cert: &GGCertificate, h: &Subset) -> Subset {
    let members = h
        .members()
        .iter()
        .flat_map(|&a| h.members().iter().map(move |&b| cert.mul(cert.mul(cert.mul(a, b), cert.inv(a)), cert.inv(b))));
    Subset::with_order(cert.order(), members).expect("nonempty")
}

/// All `(n, h)` with `nh = a`, for each `a`, in lexicographic order.
fn decompositions(cert: &GGCertificate, n: &Subset, h: &Subset) -> Vec<Vec<(usize, usize)>> {
    let mut out = vec![Vec::new(); cert.order()];
    for &x in n.members() {
        for &y in h.members() {
            out[cert.mul(x, y)].push((x, y));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_group, gen_zero, Family, Side};
    use crate::iso::find_isomorphism;
    use crate::witness::WitnessContext;

    fn subset(c: &GGCertificate, m: &[usize]) -> Subset {
        Subset::new(c.base(), m.iter().copied()).unwrap()
    }

    #[test]
    fn products() {
        let z2 = gen_group(Family::Cyclic, 2).unwrap();
        let v4 = gen_group(Family::Klein, 4).unwrap();
        let p = direct_product(&z2, &z2).unwrap();
        assert!(find_isomorphism(&p, &v4).unwrap().is_some());
        assert_eq!(p.base().elements(), &["(0,0)", "(0,1)", "(1,0)", "(1,1)"]);

        let l2 = gen_zero(Side::Left, 2).unwrap();
        let q = direct_product(&z2, &l2).unwrap();
        // e((x, y)) = (0, y)
        for x in 0..4 {
            assert_eq!(q.e(x), x % 2);
        }
        assert!(!q.flags().abelian && q.flags().normal);

        let z1 = gen_group(Family::Cyclic, 1).unwrap();
        let s3 = gen_group(Family::Symmetric, 3).unwrap();
        assert!(find_isomorphism(&direct_product(&z1, &s3).unwrap(), &s3).unwrap().is_some());
    }

    #[test]
    fn quotients() {
        let z4 = gen_group(Family::Cyclic, 4).unwrap();
        let (q, family) = quotient(&z4, &subset(&z4, &[0, 2])).unwrap();
        assert_eq!(family.cosets, vec![vec![0, 2], vec![1, 3]]);
        assert!(family.partition);
        assert_eq!(q.base().elements(), &["{0,2}", "{1,3}"]);
        assert!(find_isomorphism(&q, &gen_group(Family::Cyclic, 2).unwrap()).unwrap().is_some());

        let l2 = gen_zero(Side::Left, 2).unwrap();
        let (q, family) = quotient(&l2, &subset(&l2, &[0])).unwrap();
        assert_eq!(family.cosets, vec![vec![0], vec![1]]);
        assert!(find_isomorphism(&q, &l2).unwrap().is_some());

        assert!(matches!(quotient(&z4, &subset(&z4, &[0, 1])), Err(Error::NotSubgroup(_))));
    }

    #[test]
    fn quotient_by_non_normal_subgroup_is_ill_defined() {
        let s3 = gen_group(Family::Symmetric, 3).unwrap();
        let s = subset(&s3, &[0, 3]);
        let Err(Error::IllDefined(w)) = quotient(&s3, &s) else { panic!("expected IllDefined") };
        assert!(w.confirms(&WitnessContext::new(s3.base()).with_subset(&s)));
    }

    #[test]
    fn internal_products() {
        let z4 = gen_group(Family::Cyclic, 4).unwrap();
        let s = subset(&z4, &[0, 2]);
        let Err(Error::HypothesisFailed { which, witness }) = internal_dp(&z4, &s, &s) else { panic!() };
        assert_eq!(which, "G = NH");
        assert_eq!(witness.indices, vec![1]);

        let v4 = gen_group(Family::Klein, 4).unwrap();
        let dp = internal_dp(&v4, &subset(&v4, &[0, 1]), &subset(&v4, &[0, 2])).unwrap();
        let f = dp.morphism(&v4).unwrap();
        assert!(f.homomorphism().holds);
        let mut image = f.map().to_vec();
        image.sort();
        assert_eq!(image, vec![0, 1, 2, 3]);

        // A3 is abelian and {e,(12)} is abelian, but they do not commute
        let s3 = gen_group(Family::Symmetric, 3).unwrap();
        let Err(Error::HypothesisFailed { which, witness }) =
            internal_dp(&s3, &subset(&s3, &[0, 1, 2]), &subset(&s3, &[0, 3]))
        else {
            panic!()
        };
        assert_eq!(which, "N centralizes H");
        assert!(witness.confirms(&WitnessContext::new(s3.base())));
    }

    #[test]
    fn non_unique_decomposition_is_a_conclusion_failure() {
        // N = H = Z2: all hypotheses hold but 0 = 0+0 = 1+1
        let z2 = gen_group(Family::Cyclic, 2).unwrap();
        let full = Subset::full(z2.base());
        let Err(Error::ConclusionFailed(w)) = internal_dp(&z2, &full, &full) else { panic!() };
        assert_eq!(w.kind, WitnessKind::NonUniqueDecomposition);
        assert!(w.confirms(&WitnessContext::new(z2.base()).with_subset(&full).with_second(&full)));
    }

    #[test]
    fn commutators() {
        let s3 = gen_group(Family::Symmetric, 3).unwrap();
        assert_eq!(commutator_set(&s3, &Subset::full(s3.base())).members(), &[0, 1, 2]);
        let z4 = gen_group(Family::Cyclic, 4).unwrap();
        assert_eq!(commutator_set(&z4, &Subset::full(z4.base())).members(), &[0]);
    }
}
