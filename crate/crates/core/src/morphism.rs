//! Maps between certified structures: homomorphism checks, exhaustive
//! enumeration, kernels at a point, images, and the `∪f(G)` construction.

use serde::{Deserialize, Serialize};

use crate::axioms::{certify, GGCertificate};
use crate::error::{Error, Result};
use crate::subgroup::Subset;
use crate::table::{FiniteMagma, PropertyResult};
use crate::witness::{Witness, WitnessKind};

/// Exhaustive homomorphism enumeration is limited to this order on both sides.
pub const MAX_HOM_ORDER: usize = 6;

/// A total map between two certified structures. Whether it is a
/// homomorphism is decided once, at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism<'a> {
    domain: &'a GGCertificate,
    codomain: &'a GGCertificate,
    map: Vec<usize>,
    hom: PropertyResult,
}

impl<'a> Morphism<'a> {
    pub fn new(domain: &'a GGCertificate, codomain: &'a GGCertificate, map: Vec<usize>) -> Result<Self> {
        if map.len() != domain.order() {
            return Err(Error::NotTotal(format!(
                "map has {} entries for a domain of order {}",
                map.len(),
                domain.order()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= codomain.order()) {
            return Err(Error::IndexOutOfRange { index: bad as i64, order: codomain.order() });
        }
        let hom = check_homomorphism(domain.base(), codomain.base(), &map);
        Ok(Morphism { domain, codomain, map, hom })
    }

    pub fn identity(cert: &'a GGCertificate) -> Self {
        Self::new(cert, cert, (0..cert.order()).collect()).expect("identity is total")
    }

    pub fn domain(&self) -> &'a GGCertificate {
        self.domain
    }

    pub fn codomain(&self) -> &'a GGCertificate {
        self.codomain
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn homomorphism(&self) -> &PropertyResult {
        &self.hom
    }

    fn require_hom(&self) -> Result<()> {
        match &self.hom.witness {
            Some(w) if !self.hom.holds => Err(Error::NotHomomorphism(w.clone())),
            _ => Ok(()),
        }
    }

    pub fn to_doc(&self) -> MorphismDoc {
        MorphismDoc {
            domain: self.domain.name().to_string(),
            codomain: self.codomain.name().to_string(),
            map: self.map.clone(),
        }
    }
}

/// Morphism document: `{"domain": name, "codomain": name, "map": [indices]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub domain: String,
    pub codomain: String,
    pub map: Vec<usize>,
}

impl MorphismDoc {
    pub fn to_document(&self) -> String {
        crate::table::to_document_string(self)
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))
    }

    /// Binds the document to concrete structures, checking the names.
    pub fn bind<'a>(&self, domain: &'a GGCertificate, codomain: &'a GGCertificate) -> Result<Morphism<'a>> {
        if self.domain != domain.name() || self.codomain != codomain.name() {
            return Err(Error::SignatureMismatch(format!(
                "morphism {} -> {} does not match {} -> {}",
                self.domain,
                self.codomain,
                domain.name(),
                codomain.name()
            )));
        }
        Morphism::new(domain, codomain, self.map.clone())
    }
}

/// First pair `(a, b)` with `f(ab) ≠ f(a)f(b)`.
pub fn check_homomorphism(domain: &FiniteMagma, codomain: &FiniteMagma, map: &[usize]) -> PropertyResult {
    let n = domain.order();
    let violation = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find_map(|(a, b)| {
        let l = map[domain.mul(a, b)];
        let r = codomain.mul(map[a], map[b]);
        (l != r).then(|| Witness::new(WitnessKind::HomViolation, [a, b]).with_detail(l, r))
    });
    PropertyResult::from_violation(violation)
}

/// Recomputes the homomorphism identity on all pairs.
pub fn is_homomorphism(f: &Morphism<'_>) -> PropertyResult {
    check_homomorphism(f.domain.base(), f.codomain.base(), &f.map)
}

/// Calls `visit` with every homomorphism `g → h`, in lexicographic order of
/// the map. Returns how many were visited.
pub fn for_each_homomorphism(g: &GGCertificate, h: &GGCertificate, mut visit: impl FnMut(&[usize])) -> Result<usize> {
    for (cert, what) in [(g, "homomorphism domain"), (h, "homomorphism codomain")] {
        if cert.order() > MAX_HOM_ORDER {
            return Err(Error::TooLarge { what, size: cert.order(), limit: MAX_HOM_ORDER });
        }
    }
    let n = g.order();
    let mut map = vec![usize::MAX; n];
    let mut count = 0;
    extend(g, h, &mut map, 0, &mut visit, &mut count);
    Ok(count)
}

fn extend(
    g: &GGCertificate,
    h: &GGCertificate,
    map: &mut [usize],
    k: usize,
    visit: &mut impl FnMut(&[usize]),
    count: &mut usize,
) {
    if k == map.len() {
        *count += 1;
        visit(map);
        return;
    }
    for v in 0..h.order() {
        map[k] = v;
        if consistent_prefix(g, h, map, k) {
            extend(g, h, map, k + 1, visit, count);
        }
    }
    map[k] = usize::MAX;
}

/// Checks `f(ab) = f(a)f(b)` on every pair involving `k` whose operands and
/// product are already assigned (indices ≤ k).
fn consistent_prefix(g: &GGCertificate, h: &GGCertificate, map: &[usize], k: usize) -> bool {
    for a in 0..=k {
        for (x, y) in [(a, k), (k, a)] {
            let p = g.mul(x, y);
            if p <= k && map[p] != h.mul(map[x], map[y]) {
                return false;
            }
        }
    }
    true
}

pub fn enumerate_homomorphisms<'a>(g: &'a GGCertificate, h: &'a GGCertificate) -> Result<Vec<Morphism<'a>>> {
    let mut maps = Vec::new();
    for_each_homomorphism(g, h, |m| maps.push(m.to_vec()))?;
    maps.into_iter().map(|m| Morphism::new(g, h, m)).collect()
}

/// `ker f_a = { x : f(x) = f(e(a)) }`.
pub fn kernel_at(f: &Morphism<'_>, a: usize) -> Result<Subset> {
    f.require_hom()?;
    let g = f.domain;
    if a >= g.order() {
        return Err(Error::IndexOutOfRange { index: a as i64, order: g.order() });
    }
    let target = f.apply(g.e(a));
    Subset::new(g.base(), (0..g.order()).filter(|&x| f.apply(x) == target))
}

pub fn is_monomorphism(f: &Morphism<'_>) -> Result<PropertyResult> {
    f.require_hom()?;
    Ok(PropertyResult::from_violation(injectivity_violation(&f.map)))
}

pub(crate) fn injectivity_violation(map: &[usize]) -> Option<Witness> {
    let n = map.len();
    (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .find(|&(x, y)| map[x] == map[y])
        .map(|(x, y)| Witness::new(WitnessKind::NonInjective, [x, y]))
}

/// `f(K)` as a subset of the codomain.
pub fn image_subset(f: &Morphism<'_>, k: &Subset) -> Result<Subset> {
    f.require_hom()?;
    k.check_parent(f.domain.order())?;
    Subset::new(f.codomain.base(), k.members().iter().map(|&x| f.apply(x)))
}

/// `∪f(G) = { (e(g), f(g)) }` with `(e(a), f(a))(e(b), f(b)) = (e(ab), f(ab))`.
///
/// Requires a normal domain. Well-definedness is checked on all quadruples of
/// representatives before the induced table is certified.
pub fn union_f(f: &Morphism<'_>) -> Result<GGCertificate> {
    certify(union_magma(f)?).map_err(Error::CertificationFailed)
}

/// The induced table of `∪f(G)` after the well-definedness check, before
/// certification.
pub fn union_magma(f: &Morphism<'_>) -> Result<FiniteMagma> {
    f.require_hom()?;
    let g = f.domain;
    if let Some(w) = crate::axioms::normality_violation(g.base(), g.e_map()) {
        return Err(Error::NotNormal(w));
    }
    let n = g.order();
    let key = |x: usize| (g.e(x), f.apply(x));

    // distinct pairs in lexicographic order, with their first representative
    let mut pairs: Vec<(usize, usize)> = (0..n).map(key).collect();
    pairs.sort_unstable();
    pairs.dedup();
    let class_of = |x: usize| pairs.binary_search(&key(x)).expect("pair listed");
    let rep: Vec<usize> = {
        let mut rep = vec![usize::MAX; pairs.len()];
        for x in (0..n).rev() {
            rep[class_of(x)] = x;
        }
        rep
    };

    for a in 0..n {
        for b in 0..n {
            let (a0, b0) = (rep[class_of(a)], rep[class_of(b)]);
            if key(g.mul(a, b)) != key(g.mul(a0, b0)) {
                return Err(Error::IllDefined(Witness::new(WitnessKind::UnionIllDefined, [a0, a, b0, b])));
            }
        }
    }

    let cod = f.codomain.base();
    let labels = pairs.iter().map(|&(e, v)| format!("({},{})", g.base().label(e), cod.label(v))).collect();
    let name = format!("Uf({}->{})", g.name(), f.codomain.name());
    FiniteMagma::from_fn_labeled(name, labels, |i, j| class_of(g.mul(rep[i], rep[j])))
}
