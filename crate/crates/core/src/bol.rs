//! The Bol product `H × G` and the groupoid / quasigroup / Bol classifier.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::axioms::GGCertificate;
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::subgroup::{is_group_subset, Subset};
use crate::table::{associativity_violation, check_property, left_identities, two_sided_identities};
use crate::table::{FiniteMagma, Property, PropertyResult};
use crate::witness::{Witness, WitnessKind};

/// The cubic scans in [`classify_bol`] are limited to this order.
pub const MAX_BOL_ORDER: usize = 256;

/// `A = H × G` with `(h₁, g₁)∘(h₂, g₂) = (h₁h₂, h₂ g₁ h₂⁻¹ g₂)`.
///
/// Pairs sit at index `k·|G| + g` where `k` is the position of `h` in `H`.
/// All products and inverses are taken in `G`.
pub fn bol_product(g: &GGCertificate, h: &Subset) -> Result<FiniteMagma> {
    let group = is_group_subset(g, h)?;
    if let Some(w) = group.witness.filter(|_| !group.holds) {
        return Err(Error::NotGroupSubset(w));
    }
    let n = g.order();
    let hs = h.members();
    let pos = |x: usize| hs.binary_search(&x).expect("H is closed");
    let labels =
        (0..hs.len() * n).map(|x| format!("({},{})", g.base().label(hs[x / n]), g.base().label(x % n))).collect();
    let name = format!("Bol({};{})", g.name(), h.describe(g.base()));
    FiniteMagma::from_fn_labeled(name, labels, |x, y| {
        let (h1, g1) = (hs[x / n], x % n);
        let (h2, g2) = (hs[y / n], y % n);
        let second = g.mul(g.mul(g.mul(h2, g1), g.inv(h2)), g2);
        pos(g.mul(h1, h2)) * n + second
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BolClass {
    Groupoid,
    Quasigroup,
    BolGroupoid,
    /// Latin and right Bol without a left identity; impossible for finite
    /// tables, kept so the lattice is total.
    BolQuasigroup,
    BolQuasigroupWithLeftIdentity,
    BolLoop,
}

impl BolClass {
    pub fn as_str(self) -> &'static str {
        match self {
            BolClass::Groupoid => "groupoid",
            BolClass::Quasigroup => "quasigroup",
            BolClass::BolGroupoid => "Bol groupoid",
            BolClass::BolQuasigroup => "Bol quasigroup",
            BolClass::BolQuasigroupWithLeftIdentity => "Bol quasigroup with left identity",
            BolClass::BolLoop => "Bol loop",
        }
    }

    pub fn from_parts(latin: bool, right_bol: bool, left_identity: bool, two_sided: bool) -> Self {
        match (latin, right_bol) {
            (true, true) if two_sided => BolClass::BolLoop,
            (true, true) if left_identity => BolClass::BolQuasigroupWithLeftIdentity,
            (true, true) => BolClass::BolQuasigroup,
            (false, true) => BolClass::BolGroupoid,
            (true, false) => BolClass::Quasigroup,
            (false, false) => BolClass::Groupoid,
        }
    }
}

impl fmt::Display for BolClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for BolClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BolReport {
    pub name: String,
    pub order: usize,
    pub associative: PropertyResult,
    pub right_bol: PropertyResult,
    pub latin_square: PropertyResult,
    pub left_identities: Vec<usize>,
    pub two_sided_identity: Option<usize>,
    #[serde(rename = "loop")]
    pub is_loop: bool,
    pub classification: BolClass,
}

impl BolReport {
    pub fn to_document(&self) -> String {
        crate::table::to_document_string(self)
    }
}

pub fn classify_bol(m: &FiniteMagma) -> Result<BolReport> {
    classify_bol_with(m, Exec::default())
}

pub fn classify_bol_with(m: &FiniteMagma, exec: Exec) -> Result<BolReport> {
    if m.order() > MAX_BOL_ORDER {
        return Err(Error::TooLarge { what: "Bol classification", size: m.order(), limit: MAX_BOL_ORDER });
    }
    let associative = PropertyResult::from_violation(associativity_violation(m, exec));
    let right_bol = PropertyResult::from_violation(right_bol_violation(m, exec));
    let latin_square = check_property(m, Property::LatinSquare);
    let left_identities = left_identities(m);
    let two_sided_identity = two_sided_identities(m).first().copied();
    let is_loop = latin_square.holds && two_sided_identity.is_some();
    let classification = BolClass::from_parts(
        latin_square.holds,
        right_bol.holds,
        !left_identities.is_empty(),
        two_sided_identity.is_some(),
    );
    Ok(BolReport {
        name: m.name().to_string(),
        order: m.order(),
        associative,
        right_bol,
        latin_square,
        left_identities,
        two_sided_identity,
        is_loop,
        classification,
    })
}

/// Smallest `(x, y, z)` with `((xy)z)y ≠ x((yz)y)`, split across `x`.
pub fn right_bol_violation(m: &FiniteMagma, exec: Exec) -> Option<Witness> {
    let n = m.order();
    exec.find_first(n, |x| {
        for y in 0..n {
            let xy = m.mul(x, y);
            for z in 0..n {
                let l = m.mul(m.mul(xy, z), y);
                let r = m.mul(x, m.mul(m.mul(y, z), y));
                if l != r {
                    return Some(Witness::new(WitnessKind::RightBol, [x, y, z]).with_detail(l, r));
                }
            }
        }
        None
    })
}
