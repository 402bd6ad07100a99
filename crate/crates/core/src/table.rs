//! Finite magmas as dense Cayley tables, their JSON document format, and the
//! primitive property scans.
//!
//! Elements are identified by index; labels only matter for presentation.
//! Every universal property scan visits tuples in lexicographic order and
//! reports the first violation it meets, so witnesses are reproducible.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::Exec;
use crate::witness::{Witness, WitnessKind};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteMagma {
    name: String,
    elements: Vec<String>,
    // row-major, table[i * n + j] = i·j
    table: Vec<usize>,
}

impl FiniteMagma {
    pub fn new(name: impl Into<String>, elements: Vec<String>, rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::MalformedDocument("a structure needs at least one element".into()));
        }
        let mut seen = HashSet::with_capacity(n);
        for label in &elements {
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        if rows.len() != n {
            return Err(Error::MalformedDocument(format!("expected {n} rows, found {}", rows.len())));
        }
        let mut table = Vec::with_capacity(n * n);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedDocument(format!("row {r} has {} entries, expected {n}", row.len())));
            }
            for v in row {
                if v >= n {
                    return Err(Error::IndexOutOfRange { index: v as i64, order: n });
                }
                table.push(v);
            }
        }
        Ok(FiniteMagma { name: name.into(), elements, table })
    }

    /// Builds an `n`-element magma with labels `"0".."n-1"`.
    pub fn from_fn(name: impl Into<String>, n: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::from_fn_labeled(name, labels, op)
    }

    pub fn from_fn_labeled(
        name: impl Into<String>,
        elements: Vec<String>,
        op: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = elements.len();
        let rows = (0..n).map(|i| (0..n).map(|j| op(i, j)).collect()).collect();
        Self::new(name, elements, rows)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn label(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|l| l == label)
    }

    pub fn row(&self, i: usize) -> &[usize] {
        let n = self.order();
        &self.table[i * n..(i + 1) * n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.table.chunks(self.order())
    }

    /// Unchecked table lookup; indices must be in range.
    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.elements.len() + j]
    }

    /// Checked table lookup.
    pub fn product(&self, i: usize, j: usize) -> Result<usize> {
        let n = self.order();
        for k in [i, j] {
            if k >= n {
                return Err(Error::IndexOutOfRange { index: k as i64, order: n });
            }
        }
        Ok(self.mul(i, j))
    }

    pub fn to_document(&self) -> String {
        serialize_magma(self)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MagmaDocIn {
    name: String,
    elements: Vec<String>,
    table: Vec<Vec<i64>>,
    // certified output carries these; they are recomputed, never trusted
    #[serde(default)]
    #[allow(dead_code)]
    maps: Option<serde_json::Value>,
    #[serde(default)]
    #[allow(dead_code)]
    flags: Option<serde_json::Value>,
}

#[derive(Serialize)]
pub(crate) struct MagmaDocOut<'a> {
    pub name: &'a str,
    pub elements: &'a [String],
    pub table: Vec<&'a [usize]>,
}

impl<'a> From<&'a FiniteMagma> for MagmaDocOut<'a> {
    fn from(m: &'a FiniteMagma) -> Self {
        MagmaDocOut { name: &m.name, elements: &m.elements, table: m.rows().collect() }
    }
}

pub fn parse_magma(text: &str) -> Result<FiniteMagma> {
    let doc: MagmaDocIn = serde_json::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))?;
    let n = doc.elements.len();
    if n == 0 {
        return Err(Error::MalformedDocument("\"elements\" must not be empty".into()));
    }
    let mut rows = Vec::with_capacity(doc.table.len());
    for row in doc.table {
        let mut out = Vec::with_capacity(row.len());
        for v in row {
            if v < 0 || v as u64 >= n as u64 {
                return Err(Error::IndexOutOfRange { index: v, order: n });
            }
            out.push(v as usize);
        }
        rows.push(out);
    }
    FiniteMagma::new(doc.name, doc.elements, rows)
}

/// Canonical document: members `name`, `elements`, `table` in that order,
/// two-space indentation, trailing newline.
pub fn serialize_magma(m: &FiniteMagma) -> String {
    to_document_string(&MagmaDocOut::from(m))
}

pub(crate) fn to_document_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("document values always serialize");
    s.push('\n');
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Associative,
    Commutative,
    LeftCancellative,
    RightCancellative,
    Cancellative,
    LatinSquare,
    TwoSidedIdentity,
    LeftIdentity,
    IdempotentTable,
}

impl Property {
    pub const ALL: [Property; 9] = [
        Property::Associative,
        Property::Commutative,
        Property::LeftCancellative,
        Property::RightCancellative,
        Property::Cancellative,
        Property::LatinSquare,
        Property::TwoSidedIdentity,
        Property::LeftIdentity,
        Property::IdempotentTable,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Property::Associative => "associative",
            Property::Commutative => "commutative",
            Property::LeftCancellative => "left-cancellative",
            Property::RightCancellative => "right-cancellative",
            Property::Cancellative => "cancellative",
            Property::LatinSquare => "latin-square",
            Property::TwoSidedIdentity => "two-sided-identity",
            Property::LeftIdentity => "left-identity",
            Property::IdempotentTable => "idempotent-table",
        }
    }

    /// Existence properties carry a witness when they hold.
    pub fn is_existential(self) -> bool {
        matches!(self, Property::TwoSidedIdentity | Property::LeftIdentity)
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL.into_iter().find(|p| p.as_str() == s).ok_or_else(|| Error::UnknownProperty(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PropertyResult {
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl PropertyResult {
    pub fn holds() -> Self {
        PropertyResult { holds: true, witness: None }
    }

    pub fn fails(w: Witness) -> Self {
        PropertyResult { holds: false, witness: Some(w) }
    }

    /// Universal property: holds unless a violation was found.
    pub fn from_violation(v: Option<Witness>) -> Self {
        match v {
            Some(w) => Self::fails(w),
            None => Self::holds(),
        }
    }

    /// Existence property: holds iff an instance was found.
    pub fn from_instance(w: Option<Witness>) -> Self {
        PropertyResult { holds: w.is_some(), witness: w }
    }
}

pub fn check_property(m: &FiniteMagma, prop: Property) -> PropertyResult {
    check_property_with(m, prop, Exec::default())
}

pub fn check_property_with(m: &FiniteMagma, prop: Property, exec: Exec) -> PropertyResult {
    match prop {
        Property::Associative => PropertyResult::from_violation(associativity_violation(m, exec)),
        Property::Commutative => PropertyResult::from_violation(commutativity_violation(m)),
        Property::LeftCancellative => PropertyResult::from_violation(left_cancel_violation(m)),
        Property::RightCancellative => PropertyResult::from_violation(right_cancel_violation(m)),
        Property::Cancellative => {
            PropertyResult::from_violation(left_cancel_violation(m).or_else(|| right_cancel_violation(m)))
        }
        Property::LatinSquare => PropertyResult::from_violation(latin_violation(m)),
        Property::TwoSidedIdentity => PropertyResult::from_instance(
            two_sided_identities(m).first().map(|&e| Witness::new(WitnessKind::TwoSidedIdentity, [e])),
        ),
        Property::LeftIdentity => PropertyResult::from_instance(
            left_identities(m).first().map(|&e| Witness::new(WitnessKind::LeftIdentity, [e])),
        ),
        Property::IdempotentTable => PropertyResult::from_violation(
            (0..m.order())
                .find(|&x| m.mul(x, x) != x)
                .map(|x| Witness::new(WitnessKind::IdempotentTable, [x]).with_detail(m.mul(x, x), x)),
        ),
    }
}

pub(crate) fn associativity_violation(m: &FiniteMagma, exec: Exec) -> Option<Witness> {
    let n = m.order();
    exec.find_first(n, |x| {
        for y in 0..n {
            let xy = m.mul(x, y);
            for z in 0..n {
                let l = m.mul(xy, z);
                let r = m.mul(x, m.mul(y, z));
                if l != r {
                    return Some(Witness::new(WitnessKind::Associative, [x, y, z]).with_detail(l, r));
                }
            }
        }
        None
    })
}

pub(crate) fn commutativity_violation(m: &FiniteMagma) -> Option<Witness> {
    let n = m.order();
    (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).find_map(|(x, y)| {
        let (l, r) = (m.mul(x, y), m.mul(y, x));
        (l != r).then(|| Witness::new(WitnessKind::Commutative, [x, y]).with_detail(l, r))
    })
}

fn left_cancel_violation(m: &FiniteMagma) -> Option<Witness> {
    let n = m.order();
    (0..n).find_map(|a| first_repeat(m.row(a)).map(|(b, c)| Witness::new(WitnessKind::LeftCancellative, [a, b, c])))
}

fn right_cancel_violation(m: &FiniteMagma) -> Option<Witness> {
    let n = m.order();
    (0..n).find_map(|a| {
        let column: Vec<usize> = (0..n).map(|b| m.mul(b, a)).collect();
        first_repeat(&column).map(|(b, c)| Witness::new(WitnessKind::RightCancellative, [a, b, c]))
    })
}

/// Row and column scan that is independent of the cancellation scans: each
/// line must hit every value exactly once.
fn latin_violation(m: &FiniteMagma) -> Option<Witness> {
    let n = m.order();
    let mut seen = vec![usize::MAX; n];
    for axis in 0..2 {
        for line in 0..n {
            for p in 0..n {
                let v = if axis == 0 { m.mul(line, p) } else { m.mul(p, line) };
                let tag = line * 2 + axis;
                if seen[v] != usize::MAX && seen[v] / n == tag {
                    let q = seen[v] % n;
                    return Some(Witness::new(WitnessKind::LatinSquare, [axis, line, q, p]));
                }
                seen[v] = tag * n + p;
            }
        }
    }
    None
}

/// Smallest pair `(b, c)`, `b < c`, with equal entries, ordered by `b` then `c`.
fn first_repeat(line: &[usize]) -> Option<(usize, usize)> {
    (0..line.len()).flat_map(|b| (b + 1..line.len()).map(move |c| (b, c))).find(|&(b, c)| line[b] == line[c])
}

pub fn two_sided_identities(m: &FiniteMagma) -> Vec<usize> {
    let n = m.order();
    (0..n).filter(|&e| (0..n).all(|x| m.mul(e, x) == x && m.mul(x, e) == x)).collect()
}

pub fn left_identities(m: &FiniteMagma) -> Vec<usize> {
    let n = m.order();
    (0..n).filter(|&e| (0..n).all(|x| m.mul(e, x) == x)).collect()
}
