//! Certified test families: classical groups, left/right-zero semigroups,
//! Rees matrix structures, and exhaustive small-order enumeration.
//!
//! Enumeration goes through the Rees parametrization. That it reaches every
//! finite generalized group up to isomorphism rests on the equivalence with
//! completely simple semigroups; it is assumed here, not re-proved. Groups are
//! drawn from the cyclic, Klein, symmetric and dihedral families only.

use std::fmt;
use std::str::FromStr;

use crate::axioms::{certify, GGCertificate};
use crate::error::{Error, Result};
use crate::iso::find_isomorphism;
use crate::par::Exec;
use crate::table::FiniteMagma;

/// Largest order accepted by [`enumerate_gg`].
pub const MAX_ENUMERATION_ORDER: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Cyclic,
    Dihedral,
    Symmetric,
    Klein,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Cyclic => "cyclic",
            Family::Dihedral => "dihedral",
            Family::Symmetric => "symmetric",
            Family::Klein => "klein",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cyclic" => Ok(Family::Cyclic),
            "dihedral" => Ok(Family::Dihedral),
            "symmetric" => Ok(Family::Symmetric),
            "klein" => Ok(Family::Klein),
            other => Err(Error::UnsupportedParameter(format!("unknown group family {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            other => Err(Error::UnsupportedParameter(format!("side must be left or right, got {other:?}"))),
        }
    }
}

fn certified(m: FiniteMagma) -> Result<GGCertificate> {
    certify(m).map_err(Error::CertificationFailed)
}

/// Classical groups.
///
/// * cyclic `n ≥ 1`: `Z{n}`, addition mod n.
/// * dihedral `n ≥ 3`: `D{n}` of order `2n`; `r^k s^m` sits at index `k + n·m`.
/// * symmetric `1 ≤ n ≤ 4`: `S{n}`; even permutations first, each parity
///   ordered by cycle notation, identity at index 0. `(pq)(x) = p(q(x))`.
/// * klein: `V4` on `e, a, b, ab`; `n` must be 4 (or 0, meaning "default").
pub fn gen_group(family: Family, n: usize) -> Result<GGCertificate> {
    let unsupported = |why: &str| Err(Error::UnsupportedParameter(format!("{family} {n}: {why}")));
    match family {
        Family::Cyclic => {
            if n == 0 {
                return unsupported("order must be at least 1");
            }
            certified(FiniteMagma::from_fn(format!("Z{n}"), n, |a, b| (a + b) % n)?)
        }
        Family::Dihedral => {
            if n < 3 {
                return unsupported("dihedral groups need n >= 3");
            }
            let labels = (0..2 * n).map(|i| format!("{}{}", if i < n { 'r' } else { 's' }, i % n)).collect();
            let m = FiniteMagma::from_fn_labeled(format!("D{n}"), labels, |x, y| {
                let (a, m1) = (x % n, x / n);
                let (b, m2) = (y % n, y / n);
                // s r^b = r^{-b} s
                let k = if m1 == 0 { a + b } else { a + n - b } % n;
                k + n * ((m1 + m2) % 2)
            })?;
            certified(m)
        }
        Family::Symmetric => {
            if n == 0 || n > 4 {
                return unsupported("symmetric groups are supported for 1 <= n <= 4");
            }
            let perms = symmetric_elements(n);
            let labels: Vec<String> = perms.iter().map(|p| cycle_notation(p)).collect();
            let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed");
            let m = FiniteMagma::from_fn_labeled(format!("S{n}"), labels, |x, y| {
                let composed: Vec<usize> = (0..n).map(|i| perms[x][perms[y][i]]).collect();
                index(&composed)
            })?;
            certified(m)
        }
        Family::Klein => {
            if n != 4 && n != 0 {
                return unsupported("the Klein four-group has order 4");
            }
            let labels = ["e", "a", "b", "ab"].map(String::from).to_vec();
            certified(FiniteMagma::from_fn_labeled("V4", labels, |a, b| a ^ b)?)
        }
    }
}

fn symmetric_elements(n: usize) -> Vec<Vec<usize>> {
    fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
        if items.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for (i, &first) in items.iter().enumerate() {
            let mut rest = items.to_vec();
            rest.remove(i);
            for mut tail in permutations(&rest) {
                tail.insert(0, first);
                out.push(tail);
            }
        }
        out
    }
    let mut perms = permutations(&(0..n).collect::<Vec<_>>());
    perms.sort_by_cached_key(|p| (parity(p), p.iter().enumerate().any(|(i, &v)| i != v), cycle_notation(p)));
    perms
}

fn parity(p: &[usize]) -> usize {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            inversions += usize::from(p[i] > p[j]);
        }
    }
    inversions % 2
}

/// Cycle notation with 1-based points, `e` for the identity.
fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            out.push_str(&(x + 1).to_string());
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push('e');
    }
    out
}

/// `L{n}` (x·y = x) or `R{n}` (x·y = y).
pub fn gen_zero(side: Side, n: usize) -> Result<GGCertificate> {
    if n == 0 {
        return Err(Error::UnsupportedParameter("zero semigroups need n >= 1".into()));
    }
    let m = match side {
        Side::Left => FiniteMagma::from_fn(format!("L{n}"), n, |a, _| a)?,
        Side::Right => FiniteMagma::from_fn(format!("R{n}"), n, |_, b| b)?,
    };
    certified(m)
}

/// Parameters of a Rees matrix semigroup `M[G; I, Λ; P]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesSpec {
    group: GGCertificate,
    i_size: usize,
    l_size: usize,
    sandwich: Vec<Vec<usize>>,
}

impl ReesSpec {
    /// `sandwich` has `l_size` rows of `i_size` group indices: `P[λ][i]`.
    pub fn new(group: GGCertificate, i_size: usize, l_size: usize, sandwich: Vec<Vec<usize>>) -> Result<Self> {
        if !group.is_group() || !group.flags().cancellative {
            return Err(Error::UnsupportedParameter(format!("{} is not a group", group.name())));
        }
        if i_size == 0 || l_size == 0 {
            return Err(Error::UnsupportedParameter("index sets must be nonempty".into()));
        }
        if sandwich.len() != l_size || sandwich.iter().any(|row| row.len() != i_size) {
            return Err(Error::UnsupportedParameter(format!("sandwich matrix must be {l_size} x {i_size}")));
        }
        if let Some(&bad) = sandwich.iter().flatten().find(|&&p| p >= group.order()) {
            return Err(Error::IndexOutOfRange { index: bad as i64, order: group.order() });
        }
        Ok(ReesSpec { group, i_size, l_size, sandwich })
    }

    /// `I = Λ = 1` with the identity as the only sandwich entry.
    pub fn trivial(group: GGCertificate) -> Self {
        let e = group.e(0);
        ReesSpec { group, i_size: 1, l_size: 1, sandwich: vec![vec![e]] }
    }

    pub fn group(&self) -> &GGCertificate {
        &self.group
    }

    pub fn i_size(&self) -> usize {
        self.i_size
    }

    pub fn l_size(&self) -> usize {
        self.l_size
    }

    pub fn sandwich(&self) -> &[Vec<usize>] {
        &self.sandwich
    }

    /// First row and first column of `P` are the identity.
    pub fn is_normalized(&self) -> bool {
        let e = self.group.e(0);
        self.sandwich[0].iter().all(|&p| p == e) && self.sandwich.iter().all(|row| row[0] == e)
    }

    /// Index of `(i, g, λ)` in the generated structure.
    pub fn index(&self, i: usize, g: usize, l: usize) -> usize {
        (i * self.group.order() + g) * self.l_size + l
    }

    /// Inverse of [`ReesSpec::index`].
    pub fn triple(&self, x: usize) -> (usize, usize, usize) {
        let l = x % self.l_size;
        let rest = x / self.l_size;
        (rest / self.group.order(), rest % self.group.order(), l)
    }

    pub fn order(&self) -> usize {
        self.i_size * self.group.order() * self.l_size
    }

    fn name(&self) -> String {
        let g = &self.group;
        if self.i_size == 1 && self.l_size == 1 && self.sandwich[0][0] == g.e(0) {
            return g.name().to_string();
        }
        if g.order() == 1 && self.l_size == 1 {
            return format!("L{}", self.i_size);
        }
        if g.order() == 1 && self.i_size == 1 {
            return format!("R{}", self.l_size);
        }
        let p: Vec<String> = self
            .sandwich
            .iter()
            .map(|row| row.iter().map(|&x| g.base().label(x)).collect::<Vec<_>>().join(","))
            .collect();
        format!("Rees({};{}x{};{})", g.name(), self.i_size, self.l_size, p.join("/"))
    }
}

/// Triples `(i, g, λ)` in lexicographic order with
/// `(i, g, λ)(j, h, μ) = (i, g·P[λ][j]·h, μ)`, certified from scratch.
pub fn gen_rees(spec: &ReesSpec) -> Result<GGCertificate> {
    let g = &spec.group;
    let labels = (0..spec.order())
        .map(|x| {
            let (i, a, l) = spec.triple(x);
            format!("({},{},{})", i, g.base().label(a), l)
        })
        .collect();
    let m = FiniteMagma::from_fn_labeled(spec.name(), labels, |x, y| {
        let (i, a, l) = spec.triple(x);
        let (j, b, mu) = spec.triple(y);
        spec.index(i, g.mul(g.mul(a, spec.sandwich[l][j]), b), mu)
    })?;
    certified(m)
}

/// Classical groups of order at most `max_order`, isomorphic duplicates
/// removed (S3 is kept over D3).
fn groups_up_to(max_order: usize) -> Result<Vec<GGCertificate>> {
    let mut groups = Vec::new();
    for n in 1..=max_order {
        groups.push(gen_group(Family::Cyclic, n)?);
    }
    if max_order >= 4 {
        groups.push(gen_group(Family::Klein, 4)?);
    }
    for n in 3..=4 {
        if (1..=n).product::<usize>() <= max_order {
            groups.push(gen_group(Family::Symmetric, n)?);
        }
    }
    for n in 3..=max_order / 2 {
        groups.push(gen_group(Family::Dihedral, n)?);
    }
    groups.sort_by_key(GGCertificate::order);
    dedup_isomorphic(groups)
}

fn dedup_isomorphic(items: Vec<GGCertificate>) -> Result<Vec<GGCertificate>> {
    let mut kept: Vec<GGCertificate> = Vec::new();
    for c in items {
        let mut duplicate = false;
        for k in kept.iter().filter(|k| k.order() == c.order()) {
            if find_isomorphism(k, &c)?.is_some() {
                duplicate = true;
                break;
            }
        }
        if !duplicate {
            kept.push(c);
        }
    }
    Ok(kept)
}

/// Every normalized sandwich matrix for the given shape, in lexicographic
/// order of the free entries.
fn normalized_sandwiches(group: &GGCertificate, i_size: usize, l_size: usize) -> Vec<Vec<Vec<usize>>> {
    let e = group.e(0);
    let free = (i_size - 1) * (l_size - 1);
    let k = group.order();
    let total = k.pow(free as u32);
    (0..total)
        .map(|mut code| {
            let mut digits = vec![0; free];
            for d in digits.iter_mut().rev() {
                *d = code % k;
                code /= k;
            }
            let mut p = vec![vec![e; i_size]; l_size];
            for l in 1..l_size {
                for i in 1..i_size {
                    p[l][i] = digits[(l - 1) * (i_size - 1) + (i - 1)];
                }
            }
            p
        })
        .collect()
}

/// All Rees structures of order at most `max_order` over the classical
/// groups, with normalized sandwich matrices, deduplicated up to isomorphism.
///
/// Output order: by order, then `|I|·|Λ|`, then `|Λ|`, then group, then
/// sandwich matrix; the first member of each isomorphism class is kept.
pub fn enumerate_gg(max_order: usize) -> Result<Vec<GGCertificate>> {
    enumerate_gg_with(max_order, Exec::default())
}

pub fn enumerate_gg_with(max_order: usize, exec: Exec) -> Result<Vec<GGCertificate>> {
    let specs = rees_specs(max_order)?;
    let built = exec.map(&specs, gen_rees);
    let built = built.into_iter().collect::<Result<Vec<_>>>()?;
    dedup_isomorphic(built)
}

/// Every Rees parameter set considered by [`enumerate_gg`], in enumeration
/// order, before isomorphism deduplication.
pub fn rees_specs(max_order: usize) -> Result<Vec<ReesSpec>> {
    if max_order > MAX_ENUMERATION_ORDER {
        return Err(Error::TooLarge { what: "enumeration order", size: max_order, limit: MAX_ENUMERATION_ORDER });
    }
    let groups = groups_up_to(max_order)?;
    let mut specs = Vec::new();
    for (gi, g) in groups.iter().enumerate() {
        for i_size in 1..=max_order {
            for l_size in 1..=max_order {
                if g.order() * i_size * l_size > max_order {
                    continue;
                }
                for p in normalized_sandwiches(g, i_size, l_size) {
                    let key = (g.order() * i_size * l_size, i_size * l_size, l_size, gi, p.clone());
                    specs.push((key, ReesSpec::new(g.clone(), i_size, l_size, p)?));
                }
            }
        }
    }
    specs.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(specs.into_iter().map(|(_, s)| s).collect())
}
