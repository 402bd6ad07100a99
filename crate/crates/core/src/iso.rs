//! Isomorphism search between certified structures.

use crate::axioms::GGCertificate;
use crate::error::{Error, Result};
use crate::morphism::Morphism;

/// Backtracking search is limited to this order.
pub const MAX_ISO_ORDER: usize = 12;

/// Finds a bijective homomorphism `g → h`, or `None` when the structures are
/// not isomorphic.
///
/// Candidates are pruned by per-element invariants, and every assignment is
/// closed under products with the already-assigned elements, so most of the
/// map is forced by a few choices.
pub fn find_isomorphism<'a>(g: &'a GGCertificate, h: &'a GGCertificate) -> Result<Option<Morphism<'a>>> {
    if g.order() != h.order() {
        return Ok(None);
    }
    let n = g.order();
    if n > MAX_ISO_ORDER {
        return Err(Error::TooLarge { what: "isomorphism search", size: n, limit: MAX_ISO_ORDER });
    }
    let (ig, ih) = (invariants(g), invariants(h));
    let mut sorted_g = ig.clone();
    let mut sorted_h = ih.clone();
    sorted_g.sort();
    sorted_h.sort();
    if sorted_g != sorted_h {
        return Ok(None);
    }

    let mut search = Search { g, h, ig: &ig, ih: &ih, map: vec![None; n], used: vec![false; n], trail: Vec::new() };
    if !search.run() {
        return Ok(None);
    }
    let map = search.map.into_iter().map(|v| v.expect("complete")).collect();
    let f = Morphism::new(g, h, map)?;
    debug_assert!(f.homomorphism().holds);
    Ok(Some(f))
}

struct Search<'s> {
    g: &'s GGCertificate,
    h: &'s GGCertificate,
    ig: &'s [Vec<usize>],
    ih: &'s [Vec<usize>],
    map: Vec<Option<usize>>,
    used: Vec<bool>,
    trail: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self) -> bool {
        let Some(x) = self.map.iter().position(Option::is_none) else {
            return true;
        };
        for y in 0..self.h.order() {
            if self.used[y] || self.ig[x] != self.ih[y] {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(x, y) && self.run() {
                return true;
            }
            self.undo(mark);
        }
        false
    }

    fn set(&mut self, x: usize, y: usize) -> bool {
        match self.map[x] {
            Some(v) => v == y,
            None if self.used[y] || self.ig[x] != self.ih[y] => false,
            None => {
                self.map[x] = Some(y);
                self.used[y] = true;
                self.trail.push(x);
                true
            }
        }
    }

    /// Assigns `x ↦ y` and propagates all products of assigned elements.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        if !self.set(x, y) {
            return false;
        }
        let mut next = self.trail.len() - 1;
        while next < self.trail.len() {
            let a = self.trail[next];
            next += 1;
            let fa = self.map[a].expect("assigned");
            let mut k = 0;
            while k < self.trail.len() {
                let b = self.trail[k];
                k += 1;
                let fb = self.map[b].expect("assigned");
                if !self.set(self.g.mul(a, b), self.h.mul(fa, fb)) || !self.set(self.g.mul(b, a), self.h.mul(fb, fa)) {
                    return false;
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for x in self.trail.drain(mark..) {
            let y = self.map[x].take().expect("assigned");
            self.used[y] = false;
        }
    }
}

/// Isomorphism-invariant signature of each element.
fn invariants(c: &GGCertificate) -> Vec<Vec<usize>> {
    let n = c.order();
    (0..n)
        .map(|x| {
            let idempotent = usize::from(c.mul(x, x) == x);
            let orbit = (0..n).filter(|&y| c.e(y) == c.e(x)).count();
            let fixes_left = (0..n).filter(|&y| c.mul(x, y) == y).count();
            let fixes_right = (0..n).filter(|&y| c.mul(y, x) == y).count();
            let (tail, period) = power_shape(c, x);
            let mut key = vec![idempotent, orbit, fixes_left, fixes_right, tail, period];
            key.extend(multiplicities(n, (0..n).map(|y| c.mul(x, y))));
            key.push(usize::MAX);
            key.extend(multiplicities(n, (0..n).map(|y| c.mul(y, x))));
            key
        })
        .collect()
}

/// Tail length and period of `x, x², x³, …`.
fn power_shape(c: &GGCertificate, x: usize) -> (usize, usize) {
    let mut seen = vec![usize::MAX; c.order()];
    let mut p = x;
    let mut k = 0;
    while seen[p] == usize::MAX {
        seen[p] = k;
        p = c.mul(p, x);
        k += 1;
    }
    (seen[p], k - seen[p])
}

/// Sorted value multiplicities of a row or column; its length is the size of
/// the ideal `xG` or `Gx`.
fn multiplicities(n: usize, values: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut counts = vec![0; n];
    for v in values {
        counts[v] += 1;
    }
    let mut m: Vec<usize> = counts.into_iter().filter(|&c| c > 0).collect();
    m.sort_unstable();
    m
}
