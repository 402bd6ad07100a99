//! Brute-force oracles working on raw tables. Nothing here calls into the
//! crate beyond reading a table's entries, so agreement with the library is
//! meaningful.

#![allow(dead_code, clippy::needless_range_loop)]

use ggroup::{FiniteMagma, GGCertificate};

pub type Table = Vec<Vec<usize>>;

pub fn table_of(m: &FiniteMagma) -> Table {
    m.rows().map(<[usize]>::to_vec).collect()
}

pub fn cert_table(c: &GGCertificate) -> Table {
    table_of(c.base())
}

pub fn associative(t: &Table) -> bool {
    let n = t.len();
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a][b]][c] == t[a][t[b][c]])))
}

pub fn commutative(t: &Table) -> bool {
    let n = t.len();
    (0..n).all(|a| (0..n).all(|b| t[a][b] == t[b][a]))
}

/// Local identity and inverse maps if `t` is a generalized group.
pub fn gg_maps(t: &Table) -> Option<(Vec<usize>, Vec<usize>)> {
    if !associative(t) {
        return None;
    }
    let n = t.len();
    let mut e = Vec::with_capacity(n);
    let mut inv = Vec::with_capacity(n);
    for x in 0..n {
        let ids: Vec<usize> = (0..n).filter(|&c| t[x][c] == x && t[c][x] == x).collect();
        if ids.len() != 1 {
            return None;
        }
        let invs: Vec<usize> = (0..n).filter(|&y| t[x][y] == ids[0] && t[y][x] == ids[0]).collect();
        if invs.is_empty() {
            return None;
        }
        e.push(ids[0]);
        inv.push(invs[0]);
    }
    Some((e, inv))
}

pub fn latin(t: &Table) -> bool {
    let n = t.len();
    (0..n).all(|a| {
        let mut row = t[a].clone();
        row.sort_unstable();
        row.dedup();
        let mut col: Vec<usize> = (0..n).map(|b| t[b][a]).collect();
        col.sort_unstable();
        col.dedup();
        row.len() == n && col.len() == n
    })
}

pub fn two_sided_identity(t: &Table) -> Option<usize> {
    let n = t.len();
    (0..n).find(|&c| (0..n).all(|x| t[c][x] == x && t[x][c] == x))
}

pub fn has_left_identity(t: &Table) -> bool {
    let n = t.len();
    (0..n).any(|c| (0..n).all(|x| t[c][x] == x))
}

pub fn right_bol(t: &Table) -> bool {
    let n = t.len();
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| t[t[t[x][y]][z]][y] == t[x][t[t[y][z]][y]])))
}

pub fn is_hom(g: &Table, h: &Table, f: &[usize]) -> bool {
    let n = g.len();
    (0..n).all(|a| (0..n).all(|b| f[g[a][b]] == h[f[a]][f[b]]))
}

/// Every map `g → h`, in lexicographic order.
pub fn all_maps(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|m| {
                (0..k).map(move |v| {
                    let mut m = m.clone();
                    m.push(v);
                    m
                })
            })
            .collect();
    }
    out
}

pub fn homs(g: &Table, h: &Table) -> Vec<Vec<usize>> {
    all_maps(g.len(), h.len()).into_iter().filter(|f| is_hom(g, h, f)).collect()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn isomorphic(g: &Table, h: &Table) -> bool {
    g.len() == h.len() && permutations(g.len()).iter().any(|p| is_hom(g, h, p))
}

/// `ab⁻¹ ∈ S` for all `a, b ∈ S`, with `inv` from the oracle.
pub fn quotient_criterion(t: &Table, inv: &[usize], s: &[bool]) -> bool {
    let n = t.len();
    (0..n).filter(|&a| s[a]).all(|a| (0..n).filter(|&b| s[b]).all(|b| s[t[a][inv[b]]]))
}

pub fn closed_with_inverses(t: &Table, inv: &[usize], s: &[bool]) -> bool {
    let n = t.len();
    (0..n).filter(|&a| s[a]).all(|a| s[inv[a]] && (0..n).filter(|&b| s[b]).all(|b| s[t[a][b]]))
}

pub fn mask(n: usize, bits: u32) -> Vec<bool> {
    (0..n).map(|i| bits >> i & 1 == 1).collect()
}

/// Classical coset table of a group by a normal subgroup: cosets as sorted
/// member lists, multiplied by representatives.
pub fn classical_quotient(t: &Table, normal: &[usize]) -> Table {
    let n = t.len();
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for g in 0..n {
        let mut c: Vec<usize> = normal.iter().map(|&k| t[g][k]).collect();
        c.sort_unstable();
        c.dedup();
        if !cosets.contains(&c) {
            cosets.push(c);
        }
    }
    let class = |x: usize| cosets.iter().position(|c| c.contains(&x)).unwrap();
    (0..cosets.len()).map(|i| (0..cosets.len()).map(|j| class(t[cosets[i][0]][cosets[j][0]])).collect()).collect()
}

/// The structures the acceptance criteria range over: everything from the
/// enumeration plus the classical groups up to order 8.
pub fn structures_up_to_8() -> Vec<GGCertificate> {
    use ggroup::{enumerate_gg, gen_group, Family};
    let mut all = enumerate_gg(8).unwrap();
    for n in 1..=8 {
        all.push(gen_group(Family::Cyclic, n).unwrap());
    }
    all.push(gen_group(Family::Klein, 4).unwrap());
    all.push(gen_group(Family::Symmetric, 3).unwrap());
    all.push(gen_group(Family::Dihedral, 3).unwrap());
    all.push(gen_group(Family::Dihedral, 4).unwrap());
    all
}
