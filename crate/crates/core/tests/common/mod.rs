//! A deliberately naive model of the library, used as a test oracle.
//!
//! Frameworks are plain bitmasks over at most 16 arguments. Semantics are
//! computed by trying every subset, and the reductions are written as edge
//! rewrites rather than the pairwise rule the library uses.

#![allow(dead_code)]

use argclaim::{ArgFramework, ClaimFramework, ClaimSet, PrefFramework, Reduction, Semantics};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Raw {
    pub n: usize,
    /// `att[a]` has bit `b` set iff `a` attacks `b`.
    pub att: Vec<u32>,
    pub claim: Vec<usize>,
    /// `pref[a]` has bit `b` set iff `a ≻ b`.
    pub pref: Vec<u32>,
}

pub fn claim_name(c: usize) -> String {
    format!("c{c}")
}

pub fn arg_name(a: usize) -> String {
    format!("x{a}")
}

impl Raw {
    pub fn attacks(&self, a: usize, b: usize) -> bool {
        self.att[a] >> b & 1 == 1
    }

    pub fn prefers(&self, a: usize, b: usize) -> bool {
        self.pref[a] >> b & 1 == 1
    }

    pub fn full(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    pub fn num_claims(&self) -> usize {
        self.claim.iter().map(|&c| c + 1).max().unwrap_or(0)
    }

    pub fn well_formed(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.claim[a] != self.claim[b] || self.att[a] == self.att[b]))
    }

    pub fn asymmetric(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| !(self.prefers(a, b) && self.prefers(b, a))))
    }

    pub fn transitive(&self) -> bool {
        (0..self.n).all(|a| {
            (0..self.n)
                .filter(|&b| self.prefers(a, b))
                .all(|b| self.pref[b] & !self.pref[a] == 0)
        })
    }

    pub fn from_pf(pf: &PrefFramework) -> Raw {
        let caf = pf.caf();
        let af = caf.af();
        let n = pf.len();
        assert!(n <= 16);
        let mut r = Raw {
            n,
            att: vec![0; n],
            claim: (0..n).map(|a| caf.claim_of(a)).collect(),
            pref: vec![0; n],
        };
        for a in 0..n {
            for b in 0..n {
                if af.attacks_pair(a, b) {
                    r.att[a] |= 1 << b;
                }
                if pf.prefers(a, b) {
                    r.pref[a] |= 1 << b;
                }
            }
        }
        r
    }

    pub fn to_caf(&self) -> ClaimFramework {
        let names: Vec<String> = (0..self.n).map(arg_name).collect();
        let attacks: Vec<(usize, usize)> = (0..self.n)
            .flat_map(|a| (0..self.n).filter(move |&b| self.attacks(a, b)).map(move |b| (a, b)))
            .collect();
        let af = ArgFramework::from_indices(names, attacks).unwrap();
        let labels: Vec<String> = self.claim.iter().map(|&c| claim_name(c)).collect();
        ClaimFramework::from_labels(af, &labels).unwrap()
    }

    pub fn to_pf(&self) -> PrefFramework {
        let prefs: Vec<(usize, usize)> = (0..self.n)
            .flat_map(|a| (0..self.n).filter(move |&b| self.prefers(a, b)).map(move |b| (a, b)))
            .collect();
        PrefFramework::from_indices(self.to_caf(), prefs)
    }

    /// The reduced attack relation. Every attack `(a,b)` whose target is
    /// preferred (`b ≻ a`) is rewritten; all other attacks stay.
    pub fn reduce(&self, i: Reduction) -> Raw {
        let mut out = self.att.clone();
        for a in 0..self.n {
            for b in 0..self.n {
                if !self.attacks(a, b) || !self.prefers(b, a) {
                    continue;
                }
                let answered = self.attacks(b, a);
                match i {
                    Reduction::R1 => out[a] &= !(1 << b),
                    Reduction::R2 => {
                        out[a] &= !(1 << b);
                        out[b] |= 1 << a;
                    }
                    Reduction::R3 => {
                        if answered {
                            out[a] &= !(1 << b);
                        }
                    }
                    Reduction::R4 => {
                        if answered {
                            out[a] &= !(1 << b);
                        } else {
                            out[b] |= 1 << a;
                        }
                    }
                }
            }
        }
        Raw {
            att: out,
            pref: vec![0; self.n],
            ..self.clone()
        }
    }

    fn attacked(&self, e: u32) -> u32 {
        (0..self.n).filter(|&a| e >> a & 1 == 1).fold(0, |acc, a| acc | self.att[a])
    }

    pub fn conflict_free(&self, e: u32) -> bool {
        self.attacked(e) & e == 0
    }

    fn admissible(&self, e: u32) -> bool {
        self.conflict_free(e) && e & !self.defended(e) == 0
    }

    /// Arguments all of whose attackers are attacked by `e`.
    fn defended(&self, e: u32) -> u32 {
        let hit = self.attacked(e);
        (0..self.n)
            .filter(|&x| (0..self.n).all(|y| !self.attacks(y, x) || hit >> y & 1 == 1))
            .fold(0, |acc, x| acc | 1 << x)
    }

    fn range(&self, e: u32) -> u32 {
        e | self.attacked(e)
    }

    /// Argument-level extensions as bitmasks, by exhaustive search.
    pub fn extensions(&self, s: Semantics) -> Vec<u32> {
        let all: Vec<u32> = (0..=self.full()).collect();
        let cf: Vec<u32> = all.iter().copied().filter(|&e| self.conflict_free(e)).collect();
        let adm: Vec<u32> = cf.iter().copied().filter(|&e| self.admissible(e)).collect();
        let sub = |x: u32, y: u32| x & !y == 0;
        let maximal = |v: &[u32], key: &dyn Fn(u32) -> u32| -> Vec<u32> {
            v.iter()
                .copied()
                .filter(|&e| !v.iter().any(|&f| key(e) != key(f) && sub(key(e), key(f))))
                .collect()
        };
        match s {
            Semantics::Cf => cf,
            Semantics::Adm => adm,
            Semantics::Com => adm.into_iter().filter(|&e| self.defended(e) == e).collect(),
            Semantics::Naive => maximal(&cf, &|e| e),
            Semantics::Stb => cf.into_iter().filter(|&e| self.range(e) == self.full()).collect(),
            Semantics::Prf => maximal(&adm, &|e| e),
            Semantics::Sem => maximal(&adm, &|e| self.range(e)),
            Semantics::Stg => maximal(&cf, &|e| self.range(e)),
        }
    }

    pub fn claims_of(&self, e: u32) -> u32 {
        (0..self.n).filter(|&a| e >> a & 1 == 1).fold(0, |acc, a| acc | 1 << self.claim[a])
    }

    /// Claim-level family of the framework as it stands.
    pub fn claim_family(&self, s: Semantics) -> BTreeSet<u32> {
        self.extensions(s).into_iter().map(|e| self.claims_of(e)).collect()
    }

    pub fn pref_family(&self, i: Reduction, s: Semantics) -> BTreeSet<u32> {
        self.reduce(i).claim_family(s)
    }
}

pub fn claim_set(mask: u32) -> ClaimSet {
    (0..32).filter(|c| mask >> c & 1 == 1).map(claim_name).collect()
}

pub fn as_masks(fam: &[ClaimSet]) -> BTreeSet<u32> {
    fam.iter()
        .map(|c| {
            c.iter()
                .map(|name| 1u32 << name[1..].parse::<u32>().unwrap())
                .fold(0, |a, b| a | b)
        })
        .collect()
}

/// Set partitions of `0..n` into exactly `k` blocks as restricted growth strings.
pub fn labelings(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(pos: usize, n: usize, k: usize, used: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos == n {
            if used == k {
                out.push(cur.clone());
            }
            return;
        }
        // Not enough positions left to open the remaining blocks.
        if k - used > n - pos {
            return;
        }
        for c in 0..=used.min(k - 1) {
            cur.push(c);
            go(pos + 1, n, k, used.max(c + 1), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// All permutations of `0..n` that keep every argument's claim.
pub fn label_automorphisms(claim: &[usize]) -> Vec<Vec<usize>> {
    let n = claim.len();
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    permute(&mut p, 0, &mut |p| {
        if (0..n).all(|a| claim[p[a]] == claim[a]) {
            out.push(p.to_vec());
        }
    });
    out
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for j in k..p.len() {
        p.swap(k, j);
        permute(p, k + 1, f);
        p.swap(k, j);
    }
}

fn relabel(rel: &[u32], p: &[usize]) -> Vec<u32> {
    let mut out = vec![0u32; rel.len()];
    for (a, &row) in rel.iter().enumerate() {
        for b in 0..rel.len() {
            if row >> b & 1 == 1 {
                out[p[a]] |= 1 << p[b];
            }
        }
    }
    out
}

/// Whether `(att, pref)` is the lexicographically least image under `perms`.
pub fn is_canonical(att: &[u32], pref: &[u32], perms: &[Vec<usize>]) -> bool {
    perms.iter().all(|p| (att, pref) <= (&relabel(att, p)[..], &relabel(pref, p)[..]))
}

/// Well-formed PCAFs with exactly `n` arguments and `k` claims, one per
/// isomorphism class under claim-preserving renamings of arguments.
/// Preferences range over pairs that share an attack, since the others do not
/// affect any reduction; `max_prefs` bounds how many pairs get one.
pub fn exhaustive_pcafs(n: usize, k: usize, max_prefs: usize, mut f: impl FnMut(&Raw)) {
    for claim in labelings(n, k) {
        let perms = label_automorphisms(&claim);
        for outs in 0u64..(1u64 << (n * k)) {
            let class_out: Vec<u32> = (0..k).map(|c| ((outs >> (c * n)) as u32) & ((1 << n) - 1)).collect();
            let att: Vec<u32> = (0..n).map(|a| class_out[claim[a]]).collect();
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .filter(|&(a, b)| att[a] >> b & 1 == 1 || att[b] >> a & 1 == 1)
                .collect();
            let total = 3u64.pow(pairs.len() as u32);
            for code in 0..total {
                let mut pref = vec![0u32; n];
                let mut c = code;
                let mut used = 0;
                for &(a, b) in &pairs {
                    match c % 3 {
                        1 => {
                            pref[a] |= 1 << b;
                            used += 1;
                        }
                        2 => {
                            pref[b] |= 1 << a;
                            used += 1;
                        }
                        _ => {}
                    }
                    c /= 3;
                }
                if used > max_prefs || !is_canonical(&att, &pref, &perms) {
                    continue;
                }
                f(&Raw {
                    n,
                    att: att.clone(),
                    claim: claim.clone(),
                    pref,
                });
            }
        }
    }
}

/// Every CAF (well-formed or not) with `n` arguments and exactly `k` claims,
/// up to isomorphism. Labelings are one per partition shape, since any two
/// labelings with the same block sizes are related by a renaming.
pub fn exhaustive_cafs(n: usize, k: usize, mut f: impl FnMut(&Raw)) {
    let mut shapes = BTreeSet::new();
    for claim in labelings(n, k) {
        let mut sizes: Vec<usize> = (0..k).map(|c| claim.iter().filter(|&&x| x == c).count()).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        if !shapes.insert(sizes.clone()) {
            continue;
        }
        let claim: Vec<usize> = sizes.iter().enumerate().flat_map(|(c, &s)| std::iter::repeat_n(c, s)).collect();
        let perms = label_automorphisms(&claim);
        let zero = vec![0u32; n];
        for bits in 0u64..(1u64 << (n * n)) {
            let att: Vec<u32> = (0..n).map(|a| ((bits >> (a * n)) as u32) & ((1 << n) - 1)).collect();
            if !is_canonical(&att, &zero, &perms) {
                continue;
            }
            f(&Raw {
                n,
                att,
                claim: claim.clone(),
                pref: zero.clone(),
            });
        }
    }
}
