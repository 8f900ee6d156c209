//! Membership in the classes of CAFs obtainable through each reduction, plus
//! a brute-force preimage search that serves as an oracle for it.

use crate::bitset::BitSet;
use crate::caf::{ClaimFramework, WfProblem};
use crate::error::{Error, Result};
use crate::pcaf::{attack_survives, PrefFramework, Reduction};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ImageClass {
    Im1,
    Im2,
    Im3,
    Im4,
    /// Image of reduction 1 restricted to transitive preferences.
    Im1Tr,
}

impl ImageClass {
    pub const ALL: [ImageClass; 5] = [
        ImageClass::Im1,
        ImageClass::Im2,
        ImageClass::Im3,
        ImageClass::Im4,
        ImageClass::Im1Tr,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ImageClass::Im1 => "IM1",
            ImageClass::Im2 => "IM2",
            ImageClass::Im3 => "IM3",
            ImageClass::Im4 => "IM4",
            ImageClass::Im1Tr => "IM1_TR",
        }
    }

    /// The reduction and transitivity requirement whose image this is.
    pub fn reduction(self) -> (Reduction, bool) {
        match self {
            ImageClass::Im1 => (Reduction::R1, false),
            ImageClass::Im2 => (Reduction::R2, false),
            ImageClass::Im3 => (Reduction::R3, false),
            ImageClass::Im4 => (Reduction::R4, false),
            ImageClass::Im1Tr => (Reduction::R1, true),
        }
    }
}

impl fmt::Display for ImageClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ImageClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let up = s.to_ascii_uppercase();
        ImageClass::ALL
            .into_iter()
            .find(|k| k.as_str() == up)
            .ok_or_else(|| format!("unknown image class `{s}`"))
    }
}

pub fn in_image(cf: &ClaimFramework, k: ImageClass) -> bool {
    let wfp = cf.wf_problematic();
    let af = cf.af();
    match k {
        ImageClass::Im1 => wfp.pairs.iter().all(|&(a, b)| !wfp.contains(b, a)),
        ImageClass::Im3 => wfp.pairs.iter().all(|&(a, b)| af.attacks_pair(b, a)),
        ImageClass::Im2 => !has_pattern(cf, &wfp, true),
        ImageClass::Im4 => !has_pattern(cf, &wfp, false),
        ImageClass::Im1Tr => wfp_acyclic(cf.len(), &wfp) && no_attack_along_wfp_path(cf, &wfp),
    }
}

/// The four-argument pattern excluded from the images of reductions 2 and 4:
/// `(a,b) ∈ wfp`, `(b,a) ∉ R`, `(a',b) ∈ R` with `a' ~ a`, and then either the
/// back attack `(b,a')` is present (`back_present`) or absent, or some `b' ~ b`
/// is unrelated to `a'`.
fn has_pattern(cf: &ClaimFramework, wfp: &WfProblem, back_present: bool) -> bool {
    let af = cf.af();
    wfp.pairs.iter().any(|&(a, b)| {
        if af.attacks_pair(b, a) {
            return false;
        }
        cf.members(cf.claim_of(a)).iter().any(|a2| {
            if !af.attacks_pair(a2, b) {
                return false;
            }
            af.attacks_pair(b, a2) == back_present
                || cf
                    .members(cf.claim_of(b))
                    .iter()
                    .any(|b2| !af.attacks_pair(a2, b2) && !af.attacks_pair(b2, a2))
        })
    })
}

/// Successor sets of wfp viewed as a digraph.
fn wfp_graph(n: usize, wfp: &WfProblem) -> Vec<BitSet> {
    let mut succ = vec![BitSet::new(n); n];
    for &(a, b) in &wfp.pairs {
        succ[a].insert(b);
    }
    succ
}

fn wfp_acyclic(n: usize, wfp: &WfProblem) -> bool {
    let succ = wfp_graph(n, wfp);
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    fn dfs(v: usize, succ: &[BitSet], state: &mut [u8]) -> bool {
        state[v] = 1;
        for w in succ[v].iter() {
            if state[w] == 1 || (state[w] == 0 && !dfs(w, succ, state)) {
                return false;
            }
        }
        state[v] = 2;
        true
    }
    (0..n).all(|v| state[v] != 0 || dfs(v, &succ, &mut state))
}

/// Vertices reachable from `from` by a nonempty wfp path.
fn wfp_reach(succ: &[BitSet], from: usize) -> BitSet {
    let mut seen = BitSet::new(succ.len());
    let mut stack: Vec<usize> = succ[from].iter().collect();
    while let Some(v) = stack.pop() {
        if seen.insert(v) {
            stack.extend(succ[v].iter());
        }
    }
    seen
}

fn no_attack_along_wfp_path(cf: &ClaimFramework, wfp: &WfProblem) -> bool {
    let succ = wfp_graph(cf.len(), wfp);
    (0..cf.len()).all(|a| !wfp_reach(&succ, a).intersects(cf.af().targets(a)))
}

/// For a CAF in the transitive image of reduction 1, the preimage built by
/// adding every wf-problematic pair as an attack and letting `b ≻ a` whenever
/// wfp has a path from `a` to `b`. Returns `None` outside the class.
pub fn transitive_r1_preimage(cf: &ClaimFramework) -> Option<PrefFramework> {
    if !in_image(cf, ImageClass::Im1Tr) {
        return None;
    }
    let wfp = cf.wf_problematic();
    let af = cf.af();
    let succ = wfp_graph(cf.len(), &wfp);
    let attacks = af.attacks().iter().copied().chain(wfp.pairs.iter().copied());
    let full = cf.with_af(af.with_attacks(attacks));
    let mut prefs = Vec::new();
    for a in 0..cf.len() {
        for b in wfp_reach(&succ, a).iter() {
            prefs.push((b, a));
        }
    }
    Some(PrefFramework::from_indices(full, prefs))
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Preimage {
    Found(PrefFramework),
    NoneExists,
    /// The node budget ran out before the search space was exhausted.
    Inconclusive,
}

impl Preimage {
    pub fn found(&self) -> Option<&PrefFramework> {
        match self {
            Preimage::Found(p) => Some(p),
            _ => None,
        }
    }
}

/// Default bound on the size of CAFs given to [`preimage_search`].
pub const PREIMAGE_MAX_ARGS: usize = 5;

/// Pairwise preference choice between arguments `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Choice {
    None,
    AOverB,
    BOverA,
}

const CHOICES: [Choice; 3] = [Choice::None, Choice::AOverB, Choice::BOverA];

/// Searches all well-formed attack relations and asymmetric preferences for a
/// PCAF reducing to `cf` under `i`. `budget` bounds the number of explored
/// nodes; `None` means unbounded.
pub fn preimage_search(
    cf: &ClaimFramework,
    i: Reduction,
    require_transitive: bool,
    budget: Option<u64>,
) -> Result<Preimage> {
    preimage_search_bounded(cf, i, require_transitive, budget, PREIMAGE_MAX_ARGS)
}

pub fn preimage_search_bounded(
    cf: &ClaimFramework,
    i: Reduction,
    require_transitive: bool,
    budget: Option<u64>,
    max_args: usize,
) -> Result<Preimage> {
    let n = cf.len();
    if n > max_args {
        return Err(Error::ResourceLimit {
            what: "preimage search arguments",
            limit: max_args,
            actual: n,
        });
    }
    let af = cf.af();
    let k = cf.num_claims();

    // Bounds on the shared out-set of each claim class.
    let mut lower = Vec::with_capacity(k);
    let mut upper = Vec::with_capacity(k);
    for c in 0..k {
        let m = cf.members(c);
        let mut lo = BitSet::new(n);
        if matches!(i, Reduction::R1 | Reduction::R3) {
            // Reductions 1 and 3 only delete attacks.
            for a in m.iter() {
                lo.union_with(af.targets(a));
            }
        }
        let mut hi = BitSet::new(n);
        for b in 0..n {
            // Reductions 2-4 never turn a conflict into a non-conflict.
            let ok = i == Reduction::R1
                || m.iter().all(|a| af.attacks_pair(a, b) || af.attacks_pair(b, a));
            if ok {
                hi.insert(b);
            }
        }
        // Self-attacks are never changed by a reduction.
        for a in m.iter() {
            if af.attacks_pair(a, a) {
                lo.insert(a);
            } else {
                hi.remove(a);
            }
        }
        if !lo.is_subset(&hi) {
            return Ok(Preimage::NoneExists);
        }
        lower.push(lo);
        upper.push(hi);
    }

    let mut search = Search {
        cf,
        i,
        require_transitive,
        budget,
        nodes: 0,
        lower: &lower,
        upper: &upper,
        chosen: vec![BitSet::new(n); k],
    };
    Ok(search.classes(0))
}

struct Search<'a> {
    cf: &'a ClaimFramework,
    i: Reduction,
    require_transitive: bool,
    budget: Option<u64>,
    nodes: u64,
    lower: &'a [BitSet],
    upper: &'a [BitSet],
    chosen: Vec<BitSet>,
}

impl Search<'_> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.budget.is_some_and(|b| self.nodes > b)
    }

    fn classes(&mut self, c: usize) -> Preimage {
        if c == self.chosen.len() {
            if self.tick() {
                return Preimage::Inconclusive;
            }
            return self.preferences();
        }
        let free: Vec<usize> = self.upper[c].difference(&self.lower[c]).iter().collect();
        let mut inconclusive = false;
        for bits in 0u64..(1u64 << free.len()) {
            let mut t = self.lower[c].clone();
            for (j, &x) in free.iter().enumerate() {
                if bits >> j & 1 == 1 {
                    t.insert(x);
                }
            }
            self.chosen[c] = t;
            match self.classes(c + 1) {
                Preimage::Found(p) => return Preimage::Found(p),
                Preimage::Inconclusive => {
                    inconclusive = true;
                    if self.budget.is_some_and(|b| self.nodes > b) {
                        return Preimage::Inconclusive;
                    }
                }
                Preimage::NoneExists => {}
            }
        }
        if inconclusive {
            Preimage::Inconclusive
        } else {
            Preimage::NoneExists
        }
    }

    fn candidate_attacks(&self, a: usize, b: usize) -> bool {
        self.chosen[self.cf.claim_of(a)].contains(b)
    }

    /// With the candidate attacks fixed, finds preferences that reproduce `cf`.
    fn preferences(&mut self) -> Preimage {
        let af = self.cf.af();
        let n = self.cf.len();
        let mut options: Vec<(usize, usize, Vec<Choice>)> = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let ab = self.candidate_attacks(a, b);
                let ba = self.candidate_attacks(b, a);
                let allowed: Vec<Choice> = CHOICES
                    .into_iter()
                    .filter(|&ch| {
                        let (ao, bo) = (ch == Choice::AOverB, ch == Choice::BOverA);
                        attack_survives(self.i, ab, ba, ao, bo) == af.attacks_pair(a, b)
                            && attack_survives(self.i, ba, ab, bo, ao) == af.attacks_pair(b, a)
                    })
                    .collect();
                if allowed.is_empty() {
                    return Preimage::NoneExists;
                }
                options.push((a, b, allowed));
            }
        }
        if !self.require_transitive {
            let prefs = options.iter().filter_map(|(a, b, al)| match al[0] {
                Choice::None => None,
                Choice::AOverB => Some((*a, *b)),
                Choice::BOverA => Some((*b, *a)),
            });
            return Preimage::Found(self.build(prefs.collect()));
        }
        // Pairs that admit no preference stay empty unless the closure forces one.
        let forced: Vec<(usize, usize, Vec<Choice>)> = options
            .iter()
            .filter(|(_, _, al)| !al.contains(&Choice::None))
            .cloned()
            .collect();
        let allowed = |a: usize, b: usize, ch: Choice| -> bool {
            options
                .iter()
                .find(|(x, y, _)| *x == a.min(b) && *y == a.max(b))
                .is_some_and(|(_, _, al)| al.contains(&ch))
        };
        let mut picks = Vec::with_capacity(forced.len());
        self.branch(&forced, 0, &mut picks, &allowed)
    }

    fn branch(
        &mut self,
        forced: &[(usize, usize, Vec<Choice>)],
        j: usize,
        picks: &mut Vec<(usize, usize)>,
        allowed: &dyn Fn(usize, usize, Choice) -> bool,
    ) -> Preimage {
        if self.tick() {
            return Preimage::Inconclusive;
        }
        if j == forced.len() {
            return match self.closure_ok(picks, allowed) {
                Some(prefs) => Preimage::Found(self.build(prefs)),
                None => Preimage::NoneExists,
            };
        }
        let (a, b, ref al) = forced[j];
        for &ch in al {
            picks.push(if ch == Choice::AOverB { (a, b) } else { (b, a) });
            let r = self.branch(forced, j + 1, picks, allowed);
            picks.pop();
            if r != Preimage::NoneExists {
                return r;
            }
        }
        Preimage::NoneExists
    }

    fn closure_ok(
        &self,
        picks: &[(usize, usize)],
        allowed: &dyn Fn(usize, usize, Choice) -> bool,
    ) -> Option<Vec<(usize, usize)>> {
        let n = self.cf.len();
        let mut over = vec![BitSet::new(n); n];
        for &(a, b) in picks {
            over[a].insert(b);
        }
        for k in 0..n {
            for a in 0..n {
                if over[a].contains(k) {
                    let row = over[k].clone();
                    over[a].union_with(&row);
                }
            }
        }
        let mut prefs = Vec::new();
        for (a, row) in over.iter().enumerate() {
            for b in row.iter() {
                if a == b || over[b].contains(a) {
                    return None;
                }
                let ch = if a < b { Choice::AOverB } else { Choice::BOverA };
                if !allowed(a, b, ch) {
                    return None;
                }
                prefs.push((a, b));
            }
        }
        Some(prefs)
    }

    fn build(&self, prefs: Vec<(usize, usize)>) -> PrefFramework {
        let n = self.cf.len();
        let attacks = (0..n).flat_map(|a| {
            let t = self.chosen[self.cf.claim_of(a)].clone();
            t.iter().map(move |b| (a, b)).collect::<Vec<_>>()
        });
        let af = self.cf.af().with_attacks(attacks);
        PrefFramework::from_indices(self.cf.with_af(af), prefs)
    }
}
