//! Abstract argumentation frameworks and the eight extension semantics.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Semantics {
    Cf,
    Adm,
    Com,
    Naive,
    Stb,
    Prf,
    Sem,
    Stg,
}

impl Semantics {
    pub const ALL: [Semantics; 8] = [
        Semantics::Cf,
        Semantics::Adm,
        Semantics::Com,
        Semantics::Naive,
        Semantics::Stb,
        Semantics::Prf,
        Semantics::Sem,
        Semantics::Stg,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Semantics::Cf => "cf",
            Semantics::Adm => "adm",
            Semantics::Com => "com",
            Semantics::Naive => "naive",
            Semantics::Stb => "stb",
            Semantics::Prf => "prf",
            Semantics::Sem => "sem",
            Semantics::Stg => "stg",
        }
    }

    /// Semantics whose extensions are ⊆-incomparable on every AF.
    pub fn is_maximal(self) -> bool {
        matches!(
            self,
            Semantics::Naive | Semantics::Stb | Semantics::Prf | Semantics::Sem | Semantics::Stg
        )
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Semantics {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let lower = s.to_ascii_lowercase();
        Semantics::ALL
            .into_iter()
            .find(|x| x.as_str() == lower)
            .ok_or_else(|| format!("unknown semantics `{s}`"))
    }
}

/// An AF `(A, Att)`. Arguments keep their insertion order as dense indices.
#[derive(Clone, PartialEq, Eq)]
pub struct ArgFramework {
    names: Vec<String>,
    index: HashMap<String, usize>,
    attacks: Vec<(usize, usize)>,
    attackers: Vec<BitSet>,
    targets: Vec<BitSet>,
}

impl fmt::Debug for ArgFramework {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let att: Vec<_> = self
            .attacks
            .iter()
            .map(|&(a, b)| (self.name(a), self.name(b)))
            .collect();
        f.debug_struct("ArgFramework")
            .field("args", &self.names)
            .field("attacks", &att)
            .finish()
    }
}

impl ArgFramework {
    pub fn new<S: AsRef<str>>(
        args: impl IntoIterator<Item = S>,
        attacks: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self> {
        let names: Vec<String> = args.into_iter().map(|s| s.as_ref().to_string()).collect();
        let index = build_index(&names)?;
        let mut att = Vec::new();
        for (a, b) in attacks {
            let ia = lookup(&index, a.as_ref())?;
            let ib = lookup(&index, b.as_ref())?;
            att.push((ia, ib));
        }
        Ok(Self::assemble(names, index, att))
    }

    pub fn from_indices(
        names: Vec<String>,
        attacks: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let index = build_index(&names)?;
        let n = names.len();
        let mut att = Vec::new();
        for (a, b) in attacks {
            if a >= n || b >= n {
                return Err(Error::UnknownArgument(format!("#{}", a.max(b))));
            }
            att.push((a, b));
        }
        Ok(Self::assemble(names, index, att))
    }

    /// Same arguments, different attack relation. Indices must be in range.
    pub fn with_attacks(&self, attacks: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let att: Vec<_> = attacks.into_iter().collect();
        assert!(att.iter().all(|&(a, b)| a < self.len() && b < self.len()));
        Self::assemble(self.names.clone(), self.index.clone(), att)
    }

    fn assemble(
        names: Vec<String>,
        index: HashMap<String, usize>,
        mut att: Vec<(usize, usize)>,
    ) -> Self {
        att.sort_unstable();
        att.dedup();
        let n = names.len();
        let mut attackers = vec![BitSet::new(n); n];
        let mut targets = vec![BitSet::new(n); n];
        for &(a, b) in &att {
            attackers[b].insert(a);
            targets[a].insert(b);
        }
        ArgFramework {
            names,
            index,
            attacks: att,
            attackers,
            targets,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        lookup(&self.index, name)
    }

    /// The argument set named by `names`, failing on unknown names.
    pub fn set_of<S: AsRef<str>>(&self, names: impl IntoIterator<Item = S>) -> Result<BitSet> {
        let mut s = self.empty_set();
        for n in names {
            s.insert(self.index_of(n.as_ref())?);
        }
        Ok(s)
    }

    pub fn names_of(&self, e: &BitSet) -> Vec<&str> {
        e.iter().map(|i| self.name(i)).collect()
    }

    /// Argument names of `e` in sorted order.
    pub fn sorted_names(&self, e: &BitSet) -> Vec<&str> {
        let mut v = self.names_of(e);
        v.sort_unstable();
        v
    }

    pub fn empty_set(&self) -> BitSet {
        BitSet::new(self.len())
    }

    /// Attack pairs in ascending index order, without duplicates.
    pub fn attacks(&self) -> &[(usize, usize)] {
        &self.attacks
    }

    #[inline]
    pub fn attacks_pair(&self, a: usize, b: usize) -> bool {
        self.targets[a].contains(b)
    }

    pub fn attackers(&self, x: usize) -> &BitSet {
        &self.attackers[x]
    }

    pub fn targets(&self, x: usize) -> &BitSet {
        &self.targets[x]
    }

    /// `E⁺`: everything attacked by some member of `e`.
    pub fn attacked_set(&self, e: &BitSet) -> BitSet {
        let mut out = self.empty_set();
        for a in e.iter() {
            out.union_with(&self.targets[a]);
        }
        out
    }

    /// `E ∪ E⁺`.
    pub fn range(&self, e: &BitSet) -> BitSet {
        let mut r = self.attacked_set(e);
        r.union_with(e);
        r
    }

    pub fn defends(&self, e: &BitSet, x: usize) -> bool {
        self.attackers[x].is_subset(&self.attacked_set(e))
    }

    /// Members `x` with every attacker in `attacked`, where `attacked` is some `E⁺`.
    pub fn defended_by(&self, attacked: &BitSet) -> BitSet {
        BitSet::from_indices(
            self.len(),
            (0..self.len()).filter(|&x| self.attackers[x].is_subset(attacked)),
        )
    }

    pub fn is_conflict_free(&self, e: &BitSet) -> bool {
        e.iter().all(|a| !self.targets[a].intersects(e))
    }

    pub fn is_admissible(&self, e: &BitSet) -> bool {
        if !self.is_conflict_free(e) {
            return false;
        }
        let plus = self.attacked_set(e);
        e.iter().all(|a| self.attackers[a].is_subset(&plus))
    }

    pub fn is_complete(&self, e: &BitSet) -> bool {
        self.is_admissible(e) && self.defended_by(&self.attacked_set(e)).is_subset(e)
    }

    pub fn is_stable(&self, e: &BitSet) -> bool {
        self.is_conflict_free(e) && self.range(e).len() == self.len()
    }

    /// Arguments that could join `e` without creating a conflict.
    fn addable(&self, e: &BitSet) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| {
                !e.contains(x)
                    && !self.attacks_pair(x, x)
                    && !self.targets[x].intersects(e)
                    && !self.attackers[x].intersects(e)
            })
            .collect()
    }

    pub fn is_naive(&self, e: &BitSet) -> bool {
        self.is_conflict_free(e) && self.addable(e).is_empty()
    }

    pub fn is_preferred(&self, e: &BitSet) -> bool {
        if !self.is_admissible(e) {
            return false;
        }
        let cands = self.addable(e);
        !self.search_cf(e, &cands, &mut |t| t != e && self.is_admissible(t))
    }

    pub fn is_semi_stable(&self, e: &BitSet) -> bool {
        if !self.is_admissible(e) {
            return false;
        }
        let r = self.range(e);
        let all = self.addable(&self.empty_set());
        !self.search_cf(&self.empty_set(), &all, &mut |t| {
            self.is_admissible(t) && r.is_proper_subset(&self.range(t))
        })
    }

    pub fn is_stage(&self, e: &BitSet) -> bool {
        if !self.is_conflict_free(e) {
            return false;
        }
        let r = self.range(e);
        let all = self.addable(&self.empty_set());
        !self.search_cf(&self.empty_set(), &all, &mut |t| {
            r.is_proper_subset(&self.range(t))
        })
    }

    /// Membership of `e` in `σ(F)`. Maximality is checked against the whole
    /// framework.
    pub fn is_extension(&self, e: &BitSet, s: Semantics) -> bool {
        match s {
            Semantics::Cf => self.is_conflict_free(e),
            Semantics::Adm => self.is_admissible(e),
            Semantics::Com => self.is_complete(e),
            Semantics::Naive => self.is_naive(e),
            Semantics::Stb => self.is_stable(e),
            Semantics::Prf => self.is_preferred(e),
            Semantics::Sem => self.is_semi_stable(e),
            Semantics::Stg => self.is_stage(e),
        }
    }

    /// Depth-first walk over the conflict-free sets `base ∪ T` with `T` drawn
    /// from `cands` (which must be pairwise-compatible with `base`). Stops and
    /// returns true as soon as `visit` does.
    pub(crate) fn search_cf(
        &self,
        base: &BitSet,
        cands: &[usize],
        visit: &mut dyn FnMut(&BitSet) -> bool,
    ) -> bool {
        let mut cur = base.clone();
        self.search_rec(&mut cur, cands, 0, visit)
    }

    fn search_rec(
        &self,
        cur: &mut BitSet,
        cands: &[usize],
        from: usize,
        visit: &mut dyn FnMut(&BitSet) -> bool,
    ) -> bool {
        if visit(cur) {
            return true;
        }
        for k in from..cands.len() {
            let x = cands[k];
            if self.targets[x].intersects(cur) || self.attackers[x].intersects(cur) {
                continue;
            }
            cur.insert(x);
            let stop = self.search_rec(cur, cands, k + 1, visit);
            cur.remove(x);
            if stop {
                return true;
            }
        }
        false
    }

    pub fn conflict_free_sets(&self) -> Vec<BitSet> {
        let all = self.addable(&self.empty_set());
        let mut out = Vec::new();
        self.search_cf(&self.empty_set(), &all, &mut |t| {
            out.push(t.clone());
            false
        });
        out
    }

    /// All `σ`-extensions, sorted by their argument-name sequences.
    pub fn extensions(&self, s: Semantics) -> Vec<BitSet> {
        let cf = self.conflict_free_sets();
        let mut out: Vec<BitSet> = match s {
            Semantics::Cf => cf,
            Semantics::Naive => cf.into_iter().filter(|e| self.is_naive(e)).collect(),
            Semantics::Stb => cf.into_iter().filter(|e| self.is_stable(e)).collect(),
            Semantics::Adm => cf.into_iter().filter(|e| self.is_admissible(e)).collect(),
            Semantics::Com => cf.into_iter().filter(|e| self.is_complete(e)).collect(),
            Semantics::Prf => {
                let adm: Vec<_> = cf.into_iter().filter(|e| self.is_admissible(e)).collect();
                maximal_by(adm, |e| e.clone())
            }
            Semantics::Sem => {
                let adm: Vec<_> = cf.into_iter().filter(|e| self.is_admissible(e)).collect();
                maximal_by(adm, |e| self.range(e))
            }
            Semantics::Stg => maximal_by(cf, |e| self.range(e)),
        };
        self.sort_by_names(&mut out);
        out
    }

    /// Sorts argument sets lexicographically by their sorted name sequences.
    pub fn sort_by_names(&self, sets: &mut [BitSet]) {
        sets.sort_by_cached_key(|e| {
            self.sorted_names(e)
                .into_iter()
                .map(str::to_string)
                .collect::<Vec<_>>()
        });
    }
}

/// Keeps the items whose key is ⊆-maximal among all keys.
pub(crate) fn maximal_by<T>(items: Vec<T>, key: impl Fn(&T) -> BitSet) -> Vec<T> {
    let mut keyed: Vec<(BitSet, T)> = items.into_iter().map(|t| (key(&t), t)).collect();
    keyed.sort_by_key(|(k, _)| std::cmp::Reverse(k.len()));
    // Anything dominated is dominated by a maximal key, so comparing against
    // the maximal keys seen so far is enough.
    let mut maxima: Vec<BitSet> = Vec::new();
    let mut out = Vec::new();
    for (k, t) in keyed {
        if maxima.iter().any(|m| k.is_proper_subset(m)) {
            continue;
        }
        if !maxima.contains(&k) {
            maxima.push(k);
        }
        out.push(t);
    }
    out
}

fn build_index(names: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if n.is_empty() {
            return Err(Error::EmptyName);
        }
        if index.insert(n.clone(), i).is_some() {
            return Err(Error::DuplicateArgument(n.clone()));
        }
    }
    Ok(index)
}

fn lookup(index: &HashMap<String, usize>, name: &str) -> Result<usize> {
    index
        .get(name)
        .copied()
        .ok_or_else(|| Error::UnknownArgument(name.to_string()))
}
