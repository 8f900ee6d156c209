//! Complete search for an extension with a prescribed claim-set, used where no
//! polynomial realization argument applies. The search space is every subset
//! of `E₀(C)`. Small frameworks walk it directly; larger ones go through a SAT
//! encoding, with counterexample-guided refinement for the maximality-based
//! semantics.

use crate::af::{ArgFramework, Semantics};
use crate::bitset::BitSet;
use crate::caf::ClaimFramework;
use varisat::{ExtendFormula, Lit, Solver};

/// How [`realizable_with`] explores the candidates.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Backend {
    /// Subsets up to [`SUBSET_LIMIT`] arguments, SAT beyond.
    #[default]
    Auto,
    Subsets,
    Sat,
}

/// Frameworks with at most this many arguments are searched subset by subset.
pub const SUBSET_LIMIT: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Base {
    Cf,
    Adm,
}

/// A solver whose variables are the members of some argument set; the other
/// arguments are fixed to false.
struct Enc<'a> {
    af: &'a ArgFramework,
    solver: Solver<'static>,
    lit: Vec<Option<Lit>>,
}

impl<'a> Enc<'a> {
    fn new(af: &'a ArgFramework, allowed: &BitSet, base: Base) -> Self {
        let mut solver = Solver::new();
        let lit = (0..af.len())
            .map(|a| allowed.contains(a).then(|| solver.new_lit()))
            .collect();
        let mut e = Enc { af, solver, lit };
        e.conflict_free();
        if base == Base::Adm {
            e.defended();
        }
        e
    }

    fn lits(&self, s: &BitSet) -> Vec<Lit> {
        s.iter().filter_map(|a| self.lit[a]).collect()
    }

    fn conflict_free(&mut self) {
        for &(a, b) in self.af.attacks() {
            if let (Some(x), Some(y)) = (self.lit[a], self.lit[b]) {
                if a == b {
                    self.solver.add_clause(&[!x]);
                } else {
                    self.solver.add_clause(&[!x, !y]);
                }
            }
        }
    }

    /// Each chosen argument has every attacker counter-attacked.
    fn defended(&mut self) {
        for a in 0..self.af.len() {
            let Some(x) = self.lit[a] else { continue };
            for b in self.af.attackers(a).iter() {
                let mut cl = vec![!x];
                cl.extend(self.lits(self.af.attackers(b)));
                self.solver.add_clause(&cl);
            }
        }
    }

    /// A literal true iff the chosen set attacks `b`, or `None` if it never can.
    fn attacks_lit(&mut self, b: usize) -> Option<Lit> {
        let att = self.lits(self.af.attackers(b));
        if att.is_empty() {
            return None;
        }
        let d = self.solver.new_lit();
        let mut cl = vec![!d];
        cl.extend(&att);
        self.solver.add_clause(&cl);
        for l in att {
            self.solver.add_clause(&[!l, d]);
        }
        Some(d)
    }

    /// Range literals `r_x ↔ x ∈ E ∪ E⁺`; `None` where `x` can never be in range.
    fn range_lits(&mut self) -> Vec<Option<Lit>> {
        (0..self.af.len())
            .map(|x| {
                let mut parts = self.lits(self.af.attackers(x));
                parts.extend(self.lit[x]);
                if parts.is_empty() {
                    return None;
                }
                let r = self.solver.new_lit();
                let mut cl = vec![!r];
                cl.extend(&parts);
                self.solver.add_clause(&cl);
                for l in parts {
                    self.solver.add_clause(&[!l, r]);
                }
                Some(r)
            })
            .collect()
    }

    fn stable(&mut self) {
        for x in 0..self.af.len() {
            let mut cl = self.lits(self.af.attackers(x));
            cl.extend(self.lit[x]);
            self.solver.add_clause(&cl);
        }
    }

    fn complete(&mut self) {
        let d: Vec<Option<Lit>> = (0..self.af.len()).map(|b| self.attacks_lit(b)).collect();
        for x in 0..self.af.len() {
            // Defended arguments must be in; an attacker that is never
            // counter-attacked makes `x` undefended outright.
            let mut cl: Vec<Lit> = Vec::new();
            let mut undefendable = false;
            for b in self.af.attackers(x).iter() {
                match d[b] {
                    Some(l) => cl.push(!l),
                    None => undefendable = true,
                }
            }
            if undefendable {
                continue;
            }
            cl.extend(self.lit[x]);
            self.solver.add_clause(&cl);
        }
    }

    fn naive(&mut self) {
        for x in 0..self.af.len() {
            if self.af.attacks_pair(x, x) {
                continue;
            }
            let mut near = self.af.attackers(x).union(self.af.targets(x));
            near.remove(x);
            let mut cl = self.lits(&near);
            cl.extend(self.lit[x]);
            self.solver.add_clause(&cl);
        }
    }

    fn solve(&mut self) -> Option<BitSet> {
        if !self.solver.solve().expect("in-memory solver does not fail") {
            return None;
        }
        let model = self.solver.model().expect("model after sat");
        let mut val = vec![false; model.len()];
        for l in &model {
            if l.var().index() < val.len() {
                val[l.var().index()] = l.is_positive();
            }
        }
        let on = |l: Lit| val.get(l.var().index()).copied().unwrap_or(false);
        Some(BitSet::from_indices(
            self.af.len(),
            (0..self.af.len()).filter(|&a| self.lit[a].is_some_and(on)),
        ))
    }
}

/// Is there `E ⊆ E₀(mask)` with `claim(E) = mask` and `E ∈ σ(g)`?
pub fn realizable_with(g: &ClaimFramework, mask: &BitSet, s: Semantics, backend: Backend) -> bool {
    match backend {
        Backend::Subsets => by_subsets(g, mask, s),
        Backend::Sat => by_sat(g, mask, s),
        Backend::Auto if g.len() <= SUBSET_LIMIT => by_subsets(g, mask, s),
        Backend::Auto => by_sat(g, mask, s),
    }
}

fn by_subsets(g: &ClaimFramework, mask: &BitSet, s: Semantics) -> bool {
    let af = g.af();
    let cands: Vec<usize> = g
        .args_with_claims(mask)
        .iter()
        .filter(|&x| !af.attacks_pair(x, x))
        .collect();
    af.search_cf(&af.empty_set(), &cands, &mut |e| {
        g.project(e) == *mask && af.is_extension(e, s)
    })
}

fn by_sat(g: &ClaimFramework, mask: &BitSet, s: Semantics) -> bool {
    let af = g.af();
    let e0 = g.args_with_claims(mask);
    let base = match s {
        Semantics::Cf | Semantics::Naive | Semantics::Stb | Semantics::Stg => Base::Cf,
        _ => Base::Adm,
    };
    let mut enc = Enc::new(af, &e0, base);
    for c in mask.iter() {
        let cl = enc.lits(g.members(c));
        enc.solver.add_clause(&cl);
    }
    match s {
        Semantics::Cf | Semantics::Adm => enc.solve().is_some(),
        Semantics::Stb => {
            enc.stable();
            enc.solve().is_some()
        }
        Semantics::Com => {
            enc.complete();
            enc.solve().is_some()
        }
        Semantics::Naive => {
            enc.naive();
            enc.solve().is_some()
        }
        Semantics::Prf => preferred(g, &e0, enc),
        Semantics::Sem | Semantics::Stg => range_maximal(g, enc, base),
    }
}

/// Counterexample loop: take a candidate, grow it to a preferred extension `T`
/// of the whole framework, accept if `T` has the right claims, otherwise rule
/// out every candidate inside `T`.
fn preferred(g: &ClaimFramework, e0: &BitSet, mut cand: Enc) -> bool {
    let af = g.af();
    let target = g.project(e0);
    let all = BitSet::full(af.len());
    let mut grow = Enc::new(af, &all, Base::Adm);
    while let Some(e) = cand.solve() {
        let mut t = e;
        loop {
            let act = grow.solver.new_lit();
            let mut cl = vec![!act];
            cl.extend(grow.lits(&all.difference(&t)));
            grow.solver.add_clause(&cl);
            let mut assume = grow.lits(&t);
            assume.push(act);
            grow.solver.assume(&assume);
            let next = grow.solve();
            grow.solver.assume(&[]);
            grow.solver.add_clause(&[!act]);
            match next {
                Some(bigger) => t = bigger,
                None => break,
            }
        }
        if t.is_subset(e0) && g.project(&t) == target {
            return true;
        }
        let block = cand.lits(&e0.difference(&t));
        if block.is_empty() {
            return false;
        }
        cand.solver.add_clause(&block);
    }
    false
}

/// Same loop for semi-stable (`base = Adm`) and stage (`base = Cf`) semantics,
/// working on ranges instead of sets.
fn range_maximal(g: &ClaimFramework, mut cand: Enc, base: Base) -> bool {
    let af = g.af();
    let n = af.len();
    let cand_range = cand.range_lits();
    let all = BitSet::full(n);
    let mut grow = Enc::new(af, &all, base);
    let grow_range = grow.range_lits();
    while let Some(e) = cand.solve() {
        let mut r = af.range(&e);
        loop {
            let act = grow.solver.new_lit();
            let mut cl = vec![!act];
            cl.extend((0..n).filter(|&x| !r.contains(x)).filter_map(|x| grow_range[x]));
            grow.solver.add_clause(&cl);
            let mut assume: Vec<Lit> = r.iter().filter_map(|x| grow_range[x]).collect();
            assume.push(act);
            grow.solver.assume(&assume);
            let next = grow.solve();
            grow.solver.assume(&[]);
            grow.solver.add_clause(&[!act]);
            match next {
                Some(t) => r = af.range(&t),
                None => break,
            }
        }
        // `r` is a maximal range. A candidate reaching all of it is an extension.
        let reach: Option<Vec<Lit>> = r.iter().map(|x| cand_range[x]).collect();
        if let Some(assume) = reach {
            cand.solver.assume(&assume);
            let hit = cand.solve().is_some();
            cand.solver.assume(&[]);
            if hit {
                return true;
            }
        }
        let block: Vec<Lit> = (0..n)
            .filter(|&x| !r.contains(x))
            .filter_map(|x| cand_range[x])
            .collect();
        if block.is_empty() {
            return false;
        }
        cand.solver.add_clause(&block);
    }
    false
}
