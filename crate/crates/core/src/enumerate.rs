//! Claim-level enumeration and acceptance.
//!
//! Under reductions 2-4 the loop runs over the `2^k` claim-sets and uses the
//! maximal realizations from [`crate::realize`]; elsewhere it falls back to
//! argument-level enumeration on the reduced framework.

use crate::af::{maximal_by, Semantics};
use crate::bitset::BitSet;
use crate::caf::{sort_masks, ClaimSet};
use crate::error::{Error, Result};
use crate::pcaf::{PrefFramework, Reduction};
use crate::realize::Verifier;
use rayon::prelude::*;
use std::fmt;
use std::time::{Duration, Instant};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_claims: usize,
    pub max_args: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_claims: 20,
            max_args: 64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumOptions {
    pub limits: Limits,
    /// Worker threads for the claim-set loop; 1 runs inline, 0 uses all cores.
    pub jobs: usize,
    /// Under reduction 3, find preferred claim-sets by scanning from the
    /// largest admissible ones down and skipping their subsets.
    pub r3_prf_shortcut: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            limits: Limits::default(),
            jobs: 1,
            r3_prf_shortcut: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaskKind {
    Enum,
    Cred,
    Skep,
    Ver,
}

impl fmt::Display for TaskKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TaskKind::Enum => "enum",
            TaskKind::Cred => "cred",
            TaskKind::Skep => "skep",
            TaskKind::Ver => "ver",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    ClaimSets(Vec<ClaimSet>),
    Decision(bool),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Stats {
    /// Claim-sets checked individually.
    pub candidates: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaskResult {
    pub kind: TaskKind,
    pub payload: Payload,
    pub stats: Stats,
}

impl TaskResult {
    pub fn claim_sets(&self) -> Option<&[ClaimSet]> {
        match &self.payload {
            Payload::ClaimSets(v) => Some(v),
            Payload::Decision(_) => None,
        }
    }

    pub fn decision(&self) -> Option<bool> {
        match self.payload {
            Payload::Decision(b) => Some(b),
            Payload::ClaimSets(_) => None,
        }
    }
}

fn check_limits(pf: &PrefFramework, limits: &Limits) -> Result<()> {
    let k = pf.caf().num_claims();
    if k > limits.max_claims {
        return Err(Error::ResourceLimit {
            what: "claims",
            limit: limits.max_claims,
            actual: k,
        });
    }
    if pf.len() > limits.max_args {
        return Err(Error::ResourceLimit {
            what: "arguments",
            limit: limits.max_args,
            actual: pf.len(),
        });
    }
    Ok(())
}

/// Whether `(i, s)` is handled by the claim-set loop rather than argument-level search.
pub fn uses_claim_loop(i: Reduction, s: Semantics) -> bool {
    match i {
        Reduction::R1 => false,
        Reduction::R3 => true,
        Reduction::R2 | Reduction::R4 => s != Semantics::Com,
    }
}

struct Loop<'a> {
    v: Verifier,
    k: usize,
    opts: &'a EnumOptions,
}

impl Loop<'_> {
    fn all_masks(&self) -> Vec<BitSet> {
        (0..1u64 << self.k).map(|b| BitSet::from_mask(self.k, b)).collect()
    }

    /// Applies `f` to every mask, in parallel if configured, keeping input order.
    fn map<T: Send>(&self, masks: &[BitSet], f: impl Fn(&BitSet) -> T + Sync) -> Vec<T> {
        if self.opts.jobs == 1 {
            return masks.iter().map(f).collect();
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.opts.jobs)
            .build()
            .expect("thread pool");
        pool.install(|| masks.par_iter().map(&f).collect())
    }

    fn run(&self, i: Reduction, s: Semantics, stats: &mut Stats) -> Vec<BitSet> {
        let masks = self.all_masks();
        stats.candidates += masks.len() as u64;
        let red = self.v.reduced();
        match s {
            Semantics::Cf | Semantics::Adm | Semantics::Naive | Semantics::Stb | Semantics::Com => {
                let keep = self.map(&masks, |m| self.v.verify_mask(m, s));
                masks
                    .into_iter()
                    .zip(keep)
                    .filter_map(|(m, k)| k.then_some(m))
                    .collect()
            }
            Semantics::Prf if i == Reduction::R3 && self.opts.r3_prf_shortcut => {
                self.maximal_admissible(masks)
            }
            Semantics::Prf | Semantics::Sem => {
                let pool = self.realized(&masks, true);
                if s == Semantics::Prf {
                    maximal_by(pool, |(_, e)| e.clone())
                } else {
                    maximal_by(pool, |(_, e)| red.af().range(e))
                }
                .into_iter()
                .map(|(m, _)| m)
                .collect()
            }
            Semantics::Stg => {
                let pool = self.realized(&masks, false);
                maximal_by(pool, |(_, e)| red.af().range(e))
                    .into_iter()
                    .map(|(m, _)| m)
                    .collect()
            }
        }
    }

    /// Claim-sets that are admissible (or conflict-free), each with its maximal realization.
    fn realized(&self, masks: &[BitSet], admissible: bool) -> Vec<(BitSet, BitSet)> {
        let caf = self.v.reduced();
        let found = self.map(masks, |m| {
            let t = self.v.trace(m);
            let e = if admissible { t.estar } else { t.e1 };
            (caf.project(&e) == *m).then_some(e)
        });
        masks
            .iter()
            .cloned()
            .zip(found)
            .filter_map(|(m, e)| e.map(|e| (m, e)))
            .collect()
    }

    fn maximal_admissible(&self, mut masks: Vec<BitSet>) -> Vec<BitSet> {
        masks.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp_lex(b)));
        let mut found: Vec<BitSet> = Vec::new();
        for m in masks {
            if found.iter().any(|f| m.is_subset(f)) {
                continue;
            }
            if self.v.verify_mask(&m, Semantics::Adm) {
                found.push(m);
            }
        }
        found
    }
}

/// `σ_p^i(pf)` with default options.
pub fn enumerate_claim_extensions(
    pf: &PrefFramework,
    i: Reduction,
    s: Semantics,
) -> Result<Vec<ClaimSet>> {
    let r = enumerate_with(pf, i, s, &EnumOptions::default())?;
    Ok(match r.payload {
        Payload::ClaimSets(v) => v,
        Payload::Decision(_) => unreachable!(),
    })
}

pub fn enumerate_with(
    pf: &PrefFramework,
    i: Reduction,
    s: Semantics,
    opts: &EnumOptions,
) -> Result<TaskResult> {
    let start = Instant::now();
    check_limits(pf, &opts.limits)?;
    let mut stats = Stats::default();
    let v = Verifier::new(pf, i)?;
    let caf = pf.caf();
    let mut masks = if uses_claim_loop(i, s) {
        let l = Loop {
            v,
            k: caf.num_claims(),
            opts,
        };
        l.run(i, s, &mut stats)
    } else {
        let red = v.reduced();
        let ext = red.af().extensions(s);
        stats.candidates += ext.len() as u64;
        ext.iter().map(|e| caf.project(e)).collect()
    };
    sort_masks(&mut masks);
    stats.elapsed = start.elapsed();
    Ok(TaskResult {
        kind: TaskKind::Enum,
        payload: Payload::ClaimSets(masks.iter().map(|m| caf.claim_set(m)).collect()),
        stats,
    })
}

fn decision(kind: TaskKind, b: bool, candidates: u64, start: Instant) -> TaskResult {
    TaskResult {
        kind,
        payload: Payload::Decision(b),
        stats: Stats {
            candidates,
            elapsed: start.elapsed(),
        },
    }
}

/// Semantics whose claim-sets can be checked one at a time without the whole family.
fn checkable_alone(i: Reduction, s: Semantics) -> bool {
    uses_claim_loop(i, s)
        && matches!(
            s,
            Semantics::Cf | Semantics::Adm | Semantics::Naive | Semantics::Stb | Semantics::Com
        )
}

pub fn credulous_with(
    pf: &PrefFramework,
    i: Reduction,
    s: Semantics,
    claim: &str,
    opts: &EnumOptions,
) -> Result<TaskResult> {
    let start = Instant::now();
    check_limits(pf, &opts.limits)?;
    let caf = pf.caf();
    let Some(c) = caf.claim_index(claim) else {
        return Ok(decision(TaskKind::Cred, false, 0, start));
    };
    if checkable_alone(i, s) {
        let v = Verifier::new(pf, i)?;
        let k = caf.num_claims();
        let mut n = 0;
        for bits in 0..1u64 << k {
            if bits >> c & 1 == 0 {
                continue;
            }
            n += 1;
            if v.verify_mask(&BitSet::from_mask(k, bits), s) {
                return Ok(decision(TaskKind::Cred, true, n, start));
            }
        }
        return Ok(decision(TaskKind::Cred, false, n, start));
    }
    let r = enumerate_with(pf, i, s, opts)?;
    let fam = r.claim_sets().expect("enumeration payload");
    let hit = fam.iter().any(|x| x.contains(claim));
    Ok(decision(TaskKind::Cred, hit, r.stats.candidates, start))
}

pub fn skeptical_with(
    pf: &PrefFramework,
    i: Reduction,
    s: Semantics,
    claim: &str,
    opts: &EnumOptions,
) -> Result<TaskResult> {
    let start = Instant::now();
    let r = enumerate_with(pf, i, s, opts)?;
    let fam = r.claim_sets().expect("enumeration payload");
    let all = fam.iter().all(|x| x.contains(claim));
    Ok(decision(TaskKind::Skep, all, r.stats.candidates, start))
}

pub fn verify_with(
    pf: &PrefFramework,
    i: Reduction,
    s: Semantics,
    c: &ClaimSet,
    opts: &EnumOptions,
) -> Result<TaskResult> {
    let start = Instant::now();
    check_limits(pf, &opts.limits)?;
    let b = Verifier::new(pf, i)?.verify(c, s);
    Ok(decision(TaskKind::Ver, b, 1, start))
}

pub fn credulous(pf: &PrefFramework, i: Reduction, s: Semantics, claim: &str) -> Result<bool> {
    Ok(credulous_with(pf, i, s, claim, &EnumOptions::default())?
        .decision()
        .expect("decision payload"))
}

pub fn skeptical(pf: &PrefFramework, i: Reduction, s: Semantics, claim: &str) -> Result<bool> {
    Ok(skeptical_with(pf, i, s, claim, &EnumOptions::default())?
        .decision()
        .expect("decision payload"))
}
