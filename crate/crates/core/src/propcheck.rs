//! I-maximality checks, a random PCAF sampler, and a catalog of known
//! counterexamples.

use crate::af::{ArgFramework, Semantics};
use crate::bitset::BitSet;
use crate::caf::{ClaimFramework, ClaimSet};
use crate::enumerate::enumerate_claim_extensions;
use crate::pcaf::{PrefFramework, Reduction};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// The first pair `(S, T)` with `S ⊂ T`, scanning `family` in order for `S`
/// and then for `T`. `None` iff the family is an antichain.
pub fn check_imaximality(family: &[ClaimSet]) -> Option<(ClaimSet, ClaimSet)> {
    for s in family {
        for t in family {
            if s != t && s.is_subset(t) {
                return Some((s.clone(), t.clone()));
            }
        }
    }
    None
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub framework: PrefFramework,
    pub reduction: Reduction,
    pub semantics: Semantics,
    pub expected: Vec<ClaimSet>,
    pub violation: Option<(ClaimSet, ClaimSet)>,
}

impl CatalogEntry {
    /// Recomputes the family and compares it with the recorded one.
    pub fn self_check(&self) -> Result<(), String> {
        let got = enumerate_claim_extensions(&self.framework, self.reduction, self.semantics)
            .map_err(|e| e.to_string())?;
        if got != self.expected {
            return Err(format!(
                "{}: expected {:?}, enumerated {:?}",
                self.name, self.expected, got
            ));
        }
        if check_imaximality(&got) != self.violation {
            return Err(format!("{}: violation differs", self.name));
        }
        Ok(())
    }
}

/// Builds a PCAF from `(argument, claim)` labels, attacks and `a ≻ b` pairs.
/// Panics on malformed input; meant for fixed instances.
pub fn pcaf(labels: &[(&str, &str)], attacks: &[(&str, &str)], prefs: &[(&str, &str)]) -> PrefFramework {
    let af = ArgFramework::new(labels.iter().map(|(a, _)| *a), attacks.iter().copied())
        .expect("valid arguments and attacks");
    let caf = ClaimFramework::new(af, labels.iter().copied()).expect("valid claims");
    PrefFramework::new(caf, prefs.iter().copied()).expect("valid preference framework")
}

fn family(sets: &[&[&str]]) -> Vec<ClaimSet> {
    sets.iter().map(|s| s.iter().copied().collect()).collect()
}

fn pair(s: &[&str], t: &[&str]) -> Option<(ClaimSet, ClaimSet)> {
    Some((s.iter().copied().collect(), t.iter().copied().collect()))
}

/// Known counterexamples to I-maximality, plus one instance without a violation.
pub fn catalog() -> Vec<CatalogEntry> {
    let ab = &[("a", "alpha"), ("a'", "alpha"), ("b", "beta")];
    let mut out = vec![
        CatalogEntry {
            name: "deleted-attack-R1-STB",
            framework: pcaf(ab, &[("a", "b"), ("a'", "b"), ("b", "a")], &[("b", "a'")]),
            reduction: Reduction::R1,
            semantics: Semantics::Stb,
            expected: family(&[&["alpha"], &["alpha", "beta"]]),
            violation: pair(&["alpha"], &["alpha", "beta"]),
        },
        CatalogEntry {
            name: "one-way-attack-R4-STB",
            framework: pcaf(ab, &[("b", "a")], &[("a", "b")]),
            reduction: Reduction::R4,
            semantics: Semantics::Stb,
            expected: family(&[&["alpha"], &["alpha", "beta"]]),
            violation: pair(&["alpha"], &["alpha", "beta"]),
        },
        CatalogEntry {
            name: "twin-classes-R2-STB",
            framework: pcaf(
                &[
                    ("a", "alpha"),
                    ("a'", "alpha"),
                    ("a''", "alpha"),
                    ("b", "beta"),
                    ("b'", "beta"),
                ],
                &[("b", "a"), ("b", "a'"), ("b'", "a"), ("b'", "a'")],
                &[("a", "b"), ("a'", "b'")],
            ),
            reduction: Reduction::R2,
            semantics: Semantics::Stb,
            expected: family(&[&["alpha"], &["alpha", "beta"]]),
            violation: pair(&["alpha"], &["alpha", "beta"]),
        },
        CatalogEntry {
            name: "three-cycle-R3-STG",
            framework: pcaf(
                &[("a", "alpha"), ("a'", "alpha"), ("b", "beta"), ("c", "gamma")],
                &[("a", "b"), ("b", "c"), ("c", "a"), ("a'", "b"), ("b", "a'")],
                &[("b", "a'")],
            ),
            reduction: Reduction::R3,
            semantics: Semantics::Stg,
            expected: family(&[&["alpha"], &["alpha", "gamma"], &["beta"]]),
            violation: pair(&["alpha"], &["alpha", "gamma"]),
        },
        CatalogEntry {
            name: "reverted-sibling-R2-STB",
            framework: pcaf(ab, &[("a", "b"), ("a'", "b"), ("b", "a")], &[("b", "a'")]),
            reduction: Reduction::R2,
            semantics: Semantics::Stb,
            expected: family(&[&["alpha"], &["beta"]]),
            violation: None,
        },
    ];
    let naive_names = ["isolated-attack-R1-NAIVE", "isolated-attack-R2-NAIVE", "isolated-attack-R3-NAIVE", "isolated-attack-R4-NAIVE"];
    for (i, name) in Reduction::ALL.into_iter().zip(naive_names) {
        out.push(CatalogEntry {
            name,
            framework: pcaf(ab, &[("b", "a'")], &[]),
            reduction: i,
            semantics: Semantics::Naive,
            expected: family(&[&["alpha"], &["alpha", "beta"]]),
            violation: pair(&["alpha"], &["alpha", "beta"]),
        });
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleBounds {
    pub min_args: usize,
    pub max_args: usize,
    pub max_claims: usize,
    /// Probability of each preference pair; attack density is drawn per instance.
    pub pref_density: f64,
}

impl SampleBounds {
    pub fn new(max_args: usize, max_claims: usize) -> Self {
        SampleBounds {
            min_args: 1,
            max_args,
            max_claims,
            pref_density: 0.3,
        }
    }
}

const CLAIM_NAMES: [&str; 6] = ["alpha", "beta", "gamma", "delta", "epsilon", "zeta"];

fn claim_name(j: usize) -> String {
    CLAIM_NAMES
        .get(j)
        .map_or_else(|| format!("claim{j}"), |s| s.to_string())
}

/// A random valid PCAF. Claims are assigned first and every claim is used;
/// attacks are drawn once per claim class so the CAF is well-formed; the
/// preferences are asymmetric, and a strict partial order when `transitive`.
pub fn random_pcaf<R: Rng>(rng: &mut R, b: &SampleBounds, transitive: bool) -> PrefFramework {
    let n = rng.gen_range(b.min_args.max(1)..=b.max_args.max(1));
    let k = rng.gen_range(1..=b.max_claims.clamp(1, n));
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut label = vec![0usize; n];
    for (pos, &a) in order.iter().enumerate() {
        label[a] = if pos < k { pos } else { rng.gen_range(0..k) };
    }
    let density: f64 = rng.gen_range(0.1..0.6);
    let outs: Vec<Vec<usize>> = (0..k)
        .map(|_| (0..n).filter(|_| rng.gen_bool(density)).collect())
        .collect();
    let attacks = (0..n).flat_map(|a| outs[label[a]].iter().map(move |&t| (a, t)));
    let names: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
    let af = ArgFramework::from_indices(names, attacks.collect::<Vec<_>>()).expect("indices in range");
    let labels: Vec<String> = label.iter().map(|&c| claim_name(c)).collect();
    let caf = ClaimFramework::from_labels(af, &labels).expect("total labeling");
    let prefs = if transitive {
        random_partial_order(rng, n, b.pref_density)
    } else {
        let mut p = Vec::new();
        for a in 0..n {
            for c in a + 1..n {
                if rng.gen_bool(b.pref_density) {
                    p.push(if rng.gen_bool(0.5) { (a, c) } else { (c, a) });
                }
            }
        }
        p
    };
    PrefFramework::from_indices(caf, prefs)
}

/// Edges consistent with a random linear order, closed under transitivity.
fn random_partial_order<R: Rng>(rng: &mut R, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut over = vec![BitSet::new(n); n];
    for x in 0..n {
        for y in x + 1..n {
            if rng.gen_bool(p) {
                over[order[x]].insert(order[y]);
            }
        }
    }
    // Closing along the order from the bottom up.
    for x in (0..n).rev() {
        let a = order[x];
        for &c in &order[x + 1..] {
            if over[a].contains(c) {
                let row = over[c].clone();
                over[a].union_with(&row);
            }
        }
    }
    (0..n)
        .flat_map(|a| over[a].iter().map(move |c| (a, c)).collect::<Vec<_>>())
        .collect()
}

/// The per-trial generator: one independent stream per trial index.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Searches `trials` random PCAFs for one whose `σ_p^i` family is not an
/// antichain. The lowest failing trial index wins, so results do not depend
/// on scheduling.
pub fn falsify_imaximality(
    i: Reduction,
    s: Semantics,
    trials: u64,
    bounds: &SampleBounds,
    transitive_only: bool,
    seed: u64,
) -> Option<PrefFramework> {
    (0..trials).into_par_iter().find_map_first(|t| {
        let pf = random_pcaf(&mut trial_rng(seed, t), bounds, transitive_only);
        let fam = enumerate_claim_extensions(&pf, i, s).expect("sampled frameworks are valid");
        check_imaximality(&fam).map(|_| pf)
    })
}
