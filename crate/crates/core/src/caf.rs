//! Claim-augmented frameworks and claim-level semantics.

use crate::af::{ArgFramework, Semantics};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use std::collections::{BTreeSet, HashMap};
use std::fmt;

/// A set of claim names. Display renders `[a,b]` in sorted order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClaimSet(pub BTreeSet<String>);

impl ClaimSet {
    pub fn new() -> Self {
        ClaimSet::default()
    }

    /// Parses a comma-separated list; surrounding brackets and blanks are ignored.
    pub fn parse(text: &str) -> Self {
        let t = text.trim();
        let t = t.strip_prefix('[').unwrap_or(t);
        let t = t.strip_suffix(']').unwrap_or(t);
        t.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect()
    }

    pub fn contains(&self, c: &str) -> bool {
        self.0.contains(c)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }

    pub fn is_subset(&self, other: &ClaimSet) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl<S: Into<String>> FromIterator<S> for ClaimSet {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        ClaimSet(iter.into_iter().map(Into::into).collect())
    }
}

impl fmt::Display for ClaimSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// The attacks missing for well-formedness, as argument index pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WfProblem {
    pub pairs: BTreeSet<(usize, usize)>,
}

impl WfProblem {
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a, b))
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// A CAF `(A, Att, claim)`. Claims are indexed in sorted name order, so index
/// order on claims coincides with name order.
#[derive(Clone, PartialEq, Eq)]
pub struct ClaimFramework {
    af: ArgFramework,
    claim_of: Vec<usize>,
    claims: Vec<String>,
    claim_index: HashMap<String, usize>,
    members: Vec<BitSet>,
}

impl fmt::Debug for ClaimFramework {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<_> = (0..self.len())
            .map(|a| (self.af.name(a), self.claim_name_of(a)))
            .collect();
        f.debug_struct("ClaimFramework")
            .field("af", &self.af)
            .field("claims", &labels)
            .finish()
    }
}

impl ClaimFramework {
    /// `labels[i]` is the claim of argument `i`.
    pub fn from_labels<S: AsRef<str>>(af: ArgFramework, labels: &[S]) -> Result<Self> {
        if labels.len() != af.len() {
            let missing = af.name(labels.len().min(af.len().saturating_sub(1)));
            return Err(Error::MissingClaim(missing.to_string()));
        }
        for l in labels {
            if l.as_ref().is_empty() {
                return Err(Error::EmptyName);
            }
        }
        let set: BTreeSet<&str> = labels.iter().map(|l| l.as_ref()).collect();
        let claims: Vec<String> = set.into_iter().map(str::to_string).collect();
        let claim_index: HashMap<String, usize> = claims
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        let claim_of: Vec<usize> = labels.iter().map(|l| claim_index[l.as_ref()]).collect();
        let mut members = vec![af.empty_set(); claims.len()];
        for (a, &c) in claim_of.iter().enumerate() {
            members[c].insert(a);
        }
        Ok(ClaimFramework {
            af,
            claim_of,
            claims,
            claim_index,
            members,
        })
    }

    /// Labels given as `(argument, claim)` pairs; every argument needs exactly one.
    pub fn new<S: AsRef<str>>(
        af: ArgFramework,
        labels: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self> {
        let mut per: Vec<Option<String>> = vec![None; af.len()];
        for (a, c) in labels {
            let i = af.index_of(a.as_ref())?;
            if per[i].replace(c.as_ref().to_string()).is_some() {
                return Err(Error::DuplicateClaim(a.as_ref().to_string()));
            }
        }
        let mut labels = Vec::with_capacity(af.len());
        for (i, l) in per.into_iter().enumerate() {
            labels.push(l.ok_or_else(|| Error::MissingClaim(af.name(i).to_string()))?);
        }
        Self::from_labels(af, &labels)
    }

    /// Every argument claims its own name.
    pub fn implicit(af: ArgFramework) -> Self {
        let labels = af.names().to_vec();
        Self::from_labels(af, &labels).expect("argument names are valid claims")
    }

    /// Same arguments and claims over a different attack relation.
    pub fn with_af(&self, af: ArgFramework) -> Self {
        assert_eq!(af.names(), self.af.names());
        ClaimFramework {
            af,
            ..self.clone()
        }
    }

    pub fn af(&self) -> &ArgFramework {
        &self.af
    }

    pub fn len(&self) -> usize {
        self.af.len()
    }

    pub fn is_empty(&self) -> bool {
        self.af.is_empty()
    }

    pub fn num_claims(&self) -> usize {
        self.claims.len()
    }

    /// The claim alphabet in sorted order.
    pub fn claims(&self) -> &[String] {
        &self.claims
    }

    pub fn claim_of(&self, a: usize) -> usize {
        self.claim_of[a]
    }

    pub fn claim_name_of(&self, a: usize) -> &str {
        &self.claims[self.claim_of[a]]
    }

    pub fn claim_index(&self, c: &str) -> Option<usize> {
        self.claim_index.get(c).copied()
    }

    /// Arguments carrying claim index `c`.
    pub fn members(&self, c: usize) -> &BitSet {
        &self.members[c]
    }

    /// `claim(E)` as a mask over claim indices.
    pub fn project(&self, e: &BitSet) -> BitSet {
        BitSet::from_indices(self.num_claims(), e.iter().map(|a| self.claim_of[a]))
    }

    pub fn claim_set(&self, mask: &BitSet) -> ClaimSet {
        mask.iter().map(|c| self.claims[c].clone()).collect()
    }

    pub fn claims_of(&self, e: &BitSet) -> ClaimSet {
        self.claim_set(&self.project(e))
    }

    /// The claim mask for `c`, or `None` if `c` mentions a claim outside the alphabet.
    pub fn mask_of(&self, c: &ClaimSet) -> Option<BitSet> {
        let mut m = BitSet::new(self.num_claims());
        for x in c.iter() {
            m.insert(self.claim_index(x)?);
        }
        Some(m)
    }

    /// `E₀(C)`: all arguments whose claim is in the mask.
    pub fn args_with_claims(&self, mask: &BitSet) -> BitSet {
        let mut e = self.af.empty_set();
        for c in mask.iter() {
            e.union_with(&self.members[c]);
        }
        e
    }

    /// Projects argument sets to claim masks, deduplicated and sorted by name sequence.
    pub fn project_all<'a>(&self, sets: impl IntoIterator<Item = &'a BitSet>) -> Vec<BitSet> {
        let mut masks: Vec<BitSet> = sets.into_iter().map(|e| self.project(e)).collect();
        sort_masks(&mut masks);
        masks
    }

    /// `σ_c(F)`.
    pub fn claim_extensions(&self, s: Semantics) -> Vec<ClaimSet> {
        let ext = self.af.extensions(s);
        self.project_all(&ext)
            .iter()
            .map(|m| self.claim_set(m))
            .collect()
    }

    pub fn is_well_formed(&self) -> bool {
        self.members.iter().all(|m| {
            let mut it = m.iter();
            match it.next() {
                None => true,
                Some(first) => it.all(|a| self.af.targets(a) == self.af.targets(first)),
            }
        })
    }

    pub fn wf_problematic(&self) -> WfProblem {
        let mut pairs = BTreeSet::new();
        for m in &self.members {
            let mut out = self.af.empty_set();
            for a in m.iter() {
                out.union_with(self.af.targets(a));
            }
            for a in m.iter() {
                for b in out.difference(self.af.targets(a)).iter() {
                    pairs.insert((a, b));
                }
            }
        }
        WfProblem { pairs }
    }
}

/// Sorts and deduplicates claim masks; index order equals name order.
pub fn sort_masks(masks: &mut Vec<BitSet>) {
    masks.sort_by(|a, b| a.cmp_lex(b));
    masks.dedup();
}
