//! Preference-based CAFs and the four attack reductions.

use crate::af::Semantics;
use crate::bitset::BitSet;
use crate::caf::{ClaimFramework, ClaimSet};
use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Reduction {
    R1,
    R2,
    R3,
    R4,
}

impl Reduction {
    pub const ALL: [Reduction; 4] = [Reduction::R1, Reduction::R2, Reduction::R3, Reduction::R4];

    /// Reductions under which conflicts between two arguments are never lost.
    pub fn preserves_conflicts(self) -> bool {
        self != Reduction::R1
    }

    pub fn number(self) -> u8 {
        match self {
            Reduction::R1 => 1,
            Reduction::R2 => 2,
            Reduction::R3 => 3,
            Reduction::R4 => 4,
        }
    }
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl FromStr for Reduction {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let t = s.trim();
        let t = t.strip_prefix(['r', 'R']).unwrap_or(t);
        match t {
            "1" => Ok(Reduction::R1),
            "2" => Ok(Reduction::R2),
            "3" => Ok(Reduction::R3),
            "4" => Ok(Reduction::R4),
            _ => Err(format!("unknown reduction `{s}`")),
        }
    }
}

/// Whether `(a,b)` ends up in the reduced relation, given the attacks and
/// preferences between `a` and `b` only. Every reduction is local to a pair.
#[inline]
pub fn attack_survives(i: Reduction, ab: bool, ba: bool, a_over_b: bool, b_over_a: bool) -> bool {
    let kept = ab && !b_over_a;
    let reverted = ba && !ab && a_over_b;
    let unanswered = ab && !ba;
    match i {
        Reduction::R1 => kept,
        Reduction::R2 => kept || reverted,
        Reduction::R3 => kept || unanswered,
        Reduction::R4 => kept || reverted || unanswered,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Same-claim arguments with different out-attacks; pairs are wf-problematic ones.
    NotWellFormed { pairs: Vec<(String, String)> },
    Asymmetry { a: String, b: String },
    Transitivity { a: String, b: String, c: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotWellFormed { pairs } => {
                write!(f, "not well-formed; missing attacks")?;
                for (a, b) in pairs {
                    write!(f, " ({a},{b})")?;
                }
                Ok(())
            }
            Violation::Asymmetry { a, b } => {
                write!(f, "preferences not asymmetric: ({a},{b}) and ({b},{a})")
            }
            Violation::Transitivity { a, b, c } => write!(
                f,
                "preferences not transitive: ({a},{b}) and ({b},{c}) but not ({a},{c})"
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A PCAF: a CAF plus `a ≻ b` pairs meaning `a` is stronger than `b`.
#[derive(Clone, PartialEq, Eq)]
pub struct PrefFramework {
    caf: ClaimFramework,
    prefs: Vec<(usize, usize)>,
    over: Vec<BitSet>,
}

impl fmt::Debug for PrefFramework {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let af = self.caf.af();
        let p: Vec<_> = self
            .prefs
            .iter()
            .map(|&(a, b)| (af.name(a), af.name(b)))
            .collect();
        f.debug_struct("PrefFramework")
            .field("caf", &self.caf)
            .field("prefs", &p)
            .finish()
    }
}

impl PrefFramework {
    /// Builds and validates: the CAF must be well-formed and `prefs` asymmetric.
    pub fn new<S: AsRef<str>>(
        caf: ClaimFramework,
        prefs: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self> {
        let pf = Self::unchecked_named(caf, prefs)?;
        let report = pf.validate(false);
        if report.is_valid() {
            Ok(pf)
        } else {
            Err(Error::Invalid(report))
        }
    }

    /// Builds without validating, so that [`PrefFramework::validate`] can report
    /// on the result. Only name resolution can fail.
    pub fn unchecked_named<S: AsRef<str>>(
        caf: ClaimFramework,
        prefs: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self> {
        let af = caf.af();
        let mut idx = Vec::new();
        for (a, b) in prefs {
            idx.push((af.index_of(a.as_ref())?, af.index_of(b.as_ref())?));
        }
        Ok(Self::from_indices(caf, idx))
    }

    /// Index-based constructor without validation.
    pub fn from_indices(caf: ClaimFramework, prefs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let n = caf.len();
        let mut prefs: Vec<_> = prefs.into_iter().collect();
        assert!(prefs.iter().all(|&(a, b)| a < n && b < n));
        prefs.sort_unstable();
        prefs.dedup();
        let mut over = vec![BitSet::new(n); n];
        for &(a, b) in &prefs {
            over[a].insert(b);
        }
        PrefFramework { caf, prefs, over }
    }

    /// A CAF with no preferences.
    pub fn without_prefs(caf: ClaimFramework) -> Self {
        Self::from_indices(caf, [])
    }

    pub fn caf(&self) -> &ClaimFramework {
        &self.caf
    }

    pub fn len(&self) -> usize {
        self.caf.len()
    }

    pub fn is_empty(&self) -> bool {
        self.caf.is_empty()
    }

    pub fn prefs(&self) -> &[(usize, usize)] {
        &self.prefs
    }

    #[inline]
    pub fn prefers(&self, a: usize, b: usize) -> bool {
        self.over[a].contains(b)
    }

    pub fn validate(&self, require_transitive: bool) -> ValidationReport {
        let af = self.caf.af();
        let nm = |i: usize| af.name(i).to_string();
        let mut violations = Vec::new();
        let wfp = self.caf.wf_problematic();
        if !wfp.is_empty() {
            violations.push(Violation::NotWellFormed {
                pairs: wfp.pairs.iter().map(|&(a, b)| (nm(a), nm(b))).collect(),
            });
        }
        for &(a, b) in &self.prefs {
            // Report each offending pair once, from its smaller end; a ≻ a is its own case.
            if self.prefers(b, a) && a <= b {
                violations.push(Violation::Asymmetry { a: nm(a), b: nm(b) });
            }
        }
        if require_transitive {
            for &(a, b) in &self.prefs {
                for c in self.over[b].iter() {
                    if !self.prefers(a, c) {
                        violations.push(Violation::Transitivity {
                            a: nm(a),
                            b: nm(b),
                            c: nm(c),
                        });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn is_transitive(&self) -> bool {
        self.prefs
            .iter()
            .all(|&(a, b)| self.over[b].is_subset(&self.over[a]))
    }

    fn ensure_valid(&self) -> Result<()> {
        let r = self.validate(false);
        if r.is_valid() {
            Ok(())
        } else {
            Err(Error::Invalid(r))
        }
    }

    /// `red_i(F)`, without the validity check. Used where validity is known.
    pub fn reduce_unchecked(&self, i: Reduction) -> ClaimFramework {
        let af = self.caf.af();
        let n = af.len();
        let mut def = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let ab = af.attacks_pair(a, b);
                let ba = af.attacks_pair(b, a);
                if !ab && !ba {
                    continue;
                }
                if attack_survives(i, ab, ba, self.prefers(a, b), self.prefers(b, a)) {
                    def.push((a, b));
                }
            }
        }
        self.caf.with_af(af.with_attacks(def))
    }

    /// `red_i(F)`. Fails if the framework violates its invariants.
    pub fn reduce(&self, i: Reduction) -> Result<ClaimFramework> {
        self.ensure_valid()?;
        Ok(self.reduce_unchecked(i))
    }

    /// `σ_p^i(F)` by argument-level enumeration on the reduced framework.
    pub fn pref_extensions(&self, i: Reduction, s: Semantics) -> Result<Vec<ClaimSet>> {
        Ok(self.reduce(i)?.claim_extensions(s))
    }

    /// The transitive closure of the preferences. Fails if the closure is not asymmetric.
    pub fn transitive_closure(&self) -> Result<PrefFramework> {
        let n = self.len();
        let mut over = self.over.clone();
        // Warshall over bit rows.
        for k in 0..n {
            for a in 0..n {
                if over[a].contains(k) {
                    let row = over[k].clone();
                    over[a].union_with(&row);
                }
            }
        }
        let af = self.caf.af();
        for (a, row) in over.iter().enumerate() {
            for b in row.iter() {
                if over[b].contains(a) {
                    return Err(Error::ClosureNotAsymmetric(
                        af.name(a).to_string(),
                        af.name(b).to_string(),
                    ));
                }
            }
        }
        let prefs = over
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.iter().map(move |b| (a, b)));
        Ok(Self::from_indices(self.caf.clone(), prefs))
    }
}
