//! Maximal realizations of a claim-set and claim-level verification.
//!
//! Under reductions 2-4 conflicts survive reduction, so every conflict-free
//! (admissible) set with claims `C` lies inside one maximal candidate that can
//! be computed directly: `E₁` drops whatever `E₀(C)` attacks in the underlying
//! CAF, and `E★` then repeatedly drops what is left undefended in the reduced
//! framework. Verification checks that candidate instead of searching.

use crate::af::Semantics;
use crate::bitset::BitSet;
use crate::caf::{ClaimFramework, ClaimSet};
use crate::error::{Error, Result};
use crate::pcaf::{PrefFramework, Reduction};
use crate::search::{self, Backend};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationTrace {
    pub e0: BitSet,
    pub e1: BitSet,
    /// `E₂, E₃, …`, ending with the first repeated set.
    pub chain: Vec<BitSet>,
    pub estar: BitSet,
}

/// The realization trace of `c` under reduction `i`. Claims outside the
/// alphabet select no arguments.
pub fn realization(pf: &PrefFramework, c: &ClaimSet, i: Reduction) -> Result<RealizationTrace> {
    if i == Reduction::R1 {
        return Err(Error::UnsupportedReduction(i));
    }
    let red = pf.reduce(i)?;
    let caf = pf.caf();
    let mask = BitSet::from_indices(
        caf.num_claims(),
        c.iter().filter_map(|x| caf.claim_index(x)),
    );
    Ok(trace(caf, &red, &mask))
}

fn trace(caf: &ClaimFramework, red: &ClaimFramework, mask: &BitSet) -> RealizationTrace {
    let e0 = caf.args_with_claims(mask);
    let e1 = e0.difference(&caf.af().attacked_set(&e0));
    let g = red.af();
    let mut chain = Vec::new();
    let mut cur = e1.clone();
    loop {
        let next = cur.intersection(&g.defended_by(&g.attacked_set(&cur)));
        let done = next == cur;
        chain.push(next.clone());
        cur = next;
        if done {
            break;
        }
    }
    RealizationTrace {
        e0,
        e1,
        estar: cur,
        chain,
    }
}

/// Verification against one reduced framework, reused across claim-sets.
#[derive(Debug, Clone)]
pub struct Verifier {
    caf: ClaimFramework,
    red: ClaimFramework,
    i: Reduction,
    backend: Backend,
}

impl Verifier {
    pub fn new(pf: &PrefFramework, i: Reduction) -> Result<Self> {
        Ok(Verifier {
            caf: pf.caf().clone(),
            red: pf.reduce(i)?,
            i,
            backend: Backend::Auto,
        })
    }

    /// Selects how the complete search runs where it is needed.
    pub fn with_backend(mut self, backend: Backend) -> Self {
        self.backend = backend;
        self
    }

    pub fn reduced(&self) -> &ClaimFramework {
        &self.red
    }

    /// Whether this combination goes through the complete search rather than
    /// the realization candidates.
    pub fn uses_search(&self, s: Semantics) -> bool {
        self.i == Reduction::R1
            || (s == Semantics::Com && matches!(self.i, Reduction::R2 | Reduction::R4))
    }

    pub fn trace(&self, mask: &BitSet) -> RealizationTrace {
        trace(&self.caf, &self.red, mask)
    }

    /// Membership of the claim mask in `σ_p^i`.
    pub fn verify_mask(&self, mask: &BitSet, s: Semantics) -> bool {
        if self.uses_search(s) {
            return search::realizable_with(&self.red, mask, s, self.backend);
        }
        let t = self.trace(mask);
        let g = self.red.af();
        let claims_of = |e: &BitSet| self.caf.project(e) == *mask;
        match s {
            Semantics::Cf => claims_of(&t.e1),
            Semantics::Naive => claims_of(&t.e1) && g.is_naive(&t.e1),
            Semantics::Stg => claims_of(&t.e1) && g.is_stage(&t.e1),
            Semantics::Adm => claims_of(&t.estar),
            Semantics::Stb => claims_of(&t.estar) && g.is_stable(&t.estar),
            Semantics::Com => claims_of(&t.estar) && g.is_complete(&t.estar),
            Semantics::Prf => claims_of(&t.estar) && g.is_preferred(&t.estar),
            Semantics::Sem => claims_of(&t.estar) && g.is_semi_stable(&t.estar),
        }
    }

    pub fn verify(&self, c: &ClaimSet, s: Semantics) -> bool {
        match self.caf.mask_of(c) {
            Some(m) => self.verify_mask(&m, s),
            None => false,
        }
    }
}

/// Is `c ∈ σ_p^i(pf)`?
pub fn verify(pf: &PrefFramework, i: Reduction, c: &ClaimSet, s: Semantics) -> Result<bool> {
    Ok(Verifier::new(pf, i)?.verify(c, s))
}
