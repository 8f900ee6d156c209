mod common;

use argclaim::propcheck::trial_rng;
use argclaim::search::{realizable_with, Backend};
use argclaim::{
    credulous, enumerate_claim_extensions, random_pcaf, skeptical, BitSet, PrefFramework, Reduction,
    SampleBounds, Semantics,
};
use common::Raw;
use proptest::prelude::*;

fn framework(seed: u64, max_args: usize, transitive: bool) -> PrefFramework {
    random_pcaf(&mut trial_rng(seed, 0), &SampleBounds::new(max_args, 3), transitive)
}

fn subset(a: &[BitSet], b: &[BitSet]) -> bool {
    a.iter().all(|e| b.contains(e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn semantics_nest(seed in any::<u64>(), i in 0usize..4) {
        let pf = framework(seed, 8, false);
        let red = pf.reduce(Reduction::ALL[i]).unwrap();
        let af = red.af();
        let ext = |s| af.extensions(s);
        use Semantics::*;
        prop_assert!(subset(&ext(Stb), &ext(Sem)));
        prop_assert!(subset(&ext(Sem), &ext(Prf)));
        prop_assert!(subset(&ext(Prf), &ext(Com)));
        prop_assert!(subset(&ext(Com), &ext(Adm)));
        prop_assert!(subset(&ext(Adm), &ext(Cf)));
        prop_assert!(subset(&ext(Stb), &ext(Stg)));
        prop_assert!(subset(&ext(Stg), &ext(Naive)));
        prop_assert!(!ext(Prf).is_empty());
    }

    #[test]
    fn reductions_match_edge_rewrites(seed in any::<u64>(), transitive in any::<bool>()) {
        let pf = framework(seed, 9, transitive);
        let raw = Raw::from_pf(&pf);
        for i in Reduction::ALL {
            let got = Raw::from_pf(&PrefFramework::without_prefs(pf.reduce(i).unwrap()));
            prop_assert_eq!(&got.att, &raw.reduce(i).att, "reduction {}", i);
        }
    }

    #[test]
    fn acceptance_agrees_with_enumeration(seed in any::<u64>(), i in 0usize..4, s in 0usize..8) {
        let pf = framework(seed, 7, false);
        let (i, s) = (Reduction::ALL[i], Semantics::ALL[s]);
        let fam = enumerate_claim_extensions(&pf, i, s).unwrap();
        for c in pf.caf().claims() {
            let some = fam.iter().any(|e| e.contains(c));
            let every = fam.iter().all(|e| e.contains(c));
            prop_assert_eq!(credulous(&pf, i, s, c).unwrap(), some);
            prop_assert_eq!(skeptical(&pf, i, s, c).unwrap(), every);
        }
    }

    #[test]
    fn search_backends_agree(seed in any::<u64>(), i in 0usize..4, s in 0usize..8) {
        let pf = framework(seed, 7, false);
        let red = pf.reduce(Reduction::ALL[i]).unwrap();
        let k = red.num_claims();
        let s = Semantics::ALL[s];
        for m in 0..1u64 << k {
            let mask = BitSet::from_mask(k, m);
            prop_assert_eq!(
                realizable_with(&red, &mask, s, Backend::Subsets),
                realizable_with(&red, &mask, s, Backend::Sat),
                "{} on claim mask {:b}", s, m
            );
        }
    }

    #[test]
    fn closure_of_transitive_preferences_is_identity(seed in any::<u64>()) {
        let pf = framework(seed, 8, true);
        prop_assert!(pf.is_transitive());
        let closed = pf.transitive_closure().unwrap();
        prop_assert_eq!(closed.prefs(), pf.prefs());
    }
}
