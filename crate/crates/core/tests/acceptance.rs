//! Acceptance checks. Runs without the libtest harness so that every criterion
//! prints exactly one PASS or FAIL line; the process fails if any criterion does.

mod common;

use argclaim::classify::preimage_search_bounded;
use argclaim::hardgen::{random_cnf, random_qbf};
use argclaim::propcheck::{pcaf, trial_rng};
use argclaim::search::Backend;
use argclaim::{
    catalog, check_imaximality, enumerate_claim_extensions, gen_cf_naive, gen_com_pref, gen_qbf,
    gen_stb_adm_com, in_image, qbf_oracle, random_pcaf, sat_oracle, ArgFramework,
    BitSet, ClaimFramework, ClaimSet, HardInstance, ImageClass, Preimage, PrefFramework, Reduction,
    SampleBounds, Semantics, Verifier,
};
use common::{as_masks, claim_set, exhaustive_cafs, exhaustive_pcafs, Raw};
use rand::Rng;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn names(af: &ArgFramework, sets: &[BitSet]) -> BTreeSet<BTreeSet<String>> {
    sets.iter()
        .map(|e| af.names_of(e).into_iter().map(str::to_string).collect())
        .collect()
}

fn family(sets: &[&[&str]]) -> BTreeSet<BTreeSet<String>> {
    sets.iter()
        .map(|s| s.iter().map(|x| x.to_string()).collect())
        .collect()
}

fn claims(fam: &[ClaimSet]) -> BTreeSet<BTreeSet<String>> {
    fam.iter().map(|c| c.iter().map(str::to_string).collect()).collect()
}

fn attack_set(cf: &ClaimFramework) -> BTreeSet<(String, String)> {
    let af = cf.af();
    af.attacks()
        .iter()
        .map(|&(a, b)| (af.name(a).to_string(), af.name(b).to_string()))
        .collect()
}

fn pairs(list: &[(&str, &str)]) -> BTreeSet<(String, String)> {
    list.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

const AB: [(&str, &str); 3] = [("a", "alpha"), ("a'", "alpha"), ("b", "beta")];
const ATT: [(&str, &str); 3] = [("a", "b"), ("a'", "b"), ("b", "a")];

fn af_goldens() -> Outcome {
    let af = ArgFramework::new(["a", "a'", "b"], ATT).map_err(|e| e.to_string())?;
    let both: &[&[&str]] = &[&["a", "a'"]];
    let expected = [
        (Semantics::Cf, family(&[&[], &["a"], &["a'"], &["b"], &["a", "a'"]])),
        (Semantics::Adm, family(&[&[], &["a"], &["a'"], &["a", "a'"]])),
        (Semantics::Naive, family(&[&["b"], &["a", "a'"]])),
        (Semantics::Com, family(both)),
        (Semantics::Stb, family(both)),
        (Semantics::Prf, family(both)),
        (Semantics::Sem, family(both)),
        (Semantics::Stg, family(both)),
    ];
    for (s, want) in expected {
        let got = names(&af, &af.extensions(s));
        ensure(got == want, || format!("{s}: got {got:?}, want {want:?}"))?;
    }
    Ok("8 families".into())
}

fn caf_goldens() -> Outcome {
    let af = ArgFramework::new(["a", "a'", "b"], ATT).map_err(|e| e.to_string())?;
    let cf = ClaimFramework::new(af, AB).map_err(|e| e.to_string())?;
    let expected = [
        (Semantics::Cf, family(&[&[], &["alpha"], &["beta"]])),
        (Semantics::Adm, family(&[&[], &["alpha"]])),
        (Semantics::Naive, family(&[&["alpha"], &["beta"]])),
        (Semantics::Stb, family(&[&["alpha"]])),
    ];
    for (s, want) in expected {
        let got = claims(&cf.claim_extensions(s));
        ensure(got == want, || format!("{s}: got {got:?}, want {want:?}"))?;
    }
    Ok("4 families".into())
}

fn pcaf_goldens() -> Outcome {
    let pf = pcaf(&AB, &ATT, &[("b", "a'")]);
    let red1 = attack_set(&pf.reduce(Reduction::R1).map_err(|e| e.to_string())?);
    ensure(red1 == pairs(&[("a", "b"), ("b", "a")]), || format!("R1 attacks {red1:?}"))?;
    let red2 = attack_set(&pf.reduce(Reduction::R2).map_err(|e| e.to_string())?);
    ensure(red2 == pairs(&[("a", "b"), ("b", "a"), ("b", "a'")]), || format!("R2 attacks {red2:?}"))?;
    let expected = [
        (Reduction::R1, Semantics::Adm, family(&[&[], &["alpha"], &["beta"], &["alpha", "beta"]])),
        (Reduction::R1, Semantics::Stb, family(&[&["alpha"], &["alpha", "beta"]])),
        (Reduction::R2, Semantics::Adm, family(&[&[], &["alpha"], &["beta"]])),
        (Reduction::R2, Semantics::Stb, family(&[&["alpha"], &["beta"]])),
    ];
    for (i, s, want) in expected {
        let direct = claims(&pf.pref_extensions(i, s).map_err(|e| e.to_string())?);
        let fpt = claims(&enumerate_claim_extensions(&pf, i, s).map_err(|e| e.to_string())?);
        ensure(direct == want && fpt == want, || {
            format!("{s} under {i}: got {direct:?} and {fpt:?}, want {want:?}")
        })?;
    }
    Ok("2 reductions, 4 families".into())
}

const IMAX_SEMANTICS: [Semantics; 5] =
    [Semantics::Naive, Semantics::Stb, Semantics::Prf, Semantics::Sem, Semantics::Stg];
const R3_MAXIMAL: [Semantics; 3] = [Semantics::Stb, Semantics::Prf, Semantics::Sem];

fn imaximality_table() -> Outcome {
    let cat = catalog();
    for e in &cat {
        e.self_check()?;
    }
    let mut witnessed = 0;
    for i in Reduction::ALL {
        for s in IMAX_SEMANTICS {
            if i == Reduction::R3 && R3_MAXIMAL.contains(&s) {
                continue;
            }
            let witness = cat.iter().filter(|e| e.reduction == i).find(|e| {
                let fam = enumerate_claim_extensions(&e.framework, i, s).expect("catalog is valid");
                check_imaximality(&fam).is_some()
            });
            ensure(witness.is_some(), || format!("no catalog witness for {s} under {i}"))?;
            witnessed += 1;
        }
    }

    let mut checked = 0u64;
    let mut transitive = 0u64;
    let mut failure = None;
    for n in 1..=4 {
        for k in 1..=n.min(2) {
            exhaustive_pcafs(n, k, 2, |raw| {
                if failure.is_some() {
                    return;
                }
                checked += 1;
                transitive += raw.transitive() as u64;
                let pf = raw.to_pf();
                for s in R3_MAXIMAL {
                    let fam = enumerate_claim_extensions(&pf, Reduction::R3, s).expect("valid");
                    if let Some(v) = check_imaximality(&fam) {
                        failure = Some(format!("{s}: {v:?} on {raw:?}"));
                    }
                }
            });
        }
    }
    if let Some(f) = failure {
        return Err(f);
    }

    let bounds = SampleBounds::new(7, 4);
    for (seed, transitive_only) in [(11u64, false), (12u64, true)] {
        for t in 0..1000 {
            let pf = random_pcaf(&mut trial_rng(seed, t), &bounds, transitive_only);
            for s in R3_MAXIMAL {
                let fam = enumerate_claim_extensions(&pf, Reduction::R3, s).map_err(|e| e.to_string())?;
                ensure(check_imaximality(&fam).is_none(), || {
                    format!("{s} random trial {t} (transitive {transitive_only}): {pf:?}")
                })?;
            }
        }
    }
    Ok(format!(
        "{witnessed} failing cells witnessed; {checked} small PCAFs ({transitive} transitive) and 2x1000 random trials clean"
    ))
}

fn conflict_preservation() -> Outcome {
    let bounds = SampleBounds::new(8, 4);
    let mut subsets = 0u64;
    for t in 0..500 {
        let mut rng = trial_rng(21, t);
        let pf = random_pcaf(&mut rng, &bounds, false);
        let raw = Raw::from_pf(&pf);
        let n = pf.len();
        let masks: Vec<u64> = if n <= 6 {
            (0..1u64 << n).collect()
        } else {
            (0..256).map(|_| rng.gen_range(0..1u64 << n)).collect()
        };
        for i in [Reduction::R2, Reduction::R3, Reduction::R4] {
            let red = pf.reduce(i).map_err(|e| e.to_string())?;
            let oracle = raw.reduce(i);
            for &m in &masks {
                let e = BitSet::from_mask(n, m);
                let base = pf.caf().af().is_conflict_free(&e);
                ensure(red.af().is_conflict_free(&e) == base, || format!("trial {t}, {i}, set {m:b}"))?;
                ensure(oracle.conflict_free(m as u32) == base, || format!("oracle: trial {t}, {i}, set {m:b}"))?;
                subsets += 1;
            }
        }
    }
    Ok(format!("{subsets} subset checks over 500 PCAFs"))
}

/// Compares `verify` with the oracle on every claim-set of `raw`, for all reductions and semantics.
fn verify_matches(raw: &Raw, backends: &[Backend]) -> Result<u64, String> {
    let pf = raw.to_pf();
    let k = raw.num_claims();
    let mut checks = 0;
    for i in Reduction::ALL {
        let reduced = raw.reduce(i);
        for &backend in backends {
            let v = Verifier::new(&pf, i).map_err(|e| e.to_string())?.with_backend(backend);
            for s in Semantics::ALL {
                if backend != Backend::Auto && !v.uses_search(s) {
                    continue;
                }
                let fam = reduced.claim_family(s);
                for m in 0..1u32 << k {
                    checks += 1;
                    let got = v.verify(&claim_set(m), s);
                    if got != fam.contains(&m) {
                        return Err(format!(
                            "{s} under {i} ({backend:?}) on claim-set {m:b}: verify says {got}; {raw:?}"
                        ));
                    }
                }
            }
        }
    }
    Ok(checks)
}

fn verification_oracle() -> Outcome {
    let mut checks = 0u64;
    let mut frameworks = 0u64;
    let mut failure = None;
    for n in 1..=4 {
        for k in 1..=n.min(2) {
            exhaustive_pcafs(n, k, usize::MAX, |raw| {
                if failure.is_some() {
                    return;
                }
                frameworks += 1;
                match verify_matches(raw, &[Backend::Auto]) {
                    Ok(c) => checks += c,
                    Err(e) => failure = Some(e),
                }
            });
        }
    }
    if let Some(f) = failure {
        return Err(f);
    }
    let bounds = SampleBounds::new(7, 4);
    for t in 0..1000 {
        let pf = random_pcaf(&mut trial_rng(31, t), &bounds, t % 2 == 1);
        // The SAT backend is exercised on a share of the random instances.
        let backends: &[Backend] = if t % 5 == 0 { &[Backend::Auto, Backend::Sat] } else { &[Backend::Auto] };
        checks += verify_matches(&Raw::from_pf(&pf), backends)?;
    }
    Ok(format!("{frameworks} small PCAFs and 1000 random ones, {checks} verdicts"))
}

/// Checks a preimage independently: valid, transitive if asked, and reducing to `target`.
fn check_preimage(p: &PrefFramework, target: &Raw, i: Reduction, transitive: bool) -> Result<(), String> {
    let raw = Raw::from_pf(p);
    ensure(raw.claim == target.claim, || "preimage relabels arguments".into())?;
    ensure(raw.well_formed() && raw.asymmetric(), || format!("invalid preimage {raw:?}"))?;
    ensure(!transitive || raw.transitive(), || format!("intransitive preimage {raw:?}"))?;
    ensure(raw.reduce(i).att == target.att, || format!("preimage {raw:?} does not reduce to {target:?} under {i}"))
}

fn classes_of(cf: &ClaimFramework, max_args: usize) -> Result<Vec<(ImageClass, bool)>, String> {
    let target = Raw::from_pf(&PrefFramework::without_prefs(cf.clone()));
    let mut out = Vec::new();
    for k in ImageClass::ALL {
        let (i, tr) = k.reduction();
        let searched = match preimage_search_bounded(cf, i, tr, None, max_args).map_err(|e| e.to_string())? {
            Preimage::Found(p) => {
                check_preimage(&p, &target, i, tr)?;
                true
            }
            Preimage::NoneExists => false,
            Preimage::Inconclusive => return Err(format!("{k}: search inconclusive")),
        };
        let claimed = in_image(cf, k);
        ensure(claimed == searched, || format!("{k}: in_image {claimed}, search {searched}, on {target:?}"))?;
        out.push((k, claimed));
    }
    Ok(out)
}

fn image_characterization() -> Outcome {
    let mut cafs = 0u64;
    let mut failure = None;
    for n in 1..=4 {
        for k in 1..=n.min(2) {
            exhaustive_cafs(n, k, |raw| {
                if failure.is_some() {
                    return;
                }
                cafs += 1;
                if let Err(e) = classes_of(&raw.to_caf(), 4) {
                    failure = Some(e);
                }
            });
        }
    }
    if let Some(f) = failure {
        return Err(f);
    }

    // Separators obtained by reducing one small PCAF under reductions 1, 2 and 4.
    let sep = pcaf(&[("a", "alpha"), ("b", "alpha")], &[("a", "b"), ("b", "b")], &[("b", "a")]);
    let cases = [
        (Reduction::R1, ImageClass::Im1, pairs(&[("b", "b")])),
        (Reduction::R2, ImageClass::Im2, pairs(&[("b", "a"), ("b", "b")])),
        (Reduction::R4, ImageClass::Im4, pairs(&[("a", "b"), ("b", "a"), ("b", "b")])),
    ];
    for (i, only, want) in cases {
        let cf = sep.reduce(i).map_err(|e| e.to_string())?;
        ensure(attack_set(&cf) == want, || format!("separator under {i}: {:?}", attack_set(&cf)))?;
        for (k, member) in classes_of(&cf, 4)? {
            if k == ImageClass::Im1Tr {
                continue;
            }
            ensure(member == (k == only), || format!("separator under {i}: {k} is {member}"))?;
        }
    }

    // A CAF only in the transitive image of reduction 3.
    let labels = [
        ("a", "alpha"),
        ("a'", "alpha"),
        ("b", "beta"),
        ("b'", "beta"),
        ("c", "gamma"),
        ("c'", "gamma"),
    ];
    let att = [
        ("a", "c"),
        ("a'", "b"),
        ("a'", "c"),
        ("b", "a"),
        ("b'", "a"),
        ("b'", "c"),
        ("c", "b"),
        ("c'", "b"),
    ];
    let af = ArgFramework::new(labels.iter().map(|l| l.0), att).map_err(|e| e.to_string())?;
    let cf = ClaimFramework::new(af, labels).map_err(|e| e.to_string())?;
    let wfp: BTreeSet<(String, String)> = cf
        .wf_problematic()
        .pairs
        .iter()
        .map(|&(a, b)| (cf.af().name(a).to_string(), cf.af().name(b).to_string()))
        .collect();
    ensure(wfp == pairs(&[("a", "b"), ("b", "c")]), || format!("wfp {wfp:?}"))?;
    ensure(!in_image(&cf, ImageClass::Im1Tr), || "in_image IM1_TR holds".into())?;
    let target = Raw::from_pf(&PrefFramework::without_prefs(cf.clone()));
    for i in Reduction::ALL {
        let r = preimage_search_bounded(&cf, i, true, None, 6).map_err(|e| e.to_string())?;
        match (i, r) {
            (Reduction::R3, Preimage::Found(p)) => check_preimage(&p, &target, i, true)?,
            (Reduction::R3, r) => return Err(format!("no transitive preimage under 3: {r:?}")),
            (_, Preimage::NoneExists) => {}
            (_, r) => return Err(format!("transitive preimage under {i}: {r:?}")),
        }
    }
    Ok(format!("{cafs} small CAFs, 4 separators"))
}

fn hard_instance(h: &HardInstance, oracle: bool, what: &str) -> Result<(), String> {
    let want = h.polarity.expected_verdict(oracle);
    for (s, got) in h.verdicts().map_err(|e| e.to_string())? {
        ensure(got == want, || format!("{what} {s}: verify {got}, oracle {oracle}"))?;
    }
    if let Some(img) = &h.image {
        ensure(in_image(img, ImageClass::Im1Tr), || format!("{what}: image outside IM1_TR"))?;
        ensure(h.framework.is_transitive(), || format!("{what}: lifted preferences intransitive"))?;
        let red = h.framework.reduce(Reduction::R1).map_err(|e| e.to_string())?;
        ensure(red == *img, || format!("{what}: lifted framework does not reduce to the image"))?;
    }
    Ok(())
}

fn hardness_constructions() -> Outcome {
    let mut instances = 0;
    let mut accepted = 0;
    for t in 0..200 {
        let mut rng = trial_rng(41, t);
        let phi = random_cnf(&mut rng, 6, 8);
        let sat = sat_oracle(&phi).map_err(|e| e.to_string())?;
        accepted += sat as u32;
        let built = [
            ("cf/naive", gen_cf_naive(&phi)),
            ("stb/adm/com", gen_stb_adm_com(&phi)),
            ("com-R2", gen_com_pref(&phi, Reduction::R2)),
            ("com-R4", gen_com_pref(&phi, Reduction::R4)),
        ];
        for (what, h) in built {
            hard_instance(&h.map_err(|e| e.to_string())?, sat, &format!("{what} trial {t}"))?;
            instances += 1;
        }
    }
    let mut valid = 0;
    for t in 0..100 {
        let mut rng = trial_rng(42, t);
        let q = random_qbf(&mut rng, 3, 3, 6, true);
        let oracle = qbf_oracle(&q).map_err(|e| e.to_string())?;
        valid += oracle as u32;
        for s in [Semantics::Prf, Semantics::Sem, Semantics::Stg] {
            let h = gen_qbf(&q, s).map_err(|e| e.to_string())?;
            hard_instance(&h, oracle, &format!("qbf {s} trial {t}"))?;
            instances += 1;
        }
    }
    Ok(format!("{instances} instances ({accepted}/200 CNFs satisfiable, {valid}/100 QBFs valid)"))
}

fn enumeration_equivalence() -> Outcome {
    let bounds = SampleBounds::new(10, 4);
    let mut families = 0;
    for t in 0..500 {
        let pf = random_pcaf(&mut trial_rng(51, t), &bounds, t % 2 == 1);
        let raw = Raw::from_pf(&pf);
        let pf = raw.to_pf();
        for i in Reduction::ALL {
            for s in Semantics::ALL {
                let got = as_masks(&enumerate_claim_extensions(&pf, i, s).map_err(|e| e.to_string())?);
                let want = raw.pref_family(i, s);
                ensure(got == want, || format!("{s} under {i}, trial {t}: {got:?} vs {want:?}"))?;
                families += 1;
            }
        }
    }
    Ok(format!("{families} families over 500 PCAFs"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("abstract semantics goldens", Duration::from_secs(1), af_goldens),
        ("claim-level goldens", Duration::from_secs(1), caf_goldens),
        ("preference reduction goldens", Duration::from_secs(1), pcaf_goldens),
        ("I-maximality table", Duration::from_secs(300), imaximality_table),
        ("conflict preservation", Duration::from_secs(120), conflict_preservation),
        ("verification against brute force", Duration::from_secs(600), verification_oracle),
        ("image characterizations", Duration::from_secs(600), image_characterization),
        ("hardness constructions", Duration::from_secs(900), hardness_constructions),
        ("enumeration against brute force", Duration::from_secs(300), enumeration_equivalence),
    ];
    let mut failed = 0;
    for (n, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let result = match result {
            Ok(detail) if took > limit => Err(format!("{detail}, but took longer than {limit:?}")),
            r => r,
        };
        match result {
            Ok(detail) => println!("PASS {} {name} ({took:.2?}): {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name} ({took:.2?}): {why}", n + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
