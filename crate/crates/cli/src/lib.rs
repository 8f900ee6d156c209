//! Task dispatch and text output for the `argclaim` command.

pub mod apx;

use apx::{parse_caf, parse_pcaf, render_caf, render_pcaf, ParseOptions};
use argclaim::enumerate::{credulous_with, enumerate_with, skeptical_with, verify_with};
use argclaim::hardgen::{self, CnfFormula, HardInstance, Qbf2Formula};
use argclaim::propcheck::trial_rng;
use argclaim::{
    check_imaximality, falsify_imaximality, in_image, ClaimSet, EnumOptions, Error, ImageClass,
    Limits, PrefFramework, Reduction, SampleBounds, Semantics,
};
use std::fmt::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    Enum,
    Ver,
    Cred,
    Skep,
    Classify,
    Reduce,
    Imax,
    Gen,
}

/// Which hardness construction `gen` builds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    CfNaive,
    StbAdmCom,
    Qbf,
    ComPref,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TaskSpec {
    pub task: Task,
    pub semantics: Option<Semantics>,
    pub reduction: Option<Reduction>,
    pub claims: Option<ClaimSet>,
    pub claim: Option<String>,
    pub require_transitive: bool,
    pub implicit_claims: bool,
    pub seed: u64,
    pub trials: u64,
    pub max_args: Option<usize>,
    pub max_claims: Option<usize>,
    pub jobs: usize,
    pub generator: Option<Generator>,
    /// Bounds for random formulas when `gen` has no input.
    pub max_vars: usize,
    pub max_clauses: usize,
    /// Exit with status 1 when a decision task answers NO.
    pub exit_status: bool,
}

impl TaskSpec {
    pub fn new(task: Task) -> Self {
        TaskSpec {
            task,
            semantics: None,
            reduction: None,
            claims: None,
            claim: None,
            require_transitive: false,
            implicit_claims: false,
            seed: 0,
            trials: 1000,
            max_args: None,
            max_claims: None,
            jobs: 1,
            generator: None,
            max_vars: 4,
            max_clauses: 5,
            exit_status: false,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

fn need<T: Clone>(v: &Option<T>, flag: &str, task: &str) -> Result<T, CliError> {
    v.clone()
        .ok_or_else(|| CliError::Usage(format!("{task} needs --{flag}")))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "YES"
    } else {
        "NO"
    }
}

impl TaskSpec {
    fn options(&self) -> EnumOptions {
        let d = Limits::default();
        EnumOptions {
            limits: Limits {
                max_args: self.max_args.unwrap_or(d.max_args),
                max_claims: self.max_claims.unwrap_or(d.max_claims),
            },
            jobs: self.jobs,
            ..EnumOptions::default()
        }
    }

    fn framework(&self, input: Option<&str>) -> Result<PrefFramework, CliError> {
        let text = input.ok_or_else(|| CliError::Usage("an input file is required".into()))?;
        let pf = parse_pcaf(text, self.parse_options())?;
        if self.require_transitive {
            let r = pf.validate(true);
            if !r.is_valid() {
                return Err(Error::Invalid(r).into());
            }
        }
        Ok(pf)
    }

    fn parse_options(&self) -> ParseOptions {
        ParseOptions {
            implicit_claims: self.implicit_claims,
        }
    }

    fn decided(&self, b: bool) -> Outcome {
        Outcome {
            stdout: format!("{}\n", yes_no(b)),
            code: if self.exit_status && !b { 1 } else { 0 },
        }
    }
}

fn lines(sets: &[ClaimSet]) -> String {
    sets.iter().map(|c| format!("{c}\n")).collect()
}

/// Runs one task on the file contents in `input`.
pub fn run(spec: &TaskSpec, input: Option<&str>) -> Result<Outcome, CliError> {
    let ok = |stdout: String| Outcome { stdout, code: 0 };
    let opts = spec.options();
    match spec.task {
        Task::Enum => {
            let pf = spec.framework(input)?;
            let (i, s) = (need(&spec.reduction, "reduction", "enum")?, need(&spec.semantics, "semantics", "enum")?);
            let r = enumerate_with(&pf, i, s, &opts)?;
            Ok(ok(lines(r.claim_sets().expect("enumeration payload"))))
        }
        Task::Ver => {
            let pf = spec.framework(input)?;
            let (i, s) = (need(&spec.reduction, "reduction", "ver")?, need(&spec.semantics, "semantics", "ver")?);
            let c = need(&spec.claims, "claims", "ver")?;
            let r = verify_with(&pf, i, s, &c, &opts)?;
            Ok(spec.decided(r.decision().expect("decision payload")))
        }
        Task::Cred | Task::Skep => {
            let pf = spec.framework(input)?;
            let name = if spec.task == Task::Cred { "cred" } else { "skep" };
            let (i, s) = (need(&spec.reduction, "reduction", name)?, need(&spec.semantics, "semantics", name)?);
            let c = need(&spec.claim, "claim", name)?;
            let r = if spec.task == Task::Cred {
                credulous_with(&pf, i, s, &c, &opts)?
            } else {
                skeptical_with(&pf, i, s, &c, &opts)?
            };
            Ok(spec.decided(r.decision().expect("decision payload")))
        }
        Task::Classify => {
            let text = input.ok_or_else(|| CliError::Usage("classify needs an input file".into()))?;
            let cf = parse_caf(text, spec.parse_options())?;
            let mut out = String::new();
            for k in ImageClass::ALL {
                writeln!(out, "{k} {}", yes_no(in_image(&cf, k))).unwrap();
            }
            Ok(ok(out))
        }
        Task::Reduce => {
            let pf = spec.framework(input)?;
            let i = need(&spec.reduction, "reduction", "reduce")?;
            Ok(ok(render_caf(&pf.reduce(i)?)))
        }
        Task::Imax => {
            let (i, s) = (need(&spec.reduction, "reduction", "imax")?, need(&spec.semantics, "semantics", "imax")?);
            match input {
                Some(_) => {
                    let pf = spec.framework(input)?;
                    let r = enumerate_with(&pf, i, s, &opts)?;
                    let fam = r.claim_sets().expect("enumeration payload");
                    let mut o = spec.decided(true);
                    if let Some((a, b)) = check_imaximality(fam) {
                        o = spec.decided(false);
                        writeln!(o.stdout, "{a} < {b}").unwrap();
                    }
                    Ok(o)
                }
                None => {
                    let bounds = SampleBounds::new(spec.max_args.unwrap_or(6), spec.max_claims.unwrap_or(3));
                    let found = falsify_imaximality(i, s, spec.trials, &bounds, spec.require_transitive, spec.seed);
                    let mut o = spec.decided(found.is_none());
                    if let Some(pf) = found {
                        o.stdout.push_str(&render_pcaf(&pf));
                    }
                    Ok(o)
                }
            }
        }
        Task::Gen => generate(spec, input).map(ok),
    }
}

fn generate(spec: &TaskSpec, input: Option<&str>) -> Result<String, CliError> {
    let g = need(&spec.generator, "generator", "gen")?;
    let (max_vars, max_clauses) = (spec.max_vars.max(1), spec.max_clauses.max(1));
    let mut rng = trial_rng(spec.seed, 0);
    let cnf = |rng: &mut _| -> Result<CnfFormula, CliError> {
        Ok(match input {
            Some(t) => CnfFormula::parse_dimacs(t)?,
            None => hardgen::random_cnf(rng, max_vars, max_clauses),
        })
    };
    let h: HardInstance = match g {
        Generator::CfNaive => hardgen::gen_cf_naive(&cnf(&mut rng)?)?,
        Generator::StbAdmCom => hardgen::gen_stb_adm_com(&cnf(&mut rng)?)?,
        Generator::ComPref => {
            let i = need(&spec.reduction, "reduction", "gen com-pref")?;
            hardgen::gen_com_pref(&cnf(&mut rng)?, i)?
        }
        Generator::Qbf => {
            let s = need(&spec.semantics, "semantics", "gen qbf")?;
            let q = match input {
                Some(t) => Qbf2Formula::parse_qdimacs(t)?,
                None => hardgen::random_qbf(&mut rng, max_vars.div_ceil(2), max_vars / 2 + 1, max_clauses, true),
            };
            hardgen::gen_qbf(&q, s)?
        }
    };
    let mut out = String::new();
    writeln!(out, "# target {}", h.target).unwrap();
    writeln!(out, "# reduction {}", h.reduction).unwrap();
    let sems: Vec<&str> = h.semantics.iter().map(|s| s.as_str()).collect();
    writeln!(out, "# semantics {}", sems.join(",")).unwrap();
    let pol = match h.polarity {
        hardgen::Polarity::SatisfiableIffAccepted => "satisfiable iff accepted",
        hardgen::Polarity::ValidIffRejected => "valid iff rejected",
    };
    writeln!(out, "# polarity {pol}").unwrap();
    if !h.padded.is_empty() {
        writeln!(out, "# padded {}", h.padded.join(",")).unwrap();
    }
    out.push_str(&render_pcaf(&h.framework));
    Ok(out)
}
