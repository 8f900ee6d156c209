use argclaim::{ClaimSet, Reduction, Semantics};
use argclaim_cli::{run, CliError, Generator, Task, TaskSpec};
use clap::{Parser, ValueEnum};
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TaskArg {
    Enum,
    Ver,
    Cred,
    Skep,
    Classify,
    Reduce,
    Imax,
    Gen,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GeneratorArg {
    CfNaive,
    StbAdmCom,
    Qbf,
    ComPref,
}

/// Reasoning with preference-based claim-augmented argumentation frameworks.
///
/// Input files hold one fact per line: arg(a). claim(a,c). att(a,b).
/// pref(a,b). where pref(a,b) makes a stronger than b. Use `-` for stdin.
#[derive(Debug, Parser)]
#[command(name = "argclaim", version)]
struct Cli {
    /// Framework file, or DIMACS/QDIMACS input for `gen`.
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    task: TaskArg,
    #[arg(long, value_parser = |s: &str| s.parse::<Semantics>())]
    semantics: Option<Semantics>,
    #[arg(long, value_parser = |s: &str| s.parse::<Reduction>())]
    reduction: Option<Reduction>,
    /// Claim-set for `ver`, e.g. alpha,beta.
    #[arg(long, allow_hyphen_values = true)]
    claims: Option<String>,
    /// Claim for `cred` and `skep`.
    #[arg(long)]
    claim: Option<String>,
    /// Reject inputs whose preferences are not transitive; with `imax` and
    /// no input, sample transitive preferences only.
    #[arg(long)]
    require_transitive: bool,
    /// Arguments without a claim fact claim their own name.
    #[arg(long)]
    implicit_claims: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random frameworks tried by `imax` without input.
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long)]
    max_args: Option<usize>,
    #[arg(long)]
    max_claims: Option<usize>,
    /// Worker threads for enumeration; 0 uses every core.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_enum)]
    generator: Option<GeneratorArg>,
    /// Variables and clauses of random formulas for `gen` without input.
    #[arg(long, default_value_t = 4)]
    max_vars: usize,
    #[arg(long, default_value_t = 5)]
    max_clauses: usize,
    /// Exit with status 1 when a decision task answers NO.
    #[arg(long)]
    exit_status: bool,
}

impl Cli {
    fn spec(&self) -> TaskSpec {
        let task = match self.task {
            TaskArg::Enum => Task::Enum,
            TaskArg::Ver => Task::Ver,
            TaskArg::Cred => Task::Cred,
            TaskArg::Skep => Task::Skep,
            TaskArg::Classify => Task::Classify,
            TaskArg::Reduce => Task::Reduce,
            TaskArg::Imax => Task::Imax,
            TaskArg::Gen => Task::Gen,
        };
        TaskSpec {
            semantics: self.semantics,
            reduction: self.reduction,
            claims: self.claims.as_deref().map(ClaimSet::parse),
            claim: self.claim.clone(),
            require_transitive: self.require_transitive,
            implicit_claims: self.implicit_claims,
            seed: self.seed,
            trials: self.trials,
            max_args: self.max_args,
            max_claims: self.max_claims,
            jobs: self.jobs,
            generator: self.generator.map(|g| match g {
                GeneratorArg::CfNaive => Generator::CfNaive,
                GeneratorArg::StbAdmCom => Generator::StbAdmCom,
                GeneratorArg::Qbf => Generator::Qbf,
                GeneratorArg::ComPref => Generator::ComPref,
            }),
            max_vars: self.max_vars,
            max_clauses: self.max_clauses,
            exit_status: self.exit_status,
            ..TaskSpec::new(task)
        }
    }
}

fn read_input(path: &PathBuf) -> Result<String, String> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map(|_| text)
        .map_err(|e| format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let input = match cli.input.as_ref().map(read_input).transpose() {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match run(&cli.spec(), input.as_deref()) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            match &e {
                CliError::Input(err) => eprintln!("error: {err}"),
                CliError::Usage(msg) => eprintln!("usage error: {msg}"),
            }
            ExitCode::from(2)
        }
    }
}
