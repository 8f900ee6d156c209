//! Instance generators for the hardness constructions of verification, with
//! brute-force SAT and QBF oracles to check them against.
//!
//! Each generator turns a formula into a framework and a target claim-set so
//! that the formula's status decides whether the target is a claim-extension.
//! Argument names flatten the usual subscripts: `a_1`, `abar_2`, `a_T`,
//! `a1_1_2` for a cycle helper and `hat_a1_1_2` for its twin.

use crate::af::{ArgFramework, Semantics};
use crate::caf::{ClaimFramework, ClaimSet};
use crate::classify::transitive_r1_preimage;
use crate::error::{Error, Result};
use crate::pcaf::{PrefFramework, Reduction};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::{BTreeSet, HashSet};

/// The oracles enumerate all assignments and refuse more variables than this.
pub const ORACLE_MAX_VARS: usize = 20;

const MAX_CLAUSE_LEN: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Self {
        Lit { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Lit { var, positive: false }
    }

    fn holds(self, assignment: u32) -> bool {
        (assignment >> self.var & 1 == 1) == self.positive
    }
}

/// A CNF with named variables and at most three literals per clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    variables: Vec<String>,
    clauses: Vec<Vec<Lit>>,
}

fn check_var_name(name: &str) -> Result<()> {
    if name.is_empty() {
        return Err(Error::EmptyName);
    }
    if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(Error::Precondition(format!(
            "variable name `{name}` must be ASCII letters, digits or `_`"
        )));
    }
    Ok(())
}

impl CnfFormula {
    /// Literals inside a clause are sorted and deduplicated; clause order is kept.
    pub fn new(variables: Vec<String>, clauses: Vec<Vec<Lit>>) -> Result<Self> {
        let mut seen = HashSet::new();
        for v in &variables {
            check_var_name(v)?;
            if !seen.insert(v.as_str()) {
                return Err(Error::Precondition(format!("variable `{v}` declared twice")));
            }
        }
        let mut out = Vec::with_capacity(clauses.len());
        for (j, c) in clauses.into_iter().enumerate() {
            let c: Vec<Lit> = c.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
            if c.is_empty() {
                return Err(Error::Precondition(format!("clause {} is empty", j + 1)));
            }
            if c.len() > MAX_CLAUSE_LEN {
                return Err(Error::Precondition(format!(
                    "clause {} has {} literals, at most {MAX_CLAUSE_LEN} allowed",
                    j + 1,
                    c.len()
                )));
            }
            if let Some(l) = c.iter().find(|l| l.var >= variables.len()) {
                return Err(Error::Precondition(format!(
                    "clause {} uses undeclared variable {}",
                    j + 1,
                    l.var
                )));
            }
            out.push(c);
        }
        Ok(CnfFormula {
            variables,
            clauses: out,
        })
    }

    /// Clauses as signed 1-based variable numbers, DIMACS style.
    pub fn from_signed<S: AsRef<str>>(variables: &[S], clauses: &[&[i32]]) -> Result<Self> {
        let vars = variables.iter().map(|v| v.as_ref().to_string()).collect();
        let clauses = clauses
            .iter()
            .map(|c| c.iter().map(|&x| signed_lit(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        CnfFormula::new(vars, clauses)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    /// Bit `v` of `assignment` is the value of variable `v`.
    pub fn satisfied_by(&self, assignment: u32) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| l.holds(assignment)))
    }

    fn occurs(&self, l: Lit) -> bool {
        self.clauses.iter().any(|c| c.contains(&l))
    }

    /// Reads DIMACS CNF. Variable `n` is named `x{n}`.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let p = parse_dimacs_body(text, false)?;
        CnfFormula::from_parsed(p)
    }

    fn from_parsed(mut p: Parsed) -> Result<Self> {
        let vars = (1..=p.num_vars).map(|n| format!("x{n}")).collect();
        let clauses = std::mem::take(&mut p.clauses);
        CnfFormula::new(vars, clauses).map_err(|e| p.locate(e))
    }
}

fn signed_lit(x: i32) -> Result<Lit> {
    if x == 0 {
        return Err(Error::Precondition("literal 0 is not a variable".into()));
    }
    let var = x.unsigned_abs() as usize - 1;
    Ok(Lit { var, positive: x > 0 })
}

/// `∀Y ∃Z φ(Y, Z)`; the variables of the matrix are split into `Y` and `Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Qbf2Formula {
    matrix: CnfFormula,
    universal: Vec<usize>,
    existential: Vec<usize>,
}

impl Qbf2Formula {
    /// `universal` lists matrix variables; all others are existential.
    pub fn new(matrix: CnfFormula, universal: &[usize]) -> Result<Self> {
        let uni: BTreeSet<usize> = universal.iter().copied().collect();
        if let Some(&v) = uni.iter().find(|&&v| v >= matrix.num_vars()) {
            return Err(Error::Precondition(format!("universal variable {v} is undeclared")));
        }
        let existential = (0..matrix.num_vars()).filter(|v| !uni.contains(v)).collect();
        Ok(Qbf2Formula {
            matrix,
            universal: uni.into_iter().collect(),
            existential,
        })
    }

    /// Universals then existentials, numbered together from 1 in the clauses.
    pub fn from_signed<S: AsRef<str>>(universal: &[S], existential: &[S], clauses: &[&[i32]]) -> Result<Self> {
        let vars: Vec<&str> = universal.iter().chain(existential).map(|s| s.as_ref()).collect();
        let m = CnfFormula::from_signed(&vars, clauses)?;
        Qbf2Formula::new(m, &(0..universal.len()).collect::<Vec<_>>())
    }

    pub fn matrix(&self) -> &CnfFormula {
        &self.matrix
    }

    pub fn universal(&self) -> &[usize] {
        &self.universal
    }

    pub fn existential(&self) -> &[usize] {
        &self.existential
    }

    pub fn is_universal(&self, v: usize) -> bool {
        self.universal.binary_search(&v).is_ok()
    }

    /// Whether every clause mentions an existential variable.
    pub fn existential_in_every_clause(&self) -> bool {
        self.matrix
            .clauses()
            .iter()
            .all(|c| c.iter().any(|l| !self.is_universal(l.var)))
    }

    /// Reads DIMACS CNF with an `a` line of universals and an `e` line of
    /// existentials before the clauses. Every variable must be quantified.
    pub fn parse_qdimacs(text: &str) -> Result<Self> {
        let p = parse_dimacs_body(text, true)?;
        let mut quantified = vec![false; p.num_vars];
        for &v in p.universal.iter().chain(&p.existential) {
            quantified[v] = true;
        }
        if let Some(v) = quantified.iter().position(|q| !q) {
            return Err(Error::Parse {
                line: p.header_line,
                column: 1,
                message: format!("variable {} is not quantified", v + 1),
            });
        }
        let universal = p.universal.clone();
        Qbf2Formula::new(CnfFormula::from_parsed(p)?, &universal)
    }
}

struct Parsed {
    num_vars: usize,
    clauses: Vec<Vec<Lit>>,
    clause_lines: Vec<usize>,
    universal: Vec<usize>,
    existential: Vec<usize>,
    header_line: usize,
}

impl Parsed {
    /// Attaches a line number to a clause-level error where possible.
    fn locate(&self, e: Error) -> Error {
        let Error::Precondition(msg) = &e else { return e };
        let line = msg
            .strip_prefix("clause ")
            .and_then(|r| r.split(' ').next())
            .and_then(|n| n.parse::<usize>().ok())
            .and_then(|j| self.clause_lines.get(j - 1).copied());
        match line {
            Some(line) => Error::Parse {
                line,
                column: 1,
                message: msg.clone(),
            },
            None => e,
        }
    }
}

fn parse_dimacs_body(text: &str, quantifiers: bool) -> Result<Parsed> {
    let err = |line: usize, column: usize, message: String| Error::Parse {
        line,
        column,
        message,
    };
    let mut header: Option<(usize, usize)> = None;
    let mut p = Parsed {
        num_vars: 0,
        clauses: Vec::new(),
        clause_lines: Vec::new(),
        universal: Vec::new(),
        existential: Vec::new(),
        header_line: 0,
    };
    let mut seen_quant = [false; 2];
    let mut cur: Vec<Lit> = Vec::new();
    let mut cur_line = 0;
    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        let mut toks = tokens(raw);
        if line.starts_with('p') {
            if header.is_some() {
                return Err(err(ln, 1, "second problem line".into()));
            }
            let parts: Vec<(usize, &str)> = toks.collect();
            if parts.len() != 4 || parts[1].1 != "cnf" {
                return Err(err(ln, 1, "expected `p cnf <vars> <clauses>`".into()));
            }
            let num = |(col, t): (usize, &str)| {
                t.parse::<usize>()
                    .map_err(|_| err(ln, col, format!("expected a count, found `{t}`")))
            };
            let v = num(parts[2])?;
            if v > u32::BITS as usize {
                return Err(Error::ResourceLimit {
                    what: "variable",
                    limit: u32::BITS as usize,
                    actual: v,
                });
            }
            header = Some((v, num(parts[3])?));
            p.num_vars = v;
            p.header_line = ln;
            continue;
        }
        let Some((nv, _)) = header else {
            return Err(err(ln, 1, "clause before the problem line".into()));
        };
        let lit_of = |col: usize, t: &str| -> Result<i64> {
            let x: i64 = t
                .parse()
                .map_err(|_| err(ln, col, format!("expected an integer, found `{t}`")))?;
            if x.unsigned_abs() as usize > nv {
                return Err(err(ln, col, format!("variable {} exceeds the declared {nv}", x.abs())));
            }
            Ok(x)
        };
        if line.starts_with('a') || line.starts_with('e') {
            let kind = usize::from(line.starts_with('e'));
            if !quantifiers {
                return Err(err(ln, 1, "quantifier line in a CNF file".into()));
            }
            if seen_quant[kind] || !p.clauses.is_empty() || !cur.is_empty() {
                return Err(err(ln, 1, "quantifier lines must come once, before the clauses".into()));
            }
            if kind == 0 && seen_quant[1] {
                return Err(err(ln, 1, "the `a` line must precede the `e` line".into()));
            }
            seen_quant[kind] = true;
            toks.next();
            let mut closed = false;
            for (col, t) in toks {
                if closed {
                    return Err(err(ln, col, "text after the terminating 0".into()));
                }
                let x = lit_of(col, t)?;
                if x == 0 {
                    closed = true;
                    continue;
                }
                if x < 0 {
                    return Err(err(ln, col, "quantified variables are unsigned".into()));
                }
                let v = x as usize - 1;
                if p.universal.contains(&v) || p.existential.contains(&v) {
                    return Err(err(ln, col, format!("variable {x} quantified twice")));
                }
                if kind == 0 {
                    p.universal.push(v);
                } else {
                    p.existential.push(v);
                }
            }
            if !closed {
                return Err(err(ln, raw.len() + 1, "quantifier line must end with 0".into()));
            }
            continue;
        }
        for (col, t) in toks {
            let x = lit_of(col, t)?;
            if cur.is_empty() {
                cur_line = ln;
            }
            if x == 0 {
                if cur.is_empty() {
                    return Err(err(ln, col, "empty clause".into()));
                }
                p.clauses.push(std::mem::take(&mut cur));
                p.clause_lines.push(cur_line);
            } else {
                cur.push(signed_lit(x as i32)?);
            }
        }
    }
    let Some((_, nc)) = header else {
        return Err(err(text.lines().count().max(1), 1, "missing problem line".into()));
    };
    if !cur.is_empty() {
        return Err(err(cur_line, 1, "last clause is not terminated by 0".into()));
    }
    if p.clauses.len() != nc {
        return Err(err(
            p.header_line,
            1,
            format!("header declares {nc} clauses, found {}", p.clauses.len()),
        ));
    }
    Ok(p)
}

/// Whitespace-separated tokens with 1-based columns.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split_ascii_whitespace()
        .map(move |t| (t.as_ptr() as usize - line.as_ptr() as usize + 1, t))
}

fn oracle_bound(n: usize) -> Result<()> {
    if n > ORACLE_MAX_VARS {
        return Err(Error::ResourceLimit {
            what: "oracle variable",
            limit: ORACLE_MAX_VARS,
            actual: n,
        });
    }
    Ok(())
}

/// Whether some assignment satisfies every clause.
pub fn sat_oracle(phi: &CnfFormula) -> Result<bool> {
    oracle_bound(phi.num_vars())?;
    Ok((0..1u32 << phi.num_vars()).any(|a| phi.satisfied_by(a)))
}

/// Whether every assignment to `Y` extends to a model over `Z`.
pub fn qbf_oracle(q: &Qbf2Formula) -> Result<bool> {
    oracle_bound(q.matrix.num_vars())?;
    let spread = |vars: &[usize], bits: u32| {
        vars.iter()
            .enumerate()
            .filter(|&(k, _)| bits >> k & 1 == 1)
            .fold(0u32, |acc, (_, &v)| acc | 1 << v)
    };
    let (y, z) = (&q.universal, &q.existential);
    Ok((0..1u32 << y.len()).all(|ybits| {
        let base = spread(y, ybits);
        (0..1u32 << z.len()).any(|zbits| q.matrix.satisfied_by(base | spread(z, zbits)))
    }))
}

/// How the formula's status maps to the verification verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    /// The formula is satisfiable iff the target is a claim-extension.
    SatisfiableIffAccepted,
    /// The formula is valid iff the target is not a claim-extension.
    ValidIffRejected,
}

impl Polarity {
    /// The verification verdict the construction predicts from the oracle's.
    pub fn expected_verdict(self, oracle: bool) -> bool {
        match self {
            Polarity::SatisfiableIffAccepted => oracle,
            Polarity::ValidIffRejected => !oracle,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HardInstance {
    pub framework: PrefFramework,
    /// The CAF the construction builds directly when it targets the transitive
    /// image of reduction 1; `framework` is then its canonical preimage.
    pub image: Option<ClaimFramework>,
    pub target: ClaimSet,
    pub reduction: Reduction,
    pub semantics: Vec<Semantics>,
    pub polarity: Polarity,
    /// Variables that received a tautology clause `{x, ¬x}` to occur in both polarities.
    pub padded: Vec<String>,
}

impl HardInstance {
    /// Runs verification for every semantics of the instance.
    pub fn verdicts(&self) -> Result<Vec<(Semantics, bool)>> {
        let v = crate::realize::Verifier::new(&self.framework, self.reduction)?;
        Ok(self.semantics.iter().map(|&s| (s, v.verify(&self.target, s))).collect())
    }
}

/// Collects arguments, attacks and preferences by index.
#[derive(Default)]
struct Builder {
    names: Vec<String>,
    claims: Vec<String>,
    attacks: Vec<(usize, usize)>,
    prefs: Vec<(usize, usize)>,
}

impl Builder {
    fn arg(&mut self, name: impl Into<String>, claim: impl Into<String>) -> usize {
        self.names.push(name.into());
        self.claims.push(claim.into());
        self.names.len() - 1
    }

    fn own(&mut self, name: impl Into<String>) -> usize {
        let name = name.into();
        self.arg(name.clone(), name)
    }

    fn att(&mut self, a: usize, b: usize) {
        self.attacks.push((a, b));
    }

    /// `claims` is the number of distinct claims the construction intends; a
    /// smaller count means variable names collided with generated ones.
    fn caf(self, claims: usize) -> Result<(ClaimFramework, Vec<(usize, usize)>)> {
        let distinct: HashSet<&str> = self.claims.iter().map(String::as_str).collect();
        if distinct.len() != claims {
            return Err(Error::Precondition(
                "variable names collide with generated claim names".into(),
            ));
        }
        let af = ArgFramework::from_indices(self.names, self.attacks)?;
        Ok((ClaimFramework::from_labels(af, &self.claims)?, self.prefs))
    }
}

fn bar(x: &str) -> String {
    format!("{x}bar")
}

/// Preimage of a CAF the construction places in the transitive image of reduction 1.
fn lift(image: ClaimFramework) -> Result<(PrefFramework, Option<ClaimFramework>)> {
    let pf = transitive_r1_preimage(&image).ok_or_else(|| {
        Error::Precondition("construction left the transitive image of reduction 1".into())
    })?;
    Ok((pf, Some(image)))
}

/// Adds `{x, ¬x}` for every variable missing a polarity.
fn pad(phi: &CnfFormula) -> (CnfFormula, Vec<String>) {
    let mut clauses = phi.clauses.clone();
    let mut padded = Vec::new();
    for v in 0..phi.num_vars() {
        if !phi.occurs(Lit::pos(v)) || !phi.occurs(Lit::neg(v)) {
            clauses.push(vec![Lit::neg(v), Lit::pos(v)]);
            padded.push(phi.variables[v].clone());
        }
    }
    (
        CnfFormula {
            variables: phi.variables.clone(),
            clauses,
        },
        padded,
    )
}

/// Occurrence arguments `x_i` / `xbar_i` with claim `i`, attacked by both
/// `x_T` and `x_F` (claim `x`); each occurrence is preferred over the helper
/// whose value falsifies it. Verified under reduction 1 for cf and naive.
pub fn gen_cf_naive(phi: &CnfFormula) -> Result<HardInstance> {
    let (phi, padded) = pad(phi);
    let mut b = Builder::default();
    let helpers: Vec<(usize, usize)> = phi
        .variables
        .iter()
        .map(|x| (b.arg(format!("{x}_T"), x), b.arg(format!("{x}_F"), x)))
        .collect();
    for (j, c) in phi.clauses.iter().enumerate() {
        let i = j + 1;
        for l in c {
            let x = &phi.variables[l.var];
            let name = if l.positive { format!("{x}_{i}") } else { format!("{}_{i}", bar(x)) };
            let occ = b.arg(name, i.to_string());
            let (t, f) = helpers[l.var];
            b.att(t, occ);
            b.att(f, occ);
            b.prefs.push((occ, if l.positive { t } else { f }));
        }
    }
    let (caf, prefs) = b.caf(phi.clauses.len() + phi.num_vars())?;
    let target = (1..=phi.clauses.len())
        .map(|i| i.to_string())
        .chain(phi.variables.iter().cloned())
        .collect();
    Ok(HardInstance {
        framework: PrefFramework::from_indices(caf, prefs),
        image: None,
        target,
        reduction: Reduction::R1,
        semantics: vec![Semantics::Cf, Semantics::Naive],
        polarity: Polarity::SatisfiableIffAccepted,
        padded,
    })
}

/// Occurrences with claim `i`; for every positive occurrence `x_i` and
/// negative occurrence `xbar_j` a 6-cycle through helpers `x1..x4` whose
/// unattached twins `hat_…` share their claims. Targets stable, admissible and
/// complete semantics under reduction 1.
pub fn gen_stb_adm_com(phi: &CnfFormula) -> Result<HardInstance> {
    let mut b = Builder::default();
    let mut pos: Vec<Vec<(usize, usize)>> = vec![Vec::new(); phi.num_vars()];
    let mut neg: Vec<Vec<(usize, usize)>> = vec![Vec::new(); phi.num_vars()];
    for (j, c) in phi.clauses.iter().enumerate() {
        let i = j + 1;
        for l in c {
            let x = &phi.variables[l.var];
            if l.positive {
                pos[l.var].push((i, b.arg(format!("{x}_{i}"), i.to_string())));
            } else {
                neg[l.var].push((i, b.arg(format!("{}_{i}", bar(x)), i.to_string())));
            }
        }
    }
    let mut helper_claims = Vec::new();
    for v in 0..phi.num_vars() {
        let x = &phi.variables[v];
        for &(i, xi) in &pos[v] {
            for &(j, xj) in &neg[v] {
                let h: Vec<usize> = (1..=4)
                    .map(|k| {
                        let name = format!("{x}{k}_{i}_{j}");
                        b.arg(format!("hat_{name}"), name.clone());
                        helper_claims.push(name.clone());
                        b.own(name)
                    })
                    .collect();
                for (s, t) in [(xi, h[0]), (h[0], h[1]), (h[1], xj), (xj, h[2]), (h[2], h[3]), (h[3], xi)] {
                    b.att(s, t);
                }
            }
        }
    }
    let (caf, _) = b.caf(phi.clauses.len() + helper_claims.len())?;
    let target = (1..=phi.clauses.len())
        .map(|i| i.to_string())
        .chain(helper_claims)
        .collect();
    let (framework, image) = lift(caf)?;
    Ok(HardInstance {
        framework,
        image,
        target,
        reduction: Reduction::R1,
        semantics: vec![Semantics::Stb, Semantics::Adm, Semantics::Com],
        polarity: Polarity::SatisfiableIffAccepted,
        padded: Vec::new(),
    })
}

/// The QBF constructions for preferred, semi-stable and stage semantics under
/// reduction 1. Arguments `x`, `xbar` for every variable, clauses `c1..cm`,
/// `phi`/`phibar`, and unattacked `ystar`, `ybarstar` carrying the claims of
/// the universal literals. The formula is valid iff the target is rejected.
pub fn gen_qbf(q: &Qbf2Formula, s: Semantics) -> Result<HardInstance> {
    if !matches!(s, Semantics::Prf | Semantics::Sem | Semantics::Stg) {
        return Err(Error::UnsupportedSemantics(s));
    }
    if s == Semantics::Prf && !q.existential_in_every_clause() {
        return Err(Error::Precondition(
            "every clause must contain an existential variable".into(),
        ));
    }
    let m = &q.matrix;
    let mut b = Builder::default();
    let lits: Vec<(usize, usize)> = m
        .variables
        .iter()
        .map(|x| (b.own(x.clone()), b.own(bar(x))))
        .collect();
    for &(x, nx) in &lits {
        b.att(x, nx);
        b.att(nx, x);
    }
    let clauses: Vec<usize> = (1..=m.clauses.len()).map(|j| b.own(format!("c{j}"))).collect();
    for (c, cl) in clauses.iter().zip(&m.clauses) {
        b.att(*c, *c);
        for l in cl {
            let (x, nx) = lits[l.var];
            b.att(if l.positive { x } else { nx }, *c);
        }
    }
    let phibar = b.own("phibar");
    let phi = (s != Semantics::Stg).then(|| b.own("phi"));
    if let Some(phi) = phi {
        for &c in &clauses {
            b.att(c, phi);
        }
        b.att(phi, phibar);
        b.att(phibar, phibar);
    }
    for &z in &q.existential {
        let (x, nx) = lits[z];
        if s == Semantics::Stg {
            b.att(x, phibar);
            b.att(nx, phibar);
        } else {
            b.att(phibar, x);
            b.att(phibar, nx);
        }
    }
    if s == Semantics::Stg {
        for &c in &clauses {
            b.att(phibar, c);
        }
    }
    let mut target = ClaimSet::new();
    let mut gadgets = 0;
    for &y in &q.universal {
        let name = &m.variables[y];
        for (v, arg) in [(name.clone(), lits[y].0), (bar(name), lits[y].1)] {
            b.arg(format!("{v}star"), v.clone());
            if s != Semantics::Prf {
                let d = b.own(format!("d_{v}"));
                b.att(d, d);
                b.att(arg, d);
                gadgets += 1;
            }
            target.0.insert(v);
        }
    }
    if s == Semantics::Stg {
        target.0.insert("phibar".into());
    }
    let claims = 2 * m.num_vars() + clauses.len() + 1 + usize::from(phi.is_some()) + gadgets;
    let (caf, _) = b.caf(claims)?;
    let (framework, image) = lift(caf)?;
    Ok(HardInstance {
        framework,
        image,
        target,
        reduction: Reduction::R1,
        semantics: vec![s],
        polarity: Polarity::ValidIffRejected,
        padded: Vec::new(),
    })
}

/// The complete-semantics constructions for reductions 2 and 4. Literal
/// arguments `x`, `xbar` (claim `x`) attack nothing but are preferred over
/// every clause and over their `d` helpers, so the reduction turns those
/// attacks around. The target is every variable plus `phi`.
pub fn gen_com_pref(phi: &CnfFormula, i: Reduction) -> Result<HardInstance> {
    if !matches!(i, Reduction::R2 | Reduction::R4) {
        return Err(Error::UnsupportedReduction(i));
    }
    let full = i == Reduction::R2;
    let mut b = Builder::default();
    let top = b.own("phi");
    let clauses: Vec<usize> = (1..=phi.clauses.len()).map(|j| b.own(format!("c{j}"))).collect();
    let lits: Vec<(usize, usize)> = phi
        .variables
        .iter()
        .map(|x| (b.arg(x.clone(), x.clone()), b.arg(bar(x), x.clone())))
        .collect();
    for (&c, cl) in clauses.iter().zip(&phi.clauses) {
        b.att(c, top);
        b.att(c, c);
        for l in cl {
            let (x, nx) = lits[l.var];
            b.att(c, if l.positive { x } else { nx });
        }
    }
    let mut own_claims = 1 + clauses.len() + phi.num_vars();
    for (v, x) in phi.variables.iter().enumerate() {
        let d = b.own(format!("d_{x}"));
        own_claims += 1;
        for (lname, l) in [(x.clone(), lits[v].0), (bar(x), lits[v].1)] {
            for &c in &clauses {
                b.prefs.push((l, c));
            }
            let d1 = b.own(format!("d1_{lname}"));
            own_claims += 1;
            b.att(d1, l);
            b.prefs.push((l, d1));
            if full {
                let d2 = b.arg(format!("d2_{lname}"), x.clone());
                let d3 = b.own(format!("d3_{lname}"));
                let d4 = b.own(format!("d4_{lname}"));
                own_claims += 2;
                b.att(d1, d2);
                b.att(d3, d2);
                b.att(d3, l);
                b.att(d4, l);
                b.att(d4, d);
                b.prefs.push((l, d4));
                b.prefs.push((d2, d3));
            } else {
                b.att(d1, d);
            }
        }
    }
    let (caf, prefs) = b.caf(own_claims)?;
    let target = phi
        .variables
        .iter()
        .cloned()
        .chain(std::iter::once("phi".to_string()))
        .collect();
    Ok(HardInstance {
        framework: PrefFramework::from_indices(caf, prefs),
        image: None,
        target,
        reduction: i,
        semantics: vec![Semantics::Com],
        polarity: Polarity::SatisfiableIffAccepted,
        padded: Vec::new(),
    })
}

fn var_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|k| {
            let letter = (b'a' + (k % 26) as u8) as char;
            if k < 26 { letter.to_string() } else { format!("{letter}{}", k / 26) }
        })
        .collect()
}

fn random_clause<R: Rng>(rng: &mut R, vars: &[usize], forced: Option<&[usize]>) -> Vec<Lit> {
    let len = rng.gen_range(1..=MAX_CLAUSE_LEN.min(vars.len()));
    let mut pick: Vec<usize> = vars.choose_multiple(rng, len).copied().collect();
    if let Some(z) = forced {
        if !pick.iter().any(|v| z.contains(v)) {
            pick[0] = *z.choose(rng).expect("nonempty existential block");
            pick.sort_unstable();
            pick.dedup();
        }
    }
    pick.into_iter()
        .map(|var| Lit {
            var,
            positive: rng.gen_bool(0.5),
        })
        .collect()
}

/// A random CNF with 1..=`max_vars` variables named `a`, `b`, … and
/// 1..=`max_clauses` clauses of one to three distinct variables.
pub fn random_cnf<R: Rng>(rng: &mut R, max_vars: usize, max_clauses: usize) -> CnfFormula {
    let n = rng.gen_range(1..=max_vars.max(1));
    let m = rng.gen_range(1..=max_clauses.max(1));
    let vars: Vec<usize> = (0..n).collect();
    let clauses = (0..m).map(|_| random_clause(rng, &vars, None)).collect();
    CnfFormula::new(var_names(n), clauses).expect("generated names are valid")
}

/// A random `∀Y∃Z` formula with 1..=`max_y` universal and 1..=`max_z`
/// existential variables. With `existential_each`, every clause gets an
/// existential literal.
pub fn random_qbf<R: Rng>(
    rng: &mut R,
    max_y: usize,
    max_z: usize,
    max_clauses: usize,
    existential_each: bool,
) -> Qbf2Formula {
    let ny = rng.gen_range(1..=max_y.max(1));
    let nz = rng.gen_range(1..=max_z.max(1));
    let m = rng.gen_range(1..=max_clauses.max(1));
    let vars: Vec<usize> = (0..ny + nz).collect();
    let z: Vec<usize> = (ny..ny + nz).collect();
    let forced = existential_each.then_some(z.as_slice());
    let clauses = (0..m).map(|_| random_clause(rng, &vars, forced)).collect();
    let matrix = CnfFormula::new(var_names(ny + nz), clauses).expect("generated names are valid");
    Qbf2Formula::new(matrix, &(0..ny).collect::<Vec<_>>()).expect("universals are declared")
}
