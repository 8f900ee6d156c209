//! The APX-style text format with claims and preferences:
//!
//! ```text
//! # comment
//! arg(a).
//! claim(a, alpha).
//! att(a, b).
//! pref(a, b).   # a is stronger than b
//! ```
//!
//! One fact per line. Names are any run of characters other than blanks and
//! `(),.#`.

use argclaim::{ArgFramework, ClaimFramework, Error, PrefFramework, Result};
use std::collections::{BTreeSet, HashMap};
use std::fmt::Write;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Arguments without a `claim` fact get their own name as claim.
    pub implicit_claims: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

fn error(p: Pos, message: impl Into<String>) -> Error {
    Error::Parse {
        line: p.line,
        column: p.column,
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Pred {
    Arg,
    Claim,
    Att,
    Pref,
}

struct Fact<'a> {
    pred: Pred,
    pos: Pos,
    terms: Vec<(&'a str, Pos)>,
}

struct Cursor<'a> {
    text: &'a str,
    at: usize,
    line: usize,
}

fn is_name_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, '(' | ')' | ',' | '.' | '#')
}

impl<'a> Cursor<'a> {
    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            column: self.text[..self.at].chars().count() + 1,
        }
    }

    fn skip_blanks(&mut self) {
        let rest = &self.text[self.at..];
        self.at += rest.len() - rest.trim_start().len();
    }

    fn peek(&self) -> Option<char> {
        self.text[self.at..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_blanks();
        match self.peek() {
            Some(d) if d == c => {
                self.at += c.len_utf8();
                Ok(())
            }
            Some(d) => Err(error(self.pos(), format!("expected `{c}`, found `{d}`"))),
            None => Err(error(self.pos(), format!("expected `{c}`, found end of line"))),
        }
    }

    fn name(&mut self) -> Result<(&'a str, Pos)> {
        self.skip_blanks();
        let pos = self.pos();
        let rest = &self.text[self.at..];
        let len = rest.find(|c| !is_name_char(c)).unwrap_or(rest.len());
        if len == 0 {
            return Err(match self.peek() {
                Some(c) => error(pos, format!("expected a name, found `{c}`")),
                None => error(pos, "expected a name, found end of line"),
            });
        }
        self.at += len;
        Ok((&rest[..len], pos))
    }
}

/// Parses one line; `None` for blank and comment-only lines.
fn parse_line(text: &str, line: usize) -> Result<Option<Fact<'_>>> {
    let text = text.split('#').next().unwrap_or("");
    let mut cur = Cursor { text, at: 0, line };
    cur.skip_blanks();
    if cur.peek().is_none() {
        return Ok(None);
    }
    let (head, pos) = cur.name()?;
    let (pred, arity) = match head {
        "arg" => (Pred::Arg, 1),
        "claim" => (Pred::Claim, 2),
        "att" => (Pred::Att, 2),
        "pref" => (Pred::Pref, 2),
        _ => return Err(error(pos, format!("unknown fact `{head}`"))),
    };
    cur.expect('(')?;
    let mut terms = vec![cur.name()?];
    for _ in 1..arity {
        cur.expect(',')?;
        terms.push(cur.name()?);
    }
    cur.expect(')')?;
    cur.expect('.')?;
    cur.skip_blanks();
    if let Some(c) = cur.peek() {
        return Err(error(cur.pos(), format!("expected end of line, found `{c}`")));
    }
    Ok(Some(Fact { pred, pos, terms }))
}

/// Facts resolved against the declared arguments.
struct Document {
    names: Vec<String>,
    claims: Vec<Option<String>>,
    attacks: Vec<(usize, usize)>,
    prefs: Vec<(usize, usize)>,
    first_pref: Option<Pos>,
}

fn read(text: &str, opts: ParseOptions) -> Result<Document> {
    let mut facts = Vec::new();
    for (i, l) in text.lines().enumerate() {
        if let Some(f) = parse_line(l, i + 1)? {
            facts.push(f);
        }
    }
    let mut doc = Document {
        names: Vec::new(),
        claims: Vec::new(),
        attacks: Vec::new(),
        prefs: Vec::new(),
        first_pref: None,
    };
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut declared_at = Vec::new();
    for f in facts.iter().filter(|f| f.pred == Pred::Arg) {
        let (name, pos) = f.terms[0];
        if index.insert(name, doc.names.len()).is_some() {
            return Err(error(pos, format!("argument `{name}` declared twice")));
        }
        doc.names.push(name.to_string());
        declared_at.push(pos);
    }
    doc.claims = vec![None; doc.names.len()];
    let lookup = |(name, pos): (&str, Pos)| {
        index
            .get(name)
            .copied()
            .ok_or_else(|| error(pos, format!("undeclared argument `{name}`")))
    };
    for f in &facts {
        match f.pred {
            Pred::Arg => {}
            Pred::Claim => {
                let a = lookup(f.terms[0])?;
                if let Some(old) = &doc.claims[a] {
                    return Err(error(
                        f.pos,
                        format!("argument `{}` already has claim `{old}`", doc.names[a]),
                    ));
                }
                doc.claims[a] = Some(f.terms[1].0.to_string());
            }
            Pred::Att => doc.attacks.push((lookup(f.terms[0])?, lookup(f.terms[1])?)),
            Pred::Pref => {
                doc.first_pref.get_or_insert(f.pos);
                doc.prefs.push((lookup(f.terms[0])?, lookup(f.terms[1])?));
            }
        }
    }
    for (a, c) in doc.claims.iter_mut().enumerate() {
        if c.is_none() {
            if !opts.implicit_claims {
                return Err(error(
                    declared_at[a],
                    format!("argument `{}` has no claim", doc.names[a]),
                ));
            }
            *c = Some(doc.names[a].clone());
        }
    }
    Ok(doc)
}

impl Document {
    fn caf(self) -> Result<(ClaimFramework, Vec<(usize, usize)>)> {
        let labels: Vec<String> = self.claims.into_iter().map(|c| c.expect("claims resolved")).collect();
        let af = ArgFramework::from_indices(self.names, self.attacks)?;
        Ok((ClaimFramework::from_labels(af, &labels)?, self.prefs))
    }
}

/// A PCAF; the CAF must be well-formed and the preferences asymmetric.
pub fn parse_pcaf(text: &str, opts: ParseOptions) -> Result<PrefFramework> {
    let (caf, prefs) = read(text, opts)?.caf()?;
    let pf = PrefFramework::from_indices(caf, prefs);
    let report = pf.validate(false);
    if report.is_valid() {
        Ok(pf)
    } else {
        Err(Error::Invalid(report))
    }
}

/// A CAF without any well-formedness requirement; `pref` facts are rejected.
pub fn parse_caf(text: &str, opts: ParseOptions) -> Result<ClaimFramework> {
    let doc = read(text, opts)?;
    if let Some(p) = doc.first_pref {
        return Err(error(p, "preferences are not allowed here"));
    }
    Ok(doc.caf()?.0)
}

fn render_facts(out: &mut String, cf: &ClaimFramework) {
    let af = cf.af();
    for name in af.names() {
        writeln!(out, "arg({name}).").unwrap();
    }
    for (a, name) in af.names().iter().enumerate() {
        writeln!(out, "claim({name},{}).", cf.claim_name_of(a)).unwrap();
    }
    for &(a, b) in af.attacks() {
        writeln!(out, "att({},{}).", af.name(a), af.name(b)).unwrap();
    }
}

/// Canonical text: arguments in framework order, then claims, attacks and
/// preferences, each sorted by argument index.
pub fn render_caf(cf: &ClaimFramework) -> String {
    let mut out = String::new();
    render_facts(&mut out, cf);
    out
}

pub fn render_pcaf(pf: &PrefFramework) -> String {
    let mut out = render_caf(pf.caf());
    let af = pf.caf().af();
    let prefs: BTreeSet<_> = pf.prefs().iter().collect();
    for &(a, b) in prefs {
        writeln!(out, "pref({},{}).", af.name(a), af.name(b)).unwrap();
    }
    out
}
