//! Parser for the `.dproc` surface syntax.
//!
//! ```text
//! spec        := process stakeholder*
//! process     := "process" IDENT "{" "activities" "{" actdecl+ "}"
//!                                  "constraints" "{" (constraint ";")* "}" "}"
//! actdecl     := INT (STRING)? ";"
//! constraint  := NAME "(" args ")"
//! stakeholder := "stakeholder" IDENT (STRING)? "{" "prefer" pref ";" "}"
//! pref        := "not" pref | pref "and" pref | pref "or" pref
//!              | "(" pref ")" | constraint
//! ```
//!
//! `#` starts a line comment. `not` binds tighter than `and`, which binds
//! tighter than `or`; both connectives are left-associative.

use std::fmt;

use super::preference::Preference;
use super::template::ConstraintTemplate;
use crate::model::{
    Activity, ActivityId, DeclarativeProcess, ModelError, Stakeholder, StakeholderSystem, Trace,
};

/// Line/column position in the source text, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("{pos}: syntax error: {msg}")]
    Syntax { pos: Pos, msg: String },
    #[error("{pos}: {name} takes {expected}, got {got} argument(s)")]
    Arity {
        pos: Pos,
        name: String,
        expected: &'static str,
        got: usize,
    },
    #[error("{pos}: unknown constraint name `{name}`")]
    UnknownTemplate { pos: Pos, name: String },
    #[error("{pos}: {source}")]
    Model { pos: Pos, source: ModelError },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Str(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Semi,
    Comma,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{}`", s),
            Tok::Int(n) => write!(f, "`{}`", n),
            Tok::Str(s) => write!(f, "\"{}\"", s),
            Tok::LBrace => write!(f, "`{{`"),
            Tok::RBrace => write!(f, "`}}`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

struct Lexer<'a> {
    src: std::iter::Peekable<std::str::Chars<'a>>,
    line: u32,
    col: u32,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            src: text.chars().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.src.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.col,
        }
    }

    fn tokenize(mut self) -> Result<Vec<(Tok, Pos)>, ParseError> {
        let mut out = Vec::new();
        loop {
            // skip whitespace and comments
            loop {
                match self.src.peek() {
                    Some(c) if c.is_whitespace() => {
                        self.bump();
                    }
                    Some('#') => {
                        while let Some(c) = self.bump() {
                            if c == '\n' {
                                break;
                            }
                        }
                    }
                    _ => break,
                }
            }
            let pos = self.pos();
            let Some(&c) = self.src.peek() else {
                out.push((Tok::Eof, pos));
                return Ok(out);
            };
            let tok = match c {
                '{' => {
                    self.bump();
                    Tok::LBrace
                }
                '}' => {
                    self.bump();
                    Tok::RBrace
                }
                '(' => {
                    self.bump();
                    Tok::LParen
                }
                ')' => {
                    self.bump();
                    Tok::RParen
                }
                ';' => {
                    self.bump();
                    Tok::Semi
                }
                ',' => {
                    self.bump();
                    Tok::Comma
                }
                '"' => {
                    self.bump();
                    let mut s = String::new();
                    loop {
                        match self.bump() {
                            Some('"') => break,
                            Some(c) => s.push(c),
                            None => {
                                return Err(ParseError::Syntax {
                                    pos,
                                    msg: "unterminated string literal".into(),
                                })
                            }
                        }
                    }
                    Tok::Str(s)
                }
                c if c.is_ascii_digit() => {
                    let mut n: u64 = 0;
                    while let Some(&d) = self.src.peek() {
                        if let Some(v) = d.to_digit(10) {
                            n = n
                                .checked_mul(10)
                                .and_then(|n| n.checked_add(v as u64))
                                .ok_or_else(|| ParseError::Syntax {
                                    pos,
                                    msg: "integer literal too large".into(),
                                })?;
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    Tok::Int(n)
                }
                c if c.is_alphabetic() || c == '_' => {
                    let mut s = String::new();
                    while let Some(&d) = self.src.peek() {
                        if d.is_alphanumeric() || d == '_' {
                            s.push(d);
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    Tok::Ident(s)
                }
                other => {
                    return Err(ParseError::Syntax {
                        pos,
                        msg: format!("unexpected character `{}`", other),
                    })
                }
            };
            out.push((tok, pos));
        }
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        }
    }

    fn expect(&mut self, want: Tok) -> Result<Pos, ParseError> {
        if *self.peek() == want {
            Ok(self.next().1)
        } else {
            Err(self.err(format!("expected {}, found {}", want, self.peek())))
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.next();
                Ok(())
            }
            other => Err(self.err(format!("expected `{}`, found {}", kw, other))),
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            other => Err(self.err(format!("expected identifier, found {}", other))),
        }
    }

    fn int(&mut self) -> Result<ActivityId, ParseError> {
        match *self.peek() {
            Tok::Int(n) => {
                let pos = self.pos();
                self.next();
                ActivityId::try_from(n).map_err(|_| ParseError::Syntax {
                    pos,
                    msg: format!("activity id {} out of range", n),
                })
            }
            ref other => Err(self.err(format!("expected integer, found {}", other))),
        }
    }

    fn spec(&mut self) -> Result<StakeholderSystem, ParseError> {
        let process = self.process()?;
        let mut stakeholders = Vec::new();
        while matches!(self.peek(), Tok::Ident(s) if s == "stakeholder") {
            stakeholders.push(self.stakeholder()?);
        }
        let pos = self.pos();
        self.expect(Tok::Eof)?;
        StakeholderSystem::new(process, stakeholders)
            .map_err(|source| ParseError::Model { pos, source })
    }

    fn process(&mut self) -> Result<DeclarativeProcess, ParseError> {
        self.expect_keyword("process")?;
        let name = self.ident()?;
        self.expect(Tok::LBrace)?;

        self.expect_keyword("activities")?;
        self.expect(Tok::LBrace)?;
        let mut activities = Vec::new();
        loop {
            match self.peek() {
                Tok::Int(_) => {
                    let id = self.int()?;
                    let label = match self.peek().clone() {
                        Tok::Str(s) => {
                            self.next();
                            Some(s)
                        }
                        _ => None,
                    };
                    self.expect(Tok::Semi)?;
                    activities.push(Activity { id, label });
                }
                Tok::RBrace if !activities.is_empty() => break,
                _ => return Err(self.err("expected activity declaration")),
            }
        }
        self.expect(Tok::RBrace)?;

        self.expect_keyword("constraints")?;
        self.expect(Tok::LBrace)?;
        let mut constraints = Vec::new();
        while !matches!(self.peek(), Tok::RBrace) {
            constraints.push(self.constraint()?);
            self.expect(Tok::Semi)?;
        }
        self.expect(Tok::RBrace)?;

        let pos = self.pos();
        self.expect(Tok::RBrace)?;
        DeclarativeProcess::new(name, activities, constraints)
            .map_err(|source| ParseError::Model { pos, source })
    }

    fn stakeholder(&mut self) -> Result<Stakeholder, ParseError> {
        self.expect_keyword("stakeholder")?;
        let name = self.ident()?;
        let label = match self.peek().clone() {
            Tok::Str(s) => {
                self.next();
                Some(s)
            }
            _ => None,
        };
        self.expect(Tok::LBrace)?;
        self.expect_keyword("prefer")?;
        let preference = self.pref_or()?;
        self.expect(Tok::Semi)?;
        self.expect(Tok::RBrace)?;
        Ok(Stakeholder {
            name,
            label,
            preference,
        })
    }

    fn pref_or(&mut self) -> Result<Preference, ParseError> {
        let mut left = self.pref_and()?;
        while matches!(self.peek(), Tok::Ident(s) if s == "or") {
            self.next();
            let right = self.pref_and()?;
            left = Preference::or(left, right);
        }
        Ok(left)
    }

    fn pref_and(&mut self) -> Result<Preference, ParseError> {
        let mut left = self.pref_unary()?;
        while matches!(self.peek(), Tok::Ident(s) if s == "and") {
            self.next();
            let right = self.pref_unary()?;
            left = Preference::and(left, right);
        }
        Ok(left)
    }

    fn pref_unary(&mut self) -> Result<Preference, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) if s == "not" => {
                self.next();
                Ok(Preference::not(self.pref_unary()?))
            }
            Tok::LParen => {
                self.next();
                let inner = self.pref_or()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Ident(_) => Ok(Preference::Constraint(self.constraint()?)),
            other => Err(self.err(format!("expected preference, found {}", other))),
        }
    }

    fn constraint(&mut self) -> Result<ConstraintTemplate, ParseError> {
        let pos = self.pos();
        let name = self.ident()?;
        self.expect(Tok::LParen)?;

        // choice takes a count followed by a braced set; choice1 just the set
        if name == "choice" || name == "choice1" {
            let k = if name == "choice" {
                let k = self.int()?;
                self.expect(Tok::Comma)?;
                k
            } else {
                1
            };
            self.expect(Tok::LBrace)?;
            let mut set = vec![self.int()?];
            while matches!(self.peek(), Tok::Comma) {
                self.next();
                set.push(self.int()?);
            }
            self.expect(Tok::RBrace)?;
            self.expect(Tok::RParen)?;
            return Ok(ConstraintTemplate::Choice(k, set));
        }

        let mut args = vec![self.int()?];
        while matches!(self.peek(), Tok::Comma) {
            self.next();
            args.push(self.int()?);
        }
        self.expect(Tok::RParen)?;

        let arity_err = |expected: &'static str| ParseError::Arity {
            pos,
            name: name.clone(),
            expected,
            got: args.len(),
        };
        let unary = |args: &[ActivityId]| -> Result<ActivityId, ParseError> {
            if args.len() == 1 {
                Ok(args[0])
            } else {
                Err(arity_err("1"))
            }
        };
        let binary = |args: &[ActivityId]| -> Result<(ActivityId, ActivityId), ParseError> {
            if args.len() == 2 {
                Ok((args[0], args[1]))
            } else {
                Err(arity_err("2"))
            }
        };

        use ConstraintTemplate::*;
        Ok(match name.as_str() {
            "participation" => Participation(unary(&args)?),
            "initial" => Initial(unary(&args)?),
            "resp" => {
                let (a, b) = binary(&args)?;
                Resp(a, b)
            }
            "chainresp" => {
                let (a, b) = binary(&args)?;
                ChainResp(a, b)
            }
            "prec" => {
                let (a, b) = binary(&args)?;
                Prec(a, b)
            }
            "succ" => {
                let (a, b) = binary(&args)?;
                Succ(a, b)
            }
            "notsucc" => {
                let (a, b) = binary(&args)?;
                NotSucc(a, b)
            }
            "notcoexist" => {
                let (a, b) = binary(&args)?;
                NotCoexist(a, b)
            }
            "notcoexist_weak" => {
                let (a, b) = binary(&args)?;
                NotCoexistWeak(a, b)
            }
            "optresp" => {
                let (a, b) = binary(&args)?;
                OptResp(a, b)
            }
            _ => return Err(ParseError::UnknownTemplate { pos, name }),
        })
    }
}

/// Parses a complete `.dproc` spec: one process plus zero or more
/// stakeholders.
pub fn parse_spec(text: &str) -> Result<StakeholderSystem, ParseError> {
    let toks = Lexer::new(text).tokenize()?;
    Parser { toks, at: 0 }.spec()
}

/// Renders a system back into the surface syntax. `parse_spec(print_spec(s))`
/// reproduces `s` exactly.
pub fn print_spec(system: &StakeholderSystem) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let p = &system.process;
    writeln!(out, "process {} {{", p.name).unwrap();
    writeln!(out, "  activities {{").unwrap();
    for a in p.activities() {
        match &a.label {
            Some(l) => writeln!(out, "    {} \"{}\";", a.id, l).unwrap(),
            None => writeln!(out, "    {};", a.id).unwrap(),
        }
    }
    writeln!(out, "  }}").unwrap();
    writeln!(out, "  constraints {{").unwrap();
    for c in p.constraints() {
        writeln!(out, "    {};", c).unwrap();
    }
    writeln!(out, "  }}").unwrap();
    writeln!(out, "}}").unwrap();
    for s in &system.stakeholders {
        match &s.label {
            Some(l) => writeln!(out, "stakeholder {} \"{}\" {{", s.name, l).unwrap(),
            None => writeln!(out, "stakeholder {} {{", s.name).unwrap(),
        }
        writeln!(out, "  prefer {};", s.preference).unwrap();
        writeln!(out, "}}").unwrap();
    }
    out
}

/// Parses a trace literal as used on the command line: `(1,2,4)`, `()` or
/// `ε` for the empty trace.
pub fn parse_trace_literal(text: &str) -> Result<Trace, ParseError> {
    let trimmed = text.trim();
    if trimmed == "ε" || trimmed == "()" || trimmed == "eps" {
        return Ok(Trace::empty());
    }
    let err = |msg: &str| ParseError::Syntax {
        pos: Pos { line: 1, col: 1 },
        msg: msg.into(),
    };
    let inner = trimmed
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| err("trace literal must be parenthesized, `()`, or `ε`"))?;
    let mut events = Vec::new();
    for part in inner.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return Err(err("empty entry in trace literal"));
        }
        events.push(
            part.parse::<ActivityId>()
                .map_err(|_| err(&format!("invalid activity id `{}`", part)))?,
        );
    }
    Ok(Trace::new(events))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::ConstraintTemplate as C;

    const EXAMPLE: &str = r#"
        # the running five-activity example
        process ex {
          activities { 1; 2; 3; 4; 5; }
          constraints {
            resp(1,2);
            prec(2,3);
            prec(3,5);
            succ(1,4);
            notsucc(4,2);
          }
        }
    "#;

    #[test]
    fn parses_running_example() {
        let sys = parse_spec(EXAMPLE).unwrap();
        assert_eq!(sys.process.alphabet(), vec![1, 2, 3, 4, 5]);
        assert_eq!(sys.process.constraints().len(), 5);
        assert!(sys.stakeholders.is_empty());
    }

    #[test]
    fn parses_stakeholder_preferences() {
        let text = format!(
            "{}\nstakeholder s1 {{ prefer not participation(5); }}",
            EXAMPLE
        );
        let sys = parse_spec(&text).unwrap();
        assert_eq!(sys.stakeholders.len(), 1);
        assert_eq!(
            sys.stakeholders[0].preference,
            Preference::not(C::Participation(5).into())
        );
    }

    #[test]
    fn arity_error() {
        let text = "process p { activities { 1; } constraints { resp(1); } }";
        match parse_spec(text) {
            Err(ParseError::Arity { name, got, .. }) => {
                assert_eq!(name, "resp");
                assert_eq!(got, 1);
            }
            other => panic!("expected arity error, got {:?}", other),
        }
    }

    #[test]
    fn unknown_activity_in_constraint() {
        let text = "process p { activities { 1; 2; } constraints { resp(1,3); } }";
        match parse_spec(text) {
            Err(ParseError::Model {
                source: ModelError::UnknownActivity(3),
                ..
            }) => {}
            other => panic!("expected unknown activity, got {:?}", other),
        }
    }

    #[test]
    fn syntax_error_carries_position() {
        let text = "process p {\n  activities { 1 }\n}";
        match parse_spec(text) {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos.line, 2),
            other => panic!("expected syntax error, got {:?}", other),
        }
    }

    #[test]
    fn choice_forms() {
        let text =
            "process p { activities { 1; 2; 3; } constraints { choice1({1,2}); choice(2,{1,2,3}); } }";
        let sys = parse_spec(text).unwrap();
        assert_eq!(
            sys.process.constraints(),
            &[C::Choice(1, vec![1, 2]), C::Choice(2, vec![1, 2, 3])]
        );
    }

    #[test]
    fn print_parse_round_trip() {
        let text = format!(
            "{}\nstakeholder s1 \"label\" {{ prefer participation(1) and (not prec(2,3) or succ(1,4)); }}",
            EXAMPLE
        );
        let sys = parse_spec(&text).unwrap();
        let printed = print_spec(&sys);
        let reparsed = parse_spec(&printed).unwrap();
        assert_eq!(sys, reparsed);
    }

    #[test]
    fn trace_literals() {
        assert_eq!(parse_trace_literal("ε").unwrap(), Trace::empty());
        assert_eq!(parse_trace_literal("()").unwrap(), Trace::empty());
        assert_eq!(
            parse_trace_literal("(1, 2, 4)").unwrap(),
            Trace::new(vec![1, 2, 4])
        );
        assert!(parse_trace_literal("1,2").is_err());
    }
}
