//! Terms over `0 1 1' + · - ; ^` and their parser.
//!
//! Binding, from loosest to tightest: `+`, `·`, prefix `-`, `;`, postfix `^`.
//! A `-` written directly after `;` applies to the next operand only, so
//! `-x;y` is `-(x;y)` while `x;-y` is `x;(-y)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::algebra::AtomStructure;
use crate::atomset::AtomSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Zero,
    One,
    Identity,
    Var(String),
    Complement(Box<Term>),
    Converse(Box<Term>),
    Join(Box<Term>, Box<Term>),
    Meet(Box<Term>, Box<Term>),
    Compose(Box<Term>, Box<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Term {
    /// Operators, constants and variables; parentheses are not counted.
    pub fn size(&self) -> usize {
        match self {
            Term::Zero | Term::One | Term::Identity | Term::Var(_) => 1,
            Term::Complement(t) | Term::Converse(t) => 1 + t.size(),
            Term::Join(a, b) | Term::Meet(a, b) | Term::Compose(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn variables(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Complement(t) | Term::Converse(t) => t.variables(out),
            Term::Join(a, b) | Term::Meet(a, b) | Term::Compose(a, b) => {
                a.variables(out);
                b.variables(out);
            }
            _ => {}
        }
    }

    /// Evaluates in the complex algebra of `s`.
    pub fn eval_complex(
        &self,
        s: &AtomStructure,
        assignment: &BTreeMap<String, AtomSet>,
    ) -> Result<AtomSet> {
        Ok(match self {
            Term::Zero => s.empty_set(),
            Term::One => s.full_set(),
            Term::Identity => s.identity().clone(),
            Term::Var(v) => assignment
                .get(v)
                .cloned()
                .ok_or_else(|| Error::UnassignedVariable(v.clone()))?,
            Term::Complement(t) => s.complement_set(&t.eval_complex(s, assignment)?),
            Term::Converse(t) => s.converse_set(&t.eval_complex(s, assignment)?),
            Term::Join(a, b) => a
                .eval_complex(s, assignment)?
                .union(&b.eval_complex(s, assignment)?),
            Term::Meet(a, b) => a
                .eval_complex(s, assignment)?
                .intersection(&b.eval_complex(s, assignment)?),
            Term::Compose(a, b) => s.compose_sets(
                &a.eval_complex(s, assignment)?,
                &b.eval_complex(s, assignment)?,
            ),
        })
    }
}

impl Equation {
    pub fn size(&self) -> usize {
        self.lhs.size() + self.rhs.size()
    }

    pub fn variables(&self) -> Vec<String> {
        let mut v = BTreeSet::new();
        self.lhs.variables(&mut v);
        self.rhs.variables(&mut v);
        v.into_iter().collect()
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Zero => write!(f, "0"),
            Term::One => write!(f, "1"),
            Term::Identity => write!(f, "1'"),
            Term::Var(v) => write!(f, "{v}"),
            // A leading `-` takes a whole composition, so the complement
            // carries its own parentheses.
            Term::Complement(t) => write!(f, "(-{t})"),
            Term::Converse(t) => write!(f, "{t}^"),
            Term::Join(a, b) => write!(f, "({a} + {b})"),
            Term::Meet(a, b) => write!(f, "({a} . {b})"),
            Term::Compose(a, b) => write!(f, "({a} ; {b})"),
        }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", Bare(&self.lhs), Bare(&self.rhs))
    }
}

/// A term printed without its outermost parentheses.
struct Bare<'a>(&'a Term);

impl fmt::Display for Bare<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Term::Join(a, b) => write!(f, "{a} + {b}"),
            Term::Meet(a, b) => write!(f, "{a} . {b}"),
            Term::Compose(a, b) => write!(f, "{a} ; {b}"),
            t => write!(f, "{t}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Zero,
    One,
    Identity,
    Ident(String),
    Plus,
    Dot,
    Minus,
    Semi,
    Caret,
    LParen,
    RParen,
    Eq,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0' => Tok::Zero,
            '1' => {
                if matches!(chars.get(i + 1), Some('\'' | '′')) {
                    i += 1;
                    Tok::Identity
                } else {
                    Tok::One
                }
            }
            '+' => Tok::Plus,
            '.' | '·' | '*' => Tok::Dot,
            '-' | '−' => Tok::Minus,
            ';' => Tok::Semi,
            '^' | '˘' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '=' => Tok::Eq,
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i + 1 < chars.len() && (chars[i + 1].is_alphanumeric() || chars[i + 1] == '_') {
                    i += 1;
                }
                Tok::Ident(chars[start..=i].iter().collect())
            }
            other => {
                return Err(Error::Syntax {
                    column: col,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((col, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(c, _)| *c)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            column: self.column(),
            message: message.into(),
        })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Term> {
        let mut t = self.meet()?;
        while self.eat(&Tok::Plus) {
            t = Term::Join(Box::new(t), Box::new(self.meet()?));
        }
        Ok(t)
    }

    fn meet(&mut self) -> Result<Term> {
        let mut t = self.unary()?;
        while self.eat(&Tok::Dot) {
            t = Term::Meet(Box::new(t), Box::new(self.unary()?));
        }
        Ok(t)
    }

    fn unary(&mut self) -> Result<Term> {
        if self.eat(&Tok::Minus) {
            return Ok(Term::Complement(Box::new(self.unary()?)));
        }
        self.composition()
    }

    fn composition(&mut self) -> Result<Term> {
        let mut t = self.postfix()?;
        while self.eat(&Tok::Semi) {
            t = Term::Compose(Box::new(t), Box::new(self.operand()?));
        }
        Ok(t)
    }

    fn operand(&mut self) -> Result<Term> {
        if self.eat(&Tok::Minus) {
            return Ok(Term::Complement(Box::new(self.operand()?)));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Term> {
        let mut t = self.primary()?;
        while self.eat(&Tok::Caret) {
            t = Term::Converse(Box::new(t));
        }
        Ok(t)
    }

    fn primary(&mut self) -> Result<Term> {
        let t = match self.peek().cloned() {
            Some(Tok::Zero) => Term::Zero,
            Some(Tok::One) => Term::One,
            Some(Tok::Identity) => Term::Identity,
            Some(Tok::Ident(v)) => Term::Var(v),
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.sum()?;
                if !self.eat(&Tok::RParen) {
                    return self.error("expected `)`");
                }
                return Ok(t);
            }
            Some(other) => return self.error(format!("unexpected {}", describe(&other))),
            None => return self.error("unexpected end of input"),
        };
        self.pos += 1;
        Ok(t)
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Plus => "`+`",
        Tok::Dot => "`.`",
        Tok::Minus => "`-`",
        Tok::Semi => "`;`",
        Tok::Caret => "`^`",
        Tok::RParen => "`)`",
        Tok::Eq => "`=`",
        _ => "token",
    }
}

fn parser(text: &str) -> Result<Parser> {
    Ok(Parser {
        toks: lex(text)?,
        pos: 0,
        end: text.chars().count() + 1,
    })
}

pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = parser(text)?;
    let t = p.sum()?;
    if p.pos != p.toks.len() {
        return p.error("trailing input");
    }
    Ok(t)
}

pub fn parse_equation(text: &str) -> Result<Equation> {
    let mut p = parser(text)?;
    let lhs = p.sum()?;
    if !p.eat(&Tok::Eq) {
        return p.error("expected `=`");
    }
    let rhs = p.sum()?;
    if p.pos != p.toks.len() {
        return p.error("trailing input");
    }
    Ok(Equation { lhs, rhs })
}
