//! Text format.
//!
//! ```text
//! program := rule*
//! rule    := atom [":-" item ("," item)*] "."
//! item    := ["not"] atom | term "!=" term
//! atom    := ident ["(" term ("," term)* ")"]
//! term    := ident | variable
//! ```
//!
//! Identifiers match `[a-z][A-Za-z0-9_]*`, variables `[A-Z][A-Za-z0-9_]*`.
//! `%` starts a comment running to the end of the line.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Const(String),
    Var(String),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(s) | Term::Var(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceAtom {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl SourceAtom {
    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.args.iter()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BodyItem {
    Literal {
        atom: SourceAtom,
        negated: bool,
    },
    /// `X != Y`, evaluated while grounding.
    Neq(Term, Term),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceRule {
    pub head: SourceAtom,
    pub body: Vec<BodyItem>,
    pub line: usize,
    pub column: usize,
}

/// A parsed program that may still contain variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SourceProgram {
    pub rules: Vec<SourceRule>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Var(String),
    If,
    Comma,
    Dot,
    LParen,
    RParen,
    Neq,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Var(s) => write!(f, "`{s}`"),
            Tok::If => f.write_str("`:-`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Neq => f.write_str("`!=`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: String) -> Error {
    Error::Syntax {
        line,
        column,
        message,
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>, Error> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut bump = |chars: &mut core::iter::Peekable<core::str::Chars<'_>>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        let tok = match c {
            '%' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    bump(&mut chars);
                }
                continue;
            }
            c if c.is_whitespace() => {
                bump(&mut chars);
                continue;
            }
            ',' => {
                bump(&mut chars);
                Tok::Comma
            }
            '.' => {
                bump(&mut chars);
                Tok::Dot
            }
            '(' => {
                bump(&mut chars);
                Tok::LParen
            }
            ')' => {
                bump(&mut chars);
                Tok::RParen
            }
            ':' => {
                bump(&mut chars);
                if chars.peek() != Some(&'-') {
                    return Err(syntax(l, col, "expected `:-`".to_string()));
                }
                bump(&mut chars);
                Tok::If
            }
            '!' => {
                bump(&mut chars);
                if chars.peek() != Some(&'=') {
                    return Err(syntax(l, col, "expected `!=`".to_string()));
                }
                bump(&mut chars);
                Tok::Neq
            }
            c if c.is_ascii_alphabetic() => {
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        word.push(c);
                        bump(&mut chars);
                    } else {
                        break;
                    }
                }
                if c.is_ascii_uppercase() {
                    Tok::Var(word)
                } else {
                    Tok::Ident(word)
                }
            }
            other => return Err(syntax(l, col, format!("unexpected character `{other}`"))),
        };
        out.push(Spanned {
            tok,
            line: l,
            column: col,
        });
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> &Spanned {
        let t = &self.toks[self.pos];
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> Error {
        let t = self.peek();
        syntax(
            t.line,
            t.column,
            format!("expected {expected}, found {}", t.tok),
        )
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), Error> {
        if self.peek().tok == tok {
            self.next();
            Ok(())
        } else {
            Err(self.error(what))
        }
    }

    fn term(&mut self) -> Result<Term, Error> {
        match &self.peek().tok {
            Tok::Ident(s) if s != "not" => {
                let t = Term::Const(s.clone());
                self.next();
                Ok(t)
            }
            Tok::Var(s) => {
                let t = Term::Var(s.clone());
                self.next();
                Ok(t)
            }
            _ => Err(self.error("a term")),
        }
    }

    fn atom(&mut self) -> Result<SourceAtom, Error> {
        let predicate = match &self.peek().tok {
            Tok::Ident(s) if s != "not" => s.clone(),
            _ => return Err(self.error("an atom")),
        };
        self.next();
        let mut args = Vec::new();
        if self.peek().tok == Tok::LParen {
            self.next();
            args.push(self.term()?);
            while self.peek().tok == Tok::Comma {
                self.next();
                args.push(self.term()?);
            }
            self.expect(Tok::RParen, "`)`")?;
        }
        Ok(SourceAtom { predicate, args })
    }

    fn item(&mut self) -> Result<BodyItem, Error> {
        match &self.peek().tok {
            Tok::Ident(s) if s == "not" => {
                self.next();
                let atom = self.atom()?;
                Ok(BodyItem::Literal {
                    atom,
                    negated: true,
                })
            }
            Tok::Var(_) => {
                let left = self.term()?;
                self.expect(Tok::Neq, "`!=`")?;
                let right = self.term()?;
                Ok(BodyItem::Neq(left, right))
            }
            _ => {
                let atom = self.atom()?;
                if self.peek().tok == Tok::Neq && atom.args.is_empty() {
                    self.next();
                    let right = self.term()?;
                    return Ok(BodyItem::Neq(Term::Const(atom.predicate), right));
                }
                Ok(BodyItem::Literal {
                    atom,
                    negated: false,
                })
            }
        }
    }

    fn rule(&mut self) -> Result<SourceRule, Error> {
        let (line, column) = (self.peek().line, self.peek().column);
        let head = self.atom()?;
        let mut body = Vec::new();
        if self.peek().tok == Tok::If {
            self.next();
            body.push(self.item()?);
            while self.peek().tok == Tok::Comma {
                self.next();
                body.push(self.item()?);
            }
        }
        self.expect(Tok::Dot, "`.`")?;
        Ok(SourceRule {
            head,
            body,
            line,
            column,
        })
    }
}

/// Parses program text. Rules keep their source order.
pub fn parse_program(text: &str) -> Result<SourceProgram, Error> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let mut rules = Vec::new();
    while p.peek().tok != Tok::End {
        rules.push(p.rule()?);
    }
    Ok(SourceProgram { rules })
}
