//! Recursive-descent parser for the concrete syntax.
//!
//! Grammar: atoms `ident` (proposition) and `?ident` (variable); prefix
//! `!`, `K<i>`, `A<i>`, `X<i>` bind tightest; infix `&`, then `|`, then
//! right-associative `->`, then `<->`; `forall ?x . body` and
//! `exists ?x . body` scope maximally rightward; parentheses override.

use super::Formula;
use std::fmt;

/// Syntax error with 1-based line/column position.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.msg)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Var(String),
    Modal(char, u32), // K/A/X with agent index
    Not,
    AndOp,
    OrOp,
    Implies,
    Iff,
    Forall,
    Exists,
    Dot,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0, line: 1, col: 1 }
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError { line: self.line, col: self.col, msg: msg.into() }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.src.get(self.pos).copied()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.bump();
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
        let mut out = Vec::new();
        loop {
            while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
                self.bump();
            }
            let (line, col) = (self.line, self.col);
            let Some(c) = self.peek() else { break };
            let tok = match c {
                b'(' => {
                    self.bump();
                    Tok::LParen
                }
                b')' => {
                    self.bump();
                    Tok::RParen
                }
                b'.' => {
                    self.bump();
                    Tok::Dot
                }
                b'!' => {
                    self.bump();
                    Tok::Not
                }
                b'&' => {
                    self.bump();
                    Tok::AndOp
                }
                b'|' => {
                    self.bump();
                    Tok::OrOp
                }
                b'-' => {
                    self.bump();
                    if self.peek() == Some(b'>') {
                        self.bump();
                        Tok::Implies
                    } else {
                        return Err(self.err("expected '>' after '-'"));
                    }
                }
                b'<' => {
                    self.bump();
                    if self.peek() == Some(b'-') {
                        self.bump();
                        if self.peek() == Some(b'>') {
                            self.bump();
                            Tok::Iff
                        } else {
                            return Err(self.err("expected '>' after '<-'"));
                        }
                    } else {
                        return Err(self.err("expected '-' after '<'"));
                    }
                }
                b'?' => {
                    self.bump();
                    let name = self.ident();
                    if name.is_empty() {
                        return Err(self.err("expected identifier after '?'"));
                    }
                    Tok::Var(name)
                }
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    let name = self.ident();
                    match name.as_str() {
                        "forall" => Tok::Forall,
                        "exists" => Tok::Exists,
                        _ => {
                            // K<i>, A<i>, X<i> with a digit suffix are modal
                            // operators; anything else is a proposition.
                            let mut chars = name.chars();
                            let head = chars.next().unwrap();
                            let rest: String = chars.collect();
                            if matches!(head, 'K' | 'A' | 'X')
                                && !rest.is_empty()
                                && rest.chars().all(|c| c.is_ascii_digit())
                            {
                                let i: u32 = rest.parse().map_err(|_| {
                                    ParseError { line, col, msg: format!("bad agent index in {name}") }
                                })?;
                                if i == 0 {
                                    return Err(ParseError {
                                        line,
                                        col,
                                        msg: "agent indices start at 1".into(),
                                    });
                                }
                                Tok::Modal(head, i)
                            } else {
                                Tok::Ident(name)
                            }
                        }
                    }
                }
                other => return Err(self.err(format!("unexpected character '{}'", other as char))),
            };
            out.push((tok, line, col));
        }
        Ok(out)
    }
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    n_agents: Option<u32>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map(|(_, l, c)| (*l, *c))
            .unwrap_or((1, 1))
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError { line, col, msg: msg.into() }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: &Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(tok) {
            self.bump();
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    // <-> (lowest, non-associative: nested biconditionals need parens)
    fn parse_expr(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.parse_implies()?;
        if self.peek() == Some(&Tok::Iff) {
            self.bump();
            let rhs = self.parse_implies()?;
            Ok(Formula::iff(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    // -> (right-associative)
    fn parse_implies(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.parse_or()?;
        if self.peek() == Some(&Tok::Implies) {
            self.bump();
            let rhs = self.parse_implies()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn parse_or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.parse_and()?;
        while self.peek() == Some(&Tok::OrOp) {
            self.bump();
            let rhs = self.parse_and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.parse_unary()?;
        while self.peek() == Some(&Tok::AndOp) {
            self.bump();
            let rhs = self.parse_unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Not) => {
                self.bump();
                Ok(Formula::not(self.parse_unary()?))
            }
            Some(Tok::Modal(op, i)) => {
                self.bump();
                if let Some(n) = self.n_agents {
                    if i > n {
                        return Err(self.err(format!("agent index {i} exceeds agent count {n}")));
                    }
                }
                let body = self.parse_unary()?;
                Ok(match op {
                    'K' => Formula::k(i, body),
                    'A' => Formula::a(i, body),
                    _ => Formula::x(i, body),
                })
            }
            Some(Tok::Forall) | Some(Tok::Exists) => {
                let is_forall = self.peek() == Some(&Tok::Forall);
                self.bump();
                let v = match self.bump() {
                    Some(Tok::Var(v)) => v,
                    _ => return Err(self.err("expected variable ('?name') after quantifier")),
                };
                self.expect(&Tok::Dot, "'.' after quantified variable")?;
                // Quantifiers scope maximally rightward: grab a full expression.
                let body = self.parse_expr()?;
                Ok(if is_forall {
                    Formula::forall(&v, body)
                } else {
                    Formula::exists(&v, body)
                })
            }
            Some(Tok::Ident(name)) => {
                self.bump();
                Ok(Formula::Prop(name))
            }
            Some(Tok::Var(name)) => {
                self.bump();
                Ok(Formula::Var(name))
            }
            Some(Tok::LParen) => {
                self.bump();
                let f = self.parse_expr()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(f)
            }
            _ => Err(self.err("expected a formula")),
        }
    }
}

/// Parse a formula. With `n_agents = Some(n)`, agent indices above `n` are
/// rejected; with `None`, any positive index is accepted.
pub fn parse_with_agents(text: &str, n_agents: Option<u32>) -> Result<Formula, ParseError> {
    let toks = Lexer::new(text).tokens()?;
    let mut p = Parser { toks, pos: 0, n_agents };
    let f = p.parse_expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input after formula"));
    }
    Ok(f)
}

/// Parse a formula with no agent-count restriction.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    parse_with_agents(text, None)
}
