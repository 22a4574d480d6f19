//! Graph expressions used on the command line.
//!
//! ```text
//! expr    := term ( "x" term )*          product, left-associative
//! term    := primary ( "^" K )*          K-fold Cartesian power
//! primary := atom | "(" expr ")"
//! atom    := complete:M | path:M | cycle:M | petersen | file:PATH
//! ```
//!
//! The product operator `x` must be surrounded by whitespace.

use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::graph::{generate, parse_graph, petersen, Family, Graph, ProductSpec};
use crate::profile::{profile_bruteforce, profile_closed_form, IsoProfile};

pub const GRAMMAR: &str = "SPEC := complete:M | path:M | cycle:M | petersen | file:PATH | SPEC^K | SPEC x SPEC | (SPEC)";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Family(Family, usize),
    Petersen,
    File(PathBuf),
}

/// One factor of a parsed expression.
#[derive(Debug, Clone)]
pub struct Factor {
    pub source: Source,
    pub graph: Graph,
}

impl Factor {
    /// Exact profile, from the closed form when the factor is a standard family.
    pub fn profile(&self) -> Result<IsoProfile> {
        match self.source {
            Source::Family(f, m) => profile_closed_form(f, m),
            _ => profile_bruteforce(&self.graph),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GraphExpr {
    pub factors: Vec<Factor>,
}

impl GraphExpr {
    pub fn parse(text: &str) -> Result<Self> {
        let tokens = tokenize(text)?;
        let mut parser = Parser { tokens, pos: 0 };
        let factors = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(syntax(format!("unexpected token {:?}", parser.tokens[parser.pos])));
        }
        Ok(GraphExpr { factors })
    }

    pub fn spec(&self) -> ProductSpec {
        ProductSpec::new(self.factors.iter().map(|f| f.graph.clone()).collect())
            .expect("expressions have at least one factor")
    }

    /// The single family graph `K_m`, `P_m` or `C_m` shared by every factor, if any.
    pub fn homogeneous_family(&self) -> Option<(Family, usize)> {
        let first = match self.factors[0].source {
            Source::Family(f, m) => (f, m),
            _ => return None,
        };
        self.factors
            .iter()
            .all(|f| f.source == Source::Family(first.0, first.1))
            .then_some(first)
    }

    /// True if every factor is the same graph.
    pub fn is_power(&self) -> bool {
        self.factors.iter().all(|f| f.graph == self.factors[0].graph)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Word(String),
    Times,
    Caret,
    Open,
    Close,
}

fn syntax(message: String) -> Error {
    Error::InvalidParameter(format!("{message}; grammar: {GRAMMAR}"))
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut word = String::new();
    let flush = |word: &mut String, tokens: &mut Vec<Token>| {
        if !word.is_empty() {
            let w = std::mem::take(word);
            tokens.push(if w == "x" { Token::Times } else { Token::Word(w) });
        }
    };
    for c in text.chars() {
        match c {
            '(' | ')' | '^' => {
                flush(&mut word, &mut tokens);
                tokens.push(match c {
                    '(' => Token::Open,
                    ')' => Token::Close,
                    _ => Token::Caret,
                });
            }
            c if c.is_whitespace() => flush(&mut word, &mut tokens),
            c => word.push(c),
        }
    }
    flush(&mut word, &mut tokens);
    if tokens.is_empty() {
        return Err(syntax("empty graph expression".into()));
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Vec<Factor>> {
        let mut factors = self.term()?;
        while self.peek() == Some(&Token::Times) {
            self.pos += 1;
            factors.extend(self.term()?);
        }
        Ok(factors)
    }

    fn term(&mut self) -> Result<Vec<Factor>> {
        let mut factors = self.primary()?;
        while self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            let k = match self.next() {
                Some(Token::Word(w)) => w
                    .parse::<usize>()
                    .ok()
                    .filter(|&k| k > 0)
                    .ok_or_else(|| syntax(format!("bad exponent {w:?}")))?,
                other => return Err(syntax(format!("expected exponent, got {other:?}"))),
            };
            let base = factors.clone();
            for _ in 1..k {
                factors.extend(base.iter().cloned());
            }
        }
        Ok(factors)
    }

    fn primary(&mut self) -> Result<Vec<Factor>> {
        match self.next() {
            Some(Token::Open) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::Close) => Ok(inner),
                    other => Err(syntax(format!("expected ')', got {other:?}"))),
                }
            }
            Some(Token::Word(w)) => Ok(vec![atom(&w)?]),
            other => Err(syntax(format!("expected a graph, got {other:?}"))),
        }
    }
}

fn atom(word: &str) -> Result<Factor> {
    if word == "petersen" {
        return Ok(Factor {
            source: Source::Petersen,
            graph: petersen(),
        });
    }
    let (kind, arg) = word
        .split_once(':')
        .ok_or_else(|| syntax(format!("unknown graph {word:?}")))?;
    if kind == "file" {
        let path = PathBuf::from(arg);
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let graph = parse_graph(&text)?.with_label(word);
        return Ok(Factor {
            source: Source::File(path),
            graph,
        });
    }
    let family: Family = kind.parse().map_err(|_| syntax(format!("unknown graph family {kind:?}")))?;
    let m: usize = arg
        .parse()
        .map_err(|_| syntax(format!("bad vertex count {arg:?}")))?;
    Ok(Factor {
        source: Source::Family(family, m),
        graph: generate(family, m)?,
    })
}

/// Parses a log-size such as `2.5`, `log(16)` or `4*log(2)`; factors multiply.
pub fn parse_log_size(text: &str) -> Result<f64> {
    let bad = || Error::InvalidParameter(format!("bad log-size expression {text:?}; use X, log(M) or K*log(M)"));
    let mut value = 1.0;
    for part in text.split('*') {
        let part = part.trim();
        let v = if let Some(inner) = part.strip_prefix("log(").and_then(|r| r.strip_suffix(')')) {
            let arg: f64 = inner.trim().parse().map_err(|_| bad())?;
            if arg <= 0.0 {
                return Err(bad());
            }
            arg.ln()
        } else {
            part.parse::<f64>().map_err(|_| bad())?
        };
        value *= v;
    }
    if !value.is_finite() {
        return Err(bad());
    }
    Ok(value)
}
