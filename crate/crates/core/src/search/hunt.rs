//! Boolean property expressions and the search for structures satisfying
//! them.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::suites::{evaluate_atom, is_known_atom, Context};
use super::{enumerate_structures, EnumerationSpec};
use crate::error::{AlgebraError, Result};
use crate::structure::{FiniteStructure, Kind, StructureFile};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Atom(String),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
}

impl Expr {
    /// Atoms count as true only when their verdict is `Holds`.
    pub fn eval(&self, s: &FiniteStructure, ctx: &Context) -> Result<bool> {
        Ok(match self {
            Expr::Atom(name) => evaluate_atom(s, name, ctx)?.is_holds(),
            Expr::Not(e) => !e.eval(s, ctx)?,
            Expr::And(a, b) => a.eval(s, ctx)? && b.eval(s, ctx)?,
            Expr::Or(a, b) => a.eval(s, ctx)? || b.eval(s, ctx)?,
        })
    }

    pub fn atoms(&self) -> Vec<&str> {
        match self {
            Expr::Atom(a) => vec![a.as_str()],
            Expr::Not(e) => e.atoms(),
            Expr::And(a, b) | Expr::Or(a, b) => {
                let mut v = a.atoms();
                v.extend(b.atoms());
                v
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Atom(a) => f.write_str(a),
            Expr::Not(e) => write!(f, "not {e}"),
            Expr::And(a, b) => write!(f, "({a} and {b})"),
            Expr::Or(a, b) => write!(f, "({a} or {b})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    And,
    Or,
    Not,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' | ')' | '!' => {
                chars.next();
                tokens.push(match c {
                    '(' => Token::Open,
                    ')' => Token::Close,
                    _ => Token::Not,
                });
            }
            '&' | '|' => {
                chars.next();
                if chars.next().map(|p| p.1) != Some(c) {
                    return Err(AlgebraError::input(format!("expected `{c}{c}` at offset {i}")));
                }
                tokens.push(if c == '&' { Token::And } else { Token::Or });
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut word = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if !(c.is_ascii_alphanumeric() || c == '_') {
                        break;
                    }
                    word.push(c);
                    chars.next();
                }
                tokens.push(match word.as_str() {
                    "and" => Token::And,
                    "or" => Token::Or,
                    "not" => Token::Not,
                    _ => Token::Ident(word),
                });
            }
            other => return Err(AlgebraError::input(format!("unexpected `{other}` at offset {i}"))),
        }
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

    fn or(&mut self) -> Result<Expr> {
        let mut e = self.and()?;
        while self.peek() == Some(&Token::Or) {
            self.pos += 1;
            e = Expr::Or(Box::new(e), Box::new(self.and()?));
        }
        Ok(e)
    }

    fn and(&mut self) -> Result<Expr> {
        let mut e = self.unary()?;
        while self.peek() == Some(&Token::And) {
            self.pos += 1;
            e = Expr::And(Box::new(e), Box::new(self.unary()?));
        }
        Ok(e)
    }

    fn unary(&mut self) -> Result<Expr> {
        let tok = self.peek().cloned();
        self.pos += 1;
        match tok {
            Some(Token::Not) => Ok(Expr::Not(Box::new(self.unary()?))),
            Some(Token::Open) => {
                let e = self.or()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(AlgebraError::input("missing `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Token::Ident(name)) => {
                if !is_known_atom(&name) {
                    return Err(AlgebraError::input(format!("unknown property `{name}`")));
                }
                Ok(Expr::Atom(name))
            }
            Some(t) => Err(AlgebraError::input(format!("unexpected {t:?}"))),
            None => Err(AlgebraError::input("expression ends too early")),
        }
    }
}

/// Parses `and`/`or`/`not` (or `&&`/`||`/`!`) over property names, with
/// parentheses; `not` binds tightest, then `and`, then `or`.
pub fn parse_expression(text: &str) -> Result<Expr> {
    let mut p = Parser { tokens: tokenize(text)?, pos: 0 };
    let e = p.or()?;
    if let Some(t) = p.peek() {
        return Err(AlgebraError::input(format!("unexpected {t:?} after the expression")));
    }
    Ok(e)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum HuntOutcome {
    Found { order: usize, scanned: usize, structure: StructureFile },
    Exhausted { max_order: usize, scanned: usize },
}

/// Scans isomorphism classes of the given kind by increasing order and
/// returns the first one satisfying `expr`.
pub fn find_counterexample(expr: &Expr, kind: Kind, max_order: usize, ctx: &Context) -> Result<HuntOutcome> {
    let mut scanned = 0;
    for order in 2..=max_order {
        let mut spec = EnumerationSpec::new(kind, order).up_to_iso();
        spec.big = order > super::enumeration_cap(kind);
        let corpus = enumerate_structures(&spec)?;
        let hits: Vec<Result<bool>> = corpus.par_iter().map(|s| expr.eval(s, ctx)).collect();
        for (pos, (s, hit)) in corpus.iter().zip(hits).enumerate() {
            if hit? {
                return Ok(HuntOutcome::Found {
                    order,
                    scanned: scanned + pos + 1,
                    structure: s.to_file(),
                });
            }
        }
        scanned += corpus.len();
    }
    Ok(HuntOutcome::Exhausted { max_order, scanned })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::properties::{is_eversible, is_reversible};

    #[test]
    fn precedence_and_synonyms() {
        let a = parse_expression("eversible and not reversible or entire").unwrap();
        let b = parse_expression("(eversible && !reversible) || entire").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.atoms(), vec!["eversible", "reversible", "entire"]);
    }

    #[test]
    fn unknown_names_and_syntax_errors() {
        assert!(parse_expression("eversible and shiny").unwrap_err().to_string().contains("shiny"));
        assert!(parse_expression("(eversible").is_err());
        assert!(parse_expression("eversible reversible").is_err());
        assert!(parse_expression("eversible & reversible").is_err());
        assert!(parse_expression("").is_err());
    }

    #[test]
    fn eversible_but_not_reversible_semigroup() {
        let e = parse_expression("eversible and not reversible").unwrap();
        let found = find_counterexample(&e, Kind::SemigroupWithZero, 4, &Context::default()).unwrap();
        let HuntOutcome::Found { structure, .. } = found else { panic!("nothing found") };
        let s = structure.into_structure(true).unwrap();
        assert!(is_eversible(&s).is_holds() && !is_reversible(&s).is_holds());
    }

    #[test]
    fn impossible_combinations_are_exhausted() {
        let ctx = Context::default();
        for text in ["reversible and not eversible", "entire and not prime"] {
            let e = parse_expression(text).unwrap();
            let out = find_counterexample(&e, Kind::SemigroupWithZero, 4, &ctx).unwrap();
            assert!(matches!(out, HuntOutcome::Exhausted { max_order: 4, scanned } if scanned > 0));
        }
    }
}
