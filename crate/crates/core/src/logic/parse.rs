//! Recursive-descent parser for the formula grammar.
//!
//! Precedence, tightest first: `!`, `&`, `|`, `->`, `<->`. `&` and `|` are
//! left-associative, `->` and `<->` right-associative. Schemas are written
//! `forall x. body` and may only appear at the top level.

use std::fmt;

use super::{is_predicate_name, Atom, Formula, Schema, Sentence};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedToken { found: String, expected: &'static str },
    UnexpectedEnd { expected: &'static str },
    UnknownConnective(String),
    UnterminatedString,
    InvalidAtom(String),
    NotASchema,
    UnexpectedSchema,
}

/// Syntax error; `position` is a 1-based character column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: ", self.position)?;
        match &self.kind {
            ParseErrorKind::UnexpectedToken { found, expected } => {
                write!(f, "unexpected {found:?}, expected {expected}")
            }
            ParseErrorKind::UnexpectedEnd { expected } => {
                write!(f, "unexpected end of input, expected {expected}")
            }
            ParseErrorKind::UnknownConnective(c) => write!(f, "unknown connective {c:?}"),
            ParseErrorKind::UnterminatedString => write!(f, "unterminated quoted argument"),
            ParseErrorKind::InvalidAtom(msg) => write!(f, "invalid atom: {msg}"),
            ParseErrorKind::NotASchema => write!(f, "expected a `forall` schema"),
            ParseErrorKind::UnexpectedSchema => {
                write!(f, "quantified schema where a ground formula is required")
            }
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Word(String),
    Quoted(String),
    LParen,
    RParen,
    Dot,
    Not,
    And,
    Or,
    Implies,
    Iff,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Word(w) => w.clone(),
            Token::Quoted(q) => format!("\"{q}\""),
            Token::LParen => "(".into(),
            Token::RParen => ")".into(),
            Token::Dot => ".".into(),
            Token::Not => "!".into(),
            Token::And => "&".into(),
            Token::Or => "|".into(),
            Token::Implies => "->".into(),
            Token::Iff => "<->".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        let err = |kind| Err(ParseError { position: pos, kind });
        match c {
            c if c.is_whitespace() => i += 1,
            '(' => {
                out.push((pos, Token::LParen));
                i += 1;
            }
            ')' => {
                out.push((pos, Token::RParen));
                i += 1;
            }
            '.' => {
                out.push((pos, Token::Dot));
                i += 1;
            }
            '!' => {
                out.push((pos, Token::Not));
                i += 1;
            }
            '&' => {
                out.push((pos, Token::And));
                i += 1;
            }
            '|' => {
                out.push((pos, Token::Or));
                i += 1;
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                out.push((pos, Token::Implies));
                i += 2;
            }
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                out.push((pos, Token::Iff));
                i += 3;
            }
            '"' => {
                let mut buf = String::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        None => return err(ParseErrorKind::UnterminatedString),
                        Some('"') => {
                            i += 1;
                            break;
                        }
                        Some('\\') => match chars.get(i + 1) {
                            Some(&e @ ('"' | '\\')) => {
                                buf.push(e);
                                i += 2;
                            }
                            _ => return err(ParseErrorKind::UnterminatedString),
                        },
                        Some(&ch) => {
                            buf.push(ch);
                            i += 1;
                        }
                    }
                }
                out.push((pos, Token::Quoted(buf)));
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((pos, Token::Word(chars[start..i].iter().collect())));
            }
            _ => {
                // Swallow a run of operator-like characters so `=>` or `&&`-style
                // typos are reported as one connective.
                let start = i;
                while i < chars.len()
                    && !chars[i].is_whitespace()
                    && !chars[i].is_ascii_alphanumeric()
                    && !matches!(chars[i], '(' | ')' | '"' | '_')
                {
                    i += 1;
                }
                let text: String = chars[start..i.max(start + 1)].iter().collect();
                return err(ParseErrorKind::UnknownConnective(text));
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn fail<T>(&self, expected: &'static str) -> Result<T, ParseError> {
        let kind = match self.peek() {
            Some(t) => ParseErrorKind::UnexpectedToken { found: t.describe(), expected },
            None => ParseErrorKind::UnexpectedEnd { expected },
        };
        Err(ParseError { position: self.position(), kind })
    }

    fn expect(&mut self, token: Token, expected: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(&token) {
            self.at += 1;
            Ok(())
        } else {
            self.fail(expected)
        }
    }

    fn sentence(&mut self) -> Result<Sentence, ParseError> {
        if matches!(self.peek(), Some(Token::Word(w)) if w.eq_ignore_ascii_case("forall")) {
            let start = self.position();
            self.at += 1;
            let var = match self.next() {
                Some(Token::Word(w)) => w,
                _ => {
                    self.at -= 1;
                    return self.fail("schema variable");
                }
            };
            self.expect(Token::Dot, "`.` after schema variable")?;
            let body = self.iff()?;
            let schema = Schema::new(&var, body).map_err(|e| ParseError {
                position: start,
                kind: ParseErrorKind::InvalidAtom(e.to_string()),
            })?;
            Ok(Sentence::Schema(schema))
        } else {
            Ok(Sentence::Ground(self.iff()?))
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.implication()?;
        if self.peek() == Some(&Token::Iff) {
            self.at += 1;
            let rhs = self.iff()?;
            return Ok(lhs.iff(rhs));
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.peek() == Some(&Token::Implies) {
            self.at += 1;
            let rhs = self.implication()?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.peek() == Some(&Token::Or) {
            self.at += 1;
            lhs = lhs.or(self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Token::And) {
            self.at += 1;
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Token::Not) => {
                self.at += 1;
                Ok(self.unary()?.not())
            }
            Some(Token::LParen) => {
                self.at += 1;
                let inner = self.iff()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Token::Word(w)) if w.eq_ignore_ascii_case("forall") => Err(ParseError {
                position: self.position(),
                kind: ParseErrorKind::UnexpectedSchema,
            }),
            Some(Token::Word(_)) => self.atom(),
            _ => self.fail("atom, `!` or `(`"),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let position = self.position();
        let Some(Token::Word(predicate)) = self.next() else {
            unreachable!("atom() is only entered on a word token")
        };
        if !is_predicate_name(&predicate.to_lowercase()) {
            return Err(ParseError {
                position,
                kind: ParseErrorKind::InvalidAtom(format!("bad predicate name {predicate:?}")),
            });
        }
        self.expect(Token::LParen, "`(` after predicate")?;
        let arg = match self.next() {
            Some(Token::Word(w)) | Some(Token::Quoted(w)) => w,
            _ => {
                self.at -= 1;
                return self.fail("atom argument");
            }
        };
        self.expect(Token::RParen, "`)` closing atom")?;
        Atom::new(&predicate, &arg).map(Formula::Atom).map_err(|e| ParseError {
            position,
            kind: ParseErrorKind::InvalidAtom(e.to_string()),
        })
    }
}

pub fn parse_sentence(text: &str) -> Result<Sentence, ParseError> {
    let tokens = lex(text)?;
    let end = text.chars().count() + 1;
    let mut p = Parser { tokens, at: 0, end };
    let s = p.sentence()?;
    if p.peek().is_some() {
        return p.fail("end of input");
    }
    Ok(s)
}

/// Parse a ground formula; schemas are rejected.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    match parse_sentence(text)? {
        Sentence::Ground(f) => Ok(f),
        Sentence::Schema(_) => {
            Err(ParseError { position: 1, kind: ParseErrorKind::UnexpectedSchema })
        }
    }
}

pub fn parse_schema(text: &str) -> Result<Schema, ParseError> {
    match parse_sentence(text)? {
        Sentence::Schema(s) => Ok(s),
        Sentence::Ground(_) => Err(ParseError { position: 1, kind: ParseErrorKind::NotASchema }),
    }
}
