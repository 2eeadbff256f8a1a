use std::fmt;

use thiserror::Error;

use super::formula::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at position {pos}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    True,
    False,
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    Always,
    Eventually,
    Next,
    Until,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::True => write!(f, "`True`"),
            Tok::False => write!(f, "`False`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Not => write!(f, "`~`"),
            Tok::And => write!(f, "`/\\`"),
            Tok::Or => write!(f, "`\\/`"),
            Tok::Implies => write!(f, "`->`"),
            Tok::Always => write!(f, "`[]`"),
            Tok::Eventually => write!(f, "`<>`"),
            Tok::Next => write!(f, "`O`"),
            Tok::Until => write!(f, "`U`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let two = b.get(i..i + 2);
        let sym = match two {
            Some(b"/\\") => Some(Tok::And),
            Some(b"\\/") => Some(Tok::Or),
            Some(b"->") => Some(Tok::Implies),
            Some(b"[]") => Some(Tok::Always),
            Some(b"<>") => Some(Tok::Eventually),
            _ => None,
        };
        if let Some(t) = sym {
            out.push((i, t));
            i += 2;
            continue;
        }
        match c {
            b'~' => out.push((i, Tok::Not)),
            b'(' => out.push((i, Tok::LParen)),
            b')' => out.push((i, Tok::RParen)),
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < b.len() {
                    let c = b[i];
                    let hyphen =
                        c == b'-' && b.get(i + 1).is_some_and(|n| n.is_ascii_alphanumeric());
                    if c.is_ascii_alphanumeric() || c == b'_' || hyphen {
                        i += 1;
                    } else {
                        break;
                    }
                }
                let word = &src[start..i];
                let t = match word {
                    "True" => Tok::True,
                    "False" => Tok::False,
                    "O" => Tok::Next,
                    "U" => Tok::Until,
                    w => Tok::Ident(w.to_string()),
                };
                out.push((start, t));
                continue;
            }
            _ => {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    pos: i,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        }
        i += 1;
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError {
            pos: self.pos(),
            message: format!("expected {expected}, found {}", self.peek()),
        }
    }

    // implication: right associative, loosest
    fn implies(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            return Ok(Formula::implies(lhs, self.implies()?));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.until()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Formula::and(lhs, self.until()?);
        }
        Ok(lhs)
    }

    fn until(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        if *self.peek() == Tok::Until {
            self.bump();
            return Ok(Formula::until(lhs, self.until()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let wrap: fn(Formula) -> Formula = match self.peek() {
            Tok::Not => Formula::not,
            Tok::Always => Formula::always,
            Tok::Eventually => Formula::eventually,
            Tok::Next => Formula::next,
            _ => return self.atom(),
        };
        self.bump();
        Ok(wrap(self.unary()?))
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::True => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::False => {
                self.bump();
                Ok(Formula::False)
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::Prop(name))
            }
            Tok::LParen => {
                self.bump();
                let f = self.implies()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error("`)`"));
                }
                self.bump();
                Ok(f)
            }
            _ => Err(self.error("a formula")),
        }
    }
}

/// Parses the surface syntax `True False ~ /\ \/ -> [] <> O U ( )` with
/// proposition identifiers. Unary operators bind tightest, then `U` (right
/// associative), `/\`, `\/` and `->` (right associative).
pub fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        at: 0,
    };
    let f = p.implies()?;
    if *p.peek() != Tok::End {
        return Err(p.error("end of input"));
    }
    Ok(f)
}
