use thiserror::Error;

use super::Term;
use crate::lattice::SymDiffKind;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownOperator(String),
    /// Two symmetric differences chained without parentheses.
    AmbiguousChain,
}

/// A parse failure at byte offset `pos`.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("at position {pos}: {}", describe(.kind))]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

fn describe(kind: &ParseErrorKind) -> String {
    match kind {
        ParseErrorKind::Syntax(m) => m.clone(),
        ParseErrorKind::UnknownOperator(op) => format!("unknown operator `{op}`"),
        ParseErrorKind::AmbiguousChain => {
            "symmetric differences are not associative; add parentheses".to_string()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Var(String),
    Zero,
    One,
    Prime,
    And,
    Or,
    Sym(SymDiffKind),
    LParen,
    RParen,
    Eq,
    End,
}

fn err(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        pos,
        kind: ParseErrorKind::Syntax(msg.into()),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'\'' => Tok::Prime,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'=' => Tok::Eq,
            b'<' => {
                let end = text[i..]
                    .find('>')
                    .map(|k| i + k + 1)
                    .ok_or_else(|| err(i, "unterminated operator"))?;
                let op = &text[i..end];
                i = end;
                let kind = SymDiffKind::from_token(op).ok_or(ParseError {
                    pos: start,
                    kind: ParseErrorKind::UnknownOperator(op.to_string()),
                })?;
                out.push((Tok::Sym(kind), start));
                continue;
            }
            b'0' | b'1' => {
                if bytes
                    .get(i + 1)
                    .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
                {
                    return Err(err(i, "constants are `0` and `1`"));
                }
                if c == b'0' {
                    Tok::Zero
                } else {
                    Tok::One
                }
            }
            b'a'..=b'z' => {
                let mut end = i + 1;
                while end < bytes.len()
                    && (bytes[end].is_ascii_lowercase()
                        || bytes[end].is_ascii_digit()
                        || bytes[end] == b'_')
                {
                    end += 1;
                }
                out.push((Tok::Var(text[i..end].to_string()), start));
                i = end;
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    pos: i,
                    kind: ParseErrorKind::UnknownOperator(ch.to_string()),
                });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let lhs = self.join()?;
        if let Tok::Sym(kind) = *self.peek() {
            self.bump();
            let rhs = self.join()?;
            if let Tok::Sym(_) = self.peek() {
                return Err(ParseError {
                    pos: self.pos(),
                    kind: ParseErrorKind::AmbiguousChain,
                });
            }
            return Ok(Term::sym(kind, lhs, rhs));
        }
        Ok(lhs)
    }

    fn join(&mut self) -> Result<Term, ParseError> {
        let mut t = self.meet()?;
        while *self.peek() == Tok::Or {
            self.bump();
            t = Term::join(t, self.meet()?);
        }
        Ok(t)
    }

    fn meet(&mut self) -> Result<Term, ParseError> {
        let mut t = self.postfix()?;
        while *self.peek() == Tok::And {
            self.bump();
            t = Term::meet(t, self.postfix()?);
        }
        Ok(t)
    }

    fn postfix(&mut self) -> Result<Term, ParseError> {
        let mut t = self.atom()?;
        while *self.peek() == Tok::Prime {
            self.bump();
            t = Term::ortho(t);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Var(v) => Ok(Term::Var(v)),
            Tok::Zero => Ok(Term::Zero),
            Tok::One => Ok(Term::One),
            Tok::LParen => {
                let t = self.term()?;
                if self.bump() != Tok::RParen {
                    return Err(err(self.toks[self.at.saturating_sub(1)].1, "expected `)`"));
                }
                Ok(t)
            }
            Tok::End => Err(err(pos, "unexpected end of input")),
            other => Err(err(pos, format!("unexpected {}", tok_name(&other)))),
        }
    }
}

fn tok_name(t: &Tok) -> String {
    match t {
        Tok::Var(v) => format!("variable `{v}`"),
        Tok::Zero => "`0`".into(),
        Tok::One => "`1`".into(),
        Tok::Prime => "`'`".into(),
        Tok::And => "`&`".into(),
        Tok::Or => "`|`".into(),
        Tok::Sym(k) => format!("`{}`", k.token()),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Eq => "`=`".into(),
        Tok::End => "end of input".into(),
    }
}

/// Parses a single term.
pub fn parse(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let t = p.term()?;
    match p.peek() {
        Tok::End => Ok(t),
        other => Err(err(p.pos(), format!("unexpected {}", tok_name(other)))),
    }
}

/// Parses `lhs = rhs`.
pub fn parse_equation(text: &str) -> Result<(Term, Term), ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let lhs = p.term()?;
    if *p.peek() != Tok::Eq {
        return Err(err(p.pos(), "expected `=`"));
    }
    p.bump();
    let rhs = p.term()?;
    match p.peek() {
        Tok::End => Ok((lhs, rhs)),
        other => Err(err(p.pos(), format!("unexpected {}", tok_name(other)))),
    }
}
