// Recursive-descent parser for the formula grammar.
//
//   iff     := implies ("<->" implies)*      left-assoc
//   implies := or ("->" implies)?            right-assoc
//   or      := and ("|" and)*
//   and     := unary ("&" unary)*
//   unary   := "!" unary | primary
//   primary := ATOM | "true" | "false" | "(" iff ")"

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::formula::{Atom, Formula};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(name) => format!("atom `{name}`"),
            Tok::True => "`true`".to_string(),
            Tok::False => "`false`".to_string(),
            Tok::Not => "`!`".to_string(),
            Tok::And => "`&`".to_string(),
            Tok::Or => "`|`".to_string(),
            Tok::Implies => "`->`".to_string(),
            Tok::Iff => "`<->`".to_string(),
            Tok::LParen => "`(`".to_string(),
            Tok::RParen => "`)`".to_string(),
        }
    }
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        position,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'!' => Tok::Not,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Implies
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 2;
                Tok::Iff
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                match &text[start..=i] {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    name => Tok::Ident(name.to_string()),
                }
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character `{ch}`")));
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut lhs = self.implies()?;
        while self.eat(&Tok::Iff) {
            let rhs = self.implies()?;
            lhs = lhs.iff(rhs);
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.implies()?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Or) {
            lhs = lhs.or(self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::And) {
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat(&Tok::Not) {
            return Ok(self.unary()?.negate());
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula> {
        let at = self.offset();
        let Some(tok) = self.peek().cloned() else {
            return Err(syntax(at, "unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Tok::Ident(name) => Ok(Formula::Var(Atom::new(name))),
            Tok::True => Ok(Formula::Const(true)),
            Tok::False => Ok(Formula::Const(false)),
            Tok::LParen => {
                let inner = self.iff()?;
                if !self.eat(&Tok::RParen) {
                    return Err(syntax(self.offset(), "expected `)`"));
                }
                Ok(inner)
            }
            other => Err(syntax(at, format!("unexpected {}", other.describe()))),
        }
    }
}

pub(crate) fn parse(text: &str) -> Result<Formula> {
    let tokens = lex(text)?;
    if tokens.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
    };
    let formula = parser.iff()?;
    if let Some(tok) = parser.peek() {
        return Err(syntax(parser.offset(), format!("unexpected {}", tok.describe())));
    }
    Ok(formula)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Formula {
        Formula::var(s)
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(parse("!a | (b & !c)").unwrap(), !v("a") | (v("b") & !v("c")));
        assert_eq!(parse("true").unwrap(), Formula::Const(true));
        assert_eq!(parse("a -> b").unwrap(), !v("a") | v("b"));
    }

    #[test]
    fn biconditional_expansion() {
        let expected = (!v("a") | v("b")) & (!v("b") | v("a"));
        assert_eq!(parse("a <-> b").unwrap(), expected);
    }

    #[test]
    fn implication_is_right_associative() {
        assert_eq!(parse("a -> b -> c").unwrap(), !v("a") | (!v("b") | v("c")));
    }

    #[test]
    fn precedence() {
        assert_eq!(parse("a | b & c").unwrap(), v("a") | (v("b") & v("c")));
        assert_eq!(parse("!a & b").unwrap(), !v("a") & v("b"));
        assert_eq!(parse("a & b | c -> d").unwrap(), !((v("a") & v("b")) | v("c")) | v("d"));
    }

    #[test]
    fn errors() {
        assert_eq!(parse("   "), Err(Error::EmptyInput));
        assert!(matches!(parse("a &"), Err(Error::Syntax { position: 3, .. })));
        assert!(matches!(parse("(a | b"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("a $ b"), Err(Error::Syntax { position: 2, .. })));
        assert!(matches!(parse("a b"), Err(Error::Syntax { position: 2, .. })));
        assert!(matches!(parse("a - b"), Err(Error::Syntax { position: 2, .. })));
    }

    #[test]
    fn identifiers() {
        assert_eq!(parse("_x1 & truex").unwrap(), v("_x1") & v("truex"));
    }
}
