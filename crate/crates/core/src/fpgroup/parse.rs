//! Text form of presentations.
//!
//! ```text
//! presentation := '<' [ident {',' ident}] '|' [relation {',' relation}] '>'
//! relation     := word ['=' word]          (u = v is stored as u v^-1)
//! word         := factor {['*' | '.'] factor}
//! factor       := primary ['^' integer]
//! primary      := ident | '1' | '(' word ')' | '[' word ',' word ']'
//! ident        := letter {letter | digit | '_' | '\''}
//! ```
//!
//! `[x,y]` is the commutator `x y x^-1 y^-1` and `1` the empty word.
//! Factors are juxtaposed with whitespace. Relations that reduce to the
//! identity are dropped.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::str::FromStr;

use super::{Presentation, Word};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{message} at offset {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic()
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError { offset: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(alloc::format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek_raw() {
            Some(c) if is_ident_start(c) => self.pos += 1,
            _ => return Err(self.err("expected generator name")),
        }
        while let Some(c) = self.peek_raw() {
            if is_ident_char(c) {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        Ok(&self.src[start..self.pos])
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek_raw(), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| ParseError { offset: start, message: "expected integer".to_string() })
    }

    fn at_factor_start(&mut self) -> bool {
        matches!(self.peek(), Some(c) if is_ident_start(c) || c == '(' || c == '[' || c == '1')
    }

    fn word(&mut self, names: &[String]) -> Result<Word, ParseError> {
        let mut w = self.factor(names)?;
        loop {
            if self.eat('*') || self.eat('.') || self.at_factor_start() {
                w = w.mul(&self.factor(names)?);
            } else {
                return Ok(w);
            }
        }
    }

    fn factor(&mut self, names: &[String]) -> Result<Word, ParseError> {
        let base = self.primary(names)?;
        if self.eat('^') {
            let k = self.integer()?;
            Ok(base.pow(k))
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self, names: &[String]) -> Result<Word, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.word(names)?;
                self.expect(')')?;
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let x = self.word(names)?;
                self.expect(',')?;
                let y = self.word(names)?;
                self.expect(']')?;
                Ok(Word::commutator(&x, &y))
            }
            Some('1') => {
                self.pos += 1;
                Ok(Word::identity())
            }
            _ => {
                let start = self.pos;
                let name = self.ident()?;
                names
                    .iter()
                    .position(|g| g == name)
                    .map(Word::generator)
                    .ok_or_else(|| ParseError {
                        offset: start,
                        message: alloc::format!("unknown generator '{name}'"),
                    })
            }
        }
    }

    fn relation(&mut self, names: &[String]) -> Result<Word, ParseError> {
        let lhs = self.word(names)?;
        if self.eat('=') {
            let rhs = self.word(names)?;
            Ok(lhs.mul(&rhs.inverse()))
        } else {
            Ok(lhs)
        }
    }

    /// Parses a presentation starting at the cursor, leaving it after `>`.
    fn presentation(&mut self) -> Result<Presentation, ParseError> {
        self.expect('<')?;
        let mut names: Vec<String> = Vec::new();
        if self.peek() != Some('|') {
            loop {
                let at = self.pos;
                let name = self.ident()?;
                if names.iter().any(|n| n == name) {
                    return Err(ParseError {
                        offset: at,
                        message: alloc::format!("duplicate generator '{name}'"),
                    });
                }
                names.push(name.to_string());
                if !self.eat(',') {
                    break;
                }
            }
        }
        self.expect('|')?;
        let mut relators = Vec::new();
        if self.peek() != Some('>') {
            loop {
                relators.push(self.relation(&names)?);
                if !self.eat(',') {
                    break;
                }
            }
        }
        self.expect('>')?;
        Presentation::new(names, relators).map_err(|e| self.err(e.to_string()))
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if self.peek().is_some() {
            Err(self.err("trailing input"))
        } else {
            Ok(())
        }
    }
}

impl FromStr for Presentation {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut c = Cursor::new(s);
        let p = c.presentation()?;
        c.finish()?;
        Ok(p)
    }
}

/// Parses a word over the generators of `p`.
pub fn parse_word(p: &Presentation, s: &str) -> Result<Word, ParseError> {
    let mut c = Cursor::new(s);
    let w = c.word(p.generators())?;
    c.finish()?;
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::Letter;

    #[test]
    fn commutator_and_powers() {
        let p: Presentation = "< a, b | [a,b], a^2 >".parse().unwrap();
        assert_eq!(p.generators(), &["a", "b"]);
        assert_eq!(
            p.relators()[0].letters(),
            &[Letter::pos(0), Letter::pos(1), Letter::neg(0), Letter::neg(1)]
        );
        assert_eq!(p.relators()[1], Word::power_of(0, 2));
    }

    #[test]
    fn equations_and_groups() {
        let p: Presentation = "<b, t1, a | [b,t1] = a, (b t1)^-2 * a>".parse().unwrap();
        assert_eq!(p.show(&p.relators()[0]), "b t1 b^-1 t1^-1 a^-1");
        assert_eq!(p.show(&p.relators()[1]), "t1^-1 b^-1 t1^-1 b^-1 a");
    }

    #[test]
    fn trivial_relations_dropped() {
        let p: Presentation = "<a | a a^-1, 1, [a,a]>".parse().unwrap();
        assert_eq!(p.relator_count(), 0);
        assert_eq!("< | >".parse::<Presentation>().unwrap(), Presentation::trivial());
        assert_eq!("<x|>".parse::<Presentation>().unwrap().generator_count(), 1);
    }

    #[test]
    fn primes_in_names() {
        let p: Presentation = "<x, x' | x x'>".parse().unwrap();
        assert_eq!(p.generators(), &["x", "x'"]);
    }

    #[test]
    fn errors_carry_offsets() {
        let e = "<a | b>".parse::<Presentation>().unwrap_err();
        assert_eq!(e.offset, 5);
        assert!(e.message.contains("unknown generator"));
        let e = "<a, a | >".parse::<Presentation>().unwrap_err();
        assert!(e.message.contains("duplicate"));
        assert!("<a | a".parse::<Presentation>().is_err());
        assert!("<a | a> x".parse::<Presentation>().is_err());
    }

    #[test]
    fn word_over_presentation() {
        let p: Presentation = "<x, y | >".parse().unwrap();
        assert_eq!(parse_word(&p, "x y^-1 y").unwrap(), Word::generator(0));
    }
}
