//! Text syntax for set expressions, substitutions and words.
//!
//! ```text
//! E    ::= A | 1 | D{label,..} | tag(Name,E) | prod(E,E) | sep(E,E) | sum(E,E)
//!        | wordsle(E,n) | sepwordsle(E,n) | free(E)
//! m    ::= {a->b, ..}
//! word ::= letter ; letter ; ..     (empty for ε)
//! letter ::= n | Name | Name(n)
//! ```
//!
//! Error positions are 0-based character offsets.

use crate::atoms::{Atom, Subst};
use crate::automata::Word;
use crate::error::{NominalError, Result};
use crate::nominal::{NomValue, NominalSetDesc};

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(src: &str) -> Self {
        Cursor { chars: src.chars().collect(), pos: 0 }
    }

    fn err<T>(&self, position: usize, message: impl Into<String>) -> Result<T> {
        Err(NominalError::Parse { position, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => self.err(self.pos, format!("expected '{}', found '{}'", c, d)),
            None => self.err(self.pos, format!("expected '{}', found end of input", c)),
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(self.pos, format!("unexpected '{}' after end of expression", c)),
        }
    }

    fn ident(&mut self) -> Result<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_alphanumeric() || *c == '_') {
            self.pos += 1;
        }
        if start == self.pos {
            return match self.chars.get(self.pos) {
                Some(c) => self.err(start, format!("expected a name, found '{}'", c)),
                None => self.err(start, "expected a name, found end of input"),
            };
        }
        Ok((start, self.chars[start..self.pos].iter().collect()))
    }

    fn number(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err(start, "expected a natural number");
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().or_else(|_| self.err(start, format!("number {} is too large", digits)))
    }

    /// A label: any run of characters up to a delimiter.
    fn label(&mut self, delimiters: &[char]) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| !delimiters.contains(c)) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect::<String>().trim().to_string();
        if text.is_empty() {
            return self.err(start, "empty label");
        }
        Ok(text)
    }
}

/// Parses a set expression.
pub fn parse_set(src: &str) -> Result<NominalSetDesc> {
    let mut c = Cursor::new(src);
    let set = set_expr(&mut c)?;
    c.finish()?;
    Ok(set)
}

fn set_expr(c: &mut Cursor) -> Result<NominalSetDesc> {
    match c.peek() {
        Some('1') => {
            c.pos += 1;
            Ok(NominalSetDesc::Unit)
        }
        Some(_) => {
            let (start, name) = c.ident()?;
            match name.as_str() {
                "A" => Ok(NominalSetDesc::Atoms),
                "D" => discrete(c),
                "prod" | "sep" | "sum" => {
                    c.expect('(')?;
                    let x = set_expr(c)?;
                    c.expect(',')?;
                    let y = set_expr(c)?;
                    c.expect(')')?;
                    match name.as_str() {
                        "prod" => Ok(NominalSetDesc::product(x, y)),
                        "sep" => Ok(NominalSetDesc::sep_product(x, y)),
                        _ => NominalSetDesc::coproduct(x, y),
                    }
                }
                "wordsle" | "sepwordsle" => {
                    c.expect('(')?;
                    let x = set_expr(c)?;
                    c.expect(',')?;
                    let n = c.number()? as usize;
                    c.expect(')')?;
                    Ok(if name == "wordsle" {
                        NominalSetDesc::words_up_to(x, n)
                    } else {
                        NominalSetDesc::sep_words_up_to(x, n)
                    })
                }
                "free" => {
                    c.expect('(')?;
                    let x = set_expr(c)?;
                    c.expect(')')?;
                    Ok(NominalSetDesc::free(x))
                }
                "tag" => {
                    c.expect('(')?;
                    let (_, tag) = c.ident()?;
                    c.expect(',')?;
                    let x = set_expr(c)?;
                    c.expect(')')?;
                    Ok(NominalSetDesc::tag(tag, x))
                }
                "words" | "sepwords" => {
                    c.err(start, format!("{} has infinitely many orbits; use {}le(E,n)", name, name))
                }
                other => c.err(start, format!("unknown set constructor '{}'", other)),
            }
        }
        None => c.err(c.pos, "expected a set expression, found end of input"),
    }
}

fn discrete(c: &mut Cursor) -> Result<NominalSetDesc> {
    c.expect('{')?;
    let mut labels = Vec::new();
    if c.peek() == Some('}') {
        c.pos += 1;
        return Ok(NominalSetDesc::discrete(labels));
    }
    loop {
        labels.push(c.label(&[',', '}'])?);
        match c.peek() {
            Some(',') => c.pos += 1,
            _ => break,
        }
    }
    c.expect('}')?;
    Ok(NominalSetDesc::discrete(labels))
}

/// Parses a substitution literal such as `{1->2, 3->2}`.
pub fn parse_subst(src: &str) -> Result<Subst> {
    let mut c = Cursor::new(src);
    c.expect('{')?;
    let mut pairs: Vec<(Atom, Atom)> = Vec::new();
    if c.peek() != Some('}') {
        loop {
            let at = {
                c.skip_ws();
                c.pos
            };
            let from = Atom(c.number()?);
            c.expect('-')?;
            c.expect('>')?;
            let to = Atom(c.number()?);
            if pairs.iter().any(|(a, b)| *a == from && *b != to) {
                return c.err(at, format!("atom {} is mapped twice", from));
            }
            pairs.push((from, to));
            match c.peek() {
                Some(',') => c.pos += 1,
                _ => break,
            }
        }
    }
    c.expect('}')?;
    c.finish()?;
    Ok(Subst::from_pairs(pairs))
}

/// Parses a `;`-separated word; blank input (or `ε`) is the empty word.
pub fn parse_word(src: &str) -> Result<Word> {
    let mut c = Cursor::new(src);
    if c.at_end() || src.trim() == "ε" {
        return Ok(Word::empty());
    }
    let mut letters = Vec::new();
    loop {
        letters.push(letter(&mut c)?);
        match c.peek() {
            Some(';') => c.pos += 1,
            _ => break,
        }
    }
    c.finish()?;
    Ok(Word(letters))
}

fn letter(c: &mut Cursor) -> Result<NomValue> {
    match c.peek() {
        Some(d) if d.is_ascii_digit() => Ok(NomValue::atom(Atom(c.number()?))),
        Some(_) => {
            let (_, name) = c.ident()?;
            if c.peek() == Some('(') {
                c.pos += 1;
                let a = c.number()?;
                c.expect(')')?;
                Ok(NomValue::tagged(name, NomValue::atom(Atom(a))))
            } else {
                Ok(NomValue::label(name))
            }
        }
        None => c.err(c.pos, "expected a letter, found end of input"),
    }
}
