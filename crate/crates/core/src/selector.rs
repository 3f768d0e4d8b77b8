//! Syntax checks for element names.
//!
//! HTML element names are checked against a small CSS selector subset:
//! type and universal selectors, `.class`, `#id`, `[attr]`, `[attr=value]`,
//! and the descendant (space) and child (`>`) combinators. Nothing is
//! matched against documents; only the shape is checked.

use std::fmt;
use std::iter::Peekable;
use std::str::CharIndices;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectorError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for SelectorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at offset {}", self.message, self.offset)
    }
}

struct Cursor<'a> {
    src: &'a str,
    chars: Peekable<CharIndices<'a>>,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            src,
            chars: src.char_indices().peekable(),
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().map(|&(_, c)| c)
    }

    fn offset(&mut self) -> usize {
        self.chars.peek().map_or(self.src.len(), |&(i, _)| i)
    }

    fn bump(&mut self) -> Option<char> {
        self.chars.next().map(|(_, c)| c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn skip_spaces(&mut self) -> bool {
        let mut any = false;
        while self.peek() == Some(' ') {
            self.bump();
            any = true;
        }
        any
    }

    fn fail<T>(&mut self, message: impl Into<String>) -> Result<T, SelectorError> {
        Err(SelectorError {
            offset: self.offset(),
            message: message.into(),
        })
    }

    /// `-?[a-zA-Z_][a-zA-Z0-9_-]*`
    fn ident(&mut self, what: &str) -> Result<(), SelectorError> {
        self.eat('-');
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                self.bump();
            }
            Some(c) => return self.fail(format!("unexpected `{c}` where {what} was expected")),
            None => return self.fail(format!("missing {what}")),
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == '-') {
            self.bump();
        }
        Ok(())
    }

    fn quoted(&mut self, quote: char) -> Result<(), SelectorError> {
        self.bump();
        loop {
            match self.bump() {
                Some(c) if c == quote => return Ok(()),
                Some(_) => {}
                None => return self.fail("unterminated string"),
            }
        }
    }

    fn attribute(&mut self) -> Result<(), SelectorError> {
        self.bump();
        self.skip_spaces();
        self.ident("an attribute name")?;
        self.skip_spaces();
        if self.eat('=') {
            self.skip_spaces();
            match self.peek() {
                Some(q @ ('"' | '\'')) => self.quoted(q)?,
                _ => self.ident("an attribute value")?,
            }
            self.skip_spaces();
        }
        if !self.eat(']') {
            return match self.peek() {
                Some(c) => self.fail(format!("unsupported `{c}` in attribute selector")),
                None => self.fail("missing `]`"),
            };
        }
        Ok(())
    }

    /// A compound selector. Returns an error if nothing could be read.
    fn compound(&mut self) -> Result<(), SelectorError> {
        let mut parts = 0;
        if self.eat('*') {
            parts += 1;
        } else if matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() || c == '_' || c == '-')
        {
            self.ident("a type selector")?;
            parts += 1;
        }
        loop {
            match self.peek() {
                Some('.') => {
                    self.bump();
                    self.ident("a class name")?;
                }
                Some('#') => {
                    self.bump();
                    self.ident("an id")?;
                }
                Some('[') => self.attribute()?,
                _ => break,
            }
            parts += 1;
        }
        if parts == 0 {
            return match self.peek() {
                Some(c) => self.fail(format!("unsupported `{c}`")),
                None => self.fail("missing selector after combinator"),
            };
        }
        Ok(())
    }
}

pub fn check_selector(selector: &str) -> Result<(), SelectorError> {
    let mut cursor = Cursor::new(selector);
    if cursor.peek() == Some(' ') {
        return cursor.fail("leading space");
    }
    cursor.compound()?;
    loop {
        let spaced = cursor.skip_spaces();
        match cursor.peek() {
            None if spaced => return cursor.fail("trailing space"),
            None => return Ok(()),
            Some('>') => {
                cursor.bump();
                cursor.skip_spaces();
            }
            Some(_) if spaced => {}
            Some(c) => return cursor.fail(format!("unsupported `{c}`")),
        }
        cursor.compound()?;
    }
}

/// `*` or `ident(.ident)*` with `ident = [a-zA-Z0-9_-]+`.
pub fn is_dot_path(name: &str) -> bool {
    name == "*"
        || name.split('.').all(|ident| {
            !ident.is_empty()
                && ident
                    .bytes()
                    .all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'-')
        })
}
