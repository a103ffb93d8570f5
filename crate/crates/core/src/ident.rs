//! Atom identifiers.
//!
//! Plain identifiers may not contain `|`, `&`, `(` or `)`. Compound names are
//! built only by [`tuple_name`] (`a|b|c`, tensor and coproduct atoms) and
//! [`pair_name`] (`a&b`, relative-product atoms). A compound component is
//! wrapped in parentheses, so `(a|b)|c` and `a|(b|c)` stay distinct and every
//! name has exactly one spelling.

use crate::error::{Error, Result};

pub const TUPLE_SEP: char = '|';
pub const PAIR_SEP: char = '&';
const RESERVED: [char; 4] = ['|', '&', '(', ')'];

fn is_compound(name: &str) -> bool {
    name.contains([TUPLE_SEP, PAIR_SEP])
}

fn component(name: &str) -> String {
    if is_compound(name) {
        format!("({name})")
    } else {
        name.to_string()
    }
}

/// `a|b|…`; the empty tuple is `*`.
pub fn tuple_name<S: AsRef<str>>(parts: &[S]) -> String {
    if parts.is_empty() {
        return "*".to_string();
    }
    parts
        .iter()
        .map(|p| component(p.as_ref()))
        .collect::<Vec<_>>()
        .join("|")
}

pub fn pair_name(left: &str, right: &str) -> String {
    format!("{}&{}", component(left), component(right))
}

/// Accepts plain identifiers and canonically spelled compound names.
pub fn validate(id: &str) -> Result<()> {
    let bad = |reason: &str| Error::InvalidIdentifier {
        id: id.to_string(),
        reason: reason.to_string(),
    };
    let mut parser = Parser {
        chars: id.chars().collect(),
        pos: 0,
    };
    parser.name().map_err(|r| bad(&r))?;
    if parser.pos != parser.chars.len() {
        return Err(bad(&format!("unexpected `{}` at {}", parser.chars[parser.pos], parser.pos)));
    }
    Ok(())
}

/// Only plain identifiers: what a user may name an atom or point.
pub fn validate_plain(id: &str) -> Result<()> {
    if id.is_empty() {
        return Err(Error::InvalidIdentifier {
            id: id.to_string(),
            reason: "empty identifier".into(),
        });
    }
    if let Some(c) = id.chars().find(|c| RESERVED.contains(c)) {
        return Err(Error::InvalidIdentifier {
            id: id.to_string(),
            reason: format!("`{c}` is reserved"),
        });
    }
    Ok(())
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    // name := component ('|' component)* | component '&' component
    fn name(&mut self) -> std::result::Result<(), String> {
        self.component()?;
        match self.peek() {
            Some(TUPLE_SEP) => {
                while self.peek() == Some(TUPLE_SEP) {
                    self.pos += 1;
                    self.component()?;
                }
                if self.peek() == Some(PAIR_SEP) {
                    return Err(format!("mixed `|` and `&` at {}", self.pos));
                }
            }
            Some(PAIR_SEP) => {
                self.pos += 1;
                self.component()?;
                if matches!(self.peek(), Some(TUPLE_SEP | PAIR_SEP)) {
                    return Err(format!("unbracketed separator at {}", self.pos));
                }
            }
            _ => {}
        }
        Ok(())
    }

    // component := piece ('+' piece)*, piece := plain | '(' name ')'
    // so block and orbit names such as `(a|b)+(c|d)` stay parseable
    fn component(&mut self) -> std::result::Result<(), String> {
        loop {
            if self.peek() == Some('(') {
                self.parenthesized()?;
                if self.peek() != Some('+') {
                    return Ok(());
                }
                self.pos += 1;
                if self.peek().is_none_or(|c| RESERVED.contains(&c) && c != '(') {
                    return Err(format!("dangling `+` at {}", self.pos - 1));
                }
            } else {
                let start = self.pos;
                while let Some(c) = self.peek() {
                    if RESERVED.contains(&c) {
                        break;
                    }
                    self.pos += 1;
                }
                if self.pos == start {
                    return Err(format!("empty component at {start}"));
                }
                if !(self.chars[self.pos - 1] == '+' && self.peek() == Some('(')) {
                    return Ok(());
                }
            }
        }
    }

    fn parenthesized(&mut self) -> std::result::Result<(), String> {
        let open = self.pos;
        self.pos += 1;
        let start = self.pos;
        self.name()?;
        let inner: String = self.chars[start..self.pos].iter().collect();
        if self.peek() != Some(')') {
            return Err(format!("unclosed `(` at {open}"));
        }
        self.pos += 1;
        if !is_compound(&inner) {
            return Err(format!("redundant parentheses at {open}"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nesting_is_unambiguous() {
        let left = tuple_name(&[tuple_name(&["a", "b"]), "c".to_string()]);
        let right = tuple_name(&["a".to_string(), tuple_name(&["b", "c"])]);
        assert_eq!(left, "(a|b)|c");
        assert_eq!(right, "a|(b|c)");
        assert_eq!(tuple_name(&["a", "b", "c"]), "a|b|c");
        assert_eq!(pair_name("x|y", "z"), "(x|y)&z");
        for n in [&left, &right, "a|b|c", "(x|y)&z", "*", "(a|b)+(c|d)", "a+(b|c)+d"] {
            validate(n).unwrap();
        }
    }

    #[test]
    fn rejects_non_canonical_spellings() {
        for bad in ["", "a|", "|a", "(a)|b", "a&b&c", "a|b&c", "(a|b", "a)", "a||b", "(a|b)+", "a(b|c)"] {
            assert!(validate(bad).is_err(), "{bad}");
        }
        assert!(validate_plain("a|b").is_err());
        assert!(validate_plain("x&y").is_err());
        validate_plain("heads").unwrap();
    }
}
