//! The `key = value` structured-text format used by domain and order spec files.

use crate::error::{Error, Result};
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Key {
    Int(i64),
    Ident(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Str(String),
    Int(i64),
    List(Vec<Value>),
    Map(Vec<(Key, Value)>),
}

/// Parsed document: entries in file order, each with the byte offset of its value.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Document {
    pub entries: Vec<(String, Value, usize)>,
}

impl Document {
    pub fn get(&self, key: &str) -> Option<(&Value, usize)> {
        self.entries.iter().find(|e| e.0 == key).map(|e| (&e.1, e.2))
    }

    pub fn push(&mut self, key: &str, value: Value) {
        self.entries.push((key.to_string(), value, 0));
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v, _) in &self.entries {
            let _ = writeln!(out, "{k} = {}", format_value(v));
        }
        out
    }
}

pub fn format_value(v: &Value) -> String {
    match v {
        Value::Str(s) => format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\"")),
        Value::Int(n) => n.to_string(),
        Value::List(xs) => format!("[{}]", xs.iter().map(format_value).collect::<Vec<_>>().join(", ")),
        Value::Map(kv) => {
            let items: Vec<String> = kv
                .iter()
                .map(|(k, v)| match k {
                    Key::Int(n) => format!("{n}: {}", format_value(v)),
                    Key::Ident(s) => format!("{s} = {}", format_value(v)),
                })
                .collect();
            format!("{{{}}}", items.join(", "))
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse_at(self.src, self.pos, msg)
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    /// Skips spaces, tabs and comments; newlines too when `newlines` is set.
    fn skip_ws(&mut self, newlines: bool) {
        while let Some(c) = self.peek() {
            if c == '#' {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.bump();
                }
            } else if c == ' ' || c == '\t' || c == '\r' || (newlines && c == '\n') {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.err(format!("expected '{want}', found '{c}'"))),
            None => Err(self.err(format!("expected '{want}', found end of input"))),
        }
    }

    fn ident(&mut self) -> Result<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
            self.bump();
        }
        if start == self.pos {
            return Err(self.err("expected an identifier"));
        }
        Ok(self.src[start..self.pos].to_string())
    }

    fn int(&mut self) -> Result<i64> {
        let start = self.pos;
        if self.peek() == Some('-') {
            self.bump();
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        self.src[start..self.pos].parse().map_err(|_| {
            let here = self.pos;
            self.pos = start;
            let e = self.err("expected an integer");
            self.pos = here;
            e
        })
    }

    fn value(&mut self) -> Result<Value> {
        self.skip_ws(true);
        match self.peek() {
            Some('"') => {
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        Some('"') => break,
                        Some('\\') => match self.bump() {
                            Some(c @ ('"' | '\\')) => s.push(c),
                            _ => return Err(self.err("bad escape in string")),
                        },
                        Some('\n') | None => return Err(self.err("unterminated string")),
                        Some(c) => s.push(c),
                    }
                }
                Ok(Value::Str(s))
            }
            Some('[') => {
                self.bump();
                let mut items = Vec::new();
                self.skip_ws(true);
                if self.peek() == Some(']') {
                    self.bump();
                    return Ok(Value::List(items));
                }
                loop {
                    items.push(self.value()?);
                    self.skip_ws(true);
                    match self.bump() {
                        Some(',') => continue,
                        Some(']') => break,
                        _ => return Err(self.err("expected ',' or ']' in list")),
                    }
                }
                Ok(Value::List(items))
            }
            Some('{') => {
                self.bump();
                let mut items = Vec::new();
                self.skip_ws(true);
                if self.peek() == Some('}') {
                    self.bump();
                    return Ok(Value::Map(items));
                }
                loop {
                    self.skip_ws(true);
                    let key = match self.peek() {
                        Some(c) if c.is_ascii_digit() || c == '-' => Key::Int(self.int()?),
                        _ => Key::Ident(self.ident()?),
                    };
                    self.skip_ws(true);
                    match self.bump() {
                        Some(':' | '=') => {}
                        _ => return Err(self.err("expected ':' or '=' after map key")),
                    }
                    let v = self.value()?;
                    items.push((key, v));
                    self.skip_ws(true);
                    match self.bump() {
                        Some(',') => continue,
                        Some('}') => break,
                        _ => return Err(self.err("expected ',' or '}' in map")),
                    }
                }
                Ok(Value::Map(items))
            }
            Some(c) if c.is_ascii_digit() || c == '-' => Ok(Value::Int(self.int()?)),
            Some(c) => Err(self.err(format!("unexpected character '{c}'"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

pub fn parse(src: &str) -> Result<Document> {
    let mut p = Parser { src, pos: 0 };
    let mut doc = Document::default();
    loop {
        p.skip_ws(true);
        if p.peek().is_none() {
            break;
        }
        let key_pos = p.pos;
        let key = p.ident()?;
        p.skip_ws(false);
        p.expect('=')?;
        p.skip_ws(false);
        let vpos = p.pos;
        let v = p.value()?;
        p.skip_ws(false);
        match p.peek() {
            None | Some('\n') => {}
            Some(c) => return Err(p.err(format!("unexpected '{c}' after value"))),
        }
        if doc.get(&key).is_some() {
            return Err(Error::parse_at(src, key_pos, format!("duplicate key {key:?}")));
        }
        doc.entries.push((key, v, vpos));
    }
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_domain_spec() {
        let src = "ambient_field = \"F4\"\nsemigroup = [2,3]\nresidue = {0: \"F2\"}\nprecision = 32\n";
        let d = parse(src).unwrap();
        assert_eq!(d.get("semigroup").unwrap().0, &Value::List(vec![Value::Int(2), Value::Int(3)]));
        let again = parse(&d.to_text()).unwrap();
        assert_eq!(
            d.entries.iter().map(|e| (&e.0, &e.1)).collect::<Vec<_>>(),
            again.entries.iter().map(|e| (&e.0, &e.1)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn reports_position() {
        let err = parse("a = 1\nb = [1, 2\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            e => panic!("unexpected {e:?}"),
        }
        let err = parse("order = {t = 0, n = x}").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, column: 21, .. }), "{err:?}");
    }
}
