use std::fmt;

use thiserror::Error;

/// A parse failure, with the 1-based line it was found on when there is one.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(n) => write!(f, "line {n}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl ParseError {
    pub fn at(line: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: Some(line),
            message: message.into(),
        }
    }

    pub fn whole(message: impl Into<String>) -> ParseError {
        ParseError {
            line: None,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line<'a> {
    pub number: usize,
    pub tokens: Vec<&'a str>,
}

/// Splits `src` into lines of tokens. `#` starts a comment; tokens are
/// separated by whitespace, and `:`, `=` and `->` are tokens of their own
/// even without surrounding spaces. Blank lines are dropped.
pub fn lex(src: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let text = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        for chunk in text.split_whitespace() {
            split_symbols(chunk, &mut tokens);
        }
        if !tokens.is_empty() {
            out.push(Line {
                number: i + 1,
                tokens,
            });
        }
    }
    out
}

fn split_symbols<'a>(chunk: &'a str, tokens: &mut Vec<&'a str>) {
    let bytes = chunk.as_bytes();
    let mut start = 0;
    let mut i = 0;
    while i < bytes.len() {
        let width = match bytes[i] {
            b':' | b'=' => 1,
            b'-' if bytes.get(i + 1) == Some(&b'>') => 2,
            _ => 0,
        };
        if width == 0 {
            i += 1;
            continue;
        }
        if start < i {
            tokens.push(&chunk[start..i]);
        }
        tokens.push(&chunk[i..i + width]);
        i += width;
        start = i;
    }
    if start < bytes.len() {
        tokens.push(&chunk[start..]);
    }
}
