//! Line-oriented documents: a versioned header line, an optional block of
//! `#` comments, then one record per line as whitespace-separated tokens.
//! Serializers emit exactly what the parsers read back, so canonical text
//! round-trips byte for byte.

use std::fmt::Write as _;

use reeb_metrics::value::{format_value, parse_dval, parse_value, DVal, Value};
use reeb_metrics::Point;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

pub fn perr(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

pub const VERSION: u32 = 1;

pub fn header(kind: &str) -> String {
    format!("reeb-{} {}", kind, VERSION)
}

#[derive(Clone, Debug)]
pub struct Record<'a> {
    pub line: usize,
    pub tokens: Vec<&'a str>,
}

impl<'a> Record<'a> {
    pub fn tag(&self) -> &'a str {
        self.tokens[0]
    }

    pub fn err(&self, message: impl Into<String>) -> ParseError {
        perr(self.line, message)
    }

    pub fn arg(&self, i: usize) -> Result<&'a str, ParseError> {
        self.tokens.get(i).copied().ok_or_else(|| self.err(format!("`{}` needs more fields", self.tag())))
    }

    pub fn expect_len(&self, n: usize) -> Result<(), ParseError> {
        if self.tokens.len() != n {
            return Err(self.err(format!("`{}` takes {} field(s), found {}", self.tag(), n - 1, self.tokens.len() - 1)));
        }
        Ok(())
    }

    pub fn index(&self, i: usize) -> Result<usize, ParseError> {
        let s = self.arg(i)?;
        s.parse().map_err(|_| self.err(format!("bad index `{}`", s)))
    }

    pub fn value(&self, i: usize) -> Result<Value, ParseError> {
        parse_value(self.arg(i)?).map_err(|e| self.err(e.to_string()))
    }

    pub fn dval(&self, i: usize) -> Result<DVal, ParseError> {
        parse_dval(self.arg(i)?).map_err(|e| self.err(e.to_string()))
    }

    pub fn point(&self, i: usize) -> Result<Point, ParseError> {
        parse_point(self.arg(i)?).ok_or_else(|| self.err(format!("bad point `{}` (want v<id> or e<id>@<value>)", self.tokens[i])))
    }
}

/// `v3` or `e2@1.5`.
pub fn parse_point(s: &str) -> Option<Point> {
    if let Some(v) = s.strip_prefix('v') {
        return v.parse().ok().map(Point::Vertex);
    }
    let (e, t) = s.strip_prefix('e')?.split_once('@')?;
    Some(Point::Edge(e.parse().ok()?, parse_value(t).ok()?))
}

pub fn format_point(p: Point) -> String {
    match p {
        Point::Vertex(v) => format!("v{}", v),
        Point::Edge(e, t) => format!("e{}@{}", e, format_value(t)),
    }
}

/// Comment preamble and records of a document of the given kind.
pub fn read<'a>(text: &'a str, kind: &str) -> Result<(Vec<String>, Vec<Record<'a>>), ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let want = header(kind);
    match lines.next() {
        Some((_, h)) if h.trim_end() == want => {}
        Some((_, h)) if h.starts_with(&format!("reeb-{} ", kind)) => {
            return Err(perr(1, format!("unsupported version `{}` (this build reads `{}`)", h.trim_end(), want)));
        }
        _ => return Err(perr(1, format!("expected header `{}`", want))),
    }
    let mut comments = Vec::new();
    let mut records = Vec::new();
    for (n, l) in lines {
        if let Some(c) = l.strip_prefix('#') {
            if records.is_empty() {
                comments.push(c.to_string());
            }
            continue;
        }
        let tokens: Vec<&str> = l.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        records.push(Record { line: n, tokens });
    }
    Ok((comments, records))
}

/// Accumulates a document.
pub struct Writer {
    buf: String,
}

impl Writer {
    pub fn new(kind: &str, comments: &[String]) -> Self {
        let mut buf = header(kind);
        buf.push('\n');
        for c in comments {
            buf.push('#');
            buf.push_str(c);
            buf.push('\n');
        }
        Writer { buf }
    }

    pub fn line(&mut self, args: std::fmt::Arguments<'_>) {
        let _ = self.buf.write_fmt(args);
        self.buf.push('\n');
    }

    pub fn finish(self) -> String {
        self.buf
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use reeb_metrics::value::frac;

    #[test]
    fn points_round_trip() {
        for p in [Point::Vertex(3), Point::Edge(2, frac(3, 2)), Point::Edge(0, frac(1, 3))] {
            assert_eq!(parse_point(&format_point(p)), Some(p));
        }
        assert_eq!(parse_point("x1"), None);
        assert_eq!(parse_point("e1"), None);
    }

    #[test]
    fn header_and_comments() {
        let (c, r) = read("reeb-graph 1\n# one\n#two\nv 0 1\n\n# late\nv 1 2\n", "graph").unwrap();
        assert_eq!(c, vec![" one".to_string(), "two".to_string()]);
        assert_eq!(r.len(), 2);
        assert_eq!(r[1].line, 7);
        assert!(read("reeb-graph 2\n", "graph").unwrap_err().message.contains("version"));
        assert_eq!(read("v 0 1\n", "graph").unwrap_err().line, 1);
    }
}
