//! `.manifest`: one entry per line, `<command> <name> key=value...`.
//!
//! `pair` entries feed `validate-landscape`. Their keys are `a`/`b` (graph
//! files), `fa`/`fb` (field files, built when `a`/`b` are absent), `cert`
//! and `zz` (repeatable), and `expect.<metric>=<value>` for the value that
//! metric's bracket must contain. Paths are relative to the manifest.

use crate::formats::Format;
use crate::text::{ParseError, Record, Writer};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub command: String,
    pub name: String,
    pub params: Vec<(String, String)>,
}

impl Entry {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.params.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn all<'s>(&'s self, key: &'s str) -> impl Iterator<Item = &'s str> {
        self.params.iter().filter(move |(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// `(metric, value)` for every `expect.<metric>` key.
    pub fn expectations(&self) -> impl Iterator<Item = (&str, &str)> {
        self.params.iter().filter_map(|(k, v)| k.strip_prefix("expect.").map(|m| (m, v.as_str())))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Manifest {
    pub entries: Vec<Entry>,
}

pub const PAIR_KEYS: [&str; 6] = ["a", "b", "fa", "fb", "cert", "zz"];

pub const METRICS: [&str; 7] = ["ungraded", "graded", "interleaving", "fdd", "edit", "universal", "linf"];

fn entry(r: &Record<'_>) -> Result<Entry, ParseError> {
    r.arg(1)?;
    let mut params = Vec::new();
    for t in &r.tokens[2..] {
        let (k, v) = t.split_once('=').filter(|(k, v)| !k.is_empty() && !v.is_empty()).ok_or_else(|| r.err(format!("expected key=value, found `{}`", t)))?;
        params.push((k.to_string(), v.to_string()));
    }
    let e = Entry { command: r.tag().to_string(), name: r.tokens[1].to_string(), params };
    if e.command == "pair" {
        for (k, _) in &e.params {
            let ok = PAIR_KEYS.contains(&k.as_str()) || k.strip_prefix("expect.").is_some_and(|m| METRICS.contains(&m));
            if !ok {
                return Err(r.err(format!("pair entries take {} and expect.<metric>, not `{}`", PAIR_KEYS.join(", "), k)));
            }
        }
        for (x, fx) in [("a", "fa"), ("b", "fb")] {
            if e.get(x).is_none() && e.get(fx).is_none() {
                return Err(r.err(format!("pair `{}` needs `{}` or `{}`", e.name, x, fx)));
            }
        }
        for (m, v) in e.expectations() {
            reeb_metrics::value::parse_value(v).map_err(|err| r.err(format!("expect.{}: {}", m, err)))?;
        }
    }
    Ok(e)
}

impl Format for Manifest {
    const KIND: &'static str = "manifest";

    fn from_records(records: &[Record<'_>]) -> Result<Self, ParseError> {
        let mut m = Manifest::default();
        for r in records {
            let e = entry(r)?;
            if m.entries.iter().any(|x| x.name == e.name) {
                return Err(r.err(format!("entry name `{}` used twice", e.name)));
            }
            m.entries.push(e);
        }
        Ok(m)
    }

    fn write(&self, w: &mut Writer) {
        for e in &self.entries {
            let kv: String = e.params.iter().map(|(k, v)| format!(" {}={}", k, v)).collect();
            w.line(format_args!("{} {}{}", e.command, e.name, kv));
        }
    }
}
