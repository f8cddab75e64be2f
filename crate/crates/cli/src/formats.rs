//! The file formats. Every type implements [`Format`]; [`Doc`] adds the
//! comment preamble.
//!
//! | ext      | records |
//! |----------|---------|
//! | `.field` | `v <id> <value>`, `e <u> <w>`, `t <u> <v> <w>` |
//! | `.reeb`  | `v <id> <value>`, `e <u> <w> <multiplicity>` |
//! | `.dgm`   | `p <class> <birth> <death>`, led by `components <n>` when that is not the ext0 count |
//! | `.cert`  | `forward` / `backward` map blocks, `boundary <f ids> / <g ids>` |
//! | `.zz`    | `R i` and `X i` graph blocks, `left i` / `right i` map blocks |
//! | `.ilv`   | `eps`, `m`, `grid`, then `phi` / `psi` blocks of `n` and `s` rows |
//! | `.seq`   | a graph block with symbolic labels, then `step` lines |
//!
//! Map blocks hold `v <id> <point>` and `e <id> [<t> <point>]...`, points
//! written `v<id>` or `e<id>@<value>`.

use std::collections::BTreeMap;

use reeb_metrics::edit::{Deformation, DeformationKind, EditSequence, ZigzagCertificate};
use reeb_metrics::fdd::{MapCertificate, PlMap};
use reeb_metrics::interleaving::InterleavingCertificate;
use reeb_metrics::value::{format_value, DVal, Value};
use reeb_metrics::{ExtendedDiagram, Graph, LeveledMap, PersistencePoint, PointClass, ReebGraph, ScalarField};

use crate::text::{format_point, read, ParseError, Record, Writer};

pub trait Format: Sized {
    const KIND: &'static str;
    fn from_records(records: &[Record<'_>]) -> Result<Self, ParseError>;
    fn write(&self, w: &mut Writer);
}

/// A value with the comments that preceded it in its file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Doc<T> {
    pub comments: Vec<String>,
    pub body: T,
}

impl<T: Format> Doc<T> {
    pub fn new(body: T) -> Self {
        Doc { comments: Vec::new(), body }
    }

    pub fn with_comments(body: T, comments: &[&str]) -> Self {
        Doc { comments: comments.iter().map(|c| format!(" {}", c)).collect(), body }
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let (comments, records) = read(text, T::KIND)?;
        Ok(Doc { comments, body: T::from_records(&records)? })
    }

    pub fn to_text(&self) -> String {
        let mut w = Writer::new(T::KIND, &self.comments);
        self.body.write(&mut w);
        w.finish()
    }
}

pub fn parse<T: Format>(text: &str) -> Result<T, ParseError> {
    Doc::<T>::parse(text).map(|d| d.body)
}

pub fn to_text<T: Format>(x: &T) -> String {
    let mut w = Writer::new(T::KIND, &[]);
    x.write(&mut w);
    w.finish()
}

fn unknown(r: &Record<'_>, kind: &str) -> ParseError {
    r.err(format!("unknown record `{}` in a {} file", r.tag(), kind))
}

/// Next id in a run of `v <id> ...` or `e <id> ...` lines.
fn sequential(r: &Record<'_>, expected: usize) -> Result<(), ParseError> {
    let id = r.index(1)?;
    if id != expected {
        return Err(r.err(format!("expected id {}, found {}", expected, id)));
    }
    Ok(())
}

// graphs

fn graph_from<V: Ord + Clone>(
    records: &[Record<'_>],
    value: impl Fn(&Record<'_>, usize) -> Result<V, ParseError>,
) -> Result<Graph<V>, ParseError> {
    let mut values = Vec::new();
    let mut edges = Vec::new();
    let mut lines = Vec::new();
    for r in records {
        match r.tag() {
            "v" => {
                r.expect_len(3)?;
                sequential(r, values.len())?;
                values.push(value(r, 2)?);
            }
            "e" => {
                r.expect_len(4)?;
                let (a, b, k) = (r.index(1)?, r.index(2)?, r.index(3)?);
                if k == 0 {
                    return Err(r.err("edge multiplicity must be positive"));
                }
                for _ in 0..k {
                    edges.push((a, b));
                    lines.push(r.line);
                }
            }
            _ => return Err(unknown(r, "graph")),
        }
    }
    Graph::from_parts(values, &edges).map_err(|e| {
        use reeb_metrics::graph::GraphError;
        let line = match e {
            GraphError::FlatEdge(i) => lines[i],
            GraphError::MissingVertex(v) => edges.iter().position(|&(a, b)| a == v || b == v).map_or(0, |i| lines[i]),
            GraphError::RepeatedValue(..) => 0,
        };
        ParseError { line, message: e.to_string() }
    })
}

fn write_graph<V>(w: &mut Writer, g: &Graph<V>, value: impl Fn(&V) -> String) {
    for (i, v) in g.values.iter().enumerate() {
        w.line(format_args!("v {} {}", i, value(v)));
    }
    let mut i = 0;
    while i < g.edges.len() {
        let mut k = 1;
        while i + k < g.edges.len() && g.edges[i + k] == g.edges[i] {
            k += 1;
        }
        w.line(format_args!("e {} {} {}", g.edges[i].0, g.edges[i].1, k));
        i += k;
    }
}

impl Format for ReebGraph {
    const KIND: &'static str = "graph";

    fn from_records(records: &[Record<'_>]) -> Result<Self, ParseError> {
        graph_from(records, |r, i| r.value(i))
    }

    fn write(&self, w: &mut Writer) {
        write_graph(w, self, |v| format_value(*v));
    }
}

impl Format for ScalarField {
    const KIND: &'static str = "field";

    fn from_records(records: &[Record<'_>]) -> Result<Self, ParseError> {
        let mut f = ScalarField::default();
        for r in records {
            match r.tag() {
                "v" => {
                    r.expect_len(3)?;
                    sequential(r, f.values.len())?;
                    f.values.push(r.value(2)?);
                }
                "e" => {
                    r.expect_len(3)?;
                    f.edges.push((r.index(1)?, r.index(2)?));
                }
                "t" => {
                    r.expect_len(4)?;
                    f.triangles.push([r.index(1)?, r.index(2)?, r.index(3)?]);
                }
                _ => return Err(unknown(r, "field")),
            }
        }
        // structural checks only; ties are the caller's decision
        match f.validate(true) {
            Ok(()) => Ok(f),
            Err(e) => Err(ParseError { line: 0, message: e.to_string() }),
        }
    }

    fn write(&self, w: &mut Writer) {
        for (i, v) in self.values.iter().enumerate() {
            w.line(format_args!("v {} {}", i, format_value(*v)));
        }
        for &(a, b) in &self.edges {
            w.line(format_args!("e {} {}", a, b));
        }
        for t in &self.triangles {
            w.line(format_args!("t {} {} {}", t[0], t[1], t[2]));
        }
    }
}

impl Format for ExtendedDiagram {
    const KIND: &'static str = "diagram";

    fn from_records(records: &[Record<'_>]) -> Result<Self, ParseError> {
        let mut pts = Vec::new();
        let mut components = None;
        for r in records {
            if r.tag() == "components" && pts.is_empty() && components.is_none() {
                r.expect_len(2)?;
                components = Some(r.index(1)?);
                continue;
            }
            if r.tag() != "p" {
                return Err(unknown(r, "diagram"));
            }
            r.expect_len(4)?;
            let class = PointClass::from_name(r.arg(1)?).ok_or_else(|| r.err(format!("unknown class `{}` (ord0, ext0, rel1, ext1)", r.tokens[1])))?;
            let p = PersistencePoint::new(class, r.value(2)?, r.value(3)?);
            if !p.is_valid() {
                return Err(r.err(format!("{} point has birth and death in the wrong order", class.name())));
            }
            pts.push(p);
        }
        let ext0 = pts.iter().filter(|p| p.class == PointClass::Ext0).count();
        if components == Some(ext0) {
            return Err(crate::text::perr(records[0].line, "`components` is only written when it differs from the number of ext0 points"));
        }
        Ok(ExtendedDiagram::new(pts, components.unwrap_or(ext0)))
    }

    fn write(&self, w: &mut Writer) {
        if self.component_count != self.class(PointClass::Ext0).len() {
            w.line(format_args!("components {}", self.component_count));
        }
        for p in &self.points {
            w.line(format_args!("p {} {} {}", p.class.name(), format_value(p.birth), format_value(p.death)));
        }
    }
}

// maps

fn plmap_from(records: &[Record<'_>]) -> Result<PlMap, ParseError> {
    let mut m = PlMap { vertex: Vec::new(), edge: Vec::new() };
    for r in records {
        match r.tag() {
            "v" => {
                r.expect_len(3)?;
                sequential(r, m.vertex.len())?;
                m.vertex.push(r.point(2)?);
            }
            "e" => {
                sequential(r, m.edge.len())?;
                if r.tokens.len() % 2 != 0 {
                    return Err(r.err("edge breakpoints come in `<t> <point>` pairs"));
                }
                let mut bps = Vec::new();
                for i in (2..r.tokens.len()).step_by(2) {
                    bps.push((r.value(i)?, r.point(i + 1)?));
                }
                m.edge.push(bps);
            }
            _ => return Err(unknown(r, "map block")),
        }
    }
    Ok(m)
}

fn write_plmap(w: &mut Writer, m: &PlMap) {
    for (i, p) in m.vertex.iter().enumerate() {
        w.line(format_args!("v {} {}", i, format_point(*p)));
    }
    for (i, bps) in m.edge.iter().enumerate() {
        let mut s = format!("e {}", i);
        for (t, p) in bps {
            s.push_str(&format!(" {} {}", format_value(*t), format_point(*p)));
        }
        w.line(format_args!("{}", s));
    }
}

/// Splits records at block headers; `head` says which tags open a block.
fn blocks<'r, 'a>(
    records: &'r [Record<'a>],
    head: impl Fn(&str) -> bool,
) -> Result<Vec<(&'r Record<'a>, &'r [Record<'a>])>, ParseError> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < records.len() {
        let r = &records[i];
        if !head(r.tag()) {
            return Err(r.err(format!("`{}` outside a block", r.tag())));
        }
        let mut j = i + 1;
        while j < records.len() && !head(records[j].tag()) {
            j += 1;
        }
        out.push((r, &records[i + 1..j]));
        i = j;
    }
    Ok(out)
}

impl Format for MapCertificate {
    const KIND: &'static str = "cert";

    fn from_records(records: &[Record<'_>]) -> Result<Self, ParseError> {
        let (mut fw, mut bw, mut boundary) = (None, None, None);
        for (h, body) in blocks(records, |t| matches!(t, "forward" | "backward" | "boundary"))? {
            match h.tag() {
                "forward" | "backward" => {
                    h.expect_len(1)?;
                    let slot = if h.tag() == "forward" { &mut fw } else { &mut bw };
                    if slot.is_some() {
                        return Err(h.err(format!("second `{}` block", h.tag())));
                    }
                    *slot = Some(plmap_from(body)?);
                }
                _ => {
                    if !body.is_empty() || boundary.is_some() {
                        return Err(h.err("`boundary` is a single line"));
                    }
                    let split = h.tokens.iter().position(|&t| t == "/").ok_or_else(|| h.err("`boundary` needs `/` between the two sides"))?;
                    let ids = |range: std::ops::Range<usize>| range.map(|i| h.index(i)).collect::<Result<Vec<_>, _>>();
                    boundary = Some((ids(1..split)?, ids(split + 1..h.tokens.len())?));
                }
            }
        }
        let line = records.last().map_or(1, |r| r.line);
        Ok(MapCertificate {
            forward: fw.ok_or_else(|| crate::text::perr(line, "missing `forward` block"))?,
            backward: bw.ok_or_else(|| crate::text::perr(line, "missing `backward` block"))?,
            boundary,
        })
    }

    fn write(&self, w: &mut Writer) {
        w.line(format_args!("forward"));
        write_plmap(w, &self.forward);
        w.line(format_args!("backward"));
        write_plmap(w, &self.backward);
        if let Some((a, b)) = &self.boundary {
            let join = |v: &[usize]| v.iter().map(|x| format!(" {}", x)).collect::<String>();
            w.line(format_args!("boundary{} /{}", join(a), join(b)));
        }
    }
}

impl Format for ZigzagCertificate {
    const KIND: &'static str = "zigzag";

    fn from_records(records: &[Record<'_>]) -> Result<Self, ParseError> {
        let mut reeb = BTreeMap::new();
        let mut spaces = BTreeMap::new();
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for (h, body) in blocks(records, |t| matches!(t, "R" | "X" | "left" | "right"))? {
            h.expect_len(2)?;
            let i = h.index(1)?;
            let dup = match h.tag() {
                "R" => reeb.insert(i, ReebGraph::from_records(body)?).is_some(),
                "X" => spaces.insert(i, ReebGraph::from_records(body)?).is_some(),
                "left" => left.insert(i, plmap_from(body)?).is_some(),
                _ => right.insert(i, plmap_from(body)?).is_some(),
            };
            if dup {
                return Err(h.err(format!("second `{} {}` block", h.tag(), i)));
            }
        }
        let line = records.last().map_or(1, |r| r.line);
        fn dense<T>(m: BTreeMap<usize, T>, n: usize, what: &str, line: usize) -> Result<Vec<T>, ParseError> {
            if m.len() != n || m.keys().enumerate().any(|(i, &k)| i != k) {
                return Err(crate::text::perr(line, format!("`{}` blocks must be numbered 0..{}", what, n)));
            }
            Ok(m.into_values().collect())
        }
        let n = reeb.len();
        if n == 0 {
            return Err(crate::text::perr(line, "a zigzag needs at least one `R` block"));
        }
        Ok(ZigzagCertificate {
            reeb: dense(reeb, n, "R", line)?,
            spaces: dense(spaces, n - 1, "X", line)?,
            left: dense(left, n - 1, "left", line)?,
            right: dense(right, n - 1, "right", line)?,
        })
    }

    fn write(&self, w: &mut Writer) {
        for (i, r) in self.reeb.iter().enumerate() {
            w.line(format_args!("R {}", i));
            r.write(w);
            if i < self.spaces.len() {
                w.line(format_args!("X {}", i));
                self.spaces[i].write(w);
            }
            if i < self.left.len() {
                w.line(format_args!("left {}", i));
                write_plmap(w, &self.left[i]);
            }
            if i < self.right.len() {
                w.line(format_args!("right {}", i));
                write_plmap(w, &self.right[i]);
            }
        }
    }
}

impl Format for InterleavingCertificate {
    const KIND: &'static str = "interleaving";

    fn from_records(records: &[Record<'_>]) -> Result<Self, ParseError> {
        let (mut eps, mut m, mut grid) = (None, None, None);
        let mut maps: BTreeMap<&str, LeveledMap> = BTreeMap::new();
        let mut current: Option<&str> = None;
        for r in records {
            match r.tag() {
                "eps" | "m" => {
                    r.expect_len(2)?;
                    *(if r.tag() == "eps" { &mut eps } else { &mut m }) = Some(r.value(1)?);
                }
                "grid" => grid = Some((1..r.tokens.len()).map(|i| r.value(i)).collect::<Result<Vec<_>, _>>()?),
                "phi" | "psi" => {
                    r.expect_len(1)?;
                    let name = if r.tag() == "phi" { "phi" } else { "psi" };
                    if maps.insert(name, LeveledMap { nodes: Vec::new(), strands: Vec::new() }).is_some() {
                        return Err(r.err(format!("second `{}` block", name)));
                    }
                    current = Some(name);
                }
                "n" | "s" => {
                    let map = current.and_then(|c| maps.get_mut(c)).ok_or_else(|| r.err("`n`/`s` rows belong in a `phi` or `psi` block"))?;
                    let rows = if r.tag() == "n" { &mut map.nodes } else { &mut map.strands };
                    sequential(r, rows.len())?;
                    rows.push((2..r.tokens.len()).map(|i| r.index(i)).collect::<Result<Vec<_>, _>>()?);
                }
                _ => return Err(unknown(r, "interleaving")),
            }
        }
        let line = records.last().map_or(1, |r| r.line);
        let need = |what: &str| crate::text::perr(line, format!("missing `{}`", what));
        Ok(InterleavingCertificate {
            eps: eps.ok_or_else(|| need("eps"))?,
            m: m.ok_or_else(|| need("m"))?,
            grid: grid.ok_or_else(|| need("grid"))?,
            phi: maps.remove("phi").ok_or_else(|| need("phi"))?,
            psi: maps.remove("psi").ok_or_else(|| need("psi"))?,
        })
    }

    fn write(&self, w: &mut Writer) {
        w.line(format_args!("eps {}", format_value(self.eps)));
        w.line(format_args!("m {}", format_value(self.m)));
        w.line(format_args!("grid{}", self.grid.iter().map(|v| format!(" {}", format_value(*v))).collect::<String>()));
        for (name, map) in [("phi", &self.phi), ("psi", &self.psi)] {
            w.line(format_args!("{}", name));
            for (tag, rows) in [("n", &map.nodes), ("s", &map.strands)] {
                for (i, row) in rows.iter().enumerate() {
                    w.line(format_args!("{} {}{}", tag, i, row.iter().map(|x| format!(" {}", x)).collect::<String>()));
                }
            }
        }
    }
}

// edit sequences

/// Field names of each deformation, in serialization order.
fn fields(kind: DeformationKind) -> &'static [&'static str] {
    match kind {
        DeformationKind::Birth => &["edge", "root", "tip"],
        DeformationKind::Death => &["tip"],
        DeformationKind::Relabel => &[],
        DeformationKind::K1 => &["root", "leaf", "onto", "root_to", "tip_to"],
        DeformationKind::K2 => &["lower", "upper", "down_edge", "up_edge", "lower_to", "upper_to"],
        DeformationKind::K3 => &["lower", "upper", "lower_to", "upper_to"],
        DeformationKind::InsertEdge => &["vertex", "value"],
        DeformationKind::DeleteEdge | DeformationKind::DeleteLoop => &["edge"],
        DeformationKind::InsertLoop => &["edge", "lo", "hi"],
        DeformationKind::Slide => &["vertex", "feature", "past", "onto", "value"],
    }
}

fn step_from(r: &Record<'_>) -> Result<Deformation, ParseError> {
    let name = r.arg(1)?;
    let kind = DeformationKind::from_name(name).ok_or_else(|| r.err(format!("unknown deformation `{}`", name)))?;
    let mut kv = BTreeMap::new();
    for (i, t) in r.tokens.iter().enumerate().skip(2) {
        let (k, v) = t.split_once('=').ok_or_else(|| r.err(format!("expected key=value, found `{}`", t)))?;
        if kv.insert(k, (i, v)).is_some() {
            return Err(r.err(format!("`{}` given twice", k)));
        }
    }
    let dval = |v: &str| reeb_metrics::value::parse_dval(v).map_err(|e| r.err(e.to_string()));
    if kind == DeformationKind::Relabel {
        let mut values = Vec::new();
        for i in 2..r.tokens.len() {
            let (k, v) = r.tokens[i].split_once('=').unwrap();
            let id = k.parse().map_err(|_| r.err(format!("relabel wants <vertex>=<value>, found `{}`", r.tokens[i])))?;
            values.push((id, dval(v)?));
        }
        return Ok(Deformation::Relabel { values });
    }
    let want = fields(kind);
    if let Some(k) = kv.keys().find(|k| !want.contains(k)) {
        return Err(r.err(format!("{} has no field `{}`", name, k)));
    }
    let get = |k: &str| kv.get(k).map(|x| x.1).ok_or_else(|| r.err(format!("{} needs `{}`", name, k)));
    let idx = |k: &str| get(k)?.parse::<usize>().map_err(|_| r.err(format!("`{}` must be an index", k)));
    let val = |k: &str| dval(get(k)?);
    Ok(match kind {
        DeformationKind::Birth => Deformation::Birth { edge: idx("edge")?, root: val("root")?, tip: val("tip")? },
        DeformationKind::Death => Deformation::Death { tip: idx("tip")? },
        DeformationKind::K1 => Deformation::K1 {
            root: idx("root")?,
            leaf: idx("leaf")?,
            onto: idx("onto")?,
            root_to: val("root_to")?,
            tip_to: val("tip_to")?,
        },
        DeformationKind::K2 => Deformation::K2 {
            lower: idx("lower")?,
            upper: idx("upper")?,
            down_edge: idx("down_edge")?,
            up_edge: idx("up_edge")?,
            lower_to: val("lower_to")?,
            upper_to: val("upper_to")?,
        },
        DeformationKind::K3 => {
            Deformation::K3 { lower: idx("lower")?, upper: idx("upper")?, lower_to: val("lower_to")?, upper_to: val("upper_to")? }
        }
        DeformationKind::InsertEdge => Deformation::InsertEdge { vertex: idx("vertex")?, value: val("value")? },
        DeformationKind::DeleteEdge => Deformation::DeleteEdge { edge: idx("edge")? },
        DeformationKind::InsertLoop => Deformation::InsertLoop { edge: idx("edge")?, lo: val("lo")?, hi: val("hi")? },
        DeformationKind::DeleteLoop => Deformation::DeleteLoop { edge: idx("edge")? },
        DeformationKind::Slide => Deformation::Slide {
            vertex: idx("vertex")?,
            feature: idx("feature")?,
            past: idx("past")?,
            onto: idx("onto")?,
            value: val("value")?,
        },
        DeformationKind::Relabel => unreachable!(),
    })
}

fn step_text(s: &Deformation) -> String {
    let kind = s.kind();
    let mut out = format!("step {}", kind.name());
    let ix = |x: &usize| x.to_string();
    let dv = |x: &DVal| x.to_string();
    let vals: Vec<String> = match s {
        Deformation::Relabel { values } => {
            for (v, x) in values {
                out.push_str(&format!(" {}={}", v, x));
            }
            return out;
        }
        Deformation::Birth { edge, root, tip } => vec![ix(edge), dv(root), dv(tip)],
        Deformation::Death { tip } => vec![ix(tip)],
        Deformation::K1 { root, leaf, onto, root_to, tip_to } => vec![ix(root), ix(leaf), ix(onto), dv(root_to), dv(tip_to)],
        Deformation::K2 { lower, upper, down_edge, up_edge, lower_to, upper_to } => {
            vec![ix(lower), ix(upper), ix(down_edge), ix(up_edge), dv(lower_to), dv(upper_to)]
        }
        Deformation::K3 { lower, upper, lower_to, upper_to } => vec![ix(lower), ix(upper), dv(lower_to), dv(upper_to)],
        Deformation::InsertEdge { vertex, value } => vec![ix(vertex), dv(value)],
        Deformation::DeleteEdge { edge } | Deformation::DeleteLoop { edge } => vec![ix(edge)],
        Deformation::InsertLoop { edge, lo, hi } => vec![ix(edge), dv(lo), dv(hi)],
        Deformation::Slide { vertex, feature, past, onto, value } => vec![ix(vertex), ix(feature), ix(past), ix(onto), dv(value)],
    };
    for (k, v) in fields(kind).iter().zip(vals) {
        out.push_str(&format!(" {}={}", k, v));
    }
    out
}

impl Format for EditSequence {
    const KIND: &'static str = "sequence";

    fn from_records(records: &[Record<'_>]) -> Result<Self, ParseError> {
        let split = records.iter().position(|r| r.tag() == "step").unwrap_or(records.len());
        let start = graph_from(&records[..split], |r, i| r.dval(i))?;
        let mut seq = EditSequence::new(start);
        for r in &records[split..] {
            if r.tag() != "step" {
                return Err(r.err("graph lines must precede the steps"));
            }
            seq.steps.push(step_from(r)?);
        }
        Ok(seq)
    }

    fn write(&self, w: &mut Writer) {
        write_graph(w, &self.start, |v| v.to_string());
        for s in &self.steps {
            w.line(format_args!("{}", step_text(s)));
        }
    }
}

/// Values as written in files.
pub fn show(v: Value) -> String {
    format_value(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use reeb_metrics::fixtures;
    use reeb_metrics::landscape::example_pairs;

    fn round_trip<T: Format + PartialEq + std::fmt::Debug>(x: &T) {
        let text = to_text(x);
        let back: T = parse(&text).unwrap_or_else(|e| panic!("{}\n{}", e, text));
        assert_eq!(&back, x);
        assert_eq!(to_text(&back), text);
    }

    #[test]
    fn fixtures_round_trip() {
        round_trip(&fixtures::fig4());
        round_trip(&fixtures::torus_graph());
        round_trip(&fixtures::torus_field(&|i, j| reeb_metrics::value::int((i * 7 + j * 3) as i128), 3, 4));
        round_trip(&reeb_metrics::extended_diagram(&fixtures::fig4()).unwrap());
        for p in example_pairs() {
            round_trip(&p.a);
            round_trip(&p.fdd_certificates[0]);
            round_trip(&p.zigzags[0]);
        }
        for s in [fixtures::example1_s1(), fixtures::example1_s2(), fixtures::example4_sequence(), fixtures::remark_bug(reeb_metrics::value::int(2), 3)] {
            round_trip(&s);
        }
    }

    #[test]
    fn parallel_edges_group_into_multiplicities() {
        let text = to_text(&fixtures::torus_graph());
        assert!(text.contains("e 1 2 2\n"), "{}", text);
    }

    #[test]
    fn comments_survive() {
        let d = Doc::with_comments(fixtures::torus_graph(), &["a torus", "second line"]);
        let text = d.to_text();
        assert!(text.starts_with("reeb-graph 1\n# a torus\n# second line\nv 0 1\n"));
        assert_eq!(Doc::<ReebGraph>::parse(&text).unwrap(), d);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse::<ReebGraph>("reeb-graph 1\nv 0 1\nv 1 1\ne 0 1 1\n").unwrap_err();
        assert_eq!(e.line, 4);
        let e = parse::<ReebGraph>("reeb-graph 1\nv 0 1\nv 2 3\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse::<ExtendedDiagram>("reeb-diagram 1\np ord0 3 1\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse::<EditSequence>("reeb-sequence 1\nv 0 1\nstep birth edge=0 root=1\n").unwrap_err();
        assert!(e.message.contains("tip"), "{}", e);
    }
}
