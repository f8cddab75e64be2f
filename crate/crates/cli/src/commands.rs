use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use reeb_metrics::edit::{edit_search, transcribe, universal_bounds_with, zigzag_cost, EditError, EditSequence, ZigzagCertificate};
use reeb_metrics::fdd::{default_delta, evaluate_distortion, fdd_bounds, fdd_upper, MapCertificate};
use reeb_metrics::interleaving::{default_tol, interleaving_distance, truncated_interleaving_distance, InterleavingCertificate, DEFAULT_BUDGET};
use reeb_metrics::landscape::{self, Outcome, PairInput};
use reeb_metrics::metrics::{bottleneck_graded, bottleneck_ungraded, wasserstein, wasserstein1_exact};
use reeb_metrics::smoothing::{smooth, truncated_smooth};
use reeb_metrics::value::{format_decimal, format_value, parse_value, Bracket, Ext, Value};
use reeb_metrics::{build_reeb, extended_diagram, BuildOptions, ExtendedDiagram, PointClass, ReebGraph, ScalarField};

use crate::error::{CliError, Result};
use crate::formats::{Doc, Format};
use crate::manifest::{Entry, Manifest};

#[derive(Parser, Debug)]
#[command(name = "reeb", version, about = "Reeb graphs, persistence diagrams and the distances between them")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

fn value_arg(s: &str) -> std::result::Result<Value, String> {
    parse_value(s).map_err(|e| e.to_string())
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reeb graph of a scalar field.
    Build {
        input: PathBuf,
        output: Option<PathBuf>,
        /// Accept fields with repeated values (the graph may be non-generic).
        #[arg(long)]
        allow_ties: bool,
    },
    /// Extended persistence diagram of a Reeb graph.
    Diagram { input: PathBuf, output: Option<PathBuf> },
    /// Bottleneck distance between two diagrams (or graphs).
    Bottleneck {
        /// Match points within their class only (the default).
        #[arg(long, conflicts_with = "ungraded")]
        graded: bool,
        /// Allow matches across classes.
        #[arg(long)]
        ungraded: bool,
        a: PathBuf,
        b: PathBuf,
    },
    /// q-Wasserstein distance between two diagrams (or graphs).
    Wasserstein {
        #[arg(short, long, default_value_t = 2.0)]
        q: f64,
        #[arg(long)]
        graded: bool,
        a: PathBuf,
        b: PathBuf,
    },
    /// Reeb smoothing, optionally truncated.
    Smooth {
        #[arg(long, value_parser = value_arg)]
        eps: Value,
        #[arg(long, value_parser = value_arg)]
        tau: Option<Value>,
        input: PathBuf,
        output: Option<PathBuf>,
    },
    /// Interleaving distance, or its truncated variant with `--m`.
    Interleave {
        #[arg(long, value_parser = value_arg)]
        m: Option<Value>,
        #[arg(long, value_parser = value_arg)]
        tol: Option<Value>,
        /// Where to write the witnessing interleaving.
        #[arg(long)]
        cert: Option<PathBuf>,
        a: PathBuf,
        b: PathBuf,
    },
    /// Bracket on the functional distortion distance.
    FddBounds {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        cert: Vec<PathBuf>,
        /// Sampling resolution for the reported sampled distortion.
        #[arg(long, value_parser = value_arg)]
        delta: Option<Value>,
        #[arg(long, value_parser = value_arg)]
        tol: Option<Value>,
    },
    /// Cheapest edit sequence between two graphs.
    EditSearch {
        a: PathBuf,
        b: PathBuf,
        /// Where to write the best sequence found.
        #[arg(long)]
        seq: Option<PathBuf>,
    },
    /// Cost of a zigzag, or of an edit sequence and its transcription.
    ZigzagCost {
        input: PathBuf,
        /// Check the zigzag starts at this graph.
        #[arg(long, requires = "to")]
        from: Option<PathBuf>,
        /// Check the zigzag ends at this graph.
        #[arg(long, requires = "from")]
        to: Option<PathBuf>,
        /// Concrete value of the infinitesimal when transcribing a sequence.
        #[arg(long, value_parser = value_arg)]
        delta: Option<Value>,
        /// Where to write the transcribed zigzag.
        #[arg(long)]
        zz: Option<PathBuf>,
    },
    /// Bracket on the universal edit distance.
    UniversalBounds {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        zz: Vec<PathBuf>,
        #[arg(long, value_parser = value_arg)]
        tol: Option<Value>,
    },
    /// One metric over every pair of the given graphs.
    CompareMatrix {
        #[arg(long, value_enum, default_value_t = Metric::Graded)]
        metric: Metric,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(required = true, num_args = 2..)]
        inputs: Vec<PathBuf>,
    },
    /// Checks every inequality between the metrics over a manifest of pairs.
    ValidateLandscape {
        manifest: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Writes the example corpus and landscape manifests.
    Fixtures {
        dir: PathBuf,
        /// Random field pairs added to the landscape manifest.
        #[arg(long, default_value_t = 50)]
        random: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Metric {
    Ungraded,
    Graded,
    Interleaving,
    Fdd,
    Edit,
    Universal,
}

/// Search budgets: `REEB_BUDGET` caps both.
#[derive(Clone, Copy, Debug)]
pub struct Budgets {
    pub interleave: u64,
    pub edit: u64,
}

pub const EDIT_BUDGET: u64 = 200_000;

pub fn budgets() -> Result<Budgets> {
    match std::env::var("REEB_BUDGET") {
        Ok(s) => {
            let n: u64 = s.trim().parse().map_err(|_| CliError::Usage(format!("REEB_BUDGET must be a node count, found `{}`", s)))?;
            Ok(Budgets { interleave: n, edit: n })
        }
        Err(_) => Ok(Budgets { interleave: DEFAULT_BUDGET, edit: EDIT_BUDGET }),
    }
}

// printing

pub fn num(v: Value) -> String {
    format!("{} ({})", format_value(v), format_decimal(v))
}

pub fn ext(e: Ext) -> String {
    match e {
        Ext::Finite(v) => num(v),
        Ext::Infinite => "inf".to_string(),
    }
}

/// `name = v (dec)` for a collapsed bracket, `name in [lo, hi] (dlo, dhi)` otherwise.
pub fn bracket_line(name: &str, b: Bracket) -> String {
    if b.is_collapsed() {
        return format!("{} = {}", name, ext(b.lo));
    }
    let dec = |e: Ext| e.finite().map_or("inf".to_string(), format_decimal);
    format!("{} in {} ({}, {})", name, b, dec(b.lo), dec(b.hi))
}

fn cell(b: Bracket) -> String {
    if b.is_collapsed() {
        b.lo.to_string()
    } else {
        b.to_string()
    }
}

fn emit(out: &mut dyn Write, line: impl AsRef<str>) -> Result<()> {
    writeln!(out, "{}", line.as_ref()).map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })
}

// files

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn parsed<T: Format>(path: &Path, text: &str) -> Result<T> {
    Doc::<T>::parse(text).map(|d| d.body).map_err(|source| CliError::Parse { path: path.to_path_buf(), source })
}

pub fn load<T: Format>(path: &Path) -> Result<T> {
    parsed(path, &read_text(path)?)
}

fn kind_of(text: &str) -> &str {
    text.lines().next().and_then(|l| l.split_whitespace().next()).unwrap_or("")
}

fn diagram_of(g: &ReebGraph) -> Result<ExtendedDiagram> {
    extended_diagram(g).map_err(CliError::pre)
}

/// A `.dgm` file, or the diagram of a `.reeb` file.
fn load_diagram(path: &Path) -> Result<ExtendedDiagram> {
    let text = read_text(path)?;
    if kind_of(&text) == "reeb-graph" {
        return diagram_of(&parsed(path, &text)?);
    }
    parsed(path, &text)
}

fn generic(path: &Path) -> Result<ReebGraph> {
    let g: ReebGraph = load(path)?;
    g.check_generic().map_err(|e| CliError::Precondition(format!("{}: {}", path.display(), e)))?;
    Ok(g)
}

fn put<T: Format>(x: T, path: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    let text = Doc::new(x).to_text();
    match path {
        Some(p) => write_text(p, &text),
        None => out.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source }),
    }
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(CliError::Usage("--jobs must be positive".into()));
        }
        b = b.num_threads(j);
    }
    b.build().map_err(|e| CliError::Usage(e.to_string()))
}

pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<()> {
    let budget = budgets()?;
    match cli.command {
        Command::Build { input, output, allow_ties } => {
            let f: ScalarField = load(&input)?;
            let g = build_reeb(&f, BuildOptions { allow_ties }).map_err(CliError::pre)?;
            put(g, output.as_deref(), out)
        }
        Command::Diagram { input, output } => {
            let d = diagram_of(&load(&input)?)?;
            put(d, output.as_deref(), out)
        }
        Command::Bottleneck { ungraded, a, b, .. } => {
            let (da, db) = (load_diagram(&a)?, load_diagram(&b)?);
            if ungraded {
                emit(out, format!("d_b = {}", num(bottleneck_ungraded(&da, &db))))
            } else {
                emit(out, format!("d_B = {}", num(bottleneck_graded(&da, &db))))
            }
        }
        Command::Wasserstein { q, graded, a, b } => {
            let (da, db) = (load_diagram(&a)?, load_diagram(&b)?);
            if q == 1.0 {
                return emit(out, format!("W_1 = {}", num(wasserstein1_exact(&da, &db, graded))));
            }
            // irrational in general: decimal only
            let w = wasserstein(&da, &db, q, graded).map_err(CliError::pre)?;
            emit(out, format!("W_{} = {:.6}", q, w))
        }
        Command::Smooth { eps, tau, input, output } => {
            let g = generic(&input)?;
            let s = match tau {
                None => smooth(&g, eps).map(|r| r.graph),
                Some(t) => truncated_smooth(&g, eps, t),
            }
            .map_err(CliError::pre)?;
            put(s, output.as_deref(), out)
        }
        Command::Interleave { m, tol, cert, a, b } => {
            let (ga, gb) = (generic(&a)?, generic(&b)?);
            let tol = tol.unwrap_or_else(default_tol);
            let (name, r) = match m {
                Some(m) if m != Value::default() => {
                    (format!("d_I^{}", format_value(m)), truncated_interleaving_distance(&ga, &gb, m, tol, budget.interleave))
                }
                _ => ("d_I".to_string(), interleaving_distance(&ga, &gb, tol, budget.interleave)),
            };
            let r = r.map_err(CliError::pre)?;
            emit(out, bracket_line(&name, r.bracket))?;
            emit(out, format!("exact = {}", r.exact))?;
            emit(out, format!("complete = {}", r.complete))?;
            emit(out, format!("decisions = {}", r.decisions))?;
            if let Some(p) = cert {
                match r.certificate {
                    Some(c) => {
                        put::<InterleavingCertificate>(c, Some(&p), out)?;
                        emit(out, format!("certificate = {}", p.display()))?;
                    }
                    None => emit(out, "certificate = none")?,
                }
            }
            Ok(())
        }
        Command::FddBounds { a, b, cert, delta, tol } => {
            let (ga, gb) = (generic(&a)?, generic(&b)?);
            let certs = cert.iter().map(|p| load::<MapCertificate>(p)).collect::<Result<Vec<_>>>()?;
            let fb = fdd_bounds(&ga, &gb, &certs, tol.unwrap_or_else(default_tol), budget.interleave).map_err(CliError::pre)?;
            emit(out, bracket_line("d_FD", fb.bracket))?;
            emit(out, bracket_line("d_I", fb.interleaving))?;
            emit(out, format!("extrema = {}", num(fb.global_pair)))?;
            for (c, v) in PointClass::ALL.iter().zip(fb.class_bottleneck) {
                emit(out, format!("d_b[{}] = {}", c.name(), num(v)))?;
            }
            let delta = delta.unwrap_or_else(|| default_delta(&ga, &gb));
            for (i, (c, path)) in certs.iter().zip(&cert).enumerate() {
                // validated inside fdd_bounds already
                let checked = c.validate(&ga, &gb).map_err(CliError::pre)?;
                let (lo, hi) = evaluate_distortion(&checked, delta);
                emit(out, format!("certificate {} ({}): upper = {}", i, path.display(), ext(fdd_upper(&checked))))?;
                emit(out, format!("certificate {}: sampled distortion in [{}, {}] at delta = {}", i, lo, hi, format_value(delta)))?;
            }
            if fb.bracket == fb.interleaving {
                emit(out, "d_I and d_FD brackets coincide")?;
            }
            Ok(())
        }
        Command::EditSearch { a, b, seq } => {
            let (ga, gb) = (generic(&a)?, generic(&b)?);
            let r = edit_search(&ga, &gb, budget.edit).map_err(CliError::pre)?;
            emit(out, bracket_line("d_E", r.bracket))?;
            emit(out, format!("exact = {}", r.exact))?;
            emit(out, format!("complete = {}", r.complete))?;
            emit(out, format!("expanded = {}", r.expanded))?;
            if let Some(c) = r.cost {
                emit(out, format!("cost = {}", c))?;
            }
            if let Some(s) = r.sequence {
                emit(out, format!("steps = {}", s.steps.len()))?;
                if let Some(p) = seq {
                    put(s, Some(&p), out)?;
                    emit(out, format!("sequence = {}", p.display()))?;
                }
            }
            Ok(())
        }
        Command::ZigzagCost { input, from, to, delta, zz } => {
            let text = read_text(&input)?;
            let z = if kind_of(&text) == "reeb-sequence" {
                let s: EditSequence = parsed(&input, &text)?;
                let cost = s.cost().map_err(CliError::pre)?;
                emit(out, format!("sequence cost = {}", cost))?;
                emit(out, format!("vertex tracking cost = {}", s.vertex_tracking_cost().map_err(CliError::pre)?))?;
                let d = delta.unwrap_or_else(|| s.concrete_delta());
                emit(out, format!("delta = {}", num(d)))?;
                emit(out, format!("sequence cost at delta = {}", num(cost.at(d))))?;
                let z = transcribe(&s, d).map_err(CliError::pre)?;
                if let Some(p) = zz {
                    put(z.clone(), Some(&p), out)?;
                }
                z
            } else {
                parsed::<ZigzagCertificate>(&input, &text)?
            };
            match (from, to) {
                (Some(f), Some(t)) => z.validate_between(&load(&f)?, &load(&t)?),
                _ => z.validate(),
            }
            .map_err(CliError::pre)?;
            emit(out, format!("length = {}", z.reeb.len()))?;
            emit(out, format!("zigzag cost = {}", num(zigzag_cost(&z).map_err(CliError::pre)?)))
        }
        Command::UniversalBounds { a, b, zz, tol } => {
            let (ga, gb) = (generic(&a)?, generic(&b)?);
            let zs = zz.iter().map(|p| load::<ZigzagCertificate>(p)).collect::<Result<Vec<_>>>()?;
            let lower = if ga.component_count() == gb.component_count() {
                fdd_bounds(&ga, &gb, &[], tol.unwrap_or_else(default_tol), budget.interleave).map_err(CliError::pre)?.bracket.lo
            } else {
                Ext::Infinite
            };
            let search = edit_search(&ga, &gb, budget.edit).ok();
            let u = universal_bounds_with(&ga, &gb, &zs, lower, search.as_ref()).map_err(CliError::pre)?;
            emit(out, bracket_line("delta_E", u.bracket))?;
            emit(out, format!("d_B = {}", num(u.bottleneck)))?;
            for (i, c) in u.certificate_costs.iter().enumerate() {
                emit(out, format!("certificate {} ({}) = {}", i, zz[i].display(), num(*c)))?;
            }
            let opt = |v: Option<Value>| v.map_or("none".to_string(), num);
            emit(out, format!("transcribed = {}", opt(u.transcribed)))?;
            emit(out, format!("collapse = {}", opt(u.collapse)))
        }
        Command::CompareMatrix { metric, jobs, inputs } => {
            let graphs = inputs.iter().map(|p| generic(p)).collect::<Result<Vec<_>>>()?;
            let pairs: Vec<(usize, usize)> = (0..graphs.len()).flat_map(|i| (i + 1..graphs.len()).map(move |j| (i, j))).collect();
            let cells: Vec<String> = pool(jobs)?.install(|| {
                pairs.par_iter().map(|&(i, j)| matrix_cell(metric, &graphs[i], &graphs[j], budget)).collect::<Result<Vec<_>>>()
            })?;
            emit(out, format!("# metric {}", metric.to_possible_value().unwrap().get_name()))?;
            for ((i, j), c) in pairs.iter().zip(cells) {
                emit(out, format!("{} {} {} {} {}", i, j, inputs[*i].display(), inputs[*j].display(), c))?;
            }
            Ok(())
        }
        Command::ValidateLandscape { manifest, jobs } => validate_landscape(&manifest, jobs, budget, out),
        Command::Fixtures { dir, random, seed } => {
            for p in crate::corpus::write(&dir, random, seed)? {
                emit(out, p.display().to_string())?;
            }
            Ok(())
        }
    }
}

fn matrix_cell(metric: Metric, a: &ReebGraph, b: &ReebGraph, budget: Budgets) -> Result<String> {
    let tol = default_tol();
    Ok(match metric {
        Metric::Ungraded => format_value(bottleneck_ungraded(&diagram_of(a)?, &diagram_of(b)?)),
        Metric::Graded => format_value(bottleneck_graded(&diagram_of(a)?, &diagram_of(b)?)),
        Metric::Interleaving => cell(interleaving_distance(a, b, tol, budget.interleave).map_err(CliError::pre)?.bracket),
        Metric::Fdd => cell(fdd_bounds(a, b, &[], tol, budget.interleave).map_err(CliError::pre)?.bracket),
        Metric::Edit => match edit_search(a, b, budget.edit) {
            Ok(r) => cell(r.bracket),
            Err(EditError::Undefined { .. }) => "undefined".to_string(),
            Err(e) => return Err(CliError::pre(e)),
        },
        Metric::Universal => {
            let lower = fdd_bounds(a, b, &[], tol, budget.interleave).map_err(CliError::pre)?.bracket.lo;
            let search = edit_search(a, b, budget.edit).ok();
            cell(universal_bounds_with(a, b, &[], lower, search.as_ref()).map_err(CliError::pre)?.bracket)
        }
    })
}

/// The graphs, fields and certificates of a `pair` entry.
pub fn pair_input(entry: &Entry, base: &Path) -> Result<PairInput> {
    let at = |p: &str| base.join(p);
    let side = |g: &str, f: &str| -> Result<(ReebGraph, Option<ScalarField>)> {
        let field = entry.get(f).map(|p| load::<ScalarField>(&at(p))).transpose()?;
        let graph = match (entry.get(g), &field) {
            (Some(p), _) => load(&at(p))?,
            (None, Some(fl)) => build_reeb(fl, BuildOptions::default()).map_err(|e| CliError::Precondition(format!("{}: {}", entry.name, e)))?,
            (None, None) => unreachable!("checked by the manifest parser"),
        };
        Ok((graph, field))
    };
    let (a, fa) = side("a", "fa")?;
    let (b, fb) = side("b", "fb")?;
    Ok(PairInput {
        name: entry.name.clone(),
        a,
        b,
        fields: fa.zip(fb),
        fdd_certificates: entry.all("cert").map(|p| load(&at(p))).collect::<Result<_>>()?,
        zigzags: entry.all("zz").map(|p| load(&at(p))).collect::<Result<_>>()?,
    })
}

fn metric_bracket(d: &landscape::Distances, metric: &str) -> Option<Bracket> {
    match metric {
        "ungraded" => Some(Bracket::exact(d.ungraded)),
        "graded" => Some(Bracket::exact(d.graded)),
        "interleaving" => Some(d.interleaving),
        "fdd" => Some(d.fdd),
        "edit" => d.edit,
        "universal" => Some(d.universal),
        "linf" => d.linf.map(Bracket::exact),
        _ => None,
    }
}

fn contains(b: Bracket, v: Value) -> bool {
    b.lo <= Ext::Finite(v) && Ext::Finite(v) <= b.hi
}

fn validate_landscape(path: &Path, jobs: Option<usize>, budget: Budgets, out: &mut dyn Write) -> Result<()> {
    let manifest: Manifest = load(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    let entries: Vec<&Entry> = manifest.entries.iter().filter(|e| e.command == "pair").collect();
    let inputs = entries.iter().map(|e| pair_input(e, base)).collect::<Result<Vec<_>>>()?;
    let opts = landscape::Options { budget: budget.interleave, edit_budget: budget.edit.min(landscape::Options::default().edit_budget), ..Default::default() };
    let reports: Vec<_> = pool(jobs)?.install(|| inputs.par_iter().map(|p| landscape::run(p, &opts)).collect());

    let head = ["pair", "d_b", "d_B", "d_I", "d_FD", "d_E", "delta_E", "checks"];
    let mut rows = vec![head.iter().map(|s| s.to_string()).collect::<Vec<_>>()];
    let mut notes = Vec::new();
    let (mut violated, mut open, mut missed) = (0, 0, 0);
    let mut failure = None;
    for (e, r) in entries.iter().zip(&reports) {
        let r = match r {
            Ok(r) => r,
            Err(err) => {
                rows.push(vec![e.name.clone(), format!("error: {}", err)]);
                failure.get_or_insert_with(|| format!("{}: {}", e.name, err));
                continue;
            }
        };
        let d = &r.distances;
        let v = r.violations().count();
        let o = r.indeterminate().count();
        violated += v;
        open += o;
        for c in r.checks.iter().filter(|c| c.outcome != Outcome::Holds) {
            let tag = if c.outcome == Outcome::Violated { "VIOLATED" } else { "open" };
            notes.push(format!("{} {}: {} with lhs {} and rhs {}", tag, e.name, c.relation, c.lhs, c.rhs));
        }
        for (m, want) in e.expectations() {
            let want = parse_value(want).expect("checked by the manifest parser");
            match metric_bracket(d, m) {
                Some(b) if contains(b, want) => {}
                got => {
                    missed += 1;
                    let got = got.map_or("nothing".to_string(), |b| b.to_string());
                    notes.push(format!("MISMATCH {}: expected {} = {}, computed {}", e.name, m, format_value(want), got));
                }
            }
        }
        let status = match (v, o) {
            (0, 0) => "ok".to_string(),
            (0, o) => format!("ok, {} open", o),
            (v, _) => format!("{} violated", v),
        };
        rows.push(vec![
            e.name.clone(),
            format_value(d.ungraded),
            format_value(d.graded),
            cell(d.interleaving),
            cell(d.fdd),
            d.edit.map_or("-".to_string(), cell),
            cell(d.universal),
            status,
        ]);
    }
    let widths: Vec<usize> = (0..head.len()).map(|k| rows.iter().filter_map(|r| r.get(k)).map(|s| s.len()).max().unwrap_or(0)).collect();
    for r in &rows {
        let line: Vec<String> = r.iter().enumerate().map(|(k, s)| format!("{:<w$}", s, w = widths[k])).collect();
        emit(out, line.join("  ").trim_end())?;
    }
    for n in &notes {
        emit(out, n)?;
    }
    emit(out, format!("pairs = {}, violations = {}, open = {}, mismatches = {}", entries.len(), violated, open, missed))?;
    if let Some(f) = failure {
        return Err(CliError::Precondition(f));
    }
    if violated + missed > 0 {
        return Err(CliError::Violations(violated + missed));
    }
    Ok(())
}

/// Numbers printed by the front end, used by tests to read results back.
pub fn read_number(line: &str) -> Option<Value> {
    let (_, rest) = line.split_once(" = ")?;
    parse_value(rest.split_whitespace().next()?).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use reeb_metrics::value::frac;

    #[test]
    fn bracket_lines() {
        assert_eq!(bracket_line("d_I", Bracket::exact(frac(1, 2))), "d_I = 0.5 (0.500000)");
        assert_eq!(bracket_line("d", Bracket { lo: Ext::Finite(frac(1, 3)), hi: Ext::Infinite }), "d in [1/3, inf] (0.333333, inf)");
        assert_eq!(read_number("d_B = 1/3 (0.333333)"), Some(frac(1, 3)));
    }
}
