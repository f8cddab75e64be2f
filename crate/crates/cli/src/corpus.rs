//! The fixture corpus: the worked examples at `a_i = i`, their
//! certificates and sequences, and two manifests.

use std::path::{Path, PathBuf};

use rand::rngs::SmallRng;
use rand::SeedableRng;

use reeb_metrics::edit::EditSequence;
use reeb_metrics::fixtures;
use reeb_metrics::landscape::example_pairs;
use reeb_metrics::random::{grid_field, perturb};
use reeb_metrics::value::{format_value, frac, int, parse_value};
use reeb_metrics::{extended_diagram, ReebGraph};

use crate::commands::write_text;
use crate::error::{CliError, Result};
use crate::formats::{Doc, Format};
use crate::manifest::{Entry, Manifest};

const EXAMPLE2_NOTE: &[&str] = &[
    "labels a_i = i, with the primed labels a'2 = 1.8 and a'3 = 3.4:",
    "a2 > a'2, a3 < a'3 and a'3 - a3 = 0.4 > a2 - a'2 = 0.2",
];

/// Header comments per example.
fn note(k: usize) -> Vec<&'static str> {
    match k {
        1 => vec!["example 1, labels a_i = i; the certificate uses eta = 1/1000 (the distance is an infimum)"],
        2 => EXAMPLE2_NOTE.to_vec(),
        3 => vec!["example 3, labels a_i = i; the shared maximum sits at 9"],
        _ => vec!["example 4, labels a_i = i; the minimum at 2 lies on the boundary"],
    }
}

/// Values the worked examples are known to take, keyed by metric.
fn expected(k: usize) -> Vec<(&'static str, &'static str)> {
    match k {
        1 => vec![("ungraded", "0"), ("graded", "0"), ("interleaving", "1/2"), ("fdd", "1/2"), ("edit", "1"), ("universal", "1")],
        2 => ["ungraded", "graded", "interleaving", "fdd", "edit", "universal"].iter().map(|m| (*m, "2/5")).collect(),
        3 => vec![("graded", "1"), ("interleaving", "1"), ("fdd", "1"), ("universal", "1")],
        _ => vec![("graded", "1"), ("interleaving", "1"), ("fdd", "1"), ("universal", "1")],
    }
}

struct Out<'a> {
    dir: &'a Path,
    written: Vec<PathBuf>,
}

impl Out<'_> {
    fn put<T: Format>(&mut self, name: &str, x: T, comments: &[&str]) -> Result<String> {
        let path = self.dir.join(name);
        write_text(&path, &Doc::with_comments(x, comments).to_text())?;
        self.written.push(path);
        Ok(name.to_string())
    }

    fn graph(&mut self, stem: &str, g: ReebGraph, comments: &[&str]) -> Result<String> {
        let d = extended_diagram(&g).expect("fixture graphs are generic");
        self.put(&format!("{}.dgm", stem), d, comments)?;
        self.put(&format!("{}.reeb", stem), g, comments)
    }
}

fn pair(name: String, params: Vec<(&str, String)>) -> Entry {
    Entry { command: "pair".into(), name, params: params.into_iter().map(|(k, v)| (k.to_string(), v)).collect() }
}

/// Writes the corpus into `dir`, returning the paths in write order.
pub fn write(dir: &Path, random: usize, seed: u64) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
    let mut out = Out { dir, written: Vec::new() };

    out.graph("fig4", fixtures::fig4(), &["genus-two graph with minima at 1 and 2 and maximum at 10"])?;
    let (a, b) = fixtures::fig8();
    out.graph("fig8a", a, &["loop over [2, 4]"])?;
    out.graph("fig8b", b, &["up-leaf from 2 to a3 = 3.8"])?;

    let mut examples = Manifest::default();
    for (k, p) in example_pairs().into_iter().enumerate() {
        let k = k + 1;
        let stem = format!("example{}", k);
        let c = note(k);
        let fa = out.graph(&format!("{}a", stem), p.a, &c)?;
        let fb = out.graph(&format!("{}b", stem), p.b, &c)?;
        let mut params = vec![("a", fa), ("b", fb)];
        for (i, cert) in p.fdd_certificates.into_iter().enumerate() {
            params.push(("cert", out.put(&format!("{}_{}.cert", stem, i), cert, &c)?));
        }
        for (i, z) in p.zigzags.into_iter().enumerate() {
            params.push(("zz", out.put(&format!("{}_{}.zz", stem, i), z, &c)?));
        }
        let mut e = pair(stem, params);
        e.params.extend(expected(k).into_iter().map(|(m, v)| (format!("expect.{}", m), format_value(parse_value(v).expect("literal")))));
        examples.entries.push(e);
    }

    let seqs: [(&str, EditSequence, &[&str]); 5] = [
        ("example1_s1", fixtures::example1_s1(), &["example 1: birth, relabel, death; cost 1+d"]),
        ("example1_s2", fixtures::example1_s2(), &["example 1: a K3 move then a K2 move; cost 1+2d"]),
        ("example2", fixtures::example2_sequence(), EXAMPLE2_NOTE),
        ("example4", fixtures::example4_sequence(), &["example 4: slide the fork, then stretch the tips"]),
        ("remark_bug", fixtures::remark_bug(int(2), 4), &["raises an up-leaf tip by 2 in four rounds; no vertex moves more than 1/2"]),
    ];
    for (name, s, c) in seqs {
        out.put(&format!("{}.seq", name), s, c)?;
    }

    out.put("examples.manifest", examples.clone(), &["the four worked examples with the values they are known to take"])?;

    let mut landscape = examples;
    let mut rng = SmallRng::seed_from_u64(seed);
    for i in 0..random {
        let f = grid_field(&mut rng, 3, 3, i % 2 == 0, 4, 8);
        let g = perturb(&mut rng, &f, frac(1, 10), 40);
        let (nf, ng) = (format!("random{}_f.field", i), format!("random{}_g.field", i));
        out.put(&nf, f, &[])?;
        out.put(&ng, g, &[])?;
        landscape.entries.push(pair(format!("random{}", i), vec![("fa", nf), ("fb", ng)]));
    }
    let header = format!("worked examples plus {} random 3x3 grid fields (seed {}) and their perturbations by at most 0.1", random, seed);
    out.put("landscape.manifest", landscape, &[&header])?;
    Ok(out.written)
}
