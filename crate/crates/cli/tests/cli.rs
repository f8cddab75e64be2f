use std::path::Path;

use proptest::prelude::*;
use rand::rngs::SmallRng;
use rand::SeedableRng;

use reeb_metrics::edit::{lift, Deformation, EditSequence};
use reeb_metrics::random::{diagram, generic_graph, grid_field};
use reeb_metrics::value::{format_value, frac, parse_value, DVal};
use reeb_metrics::{ExtendedDiagram, ReebGraph, ScalarField};
use reeb_metrics_cli::formats::{parse, to_text, Doc, Format};
use reeb_metrics_cli::manifest::Manifest;

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["reeb"];
    argv.extend_from_slice(args);
    let status = reeb_metrics_cli::run(argv, &mut out, &mut err);
    (status, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn corpus(random: usize) -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let (status, _, err) = run(&["fixtures", dir.path().to_str().unwrap(), "--random", &random.to_string()]);
    assert_eq!(status, 0, "{}", err);
    dir
}

fn p(dir: &tempfile::TempDir, name: &str) -> String {
    dir.path().join(name).display().to_string()
}

fn same_text<T: Format>(text: &str) -> Result<(), String> {
    let doc = Doc::<T>::parse(text).map_err(|e| e.to_string())?;
    let back = doc.to_text();
    if back == text {
        Ok(())
    } else {
        Err(format!("re-serialized differently:\n{}\n---\n{}", text, back))
    }
}

fn round_trips(path: &Path) -> Result<(), String> {
    let text = std::fs::read_to_string(path).unwrap();
    match path.extension().and_then(|e| e.to_str()).unwrap() {
        "reeb" => same_text::<ReebGraph>(&text),
        "field" => same_text::<ScalarField>(&text),
        "dgm" => same_text::<ExtendedDiagram>(&text),
        "cert" => same_text::<reeb_metrics::fdd::MapCertificate>(&text),
        "zz" => same_text::<reeb_metrics::edit::ZigzagCertificate>(&text),
        "ilv" => same_text::<reeb_metrics::interleaving::InterleavingCertificate>(&text),
        "seq" => same_text::<EditSequence>(&text),
        "manifest" => same_text::<Manifest>(&text),
        other => Err(format!("unexpected file type {}", other)),
    }
}

#[test]
fn every_corpus_file_round_trips_byte_for_byte() {
    let dir = corpus(3);
    // plus the certificate and sequence files the searches write
    let (a, b) = (p(&dir, "example4a.reeb"), p(&dir, "example4b.reeb"));
    assert_eq!(run(&["interleave", "--m", "1/4", "--cert", &p(&dir, "t.ilv"), &a, &b]).0, 0);
    assert_eq!(run(&["edit-search", "--seq", &p(&dir, "e.seq"), &a, &b]).0, 0);
    assert_eq!(run(&["zigzag-cost", "--zz", &p(&dir, "r.zz"), &p(&dir, "remark_bug.seq")]).0, 0);
    let mut n = 0;
    for entry in std::fs::read_dir(dir.path()).unwrap() {
        let path = entry.unwrap().path();
        round_trips(&path).unwrap_or_else(|e| panic!("{}: {}", path.display(), e));
        n += 1;
    }
    assert!(n > 40);
}

#[test]
fn exit_statuses() {
    let dir = corpus(0);
    let bad = p(&dir, "bad.reeb");
    std::fs::write(&bad, "reeb-graph 1\nv 0 1\nv 1 x\n").unwrap();
    let (status, _, err) = run(&["diagram", &bad]);
    assert_eq!(status, 2);
    assert!(err.contains("line 3"), "{}", err);
    assert_eq!(run(&["diagram", &p(&dir, "missing.reeb")]).0, 1);
    assert_eq!(run(&["no-such-command"]).0, 2);
    assert_eq!(run(&["smooth", "--eps", "one", &p(&dir, "fig4.reeb")]).0, 2);

    let (status, _, err) = run(&["edit-search", &p(&dir, "example3a.reeb"), &p(&dir, "example3b.reeb")]);
    assert_eq!(status, 3);
    assert!(err.contains("d_E undefined") && !err.contains('\u{a7}'), "{}", err);
    assert_eq!(run(&["smooth", "--eps", "1", "--tau", "3", &p(&dir, "fig4.reeb")]).0, 3);
    assert_eq!(run(&["wasserstein", "-q", "0.5", &p(&dir, "fig8a.dgm"), &p(&dir, "fig8b.dgm")]).0, 3);
    assert_eq!(run(&["interleave", "--m", "1", &p(&dir, "fig4.reeb"), &p(&dir, "fig4.reeb")]).0, 3);

    let (status, out, _) = run(&["--help"]);
    assert_eq!(status, 0);
    assert!(out.contains("validate-landscape"));
}

#[test]
fn non_generic_inputs_are_refused_with_status_three() {
    let dir = corpus(0);
    let tie = p(&dir, "tie.reeb");
    std::fs::write(&tie, "reeb-graph 1\nv 0 1\nv 1 2\nv 2 2\ne 0 1 1\ne 0 2 1\n").unwrap();
    let (status, _, err) = run(&["interleave", &tie, &p(&dir, "fig4.reeb")]);
    assert_eq!(status, 3, "{}", err);
    assert!(err.contains("share a value"), "{}", err);
}

#[test]
fn trivial_and_published_values() {
    let dir = corpus(0);
    let g = p(&dir, "fig4.reeb");
    let (status, out, _) = run(&["interleave", &g, &g]);
    assert_eq!(status, 0);
    assert!(out.starts_with("d_I = 0 (0.000000)\nexact = true\n"), "{}", out);
    let (_, out, _) = run(&["bottleneck", "--graded", &p(&dir, "fig8a.dgm"), &p(&dir, "fig8b.dgm")]);
    assert_eq!(out, "d_B = 1 (1.000000)\n");
    let (_, out, _) = run(&["wasserstein", "-q", "1", &p(&dir, "fig8a.reeb"), &p(&dir, "fig8b.reeb")]);
    assert!(out.starts_with("W_1 = "), "{}", out);
    let (status, out, _) = run(&["validate-landscape", &p(&dir, "examples.manifest")]);
    assert_eq!(status, 0, "{}", out);
    assert!(out.contains("violations = 0, ") && out.contains("mismatches = 0"), "{}", out);
}

#[test]
fn build_diagram_and_smooth_chain_through_files() {
    let dir = corpus(1);
    let (reeb, dgm, sm) = (p(&dir, "r.reeb"), p(&dir, "r.dgm"), p(&dir, "s.reeb"));
    assert_eq!(run(&["build", &p(&dir, "random0_f.field"), &reeb]).0, 0);
    assert_eq!(run(&["diagram", &reeb, &dgm]).0, 0);
    assert_eq!(run(&["smooth", "--eps", "1/4", &reeb, &sm]).0, 0);
    // diagram and graph inputs give the same bottleneck
    let (_, x, _) = run(&["bottleneck", &dgm, &sm]);
    let (_, y, _) = run(&["bottleneck", &reeb, &sm]);
    assert_eq!(x, y);
    let d = parse_value(x.split_whitespace().nth(2).unwrap()).unwrap();
    assert!(d <= frac(1, 4), "{}", x);
}

#[test]
fn a_broken_expectation_is_a_violation() {
    let dir = corpus(0);
    let text = std::fs::read_to_string(p(&dir, "examples.manifest")).unwrap();
    std::fs::write(p(&dir, "wrong.manifest"), text.replace("expect.graded=0.4", "expect.graded=0.3")).unwrap();
    let (status, out, _) = run(&["validate-landscape", &p(&dir, "wrong.manifest")]);
    assert_eq!(status, 1);
    assert!(out.contains("MISMATCH example2: expected graded = 0.3"), "{}", out);
}

#[test]
fn outputs_do_not_depend_on_the_worker_count() {
    let dir = corpus(2);
    let graphs: Vec<String> = ["fig4.reeb", "example1a.reeb", "example2a.reeb", "example3a.reeb", "example4b.reeb"].iter().map(|n| p(&dir, n)).collect();
    for metric in ["graded", "interleaving", "edit"] {
        let mut args = vec!["compare-matrix", "--metric", metric, "--jobs", "1"];
        args.extend(graphs.iter().map(|s| s.as_str()));
        let one = run(&args);
        args[4] = "4";
        assert_eq!(one, run(&args));
        assert_eq!(one.0, 0, "{}", one.2);
        assert_eq!(one.1.lines().count(), 11);
    }
    let m = p(&dir, "landscape.manifest");
    let one = run(&["validate-landscape", "--jobs", "1", &m]);
    assert_eq!(one, run(&["validate-landscape", "--jobs", "3", &m]));
    assert_eq!(one.0, 0, "{}", one.1);
}

#[test]
fn corpus_is_reproducible() {
    let (x, y) = (corpus(2), corpus(2));
    for entry in std::fs::read_dir(x.path()).unwrap() {
        let path = entry.unwrap().path();
        let twin = y.path().join(path.file_name().unwrap());
        assert_eq!(std::fs::read(&path).unwrap(), std::fs::read(twin).unwrap(), "{}", path.display());
    }
}

fn same<T: Format + PartialEq + std::fmt::Debug>(x: &T) -> Result<(), TestCaseError> {
    let text = to_text(x);
    let back: T = parse(&text).map_err(|e| TestCaseError::fail(format!("{}\n{}", e, text)))?;
    prop_assert_eq!(&back, x);
    prop_assert_eq!(to_text(&back), text);
    Ok(())
}

proptest! {
    #[test]
    fn values_print_and_parse_back(n in -10_000i128..10_000, d in 1i128..2_000) {
        let v = frac(n, d);
        prop_assert_eq!(parse_value(&format_value(v)).unwrap(), v);
    }

    #[test]
    fn random_documents_round_trip(seed in any::<u64>()) {
        let mut r = SmallRng::seed_from_u64(seed);
        let g = generic_graph(&mut r, 10, 4);
        same(&g)?;
        same(&diagram(&mut r, 8))?;
        same(&grid_field(&mut r, 3, 3, seed % 2 == 0, 5, 7))?;
        let mut s = EditSequence::new(lift(&g));
        s.steps.push(Deformation::Relabel { values: vec![(1, DVal::new(frac(7, 3), frac(-2, 1))), (0, DVal::exact(frac(1, 8)))] });
        s.steps.push(Deformation::Birth { edge: 0, root: DVal::new(frac(1, 2), frac(1, 1)), tip: DVal::exact(frac(-3, 4)) });
        same(&s)?;
    }

    #[test]
    fn comments_are_kept(lines in proptest::collection::vec("[ a-z0-9=.,]{0,20}", 0..4)) {
        let refs: Vec<&str> = lines.iter().map(|s| s.as_str()).collect();
        let doc = Doc::with_comments(reeb_metrics::fixtures::fig4(), &refs);
        let text = doc.to_text();
        prop_assert_eq!(Doc::<ReebGraph>::parse(&text).unwrap().to_text(), text);
    }
}
