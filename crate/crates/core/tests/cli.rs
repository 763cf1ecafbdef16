use std::path::PathBuf;

use eulerkit::catalog;
use eulerkit::cli::{run, EXIT_ERROR, EXIT_INVALID, EXIT_OK, EXIT_UNDEFINED};
use eulerkit::format;
use eulerkit::higher::cat_as_bicat;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn cli(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["eulerkit"];
    argv.extend_from_slice(args);
    run(argv)
}

#[test]
fn chi_examples() {
    assert_eq!(cli(&["chi", &fixture("two_arrow.json")]), (EXIT_OK, "chi = 1".into()));
    assert_eq!(cli(&["chi", &fixture("z3_monoid.json")]), (EXIT_OK, "chi = 1/3".into()));
    assert_eq!(cli(&["chi", &fixture("discrete3.json")]), (EXIT_OK, "chi = 3".into()));
}

#[test]
fn matrix_and_witness_flags() {
    let (code, out) = cli(&["chi", "--matrix", "--witness", &fixture("two_arrow.json")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "chi = 1\nmatrix = 1 1 / 0 1\nweighting = [0, 1]\ncoweighting = [1, 0]");
    let (_, out) = cli(&["chi", "--matrix", &fixture("discrete3.json")]);
    assert!(out.contains("matrix = 1 0 0 / 0 1 0 / 0 0 1"), "{out}");
    let (code, out) = cli(&["chi-bicat", "--matrix", &fixture("derived_bicat.json")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "chi = -1\nmatrix = 1 2 / 0 1/2");
}

#[test]
fn weighting_sets() {
    assert_eq!(
        cli(&["weighting", &fixture("three_object.json")]),
        (EXIT_OK, "particular = [0, 0, 1]; nullspace dim = 1".into())
    );
    let (code, out) = cli(&["coweighting", "--witness", &fixture("three_object.json")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "particular = [1, 0, 0]; nullspace dim = 1\nbasis = [1, -1, 0]");
}

#[test]
fn undefined_results_exit_2() {
    let (code, out) = cli(&["chi", &fixture("no_weighting.json")]);
    assert_eq!(code, EXIT_UNDEFINED);
    assert_eq!(out, "chi undefined: no weighting");
    assert_eq!(cli(&["weighting", &fixture("no_weighting.json")]), (EXIT_UNDEFINED, "no weighting".into()));
    assert_eq!(cli(&["coweighting", &fixture("no_weighting.json")]).0, EXIT_OK);
}

#[test]
fn invalid_structure_exit_1() {
    let (code, out) = cli(&["validate", &fixture("bad_identity_law.json")]);
    assert_eq!(code, EXIT_INVALID);
    assert!(out.starts_with("invalid:"), "{out}");
    assert_eq!(out.lines().count(), 2, "{out}");
    assert!(out.contains('f'), "{out}");
    assert_eq!(cli(&["chi", &fixture("bad_identity_law.json")]).0, EXIT_INVALID);
    assert_eq!(
        cli(&["validate", &fixture("two_arrow.json")]),
        (EXIT_OK, "valid: 2 objects, 3 morphisms".into())
    );
}

#[test]
fn errors_exit_3() {
    let (code, out) = cli(&["chi", &fixture("malformed.json")]);
    assert_eq!(code, EXIT_ERROR);
    assert!(out.contains("line") && out.contains("column"), "{out}");
    let (code, out) = cli(&["chi", &fixture("unknown_key.json")]);
    assert_eq!(code, EXIT_ERROR);
    assert!(out.contains("unknown field"), "{out}");
    assert_eq!(cli(&["chi", "/nonexistent/file.json"]).0, EXIT_ERROR);
    assert_eq!(cli(&["frobnicate"]).0, EXIT_ERROR);
    assert_eq!(cli(&[]).0, EXIT_ERROR);
    assert_eq!(cli(&["nerve", &fixture("two_arrow.json"), "--dim", "x"]).0, EXIT_ERROR);
    assert_eq!(cli(&["--help"]).0, EXIT_OK);
}

#[test]
fn constructions_roundtrip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let p = |n: &str| dir.path().join(n).to_string_lossy().into_owned();
    let two = fixture("two_arrow.json");
    let z3 = fixture("z3_monoid.json");
    assert_eq!(cli(&["product", &two, &z3, "-o", &p("prod.json")]).0, EXIT_OK);
    assert_eq!(cli(&["chi", &p("prod.json")]), (EXIT_OK, "chi = 1/3".into()));
    assert_eq!(cli(&["coproduct", &two, &z3, "-o", &p("sum.json")]).0, EXIT_OK);
    assert_eq!(cli(&["chi", &p("sum.json")]), (EXIT_OK, "chi = 4/3".into()));
    assert_eq!(cli(&["opposite", &fixture("three_object.json"), "-o", &p("op.json")]).0, EXIT_OK);
    assert_eq!(cli(&["chi", "--witness", &p("op.json")]).1, "chi = 1\nweighting = [1, 0, 0]\ncoweighting = [0, 0, 1]");
    assert_eq!(cli(&["skeleton", &fixture("three_object.json"), "-o", &p("sk.json")]).0, EXIT_OK);
    assert_eq!(cli(&["validate", &p("sk.json")]).1, "valid: 2 objects, 3 morphisms");
    assert_eq!(
        cli(&["equivalent", &fixture("three_object.json"), &p("sk.json")]),
        (EXIT_OK, "equivalent = true".into())
    );
    let (_, out) = cli(&["equivalent", "--witness", &fixture("three_object.json"), &p("sk.json")]);
    assert!(out.contains("objects: x -> x, y -> x, z -> z"), "{out}");
    assert_eq!(cli(&["equivalent", &two, &z3]), (EXIT_OK, "equivalent = false".into()));
    // stdout form parses back
    let (_, json) = cli(&["opposite", &two]);
    assert!(format::category_from_json(&json).is_ok());
    assert_eq!(cli(&["product", &two, &z3, "-o", "/nonexistent/dir/x.json"]).0, EXIT_ERROR);
}

#[test]
fn nerve_and_simplicial_verbs() {
    let dir = tempfile::tempdir().unwrap();
    let n = dir.path().join("n.json").to_string_lossy().into_owned();
    assert_eq!(cli(&["nerve", &fixture("two_arrow.json"), "--dim", "3", "-o", &n]).0, EXIT_OK);
    assert_eq!(cli(&["validate-sset", &n]), (EXIT_OK, "valid: dim 3, simplex counts [2, 3, 4, 5]".into()));
    let (code, out) = cli(&["horncheck", "--unique", &n]);
    assert_eq!(code, EXIT_OK);
    assert!(out.ends_with("quasi-category: true; nerve-shaped: true; checked up to dim 3"), "{out}");
    assert_eq!(cli(&["chi-sset", &n]), (EXIT_OK, "chi = 1".into()));
    let (_, default_dim) = cli(&["nerve", &fixture("two_arrow.json")]);
    assert!(default_dim.contains("\"dim\": 4"));
}

#[test]
fn horncheck_failures_and_undefined_chi() {
    use eulerkit::simplicial::{delete_simplex, double_top_simplex, nerve};
    let dir = tempfile::tempdir().unwrap();
    let x = nerve(&catalog::chain(3), 3);
    let cut = delete_simplex(&x, 2, x.index_of(2, "p0≤p1;p1≤p2").unwrap()).unwrap();
    let cut_path = dir.path().join("cut.json");
    std::fs::write(&cut_path, format::sset_to_json(&cut)).unwrap();
    let cut_path = cut_path.to_string_lossy().into_owned();
    assert_eq!(cli(&["validate-sset", &cut_path]).0, EXIT_OK);
    assert_eq!(cli(&["horncheck", &cut_path]).0, EXIT_INVALID);
    let (code, out) = cli(&["chi-sset", &cut_path]);
    assert_eq!(code, EXIT_UNDEFINED);
    assert!(out.starts_with("chi undefined"), "{out}");

    let x2 = nerve(&catalog::chain(3), 2);
    let dbl = double_top_simplex(&x2, x2.index_of(2, "p0≤p1;p1≤p2").unwrap());
    let dbl_path = dir.path().join("dbl.json");
    std::fs::write(&dbl_path, format::sset_to_json(&dbl)).unwrap();
    let dbl_path = dbl_path.to_string_lossy().into_owned();
    assert_eq!(cli(&["horncheck", &dbl_path]).0, EXIT_OK);
    assert_eq!(cli(&["horncheck", "--unique", &dbl_path]).0, EXIT_INVALID);
    assert_eq!(cli(&["chi-sset", &dbl_path]).0, EXIT_UNDEFINED);

    // corrupt a face entry
    let text = format::sset_to_json(&x).replacen("\"p0≤p1;p1≤p2\": \"p0≤p2\"", "\"p0≤p1;p1≤p2\": \"p0≤p1\"", 1);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, text).unwrap();
    let (code, out) = cli(&["validate-sset", &bad.to_string_lossy()]);
    assert_eq!(code, EXIT_INVALID);
    assert!(out.contains("p0≤p1;p1≤p2"), "{out}");
}

#[test]
fn chi_n_and_internal_classes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("d.json");
    let datum = eulerkit::higher::bicat_to_datum(&catalog::derived_bicategory());
    std::fs::write(&d, format::datum_to_json(&datum)).unwrap();
    assert_eq!(cli(&["chi-n", &d.to_string_lossy()]), (EXIT_OK, "chi = -1".into()));

    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        format!(
            r#"{{"level": 2, "cells": ["a"], "hom": {{"a|a": {}}}}}"#,
            format::datum_to_json(&eulerkit::higher::EulerDatum::from_category(&catalog::no_weighting()))
        ),
    )
    .unwrap();
    let (code, out) = cli(&["chi-n", &bad.to_string_lossy()]);
    assert_eq!(code, EXIT_UNDEFINED);
    assert_eq!(out, "hom-EC undefined at depth 1, pair (a, a) (path a|a)");

    let b = dir.path().join("b.json");
    std::fs::write(&b, format::bicat_to_json(&cat_as_bicat(&catalog::three_object()))).unwrap();
    assert_eq!(cli(&["internal-classes", &b.to_string_lossy()]), (EXIT_OK, "class 0: x, y\nclass 1: z".into()));
    assert_eq!(cli(&["chi-bicat", &b.to_string_lossy()]), (EXIT_OK, "chi = 1".into()));
}

#[test]
fn representations_agree() {
    let dir = tempfile::tempdir().unwrap();
    for c in [catalog::three_object(), catalog::cyclic_group(4), catalog::chain(3), catalog::split_idempotent()] {
        let cat = dir.path().join("c.json");
        let bic = dir.path().join("b.json");
        let dat = dir.path().join("d.json");
        let ner = dir.path().join("n.json");
        std::fs::write(&cat, format::category_to_json(&c)).unwrap();
        std::fs::write(&bic, format::bicat_to_json(&cat_as_bicat(&c))).unwrap();
        std::fs::write(&dat, format::datum_to_json(&eulerkit::higher::EulerDatum::from_category(&c))).unwrap();
        let s = |p: &std::path::Path| p.to_string_lossy().into_owned();
        assert_eq!(cli(&["nerve", &s(&cat), "--dim", "3", "-o", &s(&ner)]).0, EXIT_OK);
        let want = cli(&["chi", &s(&cat)]);
        assert_eq!(want.0, EXIT_OK);
        assert_eq!(cli(&["chi-bicat", &s(&bic)]), want);
        assert_eq!(cli(&["chi-n", &s(&dat)]), want);
        assert_eq!(cli(&["chi-sset", &s(&ner)]), want);
    }
}
