//! Kept in its own binary: it mutates the process environment.

use std::path::PathBuf;

use eulerkit::cli::{run, EXIT_ERROR, EXIT_OK, EXIT_UNDEFINED};

fn cli(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["eulerkit"];
    argv.extend_from_slice(args);
    run(argv)
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn budget_env_var() {
    // one node is not enough to compare two 3-object categories
    std::env::set_var("EULERKIT_BUDGET", "1");
    let three = fixture("three_object.json");
    let (code, _) = cli(&["equivalent", &three, &three]);
    std::env::set_var("EULERKIT_BUDGET", "lots");
    let (bad_code, _) = cli(&["equivalent", &three, &three]);
    std::env::remove_var("EULERKIT_BUDGET");
    let (default_code, _) = cli(&["equivalent", &three, &three]);
    assert_eq!(code, EXIT_UNDEFINED);
    assert_eq!(default_code, EXIT_OK);
    assert_eq!(bad_code, EXIT_ERROR);
}
