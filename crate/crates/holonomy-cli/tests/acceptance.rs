//! End-to-end acceptance checks for every published value the toolkit is
//! expected to reproduce. Each test prints one line per check and fails with
//! the expected/computed pair on any mismatch.
//!
//! Environment knobs:
//! - `HOLONOMY_SHORT=1` skips the order-6 census and the deeper rank
//!   extensions (they dominate the runtime).
//! - `HOLONOMY_STRETCH=1` additionally runs the optional deep
//!   lower-central-series computation.

use holonomy_cli::verify::{run_criterion, Check, Options};

fn options() -> Options {
    Options {
        long: std::env::var("HOLONOMY_SHORT").map_or(true, |v| v != "1"),
        stretch: std::env::var("HOLONOMY_STRETCH").is_ok_and(|v| v == "1"),
        workers: 4,
    }
}

fn run(n: usize) {
    let opts = options();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.workers).build().unwrap();
    let checks: Vec<Check> = pool.install(|| run_criterion(n, &opts)).unwrap();
    let mut failures = 0usize;
    for c in &checks {
        if c.pass() {
            println!("PASS  {}", c.name);
        } else {
            println!("FAIL  {}\n      expected: {}\n      computed: {}", c.name, c.expected, c.computed);
            failures += 1;
        }
    }
    assert_eq!(failures, 0, "{failures} of {} checks failed", checks.len());
}

#[test]
fn criterion_01_tor_table_and_dual_series() {
    run(1);
}

#[test]
fn criterion_02_module_ext_and_trivial_extension() {
    run(2);
}

#[test]
fn criterion_03_six_generator_dual_homology_rows() {
    run(3);
}

#[test]
fn criterion_04_rank_sequence_to_degree_ten() {
    run(4);
}

#[test]
fn criterion_05_eight_plane_dual_series_product() {
    run(5);
}

#[test]
fn criterion_06_five_variable_family() {
    run(6);
}

#[test]
fn criterion_07_graphic_census() {
    run(7);
}

#[test]
fn criterion_08_glued_pyramid_tetrahedron() {
    run(8);
}

#[test]
fn criterion_09_polygon_ln_identities() {
    run(9);
}

#[test]
fn criterion_10_stretch_seven_line_ranks() {
    run(10);
}
