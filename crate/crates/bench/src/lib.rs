//! Benchmark inputs shared by the criterion benches.

use ttile_core::generators::{gen_complete, gen_h_ext, gen_random_codegree};
use ttile_core::ThreeGraph;

/// Named graphs of increasing size, built deterministically.
pub fn fixtures() -> Vec<(&'static str, ThreeGraph)> {
    vec![
        ("h_ext(10)", gen_h_ext(10).expect("valid n").graph),
        ("h_ext(15)", gen_h_ext(15).expect("valid n").graph),
        ("complete(10)", gen_complete(10).expect("valid n")),
        ("random(15)", gen_random_codegree(15, 4, 0.5, 1).expect("valid parameters")),
    ]
}
