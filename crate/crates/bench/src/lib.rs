//! Shared fixtures for the criterion benches.

use dehnword_core::{DataSet, TwistWord};

/// Genus-three data sets exercising each synthesis path.
pub fn synthesis_inputs() -> Vec<(&'static str, DataSet)> {
    [
        ("chain", "(12,0;(1,2),(1,12),(5,12))"),
        ("two blocks", "(4,0;((1,2),3),((1,4),2))"),
        ("starFT", "(4,1;((1,2),2))"),
        ("involution", "(2,0;((1,2),8))"),
        ("rotation", "(3,2;(1,3),(2,3))"),
    ]
    .into_iter()
    .map(|(k, d)| (k, d.parse().expect("fixture parses")))
    .collect()
}

/// A long word for evaluation benches: the genus-`g` chain word to the `k`.
pub fn long_word(g: u32, k: i64) -> TwistWord {
    dehnword_core::twistword::star_word(4 * g + 2, g).expect("star word exists").power(k)
}
