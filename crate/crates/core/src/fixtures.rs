//! Worked examples shared by the tests and the verification suite.

use crate::pipedream::PipeDream;

fn pd(n: usize, crosses: &[(usize, usize)]) -> PipeDream {
    PipeDream::from_crosses(n, crosses.iter().copied()).expect("fixture lies in the staircase")
}

/// A reduced pipe dream for `13865742` in an `8 x 8` grid.
pub fn sample_dream() -> PipeDream {
    pd(
        8,
        &[
            (1, 2),
            (1, 4),
            (1, 5),
            (2, 2),
            (2, 6),
            (3, 1),
            (3, 2),
            (3, 3),
            (3, 4),
            (4, 3),
            (5, 1),
            (6, 1),
            (6, 2),
            (7, 1),
        ],
    )
}

/// `mitosis_3` of [`sample_dream`], in offspring order. These are reduced pipe
/// dreams for `13685742`.
pub fn sample_offspring() -> Vec<PipeDream> {
    let shared = [
        (1, 2),
        (1, 4),
        (1, 5),
        (2, 2),
        (2, 6),
        (5, 1),
        (6, 1),
        (6, 2),
        (7, 1),
    ];
    let rows34: [&[(usize, usize)]; 3] = [
        &[(3, 2), (3, 3), (3, 4), (4, 3)],
        &[(3, 3), (3, 4), (4, 1), (4, 3)],
        &[(3, 3), (4, 1), (4, 2), (4, 3)],
    ];
    rows34
        .iter()
        .map(|extra| pd(8, &[&shared[..], extra].concat()))
        .collect()
}
