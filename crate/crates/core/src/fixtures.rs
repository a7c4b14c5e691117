//! Named matrices used throughout the tests, benches and CLI fixtures.

use crate::exact::ExactMatrix;

/// A 6×4 totally equimodular matrix of rank 4.
pub fn figure1() -> ExactMatrix {
    ExactMatrix::from_ints(&[
        [1, 1, 0, 0],
        [1, 0, 1, 0],
        [1, 0, 0, 1],
        [1, 1, 1, 1],
        [0, 1, 0, 1],
        [0, 0, 1, 1],
    ])
}

/// The 4×4 thick te-interlace.
pub fn conjecture4() -> ExactMatrix {
    ExactMatrix::from_ints(&[[1, 1, 1, 1], [1, -1, -1, 1], [1, -1, 1, -1], [1, 1, -1, -1]])
}

/// The 6×6 thick te-interlace.
pub fn conjecture6() -> ExactMatrix {
    ExactMatrix::from_ints(&[
        [1, 1, 1, 1, 1, 1],
        [1, 1, 1, 1, -1, -1],
        [1, 1, 1, -1, -1, 1],
        [1, 1, -1, -1, 1, 1],
        [1, -1, -1, 1, 1, 1],
        [1, -1, 1, 1, 1, -1],
    ])
}

/// The 2×2 minimally non-TU matrix.
pub fn min_non_tu2() -> ExactMatrix {
    ExactMatrix::from_ints(&[[1, 1], [-1, 1]])
}

/// The 3×3 minimally non-TU matrix (odd-cycle incidence).
pub fn min_non_tu3() -> ExactMatrix {
    ExactMatrix::from_ints(&[[1, 1, 0], [1, 0, 1], [0, 1, 1]])
}

/// Lookup by fixture name.
pub fn by_name(name: &str) -> Option<ExactMatrix> {
    Some(match name {
        "figure1" => figure1(),
        "conjecture4" => conjecture4(),
        "conjecture6" => conjecture6(),
        "minnontu2" => min_non_tu2(),
        "minnontu3" => min_non_tu3(),
        _ => return None,
    })
}
