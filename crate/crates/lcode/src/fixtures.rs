//! Embedded reference data: the published 15x47 generator matrix, the
//! 15x15 order-10 group generator, and the two published weight
//! distributions. The matrices live in fixture files that are compiled
//! into the binary, so the end-to-end verification needs no filesystem
//! arguments; the same files ship in the crate's fixtures/ directory.

use std::sync::OnceLock;

use crate::analytics::LinearCode;
use crate::gf2::BitMatrix;
use crate::orbits::MatrixGroup;

/// MAT text of the 15x47 generator matrix.
pub const GAMMA47_MAT: &str = include_str!("../fixtures/gamma47.mat");
/// MAT text of the 15x15 cyclic group generator.
pub const M15_MAT: &str = include_str!("../fixtures/m15.mat");

/// Weight distribution of the [47,15,16] code, nonzero entries only.
pub const EXPECTED_DIST_47: [(usize, u64); 10] = [
    (0, 1),
    (16, 1082),
    (18, 2560),
    (20, 3360),
    (22, 6656),
    (24, 9000),
    (26, 5632),
    (28, 2400),
    (30, 1536),
    (32, 541),
];

/// Weight distribution of the extended [48,16,16] code.
pub const EXPECTED_DIST_48: [(usize, u64); 11] = [
    (0, 1),
    (16, 1623),
    (18, 4096),
    (20, 5760),
    (22, 12288),
    (24, 18000),
    (26, 12288),
    (28, 5760),
    (30, 4096),
    (32, 1623),
    (48, 1),
];

pub const EXPECTED_ENUM_47: &str = "1+1082x^16+2560x^18+3360x^20+6656x^22+9000x^24+5632x^26+2400x^28+1536x^30+541x^32";

pub const EXPECTED_ENUM_48: &str = "1+1623x^16+4096x^18+5760x^20+12288x^22+18000x^24+12288x^26+5760x^28+4096x^30+1623x^32+x^48";

/// The 15x47 generator matrix of the [47,15,16] code.
pub fn generator_47() -> BitMatrix {
    static CELL: OnceLock<BitMatrix> = OnceLock::new();
    CELL.get_or_init(|| BitMatrix::parse_mat(GAMMA47_MAT).expect("embedded fixture parses"))
        .clone()
}

/// The 15x15 generator of the prescribed cyclic group of order 10.
pub fn group_generator() -> BitMatrix {
    static CELL: OnceLock<BitMatrix> = OnceLock::new();
    CELL.get_or_init(|| BitMatrix::parse_mat(M15_MAT).expect("embedded fixture parses"))
        .clone()
}

/// The [47,15] fixture code.
pub fn fixture_code_47() -> LinearCode {
    LinearCode::new(generator_47()).expect("fixture generator has full rank")
}

/// The cyclic group of order 10 generated by the fixture matrix.
pub fn fixture_group() -> MatrixGroup {
    MatrixGroup::generate_cyclic(&group_generator()).expect("fixture generator is invertible")
}
