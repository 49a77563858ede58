//! Packed arithmetic over GF(2): bit vectors, bit matrices, rank,
//! products, and multiplicative order in GL(k,2).
//!
//! Vectors are packed into a single `u64` word with bit `i` of the
//! vector stored at bit `i` of the word, so the leftmost character of
//! the text format is bit 0. Lengths are capped at 64, which covers
//! every code handled here (k <= 16, n <= 64).

use std::fmt;

use thiserror::Error;

/// Maximum supported vector length / matrix dimension.
pub const MAX_LEN: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("length {0} exceeds supported maximum {MAX_LEN}")]
    LengthTooLarge(usize),
    #[error("matrix is not invertible")]
    Singular,
    #[error("order search exceeded cap of {0} iterations")]
    OrderCapExceeded(u64),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

/// A packed GF(2) row vector of length `len` (1..=64).
///
/// Bits beyond `len` are always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitVector {
    word: u64,
    len: usize,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        assert!((1..=MAX_LEN).contains(&len), "unsupported length {len}");
        BitVector { word: 0, len }
    }

    /// Builds a vector from the low `len` bits of `word`; higher bits
    /// are masked off.
    pub fn from_word(word: u64, len: usize) -> Self {
        assert!((1..=MAX_LEN).contains(&len), "unsupported length {len}");
        BitVector {
            word: word & mask(len),
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false // length is at least 1
    }

    pub fn is_zero(&self) -> bool {
        self.word == 0
    }

    pub fn word(&self) -> u64 {
        self.word
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len);
        (self.word >> i) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len);
        if value {
            self.word |= 1 << i;
        } else {
            self.word &= !(1 << i);
        }
    }

    /// Hamming weight: the number of set bits.
    pub fn weight(&self) -> u32 {
        self.word.count_ones()
    }

    /// Inner product <self, other> over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        debug_assert_eq!(self.len, other.len);
        (self.word & other.word).count_ones() & 1 == 1
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        debug_assert_eq!(self.len, other.len);
        BitVector {
            word: self.word ^ other.word,
            len: self.len,
        }
    }

    /// All-one vector of length `len`.
    pub fn ones(len: usize) -> Self {
        assert!((1..=MAX_LEN).contains(&len));
        BitVector {
            word: mask(len),
            len,
        }
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

fn mask(len: usize) -> u64 {
    if len == 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// A GF(2) matrix stored as one packed [`BitVector`] per row.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: Vec<BitVector>,
    cols: usize,
}

impl BitMatrix {
    pub fn from_rows(rows: Vec<BitVector>) -> Result<Self, Gf2Error> {
        let cols = rows
            .first()
            .map(BitVector::len)
            .ok_or_else(|| Gf2Error::DimensionMismatch("matrix needs at least one row".into()))?;
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Gf2Error::DimensionMismatch(format!(
                    "row {} has length {}, expected {}",
                    i,
                    r.len(),
                    cols
                )));
            }
        }
        Ok(BitMatrix { rows, cols })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1);
        BitMatrix {
            rows: vec![BitVector::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(k: usize) -> Self {
        let rows = (0..k).map(|i| BitVector::from_word(1 << i, k)).collect();
        BitMatrix { rows, cols: k }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    /// Column `j` read as a length-`nrows` vector (bit i = entry in row i).
    pub fn column(&self, j: usize) -> BitVector {
        let mut v = BitVector::zeros(self.nrows());
        for (i, row) in self.rows.iter().enumerate() {
            if row.get(j) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn transpose(&self) -> BitMatrix {
        let rows = (0..self.cols).map(|j| self.column(j)).collect();
        BitMatrix {
            rows,
            cols: self.nrows(),
        }
    }

    /// Matrix-vector product M·v with `v` as a column vector.
    ///
    /// Result bit i is the parity of row i AND v.
    pub fn mat_vec_mul(&self, v: &BitVector) -> Result<BitVector, Gf2Error> {
        if v.len() != self.cols {
            return Err(Gf2Error::DimensionMismatch(format!(
                "vector length {} does not match {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut out = BitVector::zeros(self.nrows());
        for (i, row) in self.rows.iter().enumerate() {
            if row.dot(v) {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// Same product on the packed word encoding of `v`.
    pub fn apply_word(&self, v: u64) -> u64 {
        let mut out = 0u64;
        for (i, row) in self.rows.iter().enumerate() {
            out |= (((row.word() & v).count_ones() & 1) as u64) << i;
        }
        out
    }

    /// GF(2) matrix product A·B.
    pub fn mat_mul(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.cols != other.nrows() {
            return Err(Gf2Error::DimensionMismatch(format!(
                "inner dimensions {} and {} differ",
                self.cols,
                other.nrows()
            )));
        }
        // Row i of A·B is the XOR of the rows of B selected by row i of A.
        let rows = self
            .rows
            .iter()
            .map(|arow| {
                let mut acc = BitVector::zeros(other.ncols());
                for j in 0..self.cols {
                    if arow.get(j) {
                        acc = acc.xor(other.row(j));
                    }
                }
                acc
            })
            .collect();
        Ok(BitMatrix {
            rows,
            cols: other.ncols(),
        })
    }

    /// GF(2) row rank by Gaussian elimination on a copy.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<u64> = self.rows.iter().map(BitVector::word).collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let bit = 1u64 << col;
            let Some(pivot) = (rank..rows.len()).find(|&i| rows[i] & bit != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let pivot_row = rows[rank];
            for (i, row) in rows.iter_mut().enumerate() {
                if i != rank && *row & bit != 0 {
                    *row ^= pivot_row;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.cols
    }

    /// Smallest t >= 1 with M^t = I, for invertible square M.
    ///
    /// The search is capped (default 2^k elements of GL(k,2) is a safe
    /// overestimate of any element order).
    pub fn matrix_order(&self) -> Result<u64, Gf2Error> {
        if !self.is_square() {
            return Err(Gf2Error::DimensionMismatch("matrix must be square".into()));
        }
        if !self.is_invertible() {
            return Err(Gf2Error::Singular);
        }
        let identity = BitMatrix::identity(self.cols);
        let cap = 1u64 << self.cols.min(62);
        let mut power = self.clone();
        for t in 1..=cap {
            if power == identity {
                return Ok(t);
            }
            power = power.mat_mul(self)?;
        }
        Err(Gf2Error::OrderCapExceeded(cap))
    }

    /// Parses the MAT text format: optional '#' comment lines, then one
    /// line per row of '0'/'1' characters, all rows equal length,
    /// leftmost character = column 0.
    pub fn parse_mat(text: &str) -> Result<BitMatrix, Gf2Error> {
        let mut rows: Vec<BitVector> = Vec::new();
        let mut cols = None;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.starts_with('#') || line.is_empty() {
                continue;
            }
            let expected = *cols.get_or_insert(line.len());
            if line.len() != expected {
                return Err(Gf2Error::Parse {
                    line: lineno + 1,
                    col: line.len().min(expected) + 1,
                    msg: format!("expected {} columns, found {}", expected, line.len()),
                });
            }
            if expected > MAX_LEN {
                return Err(Gf2Error::LengthTooLarge(expected));
            }
            let mut v = BitVector::zeros(expected);
            for (i, c) in line.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => v.set(i, true),
                    other => {
                        return Err(Gf2Error::Parse {
                            line: lineno + 1,
                            col: i + 1,
                            msg: format!("invalid character {other:?}, expected '0' or '1'"),
                        })
                    }
                }
            }
            rows.push(v);
        }
        if rows.is_empty() {
            return Err(Gf2Error::Parse {
                line: 1,
                col: 1,
                msg: "no matrix rows found".into(),
            });
        }
        Ok(BitMatrix {
            cols: rows[0].len(),
            rows,
        })
    }

    /// Writes the MAT text format, one row per line.
    pub fn to_mat_string(&self) -> String {
        let mut s = String::with_capacity(self.rows.len() * (self.cols + 1));
        for row in &self.rows {
            s.push_str(&row.to_string());
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.nrows(), self.cols)?;
        for row in &self.rows {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    #[test]
    fn identity_fixes_vectors() {
        let id = BitMatrix::identity(15);
        for word in [1u64, 0b1010, 0x7fff, 0x4321] {
            let v = BitVector::from_word(word, 15);
            assert_eq!(id.mat_vec_mul(&v).unwrap(), v);
        }
    }

    #[test]
    fn group_generator_times_e1_is_first_column() {
        let m = fixtures::group_generator();
        let e1 = BitVector::from_word(1, 15);
        let expected = "111111011101111"; // first column of the fixture, top to bottom
        assert_eq!(m.mat_vec_mul(&e1).unwrap().to_string(), expected);
        assert_eq!(m.column(0).to_string(), expected);
    }

    #[test]
    fn zero_vector_maps_to_zero() {
        let m = fixtures::group_generator();
        let z = BitVector::zeros(15);
        assert!(m.mat_vec_mul(&z).unwrap().is_zero());
    }

    #[test]
    fn rank_of_zero_and_identity() {
        assert_eq!(BitMatrix::zeros(4, 4).rank(), 0);
        assert_eq!(BitMatrix::identity(7).rank(), 7);
    }

    #[test]
    fn fixture_generator_has_full_rank() {
        assert_eq!(fixtures::generator_47().rank(), 15);
    }

    #[test]
    fn mat_mul_identity_and_group_order() {
        let m = fixtures::group_generator();
        let id = BitMatrix::identity(15);
        assert_eq!(m.mat_mul(&id).unwrap(), m);

        let mut m9 = id.clone();
        for _ in 0..9 {
            m9 = m9.mat_mul(&m).unwrap();
        }
        assert_eq!(m.mat_mul(&m9).unwrap(), id);
    }

    /// All six 3x3 permutation matrices, checked against composition of
    /// the permutations themselves.
    #[test]
    fn permutation_products_match_composition() {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let perm_matrix = |p: &[usize; 3]| {
            let mut m = BitMatrix::zeros(3, 3);
            for (i, &j) in p.iter().enumerate() {
                m.set(i, j, true);
            }
            m
        };
        for a in &perms {
            for b in &perms {
                let composed: [usize; 3] = [b[a[0]], b[a[1]], b[a[2]]];
                let prod = perm_matrix(a).mat_mul(&perm_matrix(b)).unwrap();
                assert_eq!(prod, perm_matrix(&composed), "{a:?} . {b:?}");
            }
        }
    }

    #[test]
    fn matrix_order_basics() {
        assert_eq!(BitMatrix::identity(5).matrix_order().unwrap(), 1);
        let swap = BitMatrix::parse_mat("01\n10\n").unwrap();
        assert_eq!(swap.matrix_order().unwrap(), 2);
    }

    #[test]
    fn fixture_group_generator_has_order_ten() {
        assert_eq!(fixtures::group_generator().matrix_order().unwrap(), 10);
    }

    #[test]
    fn singular_matrix_has_no_order() {
        let m = BitMatrix::zeros(3, 3);
        assert_eq!(m.matrix_order(), Err(Gf2Error::Singular));
    }

    #[test]
    fn mat_vec_dimension_mismatch() {
        let m = BitMatrix::identity(4);
        let v = BitVector::zeros(5);
        assert!(matches!(
            m.mat_vec_mul(&v),
            Err(Gf2Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn parse_rejects_ragged_rows() {
        let err = BitMatrix::parse_mat("1010\n101\n").unwrap_err();
        match err {
            Gf2Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_bad_character() {
        let err = BitMatrix::parse_mat("10x0\n").unwrap_err();
        match err {
            Gf2Error::Parse { line, col, .. } => {
                assert_eq!((line, col), (1, 3));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn parse_skips_comments_and_round_trips() {
        let text = "# a comment\n101\n011\n";
        let m = BitMatrix::parse_mat(text).unwrap();
        assert_eq!(m.to_mat_string(), "101\n011\n");
        assert_eq!(BitMatrix::parse_mat(&m.to_mat_string()).unwrap(), m);
    }

    fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = BitMatrix> {
        proptest::collection::vec(0u64..(1 << cols), rows).prop_map(move |words| {
            BitMatrix::from_rows(
                words
                    .into_iter()
                    .map(|w| BitVector::from_word(w, cols))
                    .collect(),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn associativity_of_product((a, b, v) in (arb_matrix(6, 6), arb_matrix(6, 6), 0u64..64)) {
            let v = BitVector::from_word(v, 6);
            let ab_v = a.mat_mul(&b).unwrap().mat_vec_mul(&v).unwrap();
            let a_bv = a.mat_vec_mul(&b.mat_vec_mul(&v).unwrap()).unwrap();
            prop_assert_eq!(ab_v, a_bv);
        }

        #[test]
        fn rank_invariant_under_row_ops(
            m in arb_matrix(5, 8),
            swap in (0usize..5, 0usize..5),
            add in (0usize..5, 0usize..5),
        ) {
            let r = m.rank();
            let mut rows: Vec<BitVector> = m.rows().to_vec();
            rows.swap(swap.0, swap.1);
            if add.0 != add.1 {
                rows[add.0] = rows[add.0].xor(&rows[add.1].clone());
            }
            let m2 = BitMatrix::from_rows(rows).unwrap();
            prop_assert_eq!(m2.rank(), r);
        }

        #[test]
        fn popcount_matches_bitwise_count(word in any::<u64>()) {
            let v = BitVector::from_word(word, 64);
            let naive = (0..64).filter(|&i| v.get(i)).count() as u32;
            prop_assert_eq!(v.weight(), naive);
        }

        #[test]
        fn order_is_minimal(word_rows in proptest::collection::vec(0u64..16, 4)) {
            let m = BitMatrix::from_rows(
                word_rows.into_iter().map(|w| BitVector::from_word(w, 4)).collect(),
            ).unwrap();
            if let Ok(t) = m.matrix_order() {
                let id = BitMatrix::identity(4);
                let mut p = id.clone();
                for j in 1..t {
                    p = p.mat_mul(&m).unwrap();
                    prop_assert_ne!(&p, &id, "M^{} = I below the reported order {}", j, t);
                }
                p = p.mat_mul(&m).unwrap();
                prop_assert_eq!(p, id);
            }
        }
    }
}
