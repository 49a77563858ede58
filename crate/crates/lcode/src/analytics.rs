//! Linear-code objects and their weight statistics.
//!
//! The weight distribution is computed exhaustively over all 2^k
//! codewords by walking the message space in Gray-code order, so each
//! step XORs a single generator row into the running codeword. The
//! message space may be split into partitions by fixed high-bit
//! prefixes; per-partition counts sum to a result that is identical
//! for every partition count.

use std::fmt::Write as _;
use std::sync::OnceLock;

use rayon::prelude::*;
use thiserror::Error;

use crate::gf2::{BitMatrix, BitVector};

/// Hard ceiling on the enumeration: 2^24 codewords.
pub const MAX_ENUM_DIMENSION: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodeError {
    #[error("generator matrix is rank-deficient: rank {rank} < {k} rows")]
    RankDeficient { rank: usize, k: usize },
    #[error("enumeration too large: k = {0} exceeds budget {MAX_ENUM_DIMENSION}")]
    EnumerationTooLarge(usize),
    #[error("trivial code has no nonzero codeword")]
    TrivialCode,
}

/// A binary linear [n,k] code given by a full-row-rank generator matrix.
#[derive(Clone, Debug)]
pub struct LinearCode {
    gen: BitMatrix,
    distribution: OnceLock<WeightDistribution>,
}

impl LinearCode {
    /// Rejects rank-deficient generator matrices rather than reducing them.
    pub fn new(gen: BitMatrix) -> Result<Self, CodeError> {
        let rank = gen.rank();
        if rank != gen.nrows() {
            return Err(CodeError::RankDeficient {
                rank,
                k: gen.nrows(),
            });
        }
        Ok(LinearCode {
            gen,
            distribution: OnceLock::new(),
        })
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.gen
    }

    pub fn length(&self) -> usize {
        self.gen.ncols()
    }

    pub fn dimension(&self) -> usize {
        self.gen.nrows()
    }

    /// The codeword for a packed message word (bit i selects row i).
    pub fn encode(&self, message: u64) -> BitVector {
        let mut cw = BitVector::zeros(self.length());
        for (i, row) in self.gen.rows().iter().enumerate() {
            if (message >> i) & 1 == 1 {
                cw = cw.xor(row);
            }
        }
        cw
    }

    /// Exact weight distribution over all 2^k codewords (cached).
    pub fn weight_distribution(&self) -> Result<&WeightDistribution, CodeError> {
        if self.dimension() > MAX_ENUM_DIMENSION {
            return Err(CodeError::EnumerationTooLarge(self.dimension()));
        }
        Ok(self
            .distribution
            .get_or_init(|| weight_distribution_partitioned(&self.gen, default_partitions(self.dimension()))))
    }

    /// Smallest weight among nonzero codewords.
    pub fn min_distance(&self) -> Result<usize, CodeError> {
        self.weight_distribution()?.min_distance()
    }

    /// Largest weight attained by any codeword.
    pub fn max_weight(&self) -> Result<usize, CodeError> {
        self.weight_distribution()?.max_weight()
    }
}

fn default_partitions(k: usize) -> usize {
    if k >= 12 {
        rayon::current_num_threads().next_power_of_two().min(1 << (k - 8))
    } else {
        1
    }
}

/// Coefficients A_0..A_n of the weight enumerator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    counts: Vec<u64>,
}

impl WeightDistribution {
    pub fn from_counts(counts: Vec<u64>) -> Self {
        WeightDistribution { counts }
    }

    pub fn length(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, w: usize) -> u64 {
        self.counts.get(w).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn min_distance(&self) -> Result<usize, CodeError> {
        (1..self.counts.len())
            .find(|&w| self.counts[w] > 0)
            .ok_or(CodeError::TrivialCode)
    }

    pub fn max_weight(&self) -> Result<usize, CodeError> {
        (1..self.counts.len())
            .rev()
            .find(|&w| self.counts[w] > 0)
            .ok_or(CodeError::TrivialCode)
    }

    /// Canonical ascending-exponent polynomial form, e.g.
    /// "1+1082x^16+2560x^18+...". Zero coefficients are omitted and a
    /// unit coefficient prints as a bare power.
    pub fn enumerator_string(&self) -> String {
        let mut s = String::new();
        for (w, &a) in self.counts.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('+');
            }
            match (w, a) {
                (0, _) => write!(s, "{a}").unwrap(),
                (_, 1) => write!(s, "x^{w}").unwrap(),
                _ => write!(s, "{a}x^{w}").unwrap(),
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    /// Line format "w count" for each nonzero A_w, ascending w.
    pub fn to_lines(&self) -> String {
        let mut s = String::new();
        for (w, &a) in self.counts.iter().enumerate() {
            if a > 0 {
                writeln!(s, "{w} {a}").unwrap();
            }
        }
        s
    }
}

/// Weight distribution by Gray-code enumeration over `partitions`
/// high-bit-prefix slices of the message space, summed. `partitions`
/// must be a power of two not exceeding 2^k. Slices run in parallel.
pub fn weight_distribution_partitioned(gen: &BitMatrix, partitions: usize) -> WeightDistribution {
    let k = gen.nrows();
    let n = gen.ncols();
    assert!(partitions.is_power_of_two() && partitions <= (1usize << k));
    let low_bits = k - partitions.trailing_zeros() as usize;

    let counts = (0..partitions as u64)
        .into_par_iter()
        .map(|prefix| {
            let mut counts = vec![0u64; n + 1];
            let base = prefix << low_bits;
            // Codeword of the Gray code of the partition base; within the
            // slice only the low bits change, one per step.
            let mut cw = encode_word(gen, gray(base));
            counts[cw.count_ones() as usize] += 1;
            for i in 1..(1u64 << low_bits) {
                let flipped = i.trailing_zeros() as usize;
                cw ^= gen.row(flipped).word();
                counts[cw.count_ones() as usize] += 1;
            }
            counts
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(&b) {
                    *x += y;
                }
                a
            },
        );
    WeightDistribution { counts }
}

fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

fn encode_word(gen: &BitMatrix, message: u64) -> u64 {
    let mut cw = 0u64;
    for (i, row) in gen.rows().iter().enumerate() {
        if (message >> i) & 1 == 1 {
            cw ^= row.word();
        }
    }
    cw
}

/// Griesmer lower bound on the length of a [n,k,d] binary code:
/// sum over i < k of ceil(d / 2^i).
pub fn griesmer_bound(k: u32, d: u64) -> u64 {
    assert!(k >= 1 && d >= 1);
    (0..k)
        .map(|i| {
            let div = 1u64 << i.min(63);
            d.div_ceil(div)
        })
        .sum()
}
