//! The orbit-selection feasibility system: one nonnegative unknown per
//! column orbit, constrained so the selected columns total length n and
//! every nonzero codeword weight falls in [d, d_max].
//!
//! Codeword weights only depend on the message's orbit under the
//! transpose group: <v, M c> = <M^T v, c>, so the count
//! A[i][j] = #{c in column-orbit j : <v_i, c> = 1} is the same for
//! every v_i in a row orbit. The weight of the codeword for message v
//! under a selection x is then sum_j A[i][j] x_j.

use std::fmt::Write as _;

use rayon::prelude::*;
use thiserror::Error;

use crate::analytics::{CodeError, LinearCode};
use crate::gf2::{BitMatrix, BitVector, MAX_LEN};
use crate::orbits::{MatrixGroup, OrbitError, OrbitPartition};

/// Row/column orbit enumeration budget.
pub const MAX_SYSTEM_DIMENSION: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SystemError {
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error("system too large: k = {0} exceeds budget {MAX_SYSTEM_DIMENSION}")]
    DimensionTooLarge(usize),
    #[error("selection has {got} entries, system has {expected} column orbits")]
    SelectionLength { got: usize, expected: usize },
    #[error("selection is not feasible for this system")]
    Infeasible,
    #[error("selection spans a degenerate code: rank {rank} < {k}")]
    DegenerateSelection { rank: usize, k: usize },
    #[error("materialized code disagrees with the orbit-count algebra: {0}")]
    ConsistencyMismatch(String),
    #[error("materialization needs orbit membership data, which a system loaded from file lacks")]
    NoOrbitData,
    #[error("target length {0} exceeds supported maximum {MAX_LEN}")]
    LengthTooLarge(usize),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("bad DIOSYS file at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// The feasibility system for a prescribed group and weight window.
#[derive(Clone, Debug)]
pub struct DiophantineSystem {
    k: usize,
    n: usize,
    d: u64,
    d_max: Option<u64>,
    col_reps: Vec<u64>,
    col_lengths: Vec<u32>,
    row_reps: Vec<u64>,
    /// a[i][j] = #{c in column-orbit j : <row-rep_i, c> = 1}
    a: Vec<Vec<u32>>,
    /// per-column-orbit member vectors, ascending; present only for
    /// systems built in memory (a DIOSYS file stores reps, not orbits)
    col_members: Option<Vec<Vec<u64>>>,
}

/// The outcome of checking a selection against a system.
#[derive(Clone, Debug, PartialEq)]
pub struct SelectionReport {
    pub selection: Vec<u32>,
    pub total_length: u64,
    pub min_row_weight: u64,
    pub max_row_weight: u64,
    pub feasible: bool,
    /// Whether the selected columns span GF(2)^k; only known when the
    /// system carries orbit membership data.
    pub rank_ok: Option<bool>,
}

impl DiophantineSystem {
    /// Builds the system exactly: column orbits under the group, row
    /// orbits under the transpose group, and the full count matrix A.
    pub fn build(
        group: &MatrixGroup,
        n: usize,
        d: u64,
        d_max: Option<u64>,
    ) -> Result<Self, SystemError> {
        let k = group.dimension();
        if k > MAX_SYSTEM_DIMENSION {
            return Err(SystemError::DimensionTooLarge(k));
        }
        let col_orbits = OrbitPartition::compute(group)?;
        let row_orbits = OrbitPartition::compute(&group.transpose_group()?)?;

        let col_count = col_orbits.orbit_count();
        let col_reps: Vec<u64> = (0..col_count as u32).map(|j| col_orbits.rep(j)).collect();
        let col_lengths: Vec<u32> = (0..col_count as u32).map(|j| col_orbits.size(j)).collect();
        let row_reps: Vec<u64> = (0..row_orbits.orbit_count() as u32)
            .map(|i| row_orbits.rep(i))
            .collect();

        // one pass over all nonzero vectors per row representative
        let a: Vec<Vec<u32>> = row_reps
            .par_iter()
            .map(|&rep| {
                let mut row = vec![0u32; col_count];
                for v in 1..(1u64 << k) {
                    if ((rep & v).count_ones() & 1) == 1 {
                        row[col_orbits.orbit_of(v) as usize] += 1;
                    }
                }
                row
            })
            .collect();

        let mut col_members = Vec::with_capacity(col_count);
        for j in 0..col_count as u32 {
            col_members.push(col_orbits.members(j));
        }

        Ok(DiophantineSystem {
            k,
            n,
            d,
            d_max,
            col_reps,
            col_lengths,
            row_reps,
            a,
            col_members: Some(col_members),
        })
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn target_length(&self) -> usize {
        self.n
    }

    pub fn min_weight(&self) -> u64 {
        self.d
    }

    pub fn max_weight(&self) -> Option<u64> {
        self.d_max
    }

    pub fn num_cols(&self) -> usize {
        self.col_reps.len()
    }

    pub fn num_rows(&self) -> usize {
        self.row_reps.len()
    }

    pub fn col_length(&self, j: usize) -> u32 {
        self.col_lengths[j]
    }

    pub fn col_lengths(&self) -> &[u32] {
        &self.col_lengths
    }

    pub fn count(&self, i: usize, j: usize) -> u32 {
        self.a[i][j]
    }

    pub fn count_row(&self, i: usize) -> &[u32] {
        &self.a[i]
    }

    pub fn has_orbit_data(&self) -> bool {
        self.col_members.is_some()
    }

    /// Exact totals for a multiplicity vector; does not materialize the
    /// code.
    pub fn evaluate_selection(&self, x: &[u32]) -> Result<SelectionReport, SystemError> {
        if x.len() != self.num_cols() {
            return Err(SystemError::SelectionLength {
                got: x.len(),
                expected: self.num_cols(),
            });
        }
        let total_length: u64 = self
            .col_lengths
            .iter()
            .zip(x)
            .map(|(&l, &m)| l as u64 * m as u64)
            .sum();
        let mut min_w = u64::MAX;
        let mut max_w = 0u64;
        for row in &self.a {
            let w: u64 = row.iter().zip(x).map(|(&c, &m)| c as u64 * m as u64).sum();
            min_w = min_w.min(w);
            max_w = max_w.max(w);
        }
        if self.a.is_empty() {
            min_w = 0;
        }
        let feasible = total_length == self.n as u64
            && self.d <= min_w
            && self.d_max.is_none_or(|dm| max_w <= dm);
        let rank_ok = self.col_members.as_ref().map(|members| {
            let rows = selection_rows(self.k, members, x);
            match BitMatrix::from_rows(rows) {
                Ok(m) => m.transpose().rank() == self.k,
                Err(_) => false, // empty selection
            }
        });
        Ok(SelectionReport {
            selection: x.to_vec(),
            total_length,
            min_row_weight: min_w,
            max_row_weight: max_w,
            feasible,
            rank_ok,
        })
    }

    /// Builds the generator matrix for a feasible selection, columns
    /// ordered by (orbit id, orbit-internal ascending order), each
    /// repeated per its multiplicity, and re-verifies d and d_max by
    /// exhaustive enumeration.
    pub fn materialize(&self, x: &[u32]) -> Result<LinearCode, SystemError> {
        let report = self.evaluate_selection(x)?;
        if !report.feasible {
            return Err(SystemError::Infeasible);
        }
        let members = self.col_members.as_ref().ok_or(SystemError::NoOrbitData)?;
        if self.n > MAX_LEN {
            return Err(SystemError::LengthTooLarge(self.n));
        }
        let gen = BitMatrix::from_rows(selection_rows(self.k, members, x))
            .expect("feasible selection has n >= 1 columns")
            .transpose();
        let rank = gen.rank();
        if rank < self.k {
            return Err(SystemError::DegenerateSelection { rank, k: self.k });
        }
        let code = LinearCode::new(gen)?;
        let d = code.min_distance()? as u64;
        let d_max = code.max_weight()? as u64;
        if d != report.min_row_weight || d_max != report.max_row_weight {
            return Err(SystemError::ConsistencyMismatch(format!(
                "enumerated d={d} d_max={d_max}, algebra said {} and {}",
                report.min_row_weight, report.max_row_weight
            )));
        }
        Ok(code)
    }

    /// Writes the DIOSYS line format.
    pub fn to_diosys_string(&self) -> String {
        let mut s = String::new();
        let dmax = match self.d_max {
            Some(v) => v.to_string(),
            None => "-".to_string(),
        };
        writeln!(
            s,
            "DIOSYS k={} n={} d={} dmax={} rows={} cols={}",
            self.k,
            self.n,
            self.d,
            dmax,
            self.num_rows(),
            self.num_cols()
        )
        .unwrap();
        for j in 0..self.num_cols() {
            writeln!(s, "COL {} {} {:x}", j, self.col_lengths[j], self.col_reps[j]).unwrap();
        }
        for i in 0..self.num_rows() {
            write!(s, "ROW {} {:x}", i, self.row_reps[i]).unwrap();
            for &c in &self.a[i] {
                write!(s, " {c}").unwrap();
            }
            s.push('\n');
        }
        s
    }

    /// Parses the DIOSYS line format. The loaded system supports search
    /// and evaluation but not materialization (orbit members are not
    /// stored in the file).
    pub fn parse_diosys(text: &str) -> Result<Self, SystemError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "empty file"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.first() != Some(&"DIOSYS") || fields.len() != 7 {
            return Err(parse_err(1, "expected DIOSYS header with 6 fields"));
        }
        let get = |idx: usize, key: &str| -> Result<String, SystemError> {
            let field = fields[idx];
            field
                .strip_prefix(&format!("{key}="))
                .map(str::to_string)
                .ok_or_else(|| parse_err(1, &format!("expected {key}=..., found {field:?}")))
        };
        let k: usize = parse_num(&get(1, "k")?, 1)?;
        let n: usize = parse_num(&get(2, "n")?, 1)?;
        let d: u64 = parse_num(&get(3, "d")?, 1)?;
        let dmax_raw = get(4, "dmax")?;
        let d_max = if dmax_raw == "-" {
            None
        } else {
            Some(parse_num(&dmax_raw, 1)?)
        };
        let rows: usize = parse_num(&get(5, "rows")?, 1)?;
        let cols: usize = parse_num(&get(6, "cols")?, 1)?;

        let mut col_reps = Vec::with_capacity(cols);
        let mut col_lengths = Vec::with_capacity(cols);
        for want in 0..cols {
            let (lineno, line) = lines
                .next()
                .ok_or_else(|| parse_err(want + 2, "missing COL line"))?;
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 4 || f[0] != "COL" {
                return Err(parse_err(lineno + 1, "expected 'COL <id> <len> <rep_hex>'"));
            }
            let id: usize = parse_num(f[1], lineno + 1)?;
            if id != want {
                return Err(parse_err(lineno + 1, &format!("expected COL {want}")));
            }
            col_lengths.push(parse_num(f[2], lineno + 1)?);
            col_reps.push(
                u64::from_str_radix(f[3], 16)
                    .map_err(|e| parse_err(lineno + 1, &format!("bad rep_hex: {e}")))?,
            );
        }

        let mut row_reps = Vec::with_capacity(rows);
        let mut a = Vec::with_capacity(rows);
        for want in 0..rows {
            let (lineno, line) = lines
                .next()
                .ok_or_else(|| parse_err(cols + want + 2, "missing ROW line"))?;
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 3 + cols || f[0] != "ROW" {
                return Err(parse_err(
                    lineno + 1,
                    &format!("expected 'ROW <id> <rep_hex>' plus {cols} counts"),
                ));
            }
            let id: usize = parse_num(f[1], lineno + 1)?;
            if id != want {
                return Err(parse_err(lineno + 1, &format!("expected ROW {want}")));
            }
            row_reps.push(
                u64::from_str_radix(f[2], 16)
                    .map_err(|e| parse_err(lineno + 1, &format!("bad rep_hex: {e}")))?,
            );
            let counts: Result<Vec<u32>, _> =
                f[3..].iter().map(|t| parse_num(t, lineno + 1)).collect();
            a.push(counts?);
        }

        Ok(DiophantineSystem {
            k,
            n,
            d,
            d_max,
            col_reps,
            col_lengths,
            row_reps,
            a,
            col_members: None,
        })
    }
}

fn parse_err(line: usize, msg: &str) -> SystemError {
    SystemError::Parse {
        line,
        msg: msg.to_string(),
    }
}

fn parse_num<T: std::str::FromStr>(s: &str, line: usize) -> Result<T, SystemError>
where
    T::Err: std::fmt::Display,
{
    s.parse()
        .map_err(|e| parse_err(line, &format!("bad number {s:?}: {e}")))
}

/// Selected column vectors, one BitVector of length k per column, in
/// canonical order. Returned as rows; transpose to get the generator.
fn selection_rows(k: usize, members: &[Vec<u64>], x: &[u32]) -> Vec<BitVector> {
    let mut rows = Vec::new();
    for (orbit, &mult) in members.iter().zip(x) {
        for &v in orbit {
            for _ in 0..mult {
                rows.push(BitVector::from_word(v, k));
            }
        }
    }
    rows
}
