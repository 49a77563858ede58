//! Cyclic matrix groups over GF(2) and their orbits on the nonzero
//! vectors of GF(2)^k.
//!
//! Orbits are found by a single ascending sweep with a visited bitmap,
//! so orbit ids are ordered by canonical representative (the smallest
//! integer encoding in the orbit). Burnside's lemma gives an
//! independent count: |orbits| = (1/|G|) * sum over g of the number of
//! nonzero fixed vectors, which is 2^nullity(g-I) - 1.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::gf2::{BitMatrix, Gf2Error};

/// Orbit enumeration sweeps all 2^k - 1 nonzero vectors.
pub const MAX_ORBIT_DIMENSION: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrbitError {
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error("orbit enumeration too large: k = {0} exceeds budget {MAX_ORBIT_DIMENSION}")]
    DimensionTooLarge(usize),
    #[error("column {0} is zero; not a valid generator column")]
    ZeroColumn(usize),
    #[error("matrix has {rows} rows but the partition is over GF(2)^{k}")]
    DimensionMismatch { rows: usize, k: usize },
}

/// A cyclic subgroup of GL(k,2) stored as the list of distinct powers
/// [I, M, M^2, ..., M^(t-1)].
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    k: usize,
    elements: Vec<BitMatrix>,
}

impl MatrixGroup {
    /// Generates the cyclic group of all powers of an invertible M.
    pub fn generate_cyclic(m: &BitMatrix) -> Result<Self, OrbitError> {
        if !m.is_square() {
            return Err(Gf2Error::DimensionMismatch("group generator must be square".into()).into());
        }
        if !m.is_invertible() {
            return Err(OrbitError::Gf2(Gf2Error::Singular));
        }
        let k = m.ncols();
        let identity = BitMatrix::identity(k);
        let mut elements = vec![identity.clone()];
        let mut power = m.clone();
        while power != identity {
            elements.push(power.clone());
            power = power.mat_mul(m)?;
        }
        Ok(MatrixGroup { k, elements })
    }

    /// The cyclic group generated by the transpose of this group's
    /// generator (the action on the message side).
    pub fn transpose_group(&self) -> Result<MatrixGroup, OrbitError> {
        match self.elements.get(1) {
            Some(m) => MatrixGroup::generate_cyclic(&m.transpose()),
            None => Ok(self.clone()), // trivial group is self-transpose
        }
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[BitMatrix] {
        &self.elements
    }

    /// Burnside count of orbits on nonzero vectors:
    /// (1/|G|) * sum over g of (2^nullity(g - I) - 1).
    pub fn burnside_count(&self) -> u64 {
        let identity = BitMatrix::identity(self.k);
        let total: u64 = self
            .elements
            .iter()
            .map(|g| {
                let mut diff = BitMatrix::zeros(self.k, self.k);
                for i in 0..self.k {
                    for j in 0..self.k {
                        diff.set(i, j, g.get(i, j) ^ identity.get(i, j));
                    }
                }
                let nullity = self.k - diff.rank();
                (1u64 << nullity) - 1
            })
            .sum();
        debug_assert_eq!(total % self.elements.len() as u64, 0);
        total / self.elements.len() as u64
    }
}

/// The partition of the nonzero vectors of GF(2)^k into orbits under a
/// matrix group. Vectors are identified with their packed integer
/// encoding 1..2^k-1 (bit 0 least significant).
#[derive(Clone, Debug)]
pub struct OrbitPartition {
    k: usize,
    group_order: usize,
    /// orbit id of vector v, indexed by v (entry 0 unused).
    orbit_of: Vec<u32>,
    /// canonical representative per orbit: the smallest member.
    reps: Vec<u64>,
    sizes: Vec<u32>,
}

impl OrbitPartition {
    /// Exact partition under v -> M^i v, single ascending sweep.
    pub fn compute(group: &MatrixGroup) -> Result<Self, OrbitError> {
        let k = group.dimension();
        if k > MAX_ORBIT_DIMENSION {
            return Err(OrbitError::DimensionTooLarge(k));
        }
        let total = 1usize << k;
        let mut orbit_of = vec![u32::MAX; total];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        let generator = group.elements().get(1).cloned();
        for v in 1..total as u64 {
            if orbit_of[v as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(v);
            let mut size = 0u32;
            let mut cur = v;
            loop {
                debug_assert_eq!(orbit_of[cur as usize], u32::MAX);
                orbit_of[cur as usize] = id;
                size += 1;
                cur = match &generator {
                    Some(m) => m.apply_word(cur),
                    None => v,
                };
                if cur == v {
                    break;
                }
            }
            sizes.push(size);
        }
        Ok(OrbitPartition {
            k,
            group_order: group.order(),
            orbit_of,
            reps,
            sizes,
        })
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn orbit_count(&self) -> usize {
        self.reps.len()
    }

    pub fn orbit_of(&self, v: u64) -> u32 {
        self.orbit_of[v as usize]
    }

    pub fn rep(&self, orbit: u32) -> u64 {
        self.reps[orbit as usize]
    }

    pub fn size(&self, orbit: u32) -> u32 {
        self.sizes[orbit as usize]
    }

    /// Members of an orbit in ascending order of integer encoding.
    pub fn members(&self, orbit: u32) -> Vec<u64> {
        (1..self.orbit_of.len() as u64)
            .filter(|&v| self.orbit_of[v as usize] == orbit)
            .collect()
    }

    /// Export format: one line "orbit_id size rep_hex" per orbit.
    pub fn to_lines(&self) -> String {
        let mut s = String::new();
        for id in 0..self.reps.len() {
            writeln!(s, "{} {} {:x}", id, self.sizes[id], self.reps[id]).unwrap();
        }
        s
    }
}

/// How the columns of a generator matrix distribute over orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnDecomposition {
    /// orbit id -> number of columns landing in that orbit.
    pub multiplicity: BTreeMap<u32, u32>,
    /// true when every touched orbit is covered completely and with
    /// uniform multiplicity (the column multiset is a union of whole
    /// orbits, possibly repeated).
    pub whole_orbits: bool,
}

/// Reads each column as a length-k vector and locates its orbit.
pub fn column_orbit_decomposition(
    gen: &BitMatrix,
    partition: &OrbitPartition,
) -> Result<ColumnDecomposition, OrbitError> {
    if gen.nrows() != partition.dimension() {
        return Err(OrbitError::DimensionMismatch {
            rows: gen.nrows(),
            k: partition.dimension(),
        });
    }
    let mut per_vector: BTreeMap<u64, u32> = BTreeMap::new();
    for j in 0..gen.ncols() {
        let col = gen.column(j);
        if col.is_zero() {
            return Err(OrbitError::ZeroColumn(j));
        }
        *per_vector.entry(col.word()).or_insert(0) += 1;
    }
    let mut multiplicity: BTreeMap<u32, u32> = BTreeMap::new();
    for (&v, &c) in &per_vector {
        *multiplicity.entry(partition.orbit_of(v)).or_insert(0) += c;
    }
    // whole coverage: within each touched orbit, every member appears,
    // all with the same count
    let whole_orbits = multiplicity.iter().all(|(&orbit, _)| {
        let members = partition.members(orbit);
        let first = per_vector.get(&members[0]).copied();
        first.is_some() && members.iter().all(|m| per_vector.get(m).copied() == first)
    });
    Ok(ColumnDecomposition {
        multiplicity,
        whole_orbits,
    })
}
