//! Seeded local search over orbit selections.
//!
//! cost(x) = sum_i max(0, d - w_i) + sum_i max(0, w_i - d_max)
//!         + lambda * |sum_j l_j x_j - n|
//! with w_i = sum_j A[i][j] x_j. A move changes one multiplicity by one
//! (a flip in the 0/1 domain); each step takes the move minimizing the
//! resulting cost, ties broken uniformly by the seeded generator, and
//! never immediately undoes the previous move. Restarts begin from
//! fresh random selections with seeds derived as seed + restart index,
//! so a run is fully reproducible from its config.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diosys::DiophantineSystem;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("selection has {got} entries, system has {expected} column orbits")]
    SelectionLength { got: usize, expected: usize },
    #[error("move on variable {var} leaves the domain")]
    DomainViolation { var: usize },
}

/// Multiplicity domain for the unknowns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    /// Each orbit is taken at most once (the default).
    ZeroOne,
    /// Nonnegative multiplicities up to a cap.
    Capped(u32),
}

impl Domain {
    fn cap(self) -> u32 {
        match self {
            Domain::ZeroOne => 1,
            Domain::Capped(c) => c,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SearchConfig {
    pub seed: u64,
    pub max_iterations: u64,
    pub restarts: u32,
    pub domain: Domain,
    pub length_penalty: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 1,
            max_iterations: 100_000,
            restarts: 10,
            domain: Domain::ZeroOne,
            length_penalty: 1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    Found,
    Exhausted,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub status: SearchStatus,
    pub best_selection: Vec<u32>,
    pub best_cost: f64,
    pub iterations_used: u64,
}

/// Cached evaluation state: the selection, its row weights, and its
/// total length, kept in sync move by move.
struct State<'a> {
    system: &'a DiophantineSystem,
    lambda: f64,
    x: Vec<u32>,
    weights: Vec<u64>,
    length: u64,
}

impl<'a> State<'a> {
    fn new(system: &'a DiophantineSystem, lambda: f64, x: Vec<u32>) -> Self {
        let (weights, length) = recompute(system, &x);
        State {
            system,
            lambda,
            x,
            weights,
            length,
        }
    }

    fn cost(&self) -> f64 {
        cost_of(self.system, self.lambda, &self.weights, self.length)
    }

    /// cost after moving x_j by `direction` (+1/-1), minus current cost;
    /// O(rows) using the cached weights.
    fn delta(&self, j: usize, direction: i64) -> f64 {
        let sys = self.system;
        let d = sys.min_weight() as i64;
        let d_max = sys.max_weight().map(|v| v as i64);
        let mut penalty_delta = 0i64;
        for (i, &w) in self.weights.iter().enumerate() {
            let a = sys.count(i, j) as i64;
            if a == 0 {
                continue;
            }
            let w = w as i64;
            let w2 = w + direction * a;
            penalty_delta += (d - w2).max(0) - (d - w).max(0);
            if let Some(dm) = d_max {
                penalty_delta += (w2 - dm).max(0) - (w - dm).max(0);
            }
        }
        let n = sys.target_length() as i64;
        let l = self.length as i64;
        let l2 = l + direction * sys.col_length(j) as i64;
        penalty_delta as f64 + self.lambda * (((l2 - n).abs() - (l - n).abs()) as f64)
    }

    fn apply(&mut self, j: usize, direction: i64) {
        self.x[j] = (self.x[j] as i64 + direction) as u32;
        for (i, w) in self.weights.iter_mut().enumerate() {
            *w = (*w as i64 + direction * self.system.count(i, j) as i64) as u64;
        }
        self.length =
            (self.length as i64 + direction * self.system.col_length(j) as i64) as u64;
    }
}

fn recompute(system: &DiophantineSystem, x: &[u32]) -> (Vec<u64>, u64) {
    let weights = (0..system.num_rows())
        .map(|i| {
            system
                .count_row(i)
                .iter()
                .zip(x)
                .map(|(&a, &m)| a as u64 * m as u64)
                .sum()
        })
        .collect();
    let length = system
        .col_lengths()
        .iter()
        .zip(x)
        .map(|(&l, &m)| l as u64 * m as u64)
        .sum();
    (weights, length)
}

fn cost_of(system: &DiophantineSystem, lambda: f64, weights: &[u64], length: u64) -> f64 {
    let d = system.min_weight() as i64;
    let mut penalty = 0i64;
    for &w in weights {
        let w = w as i64;
        penalty += (d - w).max(0);
        if let Some(dm) = system.max_weight() {
            penalty += (w - dm as i64).max(0);
        }
    }
    penalty as f64 + lambda * (length as i64 - system.target_length() as i64).abs() as f64
}

/// Exact change in cost from moving x_j by direction, computed against
/// a fresh evaluation of x. Exposed for oracle checks and callers that
/// probe single moves.
pub fn incremental_cost_delta(
    system: &DiophantineSystem,
    lambda: f64,
    domain: Domain,
    x: &[u32],
    j: usize,
    direction: i64,
) -> Result<f64, SearchError> {
    if x.len() != system.num_cols() {
        return Err(SearchError::SelectionLength {
            got: x.len(),
            expected: system.num_cols(),
        });
    }
    let moved = x[j] as i64 + direction;
    if direction.abs() != 1 || moved < 0 || moved > domain.cap() as i64 {
        return Err(SearchError::DomainViolation { var: j });
    }
    Ok(State::new(system, lambda, x.to_vec()).delta(j, direction))
}

/// Runs the restart loop and returns the first zero-cost selection
/// (smallest restart index) or the best found across all restarts.
pub fn search(system: &DiophantineSystem, config: &SearchConfig) -> SearchResult {
    let m = system.num_cols();
    let mut best_cost = f64::INFINITY;
    let mut best_selection = vec![0u32; m];
    let mut iterations_used = 0u64;

    for restart in 0..config.restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(restart as u64));
        let x = random_selection(system, &mut rng);
        let mut state = State::new(system, config.length_penalty, x);
        let mut last_move: Option<(usize, i64)> = None;

        for iter in 0..config.max_iterations {
            let cost = state.cost();
            if cost < best_cost {
                best_cost = cost;
                best_selection = state.x.clone();
            }
            if cost == 0.0 {
                return SearchResult {
                    status: SearchStatus::Found,
                    best_selection: state.x,
                    best_cost: 0.0,
                    iterations_used: iterations_used + iter,
                };
            }

            // pick the move with the smallest delta, uniform among ties,
            // skipping the exact inverse of the previous move
            let mut best_delta = f64::INFINITY;
            let mut ties: Vec<(usize, i64)> = Vec::new();
            for j in 0..m {
                for direction in [1i64, -1] {
                    let moved = state.x[j] as i64 + direction;
                    if moved < 0 || moved > config.domain.cap() as i64 {
                        continue;
                    }
                    if last_move == Some((j, -direction)) {
                        continue;
                    }
                    let delta = state.delta(j, direction);
                    if delta < best_delta {
                        best_delta = delta;
                        ties.clear();
                    }
                    if delta == best_delta {
                        ties.push((j, direction));
                    }
                }
            }
            let Some(&(j, direction)) = pick(&ties, &mut rng) else {
                break; // no legal move
            };
            state.apply(j, direction);
            last_move = Some((j, direction));

            // periodic drift check on the cached row weights
            if (iter + 1) % (1 << 12) == 0 {
                let (weights, length) = recompute(system, &state.x);
                assert_eq!(weights, state.weights, "cached row weights drifted");
                assert_eq!(length, state.length, "cached length drifted");
            }
        }
        iterations_used += config.max_iterations;

        let final_cost = state.cost();
        if final_cost < best_cost {
            best_cost = final_cost;
            best_selection = state.x.clone();
        }
    }

    SearchResult {
        status: SearchStatus::Exhausted,
        best_selection,
        best_cost,
        iterations_used,
    }
}

fn pick<'t, T>(ties: &'t [T], rng: &mut ChaCha8Rng) -> Option<&'t T> {
    match ties.len() {
        0 => None,
        1 => Some(&ties[0]),
        len => Some(&ties[rng.gen_range(0..len)]),
    }
}

/// Initial point: each orbit taken independently with probability
/// n / (total column budget), clamped to [0,1].
fn random_selection(system: &DiophantineSystem, rng: &mut ChaCha8Rng) -> Vec<u32> {
    let budget: u64 = system.col_lengths().iter().map(|&l| l as u64).sum();
    let p = (system.target_length() as f64 / budget.max(1) as f64).clamp(0.0, 1.0);
    (0..system.num_cols())
        .map(|_| if rng.gen_bool(p) { 1 } else { 0 })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::BitMatrix;
    use crate::orbits::MatrixGroup;

    fn trivial_system(k: usize, n: usize, d: u64, d_max: Option<u64>) -> DiophantineSystem {
        let group = MatrixGroup::generate_cyclic(&BitMatrix::identity(k)).unwrap();
        DiophantineSystem::build(&group, n, d, d_max).unwrap()
    }

    fn singer_system() -> DiophantineSystem {
        let m = BitMatrix::parse_mat("001\n101\n010\n").unwrap();
        let group = MatrixGroup::generate_cyclic(&m).unwrap();
        DiophantineSystem::build(&group, 7, 4, Some(4)).unwrap()
    }

    #[test]
    fn simplex_found_immediately() {
        let sys = singer_system();
        let result = search(&sys, &SearchConfig::default());
        assert_eq!(result.status, SearchStatus::Found);
        assert_eq!(result.best_selection, vec![1]);
        assert_eq!(result.best_cost, 0.0);
        let code = sys.materialize(&result.best_selection).unwrap();
        assert_eq!(code.min_distance().unwrap(), 4);
    }

    #[test]
    fn hamming_parameters_found_and_verified() {
        let sys = trivial_system(4, 7, 3, None);
        let result = search(&sys, &SearchConfig::default());
        assert_eq!(result.status, SearchStatus::Found, "{result:?}");
        let report = sys.evaluate_selection(&result.best_selection).unwrap();
        assert!(report.feasible);
        let code = sys.materialize(&result.best_selection).unwrap();
        assert!(code.min_distance().unwrap() >= 3);
    }

    #[test]
    fn infeasible_instance_exhausts() {
        // no [3,3,3] binary code exists; exhaustive check over all 0/1
        // selections of the 7 orbits confirms no zero-cost point
        let sys = trivial_system(3, 3, 3, None);
        for bits in 0u32..(1 << 7) {
            let x: Vec<u32> = (0..7).map(|j| (bits >> j) & 1).collect();
            let report = sys.evaluate_selection(&x).unwrap();
            assert!(!report.feasible, "unexpected feasible {x:?}");
        }
        let config = SearchConfig {
            max_iterations: 2_000,
            restarts: 3,
            ..SearchConfig::default()
        };
        let result = search(&sys, &config);
        assert_eq!(result.status, SearchStatus::Exhausted);
        assert!(result.best_cost > 0.0);
    }

    #[test]
    fn determinism_across_runs() {
        let sys = trivial_system(4, 7, 3, None);
        let config = SearchConfig {
            seed: 42,
            max_iterations: 500,
            restarts: 2,
            ..SearchConfig::default()
        };
        let a = search(&sys, &config);
        let b = search(&sys, &config);
        assert_eq!(a.best_selection, b.best_selection);
        assert_eq!(a.best_cost, b.best_cost);
        assert_eq!(a.iterations_used, b.iterations_used);
    }

    #[test]
    fn flip_and_unflip_deltas_cancel() {
        let sys = trivial_system(3, 4, 2, None);
        let x = vec![1, 0, 1, 0, 1, 0, 0];
        let d1 =
            incremental_cost_delta(&sys, 1.0, Domain::ZeroOne, &x, 1, 1).unwrap();
        let mut x2 = x.clone();
        x2[1] = 1;
        let d2 =
            incremental_cost_delta(&sys, 1.0, Domain::ZeroOne, &x2, 1, -1).unwrap();
        assert_eq!(d1 + d2, 0.0);
    }

    #[test]
    fn delta_matches_full_recompute() {
        let sys = trivial_system(4, 7, 3, Some(5));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let x: Vec<u32> = (0..sys.num_cols())
                .map(|_| rng.gen_range(0..3u32))
                .collect();
            let j = rng.gen_range(0..sys.num_cols());
            let direction = if x[j] == 0 || (x[j] < 4 && rng.gen_bool(0.5)) {
                1
            } else {
                -1
            };
            let delta =
                incremental_cost_delta(&sys, 1.0, Domain::Capped(4), &x, j, direction)
                    .unwrap();
            let (w0, l0) = recompute(&sys, &x);
            let mut x2 = x.clone();
            x2[j] = (x2[j] as i64 + direction) as u32;
            let (w1, l1) = recompute(&sys, &x2);
            let full = cost_of(&sys, 1.0, &w1, l1) - cost_of(&sys, 1.0, &w0, l0);
            assert_eq!(delta, full, "x={x:?} j={j} dir={direction}");
        }
    }

    /// With a positive length penalty every flip moves the length term
    /// (no zero-size orbit exists); a zero total delta can only come
    /// from an exactly compensating weight-penalty change.
    #[test]
    fn every_flip_moves_the_length_term() {
        let sys = trivial_system(3, 4, 2, None);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let x: Vec<u32> = (0..7).map(|_| rng.gen_range(0..2u32)).collect();
            let (_, l0) = recompute(&sys, &x);
            for j in 0..7 {
                let direction = if x[j] == 0 { 1 } else { -1 };
                let delta =
                    incremental_cost_delta(&sys, 1.0, Domain::ZeroOne, &x, j, direction)
                        .unwrap();
                let n = sys.target_length() as i64;
                let l1 = l0 as i64 + direction * sys.col_length(j) as i64;
                let length_term = ((l1 - n).abs() - (l0 as i64 - n).abs()) as f64;
                assert_ne!(length_term, 0.0, "x={x:?} j={j}");
                if delta == 0.0 {
                    // compensated: the weight penalty moved by the opposite amount
                    let mut x2 = x.clone();
                    x2[j] = (x2[j] as i64 + direction) as u32;
                    let (w0, _) = recompute(&sys, &x);
                    let (w1, _) = recompute(&sys, &x2);
                    let p0 = cost_of(&sys, 0.0, &w0, l0);
                    let p1 = cost_of(&sys, 0.0, &w1, l1 as u64);
                    assert_eq!(p1 - p0, -length_term);
                }
            }
        }
    }

    #[test]
    fn domain_violation_rejected() {
        let sys = trivial_system(3, 3, 1, None);
        let x = vec![0u32; 7];
        assert_eq!(
            incremental_cost_delta(&sys, 1.0, Domain::ZeroOne, &x, 0, -1),
            Err(SearchError::DomainViolation { var: 0 })
        );
        let x = vec![1u32; 7];
        assert_eq!(
            incremental_cost_delta(&sys, 1.0, Domain::ZeroOne, &x, 2, 1),
            Err(SearchError::DomainViolation { var: 2 })
        );
    }
}
