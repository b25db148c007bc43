//! Offspring improvement layers: geometric intersection removal between
//! tours, inter-tour enrichment (1-shift, 1-swap, then 2-opt), and the
//! self-adaptive intra-tour improvement driven by a roulette wheel.

use rand::Rng;

use crate::ga::GaConfig;
use crate::instance::{Instance, NeighborLists};
use crate::population::Individual;
use crate::split::{tour_length, MtspSolution};
use crate::Result;

/// Minimum strict gain for a local-search move to be applied. Keeps the
/// descent loops terminating under floating-point arithmetic; the
/// exhaustive fixpoint checks in the tests use the same threshold.
pub const IMPROVE_EPS: f64 = 1e-10;

/// Intra-tour move kinds ranked by the adaptive roulette wheel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    Reinsert,
    Exchange,
    OrOpt2,
    OrOpt3,
}

impl Move {
    pub const ALL: [Move; 4] = [Move::Reinsert, Move::Exchange, Move::OrOpt2, Move::OrOpt3];

    #[inline]
    pub fn index(self) -> usize {
        match self {
            Move::Reinsert => 0,
            Move::Exchange => 1,
            Move::OrOpt2 => 2,
            Move::OrOpt3 => 3,
        }
    }
}

/// Roulette-wheel weights over the four intra-tour moves. Every weight
/// starts at 1 and grows by 1 per improvement the move produced.
#[derive(Clone, Debug, PartialEq)]
pub struct MoveWeights {
    w: [f64; 4],
}

impl Default for MoveWeights {
    fn default() -> Self {
        Self { w: [1.0; 4] }
    }
}

impl MoveWeights {
    pub fn reset(&mut self) {
        self.w = [1.0; 4];
    }

    pub fn get(&self, mv: Move) -> f64 {
        self.w[mv.index()]
    }

    pub fn increment(&mut self, mv: Move) {
        self.w[mv.index()] += 1.0;
    }

    pub fn as_array(&self) -> [f64; 4] {
        self.w
    }

    pub fn from_array(w: [f64; 4]) -> Self {
        Self { w }
    }

    /// Roulette-wheel draw proportional to the weights.
    pub fn pick<R: Rng>(&self, rng: &mut R) -> Move {
        let total: f64 = self.w.iter().sum();
        let mut x = rng.random::<f64>() * total;
        for mv in Move::ALL {
            x -= self.w[mv.index()];
            if x < 0.0 {
                return mv;
            }
        }
        Move::OrOpt3
    }
}

type Point = (f64, f64);

#[inline]
fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

/// True iff the open segments `(p1, p2)` and `(q1, q2)` cross at a
/// single interior point. Shared endpoints and collinear overlaps do not
/// count (strict orientation test).
pub fn segments_properly_cross(p1: Point, p2: Point, q1: Point, q2: Point) -> bool {
    let d1 = orient(p1, p2, q1);
    let d2 = orient(p1, p2, q2);
    let d3 = orient(q1, q2, p1);
    let d4 = orient(q1, q2, p2);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

/// Node index at `pos` along the depot-extended walk of `tour`:
/// position 0 and `len + 1` are the depot.
#[inline]
fn node_at(tour: &[usize], pos: usize) -> usize {
    if pos == 0 || pos == tour.len() + 1 {
        0
    } else {
        tour[pos - 1]
    }
}

/// Audit trail for [`remove_intersections_with_stats`].
#[derive(Clone, Copy, Debug, Default)]
pub struct RemovalStats {
    pub swaps: usize,
    pub guard_tripped: bool,
    pub empty_repairs: usize,
}

/// Remove proper crossings between edges of distinct tours (depot legs
/// included) by swapping the tails after the crossing edges. Scans tour
/// pairs lexicographically and restarts after every swap; each swap
/// strictly shrinks the summed tour length, and an iteration guard of
/// `10 n` swaps covers degenerate geometry.
pub fn remove_intersections(sol: &MtspSolution, instance: &Instance) -> MtspSolution {
    remove_intersections_with_stats(sol, instance).0
}

/// [`remove_intersections`] with swap counts attached.
pub fn remove_intersections_with_stats(
    sol: &MtspSolution,
    instance: &Instance,
) -> (MtspSolution, RemovalStats) {
    let mut tours = sol.tours.clone();
    let m = tours.len();
    let guard = 10 * instance.n().max(1);
    let mut stats = RemovalStats::default();

    'outer: loop {
        if stats.swaps >= guard {
            stats.guard_tripped = true;
            log::debug!("intersection removal hit the {guard}-swap guard");
            break;
        }
        for ta in 0..m {
            for tb in ta + 1..m {
                for ea in 0..=tours[ta].len() {
                    let a1 = instance.coord(node_at(&tours[ta], ea));
                    let a2 = instance.coord(node_at(&tours[ta], ea + 1));
                    for eb in 0..=tours[tb].len() {
                        let b1 = instance.coord(node_at(&tours[tb], eb));
                        let b2 = instance.coord(node_at(&tours[tb], eb + 1));
                        if !segments_properly_cross(a1, a2, b1, b2) {
                            continue;
                        }
                        let mut new_a = tours[ta][..ea].to_vec();
                        new_a.extend_from_slice(&tours[tb][eb..]);
                        let mut new_b = tours[tb][..eb].to_vec();
                        new_b.extend_from_slice(&tours[ta][ea..]);
                        tours[ta] = new_a;
                        tours[tb] = new_b;
                        stats.swaps += 1;
                        repair_empty_tours(&mut tours, instance, &mut stats);
                        continue 'outer;
                    }
                }
            }
        }
        break;
    }

    (MtspSolution::from_tours(tours, instance), stats)
}

/// A proper crossing never empties a tour (the depot legs of two tours
/// share the depot point and cannot properly cross), but degenerate
/// floating-point geometry gets a safety net: refill an empty tour with
/// the city of the longest multi-city tour that is nearest to the depot.
fn repair_empty_tours(tours: &mut [Vec<usize>], instance: &Instance, stats: &mut RemovalStats) {
    loop {
        let Some(empty) = tours.iter().position(Vec::is_empty) else {
            return;
        };
        let donor = tours
            .iter()
            .enumerate()
            .filter(|(_, t)| t.len() >= 2)
            .max_by(|(_, a), (_, b)| {
                tour_length(instance, a)
                    .partial_cmp(&tour_length(instance, b))
                    .unwrap()
            })
            .map(|(i, _)| i)
            .expect("some tour has at least two cities");
        let pick = tours[donor]
            .iter()
            .enumerate()
            .min_by(|(_, &a), (_, &b)| {
                instance
                    .distance(0, a)
                    .partial_cmp(&instance.distance(0, b))
                    .unwrap()
            })
            .map(|(i, _)| i)
            .unwrap();
        let city = tours[donor].remove(pick);
        tours[empty].push(city);
        stats.empty_repairs += 1;
    }
}

/// Crossing count by exhaustive pair scan; used by tests and assertions.
pub fn count_proper_crossings(sol: &MtspSolution, instance: &Instance) -> usize {
    let m = sol.tours.len();
    let mut count = 0;
    for ta in 0..m {
        for tb in ta + 1..m {
            for ea in 0..=sol.tours[ta].len() {
                let a1 = instance.coord(node_at(&sol.tours[ta], ea));
                let a2 = instance.coord(node_at(&sol.tours[ta], ea + 1));
                for eb in 0..=sol.tours[tb].len() {
                    let b1 = instance.coord(node_at(&sol.tours[tb], eb));
                    let b2 = instance.coord(node_at(&sol.tours[tb], eb + 1));
                    if segments_properly_cross(a1, a2, b1, b2) {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

/// Cost of removing the city at `pos` from `tour`.
#[inline]
fn removal_saving(instance: &Instance, tour: &[usize], pos: usize) -> f64 {
    let c = tour[pos];
    let prev = if pos == 0 { 0 } else { tour[pos - 1] };
    let next = if pos + 1 == tour.len() {
        0
    } else {
        tour[pos + 1]
    };
    instance.distance(prev, c) + instance.distance(c, next) - instance.distance(prev, next)
}

/// Cost of inserting city `c` at `slot` of `tour` (0..=len).
#[inline]
fn insertion_increase(instance: &Instance, tour: &[usize], slot: usize, c: usize) -> f64 {
    let prev = if slot == 0 { 0 } else { tour[slot - 1] };
    let next = if slot == tour.len() { 0 } else { tour[slot] };
    instance.distance(prev, c) + instance.distance(c, next) - instance.distance(prev, next)
}

/// 2-opt a depot-closed path to local optimality, in place. Returns
/// whether any reversal was applied.
pub fn two_opt_path(instance: &Instance, seq: &mut [usize]) -> bool {
    let n = seq.len();
    if n < 2 {
        return false;
    }
    let mut changed = false;
    let mut improved = true;
    while improved {
        improved = false;
        for i in 0..n - 1 {
            for j in i + 1..n {
                let a = if i == 0 { 0 } else { seq[i - 1] };
                let b = seq[i];
                let c = seq[j];
                let d = if j + 1 == n { 0 } else { seq[j + 1] };
                let delta = instance.distance(a, c) + instance.distance(b, d)
                    - instance.distance(a, b)
                    - instance.distance(c, d);
                if delta < -IMPROVE_EPS {
                    seq[i..=j].reverse();
                    improved = true;
                    changed = true;
                }
            }
        }
    }
    changed
}

/// Inter-tour enrichment: repeat 1-shift and 1-swap sweeps to a
/// fixpoint, then 2-opt every tour; the two phases alternate until
/// neither changes anything (2-opt reorders tours and can re-open
/// inter-tour moves). A 1-shift is applied when the donor's decrease
/// beats the receiver's increase and the receiver stays at or below the
/// current makespan (recomputed after every accepted move); a 1-swap
/// needs both tours to shrink. Candidate positions come from the
/// per-city nearest-neighbor lists. The solution makespan never
/// increases.
pub fn enrich(sol: &MtspSolution, instance: &Instance, neighbors: &NeighborLists) -> MtspSolution {
    let n = instance.n();
    let mut tours = sol.tours.clone();
    let mut lengths: Vec<f64> = tours.iter().map(|t| tour_length(instance, t)).collect();
    let mut city_tour = vec![0usize; n + 1];
    for (t, tour) in tours.iter().enumerate() {
        for &c in tour {
            city_tour[c] = t;
        }
    }

    let mut outer = true;
    while outer {
        outer = false;
        let mut any = true;
        while any {
            any = false;
            for a in 0..tours.len() {
                let mut p = 0;
                while p < tours[a].len() {
                    let c = tours[a][p];
                    let makespan = lengths.iter().cloned().fold(0.0_f64, f64::max);

                    // 1-shift: move c next to one of its neighbors in
                    // another tour. Donor must keep at least one city.
                    let mut shifted = false;
                    if tours[a].len() >= 2 {
                        let saving = removal_saving(instance, &tours[a], p);
                        'shift: for &nb in neighbors.of(c) {
                            let b = city_tour[nb];
                            if b == a {
                                continue;
                            }
                            let q = tours[b].iter().position(|&x| x == nb).unwrap();
                            for slot in [q, q + 1] {
                                let inc = insertion_increase(instance, &tours[b], slot, c);
                                if saving - inc > IMPROVE_EPS && lengths[b] + inc <= makespan {
                                    tours[a].remove(p);
                                    tours[b].insert(slot, c);
                                    lengths[a] = tour_length(instance, &tours[a]);
                                    lengths[b] = tour_length(instance, &tours[b]);
                                    city_tour[c] = b;
                                    shifted = true;
                                    any = true;
                                    break 'shift;
                                }
                            }
                        }
                    }
                    if shifted {
                        continue; // a new city occupies position p
                    }

                    // 1-swap: exchange c with a neighbor from another tour
                    // when both tours shrink.
                    'swap: for &nb in neighbors.of(c) {
                        let b = city_tour[nb];
                        if b == a {
                            continue;
                        }
                        let q = tours[b].iter().position(|&x| x == nb).unwrap();
                        let prev_p = if p == 0 { 0 } else { tours[a][p - 1] };
                        let next_p = if p + 1 == tours[a].len() {
                            0
                        } else {
                            tours[a][p + 1]
                        };
                        let prev_q = if q == 0 { 0 } else { tours[b][q - 1] };
                        let next_q = if q + 1 == tours[b].len() {
                            0
                        } else {
                            tours[b][q + 1]
                        };
                        let delta_a = instance.distance(prev_p, nb) + instance.distance(nb, next_p)
                            - instance.distance(prev_p, c)
                            - instance.distance(c, next_p);
                        let delta_b = instance.distance(prev_q, c) + instance.distance(c, next_q)
                            - instance.distance(prev_q, nb)
                            - instance.distance(nb, next_q);
                        if delta_a < -IMPROVE_EPS && delta_b < -IMPROVE_EPS {
                            tours[a][p] = nb;
                            tours[b][q] = c;
                            lengths[a] = tour_length(instance, &tours[a]);
                            lengths[b] = tour_length(instance, &tours[b]);
                            city_tour[c] = b;
                            city_tour[nb] = a;
                            any = true;
                            break 'swap;
                        }
                    }
                    p += 1;
                }
            }
            if any {
                outer = true;
            }
        }

        for (t, tour) in tours.iter_mut().enumerate() {
            if two_opt_path(instance, tour) {
                lengths[t] = tour_length(instance, tour);
                outer = true;
            }
        }
    }
    MtspSolution::from_tours(tours, instance)
}

/// One adaptive improvement pass: `repeats` draws of (move, tour, city),
/// applying the best neighbor-restricted candidate when it strictly
/// shortens the tour. Returns the solution and the updated weights.
pub fn improve<R: Rng>(
    sol: MtspSolution,
    instance: &Instance,
    weights: MoveWeights,
    repeats: u64,
    neighbors: &NeighborLists,
    rng: &mut R,
) -> (MtspSolution, MoveWeights) {
    let (sol, weights, _) = improve_with_stats(sol, instance, weights, repeats, neighbors, rng);
    (sol, weights)
}

/// [`improve`] plus the per-move improvement counts (tracked separately
/// from the weights, so tests can audit the update rule).
pub fn improve_with_stats<R: Rng>(
    sol: MtspSolution,
    instance: &Instance,
    mut weights: MoveWeights,
    repeats: u64,
    neighbors: &NeighborLists,
    rng: &mut R,
) -> (MtspSolution, MoveWeights, [u64; 4]) {
    let mut tours = sol.tours;
    let mut lengths: Vec<f64> = tours.iter().map(|t| tour_length(instance, t)).collect();
    let n = instance.n();
    let mut city_tour = vec![0usize; n + 1];
    for (t, tour) in tours.iter().enumerate() {
        for &c in tour {
            city_tour[c] = t;
        }
    }
    let mut counts = [0u64; 4];

    for _ in 0..repeats {
        let mv = weights.pick(rng);
        // Half the time attack the longest tour, otherwise any tour.
        let t = if rng.random::<bool>() {
            lengths
                .iter()
                .enumerate()
                .max_by(|(_, a), (_, b)| a.partial_cmp(b).unwrap())
                .map(|(i, _)| i)
                .unwrap()
        } else {
            rng.random_range(0..tours.len())
        };
        let len = tours[t].len();
        let improved = match mv {
            Move::Reinsert => try_reinsert(instance, neighbors, &city_tour, &mut tours[t], t, rng),
            Move::Exchange => try_exchange(instance, neighbors, &city_tour, &mut tours[t], t, rng),
            Move::OrOpt2 => try_or_opt(instance, neighbors, &city_tour, &mut tours[t], t, 2, rng),
            Move::OrOpt3 => try_or_opt(instance, neighbors, &city_tour, &mut tours[t], t, 3, rng),
        };
        if improved {
            debug_assert!(tours[t].len() == len);
            lengths[t] = tour_length(instance, &tours[t]);
            weights.increment(mv);
            counts[mv.index()] += 1;
        }
    }

    (MtspSolution::from_tours(tours, instance), weights, counts)
}

fn try_reinsert<R: Rng>(
    instance: &Instance,
    neighbors: &NeighborLists,
    city_tour: &[usize],
    tour: &mut Vec<usize>,
    t: usize,
    rng: &mut R,
) -> bool {
    if tour.len() < 2 {
        return false;
    }
    let p = rng.random_range(0..tour.len());
    let c = tour[p];
    let saving = removal_saving(instance, tour, p);
    let mut reduced = tour.clone();
    reduced.remove(p);
    let mut best: Option<(f64, usize)> = None;
    for &nb in neighbors.of(c) {
        if city_tour[nb] != t {
            continue;
        }
        let q = reduced.iter().position(|&x| x == nb).unwrap();
        for slot in [q, q + 1] {
            if slot == p {
                continue; // re-inserting where it came from
            }
            let delta = insertion_increase(instance, &reduced, slot, c) - saving;
            if best.is_none_or(|(bd, _)| delta < bd) {
                best = Some((delta, slot));
            }
        }
    }
    if let Some((delta, slot)) = best {
        if delta < -IMPROVE_EPS {
            reduced.insert(slot, c);
            *tour = reduced;
            return true;
        }
    }
    false
}

fn try_exchange<R: Rng>(
    instance: &Instance,
    neighbors: &NeighborLists,
    city_tour: &[usize],
    tour: &mut [usize],
    t: usize,
    rng: &mut R,
) -> bool {
    if tour.len() < 2 {
        return false;
    }
    let p = rng.random_range(0..tour.len());
    let c = tour[p];
    let mut best: Option<(f64, usize)> = None;
    for &nb in neighbors.of(c) {
        if city_tour[nb] != t || nb == c {
            continue;
        }
        let q = tour.iter().position(|&x| x == nb).unwrap();
        let delta = swap_delta(instance, tour, p.min(q), p.max(q));
        if best.is_none_or(|(bd, _)| delta < bd) {
            best = Some((delta, q));
        }
    }
    if let Some((delta, q)) = best {
        if delta < -IMPROVE_EPS {
            tour.swap(p, q);
            return true;
        }
    }
    false
}

/// Length change from swapping positions `i < j` within a tour.
fn swap_delta(instance: &Instance, tour: &[usize], i: usize, j: usize) -> f64 {
    let d = |a: usize, b: usize| instance.distance(a, b);
    let prev_i = if i == 0 { 0 } else { tour[i - 1] };
    let next_j = if j + 1 == tour.len() { 0 } else { tour[j + 1] };
    let (ci, cj) = (tour[i], tour[j]);
    if j == i + 1 {
        d(prev_i, cj) + d(ci, next_j) - d(prev_i, ci) - d(cj, next_j)
    } else {
        let next_i = tour[i + 1];
        let prev_j = tour[j - 1];
        d(prev_i, cj) + d(cj, next_i) + d(prev_j, ci) + d(ci, next_j)
            - d(prev_i, ci)
            - d(ci, next_i)
            - d(prev_j, cj)
            - d(cj, next_j)
    }
}

fn try_or_opt<R: Rng>(
    instance: &Instance,
    neighbors: &NeighborLists,
    city_tour: &[usize],
    tour: &mut Vec<usize>,
    t: usize,
    block: usize,
    rng: &mut R,
) -> bool {
    if tour.len() < block + 1 {
        return false;
    }
    let p = rng.random_range(0..=tour.len() - block);
    let cities: Vec<usize> = tour[p..p + block].to_vec();
    let anchor = cities[0];
    let first = cities[0];
    let last = *cities.last().unwrap();

    let prev = if p == 0 { 0 } else { tour[p - 1] };
    let next = if p + block == tour.len() {
        0
    } else {
        tour[p + block]
    };
    let saving = instance.distance(prev, first) + instance.distance(last, next)
        - instance.distance(prev, next);

    let mut reduced = tour.clone();
    reduced.drain(p..p + block);

    let mut best: Option<(f64, usize)> = None;
    for &nb in neighbors.of(anchor) {
        if city_tour[nb] != t || cities.contains(&nb) {
            continue;
        }
        let q = reduced.iter().position(|&x| x == nb).unwrap();
        for slot in [q, q + 1] {
            if slot == p {
                continue;
            }
            let u = if slot == 0 { 0 } else { reduced[slot - 1] };
            let v = if slot == reduced.len() {
                0
            } else {
                reduced[slot]
            };
            let inc =
                instance.distance(u, first) + instance.distance(last, v) - instance.distance(u, v);
            let delta = inc - saving;
            if best.is_none_or(|(bd, _)| delta < bd) {
                best = Some((delta, slot));
            }
        }
    }
    if let Some((delta, slot)) = best {
        if delta < -IMPROVE_EPS {
            for (k, &c) in cities.iter().enumerate() {
                reduced.insert(slot + k, c);
            }
            *tour = reduced;
            return true;
        }
    }
    false
}

/// Full education pipeline for one offspring: probabilistic intersection
/// removal, enrichment, adaptive improvement (`n_local_1` repeats while
/// the search is fresh, `n_local_2` once `stagnation` reaches
/// `n_imprv`), then re-split of the concatenated tours so the delimiters
/// are re-optimized.
pub fn educate<R: Rng>(
    child: MtspSolution,
    instance: &Instance,
    cfg: &GaConfig,
    weights: &mut MoveWeights,
    stagnation: u64,
    neighbors: &NeighborLists,
    rng: &mut R,
) -> Result<Individual> {
    let mut sol = child;
    if rng.random::<f64>() < cfg.p_remove {
        sol = remove_intersections(&sol, instance);
    }
    sol = enrich(&sol, instance, neighbors);
    let repeats = if stagnation < cfg.n_imprv {
        cfg.n_local_1
    } else {
        cfg.n_local_2
    };
    let (sol, new_weights) = improve(sol, instance, weights.clone(), repeats, neighbors, rng);
    *weights = new_weights;
    Individual::from_chromosome(sol.to_chromosome(), instance)
}
