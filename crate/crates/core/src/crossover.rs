//! Crossover operators: the similar-tour crossover (STX) working on
//! whole mTSP solutions, and the classic order crossover (OX) on
//! chromosomes, kept as the ablation baseline.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::instance::Instance;
use crate::split::{tour_length, Chromosome, MtspSolution};

/// How often STX retries with fresh cuts before falling back to a copy
/// of the first parent.
const STX_MAX_ATTEMPTS: usize = 10;

/// Bookkeeping from one STX application, for auditing.
#[derive(Clone, Debug, Default)]
pub struct StxStats {
    /// `(parent1_tour, parent2_tour)` index pairs, in creation order.
    pub matched_pairs: Vec<(usize, usize)>,
    pub duplicates_removed: usize,
    pub missing_inserted: usize,
    pub attempts: usize,
    pub fell_back: bool,
}

/// Similar-tour crossover. Repeatedly pairs a random unused tour of
/// `p1` with the unused tour of `p2` sharing the most cities, applies a
/// two-point crossover per pair (middle of the shorter tour, outside of
/// the other), then repairs duplicates and missing cities. The child
/// always partitions the cities into `m` non-empty tours.
pub fn stx<R: Rng>(
    p1: &MtspSolution,
    p2: &MtspSolution,
    instance: &Instance,
    rng: &mut R,
) -> MtspSolution {
    stx_with_stats(p1, p2, instance, rng).0
}

/// [`stx`] with the audit trail attached.
pub fn stx_with_stats<R: Rng>(
    p1: &MtspSolution,
    p2: &MtspSolution,
    instance: &Instance,
    rng: &mut R,
) -> (MtspSolution, StxStats) {
    let m = instance.m();
    let n = instance.n();
    debug_assert_eq!(p1.tours.len(), m);
    debug_assert_eq!(p2.tours.len(), m);

    let mut stats = StxStats::default();
    for attempt in 0..STX_MAX_ATTEMPTS {
        stats.attempts = attempt + 1;
        stats.matched_pairs.clear();

        let mut unused1: Vec<usize> = (0..m).collect();
        let mut unused2: Vec<usize> = (0..m).collect();
        let mut membership = vec![false; n + 1];
        let mut tours: Vec<Vec<usize>> = Vec::with_capacity(m);

        for _ in 0..m {
            let a_idx = unused1.swap_remove(rng.random_range(0..unused1.len()));
            let tour_a = &p1.tours[a_idx];
            for &c in tour_a {
                membership[c] = true;
            }
            // Unused p2 tour with the largest city overlap; ties break
            // on the smaller tour index.
            let (pick, b_idx) = unused2
                .iter()
                .enumerate()
                .map(|(pos, &b)| {
                    let overlap = p2.tours[b].iter().filter(|&&c| membership[c]).count();
                    (pos, b, overlap)
                })
                .max_by(|a, b| a.2.cmp(&b.2).then(b.1.cmp(&a.1)))
                .map(|(pos, b, _)| (pos, b))
                .expect("p2 has unused tours while p1 does");
            unused2.swap_remove(pick);
            for &c in tour_a {
                membership[c] = false;
            }
            stats.matched_pairs.push((a_idx, b_idx));

            let tour_b = &p2.tours[b_idx];
            // Equal sizes prefer the parent-1 tour as the "shorter" one.
            let (shorter, other) = if tour_a.len() <= tour_b.len() {
                (tour_a, tour_b)
            } else {
                (tour_b, tour_a)
            };
            let lim = shorter.len();
            let (c1, c2) = {
                let a = rng.random_range(0..=lim);
                let b = rng.random_range(0..=lim);
                (a.min(b), a.max(b))
            };
            let mut child: Vec<usize> = Vec::with_capacity(other.len());
            child.extend_from_slice(&other[..c1]);
            child.extend_from_slice(&shorter[c1..c2]);
            child.extend_from_slice(&other[c2..]);
            tours.push(child);
        }

        // Repair pass 1: drop repeated cities, keeping the first
        // occurrence in creation order.
        let mut seen = vec![false; n + 1];
        let mut duplicates = 0usize;
        for tour in &mut tours {
            tour.retain(|&c| {
                if seen[c] {
                    duplicates += 1;
                    false
                } else {
                    seen[c] = true;
                    true
                }
            });
        }

        // Repair pass 2: greedily insert each missing city where it
        // increases length least, skipping whichever tours are currently
        // longest (unless that excludes everything).
        let mut missing: Vec<usize> = (1..=n).filter(|&c| !seen[c]).collect();
        missing.shuffle(rng);
        let mut lengths: Vec<f64> = tours.iter().map(|t| tour_length(instance, t)).collect();
        for c in missing {
            let longest = lengths.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let all_longest = lengths.iter().all(|&l| l == longest);
            let mut best: Option<(f64, usize, usize)> = None;
            for (t, tour) in tours.iter().enumerate() {
                if !all_longest && lengths[t] == longest {
                    continue;
                }
                for pos in 0..=tour.len() {
                    let prev = if pos == 0 { 0 } else { tour[pos - 1] };
                    let next = if pos == tour.len() { 0 } else { tour[pos] };
                    let delta = instance.distance(prev, c) + instance.distance(c, next)
                        - instance.distance(prev, next);
                    if best.is_none_or(|(bd, _, _)| delta < bd) {
                        best = Some((delta, t, pos));
                    }
                }
            }
            let (_, t, pos) = best.expect("at least one tour accepts insertions");
            tours[t].insert(pos, c);
            lengths[t] = tour_length(instance, &tours[t]);
        }

        if tours.iter().all(|t| !t.is_empty()) {
            stats.duplicates_removed = duplicates;
            stats.missing_inserted = seen[1..].iter().filter(|&&s| !s).count();
            return (MtspSolution::from_tours(tours, instance), stats);
        }
    }

    log::debug!("stx repair failed {STX_MAX_ATTEMPTS} times; copying first parent");
    stats.fell_back = true;
    (p1.clone(), stats)
}

/// Order crossover with explicit inclusive cut positions: the slice
/// `p1[lo..=hi]` is kept in place, every other position is filled left
/// to right with the remaining cities in `p2` order.
pub fn ox_with_cuts(p1: &Chromosome, p2: &Chromosome, lo: usize, hi: usize) -> Chromosome {
    let n = p1.len();
    debug_assert_eq!(n, p2.len());
    let mut child = vec![0usize; n];
    let mut used = vec![false; n + 1];
    for i in lo..=hi {
        child[i] = p1[i];
        used[p1[i]] = true;
    }
    let mut fill = p2.iter().copied().filter(|&c| !used[c]);
    for (i, slot) in child.iter_mut().enumerate() {
        if i < lo || i > hi {
            *slot = fill.next().expect("exactly n - slice cities remain");
        }
    }
    Chromosome::from_vec_unchecked(child)
}

/// Classic order crossover with random cut positions.
pub fn ox<R: Rng>(p1: &Chromosome, p2: &Chromosome, rng: &mut R) -> Chromosome {
    assert_eq!(p1.len(), p2.len(), "ox parents must have equal length");
    let n = p1.len();
    if n == 0 {
        return p1.clone();
    }
    let a = rng.random_range(0..n);
    let b = rng.random_range(0..n);
    ox_with_cuts(p1, p2, a.min(b), a.max(b))
}
