//! Individuals, the diversity-biased fitness, constructive TSP
//! heuristics, perturbations, and initial-population assembly.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::instance::Instance;
use crate::split::{evaluate, tour_length, Chromosome, MtspSolution};
use crate::{Error, Result};

/// A chromosome together with its evaluated solution. `minmax` is the
/// split makespan; the diversity-biased fitness is recomputed on demand
/// against the current population.
#[derive(Clone, Debug)]
pub struct Individual {
    pub chromosome: Chromosome,
    pub solution: MtspSolution,
    pub minmax: f64,
}

impl Individual {
    /// Evaluate a chromosome through split/extract.
    pub fn from_chromosome(chromosome: Chromosome, instance: &Instance) -> Result<Self> {
        let solution = evaluate(&chromosome, instance)?;
        let minmax = solution.makespan;
        Ok(Self {
            chromosome,
            solution,
            minmax,
        })
    }
}

/// The GA population. Size stays within `[n_best, mu + lambda]` during
/// steady state; survivor selection trims it back to `mu`.
#[derive(Clone, Debug, Default)]
pub struct Population {
    members: Vec<Individual>,
}

impl Population {
    pub fn new(members: Vec<Individual>) -> Self {
        Self { members }
    }

    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn push(&mut self, ind: Individual) {
        self.members.push(ind);
    }

    pub fn get(&self, idx: usize) -> &Individual {
        &self.members[idx]
    }

    /// Member with the smallest raw makespan (first on ties).
    pub fn best(&self) -> Option<&Individual> {
        self.members
            .iter()
            .min_by(|a, b| a.minmax.partial_cmp(&b.minmax).unwrap())
    }

    /// Keep the `keep` members with the smallest raw makespan, stable on
    /// ties (insertion order).
    pub fn truncate_by_minmax(&mut self, keep: usize) {
        self.members
            .sort_by(|a, b| a.minmax.partial_cmp(&b.minmax).unwrap());
        self.members.truncate(keep);
    }

    /// Mean normalized Hamming distance from member `idx` to its two
    /// closest population neighbors. Degenerate sizes fall back to the
    /// single available distance (two members) or 1 (alone).
    pub fn diversity_contribution(&self, idx: usize) -> f64 {
        let me = &self.members[idx].chromosome;
        let mut d1 = f64::INFINITY;
        let mut d2 = f64::INFINITY;
        for (j, other) in self.members.iter().enumerate() {
            if j == idx {
                continue;
            }
            let d = hamming(me, &other.chromosome).expect("population chromosomes share a length");
            if d < d1 {
                d2 = d1;
                d1 = d;
            } else if d < d2 {
                d2 = d;
            }
        }
        if d1.is_infinite() {
            1.0
        } else if d2.is_infinite() {
            d1
        } else {
            (d1 + d2) / 2.0
        }
    }

    /// Biased fitness of member `idx` (lower is better).
    pub fn member_biased_fitness(&self, idx: usize, n_elite: usize, n_population: usize) -> f64 {
        let delta = self.diversity_contribution(idx);
        biased_fitness(self.members[idx].minmax, delta, n_elite, n_population)
    }

    /// Biased fitness of every member, with `n_elite` resolved from the
    /// configured fraction of the current population size.
    pub fn biased_fitness_all(&self, n_elite_frac: f64) -> Vec<f64> {
        let n_population = self.members.len();
        let n_elite = ((n_elite_frac * n_population as f64).round() as usize)
            .min(n_population.saturating_sub(1));
        (0..n_population)
            .map(|i| self.member_biased_fitness(i, n_elite, n_population))
            .collect()
    }
}

/// Normalized Hamming distance between two chromosomes: the fraction of
/// positions holding different cities, in `[0, 1]`.
pub fn hamming(a: &Chromosome, b: &Chromosome) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::InvalidArgument(format!(
            "hamming distance needs equal lengths ({} vs {})",
            a.len(),
            b.len()
        )));
    }
    if a.is_empty() {
        return Ok(0.0);
    }
    let mismatches = a.iter().zip(b.iter()).filter(|(x, y)| x != y).count();
    Ok(mismatches as f64 / a.len() as f64)
}

/// `minmax * (1 - n_elite / n_population)^delta`; lower is better.
pub fn biased_fitness(minmax: f64, delta: f64, n_elite: usize, n_population: usize) -> f64 {
    debug_assert!(n_elite < n_population);
    let base = 1.0 - n_elite as f64 / n_population as f64;
    minmax * base.powf(delta)
}

enum InsertionRule {
    Nearest,
    Farthest,
    Cheapest,
}

/// Cost of inserting `c` between consecutive cycle nodes `u` and `v`.
#[inline]
fn insertion_cost(instance: &Instance, u: usize, c: usize, v: usize) -> f64 {
    instance.distance(u, c) + instance.distance(c, v) - instance.distance(u, v)
}

/// Shared frame for the three classic insertion constructions. The
/// cycle starts as depot plus a seed city drawn from `rng`; selection
/// ties break on the smaller city index.
fn insertion_tour<R: Rng>(instance: &Instance, rng: &mut R, rule: InsertionRule) -> Chromosome {
    let n = instance.n();
    if n == 0 {
        return Chromosome::from_vec_unchecked(Vec::new());
    }
    let start = rng.random_range(1..=n);
    let mut cycle: Vec<usize> = vec![0, start];
    let mut remaining: Vec<usize> = (1..=n).filter(|&c| c != start).collect();

    match rule {
        InsertionRule::Nearest | InsertionRule::Farthest => {
            let mut dist_to_cycle: Vec<f64> = remaining
                .iter()
                .map(|&c| instance.distance(c, 0).min(instance.distance(c, start)))
                .collect();
            while !remaining.is_empty() {
                let pick = match rule {
                    InsertionRule::Nearest => (0..remaining.len())
                        .min_by(|&a, &b| {
                            dist_to_cycle[a]
                                .partial_cmp(&dist_to_cycle[b])
                                .unwrap()
                                .then(remaining[a].cmp(&remaining[b]))
                        })
                        .unwrap(),
                    _ => (0..remaining.len())
                        .max_by(|&a, &b| {
                            dist_to_cycle[a]
                                .partial_cmp(&dist_to_cycle[b])
                                .unwrap()
                                .then(remaining[b].cmp(&remaining[a]))
                        })
                        .unwrap(),
                };
                let city = remaining.swap_remove(pick);
                dist_to_cycle.swap_remove(pick);
                let pos = best_insertion_position(instance, &cycle, city);
                cycle.insert(pos, city);
                for (i, &c) in remaining.iter().enumerate() {
                    dist_to_cycle[i] = dist_to_cycle[i].min(instance.distance(c, city));
                }
            }
        }
        InsertionRule::Cheapest => {
            // best_pos[i]: cheapest edge (by start position) for remaining[i].
            let mut best_cost: Vec<f64> = Vec::with_capacity(remaining.len());
            let mut best_pos: Vec<usize> = Vec::with_capacity(remaining.len());
            for &c in &remaining {
                let (cost, pos) = scan_cheapest(instance, &cycle, c);
                best_cost.push(cost);
                best_pos.push(pos);
            }
            while !remaining.is_empty() {
                let pick = (0..remaining.len())
                    .min_by(|&a, &b| {
                        best_cost[a]
                            .partial_cmp(&best_cost[b])
                            .unwrap()
                            .then(remaining[a].cmp(&remaining[b]))
                    })
                    .unwrap();
                let city = remaining.swap_remove(pick);
                let at = best_pos[pick];
                best_cost.swap_remove(pick);
                best_pos.swap_remove(pick);
                cycle.insert(at + 1, city);
                for i in 0..remaining.len() {
                    if best_pos[i] == at {
                        // Its cheapest edge was just removed; rescan.
                        let (cost, pos) = scan_cheapest(instance, &cycle, remaining[i]);
                        best_cost[i] = cost;
                        best_pos[i] = pos;
                    } else {
                        if best_pos[i] > at {
                            best_pos[i] += 1;
                        }
                        // The two new edges may be cheaper.
                        for e in [at, at + 1] {
                            let u = cycle[e];
                            let v = cycle[(e + 1) % cycle.len()];
                            let cost = insertion_cost(instance, u, remaining[i], v);
                            if cost < best_cost[i] {
                                best_cost[i] = cost;
                                best_pos[i] = e;
                            }
                        }
                    }
                }
            }
        }
    }

    Chromosome::from_vec_unchecked(cycle[1..].to_vec())
}

/// Position (in `cycle`) at which inserting `city` costs least.
fn best_insertion_position(instance: &Instance, cycle: &[usize], city: usize) -> usize {
    let mut best = f64::INFINITY;
    let mut at = 1;
    for e in 0..cycle.len() {
        let u = cycle[e];
        let v = cycle[(e + 1) % cycle.len()];
        let cost = insertion_cost(instance, u, city, v);
        if cost < best {
            best = cost;
            at = e + 1;
        }
    }
    at
}

fn scan_cheapest(instance: &Instance, cycle: &[usize], city: usize) -> (f64, usize) {
    let mut best = f64::INFINITY;
    let mut pos = 0;
    for e in 0..cycle.len() {
        let u = cycle[e];
        let v = cycle[(e + 1) % cycle.len()];
        let cost = insertion_cost(instance, u, city, v);
        if cost < best {
            best = cost;
            pos = e;
        }
    }
    (best, pos)
}

/// Nearest-insertion TSP construction over the depot-rooted cycle.
pub fn nearest_insertion<R: Rng>(instance: &Instance, rng: &mut R) -> Chromosome {
    insertion_tour(instance, rng, InsertionRule::Nearest)
}

/// Farthest-insertion TSP construction.
pub fn farthest_insertion<R: Rng>(instance: &Instance, rng: &mut R) -> Chromosome {
    insertion_tour(instance, rng, InsertionRule::Farthest)
}

/// Cheapest-insertion TSP construction.
pub fn cheapest_insertion<R: Rng>(instance: &Instance, rng: &mut R) -> Chromosome {
    insertion_tour(instance, rng, InsertionRule::Cheapest)
}

/// Closed length of the giant tour (depot prepended).
pub fn giant_tour_length(instance: &Instance, chromosome: &Chromosome) -> f64 {
    tour_length(instance, chromosome.as_slice())
}

/// 2-opt a giant tour (depot fixed at the front) to local optimality.
/// Used to polish the best constructive tour into a high-quality seed.
pub fn two_opt_giant_tour(instance: &Instance, chromosome: &Chromosome) -> Chromosome {
    let mut seq = chromosome.as_slice().to_vec();
    crate::education::two_opt_path(instance, &mut seq);
    Chromosome::from_vec_unchecked(seq)
}

/// Reverse the inclusive segment `[i, j]` (0-based positions).
pub fn reverse_segment(chromosome: &Chromosome, i: usize, j: usize) -> Chromosome {
    let mut seq = chromosome.as_slice().to_vec();
    seq[i.min(j)..=i.max(j)].reverse();
    Chromosome::from_vec_unchecked(seq)
}

/// Cut into `m` random non-empty consecutive blocks and permute the
/// block order.
pub fn shuffle_blocks<R: Rng>(chromosome: &Chromosome, m: usize, rng: &mut R) -> Chromosome {
    let n = chromosome.len();
    if m <= 1 || n < 2 || m > n {
        return chromosome.clone();
    }
    let mut cuts: Vec<usize> = (1..n).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts[..m - 1].to_vec();
    cuts.sort_unstable();
    let mut bounds = vec![0];
    bounds.extend(cuts);
    bounds.push(n);
    let mut blocks: Vec<&[usize]> = bounds
        .windows(2)
        .map(|w| &chromosome.as_slice()[w[0]..w[1]])
        .collect();
    blocks.shuffle(rng);
    Chromosome::from_vec_unchecked(blocks.concat())
}

/// Pick `r ~ Uniform{2..n/2}` positions and permute the cities at them.
pub fn shuffle_positions<R: Rng>(chromosome: &Chromosome, rng: &mut R) -> Chromosome {
    let n = chromosome.len();
    if n < 2 {
        return chromosome.clone();
    }
    let hi = (n / 2).max(2).min(n);
    let r = rng.random_range(2..=hi);
    let mut positions: Vec<usize> = (0..n).collect();
    positions.shuffle(rng);
    let mut positions: Vec<usize> = positions[..r].to_vec();
    positions.sort_unstable();
    let mut cities: Vec<usize> = positions.iter().map(|&p| chromosome[p]).collect();
    cities.shuffle(rng);
    let mut seq = chromosome.as_slice().to_vec();
    for (&p, &c) in positions.iter().zip(&cities) {
        seq[p] = c;
    }
    Chromosome::from_vec_unchecked(seq)
}

/// Apply one of the three perturbations, chosen uniformly: segment
/// reversal, block-order shuffle, or position shuffle.
pub fn perturb<R: Rng>(chromosome: &Chromosome, m: usize, rng: &mut R) -> Chromosome {
    match rng.random_range(0..3) {
        0 => {
            let n = chromosome.len();
            if n < 2 {
                return chromosome.clone();
            }
            let i = rng.random_range(0..n);
            let j = rng.random_range(0..n);
            reverse_segment(chromosome, i, j)
        }
        1 => shuffle_blocks(chromosome, m, rng),
        _ => shuffle_positions(chromosome, rng),
    }
}

/// The constructive base tours used to seed a population: the three
/// insertion heuristics plus the best of them polished by 2-opt (the
/// high-quality seed tour), plus an optional imported tour.
pub fn base_tours<R: Rng>(
    instance: &Instance,
    rng: &mut R,
    import: Option<&Chromosome>,
) -> Vec<Chromosome> {
    let near = nearest_insertion(instance, rng);
    let far = farthest_insertion(instance, rng);
    let cheap = cheapest_insertion(instance, rng);
    let best = [&near, &far, &cheap]
        .into_iter()
        .min_by(|a, b| {
            giant_tour_length(instance, a)
                .partial_cmp(&giant_tour_length(instance, b))
                .unwrap()
        })
        .unwrap();
    let polished = two_opt_giant_tour(instance, best);
    let mut bases = Vec::with_capacity(5);
    if let Some(imp) = import {
        bases.push(imp.clone());
    }
    bases.push(polished);
    bases.push(near);
    bases.push(far);
    bases.push(cheap);
    bases
}

/// Assemble the initial population: base constructions first, then
/// perturbed copies of random bases, all evaluated by split, until `mu`
/// members exist.
pub fn init_population<R: Rng>(
    instance: &Instance,
    mu: usize,
    import: Option<&Chromosome>,
    rng: &mut R,
) -> Result<Population> {
    let bases = base_tours(instance, rng, import);
    let mut members = Vec::with_capacity(mu);
    for base in bases.iter().take(mu) {
        members.push(Individual::from_chromosome(base.clone(), instance)?);
    }
    while members.len() < mu {
        let base = &bases[rng.random_range(0..bases.len())];
        let perturbed = perturb(base, instance.m(), rng);
        members.push(Individual::from_chromosome(perturbed, instance)?);
    }
    Ok(Population::new(members))
}
