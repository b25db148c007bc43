//! The outer hybrid GA loop: tournament selection on the
//! diversity-biased fitness, crossover, education, survivor selection on
//! the raw makespan, diversification, and the two stopping rules.

use std::time::Instant;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::crossover::{ox, stx};
use crate::education::{educate, MoveWeights};
use crate::instance::{build_neighbor_lists, Instance, NeighborLists};
use crate::population::{init_population, Individual, Population};
use crate::split::{evaluate, Chromosome};
use crate::{Error, Result};

/// Which crossover the reproduction step uses. OX exists for the
/// ablation comparison against STX.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossoverKind {
    Stx,
    Ox,
}

/// All tunable GA parameters. Defaults are the reference configuration:
/// mu = 10, lambda = 20, k_tournament = 2, it_div = 1000, it_ni = 2500,
/// n_best = 0.2 mu, n_elite = 0.2 of the population, p_remove = 0.1,
/// n_imprv = 100, n_local_1 = 100, n_local_2 = 1000, n_close = 0.1 n.
/// The wall-clock cutoff is off by default; the CLI resolves the usual
/// `n/5`-seconds policy from the instance size.
#[derive(Clone, Debug, Serialize)]
pub struct GaConfig {
    pub mu: usize,
    pub lambda: usize,
    pub k_tournament: usize,
    pub it_div: u64,
    pub it_ni: u64,
    pub n_best_frac: f64,
    pub n_elite_frac: f64,
    pub n_close_frac: f64,
    pub p_remove: f64,
    pub n_imprv: u64,
    pub n_local_1: u64,
    pub n_local_2: u64,
    pub cutoff_seconds: Option<f64>,
    pub seed: u64,
    pub crossover: CrossoverKind,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            mu: 10,
            lambda: 20,
            k_tournament: 2,
            it_div: 1000,
            it_ni: 2500,
            n_best_frac: 0.2,
            n_elite_frac: 0.2,
            n_close_frac: 0.1,
            p_remove: 0.1,
            n_imprv: 100,
            n_local_1: 100,
            n_local_2: 1000,
            cutoff_seconds: None,
            seed: 0,
            crossover: CrossoverKind::Stx,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.mu == 0 || self.lambda == 0 {
            return Err(Error::InvalidArgument(
                "mu and lambda must be positive".into(),
            ));
        }
        if self.k_tournament == 0 {
            return Err(Error::InvalidArgument(
                "k_tournament must be positive".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.p_remove) {
            return Err(Error::InvalidArgument(format!(
                "p_remove {} outside [0, 1]",
                self.p_remove
            )));
        }
        // The reference setting has n_local_1 < n_local_2; equality is
        // tolerated so both stages can be switched off together.
        if self.n_local_1 > self.n_local_2 {
            return Err(Error::InvalidArgument(format!(
                "n_local_1 = {} must not exceed n_local_2 = {}",
                self.n_local_1, self.n_local_2
            )));
        }
        for (name, frac) in [
            ("n_best_frac", self.n_best_frac),
            ("n_elite_frac", self.n_elite_frac),
            ("n_close_frac", self.n_close_frac),
        ] {
            if !(0.0..=1.0).contains(&frac) {
                return Err(Error::InvalidArgument(format!(
                    "{name} = {frac} outside [0, 1]"
                )));
            }
        }
        if let Some(c) = self.cutoff_seconds {
            if c.is_nan() || c < 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "cutoff_seconds = {c} must be non-negative"
                )));
            }
        }
        Ok(())
    }

    /// Number of elites retained through a diversification.
    pub fn n_best(&self) -> usize {
        (self.n_best_frac * self.mu as f64).round() as usize
    }

    /// Neighbor-list length for an instance with `n` customers.
    pub fn n_close(&self, n: usize) -> usize {
        ((self.n_close_frac * n as f64).ceil() as usize).clamp(1, n.saturating_sub(1).max(1))
    }

    /// Set a parameter by field name (CLI `--params key=value`).
    pub fn set_param(&mut self, key: &str, value: &str) -> Result<()> {
        let bad =
            |e: &dyn std::fmt::Display| Error::InvalidArgument(format!("bad value for {key}: {e}"));
        match key {
            "mu" => self.mu = value.parse().map_err(|e| bad(&e))?,
            "lambda" => self.lambda = value.parse().map_err(|e| bad(&e))?,
            "k_tournament" => self.k_tournament = value.parse().map_err(|e| bad(&e))?,
            "it_div" => self.it_div = value.parse().map_err(|e| bad(&e))?,
            "it_ni" => self.it_ni = value.parse().map_err(|e| bad(&e))?,
            "n_best_frac" => self.n_best_frac = value.parse().map_err(|e| bad(&e))?,
            "n_elite_frac" => self.n_elite_frac = value.parse().map_err(|e| bad(&e))?,
            "n_close_frac" => self.n_close_frac = value.parse().map_err(|e| bad(&e))?,
            "p_remove" => self.p_remove = value.parse().map_err(|e| bad(&e))?,
            "n_imprv" => self.n_imprv = value.parse().map_err(|e| bad(&e))?,
            "n_local_1" => self.n_local_1 = value.parse().map_err(|e| bad(&e))?,
            "n_local_2" => self.n_local_2 = value.parse().map_err(|e| bad(&e))?,
            "seed" => self.seed = value.parse().map_err(|e| bad(&e))?,
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown parameter {other:?}"
                )))
            }
        }
        Ok(())
    }
}

/// Why a run stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    NoImprovement,
    Cutoff,
}

/// One strict improvement of the best-ever makespan.
#[derive(Clone, Copy, Debug)]
pub struct HistoryEntry {
    pub generation: u64,
    pub time_s: f64,
    pub makespan: f64,
}

/// Outcome of a GA run.
#[derive(Clone, Debug)]
pub struct RunResult {
    pub best: Individual,
    pub best_makespan_history: Vec<HistoryEntry>,
    pub generations: u64,
    pub termination: Termination,
}

impl RunResult {
    /// Seconds from run start to the last improvement.
    pub fn time_to_best_s(&self) -> f64 {
        self.best_makespan_history.last().map_or(0.0, |h| h.time_s)
    }
}

/// Tournament selection: sample `k` distinct members, return the one
/// with the lowest biased fitness. `fitness` is indexed like the
/// population.
pub fn tournament_select<'a, R: Rng>(
    pop: &'a Population,
    fitness: &[f64],
    k: usize,
    rng: &mut R,
) -> &'a Individual {
    pop.get(tournament_select_idx(pop.len(), fitness, k, rng))
}

fn tournament_select_idx<R: Rng>(len: usize, fitness: &[f64], k: usize, rng: &mut R) -> usize {
    debug_assert!(len > 0);
    let k = k.min(len);
    let sample = rand::seq::index::sample(rng, len, k);
    sample
        .into_iter()
        .min_by(|&a, &b| fitness[a].partial_cmp(&fitness[b]).unwrap())
        .unwrap()
}

/// Keep the `mu` members with the smallest raw makespan (stable ties).
pub fn survivor_selection(pop: &mut Population, mu: usize) {
    pop.truncate_by_minmax(mu);
}

/// Diversification: retain the `n_best` lowest-makespan members and
/// refill to `mu` the way the initial population is built. The caller
/// resets the roulette weights.
pub fn diversify<R: Rng>(
    pop: &mut Population,
    instance: &Instance,
    cfg: &GaConfig,
    rng: &mut R,
) -> Result<()> {
    let keep = cfg.n_best().min(cfg.mu);
    pop.truncate_by_minmax(keep);
    if pop.len() >= cfg.mu {
        return Ok(());
    }
    let fresh = init_population(instance, cfg.mu - pop.len(), None, rng)?;
    for ind in fresh.members() {
        pop.push(ind.clone());
    }
    Ok(())
}

struct Loop<'a> {
    instance: &'a Instance,
    cfg: &'a GaConfig,
    neighbors: NeighborLists,
    pop: Population,
    weights: MoveWeights,
    best: Individual,
    history: Vec<HistoryEntry>,
    generations: u64,
    since_improvement: u64,
    since_diversification: u64,
    started: Instant,
}

impl<'a> Loop<'a> {
    fn new(
        instance: &'a Instance,
        cfg: &'a GaConfig,
        import: Option<&Chromosome>,
        rng: &mut ChaCha8Rng,
    ) -> Result<Self> {
        cfg.validate()?;
        if instance.n() < instance.m() {
            return Err(Error::Infeasible(format!(
                "{} cities cannot be served by {} salesmen",
                instance.n(),
                instance.m()
            )));
        }
        let started = Instant::now();
        let neighbors = build_neighbor_lists(instance, cfg.n_close(instance.n()));
        let pop = init_population(instance, cfg.mu, import, rng)?;
        let best = pop.best().expect("population is non-empty").clone();
        let history = vec![HistoryEntry {
            generation: 0,
            time_s: started.elapsed().as_secs_f64(),
            makespan: best.minmax,
        }];
        Ok(Self {
            instance,
            cfg,
            neighbors,
            pop,
            weights: MoveWeights::default(),
            best,
            history,
            generations: 0,
            since_improvement: 0,
            since_diversification: 0,
            started,
        })
    }

    fn elapsed(&self) -> f64 {
        self.started.elapsed().as_secs_f64()
    }

    fn should_stop(&self) -> Option<Termination> {
        if self.since_improvement >= self.cfg.it_ni {
            return Some(Termination::NoImprovement);
        }
        if let Some(cutoff) = self.cfg.cutoff_seconds {
            if self.elapsed() >= cutoff {
                return Some(Termination::Cutoff);
            }
        }
        None
    }

    /// Insert one educated offspring and update the improvement
    /// bookkeeping.
    fn absorb(&mut self, ind: Individual) {
        self.generations += 1;
        let improved = ind.minmax < self.best.minmax;
        if improved {
            self.best = ind.clone();
            self.history.push(HistoryEntry {
                generation: self.generations,
                time_s: self.elapsed(),
                makespan: self.best.minmax,
            });
            self.since_improvement = 0;
            self.since_diversification = 0;
        } else {
            self.since_improvement += 1;
            self.since_diversification += 1;
        }
        self.pop.push(ind);
        if self.pop.len() >= self.cfg.mu + self.cfg.lambda {
            survivor_selection(&mut self.pop, self.cfg.mu);
        }
        debug_assert!(self.pop.len() <= self.cfg.mu + self.cfg.lambda);
        debug_assert!(self.pop.len() >= self.cfg.n_best().min(self.cfg.mu));
    }

    fn maybe_diversify(&mut self, rng: &mut ChaCha8Rng) -> Result<()> {
        if self.since_diversification < self.cfg.it_div || self.since_improvement >= self.cfg.it_ni
        {
            return Ok(());
        }
        diversify(&mut self.pop, self.instance, self.cfg, rng)?;
        self.weights.reset();
        self.since_diversification = 0;
        // Fresh members may already beat the incumbent.
        let candidate = self.pop.best().expect("population refilled").clone();
        if candidate.minmax < self.best.minmax {
            self.best = candidate;
            self.history.push(HistoryEntry {
                generation: self.generations,
                time_s: self.elapsed(),
                makespan: self.best.minmax,
            });
            self.since_improvement = 0;
        }
        Ok(())
    }

    fn finish(self, termination: Termination) -> RunResult {
        RunResult {
            best: self.best,
            best_makespan_history: self.history,
            generations: self.generations,
            termination,
        }
    }
}

/// Produce one child solution from two tournament-selected parents.
fn make_child<R: Rng>(
    state: &Loop<'_>,
    fitness: &[f64],
    rng: &mut R,
) -> Result<crate::split::MtspSolution> {
    let p1 = tournament_select(&state.pop, fitness, state.cfg.k_tournament, rng);
    let p2 = tournament_select(&state.pop, fitness, state.cfg.k_tournament, rng);
    match state.cfg.crossover {
        CrossoverKind::Stx => Ok(stx(&p1.solution, &p2.solution, state.instance, rng)),
        CrossoverKind::Ox => {
            let chrom = ox(&p1.chromosome, &p2.chromosome, rng);
            evaluate(&chrom, state.instance)
        }
    }
}

/// Run the GA to completion (single-threaded steady state).
pub fn run(instance: &Instance, cfg: &GaConfig) -> Result<RunResult> {
    run_with_import(instance, cfg, None)
}

/// [`run`] seeded with an externally supplied giant tour.
pub fn run_with_import(
    instance: &Instance,
    cfg: &GaConfig,
    import: Option<&Chromosome>,
) -> Result<RunResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut state = Loop::new(instance, cfg, import, &mut rng)?;
    loop {
        if let Some(t) = state.should_stop() {
            return Ok(state.finish(t));
        }
        let fitness = state.pop.biased_fitness_all(state.cfg.n_elite_frac);
        let child = make_child(&state, &fitness, &mut rng)?;
        let stagnation = state.since_improvement;
        let ind = educate(
            child,
            instance,
            cfg,
            &mut state.weights,
            stagnation,
            &state.neighbors,
            &mut rng,
        )?;
        state.absorb(ind);
        state.maybe_diversify(&mut rng)?;
    }
}

/// Batch variant: each generation educates `lambda` offspring in
/// parallel. Every offspring draws from its own seeded stream, so the
/// result depends only on the configuration, not on thread scheduling.
pub fn run_parallel(
    instance: &Instance,
    cfg: &GaConfig,
    threads: usize,
    import: Option<&Chromosome>,
) -> Result<RunResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut state = Loop::new(instance, cfg, import, &mut rng)?;
    loop {
        if let Some(t) = state.should_stop() {
            return Ok(state.finish(t));
        }
        let fitness = state.pop.biased_fitness_all(state.cfg.n_elite_frac);
        let child_seeds: Vec<u64> = (0..cfg.lambda).map(|_| rng.next_u64()).collect();
        let stagnation = state.since_improvement;
        let weights_snapshot = state.weights.clone();
        let jobs: Vec<Result<(Individual, [f64; 4])>> = pool.install(|| {
            child_seeds
                .par_iter()
                .map(|&seed| {
                    let mut crng = ChaCha8Rng::seed_from_u64(seed);
                    let child = make_child(&state, &fitness, &mut crng)?;
                    let mut local = weights_snapshot.clone();
                    let ind = educate(
                        child,
                        instance,
                        cfg,
                        &mut local,
                        stagnation,
                        &state.neighbors,
                        &mut crng,
                    )?;
                    let delta: [f64; 4] = std::array::from_fn(|i| {
                        local.as_array()[i] - weights_snapshot.as_array()[i]
                    });
                    Ok((ind, delta))
                })
                .collect()
        });
        for job in jobs {
            let (ind, delta) = job?;
            let mut merged = state.weights.as_array();
            for (w, d) in merged.iter_mut().zip(delta) {
                *w += d;
            }
            state.weights = MoveWeights::from_array(merged);
            state.absorb(ind);
        }
        state.maybe_diversify(&mut rng)?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::random_instance;
    use crate::population::init_population;

    #[test]
    fn config_validation() {
        assert!(GaConfig::default().validate().is_ok());
        assert!(GaConfig {
            n_local_1: 5,
            n_local_2: 4,
            ..GaConfig::default()
        }
        .validate()
        .is_err());
        assert!(GaConfig {
            p_remove: 1.5,
            ..GaConfig::default()
        }
        .validate()
        .is_err());
        assert!(GaConfig {
            mu: 0,
            ..GaConfig::default()
        }
        .validate()
        .is_err());
        assert!(GaConfig {
            n_local_1: 0,
            n_local_2: 0,
            ..GaConfig::default()
        }
        .validate()
        .is_ok());
    }

    #[test]
    fn config_param_setting() {
        let mut cfg = GaConfig::default();
        cfg.set_param("mu", "4").unwrap();
        cfg.set_param("p_remove", "0.5").unwrap();
        assert_eq!(cfg.mu, 4);
        assert_eq!(cfg.p_remove, 0.5);
        assert!(cfg.set_param("bogus", "1").is_err());
        assert!(cfg.set_param("mu", "x").is_err());
    }

    #[test]
    fn resolved_fraction_parameters() {
        let cfg = GaConfig::default();
        assert_eq!(cfg.n_best(), 2);
        assert_eq!(cfg.n_close(50), 5);
        assert_eq!(cfg.n_close(1), 1);
    }

    fn tiny_pop(n: usize, mu: usize, seed: u64) -> (Instance, Population) {
        let inst = random_instance(n, 2, seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pop = init_population(&inst, mu, None, &mut rng).unwrap();
        (inst, pop)
    }

    #[test]
    fn exhaustive_tournament_returns_fitness_minimum() {
        let (_, pop) = tiny_pop(10, 8, 1);
        let fitness = pop.biased_fitness_all(0.2);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let want = fitness.iter().cloned().fold(f64::INFINITY, f64::min);
        for _ in 0..20 {
            let winner = tournament_select(&pop, &fitness, pop.len(), &mut rng);
            let idx = pop
                .members()
                .iter()
                .position(|m| std::ptr::eq(m, winner))
                .unwrap();
            assert_eq!(fitness[idx], want);
        }
    }

    #[test]
    fn single_tournament_is_uniform_draw() {
        let (_, pop) = tiny_pop(10, 8, 3);
        let fitness = pop.biased_fitness_all(0.2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut seen = vec![false; pop.len()];
        for _ in 0..500 {
            let winner = tournament_select(&pop, &fitness, 1, &mut rng);
            let idx = pop
                .members()
                .iter()
                .position(|m| std::ptr::eq(m, winner))
                .unwrap();
            seen[idx] = true;
        }
        assert!(seen.iter().all(|&s| s), "all members reachable under k = 1");
    }

    #[test]
    fn tournament_tolerates_uniform_fitness() {
        let (_, pop) = tiny_pop(10, 6, 4);
        let fitness = vec![1.0; pop.len()];
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10 {
            let _ = tournament_select(&pop, &fitness, 2, &mut rng);
        }
    }

    #[test]
    fn survivor_selection_keeps_smallest_makespans() {
        let (_, mut pop) = tiny_pop(12, 9, 5);
        let mut spans: Vec<f64> = pop.members().iter().map(|m| m.minmax).collect();
        spans.sort_by(|a, b| a.partial_cmp(b).unwrap());
        survivor_selection(&mut pop, 4);
        assert_eq!(pop.len(), 4);
        let kept: Vec<f64> = pop.members().iter().map(|m| m.minmax).collect();
        assert_eq!(kept, spans[..4].to_vec());
    }

    #[test]
    fn survivor_selection_handles_clones() {
        let (_, pop0) = tiny_pop(8, 2, 6);
        let one = pop0.get(0).clone();
        let mut pop = Population::new(vec![one.clone(); 9]);
        survivor_selection(&mut pop, 3);
        assert_eq!(pop.len(), 3);
        assert_eq!(pop.best().unwrap().minmax, one.minmax);
    }

    #[test]
    fn diversify_keeps_elites_and_refills() {
        let inst = random_instance(12, 2, 7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cfg = GaConfig::default();
        let mut pop = init_population(&inst, cfg.mu, None, &mut rng).unwrap();
        let mut spans: Vec<f64> = pop.members().iter().map(|m| m.minmax).collect();
        spans.sort_by(|a, b| a.partial_cmp(b).unwrap());
        diversify(&mut pop, &inst, &cfg, &mut rng).unwrap();
        assert_eq!(pop.len(), cfg.mu);
        // The n_best = 2 incumbent elites survive in front.
        assert_eq!(pop.get(0).minmax, spans[0]);
        assert_eq!(pop.get(1).minmax, spans[1]);
        // Determinism of the refill.
        let mut rng_a = ChaCha8Rng::seed_from_u64(9);
        let mut pop_a = init_population(&inst, cfg.mu, None, &mut rng_a).unwrap();
        diversify(&mut pop_a, &inst, &cfg, &mut rng_a).unwrap();
        let mut rng_b = ChaCha8Rng::seed_from_u64(9);
        let mut pop_b = init_population(&inst, cfg.mu, None, &mut rng_b).unwrap();
        diversify(&mut pop_b, &inst, &cfg, &mut rng_b).unwrap();
        for (a, b) in pop_a.members().iter().zip(pop_b.members()) {
            assert_eq!(a.chromosome, b.chromosome);
        }
    }

    fn quick_cfg(seed: u64) -> GaConfig {
        GaConfig {
            it_ni: 60,
            it_div: 40,
            n_local_1: 20,
            n_local_2: 60,
            n_imprv: 10,
            seed,
            ..GaConfig::default()
        }
    }

    #[test]
    fn run_terminates_by_stagnation_and_is_deterministic() {
        let inst = random_instance(12, 3, 21).unwrap();
        let cfg = quick_cfg(5);
        let a = run(&inst, &cfg).unwrap();
        let b = run(&inst, &cfg).unwrap();
        assert_eq!(a.termination, Termination::NoImprovement);
        assert_eq!(a.generations, b.generations);
        assert_eq!(a.best.minmax, b.best.minmax);
        assert_eq!(a.best.chromosome, b.best.chromosome);
        assert_eq!(a.best_makespan_history.len(), b.best_makespan_history.len());
        for (x, y) in a.best_makespan_history.iter().zip(&b.best_makespan_history) {
            assert_eq!(x.generation, y.generation);
            assert_eq!(x.makespan, y.makespan);
        }
    }

    #[test]
    fn run_history_is_monotone_and_valid() {
        let inst = random_instance(16, 3, 33).unwrap();
        let res = run(&inst, &quick_cfg(6)).unwrap();
        for w in res.best_makespan_history.windows(2) {
            assert!(w[1].makespan < w[0].makespan);
        }
        assert_eq!(
            res.best.minmax,
            res.best_makespan_history.last().unwrap().makespan
        );
        res.best.solution.validate(&inst).unwrap();
    }

    #[test]
    fn run_cutoff_path_returns_valid_result() {
        let inst = random_instance(30, 4, 44).unwrap();
        let cfg = GaConfig {
            cutoff_seconds: Some(0.01),
            ..GaConfig::default()
        };
        let res = run(&inst, &cfg).unwrap();
        assert_eq!(res.termination, Termination::Cutoff);
        res.best.solution.validate(&inst).unwrap();
    }

    #[test]
    fn run_rejects_infeasible_instance() {
        // Instance construction itself forbids n < m, so drive run with
        // a config that makes m exceed n via with_m.
        assert!(random_instance(3, 5, 1).is_err());
    }

    #[test]
    fn degenerate_config_still_produces_valid_solutions() {
        let inst = random_instance(10, 2, 55).unwrap();
        let cfg = GaConfig {
            p_remove: 0.0,
            crossover: CrossoverKind::Ox,
            n_local_1: 0,
            n_local_2: 0,
            it_ni: 40,
            seed: 3,
            ..GaConfig::default()
        };
        let res = run(&inst, &cfg).unwrap();
        res.best.solution.validate(&inst).unwrap();
        assert_eq!(res.termination, Termination::NoImprovement);
    }

    #[test]
    fn parallel_run_is_reproducible_and_thread_count_independent() {
        let inst = random_instance(14, 3, 66).unwrap();
        let cfg = quick_cfg(11);
        let a = run_parallel(&inst, &cfg, 2, None).unwrap();
        let b = run_parallel(&inst, &cfg, 4, None).unwrap();
        assert_eq!(a.best.minmax, b.best.minmax);
        assert_eq!(a.best.chromosome, b.best.chromosome);
        assert_eq!(a.generations, b.generations);
        a.best.solution.validate(&inst).unwrap();
    }
}
