//! Optimal min-max partition of a giant tour into `m` depot-anchored
//! tours, by dynamic programming over delimiter positions.

use crate::instance::Instance;
use crate::{Error, Result};

/// Giant-tour chromosome: a permutation of the customer cities `1..=n`.
/// The depot never appears.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chromosome(Vec<usize>);

impl Chromosome {
    /// Validate that `seq` is a permutation of `1..=n`.
    pub fn new(seq: Vec<usize>, n: usize) -> Result<Self> {
        if seq.len() != n {
            return Err(Error::InvalidArgument(format!(
                "chromosome has {} genes, expected {n}",
                seq.len()
            )));
        }
        let mut seen = vec![false; n + 1];
        for &c in &seq {
            if c == 0 || c > n || seen[c] {
                return Err(Error::InvalidArgument(format!(
                    "chromosome is not a permutation of 1..={n} (offender {c})"
                )));
            }
            seen[c] = true;
        }
        Ok(Self(seq))
    }

    /// Wrap a sequence the caller already knows to be a permutation.
    pub fn from_vec_unchecked(seq: Vec<usize>) -> Self {
        Self(seq)
    }

    /// Concatenate tours back into a giant tour.
    pub fn from_tours(tours: &[Vec<usize>]) -> Self {
        Self(tours.iter().flatten().copied().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl std::ops::Deref for Chromosome {
    type Target = [usize];
    fn deref(&self) -> &Self::Target {
        &self.0
    }
}

/// DP tables produced by [`split`]: `v[k][r]` is the best makespan over
/// placements that cover the first `k` genes with exactly `r` tours
/// (`f64::INFINITY` marks unreachable states), and `p[k][r]` is the
/// predecessor position used to reach that state.
#[derive(Clone, Debug)]
pub struct SplitTables {
    pub v: Vec<Vec<f64>>,
    pub p: Vec<Vec<usize>>,
}

/// Sentinel predecessor for unreachable states.
pub const NO_PRED: usize = usize::MAX;

/// An evaluated mTSP solution: `m` non-empty tours (depot implicit at
/// both ends of each), their lengths, and the makespan.
#[derive(Clone, Debug)]
pub struct MtspSolution {
    pub tours: Vec<Vec<usize>>,
    pub tour_lengths: Vec<f64>,
    pub makespan: f64,
}

/// Closed tour length `depot -> tour[0] -> ... -> tour[last] -> depot`,
/// accumulated left to right. All makespan arithmetic in this crate goes
/// through the same association order so table values and extracted
/// lengths compare exactly.
pub fn tour_length(instance: &Instance, tour: &[usize]) -> f64 {
    let Some((&first, _)) = tour.split_first() else {
        return 0.0;
    };
    let mut len = instance.distance(0, first);
    for w in tour.windows(2) {
        len += instance.distance(w[0], w[1]);
    }
    len + instance.distance(*tour.last().unwrap(), 0)
}

impl MtspSolution {
    /// Evaluate a set of tours (lengths and makespan recomputed).
    pub fn from_tours(tours: Vec<Vec<usize>>, instance: &Instance) -> Self {
        let tour_lengths: Vec<f64> = tours.iter().map(|t| tour_length(instance, t)).collect();
        let makespan = tour_lengths.iter().fold(0.0_f64, |a, &b| a.max(b));
        Self {
            tours,
            tour_lengths,
            makespan,
        }
    }

    /// Check the solution invariants: the tours partition `1..=n`, each
    /// tour is non-empty, stored lengths match recomputation within
    /// `1e-9` relative, and the makespan is the maximum length.
    pub fn validate(&self, instance: &Instance) -> Result<()> {
        let n = instance.n();
        if self.tours.len() != instance.m() {
            return Err(Error::Internal(format!(
                "{} tours, expected {}",
                self.tours.len(),
                instance.m()
            )));
        }
        let mut seen = vec![false; n + 1];
        let mut count = 0usize;
        for tour in &self.tours {
            if tour.is_empty() {
                return Err(Error::Internal("empty tour".into()));
            }
            for &c in tour {
                if c == 0 || c > n || seen[c] {
                    return Err(Error::Internal(format!(
                        "city {c} repeated or out of range"
                    )));
                }
                seen[c] = true;
                count += 1;
            }
        }
        if count != n {
            return Err(Error::Internal(format!(
                "{count} cities covered, expected {n}"
            )));
        }
        let mut max = 0.0_f64;
        for (tour, &stored) in self.tours.iter().zip(&self.tour_lengths) {
            let fresh = tour_length(instance, tour);
            let scale = stored.abs().max(1.0);
            if (fresh - stored).abs() > 1e-9 * scale {
                return Err(Error::Internal(format!(
                    "stored length {stored} != recomputed {fresh}"
                )));
            }
            max = max.max(stored);
        }
        if self.makespan != max {
            return Err(Error::Internal(format!(
                "makespan {} != max tour length {max}",
                self.makespan
            )));
        }
        Ok(())
    }

    /// Concatenate the tours into a giant-tour chromosome.
    pub fn to_chromosome(&self) -> Chromosome {
        Chromosome::from_tours(&self.tours)
    }
}

/// Optimal min-max split of the chromosome into exactly `m` consecutive
/// non-empty segments, each closed through the depot. Returns the
/// makespan and the DP tables for [`extract`]. O(n^2 m) time.
pub fn split(chromosome: &Chromosome, instance: &Instance) -> Result<(f64, SplitTables)> {
    let n = chromosome.len();
    let m = instance.m();
    if n < m {
        return Err(Error::Infeasible(format!(
            "{n} cities cannot form {m} non-empty tours"
        )));
    }
    let seq = chromosome.as_slice();
    let mut v = vec![vec![f64::INFINITY; m + 1]; n + 1];
    let mut p = vec![vec![NO_PRED; m + 1]; n + 1];
    v[0][0] = 0.0;

    for k in 0..n {
        let r_vals: std::ops::RangeInclusive<usize> = if k == 0 { 0..=0 } else { 1..=k.min(m - 1) };
        for r in r_vals {
            let base = v[k][r];
            if !base.is_finite() {
                continue;
            }
            // Leave at least one city for each of the remaining tours.
            let j_max = n - (m - r - 1);
            let mut path = 0.0;
            for j in (k + 1)..=j_max {
                path += if j == k + 1 {
                    instance.distance(0, seq[j - 1])
                } else {
                    instance.distance(seq[j - 2], seq[j - 1])
                };
                // Interior positions may not complete the final tour.
                if j < n && r + 1 > m - 1 {
                    continue;
                }
                let cost = path + instance.distance(seq[j - 1], 0);
                let cand = base.max(cost);
                if cand < v[j][r + 1] {
                    v[j][r + 1] = cand;
                    p[j][r + 1] = k;
                }
            }
        }
    }

    let makespan = v[n][m];
    if !makespan.is_finite() {
        return Err(Error::Internal(
            "split reached no feasible final state".into(),
        ));
    }
    Ok((makespan, SplitTables { v, p }))
}

/// Backtrack the predecessor table from `(n, m)` to `(0, 0)` and emit
/// the tours. The resulting makespan equals the table value exactly, and
/// the tours concatenate back to the input chromosome.
pub fn extract(
    tables: &SplitTables,
    chromosome: &Chromosome,
    instance: &Instance,
) -> Result<MtspSolution> {
    let n = chromosome.len();
    let m = instance.m();
    let seq = chromosome.as_slice();
    let mut tours: Vec<Vec<usize>> = Vec::with_capacity(m);
    let mut j = n;
    for r in (1..=m).rev() {
        let k = *tables
            .p
            .get(j)
            .and_then(|row| row.get(r))
            .ok_or_else(|| Error::Internal("predecessor table too small".into()))?;
        if k == NO_PRED || k >= j {
            return Err(Error::Internal(format!(
                "backtrace stuck at position {j}, {r} routes"
            )));
        }
        tours.push(seq[k..j].to_vec());
        j = k;
    }
    if j != 0 {
        return Err(Error::Internal(format!(
            "backtrace ended at position {j}, not 0"
        )));
    }
    tours.reverse();
    let sol = MtspSolution::from_tours(tours, instance);
    debug_assert_eq!(sol.makespan, tables.v[n][m]);
    Ok(sol)
}

/// Evaluate a chromosome end to end: split, then extract.
pub fn evaluate(chromosome: &Chromosome, instance: &Instance) -> Result<MtspSolution> {
    let (_, tables) = split(chromosome, instance)?;
    extract(&tables, chromosome, instance)
}

/// Guard for [`brute_force_split`]; delimiter combinations explode past
/// this.
pub const BRUTE_FORCE_MAX_N: usize = 15;

/// Testing oracle: enumerate every placement of `m - 1` delimiters and
/// return the minimum makespan with one argmin. Independent of the DP;
/// segment costs are accumulated left to right just like [`tour_length`]
/// so the two routes agree bit for bit.
pub fn brute_force_split(
    chromosome: &Chromosome,
    instance: &Instance,
) -> Result<(f64, Vec<Vec<usize>>)> {
    let n = chromosome.len();
    let m = instance.m();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::InvalidArgument(format!(
            "brute-force split is limited to n <= {BRUTE_FORCE_MAX_N}, got {n}"
        )));
    }
    if n < m {
        return Err(Error::Infeasible(format!(
            "{n} cities cannot form {m} non-empty tours"
        )));
    }
    let seq = chromosome.as_slice();
    // Cut positions c_1 < ... < c_{m-1} in 1..n; segment i spans
    // [c_i, c_{i+1}) with c_0 = 0 and c_m = n.
    let mut cuts: Vec<usize> = (1..m).collect();
    let mut best = f64::INFINITY;
    let mut best_tours: Vec<Vec<usize>> = Vec::new();
    loop {
        let mut bounds = Vec::with_capacity(m + 1);
        bounds.push(0);
        bounds.extend_from_slice(&cuts);
        bounds.push(n);
        let mut worst = 0.0_f64;
        for w in bounds.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let mut len = instance.distance(0, seq[lo]);
            for i in lo..hi - 1 {
                len += instance.distance(seq[i], seq[i + 1]);
            }
            len += instance.distance(seq[hi - 1], 0);
            worst = worst.max(len);
        }
        if worst < best {
            best = worst;
            best_tours = bounds
                .windows(2)
                .map(|w| seq[w[0]..w[1]].to_vec())
                .collect();
        }
        // Advance the combination odometer.
        let mut i = cuts.len();
        loop {
            if i == 0 {
                return Ok((best, best_tours));
            }
            i -= 1;
            if cuts[i] < n - (cuts.len() - i) {
                cuts[i] += 1;
                for k in i + 1..cuts.len() {
                    cuts[k] = cuts[k - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{random_instance, Instance, Metric};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn planar(coords: &[(f64, f64)], m: usize) -> Instance {
        Instance::new("t", coords.to_vec(), m, Metric::EuclidReal).unwrap()
    }

    fn random_chromosome(n: usize, rng: &mut ChaCha8Rng) -> Chromosome {
        let mut seq: Vec<usize> = (1..=n).collect();
        seq.shuffle(rng);
        Chromosome::from_vec_unchecked(seq)
    }

    #[test]
    fn chromosome_validation() {
        assert!(Chromosome::new(vec![2, 1, 3], 3).is_ok());
        assert!(Chromosome::new(vec![1, 1, 3], 3).is_err());
        assert!(Chromosome::new(vec![0, 1, 2], 3).is_err());
        assert!(Chromosome::new(vec![1, 2], 3).is_err());
    }

    #[test]
    fn single_salesman_gets_full_tour() {
        let inst = planar(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)], 1);
        let chrom = Chromosome::new(vec![1, 2, 3], 3).unwrap();
        let (mk, tables) = split(&chrom, &inst).unwrap();
        assert_eq!(mk, tour_length(&inst, &[1, 2, 3]));
        let sol = extract(&tables, &chrom, &inst).unwrap();
        assert_eq!(sol.tours, vec![vec![1, 2, 3]]);
    }

    #[test]
    fn two_symmetric_cities_split_evenly() {
        let inst = planar(&[(0.0, 0.0), (1.0, 0.0), (-1.0, 0.0)], 2);
        let chrom = Chromosome::new(vec![1, 2], 2).unwrap();
        let (mk, tables) = split(&chrom, &inst).unwrap();
        assert_eq!(mk, 2.0);
        let sol = extract(&tables, &chrom, &inst).unwrap();
        assert_eq!(sol.tours, vec![vec![1], vec![2]]);
        assert_eq!(sol.makespan, 2.0);
    }

    #[test]
    fn collinear_three_cities_two_tours() {
        // Depot at 0; cities at x = 1, 2, 3. Both cut placements give
        // makespan 6 (enumerated by hand and by the oracle).
        let inst = planar(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (3.0, 0.0)], 2);
        let chrom = Chromosome::new(vec![1, 2, 3], 3).unwrap();
        let (mk, _) = split(&chrom, &inst).unwrap();
        assert_eq!(mk, 6.0);
        let (bf, _) = brute_force_split(&chrom, &inst).unwrap();
        assert_eq!(bf, 6.0);
    }

    #[test]
    fn split_rejects_more_salesmen_than_cities() {
        let inst = planar(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)], 2);
        let chrom = Chromosome::new(vec![1], 1).unwrap();
        assert!(matches!(
            split(&chrom, &inst),
            Err(crate::Error::Infeasible(_))
        ));
    }

    #[test]
    fn brute_force_singleton_tours_when_m_equals_n() {
        let inst = random_instance(5, 5, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let chrom = random_chromosome(5, &mut rng);
        let (mk, tours) = brute_force_split(&chrom, &inst).unwrap();
        assert!(tours.iter().all(|t| t.len() == 1));
        let expected = (1..=5)
            .map(|c| 2.0 * inst.distance(0, c))
            .fold(0.0_f64, f64::max);
        assert_eq!(mk, expected);
        let (dp, _) = split(&chrom, &inst).unwrap();
        assert_eq!(dp, mk);
    }

    #[test]
    fn brute_force_guard() {
        let inst = random_instance(16, 2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let chrom = random_chromosome(16, &mut rng);
        assert!(brute_force_split(&chrom, &inst).is_err());
    }

    #[test]
    fn split_matches_brute_force_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for trial in 0..300 {
            let m = 1 + (trial % 4);
            let n = m + (trial % (13 - m));
            let inst = random_instance(n, m, trial as u64).unwrap();
            let chrom = random_chromosome(n, &mut rng);
            let (dp, tables) = split(&chrom, &inst).unwrap();
            let (bf, _) = brute_force_split(&chrom, &inst).unwrap();
            assert_eq!(dp, bf, "n={n} m={m} trial={trial}");
            let sol = extract(&tables, &chrom, &inst).unwrap();
            assert_eq!(sol.makespan, dp);
            sol.validate(&inst).unwrap();
        }
    }

    #[test]
    fn extract_concatenation_reproduces_chromosome() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for trial in 0..50 {
            let n = 8;
            let inst = random_instance(n, 3, 1000 + trial).unwrap();
            let chrom = random_chromosome(n, &mut rng);
            let sol = evaluate(&chrom, &inst).unwrap();
            assert_eq!(sol.tours.len(), 3);
            assert_eq!(sol.to_chromosome(), chrom);
            // Oracle agreement on the makespan (ties may differ in tours).
            let (bf, _) = brute_force_split(&chrom, &inst).unwrap();
            assert_eq!(sol.makespan, bf);
        }
    }

    #[test]
    fn makespan_monotone_in_m() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 10;
        for trial in 0..30 {
            let chrom = random_chromosome(n, &mut rng);
            let base = random_instance(n, 1, 50 + trial).unwrap();
            let mut prev = f64::INFINITY;
            for m in 1..=5 {
                let inst = base.with_m(m).unwrap();
                let (mk, _) = split(&chrom, &inst).unwrap();
                assert!(mk <= prev + 1e-12, "m={m}: {mk} > {prev}");
                prev = mk;
            }
        }
    }

    #[test]
    fn makespan_lower_bound_depot_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for trial in 0..30 {
            let n = 9;
            let m = 1 + (trial as usize % 4);
            let inst = random_instance(n, m, 90 + trial).unwrap();
            let chrom = random_chromosome(n, &mut rng);
            let (mk, _) = split(&chrom, &inst).unwrap();
            let bound = (1..=n)
                .map(|c| 2.0 * inst.distance(0, c))
                .fold(0.0_f64, f64::max);
            assert!(mk >= bound - 1e-9);
        }
    }

    #[test]
    fn value_table_monotone_in_route_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 12;
        let inst = random_instance(n, 4, 8).unwrap();
        for _ in 0..20 {
            let chrom = random_chromosome(n, &mut rng);
            let (_, tables) = split(&chrom, &inst).unwrap();
            for k in 0..=n {
                for r in 1..4 {
                    let a = tables.v[k][r];
                    let b = tables.v[k][r + 1];
                    if a.is_finite() && b.is_finite() {
                        assert!(b <= a + 1e-9, "v[{k}][{}]={b} > v[{k}][{r}]={a}", r + 1);
                    }
                }
            }
        }
    }

    #[test]
    fn extract_detects_corrupted_tables() {
        let inst = random_instance(6, 2, 9).unwrap();
        let chrom = Chromosome::new((1..=6).collect(), 6).unwrap();
        let (_, mut tables) = split(&chrom, &inst).unwrap();
        tables.p[6][2] = NO_PRED;
        assert!(extract(&tables, &chrom, &inst).is_err());
    }
}
