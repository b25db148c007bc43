//! Problem instances: coordinates, distance metrics, TSPLIB I/O, and
//! nearest-neighbor lists.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::{Error, Result};

/// Distance function applied to the 2-D coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    /// Plain Euclidean distance, unrounded.
    EuclidReal,
    /// Euclidean distance rounded to the nearest integer (TSPLIB EUC_2D).
    EuclidRoundedTsplib,
    /// TSPLIB ATT pseudo-Euclidean distance.
    PseudoEuclidAtt,
}

/// Distance between two points under a metric.
pub fn metric_distance(metric: Metric, a: (f64, f64), b: (f64, f64)) -> f64 {
    let dx = a.0 - b.0;
    let dy = a.1 - b.1;
    let sq = dx * dx + dy * dy;
    match metric {
        Metric::EuclidReal => sq.sqrt(),
        Metric::EuclidRoundedTsplib => (sq.sqrt() + 0.5).floor(),
        Metric::PseudoEuclidAtt => {
            let r = (sq / 10.0).sqrt();
            let t = (r + 0.5).floor();
            if t < r {
                t + 1.0
            } else {
                t
            }
        }
    }
}

/// Dense symmetric matrix of all pairwise node distances.
#[derive(Clone, Debug)]
pub struct DistanceMatrix {
    nodes: usize,
    vals: Vec<f64>,
}

impl DistanceMatrix {
    pub fn compute(coords: &[(f64, f64)], metric: Metric) -> Self {
        let nodes = coords.len();
        let mut vals = vec![0.0; nodes * nodes];
        for i in 0..nodes {
            for j in (i + 1)..nodes {
                let d = metric_distance(metric, coords[i], coords[j]);
                vals[i * nodes + j] = d;
                vals[j * nodes + i] = d;
            }
        }
        Self { nodes, vals }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.vals[i * self.nodes + j]
    }
}

/// Above this customer count the dense matrix is skipped and distances
/// are computed on the fly.
const DENSE_MATRIX_MAX_N: usize = 3000;

/// An mTSP instance: `n` customer cities plus a depot (node 0), `m`
/// salesmen, and a distance metric. Immutable after construction.
#[derive(Clone, Debug)]
pub struct Instance {
    name: String,
    coords: Vec<(f64, f64)>,
    m: usize,
    metric: Metric,
    matrix: Option<DistanceMatrix>,
}

impl Instance {
    /// Build an instance from raw coordinates. `coords[0]` is the depot.
    pub fn new(
        name: impl Into<String>,
        coords: Vec<(f64, f64)>,
        m: usize,
        metric: Metric,
    ) -> Result<Self> {
        let n = coords.len().saturating_sub(1);
        if m < 1 {
            return Err(Error::InvalidArgument("need at least one salesman".into()));
        }
        if n < m {
            return Err(Error::Infeasible(format!(
                "{n} customer cities cannot be served by {m} salesmen (need n >= m)"
            )));
        }
        if let Some((x, y)) = coords
            .iter()
            .find(|(x, y)| !x.is_finite() || !y.is_finite())
        {
            return Err(Error::InvalidArgument(format!(
                "non-finite coordinate ({x}, {y})"
            )));
        }
        let matrix = (n <= DENSE_MATRIX_MAX_N).then(|| DistanceMatrix::compute(&coords, metric));
        Ok(Self {
            name: name.into(),
            coords,
            m,
            metric,
            matrix,
        })
    }

    /// Number of customer cities (depot excluded).
    #[inline]
    pub fn n(&self) -> usize {
        self.coords.len() - 1
    }

    /// Total node count including the depot (the TSPLIB DIMENSION).
    #[inline]
    pub fn num_nodes(&self) -> usize {
        self.coords.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn coords(&self) -> &[(f64, f64)] {
        &self.coords
    }

    #[inline]
    pub fn coord(&self, i: usize) -> (f64, f64) {
        self.coords[i]
    }

    /// Distance between nodes `i` and `j` (0 = depot).
    #[inline]
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        match &self.matrix {
            Some(mat) => mat.get(i, j),
            None => metric_distance(self.metric, self.coords[i], self.coords[j]),
        }
    }

    /// Same instance with a different salesman count.
    pub fn with_m(&self, m: usize) -> Result<Self> {
        Self::new(self.name.clone(), self.coords.clone(), m, self.metric)
    }

    /// Same coordinates under a different metric (matrix rebuilt).
    pub fn with_metric(&self, metric: Metric) -> Result<Self> {
        Self::new(self.name.clone(), self.coords.clone(), self.m, metric)
    }

    /// Re-root the instance so that node `depot` becomes node 0. The
    /// remaining nodes keep their relative order.
    pub fn with_depot(&self, depot: usize) -> Result<Self> {
        if depot >= self.coords.len() {
            return Err(Error::InvalidArgument(format!(
                "depot index {depot} out of range (instance has {} nodes)",
                self.coords.len()
            )));
        }
        let mut coords = self.coords.clone();
        let d = coords.remove(depot);
        coords.insert(0, d);
        Self::new(self.name.clone(), coords, self.m, self.metric)
    }

    /// Serialize to TSPLIB text. Coordinates are written with Rust's
    /// shortest round-trip float formatting, so parsing the output
    /// recovers them exactly.
    pub fn to_tsplib(&self) -> String {
        let ewt = match self.metric {
            Metric::PseudoEuclidAtt => "ATT",
            _ => "EUC_2D",
        };
        let mut out = String::new();
        out.push_str(&format!("NAME : {}\n", self.name));
        out.push_str("TYPE : TSP\n");
        out.push_str(&format!("DIMENSION : {}\n", self.coords.len()));
        out.push_str(&format!("EDGE_WEIGHT_TYPE : {ewt}\n"));
        out.push_str("NODE_COORD_SECTION\n");
        for (i, (x, y)) in self.coords.iter().enumerate() {
            out.push_str(&format!("{} {} {}\n", i + 1, x, y));
        }
        out.push_str("EOF\n");
        out
    }
}

/// Parse a TSPLIB-format file. The first node listed in
/// NODE_COORD_SECTION becomes the depot. EUC_2D instances default to the
/// unrounded [`Metric::EuclidReal`]; ATT maps to [`Metric::PseudoEuclidAtt`].
pub fn parse_tsplib(input: &str, m: usize) -> Result<Instance> {
    let mut name = String::from("unnamed");
    let mut dimension: Option<usize> = None;
    let mut metric: Option<Metric> = None;
    let mut coords: Vec<(f64, f64)> = Vec::new();
    let mut in_coords = false;

    for (idx, raw) in input.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if in_coords {
            if line.eq_ignore_ascii_case("EOF") {
                in_coords = false;
                continue;
            }
            let mut parts = line.split_whitespace();
            let _id = parts.next().ok_or_else(|| Error::Parse {
                line: lineno,
                msg: "empty coordinate line".into(),
            })?;
            let x: f64 = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse {
                    line: lineno,
                    msg: format!("bad x coordinate in {line:?}"),
                })?;
            let y: f64 = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse {
                    line: lineno,
                    msg: format!("bad y coordinate in {line:?}"),
                })?;
            coords.push((x, y));
            if Some(coords.len()) == dimension {
                in_coords = false;
            }
            continue;
        }
        if line.eq_ignore_ascii_case("NODE_COORD_SECTION") {
            if dimension.is_none() {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "NODE_COORD_SECTION before DIMENSION".into(),
                });
            }
            in_coords = true;
            continue;
        }
        if line.eq_ignore_ascii_case("EOF") {
            break;
        }
        let (key, value) = match line.split_once(':') {
            Some((k, v)) => (k.trim().to_ascii_uppercase(), v.trim().to_string()),
            None => (line.to_ascii_uppercase(), String::new()),
        };
        match key.as_str() {
            "NAME" => name = value,
            "DIMENSION" => {
                dimension = Some(value.parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("bad DIMENSION {value:?}"),
                })?);
            }
            "EDGE_WEIGHT_TYPE" => {
                metric = Some(match value.as_str() {
                    "EUC_2D" => Metric::EuclidReal,
                    "ATT" => Metric::PseudoEuclidAtt,
                    other => {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: format!("unsupported edge weight type {other:?}"),
                        })
                    }
                });
            }
            // TYPE, COMMENT, DISPLAY_DATA_TYPE etc. are ignored.
            _ => {}
        }
    }

    let dimension = dimension.ok_or_else(|| Error::Parse {
        line: 0,
        msg: "missing DIMENSION".into(),
    })?;
    let metric = metric.ok_or_else(|| Error::Parse {
        line: 0,
        msg: "missing EDGE_WEIGHT_TYPE".into(),
    })?;
    if coords.len() != dimension {
        return Err(Error::Parse {
            line: 0,
            msg: format!(
                "DIMENSION is {dimension} but {} coordinates were listed",
                coords.len()
            ),
        });
    }
    Instance::new(name, coords, m, metric)
}

/// Read an instance from a file path.
pub fn load_tsplib(path: &std::path::Path, m: usize) -> Result<Instance> {
    let text = std::fs::read_to_string(path)?;
    parse_tsplib(&text, m)
}

/// Generate `n` customers plus a depot, i.i.d. uniform on the unit
/// square, under [`Metric::EuclidReal`]. Pure function of `(n, m, seed)`.
pub fn random_instance(n: usize, m: usize, seed: u64) -> Result<Instance> {
    if n < m {
        return Err(Error::InvalidArgument(format!(
            "n = {n} customers < m = {m} salesmen"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords: Vec<(f64, f64)> = (0..=n)
        .map(|_| (rng.random::<f64>(), rng.random::<f64>()))
        .collect();
    Instance::new(
        format!("rand{}-s{}", n + 1, seed),
        coords,
        m,
        Metric::EuclidReal,
    )
}

/// Per-city lists of the `n_close` nearest other cities, ascending by
/// distance. Index 0 (the depot) has an empty list; the depot never
/// appears in any list.
#[derive(Clone, Debug)]
pub struct NeighborLists {
    lists: Vec<Vec<usize>>,
}

impl NeighborLists {
    /// Neighbors of city `c`, nearest first.
    #[inline]
    pub fn of(&self, c: usize) -> &[usize] {
        &self.lists[c]
    }

    pub fn n_close(&self) -> usize {
        self.lists.get(1).map_or(0, Vec::len)
    }
}

/// Build neighbor lists truncated to `n_close` entries (clamped to
/// `n - 1`). Distance ties break on the smaller city index.
pub fn build_neighbor_lists(instance: &Instance, n_close: usize) -> NeighborLists {
    let n = instance.n();
    let keep = n_close.min(n.saturating_sub(1));
    let mut lists = Vec::with_capacity(n + 1);
    lists.push(Vec::new());
    for c in 1..=n {
        let mut others: Vec<usize> = (1..=n).filter(|&o| o != c).collect();
        others.sort_by(|&a, &b| {
            instance
                .distance(c, a)
                .partial_cmp(&instance.distance(c, b))
                .unwrap()
                .then(a.cmp(&b))
        });
        others.truncate(keep);
        lists.push(others);
    }
    NeighborLists { lists }
}
