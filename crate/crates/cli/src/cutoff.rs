//! Wall-clock cutoff policies, resolved against the instance size.

use anyhow::{bail, Result};

/// A cutoff policy from the command line or a manifest. The two
/// symbolic forms scale with the instance's total node count.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CutoffSpec {
    /// No wall-clock limit; only the stagnation rule stops the run.
    None,
    /// `n/5` seconds.
    NodesOverFive,
    /// `2.4 * n` seconds.
    TwoPointFourNodes,
    /// A fixed number of seconds.
    Seconds(f64),
}

impl CutoffSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim().to_ascii_lowercase();
        match t.as_str() {
            "none" | "off" => Ok(Self::None),
            "n/5" => Ok(Self::NodesOverFive),
            "2.4n" | "2.4*n" => Ok(Self::TwoPointFourNodes),
            _ => match t.parse::<f64>() {
                Ok(s) if s >= 0.0 => Ok(Self::Seconds(s)),
                _ => bail!("bad cutoff {text:?}: expected \"n/5\", \"2.4n\", \"none\", or seconds"),
            },
        }
    }

    /// Seconds for an instance with `nodes` total nodes.
    pub fn resolve(self, nodes: usize) -> Option<f64> {
        match self {
            Self::None => None,
            Self::NodesOverFive => Some(nodes as f64 / 5.0),
            Self::TwoPointFourNodes => Some(2.4 * nodes as f64),
            Self::Seconds(s) => Some(s),
        }
    }
}
