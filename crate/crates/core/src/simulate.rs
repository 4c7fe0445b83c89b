//! Monte Carlo cross-check of the exact stationary states.
//!
//! Each step drops a tile at a site chosen uniformly from the model's sites;
//! since all rates are equal this discrete chain has the stationary law of
//! the continuous-time process.

use std::collections::BTreeMap;
use std::io::Write;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dynamics::TransitionTable;
use crate::error::{Error, Result};
use crate::paths::Model;
use crate::stationary::StationaryState;

pub const RNG_NAME: &str = "ChaCha8Rng";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub model: Model,
    #[serde(rename = "L")]
    pub l: usize,
    pub steps: u64,
    pub burn_in: u64,
    pub seed: u64,
    pub rng: String,
    /// Visits per canonical state index after burn-in.
    pub counts: Vec<u64>,
    pub tv: f64,
    pub max_rel_err: Option<f64>,
    /// Number of steps by desorbed tile count.
    pub avalanche: BTreeMap<usize, u64>,
}

impl SimResult {
    pub fn empirical(&self) -> Vec<f64> {
        let n = self.steps as f64;
        self.counts.iter().map(|&c| c as f64 / n).collect()
    }

    pub fn write_histogram_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(["desorbed", "count"]).map_err(io)?;
        for (k, v) in &self.avalanche {
            w.write_record([k.to_string(), v.to_string()]).map_err(io)?;
        }
        w.flush().map_err(|e| Error::Io(e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SimOptions {
    /// Steps discarded before counting; `None` means `steps / 10`.
    pub burn_in: Option<u64>,
    pub cap: Option<usize>,
}

/// Exact stationary probabilities in canonical order.
pub fn exact_distribution(state: &StationaryState) -> Vec<f64> {
    let total = state.total().to_f64().unwrap_or(f64::INFINITY);
    state
        .weights
        .iter()
        .map(|w| w.to_f64().unwrap_or(f64::INFINITY) / total)
        .collect()
}

/// Total variation distance and the largest relative error over states seen
/// in `empirical`; the latter is `None` when such a state has exact
/// probability 0.
pub fn distance(empirical: &[f64], exact: &[f64]) -> Result<(f64, Option<f64>)> {
    if empirical.len() != exact.len() {
        return Err(Error::Dimension(empirical.len(), exact.len()));
    }
    let tv = 0.5
        * empirical
            .iter()
            .zip(exact)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>();
    let mut rel = Some(0.0f64);
    for (&a, &b) in empirical.iter().zip(exact) {
        if a > 0.0 {
            rel = match (rel, b > 0.0) {
                (Some(r), true) => Some(r.max((a - b).abs() / b)),
                _ => None,
            };
        }
    }
    Ok((tv, rel))
}

/// Runs the chain from the first canonical state, counts `steps` visits after
/// the burn-in and compares against `exact`.
pub fn simulate_against(
    table: &TransitionTable,
    exact: &[f64],
    steps: u64,
    seed: u64,
    burn_in: Option<u64>,
) -> Result<SimResult> {
    if steps == 0 {
        return Err(Error::Precondition("steps must be at least 1".into()));
    }
    let burn_in = burn_in.unwrap_or(steps / 10);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sites = table.sites;
    let mut state = 0usize;
    for _ in 0..burn_in {
        state = table.step(state, rng.gen_range(0..sites)).0;
    }
    let mut counts = vec![0u64; table.paths.len()];
    let mut hist = vec![0u64; table.spec.l + 2];
    for _ in 0..steps {
        let (next, d) = table.step(state, rng.gen_range(0..sites));
        state = next;
        counts[state] += 1;
        if d >= hist.len() {
            hist.resize(d + 1, 0);
        }
        hist[d] += 1;
    }
    let n = steps as f64;
    let emp: Vec<f64> = counts.iter().map(|&c| c as f64 / n).collect();
    let (tv, max_rel_err) = distance(&emp, exact)?;
    Ok(SimResult {
        model: table.spec.model,
        l: table.spec.l,
        steps,
        burn_in,
        seed,
        rng: RNG_NAME.into(),
        counts,
        tv,
        max_rel_err,
        avalanche: hist
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .collect(),
    })
}

pub fn simulate_chain(model: Model, l: usize, steps: u64, seed: u64) -> Result<SimResult> {
    simulate_chain_with(model, l, steps, seed, SimOptions::default())
}

pub fn simulate_chain_with(
    model: Model,
    l: usize,
    steps: u64,
    seed: u64,
    opts: SimOptions,
) -> Result<SimResult> {
    let cap = opts.cap.unwrap_or(model.default_cap());
    let table = TransitionTable::new(model, l, cap)?;
    let exact = crate::stationary::stationary_state_with(
        model,
        l,
        crate::stationary::StationaryOptions {
            cap: Some(cap),
            ..Default::default()
        },
    )?;
    simulate_against(
        &table,
        &exact_distribution(&exact),
        steps,
        seed,
        opts.burn_in,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distance_examples() {
        assert_eq!(
            distance(&[0.5, 0.5], &[0.5, 0.5]).unwrap(),
            (0.0, Some(0.0))
        );
        assert_eq!(distance(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), (1.0, None));
        let (tv, _) = distance(&[0.6, 0.4], &[2.0 / 3.0, 1.0 / 3.0]).unwrap();
        assert!((tv - 1.0 / 15.0).abs() < 1e-12);
        assert!(distance(&[1.0], &[0.5, 0.5]).is_err());
    }

    #[test]
    fn single_state_chain() {
        let r = simulate_chain(Model::A, 2, 100, 3).unwrap();
        assert_eq!(r.counts, vec![100]);
        assert_eq!(r.tv, 0.0);
    }

    #[test]
    fn two_to_one_ratio() {
        let r = simulate_chain(Model::A, 4, 1_000_000, 42).unwrap();
        let n = r.steps as f64;
        // The pyramid comes first and carries weight 1 of 3.
        let p = 1.0 / 3.0;
        let sigma = (p * (1.0 - p) / n).sqrt();
        // Successive states are correlated; allow a generous multiple of the i.i.d. error.
        assert!(
            (r.counts[0] as f64 / n - p).abs() < 10.0 * sigma,
            "{:?}",
            r.counts
        );
        assert_eq!(r.counts.iter().sum::<u64>(), r.steps);
    }

    #[test]
    fn reproducible() {
        let a = simulate_chain(Model::B, 4, 10_000, 9).unwrap();
        let b = simulate_chain(Model::B, 4, 10_000, 9).unwrap();
        assert_eq!(a, b);
        let mut buf = Vec::new();
        a.write_histogram_csv(&mut buf).unwrap();
        assert!(String::from_utf8(buf)
            .unwrap()
            .starts_with("desorbed,count\n0,"));
    }
}
