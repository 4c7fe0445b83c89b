//! Exact stationary states and their summary statistics.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::dynamics::{intensity_matrix_capped, IntensityMatrix, ModelSpec};
use crate::error::{Error, Result};
use crate::hexagon::f_closed;
use crate::linalg::{kernel_vector, KernelMethod};
use crate::paths::{
    contacts_in, enumerate_family, min_contact_level_in, HeightPath, Model, PathIndex,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StationaryOptions {
    /// Largest admissible L; `None` uses the model default.
    pub cap: Option<usize>,
    pub method: KernelMethod,
}

/// Total, extremes and extreme multiplicities of a weight vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summary {
    pub s: BigInt,
    pub m: BigInt,
    pub big_m: BigInt,
    pub mult_m: usize,
    pub mult_big_m: usize,
}

/// Positive coprime integer weights spanning the kernel of the intensity matrix.
#[derive(Debug, Clone)]
pub struct StationaryState {
    pub spec: ModelSpec,
    pub paths: Vec<HeightPath>,
    pub weights: Vec<BigInt>,
    index: PathIndex,
}

pub fn stationary_state(model: Model, l: usize) -> Result<StationaryState> {
    stationary_state_with(model, l, StationaryOptions::default())
}

pub fn stationary_state_with(
    model: Model,
    l: usize,
    opts: StationaryOptions,
) -> Result<StationaryState> {
    let h = intensity_matrix_capped(model, l, opts.cap.unwrap_or(model.default_cap()))?;
    from_matrix(&h, opts.method)
}

/// Solves `H p = 0` for an already assembled matrix.
pub fn from_matrix(h: &IntensityMatrix, method: KernelMethod) -> Result<StationaryState> {
    let weights = kernel_vector(h.dimension(), h.columns(), method)?;
    if let Some(index) = weights.iter().position(|w| !w.is_positive()) {
        return Err(Error::NonPositive { index });
    }
    Ok(StationaryState {
        spec: h.spec,
        index: PathIndex::new(&h.paths),
        paths: h.paths.clone(),
        weights,
    })
}

impl StationaryState {
    /// Rebuilds a state from externally supplied `(heights, weight)` pairs and
    /// re-checks positivity, primitivity and `H p = 0`.
    pub fn from_parts(model: Model, l: usize, entries: Vec<(Vec<i32>, BigInt)>) -> Result<Self> {
        let paths = enumerate_family(model.family(), l)?;
        let index = PathIndex::new(&paths);
        let mut weights: Vec<Option<BigInt>> = vec![None; paths.len()];
        for (heights, w) in entries {
            let k = index
                .get(&heights)
                .filter(|_| heights.len() == l + 1)
                .ok_or_else(|| {
                    Error::Precondition(format!(
                        "{heights:?} is not a {} path of length {l}",
                        model.family()
                    ))
                })?;
            if weights[k].replace(w).is_some() {
                return Err(Error::Precondition(format!(
                    "duplicate weight for {heights:?}"
                )));
            }
        }
        let weights: Vec<BigInt> = weights
            .into_iter()
            .enumerate()
            .map(|(k, w)| {
                w.ok_or_else(|| Error::Precondition(format!("missing weight for {}", paths[k])))
            })
            .collect::<Result<_>>()?;
        if let Some(index) = weights.iter().position(|w| !w.is_positive()) {
            return Err(Error::NonPositive { index });
        }
        if !weights
            .iter()
            .fold(BigInt::zero(), |g, w| g.gcd(w))
            .is_one()
        {
            return Err(Error::Precondition("weights are not coprime".into()));
        }
        let h = intensity_matrix_capped(model, l, usize::MAX)?;
        if !h.apply(&weights).iter().all(Zero::is_zero) {
            return Err(Error::Precondition(
                "weights are not annihilated by the intensity matrix".into(),
            ));
        }
        Ok(StationaryState {
            spec: ModelSpec::new(model, l),
            paths,
            weights,
            index,
        })
    }

    pub fn model(&self) -> Model {
        self.spec.model
    }

    pub fn l(&self) -> usize {
        self.spec.l
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn index_of(&self, heights: &[i32]) -> Option<usize> {
        if heights.len() != self.l() + 1 {
            return None;
        }
        self.index
            .get(heights)
            .filter(|&k| self.paths[k].heights() == heights)
    }

    pub fn weight(&self, heights: &[i32]) -> Option<&BigInt> {
        self.index_of(heights).map(|k| &self.weights[k])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&HeightPath, &BigInt)> {
        self.paths.iter().zip(&self.weights)
    }

    pub fn total(&self) -> BigInt {
        self.weights.iter().sum()
    }

    pub fn summary(&self) -> Summary {
        summarize(&self.weights)
    }

    /// Indices attaining the maximal weight.
    pub fn argmax(&self) -> Vec<usize> {
        let top = self.weights.iter().max().cloned().unwrap_or_default();
        (0..self.len())
            .filter(|&k| self.weights[k] == top)
            .collect()
    }

    /// Exact residual check of `H p = 0`.
    pub fn is_annihilated(&self) -> Result<bool> {
        let h = intensity_matrix_capped(self.model(), self.l(), usize::MAX)?;
        Ok(h.apply(&self.weights).iter().all(Zero::is_zero))
    }

    /// Weights scaled by `num/den`, failing unless every product is integral.
    pub fn rescaled(&self, num: &BigInt, den: &BigInt) -> Result<Vec<BigInt>> {
        self.weights
            .iter()
            .map(|w| {
                let (q, r) = (w * num).div_rem(den);
                if r.is_zero() {
                    Ok(q)
                } else {
                    Err(Error::NonIntegral(format!("{w}*{num}/{den}")))
                }
            })
            .collect()
    }

    pub fn to_record(&self) -> StateRecord {
        let s = self.summary();
        StateRecord {
            model: self.model(),
            l: self.l(),
            weights: self
                .iter()
                .map(|(p, w)| WeightEntry {
                    heights: p.heights().to_vec(),
                    weight: w.to_string(),
                })
                .collect(),
            s: s.s.to_string(),
            m: s.m.to_string(),
            big_m: s.big_m.to_string(),
        }
    }

    pub fn from_record(rec: &StateRecord) -> Result<Self> {
        let entries = rec
            .weights
            .iter()
            .map(|e| {
                let w: BigInt = e
                    .weight
                    .parse()
                    .map_err(|_| Error::Precondition(format!("bad weight '{}'", e.weight)))?;
                Ok((e.heights.clone(), w))
            })
            .collect::<Result<Vec<_>>>()?;
        StationaryState::from_parts(rec.model, rec.l, entries)
    }
}

pub fn summarize(weights: &[BigInt]) -> Summary {
    let s: BigInt = weights.iter().sum();
    let m = weights.iter().min().cloned().unwrap_or_default();
    let big_m = weights.iter().max().cloned().unwrap_or_default();
    let mult_m = weights.iter().filter(|w| **w == m).count();
    let mult_big_m = weights.iter().filter(|w| **w == big_m).count();
    Summary {
        s,
        m,
        big_m,
        mult_m,
        mult_big_m,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub heights: Vec<i32>,
    pub weight: String,
}

/// JSON form of a stationary state; big integers are decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateRecord {
    pub model: Model,
    #[serde(rename = "L")]
    pub l: usize,
    pub weights: Vec<WeightEntry>,
    #[serde(rename = "S")]
    pub s: String,
    pub m: String,
    #[serde(rename = "M")]
    pub big_m: String,
}

/// Level-resolved sums and maxima.
///
/// `s_ln[N]` and `m_ln[N]` run over paths whose contacts all sit at level `N`
/// or above (a path without contacts belongs to every level). For model B,
/// `sigma[(N, M)]` sums paths with `h_0 = N` whose bulk contacts are all at
/// level `M` or above, and `min_by_h0[N]` is the smallest weight with `h_0 = N`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DetailedStats {
    pub s_ln: BTreeMap<i32, BigInt>,
    pub m_ln: BTreeMap<i32, BigInt>,
    pub sigma: BTreeMap<(i32, i32), BigInt>,
    pub min_by_h0: BTreeMap<i32, BigInt>,
}

/// Range of levels reported by [`detailed_stats`].
pub fn level_range(model: Model, l: usize) -> std::ops::RangeInclusive<i32> {
    let l = l as i32;
    match model {
        Model::A => (if l % 2 == 0 { -1 } else { 0 })..=(l - 1).div_euclid(2),
        Model::B | Model::C => 0..=l,
    }
}

fn bulk_min_contact(h: &[i32]) -> Option<i32> {
    let l = h.len() - 1;
    (1..l)
        .filter(|&i| h[i - 1] > h[i] && h[i + 1] > h[i])
        .map(|i| h[i])
        .min()
}

pub fn detailed_stats(state: &StationaryState) -> DetailedStats {
    let model = state.model();
    let l = state.l();
    let mut out = DetailedStats::default();
    let levels: Vec<Option<i32>> = state
        .paths
        .iter()
        .map(|p| min_contact_level_in(p.heights(), model))
        .collect();
    for n in level_range(model, l) {
        let sel = state
            .weights
            .iter()
            .zip(&levels)
            .filter(|(_, lv)| lv.is_none_or(|v| v >= n))
            .map(|(w, _)| w);
        let (mut s, mut mx) = (BigInt::zero(), None::<&BigInt>);
        for w in sel {
            s += w;
            mx = Some(mx.map_or(w, |m| m.max(w)));
        }
        out.s_ln.insert(n, s);
        out.m_ln.insert(n, mx.cloned().unwrap_or_default());
    }
    if model == Model::B {
        let l = l as i32;
        for h0 in (l % 2..=l).step_by(2) {
            let group: Vec<(Option<i32>, &BigInt)> = state
                .iter()
                .filter(|(p, _)| p.heights()[0] == h0)
                .map(|(p, w)| (bulk_min_contact(p.heights()), w))
                .collect();
            if let Some(mn) = group.iter().map(|g| g.1).min() {
                out.min_by_h0.insert(h0, mn.clone());
            }
            for m in 0..(l + h0) / 2 {
                let s: BigInt = group
                    .iter()
                    .filter(|g| g.0.is_none_or(|v| v >= m))
                    .map(|g| g.1)
                    .sum();
                out.sigma.insert((h0, m), s);
            }
        }
    }
    out
}

/// Number of contacts at exactly level `n`.
pub fn contacts_at(path: &HeightPath, model: Model, n: i32) -> usize {
    contacts_in(path.heights(), model)
        .filter(|c| c.level == n)
        .count()
}

fn to_integer(q: BigRational, what: impl FnOnce() -> String) -> Result<BigInt> {
    if q.is_integer() {
        Ok(q.to_integer())
    } else {
        Err(Error::NonIntegral(what()))
    }
}

/// Closed-form level sum of model A for `-1 <= N <= ceil((L-1)/2)`, with
/// `N = -1` only for even `L`; it is the hexagon value `f_{L, [(L-1)/2] - N}`.
pub fn closed_form_s_a(l: i64, n: i64) -> Result<BigInt> {
    let top = l.div_euclid(2);
    let lo = if l % 2 == 0 { -1 } else { 0 };
    if l < 0 || n < lo || n > top {
        return Err(Error::Precondition(format!(
            "level {n} outside [{lo}, {top}] at L={l}"
        )));
    }
    let q = f_closed(l, (l - 1).div_euclid(2) - n)
        .ok_or_else(|| Error::NonIntegral(format!("S_{{{l},{n}}} undefined")))?;
    to_integer(q, || format!("S_{{{l},{n}}}"))
}

/// Value on the `k`-th up-down diagonal of the level table (`k = 1` is the
/// rightmost), through the explicit polynomial expressions for `k <= 7`.
pub fn diagonal_formula(k: usize, l: i64) -> Result<BigInt> {
    let p = |fs: &[i64]| fs.iter().fold(BigInt::one(), |a, &f| a * f);
    let (num, den): (BigInt, BigInt) = match k {
        1 => (BigInt::one(), BigInt::one()),
        2 => (BigInt::from(l - 1), BigInt::one()),
        3 => (p(&[l - 2, l - 3, 2 * l + 1]), p(&[2, 3])),
        4 => (
            p(&[l - 2, l - 3, l - 4, l - 5, 2 * l + 1, 2 * l + 3]),
            p(&[4, 9, 5]),
        ),
        5 => (
            p(&[
                l - 3,
                l - 4,
                l - 4,
                l - 5,
                l - 6,
                l - 7,
                2 * l - 1,
                2 * l + 1,
                2 * l + 3,
                2 * l + 5,
            ]),
            p(&[16, 27, 25, 7]),
        ),
        6 => (
            p(&[
                l - 3,
                l - 4,
                l - 5,
                l - 5,
                l - 6,
                l - 6,
                l - 7,
                l - 8,
                l - 9,
                2 * l - 1,
                2 * l + 1,
                2 * l + 1,
                2 * l + 3,
                2 * l + 5,
                2 * l + 7,
            ]),
            p(&[64, 81, 125, 49, 9]),
        ),
        7 => (
            p(&[
                l - 4,
                l - 5,
                l - 5,
                l - 6,
                l - 6,
                l - 7,
                l - 7,
                l - 8,
                l - 8,
                l - 9,
                l - 10,
                l - 11,
                2 * l - 3,
                2 * l - 1,
                2 * l + 1,
                2 * l + 1,
                2 * l + 3,
                2 * l + 3,
                2 * l + 5,
                2 * l + 7,
                2 * l + 9,
            ]),
            p(&[512, 243, 625, 343, 81, 11]),
        ),
        _ => {
            return Err(Error::Precondition(format!(
                "no explicit expression for diagonal {k}"
            )))
        }
    };
    to_integer(BigRational::new(num, den), || {
        format!("diagonal {k} at L={l}")
    })
}
