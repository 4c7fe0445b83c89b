//! Left and right coverings and the orbits they generate.
//!
//! Left coverings act on Ballot paths through the contacts of model B, right
//! coverings on anchored paths through the contacts of model C.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::paths::{contacts_in, enumerate_family, has_anchor, Family, HeightPath, Model, Side};
use crate::stationary::StationaryState;

fn side_model(side: Side) -> Model {
    match side {
        Side::Left => Model::B,
        Side::Right => Model::C,
    }
}

/// Raises the part of the path left of (and including) `i`, or right of it,
/// by 2, then lowers everything by 2 if no height in {0, 1} is left.
pub fn covering(path: &HeightPath, i: usize, side: Side) -> Result<HeightPath> {
    let h = path.heights();
    if !contacts_in(h, side_model(side)).any(|c| c.position == i) {
        return Err(Error::NotAContact { position: i });
    }
    HeightPath::new(path.family(), cover_heights(h, i, side))
}

fn cover_heights(h: &[i32], i: usize, side: Side) -> Vec<i32> {
    let mut out: Vec<i32> = h
        .iter()
        .enumerate()
        .map(|(k, &x)| {
            let raised = match side {
                Side::Left => k <= i,
                Side::Right => k >= i,
            };
            if raised {
                x + 2
            } else {
                x
            }
        })
        .collect();
    if !has_anchor(&out) {
        out.iter_mut().for_each(|x| *x -= 2);
    }
    out
}

/// `N`-contacts away from the boundary on the far side that lie beyond every
/// lower contact: left of all of them for `Left`, right of all for `Right`.
pub fn eligible_contacts(path: &HeightPath, n: i32, side: Side) -> Vec<usize> {
    eligible_in(path.heights(), n, side)
}

fn eligible_in(h: &[i32], n: i32, side: Side) -> Vec<usize> {
    let l = h.len() - 1;
    let cs: Vec<_> = contacts_in(h, side_model(side)).collect();
    let low: Vec<usize> = cs
        .iter()
        .filter(|c| c.level < n)
        .map(|c| c.position)
        .collect();
    cs.iter()
        .filter(|c| c.level == n)
        .map(|c| c.position)
        .filter(|&i| match side {
            Side::Left => i != l && low.iter().all(|&j| i < j),
            Side::Right => i != 0 && low.iter().all(|&j| i > j),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub generator: HeightPath,
    pub level: i32,
    pub side: Side,
    /// Members ordered by step word.
    pub members: Vec<HeightPath>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Closure of `path` under repeated coverings at eligible contacts of level `n`.
/// The size is checked against `2^|eligible(path)|`.
pub fn orbit_closure(path: &HeightPath, n: i32, side: Side) -> Result<Orbit> {
    let family = path.family();
    let mut seen: BTreeSet<Vec<i32>> = BTreeSet::new();
    let mut todo = vec![path.heights().to_vec()];
    seen.insert(path.heights().to_vec());
    while let Some(w) = todo.pop() {
        for i in eligible_in(&w, n, side) {
            let q = cover_heights(&w, i, side);
            if seen.insert(q.clone()) {
                todo.push(q);
            }
        }
    }
    let eligible = eligible_in(path.heights(), n, side).len();
    if seen.len() != 1usize << eligible {
        return Err(Error::OrbitSize {
            got: seen.len(),
            eligible,
        });
    }
    let mut members = seen
        .into_iter()
        .map(|h| HeightPath::new(family, h))
        .collect::<Result<Vec<_>>>()?;
    members.sort_by_key(|p| p.step_word());
    Ok(Orbit {
        generator: path.clone(),
        level: n,
        side,
        members,
    })
}

/// Generators of the maximal orbits at level 0 or 1: on Ballot paths (left),
/// `h_0 = 0` (even L) or `h_0 = 1` (odd L) for N = 0, and additionally
/// `h_0 = 2` for N = 1 at even L; on anchored paths (right), `h_L = 0`, plus
/// `h_L = 2` with minimum 1 for N = 1.
pub fn maximal_generators(family: Family, l: usize, n: i32, side: Side) -> Result<Vec<HeightPath>> {
    let paths = enumerate_family(family, l)?;
    let even = l.is_multiple_of(2);
    let keep: Box<dyn Fn(&[i32]) -> bool> = match (family, side, n) {
        (Family::Ballot, Side::Left, 0) => Box::new(move |h| h[0] == if even { 0 } else { 1 }),
        (Family::Ballot, Side::Left, 1) => Box::new(move |h| {
            if even {
                h[0] == 0 || h[0] == 2
            } else {
                h[0] == 1
            }
        }),
        (Family::AnchoredCross, Side::Right, 0) => Box::new(move |h| h[l] == 0),
        (Family::AnchoredCross, Side::Right, 1) => {
            Box::new(move |h| h[l] == 0 || (h[l] == 2 && h.iter().min() == Some(&1)))
        }
        _ => {
            return Err(Error::Precondition(format!(
                "no maximal orbits for {family} paths, side {side}, level {n}"
            )))
        }
    };
    Ok(paths.into_iter().filter(|p| keep(p.heights())).collect())
}

/// Whether the maximal orbits tile the family without overlap.
pub fn orbits_tile_family(family: Family, l: usize, n: i32, side: Side) -> Result<bool> {
    let total = enumerate_family(family, l)?.len();
    let mut seen: BTreeSet<Vec<i32>> = BTreeSet::new();
    for g in maximal_generators(family, l, n, side)? {
        for m in orbit_closure(&g, n, side)?.members {
            if !seen.insert(m.into_heights()) {
                return Ok(false);
            }
        }
    }
    Ok(seen.len() == total)
}

pub fn orbit_sum(state: &StationaryState, orbit: &Orbit) -> Result<BigInt> {
    orbit
        .members
        .iter()
        .map(|m| {
            state.weight(m.heights()).cloned().ok_or_else(|| {
                Error::Precondition(format!(
                    "orbit member {m} is not a state of model {}",
                    state.model()
                ))
            })
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberRecord {
    pub heights: Vec<i32>,
    pub weight: String,
}

/// JSON form of an orbit with its weights and, when known, the predicted sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRecord {
    pub generator: Vec<i32>,
    pub level: i32,
    pub side: Side,
    pub members: Vec<MemberRecord>,
    pub sum: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
}

pub fn orbit_record(
    state: &StationaryState,
    orbit: &Orbit,
    expected: Option<BigInt>,
) -> Result<OrbitRecord> {
    let sum = orbit_sum(state, orbit)?;
    let members = orbit
        .members
        .iter()
        .map(|m| MemberRecord {
            heights: m.heights().to_vec(),
            weight: state
                .weight(m.heights())
                .map(|w| w.to_string())
                .unwrap_or_default(),
        })
        .collect();
    Ok(OrbitRecord {
        generator: orbit.generator.heights().to_vec(),
        level: orbit.level,
        side: orbit.side,
        members,
        pass: expected.as_ref().map(|e| *e == sum),
        expected: expected.map(|e| e.to_string()),
        sum: sum.to_string(),
    })
}
