//! Height paths of the three configuration spaces, their contacts, and the
//! path transformations used by the orbit constructions.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest L accepted by [`enumerate_family`]; enumeration walks all 2^L step words.
pub const MAX_ENUMERATION_L: usize = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Dyck,
    Ballot,
    AnchoredCross,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Dyck, Family::Ballot, Family::AnchoredCross];

    pub fn name(self) -> &'static str {
        match self {
            Family::Dyck => "Dyck",
            Family::Ballot => "Ballot",
            Family::AnchoredCross => "AnchoredCross",
        }
    }

    /// Number of paths of length `l`: Catalan, central binomial, or 2^L.
    pub fn size(self, l: usize) -> u128 {
        match self {
            Family::Dyck => catalan(l.div_ceil(2)),
            Family::Ballot => binomial(l as u128, (l / 2) as u128),
            Family::AnchoredCross => 1u128 << l,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dyck" => Ok(Family::Dyck),
            "ballot" => Ok(Family::Ballot),
            "anchoredcross" | "anchored-cross" | "ac" => Ok(Family::AnchoredCross),
            _ => Err(Error::Precondition(format!("unknown family '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Model {
    A,
    B,
    C,
}

impl Model {
    pub const ALL: [Model; 3] = [Model::A, Model::B, Model::C];

    pub fn family(self) -> Family {
        match self {
            Model::A => Family::Dyck,
            Model::B => Family::Ballot,
            Model::C => Family::AnchoredCross,
        }
    }

    /// Admissible positions for tile drops and for contacts:
    /// `0<i<L` (A), `0<=i<L` (B), `0<=i<=L` (C).
    pub fn positions(self, l: usize) -> Range<usize> {
        match self {
            Model::A => 1..l.max(1),
            Model::B => 0..l,
            Model::C => 0..l + 1,
        }
    }

    /// Boundary couplings `(c, cbar)`.
    pub fn couplings(self) -> (u8, u8) {
        match self {
            Model::A => (0, 0),
            Model::B => (1, 0),
            Model::C => (1, 1),
        }
    }

    /// Default largest L for exact stationary computations.
    pub fn default_cap(self) -> usize {
        match self {
            Model::A | Model::B => 14,
            Model::C => 12,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::A => "A",
            Model::B => "B",
            Model::C => "C",
        })
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(Model::A),
            "B" => Ok(Model::B),
            "C" => Ok(Model::C),
            _ => Err(Error::Precondition(format!("unknown model '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "left" | "l" => Ok(Side::Left),
            "right" | "r" => Ok(Side::Right),
            _ => Err(Error::Precondition(format!("unknown side '{s}'"))),
        }
    }
}

/// An interface configuration `h_0..h_L` tagged with its family.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PathRecord", into = "PathRecord")]
pub struct HeightPath {
    family: Family,
    heights: Vec<i32>,
}

/// JSON form `{"L": .., "family": .., "heights": [..]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PathRecord {
    #[serde(rename = "L")]
    pub l: usize,
    pub family: Family,
    pub heights: Vec<i32>,
}

impl From<HeightPath> for PathRecord {
    fn from(p: HeightPath) -> Self {
        PathRecord {
            l: p.l(),
            family: p.family,
            heights: p.heights,
        }
    }
}

impl TryFrom<PathRecord> for HeightPath {
    type Error = Error;

    fn try_from(r: PathRecord) -> Result<Self> {
        if r.heights.len() != r.l + 1 {
            return Err(Error::InvalidPath {
                family: r.family,
                heights: r.heights,
                reason: "length differs from L+1",
            });
        }
        HeightPath::new(r.family, r.heights)
    }
}

impl HeightPath {
    pub fn new(family: Family, heights: Vec<i32>) -> Result<Self> {
        match check_family(&heights, family) {
            Ok(()) => Ok(HeightPath { family, heights }),
            Err(reason) => Err(Error::InvalidPath {
                family,
                heights,
                reason,
            }),
        }
    }

    /// Caller guarantees the family invariants.
    pub(crate) fn new_unchecked(family: Family, heights: Vec<i32>) -> Self {
        debug_assert_eq!(check_family(&heights, family), Ok(()));
        HeightPath { family, heights }
    }

    /// The path whose i-th step is bit `L-1-i` of `word` (1 = down step).
    /// Returns `None` when the anchored path built from the word is not in `family`.
    pub fn from_step_word(family: Family, l: usize, word: u64) -> Option<Self> {
        let heights = anchored_from_word(l, word);
        check_family(&heights, family).ok()?;
        Some(HeightPath { family, heights })
    }

    pub fn l(&self) -> usize {
        self.heights.len() - 1
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn heights(&self) -> &[i32] {
        &self.heights
    }

    pub fn into_heights(self) -> Vec<i32> {
        self.heights
    }

    pub fn step_word(&self) -> u64 {
        step_word(&self.heights)
    }

    pub fn satisfies(&self, family: Family) -> bool {
        check_family(&self.heights, family).is_ok()
    }

    /// The same heights viewed as a member of another family.
    pub fn retag(&self, family: Family) -> Result<HeightPath> {
        HeightPath::new(family, self.heights.clone())
    }

    pub(crate) fn require(&self, model: Model) -> Result<()> {
        if self.satisfies(model.family()) {
            Ok(())
        } else {
            Err(Error::FamilyMismatch {
                model,
                expected: model.family(),
                heights: self.heights.clone(),
            })
        }
    }
}

impl fmt::Display for HeightPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, h) in self.heights.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{h}")?;
        }
        write!(f, "]")
    }
}

pub(crate) fn check_family(h: &[i32], family: Family) -> std::result::Result<(), &'static str> {
    if h.len() < 2 {
        return Err("L must be at least 1");
    }
    if h.windows(2).any(|w| (w[1] - w[0]).abs() != 1) {
        return Err("steps must be +1 or -1");
    }
    if h.iter().any(|&x| x < 0) {
        return Err("heights must be non-negative");
    }
    let l = h.len() - 1;
    let last = h[l];
    match family {
        Family::AnchoredCross => {
            if last % 2 != 0 {
                return Err("h_L must be even");
            }
            if !has_anchor(h) {
                return Err("some height must be 0 or 1");
            }
        }
        Family::Ballot => {
            if last != 0 {
                return Err("h_L must be 0");
            }
        }
        Family::Dyck => {
            if last != 0 {
                return Err("h_L must be 0");
            }
            if h[0] != (l % 2) as i32 {
                return Err("h_0 must be L mod 2");
            }
        }
    }
    Ok(())
}

pub(crate) fn has_anchor(h: &[i32]) -> bool {
    h.iter().any(|&x| x == 0 || x == 1)
}

pub(crate) fn step_word(h: &[i32]) -> u64 {
    h.windows(2)
        .fold(0u64, |acc, w| (acc << 1) | u64::from(w[1] < w[0]))
}

/// Anchored path with the given step word: h_0 is the smaller of `-min`,
/// `1-min` making h_L even.
pub(crate) fn anchored_from_word(l: usize, word: u64) -> Vec<i32> {
    let mut rel = Vec::with_capacity(l + 1);
    rel.push(0i32);
    for k in 0..l {
        let down = (word >> (l - 1 - k)) & 1 == 1;
        let last = rel[k];
        rel.push(if down { last - 1 } else { last + 1 });
    }
    let mu = *rel.iter().min().expect("non-empty");
    let mut h0 = -mu;
    if (h0 + rel[l]).rem_euclid(2) != 0 {
        h0 += 1;
    }
    rel.iter().map(|r| r + h0).collect()
}

/// All paths of `family` with length `l`, in ascending step-word order (up < down).
pub fn enumerate_family(family: Family, l: usize) -> Result<Vec<HeightPath>> {
    if l == 0 {
        return Err(Error::Precondition("L must be at least 1".into()));
    }
    if l > MAX_ENUMERATION_L {
        return Err(Error::Precondition(format!(
            "L={l} exceeds the enumeration limit {MAX_ENUMERATION_L}"
        )));
    }
    Ok((0..1u64 << l)
        .filter_map(|w| HeightPath::from_step_word(family, l, w))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Contact {
    pub position: usize,
    pub level: i32,
}

pub(crate) fn is_local_min(h: &[i32], i: usize) -> bool {
    let l = h.len() - 1;
    (i == 0 || h[i - 1] > h[i]) && (i == l || h[i + 1] > h[i])
}

pub(crate) fn contacts_in(h: &[i32], model: Model) -> impl Iterator<Item = Contact> + '_ {
    model
        .positions(h.len() - 1)
        .filter(move |&i| is_local_min(h, i))
        .map(move |i| Contact {
            position: i,
            level: h[i],
        })
}

/// Contacts of `path` in the position range of `model`, sorted by position.
pub fn contacts(path: &HeightPath, model: Model) -> Result<Vec<Contact>> {
    path.require(model)?;
    Ok(contacts_in(path.heights(), model).collect())
}

/// Minimum height over the model's position range (`None` if the range is empty).
pub fn interior_min(path: &HeightPath, model: Model) -> Result<Option<i32>> {
    path.require(model)?;
    Ok(model.positions(path.l()).map(|i| path.heights()[i]).min())
}

/// Lowest contact level, `None` for a path without contacts.
pub fn min_contact_level(path: &HeightPath, model: Model) -> Result<Option<i32>> {
    path.require(model)?;
    Ok(min_contact_level_in(path.heights(), model))
}

pub(crate) fn min_contact_level_in(h: &[i32], model: Model) -> Option<i32> {
    contacts_in(h, model).map(|c| c.level).min()
}

/// Membership in the subset whose contacts all sit at level N or higher.
pub fn in_level_set(path: &HeightPath, model: Model, n: i32) -> Result<bool> {
    Ok(min_contact_level(path, model)?.is_none_or(|m| m >= n))
}

/// Lookup of enumerated paths by step word and left height.
#[derive(Debug, Clone)]
pub struct PathIndex {
    keys: Vec<(u64, i32)>,
}

impl PathIndex {
    pub fn new(paths: &[HeightPath]) -> Self {
        let keys: Vec<(u64, i32)> = paths
            .iter()
            .map(|p| (p.step_word(), p.heights()[0]))
            .collect();
        debug_assert!(keys.windows(2).all(|w| w[0].0 < w[1].0));
        PathIndex { keys }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn get(&self, heights: &[i32]) -> Option<usize> {
        let w = step_word(heights);
        let k = self.keys.binary_search_by_key(&w, |e| e.0).ok()?;
        (self.keys[k].1 == heights[0]).then_some(k)
    }
}

/// Named configurations used by the orbit and maxima statements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// Ballot path with left height `h0` and the maximal number of `s`-contacts.
    W { h0: i32, s: i32 },
    /// Anchored path `[2,1,2,..,s+1, zigzag, ..,1,2]` (L even).
    X { s: i32 },
    /// Ballot path `[2,1,2,..,s+1, zigzag, ..,1,0]` (L even).
    Y { s: i32 },
    /// Ballot path `[3,2,3,..,s+1, zigzag, ..,0]` (L odd).
    Z { s: i32 },
    /// Pointwise-minimal path of the model's family: `h_i = (L-i) mod 2`.
    Substrate(Model),
    /// Alternating path `h_i = b + (i mod 2)` with the least admissible base `b`.
    Zigzag(Model),
}

impl Shape {
    fn kind(&self) -> &'static str {
        match self {
            Shape::W { .. } => "W",
            Shape::X { .. } => "X",
            Shape::Y { .. } => "Y",
            Shape::Z { .. } => "Z",
            Shape::Substrate(_) => "Substrate",
            Shape::Zigzag(_) => "Zigzag",
        }
    }
}

fn shape_err(shape: &Shape, reason: String) -> Error {
    Error::ShapeRange {
        kind: shape.kind(),
        reason,
    }
}

fn w_heights(l: usize, h0: i32, s: i32) -> Vec<i32> {
    let li = l as i32;
    let mut h = vec![h0];
    while *h.last().expect("non-empty") < s + 1 {
        h.push(h.last().expect("non-empty") + 1);
    }
    for _ in 0..((li + h0) / 2 - s - 1) {
        h.push(s);
        h.push(s + 1);
    }
    while *h.last().expect("non-empty") > 0 {
        h.push(h.last().expect("non-empty") - 1);
    }
    h
}

pub fn build_shape(shape: Shape, l: usize) -> Result<HeightPath> {
    if l == 0 {
        return Err(shape_err(&shape, "L must be at least 1".into()));
    }
    let li = l as i32;
    let even_range = |s: i32| -> Result<()> {
        if !l.is_multiple_of(2) {
            return Err(shape_err(&shape, format!("needs even L, got {l}")));
        }
        if s < 1 || s > (li - 2) / 2 {
            return Err(shape_err(
                &shape,
                format!("s={s} outside 1..={}", (li - 2) / 2),
            ));
        }
        Ok(())
    };
    let (family, heights) = match shape {
        Shape::W { h0, s } => {
            if h0 < 0 || h0 > li || (h0 - li) % 2 != 0 {
                return Err(shape_err(
                    &shape,
                    format!("h0={h0} must lie in 0..=L with the parity of L={l}"),
                ));
            }
            let lo = (h0 - 1).max(0);
            let hi = (li + h0) / 2 - 1;
            if s < lo || s > hi {
                return Err(shape_err(&shape, format!("s={s} outside {lo}..={hi}")));
            }
            (Family::Ballot, w_heights(l, h0, s))
        }
        Shape::Y { s } => {
            even_range(s)?;
            let mut h = w_heights(l, 0, s);
            h[0] = 2;
            (Family::Ballot, h)
        }
        Shape::X { s } => {
            even_range(s)?;
            let mut h = w_heights(l, 0, s);
            h[0] = 2;
            h[l] = 2;
            (Family::AnchoredCross, h)
        }
        Shape::Z { s } => {
            if l % 2 != 1 {
                return Err(shape_err(&shape, format!("needs odd L, got {l}")));
            }
            if s < 1 || s > (li - 1) / 2 {
                return Err(shape_err(
                    &shape,
                    format!("s={s} outside 1..={}", (li - 1) / 2),
                ));
            }
            let mut h = w_heights(l, 1, s);
            h[0] = 3;
            (Family::Ballot, h)
        }
        Shape::Substrate(model) => {
            let h = (0..=l).map(|i| ((l - i) % 2) as i32).collect();
            (model.family(), h)
        }
        Shape::Zigzag(model) => {
            let family = model.family();
            let h = (0..=1)
                .map(|b| (0..=l).map(|i| b + (i % 2) as i32).collect::<Vec<_>>())
                .find(|h| check_family(h, family).is_ok())
                .ok_or_else(|| {
                    shape_err(&shape, format!("no alternating {family} path at L={l}"))
                })?;
            (family, h)
        }
    };
    HeightPath::new(family, heights)
}

/// Left reduction drops `h_0` of a Dyck path of length L+1; right reduction
/// drops `h_{L+1}` of a Ballot path of length L+1 and shifts by +1 if the
/// remaining minimum is 0, else by -1.
pub fn reduce(path: &HeightPath, side: Side) -> Result<HeightPath> {
    let h = path.heights();
    if path.l() < 2 {
        return Err(Error::Precondition(
            "reduction needs an input of length at least 2".into(),
        ));
    }
    match side {
        Side::Left => {
            path.require(Model::A)?;
            HeightPath::new(Family::Ballot, h[1..].to_vec())
        }
        Side::Right => {
            path.require(Model::B)?;
            let body = &h[..h.len() - 1];
            let shift = if body.iter().min() == Some(&0) { 1 } else { -1 };
            HeightPath::new(
                Family::AnchoredCross,
                body.iter().map(|x| x + shift).collect(),
            )
        }
    }
}

/// The weight-preserving partner configuration of models A and C.
pub fn mirror(path: &HeightPath, model: Model) -> Result<HeightPath> {
    if model == Model::B {
        return Err(Error::Precondition(
            "mirror is defined for models A and C".into(),
        ));
    }
    path.require(model)?;
    let h = path.heights();
    let l = path.l();
    let rev: Vec<i32> = h.iter().rev().copied().collect();
    if l.is_multiple_of(2) {
        return HeightPath::new(model.family(), rev);
    }
    let out = match model {
        Model::A => {
            let i0 = contacts_in(h, Model::A)
                .find(|c| c.level == 0)
                .map_or(l, |c| c.position);
            rev.iter()
                .enumerate()
                .map(|(i, x)| if i <= l - i0 { x + 1 } else { x - 1 })
                .collect()
        }
        _ => {
            let shift = if h.iter().min() == Some(&0) { 1 } else { -1 };
            rev.iter().map(|x| x + shift).collect()
        }
    };
    HeightPath::new(model.family(), out)
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

fn catalan(p: usize) -> u128 {
    binomial(2 * p as u128, p as u128) / (p as u128 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hp(f: Family, h: &[i32]) -> HeightPath {
        HeightPath::new(f, h.to_vec()).unwrap()
    }

    #[test]
    fn family_counts() {
        assert_eq!(enumerate_family(Family::AnchoredCross, 3).unwrap().len(), 8);
        assert_eq!(enumerate_family(Family::Ballot, 4).unwrap().len(), 6);
        for l in 1..=14 {
            for f in Family::ALL {
                assert_eq!(
                    enumerate_family(f, l).unwrap().len() as u128,
                    f.size(l),
                    "{f} {l}"
                );
            }
        }
    }

    #[test]
    fn dyck_four_in_step_word_order() {
        let v = enumerate_family(Family::Dyck, 4).unwrap();
        let hs: Vec<_> = v.iter().map(|p| p.heights().to_vec()).collect();
        assert_eq!(hs, vec![vec![0, 1, 2, 1, 0], vec![0, 1, 0, 1, 0]]);
    }

    #[test]
    fn zero_length_rejected() {
        assert!(enumerate_family(Family::Dyck, 0).is_err());
    }

    #[test]
    fn contact_examples() {
        let p = hp(Family::Ballot, &[1, 2, 1, 0, 1, 0]);
        assert!(contacts(&hp(Family::Ballot, &[2, 1, 0, 1, 0]), Model::A).is_err());
        let b: Vec<_> = contacts(&p, Model::B).unwrap();
        assert_eq!(
            b,
            vec![
                Contact {
                    position: 0,
                    level: 1
                },
                Contact {
                    position: 3,
                    level: 0
                }
            ]
        );
        let d = hp(Family::Dyck, &[1, 2, 1, 0, 1, 0]);
        assert_eq!(
            contacts(&d, Model::A).unwrap(),
            vec![Contact {
                position: 3,
                level: 0
            }]
        );
        assert!(contacts(&hp(Family::Dyck, &[0, 1, 2, 1, 0]), Model::A)
            .unwrap()
            .is_empty());
        let c = hp(Family::AnchoredCross, &[0, 1, 0, 1, 0]);
        let pos: Vec<_> = contacts(&c, Model::C)
            .unwrap()
            .iter()
            .map(|c| (c.position, c.level))
            .collect();
        assert_eq!(pos, vec![(0, 0), (2, 0), (4, 0)]);
    }

    #[test]
    fn interior_min_examples() {
        assert_eq!(
            interior_min(&hp(Family::Dyck, &[0, 1, 2, 1, 0]), Model::A).unwrap(),
            Some(1)
        );
        assert_eq!(
            interior_min(&hp(Family::Ballot, &[2, 1, 2, 1, 2, 1, 0]), Model::B).unwrap(),
            Some(1)
        );
        assert_eq!(
            interior_min(
                &hp(Family::AnchoredCross, &[1, 2, 3, 2, 1, 2, 1, 2]),
                Model::C
            )
            .unwrap(),
            Some(1)
        );
        assert_eq!(
            interior_min(&hp(Family::Dyck, &[1, 0]), Model::A).unwrap(),
            None
        );
    }

    #[test]
    fn shapes() {
        let w = build_shape(Shape::W { h0: 2, s: 1 }, 6).unwrap();
        assert_eq!(w.heights(), &[2, 1, 2, 1, 2, 1, 0]);
        let w = build_shape(Shape::W { h0: 0, s: 2 }, 6).unwrap();
        assert_eq!(w.heights(), &[0, 1, 2, 3, 2, 1, 0]);
        assert_eq!(
            build_shape(Shape::X { s: 1 }, 6).unwrap().heights(),
            &[2, 1, 2, 1, 2, 1, 2]
        );
        assert_eq!(
            build_shape(Shape::Y { s: 2 }, 6).unwrap().heights(),
            &[2, 1, 2, 3, 2, 1, 0]
        );
        assert_eq!(
            build_shape(Shape::Z { s: 2 }, 7).unwrap().heights(),
            &[3, 2, 3, 2, 3, 2, 1, 0]
        );
        assert!(build_shape(Shape::X { s: 1 }, 5).is_err());
        assert!(build_shape(Shape::X { s: 3 }, 6).is_err());
        assert!(build_shape(Shape::W { h0: 1, s: 0 }, 6).is_err());
        assert!(build_shape(Shape::W { h0: 2, s: 4 }, 6).is_err());
        assert_eq!(
            build_shape(Shape::Substrate(Model::C), 5)
                .unwrap()
                .heights(),
            &[1, 0, 1, 0, 1, 0]
        );
        assert_eq!(
            build_shape(Shape::Substrate(Model::A), 4)
                .unwrap()
                .heights(),
            &[0, 1, 0, 1, 0]
        );
        assert_eq!(
            build_shape(Shape::Zigzag(Model::C), 3).unwrap().heights(),
            &[1, 2, 1, 2]
        );
        assert!(build_shape(Shape::Zigzag(Model::B), 3).is_err());
    }

    #[test]
    fn reductions() {
        let l = reduce(&hp(Family::Dyck, &[0, 1, 2, 1, 0]), Side::Left).unwrap();
        assert_eq!(l.heights(), &[1, 2, 1, 0]);
        let r = reduce(&hp(Family::Ballot, &[1, 0, 1, 0, 1, 0]), Side::Right).unwrap();
        assert_eq!(r.heights(), &[2, 1, 2, 1, 2]);
        let r = reduce(&hp(Family::Ballot, &[1, 2, 1, 2, 1, 0]), Side::Right).unwrap();
        assert_eq!(r.heights(), &[0, 1, 0, 1, 0]);
    }

    #[test]
    fn mirrors() {
        let p = hp(Family::Dyck, &[0, 1, 2, 1, 0]);
        assert_eq!(mirror(&p, Model::A).unwrap(), p);
        let c = hp(Family::AnchoredCross, &[1, 2, 1, 2]);
        assert_eq!(mirror(&c, Model::C).unwrap().heights(), &[1, 0, 1, 0]);
        assert!(mirror(&hp(Family::Ballot, &[0, 1, 0]), Model::B).is_err());
    }

    #[test]
    fn odd_dyck_mirror_of_the_drawn_pair() {
        // L=15 pair drawn next to the odd-L mirror rule; i_0 = 9.
        let a = hp(
            Family::Dyck,
            &[1, 2, 1, 2, 3, 2, 3, 2, 1, 0, 1, 2, 1, 0, 1, 0],
        );
        let m = mirror(&a, Model::A).unwrap();
        assert_eq!(
            m.heights(),
            &[1, 2, 1, 2, 3, 2, 1, 0, 1, 2, 1, 2, 1, 0, 1, 0]
        );
        assert_eq!(mirror(&m, Model::A).unwrap(), a);
    }

    #[test]
    fn index_lookup_checks_left_height() {
        let paths = enumerate_family(Family::AnchoredCross, 4).unwrap();
        let idx = PathIndex::new(&paths);
        for (k, p) in paths.iter().enumerate() {
            assert_eq!(idx.get(p.heights()), Some(k));
        }
        assert_eq!(idx.get(&[2, 3, 2, 3, 2]), None);
    }

    #[test]
    fn json_round_trip() {
        let p = hp(Family::Ballot, &[2, 1, 0]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"L":2,"family":"Ballot","heights":[2,1,0]}"#);
        let q: HeightPath = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
        assert!(
            serde_json::from_str::<HeightPath>(r#"{"L":2,"family":"Dyck","heights":[2,1,0]}"#)
                .is_err()
        );
    }
}
