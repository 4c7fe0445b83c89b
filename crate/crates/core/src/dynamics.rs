//! Tile-drop rules and the intensity matrix of models A, B and C.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::paths::{enumerate_family, has_anchor, HeightPath, Model, PathIndex};

/// A model at a given size. The algebra parameters are fixed at the stochastic
/// point q + 1/q = 1, a = ā = b = 1, so only the boundary couplings vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModelSpec {
    pub model: Model,
    #[serde(rename = "L")]
    pub l: usize,
    pub c: u8,
    pub cbar: u8,
}

impl ModelSpec {
    pub fn new(model: Model, l: usize) -> Self {
        let (c, cbar) = model.couplings();
        ModelSpec { model, l, c, cbar }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DropKind {
    Absorb,
    Reflect,
    Avalanche,
    TotalAvalanche,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DropEvent {
    pub kind: DropKind,
    pub site: usize,
    /// Number of desorbed tiles `n_d`.
    pub desorbed: usize,
    /// Where an avalanche scan stopped: the first point at the drop height,
    /// or `-1` / `L+1` when it left the system.
    pub terminus: Option<isize>,
}

/// Applies a tile drop at site `i` in place. The site must be admissible.
pub(crate) fn drop_heights(h: &mut [i32], i: usize) -> DropEvent {
    let l = h.len() - 1;
    let hi = h[i];
    let lower_left = i > 0 && h[i - 1] < hi;
    let lower_right = i < l && h[i + 1] < hi;
    let higher_left = i == 0 || h[i - 1] > hi;
    let higher_right = i == l || h[i + 1] > hi;

    if higher_left && higher_right {
        h[i] += 2;
        if has_anchor(h) {
            return DropEvent {
                kind: DropKind::Absorb,
                site: i,
                desorbed: 0,
                terminus: None,
            };
        }
        h.iter_mut().for_each(|x| *x -= 2);
        return DropEvent {
            kind: DropKind::TotalAvalanche,
            site: i,
            desorbed: l,
            terminus: None,
        };
    }
    if (i == 0 || lower_left) && (i == l || lower_right) {
        return DropEvent {
            kind: DropKind::Reflect,
            site: i,
            desorbed: 0,
            terminus: None,
        };
    }
    // Bulk slope: peel toward increasing heights until the drop height recurs.
    let dir: isize = if h[i + 1] > hi { 1 } else { -1 };
    let mut j = i as isize + dir;
    while (0..=l as isize).contains(&j) && h[j as usize] > hi {
        h[j as usize] -= 2;
        j += dir;
    }
    DropEvent {
        kind: DropKind::Avalanche,
        site: i,
        desorbed: (j - i as isize).unsigned_abs() - 1,
        terminus: Some(j),
    }
}

pub fn drop_tile(path: &HeightPath, i: usize, model: Model) -> Result<(HeightPath, DropEvent)> {
    path.require(model)?;
    if !model.positions(path.l()).contains(&i) {
        return Err(Error::SiteOutOfRange {
            model,
            l: path.l(),
            site: i,
        });
    }
    let mut h = path.heights().to_vec();
    let ev = drop_heights(&mut h, i);
    Ok((HeightPath::new_unchecked(model.family(), h), ev))
}

fn check_cap(model: Model, l: usize, cap: usize) -> Result<()> {
    if l == 0 {
        return Err(Error::Precondition("L must be at least 1".into()));
    }
    if l > cap {
        return Err(Error::CapExceeded { model, l, cap });
    }
    Ok(())
}

/// Sparse generator of the process in canonical path order; column `w` holds
/// the rates out of configuration `w`.
#[derive(Debug, Clone)]
pub struct IntensityMatrix {
    pub spec: ModelSpec,
    pub paths: Vec<HeightPath>,
    columns: Vec<Vec<(usize, i64)>>,
}

impl IntensityMatrix {
    pub fn dimension(&self) -> usize {
        self.paths.len()
    }

    /// Nonzero entries of each column as `(row, value)`, rows ascending.
    pub fn columns(&self) -> &[Vec<(usize, i64)>] {
        &self.columns
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.columns[col]
            .iter()
            .find(|e| e.0 == row)
            .map_or(0, |e| e.1)
    }

    /// `(row, col, value)` triplets, column-major.
    pub fn triplets(&self) -> Vec<(usize, usize, i64)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r, c, v)))
            .collect()
    }

    pub fn column_sums_vanish(&self) -> bool {
        self.columns
            .iter()
            .all(|c| c.iter().map(|e| e.1).sum::<i64>() == 0)
    }

    /// The product `H v`.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.dimension()];
        for (c, col) in self.columns.iter().enumerate() {
            if v[c].is_zero() {
                continue;
            }
            for &(r, x) in col {
                out[r] += &v[c] * x;
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let n = self.dimension();
        let mut d = vec![vec![0i64; n]; n];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, x) in col {
                d[r][c] = x;
            }
        }
        d
    }
}

pub fn intensity_matrix(model: Model, l: usize) -> Result<IntensityMatrix> {
    intensity_matrix_capped(model, l, model.default_cap())
}

pub fn intensity_matrix_capped(model: Model, l: usize, cap: usize) -> Result<IntensityMatrix> {
    check_cap(model, l, cap)?;
    let paths = enumerate_family(model.family(), l)?;
    let index = PathIndex::new(&paths);
    let columns = paths
        .par_iter()
        .enumerate()
        .map(|(c, p)| {
            let mut col: Vec<(usize, i64)> = Vec::new();
            let mut out_rate = 0i64;
            for i in model.positions(l) {
                let mut h = p.heights().to_vec();
                drop_heights(&mut h, i);
                if h == p.heights() {
                    continue;
                }
                let r = index.get(&h).expect("drop_tile leaves the family");
                out_rate += 1;
                match col.iter_mut().find(|e| e.0 == r) {
                    Some(e) => e.1 -= 1,
                    None => col.push((r, -1)),
                }
            }
            if out_rate > 0 {
                col.push((c, out_rate));
            }
            col.sort_unstable();
            col
        })
        .collect();
    Ok(IntensityMatrix {
        spec: ModelSpec::new(model, l),
        paths,
        columns,
    })
}

/// Next-state table over (state, site) for fast simulation.
#[derive(Debug, Clone)]
pub struct TransitionTable {
    pub spec: ModelSpec,
    pub paths: Vec<HeightPath>,
    pub sites: usize,
    next: Vec<u32>,
    desorbed: Vec<u32>,
}

impl TransitionTable {
    pub fn new(model: Model, l: usize, cap: usize) -> Result<Self> {
        check_cap(model, l, cap)?;
        let paths = enumerate_family(model.family(), l)?;
        let index = PathIndex::new(&paths);
        let sites: Vec<usize> = model.positions(l).collect();
        let mut next = Vec::with_capacity(paths.len() * sites.len());
        let mut desorbed = Vec::with_capacity(paths.len() * sites.len());
        for p in &paths {
            for &i in &sites {
                let mut h = p.heights().to_vec();
                let ev = drop_heights(&mut h, i);
                next.push(index.get(&h).expect("drop_tile leaves the family") as u32);
                desorbed.push(ev.desorbed as u32);
            }
        }
        Ok(TransitionTable {
            spec: ModelSpec::new(model, l),
            paths,
            sites: sites.len(),
            next,
            desorbed,
        })
    }

    /// Successor state and desorbed tile count for a drop at the `k`-th admissible site.
    #[inline]
    pub fn step(&self, state: usize, k: usize) -> (usize, usize) {
        let e = state * self.sites + k;
        (self.next[e] as usize, self.desorbed[e] as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::Family;

    fn hp(f: Family, h: &[i32]) -> HeightPath {
        HeightPath::new(f, h.to_vec()).unwrap()
    }

    #[test]
    fn absorb_at_local_minimum() {
        let (p, ev) = drop_tile(&hp(Family::Dyck, &[0, 1, 0, 1, 0]), 2, Model::A).unwrap();
        assert_eq!(p.heights(), &[0, 1, 2, 1, 0]);
        assert_eq!(ev.kind, DropKind::Absorb);
    }

    #[test]
    fn avalanche_to_the_right() {
        let (p, ev) = drop_tile(&hp(Family::Dyck, &[0, 1, 2, 3, 2, 1, 0]), 1, Model::A).unwrap();
        assert_eq!(p.heights(), &[0, 1, 0, 1, 0, 1, 0]);
        assert_eq!(
            (ev.kind, ev.desorbed, ev.terminus),
            (DropKind::Avalanche, 3, Some(5))
        );
    }

    #[test]
    fn avalanche_leaving_the_system() {
        let (p, ev) = drop_tile(
            &hp(Family::AnchoredCross, &[0, 1, 2, 3, 4, 3, 4]),
            1,
            Model::C,
        )
        .unwrap();
        assert_eq!(p.heights(), &[0, 1, 0, 1, 2, 1, 2]);
        assert_eq!(
            (ev.kind, ev.desorbed, ev.terminus),
            (DropKind::Avalanche, 5, Some(7))
        );
    }

    #[test]
    fn total_avalanche() {
        let (p, ev) =
            drop_tile(&hp(Family::AnchoredCross, &[3, 2, 1, 2, 3, 4]), 2, Model::C).unwrap();
        assert_eq!(p.heights(), &[1, 0, 1, 0, 1, 2]);
        assert_eq!((ev.kind, ev.desorbed), (DropKind::TotalAvalanche, 5));
    }

    #[test]
    fn reflect_at_maximum_and_boundary() {
        let p = hp(Family::Dyck, &[0, 1, 0]);
        let (q, ev) = drop_tile(&p, 1, Model::A).unwrap();
        assert_eq!((q, ev.kind), (p, DropKind::Reflect));
        let b = hp(Family::Ballot, &[1, 0]);
        assert_eq!(
            drop_tile(&b, 0, Model::B).unwrap().1.kind,
            DropKind::Reflect
        );
        let b = hp(Family::Ballot, &[0, 1, 0]);
        assert_eq!(drop_tile(&b, 0, Model::B).unwrap().0.heights(), &[2, 1, 0]);
    }

    #[test]
    fn bad_sites_and_families() {
        let p = hp(Family::Dyck, &[0, 1, 0]);
        assert!(matches!(
            drop_tile(&p, 0, Model::A),
            Err(Error::SiteOutOfRange { .. })
        ));
        let q = hp(Family::AnchoredCross, &[2, 1, 2]);
        assert!(matches!(
            drop_tile(&q, 1, Model::A),
            Err(Error::FamilyMismatch { .. })
        ));
    }

    #[test]
    fn small_matrices() {
        let h = intensity_matrix(Model::A, 4).unwrap();
        // Pyramid first in canonical order.
        assert_eq!(h.paths[0].heights(), &[0, 1, 2, 1, 0]);
        assert_eq!(h.to_dense(), vec![vec![2, -1], vec![-2, 1]]);
        assert_eq!(
            intensity_matrix(Model::A, 2).unwrap().to_dense(),
            vec![vec![0]]
        );
        for l in 1..=7 {
            for m in Model::ALL {
                assert!(intensity_matrix(m, l).unwrap().column_sums_vanish());
            }
        }
    }

    #[test]
    fn caps() {
        assert!(matches!(
            intensity_matrix(Model::C, 13),
            Err(Error::CapExceeded { .. })
        ));
        assert!(intensity_matrix_capped(Model::C, 3, 3).is_ok());
    }
}
