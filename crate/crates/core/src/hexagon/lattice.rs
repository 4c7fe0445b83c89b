//! Numeric solutions `f_{m,n}` of the bilinear hexagon relation
//! `f_{m-1,n} f_{m+1,n} + f_{m,n-1} f_{m,n+1} = f_{m-1,n-1} f_{m+1,n+1}`.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn pow2(e: i64) -> BigRational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

fn sign(e: i64) -> BigRational {
    if e.rem_euclid(2) == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// `a!/b!` read as a Pochhammer ratio. `None` when the denominator product
/// passes through zero.
fn factorial_ratio(a: i64, b: i64) -> Option<BigRational> {
    let prod = |lo: i64, hi: i64| (lo..=hi).fold(BigInt::one(), |acc, j| acc * j);
    if a >= b {
        Some(BigRational::from_integer(prod(b + 1, a)))
    } else {
        let d = prod(a + 1, b);
        (!d.is_zero()).then(|| BigRational::new(BigInt::one(), d))
    }
}

/// `a!!/b!!` for odd `a`, `b`; the factors are odd so never vanish.
fn double_factorial_ratio(a: i64, b: i64) -> BigRational {
    debug_assert!(a.rem_euclid(2) == 1 && b.rem_euclid(2) == 1);
    let prod = |lo: i64, hi: i64| (lo..=hi).step_by(2).fold(BigInt::one(), |acc, j| acc * j);
    if a >= b {
        BigRational::from_integer(prod(b + 2, a))
    } else {
        BigRational::new(BigInt::one(), prod(a + 2, b))
    }
}

fn double_factorial(k: i64) -> BigInt {
    (1..=k)
        .rev()
        .step_by(2)
        .fold(BigInt::one(), |acc, j| acc * j)
}

/// The closed-form product for `f_{m,n}`, without the special-line shortcuts.
/// `None` where a Pochhammer denominator vanishes.
pub fn f_product(m: i64, n: i64) -> Option<BigRational> {
    if n >= 0 {
        let mut r = pow2(-(n * n).div_euclid(4));
        for p in 1..=n {
            r /= BigRational::from_integer(double_factorial(2 * p - 1));
        }
        for p in 0..=(n - 1).div_euclid(3) {
            r *= factorial_ratio(m - (n + p).div_euclid(2) - p - 1, m - 2 * n + 3 * p)?;
        }
        for p in 0..=(n - 2).div_euclid(3) {
            r *= double_factorial_ratio(
                2 * m + 2 * n - 6 * p - 3,
                2 * m - 2 * (n + p).div_euclid(2) + 4 * p + 1,
            );
        }
        Some(r)
    } else {
        let (m, n) = (-m, -n);
        let mut r = pow2(-(n * n).div_euclid(4));
        for p in 1..n {
            r /= BigRational::from_integer(double_factorial(2 * p - 1));
        }
        for p in 0..n.div_euclid(3) {
            r *= factorial_ratio(m - (n + p).div_euclid(2) - p - 2, m - 2 * n + 3 * p + 2)?;
        }
        for p in 0..=(n - 2).div_euclid(3) {
            r *= double_factorial_ratio(
                2 * m + 2 * n - 6 * p - 5,
                2 * m - 2 * (n + p).div_euclid(2) + 4 * p - 1,
            );
        }
        Some(r)
    }
}

/// Values fixed along the rows `n = 0, -1`, the columns `m = 0, -1`, and the
/// four zero lines.
pub fn special_line_value(m: i64, n: i64) -> Option<BigRational> {
    if n == 0 || n == -1 {
        return Some(BigRational::one());
    }
    if m == 0 {
        return Some(if n > 0 {
            sign((4 * n).div_euclid(3)) * pow2(n.div_euclid(3))
        } else {
            let k = -n;
            let e = (2 * k).div_euclid(3);
            sign(e) * pow2(-e)
        });
    }
    if m == -1 {
        return Some(if n > 0 {
            let e = (n + 2).div_euclid(3);
            sign(e) * pow2(e)
        } else {
            let k = -n;
            sign((2 - k).div_euclid(3)) * pow2(-(2 * k - 1).div_euclid(3))
        });
    }
    let zero_line = (n > 0 && m == 2 * n - 1)
        || (m > 0 && n == 2 * m - 1)
        || (n < -2 && m == 2 * n + 3)
        || (m < -2 && n == 2 * m + 3);
    zero_line.then(BigRational::zero)
}

/// The wedges bounded by the zero lines, where every value vanishes.
pub fn in_zero_sector(m: i64, n: i64) -> bool {
    (m > 0 && n > 0 && m < 2 * n && n < 2 * m)
        || (m < 0 && n < 0 && m >= 2 * n + 3 && n >= 2 * m + 3)
}

/// `f_{m,n}` on the whole lattice: line data and zero sectors first, the
/// product formula elsewhere.
pub fn f_closed(m: i64, n: i64) -> Option<BigRational> {
    if let Some(v) = special_line_value(m, n) {
        return Some(v);
    }
    if in_zero_sector(m, n) {
        return Some(BigRational::zero());
    }
    f_product(m, n)
}

/// `a a' + b b' = c c'`, values given in the order `[a, a', b, b', c, c']`.
pub fn hexagon_holds(v: &[BigRational; 6]) -> bool {
    &v[0] * &v[1] + &v[2] * &v[3] == &v[4] * &v[5]
}

/// The six values around the center `(m, n)` in the order used by
/// [`hexagon_holds`], if all are available.
pub fn hexagon_around<F>(m: i64, n: i64, mut get: F) -> Option<[BigRational; 6]>
where
    F: FnMut(i64, i64) -> Option<BigRational>,
{
    Some([
        get(m - 1, n)?,
        get(m + 1, n)?,
        get(m, n - 1)?,
        get(m, n + 1)?,
        get(m - 1, n - 1)?,
        get(m + 1, n + 1)?,
    ])
}

/// Inclusive rectangle of lattice points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub m_lo: i64,
    pub m_hi: i64,
    pub n_lo: i64,
    pub n_hi: i64,
}

impl Window {
    pub fn new(m_lo: i64, m_hi: i64, n_lo: i64, n_hi: i64) -> Result<Self> {
        if m_lo > m_hi || n_lo > n_hi {
            return Err(Error::Precondition(format!(
                "empty window m={m_lo}:{m_hi} n={n_lo}:{n_hi}"
            )));
        }
        Ok(Window {
            m_lo,
            m_hi,
            n_lo,
            n_hi,
        })
    }

    pub fn contains(&self, m: i64, n: i64) -> bool {
        (self.m_lo..=self.m_hi).contains(&m) && (self.n_lo..=self.n_hi).contains(&n)
    }

    pub fn points(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (self.n_lo..=self.n_hi).flat_map(move |n| (self.m_lo..=self.m_hi).map(move |m| (m, n)))
    }

    fn width(&self) -> usize {
        (self.m_hi - self.m_lo + 1) as usize
    }

    fn offset(&self, m: i64, n: i64) -> usize {
        (n - self.n_lo) as usize * self.width() + (m - self.m_lo) as usize
    }

    fn grow(&self, k: i64) -> Window {
        Window {
            m_lo: self.m_lo.min(-1) - k,
            m_hi: self.m_hi.max(0) + k,
            n_lo: self.n_lo.min(-1) - k,
            n_hi: self.n_hi.max(0) + k,
        }
    }
}

/// Exact values on a window; `None` marks points where the closed form is undefined.
#[derive(Debug, Clone, PartialEq)]
pub struct HexLattice {
    pub window: Window,
    values: Vec<Option<BigRational>>,
}

impl HexLattice {
    pub fn from_closed(window: Window) -> Self {
        let values = window.points().map(|(m, n)| f_closed(m, n)).collect();
        HexLattice { window, values }
    }

    pub fn get(&self, m: i64, n: i64) -> Option<&BigRational> {
        if !self.window.contains(m, n) {
            return None;
        }
        self.values[self.window.offset(m, n)].as_ref()
    }

    /// Interior centers whose six neighbours are all defined.
    pub fn hexagon_centers(&self) -> Vec<(i64, i64)> {
        let w = &self.window;
        (w.n_lo + 1..w.n_hi)
            .flat_map(|n| (w.m_lo + 1..w.m_hi).map(move |m| (m, n)))
            .filter(|&(m, n)| hexagon_around(m, n, |a, b| self.get(a, b).cloned()).is_some())
            .collect()
    }

    /// Centers where the relation fails.
    pub fn hexagon_violations(&self) -> Vec<(i64, i64)> {
        self.hexagon_centers()
            .into_iter()
            .filter(|&(m, n)| {
                let v = hexagon_around(m, n, |a, b| self.get(a, b).cloned()).expect("defined");
                !hexagon_holds(&v)
            })
            .collect()
    }

    /// Grid with one row per `n` (descending) and one column per `m`;
    /// rationals as `p/q`, integers as `p`, undefined points empty.
    pub fn to_csv(&self) -> String {
        let w = &self.window;
        let mut out = String::from("n\\m");
        for m in w.m_lo..=w.m_hi {
            let _ = write!(out, ",{m}");
        }
        out.push('\n');
        for n in (w.n_lo..=w.n_hi).rev() {
            let _ = write!(out, "{n}");
            for m in w.m_lo..=w.m_hi {
                out.push(',');
                if let Some(v) = self.get(m, n) {
                    let _ = write!(out, "{v}");
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Initial data for [`f_reconstruct`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Seed {
    /// Rows `n = 0, -1` equal to 1 for `m >= 0` and zeros on `m = 2n-1`;
    /// reaches the sector `n >= 1, m >= 2n`.
    Boundary,
    /// All special-line data and both zero sectors; reaches the whole plane.
    Lines,
}

fn boundary_value(m: i64, n: i64) -> Option<BigRational> {
    if (n == 0 || n == -1) && m >= 0 {
        return Some(BigRational::one());
    }
    if n > 0 && m == 2 * n - 1 {
        return Some(BigRational::zero());
    }
    if in_zero_sector(m, n) {
        return Some(BigRational::zero());
    }
    None
}

/// Rebuilds `f_{m,n}` on `window` from seed data alone, dividing through the
/// hexagon relation. Values never come from the closed form.
pub fn f_reconstruct(window: Window, seed: Seed) -> Result<HexLattice> {
    match seed {
        Seed::Boundary => reconstruct_rows(window),
        Seed::Lines => reconstruct_propagate(window),
    }
}

/// Row-by-row solve for the upper apex
/// `f_{m,n} = (f_{m-2,n-1} f_{m,n-1} + f_{m-1,n-2} f_{m-1,n}) / f_{m-2,n-2}`.
fn reconstruct_rows(window: Window) -> Result<HexLattice> {
    let mut known: HashMap<(i64, i64), BigRational> = HashMap::new();
    let m_hi = window.m_hi.max(2);
    let val = |known: &HashMap<(i64, i64), BigRational>, m: i64, n: i64| -> BigRational {
        known
            .get(&(m, n))
            .cloned()
            .or_else(|| boundary_value(m, n))
            .expect("dependency computed earlier in the schedule")
    };
    for n in 1..=window.n_hi {
        for m in 2 * n..=m_hi {
            let d = val(&known, m - 2, n - 2);
            if d.is_zero() {
                return Err(Error::ZeroPivot { m: m - 2, n: n - 2 });
            }
            let num = val(&known, m - 2, n - 1) * val(&known, m, n - 1)
                + val(&known, m - 1, n - 2) * val(&known, m - 1, n);
            known.insert((m, n), num / d);
        }
    }
    let mut values = Vec::new();
    for (m, n) in window.points() {
        let v = boundary_value(m, n).or_else(|| known.get(&(m, n)).cloned());
        match v {
            Some(v) => values.push(Some(v)),
            None => {
                return Err(Error::Precondition(format!(
                    "({m},{n}) is outside the sector reachable from the boundary seed"
                )))
            }
        }
    }
    Ok(HexLattice { window, values })
}

fn seed_lines(m: i64, n: i64) -> Option<BigRational> {
    special_line_value(m, n).or_else(|| in_zero_sector(m, n).then(BigRational::zero))
}

/// Fills a box around the window by repeatedly solving every hexagon with a
/// single unknown vertex, sweeping centers row-major until nothing changes.
fn propagate(bx: Window) -> (Vec<Option<BigRational>>, Option<(i64, i64)>) {
    let mut v: Vec<Option<BigRational>> = bx.points().map(|(m, n)| seed_lines(m, n)).collect();
    loop {
        let mut changed = false;
        let mut blocked = None;
        for n in bx.n_lo + 1..bx.n_hi {
            for m in bx.m_lo + 1..bx.m_hi {
                let pairs = [
                    ((m - 1, n), (m + 1, n), 1),
                    ((m, n - 1), (m, n + 1), 1),
                    ((m - 1, n - 1), (m + 1, n + 1), -1),
                ];
                let mut unknown = None;
                let mut count = 0;
                for (a, b, _) in pairs {
                    for p in [a, b] {
                        if v[bx.offset(p.0, p.1)].is_none() {
                            count += 1;
                            unknown = Some(p);
                        }
                    }
                }
                if count != 1 {
                    continue;
                }
                let u = unknown.expect("one unknown");
                let mut rest = BigRational::zero();
                let mut partner = None;
                let mut su = 1;
                for (a, b, s) in pairs {
                    if u == a || u == b {
                        partner = Some(if u == a { b } else { a });
                        su = s;
                    } else {
                        let x = v[bx.offset(a.0, a.1)].as_ref().expect("known");
                        let y = v[bx.offset(b.0, b.1)].as_ref().expect("known");
                        rest += rat(s) * x * y;
                    }
                }
                let p = partner.expect("unknown has a partner");
                let pv = v[bx.offset(p.0, p.1)].clone().expect("known");
                if pv.is_zero() {
                    blocked.get_or_insert(p);
                    continue;
                }
                v[bx.offset(u.0, u.1)] = Some(-rest / (rat(su) * pv));
                changed = true;
            }
        }
        if !changed {
            return (v, blocked);
        }
    }
}

fn reconstruct_propagate(window: Window) -> Result<HexLattice> {
    let mut last_blocked = None;
    for k in [4, 8, 16, 32] {
        let bx = window.grow(k);
        let (v, blocked) = propagate(bx);
        let values: Vec<Option<BigRational>> = window
            .points()
            .map(|(m, n)| v[bx.offset(m, n)].clone())
            .collect();
        if values.iter().all(Option::is_some) {
            return Ok(HexLattice { window, values });
        }
        last_blocked = blocked;
    }
    match last_blocked {
        Some((m, n)) => Err(Error::ZeroPivot { m, n }),
        None => Err(Error::Precondition(
            "window not reachable from the line data".into(),
        )),
    }
}

/// `2^{n-1} f_{-m,-n}` for `n >= 1`, which the negative half-plane formula
/// makes integral.
pub fn scaled_negative(m: i64, n: i64) -> Option<BigRational> {
    Some(f_closed(-m, -n)? * pow2(n - 1))
}
