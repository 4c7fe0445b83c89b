use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::lattice::{f_closed, Window};
use super::poly::{g_first_column, Poly, PolyTable};

/// One relation checked at one lattice point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetryCheck {
    pub relation: String,
    pub point: (i64, i64),
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SymmetryReport {
    pub checks: Vec<SymmetryCheck>,
}

impl SymmetryReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SymmetryCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Checks recorded for one relation.
    pub fn relation<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a SymmetryCheck> + 'a {
        self.checks.iter().filter(move |c| c.relation == name)
    }

    fn push<T: ToString + PartialEq>(&mut self, relation: &str, point: (i64, i64), lhs: T, rhs: T) {
        self.checks.push(SymmetryCheck {
            relation: relation.to_string(),
            point,
            pass: lhs == rhs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
    }
}

fn fl(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn pow_rat(v: &BigRational, e: i64) -> BigRational {
    let p = (0..e.abs()).fold(BigRational::one(), |acc, _| acc * v);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

fn sign(e: i64) -> BigRational {
    if e.rem_euclid(2) == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

fn fmt_opt(v: &Option<BigRational>) -> String {
    v.as_ref()
        .map_or_else(|| "undefined".into(), |q| q.to_string())
}

/// `x^a (-1-x)^b` with both exponents non-negative.
fn reflect_factor(a: i64, b: i64) -> Poly {
    let xt = &Poly::constant(-1) - &Poly::x();
    &Poly::x().pow(a.max(0) as u32) * &xt.pow(b.max(0) as u32)
}

/// Runs every symmetry relation of the f lattice and of the `F`, `G`
/// polynomial families on the points of `window` inside each relation's
/// domain.
pub fn symmetry_suite(window: Window) -> SymmetryReport {
    let mut rep = SymmetryReport::default();
    let mut table = PolyTable::new();
    let points: Vec<(i64, i64)> = window.points().collect();

    for &(m, n) in &points {
        if m >= n && n >= 0 {
            let lhs = f_closed(m, n);
            let rhs = f_closed(n, m).map(|v| {
                v * sign(m * n + fl(4 * (m + n), 3)) * pow_rat(&rat(2), -fl(m - 2 * n, 3))
            });
            rep.push("mn-symm", (m, n), fmt_opt(&lhs), fmt_opt(&rhs));
        }
    }

    let (xs, ys) = (rat(3), rat(5));
    for &(m, n) in &points {
        if n < 0 || m < (2 * n - 1).max(1) {
            continue;
        }
        let Ok(p) = table.f(m, n) else { continue };
        let lhs = p.eval(&xs, &ys);
        let rhs = pow_rat(&ys, n) * p.eval(&(&xs / &ys), &BigRational::one());
        rep.push("rescale1", (m, n), lhs, rhs);
        let two = rat(2);
        rep.push(
            "rescale2",
            (m, n),
            p.eval(&two, &BigRational::zero()),
            pow_rat(&two, n) * p.eval(&BigRational::one(), &BigRational::zero()),
        );
        rep.push("homogeneous", (m, n), p.is_homogeneous(n as u32), true);
        if m == 2 * n && n >= 1 {
            if let Ok(q) = table.f(m, n - 1) {
                rep.push("rescale3", (m, n), p.clone(), &Poly::y() * &q);
            }
        }
        let one = BigRational::one();
        let zero = BigRational::zero();
        let f = f_closed(m, n);
        rep.push(
            "F(1,1)=f",
            (m, n),
            fmt_opt(&Some(p.eval(&one, &one))),
            fmt_opt(&f),
        );
        if let Ok(q) = table.f(m + 1, n) {
            rep.push(
                "F(m+1,n)(1,0)=f",
                (m, n),
                fmt_opt(&Some(q.eval(&one, &zero))),
                fmt_opt(&f),
            );
        }
        if let Ok(q) = table.f(m + 2, n + 1) {
            rep.push(
                "F(m+2,n+1)(0,1)=f",
                (m, n),
                fmt_opt(&Some(q.eval(&zero, &one))),
                fmt_opt(&f),
            );
        }
        let rhs = f_closed(-m, -n - 1).map(|v| v * pow_rat(&rat(2), n));
        rep.push(
            "F(2,3)",
            (m, n),
            fmt_opt(&Some(p.eval(&rat(2), &rat(3)))),
            fmt_opt(&rhs),
        );
    }

    for &(m, n) in &points {
        if m < 0 || n < 0 || (m == 0 && n == 0) {
            continue;
        }
        let Ok(g) = table.g(m, n) else { continue };
        let zero = BigRational::zero();
        let one = BigRational::one();
        let y = BigRational::one();
        let g0 = g.eval(&zero, &y);
        if m >= 1 {
            rep.push(
                "Gf(0)",
                (m, n),
                fmt_opt(&Some(g0.clone())),
                fmt_opt(&f_closed(m + n - 1, m - 1)),
            );
        }
        let rhs1 = f_closed(-n, m).map(|v| v * sign(fl(m + 1, 2)));
        rep.push(
            "Gf(1)",
            (m, n),
            fmt_opt(&Some(g.eval(&one, &y))),
            fmt_opt(&rhs1),
        );
        if m >= 1 {
            if let Ok(h) = table.g(m - 1, n + 1) {
                let rhs = sign(m + 1) * h.eval(&-one.clone(), &y);
                rep.push("reflect2", (m, n), g0, rhs);
            }
        }
        if n == 1 {
            rep.push("boundG2", (m, n), g.clone(), g_first_column(m));
        }
        if n >= 1 {
            let (mt, nt) = (n - 1, m + 1);
            if let Ok(h) = table.g(mt, nt) {
                let a = fl(m - n + 1, 3);
                let b = -fl(mt - nt + 1, 3);
                let ht = h.substitute_x(&Poly::constant(-1), &Poly::constant(-1));
                let lhs = &g * &reflect_factor(-a, -b);
                let rhs = &(&ht * &reflect_factor(a, b))
                    * &Poly::constant(if fl(m + n, 2) % 2 == 0 { 1 } else { -1 });
                rep.push("reflect", (m, n), lhs, rhs);
            }
        }
    }
    rep
}
