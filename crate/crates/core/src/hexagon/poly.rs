//! Polynomial solutions of the hexagon relation with integer coefficients:
//! the two-variable family `F_{m,n}(x, y)` and the one-variable family `G_{m,n}(x)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PolyFamily {
    F,
    G,
}

/// Sparse polynomial in `x` and `y`, keyed by `(deg_x, deg_y)`; zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Poly::monomial(c, 0, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, dx: u32, dy: u32) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((dx, dy), c);
        }
        Poly { terms }
    }

    pub fn x() -> Self {
        Poly::monomial(1, 1, 0)
    }

    pub fn y() -> Self {
        Poly::monomial(1, 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, dx: u32, dy: u32) -> BigInt {
        self.terms.get(&(dx, dy)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    fn add_term(&mut self, key: (u32, u32), c: &BigInt) {
        let e = self.terms.entry(key).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Leading term in lexicographic order (x before y).
    fn leading(&self) -> Option<((u32, u32), &BigInt)> {
        self.terms.iter().next_back().map(|(k, v)| (*k, v))
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::constant(1), |acc, _| &acc * self)
    }

    /// Exact quotient; fails unless the remainder vanishes and all quotient
    /// coefficients are integers.
    pub fn div_exact(&self, d: &Poly) -> std::result::Result<Poly, ()> {
        let Some(((ldx, ldy), lc)) = d.leading() else {
            return Err(());
        };
        let lc = lc.clone();
        let mut r = self.clone();
        let mut q = Poly::zero();
        while let Some(((rdx, rdy), rc)) = r.leading() {
            if rdx < ldx || rdy < ldy {
                return Err(());
            }
            let (c, rem) = rc.div_rem(&lc);
            if !rem.is_zero() {
                return Err(());
            }
            let t = Poly::monomial(c, rdx - ldx, rdy - ldy);
            r = &r - &(&t * d);
            q = &q + &t;
        }
        Ok(q)
    }

    pub fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        let mut s = BigRational::zero();
        for (&(dx, dy), c) in &self.terms {
            s += BigRational::from_integer(c.clone()) * pow_rat(x, dx) * pow_rat(y, dy);
        }
        s
    }

    /// Substitutes `x -> a + b x` in a polynomial free of `y`.
    pub fn substitute_x(&self, a: &Poly, b: &Poly) -> Poly {
        let lin = a + &(b * &Poly::x());
        let mut out = Poly::zero();
        for (&(dx, dy), c) in &self.terms {
            out = &out + (&(&lin.pow(dx) * &Poly::monomial(c.clone(), 0, dy)));
        }
        out
    }

    /// True when every term has total degree `d`.
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|(a, b)| a + b == d)
    }

    pub fn degree_y(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }
}

fn pow_rat(v: &BigRational, e: u32) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * v)
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(*k, c);
        }
        r
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (&(a, b), c) in &self.terms {
            for (&(d, e), f) in &o.terms {
                r.add_term((a + d, b + e), &(c * f));
            }
        }
        r
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, var: char, d: u32) -> fmt::Result {
    match d {
        0 => Ok(()),
        1 => write!(f, "{var}"),
        _ => write!(f, "{var}^{d}"),
    }
}

/// Canonical form, descending in `x` then `y`: `85x^2+42xy+6y^2`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (&(dx, dy), c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if neg {
                f.write_str("-")?;
            } else if k > 0 {
                f.write_str("+")?;
            }
            if !a.is_one() || (dx == 0 && dy == 0) {
                write!(f, "{a}")?;
            }
            write_monomial(f, 'x', dx)?;
            write_monomial(f, 'y', dy)?;
        }
        Ok(())
    }
}

fn parse_err(s: &str) -> Error {
    Error::Precondition(format!("cannot parse polynomial '{s}'"))
}

/// Accepts sums of terms like `-4x`, `3x^2y`, `26`, `y^4`, in any order.
impl FromStr for Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(parse_err(s));
        }
        let b = src.as_bytes();
        let mut i = 0;
        let mut out = Poly::zero();
        while i < b.len() {
            let mut neg = false;
            if b[i] == b'+' || b[i] == b'-' {
                neg = b[i] == b'-';
                i += 1;
            }
            let start = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let mut c: BigInt = if i > start {
                src[start..i].parse().map_err(|_| parse_err(s))?
            } else {
                BigInt::one()
            };
            let (mut dx, mut dy) = (0u32, 0u32);
            let mut any_var = false;
            while i < b.len() && (b[i] == b'x' || b[i] == b'y') {
                let var = b[i];
                any_var = true;
                i += 1;
                let mut d = 1u32;
                if i < b.len() && b[i] == b'^' {
                    i += 1;
                    let ds = i;
                    while i < b.len() && b[i].is_ascii_digit() {
                        i += 1;
                    }
                    d = src[ds..i].parse().map_err(|_| parse_err(s))?;
                }
                if var == b'x' {
                    dx += d;
                } else {
                    dy += d;
                }
            }
            if i == start && !any_var {
                return Err(parse_err(s));
            }
            if neg {
                c = -c;
            }
            out.add_term((dx, dy), &c);
        }
        Ok(out)
    }
}

/// A polynomial tagged with its family and lattice point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolynomial {
    pub family: PolyFamily,
    pub m: i64,
    pub n: i64,
    pub poly: Poly,
}

impl fmt::Display for LatticePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?}_{{{},{}}} = {}",
            self.family, self.m, self.n, self.poly
        )
    }
}

/// Memoized tables of `F` and `G`.
#[derive(Debug, Default)]
pub struct PolyTable {
    f: HashMap<(i64, i64), Poly>,
    g: HashMap<(i64, i64), Poly>,
}

fn floor3(a: i64) -> i64 {
    a.div_euclid(3)
}

fn signed_pow(sign_exp: i64) -> BigInt {
    if sign_exp.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `x^a (x+1)^b (-1)^s`.
fn power_product(a: i64, b: i64, s: i64) -> Poly {
    let x1 = &Poly::x() + &Poly::constant(1);
    let p = &Poly::x().pow(a as u32) * &x1.pow(b as u32);
    &p * &Poly::constant(signed_pow(s))
}

/// `G_{m,1}` in closed form.
pub fn g_first_column(m: i64) -> Poly {
    power_product(
        m.div_euclid(3),
        (m + 2).div_euclid(3),
        (m + 2).div_euclid(3) + (m + 1).div_euclid(2),
    )
}

impl PolyTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// `F_{m,n}` for `n >= 0`, `m >= max(2n-1, 1)`.
    pub fn f(&mut self, m: i64, n: i64) -> Result<Poly> {
        if n < 0 || m < (2 * n - 1).max(1) {
            return Err(Error::Precondition(format!(
                "F_{{{m},{n}}} needs n>=0 and m>=max(2n-1,1)"
            )));
        }
        if let Some(p) = self.f.get(&(m, n)) {
            return Ok(p.clone());
        }
        let p = if n == 0 {
            Poly::constant(1)
        } else if m == 2 * n - 1 {
            Poly::zero()
        } else if n == 1 {
            &Poly::y() + &Poly::monomial(m - 2, 1, 0)
        } else {
            let num = &(&self.f(m - 2, n - 1)? * &self.f(m, n - 1)?)
                + &(&self.f(m - 1, n - 2)? * &self.f(m - 1, n)?);
            let d = self.f(m - 2, n - 2)?;
            num.div_exact(&d).map_err(|_| Error::NonExactDivision {
                at: format!("F_{{{m},{n}}}"),
            })?
        };
        self.f.insert((m, n), p.clone());
        Ok(p)
    }

    /// `G_{m,n}` for `m, n >= 0`, `(m, n) != (0, 0)`.
    pub fn g(&mut self, m: i64, n: i64) -> Result<Poly> {
        if m < 0 || n < 0 || (m == 0 && n == 0) {
            return Err(Error::Precondition(format!(
                "G_{{{m},{n}}} needs m,n>=0, not both 0"
            )));
        }
        if let Some(p) = self.g.get(&(m, n)) {
            return Ok(p.clone());
        }
        let p = if m == 0 {
            Poly::constant(1)
        } else if m == 1 {
            &Poly::constant(1) + &Poly::monomial(n, 1, 0)
        } else if n == 0 {
            power_product(
                (m + 1).div_euclid(3),
                floor3(m),
                floor3(m) + m.div_euclid(2),
            )
        } else {
            let num = &(&self.g(m - 1, n + 1)? * &self.g(m - 1, n - 1)?)
                + &(&self.g(m, n - 1)? * &self.g(m - 2, n + 1)?);
            let d = self.g(m - 2, n)?;
            num.div_exact(&d).map_err(|_| Error::NonExactDivision {
                at: format!("G_{{{m},{n}}}"),
            })?
        };
        self.g.insert((m, n), p.clone());
        Ok(p)
    }
}

pub fn poly_f(m: i64, n: i64) -> Result<LatticePolynomial> {
    let poly = PolyTable::new().f(m, n)?;
    Ok(LatticePolynomial {
        family: PolyFamily::F,
        m,
        n,
        poly,
    })
}

pub fn poly_g(m: i64, n: i64) -> Result<LatticePolynomial> {
    let poly = PolyTable::new().g(m, n)?;
    Ok(LatticePolynomial {
        family: PolyFamily::G,
        m,
        n,
        poly,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let p: Poly = "85x^2+42xy+6y^2".parse().unwrap();
        assert_eq!(p.to_string(), "85x^2+42xy+6y^2");
        let g: Poly = "2+5x+3x^2".parse().unwrap();
        assert_eq!(g.to_string(), "3x^2+5x+2");
        let h: Poly = "-4x-9x^2-5x^3".parse().unwrap();
        assert_eq!(h.to_string(), "-5x^3-9x^2-4x");
        assert!("3z".parse::<Poly>().is_err());
    }

    #[test]
    fn exact_division() {
        let a: Poly = "x^2-y^2".parse().unwrap();
        let b: Poly = "x+y".parse().unwrap();
        assert_eq!(a.div_exact(&b).unwrap().to_string(), "x-y");
        let c: Poly = "x^2+1".parse().unwrap();
        assert!(c.div_exact(&b).is_err());
        assert!("2x"
            .parse::<Poly>()
            .unwrap()
            .div_exact(&"4".parse().unwrap())
            .is_err());
    }

    #[test]
    fn small_tables() {
        assert_eq!(poly_f(4, 2).unwrap().poly.to_string(), "2xy+y^2");
        assert_eq!(
            poly_f(9, 3).unwrap().poly.to_string(),
            "646x^3+816x^2y+350xy^2+50y^3"
        );
        assert_eq!(poly_g(2, 2).unwrap().poly, "2+5x+3x^2".parse().unwrap());
        assert_eq!(
            poly_g(3, 4).unwrap().poly,
            "26+137x+255x^2+170x^3".parse().unwrap()
        );
        assert!(poly_f(2, 2).is_err());
        assert!(poly_g(0, 0).is_err());
    }

    #[test]
    fn substitution() {
        let p: Poly = "x^2".parse().unwrap();
        let q = p.substitute_x(&Poly::constant(-1), &Poly::constant(-1));
        assert_eq!(q.to_string(), "x^2+2x+1");
    }
}
