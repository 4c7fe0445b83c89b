//! Alternating-sign-matrix counts by product formulas and their appearance as
//! special values of the `F` and `G` polynomials.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hexagon::PolyTable;
use crate::paths::Model;
use crate::stationary::stationary_state;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum AsmKind {
    /// All `n x n` matrices.
    A,
    /// Vertically symmetric.
    AV,
    /// Vertically and horizontally symmetric.
    AVH,
    /// Half-turn symmetric.
    AHT,
}

impl fmt::Display for AsmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AsmKind::A => "A",
            AsmKind::AV => "AV",
            AsmKind::AVH => "AVH",
            AsmKind::AHT => "AHT",
        })
    }
}

impl FromStr for AsmKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(AsmKind::A),
            "AV" => Ok(AsmKind::AV),
            "AVH" => Ok(AsmKind::AVH),
            "AHT" => Ok(AsmKind::AHT),
            _ => Err(Error::Precondition(format!("unknown ASM class '{s}'"))),
        }
    }
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * k)
}

fn binomial(n: u64, k: u64) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn integral(q: BigRational, what: impl FnOnce() -> String) -> Result<BigInt> {
    if q.is_integer() {
        Ok(q.to_integer())
    } else {
        Err(Error::NonIntegral(what()))
    }
}

fn total(n: u64) -> BigRational {
    (0..n).fold(BigRational::one(), |r, k| {
        r * BigRational::new(factorial(3 * k + 1), factorial(n + k))
    })
}

/// `AV_{2p+1}` from the signed double product.
fn vertical(p: u64) -> BigRational {
    let p = p as i64;
    let mut r = rat(-3).pow(p as i32 * p as i32);
    for i in 1..=p {
        for j in 1..=2 * p + 1 {
            r *= BigRational::new(
                BigInt::from(6 * i - 3 * j + 1),
                BigInt::from(2 * i - j + 2 * p + 1),
            );
        }
    }
    r
}

/// `AVH_{4p±1} / AV_{2p±1}`.
pub fn vh_over_v(p: u64) -> BigInt {
    let r = (0..p).fold(BigRational::one(), |r, i| {
        r * BigRational::new(
            BigInt::from(3 * i + 1) * factorial(6 * i) * factorial(2 * i),
            factorial(4 * i) * factorial(4 * i + 1),
        )
    });
    r.to_integer()
}

/// Successive ratio `AV_{2p+1} / AV_{2p-1}`, also `AVH_{4p+1} / AVH_{4p-1}`.
pub fn ratio_r(p: u64) -> BigRational {
    assert!(p >= 1, "ratio defined from p = 1");
    BigRational::new(
        BigInt::from(3 * p - 1) * binomial(6 * p - 3, 2 * p - 1),
        BigInt::from(4 * p - 1) * binomial(4 * p - 2, 2 * p - 1),
    )
}

/// `AV_{2p+1}` as the telescoping product of [`ratio_r`].
pub fn vertical_by_ratio(p: u64) -> Result<BigInt> {
    let q = (1..=p).fold(BigRational::one(), |r, q| r * ratio_r(q));
    integral(q, || format!("AV_{} by ratios", 2 * p + 1))
}

pub fn asm_number(kind: AsmKind, n: u64) -> Result<BigInt> {
    let odd = |n: u64| -> Result<()> {
        if n % 2 == 1 {
            Ok(())
        } else {
            Err(Error::Precondition(format!("{kind} needs odd n, got {n}")))
        }
    };
    let q = match kind {
        AsmKind::A => total(n),
        AsmKind::AV => {
            odd(n)?;
            vertical((n - 1) / 2)
        }
        AsmKind::AVH => {
            odd(n)?;
            if n % 4 == 3 {
                let p = (n + 1) / 4;
                vertical(p - 1) * BigRational::from_integer(vh_over_v(p))
            } else {
                let p = (n - 1) / 4;
                vertical(p) * BigRational::from_integer(vh_over_v(p))
            }
        }
        AsmKind::AHT => {
            let k = n / 2;
            if n.is_multiple_of(2) {
                let a = total(k);
                (0..k).fold(&a * &a, |r, j| {
                    r * BigRational::new(BigInt::from(3 * j + 2), BigInt::from(3 * j + 1))
                })
            } else {
                (1..=k).fold(BigRational::one(), |r, j| {
                    let t =
                        BigRational::new(factorial(3 * j) * factorial(j), factorial(2 * j).pow(2));
                    r * BigRational::new(BigInt::from(4), BigInt::from(3)) * &t * &t
                })
            }
        }
    };
    if !q.is_positive() {
        return Err(Error::NonIntegral(format!(
            "{kind}_{n} = {q} is not positive"
        )));
    }
    integral(q, || format!("{kind}_{n}"))
}

#[derive(Debug, Clone, Serialize)]
pub struct AsmRow {
    pub n: u64,
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "AV")]
    pub av: String,
    #[serde(rename = "AVH")]
    pub avh: String,
    #[serde(rename = "AHT")]
    pub aht: String,
}

/// Rows `1..=n_max`; the symmetric classes are empty for even `n`.
pub fn asm_table(n_max: u64) -> Result<Vec<AsmRow>> {
    (1..=n_max)
        .map(|n| {
            let opt = |k| -> Result<String> {
                if n % 2 == 1 {
                    Ok(asm_number(k, n)?.to_string())
                } else {
                    Ok(String::new())
                }
            };
            Ok(AsmRow {
                n,
                a: asm_number(AsmKind::A, n)?.to_string(),
                av: opt(AsmKind::AV)?,
                avh: opt(AsmKind::AVH)?,
                aht: asm_number(AsmKind::AHT, n)?.to_string(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub n: u64,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Left-hand values of one identity in increasing `n`.
    pub fn lhs_sequence(&self, identity: &str) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| c.identity == identity)
            .map(|c| c.lhs.clone())
            .collect()
    }

    fn push(&mut self, identity: &str, n: u64, lhs: BigRational, rhs: BigRational) {
        self.checks.push(IdentityCheck {
            identity: identity.into(),
            n,
            pass: lhs == rhs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
    }
}

/// Largest index accepted by [`asm_identity_suite`].
pub const MAX_IDENTITY_INDEX: u64 = 6;

fn num(kind: AsmKind, n: u64) -> Result<BigRational> {
    asm_number(kind, n).map(BigRational::from_integer)
}

/// Checks every ASM identity of the polynomial families for `n <= n_max`, the
/// two routes to `AV`, the successive ratios, and the identification of
/// stationary totals with symmetric ASM counts up to `l_max`.
pub fn asm_identity_suite(n_max: u64, l_max: usize) -> Result<IdentityReport> {
    use AsmKind::*;
    if n_max > MAX_IDENTITY_INDEX {
        return Err(Error::Precondition(format!(
            "n_max={n_max} exceeds {MAX_IDENTITY_INDEX}"
        )));
    }
    let mut rep = IdentityReport::default();
    let mut t = PolyTable::new();
    let (zero, one, two, three) = (rat(0), rat(1), rat(2), rat(3));
    let half = -BigRational::new(BigInt::one(), BigInt::from(2));
    let pow2 = |n: u64| BigRational::from_integer(BigInt::one() << n);
    let ni = |n: u64| n as i64;

    for n in 1..=n_max {
        let av = num(AV, 2 * n + 1)?;
        let k = ni(n);
        rep.push(
            "asm1:F(2n,n-1)(1,1)",
            n,
            t.f(2 * k, k - 1)?.eval(&one, &one),
            av.clone(),
        );
        rep.push(
            "asm1:F(2n,n)(1,1)",
            n,
            t.f(2 * k, k)?.eval(&one, &one),
            av.clone(),
        );
        rep.push(
            "asm1:G(n+1,n)(0)",
            n,
            t.g(k + 1, k)?.eval(&zero, &one),
            av.clone(),
        );
        rep.push("asm1:G(n,n+1)(0)", n, t.g(k, k + 1)?.eval(&zero, &one), av);

        let minus = num(AVH, 4 * n - 1)? / num(AV, 2 * n - 1)?;
        let plus = num(AVH, 4 * n + 1)? / num(AV, 2 * n + 1)?;
        let f = t.f(2 * k - 1, k - 1)?.eval(&one, &one);
        let g = t.g(k, k)?.eval(&zero, &one);
        rep.push("asm2:F(2n-1,n-1)(1,1)", n, f.clone(), minus.clone());
        rep.push("asm2:G(n,n)(0)", n, g, plus.clone());
        rep.push("asm2:anchors", n, minus, plus);

        let target = num(A, 2 * n - 1)? / num(AV, 2 * n - 1)?;
        rep.push(
            "asm5:F(2n,n-1)(2,3)",
            n,
            t.f(2 * k, k - 1)?.eval(&two, &three),
            target.clone(),
        );
        rep.push(
            "asm5:F(2n,n)(2,3)/3",
            n,
            t.f(2 * k, k)?.eval(&two, &three) / &three,
            target,
        );

        rep.push(
            "asm3:G(n,n)(1)",
            n,
            t.g(k, k)?.eval(&one, &one),
            num(AHT, 2 * n)?,
        );
        let avh = num(AVH, 2 * n + 1)?;
        rep.push(
            "G(n,n)(-1/2)",
            n,
            t.g(k, k)?.eval(&half, &one),
            &avh * &avh / pow2(n),
        );

        rep.push(
            "ratio:AV",
            n,
            num(AV, 2 * n + 1)? / num(AV, 2 * n - 1)?,
            ratio_r(n),
        );
        rep.push(
            "ratio:AVH",
            n,
            num(AVH, 4 * n + 1)? / num(AVH, 4 * n - 1)?,
            ratio_r(n),
        );
        rep.push(
            "AV:two-routes",
            n,
            num(AV, 2 * n + 1)?,
            BigRational::from_integer(vertical_by_ratio(n)?),
        );
    }

    for n in 0..=n_max {
        let k = ni(n);
        let ht = num(AHT, 4 * n)? / num(A, 2 * n)?;
        let lhs = t.f(2 * k + 1, k)?.eval(&two, &three);
        rep.push(
            "F(2n+1,n)(2,3):plus",
            n,
            lhs.clone(),
            &ht * num(AV, 2 * n + 1)? / num(AVH, 4 * n + 1)?,
        );
        if n >= 1 {
            rep.push(
                "F(2n+1,n)(2,3):minus",
                n,
                lhs,
                &ht * num(AV, 2 * n - 1)? / num(AVH, 4 * n - 1)?,
            );
        }
        rep.push(
            "G(n,n+1)(1)",
            n,
            t.g(k, k + 1)?.eval(&one, &one),
            num(AHT, 2 * n + 1)?,
        );
        rep.push(
            "G(n+1,n)(1)",
            n,
            t.g(k + 1, k)?.eval(&one, &one),
            num(A, n)? * num(A, n + 1)?,
        );
        let a1 = num(A, n + 1)?;
        rep.push(
            "asm4:G(n,n+2)(1)",
            n,
            t.g(k, k + 2)?.eval(&one, &one),
            &a1 * &a1,
        );
        rep.push(
            "G(n+1,n)(-1/2)",
            n,
            t.g(k + 1, k)?.eval(&half, &one),
            num(AVH, 2 * n + 1)? * num(AVH, 2 * n + 3)? / pow2(n),
        );
        if n >= 1 {
            let rhs = if n % 2 == 1 {
                BigRational::zero()
            } else {
                num(AV, n + 1)?.pow(4) / pow2(n)
            };
            rep.push("G(n,n+1)(-1/2)", n, t.g(k, k + 1)?.eval(&half, &one), rhs);
        }
        let p = |r: u64| [1, 3, 3, 1][(r % 4) as usize];
        let rhs = num(AV, 4 * ((n + 2) / 4) + 1)?.pow(p(n + 2))
            * num(AV, 4 * (n / 4) + 3)?.pow(p(n))
            / pow2(n + 1);
        rep.push(
            "asm6:G(n+2,n)(-1/2)",
            n,
            t.g(k + 2, k)?.eval(&half, &one),
            rhs,
        );
    }

    for l in 1..=l_max {
        if l % 2 == 0 && l <= Model::A.default_cap() {
            let s = stationary_state(Model::A, l)?.total();
            rep.push(
                "S_a(2p)=AV(2p+1)",
                l as u64,
                BigRational::from_integer(s),
                num(AV, l as u64 + 1)?,
            );
        }
        if l <= Model::B.default_cap() {
            let s = stationary_state(Model::B, l)?.total();
            rep.push(
                "S_b(L)=AVH(2L+3)",
                l as u64,
                BigRational::from_integer(s),
                num(AVH, 2 * l as u64 + 3)?,
            );
        }
    }
    Ok(rep)
}
