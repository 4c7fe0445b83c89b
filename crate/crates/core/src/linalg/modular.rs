use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::{apply_sparse, make_primitive};
use crate::error::{Error, Result};

/// Consecutive primes of rank below n-1 after which the kernel is declared
/// higher-dimensional.
const RANK_DEFICIENT_PRIMES: usize = 4;
const MAX_PRIMES: usize = 4096;

/// The first `count` primes below 2^31, descending.
pub fn prime_sequence(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut c: u64 = (1 << 31) - 1;
    while out.len() < count && c > 2 {
        if is_prime(c) {
            out.push(c);
        }
        c -= 2;
    }
    out
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Row-reduces the matrix mod `p` and returns its rank and, when the rank is
/// `n-1`, a kernel vector scaled so that its entry at `norm` is 1 (or the
/// free column if `norm` is `None`). The second component is the index used.
fn kernel_mod_p(
    n: usize,
    columns: &[Vec<(usize, i64)>],
    p: u64,
    norm: Option<usize>,
) -> (usize, Option<(usize, Vec<u64>)>) {
    let mut rows = vec![vec![0u64; n]; n];
    for (c, col) in columns.iter().enumerate() {
        for &(r, v) in col {
            rows[r][c] = v.rem_euclid(p as i64) as u64;
        }
    }
    let mut pivots: Vec<usize> = Vec::with_capacity(n);
    let mut r = 0usize;
    for c in 0..n {
        if r == n {
            break;
        }
        let Some(k) = (r..n).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut().skip(c) {
            *x = *x * inv % p;
        }
        let (top, rest) = rows.split_at_mut(r);
        let (pivot, bottom) = rest.split_at_mut(1);
        let pivot_row = &pivot[0];
        let support: Vec<usize> = (c + 1..n).filter(|&j| pivot_row[j] != 0).collect();
        let eliminate = |row: &mut Vec<u64>| {
            let f = row[c];
            if f == 0 {
                return;
            }
            let g = p - f;
            row[c] = 0;
            for &j in &support {
                row[j] = (row[j] + g * pivot_row[j]) % p;
            }
        };
        // Clear the column above as well so the result is in reduced form.
        top.par_iter_mut().for_each(eliminate);
        bottom.par_iter_mut().for_each(eliminate);
        pivots.push(c);
        r += 1;
    }
    let rank = pivots.len();
    if rank + 1 != n {
        return (rank, None);
    }
    let free = (0..n)
        .find(|c| !pivots.contains(c))
        .expect("one free column");
    let mut x = vec![0u64; n];
    x[free] = 1;
    for (k, &pc) in pivots.iter().enumerate() {
        x[pc] = (p - rows[k][free]) % p;
    }
    let idx = norm.unwrap_or(free);
    if x[idx] == 0 {
        return (rank, None);
    }
    let s = inv_mod(x[idx], p);
    x.iter_mut().for_each(|v| *v = *v * s % p);
    (rank, Some((idx, x)))
}

/// Combines `a mod m` with `b mod p` into the residue mod `m*p`.
pub fn crt_combine(a: &BigInt, m: &BigInt, b: u64, p: u64) -> BigInt {
    let am = (a % BigInt::from(p))
        .to_u64_digits()
        .1
        .first()
        .copied()
        .unwrap_or(0);
    let mm = (m % BigInt::from(p))
        .to_u64_digits()
        .1
        .first()
        .copied()
        .unwrap_or(0);
    let t = ((b + p - am % p) % p) * inv_mod(mm, p) % p;
    a + m * BigInt::from(t)
}

/// Wang rational reconstruction of `a mod m` with numerator and denominator
/// bounded by sqrt(m/2).
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    if t1.sign() == Sign::Minus {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}

fn reconstruct_all(res: &[BigInt], m: &BigInt) -> Option<Vec<BigInt>> {
    let pairs: Option<Vec<(BigInt, BigInt)>> =
        res.iter().map(|a| rational_reconstruct(a, m)).collect();
    let pairs = pairs?;
    let den = pairs.iter().fold(BigInt::one(), |l, (_, d)| l.lcm(d));
    let mut v: Vec<BigInt> = pairs.into_iter().map(|(n, d)| n * (&den / d)).collect();
    make_primitive(&mut v);
    Some(v)
}

/// Kernel vector through elimination modulo a sequence of 31-bit primes.
///
/// Residues are combined by CRT and lifted by rational reconstruction after
/// each prime; the candidate is returned only once `M v = 0` holds exactly.
pub fn nullspace_modular(n: usize, columns: &[Vec<(usize, i64)>]) -> Result<Vec<BigInt>> {
    if n == 0 {
        return Err(Error::KernelDimension { dim: 0 });
    }
    let primes = prime_sequence(MAX_PRIMES);
    let mut norm: Option<usize> = None;
    let mut residues: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut deficient = 0usize;
    let mut min_rank = n;
    for &p in &primes {
        let (rank, vec) = kernel_mod_p(n, columns, p, norm);
        if rank == n {
            // Rank mod p never exceeds the rank over the rationals.
            return Err(Error::KernelDimension { dim: 0 });
        }
        let Some((idx, x)) = vec else {
            if rank + 1 < n {
                deficient += 1;
                min_rank = min_rank.min(rank);
                if deficient >= RANK_DEFICIENT_PRIMES && residues.is_empty() {
                    return Err(Error::KernelDimension { dim: n - min_rank });
                }
            }
            continue;
        };
        norm = Some(idx);
        if residues.is_empty() {
            residues = x.iter().map(|&v| BigInt::from(v)).collect();
        } else {
            residues = residues
                .par_iter()
                .zip(x.par_iter())
                .map(|(a, &b)| crt_combine(a, &modulus, b, p))
                .collect();
        }
        modulus *= BigInt::from(p);
        if let Some(v) = reconstruct_all(&residues, &modulus) {
            if apply_sparse(n, columns, &v).iter().all(Zero::is_zero) {
                return Ok(v);
            }
        }
    }
    Err(Error::NoConvergence {
        primes: primes.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_descending_31_bit() {
        let p = prime_sequence(3);
        assert_eq!(p, vec![2147483647, 2147483629, 2147483587]);
    }

    #[test]
    fn reconstruct_small_fraction() {
        let m = BigInt::from(2147483647u64) * BigInt::from(2147483629u64);
        let a = (BigInt::from(-7) * modinv(&BigInt::from(3), &m)).mod_floor(&m);
        assert_eq!(
            rational_reconstruct(&a, &m),
            Some((BigInt::from(-7), BigInt::from(3)))
        );
    }

    fn modinv(a: &BigInt, m: &BigInt) -> BigInt {
        let e = a.extended_gcd(m);
        e.x.mod_floor(m)
    }

    #[test]
    fn crt_matches_direct_residue() {
        let x = BigInt::from(123456789012345u64);
        let (p, q) = (2147483647u64, 2147483629u64);
        let a = &x % BigInt::from(p);
        let b = (&x % BigInt::from(q)).to_u64_digits().1[0];
        let c = crt_combine(&a, &BigInt::from(p), b, q);
        assert_eq!(c, x);
    }
}
