use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::make_primitive;
use crate::error::{Error, Result};

/// Primitive integer vector spanning the kernel of a square matrix whose
/// kernel is one-dimensional.
///
/// One-step fraction-free elimination with the first nonzero entry of each
/// column as pivot, then rational back-substitution with the free variable
/// set to 1.
pub fn nullspace_bareiss(mut a: Vec<Vec<BigInt>>) -> Result<Vec<BigInt>> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::Precondition("matrix must be square".into()));
    }
    let mut prev = BigInt::one();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for c in 0..n {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = &pivot_row[c];
        let inexact = bottom
            .par_iter_mut()
            .map(|row| {
                let lead = std::mem::take(&mut row[c]);
                let mut bad = false;
                for j in c + 1..n {
                    let num = piv * &row[j] - &lead * &pivot_row[j];
                    let (q, rem) = num.div_rem(&prev);
                    bad |= !rem.is_zero();
                    row[j] = q;
                }
                bad
            })
            .reduce(|| false, |x, y| x || y);
        if inexact {
            return Err(Error::Precondition(
                "fraction-free step was not exact".into(),
            ));
        }
        prev = piv.clone();
        pivots.push(c);
        r += 1;
    }
    let dim = n - pivots.len();
    if dim != 1 {
        return Err(Error::KernelDimension { dim });
    }
    let free = (0..n)
        .find(|c| !pivots.contains(c))
        .expect("one free column");
    let mut x = vec![BigRational::zero(); n];
    x[free] = BigRational::one();
    for (k, &pc) in pivots.iter().enumerate().rev() {
        let mut s = BigRational::zero();
        for j in pc + 1..n {
            if !a[k][j].is_zero() && !x[j].is_zero() {
                s += &x[j] * BigRational::from_integer(a[k][j].clone());
            }
        }
        x[pc] = -s / BigRational::from_integer(a[k][pc].clone());
    }
    let den = x.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let mut v: Vec<BigInt> = x.iter().map(|q| q.numer() * (&den / q.denom())).collect();
    make_primitive(&mut v);
    Ok(v)
}
