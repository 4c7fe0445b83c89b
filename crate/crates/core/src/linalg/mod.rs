//! Exact one-dimensional null spaces of integer matrices.
//!
//! Two independent routes: fraction-free (Bareiss) elimination over the
//! integers, and elimination modulo word-sized primes followed by Chinese
//! remaindering and rational reconstruction. Both return the primitive integer
//! kernel vector; the modular route only returns after an exact check.

mod bareiss;
mod modular;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bareiss::nullspace_bareiss;
pub use modular::{crt_combine, nullspace_modular, prime_sequence, rational_reconstruct};

/// Largest dimension for which [`KernelMethod::Auto`] picks Bareiss elimination.
pub const AUTO_BAREISS_MAX_DIM: usize = 160;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum KernelMethod {
    #[default]
    Auto,
    Bareiss,
    Modular,
}

impl KernelMethod {
    pub fn resolve(self, n: usize) -> KernelMethod {
        match self {
            KernelMethod::Auto if n <= AUTO_BAREISS_MAX_DIM => KernelMethod::Bareiss,
            KernelMethod::Auto => KernelMethod::Modular,
            m => m,
        }
    }
}

impl fmt::Display for KernelMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KernelMethod::Auto => "auto",
            KernelMethod::Bareiss => "bareiss",
            KernelMethod::Modular => "modular",
        })
    }
}

impl FromStr for KernelMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "auto" => Ok(KernelMethod::Auto),
            "bareiss" => Ok(KernelMethod::Bareiss),
            "modular" => Ok(KernelMethod::Modular),
            _ => Err(Error::Precondition(format!("unknown kernel method '{s}'"))),
        }
    }
}

/// Square matrix given by sparse columns of `(row, value)` pairs.
pub fn kernel_vector(
    n: usize,
    columns: &[Vec<(usize, i64)>],
    method: KernelMethod,
) -> Result<Vec<BigInt>> {
    if columns.len() != n {
        return Err(Error::Dimension(columns.len(), n));
    }
    match method.resolve(n) {
        KernelMethod::Modular => nullspace_modular(n, columns),
        _ => {
            let mut dense = vec![vec![BigInt::zero(); n]; n];
            for (c, col) in columns.iter().enumerate() {
                for &(r, v) in col {
                    dense[r][c] = BigInt::from(v);
                }
            }
            nullspace_bareiss(dense)
        }
    }
}

/// Divides out the content and makes the first nonzero entry positive.
pub fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return;
    }
    let flip = v
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative());
    for x in v.iter_mut() {
        *x = &*x / &g;
        if flip {
            *x = -&*x;
        }
    }
}

/// `M v` for sparse columns.
pub fn apply_sparse(n: usize, columns: &[Vec<(usize, i64)>], v: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n];
    for (c, col) in columns.iter().enumerate() {
        if v[c].is_zero() {
            continue;
        }
        for &(r, x) in col {
            out[r] += &v[c] * x;
        }
    }
    out
}
