//! Exact comparisons of quantities built from doubles and small integers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{bail, Result};

/// The exact rational value of a finite double.
pub fn rational(x: f64) -> Result<BigRational> {
    match BigRational::from_float(x) {
        Some(r) => Ok(r),
        None => bail!(InvalidArgument, "non-finite value {x}"),
    }
}

pub fn rational_of_count(n: u128) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn exact_product(factors: &[f64]) -> BigRational {
    factors.iter().fold(BigRational::one(), |acc, &f| {
        acc * BigRational::from_float(f).expect("finite factor")
    })
}

/// Decides `∏ lhs ≤ ∏ rhs` for finite factors, exactly.
///
/// The double products decide clear cases; near-ties are settled in rationals.
pub fn product_le(lhs: &[f64], rhs: &[f64]) -> bool {
    let l: f64 = lhs.iter().product();
    let r: f64 = rhs.iter().product();
    let scale = l.abs().max(r.abs());
    if l.is_finite() && r.is_finite() && (l - r).abs() > 1e-12 * scale {
        return l < r;
    }
    exact_product(lhs) <= exact_product(rhs)
}
