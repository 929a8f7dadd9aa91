//! Binary representations of positive integers and the digit-sum function τ.
//!
//! Every closed form in this crate is indexed by the exponents of
//! `N = 2^{n_1} + ... + 2^{n_t}` with `n_1 > ... > n_t >= 0`, so the
//! decomposition keeps them in descending order.

use crate::error::{Error, Result};

/// `N` together with the positions of its binary ones, largest first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryDecomposition {
    n_value: u64,
    exponents: Vec<u32>,
}

impl BinaryDecomposition {
    pub fn n_value(&self) -> u64 {
        self.n_value
    }

    /// Exponents `n_1 > n_2 > ... > n_t`.
    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// `t = τ(N)`, the number of blocks.
    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn leading_exponent(&self) -> u32 {
        self.exponents[0]
    }
}

/// Splits `n` into its descending binary exponents.
pub fn decompose(n: u64) -> Result<BinaryDecomposition> {
    if n == 0 {
        return Err(Error::ZeroN);
    }
    let mut exponents = Vec::with_capacity(n.count_ones() as usize);
    let mut rest = n;
    while rest != 0 {
        let top = 63 - rest.leading_zeros();
        exponents.push(top);
        rest &= !(1u64 << top);
    }
    Ok(BinaryDecomposition { n_value: n, exponents })
}

/// Number of ones in the binary representation of `n`.
#[inline]
pub fn tau(n: u64) -> u32 {
    n.count_ones()
}

/// `Σ_{k=1}^{N-1} τ(k)` from the binary exponents of `N`:
/// `Σ_i (n_i + 2(i-1)) 2^{n_i - 1}`, evaluated as `(Σ_i (n_i + 2i - 2) 2^{n_i}) / 2`.
pub fn tau_cumulative_fast(n: u64) -> Result<u128> {
    let dec = decompose(n)?;
    let mut doubled: u128 = 0;
    for (i, &e) in dec.exponents().iter().enumerate() {
        let coeff = (e as u128)
            .checked_add(2 * i as u128)
            .ok_or(Error::Overflow("tau_cumulative_fast"))?;
        let term = coeff
            .checked_mul(1u128 << e)
            .ok_or(Error::Overflow("tau_cumulative_fast"))?;
        doubled = doubled
            .checked_add(term)
            .ok_or(Error::Overflow("tau_cumulative_fast"))?;
    }
    debug_assert!(doubled.is_multiple_of(2));
    Ok(doubled / 2)
}

/// Literal `Σ_{k=1}^{N-1} τ(k)`; O(N).
pub fn tau_cumulative_naive(n: u64) -> Result<u128> {
    if n == 0 {
        return Err(Error::ZeroN);
    }
    Ok((1..n).map(|k| tau(k) as u128).sum())
}

/// Right-hand side of the integer identity that rewrites `N^2` with the same
/// coefficients as the binary energy formula:
///
/// `Σ_{k<t} (Σ_{j>k} 2^{n_j-n_k}) 4^{n_k+1} + Σ_k (1 - Σ_{j>k} 2^{n_j-n_k+1}) 4^{n_k}`.
///
/// Each product collapses to an integer power of two, so the evaluation is exact.
pub fn square_from_blocks(dec: &BinaryDecomposition) -> Result<i128> {
    let e = dec.exponents();
    let pow = |k: u32| -> Result<i128> {
        if k >= 126 {
            Err(Error::Overflow("square_from_blocks"))
        } else {
            Ok(1i128 << k)
        }
    };
    let mut total: i128 = 0;
    for k in 0..e.len() {
        let mut block = pow(2 * e[k])?;
        for &ej in &e[k + 1..] {
            // 2^{n_j-n_k} 4^{n_k+1} = 2^{n_j+n_k+2};  2^{n_j-n_k+1} 4^{n_k} = 2^{n_j+n_k+1}
            block += pow(ej + e[k] + 2)? - pow(ej + e[k] + 1)?;
        }
        total = total
            .checked_add(block)
            .ok_or(Error::Overflow("square_from_blocks"))?;
    }
    Ok(total)
}

/// Odd part of `n` and the power of two removed from it.
pub fn odd_part(n: u64) -> Result<(u64, u32)> {
    if n == 0 {
        return Err(Error::ZeroN);
    }
    let z = n.trailing_zeros();
    Ok((n >> z, z))
}
