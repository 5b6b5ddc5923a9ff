//! Bit-string conventions and small combinatorial helpers.
//!
//! A basis index `z` encodes the string z₁z₂…z_n **big-endian**: z₁ is the
//! most significant bit, so "1011" ↔ index 11 for n = 4. Every module goes
//! through these helpers so the convention is fixed in exactly one place.

use crate::error::{Error, Result};

/// Hamming weight of the index.
#[inline]
pub fn weight(z: usize) -> usize {
    z.count_ones() as usize
}

/// Bit z_i for 1-based position i (z₁ is the most significant bit).
#[inline]
pub fn bit(z: usize, i: usize, n: usize) -> bool {
    debug_assert!(1 <= i && i <= n);
    (z >> (n - i)) & 1 == 1
}

/// Index whose 1-bits sit exactly at the given 1-based positions.
pub fn index_of_positions(positions: &[usize], n: usize) -> usize {
    positions.iter().fold(0, |acc, &i| {
        debug_assert!(1 <= i && i <= n);
        acc | 1 << (n - i)
    })
}

/// Parse a bit string like "0110" into (index, length).
pub fn parse_bits(s: &str) -> Result<(usize, usize)> {
    if s.is_empty() || s.len() > usize::BITS as usize - 1 {
        return Err(Error::Parse(format!("bad bit string length {}", s.len())));
    }
    let mut z = 0usize;
    for c in s.chars() {
        z = (z << 1)
            | match c {
                '0' => 0,
                '1' => 1,
                _ => return Err(Error::Parse(format!("bit string has non-binary char {c:?}"))),
            };
    }
    Ok((z, s.len()))
}

/// Render an index as an n-char bit string, big-endian.
pub fn format_bits(z: usize, n: usize) -> String {
    debug_assert!(n == usize::BITS as usize || z < (1usize << n));
    (1..=n).map(|i| if bit(z, i, n) { '1' } else { '0' }).collect()
}

/// Binomial coefficient C(n, k); exact for every n ≤ 64.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}
