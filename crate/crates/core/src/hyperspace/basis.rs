//! A bijection between `ℕ` and pairs `(n, P)` with `P` a finite nonempty set
//! of integer words of length `n`.
//!
//! Built from bit interleaving, which is a bijection `ℕ^m → ℕ` for each
//! fixed `m` and keeps code lengths linear in the data:
//!
//! * an integer `z` is first sent to `ℕ` by `z ↦ 2z` (`z ≥ 0`), `z ↦ -2z-1`;
//! * a word of length `n ≥ 1` is the `n`-way interleave of its entries;
//! * a set `{c₁ < … < c_m}` of word codes is the pair `(m - 1, g)` where `g`
//!   interleaves the gaps `c₁, c₂ - c₁ - 1, …`;
//! * `(0, {()})` is index `0`, and `(n, P)` with `n ≥ 1` is
//!   `1 + pair(n - 1, code(P))`.
//!
//! Pairs are two-way interleaves with the first component on even bits.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::seq::{Int, Word};

/// Decoded depths above this are refused.
pub const MAX_DEPTH: u64 = 1 << 20;

fn interleave(parts: &[BigUint]) -> BigUint {
    let m = parts.len() as u64;
    let bits = parts.iter().map(BigUint::bits).max().unwrap_or(0);
    let mut out = BigUint::zero();
    for j in 0..bits {
        for (i, a) in parts.iter().enumerate() {
            if a.bit(j) {
                out.set_bit(j * m + i as u64, true);
            }
        }
    }
    out
}

fn deinterleave(code: &BigUint, m: usize) -> Vec<BigUint> {
    let mut parts = vec![BigUint::zero(); m];
    let m64 = m as u64;
    for b in 0..code.bits() {
        if code.bit(b) {
            parts[(b % m64) as usize].set_bit(b / m64, true);
        }
    }
    parts
}

fn zigzag(z: &Int) -> BigUint {
    match z.sign() {
        Sign::Minus => (z.magnitude() << 1u32) - 1u32,
        _ => z.magnitude() << 1u32,
    }
}

fn unzigzag(u: &BigUint) -> Int {
    if u.bit(0) {
        -BigInt::from((u + 1u32) >> 1u32)
    } else {
        BigInt::from(u >> 1u32)
    }
}

fn word_code(w: &Word) -> BigUint {
    let parts: Vec<BigUint> = w.iter().map(zigzag).collect();
    interleave(&parts)
}

fn word_decode(code: &BigUint, n: usize) -> Word {
    deinterleave(code, n).iter().map(unzigzag).collect()
}

/// Index of `(n, P)`. Every word of `P` must have length `n`.
pub fn encode(n: usize, p: &BTreeSet<Word>) -> Result<BigUint> {
    if p.is_empty() {
        return Err(Error::Precondition("basis sets are nonempty".into()));
    }
    if let Some(w) = p.iter().find(|w| w.len() != n) {
        return Err(Error::Precondition(format!("word {w} does not have length {n}")));
    }
    if n == 0 {
        return Ok(BigUint::zero());
    }
    let mut codes: Vec<BigUint> = p.iter().map(word_code).collect();
    codes.sort();
    let mut gaps = Vec::with_capacity(codes.len());
    let mut prev: Option<&BigUint> = None;
    for c in &codes {
        gaps.push(match prev {
            None => c.clone(),
            Some(q) => c - q - 1u32,
        });
        prev = Some(c);
    }
    let set = interleave(&[BigUint::from(codes.len() - 1), interleave(&gaps)]);
    Ok(interleave(&[BigUint::from(n - 1), set]) + 1u32)
}

/// Inverse of [`encode`].
pub fn decode(k: &BigUint) -> Result<(usize, BTreeSet<Word>)> {
    if k.is_zero() {
        return Ok((0, BTreeSet::from([Word::empty()])));
    }
    let outer = deinterleave(&(k - 1u32), 2);
    let n = outer[0].to_u64().filter(|&d| d < MAX_DEPTH).ok_or_else(|| {
        Error::Overflow(format!("basis index decodes to depth above {MAX_DEPTH}"))
    })? as usize
        + 1;
    let inner = deinterleave(&outer[1], 2);
    let m = inner[0]
        .to_usize()
        .filter(|&m| m < (1 << 20))
        .ok_or_else(|| Error::Overflow("basis index decodes to an oversized set".into()))?
        + 1;
    let gaps = deinterleave(&inner[1], m);
    let mut code = BigUint::zero();
    let mut out = BTreeSet::new();
    for (i, g) in gaps.iter().enumerate() {
        code = if i == 0 { g.clone() } else { &code + g + BigUint::one() };
        out.insert(word_decode(&code, n));
    }
    Ok((n, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_index() {
        assert_eq!(decode(&BigUint::zero()).unwrap(), (0, BTreeSet::from([Word::empty()])));
        assert_eq!(decode(&BigUint::one()).unwrap(), (1, BTreeSet::from([Word::from_i64s(&[0])])));
    }

    #[test]
    fn round_trip_small_indices() {
        for k in 0u32..10_000 {
            let k = BigUint::from(k);
            let (n, p) = decode(&k).unwrap();
            assert_eq!(encode(n, &p).unwrap(), k);
        }
    }

    #[test]
    fn zigzag_inverts() {
        for z in -50i64..50 {
            let z = Int::from(z);
            assert_eq!(unzigzag(&zigzag(&z)), z);
        }
    }

    #[test]
    fn rejects_bad_sets() {
        assert!(encode(2, &BTreeSet::new()).is_err());
        assert!(encode(2, &BTreeSet::from([Word::from_i64s(&[1])])).is_err());
    }
}
