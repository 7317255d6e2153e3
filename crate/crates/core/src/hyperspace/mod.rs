//! The fiber-separating translation `t : K(Z^ω) → Z^ω`.
//!
//! `c(K)_k = +1` exactly when the `k`-th basis pair `(n, P)` has
//! `P = P(K, n)`; this is injective on compact sets and each bit is locally
//! constant. With `b(K)_k = max{|x_k| : x ∈ K} + 1` we put
//! `t(K)_k = 3·b(K)_k·c(K)_k` and `T(K, x) = x + t(K)`.
//!
//! For `y ∈ K + t(K)` each coordinate satisfies `|y_k| ≥ 2·b(K)_k ≥ 2` and
//! `sign(y_k) = c(K)_k`, so the signs of a point of `F` name its fiber.

pub mod basis;
mod member;

use std::fmt;

use num_bigint::BigUint;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::regsets::RegularCompact;
use crate::seq::{Int, LazyPoint, Point, RegularPoint};

pub use member::{f_member, refute_window, FVerdict, OutReason};

/// A coordinate of the sign vector `c(K)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bit {
    Minus,
    Plus,
}

impl Bit {
    pub fn to_int(self) -> Int {
        match self {
            Bit::Minus => Int::from(-1),
            Bit::Plus => Int::from(1),
        }
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bit::Minus => "-1",
            Bit::Plus => "+1",
        })
    }
}

/// `c(K)_k`.
pub fn embed_bit(k: &RegularCompact, index: &BigUint) -> Result<Bit> {
    let (n, p) = basis::decode(index)?;
    Ok(if k.has_prefix_set(n, &p) { Bit::Plus } else { Bit::Minus })
}

/// `t(K)_k`.
pub fn t_coord(k: &RegularCompact, index: usize) -> Result<Int> {
    t_coord_big(k, &BigUint::from(index))
}

pub fn t_coord_big(k: &RegularCompact, index: &BigUint) -> Result<Int> {
    Ok(Int::from(3) * k.bound_seq_big(index) * embed_bit(k, index)?.to_int())
}

/// A point `x ∈ K`, standing for `T(K, x) ∈ F`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiberCertificate {
    k: RegularCompact,
    x: RegularPoint,
}

impl FiberCertificate {
    pub fn new(k: RegularCompact, x: RegularPoint) -> Result<Self> {
        if !k.member(&x) {
            return Err(Error::Precondition(format!("{x} is not a branch of {k}")));
        }
        Ok(FiberCertificate { k, x })
    }

    pub fn compact(&self) -> &RegularCompact {
        &self.k
    }

    pub fn point(&self) -> &RegularPoint {
        &self.x
    }
}

impl fmt::Display for FiberCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{K: {}, x: {}}}", self.k, self.x)
    }
}

/// `T(K, x) = x + t(K)` as a coordinate oracle.
///
/// # Panics
///
/// The oracle panics at indices whose basis pair has depth above
/// [`basis::MAX_DEPTH`], which needs an index of more than 40 bits.
pub fn big_t(cert: &FiberCertificate) -> LazyPoint {
    let k = cert.k.clone();
    let x = cert.x.clone();
    LazyPoint::new(move |n| x.eval(n) + t_coord(&k, n).expect("coordinate within decodable range"))
}

/// Reading of one coordinate of a candidate point of `F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignReading {
    Bit(Bit),
    NotInF,
}

/// `sign(z_n)`, or `NotInF` when `|z_n| ≤ 1`.
pub fn decode_signs<P: Point + ?Sized>(z: &P, n: usize) -> SignReading {
    let v = z.coord(n);
    if v.abs() <= Int::from(1) {
        SignReading::NotInF
    } else if v.is_positive() {
        SignReading::Bit(Bit::Plus)
    } else {
        SignReading::Bit(Bit::Minus)
    }
}

/// A coordinate where two fibers take disjoint values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeparationWitness {
    pub coord: BigUint,
    /// Values of `K + t(K) + {-1,0,1}^ω` at `coord`.
    pub range_a: (Int, Int),
    /// Values of `K′ + t(K′)` at `coord`.
    pub range_b: (Int, Int),
}

impl fmt::Display for SeparationWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{n: {}, rangeA: [{},{}], rangeB: [{},{}]}}",
            self.coord, self.range_a.0, self.range_a.1, self.range_b.0, self.range_b.1
        )
    }
}

/// Prefix sets larger than this are not enumerated for a witness.
pub const WITNESS_SET_LIMIT: u64 = 1 << 16;

fn ranges_at(a: &RegularCompact, b: &RegularCompact, coord: &BigUint) -> Result<((Int, Int), (Int, Int))> {
    let ta = t_coord_big(a, coord)?;
    let tb = t_coord_big(b, coord)?;
    let (la, ha) = a.coordinate_range(coord);
    let (lb, hb) = b.coordinate_range(coord);
    Ok(((la + &ta - 1, ha + &ta + 1), (lb + &tb, hb + &tb)))
}

/// A coordinate separating `K + t(K) + {-1,0,1}^ω` from `K′ + t(K′)`.
///
/// At the first depth `D` where the prefix sets differ, the indices of
/// `(D, P(K, D))` and `(D, P(K′, D))` both carry different bits for the two
/// sets; the smaller index among those whose set is small enough to list is
/// used.
pub fn fiber_separation_witness(a: &RegularCompact, b: &RegularCompact) -> Result<SeparationWitness> {
    let depth = [a.escape_word(b), b.escape_word(a)]
        .into_iter()
        .flatten()
        .map(|w| w.len())
        .min()
        .ok_or_else(|| Error::Precondition("the sets are equal".into()))?;
    let mut coords = Vec::new();
    for k in [a, b] {
        if k.count_prefixes(depth) <= BigUint::from(WITNESS_SET_LIMIT) {
            coords.push(basis::encode(depth, &k.prefix_set(depth))?);
        }
    }
    let coord = coords
        .into_iter()
        .min()
        .ok_or_else(|| Error::Overflow(format!("both level-{depth} prefix sets exceed {WITNESS_SET_LIMIT} words")))?;
    let (range_a, range_b) = ranges_at(a, b, &coord)?;
    Ok(SeparationWitness { coord, range_a, range_b })
}

/// Recomputes both ranges at the witness coordinate and checks that they
/// match and are disjoint.
pub fn verify_separation(a: &RegularCompact, b: &RegularCompact, w: &SeparationWitness) -> Result<bool> {
    let (ra, rb) = ranges_at(a, b, &w.coord)?;
    Ok(ra == w.range_a && rb == w.range_b && (ra.1 < rb.0 || rb.1 < ra.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::eval_point;

    fn singleton(v: i64) -> RegularCompact {
        RegularCompact::singleton(&RegularPoint::constant(Int::from(v)))
    }

    #[test]
    fn zero_set_signs() {
        let k = singleton(0);
        let mut plus = Vec::new();
        for n in 0..16 {
            let t = t_coord(&k, n).unwrap();
            assert_eq!(t.abs(), Int::from(3));
            if t.is_positive() {
                plus.push(n);
            }
        }
        // (0,{()}), (1,{(0)}), (2,{(0,0)}), (3,{(0,0,0)}), (4,{(0,0,0,0)})
        assert_eq!(plus, vec![0, 1, 2, 5, 6]);
    }

    #[test]
    fn fibers_carry_signs_and_bounds() {
        let k: RegularCompact = "tree(()@2:[(1,-1)|(2,0)])".parse().unwrap();
        let x = RegularPoint::from_i64s(&[], &[2, 0, 1, -1]);
        let cert = FiberCertificate::new(k.clone(), x.clone()).unwrap();
        let z = big_t(&cert);
        for n in 0..32 {
            let t = t_coord(&k, n).unwrap();
            assert_eq!(eval_point(&z, n) - x.eval(n), t);
            assert!(eval_point(&z, n).abs() > k.bound_seq(n));
            let bit = embed_bit(&k, &BigUint::from(n)).unwrap();
            assert_eq!(decode_signs(&z, n), SignReading::Bit(bit));
        }
        assert!(FiberCertificate::new(k, RegularPoint::zero()).is_err());
    }

    #[test]
    fn zero_point_is_outside() {
        assert_eq!(decode_signs(&RegularPoint::zero(), 3), SignReading::NotInF);
        let z = RegularPoint::from_i64s(&[5, 5, 5, 5, 5, 1], &[5]);
        assert_eq!(decode_signs(&z, 5), SignReading::NotInF);
    }

    #[test]
    fn separating_zero_and_one() {
        let a = singleton(0);
        let b = singleton(1);
        let w = fiber_separation_witness(&a, &b).unwrap();
        assert!(verify_separation(&a, &b, &w).unwrap());
        assert!(w.range_a.0.is_positive() != w.range_b.0.is_positive());
        assert!(fiber_separation_witness(&a, &a).is_err());
    }
}
