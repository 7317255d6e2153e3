//! `x ∈ T_s + C_{s⌢ℓ}` (inside the fiber of `K`) by trying candidate `c*`.

use crate::coding::{b_word, c_set, Label};
use crate::regsets::RegularCompact;
use crate::seq::{Int, RegularPoint, Word};

/// Every `c* = b_{s⌢ℓ} ⌢ z ∈ C_{s⌢ℓ}` whose block sequence is `head ⌢ period^ω`
/// with at most `max_head` head blocks and `1..=max_period` period blocks.
pub fn candidates(s: &Label, ell: u64, max_head: usize, max_period: usize) -> Vec<RegularPoint> {
    let child = s.child(ell);
    let block = 1usize << child.len();
    let base = b_word(&child).expect("small label");
    let expand = |bits: &[bool]| -> Word {
        bits.iter().flat_map(|&b| std::iter::repeat(Int::from(u8::from(b))).take(block)).collect()
    };
    let mut out = Vec::new();
    for h in 0..=max_head {
        for p in 1..=max_period {
            for mask in 0u64..1 << (h + p) {
                let bits: Vec<bool> = (0..h + p).map(|i| mask >> i & 1 == 1).collect();
                let head = base.concat(&expand(&bits[..h]));
                out.push(RegularPoint::new(head, expand(&bits[h..])).expect("nonempty period"));
            }
        }
    }
    out.sort_by_key(|c| c.to_string());
    out.dedup();
    out
}

/// Whether `x - c* + C_s ⊆ K`.
pub fn witnesses(k: &RegularCompact, x: &RegularPoint, s: &Label, c_star: &RegularPoint) -> bool {
    let cs = c_set(s).expect("small label");
    cs.translate(&x.sub(c_star)).subset_of(k)
}

/// First candidate that works, if any.
pub fn search(k: &RegularCompact, x: &RegularPoint, s: &Label, ell: u64, max_head: usize, max_period: usize) -> Option<RegularPoint> {
    candidates(s, ell, max_head, max_period).into_iter().find(|c| witnesses(k, x, s, c))
}
