//! The segmented coding system: the words `b_s`, the sets `C_s`, the
//! refinement search inside a cylinder, and the height encodings `h`, `h₀`.
//!
//! For a label `s` put `B = 2^|s|`. The admissible extensions of `b_s` are the
//! nonempty `{0,1}` words made of whole constant blocks of length `B` whose
//! length brings `|b_s|` to a multiple of `2B`. Such a word is fixed by its
//! block count `q` and its `q` block bits, and the count parity is forced by
//! `|b_s| / B`. The `ℓ`-th extension is taken in order of length, then
//! lexicographically, so `ℓ` is an offset over the allowed counts plus the
//! block bits read as a binary number.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::regsets::{RegularCompact, TailSpec, TreeSpec};
use crate::seq::{Int, Point, RegularPoint, Word};

/// A finite sequence of natural numbers.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(pub Vec<u64>);

impl Label {
    pub fn empty() -> Self {
        Label(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, l: u64) -> Label {
        let mut v = self.0.clone();
        v.push(l);
        Label(v)
    }

    pub fn parent(&self) -> Option<(Label, u64)> {
        let (&last, rest) = self.0.split_last()?;
        Some((Label(rest.to_vec()), last))
    }

    /// `self ⊆ other` as sequences, i.e. `self` is an initial segment.
    pub fn is_initial_segment_of(&self, other: &Label) -> bool {
        other.0.starts_with(&self.0)
    }

    /// All labels of length `len` with entries `≤ max`, in lexicographic order.
    pub fn all(len: usize, max: u64) -> Vec<Label> {
        let mut out = vec![Label::empty()];
        for _ in 0..len {
            out = out.iter().flat_map(|s| (0..=max).map(move |l| s.child(l))).collect();
        }
        out
    }

    /// All labels of length `≤ len` with entries `≤ max`.
    pub fn up_to(len: usize, max: u64) -> Vec<Label> {
        (0..=len).flat_map(|n| Label::all(n, max)).collect()
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{self}⟩")
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "-" {
            return Ok(Label::empty());
        }
        s.split(',')
            .map(|p| p.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad label entry `{p}`"))))
            .collect::<Result<Vec<_>>>()
            .map(Label)
    }
}

impl From<&[u64]> for Label {
    fn from(v: &[u64]) -> Self {
        Label(v.to_vec())
    }
}

fn block_len(s: &Label) -> Result<usize> {
    u32::try_from(s.len())
        .ok()
        .and_then(|e| 1usize.checked_shl(e))
        .filter(|&b| b.checked_mul(64).is_some())
        .ok_or_else(|| Error::Overflow(format!("block length 2^{} for label {s}", s.len())))
}

/// Smallest admissible block count, given the parity of `|b_s| / B`.
fn first_count(odd: bool) -> u32 {
    if odd {
        1
    } else {
        2
    }
}

/// `(q, bits)` of the `ℓ`-th admissible extension.
fn decode_label(odd: bool, mut l: u64) -> Result<(u32, u64)> {
    let mut q = first_count(odd);
    loop {
        if q >= 64 {
            return Err(Error::Overflow(format!("label {l} needs more than 63 blocks")));
        }
        let size = 1u64 << q;
        if l < size {
            return Ok((q, l));
        }
        l -= size;
        q += 2;
    }
}

fn encode_label(odd: bool, q: u32, bits: u64) -> Result<u64> {
    let mut offset: u64 = 0;
    let mut c = first_count(odd);
    while c < q {
        offset = offset
            .checked_add(1u64 << c)
            .ok_or_else(|| Error::Overflow(format!("label offset for {q} blocks")))?;
        c += 2;
    }
    offset.checked_add(bits).ok_or_else(|| Error::Overflow(format!("label for {q} blocks")))
}

fn memo() -> &'static Mutex<HashMap<Label, Word>> {
    static MEMO: OnceLock<Mutex<HashMap<Label, Word>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The `ℓ`-th admissible extension `β` after `b_s`.
pub fn beta(s: &Label, l: u64) -> Result<Word> {
    let b = block_len(s)?;
    let bs = b_word(s)?;
    let odd = (bs.len() / b) % 2 == 1;
    let (q, bits) = decode_label(odd, l)?;
    let mut out = Vec::with_capacity(q as usize * b);
    for i in (0..q).rev() {
        let bit = Int::from((bits >> i) & 1);
        out.extend(std::iter::repeat(bit).take(b));
    }
    Ok(Word::new(out))
}

/// `b_s`.
pub fn b_word(s: &Label) -> Result<Word> {
    if let Some(w) = memo().lock().expect("memo lock").get(s) {
        return Ok(w.clone());
    }
    let w = match s.parent() {
        None => Word::empty(),
        Some((p, l)) => b_word(&p)?.concat(&beta(&p, l)?),
    };
    memo().lock().expect("memo lock").insert(s.clone(), w.clone());
    Ok(w)
}

/// The unique `ℓ` with `b_{s⌢ℓ} = b_s ⌢ β`.
pub fn label_of(s: &Label, beta: &Word) -> Result<u64> {
    let b = block_len(s)?;
    let bs = b_word(s)?;
    if beta.len() == 0 {
        return Err(Error::Admissibility("β is empty".into()));
    }
    if let Some(x) = beta.iter().find(|x| **x != Int::from(0) && **x != Int::from(1)) {
        return Err(Error::Admissibility(format!("β has entry {x} outside {{0,1}}")));
    }
    if beta.len() % b != 0 || !crate::seq::is_segmented(beta.as_slice(), s.len() as u32) {
        return Err(Error::Admissibility(format!("β = {beta} is not {}-segmented", s.len())));
    }
    if (bs.len() + beta.len()) % (2 * b) != 0 {
        return Err(Error::Admissibility(format!(
            "|b_s| + |β| = {} is not divisible by {}",
            bs.len() + beta.len(),
            2 * b
        )));
    }
    let q = beta.len() / b;
    if q >= 64 {
        return Err(Error::Overflow(format!("β has {q} blocks")));
    }
    let bits = beta
        .as_slice()
        .chunks(b)
        .fold(0u64, |acc, block| (acc << 1) | u64::from(block[0] == Int::from(1)));
    encode_label((bs.len() / b) % 2 == 1, q as u32, bits)
}

/// `C_s = { b_s ⌢ x : x ∈ {0,1}^ω is |s|-segmented }`.
pub fn c_set(s: &Label) -> Result<RegularCompact> {
    Ok(c_set_shared(s)?.as_ref().clone())
}

/// Memoized [`c_set`].
pub fn c_set_shared(s: &Label) -> Result<Arc<RegularCompact>> {
    static MEMO: OnceLock<Mutex<HashMap<Label, Arc<RegularCompact>>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = memo.lock().expect("memo lock").get(s) {
        return Ok(c.clone());
    }
    let b = block_len(s)?;
    let zeros = Word::new(vec![Int::from(0); b]);
    let ones = Word::new(vec![Int::from(1); b]);
    let tail = TailSpec::new(b, [zeros, ones])?;
    let c = Arc::new(RegularCompact::from_tree(&TreeSpec::new([(b_word(s)?, tail)])?));
    memo.lock().expect("memo lock").insert(s.clone(), c.clone());
    Ok(c)
}

/// Labels `ℓ` with `C_{s⌢ℓ} ⊆ C_s ∩ [w]`, pairwise distinct.
///
/// Follows the lexicographically least branch `u` of `C_s ∩ [w]` and, for
/// each admissible cut `n`, emits the label of `u↾n` past `b_s`. The stream
/// ends only when labels leave the `u64` range.
pub struct Refinement {
    s: Label,
    u: RegularPoint,
    start: usize,
    n: usize,
    step: usize,
}

impl Iterator for Refinement {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let beta = self.u.prefix(self.n).suffix_from(self.start);
        self.n += self.step;
        label_of(&self.s, &beta).ok()
    }
}

pub fn refine_into(s: &Label, w: &Word) -> Result<Refinement> {
    let c = c_set(s)?;
    let piece = c
        .restrict_to_cylinder(w)
        .ok_or_else(|| Error::Precondition(format!("[{w}] misses C_{{{s}}}")))?;
    let u = piece.least_branch();
    let step = 2 * block_len(s)?;
    let start = b_word(s)?.len();
    let n0 = (start + 1).max(w.len());
    let n = n0.div_ceil(step) * step;
    Ok(Refinement { s: s.clone(), u, start, n, step })
}

/// `h(s)`: each entry `n` written as `n` zeroes followed by a one.
pub fn h_word(s: &Label) -> Word {
    let mut out = Vec::new();
    for &n in &s.0 {
        out.extend(std::iter::repeat(Int::from(0)).take(n as usize));
        out.push(Int::from(1));
    }
    Word::new(out)
}

/// `h₀(s) = h(s) ⌢ 0^ω`.
pub fn h0_point(s: &Label) -> RegularPoint {
    RegularPoint::new(h_word(s), Word::from_i64s(&[0])).expect("nonempty period")
}

/// Splits a `{0,1}` word at its ones: the gaps form the stem, and the zeros
/// after the last one are counted separately. Entries other than `1` are
/// read as zeros.
pub fn parse_height(q: &Word) -> (Label, usize) {
    let mut stem = Vec::new();
    let mut gap = 0u64;
    for x in q.iter() {
        if *x == Int::from(1) {
            stem.push(gap);
            gap = 0;
        } else {
            gap += 1;
        }
    }
    (Label(stem), gap as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab(v: &[u64]) -> Label {
        Label(v.to_vec())
    }

    #[test]
    fn first_words() {
        assert_eq!(b_word(&Label::empty()).unwrap(), Word::empty());
        assert_eq!(b_word(&lab(&[0])).unwrap(), Word::from_i64s(&[0, 0]));
        assert_eq!(b_word(&lab(&[1])).unwrap(), Word::from_i64s(&[0, 1]));
        assert_eq!(b_word(&lab(&[4])).unwrap(), Word::from_i64s(&[0, 0, 0, 0]));
        assert_eq!(label_of(&Label::empty(), &Word::from_i64s(&[0, 0])).unwrap(), 0);
        // |b_(0)| / 2 = 1 is odd, so a single block of two is admissible
        assert_eq!(b_word(&lab(&[0, 0])).unwrap(), Word::from_i64s(&[0, 0, 0, 0]));
        assert_eq!(b_word(&lab(&[0, 1])).unwrap(), Word::from_i64s(&[0, 0, 1, 1]));
    }

    #[test]
    fn inadmissible_betas() {
        let e = Label::empty();
        assert!(matches!(label_of(&e, &Word::from_i64s(&[0, 0, 1])), Err(Error::Admissibility(_))));
        assert!(matches!(label_of(&e, &Word::empty()), Err(Error::Admissibility(_))));
        assert!(matches!(label_of(&e, &Word::from_i64s(&[0, 2])), Err(Error::Admissibility(_))));
        assert!(matches!(label_of(&lab(&[0]), &Word::from_i64s(&[0, 1])), Err(Error::Admissibility(_))));
        assert!(matches!(label_of(&lab(&[0]), &Word::from_i64s(&[0, 0, 1, 1])), Err(Error::Admissibility(_))));
    }

    #[test]
    fn c_set_examples() {
        assert!(c_set(&Label::empty()).unwrap().equals_semantic(&RegularCompact::full_shift(&[0, 1])));
        let c0 = c_set(&lab(&[0])).unwrap();
        let p: Vec<Word> = c0.prefix_set(4).into_iter().collect();
        assert_eq!(p, vec![Word::from_i64s(&[0, 0, 0, 0]), Word::from_i64s(&[0, 0, 1, 1])]);
    }

    #[test]
    fn heights() {
        assert_eq!(h_word(&lab(&[0])), Word::from_i64s(&[1]));
        assert_eq!(h_word(&lab(&[2])), Word::from_i64s(&[0, 0, 1]));
        assert_eq!(h_word(&lab(&[1, 0])), Word::from_i64s(&[0, 1, 1]));
        assert_eq!(h0_point(&Label::empty()), RegularPoint::zero());
        assert_eq!(parse_height(&Word::from_i64s(&[0, 1, 1, 0, 0])), (lab(&[1, 0]), 2));
        assert_eq!(parse_height(&Word::from_i64s(&[0, 0, 0])), (Label::empty(), 3));
    }

    #[test]
    fn refinement_in_cylinder() {
        let s = Label::empty();
        let w = Word::from_i64s(&[1]);
        let ls: Vec<u64> = refine_into(&s, &w).unwrap().take(10).collect();
        let target = c_set(&s).unwrap().restrict_to_cylinder(&w).unwrap();
        for (i, &l) in ls.iter().enumerate() {
            assert!(!ls[..i].contains(&l));
            assert!(c_set(&s.child(l)).unwrap().subset_of(&target));
        }
        assert!(refine_into(&lab(&[0]), &Word::from_i64s(&[1])).is_err());
    }

    #[test]
    fn label_text() {
        assert_eq!("3,0,12".parse::<Label>().unwrap(), lab(&[3, 0, 12]));
        assert_eq!("".parse::<Label>().unwrap(), Label::empty());
        assert_eq!(lab(&[3, 0]).to_string(), "3,0");
        assert!("1,x".parse::<Label>().is_err());
    }
}
