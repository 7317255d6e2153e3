//! Finite words, eventually-periodic points and coordinate oracles over `Z`.
//!
//! Everything here is exact: entries are arbitrary-precision integers and
//! [`RegularPoint`] is kept in a canonical form (minimal period, then minimal
//! head) so that derived equality is semantic equality.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A group element of `Z`.
pub type Int = BigInt;

/// A finite sequence of integers. The empty word is allowed.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Int>);

impl Word {
    pub fn new(entries: Vec<Int>) -> Self {
        Word(entries)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        Word(entries.iter().map(|&v| Int::from(v)).collect())
    }

    /// `len` copies of `value`.
    pub fn constant(value: i64, len: usize) -> Self {
        Word(vec![Int::from(value); len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, n: usize) -> Option<&Int> {
        self.0.get(n)
    }

    pub fn as_slice(&self) -> &[Int] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Int> {
        self.0.iter()
    }

    pub fn into_vec(self) -> Vec<Int> {
        self.0
    }

    pub fn push(&mut self, value: Int) {
        self.0.push(value);
    }

    /// `self ⌢ other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `self ⌢ value`.
    pub fn extended(&self, value: Int) -> Word {
        let mut v = self.0.clone();
        v.push(value);
        Word(v)
    }

    /// The first `n` entries; panics if `n > len`.
    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n].to_vec())
    }

    pub fn suffix_from(&self, n: usize) -> Word {
        Word(self.0[n..].to_vec())
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.len() >= self.0.len() && other.0[..self.0.len()] == self.0[..]
    }

    /// Entrywise sum of two words of equal length.
    pub fn add(&self, other: &Word) -> Word {
        assert_eq!(self.len(), other.len(), "word lengths differ");
        Word(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Word) -> Word {
        assert_eq!(self.len(), other.len(), "word lengths differ");
        Word(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Comma-separated entries with no delimiters.
    pub fn to_csv(&self) -> String {
        join_ints(&self.0)
    }

    /// Parses a comma-separated list; the empty string is the empty word.
    pub fn from_csv(text: &str) -> Result<Word> {
        parse_ints(text).map(Word)
    }
}

impl From<Vec<Int>> for Word {
    fn from(v: Vec<Int>) -> Self {
        Word(v)
    }
}

impl FromIterator<Int> for Word {
    fn from_iter<I: IntoIterator<Item = Int>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Int;
    type IntoIter = std::slice::Iter<'a, Int>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_csv())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_csv())
    }
}

pub(crate) fn join_ints(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    parts.join(",")
}

pub(crate) fn parse_ints(text: &str) -> Result<Vec<Int>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|p| {
            Int::from_str(p.trim()).map_err(|_| Error::Parse(format!("bad integer `{}`", p.trim())))
        })
        .collect()
}

/// True iff `|w|` is a multiple of `2^m` and every aligned block of length
/// `2^m` is constant.
pub fn is_segmented(w: &[Int], m: u32) -> bool {
    let block = match 1usize.checked_shl(m) {
        Some(b) if b != 0 => b,
        _ => return w.is_empty(),
    };
    w.len() % block == 0 && w.chunks(block).all(|c| c.iter().all(|x| *x == c[0]))
}

/// Anything with a total, deterministic coordinate function.
pub trait Point {
    fn coord(&self, n: usize) -> Int;

    fn prefix(&self, n: usize) -> Word {
        (0..n).map(|i| self.coord(i)).collect()
    }
}

/// An eventually periodic point `head ⌢ period ⌢ period ⌢ …`.
///
/// Always stored in canonical form, so `==` decides equality of the
/// denoted sequences.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RegularPoint {
    head: Vec<Int>,
    period: Vec<Int>,
}

impl RegularPoint {
    pub fn new(head: Word, period: Word) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Precondition("period must be nonempty".into()));
        }
        Ok(Self::canonical(head.0, period.0))
    }

    pub fn from_i64s(head: &[i64], period: &[i64]) -> Self {
        Self::new(Word::from_i64s(head), Word::from_i64s(period)).expect("nonempty period")
    }

    pub fn zero() -> Self {
        Self::constant(Int::zero())
    }

    pub fn constant(value: Int) -> Self {
        RegularPoint { head: Vec::new(), period: vec![value] }
    }

    /// `word ⌢ 0^ω`.
    pub fn padded(word: &Word) -> Self {
        Self::canonical(word.0.clone(), vec![Int::zero()])
    }

    fn canonical(mut head: Vec<Int>, mut period: Vec<Int>) -> Self {
        let p = period.len();
        if let Some(q) = (1..=p).find(|&q| p % q == 0 && (q..p).all(|i| period[i] == period[i - q])) {
            period.truncate(q);
        }
        while let Some(last) = head.last() {
            if *last != period[period.len() - 1] {
                break;
            }
            let v = head.pop().expect("nonempty");
            period.rotate_right(1);
            period[0] = v;
        }
        RegularPoint { head, period }
    }

    pub fn head(&self) -> &[Int] {
        &self.head
    }

    pub fn period(&self) -> &[Int] {
        &self.period
    }

    pub fn head_len(&self) -> usize {
        self.head.len()
    }

    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    pub fn eval(&self, n: usize) -> &Int {
        if n < self.head.len() {
            &self.head[n]
        } else {
            &self.period[(n - self.head.len()) % self.period.len()]
        }
    }

    /// Coordinate at an arbitrarily large index.
    pub fn eval_big(&self, n: &BigUint) -> &Int {
        match n.to_usize() {
            Some(small) => self.eval(small),
            None => {
                let h = BigUint::from(self.head.len());
                let r = ((n - h) % BigUint::from(self.period.len())).to_usize().expect("residue fits");
                &self.period[r]
            }
        }
    }

    fn zip_with(&self, other: &RegularPoint, op: impl Fn(&Int, &Int) -> Int) -> RegularPoint {
        let h = self.head.len().max(other.head.len());
        let p = self.period.len().lcm(&other.period.len());
        let head = (0..h).map(|i| op(self.eval(i), other.eval(i))).collect();
        let period = (h..h + p).map(|i| op(self.eval(i), other.eval(i))).collect();
        Self::canonical(head, period)
    }

    pub fn add(&self, other: &RegularPoint) -> RegularPoint {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &RegularPoint) -> RegularPoint {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> RegularPoint {
        RegularPoint {
            head: self.head.iter().map(|v| -v).collect(),
            period: self.period.iter().map(|v| -v).collect(),
        }
    }

    /// Index after which two points are guaranteed to repeat jointly.
    pub fn agreement_bound(&self, other: &RegularPoint) -> usize {
        self.head.len() + other.head.len() + self.period.len().lcm(&other.period.len())
    }
}

impl Point for RegularPoint {
    fn coord(&self, n: usize) -> Int {
        self.eval(n).clone()
    }
}

impl fmt::Display for RegularPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", join_ints(&self.head), join_ints(&self.period))
    }
}

impl fmt::Debug for RegularPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RegularPoint({self})")
    }
}

impl FromStr for RegularPoint {
    type Err = Error;

    /// `head;period`, e.g. `5;0` or `;1,2`.
    fn from_str(s: &str) -> Result<Self> {
        let (h, p) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("point `{s}` lacks `;`")))?;
        RegularPoint::new(Word(parse_ints(h)?), Word(parse_ints(p)?))
    }
}

type Oracle = dyn Fn(usize) -> Int + Send + Sync;

/// A computable point given by a coordinate oracle.
///
/// `witness`, when present, is `(onset, period)`: the oracle agrees with
/// `period[(n - onset) mod |period|]` for every `n >= onset`.
#[derive(Clone)]
pub struct LazyPoint {
    oracle: Arc<Oracle>,
    witness: Option<(usize, Word)>,
}

impl LazyPoint {
    pub fn new(oracle: impl Fn(usize) -> Int + Send + Sync + 'static) -> Self {
        LazyPoint { oracle: Arc::new(oracle), witness: None }
    }

    pub fn with_witness(mut self, onset: usize, period: Word) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Precondition("witness period must be nonempty".into()));
        }
        self.witness = Some((onset, period));
        Ok(self)
    }

    pub fn from_regular(p: RegularPoint) -> Self {
        let onset = p.head_len();
        let period = Word(p.period().to_vec());
        LazyPoint { oracle: Arc::new(move |n| p.coord(n)), witness: Some((onset, period)) }
    }

    pub fn witness(&self) -> Option<(usize, &Word)> {
        self.witness.as_ref().map(|(o, p)| (*o, p))
    }

    /// Checks the periodicity witness against the oracle on `[onset, onset + reps·|period|)`.
    pub fn witness_holds(&self, reps: usize) -> bool {
        match &self.witness {
            None => true,
            Some((onset, period)) => (0..reps * period.len())
                .all(|i| (self.oracle)(onset + i) == period.as_slice()[i % period.len()]),
        }
    }

    /// The eventually-periodic point described by the witness, if any.
    pub fn to_regular(&self) -> Option<RegularPoint> {
        let (onset, period) = self.witness.as_ref()?;
        let head = self.prefix(*onset);
        RegularPoint::new(head, period.clone()).ok()
    }

    /// Coordinatewise `self + other`.
    pub fn add_regular(&self, other: &RegularPoint) -> LazyPoint {
        let me = self.oracle.clone();
        let o = other.clone();
        LazyPoint::new(move |n| me(n) + o.eval(n))
    }
}

impl Point for LazyPoint {
    fn coord(&self, n: usize) -> Int {
        (self.oracle)(n)
    }
}

impl fmt::Debug for LazyPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown = self.prefix(8);
        write!(f, "LazyPoint({}, …)", shown.to_csv())
    }
}

/// Coordinate `n` of any point.
pub fn eval_point<P: Point + ?Sized>(p: &P, n: usize) -> Int {
    p.coord(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Word {
        Word::from_i64s(v)
    }

    #[test]
    fn segmented_examples() {
        assert!(is_segmented(w(&[0, 0, 1, 1]).as_slice(), 1));
        assert!(!is_segmented(w(&[0, 1]).as_slice(), 1));
        assert!(is_segmented(w(&[3, -1, 7]).as_slice(), 0));
        assert!(!is_segmented(w(&[0, 0, 1]).as_slice(), 1));
        assert!(is_segmented(&[], 5));
    }

    #[test]
    fn segmentation_downgrades_exhaustively() {
        // all {0,1}-words up to length 16 and m up to 4
        for len in 0..=16usize {
            for bits in 0u32..(1u32 << len) {
                let word: Vec<Int> = (0..len).map(|i| Int::from((bits >> i) & 1)).collect();
                for m in 0..=4u32 {
                    if is_segmented(&word, m) {
                        for m2 in 0..=m {
                            assert!(is_segmented(&word, m2), "{word:?} m={m} m'={m2}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn eval_examples() {
        let p = RegularPoint::from_i64s(&[5], &[0]);
        assert_eq!(p.coord(0), Int::from(5));
        assert_eq!(p.coord(7), Int::from(0));
        let q = RegularPoint::from_i64s(&[], &[1, 2]);
        assert_eq!(eval_point(&q, 3), Int::from(2));
    }

    #[test]
    fn add_sub_examples() {
        let p = RegularPoint::from_i64s(&[4, -2], &[1, 7, 1]);
        assert_eq!(p.add(&RegularPoint::zero()), p);
        assert_eq!(p.sub(&p), RegularPoint::zero());
        let a = RegularPoint::from_i64s(&[], &[1]);
        let b = RegularPoint::from_i64s(&[], &[0, 2]);
        assert_eq!(a.add(&b), RegularPoint::from_i64s(&[], &[1, 3]));
    }

    #[test]
    fn canonical_form_is_minimal() {
        let p = RegularPoint::from_i64s(&[1, 2, 1, 2], &[1, 2, 1, 2]);
        assert_eq!(p.head_len(), 0);
        assert_eq!(p.period_len(), 2);
        let q = RegularPoint::from_i64s(&[9, 0, 0], &[0, 0]);
        assert_eq!(q.to_string(), "9;0");
    }

    #[test]
    fn notation_round_trip() {
        for text in ["5;0", ";1,2", "-3,4;7,-7", ";0"] {
            let p: RegularPoint = text.parse().unwrap();
            assert_eq!(p.to_string(), text);
        }
        assert!("1,2".parse::<RegularPoint>().is_err());
        assert!("1;".parse::<RegularPoint>().is_err());
    }

    #[test]
    fn big_index_agrees_with_small() {
        let p = RegularPoint::from_i64s(&[3, 1], &[4, 1, 5]);
        for n in 0..40usize {
            assert_eq!(p.eval_big(&BigUint::from(n)), p.eval(n));
        }
        let huge = BigUint::from(10u32).pow(30);
        let r = ((&huge - BigUint::from(2u32)) % BigUint::from(3u32)).to_usize().unwrap();
        assert_eq!(p.eval_big(&huge), &p.period()[r]);
    }

    #[test]
    fn lazy_witness() {
        let lp = LazyPoint::new(|n| if n < 3 { Int::from(9) } else { Int::from((n % 2) as i64) });
        let lp = lp.with_witness(3, w(&[1, 0])).unwrap();
        assert!(lp.witness_holds(4));
        assert_eq!(lp.to_regular().unwrap(), RegularPoint::from_i64s(&[9, 9, 9], &[1, 0]));
        let bad = LazyPoint::new(|_| Int::from(1)).with_witness(0, w(&[0])).unwrap();
        assert!(!bad.witness_holds(1));
    }
}
