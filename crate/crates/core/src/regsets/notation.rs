//! Text forms of regular compacts.
//!
//! Canonical form lists the states in canonical order, `;`-separated, each as
//! comma-separated `label>target` edges: `{0>0,1>0}` is `{0,1}^ω`.
//! The tree form `tree(<leaf>@<L>:[<w>|<w>…];…)` with words written
//! `(a,b,…)` is accepted on input, e.g. `tree((0,0)@2:[(0,0)|(1,1)])`.

use std::fmt;
use std::str::FromStr;

use super::{Edges, RegularCompact, TailSpec, TreeSpec};
use crate::error::{Error, Result};
use crate::seq::{parse_ints, Int, Word};

impl fmt::Display for RegularCompact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, edges) in self.states.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            for (j, (l, t)) in edges.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{l}>{t}")?;
            }
        }
        write!(f, "}}")
    }
}

fn parse_paren_word(text: &str) -> Result<Word> {
    let inner = text
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected `(…)`, got `{text}`")))?;
    Ok(Word::new(parse_ints(inner)?))
}

fn parse_tree(body: &str) -> Result<TreeSpec> {
    let mut leaves = Vec::new();
    for part in body.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (leaf, tail) = part
            .split_once('@')
            .ok_or_else(|| Error::Parse(format!("leaf `{part}` lacks `@`")))?;
        let (len, words) = tail
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("tail `{tail}` lacks `:`")))?;
        let len: usize = len.trim().parse().map_err(|_| Error::Parse(format!("bad block length `{len}`")))?;
        let words = words
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("tail words `{words}` not bracketed")))?;
        let words = words.split('|').map(parse_paren_word).collect::<Result<Vec<_>>>()?;
        leaves.push((parse_paren_word(leaf)?, TailSpec::new(len, words)?));
    }
    TreeSpec::new(leaves)
}

fn parse_graph(body: &str) -> Result<Vec<Edges>> {
    let rows: Vec<&str> = body.split(';').collect();
    let n = rows.len();
    rows.iter()
        .map(|row| {
            let mut edges = Edges::new();
            for e in row.split(',').map(str::trim).filter(|e| !e.is_empty()) {
                let (l, t) = e.split_once('>').ok_or_else(|| Error::Parse(format!("edge `{e}` lacks `>`")))?;
                let l = Int::from_str(l.trim()).map_err(|_| Error::Parse(format!("bad label `{l}`")))?;
                let t: usize = t.trim().parse().map_err(|_| Error::Parse(format!("bad target `{t}`")))?;
                if t >= n {
                    return Err(Error::Parse(format!("target {t} out of range")));
                }
                if edges.insert(l, t).is_some() {
                    return Err(Error::Parse(format!("duplicate label in `{row}`")));
                }
            }
            Ok(edges)
        })
        .collect()
}

impl FromStr for RegularCompact {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(body) = s.strip_prefix("tree(").and_then(|t| t.strip_suffix(')')) {
            return Ok(RegularCompact::from_tree(&parse_tree(body)?));
        }
        let body = s
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("unrecognised set notation `{s}`")))?;
        RegularCompact::from_edges(parse_graph(body)?)
            .ok_or_else(|| Error::Parse("set notation denotes the empty set".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::RegularPoint;

    #[test]
    fn canonical_round_trip() {
        for k in [
            RegularCompact::full_shift(&[0, 1]),
            RegularCompact::unit_cube(),
            RegularCompact::singleton(&RegularPoint::from_i64s(&[4, -1], &[0, 2])),
        ] {
            let text = k.to_string();
            let back: RegularCompact = text.parse().unwrap();
            assert_eq!(back, k);
            assert_eq!(back.to_string(), text);
        }
        assert_eq!(RegularCompact::full_shift(&[0, 1]).to_string(), "{0>0,1>0}");
    }

    #[test]
    fn tree_form_parses() {
        let k: RegularCompact = "tree((0,0)@2:[(0,0)|(1,1)])".parse().unwrap();
        assert_eq!(k.prefix_set(4).len(), 2);
        let c: RegularCompact = "tree(()@1:[(0)|(1)])".parse().unwrap();
        assert_eq!(c, RegularCompact::full_shift(&[0, 1]));
        let two: RegularCompact = "tree((-2)@1:[(0)];(5)@1:[(0)])".parse().unwrap();
        assert_eq!(two.prefix_set(1).len(), 2);
    }

    #[test]
    fn malformed_notation_is_rejected() {
        for bad in ["", "{0>1}", "{0>0,0>0}", "{}", "tree(()@0:[()])", "tree((1)@2:[(1)])", "[0>0]"] {
            assert!(bad.parse::<RegularCompact>().is_err(), "{bad}");
        }
    }
}
