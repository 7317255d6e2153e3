//! Certificate records: typed evidence in a canonical line format, each
//! re-checkable from its own fields.
//!
//! A record is `kind` followed by tab-separated `field=value` pairs in a
//! fixed order. Values never contain tabs or newlines.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::coding::Label;
use crate::counterexample::{
    adversary_point, in_ts_plus, verify_ts_witness, CoverEntry, verify_exclusion, verify_rhm, Adversary, ExclusionCertificate, RhmAvoider,
    RhmCertificate, RhmEvidence, Translation,
};
use crate::error::{Error, Result};
use crate::hyperspace::{verify_separation, FiberCertificate, OutReason, SeparationWitness};
use crate::regsets::RegularCompact;
use crate::seq::{Int, RegularPoint, Word};
use crate::witness::{verify_nwd, NwdCertificate, PairCylinder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Separation,
    Nwd,
    Exclusion,
    Case1,
    Case2,
    Fiber,
    /// A `c*` putting a fiber point into `T_s + C_{s⌢ℓ}`.
    Inclusion,
    /// Suite totals; carries no evidence.
    Summary,
}

impl Kind {
    const ALL: [Kind; 8] = [
        Kind::Separation,
        Kind::Nwd,
        Kind::Exclusion,
        Kind::Case1,
        Kind::Case2,
        Kind::Fiber,
        Kind::Inclusion,
        Kind::Summary,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Kind::Separation => "separation",
            Kind::Nwd => "nwd",
            Kind::Exclusion => "exclusion",
            Kind::Case1 => "case1",
            Kind::Case2 => "case2",
            Kind::Fiber => "fiber",
            Kind::Inclusion => "inclusion",
            Kind::Summary => "summary",
        }
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Kind::ALL
            .into_iter()
            .find(|k| k.tag() == s)
            .ok_or_else(|| Error::Parse(format!("unknown record kind `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub kind: Kind,
    pub fields: Vec<(String, String)>,
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind.tag())?;
        for (k, v) in &self.fields {
            write!(f, "\t{k}={v}")?;
        }
        Ok(())
    }
}

impl FromStr for Record {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let mut parts = line.split('\t');
        let kind = parts.next().unwrap_or_default().parse()?;
        let fields = parts
            .map(|p| {
                p.split_once('=')
                    .map(|(k, v)| (k.to_string(), v.to_string()))
                    .ok_or_else(|| Error::Parse(format!("field `{p}` lacks `=`")))
            })
            .collect::<Result<_>>()?;
        Ok(Record { kind, fields })
    }
}

fn label_text(s: &Label) -> String {
    if s.is_empty() {
        "-".into()
    } else {
        s.to_string()
    }
}

fn reason_text(r: &OutReason) -> String {
    match r {
        OutReason::Small(n) => format!("small:{n}"),
        OutReason::FirstNegative => "first-negative".into(),
        OutReason::DepthClash(a, b) => format!("depth-clash:{a}:{b}"),
        OutReason::LevelClash(a, b) => format!("level-clash:{a}:{b}"),
    }
}

fn parse_reason(text: &str) -> Result<OutReason> {
    let bad = || Error::Parse(format!("bad refutation `{text}`"));
    let parts: Vec<&str> = text.split(':').collect();
    let num = |i: usize| -> Result<usize> { parts.get(i).ok_or_else(bad)?.parse().map_err(|_| bad()) };
    match parts[0] {
        "small" => Ok(OutReason::Small(num(1)?)),
        "first-negative" => Ok(OutReason::FirstNegative),
        "depth-clash" => Ok(OutReason::DepthClash(num(1)?, num(2)?)),
        "level-clash" => Ok(OutReason::LevelClash(num(1)?, num(2)?)),
        _ => Err(bad()),
    }
}

/// Builds the field list in order.
struct Fields(Vec<(String, String)>);

impl Fields {
    fn new() -> Self {
        Fields(Vec::new())
    }

    fn put(mut self, k: &str, v: impl ToString) -> Self {
        self.0.push((k.to_string(), v.to_string()));
        self
    }

    fn translation(self, g: &Translation) -> Self {
        match g {
            Translation::Regular(p) => self.put("g", "regular").put("gpoint", p),
            Translation::FiberOffset { k, r } => self.put("g", "offset").put("gk", k).put("gr", r),
        }
    }

    fn evidence(self, e: &RhmEvidence) -> Self {
        match e {
            RhmEvidence::Case1 => self.put("evidence", "case1"),
            RhmEvidence::Case2Fiber { prefix } => self.put("evidence", "fiber").put("prefix", prefix.to_csv()),
            RhmEvidence::Case2Window { prefix, reason } => {
                self.put("evidence", "window").put("prefix", prefix.to_csv()).put("reason", reason_text(reason))
            }
        }
    }

    fn done(self, kind: Kind) -> Record {
        Record { kind, fields: self.0 }
    }
}

impl Record {
    pub fn get(&self, key: &str) -> Result<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| Error::Parse(format!("{} record lacks `{key}`", self.kind.tag())))
    }

    fn parse<T: FromStr>(&self, key: &str) -> Result<T> {
        let v = self.get(key)?;
        v.parse().map_err(|_| Error::Parse(format!("bad `{key}` value `{v}`")))
    }

    fn word(&self, key: &str) -> Result<Word> {
        Word::from_csv(self.get(key)?)
    }

    fn translation(&self) -> Result<Translation> {
        match self.get("g")? {
            "regular" => Ok(Translation::Regular(self.get("gpoint")?.parse()?)),
            "offset" => Ok(Translation::FiberOffset { k: self.get("gk")?.parse()?, r: self.get("gr")?.parse()? }),
            other => Err(Error::Parse(format!("unknown translation form `{other}`"))),
        }
    }

    fn evidence(&self) -> Result<RhmEvidence> {
        match self.get("evidence")? {
            "case1" => Ok(RhmEvidence::Case1),
            "fiber" => Ok(RhmEvidence::Case2Fiber { prefix: self.word("prefix")? }),
            "window" => Ok(RhmEvidence::Case2Window { prefix: self.word("prefix")?, reason: parse_reason(self.get("reason")?)? }),
            other => Err(Error::Parse(format!("unknown evidence `{other}`"))),
        }
    }

    pub fn fiber(cert: &FiberCertificate) -> Record {
        Fields::new().put("k", cert.compact()).put("x", cert.point()).done(Kind::Fiber)
    }

    pub fn inclusion(cert: &FiberCertificate, s: &Label, ell: u64, c_star: &RegularPoint) -> Record {
        Fields::new()
            .put("k", cert.compact())
            .put("x", cert.point())
            .put("s", label_text(s))
            .put("ell", ell)
            .put("c_star", c_star)
            .done(Kind::Inclusion)
    }

    pub fn separation(a: &RegularCompact, b: &RegularCompact, w: &SeparationWitness) -> Record {
        Fields::new()
            .put("a", a)
            .put("b", b)
            .put("coord", &w.coord)
            .put("range_a", format!("{},{}", w.range_a.0, w.range_a.1))
            .put("range_b", format!("{},{}", w.range_b.0, w.range_b.1))
            .done(Kind::Separation)
    }

    pub fn exclusion(adv: &Adversary, ell: u64, cert: &ExclusionCertificate) -> Record {
        let entry = CoverEntry { start: adv.start.clone(), branch: adv.branch().clone(), exclusion: cert.clone() };
        Record::exclusion_entry(adv.cert.compact(), &adv.s, ell, &entry)
    }

    /// An entry of a dense-complement cover, without rebuilding the adversary.
    pub fn exclusion_entry(k: &RegularCompact, s: &Label, ell: u64, e: &CoverEntry) -> Record {
        let c = &e.exclusion;
        Fields::new()
            .put("k", k)
            .put("s", label_text(s))
            .put("ell", ell)
            .put("start", e.start.to_csv())
            .put("branch", &e.branch)
            .put("j", c.j)
            .put("j_prime", c.j_prime)
            .put("min", &c.min_at_j)
            .put("max", &c.max_at_j_prime)
            .done(Kind::Exclusion)
    }

    pub fn rhm(cert: &RhmCertificate) -> Record {
        let kind = if cert.evidence == RhmEvidence::Case1 { Kind::Case1 } else { Kind::Case2 };
        Fields::new()
            .translation(&cert.g)
            .put("s", label_text(&cert.s))
            .put("ell", cert.ell)
            .put("s_prime", label_text(&cert.s_prime))
            .evidence(&cert.evidence)
            .done(kind)
    }

    pub fn nwd(cert: &NwdCertificate<RhmCertificate>) -> Record {
        Fields::new()
            .put("p", cert.cylinder.p().to_csv())
            .put("q", cert.cylinder.q().to_csv())
            .put("s", label_text(&cert.s))
            .put("ell", cert.ell)
            .put("s_prime", label_text(&cert.s_prime))
            .translation(&cert.evidence.g)
            .put("rhm_ell", cert.evidence.ell)
            .evidence(&cert.evidence.evidence)
            .done(Kind::Nwd)
    }

    pub fn summary(fields: &[(&str, String)]) -> Record {
        fields.iter().fold(Fields::new(), |f, (k, v)| f.put(k, v)).done(Kind::Summary)
    }

    fn rhm_certificate(&self, s: Label) -> Result<RhmCertificate> {
        let ell = self.parse("rhm_ell").or_else(|_| self.parse("ell"))?;
        Ok(RhmCertificate { g: self.translation()?, s_prime: s.child(ell), s, ell, evidence: self.evidence()? })
    }

    /// Re-checks the evidence with the owning module's checker. Summaries
    /// carry none and always pass.
    pub fn verify(&self) -> Result<bool> {
        match self.kind {
            Kind::Summary => Ok(true),
            Kind::Fiber => {
                let k: RegularCompact = self.parse("k")?;
                let x: RegularPoint = self.parse("x")?;
                Ok(FiberCertificate::new(k, x).is_ok())
            }
            Kind::Inclusion => {
                let Ok(cert) = FiberCertificate::new(self.parse("k")?, self.parse("x")?) else {
                    return Ok(false);
                };
                verify_ts_witness(&cert, &self.parse("s")?, self.parse("ell")?, &self.parse("c_star")?)
            }
            Kind::Separation => {
                let range = |key: &str| -> Result<(Int, Int)> {
                    let v = self.get(key)?;
                    let (lo, hi) = v.split_once(',').ok_or_else(|| Error::Parse(format!("bad range `{v}`")))?;
                    let p = |t: &str| t.parse::<Int>().map_err(|_| Error::Parse(format!("bad bound `{t}`")));
                    Ok((p(lo)?, p(hi)?))
                };
                let w = SeparationWitness {
                    coord: self.parse::<BigUint>("coord")?,
                    range_a: range("range_a")?,
                    range_b: range("range_b")?,
                };
                verify_separation(&self.parse("a")?, &self.parse("b")?, &w)
            }
            Kind::Exclusion => {
                let k: RegularCompact = self.parse("k")?;
                let s: Label = self.parse("s")?;
                let ell: u64 = self.parse("ell")?;
                let adv = adversary_point(&k, &s, &self.word("start")?)?;
                if adv.branch() != &self.parse::<RegularPoint>("branch")? {
                    return Ok(false);
                }
                let cert = ExclusionCertificate {
                    j: self.parse("j")?,
                    j_prime: self.parse("j_prime")?,
                    min_at_j: self.parse("min")?,
                    max_at_j_prime: self.parse("max")?,
                };
                Ok(verify_exclusion(&adv, ell, &cert)? && in_ts_plus(&adv.cert, &s, ell)?.is_none())
            }
            Kind::Case1 | Kind::Case2 => {
                let cert = self.rhm_certificate(self.parse("s")?)?;
                let case1 = cert.evidence == RhmEvidence::Case1;
                Ok(case1 == (self.kind == Kind::Case1)
                    && self.parse::<Label>("s_prime")? == cert.s_prime
                    && verify_rhm(&cert)?)
            }
            Kind::Nwd => {
                let s: Label = self.parse("s")?;
                let ell: u64 = self.parse("ell")?;
                let inner = self.rhm_certificate(s.child(ell))?;
                let s_prime: Label = self.parse("s_prime")?;
                let avoider = RhmAvoider { g: inner.g.clone() };
                let cert = NwdCertificate {
                    cylinder: PairCylinder::new(self.word("p")?, self.word("q")?)?,
                    s,
                    ell,
                    s_prime,
                    evidence: inner,
                };
                verify_nwd(&avoider, &cert)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_round_trip_and_verify() {
        let k = RegularCompact::full_shift(&[0, 1]);
        let adv = adversary_point(&k, &Label::empty(), &Word::from_i64s(&[1])).unwrap();
        let cert = crate::counterexample::adversary_certificate(&adv, 1).unwrap();
        let rec = Record::exclusion(&adv, 1, &cert);
        let back: Record = rec.to_string().parse().unwrap();
        assert_eq!(back, rec);
        assert!(back.verify().unwrap());

        let mut bad = rec.clone();
        bad.fields.iter_mut().find(|(k, _)| k == "j").unwrap().1 = "6".into();
        assert!(!bad.verify().unwrap());
    }

    #[test]
    fn reasons_round_trip() {
        for r in [OutReason::Small(4), OutReason::FirstNegative, OutReason::DepthClash(1, 3), OutReason::LevelClash(2, 9)] {
            assert_eq!(parse_reason(&reason_text(&r)).unwrap(), r);
        }
    }
}
