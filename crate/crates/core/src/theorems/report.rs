use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::analysis::Caps;
use crate::error::Error;
use crate::lattice::Subgroup;

#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremId {
    BI_1_4,
    MONT_1_7,
    N1,
    C1_5,
    N2,
    COR_A8,
    TH_1_9,
    TH_4APR,
    RAD_1_4,
    B5APR,
    LEVITZKI,
    TH_8APR,
    COR_B8,
    A5APR,
    LEM_A6,
    LEM_B6,
    LEM_C6,
    COR_C8,
}

impl TheoremId {
    pub const ALL: [TheoremId; 18] = [
        TheoremId::BI_1_4,
        TheoremId::MONT_1_7,
        TheoremId::N1,
        TheoremId::C1_5,
        TheoremId::N2,
        TheoremId::COR_A8,
        TheoremId::TH_1_9,
        TheoremId::TH_4APR,
        TheoremId::RAD_1_4,
        TheoremId::B5APR,
        TheoremId::LEVITZKI,
        TheoremId::TH_8APR,
        TheoremId::COR_B8,
        TheoremId::A5APR,
        TheoremId::LEM_A6,
        TheoremId::LEM_B6,
        TheoremId::LEM_C6,
        TheoremId::COR_C8,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::BI_1_4 => "BI_1_4",
            TheoremId::MONT_1_7 => "MONT_1_7",
            TheoremId::N1 => "N1",
            TheoremId::C1_5 => "C1_5",
            TheoremId::N2 => "N2",
            TheoremId::COR_A8 => "COR_A8",
            TheoremId::TH_1_9 => "TH_1_9",
            TheoremId::TH_4APR => "TH_4APR",
            TheoremId::RAD_1_4 => "RAD_1_4",
            TheoremId::B5APR => "B5APR",
            TheoremId::LEVITZKI => "LEVITZKI",
            TheoremId::TH_8APR => "TH_8APR",
            TheoremId::COR_B8 => "COR_B8",
            TheoremId::A5APR => "A5APR",
            TheoremId::LEM_A6 => "LEM_A6",
            TheoremId::LEM_B6 => "LEM_B6",
            TheoremId::LEM_C6 => "LEM_C6",
            TheoremId::COR_C8 => "COR_C8",
        }
    }

    /// One-line statement of what is checked.
    pub fn statement(self) -> &'static str {
        match self {
            TheoremId::BI_1_4 => "R |G|-torsion free and t(R)^d = 0 imply R^(h(G)^d) = 0",
            TheoremId::MONT_1_7 => "R^G = 0 and a p-normal complement for every bad prime imply R nilpotent",
            TheoremId::N1 => "bad-prime conditions 1-3 imply R^l = 0 and (R^N(p))^m(p) = 0",
            TheoremId::C1_5 => "R semiprime and |G|-torsion free imply a non-degenerate trace",
            TheoremId::N2 => "R semiprime with bad-prime conditions 1-2 imply R^G semiprime and t(I)^i != 0",
            TheoremId::COR_A8 => "Goldie transfer and udim(R^G) <= udim(R) <= |G| udim(R^G)",
            TheoremId::TH_1_9 => "R |G|-torsion free implies n(R^G) = R^G ∩ n(R)",
            TheoremId::TH_4APR => "conditions on R/n(R) imply n(R^G) = R^G ∩ n(R)",
            TheoremId::RAD_1_4 => "|G|^-1 in R implies rad(R^G) = rad(R) ∩ R^G",
            TheoremId::B5APR => "conditions on R/rad(R) imply rad(R^G) = rad(R) ∩ R^G",
            TheoremId::LEVITZKI => "|G|^-1 in R and R semisimple imply R^G semisimple",
            TheoremId::TH_8APR => "R semisimple with a proper splitting group implies R^G semisimple",
            TheoremId::COR_B8 => "R semisimple iff R^G semisimple, with the udim bounds",
            TheoremId::A5APR => "rad(R) = 0 with a proper splitting group implies rad(R^G) = 0",
            TheoremId::LEM_A6 => "a splitting is proper iff e(I) = I ∩ R^G for all invariant I",
            TheoremId::LEM_B6 => "a splitting gives J^er = J and l(R^G/J) <= l(R/J^e)",
            TheoremId::LEM_C6 => "a proper splitting decomposes invariant ideals and bounds lengths",
            TheoremId::COR_C8 => "with |G|^-1 in R the averaging splitting satisfies the proper-splitting lemma",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Unknown(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "holds")]
    Holds,
    /// Holds because a stronger computed fact implies it.
    #[serde(rename = "holds (dominated)")]
    HoldsDominated,
    #[serde(rename = "fails")]
    Fails,
    #[serde(rename = "capped")]
    Capped,
}

impl Status {
    pub fn from_bool(b: bool) -> Status {
        if b {
            Status::Holds
        } else {
            Status::Fails
        }
    }

    pub fn is_true(self) -> bool {
        matches!(self, Status::Holds | Status::HoldsDominated)
    }

    /// Conjunction: any failure wins, then any cap, then domination.
    pub fn all(items: impl IntoIterator<Item = Status>) -> Status {
        let mut out = Status::Holds;
        for s in items {
            out = match (out, s) {
                (Status::Fails, _) | (_, Status::Fails) => Status::Fails,
                (Status::Capped, _) | (_, Status::Capped) => Status::Capped,
                (Status::HoldsDominated, _) | (_, Status::HoldsDominated) => Status::HoldsDominated,
                _ => Status::Holds,
            };
        }
        out
    }

    /// A finding that is true unless a witness was found, but only proven when exhaustive.
    pub fn exhaustive_or_capped(ok: bool, exhaustive: bool) -> Status {
        match (ok, exhaustive) {
            (false, _) => Status::Fails,
            (true, true) => Status::Holds,
            (true, false) => Status::Capped,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "holds",
            Status::HoldsDominated => "holds (dominated)",
            Status::Fails => "fails",
            Status::Capped => "capped",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "verified")]
    Verified,
    #[serde(rename = "vacuous")]
    Vacuous,
    #[serde(rename = "counterexample")]
    Counterexample,
    #[serde(rename = "skipped(cap)")]
    SkippedCap,
}

impl Verdict {
    pub fn glyph(self) -> &'static str {
        match self {
            Verdict::Verified => "V",
            Verdict::Vacuous => ".",
            Verdict::Counterexample => "X",
            Verdict::SkippedCap => "?",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Verified => "verified",
            Verdict::Vacuous => "vacuous",
            Verdict::Counterexample => "counterexample",
            Verdict::SkippedCap => "skipped(cap)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisResult {
    /// Number of the condition in the statement; 0 for unnumbered conditions.
    pub index: usize,
    /// Alternative branch this item belongs to; at least one branch must hold.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub branch: Option<usize>,
    pub text: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub masked: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub text: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConclusionResult {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    pub clauses: Vec<Clause>,
}

impl ConclusionResult {
    pub fn from_clauses(clauses: Vec<Clause>) -> Self {
        let status = Status::all(clauses.iter().map(|c| c.status));
        let witness = clauses
            .iter()
            .find(|c| c.status == status && status == Status::Fails)
            .map(|c| c.witness.clone().unwrap_or_else(|| c.text.clone()));
        ConclusionResult {
            status,
            witness,
            clauses,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub ring: String,
    pub group: String,
    pub hypotheses: Vec<HypothesisResult>,
    pub conclusion: ConclusionResult,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub explanation: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    pub caps: Caps,
    pub seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Truth {
    True,
    False,
    Unknown,
}

fn truth(h: &HypothesisResult) -> Truth {
    if h.masked || h.status.is_true() {
        Truth::True
    } else if h.status == Status::Fails {
        Truth::False
    } else {
        Truth::Unknown
    }
}

fn and(items: impl IntoIterator<Item = Truth>) -> Truth {
    let mut out = Truth::True;
    for t in items {
        match t {
            Truth::False => return Truth::False,
            Truth::Unknown => out = Truth::Unknown,
            Truth::True => {}
        }
    }
    out
}

/// Standing items must all hold; among branched items some branch must hold entirely.
fn hypotheses_truth(hyps: &[HypothesisResult]) -> Truth {
    let standing = and(hyps.iter().filter(|h| h.branch.is_none()).map(truth));
    let mut branches: Vec<usize> = hyps.iter().filter_map(|h| h.branch).collect();
    branches.sort();
    branches.dedup();
    if branches.is_empty() {
        return standing;
    }
    let values: Vec<Truth> = branches
        .iter()
        .map(|&b| and(hyps.iter().filter(|h| h.branch == Some(b)).map(truth)))
        .collect();
    let any = if values.contains(&Truth::True) {
        Truth::True
    } else if values.iter().all(|&v| v == Truth::False) {
        Truth::False
    } else {
        Truth::Unknown
    };
    and([standing, any])
}

pub(crate) fn verdict(hyps: &[HypothesisResult], conclusion: &ConclusionResult) -> (Verdict, Option<String>) {
    match hypotheses_truth(hyps) {
        Truth::False => {
            let failing: Vec<String> = hyps
                .iter()
                .filter(|h| truth(h) == Truth::False)
                .map(|h| match h.branch {
                    Some(b) => format!("hypothesis {} (alternative {b}) fails: {}", h.index, h.text),
                    None => format!("hypothesis {} fails: {}", h.index, h.text),
                })
                .collect();
            (Verdict::Vacuous, Some(failing.join("; ")))
        }
        Truth::Unknown => {
            let open: Vec<String> = hyps
                .iter()
                .filter(|h| truth(h) == Truth::Unknown)
                .map(|h| format!("hypothesis {} undecided within caps: {}", h.index, h.text))
                .collect();
            (Verdict::SkippedCap, Some(open.join("; ")))
        }
        Truth::True => match conclusion.status {
            Status::Holds | Status::HoldsDominated => (Verdict::Verified, None),
            Status::Fails => (
                Verdict::Counterexample,
                Some(format!(
                    "all hypotheses hold and the conclusion fails: {}",
                    conclusion.witness.clone().unwrap_or_default()
                )),
            ),
            Status::Capped => (
                Verdict::SkippedCap,
                Some("conclusion undecided within caps".to_string()),
            ),
        },
    }
}

/// `theorem:index` pairs that switch hypotheses off.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mask {
    pub theorem: TheoremId,
    pub index: usize,
}

impl FromStr for Mask {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let (t, i) = s
            .split_once(':')
            .ok_or_else(|| Error::Unknown(format!("mask `{s}` (expected theorem:index)")))?;
        Ok(Mask {
            theorem: t.parse()?,
            index: i
                .trim()
                .parse()
                .map_err(|_| Error::Unknown(format!("mask index `{i}`")))?,
        })
    }
}

pub fn fmt_element(x: &[u64]) -> String {
    let parts: Vec<String> = x.iter().map(u64::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn fmt_subgroup(s: &Subgroup) -> String {
    if s.is_zero() {
        return "0".to_string();
    }
    let gens: Vec<String> = s.generators().iter().map(|g| fmt_element(g)).collect();
    format!("order {} spanned by {}", s.order(), gens.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(index: usize, branch: Option<usize>, status: Status) -> HypothesisResult {
        HypothesisResult {
            index,
            branch,
            text: format!("h{index}"),
            status,
            witness: None,
            masked: false,
        }
    }

    fn concl(status: Status) -> ConclusionResult {
        ConclusionResult {
            status,
            witness: Some("w".into()),
            clauses: vec![],
        }
    }

    #[test]
    fn ids_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(id.as_str().parse::<TheoremId>().unwrap(), id);
            let json = serde_json::to_string(&id).unwrap();
            assert_eq!(json, format!("\"{}\"", id.as_str()));
        }
        assert!("BOGUS".parse::<TheoremId>().is_err());
        assert_eq!("n2:2".parse::<Mask>().unwrap(), Mask { theorem: TheoremId::N2, index: 2 });
    }

    #[test]
    fn verdict_table() {
        let holds = concl(Status::Holds);
        let fails = concl(Status::Fails);
        assert_eq!(verdict(&[h(0, None, Status::Holds)], &holds).0, Verdict::Verified);
        assert_eq!(verdict(&[h(0, None, Status::Holds)], &fails).0, Verdict::Counterexample);
        let (v, why) = verdict(&[h(1, None, Status::Fails)], &fails);
        assert_eq!(v, Verdict::Vacuous);
        assert!(why.unwrap().contains("hypothesis 1 fails"));
        assert_eq!(verdict(&[h(0, None, Status::Capped)], &holds).0, Verdict::SkippedCap);
        assert_eq!(verdict(&[h(0, None, Status::Holds)], &concl(Status::Capped)).0, Verdict::SkippedCap);
        // alternatives: one branch suffices
        let alt = [h(1, Some(1), Status::Fails), h(2, Some(2), Status::Holds)];
        assert_eq!(verdict(&alt, &holds).0, Verdict::Verified);
        let alt = [h(1, Some(1), Status::Fails), h(2, Some(2), Status::Capped)];
        assert_eq!(verdict(&alt, &holds).0, Verdict::SkippedCap);
        let alt = [h(1, Some(1), Status::Fails), h(2, Some(2), Status::Fails)];
        assert_eq!(verdict(&alt, &holds).0, Verdict::Vacuous);
        let mut masked = h(2, None, Status::Fails);
        masked.masked = true;
        assert_eq!(verdict(&[masked], &fails).0, Verdict::Counterexample);
    }

    #[test]
    fn status_conjunction() {
        assert_eq!(Status::all([]), Status::Holds);
        assert_eq!(Status::all([Status::Holds, Status::HoldsDominated]), Status::HoldsDominated);
        assert_eq!(Status::all([Status::Capped, Status::Fails]), Status::Fails);
        assert_eq!(Status::all([Status::Capped, Status::Holds]), Status::Capped);
        assert_eq!(serde_json::to_string(&Status::HoldsDominated).unwrap(), "\"holds (dominated)\"");
        assert_eq!(serde_json::to_string(&Verdict::SkippedCap).unwrap(), "\"skipped(cap)\"");
    }
}
