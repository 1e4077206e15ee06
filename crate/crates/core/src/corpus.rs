//! The identity catalog: JSON loading, schema checks and full validation.

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jacobi::{
    derive_identity, four2_terms, four_signed, match_up_to_scaling, quintuple_instance,
    reduce_term, verify_zero_combination, FourParams,
};
use crate::notation::parse_equation;
use crate::partitions::{verify_identity, Kind, PartitionIdentity, VerifyReport};
use crate::theta::{FMono, ThetaMonomial};

const SHIPPED: &str = include_str!("../data/corpus.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProofKind {
    Direct,
    Iteration,
    Quintuple,
    Special,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepSource {
    /// Four-parameter identity; `params` are `[a,b,c,x,y]`, `n` the base.
    Four,
    /// Base-`2n` two-term form; the equation is `T1 + T2 = 1` up to scaling.
    Four2,
    /// Quintuple product, all-bracket form; `params` is `[ex]`.
    Qp,
    /// A product rearrangement, checked only as a series identity.
    Rearrangement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuxStep {
    pub source: StepSource,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signs: Option<Vec<i32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    pub equation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub label: String,
    pub modulus: i64,
    pub kind: Kind,
    pub shift: i64,
    #[serde(rename = "S")]
    pub s: Vec<i64>,
    #[serde(rename = "T")]
    pub t: Vec<i64>,
    pub proof: ProofKind,
    pub params: Option<Vec<i64>>,
    pub n: Option<i64>,
    pub aux_steps: Option<Vec<AuxStep>>,
    pub notes: String,
}

impl CorpusEntry {
    pub fn identity(&self) -> Result<PartitionIdentity> {
        PartitionIdentity::new(
            self.modulus,
            self.s.clone(),
            self.t.clone(),
            self.kind,
            self.shift,
        )
    }

    /// The five derivation parameters of a direct entry.
    pub fn four_params(&self) -> Option<FourParams> {
        match (self.proof, &self.params, self.n) {
            (ProofKind::Direct, Some(p), Some(n)) => FourParams::from_slice(p, n).ok(),
            _ => None,
        }
    }

    fn schema(&self, message: impl Into<String>) -> Error {
        Error::SchemaViolation {
            label: self.label.clone(),
            message: message.into(),
        }
    }

    fn check_schema(&self) -> Result<()> {
        self.identity().map_err(|e| self.schema(e.to_string()))?;
        if self.s.windows(2).any(|w| w[0] >= w[1]) || self.t.windows(2).any(|w| w[0] >= w[1]) {
            return Err(self.schema("residues must be strictly ascending"));
        }
        let has_params = self.params.is_some() && self.n.is_some();
        let wants_params = matches!(self.proof, ProofKind::Direct | ProofKind::Quintuple);
        if has_params != wants_params {
            return Err(
                self.schema("params and n are required exactly for direct/quintuple proofs")
            );
        }
        if self.proof == ProofKind::Direct && self.four_params().is_none() {
            return Err(self.schema("direct params must be five positive coprime exponents"));
        }
        let wants_steps = self.proof == ProofKind::Iteration;
        match &self.aux_steps {
            Some(steps) if wants_steps && !steps.is_empty() => {}
            None if !wants_steps => {}
            _ => return Err(self.schema("aux_steps are required exactly for iteration proofs")),
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub total: usize,
    pub per_modulus: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Corpus {
    pub manifest: Manifest,
    pub entries: Vec<CorpusEntry>,
}

impl Corpus {
    /// The catalog compiled into the library.
    pub fn shipped() -> Corpus {
        parse_corpus(SHIPPED).expect("shipped corpus is valid")
    }

    pub fn moduli(&self) -> Vec<i64> {
        let mut m: Vec<i64> = self.entries.iter().map(|e| e.modulus).collect();
        m.sort_unstable();
        m.dedup();
        m
    }

    pub fn with_modulus(&self, modulus: i64) -> Vec<&CorpusEntry> {
        self.entries
            .iter()
            .filter(|e| e.modulus == modulus)
            .collect()
    }

    pub fn get(&self, label: &str) -> Option<&CorpusEntry> {
        self.entries.iter().find(|e| e.label == label)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("corpus serializes")
    }
}

/// Parses and structurally validates a corpus document.
pub fn parse_corpus(text: &str) -> Result<Corpus> {
    let corpus: Corpus = serde_json::from_str(text).map_err(|e| {
        Error::parse(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    let mut seen = HashSet::new();
    for e in &corpus.entries {
        if !seen.insert(e.label.as_str()) {
            return Err(Error::DuplicateLabel(e.label.clone()));
        }
        e.check_schema()?;
    }
    let mut per = BTreeMap::new();
    for e in &corpus.entries {
        *per.entry(e.modulus.to_string()).or_insert(0usize) += 1;
    }
    if corpus.manifest.total != corpus.entries.len() || corpus.manifest.per_modulus != per {
        return Err(Error::SchemaViolation {
            label: "manifest".into(),
            message: format!(
                "manifest lists {} entries, file has {}",
                corpus.manifest.total,
                corpus.entries.len()
            ),
        });
    }
    Ok(corpus)
}

pub fn load_corpus(path: impl AsRef<Path>) -> Result<Corpus> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_corpus(&text)
}

/// Outcome of one auxiliary proof step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepReport {
    pub index: usize,
    pub source: StepSource,
    /// For instance-backed steps: the printed equation equals the generated
    /// instance up to an overall `±q^k`.
    pub reproduced: Option<bool>,
    pub pass: bool,
    pub first_failure: Option<i64>,
    pub error: Option<String>,
}

fn step_instance(step: &AuxStep) -> Result<Option<Vec<ThetaMonomial>>> {
    if step.source == StepSource::Rearrangement {
        return Ok(None);
    }
    let params = step.params.as_deref().unwrap_or(&[]);
    let n = step
        .n
        .ok_or_else(|| Error::InvalidParams("step has no base".into()))?;
    match step.source {
        StepSource::Rearrangement => unreachable!(),
        StepSource::Four => {
            let p = FourParams::from_slice(params, n)?;
            let mut signed = p.signed();
            if let Some(signs) = &step.signs {
                if signs.len() != 5 {
                    return Err(Error::InvalidParams("expected 5 signs".into()));
                }
                for (arg, &s) in signed.args.iter_mut().zip(signs) {
                    *arg = FMono::new(s, arg.exp);
                }
            }
            Ok(Some(four_signed(&signed)?.zero_combination()))
        }
        StepSource::Four2 => {
            let (t1, t2) = four2_terms(&FourParams::from_slice(params, n)?)?;
            Ok(Some(vec![
                reduce_term(&t1)?,
                reduce_term(&t2)?,
                ThetaMonomial::scalar(-1, 0),
            ]))
        }
        StepSource::Qp => match params {
            [ex] => Ok(Some(
                quintuple_instance(*ex, n)?.bracket_form.zero_combination(),
            )),
            _ => Err(Error::InvalidParams("qp step takes one exponent".into())),
        },
    }
}

/// Parses a step's printed equation, matches it against the generated
/// instance (if any) and checks it as a series identity.
pub fn check_step(index: usize, step: &AuxStep, order: i64) -> StepReport {
    let mut report = StepReport {
        index,
        source: step.source,
        reproduced: None,
        pass: false,
        first_failure: None,
        error: None,
    };
    let run = || -> Result<(Option<bool>, crate::jacobi::ZeroCheck)> {
        let printed = parse_equation(&step.equation)?;
        let reproduced =
            step_instance(step)?.map(|inst| match_up_to_scaling(&printed, &inst).is_some());
        Ok((reproduced, verify_zero_combination(&printed, order)?))
    };
    match run() {
        Ok((reproduced, check)) => {
            report.reproduced = reproduced;
            report.first_failure = check.first_failure;
            report.pass = check.pass && reproduced != Some(false);
        }
        Err(e) => report.error = Some(e.to_string()),
    }
    report
}

/// Outcome of validating one catalog entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryReport {
    pub label: String,
    pub pass: bool,
    pub verify: Option<VerifyReport>,
    /// Direct entries: whether the parameters re-derive the stored identity.
    pub rederived: Option<bool>,
    pub steps: Vec<StepReport>,
    pub details: Vec<String>,
}

pub fn validate_entry(entry: &CorpusEntry, order: i64) -> EntryReport {
    let mut details = Vec::new();
    let verify = entry
        .identity()
        .and_then(|id| verify_identity(&id, order))
        .map_err(|e| details.push(e.to_string()))
        .ok();
    if let Some(v) = &verify {
        if let (false, Some(w)) = (v.pass, &v.witness) {
            details.push(format!(
                "fails at n = {}: p(S) = {}, p(T) = {}",
                w.n, w.p_s, w.p_t
            ));
        }
    }
    let rederived = match entry.proof {
        ProofKind::Direct => {
            let ok = match entry.four_params().map(|p| derive_identity(&p)) {
                Some(Ok(d)) => entry.identity().ok() == Some(d.identity),
                Some(Err(reason)) => {
                    details.push(format!("derivation failed: {reason}"));
                    false
                }
                None => false,
            };
            if !ok {
                details.push("parameters do not re-derive the stored identity".into());
            }
            Some(ok)
        }
        ProofKind::Quintuple => {
            let ok = match (entry.params.as_deref(), entry.n) {
                (Some([ex]), Some(n)) => quintuple_instance(*ex, n)
                    .and_then(|q| q.bracket_form.verify(order))
                    .map(|c| c.pass)
                    .unwrap_or(false),
                _ => false,
            };
            Some(ok)
        }
        _ => None,
    };
    let steps: Vec<StepReport> = entry
        .aux_steps
        .iter()
        .flatten()
        .enumerate()
        .map(|(i, s)| check_step(i, s, order))
        .collect();
    for s in steps.iter().filter(|s| !s.pass) {
        details.push(format!("aux step {} ({:?}) failed", s.index, s.source));
    }
    let pass = verify.as_ref().is_some_and(|v| v.pass)
        && rederived != Some(false)
        && steps.iter().all(|s| s.pass);
    EntryReport {
        label: entry.label.clone(),
        pass,
        verify,
        rederived,
        steps,
        details,
    }
}

/// Validates every entry in parallel; output order follows the input.
pub fn validate_corpus(entries: &[&CorpusEntry], order: i64) -> Vec<EntryReport> {
    entries
        .par_iter()
        .map(|e| validate_entry(e, order))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_loads_with_manifest() {
        let c = Corpus::shipped();
        assert_eq!(c.entries.len(), 238);
        assert_eq!(c.with_modulus(46).len(), 11);
        assert_eq!(c.moduli().len(), 18);
    }

    #[test]
    fn round_trip() {
        let c = Corpus::shipped();
        assert_eq!(parse_corpus(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn schema_errors() {
        let c = Corpus::shipped();
        let mut dup = c.clone();
        dup.entries[1].label = dup.entries[0].label.clone();
        assert!(matches!(
            parse_corpus(&dup.to_json()),
            Err(Error::DuplicateLabel(_))
        ));
        let mut wide = c.clone();
        wide.entries[0].s.push(17);
        assert!(matches!(
            parse_corpus(&wide.to_json()),
            Err(Error::SchemaViolation { .. })
        ));
        assert!(matches!(parse_corpus("{"), Err(Error::Parse { .. })));
    }

    #[test]
    fn first_entry_validates() {
        let c = Corpus::shipped();
        let r = validate_entry(c.get("Thm-32.1").unwrap(), 300);
        assert!(r.pass, "{r:?}");
        assert_eq!(r.rederived, Some(true));
    }
}
