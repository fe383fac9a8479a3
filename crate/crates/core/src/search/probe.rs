//! Probing `Y_n ⊆ X_n`: products of sampled `Y_n` members with sampled
//! stable polynomials, and the findings files that record failures.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{default_root_scale, sample_rng, sample_stable, sample_y_member, MAX_Y_ATTEMPTS};
use crate::error::{Error, Result};
use crate::idealizer::{in_w, in_w_closure, in_y, in_y5_simplified};
use crate::poly::{format_rational, hadamard, Polynomial};
use crate::roots::{
    classify_halfplane, find_roots, verdict_from_root_set, HalfPlaneSummary, OracleVerdict,
    RootSet, DEFAULT_EPS, DEFAULT_ROOT_TOL,
};
use crate::stability::{hurwitz_minors, is_stable_routh_hurwitz, MinorSequence};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootEvidence {
    pub roots: RootSet,
    pub summary: HalfPlaneSummary,
    pub verdict: OracleVerdict,
}

impl RootEvidence {
    pub fn of(p: &Polynomial) -> Result<Self> {
        let roots = find_roots(p, DEFAULT_ROOT_TOL)?;
        let summary = classify_halfplane(&roots, DEFAULT_EPS);
        let verdict = verdict_from_root_set(&roots, DEFAULT_EPS);
        Ok(Self {
            roots,
            summary,
            verdict,
        })
    }
}

/// A pair `(f, g)` whose Hadamard product is not stable.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleRecord {
    pub sample_index: Option<u64>,
    pub f: Polynomial,
    pub g: Polynomial,
    pub product: Polynomial,
    pub g_memberships: BTreeMap<String, bool>,
    pub minor_evidence: MinorSequence,
    pub root_evidence: RootEvidence,
}

fn memberships(g: &Polynomial) -> Result<BTreeMap<String, bool>> {
    let n = g.degree();
    let mut out = BTreeMap::new();
    if g.is_positive() {
        if n >= 3 {
            out.insert("W".to_string(), in_w(n, g)?.member);
            out.insert("Wbar".to_string(), in_w_closure(n, g)?.member);
        }
        out.insert("Y".to_string(), in_y(n, g)?.member);
        if n == 5 {
            out.insert("Y5simplified".to_string(), in_y5_simplified(g)?.member);
        }
    }
    Ok(out)
}

impl CounterexampleRecord {
    pub fn build(f: &Polynomial, g: &Polynomial, sample_index: Option<u64>) -> Result<Self> {
        let product = hadamard(f, g)?;
        Ok(Self {
            sample_index,
            f: f.clone(),
            g: g.clone(),
            minor_evidence: hurwitz_minors(&product)?,
            root_evidence: RootEvidence::of(&product)?,
            g_memberships: memberships(g)?,
            product,
        })
    }

    /// Recomputes product, minors and memberships from `f` and `g`.
    pub fn verify(&self) -> Result<bool> {
        let product = hadamard(&self.f, &self.g)?;
        Ok(product == self.product
            && hurwitz_minors(&product)? == self.minor_evidence
            && !is_stable_routh_hurwitz(&product)?.stable
            && memberships(&self.g)? == self.g_memberships)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub records: Vec<CounterexampleRecord>,
    /// Proposals drawn while rejection-sampling `Y_n`.
    pub g_proposals: usize,
    pub g_accepted: usize,
    /// Stable products that the root oracle conclusively called unstable.
    pub oracle_disagreements: usize,
}

impl ProbeReport {
    pub fn acceptance_rate(&self) -> f64 {
        if self.g_proposals == 0 {
            0.0
        } else {
            self.g_accepted as f64 / self.g_proposals as f64
        }
    }

    /// Degrees where any record contradicts a proven theorem.
    pub fn is_theorem_violation(&self) -> bool {
        self.n <= 5 && !self.records.is_empty()
    }
}

struct ProbeOutcome {
    proposals: usize,
    record: Option<CounterexampleRecord>,
    oracle_disagreement: bool,
}

fn probe_one(n: usize, seed: u64, index: u64) -> Result<ProbeOutcome> {
    let mut rng = sample_rng(seed, index);
    let (g, proposals) = sample_y_member(n, &mut rng, MAX_Y_ATTEMPTS)?;
    let m = rng.gen_range(3..=n);
    let f = sample_stable(m, &default_root_scale(), &mut rng);
    let product = hadamard(&f, &g)?;
    let stable = is_stable_routh_hurwitz(&product)?.stable;
    if stable {
        let verdict = RootEvidence::of(&product)?.verdict;
        return Ok(ProbeOutcome {
            proposals,
            record: None,
            oracle_disagreement: matches!(verdict, OracleVerdict::NotQuasiStable),
        });
    }
    Ok(ProbeOutcome {
        proposals,
        record: Some(CounterexampleRecord::build(&f, &g, Some(index))?),
        oracle_disagreement: false,
    })
}

/// Draws `samples` pairs `(f, g)` with `g ∈ Y_n` and `f` stable of degree
/// `3..=n`, and records every pair whose product is not stable.
pub fn probe_conjecture(n: usize, samples: usize, seed: u64) -> Result<ProbeReport> {
    if n < 3 {
        return Err(Error::InvalidDegree(format!(
            "probing needs n >= 3, got {n}"
        )));
    }
    let outcomes: Vec<ProbeOutcome> = (0..samples as u64)
        .into_par_iter()
        .map(|i| probe_one(n, seed, i))
        .collect::<Result<_>>()?;
    let g_proposals = outcomes.iter().map(|o| o.proposals).sum();
    let oracle_disagreements = outcomes.iter().filter(|o| o.oracle_disagreement).count();
    let records: Vec<CounterexampleRecord> =
        outcomes.into_iter().filter_map(|o| o.record).collect();
    if !records.is_empty() {
        log::warn!("{} unstable products for n = {n}", records.len());
    }
    Ok(ProbeReport {
        n,
        samples,
        seed,
        records,
        g_proposals,
        g_accepted: samples,
        oracle_disagreements,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManifestCounts {
    pub samples: usize,
    pub g_proposals: usize,
    pub g_accepted: usize,
    pub records: usize,
    pub oracle_disagreements: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManifestConfig {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub root_scale: String,
    pub f_degrees: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub config: ManifestConfig,
    pub counts: ManifestCounts,
    pub acceptance_rate: f64,
    /// File name of the JSON-lines findings, relative to the manifest.
    pub findings_file: String,
}

/// `<out>` with its extension replaced by `manifest.json`.
pub fn manifest_path(out: &Path) -> PathBuf {
    out.with_extension("manifest.json")
}

/// Writes the records as JSON lines to `out` and the manifest next to it.
/// Returns the manifest path.
pub fn write_findings(report: &ProbeReport, out: &Path) -> Result<PathBuf> {
    let mut w = BufWriter::new(fs::File::create(out)?);
    for r in &report.records {
        serde_json::to_writer(&mut w, r)?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    let manifest = Manifest {
        config: ManifestConfig {
            n: report.n,
            samples: report.samples,
            seed: report.seed,
            root_scale: format_rational(&default_root_scale()),
            f_degrees: (3, report.n),
        },
        counts: ManifestCounts {
            samples: report.samples,
            g_proposals: report.g_proposals,
            g_accepted: report.g_accepted,
            records: report.records.len(),
            oracle_disagreements: report.oracle_disagreements,
        },
        acceptance_rate: report.acceptance_rate(),
        findings_file: out
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default(),
    };
    let path = manifest_path(out);
    fs::write(&path, serde_json::to_string_pretty(&manifest)?)?;
    Ok(path)
}

pub fn read_findings(path: &Path) -> Result<Vec<CounterexampleRecord>> {
    let reader = BufReader::new(fs::File::open(path)?);
    let mut out = Vec::new();
    for line in reader.lines() {
        let line = line?;
        if !line.trim().is_empty() {
            out.push(serde_json::from_str(&line)?);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ManifestCheck {
    pub manifest: Manifest,
    pub records_found: usize,
    pub counts_match: bool,
    pub all_records_verify: bool,
}

impl ManifestCheck {
    pub fn ok(&self) -> bool {
        self.counts_match && self.all_records_verify
    }
}

/// Re-reads a manifest and its findings file and re-verifies every record.
pub fn verify_manifest(manifest: &Path) -> Result<ManifestCheck> {
    let m: Manifest = serde_json::from_str(&fs::read_to_string(manifest)?)?;
    let dir = manifest.parent().unwrap_or_else(|| Path::new("."));
    let records = read_findings(&dir.join(&m.findings_file))?;
    let mut all_records_verify = true;
    for r in &records {
        all_records_verify &= r.verify()?;
    }
    Ok(ManifestCheck {
        counts_match: records.len() == m.counts.records
            && m.counts.g_accepted == m.config.samples
            && m.counts.g_proposals >= m.counts.g_accepted,
        records_found: records.len(),
        all_records_verify,
        manifest: m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_round_trip() {
        let f = Polynomial::from_i64s(&[16, 8, 164, 80, 230, 100]).unwrap();
        let g = Polynomial::from_strs(&["4.66", "6.4", "6.62", "8.96", "6.4", "6.17"]).unwrap();
        let r = CounterexampleRecord::build(&f, &g, None).unwrap();
        assert!(r.verify().unwrap());
        assert_eq!(r.g_memberships["W"], true);
        assert_eq!(r.g_memberships["Y"], false);
        let js = serde_json::to_string(&r).unwrap();
        let back: CounterexampleRecord = serde_json::from_str(&js).unwrap();
        assert!(back.verify().unwrap());
        let mut bad = back.clone();
        bad.product = f.clone();
        assert!(!bad.verify().unwrap());
    }

    #[test]
    fn small_probe_is_clean_and_deterministic() {
        let a = probe_conjecture(4, 50, 9).unwrap();
        assert!(a.records.is_empty());
        assert_eq!(a.g_accepted, 50);
        let b = probe_conjecture(4, 50, 9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn manifest_files() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("f.jsonl");
        let mut report = probe_conjecture(3, 10, 1).unwrap();
        let f = Polynomial::from_i64s(&[16, 8, 164, 80, 230, 100]).unwrap();
        let g = Polynomial::from_strs(&["4.66", "6.4", "6.62", "8.96", "6.4", "6.17"]).unwrap();
        report
            .records
            .push(CounterexampleRecord::build(&f, &g, None).unwrap());
        let path = write_findings(&report, &out).unwrap();
        assert_eq!(path, dir.path().join("f.manifest.json"));
        let check = verify_manifest(&path).unwrap();
        assert!(check.ok());
        assert_eq!(check.records_found, 1);
    }
}
