//! Seeded property suites. Every sample draws from its own stream, so a
//! report depends only on `(samples, seed)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{
    default_root_scale, sample_binomial_preimage, sample_for_class, sample_positive,
    sample_quasi_stable, sample_quasi_stable_branch, sample_rng, sample_stable, sample_w_closure,
    sample_y_member, QuasiBranch, SampleRng, MAX_Y_ATTEMPTS,
};
use crate::error::{Error, Result};
use crate::idealizer::{
    in_w_closure, in_y, in_y4_simplified, in_y5_simplified, lemma1_condition, lemma1_statement,
    lemma2_condition, lemma2_statement, lemma3_ratio, special_case_check, special_case_from_g,
    special_case_hypothesis, Lemma3Ratio, LemmaClause, Monotonicity,
};
use crate::poly::{even_odd_split, hadamard, Polynomial};
use crate::roots::{
    find_roots, verdict_from_root_set, OracleVerdict, DEFAULT_EPS, DEFAULT_ROOT_TOL,
};
use crate::stability::{
    garloff_wagner_case, hermite_biehler_classify, hermite_kakeya_probe, is_stable_lienard_chipart,
    is_stable_routh_hurwitz, proportionality_constant, quasi_stability_agt, HermiteBiehlerClass,
    InputClass, LienardChipartVariant, ProductCase, StabilityKind,
};

/// Root-oracle comparisons are skipped when a root lies closer than this to
/// the imaginary axis.
pub const ORACLE_MARGIN: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Criteria,
    Gw,
    Hb,
    Lemmas,
    Theorems,
    Lemma3,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Criteria,
        Suite::Gw,
        Suite::Hb,
        Suite::Lemmas,
        Suite::Theorems,
        Suite::Lemma3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Criteria => "criteria",
            Suite::Gw => "gw",
            Suite::Hb => "hb",
            Suite::Lemmas => "lemmas",
            Suite::Theorems => "theorems",
            Suite::Lemma3 => "lemma3",
        }
    }

    fn tag(self) -> u64 {
        self as u64 + 1
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub index: u64,
    pub description: String,
    pub polys: Vec<Polynomial>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub samples: usize,
    pub seed: u64,
    pub violations: Vec<Violation>,
    pub counters: BTreeMap<String, usize>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn counter(&self, key: &str) -> usize {
        self.counters.get(key).copied().unwrap_or(0)
    }
}

#[derive(Default)]
struct Tally {
    counters: BTreeMap<String, usize>,
    violations: Vec<Violation>,
}

impl Tally {
    fn count(&mut self, key: impl Into<String>) {
        *self.counters.entry(key.into()).or_default() += 1;
    }

    fn violate(&mut self, index: u64, description: impl Into<String>, polys: &[&Polynomial]) {
        self.violations.push(Violation {
            index,
            description: description.into(),
            polys: polys.iter().map(|p| (*p).clone()).collect(),
        });
    }

    fn merge(&mut self, other: Tally) {
        for (k, v) in other.counters {
            *self.counters.entry(k).or_default() += v;
        }
        self.violations.extend(other.violations);
    }
}

/// Stream id: suite tag, sub-check, sample index.
fn stream(suite: Suite, part: u64, index: u64) -> u64 {
    (suite.tag() << 56) | (part << 40) | index
}

/// Runs `check` for every index in parallel and merges results in index order.
/// An `Err` from a check is itself a violation.
fn run_parallel<F>(suite: Suite, part: u64, samples: usize, seed: u64, check: F) -> Tally
where
    F: Fn(u64, &mut SampleRng, &mut Tally) -> Result<()> + Sync,
{
    let parts: Vec<Tally> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, stream(suite, part, i));
            let mut t = Tally::default();
            if let Err(e) = check(i, &mut rng, &mut t) {
                t.violate(i, format!("internal error: {e}"), &[]);
            }
            t
        })
        .collect();
    let mut out = Tally::default();
    for t in parts {
        out.merge(t);
    }
    out
}

fn finish(suite: Suite, samples: usize, seed: u64, tally: Tally) -> SuiteReport {
    if !tally.violations.is_empty() {
        log::warn!("{suite}: {} violations", tally.violations.len());
    }
    SuiteReport {
        suite,
        samples,
        seed,
        violations: tally.violations,
        counters: tally.counters,
    }
}

/// Oracle stability where the roots are far enough from the axis to trust.
fn oracle_stable(f: &Polynomial) -> Result<Option<bool>> {
    let rs = find_roots(f, DEFAULT_ROOT_TOL)?;
    if !rs.reliable || rs.axis_margin() <= ORACLE_MARGIN {
        return Ok(None);
    }
    Ok(match verdict_from_root_set(&rs, DEFAULT_EPS) {
        OracleVerdict::Inconclusive => None,
        v => Some(v == OracleVerdict::Stable),
    })
}

/// A quasi-stable polynomial of degree `n` with all coefficients positive.
fn positive_quasi_stable(n: usize, rng: &mut SampleRng) -> Polynomial {
    let scale = default_root_scale();
    for _ in 0..16 {
        let (f, _) = sample_quasi_stable(n, &scale, rng);
        if f.is_positive() {
            return f;
        }
    }
    sample_stable(n, &scale, rng)
}

// ---------------------------------------------------------------- criteria

/// Routh–Hurwitz, both Liénard–Chipart variants, AGT and the root oracle
/// agree on positive polynomials of degree 2 to 8. `samples` is per degree.
pub fn suite_criteria(samples: usize, seed: u64) -> SuiteReport {
    let suite = Suite::Criteria;
    let mut tally = Tally::default();
    for n in 2..=8usize {
        tally.merge(run_parallel(suite, n as u64, samples, seed, |i, rng, t| {
            let scale = default_root_scale();
            let f = match i % 3 {
                0 => sample_stable(n, &scale, rng),
                1 => sample_positive(n, rng),
                _ => positive_quasi_stable(n, rng),
            };
            let rh = is_stable_routh_hurwitz(&f)?.stable;
            let even = is_stable_lienard_chipart(&f, LienardChipartVariant::EvenMinors)?;
            let odd = is_stable_lienard_chipart(&f, LienardChipartVariant::OddMinors)?;
            let agt = quasi_stability_agt(&f)?.is_stable();
            t.count(if rh { "stable" } else { "unstable" });
            if rh != even || rh != odd || rh != agt {
                t.violate(
                    i,
                    format!("rh={rh} lc_even={even} lc_odd={odd} agt={agt}"),
                    &[&f],
                );
            }
            match oracle_stable(&f)? {
                Some(o) => {
                    t.count("oracle_compared");
                    if o != rh {
                        t.violate(i, format!("rh={rh} oracle={o}"), &[&f]);
                    }
                }
                None => t.count("oracle_skipped"),
            }
            Ok(())
        }));
    }
    finish(suite, samples, seed, tally)
}

// ---------------------------------------------------------------------- gw

const MAX_GW_DEGREE: usize = 7;

/// Degrees for a pair of classes such that the truncated product keeps its
/// degree: a pure-even factor of higher degree has zero odd coefficients.
fn gw_degrees(row: InputClass, col: InputClass, rng: &mut SampleRng) -> (usize, usize) {
    let rows = super::degrees_for_class(row, 1, MAX_GW_DEGREE);
    let cols = super::degrees_for_class(col, 1, MAX_GW_DEGREE);
    loop {
        let a = *rows.choose(rng).expect("nonempty");
        let b = *cols.choose(rng).expect("nonempty");
        let k = a.min(b);
        let drops = (row == InputClass::OddPartZero && a > k && k % 2 == 1)
            || (col == InputClass::OddPartZero && b > k && k % 2 == 1);
        if !drops {
            return (a, b);
        }
    }
}

/// Hadamard products of quasi-stable pairs, with every cell of the case
/// table visited in turn.
pub fn suite_gw(samples: usize, seed: u64) -> SuiteReport {
    let suite = Suite::Gw;
    let tally = run_parallel(suite, 0, samples, seed, |i, rng, t| {
        let cell = i as usize % 16;
        let row = InputClass::ALL[cell / 4];
        let col = InputClass::ALL[cell % 4];
        let (a, b) = gw_degrees(row, col, rng);
        let scale = default_root_scale();
        let f = sample_for_class(row, a, &scale, rng);
        let p = sample_for_class(col, b, &scale, rng);
        let got = garloff_wagner_case(&f, &p)?;
        t.count(format!("cell:{:?}x{:?}", got.row, got.col));
        if got.row != row || got.col != col {
            t.violate(
                i,
                format!(
                    "sampler aimed at {row:?}x{col:?}, got {:?}x{:?}",
                    got.row, got.col
                ),
                &[&f, &p],
            );
        }
        let product = hadamard(&f, &p)?;
        let v = quasi_stability_agt(&product)?;
        if !v.is_quasi_stable() {
            t.violate(i, "product not quasi-stable", &[&f, &p, &product]);
            return Ok(());
        }
        let parts = even_odd_split(&product);
        let ok = match got.case {
            ProductCase::OddPartVanishes => parts.odd.is_zero(),
            ProductCase::ProportionalParts => proportionality_constant(&parts).is_some(),
            ProductCase::GenericQuasiStable | ProductCase::StrictlyStable => v.is_stable(),
        };
        if !ok {
            t.violate(
                i,
                format!("product does not match {:?}", got.case),
                &[&f, &p, &product],
            );
        }
        Ok(())
    });
    finish(suite, samples, seed, tally)
}

// ---------------------------------------------------------------------- hb

const HK_TRIALS: usize = 8;

/// Hermite–Biehler classification against AGT, and the pencil spot check.
pub fn suite_hb(samples: usize, seed: u64) -> SuiteReport {
    let suite = Suite::Hb;
    let tally = run_parallel(suite, 0, samples, seed, |i, rng, t| {
        let n = rng.gen_range(1..=8usize);
        let scale = default_root_scale();
        let f = match i % 3 {
            0 => sample_stable(n, &scale, rng),
            1 => sample_positive(n, rng),
            _ => sample_quasi_stable(n, &scale, rng).0,
        };
        let class = hermite_biehler_classify(&f);
        let v = quasi_stability_agt(&f)?;
        t.count(class.name());
        let consistent = match &class {
            HermiteBiehlerClass::NotQuasiStable => v.kind == StabilityKind::NotQuasiStable,
            HermiteBiehlerClass::StrictlyStable => v.kind == StabilityKind::Stable,
            HermiteBiehlerClass::PureImaginary => {
                v.kind == StabilityKind::QuasiStable && v.index == 0
            }
            HermiteBiehlerClass::OneNegRestImaginary { .. } => {
                v.kind == StabilityKind::QuasiStable && v.index == 1
            }
            HermiteBiehlerClass::QuasiStableGeneric => v.kind == StabilityKind::QuasiStable,
        };
        if !consistent {
            t.violate(
                i,
                format!("hb={} agt={:?} index={}", class.name(), v.kind, v.index),
                &[&f],
            );
        }
        if v.is_stable() {
            if let Some(probe) = hermite_kakeya_probe(&f, HK_TRIALS, rng) {
                t.count("hk_probed");
                if probe.failures > 0 {
                    t.violate(i, format!("{} pencil failures", probe.failures), &[&f]);
                }
            }
        }
        Ok(())
    });
    finish(suite, samples, seed, tally)
}

// ------------------------------------------------------------------ lemmas

fn lemma1_sample(i: u64, rng: &mut SampleRng) -> Polynomial {
    let scale = default_root_scale();
    match i % 4 {
        0 => sample_stable(5, &scale, rng),
        1 => sample_positive(5, rng),
        2 => positive_quasi_stable(5, rng),
        _ => {
            let branch = if rng.gen_bool(0.5) {
                QuasiBranch::OneNegative
            } else {
                QuasiBranch::Generic
            };
            let f = sample_quasi_stable_branch(5, branch, &scale, rng);
            if f.is_positive() {
                f
            } else {
                sample_stable(5, &scale, rng)
            }
        }
    }
}

/// `g = h * (1, 1, 1/2, 1/2, 1, 1)`, so that `g * Q^5 = h`.
fn undo_q5(h: &Polynomial) -> Result<Polynomial> {
    let inv = Polynomial::from_strs(&["1", "1", "1/2", "1/2", "1", "1"])?;
    hadamard(h, &inv)
}

fn lemma2_sample(i: u64, rng: &mut SampleRng) -> Result<Polynomial> {
    Ok(match i % 4 {
        0 => sample_positive(5, rng),
        1 => sample_w_closure(5, 0.2, rng),
        2 => undo_q5(&positive_quasi_stable(5, rng))?,
        _ => undo_q5(&sample_stable(5, &default_root_scale(), rng))?,
    })
}

const CLAUSES: [LemmaClause; 3] = [LemmaClause::Ii, LemmaClause::Iii, LemmaClause::Iv];

/// Four-way equivalences for the quintic ratio characterisations, weak and
/// strict for the first, weak for the second.
pub fn suite_lemmas(samples: usize, seed: u64) -> SuiteReport {
    let suite = Suite::Lemmas;
    let mut tally = run_parallel(suite, 1, samples, seed, |i, rng, t| {
        let f = lemma1_sample(i, rng);
        for strict in [false, true] {
            let s = lemma1_statement(&f, strict)?;
            t.count(format!(
                "lemma1_{}_{}",
                if strict { "strict" } else { "weak" },
                s
            ));
            for c in CLAUSES {
                if lemma1_condition(&f, c, strict)? != s {
                    t.violate(
                        i,
                        format!("lemma1 strict={strict} clause {c:?} disagrees with (i)={s}"),
                        &[&f],
                    );
                }
            }
        }
        Ok(())
    });
    tally.merge(run_parallel(suite, 2, samples, seed, |i, rng, t| {
        let g = lemma2_sample(i, rng)?;
        let s = lemma2_statement(&g)?;
        t.count(format!("lemma2_{s}"));
        for c in CLAUSES {
            if lemma2_condition(&g, c)? != s {
                t.violate(
                    i,
                    format!("lemma2 clause {c:?} disagrees with (i)={s}"),
                    &[&g],
                );
            }
        }
        Ok(())
    }));
    finish(suite, samples, seed, tally)
}

// ---------------------------------------------------------------- theorems

fn structured_or_free(n: usize, i: u64, rng: &mut SampleRng) -> Polynomial {
    if i % 2 == 0 {
        sample_positive(n, rng)
    } else {
        sample_w_closure(n, 0.2, rng)
    }
}

/// The parts of the theorem suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremCheck {
    /// `in_y(4)`, the two-inequality test and `W̄_4` agree.
    Y4Agreement,
    /// `in_y(5)` and the two-product test agree.
    Y5Agreement,
    /// `g ∈ W̄_4` preserves quasi-stability and stability in degree `<= 4`.
    Wbar4Closure,
    /// `g ∈ Y_5` preserves stability in degree 5.
    Y5Stability,
    /// `G = (x+1) g(x^2)` with the hypothesis preserves quasi-stability.
    SpecialCase,
}

impl TheoremCheck {
    pub const ALL: [TheoremCheck; 5] = [
        TheoremCheck::Y4Agreement,
        TheoremCheck::Y5Agreement,
        TheoremCheck::Wbar4Closure,
        TheoremCheck::Y5Stability,
        TheoremCheck::SpecialCase,
    ];
}

/// The quartic and quintic idealizer theorems and the odd special case.
pub fn suite_theorems(samples: usize, seed: u64) -> SuiteReport {
    suite_theorem_checks(&TheoremCheck::ALL, samples, seed)
}

/// The selected parts of [`suite_theorems`], each with `samples` draws.
pub fn suite_theorem_checks(checks: &[TheoremCheck], samples: usize, seed: u64) -> SuiteReport {
    let suite = Suite::Theorems;
    let mut tally = Tally::default();
    for &check in checks {
        tally.merge(theorem_check(check, samples, seed));
    }
    finish(suite, samples, seed, tally)
}

fn theorem_check(check: TheoremCheck, samples: usize, seed: u64) -> Tally {
    let suite = Suite::Theorems;
    let scale = default_root_scale();
    match check {
        TheoremCheck::Y4Agreement => run_parallel(suite, 1, samples, seed, |i, rng, t| {
            let g = structured_or_free(4, i, rng);
            let y = in_y(4, &g)?.member;
            let s = in_y4_simplified(&g)?.member;
            let w = in_w_closure(4, &g)?.member;
            t.count(format!("y4_{y}"));
            if y != s || y != w {
                t.violate(i, format!("Y4: in_y={y} simplified={s} wbar={w}"), &[&g]);
            }
            Ok(())
        }),
        TheoremCheck::Y5Agreement => run_parallel(suite, 2, samples, seed, |i, rng, t| {
            let g = structured_or_free(5, i, rng);
            let y = in_y(5, &g)?.member;
            let s = in_y5_simplified(&g)?.member;
            t.count(format!("y5_{y}"));
            if y != s {
                t.violate(i, format!("Y5: in_y={y} simplified={s}"), &[&g]);
            }
            Ok(())
        }),
        TheoremCheck::Wbar4Closure => run_parallel(suite, 3, samples, seed, |i, rng, t| {
            let g = sample_w_closure(4, 0.2, rng);
            let m = rng.gen_range(1..=4usize);
            let (f, branch) = sample_quasi_stable(m, &scale, rng);
            let v = quasi_stability_agt(&f)?;
            t.count(format!("wbar4_f_index_{}", v.index));
            t.count(format!("wbar4_branch_{branch:?}"));
            let product = hadamard(&f, &g)?;
            let pv = quasi_stability_agt(&product)?;
            if !pv.is_quasi_stable() {
                t.violate(
                    i,
                    "g in Wbar4, f quasi-stable, product not quasi-stable",
                    &[&f, &g, &product],
                );
            } else if v.is_stable() && !pv.is_stable() {
                t.violate(
                    i,
                    "g in Wbar4, f stable, product not stable",
                    &[&f, &g, &product],
                );
            }
            Ok(())
        }),
        TheoremCheck::Y5Stability => run_parallel(suite, 4, samples, seed, |i, rng, t| {
            let (g, proposals) = sample_y_member(5, rng, MAX_Y_ATTEMPTS)?;
            *t.counters.entry("y5_proposals".into()).or_default() += proposals;
            let f = sample_stable(5, &scale, rng);
            let product = hadamard(&f, &g)?;
            if !is_stable_routh_hurwitz(&product)?.stable {
                t.violate(
                    i,
                    "g in Y5, f stable, product not stable (minors)",
                    &[&f, &g, &product],
                );
                return Ok(());
            }
            let rs = find_roots(&product, DEFAULT_ROOT_TOL)?;
            match verdict_from_root_set(&rs, DEFAULT_EPS) {
                OracleVerdict::Stable => t.count("y5_oracle_stable"),
                OracleVerdict::Inconclusive => t.count("y5_oracle_inconclusive"),
                v => t.violate(
                    i,
                    format!("g in Y5, f stable, oracle says {v:?}"),
                    &[&f, &g, &product],
                ),
            }
            Ok(())
        }),
        TheoremCheck::SpecialCase => run_parallel(suite, 5, samples, seed, |i, rng, t| {
            let k = 2 + (i as usize % 3);
            let g = if i % 5 == 4 {
                sample_positive(k, rng)
            } else {
                sample_binomial_preimage(k, &scale, rng)
            };
            let big_g = special_case_from_g(&g);
            if !special_case_hypothesis(&big_g)? {
                t.count("special_hypothesis_false");
                return Ok(());
            }
            t.count(format!("special_k{k}"));
            let f = sample_quasi_stable(2 * k + 1, &scale, rng).0;
            if !special_case_check(&big_g, &f)? {
                t.violate(
                    i,
                    "hypothesis holds but F*G not quasi-stable",
                    &[&big_g, &f],
                );
            }
            Ok(())
        }),
    }
}

// ------------------------------------------------------------------ lemma3

/// The four `φ` quotients are certified strictly monotone between adjacent
/// points of the grid `t = 1/N, 2/N, ..., 1` for `a ∈ {1/10, 1/2, 9/10}`.
/// `samples` is the grid size `N`; no randomness is involved.
pub fn suite_lemma3(samples: usize, seed: u64) -> SuiteReport {
    let suite = Suite::Lemma3;
    let mut tally = Tally::default();
    let n = samples.max(2) as i64;
    for (ai, a) in [(1, 10), (1, 2), (9, 10)].into_iter().enumerate() {
        let a = BigRational::new(a.0.into(), a.1.into());
        for which in Lemma3Ratio::ALL {
            let values: Result<Vec<_>> = (1..=n)
                .into_par_iter()
                .map(|i| lemma3_ratio(which, &a, &BigRational::new(i.into(), n.into())))
                .collect();
            let values = match values {
                Ok(v) => v,
                Err(e) => {
                    tally.violate(ai as u64, format!("{which:?}: {e}"), &[]);
                    continue;
                }
            };
            for (i, w) in values.windows(2).enumerate() {
                let ok = match which.expected() {
                    Monotonicity::Decreasing => w[1].lt(&w[0]),
                    Monotonicity::Increasing => w[0].lt(&w[1]),
                };
                tally.count("pairs");
                if !ok {
                    tally.violate(
                        i as u64,
                        format!(
                            "{which:?} a={a} not certified {:?} at t={}/{n}",
                            which.expected(),
                            i + 1
                        ),
                        &[],
                    );
                }
            }
        }
    }
    finish(suite, samples, seed, tally)
}

pub fn run_suite(suite: Suite, samples: usize, seed: u64) -> SuiteReport {
    match suite {
        Suite::Criteria => suite_criteria(samples, seed),
        Suite::Gw => suite_gw(samples, seed),
        Suite::Hb => suite_hb(samples, seed),
        Suite::Lemmas => suite_lemmas(samples, seed),
        Suite::Theorems => suite_theorems(samples, seed),
        Suite::Lemma3 => suite_lemma3(samples, seed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_runs_pass() {
        for s in Suite::ALL {
            let r = run_suite(s, 64, 5);
            assert!(r.passed(), "{s}: {:?}", r.violations.first());
        }
    }

    #[test]
    fn reports_are_deterministic() {
        assert_eq!(suite_gw(48, 2), suite_gw(48, 2));
        assert_eq!(suite_lemmas(32, 2), suite_lemmas(32, 2));
    }

    #[test]
    fn gw_visits_all_cells() {
        let r = suite_gw(160, 3);
        let cells = r.counters.keys().filter(|k| k.starts_with("cell:")).count();
        assert_eq!(cells, 16);
    }
}
