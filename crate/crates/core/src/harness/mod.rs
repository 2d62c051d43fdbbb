//! Seeded verification suites with machine-readable reports.
//!
//! Each suite checks one statement about automorphisms of free groups on
//! random inputs. Trials run in parallel; each draws its randomness from a
//! seed derived from the suite seed and the trial index, so a report is a
//! function of `(suite, rank, trials, seed)` apart from its wall time.

mod suites;

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::involutions::CanonicalData;

/// Most counterexamples kept in a report.
const MAX_COUNTEREXAMPLES: usize = 20;

pub const BOUNDED_QUANTIFIER_NOTE: &str = "universal quantifiers range over a finite seeded \
     sample only: a pass is evidence, while a failure exhibits a concrete counterexample";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    LemmaInverse,
    Centralizer,
    AccWitness,
    QcAnticommute,
    QcNotSquare,
    SymmetrySquare,
    KkProducts,
    PiCentralizer,
    ConjRank2,
    MeskinCensus,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::LemmaInverse,
        Suite::Centralizer,
        Suite::AccWitness,
        Suite::QcAnticommute,
        Suite::QcNotSquare,
        Suite::SymmetrySquare,
        Suite::KkProducts,
        Suite::PiCentralizer,
        Suite::ConjRank2,
        Suite::MeskinCensus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::LemmaInverse => "lemma-inverse",
            Suite::Centralizer => "centralizer",
            Suite::AccWitness => "acc-witness",
            Suite::QcAnticommute => "qc-anticommute",
            Suite::QcNotSquare => "qc-not-square",
            Suite::SymmetrySquare => "symmetry-square",
            Suite::KkProducts => "kk-products",
            Suite::PiCentralizer => "pi-centralizer",
            Suite::ConjRank2 => "conj-rank2",
            Suite::MeskinCensus => "meskin-census",
        }
    }

    /// The statement the suite checks.
    pub fn statement(self) -> &'static str {
        match self {
            Suite::LemmaInverse => {
                "an element inverted by an involution without swapped pairs is phi(w) w^-1 \
                 or phi(w) x w^-1 with x a block head; phi(w) w^-1 is even in the abelianization"
            }
            Suite::Centralizer => {
                "the centralizer of a quasi-conjugation with block {x} u Y consists of the maps \
                 x -> x, y -> theta(y) and x -> x^-1, y -> x theta(y) x^-1 with theta in Aut<Y>"
            }
            Suite::AccWitness => {
                "an involution class failing the necessary shape condition for anti-commutativity \
                 contains two distinct commuting members, while quasi-conjugations and symmetries \
                 satisfy the anti-commutativity formula"
            }
            Suite::QcAnticommute => {
                "quasi-conjugations, and symmetries, form anti-commutative conjugacy classes"
            }
            Suite::QcNotSquare => {
                "quasi-conjugations act with determinant -1 on the abelianization while products \
                 of two conjugate involutions act with determinant +1"
            }
            Suite::SymmetrySquare => {
                "every symmetry of a free group of even rank is a square: x1 -> x2^-1, x2 -> x1 \
                 squares to the symmetry"
            }
            Suite::KkProducts => {
                "for a quasi-conjugation phi and conjugate involutions psi, psi' commuting with \
                 it, the products phi psi and phi psi' are conjugate"
            }
            Suite::PiCentralizer => {
                "the maps commuting with every product of conjugate elements of the centralizer \
                 of a quasi-conjugation are involutions or conjugations by powers of its head"
            }
            Suite::ConjRank2 => {
                "in rank 2 conjugation by x^k is a product of two conjugate symmetries and is \
                 recognized inside the centralizer of x -> x, y -> y^-1"
            }
            Suite::MeskinCensus => {
                "Aut(F2) has exactly four conjugacy classes of involutions; Aut(F3) has six \
                 classes of soft involutions"
            }
        }
    }

    fn rank_requirement(self) -> &'static str {
        match self {
            Suite::KkProducts | Suite::PiCentralizer => "rank at least 3",
            Suite::SymmetrySquare => "even rank",
            Suite::ConjRank2 => "rank 2 only",
            _ => "rank at least 2",
        }
    }

    pub fn supports_rank(self, rank: usize) -> bool {
        match self {
            Suite::KkProducts | Suite::PiCentralizer => rank >= 3,
            Suite::SymmetrySquare => rank >= 2 && rank.is_multiple_of(2),
            Suite::ConjRank2 => rank == 2,
            _ => rank >= 2,
        }
    }

    /// Smallest rank at which the suite runs.
    pub fn min_rank(self) -> usize {
        (2..)
            .find(|&r| self.supports_rank(r))
            .expect("some rank is supported")
    }

    fn bounded_quantifiers(self) -> bool {
        matches!(
            self,
            Suite::AccWitness | Suite::PiCentralizer | Suite::QcAnticommute
        )
    }

    pub fn default_trials(self) -> usize {
        match self {
            Suite::MeskinCensus => 1,
            Suite::KkProducts => 100,
            Suite::SymmetrySquare | Suite::ConjRank2 | Suite::AccWitness => 200,
            _ => 500,
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub statement: String,
    pub rank: usize,
    pub trials: usize,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub counterexamples: Vec<String>,
    pub notes: Vec<String>,
    pub disclaimer: Option<String>,
    pub wall_time: u64,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

/// Seed for trial `index` of a run seeded with `seed`.
pub fn trial_seed(seed: u64, index: usize) -> u64 {
    let mut z = seed.wrapping_add((index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn run_suite(name: &str, rank: usize, trials: usize, seed: u64) -> Result<SuiteReport> {
    run(name.parse()?, rank, trials, seed)
}

pub fn run(suite: Suite, rank: usize, trials: usize, seed: u64) -> Result<SuiteReport> {
    if !suite.supports_rank(rank) {
        let requirement = suite.rank_requirement();
        return Err(Error::UnsupportedRank { rank, requirement });
    }
    let start = Instant::now();
    let trials = if suite == Suite::MeskinCensus {
        1
    } else {
        trials
    };
    let ctx = suites::Context::new(suite, rank, seed)?;
    let outcomes: Vec<std::result::Result<(), String>> = (0..trials)
        .into_par_iter()
        .map(|i| ctx.trial(i, trial_seed(seed, i)))
        .collect();
    let mut counterexamples = Vec::new();
    let mut failed = 0;
    for (i, outcome) in outcomes.into_iter().enumerate() {
        if let Err(msg) = outcome {
            failed += 1;
            if counterexamples.len() < MAX_COUNTEREXAMPLES {
                counterexamples.push(format!("trial {i} (seed {}): {msg}", trial_seed(seed, i)));
            }
        }
    }
    Ok(SuiteReport {
        suite: suite.name().to_string(),
        statement: suite.statement().to_string(),
        rank,
        trials,
        seed,
        passed: trials - failed,
        failed,
        counterexamples,
        notes: ctx.notes(),
        disclaimer: suite
            .bounded_quantifiers()
            .then(|| BOUNDED_QUANTIFIER_NOTE.to_string()),
        wall_time: start.elapsed().as_millis() as u64,
    })
}

pub fn emit_report(r: &SuiteReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => serde_json::to_string_pretty(r).expect("serializable") + "\n",
        ReportFormat::Text => {
            let mut out = String::new();
            for c in &r.counterexamples {
                let _ = writeln!(out, "COUNTEREXAMPLE {c}");
            }
            let verdict = if r.ok() { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{verdict} {} (rank {}, seed {})",
                r.suite, r.rank, r.seed
            );
            let _ = writeln!(out, "  statement: {}", r.statement);
            let _ = writeln!(
                out,
                "  trials: {}  passed: {}  failed: {}  time: {} ms",
                r.trials, r.passed, r.failed, r.wall_time
            );
            for n in &r.notes {
                let _ = writeln!(out, "  note: {n}");
            }
            if let Some(d) = &r.disclaimer {
                let _ = writeln!(out, "  caveat: {d}");
            }
            out
        }
    }
}

/// Counts of conjugacy classes of involutions by canonical shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub soft: usize,
    pub non_soft: usize,
}

impl Census {
    pub fn total(&self) -> usize {
        self.soft + self.non_soft
    }
}

/// Conjugacy classes of involutions in `Aut(F_rank)`, one per canonical
/// shape other than the identity.
pub fn meskin_census(rank: usize) -> Census {
    let shapes = CanonicalData::enumerate(rank);
    let soft = shapes.iter().filter(|d| d.is_soft()).count();
    Census {
        soft,
        non_soft: shapes.len() - soft,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_counts() {
        assert_eq!(meskin_census(2).total(), 4);
        assert_eq!(meskin_census(3).soft, 6);
        let no_fixed_no_pairs = CanonicalData::enumerate(2)
            .into_iter()
            .filter(|d| d.fixed == 0 && d.pairs == 0)
            .count();
        assert_eq!(no_fixed_no_pairs, 2);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>(), Ok(s));
        }
        assert!(matches!(
            run_suite("nope", 2, 1, 0),
            Err(Error::UnknownSuite(_))
        ));
        assert!(matches!(
            run_suite("pi-centralizer", 2, 1, 0),
            Err(Error::UnsupportedRank { .. })
        ));
    }

    #[test]
    fn trial_seeds_differ() {
        let seeds: std::collections::HashSet<u64> = (0..1000).map(|i| trial_seed(42, i)).collect();
        assert_eq!(seeds.len(), 1000);
    }

    #[test]
    fn every_suite_passes_at_small_scale() {
        for s in Suite::ALL {
            let rank = match s {
                Suite::KkProducts | Suite::PiCentralizer => 3,
                _ => 2,
            };
            let r = run(s, rank, 12, 5).unwrap();
            assert!(r.ok(), "{}", emit_report(&r, ReportFormat::Text));
            assert_eq!(r.passed + r.failed, r.trials);
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let mut a = run(Suite::LemmaInverse, 3, 40, 9).unwrap();
        let mut b = run(Suite::LemmaInverse, 3, 40, 9).unwrap();
        a.wall_time = 0;
        b.wall_time = 0;
        assert_eq!(
            emit_report(&a, ReportFormat::Json),
            emit_report(&b, ReportFormat::Json)
        );
        assert_eq!(
            emit_report(&a, ReportFormat::Text),
            emit_report(&b, ReportFormat::Text)
        );
    }

    #[test]
    fn failing_reports_list_counterexamples_first() {
        let r = SuiteReport {
            suite: "centralizer".into(),
            statement: "s".into(),
            rank: 2,
            trials: 2,
            seed: 0,
            passed: 1,
            failed: 1,
            counterexamples: vec!["trial 1: boom".into()],
            notes: vec![],
            disclaimer: None,
            wall_time: 3,
        };
        let text = emit_report(&r, ReportFormat::Text);
        assert!(text.starts_with("COUNTEREXAMPLE trial 1: boom"));
        let json: serde_json::Value =
            serde_json::from_str(&emit_report(&r, ReportFormat::Json)).unwrap();
        for key in [
            "suite",
            "rank",
            "trials",
            "seed",
            "passed",
            "failed",
            "counterexamples",
            "wall_time",
        ] {
            assert!(json.get(key).is_some(), "{key}");
        }
    }
}
