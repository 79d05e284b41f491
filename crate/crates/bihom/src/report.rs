//! Verdicts produced by identity checks.

use std::fmt;

use serde::Serialize;

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// How a non-multilinear identity is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CheckMode {
    /// Polarized multilinear form over every basis tuple.
    #[default]
    Linearized,
    /// Direct form on generic elements whose coordinates are fresh parameters.
    DirectSymbolic,
    /// Direct form on seeded random integer elements.
    DirectSampled { points: usize, seed: u64 },
}

impl CheckMode {
    pub fn sampled(points: usize, seed: u64) -> crate::Result<Self> {
        if points == 0 {
            return Err(crate::Error::PrereqFailed(
                "sampled mode needs at least one point".into(),
            ));
        }
        Ok(CheckMode::DirectSampled { points, seed })
    }

    pub fn label(&self) -> String {
        match self {
            CheckMode::Linearized => "linearized".into(),
            CheckMode::DirectSymbolic => "symbolic".into(),
            CheckMode::DirectSampled { points, seed } => format!("sampled(points={points},seed={seed})"),
        }
    }
}

/// A failing tuple and the nonzero residual it produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub identity: String,
    pub tuple: Vec<String>,
    pub residual: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub tuples_examined: u64,
    pub failing_tuples: u64,
    #[serde(skip)]
    pub elapsed_us: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check_name: String,
    pub mode: String,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub stats: Stats,
}

impl CheckReport {
    pub fn new(check_name: impl Into<String>, mode: impl Into<String>) -> Self {
        CheckReport {
            check_name: check_name.into(),
            mode: mode.into(),
            verdict: Verdict::Pass,
            witnesses: Vec::new(),
            stats: Stats::default(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Records a failure with its witness.
    pub fn add_witness(&mut self, witness: Witness) {
        self.verdict = Verdict::Fail;
        self.witnesses.push(witness);
    }

    /// Folds the tuples and witnesses of `part` into this report.
    pub fn absorb(&mut self, part: CheckReport) {
        self.stats.tuples_examined += part.stats.tuples_examined;
        self.stats.failing_tuples += part.stats.failing_tuples;
        self.stats.elapsed_us += part.stats.elapsed_us;
        for w in part.witnesses {
            self.add_witness(w);
        }
        if part.verdict == Verdict::Fail {
            self.verdict = Verdict::Fail;
        }
    }

    /// The first witness, if any.
    pub fn witness(&self) -> Option<&Witness> {
        self.witnesses.first()
    }
}

pub fn render_vector(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        };
        write!(
            f,
            "{verdict} {} [{}] tuples={} failing={}",
            self.check_name, self.mode, self.stats.tuples_examined, self.stats.failing_tuples
        )?;
        for w in &self.witnesses {
            write!(
                f,
                "\n  {} at ({}): [{}]",
                w.identity,
                w.tuple.join(", "),
                w.residual.join(", ")
            )?;
        }
        Ok(())
    }
}

/// Outcome of a Rota-Baxter check, with the commutation facts the
/// deformation constructions need.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RotaBaxterReport {
    pub identity: CheckReport,
    pub commutes_alpha: bool,
    pub commutes_beta: bool,
}

impl RotaBaxterReport {
    pub fn passed(&self) -> bool {
        self.identity.passed()
    }

    pub fn passed_with_commutation(&self) -> bool {
        self.passed() && self.commutes_alpha && self.commutes_beta
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn absorbing_a_failure_fails() {
        let mut r = CheckReport::new("outer", "linearized");
        let mut part = CheckReport::new("inner", "linearized");
        part.stats.tuples_examined = 8;
        part.stats.failing_tuples = 1;
        part.add_witness(Witness {
            identity: "inner".into(),
            tuple: vec!["e1".into()],
            residual: vec!["1".into()],
        });
        r.absorb(part);
        assert!(!r.passed());
        assert_eq!(r.stats.tuples_examined, 8);
        assert_eq!(r.witnesses.len(), 1);
    }

    #[test]
    fn sampled_mode_needs_points() {
        assert!(CheckMode::sampled(0, 1).is_err());
        assert_eq!(CheckMode::sampled(3, 7).unwrap().label(), "sampled(points=3,seed=7)");
    }

    #[test]
    fn timing_is_not_serialized() {
        let mut r = CheckReport::new("c", "linearized");
        r.stats.elapsed_us = 99;
        let json = serde_json::to_string(&r).unwrap();
        assert!(!json.contains("99"));
    }
}
