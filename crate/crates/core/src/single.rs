//! The single-object LAO test: feasibility conditions on the prescribed
//! diagonal exponents, the M x M reliability matrix, divergence-ball decision
//! regions, and the resulting classifier.
//!
//! Hypotheses are indexed `0..M-1` throughout; the last index plays the
//! special role of the complement region (its exponents are determined by
//! the other M-1 prescriptions).

use serde::Serialize;

use crate::error::Error;
use crate::num::{ExtReal, LogBase};
use crate::prob::{empirical_type, kl_divergence, Distribution, EmpiricalType, Sample};
use crate::projection::{min_div_in_ball, min_div_in_complement, BallConstraint};

/// Two hypotheses are considered distinct when their probability vectors
/// differ by more than this pointwise.
const DISTINCTNESS_TOLERANCE: f64 = 1e-12;

/// The matrix diagonal must equal the row minimum to within this.
const DIAGONAL_RULE_TOLERANCE: f64 = 1e-9;

/// M pairwise-distinct distributions over one alphabet, plus the log-base
/// convention every derived exponent uses.
#[derive(Debug, Clone)]
pub struct HypothesisSet {
    dists: Vec<Distribution>,
    log_base: LogBase,
}

impl HypothesisSet {
    pub fn new(dists: Vec<Distribution>, log_base: LogBase) -> Result<HypothesisSet, Error> {
        if dists.len() < 2 {
            return Err(Error::TooFewHypotheses {
                min: 2,
                got: dists.len(),
            });
        }
        for d in &dists[1..] {
            dists[0].same_alphabet(d)?;
        }
        for i in 0..dists.len() {
            for j in (i + 1)..dists.len() {
                if dists[i].linf_distance(&dists[j]) <= DISTINCTNESS_TOLERANCE {
                    return Err(Error::HypothesesNotDistinct {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        Ok(HypothesisSet { dists, log_base })
    }

    pub fn size(&self) -> usize {
        self.dists.len()
    }

    pub fn alphabet_size(&self) -> usize {
        self.dists[0].alphabet_size()
    }

    pub fn dist(&self, m: usize) -> &Distribution {
        &self.dists[m]
    }

    pub fn dists(&self) -> &[Distribution] {
        &self.dists
    }

    pub fn log_base(&self) -> LogBase {
        self.log_base
    }

    /// D(G_l || G_m) in the set's log base.
    pub fn divergence(&self, l: usize, m: usize) -> ExtReal {
        kl_divergence(&self.dists[l], &self.dists[m], self.log_base)
            .expect("hypotheses share one alphabet")
    }
}

/// The M-1 prescribed diagonal exponents `E_{0|0}, ..., E_{M-2|M-2}`.
///
/// Zeros are legal and select the Stein regime for that hypothesis.
#[derive(Debug, Clone, PartialEq)]
pub struct GivenExponents {
    diag: Vec<f64>,
}

impl GivenExponents {
    pub fn new(diag: Vec<f64>) -> Result<GivenExponents, Error> {
        for (index, &value) in diag.iter().enumerate() {
            if !(value.is_finite() && value >= 0.0) {
                return Err(Error::InvalidGivenExponent { index, value });
            }
        }
        Ok(GivenExponents { diag })
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    fn validate_for(&self, hypotheses: &HypothesisSet) -> Result<(), Error> {
        if self.diag.len() != hypotheses.size() - 1 {
            return Err(Error::GivenCountMismatch {
                expected: hypotheses.size() - 1,
                got: self.diag.len(),
            });
        }
        Ok(())
    }
}

/// Which inequality a prescribed exponent broke.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// The exponent is not strictly positive.
    NotPositive,
    /// The exponent meets or exceeds its upper bound (equality counts).
    ExceedsBound,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionViolation {
    /// Hypothesis index (0-based) whose prescription is at fault.
    pub hypothesis: usize,
    pub kind: ViolationKind,
    /// The offending prescribed value.
    pub value: f64,
    /// The violated bound (0 for positivity, the binding minimum otherwise).
    pub bound: f64,
}

/// Everything the feasibility check found; empty means the prescriptions
/// admit a LAO test with all exponents strictly positive.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ConditionReport {
    pub violations: Vec<ConditionViolation>,
}

impl ConditionReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    /// True when every violation is a prescribed exact zero — the Stein
    /// regime, which the matrix construction handles directly.
    pub fn stein_only(&self) -> bool {
        !self.violations.is_empty()
            && self
                .violations
                .iter()
                .all(|v| v.kind == ViolationKind::NotPositive && v.value == 0.0)
    }
}

/// Checks the feasibility conditions on the prescribed diagonal.
///
/// The first hypothesis is bounded by the smallest divergence from the other
/// hypotheses; each later one additionally by the ball projections induced by
/// the earlier prescriptions. Bounds are strict, and a violation at one index
/// does not stop the check at later ones.
pub fn check_conditions(
    hypotheses: &HypothesisSet,
    given: &GivenExponents,
) -> Result<ConditionReport, Error> {
    given.validate_for(hypotheses)?;
    let m_count = hypotheses.size();
    let base = hypotheses.log_base();
    let mut report = ConditionReport::default();

    for m in 0..m_count - 1 {
        let value = given.diag()[m];
        if value <= 0.0 {
            report.violations.push(ConditionViolation {
                hypothesis: m,
                kind: ViolationKind::NotPositive,
                value,
                bound: 0.0,
            });
        }

        let mut bound = ExtReal::Inf;
        // divergences from the later hypotheses
        for l in (m + 1)..m_count {
            bound = bound.min(hypotheses.divergence(l, m));
        }
        // projections onto the earlier balls, at their prescribed radii
        for l in 0..m {
            let ball = BallConstraint::new(hypotheses.dist(l).clone(), given.diag()[l])?;
            bound = bound.min(min_div_in_ball(hypotheses.dist(m), &ball, base)?.value);
        }

        if let ExtReal::Finite(b) = bound {
            if value >= b {
                report.violations.push(ConditionViolation {
                    hypothesis: m,
                    kind: ViolationKind::ExceedsBound,
                    value,
                    bound: b,
                });
            }
        }
    }
    Ok(report)
}

/// The divergence-ball partition driving the classifier: one ball per
/// hypothesis `0..M-2`, the complement for the last.
#[derive(Debug, Clone)]
pub struct DecisionRegions {
    balls: Vec<BallConstraint>,
    log_base: LogBase,
}

impl DecisionRegions {
    pub fn new(
        hypotheses: &HypothesisSet,
        given: &GivenExponents,
    ) -> Result<DecisionRegions, Error> {
        given.validate_for(hypotheses)?;
        let balls = hypotheses
            .dists()
            .iter()
            .take(hypotheses.size() - 1)
            .zip(given.diag())
            .map(|(d, &r)| BallConstraint::new(d.clone(), r))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DecisionRegions {
            balls,
            log_base: hypotheses.log_base(),
        })
    }

    pub fn balls(&self) -> &[BallConstraint] {
        &self.balls
    }

    pub fn size(&self) -> usize {
        self.balls.len() + 1
    }

    pub fn alphabet_size(&self) -> usize {
        self.balls[0].center().alphabet_size()
    }

    pub fn log_base(&self) -> LogBase {
        self.log_base
    }

    /// Decides a hypothesis for an empirical type: the first ball containing
    /// it, or the last index when none does. The first-match rule keeps the
    /// decision well-defined even when balls overlap.
    pub fn classify_type(&self, t: &EmpiricalType) -> Result<usize, Error> {
        let q = t.distribution();
        for (l, ball) in self.balls.iter().enumerate() {
            let d = kl_divergence(&q, ball.center(), self.log_base)?;
            if d <= ExtReal::finite(ball.radius()) {
                return Ok(l);
            }
        }
        Ok(self.balls.len())
    }
}

/// Decides a hypothesis for a raw sample; see
/// [`DecisionRegions::classify_type`].
pub fn classify(regions: &DecisionRegions, x: &Sample) -> Result<usize, Error> {
    let t = empirical_type(x, regions.alphabet_size())?;
    regions.classify_type(&t)
}

/// The M x M matrix of reliabilities `E_{m|l}`: row = true hypothesis,
/// column = accepted hypothesis.
///
/// Every constructed matrix satisfies the diagonal rule
/// `E_{m|m} = min_{l != m} E_{m|l}`.
#[derive(Debug, Clone)]
pub struct ReliabilityMatrix {
    entries: Vec<Vec<ExtReal>>,
    log_base: LogBase,
}

impl ReliabilityMatrix {
    /// Wraps precomputed entries, enforcing squareness and the diagonal rule.
    pub fn from_entries(
        entries: Vec<Vec<ExtReal>>,
        log_base: LogBase,
    ) -> Result<ReliabilityMatrix, Error> {
        let size = entries.len();
        if size < 2 {
            return Err(Error::TooFewHypotheses { min: 2, got: size });
        }
        for row in &entries {
            if row.len() != size {
                return Err(Error::MatrixSizeMismatch {
                    left: size,
                    right: row.len(),
                });
            }
        }
        let matrix = ReliabilityMatrix { entries, log_base };
        for m in 0..size {
            if !matrix
                .entry(m, m)
                .approx_eq(&matrix.row_min_off_diagonal(m), DIAGONAL_RULE_TOLERANCE)
            {
                return Err(Error::DiagonalRuleViolated { m });
            }
        }
        Ok(matrix)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, m: usize, l: usize) -> ExtReal {
        self.entries[m][l]
    }

    pub fn entries(&self) -> &[Vec<ExtReal>] {
        &self.entries
    }

    pub fn log_base(&self) -> LogBase {
        self.log_base
    }

    /// `min_{l != m} E_{m|l}` — what the diagonal must equal.
    pub fn row_min_off_diagonal(&self, m: usize) -> ExtReal {
        (0..self.size())
            .filter(|&l| l != m)
            .map(|l| self.entries[m][l])
            .fold(ExtReal::Inf, ExtReal::min)
    }

    /// True when some entry is exactly zero (an error probability that does
    /// not decay exponentially).
    pub fn has_zero_entry(&self) -> bool {
        self.entries.iter().flatten().any(|e| e.is_zero())
    }
}

/// Builds the reliability matrix for the prescribed diagonal.
///
/// Columns `0..M-2` are ball projections at the prescribed radii (a zero
/// radius degenerates the ball to its center, reproducing the Stein-case
/// column of divergences), the last column is the complement infimum, and the
/// diagonal is reconciled to the row minima. Feasible prescriptions keep the
/// diagonal exactly at the given values; violated ones surface zeros.
#[allow(clippy::needless_range_loop)]
pub fn build_matrix(
    hypotheses: &HypothesisSet,
    given: &GivenExponents,
) -> Result<ReliabilityMatrix, Error> {
    given.validate_for(hypotheses)?;
    let m_count = hypotheses.size();
    let base = hypotheses.log_base();
    let regions = DecisionRegions::new(hypotheses, given)?;

    let mut entries = vec![vec![ExtReal::ZERO; m_count]; m_count];
    for l in 0..m_count - 1 {
        for m in 0..m_count {
            if m == l {
                continue;
            }
            entries[m][l] = min_div_in_ball(hypotheses.dist(m), &regions.balls()[l], base)?.value;
        }
    }
    for m in 0..m_count - 1 {
        entries[m][m_count - 1] =
            min_div_in_complement(hypotheses.dist(m), regions.balls(), base)?.value;
    }

    for m in 0..m_count {
        let row_min = (0..m_count)
            .filter(|&l| l != m)
            .map(|l| entries[m][l])
            .fold(ExtReal::Inf, ExtReal::min);
        entries[m][m] = if m < m_count - 1 {
            ExtReal::finite(given.diag()[m]).min(row_min)
        } else {
            row_min
        };
    }

    ReliabilityMatrix::from_entries(entries, base)
}

/// The Stein-case exponents for hypothesis `m`: prescribing `E_{m|m} = 0`
/// pins the column `E_{l|m} = D(G_m || G_l)` for every `l != m`, returned in
/// increasing `l` order.
pub fn stein_row(hypotheses: &HypothesisSet, m: usize) -> Result<Vec<ExtReal>, Error> {
    if m >= hypotheses.size() - 1 {
        return Err(Error::HypothesisOutOfRange {
            index: m,
            count: hypotheses.size() - 1,
        });
    }
    Ok((0..hypotheses.size())
        .filter(|&l| l != m)
        .map(|l| hypotheses.divergence(m, l))
        .collect())
}
