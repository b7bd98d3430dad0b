//! Compound tests for K independent objects drawing from one hypothesis set.
//!
//! Independence makes compound error probabilities factor into per-object
//! ones, so compound reliabilities are sums of per-object matrix entries over
//! the differing coordinates, and tuple diagonals follow the same
//! minimum-over-alternatives rule as the single-object diagonal. The tensor
//! is therefore never materialized: entries are evaluated on demand from the
//! K per-object matrices.

use serde::Serialize;

use crate::error::Error;
use crate::num::ExtReal;
use crate::single::{
    build_matrix, check_conditions, ConditionReport, GivenExponents, HypothesisSet,
    ReliabilityMatrix,
};

/// K >= 2 objects, a shared hypothesis set, and the K(M-1) prescribed
/// exponents, one diagonal slice per object.
///
/// The prescribed compound element for object `i` at hypothesis `m` (the
/// exponent of the tuple error where only object `i` is misjudged as the
/// last hypothesis) equals the object's own diagonal exponent `E_{m|m}`,
/// which is how the slices are stored.
#[derive(Debug, Clone)]
pub struct MultiObjectSpec {
    hypotheses: HypothesisSet,
    per_object: Vec<GivenExponents>,
}

impl MultiObjectSpec {
    pub fn new(
        hypotheses: HypothesisSet,
        per_object: Vec<GivenExponents>,
    ) -> Result<MultiObjectSpec, Error> {
        if per_object.len() < 2 {
            return Err(Error::TooFewObjects {
                got: per_object.len(),
            });
        }
        for given in &per_object {
            if given.len() != hypotheses.size() - 1 {
                return Err(Error::GivenCountMismatch {
                    expected: hypotheses.size() - 1,
                    got: given.len(),
                });
            }
        }
        Ok(MultiObjectSpec {
            hypotheses,
            per_object,
        })
    }

    pub fn objects(&self) -> usize {
        self.per_object.len()
    }

    pub fn hypotheses(&self) -> &HypothesisSet {
        &self.hypotheses
    }

    pub fn per_object_given(&self) -> &[GivenExponents] {
        &self.per_object
    }

    /// The prescribed compound element for (hypothesis `m`, object `i`).
    pub fn compound_given(&self, m: usize, i: usize) -> Result<f64, Error> {
        if i >= self.objects() {
            return Err(Error::ObjectOutOfRange {
                index: i,
                count: self.objects(),
            });
        }
        self.per_object[i]
            .diag()
            .get(m)
            .copied()
            .ok_or(Error::HypothesisOutOfRange {
                index: m,
                count: self.hypotheses.size() - 1,
            })
    }
}

/// Per-object condition reports; the compound conditions hold exactly when
/// every object's single-object conditions do.
#[derive(Debug, Clone, Serialize)]
pub struct MultiConditionReport {
    pub per_object: Vec<ConditionReport>,
}

impl MultiConditionReport {
    pub fn ok(&self) -> bool {
        self.per_object.iter().all(ConditionReport::ok)
    }

    pub fn stein_only(&self) -> bool {
        !self.ok()
            && self
                .per_object
                .iter()
                .all(|r| r.ok() || r.stein_only())
    }
}

/// Checks the compound feasibility conditions object by object.
pub fn check_conditions_multi(spec: &MultiObjectSpec) -> Result<MultiConditionReport, Error> {
    let per_object = spec
        .per_object
        .iter()
        .map(|given| check_conditions(&spec.hypotheses, given))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MultiConditionReport { per_object })
}

/// The M^K x M^K reliability tensor of a compound test, evaluated lazily
/// from the K per-object matrices.
#[derive(Debug, Clone)]
pub struct CompoundReliabilityTensor {
    per_object: Vec<ReliabilityMatrix>,
}

/// How many index tuples the tensor has per axis: M^K.
fn tuple_space(m: usize, k: usize) -> u128 {
    (m as u128).pow(k as u32)
}

impl CompoundReliabilityTensor {
    pub fn objects(&self) -> usize {
        self.per_object.len()
    }

    pub fn size(&self) -> usize {
        self.per_object[0].size()
    }

    pub fn per_object(&self) -> &[ReliabilityMatrix] {
        &self.per_object
    }

    fn validate_tuple(&self, tuple: &[usize]) -> Result<(), Error> {
        if tuple.len() != self.objects() {
            return Err(Error::TupleLengthMismatch {
                expected: self.objects(),
                got: tuple.len(),
            });
        }
        for &idx in tuple {
            if idx >= self.size() {
                return Err(Error::HypothesisOutOfRange {
                    index: idx,
                    count: self.size(),
                });
            }
        }
        Ok(())
    }

    /// The exponent for rejecting the true tuple `true_t` in favor of
    /// `accepted`: the sum of per-object entries over the differing
    /// coordinates, or the minimum over all alternatives when the tuples
    /// coincide.
    pub fn entry(&self, true_t: &[usize], accepted: &[usize]) -> Result<ExtReal, Error> {
        self.validate_tuple(true_t)?;
        self.validate_tuple(accepted)?;
        if true_t == accepted {
            // The minimum over alternative tuples is attained by changing a
            // single coordinate (extra differing coordinates only add
            // nonnegative terms), and each per-object diagonal already is
            // that object's row minimum.
            return Ok(true_t
                .iter()
                .enumerate()
                .map(|(i, &m)| self.per_object[i].entry(m, m))
                .fold(ExtReal::Inf, ExtReal::min));
        }
        Ok(true_t
            .iter()
            .zip(accepted)
            .enumerate()
            .filter(|(_, (m, l))| m != l)
            .map(|(i, (&m, &l))| self.per_object[i].entry(m, l))
            .sum())
    }

    /// The per-object additive decomposition of a non-diagonal entry:
    /// `(object, true, accepted, value)` for each differing coordinate.
    pub fn summands(
        &self,
        true_t: &[usize],
        accepted: &[usize],
    ) -> Result<Vec<(usize, usize, usize, ExtReal)>, Error> {
        self.validate_tuple(true_t)?;
        self.validate_tuple(accepted)?;
        Ok(true_t
            .iter()
            .zip(accepted)
            .enumerate()
            .filter(|(_, (m, l))| m != l)
            .map(|(i, (&m, &l))| (i, m, l, self.per_object[i].entry(m, l)))
            .collect())
    }

    /// All index tuples, for dense export; guarded so M^K stays printable.
    pub fn index_tuples(&self) -> Result<Vec<Vec<usize>>, Error> {
        const LIMIT: u128 = 10_000;
        let size = tuple_space(self.size(), self.objects());
        if size > LIMIT {
            return Err(Error::DenseExportTooLarge { size, limit: LIMIT });
        }
        let mut out = Vec::with_capacity(size as usize);
        let mut tuple = vec![0usize; self.objects()];
        loop {
            out.push(tuple.clone());
            let mut pos = self.objects();
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                tuple[pos] += 1;
                if tuple[pos] < self.size() {
                    break;
                }
                tuple[pos] = 0;
            }
        }
    }
}

/// Composes per-object reliability matrices into the compound tensor.
pub fn compose_tensor(
    per_object: Vec<ReliabilityMatrix>,
) -> Result<CompoundReliabilityTensor, Error> {
    if per_object.len() < 2 {
        return Err(Error::TooFewObjects {
            got: per_object.len(),
        });
    }
    let size = per_object[0].size();
    for m in &per_object[1..] {
        if m.size() != size {
            return Err(Error::MatrixSizeMismatch {
                left: size,
                right: m.size(),
            });
        }
    }
    Ok(CompoundReliabilityTensor { per_object })
}

/// Builds each object's LAO matrix from its prescribed slice and composes
/// them into the compound tensor.
pub fn build_compound(spec: &MultiObjectSpec) -> Result<CompoundReliabilityTensor, Error> {
    let per_object = spec
        .per_object
        .iter()
        .map(|given| build_matrix(&spec.hypotheses, given))
        .collect::<Result<Vec<_>, _>>()?;
    compose_tensor(per_object)
}

/// Compound-test families by the pattern of vanishing per-object diagonal
/// reliabilities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    /// Every per-object diagonal reliability is positive.
    A,
    /// Some hypothesis has two or more objects with a zero diagonal.
    B,
    /// Every hypothesis with zeros has exactly one zero object.
    C,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyLabel {
    pub family: Family,
    /// `(object, hypothesis)` pairs with a zero diagonal reliability.
    pub witnesses: Vec<(usize, usize)>,
}

/// Labels a compound test by its per-object diagonal reliabilities
/// (one slice of M-1 values per object).
pub fn classify_family(per_object_diags: &[Vec<f64>]) -> Result<FamilyLabel, Error> {
    if per_object_diags.len() < 2 {
        return Err(Error::TooFewObjects {
            got: per_object_diags.len(),
        });
    }
    let hyp_count = per_object_diags[0].len();
    for d in per_object_diags {
        if d.len() != hyp_count {
            return Err(Error::GivenCountMismatch {
                expected: hyp_count,
                got: d.len(),
            });
        }
    }

    let mut witnesses = Vec::new();
    let mut max_zeros_per_hypothesis = 0usize;
    for m in 0..hyp_count {
        let mut zeros = 0;
        for (i, diags) in per_object_diags.iter().enumerate() {
            if diags[m] == 0.0 {
                zeros += 1;
                witnesses.push((i, m));
            }
        }
        max_zeros_per_hypothesis = max_zeros_per_hypothesis.max(zeros);
    }

    let family = match max_zeros_per_hypothesis {
        0 => Family::A,
        1 => Family::C,
        _ => Family::B,
    };
    Ok(FamilyLabel { family, witnesses })
}

/// The three per-object right-decision exponents recovered from the three
/// prescribed compound elements at a witness hypothesis `m'` (three objects
/// only).
///
/// When a per-object diagonal reliability at `m'` vanishes, the probability
/// of deciding `m'` correctly itself decays exponentially; these are those
/// decay rates. Each prescribed compound element is the sum of the other two
/// objects' rates, so the system inverts by half-sums.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyCExponents {
    pub m_prime: usize,
    /// Right-decision exponents for objects 0, 1, 2.
    pub right_decision: [f64; 3],
}

/// Inverts the pairwise-sum system relating the three prescribed compound
/// elements at `m'` to the per-object right-decision exponents.
///
/// `compound_givens[i]` is the prescribed exponent of the tuple error where
/// only object `i` is misjudged (as the last hypothesis) while the others
/// stay at `m'`. Inconsistent prescriptions (a negative recovered exponent)
/// are rejected.
pub fn family_c_fill(
    m_prime: usize,
    compound_givens: [f64; 3],
) -> Result<FamilyCExponents, Error> {
    let [g1, g2, g3] = compound_givens;
    let raw = [
        0.5 * (g2 + g3 - g1),
        0.5 * (g1 + g3 - g2),
        0.5 * (g1 + g2 - g3),
    ];
    let mut right_decision = [0.0; 3];
    for (object, &v) in raw.iter().enumerate() {
        if v < -1e-12 {
            return Err(Error::InconsistentCompoundGivens { object, value: v });
        }
        right_decision[object] = v.max(0.0);
    }
    Ok(FamilyCExponents {
        m_prime,
        right_decision,
    })
}

impl FamilyCExponents {
    /// Reconstructs the prescribed compound element for object `i` (the
    /// pairwise sum of the other two right-decision exponents).
    pub fn compound_given(&self, i: usize) -> Result<f64, Error> {
        if i >= 3 {
            return Err(Error::ObjectOutOfRange { index: i, count: 3 });
        }
        Ok(self
            .right_decision
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, v)| v)
            .sum())
    }

    /// A tensor entry in the vanishing-diagonal regime: differing
    /// coordinates contribute their per-object matrix entries, and
    /// coordinates staying at `m'` contribute that object's right-decision
    /// exponent (staying anywhere else costs nothing).
    pub fn entry(
        &self,
        matrices: &[ReliabilityMatrix],
        true_t: &[usize],
        accepted: &[usize],
    ) -> Result<ExtReal, Error> {
        if matrices.len() != 3 || true_t.len() != 3 || accepted.len() != 3 {
            return Err(Error::TupleLengthMismatch {
                expected: 3,
                got: matrices.len().min(true_t.len()).min(accepted.len()),
            });
        }
        let size = matrices[0].size();
        for &idx in true_t.iter().chain(accepted) {
            if idx >= size {
                return Err(Error::HypothesisOutOfRange {
                    index: idx,
                    count: size,
                });
            }
        }
        if true_t == accepted {
            // minimum over all alternative tuples, as for the plain tensor
            let mut best = ExtReal::Inf;
            let mut alt = vec![0usize; 3];
            loop {
                if alt != true_t {
                    best = best.min(self.entry_off_diagonal(matrices, true_t, &alt));
                }
                if !next_tuple(&mut alt, size) {
                    return Ok(best);
                }
            }
        }
        Ok(self.entry_off_diagonal(matrices, true_t, accepted))
    }

    fn entry_off_diagonal(
        &self,
        matrices: &[ReliabilityMatrix],
        true_t: &[usize],
        accepted: &[usize],
    ) -> ExtReal {
        let mut total = ExtReal::ZERO;
        for i in 0..3 {
            if true_t[i] != accepted[i] {
                total = total + matrices[i].entry(true_t[i], accepted[i]);
            } else if true_t[i] == self.m_prime {
                total = total + ExtReal::finite(self.right_decision[i]);
            }
        }
        total
    }
}

fn next_tuple(tuple: &mut [usize], size: usize) -> bool {
    for pos in (0..tuple.len()).rev() {
        tuple[pos] += 1;
        if tuple[pos] < size {
            return true;
        }
        tuple[pos] = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::LogBase;
    use crate::prob::Distribution;
    use rand::rngs::ChaCha8Rng;
    use rand::{RngExt, SeedableRng};

    const B: LogBase = LogBase::BITS;

    fn fin(v: f64) -> ExtReal {
        ExtReal::finite(v)
    }

    /// A valid synthetic matrix: random off-diagonals, diagonal = row min.
    #[allow(clippy::needless_range_loop)]
    fn random_matrix(rng: &mut ChaCha8Rng, size: usize) -> ReliabilityMatrix {
        let mut entries = vec![vec![ExtReal::ZERO; size]; size];
        for m in 0..size {
            for l in 0..size {
                if m != l {
                    entries[m][l] = fin(0.05 + rng.random::<f64>());
                }
            }
        }
        for m in 0..size {
            let row_min = (0..size)
                .filter(|&l| l != m)
                .map(|l| entries[m][l])
                .fold(ExtReal::Inf, ExtReal::min);
            entries[m][m] = row_min;
        }
        ReliabilityMatrix::from_entries(entries, B).unwrap()
    }

    fn two_state_matrix(a: f64, b: f64) -> ReliabilityMatrix {
        ReliabilityMatrix::from_entries(
            vec![vec![fin(a), fin(a)], vec![fin(b), fin(b)]],
            B,
        )
        .unwrap()
    }

    fn example_spec(diags: &[&[f64]]) -> MultiObjectSpec {
        let h = HypothesisSet::new(
            vec![
                Distribution::new(vec![0.10, 0.90]).unwrap(),
                Distribution::new(vec![0.85, 0.15]).unwrap(),
                Distribution::new(vec![0.23, 0.77]).unwrap(),
            ],
            B,
        )
        .unwrap();
        let per_object = diags
            .iter()
            .map(|d| GivenExponents::new(d.to_vec()).unwrap())
            .collect();
        MultiObjectSpec::new(h, per_object).unwrap()
    }

    #[test]
    fn additivity_on_the_simplest_compound() {
        let a = 0.3;
        let b = 0.4;
        let t = compose_tensor(vec![two_state_matrix(a, b), two_state_matrix(a, b)]).unwrap();
        assert_eq!(t.entry(&[0, 0], &[1, 1]).unwrap(), fin(2.0 * a));
        assert_eq!(t.entry(&[0, 0], &[1, 0]).unwrap(), fin(a));
        // tuple diagonal: min over single-coordinate alternatives
        assert_eq!(t.entry(&[0, 0], &[0, 0]).unwrap(), fin(a));
        assert_eq!(t.entry(&[0, 1], &[0, 1]).unwrap(), fin(a.min(b)));
    }

    #[test]
    fn additivity_recomputed_on_random_tuples() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xadd);
        for _ in 0..40 {
            let k = 2 + (rng.random::<u32>() % 3) as usize;
            let size = 2 + (rng.random::<u32>() % 3) as usize;
            let mats: Vec<ReliabilityMatrix> =
                (0..k).map(|_| random_matrix(&mut rng, size)).collect();
            let t = compose_tensor(mats.clone()).unwrap();
            for _ in 0..25 {
                let a: Vec<usize> =
                    (0..k).map(|_| (rng.random::<u32>() as usize) % size).collect();
                let b: Vec<usize> =
                    (0..k).map(|_| (rng.random::<u32>() as usize) % size).collect();
                if a == b {
                    continue;
                }
                let mut expected = ExtReal::ZERO;
                for i in 0..k {
                    if a[i] != b[i] {
                        expected = expected + mats[i].entry(a[i], b[i]);
                    }
                }
                assert_eq!(t.entry(&a, &b).unwrap(), expected);
            }
        }
    }

    #[test]
    fn tuple_diagonal_matches_exhaustive_neighbor_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xd1a6);
        for &(size, k) in &[(2usize, 2usize), (2, 3), (3, 2), (3, 3)] {
            let mats: Vec<ReliabilityMatrix> =
                (0..k).map(|_| random_matrix(&mut rng, size)).collect();
            let t = compose_tensor(mats).unwrap();
            for m_tuple in t.index_tuples().unwrap() {
                let fast = t.entry(&m_tuple, &m_tuple).unwrap();
                let mut slow = ExtReal::Inf;
                for l_tuple in t.index_tuples().unwrap() {
                    if l_tuple != m_tuple {
                        slow = slow.min(t.entry(&m_tuple, &l_tuple).unwrap());
                    }
                }
                assert_eq!(fast, slow, "diagonal rule at {m_tuple:?}");
            }
        }
    }

    #[test]
    fn permuting_objects_permutes_indices() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x9e27);
        let m1 = random_matrix(&mut rng, 3);
        let m2 = random_matrix(&mut rng, 3);
        let m3 = random_matrix(&mut rng, 3);
        let t = compose_tensor(vec![m1.clone(), m2.clone(), m3.clone()]).unwrap();
        let t_perm = compose_tensor(vec![m3, m1, m2]).unwrap();
        let perm = |v: &[usize]| vec![v[2], v[0], v[1]];
        for a in t.index_tuples().unwrap() {
            for b in t.index_tuples().unwrap() {
                // summation order differs, so compare up to rounding
                assert!(t
                    .entry(&a, &b)
                    .unwrap()
                    .approx_eq(&t_perm.entry(&perm(&a), &perm(&b)).unwrap(), 1e-12));
            }
        }
    }

    #[test]
    fn single_difference_through_a_zero_pair_is_zero() {
        // E_{0|1} = 0 for object 0
        let zero_mat = ReliabilityMatrix::from_entries(
            vec![vec![ExtReal::ZERO, ExtReal::ZERO], vec![fin(0.4), fin(0.4)]],
            B,
        )
        .unwrap();
        let other = two_state_matrix(0.3, 0.5);
        let t = compose_tensor(vec![zero_mat, other]).unwrap();
        assert_eq!(t.entry(&[0, 0], &[1, 0]).unwrap(), ExtReal::ZERO);
        // and it drags the tuple diagonal down with it
        assert_eq!(t.entry(&[0, 0], &[0, 0]).unwrap(), ExtReal::ZERO);
        // but a second differing coordinate adds its own positive cost
        assert_eq!(t.entry(&[0, 0], &[1, 1]).unwrap(), fin(0.3));
    }

    #[test]
    fn compound_conditions_aggregate_per_object() {
        let spec = example_spec(&[&[0.05, 0.05], &[0.05, 0.05], &[0.05, 0.05]]);
        let report = check_conditions_multi(&spec).unwrap();
        assert!(report.ok());

        // second object breaks the first bound (0.2 > 0.1030745...)
        let spec = example_spec(&[&[0.05, 0.05], &[0.2, 0.05], &[0.05, 0.05]]);
        let report = check_conditions_multi(&spec).unwrap();
        assert!(!report.ok());
        assert!(report.per_object[0].ok());
        assert!(!report.per_object[1].ok());
        assert!(report.per_object[2].ok());
    }

    #[test]
    fn symmetric_spec_builds_a_symmetric_tensor() {
        let spec = example_spec(&[&[0.05, 0.05], &[0.05, 0.05], &[0.05, 0.05]]);
        let t = build_compound(&spec).unwrap();
        let e1 = t.entry(&[0, 1, 2], &[1, 1, 2]).unwrap();
        let e2 = t.entry(&[1, 0, 2], &[1, 1, 2]).unwrap();
        let e3 = t.entry(&[2, 1, 0], &[2, 1, 1]).unwrap();
        assert!(e1.approx_eq(&e2, 1e-12));
        assert!(e1.approx_eq(&e3, 1e-12));
    }

    #[test]
    fn violated_conditions_put_a_zero_in_the_tensor() {
        let spec = example_spec(&[&[0.2, 0.05], &[0.05, 0.05]]);
        assert!(!check_conditions_multi(&spec).unwrap().ok());
        let t = build_compound(&spec).unwrap();
        // object 0's matrix contains E_{2|0} = 0, so the single-difference
        // compound entry through that pair vanishes
        assert!(t.entry(&[2, 0], &[0, 0]).unwrap().is_zero());
    }

    #[test]
    fn family_classification() {
        let label = classify_family(&[vec![0.1, 0.2], vec![0.3, 0.4], vec![0.5, 0.6]]).unwrap();
        assert_eq!(label.family, Family::A);
        assert!(label.witnesses.is_empty());

        // objects 1 and 2 dead at hypothesis 0
        let label = classify_family(&[vec![0.1, 0.2], vec![0.0, 0.4], vec![0.0, 0.6]]).unwrap();
        assert_eq!(label.family, Family::B);
        assert_eq!(label.witnesses, vec![(1, 0), (2, 0)]);

        // exactly one object dead at hypothesis 1
        let label = classify_family(&[vec![0.1, 0.0], vec![0.3, 0.4], vec![0.5, 0.6]]).unwrap();
        assert_eq!(label.family, Family::C);
        assert_eq!(label.witnesses, vec![(0, 1)]);
    }

    #[test]
    fn family_c_symmetric_givens_split_evenly() {
        let e = 0.42;
        let rec = family_c_fill(0, [e, e, e]).unwrap();
        for v in rec.right_decision {
            assert!((v - e / 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn family_c_round_trip_is_exact() {
        let rec = family_c_fill(0, [0.3, 0.4, 0.5]).unwrap();
        assert!((rec.right_decision[0] - 0.3).abs() < 1e-15);
        assert!((rec.right_decision[1] - 0.2).abs() < 1e-15);
        assert!((rec.right_decision[2] - 0.1).abs() < 1e-15);
        for (i, g) in [0.3, 0.4, 0.5].into_iter().enumerate() {
            assert!((rec.compound_given(i).unwrap() - g).abs() < 1e-15);
        }
    }

    #[test]
    fn family_c_rejects_inconsistent_givens() {
        // triangle violated: g1 far above g2 + g3
        assert!(matches!(
            family_c_fill(0, [1.0, 0.1, 0.1]),
            Err(Error::InconsistentCompoundGivens { .. })
        ));
    }

    #[test]
    fn dense_guard_trips_on_large_spaces() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x9);
        let mats: Vec<ReliabilityMatrix> = (0..9).map(|_| random_matrix(&mut rng, 5)).collect();
        let t = compose_tensor(mats).unwrap();
        assert!(matches!(
            t.index_tuples(),
            Err(Error::DenseExportTooLarge { .. })
        ));
    }

    #[test]
    fn tuple_validation() {
        let t = compose_tensor(vec![two_state_matrix(0.1, 0.2), two_state_matrix(0.1, 0.2)])
            .unwrap();
        assert!(matches!(
            t.entry(&[0], &[1, 1]),
            Err(Error::TupleLengthMismatch { .. })
        ));
        assert!(matches!(
            t.entry(&[0, 2], &[1, 1]),
            Err(Error::HypothesisOutOfRange { .. })
        ));
    }
}
