//! Hodge types, split indices, and the dictionary between the automorphic
//! and motivic counts.
//!
//! Given two exponent lists `a` (rank `n`) and `b` (rank `n'`) at a place,
//! the split index `sp(i)` counts the entries of one spectrum that fall in
//! the `i`-th open gap of the other, with symbolic `±∞` sentinels at the
//! ends. The same count can be computed from the derived Hodge types; both
//! routes must agree entrywise on every tie-free input.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::half::{Extended, HalfInt};
use crate::shape::PlaceId;
use crate::spectral::{dual_and_conjugate, InfinityType, Involution};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SplitError {
    #[error("tie detected at place {place}: b_{j} = -a_{i} (gap counting is ill-defined)")]
    TieDetected { place: usize, i: usize, j: usize },
    #[error("middle Hodge weight: p + q' = (w + w')/2 at (i, j) = ({i}, {j})")]
    MiddleHodgeWeight { i: usize, j: usize },
    #[error("incompatible place counts: {0} vs {1}")]
    PlaceMismatch(usize, usize),
    #[error("Hodge pairs must satisfy p + q = w (pair {0})")]
    BadWeight(usize),
    #[error("Hodge p-parts must be strictly decreasing (pair {0})")]
    NotDecreasing(usize),
}

/// Hodge type of a regular pure "motive-like" object at one embedding:
/// a weight `w` and pairs `(p, w−p)` with strictly decreasing `p`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HodgeType {
    pub weight: i64,
    pub pairs: Vec<(i64, i64)>,
}

impl HodgeType {
    pub fn new(weight: i64, pairs: Vec<(i64, i64)>) -> Result<Self, SplitError> {
        for (k, &(p, q)) in pairs.iter().enumerate() {
            if p + q != weight {
                return Err(SplitError::BadWeight(k));
            }
            if k > 0 && pairs[k - 1].0 <= p {
                return Err(SplitError::NotDecreasing(k));
            }
        }
        Ok(HodgeType { weight, pairs })
    }

    pub fn rank(&self) -> usize {
        self.pairs.len()
    }

    /// The strictly decreasing first components.
    pub fn p_parts(&self) -> Vec<i64> {
        self.pairs.iter().map(|&(p, _)| p).collect()
    }

    /// Hodge type with every pair swapped, `(p, q) → (q, p)`.
    pub fn conjugate(&self) -> HodgeType {
        let mut pairs: Vec<(i64, i64)> = self.pairs.iter().map(|&(p, q)| (q, p)).collect();
        pairs.sort_by(|a, b| b.0.cmp(&a.0));
        HodgeType {
            weight: self.weight,
            pairs,
        }
    }

    /// Multiset Hodge data of a tensor product; the p-parts may repeat, so
    /// the result is not a [`HodgeType`].
    pub fn tensor(&self, other: &HodgeType) -> TensorHodge {
        let mut ps = Vec::with_capacity(self.pairs.len() * other.pairs.len());
        for &(p, _) in &self.pairs {
            for &(p2, _) in &other.pairs {
                ps.push(p + p2);
            }
        }
        ps.sort_unstable();
        ps.reverse();
        TensorHodge {
            weight: self.weight + other.weight,
            ps,
        }
    }
}

/// Hodge weights of a tensor product at one embedding: only the multiset of
/// p-parts and the total weight matter for criticality bounds.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TensorHodge {
    pub weight: i64,
    pub ps: Vec<i64>,
}

/// Length-`(n+1)` vector of split indices `sp(0), …, sp(n)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SplitVector {
    pub entries: Vec<i64>,
}

impl SplitVector {
    pub fn sum(&self) -> i64 {
        self.entries.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        let rev: Vec<i64> = self.entries.iter().rev().copied().collect();
        rev == self.entries
    }
}

/// Hodge type derived from an exponent list at one embedding of a place.
///
/// With `w = n − 1`: at the unbarred embedding the p-parts are
/// `−a_{n+1−i} + w/2`, at the barred embedding they are `a_i + w/2`; both are
/// integral by the parity constraint on the exponents and strictly
/// decreasing by regularity.
pub fn hodge_type_from_infinity_type(a: &InfinityType, place: PlaceId, barred: bool) -> HodgeType {
    let n = a.n as i64;
    let w = n - 1;
    let list = a.at(place);
    let mut pairs = Vec::with_capacity(a.n);
    for i in 1..=a.n {
        let p_doubled = if barred {
            list[i - 1].doubled() + w
        } else {
            -list[a.n - i].doubled() + w
        };
        debug_assert_eq!(p_doubled % 2, 0);
        let p = p_doubled / 2;
        pairs.push((p, w - p));
    }
    HodgeType { weight: w, pairs }
}

fn sentinel(list: &[HalfInt], idx_1based: i64) -> Extended {
    let n = list.len() as i64;
    if idx_1based <= 0 {
        Extended::PosInfinity
    } else if idx_1based >= n + 1 {
        Extended::NegInfinity
    } else {
        Extended::Finite(list[(idx_1based - 1) as usize])
    }
}

fn check_no_ties(a: &[HalfInt], b: &[HalfInt], place: usize) -> Result<(), SplitError> {
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            if x + y == HalfInt::ZERO {
                return Err(SplitError::TieDetected {
                    place,
                    i: i + 1,
                    j: j + 1,
                });
            }
        }
    }
    Ok(())
}

/// Split indices of the pair `(a, b)` at one embedding of `place`.
///
/// Unbarred: `sp(i) = #{j : −a_{n+1−i} > b_j > −a_{n−i}}`;
/// barred: `sp(i) = #{j : a_i > −b_j > a_{i+1}}`; in both cases the sentinel
/// values `a_0 = +∞`, `a_{n+1} = −∞` are honoured symbolically.
pub fn automorphic_split_indices(
    a: &InfinityType,
    b: &InfinityType,
    place: PlaceId,
    barred: bool,
) -> Result<SplitVector, SplitError> {
    let av = a.at(place);
    let bv = b.at(place);
    check_no_ties(av, bv, place.0)?;
    let n = a.n as i64;
    let mut entries = Vec::with_capacity(a.n + 1);
    for i in 0..=n {
        let count = if barred {
            let hi = sentinel(av, i);
            let lo = sentinel(av, i + 1);
            bv.iter()
                .filter(|&&bj| Extended::strictly_between(-bj, lo, hi))
                .count()
        } else {
            let hi = -sentinel(av, n + 1 - i);
            let lo = -sentinel(av, n - i);
            bv.iter()
                .filter(|&&bj| Extended::strictly_between(bj, lo, hi))
                .count()
        };
        entries.push(count as i64);
    }
    Ok(SplitVector { entries })
}

/// Split indices computed from Hodge data: counts `j` with
/// `p_i − (w+w')/2 > −q_j > p_{i+1} − (w+w')/2`, where `q_j` runs over the
/// strictly decreasing p-parts of the second argument and `p_0 = +∞`,
/// `p_{n+1} = −∞`.
pub fn motivic_split_indices(h: &HodgeType, h2: &HodgeType) -> Result<SplitVector, SplitError> {
    let mid_doubled = h.weight + h2.weight; // 2 · (w+w')/2
    let ps = h.p_parts();
    let qs = h2.p_parts();
    for (i, &p) in ps.iter().enumerate() {
        for (j, &q) in qs.iter().enumerate() {
            if 2 * (p + q) == mid_doubled {
                return Err(SplitError::MiddleHodgeWeight { i: i + 1, j: j + 1 });
            }
        }
    }
    // Work in doubled units shifted by (w+w')/2.
    let shifted: Vec<HalfInt> = ps
        .iter()
        .map(|&p| HalfInt::from_doubled(2 * p - mid_doubled))
        .collect();
    let n = ps.len() as i64;
    let mut entries = Vec::with_capacity(ps.len() + 1);
    for i in 0..=n {
        let hi = sentinel(&shifted, i);
        let lo = sentinel(&shifted, i + 1);
        let count = qs
            .iter()
            .filter(|&&q| Extended::strictly_between(HalfInt::from_doubled(-2 * q), lo, hi))
            .count();
        entries.push(count as i64);
    }
    Ok(SplitVector { entries })
}

/// Verifies the reflection identities
/// `sp(i, a^c; b^c, ι_v) = sp(i, a; b, ῑ_v) = sp(n−i, a; b, ι_v)` for all
/// `0 ≤ i ≤ n` at the given place.
pub fn reflection_check(
    a: &InfinityType,
    b: &InfinityType,
    place: PlaceId,
) -> Result<bool, SplitError> {
    let ac = dual_and_conjugate(a, Involution::Conjugate);
    let bc = dual_and_conjugate(b, Involution::Conjugate);
    let conj = automorphic_split_indices(&ac, &bc, place, false)?;
    let barred = automorphic_split_indices(a, b, place, true)?;
    let plain = automorphic_split_indices(a, b, place, false)?;
    let n = a.n;
    Ok((0..=n).all(|i| {
        conj.entries[i] == barred.entries[i] && barred.entries[i] == plain.entries[n - i]
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::HCParameter;

    fn itype(n: usize, doubled: Vec<i64>) -> InfinityType {
        InfinityType::from_doubled(n, vec![doubled]).unwrap()
    }

    #[test]
    fn hodge_from_symmetric_rank_two() {
        let a = itype(2, vec![3, -3]); // (3/2, −3/2), w = 1
        let h = hodge_type_from_infinity_type(&a, PlaceId(0), false);
        assert_eq!(h.pairs, vec![(2, -1), (-1, 2)]);
        let hb = hodge_type_from_infinity_type(&a, PlaceId(0), true);
        assert_eq!(hb.pairs, h.pairs);
    }

    #[test]
    fn hodge_from_rank_three() {
        let a = itype(3, vec![8, 0, -8]); // (4, 0, −4), w = 2
        let h = hodge_type_from_infinity_type(&a, PlaceId(0), false);
        assert_eq!(h.p_parts(), vec![5, 1, -3]);
        assert_eq!(h.weight, 2);
    }

    #[test]
    fn split_indices_step_one_instance() {
        // a = (4, 0, −4) against b = (7/2, 1/2): gap table (0, 2, 0, 0).
        let a = itype(3, vec![8, 0, -8]);
        let b = itype(2, vec![7, 1]);
        let sp = automorphic_split_indices(&a, &b, PlaceId(0), false).unwrap();
        assert_eq!(sp.entries, vec![0, 2, 0, 0]);
    }

    #[test]
    fn split_indices_interleaving_instance() {
        // b_j = A_j − 1/2 strictly interleaving gives (0, 1, 1, 0).
        let big_a = HCParameter::from_doubled(3, vec![vec![8, 0, -8]]).unwrap();
        let a_entries: Vec<i64> = big_a.per_place[0]
            .entries
            .iter()
            .rev()
            .map(|h| -h.doubled())
            .collect();
        let a = itype(3, a_entries);
        let b = itype(2, vec![8 - 1, 0 - 1]);
        let sp = automorphic_split_indices(&a, &b, PlaceId(0), false).unwrap();
        assert_eq!(sp.entries, vec![0, 1, 1, 0]);
    }

    #[test]
    fn tie_detection() {
        let a = itype(3, vec![2, 0, -2]); // (1, 0, −1)
        let b = itype(1, vec![0]);
        let err = automorphic_split_indices(&a, &b, PlaceId(0), false).unwrap_err();
        assert!(matches!(err, SplitError::TieDetected { .. }));
    }

    #[test]
    fn motivic_rank_two_times_one() {
        let a = itype(2, vec![3, -3]);
        let b = itype(1, vec![2]); // (1)
        let h = hodge_type_from_infinity_type(&a, PlaceId(0), false);
        let h2 = hodge_type_from_infinity_type(&b, PlaceId(0), false);
        let sp = motivic_split_indices(&h, &h2).unwrap();
        assert_eq!(sp.entries, vec![0, 1, 0]);
    }

    #[test]
    fn motivic_agrees_with_automorphic_on_step_one_instance() {
        let a = itype(3, vec![8, 0, -8]);
        let b = itype(2, vec![7, 1]);
        let h = hodge_type_from_infinity_type(&a, PlaceId(0), false);
        let h2 = hodge_type_from_infinity_type(&b, PlaceId(0), false);
        let sp = motivic_split_indices(&h, &h2).unwrap();
        assert_eq!(sp.entries, vec![0, 2, 0, 0]);
    }

    #[test]
    fn motivic_empty_second_argument() {
        let a = itype(3, vec![8, 0, -8]);
        let h = hodge_type_from_infinity_type(&a, PlaceId(0), false);
        let empty = HodgeType::new(-1, vec![]).unwrap();
        let sp = motivic_split_indices(&h, &empty).unwrap();
        assert_eq!(sp.entries, vec![0, 0, 0, 0]);
    }

    #[test]
    fn middle_hodge_weight_detected() {
        // p + q' = (w + w')/2 exactly when the underlying exponents cancel.
        let a = itype(3, vec![2, 0, -2]); // (1, 0, −1)
        let b = itype(1, vec![0]); // a_2 + b_1 = 0
        let h = hodge_type_from_infinity_type(&a, PlaceId(0), false);
        let h2 = hodge_type_from_infinity_type(&b, PlaceId(0), false);
        let err = motivic_split_indices(&h, &h2).unwrap_err();
        assert!(matches!(err, SplitError::MiddleHodgeWeight { .. }));
    }

    #[test]
    fn reflection_on_symmetric_instance() {
        let a = itype(3, vec![8, 0, -8]);
        let b = itype(2, vec![7, 1]);
        assert!(reflection_check(&a, &b, PlaceId(0)).unwrap());
        // Symmetric a and symmetric b make the vector palindromic.
        let b_sym = itype(2, vec![5, -5]);
        let sp = automorphic_split_indices(&a, &b_sym, PlaceId(0), false).unwrap();
        assert!(sp.is_palindromic());
    }

    #[test]
    fn sum_rule_on_examples() {
        let a = itype(3, vec![8, 0, -8]);
        let b = itype(2, vec![7, 1]);
        let sp = automorphic_split_indices(&a, &b, PlaceId(0), false).unwrap();
        assert_eq!(sp.sum(), 2);
        let sp2 = automorphic_split_indices(&b, &a, PlaceId(0), false).unwrap();
        assert_eq!(sp2.sum(), 3);
    }
}
