//! Spectral data at the archimedean places: highest weights, infinity types,
//! Harish-Chandra parameters, and the exact conversions between them.
//!
//! The conversion between a dominant algebraic highest weight `μ` and the
//! exponents of the corresponding induced representation is the affine map
//!
//! ```text
//! a_{v,j} = −μ_{ι_v, n−j+1} + (n+1)/2 − j,
//! ```
//!
//! applied per place to the `ι_v`-component of the weight. All data is kept
//! in doubled-integer form; a rank-`n` spectrum has entries in `ℤ + (n−1)/2`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::half::HalfInt;
use crate::shape::PlaceId;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpectralError {
    #[error("weight must be weakly decreasing at place {place} ({which} component)")]
    NotDominant { place: usize, which: &'static str },
    #[error("computed exponent list has tied entries at place {place}")]
    TiedEntries { place: usize },
    #[error("entry {entry} at place {place} is not in ℤ + ({rank}-1)/2")]
    ParityMismatch {
        place: usize,
        entry: HalfInt,
        rank: usize,
    },
    #[error("exponent list must be strictly decreasing at place {place}")]
    NotStrictlyDecreasing { place: usize },
    #[error("rank mismatch: expected {expected}, got {got} at place {place}")]
    RankMismatch {
        place: usize,
        expected: usize,
        got: usize,
    },
    #[error("parameter lists must be strictly decreasing at place {place}")]
    ParameterNotDecreasing { place: usize },
    #[error("rank must be at least 1")]
    RankZero,
}

/// Integer highest weight of an algebraic representation, with one vector per
/// embedding of each place.
///
/// The `bar` components are carried for regularity checks but are not read by
/// the weight ↔ exponent conversion; when a weight is reconstructed from an
/// exponent list they are zero-filled and `bar_synthetic` is set.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HighestWeight {
    pub n: usize,
    pub per_place: Vec<WeightAtPlace>,
    #[serde(default)]
    pub bar_synthetic: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct WeightAtPlace {
    pub iota: Vec<i64>,
    pub bar: Vec<i64>,
}

impl HighestWeight {
    pub fn new(n: usize, per_place: Vec<WeightAtPlace>) -> Result<Self, SpectralError> {
        if n == 0 {
            return Err(SpectralError::RankZero);
        }
        for (p, w) in per_place.iter().enumerate() {
            for (which, v) in [("iota", &w.iota), ("bar", &w.bar)] {
                if v.len() != n {
                    return Err(SpectralError::RankMismatch {
                        place: p,
                        expected: n,
                        got: v.len(),
                    });
                }
                if v.windows(2).any(|w| w[0] < w[1]) {
                    return Err(SpectralError::NotDominant { place: p, which });
                }
            }
        }
        Ok(HighestWeight {
            n,
            per_place,
            bar_synthetic: false,
        })
    }

    pub fn d(&self) -> usize {
        self.per_place.len()
    }

    /// Minimum over places and embeddings of the consecutive coordinate gaps.
    /// Returns `i64::MAX` for rank 1 (no gaps to bound).
    pub fn min_gap(&self) -> i64 {
        let mut gap = i64::MAX;
        for w in &self.per_place {
            for v in [&w.iota, &w.bar] {
                for pair in v.windows(2) {
                    gap = gap.min(pair[0] - pair[1]);
                }
            }
        }
        gap
    }
}

/// Exponent lists `(a_{v,1} > … > a_{v,n})` of an induced archimedean
/// representation, one strictly decreasing half-integer vector per place.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct InfinityType {
    pub n: usize,
    pub per_place: Vec<Vec<HalfInt>>,
}

impl InfinityType {
    pub fn new(n: usize, per_place: Vec<Vec<HalfInt>>) -> Result<Self, SpectralError> {
        if n == 0 {
            return Err(SpectralError::RankZero);
        }
        let parity = (n as i64 - 1).rem_euclid(2);
        for (p, v) in per_place.iter().enumerate() {
            if v.len() != n {
                return Err(SpectralError::RankMismatch {
                    place: p,
                    expected: n,
                    got: v.len(),
                });
            }
            for &e in v {
                if !e.has_parity(parity) {
                    return Err(SpectralError::ParityMismatch {
                        place: p,
                        entry: e,
                        rank: n,
                    });
                }
            }
            if v.windows(2).any(|w| w[0] <= w[1]) {
                return Err(SpectralError::NotStrictlyDecreasing { place: p });
            }
        }
        Ok(InfinityType { n, per_place })
    }

    /// Convenience constructor from doubled entries.
    pub fn from_doubled(n: usize, per_place: Vec<Vec<i64>>) -> Result<Self, SpectralError> {
        let per_place = per_place
            .into_iter()
            .map(|v| v.into_iter().map(HalfInt::from_doubled).collect())
            .collect();
        InfinityType::new(n, per_place)
    }

    pub fn d(&self) -> usize {
        self.per_place.len()
    }

    pub fn at(&self, place: PlaceId) -> &[HalfInt] {
        &self.per_place[place.0]
    }

    /// Minimum consecutive gap over all places, in doubled units.
    pub fn min_gap_doubled(&self) -> i64 {
        let mut gap = i64::MAX;
        for v in &self.per_place {
            for pair in v.windows(2) {
                gap = gap.min(pair[0].doubled() - pair[1].doubled());
            }
        }
        gap
    }
}

/// Which involution to apply to an exponent list.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Involution {
    /// Contragredient: each exponent is negated, lists re-sorted.
    Dual,
    /// Complex conjugation: swaps the roles of the two embeddings of every
    /// place, which acts on the stored (unbarred) lists the same way.
    Conjugate,
}

/// Harish-Chandra style parameter: one strictly decreasing half-integer list
/// per place, with an optional marked entry carried separately at each place
/// (the `(list ; extra)` shape of descent parameters).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HCParameter {
    pub n: usize,
    pub per_place: Vec<HCAtPlace>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HCAtPlace {
    pub entries: Vec<HalfInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marked: Option<HalfInt>,
}

impl HCAtPlace {
    pub fn plain(entries: Vec<HalfInt>) -> Self {
        HCAtPlace {
            entries,
            marked: None,
        }
    }

    /// Multiset of all entries including the marked one.
    pub fn multiset(&self) -> Vec<HalfInt> {
        let mut all = self.entries.clone();
        if let Some(m) = self.marked {
            all.push(m);
        }
        all.sort();
        all.reverse();
        all
    }
}

impl HCParameter {
    /// A parameter with no marked entries, validated for strict decrease.
    pub fn plain(n: usize, per_place: Vec<Vec<HalfInt>>) -> Result<Self, SpectralError> {
        if n == 0 {
            return Err(SpectralError::RankZero);
        }
        for (p, v) in per_place.iter().enumerate() {
            if v.len() != n {
                return Err(SpectralError::RankMismatch {
                    place: p,
                    expected: n,
                    got: v.len(),
                });
            }
            if v.windows(2).any(|w| w[0] <= w[1]) {
                return Err(SpectralError::ParameterNotDecreasing { place: p });
            }
        }
        Ok(HCParameter {
            n,
            per_place: per_place.into_iter().map(HCAtPlace::plain).collect(),
        })
    }

    pub fn from_doubled(n: usize, per_place: Vec<Vec<i64>>) -> Result<Self, SpectralError> {
        let per_place = per_place
            .into_iter()
            .map(|v| v.into_iter().map(HalfInt::from_doubled).collect())
            .collect();
        HCParameter::plain(n, per_place)
    }

    pub fn d(&self) -> usize {
        self.per_place.len()
    }

    pub fn at(&self, place: PlaceId) -> &HCAtPlace {
        &self.per_place[place.0]
    }

    /// Minimum consecutive gap of the unmarked lists, in doubled units.
    pub fn min_gap_doubled(&self) -> i64 {
        let mut gap = i64::MAX;
        for p in &self.per_place {
            for pair in p.entries.windows(2) {
                gap = gap.min(pair[0].doubled() - pair[1].doubled());
            }
        }
        gap
    }

    /// Equality as multisets-plus-marks, ignoring the split between the list
    /// and the marked slot.
    pub fn same_multiset(&self, other: &HCParameter) -> bool {
        self.n == other.n
            && self.per_place.len() == other.per_place.len()
            && self
                .per_place
                .iter()
                .zip(&other.per_place)
                .all(|(a, b)| a.multiset() == b.multiset() && a.marked == b.marked)
    }
}

/// Exponent list of the representation induced from a dominant weight.
///
/// Only the `ι_v` components of the weight enter. The affine shift adds one
/// to every consecutive gap, so the result is strictly decreasing for every
/// weakly dominant weight; the tie check is defensive.
pub fn infinity_type_from_weight(mu: &HighestWeight) -> Result<InfinityType, SpectralError> {
    let n = mu.n as i64;
    let mut per_place = Vec::with_capacity(mu.per_place.len());
    for (p, w) in mu.per_place.iter().enumerate() {
        let mut list = Vec::with_capacity(mu.n);
        for j in 1..=n {
            // a_j = −μ_{n−j+1} + (n+1)/2 − j, in doubled units
            let mu_entry = w.iota[(n - j) as usize];
            list.push(HalfInt::from_doubled(-2 * mu_entry + (n + 1) - 2 * j));
        }
        if list.windows(2).any(|w| w[0] <= w[1]) {
            return Err(SpectralError::TiedEntries { place: p });
        }
        per_place.push(list);
    }
    InfinityType::new(mu.n, per_place)
}

/// Inverse of [`infinity_type_from_weight`]: rebuilds the `ι_v` components
/// and zero-fills the `bar` components, flagging them as synthetic.
pub fn weight_from_infinity_type(a: &InfinityType) -> Result<HighestWeight, SpectralError> {
    let n = a.n as i64;
    let parity = (n - 1).rem_euclid(2);
    let mut per_place = Vec::with_capacity(a.per_place.len());
    for (p, v) in a.per_place.iter().enumerate() {
        let mut iota = vec![0i64; a.n];
        for k in 1..=n {
            let entry = v[(n - k) as usize];
            if !entry.has_parity(parity) {
                return Err(SpectralError::ParityMismatch {
                    place: p,
                    entry,
                    rank: a.n,
                });
            }
            // μ_k = k − (n+1)/2 − a_{n+1−k}
            iota[(k - 1) as usize] = (2 * k - (n + 1) - entry.doubled()) / 2;
        }
        per_place.push(WeightAtPlace {
            iota,
            bar: vec![0; a.n],
        });
    }
    let mut weight = HighestWeight::new(a.n, per_place)?;
    weight.bar_synthetic = true;
    Ok(weight)
}

/// `m`-regularity of a weight: all consecutive coordinate gaps, at every
/// place and both embeddings, are at least `m`.
pub fn is_m_regular(mu: &HighestWeight, m: i64) -> bool {
    mu.n == 1 || mu.min_gap() >= m
}

/// Applies the chosen involution; both act on the stored lists by negating
/// and reversing each per-place vector.
pub fn dual_and_conjugate(a: &InfinityType, _op: Involution) -> InfinityType {
    let per_place = a
        .per_place
        .iter()
        .map(|v| v.iter().rev().map(|&x| -x).collect())
        .collect();
    InfinityType {
        n: a.n,
        per_place,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weight(n: usize, iota: Vec<Vec<i64>>) -> HighestWeight {
        let per_place = iota
            .into_iter()
            .map(|v| WeightAtPlace {
                bar: v.clone(),
                iota: v,
            })
            .collect();
        HighestWeight::new(n, per_place).unwrap()
    }

    // Direct re-evaluation of the defining affine map, kept separate from the
    // implementation so the frozen examples have an independent route.
    fn exponent_oracle(iota: &[i64]) -> Vec<i64> {
        let n = iota.len() as i64;
        (1..=n)
            .map(|j| -2 * iota[(n - j) as usize] + (n + 1) - 2 * j)
            .collect()
    }

    #[test]
    fn zero_weight_rank_two() {
        let a = infinity_type_from_weight(&weight(2, vec![vec![0, 0]])).unwrap();
        assert_eq!(a.per_place[0], vec![HalfInt::from_doubled(1), HalfInt::from_doubled(-1)]);
    }

    #[test]
    fn rank_three_example_matches_oracle() {
        let mu = weight(3, vec![vec![2, 0, -2]]);
        let a = infinity_type_from_weight(&mu).unwrap();
        let doubled: Vec<i64> = a.per_place[0].iter().map(|h| h.doubled()).collect();
        assert_eq!(doubled, exponent_oracle(&[2, 0, -2]));
        assert_eq!(doubled, vec![6, 0, -6]); // a = (3, 0, −3)
    }

    #[test]
    fn weakly_dominant_weights_still_separate() {
        // The affine shift adds one to every weight gap, so even tied weight
        // coordinates produce strictly decreasing exponents.
        let a = infinity_type_from_weight(&weight(2, vec![vec![1, 1]])).unwrap();
        let doubled: Vec<i64> = a.per_place[0].iter().map(|h| h.doubled()).collect();
        assert_eq!(doubled, vec![-1, -3]); // (−1/2, −3/2)
    }

    #[test]
    fn inverse_map_examples() {
        let a = InfinityType::from_doubled(2, vec![vec![1, -1]]).unwrap();
        let mu = weight_from_infinity_type(&a).unwrap();
        assert_eq!(mu.per_place[0].iota, vec![0, 0]);
        assert!(mu.bar_synthetic);

        let a = InfinityType::from_doubled(3, vec![vec![8, 0, -8]]).unwrap();
        let mu = weight_from_infinity_type(&a).unwrap();
        assert_eq!(mu.per_place[0].iota, vec![3, 0, -3]);
    }

    #[test]
    fn parity_mismatch_detected() {
        // (1, 0) is not inside ℤ + 1/2, so rank-2 construction already fails.
        let err = InfinityType::from_doubled(2, vec![vec![2, 0]]).unwrap_err();
        assert!(matches!(err, SpectralError::ParityMismatch { .. }));
    }

    #[test]
    fn regularity_examples() {
        let mu = weight(3, vec![vec![2, 0, -2]]);
        assert!(is_m_regular(&mu, 2));
        assert!(!is_m_regular(&mu, 3));

        let uneven = HighestWeight::new(
            3,
            vec![WeightAtPlace {
                iota: vec![10, 5, 0],
                bar: vec![10, 4, 0],
            }],
        )
        .unwrap();
        assert!(!is_m_regular(&uneven, 5));
        assert!(is_m_regular(&uneven, 4));
    }

    #[test]
    fn involution_examples() {
        let a = InfinityType::from_doubled(2, vec![vec![3, -3]]).unwrap();
        assert_eq!(dual_and_conjugate(&a, Involution::Dual), a);

        let a = InfinityType::from_doubled(3, vec![vec![8, 0, -8]]).unwrap();
        assert_eq!(dual_and_conjugate(&a, Involution::Dual), a);

        let a = InfinityType::from_doubled(2, vec![vec![5, 1]]).unwrap();
        let d = dual_and_conjugate(&a, Involution::Dual);
        assert_eq!(d, InfinityType::from_doubled(2, vec![vec![-1, -5]]).unwrap());
    }

    #[test]
    fn gap_identity_between_weight_and_exponents() {
        // a_{j} − a_{j+1} = μ_{n−j} − μ_{n−j+1} + 1, coordinatewise.
        let iota = vec![7, 3, 3, -2];
        let mu = HighestWeight::new(
            4,
            vec![WeightAtPlace {
                iota: iota.clone(),
                bar: iota.clone(),
            }],
        )
        .unwrap();
        let a = infinity_type_from_weight(&mu).unwrap();
        let raw: Vec<i64> = a.per_place[0].iter().map(|h| h.doubled()).collect();
        assert_eq!(raw, exponent_oracle(&iota));
        let n = iota.len();
        for j in 1..n {
            let lhs = raw[j - 1] - raw[j];
            let rhs = 2 * (iota[n - j - 1] - iota[n - j]) + 2;
            assert_eq!(lhs, rhs);
        }
    }
}
