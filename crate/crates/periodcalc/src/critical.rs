//! Critical sets of Rankin–Selberg L-functions, critical integers of tensor
//! Hodge data, and the shift dictionary between the two.
//!
//! For exponent lists `a`, `b` the critical points are the half-integers
//! `s₀ ∈ (n−n')/2 + ℤ` with `−m < s₀ ≤ m`, where `m = min |a_{v,i} + b_{v,j}|`
//! over all places and index pairs; the set is non-empty only if no pair sums
//! to zero. On the Hodge side an integer is critical when it lies in the
//! analogous window around half the tensor weight; the two sets match under
//! the shift `m = s₀ + (n + n' − 2)/2`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::half::HalfInt;
use crate::hodge::{hodge_type_from_infinity_type, TensorHodge};
use crate::shape::PlaceId;
use crate::spectral::InfinityType;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CriticalError {
    #[error("both ranks must be positive")]
    RankZero,
    #[error("incompatible place counts: {0} vs {1}")]
    PlaceMismatch(usize, usize),
    #[error("no critical points: a_{i} + b_{j} = 0 at place {place}")]
    NoCriticalPoints { place: usize, i: usize, j: usize },
    #[error("middle Hodge weight: p = w/2 (doubled p {p_doubled}, weight {weight})")]
    MiddleHodgeWeight { p_doubled: i64, weight: i64 },
    #[error("tensor Hodge lists disagree on the weight: {0} vs {1}")]
    WeightMismatch(i64, i64),
    #[error("empty Hodge data")]
    EmptyHodge,
}

/// Explicit critical set: an interval of an arithmetic progression, open on
/// the left and closed on the right.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CriticalSet {
    /// Coset representative of the progression mod 1 (doubled value 0 or 1).
    pub anchor: HalfInt,
    /// Exclusive lower bound `−m`.
    pub lower: HalfInt,
    /// Inclusive upper bound `m`.
    pub upper: HalfInt,
    /// All members, in increasing order.
    pub members: Vec<HalfInt>,
}

fn check_pair(a: &InfinityType, b: &InfinityType) -> Result<(), CriticalError> {
    if a.n == 0 || b.n == 0 {
        return Err(CriticalError::RankZero);
    }
    if a.d() != b.d() {
        return Err(CriticalError::PlaceMismatch(a.d(), b.d()));
    }
    Ok(())
}

fn first_zero_pair(a: &InfinityType, b: &InfinityType) -> Option<(usize, usize, usize)> {
    for place in 0..a.d() {
        for (i, &x) in a.per_place[place].iter().enumerate() {
            for (j, &y) in b.per_place[place].iter().enumerate() {
                if x + y == HalfInt::ZERO {
                    return Some((place, i + 1, j + 1));
                }
            }
        }
    }
    None
}

/// Minimum of `|a_{v,i} + b_{v,j}|` over all places and index pairs.
fn min_abs_sum(a: &InfinityType, b: &InfinityType) -> HalfInt {
    let mut m = i64::MAX;
    for place in 0..a.d() {
        for &x in &a.per_place[place] {
            for &y in &b.per_place[place] {
                m = m.min((x + y).doubled().abs());
            }
        }
    }
    HalfInt::from_doubled(m)
}

/// True exactly when no exponent pair sums to zero at any place.
pub fn has_critical_points(a: &InfinityType, b: &InfinityType) -> Result<bool, CriticalError> {
    check_pair(a, b)?;
    Ok(first_zero_pair(a, b).is_none())
}

/// The full critical set of the pair `(a, b)`.
pub fn critical_set(a: &InfinityType, b: &InfinityType) -> Result<CriticalSet, CriticalError> {
    check_pair(a, b)?;
    if let Some((place, i, j)) = first_zero_pair(a, b) {
        return Err(CriticalError::NoCriticalPoints { place, i, j });
    }
    let m = min_abs_sum(a, b);
    // anchor = (n − n')/2 reduced mod 1
    let anchor = HalfInt::from_doubled((a.n as i64 - b.n as i64).rem_euclid(2));
    let mut members = Vec::new();
    // smallest member of anchor + ℤ strictly above −m
    let mut s = anchor.doubled();
    while s > -m.doubled() {
        s -= 2;
    }
    while s <= -m.doubled() {
        s += 2;
    }
    while s <= m.doubled() {
        members.push(HalfInt::from_doubled(s));
        s += 2;
    }
    Ok(CriticalSet {
        anchor,
        lower: -m,
        upper: m,
        members,
    })
}

/// Critical integers of tensor Hodge data spread over several embeddings:
/// the integers `m` with `−min + w/2 < m ≤ min + w/2`, where `min` is the
/// least `|p − w/2|` over every listed Hodge weight.
pub fn motivic_critical_set(tensors: &[TensorHodge]) -> Result<Vec<i64>, CriticalError> {
    if tensors.is_empty() || tensors.iter().all(|t| t.ps.is_empty()) {
        return Err(CriticalError::EmptyHodge);
    }
    let weight = tensors[0].weight;
    let mut min_doubled = i64::MAX;
    for t in tensors {
        if t.weight != weight {
            return Err(CriticalError::WeightMismatch(weight, t.weight));
        }
        for &p in &t.ps {
            let dev = 2 * p - weight; // doubled p − w/2
            if dev == 0 {
                return Err(CriticalError::MiddleHodgeWeight {
                    p_doubled: 2 * p,
                    weight,
                });
            }
            min_doubled = min_doubled.min(dev.abs());
        }
    }
    // integers m with −min + w/2 < m ≤ min + w/2, in doubled units
    let lo = -min_doubled + weight;
    let hi = min_doubled + weight;
    let mut out = Vec::new();
    let mut md = if lo.rem_euclid(2) == 0 { lo + 2 } else { lo + 1 };
    while md <= hi {
        out.push(md / 2);
        md += 2;
    }
    Ok(out)
}

/// Tensor Hodge data of the pair at every embedding (both members of each
/// conjugate pair, at every place).
pub fn tensor_hodge_all_embeddings(a: &InfinityType, b: &InfinityType) -> Vec<TensorHodge> {
    let mut out = Vec::new();
    for place in 0..a.d() {
        for barred in [false, true] {
            let h = hodge_type_from_infinity_type(a, PlaceId(place), barred);
            let h2 = hodge_type_from_infinity_type(b, PlaceId(place), barred);
            out.push(h.tensor(&h2));
        }
    }
    out
}

/// Confirms that the Hodge-side critical integers are exactly the shifted
/// critical points: `{s₀ + (n + n' − 2)/2}`.
pub fn check_shift_dictionary(a: &InfinityType, b: &InfinityType) -> Result<bool, CriticalError> {
    let auto = critical_set(a, b)?;
    let motivic = motivic_critical_set(&tensor_hodge_all_embeddings(a, b))?;
    let shift = a.n as i64 + b.n as i64 - 2; // doubled value of (n + n' − 2)/2
    let shifted: Vec<i64> = auto
        .members
        .iter()
        .map(|s| {
            let doubled = s.doubled() + shift;
            debug_assert_eq!(doubled % 2, 0);
            doubled / 2
        })
        .collect();
    Ok(shifted == motivic)
}
