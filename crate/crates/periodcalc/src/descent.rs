//! Discrete-series bookkeeping for the descent to unitary groups: the
//! parameters `A(q)` and `A'(q)`, the associated Hodge numbers, cohomology
//! degrees, and the exponent list of the auxiliary rank-`(n−1)`
//! representation used in the factorization argument.
//!
//! All transforms act at the distinguished place `v0`; the remaining places
//! are definite and only receive the uniform `−1/2` shift.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::half::HalfInt;
use crate::hodge::HodgeType;
use crate::shape::PlaceId;
use crate::spectral::{HCAtPlace, HCParameter, InfinityType};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DescentError {
    #[error("index q = {q} out of range (need 0 ≤ q ≤ {max})")]
    IndexOutOfRange { q: usize, max: usize },
    #[error("parameter is not 2-regular at the distinguished place (doubled gap {gap_doubled} < 4)")]
    NotRegular { gap_doubled: i64 },
    #[error("parameter has a marked entry; a plain strictly decreasing list is required")]
    AlreadyMarked,
    #[error("distinguished place {0} out of range (d = {1})")]
    PlaceOutOfRange(usize, usize),
    #[error("rank must be at least 2")]
    RankTooSmall,
    #[error("derived exponent list invalid: {0}")]
    DerivedTypeInvalid(String),
}

/// Archimedean signatures `(r_v, s_v)` with `r_v + s_v = n`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SignatureTuple {
    pub per_place: Vec<(u32, u32)>,
}

impl SignatureTuple {
    /// The distinguished shape: signature `(n−1, 1)` at `v0`, definite
    /// `(n, 0)` elsewhere.
    pub fn standard_indefinite(d: usize, n: u32, v0: PlaceId) -> Self {
        let per_place = (0..d)
            .map(|p| if PlaceId(p) == v0 { (n - 1, 1) } else { (n, 0) })
            .collect();
        SignatureTuple { per_place }
    }

    /// The `I`-vector (`I_v = s_v`) used to index global period symbols.
    pub fn i_vector(&self) -> Vec<u32> {
        self.per_place.iter().map(|&(_, s)| s).collect()
    }
}

fn validate(a: &HCParameter, v0: PlaceId) -> Result<(), DescentError> {
    if v0.0 >= a.d() {
        return Err(DescentError::PlaceOutOfRange(v0.0, a.d()));
    }
    if a.per_place.iter().any(|p| p.marked.is_some()) {
        return Err(DescentError::AlreadyMarked);
    }
    Ok(())
}

/// The parameter with entry `q+1` at `v0` deleted from the list and carried
/// as the marked entry; unchanged away from `v0`.
pub fn hc_of_q(a: &HCParameter, q: usize, v0: PlaceId) -> Result<HCParameter, DescentError> {
    validate(a, v0)?;
    if q > a.n - 1 {
        return Err(DescentError::IndexOutOfRange { q, max: a.n - 1 });
    }
    let per_place = a
        .per_place
        .iter()
        .enumerate()
        .map(|(p, at)| {
            if PlaceId(p) == v0 {
                let mut entries = at.entries.clone();
                let marked = entries.remove(q);
                HCAtPlace {
                    entries,
                    marked: Some(marked),
                }
            } else {
                at.clone()
            }
        })
        .collect();
    Ok(HCParameter {
        n: a.n,
        per_place,
    })
}

fn require_regular(a: &HCParameter, v0: PlaceId) -> Result<(), DescentError> {
    let entries = &a.at(v0).entries;
    for pair in entries.windows(2) {
        let gap = pair[0].doubled() - pair[1].doubled();
        if gap < 4 {
            return Err(DescentError::NotRegular { gap_doubled: gap });
        }
    }
    Ok(())
}

/// Rank-`(n−1)` parameter: at `v0` the entries `A_i − 1/2` for
/// `i ≤ n−1, i ≠ q+1` with `A_{q+1} + 1/2` carried as the marked entry; away
/// from `v0` the first `n−1` entries, each shifted by `−1/2`.
pub fn hc_prime_of_q(a: &HCParameter, q: usize, v0: PlaceId) -> Result<HCParameter, DescentError> {
    validate(a, v0)?;
    if a.n < 2 {
        return Err(DescentError::RankTooSmall);
    }
    if q > a.n - 2 {
        return Err(DescentError::IndexOutOfRange { q, max: a.n - 2 });
    }
    require_regular(a, v0)?;
    let half = HalfInt::HALF;
    let per_place = a
        .per_place
        .iter()
        .enumerate()
        .map(|(p, at)| {
            if PlaceId(p) == v0 {
                let entries = (0..a.n - 1)
                    .filter(|&i| i != q)
                    .map(|i| at.entries[i] - half)
                    .collect();
                HCAtPlace {
                    entries,
                    marked: Some(at.entries[q] + half),
                }
            } else {
                HCAtPlace::plain(
                    at.entries[..a.n - 1].iter().map(|&e| e - half).collect(),
                )
            }
        })
        .collect();
    Ok(HCParameter {
        n: a.n - 1,
        per_place,
    })
}

/// Hodge numbers attached to the rank-`n` parameter: primary pairs
/// `(p_i, n−1−p_i)` with `p_i = −A_{n+1−i} + (n−1)/2`, together with their
/// conjugates `(q_i, p_i)`.
pub fn hodge_numbers_h(a: &HCParameter, v0: PlaceId) -> (HodgeType, HodgeType) {
    let n = a.n as i64;
    let w = n - 1;
    let entries = &a.at(v0).entries;
    let mut pairs = Vec::with_capacity(a.n);
    for i in 1..=a.n {
        let p_doubled = -entries[a.n - i].doubled() + w;
        debug_assert_eq!(p_doubled % 2, 0);
        let p = p_doubled / 2;
        pairs.push((p, w - p));
    }
    let primary = HodgeType { weight: w, pairs };
    let conjugate = primary.conjugate();
    (primary, conjugate)
}

/// Hodge numbers of the derived rank-`(n−1)` datum: `p'_i = A_i + (n−3)/2`
/// except `p'_{q+1} = A_{q+1} + (n−1)/2`, with `q'_i = n − 2 − p'_i`.
pub fn hodge_numbers_h_prime(
    a: &HCParameter,
    q: usize,
    v0: PlaceId,
) -> Result<HodgeType, DescentError> {
    validate(a, v0)?;
    if a.n < 2 {
        return Err(DescentError::RankTooSmall);
    }
    if q > a.n - 2 {
        return Err(DescentError::IndexOutOfRange { q, max: a.n - 2 });
    }
    require_regular(a, v0)?;
    let n = a.n as i64;
    let entries = &a.at(v0).entries;
    let mut pairs = Vec::with_capacity(a.n - 1);
    for i in 1..=a.n - 1 {
        let shift = if i == q + 1 { n - 1 } else { n - 3 };
        let p_doubled = entries[i - 1].doubled() + shift;
        debug_assert_eq!(p_doubled % 2, 0);
        let p = p_doubled / 2;
        pairs.push((p, n - 2 - p));
    }
    pairs.sort_by(|x, y| y.0.cmp(&x.0));
    Ok(HodgeType {
        weight: n - 2,
        pairs,
    })
}

/// Exponent list of the auxiliary rank-`(n−1)` representation: entries
/// `A_{v,j} − 1/2`, except the marked slot `A_{v0,q+1} + 1/2` at the
/// distinguished place, re-sorted into strictly decreasing order.
pub fn pi_prime_infinity_type(
    a: &HCParameter,
    q: usize,
    v0: PlaceId,
) -> Result<InfinityType, DescentError> {
    let prime = hc_prime_of_q(a, q, v0)?;
    let per_place = prime
        .per_place
        .iter()
        .map(|at| at.multiset())
        .collect();
    InfinityType::new(a.n - 1, per_place)
        .map_err(|e| DescentError::DerivedTypeInvalid(e.to_string()))
}

/// Cohomology degree of the auxiliary representation: `n − q − 2`.
pub fn coh_degree_prime(n: usize, q: usize) -> Result<usize, DescentError> {
    if n < 2 || q > n - 2 {
        return Err(DescentError::IndexOutOfRange {
            q,
            max: n.saturating_sub(2),
        });
    }
    Ok(n - q - 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hodge::hodge_type_from_infinity_type;

    fn param(n: usize, doubled: Vec<i64>) -> HCParameter {
        HCParameter::from_doubled(n, vec![doubled]).unwrap()
    }

    const V0: PlaceId = PlaceId(0);

    #[test]
    fn marking_deletes_and_reappends() {
        let a = param(3, vec![8, 0, -8]); // A = (4, 0, −4)
        let aq = hc_of_q(&a, 1, V0).unwrap();
        let at = aq.at(V0);
        assert_eq!(
            at.entries,
            vec![HalfInt::from_int(4), HalfInt::from_int(-4)]
        );
        assert_eq!(at.marked, Some(HalfInt::ZERO));

        let a0 = hc_of_q(&a, 0, V0).unwrap();
        assert_eq!(
            a0.at(V0).entries,
            vec![HalfInt::ZERO, HalfInt::from_int(-4)]
        );
        assert_eq!(a0.at(V0).marked, Some(HalfInt::from_int(4)));

        assert!(matches!(
            hc_of_q(&a, 3, V0),
            Err(DescentError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn derived_parameter_examples() {
        let a = param(3, vec![8, 0, -8]);
        // q = 1: unmarked {A_1 − 1/2} = {7/2}, marked A_2 + 1/2 = 1/2.
        let p = hc_prime_of_q(&a, 1, V0).unwrap();
        assert_eq!(p.n, 2);
        assert_eq!(p.at(V0).entries, vec![HalfInt::from_doubled(7)]);
        assert_eq!(p.at(V0).marked, Some(HalfInt::from_doubled(1)));

        // q = 0: unmarked {A_2 − 1/2} = {−1/2}, marked A_1 + 1/2 = 9/2.
        let p = hc_prime_of_q(&a, 0, V0).unwrap();
        assert_eq!(p.at(V0).entries, vec![HalfInt::from_doubled(-1)]);
        assert_eq!(p.at(V0).marked, Some(HalfInt::from_doubled(9)));

        let tight = param(3, vec![2, 0, -2]); // gaps 1 < 2
        assert!(matches!(
            hc_prime_of_q(&tight, 0, V0),
            Err(DescentError::NotRegular { .. })
        ));
        assert!(matches!(
            hc_prime_of_q(&a, 2, V0),
            Err(DescentError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn hodge_numbers_examples() {
        let a = param(3, vec![8, 0, -8]);
        let (h, hc) = hodge_numbers_h(&a, V0);
        assert_eq!(h.p_parts(), vec![5, 1, -3]);
        assert_eq!(hc.p_parts(), vec![5, 1, -3]); // symmetric parameter

        let a2 = param(2, vec![1, -1]);
        let (h2, _) = hodge_numbers_h(&a2, V0);
        assert_eq!(h2.p_parts(), vec![1, 0]);
    }

    #[test]
    fn hodge_numbers_match_exponent_route() {
        // Exponents a_i = −A_{n+1−i}; the barred-embedding Hodge type must
        // reproduce the primary pairs.
        let a = param(3, vec![10, 2, -6]);
        let exps: Vec<i64> = a.at(V0).entries.iter().rev().map(|h| -h.doubled()).collect();
        let itype = InfinityType::from_doubled(3, vec![exps]).unwrap();
        let via_exponents = hodge_type_from_infinity_type(&itype, V0, true);
        let (primary, _) = hodge_numbers_h(&a, V0);
        assert_eq!(primary, via_exponents);
    }

    #[test]
    fn hodge_prime_examples() {
        let a = param(3, vec![8, 0, -8]);
        let h = hodge_numbers_h_prime(&a, 1, V0).unwrap();
        assert_eq!(h.pairs, vec![(4, -3), (1, 0)]);
        let h0 = hodge_numbers_h_prime(&a, 0, V0).unwrap();
        assert_eq!(h0.p_parts(), vec![5, 0]);

        let tight = param(3, vec![2, 0, -2]);
        assert!(matches!(
            hodge_numbers_h_prime(&tight, 1, V0),
            Err(DescentError::NotRegular { .. })
        ));
    }

    #[test]
    fn auxiliary_exponent_list() {
        let a = param(3, vec![8, 0, -8]);
        let b = pi_prime_infinity_type(&a, 1, V0).unwrap();
        assert_eq!(b.per_place[0], vec![HalfInt::from_doubled(7), HalfInt::from_doubled(1)]);

        // Multiset agreement with the derived parameter at v0.
        let prime = hc_prime_of_q(&a, 1, V0).unwrap();
        assert_eq!(prime.at(V0).multiset(), b.per_place[0]);
    }

    #[test]
    fn cohomology_degrees() {
        assert_eq!(coh_degree_prime(3, 1).unwrap(), 0);
        assert_eq!(coh_degree_prime(6, 0).unwrap(), 4);
        assert!(coh_degree_prime(3, 2).is_err());
    }

    #[test]
    fn regularity_drops_by_at_most_one() {
        let a = param(4, vec![21, 7, -7, -21]); // gaps 7 (doubled 14)
        for q in 0..=2 {
            let b = pi_prime_infinity_type(&a, q, V0).unwrap();
            assert!(b.min_gap_doubled() >= a.min_gap_doubled() - 2);
        }
    }

    #[test]
    fn definite_places_get_uniform_shift() {
        let a = HCParameter::from_doubled(3, vec![vec![8, 0, -8], vec![12, 4, -4]]).unwrap();
        let p = hc_prime_of_q(&a, 1, V0).unwrap();
        assert_eq!(
            p.per_place[1].entries,
            vec![HalfInt::from_doubled(11), HalfInt::from_doubled(3)]
        );
        assert_eq!(p.per_place[1].marked, None);
    }
}
