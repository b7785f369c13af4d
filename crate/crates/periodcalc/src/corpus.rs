//! Seeded random instance generation for property runs.
//!
//! Instances are pairs of tie-free exponent lists over a common shape; the
//! generator resamples until no exponent pair sums to zero, so every emitted
//! instance has a non-empty critical set and well-defined split indices.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::critical::has_critical_points;
use crate::half::HalfInt;
use crate::period::{
    AsaiSign, CharacterExpr, ConstLabel, Datum, LValueKind, PeriodContext, PeriodMonomial,
    PeriodSymbol, RepTag,
};
use crate::shape::{CMShape, Embedding, PlaceId};
use crate::spectral::InfinityType;

#[derive(Clone, Debug)]
pub struct CorpusParams {
    pub seed: u64,
    pub count: usize,
    pub max_n: usize,
    pub max_d: usize,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams {
            seed: 0,
            count: 500,
            max_n: 6,
            max_d: 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PairInstance {
    pub shape: CMShape,
    pub a: InfinityType,
    pub b: InfinityType,
}

/// One strictly decreasing exponent list of rank `n` with the right parity,
/// top entry near `spread`, and doubled gaps in `2..=gap_doubled`.
pub fn random_spectrum(
    rng: &mut impl Rng,
    n: usize,
    d: usize,
    spread: i64,
    gap_doubled: i64,
) -> InfinityType {
    let parity = (n as i64 - 1).rem_euclid(2);
    let per_place = (0..d)
        .map(|_| {
            let mut top = rng.gen_range(-spread..=spread) * 2 + parity;
            let mut list = Vec::with_capacity(n);
            for _ in 0..n {
                list.push(HalfInt::from_doubled(top));
                top -= 2 * rng.gen_range(1..=gap_doubled.max(1));
            }
            list
        })
        .collect();
    InfinityType::new(n, per_place).expect("generated list is strictly decreasing")
}

/// A tie-free pair with `1 ≤ n' < n ≤ max_n` over a random shape.
pub fn random_pair(rng: &mut impl Rng, max_n: usize, max_d: usize) -> PairInstance {
    loop {
        let d = rng.gen_range(1..=max_d);
        let n = rng.gen_range(2..=max_n);
        let np = rng.gen_range(1..n);
        let shape = CMShape::with_default_labels(d);
        let a = random_spectrum(rng, n, d, 8, 4);
        let b = random_spectrum(rng, np, d, 8, 4);
        if has_critical_points(&a, &b).unwrap_or(false) {
            return PairInstance { shape, a, b };
        }
    }
}

/// Deterministic corpus for a seed.
pub fn corpus(params: &CorpusParams) -> Vec<PairInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    (0..params.count)
        .map(|_| random_pair(&mut rng, params.max_n, params.max_d))
        .collect()
}

/// A random legal embedding set (never meeting its own conjugate).
fn random_datum(rng: &mut impl Rng, d: usize) -> Datum {
    let set = (0..d)
        .filter_map(|p| match rng.gen_range(0..3) {
            0 => Some(Embedding::unbarred(PlaceId(p))),
            1 => Some(Embedding::barred(PlaceId(p))),
            _ => None,
        })
        .collect();
    Datum::Embeddings(set)
}

/// A random character over the context's stock symbols and the central
/// characters of the given representations.
pub fn random_character(
    rng: &mut impl Rng,
    ctx: &PeriodContext,
    reps: &[RepTag],
) -> CharacterExpr {
    let mut chi = CharacterExpr::trivial();
    for _ in 0..rng.gen_range(1..=2) {
        let basis = match rng.gen_range(0..4) {
            0 => ctx.norm_char(),
            1 => ctx.psi_char(),
            2 => ctx.eta_char(),
            _ => ctx.central_char(reps[rng.gen_range(0..reps.len())]),
        };
        let factor = if rng.gen_bool(0.3) {
            CharacterExpr::basis(basis).conjugate(ctx)
        } else {
            CharacterExpr::basis(basis)
        };
        chi = chi.mul(&factor.pow(rng.gen_range(1..=2) * if rng.gen_bool(0.5) { 1 } else { -1 }));
    }
    chi
}

/// A random period monomial over legal symbols, for normalization soundness
/// runs.
pub fn random_monomial(
    rng: &mut impl Rng,
    ctx: &PeriodContext,
    reps: &[RepTag],
) -> PeriodMonomial {
    let d = ctx.shape().d();
    let mut m = PeriodMonomial::unit();
    for _ in 0..rng.gen_range(1..=5) {
        let rep = reps[rng.gen_range(0..reps.len())];
        let rank = ctx.rep_rank(rep);
        let sym = match rng.gen_range(0..7) {
            0 => PeriodSymbol::TwoPiI,
            1 => PeriodSymbol::CmPeriod {
                character: random_character(rng, ctx, reps),
                datum: random_datum(rng, d),
            },
            2 => PeriodSymbol::ArithLocal {
                rep,
                sup: rng.gen_range(0..=rank),
                embedding: Embedding::unbarred(PlaceId(rng.gen_range(0..d))),
            },
            3 => PeriodSymbol::ArithGlobal {
                rep,
                signature: (0..d).map(|_| rng.gen_range(0..=rank)).collect(),
            },
            4 => PeriodSymbol::QAuto {
                rep,
                degree: rng.gen_range(0..rank.max(2) - 1),
                place: PlaceId(rng.gen_range(0..d)),
            },
            5 => PeriodSymbol::LValue(LValueKind::Asai {
                rep,
                sign: if rng.gen_bool(0.5) {
                    AsaiSign::Plus
                } else {
                    AsaiSign::Minus
                },
            }),
            _ => PeriodSymbol::Const(if rng.gen_bool(0.5) {
                ConstLabel::DeltaH
            } else {
                ConstLabel::Beta2
            }),
        };
        m.insert(sym, rng.gen_range(1..=2) * if rng.gen_bool(0.5) { 1 } else { -1 });
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic_per_seed() {
        let params = CorpusParams {
            seed: 11,
            count: 10,
            ..CorpusParams::default()
        };
        let c1 = corpus(&params);
        let c2 = corpus(&params);
        for (x, y) in c1.iter().zip(&c2) {
            assert_eq!(x.a, y.a);
            assert_eq!(x.b, y.b);
        }
    }

    #[test]
    fn pairs_are_tie_free() {
        let params = CorpusParams {
            seed: 3,
            count: 50,
            ..CorpusParams::default()
        };
        for inst in corpus(&params) {
            assert!(has_critical_points(&inst.a, &inst.b).unwrap());
        }
    }
}
