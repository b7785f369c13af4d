//! Confluent rewriting of period monomials into normal form.
//!
//! Orientation: always toward singleton-embedding CM periods of basis
//! characters, local arithmetic periods, and powers of `2πi`. The rules are
//!
//! * exotic Shimura data pull back to embedding sets;
//! * embedding sets split into singletons;
//! * composite characters split into basis factors;
//! * conjugate embeddings are eliminated whenever the character has a known
//!   conjugation behaviour (self-dual symbols invert, `ψ` inverts, the norm
//!   is invariant, registered expansions are applied);
//! * norm periods become `(2πi)^{-1}`;
//! * global arithmetic periods expand into local ones;
//! * the extreme local periods `P^{(0)}`, `P^{(n)}` become CM periods of the
//!   central character, which makes `P^{(0)} · P^{(n)} ∼ 1` automatic.
//!
//! Every rule reduces the lexicographic measure (exotic-datum count, total
//! embedding-set excess, character complexity, reducible-conjugate count,
//! expandable-symbol count), so rewriting terminates; each rule expands one
//! symbol independently of the rest of the monomial, so the normal form does
//! not depend on rule order. A randomized-order normalizer is provided for
//! validating exactly that.

use thiserror::Error;

use crate::period::character::{CharacterExpr, ConjBehavior};
use crate::period::context::PeriodContext;
use crate::period::monomial::PeriodMonomial;
use crate::period::report::FieldTagSet;
use crate::period::symbol::{Datum, PeriodSymbol};
use crate::shape::Embedding;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NormalizeError {
    #[error("illegal embedding set for CM period of {character}: meets its own conjugate")]
    IllegalPsiSet { character: String },
}

/// A single applicable rewrite: the expansion of one symbol together with
/// the rationality tags the rule carries.
pub struct Rewrite {
    pub expansion: PeriodMonomial,
    pub tags: FieldTagSet,
    pub rule: &'static str,
}

fn char_tags(ctx: &PeriodContext, chi: &CharacterExpr) -> FieldTagSet {
    let mut tags = FieldTagSet::new();
    for ((id, _), _) in chi.factors() {
        tags.add(format!("E_F({})", ctx.char_name(id)));
    }
    tags
}

fn cm(chi: CharacterExpr, datum: Datum) -> PeriodSymbol {
    PeriodSymbol::CmPeriod {
        character: chi,
        datum,
    }
}

/// The one-step expansion of a single symbol, if any rule applies.
pub fn one_step(
    ctx: &PeriodContext,
    symbol: &PeriodSymbol,
) -> Option<Result<Rewrite, NormalizeError>> {
    match symbol {
        PeriodSymbol::CmPeriod { character, datum } => {
            let nf = character.normalized(ctx);
            if &nf != character {
                return Some(Ok(Rewrite {
                    expansion: PeriodMonomial::symbol(cm(nf.clone(), datum.clone())),
                    tags: char_tags(ctx, &nf),
                    rule: "character normal form",
                }));
            }
            match datum {
                Datum::U1Torus => Some(Ok(Rewrite {
                    expansion: PeriodMonomial::symbol(cm(nf, Datum::DiagonalSigma)),
                    tags: char_tags(ctx, character),
                    rule: "CM-period pullback",
                })),
                Datum::DiagonalSigma => {
                    let sigma: Datum =
                        Datum::Embeddings(ctx.shape().sigma().into_iter().collect());
                    let sigma_bar: Datum =
                        Datum::Embeddings(ctx.shape().sigma_bar().into_iter().collect());
                    let mut m = PeriodMonomial::symbol(cm(nf.clone(), sigma));
                    m.insert(cm(nf, sigma_bar), -1);
                    Some(Ok(Rewrite {
                        expansion: m,
                        tags: char_tags(ctx, character),
                        rule: "diagonal datum split",
                    }))
                }
                Datum::Embeddings(set) => {
                    for e in set {
                        if set.contains(&e.conjugate()) {
                            return Some(Err(NormalizeError::IllegalPsiSet {
                                character: character.describe(ctx),
                            }));
                        }
                    }
                    if set.is_empty() || character.is_trivial() {
                        return Some(Ok(Rewrite {
                            expansion: PeriodMonomial::unit(),
                            tags: FieldTagSet::new(),
                            rule: "trivial CM period",
                        }));
                    }
                    if set.len() >= 2 {
                        let mut m = PeriodMonomial::unit();
                        for &e in set {
                            m.insert(cm(nf.clone(), Datum::singleton(e)), 1);
                        }
                        return Some(Ok(Rewrite {
                            expansion: m,
                            tags: char_tags(ctx, character),
                            rule: "embedding-set split",
                        }));
                    }
                    let iota = *set.iter().next().unwrap();
                    one_step_singleton(ctx, &nf, iota)
                }
            }
        }
        PeriodSymbol::ArithGlobal { rep, signature } => {
            let mut m = PeriodMonomial::unit();
            for (p, &s) in ctx.shape().places().zip(signature.iter()) {
                m.insert(
                    PeriodSymbol::ArithLocal {
                        rep: *rep,
                        sup: s,
                        embedding: Embedding::unbarred(p),
                    },
                    1,
                );
            }
            let mut tags = FieldTagSet::new();
            tags.add(format!("E({})", ctx.rep_name(*rep)));
            Some(Ok(Rewrite {
                expansion: m,
                tags,
                rule: "global-to-local splitting",
            }))
        }
        PeriodSymbol::ArithLocal {
            rep,
            sup,
            embedding,
        } => {
            let rank = ctx.rep_rank(*rep);
            let central = CharacterExpr::basis(ctx.central_char(*rep));
            let expansion = if *sup == 0 {
                // P^{(0)}(Π, ι) ∼ p(ξ̌_Π, ῑ)
                Some(cm(
                    central.check(ctx),
                    Datum::singleton(embedding.conjugate()),
                ))
            } else if *sup == rank {
                // P^{(n)}(Π, ι) ∼ p(ξ̌_Π, ι)
                Some(cm(central.check(ctx), Datum::singleton(*embedding)))
            } else {
                None
            };
            expansion.map(|sym| {
                let mut tags = FieldTagSet::new();
                tags.add(format!("E({})", ctx.rep_name(*rep)));
                tags.add(format!("E_F(xi_{})", ctx.rep_name(*rep)));
                Ok(Rewrite {
                    expansion: PeriodMonomial::symbol(sym),
                    tags,
                    rule: "extreme local period",
                })
            })
        }
        _ => None,
    }
}

/// Rules for `p(χ, {ι})` with `χ` already in character normal form.
fn one_step_singleton(
    ctx: &PeriodContext,
    chi: &CharacterExpr,
    iota: Embedding,
) -> Option<Result<Rewrite, NormalizeError>> {
    let factors: Vec<((crate::period::character::BasisCharId, bool), i64)> =
        chi.factors().collect();
    // Composite characters and non-unit exponents split into basis factors.
    if factors.len() > 1 || factors.iter().any(|&(_, e)| e != 1) {
        let mut m = PeriodMonomial::unit();
        for &((id, conj), e) in &factors {
            let single = if conj {
                CharacterExpr::basis_conjugated(id)
            } else {
                CharacterExpr::basis(id)
            };
            m.insert(cm(single, Datum::singleton(iota)), e);
        }
        return Some(Ok(Rewrite {
            expansion: m,
            tags: char_tags(ctx, chi),
            rule: "character split",
        }));
    }
    let ((id, conj), _e) = *factors.first()?;
    if conj {
        // conjugated opaque symbol: irreducible
        return None;
    }
    if id == ctx.norm_char() {
        return Some(Ok(Rewrite {
            expansion: PeriodMonomial::symbol_pow(PeriodSymbol::TwoPiI, -1),
            tags: FieldTagSet::with(&["Q"]),
            rule: "norm period",
        }));
    }
    if !iota.barred {
        return None;
    }
    let unbarred = Embedding::unbarred(iota.place);
    match ctx.conj_behavior(id) {
        ConjBehavior::ConjugateSelfDual | ConjBehavior::PsiLike => Some(Ok(Rewrite {
            expansion: PeriodMonomial::symbol_pow(
                cm(CharacterExpr::basis(id), Datum::singleton(unbarred)),
                -1,
            ),
            tags: char_tags(ctx, chi),
            rule: "conjugate-embedding inversion",
        })),
        ConjBehavior::Invariant => Some(Ok(Rewrite {
            expansion: PeriodMonomial::symbol(cm(
                CharacterExpr::basis(id),
                Datum::singleton(unbarred),
            )),
            tags: char_tags(ctx, chi),
            rule: "invariant character bar swap",
        })),
        ConjBehavior::Registered(expr) => Some(Ok(Rewrite {
            expansion: PeriodMonomial::symbol(cm(expr, Datum::singleton(unbarred))),
            tags: char_tags(ctx, chi),
            rule: "registered conjugate expansion",
        })),
        ConjBehavior::Opaque => None,
    }
}

/// Fully normalizes a monomial, accumulating rule tags.
pub fn normalize(
    ctx: &PeriodContext,
    input: &PeriodMonomial,
) -> Result<(PeriodMonomial, FieldTagSet), NormalizeError> {
    let mut m = input.clone();
    let mut tags = FieldTagSet::new();
    'outer: loop {
        let symbols: Vec<PeriodSymbol> = m.support().cloned().collect();
        for sym in symbols {
            if let Some(step) = one_step(ctx, &sym) {
                let rewrite = step?;
                m.substitute(&sym, &rewrite.expansion);
                tags.union_with(&rewrite.tags);
                continue 'outer;
            }
        }
        return Ok((m, tags));
    }
}

/// Normalizes by applying applicable rules in an order chosen by the caller
/// through `pick`, used to validate rule-order independence.
pub fn normalize_with_order(
    ctx: &PeriodContext,
    input: &PeriodMonomial,
    mut pick: impl FnMut(usize) -> usize,
) -> Result<PeriodMonomial, NormalizeError> {
    let mut m = input.clone();
    loop {
        let mut applicable: Vec<(PeriodSymbol, Rewrite)> = Vec::new();
        for sym in m.support() {
            if let Some(step) = one_step(ctx, sym) {
                applicable.push((sym.clone(), step?));
            }
        }
        if applicable.is_empty() {
            return Ok(m);
        }
        let ix = pick(applicable.len()) % applicable.len();
        let (sym, rewrite) = applicable.swap_remove(ix);
        m.substitute(&sym, &rewrite.expansion);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::period::symbol::{Datum, PeriodSymbol};
    use crate::shape::{CMShape, Embedding, PlaceId};
    use std::collections::BTreeSet;

    fn ctx_with_rep() -> (PeriodContext, crate::period::symbol::RepTag) {
        let mut ctx = PeriodContext::new(CMShape::with_default_labels(2));
        let rep = ctx.register_rep("Pi", 3);
        (ctx, rep)
    }

    fn p(chi: CharacterExpr, embeddings: &[Embedding]) -> PeriodSymbol {
        PeriodSymbol::CmPeriod {
            character: chi,
            datum: Datum::Embeddings(embeddings.iter().copied().collect::<BTreeSet<_>>()),
        }
    }

    fn nf(ctx: &PeriodContext, m: &PeriodMonomial) -> PeriodMonomial {
        normalize(ctx, m).unwrap().0
    }

    #[test]
    fn disjoint_embedding_sets_multiply() {
        let (ctx, rep) = ctx_with_rep();
        let chi = CharacterExpr::basis(ctx.central_char(rep));
        let e0 = Embedding::unbarred(PlaceId(0));
        let e1 = Embedding::unbarred(PlaceId(1));
        let joined = PeriodMonomial::symbol(p(chi.clone(), &[e0, e1]));
        let split = PeriodMonomial::symbol(p(chi.clone(), &[e0]))
            .mul(&PeriodMonomial::symbol(p(chi, &[e1])));
        assert_eq!(nf(&ctx, &joined), nf(&ctx, &split));
    }

    #[test]
    fn products_of_characters_split() {
        let mut ctx = PeriodContext::new(CMShape::with_default_labels(1));
        let rep = ctx.register_rep("Pi", 3);
        let chi = CharacterExpr::basis(ctx.central_char(rep));
        let chi2 = CharacterExpr::basis(ctx.psi_char());
        let e = Embedding::unbarred(PlaceId(0));
        let product = PeriodMonomial::symbol(p(chi.mul(&chi2), &[e]));
        let split = PeriodMonomial::symbol(p(chi, &[e]))
            .mul(&PeriodMonomial::symbol(p(chi2, &[e])));
        assert_eq!(nf(&ctx, &product), nf(&ctx, &split));
    }

    #[test]
    fn conjugate_self_dual_check_inverts_at_conjugate_embedding() {
        let (ctx, rep) = ctx_with_rep();
        let check = CharacterExpr::basis(ctx.central_char(rep)).check(&ctx);
        let barred = Embedding::barred(PlaceId(0));
        let unbarred = Embedding::unbarred(PlaceId(0));
        let lhs = nf(&ctx, &PeriodMonomial::symbol(p(check.clone(), &[barred])));
        let rhs = nf(
            &ctx,
            &PeriodMonomial::symbol(p(check.clone(), &[unbarred])).inverse(),
        );
        assert_eq!(lhs, rhs);
        // p(χ̌, ῑ) · p(χ̌, ι) is a unit
        let both = PeriodMonomial::symbol(p(check.clone(), &[barred]))
            .mul(&PeriodMonomial::symbol(p(check, &[unbarred])));
        assert!(nf(&ctx, &both).is_unit());
    }

    #[test]
    fn psi_check_at_conjugate_embedding_yields_two_pi_i() {
        let ctx = PeriodContext::new(CMShape::with_default_labels(1));
        let psi_check = CharacterExpr::basis(ctx.psi_char()).check(&ctx);
        let barred = Embedding::barred(PlaceId(0));
        let got = nf(&ctx, &PeriodMonomial::symbol(p(psi_check, &[barred])));
        // (2πi) · p(ψ, ι)^{-1}
        let mut expected = PeriodMonomial::symbol(PeriodSymbol::TwoPiI);
        expected.insert(
            p(
                CharacterExpr::basis(ctx.psi_char()),
                &[Embedding::unbarred(PlaceId(0))],
            ),
            -1,
        );
        assert_eq!(got, expected);
    }

    #[test]
    fn norm_period_is_inverse_two_pi_i() {
        let ctx = PeriodContext::new(CMShape::with_default_labels(1));
        let norm = CharacterExpr::basis(ctx.norm_char());
        let got = nf(
            &ctx,
            &PeriodMonomial::symbol(p(norm, &[Embedding::unbarred(PlaceId(0))])),
        );
        assert_eq!(got, PeriodMonomial::symbol_pow(PeriodSymbol::TwoPiI, -1));
    }

    #[test]
    fn extreme_local_periods_cancel() {
        let (ctx, rep) = ctx_with_rep();
        let e = Embedding::unbarred(PlaceId(0));
        let mut m = PeriodMonomial::symbol(PeriodSymbol::ArithLocal {
            rep,
            sup: 0,
            embedding: e,
        });
        m.insert(
            PeriodSymbol::ArithLocal {
                rep,
                sup: 3,
                embedding: e,
            },
            1,
        );
        assert!(nf(&ctx, &m).is_unit());
    }

    #[test]
    fn global_period_splits_into_locals() {
        let (ctx, rep) = ctx_with_rep();
        let global = PeriodMonomial::symbol(PeriodSymbol::ArithGlobal {
            rep,
            signature: vec![1, 0],
        });
        let locals = PeriodMonomial::symbol(PeriodSymbol::ArithLocal {
            rep,
            sup: 1,
            embedding: Embedding::unbarred(PlaceId(0)),
        })
        .mul(&PeriodMonomial::symbol(PeriodSymbol::ArithLocal {
            rep,
            sup: 0,
            embedding: Embedding::unbarred(PlaceId(1)),
        }));
        assert_eq!(nf(&ctx, &global), nf(&ctx, &locals));
    }

    #[test]
    fn unit_times_inverse_is_unit() {
        let (ctx, rep) = ctx_with_rep();
        let m = PeriodMonomial::symbol(PeriodSymbol::ArithLocal {
            rep,
            sup: 1,
            embedding: Embedding::unbarred(PlaceId(0)),
        });
        assert!(nf(&ctx, &m.mul(&m.inverse())).is_unit());
    }

    #[test]
    fn illegal_embedding_set_is_reported() {
        let (ctx, rep) = ctx_with_rep();
        let chi = CharacterExpr::basis(ctx.central_char(rep));
        let bad = p(
            chi,
            &[Embedding::unbarred(PlaceId(0)), Embedding::barred(PlaceId(0))],
        );
        let err = normalize(&ctx, &PeriodMonomial::symbol(bad)).unwrap_err();
        assert!(matches!(err, NormalizeError::IllegalPsiSet { .. }));
    }

    #[test]
    fn registered_identity_reduces_the_diagonal_datum() {
        let mut ctx = PeriodContext::new(CMShape::with_default_labels(2));
        let rep = ctx.register_rep("Pi", 3);
        let rep2 = ctx.register_rep("Pi'", 2);
        let xi = ctx.register_aux_xi("xi[Pi,q=1]", rep, rep2);
        let start = PeriodMonomial::symbol(PeriodSymbol::CmPeriod {
            character: CharacterExpr::basis(xi),
            datum: Datum::U1Torus,
        });
        let got = nf(&ctx, &start);
        // → ∏_v p(ξ_Π, ι_v) p(ξ_Π', ι_v)
        let mut expected = PeriodMonomial::unit();
        for place in ctx.shape().places() {
            let e = Embedding::unbarred(place);
            expected.insert(p(CharacterExpr::basis(ctx.central_char(rep)), &[e]), 1);
            expected.insert(p(CharacterExpr::basis(ctx.central_char(rep2)), &[e]), 1);
        }
        assert_eq!(got, nf(&ctx, &expected));
    }

    #[test]
    fn normalization_is_idempotent_and_order_independent() {
        let mut ctx = PeriodContext::new(CMShape::with_default_labels(2));
        let rep = ctx.register_rep("Pi", 3);
        let chi = CharacterExpr::basis(ctx.central_char(rep));
        let psi = CharacterExpr::basis(ctx.psi_char());
        let mut m = PeriodMonomial::symbol(p(
            chi.mul(&psi.inverse()),
            &[Embedding::barred(PlaceId(0))],
        ));
        m.insert(
            PeriodSymbol::ArithGlobal {
                rep,
                signature: vec![1, 0],
            },
            2,
        );
        m.insert(PeriodSymbol::TwoPiI, -3);
        let once = nf(&ctx, &m);
        let twice = nf(&ctx, &once);
        assert_eq!(once, twice);
        let mut state = 0x9e3779b97f4a7c15u64;
        let shuffled = normalize_with_order(&ctx, &m, move |len| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state as usize) % len.max(1)
        })
        .unwrap();
        assert_eq!(shuffled, once);
    }
}
