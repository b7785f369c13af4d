//! End-to-end verifications: the telescoping factorization of local
//! arithmetic periods, the motivic-period comparison, and the critical-value
//! consistency check between the automorphic product formula and the
//! Deligne-period expression.

use crate::half::HalfInt;
use crate::hodge::{hodge_type_from_infinity_type, motivic_split_indices};
use crate::critical::critical_set;
use crate::period::axioms::{
    axiom_rs_value, cm_check_over_sigma, factorization_target_at, RepData,
};
use crate::period::context::PeriodContext;
use crate::period::monomial::PeriodMonomial;
use crate::period::normalize::normalize;
use crate::period::replay::{replay_factorization, ReplayOptions};
use crate::period::report::{Derivation, DerivationReport, FieldTagSet};
use crate::period::symbol::{ConstLabel, PeriodSymbol, RepTag, SymbolClass};
use crate::period::PeriodError;
use crate::shape::Embedding;
use crate::spectral::HCParameter;

fn expand_local_factor(ctx: &PeriodContext, sym: &PeriodSymbol) -> Option<PeriodMonomial> {
    if let PeriodSymbol::LocalFactorP {
        rep,
        index,
        embedding,
    } = sym
    {
        let rank = ctx.rep_rank(*rep);
        let mut m = PeriodMonomial::unit();
        if *index == 0 {
            m.insert(
                PeriodSymbol::ArithLocal {
                    rep: *rep,
                    sup: 0,
                    embedding: *embedding,
                },
                1,
            );
        } else if *index == rank {
            m.insert(
                PeriodSymbol::ArithLocal {
                    rep: *rep,
                    sup: rank,
                    embedding: *embedding,
                },
                1,
            );
            for k in 0..rank {
                m.insert(
                    PeriodSymbol::LocalFactorP {
                        rep: *rep,
                        index: k,
                        embedding: *embedding,
                    },
                    -1,
                );
            }
        } else {
            m.insert(
                PeriodSymbol::QAuto {
                    rep: *rep,
                    degree: index - 1,
                    place: embedding.place,
                },
                1,
            );
            m.insert(cm_check_over_sigma(ctx, *rep), 1);
        }
        Some(m)
    } else {
        None
    }
}

fn expand_auto_facto(ctx: &PeriodContext, sym: &PeriodSymbol) -> Option<PeriodMonomial> {
    if let PeriodSymbol::QAuto { rep, degree, place } = sym {
        Some(factorization_target_at(ctx, *rep, *degree, *place))
    } else {
        None
    }
}

fn expand_q_upper(_ctx: &PeriodContext, sym: &PeriodSymbol) -> Option<PeriodMonomial> {
    if let PeriodSymbol::QUpper {
        rep,
        index,
        embedding,
    } = sym
    {
        let mut m = PeriodMonomial::unit();
        for i in 0..=*index {
            m.insert(
                PeriodSymbol::QMotivic {
                    rep: *rep,
                    index: i,
                    embedding: *embedding,
                },
                1,
            );
        }
        Some(m)
    } else {
        None
    }
}

fn expand_q_motivic(ctx: &PeriodContext, sym: &PeriodSymbol) -> Option<PeriodMonomial> {
    if let PeriodSymbol::QMotivic {
        rep,
        index,
        embedding,
    } = sym
    {
        let mut m = PeriodMonomial::unit();
        if *index == 0 {
            // Q_0(M, ι) = δ(M, ι) · (2πi)^{n(n−1)/2}
            let r = ctx.rep_rank(*rep) as i64;
            m.insert(
                PeriodSymbol::DeltaMotive {
                    rep: *rep,
                    embedding: *embedding,
                },
                1,
            );
            m.insert(PeriodSymbol::TwoPiI, r * (r - 1) / 2);
        } else {
            m.insert(
                PeriodSymbol::LocalFactorP {
                    rep: *rep,
                    index: *index,
                    embedding: *embedding,
                },
                1,
            );
        }
        Some(m)
    } else {
        None
    }
}

fn expand_delta(ctx: &PeriodContext, sym: &PeriodSymbol) -> Option<PeriodMonomial> {
    if let PeriodSymbol::DeltaMotive { rep, embedding } = sym {
        // δ(M, ι) ∼ (2πi)^{−n(n−1)/2} · p(ξ_Π, ι)^{-1}
        let r = ctx.rep_rank(*rep) as i64;
        let mut m = PeriodMonomial::symbol_pow(PeriodSymbol::TwoPiI, -r * (r - 1) / 2);
        m.insert(
            PeriodSymbol::CmPeriod {
                character: crate::period::character::CharacterExpr::basis(
                    ctx.central_char(*rep),
                ),
                datum: crate::period::symbol::Datum::singleton(*embedding),
            },
            -1,
        );
        Some(m)
    } else {
        None
    }
}

/// Applies `f` to every symbol of the working monomial until no further
/// expansion applies, recording a single named step (a no-op records
/// nothing).
fn bulk_step(
    d: &mut Derivation<'_>,
    name: &str,
    tags: &FieldTagSet,
    f: impl Fn(&PeriodContext, &PeriodSymbol) -> Option<PeriodMonomial>,
) {
    let mut next = d.current.clone();
    loop {
        let mut changed = false;
        let symbols: Vec<PeriodSymbol> = next.support().cloned().collect();
        for sym in symbols {
            if let Some(expansion) = f(d.ctx, &sym) {
                next.substitute(&sym, &expansion);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if next != d.current {
        d.record(name, next, tags);
    }
}

fn tate_tags(ctx: &PeriodContext, rep: RepTag) -> FieldTagSet {
    let mut tags = FieldTagSet::new();
    tags.add(format!("E({})", ctx.rep_name(rep)));
    tags.add("F^Gal");
    tags
}

/// Verifies the factorization of every local arithmetic period
/// `P^{(i)}(Π, ι_{v0})` into `P_0 ⋯ P_i` and the consistency of the motivic
/// periods with the local factors. Residuals must stay inside constant
/// classes and powers of `2πi`.
pub fn verify_main_factorization(
    ctx: &mut PeriodContext,
    a: &HCParameter,
    opts: &ReplayOptions,
) -> Result<DerivationReport, PeriodError> {
    let n = a.n;
    if n < 2 {
        return Err(PeriodError::IndexOutOfRange { q: 0, max: 0 });
    }
    // Replay every descent index first; their closure licenses the
    // factorization substitutions below.
    let mut replays = Vec::new();
    for q in 0..=n - 2 {
        let rep = replay_factorization(ctx, a, q, opts)?;
        if !rep.verdict.is_closed() {
            let support = match &rep.verdict {
                crate::period::report::Verdict::Open(s) => s.clone(),
                _ => Vec::new(),
            };
            return Err(PeriodError::OpenResidual {
                support,
                report: Box::new(rep),
            });
        }
        replays.push(rep);
    }
    let rep_tag = ctx.register_rep(&opts.base_name, n as u32);
    let v0 = ctx.shape().v0_or_first();
    let iota = Embedding::unbarred(v0);
    let tags = tate_tags(ctx, rep_tag);

    let label = format!(
        "main factorization for {} (rank {n})",
        ctx.rep_name(rep_tag)
    );
    let mut parent = Derivation::new(ctx, label, PeriodMonomial::unit());
    for r in replays {
        parent.attach_sub_report(r);
    }

    // (i) telescoping of each local arithmetic period.
    for i in 0..=n as u32 {
        let lhs = PeriodMonomial::symbol(PeriodSymbol::ArithLocal {
            rep: rep_tag,
            sup: i,
            embedding: iota,
        });
        let mut rhs = PeriodMonomial::unit();
        for k in 0..=i {
            rhs.insert(
                PeriodSymbol::LocalFactorP {
                    rep: rep_tag,
                    index: k,
                    embedding: iota,
                },
                1,
            );
        }
        let mut sub = Derivation::new(ctx, format!("telescoping i={i}"), lhs.mul(&rhs.inverse()));
        bulk_step(&mut sub, "local factor definition", &tags, expand_local_factor);
        bulk_step(&mut sub, "factorization of Q-periods", &tags, expand_auto_facto);
        let (nf, ntags) = normalize(ctx, &sub.current)?;
        sub.record("normal form", nf, &ntags);
        let sub_report = sub.finish(&[SymbolClass::TwoPiI]);
        let residual = sub_report.residual.clone();
        let merged = parent.current.mul(&residual);
        parent.record(format!("telescoping i={i}"), merged, &sub_report.tags.clone());
        parent.attach_sub_report(sub_report);
    }

    // (ii) motivic periods against local factors, and the full product.
    for i in 0..=n as u32 {
        let lhs = PeriodMonomial::symbol(PeriodSymbol::QUpper {
            rep: rep_tag,
            index: i,
            embedding: iota,
        });
        let rhs = PeriodMonomial::symbol(PeriodSymbol::ArithLocal {
            rep: rep_tag,
            sup: i,
            embedding: iota,
        });
        let mut sub = Derivation::new(
            ctx,
            format!("motivic comparison i={i}"),
            lhs.mul(&rhs.inverse()),
        );
        bulk_step(&mut sub, "motivic-period product", &tags, expand_q_upper);
        bulk_step(&mut sub, "bottom motivic period", &tags, expand_q_motivic);
        bulk_step(&mut sub, "determinant period", &tags, expand_delta);
        bulk_step(&mut sub, "local factor definition", &tags, expand_local_factor);
        bulk_step(&mut sub, "factorization of Q-periods", &tags, expand_auto_facto);
        let (nf, ntags) = normalize(ctx, &sub.current)?;
        sub.record("normal form", nf, &ntags);
        let sub_report = sub.finish(&[SymbolClass::TwoPiI]);
        let residual = sub_report.residual.clone();
        let merged = parent.current.mul(&residual);
        parent.record(
            format!("motivic comparison i={i}"),
            merged,
            &sub_report.tags.clone(),
        );
        parent.attach_sub_report(sub_report);
    }

    // Product relation: ∏_{i=0}^{n} Q_i(M, ι) ∼ p(ξ̌_Π, ι).
    {
        let mut lhs = PeriodMonomial::unit();
        for i in 0..=n as u32 {
            lhs.insert(
                PeriodSymbol::QMotivic {
                    rep: rep_tag,
                    index: i,
                    embedding: iota,
                },
                1,
            );
        }
        let rhs = PeriodMonomial::symbol(PeriodSymbol::CmPeriod {
            character: crate::period::character::CharacterExpr::basis(
                ctx.central_char(rep_tag),
            )
            .check(ctx),
            datum: crate::period::symbol::Datum::singleton(iota),
        });
        let mut sub = Derivation::new(ctx, "motivic product", lhs.mul(&rhs.inverse()));
        bulk_step(&mut sub, "bottom motivic period", &tags, expand_q_motivic);
        bulk_step(&mut sub, "determinant period", &tags, expand_delta);
        bulk_step(&mut sub, "local factor definition", &tags, expand_local_factor);
        bulk_step(&mut sub, "factorization of Q-periods", &tags, expand_auto_facto);
        let (nf, ntags) = normalize(ctx, &sub.current)?;
        sub.record("normal form", nf, &ntags);
        let sub_report = sub.finish(&[SymbolClass::TwoPiI]);
        let residual = sub_report.residual.clone();
        let merged = parent.current.mul(&residual);
        parent.record("motivic product", merged, &sub_report.tags.clone());
        parent.attach_sub_report(sub_report);
    }

    Ok(parent.finish(&[SymbolClass::TwoPiI]))
}

/// Critical-value consistency: the automorphic product formula at a critical
/// point against the Deligne-period expression with motivic split indices.
/// After the motivic periods are rewritten through the factorization, the
/// residual must be supported in `2πi` and constant classes; its `2πi`
/// exponent is reported.
pub fn verify_main_conjecture(
    ctx: &mut PeriodContext,
    a_name: &str,
    a: &crate::spectral::InfinityType,
    b_name: &str,
    b: &crate::spectral::InfinityType,
    s0: HalfInt,
    fault: Option<crate::period::axioms::Fault>,
) -> Result<DerivationReport, PeriodError> {
    let cs = critical_set(a, b)?;
    if !cs.members.contains(&s0) {
        return Err(PeriodError::NotCritical { s0 });
    }
    let tag_a = ctx.register_rep(a_name, a.n as u32);
    let tag_b = ctx.register_rep(b_name, b.n as u32);
    let rep_a = RepData {
        tag: tag_a,
        itype: a.clone(),
    };
    let rep_b = RepData {
        tag: tag_b,
        itype: b.clone(),
    };
    let d = ctx.shape().d() as i64;
    let n = a.n as i64;
    let np = b.n as i64;

    // Automorphic side: the right-hand side of the critical-value formula.
    let rs = axiom_rs_value(ctx, &rep_a, &rep_b, s0, fault)?;
    let lhs = rs.rhs.clone();

    // Deligne side: (2πi)^{−n n' d (n+n'−2)/2} · ∏ Q^{(j)} products with
    // motivic split indices, and the archimedean constant class.
    let exponent = -n * np * d * (n + np - 2) / 2;
    let mut rhs = PeriodMonomial::symbol_pow(PeriodSymbol::TwoPiI, exponent);
    rhs.insert(PeriodSymbol::Const(ConstLabel::IInfinity), 1);
    for place in ctx.shape().places() {
        let iota = Embedding::unbarred(place);
        let ha = hodge_type_from_infinity_type(a, place, false);
        let hb = hodge_type_from_infinity_type(b, place, false);
        let msp_a = motivic_split_indices(&ha, &hb)?;
        let msp_b = motivic_split_indices(&hb, &ha)?;
        for (j, &e) in msp_a.entries.iter().enumerate() {
            rhs.insert(
                PeriodSymbol::QUpper {
                    rep: tag_a,
                    index: j as u32,
                    embedding: iota,
                },
                e,
            );
        }
        for (k, &e) in msp_b.entries.iter().enumerate() {
            rhs.insert(
                PeriodSymbol::QUpper {
                    rep: tag_b,
                    index: k as u32,
                    embedding: iota,
                },
                e,
            );
        }
    }

    let label = format!(
        "critical-value comparison for {} x {} at s0 = {s0}",
        ctx.rep_name(tag_a),
        ctx.rep_name(tag_b)
    );
    let tags_a = tate_tags(ctx, tag_a);
    let tags_b = tate_tags(ctx, tag_b);
    let mut derivation = Derivation::new(ctx, label, lhs.mul(&rhs.inverse()));
    bulk_step(&mut derivation, "motivic-period product", &tags_a, expand_q_upper);
    bulk_step(&mut derivation, "bottom motivic period", &tags_a, expand_q_motivic);
    bulk_step(&mut derivation, "determinant period", &tags_a, expand_delta);
    bulk_step(
        &mut derivation,
        "local factor definition",
        &tags_b,
        expand_local_factor,
    );
    bulk_step(
        &mut derivation,
        "factorization of Q-periods",
        &tags_b,
        expand_auto_facto,
    );
    let (nf, ntags) = normalize(ctx, &derivation.current)?;
    derivation.record("normal form", nf, &ntags);
    Ok(derivation.finish(&[SymbolClass::TwoPiI]))
}
