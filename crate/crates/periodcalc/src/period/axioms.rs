//! Axiom schemas: the critical-value and inner-product identities that
//! eliminate L-value and Q-period symbols.
//!
//! Each schema produces a pair `(lhs, rhs)` of monomials asserted to be
//! equal up to the tagged rationality field; derivations consume them as
//! oriented substitutions. A fault injector can corrupt any single schema,
//! which must surface as an open residual downstream.

use crate::critical::critical_set;
use crate::half::HalfInt;
use crate::hodge::automorphic_split_indices;
use crate::period::character::CharacterExpr;
use crate::period::context::PeriodContext;
use crate::period::monomial::PeriodMonomial;
use crate::period::report::FieldTagSet;
use crate::period::symbol::{
    AsaiSign, ConstLabel, Datum, LValueKind, PeriodSymbol, RepTag,
};
use crate::period::{BasisCharId, PeriodError};
use crate::shape::Embedding;
use crate::spectral::InfinityType;

/// A representation tag paired with its archimedean exponent data.
#[derive(Clone, Debug)]
pub struct RepData {
    pub tag: RepTag,
    pub itype: InfinityType,
}

impl RepData {
    pub fn rank(&self) -> usize {
        self.itype.n
    }
}

/// An oriented identity `lhs ∼ rhs` with its rationality tags.
#[derive(Clone, Debug)]
pub struct AxiomPair {
    pub name: String,
    pub lhs: PeriodMonomial,
    pub rhs: PeriodMonomial,
    pub tags: FieldTagSet,
}

impl AxiomPair {
    /// The substitution monomial for the single-symbol `lhs`: everything the
    /// symbol is replaced by, i.e. `rhs` when `lhs` is the bare symbol.
    pub fn rhs_for(&self, symbol: &PeriodSymbol) -> Option<PeriodMonomial> {
        if self.lhs == PeriodMonomial::symbol(symbol.clone()) {
            Some(self.rhs.clone())
        } else {
            None
        }
    }
}

/// Injectable corruption points, one per axiom schema.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Fault {
    /// Bump one split-index exponent in the Rankin–Selberg value.
    RsSplitIndex,
    /// Bump the 2πi exponent in the Rankin–Selberg value.
    RsTwoPiExponent,
    /// Drop one local-period factor from the top-rank Asai value.
    AsaiTop,
    /// Drop one local-period factor from the derived-rank Asai value.
    AsaiDerived,
    /// Omit the auxiliary Q-period from the inner-product ratio.
    IinhDropXi,
    /// Drop one CM factor from the auxiliary-character lemma.
    QXiDropFactor,
    /// Corrupt the signature of the holomorphic base case.
    BaseCaseSignature,
}

impl Fault {
    pub fn parse(s: &str) -> Option<Fault> {
        match s {
            "rs-split" => Some(Fault::RsSplitIndex),
            "rs-exponent" => Some(Fault::RsTwoPiExponent),
            "asai-top" => Some(Fault::AsaiTop),
            "asai-derived" => Some(Fault::AsaiDerived),
            "iinh" => Some(Fault::IinhDropXi),
            "q-xi" => Some(Fault::QXiDropFactor),
            "base-case" => Some(Fault::BaseCaseSignature),
            _ => None,
        }
    }

    pub const ALL: [(&'static str, Fault); 7] = [
        ("rs-split", Fault::RsSplitIndex),
        ("rs-exponent", Fault::RsTwoPiExponent),
        ("asai-top", Fault::AsaiTop),
        ("asai-derived", Fault::AsaiDerived),
        ("iinh", Fault::IinhDropXi),
        ("q-xi", Fault::QXiDropFactor),
        ("base-case", Fault::BaseCaseSignature),
    ];
}

fn check_cm_period(ctx: &PeriodContext, rep: RepTag, datum: Datum) -> PeriodSymbol {
    PeriodSymbol::CmPeriod {
        character: CharacterExpr::basis(ctx.central_char(rep)).check(ctx),
        datum,
    }
}

/// `p(ξ̌_Π, Σ)` over the full CM type.
pub fn cm_check_over_sigma(ctx: &PeriodContext, rep: RepTag) -> PeriodSymbol {
    check_cm_period(
        ctx,
        rep,
        Datum::Embeddings(ctx.shape().sigma().into_iter().collect()),
    )
}

/// The factorization target for one descent index:
/// `p(ξ̌_Π, Σ)^{-1} · P^{(q+1)}(Π, ι_{v0}) / P^{(q)}(Π, ι_{v0})`.
pub fn factorization_target(ctx: &PeriodContext, rep: RepTag, q: u32) -> PeriodMonomial {
    factorization_target_at(ctx, rep, q, ctx.shape().v0_or_first())
}

/// The same identity for the descent distinguished at an arbitrary place.
pub fn factorization_target_at(
    ctx: &PeriodContext,
    rep: RepTag,
    q: u32,
    place: crate::shape::PlaceId,
) -> PeriodMonomial {
    let iota = Embedding::unbarred(place);
    let mut m = PeriodMonomial::unit();
    m.insert(cm_check_over_sigma(ctx, rep), -1);
    m.insert(
        PeriodSymbol::ArithLocal {
            rep,
            sup: q + 1,
            embedding: iota,
        },
        1,
    );
    m.insert(
        PeriodSymbol::ArithLocal {
            rep,
            sup: q,
            embedding: iota,
        },
        -1,
    );
    m
}

/// Warnings for exponent lists below the regularity the critical-value
/// identity is proved under (consecutive doubled gaps below 12, i.e. weight
/// gaps below five).
pub fn regularity_warnings(ctx: &PeriodContext, reps: &[&RepData]) -> Vec<String> {
    let mut out = Vec::new();
    for r in reps {
        if r.rank() >= 2 && r.itype.min_gap_doubled() < 12 {
            out.push(format!(
                "{} is below 5-regularity (doubled gap {})",
                ctx.rep_name(r.tag),
                r.itype.min_gap_doubled()
            ));
        }
    }
    out
}

/// Rankin–Selberg critical value: pairs `L(s₀, Π ⊗ Π')` with
/// `(2πi)^{d·n·n'·s₀} · ∏_ι ∏_i P^{(i)}(Π,ι)^{sp(i)} ∏_j P^{(j)}(Π',ι)^{sp(j)}`,
/// split indices computed from the exponent lists at every place.
pub fn axiom_rs_value(
    ctx: &PeriodContext,
    a: &RepData,
    b: &RepData,
    s0: HalfInt,
    fault: Option<Fault>,
) -> Result<AxiomPair, PeriodError> {
    let cs = critical_set(&a.itype, &b.itype)?;
    if !cs.members.contains(&s0) {
        return Err(PeriodError::NotCritical { s0 });
    }
    let d = ctx.shape().d() as i64;
    let n = a.rank() as i64;
    let np = b.rank() as i64;
    let exp_doubled = d * n * np * s0.doubled();
    if exp_doubled % 2 != 0 {
        return Err(PeriodError::NonIntegralExponent {
            doubled: exp_doubled,
        });
    }
    let mut exp = exp_doubled / 2;
    if fault == Some(Fault::RsTwoPiExponent) {
        exp += 1;
    }
    let mut rhs = PeriodMonomial::symbol_pow(PeriodSymbol::TwoPiI, exp);
    for place in ctx.shape().places() {
        let iota = Embedding::unbarred(place);
        let sp_a = automorphic_split_indices(&a.itype, &b.itype, place, false)?;
        let sp_b = automorphic_split_indices(&b.itype, &a.itype, place, false)?;
        for (i, &e) in sp_a.entries.iter().enumerate() {
            rhs.insert(
                PeriodSymbol::ArithLocal {
                    rep: a.tag,
                    sup: i as u32,
                    embedding: iota,
                },
                e,
            );
        }
        for (j, &e) in sp_b.entries.iter().enumerate() {
            rhs.insert(
                PeriodSymbol::ArithLocal {
                    rep: b.tag,
                    sup: j as u32,
                    embedding: iota,
                },
                e,
            );
        }
    }
    if fault == Some(Fault::RsSplitIndex) {
        let v0 = ctx.shape().v0_or_first();
        rhs.insert(
            PeriodSymbol::ArithLocal {
                rep: a.tag,
                sup: 1,
                embedding: Embedding::unbarred(v0),
            },
            1,
        );
    }
    let lhs = PeriodMonomial::symbol(PeriodSymbol::LValue(LValueKind::RankinSelberg {
        lhs: a.tag,
        rhs: b.tag,
        s0_doubled: s0.doubled(),
    }));
    let mut tags = FieldTagSet::new();
    tags.add(format!("E({})", ctx.rep_name(a.tag)));
    tags.add(format!("E({})", ctx.rep_name(b.tag)));
    Ok(AxiomPair {
        name: "rs-critical-value".to_string(),
        lhs,
        rhs,
        tags,
    })
}

/// Asai value at 1: pairs `L(1, Π, As^{(−1)^n})` with
/// `(2πi)^{d n (n+1)/2} · ∏_ι ∏_{i=0}^{n} P^{(i)}(Π, ι)`.
pub fn axiom_asai_value(ctx: &PeriodContext, rep: &RepData, fault: Option<Fault>) -> AxiomPair {
    let d = ctx.shape().d() as i64;
    let n = rep.rank() as i64;
    let exp = d * n * (n + 1) / 2;
    let mut rhs = PeriodMonomial::symbol_pow(PeriodSymbol::TwoPiI, exp);
    for place in ctx.shape().places() {
        let iota = Embedding::unbarred(place);
        for i in 0..=rep.rank() as u32 {
            rhs.insert(
                PeriodSymbol::ArithLocal {
                    rep: rep.tag,
                    sup: i,
                    embedding: iota,
                },
                1,
            );
        }
    }
    if fault.is_some() {
        let v0 = ctx.shape().v0_or_first();
        rhs.insert(
            PeriodSymbol::ArithLocal {
                rep: rep.tag,
                sup: 1,
                embedding: Embedding::unbarred(v0),
            },
            -1,
        );
    }
    let lhs = PeriodMonomial::symbol(PeriodSymbol::LValue(LValueKind::Asai {
        rep: rep.tag,
        sign: AsaiSign::for_rank(rep.rank()),
    }));
    let mut tags = FieldTagSet::new();
    tags.add(format!("E({})", ctx.rep_name(rep.tag)));
    AxiomPair {
        name: "asai-critical-value".to_string(),
        lhs,
        rhs,
        tags,
    }
}

/// Inner-product formula in ratio form: pairs
/// `1 / (Q(π(q)) · Q(π'(q)) · Q(ξ))` with
/// `(2πi)^{d n (n+1)/2} · L(1/2, Π ⊗ Π') / (Asai_n · Asai_{n−1})` together
/// with its constant classes. The Q-period of the twisted datum is already
/// expanded as `Q(π'(q)) · Q(ξ)`.
pub fn axiom_iinh(
    ctx: &PeriodContext,
    rep: &RepData,
    rep_prime: RepTag,
    xi: BasisCharId,
    q: usize,
    fault: Option<Fault>,
) -> Result<AxiomPair, PeriodError> {
    let n = rep.rank();
    if n < 2 || q > n - 2 {
        return Err(PeriodError::IndexOutOfRange {
            q,
            max: n.saturating_sub(2),
        });
    }
    let v0 = ctx.shape().v0_or_first();
    let d = ctx.shape().d() as i64;
    let mut lhs = PeriodMonomial::unit();
    lhs.insert(
        PeriodSymbol::QAuto {
            rep: rep.tag,
            degree: q as u32,
            place: v0,
        },
        -1,
    );
    lhs.insert(
        PeriodSymbol::QAuto {
            rep: rep_prime,
            degree: (n - q - 2) as u32,
            place: v0,
        },
        -1,
    );
    if fault != Some(Fault::IinhDropXi) {
        lhs.insert(PeriodSymbol::QXi { xi }, -1);
    }
    let nn = n as i64;
    let mut rhs = PeriodMonomial::symbol_pow(PeriodSymbol::TwoPiI, d * nn * (nn + 1) / 2);
    rhs.insert(
        PeriodSymbol::LValue(LValueKind::RankinSelberg {
            lhs: rep.tag,
            rhs: rep_prime,
            s0_doubled: 1,
        }),
        1,
    );
    rhs.insert(
        PeriodSymbol::LValue(LValueKind::Asai {
            rep: rep.tag,
            sign: AsaiSign::for_rank(n),
        }),
        -1,
    );
    rhs.insert(
        PeriodSymbol::LValue(LValueKind::Asai {
            rep: rep_prime,
            sign: AsaiSign::for_rank(n - 1),
        }),
        -1,
    );
    rhs.insert(PeriodSymbol::Const(ConstLabel::Beta2), 1);
    rhs.insert(PeriodSymbol::Const(ConstLabel::DeltaH), 1);
    rhs.insert(PeriodSymbol::Const(ConstLabel::IStarFinite), 1);
    rhs.insert(PeriodSymbol::Const(ConstLabel::IStarArch), 1);
    let mut tags = FieldTagSet::new();
    tags.add(format!("E(pi({},{q}))", ctx.rep_name(rep.tag)));
    tags.add(format!(
        "E(pi'({},{}))",
        ctx.rep_name(rep_prime),
        n - q - 2
    ));
    Ok(AxiomPair {
        name: "iinh-ratio".to_string(),
        lhs,
        rhs,
        tags,
    })
}

/// The auxiliary-character lemma: pairs `Q(ξ)` with
/// `p(ξ̌_Π, Σ) · p(ξ̌_Π', Σ)`, derived through the chain
/// rank-one datum → diagonal datum → `p(ξ,Σ) p(ξ,Σ̄)^{-1}` → base-changed
/// character, each step logged.
pub fn axiom_q_xi(
    ctx: &PeriodContext,
    xi: BasisCharId,
    rep: RepTag,
    rep_prime: RepTag,
    fault: Option<Fault>,
) -> Result<(AxiomPair, Vec<(String, PeriodMonomial)>), PeriodError> {
    if !ctx.has_central_identity(xi) {
        return Err(PeriodError::MissingCentralCharacterIdentity);
    }
    let chi = CharacterExpr::basis(xi);
    let mut chain = Vec::new();
    chain.push((
        "CM period of the rank-one datum".to_string(),
        PeriodMonomial::symbol(PeriodSymbol::CmPeriod {
            character: chi.clone(),
            datum: Datum::U1Torus,
        }),
    ));
    chain.push((
        "pullback to the diagonal datum".to_string(),
        PeriodMonomial::symbol(PeriodSymbol::CmPeriod {
            character: chi.clone(),
            datum: Datum::DiagonalSigma,
        }),
    ));
    let sigma = Datum::Embeddings(ctx.shape().sigma().into_iter().collect());
    let sigma_bar = Datum::Embeddings(ctx.shape().sigma_bar().into_iter().collect());
    let mut split = PeriodMonomial::symbol(PeriodSymbol::CmPeriod {
        character: chi.clone(),
        datum: sigma.clone(),
    });
    split.insert(
        PeriodSymbol::CmPeriod {
            character: chi.clone(),
            datum: sigma_bar,
        },
        -1,
    );
    chain.push(("datum split over the CM type".to_string(), split.clone()));
    let (reduced, _) = crate::period::normalize::normalize(ctx, &split)?;
    chain.push((
        "central-character identity and conjugate elimination".to_string(),
        reduced,
    ));

    let mut rhs = PeriodMonomial::symbol(cm_check_over_sigma(ctx, rep));
    if fault != Some(Fault::QXiDropFactor) {
        rhs.insert(cm_check_over_sigma(ctx, rep_prime), 1);
    }
    let mut tags = FieldTagSet::new();
    tags.add(format!("E_F({})", ctx.char_name(xi)));
    tags.add(format!("E_F(xi_{})", ctx.rep_name(rep)));
    tags.add(format!("E_F(xi_{})", ctx.rep_name(rep_prime)));
    Ok((
        AxiomPair {
            name: "q-xi-lemma".to_string(),
            lhs: PeriodMonomial::symbol(PeriodSymbol::QXi { xi }),
            rhs,
            tags,
        },
        chain,
    ))
}

/// Holomorphic base case: `Q(π(0))` is the global arithmetic period of the
/// distinguished signature.
pub fn axiom_holomorphic_base(
    ctx: &PeriodContext,
    rep: &RepData,
    fault: Option<Fault>,
) -> AxiomPair {
    let v0 = ctx.shape().v0_or_first();
    let signature: Vec<u32> = ctx
        .shape()
        .places()
        .map(|p| {
            if p == v0 {
                if fault == Some(Fault::BaseCaseSignature) {
                    2
                } else {
                    1
                }
            } else {
                0
            }
        })
        .collect();
    let lhs = PeriodMonomial::symbol(PeriodSymbol::QAuto {
        rep: rep.tag,
        degree: 0,
        place: v0,
    });
    let rhs = PeriodMonomial::symbol(PeriodSymbol::ArithGlobal {
        rep: rep.tag,
        signature,
    });
    let mut tags = FieldTagSet::new();
    tags.add(format!("E({})", ctx.rep_name(rep.tag)));
    tags.add(format!("E(pi({},0))", ctx.rep_name(rep.tag)));
    AxiomPair {
        name: "holomorphic-base-case".to_string(),
        lhs,
        rhs,
        tags,
    }
}
