//! Period symbols: the atoms of the monomial algebra.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::half::HalfInt;
use crate::period::character::{BasisCharId, CharacterExpr};
use crate::period::context::PeriodContext;
use crate::shape::{Embedding, PlaceId};

/// Interned representation tag (a GL_n datum together with its rank and
/// central character, looked up through the context).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RepTag(pub u32);

/// The Shimura datum a CM period is attached to. Almost all periods live on
/// embedding sets; the two exotic data appear only inside the `Q(ξ)`
/// derivation chain and rewrite into embedding sets.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Datum {
    Embeddings(BTreeSet<Embedding>),
    U1Torus,
    DiagonalSigma,
}

impl Datum {
    pub fn singleton(e: Embedding) -> Datum {
        Datum::Embeddings([e].into_iter().collect())
    }
}

/// Sign of an Asai L-function: `Plus` is the untwisted one.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum AsaiSign {
    Plus,
    Minus,
}

impl AsaiSign {
    /// The sign `(−1)^n` appearing with a rank-`n` datum.
    pub fn for_rank(n: usize) -> AsaiSign {
        if n % 2 == 0 {
            AsaiSign::Plus
        } else {
            AsaiSign::Minus
        }
    }
}

/// Opaque L-value symbols; they are eliminated only by axiom schemas.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum LValueKind {
    /// Rankin–Selberg value `L(s₀, Π ⊗ Π')` (partial L-function).
    RankinSelberg {
        lhs: RepTag,
        rhs: RepTag,
        s0_doubled: i64,
    },
    /// Asai value `L(1, Π, As^±)`.
    Asai { rep: RepTag, sign: AsaiSign },
}

/// Constant classes: quantities controlled only up to number-field scalars
/// or archimedean normalizations. They are logged but ignored by equivalence
/// verdicts, except for the archimedean ones when the rationality toggle is
/// off.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum ConstLabel {
    /// `2^β` from the inner-product formula.
    Beta2,
    /// Abelian L-value product `Δ_H^S`.
    DeltaH,
    /// Non-archimedean normalized local pairings.
    IStarFinite,
    /// Archimedean normalized local pairings.
    IStarArch,
    /// Archimedean factor of the Deligne-side comparison.
    IInfinity,
    /// Archimedean Whittaker normalization.
    ZInfinity,
}

impl ConstLabel {
    /// True for the factors whose rationality is exactly the content of the
    /// archimedean-integral hypothesis.
    pub fn is_archimedean(self) -> bool {
        matches!(self, ConstLabel::IStarArch | ConstLabel::IInfinity)
    }
}

/// One multiplicative period symbol.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum PeriodSymbol {
    /// The transcendental unit `2πi`.
    TwoPiI,
    /// CM period `p(χ, Ψ)`.
    CmPeriod {
        character: CharacterExpr,
        datum: Datum,
    },
    /// Local arithmetic period `P^{(i)}(Π, ι)`, `ι` in the CM type.
    ArithLocal {
        rep: RepTag,
        sup: u32,
        embedding: Embedding,
    },
    /// Global arithmetic period `P^{(I)}(Π)` for a signature vector `I`.
    ArithGlobal { rep: RepTag, signature: Vec<u32> },
    /// Factor `P_i(Π, ι)` of the telescoping factorization.
    LocalFactorP {
        rep: RepTag,
        index: u32,
        embedding: Embedding,
    },
    /// Automorphic Q-period `Q(π(q))` of the descent of `Π^∨` at the
    /// distinguished place.
    QAuto {
        rep: RepTag,
        degree: u32,
        place: PlaceId,
    },
    /// Q-period of an auxiliary rank-one datum (a Hecke character).
    QXi { xi: BasisCharId },
    /// Motivic period `Q_i(M, ι)`.
    QMotivic {
        rep: RepTag,
        index: u32,
        embedding: Embedding,
    },
    /// Accumulated motivic period `Q^{(i)}(M, ι) = Q_0 ⋯ Q_i`.
    QUpper {
        rep: RepTag,
        index: u32,
        embedding: Embedding,
    },
    /// Determinant period `δ(M, ι)`.
    DeltaMotive { rep: RepTag, embedding: Embedding },
    /// Opaque L-value.
    LValue(LValueKind),
    /// Constant-class symbol.
    Const(ConstLabel),
}

/// Coarse classification used by equivalence verdicts.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum SymbolClass {
    TwoPiI,
    CmPeriod,
    ArithLocal,
    ArithGlobal,
    LocalFactorP,
    QAuto,
    QXi,
    QMotivic,
    QUpper,
    DeltaMotive,
    LValue,
    Const,
}

impl PeriodSymbol {
    pub fn class(&self) -> SymbolClass {
        match self {
            PeriodSymbol::TwoPiI => SymbolClass::TwoPiI,
            PeriodSymbol::CmPeriod { .. } => SymbolClass::CmPeriod,
            PeriodSymbol::ArithLocal { .. } => SymbolClass::ArithLocal,
            PeriodSymbol::ArithGlobal { .. } => SymbolClass::ArithGlobal,
            PeriodSymbol::LocalFactorP { .. } => SymbolClass::LocalFactorP,
            PeriodSymbol::QAuto { .. } => SymbolClass::QAuto,
            PeriodSymbol::QXi { .. } => SymbolClass::QXi,
            PeriodSymbol::QMotivic { .. } => SymbolClass::QMotivic,
            PeriodSymbol::QUpper { .. } => SymbolClass::QUpper,
            PeriodSymbol::DeltaMotive { .. } => SymbolClass::DeltaMotive,
            PeriodSymbol::LValue(_) => SymbolClass::LValue,
            PeriodSymbol::Const(_) => SymbolClass::Const,
        }
    }

    pub fn describe(&self, ctx: &PeriodContext) -> String {
        match self {
            PeriodSymbol::TwoPiI => "(2*pi*i)".to_string(),
            PeriodSymbol::CmPeriod { character, datum } => {
                let chi = character.describe(ctx);
                match datum {
                    Datum::Embeddings(set) => {
                        let names: Vec<String> = set
                            .iter()
                            .map(|&e| ctx.shape().describe_embedding(e))
                            .collect();
                        format!("p({chi}; {})", names.join(","))
                    }
                    Datum::U1Torus => format!("p({chi}; U(1))"),
                    Datum::DiagonalSigma => format!("p({chi}; z/zbar)"),
                }
            }
            PeriodSymbol::ArithLocal {
                rep,
                sup,
                embedding,
            } => format!(
                "P^({sup})({}, {})",
                ctx.rep_name(*rep),
                ctx.shape().describe_embedding(*embedding)
            ),
            PeriodSymbol::ArithGlobal { rep, signature } => {
                let sig: Vec<String> = signature.iter().map(|s| s.to_string()).collect();
                format!("P^(I=({}))({})", sig.join(","), ctx.rep_name(*rep))
            }
            PeriodSymbol::LocalFactorP {
                rep,
                index,
                embedding,
            } => format!(
                "P_{index}({}, {})",
                ctx.rep_name(*rep),
                ctx.shape().describe_embedding(*embedding)
            ),
            PeriodSymbol::QAuto { rep, degree, place } => format!(
                "Q(pi({degree}) of {} at {})",
                ctx.rep_name(*rep),
                ctx.shape().label(*place)
            ),
            PeriodSymbol::QXi { xi } => format!("Q({})", ctx.char_name(*xi)),
            PeriodSymbol::QMotivic {
                rep,
                index,
                embedding,
            } => format!(
                "Q_{index}(M({}), {})",
                ctx.rep_name(*rep),
                ctx.shape().describe_embedding(*embedding)
            ),
            PeriodSymbol::QUpper {
                rep,
                index,
                embedding,
            } => format!(
                "Q^({index})(M({}), {})",
                ctx.rep_name(*rep),
                ctx.shape().describe_embedding(*embedding)
            ),
            PeriodSymbol::DeltaMotive { rep, embedding } => format!(
                "delta(M({}), {})",
                ctx.rep_name(*rep),
                ctx.shape().describe_embedding(*embedding)
            ),
            PeriodSymbol::LValue(kind) => match kind {
                LValueKind::RankinSelberg {
                    lhs,
                    rhs,
                    s0_doubled,
                } => format!(
                    "L({}, {} x {})",
                    HalfInt::from_doubled(*s0_doubled),
                    ctx.rep_name(*lhs),
                    ctx.rep_name(*rhs)
                ),
                LValueKind::Asai { rep, sign } => format!(
                    "L(1, {}, As{})",
                    ctx.rep_name(*rep),
                    if *sign == AsaiSign::Plus { "+" } else { "-" }
                ),
            },
            PeriodSymbol::Const(label) => format!("[{label:?}]"),
        }
    }
}
