//! Formal multiplicative algebra of Hecke-character symbols.
//!
//! A character expression is an exponent vector over registered basis
//! symbols, each factor optionally carrying a formal conjugation flag. The
//! normal form eliminates the flag whenever the basis symbol has a known
//! conjugation behaviour:
//!
//! * conjugate self-dual symbols satisfy `χ^c = χ^{-1}`;
//! * the norm satisfies `‖·‖^c = ‖·‖`;
//! * the distinguished algebraic character `ψ` satisfies `ψ^c = ψ^{-1}‖·‖`;
//! * auxiliary characters may have a registered expansion for `χ^c`;
//! * otherwise the flag is kept (opaque symbols).
//!
//! The conjugate inverse `χ̌ = (χ^c)^{-1}` is provided as a derived
//! operation, and both involutions square to the identity on normal forms.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::period::context::PeriodContext;

/// Interned basis character symbol.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BasisCharId(pub u32);

/// How conjugation acts on a basis symbol.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ConjBehavior {
    /// `χ^c = χ^{-1}`.
    ConjugateSelfDual,
    /// `χ^c = χ`.
    Invariant,
    /// `χ^c = χ^{-1} · ‖·‖`.
    PsiLike,
    /// `χ^c` expands to a registered conjugation-free expression.
    Registered(CharacterExpr),
    /// No rule; the conjugation flag persists in normal form.
    Opaque,
}

/// Normalized product of basis character symbols.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize, Deserialize)]
pub struct CharacterExpr {
    /// `(symbol, conjugated) → exponent`; no zero exponents are stored.
    factors: BTreeMap<(BasisCharId, bool), i64>,
}

impl CharacterExpr {
    pub fn trivial() -> Self {
        CharacterExpr::default()
    }

    pub fn basis(id: BasisCharId) -> Self {
        let mut factors = BTreeMap::new();
        factors.insert((id, false), 1);
        CharacterExpr { factors }
    }

    /// Single factor carrying the formal conjugation flag; meaningful for
    /// opaque symbols whose conjugate has no expansion.
    pub fn basis_conjugated(id: BasisCharId) -> Self {
        let mut factors = BTreeMap::new();
        factors.insert((id, true), 1);
        CharacterExpr { factors }
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> impl Iterator<Item = ((BasisCharId, bool), i64)> + '_ {
        self.factors.iter().map(|(&k, &v)| (k, v))
    }

    /// The single factor, if the expression is one symbol with exponent ±1.
    pub fn single_unit_factor(&self) -> Option<(BasisCharId, bool, i64)> {
        if self.factors.len() == 1 {
            let (&(id, conj), &e) = self.factors.iter().next().unwrap();
            if e == 1 || e == -1 {
                return Some((id, conj, e));
            }
        }
        None
    }

    fn insert(&mut self, key: (BasisCharId, bool), e: i64) {
        let slot = self.factors.entry(key).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.factors.remove(&key);
        }
    }

    pub fn mul(&self, other: &CharacterExpr) -> CharacterExpr {
        let mut out = self.clone();
        for (k, e) in other.factors() {
            out.insert(k, e);
        }
        out
    }

    pub fn inverse(&self) -> CharacterExpr {
        CharacterExpr {
            factors: self.factors.iter().map(|(&k, &v)| (k, -v)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> CharacterExpr {
        if k == 0 {
            return CharacterExpr::trivial();
        }
        CharacterExpr {
            factors: self.factors.iter().map(|(&key, &v)| (key, v * k)).collect(),
        }
    }

    /// Eliminates conjugation flags according to the registered behaviours.
    pub fn normalized(&self, ctx: &PeriodContext) -> CharacterExpr {
        let mut out = CharacterExpr::trivial();
        for ((id, conj), e) in self.factors() {
            if !conj {
                out.insert((id, false), e);
                continue;
            }
            match ctx.conj_behavior(id) {
                ConjBehavior::ConjugateSelfDual => out.insert((id, false), -e),
                ConjBehavior::Invariant => out.insert((id, false), e),
                ConjBehavior::PsiLike => {
                    out.insert((id, false), -e);
                    out.insert((ctx.norm_char(), false), e);
                }
                ConjBehavior::Registered(expr) => {
                    for (k, ee) in expr.pow(e).factors() {
                        out.insert(k, ee);
                    }
                }
                ConjBehavior::Opaque => out.insert((id, true), e),
            }
        }
        out
    }

    /// Formal conjugation `χ ↦ χ^c`, returned in normal form.
    pub fn conjugate(&self, ctx: &PeriodContext) -> CharacterExpr {
        let toggled = CharacterExpr {
            factors: self
                .factors
                .iter()
                .map(|(&(id, conj), &e)| ((id, !conj), e))
                .collect(),
        };
        toggled.normalized(ctx)
    }

    /// Conjugate inverse `χ̌ = (χ^c)^{-1}`.
    pub fn check(&self, ctx: &PeriodContext) -> CharacterExpr {
        self.conjugate(ctx).inverse()
    }

    pub fn describe(&self, ctx: &PeriodContext) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for ((id, conj), e) in self.factors() {
            let mut s = ctx.char_name(id).to_string();
            if conj {
                s = format!("conj({s})");
            }
            if e != 1 {
                s = format!("{s}^{e}");
            }
            parts.push(s);
        }
        parts.join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::period::context::PeriodContext;
    use crate::shape::CMShape;

    #[test]
    fn conjugation_is_an_involution() {
        let mut ctx = PeriodContext::new(CMShape::with_default_labels(2));
        let rep = ctx.register_rep("Pi", 3);
        let xi = ctx.central_char(rep);
        let opaque = ctx.register_opaque_char("chi");

        for expr in [
            CharacterExpr::basis(xi),
            CharacterExpr::basis(ctx.psi_char()),
            CharacterExpr::basis(ctx.norm_char()),
            CharacterExpr::basis(opaque),
            CharacterExpr::basis(xi)
                .mul(&CharacterExpr::basis(ctx.psi_char()).inverse())
                .mul(&CharacterExpr::basis(opaque).pow(3)),
        ] {
            let n = expr.normalized(&ctx);
            assert_eq!(n.conjugate(&ctx).conjugate(&ctx), n);
            assert_eq!(n.inverse().inverse(), n);
            assert_eq!(n.check(&ctx), n.conjugate(&ctx).inverse());
        }
    }

    #[test]
    fn self_dual_check_is_identity() {
        let mut ctx = PeriodContext::new(CMShape::with_default_labels(1));
        let rep = ctx.register_rep("Pi", 2);
        let xi = CharacterExpr::basis(ctx.central_char(rep));
        assert_eq!(xi.check(&ctx), xi);
    }

    #[test]
    fn psi_check_expands_through_the_norm() {
        let ctx = PeriodContext::new(CMShape::with_default_labels(1));
        let psi = CharacterExpr::basis(ctx.psi_char());
        let check = psi.check(&ctx);
        // ψ̌ = ψ · ‖·‖^{-1}
        let expected = psi.mul(&CharacterExpr::basis(ctx.norm_char()).inverse());
        assert_eq!(check, expected);
    }
}
