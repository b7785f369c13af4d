//! Shared symbol tables for a period computation: the archimedean shape,
//! registered basis characters with their conjugation behaviour, registered
//! representation tags, the rationality toggle for archimedean integrals,
//! and the replay memo table.
//!
//! All symbol construction is pure; the memo table is the only shared state
//! and behaves as an idempotent insert-only map, so a context can be driven
//! from several workers without coordination beyond its internal lock.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::period::character::{BasisCharId, CharacterExpr, ConjBehavior};
use crate::period::report::DerivationReport;
use crate::period::symbol::RepTag;
use crate::shape::CMShape;

struct CharInfo {
    name: String,
    behavior: ConjBehavior,
}

struct RepInfo {
    name: String,
    rank: u32,
    central: BasisCharId,
}

/// Memo key for completed factorization replays: representation, descent
/// index, and the doubled parameter entries per place.
pub type MemoKey = (RepTag, u32, Vec<Vec<i64>>);

pub struct PeriodContext {
    shape: CMShape,
    /// Rationality of archimedean pairings: when false, the archimedean
    /// constant classes survive into residuals and verdicts weaken.
    pub lvarch: bool,
    chars: Vec<CharInfo>,
    reps: Vec<RepInfo>,
    norm: BasisCharId,
    psi: BasisCharId,
    eta: BasisCharId,
    memo: Mutex<HashMap<MemoKey, Arc<DerivationReport>>>,
}

impl PeriodContext {
    pub fn new(shape: CMShape) -> Self {
        let mut ctx = PeriodContext {
            shape,
            lvarch: true,
            chars: Vec::new(),
            reps: Vec::new(),
            norm: BasisCharId(0),
            psi: BasisCharId(0),
            eta: BasisCharId(0),
            memo: Mutex::new(HashMap::new()),
        };
        ctx.norm = ctx.push_char("||.||", ConjBehavior::Invariant);
        ctx.psi = ctx.push_char("psi", ConjBehavior::PsiLike);
        ctx.eta = ctx.push_char("eta", ConjBehavior::ConjugateSelfDual);
        ctx
    }

    fn push_char(&mut self, name: &str, behavior: ConjBehavior) -> BasisCharId {
        let id = BasisCharId(self.chars.len() as u32);
        self.chars.push(CharInfo {
            name: name.to_string(),
            behavior,
        });
        id
    }

    pub fn shape(&self) -> &CMShape {
        &self.shape
    }

    pub fn norm_char(&self) -> BasisCharId {
        self.norm
    }

    pub fn psi_char(&self) -> BasisCharId {
        self.psi
    }

    pub fn eta_char(&self) -> BasisCharId {
        self.eta
    }

    pub fn char_name(&self, id: BasisCharId) -> &str {
        &self.chars[id.0 as usize].name
    }

    pub fn conj_behavior(&self, id: BasisCharId) -> ConjBehavior {
        self.chars[id.0 as usize].behavior.clone()
    }

    /// Registers a conjugate self-dual representation tag of the given rank,
    /// creating its central character symbol.
    pub fn register_rep(&mut self, name: &str, rank: u32) -> RepTag {
        if let Some(existing) = self
            .reps
            .iter()
            .position(|r| r.name == name && r.rank == rank)
        {
            return RepTag(existing as u32);
        }
        let central = self.push_char(
            &format!("xi_{name}"),
            ConjBehavior::ConjugateSelfDual,
        );
        let tag = RepTag(self.reps.len() as u32);
        self.reps.push(RepInfo {
            name: name.to_string(),
            rank,
            central,
        });
        tag
    }

    /// Registers a character with no conjugation rule.
    pub fn register_opaque_char(&mut self, name: &str) -> BasisCharId {
        self.push_char(name, ConjBehavior::Opaque)
    }

    /// Registers the auxiliary rank-one character tied to a descent step,
    /// together with the central-character identity that determines its
    /// conjugate: `ξ^c = ξ · ξ_Π^{-1} · ξ_Π'^{-1}`.
    pub fn register_aux_xi(&mut self, name: &str, rep: RepTag, rep_prime: RepTag) -> BasisCharId {
        let id = self.push_char(name, ConjBehavior::Opaque);
        let expansion = CharacterExpr::basis(id)
            .mul(&CharacterExpr::basis(self.central_char(rep)).inverse())
            .mul(&CharacterExpr::basis(self.central_char(rep_prime)).inverse());
        self.chars[id.0 as usize].behavior = ConjBehavior::Registered(expansion);
        id
    }

    /// True when the character has a registered conjugation expansion.
    pub fn has_central_identity(&self, id: BasisCharId) -> bool {
        matches!(self.conj_behavior(id), ConjBehavior::Registered(_))
    }

    pub fn rep_name(&self, rep: RepTag) -> &str {
        &self.reps[rep.0 as usize].name
    }

    pub fn rep_rank(&self, rep: RepTag) -> u32 {
        self.reps[rep.0 as usize].rank
    }

    pub fn central_char(&self, rep: RepTag) -> BasisCharId {
        self.reps[rep.0 as usize].central
    }

    pub fn memo_get(&self, key: &MemoKey) -> Option<Arc<DerivationReport>> {
        self.memo.lock().unwrap().get(key).cloned()
    }

    pub fn memo_put(&self, key: MemoKey, report: Arc<DerivationReport>) {
        // insert-only: the first computed report wins
        self.memo
            .lock()
            .unwrap()
            .entry(key)
            .or_insert(report);
    }
}
