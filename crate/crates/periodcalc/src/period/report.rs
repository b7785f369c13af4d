//! Derivation logging: ordered rewrite steps, accumulated rationality-field
//! tags, residual monomials and verdicts.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::period::context::PeriodContext;
use crate::period::monomial::PeriodMonomial;
use crate::period::symbol::{ConstLabel, PeriodSymbol, SymbolClass};

/// Set of opaque rationality-field labels; union is the only operation and
/// every derivation step carries the union of everything seen so far.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct FieldTagSet(pub BTreeSet<String>);

impl FieldTagSet {
    pub fn new() -> Self {
        FieldTagSet::default()
    }

    pub fn with(tags: &[&str]) -> Self {
        FieldTagSet(tags.iter().map(|s| s.to_string()).collect())
    }

    pub fn add(&mut self, tag: impl Into<String>) {
        self.0.insert(tag.into());
    }

    pub fn union_with(&mut self, other: &FieldTagSet) {
        for t in &other.0 {
            self.0.insert(t.clone());
        }
    }

    pub fn contains_all(&self, other: &FieldTagSet) -> bool {
        other.0.is_subset(&self.0)
    }
}

/// Outcome of a derivation.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", content = "support", rename_all = "kebab-case")]
pub enum Verdict {
    /// Residual supported in constant classes only.
    Closed,
    /// Residual closed except for archimedean constant classes (only
    /// reported when the archimedean rationality toggle is off).
    ClosedModuloArch,
    /// Residual contains symbols outside every allowed class.
    Open(Vec<String>),
}

impl Verdict {
    pub fn is_closed(&self) -> bool {
        matches!(self, Verdict::Closed | Verdict::ClosedModuloArch)
    }
}

/// One logged rewrite: named axiom, whole working monomial before and after,
/// and the cumulative tag set at this point.
#[derive(Clone, Debug)]
pub struct DerivationStep {
    pub axiom: String,
    pub before: PeriodMonomial,
    pub after: PeriodMonomial,
    pub tags: FieldTagSet,
}

/// Ordered log of a derivation together with its residual and verdict.
#[derive(Clone, Debug)]
pub struct DerivationReport {
    pub label: String,
    pub steps: Vec<DerivationStep>,
    pub residual: PeriodMonomial,
    pub verdict: Verdict,
    pub tags: FieldTagSet,
    pub licenses: Vec<String>,
    pub notes: Vec<String>,
    pub sub_reports: Vec<DerivationReport>,
}

impl DerivationReport {
    /// Replays the logged steps, confirming that consecutive states chain
    /// and that the final state is the recorded residual.
    pub fn steps_compose(&self) -> bool {
        for pair in self.steps.windows(2) {
            if pair[0].after != pair[1].before {
                return false;
            }
        }
        match self.steps.last() {
            Some(last) => last.after == self.residual,
            None => true,
        }
    }

    /// Tag sets are monotone along the step list.
    pub fn tags_monotone(&self) -> bool {
        let mut seen = FieldTagSet::new();
        for s in &self.steps {
            if !s.tags.contains_all(&seen) {
                return false;
            }
            seen = s.tags.clone();
        }
        self.tags.contains_all(&seen)
    }

    /// The residual exponent of `2πi`, when the residual is supported in
    /// `2πi` and constant classes only.
    pub fn two_pi_i_exponent(&self) -> Option<i64> {
        let mut exp = 0;
        for (s, e) in self.residual.iter() {
            match s.class() {
                SymbolClass::TwoPiI => exp = e,
                SymbolClass::Const => {}
                _ => return None,
            }
        }
        Some(exp)
    }

    pub fn to_json(&self, ctx: &PeriodContext) -> JsonReport {
        JsonReport {
            label: self.label.clone(),
            verdict: self.verdict.clone(),
            residual: self.residual.rendered(ctx),
            steps: self
                .steps
                .iter()
                .map(|s| JsonStep {
                    axiom: s.axiom.clone(),
                    before: s.before.rendered(ctx),
                    after: s.after.rendered(ctx),
                    tags: s.tags.0.iter().cloned().collect(),
                })
                .collect(),
            tags: self.tags.0.iter().cloned().collect(),
            licenses: self.licenses.clone(),
            notes: self.notes.clone(),
            sub_reports: self.sub_reports.iter().map(|r| r.to_json(ctx)).collect(),
        }
    }

    /// Human-readable rendering mirroring the step labels.
    pub fn to_text(&self, ctx: &PeriodContext) -> String {
        let mut out = String::new();
        out.push_str(&format!("derivation: {}\n", self.label));
        for (i, s) in self.steps.iter().enumerate() {
            out.push_str(&format!(
                "  [{:02}] {}\n       {}\n    -> {}\n",
                i + 1,
                s.axiom,
                s.before.describe(ctx),
                s.after.describe(ctx)
            ));
        }
        out.push_str(&format!("residual: {}\n", self.residual.describe(ctx)));
        let verdict = match &self.verdict {
            Verdict::Closed => "closed".to_string(),
            Verdict::ClosedModuloArch => "closed modulo archimedean factors".to_string(),
            Verdict::Open(support) => format!("open ({})", support.join(", ")),
        };
        out.push_str(&format!("verdict: {verdict}\n"));
        if !self.licenses.is_empty() {
            out.push_str(&format!("licenses: {}\n", self.licenses.join("; ")));
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        for sub in &self.sub_reports {
            for line in sub.to_text(ctx).lines() {
                out.push_str(&format!("    {line}\n"));
            }
        }
        out
    }
}

/// Serializable rendering of a report; symbols appear as display strings
/// with their exponents.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct JsonReport {
    pub label: String,
    pub verdict: Verdict,
    pub residual: Vec<(String, i64)>,
    pub steps: Vec<JsonStep>,
    pub tags: Vec<String>,
    pub licenses: Vec<String>,
    pub notes: Vec<String>,
    pub sub_reports: Vec<JsonReport>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct JsonStep {
    pub axiom: String,
    pub before: Vec<(String, i64)>,
    pub after: Vec<(String, i64)>,
    pub tags: Vec<String>,
}

/// Incremental builder for derivations over a working monomial.
pub struct Derivation<'c> {
    pub ctx: &'c PeriodContext,
    pub current: PeriodMonomial,
    label: String,
    steps: Vec<DerivationStep>,
    tags: FieldTagSet,
    licenses: Vec<String>,
    notes: Vec<String>,
    subs: Vec<DerivationReport>,
}

impl<'c> Derivation<'c> {
    pub fn new(ctx: &'c PeriodContext, label: impl Into<String>, start: PeriodMonomial) -> Self {
        Derivation {
            ctx,
            current: start,
            label: label.into(),
            steps: Vec::new(),
            tags: FieldTagSet::new(),
            licenses: Vec::new(),
            notes: Vec::new(),
            subs: Vec::new(),
        }
    }

    pub fn record(&mut self, axiom: impl Into<String>, after: PeriodMonomial, tags: &FieldTagSet) {
        self.tags.union_with(tags);
        self.steps.push(DerivationStep {
            axiom: axiom.into(),
            before: self.current.clone(),
            after: after.clone(),
            tags: self.tags.clone(),
        });
        self.current = after;
    }

    /// Substitutes `lhs ↦ rhs` wherever `lhs` occurs and logs the step; a
    /// no-op when the symbol is absent.
    pub fn substitute(
        &mut self,
        axiom: impl Into<String>,
        lhs: &PeriodSymbol,
        rhs: &PeriodMonomial,
        tags: &FieldTagSet,
    ) -> bool {
        let mut next = self.current.clone();
        if next.substitute(lhs, rhs) {
            self.record(axiom, next, tags);
            true
        } else {
            false
        }
    }

    pub fn license(&mut self, text: impl Into<String>) {
        self.licenses.push(text.into());
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn attach_sub_report(&mut self, report: DerivationReport) {
        self.subs.push(report);
    }

    /// Final verdict: every residual symbol must lie in an allowed class or
    /// be a constant class; archimedean constants are tolerated only as a
    /// weakened verdict when the rationality toggle is off.
    pub fn finish(self, allowed: &[SymbolClass]) -> DerivationReport {
        let (verdict, _) = classify_residual(self.ctx, &self.current, allowed);
        DerivationReport {
            label: self.label,
            steps: self.steps,
            residual: self.current,
            verdict,
            tags: self.tags,
            licenses: self.licenses,
            notes: self.notes,
            sub_reports: self.subs,
        }
    }
}

/// Splits the residual into a verdict plus the list of offending symbols.
pub fn classify_residual(
    ctx: &PeriodContext,
    residual: &PeriodMonomial,
    allowed: &[SymbolClass],
) -> (Verdict, Vec<PeriodSymbol>) {
    let mut hard: Vec<PeriodSymbol> = Vec::new();
    let mut arch_leftover = false;
    for (s, _) in residual.iter() {
        let class = s.class();
        if allowed.contains(&class) {
            continue;
        }
        if let PeriodSymbol::Const(label) = s {
            if label.is_archimedean() && !ctx.lvarch {
                arch_leftover = true;
            }
            continue;
        }
        hard.push(s.clone());
    }
    if !hard.is_empty() {
        let support = hard.iter().map(|s| s.describe(ctx)).collect();
        (Verdict::Open(support), hard)
    } else if arch_leftover {
        (Verdict::ClosedModuloArch, hard)
    } else {
        (Verdict::Closed, hard)
    }
}

/// Equivalence check: `lhs ∼ rhs` exactly when `normalize(lhs · rhs^{-1})`
/// is supported in the allowed classes plus constants. The residual is
/// returned either way; an open verdict is a value, not an error.
pub fn assert_equivalent(
    ctx: &PeriodContext,
    lhs: &PeriodMonomial,
    rhs: &PeriodMonomial,
    allowed: &[SymbolClass],
) -> Result<DerivationReport, crate::period::normalize::NormalizeError> {
    let start = lhs.mul(&rhs.inverse());
    let mut d = Derivation::new(ctx, "equivalence", start);
    let (normalized, tags) = crate::period::normalize::normalize(ctx, &d.current)?;
    d.record("normal form", normalized, &tags);
    Ok(d.finish(allowed))
}

/// Marker for constant classes in `allowed` lists; provided for symmetry in
/// call sites that spell out every tolerated class.
pub const CONST_CLASS: SymbolClass = SymbolClass::Const;

/// Convenience: the label of a constant symbol.
pub fn const_symbol(label: ConstLabel) -> PeriodSymbol {
    PeriodSymbol::Const(label)
}
