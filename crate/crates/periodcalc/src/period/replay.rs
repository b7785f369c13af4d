//! Replays the factorization of automorphic Q-periods into local arithmetic
//! periods, by induction on the rank.
//!
//! For each descent index `q` the goal identity is
//!
//! ```text
//! Q(π(q)) ∼ p(ξ̌_Π, Σ)^{-1} · P^{(q+1)}(Π, ι_{v0}) / P^{(q)}(Π, ι_{v0})
//! ```
//!
//! with residual in constant classes only. The base case `q = 0` is the
//! holomorphic one; for `q ≥ 1` the chain combines the inner-product ratio,
//! the Rankin–Selberg value at `1/2`, two Asai values, the auxiliary
//! character lemma, and the same statement one rank lower for the derived
//! datum, whose exponent data comes out of the descent bookkeeping.

use std::sync::Arc;

use crate::descent::{coh_degree_prime, pi_prime_infinity_type};
use crate::half::HalfInt;
use crate::period::axioms::{
    axiom_asai_value, axiom_holomorphic_base, axiom_iinh, axiom_q_xi, axiom_rs_value,
    factorization_target, regularity_warnings, Fault, RepData,
};
use crate::period::context::PeriodContext;
use crate::period::monomial::PeriodMonomial;
use crate::period::normalize::normalize;
use crate::period::report::{Derivation, DerivationReport};
use crate::period::symbol::{PeriodSymbol, RepTag};
use crate::period::{BasisCharId, PeriodError};
use crate::spectral::{HCParameter, InfinityType};

#[derive(Clone, Debug)]
pub struct ReplayOptions {
    /// Accept parameters below the `(n+4)`-regularity gate, with a warning.
    pub allow_irregular: bool,
    /// Corrupt one axiom schema at the top level.
    pub fault: Option<Fault>,
    /// Name of the top-level representation tag.
    pub base_name: String,
}

impl Default for ReplayOptions {
    fn default() -> Self {
        ReplayOptions {
            allow_irregular: false,
            fault: None,
            base_name: "Pi".to_string(),
        }
    }
}

/// One rank level of the induction: the representation, its exponent data,
/// its parameter, and the descent index handled at this level.
struct Level {
    rep: RepData,
    param: HCParameter,
    q: usize,
    /// Auxiliary character of the descent step (absent for the base case).
    xi: Option<BasisCharId>,
}

/// Exponents `a_i = −A_{n+1−i}` of the representation whose dual descends
/// to the parameter `A`.
pub fn infinity_type_of_parameter(a: &HCParameter) -> Result<InfinityType, PeriodError> {
    let per_place = a
        .per_place
        .iter()
        .map(|at| at.entries.iter().rev().map(|&h| -h).collect())
        .collect();
    InfinityType::new(a.n, per_place).map_err(PeriodError::from)
}

/// Parameter reconstructed from an exponent list by the same convention.
fn parameter_of_infinity_type(b: &InfinityType) -> Result<HCParameter, PeriodError> {
    let per_place = b
        .per_place
        .iter()
        .map(|v| v.iter().rev().map(|&h| -h).collect())
        .collect();
    HCParameter::plain(b.n, per_place).map_err(PeriodError::from)
}

fn prime_name(base: &str, depth: usize) -> String {
    let mut s = base.to_string();
    s.extend(std::iter::repeat('\'').take(depth));
    s
}

/// Plans the whole induction chain: level `k` holds the rank `n−k` datum.
/// Registration happens up front so derivations can run over a shared
/// immutable context.
fn plan_levels(
    ctx: &mut PeriodContext,
    a: &HCParameter,
    q: usize,
    opts: &ReplayOptions,
) -> Result<Vec<Level>, PeriodError> {
    let v0 = ctx.shape().v0_or_first();
    let mut levels = Vec::new();
    let mut param = a.clone();
    let mut q_here = q;
    let mut depth = 0usize;
    loop {
        let n_here = param.n;
        let name = prime_name(&opts.base_name, depth);
        let tag = ctx.register_rep(&name, n_here as u32);
        let itype = infinity_type_of_parameter(&param)?;
        if q_here == 0 {
            levels.push(Level {
                rep: RepData { tag, itype },
                param,
                q: 0,
                xi: None,
            });
            return Ok(levels);
        }
        if n_here < 2 || q_here > n_here - 2 {
            return Err(PeriodError::IndexOutOfRange {
                q: q_here,
                max: n_here.saturating_sub(2),
            });
        }
        let b = pi_prime_infinity_type(&param, q_here, v0)?;
        let next_param = parameter_of_infinity_type(&b)?;
        let next_q = coh_degree_prime(n_here, q_here)?;
        let next_name = prime_name(&opts.base_name, depth + 1);
        let next_tag = ctx.register_rep(&next_name, (n_here - 1) as u32);
        let xi = ctx.register_aux_xi(&format!("xi[{name},q={q_here}]"), tag, next_tag);
        levels.push(Level {
            rep: RepData { tag, itype },
            param,
            q: q_here,
            xi: Some(xi),
        });
        param = next_param;
        q_here = next_q;
        depth += 1;
    }
}

fn memo_key(level: &Level) -> (RepTag, u32, Vec<Vec<i64>>) {
    let params = level
        .param
        .per_place
        .iter()
        .map(|at| at.multiset().iter().map(|h| h.doubled()).collect())
        .collect();
    (level.rep.tag, level.q as u32, params)
}

/// Replays the factorization identity for `Q(π(q))` attached to the
/// parameter `a` at the distinguished place. The returned report is `closed`
/// exactly when every axiom instance fits together; a corrupted axiom leaves
/// an open residual naming the surviving symbols.
pub fn replay_factorization(
    ctx: &mut PeriodContext,
    a: &HCParameter,
    q: usize,
    opts: &ReplayOptions,
) -> Result<DerivationReport, PeriodError> {
    if a.d() != ctx.shape().d() {
        return Err(PeriodError::ShapeMismatch {
            param: a.d(),
            shape: ctx.shape().d(),
        });
    }
    let n = a.n;
    if n < 2 || q > n - 2 {
        return Err(PeriodError::IndexOutOfRange {
            q,
            max: n.saturating_sub(2),
        });
    }
    let v0 = ctx.shape().v0_or_first();
    let gate = 2 * (n as i64 + 4);
    let v0_gap = a
        .at(v0)
        .entries
        .windows(2)
        .map(|p| p[0].doubled() - p[1].doubled())
        .min()
        .unwrap_or(i64::MAX);
    let mut regularity_note = None;
    if v0_gap < gate {
        if !opts.allow_irregular {
            return Err(PeriodError::NotRegular {
                detail: format!(
                    "doubled gap {v0_gap} at the distinguished place is below 2(n+4) = {gate}"
                ),
            });
        }
        regularity_note = Some(format!(
            "regularity override: doubled gap {v0_gap} below the 2(n+4) = {gate} gate"
        ));
    }
    let levels = plan_levels(ctx, a, q, opts)?;
    let report = replay_levels(ctx, &levels, 0, opts)?;
    let mut report = report;
    if let Some(note) = regularity_note {
        report.notes.push(note);
    }
    Ok(report)
}

fn replay_levels(
    ctx: &PeriodContext,
    levels: &[Level],
    k: usize,
    opts: &ReplayOptions,
) -> Result<DerivationReport, PeriodError> {
    let level = &levels[k];
    let fault = if k == 0 { opts.fault } else { None };
    let key = memo_key(level);
    if fault.is_none() {
        if let Some(hit) = ctx.memo_get(&key) {
            let mut cloned = (*hit).clone();
            cloned.notes.push("memoized sub-derivation".to_string());
            return Ok(cloned);
        }
    }
    let report = if level.q == 0 {
        replay_base_case(ctx, level, fault)?
    } else {
        replay_general_case(ctx, levels, k, fault, opts)?
    };
    if fault.is_none() && report.verdict.is_closed() {
        ctx.memo_put(key, Arc::new(report.clone()));
    }
    Ok(report)
}

fn start_monomial(ctx: &PeriodContext, level: &Level) -> PeriodMonomial {
    let v0 = ctx.shape().v0_or_first();
    let goal = PeriodSymbol::QAuto {
        rep: level.rep.tag,
        degree: level.q as u32,
        place: v0,
    };
    PeriodMonomial::symbol(goal).mul(&factorization_target(ctx, level.rep.tag, level.q as u32).inverse())
}

fn apply_normal_form(d: &mut Derivation<'_>, label: &str) -> Result<(), PeriodError> {
    let (nf, tags) = normalize(d.ctx, &d.current)?;
    if nf != d.current {
        d.record(label, nf, &tags);
    }
    Ok(())
}

fn replay_base_case(
    ctx: &PeriodContext,
    level: &Level,
    fault: Option<Fault>,
) -> Result<DerivationReport, PeriodError> {
    let label = format!(
        "factorization of Q(pi(0)) for {} (rank {})",
        ctx.rep_name(level.rep.tag),
        level.rep.rank()
    );
    let mut d = Derivation::new(ctx, label, start_monomial(ctx, level));
    let base = axiom_holomorphic_base(
        ctx,
        &level.rep,
        fault.filter(|&f| f == Fault::BaseCaseSignature),
    );
    let goal = PeriodSymbol::QAuto {
        rep: level.rep.tag,
        degree: 0,
        place: ctx.shape().v0_or_first(),
    };
    d.substitute(base.name.clone(), &goal, &base.rhs, &base.tags);
    apply_normal_form(&mut d, "normal form (splitting, extreme periods, CM rules)")?;
    Ok(d.finish(&[]))
}

fn replay_general_case(
    ctx: &PeriodContext,
    levels: &[Level],
    k: usize,
    fault: Option<Fault>,
    opts: &ReplayOptions,
) -> Result<DerivationReport, PeriodError> {
    let level = &levels[k];
    let next = &levels[k + 1];
    let v0 = ctx.shape().v0_or_first();
    let n = level.rep.rank();
    let q = level.q;
    let xi = level.xi.expect("general case has an auxiliary character");
    let label = format!(
        "factorization of Q(pi({q})) for {} (rank {n})",
        ctx.rep_name(level.rep.tag)
    );
    let mut d = Derivation::new(ctx, label, start_monomial(ctx, level));
    for w in regularity_warnings(ctx, &[&level.rep, &next.rep]) {
        d.note(w);
    }

    // Inner-product ratio, solved for Q(pi(q)).
    let iinh = axiom_iinh(
        ctx,
        &level.rep,
        next.rep.tag,
        xi,
        q,
        fault.filter(|&f| f == Fault::IinhDropXi),
    )?;
    let goal = PeriodSymbol::QAuto {
        rep: level.rep.tag,
        degree: q as u32,
        place: v0,
    };
    // lhs = goal^{-1} · rest ∼ rhs, so goal = rest · rhs^{-1}
    let mut solved = iinh.lhs.clone();
    let removed = solved.take(&goal);
    debug_assert_eq!(removed, -1);
    let replacement = solved.mul(&iinh.rhs.inverse());
    d.substitute(iinh.name.clone(), &goal, &replacement, &iinh.tags);

    // Critical values.
    let rs = axiom_rs_value(
        ctx,
        &level.rep,
        &next.rep,
        HalfInt::HALF,
        fault.filter(|&f| matches!(f, Fault::RsSplitIndex | Fault::RsTwoPiExponent)),
    )?;
    d.license(
        "division by the Rankin-Selberg value at 1/2 licensed by the non-vanishing of the \
         inner-product pairing in this chain",
    );
    let rs_symbol = rs.lhs.support().next().unwrap().clone();
    d.substitute(rs.name.clone(), &rs_symbol, &rs.rhs, &rs.tags);

    let asai_top = axiom_asai_value(ctx, &level.rep, fault.filter(|&f| f == Fault::AsaiTop));
    let asai_top_symbol = asai_top.lhs.support().next().unwrap().clone();
    d.substitute(
        format!("{} (rank {n})", asai_top.name),
        &asai_top_symbol,
        &asai_top.rhs,
        &asai_top.tags,
    );

    let asai_derived =
        axiom_asai_value(ctx, &next.rep, fault.filter(|&f| f == Fault::AsaiDerived));
    let asai_derived_symbol = asai_derived.lhs.support().next().unwrap().clone();
    d.substitute(
        format!("{} (rank {})", asai_derived.name, n - 1),
        &asai_derived_symbol,
        &asai_derived.rhs,
        &asai_derived.tags,
    );

    apply_normal_form(&mut d, "normal form (extreme-period cancellation)")?;

    // Auxiliary character lemma (chain attached as a sub-derivation).
    let (qxi, chain) = axiom_q_xi(
        ctx,
        xi,
        level.rep.tag,
        next.rep.tag,
        fault.filter(|&f| f == Fault::QXiDropFactor),
    )?;
    let mut chain_steps = Vec::new();
    let mut prev = PeriodMonomial::symbol(PeriodSymbol::QXi { xi });
    for (name, m) in chain {
        chain_steps.push(crate::period::report::DerivationStep {
            axiom: name,
            before: prev.clone(),
            after: m.clone(),
            tags: qxi.tags.clone(),
        });
        prev = m;
    }
    let chain_report = DerivationReport {
        label: format!("q-xi-lemma chain for {}", ctx.char_name(xi)),
        steps: chain_steps,
        residual: prev,
        verdict: crate::period::report::Verdict::Closed,
        tags: qxi.tags.clone(),
        licenses: Vec::new(),
        notes: Vec::new(),
        sub_reports: Vec::new(),
    };
    d.attach_sub_report(chain_report);
    let qxi_symbol = PeriodSymbol::QXi { xi };
    d.substitute(qxi.name.clone(), &qxi_symbol, &qxi.rhs, &qxi.tags);

    // Induction on the derived datum.
    let sub = replay_levels(ctx, levels, k + 1, opts)?;
    if !sub.verdict.is_closed() {
        let support = match &sub.verdict {
            crate::period::report::Verdict::Open(s) => s.clone(),
            _ => Vec::new(),
        };
        return Err(PeriodError::OpenResidual {
            support,
            report: Box::new(sub),
        });
    }
    let sub_tags = sub.tags.clone();
    d.attach_sub_report(sub);
    let next_goal = PeriodSymbol::QAuto {
        rep: next.rep.tag,
        degree: next.q as u32,
        place: v0,
    };
    let next_target = factorization_target(ctx, next.rep.tag, next.q as u32);
    d.substitute(
        format!(
            "induction: factorization at rank {} degree {}",
            n - 1,
            next.q
        ),
        &next_goal,
        &next_target,
        &sub_tags,
    );

    apply_normal_form(&mut d, "normal form (CM-period cancellation)")?;
    Ok(d.finish(&[]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::period::report::Verdict;
    use crate::shape::CMShape;

    fn hc(n: usize, rows: Vec<Vec<i64>>) -> HCParameter {
        HCParameter::from_doubled(n, rows).unwrap()
    }

    /// Evenly spaced parameter with doubled gap `4g` at every place.
    fn spaced(n: usize, d: usize, g: i64) -> HCParameter {
        let parity = (n as i64 - 1).rem_euclid(2);
        let rows = (0..d)
            .map(|_| {
                (0..n as i64)
                    .map(|i| parity + 2 * g * (n as i64 - 1 - 2 * i))
                    .collect()
            })
            .collect();
        hc(n, rows)
    }

    #[test]
    fn base_case_closes() {
        let mut ctx = PeriodContext::new(CMShape::with_default_labels(1));
        let a = spaced(2, 1, 8);
        let report = replay_factorization(&mut ctx, &a, 0, &ReplayOptions::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Closed);
        assert!(report.steps_compose());
        assert!(report.tags_monotone());
    }

    #[test]
    fn rank_three_middle_degree_closes() {
        let mut ctx = PeriodContext::new(CMShape::with_default_labels(1));
        let a = hc(3, vec![vec![14, 0, -14]]);
        let report = replay_factorization(&mut ctx, &a, 1, &ReplayOptions::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Closed);
        // base case of the induction is attached
        assert!(!report.sub_reports.is_empty());
    }

    #[test]
    fn residual_is_constant_classes_only() {
        let mut ctx = PeriodContext::new(CMShape::with_default_labels(2));
        let a = spaced(4, 2, 9);
        let report = replay_factorization(&mut ctx, &a, 2, &ReplayOptions::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Closed);
        for (s, _) in report.residual.iter() {
            assert!(matches!(s, PeriodSymbol::Const(_)));
        }
    }

    #[test]
    fn regularity_gate_enforced_and_overridable() {
        let mut ctx = PeriodContext::new(CMShape::with_default_labels(1));
        let a = spaced(3, 1, 3); // gaps 3 < n+4 = 7
        let err = replay_factorization(&mut ctx, &a, 1, &ReplayOptions::default()).unwrap_err();
        assert!(matches!(err, PeriodError::NotRegular { .. }));
        let opts = ReplayOptions {
            allow_irregular: true,
            ..ReplayOptions::default()
        };
        let report = replay_factorization(&mut ctx, &a, 1, &opts).unwrap();
        assert_eq!(report.verdict, Verdict::Closed);
        assert!(report.notes.iter().any(|n| n.contains("override")));
    }

    #[test]
    fn fault_injection_opens_the_residual() {
        for fault in [
            Fault::RsSplitIndex,
            Fault::RsTwoPiExponent,
            Fault::AsaiTop,
            Fault::AsaiDerived,
            Fault::IinhDropXi,
            Fault::QXiDropFactor,
        ] {
            let mut ctx = PeriodContext::new(CMShape::with_default_labels(1));
            let a = hc(3, vec![vec![14, 0, -14]]);
            let opts = ReplayOptions {
                fault: Some(fault),
                ..ReplayOptions::default()
            };
            let report = replay_factorization(&mut ctx, &a, 1, &opts).unwrap();
            assert!(
                matches!(report.verdict, Verdict::Open(_)),
                "fault {fault:?} must open the residual"
            );
        }
        let mut ctx = PeriodContext::new(CMShape::with_default_labels(1));
        let a = spaced(2, 1, 8);
        let opts = ReplayOptions {
            fault: Some(Fault::BaseCaseSignature),
            ..ReplayOptions::default()
        };
        let report = replay_factorization(&mut ctx, &a, 0, &opts).unwrap();
        assert!(matches!(report.verdict, Verdict::Open(_)));
    }

    #[test]
    fn memo_reuses_sub_derivations() {
        let mut ctx = PeriodContext::new(CMShape::with_default_labels(1));
        let a = hc(4, vec![vec![27, 9, -9, -27]]);
        let first = replay_factorization(&mut ctx, &a, 2, &ReplayOptions::default()).unwrap();
        assert_eq!(first.verdict, Verdict::Closed);
        let second = replay_factorization(&mut ctx, &a, 2, &ReplayOptions::default()).unwrap();
        assert_eq!(second.verdict, Verdict::Closed);
        assert!(second.notes.iter().any(|n| n.contains("memoized")));
    }

    #[test]
    fn arch_toggle_weakens_the_verdict() {
        let mut ctx = PeriodContext::new(CMShape::with_default_labels(1));
        ctx.lvarch = false;
        let a = hc(3, vec![vec![14, 0, -14]]);
        let report = replay_factorization(&mut ctx, &a, 1, &ReplayOptions::default()).unwrap();
        assert_eq!(report.verdict, Verdict::ClosedModuloArch);
    }

    #[test]
    fn q_out_of_range_is_rejected() {
        let mut ctx = PeriodContext::new(CMShape::with_default_labels(1));
        let a = spaced(3, 1, 8);
        assert!(matches!(
            replay_factorization(&mut ctx, &a, 2, &ReplayOptions::default()),
            Err(PeriodError::IndexOutOfRange { .. })
        ));
    }
}
