//! Exponent-vector monomials over period symbols.
//!
//! A monomial is a finite map from symbols to nonzero integer exponents;
//! multiplication adds exponents. Every equivalence statement handled by the
//! engine is of the form "this monomial reduces to a unit modulo allowed
//! symbol classes".

use std::collections::BTreeMap;

use crate::period::context::PeriodContext;
use crate::period::symbol::PeriodSymbol;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct PeriodMonomial {
    exps: BTreeMap<PeriodSymbol, i64>,
}

impl PeriodMonomial {
    pub fn unit() -> Self {
        PeriodMonomial::default()
    }

    pub fn symbol(s: PeriodSymbol) -> Self {
        let mut m = PeriodMonomial::unit();
        m.insert(s, 1);
        m
    }

    pub fn symbol_pow(s: PeriodSymbol, e: i64) -> Self {
        let mut m = PeriodMonomial::unit();
        m.insert(s, e);
        m
    }

    pub fn is_unit(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn insert(&mut self, s: PeriodSymbol, e: i64) {
        if e == 0 {
            return;
        }
        match self.exps.entry(s) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(e);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += e;
                if *slot.get() == 0 {
                    slot.remove();
                }
            }
        }
    }

    pub fn exponent_of(&self, s: &PeriodSymbol) -> i64 {
        self.exps.get(s).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PeriodSymbol, i64)> + '_ {
        self.exps.iter().map(|(k, &v)| (k, v))
    }

    pub fn support(&self) -> impl Iterator<Item = &PeriodSymbol> + '_ {
        self.exps.keys()
    }

    pub fn mul(&self, other: &PeriodMonomial) -> PeriodMonomial {
        let mut out = self.clone();
        for (s, e) in other.iter() {
            out.insert(s.clone(), e);
        }
        out
    }

    pub fn inverse(&self) -> PeriodMonomial {
        PeriodMonomial {
            exps: self.exps.iter().map(|(k, &v)| (k.clone(), -v)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> PeriodMonomial {
        if k == 0 {
            return PeriodMonomial::unit();
        }
        PeriodMonomial {
            exps: self.exps.iter().map(|(key, &v)| (key.clone(), v * k)).collect(),
        }
    }

    /// Removes the symbol entirely, returning its previous exponent.
    pub fn take(&mut self, s: &PeriodSymbol) -> i64 {
        self.exps.remove(s).unwrap_or(0)
    }

    /// Replaces every occurrence of `s` (exponent `e`) by `replacement^e`.
    /// Returns `false` when the symbol does not occur.
    pub fn substitute(&mut self, s: &PeriodSymbol, replacement: &PeriodMonomial) -> bool {
        let e = self.take(s);
        if e == 0 {
            return false;
        }
        for (sym, k) in replacement.iter() {
            self.insert(sym.clone(), k * e);
        }
        true
    }

    pub fn describe(&self, ctx: &PeriodContext) -> String {
        if self.is_unit() {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(s, e)| {
                let base = s.describe(ctx);
                if e == 1 {
                    base
                } else {
                    format!("{base}^{e}")
                }
            })
            .collect();
        parts.join(" * ")
    }

    /// `(symbol description, exponent)` pairs in canonical order.
    pub fn rendered(&self, ctx: &PeriodContext) -> Vec<(String, i64)> {
        self.iter().map(|(s, e)| (s.describe(ctx), e)).collect()
    }
}

impl FromIterator<(PeriodSymbol, i64)> for PeriodMonomial {
    fn from_iter<T: IntoIterator<Item = (PeriodSymbol, i64)>>(iter: T) -> Self {
        let mut m = PeriodMonomial::unit();
        for (s, e) in iter {
            m.insert(s, e);
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::period::symbol::ConstLabel;

    #[test]
    fn group_identities() {
        let a = PeriodMonomial::symbol_pow(PeriodSymbol::TwoPiI, 3)
            .mul(&PeriodMonomial::symbol(PeriodSymbol::Const(ConstLabel::DeltaH)));
        assert!(a.mul(&a.inverse()).is_unit());
        assert_eq!(a.pow(2).exponent_of(&PeriodSymbol::TwoPiI), 6);
    }

    #[test]
    fn substitution_replaces_all_occurrences() {
        let target = PeriodSymbol::Const(ConstLabel::Beta2);
        let mut m = PeriodMonomial::symbol_pow(target.clone(), -2);
        let replacement = PeriodMonomial::symbol_pow(PeriodSymbol::TwoPiI, 5);
        assert!(m.substitute(&target, &replacement));
        assert_eq!(m.exponent_of(&PeriodSymbol::TwoPiI), -10);
        assert_eq!(m.exponent_of(&target), 0);
    }
}
