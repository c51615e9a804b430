use alloc::vec::Vec;
use core::cmp::Ordering;

use super::Monomial;

/// Term orders. Every variant is a genuine well-order on monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    DegRevLex,
    Lex,
    /// Nonnegative weight first, ties broken by degrevlex.
    Weighted(Vec<u32>),
    /// Block order: variables flagged `true` are eliminated, i.e. any monomial
    /// involving them beats every monomial that does not. Degrevlex inside blocks.
    Elimination(Vec<bool>),
}

fn degrevlex_on(a: &[u32], b: &[u32], mask: impl Fn(usize) -> bool) -> Ordering {
    let da: u32 = a.iter().enumerate().filter(|(i, _)| mask(*i)).map(|(_, e)| e).sum();
    let db: u32 = b.iter().enumerate().filter(|(i, _)| mask(*i)).map(|(_, e)| e).sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if !mask(i) {
            continue;
        }
        if a[i] != b[i] {
            // smaller exponent in the last variable wins
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_exps(a.exps(), b.exps())
    }

    pub(crate) fn cmp_exps(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => degrevlex_on(a, b, |_| true),
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Weighted(w) => {
                let wa: u64 = a.iter().zip(w).map(|(e, w)| u64::from(*e) * u64::from(*w)).sum();
                let wb: u64 = b.iter().zip(w).map(|(e, w)| u64::from(*e) * u64::from(*w)).sum();
                wa.cmp(&wb).then_with(|| degrevlex_on(a, b, |_| true))
            }
            MonomialOrder::Elimination(mask) => degrevlex_on(a, b, |i| mask[i])
                .then_with(|| degrevlex_on(a, b, |i| !mask[i])),
        }
    }

    /// Same order on a ring with `extra` additional variables appended.
    pub fn extended(&self, extra: usize) -> MonomialOrder {
        match self {
            MonomialOrder::Weighted(w) => {
                let mut w = w.clone();
                w.resize(w.len() + extra, 1);
                MonomialOrder::Weighted(w)
            }
            MonomialOrder::Elimination(m) => {
                let mut m = m.clone();
                m.resize(m.len() + extra, false);
                MonomialOrder::Elimination(m)
            }
            o => o.clone(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::DegRevLex => "degrevlex",
            MonomialOrder::Lex => "lex",
            MonomialOrder::Weighted(_) => "weighted",
            MonomialOrder::Elimination(_) => "elimination",
        }
    }
}
