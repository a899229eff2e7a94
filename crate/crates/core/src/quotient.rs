//! Quotients of the span category by an equivalence on parallel spans, with
//! the induced composition, involution and meet on classes.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::category::{vertical_iso, Category};
use crate::classes::{FactSystem, MorClass};
use crate::error::{CatError, Result};
use crate::span::{
    approx, class_canonical, format_span, graph, identity_span, sim_e_fast, sim_e_search, span_compose, span_meet,
    Span,
};
use crate::verdict::{Verdict, Witness};

/// Which equivalence a view quotients by.
#[derive(Debug, Clone)]
pub enum Equivalence<M> {
    /// `∼_E` for the left class of a factorization system, decided by
    /// comparing M-parts.
    Factorization(FactSystem<M>),
    /// `∼_E` for a stable system, decided by common-sub-span search with
    /// sub-apexes of objects of size ≤ `bound` when no complete family exists.
    Stable { class: MorClass<M>, bound: usize },
    /// 2-cells in both directions.
    Approx,
    /// Vertical isomorphism.
    Iso,
}

/// Hom-classes found for a pair of objects.
#[derive(Debug, Clone)]
pub struct HomClasses<M> {
    pub classes: Vec<Span<M>>,
    /// Whether the list is provably every class.
    pub complete: bool,
}

/// A quotient `Span(C)/∼` viewed through canonical representatives where the
/// equivalence provides them.
pub struct QuotientView<'a, C: Category + ?Sized> {
    pub c: &'a C,
    pub equiv: Equivalence<C::Mor>,
    pub tag: String,
    /// Largest apex used when hom-classes must be enumerated as spans.
    pub apex_bound: usize,
    homs: Mutex<HashMap<(C::Ob, C::Ob), HomClasses<C::Mor>>>,
}

impl<'a, C: Category + ?Sized> QuotientView<'a, C> {
    pub fn new(c: &'a C, equiv: Equivalence<C::Mor>, tag: &str, apex_bound: usize) -> Self {
        QuotientView { c, equiv, tag: tag.to_string(), apex_bound, homs: Mutex::new(HashMap::new()) }
    }

    /// Whether equal classes always have equal canonical representatives.
    pub fn has_canonical_forms(&self) -> bool {
        match &self.equiv {
            Equivalence::Factorization(_) => self.c.normal_forms_are_canonical(),
            Equivalence::Iso => self.c.normal_forms_are_canonical(),
            _ => false,
        }
    }

    /// Decides whether two parallel spans are equivalent.
    pub fn equiv(&self, s1: &Span<C::Mor>, s2: &Span<C::Mor>) -> Result<Verdict> {
        match &self.equiv {
            Equivalence::Factorization(sys) => sim_e_fast(self.c, sys, s1, s2),
            Equivalence::Stable { class, bound } => Ok(sim_e_search(self.c, class, s1, s2, *bound)?.0),
            Equivalence::Approx => approx(self.c, s1, s2),
            Equivalence::Iso => {
                let c = self.c;
                Ok(Verdict::from_bool(vertical_iso(c, s1, s2).is_some(), || {
                    Witness::new("no vertical isomorphism")
                        .text("s1", format_span(c, s1))
                        .text("s2", format_span(c, s2))
                }))
            }
        }
    }

    /// The representative used for `s`: the canonical form where one
    /// exists, otherwise the first enumerated class representative that `s`
    /// is provably equivalent to, otherwise the normalized `s` itself.
    pub fn canonical(&self, s: &Span<C::Mor>) -> Result<Span<C::Mor>> {
        match &self.equiv {
            Equivalence::Factorization(sys) => class_canonical(self.c, sys, s),
            Equivalence::Iso if self.c.normal_forms_are_canonical() => Ok(self.c.normalize_span(s)),
            _ => {
                let n = self.c.normalize_span(s);
                let homs = self.hom_classes(&n.source(self.c), &n.target(self.c))?;
                for rep in &homs.classes {
                    if self.equiv(&n, rep)?.is_holds() {
                        return Ok(rep.clone());
                    }
                }
                Ok(n)
            }
        }
    }

    /// Equality of classes.
    pub fn eq(&self, s1: &Span<C::Mor>, s2: &Span<C::Mor>) -> Result<Verdict> {
        if self.has_canonical_forms() {
            let (n1, n2) = (self.canonical(s1)?, self.canonical(s2)?);
            let c = self.c;
            return Ok(Verdict::from_bool(n1 == n2, || {
                Witness::new("classes differ")
                    .text("s1", format_span(c, s1))
                    .text("s2", format_span(c, s2))
            }));
        }
        self.equiv(s1, s2)
    }

    /// `s∘r`: first `r`, then `s`.
    pub fn compose(&self, s: &Span<C::Mor>, r: &Span<C::Mor>) -> Result<Span<C::Mor>> {
        self.canonical(&span_compose(self.c, r, s)?)
    }

    pub fn meet(&self, r: &Span<C::Mor>, s: &Span<C::Mor>) -> Result<Span<C::Mor>> {
        self.canonical(&span_meet(self.c, r, s)?)
    }

    pub fn inv(&self, r: &Span<C::Mor>) -> Result<Span<C::Mor>> {
        self.canonical(&r.involution())
    }

    pub fn identity(&self, a: &C::Ob) -> Result<Span<C::Mor>> {
        self.canonical(&identity_span(self.c, a))
    }

    /// The class of the graph `(1, f)`.
    pub fn graph(&self, f: &C::Mor) -> Result<Span<C::Mor>> {
        self.canonical(&graph(self.c, f))
    }

    /// `r ≤ s` iff `r ∧ s = r`.
    pub fn le(&self, r: &Span<C::Mor>, s: &Span<C::Mor>) -> Result<Verdict> {
        let m = self.meet(r, s)?;
        let v = self.eq(&m, r)?;
        let c = self.c;
        Ok(match v {
            Verdict::Fails { .. } => Verdict::fails(
                Witness::new("r ∧ s ≠ r")
                    .text("r", format_span(c, r))
                    .text("s", format_span(c, s)),
            ),
            other => other,
        })
    }

    /// The hom-classes `a → b`: the instance's M-relations for factorization
    /// views where available, otherwise spans with apex up to `apex_bound`
    /// partitioned by the equivalence.
    pub fn hom_classes(&self, a: &C::Ob, b: &C::Ob) -> Result<HomClasses<C::Mor>> {
        let key = (a.clone(), b.clone());
        if let Some(hit) = self.homs.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let found = self.enumerate_classes(a, b)?;
        self.homs.lock().unwrap().insert(key, found.clone());
        Ok(found)
    }

    fn enumerate_classes(&self, a: &C::Ob, b: &C::Ob) -> Result<HomClasses<C::Mor>> {
        let c = self.c;
        if let Equivalence::Factorization(sys) = &self.equiv {
            if let Some(rels) = c.m_relations(&sys.name, a, b) {
                let mut classes: Vec<Span<C::Mor>> = rels.iter().map(|r| c.normalize_span(r)).collect();
                classes.sort();
                classes.dedup();
                return Ok(HomClasses { classes, complete: true });
            }
            let mut classes: Vec<Span<C::Mor>> = Vec::new();
            for s in c.spans_up_to(a, b, self.apex_bound) {
                let k = class_canonical(c, sys, &s)?;
                if !classes.contains(&k) {
                    classes.push(k);
                }
            }
            return Ok(HomClasses { classes, complete: false });
        }
        let mut classes: Vec<Span<C::Mor>> = Vec::new();
        for s in c.spans_up_to(a, b, self.apex_bound) {
            let mut known = false;
            for rep in &classes {
                if self.equiv(&s, rep)?.is_holds() {
                    known = true;
                    break;
                }
            }
            if !known {
                classes.push(s);
            }
        }
        Ok(HomClasses { classes, complete: false })
    }

    /// Hom-classes that must be complete for the caller's claim.
    pub fn complete_hom_classes(&self, a: &C::Ob, b: &C::Ob) -> Result<Vec<Span<C::Mor>>> {
        let h = self.hom_classes(a, b)?;
        if !h.complete {
            return Err(CatError::EnumerationUnavailable(format!(
                "hom-classes {a:?} → {b:?} for {} have no complete enumeration",
                self.tag
            )));
        }
        Ok(h.classes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::finset::{parse_finfn, FinFn, FinSet};

    fn rel(c: &FinSet) -> QuotientView<'_, FinSet> {
        QuotientView::new(c, Equivalence::Factorization(FactSystem::named(c, "surj-inj").unwrap()), "simE", 2)
    }

    #[test]
    fn hom_class_counts() {
        let c = FinSet::new(3);
        let v = rel(&c);
        assert_eq!(v.complete_hom_classes(&1, &1).unwrap().len(), 2);
        assert_eq!(v.complete_hom_classes(&2, &2).unwrap().len(), 16);
        assert_eq!(v.complete_hom_classes(&0, &3).unwrap().len(), 1);
    }

    #[test]
    fn order_is_inclusion() {
        let c = FinSet::new(3);
        let v = rel(&c);
        let id = v.identity(&2).unwrap();
        let full = v.canonical(&crate::span::product_span(&c, &2, &2).unwrap()).unwrap();
        assert!(v.le(&id, &full).unwrap().is_holds());
        assert!(v.le(&full, &id).unwrap().is_fails());
    }

    #[test]
    fn doubled_apex_is_approx_equivalent() {
        let c = FinSet::new(3);
        let v = QuotientView::new(&c, Equivalence::Approx, "approx", 2);
        let s = Span::new(parse_finfn("1>2:0").unwrap(), parse_finfn("1>2:1").unwrap());
        let d = Span::new(parse_finfn("2>2:0,0").unwrap(), parse_finfn("2>2:1,1").unwrap());
        assert!(v.equiv(&s, &d).unwrap().is_holds());
        let other = Span::new(parse_finfn("1>2:1").unwrap(), parse_finfn("1>2:1").unwrap());
        assert!(v.equiv(&s, &other).unwrap().is_fails());
    }

    #[test]
    fn stable_view_over_injections_collapses_homs() {
        let c = FinSet::new(3);
        let inj = MorClass::builtin(&c, "injective").unwrap();
        let v = QuotientView::new(&c, Equivalence::Stable { class: inj, bound: 3 }, "simEbullet", 2);
        assert_eq!(v.hom_classes(&2, &2).unwrap().classes.len(), 1);
        let s = Span::new(FinFn::constant(2, 1, 0), FinFn::constant(2, 1, 0));
        assert_eq!(v.canonical(&s).unwrap().left.dom(), 0);
    }
}
