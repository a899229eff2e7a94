//! The computable-category abstraction.
//!
//! A [`Category`] exposes composition, identities, finite hom-set enumeration,
//! a size-bounded object stream and chosen finite limits. Morphism predicates
//! (mono, epi, split epi, iso, effective retraction) have generic deciders
//! that enumerate hom-sets up to the instance's probe bound; instances with
//! closed-form characterizations override them.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{CatError, Result};
use crate::span::Span;
use crate::verdict::{Verdict, Witness};

/// A chosen pullback of a cospan `f: A → C ← B: g`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PullbackResult<O, M> {
    pub apex: O,
    pub f: M,
    pub g: M,
    /// Projection onto the domain of `f`.
    pub p1: M,
    /// Projection onto the domain of `g`.
    pub p2: M,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductResult<O, M> {
    pub apex: O,
    pub left: O,
    pub right: O,
    pub pi1: M,
    pub pi2: M,
}

pub type Pullback<C> = PullbackResult<<C as Category>::Ob, <C as Category>::Mor>;
pub type Product<C> = ProductResult<<C as Category>::Ob, <C as Category>::Mor>;

/// Outcome of a bounded existential search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    /// The search space was provably complete and contained no witness.
    Exhausted,
    /// The bound ran out before the space was covered.
    Bounded(String),
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn into_verdict(self, on_missing: impl FnOnce() -> Witness) -> Verdict {
        match self {
            Search::Found(_) => Verdict::Holds,
            Search::Exhausted => Verdict::fails(on_missing()),
            Search::Bounded(b) => Verdict::unknown(b),
        }
    }
}

pub trait Category: Send + Sync {
    type Ob: Clone + Eq + Ord + Hash + Debug + Send + Sync;
    type Mor: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    fn name(&self) -> String;

    fn dom(&self, f: &Self::Mor) -> Self::Ob;
    fn cod(&self, f: &Self::Mor) -> Self::Ob;
    fn identity(&self, a: &Self::Ob) -> Self::Mor;

    /// `g∘f` for a composable pair; callers guarantee `cod f = dom g`.
    fn compose_raw(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor;

    /// Every morphism `a → b`, each exactly once, in a deterministic order.
    fn hom(&self, a: &Self::Ob, b: &Self::Ob) -> Vec<Self::Mor>;

    /// Objects whose size is at most `bound`, in a deterministic order.
    fn objects(&self, bound: usize) -> Vec<Self::Ob>;

    /// Whether `objects(bound)` lists every object of the category.
    fn objects_exhaustive(&self, _bound: usize) -> bool {
        false
    }

    /// Whether `objects(bound)` lists every object of size at most `bound`
    /// up to isomorphism.
    fn objects_complete(&self, bound: usize) -> bool {
        self.objects_exhaustive(bound)
    }

    /// Size measure used by object-stream bounds.
    fn size(&self, a: &Self::Ob) -> usize;

    /// Object bound used by the generic hom-enumeration deciders.
    fn probe_bound(&self) -> usize {
        3
    }

    fn terminal(&self) -> Result<Self::Ob>;

    fn bang(&self, a: &Self::Ob) -> Result<Self::Mor> {
        let t = self.terminal()?;
        let mut hom = self.hom(a, &t);
        match hom.len() {
            1 => Ok(hom.pop().unwrap()),
            _ => Err(CatError::LimitUnavailable(format!(
                "{t:?} is not terminal for {a:?}"
            ))),
        }
    }

    fn product(&self, a: &Self::Ob, b: &Self::Ob) -> Result<Product<Self>>;

    /// Chosen pullback of `f` and `g`; they must share a codomain.
    fn pullback(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Pullback<Self>>;

    /// The unique `w` with `p1∘w = u` and `p2∘w = v`.
    fn mediate(&self, pb: &Pullback<Self>, u: &Self::Mor, v: &Self::Mor) -> Result<Self::Mor> {
        let x = self.dom(u);
        self.hom(&x, &pb.apex)
            .into_iter()
            .find(|w| self.compose_raw(&pb.p1, w) == *u && self.compose_raw(&pb.p2, w) == *v)
            .ok_or_else(|| CatError::LimitUnavailable(format!("no mediator for ({u:?}, {v:?})")))
    }

    /// The pairing `⟨f, g⟩` into a chosen product.
    fn pair(&self, pr: &Product<Self>, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor> {
        let x = self.dom(f);
        self.hom(&x, &pr.apex)
            .into_iter()
            .find(|w| self.compose_raw(&pr.pi1, w) == *f && self.compose_raw(&pr.pi2, w) == *g)
            .ok_or_else(|| CatError::LimitUnavailable(format!("no pairing for ({f:?}, {g:?})")))
    }

    fn format_mor(&self, f: &Self::Mor) -> String {
        format!("{f:?}")
    }

    fn parse_mor(&self, s: &str) -> Result<Self::Mor> {
        Err(CatError::parse(s, "this instance has no textual morphism syntax"))
    }

    fn parse_ob(&self, s: &str) -> Result<Self::Ob> {
        Err(CatError::parse(s, "this instance has no textual object syntax"))
    }

    // Predicates. The defaults are the bounded hom-enumeration deciders.

    fn is_mono(&self, f: &Self::Mor) -> Verdict {
        generic_is_mono(self, f)
    }

    fn is_epi(&self, f: &Self::Mor) -> Verdict {
        generic_is_epi(self, f)
    }

    fn find_section(&self, f: &Self::Mor) -> Search<Self::Mor> {
        let id = self.identity(&self.cod(f));
        match self
            .hom(&self.cod(f), &self.dom(f))
            .into_iter()
            .find(|s| self.compose_raw(f, s) == id)
        {
            Some(s) => Search::Found(s),
            None => Search::Exhausted,
        }
    }

    fn find_inverse(&self, f: &Self::Mor) -> Search<Self::Mor> {
        let (a, b) = (self.dom(f), self.cod(f));
        let (ida, idb) = (self.identity(&a), self.identity(&b));
        match self
            .hom(&b, &a)
            .into_iter()
            .find(|g| self.compose_raw(f, g) == idb && self.compose_raw(g, f) == ida)
        {
            Some(g) => Search::Found(g),
            None => Search::Exhausted,
        }
    }

    fn is_split_epi(&self, f: &Self::Mor) -> Verdict {
        self.find_section(f)
            .into_verdict(|| Witness::new("no s with f∘s = id").text("f", self.format_mor(f)))
    }

    fn is_iso(&self, f: &Self::Mor) -> Verdict {
        self.find_inverse(f)
            .into_verdict(|| Witness::new("no two-sided inverse").text("f", self.format_mor(f)))
    }

    /// Witnesses `(r′, f)` such that `(r, r′)` is a kernel pair of `f`.
    fn effective_retraction_witness(&self, r: &Self::Mor) -> Search<(Self::Mor, Self::Mor)> {
        generic_effective_witness(self, r)
    }

    fn is_effective_retraction(&self, r: &Self::Mor) -> Verdict {
        self.effective_retraction_witness(r).into_verdict(|| {
            Witness::new("no f whose kernel pair has r as a projection")
                .text("r", self.format_mor(r))
        })
    }

    // Instance hooks used by the morphism-class and span layers.

    /// Membership in an instance-specific named class, if the name is known.
    fn builtin_member(&self, _name: &str, _f: &Self::Mor) -> Option<bool> {
        None
    }

    /// Instance-specific class names understood by `builtin_member`.
    fn builtin_names(&self) -> Vec<&'static str> {
        Vec::new()
    }

    /// Names of the factorization systems this instance supplies.
    fn systems(&self) -> Vec<&'static str> {
        Vec::new()
    }

    /// `(E-class, M-class)` builtin names of a named system.
    fn system_classes(&self, _system: &str) -> Option<(&'static str, &'static str)> {
        None
    }

    /// The `(e, m)` factorization of `f` in a named system.
    fn factor(&self, _system: &str, _f: &Self::Mor) -> Option<(Self::Mor, Self::Mor)> {
        None
    }

    /// Canonical relabeling of a span's apex, so that vertically isomorphic
    /// spans normalize to equal values where the instance can arrange it.
    fn normalize_span(&self, s: &Span<Self::Mor>) -> Span<Self::Mor> {
        s.clone()
    }

    /// Whether `normalize_span` is a complete invariant for vertical
    /// isomorphism.
    fn normal_forms_are_canonical(&self) -> bool {
        false
    }

    /// All 2-cells `u: s1 → s2`.
    fn two_cells(&self, s1: &Span<Self::Mor>, s2: &Span<Self::Mor>) -> Vec<Self::Mor> {
        let (a1, a2) = (s1.apex(self), s2.apex(self));
        self.hom(&a1, &a2)
            .into_iter()
            .filter(|u| {
                self.compose_raw(&s2.left, u) == s1.left && self.compose_raw(&s2.right, u) == s1.right
            })
            .collect()
    }

    /// Spans `a ← d → b` with apex size at most `apex_bound`, one per
    /// vertical-isomorphism class found, in a deterministic order.
    fn spans_up_to(&self, a: &Self::Ob, b: &Self::Ob, apex_bound: usize) -> Vec<Span<Self::Mor>> {
        generic_spans_up_to(self, a, b, apex_bound)
    }

    /// A complete list of the M-relations `a → b` of a named system, one per
    /// isomorphism class, when the instance can enumerate them.
    fn m_relations(&self, _system: &str, _a: &Self::Ob, _b: &Self::Ob) -> Option<Vec<Span<Self::Mor>>> {
        None
    }

    /// Inclusions of a complete family of subobjects of `p` (up to iso), used
    /// to make witness searches over common sub-spans exhaustive.
    fn sub_apexes(&self, _p: &Self::Ob) -> Option<Vec<Self::Mor>> {
        None
    }

    /// Whether, for the named builtin class, witnesses `z: X → target` with
    /// `z` and `r∘z` in the class can always be found with `size(X) ≤
    /// size(target)`.
    fn witness_domains_bounded_by_target(&self, _class: &str) -> bool {
        false
    }
}

/// `g∘f` with a domain check.
pub fn compose<C: Category + ?Sized>(c: &C, g: &C::Mor, f: &C::Mor) -> Result<C::Mor> {
    let (cf, dg) = (c.cod(f), c.dom(g));
    if cf != dg {
        return Err(CatError::DomainMismatch {
            g: c.format_mor(g),
            f: c.format_mor(f),
            cod_f: format!("{cf:?}"),
            dom_g: format!("{dg:?}"),
        });
    }
    Ok(c.compose_raw(g, f))
}

/// Checked pullback: rejects cospans whose legs do not share a codomain.
pub fn pullback<C: Category + ?Sized>(c: &C, f: &C::Mor, g: &C::Mor) -> Result<Pullback<C>> {
    let (cf, cg) = (c.cod(f), c.cod(g));
    if cf != cg {
        return Err(CatError::CodomainMismatch {
            f: c.format_mor(f),
            g: c.format_mor(g),
            cod_f: format!("{cf:?}"),
            cod_g: format!("{cg:?}"),
        });
    }
    c.pullback(f, g)
}

pub fn kernel_pair<C: Category + ?Sized>(c: &C, f: &C::Mor) -> Result<Pullback<C>> {
    c.pullback(f, f)
}

fn generic_is_mono<C: Category + ?Sized>(c: &C, f: &C::Mor) -> Verdict {
    let bound = c.probe_bound();
    let a = c.dom(f);
    for x in c.objects(bound) {
        let mut seen: HashMap<C::Mor, C::Mor> = HashMap::new();
        for u in c.hom(&x, &a) {
            let fu = c.compose_raw(f, &u);
            if let Some(v) = seen.get(&fu) {
                return Verdict::fails(
                    Witness::new("f∘u = f∘v with u ≠ v")
                        .text("f", c.format_mor(f))
                        .text("u", c.format_mor(v))
                        .text("v", c.format_mor(&u)),
                );
            }
            seen.insert(fu, u);
        }
    }
    if c.objects_exhaustive(bound) {
        Verdict::Holds
    } else {
        Verdict::unknown(format!("mono probe over objects of size ≤ {bound}"))
    }
}

fn generic_is_epi<C: Category + ?Sized>(c: &C, f: &C::Mor) -> Verdict {
    let bound = c.probe_bound();
    let b = c.cod(f);
    for y in c.objects(bound) {
        let mut seen: HashMap<C::Mor, C::Mor> = HashMap::new();
        for u in c.hom(&b, &y) {
            let uf = c.compose_raw(&u, f);
            if let Some(v) = seen.get(&uf) {
                return Verdict::fails(
                    Witness::new("u∘f = v∘f with u ≠ v")
                        .text("f", c.format_mor(f))
                        .text("u", c.format_mor(v))
                        .text("v", c.format_mor(&u)),
                );
            }
            seen.insert(uf, u);
        }
    }
    if c.objects_exhaustive(bound) {
        Verdict::Holds
    } else {
        Verdict::unknown(format!("epi probe over objects of size ≤ {bound}"))
    }
}

/// Searches for `f` out of `dom r` and an isomorphism of cones between
/// `(r, r′)` and the kernel pair of `f`.
fn generic_effective_witness<C: Category + ?Sized>(c: &C, r: &C::Mor) -> Search<(C::Mor, C::Mor)> {
    match c.find_section(r) {
        Search::Found(_) => {}
        Search::Exhausted => return Search::Exhausted,
        Search::Bounded(b) => return Search::Bounded(b),
    }
    let bound = c.probe_bound();
    let a = c.cod(r);
    let k = c.dom(r);
    let mut limits_missing = false;
    for y in c.objects(bound) {
        for f in c.hom(&a, &y) {
            let kp = match kernel_pair(c, &f) {
                Ok(kp) => kp,
                Err(_) => {
                    limits_missing = true;
                    continue;
                }
            };
            for u in c.hom(&k, &kp.apex) {
                if c.compose_raw(&kp.p1, &u) == *r && c.find_inverse(&u).found().is_some() {
                    let r2 = c.compose_raw(&kp.p2, &u);
                    return Search::Found((r2, f));
                }
            }
        }
    }
    if c.objects_exhaustive(bound) && !limits_missing {
        Search::Exhausted
    } else {
        Search::Bounded(format!("kernel-pair search over codomains of size ≤ {bound}"))
    }
}

fn generic_spans_up_to<C: Category + ?Sized>(
    c: &C,
    a: &C::Ob,
    b: &C::Ob,
    apex_bound: usize,
) -> Vec<Span<C::Mor>> {
    let mut out: Vec<Span<C::Mor>> = Vec::new();
    for d in c.objects(apex_bound) {
        let lefts = c.hom(&d, a);
        let rights = c.hom(&d, b);
        for l in &lefts {
            for r in &rights {
                let s = c.normalize_span(&Span::new(l.clone(), r.clone()));
                let dup = out.iter().any(|t| {
                    c.size(&t.apex(c)) == c.size(&d)
                        && vertical_iso(c, t, &s).is_some()
                });
                if !dup {
                    out.push(s);
                }
            }
        }
    }
    out
}

/// A vertical isomorphism `s1 → s2`, if one exists.
pub fn vertical_iso<C: Category + ?Sized>(
    c: &C,
    s1: &Span<C::Mor>,
    s2: &Span<C::Mor>,
) -> Option<C::Mor> {
    if c.normal_forms_are_canonical() {
        let (n1, n2) = (c.normalize_span(s1), c.normalize_span(s2));
        if n1 != n2 {
            return None;
        }
    }
    c.two_cells(s1, s2)
        .into_iter()
        .find(|u| c.find_inverse(u).found().is_some())
}

/// Checks the universal property of a chosen pullback against every cone
/// from the given test objects.
pub fn check_pullback_universal<C: Category + ?Sized>(
    c: &C,
    pb: &Pullback<C>,
    test_objects: &[C::Ob],
) -> Verdict {
    let (a, b) = (c.dom(&pb.f), c.dom(&pb.g));
    if c.compose_raw(&pb.f, &pb.p1) != c.compose_raw(&pb.g, &pb.p2) {
        return Verdict::fails(Witness::new("f∘p1 ≠ g∘p2").item("pullback", pb));
    }
    for x in test_objects {
        let fillers = c.hom(x, &pb.apex);
        for u in c.hom(x, &a) {
            for v in c.hom(x, &b) {
                if c.compose_raw(&pb.f, &u) != c.compose_raw(&pb.g, &v) {
                    continue;
                }
                let count = fillers
                    .iter()
                    .filter(|w| c.compose_raw(&pb.p1, w) == u && c.compose_raw(&pb.p2, w) == v)
                    .count();
                if count != 1 {
                    return Verdict::fails(
                        Witness::new("cone without a unique filler")
                            .text("u", c.format_mor(&u))
                            .text("v", c.format_mor(&v))
                            .item("fillers", count),
                    );
                }
                match c.mediate(pb, &u, &v) {
                    Ok(w) if c.compose_raw(&pb.p1, &w) == u && c.compose_raw(&pb.p2, &w) == v => {}
                    _ => {
                        return Verdict::fails(
                            Witness::new("mediate returned a non-filler")
                                .text("u", c.format_mor(&u))
                                .text("v", c.format_mor(&v)),
                        )
                    }
                }
            }
        }
    }
    Verdict::Holds
}

/// Exhaustive associativity and unit check over the given objects.
pub fn check_category_laws<C: Category + ?Sized>(c: &C, objects: &[C::Ob]) -> Verdict {
    for a in objects {
        for b in objects {
            let ida = c.identity(a);
            let idb = c.identity(b);
            for f in c.hom(a, b) {
                if c.compose_raw(&f, &ida) != f || c.compose_raw(&idb, &f) != f {
                    return Verdict::fails(Witness::new("unit law").text("f", c.format_mor(&f)));
                }
            }
        }
    }
    for a in objects {
        for b in objects {
            let fs = c.hom(a, b);
            if fs.is_empty() {
                continue;
            }
            for cc in objects {
                let gs = c.hom(b, cc);
                if gs.is_empty() {
                    continue;
                }
                for d in objects {
                    let hs = c.hom(cc, d);
                    for f in &fs {
                        for g in &gs {
                            let gf = c.compose_raw(g, f);
                            for h in &hs {
                                let lhs = c.compose_raw(h, &gf);
                                let rhs = c.compose_raw(&c.compose_raw(h, g), f);
                                if lhs != rhs {
                                    return Verdict::fails(
                                        Witness::new("(h∘g)∘f ≠ h∘(g∘f)")
                                            .text("f", c.format_mor(f))
                                            .text("g", c.format_mor(g))
                                            .text("h", c.format_mor(h)),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Verdict::Holds
}
