//! Morphism classes: named builtins, explicit lists and bounded closures;
//! stable-system and factorization-system validation; `E∘`, conjugates, `M*`
//! and `E•`.

use std::collections::{BTreeSet, HashMap};

use serde_json::Value;

use crate::category::{pullback, Category};
use crate::error::{CatError, Result};
use crate::verdict::{Verdict, Witness};

/// Class names every instance understands through the generic deciders.
pub const GENERIC_CLASSES: [&str; 6] = ["isos", "monos", "epis", "splitEpis", "all", "identities"];

/// Closure rules accepted by [`closure`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Composition,
    Pullback,
    SectionsOfM,
}

impl Rule {
    pub fn parse(s: &str) -> Result<Rule> {
        match s {
            "composition" => Ok(Rule::Composition),
            "pullback" => Ok(Rule::Pullback),
            "sections-of-M" => Ok(Rule::SectionsOfM),
            other => Err(CatError::parse(other, "unknown closure rule")),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Rule::Composition => "composition",
            Rule::Pullback => "pullback",
            Rule::SectionsOfM => "sections-of-M",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Builtin(String),
    Explicit,
    Closure {
        generators: Vec<String>,
        rules: Vec<Rule>,
        bound: usize,
    },
}

#[derive(Debug, Clone)]
enum Kind<M> {
    Builtin(String),
    Explicit(BTreeSet<M>),
    Carrier {
        members: BTreeSet<M>,
        bound: usize,
        recognized: Option<String>,
    },
}

/// A class of morphisms with deterministic three-valued membership.
#[derive(Debug, Clone)]
pub struct MorClass<M> {
    pub name: String,
    pub provenance: Provenance,
    kind: Kind<M>,
}

impl<M: Clone + Ord + std::fmt::Debug> MorClass<M> {
    /// A named class; the name must be generic or known to the instance.
    pub fn builtin<C: Category<Mor = M> + ?Sized>(c: &C, name: &str) -> Result<Self> {
        if !GENERIC_CLASSES.contains(&name) && !c.builtin_names().contains(&name) {
            return Err(CatError::Config(format!(
                "unknown class `{name}` for {}; known: {}",
                c.name(),
                GENERIC_CLASSES
                    .iter()
                    .chain(c.builtin_names().iter())
                    .copied()
                    .collect::<Vec<_>>()
                    .join(", ")
            )));
        }
        Ok(Self::named_unchecked(name))
    }

    fn named_unchecked(name: &str) -> Self {
        MorClass {
            name: name.to_string(),
            provenance: Provenance::Builtin(name.to_string()),
            kind: Kind::Builtin(name.to_string()),
        }
    }

    pub fn explicit(name: &str, members: impl IntoIterator<Item = M>) -> Self {
        MorClass {
            name: name.to_string(),
            provenance: Provenance::Explicit,
            kind: Kind::Explicit(members.into_iter().collect()),
        }
    }

    /// The builtin name that decides membership, directly or beyond a carrier.
    pub fn effective_builtin(&self) -> Option<&str> {
        match &self.kind {
            Kind::Builtin(n) => Some(n),
            Kind::Carrier { recognized: Some(n), .. } => Some(n),
            _ => None,
        }
    }

    /// For carrier-bounded closures: the builtin class they coincide with on
    /// the carrier, if any.
    pub fn recognized(&self) -> Option<&str> {
        match &self.kind {
            Kind::Carrier { recognized, .. } => recognized.as_deref(),
            _ => None,
        }
    }

    /// Members stored explicitly (explicit lists and closure carriers).
    pub fn stored_members(&self) -> Option<&BTreeSet<M>> {
        match &self.kind {
            Kind::Explicit(s) => Some(s),
            Kind::Carrier { members, .. } => Some(members),
            Kind::Builtin(_) => None,
        }
    }

    pub fn carrier_bound(&self) -> Option<usize> {
        match &self.kind {
            Kind::Carrier { bound, .. } => Some(*bound),
            _ => None,
        }
    }

    pub fn contains<C: Category<Mor = M> + ?Sized>(&self, c: &C, f: &M) -> Verdict {
        let not_member = || {
            Witness::new(format!("f ∉ {}", self.name)).text("f", c.format_mor(f))
        };
        match &self.kind {
            Kind::Builtin(name) => builtin_contains(c, name, f, &self.name),
            Kind::Explicit(set) => Verdict::from_bool(set.contains(f), not_member),
            Kind::Carrier { members, bound, recognized } => {
                if c.size(&c.dom(f)) <= *bound && c.size(&c.cod(f)) <= *bound {
                    Verdict::from_bool(members.contains(f), not_member)
                } else if let Some(name) = recognized {
                    builtin_contains(c, name, f, &self.name)
                } else {
                    Verdict::unknown(format!(
                        "{} lies outside the carrier of {} (objects of size ≤ {bound})",
                        c.format_mor(f),
                        self.name
                    ))
                }
            }
        }
    }

    /// Whether a witness search for this class may restrict to subobjects
    /// of the apex it factors through (see `Category::sub_apexes`).
    pub fn restriction_closed<C: Category<Mor = M> + ?Sized>(&self, c: &C) -> bool {
        self.effective_builtin()
            .is_some_and(|n| c.witness_domains_bounded_by_target(n))
    }

    /// Membership table on the given morphisms, `true` only for `Holds`.
    pub fn table<C: Category<Mor = M> + ?Sized>(&self, c: &C, mors: &[M]) -> Vec<(M, Verdict)> {
        mors.iter().map(|f| (f.clone(), self.contains(c, f))).collect()
    }
}

fn builtin_contains<C: Category + ?Sized>(c: &C, name: &str, f: &C::Mor, label: &str) -> Verdict {
    let decided = match name {
        "isos" => return c.is_iso(f),
        "monos" => return c.is_mono(f),
        "epis" => return c.is_epi(f),
        "splitEpis" => return c.is_split_epi(f),
        "all" => Some(true),
        "identities" => Some(c.dom(f) == c.cod(f) && *f == c.identity(&c.dom(f))),
        other => c.builtin_member(other, f),
    };
    match decided {
        Some(b) => Verdict::from_bool(b, || {
            Witness::new(format!("f ∉ {label}")).text("f", c.format_mor(f))
        }),
        None => Verdict::unknown(format!("no decider for class `{name}`")),
    }
}

/// Every morphism between objects of size at most `bound`.
pub fn carrier<C: Category + ?Sized>(c: &C, bound: usize) -> Vec<C::Mor> {
    let obs = c.objects(bound);
    let mut out = Vec::new();
    for a in &obs {
        for b in &obs {
            out.extend(c.hom(a, b));
        }
    }
    out
}

/// An `(E, M)` pair backed by an instance factorization procedure.
#[derive(Debug, Clone)]
pub struct FactSystem<M> {
    pub name: String,
    pub e: MorClass<M>,
    pub m: MorClass<M>,
}

impl<M: Clone + Ord + std::fmt::Debug> FactSystem<M> {
    pub fn named<C: Category<Mor = M> + ?Sized>(c: &C, name: &str) -> Result<Self> {
        let (e, m) = c.system_classes(name).ok_or_else(|| {
            CatError::Config(format!(
                "unknown system `{name}` for {}; known: {}",
                c.name(),
                c.systems().join(", ")
            ))
        })?;
        Ok(FactSystem {
            name: name.to_string(),
            e: MorClass::builtin(c, e)?,
            m: MorClass::builtin(c, m)?,
        })
    }

    pub fn factor<C: Category<Mor = M> + ?Sized>(&self, c: &C, f: &M) -> Result<(M, M)> {
        c.factor(&self.name, f).ok_or_else(|| {
            CatError::Config(format!("{} has no factorization for system {}", c.name(), self.name))
        })
    }
}

/// Checks isos ⊆ E, closure under composition and pullback stability, over
/// all morphisms between objects of size at most `bound`. Fails carries the
/// offending pair or square.
pub fn validate_stable_system<C: Category + ?Sized>(c: &C, e: &MorClass<C::Mor>, bound: usize) -> Verdict {
    let mors = carrier(c, bound);
    let members: Vec<&C::Mor> = mors.iter().filter(|f| e.contains(c, f).is_holds()).collect();
    let mut acc = Verdict::Holds;
    for f in &mors {
        if c.is_iso(f).is_holds() {
            let v = e.contains(c, f);
            if v.is_fails() {
                return Verdict::fails(
                    Witness::new("isomorphism not in E").text("f", c.format_mor(f)),
                );
            }
            acc = acc.and(v);
        }
    }
    let mut by_dom: HashMap<C::Ob, Vec<&C::Mor>> = HashMap::new();
    for g in &members {
        by_dom.entry(c.dom(g)).or_default().push(g);
    }
    for f in &members {
        for g in by_dom.get(&c.cod(f)).into_iter().flatten() {
            let gf = c.compose_raw(g, f);
            let v = e.contains(c, &gf);
            if v.is_fails() {
                return Verdict::fails(
                    Witness::new("g, f ∈ E but g∘f ∉ E")
                        .text("f", c.format_mor(f))
                        .text("g", c.format_mor(g)),
                );
            }
            acc = acc.and(v);
        }
    }
    let mut by_cod: HashMap<C::Ob, Vec<&C::Mor>> = HashMap::new();
    for g in &mors {
        by_cod.entry(c.cod(g)).or_default().push(g);
    }
    for f in &members {
        for g in by_cod.get(&c.cod(f)).into_iter().flatten() {
            let pb = match pullback(c, f, g) {
                Ok(pb) => pb,
                Err(err) => {
                    acc = acc.and(Verdict::unknown(err.to_string()));
                    continue;
                }
            };
            let v = e.contains(c, &pb.p2);
            if v.is_fails() {
                return Verdict::fails(
                    Witness::new("pullback of an E-morphism is not in E")
                        .text("e", c.format_mor(f))
                        .text("along", c.format_mor(g))
                        .text("pulled-back", c.format_mor(&pb.p2)),
                );
            }
            acc = acc.and(v);
        }
    }
    acc
}

/// Evidence gathered by [`validate_fact_system`].
#[derive(Debug, Clone)]
pub struct FactValidation {
    pub factorization: Verdict,
    pub e_stable: Verdict,
    pub uniqueness: Verdict,
}

impl FactValidation {
    pub fn overall(&self) -> Verdict {
        self.factorization
            .clone()
            .and(self.e_stable.clone())
            .and(self.uniqueness.clone())
    }
}

/// Validates a factorization system on the carrier: every morphism factors
/// as `m∘e` with parts in the right classes, `E` is a stable system, and any
/// other `(E, M)` factorization through a carrier object is isomorphic to the
/// chosen one.
pub fn validate_fact_system<C: Category + ?Sized>(
    c: &C,
    sys: &FactSystem<C::Mor>,
    bound: usize,
) -> FactValidation {
    let mors = carrier(c, bound);
    let obs = c.objects(bound);
    let mut factorization = Verdict::Holds;
    let mut uniqueness = Verdict::Holds;
    for f in &mors {
        let (e, m) = match sys.factor(c, f) {
            Ok(p) => p,
            Err(err) => {
                factorization = factorization.and(Verdict::fails(
                    Witness::new("no factorization").text("f", c.format_mor(f)).text("error", err.to_string()),
                ));
                break;
            }
        };
        if c.cod(&e) != c.dom(&m) || c.compose_raw(&m, &e) != *f {
            factorization = factorization.and(Verdict::fails(
                Witness::new("m∘e ≠ f")
                    .text("f", c.format_mor(f))
                    .text("e", c.format_mor(&e))
                    .text("m", c.format_mor(&m)),
            ));
            break;
        }
        factorization = factorization.and(sys.e.contains(c, &e)).and(sys.m.contains(c, &m));
        if factorization.is_fails() {
            break;
        }
        if !uniqueness.is_fails() {
            uniqueness = uniqueness.and(check_unique_factorization(c, sys, &obs, f, &e, &m));
        }
    }
    FactValidation {
        factorization,
        e_stable: validate_stable_system(c, &sys.e, bound),
        uniqueness,
    }
}

fn check_unique_factorization<C: Category + ?Sized>(
    c: &C,
    sys: &FactSystem<C::Mor>,
    obs: &[C::Ob],
    f: &C::Mor,
    e: &C::Mor,
    m: &C::Mor,
) -> Verdict {
    let (a, b) = (c.dom(f), c.cod(f));
    let mid = c.cod(e);
    for x in obs {
        let ms: Vec<C::Mor> = c
            .hom(x, &b)
            .into_iter()
            .filter(|m2| sys.m.contains(c, m2).is_holds())
            .collect();
        if ms.is_empty() {
            continue;
        }
        for e2 in c.hom(&a, x) {
            for m2 in &ms {
                if c.compose_raw(m2, &e2) != *f || !sys.e.contains(c, &e2).is_holds() {
                    continue;
                }
                let found = c.hom(&mid, x).into_iter().any(|u| {
                    c.compose_raw(&u, e) == e2
                        && c.compose_raw(m2, &u) == *m
                        && c.find_inverse(&u).found().is_some()
                });
                if !found {
                    return Verdict::fails(
                        Witness::new("two non-isomorphic (E, M) factorizations")
                            .text("f", c.format_mor(f))
                            .text("e", c.format_mor(e))
                            .text("m", c.format_mor(m))
                            .text("e2", c.format_mor(&e2))
                            .text("m2", c.format_mor(m2)),
                    );
                }
            }
        }
    }
    Verdict::Holds
}

/// Result of evaluating both sides of `SplitEpi ⊆ E ⟺ M ⊆ Mono`.
#[derive(Debug, Clone)]
pub struct SplitEpiLemma {
    pub split_epis_in_e: Verdict,
    pub m_in_monos: Verdict,
}

impl SplitEpiLemma {
    /// Holds when both sides have the same definite outcome.
    pub fn agreement(&self) -> Verdict {
        match (&self.split_epis_in_e, &self.m_in_monos) {
            (Verdict::Unknown { bound }, _) | (_, Verdict::Unknown { bound }) => {
                Verdict::unknown(bound.clone())
            }
            (l, r) if l.is_holds() == r.is_holds() => Verdict::Holds,
            (l, r) => Verdict::fails(
                Witness::new("SplitEpi ⊆ E and M ⊆ Mono disagree")
                    .text("SplitEpi ⊆ E", l.to_string())
                    .text("M ⊆ Mono", r.to_string()),
            ),
        }
    }
}

pub fn check_splitepi_lemma<C: Category + ?Sized>(c: &C, sys: &FactSystem<C::Mor>, bound: usize) -> SplitEpiLemma {
    let mors = carrier(c, bound);
    let mut left = Verdict::Holds;
    let mut right = Verdict::Holds;
    for f in &mors {
        if !left.is_fails() {
            let split = c.is_split_epi(f);
            if split.is_holds() {
                left = left.and(sys.e.contains(c, f));
            } else if split.is_unknown() {
                left = left.and(split);
            }
        }
        if !right.is_fails() {
            let in_m = sys.m.contains(c, f);
            if in_m.is_holds() {
                right = right.and(c.is_mono(f));
            } else if in_m.is_unknown() {
                right = right.and(in_m);
            }
        }
    }
    SplitEpiLemma { split_epis_in_e: left, m_in_monos: right }
}

/// Isomorphisms among the given morphisms.
fn isos_of<C: Category + ?Sized>(c: &C, mors: &[C::Mor]) -> Vec<C::Mor> {
    mors.iter().filter(|f| c.is_iso(f).is_holds()).cloned().collect()
}

/// Least class on the carrier of objects of size ≤ `bound` that contains
/// `seeds` and is closed under the given rules. `Pullback` closes under
/// chosen pullbacks along carrier morphisms and under pre- and
/// post-composition with carrier isomorphisms; `SectionsOfM` adds every
/// section of a carrier morphism in `m`.
pub fn closure<C: Category + ?Sized>(
    c: &C,
    name: &str,
    seeds: impl IntoIterator<Item = C::Mor>,
    rules: &[Rule],
    m: Option<&MorClass<C::Mor>>,
    bound: usize,
) -> MorClass<C::Mor> {
    let mors = carrier(c, bound);
    let in_carrier = |f: &C::Mor| c.size(&c.dom(f)) <= bound && c.size(&c.cod(f)) <= bound;
    let mut members: BTreeSet<C::Mor> = BTreeSet::new();
    let mut queue: Vec<C::Mor> = Vec::new();
    let push = |f: C::Mor, members: &mut BTreeSet<C::Mor>, queue: &mut Vec<C::Mor>| {
        if in_carrier(&f) && members.insert(f.clone()) {
            queue.push(f);
        }
    };
    for f in seeds {
        push(f, &mut members, &mut queue);
    }
    if rules.contains(&Rule::SectionsOfM) {
        if let Some(mc) = m {
            for r in &mors {
                if mc.contains(c, r).is_holds() {
                    let id = c.identity(&c.cod(r));
                    for s in c.hom(&c.cod(r), &c.dom(r)) {
                        if c.compose_raw(r, &s) == id {
                            push(s, &mut members, &mut queue);
                        }
                    }
                }
            }
        }
    }
    let compose = rules.contains(&Rule::Composition);
    let pull = rules.contains(&Rule::Pullback);
    let isos = if pull { isos_of(c, &mors) } else { Vec::new() };
    let mut by_cod: HashMap<C::Ob, Vec<C::Mor>> = HashMap::new();
    let mut isos_by_dom: HashMap<C::Ob, Vec<C::Mor>> = HashMap::new();
    let mut isos_by_cod: HashMap<C::Ob, Vec<C::Mor>> = HashMap::new();
    for g in &mors {
        by_cod.entry(c.cod(g)).or_default().push(g.clone());
    }
    for i in &isos {
        isos_by_dom.entry(c.dom(i)).or_default().push(i.clone());
        isos_by_cod.entry(c.cod(i)).or_default().push(i.clone());
    }
    while let Some(f) = queue.pop() {
        let mut fresh = Vec::new();
        if compose {
            let (fd, fc) = (c.dom(&f), c.cod(&f));
            for g in members.iter() {
                if c.dom(g) == fc {
                    fresh.push(c.compose_raw(g, &f));
                }
                if c.cod(g) == fd {
                    fresh.push(c.compose_raw(&f, g));
                }
            }
        }
        if pull {
            for g in by_cod.get(&c.cod(&f)).into_iter().flatten() {
                if let Ok(pb) = c.pullback(&f, g) {
                    fresh.push(pb.p2);
                }
            }
            for i in isos_by_cod.get(&c.dom(&f)).into_iter().flatten() {
                fresh.push(c.compose_raw(&f, i));
            }
            for j in isos_by_dom.get(&c.cod(&f)).into_iter().flatten() {
                fresh.push(c.compose_raw(j, &f));
            }
        }
        for g in fresh {
            push(g, &mut members, &mut queue);
        }
    }
    let recognized = recognize(c, &members, &mors);
    MorClass {
        name: name.to_string(),
        provenance: Provenance::Closure {
            generators: Vec::new(),
            rules: rules.to_vec(),
            bound,
        },
        kind: Kind::Carrier { members, bound, recognized },
    }
}

/// The first builtin class (instance-specific names first) that agrees with
/// `members` on every carrier morphism.
fn recognize<C: Category + ?Sized>(c: &C, members: &BTreeSet<C::Mor>, mors: &[C::Mor]) -> Option<String> {
    let names: Vec<&str> = c
        .builtin_names()
        .into_iter()
        .chain(GENERIC_CLASSES.iter().copied())
        .collect();
    names.into_iter().find_map(|n| {
        let agrees = mors.iter().all(|f| {
            let v = builtin_contains(c, n, f, n);
            !v.is_unknown() && v.is_holds() == members.contains(f)
        });
        agrees.then(|| n.to_string())
    })
}

impl<M> MorClass<M> {
    fn with_generators(mut self, generators: Vec<String>) -> Self {
        if let Provenance::Closure { generators: g, .. } = &mut self.provenance {
            *g = generators;
        }
        self
    }
}

/// Closure of `x` under composition on the carrier.
pub fn composition_closure<C: Category + ?Sized>(c: &C, x: &MorClass<C::Mor>, bound: usize) -> MorClass<C::Mor> {
    let seeds: Vec<C::Mor> = carrier(c, bound)
        .into_iter()
        .filter(|f| x.contains(c, f).is_holds())
        .collect();
    closure(c, &format!("({})^c", x.name), seeds, &[Rule::Composition], None, bound)
        .with_generators(vec![x.name.clone()])
}

/// `E∘`: the composition closure of `E ∪ SplitEpi`.
pub fn e_circ<C: Category + ?Sized>(c: &C, e: &MorClass<C::Mor>, bound: usize) -> MorClass<C::Mor> {
    let seeds: Vec<C::Mor> = carrier(c, bound)
        .into_iter()
        .filter(|f| e.contains(c, f).is_holds() || c.is_split_epi(f).is_holds() || c.is_iso(f).is_holds())
        .collect();
    closure(c, &format!("{}∘", e.name), seeds, &[Rule::Composition], None, bound)
        .with_generators(vec![e.name.clone(), "splitEpis".into()])
}

/// A commutative cube over `m: V → Z` with back face the chosen pullback of
/// `(f, s)` and front face the chosen pullback of `(m∘f, m∘s)`; `conjugate`
/// is the induced morphism between the apexes.
#[derive(Debug, Clone)]
pub struct Cube<M> {
    pub m: M,
    pub f: M,
    pub s: M,
    pub conjugate: M,
}

pub fn conjugate<C: Category + ?Sized>(c: &C, m: &C::Mor, f: &C::Mor, s: &C::Mor) -> Result<C::Mor> {
    let back = pullback(c, f, s)?;
    let front = pullback(c, &c.compose_raw(m, f), &c.compose_raw(m, s))?;
    c.mediate(&front, &back.p1, &back.p2)
}

/// Every conjugate of an `M`-morphism along carrier morphisms whose cube lies
/// in the carrier, deduplicated by identity, plus every section of a carrier
/// morphism in `M`.
pub fn conjugates<C: Category + ?Sized>(c: &C, m: &MorClass<C::Mor>, bound: usize) -> BTreeSet<C::Mor> {
    let obs = c.objects(bound);
    let mut out = BTreeSet::new();
    let mut into: HashMap<C::Ob, Vec<C::Mor>> = HashMap::new();
    for v in &obs {
        let mut fs = Vec::new();
        for b in &obs {
            fs.extend(c.hom(b, v));
        }
        into.insert(v.clone(), fs);
    }
    for v in &obs {
        for z in &obs {
            for mm in c.hom(v, z) {
                if !m.contains(c, &mm).is_holds() {
                    continue;
                }
                for s in c.hom(z, v) {
                    if c.compose_raw(&mm, &s) == c.identity(z) {
                        out.insert(s);
                    }
                }
                let fs = &into[v];
                for f in fs {
                    let mf = c.compose_raw(&mm, f);
                    for s in fs {
                        let back = match c.pullback(f, s) {
                            Ok(p) => p,
                            Err(_) => continue,
                        };
                        if c.size(&back.apex) > bound {
                            continue;
                        }
                        let ms = c.compose_raw(&mm, s);
                        let front = match c.pullback(&mf, &ms) {
                            Ok(p) => p,
                            Err(_) => continue,
                        };
                        if c.size(&front.apex) > bound {
                            continue;
                        }
                        if let Ok(k) = c.mediate(&front, &back.p1, &back.p2) {
                            out.insert(k);
                        }
                    }
                }
            }
        }
    }
    out
}

/// `M*`: the pullback closure of the conjugates of `M`.
pub fn m_star<C: Category + ?Sized>(c: &C, m: &MorClass<C::Mor>, bound: usize) -> MorClass<C::Mor> {
    let seeds = conjugates(c, m, bound);
    closure(
        c,
        &format!("{}*", m.name),
        seeds,
        &[Rule::Pullback, Rule::SectionsOfM],
        Some(m),
        bound,
    )
    .with_generators(vec![format!("conjugates({})", m.name)])
}

/// `E•`: the composition closure of `E ∪ M*`.
pub fn e_bullet<C: Category + ?Sized>(
    c: &C,
    sys: &FactSystem<C::Mor>,
    m_star_class: &MorClass<C::Mor>,
    bound: usize,
) -> MorClass<C::Mor> {
    let seeds: Vec<C::Mor> = carrier(c, bound)
        .into_iter()
        .filter(|f| {
            sys.e.contains(c, f).is_holds()
                || m_star_class.contains(c, f).is_holds()
                || c.is_iso(f).is_holds()
        })
        .collect();
    closure(c, &format!("{}•", sys.e.name), seeds, &[Rule::Composition], None, bound)
        .with_generators(vec![sys.e.name.clone(), m_star_class.name.clone()])
}

/// Builds a class from its JSON description:
/// `{"builtin": name}`, `{"explicit": [mor, …]}` or
/// `{"closure": {"generators": [...], "rules": [...], "bound": n}}`, where
/// generators are morphism strings or nested class descriptions.
pub fn class_from_json<C: Category + ?Sized>(
    c: &C,
    v: &Value,
    m: Option<&MorClass<C::Mor>>,
) -> Result<MorClass<C::Mor>> {
    let obj = v
        .as_object()
        .ok_or_else(|| CatError::parse("class", "expected a JSON object"))?;
    if let Some(name) = obj.get("builtin") {
        let name = name
            .as_str()
            .ok_or_else(|| CatError::parse("class.builtin", "expected a string"))?;
        return MorClass::builtin(c, name);
    }
    if let Some(list) = obj.get("explicit") {
        let list = list
            .as_array()
            .ok_or_else(|| CatError::parse("class.explicit", "expected an array"))?;
        let mut mors = Vec::new();
        for (i, item) in list.iter().enumerate() {
            let s = item
                .as_str()
                .ok_or_else(|| CatError::parse(format!("class.explicit[{i}]"), "expected a string"))?;
            mors.push(c.parse_mor(s).map_err(|e| CatError::parse(format!("class.explicit[{i}]"), e.to_string()))?);
        }
        return Ok(MorClass::explicit("explicit", mors));
    }
    if let Some(spec) = obj.get("closure") {
        let bound = spec
            .get("bound")
            .and_then(Value::as_u64)
            .ok_or_else(|| CatError::parse("class.closure.bound", "expected a natural number"))?
            as usize;
        let rules = spec
            .get("rules")
            .and_then(Value::as_array)
            .ok_or_else(|| CatError::parse("class.closure.rules", "expected an array"))?
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.as_str()
                    .ok_or_else(|| CatError::parse(format!("class.closure.rules[{i}]"), "expected a string"))
                    .and_then(Rule::parse)
            })
            .collect::<Result<Vec<_>>>()?;
        let gens = spec
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| CatError::parse("class.closure.generators", "expected an array"))?;
        let mors = carrier(c, bound);
        let mut seeds = Vec::new();
        let mut names = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            match g {
                Value::String(s) => {
                    seeds.push(c.parse_mor(s).map_err(|e| {
                        CatError::parse(format!("class.closure.generators[{i}]"), e.to_string())
                    })?);
                    names.push(s.clone());
                }
                other => {
                    let inner = class_from_json(c, other, m)?;
                    seeds.extend(mors.iter().filter(|f| inner.contains(c, f).is_holds()).cloned());
                    names.push(inner.name.clone());
                }
            }
        }
        if rules.contains(&Rule::SectionsOfM) && m.is_none() {
            return Err(CatError::Config("rule `sections-of-M` needs a system".into()));
        }
        return Ok(closure(c, "closure", seeds, &rules, m, bound).with_generators(names));
    }
    Err(CatError::parse("class", "expected one of `builtin`, `explicit`, `closure`"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::finset::{parse_finfn, FinFn, FinSet};

    fn fs() -> FinSet {
        FinSet::new(3)
    }

    #[test]
    fn surjections_and_monos_are_stable() {
        let c = fs();
        for name in ["surjective", "monos", "isos", "all", "equalFibers"] {
            let e = MorClass::builtin(&c, name).unwrap();
            assert!(validate_stable_system(&c, &e, 3).is_holds(), "{name}");
        }
    }

    #[test]
    fn subterminal_surjections_are_not_stable() {
        let c = fs();
        let e = MorClass::builtin(&c, "surjOntoSubterminal").unwrap();
        let v = validate_stable_system(&c, &e, 3);
        assert!(v.is_fails(), "{v}");
        assert_eq!(v.witness().unwrap().equation, "pullback of an E-morphism is not in E");
    }

    #[test]
    fn unknown_builtin_is_a_config_error() {
        assert!(MorClass::<FinFn>::builtin(&fs(), "nope").is_err());
    }

    #[test]
    fn closure_of_composition_closed_class_is_itself() {
        let c = fs();
        let e = MorClass::builtin(&c, "surjective").unwrap();
        let cl = composition_closure(&c, &e, 3);
        assert_eq!(cl.recognized(), Some("surjective"));
        let again = composition_closure(&c, &cl, 3);
        assert_eq!(again.stored_members(), cl.stored_members());
    }

    #[test]
    fn e_circ_of_isos_is_surjections() {
        let c = fs();
        let isos = MorClass::builtin(&c, "isos").unwrap();
        let ec = e_circ(&c, &isos, 3);
        for f in carrier(&c, 3) {
            assert_eq!(ec.contains(&c, &f).is_holds(), f.is_surjective(), "{f:?}");
        }
    }

    #[test]
    fn conjugates_of_monos_are_isos() {
        let c = fs();
        let m = MorClass::builtin(&c, "injective").unwrap();
        for k in conjugates(&c, &m, 2) {
            assert!(k.is_bijective(), "{k:?}");
        }
    }

    #[test]
    fn m_star_of_all_is_injections() {
        let c = fs();
        let m = MorClass::builtin(&c, "all").unwrap();
        let ms = m_star(&c, &m, 3);
        for f in carrier(&c, 3) {
            assert_eq!(ms.contains(&c, &f).is_holds(), f.is_injective(), "{f:?}");
        }
        assert!(ms.contains(&c, &parse_finfn("1>2:0").unwrap()).is_holds());
        assert!(ms.contains(&c, &FinFn::identity(0).clone()).is_holds());
        assert!(ms.contains(&c, &parse_finfn("0>3:").unwrap()).is_holds());
    }

    #[test]
    fn splitepi_lemma_sides() {
        let c = fs();
        let si = check_splitepi_lemma(&c, &FactSystem::named(&c, "surj-inj").unwrap(), 3);
        assert!(si.split_epis_in_e.is_holds() && si.m_in_monos.is_holds());
        let ia = check_splitepi_lemma(&c, &FactSystem::named(&c, "iso-all").unwrap(), 3);
        assert!(ia.split_epis_in_e.is_fails() && ia.m_in_monos.is_fails());
        assert!(ia.agreement().is_holds());
    }

    #[test]
    fn class_json_forms() {
        let c = fs();
        let v: Value = serde_json::json!({"explicit": ["2>1:0,0"]});
        let cl = class_from_json(&c, &v, None).unwrap();
        assert!(cl.contains(&c, &parse_finfn("2>1:0,0").unwrap()).is_holds());
        assert!(cl.contains(&c, &parse_finfn("1>1:0").unwrap()).is_fails());
        let v: Value = serde_json::json!({"closure": {"generators": [{"builtin": "isos"}, "1>2:0"], "rules": ["composition"], "bound": 2}});
        let cl = class_from_json(&c, &v, None).unwrap();
        assert_eq!(cl.recognized(), None);
        assert!(cl.contains(&c, &parse_finfn("1>2:1").unwrap()).is_holds());
        assert!(cl.contains(&c, &parse_finfn("0>1:").unwrap()).is_fails());
        assert!(cl.contains(&c, &parse_finfn("1>3:0").unwrap()).is_unknown());
        assert!(class_from_json(&c, &serde_json::json!({"nope": 1}), None).is_err());
    }
}
