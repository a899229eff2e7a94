//! Spans `A ← D → B`, their horizontal composition, involution, meet and
//! graphs, the 2-cell preorder `≤_E`, the equivalences `∼_E` and `≈`, and the
//! M-relation composition together with the `S`/`R` round trip.

use serde::{Deserialize, Serialize};

use crate::category::{compose, pullback, Category, Product};
use crate::classes::{FactSystem, MorClass};
use crate::error::{CatError, Result};
use crate::verdict::{Verdict, Witness};

/// A span `dom ← apex → cod` given by its two legs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Span<M> {
    pub left: M,
    pub right: M,
}

impl<M: Clone> Span<M> {
    pub fn new(left: M, right: M) -> Self {
        Span { left, right }
    }

    pub fn apex<C: Category<Mor = M> + ?Sized>(&self, c: &C) -> C::Ob {
        c.dom(&self.left)
    }

    pub fn source<C: Category<Mor = M> + ?Sized>(&self, c: &C) -> C::Ob {
        c.cod(&self.left)
    }

    pub fn target<C: Category<Mor = M> + ?Sized>(&self, c: &C) -> C::Ob {
        c.cod(&self.right)
    }

    /// `(f, g)° = (g, f)`.
    pub fn involution(&self) -> Self {
        Span::new(self.right.clone(), self.left.clone())
    }
}

/// A span as text: apex object and the two legs in the instance's syntax.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanJson {
    pub apex: String,
    pub left: String,
    pub right: String,
}

impl SpanJson {
    pub fn parse<C: Category + ?Sized>(&self, c: &C) -> Result<Span<C::Mor>> {
        let apex = c.parse_ob(&self.apex).map_err(|e| CatError::parse("apex", e.to_string()))?;
        let left = c.parse_mor(&self.left).map_err(|e| CatError::parse("left", e.to_string()))?;
        let right = c.parse_mor(&self.right).map_err(|e| CatError::parse("right", e.to_string()))?;
        for (leg, f) in [("left", &left), ("right", &right)] {
            if c.dom(f) != apex {
                return Err(CatError::parse(leg, format!("domain is not the apex {}", self.apex)));
            }
        }
        Ok(Span::new(left, right))
    }

    pub fn from_span<C: Category + ?Sized>(c: &C, s: &Span<C::Mor>) -> Self {
        SpanJson {
            apex: format!("{:?}", s.apex(c)),
            left: c.format_mor(&s.left),
            right: c.format_mor(&s.right),
        }
    }
}

/// A 2-cell `u: source → target` between parallel spans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCell<M> {
    pub u: M,
    pub source: Span<M>,
    pub target: Span<M>,
}

impl<M: Clone + Eq> TwoCell<M> {
    pub fn new<C: Category<Mor = M> + ?Sized>(c: &C, u: M, source: Span<M>, target: Span<M>) -> Result<Self> {
        let cell = TwoCell { u, source, target };
        if cell.verify(c) {
            Ok(cell)
        } else {
            Err(CatError::Undetermined(format!(
                "{} is not a 2-cell",
                c.format_mor(&cell.u)
            )))
        }
    }

    pub fn verify<C: Category<Mor = M> + ?Sized>(&self, c: &C) -> bool {
        c.cod(&self.u) == self.target.apex(c)
            && c.dom(&self.u) == self.source.apex(c)
            && c.compose_raw(&self.target.left, &self.u) == self.source.left
            && c.compose_raw(&self.target.right, &self.u) == self.source.right
    }
}

pub fn format_span<C: Category + ?Sized>(c: &C, s: &Span<C::Mor>) -> String {
    format!("({}, {})", c.format_mor(&s.left), c.format_mor(&s.right))
}

fn check_parallel<C: Category + ?Sized>(c: &C, s1: &Span<C::Mor>, s2: &Span<C::Mor>) -> Result<()> {
    if s1.source(c) != s2.source(c) || s1.target(c) != s2.target(c) {
        return Err(CatError::NotParallel(format!(
            "{} vs {}",
            format_span(c, s1),
            format_span(c, s2)
        )));
    }
    Ok(())
}

/// Horizontal composite `s2∘s1` of `s1: A → B` and `s2: B → C`, built on the
/// chosen pullback of `s1.right` and `s2.left`.
pub fn span_compose<C: Category + ?Sized>(c: &C, s1: &Span<C::Mor>, s2: &Span<C::Mor>) -> Result<Span<C::Mor>> {
    if s1.target(c) != s2.source(c) {
        return Err(CatError::DomainMismatch {
            g: format_span(c, s2),
            f: format_span(c, s1),
            cod_f: format!("{:?}", s1.target(c)),
            dom_g: format!("{:?}", s2.source(c)),
        });
    }
    let pb = pullback(c, &s1.right, &s2.left)?;
    Ok(Span::new(
        c.compose_raw(&s1.left, &pb.p1),
        c.compose_raw(&s2.right, &pb.p2),
    ))
}

pub fn involution<M: Clone>(s: &Span<M>) -> Span<M> {
    s.involution()
}

/// The graph `(1_A, f)` of `f: A → B`.
pub fn graph<C: Category + ?Sized>(c: &C, f: &C::Mor) -> Span<C::Mor> {
    Span::new(c.identity(&c.dom(f)), f.clone())
}

pub fn identity_span<C: Category + ?Sized>(c: &C, a: &C::Ob) -> Span<C::Mor> {
    let id = c.identity(a);
    Span::new(id.clone(), id)
}

/// The product span `(π1, π2)`, neutral for the meet.
pub fn product_span<C: Category + ?Sized>(c: &C, a: &C::Ob, b: &C::Ob) -> Result<Span<C::Mor>> {
    let pr = c.product(a, b)?;
    Ok(Span::new(pr.pi1, pr.pi2))
}

/// The pairing `⟨left, right⟩: apex → A×B` together with the product used.
pub fn span_pairing<C: Category + ?Sized>(c: &C, s: &Span<C::Mor>) -> Result<(C::Mor, Product<C>)> {
    let pr = c.product(&s.source(c), &s.target(c))?;
    let m = c.pair(&pr, &s.left, &s.right)?;
    Ok((m, pr))
}

/// Meet of parallel spans: the pullback of their pairings into `A×B`.
pub fn span_meet<C: Category + ?Sized>(c: &C, s1: &Span<C::Mor>, s2: &Span<C::Mor>) -> Result<Span<C::Mor>> {
    check_parallel(c, s1, s2)?;
    let (m1, pr) = span_pairing(c, s1)?;
    let m2 = c.pair(&pr, &s2.left, &s2.right)?;
    let pb = c.pullback(&m1, &m2)?;
    let d = c.compose_raw(&m1, &pb.p1);
    Ok(Span::new(
        c.compose_raw(&pr.pi1, &d),
        c.compose_raw(&pr.pi2, &d),
    ))
}

/// `(⟨p,q⟩, q)∘(f, ⟨f,g⟩)`, the meet presented as a horizontal composite.
pub fn meet_via_composition<C: Category + ?Sized>(
    c: &C,
    s1: &Span<C::Mor>,
    s2: &Span<C::Mor>,
) -> Result<Span<C::Mor>> {
    check_parallel(c, s1, s2)?;
    let (m1, pr) = span_pairing(c, s1)?;
    let m2 = c.pair(&pr, &s2.left, &s2.right)?;
    span_compose(c, &Span::new(s1.left.clone(), m1), &Span::new(m2, s2.right.clone()))
}

/// `s1 ≤_E s2`: some 2-cell `s1 → s2` lies in `E`.
pub fn le_e<C: Category + ?Sized>(c: &C, e: &MorClass<C::Mor>, s1: &Span<C::Mor>, s2: &Span<C::Mor>) -> Result<Verdict> {
    check_parallel(c, s1, s2)?;
    let mut acc = Verdict::fails(
        Witness::new("no 2-cell in E")
            .text("s1", format_span(c, s1))
            .text("s2", format_span(c, s2)),
    );
    for u in c.two_cells(s1, s2) {
        acc = acc.or(e.contains(c, &u));
        if acc.is_holds() {
            break;
        }
    }
    Ok(acc)
}

/// A 2-cell `s1 → s2` in `E`, if one exists.
pub fn le_e_witness<C: Category + ?Sized>(
    c: &C,
    e: &MorClass<C::Mor>,
    s1: &Span<C::Mor>,
    s2: &Span<C::Mor>,
) -> Option<TwoCell<C::Mor>> {
    c.two_cells(s1, s2)
        .into_iter()
        .find(|u| e.contains(c, u).is_holds())
        .map(|u| TwoCell {
            u,
            source: s1.clone(),
            target: s2.clone(),
        })
}

/// `s1 ≈ s2`: 2-cells exist in both directions.
pub fn approx<C: Category + ?Sized>(c: &C, s1: &Span<C::Mor>, s2: &Span<C::Mor>) -> Result<Verdict> {
    check_parallel(c, s1, s2)?;
    let fwd = c.two_cells(s1, s2);
    let bwd = c.two_cells(s2, s1);
    Ok(Verdict::from_bool(!fwd.is_empty() && !bwd.is_empty(), || {
        Witness::new(if fwd.is_empty() {
            "no 2-cell s1 → s2"
        } else {
            "no 2-cell s2 → s1"
        })
        .text("s1", format_span(c, s1))
        .text("s2", format_span(c, s2))
    }))
}

/// The M-part span `(π1∘m, π2∘m)` of `⟨left, right⟩ = m∘e`.
pub fn m_part<C: Category + ?Sized>(c: &C, system: &FactSystem<C::Mor>, s: &Span<C::Mor>) -> Result<Span<C::Mor>> {
    let (pairing, pr) = span_pairing(c, s)?;
    let (_, m) = system.factor(c, &pairing)?;
    Ok(Span::new(
        c.compose_raw(&pr.pi1, &m),
        c.compose_raw(&pr.pi2, &m),
    ))
}

/// Common sub-span witness for `∼_E`: `x: X → D1`, `y: X → D2`, both in `E`,
/// with `f∘x = h∘y` and `g∘x = k∘y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimWitness<M> {
    pub x: M,
    pub y: M,
}

/// Decides `s1 ∼_E s2` by searching for a common sub-span with both
/// comparison legs in `E`. Every such pair factors through the apex of the
/// meet, so the search runs over sub-apexes of that pullback: the
/// instance-supplied complete subobject family when available, otherwise
/// every morphism into the apex from objects within `bound`.
pub fn sim_e_search<C: Category + ?Sized>(
    c: &C,
    e: &MorClass<C::Mor>,
    s1: &Span<C::Mor>,
    s2: &Span<C::Mor>,
    bound: usize,
) -> Result<(Verdict, Option<SimWitness<C::Mor>>)> {
    check_parallel(c, s1, s2)?;
    let (m1, pr) = span_pairing(c, s1)?;
    let m2 = c.pair(&pr, &s2.left, &s2.right)?;
    let pb = c.pullback(&m1, &m2)?;
    let (candidates, complete) = match (e.restriction_closed(c), c.sub_apexes(&pb.apex)) {
        (true, Some(subs)) => (subs, true),
        _ => {
            let mut ws = Vec::new();
            for x in c.objects(bound) {
                ws.extend(c.hom(&x, &pb.apex));
            }
            (ws, false)
        }
    };
    let mut unknown = None;
    for w in candidates {
        let x = c.compose_raw(&pb.p1, &w);
        let y = c.compose_raw(&pb.p2, &w);
        let vx = e.contains(c, &x);
        if vx.is_fails() {
            continue;
        }
        let vy = e.contains(c, &y);
        match vx.and(vy) {
            Verdict::Holds => return Ok((Verdict::Holds, Some(SimWitness { x, y }))),
            Verdict::Unknown { bound } => unknown = Some(bound),
            Verdict::Fails { .. } => {}
        }
    }
    let verdict = match (unknown, complete) {
        (Some(b), _) => Verdict::unknown(format!("class membership undecided: {b}")),
        (None, true) => Verdict::fails(
            Witness::new("no common sub-span with both legs in E")
                .text("s1", format_span(c, s1))
                .text("s2", format_span(c, s2)),
        ),
        (None, false) => Verdict::unknown(format!("sub-span search over objects of size ≤ {bound}")),
    };
    Ok((verdict, None))
}

/// Decides `s1 ∼_E s2` for `E` the left class of a factorization system by
/// comparing M-parts up to vertical isomorphism.
pub fn sim_e_fast<C: Category + ?Sized>(
    c: &C,
    system: &FactSystem<C::Mor>,
    s1: &Span<C::Mor>,
    s2: &Span<C::Mor>,
) -> Result<Verdict> {
    check_parallel(c, s1, s2)?;
    let n1 = m_part(c, system, s1)?;
    let n2 = m_part(c, system, s2)?;
    let same = if c.normal_forms_are_canonical() {
        c.normalize_span(&n1) == c.normalize_span(&n2)
    } else {
        crate::category::vertical_iso(c, &n1, &n2).is_some()
    };
    Ok(Verdict::from_bool(same, || {
        Witness::new("M-parts not isomorphic")
            .text("s1", format_span(c, s1))
            .text("s2", format_span(c, s2))
    }))
}

/// Composite of M-relations: the M-part of the span composite.
pub fn rel_compose<C: Category + ?Sized>(
    c: &C,
    system: &FactSystem<C::Mor>,
    r1: &Span<C::Mor>,
    r2: &Span<C::Mor>,
) -> Result<Span<C::Mor>> {
    let s = span_compose(c, r1, r2)?;
    let m = m_part(c, system, &s)?;
    Ok(c.normalize_span(&m))
}

/// An M-relation: a span whose pairing into the product lies in `M`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation<M> {
    span: Span<M>,
}

impl<M: Clone + Ord + std::fmt::Debug> Relation<M> {
    pub fn new<C: Category<Mor = M> + ?Sized>(c: &C, system: &FactSystem<C::Mor>, span: Span<M>) -> Result<Self> {
        let (pairing, _) = span_pairing(c, &span)?;
        match system.m.contains(c, &pairing) {
            Verdict::Holds => Ok(Relation { span }),
            other => Err(CatError::Undetermined(format!(
                "pairing of {} is not in M: {other}",
                format_span(c, &span)
            ))),
        }
    }

    pub fn span(&self) -> &Span<M> {
        &self.span
    }
}

/// `S`: an M-relation viewed as (the canonical span of) its `∼_E` class.
pub fn functor_s<C: Category + ?Sized>(c: &C, system: &FactSystem<C::Mor>, r: &Relation<C::Mor>) -> Result<Span<C::Mor>> {
    class_canonical(c, system, r.span())
}

/// `R`: a `∼_E` class sent to the projections of its M-part.
pub fn functor_r<C: Category + ?Sized>(
    c: &C,
    system: &FactSystem<C::Mor>,
    class: &Span<C::Mor>,
) -> Result<Relation<C::Mor>> {
    let m = c.normalize_span(&m_part(c, system, class)?);
    Relation::new(c, system, m)
}

/// Canonical representative of `[s]_E` for a factorization-backed `∼_E`.
pub fn class_canonical<C: Category + ?Sized>(c: &C, system: &FactSystem<C::Mor>, s: &Span<C::Mor>) -> Result<Span<C::Mor>> {
    Ok(c.normalize_span(&m_part(c, system, s)?))
}

/// Checks `RS = Id`, `SR = Id` on the given relations and classes, and the
/// functoriality of `R` on the given composable pairs of classes.
pub fn check_s_r_round_trip<C: Category + ?Sized>(
    c: &C,
    system: &FactSystem<C::Mor>,
    relations: &[Relation<C::Mor>],
    classes: &[Span<C::Mor>],
    composable: &[(Span<C::Mor>, Span<C::Mor>)],
) -> Result<Verdict> {
    for r in relations {
        let back = functor_r(c, system, &functor_s(c, system, r)?)?;
        let same = c.normalize_span(back.span()) == c.normalize_span(r.span())
            || crate::category::vertical_iso(c, back.span(), r.span()).is_some();
        if !same {
            return Ok(Verdict::fails(
                Witness::new("R(S(r)) ≠ r").text("r", format_span(c, r.span())),
            ));
        }
    }
    for k in classes {
        let canon = class_canonical(c, system, k)?;
        let round = functor_s(c, system, &functor_r(c, system, k)?)?;
        if round != canon {
            return Ok(Verdict::fails(
                Witness::new("S(R(c)) ≠ c").text("c", format_span(c, k)),
            ));
        }
    }
    for (k1, k2) in composable {
        let lhs = functor_r(c, system, &span_compose(c, k1, k2)?)?;
        let r1 = functor_r(c, system, k1)?;
        let r2 = functor_r(c, system, k2)?;
        let rhs = rel_compose(c, system, r1.span(), r2.span())?;
        if c.normalize_span(lhs.span()) != c.normalize_span(&rhs)
            && crate::category::vertical_iso(c, lhs.span(), &rhs).is_none()
        {
            return Ok(Verdict::fails(
                Witness::new("R(k2∘k1) ≠ R(k2)·R(k1)")
                    .text("k1", format_span(c, k1))
                    .text("k2", format_span(c, k2)),
            ));
        }
    }
    Ok(Verdict::Holds)
}

/// The 2-cell `d: (h,k)∘((f,g)∧(p,q)) → ((h,k)∘(f,g))∧((h,k)∘(p,q))` built
/// from the unique fillers of the relevant pullbacks.
pub fn lax_distributivity_cell<C: Category + ?Sized>(
    c: &C,
    fg: &Span<C::Mor>,
    pq: &Span<C::Mor>,
    hk: &Span<C::Mor>,
) -> Result<TwoCell<C::Mor>> {
    check_parallel(c, fg, pq)?;
    // P, Q: the two composites.
    let pb_p = pullback(c, &fg.right, &hk.left)?; // h' = p1, g' = p2
    let pb_q = pullback(c, &pq.right, &hk.left)?; // h'' = p1, q' = p2
    // U: meet of (f,g) and (p,q).
    let (m_fg, pr_ab) = span_pairing(c, fg)?;
    let m_pq = c.pair(&pr_ab, &pq.left, &pq.right)?;
    let pb_u = c.pullback(&m_fg, &m_pq)?; // u1, u2
    // W: composite of the meet with (h,k).
    let meet_right = c.compose_raw(&fg.right, &pb_u.p1);
    let pb_w = pullback(c, &meet_right, &hk.left)?; // w1, w2
    // x: W → P, y: W → Q.
    let x = c.mediate(&pb_p, &c.compose_raw(&pb_u.p1, &pb_w.p1), &pb_w.p2)?;
    let y = c.mediate(&pb_q, &c.compose_raw(&pb_u.p2, &pb_w.p1), &pb_w.p2)?;
    // V: meet of the two composites.
    let comp_p = Span::new(
        c.compose_raw(&fg.left, &pb_p.p1),
        c.compose_raw(&hk.right, &pb_p.p2),
    );
    let comp_q = Span::new(
        c.compose_raw(&pq.left, &pb_q.p1),
        c.compose_raw(&hk.right, &pb_q.p2),
    );
    let (m_p, pr_ac) = span_pairing(c, &comp_p)?;
    let m_q = c.pair(&pr_ac, &comp_q.left, &comp_q.right)?;
    let pb_v = c.pullback(&m_p, &m_q)?;
    let d = c.mediate(&pb_v, &x, &y)?;

    let source = Span::new(
        c.compose_raw(&c.compose_raw(&fg.left, &pb_u.p1), &pb_w.p1),
        c.compose_raw(&hk.right, &pb_w.p2),
    );
    let vd = c.compose_raw(&m_p, &pb_v.p1);
    let target = Span::new(c.compose_raw(&pr_ac.pi1, &vd), c.compose_raw(&pr_ac.pi2, &vd));
    TwoCell::new(c, d, source, target)
}

/// The Freyd modularity 2-cell
/// `c: ((h,k)∘(f,g)) ∧ (m,n) → (h,k)∘((f,g) ∧ ((h,k)°∘(m,n)))`.
pub fn modularity_cell<C: Category + ?Sized>(
    c: &C,
    fg: &Span<C::Mor>,
    hk: &Span<C::Mor>,
    mn: &Span<C::Mor>,
) -> Result<TwoCell<C::Mor>> {
    // P: (h,k)∘(f,g), with h' = p1, g' = p2.
    let pb_p = pullback(c, &fg.right, &hk.left)?;
    // Q: (h,k)°∘(m,n) = (k,h)∘(m,n), with k' = p1, n' = p2.
    let pb_q = pullback(c, &mn.right, &hk.right)?;
    let comp = Span::new(
        c.compose_raw(&fg.left, &pb_p.p1),
        c.compose_raw(&hk.right, &pb_p.p2),
    );
    // S: comp ∧ (m,n), with s1, s2.
    let (m_comp, pr_ac) = span_pairing(c, &comp)?;
    let m_mn = c.pair(&pr_ac, &mn.left, &mn.right)?;
    let pb_s = c.pullback(&m_comp, &m_mn)?;
    // T: (f,g) ∧ (m k', h n'), with t1, t2.
    let back = Span::new(
        c.compose_raw(&mn.left, &pb_q.p1),
        c.compose_raw(&hk.left, &pb_q.p2),
    );
    let (m_fg, pr_ab) = span_pairing(c, fg)?;
    let m_back = c.pair(&pr_ab, &back.left, &back.right)?;
    let pb_t = c.pullback(&m_fg, &m_back)?;
    // a: S → Q with k' a = s2, n' a = g' s1.
    let a = c.mediate(&pb_q, &pb_s.p2, &c.compose_raw(&pb_p.p2, &pb_s.p1))?;
    // b: S → T with t1 b = h' s1, t2 b = a.
    let b = c.mediate(&pb_t, &c.compose_raw(&pb_p.p1, &pb_s.p1), &a)?;
    // R: (h,k)∘(f t1, g t1), with r1, r2.
    let gt1 = c.compose_raw(&fg.right, &pb_t.p1);
    let pb_r = pullback(c, &gt1, &hk.left)?;
    let cell = c.mediate(&pb_r, &b, &c.compose_raw(&pb_q.p2, &a))?;

    let sd = c.compose_raw(&m_comp, &pb_s.p1);
    let source = Span::new(c.compose_raw(&pr_ac.pi1, &sd), c.compose_raw(&pr_ac.pi2, &sd));
    let target = Span::new(
        c.compose_raw(&c.compose_raw(&fg.left, &pb_t.p1), &pb_r.p1),
        c.compose_raw(&hk.right, &pb_r.p2),
    );
    TwoCell::new(c, cell, source, target)
}

/// `(f, g) = Γg ∘ (Γf)°`.
pub fn decompose_via_graphs<C: Category + ?Sized>(c: &C, s: &Span<C::Mor>) -> Result<Span<C::Mor>> {
    span_compose(c, &graph(c, &s.left).involution(), &graph(c, &s.right))
}

/// Composite in the ambient category with a domain check, re-exported for
/// callers that only import this module.
pub fn compose_checked<C: Category + ?Sized>(c: &C, g: &C::Mor, f: &C::Mor) -> Result<C::Mor> {
    compose(c, g, f)
}
