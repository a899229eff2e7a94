//! Allegory laws checked over a quotient view on a sampled region of
//! hom-sets, plus the allegorical-relation test and the effective-retraction
//! criterion.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::category::{kernel_pair, Category, Search};
use crate::classes::MorClass;
use crate::error::Result;
use crate::quotient::QuotientView;
use crate::span::{format_span, graph, span_compose, Span};
use crate::sweep::Exec;
use crate::verdict::{Verdict, Witness};

/// Objects whose hom-sets are swept completely, and a larger pool from which
/// seeded random tuples are drawn.
#[derive(Debug, Clone)]
pub struct Region<O> {
    pub exhaustive: Vec<O>,
    pub pool: Vec<O>,
    pub samples: usize,
    pub seed: u64,
}

impl<O: Clone + Eq> Region<O> {
    /// Exhaustive over objects of size ≤ `exhaustive_bound`, `samples` draws
    /// touching at least one object of size in `(exhaustive_bound, sample_bound]`.
    pub fn new<C: Category<Ob = O> + ?Sized>(
        c: &C,
        exhaustive_bound: usize,
        sample_bound: usize,
        samples: usize,
        seed: u64,
    ) -> Self {
        Region {
            exhaustive: c.objects(exhaustive_bound),
            pool: c.objects(sample_bound.max(exhaustive_bound)),
            samples,
            seed,
        }
    }

    pub fn exhaustive_only(objects: Vec<O>) -> Self {
        Region { pool: objects.clone(), exhaustive: objects, samples: 0, seed: 0 }
    }

    fn has_large(&self) -> bool {
        self.pool.iter().any(|o| !self.exhaustive.contains(o))
    }

    fn draw(&self, rng: &mut ChaCha8Rng, k: usize) -> Vec<O> {
        loop {
            let objs: Vec<O> = (0..k).map(|_| self.pool[rng.gen_range(0..self.pool.len())].clone()).collect();
            if objs.iter().any(|o| !self.exhaustive.contains(o)) {
                return objs;
            }
        }
    }
}

/// Shape of a law's inputs: `k` objects and, per input, the indices of its
/// source and target among them.
struct Shape {
    arity: usize,
    homs: &'static [(usize, usize)],
    labels: &'static [&'static str],
}

const UNARY: Shape = Shape { arity: 2, homs: &[(0, 1)], labels: &["r"] };
const BINARY: Shape = Shape { arity: 2, homs: &[(0, 1), (0, 1)], labels: &["a", "b"] };
const TERNARY: Shape = Shape { arity: 2, homs: &[(0, 1), (0, 1), (0, 1)], labels: &["a", "b", "c"] };
const CHAIN: Shape = Shape { arity: 3, homs: &[(0, 1), (1, 2)], labels: &["r", "s"] };
const MONO_LEFT: Shape = Shape { arity: 3, homs: &[(0, 1), (0, 1), (1, 2)], labels: &["r", "r2", "s"] };
const MONO_RIGHT: Shape = Shape { arity: 3, homs: &[(0, 1), (1, 2), (1, 2)], labels: &["r", "s", "s2"] };
const MODULAR: Shape = Shape { arity: 3, homs: &[(0, 1), (1, 2), (0, 2)], labels: &["r", "s", "t"] };

/// Verdict of one law over its swept inputs.
#[derive(Debug, Clone, Serialize)]
pub struct LawReport {
    pub law: String,
    pub verdict: Verdict,
    pub checked: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub laws: Vec<LawReport>,
}

impl SuiteReport {
    pub fn overall(&self) -> Verdict {
        Verdict::all(self.laws.iter().map(|l| l.verdict.clone()))
    }

    pub fn get(&self, law: &str) -> Option<&Verdict> {
        self.laws.iter().find(|l| l.law == law).map(|l| &l.verdict)
    }
}

/// Errors inside a single check become `Unknown` so that a sweep still
/// reports every law.
pub fn lift(r: Result<Verdict>) -> Verdict {
    r.unwrap_or_else(|e| Verdict::unknown(e.to_string()))
}

fn implies(premise: Verdict, then: impl FnOnce() -> Result<Verdict>) -> Result<Verdict> {
    match premise {
        Verdict::Holds => then(),
        Verdict::Fails { .. } => Ok(Verdict::Holds),
        unknown => Ok(unknown),
    }
}

fn inputs_for<C: Category + ?Sized>(
    v: &QuotientView<'_, C>,
    region: &Region<C::Ob>,
    shape: &Shape,
) -> Result<Vec<Vec<Span<C::Mor>>>> {
    let mut out = Vec::new();
    let n = region.exhaustive.len();
    let mut idx = vec![0usize; shape.arity];
    if n > 0 {
        'tuples: loop {
            let objs: Vec<&C::Ob> = idx.iter().map(|&i| &region.exhaustive[i]).collect();
            let mut lists = Vec::new();
            for &(s, t) in shape.homs {
                lists.push(v.hom_classes(objs[s], objs[t])?.classes);
            }
            cartesian(&lists, &mut out);
            for pos in (0..shape.arity).rev() {
                idx[pos] += 1;
                if idx[pos] < n {
                    continue 'tuples;
                }
                idx[pos] = 0;
            }
            break;
        }
    }
    if region.samples > 0 && region.has_large() {
        let mut rng = ChaCha8Rng::seed_from_u64(region.seed);
        for _ in 0..region.samples {
            let objs = region.draw(&mut rng, shape.arity);
            let mut item = Vec::new();
            for &(s, t) in shape.homs {
                let list = v.hom_classes(&objs[s], &objs[t])?.classes;
                if list.is_empty() {
                    break;
                }
                item.push(list[rng.gen_range(0..list.len())].clone());
            }
            if item.len() == shape.homs.len() {
                out.push(item);
            }
        }
    }
    Ok(out)
}

fn cartesian<M: Clone>(lists: &[Vec<Span<M>>], out: &mut Vec<Vec<Span<M>>>) {
    let mut acc: Vec<Vec<Span<M>>> = vec![Vec::new()];
    for list in lists {
        let mut next = Vec::with_capacity(acc.len() * list.len());
        for prefix in &acc {
            for s in list {
                let mut p = prefix.clone();
                p.push(s.clone());
                next.push(p);
            }
        }
        acc = next;
    }
    out.extend(acc);
}

fn sweep_law<C, F>(
    v: &QuotientView<'_, C>,
    region: &Region<C::Ob>,
    exec: Exec,
    law: &str,
    equation: &str,
    shapes: &[&Shape],
    check: F,
) -> Result<LawReport>
where
    C: Category + ?Sized,
    F: Fn(usize, &[Span<C::Mor>]) -> Result<Verdict> + Sync + Send,
{
    let mut items: Vec<(usize, Vec<Span<C::Mor>>)> = Vec::new();
    for (k, shape) in shapes.iter().enumerate() {
        items.extend(inputs_for(v, region, shape)?.into_iter().map(|it| (k, it)));
    }
    let c = v.c;
    let verdict = exec.all(&items, |(k, it)| match lift(check(*k, it)) {
        Verdict::Fails { witness } => {
            let mut w = Witness::new(equation).text("detail", witness.equation.clone());
            for (label, s) in shapes[*k].labels.iter().zip(it) {
                w = w.text(*label, format_span(c, s));
            }
            Verdict::fails(w)
        }
        other => other,
    });
    Ok(LawReport { law: law.to_string(), verdict, checked: items.len() })
}

/// Meet-semilattice laws and the derived order on each swept hom-set.
pub fn check_order<C: Category + ?Sized>(v: &QuotientView<'_, C>, region: &Region<C::Ob>, exec: Exec) -> Result<Vec<LawReport>> {
    Ok(vec![
        sweep_law(v, region, exec, "meet-idempotent", "r ∧ r = r", &[&UNARY], |_, x| {
            v.eq(&v.meet(&x[0], &x[0])?, &x[0])
        })?,
        sweep_law(v, region, exec, "meet-commutative", "a ∧ b = b ∧ a", &[&BINARY], |_, x| {
            v.eq(&v.meet(&x[0], &x[1])?, &v.meet(&x[1], &x[0])?)
        })?,
        sweep_law(v, region, exec, "meet-associative", "(a ∧ b) ∧ c = a ∧ (b ∧ c)", &[&TERNARY], |_, x| {
            let l = v.meet(&v.meet(&x[0], &x[1])?, &x[2])?;
            let r = v.meet(&x[0], &v.meet(&x[1], &x[2])?)?;
            v.eq(&l, &r)
        })?,
        sweep_law(v, region, exec, "meet-glb", "a ∧ b is the greatest lower bound of a, b", &[&TERNARY], |_, x| {
            let m = v.meet(&x[0], &x[1])?;
            let lower = v.le(&m, &x[0])?.and(v.le(&m, &x[1])?);
            let premise = v.le(&x[2], &x[0])?.and(v.le(&x[2], &x[1])?);
            Ok(lower.and(implies(premise, || v.le(&x[2], &m))?))
        })?,
    ])
}

/// Involution laws: involutive, meet-preserving, order-reversing on
/// composites.
pub fn check_involution<C: Category + ?Sized>(
    v: &QuotientView<'_, C>,
    region: &Region<C::Ob>,
    exec: Exec,
) -> Result<Vec<LawReport>> {
    Ok(vec![
        sweep_law(v, region, exec, "involution-involutive", "r°° = r", &[&UNARY], |_, x| {
            v.eq(&v.inv(&v.inv(&x[0])?)?, &x[0])
        })?,
        sweep_law(v, region, exec, "involution-preserves-meets", "(a ∧ b)° = a° ∧ b°", &[&BINARY], |_, x| {
            v.eq(&v.inv(&v.meet(&x[0], &x[1])?)?, &v.meet(&v.inv(&x[0])?, &v.inv(&x[1])?)?)
        })?,
        sweep_law(v, region, exec, "involution-reverses-composition", "(s∘r)° = r°∘s°", &[&CHAIN], |_, x| {
            let l = v.inv(&v.compose(&x[1], &x[0])?)?;
            let r = v.compose(&v.inv(&x[0])?, &v.inv(&x[1])?)?;
            v.eq(&l, &r)
        })?,
    ])
}

/// Identity laws and monotonicity of composition in each argument.
pub fn check_composition<C: Category + ?Sized>(
    v: &QuotientView<'_, C>,
    region: &Region<C::Ob>,
    exec: Exec,
) -> Result<Vec<LawReport>> {
    let c = v.c;
    Ok(vec![
        sweep_law(v, region, exec, "composition-identity", "1∘r = r = r∘1", &[&UNARY], |_, x| {
            let r = &x[0];
            let left = v.compose(&v.identity(&r.target(c))?, r)?;
            let right = v.compose(r, &v.identity(&r.source(c))?)?;
            Ok(v.eq(&left, r)?.and(v.eq(&right, r)?))
        })?,
        sweep_law(
            v,
            region,
            exec,
            "composition-monotone",
            "r ≤ r2 ⇒ s∘r ≤ s∘r2 and s ≤ s2 ⇒ s∘r ≤ s2∘r",
            &[&MONO_LEFT, &MONO_RIGHT],
            |k, x| {
                if k == 0 {
                    let (r, r2, s) = (&x[0], &x[1], &x[2]);
                    implies(v.le(r, r2)?, || v.le(&v.compose(s, r)?, &v.compose(s, r2)?))
                } else {
                    let (r, s, s2) = (&x[0], &x[1], &x[2]);
                    implies(v.le(s, s2)?, || v.le(&v.compose(s, r)?, &v.compose(s2, r)?))
                }
            },
        )?,
    ])
}

/// The modular law `(s∘r) ∧ t ≤ s∘(r ∧ (s°∘t))` and its special case
/// `r ≤ r∘r°∘r`.
pub fn check_modular<C: Category + ?Sized>(
    v: &QuotientView<'_, C>,
    region: &Region<C::Ob>,
    exec: Exec,
) -> Result<Vec<LawReport>> {
    Ok(vec![
        sweep_law(v, region, exec, "modular", "(s∘r) ∧ t ≤ s∘(r ∧ (s°∘t))", &[&MODULAR], |_, x| {
            let (r, s, t) = (&x[0], &x[1], &x[2]);
            let lhs = v.meet(&v.compose(s, r)?, t)?;
            let rhs = v.compose(s, &v.meet(r, &v.compose(&v.inv(s)?, t)?)?)?;
            v.le(&lhs, &rhs)
        })?,
        sweep_law(v, region, exec, "special-modular", "r ≤ r∘r°∘r", &[&UNARY], |_, x| {
            let r = &x[0];
            v.le(r, &v.compose(r, &v.compose(&v.inv(r)?, r)?)?)
        })?,
    ])
}

/// Every allegory law over the region.
pub fn allegory_suite<C: Category + ?Sized>(
    v: &QuotientView<'_, C>,
    region: &Region<C::Ob>,
    exec: Exec,
) -> Result<SuiteReport> {
    let mut laws = check_order(v, region, exec)?;
    laws.extend(check_involution(v, region, exec)?);
    laws.extend(check_composition(v, region, exec)?);
    laws.extend(check_modular(v, region, exec)?);
    Ok(SuiteReport { laws })
}

/// `(1, f) ∼ (f, f)∘(1, f)` for every sampled `f`.
pub fn check_allegorical_relation<C: Category + ?Sized>(v: &QuotientView<'_, C>, sample: &[C::Mor], exec: Exec) -> Verdict {
    let c = v.c;
    exec.all(sample, |f| {
        let g = graph(c, f);
        let verdict = lift(span_compose(c, &g, &Span::new(f.clone(), f.clone())).and_then(|k| v.eq(&g, &k)));
        match verdict {
            Verdict::Fails { .. } => Verdict::fails(
                Witness::new("(1, f) ≁ (f, f)∘(1, f)").text("f", c.format_mor(f)),
            ),
            other => other,
        }
    })
}

/// First projections of kernel pairs of the sampled morphisms whose apex
/// stays within `apex_cap`: up to isomorphic precomposition these are all
/// effective retractions with domain in the sample.
pub fn retraction_sample<C: Category + ?Sized>(c: &C, sample: &[C::Mor], apex_cap: usize) -> Vec<C::Mor> {
    let mut out = Vec::new();
    for f in sample {
        if let Ok(kp) = kernel_pair(c, f) {
            if c.size(&kp.apex) <= apex_cap && !out.contains(&kp.p1) {
                out.push(kp.p1);
            }
        }
    }
    out
}

/// Searches `z ∈ E` with `r∘z ∈ E`: first `z = 1`, then a section of `r`,
/// then every `z` into `dom r` from objects of bounded size.
pub fn find_criterion_witness<C: Category + ?Sized>(c: &C, e: &MorClass<C::Mor>, r: &C::Mor, bound: usize) -> Search<C::Mor> {
    let a = c.dom(r);
    let good = |z: &C::Mor| e.contains(c, z).and(e.contains(c, &c.compose_raw(r, z)));
    let id = c.identity(&a);
    if good(&id).is_holds() {
        return Search::Found(id);
    }
    if let Search::Found(s) = c.find_section(r) {
        if good(&s).is_holds() {
            return Search::Found(s);
        }
    }
    let bounded = e.restriction_closed(c);
    let limit = if bounded { c.size(&a) } else { bound };
    let mut undecided = false;
    for x in c.objects(limit) {
        if bounded && c.size(&x) > c.size(&a) {
            continue;
        }
        for z in c.hom(&x, &a) {
            match good(&z) {
                Verdict::Holds => return Search::Found(z),
                Verdict::Unknown { .. } => undecided = true,
                Verdict::Fails { .. } => {}
            }
        }
    }
    if bounded && !undecided && c.objects_complete(limit) {
        Search::Exhausted
    } else {
        Search::Bounded(format!("z searched over domains of size ≤ {limit}"))
    }
}

/// For every effective retraction `r` in the sample there is `z ∈ E` with
/// `r∘z ∈ E`. Fails carries the retraction.
pub fn check_allegorical_criterion<C: Category + ?Sized>(
    c: &C,
    e: &MorClass<C::Mor>,
    retractions: &[C::Mor],
    bound: usize,
    exec: Exec,
) -> Verdict {
    exec.all(retractions, |r| match c.is_effective_retraction(r) {
        Verdict::Holds => find_criterion_witness(c, e, r, bound).into_verdict(|| {
            Witness::new("no z ∈ E with r∘z ∈ E for the effective retraction r")
                .text("r", c.format_mor(r))
                .text("E", e.name.clone())
        }),
        Verdict::Fails { .. } => Verdict::Holds,
        unknown => unknown,
    })
}

/// Every sampled member of `m` is a monomorphism.
pub fn check_within_monos<C: Category + ?Sized>(c: &C, m: &MorClass<C::Mor>, sample: &[C::Mor], exec: Exec) -> Verdict {
    exec.all(sample, |f| {
        implies(m.contains(c, f), || {
            Ok(match c.is_mono(f) {
                Verdict::Fails { .. } => Verdict::fails(
                    Witness::new(format!("{} ⊄ monos", m.name)).text("f", c.format_mor(f)),
                ),
                other => other,
            })
        })
        .unwrap_or_else(|e| Verdict::unknown(e.to_string()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::{carrier, FactSystem};
    use crate::instances::finset::{parse_finfn, FinSet};
    use crate::quotient::Equivalence;

    fn view<'a>(c: &'a FinSet, system: &str) -> QuotientView<'a, FinSet> {
        QuotientView::new(c, Equivalence::Factorization(FactSystem::named(c, system).unwrap()), "simE", 2)
    }

    #[test]
    fn relations_pass_the_suite_exhaustively_at_size_two() {
        let c = FinSet::new(3);
        let v = view(&c, "surj-inj");
        let region = Region::new(&c, 2, 3, 40, 7);
        let report = allegory_suite(&v, &region, Exec::Parallel).unwrap();
        assert!(report.overall().is_holds(), "{:?}", report.overall());
        assert!(report.laws.iter().all(|l| l.checked > 0));
    }

    #[test]
    fn iso_quotient_breaks_meet_idempotence() {
        let c = FinSet::new(2);
        let v = view(&c, "iso-all");
        let region = Region::exhaustive_only(c.objects(2));
        let order = check_order(&v, &region, Exec::Sequential).unwrap();
        assert!(order[0].verdict.is_fails());
    }

    #[test]
    fn allegorical_relation_by_system() {
        let c = FinSet::new(3);
        let sample = carrier(&c, 3);
        assert!(check_allegorical_relation(&view(&c, "surj-inj"), &sample, Exec::Parallel).is_holds());
        let bad = check_allegorical_relation(&view(&c, "iso-all"), &[parse_finfn("2>1:0,0").unwrap()], Exec::Sequential);
        assert_eq!(bad.witness().unwrap().get("f"), Some("2>1:0,0"));
    }

    #[test]
    fn criterion_by_class() {
        let c = FinSet::new(3);
        let rs = retraction_sample(&c, &carrier(&c, 2), 4);
        assert!(!rs.is_empty());
        for name in ["splitEpis", "monos", "surjective", "all"] {
            let e = MorClass::builtin(&c, name).unwrap();
            assert!(check_allegorical_criterion(&c, &e, &rs, 3, Exec::Parallel).is_holds(), "{name}");
        }
        let isos = MorClass::builtin(&c, "isos").unwrap();
        let v = check_allegorical_criterion(&c, &isos, &rs, 3, Exec::Parallel);
        assert!(v.is_fails());
        assert!(v.witness().unwrap().get("r").is_some());
    }
}
