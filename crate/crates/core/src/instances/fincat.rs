//! The category of small finite categories and functors, restricted to a
//! generated corpus of categories (up to isomorphism) as its object stream.
//! Limits are computed componentwise on objects and morphisms.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::category::{Category, Product, ProductResult, Pullback, PullbackResult, Search};
use crate::error::{CatError, Result};
use crate::instances::table::{FiniteCategory, MorEntry};
use crate::verdict::{Verdict, Witness};

/// A functor between finite categories.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Functor {
    pub dom: Arc<FiniteCategory>,
    pub cod: Arc<FiniteCategory>,
    pub obj: Vec<usize>,
    pub mor: Vec<usize>,
}

impl fmt::Debug for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_functor(self))
    }
}

fn describe(c: &FiniteCategory) -> String {
    format!("{}o{}m", c.n_objects(), c.n_morphisms())
}

pub fn format_functor(f: &Functor) -> String {
    let objs: Vec<String> = f.obj.iter().map(|o| f.cod.objects[*o].clone()).collect();
    let mors: Vec<String> = f.mor.iter().map(|m| f.cod.morphisms[*m].id.clone()).collect();
    format!(
        "{}→{} [{}] [{}]",
        describe(&f.dom),
        describe(&f.cod),
        objs.join(","),
        mors.join(",")
    )
}

impl Functor {
    /// Whether the maps preserve dom/cod, identities and composition.
    pub fn is_valid(&self) -> bool {
        let (a, b) = (&self.dom, &self.cod);
        if self.obj.len() != a.n_objects() || self.mor.len() != a.n_morphisms() {
            return false;
        }
        for (f, &ff) in self.mor.iter().enumerate() {
            if b.dom(ff) != self.obj[a.dom(f)] || b.cod(ff) != self.obj[a.cod(f)] {
                return false;
            }
        }
        for (x, &id) in a.identities.iter().enumerate() {
            if self.mor[id] != b.identities[self.obj[x]] {
                return false;
            }
        }
        for g in 0..a.n_morphisms() {
            for f in 0..a.n_morphisms() {
                if let Some(gf) = a.compose(g, f) {
                    if b.compose(self.mor[g], self.mor[f]) != Some(self.mor[gf]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn then(&self, g: &Functor) -> Functor {
        Functor {
            dom: self.dom.clone(),
            cod: g.cod.clone(),
            obj: self.obj.iter().map(|&x| g.obj[x]).collect(),
            mor: self.mor.iter().map(|&m| g.mor[m]).collect(),
        }
    }

    pub fn identity(c: &Arc<FiniteCategory>) -> Functor {
        Functor {
            dom: c.clone(),
            cod: c.clone(),
            obj: (0..c.n_objects()).collect(),
            mor: (0..c.n_morphisms()).collect(),
        }
    }

    pub fn injective_on_objects(&self) -> bool {
        distinct(&self.obj)
    }

    pub fn surjective_on_objects(&self) -> bool {
        let img: BTreeSet<usize> = self.obj.iter().copied().collect();
        img.len() == self.cod.n_objects()
    }

    pub fn injective_on_morphisms(&self) -> bool {
        distinct(&self.mor)
    }

    /// Bijective on every hom-set `hom(x, y) → hom(Fx, Fy)`.
    pub fn fully_faithful(&self) -> bool {
        let (a, b) = (&self.dom, &self.cod);
        for x in 0..a.n_objects() {
            for y in 0..a.n_objects() {
                let mut image: Vec<usize> = a.hom(x, y).iter().map(|&f| self.mor[f]).collect();
                let n = image.len();
                image.sort_unstable();
                image.dedup();
                if image.len() != n || n != b.hom(self.obj[x], self.obj[y]).len() {
                    return false;
                }
            }
        }
        true
    }
}

fn distinct(v: &[usize]) -> bool {
    let set: BTreeSet<usize> = v.iter().copied().collect();
    set.len() == v.len()
}

/// Every functor `a → b`, in lexicographic order of (object map, morphism map).
pub fn functors(a: &Arc<FiniteCategory>, b: &Arc<FiniteCategory>) -> Vec<Functor> {
    let (na, nb) = (a.n_objects(), b.n_objects());
    let mut out = Vec::new();
    if nb == 0 {
        if na == 0 {
            out.push(Functor { dom: a.clone(), cod: b.clone(), obj: vec![], mor: vec![] });
        }
        return out;
    }
    let mut obj = vec![0usize; na];
    loop {
        // Morphism choices under this object map.
        let options: Vec<Vec<usize>> = (0..a.n_morphisms())
            .map(|f| {
                if a.is_identity(f) {
                    vec![b.identities[obj[a.dom(f)]]]
                } else {
                    b.hom(obj[a.dom(f)], obj[a.cod(f)])
                }
            })
            .collect();
        if options.iter().all(|o| !o.is_empty()) {
            let mut mor = vec![0usize; options.len()];
            let mut idx = vec![0usize; options.len()];
            'outer: loop {
                for (i, o) in options.iter().enumerate() {
                    mor[i] = o[idx[i]];
                }
                let cand = Functor { dom: a.clone(), cod: b.clone(), obj: obj.clone(), mor: mor.clone() };
                if cand.is_valid() {
                    out.push(cand);
                }
                let mut i = options.len();
                loop {
                    if i == 0 {
                        break 'outer;
                    }
                    i -= 1;
                    idx[i] += 1;
                    if idx[i] < options[i].len() {
                        break;
                    }
                    idx[i] = 0;
                }
            }
        }
        let mut i = na;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            obj[i] += 1;
            if obj[i] < nb {
                break;
            }
            obj[i] = 0;
        }
    }
}

/// Builds a category in the corpus naming scheme: objects `o{i}`,
/// identities `m0..m{n-1}`, non-identities after them.
fn build(n: usize, arrows: &[(usize, usize)], comp: &[usize], composable: &[(usize, usize)]) -> FiniteCategory {
    let total = n + arrows.len();
    let mut morphisms: Vec<MorEntry> = (0..n).map(|i| MorEntry { id: format!("m{i}"), dom: i, cod: i }).collect();
    for (k, &(d, c)) in arrows.iter().enumerate() {
        morphisms.push(MorEntry { id: format!("m{}", n + k), dom: d, cod: c });
    }
    let mut composition = vec![None; total * total];
    for f in 0..total {
        let (d, c) = (morphisms[f].dom, morphisms[f].cod);
        composition[f * total + d] = Some(f);
        composition[c * total + f] = Some(f);
    }
    for (&(g, f), &gf) in composable.iter().zip(comp) {
        composition[g * total + f] = Some(gf);
    }
    FiniteCategory {
        objects: (0..n).map(|i| format!("o{i}")).collect(),
        morphisms,
        identities: (0..n).collect(),
        composition,
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Canonical relabeling: the least re-encoding over object permutations and
/// orderings of the non-identity morphisms that keep arrows sorted by
/// (dom, cod).
fn canonical(cat: &FiniteCategory) -> FiniteCategory {
    canonical_with_relabeling(cat).0
}

/// The canonical relabeling together with the new index of every old
/// morphism (objects map through their identities).
fn canonical_with_relabeling(cat: &FiniteCategory) -> (FiniteCategory, Vec<usize>) {
    let n = cat.n_objects();
    let k = cat.n_morphisms() - n;
    let others: Vec<usize> = (0..cat.n_morphisms()).filter(|&m| !cat.identities.contains(&m)).collect();
    let mut best: Option<(FiniteCategory, Vec<usize>)> = None;
    for pi in permutations(n) {
        for sigma in permutations(k) {
            // New arrow j is old non-identity arrow others[sigma[j]].
            let arrows: Vec<(usize, usize)> = sigma
                .iter()
                .map(|&old| {
                    let m = &cat.morphisms[others[old]];
                    (pi[m.dom], pi[m.cod])
                })
                .collect();
            if arrows.windows(2).any(|w| w[0] > w[1]) {
                continue;
            }
            let mut new_of_old = vec![0usize; n + k];
            for (i, &id) in cat.identities.iter().enumerate() {
                new_of_old[id] = pi[i];
            }
            for (j, &old) in sigma.iter().enumerate() {
                new_of_old[others[old]] = n + j;
            }
            let total = n + k;
            let mut composition = vec![None; total * total];
            for g in 0..total {
                for f in 0..total {
                    if let Some(gf) = cat.compose(g, f) {
                        composition[new_of_old[g] * total + new_of_old[f]] = Some(new_of_old[gf]);
                    }
                }
            }
            let mut morphisms: Vec<MorEntry> = (0..n).map(|i| MorEntry { id: format!("m{i}"), dom: i, cod: i }).collect();
            for (j, &(d, c)) in arrows.iter().enumerate() {
                morphisms.push(MorEntry { id: format!("m{}", n + j), dom: d, cod: c });
            }
            let cand = FiniteCategory {
                objects: (0..n).map(|i| format!("o{i}")).collect(),
                morphisms,
                identities: (0..n).collect(),
                composition,
            };
            if best.as_ref().is_none_or(|b| cand < b.0) {
                best = Some((cand, new_of_old));
            }
        }
    }
    best.expect("at least the identity relabeling applies")
}

const CANONICAL_BUDGET: usize = 5040;

fn factorial(n: usize) -> usize {
    (1..=n).fold(1usize, |acc, i| acc.saturating_mul(i))
}

/// Every finite category with at most `max_objects` objects and
/// `max_morphisms` morphisms, one per isomorphism class, ordered by
/// (morphisms, objects, encoding).
pub fn corpus(max_objects: usize, max_morphisms: usize) -> Vec<FiniteCategory> {
    let mut found: BTreeSet<(usize, usize, FiniteCategory)> = BTreeSet::new();
    for n in 0..=max_objects {
        if n > max_morphisms {
            break;
        }
        for k in 0..=(max_morphisms - n) {
            if n == 0 && k > 0 {
                break;
            }
            let cells: Vec<(usize, usize)> = (0..n).flat_map(|d| (0..n).map(move |c| (d, c))).collect();
            // Non-decreasing arrow layouts.
            let mut layouts = Vec::new();
            let mut idx = vec![0usize; k];
            if cells.is_empty() && k > 0 {
                continue;
            }
            loop {
                layouts.push(idx.iter().map(|&i| cells[i]).collect::<Vec<_>>());
                let mut i = k;
                let mut advanced = false;
                while i > 0 {
                    i -= 1;
                    if idx[i] + 1 < cells.len() {
                        let v = idx[i] + 1;
                        for x in idx.iter_mut().skip(i) {
                            *x = v;
                        }
                        advanced = true;
                        break;
                    }
                }
                if !advanced {
                    break;
                }
            }
            for arrows in layouts {
                let total = n + k;
                let dom = |m: usize| if m < n { m } else { arrows[m - n].0 };
                let cod = |m: usize| if m < n { m } else { arrows[m - n].1 };
                let composable: Vec<(usize, usize)> = (n..total)
                    .flat_map(|g| (n..total).map(move |f| (g, f)))
                    .filter(|&(g, f)| cod(f) == dom(g))
                    .collect();
                let options: Vec<Vec<usize>> = composable
                    .iter()
                    .map(|&(g, f)| (0..total).filter(|&h| dom(h) == dom(f) && cod(h) == cod(g)).collect())
                    .collect();
                if options.iter().any(|o| o.is_empty()) {
                    continue;
                }
                let mut choice = vec![0usize; options.len()];
                loop {
                    let comp: Vec<usize> = choice.iter().zip(&options).map(|(&i, o)| o[i]).collect();
                    let cat = build(n, &arrows, &comp, &composable);
                    if cat.check().is_ok() {
                        let canon = canonical(&cat);
                        found.insert((canon.n_morphisms(), canon.n_objects(), canon));
                    }
                    let mut i = options.len();
                    let mut advanced = false;
                    while i > 0 {
                        i -= 1;
                        choice[i] += 1;
                        if choice[i] < options[i].len() {
                            advanced = true;
                            break;
                        }
                        choice[i] = 0;
                    }
                    if !advanced {
                        break;
                    }
                }
            }
        }
    }
    found.into_iter().map(|(_, _, c)| c).collect()
}

/// The arrow category `0 → 1`.
pub fn arrow_category() -> FiniteCategory {
    build(2, &[(0, 1)], &[], &[])
}

/// The category of finite categories on a bounded corpus.
#[derive(Debug, Clone)]
pub struct FinCat {
    corpus: Vec<Arc<FiniteCategory>>,
    max_objects: usize,
    max_morphisms: usize,
    terminal: Arc<FiniteCategory>,
    arrow: Arc<FiniteCategory>,
}

impl FinCat {
    pub fn new(max_objects: usize, max_morphisms: usize) -> Self {
        FinCat {
            corpus: corpus(max_objects, max_morphisms).into_iter().map(Arc::new).collect(),
            max_objects,
            max_morphisms,
            terminal: Arc::new(canonical(&FiniteCategory::discrete(1))),
            arrow: Arc::new(arrow_category()),
        }
    }

    pub fn corpus(&self) -> &[Arc<FiniteCategory>] {
        &self.corpus
    }

    /// Index of the pair `(x, y)` among the apex objects of a limit whose
    /// projections are `p1`, `p2`.
    fn locate(p1: &[usize], p2: &[usize], x: usize, y: usize) -> Option<usize> {
        p1.iter().zip(p2).position(|(&a, &b)| (a, b) == (x, y))
    }

    /// Componentwise limit of `f: A → C`, `g: B → C` (or the product when
    /// both are `None`).
    fn componentwise(
        a: &Arc<FiniteCategory>,
        b: &Arc<FiniteCategory>,
        over: Option<(&Functor, &Functor)>,
    ) -> (Arc<FiniteCategory>, Functor, Functor) {
        let agree_obj = |x: usize, y: usize| over.is_none_or(|(f, g)| f.obj[x] == g.obj[y]);
        let agree_mor = |u: usize, v: usize| over.is_none_or(|(f, g)| f.mor[u] == g.mor[v]);
        let objs: Vec<(usize, usize)> = (0..a.n_objects())
            .flat_map(|x| (0..b.n_objects()).map(move |y| (x, y)))
            .filter(|&(x, y)| agree_obj(x, y))
            .collect();
        let mors: Vec<(usize, usize)> = (0..a.n_morphisms())
            .flat_map(|u| (0..b.n_morphisms()).map(move |v| (u, v)))
            .filter(|&(u, v)| agree_mor(u, v))
            .collect();
        let obj_at = |x: usize, y: usize| objs.binary_search(&(x, y)).unwrap();
        let mor_at = |u: usize, v: usize| mors.binary_search(&(u, v)).unwrap();
        let total = mors.len();
        let mut composition = vec![None; total * total];
        for (gi, &(g1, g2)) in mors.iter().enumerate() {
            for (fi, &(f1, f2)) in mors.iter().enumerate() {
                if let (Some(h1), Some(h2)) = (a.compose(g1, f1), b.compose(g2, f2)) {
                    composition[gi * total + fi] = Some(mor_at(h1, h2));
                }
            }
        }
        let raw = FiniteCategory {
            objects: objs
                .iter()
                .map(|&(x, y)| format!("({},{})", a.objects[x], b.objects[y]))
                .collect(),
            morphisms: mors
                .iter()
                .map(|&(u, v)| MorEntry {
                    id: format!("({},{})", a.morphisms[u].id, b.morphisms[v].id),
                    dom: obj_at(a.dom(u), b.dom(v)),
                    cod: obj_at(a.cod(u), b.cod(v)),
                })
                .collect(),
            identities: objs
                .iter()
                .map(|&(x, y)| mor_at(a.identities[x], b.identities[y]))
                .collect(),
            composition,
        };
        // Relabel small apexes canonically so that iterated limits land on
        // corpus objects instead of ever-new isomorphic copies.
        let k = total - objs.len();
        let (apex, new_of_old) = if factorial(objs.len()).saturating_mul(factorial(k)) <= CANONICAL_BUDGET {
            canonical_with_relabeling(&raw)
        } else {
            (raw, (0..total).collect())
        };
        let apex = Arc::new(apex);
        let mut obj = (vec![0; objs.len()], vec![0; objs.len()]);
        for (i, &(x, y)) in objs.iter().enumerate() {
            let j = apex.dom(new_of_old[mor_at(a.identities[x], b.identities[y])]);
            obj.0[j] = x;
            obj.1[j] = y;
            debug_assert_eq!(i, obj_at(x, y));
        }
        let mut mor = (vec![0; total], vec![0; total]);
        for (i, &(u, v)) in mors.iter().enumerate() {
            mor.0[new_of_old[i]] = u;
            mor.1[new_of_old[i]] = v;
        }
        let p1 = Functor { dom: apex.clone(), cod: a.clone(), obj: obj.0, mor: mor.0 };
        let p2 = Functor { dom: apex.clone(), cod: b.clone(), obj: obj.1, mor: mor.1 };
        (apex, p1, p2)
    }

    fn pair_into(apex: &Arc<FiniteCategory>, p1: &Functor, p2: &Functor, u: &Functor, v: &Functor) -> Result<Functor> {
        let mut obj = Vec::with_capacity(u.obj.len());
        for (&x, &y) in u.obj.iter().zip(&v.obj) {
            obj.push(Self::locate(&p1.obj, &p2.obj, x, y).ok_or_else(|| {
                CatError::LimitUnavailable("functors do not form a cone".into())
            })?);
        }
        let mut mor = Vec::with_capacity(u.mor.len());
        for (&x, &y) in u.mor.iter().zip(&v.mor) {
            mor.push(Self::locate(&p1.mor, &p2.mor, x, y).ok_or_else(|| {
                CatError::LimitUnavailable("functors do not form a cone".into())
            })?);
        }
        Ok(Functor { dom: u.dom.clone(), cod: apex.clone(), obj, mor })
    }

    /// Looks for two distinct functors `X → dom m` from corpus objects that
    /// `m` equalizes.
    pub fn find_equalized_pair(&self, m: &Functor) -> Option<(Functor, Functor)> {
        for x in &self.corpus {
            let hom = functors(x, &m.dom);
            for (i, u) in hom.iter().enumerate() {
                for v in &hom[i + 1..] {
                    if u.then(m) == v.then(m) {
                        return Some((u.clone(), v.clone()));
                    }
                }
            }
        }
        None
    }
}

impl Category for FinCat {
    type Ob = Arc<FiniteCategory>;
    type Mor = Functor;

    fn name(&self) -> String {
        format!("fincat(max-objects={}, max-morphisms={})", self.max_objects, self.max_morphisms)
    }

    fn dom(&self, f: &Functor) -> Arc<FiniteCategory> {
        f.dom.clone()
    }

    fn cod(&self, f: &Functor) -> Arc<FiniteCategory> {
        f.cod.clone()
    }

    fn identity(&self, a: &Arc<FiniteCategory>) -> Functor {
        Functor::identity(a)
    }

    fn compose_raw(&self, g: &Functor, f: &Functor) -> Functor {
        f.then(g)
    }

    fn hom(&self, a: &Arc<FiniteCategory>, b: &Arc<FiniteCategory>) -> Vec<Functor> {
        functors(a, b)
    }

    fn objects(&self, bound: usize) -> Vec<Arc<FiniteCategory>> {
        self.corpus.iter().filter(|c| c.n_morphisms() <= bound).cloned().collect()
    }

    fn objects_complete(&self, bound: usize) -> bool {
        bound <= self.max_objects.min(self.max_morphisms)
    }

    fn size(&self, a: &Arc<FiniteCategory>) -> usize {
        a.n_morphisms()
    }

    fn probe_bound(&self) -> usize {
        self.max_morphisms
    }

    fn terminal(&self) -> Result<Arc<FiniteCategory>> {
        Ok(self.terminal.clone())
    }

    fn bang(&self, a: &Arc<FiniteCategory>) -> Result<Functor> {
        Ok(Functor {
            dom: a.clone(),
            cod: self.terminal.clone(),
            obj: vec![0; a.n_objects()],
            mor: vec![0; a.n_morphisms()],
        })
    }

    fn product(&self, a: &Arc<FiniteCategory>, b: &Arc<FiniteCategory>) -> Result<Product<Self>> {
        let (apex, pi1, pi2) = Self::componentwise(a, b, None);
        Ok(ProductResult { apex, left: a.clone(), right: b.clone(), pi1, pi2 })
    }

    fn pair(&self, pr: &Product<Self>, f: &Functor, g: &Functor) -> Result<Functor> {
        Self::pair_into(&pr.apex, &pr.pi1, &pr.pi2, f, g)
    }

    fn pullback(&self, f: &Functor, g: &Functor) -> Result<Pullback<Self>> {
        if f.cod != g.cod {
            return Err(CatError::CodomainMismatch {
                f: format_functor(f),
                g: format_functor(g),
                cod_f: describe(&f.cod),
                cod_g: describe(&g.cod),
            });
        }
        let (apex, p1, p2) = Self::componentwise(&f.dom, &g.dom, Some((f, g)));
        Ok(PullbackResult { apex, f: f.clone(), g: g.clone(), p1, p2 })
    }

    fn mediate(&self, pb: &Pullback<Self>, u: &Functor, v: &Functor) -> Result<Functor> {
        Self::pair_into(&pb.apex, &pb.p1, &pb.p2, u, v)
    }

    fn format_mor(&self, f: &Functor) -> String {
        format_functor(f)
    }

    fn is_mono(&self, f: &Functor) -> Verdict {
        // Functors out of the arrow category detect morphisms.
        for (i, &x) in f.mor.iter().enumerate() {
            if let Some(j) = f.mor[..i].iter().position(|&y| y == x) {
                let pick = |m: usize| Functor {
                    dom: self.arrow.clone(),
                    cod: f.dom.clone(),
                    obj: vec![f.dom.dom(m), f.dom.cod(m)],
                    mor: vec![f.dom.identities[f.dom.dom(m)], f.dom.identities[f.dom.cod(m)], m],
                };
                return Verdict::fails(
                    Witness::new("f∘u = f∘v with u ≠ v")
                        .text("f", format_functor(f))
                        .text("u", format_functor(&pick(j)))
                        .text("v", format_functor(&pick(i))),
                );
            }
        }
        Verdict::Holds
    }

    fn find_inverse(&self, f: &Functor) -> Search<Functor> {
        if f.dom.n_objects() != f.cod.n_objects()
            || f.dom.n_morphisms() != f.cod.n_morphisms()
            || !f.injective_on_objects()
            || !f.injective_on_morphisms()
        {
            return Search::Exhausted;
        }
        let mut obj = vec![0; f.obj.len()];
        for (x, &y) in f.obj.iter().enumerate() {
            obj[y] = x;
        }
        let mut mor = vec![0; f.mor.len()];
        for (x, &y) in f.mor.iter().enumerate() {
            mor[y] = x;
        }
        Search::Found(Functor { dom: f.cod.clone(), cod: f.dom.clone(), obj, mor })
    }

    fn builtin_member(&self, name: &str, f: &Functor) -> Option<bool> {
        Some(match name {
            "bijObj" => f.injective_on_objects() && f.surjective_on_objects(),
            "surjObj" => f.surjective_on_objects(),
            "injObj" => f.injective_on_objects(),
            "ff" => f.fully_faithful(),
            "ffInjObj" => f.fully_faithful() && f.injective_on_objects(),
            _ => return None,
        })
    }

    fn builtin_names(&self) -> Vec<&'static str> {
        vec!["bijObj", "surjObj", "injObj", "ff", "ffInjObj"]
    }

    fn systems(&self) -> Vec<&'static str> {
        vec!["bijObj-ff", "surjObj-ffInjObj"]
    }

    fn system_classes(&self, system: &str) -> Option<(&'static str, &'static str)> {
        match system {
            "bijObj-ff" => Some(("bijObj", "ff")),
            "surjObj-ffInjObj" => Some(("surjObj", "ffInjObj")),
            _ => None,
        }
    }

    fn factor(&self, system: &str, f: &Functor) -> Option<(Functor, Functor)> {
        let (a, b) = (&f.dom, &f.cod);
        match system {
            "bijObj-ff" => {
                // Objects of A, hom-sets pulled back from B.
                let mut mors: Vec<(usize, usize, usize)> = Vec::new();
                for x in 0..a.n_objects() {
                    for y in 0..a.n_objects() {
                        for h in b.hom(f.obj[x], f.obj[y]) {
                            mors.push((x, y, h));
                        }
                    }
                }
                let at = |x: usize, y: usize, h: usize| mors.binary_search(&(x, y, h)).unwrap();
                let total = mors.len();
                let mut composition = vec![None; total * total];
                for (gi, &(gx, gy, gh)) in mors.iter().enumerate() {
                    for (fi, &(fx, fy, fh)) in mors.iter().enumerate() {
                        if fy == gx {
                            composition[gi * total + fi] = Some(at(fx, gy, b.compose(gh, fh).unwrap()));
                        }
                    }
                }
                let mid = Arc::new(FiniteCategory {
                    objects: a.objects.clone(),
                    morphisms: mors
                        .iter()
                        .map(|&(x, y, h)| MorEntry { id: format!("{}:{}", b.morphisms[h].id, x * a.n_objects() + y), dom: x, cod: y })
                        .collect(),
                    identities: (0..a.n_objects())
                        .map(|x| at(x, x, b.identities[f.obj[x]]))
                        .collect(),
                    composition,
                });
                let e = Functor {
                    dom: a.clone(),
                    cod: mid.clone(),
                    obj: (0..a.n_objects()).collect(),
                    mor: (0..a.n_morphisms()).map(|u| at(a.dom(u), a.cod(u), f.mor[u])).collect(),
                };
                let m = Functor {
                    dom: mid,
                    cod: b.clone(),
                    obj: f.obj.clone(),
                    mor: mors.iter().map(|t| t.2).collect(),
                };
                Some((e, m))
            }
            "surjObj-ffInjObj" => {
                // The full subcategory of B on the object image.
                let img: Vec<usize> = f.obj.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
                let keep: Vec<usize> = (0..b.n_morphisms())
                    .filter(|&h| img.contains(&b.dom(h)) && img.contains(&b.cod(h)))
                    .collect();
                let oi = |y: usize| img.binary_search(&y).unwrap();
                let mi = |h: usize| keep.binary_search(&h).unwrap();
                let total = keep.len();
                let mut composition = vec![None; total * total];
                for (gi, &g) in keep.iter().enumerate() {
                    for (fi, &h) in keep.iter().enumerate() {
                        if let Some(gh) = b.compose(g, h) {
                            composition[gi * total + fi] = Some(mi(gh));
                        }
                    }
                }
                let mid = Arc::new(FiniteCategory {
                    objects: img.iter().map(|&y| b.objects[y].clone()).collect(),
                    morphisms: keep
                        .iter()
                        .map(|&h| MorEntry { id: b.morphisms[h].id.clone(), dom: oi(b.dom(h)), cod: oi(b.cod(h)) })
                        .collect(),
                    identities: img.iter().map(|&y| mi(b.identities[y])).collect(),
                    composition,
                });
                let e = Functor {
                    dom: a.clone(),
                    cod: mid.clone(),
                    obj: f.obj.iter().map(|&y| oi(y)).collect(),
                    mor: f.mor.iter().map(|&h| mi(h)).collect(),
                };
                let m = Functor { dom: mid, cod: b.clone(), obj: img.clone(), mor: keep.clone() };
                Some((e, m))
            }
            _ => None,
        }
    }
}
