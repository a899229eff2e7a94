//! Finite sets and total functions. Objects are cardinalities `n` standing
//! for `{0, …, n−1}`; chosen limits use lexicographically ordered tuples.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::category::{Category, Product, Pullback, PullbackResult, ProductResult, Search};
use crate::error::{CatError, Result};
use crate::span::Span;
use crate::verdict::{Verdict, Witness};

/// A total function `{0..dom} → {0..cod}` stored as its value table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FinFn {
    pub cod: usize,
    pub table: Vec<usize>,
}

impl FinFn {
    pub fn new(cod: usize, table: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = table.iter().find(|&&v| v >= cod) {
            return Err(CatError::parse(
                format!("{table:?}"),
                format!("value {bad} out of range for codomain {cod}"),
            ));
        }
        Ok(FinFn { cod, table })
    }

    pub fn dom(&self) -> usize {
        self.table.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn identity(n: usize) -> Self {
        FinFn { cod: n, table: (0..n).collect() }
    }

    pub fn constant(dom: usize, cod: usize, value: usize) -> Self {
        FinFn { cod, table: vec![value; dom] }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod];
        self.table.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod];
        for &v in &self.table {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijective(&self) -> bool {
        self.dom() == self.cod && self.is_injective()
    }

    /// Sorted image.
    pub fn image(&self) -> Vec<usize> {
        let mut img = self.table.clone();
        img.sort_unstable();
        img.dedup();
        img
    }

    /// Preimage sizes indexed by codomain element.
    pub fn fiber_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.cod];
        for &v in &self.table {
            sizes[v] += 1;
        }
        sizes
    }

    /// `self∘f`.
    pub fn after(&self, f: &FinFn) -> FinFn {
        FinFn {
            cod: self.cod,
            table: f.table.iter().map(|&x| self.table[x]).collect(),
        }
    }
}

impl fmt::Debug for FinFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_finfn(self))
    }
}

/// `dom>cod:v0,v1,…`
pub fn format_finfn(f: &FinFn) -> String {
    let vals: Vec<String> = f.table.iter().map(|v| v.to_string()).collect();
    format!("{}>{}:{}", f.dom(), f.cod, vals.join(","))
}

/// A relation `dom → cod` as a sorted, duplicate-free list of pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationJson {
    pub dom: usize,
    pub cod: usize,
    pub pairs: Vec<(usize, usize)>,
}

impl RelationJson {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let rel: RelationJson =
            serde_json::from_str(s).map_err(|e| CatError::parse(format!("line {}", e.line()), e.to_string()))?;
        rel.check()?;
        Ok(rel)
    }

    pub fn check(&self) -> Result<()> {
        for (i, &(a, b)) in self.pairs.iter().enumerate() {
            if a >= self.dom || b >= self.cod {
                return Err(CatError::parse(format!("pairs[{i}]"), format!("({a}, {b}) out of range")));
            }
            if i > 0 && self.pairs[i - 1] >= (a, b) {
                return Err(CatError::parse(format!("pairs[{i}]"), "pairs must be sorted and distinct"));
            }
        }
        Ok(())
    }

    /// The jointly monic span whose apex enumerates the pairs.
    pub fn to_span(&self) -> Span<FinFn> {
        Span::new(
            FinFn { cod: self.dom, table: self.pairs.iter().map(|p| p.0).collect() },
            FinFn { cod: self.cod, table: self.pairs.iter().map(|p| p.1).collect() },
        )
    }

    /// The image of a span's pairing.
    pub fn from_span(s: &Span<FinFn>) -> Self {
        let mut pairs: Vec<(usize, usize)> = s.left.table.iter().copied().zip(s.right.table.iter().copied()).collect();
        pairs.sort_unstable();
        pairs.dedup();
        RelationJson { dom: s.left.cod, cod: s.right.cod, pairs }
    }
}

pub fn parse_finfn(s: &str) -> Result<FinFn> {
    let s = s.trim();
    let (head, vals) = s
        .split_once(':')
        .ok_or_else(|| CatError::parse(s, "expected `dom>cod:v0,v1,…`"))?;
    let (d, c) = head
        .split_once('>')
        .ok_or_else(|| CatError::parse(s, "expected `dom>cod` before ':'"))?;
    let dom: usize = d.trim().parse().map_err(|_| CatError::parse(s, "bad domain"))?;
    let cod: usize = c.trim().parse().map_err(|_| CatError::parse(s, "bad codomain"))?;
    let table: Vec<usize> = if vals.trim().is_empty() {
        Vec::new()
    } else {
        vals.split(',')
            .map(|v| v.trim().parse().map_err(|_| CatError::parse(s, format!("bad value `{v}`"))))
            .collect::<Result<_>>()?
    };
    if table.len() != dom {
        return Err(CatError::parse(s, format!("table has {} entries, domain is {dom}", table.len())));
    }
    FinFn::new(cod, table)
}

/// Every function `m → n` in lexicographic order of value tables.
pub fn all_functions(m: usize, n: usize) -> Vec<FinFn> {
    if n == 0 {
        return if m == 0 { vec![FinFn::identity(0)] } else { Vec::new() };
    }
    let total = n.checked_pow(m as u32).expect("hom-set too large to enumerate");
    let mut out = Vec::with_capacity(total);
    let mut table = vec![0usize; m];
    loop {
        out.push(FinFn { cod: n, table: table.clone() });
        // Increment with the last position least significant.
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            table[i] += 1;
            if table[i] < n {
                break;
            }
            table[i] = 0;
        }
    }
}

/// Injections `k → n` with increasing tables, i.e. the subsets of `n` of size `k`.
pub fn increasing_injections(k: usize, n: usize) -> Vec<FinFn> {
    fn go(start: usize, k: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<FinFn>) {
        if cur.len() == k {
            out.push(FinFn { cod: n, table: cur.clone() });
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            go(v + 1, k, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, k, n, &mut Vec::new(), &mut out);
    out
}

/// Largest apex for which subset enumeration is offered as a complete
/// sub-apex family.
const SUBSET_APEX_LIMIT: usize = 14;

/// The category of finite sets.
#[derive(Debug, Clone)]
pub struct FinSet {
    max_size: usize,
}

impl FinSet {
    pub fn new(max_size: usize) -> Self {
        FinSet { max_size }
    }

    pub fn max_size(&self) -> usize {
        self.max_size
    }

    /// Pairs `(x, y)` with `f(x) = g(y)` in lexicographic order.
    fn pullback_pairs(f: &FinFn, g: &FinFn) -> Vec<(usize, usize)> {
        let mut by_value: Vec<Vec<usize>> = vec![Vec::new(); f.cod];
        for (y, &v) in g.table.iter().enumerate() {
            by_value[v].push(y);
        }
        let mut pairs = Vec::new();
        for (x, &v) in f.table.iter().enumerate() {
            for &y in &by_value[v] {
                pairs.push((x, y));
            }
        }
        pairs
    }

    /// Closed-form effective-retraction decider. `r: K → A` is effective iff
    /// it is surjective and, for each fiber size `k`, the number of points of
    /// `A` whose fiber has size `k` is a multiple of `k`: points can then be
    /// grouped into equivalence classes of size `k` whose kernel pair has
    /// exactly those fibers.
    fn effective_closed_form(&self, r: &FinFn) -> Search<(FinFn, FinFn)> {
        let a = r.cod;
        if !r.is_surjective() {
            return Search::Exhausted;
        }
        let sizes = r.fiber_sizes();
        let mut by_size: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for (p, &k) in sizes.iter().enumerate() {
            by_size.entry(k).or_default().push(p);
        }
        // Class of each point, classes numbered by their least element.
        let mut class_of = vec![usize::MAX; a];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (&k, pts) in &by_size {
            if pts.len() % k != 0 {
                return Search::Exhausted;
            }
            for chunk in pts.chunks(k) {
                classes.push(chunk.to_vec());
            }
        }
        classes.sort();
        for (i, cls) in classes.iter().enumerate() {
            for &p in cls {
                class_of[p] = i;
            }
        }
        let f = FinFn { cod: classes.len(), table: class_of.clone() };
        // r' sends the j-th point of the fiber over p to the j-th member of p's class.
        let mut seen = vec![0usize; a];
        let mut r2 = Vec::with_capacity(r.dom());
        for &p in &r.table {
            let j = seen[p];
            seen[p] += 1;
            r2.push(classes[class_of[p]][j]);
        }
        Search::Found((FinFn { cod: a, table: r2 }, f))
    }
}

impl Default for FinSet {
    fn default() -> Self {
        FinSet::new(3)
    }
}

impl Category for FinSet {
    type Ob = usize;
    type Mor = FinFn;

    fn name(&self) -> String {
        format!("finset(max-size={})", self.max_size)
    }

    fn dom(&self, f: &FinFn) -> usize {
        f.dom()
    }

    fn cod(&self, f: &FinFn) -> usize {
        f.cod
    }

    fn identity(&self, a: &usize) -> FinFn {
        FinFn::identity(*a)
    }

    fn compose_raw(&self, g: &FinFn, f: &FinFn) -> FinFn {
        g.after(f)
    }

    fn hom(&self, a: &usize, b: &usize) -> Vec<FinFn> {
        all_functions(*a, *b)
    }

    fn objects(&self, bound: usize) -> Vec<usize> {
        (0..=bound).collect()
    }

    fn objects_complete(&self, _bound: usize) -> bool {
        true
    }

    fn size(&self, a: &usize) -> usize {
        *a
    }

    fn probe_bound(&self) -> usize {
        self.max_size
    }

    fn terminal(&self) -> Result<usize> {
        Ok(1)
    }

    fn bang(&self, a: &usize) -> Result<FinFn> {
        Ok(FinFn::constant(*a, 1, 0))
    }

    fn product(&self, a: &usize, b: &usize) -> Result<Product<Self>> {
        let n = a * b;
        Ok(ProductResult {
            apex: n,
            left: *a,
            right: *b,
            pi1: FinFn { cod: *a, table: (0..n).map(|i| i / b).collect() },
            pi2: FinFn { cod: *b, table: (0..n).map(|i| i % b).collect() },
        })
    }

    fn pair(&self, pr: &Product<Self>, f: &FinFn, g: &FinFn) -> Result<FinFn> {
        if f.dom() != g.dom() || f.cod != pr.left || g.cod != pr.right {
            return Err(CatError::LimitUnavailable(format!("cannot pair {f:?} and {g:?}")));
        }
        Ok(FinFn {
            cod: pr.apex,
            table: f.table.iter().zip(&g.table).map(|(&x, &y)| x * pr.right + y).collect(),
        })
    }

    fn pullback(&self, f: &FinFn, g: &FinFn) -> Result<Pullback<Self>> {
        if f.cod != g.cod {
            return Err(CatError::CodomainMismatch {
                f: format_finfn(f),
                g: format_finfn(g),
                cod_f: f.cod.to_string(),
                cod_g: g.cod.to_string(),
            });
        }
        let pairs = Self::pullback_pairs(f, g);
        let n = pairs.len();
        Ok(PullbackResult {
            apex: n,
            f: f.clone(),
            g: g.clone(),
            p1: FinFn { cod: f.dom(), table: pairs.iter().map(|p| p.0).collect() },
            p2: FinFn { cod: g.dom(), table: pairs.iter().map(|p| p.1).collect() },
        })
    }

    fn mediate(&self, pb: &Pullback<Self>, u: &FinFn, v: &FinFn) -> Result<FinFn> {
        let pairs: Vec<(usize, usize)> = pb.p1.table.iter().copied().zip(pb.p2.table.iter().copied()).collect();
        let mut table = Vec::with_capacity(u.dom());
        for (&x, &y) in u.table.iter().zip(&v.table) {
            match pairs.binary_search(&(x, y)) {
                Ok(i) => table.push(i),
                Err(_) => {
                    return Err(CatError::LimitUnavailable(format!(
                        "({u:?}, {v:?}) is not a cone over the cospan"
                    )))
                }
            }
        }
        Ok(FinFn { cod: pb.apex, table })
    }

    fn format_mor(&self, f: &FinFn) -> String {
        format_finfn(f)
    }

    fn parse_mor(&self, s: &str) -> Result<FinFn> {
        parse_finfn(s)
    }

    fn parse_ob(&self, s: &str) -> Result<usize> {
        s.trim().parse().map_err(|_| CatError::parse(s, "expected a cardinality"))
    }

    fn is_mono(&self, f: &FinFn) -> Verdict {
        let mut first = vec![usize::MAX; f.cod];
        for (x, &v) in f.table.iter().enumerate() {
            if first[v] != usize::MAX {
                let dom = f.dom();
                return Verdict::fails(
                    Witness::new("f∘u = f∘v with u ≠ v")
                        .text("f", format_finfn(f))
                        .text("u", format_finfn(&FinFn::constant(1, dom, first[v])))
                        .text("v", format_finfn(&FinFn::constant(1, dom, x))),
                );
            }
            first[v] = x;
        }
        Verdict::Holds
    }

    fn is_epi(&self, f: &FinFn) -> Verdict {
        let sizes = f.fiber_sizes();
        match sizes.iter().position(|&k| k == 0) {
            None => Verdict::Holds,
            Some(missed) => {
                let u = FinFn::constant(f.cod, 2, 0);
                let mut v = u.clone();
                v.table[missed] = 1;
                Verdict::fails(
                    Witness::new("u∘f = v∘f with u ≠ v")
                        .text("f", format_finfn(f))
                        .text("u", format_finfn(&u))
                        .text("v", format_finfn(&v)),
                )
            }
        }
    }

    fn find_section(&self, f: &FinFn) -> Search<FinFn> {
        if !f.is_surjective() {
            return Search::Exhausted;
        }
        let mut s = vec![usize::MAX; f.cod];
        for (x, &v) in f.table.iter().enumerate().rev() {
            s[v] = x;
        }
        Search::Found(FinFn { cod: f.dom(), table: s })
    }

    fn find_inverse(&self, f: &FinFn) -> Search<FinFn> {
        if !f.is_bijective() {
            return Search::Exhausted;
        }
        let mut inv = vec![0; f.cod];
        for (x, &v) in f.table.iter().enumerate() {
            inv[v] = x;
        }
        Search::Found(FinFn { cod: f.dom(), table: inv })
    }

    fn effective_retraction_witness(&self, r: &FinFn) -> Search<(FinFn, FinFn)> {
        self.effective_closed_form(r)
    }

    fn builtin_member(&self, name: &str, f: &FinFn) -> Option<bool> {
        Some(match name {
            "surjective" => f.is_surjective(),
            "injective" => f.is_injective(),
            "bijective" => f.is_bijective(),
            "equalFibers" => {
                let sizes = f.fiber_sizes();
                f.is_surjective() && sizes.windows(2).all(|w| w[0] == w[1])
            }
            "surjOntoSubterminal" => (f.is_surjective() && f.cod <= 1) || f.is_bijective(),
            _ => return None,
        })
    }

    fn builtin_names(&self) -> Vec<&'static str> {
        vec!["bijective", "injective", "surjective", "equalFibers", "surjOntoSubterminal"]
    }

    fn systems(&self) -> Vec<&'static str> {
        vec!["surj-inj", "iso-all", "all-iso"]
    }

    fn system_classes(&self, system: &str) -> Option<(&'static str, &'static str)> {
        match system {
            "surj-inj" => Some(("surjective", "injective")),
            "iso-all" => Some(("isos", "all")),
            "all-iso" => Some(("all", "isos")),
            _ => None,
        }
    }

    fn factor(&self, system: &str, f: &FinFn) -> Option<(FinFn, FinFn)> {
        match system {
            "surj-inj" => {
                let img = f.image();
                let e = FinFn {
                    cod: img.len(),
                    table: f.table.iter().map(|v| img.binary_search(v).unwrap()).collect(),
                };
                Some((e, FinFn { cod: f.cod, table: img }))
            }
            "iso-all" => Some((FinFn::identity(f.dom()), f.clone())),
            "all-iso" => Some((f.clone(), FinFn::identity(f.cod))),
            _ => None,
        }
    }

    fn normalize_span(&self, s: &Span<FinFn>) -> Span<FinFn> {
        let mut legs: Vec<(usize, usize)> = s.left.table.iter().copied().zip(s.right.table.iter().copied()).collect();
        legs.sort_unstable();
        Span::new(
            FinFn { cod: s.left.cod, table: legs.iter().map(|p| p.0).collect() },
            FinFn { cod: s.right.cod, table: legs.iter().map(|p| p.1).collect() },
        )
    }

    fn normal_forms_are_canonical(&self) -> bool {
        true
    }

    fn two_cells(&self, s1: &Span<FinFn>, s2: &Span<FinFn>) -> Vec<FinFn> {
        // For each point of the source apex, the target points over the same pair.
        let target_apex = s2.left.dom();
        let mut options: Vec<Vec<usize>> = Vec::with_capacity(s1.left.dom());
        for x in 0..s1.left.dom() {
            let (l, r) = (s1.left.table[x], s1.right.table[x]);
            let opts: Vec<usize> = (0..target_apex)
                .filter(|&y| s2.left.table[y] == l && s2.right.table[y] == r)
                .collect();
            if opts.is_empty() {
                return Vec::new();
            }
            options.push(opts);
        }
        let mut out = Vec::new();
        let mut idx = vec![0usize; options.len()];
        loop {
            out.push(FinFn {
                cod: target_apex,
                table: idx.iter().zip(&options).map(|(&i, o)| o[i]).collect(),
            });
            let mut i = options.len();
            loop {
                if i == 0 {
                    return out;
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

    fn spans_up_to(&self, a: &usize, b: &usize, apex_bound: usize) -> Vec<Span<FinFn>> {
        // A span up to vertical iso is a multiset of points of a×b.
        let cells = a * b;
        let mut out = Vec::new();
        for size in 0..=apex_bound {
            if cells == 0 && size > 0 {
                break;
            }
            let mut counts = vec![0usize; size];
            loop {
                out.push(Span::new(
                    FinFn { cod: *a, table: counts.iter().map(|i| i / b).collect() },
                    FinFn { cod: *b, table: counts.iter().map(|i| i % b).collect() },
                ));
                // Next non-decreasing sequence over 0..cells.
                let mut i = size;
                let mut advanced = false;
                while i > 0 {
                    i -= 1;
                    if counts[i] + 1 < cells {
                        let v = counts[i] + 1;
                        for c in counts.iter_mut().skip(i) {
                            *c = v;
                        }
                        advanced = true;
                        break;
                    }
                }
                if !advanced {
                    break;
                }
            }
        }
        out
    }

    fn m_relations(&self, system: &str, a: &usize, b: &usize) -> Option<Vec<Span<FinFn>>> {
        match system {
            "surj-inj" => {
                let cells = a * b;
                if cells > 20 {
                    return None;
                }
                let mut out = Vec::with_capacity(1 << cells);
                for mask in 0u32..(1u32 << cells) {
                    let pts: Vec<usize> = (0..cells).filter(|i| mask & (1 << i) != 0).collect();
                    out.push(Span::new(
                        FinFn { cod: *a, table: pts.iter().map(|i| i / b).collect() },
                        FinFn { cod: *b, table: pts.iter().map(|i| i % b).collect() },
                    ));
                }
                Some(out)
            }
            "all-iso" => {
                let pr = self.product(a, b).ok()?;
                Some(vec![Span::new(pr.pi1, pr.pi2)])
            }
            _ => None,
        }
    }

    fn sub_apexes(&self, p: &usize) -> Option<Vec<FinFn>> {
        if *p > SUBSET_APEX_LIMIT {
            return None;
        }
        // Largest and smallest first: they settle the common cases at once.
        let mut out = vec![FinFn::identity(*p)];
        if *p > 0 {
            out.push(FinFn { cod: *p, table: Vec::new() });
        }
        for k in 1..*p {
            out.extend(increasing_injections(k, *p));
        }
        Some(out)
    }

    fn witness_domains_bounded_by_target(&self, class: &str) -> bool {
        matches!(
            class,
            "isos" | "monos" | "epis" | "splitEpis" | "all" | "surjective" | "injective" | "bijective"
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{check_category_laws, check_pullback_universal, kernel_pair};

    #[test]
    fn hom_sizes_are_powers() {
        for m in 0..4 {
            for n in 0..4 {
                assert_eq!(all_functions(m, n).len(), n.pow(m as u32), "{m}→{n}");
            }
        }
    }

    #[test]
    fn swap_is_an_involution() {
        let c = FinSet::default();
        let swap = parse_finfn("2>2:1,0").unwrap();
        assert_eq!(c.compose_raw(&swap, &swap), FinFn::identity(2));
    }

    #[test]
    fn parse_round_trips() {
        for f in all_functions(2, 3) {
            assert_eq!(parse_finfn(&format_finfn(&f)).unwrap(), f);
        }
        assert_eq!(parse_finfn("0>2:").unwrap().dom(), 0);
        assert!(parse_finfn("2>1:0,1").is_err());
        assert!(parse_finfn("2>2:0").is_err());
    }

    #[test]
    fn laws_hold_on_small_objects() {
        let c = FinSet::default();
        assert!(check_category_laws(&c, &[0, 1, 2, 3]).is_holds());
    }

    #[test]
    fn pullback_sizes() {
        let c = FinSet::default();
        let f = parse_finfn("3>2:0,0,1").unwrap();
        assert_eq!(kernel_pair(&c, &f).unwrap().apex, 5);
        let u = FinFn::constant(2, 1, 0);
        let v = FinFn::constant(3, 1, 0);
        assert_eq!(c.pullback(&u, &v).unwrap().apex, 6);
        assert_eq!(kernel_pair(&c, &u).unwrap().apex, 4);
    }

    #[test]
    fn chosen_pullbacks_are_universal() {
        let c = FinSet::default();
        for f in all_functions(2, 2).into_iter().chain(all_functions(3, 2)) {
            for g in all_functions(2, 2) {
                let pb = c.pullback(&f, &g).unwrap();
                assert!(check_pullback_universal(&c, &pb, &[0, 1, 2]).is_holds());
            }
        }
    }

    #[test]
    fn mono_epi_match_tables() {
        let c = FinSet::default();
        for m in 0..4 {
            for n in 0..4 {
                for f in all_functions(m, n) {
                    assert_eq!(c.is_mono(&f).is_holds(), f.is_injective());
                    assert_eq!(c.is_epi(&f).is_holds(), f.is_surjective());
                }
            }
        }
    }

    #[test]
    fn empty_into_one_is_not_epi() {
        let c = FinSet::default();
        let f = FinFn::constant(0, 1, 0);
        let v = c.is_epi(&f);
        assert!(v.is_fails());
        assert_eq!(v.witness().unwrap().get("u"), Some("1>2:0"));
        assert_eq!(v.witness().unwrap().get("v"), Some("1>2:1"));
    }

    #[test]
    fn factor_constant_map() {
        let c = FinSet::default();
        let f = FinFn::constant(3, 3, 0);
        let (e, m) = c.factor("surj-inj", &f).unwrap();
        assert_eq!(e, FinFn::constant(3, 1, 0));
        assert_eq!(m, FinFn::constant(1, 3, 0));
    }

    #[test]
    fn two_by_one_is_split_but_not_effective() {
        let c = FinSet::default();
        let r = FinFn::constant(2, 1, 0);
        assert!(c.is_split_epi(&r).is_holds());
        assert!(c.is_effective_retraction(&r).is_fails());
        let kp = kernel_pair(&c, &r).unwrap();
        assert!(c.is_effective_retraction(&kp.p1).is_holds());
    }

    #[test]
    fn spans_up_to_counts_multisets() {
        let c = FinSet::default();
        // Multisets of size ≤ 2 over 4 cells: 1 + 4 + 10.
        assert_eq!(c.spans_up_to(&2, &2, 2).len(), 15);
        assert_eq!(c.spans_up_to(&0, &3, 2).len(), 1);
    }
}
