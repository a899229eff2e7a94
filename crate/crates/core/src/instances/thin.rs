//! Finite thin categories: posets with binary meets and a top element.
//! Products and pullbacks are meets, the terminal object is the top.

use std::fmt;

use crate::category::{Category, Product, ProductResult, Pullback, PullbackResult, Search};
use crate::error::{CatError, Result};
use crate::span::Span;
use crate::verdict::Verdict;

/// The unique arrow `src ≤ tgt`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub src: usize,
    pub tgt: usize,
}

impl fmt::Debug for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}≤{}", self.src, self.tgt)
    }
}

#[derive(Debug, Clone)]
pub struct Thin {
    label: String,
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<usize>>,
    top: usize,
}

impl Thin {
    /// Builds a thin category from its order relation, checking that it is a
    /// partial order with all binary meets and a top.
    pub fn from_order(label: &str, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = leq.len();
        if n == 0 || leq.iter().any(|row| row.len() != n) {
            return Err(CatError::Config("order must be a non-empty square matrix".into()));
        }
        for a in 0..n {
            if !leq[a][a] {
                return Err(CatError::Config(format!("not reflexive at {a}")));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(CatError::Config(format!("not antisymmetric at ({a}, {b})")));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return Err(CatError::Config(format!("not transitive at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let top = (0..n)
            .find(|&t| (0..n).all(|a| leq[a][t]))
            .ok_or_else(|| CatError::Config("no top element".into()))?;
        let mut meet = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&x| leq[x][a] && leq[x][b]).collect();
                meet[a][b] = *lower
                    .iter()
                    .find(|&&m| lower.iter().all(|&x| leq[x][m]))
                    .ok_or_else(|| CatError::Config(format!("no meet of {a} and {b}")))?;
            }
        }
        Ok(Thin { label: label.to_string(), leq, meet, top })
    }

    /// `0 ≤ 1 ≤ … ≤ n−1`.
    pub fn chain(n: usize) -> Self {
        let leq = (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect();
        Self::from_order(&format!("chain({n})"), leq).expect("chains are meet-semilattices")
    }

    /// Subsets of a `k`-element set under inclusion.
    pub fn boolean(k: u32) -> Self {
        let n = 1usize << k;
        let leq = (0..n).map(|a| (0..n).map(|b| a & b == a).collect()).collect();
        Self::from_order(&format!("boolean({k})"), leq).expect("boolean lattices are meet-semilattices")
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn arrow(&self, a: usize, b: usize) -> Option<Arrow> {
        self.leq[a][b].then_some(Arrow { src: a, tgt: b })
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }
}

impl Category for Thin {
    type Ob = usize;
    type Mor = Arrow;

    fn name(&self) -> String {
        self.label.clone()
    }

    fn dom(&self, f: &Arrow) -> usize {
        f.src
    }

    fn cod(&self, f: &Arrow) -> usize {
        f.tgt
    }

    fn identity(&self, a: &usize) -> Arrow {
        Arrow { src: *a, tgt: *a }
    }

    fn compose_raw(&self, g: &Arrow, f: &Arrow) -> Arrow {
        Arrow { src: f.src, tgt: g.tgt }
    }

    fn hom(&self, a: &usize, b: &usize) -> Vec<Arrow> {
        self.arrow(*a, *b).into_iter().collect()
    }

    fn objects(&self, _bound: usize) -> Vec<usize> {
        (0..self.len()).collect()
    }

    fn objects_exhaustive(&self, _bound: usize) -> bool {
        true
    }

    fn size(&self, _a: &usize) -> usize {
        0
    }

    fn terminal(&self) -> Result<usize> {
        Ok(self.top)
    }

    fn product(&self, a: &usize, b: &usize) -> Result<Product<Self>> {
        let m = self.meet(*a, *b);
        Ok(ProductResult {
            apex: m,
            left: *a,
            right: *b,
            pi1: Arrow { src: m, tgt: *a },
            pi2: Arrow { src: m, tgt: *b },
        })
    }

    fn pullback(&self, f: &Arrow, g: &Arrow) -> Result<Pullback<Self>> {
        let m = self.meet(f.src, g.src);
        Ok(PullbackResult {
            apex: m,
            f: *f,
            g: *g,
            p1: Arrow { src: m, tgt: f.src },
            p2: Arrow { src: m, tgt: g.src },
        })
    }

    fn format_mor(&self, f: &Arrow) -> String {
        format!("{}<={}", f.src, f.tgt)
    }

    fn parse_mor(&self, s: &str) -> Result<Arrow> {
        let (a, b) = s
            .split_once("<=")
            .ok_or_else(|| CatError::parse(s, "expected `a<=b`"))?;
        let a: usize = a.trim().parse().map_err(|_| CatError::parse(s, "bad source"))?;
        let b: usize = b.trim().parse().map_err(|_| CatError::parse(s, "bad target"))?;
        if a >= self.len() || b >= self.len() {
            return Err(CatError::parse(s, "element out of range"));
        }
        self.arrow(a, b).ok_or_else(|| CatError::parse(s, "not related"))
    }

    fn parse_ob(&self, s: &str) -> Result<usize> {
        s.trim()
            .parse()
            .ok()
            .filter(|&a| a < self.len())
            .ok_or_else(|| CatError::parse(s, "expected an element"))
    }

    fn is_mono(&self, _f: &Arrow) -> Verdict {
        Verdict::Holds
    }

    fn is_epi(&self, _f: &Arrow) -> Verdict {
        Verdict::Holds
    }

    fn find_inverse(&self, f: &Arrow) -> Search<Arrow> {
        if f.src == f.tgt {
            Search::Found(*f)
        } else {
            Search::Exhausted
        }
    }

    fn systems(&self) -> Vec<&'static str> {
        vec!["all-iso", "iso-all"]
    }

    fn system_classes(&self, system: &str) -> Option<(&'static str, &'static str)> {
        match system {
            "all-iso" => Some(("all", "isos")),
            "iso-all" => Some(("isos", "all")),
            _ => None,
        }
    }

    fn factor(&self, system: &str, f: &Arrow) -> Option<(Arrow, Arrow)> {
        match system {
            "all-iso" => Some((*f, self.identity(&f.tgt))),
            "iso-all" => Some((self.identity(&f.src), *f)),
            _ => None,
        }
    }

    fn normal_forms_are_canonical(&self) -> bool {
        true
    }

    fn spans_up_to(&self, a: &usize, b: &usize, _apex_bound: usize) -> Vec<Span<Arrow>> {
        (0..self.len())
            .filter(|&d| self.leq(d, *a) && self.leq(d, *b))
            .map(|d| Span::new(Arrow { src: d, tgt: *a }, Arrow { src: d, tgt: *b }))
            .collect()
    }

    fn m_relations(&self, system: &str, a: &usize, b: &usize) -> Option<Vec<Span<Arrow>>> {
        match system {
            "all-iso" => {
                let m = self.meet(*a, *b);
                Some(vec![Span::new(Arrow { src: m, tgt: *a }, Arrow { src: m, tgt: *b })])
            }
            "iso-all" => Some(self.spans_up_to(a, b, 0)),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{check_category_laws, check_pullback_universal, compose};

    #[test]
    fn chain_composition() {
        let c = Thin::chain(3);
        let f = c.arrow(0, 1).unwrap();
        let g = c.arrow(1, 2).unwrap();
        assert_eq!(compose(&c, &g, &f).unwrap(), Arrow { src: 0, tgt: 2 });
        assert!(compose(&c, &f, &g).is_err());
    }

    #[test]
    fn limits_are_meets() {
        let c = Thin::chain(3);
        assert_eq!(c.product(&1, &2).unwrap().apex, 1);
        assert_eq!(c.terminal().unwrap(), 2);
        let b = Thin::boolean(2);
        assert_eq!(b.product(&1, &2).unwrap().apex, 0);
        let pb = b.pullback(&b.arrow(1, 3).unwrap(), &b.arrow(2, 3).unwrap()).unwrap();
        let obs: Vec<usize> = (0..4).collect();
        assert!(check_pullback_universal(&b, &pb, &obs).is_holds());
    }

    #[test]
    fn laws() {
        let b = Thin::boolean(2);
        let obs: Vec<usize> = (0..4).collect();
        assert!(check_category_laws(&b, &obs).is_holds());
    }

    #[test]
    fn rejects_orders_without_meets() {
        // Two incomparable elements below a top, nothing below them.
        let leq = vec![
            vec![true, false, true],
            vec![false, true, true],
            vec![false, false, true],
        ];
        assert!(Thin::from_order("vee", leq).is_err());
    }
}
