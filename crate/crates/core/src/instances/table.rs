//! Finite categories given by explicit composition tables, with a JSON
//! loader that rejects tables violating the unit or associativity laws, and
//! limits found by exhaustive cone search.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::category::{Category, Product, ProductResult, Pullback, PullbackResult};
use crate::error::{CatError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MorEntry {
    pub id: String,
    pub dom: usize,
    pub cod: usize,
}

/// A finite category as plain data: composition is `composition[g * n + f]`
/// for `n` morphisms, `None` exactly when `cod f ≠ dom g`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorEntry>,
    pub identities: Vec<usize>,
    pub composition: Vec<Option<usize>>,
}

/// On-disk form: `{objects, morphisms: [{id, dom, cod}], identities: {obj:
/// mor}, composition: [[g, f, gf]]}`. Composites with an identity may be
/// omitted.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableJson {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorJson>,
    pub identities: BTreeMap<String, String>,
    pub composition: Vec<[String; 3]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MorJson {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

impl FiniteCategory {
    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn dom(&self, f: usize) -> usize {
        self.morphisms[f].dom
    }

    pub fn cod(&self, f: usize) -> usize {
        self.morphisms[f].cod
    }

    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.composition[g * self.n_morphisms() + f]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.dom(f)] == f
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.n_morphisms())
            .filter(|&f| self.dom(f) == a && self.cod(f) == b)
            .collect()
    }

    /// Checks that the table is a category. Errors name the offending entry.
    pub fn check(&self) -> Result<()> {
        let n = self.n_morphisms();
        if self.identities.len() != self.n_objects() || self.composition.len() != n * n {
            return Err(CatError::parse("table", "identity or composition table has the wrong size"));
        }
        for (i, m) in self.morphisms.iter().enumerate() {
            if m.dom >= self.n_objects() || m.cod >= self.n_objects() {
                return Err(CatError::parse(format!("morphisms[{i}]"), "dom/cod out of range"));
            }
        }
        for (a, &id) in self.identities.iter().enumerate() {
            if self.dom(id) != a || self.cod(id) != a {
                return Err(CatError::parse(
                    format!("identities.{}", self.objects[a]),
                    format!("{} is not an endomorphism of {}", self.morphisms[id].id, self.objects[a]),
                ));
            }
        }
        let name = |f: usize| self.morphisms[f].id.as_str();
        for g in 0..n {
            for f in 0..n {
                let composable = self.cod(f) == self.dom(g);
                match (self.compose(g, f), composable) {
                    (None, true) => {
                        return Err(CatError::parse(
                            format!("composition ({}, {})", name(g), name(f)),
                            "composite of a composable pair is missing",
                        ))
                    }
                    (Some(_), false) => {
                        return Err(CatError::parse(
                            format!("composition ({}, {})", name(g), name(f)),
                            "composite given for a non-composable pair",
                        ))
                    }
                    (Some(gf), true) if self.dom(gf) != self.dom(f) || self.cod(gf) != self.cod(g) => {
                        return Err(CatError::parse(
                            format!("composition ({}, {}, {})", name(g), name(f), name(gf)),
                            "composite has the wrong domain or codomain",
                        ))
                    }
                    _ => {}
                }
            }
        }
        for f in 0..n {
            let (ida, idb) = (self.identities[self.dom(f)], self.identities[self.cod(f)]);
            if self.compose(f, ida) != Some(f) || self.compose(idb, f) != Some(f) {
                return Err(CatError::parse(
                    format!("unit law at {}", name(f)),
                    "composite with an identity is not the morphism itself",
                ));
            }
        }
        for f in 0..n {
            for g in (0..n).filter(|&g| self.dom(g) == self.cod(f)) {
                let gf = self.compose(g, f).unwrap();
                for h in (0..n).filter(|&h| self.dom(h) == self.cod(g)) {
                    let hg = self.compose(h, g).unwrap();
                    let lhs = self.compose(h, gf).unwrap();
                    let rhs = self.compose(hg, f).unwrap();
                    if lhs != rhs {
                        return Err(CatError::parse(
                            format!("associativity at (h, g, f) = ({}, {}, {})", name(h), name(g), name(f)),
                            format!("h∘(g∘f) = {} but (h∘g)∘f = {}", name(lhs), name(rhs)),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: TableJson = serde_json::from_str(s).map_err(|e| {
            CatError::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string())
        })?;
        Self::from_json(&raw)
    }

    pub fn from_json(raw: &TableJson) -> Result<Self> {
        let mut obj_index = HashMap::new();
        for (i, o) in raw.objects.iter().enumerate() {
            if obj_index.insert(o.as_str(), i).is_some() {
                return Err(CatError::parse(format!("objects[{i}]"), format!("duplicate object `{o}`")));
            }
        }
        let mut mor_index = HashMap::new();
        let mut morphisms = Vec::new();
        for (i, m) in raw.morphisms.iter().enumerate() {
            let loc = format!("morphisms[{i}]");
            let dom = *obj_index
                .get(m.dom.as_str())
                .ok_or_else(|| CatError::parse(&loc, format!("unknown object `{}`", m.dom)))?;
            let cod = *obj_index
                .get(m.cod.as_str())
                .ok_or_else(|| CatError::parse(&loc, format!("unknown object `{}`", m.cod)))?;
            if mor_index.insert(m.id.as_str(), i).is_some() {
                return Err(CatError::parse(loc, format!("duplicate morphism `{}`", m.id)));
            }
            morphisms.push(MorEntry { id: m.id.clone(), dom, cod });
        }
        let mut identities = vec![usize::MAX; raw.objects.len()];
        for (o, m) in &raw.identities {
            let loc = format!("identities.{o}");
            let a = *obj_index
                .get(o.as_str())
                .ok_or_else(|| CatError::parse(&loc, "unknown object"))?;
            identities[a] = *mor_index
                .get(m.as_str())
                .ok_or_else(|| CatError::parse(&loc, format!("unknown morphism `{m}`")))?;
        }
        if let Some(a) = identities.iter().position(|&i| i == usize::MAX) {
            return Err(CatError::parse(
                format!("identities.{}", raw.objects[a]),
                "missing identity",
            ));
        }
        let n = morphisms.len();
        let mut composition = vec![None; n * n];
        for (i, [g, f, gf]) in raw.composition.iter().enumerate() {
            let loc = format!("composition[{i}]");
            let look = |s: &String| {
                mor_index
                    .get(s.as_str())
                    .copied()
                    .ok_or_else(|| CatError::parse(&loc, format!("unknown morphism `{s}`")))
            };
            let (g, f, gf) = (look(g)?, look(f)?, look(gf)?);
            if let Some(prev) = composition[g * n + f] {
                if prev != gf {
                    return Err(CatError::parse(loc, "conflicting composite"));
                }
            }
            composition[g * n + f] = Some(gf);
        }
        for f in 0..n {
            let (a, b) = (morphisms[f].dom, morphisms[f].cod);
            composition[f * n + identities[a]].get_or_insert(f);
            composition[identities[b] * n + f].get_or_insert(f);
        }
        let cat = FiniteCategory {
            objects: raw.objects.clone(),
            morphisms,
            identities,
            composition,
        };
        cat.check()?;
        Ok(cat)
    }

    pub fn to_json(&self) -> TableJson {
        let name = |f: usize| self.morphisms[f].id.clone();
        let n = self.n_morphisms();
        let mut composition = Vec::new();
        for g in 0..n {
            for f in 0..n {
                if let Some(gf) = self.compose(g, f) {
                    if !self.is_identity(g) && !self.is_identity(f) {
                        composition.push([name(g), name(f), name(gf)]);
                    }
                }
            }
        }
        TableJson {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| MorJson {
                    id: m.id.clone(),
                    dom: self.objects[m.dom].clone(),
                    cod: self.objects[m.cod].clone(),
                })
                .collect(),
            identities: self
                .identities
                .iter()
                .enumerate()
                .map(|(a, &i)| (self.objects[a].clone(), name(i)))
                .collect(),
            composition,
        }
    }

    /// The discrete category on `n` objects.
    pub fn discrete(n: usize) -> Self {
        let objects: Vec<String> = (0..n).map(|i| format!("o{i}")).collect();
        let morphisms = (0..n)
            .map(|i| MorEntry { id: format!("m{i}"), dom: i, cod: i })
            .collect();
        let mut composition = vec![None; n * n];
        for i in 0..n {
            composition[i * n + i] = Some(i);
        }
        FiniteCategory { objects, morphisms, identities: (0..n).collect(), composition }
    }
}

type PbKey = (usize, usize);

/// A [`FiniteCategory`] as a [`Category`], with limits found by searching
/// for cones with the universal property and cached per input.
pub struct TableCategory {
    label: String,
    table: Arc<FiniteCategory>,
    homs: HashMap<(usize, usize), Vec<usize>>,
    pullbacks: Mutex<HashMap<PbKey, Option<Pullback<TableCategory>>>>,
    products: Mutex<HashMap<PbKey, Option<Product<TableCategory>>>>,
}

impl std::fmt::Debug for TableCategory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TableCategory({})", self.label)
    }
}

impl TableCategory {
    pub fn new(label: &str, table: FiniteCategory) -> Self {
        let mut homs: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (f, m) in table.morphisms.iter().enumerate() {
            homs.entry((m.dom, m.cod)).or_default().push(f);
        }
        TableCategory {
            label: label.to_string(),
            table: Arc::new(table),
            homs,
            pullbacks: Mutex::new(HashMap::new()),
            products: Mutex::new(HashMap::new()),
        }
    }

    pub fn from_json_str(label: &str, s: &str) -> Result<Self> {
        Ok(Self::new(label, FiniteCategory::from_json_str(s)?))
    }

    pub fn table(&self) -> &FiniteCategory {
        &self.table
    }

    fn homs(&self, a: usize, b: usize) -> &[usize] {
        self.homs.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Whether `w ↦ (p1∘w, p2∘w)` is a bijection from `hom(x, apex)` onto the
    /// cones from `x` accepted by `cone`, for every object `x`.
    fn universal(&self, apex: usize, p1: usize, p2: usize, cone: impl Fn(usize, usize) -> bool) -> bool {
        let t = &self.table;
        let (a, b) = (t.cod(p1), t.cod(p2));
        (0..t.n_objects()).all(|x| {
            let mut images: Vec<(usize, usize)> = self
                .homs(x, apex)
                .iter()
                .map(|&w| (t.compose(p1, w).unwrap(), t.compose(p2, w).unwrap()))
                .collect();
            let n = images.len();
            images.sort_unstable();
            images.dedup();
            if images.len() != n {
                return false;
            }
            let cones = self
                .homs(x, a)
                .iter()
                .flat_map(|&u| self.homs(x, b).iter().map(move |&v| (u, v)))
                .filter(|&(u, v)| cone(u, v))
                .count();
            cones == n
        })
    }

    fn search_limit(&self, a: usize, b: usize, cone: impl Fn(usize, usize) -> bool + Copy) -> Option<(usize, usize, usize)> {
        let t = &self.table;
        for p in 0..t.n_objects() {
            for &p1 in self.homs(p, a) {
                for &p2 in self.homs(p, b) {
                    if cone(p1, p2) && self.universal(p, p1, p2, cone) {
                        return Some((p, p1, p2));
                    }
                }
            }
        }
        None
    }
}

impl Category for TableCategory {
    type Ob = usize;
    type Mor = usize;

    fn name(&self) -> String {
        format!("table({})", self.label)
    }

    fn dom(&self, f: &usize) -> usize {
        self.table.dom(*f)
    }

    fn cod(&self, f: &usize) -> usize {
        self.table.cod(*f)
    }

    fn identity(&self, a: &usize) -> usize {
        self.table.identities[*a]
    }

    fn compose_raw(&self, g: &usize, f: &usize) -> usize {
        self.table.compose(*g, *f).expect("composable pair")
    }

    fn hom(&self, a: &usize, b: &usize) -> Vec<usize> {
        self.homs(*a, *b).to_vec()
    }

    fn objects(&self, _bound: usize) -> Vec<usize> {
        (0..self.table.n_objects()).collect()
    }

    fn objects_exhaustive(&self, _bound: usize) -> bool {
        true
    }

    fn size(&self, _a: &usize) -> usize {
        0
    }

    fn terminal(&self) -> Result<usize> {
        let n = self.table.n_objects();
        (0..n)
            .find(|&t| (0..n).all(|x| self.homs(x, t).len() == 1))
            .ok_or_else(|| CatError::LimitUnavailable(format!("{} has no terminal object", self.label)))
    }

    fn product(&self, a: &usize, b: &usize) -> Result<Product<Self>> {
        let key = (*a, *b);
        if let Some(hit) = self.products.lock().unwrap().get(&key) {
            return hit
                .clone()
                .ok_or_else(|| CatError::LimitUnavailable(format!("no product of {a} and {b}")));
        }
        let found = self.search_limit(*a, *b, |_, _| true).map(|(p, p1, p2)| ProductResult {
            apex: p,
            left: *a,
            right: *b,
            pi1: p1,
            pi2: p2,
        });
        self.products.lock().unwrap().insert(key, found.clone());
        found.ok_or_else(|| CatError::LimitUnavailable(format!("no product of {a} and {b}")))
    }

    fn pullback(&self, f: &usize, g: &usize) -> Result<Pullback<Self>> {
        let key = (*f, *g);
        let missing = || {
            CatError::LimitUnavailable(format!(
                "no pullback of {} and {}",
                self.table.morphisms[*f].id, self.table.morphisms[*g].id
            ))
        };
        if let Some(hit) = self.pullbacks.lock().unwrap().get(&key) {
            return hit.clone().ok_or_else(missing);
        }
        if self.cod(f) != self.cod(g) {
            return Err(missing());
        }
        let t = &self.table;
        let cone = |u: usize, v: usize| t.compose(*f, u) == t.compose(*g, v);
        let found = self
            .search_limit(self.dom(f), self.dom(g), cone)
            .map(|(p, p1, p2)| PullbackResult { apex: p, f: *f, g: *g, p1, p2 });
        self.pullbacks.lock().unwrap().insert(key, found.clone());
        found.ok_or_else(missing)
    }

    fn systems(&self) -> Vec<&'static str> {
        vec!["iso-all", "all-iso"]
    }

    fn system_classes(&self, system: &str) -> Option<(&'static str, &'static str)> {
        match system {
            "iso-all" => Some(("isos", "all")),
            "all-iso" => Some(("all", "isos")),
            _ => None,
        }
    }

    fn factor(&self, system: &str, f: &usize) -> Option<(usize, usize)> {
        match system {
            "iso-all" => Some((self.identity(&self.dom(f)), *f)),
            "all-iso" => Some((*f, self.identity(&self.cod(f)))),
            _ => None,
        }
    }

    fn format_mor(&self, f: &usize) -> String {
        self.table.morphisms[*f].id.clone()
    }

    fn parse_mor(&self, s: &str) -> Result<usize> {
        self.table
            .morphisms
            .iter()
            .position(|m| m.id == s.trim())
            .ok_or_else(|| CatError::parse(s, "unknown morphism"))
    }

    fn parse_ob(&self, s: &str) -> Result<usize> {
        self.table
            .objects
            .iter()
            .position(|o| o == s.trim())
            .ok_or_else(|| CatError::parse(s, "unknown object"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{check_category_laws, check_pullback_universal};

    const ARROW: &str = r#"{
        "objects": ["a", "b"],
        "morphisms": [{"id": "1a", "dom": "a", "cod": "a"}, {"id": "1b", "dom": "b", "cod": "b"},
                      {"id": "f", "dom": "a", "cod": "b"}],
        "identities": {"a": "1a", "b": "1b"},
        "composition": []
    }"#;

    #[test]
    fn loads_the_arrow_category() {
        let c = TableCategory::from_json_str("arrow", ARROW).unwrap();
        assert!(check_category_laws(&c, &[0, 1]).is_holds());
        assert_eq!(c.terminal().unwrap(), 1);
        let pr = c.product(&0, &1).unwrap();
        assert_eq!(pr.apex, 0);
        let f = c.parse_mor("f").unwrap();
        let pb = c.pullback(&f, &f).unwrap();
        assert!(check_pullback_universal(&c, &pb, &[0, 1]).is_holds());
    }

    #[test]
    fn discrete_two_has_no_terminal() {
        let c = TableCategory::new("d2", FiniteCategory::discrete(2));
        assert!(matches!(c.terminal(), Err(CatError::LimitUnavailable(_))));
        assert!(c.product(&0, &1).is_err());
    }

    #[test]
    fn rejects_non_associative_table() {
        // (e∘e)∘z = z∘z = e but e∘(e∘z) = e∘z = z.
        let s = r#"{
            "objects": ["x"],
            "morphisms": [{"id": "1", "dom": "x", "cod": "x"}, {"id": "e", "dom": "x", "cod": "x"},
                          {"id": "z", "dom": "x", "cod": "x"}],
            "identities": {"x": "1"},
            "composition": [["e","e","z"],["e","z","z"],["z","e","z"],["z","z","e"]]
        }"#;
        match FiniteCategory::from_json_str(s) {
            Err(CatError::Parse { location, .. }) => assert!(location.starts_with("associativity at"), "{location}"),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_missing_composite_and_unknown_names() {
        let s = r#"{
            "objects": ["a"],
            "morphisms": [{"id": "1", "dom": "a", "cod": "a"}, {"id": "e", "dom": "a", "cod": "a"}],
            "identities": {"a": "1"},
            "composition": []
        }"#;
        assert!(matches!(FiniteCategory::from_json_str(s), Err(CatError::Parse { .. })));
        let s = ARROW.replace(r#""cod": "b"}]"#, r#""cod": "q"}]"#);
        assert!(matches!(FiniteCategory::from_json_str(&s), Err(CatError::Parse { .. })));
    }

    #[test]
    fn json_round_trip() {
        let c = FiniteCategory::from_json_str(ARROW).unwrap();
        let again = FiniteCategory::from_json(&c.to_json()).unwrap();
        assert_eq!(c, again);
    }
}
