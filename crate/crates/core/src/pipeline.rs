//! Command pipelines: each command is a fixed list of named checks run
//! against one instance, factorization system and relation. Later checks are
//! skipped with `Unknown` when a check they depend on fails. Any single check
//! can be rerun in isolation, which is how reports are replayed.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::allegory::{
    allegory_suite, check_allegorical_criterion, check_allegorical_relation, check_within_monos, lift,
    retraction_sample, Region, SuiteReport,
};
use crate::category::{check_category_laws, Category};
use crate::classes::{
    carrier, check_splitepi_lemma, e_bullet, e_circ, m_star, validate_fact_system, validate_stable_system,
    FactSystem, FactValidation, MorClass, SplitEpiLemma,
};
use crate::error::{CatError, Result};
use crate::instances::finset::RelationJson;
use crate::instances::fincat::Functor;
use crate::instances::{FinCat, FinSet, TableCategory};
use crate::maps::{
    all_sections, check_gamma_pullbacks, check_m_tabulation, counit_check, find_unit, map_category, tabulate,
    triangle_on_classes, triangle_on_maps, MapCategory,
};
use crate::quotient::{Equivalence, QuotientView};
use crate::report::ReportLine;
use crate::span::{format_span, sim_e_search, Span, SpanJson};
use crate::sweep::Exec;
use crate::verdict::{Verdict, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CategoryKind {
    Finset,
    Fincat,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RelationTag {
    #[serde(rename = "simE")]
    SimE,
    #[serde(rename = "simEo")]
    SimEo,
    #[serde(rename = "simEbullet")]
    SimEbullet,
    #[serde(rename = "approx")]
    Approx,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Validate,
    CheckAllegory,
    Ebullet,
    Quotient,
    Tabulate,
    MapCounit,
}

macro_rules! named_enum {
    ($t:ty, $($v:path => $s:literal),+ $(,)?) => {
        impl $t {
            pub fn as_str(&self) -> &'static str {
                match self { $($v => $s),+ }
            }
        }
        impl FromStr for $t {
            type Err = CatError;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($s => Ok($v),)+
                    other => Err(CatError::Config(format!("unknown {} `{other}`", stringify!($t)))),
                }
            }
        }
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
    };
}

named_enum!(CategoryKind, CategoryKind::Finset => "finset", CategoryKind::Fincat => "fincat", CategoryKind::Table => "table");
named_enum!(
    RelationTag,
    RelationTag::SimE => "simE",
    RelationTag::SimEo => "simEo",
    RelationTag::SimEbullet => "simEbullet",
    RelationTag::Approx => "approx",
);
named_enum!(
    Command,
    Command::Validate => "validate",
    Command::CheckAllegory => "check-allegory",
    Command::Ebullet => "ebullet",
    Command::Quotient => "quotient",
    Command::Tabulate => "tabulate",
    Command::MapCounit => "map-counit",
);

/// Everything that determines a run. Identical configs give identical
/// reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub category: CategoryKind,
    pub max_size: usize,
    pub max_objects: usize,
    pub max_morphisms: usize,
    pub file: Option<String>,
    pub system: Option<String>,
    pub relation: RelationTag,
    /// Carrier bound for class closures and witness searches.
    pub bound: usize,
    /// Largest apex used when hom-classes are enumerated as spans.
    pub apex_bound: usize,
    pub seed: u64,
    pub samples: usize,
    #[serde(default)]
    pub sequential: bool,
    #[serde(default)]
    pub timing: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            category: CategoryKind::Finset,
            max_size: 2,
            max_objects: 2,
            max_morphisms: 3,
            file: None,
            system: None,
            relation: RelationTag::SimE,
            bound: 3,
            apex_bound: 2,
            seed: 0,
            samples: 200,
            sequential: false,
            timing: false,
        }
    }
}

impl PipelineConfig {
    fn exec(&self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::Parallel
        }
    }

    fn echo(&self, cmd: Command) -> Value {
        let mut v = serde_json::to_value(self).expect("config serializes");
        v.as_object_mut().expect("config is an object").insert("command".into(), json!(cmd.as_str()));
        v
    }

    fn default_system(&self) -> Option<&'static str> {
        match self.category {
            CategoryKind::Finset => Some("surj-inj"),
            CategoryKind::Fincat => Some("surjObj-ffInjObj"),
            CategoryKind::Table => None,
        }
    }
}

const SUITE_LAWS: [&str; 11] = [
    "meet-idempotent",
    "meet-commutative",
    "meet-associative",
    "meet-glb",
    "involution-involutive",
    "involution-preserves-meets",
    "involution-reverses-composition",
    "composition-identity",
    "composition-monotone",
    "modular",
    "special-modular",
];

type Outcome = (Verdict, Option<Value>);
type SpanParser<C> = fn(&C, &str) -> Result<Span<<C as Category>::Mor>>;
type Probe<C> = fn(&C, &MorClass<<C as Category>::Mor>, &[<C as Category>::Mor]) -> Verdict;

struct Runner<'a, C: Category> {
    c: &'a C,
    cfg: &'a PipelineConfig,
    cmd: Command,
    system: Option<FactSystem<C::Mor>>,
    probe: Option<Probe<C>>,
    file_span: Option<Span<C::Mor>>,
    view: OnceLock<std::result::Result<QuotientView<'a, C>, String>>,
    m_star: OnceLock<MorClass<C::Mor>>,
    e_circ: OnceLock<MorClass<C::Mor>>,
    e_bullet: OnceLock<MorClass<C::Mor>>,
    fact: OnceLock<FactValidation>,
    lemma: OnceLock<SplitEpiLemma>,
    suite: OnceLock<std::result::Result<SuiteReport, String>>,
    maps: OnceLock<std::result::Result<MapCategory<C::Ob, C::Mor>, String>>,
    done: Mutex<BTreeMap<String, Verdict>>,
}

fn parse_span_generic<C: Category>(c: &C, text: &str) -> Result<Span<C::Mor>> {
    let raw: SpanJson = serde_json::from_str(text).map_err(|e| CatError::parse(format!("line {}", e.line()), e.to_string()))?;
    raw.parse(c)
}

fn parse_span_finset(c: &FinSet, text: &str) -> Result<Span<crate::instances::FinFn>> {
    let probe: Value = serde_json::from_str(text).map_err(|e| CatError::parse(format!("line {}", e.line()), e.to_string()))?;
    if probe.get("pairs").is_some() {
        Ok(RelationJson::from_json_str(text)?.to_span())
    } else {
        parse_span_generic(c, text)
    }
}

fn err_string(e: CatError) -> String {
    e.to_string()
}

impl<'a, C: Category> Runner<'a, C> {
    fn new(
        c: &'a C,
        cfg: &'a PipelineConfig,
        cmd: Command,
        parse_span: SpanParser<C>,
        probe: Option<Probe<C>>,
    ) -> Result<Self> {
        let system = match cfg.system.as_deref().or(cfg.default_system()) {
            Some(name) => Some(FactSystem::named(c, name)?),
            None => None,
        };
        // Input files are parsed up front so that malformed input is an
        // error rather than an undecided check.
        let file_span = match (&cfg.file, cfg.category) {
            (Some(path), CategoryKind::Finset | CategoryKind::Fincat) => {
                let text = std::fs::read_to_string(path).map_err(|e| CatError::Config(format!("{path}: {e}")))?;
                Some(parse_span(c, &text)?)
            }
            _ => None,
        };
        Ok(Runner {
            c,
            cfg,
            cmd,
            system,
            probe,
            file_span,
            view: OnceLock::new(),
            m_star: OnceLock::new(),
            e_circ: OnceLock::new(),
            e_bullet: OnceLock::new(),
            fact: OnceLock::new(),
            lemma: OnceLock::new(),
            suite: OnceLock::new(),
            maps: OnceLock::new(),
            done: Mutex::new(BTreeMap::new()),
        })
    }

    fn exec(&self) -> Exec {
        self.cfg.exec()
    }

    fn sys(&self) -> Result<&FactSystem<C::Mor>> {
        self.system
            .as_ref()
            .ok_or_else(|| CatError::Config("this check needs a factorization system (--system)".into()))
    }

    fn m_star(&self) -> Result<&MorClass<C::Mor>> {
        let sys = self.sys()?;
        Ok(self.m_star.get_or_init(|| m_star(self.c, &sys.m, self.cfg.bound)))
    }

    fn e_circ(&self) -> Result<&MorClass<C::Mor>> {
        let sys = self.sys()?;
        Ok(self.e_circ.get_or_init(|| e_circ(self.c, &sys.e, self.cfg.bound)))
    }

    fn e_bullet(&self) -> Result<&MorClass<C::Mor>> {
        let sys = self.sys()?;
        let ms = self.m_star()?;
        Ok(self.e_bullet.get_or_init(|| e_bullet(self.c, sys, ms, self.cfg.bound)))
    }

    /// The class whose `∼` the relation tag names.
    fn relation_class(&self) -> Result<&MorClass<C::Mor>> {
        match self.cfg.relation {
            RelationTag::SimE => Ok(&self.sys()?.e),
            RelationTag::SimEo => self.e_circ(),
            RelationTag::SimEbullet => self.e_bullet(),
            RelationTag::Approx => Err(CatError::Config("approx is not induced by a morphism class".into())),
        }
    }

    fn view(&self) -> Result<&QuotientView<'a, C>> {
        self.view
            .get_or_init(|| {
                let equiv = match self.cfg.relation {
                    RelationTag::SimE => Equivalence::Factorization(self.sys().map_err(err_string)?.clone()),
                    RelationTag::Approx => Equivalence::Approx,
                    _ => Equivalence::Stable {
                        class: self.relation_class().map_err(err_string)?.clone(),
                        bound: self.cfg.bound,
                    },
                };
                Ok(QuotientView::new(self.c, equiv, self.cfg.relation.as_str(), self.cfg.apex_bound))
            })
            .as_ref()
            .map_err(|e| CatError::Config(e.clone()))
    }

    fn exhaustive_bound(&self) -> usize {
        self.cfg.max_size.min(2)
    }

    fn region(&self) -> Region<C::Ob> {
        Region::new(self.c, self.exhaustive_bound(), self.cfg.max_size, self.cfg.samples, self.cfg.seed)
    }

    fn carrier(&self) -> Vec<C::Mor> {
        carrier(self.c, self.cfg.max_size)
    }

    fn suite(&self) -> Result<&SuiteReport> {
        self.suite
            .get_or_init(|| {
                let v = self.view().map_err(err_string)?;
                allegory_suite(v, &self.region(), self.exec()).map_err(err_string)
            })
            .as_ref()
            .map_err(|e| CatError::Undetermined(e.clone()))
    }

    fn map_cat(&self) -> Result<&MapCategory<C::Ob, C::Mor>> {
        self.maps
            .get_or_init(|| {
                let v = self.view().map_err(err_string)?;
                let e = self.exhaustive_bound();
                let objs = self.c.objects(self.cfg.max_size.max(e * e));
                map_category(v, &objs, self.exec()).map_err(err_string)
            })
            .as_ref()
            .map_err(|e| CatError::Undetermined(e.clone()))
    }

    fn fact(&self) -> Result<&FactValidation> {
        let sys = self.sys()?;
        Ok(self.fact.get_or_init(|| validate_fact_system(self.c, sys, self.cfg.max_size)))
    }

    fn lemma(&self) -> Result<&SplitEpiLemma> {
        let sys = self.sys()?;
        Ok(self.lemma.get_or_init(|| check_splitepi_lemma(self.c, sys, self.cfg.max_size)))
    }

    /// Hom-class representatives between objects of size ≤ max-size, plus
    /// the span from `--file` if one was given.
    fn class_sample(&self) -> Result<Vec<Span<C::Mor>>> {
        let v = self.view()?;
        let objs = self.c.objects(self.cfg.max_size);
        let mut out = Vec::new();
        for a in &objs {
            for b in &objs {
                out.extend(v.hom_classes(a, b)?.classes);
            }
        }
        out.extend(self.file_span.clone());
        Ok(out)
    }

    /// Checks in run order, each with the checks it depends on.
    fn plan(&self) -> Vec<(String, Vec<String>)> {
        let own = |names: &[&str]| names.iter().map(|n| (n.to_string(), Vec::new())).collect::<Vec<_>>();
        let suite_names: Vec<String> = SUITE_LAWS.iter().map(|l| format!("allegory-suite.{l}")).collect();
        match self.cmd {
            Command::Validate => {
                let mut p = own(&["category-laws"]);
                if self.system.is_some() {
                    p.extend(own(&[
                        "fact-system.factorization",
                        "stable-system",
                        "fact-system.uniqueness",
                        "splitepi-lemma.split-epis-in-e",
                        "splitepi-lemma.m-in-monos",
                        "splitepi-lemma.agreement",
                    ]));
                }
                p
            }
            Command::CheckAllegory => {
                let mut p: Vec<(String, Vec<String>)> = suite_names.iter().map(|n| (n.clone(), Vec::new())).collect();
                p.extend(own(&["allegorical-relation", "allegorical-criterion"]));
                if self.cfg.relation == RelationTag::SimE {
                    p.extend(own(&["m-within-monos"]));
                }
                p.extend(own(&["equivalence-agreement"]));
                p.push(("unit".into(), suite_names.clone()));
                p.push(("tabular".into(), suite_names));
                p
            }
            Command::Ebullet => own(&[
                "m-star",
                "e-circ",
                "e-bullet",
                "e-bullet-stable",
                "sections-in-m-star",
                "simEo-within-simEbullet",
            ]),
            Command::Quotient => {
                let mut p = own(&["hom-classes"]);
                if self.file_span.is_some() {
                    p.extend(own(&["canonical"]));
                }
                p
            }
            Command::Tabulate => own(&["tabulation", "gamma-pullbacks", "m-tabulation"]),
            Command::MapCounit if self.cfg.category == CategoryKind::Fincat => {
                own(&["probe.e-within-epis", "probe.m-within-monos", "probe.equalized-pair"])
            }
            Command::MapCounit => {
                let mut p = own(&["map-category"]);
                let dep = vec!["map-category".to_string()];
                for n in ["graph-bijection", "cover-mono-classification", "counit", "triangle-maps"] {
                    p.push((n.to_string(), dep.clone()));
                }
                p.extend(own(&["triangle-classes"]));
                p
            }
        }
    }

    fn sample_spec(&self, check: &str) -> String {
        let cfg = self.cfg;
        if check.starts_with("allegory-suite.") {
            format!(
                "exhaustive size≤{}; {} seeded draws size≤{} seed={}; apex≤{}",
                self.exhaustive_bound(),
                cfg.samples,
                cfg.max_size,
                cfg.seed,
                cfg.apex_bound
            )
        } else {
            format!("carrier size≤{}; bound={}; seed={}", cfg.max_size, cfg.bound, cfg.seed)
        }
    }

    fn run(&self, only: Option<&str>) -> Result<Vec<ReportLine>> {
        let plan = self.plan();
        if let Some(name) = only {
            if !plan.iter().any(|(n, _)| n == name) {
                return Err(CatError::Config(format!("`{}` has no check `{name}`", self.cmd)));
            }
        }
        let mut lines = Vec::new();
        for (name, deps) in plan {
            if only.is_some_and(|o| o != name) {
                continue;
            }
            let start = Instant::now();
            let failed_dep = if only.is_some() {
                None
            } else {
                let done = self.done.lock().unwrap();
                deps.iter().find(|d| done.get(*d).is_some_and(|v| v.is_fails())).cloned()
            };
            let (verdict, detail) = match failed_dep {
                Some(d) => (Verdict::unknown(format!("skipped: {d} failed")), None),
                None => self.eval(&name).unwrap_or_else(|e| (Verdict::unknown(e.to_string()), None)),
            };
            self.done.lock().unwrap().insert(name.clone(), verdict.clone());
            let mut line = ReportLine {
                check: name.clone(),
                instance: self.c.name(),
                system: self.system.as_ref().map(|s| s.name.clone()),
                relation: Some(self.cfg.relation.as_str().to_string()),
                sample_spec: self.sample_spec(&name),
                verdict: verdict.outcome(),
                witness: None,
                bound: None,
                detail,
                config: self.cfg.echo(self.cmd),
                elapsed: self.cfg.timing.then(|| start.elapsed().as_secs_f64()),
            };
            line.set_verdict(&verdict);
            lines.push(line);
        }
        Ok(lines)
    }

    fn fmt_ob(&self, o: &C::Ob) -> String {
        format!("{o:?}")
    }

    fn eval(&self, name: &str) -> Result<Outcome> {
        let c = self.c;
        let exec = self.exec();
        if let Some(law) = name.strip_prefix("allegory-suite.") {
            let suite = self.suite()?;
            let r = suite.laws.iter().find(|l| l.law == law).expect("suite covers every law");
            return Ok((r.verdict.clone(), Some(json!({ "checked": r.checked }))));
        }
        Ok(match name {
            "category-laws" => (check_category_laws(c, &c.objects(self.cfg.max_size)), None),
            "fact-system.factorization" => (self.fact()?.factorization.clone(), None),
            "stable-system" => (self.fact()?.e_stable.clone(), None),
            "fact-system.uniqueness" => (self.fact()?.uniqueness.clone(), None),
            "splitepi-lemma.split-epis-in-e" => (self.lemma()?.split_epis_in_e.clone(), None),
            "splitepi-lemma.m-in-monos" => (self.lemma()?.m_in_monos.clone(), None),
            "splitepi-lemma.agreement" => (self.lemma()?.agreement(), None),
            "allegorical-relation" => (check_allegorical_relation(self.view()?, &self.carrier(), exec), None),
            "allegorical-criterion" => {
                let cap = (2 * self.cfg.max_size).max(4);
                let rs = retraction_sample(c, &self.carrier(), cap);
                let v = check_allegorical_criterion(c, self.relation_class()?, &rs, self.cfg.bound, exec);
                (v, Some(json!({ "retractions": rs.len() })))
            }
            "m-within-monos" => (check_within_monos(c, &self.sys()?.m, &self.carrier(), exec), None),
            "equivalence-agreement" => self.agreement()?,
            "unit" => {
                let u = find_unit(self.view()?, &c.objects(self.cfg.max_size))?;
                let failing: Vec<String> = u.failing_objects().iter().map(|o| self.fmt_ob(o)).collect();
                (u.verdict(), Some(json!({ "unit": self.fmt_ob(&u.unit), "failing": failing })))
            }
            "tabular" | "tabulation" => {
                let v = self.view()?;
                let sys = self.sys()?;
                let sample = self.class_sample()?;
                let verdict = exec.all(&sample, |s| match tabulate(v, sys, s) {
                    Ok(_) => Verdict::Holds,
                    Err(CatError::TabulationFailed { equation, detail }) => Verdict::fails(
                        Witness::new(equation).text("r", format_span(c, s)).text("detail", detail),
                    ),
                    Err(e) => Verdict::unknown(e.to_string()),
                });
                (verdict, Some(json!({ "classes": sample.len() })))
            }
            "m-star" => self.dump(self.m_star()?)?,
            "e-circ" => self.dump(self.e_circ()?)?,
            "e-bullet" => self.dump(self.e_bullet()?)?,
            "e-bullet-stable" => (validate_stable_system(c, self.e_bullet()?, self.cfg.max_size), None),
            "sections-in-m-star" => {
                let sys = self.sys()?;
                let ms = self.m_star()?;
                let mut sections = Vec::new();
                for f in self.carrier() {
                    if sys.m.contains(c, &f).is_holds() {
                        sections.extend(all_sections(c, &f));
                    }
                }
                sections.sort();
                sections.dedup();
                let v = exec.all(&sections, |s| ms.contains(c, s));
                (v, Some(json!({ "sections": sections.len() })))
            }
            "simEo-within-simEbullet" => self.inclusion_sample()?,
            "hom-classes" => {
                let v = self.view()?;
                let objs = c.objects(self.exhaustive_bound());
                let mut rows = Vec::new();
                let mut complete = true;
                for a in &objs {
                    for b in &objs {
                        let h = v.hom_classes(a, b)?;
                        complete &= h.complete;
                        rows.push(json!({
                            "source": self.fmt_ob(a),
                            "target": self.fmt_ob(b),
                            "classes": h.classes.len(),
                            "complete": h.complete,
                        }));
                    }
                }
                let verdict = if complete {
                    Verdict::Holds
                } else {
                    Verdict::unknown(format!("classes enumerated from spans with apex ≤ {}", self.cfg.apex_bound))
                };
                (verdict, Some(json!(rows)))
            }
            "canonical" => {
                let s = self.file_span.clone().ok_or_else(|| CatError::Config("no span or relation --file given".into()))?;
                let k = self.view()?.canonical(&s)?;
                (Verdict::Holds, Some(serde_json::to_value(SpanJson::from_span(c, &k)).expect("span serializes")))
            }
            "gamma-pullbacks" => {
                let mors = self.carrier();
                let mut cospans = Vec::new();
                for h in &mors {
                    for k in &mors {
                        if c.cod(h) == c.cod(k) {
                            cospans.push((h.clone(), k.clone()));
                        }
                    }
                }
                let v = check_gamma_pullbacks(self.view()?, &cospans, exec);
                (v, Some(json!({ "squares": cospans.len() })))
            }
            "m-tabulation" => {
                let t = check_m_tabulation(self.view()?, self.sys()?, &self.carrier(), &self.class_sample()?, exec);
                let detail = json!({ "m_side": t.m_side.outcome(), "span_side": t.span_side.outcome() });
                (t.agreement(), Some(detail))
            }
            "map-category" => {
                let mc = self.map_cat()?;
                let objs = c.objects(self.cfg.max_size);
                let mut rows = Vec::new();
                for a in &objs {
                    for b in &objs {
                        let (i, j) = (mc.object_index(a).expect("listed"), mc.object_index(b).expect("listed"));
                        let hom = mc.hom(i, j);
                        rows.push(json!({
                            "source": self.fmt_ob(a),
                            "target": self.fmt_ob(b),
                            "maps": hom.len(),
                            "covers": hom.iter().filter(|&&f| mc.cover[f]).count(),
                            "monos": hom.iter().filter(|&&f| mc.mono[f]).count(),
                        }));
                    }
                }
                let v = match mc.table.check() {
                    Ok(()) => Verdict::Holds,
                    Err(e) => Verdict::fails(Witness::new("map composition table").text("error", e.to_string())),
                };
                (v, Some(json!(rows)))
            }
            "graph-bijection" => self.graph_bijection(false)?,
            "cover-mono-classification" => self.graph_bijection(true)?,
            "counit" => {
                let objs = c.objects(self.exhaustive_bound());
                let pairs: Vec<(C::Ob, C::Ob)> =
                    objs.iter().flat_map(|a| objs.iter().map(move |b| (a.clone(), b.clone()))).collect();
                let rows = counit_check(self.view()?, self.map_cat()?, &pairs)?;
                let v = Verdict::all(rows.iter().map(|r| r.verdict.clone()));
                (v, Some(serde_json::to_value(&rows).expect("rows serialize")))
            }
            "triangle-maps" => (triangle_on_maps(self.view()?, self.map_cat()?, exec), None),
            "triangle-classes" => (triangle_on_classes(self.view()?, &self.class_sample()?, exec), None),
            "probe.e-within-epis" => {
                let sys = self.sys()?;
                let mors = self.carrier();
                let v = exec.all(&mors, |f| {
                    if !sys.e.contains(c, f).is_holds() {
                        return Verdict::Holds;
                    }
                    match c.is_epi(f) {
                        Verdict::Fails { .. } => {
                            Verdict::fails(Witness::new("E ⊄ epis").text("f", c.format_mor(f)))
                        }
                        other => other,
                    }
                });
                (v, Some(json!({ "morphisms": mors.len() })))
            }
            "probe.m-within-monos" => {
                let mors = self.carrier();
                (check_within_monos(c, &self.sys()?.m, &mors, exec), Some(json!({ "morphisms": mors.len() })))
            }
            "probe.equalized-pair" => {
                let probe = self.probe.ok_or_else(|| CatError::Config("no functor search for this instance".into()))?;
                let mors = self.carrier();
                (probe(c, &self.sys()?.m, &mors), Some(json!({ "morphisms": mors.len() })))
            }
            other => return Err(CatError::Config(format!("unknown check `{other}`"))),
        })
    }

    fn dump(&self, class: &MorClass<C::Mor>) -> Result<Outcome> {
        let c = self.c;
        let mors = carrier(c, self.cfg.bound);
        let mut members = Vec::new();
        let mut undecided = 0;
        for (f, v) in class.table(c, &mors) {
            match v {
                Verdict::Holds => members.push(c.format_mor(&f)),
                Verdict::Unknown { .. } => undecided += 1,
                Verdict::Fails { .. } => {}
            }
        }
        let verdict = if undecided == 0 {
            Verdict::Holds
        } else {
            Verdict::unknown(format!("{undecided} memberships undecided"))
        };
        let detail = json!({
            "class": class.name,
            "recognized": class.recognized(),
            "carrier": mors.len(),
            "members": members,
        });
        Ok((verdict, Some(detail)))
    }

    /// Suite, allegorical relation, criterion and (for factorization
    /// quotients) `M ⊆ Mono` must all hold or all fail.
    fn agreement(&self) -> Result<Outcome> {
        let mut names = vec!["allegory-suite", "allegorical-relation", "allegorical-criterion"];
        if self.cfg.relation == RelationTag::SimE {
            names.push("m-within-monos");
        }
        let mut verdicts = Vec::new();
        for n in &names {
            let v = if *n == "allegory-suite" {
                self.suite()?.overall()
            } else {
                match self.done.lock().unwrap().get(*n) {
                    Some(v) => Some(v.clone()),
                    None => None,
                }
                .map(Ok)
                .unwrap_or_else(|| self.eval(n).map(|o| o.0))?
            };
            verdicts.push(v);
        }
        let detail = json!(names
            .iter()
            .zip(&verdicts)
            .map(|(n, v)| (n.to_string(), json!(v.outcome())))
            .collect::<BTreeMap<_, _>>());
        let verdict = if verdicts.iter().any(|v| v.is_unknown()) {
            Verdict::unknown("some side undecided")
        } else if verdicts.iter().all(|v| v.is_holds()) || verdicts.iter().all(|v| v.is_fails()) {
            Verdict::Holds
        } else {
            let mut w = Witness::new("allegory characterizations disagree");
            for (n, v) in names.iter().zip(&verdicts) {
                w = w.text(*n, v.to_string());
            }
            Verdict::fails(w)
        };
        Ok((verdict, Some(detail)))
    }

    fn inclusion_sample(&self) -> Result<Outcome> {
        let c = self.c;
        let eo = self.e_circ()?;
        let eb = self.e_bullet()?;
        let objs = c.objects(self.cfg.max_size);
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
        let mut pairs = Vec::new();
        let mut lists: BTreeMap<(usize, usize), Vec<Span<C::Mor>>> = BTreeMap::new();
        while pairs.len() < self.cfg.samples {
            let (i, j) = (rng.gen_range(0..objs.len()), rng.gen_range(0..objs.len()));
            let list = lists
                .entry((i, j))
                .or_insert_with(|| c.spans_up_to(&objs[i], &objs[j], self.cfg.apex_bound));
            if list.is_empty() {
                continue;
            }
            let s1 = list[rng.gen_range(0..list.len())].clone();
            let s2 = list[rng.gen_range(0..list.len())].clone();
            pairs.push((s1, s2));
        }
        let bound = self.cfg.bound;
        let related = Mutex::new(0usize);
        let v = self.exec().all(&pairs, |(s1, s2)| {
            let run = || -> Result<Verdict> {
                let (lo, _) = sim_e_search(c, eo, s1, s2, bound)?;
                if !lo.is_holds() {
                    return Ok(Verdict::Holds);
                }
                *related.lock().unwrap() += 1;
                let (hi, _) = sim_e_search(c, eb, s1, s2, bound)?;
                Ok(match hi {
                    Verdict::Fails { .. } => Verdict::fails(
                        Witness::new("s1 ∼E∘ s2 but not s1 ∼E• s2")
                            .text("s1", format_span(c, s1))
                            .text("s2", format_span(c, s2)),
                    ),
                    other => other,
                })
            };
            lift(run())
        });
        let related = related.into_inner().unwrap();
        Ok((v, Some(json!({ "pairs": pairs.len(), "relatedUnderSimEo": related }))))
    }

    /// Graphs give a bijection from `hom(A, B)` to the extracted maps, and,
    /// with `classify`, covers and monos are the graphs of E-morphisms and
    /// monomorphisms.
    fn graph_bijection(&self, classify: bool) -> Result<Outcome> {
        let c = self.c;
        let v = self.view()?;
        let mc = self.map_cat()?;
        let objs = c.objects(self.cfg.max_size);
        let sys = if classify { Some(self.sys()?) } else { None };
        let mut verdict = Verdict::Holds;
        let mut checked = 0;
        for a in &objs {
            for b in &objs {
                let (i, j) = (mc.object_index(a).expect("listed"), mc.object_index(b).expect("listed"));
                let maps = mc.hom(i, j);
                let base = c.hom(a, b);
                let mut hit = vec![false; maps.len()];
                for f in &base {
                    checked += 1;
                    let g = v.graph(f)?;
                    let mut found = None;
                    for (k, &m) in maps.iter().enumerate() {
                        if v.eq(&g, &mc.maps[m])?.is_holds() {
                            found = Some(k);
                            break;
                        }
                    }
                    let Some(k) = found else {
                        verdict = verdict.and(Verdict::fails(
                            Witness::new("graph of f is not an extracted map").text("f", c.format_mor(f)),
                        ));
                        continue;
                    };
                    if let Some(sys) = sys {
                        let m = maps[k];
                        let e_member = sys.e.contains(c, f);
                        let mono = c.is_mono(f);
                        if e_member.is_unknown() || mono.is_unknown() {
                            verdict = verdict.and(Verdict::unknown("class membership undecided"));
                        } else if e_member.is_holds() != mc.cover[m] || mono.is_holds() != mc.mono[m] {
                            verdict = verdict.and(Verdict::fails(
                                Witness::new("cover/mono tag differs from E/mono membership")
                                    .text("f", c.format_mor(f))
                                    .item("cover", mc.cover[m])
                                    .item("mono", mc.mono[m]),
                            ));
                        }
                    } else if hit[k] {
                        verdict = verdict.and(Verdict::fails(
                            Witness::new("two morphisms with the same graph").text("f", c.format_mor(f)),
                        ));
                    }
                    hit[k] = true;
                }
                if sys.is_none() {
                    if let Some(k) = hit.iter().position(|h| !h) {
                        verdict = verdict.and(Verdict::fails(
                            Witness::new("map that is not a graph").text("r", format_span(c, &mc.maps[maps[k]])),
                        ));
                    }
                }
            }
        }
        Ok((verdict, Some(json!({ "morphisms": checked }))))
    }
}

/// Searches for distinct functors `u ≠ v` with `m∘u = m∘v` for each
/// carrier functor `m` in the class.
fn equalized_pair_probe(c: &FinCat, m: &MorClass<Functor>, mors: &[Functor]) -> Verdict {
    Verdict::all(mors.iter().filter(|f| m.contains(c, f).is_holds()).map(|f| match c.find_equalized_pair(f) {
        None => Verdict::Holds,
        Some((u, v)) => Verdict::fails(
            Witness::new("m∘u = m∘v with u ≠ v")
                .text("m", c.format_mor(f))
                .text("u", c.format_mor(&u))
                .text("v", c.format_mor(&v)),
        ),
    }))
}

fn dispatch(cmd: Command, cfg: &PipelineConfig, only: Option<&str>) -> Result<Vec<ReportLine>> {
    match cfg.category {
        CategoryKind::Finset => {
            let c = FinSet::new(cfg.max_size);
            Runner::new(&c, cfg, cmd, parse_span_finset, None)?.run(only)
        }
        CategoryKind::Fincat => {
            let c = FinCat::new(cfg.max_objects, cfg.max_morphisms);
            Runner::new(&c, cfg, cmd, parse_span_generic::<FinCat>, Some(equalized_pair_probe))?.run(only)
        }
        CategoryKind::Table => {
            let path = cfg
                .file
                .as_deref()
                .ok_or_else(|| CatError::Config("--category table needs --file".into()))?;
            let text = std::fs::read_to_string(path).map_err(|e| CatError::Config(format!("{path}: {e}")))?;
            let c = TableCategory::from_json_str(path, &text)?;
            Runner::new(&c, cfg, cmd, parse_span_generic::<TableCategory>, None)?.run(only)
        }
    }
}

/// Runs every check of a command.
pub fn run(cmd: Command, cfg: &PipelineConfig) -> Result<Vec<ReportLine>> {
    dispatch(cmd, cfg, None)
}

/// Runs one named check of a command in isolation.
pub fn run_check(cmd: Command, cfg: &PipelineConfig, check: &str) -> Result<ReportLine> {
    Ok(dispatch(cmd, cfg, Some(check))?.remove(0))
}

/// Recovers the command and configuration recorded on a report line.
pub fn config_of(line: &ReportLine) -> Result<(Command, PipelineConfig)> {
    let cmd = line
        .config
        .get("command")
        .and_then(Value::as_str)
        .ok_or_else(|| CatError::parse(&line.check, "report line has no command"))?
        .parse()?;
    let cfg = serde_json::from_value(line.config.clone()).map_err(|e| CatError::parse(&line.check, e.to_string()))?;
    Ok((cmd, cfg))
}

/// Reruns every failing check of a report in isolation; each replay line
/// holds when the check fails again with the same witness.
pub fn replay(lines: &[ReportLine]) -> Result<Vec<ReportLine>> {
    let mut out = Vec::new();
    for line in lines.iter().filter(|l| l.verdict == crate::verdict::Outcome::Fails) {
        let (cmd, cfg) = config_of(line)?;
        let fresh = run_check(cmd, &cfg, &line.check)?;
        let same = fresh.verdict == line.verdict && fresh.witness == line.witness;
        let verdict = Verdict::from_bool(same, || {
            Witness::new("replayed check differs")
                .text("recorded", line.verdict().to_string())
                .text("replayed", fresh.verdict().to_string())
        });
        let mut r = line.clone();
        r.check = format!("replay:{}", line.check);
        r.detail = None;
        r.elapsed = None;
        r.set_verdict(&verdict);
        out.push(r);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(system: &str, relation: RelationTag) -> PipelineConfig {
        PipelineConfig { system: Some(system.into()), relation, samples: 20, ..PipelineConfig::default() }
    }

    #[test]
    fn names_round_trip() {
        for c in [Command::Validate, Command::CheckAllegory, Command::MapCounit] {
            assert_eq!(c.as_str().parse::<Command>().unwrap(), c);
        }
        assert!("simX".parse::<RelationTag>().is_err());
    }

    #[test]
    fn iso_all_fails_the_allegorical_relation_and_replays() {
        let lines = run(Command::CheckAllegory, &cfg("iso-all", RelationTag::SimE)).unwrap();
        let rel = lines.iter().find(|l| l.check == "allegorical-relation").unwrap();
        assert!(rel.verdict().is_fails());
        let agree = lines.iter().find(|l| l.check == "equivalence-agreement").unwrap();
        assert!(agree.verdict().is_holds(), "{agree:?}");
        let unit = lines.iter().find(|l| l.check == "unit").unwrap();
        assert!(unit.verdict().is_unknown());
        let replayed = replay(&lines).unwrap();
        assert!(!replayed.is_empty());
        assert!(replayed.iter().all(|l| l.verdict().is_holds()), "{replayed:?}");
    }

    #[test]
    fn unknown_check_is_a_config_error() {
        assert!(run_check(Command::Validate, &PipelineConfig::default(), "nope").is_err());
    }
}
