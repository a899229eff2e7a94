//! Acceptance suite: one pass/fail line per criterion, nonzero exit if any
//! criterion fails. Brute-force oracles work on relations as pair sets and
//! on raw function tables.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spanrel::allegory::{
    allegory_suite, check_allegorical_criterion, check_allegorical_relation, check_within_monos, retraction_sample,
    Region,
};
use spanrel::classes::{carrier, m_star, FactSystem, MorClass};
use spanrel::instances::finset::{FinFn, RelationJson};
use spanrel::instances::FinSet;
use spanrel::maps::{check_gamma_pullbacks, counit_check, map_category, triangle_on_classes, triangle_on_maps};
use spanrel::pipeline::{self, Command, PipelineConfig, RelationTag};
use spanrel::quotient::{Equivalence, QuotientView};
use spanrel::report::{write_lines, Format, ReportLine};
use spanrel::span::{check_s_r_round_trip, rel_compose, span_compose, span_meet, Relation};
use spanrel::sweep::Exec;
use spanrel::{Category, Outcome, Span, Verdict};

type Pairs = BTreeSet<(usize, usize)>;
type Check = std::result::Result<String, String>;

// ---- oracles ----

fn all_relations(a: usize, b: usize) -> Vec<Pairs> {
    let cells: Vec<(usize, usize)> = (0..a).flat_map(|x| (0..b).map(move |y| (x, y))).collect();
    (0..1u32 << cells.len())
        .map(|mask| cells.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| *p).collect())
        .collect()
}

fn oracle_compose(r1: &Pairs, r2: &Pairs) -> Pairs {
    let mut out = Pairs::new();
    for &(a, b) in r1 {
        for &(b2, c) in r2 {
            if b == b2 {
                out.insert((a, c));
            }
        }
    }
    out
}

fn tables(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out.into_iter().flat_map(|t| (0..n).map(move |v| [t.clone(), vec![v]].concat())).collect();
    }
    out
}

fn fun(n: usize, t: &[usize]) -> FinFn {
    FinFn::new(n, t.to_vec()).unwrap()
}

fn image_set(n: usize, t: &[usize]) -> BTreeSet<usize> {
    let s: BTreeSet<usize> = t.iter().copied().collect();
    debug_assert!(s.iter().all(|&v| v < n));
    s
}

fn span_of(dom: usize, cod: usize, r: &Pairs) -> Span<FinFn> {
    RelationJson { dom, cod, pairs: r.iter().copied().collect() }.to_span()
}

fn pairs_of(s: &Span<FinFn>) -> Pairs {
    RelationJson::from_span(s).pairs.into_iter().collect()
}

/// `r: X → Y` is split epi and `(r, r′)` is the kernel pair of some
/// `f: Y → Z`, found by exhaustive search.
fn oracle_effective_retraction(r: &FinFn) -> bool {
    let (x, y) = (r.dom(), r.cod);
    if image_set(y, &r.table).len() != y {
        return false;
    }
    for rp in tables(x, y) {
        for z in 0..=y {
            for f in tables(y, z) {
                let kernel: Pairs = (0..y).flat_map(|a| (0..y).map(move |b| (a, b))).filter(|&(a, b)| f[a] == f[b]).collect();
                let pairing: Vec<(usize, usize)> = (0..x).map(|i| (r.table[i], rp[i])).collect();
                let distinct: Pairs = pairing.iter().copied().collect();
                if distinct.len() == x && distinct == kernel {
                    return true;
                }
            }
        }
    }
    false
}

fn random_fun(rng: &mut ChaCha8Rng, m: usize, n: usize) -> FinFn {
    fun(n, &(0..m).map(|_| rng.gen_range(0..n)).collect::<Vec<_>>())
}

/// A random span `a ← x → b` with `x ≤ max_apex`, nonempty legs when needed.
fn random_span(rng: &mut ChaCha8Rng, a: usize, b: usize, max_apex: usize) -> Span<FinFn> {
    let x = if a == 0 || b == 0 { 0 } else { rng.gen_range(0..=max_apex) };
    Span::new(random_fun(rng, x, a), random_fun(rng, x, b))
}

fn rel_view<'a>(c: &'a FinSet, system: &str) -> QuotientView<'a, FinSet> {
    QuotientView::new(c, Equivalence::Factorization(FactSystem::named(c, system).unwrap()), "simE", 2)
}

fn expect(v: &Verdict, what: &str) -> std::result::Result<(), String> {
    if v.is_holds() {
        Ok(())
    } else {
        Err(format!("{what}: {v}"))
    }
}

fn line<'a>(lines: &'a [ReportLine], check: &str) -> std::result::Result<&'a ReportLine, String> {
    lines.iter().find(|l| l.check == check).ok_or_else(|| format!("no `{check}` line"))
}

// ---- criteria ----

fn oracle_equivalence() -> Check {
    let c = FinSet::new(3);
    let sys = FactSystem::named(&c, "surj-inj").unwrap();
    let rels: Vec<Vec<Pairs>> = (0..=3).map(|a| (0..=3).map(|b| all_relations(a, b)).collect::<Vec<_>>()).flatten().collect();
    let rels_of = |a: usize, b: usize| &rels[a * 4 + b];
    let (mut compositions, mut meets) = (0usize, 0usize);
    for a in 0..=3 {
        for b in 0..=3 {
            let spans: Vec<Span<FinFn>> = rels_of(a, b).iter().map(|r| span_of(a, b, r)).collect();
            for c3 in 0..=3 {
                let seconds: Vec<(Pairs, Span<FinFn>)> =
                    rels_of(b, c3).iter().map(|r| (r.clone(), span_of(b, c3, r))).collect();
                let bad = Exec::Parallel.map(&spans, |s1| {
                    let r1 = pairs_of(s1);
                    for (r2, s2) in &seconds {
                        let got = pairs_of(&rel_compose(&c, &sys, s1, s2).unwrap());
                        if got != oracle_compose(&r1, r2) {
                            return Some(format!("compose {r1:?} then {r2:?}: {got:?}"));
                        }
                    }
                    None
                });
                if let Some(m) = bad.into_iter().flatten().next() {
                    return Err(m);
                }
                compositions += spans.len() * seconds.len();
            }
            let bad = Exec::Parallel.map(&spans, |s1| {
                let r1 = pairs_of(s1);
                for s2 in &spans {
                    let r2 = pairs_of(s2);
                    let got = pairs_of(&span_meet(&c, s1, s2).unwrap());
                    let want: Pairs = r1.intersection(&r2).copied().collect();
                    if got != want {
                        return Some(format!("meet {r1:?} ∧ {r2:?}: {got:?}"));
                    }
                }
                None
            });
            if let Some(m) = bad.into_iter().flatten().next() {
                return Err(m);
            }
            meets += spans.len() * spans.len();
        }
    }
    Ok(format!("{compositions} compositions, {meets} meets, 0 mismatches"))
}

fn round_trip() -> Check {
    let c = FinSet::new(3);
    let sys = FactSystem::named(&c, "surj-inj").unwrap();
    let mut relations = Vec::new();
    let mut classes = Vec::new();
    for a in 0..=2 {
        for b in 0..=2 {
            for r in all_relations(a, b) {
                let s = span_of(a, b, &r);
                relations.push(Relation::new(&c, &sys, s.clone()).unwrap());
                classes.push(s);
            }
            classes.extend(c.spans_up_to(&a, &b, 3));
        }
    }
    let exhaustive = check_s_r_round_trip(&c, &sys, &relations, &classes, &[]).map_err(|e| e.to_string())?;
    expect(&exhaustive, "exhaustive ≤ 2")?;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut sampled = Vec::new();
    let mut sampled_rel = Vec::new();
    while sampled.len() < 1000 {
        let (a, b) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let s = random_span(&mut rng, a, b, 4);
        sampled.push(s);
        let r: Pairs = (0..a).flat_map(|x| (0..b).map(move |y| (x, y))).filter(|_| rng.gen_bool(0.5)).collect();
        sampled_rel.push(Relation::new(&c, &sys, span_of(a, b, &r)).unwrap());
    }
    let mut composable = Vec::new();
    while composable.len() < 500 {
        let (a, b, d) = (rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=3));
        composable.push((random_span(&mut rng, a, b, 3), random_span(&mut rng, b, d, 3)));
    }
    let v = check_s_r_round_trip(&c, &sys, &sampled_rel, &sampled, &composable).map_err(|e| e.to_string())?;
    expect(&v, "sampled at size 3")?;
    // Functoriality against the pair-set oracle as well.
    for (k1, k2) in &composable {
        let got = pairs_of(&span_compose(&c, k1, k2).unwrap());
        if got != oracle_compose(&pairs_of(k1), &pairs_of(k2)) {
            return Err("image of a span composite differs from relational composite".into());
        }
    }
    Ok(format!(
        "{} relations + {} classes exhaustive; 1000 seeded samples; {} composable pairs",
        relations.len(),
        classes.len(),
        composable.len()
    ))
}

fn suite_on_rel() -> Check {
    let c = FinSet::new(3);
    let v = rel_view(&c, "surj-inj");
    let region = Region::new(&c, 2, 3, 1000, 3);
    let report = allegory_suite(&v, &region, Exec::Parallel).map_err(|e| e.to_string())?;
    let mut total = 0;
    for l in &report.laws {
        expect(&l.verdict, &l.law)?;
        total += l.checked;
    }
    Ok(format!("{} laws, {total} instances checked", report.laws.len()))
}

fn four_way_agreement() -> Check {
    let c = FinSet::new(3);
    let mors = carrier(&c, 3);
    let mut notes = Vec::new();
    for (system, expected) in [("surj-inj", Outcome::Holds), ("iso-all", Outcome::Fails), ("all-iso", Outcome::Holds)] {
        let sys = FactSystem::named(&c, system).unwrap();
        let v = rel_view(&c, system);
        let suite = allegory_suite(&v, &Region::new(&c, 2, 3, 200, 4), Exec::Parallel)
            .map_err(|e| e.to_string())?
            .overall();
        let relation = check_allegorical_relation(&v, &mors, Exec::Parallel);
        let rs = retraction_sample(&c, &mors, 6);
        let criterion = check_allegorical_criterion(&c, &sys.e, &rs, 3, Exec::Parallel);
        let monos = check_within_monos(&c, &sys.m, &mors, Exec::Parallel);
        let outcomes = [suite.outcome(), relation.outcome(), criterion.outcome(), monos.outcome()];
        if outcomes.iter().any(|o| *o != expected) {
            return Err(format!("{system}: suite/relation/criterion/monos = {outcomes:?}"));
        }
        if expected == Outcome::Fails {
            let w = criterion.witness().ok_or("criterion failed without a witness")?;
            let r_text = w.items.iter().find(|(k, _)| k == "r").map(|(_, r)| r.as_str()).ok_or("criterion witness has no r")?;
            let r = c.parse_mor(r_text).map_err(|e| e.to_string())?;
            if !oracle_effective_retraction(&r) {
                return Err(format!("witness {r_text} is not an effective retraction"));
            }
            notes.push(format!("{system} fails with effective retraction r = {r_text}"));
        } else {
            notes.push(format!("{system} holds"));
        }
    }
    Ok(notes.join("; "))
}

fn ebullet_pipeline() -> Check {
    let cfg = PipelineConfig {
        system: Some("iso-all".into()),
        relation: RelationTag::SimEbullet,
        max_size: 3,
        samples: 300,
        seed: 5,
        ..PipelineConfig::default()
    };
    let lines = pipeline::run(Command::CheckAllegory, &cfg).map_err(|e| e.to_string())?;
    for l in lines.iter().filter(|l| l.check.starts_with("allegory-suite.")) {
        expect(&l.verdict(), &l.check)?;
    }
    let unit = line(&lines, "unit")?;
    expect(&unit.verdict(), "unit")?;
    let at = unit.detail.as_ref().and_then(|d| d.get("unit")).and_then(|u| u.as_str());
    if at != Some("1") {
        return Err(format!("unit found at {at:?}, not the terminal object"));
    }
    let tab = line(&lines, "tabular")?;
    expect(&tab.verdict(), "tabular")?;

    let c = FinSet::new(3);
    let all = MorClass::builtin(&c, "all").unwrap();
    let ms = m_star(&c, &all, 3);
    let mut sections = 0;
    for f in carrier(&c, 3) {
        for t in tables(f.cod, f.dom()) {
            if (0..f.cod).all(|y| f.table[t[y]] == y) {
                sections += 1;
                let s = fun(f.dom(), &t);
                if !ms.contains(&c, &s).is_holds() {
                    return Err(format!("section {s:?} of {f:?} is not in M*"));
                }
            }
        }
    }
    let classes = tab.detail.as_ref().and_then(|d| d.get("classes")).cloned().unwrap_or_default();
    Ok(format!("order, modular, unit at 1, tabular on {classes} classes; {sections} sections all in M*"))
}

fn circ_within_bullet() -> Check {
    let cfg = PipelineConfig {
        system: Some("iso-all".into()),
        max_size: 3,
        samples: 1000,
        seed: 6,
        ..PipelineConfig::default()
    };
    let l = pipeline::run_check(Command::Ebullet, &cfg, "simEo-within-simEbullet").map_err(|e| e.to_string())?;
    expect(&l.verdict(), "simEo ⇒ simEbullet")?;
    let d = l.detail.as_ref().ok_or("no detail")?;
    let pairs = d["pairs"].as_u64().unwrap_or(0);
    let related = d["relatedUnderSimEo"].as_u64().unwrap_or(0);
    if pairs < 1000 || related == 0 {
        return Err(format!("{pairs} pairs, {related} related under simEo"));
    }
    Ok(format!("{pairs} pairs, {related} related under simEo, 0 violations"))
}

fn map_extraction() -> Check {
    let c = FinSet::new(4);
    let v = rel_view(&c, "surj-inj");
    let objs: Vec<usize> = (0..=4).collect();
    let mc = map_category(&v, &objs, Exec::Parallel).map_err(|e| e.to_string())?;
    let mut counted = 0;
    for a in 0..=3 {
        for b in 0..=3usize {
            let hom = mc.hom(mc.object_index(&a).unwrap(), mc.object_index(&b).unwrap()).to_vec();
            let want = b.pow(a as u32);
            if hom.len() != want {
                return Err(format!("{a} → {b}: {} maps, expected {want}", hom.len()));
            }
            let mut seen = BTreeSet::new();
            for t in tables(a, b) {
                let g = v.graph(&fun(b, &t)).unwrap();
                let idx = hom
                    .iter()
                    .copied()
                    .find(|&m| v.eq(&g, &mc.maps[m]).unwrap().is_holds())
                    .ok_or_else(|| format!("graph of {t:?} is not an extracted map"))?;
                if !seen.insert(idx) {
                    return Err(format!("{t:?} shares its map with another function"));
                }
                let surj = image_set(b, &t).len() == b;
                let inj = image_set(b, &t).len() == a;
                if mc.cover[idx] != surj || mc.mono[idx] != inj {
                    return Err(format!("{a} → {b} {t:?}: cover {} mono {}", mc.cover[idx], mc.mono[idx]));
                }
                counted += 1;
            }
        }
    }
    Ok(format!("{counted} maps over |A|,|B| ≤ 3 match |B|^|A|; covers = surjections, monos = injections"))
}

fn counit_and_triangles() -> Check {
    let c = FinSet::new(4);
    let v = rel_view(&c, "surj-inj");
    let objs: Vec<usize> = (0..=4).collect();
    let mc = map_category(&v, &objs, Exec::Parallel).map_err(|e| e.to_string())?;
    let pairs: Vec<(usize, usize)> = (0..=2).flat_map(|a| (0..=2).map(move |b| (a, b))).collect();
    let rows = counit_check(&v, &mc, &pairs).map_err(|e| e.to_string())?;
    for (row, (a, b)) in rows.iter().zip(&pairs) {
        expect(&row.verdict, &format!("counit {a} → {b}"))?;
        let want = 1usize << (a * b);
        if row.classes != want || row.map_relations != want {
            return Err(format!("{a} → {b}: {} map relations, {} classes, expected {want}", row.map_relations, row.classes));
        }
    }
    expect(&triangle_on_maps(&v, &mc, Exec::Parallel), "triangle on maps")?;
    let mut classes = Vec::new();
    for (a, b) in &pairs {
        classes.extend(v.complete_hom_classes(a, b).unwrap());
        classes.extend(c.spans_up_to(a, b, 2));
    }
    expect(&triangle_on_classes(&v, &classes, Exec::Parallel), "triangle on classes")?;
    Ok(format!("{} hom-sets bijective; triangles on {} maps and {} spans", rows.len(), mc.maps.len(), classes.len()))
}

fn gamma_pullbacks() -> Check {
    let c = FinSet::new(3);
    let v = rel_view(&c, "surj-inj");
    let mors = carrier(&c, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut cospans = Vec::new();
    while cospans.len() < 300 {
        let h = &mors[rng.gen_range(0..mors.len())];
        let k = &mors[rng.gen_range(0..mors.len())];
        if h.cod == k.cod {
            cospans.push((h.clone(), k.clone()));
        }
    }
    expect(&check_gamma_pullbacks(&v, &cospans, Exec::Parallel), "Γ on pullbacks")?;
    // The square is a pullback iff its legs tabulate {(a, b) | h a = k b}.
    for (h, k) in &cospans {
        let pb = c.pullback(h, k).unwrap();
        let want: Pairs = (0..h.dom())
            .flat_map(|a| (0..k.dom()).map(move |b| (a, b)))
            .filter(|&(a, b)| h.table[a] == k.table[b])
            .collect();
        let legs: Vec<(usize, usize)> = (0..pb.p1.dom()).map(|x| (pb.p1.table[x], pb.p2.table[x])).collect();
        let got: Pairs = legs.iter().copied().collect();
        if got != want || got.len() != legs.len() {
            return Err(format!("pullback of {h:?}, {k:?} is not the tabulated relation"));
        }
    }
    Ok(format!("{} sampled squares", cospans.len()))
}

fn determinism() -> Check {
    let render = |cmd: Command, cfg: &PipelineConfig| -> std::result::Result<Vec<u8>, String> {
        let lines = pipeline::run(cmd, cfg).map_err(|e| e.to_string())?;
        let mut out = Vec::new();
        write_lines(&mut out, &lines, Format::Json).map_err(|e| e.to_string())?;
        Ok(out)
    };
    let mut bytes = 0;
    for (cmd, system) in [(Command::CheckAllegory, "iso-all"), (Command::Ebullet, "iso-all"), (Command::Tabulate, "surj-inj")] {
        let cfg = PipelineConfig { system: Some(system.into()), max_size: 3, seed: 11, samples: 100, ..PipelineConfig::default() };
        let first = render(cmd, &cfg)?;
        let second = render(cmd, &cfg)?;
        if first != second {
            return Err(format!("{cmd} reports differ between runs"));
        }
        let sequential = render(cmd, &PipelineConfig { sequential: true, ..cfg.clone() })?;
        let strip = |b: &[u8]| String::from_utf8_lossy(b).replace("\"sequential\":true", "\"sequential\":false");
        if strip(&first) != strip(&sequential) {
            return Err(format!("{cmd} reports differ between parallel and sequential sweeps"));
        }
        bytes += first.len();
    }
    Ok(format!("3 commands, {bytes} bytes identical across runs and executors"))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("relation composition and meet match the pair-set oracle", oracle_equivalence),
        ("R and S are mutually inverse and R is functorial", round_trip),
        ("allegory laws hold on relations", suite_on_rel),
        ("four characterizations of allegoricity agree", four_way_agreement),
        ("E• quotient of iso-all is a unitary tabular allegory", ebullet_pipeline),
        ("∼E∘ implies ∼E• on sampled span pairs", circ_within_bullet),
        ("map extraction recovers functions", map_extraction),
        ("counit bijection and triangular identities", counit_and_triangles),
        ("Γ preserves pullbacks", gamma_pullbacks),
        ("reports are deterministic", determinism),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(note) => println!("criterion {:>2} PASS  {title} ({note}) [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {title}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
