use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use spanrel::allegory::{allegory_suite, Region};
use spanrel::classes::{carrier, FactSystem, MorClass};
use spanrel::instances::FinSet;
use spanrel::maps::check_gamma_pullbacks;
use spanrel::quotient::{Equivalence, QuotientView};
use spanrel::span::sim_e_search;
use spanrel::sweep::Exec;
use spanrel::Category;

const MODES: [(&str, Exec); 2] = [("parallel", Exec::Parallel), ("sequential", Exec::Sequential)];

fn suite(c: &mut Criterion) {
    let fs = FinSet::new(3);
    let sys = FactSystem::named(&fs, "surj-inj").unwrap();
    let region = Region::new(&fs, 2, 3, 100, 7);
    let mut g = c.benchmark_group("allegory-suite");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| {
                let v = QuotientView::new(&fs, Equivalence::Factorization(sys.clone()), "simE", 2);
                allegory_suite(&v, &region, exec).unwrap()
            })
        });
    }
    g.finish();
}

fn pullbacks(c: &mut Criterion) {
    let fs = FinSet::new(3);
    let sys = FactSystem::named(&fs, "surj-inj").unwrap();
    let v = QuotientView::new(&fs, Equivalence::Factorization(sys), "simE", 2);
    let mut g = c.benchmark_group("gamma-pullbacks");
    g.sample_size(10);
    for size in [2, 3] {
        let mors = carrier(&fs, size);
        let mut cospans = Vec::new();
        for h in &mors {
            for k in mors.iter().filter(|k| fs.cod(h) == fs.cod(k)) {
                cospans.push((h.clone(), k.clone()));
            }
        }
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, size), &cospans, |b, cs| {
                b.iter(|| check_gamma_pullbacks(&v, cs, exec))
            });
        }
    }
    g.finish();
}

fn stable_search(c: &mut Criterion) {
    let fs = FinSet::new(3);
    let inj = MorClass::builtin(&fs, "injective").unwrap();
    let spans = fs.spans_up_to(&2, &2, 2);
    let pairs: Vec<_> = spans.iter().flat_map(|a| spans.iter().map(move |b| (a.clone(), b.clone()))).collect();
    let mut g = c.benchmark_group("sub-span-search");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| exec.map(&pairs, |(s1, s2)| sim_e_search(&fs, &inj, s1, s2, 3).map(|r| r.0.is_holds())))
        });
    }
    g.finish();
}

criterion_group!(benches, suite, pullbacks, stable_search);
criterion_main!(benches);
