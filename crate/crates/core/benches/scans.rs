use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ggroup::bol::classify_bol_with;
use ggroup::ledger::search_counterexample_with;
use ggroup::{bol_product, gen_group, Exec, Family, FiniteMagma, Subset, TheoremId};

const EXECS: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn bol_classification(c: &mut Criterion) {
    // S4 × {e, t} for the first involution t: 48 elements, 48³ Bol triples
    let s4 = gen_group(Family::Symmetric, 4).unwrap();
    let t = (0..24).find(|&x| x != 0 && s4.mul(x, x) == 0).unwrap();
    let a = bol_product(&s4, &Subset::new(s4.base(), [0, t]).unwrap()).unwrap();
    let mut group = c.benchmark_group("classify_bol");
    for (name, exec) in EXECS {
        group.bench_with_input(BenchmarkId::new(name, a.order()), &a, |b, a| {
            b.iter(|| classify_bol_with(a, exec).unwrap())
        });
    }
    group.finish();
}

fn certification(c: &mut Criterion) {
    let m = FiniteMagma::from_fn("Z120", 120, |a, b| (a + b) % 120).unwrap();
    let mut group = c.benchmark_group("certify");
    for (name, exec) in EXECS {
        group.bench_with_input(BenchmarkId::new(name, m.order()), &m, |b, m| {
            b.iter(|| ggroup::axioms::certify_with(m.clone(), exec).unwrap())
        });
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    for (name, exec) in EXECS {
        group.bench_function(BenchmarkId::new(name, "T1:20@8"), |b| {
            b.iter(|| search_counterexample_with(TheoremId::T1_20, 8, exec).unwrap())
        });
        group.bench_function(BenchmarkId::new(name, "T1:21ii@6"), |b| {
            b.iter(|| search_counterexample_with(TheoremId::T1_21ii, 6, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bol_classification, certification, search);
criterion_main!(benches);
