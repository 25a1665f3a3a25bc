use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use entrench_bench::{chain, chain_ranking, corpus, domain};
use entrench_core::{logic, parse_formula, AgentProfile, ClassifierConfig, Mode, Rank};

fn entailment(c: &mut Criterion) {
    let mut g = c.benchmark_group("entails");
    for n in [4, 16, 64] {
        let (premises, goal) = chain(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| logic::entails(black_box(&premises), black_box(&goal)))
        });
    }
    g.finish();
}

fn maxi_adjust(c: &mut Criterion) {
    let mut g = c.benchmark_group("maxi_adjust");
    for n in [4, 12, 24] {
        let b = chain_ranking(n);
        let end = parse_formula(&format!("p(c{n})")).unwrap();
        let neg = end.clone().not();
        g.bench_with_input(BenchmarkId::new("contract", n), &n, |bench, _| {
            bench.iter(|| b.maxi_adjust(black_box(&end), Rank::ZERO).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("revise", n), &n, |bench, _| {
            bench.iter(|| b.maxi_adjust(black_box(&neg), Rank::from_milli(990)).unwrap())
        });
    }
    g.finish();
}

fn learn_replay(c: &mut Criterion) {
    let mut g = c.benchmark_group("learn_replay");
    g.sample_size(20);
    for docs in [20, 80] {
        let corpus = corpus(docs);
        g.bench_with_input(BenchmarkId::from_parameter(docs), &docs, |b, _| {
            b.iter(|| {
                let mut p = AgentProfile::with_domain(domain(), ClassifierConfig::default(), Mode::Paper).unwrap();
                for (d, j) in &corpus {
                    p = p.learn(d, *j).unwrap().0;
                }
                p
            })
        });
    }
    g.finish();
}

criterion_group!(benches, entailment, maxi_adjust, learn_replay);
criterion_main!(benches);
