use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use lexigauge::metrics::LexicalAnalyzer;
use lexigauge::semnet::{betweenness, build_coword_graph, louvain_communities, EdgeLength, GraphPolicy};
use lexigauge::stats::{kde, shapiro_wilk, wilcoxon_rank_sum};
use lexigauge_bench::{shifted_samples, synthetic_corpus};

fn bm_metrics(c: &mut Criterion) {
    let corpus = synthetic_corpus("m", 500, 1);
    let analyzer = LexicalAnalyzer::default();
    let mut group = c.benchmark_group("metrics");
    group.throughput(Throughput::Elements(corpus.len() as u64));
    group.bench_function("measure 500 documents", |b| {
        b.iter(|| corpus.iter().map(|r| analyzer.measure(r).unwrap()).collect::<Vec<_>>())
    });
    group.finish();
}

fn bm_stats(c: &mut Criterion) {
    let mut group = c.benchmark_group("stats");
    for n in [100usize, 500, 5000] {
        let (x, y) = shifted_samples(n, 0.2, 2);
        group.bench_with_input(BenchmarkId::new("rank sum", n), &n, |b, _| {
            b.iter(|| wilcoxon_rank_sum(&x, &y).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("shapiro-wilk", n), &n, |b, _| {
            b.iter(|| shapiro_wilk(&x).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("kde 512", n), &n, |b, _| {
            b.iter(|| kde(&x, 512).unwrap())
        });
    }
    group.finish();
}

fn bm_semnet(c: &mut Criterion) {
    let mut group = c.benchmark_group("semnet");
    for docs in [200usize, 500, 2000] {
        let corpus = synthetic_corpus("g", docs, 3);
        let titles: Vec<&str> = corpus.iter().map(|r| r.title.as_str()).collect();
        let policy = GraphPolicy::default();
        let graph = build_coword_graph(&titles, &policy).unwrap();
        group.bench_with_input(BenchmarkId::new("build graph", docs), &docs, |b, _| {
            b.iter(|| build_coword_graph(&titles, &policy).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("louvain", docs), &docs, |b, _| {
            b.iter(|| louvain_communities(&graph, 1.0, 0).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("betweenness", docs), &docs, |b, _| {
            b.iter(|| betweenness(&graph, EdgeLength::Unit))
        });
    }
    group.finish();
}

criterion_group!(benches, bm_metrics, bm_stats, bm_semnet);
criterion_main!(benches);
