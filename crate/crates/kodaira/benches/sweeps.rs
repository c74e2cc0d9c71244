use criterion::{criterion_group, criterion_main, Criterion};
use kodaira::fixedlocus::fixed_locus_with;
use kodaira::forms::dolbeault_action;
use kodaira::lifts::SpecialLift;
use kodaira::par::{self, Exec};
use kodaira::sample::Sampler;
use kodaira::surface::KodairaData;

const MODES: [(&str, Exec); 2] = [("parallel", Exec::Parallel), ("sequential", Exec::Sequential)];

fn automorphisms(seed: u64, n: usize) -> Vec<(KodairaData, SpecialLift)> {
    let mut s = Sampler::new(seed);
    (0..n)
        .map(|_| {
            let d = s.data();
            let l = s.automorphism_lift(&d).unwrap();
            (d, l)
        })
        .collect()
}

fn fixed_loci(c: &mut Criterion) {
    let batch = automorphisms(1, 256);
    let mut group = c.benchmark_group("fixed_locus_batch");
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| par::map(exec, &batch, |(d, l)| fixed_locus_with(l, d, Exec::Sequential).unwrap()))
        });
    }
    group.finish();
}

fn cohomology_batch(c: &mut Criterion) {
    let batch = automorphisms(2, 32);
    let mut group = c.benchmark_group("dolbeault_action_batch");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| par::map(exec, &batch, |(d, l)| dolbeault_action(l, d).unwrap())));
    }
    group.finish();
}

criterion_group!(benches, fixed_loci, cohomology_batch);
criterion_main!(benches);
