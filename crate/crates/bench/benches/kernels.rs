use std::hint::black_box;

use carlitz::annih::{root_divisibility, verify_congruence_prop21, verify_qm, ExponentRange, QmCertificate};
use carlitz::carlitz::{alpha_ord_vector_adaptive, CarlitzContext};
use carlitz::lfun::LFunctions;
use carlitz::sinnott::{sinnott_indices, sinnott_module};
use carlitz::{ray_class_group, Fq, LaurentSeries};
use carlitz_bench::{cubic, full, poly, septic, Q24};
use criterion::{criterion_group, criterion_main, Criterion};

fn fieldpoly(c: &mut Criterion) {
    let a = poly(2, Q24);
    let b = poly(2, "1,0,1,0,1,1,1");
    c.bench_function("poly/factor deg 24", |z| z.iter(|| black_box(&a).factor()));
    c.bench_function("poly/mul_mod deg 24", |z| z.iter(|| black_box(&a).mul_mod(&b, &a)));
    let f = Fq::new(3).unwrap();
    let s = LaurentSeries::from_coeffs(&f, -2, (0..64).map(|i| f.from_int(i % 3 + 1)).collect(), 62);
    c.bench_function("laurent/inverse 64 terms", |z| z.iter(|| black_box(&s).inv(64).unwrap()));
}

fn carlitz_kernels(c: &mut Criterion) {
    let f = Fq::new(2).unwrap();
    c.bench_function("exp/context 200 terms", |z| z.iter(|| CarlitzContext::new(&f, black_box(200)).unwrap()));
    let ray = ray_class_group(&poly(2, "1,1,0,0,1")).unwrap();
    c.bench_function("alpha/ord vector m = T^4+T+1", |z| z.iter(|| alpha_ord_vector_adaptive(&ray, None).unwrap()));
    c.bench_function("ray/class group deg 6", |z| z.iter(|| ray_class_group(black_box(&poly(2, "1,0,1,0,1,1,1")))));
}

fn lfun_and_lattices(c: &mut Criterion) {
    let h = full(2, "1,1,0,0,1");
    c.bench_function("lfun/hR on H_{T^4+T+1}", |z| z.iter(|| LFunctions::new(&h, None).unwrap().hr_product().unwrap()));
    let s = septic();
    c.bench_function("sinnott/indices septic", |z| z.iter(|| sinnott_indices(&s, &sinnott_module(&s).unwrap()).unwrap()));
}

fn annihilation(c: &mut Criterion) {
    let mut g = c.benchmark_group("annih");
    g.sample_size(10);
    let s = cubic();
    g.bench_function("root divisibility cubic", |z| z.iter(|| root_divisibility(&s, ExponentRange::ThroughSMinusOne).unwrap()));
    let cert = QmCertificate {
        prime: poly(2, Q24),
        m: 9,
        norm_congruence: true,
        splits_completely: true,
        power_residues: vec![true; 2],
    };
    g.bench_function("verify Q_m prime deg 24", |z| z.iter(|| verify_qm(&s, &cert).unwrap()));
    g.bench_function("congruence at deg 24", |z| z.iter(|| verify_congruence_prop21(&s, &cert).unwrap()));
    g.finish();
}

criterion_group!(benches, fieldpoly, carlitz_kernels, lfun_and_lattices, annihilation);
criterion_main!(benches);
