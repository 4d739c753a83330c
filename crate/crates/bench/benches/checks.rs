use criterion::{black_box, criterion_group, criterion_main, Criterion};

use oml_core::catalog::{boolean_algebra, mo};
use oml_core::congruence::{all_p_ideals, brute_force_congruences, malcev_csakany_check};
use oml_core::free::make_free;
use oml_core::lattice::validate;
use oml_core::terms::{check_identity, parse_equation};

fn lattice(c: &mut Criterion) {
    let free = make_free();
    let raw = free.oml.to_raw();
    c.bench_function("validate free2", |b| {
        b.iter(|| validate(black_box(&raw)).unwrap())
    });
    c.bench_function("commutes all pairs free2", |b| {
        b.iter(|| {
            let l = &free.oml;
            l.elements()
                .flat_map(|a| l.elements().map(move |b| (a, b)))
                .filter(|&(a, b)| l.commutes(a, b))
                .count()
        })
    });
}

fn identities(c: &mut Criterion) {
    let free = make_free();
    let (lhs, rhs) = parse_equation("(x <+l> y) <+l> y = x").unwrap();
    c.bench_function("right inverse identity free2", |b| {
        b.iter(|| assert!(check_identity(&free.oml, &lhs, &rhs).holds))
    });
    let (lhs, rhs) = parse_equation("(x <d> y) <d> z = x <d> (y <d> z)").unwrap();
    let b4 = boolean_algebra(4).unwrap();
    c.bench_function("delta associativity bool4", |b| {
        b.iter(|| assert!(check_identity(&b4, &lhs, &rhs).holds))
    });
}

fn congruences(c: &mut Criterion) {
    let free = make_free();
    c.bench_function("all p-ideals free2", |b| {
        b.iter(|| all_p_ideals(black_box(&free.oml)))
    });
    c.bench_function("malcev csakany free2", |b| {
        b.iter(|| malcev_csakany_check(black_box(&free.oml)))
    });
    let m2 = mo(2).unwrap();
    c.bench_function("brute force congruences mo2", |b| {
        b.iter(|| brute_force_congruences(black_box(&m2)).unwrap())
    });
}

criterion_group!(benches, lattice, identities, congruences);
criterion_main!(benches);
