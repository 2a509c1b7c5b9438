//! Criterion benchmarks for the hot kernels: exact rank, polynomial
//! Smith form, pencil invariants and the intertwiner similarity decider.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use skewlie::gadgets::intertwiner_similarity;
use skewlie::pencil::{emit_canonical_pair, pencil_invariants, SkewPencilInvariants};
use skewlie::smith::{smith_polymatrix, PolyMatrix};
use skewlie::{FieldSpec, Matrix, MatrixPair, Polynomial};

struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 33
    }
}

fn random_matrix(rng: &mut Lcg, f: &FieldSpec, n: usize, spread: u64) -> Matrix {
    Matrix::from_fn(f.clone(), n, n, |_, _| f.from_i64((rng.next() % spread) as i64))
}

fn bench_rank(c: &mut Criterion) {
    let f7 = FieldSpec::prime_field(7).unwrap();
    let q = FieldSpec::rationals();
    let mut rng = Lcg(0xBE7C);
    let m_f7 = random_matrix(&mut rng, &f7, 40, 7);
    let m_q = random_matrix(&mut rng, &q, 20, 9);
    c.bench_function("rank 40x40 F7", |b| b.iter(|| black_box(&m_f7).rank()));
    c.bench_function("rank 20x20 Q", |b| b.iter(|| black_box(&m_q).rank()));
}

fn bench_smith(c: &mut Criterion) {
    let f7 = FieldSpec::prime_field(7).unwrap();
    let mut rng = Lcg(0xBE75);
    let a = random_matrix(&mut rng, &f7, 8, 7);
    let b = random_matrix(&mut rng, &f7, 8, 7);
    let pencil = PolyMatrix::linear_pencil(&a, &b).unwrap();
    c.bench_function("smith 8x8 linear pencil F7", |bch| {
        bch.iter(|| smith_polymatrix(black_box(&pencil)))
    });
}

fn bench_pencil_invariants(c: &mut Criterion) {
    let f7 = FieldSpec::prime_field(7).unwrap();
    let inv = SkewPencilInvariants::new(
        f7.clone(),
        vec![
            (Polynomial::linear_from_root(f7.clone(), &f7.from_i64(2)), 2),
            (Polynomial::from_i64(&f7, &[1, 0, 1]), 1),
        ],
        vec![1],
        vec![1, 2],
    );
    let canonical = emit_canonical_pair(&inv).unwrap();
    let mut rng = Lcg(0xBE71);
    let q = loop {
        let m = random_matrix(&mut rng, &f7, canonical.size(), 7);
        if m.is_invertible() {
            break m;
        }
    };
    let pair = canonical.congruence(&q).unwrap();
    c.bench_function("pencil invariants 13x13 F7", |b| {
        b.iter(|| pencil_invariants(black_box(&pair)).unwrap())
    });
}

fn bench_intertwiner(c: &mut Criterion) {
    let f3 = FieldSpec::prime_field(3).unwrap();
    let mut rng = Lcg(0xBE72);
    let p1 = MatrixPair::new(
        random_matrix(&mut rng, &f3, 3, 3),
        random_matrix(&mut rng, &f3, 3, 3),
    )
    .unwrap();
    let s = loop {
        let m = random_matrix(&mut rng, &f3, 3, 3);
        if m.is_invertible() {
            break m;
        }
    };
    let p2 = p1.conjugate(&s).unwrap();
    c.bench_function("intertwiner similarity 3x3 F3", |b| {
        b.iter(|| intertwiner_similarity(black_box(&p1), black_box(&p2)).unwrap())
    });
}

criterion_group!(kernels, bench_rank, bench_smith, bench_pencil_invariants, bench_intertwiner);
criterion_main!(kernels);
