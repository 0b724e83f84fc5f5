#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sdconv::classify::enumerate_42_binary;
use sdconv::constructions::{orthogonal_chain, OrthogonalStep};
use sdconv::{ConvolutionalCode, FieldSpec, Poly, PolyMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn f(q: u64) -> FieldSpec {
    FieldSpec::of_order(q).unwrap()
}

pub fn m(field: &FieldSpec, s: &str) -> PolyMatrix {
    PolyMatrix::parse(field, s).unwrap()
}

pub fn code(field: &FieldSpec, s: &str) -> ConvolutionalCode {
    ConvolutionalCode::parse(field, s).unwrap()
}

pub fn random_poly(field: &FieldSpec, rng: &mut impl Rng, max_deg: usize) -> Poly {
    let q = field.order();
    let coeffs = (0..=max_deg)
        .map(|_| field.element(rng.gen_range(0..q)).unwrap())
        .collect();
    Poly::from_coeffs(field, coeffs)
}

pub fn random_nonzero_scalar(field: &FieldSpec, rng: &mut impl Rng) -> Poly {
    let q = field.order();
    Poly::constant(field, field.element(rng.gen_range(1..q)).unwrap())
}

pub fn random_matrix(field: &FieldSpec, rng: &mut impl Rng, rows: usize, cols: usize, max_deg: usize) -> PolyMatrix {
    let entries = (0..rows * cols).map(|_| random_poly(field, rng, max_deg)).collect();
    PolyMatrix::new(field, rows, cols, entries).unwrap()
}

/// Product of random elementary operations; unimodular by construction.
pub fn random_unimodular(field: &FieldSpec, rng: &mut impl Rng, n: usize, ops: usize, max_deg: usize) -> PolyMatrix {
    let mut u = PolyMatrix::identity(field, n);
    if n == 0 {
        return u;
    }
    for _ in 0..ops {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        let mut e = PolyMatrix::identity(field, n);
        match rng.gen_range(0..3) {
            0 if i != j => e.set(i, j, random_poly(field, rng, max_deg)),
            1 if i != j => {
                e.set(i, i, Poly::zero(field));
                e.set(j, j, Poly::zero(field));
                e.set(i, j, Poly::one(field));
                e.set(j, i, Poly::one(field));
            }
            _ => e.set(i, i, random_nonzero_scalar(field, rng)),
        }
        u = e.mul(&u).unwrap();
    }
    u
}

/// Left-multiply a generator by a random unimodular matrix.
pub fn mix(c: &ConvolutionalCode, rng: &mut impl Rng) -> ConvolutionalCode {
    let u = random_unimodular(c.field(), rng, c.dimension(), 4, 1);
    ConvolutionalCode::new(u.mul(c.generator()).unwrap()).unwrap()
}

/// A column permutation step for orthogonal chains.
pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Known self-dual codes over several fields.
pub fn self_dual_seeds() -> Vec<ConvolutionalCode> {
    let mut seeds = enumerate_42_binary(1);
    seeds.push(code(&f(2), "1,1"));
    seeds.push(code(&f(5), "3,z,1,3*z ; 1,2*z+4,2,z+2"));
    seeds.push(code(&f(5), "1,2"));
    seeds.push(code(&f(13), "1,5"));
    seeds.push(code(&f(9), "1,a"));
    seeds.push(code(&f(2), "1,0,1,z,z^2,z^2+z ; 1,1,1,1,1,1 ; z,z,0,1,z+1,z"));
    seeds
}

/// Mixed corpus: self-dual codes, catastrophic self-orthogonal codes and
/// random generators.
pub fn mixed_corpus(seed: u64) -> Vec<ConvolutionalCode> {
    let mut r = rng(seed);
    let seeds = self_dual_seeds();
    let mut out = Vec::new();
    while out.len() < 200 {
        let base = &seeds[r.gen_range(0..seeds.len())];
        let field = base.field().clone();
        let k = base.dimension();
        match out.len() % 4 {
            0 => out.push(mix(base, &mut r)),
            1 => {
                // a non-unit left factor keeps G·Gᵀ = 0 but breaks left primeness
                let mut d = PolyMatrix::identity(&field, k);
                let mut p = random_poly(&field, &mut r, 1);
                while p.degree() != Some(1) {
                    p = random_poly(&field, &mut r, 1);
                }
                let i = r.gen_range(0..k);
                d.set(i, i, p);
                let g = d.mul(mix(base, &mut r).generator()).unwrap();
                if let Ok(c) = ConvolutionalCode::new(g) {
                    out.push(c);
                }
            }
            2 => {
                let perm = random_permutation(&mut r, base.length());
                let step = OrthogonalStep::permutation(&field, &perm).unwrap();
                out.push(orthogonal_chain(base, &[step]).unwrap());
            }
            _ => {
                let g = random_matrix(&field, &mut r, k, 2 * k, 2);
                if let Ok(c) = ConvolutionalCode::new(g) {
                    out.push(c);
                }
            }
        }
    }
    out
}

/// Binary polynomials as bitmasks (bit i is the coefficient of z^i).
pub mod gf2 {
    pub fn deg(a: u64) -> i32 {
        63 - a.leading_zeros() as i32
    }

    pub fn mul(a: u64, b: u64) -> u64 {
        let mut r = 0;
        for i in 0..64 {
            if b >> i & 1 == 1 {
                r ^= a << i;
            }
        }
        r
    }

    pub fn rem(mut a: u64, b: u64) -> u64 {
        let db = deg(b);
        while a != 0 && deg(a) >= db {
            a ^= b << (deg(a) - db);
        }
        a
    }

    pub fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let r = rem(a, b);
            a = b;
            b = r;
        }
        a
    }
}
