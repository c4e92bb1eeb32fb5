//! Seeded generators of valid algebras and factor systems.
//!
//! Random structure constants almost never satisfy a variety's identities, so
//! algebras are grown by iterated central extensions instead: each step picks
//! a random central 2-cocycle and builds the extension it defines.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, BilinearMap, Variety};
use crate::cohomology::{central_h2, unflatten};
use crate::extension::{block_pi, block_sigma, Extension, Section};
use crate::factor_system::{extract_factor_system, FactorSystem};
use crate::field::{FieldElem, FieldSpec};
use crate::linalg::{axpy, zeros, Matrix};

/// A uniform element of GF(p), or a small integer in `[-3, 3]` over Q.
pub fn random_scalar<R: Rng>(field: FieldSpec, rng: &mut R) -> FieldElem {
    match field.modulus() {
        Some(p) => field.from_u64(rng.gen_range(0..p)),
        None => field.from_i64(rng.gen_range(-3..=3)),
    }
}

pub fn random_matrix<R: Rng>(field: FieldSpec, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    let data = (0..rows)
        .map(|_| (0..cols).map(|_| random_scalar(field, rng)).collect())
        .collect();
    Matrix::from_rows(field, cols, data)
}

fn grow<R: Rng>(variety: Variety, field: FieldSpec, dim: usize, rng: &mut R) -> Algebra {
    let mut alg = Algebra::abelian(variety, field, dim.min(1));
    while alg.dim() < dim {
        let db = alg.dim();
        let z2 = central_h2(1, &alg).z2.basis;
        let mut v = zeros(field, variety.product_arity() * db * db);
        for z in &z2 {
            axpy(&mut v, &random_scalar(field, rng), z);
        }
        let f = unflatten(field, variety.product_arity(), db, 1, &v);
        let fs = FactorSystem::zero(Algebra::abelian(variety, field, 1), alg)
            .and_then(|fs| fs.with_f(f))
            .expect("shapes are consistent");
        alg = fs.construct_unchecked().0.l().clone();
    }
    alg
}

/// A valid algebra of the variety, deterministic in `seed`. Coordinate 0 is
/// central and each initial segment of coordinates spans an ideal.
pub fn random_algebra(variety: Variety, field: FieldSpec, dim: usize, seed: u64) -> Algebra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    grow(variety, field, dim, &mut rng)
}

/// A valid factor system of a random `B` with coefficients in a random `A`:
/// the one belonging to a random algebra of dimension `dim_a + dim_b`, the
/// ideal spanned by its first `dim_a` coordinates, and a random section.
pub fn random_factor_system(variety: Variety, field: FieldSpec, dim_a: usize, dim_b: usize, seed: u64) -> FactorSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let l = grow(variety, field, dim_a + dim_b, &mut rng);
    let restrict = |offset: usize, d: usize| -> Algebra {
        let products = l
            .products()
            .iter()
            .map(|p| {
                let mut c = BilinearMap::zeros(field, d, d, d);
                for i in 0..d {
                    for j in 0..d {
                        c.set(i, j, &p.get(offset + i, offset + j)[offset..offset + d]);
                    }
                }
                c
            })
            .collect();
        Algebra::new(variety, field, d, products).expect("shapes are consistent")
    };
    let a = restrict(0, dim_a);
    let b = restrict(dim_a, dim_b);
    let ext = Extension::new(a, l, b, block_sigma(field, dim_a, dim_b), block_pi(field, dim_a, dim_b))
        .expect("shapes are consistent");
    let t = random_matrix(field, dim_a, dim_b, &mut rng).vstack(&Matrix::identity(field, dim_b));
    extract_factor_system(&ext, &Section { t }).expect("block frame is invertible")
}
