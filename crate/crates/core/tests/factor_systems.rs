use factorsys::linalg::in_span;
use factorsys::random::{random_factor_system, random_matrix};
use factorsys::{
    check_equivalence_with, check_ext_equivalence, extract_factor_system, find_equivalence, find_split_witness,
    tau_from_E, BilinearMap, ExtEquivalence, Extension, FactorSystem, FieldSpec, Matrix, Section, Variety, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gf5() -> FieldSpec {
    FieldSpec::prime(5).unwrap()
}

fn instances(per_variety: u64) -> impl Iterator<Item = (Variety, u64, FactorSystem)> {
    Variety::ALL.into_iter().flat_map(move |v| {
        (0..per_variety).map(move |seed| {
            let da = 1 + (seed as usize % 3);
            let db = 1 + (seed as usize / 3 % 3);
            (v, seed, random_factor_system(v, gf5(), da, db, seed))
        })
    })
}

/// Another section of the same extension: `T + σR` for random `R`.
fn shifted_section(ext: &Extension, t: &Section, rng: &mut ChaCha8Rng) -> (Section, Matrix) {
    let r = random_matrix(ext.field(), ext.a().dim(), ext.b().dim(), rng);
    (
        Section {
            t: t.t.add(&ext.sigma().mul(&r)),
        },
        r,
    )
}

#[test]
fn construct_then_extract_is_identity() {
    for (v, seed, fs) in instances(20) {
        let (ext, t) = fs.construct_extension().unwrap();
        assert!(ext.verify().ok(), "{v} seed {seed}");
        assert!(ext.l().verify().ok(), "{v} seed {seed}");
        assert!(frame_invertible(&ext, &t));
        assert_eq!(extract_factor_system(&ext, &t).unwrap(), fs, "{v} seed {seed}");
        assert!(factorsys::check_belonging(&fs, &ext, &t).ok());
    }
}

#[test]
fn two_sections_give_equivalent_systems() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (v, seed, fs) in instances(10) {
        let (ext, t1) = fs.construct_extension().unwrap();
        let (t2, r) = shifted_section(&ext, &t1, &mut rng);
        let fs1 = extract_factor_system(&ext, &t1).unwrap();
        let fs2 = extract_factor_system(&ext, &t2).unwrap();
        assert!(fs2.verify().ok(), "{v} seed {seed}");
        let report = check_equivalence_with(&fs1, &fs2, &r);
        assert!(report.ok(), "{v} seed {seed}: {:?}", report.names());
        assert_eq!(fs1.transport(&r).unwrap(), fs2);
    }
}

#[test]
fn transport_is_coherent() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (v, seed, fs) in instances(10) {
        let e = random_matrix(gf5(), fs.a().dim(), fs.b().dim(), &mut rng);
        let g = fs.transport(&e).unwrap();
        assert!(g.verify().ok(), "{v} seed {seed}");
        assert!(check_equivalence_with(&fs, &g, &e).ok());
    }
}

#[test]
fn equivalence_is_an_equivalence_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (v, seed, fs) in instances(5) {
        let (da, db) = (fs.a().dim(), fs.b().dim());
        let zero = Matrix::zeros(gf5(), da, db);
        assert!(check_equivalence_with(&fs, &fs, &zero).ok());
        let e1 = random_matrix(gf5(), da, db, &mut rng);
        let e2 = random_matrix(gf5(), da, db, &mut rng);
        let g1 = fs.transport(&e1).unwrap();
        let g2 = g1.transport(&e2).unwrap();
        assert!(check_equivalence_with(&g1, &fs, &e1.neg()).ok(), "{v} seed {seed}");
        assert!(check_equivalence_with(&fs, &g2, &e1.add(&e2)).ok(), "{v} seed {seed}");
    }
}

#[test]
fn transported_pairs_are_found_equivalent() {
    let f3 = FieldSpec::prime(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for v in Variety::ALL {
        for seed in 0..4 {
            let fs = random_factor_system(v, f3, 2, 2, seed);
            let e = random_matrix(f3, 2, 2, &mut rng);
            let g = fs.transport(&e).unwrap();
            match find_equivalence(&fs, &g, 1_000) {
                Verdict::Witness(w) => assert!(check_equivalence_with(&fs, &g, &w).ok()),
                other => panic!("{v} seed {seed}: {other:?}"),
            }
        }
    }
}

#[test]
fn equivalent_systems_have_equivalent_extensions() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for (v, seed, fs) in instances(10) {
        let e = random_matrix(gf5(), fs.a().dim(), fs.b().dim(), &mut rng);
        let g = fs.transport(&e).unwrap();
        let (ext1, t1) = fs.construct_extension().unwrap();
        let (ext2, t2) = g.construct_extension().unwrap();
        let tau = tau_from_E(&ext1, &t1, &ext2, &t2, &e).unwrap();
        let report = check_ext_equivalence(&ext1, &ext2, &tau).unwrap();
        assert!(report.ok(), "{v} seed {seed}: {:?}", report.names());
    }
}

#[test]
fn extension_equivalence_is_an_equivalence_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (v, seed, fs) in instances(5) {
        let (da, db) = (fs.a().dim(), fs.b().dim());
        let (e1, e2) = (
            random_matrix(gf5(), da, db, &mut rng),
            random_matrix(gf5(), da, db, &mut rng),
        );
        let g1 = fs.transport(&e1).unwrap();
        let g2 = g1.transport(&e2).unwrap();
        let (x0, t0) = fs.construct_extension().unwrap();
        let (x1, t1) = g1.construct_extension().unwrap();
        let (x2, t2) = g2.construct_extension().unwrap();
        assert!(check_ext_equivalence(&x0, &x0, &ExtEquivalence::identity(&x0))
            .unwrap()
            .ok());
        let a = tau_from_E(&x0, &t0, &x1, &t1, &e1).unwrap();
        let b = tau_from_E(&x1, &t1, &x2, &t2, &e2).unwrap();
        let back = a.inverse().expect("equivalences are invertible");
        assert!(check_ext_equivalence(&x1, &x0, &back).unwrap().ok(), "{v} seed {seed}");
        assert!(
            check_ext_equivalence(&x0, &x2, &a.then(&b)).unwrap().ok(),
            "{v} seed {seed}"
        );
    }
}

/// Semidirect sums: random actions kept only when `f = 0` is still a
/// factor system for them.
fn split_instances() -> Vec<FactorSystem> {
    let mut out = Vec::new();
    for (_, _, fs) in instances(12) {
        let zero_f = vec![BilinearMap::zeros(gf5(), fs.b().dim(), fs.b().dim(), fs.a().dim()); fs.f().len()];
        let split = fs.with_f(zero_f).unwrap();
        if split.verify().ok() {
            out.push(split);
        }
        out.push(FactorSystem::zero(fs.a().clone(), fs.b().clone()).unwrap());
    }
    out
}

#[test]
fn split_systems_stay_split_under_transport() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let cases = split_instances();
    assert!(cases.iter().any(|fs| !fs.action().is_zero()));
    for fs in cases {
        let zero = Matrix::zeros(gf5(), fs.a().dim(), fs.b().dim());
        assert_eq!(find_split_witness(&fs, 0).unwrap(), Verdict::Witness(zero));
        let (ext, t) = fs.construct_extension().unwrap();
        assert!(ext.is_homomorphic_section(&t));

        let e = random_matrix(gf5(), fs.a().dim(), fs.b().dim(), &mut rng);
        let g = fs.transport(&e).unwrap();
        let w = find_split_witness(&g, factorsys::DEFAULT_BUDGET).unwrap();
        let w = w.witness().expect("transport of a split system splits");
        assert!(g.transport(w).unwrap().f().iter().all(BilinearMap::is_zero));

        let (ext2, t2) = g.construct_extension().unwrap();
        let tau = tau_from_E(&ext, &t, &ext2, &t2, &e).unwrap();
        let image = Section { t: tau.tau.mul(&t.t) };
        assert!(ext2.is_homomorphic_section(&image));
        assert!(ext2.check_section(&image).ok());
    }
}

#[test]
fn lifts_agree_with_functor_on_extensions() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for (from, to) in Variety::arrows() {
        for seed in 0..10 {
            let da = rng.gen_range(1..3);
            let db = rng.gen_range(1..3);
            let fs = random_factor_system(from, gf5(), da, db, seed);
            let lifted = fs.functor_map(to).unwrap();
            let report = lifted.verify();
            assert!(report.ok(), "{from}->{to} seed {seed}: {:?}", report.names());
            assert_eq!(report.identity_family_count, to.mu());

            let (ext, t) = fs.construct_extension().unwrap();
            let mapped = Extension::new(
                ext.a().functor_map(to).unwrap(),
                ext.l().functor_map(to).unwrap(),
                ext.b().functor_map(to).unwrap(),
                ext.sigma().clone(),
                ext.pi().clone(),
            )
            .unwrap();
            assert_eq!(
                extract_factor_system(&mapped, &t).unwrap(),
                lifted,
                "{from}->{to} seed {seed}"
            );
        }
    }
}

#[test]
fn leibniz_action_is_homomorphism_iff_f_in_left_center() {
    let mut seen = [0usize; 2];
    for seed in 0..80 {
        let fs = random_factor_system(Variety::Leibniz, gf5(), 2 + (seed as usize % 2), 2, seed);
        let (a, b) = (fs.a(), fs.b());
        let phi = |x: &[factorsys::FieldElem]| {
            let mut m = Matrix::zeros(gf5(), a.dim(), a.dim());
            for (k, c) in x.iter().enumerate() {
                m = m.add(&fs.action().phi(0, k).scale(c));
            }
            m
        };
        let mut homomorphism = true;
        for i in 0..b.dim() {
            for j in 0..b.dim() {
                let (pi, pj) = (fs.action().phi(0, i), fs.action().phi(0, j));
                let ij = b.product(0).get(i, j).to_vec();
                homomorphism &= phi(&ij) == pi.mul(pj).sub(&pj.mul(pi));
            }
        }
        let center = a.left_center().unwrap();
        let f = &fs.f()[0];
        let in_center = (0..b.dim()).all(|i| (0..b.dim()).all(|j| in_span(gf5(), &center, f.get(i, j))));
        assert_eq!(homomorphism, in_center, "seed {seed}");
        seen[homomorphism as usize] += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}

#[test]
fn broken_systems_are_rejected() {
    let fs = random_factor_system(Variety::Associative, gf5(), 2, 2, 1);
    let mut bad = fs.f().to_vec();
    let mut found = false;
    for i in 0..2 {
        for j in 0..2 {
            if found {
                break;
            }
            let old = bad[0].get(i, j).to_vec();
            bad[0].set(i, j, &[&old[0] + &gf5().one(), old[1].clone()]);
            let candidate = fs.with_f(bad.clone()).unwrap();
            if !candidate.verify().ok() {
                assert!(candidate.construct_extension().is_err());
                assert!(candidate.transport(&Matrix::zeros(gf5(), 2, 2)).is_err());
                found = true;
            }
        }
    }
    assert!(found);
}

#[test]
fn frame_is_invertible_for_random_sections() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for (_, _, fs) in instances(3) {
        let (ext, t) = fs.construct_extension().unwrap();
        let (t2, _) = shifted_section(&ext, &t, &mut rng);
        assert!(ext.check_section(&t2).ok());
        assert!(frame_invertible(&ext, &t2));
        assert_eq!(ext.make_section().unwrap(), t);
    }
}

fn frame_invertible(ext: &Extension, t: &Section) -> bool {
    t.t.hstack(ext.sigma()).inverse().is_some()
}

fn all_maps(field: FieldSpec, rows: usize, cols: usize) -> Vec<Matrix> {
    let p = field.modulus().unwrap();
    let n = rows * cols;
    (0..p.pow(n as u32))
        .map(|mut k| {
            let mut entries = Vec::new();
            for _ in 0..n {
                entries.push(field.from_u64(k % p));
                k /= p;
            }
            Matrix::from_rows(field, cols, entries.chunks(cols).map(<[_]>::to_vec).collect())
        })
        .collect()
}

#[test]
fn equivalence_decision_matches_exhaustive_search() {
    let f3 = FieldSpec::prime(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut outcomes = [0usize; 2];
    for v in Variety::ALL {
        for seed in 0..6 {
            let fs = random_factor_system(v, f3, 2, 2, seed);
            let zero_f = vec![BilinearMap::zeros(f3, 2, 2, 2); fs.f().len()];
            let mut others = vec![fs.transport(&random_matrix(f3, 2, 2, &mut rng)).unwrap()];
            let split = fs.with_f(zero_f).unwrap();
            if split.verify().ok() {
                others.push(split);
            }
            for g in others {
                let exists = all_maps(f3, 2, 2)
                    .iter()
                    .any(|e| check_equivalence_with(&fs, &g, e).ok());
                let verdict = find_equivalence(&fs, &g, 0);
                assert_ne!(verdict, Verdict::Undecided);
                assert_eq!(verdict.witness().is_some(), exists, "{v} seed {seed}");
                outcomes[exists as usize] += 1;
            }
        }
    }
    assert!(outcomes[0] > 0 && outcomes[1] > 0, "{outcomes:?}");
}
