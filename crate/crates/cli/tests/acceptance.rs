//! End-to-end acceptance checks, one line per criterion.
//!
//! Set `FACTORSYS_BLESS=1` to rewrite the golden files from current output.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode, Stdio};
use std::time::{Duration, Instant};

use factorsys::cohomology::{central_h2, leibniz_zn_basis};
use factorsys::linalg::span_rank;
use factorsys::random::{random_algebra, random_factor_system, random_matrix, random_scalar};
use factorsys::{
    check_equivalence_with, check_ext_equivalence, emit_document, extract_factor_system, find_split_witness, fixtures,
    leibniz_coboundary, parse_document, tau_from_E, Algebra, BilinearMap, Cochain, FactorSystem, FieldSpec, Matrix,
    Section, Variety, Verdict, DEFAULT_BUDGET,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn gf(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

fn tests_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_factorsys"))
        .args(args)
        .current_dir(tests_dir())
        .stdin(Stdio::null())
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8 output"),
    )
}

fn identity_counts() -> Check {
    let expected = [
        ("lie", 3),
        ("commutative", 4),
        ("associative", 7),
        ("leibniz", 7),
        ("zinbiel", 7),
        ("dendriform", 21),
        ("diassociative", 35),
    ];
    for (name, mu) in expected {
        let (code, out) = cli(&["mu", name]);
        ensure!(
            code == 0 && out == format!("{mu}\n"),
            "mu {name}: exit {code}, output {out:?}"
        );
        let v: Variety = name.parse().unwrap();
        ensure!(v.mu() == mu, "library mu({name}) = {}", v.mu());
        let fs = FactorSystem::zero(Algebra::abelian(v, gf(5), 1), Algebra::abelian(v, gf(5), 1)).unwrap();
        ensure!(
            fs.verify().identity_family_count == mu,
            "{name}: evaluator tables disagree"
        );
    }
    Ok("7 varieties".into())
}

fn round_trip() -> Check {
    let mut count = 0;
    for v in Variety::ALL {
        for seed in 0..100u64 {
            let (da, db) = (1 + seed as usize % 3, 1 + (seed as usize / 3) % 3);
            let fs = random_factor_system(v, gf(5), da, db, 1000 + seed);
            let (ext, t) = fs.construct_extension().map_err(|e| format!("{v} seed {seed}: {e}"))?;
            ensure!(ext.l().verify().ok(), "{v} seed {seed}: L fails its identities");
            let back = extract_factor_system(&ext, &t).map_err(|e| e.to_string())?;
            ensure!(back == fs, "{v} seed {seed}: extract(construct(fs)) != fs");
            count += 1;
        }
    }
    Ok(format!("{count} factor systems"))
}

fn equivalence_correspondence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut count = 0;
    for k in 0..100u64 {
        let v = Variety::ALL[k as usize % 7];
        let (da, db) = (1 + rng.gen_range(0..3), 1 + rng.gen_range(0..3));
        let fs = random_factor_system(v, gf(5), da, db, 2000 + k);

        let e = random_matrix(gf(5), da, db, &mut rng);
        let g = fs.transport(&e).map_err(|e| e.to_string())?;
        let (x1, t1) = fs.construct_extension().unwrap();
        let (x2, t2) = g.construct_extension().unwrap();
        let tau = tau_from_E(&x1, &t1, &x2, &t2, &e).map_err(|e| e.to_string())?;
        let report = check_ext_equivalence(&x1, &x2, &tau).map_err(|e| e.to_string())?;
        ensure!(report.ok(), "{v} instance {k}: tau fails {:?}", report.names());

        let section = |rng: &mut ChaCha8Rng| Section {
            t: t1.t.add(&x1.sigma().mul(&random_matrix(gf(5), da, db, rng))),
        };
        let (s1, s2) = (section(&mut rng), section(&mut rng));
        let fs1 = extract_factor_system(&x1, &s1).map_err(|e| e.to_string())?;
        let fs2 = extract_factor_system(&x1, &s2).map_err(|e| e.to_string())?;
        let sigma_inv = x1
            .sigma()
            .transpose()
            .mul(x1.sigma())
            .inverse()
            .unwrap()
            .mul(&x1.sigma().transpose());
        let e12 = sigma_inv.mul(&s2.t.sub(&s1.t));
        let report = check_equivalence_with(&fs1, &fs2, &e12);
        ensure!(report.ok(), "{v} instance {k}: sections fail {:?}", report.names());
        count += 1;
    }
    Ok(format!("{count} instances, both directions"))
}

fn split_criteria() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut transported = 0;
    for v in Variety::ALL {
        for seed in 0..8u64 {
            let fs = random_factor_system(v, gf(5), 1 + seed as usize % 2, 1 + seed as usize % 3, 3000 + seed);
            let zero_f = vec![BilinearMap::zeros(gf(5), fs.b().dim(), fs.b().dim(), fs.a().dim()); fs.f().len()];
            let mut split = vec![FactorSystem::zero(fs.a().clone(), fs.b().clone()).unwrap()];
            split.extend(fs.with_f(zero_f).ok().filter(|s| s.verify().ok()));
            for s in split {
                let zero = Matrix::zeros(gf(5), s.a().dim(), s.b().dim());
                let verdict = find_split_witness(&s, DEFAULT_BUDGET).unwrap();
                ensure!(
                    verdict == Verdict::Witness(zero),
                    "{v} seed {seed}: f = 0 gave {verdict:?}"
                );
                let e = random_matrix(gf(5), s.a().dim(), s.b().dim(), &mut rng);
                let g = s.transport(&e).unwrap();
                let verdict = find_split_witness(&g, DEFAULT_BUDGET).unwrap();
                let Some(w) = verdict.witness() else {
                    return Err(format!("{v} seed {seed}: transported split system gave {verdict:?}"));
                };
                ensure!(
                    g.transport(w).unwrap().f().iter().all(BilinearMap::is_zero),
                    "{v} seed {seed}: witness does not split"
                );
                transported += 1;
            }
        }
    }
    let (code, out) = cli(&["split", "data/heis3_cocycle.json"]);
    ensure!(
        code == 1 && out == "{\"verdict\":\"nonsplit\"}\n",
        "heis3 cocycle: exit {code}, {out:?}"
    );
    let doc = std::fs::read_to_string(tests_dir().join("data/heis3_cocycle.json")).unwrap();
    let Ok(factorsys::Document::FactorSystem(heis)) = parse_document(&doc) else {
        return Err("heis3 cocycle document".into());
    };
    ensure!(heis.a().is_abelian(), "abelian-case solver not exercised");
    ensure!(
        find_split_witness(&heis, DEFAULT_BUDGET).unwrap() == Verdict::None,
        "heis3 cocycle splits"
    );
    Ok(format!("{transported} transported split systems, heis3 non-split"))
}

/// Structure constants of `B` over GF(p) as sparse lists `i*j = Σ c e_k`.
struct Table {
    n: usize,
    p: u64,
    prod: Vec<Vec<(usize, u64)>>,
}

impl Table {
    fn new(alg: &Algebra, p: u64) -> Self {
        let n = alg.dim();
        let prod = (0..n * n)
            .map(|ij| {
                alg.product(0)
                    .get(ij / n, ij % n)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| {
                        let (num, den) = c.as_ratio_i64().expect("integer structure constants");
                        assert_eq!(den, 1);
                        (k, num.rem_euclid(p as i64) as u64)
                    })
                    .collect()
            })
            .collect();
        Table { n, p, prod }
    }

    /// `f(i*j, k)` or `f(k, i*j)` from the digit table of `f`.
    fn f_prod_left(&self, f: &[u64], i: usize, j: usize, k: usize) -> u64 {
        self.prod[i * self.n + j]
            .iter()
            .map(|&(m, c)| c * f[m * self.n + k])
            .sum::<u64>()
            % self.p
    }

    fn f_prod_right(&self, f: &[u64], k: usize, i: usize, j: usize) -> u64 {
        self.prod[i * self.n + j]
            .iter()
            .map(|&(m, c)| c * f[k * self.n + m])
            .sum::<u64>()
            % self.p
    }
}

/// Central 2-cocycle identities of the table, written out by hand.
fn is_cocycle(v: Variety, t: &Table, f: &[u64]) -> bool {
    let (n, p) = (t.n, t.p);
    let at = |i: usize, j: usize| f[i * n + j];
    let triples = || (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))));
    match v {
        Variety::Leibniz => triples().all(|(i, j, k)| {
            t.f_prod_right(f, i, j, k) == (t.f_prod_left(f, i, j, k) + t.f_prod_right(f, j, i, k)) % p
        }),
        Variety::Lie => {
            (0..n).all(|i| (0..n).all(|j| (at(i, j) + at(j, i)).is_multiple_of(p)))
                && triples().all(|(i, j, k)| {
                    (t.f_prod_left(f, i, j, k) + t.f_prod_left(f, j, k, i) + t.f_prod_left(f, k, i, j))
                        .is_multiple_of(p)
                })
        }
        Variety::Commutative => {
            (0..n).all(|i| (0..n).all(|j| at(i, j) == at(j, i)))
                && triples().all(|(i, j, k)| t.f_prod_left(f, i, j, k) == t.f_prod_right(f, i, j, k))
        }
        _ => unreachable!("oracle covers the single-product cases used here"),
    }
}

fn digits(mut k: u64, p: u64, len: usize) -> Vec<u64> {
    (0..len)
        .map(|_| {
            let d = k % p;
            k /= p;
            d
        })
        .collect()
}

fn log(p: u64, count: u64) -> Option<usize> {
    let mut x = 1;
    for d in 0..64 {
        if x == count {
            return Some(d);
        }
        x *= p;
        if x > count {
            return None;
        }
    }
    None
}

/// `(z2, b2)` by enumerating every bilinear form and every `E` over GF(p).
fn brute_force_h2(alg: &Algebra, p: u64) -> (usize, usize) {
    let t = Table::new(alg, p);
    let n = t.n;
    let mut f = vec![0u64; n * n];
    let mut z = 0u64;
    loop {
        z += is_cocycle(alg.variety(), &t, &f) as u64;
        let Some(pos) = f.iter().position(|&d| d + 1 < p) else {
            break;
        };
        f[..pos].fill(0);
        f[pos] += 1;
    }
    let mut coboundaries = HashSet::new();
    for k in 0..p.pow(n as u32) {
        let e = digits(k, p, n);
        let f: Vec<u64> = (0..n * n)
            .map(|ij| t.prod[ij].iter().map(|&(m, c)| c * e[m]).sum::<u64>() % p)
            .collect();
        coboundaries.insert(f);
    }
    let z2 = log(p, z).expect("cocycles form a subspace");
    let b2 = log(p, coboundaries.len() as u64).expect("coboundaries form a subspace");
    (z2, b2)
}

/// `(label, B, expected (z2, b2, h2), oracle prime)`
type H2Case = (String, Algebra, (usize, usize, usize), u64);

fn cohomology_numbers() -> Check {
    let mut cases: Vec<H2Case> = Vec::new();
    let q = FieldSpec::rationals();
    cases.push(("lie A0(2)".into(), Algebra::abelian(Variety::Lie, q, 2), (1, 0, 1), 5));
    for n in 1..=4 {
        let oracle_p = if n <= 3 { 5 } else { 2 };
        cases.push((
            format!("leibniz A0({n})"),
            Algebra::abelian(Variety::Leibniz, q, n),
            (n * n, 0, n * n),
            oracle_p,
        ));
        let s = n * (n + 1) / 2;
        cases.push((
            format!("commutative A0({n})"),
            Algebra::abelian(Variety::Commutative, q, n),
            (s, 0, s),
            oracle_p,
        ));
    }
    cases.push(("lie heis3".into(), fixtures::fixture("heis3").unwrap(), (3, 1, 2), 5));
    cases.push((
        "leibniz leib2".into(),
        fixtures::fixture("leib2").unwrap(),
        (2, 1, 1),
        5,
    ));

    for (name, alg, expected, p) in &cases {
        let (z2, b2) = brute_force_h2(alg, *p);
        ensure!(
            (z2, b2, z2 - b2) == *expected,
            "{name}: oracle over GF({p}) gives {:?}",
            (z2, b2)
        );
        ensure!(
            central_h2(1, alg).dims() == *expected,
            "{name}: central_h2 over Q gives {:?}",
            central_h2(1, alg).dims()
        );
        let reduced = parse_document(
            &emit_document(&factorsys::Document::Algebra(alg.clone()))
                .replace("{\"type\":\"Q\"}", &format!("{{\"p\":{p},\"type\":\"Fp\"}}")),
        )
        .ok();
        if let Some(factorsys::Document::Algebra(r)) = reduced {
            ensure!(central_h2(1, &r).dims() == *expected, "{name}: central_h2 over GF({p})");
        }
    }
    let (code, out) = cli(&["h2", "fixture:heis3"]);
    let v: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    ensure!(
        code == 0 && v["z2"] == 3 && v["b2"] == 1 && v["h2"] == 2,
        "cli h2 heis3: exit {code}, {out}"
    );
    Ok(format!("{} algebras against brute force", cases.len()))
}

fn coboundary_consistency() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut cochains = 0;
    for seed in 0..30u64 {
        let dim = 1 + seed as usize % 3;
        let b = random_algebra(Variety::Leibniz, gf(7), dim, 4000 + seed);
        for n in 1..=3 {
            let mut c = Cochain::zero(gf(7), n, dim, 1 + seed as usize % 2);
            for x in c.values.iter_mut() {
                *x = random_scalar(gf(7), &mut rng);
            }
            let dd = leibniz_coboundary(&b, &leibniz_coboundary(&b, &c).unwrap()).unwrap();
            ensure!(dd.is_zero(), "seed {seed} n {n}: d∘d != 0");
            cochains += 1;
        }
    }
    for seed in 0..20u64 {
        let b = random_algebra(Variety::Leibniz, gf(7), 1 + seed as usize % 4, 5000 + seed);
        let z2 = central_h2(1, &b).z2;
        let kernel = leibniz_zn_basis(&b, 1, 2).unwrap();
        let both: Vec<_> = z2.basis.iter().chain(&kernel).cloned().collect();
        let r = span_rank(gf(7), z2.ambient_dim, &both);
        ensure!(
            z2.dim() == kernel.len() && r == z2.dim(),
            "seed {seed}: Z² has dim {} but ker d² has dim {} (joint rank {r})",
            z2.dim(),
            kernel.len()
        );
    }
    Ok(format!("{cochains} cochains, 20 algebras"))
}

fn specialization_lifts() -> Check {
    for (from, to, families) in [
        (Variety::Associative, Variety::Diassociative, 35),
        (Variety::Zinbiel, Variety::Dendriform, 21),
    ] {
        for seed in 0..50u64 {
            let (da, db) = (1 + seed as usize % 3, 1 + (seed as usize / 3) % 3);
            let fs = random_factor_system(from, gf(5), da, db, 6000 + seed);
            let lifted = fs.functor_map(to).map_err(|e| e.to_string())?;
            let report = lifted.verify();
            ensure!(
                report.identity_family_count == families,
                "{to}: {} families",
                report.identity_family_count
            );
            ensure!(report.ok(), "{from}->{to} seed {seed}: {:?}", report.names());
        }
    }
    Ok("100 lifted factor systems".into())
}

fn functor_diagram() -> Check {
    use Variety::*;
    for seed in 0..100u64 {
        let x = random_algebra(Associative, gf(5), 1 + seed as usize % 4, 7000 + seed);
        let dias = x.functor_map(Diassociative).unwrap();
        let lie = x.functor_map(Lie).unwrap();
        let via_dias = dias.functor_map(Leibniz).unwrap();
        let via_lie = lie.functor_map(Leibniz).unwrap();
        for alg in [&dias, &lie, &via_dias, &via_lie] {
            ensure!(alg.verify().ok(), "seed {seed}: {} image fails", alg.variety());
        }
        ensure!(via_dias == via_lie, "seed {seed}: As→Dias→Leib != As→Lie→Leib");
    }
    Ok("100 associative algebras".into())
}

/// `(golden file, arguments, exit code)`
fn golden_cases() -> Vec<(String, Vec<String>, i32)> {
    let mut cases: Vec<(String, Vec<String>, i32)> = fixtures::NAMES
        .iter()
        .map(|n| {
            (
                format!("fixture-{}.json", n.replace(':', "-")),
                vec!["fixture".into(), n.to_string()],
                0,
            )
        })
        .collect();
    let table: &[(&str, &[&str], i32)] = &[
        ("check-algebra.json", &["check", "algebra", "fixture:heis3"], 0),
        (
            "check-algebra-broken.json",
            &["check", "algebra", "data/broken_lie.json"],
            1,
        ),
        ("check-fs.json", &["check", "fs", "data/heis3_cocycle.json"], 0),
        ("check-ext.json", &["check", "ext", "data/heis3_ext.json"], 0),
        ("extend.json", &["extend", "data/heis3_cocycle.json"], 0),
        ("extract.json", &["extract", "data/heis3_ext.json"], 0),
        (
            "transport.json",
            &["transport", "data/heis3_cocycle.json", "--map", "data/e.json"],
            0,
        ),
        (
            "equiv.json",
            &["equiv", "data/heis3_cocycle.json", "data/heis3_moved.json"],
            0,
        ),
        (
            "equiv-inequivalent.json",
            &["equiv", "data/heis3_cocycle.json", "data/heis3_coboundary.json"],
            1,
        ),
        (
            "equiv-nonabelian.json",
            &[
                "equiv",
                "data/heis3_coefficients.json",
                "data/heis3_coefficients_moved.json",
            ],
            0,
        ),
        ("split.json", &["split", "data/heis3_coboundary.json"], 0),
        ("split-nonsplit.json", &["split", "data/heis3_cocycle.json"], 1),
        ("split-undecided.json", &["split", "data/heis3_quadratic.json"], 3),
        ("split-enumerated.json", &["split", "data/heis3_quadratic_gf3.json"], 0),
        ("h2.json", &["h2", "fixture:heis3"], 0),
        ("h2-coeff2.json", &["h2", "fixture:leib2", "--coeff-dim", "2"], 0),
        (
            "ext-group.json",
            &["ext-group", "fixture:abelian:lie:1", "fixture:heis3"],
            0,
        ),
        (
            "ext-group-action.json",
            &[
                "ext-group",
                "fixture:abelian:lie:1",
                "fixture:heis3",
                "--action",
                "data/heis3_cocycle.json",
            ],
            0,
        ),
        (
            "d.json",
            &["d", "--n", "1", "data/leib2_cochain.json", "fixture:leib2"],
            0,
        ),
        ("hn.json", &["hn", "fixture:leib2", "--n", "2"], 0),
        ("functor.json", &["functor", "fixture:as2", "--to", "diassociative"], 0),
        (
            "random.json",
            &["random", "dendriform", "--dim", "3", "--p", "5", "--seed", "7"],
            0,
        ),
        ("mu.json", &["mu", "diassociative"], 0),
        ("fixture.json", &["fixture", "heis3"], 0),
        ("usage-error.json", &["check", "algebra", "data/missing.json"], 2),
        ("parse-error.json", &["fixture", "heis3.associative"], 2),
    ];
    cases.extend(
        table
            .iter()
            .map(|(file, args, code)| (file.to_string(), args.iter().map(|s| s.to_string()).collect(), *code)),
    );
    cases
}

fn serialization() -> Check {
    let bless = std::env::var_os("FACTORSYS_BLESS").is_some();
    let golden = tests_dir().join("golden");
    let cases = golden_cases();
    for (file, args, expected_code) in &cases {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, out) = cli(&argv);
        ensure!(
            code == *expected_code,
            "{}: exit {code}, expected {expected_code}",
            argv.join(" ")
        );
        let again = cli(&argv);
        ensure!(
            again == (code, out.clone()),
            "{}: output is not deterministic",
            argv.join(" ")
        );
        let path = golden.join(file);
        if bless {
            std::fs::write(&path, &out).unwrap();
        }
        let want = std::fs::read_to_string(&path).map_err(|e| format!("{file}: {e}"))?;
        ensure!(out == want, "{file}: output differs from golden bytes");
        if out.starts_with("{\"") && out.contains("\"kind\"") {
            let doc = parse_document(&out).map_err(|e| format!("{file}: {e}"))?;
            ensure!(emit_document(&doc) == out, "{file}: emit(parse(x)) != x");
        }
    }
    let mut data = 0;
    for entry in std::fs::read_dir(tests_dir().join("data")).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        let doc = parse_document(&text).map_err(|e| e.to_string())?;
        ensure!(emit_document(&doc) == text, "input document is not canonical");
        data += 1;
    }
    let (code, out) = {
        let mut child = Command::new(env!("CARGO_BIN_EXE_factorsys"))
            .args(["check", "algebra", "-"])
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .spawn()
            .unwrap();
        use std::io::Write;
        let text = std::fs::read_to_string(golden.join("fixture-leib2.json")).unwrap();
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
        let out = child.wait_with_output().unwrap();
        (out.status.code(), String::from_utf8(out.stdout).unwrap())
    };
    ensure!(
        code == Some(0) && out == "{\"ok\":true,\"violations\":[]}\n",
        "stdin input: {out:?}"
    );
    Ok(format!("{} golden outputs, {data} canonical inputs", cases.len()))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, u64, fn() -> Check);
    let criteria: [Criterion; 9] = [
        ("identity-family counts", 1, identity_counts),
        ("construct/extract round trip", 60, round_trip),
        ("equivalence correspondence", 60, equivalence_correspondence),
        ("split criteria", 10, split_criteria),
        ("cohomology numbers", 30, cohomology_numbers),
        ("coboundary consistency", 30, coboundary_consistency),
        ("specialization lifts", 60, specialization_lifts),
        ("functor diagram", 30, functor_diagram),
        ("serialization", 5, serialization),
    ];
    let mut failed = 0;
    for (k, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = result.and_then(|detail| {
            if elapsed > Duration::from_secs(*limit) {
                Err(format!("{detail}; over the {limit} s limit"))
            } else {
                Ok(detail)
            }
        });
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!(
            "{tag} {} {name} ({:.2} s / {limit} s): {detail}",
            k + 1,
            elapsed.as_secs_f64()
        );
        failed += result.is_err() as usize;
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
