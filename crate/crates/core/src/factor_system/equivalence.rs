//! Deciding equivalence and splitting of factor systems.
//!
//! Both questions ask for a linear map `E: B → A` solving equations that are
//! linear in `E` except for the term `E(i)E(j)`. For equivalence that term is
//! constant on the solutions of the action equations, so the answer is always
//! exact linear algebra. For splitting it vanishes only when `A` is abelian;
//! otherwise the solver enumerates candidates over a finite field when the
//! search space is within budget, and reports [`Verdict::Undecided`] when it
//! cannot settle the question.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::{add_vec, axpy, sub_vec, zeros, Matrix, Vector};

use super::{check_equivalence_with, FactorSystem};

/// Default number of candidate maps a search may try.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Outcome of an equivalence or split search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// A verified map `E`.
    Witness(Matrix),
    /// Proven that no `E` exists.
    None,
    /// Search exhausted its budget or has no complete strategy.
    Undecided,
}

impl Verdict {
    pub fn witness(&self) -> Option<&Matrix> {
        match self {
            Verdict::Witness(e) => Some(e),
            _ => None,
        }
    }
}

/// `x` (column-major, `E(e_i)` contiguous) as a `dim A × dim B` matrix.
fn to_matrix(field: FieldSpec, da: usize, db: usize, x: &[crate::field::FieldElem]) -> Matrix {
    let cols: Vec<Vector> = (0..db).map(|i| x[i * da..(i + 1) * da].to_vec()).collect();
    Matrix::from_columns(field, da, &cols)
}

/// The transported data `flat(transport(fs, E))` with the quadratic term
/// dropped is `constant + matrix · x`.
struct AffinePart {
    constant: Vector,
    matrix: Matrix,
}

fn affine_part(fs: &FactorSystem) -> AffinePart {
    let field = fs.field();
    let (da, db) = (fs.a().dim(), fs.b().dim());
    let n = da * db;
    let constant = fs.transport_raw(&Matrix::zeros(field, da, db), false).flat();
    let cols: Vec<Vector> = (0..n)
        .map(|t| {
            let x = crate::linalg::unit(field, n, t);
            sub_vec(
                &fs.transport_raw(&to_matrix(field, da, db, &x), false).flat(),
                &constant,
            )
        })
        .collect();
    AffinePart {
        matrix: Matrix::from_columns(field, constant.len(), &cols),
        constant,
    }
}

fn rows(m: &Matrix, range: std::ops::Range<usize>) -> Matrix {
    m.submatrix(range, 0..m.cols())
}

/// `E(i) *_s E(j)` for all `s, i, j`, in the order of the flattened cocycle.
fn quadratic(fs: &FactorSystem, e: &Matrix) -> Vector {
    let a = fs.a();
    let cols = e.columns();
    let mut out = Vector::new();
    for s in 0..a.products().len() {
        for ci in &cols {
            for cj in &cols {
                out.extend(a.mul(s, ci, cj));
            }
        }
    }
    out
}

/// Enumerates `base + Σ c_k dirs[k]` with `c_k ∈ GF(p)`, lexicographically
/// from all-zero, until `accept` holds or `limit` candidates were tried.
/// Returns the accepted vector, or `None` with the number tried.
fn enumerate(
    field: FieldSpec,
    base: &[crate::field::FieldElem],
    dirs: &[Vector],
    limit: u64,
    mut accept: impl FnMut(&Vector) -> bool,
) -> (Option<Vector>, u64) {
    let p = field.modulus().expect("enumeration needs a finite field");
    let mut digits = vec![0u64; dirs.len()];
    let mut tried = 0u64;
    loop {
        if tried >= limit {
            return (None, tried);
        }
        let mut x = base.to_vec();
        for (d, dir) in digits.iter().zip(dirs) {
            if *d != 0 {
                axpy(&mut x, &field.from_u64(*d), dir);
            }
        }
        tried += 1;
        if accept(&x) {
            return (Some(x), tried);
        }
        let mut pos = digits.len();
        loop {
            if pos == 0 {
                return (None, tried);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < p {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// `p^k` if it does not exceed `limit`.
fn count_within(field: FieldSpec, k: usize, limit: u64) -> Option<u64> {
    let p = field.modulus()?;
    let mut total: u64 = 1;
    for _ in 0..k {
        total = total.checked_mul(p)?;
        if total > limit {
            return None;
        }
    }
    Some(total)
}

/// Searches for `E` with `transport(fs1, E) = fs2`.
///
/// The action equations are linear, and their homogeneous solutions take
/// values in the center of `A`, where `E(i)E(j)` cannot see them. On the
/// affine family they leave, the cocycle equations are therefore linear too,
/// so this search always terminates with a proof and `budget` is not used.
pub fn find_equivalence(fs1: &FactorSystem, fs2: &FactorSystem, _budget: u64) -> Verdict {
    if fs1.a() != fs2.a() || fs1.b() != fs2.b() {
        return Verdict::None;
    }
    let field = fs1.field();
    let (da, db) = (fs1.a().dim(), fs1.b().dim());
    let target = fs2.flat();
    let aff = affine_part(fs1);
    let n_act = fs1.action().flat().len();
    let total = target.len();
    let rhs = sub_vec(&target, &aff.constant);

    let Some(act) = rows(&aff.matrix, 0..n_act).solve_affine(&rhs[..n_act]) else {
        return Verdict::None;
    };
    let cocycle = rows(&aff.matrix, n_act..total);
    let base = &act.particular;
    // cocycle · (base + K y) + quadratic(base) = rhs
    let reduced_rhs = sub_vec(
        &sub_vec(&rhs[n_act..], &cocycle.mul_vec(base)),
        &quadratic(fs1, &to_matrix(field, da, db, base)),
    );
    let x = if act.kernel.is_empty() {
        if !crate::linalg::is_zero_vec(&reduced_rhs) {
            return Verdict::None;
        }
        base.clone()
    } else {
        let k = Matrix::from_columns(field, base.len(), &act.kernel);
        match cocycle.mul(&k).solve_affine(&reduced_rhs) {
            Some(sol) => add_vec(base, &k.mul_vec(&sol.particular)),
            None => return Verdict::None,
        }
    };
    let e = to_matrix(field, da, db, &x);
    if check_equivalence_with(fs1, fs2, &e).ok() {
        Verdict::Witness(e)
    } else {
        Verdict::Undecided
    }
}

/// Searches for `E` with
/// `f(i,j) = −φ'(j)E(i) − φ(i)E(j) − E(i)E(j) + E(ij)` for every product,
/// i.e. a transport of `fs` with zero cocycle.
pub fn find_split_witness(fs: &FactorSystem, budget: u64) -> Result<Verdict> {
    let report = fs.verify();
    if !report.ok() {
        return Err(Error::InvalidFactorSystem(report.violations[0].to_string()));
    }
    let field = fs.field();
    let (da, db) = (fs.a().dim(), fs.b().dim());
    let aff = affine_part(fs);
    let n_act = fs.action().flat().len();
    let total = aff.constant.len();
    let cocycle = rows(&aff.matrix, n_act..total);
    let rhs: Vector = aff.constant[n_act..].iter().map(|x| -x).collect();

    let splits = |x: &Vector| -> bool {
        let e = to_matrix(field, da, db, x);
        let g = fs.transport_raw(&e, true);
        g.f().iter().all(|t| t.is_zero())
    };
    let witness = |x: Vector| Verdict::Witness(to_matrix(field, da, db, &x));

    if fs.a().is_abelian() {
        return Ok(match cocycle.solve_affine(&rhs) {
            Some(sol) if splits(&sol.particular) => witness(sol.particular),
            Some(_) => Verdict::Undecided,
            None => Verdict::None,
        });
    }

    let n = da * db;
    let fits = |x: &Vector| -> bool {
        let e = to_matrix(field, da, db, x);
        add_vec(&cocycle.mul_vec(x), &quadratic(fs, &e)) == rhs
    };
    let dirs: Vec<Vector> = (0..n).map(|t| crate::linalg::unit(field, n, t)).collect();
    if let Some(count) = count_within(field, n, budget) {
        let (found, _) = enumerate(field, &zeros(field, n), &dirs, count, &fits);
        return Ok(match found {
            Some(x) if splits(&x) => witness(x),
            Some(_) => Verdict::Undecided,
            None => Verdict::None,
        });
    }

    let zero = zeros(field, n);
    if fits(&zero) {
        return Ok(witness(zero));
    }
    if let Some(sol) = cocycle.solve_affine(&rhs) {
        if fits(&sol.particular) && splits(&sol.particular) {
            return Ok(witness(sol.particular));
        }
        if field.modulus().is_some() && !sol.kernel.is_empty() {
            let (found, _) = enumerate(field, &sol.particular, &sol.kernel, budget, &fits);
            if let Some(x) = found.filter(|x| splits(x)) {
                return Ok(witness(x));
            }
        }
    }
    Ok(Verdict::Undecided)
}
