//! Linear theory for abelian coefficients: the cocycle space `Fact`, the
//! coboundary space `T`, central `Z²/B²/H²` for every variety, and the
//! Leibniz coboundary `dⁿ`.
//!
//! Cocycle tensors are flattened lexicographically over
//! `(product, i, j, A-coordinate)`; `n`-cochains over `(i₁, …, iₙ, A-coordinate)`.

use crate::algebra::{Algebra, BilinearMap, Variety};
use crate::error::{Error, Result};
use crate::factor_system::identities::{table, EvalContext};
use crate::factor_system::{Action, FactorSystem};
use crate::field::{FieldElem, FieldSpec};
use crate::linalg::{in_span, span_rank, sub_vec, unit, zeros, Matrix, Vector};
use crate::report::{Report, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpaceLabel {
    Fact,
    SplitT,
    Z2,
    B2,
}

/// A subspace of flattened cochains, by basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainSpace {
    pub ambient_dim: usize,
    pub basis: Vec<Vector>,
    pub label: SpaceLabel,
}

impl CochainSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// An `n`-cochain `Bⁿ → A` with values flattened over `(i₁, …, iₙ, c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub n: usize,
    pub b_dim: usize,
    pub a_dim: usize,
    pub values: Vector,
}

impl Cochain {
    pub fn zero(field: FieldSpec, n: usize, b_dim: usize, a_dim: usize) -> Self {
        Cochain {
            n,
            b_dim,
            a_dim,
            values: zeros(field, b_dim.pow(n as u32) * a_dim),
        }
    }

    pub fn is_zero(&self) -> bool {
        crate::linalg::is_zero_vec(&self.values)
    }

    fn index(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.b_dim + i) * self.a_dim
    }

    /// `f(e_{idx₁}, …, e_{idxₙ})`
    pub fn value(&self, idx: &[usize]) -> &[FieldElem] {
        let start = self.index(idx);
        &self.values[start..start + self.a_dim]
    }
}

/// Flattened `(product, i, j, c)` form of a list of cocycle tensors.
pub fn flatten(f: &[BilinearMap]) -> Vector {
    f.iter().flat_map(|t| t.as_flat().iter().cloned()).collect()
}

/// Inverse of [`flatten`] for `arity` tensors `B × B → A`.
pub fn unflatten(field: FieldSpec, arity: usize, b_dim: usize, a_dim: usize, v: &[FieldElem]) -> Vec<BilinearMap> {
    let len = b_dim * b_dim * a_dim;
    (0..arity)
        .map(|s| BilinearMap::from_flat(field, b_dim, b_dim, a_dim, v[s * len..(s + 1) * len].to_vec()))
        .collect()
}

fn zero_system(a: &Algebra, b: &Algebra, action: &Action) -> Result<FactorSystem> {
    if !a.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let f = vec![BilinearMap::zeros(a.field(), b.dim(), b.dim(), a.dim()); a.variety().product_arity()];
    FactorSystem::new(a.clone(), b.clone(), action.clone(), f)
}

/// With `A` abelian, the factor-system identities evaluated at `f = 0`.
pub fn verify_action_compatible(a: &Algebra, b: &Algebra, action: &Action) -> Result<Report> {
    let fs = zero_system(a, b, action)?;
    Ok(Report {
        violations: fs.verify().violations,
    })
}

fn compatible_system(a: &Algebra, b: &Algebra, action: &Action) -> Result<FactorSystem> {
    let fs = zero_system(a, b, action)?;
    let report = fs.verify();
    if let Some(v) = report.violations.first() {
        return Err(Error::IncompatibleAction(v.to_string()));
    }
    Ok(fs)
}

fn cocycle_len(fs: &FactorSystem) -> usize {
    fs.variety().product_arity() * fs.b().dim() * fs.b().dim() * fs.a().dim()
}

/// The linear map `f ↦ residuals of every f-dependent identity`.
fn fact_operator(fs: &FactorSystem) -> Matrix {
    let field = fs.field();
    let (da, db) = (fs.a().dim(), fs.b().dim());
    let arity = fs.variety().product_arity();
    let n = cocycle_len(fs);
    let ids: Vec<_> = table(fs.variety()).iter().filter(|id| id.uses_f()).cloned().collect();
    let left = fs.action().left().to_vec();
    let right = fs.action().right();
    let residual = |v: &[FieldElem]| -> Vector {
        let f = unflatten(field, arity, db, da, v);
        let ctx = EvalContext {
            a: fs.a(),
            b: fs.b(),
            left: &left,
            right: &right,
            f: &f,
        };
        crate::factor_system::identities::residual_vector(&ctx, &ids)
    };
    let base = residual(&zeros(field, n));
    let cols: Vec<Vector> = (0..n).map(|t| sub_vec(&residual(&unit(field, n, t)), &base)).collect();
    Matrix::from_columns(field, base.len(), &cols)
}

/// Cocycles `f` making `(φ, φ', f)` a factor system, for abelian `A`.
pub fn fact_space(a: &Algebra, b: &Algebra, action: &Action) -> Result<CochainSpace> {
    let fs = compatible_system(a, b, action)?;
    Ok(CochainSpace {
        ambient_dim: cocycle_len(&fs),
        basis: fact_operator(&fs).kernel_basis(),
        label: SpaceLabel::Fact,
    })
}

/// `δE(i,j) = −φ'(j)E(i) − φ(i)E(j) + E(ij)` for every product.
fn delta(fs: &FactorSystem, e: &Matrix) -> Vector {
    let (b, action) = (fs.b(), fs.action());
    let cols = e.columns();
    let right = action.right();
    let mut out = Vector::new();
    for s in 0..fs.variety().product_arity() {
        for i in 0..b.dim() {
            for j in 0..b.dim() {
                let v = e.mul_vec(b.product(s).get(i, j));
                let v = sub_vec(&v, &right[s][j].mul_vec(&cols[i]));
                out.extend(sub_vec(&v, &action.phi(s, i).mul_vec(&cols[j])));
            }
        }
    }
    out
}

fn delta_matrix(fs: &FactorSystem) -> Matrix {
    let field = fs.field();
    let (da, db) = (fs.a().dim(), fs.b().dim());
    let cols: Vec<Vector> = (0..db)
        .flat_map(|i| (0..da).map(move |r| (r, i)))
        .map(|(r, i)| {
            let mut e = Matrix::zeros(field, da, db);
            e.set(r, i, field.one());
            delta(fs, &e)
        })
        .collect();
    Matrix::from_columns(field, cocycle_len(fs), &cols)
}

/// Image of `δ`: cocycles of factor systems equivalent to `f = 0`.
pub fn split_space(a: &Algebra, b: &Algebra, action: &Action) -> Result<CochainSpace> {
    let fs = compatible_system(a, b, action)?;
    Ok(CochainSpace {
        ambient_dim: cocycle_len(&fs),
        basis: delta_matrix(&fs).image_basis(),
        label: SpaceLabel::SplitT,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtDims {
    pub fact: usize,
    pub split: usize,
    pub ext: usize,
}

pub fn ext_dim(a: &Algebra, b: &Algebra, action: &Action) -> Result<ExtDims> {
    let fact = fact_space(a, b, action)?.dim();
    let split = split_space(a, b, action)?.dim();
    Ok(ExtDims {
        fact,
        split,
        ext: fact - split,
    })
}

/// Whether `f1 − f2` is a coboundary; both must be cocycles.
pub fn same_coset(a: &Algebra, b: &Algebra, action: &Action, f1: &[BilinearMap], f2: &[BilinearMap]) -> Result<bool> {
    let fact = fact_space(a, b, action)?;
    let split = split_space(a, b, action)?;
    let field = a.field();
    let (v1, v2) = (flatten(f1), flatten(f2));
    for v in [&v1, &v2] {
        if v.len() != fact.ambient_dim {
            return Err(Error::dims(format!(
                "cocycle of length {}, expected {}",
                v.len(),
                fact.ambient_dim
            )));
        }
        if !in_span(field, &fact.basis, v) {
            return Err(Error::NotACocycle);
        }
    }
    Ok(in_span(field, &split.basis, &sub_vec(&v1, &v2)))
}

/// Central second cohomology with coefficients in the abelian algebra of
/// dimension `a_dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralH2 {
    pub z2: CochainSpace,
    pub b2: CochainSpace,
    /// Cocycles spanning a complement of `B²` in `Z²`.
    pub h2_basis: Vec<Vector>,
}

impl CentralH2 {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.z2.dim(), self.b2.dim(), self.h2_basis.len())
    }
}

#[derive(Clone, Copy)]
enum Arg {
    V(usize),
    P(usize, usize, usize),
}

/// `Σ coef · f_s(x, y) = 0`
type CocycleEq = &'static [(i64, usize, Arg, Arg)];

/// The central 2-cocycle identities of each variety (`i, j, k` = 0, 1, 2).
fn cocycle_table(variety: Variety) -> &'static [CocycleEq] {
    use Arg::{P, V};
    match variety {
        Variety::Lie => &[
            &[(1, 0, V(0), V(1)), (1, 0, V(1), V(0))],
            &[(1, 0, V(0), V(0))],
            &[
                (1, 0, P(0, 0, 1), V(2)),
                (1, 0, P(0, 1, 2), V(0)),
                (1, 0, P(0, 2, 0), V(1)),
            ],
        ],
        Variety::Leibniz => &[&[
            (1, 0, V(0), P(0, 1, 2)),
            (-1, 0, P(0, 0, 1), V(2)),
            (-1, 0, V(1), P(0, 0, 2)),
        ]],
        Variety::Associative => &[&[(1, 0, P(0, 0, 1), V(2)), (-1, 0, V(0), P(0, 1, 2))]],
        Variety::Commutative => &[
            &[(1, 0, V(0), V(1)), (-1, 0, V(1), V(0))],
            &[(1, 0, P(0, 0, 1), V(2)), (-1, 0, V(0), P(0, 1, 2))],
        ],
        Variety::Zinbiel => &[&[
            (1, 0, P(0, 0, 1), V(2)),
            (-1, 0, V(0), P(0, 1, 2)),
            (-1, 0, V(0), P(0, 2, 1)),
        ]],
        // ⊣ = 0, ⊢ = 1
        Variety::Diassociative => &[
            &[(1, 0, V(0), P(0, 1, 2)), (-1, 0, V(0), P(1, 1, 2))],
            &[(1, 0, P(1, 0, 1), V(2)), (-1, 1, V(0), P(0, 1, 2))],
            &[(1, 1, P(0, 0, 1), V(2)), (-1, 1, P(1, 0, 1), V(2))],
            &[(1, 0, P(0, 0, 1), V(2)), (-1, 0, V(0), P(0, 1, 2))],
            &[(1, 1, P(1, 0, 1), V(2)), (-1, 1, V(0), P(1, 1, 2))],
        ],
        // < = 0, > = 1
        Variety::Dendriform => &[
            &[
                (1, 0, P(0, 0, 1), V(2)),
                (-1, 0, V(0), P(0, 1, 2)),
                (-1, 0, V(0), P(1, 1, 2)),
            ],
            &[(1, 0, P(1, 0, 1), V(2)), (-1, 1, V(0), P(0, 1, 2))],
            &[
                (1, 1, P(0, 0, 1), V(2)),
                (1, 1, P(1, 0, 1), V(2)),
                (-1, 1, V(0), P(1, 1, 2)),
            ],
        ],
    }
}

fn expand(b: &Algebra, arg: Arg, idx: &[usize; 3]) -> Vector {
    match arg {
        Arg::V(v) => unit(b.field(), b.dim(), idx[v]),
        Arg::P(s, x, y) => b.product(s).get(idx[x], idx[y]).to_vec(),
    }
}

/// Rows of the central cocycle conditions on flattened cocycles.
fn central_z2_matrix(a_dim: usize, b: &Algebra) -> Matrix {
    let field = b.field();
    let db = b.dim();
    let arity = b.variety().product_arity();
    let ambient = arity * db * db * a_dim;
    let var = |s: usize, u: usize, v: usize, c: usize| ((s * db + u) * db + v) * a_dim + c;
    let mut rows = Vec::new();
    for eq in cocycle_table(b.variety()) {
        for i in 0..db {
            for j in 0..db {
                for k in 0..db {
                    let idx = [i, j, k];
                    for c in 0..a_dim {
                        let mut row = zeros(field, ambient);
                        for &(coef, s, x, y) in eq.iter() {
                            let (xv, yv) = (expand(b, x, &idx), expand(b, y, &idx));
                            let coef = field.from_i64(coef);
                            for (u, xu) in xv.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                                for (v, yv) in yv.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                                    let slot = &mut row[var(s, u, v, c)];
                                    *slot = &*slot + &(&coef * &(xu * yv));
                                }
                            }
                        }
                        if !crate::linalg::is_zero_vec(&row) {
                            rows.push(row);
                        }
                    }
                }
            }
        }
    }
    Matrix::from_rows(field, ambient, rows)
}

/// `Z²`, `B²` and a complement basis for central extensions of `b` by the
/// abelian algebra of dimension `a_dim`.
pub fn central_h2(a_dim: usize, b: &Algebra) -> CentralH2 {
    let field = b.field();
    let db = b.dim();
    let arity = b.variety().product_arity();
    let ambient = arity * db * db * a_dim;
    let z2 = central_z2_matrix(a_dim, b).kernel_basis();
    // B² = { f_s(i,j) = E(i *_s j) }
    let cols: Vec<Vector> = (0..db)
        .flat_map(|t| (0..a_dim).map(move |c| (t, c)))
        .map(|(t, c)| {
            let mut v = Vector::with_capacity(ambient);
            for s in 0..arity {
                for i in 0..db {
                    for j in 0..db {
                        let coef = &b.product(s).get(i, j)[t];
                        for cc in 0..a_dim {
                            v.push(if cc == c { coef.clone() } else { field.zero() });
                        }
                    }
                }
            }
            v
        })
        .collect();
    let b2 = Matrix::from_columns(field, ambient, &cols).image_basis();
    let mut span = b2.clone();
    let mut h2_basis = Vec::new();
    for z in &z2 {
        let before = span_rank(field, ambient, &span);
        span.push(z.clone());
        if span_rank(field, ambient, &span) > before {
            h2_basis.push(z.clone());
        } else {
            span.pop();
        }
    }
    CentralH2 {
        z2: CochainSpace {
            ambient_dim: ambient,
            basis: z2,
            label: SpaceLabel::Z2,
        },
        b2: CochainSpace {
            ambient_dim: ambient,
            basis: b2,
            label: SpaceLabel::B2,
        },
        h2_basis,
    }
}

fn require_leibniz(b: &Algebra) -> Result<()> {
    match b.variety() {
        Variety::Leibniz | Variety::Lie => Ok(()),
        variety => Err(Error::UnsupportedVariety {
            variety,
            what: "Leibniz coboundary".into(),
        }),
    }
}

/// `(dⁿf)(x₁, …, xₙ₊₁) = Σ_{i<j} (−1)^i f(x₁, …, x̂ᵢ, …, xⱼ₋₁, xᵢxⱼ, xⱼ₊₁, …, xₙ₊₁)`
/// with trivial coefficients.
pub fn leibniz_coboundary(b: &Algebra, f: &Cochain) -> Result<Cochain> {
    require_leibniz(b)?;
    let db = b.dim();
    if f.b_dim != db {
        return Err(Error::dims(format!(
            "cochain on dimension {}, algebra of dimension {db}",
            f.b_dim
        )));
    }
    if f.values.len() != db.pow(f.n as u32) * f.a_dim {
        return Err(Error::dims("cochain value count".to_string()));
    }
    let field = b.field();
    let n = f.n;
    let mut out = Cochain::zero(field, n + 1, db, f.a_dim);
    let mut idx = vec![0usize; n + 1];
    let total = db.pow((n + 1) as u32);
    for flat in 0..total {
        let mut rem = flat;
        for slot in idx.iter_mut().rev() {
            *slot = rem % db;
            rem /= db;
        }
        let mut acc = zeros(field, f.a_dim);
        for p in 0..=n {
            for q in p + 1..=n {
                // 1-based position p+1
                let sign = if p % 2 == 0 { field.from_i64(-1) } else { field.one() };
                let prod = b.product(0).get(idx[p], idx[q]);
                let mut args: Vec<usize> = idx
                    .iter()
                    .enumerate()
                    .filter(|&(r, _)| r != p)
                    .map(|(_, &x)| x)
                    .collect();
                let slot = q - 1;
                for (t, c) in prod.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    args[slot] = t;
                    crate::linalg::axpy(&mut acc, &(&sign * c), f.value(&args));
                }
            }
        }
        let start = out.index(&idx);
        out.values[start..start + f.a_dim].clone_from_slice(&acc);
    }
    Ok(out)
}

fn coboundary_matrix(b: &Algebra, a_dim: usize, n: usize) -> Result<Matrix> {
    let field = b.field();
    let db = b.dim();
    let len = db.pow(n as u32) * a_dim;
    let out_len = db.pow((n + 1) as u32) * a_dim;
    let mut cols = Vec::with_capacity(len);
    for t in 0..len {
        let c = Cochain {
            n,
            b_dim: db,
            a_dim,
            values: unit(field, len, t),
        };
        cols.push(leibniz_coboundary(b, &c)?.values);
    }
    Ok(Matrix::from_columns(field, out_len, &cols))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HnDims {
    pub zn: usize,
    pub bn: usize,
    pub hn: usize,
}

/// Dimensions of `Zⁿ = ker dⁿ`, `Bⁿ = im dⁿ⁻¹` and `Hⁿ`, trivial coefficients.
pub fn leibniz_hn(b: &Algebra, a_dim: usize, n: usize) -> Result<HnDims> {
    require_leibniz(b)?;
    if n == 0 {
        return Err(Error::dims("cohomology degree must be at least 1".to_string()));
    }
    let dn = coboundary_matrix(b, a_dim, n)?;
    let zn = dn.cols() - dn.rank();
    let bn = if n == 1 {
        0
    } else {
        coboundary_matrix(b, a_dim, n - 1)?.rank()
    };
    Ok(HnDims { zn, bn, hn: zn - bn })
}

/// `Zⁿ` basis as flattened cochains.
pub fn leibniz_zn_basis(b: &Algebra, a_dim: usize, n: usize) -> Result<Vec<Vector>> {
    Ok(coboundary_matrix(b, a_dim, n)?.kernel_basis())
}

/// Violations of `f` being a central cocycle of `b` (any variety).
pub fn check_central_cocycle(b: &Algebra, a_dim: usize, f: &[BilinearMap]) -> Report {
    let mut report = Report::default();
    let v = flatten(f);
    let m = central_z2_matrix(a_dim, b);
    if v.len() != m.cols() {
        report.push(Violation::condition("shape"));
        return report;
    }
    let r = m.mul_vec(&v);
    if !crate::linalg::is_zero_vec(&r) {
        report.push(Violation::new("cocycle", Vec::new(), r));
    }
    report
}
