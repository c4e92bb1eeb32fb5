//! Factor systems (nonabelian 2-cocycles) for all seven varieties.
//!
//! A factor system of `B` with coefficients in `A` is a family of action maps
//! `φ_s(i), φ'_s(i) ∈ End(A)` and bilinear maps `f_s: B × B → A`, one set per
//! product `s` of the variety. It defines the multiplication
//!
//! ```text
//! (m,i) *_s (n,j) = (m *_s n + φ_s(i)n + φ'_s(j)m + f_s(i,j), i *_s j)
//! ```
//!
//! on `A ⊕ B`, and the identity tables in [`identities`] are exactly the
//! conditions for that product to define an algebra of the variety.

mod equivalence;
pub(crate) mod identities;

pub use equivalence::{find_equivalence, find_split_witness, Verdict, DEFAULT_BUDGET};

use crate::algebra::{Algebra, BilinearMap, Side, Variety};
use crate::error::{Error, Result};
use crate::extension::{block_pi, block_section, block_sigma, Extension, Section};
use crate::field::{FieldElem, FieldSpec};
use crate::linalg::{add_vec, is_zero_vec, sub_vec, Matrix, Vector};
use crate::report::{Report, Violation};

use identities::{families, table, EvalContext};

/// Whether the variety stores `φ'` explicitly. Lie (`φ' = −φ`) and
/// commutative (`φ' = φ`) algebras store `φ` alone.
pub fn stores_right_action(variety: Variety) -> bool {
    !matches!(variety, Variety::Lie | Variety::Commutative)
}

/// Action maps `φ_s(e_i)` and, where stored, `φ'_s(e_i)`, indexed `[s][i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    variety: Variety,
    left: Vec<Vec<Matrix>>,
    right: Option<Vec<Vec<Matrix>>>,
}

impl Action {
    pub fn new(variety: Variety, left: Vec<Vec<Matrix>>, right: Option<Vec<Vec<Matrix>>>) -> Result<Self> {
        let arity = variety.product_arity();
        if left.len() != arity {
            return Err(Error::dims(format!(
                "{variety} action needs {arity} left families, got {}",
                left.len()
            )));
        }
        match (&right, stores_right_action(variety)) {
            (Some(r), true) if r.len() == arity => {}
            (None, false) => {}
            (Some(_), false) => {
                return Err(Error::dims(format!("{variety} actions do not store a right action")));
            }
            _ => return Err(Error::dims(format!("{variety} action needs {arity} right families"))),
        }
        Ok(Action { variety, left, right })
    }

    pub fn zero(variety: Variety, field: FieldSpec, dim_a: usize, dim_b: usize) -> Self {
        let fam = || -> Vec<Vec<Matrix>> {
            (0..variety.product_arity())
                .map(|_| vec![Matrix::zeros(field, dim_a, dim_a); dim_b])
                .collect()
        };
        Action {
            variety,
            left: fam(),
            right: stores_right_action(variety).then(fam),
        }
    }

    pub fn variety(&self) -> Variety {
        self.variety
    }

    /// `φ_s(e_i)` for all `s, i`.
    pub fn left(&self) -> &[Vec<Matrix>] {
        &self.left
    }

    /// The stored right action, `None` for Lie and commutative.
    pub fn stored_right(&self) -> Option<&[Vec<Matrix>]> {
        self.right.as_deref()
    }

    /// `φ'_s(e_i)` for all `s, i`, derived where not stored.
    pub fn right(&self) -> Vec<Vec<Matrix>> {
        match (&self.right, self.variety) {
            (Some(r), _) => r.clone(),
            (None, Variety::Lie) => self
                .left
                .iter()
                .map(|fam| fam.iter().map(Matrix::neg).collect())
                .collect(),
            (None, _) => self.left.clone(),
        }
    }

    pub fn phi(&self, s: usize, i: usize) -> &Matrix {
        &self.left[s][i]
    }

    pub fn phi_prime(&self, s: usize, i: usize) -> Matrix {
        match (&self.right, self.variety) {
            (Some(r), _) => r[s][i].clone(),
            (None, Variety::Lie) => self.left[s][i].neg(),
            (None, _) => self.left[s][i].clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        let all_zero = |fam: &Vec<Vec<Matrix>>| fam.iter().flatten().all(Matrix::is_zero);
        all_zero(&self.left) && self.right.as_ref().is_none_or(all_zero)
    }

    fn flat(&self) -> Vector {
        let mut out = Vector::new();
        for fam in std::iter::once(&self.left).chain(self.right.as_ref()) {
            for m in fam.iter().flatten() {
                for r in 0..m.rows() {
                    out.extend_from_slice(m.row(r));
                }
            }
        }
        out
    }
}

/// Outcome of [`FactorSystem::verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSystemReport {
    /// Number of identity families of the variety.
    pub identity_family_count: usize,
    pub violations: Vec<Violation>,
}

impl FactorSystemReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn names(&self) -> Vec<&str> {
        self.violations.iter().map(|v| v.name.as_str()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSystem {
    a: Algebra,
    b: Algebra,
    action: Action,
    f: Vec<BilinearMap>,
}

impl FactorSystem {
    /// Checks shapes and fields only; use [`FactorSystem::verify`] for the identities.
    pub fn new(a: Algebra, b: Algebra, action: Action, f: Vec<BilinearMap>) -> Result<Self> {
        let variety = a.variety();
        if b.variety() != variety || action.variety() != variety {
            return Err(Error::dims(format!(
                "factor system mixes varieties {}, {}, {}",
                variety,
                b.variety(),
                action.variety()
            )));
        }
        let field = a.field();
        if b.field() != field {
            return Err(Error::FieldMismatch(format!("A over {field}, B over {}", b.field())));
        }
        let (da, db) = (a.dim(), b.dim());
        for m in action.left.iter().chain(action.right.iter().flatten()) {
            if m.len() != db {
                return Err(Error::dims(format!(
                    "action family of length {}, dim B = {db}",
                    m.len()
                )));
            }
            for x in m {
                if x.shape() != (da, da) {
                    return Err(Error::dims(format!("action matrix {:?}, dim A = {da}", x.shape())));
                }
                if x.field() != field {
                    return Err(Error::FieldMismatch(format!("action matrix over {}", x.field())));
                }
            }
        }
        if f.len() != variety.product_arity() {
            return Err(Error::dims(format!(
                "{variety} factor systems need {} f tensors",
                variety.product_arity()
            )));
        }
        for t in &f {
            if t.shape() != (db, db, da) {
                return Err(Error::dims(format!(
                    "f tensor {:?}, expected {:?}",
                    t.shape(),
                    (db, db, da)
                )));
            }
            if t.field() != field {
                return Err(Error::FieldMismatch(format!("f tensor over {}", t.field())));
            }
        }
        Ok(FactorSystem { a, b, action, f })
    }

    /// Zero action and zero cocycle.
    pub fn zero(a: Algebra, b: Algebra) -> Result<Self> {
        let action = Action::zero(a.variety(), a.field(), a.dim(), b.dim());
        let f = vec![BilinearMap::zeros(a.field(), b.dim(), b.dim(), a.dim()); a.variety().product_arity()];
        FactorSystem::new(a, b, action, f)
    }

    pub fn a(&self) -> &Algebra {
        &self.a
    }

    pub fn b(&self) -> &Algebra {
        &self.b
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    pub fn f(&self) -> &[BilinearMap] {
        &self.f
    }

    pub fn variety(&self) -> Variety {
        self.a.variety()
    }

    pub fn field(&self) -> FieldSpec {
        self.a.field()
    }

    /// Same algebras and action, different cocycle.
    pub fn with_f(&self, f: Vec<BilinearMap>) -> Result<Self> {
        FactorSystem::new(self.a.clone(), self.b.clone(), self.action.clone(), f)
    }

    /// Every scalar of the action and cocycle, in a fixed order.
    pub(crate) fn flat(&self) -> Vector {
        let mut out = self.action.flat();
        for t in &self.f {
            out.extend_from_slice(t.as_flat());
        }
        out
    }

    /// Runs the identity table of the variety on every basis assignment.
    pub fn verify(&self) -> FactorSystemReport {
        let mut violations = Vec::new();
        for (label, alg) in [("algebra:A", &self.a), ("algebra:B", &self.b)] {
            for v in alg.verify().violations {
                violations.push(Violation::new(format!("{label}:{}", v.name), v.indices, v.residual));
            }
        }
        let right = self.action.right();
        let ctx = EvalContext {
            a: &self.a,
            b: &self.b,
            left: &self.action.left,
            right: &right,
            f: &self.f,
        };
        for r in ctx.residuals(table(self.variety()), false) {
            violations.push(Violation::new(r.family, r.indices, r.value));
        }
        FactorSystemReport {
            identity_family_count: families(self.variety()).len(),
            violations,
        }
    }

    /// The extension `A → A ⊕ B → B` carrying the factor-system product,
    /// with the canonical section `T(i) = (0, i)`.
    pub fn construct_extension(&self) -> Result<(Extension, Section)> {
        let report = self.verify();
        if !report.ok() {
            return Err(Error::InvalidFactorSystem(report.violations[0].to_string()));
        }
        Ok(self.construct_unchecked())
    }

    pub(crate) fn construct_unchecked(&self) -> (Extension, Section) {
        let field = self.field();
        let (da, db) = (self.a.dim(), self.b.dim());
        let n = da + db;
        let right = self.action.right();
        let mut products = Vec::new();
        for s in 0..self.variety().product_arity() {
            let mut c = BilinearMap::zeros(field, n, n, n);
            let ap = self.a.product(s);
            let bp = self.b.product(s);
            for m in 0..da {
                for k in 0..da {
                    for x in 0..da {
                        c.get_mut(m, k)[x] = ap.get(m, k)[x].clone();
                    }
                }
                for j in 0..db {
                    // (m,0)(0,j) = φ'(j)m
                    for x in 0..da {
                        c.get_mut(m, da + j)[x] = right[s][j].get(x, m).clone();
                    }
                }
            }
            for i in 0..db {
                for k in 0..da {
                    // (0,i)(k,0) = φ(i)k
                    for x in 0..da {
                        c.get_mut(da + i, k)[x] = self.action.left[s][i].get(x, k).clone();
                    }
                }
                for j in 0..db {
                    let fij = self.f[s].get(i, j).to_vec();
                    let bij = bp.get(i, j).to_vec();
                    let slot = c.get_mut(da + i, da + j);
                    slot[..da].clone_from_slice(&fij);
                    slot[da..].clone_from_slice(&bij);
                }
            }
            products.push(c);
        }
        let l = Algebra::new(self.variety(), field, n, products).expect("shapes are consistent");
        let ext = Extension::new(
            self.a.clone(),
            l,
            self.b.clone(),
            block_sigma(field, da, db),
            block_pi(field, da, db),
        )
        .expect("shapes are consistent");
        (ext, block_section(field, da, db))
    }

    /// `ψ_s(i) = φ_s(i) + ad^l(E(i))`, `ψ'_s(i) = φ'_s(i) + ad^r(E(i))`,
    /// `g_s(i,j) = f_s(i,j) + φ'_s(j)E(i) + φ_s(i)E(j) + E(i)E(j) − E(ij)`.
    pub fn transport(&self, e: &Matrix) -> Result<FactorSystem> {
        self.check_e(e)?;
        let report = self.verify();
        if !report.ok() {
            return Err(Error::InvalidFactorSystem(report.violations[0].to_string()));
        }
        Ok(self.transport_raw(e, true))
    }

    fn check_e(&self, e: &Matrix) -> Result<()> {
        if e.shape() != (self.a.dim(), self.b.dim()) {
            return Err(Error::dims(format!(
                "E is {:?}, expected {:?}",
                e.shape(),
                (self.a.dim(), self.b.dim())
            )));
        }
        if e.field() != self.field() {
            return Err(Error::FieldMismatch(format!("E over {}", e.field())));
        }
        Ok(())
    }

    /// Transport without validation; `quadratic = false` drops `E(i)E(j)`.
    pub(crate) fn transport_raw(&self, e: &Matrix, quadratic: bool) -> FactorSystem {
        let arity = self.variety().product_arity();
        let db = self.b.dim();
        let cols = e.columns();
        let shift = |side: Side, fam: &[Vec<Matrix>]| -> Vec<Vec<Matrix>> {
            (0..arity)
                .map(|s| (0..db).map(|i| fam[s][i].add(&self.a.ad(s, side, &cols[i]))).collect())
                .collect()
        };
        let left = shift(Side::Left, &self.action.left);
        let right = self.action.right.as_ref().map(|r| shift(Side::Right, r));
        let full_right = self.action.right();
        let mut f = Vec::with_capacity(arity);
        for s in 0..arity {
            let mut g = self.f[s].clone();
            for i in 0..db {
                for j in 0..db {
                    let mut v = g.get(i, j).to_vec();
                    v = add_vec(&v, &full_right[s][j].mul_vec(&cols[i]));
                    v = add_vec(&v, &self.action.left[s][i].mul_vec(&cols[j]));
                    if quadratic {
                        v = add_vec(&v, &self.a.mul(s, &cols[i], &cols[j]));
                    }
                    v = sub_vec(&v, &e.mul_vec(self.b.product(s).get(i, j)));
                    g.set(i, j, &v);
                }
            }
            f.push(g);
        }
        FactorSystem {
            a: self.a.clone(),
            b: self.b.clone(),
            action: Action {
                variety: self.variety(),
                left,
                right,
            },
            f,
        }
    }

    /// Applies an arrow of the functor diagram to `A`, `B`, the action and the cocycle.
    pub fn functor_map(&self, target: Variety) -> Result<FactorSystem> {
        let recipe = functor_recipe(self.variety(), target)?;
        let a = self.a.functor_map(target)?;
        let b = self.b.functor_map(target)?;
        let field = self.field();
        let (da, db) = (self.a.dim(), self.b.dim());
        let right = self.action.right();
        let mut new_left = Vec::new();
        let mut new_right = Vec::new();
        let mut new_f = Vec::new();
        for terms in recipe {
            let mut l = vec![Matrix::zeros(field, da, da); db];
            let mut r = vec![Matrix::zeros(field, da, da); db];
            let mut f = BilinearMap::zeros(field, db, db, da);
            for &(coef, s, swapped) in terms.iter() {
                let c = field.from_i64(coef);
                let (src_l, src_r) = if swapped {
                    (&right[s], &self.action.left[s])
                } else {
                    (&self.action.left[s], &right[s])
                };
                for i in 0..db {
                    l[i] = l[i].add(&src_l[i].scale(&c));
                    r[i] = r[i].add(&src_r[i].scale(&c));
                }
                let src_f = if swapped {
                    self.f[s].swapped()
                } else {
                    self.f[s].clone()
                };
                f = f.add(&BilinearMap::from_flat(
                    field,
                    db,
                    db,
                    da,
                    src_f.as_flat().iter().map(|x| x * &c).collect(),
                ));
            }
            new_left.push(l);
            new_right.push(r);
            new_f.push(f);
        }
        let action = Action::new(target, new_left, stores_right_action(target).then_some(new_right))?;
        FactorSystem::new(a, b, action, new_f)
    }
}

type Recipe = &'static [&'static [(i64, usize, bool)]];

/// Each new product as a signed sum of old products, possibly with swapped
/// arguments; mirrors [`Algebra::functor_map`].
fn functor_recipe(from: Variety, to: Variety) -> Result<Recipe> {
    use Variety::*;
    Ok(match (from, to) {
        (Zinbiel, Dendriform) => &[&[(1, 0, false)], &[(1, 0, true)]],
        (Zinbiel, Commutative) => &[&[(1, 0, false), (1, 0, true)]],
        (Dendriform, Associative) => &[&[(1, 0, false), (1, 1, false)]],
        (Commutative, Associative) | (Lie, Leibniz) => &[&[(1, 0, false)]],
        (Associative, Diassociative) => &[&[(1, 0, false)], &[(1, 0, false)]],
        (Associative, Lie) => &[&[(1, 0, false), (-1, 0, true)]],
        (Diassociative, Leibniz) => &[&[(1, 1, false), (-1, 0, true)]],
        (from, to) => return Err(Error::NotAnArrow { from, to }),
    })
}

/// `σ⁻¹` for vectors of `L`, computed in the frame `[T | σ]`.
struct Preimage {
    inv: Matrix,
    db: usize,
}

impl Preimage {
    fn new(ext: &Extension, section: &Section) -> Result<Self> {
        let inv = ext.frame(section).inverse().ok_or(Error::SingularFrame)?;
        Ok(Preimage { inv, db: ext.b().dim() })
    }

    fn apply(&self, v: &[FieldElem], what: impl FnOnce() -> String) -> Result<Vector> {
        let c = self.inv.mul_vec(v);
        if !is_zero_vec(&c[..self.db]) {
            return Err(Error::PreimageOutsideImage(what()));
        }
        Ok(c[self.db..].to_vec())
    }
}

/// Reads off the unique factor system belonging to `ext` and the section.
pub fn extract_factor_system(ext: &Extension, section: &Section) -> Result<FactorSystem> {
    let (a, b, l) = (ext.a(), ext.b(), ext.l());
    let (da, db) = (a.dim(), b.dim());
    if section.t.shape() != (l.dim(), db) {
        return Err(Error::dims(format!(
            "section is {:?}, expected {:?}",
            section.t.shape(),
            (l.dim(), db)
        )));
    }
    let field = ext.field();
    let variety = l.variety();
    let pre = Preimage::new(ext, section)?;
    let t = section.t.columns();
    let sigma = ext.sigma().columns();
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut f = Vec::new();
    for s in 0..variety.product_arity() {
        let mut ls = Vec::with_capacity(db);
        let mut rs = Vec::with_capacity(db);
        for (i, ti) in t.iter().enumerate() {
            let mut lc = Vec::with_capacity(da);
            let mut rc = Vec::with_capacity(da);
            for (m, sm) in sigma.iter().enumerate() {
                lc.push(pre.apply(&l.mul(s, ti, sm), || format!("T({i}) * sigma({m}) for product {s}"))?);
                rc.push(pre.apply(&l.mul(s, sm, ti), || format!("sigma({m}) * T({i}) for product {s}"))?);
            }
            ls.push(Matrix::from_columns(field, da, &lc));
            rs.push(Matrix::from_columns(field, da, &rc));
        }
        let mut fs = BilinearMap::zeros(field, db, db, da);
        for i in 0..db {
            for j in 0..db {
                let tij = section.t.mul_vec(b.product(s).get(i, j));
                let v = sub_vec(&l.mul(s, &t[i], &t[j]), &tij);
                fs.set(i, j, &pre.apply(&v, || format!("f({i},{j}) for product {s}"))?);
            }
        }
        left.push(ls);
        right.push(rs);
        f.push(fs);
    }
    let action = Action::new(variety, left, stores_right_action(variety).then_some(right))?;
    FactorSystem::new(a.clone(), b.clone(), action, f)
}

/// Does `fs` belong to `ext` with section `T`: `σφ(i)m = T(i)σ(m)`,
/// `σφ'(i)m = σ(m)T(i)` and `σf(i,j) = T(i)T(j) − T(ij)`?
pub fn check_belonging(fs: &FactorSystem, ext: &Extension, section: &Section) -> Report {
    let mut report = Report::default();
    let (l, sigma) = (ext.l(), ext.sigma());
    let (da, db) = (fs.a.dim(), fs.b.dim());
    if ext.a().dim() != da || ext.b().dim() != db || section.t.shape() != (l.dim(), db) || fs.variety() != l.variety() {
        report.push(Violation::condition("shape"));
        return report;
    }
    let t = section.t.columns();
    let sc = sigma.columns();
    let right = fs.action.right();
    let mut check = |name: &str, idx: Vec<usize>, lhs: Vector, rhs: Vector| {
        let r = sub_vec(&lhs, &rhs);
        if !is_zero_vec(&r) {
            report.push(Violation::new(name, idx, r));
        }
    };
    for s in 0..fs.variety().product_arity() {
        for i in 0..db {
            for m in 0..da {
                check(
                    "phi",
                    vec![s, i, m],
                    sigma.mul_vec(&fs.action.left[s][i].column(m)),
                    l.mul(s, &t[i], &sc[m]),
                );
                check(
                    "phi_prime",
                    vec![s, i, m],
                    sigma.mul_vec(&right[s][i].column(m)),
                    l.mul(s, &sc[m], &t[i]),
                );
            }
        }
        for i in 0..db {
            for j in 0..db {
                let rhs = sub_vec(&l.mul(s, &t[i], &t[j]), &section.t.mul_vec(fs.b.product(s).get(i, j)));
                check("f", vec![s, i, j], sigma.mul_vec(fs.f[s].get(i, j)), rhs);
            }
        }
    }
    report
}

/// Is `E` an equivalence from `fs1` to `fs2`, i.e. `transport(fs1, E) = fs2`?
pub fn check_equivalence_with(fs1: &FactorSystem, fs2: &FactorSystem, e: &Matrix) -> Report {
    let mut report = Report::default();
    if fs1.a != fs2.a || fs1.b != fs2.b {
        report.push(Violation::condition("same_algebras"));
        return report;
    }
    if fs1.check_e(e).is_err() {
        report.push(Violation::condition("shape"));
        return report;
    }
    let g = fs1.transport_raw(e, true);
    let arity = fs1.variety().product_arity();
    let db = fs1.b.dim();
    let (gr, fr) = (g.action.right(), fs2.action.right());
    for s in 0..arity {
        for i in 0..db {
            let d = g.action.left[s][i].sub(&fs2.action.left[s][i]);
            if !d.is_zero() {
                report.push(Violation::new("phi", vec![s, i], d.columns().concat()));
            }
            let d = gr[s][i].sub(&fr[s][i]);
            if !d.is_zero() {
                report.push(Violation::new("phi_prime", vec![s, i], d.columns().concat()));
            }
        }
        for i in 0..db {
            for j in 0..db {
                let r = sub_vec(g.f[s].get(i, j), fs2.f[s].get(i, j));
                if !is_zero_vec(&r) {
                    report.push(Violation::new("f", vec![s, i, j], r));
                }
            }
        }
    }
    report
}
