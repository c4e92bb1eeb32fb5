//! Extensions `0 → A → L → B → 0` as concrete matrices.

use crate::algebra::{Algebra, BilinearMap};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::{in_span, sub_vec, Matrix};
use crate::report::{Report, Violation};

/// An extension of `A` by `B`: embedding `sigma: A → L`, projection `pi: L → B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    a: Algebra,
    l: Algebra,
    b: Algebra,
    sigma: Matrix,
    pi: Matrix,
}

/// A linear map `T: B → L` with `π T = I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub t: Matrix,
}

/// An isomorphism `τ: L₁ → L₂` compatible with both sequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtEquivalence {
    pub tau: Matrix,
}

impl Extension {
    /// Checks shapes, fields and varieties; exactness and the homomorphism
    /// conditions are checked by [`Extension::verify`].
    pub fn new(a: Algebra, l: Algebra, b: Algebra, sigma: Matrix, pi: Matrix) -> Result<Self> {
        if a.variety() != l.variety() || b.variety() != l.variety() {
            return Err(Error::dims(format!(
                "extension mixes varieties {}, {}, {}",
                a.variety(),
                l.variety(),
                b.variety()
            )));
        }
        let field = l.field();
        for (what, f) in [
            ("A", a.field()),
            ("B", b.field()),
            ("sigma", sigma.field()),
            ("pi", pi.field()),
        ] {
            if f != field {
                return Err(Error::FieldMismatch(format!("{what} over {f}, L over {field}")));
            }
        }
        if sigma.shape() != (l.dim(), a.dim()) {
            return Err(Error::dims(format!(
                "sigma is {:?}, expected {:?}",
                sigma.shape(),
                (l.dim(), a.dim())
            )));
        }
        if pi.shape() != (b.dim(), l.dim()) {
            return Err(Error::dims(format!(
                "pi is {:?}, expected {:?}",
                pi.shape(),
                (b.dim(), l.dim())
            )));
        }
        Ok(Extension { a, l, b, sigma, pi })
    }

    pub fn a(&self) -> &Algebra {
        &self.a
    }

    pub fn l(&self) -> &Algebra {
        &self.l
    }

    pub fn b(&self) -> &Algebra {
        &self.b
    }

    pub fn sigma(&self) -> &Matrix {
        &self.sigma
    }

    pub fn pi(&self) -> &Matrix {
        &self.pi
    }

    pub fn field(&self) -> FieldSpec {
        self.l.field()
    }

    /// The direct sum `L = A ⊕ B` (A-block first) with block embedding and
    /// projection.
    pub fn direct_sum(a: &Algebra, b: &Algebra) -> Result<Self> {
        if a.variety() != b.variety() || a.field() != b.field() {
            return Err(Error::dims(
                "direct sum of algebras of different variety or field".to_string(),
            ));
        }
        let field = a.field();
        let (da, db) = (a.dim(), b.dim());
        let n = da + db;
        let mut products = Vec::new();
        for s in 0..a.variety().product_arity() {
            let mut c = BilinearMap::zeros(field, n, n, n);
            for i in 0..da {
                for j in 0..da {
                    for k in 0..da {
                        c.get_mut(i, j)[k] = a.product(s).get(i, j)[k].clone();
                    }
                }
            }
            for i in 0..db {
                for j in 0..db {
                    for k in 0..db {
                        c.get_mut(da + i, da + j)[da + k] = b.product(s).get(i, j)[k].clone();
                    }
                }
            }
            products.push(c);
        }
        let l = Algebra::new(a.variety(), field, n, products)?;
        Extension::new(
            a.clone(),
            l,
            b.clone(),
            block_sigma(field, da, db),
            block_pi(field, da, db),
        )
    }

    /// Checks exactness and that `sigma`, `pi` are homomorphisms.
    pub fn verify(&self) -> Report {
        let mut report = Report::default();
        let (da, dl, db) = (self.a.dim(), self.l.dim(), self.b.dim());
        report.require(da + db == dl, "dimensions");
        report.require(self.sigma.rank() == da, "sigma_injective");
        report.require(self.pi.rank() == db, "pi_surjective");
        report.require(self.pi.mul(&self.sigma).is_zero(), "pi_sigma_zero");
        for s in 0..self.l.products().len() {
            for i in 0..da {
                for j in 0..da {
                    let lhs = self.sigma.mul_vec(&self.a.mul(s, &self.a.basis(i), &self.a.basis(j)));
                    let rhs = self.l.mul(s, &self.sigma.column(i), &self.sigma.column(j));
                    let r = sub_vec(&lhs, &rhs);
                    if !crate::linalg::is_zero_vec(&r) {
                        report.push(Violation::new("sigma_homomorphism", vec![s, i, j], r));
                    }
                }
            }
            for u in 0..dl {
                for v in 0..dl {
                    let lhs = self.pi.mul_vec(&self.l.mul(s, &self.l.basis(u), &self.l.basis(v)));
                    let rhs = self.b.mul(s, &self.pi.column(u), &self.pi.column(v));
                    let r = sub_vec(&lhs, &rhs);
                    if !crate::linalg::is_zero_vec(&r) {
                        report.push(Violation::new("pi_homomorphism", vec![s, u, v], r));
                    }
                }
            }
        }
        report
    }

    /// The section with `T(b_j)` the free-variables-zero solution of `π x = b_j`.
    pub fn make_section(&self) -> Result<Section> {
        let field = self.field();
        let mut cols = Vec::with_capacity(self.b.dim());
        for j in 0..self.b.dim() {
            let e = crate::linalg::unit(field, self.b.dim(), j);
            let sol = self
                .pi
                .solve_affine(&e)
                .ok_or_else(|| Error::PreimageOutsideImage(format!("pi misses basis vector {j} of B")))?;
            cols.push(sol.particular);
        }
        Ok(Section {
            t: Matrix::from_columns(field, self.l.dim(), &cols),
        })
    }

    /// Conditions on a candidate section: shape and `π T = I`.
    pub fn check_section(&self, section: &Section) -> Report {
        let mut report = Report::default();
        if section.t.shape() != (self.l.dim(), self.b.dim()) {
            report.push(Violation::condition("section_shape"));
            return report;
        }
        report.require(
            self.pi.mul(&section.t) == Matrix::identity(self.field(), self.b.dim()),
            "pi_t_identity",
        );
        report
    }

    /// `σ(A) ⊆ Z(L)`.
    pub fn is_central(&self) -> bool {
        let z = self.l.center();
        self.sigma.columns().iter().all(|c| in_span(self.field(), &z, c))
    }

    /// The basis change `[T | σ]` from section/embedding coordinates to `L`.
    pub(crate) fn frame(&self, section: &Section) -> Matrix {
        section.t.hstack(&self.sigma)
    }

    /// Is `t` an algebra homomorphism `B → L`?
    pub fn is_homomorphic_section(&self, section: &Section) -> bool {
        is_homomorphism(&self.b, &self.l, &section.t)
    }
}

pub(crate) fn block_sigma(field: FieldSpec, da: usize, db: usize) -> Matrix {
    Matrix::identity(field, da).vstack(&Matrix::zeros(field, db, da))
}

pub(crate) fn block_pi(field: FieldSpec, da: usize, db: usize) -> Matrix {
    Matrix::zeros(field, db, da).hstack(&Matrix::identity(field, db))
}

pub(crate) fn block_section(field: FieldSpec, da: usize, db: usize) -> Section {
    Section {
        t: Matrix::zeros(field, da, db).vstack(&Matrix::identity(field, db)),
    }
}

/// Does the linear map `m: X → Y` preserve every product on basis pairs?
pub fn is_homomorphism(x: &Algebra, y: &Algebra, m: &Matrix) -> bool {
    if m.shape() != (y.dim(), x.dim()) || x.products().len() != y.products().len() {
        return false;
    }
    (0..x.products().len()).all(|s| {
        (0..x.dim()).all(|i| {
            (0..x.dim()).all(|j| m.mul_vec(&x.mul(s, &x.basis(i), &x.basis(j))) == y.mul(s, &m.column(i), &m.column(j)))
        })
    })
}

/// Checks that `tau` is an equivalence from `ext1` to `ext2`.
pub fn check_ext_equivalence(ext1: &Extension, ext2: &Extension, eq: &ExtEquivalence) -> Result<Report> {
    if ext1.a.dim() != ext2.a.dim() || ext1.b.dim() != ext2.b.dim() {
        return Err(Error::dims("extensions of different A or B".to_string()));
    }
    if eq.tau.shape() != (ext2.l.dim(), ext1.l.dim()) {
        return Err(Error::dims(format!(
            "tau is {:?}, expected {:?}",
            eq.tau.shape(),
            (ext2.l.dim(), ext1.l.dim())
        )));
    }
    let mut report = Report::default();
    report.require(eq.tau.inverse().is_some(), "tau_invertible");
    report.require(eq.tau.mul(&ext1.sigma) == ext2.sigma, "tau_sigma");
    report.require(ext2.pi.mul(&eq.tau) == ext1.pi, "pi_tau");
    let (l1, l2) = (&ext1.l, &ext2.l);
    for s in 0..l1.products().len() {
        for u in 0..l1.dim() {
            for v in 0..l1.dim() {
                let lhs = eq.tau.mul_vec(&l1.mul(s, &l1.basis(u), &l1.basis(v)));
                let rhs = l2.mul(s, &eq.tau.column(u), &eq.tau.column(v));
                let r = sub_vec(&lhs, &rhs);
                if !crate::linalg::is_zero_vec(&r) {
                    report.push(Violation::new("tau_homomorphism", vec![s, u, v], r));
                }
            }
        }
    }
    Ok(report)
}

/// `τ(T₁(i) + σ₁(m)) = T₂(i) + σ₂(−E(i) + m)`.
#[allow(non_snake_case)]
pub fn tau_from_E(
    ext1: &Extension,
    t1: &Section,
    ext2: &Extension,
    t2: &Section,
    e: &Matrix,
) -> Result<ExtEquivalence> {
    let (da, db) = (ext1.a.dim(), ext1.b.dim());
    if e.shape() != (da, db) {
        return Err(Error::dims(format!("E is {:?}, expected {:?}", e.shape(), (da, db))));
    }
    if t1.t.shape() != (ext1.l.dim(), db) || t2.t.shape() != (ext2.l.dim(), db) {
        return Err(Error::dims("section shape".to_string()));
    }
    let inv = ext1.frame(t1).inverse().ok_or(Error::SingularFrame)?;
    let image = t2.t.sub(&ext2.sigma.mul(e)).hstack(&ext2.sigma);
    Ok(ExtEquivalence { tau: image.mul(&inv) })
}

impl ExtEquivalence {
    pub fn identity(ext: &Extension) -> Self {
        ExtEquivalence {
            tau: Matrix::identity(ext.field(), ext.l.dim()),
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        self.tau.inverse().map(|tau| ExtEquivalence { tau })
    }

    /// `other ∘ self`
    pub fn then(&self, other: &ExtEquivalence) -> Self {
        ExtEquivalence {
            tau: other.tau.mul(&self.tau),
        }
    }
}
