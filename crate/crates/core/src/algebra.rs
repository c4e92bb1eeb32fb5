//! Finite-dimensional algebras given by structure constants.
//!
//! An [`Algebra`] stores one structure tensor per product (two for the
//! diassociative and dendriform varieties). Whether the tensor actually
//! satisfies the identities of its variety is a separate question answered by
//! [`Algebra::verify`], so invalid inputs stay representable and diagnosable.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::{FieldElem, FieldSpec};
use crate::linalg::{axpy, is_zero_vec, sub_vec, unit, zeros, Matrix, Vector};
use crate::report::{Report, Violation};

/// The seven varieties.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variety {
    Lie,
    Leibniz,
    Associative,
    Commutative,
    Zinbiel,
    Diassociative,
    Dendriform,
}

impl Variety {
    pub const ALL: [Variety; 7] = [
        Variety::Lie,
        Variety::Leibniz,
        Variety::Associative,
        Variety::Commutative,
        Variety::Zinbiel,
        Variety::Diassociative,
        Variety::Dendriform,
    ];

    /// Number of bilinear products: 2 for diassociative (⊣, ⊢) and
    /// dendriform (<, >), 1 otherwise.
    pub fn product_arity(self) -> usize {
        match self {
            Variety::Diassociative | Variety::Dendriform => 2,
            _ => 1,
        }
    }

    /// Number of factor-system identity families.
    pub fn mu(self) -> usize {
        match self {
            Variety::Lie => 3,
            Variety::Commutative => 4,
            Variety::Leibniz | Variety::Associative | Variety::Zinbiel => 7,
            Variety::Dendriform => 21,
            Variety::Diassociative => 35,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variety::Lie => "lie",
            Variety::Leibniz => "leibniz",
            Variety::Associative => "associative",
            Variety::Commutative => "commutative",
            Variety::Zinbiel => "zinbiel",
            Variety::Diassociative => "diassociative",
            Variety::Dendriform => "dendriform",
        }
    }

    /// The arrows of the functor diagram
    /// Zinb→Dend→As→Dias→Leib, Zinb→Com→As→Lie→Leib.
    pub fn arrows() -> [(Variety, Variety); 8] {
        use Variety::*;
        [
            (Zinbiel, Dendriform),
            (Zinbiel, Commutative),
            (Dendriform, Associative),
            (Commutative, Associative),
            (Associative, Diassociative),
            (Associative, Lie),
            (Diassociative, Leibniz),
            (Lie, Leibniz),
        ]
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variety {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variety::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::parse("variety", format!("unknown variety {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Dense bilinear map `F^left × F^right → F^out`; `get(i, j)` is the image of
/// the basis pair `(e_i, e_j)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BilinearMap {
    field: FieldSpec,
    left: usize,
    right: usize,
    out: usize,
    data: Vec<FieldElem>,
}

impl fmt::Debug for BilinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BilinearMap<{}>{}x{}->{} {{",
            self.field, self.left, self.right, self.out
        )?;
        for i in 0..self.left {
            for j in 0..self.right {
                let v = self.get(i, j);
                if !is_zero_vec(v) {
                    let s: Vec<String> = v.iter().map(ToString::to_string).collect();
                    write!(f, " ({i},{j})->[{}]", s.join(","))?;
                }
            }
        }
        write!(f, " }}")
    }
}

impl BilinearMap {
    pub fn zeros(field: FieldSpec, left: usize, right: usize, out: usize) -> Self {
        BilinearMap {
            field,
            left,
            right,
            out,
            data: vec![field.zero(); left * right * out],
        }
    }

    /// From a flat vector ordered lexicographically by `(i, j, k)`.
    pub fn from_flat(field: FieldSpec, left: usize, right: usize, out: usize, data: Vector) -> Self {
        assert_eq!(data.len(), left * right * out, "flat tensor length mismatch");
        BilinearMap {
            field,
            left,
            right,
            out,
            data,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// `(left, right, out)`
    pub fn shape(&self) -> (usize, usize, usize) {
        (self.left, self.right, self.out)
    }

    pub fn get(&self, i: usize, j: usize) -> &[FieldElem] {
        let base = (i * self.right + j) * self.out;
        &self.data[base..base + self.out]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut [FieldElem] {
        let base = (i * self.right + j) * self.out;
        &mut self.data[base..base + self.out]
    }

    pub fn set(&mut self, i: usize, j: usize, v: &[FieldElem]) {
        self.get_mut(i, j).clone_from_slice(v);
    }

    pub fn as_flat(&self) -> &[FieldElem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    /// Evaluates on arbitrary coordinate vectors.
    pub fn apply(&self, x: &[FieldElem], y: &[FieldElem]) -> Vector {
        let mut out = zeros(self.field, self.out);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                axpy(&mut out, &(xi * yj), self.get(i, j));
            }
        }
        out
    }

    /// `(x, y) ↦ self(y, x)`
    pub fn swapped(&self) -> BilinearMap {
        let mut out = BilinearMap::zeros(self.field, self.right, self.left, self.out);
        for i in 0..self.left {
            for j in 0..self.right {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn add(&self, rhs: &BilinearMap) -> BilinearMap {
        assert_eq!(self.shape(), rhs.shape());
        BilinearMap {
            data: crate::linalg::add_vec(&self.data, &rhs.data),
            ..self.clone()
        }
    }

    pub fn sub(&self, rhs: &BilinearMap) -> BilinearMap {
        assert_eq!(self.shape(), rhs.shape());
        BilinearMap {
            data: sub_vec(&self.data, &rhs.data),
            ..self.clone()
        }
    }
}

/// An algebra of some variety over a field, by structure constants.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Algebra {
    variety: Variety,
    field: FieldSpec,
    dim: usize,
    products: Vec<BilinearMap>,
}

impl Algebra {
    /// Checks only shapes and arity; identities are checked by [`Algebra::verify`].
    pub fn new(variety: Variety, field: FieldSpec, dim: usize, products: Vec<BilinearMap>) -> Result<Self> {
        if products.len() != variety.product_arity() {
            return Err(Error::dims(format!(
                "{variety} algebras have {} product(s), got {}",
                variety.product_arity(),
                products.len()
            )));
        }
        for p in &products {
            if p.shape() != (dim, dim, dim) {
                return Err(Error::dims(format!(
                    "structure tensor shape {:?} for dimension {dim}",
                    p.shape()
                )));
            }
            if p.field() != field {
                return Err(Error::FieldMismatch(format!(
                    "tensor over {} in algebra over {field}",
                    p.field()
                )));
            }
        }
        Ok(Algebra {
            variety,
            field,
            dim,
            products,
        })
    }

    /// The abelian (all products zero) algebra of dimension `dim`.
    pub fn abelian(variety: Variety, field: FieldSpec, dim: usize) -> Self {
        let products = (0..variety.product_arity())
            .map(|_| BilinearMap::zeros(field, dim, dim, dim))
            .collect();
        Algebra {
            variety,
            field,
            dim,
            products,
        }
    }

    /// Builds from sparse basis products `(product, i, j, k, coefficient)`:
    /// `e_i * e_j` gains `coefficient · e_k`.
    pub fn from_table(
        variety: Variety,
        field: FieldSpec,
        dim: usize,
        entries: &[(usize, usize, usize, usize, i64)],
    ) -> Result<Self> {
        let mut alg = Algebra::abelian(variety, field, dim);
        for &(p, i, j, k, c) in entries {
            if p >= variety.product_arity() || i >= dim || j >= dim || k >= dim {
                return Err(Error::dims(format!("table entry ({p},{i},{j},{k}) out of range")));
            }
            let slot = &mut alg.products[p].get_mut(i, j)[k];
            *slot = &*slot + &field.from_i64(c);
        }
        Ok(alg)
    }

    pub fn variety(&self) -> Variety {
        self.variety
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn products(&self) -> &[BilinearMap] {
        &self.products
    }

    pub fn product(&self, index: usize) -> &BilinearMap {
        &self.products[index]
    }

    /// Same structure constants, different variety tag.
    pub fn with_variety(&self, variety: Variety) -> Result<Self> {
        Algebra::new(variety, self.field, self.dim, self.products.clone())
    }

    pub fn is_abelian(&self) -> bool {
        self.products.iter().all(BilinearMap::is_zero)
    }

    fn check_vec(&self, v: &[FieldElem]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::dims(format!(
                "vector of length {} in algebra of dimension {}",
                v.len(),
                self.dim
            )));
        }
        Ok(())
    }

    fn check_product(&self, index: usize) -> Result<()> {
        if index >= self.products.len() {
            return Err(Error::dims(format!(
                "product index {index} for {} algebra",
                self.variety
            )));
        }
        Ok(())
    }

    /// `x *_index y`
    pub fn multiply(&self, index: usize, x: &[FieldElem], y: &[FieldElem]) -> Result<Vector> {
        self.check_product(index)?;
        self.check_vec(x)?;
        self.check_vec(y)?;
        Ok(self.products[index].apply(x, y))
    }

    /// Unchecked multiply for internal use.
    pub(crate) fn mul(&self, index: usize, x: &[FieldElem], y: &[FieldElem]) -> Vector {
        self.products[index].apply(x, y)
    }

    pub(crate) fn basis(&self, i: usize) -> Vector {
        unit(self.field, self.dim, i)
    }

    /// Matrix of `y ↦ x * y` (left) or `y ↦ y * x` (right).
    pub fn ad_operator(&self, index: usize, side: Side, x: &[FieldElem]) -> Result<Matrix> {
        self.check_product(index)?;
        self.check_vec(x)?;
        Ok(self.ad(index, side, x))
    }

    pub(crate) fn ad(&self, index: usize, side: Side, x: &[FieldElem]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim)
            .map(|j| {
                let e = self.basis(j);
                match side {
                    Side::Left => self.mul(index, x, &e),
                    Side::Right => self.mul(index, &e, x),
                }
            })
            .collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    /// Stacked constraint matrix whose kernel is `{x : x * e_j = 0 (left) /
    /// e_j * x = 0 (right) for all j and all listed products}`.
    fn annihilator(&self, sides: &[Side]) -> Vec<Vector> {
        let n = self.dim;
        let mut rows = Vec::new();
        for p in &self.products {
            for &side in sides {
                for j in 0..n {
                    for k in 0..n {
                        let row: Vector = (0..n)
                            .map(|i| match side {
                                Side::Left => p.get(i, j)[k].clone(),
                                Side::Right => p.get(j, i)[k].clone(),
                            })
                            .collect();
                        if !is_zero_vec(&row) {
                            rows.push(row);
                        }
                    }
                }
            }
        }
        if rows.is_empty() {
            return (0..n).map(|i| self.basis(i)).collect();
        }
        Matrix::from_rows(self.field, n, rows).kernel_basis()
    }

    /// Two-sided annihilator across every product: `{x : x*y = y*x = 0 ∀y}`.
    pub fn center(&self) -> Vec<Vector> {
        self.annihilator(&[Side::Left, Side::Right])
    }

    /// `{x : x*y = 0 ∀y}`, single-product varieties only.
    pub fn left_center(&self) -> Result<Vec<Vector>> {
        if self.variety.product_arity() != 1 {
            return Err(Error::UnsupportedVariety {
                variety: self.variety,
                what: "left center".into(),
            });
        }
        Ok(self.annihilator(&[Side::Left]))
    }

    /// Checks every defining identity of the variety on all basis triples
    /// and reports every violation.
    pub fn verify(&self) -> Report {
        let mut report = Report::default();
        let n = self.dim;
        let e: Vec<Vector> = (0..n).map(|i| self.basis(i)).collect();
        let check = |report: &mut Report, name: &str, idx: Vec<usize>, residual: Vector| {
            if !is_zero_vec(&residual) {
                report.push(Violation::new(name, idx, residual));
            }
        };
        // product helpers on basis triples
        let m = |p: usize, x: &Vector, y: &Vector| self.mul(p, x, y);

        match self.variety {
            Variety::Lie => {
                for i in 0..n {
                    check(&mut report, "alternating", vec![i], m(0, &e[i], &e[i]));
                    for j in i + 1..n {
                        let s = crate::linalg::add_vec(&e[i], &e[j]);
                        check(&mut report, "alternating", vec![i, j], m(0, &s, &s));
                    }
                }
            }
            Variety::Commutative => {
                for i in 0..n {
                    for j in 0..n {
                        check(
                            &mut report,
                            "commutativity",
                            vec![i, j],
                            sub_vec(&m(0, &e[i], &e[j]), &m(0, &e[j], &e[i])),
                        );
                    }
                }
            }
            _ => {}
        }

        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (&e[i], &e[j], &e[k]);
                    let idx = || vec![i, j, k];
                    match self.variety {
                        Variety::Lie => {
                            // (xy)z + (yz)x + (zx)y
                            let mut r = m(0, &m(0, x, y), z);
                            r = crate::linalg::add_vec(&r, &m(0, &m(0, y, z), x));
                            r = crate::linalg::add_vec(&r, &m(0, &m(0, z, x), y));
                            check(&mut report, "jacobi", idx(), r);
                        }
                        Variety::Leibniz => {
                            // x(yz) - (xy)z - y(xz)
                            let r = sub_vec(
                                &sub_vec(&m(0, x, &m(0, y, z)), &m(0, &m(0, x, y), z)),
                                &m(0, y, &m(0, x, z)),
                            );
                            check(&mut report, "leibniz", idx(), r);
                        }
                        Variety::Associative | Variety::Commutative => {
                            let r = sub_vec(&m(0, &m(0, x, y), z), &m(0, x, &m(0, y, z)));
                            check(&mut report, "associativity", idx(), r);
                        }
                        Variety::Zinbiel => {
                            // (xy)z - x(yz) - x(zy)
                            let r = sub_vec(
                                &sub_vec(&m(0, &m(0, x, y), z), &m(0, x, &m(0, y, z))),
                                &m(0, x, &m(0, z, y)),
                            );
                            check(&mut report, "zinbiel", idx(), r);
                        }
                        Variety::Diassociative => {
                            const L: usize = 0; // ⊣
                            const R: usize = 1; // ⊢
                            let assoc = |p| sub_vec(&m(p, &m(p, x, y), z), &m(p, x, &m(p, y, z)));
                            check(&mut report, "assoc_left", idx(), assoc(L));
                            check(&mut report, "assoc_right", idx(), assoc(R));
                            // D1  x⊣(y⊣z) = x⊣(y⊢z)
                            check(
                                &mut report,
                                "D1",
                                idx(),
                                sub_vec(&m(L, x, &m(L, y, z)), &m(L, x, &m(R, y, z))),
                            );
                            // D2  (x⊢y)⊣z = x⊢(y⊣z)
                            check(
                                &mut report,
                                "D2",
                                idx(),
                                sub_vec(&m(L, &m(R, x, y), z), &m(R, x, &m(L, y, z))),
                            );
                            // D3  (x⊣y)⊢z = (x⊢y)⊢z
                            check(
                                &mut report,
                                "D3",
                                idx(),
                                sub_vec(&m(R, &m(L, x, y), z), &m(R, &m(R, x, y), z)),
                            );
                        }
                        Variety::Dendriform => {
                            const LT: usize = 0; // <
                            const GT: usize = 1; // >
                                                 // E1  (x<y)<z = x<(y<z) + x<(y>z)
                            let r = sub_vec(
                                &sub_vec(&m(LT, &m(LT, x, y), z), &m(LT, x, &m(LT, y, z))),
                                &m(LT, x, &m(GT, y, z)),
                            );
                            check(&mut report, "E1", idx(), r);
                            // E2  (x>y)<z = x>(y<z)
                            check(
                                &mut report,
                                "E2",
                                idx(),
                                sub_vec(&m(LT, &m(GT, x, y), z), &m(GT, x, &m(LT, y, z))),
                            );
                            // E3  (x<y)>z + (x>y)>z = x>(y>z)
                            let r = sub_vec(
                                &crate::linalg::add_vec(&m(GT, &m(LT, x, y), z), &m(GT, &m(GT, x, y), z)),
                                &m(GT, x, &m(GT, y, z)),
                            );
                            check(&mut report, "E3", idx(), r);
                        }
                    }
                }
            }
        }
        report
    }

    /// Applies the arrow `self.variety → target` of the functor diagram.
    pub fn functor_map(&self, target: Variety) -> Result<Algebra> {
        use Variety::*;
        let c = |i: usize| self.products[i].clone();
        let products = match (self.variety, target) {
            // x<y = xy, x>y = yx
            (Zinbiel, Dendriform) => vec![c(0), c(0).swapped()],
            // x∘y = xy + yx
            (Zinbiel, Commutative) => vec![c(0).add(&c(0).swapped())],
            // x*y = x<y + x>y
            (Dendriform, Associative) => vec![c(0).add(&c(1))],
            (Commutative, Associative) | (Lie, Leibniz) => vec![c(0)],
            // x⊣y = x⊢y = xy
            (Associative, Diassociative) => vec![c(0), c(0)],
            // [x,y] = xy - yx
            (Associative, Lie) => vec![c(0).sub(&c(0).swapped())],
            // [x,y] = x⊢y - y⊣x
            (Diassociative, Leibniz) => vec![c(1).sub(&c(0).swapped())],
            (from, to) => return Err(Error::NotAnArrow { from, to }),
        };
        Algebra::new(target, self.field, self.dim, products)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn leib2() -> Algebra {
        Algebra::from_table(Variety::Leibniz, q(), 2, &[(0, 1, 1, 0, 1)]).unwrap()
    }

    fn heis3() -> Algebra {
        Algebra::from_table(Variety::Lie, q(), 3, &[(0, 0, 1, 2, 1), (0, 1, 0, 2, -1)]).unwrap()
    }

    fn as2() -> Algebra {
        Algebra::from_table(
            Variety::Associative,
            q(),
            2,
            &[(0, 0, 0, 0, 1), (0, 0, 1, 1, 1), (0, 1, 0, 1, 1)],
        )
        .unwrap()
    }

    #[test]
    fn multiply_examples() {
        let ab = Algebra::abelian(Variety::Leibniz, q(), 2);
        let x = vec![q().from_i64(3), q().from_i64(-1)];
        assert!(is_zero_vec(&ab.multiply(0, &x, &x).unwrap()));
        let l = leib2();
        assert_eq!(l.multiply(0, &l.basis(1), &l.basis(1)).unwrap(), l.basis(0));
        let h = heis3();
        assert_eq!(h.multiply(0, &h.basis(0), &h.basis(1)).unwrap(), h.basis(2));
        assert!(matches!(
            h.multiply(0, &l.basis(0), &h.basis(0)),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(h.multiply(1, &h.basis(0), &h.basis(0)).is_err());
    }

    #[test]
    fn verify_examples() {
        for v in Variety::ALL {
            assert!(Algebra::abelian(v, q(), 3).verify().ok(), "{v}");
        }
        assert!(leib2().verify().ok());
        let bad = leib2().with_variety(Variety::Lie).unwrap().verify();
        assert!(!bad.ok());
        assert!(bad.names().contains(&"alternating"));
        assert!(heis3().verify().ok());
        assert!(as2().verify().ok());
    }

    #[test]
    fn verify_reports_all_violations() {
        // e1 e1 = e1 + e2 breaks Leibniz in more than one place.
        let a = Algebra::from_table(
            Variety::Leibniz,
            q(),
            2,
            &[(0, 0, 0, 0, 1), (0, 0, 0, 1, 1), (0, 0, 1, 0, 1)],
        )
        .unwrap();
        let r = a.verify();
        assert!(r.violations.len() > 1);
    }

    #[test]
    fn ad_examples() {
        let ab = Algebra::abelian(Variety::Lie, q(), 2);
        assert!(ab.ad_operator(0, Side::Left, &ab.basis(0)).unwrap().is_zero());
        let l = leib2();
        let m = l.ad_operator(0, Side::Left, &l.basis(1)).unwrap();
        assert_eq!(m.column(1), l.basis(0));
        assert!(is_zero_vec(&m.column(0)));
        let h = heis3();
        let m = h.ad_operator(0, Side::Right, &h.basis(1)).unwrap();
        assert_eq!(m.column(0), h.basis(2));
        assert!(is_zero_vec(&m.column(1)) && is_zero_vec(&m.column(2)));
    }

    #[test]
    fn centers() {
        assert_eq!(Algebra::abelian(Variety::Leibniz, q(), 3).center().len(), 3);
        assert_eq!(heis3().center(), vec![heis3().basis(2)]);
        assert_eq!(leib2().center(), vec![leib2().basis(0)]);
        assert_eq!(Algebra::abelian(Variety::Lie, q(), 2).left_center().unwrap().len(), 2);
        assert_eq!(leib2().left_center().unwrap(), vec![leib2().basis(0)]);
        assert_eq!(heis3().left_center().unwrap(), vec![heis3().basis(2)]);
        let d = Algebra::abelian(Variety::Diassociative, q(), 2);
        assert!(matches!(d.left_center(), Err(Error::UnsupportedVariety { .. })));
    }

    #[test]
    fn functor_examples() {
        let z = Algebra::abelian(Variety::Zinbiel, q(), 2);
        assert_eq!(
            z.functor_map(Variety::Dendriform).unwrap(),
            Algebra::abelian(Variety::Dendriform, q(), 2)
        );
        let lie = as2().functor_map(Variety::Lie).unwrap();
        assert!(lie.is_abelian());
        assert!(lie.verify().ok());
        let lb = heis3().functor_map(Variety::Leibniz).unwrap();
        assert_eq!(lb.product(0), heis3().product(0));
        assert!(lb.verify().ok());
        assert!(matches!(
            heis3().functor_map(Variety::Associative),
            Err(Error::NotAnArrow { .. })
        ));
    }

    #[test]
    fn variety_names_roundtrip() {
        for v in Variety::ALL {
            assert_eq!(v.name().parse::<Variety>().unwrap(), v);
        }
        assert!("jordan".parse::<Variety>().is_err());
    }
}
